//! Polyvector fields, the HKR map and its factorization through the
//! symmetrization of `L(D^1)`.

use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dpoly::{
    adams_psi, bracket_d, coboundary_witness, hochschild_d, multiply_m, random_op, Coboundary,
    CoboundaryBounds, MultiIndex, OperatorAlphabet, PolyDiffOp, Polynomial,
};
use crate::error::{AlgebraError, Result};
use crate::freelie::{letter, FreeLie, GenSet, LieId, SymWord};
use crate::glin::{factorial, koszul_odd, qi, Degree, LinComb, Q};
use crate::report::{Outcome, VerificationReport};
use crate::symgrp::Permutation;

/// Key of a polyvector or tensor term: 1-based directions and a coefficient
/// monomial.
pub type DirKey = (Vec<usize>, MultiIndex);

fn check_dirs(m: usize, dirs: &[usize]) -> Result<()> {
    match dirs.iter().find(|&&i| i == 0 || i > m) {
        Some(i) => Err(AlgebraError::OutOfRange(format!("direction {i} in {m} variables"))),
        None => Ok(()),
    }
}

fn with_coeff(dirs: Vec<usize>, coeff: &Polynomial, c: &Q) -> Vec<(DirKey, Q)> {
    coeff
        .terms()
        .iter()
        .map(|(e, ce)| ((dirs.clone(), e.clone()), c * ce))
        .collect()
}

/// Sort directions as odd letters.  `None` if a direction repeats.
fn wedge_normal(dirs: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut order: Vec<usize> = (0..dirs.len()).collect();
    order.sort_by_key(|&i| dirs[i]);
    let sorted: Vec<usize> = order.iter().map(|&i| dirs[i]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let ones = vec![Degree(1); dirs.len()];
    Some((koszul_odd(&ones, &order), sorted))
}

/// A polynomial vector field `sum_i v_i ∂_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Self {
        VectorField { components }
    }

    pub fn coordinate(m: usize, i: usize) -> Self {
        let mut components = vec![Polynomial::zero(); m];
        components[i - 1] = Polynomial::one(m);
        VectorField { components }
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn random<R: Rng>(rng: &mut R, m: usize, max_deg: u32) -> Self {
        VectorField {
            components: (0..m)
                .map(|_| crate::dpoly::random_polynomial(rng, m, max_deg, 2))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExterior {
    m: usize,
    terms: LinComb<DirKey>,
}

impl PolyExterior {
    pub fn zero(m: usize) -> Self {
        PolyExterior {
            m,
            terms: LinComb::zero(),
        }
    }

    pub fn function(m: usize, g: &Polynomial) -> Self {
        PolyExterior {
            m,
            terms: with_coeff(vec![], g, &Q::one()).into_iter().collect(),
        }
    }

    /// `coeff · ∂_{dirs[0]} ∧ ... ∧ ∂_{dirs[k-1]}`, brought to normal form.
    pub fn wedge(m: usize, dirs: &[usize], coeff: &Polynomial) -> Result<Self> {
        check_dirs(m, dirs)?;
        let mut out = Self::zero(m);
        if let Some((odd, sorted)) = wedge_normal(dirs) {
            let s = if odd { -Q::one() } else { Q::one() };
            out.terms = with_coeff(sorted, coeff, &s).into_iter().collect();
        }
        Ok(out)
    }

    pub fn vector_field(v: &VectorField) -> Self {
        let mut out = Self::zero(v.m());
        for (i, g) in v.components.iter().enumerate() {
            for (k, c) in with_coeff(vec![i + 1], g, &Q::one()) {
                out.terms.add_term(k, c);
            }
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &LinComb<DirKey> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyExterior {
            m: self.m,
            terms: self.terms.clone() + other.terms.clone(),
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        PolyExterior {
            m: self.m,
            terms: self.terms.scaled(c),
        }
    }

    /// Basis keys: increasing direction tuples of length `k` times monomials
    /// of degree at most `coeff_deg`.
    pub fn basis(m: usize, k: usize, coeff_deg: u32) -> Vec<DirKey> {
        let monos = MultiIndex::up_to_order(m, coeff_deg);
        crate::glin::increasing_tuples(m, k)
            .into_iter()
            .flat_map(|t| {
                let dirs: Vec<usize> = t.into_iter().map(|i| i + 1).collect();
                monos.iter().map(move |e| (dirs.clone(), e.clone()))
            })
            .collect()
    }

    pub fn from_key(m: usize, key: &DirKey) -> Self {
        PolyExterior {
            m,
            terms: LinComb::basis(key.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTensor {
    m: usize,
    terms: LinComb<DirKey>,
}

impl PolyTensor {
    pub fn zero(m: usize) -> Self {
        PolyTensor {
            m,
            terms: LinComb::zero(),
        }
    }

    pub fn basis_tensor(m: usize, dirs: &[usize], coeff: &Polynomial) -> Result<Self> {
        check_dirs(m, dirs)?;
        Ok(PolyTensor {
            m,
            terms: with_coeff(dirs.to_vec(), coeff, &Q::one()).into_iter().collect(),
        })
    }

    /// `v_1 ⊗ ... ⊗ v_k` expanded over `O`.
    pub fn of_fields(m: usize, vs: &[VectorField]) -> Self {
        let mut acc: LinComb<DirKey> = LinComb::basis((vec![], MultiIndex::zero(m)));
        for v in vs {
            let mut next = LinComb::zero();
            for ((dirs, e), c) in acc.iter() {
                for (i, g) in v.components.iter().enumerate() {
                    for (eg, cg) in g.terms().iter() {
                        let mut d = dirs.clone();
                        d.push(i + 1);
                        next.add_term((d, e.add(eg)), c * cg);
                    }
                }
            }
            acc = next;
        }
        PolyTensor { m, terms: acc }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &LinComb<DirKey> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyTensor {
            m: self.m,
            terms: self.terms.clone() + other.terms.clone(),
        }
    }

    /// All direction tuples of length `k` times monomials of degree at most
    /// `coeff_deg`.
    pub fn basis(m: usize, k: usize, coeff_deg: u32) -> Vec<DirKey> {
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..k {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (1..=m).map(move |i| {
                        let mut u = t.clone();
                        u.push(i);
                        u
                    })
                })
                .collect();
        }
        let monos = MultiIndex::up_to_order(m, coeff_deg);
        tuples
            .into_iter()
            .flat_map(|t| monos.iter().map(move |e| (t.clone(), e.clone())))
            .collect()
    }

    pub fn from_key(m: usize, key: &DirKey) -> Self {
        PolyTensor {
            m,
            terms: LinComb::basis(key.clone()),
        }
    }
}

/// The first-order operator of a vector field.
pub fn beta(v: &VectorField) -> PolyDiffOp {
    let m = v.m();
    let mut out = PolyDiffOp::zero(m);
    for (i, g) in v.components.iter().enumerate() {
        out = out.add(&PolyDiffOp::partial(m, i + 1).mul_poly(g));
    }
    out
}

fn slots_of(m: usize, dirs: &[usize]) -> Vec<MultiIndex> {
    dirs.iter().map(|&i| MultiIndex::unit(m, i)).collect()
}

fn key_op(m: usize, dirs: &[usize], coeff: &MultiIndex, c: &Q) -> PolyDiffOp {
    PolyDiffOp::with_slots(m, slots_of(m, dirs), &Polynomial::monomial(coeff.clone(), c.clone()))
}

/// `∂_{i_1}∧...∧∂_{i_k} ↦ (1/k!) sum_σ sgn(σ) ∂_{i_σ(1)}⊗...⊗∂_{i_σ(k)}`,
/// extended `O`-linearly.
pub fn i_hkr(xi: &PolyExterior) -> PolyDiffOp {
    j_map(&p_antisym(xi))
}

/// Slot-wise inclusion of vector fields as first-order operators.
pub fn j_map(t: &PolyTensor) -> PolyDiffOp {
    let mut out = PolyDiffOp::zero(t.m);
    for ((dirs, e), c) in t.terms.iter() {
        out = out.add(&key_op(t.m, dirs, e, c));
    }
    out
}

/// Antisymmetrization with the `1/k!` normalization.
pub fn p_antisym(xi: &PolyExterior) -> PolyTensor {
    let mut out = LinComb::zero();
    for ((dirs, e), c) in xi.terms.iter() {
        let k = dirs.len();
        let norm = factorial(k).recip();
        for p in Permutation::all(k) {
            let d: Vec<usize> = p.images().iter().map(|&i| dirs[i]).collect();
            let s = if p.sign() < 0 { -&norm } else { norm.clone() };
            out.add_term((d, e.clone()), c * s);
        }
    }
    PolyTensor { m: xi.m, terms: out }
}

/// The wedge of the slots.
pub fn pi_project(t: &PolyTensor) -> PolyExterior {
    let mut out = LinComb::zero();
    for ((dirs, e), c) in t.terms.iter() {
        if let Some((odd, sorted)) = wedge_normal(dirs) {
            out.add_term((sorted, e.clone()), if odd { -c.clone() } else { c.clone() });
        }
    }
    PolyExterior { m: t.m, terms: out }
}

/// The free Lie algebra on the odd letters `∂_1, ..., ∂_m` together with the
/// embedding of `Sym(L(V)) ⊗ O` into polydifferential operators.
pub struct HkrContext {
    m: usize,
    lie: FreeLie,
    gens: Vec<LieId>,
    alphabet: OperatorAlphabet,
}

/// Element of `Sym(L(V)) ⊗ O`.
pub type SymO = LinComb<(SymWord, MultiIndex)>;

impl HkrContext {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(AlgebraError::OutOfRange("need at least one variable".into()));
        }
        let lie = FreeLie::new(GenSet::odd(m));
        let gens = (0..m as u32)
            .map(|g| {
                let c = lie.coordinates(&letter(g))?;
                let found = match c.iter().next() {
                    Some((id, coeff)) if c.len() == 1 && coeff.is_one() => Some(*id),
                    _ => None,
                };
                found.ok_or_else(|| AlgebraError::Invariant(format!("generator {g} is not a basis element")))
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabet = OperatorAlphabet::new(m, (1..=m).map(|i| MultiIndex::unit(m, i)).collect())?;
        Ok(HkrContext {
            m,
            lie,
            gens,
            alphabet,
        })
    }

    pub fn lie(&self) -> &FreeLie {
        &self.lie
    }

    /// The Lie basis element standing for `∂_i`.
    pub fn generator(&self, i: usize) -> LieId {
        self.gens[i - 1]
    }

    /// `Sym β`: a wedge word goes to the product of the β-images, the
    /// coefficient stays a coefficient.
    pub fn sym_beta(&self, xi: &PolyExterior) -> SymO {
        let mut out = SymO::zero();
        for ((dirs, e), c) in xi.terms.iter() {
            let factors: Vec<LieId> = dirs.iter().map(|&i| self.generator(i)).collect();
            if let Some((odd, w)) = SymWord::canonicalize(factors) {
                out.add_term((w, e.clone()), if odd { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// The symmetrization `I`, extended `O`-linearly and read in `D_poly`.
    pub fn i_sym(&self, u: &SymO) -> PolyDiffOp {
        let mut out = PolyDiffOp::zero(self.m);
        for ((w, e), c) in u.iter() {
            let t = self.lie.symmetrize_word(w);
            out = out.add(&self.alphabet.embed(&t, &Polynomial::monomial(e.clone(), c.clone())));
        }
        out
    }

    /// `I(dexp_transform(Sym β(ξ) ⊗ β(∂_dir)))` times the coefficient `h`.
    pub fn dexp_side(&self, xi: &PolyExterior, dir: usize, h: &Polynomial) -> PolyDiffOp {
        let y = letter(dir as u32 - 1);
        let mut out = PolyDiffOp::zero(self.m);
        for ((w, e), c) in self.sym_beta(xi).iter() {
            let t = self.lie.dexp_symmetrized(&LinComb::basis(w.clone()), &y);
            let g = Polynomial::monomial(e.clone(), c.clone()).mul(h);
            out = out.add(&self.alphabet.embed(&t, &g));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HkrBounds {
    pub m: usize,
    pub max_k: usize,
    pub coeff_deg: u32,
}

impl Default for HkrBounds {
    fn default() -> Self {
        HkrBounds {
            m: 3,
            max_k: 3,
            coeff_deg: 2,
        }
    }
}

fn wedge_keys(b: HkrBounds) -> Vec<DirKey> {
    (0..=b.max_k.min(b.m))
        .flat_map(|k| PolyExterior::basis(b.m, k, b.coeff_deg))
        .collect()
}

fn sweep<T: Sync>(items: &[T], label: impl Fn(&T) -> String + Sync, ok: impl Fn(&T) -> bool + Sync) -> Outcome {
    let bad: Vec<String> = items.par_iter().filter(|x| !ok(x)).map(&label).collect();
    if bad.is_empty() {
        Outcome::pass(format!("{} inputs", items.len()))
    } else {
        Outcome::fail(format!("{} of {} inputs fail: {}", bad.len(), items.len(), bad.join(", ")))
    }
}

/// `I ∘ Sym β = I_HKR`, `J ∘ p = I_HKR`, `π ∘ p = id` and `d ∘ I_HKR = 0`
/// on every wedge basis element within the bounds.
pub fn verify_hkr_factorization(b: HkrBounds) -> VerificationReport {
    let mut report = VerificationReport::new("hkr");
    let tag = format!("hkr/m{}", b.m);
    let ctx = match HkrContext::new(b.m) {
        Ok(c) => c,
        Err(e) => {
            report.run(format!("{tag}/setup"), || Outcome::fail(e.to_string()));
            return report;
        }
    };
    let keys = wedge_keys(b);
    let xi = |k: &DirKey| PolyExterior::from_key(b.m, k);
    let label = |k: &DirKey| format!("{k:?}");
    report.run(format!("{tag}/i-sym-beta"), || {
        sweep(&keys, label, |k| ctx.i_sym(&ctx.sym_beta(&xi(k))) == i_hkr(&xi(k)))
    });
    report.run(format!("{tag}/j-p"), || {
        sweep(&keys, label, |k| {
            let x = xi(k);
            let expected = {
                let (dirs, e) = k;
                let n = dirs.len();
                let mut acc = PolyDiffOp::zero(b.m);
                for p in Permutation::all(n) {
                    let d: Vec<usize> = p.images().iter().map(|&i| dirs[i]).collect();
                    let s = factorial(n).recip() * qi(p.sign() as i64);
                    acc = acc.add(&key_op(b.m, &d, e, &s));
                }
                acc
            };
            j_map(&p_antisym(&x)) == i_hkr(&x) && i_hkr(&x) == expected
        })
    });
    report.run(format!("{tag}/pi-p"), || {
        sweep(&keys, label, |k| pi_project(&p_antisym(&xi(k))) == xi(k))
    });
    report.run(format!("{tag}/cocycle"), || {
        sweep(&keys, label, |k| hochschild_d(&i_hkr(&xi(k))).is_zero())
    });
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem1Bounds {
    pub m: usize,
    pub max_sym_len: usize,
    pub max_lie_len: usize,
    pub coeff_deg: u32,
}

impl Default for Theorem1Bounds {
    fn default() -> Self {
        Theorem1Bounds {
            m: 2,
            max_sym_len: 3,
            max_lie_len: 2,
            coeff_deg: 1,
        }
    }
}

/// `m(I(u), I_1(y)) = I(dexp_transform(u ⊗ y))` in `D_poly`, where the
/// generators of `L(D^1)` are `∂_0, ∂_1, ..., ∂_m` and `u`, `y` carry
/// polynomial coefficients.
pub fn verify_theorem1_dpoly(b: Theorem1Bounds) -> VerificationReport {
    let mut report = VerificationReport::new("theorem1");
    let tag = format!("theorem1/m{}", b.m);
    let alphabet = OperatorAlphabet::first_order(b.m);
    let lie = FreeLie::new(GenSet::odd(alphabet.len()));
    let ids = lie.lie_basis_up_to_len(b.max_lie_len);
    let us = FreeLie::sym_words_from(&ids, b.max_sym_len);
    let monos: Vec<Polynomial> = MultiIndex::up_to_order(b.m, b.coeff_deg)
        .into_iter()
        .map(|e| Polynomial::monomial(e, Q::one()))
        .collect();
    for k in 0..=b.max_sym_len {
        let cases: Vec<(SymWord, LieId)> = us
            .iter()
            .filter(|u| u.factors() == k)
            .flat_map(|u| ids.iter().map(move |y| (u.clone(), *y)))
            .collect();
        if cases.is_empty() {
            continue;
        }
        report.run(format!("{tag}/sym{k}"), || {
            let bad: Vec<String> = cases
                .par_iter()
                .filter_map(|(u, y)| {
                    let yt = lie.lie_element(*y);
                    let iu = lie.symmetrize_word(u);
                    let rhs_t = lie.dexp_symmetrized(&LinComb::basis(u.clone()), &yt);
                    for g in &monos {
                        let left = alphabet.embed(&iu, g);
                        for h in &monos {
                            let lhs = multiply_m(&left, &alphabet.embed(&yt, h));
                            let rhs = alphabet.embed(&rhs_t, &g.mul(h));
                            if lhs != rhs {
                                return Some(format!("{u:?} ⊗ {y:?} with {g:?}, {h:?}"));
                            }
                        }
                    }
                    None
                })
                .collect();
            Outcome::check(
                bad.is_empty(),
                format!(
                    "{} (u, y) pairs x {} coefficient pairs {}",
                    cases.len(),
                    monos.len() * monos.len(),
                    bad.join(", ")
                ),
            )
        });
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AtiyahBounds {
    pub m: usize,
    pub coeff_deg: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AtiyahBounds {
    fn default() -> Self {
        AtiyahBounds {
            m: 2,
            coeff_deg: 2,
            samples: 20,
            seed: 0x5eed,
        }
    }
}

/// Seeded pairs of polynomial vector fields.
pub fn field_pairs(b: AtiyahBounds) -> Vec<(VectorField, VectorField)> {
    (0..b.samples)
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(b.seed ^ 0xa7);
            rng.set_stream(s as u64);
            (
                VectorField::random(&mut rng, b.m, b.coeff_deg),
                VectorField::random(&mut rng, b.m, b.coeff_deg),
            )
        })
        .collect()
}

/// `[β u, β v]` is a coboundary for seeded polynomial fields, while the HKR
/// class `∂_1⊗∂_2 - ∂_2⊗∂_1` is not.
pub fn verify_atiyah_vanishing(b: AtiyahBounds) -> VerificationReport {
    let mut report = VerificationReport::new("atiyah");
    let tag = format!("atiyah/m{}", b.m);
    let cb = CoboundaryBounds {
        max_order: 2,
        max_coeff_deg: 2 * b.coeff_deg,
    };
    let pairs = field_pairs(b);
    report.run(format!("{tag}/bracket-witness"), || {
        let results: Vec<std::result::Result<PolyDiffOp, String>> = pairs
            .par_iter()
            .map(|(u, v)| {
                let br = bracket_d(&beta(u), &beta(v));
                match coboundary_witness(&br, cb) {
                    Ok(Coboundary::Witness(h)) => Ok(h),
                    Ok(other) => Err(format!("{br}: {other:?}")),
                    Err(e) => Err(format!("{br}: {e}")),
                }
            })
            .collect();
        let bad: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
        let first = results.iter().find_map(|r| r.as_ref().ok()).map(|h| h.encode());
        let out = Outcome::check(bad.is_empty(), format!("{} pairs, {} without witness", pairs.len(), bad.len()));
        match first {
            Some(w) => out.with_witness(w),
            None => out,
        }
    });
    if b.m >= 2 {
        report.run(format!("{tag}/hkr-class-obstructed"), || {
            let cls = i_hkr(&PolyExterior::wedge(b.m, &[1, 2], &Polynomial::one(b.m)).expect("m >= 2"))
                .scaled(&qi(2));
            match coboundary_witness(&cls, cb) {
                Ok(Coboundary::NoWitness) => Outcome::pass(format!("{cls} has no preimage")),
                other => Outcome::fail(format!("{cls}: {other:?}")),
            }
        });
    }
    report
}

/// `m(I_HKR(ξ), I_HKR(v)) = I(dexp_transform(Sym β(ξ) ⊗ β(v)))` for wedge
/// words up to `max_k` and coordinate fields with monomial coefficients,
/// together with the coboundary certificates for brackets of fields.
pub fn verify_corollary1_local(b: HkrBounds, atiyah: AtiyahBounds) -> VerificationReport {
    let mut report = VerificationReport::new("corollary1");
    let tag = format!("corollary1/m{}", b.m);
    let ctx = match HkrContext::new(b.m) {
        Ok(c) => c,
        Err(e) => {
            report.run(format!("{tag}/setup"), || Outcome::fail(e.to_string()));
            return report;
        }
    };
    let keys = wedge_keys(b);
    let fields: Vec<(usize, MultiIndex)> = (1..=b.m)
        .flat_map(|i| MultiIndex::up_to_order(b.m, b.coeff_deg).into_iter().map(move |e| (i, e)))
        .collect();
    let cases: Vec<(DirKey, (usize, MultiIndex))> = keys
        .iter()
        .flat_map(|k| fields.iter().map(move |f| (k.clone(), f.clone())))
        .collect();
    report.run(format!("{tag}/dexp"), || {
        sweep(
            &cases,
            |(k, f)| format!("{k:?} with {f:?}"),
            |(k, (i, e))| {
                let xi = PolyExterior::from_key(b.m, k);
                let h = Polynomial::monomial(e.clone(), Q::one());
                let v = PolyExterior::wedge(b.m, &[*i], &h).expect("direction in range");
                multiply_m(&i_hkr(&xi), &i_hkr(&v)) == ctx.dexp_side(&xi, *i, &h)
            },
        )
    });
    report.merge(verify_atiyah_vanishing(atiyah));
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdamsBounds {
    pub ps: Vec<usize>,
    pub hkr: HkrBounds,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AdamsBounds {
    fn default() -> Self {
        AdamsBounds {
            ps: vec![2, 3],
            hkr: HkrBounds {
                m: 3,
                max_k: 3,
                coeff_deg: 1,
            },
            samples: 20,
            seed: 0x5eed,
        }
    }
}

/// `ψ^p ∘ I_HKR = p^k I_HKR` on wedge basis elements of degree `k`, and
/// `ψ^p ∘ ψ^q = ψ^{pq}` on seeded operators.
pub fn verify_adams_eigen(b: &AdamsBounds) -> VerificationReport {
    let mut report = VerificationReport::new("adams");
    let m = b.hkr.m;
    let keys = wedge_keys(b.hkr);
    for &p in &b.ps {
        report.run(format!("adams/m{m}/p{p}/eigen"), || {
            if p < 2 {
                return Outcome::fail(format!("p = {p} must be at least 2"));
            }
            sweep(&keys, |k| format!("{k:?}"), |k| {
                let x = i_hkr(&PolyExterior::from_key(m, k));
                let eigen = qi((p as i64).pow(k.0.len() as u32));
                adams_psi(p, &x).map(|y| y == x.scaled(&eigen)).unwrap_or(false)
            })
        });
    }
    let ops: Vec<PolyDiffOp> = (0..b.samples)
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(b.seed ^ 0xad);
            rng.set_stream(s as u64);
            let n = rng.gen_range(0..=3);
            random_op(&mut rng, m.min(2), n, 3, 1, 2)
        })
        .collect();
    for &p in &b.ps {
        for &q in &b.ps {
            report.run(format!("adams/p{p}-q{q}/composition"), || {
                sweep(&ops, |op| op.encode(), |op| {
                    let lhs = adams_psi(q, op).and_then(|x| adams_psi(p, &x));
                    let rhs = adams_psi(p * q, op);
                    matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
                })
            });
        }
    }
    report
}

/// `J` on a tensor of fields equals the product of their `β`-images.
pub fn j_is_product_of_betas(vs: &[VectorField]) -> bool {
    let Some(first) = vs.first() else {
        return true;
    };
    let m = first.m();
    let lhs = j_map(&PolyTensor::of_fields(m, vs));
    let rhs = vs.iter().fold(PolyDiffOp::one(m), |acc, v| multiply_m(&acc, &beta(v)));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpoly::lie_membership_ld1;
    use crate::glin::q;
    use proptest::prelude::*;
    use rand::Rng;

    fn one(m: usize) -> Polynomial {
        Polynomial::one(m)
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&VectorField::coordinate(2, 1)), PolyDiffOp::partial(2, 1));
        let x2 = Polynomial::monomial(MultiIndex(vec![2, 0]), Q::one());
        let v = VectorField::new(vec![x2.clone(), Polynomial::zero()]);
        assert_eq!(beta(&v), PolyDiffOp::partial(2, 1).mul_poly(&x2));
    }

    #[test]
    fn hkr_examples() {
        let w = PolyExterior::wedge(2, &[1, 2], &one(2)).unwrap();
        let d12 = multiply_m(&PolyDiffOp::partial(2, 1), &PolyDiffOp::partial(2, 2));
        let d21 = multiply_m(&PolyDiffOp::partial(2, 2), &PolyDiffOp::partial(2, 1));
        let expected = d12.sub(&d21).scaled(&q(1, 2));
        assert_eq!(i_hkr(&w), expected);
        assert_eq!(j_map(&p_antisym(&w)), expected);
        let g = Polynomial::var(2, 1);
        assert_eq!(i_hkr(&PolyExterior::function(2, &g)), PolyDiffOp::scalar(&g, 2));
        assert_eq!(PolyExterior::wedge(2, &[2, 1], &one(2)).unwrap(), w.scaled(&qi(-1)));
        assert!(PolyExterior::wedge(2, &[1, 1], &one(2)).unwrap().terms().is_zero());
        assert!(PolyExterior::wedge(2, &[3], &one(2)).is_err());
    }

    #[test]
    fn pi_examples() {
        let t12 = PolyTensor::basis_tensor(2, &[1, 2], &one(2)).unwrap();
        assert_eq!(pi_project(&t12), PolyExterior::wedge(2, &[1, 2], &one(2)).unwrap());
        let t11 = PolyTensor::basis_tensor(2, &[1, 1], &one(2)).unwrap();
        assert!(pi_project(&t11).terms().is_zero());
        let v = PolyExterior::wedge(2, &[2], &one(2)).unwrap();
        assert_eq!(p_antisym(&v), PolyTensor::basis_tensor(2, &[2], &one(2)).unwrap());
    }

    #[test]
    fn j_examples() {
        let t = PolyTensor::basis_tensor(2, &[1, 2], &one(2)).unwrap();
        assert_eq!(
            j_map(&t),
            multiply_m(&PolyDiffOp::partial(2, 1), &PolyDiffOp::partial(2, 2))
        );
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for k in 1..=3 {
            let vs: Vec<VectorField> = (0..k).map(|_| VectorField::random(&mut rng, 2, 1)).collect();
            assert!(j_is_product_of_betas(&vs));
        }
        let v = VectorField::random(&mut rng, 2, 2);
        assert_eq!(j_map(&PolyTensor::of_fields(2, &[v.clone()])), beta(&v));
    }

    #[test]
    fn sym_beta_examples() {
        let ctx = HkrContext::new(3).unwrap();
        for dirs in [vec![1], vec![1, 2], vec![1, 2, 3]] {
            let x = Polynomial::var(3, 1);
            let xi = PolyExterior::wedge(3, &dirs, &x).unwrap();
            assert_eq!(ctx.i_sym(&ctx.sym_beta(&xi)), i_hkr(&xi));
        }
    }

    #[test]
    fn factorization_small() {
        let r = verify_hkr_factorization(HkrBounds { m: 2, max_k: 2, coeff_deg: 1 }).finish();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn lie_square_small() {
        let r = verify_theorem1_dpoly(Theorem1Bounds { m: 1, max_sym_len: 2, max_lie_len: 2, coeff_deg: 1 }).finish();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn lie_square_first_case() {
        // m(∂_1, ∂_2) = I(∂_1 ∂_2) + 1/2 I([∂_1, ∂_2])
        let ctx = HkrContext::new(2).unwrap();
        let xi = PolyExterior::wedge(2, &[1], &one(2)).unwrap();
        let lhs = multiply_m(&PolyDiffOp::partial(2, 1), &PolyDiffOp::partial(2, 2));
        assert_eq!(ctx.dexp_side(&xi, 2, &one(2)), lhs);
        let w = i_hkr(&PolyExterior::wedge(2, &[1, 2], &one(2)).unwrap());
        let br = bracket_d(&PolyDiffOp::partial(2, 1), &PolyDiffOp::partial(2, 2)).scaled(&q(1, 2));
        assert_eq!(w.add(&br), lhs);
    }

    #[test]
    fn dexp_routing_small() {
        let r = verify_corollary1_local(
            HkrBounds { m: 2, max_k: 2, coeff_deg: 1 },
            AtiyahBounds { samples: 4, ..Default::default() },
        )
        .finish();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn atiyah_example() {
        let br = bracket_d(&PolyDiffOp::partial(2, 1), &PolyDiffOp::partial(2, 2));
        let h = match coboundary_witness(&br, CoboundaryBounds::default()).unwrap() {
            Coboundary::Witness(h) => h,
            other => panic!("{other:?}"),
        };
        assert_eq!(h, PolyDiffOp::d_index(MultiIndex(vec![1, 1])).neg());
    }

    #[test]
    fn adams_examples() {
        let w = i_hkr(&PolyExterior::wedge(2, &[1, 2], &one(2)).unwrap());
        assert_eq!(adams_psi(2, &w).unwrap(), w.scaled(&qi(4)));
        let g = i_hkr(&PolyExterior::function(2, &Polynomial::var(2, 2)));
        assert_eq!(adams_psi(5, &g).unwrap(), g);
        let r = verify_adams_eigen(&AdamsBounds {
            hkr: HkrBounds { m: 2, max_k: 2, coeff_deg: 1 },
            samples: 3,
            ..Default::default()
        })
        .finish();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn beta_lands_in_lie(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = VectorField::random(&mut rng, 2, 2);
            prop_assert!(lie_membership_ld1(&beta(&v)) || beta(&v).is_zero());
        }

        #[test]
        fn hkr_is_cocycle_and_pi_p_is_id(seed in 0u64..500, k in 0usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut xi = PolyExterior::zero(3);
            for _ in 0..3 {
                let dirs: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
                let g = crate::dpoly::random_polynomial(&mut rng, 3, 2, 2);
                xi = xi.add(&PolyExterior::wedge(3, &dirs, &g).unwrap());
            }
            prop_assert!(hochschild_d(&i_hkr(&xi)).is_zero());
            prop_assert_eq!(pi_project(&p_antisym(&xi)), xi);
        }
    }
}
