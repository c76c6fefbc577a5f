//! Operators on `T(L) ⊗ L`: `ω̂`, `μ̂`, `Θ = μ̂ ∘ ω̂/(1 - e^{-ω̂})`, the
//! iterates `Ψ_k` and their components, and the local form of the formula
//! expressing `J^k` through the HKR map.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::dpoly::{
    coboundary_witness, hochschild_d, Coboundary, CoboundaryBounds, MultiIndex, OperatorAlphabet,
    PolyDiffOp, Polynomial,
};
use crate::error::{AlgebraError, Result};
use crate::freelie::{bch_coeffs, letter, tensor_mul, unit_tensor, FreeLie, GenSet, LieId, SymLiePair, SymWord, Tensor};
use crate::glin::{factorial, swap_is_odd, Degree, LinComb, LinearMapRep, Q};
use crate::hkr::{i_hkr, j_map, pi_project, PolyTensor};
use crate::report::{Outcome, VerificationReport};
use crate::symgrp::{act, mu_omega_element, special_element, SpecialElement};

/// A word in `T(L)`, letters being Lie basis elements.
pub type TWord = Vec<LieId>;
/// Element of `T(L)`.
pub type TL = LinComb<TWord>;
/// Element of `T(L) ⊗ L`; the second entry is the distinguished factor.
pub type TLPair = LinComb<(TWord, LieId)>;
/// Lie element in basis coordinates.
pub type LieCoords = LinComb<LieId>;

fn word_degree(w: &[LieId]) -> Degree {
    w.iter().map(|z| z.degree()).sum()
}

fn signed(c: Q, odd: bool) -> Q {
    if odd {
        -c
    } else {
        c
    }
}

/// The operator calculus over a fixed free Lie algebra `L(V)`.
pub struct Theta {
    lie: FreeLie,
    brackets: Mutex<HashMap<(LieId, LieId), LieCoords>>,
}

impl Theta {
    pub fn new(gens: GenSet) -> Self {
        Theta {
            lie: FreeLie::new(gens),
            brackets: Mutex::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &FreeLie {
        &self.lie
    }

    /// Lie basis element of generator `g`.
    pub fn generator(&self, g: u32) -> Result<LieId> {
        let c = self.lie.coordinates(&letter(g))?;
        let found = match c.iter().next() {
            Some((id, k)) if c.len() == 1 && k.is_one() => Some(*id),
            _ => None,
        };
        found.ok_or_else(|| AlgebraError::Invariant(format!("generator {g} is not a basis element")))
    }

    pub fn bracket(&self, a: LieId, b: LieId) -> Result<LieCoords> {
        if let Some(c) = self.brackets.lock().expect("bracket cache").get(&(a, b)) {
            return Ok(c.clone());
        }
        let t = self.lie.bracket(&self.lie.lie_element(a), &self.lie.lie_element(b));
        let c = self.lie.coordinates(&t)?;
        self.brackets.lock().expect("bracket cache").insert((a, b), c.clone());
        Ok(c)
    }

    /// `ω̂(z_1..z_k ⊗ y) = sum_i (-1)^{d_i(d_{i+1}+..+d_k)} z_1..ẑ_i..z_k ⊗ [z_i, y]`.
    pub fn omega_hat(&self, p: &TLPair) -> Result<TLPair> {
        let mut out = TLPair::zero();
        for ((w, y), c) in p.iter() {
            for i in 0..w.len() {
                let odd = swap_is_odd(w[i].degree(), word_degree(&w[i + 1..]));
                let mut rest = w.clone();
                rest.remove(i);
                for (z, cz) in self.bracket(w[i], *y)?.iter() {
                    out.add_term((rest.clone(), *z), signed(c * cz, odd));
                }
            }
        }
        Ok(out)
    }

    /// `μ̂(z_1..z_{k-1} ⊗ y)`: the average of the `k` signed insertions of
    /// `y` into the word.
    pub fn mu_hat(&self, p: &TLPair) -> TL {
        let mut out = TL::zero();
        for ((w, y), c) in p.iter() {
            let k = w.len() + 1;
            let c = c * Q::new(1.into(), (k as i64).into());
            for i in 0..k {
                let odd = swap_is_odd(y.degree(), word_degree(&w[i..]));
                let mut v = w.clone();
                v.insert(i, *y);
                out.add_term(v, signed(c.clone(), odd));
            }
        }
        out
    }

    /// `μ̂(sum_j c_j ω̂^j(p))`; the series stops by nilpotency.
    pub fn theta_apply(&self, p: &TLPair) -> Result<TL> {
        let max_len = p.keys().map(|(w, _)| w.len()).max().unwrap_or(0);
        let mut out = TL::zero();
        let mut cur = p.clone();
        for cj in bch_coeffs(max_len) {
            if cur.is_zero() {
                break;
            }
            if !cj.is_zero() {
                out.add_scaled(&self.mu_hat(&cur), &cj);
            }
            cur = self.omega_hat(&cur)?;
        }
        Ok(out)
    }

    /// `Ψ_k(v_1 ⊗ ... ⊗ v_k)`: start from `1 ⊗ v_1` and apply `Θ` against
    /// each following factor in turn.
    pub fn psi_apply(&self, vs: &[LieCoords]) -> Result<TL> {
        if vs.is_empty() {
            return Err(AlgebraError::OutOfRange("psi needs k >= 1".into()));
        }
        let mut acc = TL::basis(vec![]);
        for v in vs {
            let mut pair = TLPair::zero();
            for (w, cw) in acc.iter() {
                for (y, cy) in v.iter() {
                    pair.add_term((w.clone(), *y), cw * cy);
                }
            }
            acc = self.theta_apply(&pair)?;
        }
        Ok(acc)
    }

    /// `Ψ_k` on a word of generators.
    pub fn psi_on_generators(&self, gs: &[u32]) -> Result<TL> {
        let vs = gs
            .iter()
            .map(|&g| self.generator(g).map(LinComb::basis))
            .collect::<Result<Vec<_>>>()?;
        self.psi_apply(&vs)
    }

    /// Matrix of the word-length-`l` part of `Ψ_k` on generator words of
    /// length `k`.
    pub fn psi_component(&self, k: usize, l: usize) -> Result<LinearMapRep<TWord, TWord>> {
        if k == 0 || l == 0 {
            return Err(AlgebraError::OutOfRange(format!("component ({k},{l})")));
        }
        let domain = self.generator_words(k)?;
        let images = domain
            .iter()
            .map(|w| {
                let gs: Vec<u32> = w.iter().map(|z| self.generator_index(*z)).collect();
                Ok(self.psi_on_generators(&gs)?.filter(|v| v.len() == l))
            })
            .collect::<Result<Vec<TL>>>()?;
        let table: BTreeMap<TWord, TL> = domain.iter().cloned().zip(images).collect();
        LinearMapRep::from_fn(domain, None, |w| table[w].clone())
    }

    fn generator_index(&self, z: LieId) -> u32 {
        (0..self.lie.gens().len() as u32)
            .find(|&g| self.generator(g).ok() == Some(z))
            .expect("generator id")
    }

    /// All words of length `k` in the generator ids.
    pub fn generator_words(&self, k: usize) -> Result<Vec<TWord>> {
        let ids = (0..self.lie.gens().len() as u32)
            .map(|g| self.generator(g))
            .collect::<Result<Vec<_>>>()?;
        let mut out: Vec<TWord> = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w| {
                    ids.iter().map(move |&z| {
                        let mut v = w.clone();
                        v.push(z);
                        v
                    })
                })
                .collect();
        }
        out.sort();
        Ok(out)
    }

    /// Multiply out `T(L) -> T(V)`.
    pub fn flatten(&self, t: &TL) -> Tensor {
        t.map_linear(|w| {
            w.iter()
                .fold(unit_tensor(), |acc, &z| tensor_mul(&acc, &self.lie.lie_element(z)))
        })
    }

    /// The graded symmetrization `B : Sym(L) -> T(L)`.
    pub fn b_map(&self, u: &SymWord) -> Result<TL> {
        let k = u.factors();
        if k == 0 {
            return Ok(TL::basis(vec![]));
        }
        let s = special_element(SpecialElement::FullSym { n: k })?.scaled(&factorial(k).recip());
        act(&s, &TL::basis(u.0.clone()), |z| z.degree())
    }

    /// `B ⊗ id` on `Sym(L) ⊗ L`.
    pub fn b_pair(&self, p: &SymLiePair) -> Result<TLPair> {
        let mut out = TLPair::zero();
        for ((u, y), c) in p.iter() {
            for (w, cw) in self.b_map(u)?.iter() {
                out.add_term((w.clone(), *y), c * cw);
            }
        }
        Ok(out)
    }

    /// The symmetrization projector on words of `T(L)`.
    pub fn symmetrize_tl(&self, w: &TWord) -> Result<TL> {
        let k = w.len();
        let s = special_element(SpecialElement::FullSym { n: k })?.scaled(&factorial(k).recip());
        act(&s, &TL::basis(w.clone()), |z| z.degree())
    }
}

/// `μ̂ ∘ ω̂^j` against the group-ring element acting on all generator words
/// of length `k + 1`.
pub fn verify_observation1(q: usize, k: usize, j_max: usize) -> VerificationReport {
    let mut report = VerificationReport::new("observation1");
    let th = Theta::new(GenSet::odd(q));
    let n = k + 1;
    let words = match th.generator_words(n) {
        Ok(w) => w,
        Err(e) => {
            report.run(format!("observation1/q{q}/k{k}/setup"), || Outcome::fail(e.to_string()));
            return report;
        }
    };
    for j in 0..=j_max.min(k) {
        report.run(format!("observation1/q{q}/k{k}/j{j}"), || {
            let g = match mu_omega_element(j, n) {
                Ok(g) => g,
                Err(e) => return Outcome::fail(e.to_string()),
            };
            let gens: Vec<u32> = (0..q as u32).collect();
            let ids: Vec<LieId> = gens.iter().map(|&x| th.generator(x).expect("generator")).collect();
            let bad = words
                .par_iter()
                .filter(|w| {
                    let (y, z) = w.split_last().expect("n >= 1");
                    let mut p = TLPair::basis((z.to_vec(), *y));
                    for _ in 0..j {
                        p = th.omega_hat(&p).expect("brackets of basis elements");
                    }
                    let lhs = th.flatten(&th.mu_hat(&p));
                    let flat: Vec<u32> = w
                        .iter()
                        .map(|z| ids.iter().position(|x| x == z).expect("generator") as u32)
                        .collect();
                    let rhs = act(&g, &Tensor::basis(flat), |_| Degree(1)).expect("length n");
                    lhs != rhs
                })
                .count();
            Outcome::check(bad == 0, format!("{} words, {bad} mismatches", words.len()))
        });
    }
    report
}

/// `ω̂ ∘ (B ⊗ id) = (B ⊗ id) ∘ ω` and `μ̂ ∘ (B ⊗ id) = B ∘ μ` on Sym words.
pub fn verify_prop16(q: usize, max_sym_len: usize, max_lie_len: usize) -> VerificationReport {
    let mut report = VerificationReport::new("prop16");
    let tag = format!("prop16/q{q}");
    let th = Theta::new(GenSet::odd(q));
    let ids = th.lie.lie_basis_up_to_len(max_lie_len);
    let cases: Vec<(SymWord, LieId)> = FreeLie::sym_words_from(&ids, max_sym_len)
        .into_iter()
        .flat_map(|u| ids.iter().map(move |y| (u.clone(), *y)))
        .collect();
    report.run(format!("{tag}/omega"), || {
        let bad: Vec<String> = cases
            .par_iter()
            .filter_map(|(u, y)| {
                let p = SymLiePair::basis((u.clone(), *y));
                let lhs = th.b_pair(&p).and_then(|b| th.omega_hat(&b));
                let rhs = th.lie.omega(&p).and_then(|o| th.b_pair(&o));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => None,
                    _ => Some(format!("{u:?} ⊗ {y:?}")),
                }
            })
            .collect();
        Outcome::check(bad.is_empty(), format!("{} inputs {}", cases.len(), bad.join(", ")))
    });
    report.run(format!("{tag}/mu"), || {
        let bad: Vec<String> = cases
            .par_iter()
            .filter_map(|(u, y)| {
                let p = SymLiePair::basis((u.clone(), *y));
                let lhs = th.b_pair(&p).map(|b| th.mu_hat(&b));
                let rhs: Result<TL> = th.lie.mu(&p).iter().try_fold(TL::zero(), |mut acc, (w, c)| {
                    acc.add_scaled(&th.b_map(w)?, c);
                    Ok(acc)
                });
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => None,
                    _ => Some(format!("{u:?} ⊗ {y:?}")),
                }
            })
            .collect();
        Outcome::check(bad.is_empty(), format!("{} inputs {}", cases.len(), bad.join(", ")))
    });
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem5Bounds {
    /// Minimum generator count for the diagonal check; raised to `k` at
    /// word length `k`.
    pub q: usize,
    pub max_k_diagonal: usize,
    pub max_k: usize,
    pub m: usize,
    pub coeff_deg: u32,
}

impl Default for Theorem5Bounds {
    fn default() -> Self {
        Theorem5Bounds {
            q: 2,
            max_k_diagonal: 4,
            max_k: 3,
            m: 2,
            coeff_deg: 1,
        }
    }
}

/// The `D_poly` side of `Ψ_k` on one basis tensor: the flattened value and
/// `I_HKR(π(Ψ_k(t)))`.
pub struct Theorem5Case {
    pub tensor: PolyTensor,
    pub j_k: PolyDiffOp,
    pub flattened: PolyDiffOp,
    pub hkr_part: PolyDiffOp,
}

impl Theorem5Case {
    pub fn difference(&self) -> PolyDiffOp {
        self.j_k.sub(&self.hkr_part)
    }
}

/// `Ψ_k` over `k` placeholder letters, substituted by the `β`-images of the
/// coordinate fields named in each basis tensor.
pub struct Theorem5Local {
    k: usize,
    m: usize,
    th: Theta,
    psi: TL,
}

impl Theorem5Local {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        let th = Theta::new(GenSet::odd(k));
        let gs: Vec<u32> = (0..k as u32).collect();
        let psi = th.psi_on_generators(&gs)?;
        Ok(Theorem5Local { k, m, th, psi })
    }

    pub fn psi(&self) -> &TL {
        &self.psi
    }

    pub fn case(&self, dirs: &[usize], coeff: &MultiIndex) -> Result<Theorem5Case> {
        if dirs.len() != self.k {
            return Err(AlgebraError::LengthMismatch {
                expected: self.k,
                got: dirs.len(),
            });
        }
        let g = Polynomial::monomial(coeff.clone(), Q::one());
        let tensor = PolyTensor::basis_tensor(self.m, dirs, &g)?;
        let alphabet = OperatorAlphabet::new(
            self.m,
            dirs.iter().map(|&i| MultiIndex::unit(self.m, i)).collect(),
        )?;
        let flattened = alphabet.embed(&self.th.flatten(&self.psi), &g);
        // words of generator letters only; a bracket letter is zero in T_X
        let gens: Vec<LieId> = (0..self.k as u32)
            .map(|x| self.th.generator(x))
            .collect::<Result<_>>()?;
        let mut projected = PolyTensor::zero(self.m);
        for (w, c) in self.psi.iter() {
            if w.iter().all(|z| z.len == 1) {
                let d: Vec<usize> = w
                    .iter()
                    .map(|z| dirs[gens.iter().position(|x| x == z).expect("generator")])
                    .collect();
                let t = PolyTensor::basis_tensor(self.m, &d, &g.scaled(c))?;
                projected = projected.add(&t);
            }
        }
        let hkr_part = i_hkr(&pi_project(&projected));
        Ok(Theorem5Case {
            j_k: j_map(&tensor),
            tensor,
            flattened,
            hkr_part,
        })
    }
}

/// `Ψ_{kk}` is the symmetrization for `k <= max_k_diagonal`; for every basis
/// tensor `t` with `k <= max_k`, the flattened `Ψ_k(t)` equals `J^k(t)` and
/// `J^k(t) - I_HKR(π(Ψ_k(t)))` is a Hochschild coboundary.
pub fn verify_theorem5_local(b: Theorem5Bounds) -> VerificationReport {
    let mut report = VerificationReport::new("theorem5");
    for k in 1..=b.max_k_diagonal {
        // with fewer than k odd generators every length-k word repeats a
        // letter and symmetrizes to zero
        let q = b.q.max(k);
        let th = Theta::new(GenSet::odd(q));
        report.run(format!("theorem5/q{q}/k{k}/diagonal"), || {
            let comp = match th.psi_component(k, k) {
                Ok(c) => c,
                Err(e) => return Outcome::fail(e.to_string()),
            };
            let mut bad = 0;
            let mut nonzero = 0;
            for w in comp.domain() {
                let img = comp.apply(&TL::basis(w.clone())).ok();
                let sym = th.symmetrize_tl(w).ok();
                if img != sym {
                    bad += 1;
                } else if img.is_some_and(|x| !x.is_zero()) {
                    nonzero += 1;
                }
            }
            let above = th.psi_component(k, k + 1).map(|c| c.is_zero()).unwrap_or(false);
            Outcome::check(
                bad == 0 && nonzero > 0 && above,
                format!(
                    "{} words, {nonzero} with nonzero image, {bad} mismatches, component ({k},{}) zero: {above}",
                    comp.domain().len(),
                    k + 1
                ),
            )
        });
    }
    for k in 1..=b.max_k {
        let tag = format!("theorem5/m{}/k{k}", b.m);
        let local = match Theorem5Local::new(k, b.m) {
            Ok(l) => l,
            Err(e) => {
                report.run(format!("{tag}/setup"), || Outcome::fail(e.to_string()));
                continue;
            }
        };
        let keys = PolyTensor::basis(b.m, k, b.coeff_deg);
        let cases: Vec<Result<Theorem5Case>> = keys.par_iter().map(|(d, e)| local.case(d, e)).collect();
        report.run(format!("{tag}/flatten"), || {
            let bad = cases
                .iter()
                .filter(|c| !matches!(c, Ok(c) if c.flattened == c.j_k))
                .count();
            Outcome::check(bad == 0, format!("{} basis tensors, {bad} mismatches", cases.len()))
        });
        let cb = CoboundaryBounds {
            max_order: k as u32 + 1,
            max_coeff_deg: b.coeff_deg,
        };
        report.run(format!("{tag}/coboundary"), || {
            let results: Vec<std::result::Result<(String, PolyDiffOp), String>> = cases
                .par_iter()
                .map(|c| {
                    let c = c.as_ref().map_err(|e| e.to_string())?;
                    let diff = c.difference();
                    let label = format!("{:?}", c.tensor.terms().keys().next().expect("basis tensor"));
                    match coboundary_witness(&diff, cb) {
                        Ok(Coboundary::Witness(h)) => Ok((label, h)),
                        Ok(Coboundary::NotCocycle(d)) => Err(format!("{label}: d(difference) = {d}")),
                        Ok(Coboundary::NoWitness) => Err(format!("{label}: no witness for {diff}")),
                        Err(e) => Err(format!("{label}: {e}")),
                    }
                })
                .collect();
            let bad: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
            let witnesses: Vec<String> = results
                .iter()
                .filter_map(|r| r.as_ref().ok())
                .map(|(l, h)| format!("{l} -> {}", h.encode()))
                .collect();
            let out = Outcome::check(
                bad.is_empty(),
                format!(
                    "local form, up to coboundary: {} basis tensors, {} failures {}",
                    cases.len(),
                    bad.len(),
                    bad.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; ")
                ),
            );
            out.with_witness(witnesses.join("; "))
        });
    }
    report
}

/// `d` applied to the difference of a case; zero for every case.
pub fn difference_is_cocycle(c: &Theorem5Case) -> bool {
    hochschild_d(&c.difference()).is_zero()
}
