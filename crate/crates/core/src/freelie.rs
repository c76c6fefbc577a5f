//! Free graded Lie algebras inside the tensor algebra, their symmetric
//! algebras, PBW symmetrization and the dexp-inverse calculus.
//!
//! A Lie element is stored as its tensor expansion.  The Lie basis of each
//! component is extracted by projecting every word with the Dynkin projector
//! and row-reducing, so membership and coordinates are plain linear algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::glin::{factorial, koszul_odd, q, qi, swap_is_odd, Degree, Echelon, LinComb, LinearMapRep, Q};
use crate::report::{Outcome, VerificationReport};
use crate::symgrp::{act, special_element, Permutation, SpecialElement};

pub type Word = Vec<u32>;
pub type Tensor = LinComb<Word>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet {
    names: Vec<String>,
    degrees: Vec<Degree>,
}

impl GenSet {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let (names, degrees): (Vec<String>, Vec<Degree>) =
            gens.into_iter().map(|(n, d)| (n.into(), Degree(d))).unzip();
        if let Some(pos) = degrees.iter().position(|d| d.0 == 0) {
            return Err(AlgebraError::OutOfRange(format!(
                "generator {} has degree 0",
                names[pos]
            )));
        }
        Ok(GenSet { names, degrees })
    }

    /// `q` generators `z1..zq` of degree 1.
    pub fn odd(q: usize) -> Self {
        GenSet {
            names: (1..=q).map(|i| format!("z{i}")).collect(),
            degrees: vec![Degree(1); q],
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn degree(&self, g: u32) -> Degree {
        self.degrees[g as usize]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn name(&self, g: u32) -> &str {
        &self.names[g as usize]
    }

    pub fn word_degree(&self, w: &[u32]) -> Degree {
        w.iter().map(|&g| self.degree(g)).sum()
    }

    pub fn all_degree_one(&self) -> bool {
        self.degrees.iter().all(|d| d.0 == 1)
    }
}

pub fn letter(g: u32) -> Tensor {
    LinComb::basis(vec![g])
}

pub fn unit_tensor() -> Tensor {
    LinComb::basis(vec![])
}

/// Concatenation product of T(V).
pub fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::zero();
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            out.add_term(w, ca * cb);
        }
    }
    out
}

/// A basis element of the Lie component of word length `len` and degree `deg`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieId {
    pub len: u32,
    pub deg: u32,
    pub idx: u32,
}

impl LieId {
    pub fn degree(self) -> Degree {
        Degree(self.deg)
    }
}

impl fmt::Debug for LieId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}.{}#{}", self.len, self.deg, self.idx)
    }
}

/// Canonically sorted product of Lie basis elements in `Sym(L)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymWord(pub Vec<LieId>);

impl SymWord {
    pub fn one() -> Self {
        SymWord(Vec::new())
    }

    pub fn factors(&self) -> usize {
        self.0.len()
    }

    pub fn word_len(&self) -> usize {
        self.0.iter().map(|z| z.len as usize).sum()
    }

    pub fn degree(&self) -> Degree {
        self.0.iter().map(|z| z.degree()).sum()
    }

    /// Sort an ordered product.  `None` when an odd factor repeats; otherwise
    /// the parity of the Koszul sign and the sorted word.
    pub fn canonicalize(factors: Vec<LieId>) -> Option<(bool, SymWord)> {
        let mut order: Vec<usize> = (0..factors.len()).collect();
        order.sort_by_key(|&i| factors[i]);
        let degrees: Vec<Degree> = factors.iter().map(|z| z.degree()).collect();
        let odd = koszul_odd(&degrees, &order);
        let sorted: Vec<LieId> = order.iter().map(|&i| factors[i]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1] && w[0].degree().is_odd()) {
            return None;
        }
        Some((odd, SymWord(sorted)))
    }
}

impl fmt::Debug for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{z:?}")?;
        }
        Ok(())
    }
}

pub type SymElement = LinComb<SymWord>;
/// Element of `Sym(L) ⊗ L` in basis coordinates.
pub type SymLiePair = LinComb<(SymWord, LieId)>;

struct LieComponent {
    basis: Vec<Tensor>,
    echelon: Echelon,
    word_index: BTreeMap<Word, usize>,
}

struct SymComponent {
    map: LinearMapRep<SymWord, Word>,
}

/// The free Lie algebra on a graded generator set, with lazily built and
/// cached components.
pub struct FreeLie {
    gens: GenSet,
    lie: Mutex<HashMap<(usize, u32), Arc<LieComponent>>>,
    sym: Mutex<HashMap<(usize, u32), Arc<SymComponent>>>,
}

impl fmt::Debug for FreeLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeLie").field("gens", &self.gens).finish()
    }
}

fn sparse(index: &BTreeMap<Word, usize>, t: &Tensor) -> Option<BTreeMap<usize, Q>> {
    let mut out = BTreeMap::new();
    for (w, c) in t.iter() {
        out.insert(*index.get(w)?, c.clone());
    }
    Some(out)
}

impl FreeLie {
    pub fn new(gens: GenSet) -> Self {
        FreeLie {
            gens,
            lie: Mutex::new(HashMap::new()),
            sym: Mutex::new(HashMap::new()),
        }
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    pub fn word_degree(&self, w: &[u32]) -> Degree {
        self.gens.word_degree(w)
    }

    /// Degree of a homogeneous tensor; `None` for zero.
    pub fn tensor_degree(&self, t: &Tensor) -> Option<Degree> {
        t.keys().next().map(|w| self.word_degree(w))
    }

    /// All words of length `n` and degree `d`, sorted.
    pub fn words(&self, n: usize, d: u32) -> Vec<Word> {
        fn rec(degs: &[Degree], n: usize, d: u32, cur: &mut Word, out: &mut Vec<Word>) {
            if cur.len() == n {
                if d == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for (g, gd) in degs.iter().enumerate() {
                if gd.0 <= d {
                    cur.push(g as u32);
                    rec(degs, n, d - gd.0, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&self.gens.degrees, n, d, &mut Vec::new(), &mut out);
        out
    }

    /// Degrees `d` for which words of length `n` exist.
    pub fn degrees_of_len(&self, n: usize) -> Vec<u32> {
        if self.gens.is_empty() {
            return if n == 0 { vec![0] } else { vec![] };
        }
        let lo = self.gens.degrees.iter().map(|d| d.0).min().unwrap_or(0) * n as u32;
        let hi = self.gens.degrees.iter().map(|d| d.0).max().unwrap_or(0) * n as u32;
        (lo..=hi).filter(|&d| !self.words(n, d).is_empty()).collect()
    }

    /// Graded commutator, extended bilinearly.
    pub fn bracket(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (wa, ca) in a.iter() {
            let da = self.word_degree(wa);
            for (wb, cb) in b.iter() {
                let db = self.word_degree(wb);
                let c = ca * cb;
                let mut ab = wa.clone();
                ab.extend_from_slice(wb);
                let mut ba = wb.clone();
                ba.extend_from_slice(wa);
                out.add_term(ab, c.clone());
                out.add_term(ba, if swap_is_odd(da, db) { c } else { -c });
            }
        }
        out
    }

    /// Right-nested bracket `[w1,[w2,[...,[w_{n-1},w_n]]]]`.
    pub fn nfold_bracket_ln(&self, ws: &[Tensor]) -> Result<Tensor> {
        let (last, rest) = ws
            .split_last()
            .ok_or_else(|| AlgebraError::OutOfRange("L_n needs n >= 1".into()))?;
        Ok(rest
            .iter()
            .rev()
            .fold(last.clone(), |acc, w| self.bracket(w, &acc)))
    }

    /// `L_n` extended linearly from words to tensors.
    pub fn ln_map(&self, t: &Tensor) -> Tensor {
        t.map_linear(|w| {
            if w.is_empty() {
                return unit_tensor();
            }
            let letters: Vec<Tensor> = w.iter().map(|&g| letter(g)).collect();
            self.nfold_bracket_ln(&letters).expect("non-empty word")
        })
    }

    /// `(1/n) e_n` applied componentwise; realized as `(1/n) L_n`.
    pub fn dynkin_project(&self, t: &Tensor) -> Tensor {
        t.map_linear(|w| {
            if w.is_empty() {
                return Tensor::zero();
            }
            let letters: Vec<Tensor> = w.iter().map(|&g| letter(g)).collect();
            self.nfold_bracket_ln(&letters)
                .expect("non-empty word")
                .scaled(&q(1, w.len() as i64))
        })
    }

    fn lie_component(&self, n: usize, d: u32) -> Arc<LieComponent> {
        if let Some(c) = self.lie.lock().expect("lie cache").get(&(n, d)) {
            return c.clone();
        }
        let words = self.words(n, d);
        let word_index: BTreeMap<Word, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut echelon = Echelon::new();
        let mut basis = Vec::new();
        if n > 0 {
            for w in &words {
                let p = self.dynkin_project(&LinComb::basis(w.clone()));
                let v = sparse(&word_index, &p).expect("projection stays in the component");
                if echelon.insert(&v, basis.len()) {
                    basis.push(p);
                }
            }
        }
        let comp = Arc::new(LieComponent {
            basis,
            echelon,
            word_index,
        });
        self.lie
            .lock()
            .expect("lie cache")
            .entry((n, d))
            .or_insert(comp)
            .clone()
    }

    /// Basis of the Lie component of word length `n` and degree `d`.
    pub fn lie_basis_component(&self, n: usize, d: u32) -> Vec<LieId> {
        let c = self.lie_component(n, d);
        (0..c.basis.len())
            .map(|i| LieId {
                len: n as u32,
                deg: d,
                idx: i as u32,
            })
            .collect()
    }

    /// Lie basis of a given total degree, over all word lengths.
    pub fn lie_basis(&self, total_degree: u32) -> Vec<LieId> {
        (1..=total_degree as usize)
            .flat_map(|n| self.lie_basis_component(n, total_degree))
            .collect()
    }

    /// Lie basis elements of word length `1..=max_len`.
    pub fn lie_basis_up_to_len(&self, max_len: usize) -> Vec<LieId> {
        (1..=max_len)
            .flat_map(|n| {
                self.degrees_of_len(n)
                    .into_iter()
                    .flat_map(move |d| self.lie_basis_component(n, d))
            })
            .collect()
    }

    pub fn lie_element(&self, id: LieId) -> Tensor {
        self.lie_component(id.len as usize, id.deg).basis[id.idx as usize].clone()
    }

    pub fn is_lie(&self, t: &Tensor) -> bool {
        self.dynkin_project(t) == *t
    }

    /// Coordinates of a Lie element in the Lie basis.
    pub fn coordinates(&self, t: &Tensor) -> Result<LinComb<LieId>> {
        let mut parts: BTreeMap<(usize, u32), Tensor> = BTreeMap::new();
        for (w, c) in t.iter() {
            parts
                .entry((w.len(), self.word_degree(w).0))
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        let mut out = LinComb::zero();
        for ((n, d), part) in parts {
            if n == 0 {
                return Err(AlgebraError::NotLie("non-zero scalar part".into()));
            }
            let comp = self.lie_component(n, d);
            let v = sparse(&comp.word_index, &part).expect("words of the component");
            let (residual, used) = comp.echelon.reduce(&v);
            if !residual.is_empty() {
                return Err(AlgebraError::NotLie(format!(
                    "component of length {n}, degree {d}"
                )));
            }
            for (i, c) in used {
                out.add_term(
                    LieId {
                        len: n as u32,
                        deg: d,
                        idx: i as u32,
                    },
                    c,
                );
            }
        }
        Ok(out)
    }

    /// PBW symmetrization of factors given as homogeneous tensors:
    /// `(1/k!) sum_sigma s(sigma) f_sigma(1) ⊗ ... ⊗ f_sigma(k)`.
    pub fn symmetrize_factors(&self, factors: &[Tensor]) -> Tensor {
        let k = factors.len();
        if factors.iter().any(|f| f.is_zero()) {
            return Tensor::zero();
        }
        let degrees: Vec<Degree> = factors
            .iter()
            .map(|f| self.tensor_degree(f).expect("non-zero factor"))
            .collect();
        let mut out = Tensor::zero();
        for p in Permutation::all(k) {
            let odd = koszul_odd(&degrees, p.images());
            let prod = p
                .images()
                .iter()
                .fold(unit_tensor(), |acc, &i| tensor_mul(&acc, &factors[i]));
            if odd {
                out -= &prod;
            } else {
                out += &prod;
            }
        }
        out.scaled(&factorial(k).recip())
    }

    pub fn symmetrize_word(&self, u: &SymWord) -> Tensor {
        let factors: Vec<Tensor> = u.0.iter().map(|&z| self.lie_element(z)).collect();
        self.symmetrize_factors(&factors)
    }

    /// The symmetrization map `I : Sym(L) -> T(V)`.
    pub fn symmetrize(&self, u: &SymElement) -> Tensor {
        u.map_linear(|w| self.symmetrize_word(w))
    }

    /// All Sym words of total word length `n` and degree `d`, sorted.
    pub fn sym_words(&self, n: usize, d: u32) -> Vec<SymWord> {
        let mut ids = Vec::new();
        for l in 1..=n {
            for dl in self.degrees_of_len(l) {
                if dl <= d {
                    ids.extend(self.lie_basis_component(l, dl));
                }
            }
        }
        let mut out = Vec::new();
        fn rec(
            ids: &[LieId],
            start: usize,
            n: usize,
            d: u32,
            cur: &mut Vec<LieId>,
            out: &mut Vec<SymWord>,
        ) {
            if n == 0 && d == 0 {
                out.push(SymWord(cur.clone()));
                return;
            }
            for i in start..ids.len() {
                let z = ids[i];
                if z.len as usize > n || z.deg > d {
                    continue;
                }
                cur.push(z);
                let next = if z.degree().is_odd() { i + 1 } else { i };
                rec(ids, next, n - z.len as usize, d - z.deg, cur, out);
                cur.pop();
            }
        }
        rec(&ids, 0, n, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Sym words with at most `max_factors` factors taken from the given ids.
    pub fn sym_words_from(ids: &[LieId], max_factors: usize) -> Vec<SymWord> {
        let mut sorted = ids.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut out = Vec::new();
        fn rec(ids: &[LieId], start: usize, left: usize, cur: &mut Vec<LieId>, out: &mut Vec<SymWord>) {
            out.push(SymWord(cur.clone()));
            if left == 0 {
                return;
            }
            for i in start..ids.len() {
                cur.push(ids[i]);
                let next = if ids[i].degree().is_odd() { i + 1 } else { i };
                rec(ids, next, left - 1, cur, out);
                cur.pop();
            }
        }
        rec(&sorted, 0, max_factors, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    fn sym_component(&self, n: usize, d: u32) -> Result<Arc<SymComponent>> {
        if let Some(c) = self.sym.lock().expect("sym cache").get(&(n, d)) {
            return Ok(c.clone());
        }
        let domain = self.sym_words(n, d);
        let codomain = self.words(n, d);
        let map = LinearMapRep::from_fn(domain, Some(codomain), |u| self.symmetrize_word(u))?;
        let comp = Arc::new(SymComponent { map });
        Ok(self
            .sym
            .lock()
            .expect("sym cache")
            .entry((n, d))
            .or_insert(comp)
            .clone())
    }

    /// Matrix of `I` on the component of word length `n`, degree `d`.
    pub fn symmetrization_matrix(&self, n: usize, d: u32) -> Result<LinearMapRep<SymWord, Word>> {
        Ok(self.sym_component(n, d)?.map.clone())
    }

    /// The inverse `G` of the symmetrization map.
    pub fn inverse_g(&self, t: &Tensor) -> Result<SymElement> {
        let mut parts: BTreeMap<(usize, u32), Tensor> = BTreeMap::new();
        for (w, c) in t.iter() {
            parts
                .entry((w.len(), self.word_degree(w).0))
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        let mut out = SymElement::zero();
        for ((n, d), part) in parts {
            if n == 0 {
                out.add_term(SymWord::one(), part.coeff(&vec![]));
                continue;
            }
            let comp = self.sym_component(n, d)?;
            let pre = comp.map.solve_in_image(&part)?.ok_or_else(|| {
                AlgebraError::Invariant(format!("symmetrization is singular on ({n},{d})"))
            })?;
            out += &pre;
        }
        Ok(out)
    }

    /// Multiply a Sym word by a Lie element written in basis coordinates.
    fn sym_times(&self, w: &SymWord, y: &LinComb<LieId>) -> SymElement {
        let mut out = SymElement::zero();
        for (z, c) in y.iter() {
            let mut f = w.0.clone();
            f.push(*z);
            if let Some((odd, s)) = SymWord::canonicalize(f) {
                out.add_term(s, if odd { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// `mu : Sym(L) ⊗ L -> Sym(L)`, the product.
    pub fn mu(&self, p: &SymLiePair) -> SymElement {
        p.map_linear(|(w, y)| self.sym_times(w, &LinComb::basis(*y)))
    }

    /// `omega(z_1..z_k ⊗ y) = sum_i ± z_1..ẑ_i..z_k ⊗ [z_i, y]`.
    pub fn omega(&self, p: &SymLiePair) -> Result<SymLiePair> {
        let mut out = SymLiePair::zero();
        for ((w, y), c) in p.iter() {
            let yt = self.lie_element(*y);
            for i in 0..w.0.len() {
                let zi = w.0[i];
                let after: Degree = w.0[i + 1..].iter().map(|z| z.degree()).sum();
                let sign_odd = swap_is_odd(zi.degree(), after);
                let br = self.coordinates(&self.bracket(&self.lie_element(zi), &yt))?;
                let mut rest = w.0.clone();
                rest.remove(i);
                let rest = SymWord(rest);
                for (z, cz) in br.iter() {
                    let coeff = c * cz;
                    out.add_term((rest.clone(), *z), if sign_odd { -coeff } else { coeff });
                }
            }
        }
        Ok(out)
    }

    /// The derivation `ad_y` of Sym(L) applied to `z_1..z_k ⊗ y`:
    /// `sum_i ± z_1..[z_i,y]..z_k`.
    pub fn ad_right(&self, p: &SymLiePair) -> Result<SymElement> {
        let mut out = SymElement::zero();
        for ((w, y), c) in p.iter() {
            let yt = self.lie_element(*y);
            for i in 0..w.0.len() {
                let after: Degree = w.0[i + 1..].iter().map(|z| z.degree()).sum();
                let sign_odd = swap_is_odd(y.degree(), after);
                let br = self.coordinates(&self.bracket(&self.lie_element(w.0[i]), &yt))?;
                for (z, cz) in br.iter() {
                    let mut f = w.0.clone();
                    f[i] = *z;
                    if let Some((odd, s)) = SymWord::canonicalize(f) {
                        let coeff = c * cz;
                        out.add_term(s, if odd ^ sign_odd { -coeff } else { coeff });
                    }
                }
            }
        }
        Ok(out)
    }

    /// `mu(sum_j c_j omega^j(p))`.
    pub fn dexp_transform(&self, p: &SymLiePair) -> Result<SymElement> {
        let max_k = p.keys().map(|(w, _)| w.factors()).max().unwrap_or(0);
        let c = bch_coeffs(max_k);
        let mut out = SymElement::zero();
        let mut cur = p.clone();
        for cj in &c {
            if cur.is_zero() {
                break;
            }
            out.add_scaled(&self.mu(&cur), cj);
            cur = self.omega(&cur)?;
        }
        Ok(out)
    }

    /// `I(dexp_transform(u ⊗ y))` computed without Lie coordinates: the
    /// bracketed factor is kept as a tensor and symmetrized multilinearly.
    pub fn dexp_symmetrized(&self, u: &SymElement, y: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (w, cw) in u.iter() {
            let c = bch_coeffs(w.factors());
            let mut states: BTreeMap<Vec<LieId>, Tensor> = BTreeMap::new();
            states.insert(w.0.clone(), y.scaled(cw));
            for cj in &c {
                if states.is_empty() {
                    break;
                }
                if !cj.is_zero() {
                    for (rest, yt) in &states {
                        let mut factors: Vec<Tensor> =
                            rest.iter().map(|&z| self.lie_element(z)).collect();
                        factors.push(yt.clone());
                        out.add_scaled(&self.symmetrize_factors(&factors), cj);
                    }
                }
                let mut next: BTreeMap<Vec<LieId>, Tensor> = BTreeMap::new();
                for (rest, yt) in &states {
                    for i in 0..rest.len() {
                        let zi = rest[i];
                        let after: Degree = rest[i + 1..].iter().map(|z| z.degree()).sum();
                        let mut br = self.bracket(&self.lie_element(zi), yt);
                        if br.is_zero() {
                            continue;
                        }
                        if swap_is_odd(zi.degree(), after) {
                            br = -br;
                        }
                        let mut r = rest.clone();
                        r.remove(i);
                        *next.entry(r).or_default() += &br;
                    }
                }
                next.retain(|_, t| !t.is_zero());
                states = next;
            }
        }
        out
    }

    /// Human-readable tensor, e.g. `1/2 z1⊗z2 - 1/2 z2⊗z1`.
    pub fn format_tensor(&self, t: &Tensor) -> String {
        if t.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = t
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|&g| self.gens.name(g)).collect::<Vec<_>>().join("⊗")
                };
                format!("{c} {word}")
            })
            .collect();
        terms.join(" + ")
    }
}

/// Coefficients `c_0..c_n` of `y / (1 - e^{-y})`.
pub fn bch_coeffs(n: usize) -> Vec<Q> {
    // (1 - e^{-y}) / y = sum_i (-1)^i y^i / (i+1)!
    let f: Vec<Q> = (0..=n)
        .map(|i| {
            let v = factorial(i + 1).recip();
            if i % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    let mut c: Vec<Q> = Vec::with_capacity(n + 1);
    c.push(Q::one());
    for m in 1..=n {
        let mut s = Q::zero();
        for i in 1..=m {
            s += &f[i] * &c[m - i];
        }
        c.push(-s);
    }
    c
}

/// `m(I(u) ⊗ y) = I(dexp_transform(u ⊗ y))` on every Sym word of at most
/// `max_sym_len` factors and every Lie basis `y`, with Lie factors of word
/// length at most `max_deg`.
pub fn verify_theorem6(gens: &GenSet, max_sym_len: usize, max_deg: usize) -> VerificationReport {
    let mut report = VerificationReport::new("theorem6");
    let tag = format!("theorem6/q{}", gens.len());
    if !gens.all_degree_one() {
        report.run(format!("{tag}/hypothesis"), || {
            Outcome::fail("generators must be concentrated in degree 1")
        });
        return report;
    }
    let lie = FreeLie::new(gens.clone());
    let ids = lie.lie_basis_up_to_len(max_deg);
    let us = FreeLie::sym_words_from(&ids, max_sym_len);
    for k in 0..=max_sym_len {
        for ylen in 1..=max_deg {
            let cases: Vec<(SymWord, LieId)> = us
                .iter()
                .filter(|u| u.factors() == k)
                .flat_map(|u| {
                    ids.iter()
                        .filter(|y| y.len as usize == ylen)
                        .map(move |y| (u.clone(), *y))
                })
                .collect();
            if cases.is_empty() {
                continue;
            }
            report.run(format!("{tag}/sym{k}/y{ylen}"), || {
                let bad: Vec<String> = cases
                    .par_iter()
                    .filter_map(|(u, y)| {
                        let yt = lie.lie_element(*y);
                        let lhs = tensor_mul(&lie.symmetrize_word(u), &yt);
                        let rhs = lie.dexp_symmetrized(&LinComb::basis(u.clone()), &yt);
                        (lhs != rhs).then(|| format!("{u:?} ⊗ {y:?}"))
                    })
                    .collect();
                if bad.is_empty() {
                    Outcome::pass(format!("{} inputs", cases.len()))
                } else {
                    Outcome::fail(format!("{} of {} inputs differ: {}", bad.len(), cases.len(), bad.join(", ")))
                }
            });
        }
    }
    report
}

/// `L_n((1/n) e_n w) = L_n(w)` for every word of length `n`.
pub fn verify_prop14(gens: &GenSet, n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("prop14");
    let lie = FreeLie::new(gens.clone());
    report.run(format!("prop14/q{}/n{n}", gens.len()), || {
        if n == 0 || n > crate::symgrp::MAX_GROUP_SIZE {
            return Outcome::fail(format!("n={n} outside 1..={}", crate::symgrp::MAX_GROUP_SIZE));
        }
        let e = special_element(SpecialElement::Dynkin { n })
            .expect("n in range")
            .scaled(&q(1, n as i64));
        let mut words = Vec::new();
        for d in lie.degrees_of_len(n) {
            words.extend(lie.words(n, d));
        }
        let bad = words
            .iter()
            .filter(|w| {
                let t = LinComb::basis((*w).clone());
                let projected = act(&e, &t, |g| gens.degree(*g)).expect("length n");
                lie.ln_map(&projected) != lie.ln_map(&t)
            })
            .count();
        Outcome::check(bad == 0, format!("{} words, {bad} mismatches", words.len()))
    });
    report
}

/// For `q` degree-one generators and each word length `n <= max_n`: the
/// matrix of `I` on every component is square of full rank and the Sym side
/// has dimension `q^n`.
pub fn verify_pbw(q_gens: usize, max_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("pbw");
    let lie = FreeLie::new(GenSet::odd(q_gens));
    for n in 1..=max_n {
        report.run(format!("pbw/q{q_gens}/n{n}"), || {
            let (sym, tensor) = pbw_dimensions(&lie, n);
            let expected = q_gens.pow(n as u32);
            let mut notes = Vec::new();
            let mut ok = sym == expected && tensor == expected;
            for d in lie.degrees_of_len(n) {
                match lie.symmetrization_matrix(n, d) {
                    Ok(map) => {
                        let (rows, cols, rank) = (map.codomain().len(), map.domain().len(), map.rank());
                        ok &= rows == cols && rank == cols;
                        notes.push(format!("({n},{d}): {cols}x{rows} rank {rank}"));
                    }
                    Err(e) => {
                        ok = false;
                        notes.push(e.to_string());
                    }
                }
            }
            Outcome::check(ok, format!("dim Sym {sym}, dim T {tensor}, q^n {expected}; {}", notes.join(", ")))
        });
    }
    report
}

/// Dimension of the degree-`n` part of the free Lie algebra on `q` even
/// generators, by Witt's formula.
pub fn witt_dimension(q: usize, n: usize) -> usize {
    fn mobius(mut n: usize) -> i64 {
        let mut out = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                out = -out;
            }
            p += 1;
        }
        if n > 1 {
            out = -out;
        }
        out
    }
    let total: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * (q as i64).pow((n / d) as u32))
        .sum();
    (total / n as i64) as usize
}

/// `e_n e_n = n e_n`, and `(1/n) e_n` is a projector whose image is the span
/// of the nested brackets, for odd and for even generators.
pub fn verify_dynkin(max_n: usize, q_gens: usize) -> VerificationReport {
    let mut report = VerificationReport::new("dynkin");
    for n in 1..=max_n {
        let e = match special_element(SpecialElement::Dynkin { n }) {
            Ok(e) => e,
            Err(err) => {
                report.run(format!("dynkin/n{n}/quasi-idempotent"), || Outcome::fail(err.to_string()));
                continue;
            }
        };
        report.run(format!("dynkin/n{n}/quasi-idempotent"), || {
            let sq = crate::symgrp::grp_multiply(&e, &e);
            Outcome::check(
                sq.as_ref().ok() == Some(&e.scaled(&qi(n as i64))),
                format!("{} terms in e_{n}", e.terms().len()),
            )
        });
        let p = e.scaled(&q(1, n as i64));
        for (parity, deg) in [("odd", 1u32), ("even", 2u32)] {
            let gens = GenSet::new((0..q_gens).map(|i| (format!("z{}", i + 1), deg))).expect("positive degrees");
            let lie = FreeLie::new(gens.clone());
            let words = lie.words(n, deg * n as u32);
            report.run(format!("dynkin/n{n}/q{q_gens}/{parity}/projector"), || {
                let apply = |t: &Tensor| act(&p, t, |g| gens.degree(*g)).expect("length n");
                let mut bad = 0usize;
                for w in &words {
                    let t = LinComb::basis(w.clone());
                    let once = apply(&t);
                    let br = lie.ln_map(&t);
                    bad += usize::from(apply(&once) != once || apply(&br) != br);
                }
                let image = LinearMapRep::from_fn(words.clone(), None, |w| apply(&LinComb::basis(w.clone())));
                let brackets = LinearMapRep::from_fn(words.clone(), None, |w| lie.ln_map(&LinComb::basis(w.clone())));
                let (ri, rb) = match (image, brackets) {
                    (Ok(a), Ok(b)) => (a.rank(), b.rank()),
                    _ => return Outcome::fail("could not tabulate"),
                };
                let witt = (deg == 2).then(|| witt_dimension(q_gens, n));
                let ok = bad == 0 && ri == rb && witt.is_none_or(|w| w == ri);
                let witt_note = witt.map(|w| format!(", Witt {w}")).unwrap_or_default();
                Outcome::check(
                    ok,
                    format!("{} words, {bad} failures, image rank {ri}, bracket span {rb}{witt_note}", words.len()),
                )
            });
        }
    }
    report
}

/// The maps of the two-level construction: an outer free Lie algebra whose
/// generators are inner Lie basis elements, `lambda` multiplying out, `B`
/// the outer symmetrization and `pi = G ∘ lambda` on outer Lie elements.
pub struct LambdaPi {
    inner: FreeLie,
    outer: FreeLie,
    letters: Vec<LieId>,
}

#[derive(Clone, Copy, Debug)]
pub struct LambdaPiBounds {
    /// Inner word length of the outer generators.
    pub max_letter_len: usize,
    /// Outer word length of outer Lie basis elements.
    pub max_outer_len: usize,
    pub max_sym_len: usize,
}

impl Default for LambdaPiBounds {
    fn default() -> Self {
        LambdaPiBounds {
            max_letter_len: 2,
            max_outer_len: 2,
            max_sym_len: 2,
        }
    }
}

impl LambdaPi {
    pub fn new(gens: GenSet, max_letter_len: usize) -> Result<Self> {
        let inner = FreeLie::new(gens);
        let letters = inner.lie_basis_up_to_len(max_letter_len);
        let outer_gens = GenSet::new(
            letters
                .iter()
                .enumerate()
                .map(|(i, z)| (format!("a{}", i + 1), z.deg)),
        )?;
        Ok(LambdaPi {
            inner,
            outer: FreeLie::new(outer_gens),
            letters,
        })
    }

    pub fn inner(&self) -> &FreeLie {
        &self.inner
    }

    pub fn outer(&self) -> &FreeLie {
        &self.outer
    }

    pub fn letters(&self) -> &[LieId] {
        &self.letters
    }

    /// Multiply out: substitute each outer letter by its inner tensor.
    pub fn lambda(&self, x: &Tensor) -> Tensor {
        x.map_linear(|w| {
            w.iter().fold(unit_tensor(), |acc, &a| {
                tensor_mul(&acc, &self.inner.lie_element(self.letters[a as usize]))
            })
        })
    }

    pub fn b_map(&self, u: &SymElement) -> Tensor {
        self.outer.symmetrize(u)
    }

    /// `G(lambda(x))`, which must lie in `Sym^1`.
    pub fn pi(&self, x: &Tensor) -> Result<LinComb<LieId>> {
        let g = self.inner.inverse_g(&self.lambda(x))?;
        let mut out = LinComb::zero();
        for (w, c) in g.iter() {
            if w.factors() != 1 {
                return Err(AlgebraError::NotLie(format!("pi leaves Sym^1 at {w:?}")));
            }
            out.add_term(w.0[0], c.clone());
        }
        Ok(out)
    }

    /// `Sym(pi)` on an outer Sym word.
    pub fn sym_pi(&self, u: &SymWord) -> Result<SymElement> {
        let mut acc = SymElement::basis(SymWord::one());
        for &x in &u.0 {
            let px = self.pi(&self.outer.lie_element(x))?;
            let mut next = SymElement::zero();
            for (w, c) in acc.iter() {
                next.add_scaled(&self.inner.sym_times(w, &px), c);
            }
            acc = next;
        }
        Ok(acc)
    }
}

pub fn lambda_pi_identities(gens: &GenSet, bounds: LambdaPiBounds) -> VerificationReport {
    let mut report = VerificationReport::new("lambda_pi");
    let tag = format!("lambda_pi/q{}", gens.len());
    let lp = match LambdaPi::new(gens.clone(), bounds.max_letter_len) {
        Ok(lp) => lp,
        Err(e) => {
            report.run(format!("{tag}/setup"), || Outcome::fail(e.to_string()));
            return report;
        }
    };
    let n_letters = lp.letters.len() as u32;

    report.run(format!("{tag}/i-lambda-bracket"), || {
        let mut bad = 0;
        for a in 0..n_letters {
            for b in 0..n_letters {
                let outer = lp.outer.bracket(&letter(a), &letter(b));
                let inner = lp.inner.bracket(&lp.lambda(&letter(a)), &lp.lambda(&letter(b)));
                bad += usize::from(lp.lambda(&outer) != inner);
            }
        }
        Outcome::check(bad == 0, format!("{} pairs, {bad} mismatches", n_letters * n_letters))
    });

    let outer_ids = lp.outer.lie_basis_up_to_len(bounds.max_outer_len);
    report.run(format!("{tag}/ii-pi-lands-in-sym1"), || {
        let bad: Vec<String> = outer_ids
            .iter()
            .filter_map(|&x| lp.pi(&lp.outer.lie_element(x)).err().map(|e| format!("{x:?}: {e}")))
            .collect();
        Outcome::check(bad.is_empty(), format!("{} outer Lie basis elements {}", outer_ids.len(), bad.join("; ")))
    });

    report.run(format!("{tag}/iii-pi-on-generators"), || {
        let bad = (0..n_letters)
            .filter(|&a| {
                lp.pi(&letter(a)).ok() != Some(LinComb::basis(lp.letters[a as usize]))
            })
            .count();
        Outcome::check(bad == 0, format!("{n_letters} generators, {bad} mismatches"))
    });

    let us = FreeLie::sym_words_from(&outer_ids, bounds.max_sym_len);
    report.run(format!("{tag}/iv-lambda-b-equals-i-sym-pi"), || {
        let bad: Vec<String> = us
            .par_iter()
            .filter_map(|u| {
                let lhs = lp.lambda(&lp.b_map(&LinComb::basis(u.clone())));
                match lp.sym_pi(u) {
                    Ok(s) if lp.inner.symmetrize(&s) == lhs => None,
                    Ok(_) => Some(format!("{u:?}")),
                    Err(e) => Some(format!("{u:?}: {e}")),
                }
            })
            .collect();
        Outcome::check(bad.is_empty(), format!("{} Sym words {}", us.len(), bad.join("; ")))
    });
    report
}

/// Dimension of `Sym(L)` in word length `n` (all degrees), and of `T(V)`.
pub fn pbw_dimensions(lie: &FreeLie, n: usize) -> (usize, usize) {
    let mut sym = 0;
    let mut tensor = 0;
    for d in lie.degrees_of_len(n) {
        sym += lie.sym_words(n, d).len();
        tensor += lie.words(n, d).len();
    }
    (sym, tensor)
}

pub fn bernoulli_reference(n: usize) -> Vec<Q> {
    // Akiyama–Tanigawa, giving B_1 = +1/2
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Q> = Vec::new();
    for m in 0..=n {
        a.push(q(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = qi(j as i64) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(words: &[(&[u32], i64)]) -> Tensor {
        words.iter().map(|(w, c)| (w.to_vec(), qi(*c))).collect()
    }

    #[test]
    fn pbw_report() {
        let r = verify_pbw(2, 4).finish();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn witt_values() {
        assert_eq!(
            (1..=6).map(|n| witt_dimension(2, n)).collect::<Vec<_>>(),
            vec![2, 1, 2, 3, 6, 9]
        );
        assert_eq!(witt_dimension(3, 2), 3);
    }

    #[test]
    fn dynkin_small() {
        let r = verify_dynkin(4, 2).finish();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn bch_against_bernoulli() {
        // y/(1-e^{-y}) = sum B_n^+ y^n / n!
        let c = bch_coeffs(10);
        let b = bernoulli_reference(10);
        for n in 0..=10 {
            assert_eq!(c[n], &b[n] / factorial(n), "n={n}");
        }
        assert_eq!(c[..5], [qi(1), q(1, 2), q(1, 12), qi(0), q(-1, 720)]);
    }

    #[test]
    fn lie_basis_dimensions() {
        let one = FreeLie::new(GenSet::odd(1));
        assert_eq!(one.lie_basis(2).len(), 1);
        let two = FreeLie::new(GenSet::odd(2));
        assert_eq!(two.lie_basis(1).len(), 2);
        assert_eq!(two.lie_basis(2).len(), 3);
    }

    #[test]
    fn bracket_examples() {
        let lie = FreeLie::new(GenSet::odd(3));
        assert_eq!(lie.bracket(&letter(0), &letter(1)), t(&[(&[0, 1], 1), (&[1, 0], 1)]));
        let even = FreeLie::new(GenSet::new([("a", 2)]).unwrap());
        assert!(even.bracket(&letter(0), &letter(0)).is_zero());
        // graded Jacobi on odd generators
        let (z1, z2, z3) = (letter(0), letter(1), letter(2));
        let j = lie.bracket(&z1, &lie.bracket(&z2, &z3))
            - lie.bracket(&lie.bracket(&z1, &z2), &z3)
            + lie.bracket(&z2, &lie.bracket(&z1, &z3));
        assert!(j.is_zero());
    }

    #[test]
    fn ln_of_odd_letter_is_lie_and_nonzero() {
        let lie = FreeLie::new(GenSet::odd(1));
        let z = letter(0);
        let l3 = lie.nfold_bracket_ln(&[z.clone(), z.clone(), z.clone()]).unwrap();
        assert_eq!(l3, lie.bracket(&z, &lie.bracket(&z, &z)));
        assert!(!l3.is_zero() || lie.lie_basis_component(3, 3).is_empty());
        assert!(lie.is_lie(&l3));
        assert_eq!(lie.nfold_bracket_ln(&[z.clone()]).unwrap(), z);
        assert!(lie.nfold_bracket_ln(&[]).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let lie = FreeLie::new(GenSet::odd(2));
        let z1 = lie.lie_basis_component(1, 1)[0];
        let z2 = lie.lie_basis_component(1, 1)[1];
        assert_eq!(lie.symmetrize(&LinComb::basis(SymWord(vec![z1]))), letter(0));
        assert_eq!(
            lie.symmetrize(&LinComb::basis(SymWord(vec![z1, z2]))),
            t(&[(&[0, 1], 1), (&[1, 0], -1)]).scaled(&q(1, 2))
        );
        assert_eq!(lie.symmetrize(&LinComb::basis(SymWord::one())), unit_tensor());
    }

    #[test]
    fn inverse_g_example() {
        let lie = FreeLie::new(GenSet::odd(2));
        let z = lie.lie_basis_component(1, 1);
        let g = lie.inverse_g(&t(&[(&[0, 1], 1)])).unwrap();
        let br = lie.coordinates(&lie.bracket(&letter(0), &letter(1))).unwrap();
        // z1⊗z2 = I(z1 z2) + 1/2 [z1,z2]
        let mut expected = SymElement::basis(SymWord(vec![z[0], z[1]]));
        for (id, c) in br.iter() {
            expected.add_term(SymWord(vec![*id]), c * q(1, 2));
        }
        assert_eq!(g, expected);
        assert_eq!(lie.symmetrize(&g), t(&[(&[0, 1], 1)]));
    }

    #[test]
    fn pbw_dimension_law() {
        for qn in 1..=2 {
            let lie = FreeLie::new(GenSet::odd(qn));
            for n in 1..=5 {
                let (s, tdim) = pbw_dimensions(&lie, n);
                assert_eq!(s, qn.pow(n as u32), "q={qn} n={n}");
                assert_eq!(tdim, s);
                let m = lie.symmetrization_matrix(n, n as u32).unwrap();
                assert_eq!(m.rank(), s);
            }
        }
    }

    #[test]
    fn omega_examples_and_nilpotency() {
        let lie = FreeLie::new(GenSet::odd(2));
        let ids = lie.lie_basis_up_to_len(2);
        let z = ids[0];
        let y = ids[1];
        let p = SymLiePair::basis((SymWord(vec![z]), y));
        let br = lie.coordinates(&lie.bracket(&letter(0), &letter(1))).unwrap();
        let expected: SymLiePair = br.iter().map(|(b, c)| ((SymWord::one(), *b), c.clone())).collect();
        assert_eq!(lie.omega(&p).unwrap(), expected);
        assert!(lie.omega(&SymLiePair::basis((SymWord::one(), y))).unwrap().is_zero());
        for u in FreeLie::sym_words_from(&ids, 3) {
            for &y in &ids {
                let mut cur = SymLiePair::basis((u.clone(), y));
                for _ in 0..=u.factors() {
                    cur = lie.omega(&cur).unwrap();
                }
                assert!(cur.is_zero());
            }
        }
    }

    #[test]
    fn mu_omega_is_ad() {
        for qn in 1..=2 {
            let lie = FreeLie::new(GenSet::odd(qn));
            let ids = lie.lie_basis_up_to_len(2);
            for u in FreeLie::sym_words_from(&ids, 3) {
                for &y in &ids {
                    let p = SymLiePair::basis((u.clone(), y));
                    assert_eq!(lie.mu(&lie.omega(&p).unwrap()), lie.ad_right(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn dexp_examples() {
        let lie = FreeLie::new(GenSet::odd(2));
        let ids = lie.lie_basis_up_to_len(1);
        let (z, y) = (ids[0], ids[1]);
        assert_eq!(
            lie.dexp_transform(&SymLiePair::basis((SymWord::one(), y))).unwrap(),
            SymElement::basis(SymWord(vec![y]))
        );
        let out = lie.dexp_transform(&SymLiePair::basis((SymWord(vec![z]), y))).unwrap();
        let mut expected = SymElement::basis(SymWord(vec![z, y]));
        for (b, c) in lie.coordinates(&lie.bracket(&letter(0), &letter(1))).unwrap().iter() {
            expected.add_term(SymWord(vec![*b]), c * q(1, 2));
        }
        assert_eq!(out, expected);
        assert_eq!(lie.symmetrize(&out), t(&[(&[0, 1], 1)]));
    }

    #[test]
    fn lazy_and_basis_routes_agree() {
        let lie = FreeLie::new(GenSet::odd(2));
        let ids = lie.lie_basis_up_to_len(2);
        for u in FreeLie::sym_words_from(&ids, 2) {
            for &y in &ids {
                let basis = lie.symmetrize(&lie.dexp_transform(&SymLiePair::basis((u.clone(), y))).unwrap());
                let lazy = lie.dexp_symmetrized(&LinComb::basis(u.clone()), &lie.lie_element(y));
                assert_eq!(basis, lazy, "{u:?} {y:?}");
            }
        }
    }

    #[test]
    fn dexp_square_one_generator() {
        let r = verify_theorem6(&GenSet::odd(1), 3, 3).finish();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn dexp_square_rejects_mixed_degrees() {
        let gens = GenSet::new([("a", 1), ("b", 2)]).unwrap();
        assert!(!verify_theorem6(&gens, 1, 1).finish().ok);
    }

    #[test]
    fn bracket_projection_small() {
        for n in 1..=4 {
            assert!(verify_prop14(&GenSet::odd(2), n).finish().ok);
        }
        let mixed = GenSet::new([("a", 1), ("b", 2)]).unwrap();
        assert!(verify_prop14(&mixed, 3).finish().ok);
    }

    #[test]
    fn lambda_pi_small() {
        let r = lambda_pi_identities(&GenSet::odd(1), LambdaPiBounds::default()).finish();
        assert!(r.ok, "{:?}", r.checks);
    }

    #[test]
    fn projector_image_is_bracket_span() {
        // the Lie basis and the span of right-nested brackets of words agree
        let lie = FreeLie::new(GenSet::odd(2));
        for n in 1..=4 {
            let basis = lie.lie_basis_component(n, n as u32);
            let e = special_element(SpecialElement::Dynkin { n }).unwrap();
            let mut ech = Echelon::new();
            let words = lie.words(n, n as u32);
            let index: BTreeMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            for (j, w) in words.iter().enumerate() {
                let img = act(&e, &LinComb::basis(w.clone()), |g| lie.gens().degree(*g)).unwrap();
                assert!(lie.is_lie(&img.scaled(&q(1, n as i64))));
                ech.insert(&sparse(&index, &img).unwrap(), j);
            }
            assert_eq!(ech.rank(), basis.len());
        }
    }

    proptest! {
        #[test]
        fn g_inverts_i(coeffs in proptest::collection::vec(-4i64..=4, 8)) {
            let lie = FreeLie::new(GenSet::odd(2));
            let words = lie.words(3, 3);
            let x: Tensor = words.iter().cloned().zip(coeffs.iter().map(|&c| qi(c))).collect();
            let g = lie.inverse_g(&x).unwrap();
            prop_assert_eq!(lie.symmetrize(&g), x);
        }

        #[test]
        fn brackets_are_lie(a in 0u32..2, b in 0u32..2, c in 0u32..2) {
            let lie = FreeLie::new(GenSet::odd(2));
            let x = lie.bracket(&letter(a), &lie.bracket(&letter(b), &letter(c)));
            prop_assert!(lie.is_lie(&x));
        }
    }
}
