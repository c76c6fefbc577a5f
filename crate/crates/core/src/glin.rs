//! Graded linear algebra over the rationals.
//!
//! Everything in the crate sits on top of three pieces from here: the Koszul
//! sign rule, sparse rational linear combinations keyed by ordered basis
//! labels, and an incremental row-echelon form used for rank computations,
//! coordinates and preimage search.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::symgrp::Permutation;

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Homological degree; only its parity enters the sign rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(pub u32);

impl Degree {
    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        Degree(self.0 + rhs.0)
    }
}

impl std::iter::Sum for Degree {
    fn sum<I: Iterator<Item = Degree>>(iter: I) -> Degree {
        iter.fold(Degree(0), |a, b| a + b)
    }
}

/// `(-1)^{ab}` as `true` when odd.
#[inline]
pub(crate) fn swap_is_odd(a: Degree, b: Degree) -> bool {
    a.is_odd() && b.is_odd()
}

/// Sign of rearranging letters of the given degrees by `sigma`, where the
/// rearranged word has the letter originally at `sigma(p)` in position `p`.
///
/// The permutation is decomposed into adjacent transpositions (bubble sort);
/// each swap of neighbours of degrees `a`, `b` contributes `(-1)^{ab}`.
pub fn koszul_sign(degrees: &[Degree], sigma: &Permutation) -> Result<i32> {
    if degrees.len() != sigma.len() {
        return Err(AlgebraError::LengthMismatch {
            expected: sigma.len(),
            got: degrees.len(),
        });
    }
    Ok(if koszul_odd(degrees, sigma.images()) { -1 } else { 1 })
}

pub(crate) fn koszul_odd(degrees: &[Degree], images: &[usize]) -> bool {
    let mut current: Vec<usize> = (0..images.len()).collect();
    let mut odd = false;
    for (target, &want) in images.iter().enumerate() {
        let mut at = current[target..]
            .iter()
            .position(|&x| x == want)
            .expect("images form a permutation")
            + target;
        while at > target {
            if swap_is_odd(degrees[current[at - 1]], degrees[current[at]]) {
                odd = !odd;
            }
            current.swap(at - 1, at);
            at -= 1;
        }
    }
    odd
}

/// A finite rational linear combination of basis keys.  Zero coefficients are
/// never stored, so structural equality is equality of elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Q::one())
    }

    pub fn term(key: K, coeff: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn add_term(&mut self, key: K, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Q) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &Q) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Linear extension of `f` defined on basis keys.
    pub fn map_linear<K2: Ord + Clone, F>(&self, mut f: F) -> LinComb<K2>
    where
        F: FnMut(&K) -> LinComb<K2>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Keep only terms satisfying the predicate.
    pub fn filter<F: FnMut(&K) -> bool>(&self, mut keep: F) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_abs_coeff(&self) -> Q {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> IntoIterator for LinComb<K> {
    type Item = (K, Q);
    type IntoIter = std::collections::btree_map::IntoIter<K, Q>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;
    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scaled(&-Q::one())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{k:?}")?;
        }
        Ok(())
    }
}

type SparseVec = BTreeMap<usize, Q>;

fn axpy(target: &mut SparseVec, factor: &Q, source: &SparseVec) {
    for (k, v) in source {
        let entry = target.entry(*k).or_insert_with(Q::zero);
        *entry += factor * v;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Incremental row-echelon form with provenance.  Every stored row is a
/// vector with leading entry 1 together with the combination of inserted
/// vectors that produced it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows.  Returns the residual and the
    /// provenance combination `c` with `v = residual + sum c_i * inserted_i`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut residual = v.clone();
        let mut used = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = residual
                .range(cursor..)
                .map(|(k, _)| *k)
                .find(|k| self.rows.contains_key(k));
            let Some(pivot) = next else { break };
            let factor = residual[&pivot].clone();
            let (row, combo) = &self.rows[&pivot];
            axpy(&mut residual, &-factor.clone(), row);
            axpy(&mut used, &factor, combo);
            cursor = pivot + 1;
        }
        (residual, used)
    }

    /// Insert `v` with provenance `tag`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec, tag: usize) -> bool {
        let (residual, used) = self.reduce(v);
        let Some((&pivot, lead)) = residual.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseVec = residual.iter().map(|(k, c)| (*k, c * &inv)).collect();
        // row = (v - sum used_i r_i) / lead, expressed in inserted vectors
        let mut combo = SparseVec::new();
        combo.insert(tag, inv.clone());
        axpy(&mut combo, &-inv, &used);
        self.rows.insert(pivot, (row, combo));
        true
    }
}

/// Matrix of a linear map between two enumerated finite components.
#[derive(Clone, Debug)]
pub struct LinearMapRep<D: Ord + Clone, C: Ord + Clone> {
    domain: Vec<D>,
    codomain: Vec<C>,
    codomain_index: BTreeMap<C, usize>,
    declared_codomain: bool,
    columns: Vec<SparseVec>,
    echelon: OnceLock<Echelon>,
}

impl<D: Ord + Clone, C: Ord + Clone> LinearMapRep<D, C> {
    /// Tabulate `f` on the domain basis.  With `codomain = None` the codomain
    /// basis is the sorted set of keys hit by the image.
    pub fn from_fn<F>(domain: Vec<D>, codomain: Option<Vec<C>>, mut f: F) -> Result<Self>
    where
        F: FnMut(&D) -> LinComb<C>,
    {
        let images: Vec<LinComb<C>> = domain.iter().map(&mut f).collect();
        let declared_codomain = codomain.is_some();
        let codomain = match codomain {
            Some(c) => c,
            None => {
                let mut keys: Vec<C> = images.iter().flat_map(|im| im.keys().cloned()).collect();
                keys.sort();
                keys.dedup();
                keys
            }
        };
        let codomain_index: BTreeMap<C, usize> = codomain
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let mut columns = Vec::with_capacity(images.len());
        for image in &images {
            let mut col = SparseVec::new();
            for (k, c) in image.iter() {
                let idx = *codomain_index.get(k).ok_or_else(|| {
                    AlgebraError::DimensionMismatch("image leaves the declared codomain".into())
                })?;
                col.insert(idx, c.clone());
            }
            columns.push(col);
        }
        Ok(LinearMapRep {
            domain,
            codomain,
            codomain_index,
            declared_codomain,
            columns,
            echelon: OnceLock::new(),
        })
    }

    pub fn domain(&self) -> &[D] {
        &self.domain
    }

    pub fn codomain(&self) -> &[C] {
        &self.codomain
    }

    pub fn entry(&self, row: usize, col: usize) -> Q {
        self.columns[col].get(&row).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, x: &LinComb<D>) -> Result<LinComb<C>> {
        let mut out = LinComb::zero();
        for (k, c) in x.iter() {
            let col = self
                .domain
                .binary_search(k)
                .ok()
                .or_else(|| self.domain.iter().position(|d| d == k))
                .ok_or_else(|| AlgebraError::DimensionMismatch("argument outside the domain".into()))?;
            for (row, v) in &self.columns[col] {
                out.add_term(self.codomain[*row].clone(), c * v);
            }
        }
        Ok(out)
    }

    fn echelon(&self) -> &Echelon {
        self.echelon.get_or_init(|| {
            let mut e = Echelon::new();
            for (j, col) in self.columns.iter().enumerate() {
                e.insert(col, j);
            }
            e
        })
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Exact preimage of `target` if one exists; the witness is checked by
    /// re-applying the map before it is returned.
    pub fn solve_in_image(&self, target: &LinComb<C>) -> Result<Option<LinComb<D>>> {
        let mut rhs = SparseVec::new();
        for (k, c) in target.iter() {
            match self.codomain_index.get(k) {
                Some(i) => {
                    rhs.insert(*i, c.clone());
                }
                None if self.declared_codomain => {
                    return Err(AlgebraError::DimensionMismatch(
                        "target outside the declared codomain".into(),
                    ))
                }
                None => return Ok(None),
            }
        }
        let (residual, used) = self.echelon().reduce(&rhs);
        if !residual.is_empty() {
            return Ok(None);
        }
        let witness: LinComb<D> = used
            .into_iter()
            .map(|(j, c)| (self.domain[j].clone(), c))
            .collect();
        if &self.apply(&witness)? != target {
            return Err(AlgebraError::Invariant("preimage failed re-verification".into()));
        }
        Ok(Some(witness))
    }
}

/// Describes a graded space whose homogeneous components can be listed.
#[derive(Clone, Debug)]
pub enum ComponentSchema {
    /// Tensor words over letters of the given degrees; component = total degree.
    TensorWords { letter_degrees: Vec<Degree> },
    /// Multisets of items (weight, odd); odd items occur at most once;
    /// component = total weight.  Models graded symmetric algebras.
    GradedMultisets { items: Vec<(u32, bool)> },
    /// Polyvector fields on affine space; component = wedge degree.
    Exterior { vars: usize },
    /// Polydifferential operators on affine space; component = number of slots.
    PolyDiff { vars: usize },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ComponentBounds {
    pub max_word_len: Option<usize>,
    pub max_order: Option<u32>,
    pub max_coeff_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    Word(Vec<u32>),
    Multiset(Vec<usize>),
    Wedge { dirs: Vec<usize>, coeff: Vec<u32> },
    PolyDiff { slots: Vec<Vec<u32>>, coeff: Vec<u32> },
}

/// All exponent vectors in `vars` variables with total degree `<= max`,
/// sorted.
pub fn monomials_up_to(vars: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=max {
        out.extend(monomials_of_degree(vars, d));
    }
    out.sort();
    out
}

pub fn monomials_of_degree(vars: usize, d: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in monomials_of_degree(vars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// List a component in canonical (sorted) order.
pub fn enumerate_component(
    schema: &ComponentSchema,
    degree: Degree,
    bounds: &ComponentBounds,
) -> Result<Vec<BasisKey>> {
    let mut out = match schema {
        ComponentSchema::TensorWords { letter_degrees } => {
            let has_zero = letter_degrees.iter().any(|d| d.0 == 0);
            let max_len = match (has_zero, bounds.max_word_len) {
                (_, Some(l)) => l,
                (false, None) => degree.0 as usize,
                (true, None) => return Err(AlgebraError::Unbounded("word length")),
            };
            let mut words = Vec::new();
            let mut stack: Vec<(Vec<u32>, u32)> = vec![(vec![], 0)];
            while let Some((w, d)) = stack.pop() {
                if d == degree.0 {
                    words.push(BasisKey::Word(w.clone()));
                }
                if w.len() == max_len {
                    continue;
                }
                for (i, ld) in letter_degrees.iter().enumerate() {
                    if d + ld.0 <= degree.0 {
                        let mut next = w.clone();
                        next.push(i as u32);
                        stack.push((next, d + ld.0));
                    }
                }
            }
            words
        }
        ComponentSchema::GradedMultisets { items } => {
            if items.iter().any(|(w, _)| *w == 0) {
                return Err(AlgebraError::Unbounded("multiset size (weight-0 items)"));
            }
            let mut sets = Vec::new();
            fn rec(
                items: &[(u32, bool)],
                start: usize,
                remaining: u32,
                cur: &mut Vec<usize>,
                out: &mut Vec<BasisKey>,
            ) {
                if remaining == 0 {
                    out.push(BasisKey::Multiset(cur.clone()));
                    return;
                }
                for i in start..items.len() {
                    let (w, odd) = items[i];
                    if w > remaining {
                        continue;
                    }
                    cur.push(i);
                    rec(items, if odd { i + 1 } else { i }, remaining - w, cur, out);
                    cur.pop();
                }
            }
            rec(items, 0, degree.0, &mut Vec::new(), &mut sets);
            sets
        }
        ComponentSchema::Exterior { vars } => {
            let max_c = bounds
                .max_coeff_degree
                .ok_or(AlgebraError::Unbounded("coefficient degree"))?;
            let k = degree.0 as usize;
            let mut out = Vec::new();
            for dirs in increasing_tuples(*vars, k) {
                for coeff in monomials_up_to(*vars, max_c) {
                    out.push(BasisKey::Wedge {
                        dirs: dirs.clone(),
                        coeff,
                    });
                }
            }
            out
        }
        ComponentSchema::PolyDiff { vars } => {
            let max_o = bounds.max_order.ok_or(AlgebraError::Unbounded("operator order"))?;
            let max_c = bounds
                .max_coeff_degree
                .ok_or(AlgebraError::Unbounded("coefficient degree"))?;
            let n = degree.0 as usize;
            let indices = monomials_up_to(*vars, max_o);
            let mut slot_tuples: Vec<Vec<Vec<u32>>> = vec![vec![]];
            for _ in 0..n {
                let mut next = Vec::new();
                for t in &slot_tuples {
                    for i in &indices {
                        let total: u32 = t.iter().flatten().sum::<u32>() + i.iter().sum::<u32>();
                        if total <= max_o {
                            let mut t2 = t.clone();
                            t2.push(i.clone());
                            next.push(t2);
                        }
                    }
                }
                slot_tuples = next;
            }
            let mut out = Vec::new();
            for slots in slot_tuples {
                for coeff in monomials_up_to(*vars, max_c) {
                    out.push(BasisKey::PolyDiff {
                        slots: slots.clone(),
                        coeff,
                    });
                }
            }
            out
        }
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// Strictly increasing `k`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, i| acc * qi(i))
}

pub fn binomial(n: u32, k: u32) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * qi((n - i) as i64) / qi((i + 1) as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn degs(ds: &[u32]) -> Vec<Degree> {
        ds.iter().map(|&d| Degree(d)).collect()
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&degs(&[1, 1]), &perm(&[1, 0])).unwrap(), -1);
        assert_eq!(koszul_sign(&degs(&[1, 2]), &perm(&[1, 0])).unwrap(), 1);
        assert_eq!(koszul_sign(&degs(&[3, 5, 7]), &Permutation::identity(3)).unwrap(), 1);
        assert!(matches!(
            koszul_sign(&degs(&[1]), &perm(&[1, 0])),
            Err(AlgebraError::LengthMismatch { .. })
        ));
    }

    // Oracle: count inverted pairs of odd letters directly.
    fn inversion_sign(degrees: &[Degree], images: &[usize]) -> i32 {
        let mut odd = false;
        for p in 0..images.len() {
            for r in p + 1..images.len() {
                if images[p] > images[r] && swap_is_odd(degrees[images[p]], degrees[images[r]]) {
                    odd = !odd;
                }
            }
        }
        if odd {
            -1
        } else {
            1
        }
    }

    #[test]
    fn koszul_matches_inversion_count_on_s4() {
        let profiles: Vec<Vec<Degree>> = (0..81u32)
            .map(|mut c| {
                (0..4)
                    .map(|_| {
                        let d = c % 3 + 1;
                        c /= 3;
                        Degree(d)
                    })
                    .collect()
            })
            .collect();
        for p in Permutation::all(4) {
            for d in &profiles {
                assert_eq!(koszul_sign(d, &p).unwrap(), inversion_sign(d, p.images()));
            }
        }
    }

    #[test]
    fn lincomb_drops_zeros() {
        let mut a = LinComb::basis(1u32);
        a.add_term(1, -Q::one());
        assert!(a.is_zero());
        let b = LinComb::term(2u32, q(1, 2)) + LinComb::term(2u32, q(1, 2));
        assert_eq!(b.coeff(&2), Q::one());
    }

    #[test]
    fn solve_zero_map() {
        let map = LinearMapRep::<u32, u32>::from_fn(vec![0, 1], Some(vec![0]), |_| LinComb::zero()).unwrap();
        assert_eq!(map.solve_in_image(&LinComb::zero()).unwrap(), Some(LinComb::zero()));
        assert_eq!(map.solve_in_image(&LinComb::basis(0)).unwrap(), None);
        assert!(map.solve_in_image(&LinComb::basis(7)).is_err());
    }

    #[test]
    fn solve_finds_preimage() {
        // x -> (x0 + x1, x1 + x2), e2 direction
        let map = LinearMapRep::<u32, u32>::from_fn(vec![0, 1, 2], None, |&j| match j {
            0 => LinComb::basis(10),
            1 => LinComb::basis(10) + LinComb::basis(11),
            _ => LinComb::basis(11),
        })
        .unwrap();
        assert_eq!(map.rank(), 2);
        let target = LinComb::term(10, qi(3)) + LinComb::term(11, qi(-2));
        let w = map.solve_in_image(&target).unwrap().unwrap();
        assert_eq!(map.apply(&w).unwrap(), target);
    }

    #[test]
    fn enumerate_examples() {
        let t = enumerate_component(
            &ComponentSchema::TensorWords {
                letter_degrees: degs(&[1, 1]),
            },
            Degree(3),
            &ComponentBounds::default(),
        )
        .unwrap();
        assert_eq!(t.len(), 8);
        // Sym(L(V)), V = two odd generators: L_1 has two odd items, L_2 three even ones
        let s = enumerate_component(
            &ComponentSchema::GradedMultisets {
                items: vec![(1, true), (1, true), (2, false), (2, false), (2, false)],
            },
            Degree(2),
            &ComponentBounds::default(),
        )
        .unwrap();
        assert_eq!(s.len(), 4);
        let w = enumerate_component(
            &ComponentSchema::Exterior { vars: 2 },
            Degree(2),
            &ComponentBounds {
                max_coeff_degree: Some(0),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(w.len(), 1);
        assert!(matches!(
            enumerate_component(&ComponentSchema::PolyDiff { vars: 1 }, Degree(1), &ComponentBounds::default()),
            Err(AlgebraError::Unbounded(_))
        ));
    }

    #[test]
    fn enumeration_is_stable() {
        let schema = ComponentSchema::PolyDiff { vars: 2 };
        let bounds = ComponentBounds {
            max_order: Some(2),
            max_coeff_degree: Some(1),
            ..Default::default()
        };
        let a = enumerate_component(&schema, Degree(2), &bounds).unwrap();
        let b = enumerate_component(&schema, Degree(2), &bounds).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), qi(6));
        assert_eq!(binomial(2, 3), Q::zero());
        assert_eq!(factorial(5), qi(120));
    }
}
