//! Polydifferential operators with polynomial coefficients on affine
//! `m`-space.
//!
//! An operator is a finite sum of terms `c * x^a * ∂_{I_1}⊗...⊗∂_{I_n}`.  The
//! coefficient multiplies the whole product, so the operator sends
//! `(f_1, ..., f_n)` to `c x^a ∂_{I_1}f_1 ... ∂_{I_n}f_n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::freelie::Tensor;
use crate::glin::{binomial, koszul_odd, qi, Degree, LinComb, LinearMapRep, Q};
use crate::report::{Outcome, VerificationReport};
use crate::symgrp::{act, special_element, SpecialElement};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(m: usize) -> Self {
        MultiIndex(vec![0; m])
    }

    /// `e_i` for a 1-based direction `i`.
    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i - 1] = 1;
        MultiIndex(v)
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }

    /// All `J` with `0 <= J <= self` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u32>| {
                    (0..=bound).map(move |j| {
                        let mut q = p.clone();
                        q.push(j);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }

    /// `prod_t binom(I_t, J_t)`.
    pub fn binom(&self, j: &MultiIndex) -> Q {
        self.0
            .iter()
            .zip(&j.0)
            .fold(Q::one(), |acc, (&i, &jj)| acc * binomial(i, jj))
    }

    /// All multi-indices in `m` variables of order exactly `r`.
    pub fn of_order(m: usize, r: u32) -> Vec<MultiIndex> {
        crate::glin::monomials_of_degree(m, r)
            .into_iter()
            .map(MultiIndex)
            .collect()
    }

    pub fn up_to_order(m: usize, r: u32) -> Vec<MultiIndex> {
        crate::glin::monomials_up_to(m, r)
            .into_iter()
            .map(MultiIndex)
            .collect()
    }

    fn fmt_monomial(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `∂^I x^a = (prod a_t!/(a_t-I_t)!) x^{a-I}`, or `None` when it vanishes.
fn differentiate_monomial(a: &MultiIndex, i: &MultiIndex) -> Option<(Q, MultiIndex)> {
    let rest = a.checked_sub(i)?;
    let mut c = Q::one();
    for (&at, &it) in a.0.iter().zip(&i.0) {
        for s in 0..it {
            c *= qi((at - s) as i64);
        }
    }
    Some((c, rest))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: LinComb<MultiIndex>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(MultiIndex::zero(m), Q::one())
    }

    pub fn constant(m: usize, c: Q) -> Self {
        Self::monomial(MultiIndex::zero(m), c)
    }

    pub fn monomial(exp: MultiIndex, c: Q) -> Self {
        Polynomial {
            terms: LinComb::term(exp, c),
        }
    }

    /// The coordinate `x_i`, 1-based.
    pub fn var(m: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(m, i), Q::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, Q)>) -> Self {
        Polynomial {
            terms: terms.into_iter().collect(),
        }
    }

    pub fn terms(&self) -> &LinComb<MultiIndex> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.order()).max()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        Polynomial {
            terms: self.terms.clone() + other.terms.clone(),
        }
    }

    pub fn scaled(&self, c: &Q) -> Polynomial {
        Polynomial {
            terms: self.terms.scaled(c),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = LinComb::zero();
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Polynomial { terms: out }
    }

    pub fn derivative(&self, i: &MultiIndex) -> Polynomial {
        let mut out = LinComb::zero();
        for (a, c) in self.terms.iter() {
            if let Some((f, rest)) = differentiate_monomial(a, i) {
                out.add_term(rest, c * f);
            }
        }
        Polynomial { terms: out }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*")?;
            e.fmt_monomial(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One basis term: slots `∂_{I_1}⊗...⊗∂_{I_n}` times the monomial `x^coeff`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OpKey {
    pub slots: Vec<MultiIndex>,
    pub coeff: MultiIndex,
}

impl OpKey {
    pub fn new(slots: Vec<MultiIndex>, coeff: MultiIndex) -> Self {
        OpKey { slots, coeff }
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn total_order(&self) -> u32 {
        self.slots.iter().map(|s| s.order()).sum()
    }

    /// Product: concatenate slots, multiply coefficients.
    pub fn concat(&self, other: &OpKey) -> OpKey {
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        OpKey {
            slots,
            coeff: self.coeff.add(&other.coeff),
        }
    }

    fn bare(&self) -> OpKey {
        OpKey {
            slots: self.slots.clone(),
            coeff: MultiIndex::zero(self.coeff.m()),
        }
    }
}

impl Ord for OpKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.slots
            .len()
            .cmp(&other.slots.len())
            .then_with(|| self.slots.cmp(&other.slots))
            .then_with(|| self.coeff.cmp(&other.coeff))
    }
}

impl PartialOrd for OpKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for OpKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coeff.fmt_monomial(f)?;
        write!(f, " * ")?;
        if self.slots.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            let parts: Vec<String> = s.0.iter().map(|e| e.to_string()).collect();
            write!(f, "d[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyDiffOp {
    m: usize,
    terms: LinComb<OpKey>,
}

pub type OpPair = LinComb<(OpKey, OpKey)>;

impl PolyDiffOp {
    pub fn zero(m: usize) -> Self {
        PolyDiffOp {
            m,
            terms: LinComb::zero(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(&Polynomial::one(m), m)
    }

    /// Degree-0 operator: a function.
    pub fn scalar(g: &Polynomial, m: usize) -> Self {
        Self::with_slots(m, vec![], g)
    }

    pub fn with_slots(m: usize, slots: Vec<MultiIndex>, coeff: &Polynomial) -> Self {
        let mut out = Self::zero(m);
        for (e, c) in coeff.terms().iter() {
            out.terms.add_term(OpKey::new(slots.clone(), e.clone()), c.clone());
        }
        out
    }

    /// `∂_I` with coefficient 1.
    pub fn d_index(i: MultiIndex) -> Self {
        let m = i.m();
        Self::with_slots(m, vec![i], &Polynomial::one(m))
    }

    /// `∂_i`, 1-based direction.
    pub fn partial(m: usize, i: usize) -> Self {
        Self::d_index(MultiIndex::unit(m, i))
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (OpKey, Q)>) -> Result<Self> {
        let mut out = Self::zero(m);
        for (k, c) in terms {
            if k.coeff.m() != m || k.slots.iter().any(|s| s.m() != m) {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "term {k:?} is not in {m} variables"
                )));
            }
            out.terms.add_term(k, c);
        }
        Ok(out)
    }

    fn from_lincomb(m: usize, terms: LinComb<OpKey>) -> Self {
        PolyDiffOp { m, terms }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &LinComb<OpKey> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Arity when all terms share one; `None` for zero or mixed operators.
    pub fn arity(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.arity());
        let first = it.next()?;
        it.all(|a| a == first).then_some(first)
    }

    pub fn max_arity(&self) -> usize {
        self.terms.keys().map(|k| k.arity()).max().unwrap_or(0)
    }

    pub fn part_of_arity(&self, n: usize) -> PolyDiffOp {
        Self::from_lincomb(self.m, self.terms.filter(|k| k.arity() == n))
    }

    pub fn add(&self, other: &PolyDiffOp) -> PolyDiffOp {
        Self::from_lincomb(self.m, self.terms.clone() + other.terms.clone())
    }

    pub fn sub(&self, other: &PolyDiffOp) -> PolyDiffOp {
        Self::from_lincomb(self.m, self.terms.clone() - other.terms.clone())
    }

    pub fn scaled(&self, c: &Q) -> PolyDiffOp {
        Self::from_lincomb(self.m, self.terms.scaled(c))
    }

    pub fn neg(&self) -> PolyDiffOp {
        self.scaled(&-Q::one())
    }

    /// Multiply the coefficient by a function.
    pub fn mul_poly(&self, g: &Polynomial) -> PolyDiffOp {
        let mut out = LinComb::zero();
        for (k, c) in self.terms.iter() {
            for (e, ce) in g.terms().iter() {
                out.add_term(
                    OpKey::new(k.slots.clone(), k.coeff.add(e)),
                    c * ce,
                );
            }
        }
        Self::from_lincomb(self.m, out)
    }

    /// Canonical text encoding, e.g. `1/2 * x1^2*x2 * d[1,0]⊗d[0,1]`.
    pub fn encode(&self) -> String {
        format!("{self:?}")
    }
}

impl fmt::Debug for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} * {k:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

pub fn evaluate(op: &PolyDiffOp, args: &[Polynomial]) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (k, c) in op.terms.iter() {
        if k.arity() != args.len() {
            return Err(AlgebraError::SlotMismatch {
                expected: args.len(),
                got: k.arity(),
            });
        }
        let mut value = Polynomial::monomial(k.coeff.clone(), c.clone());
        for (slot, arg) in k.slots.iter().zip(args) {
            value = value.mul(&arg.derivative(slot));
            if value.is_zero() {
                break;
            }
        }
        out = out.add(&value);
    }
    Ok(out)
}

pub fn multiply_m(a: &PolyDiffOp, b: &PolyDiffOp) -> PolyDiffOp {
    let mut out = LinComb::zero();
    for (ka, ca) in a.terms.iter() {
        for (kb, cb) in b.terms.iter() {
            out.add_term(ka.concat(kb), ca * cb);
        }
    }
    PolyDiffOp::from_lincomb(a.m, out)
}

fn d_key(k: &OpKey, out: &mut LinComb<OpKey>, c: &Q) {
    let n = k.arity();
    let zero = MultiIndex::zero(k.coeff.m());
    let mut front = vec![zero.clone()];
    front.extend_from_slice(&k.slots);
    out.add_term(OpKey::new(front, k.coeff.clone()), c.clone());
    for i in 0..n {
        let s = sign(i % 2 == 0) * c; // (-1)^{i+1} with 0-based i
        let ii = &k.slots[i];
        for j in ii.sub_indices() {
            let rest = ii.checked_sub(&j).expect("J <= I");
            let mut slots = Vec::with_capacity(n + 1);
            slots.extend_from_slice(&k.slots[..i]);
            slots.push(j.clone());
            slots.push(rest);
            slots.extend_from_slice(&k.slots[i + 1..]);
            out.add_term(OpKey::new(slots, k.coeff.clone()), &s * ii.binom(&j));
        }
    }
    let mut back = k.slots.clone();
    back.push(zero);
    out.add_term(OpKey::new(back, k.coeff.clone()), sign(n % 2 == 0) * c);
}

/// The Hochschild coboundary, expanded with the Leibniz rule.
pub fn hochschild_d(op: &PolyDiffOp) -> PolyDiffOp {
    let mut out = LinComb::zero();
    for (k, c) in op.terms.iter() {
        d_key(k, &mut out, c);
    }
    PolyDiffOp::from_lincomb(op.m, out)
}

/// The right-hand side of the defining formula for `(d f)(a_0, ..., a_n)`.
pub fn hochschild_d_pointwise(op: &PolyDiffOp, args: &[Polynomial]) -> Result<Polynomial> {
    let n = args
        .len()
        .checked_sub(1)
        .ok_or(AlgebraError::SlotMismatch { expected: 1, got: 0 })?;
    let mut total = args[0].mul(&evaluate(op, &args[1..])?);
    for i in 0..n {
        let mut merged: Vec<Polynomial> = args[..i].to_vec();
        merged.push(args[i].mul(&args[i + 1]));
        merged.extend_from_slice(&args[i + 2..]);
        let v = evaluate(op, &merged)?;
        total = total.add(&v.scaled(&sign(i % 2 == 0)));
    }
    let last = evaluate(op, &args[..n])?.mul(&args[n]);
    Ok(total.add(&last.scaled(&sign(n % 2 == 0))))
}

fn monomial_tuples(m: usize, deg: u32, len: usize, cap: usize) -> Vec<Vec<Polynomial>> {
    let monos: Vec<Polynomial> = MultiIndex::up_to_order(m, deg)
        .into_iter()
        .map(|e| Polynomial::monomial(e, Q::one()))
        .collect();
    let total = monos.len().checked_pow(len as u32).unwrap_or(usize::MAX);
    let stride = total.div_ceil(cap).max(1);
    let mut out = Vec::new();
    let mut idx = 0usize;
    while idx < total {
        let mut rem = idx;
        let tuple = (0..len)
            .map(|_| {
                let t = monos[rem % monos.len()].clone();
                rem /= monos.len();
                t
            })
            .collect();
        out.push(tuple);
        idx += stride;
    }
    out
}

/// Largest number of argument tuples the pointwise comparison visits; beyond
/// it an evenly strided subset is used.
pub const ORACLE_TUPLE_CAP: usize = 4096;

/// Compares `hochschild_d` against the pointwise formula on monomial
/// arguments of degree at most `sample_deg`.
pub fn hochschild_d_oracle_check(op: &PolyDiffOp, sample_deg: u32) -> VerificationReport {
    let mut report = VerificationReport::new("hochschild");
    report.run("hochschild/oracle", || oracle_outcome(op, sample_deg));
    report
}

fn oracle_outcome(op: &PolyDiffOp, sample_deg: u32) -> Outcome {
    let d = hochschild_d(op);
    let mut checked = 0usize;
    for n in 0..=op.max_arity() {
        let part = op.part_of_arity(n);
        if part.is_zero() {
            continue;
        }
        let dpart = d.part_of_arity(n + 1);
        for args in monomial_tuples(op.m, sample_deg, n + 1, ORACLE_TUPLE_CAP) {
            let lhs = evaluate(&dpart, &args);
            let rhs = hochschild_d_pointwise(&part, &args);
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => checked += 1,
                (l, r) => {
                    return Outcome::fail(format!("mismatch at {args:?}: {l:?} vs {r:?}"));
                }
            }
        }
    }
    Outcome::pass(format!("{checked} argument tuples"))
}

/// Signed unshuffles: every split of the slots into an ordered left part and
/// right part.  The coefficient stays with the left factor.
pub fn coproduct_delta(op: &PolyDiffOp) -> OpPair {
    let mut out = OpPair::zero();
    for (k, c) in op.terms.iter() {
        for (odd, parts) in unshuffles(&k.slots, 2) {
            let mut parts = parts.into_iter();
            let left = OpKey::new(parts.next().expect("two parts"), k.coeff.clone());
            let right = OpKey::new(parts.next().expect("two parts"), MultiIndex::zero(op.m));
            out.add_term((left, right), if odd { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// All assignments of slots to `p` ordered blocks, with the parity of the
/// sign of the rearrangement (slots have degree 1).
fn unshuffles(slots: &[MultiIndex], p: usize) -> Vec<(bool, Vec<Vec<MultiIndex>>)> {
    let n = slots.len();
    let total = p.pow(n as u32);
    let ones = vec![Degree(1); n];
    (0..total)
        .map(|mut code| {
            let mut assign = Vec::with_capacity(n);
            for _ in 0..n {
                assign.push(code % p);
                code /= p;
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| assign[i]);
            let odd = koszul_odd(&ones, &order);
            let mut blocks = vec![Vec::new(); p];
            for &i in &order {
                blocks[assign[i]].push(slots[i].clone());
            }
            (odd, blocks)
        })
        .collect()
}

/// The counit: the degree-0 part as a function.
pub fn counit(op: &PolyDiffOp) -> Polynomial {
    Polynomial::from_terms(
        op.terms
            .iter()
            .filter(|(k, _)| k.arity() == 0)
            .map(|(k, c)| (k.coeff.clone(), c.clone())),
    )
}

/// Graded commutator of the concatenation product.
pub fn bracket_d(a: &PolyDiffOp, b: &PolyDiffOp) -> PolyDiffOp {
    let mut out = LinComb::zero();
    for (ka, ca) in a.terms.iter() {
        for (kb, cb) in b.terms.iter() {
            let c = ca * cb;
            out.add_term(ka.concat(kb), c.clone());
            let odd = ka.arity() % 2 == 1 && kb.arity() % 2 == 1;
            out.add_term(kb.concat(ka), if odd { c } else { -c });
        }
    }
    PolyDiffOp::from_lincomb(a.m, out)
}

/// Post-composition with `∂_Y` (1-based direction).
pub fn connection_nabla(y: usize, op: &PolyDiffOp) -> Result<PolyDiffOp> {
    if y == 0 || y > op.m {
        return Err(AlgebraError::OutOfRange(format!(
            "direction {y} in {} variables",
            op.m
        )));
    }
    let ey = MultiIndex::unit(op.m, y);
    let mut out = LinComb::zero();
    for (k, c) in op.terms.iter() {
        if let Some((f, rest)) = differentiate_monomial(&k.coeff, &ey) {
            out.add_term(OpKey::new(k.slots.clone(), rest), c * f);
        }
        for j in 0..k.arity() {
            let mut slots = k.slots.clone();
            slots[j] = slots[j].add(&ey);
            out.add_term(OpKey::new(slots, k.coeff.clone()), c.clone());
        }
    }
    Ok(PolyDiffOp::from_lincomb(op.m, out))
}

/// `Δ^p`: the `p`-fold iterated coproduct, as ordered `p`-tuples of keys
/// (the coefficient on the first).
pub fn iterated_coproduct(p: usize, op: &PolyDiffOp) -> Result<LinComb<Vec<OpKey>>> {
    if p == 0 {
        return Err(AlgebraError::OutOfRange("p must be at least 1".into()));
    }
    let mut acc: LinComb<Vec<OpKey>> = op.terms.iter().map(|(k, c)| (vec![k.clone()], c.clone())).collect();
    for _ in 1..p {
        let mut next = LinComb::zero();
        for (keys, c) in acc.iter() {
            let (last, init) = keys.split_last().expect("non-empty");
            let single = PolyDiffOp::from_lincomb(op.m, LinComb::basis(last.clone()));
            for ((l, r), cl) in coproduct_delta(&single).iter() {
                let mut v = init.to_vec();
                v.push(l.clone());
                v.push(r.clone());
                next.add_term(v, c * cl);
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// The Adams operation `ψ^p = m_p ∘ Δ^p`.
pub fn adams_psi(p: usize, op: &PolyDiffOp) -> Result<PolyDiffOp> {
    let parts = iterated_coproduct(p, op)?;
    let mut out = LinComb::zero();
    for (keys, c) in parts.iter() {
        let mut k = keys[0].clone();
        for other in &keys[1..] {
            k = k.concat(other);
        }
        out.add_term(k, c.clone());
    }
    Ok(PolyDiffOp::from_lincomb(op.m, out))
}

/// Membership in `L(D^1) = L(V) ⊗ O`: for each coefficient monomial and
/// arity `n`, the slot tensor must be fixed by `(1/n) e_n`.
pub fn lie_membership_ld1(op: &PolyDiffOp) -> bool {
    let mut parts: BTreeMap<(MultiIndex, usize), LinComb<Vec<MultiIndex>>> = BTreeMap::new();
    for (k, c) in op.terms.iter() {
        parts
            .entry((k.coeff.clone(), k.arity()))
            .or_default()
            .add_term(k.slots.clone(), c.clone());
    }
    parts.into_iter().all(|((_, n), t)| {
        if n == 0 {
            return t.is_zero();
        }
        match special_element(SpecialElement::Dynkin { n }) {
            Ok(e) => {
                let p = e.scaled(&Q::new(1.into(), (n as i64).into()));
                act(&p, &t, |_| Degree(1)).map(|x| x == t).unwrap_or(false)
            }
            Err(_) => false,
        }
    })
}

/// Embeds `T(V) ⊗ O` into polydifferential operators by sending generator
/// `g` to the slot `∂_{indices[g]}`.
#[derive(Clone, Debug)]
pub struct OperatorAlphabet {
    m: usize,
    indices: Vec<MultiIndex>,
}

impl OperatorAlphabet {
    pub fn new(m: usize, indices: Vec<MultiIndex>) -> Result<Self> {
        if indices.iter().any(|i| i.m() != m) {
            return Err(AlgebraError::DimensionMismatch("multi-index length".into()));
        }
        Ok(OperatorAlphabet { m, indices })
    }

    /// `∂_0, ∂_1, ..., ∂_m`: all multi-indices of order at most one.
    pub fn first_order(m: usize) -> Self {
        let mut indices = vec![MultiIndex::zero(m)];
        indices.extend((1..=m).map(|i| MultiIndex::unit(m, i)));
        OperatorAlphabet { m, indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn index(&self, g: u32) -> &MultiIndex {
        &self.indices[g as usize]
    }

    pub fn embed(&self, t: &Tensor, coeff: &Polynomial) -> PolyDiffOp {
        let mut out = PolyDiffOp::zero(self.m);
        for (w, c) in t.iter() {
            let slots = w.iter().map(|&g| self.indices[g as usize].clone()).collect();
            out = out.add(&PolyDiffOp::with_slots(self.m, slots, coeff).scaled(c));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleBounds {
    pub m: usize,
    pub max_arity: usize,
    pub max_order: u32,
    pub max_coeff_deg: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            m: 2,
            max_arity: 3,
            max_order: 4,
            max_coeff_deg: 2,
            samples: 50,
            seed: 0x5eed,
        }
    }
}

pub fn random_polynomial<R: Rng>(rng: &mut R, m: usize, max_deg: u32, terms: usize) -> Polynomial {
    let monos = MultiIndex::up_to_order(m, max_deg);
    Polynomial::from_terms((0..terms).map(|_| {
        let e = monos[rng.gen_range(0..monos.len())].clone();
        (e, qi(rng.gen_range(-3..=3)))
    }))
}

/// A random operator of the given arity with total slot order at most
/// `max_order`.
pub fn random_op<R: Rng>(
    rng: &mut R,
    m: usize,
    arity: usize,
    max_order: u32,
    max_coeff_deg: u32,
    terms: usize,
) -> PolyDiffOp {
    let mut out = PolyDiffOp::zero(m);
    for _ in 0..terms {
        let mut budget = if max_order == 0 { 0 } else { rng.gen_range(0..=max_order) };
        let mut slots = Vec::with_capacity(arity);
        for _ in 0..arity {
            let mut idx = vec![0u32; m];
            let take = if budget == 0 { 0 } else { rng.gen_range(0..=budget) };
            for _ in 0..take {
                idx[rng.gen_range(0..m)] += 1;
            }
            budget -= take;
            slots.push(MultiIndex(idx));
        }
        let coeff = random_polynomial(rng, m, max_coeff_deg, 2);
        out = out.add(&PolyDiffOp::with_slots(m, slots, &coeff));
    }
    out
}

/// A random element of `L(D^1)`: a combination of nested brackets of
/// first-order operators with polynomial coefficients.
pub fn random_lie_element<R: Rng>(rng: &mut R, m: usize, arity: usize, max_coeff_deg: u32) -> PolyDiffOp {
    let gen = |rng: &mut R| {
        let i = rng.gen_range(1..=m);
        let coeff = random_polynomial(rng, m, max_coeff_deg, 2);
        PolyDiffOp::partial(m, i).mul_poly(&coeff)
    };
    let mut total = PolyDiffOp::zero(m);
    for _ in 0..2 {
        let mut d = gen(rng);
        for _ in 1..arity {
            d = bracket_d(&gen(rng), &d);
        }
        total = total.add(&d.scaled(&qi(rng.gen_range(1..=3))));
    }
    total
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn key_pair_mul(a: &(OpKey, OpKey), b: &(OpKey, OpKey)) -> (bool, (OpKey, OpKey)) {
    // (a1⊗a2)(b1⊗b2) = ± a1b1 ⊗ a2b2, sign from moving b1 past a2
    let odd = a.1.arity() % 2 == 1 && b.0.arity() % 2 == 1;
    (odd, (a.0.concat(&b.0), a.1.concat(&b.1)))
}

fn pair_apply_left(p: &OpPair, m: usize, f: impl Fn(&PolyDiffOp) -> PolyDiffOp) -> OpPair {
    let mut out = OpPair::zero();
    for ((l, r), c) in p.iter() {
        let img = f(&PolyDiffOp::from_lincomb(m, LinComb::basis(l.clone())));
        for (k, ck) in img.terms.iter() {
            out.add_term((k.clone(), r.clone()), c * ck);
        }
    }
    out
}

fn pair_apply_right(p: &OpPair, m: usize, odd_left: bool, f: impl Fn(&PolyDiffOp) -> PolyDiffOp) -> OpPair {
    let mut out = OpPair::zero();
    for ((l, r), c) in p.iter() {
        let img = f(&PolyDiffOp::from_lincomb(m, LinComb::basis(r.clone())));
        let s = odd_left && l.arity() % 2 == 1;
        for (k, ck) in img.terms.iter() {
            // right factors carry no coefficient; move any onto the left
            let left = OpKey::new(l.slots.clone(), l.coeff.add(&k.coeff));
            let v = c * ck;
            out.add_term((left, k.bare()), if s { -v } else { v });
        }
    }
    out
}

/// Leibniz rule, Hopf axioms and compatibility of `d` with `Δ` on seeded
/// random operators.
pub fn verify_prop2_hopf(bounds: SampleBounds) -> VerificationReport {
    let mut report = VerificationReport::new("hopf");
    let m = bounds.m;
    let samples: Vec<(PolyDiffOp, PolyDiffOp, PolyDiffOp)> = (0..bounds.samples)
        .map(|s| {
            let mut rng = rng_for(bounds.seed, s as u64);
            let pick = |rng: &mut ChaCha8Rng| {
                let n = rng.gen_range(0..=bounds.max_arity);
                random_op(rng, m, n, bounds.max_order, bounds.max_coeff_deg, 2)
            };
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let c = pick(&mut rng);
            (a, b, c)
        })
        .collect();

    report.run("hopf/leibniz", || {
        let bad = samples
            .par_iter()
            .filter(|(a, b, _)| {
                let n = a.arity().unwrap_or(0);
                let lhs = hochschild_d(&multiply_m(a, b));
                let rhs = multiply_m(&hochschild_d(a), b)
                    .add(&multiply_m(a, &hochschild_d(b)).scaled(&sign(n % 2 == 1)));
                lhs != rhs
            })
            .count();
        Outcome::check(bad == 0, format!("{} samples, {bad} failures", samples.len()))
    });

    report.run("hopf/delta-algebra-map", || {
        let bad = samples
            .par_iter()
            .filter(|(a, b, _)| {
                let lhs = coproduct_delta(&multiply_m(a, b));
                let (da, db) = (coproduct_delta(a), coproduct_delta(b));
                let mut rhs = OpPair::zero();
                for (ka, ca) in da.iter() {
                    for (kb, cb) in db.iter() {
                        let (odd, k) = key_pair_mul(ka, kb);
                        let v = ca * cb;
                        rhs.add_term(k, if odd { -v } else { v });
                    }
                }
                lhs != rhs
            })
            .count();
        Outcome::check(bad == 0, format!("{} samples, {bad} failures", samples.len()))
    });

    report.run("hopf/coassociativity", || {
        let bad = samples
            .par_iter()
            .filter(|(a, _, _)| {
                let d = coproduct_delta(a);
                let mut left = LinComb::<(OpKey, OpKey, OpKey)>::zero();
                let mut right = LinComb::<(OpKey, OpKey, OpKey)>::zero();
                for ((l, r), c) in d.iter() {
                    let dl = coproduct_delta(&PolyDiffOp::from_lincomb(m, LinComb::basis(l.clone())));
                    for ((l1, l2), c1) in dl.iter() {
                        left.add_term((l1.clone(), l2.clone(), r.clone()), c * c1);
                    }
                    let dr = coproduct_delta(&PolyDiffOp::from_lincomb(m, LinComb::basis(r.clone())));
                    for ((r1, r2), c2) in dr.iter() {
                        let l = OpKey::new(l.slots.clone(), l.coeff.add(&r1.coeff));
                        right.add_term((l, r1.bare(), r2.clone()), c * c2);
                    }
                }
                left != right
            })
            .count();
        Outcome::check(bad == 0, format!("{} samples, {bad} failures", samples.len()))
    });

    report.run("hopf/counit-unit", || {
        let one = PolyDiffOp::one(m);
        let unit_ok = coproduct_delta(&one)
            == OpPair::basis((OpKey::new(vec![], MultiIndex::zero(m)), OpKey::new(vec![], MultiIndex::zero(m))))
            && counit(&one) == Polynomial::one(m);
        let bad = samples
            .par_iter()
            .filter(|(a, b, _)| {
                let d = coproduct_delta(a);
                let mut left = PolyDiffOp::zero(m);
                let mut right = PolyDiffOp::zero(m);
                for ((l, r), c) in d.iter() {
                    let lop = PolyDiffOp::from_lincomb(m, LinComb::term(l.clone(), c.clone()));
                    let rop = PolyDiffOp::from_lincomb(m, LinComb::basis(r.clone()));
                    left = left.add(&rop.mul_poly(&counit(&lop)));
                    right = right.add(&lop.mul_poly(&counit(&rop)));
                }
                left != *a
                    || right != *a
                    || multiply_m(&one, b) != *b
                    || multiply_m(b, &one) != *b
            })
            .count();
        Outcome::check(unit_ok && bad == 0, format!("{} samples, {bad} failures", samples.len()))
    });

    report.run("hopf/d-coderivation", || {
        let bad = samples
            .par_iter()
            .filter(|(a, _, _)| {
                let lhs = coproduct_delta(&hochschild_d(a));
                let d = coproduct_delta(a);
                let mut rhs = pair_apply_left(&d, m, hochschild_d);
                rhs += &pair_apply_right(&d, m, true, hochschild_d);
                lhs != rhs
            })
            .count();
        Outcome::check(bad == 0, format!("{} samples, {bad} failures", samples.len()))
    });

    report.run("hopf/associativity-jacobi", || {
        let bad = samples
            .par_iter()
            .filter(|(a, b, c)| {
                let assoc = multiply_m(&multiply_m(a, b), c) == multiply_m(a, &multiply_m(b, c));
                let (na, nb, nc) = (
                    a.arity().unwrap_or(0),
                    b.arity().unwrap_or(0),
                    c.arity().unwrap_or(0),
                );
                // (-1)^{ac}[a,[b,c]] + (-1)^{ba}[b,[c,a]] + (-1)^{cb}[c,[a,b]] = 0
                let s = |x: usize, y: usize| sign(x % 2 == 1 && y % 2 == 1);
                let j = bracket_d(a, &bracket_d(b, c))
                    .scaled(&s(na, nc))
                    .add(&bracket_d(b, &bracket_d(c, a)).scaled(&s(nb, na)))
                    .add(&bracket_d(c, &bracket_d(a, b)).scaled(&s(nc, nb)));
                !assoc || !j.is_zero()
            })
            .count();
        Outcome::check(bad == 0, format!("{} samples, {bad} failures", samples.len()))
    });
    report
}

/// `d∘d = 0`, O-linearity of `d` and agreement with the pointwise formula.
pub fn verify_hochschild(bounds: SampleBounds, sample_deg: u32) -> VerificationReport {
    let mut report = VerificationReport::new("hochschild");
    let m = bounds.m;
    let samples: Vec<(PolyDiffOp, Polynomial)> = (0..bounds.samples)
        .map(|s| {
            let mut rng = rng_for(bounds.seed ^ 0xd0d0, s as u64);
            let n = rng.gen_range(0..=bounds.max_arity);
            let op = random_op(&mut rng, m, n, bounds.max_order, bounds.max_coeff_deg, 3);
            let g = random_polynomial(&mut rng, m, bounds.max_coeff_deg, 2);
            (op, g)
        })
        .collect();
    report.run("hochschild/d-squared", || {
        let bad = samples
            .par_iter()
            .filter(|(op, _)| !hochschild_d(&hochschild_d(op)).is_zero())
            .count();
        Outcome::check(bad == 0, format!("{} samples, {bad} failures", samples.len()))
    });
    report.run("hochschild/o-linear", || {
        let bad = samples
            .par_iter()
            .filter(|(op, g)| hochschild_d(&op.mul_poly(g)) != hochschild_d(op).mul_poly(g))
            .count();
        Outcome::check(bad == 0, format!("{} samples, {bad} failures", samples.len()))
    });
    report.run("hochschild/oracle", || {
        let outcomes: Vec<Outcome> = samples
            .par_iter()
            .map(|(op, _)| oracle_outcome(op, sample_deg))
            .collect();
        let bad: Vec<&Outcome> = outcomes.iter().filter(|o| !o.passed).collect();
        match bad.first() {
            None => Outcome::pass(format!("{} samples agree with the pointwise formula", samples.len())),
            Some(o) => Outcome::fail(format!("{} of {} samples: {}", bad.len(), samples.len(), o.detail)),
        }
    });
    report
}

/// `C_IJ` read off `d ∂_I`: minus the coefficient of `∂_J ⊗ ∂_{I-J}`.
pub fn reconstructed_constants(i: &MultiIndex) -> Vec<(MultiIndex, Q)> {
    let d = hochschild_d(&PolyDiffOp::d_index(i.clone()));
    let zero = MultiIndex::zero(i.m());
    i.sub_indices()
        .into_iter()
        .filter(|j| !j.is_zero() && j != i)
        .map(|j| {
            let rest = i.checked_sub(&j).expect("J <= I");
            let key = OpKey::new(vec![j.clone(), rest], zero.clone());
            (j, -d.terms.coeff(&key))
        })
        .collect()
}

/// `d` of every generator `g ∂_I` lies in `L(D^1)`; the constants `C_IJ`
/// reconstructed from `d ∂_I` are reported and compared with multinomials.
pub fn verify_prop3_closure(m: usize, max_order: u32, max_coeff_deg: u32) -> VerificationReport {
    let mut report = VerificationReport::new("prop3");
    let indices = MultiIndex::up_to_order(m, max_order);
    let coeffs = MultiIndex::up_to_order(m, max_coeff_deg);
    report.run(format!("prop3/m{m}/membership"), || {
        let bad: Vec<String> = indices
            .par_iter()
            .flat_map_iter(|i| coeffs.iter().map(move |c| (i, c)))
            .filter_map(|(i, c)| {
                let g = Polynomial::monomial(c.clone(), Q::one());
                let op = PolyDiffOp::d_index(i.clone()).mul_poly(&g);
                (!lie_membership_ld1(&hochschild_d(&op))).then(|| format!("{i:?}·x^{c:?}"))
            })
            .collect();
        Outcome::check(
            bad.is_empty(),
            format!("{} generators {}", indices.len() * coeffs.len(), bad.join(" ")),
        )
    });
    report.run(format!("prop3/m{m}/constants"), || {
        let mut lines = Vec::new();
        let mut ok = true;
        for i in &indices {
            if i.is_zero() {
                // d ∂_0 = ∂_0⊗∂_0 = 1/2 [∂_0, ∂_0], so C = -1 in the displayed form
                let d = hochschild_d(&PolyDiffOp::d_index(i.clone()));
                let key = OpKey::new(vec![i.clone(), i.clone()], i.clone());
                let c = -d.terms.coeff(&key);
                ok &= c == -Q::one() && d.terms.len() == 1;
                lines.push(format!("C_{i:?},{i:?}={c}"));
                continue;
            }
            for (j, c) in reconstructed_constants(i) {
                ok &= c == i.binom(&j);
                lines.push(format!("C_{i:?},{j:?}={c}"));
            }
        }
        Outcome::check(ok, lines.join(" "))
    });
    report
}

/// `(-1)^{|D|}(d∇_Y - ∇_Y d) D = [D, ∂_Y]`.
pub fn theorem2_holds(d: &PolyDiffOp, y: usize) -> Result<bool> {
    let m = d.m;
    let mut lhs = PolyDiffOp::zero(m);
    for n in 0..=d.max_arity() {
        let part = d.part_of_arity(n);
        if part.is_zero() {
            continue;
        }
        let t = hochschild_d(&connection_nabla(y, &part)?).sub(&connection_nabla(y, &hochschild_d(&part))?);
        lhs = lhs.add(&t.scaled(&sign(n % 2 == 1)));
    }
    Ok(lhs == bracket_d(d, &PolyDiffOp::partial(m, y)))
}

pub fn verify_theorem2(bounds: SampleBounds) -> VerificationReport {
    let mut report = VerificationReport::new("theorem2");
    let m = bounds.m;
    let seeds: Vec<PolyDiffOp> = MultiIndex::up_to_order(m, bounds.max_order.min(3))
        .into_iter()
        .map(PolyDiffOp::d_index)
        .collect();
    report.run(format!("theorem2/m{m}/generators"), || {
        let bad = seeds
            .iter()
            .flat_map(|d| (1..=m).map(move |y| (d, y)))
            .filter(|(d, y)| !theorem2_holds(d, *y).unwrap_or(false))
            .count();
        Outcome::check(bad == 0, format!("{} (∂_I, Y) pairs, {bad} failures", seeds.len() * m))
    });
    let samples: Vec<PolyDiffOp> = (0..bounds.samples)
        .map(|s| {
            let mut rng = rng_for(bounds.seed ^ 0x7e02, s as u64);
            let n = 1 + s % bounds.max_arity.clamp(1, 3);
            random_lie_element(&mut rng, m, n, bounds.max_coeff_deg)
        })
        .collect();
    report.run(format!("theorem2/m{m}/random-lie"), || {
        let bad: Vec<String> = samples
            .par_iter()
            .flat_map_iter(|d| (1..=m).map(move |y| (d, y)))
            .filter_map(|(d, y)| {
                let member = lie_membership_ld1(d);
                match theorem2_holds(d, y) {
                    Ok(true) if member => None,
                    _ => Some(format!("Y={y}: {d}")),
                }
            })
            .collect();
        Outcome::check(
            bad.is_empty(),
            format!("{} samples x {m} directions {}", samples.len(), bad.join("; ")),
        )
    });
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoboundaryBounds {
    pub max_order: u32,
    pub max_coeff_deg: u32,
}

impl Default for CoboundaryBounds {
    fn default() -> Self {
        CoboundaryBounds {
            max_order: 6,
            max_coeff_deg: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coboundary {
    /// `d(op) != 0`; carries `d(op)`.
    NotCocycle(PolyDiffOp),
    NoWitness,
    Witness(PolyDiffOp),
}

/// Search for `h` with `d h = op`.  `d` keeps the coefficient monomial and
/// the total slot order and raises arity by one, so each (coefficient,
/// order, arity) block is solved over all operators of one lower arity with
/// the same total order.  Within that block the search is complete.
pub fn coboundary_witness(op: &PolyDiffOp, bounds: CoboundaryBounds) -> Result<Coboundary> {
    for k in op.terms.keys() {
        if k.total_order() > bounds.max_order || k.coeff.order() > bounds.max_coeff_deg {
            return Err(AlgebraError::OutOfRange(format!(
                "term {k:?} exceeds order {} or coefficient degree {}",
                bounds.max_order, bounds.max_coeff_deg
            )));
        }
    }
    let dop = hochschild_d(op);
    if !dop.is_zero() {
        return Ok(Coboundary::NotCocycle(dop));
    }
    let m = op.m;
    let zero = MultiIndex::zero(m);
    let mut blocks: BTreeMap<(u32, usize), BTreeMap<MultiIndex, LinComb<OpKey>>> = BTreeMap::new();
    for (k, c) in op.terms.iter() {
        blocks
            .entry((k.total_order(), k.arity()))
            .or_default()
            .entry(k.coeff.clone())
            .or_default()
            .add_term(k.bare(), c.clone());
    }
    let mut witness = PolyDiffOp::zero(m);
    for ((r, n), by_coeff) in blocks {
        if n == 0 {
            return Ok(Coboundary::NoWitness);
        }
        let domain: Vec<OpKey> = slot_tuples(m, n - 1, r)
            .into_iter()
            .map(|slots| OpKey::new(slots, zero.clone()))
            .collect();
        let map = LinearMapRep::from_fn(domain, None, |k| {
            hochschild_d(&PolyDiffOp::from_lincomb(m, LinComb::basis(k.clone()))).terms
        })?;
        for (coeff, target) in by_coeff {
            match map.solve_in_image(&target)? {
                None => return Ok(Coboundary::NoWitness),
                Some(h) => {
                    let g = Polynomial::monomial(coeff, Q::one());
                    witness = witness.add(&PolyDiffOp::from_lincomb(m, h).mul_poly(&g));
                }
            }
        }
    }
    if hochschild_d(&witness) != *op {
        return Err(AlgebraError::Invariant("coboundary witness failed re-verification".into()));
    }
    Ok(Coboundary::Witness(witness))
}

/// All `n`-tuples of multi-indices in `m` variables with total order `r`.
pub fn slot_tuples(m: usize, n: usize, r: u32) -> Vec<Vec<MultiIndex>> {
    if n == 0 {
        return if r == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=r {
        for head in MultiIndex::of_order(m, first) {
            for mut rest in slot_tuples(m, n - 1, r - first) {
                rest.insert(0, head.clone());
                out.push(rest);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn x(m: usize, i: usize) -> Polynomial {
        Polynomial::var(m, i)
    }

    fn pow(m: usize, e: &[u32]) -> Polynomial {
        assert_eq!(e.len(), m);
        Polynomial::monomial(mi(e), Q::one())
    }

    fn slots(m: usize, s: &[&[u32]]) -> PolyDiffOp {
        PolyDiffOp::with_slots(m, s.iter().map(|v| mi(v)).collect(), &Polynomial::one(m))
    }

    #[test]
    fn evaluate_examples() {
        let dd = slots(1, &[&[1], &[1]]);
        assert_eq!(evaluate(&dd, &[x(1, 1), pow(1, &[2])]).unwrap(), pow(1, &[1]).scaled(&qi(2)));
        let g = pow(1, &[2]);
        assert_eq!(evaluate(&PolyDiffOp::scalar(&g, 1), &[]).unwrap(), g);
        let xd2 = slots(1, &[&[2]]).mul_poly(&x(1, 1));
        assert_eq!(evaluate(&xd2, &[pow(1, &[3])]).unwrap(), pow(1, &[2]).scaled(&qi(6)));
        assert!(matches!(evaluate(&dd, &[x(1, 1)]), Err(AlgebraError::SlotMismatch { .. })));
    }

    #[test]
    fn multiply_examples() {
        let (d1, d2) = (PolyDiffOp::partial(2, 1), PolyDiffOp::partial(2, 2));
        assert_eq!(multiply_m(&d1, &d2), slots(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(multiply_m(&PolyDiffOp::one(2), &d2), d2);
    }

    #[test]
    fn d_examples() {
        assert!(hochschild_d(&PolyDiffOp::partial(2, 1)).is_zero());
        assert_eq!(
            hochschild_d(&slots(1, &[&[2]])),
            slots(1, &[&[1], &[1]]).scaled(&qi(-2))
        );
        assert!(hochschild_d(&PolyDiffOp::scalar(&x(2, 1), 2)).is_zero());
        assert_eq!(hochschild_d(&slots(1, &[&[0]])), slots(1, &[&[0], &[0]]));
    }

    #[test]
    fn oracle_examples() {
        assert!(hochschild_d_oracle_check(&slots(1, &[&[2]]), 3).finish().ok);
        assert!(hochschild_d_oracle_check(&PolyDiffOp::zero(1), 3).finish().ok);
        let mut rng = rng_for(1, 0);
        let op = random_op(&mut rng, 2, 2, 3, 1, 3);
        assert!(hochschild_d_oracle_check(&op, 2).finish().ok);
    }

    #[test]
    fn delta_examples() {
        let d1 = PolyDiffOp::partial(2, 1);
        let one = OpKey::new(vec![], mi(&[0, 0]));
        let k1 = OpKey::new(vec![mi(&[1, 0])], mi(&[0, 0]));
        let expected = OpPair::basis((k1.clone(), one.clone())) + OpPair::basis((one.clone(), k1.clone()));
        assert_eq!(coproduct_delta(&d1), expected);

        let k2 = OpKey::new(vec![mi(&[0, 1])], mi(&[0, 0]));
        let k12 = OpKey::new(vec![mi(&[1, 0]), mi(&[0, 1])], mi(&[0, 0]));
        let d = coproduct_delta(&slots(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(d.coeff(&(k12.clone(), one.clone())), qi(1));
        assert_eq!(d.coeff(&(k1.clone(), k2.clone())), qi(1));
        assert_eq!(d.coeff(&(k2, k1)), qi(-1));
        assert_eq!(d.coeff(&(one, k12)), qi(1));
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn bracket_examples() {
        let (d1, d2) = (PolyDiffOp::partial(2, 1), PolyDiffOp::partial(2, 2));
        assert_eq!(
            bracket_d(&d1, &d2),
            slots(2, &[&[1, 0], &[0, 1]]).add(&slots(2, &[&[0, 1], &[1, 0]]))
        );
        let xd = PolyDiffOp::partial(1, 1).mul_poly(&x(1, 1));
        let d = PolyDiffOp::partial(1, 1);
        assert_eq!(bracket_d(&xd, &d), slots(1, &[&[1], &[1]]).mul_poly(&x(1, 1)).scaled(&qi(2)));
    }

    #[test]
    fn nabla_examples() {
        assert_eq!(connection_nabla(1, &PolyDiffOp::partial(1, 1)).unwrap(), slots(1, &[&[2]]));
        let g = pow(2, &[2, 1]);
        assert_eq!(
            connection_nabla(1, &PolyDiffOp::scalar(&g, 2)).unwrap(),
            PolyDiffOp::scalar(&pow(2, &[1, 1]).scaled(&qi(2)), 2)
        );
        assert!(connection_nabla(3, &PolyDiffOp::partial(2, 1)).is_err());
    }

    #[test]
    fn nabla_is_a_derivation_of_the_bracket() {
        let mut rng = rng_for(3, 0);
        for _ in 0..10 {
            let f = random_op(&mut rng, 2, 1, 2, 1, 2);
            let g = random_op(&mut rng, 2, 2, 2, 1, 2);
            let lhs = connection_nabla(2, &bracket_d(&f, &g)).unwrap();
            let rhs = bracket_d(&connection_nabla(2, &f).unwrap(), &g)
                .add(&bracket_d(&f, &connection_nabla(2, &g).unwrap()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn adams_examples() {
        let d = PolyDiffOp::partial(2, 1);
        assert_eq!(adams_psi(1, &d).unwrap(), d);
        assert_eq!(adams_psi(2, &d).unwrap(), d.scaled(&qi(2)));
        assert!(adams_psi(0, &d).is_err());
        let g = PolyDiffOp::scalar(&x(2, 1), 2);
        assert_eq!(adams_psi(3, &g).unwrap(), g);
    }

    #[test]
    fn adams_composition() {
        let mut rng = rng_for(9, 0);
        for _ in 0..6 {
            let n = rng.gen_range(0..=3);
            let op = random_op(&mut rng, 2, n, 3, 1, 2);
            for (p, qq) in [(2, 2), (2, 3)] {
                let lhs = adams_psi(p, &adams_psi(qq, &op).unwrap()).unwrap();
                assert_eq!(lhs, adams_psi(p * qq, &op).unwrap());
            }
        }
    }

    #[test]
    fn membership_examples() {
        assert!(lie_membership_ld1(&PolyDiffOp::partial(2, 1)));
        let a = slots(2, &[&[1, 0], &[0, 1]]);
        let b = slots(2, &[&[0, 1], &[1, 0]]);
        assert!(lie_membership_ld1(&a.add(&b)));
        assert!(!lie_membership_ld1(&a));
        assert!(!lie_membership_ld1(&PolyDiffOp::one(2)));
    }

    #[test]
    fn generator_closure_and_constants() {
        assert!(verify_prop3_closure(2, 3, 1).finish().ok);
        let c = reconstructed_constants(&mi(&[2]));
        assert_eq!(c, vec![(mi(&[1]), qi(2))]);
    }

    #[test]
    fn connection_identity_examples() {
        for i in 1..=2 {
            for y in 1..=2 {
                assert!(theorem2_holds(&PolyDiffOp::partial(2, i), y).unwrap());
            }
        }
        // [x2 ∂1, ∂2], Y = 1
        let d = bracket_d(&PolyDiffOp::partial(2, 1).mul_poly(&x(2, 2)), &PolyDiffOp::partial(2, 2));
        assert!(theorem2_holds(&d, 1).unwrap());
        assert!(verify_theorem2(SampleBounds { samples: 6, ..Default::default() }).finish().ok);
    }

    #[test]
    fn hopf_small() {
        let r = verify_prop2_hopf(SampleBounds { samples: 8, ..Default::default() }).finish();
        assert!(r.ok, "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn coboundary_examples() {
        let b = CoboundaryBounds::default();
        // [∂1, ∂2] = -d ∂_{(1,1)}
        let br = bracket_d(&PolyDiffOp::partial(2, 1), &PolyDiffOp::partial(2, 2));
        match coboundary_witness(&br, b).unwrap() {
            Coboundary::Witness(h) => assert_eq!(h, slots(2, &[&[1, 1]]).neg()),
            other => panic!("{other:?}"),
        }
        let hkr = slots(2, &[&[1, 0], &[0, 1]]).sub(&slots(2, &[&[0, 1], &[1, 0]]));
        assert_eq!(coboundary_witness(&hkr, b).unwrap(), Coboundary::NoWitness);
        assert_eq!(coboundary_witness(&PolyDiffOp::partial(1, 1), b).unwrap(), Coboundary::NoWitness);
        // 2 ∂⊗∂ = d(-∂^2)
        match coboundary_witness(&slots(1, &[&[1], &[1]]).scaled(&qi(2)), b).unwrap() {
            Coboundary::Witness(h) => assert_eq!(h, slots(1, &[&[2]]).neg()),
            other => panic!("{other:?}"),
        }
        let not = slots(2, &[&[1, 0], &[1, 0]]).add(&slots(2, &[&[2, 0]]));
        assert!(matches!(coboundary_witness(&not, b).unwrap(), Coboundary::NotCocycle(_)));
    }

    #[test]
    fn encoding() {
        let op = slots(2, &[&[1, 0], &[0, 1]]).mul_poly(&pow(2, &[2, 1])).scaled(&Q::new(1.into(), 2.into()));
        assert_eq!(op.encode(), "1/2 * x1^2*x2 * d[1,0]⊗d[0,1]");
        assert_eq!(PolyDiffOp::one(1).encode(), "1 * 1 * 1");
        assert_eq!(PolyDiffOp::zero(1).encode(), "0");
    }

    proptest! {
        #[test]
        fn d_squared_zero(seed in 0u64..1000, n in 0usize..=4) {
            let mut rng = rng_for(seed, 0);
            let op = random_op(&mut rng, 2, n, 4, 2, 3);
            prop_assert!(hochschild_d(&hochschild_d(&op)).is_zero());
        }

        #[test]
        fn d_is_o_linear(seed in 0u64..1000, n in 0usize..=3) {
            let mut rng = rng_for(seed, 1);
            let op = random_op(&mut rng, 2, n, 3, 2, 3);
            let g = random_polynomial(&mut rng, 2, 2, 3);
            prop_assert_eq!(hochschild_d(&op.mul_poly(&g)), hochschild_d(&op).mul_poly(&g));
        }

        #[test]
        fn solve_finds_exact_preimages(seed in 0u64..200, n in 1usize..=2) {
            let mut rng = rng_for(seed, 2);
            let h = random_op(&mut rng, 2, n, 3, 1, 2);
            let target = hochschild_d(&h);
            match coboundary_witness(&target, CoboundaryBounds::default()).unwrap() {
                Coboundary::Witness(w) => prop_assert_eq!(hochschild_d(&w), target),
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
