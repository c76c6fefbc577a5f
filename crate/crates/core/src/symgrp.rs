//! Group algebras of symmetric groups acting on graded words.
//!
//! A permutation acts on a word by `out[p] = w[sigma(p)]` times the Koszul
//! sign of the rearrangement.  Group-ring elements are read as operators and
//! `grp_multiply(a, b)` is "a after b", so that
//! `act(grp_multiply(a, b), w) == act(a, act(b, w))`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::freelie::bch_coeffs;
use crate::glin::{koszul_odd, Degree, LinComb, Q};
use crate::report::{Outcome, VerificationReport};

/// Largest symmetric group the crate will expand in full.
pub const MAX_GROUP_SIZE: usize = 7;
/// Default ceiling for the summed identity check.
pub const MAX_STAR_K: usize = 4;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            img: (0..n).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &i in &img {
            if i >= n || seen[i] {
                return Err(AlgebraError::OutOfRange(format!("{img:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { img })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(line: &[usize]) -> Result<Self> {
        if line.contains(&0) {
            return Err(AlgebraError::OutOfRange("one-line notation is 1-based".into()));
        }
        Self::from_images(line.iter().map(|i| i - 1).collect())
    }

    /// Transposition of 1-based positions `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(AlgebraError::OutOfRange(format!("({i} {j}) in S_{n}")));
        }
        let mut img: Vec<usize> = (0..n).collect();
        img.swap(i - 1, j - 1);
        Ok(Permutation { img })
    }

    pub fn len(&self) -> usize {
        self.img.len()
    }

    pub fn is_empty(&self) -> bool {
        self.img.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.img.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(p, &i)| p == i)
    }

    /// The operator `self` after `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            img: self.img.iter().map(|&p| other.img[p]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (p, &i) in self.img.iter().enumerate() {
            inv[i] = p;
        }
        Permutation { img: inv }
    }

    pub fn sign(&self) -> i32 {
        let ones = vec![Degree(1); self.len()];
        if koszul_odd(&ones, &self.img) {
            -1
        } else {
            1
        }
    }

    /// All of `S_n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { img: cur.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    /// Rearrange `word`, returning whether the Koszul sign is odd.
    pub fn permute<T: Clone>(&self, word: &[T], degrees: &[Degree]) -> Result<(bool, Vec<T>)> {
        if word.len() != self.len() || degrees.len() != self.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: self.len(),
                got: word.len(),
            });
        }
        let out = self.img.iter().map(|&i| word[i].clone()).collect();
        Ok((koszul_odd(degrees, &self.img), out))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.one_line().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Exact element of the rational group algebra of `S_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    n: usize,
    terms: LinComb<Permutation>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> Self {
        GroupRingElement {
            n,
            terms: LinComb::zero(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_perm(Permutation::identity(n))
    }

    pub fn from_perm(p: Permutation) -> Self {
        GroupRingElement {
            n: p.len(),
            terms: LinComb::basis(p),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, Q)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (p, c) in terms {
            if p.len() != n {
                return Err(AlgebraError::SizeMismatch {
                    left: n,
                    right: p.len(),
                });
            }
            out.terms.add_term(p, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &LinComb<Permutation> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, p: &Permutation) -> Q {
        self.terms.coeff(p)
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(AlgebraError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(GroupRingElement {
            n: self.n,
            terms: self.terms.clone() + other.terms.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(GroupRingElement {
            n: self.n,
            terms: self.terms.clone() - other.terms.clone(),
        })
    }

    pub fn scaled(&self, c: &Q) -> Self {
        GroupRingElement {
            n: self.n,
            terms: self.terms.scaled(c),
        }
    }

    /// Same element with permutations replaced by their inverses (the
    /// antipode of the group algebra).
    pub fn antipode(&self) -> Self {
        GroupRingElement {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (p.inverse(), c.clone())).collect(),
        }
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}: {:?}", self.n, self.terms)
    }
}

/// Product in the group algebra: the operator `a` after `b`.
pub fn grp_multiply(a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
    a.same_size(b)?;
    let mut out = GroupRingElement::zero(a.n);
    for (pa, ca) in a.terms.iter() {
        for (pb, cb) in b.terms.iter() {
            out.terms.add_term(pa.compose(pb), ca * cb);
        }
    }
    Ok(out)
}

fn mul(a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
    grp_multiply(a, b).expect("sizes agree by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialElement {
    /// The `l`-cycle on the last `l` positions of `S_n`.
    Tau { l: usize, n: usize },
    /// `(id - tau_n) ... (id - tau_2)`.
    Dynkin { n: usize },
    /// Inserts the final block of length `l` at position `i` (1-based).
    Sigma { i: usize, l: usize, n: usize },
    /// Inverse of `Sigma`: moves the block at `i` to the end.
    Nu { i: usize, l: usize, n: usize },
    /// `S_k` embedded in `S_{k+1}` fixing the last letter, summed.
    IotaSum { k: usize },
    FullSym { n: usize },
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_GROUP_SIZE {
        return Err(AlgebraError::OutOfRange(format!(
            "S_{n} exceeds the ceiling S_{MAX_GROUP_SIZE}"
        )));
    }
    Ok(())
}

fn tau(l: usize, n: usize) -> Result<Permutation> {
    if l == 0 || l > n {
        return Err(AlgebraError::OutOfRange(format!("tau_{l} in S_{n}")));
    }
    let start = n - l;
    let img = (0..n)
        .map(|p| match p {
            p if p < start => p,
            p if p + 1 < n => p + 1,
            _ => start,
        })
        .collect();
    Ok(Permutation { img })
}

fn sigma(i: usize, l: usize, n: usize) -> Result<Permutation> {
    if l == 0 || l > n || i == 0 || i + l > n + 1 {
        return Err(AlgebraError::OutOfRange(format!("sigma({i},{l},{n})")));
    }
    // 1-based: positions i..i+l-1 receive n-l+1..n, the rest keep their order
    let mut line = Vec::with_capacity(n);
    line.extend(1..i);
    line.extend(n - l + 1..=n);
    line.extend(i..=n - l);
    Permutation::from_one_line(&line)
}

pub fn special_element(kind: SpecialElement) -> Result<GroupRingElement> {
    match kind {
        SpecialElement::Tau { l, n } => {
            check_size(n)?;
            Ok(GroupRingElement::from_perm(tau(l, n)?))
        }
        SpecialElement::Dynkin { n } => {
            if n == 0 {
                return Err(AlgebraError::OutOfRange("e_0".into()));
            }
            check_size(n)?;
            let mut e = GroupRingElement::identity(n);
            for l in 2..=n {
                let step = GroupRingElement::identity(n).sub(&GroupRingElement::from_perm(tau(l, n)?))?;
                e = mul(&step, &e);
            }
            Ok(e)
        }
        SpecialElement::Sigma { i, l, n } => {
            check_size(n)?;
            Ok(GroupRingElement::from_perm(sigma(i, l, n)?))
        }
        SpecialElement::Nu { i, l, n } => {
            check_size(n)?;
            Ok(GroupRingElement::from_perm(sigma(i, l, n)?.inverse()))
        }
        SpecialElement::IotaSum { k } => {
            check_size(k + 1)?;
            GroupRingElement::from_terms(
                k + 1,
                Permutation::all(k).into_iter().map(|p| {
                    let mut img = p.img;
                    img.push(k);
                    (Permutation { img }, Q::one())
                }),
            )
        }
        SpecialElement::FullSym { n } => {
            check_size(n)?;
            GroupRingElement::from_terms(n, Permutation::all(n).into_iter().map(|p| (p, Q::one())))
        }
    }
}

/// Act on a linear combination of words whose letters carry degrees.
pub fn act<T, F>(g: &GroupRingElement, w: &LinComb<Vec<T>>, degree: F) -> Result<LinComb<Vec<T>>>
where
    T: Ord + Clone,
    F: Fn(&T) -> Degree,
{
    let mut out = LinComb::zero();
    for (word, c) in w.iter() {
        if word.len() != g.n {
            return Err(AlgebraError::LengthMismatch {
                expected: g.n,
                got: word.len(),
            });
        }
        let degrees: Vec<Degree> = word.iter().map(&degree).collect();
        for (p, cp) in g.terms.iter() {
            let (odd, moved) = p.permute(word, &degrees)?;
            let coeff = c * cp;
            out.add_term(moved, if odd { -coeff } else { coeff });
        }
    }
    Ok(out)
}

/// Moves letter `i` (1-based) to just before the final block of length `l`.
pub fn chi(i: usize, l: usize, n: usize) -> Result<GroupRingElement> {
    if l == 0 || i == 0 || i + l > n {
        return Err(AlgebraError::OutOfRange(format!("chi({i},{l},{n})")));
    }
    Ok(mul(
        &special_element(SpecialElement::Sigma { i: n - l, l: 1, n })?,
        &special_element(SpecialElement::Nu { i, l: 1, n })?,
    ))
}

/// One bracketing step: pick a letter in front of the length-`l` block, move
/// it next to the block and bracket it in, `(id - tau_{l+1}) sum_i chi(i,l,n)`.
pub fn bracket_step(l: usize, n: usize) -> Result<GroupRingElement> {
    if l == 0 || l >= n {
        return Err(AlgebraError::OutOfRange(format!("bracket step {l} in S_{n}")));
    }
    let mut moves = GroupRingElement::zero(n);
    for i in 1..=n - l {
        moves = moves.add(&chi(i, l, n)?)?;
    }
    let step = GroupRingElement::identity(n).sub(&special_element(SpecialElement::Tau { l: l + 1, n })?)?;
    Ok(mul(&step, &moves))
}

/// The element realizing `mu-hat` after `j` applications of `omega-hat` on
/// words of length `n` whose last letter is the distinguished factor.
pub fn mu_omega_element(j: usize, n: usize) -> Result<GroupRingElement> {
    if n == 0 || j >= n {
        return Err(AlgebraError::OutOfRange(format!("j={j} on S_{n}")));
    }
    let mut acc = GroupRingElement::identity(n);
    for l in 1..=j {
        acc = mul(&bracket_step(l, n)?, &acc);
    }
    let slots = n - j;
    let mut insert = GroupRingElement::zero(n);
    for i in 1..=slots {
        insert = insert.add(&special_element(SpecialElement::Sigma { i, l: j + 1, n })?)?;
    }
    Ok(mul(&insert, &acc).scaled(&Q::new(1.into(), (slots as i64).into())))
}

/// Partial sums `sum_{j<=J} c_j G_j S` of the summed identity.
pub fn star_partial_sums(k: usize) -> Result<Vec<GroupRingElement>> {
    let n = k + 1;
    let s = special_element(SpecialElement::IotaSum { k })?;
    let c = bch_coeffs(k);
    let mut acc = GroupRingElement::zero(n);
    let mut out = Vec::with_capacity(k + 1);
    for (j, cj) in c.iter().enumerate() {
        if !cj.is_zero() {
            let term = mul(&mu_omega_element(j, n)?, &s).scaled(cj);
            acc = acc.add(&term)?;
        }
        out.push(acc.clone());
    }
    Ok(out)
}

fn profiles(n: usize, values: &[u32]) -> Vec<Vec<Degree>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Degree>| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(Degree(v));
                    q
                })
            })
            .collect();
    }
    out
}

fn profile_label(p: &[Degree]) -> String {
    p.iter().map(|d| d.0.to_string()).collect()
}

/// Checks `sum_j c_j G_j S = S` in the group algebra of `S_{k+1}` and as
/// operators on words of every degree profile in `{1,2,3}^{k+1}`.
pub fn verify_star_identity(k: usize) -> VerificationReport {
    let mut report = VerificationReport::new("symgrp");
    let name = |what: &str| format!("star/k{k}/{what}");
    if k > MAX_STAR_K {
        report.skip(name("bound"), format!("k={k} exceeds the ceiling {MAX_STAR_K}"));
        return report;
    }
    let partial = match star_partial_sums(k) {
        Ok(p) => p,
        Err(e) => {
            report.run(name("group-ring"), || Outcome::fail(e.to_string()));
            return report;
        }
    };
    let s = special_element(SpecialElement::IotaSum { k }).expect("k is in range");
    let lhs = partial.last().expect("at least c_0").clone();

    report.run(name("group-ring"), || {
        let residues: Vec<usize> = partial
            .iter()
            .map(|p| s.sub(p).expect("same size").terms().len())
            .collect();
        Outcome::check(
            lhs == s,
            format!("support of S minus partial sums over j=0..{k}: {residues:?}"),
        )
    });

    report.run(name("profiles"), || {
        let n = k + 1;
        let word: LinComb<Vec<usize>> = LinComb::basis((0..n).collect());
        let mut checked = Vec::new();
        let mut bad = Vec::new();
        for prof in profiles(n, &[1, 2, 3]) {
            let deg = |x: &usize| prof[*x];
            let left = act(&lhs, &word, deg);
            let right = act(&s, &word, deg);
            match (left, right) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => bad.push(profile_label(&prof)),
            }
            checked.push(profile_label(&prof));
        }
        if bad.is_empty() {
            Outcome::pass(format!("{} profiles: {}", checked.len(), checked.join(" ")))
        } else {
            Outcome::fail(format!("failing profiles: {}", bad.join(" ")))
        }
    });
    report
}
