//! Library results checked against oracles computed here from first
//! principles.

use hkr_algebra::dpoly::{
    hochschild_d, random_op, random_polynomial, MultiIndex, PolyDiffOp, Polynomial,
};
use hkr_algebra::freelie::{bch_coeffs, witt_dimension, FreeLie, GenSet};
use hkr_algebra::glin::{factorial, koszul_sign, q, qi, Degree};
use hkr_algebra::hkr::{i_hkr, PolyExterior};
use hkr_algebra::symgrp::Permutation;
use hkr_algebra::Q;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Words over `q` letters that are strictly smaller than every proper
/// rotation.
fn lyndon_count(q: u32, n: usize) -> usize {
    let mut count = 0;
    let total = (q as usize).pow(n as u32);
    for mut idx in 0..total {
        let mut w = Vec::with_capacity(n);
        for _ in 0..n {
            w.push(idx % q as usize);
            idx /= q as usize;
        }
        let is_lyndon = (1..n).all(|r| {
            let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
            w < rot
        });
        if is_lyndon {
            count += 1;
        }
    }
    count
}

#[test]
fn even_lie_basis_has_lyndon_dimension() {
    for q in 1..=3u32 {
        let gens = GenSet::new((0..q).map(|i| (format!("x{i}"), 2))).unwrap();
        let lie = FreeLie::new(gens);
        for n in 1..=5usize {
            if q == 3 && n > 4 {
                continue;
            }
            let dim = lie.lie_basis_component(n, 2 * n as u32).len();
            assert_eq!(dim, lyndon_count(q, n), "q={q} n={n}");
            assert_eq!(dim, witt_dimension(q as usize, n), "q={q} n={n}");
        }
    }
}

/// Bernoulli numbers from `sum_{k<=n} C(n+1,k) B_k = 0`, which gives
/// `B_1 = -1/2`.
fn bernoulli_minus(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for m in 1..=n {
        let mut s = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            s += factorial(m + 1) / (factorial(k) * factorial(m + 1 - k)) * bk;
        }
        b.push(-s / qi(m as i64 + 1));
    }
    b
}

#[test]
fn bch_coefficients_are_bernoulli_over_factorial() {
    let c = bch_coeffs(14);
    let b = bernoulli_minus(14);
    for n in 0..=14 {
        // y/(1 - e^{-y}) has B_1 = +1/2
        let bn = if n == 1 { -b[1].clone() } else { b[n].clone() };
        assert_eq!(c[n], bn / factorial(n), "n={n}");
    }
    assert_eq!(b[12], q(-691, 2730));
}

/// Position `p` of the new word holds letter `images[p]`; count the pairs of
/// odd letters whose order flips.
fn inversion_sign(degrees: &[u32], images: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            let (a, b) = (images[i], images[j]);
            if a > b && degrees[a] % 2 == 1 && degrees[b] % 2 == 1 {
                s = -s;
            }
        }
    }
    s
}

proptest! {
    #[test]
    fn koszul_sign_counts_odd_inversions(
        degrees in proptest::collection::vec(0u32..4, 1..7),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let n = degrees.len();
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let p = Permutation::from_images(images.clone()).unwrap();
        let degs: Vec<Degree> = degrees.iter().map(|&d| Degree(d)).collect();
        prop_assert_eq!(koszul_sign(&degs, &p).unwrap(), inversion_sign(&degrees, &images));
    }
}

/// Evaluate an operator by hand: `coeff * prod_j ∂^{I_j} f_j`.
fn apply_by_hand(op: &PolyDiffOp, args: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero();
    for (key, c) in op.terms().iter() {
        let mut v = Polynomial::monomial(key.coeff.clone(), c.clone());
        for (slot, f) in key.slots.iter().zip(args) {
            v = v.mul(&f.derivative(slot));
        }
        out = out.add(&v);
    }
    out
}

fn hochschild_by_hand(op: &PolyDiffOp, a: &[Polynomial]) -> Polynomial {
    let n = a.len() - 1;
    let mut total = a[0].mul(&apply_by_hand(op, &a[1..]));
    for i in 0..n {
        let mut merged = a[..i].to_vec();
        merged.push(a[i].mul(&a[i + 1]));
        merged.extend_from_slice(&a[i + 2..]);
        let s = if i % 2 == 0 { -Q::one() } else { Q::one() };
        total = total.add(&apply_by_hand(op, &merged).scaled(&s));
    }
    let s = if n % 2 == 0 { -Q::one() } else { Q::one() };
    total.add(&apply_by_hand(op, &a[..n]).mul(&a[n]).scaled(&s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hochschild_d_matches_pointwise_formula(seed in any::<u64>(), arity in 0usize..3, m in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let op = random_op(&mut rng, m, arity, 3, 1, 2);
        let args: Vec<Polynomial> = (0..=arity).map(|_| random_polynomial(&mut rng, m, 2, 2)).collect();
        let d = hochschild_d(&op);
        prop_assert_eq!(apply_by_hand(&d, &args), hochschild_by_hand(&op, &args));
        prop_assert!(hochschild_d(&d).is_zero());
    }

    #[test]
    fn hkr_of_a_bivector_is_half_the_commutator(seed in any::<u64>(), i in 1usize..4, j in 1usize..4) {
        prop_assume!(i != j);
        let m = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_polynomial(&mut rng, m, 2, 2);
        let f1 = random_polynomial(&mut rng, m, 3, 3);
        let f2 = random_polynomial(&mut rng, m, 3, 3);
        let op = i_hkr(&PolyExterior::wedge(m, &[i, j], &g).unwrap());
        let di = |f: &Polynomial| f.derivative(&MultiIndex::unit(m, i));
        let dj = |f: &Polynomial| f.derivative(&MultiIndex::unit(m, j));
        let expected = di(&f1).mul(&dj(&f2)).add(&dj(&f1).mul(&di(&f2)).scaled(&-Q::one()));
        let expected = g.mul(&expected).scaled(&q(1, 2));
        prop_assert_eq!(apply_by_hand(&op, &[f1, f2]), expected);
        prop_assert!(hochschild_d(&op).is_zero());
    }
}
