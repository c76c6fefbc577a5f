//! Permutations acting on graded words, Koszul signs and the named
//! group-ring elements.

use hkr_algebra::glin::{koszul_sign, qi, Degree};
use hkr_algebra::symgrp::{act, grp_multiply, special_element, Permutation, SpecialElement};
use hkr_algebra::{LinComb, Result};

fn main() -> Result<()> {
    let swap = Permutation::from_one_line(&[2, 1, 3])?;
    for degs in [[1, 1, 0], [1, 2, 1], [2, 2, 2]] {
        let d: Vec<Degree> = degs.iter().map(|&x| Degree(x)).collect();
        println!("swap of first two letters with degrees {degs:?}: sign {}", koszul_sign(&d, &swap)?);
    }

    let tau3 = special_element(SpecialElement::Tau { l: 3, n: 3 })?;
    println!("tau_3 = {tau3:?}");
    let e3 = special_element(SpecialElement::Dynkin { n: 3 })?;
    println!("e_3 = {e3:?}");
    let e3e3 = grp_multiply(&e3, &e3)?;
    println!("e_3 e_3 = 3 e_3: {}", e3e3 == e3.scaled(&qi(3)));

    // odd letters pick up signs when moved past each other
    let word: LinComb<Vec<char>> = LinComb::basis(vec!['a', 'b', 'c']);
    let odd = act(&e3, &word, |_| Degree(1))?;
    let even = act(&e3, &word, |_| Degree(2))?;
    println!("e_3 . abc (odd letters)  = {odd:?}");
    println!("e_3 . abc (even letters) = {even:?}");
    Ok(())
}
