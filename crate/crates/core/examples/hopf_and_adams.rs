//! The coproduct on polydifferential operators and the Adams operations
//! `ψ^p = m_p ∘ Δ^p`.

use hkr_algebra::dpoly::{adams_psi, coproduct_delta, counit, MultiIndex, PolyDiffOp, Polynomial};
use hkr_algebra::glin::qi;
use hkr_algebra::hkr::{i_hkr, PolyExterior};
use hkr_algebra::Result;

fn main() -> Result<()> {
    let m = 2;
    let d11 = PolyDiffOp::d_index(MultiIndex(vec![1, 1]));
    println!("Δ(∂_1∂_2) has {} terms:", coproduct_delta(&d11).len());
    for ((a, b), c) in coproduct_delta(&d11).iter() {
        println!("  {c} * {a:?} ⊗ {b:?}");
    }
    println!("ε(∂_1∂_2) = {}", counit(&d11));

    let g = Polynomial::var(m, 1);
    let xi = PolyExterior::wedge(m, &[1, 2], &g)?;
    let h = i_hkr(&xi);
    println!("I_HKR(x1 ∂_1∧∂_2) = {h}");
    for p in 2..=3 {
        let psi = adams_psi(p, &h)?;
        println!("ψ^{p} of it is {} times it: {}", p * p, psi == h.scaled(&qi((p * p) as i64)));
    }
    Ok(())
}
