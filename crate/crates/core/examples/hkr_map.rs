//! Polyvector fields into polydifferential operators: `I_HKR = J ∘ p`, and the
//! same map through the symmetrized free Lie algebra on the `β(∂_i)`.

use hkr_algebra::dpoly::{hochschild_d, Polynomial};
use hkr_algebra::hkr::{i_hkr, j_map, p_antisym, pi_project, HkrContext, PolyExterior};
use hkr_algebra::Result;

fn main() -> Result<()> {
    let m = 3;
    let g = Polynomial::var(m, 3);
    let xi = PolyExterior::wedge(m, &[2, 1, 3], &g)?;
    println!("ξ = x3 ∂_2∧∂_1∧∂_3, normal form {:?}", xi.terms().iter().collect::<Vec<_>>());

    let t = p_antisym(&xi);
    println!("p(ξ) has {} tensor terms", t.terms().len());
    let op = i_hkr(&xi);
    println!("I_HKR(ξ) = {op}");
    println!("J(p(ξ)) = I_HKR(ξ): {}", j_map(&t) == op);
    println!("π(p(ξ)) = ξ: {}", pi_project(&t) == xi);
    println!("d I_HKR(ξ) = 0: {}", hochschild_d(&op).is_zero());

    let ctx = HkrContext::new(m)?;
    let s = ctx.sym_beta(&xi);
    println!("Sym β(ξ) = {s:?}");
    println!("I(Sym β(ξ)) = I_HKR(ξ): {}", ctx.i_sym(&s) == op);
    Ok(())
}
