//! The operator `Θ` on the tensor algebra of a free Lie algebra and the maps
//! `Ψ_k` built from it.

use hkr_algebra::dpoly::{coboundary_witness, Coboundary, CoboundaryBounds, MultiIndex};
use hkr_algebra::freelie::GenSet;
use hkr_algebra::theta::{Theorem5Local, Theta};
use hkr_algebra::Result;

fn main() -> Result<()> {
    let th = Theta::new(GenSet::odd(2));
    for gs in [vec![0, 1], vec![0, 1, 0]] {
        let psi = th.psi_on_generators(&gs)?;
        println!("Ψ({gs:?}) = {psi:?}");
        println!("  multiplied out: {}", th.lie().format_tensor(&th.flatten(&psi)));
    }

    let diag = th.psi_component(3, 3)?;
    println!("Ψ_33 is a {}x{} matrix", diag.codomain().len(), diag.domain().len());

    let local = Theorem5Local::new(2, 2)?;
    let case = local.case(&[1, 2], &MultiIndex(vec![1, 0]))?;
    println!("J^2(x1 ∂_1⊗∂_2) = {}", case.j_k);
    println!("I_HKR(π Ψ_2) = {}", case.hkr_part);
    let diff = case.difference();
    match coboundary_witness(&diff, CoboundaryBounds { max_order: 3, max_coeff_deg: 1 })? {
        Coboundary::Witness(w) => println!("difference = d({})", w.encode()),
        other => println!("difference has no witness: {other:?}"),
    }
    Ok(())
}
