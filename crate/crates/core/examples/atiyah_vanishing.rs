//! On affine space the bracket of two `β`-images is a Hochschild coboundary,
//! while the HKR image of a bivector is not.

use hkr_algebra::dpoly::{bracket_d, coboundary_witness, Coboundary, CoboundaryBounds, PolyDiffOp, Polynomial};
use hkr_algebra::hkr::{beta, i_hkr, verify_atiyah_vanishing, AtiyahBounds, PolyExterior, VectorField};
use hkr_algebra::Result;

fn show(name: &str, op: &PolyDiffOp) -> Result<()> {
    let bounds = CoboundaryBounds { max_order: 2, max_coeff_deg: 4 };
    match coboundary_witness(op, bounds)? {
        Coboundary::Witness(w) => println!("{name} = d({})", w.encode()),
        Coboundary::NoWitness => println!("{name}: no primitive of order <= 2"),
        Coboundary::NotCocycle(x) => println!("{name}: d = {x}"),
    }
    Ok(())
}

fn main() -> Result<()> {
    let m = 2;
    let x = |i| Polynomial::var(m, i);
    let u = VectorField::new(vec![x(2), Polynomial::zero()]);
    let v = VectorField::new(vec![Polynomial::zero(), x(1).mul(&x(1))]);
    let br = bracket_d(&beta(&u), &beta(&v));
    println!("[β u, β v] = {br}");
    show("[β u, β v]", &br)?;

    let class = i_hkr(&PolyExterior::wedge(m, &[1, 2], &Polynomial::one(m))?);
    show("I_HKR(∂_1∧∂_2)", &class)?;

    let report = verify_atiyah_vanishing(AtiyahBounds::default()).finish();
    for c in &report.checks {
        println!("{:?} {}: {}", c.status, c.name, c.detail);
    }
    Ok(())
}
