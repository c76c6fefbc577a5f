//! Polydifferential operators on polynomials and the Hochschild differential.

use hkr_algebra::dpoly::{
    coboundary_witness, evaluate, hochschild_d, hochschild_d_pointwise, Coboundary, CoboundaryBounds, MultiIndex,
    PolyDiffOp, Polynomial,
};
use hkr_algebra::glin::qi;
use hkr_algebra::Result;

fn main() -> Result<()> {
    let m = 2;
    let x1 = Polynomial::var(m, 1);
    // D = x1 ∂_1∂_2 (one slot)
    let d = PolyDiffOp::with_slots(m, vec![MultiIndex(vec![1, 1])], &x1);
    println!("D = {d}");
    let dd = hochschild_d(&d);
    println!("dD = {dd}");
    println!("d(dD) = {}", hochschild_d(&dd));

    let f = Polynomial::var(m, 1).mul(&Polynomial::var(m, 2));
    let g = Polynomial::var(m, 2).mul(&Polynomial::var(m, 2)).add(&Polynomial::constant(m, qi(3)));
    let via_terms = evaluate(&dd, &[f.clone(), g.clone()])?;
    let via_formula = hochschild_d_pointwise(&d, &[f, g])?;
    println!("(dD)(f, g) = {via_terms}; pointwise formula agrees: {}", via_terms == via_formula);

    // ∂_1⊗∂_2 + ∂_2⊗∂_1 is a coboundary, ∂_1⊗∂_2 - ∂_2⊗∂_1 is not
    let one = Polynomial::one(m);
    let e = |i| MultiIndex::unit(m, i);
    let sym = PolyDiffOp::with_slots(m, vec![e(1), e(2)], &one).add(&PolyDiffOp::with_slots(m, vec![e(2), e(1)], &one));
    let anti = PolyDiffOp::with_slots(m, vec![e(1), e(2)], &one).sub(&PolyDiffOp::with_slots(m, vec![e(2), e(1)], &one));
    for (name, op) in [("symmetric", sym), ("antisymmetric", anti)] {
        match coboundary_witness(&op, CoboundaryBounds::default())? {
            Coboundary::Witness(w) => println!("{name}: d({}) = {}", w.encode(), op.encode()),
            Coboundary::NoWitness => println!("{name}: cocycle, no primitive within bounds"),
            Coboundary::NotCocycle(x) => println!("{name}: not a cocycle, d = {x}"),
        }
    }
    Ok(())
}
