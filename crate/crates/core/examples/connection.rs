//! The flat connection `∇_Y` and its interaction with the Hochschild
//! differential on the Lie subalgebra generated by first-order operators.

use hkr_algebra::dpoly::{
    bracket_d, connection_nabla, hochschild_d, lie_membership_ld1, theorem2_holds, PolyDiffOp, Polynomial,
};
use hkr_algebra::Result;

fn main() -> Result<()> {
    let m = 2;
    let x2 = Polynomial::var(m, 2);
    let a = PolyDiffOp::partial(m, 1).mul_poly(&x2);
    let b = PolyDiffOp::partial(m, 2);
    let d = bracket_d(&a, &b);
    println!("D = [x2 ∂_1, ∂_2] = {d}");
    println!("D in L(D^1): {}", lie_membership_ld1(&d));
    for y in 1..=m {
        let nd = connection_nabla(y, &d)?;
        println!("∇_{y} D = {nd}");
        let lhs = hochschild_d(&nd).sub(&connection_nabla(y, &hochschild_d(&d))?);
        println!("  (d∇ - ∇d) D = {lhs}");
        println!("  [D, ∂_{y}] = {}", bracket_d(&d, &PolyDiffOp::partial(m, y)));
        println!("  identity holds: {}", theorem2_holds(&d, y)?);
    }
    Ok(())
}
