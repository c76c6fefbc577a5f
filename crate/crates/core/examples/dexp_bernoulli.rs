//! The operators `ω`, `μ` on `Sym(L) ⊗ L` and the Bernoulli-weighted series
//! that turns multiplication in `T(V)` into an operation on `Sym(L)`.

use hkr_algebra::freelie::{bch_coeffs, letter, tensor_mul, verify_theorem6, FreeLie, GenSet, SymLiePair, SymWord};
use hkr_algebra::{LinComb, Result};

fn main() -> Result<()> {
    let c = bch_coeffs(8);
    println!("y/(1-e^-y) coefficients: {}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));

    let lie = FreeLie::new(GenSet::odd(2));
    let x = lie.coordinates(&letter(0))?;
    let y = lie.coordinates(&letter(1))?;
    let (xid, yid) = (*x.keys().next().unwrap(), *y.keys().next().unwrap());

    // u = x (one factor), paired with y
    let u = SymWord::canonicalize(vec![xid]).unwrap().1;
    let p: SymLiePair = LinComb::basis((u.clone(), yid));
    println!("omega(x ⊗ y) = {:?}", lie.omega(&p)?);
    println!("mu(x ⊗ y) = {:?}", lie.mu(&p));
    let transformed = lie.dexp_transform(&p)?;
    println!("dexp(x ⊗ y) = {transformed:?}");

    // the defining property: I(u) y = I(dexp(u ⊗ y))
    let lhs = tensor_mul(&lie.symmetrize_word(&u), &letter(1));
    let rhs = lie.symmetrize(&transformed);
    println!("I(x)·y = {}", lie.format_tensor(&lhs));
    println!("I(dexp(x ⊗ y)) = {}  equal: {}", lie.format_tensor(&rhs), lhs == rhs);

    let report = verify_theorem6(&GenSet::odd(2), 3, 2).finish();
    println!("exhaustive check up to three factors: ok={} ({} checks)", report.ok, report.checks.len());
    Ok(())
}
