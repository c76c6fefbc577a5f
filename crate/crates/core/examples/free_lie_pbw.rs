//! The free Lie (super)algebra on odd generators: brackets, a basis, the
//! symmetrization `I : Sym(L) -> T(V)` and its inverse.

use hkr_algebra::freelie::{letter, pbw_dimensions, witt_dimension, FreeLie, GenSet};
use hkr_algebra::Result;

fn main() -> Result<()> {
    let lie = FreeLie::new(GenSet::odd(2));
    let (x, y) = (letter(0), letter(1));
    println!("[x, x] = {}", lie.format_tensor(&lie.bracket(&x, &x)));
    println!("[x, y] = {}", lie.format_tensor(&lie.bracket(&x, &y)));

    for id in lie.lie_basis_up_to_len(3) {
        println!("basis {id:?}: {}", lie.format_tensor(&lie.lie_element(id)));
    }

    for n in 1..=5 {
        let (sym, tensor) = pbw_dimensions(&lie, n);
        println!("n={n}: dim Sym(L)_n = {sym}, dim T(V)_n = {tensor}");
    }
    let even: Vec<usize> = (1..=6).map(|n| witt_dimension(2, n)).collect();
    println!("Witt dimensions for two even generators: {even:?}");

    // invert the symmetrization on x⊗y
    let xy = hkr_algebra::freelie::tensor_mul(&x, &y);
    let u = lie.inverse_g(&xy)?;
    println!("G(x⊗y) = {u:?}");
    println!("I(G(x⊗y)) = {}", lie.format_tensor(&lie.symmetrize(&u)));
    Ok(())
}
