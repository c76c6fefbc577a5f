//! The Dynkin element as an idempotent onto Lie elements.

use hkr_algebra::freelie::{letter, tensor_mul, FreeLie, GenSet};
use hkr_algebra::report::CheckStatus;

fn main() {
    let lie = FreeLie::new(GenSet::odd(2));
    let xyx = [0, 1, 0].iter().fold(hkr_algebra::freelie::unit_tensor(), |acc, &g| tensor_mul(&acc, &letter(g)));
    let p = lie.dynkin_project(&xyx);
    println!("(1/3) e_3 (x⊗y⊗x) = {}", lie.format_tensor(&p));
    println!("is Lie: {}, idempotent: {}", lie.is_lie(&p), lie.dynkin_project(&p) == p);

    let report = hkr_algebra::freelie::verify_dynkin(6, 2).finish();
    for c in &report.checks {
        let s = if c.status == CheckStatus::Pass { "PASS" } else { "FAIL" };
        println!("{s} {} {}", c.name, c.detail);
    }
}
