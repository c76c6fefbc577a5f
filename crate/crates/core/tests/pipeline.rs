//! Cross-module properties: words through `Theta`, polyvectors through the
//! symmetrized Lie algebra and into `D_poly`.

use hkr_algebra::dpoly::{hochschild_d, MultiIndex, Polynomial};
use hkr_algebra::glin::qi;
use hkr_algebra::freelie::{letter, tensor_mul, unit_tensor, GenSet};
use hkr_algebra::hkr::{i_hkr, HkrContext, PolyExterior};
use hkr_algebra::theta::Theta;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn psi_multiplies_out_to_the_input_word(gs in proptest::collection::vec(0u32..2, 1..5)) {
        let th = Theta::new(GenSet::odd(2));
        let psi = th.psi_on_generators(&gs).unwrap();
        let word = gs.iter().fold(unit_tensor(), |acc, &g| tensor_mul(&acc, &letter(g)));
        prop_assert_eq!(th.flatten(&psi), word);
    }

    #[test]
    fn sym_beta_route_agrees_with_hkr(
        dirs in proptest::collection::vec(1usize..4, 0..4),
        exp in proptest::collection::vec(0u32..2, 3),
    ) {
        let m = 3;
        let ctx = HkrContext::new(m).unwrap();
        let g = Polynomial::monomial(MultiIndex(exp), qi(1));
        let xi = PolyExterior::wedge(m, &dirs, &g).unwrap();
        let direct = i_hkr(&xi);
        prop_assert_eq!(ctx.i_sym(&ctx.sym_beta(&xi)), direct.clone());
        prop_assert!(hochschild_d(&direct).is_zero());
    }
}
