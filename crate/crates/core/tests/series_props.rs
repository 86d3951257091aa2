mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_commutes(f in series(3), g in series(3)) {
        multiply_commutes(&f, &g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn product_associates_within_order(f in series(2), g in series(2), h in series(2)) {
        multiply_associates(&f, &g, &h).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn transpose_is_an_involution_and_intertwines(f in series(3), g in series(3)) {
        transpose_involution(&f, &g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn poisson_extension_restricts_back(b in circle(ORDER)) {
        poisson_restricts(&b).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn division_by_one_minus_zeta_eta(g in series(5)) {
        divide_inverts(&g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn majorant_is_submultiplicative(f in series(4), g in series(4), sigma in 0.01f64..0.5) {
        majorant_submultiplicative(&f, &g, sigma).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn realisation_matches_restriction(f in series(ORDER)) {
        evaluation_consistent(&f).map_err(TestCaseError::fail)?;
        evaluation_consistent(&f.hermitian_transpose()).map_err(TestCaseError::fail)?;
    }
}
