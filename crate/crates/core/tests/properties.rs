mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn frobenius_is_a_ring_map(p in prop::sample::select(vec![2u32, 3]), a in raw_cinf(), b in raw_cinf(), j in 0u32..3, k in 0u32..3) {
        frobenius_laws(p, &a, &b, j, k)?;
    }

    #[test]
    fn valuation_axioms_hold(p in prop::sample::select(vec![2u32, 3]), a in raw_cinf(), b in raw_cinf()) {
        valuation_axioms(p, &a, &b)?;
    }

    #[test]
    fn em_action_is_multiplicative(p in prop::sample::select(vec![2u32, 3]), m in raw_drinfeld(), a in raw_poly(3), b in raw_poly(2), x in raw_poly(2)) {
        em_multiplicative(p, &m, &a, &b, &x)?;
    }

    #[test]
    fn theta_shift_is_a_ring_map(p in prop::sample::select(vec![2u32, 3]), s in -2i64..3, y1 in raw_tseries(), y2 in raw_tseries()) {
        theta_shift_ring_map(p, s, &y1, &y2)?;
    }

    #[test]
    fn global_l_ignores_factor_order(p in prop::sample::select(vec![2u32, 3]), m in raw_drinfeld(), d in 1usize..4, perm in prop::collection::vec(0usize..64, 16)) {
        global_l_order_independent(p, &m, d, &perm)?;
    }

    #[test]
    fn cli_output_is_deterministic(args in cli_case()) {
        cli_deterministic(&args)?;
    }
}
