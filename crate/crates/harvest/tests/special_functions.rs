use harvest::numkernel::{erfcx, gamma, sinpi};
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #[test]
    fn gamma_reflection(x in -5.0f64..5.0) {
        prop_assume!((x - x.round()).abs() > 1e-3);
        let v = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * sinpi(x) / PI;
        prop_assert!((v - 1.0).abs() < 1e-12, "x={x}: {v}");
    }

    #[test]
    fn erfcx_is_decreasing(x in 0.0f64..50.0, dx in 1e-6f64..5.0) {
        prop_assert!(erfcx(x + dx) < erfcx(x));
    }

    #[test]
    fn erfc_lies_in_unit_interval(x in 0.0f64..25.0) {
        let erfc = erfcx(x) * (-x * x).exp();
        prop_assert!(erfc > 0.0 && erfc <= 1.0);
    }
}
