use proptest::prelude::*;

use wsd_core::enumerators::macwilliams_transform;
use wsd_core::gf2::{dual_code, is_weakly_self_dual, mask, weight_distribution};
use wsd_core::gmat::{emit_gmat, parse_gmat};
use wsd_core::hilbert::{apply_s_theta, code_state, CosetProfile};
use wsd_core::zoo::random_weakly_self_dual;
use wsd_core::BinaryCode;

fn any_code() -> impl Strategy<Value = BinaryCode> {
    (1usize..=12).prop_flat_map(|n| {
        prop::collection::vec(any::<u64>(), 0..=n)
            .prop_map(move |words| {
                let words: Vec<u64> = words.into_iter().map(|w| w & mask(n)).collect();
                BinaryCode::span(n, &words).unwrap()
            })
    })
}

fn any_wsd() -> impl Strategy<Value = BinaryCode> {
    (1usize..=10)
        .prop_flat_map(|h| (Just(2 * h), 1..=h, any::<u64>()))
        .prop_map(|(n, k, seed)| random_weakly_self_dual(n, k, seed).unwrap())
}

proptest! {
    #[test]
    fn dual_is_an_involution(code in any_code()) {
        prop_assert_eq!(dual_code(&dual_code(&code)), code);
    }

    #[test]
    fn rank_plus_dual_rank_is_length(code in any_code()) {
        prop_assert_eq!(code.k() + dual_code(&code).k(), code.n());
    }

    #[test]
    fn macwilliams_is_an_involution(code in any_code()) {
        let dist = weight_distribution(&code).unwrap();
        let dual = macwilliams_transform(&dist, code.k()).unwrap();
        prop_assert_eq!(&dual, &weight_distribution(&dual_code(&code)).unwrap());
        prop_assert_eq!(macwilliams_transform(&dual, code.n() - code.k()).unwrap(), dist);
    }

    #[test]
    fn self_orthogonal_codes_have_even_weights(code in any_wsd()) {
        prop_assert!(is_weakly_self_dual(&code));
        prop_assert!(!weight_distribution(&code).unwrap().has_odd_weights());
    }

    #[test]
    fn rotation_preserves_norm(code in any_code(), theta in 0.0f64..std::f64::consts::PI) {
        let out = apply_s_theta(&code_state(&code).unwrap(), theta).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dual_mass_never_exceeds_one(code in any_code(), theta in 0.0f64..std::f64::consts::PI) {
        let m = CosetProfile::build(&code).unwrap().mass(theta);
        prop_assert!(m <= 1.0 + 1e-9);
    }

    #[test]
    fn gmat_round_trip(code in any_code()) {
        prop_assert_eq!(parse_gmat(&emit_gmat(&code)).unwrap(), code);
    }
}
