use std::cmp::Ordering;
use std::sync::OnceLock;

use proptest::prelude::*;
use qbf_core::cb_region::{cb_extends, Beta};
use qbf_core::exact::cmp_sqrt_sum;
use qbf_core::qnorm::{lminus_norm_exponent, rmatrix_sup_exponent, SessionConfig};
use qbf_core::{
    character_product_decompose, contains_trivial, tensor_decompose, weight_multiplicities,
    Precision, RootSystem, Weight,
};

const TYPES: &[&str] = &["A1", "A2", "B2", "G2", "A3", "C3"];

fn systems() -> &'static Vec<RootSystem> {
    static CELL: OnceLock<Vec<RootSystem>> = OnceLock::new();
    CELL.get_or_init(|| {
        TYPES
            .iter()
            .map(|t| RootSystem::new(&t.parse().unwrap()).unwrap())
            .collect()
    })
}

fn weight(rank: usize, max: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(0..=max, rank).prop_map(Weight::new)
}

/// A root system with two dominant weights of small height.
fn pair() -> impl Strategy<Value = (usize, Weight, Weight)> {
    (0..TYPES.len()).prop_flat_map(|i| {
        let rank = systems()[i].rank();
        let max = if rank >= 3 { 1 } else { 2 };
        (Just(i), weight(rank, max), weight(rank, max))
    })
}

fn any_weight() -> impl Strategy<Value = (usize, Weight, Weight)> {
    (0..TYPES.len()).prop_flat_map(|i| {
        let rank = systems()[i].rank();
        let v = prop::collection::vec(-4i64..=4, rank).prop_map(Weight::new);
        (Just(i), v.clone(), v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_is_symmetric_and_cauchy_schwarz((i, x, y) in any_weight()) {
        let rs = &systems()[i];
        let xy = rs.inner_product(&x, &y).unwrap();
        prop_assert_eq!(&xy, &rs.inner_product(&y, &x).unwrap());
        prop_assert!(&xy * &xy <= rs.norm_sq(&x).unwrap() * rs.norm_sq(&y).unwrap());
    }

    #[test]
    fn conjugation_is_an_isometric_involution((i, mu, _) in pair()) {
        let rs = &systems()[i];
        let bar = rs.conjugate_weight(&mu).unwrap();
        prop_assert_eq!(rs.conjugate_weight(&bar).unwrap(), mu.clone());
        prop_assert_eq!(rs.norm_sq(&bar).unwrap(), rs.norm_sq(&mu).unwrap());
        prop_assert_eq!(rs.casimir(&bar).unwrap(), rs.casimir(&mu).unwrap());
        prop_assert_eq!(rs.weyl_dim(&bar).unwrap(), rs.weyl_dim(&mu).unwrap());
        prop_assert!(contains_trivial(rs, &mu, &bar).unwrap());
    }

    #[test]
    fn freudenthal_dimension_matches_weyl((i, mu, _) in pair()) {
        let rs = &systems()[i];
        let ch = weight_multiplicities(rs, &mu).unwrap();
        prop_assert_eq!(ch.dimension(rs) as u128, rs.weyl_dim(&mu).unwrap());
    }

    #[test]
    fn fusion_is_commutative_and_matches_characters((i, l, m) in pair()) {
        let rs = &systems()[i];
        let lm = tensor_decompose(rs, &l, &m).unwrap();
        let ml = tensor_decompose(rs, &m, &l).unwrap();
        prop_assert_eq!(lm.components(), ml.components());
        let oracle = character_product_decompose(rs, &l, &m).unwrap();
        prop_assert_eq!(lm.components(), oracle.components());
        prop_assert_eq!(lm.total_dimension(rs).unwrap(), rs.weyl_dim(&l).unwrap() * rs.weyl_dim(&m).unwrap());
        prop_assert_eq!(lm.multiplicity(&(&l + &m)), 1);
    }

    #[test]
    fn fusion_components_obey_norm_and_casimir_bounds((i, l, m) in pair()) {
        let rs = &systems()[i];
        let top = rs.casimir(&(&l + &m)).unwrap();
        let (nl, nm) = (rs.norm_sq(&l).unwrap(), rs.norm_sq(&m).unwrap());
        let (cl, cm) = (rs.casimir(&l).unwrap(), rs.casimir(&m).unwrap());
        for nu in tensor_decompose(rs, &l, &m).unwrap().components().keys() {
            prop_assert!(rs.casimir(nu).unwrap() <= top.clone());
            prop_assert_ne!(cmp_sqrt_sum(&rs.norm_sq(nu).unwrap(), &nl, &nm), Ordering::Greater);
            prop_assert_ne!(cmp_sqrt_sum(&rs.casimir(nu).unwrap(), &cl, &cm), Ordering::Greater);
        }
    }

    #[test]
    fn both_norm_routes_agree((i, l, m) in pair()) {
        let rs = &systems()[i];
        let closed = lminus_norm_exponent(rs, &l, &m).unwrap();
        let sup = rmatrix_sup_exponent(rs, &l, &m).unwrap();
        prop_assert_eq!(closed.exponent(), sup.exponent());
        prop_assert_eq!(closed.exponent(), &(-rs.inner_product(&l, &m).unwrap()));
    }

    #[test]
    fn extension_is_monotone_in_beta(
        (i, l, _) in pair(),
        q in 0.05f64..0.95,
        b1 in 1.0f64..20.0,
        db in 0.0f64..20.0,
    ) {
        let rs = &systems()[i];
        let p = Precision::new(30);
        let cfg = SessionConfig::new(q, p).unwrap();
        let low = cb_extends(rs, &cfg, &Beta::new(b1, p).unwrap(), &l).unwrap();
        let high = cb_extends(rs, &cfg, &Beta::new(b1 + db, p).unwrap(), &l).unwrap();
        prop_assert!(!low.extends || high.extends);
        // compare against the closed-form threshold β ≥ q^{−|λ|}
        let beta_min = qbf_core::real::to_f64(&low.beta_min);
        if (b1 / beta_min - 1.0).abs() > 1e-9 {
            prop_assert_eq!(low.extends, b1 >= beta_min);
        }
    }
}
