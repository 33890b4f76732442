use proptest::prelude::*;
use q4core::*;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn rat_vec() -> impl Strategy<Value = Q4Vec<BigRational>> {
    (small_rat(), small_rat(), small_rat()).prop_map(|(p, q, r)| Q4Vec::new(p, q, r))
}

fn real_vec() -> impl Strategy<Value = Q4Vec<f64>> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(p, q, r)| Q4Vec::new(p, q, r))
}

fn loop_value() -> impl Strategy<Value = f64> {
    prop_oneof![1.2f64..2.9, 3.1f64..6.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn beta_inverts_alpha(x in real_vec(), d in loop_value()) {
        let lp = LoopParam::new(d);
        if let Ok(a) = alpha(&x, &lp) {
            if let Ok(b) = beta(&a, &lp) {
                let scale = 1.0 + x.norm() + a.norm();
                prop_assert!(b.max_diff(&x) <= 1e-9 * scale * scale, "{:?} -> {:?}", x, b);
            }
        }
    }

    #[test]
    fn closed_form_alpha_matches_idempotent_route(x in rat_vec(), d in prop_oneof![Just(2i64), Just(4), Just(5), Just(7)]) {
        let lp = LoopParam::new(rat(d, 1));
        match (alpha(&x, &lp), alpha_via_ieh(&x, &lp)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), _) | (_, Err(_)) => {}
        }
    }

    #[test]
    fn d2_image_lies_on_collapse_line(x in rat_vec()) {
        let y = renorm_r(&x, &LoopParam::new(rat(2, 1))).unwrap();
        prop_assert_eq!(y.q.clone(), -y.r.clone());
    }

    #[test]
    fn renorm_is_homogeneous_quadratic(x in rat_vec(), l in small_rat(), d in prop_oneof![Just(2i64), Just(3), Just(5)]) {
        let lp = LoopParam::new(rat(d, 1));
        let lhs = renorm_r(&x.scale(l.clone()), &lp).unwrap();
        let rhs = renorm_r(&x, &lp).unwrap().scale(l.clone() * l);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chart_lift_round_trip(u in small_rat(), v in small_rat()) {
        let x = Q4Vec::lift_coords(u.clone(), v.clone());
        prop_assert_eq!(x.chart_coords().unwrap(), (u, v));
    }

    #[test]
    fn spectrum_is_multiplicative(
        a in (small_rat(), small_rat(), small_rat()),
        b in (small_rat(), small_rat(), small_rat()),
        d in prop_oneof![Just(2i64), Just(3), Just(6)],
    ) {
        let lp = LoopParam::new(rat(d, 1));
        let x = IehVec::new(a.0, a.1, a.2);
        let y = IehVec::new(b.0, b.1, b.2);
        let sx = x.spectrum(&lp);
        let sy = y.spectrum(&lp);
        let sxy = x.mul(&y, &lp).spectrum(&lp);
        for i in 0..3 {
            prop_assert_eq!(sxy[i].clone(), sx[i].clone() * sy[i].clone());
        }
    }

    #[test]
    fn rotation_is_an_involution(x in rat_vec(), d in prop_oneof![Just(2i64), Just(3), Just(5)]) {
        let lp = LoopParam::new(rat(d, 1));
        prop_assert_eq!(rotate_b(&rotate_b(&x, &lp).unwrap(), &lp).unwrap(), x);
    }

    #[test]
    fn remark_element_inverse_is_not_coinvertible(d in 2i64..12) {
        let lp = LoopParam::new(rat(d, 1));
        let x = Q4Vec::new(rat(0, 1), rat(d * d - 1, 1), rat(-d, 1));
        prop_assert!(is_invertible(&x, &lp));
        prop_assert!(is_coinvertible(&x, &lp));
        let xi = inverse_b(&x, &lp).unwrap();
        prop_assert!(!is_coinvertible(&xi, &lp));
    }
}
