use dynsys::*;
use proptest::prelude::*;
use q4core::{rat, renorm_r, ChartPoint, LoopParam, Q4Vec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn backward_then_forward_is_identity(u in -1.0f64..1.0, v in -1.0f64..1.0, d in 2.2f64..5.0) {
        let lp = LoopParam::new(d);
        let x = ChartPoint::new(u, v);
        // Take an image point so that a preimage exists, and seed near it.
        if let Ok(y) = chart_map(&x, &lp) {
            if y.u.hypot(y.v) < 1e3 {
                if let Ok(pre) = back_iterate(y, x, &lp, 1) {
                    let again = chart_map(&pre[0], &lp).unwrap();
                    prop_assert!(again.dist(&y) <= 1e-9 * (1.0 + y.u.hypot(y.v)));
                }
            }
        }
    }

    #[test]
    fn jacobian_agrees_with_differences(u in -2.0f64..2.0, v in -2.0f64..2.0, d in 1.5f64..30.0) {
        let lp = LoopParam::new(d);
        let x = ChartPoint::new(u, v);
        let Ok(j) = jacobian(&x, &lp) else { return Ok(()) };
        let h = 1e-6;
        let f = |a: f64, b: f64| chart_map(&ChartPoint::new(a, b), &lp);
        if let (Ok(pu), Ok(mu), Ok(pv), Ok(mv)) = (f(u + h, v), f(u - h, v), f(u, v + h), f(u, v - h)) {
            let fd = [
                [(pu.u - mu.u) / (2.0 * h), (pv.u - mv.u) / (2.0 * h)],
                [(pu.v - mu.v) / (2.0 * h), (pv.v - mv.v) / (2.0 * h)],
            ];
            let big = j.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            // Near the circle at infinity the difference quotient itself is unreliable.
            prop_assume!(big < 1e3);
            for i in 0..2 {
                for k in 0..2 {
                    prop_assert!((fd[i][k] - j[i][k]).abs() <= 1e-6 * big.max(1.0), "{:?} vs {:?}", fd, j);
                }
            }
        }
    }

    #[test]
    fn d2_collapse_line_is_exact(n1 in -30i64..30, d1 in 1i64..7, n2 in -30i64..30, d2 in 1i64..7) {
        let lp = LoopParam::new(rat(2, 1));
        let y = renorm_r(&Q4Vec::lift_coords(rat(n1, d1), rat(n2, d2)), &lp).unwrap();
        prop_assert_eq!(y.q.clone(), -y.r.clone());
    }
}
