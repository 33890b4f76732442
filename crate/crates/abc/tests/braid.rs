use abc::*;
use num_complex::Complex64;
use q4core::{inverse_b, IehVec, LoopParam, Q4Vec};

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn params() -> Vec<LoopParam<C>> {
    vec![
        LoopParam::from_omega(c(0.7, 0.0)),
        LoopParam::from_d(1.0 + 2f64.sqrt()),
        LoopParam::from_d(2.61),
    ]
}

#[test]
fn rewrite_matches_a_up_to_its_b3_coefficient() {
    for lp in params() {
        for z in [c(0.37, 0.2), c(-0.4, 1.1), c(2.2, -0.3)] {
            let rw = braid_rewrite(z, &lp).unwrap();
            assert!(rw.residual <= 1e-9);
            let a = family_a(z, &lp).unwrap();
            let comb = rw.r.scale(rw.c_r) + rw.id.scale(rw.c_id) + rw.r_inv.scale(rw.c_rinv);
            assert!(a.max_diff(&comb.scale(rw.factor)) <= 1e-9 * (1.0 + a.norm()));
            assert!((rw.factor - a.r).norm() <= 1e-9 * (1.0 + a.r.norm()));
        }
    }
}

#[test]
fn bmw_relation() {
    // R − R⁻¹ = −(ω − ω⁻¹)(b2 − b3); the sum R + R⁻¹ is not a multiple of b2 + b3.
    for lp in params() {
        let w = lp.omega();
        let r = braid_r(&lp);
        let ri = inverse_b(&r, &lp).unwrap();
        let diff = r.clone() - ri.clone();
        let expect = (Q4Vec::b2() - Q4Vec::b3()).scale(-(w - 1.0 / w));
        assert!(diff.max_diff(&expect) < 1e-12);
        let sum = r + ri;
        let printed = (Q4Vec::b2() + Q4Vec::b3()).scale(-(w + 1.0 / w));
        assert!(sum.max_diff(&printed) > 1e-3);
    }
}

#[test]
fn braid_element_has_three_distinct_eigenvalues() {
    let lp = LoopParam::from_d(2.61);
    let s = braid_r(&lp).to_ieh().spectrum(&lp);
    assert!((s[0] - s[1]).norm() > 1e-3 && (s[1] - s[2]).norm() > 1e-3);
    let _ = IehVec::<C>::one();
}

#[test]
fn rewrite_refuses_d3() {
    let lp = LoopParam::from_d(3.0);
    assert_eq!(braid_rewrite(c(0.3, 0.1), &lp), Err(AbcError::Domain("omega - 1")));
}

#[test]
fn izergin_korepin_rescaling() {
    for lp in params() {
        let w = lp.omega();
        let x = c(0.8, -0.45);
        let z = w * w / x;
        let ap = izergin_korepin(x, &lp).unwrap();
        let a = family_a(z, &lp).unwrap();
        let rw = braid_rewrite(z, &lp).unwrap();
        let k = (1.0 + z) * (w - 1.0) * w.powf(-1.5) / rw.factor;
        assert!(ap.max_diff(&a.scale(k)) <= 1e-9 * (1.0 + ap.norm()));
        // In the braid basis A′ has R-coefficient ω^{−3/2}.
        assert!((rw.c_r * (1.0 + z) * (w - 1.0) * w.powf(-1.5) - w.powf(-1.5)).norm() < 1e-12);
    }
}
