use abc::*;
use q4core::{alpha, rat, LoopParam, Q4Vec};

fn qv(p: f64, q: f64, r: f64) -> Q4Vec<f64> {
    Q4Vec::new(p, q, r)
}

#[test]
fn branch_one_at_s_one() {
    let t = d3_solutions(D3Branch::One, &rat(1, 1)).unwrap();
    assert_eq!(t.a, Q4Vec::new(rat(-4, 1), rat(1, 1), rat(0, 1)));
    assert_eq!(t.b, Q4Vec::new(rat(-3, 1), rat(1, 1), rat(0, 1)));
    assert_eq!(t.c, Q4Vec::new(rat(-3, 1), rat(3, 2), rat(3, 2)));
}

#[test]
fn both_branches_solve_the_equations_exactly() {
    let lp = LoopParam::new(rat(3, 1));
    for x in [rat(2, 1), rat(1, 7), rat(-5, 4), rat(9, 5)] {
        for b in [D3Branch::One, D3Branch::Two] {
            let t = d3_solutions(b, &x).unwrap();
            let r = verify_abc_eqs(&t, &lp).unwrap();
            assert!(r.iter().all(|v| *v == rat(0, 1)), "{b:?} {x}");
        }
    }
}

#[test]
fn alpha_relations() {
    let lp = LoopParam::new(3.0);
    for s in [0.17, 0.55, -1.2, 2.9] {
        let a1 = d3_a1(&s).unwrap();
        let lhs = alpha(&a1, &lp).unwrap();
        let rhs = d3_a2(&(s + 1.0)).unwrap().scale((3.0 * s - 1.0) / (3.0 * s));
        assert!(lhs.max_diff(&rhs) < 1e-10);
        let lhs = alpha(&lhs, &lp).unwrap();
        let f = (3.0 * s / (3.0 * s - 1.0)) * ((3.0 * s + 1.0) / (3.0 * s + 2.0));
        let rhs = d3_a1(&(s + 1.0)).unwrap().scale(f);
        assert!(lhs.max_diff(&rhs) < 1e-10);
    }
}

#[test]
fn c_members_lie_on_the_other_branch() {
    // C2(t) = A1(t − 1/3) exactly; C1(s) = 3s/(3s−1)·A2(s + 2/3).
    for x in [0.17, 0.55, -1.2, 2.9] {
        let c2 = d3_solutions(D3Branch::Two, &x).unwrap().c;
        assert!(c2.max_diff(&d3_a1(&(x - 1.0 / 3.0)).unwrap()) < 1e-12);
        let c1 = d3_solutions(D3Branch::One, &x).unwrap().c;
        let a2 = d3_a2(&(x + 2.0 / 3.0)).unwrap();
        assert!(c1.max_diff(&a2.scale(3.0 * x / (3.0 * x - 1.0))) < 1e-10);
        // The printed scalar (3s−1)/(3s) only matches projectively.
        assert!(c1.projective_residual(&a2) < 1e-12);
        assert!(c1.max_diff(&a2.scale((3.0 * x - 1.0) / (3.0 * x))) > 1e-3);
    }
}

#[test]
fn poles() {
    assert_eq!(v_of_s(&rat(2, 3)), Err(AbcError::Domain("2 - 3s")));
    assert_eq!(w_of_t(&rat(4, 3)), Err(AbcError::Domain("3t - 4")));
    assert_eq!(d3_solutions(D3Branch::One, &rat(1, 3)), Err(AbcError::Domain("v")));
    assert_eq!(d3_solutions(D3Branch::Two, &rat(1, 1)), Err(AbcError::Domain("w + 1")));
    let _ = qv(0.0, 0.0, 0.0);
}

#[test]
fn scaling_predicate_lattice() {
    for n in -3..=3 {
        for off in [0.0, 1.0 / 3.0, 2.0 / 3.0] {
            let rep = d3_scaling_predicate(off + n as f64, 20);
            assert!(!rep.ok, "s = {}", off + n as f64);
        }
    }
    for s in [0.1, 0.45, 0.81, 0.2, 0.6, 0.95] {
        let rep = d3_scaling_predicate(s, 20);
        assert!(rep.ok, "{rep:?}");
    }
    // Shift stability away from the lattice.
    for s in [0.1, 0.45, 0.81] {
        assert_eq!(d3_scaling_predicate(s, 6).ok, d3_scaling_predicate(s + 1.0, 6).ok);
    }
}
