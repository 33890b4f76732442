use abc::*;
use proptest::prelude::*;
use q4core::{rat, renorm_product, BigRational, LoopParam, Q4Vec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel_residual(t: &AbcTriple<f64>, lp: &LoopParam<f64>) -> f64 {
    let r = verify_abc_eqs(t, lp).unwrap();
    let n = t.norm();
    r.iter().map(|x| x.abs()).fold(0.0, f64::max) / (1.0 + n * n)
}

#[test]
fn closed_form_solves_the_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 200 {
        let d = rng.gen_range(2.1..5.0);
        if (d - 3.0f64).abs() < 1e-3 {
            continue;
        }
        let a = rng.gen_range(-4.0..4.0);
        let lp = LoopParam::new(d);
        if let Ok(t) = solve_unique_family(&a, &lp) {
            worst = worst.max(rel_residual(&t, &lp));
            count += 1;
        }
    }
    assert!(worst <= 1e-10, "worst {worst:e}");
}

#[test]
fn closed_form_is_exact_over_the_rationals() {
    for d in [2i64, 4, 5, 7] {
        let lp = LoopParam::new(rat(d, 1));
        for a in [rat(1, 1), rat(-5, 3), rat(7, 2)] {
            let t = solve_unique_family(&a, &lp).unwrap();
            let zero = rat(0, 1);
            assert_eq!(verify_abc_eqs(&t, &lp).unwrap(), [zero.clone(), zero.clone(), zero]);
            assert_eq!(renorm_product(&t.a, &t.b, &lp).unwrap(), t.c);
        }
    }
}

#[test]
fn d3_is_routed_to_the_line_pair_branch() {
    let lp = LoopParam::new(rat(3, 1));
    assert_eq!(solve_unique_family(&rat(1, 1), &lp), Err(AbcError::UseD3Branch));
    let lp = LoopParam::new(3.0);
    assert_eq!(solve_unique_family(&1.0, &lp), Err(AbcError::UseD3Branch));
}

#[test]
fn zero_triple_and_poles() {
    let lp = LoopParam::new(2.5);
    let z = Q4Vec::new(0.0, 0.0, 0.0);
    let t = AbcTriple::new(z.clone(), z.clone(), z);
    assert_eq!(verify_abc_eqs(&t, &lp).unwrap(), [0.0; 3]);
    assert_eq!(solve_unique_family(&0.0, &lp), Err(AbcError::Domain("a")));
    assert_eq!(
        solve_unique_family(&(1.0 - 2.5), &lp),
        Err(AbcError::Domain("a + d - 1"))
    );
}

#[test]
fn brute_force_recovers_only_the_closed_form() {
    for (d, a) in [(2.5, 1.3), (4.0, -0.7), (2.1, 3.0), (4.7, 0.4), (3.3, 2.2)] {
        let lp = LoopParam::new(d);
        let rep = brute_force_family(a, d).unwrap();
        assert_eq!(rep.solutions.len(), 1, "d={d} a={a}: {rep:?}");
        let closed = solve_unique_family(&a, &lp).unwrap();
        let found = &rep.solutions[0];
        assert!(found.max_diff(&closed) <= 1e-6 * (1.0 + closed.norm()));
    }
}

#[test]
fn orbit_moves_preserve_solutions() {
    let lp = LoopParam::new(rat(5, 1));
    let t = solve_unique_family(&rat(2, 3), &lp).unwrap();
    for s in successors(&t, &lp).unwrap() {
        let zero = rat(0, 1);
        assert_eq!(verify_abc_eqs(&s, &lp).unwrap(), [zero.clone(), zero.clone(), zero]);
        for s2 in successors(&s, &lp).unwrap() {
            let r = verify_abc_eqs(&s2, &lp).unwrap();
            assert!(r.iter().all(|x| *x == rat(0, 1)));
        }
    }
}

fn admissible() -> impl Strategy<Value = (i64, BigRational)> {
    (
        prop_oneof![Just(2i64), Just(4), Just(5), Just(6)],
        (-30i64..30, 1i64..7).prop_map(|(n, m)| rat(n, m)),
    )
}

proptest! {
    #[test]
    fn family_c_is_the_renormalisation_product((d, a) in admissible()) {
        let lp = LoopParam::new(rat(d, 1));
        if let Ok(t) = solve_unique_family(&a, &lp) {
            prop_assert_eq!(renorm_product(&t.a, &t.b, &lp).unwrap(), t.c.clone());
            let r = verify_abc_eqs(&t, &lp).unwrap();
            prop_assert!(r.iter().all(|x| *x == rat(0, 1)));
        }
    }
}
