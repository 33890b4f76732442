use abc::*;
use num_complex::Complex64;
use q4core::LoopParam;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trees::{full_tree, transfer_spec, LeafWord};

type C = Complex64;

fn setup() -> (LoopParam<C>, C, C, CoherentChoice) {
    let lp = LoopParam::from_omega(C::new(0.7, 0.0));
    let z0 = C::new(0.43, 0.21);
    let z1 = C::new(-0.62, 0.35);
    let ch = CoherentChoice::from_z(z0, z1, &lp, 20).unwrap();
    (lp, z0, z1, ch)
}

fn w(s: &str) -> LeafWord {
    s.parse().unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, max: usize) -> LeafWord {
    let n = rng.gen_range(1..=max);
    LeafWord((0..n).map(|_| rng.gen_range(0..2u8)).collect())
}

#[test]
fn top_labels_are_a_of_z() {
    let (lp, z0, z1, ch) = setup();
    let a0 = family_a(z0, &lp).unwrap();
    let a1 = family_a(z1, &lp).unwrap();
    assert!(ch.label(&w("0")).unwrap().max_diff(&a0) < 1e-12);
    assert!(ch.label(&w("1")).unwrap().max_diff(&a1) < 1e-12);
    let spec = transfer_spec(&full_tree(1), &ch).unwrap();
    let labels: Vec<_> = spec.labels().cloned().collect();
    assert!(labels[0].max_diff(&a0) < 1e-12 && labels[1].max_diff(&a1) < 1e-12);
    assert_eq!(ch.label(&LeafWord::empty()), Err(AbcError::EmptyWord));
}

#[test]
fn every_vertex_solves_the_coefficient_equations() {
    let (lp, _, _, ch) = setup();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let word = random_word(&mut rng, 7);
        let t = ch.vertex(&word).unwrap();
        let r = verify_abc_eqs(&t, &lp).unwrap();
        let scale = 1.0 + t.norm().powi(2);
        assert!(r.iter().all(|x| x.norm() <= 1e-9 * scale), "{word}: {r:?}");
    }
}

#[test]
fn labels_have_the_precision_form() {
    let (lp, z0, z1, ch) = setup();
    let om = lp.omega();
    for len in 1..=8 {
        for word in LeafWord::all_of_length(len) {
            let p = ch.precision(&word).unwrap();
            let z = if word.first() == Some(0) { z0 } else { z1 };
            let zw = z * om.powi(p.pow) * f64::from(p.eps);
            let expect = family_a(zw, &lp).unwrap().scale(p.kappa);
            let got = ch.label(&word).unwrap();
            assert!(got.max_diff(&expect) <= 1e-8 * (1.0 + got.norm()), "{word}");
            assert!((p.kappa - got.q).norm() <= 1e-8 * (1.0 + got.q.norm()));
            assert!((ch.spectral_value(&word).unwrap() - zw).norm() < 1e-12 * (1.0 + zw.norm()));
        }
    }
}

#[test]
fn entries_are_deterministic() {
    let (_, _, _, ch) = setup();
    let e1 = ch.entry(&w("0110")).unwrap();
    let e2 = ch.clone().entry(&w("0110")).unwrap();
    assert_eq!(e1, e2);
    assert_eq!(ch.entry(&w("0")).unwrap().class, Class::C);
    assert_eq!(ch.entry(&w("00")).unwrap().class, Class::A);
    assert_eq!(ch.entry(&w("01")).unwrap().class, Class::B);
    let e = ch.entry(&w("000")).unwrap();
    assert_eq!((e.class, e.k), (Class::B, -1));
    let e = ch.entry(&w("011")).unwrap();
    assert_eq!((e.class, e.k), (Class::A, 1));
}

#[test]
fn excluded_spectral_values_are_refused() {
    let lp = LoopParam::from_omega(C::new(0.7, 0.0));
    let bad = lp.omega().powi(3);
    assert_eq!(
        CoherentChoice::from_z(bad, C::new(0.3, 0.1), &lp, 20).unwrap_err(),
        AbcError::Scales(bad)
    );
}

#[test]
fn d3_choice_from_line_pair_roots() {
    let lp = LoopParam::from_d(3.0);
    let ch = CoherentChoice::from_roots(lp.clone(), [Root::d3(0.1).unwrap(), Root::d3(0.45).unwrap()]);
    for len in 1..=3 {
        for word in LeafWord::all_of_length(len) {
            let t = ch.vertex(&word).unwrap();
            let r = verify_abc_eqs(&t, &lp).unwrap();
            assert!(r.iter().all(|x| x.norm() <= 1e-9 * (1.0 + t.norm().powi(2))), "{word}");
        }
    }
    assert!(ch.precision(&w("0")).is_err());
}
