use num_complex::Complex64;
use planar::max_diff;
use proptest::prelude::*;
use tloracle::*;

const DELTA: f64 = DEFAULT_DELTA;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn e(n: usize, i: usize) -> TLElement {
    TLElement::generator(n, i, DELTA).unwrap()
}

#[test]
fn catalan_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| TLDiagram::enumerate(n, n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 14, 42]);
    assert_eq!(TLDiagram::enumerate(2, 4).len(), 5);
    assert!(TLDiagram::enumerate(1, 2).is_empty());
    assert!(TLDiagram::enumerate(4, 4).iter().all(TLDiagram::is_planar));
}

#[test]
fn crossing_matching_is_rejected() {
    use Point::*;
    let bad = TLDiagram::from_pairs(2, 2, &[(Bottom(0), Top(1)), (Bottom(1), Top(0))]);
    assert!(matches!(bad, Err(TlError::Matching(_))));
    let bad = TLDiagram::from_pairs(4, 0, &[(Bottom(0), Bottom(2)), (Bottom(1), Bottom(3))]);
    assert!(bad.is_err());
}

#[test]
fn generator_relations() {
    for n in 2..=5 {
        for i in 0..n - 1 {
            let sq = tl_compose(&e(n, i), &e(n, i)).unwrap();
            assert!(sq.max_diff(&e(n, i).scale(c(DELTA))) < 1e-15);
            if i + 2 < n {
                let w = tl_compose(&tl_compose(&e(n, i), &e(n, i + 1)).unwrap(), &e(n, i)).unwrap();
                assert!(w.max_diff(&e(n, i)) < 1e-15);
                let w = tl_compose(&tl_compose(&e(n, i + 1), &e(n, i)).unwrap(), &e(n, i + 1)).unwrap();
                assert!(w.max_diff(&e(n, i + 1)) < 1e-15);
            }
            let one = TLElement::identity(n, DELTA);
            assert_eq!(tl_compose(&one, &e(n, i)).unwrap(), e(n, i));
            assert_eq!(tl_compose(&e(n, i), &one).unwrap(), e(n, i));
        }
    }
    // Far generators commute.
    assert_eq!(
        tl_compose(&e(4, 0), &e(4, 2)).unwrap(),
        tl_compose(&e(4, 2), &e(4, 0)).unwrap()
    );
}

#[test]
fn size_and_parameter_mismatch() {
    assert!(matches!(
        tl_compose(&e(3, 0), &e(4, 0)),
        Err(TlError::SizeMismatch { upper: 3, lower: 4 })
    ));
    let other = TLElement::generator(3, 0, 1.5).unwrap();
    assert!(matches!(
        tl_compose(&e(3, 0), &other),
        Err(TlError::ParameterMismatch { .. })
    ));
    let u = SpinRep::from_delta(1.5).unwrap().u;
    assert!(matches!(tl_rep(&e(3, 0), u), Err(TlError::ParameterMismatch { .. })));
}

#[test]
fn jones_wenzl() {
    let p = jw2(DELTA).unwrap();
    assert!(tl_compose(&p, &p).unwrap().max_diff(&p) < 1e-15);
    assert!(tl_compose(&e(2, 0), &p).unwrap().terms().all(|(_, c)| c.norm() < 1e-15));
    assert!(tl_compose(&p, &e(2, 0)).unwrap().terms().all(|(_, c)| c.norm() < 1e-15));
    assert!(matches!(jw2(0.0), Err(TlError::Domain(_))));
    let rep = SpinRep::from_delta(DELTA).unwrap();
    let m = tl_rep(&p, rep.u).unwrap();
    let sv = m.svd(false, false).singular_values;
    assert_eq!(sv.iter().filter(|s| **s > 1e-9).count(), 3);
}

#[test]
fn representation_is_an_algebra_map() {
    for n in 1..=4 {
        assert!(homomorphism_residual(n, DELTA).unwrap() < 1e-12, "n = {n}");
    }
    assert!(homomorphism_residual(3, 5.2).unwrap() < 1e-12);
    let rep = SpinRep::from_delta(DELTA).unwrap();
    for n in 2..=4 {
        for i in 0..n - 1 {
            let m = tl_rep(&e(n, i), rep.u).unwrap();
            assert!(max_diff(&(&m * &m), &(&m * c(DELTA))) < 1e-12);
        }
    }
}

#[test]
fn weighted_trace_counts_closure_loops() {
    // Loop count of the closure, found by tracing, against the trace of the
    // representation weighted by diag(u, 1/u) on every strand.
    let rep = SpinRep::from_delta(DELTA).unwrap();
    for n in 1..=4 {
        let w1 = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![rep.u, 1.0 / rep.u]));
        let mut w = nalgebra::DMatrix::<Complex64>::identity(1, 1);
        for _ in 0..n {
            w = w.kronecker(&w1);
        }
        for d in TLDiagram::enumerate(n, n) {
            let loops = d.closure_loops().unwrap();
            let tr = (&w * rep.diagram(&d)).trace();
            assert!(
                (tr - c(DELTA.powi(loops as i32))).norm() < 1e-12,
                "{d}: {tr} vs {loops} loops"
            );
        }
    }
}

#[test]
fn faithful_on_four_strands() {
    assert_eq!(tl_rank(4, DELTA).unwrap(), (14, 14));
    assert_eq!(tl_rank(3, DELTA).unwrap(), (5, 5));
}

#[test]
fn cabled_site_space() {
    let cab = Cable::new(DELTA).unwrap();
    assert_eq!(cab.iota.shape(), (4, 3));
    assert!(max_diff(&(&cab.pi * &cab.iota), &planar::Mat::identity(3, 3)) < 1e-14);
    let m = &cab.model;
    assert!((cab.loop_value() - c(DELTA * DELTA - 1.0)).norm() < 1e-12);
    let d = m.loop_value();
    let (id, e, h) = (m.identity(), m.cupcap(), m.two_vertex());
    assert!(max_diff(&(&e * &e), &(&e * d)) < 1e-10);
    assert!(max_diff(&(&h * &h), &h) < 1e-12);
    assert!(planar::max_abs(&(&e * &h)) < 1e-12 && planar::max_abs(&(&h * &e)) < 1e-12);
    assert!(max_diff(&(m.ys() * m.y()), &planar::Mat::identity(3, 3)) < 1e-12);
    assert!((e.trace() - d).norm() < 1e-12);
    assert!((h.trace() - c(3.0)).norm() < 1e-12);
    assert!(max_diff(&m.rot(&id), &e) < 1e-12);
    assert!(max_diff(&m.rot(&e), &id) < 1e-12);
}

#[test]
fn compressed_vertex_is_unique_and_cyclic() {
    let cab = Cable::new(DELTA).unwrap();
    assert_eq!(cab.three_box_dimension().unwrap(), 1);
    assert!(cab.vertex_cyclic_residual() < 1e-10);
}

proptest! {
    #[test]
    fn composition_is_associative(a in 0usize..14, b in 0usize..14, cc in 0usize..14) {
        let ds = TLDiagram::enumerate(4, 4);
        let el = |i: usize| TLElement::diagram(ds[i].clone(), DELTA);
        let left = tl_compose(&tl_compose(&el(a), &el(b)).unwrap(), &el(cc)).unwrap();
        let right = tl_compose(&el(a), &tl_compose(&el(b), &el(cc)).unwrap()).unwrap();
        prop_assert!(left.max_diff(&right) < 1e-12);
    }
}
