use num_complex::Complex64;
use planar::{rng, DictEntry, Transfer};
use rand::Rng;
use tloracle::*;

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn cable() -> Cable {
    Cable::new(DEFAULT_DELTA).unwrap()
}

#[test]
fn b_basis_is_two_vertex_identity_cupcap() {
    let fit = cable().fit_b_basis(1e-9).unwrap();
    assert_eq!(fit.names, [DictEntry::TwoVertex, DictEntry::Id, DictEntry::CupCap]);
    assert!(fit.scales.iter().all(|s| (s - c(1.0)).norm() < 1e-9));
}

#[test]
fn braid_relation_and_inverse() {
    let b = braid_check(&cable()).unwrap();
    assert!(b.braid <= 1e-8, "{}", b.braid);
    assert!(b.difference_identity <= 1e-8);
    assert!(b.inverse_closed_form <= 1e-10);
    // R + R⁻¹ is not a multiple of b2 + b3.
    assert!(b.sum_identity > 1.0);
}

#[test]
fn only_one_yang_baxter_convention_holds() {
    let cab = cable();
    let mut r = rng(17);
    for _ in 0..5 {
        let l = C::new(r.gen_range(-1.0..1.0), r.gen_range(-0.5..0.5));
        let m = C::new(r.gen_range(-1.0..1.0), r.gen_range(-0.5..0.5));
        let passing: Vec<YbeConvention> = scan_conventions(l, m, &cab)
            .into_iter()
            .filter(|(_, res)| *res <= 1e-8)
            .map(|(cv, _)| cv)
            .collect();
        assert_eq!(passing, vec![YbeConvention::DISCOVERED], "λ = {l}, μ = {m}");
    }
}

#[test]
fn yang_baxter_at_equal_parameters() {
    let cab = cable();
    let l = c(0.35);
    assert!(ybe_residual(l, l, &cab, YbeConvention::DISCOVERED).unwrap() <= 1e-8);
    // The difference form is not automatic at λ = μ.
    let diff = YbeConvention {
        form: YbeForm::Difference,
        shift: 1,
        flip: false,
    };
    assert!(ybe_residual(l, l, &cab, diff).unwrap() > 1e-3);
}

#[test]
fn corrupted_r_breaks_yang_baxter() {
    let cab = cable();
    let lp = cab.loop_param();
    let (l, m) = (c(0.2), c(-0.4));
    let nu = YbeConvention::DISCOVERED.middle(l, m, eta_of(&lp));
    let op = |x: C| cab.checked_a(z_of_lambda(x, &lp)).unwrap();
    let n = cab.model.n();
    assert!(ybe_residual_ops(&op(l), &op(m), &op(nu), n).unwrap() <= 1e-8);
    let bad = op(l) + planar::Mat::identity(9, 9);
    assert!(ybe_residual_ops(&bad, &op(m), &op(nu), n).unwrap() > 1e-3);
}

#[test]
fn transfer_matrices_commute() {
    let cab = cable();
    for mode in [LabelMode::Uniform, LabelMode::Tree] {
        for sites in [2, 4] {
            let r = commute_residual(c(0.2), c(0.5), &cab, sites, mode).unwrap();
            assert!(r <= 1e-8, "{mode:?} on {sites} sites: {r}");
        }
        assert_eq!(commute_residual(c(0.3), c(0.3), &cab, 4, mode).unwrap(), 0.0);
    }
    assert!(commute_residual(c(0.2), c(0.5), &cab, 3, LabelMode::Tree).is_err());
    assert!(commute_residual(c(0.2), c(0.5), &cab, 8, LabelMode::Uniform).is_err());
}

#[test]
fn uniform_and_tree_transfers_differ() {
    // The tree labels are a genuinely inhomogeneous row.
    let cab = cable();
    let u = transfer_labels(c(0.2), &cab, 4, LabelMode::Uniform).unwrap();
    let t = transfer_labels(c(0.2), &cab, 4, LabelMode::Tree).unwrap();
    let tu = Transfer::new(&cab.model, &u).dense();
    let tt = Transfer::new(&cab.model, &t).dense();
    let ratio = planar::op_norm(&(&tu - &tt * (tu.trace() / tt.trace()))) / planar::op_norm(&tu);
    assert!(ratio > 1e-3);
    let x = planar::max_diff(&t[0], &t[1]) / planar::max_abs(&t[0]);
    assert!(x > 1e-3);
}

#[test]
fn corrupted_label_breaks_commutation() {
    let cab = cable();
    let m = &cab.model;
    let mut a = transfer_labels(c(0.2), &cab, 4, LabelMode::Uniform).unwrap();
    a[2] += m.cupcap() * c(0.5);
    let b = transfer_labels(c(0.5), &cab, 4, LabelMode::Uniform).unwrap();
    let ta = Transfer::new(m, &a).dense();
    let tb = Transfer::new(m, &b).dense();
    let comm = &ta * &tb - &tb * &ta;
    assert!(planar::op_norm(&comm) / (planar::op_norm(&ta) * planar::op_norm(&tb)) > 1e-3);
}

#[test]
fn compressed_spectrum_matches_closed_form() {
    let cab = cable();
    let mut r = rng(23);
    for _ in 0..20 {
        let z = C::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let res = spectrum_residual(z, &cab).unwrap();
        assert!(res <= 1e-9, "z = {z}: {res}");
    }
}

#[test]
fn large_delta_cable() {
    let cab = Cable::new(5.2).unwrap();
    assert!((cab.loop_value() - c(26.04)).norm() < 1e-10);
    assert!(cab.rep.u.im == 0.0 && cab.rep.u.re > 1.0);
    let m = &cab.model;
    let d = m.loop_value();
    assert!(planar::max_diff(&(m.cupcap() * m.cupcap()), &(m.cupcap() * d)) < 1e-9);
    assert_eq!(cab.three_box_dimension().unwrap(), 1);
}

#[test]
fn degenerate_parameters() {
    assert!(matches!(Cable::new(0.0), Err(TlError::Domain(_))));
    // At δ² = 2 the cabled loop value is 1 and the vertex compresses to 0.
    assert!(matches!(Cable::new(2f64.sqrt()), Err(TlError::DegenerateVertex(_))));
}
