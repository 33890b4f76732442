use num_complex::Complex64;
use planar::*;
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Site space `ℂ³` with the Levi-Civita vertex.
fn eps_model() -> SiteModel {
    let mut y = Mat::zeros(9, 3);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for (i, j, k, s) in [
        (0, 1, 2, 1.0),
        (1, 2, 0, 1.0),
        (2, 0, 1, 1.0),
        (0, 2, 1, -1.0),
        (2, 1, 0, -1.0),
        (1, 0, 2, -1.0),
    ] {
        y[(3 * j + k, i)] = c(s * r);
    }
    SiteModel::new(Mat::identity(3, 3), Mat::identity(3, 3), y.clone(), y.transpose()).unwrap()
}

/// A twisted cup `[[0, 1], [−1, 0]]` on `ℂ²`, whose loop value is `−2`.
fn twisted_cups() -> (Mat, Mat) {
    let cup = Mat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(-1.0), c(0.0)]);
    let cap = cup.clone();
    (cup, cap)
}

#[test]
fn shape_errors() {
    let bad = SiteModel::new(
        Mat::identity(3, 3),
        Mat::identity(2, 2),
        Mat::zeros(9, 3),
        Mat::zeros(3, 9),
    );
    assert!(matches!(bad, Err(PlanarError::Shape(_))));
}

#[test]
fn loop_value_of_standard_cups() {
    assert!((eps_model().loop_value() - c(3.0)).norm() < 1e-15);
}

#[test]
fn rotation_has_order_four_for_twisted_cups() {
    let (cup, cap) = twisted_cups();
    let y = Mat::zeros(4, 2);
    let m = SiteModel::new(cup, cap, y.clone(), y.transpose()).unwrap();
    let mut r = rng(5);
    let x = random_op(&mut r, 4);
    let r4 = m.rot(&m.rot(&m.rot(&m.rot(&x))));
    assert!(max_diff(&r4, &x) < 1e-14);
    assert!(max_diff(&m.rot_inv(&m.rot(&x)), &x) < 1e-14);
}

#[test]
fn iota_embeds_isometrically() {
    let m = eps_model();
    for k in 1..=3 {
        let i = m.iota(k);
        assert_eq!(i.shape(), (m.dim(2 * k), m.dim(k)));
        assert!(max_diff(&(m.iota_adj(k) * &i), &Mat::identity(m.dim(k), m.dim(k))) < 1e-14);
    }
}

#[test]
fn hamiltonian_is_sum_of_shifted_densities() {
    let m = eps_model();
    let mut r = rng(9);
    let h = random_density(&m, &mut r);
    let dense = m.hamiltonian(&h, 3);
    let x = random_state(&mut r, 27);
    assert!((&dense * &x - m.hamiltonian_apply(&h, 3, &x)).camax() < 1e-13);
    // The identity density counts bonds.
    let id = m.hamiltonian(&Mat::identity(9, 9), 4);
    assert!(max_diff(&id, &(Mat::identity(81, 81) * c(4.0))) < 1e-13);
}

#[test]
fn fit_reports_negative_when_no_dictionary_works() {
    // A vertex that is not a 4-box-space isometry makes the fit fail.
    let mut y = Mat::zeros(9, 3);
    y[(0, 0)] = c(1.0);
    y[(4, 1)] = c(1.0);
    y[(8, 2)] = c(1.0);
    let m = SiteModel::new(Mat::identity(3, 3), Mat::identity(3, 3), y.clone(), y.transpose()).unwrap();
    assert!(matches!(solve_b_basis(&m, None, 1e-9), Err(PlanarError::Fit { .. })));
}

#[test]
fn reports_flag_failures() {
    let ok = Report::new("x", 1, 1e-12, 1e-10, 0);
    assert!(ok.pass);
    assert!(!Report::new("x", 1, 1e-3, 1e-10, 0).pass);
    assert!(Report::above("control", 1, 0.4, 1e-3, 0).pass);
}

proptest! {
    #[test]
    fn rotation_order_four(seed in 0u64..1000) {
        let m = eps_model();
        let mut r = rng(seed);
        let x = random_op(&mut r, 9);
        prop_assert!(max_diff(&m.rot(&m.rot(&m.rot(&m.rot(&x)))), &x) < 1e-13);
    }

    #[test]
    fn rotation_inverse_is_exact(seed in 0u64..1000) {
        let (cup, _) = twisted_cups();
        let cap = Mat::from_row_slice(2, 2, &[c(0.0), c(2.0), c(-0.5), c(0.0)]);
        let y = Mat::zeros(4, 2);
        let m = SiteModel::new(cup, cap, y.clone(), y.transpose()).unwrap();
        let mut r = rng(seed);
        let x = random_op(&mut r, 4);
        prop_assert!(max_diff(&m.rot_inv(&m.rot(&x)), &x) < 1e-13);
        prop_assert!(max_diff(&m.rot(&m.rot_inv(&x)), &x) < 1e-13);
    }

    #[test]
    fn rotation_conjugates_products(seed in 0u64..1000) {
        let m = eps_model();
        let mut r = rng(seed);
        let a = random_op(&mut r, 9);
        let b = random_op(&mut r, 9);
        prop_assert!(max_diff(&m.rot(&(&a * &b)), &m.comultiply(&m.rot(&a), &m.rot(&b))) < 1e-12);
    }

    #[test]
    fn states_are_normalised(seed in 0u64..1000, dim in 1usize..50) {
        let mut r = rng(seed);
        prop_assert!((random_state(&mut r, dim).norm() - 1.0).abs() < 1e-12);
    }
}
