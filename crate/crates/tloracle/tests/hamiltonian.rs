use num_complex::Complex64;
use planar::*;
use tloracle::{Cable, DEFAULT_DELTA};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn s_matrix_at_generic_loop_values() {
    for delta in [1.7, 1.9, 2.2, 2.6, 3.1] {
        let cab = Cable::new(delta).unwrap();
        let d = delta * delta - 1.0;
        let (s, fit) = s_matrix(&cab.model);
        assert!(fit < 1e-10, "δ = {delta}: fit {fit}");
        let p = printed_s_matrix(d);
        for i in 0..3 {
            for j in 0..3 {
                assert!((s[(i, j)] - c(p[(i, j)])).norm() <= 1e-10, "δ = {delta} ({i}, {j})");
            }
        }
        let want = [2.0, (d - 2.0).powi(2) / (d - 1.0).powi(2), 1.0 / (d - 1.0).powi(2)];
        let pairs = s_eigenpairs(&p);
        for (k, (l, v)) in pairs.iter().enumerate() {
            assert!((l - want[k]).abs() <= 1e-10);
            assert!(eigen_residual(&s.map(|z| z.re), *l, v) <= 1e-10);
        }
    }
}

#[test]
fn hamiltonian_identity_for_cabled_sites() {
    let cab = Cable::new(DEFAULT_DELTA).unwrap();
    let m = &cab.model;
    let mut r = rng(5);
    for _ in 0..5 {
        let h = random_density(m, &mut r);
        let res = hamiltonian_identity_residual(m, &h, 2, &mut r, 2);
        assert!(res <= 1e-10 * (1.0 + max_abs(&h)), "{res}");
    }
}

#[test]
fn eigen_densities_are_indefinite() {
    let cab = Cable::new(DEFAULT_DELTA).unwrap();
    let d = cab.loop_value().re;
    let pairs = s_eigenpairs(&printed_s_matrix(d));
    for (_, v) in &pairs[1..] {
        let eig = real_spectrum(&density(&cab.model, v), 1e-9).unwrap();
        assert!(eig[0] < 0.0 && eig[eig.len() - 1] > 0.0, "{eig:?}");
    }
}

#[test]
fn momenta_coincide_past_coalescence() {
    let cab = Cable::new(5.2).unwrap();
    let m = &cab.model;
    let mut r = rng(8);
    let xi = random_state(&mut r, 81);
    let eta = random_state(&mut r, 81);
    let corr = correlation_sequence(m, 4, &xi, &eta, 40, 0).unwrap();
    let (de, dodd) = corr.last_steps();
    assert!(de < 1e-6 && dodd < 1e-6);
    let [p, q] = corr.limit_points;
    assert!(p.dist(&q) < 1e-9);
    assert!((corr.even_limit - corr.odd_limit).norm() < 1e-9);
}
