//! The verification suites behind `verify d3|tl|all`.

use std::path::Path;

use abc::{alpha_relation_residual, brute_force_family, d3_solutions, scales_predicate, solve_unique_family, D3Branch};
use dynsys::{coalescence_scan, fixed_points, SearchBox, Stability};
use num_complex::Complex64;
use planar::{
    correlation_sequence, exact_fixed_point, hamiltonian_identity_residual, max_abs, max_diff, random_density,
    random_state, rng, weak_invariance_residual, DictEntry, Report, StateRng,
};
use q4core::{rat, renorm_r, BigRational, ChartPoint, LoopParam, Q4Vec};
use rand::Rng;
use tloracle::{
    braid_check, commute_residual, homomorphism_residual, spectrum_residual, tl_rank, ybe_residual, Cable, LabelMode,
    YbeConvention,
};

use crate::abc_cmd::{relative_abc_residual, ABC_TOL, ALPHA_TOL};
use crate::args::Suite;
use crate::error::Result;
use crate::ham::{eigen_checks, s_matrix_checks, CAUCHY_TOL};
use crate::output::{failures, write_json};
use crate::tl_cmd::{COMMUTE_TOL, YBE_TOL};

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Runs `f`; an error becomes a failing report with infinite residual.
fn guarded(name: &str, level: usize, tol: f64, seed: u64, f: impl FnOnce() -> Result<f64>) -> Report {
    let r = f().unwrap_or(f64::INFINITY);
    Report::new(name, level, r, tol, seed)
}

/// 0 when the predicate holds, 1 otherwise (for exact checks with
/// tolerance 0).
fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

pub const D3_LEGEND: [(f64, f64); 5] = [
    (-1.675, -1.175),
    (-1.309, 0.309),
    (-0.5, 0.0),
    (-0.191, -0.809),
    (-0.075, 0.425),
];
pub const D3_CLASSES: [Stability; 5] = [
    Stability::Repelling,
    Stability::Repelling,
    Stability::Neutral,
    Stability::Repelling,
    Stability::Unstable,
];
pub const D3_CYCLE: [(f64, f64); 2] = [(-0.5, 0.781), (0.281, 0.0)];
pub const SQRT2_LEGEND: [(f64, f64); 5] = [
    (-1.557, -0.850),
    (-1.332, 0.332),
    (-0.61, 0.098),
    (-0.375, -0.625),
    (-0.186, 0.521),
];
pub const SQRT2_CLASSES: [Stability; 5] = [
    Stability::Repelling,
    Stability::Repelling,
    Stability::Unstable,
    Stability::Repelling,
    Stability::Unstable,
];
pub const SQRT2_CYCLE: [(f64, f64); 2] = [(-0.825, 1.022), (0.315, -0.118)];
pub const LEGEND_TOL: f64 = 2e-3;
pub const COALESCENCE: f64 = 3.52783;
pub const COALESCENCE_TOL: f64 = 5e-4;

/// Largest distance between the located fixed points and a legend, or
/// infinity if the count or a stability class disagrees.
pub fn legend_distance(d: f64, legend: &[(f64, f64)], classes: &[Stability]) -> f64 {
    let fps = fixed_points(&LoopParam::new(d), 1, SearchBox::default());
    if fps.len() != legend.len() {
        return f64::INFINITY;
    }
    let mut worst: f64 = 0.0;
    for ((f, (u, v)), class) in fps.iter().zip(legend).zip(classes) {
        if f.class != *class {
            return f64::INFINITY;
        }
        worst = worst.max(f.location.dist(&ChartPoint::new(*u, *v)));
    }
    worst
}

/// Largest distance from each printed cycle point to an attracting
/// period-two point, or infinity when one is missing.
pub fn cycle_distance(d: f64, cycle: &[(f64, f64)]) -> f64 {
    let p2 = fixed_points(&LoopParam::new(d), 2, SearchBox::default());
    cycle
        .iter()
        .map(|(u, v)| {
            p2.iter()
                .filter(|f| f.class == Stability::Attracting)
                .map(|f| f.location.dist(&ChartPoint::new(*u, *v)))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// At `d = 2`, over the rationals: images lie on `q = −r` and `𝓡²(b1) = b1`.
pub fn d2_collapse_holds() -> bool {
    let lp = LoopParam::new(rat(2, 1));
    let pts = [
        (rat(1, 3), rat(-2, 5)),
        (rat(7, 2), rat(1, 1)),
        (rat(-4, 9), rat(11, 3)),
        (rat(0, 1), rat(0, 1)),
    ];
    let line = pts
        .into_iter()
        .all(|(u, v)| renorm_r(&Q4Vec::lift_coords(u, v), &lp).is_ok_and(|y: Q4Vec<BigRational>| y.q == -y.r.clone()));
    let b1 = Q4Vec::<BigRational>::b1();
    let twice = renorm_r(&b1, &lp).and_then(|y| renorm_r(&y, &lp));
    line && twice.is_ok_and(|y| y == b1)
}

fn random_z(r: &mut StateRng) -> C {
    C::from_polar(r.gen_range(0.3..3.0), r.gen_range(0.0..std::f64::consts::TAU))
}

pub fn test_loop_params() -> [LoopParam<C>; 3] {
    [
        LoopParam::from_omega(c(0.7)),
        LoopParam::from_d(1.0 + 2f64.sqrt()),
        LoopParam::from_omega(C::new(1.6, 0.3)),
    ]
}

/// ABC solutions, the α relation, the scales predicate and the real
/// dynamics.
pub fn suite_core(seed: u64) -> Vec<Report> {
    let mut out = Vec::new();
    let mut r = rng(seed);

    let mut worst: f64 = 0.0;
    let mut count = 0;
    while count < 200 {
        let d = r.gen_range(2.1..5.0);
        let a = r.gen_range(-4.0..4.0);
        if (d - 3.0f64).abs() < 1e-3 {
            continue;
        }
        let lp = LoopParam::new(d);
        if let Ok(t) = solve_unique_family(&a, &lp) {
            worst = worst.max(relative_abc_residual(&t, &lp).unwrap_or(f64::INFINITY));
            count += 1;
        }
    }
    out.push(Report::new("abc.closed_form", 0, worst, ABC_TOL, seed).with_param("samples", 200.0));

    out.push(guarded("abc.uniqueness", 0, 1e-6, seed, || {
        let mut worst: f64 = 0.0;
        for (d, a) in [(2.5, 1.3), (4.0, -0.7), (2.1, 3.0), (4.7, 0.4), (3.3, 2.2)] {
            let rep = brute_force_family(a, d)?;
            let closed = solve_unique_family(&a, &LoopParam::new(d))?;
            if rep.solutions.len() != 1 {
                return Ok(f64::INFINITY);
            }
            worst = worst.max(rep.solutions[0].max_diff(&closed) / (1.0 + closed.norm()));
        }
        Ok(worst)
    }));

    let lps = test_loop_params();
    let mut worst: f64 = 0.0;
    for lp in &lps {
        for _ in 0..100 {
            let z = random_z(&mut r);
            worst = worst.max(alpha_relation_residual(z, lp).unwrap_or(f64::INFINITY));
        }
    }
    out.push(Report::new("abc.alpha_relation", 0, worst, ALPHA_TOL, seed));

    let mut accepted_powers = 0;
    let mut rejected_random = 0;
    for lp in &lps {
        let w = lp.omega();
        for n in -6..=6 {
            for sign in [1.0, -1.0] {
                accepted_powers += usize::from(scales_predicate(w.powi(n) * sign, lp, 20));
            }
        }
        for _ in 0..100 {
            rejected_random += usize::from(!scales_predicate(random_z(&mut r), lp, 20));
        }
    }
    out.push(Report::new(
        "abc.scales_rejects_powers",
        0,
        accepted_powers as f64,
        0.0,
        seed,
    ));
    out.push(Report::new(
        "abc.scales_accepts_random",
        0,
        rejected_random as f64,
        0.0,
        seed,
    ));

    let sqrt2 = 1.0 + 2f64.sqrt();
    out.push(
        Report::new(
            "dynsys.legend_d3",
            0,
            legend_distance(3.0, &D3_LEGEND, &D3_CLASSES),
            LEGEND_TOL,
            seed,
        )
        .with_param("d", 3.0),
    );
    out.push(Report::new("dynsys.cycle_d3", 0, cycle_distance(3.0, &D3_CYCLE), LEGEND_TOL, seed).with_param("d", 3.0));
    out.push(
        Report::new(
            "dynsys.legend_1_plus_sqrt2",
            0,
            legend_distance(sqrt2, &SQRT2_LEGEND, &SQRT2_CLASSES),
            LEGEND_TOL,
            seed,
        )
        .with_param("d", sqrt2),
    );
    out.push(
        Report::new(
            "dynsys.cycle_1_plus_sqrt2",
            0,
            cycle_distance(sqrt2, &SQRT2_CYCLE),
            LEGEND_TOL,
            seed,
        )
        .with_param("d", sqrt2),
    );
    out.push(Report::new("dynsys.d2_collapse", 0, flag(d2_collapse_holds()), 0.0, seed).with_param("d", 2.0));
    out.push(guarded("dynsys.coalescence", 0, COALESCENCE_TOL, seed, || {
        Ok((coalescence_scan(3.4, 3.6, 1e-7)? - COALESCENCE).abs())
    }));
    out
}

/// Largest residual of `max|𝓗_h ι ξ, ι η⟩ − ⟨𝓗_{𝓢h} ξ, η⟩|` over `count`
/// random densities, relative to `1 + max|h|`.
fn hamiltonian_worst(model: &planar::SiteModel, k: usize, count: usize, samples: usize, r: &mut StateRng) -> f64 {
    (0..count)
        .map(|_| {
            let h = random_density(model, r);
            hamiltonian_identity_residual(model, &h, k, r, samples) / (1.0 + max_abs(&h))
        })
        .fold(0.0, f64::max)
}

/// The `ℂ³` oracle at `d = 3`.
pub fn suite_d3(seed: u64) -> Vec<Report> {
    let mut out = Vec::new();
    let m = oracle3::model();
    let y = oracle3::SpinDoubler::build();
    out.push(Report::new(
        "d3.vertex_exact",
        0,
        flag(y.is_isometry() && y.is_cyclic()),
        0.0,
        seed,
    ));
    out.push(Report::new(
        "d3.vertex_rotation",
        0,
        max_diff(&m.rotate_vertex(), m.y()),
        1e-14,
        seed,
    ));
    out.push(Report::new(
        "d3.vertex_unique",
        0,
        (oracle3::vertex_space_dimension() as f64 - 1.0).abs(),
        0.0,
        seed,
    ));
    out.push(guarded("d3.b_basis_fit", 0, 1e-9, seed, || {
        let fit = oracle3::solve_b_basis_d3(1e-9)?;
        let unit = fit.scales.iter().all(|s| (s - c(1.0)).norm() < 1e-9);
        let names = fit.names == [DictEntry::TwoVertex, DictEntry::Id, DictEntry::CupCap];
        Ok(if unit && names { fit.residual } else { f64::INFINITY })
    }));
    out.push(guarded("d3.abc_tensor", 0, 1e-9, seed, || {
        let mut worst: f64 = 0.0;
        for (b, s) in [
            (D3Branch::One, 0.1),
            (D3Branch::One, 0.27),
            (D3Branch::One, -0.4),
            (D3Branch::Two, 0.5),
            (D3Branch::Two, -1.5),
        ] {
            let t = d3_solutions(b, &s)?;
            let to = |v: &Q4Vec<f64>| m.op(&v.map(|x| c(*x)));
            worst = worst.max(m.abc_residual(&to(&t.a), &to(&t.b), &to(&t.c)) / (1.0 + t.norm()));
        }
        Ok(worst)
    }));

    for (i, (s0, s1)) in [(0.1, 0.27), (0.45, -0.2), (1.1, 0.05)].into_iter().enumerate() {
        for level in [1, 2] {
            let name = format!("d3.scale_invariance.choice{i}.level{level}");
            let rep = guarded(&name, level, 1e-9, seed, || {
                let choice = oracle3::d3_choice(s0, s1)?;
                Ok(oracle3::scale_invariance_residual(&choice, level)?)
            });
            out.push(rep.with_param("s0", s0).with_param("s1", s1));
        }
    }
    let control = oracle3::d3_choice(0.1, 0.27)
        .ok()
        .and_then(|ch| oracle3::corrupted_scale_invariance_residual(&ch, 1).ok())
        .unwrap_or(0.0);
    out.push(Report::above("d3.corrupted_control", 1, control, 1e-3, seed));

    let lp = oracle3::loop_param();
    for k in [1, 2, 4] {
        out.push(guarded(&format!("d3.weak_invariance.k{k}"), k, 1e-10, seed, || {
            let x = exact_fixed_point(&Q4Vec::new(c(-2.0), c(1.0), c(0.0)), &lp)?;
            Ok(weak_invariance_residual(m, &m.op(&x), &m.op(&x), k))
        }));
    }
    let mut r = rng(seed);
    for k in [2, 4] {
        out.push(Report::new(
            format!("d3.hamiltonian_identity.k{k}"),
            k,
            hamiltonian_worst(m, k, 20, 1, &mut r),
            1e-10,
            seed,
        ));
    }
    let (sm, ..) = s_matrix_checks(m, 3.0, 1e-12, seed);
    out.extend(sm.into_iter().map(prefix("d3.")));
    match eigen_checks(m, 3.0, 1e-12, seed) {
        Ok((_, ec)) => out.extend(ec.into_iter().map(prefix("d3."))),
        Err(_) => out.push(Report::new("d3.hamiltonian.eigen", 0, f64::INFINITY, 0.0, seed)),
    }

    let xi = random_state(&mut r, 81);
    let eta = random_state(&mut r, 81);
    match correlation_sequence(m, 4, &xi, &eta, 40, 0) {
        Ok(corr) => {
            let (de, dodd) = corr.last_steps();
            out.push(Report::new("d3.momenta.cauchy", 4, de.max(dodd), CAUCHY_TOL, seed));
            out.push(Report::above(
                "d3.momenta.distinct",
                4,
                (corr.even_limit - corr.odd_limit).norm(),
                1e-3,
                seed,
            ));
        }
        Err(_) => out.push(Report::new("d3.momenta.cauchy", 4, f64::INFINITY, CAUCHY_TOL, seed)),
    }
    out
}

fn prefix(p: &'static str) -> impl Fn(Report) -> Report {
    move |mut r| {
        r.check = format!("{p}{}", r.check);
        r
    }
}

fn random_lambda(r: &mut StateRng) -> C {
    C::new(r.gen_range(-1.0..1.0), r.gen_range(-0.5..0.5))
}

/// The cabled Temperley-Lieb model at `δ`.
pub fn suite_tl(delta: f64, seed: u64) -> Vec<Report> {
    let mut out = Vec::new();
    for n in 2..=4 {
        out.push(guarded(&format!("tl.homomorphism.n{n}"), n, 1e-12, seed, || {
            Ok(homomorphism_residual(n, delta)?)
        }));
    }
    out.push(guarded("tl.faithful_rank", 4, 0.0, seed, || {
        let (rank, count) = tl_rank(4, delta)?;
        Ok((rank as f64 - count as f64).abs())
    }));
    let cab = match Cable::new(delta) {
        Ok(c) => c,
        Err(_) => {
            out.push(Report::new("tl.cable", 0, f64::INFINITY, 0.0, seed).with_param("delta", delta));
            return out;
        }
    };
    let m = &cab.model;
    let d = delta * delta - 1.0;
    let e = m.cupcap();
    out.push(
        Report::new("tl.cable_loop", 2, max_diff(&(&e * &e), &(&e * c(d))), 1e-10, seed).with_param("delta", delta),
    );
    out.push(Report::new(
        "tl.vertex_rotation",
        0,
        cab.vertex_cyclic_residual(),
        1e-10,
        seed,
    ));
    out.push(guarded("tl.vertex_unique", 0, 0.0, seed, || {
        Ok((cab.three_box_dimension()? as f64 - 1.0).abs())
    }));
    out.push(guarded("tl.b_basis_fit", 0, 1e-9, seed, || {
        let fit = cab.fit_b_basis(1e-9)?;
        let unit = fit.scales.iter().all(|s| (s - c(1.0)).norm() < 1e-9);
        let names = fit.names == [DictEntry::TwoVertex, DictEntry::Id, DictEntry::CupCap];
        Ok(if unit && names { fit.residual } else { f64::INFINITY })
    }));
    match braid_check(&cab) {
        Ok(b) => {
            out.push(Report::new("tl.braid", 3, b.braid, 1e-8, seed));
            out.push(
                Report::new("tl.r_minus_rinv", 2, b.difference_identity, 1e-8, seed)
                    .with_param("sum_form_residual", b.sum_identity),
            );
            out.push(Report::new(
                "tl.rinv_closed_form",
                2,
                b.inverse_closed_form,
                1e-10,
                seed,
            ));
        }
        Err(_) => out.push(Report::new("tl.braid", 3, f64::INFINITY, 1e-8, seed)),
    }

    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let (l, mu) = (random_lambda(&mut r), random_lambda(&mut r));
        worst = worst.max(ybe_residual(l, mu, &cab, YbeConvention::DISCOVERED).unwrap_or(f64::INFINITY));
    }
    out.push(Report::new("tl.ybe", 3, worst, YBE_TOL, seed));
    for (name, mode) in [
        ("tl.commute.uniform", LabelMode::Uniform),
        ("tl.commute.tree", LabelMode::Tree),
    ] {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let (l, mu) = (random_lambda(&mut r), random_lambda(&mut r));
            worst = worst.max(commute_residual(l, mu, &cab, 4, mode).unwrap_or(f64::INFINITY));
        }
        out.push(Report::new(name, 4, worst, COMMUTE_TOL, seed));
    }
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let z = C::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        worst = worst.max(spectrum_residual(z, &cab).unwrap_or(f64::INFINITY));
    }
    out.push(Report::new("tl.spectrum", 2, worst, 1e-9, seed));

    let (sm, ..) = s_matrix_checks(m, d, 1e-10, seed);
    out.extend(sm.into_iter().map(prefix("tl.")));
    match eigen_checks(m, d, 1e-10, seed) {
        Ok((_, ec)) => out.extend(ec.into_iter().map(prefix("tl."))),
        Err(_) => out.push(Report::new("tl.hamiltonian.eigen", 0, f64::INFINITY, 0.0, seed)),
    }
    out.push(Report::new(
        "tl.hamiltonian_identity.k2",
        2,
        hamiltonian_worst(m, 2, 5, 2, &mut r),
        1e-10,
        seed,
    ));
    out.iter_mut().for_each(|x| {
        x.params.entry("delta".into()).or_insert(delta);
    });
    out
}

pub fn run(suite: Suite, delta: f64, seed: u64, out: Option<&Path>) -> Result<Vec<String>> {
    let reports = match suite {
        Suite::D3 => suite_d3(seed),
        Suite::Tl => suite_tl(delta, seed),
        Suite::All => {
            let mut all = suite_core(seed);
            all.extend(suite_d3(seed));
            all.extend(suite_tl(delta, seed));
            all
        }
    };
    write_json(out, &reports)?;
    Ok(failures(&reports))
}
