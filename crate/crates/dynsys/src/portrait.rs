use std::io::Write;

use q4core::{ChartPoint, LoopParam};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chart::chart_map;
use crate::fixed::{fixed_points, FixedPointReport, SearchBox, Stability};
use crate::{CsvError, Result};

const CAPTURE: f64 = 1e-3;
const ESCAPE: f64 = 1e6;

/// A catalogued ω-limit: an attracting fixed point or 2-cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attractor {
    pub tag: String,
    pub points: Vec<ChartPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortraitRow {
    pub u: f64,
    pub v: f64,
    pub tag: String,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Portrait {
    pub d: f64,
    pub rows: Vec<PortraitRow>,
    pub attractors: Vec<Attractor>,
    pub fixed_points: Vec<FixedPointReport>,
    pub period_two: Vec<FixedPointReport>,
    pub b1: ChartPoint,
    pub b4: Option<ChartPoint>,
}

impl Portrait {
    pub fn tag_of(&self, u: f64, v: f64) -> Option<&str> {
        self.rows
            .iter()
            .find(|r| (r.u - u).abs() < 1e-12 && (r.v - v).abs() < 1e-12)
            .map(|r| r.tag.as_str())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for r in &self.rows {
            wr.serialize(r).map_err(|e| CsvError(e.to_string()))?;
        }
        wr.flush().map_err(|e| CsvError(e.to_string()))?;
        Ok(())
    }
}

fn catalogue(fps: &[FixedPointReport], p2: &[FixedPointReport], lp: &LoopParam<f64>) -> Vec<Attractor> {
    let mut out = Vec::new();
    for (i, f) in fps.iter().enumerate() {
        if f.class == Stability::Attracting {
            out.push(Attractor {
                tag: format!("fp:{i}"),
                points: vec![f.location],
            });
        }
    }
    let mut seen: Vec<ChartPoint> = Vec::new();
    let mut k = 0;
    for f in p2.iter().filter(|f| f.class == Stability::Attracting) {
        if seen.iter().any(|s| s.dist(&f.location) < 1e-6) {
            continue;
        }
        let partner = chart_map(&f.location, lp).unwrap_or(f.location);
        seen.push(f.location);
        seen.push(partner);
        out.push(Attractor {
            tag: format!("cycle2:{k}"),
            points: vec![f.location, partner],
        });
        k += 1;
    }
    out
}

fn omega_limit(start: ChartPoint, lp: &LoopParam<f64>, steps: usize, attractors: &[Attractor]) -> (String, usize) {
    let mut x = start;
    let mut first_hit: Option<(usize, usize)> = None;
    for n in 0..=steps {
        let hit = attractors
            .iter()
            .position(|a| a.points.iter().any(|p| p.dist(&x) < CAPTURE));
        match (hit, first_hit) {
            (Some(i), None) => first_hit = Some((i, n)),
            (Some(i), Some((j, _))) if i != j => first_hit = Some((i, n)),
            (None, Some(_)) => first_hit = None,
            _ => {}
        }
        if n == steps {
            break;
        }
        match chart_map(&x, lp) {
            Ok(y) if y.u.is_finite() && y.v.is_finite() && y.u.hypot(y.v) < ESCAPE => x = y,
            _ => return ("escape".into(), n + 1),
        }
    }
    match first_hit {
        Some((i, n)) => (attractors[i].tag.clone(), n),
        None => ("unresolved".into(), steps),
    }
}

/// Tags every grid point by its ω-limit after `steps` iterations. The
/// attractor catalogue comes from [`fixed_points`] on the default box.
pub fn portrait(lp: &LoopParam<f64>, grid: &[ChartPoint], steps: usize, b4: Option<ChartPoint>) -> Portrait {
    let fps = fixed_points(lp, 1, SearchBox::default());
    let p2 = fixed_points(lp, 2, SearchBox::default());
    let attractors = catalogue(&fps, &p2, lp);
    let rows = grid
        .par_iter()
        .map(|p| {
            let (tag, steps) = omega_limit(*p, lp, steps, &attractors);
            PortraitRow {
                u: p.u,
                v: p.v,
                tag,
                steps,
            }
        })
        .collect();
    Portrait {
        d: lp.d,
        rows,
        attractors,
        fixed_points: fps,
        period_two: p2,
        b1: ChartPoint::new(0.0, 0.0),
        b4,
    }
}
