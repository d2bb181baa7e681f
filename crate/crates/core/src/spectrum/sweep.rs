use rayon::prelude::*;
use serde::Serialize;

use super::{
    classified_roots, constraint_window, Branch, OscillatorParams, QuantumNumbers, SolverOptions,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Omega,
    OmegaTilde,
}

impl Axis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Axis::Omega => "omega",
            Axis::OmegaTilde => "omega_tilde",
        }
    }

    fn apply(&self, p: OscillatorParams, value: f64) -> OscillatorParams {
        match self {
            Axis::Omega => p.with_omega(value),
            Axis::OmegaTilde => p.with_omega_tilde(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Fixed parameters; the swept one is overwritten at each grid point.
    pub template: OscillatorParams,
    pub qnums: Vec<QuantumNumbers>,
    pub axis: Axis,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub opts: SolverOptions,
}

/// Cell midpoints min + (i + ½)h, h = (max − min)/steps. Midpoints keep the
/// grid off ω = 0 and ω̃ = 0 for symmetric ranges with even step counts.
pub fn axis_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 || !min.is_finite() || !max.is_finite() || !(max > min) {
        return Err(Error::MalformedGrid(format!(
            "need min < max and steps > 0, got [{min}, {max}] with {steps} steps"
        )));
    }
    let h = (max - min) / steps as f64;
    Ok((0..steps).map(|i| min + (i as f64 + 0.5) * h).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis_value: f64,
    pub n_r: u32,
    pub l: i32,
    pub energy: f64,
    pub branch: Branch,
    pub admissible: bool,
    pub residual: f64,
}

/// Admissible levels at each grid point, plus the genuine roots rejected
/// only because E = ±m so that plots show where a branch touches the mass.
/// Points where both frequencies vanish contribute no rows.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.template.validate()?;
    let grid = axis_grid(spec.min, spec.max, spec.steps)?;
    let jobs: Vec<(f64, QuantumNumbers)> = grid
        .iter()
        .flat_map(|&x| spec.qnums.iter().map(move |&q| (x, q)))
        .collect();

    let chunks: Vec<Result<Vec<SweepRow>>> = jobs
        .par_iter()
        .map(|&(x, q)| {
            let p = spec.axis.apply(spec.template, x);
            if p.is_degenerate() {
                return Ok(Vec::new());
            }
            Ok(classified_roots(&p, &q, &spec.opts)?
                .into_iter()
                .filter(|lvl| lvl.is_admissible() || lvl.is_genuine())
                .map(|lvl| SweepRow {
                    axis_value: x,
                    n_r: q.n_r,
                    l: q.l,
                    energy: lvl.energy,
                    branch: lvl.branch,
                    admissible: lvl.is_admissible(),
                    residual: lvl.residual,
                })
                .collect())
        })
        .collect();

    let mut rows = Vec::new();
    for c in chunks {
        rows.extend(c?);
    }
    rows.sort_by(|a, b| {
        a.axis_value
            .total_cmp(&b.axis_value)
            .then(a.l.cmp(&b.l))
            .then(a.n_r.cmp(&b.n_r))
            .then(a.energy.total_cmp(&b.energy))
    });
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintPoint {
    pub axis_value: f64,
    pub l: i32,
    /// Absent where κ² > 0 for every E.
    pub eps_minus: Option<f64>,
    pub eps_plus: Option<f64>,
}

/// ε±(axis) curves for each l on the sweep grid.
pub fn sweep_constraints(
    template: &OscillatorParams,
    axis: Axis,
    ls: &[i32],
    min: f64,
    max: f64,
    steps: usize,
) -> Result<Vec<ConstraintPoint>> {
    template.validate()?;
    let grid = axis_grid(min, max, steps)?;
    let mut ls = ls.to_vec();
    ls.sort_unstable();
    ls.dedup();
    let mut out = Vec::with_capacity(grid.len() * ls.len());
    for &x in &grid {
        let p = axis.apply(*template, x);
        for &l in &ls {
            let eps = constraint_window(&p, l).eps();
            out.push(ConstraintPoint {
                axis_value: x,
                l,
                eps_minus: eps.map(|e| e.0),
                eps_plus: eps.map(|e| e.1),
            });
        }
    }
    Ok(out)
}
