//! Global search for convex central configurations at fixed masses.
//!
//! Seeds cover the four-dimensional space of convex quadrilaterals with
//! bodies 1,2 on one diagonal. Every seed is polished by Newton; converged
//! states are grouped by canonical frame and each group is labelled.

use crate::dziobek::{DziobekState, MassVector};
use crate::error::Error;
use crate::exec::{self, Execution};
use crate::geometry::{canonicalize, realize, signed_areas, CanonicalFrame};
use crate::solver::{newton_solve, SolveOptions};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Frames closer than this are the same class.
pub const DEDUPE_TOL: f64 = 1e-6;

/// Seeds whose smallest face triangle is below this fraction of `L²` are skipped.
pub const SEED_AREA_MARGIN: f64 = 1e-3;

/// Tolerance for labels assigned to census classes.
pub const LABEL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryLabel {
    #[serde(rename = "square")]
    Square,
    #[serde(rename = "rhombus")]
    Rhombus,
    /// Mirror axis through bodies 3 and 4: `r13 = r23`, `r14 = r24`.
    #[serde(rename = "kite_axis_34")]
    KiteAxis34,
    /// Mirror axis through bodies 1 and 2: `r13 = r14`, `r23 = r24`.
    #[serde(rename = "kite_axis_12")]
    KiteAxis12,
    #[serde(rename = "asymmetric")]
    Asymmetric,
}

impl SymmetryLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SymmetryLabel::Square => "square",
            SymmetryLabel::Rhombus => "rhombus",
            SymmetryLabel::KiteAxis34 => "kite_axis_34",
            SymmetryLabel::KiteAxis12 => "kite_axis_12",
            SymmetryLabel::Asymmetric => "asymmetric",
        }
    }

    /// Square and rhombus are special kites with the 3–4 axis.
    pub fn has_axis_34(self) -> bool {
        matches!(
            self,
            SymmetryLabel::Square | SymmetryLabel::Rhombus | SymmetryLabel::KiteAxis34
        )
    }
}

impl std::fmt::Display for SymmetryLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Label from distance equalities on `r²/L²`; square beats rhombus beats
/// either kite.
pub fn classify_symmetry(st: &DziobekState, tol: f64) -> SymmetryLabel {
    let l2 = st.sq.scale2();
    let [a, b, c, d, e, f] = st.sq.as_array().map(|x| x / l2);
    let eq = |x: f64, y: f64| (x - y).abs() < tol;
    let rhombus = eq(b, c) && eq(b, d) && eq(b, e) && eq(c, d) && eq(c, e) && eq(d, e);
    if rhombus && eq(a, f) {
        SymmetryLabel::Square
    } else if rhombus {
        SymmetryLabel::Rhombus
    } else if eq(b, d) && eq(c, e) {
        SymmetryLabel::KiteAxis34
    } else if eq(b, c) && eq(d, e) {
        SymmetryLabel::KiteAxis12
    } else {
        SymmetryLabel::Asymmetric
    }
}

fn ratio_levels(resolution: usize) -> Vec<f64> {
    (0..resolution)
        .map(|k| 3f64.powf(2.0 * k as f64 / (resolution - 1) as f64 - 1.0))
        .collect()
}

/// Deterministic lattice of convex frames: `v/u, t/u, s/u` on a geometric
/// grid over `[1/3, 3]` and `θ` at cell centres of `(0, π)`. Frames whose
/// smallest face triangle falls below the degeneracy margin are dropped.
pub fn seed_grid(resolution: usize) -> Vec<CanonicalFrame> {
    let resolution = resolution.max(2);
    let ratios = ratio_levels(resolution);
    let m = MassVector::equal();
    let mut out = Vec::with_capacity(resolution.pow(4));
    for &v in &ratios {
        for &t in &ratios {
            for &s in &ratios {
                for k in 0..resolution {
                    let theta = PI * (k as f64 + 0.5) / resolution as f64;
                    let Ok(frame) = CanonicalFrame::normalized(1.0, v, t, s, theta, &m) else {
                        continue;
                    };
                    let Ok(cfg) = frame.reconstruct(&m) else {
                        continue;
                    };
                    let smallest = signed_areas(&cfg)
                        .iter()
                        .fold(f64::INFINITY, |acc, x| acc.min(x.abs()));
                    if cfg.is_convex() && smallest >= SEED_AREA_MARGIN * cfg.scale2() {
                        out.push(frame);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusClass {
    pub frame: CanonicalFrame,
    pub state: DziobekState,
    pub symmetry: SymmetryLabel,
    /// Number of seeds that converged into this class.
    pub basin: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureTally {
    pub no_convergence: usize,
    pub left_convex_region: usize,
    pub singular_jacobian: usize,
    pub other: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub masses: MassVector,
    pub resolution: usize,
    /// False when both `α` and `β` exceed `δ`: no uniqueness claim applies.
    pub within_theorem_hypothesis: bool,
    pub classes: Vec<CensusClass>,
    pub seeds_total: usize,
    pub seeds_converged: usize,
    pub failures: FailureTally,
}

impl CensusReport {
    /// The single class, if there is exactly one.
    pub fn unique(&self) -> Option<&CensusClass> {
        match self.classes.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

enum SeedOutcome {
    Solved(Box<(CanonicalFrame, DziobekState, f64)>),
    Failed(Error),
}

fn polish(frame: &CanonicalFrame, m: &MassVector, opts: &SolveOptions) -> SeedOutcome {
    let run = || -> crate::Result<(CanonicalFrame, DziobekState, f64)> {
        let cfg = frame.reconstruct(m)?;
        let seed = DziobekState::from_distances(crate::geometry::squared_distances(&cfg), m)?;
        let rep = newton_solve(&seed, m, opts)?;
        let solved = realize(&rep.state.sq, m)?;
        Ok((canonicalize(&solved)?, rep.state, rep.final_residual))
    };
    match run() {
        Ok(v) => SeedOutcome::Solved(Box::new(v)),
        Err(e) => SeedOutcome::Failed(e),
    }
}

/// Count convex central-configuration classes for fixed masses.
pub fn census(m: &MassVector, resolution: usize, opts: &SolveOptions, exec: Execution) -> CensusReport {
    let seeds = seed_grid(resolution);
    let outcomes = exec::map(exec, &seeds, |f| polish(f, m, opts));
    let mut classes: Vec<CensusClass> = Vec::new();
    let mut failures = FailureTally::default();
    let mut converged = 0;
    for outcome in outcomes {
        match outcome {
            SeedOutcome::Solved(solved) => {
                let (frame, state, _) = *solved;
                converged += 1;
                match classes.iter_mut().find(|c| c.frame.distance(&frame) < DEDUPE_TOL) {
                    Some(class) => class.basin += 1,
                    None => classes.push(CensusClass {
                        frame,
                        state,
                        symmetry: classify_symmetry(&state, LABEL_TOL),
                        basin: 1,
                    }),
                }
            }
            SeedOutcome::Failed(Error::NoConvergence { .. }) => failures.no_convergence += 1,
            SeedOutcome::Failed(Error::LeftConvexRegion { .. }) | SeedOutcome::Failed(Error::NotConvex) => {
                failures.left_convex_region += 1
            }
            SeedOutcome::Failed(Error::SingularJacobian { .. }) => failures.singular_jacobian += 1,
            SeedOutcome::Failed(_) => failures.other += 1,
        }
    }
    CensusReport {
        masses: *m,
        resolution,
        within_theorem_hypothesis: m.within_kite_hypothesis(),
        classes,
        seeds_total: seeds.len(),
        seeds_converged: converged,
        failures,
    }
}
