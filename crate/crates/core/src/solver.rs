//! Newton solution of the Dziobek system.
//!
//! Unknowns are the six squared distances and both multipliers `(ν, ξ)`.
//! The square system is the six central-configuration equations, planarity
//! `S = 0` and one normalization fixing the scale. Areas are recomputed from
//! the distances at every iterate, and the equality of the `t_k` is checked
//! afterwards rather than imposed.

use crate::census::{classify_symmetry, SymmetryLabel};
use crate::dziobek::{
    cayley, heron16, psi_prime_unchecked, DziobekState, MassVector, ResidualVector,
    SquaredDistances, PAIRS,
};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geometry::{canonicalize, oriented_areas, realize, CanonicalFrame};
use crate::verifier::newtonian_oracle;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Tolerance used to label the symmetry of solver output.
pub const SYMMETRY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `I = (1/m') Σ m_i m_j r_ij² = 1`.
    #[default]
    FixInertiaOne,
    /// `r12² = 1`.
    FixAOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub max_iterations: usize,
    /// Scale-relative max-norm tolerance on the residual.
    pub residual_tol: f64,
    /// First trial step length of each Newton iteration, in `(0, 1]`.
    pub damping: f64,
    pub normalization: Normalization,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            residual_tol: 1e-12,
            damping: 1.0,
            normalization: Normalization::FixInertiaOne,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations < 1 {
            return Err(Error::Domain("max_iterations must be at least 1".into()));
        }
        if !(self.residual_tol > 0.0) {
            return Err(Error::Domain("residual_tol must be positive".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::Domain("damping must lie in (0, 1]".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub masses: MassVector,
    pub state: DziobekState,
    pub iterations: usize,
    pub final_residual: f64,
    pub converged: bool,
    pub symmetry: SymmetryLabel,
}

/// Which unknowns are free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ansatz {
    /// `(a, b, c, d, e, f, ν, ξ)`.
    Full,
    /// `(a, b, c, f, ν, ξ)` with `d = b`, `e = c`.
    Kite,
}

impl Ansatz {
    /// Equations kept from the six pair equations.
    fn pairs(self) -> &'static [usize] {
        match self {
            Ansatz::Full => &[0, 1, 2, 3, 4, 5],
            Ansatz::Kite => &[0, 1, 2, 5],
        }
    }

    fn unpack(self, x: &[f64]) -> ([f64; 6], f64, f64) {
        match self {
            Ansatz::Full => ([x[0], x[1], x[2], x[3], x[4], x[5]], x[6], x[7]),
            Ansatz::Kite => ([x[0], x[1], x[2], x[1], x[2], x[3]], x[4], x[5]),
        }
    }

    fn pack(self, st: &DziobekState) -> Vec<f64> {
        let [a, b, c, d, e, f] = st.sq.as_array();
        match self {
            Ansatz::Full => vec![a, b, c, d, e, f, st.nu, st.xi],
            Ansatz::Kite => vec![a, 0.5 * (b + d), 0.5 * (c + e), f, st.nu, st.xi],
        }
    }
}

/// Heron areas with the convex sign pattern; `None` if a face is flat or
/// violates the triangle inequality.
fn face_areas(sq: &[f64; 6]) -> Option<[f64; 4]> {
    let [a, b, c, d, e, f] = *sq;
    let h = [heron16(d, e, f), heron16(b, c, f), heron16(a, c, e), heron16(a, b, d)];
    if h.iter().any(|x| !(*x > 0.0)) {
        return None;
    }
    let s = h.map(|x| 0.25 * x.sqrt());
    Some([-s[0], -s[1], s[2], s[3]])
}

struct System {
    ansatz: Ansatz,
    masses: MassVector,
    normalization: Normalization,
    /// Reference `L²` for scaling `S`.
    l2: f64,
}

impl System {
    /// Residual vector, or `None` outside the convex region.
    fn residual(&self, x: &[f64]) -> Option<DVector<f64>> {
        let (sq, nu, xi) = self.ansatz.unpack(x);
        if sq.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return None;
        }
        let dl = face_areas(&sq)?;
        let smallest = dl.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        // On the planar set the sum vanishes for the convex arrangement and is
        // at least twice the smallest area for every other arrangement.
        if dl.iter().sum::<f64>().abs() >= smallest || smallest < 1e-12 * self.l2 {
            return None;
        }
        let pairs = self.ansatz.pairs();
        let mut r = DVector::zeros(pairs.len() + 2);
        for (row, &k) in pairs.iter().enumerate() {
            let (i, j) = PAIRS[k];
            r[row] = psi_prime_unchecked(sq[k]) - nu / self.masses.pair_product(i, j) * dl[i] * dl[j] - xi;
        }
        let distances = SquaredDistances::from_array_unchecked(sq);
        r[pairs.len()] = cayley(&distances) / self.l2.powi(3);
        r[pairs.len() + 1] = match self.normalization {
            Normalization::FixInertiaOne => distances.inertia(&self.masses) - 1.0,
            Normalization::FixAOne => sq[0] - 1.0,
        };
        Some(r)
    }

    /// Scale-free max-norm used for the convergence test.
    fn measure(&self, x: &[f64], r: &DVector<f64>) -> f64 {
        let (sq, _, _) = self.ansatz.unpack(x);
        let psi_scale = sq.iter().fold(0.0_f64, |m, s| m.max(psi_prime_unchecked(*s).abs()));
        let n = self.ansatz.pairs().len();
        let cc = (0..n).fold(0.0_f64, |m, k| m.max(r[k].abs())) / psi_scale;
        cc.max(r[n].abs()).max(r[n + 1].abs())
    }

    fn jacobian(&self, x: &[f64]) -> Option<DMatrix<f64>> {
        let dim = x.len();
        let mut jac = DMatrix::zeros(dim, dim);
        let mut xp = x.to_vec();
        for col in 0..dim {
            let floor = if col < dim - 2 { self.l2 } else { 1.0 };
            let h = 1e-7 * x[col].abs().max(floor);
            xp[col] = x[col] + h;
            let rp = self.residual(&xp);
            xp[col] = x[col] - h;
            let rm = self.residual(&xp);
            xp[col] = x[col];
            let deriv = match (rp, rm) {
                (Some(p), Some(m)) => (p - m) / (2.0 * h),
                (Some(p), None) => (p - self.residual(x)?) / h,
                (None, Some(m)) => (self.residual(x)? - m) / h,
                (None, None) => return None,
            };
            jac.set_column(col, &deriv);
        }
        Some(jac)
    }
}

fn normalize_seed(seed: &DziobekState, m: &MassVector, norm: Normalization) -> DziobekState {
    let k = match norm {
        Normalization::FixInertiaOne => 1.0 / seed.sq.inertia(m),
        Normalization::FixAOne => 1.0 / seed.sq.a,
    };
    seed.dilate(k)
}

/// Raw Newton iterate result before geometric validation.
struct Converged {
    x: Vec<f64>,
    iterations: usize,
}

fn iterate(system: &System, x0: Vec<f64>, opts: &SolveOptions) -> Result<Converged> {
    let mut x = x0;
    let mut r = system
        .residual(&x)
        .ok_or(Error::LeftConvexRegion { iterations: 0 })?;
    for it in 0..opts.max_iterations {
        if system.measure(&x, &r) < opts.residual_tol {
            return Ok(Converged { x, iterations: it });
        }
        let jac = system
            .jacobian(&x)
            .ok_or(Error::LeftConvexRegion { iterations: it })?;
        let step = jac
            .lu()
            .solve(&(-&r))
            .filter(|s| s.iter().all(|v| v.is_finite()))
            .ok_or(Error::SingularJacobian { iterations: it })?;
        let norm = r.norm();
        let terminal = norm < 1e-9;
        let mut t = opts.damping;
        let mut any_admissible = false;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(xi, si)| xi + t * si).collect();
            if let Some(rt) = system.residual(&trial) {
                any_admissible = true;
                if terminal || rt.norm() < (1.0 - 1e-4 * t) * norm {
                    accepted = Some((trial, rt));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((xn, rn)) => {
                x = xn;
                r = rn;
            }
            None if any_admissible => {
                return Err(Error::NoConvergence {
                    iterations: it + 1,
                    residual: system.measure(&x, &r),
                })
            }
            None => return Err(Error::LeftConvexRegion { iterations: it + 1 }),
        }
    }
    if system.measure(&x, &r) < opts.residual_tol {
        return Ok(Converged {
            x,
            iterations: opts.max_iterations,
        });
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iterations,
        residual: system.measure(&x, &r),
    })
}

/// Turn a converged iterate into a validated report: the distances must
/// realize as a convex quadrilateral and `ν` must be positive.
fn finish(
    ansatz: Ansatz,
    m: &MassVector,
    opts: &SolveOptions,
    done: Converged,
) -> Result<SolveReport> {
    let (sq, nu, xi) = ansatz.unpack(&done.x);
    let sq = SquaredDistances::from_array(sq)?;
    let cfg = realize(&sq, m).map_err(|_| Error::LeftConvexRegion {
        iterations: done.iterations,
    })?;
    let areas = oriented_areas(&cfg).map_err(|_| Error::LeftConvexRegion {
        iterations: done.iterations,
    })?;
    let state = DziobekState { sq, areas, nu, xi };
    let final_residual = ResidualVector::evaluate(&state, m)?.scaled_max(&sq);
    let converged = final_residual < opts.residual_tol.max(1e-13) * 10.0 && nu > 0.0;
    if !converged {
        return Err(Error::NoConvergence {
            iterations: done.iterations,
            residual: final_residual,
        });
    }
    Ok(SolveReport {
        masses: *m,
        state,
        iterations: done.iterations,
        final_residual,
        converged,
        symmetry: classify_symmetry(&state, SYMMETRY_TOL),
    })
}

fn system_for(ansatz: Ansatz, m: &MassVector, opts: &SolveOptions, seed: &DziobekState) -> System {
    System {
        ansatz,
        masses: *m,
        normalization: opts.normalization,
        l2: seed.sq.scale2(),
    }
}

/// Damped Newton on the full eight-unknown system from `seed`.
pub fn newton_solve(seed: &DziobekState, m: &MassVector, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let seed = normalize_seed(seed, m, opts.normalization);
    let system = system_for(Ansatz::Full, m, opts, &seed);
    if system.residual(&Ansatz::Full.pack(&seed)).is_none() {
        return Err(Error::NotConvex);
    }
    let done = iterate(&system, Ansatz::Full.pack(&seed), opts)?;
    finish(Ansatz::Full, m, opts, done)
}

fn kite_newton(seed: &DziobekState, m: &MassVector, opts: &SolveOptions) -> Result<SolveReport> {
    let seed = normalize_seed(seed, m, opts.normalization);
    let system = system_for(Ansatz::Kite, m, opts, &seed);
    let done = iterate(&system, Ansatz::Kite.pack(&seed), opts)?;
    finish(Ansatz::Kite, m, opts, done)
}

/// Kite with the symmetry axis through bodies 3 and 4 (`r13 = r23`,
/// `r14 = r24`), solved on the reduced six-unknown system.
///
/// Starts from the rhombus for the geometric-mean mass `√(αβ)` and falls back
/// to continuation in the masses when the direct solve fails.
pub fn solve_kite(m: &MassVector, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let g = (m.alpha * m.beta).sqrt();
    let start_masses = MassVector::with_delta(m.delta, g, g)?;
    let start = solve_rhombus_masses(&start_masses, opts)?;
    if let Ok(rep) = kite_newton(&start.state, m, opts) {
        return Ok(rep);
    }
    // log-linear path from (g, g) to (α, β)
    let path = |s: f64| {
        MassVector::with_delta(
            m.delta,
            g.powf(1.0 - s) * m.alpha.powf(s),
            g.powf(1.0 - s) * m.beta.powf(s),
        )
    };
    let mut current = start.state;
    let mut total_iterations = start.iterations;
    let mut s: f64 = 0.0;
    let mut ds: f64 = 0.25;
    while s < 1.0 {
        let next = (s + ds).min(1.0);
        match kite_newton(&current, &path(next)?, opts) {
            Ok(rep) => {
                current = rep.state;
                total_iterations += rep.iterations;
                s = next;
                ds = (ds * 2.0).min(0.5);
            }
            Err(e) => {
                ds *= 0.5;
                if ds < 1e-6 {
                    return Err(e);
                }
            }
        }
    }
    let mut rep = kite_newton(&current, m, opts)?;
    rep.iterations += total_iterations;
    Ok(rep)
}

/// Residual of the rhombus condition in the diagonal ratio `ρ = r/p`, with
/// `q1,2 = (∓p, 0)` and `q3,4 = (0, ±r)`. Changes sign exactly once on
/// `(1/√3, √3)`, the range where `ν > 0`.
fn rhombus_gap(rho: f64, ratio: f64) -> f64 {
    let p = psi_prime_unchecked;
    let side = 1.0 + rho * rho;
    ratio * (p(4.0 * rho * rho) - p(side)) - (p(4.0) - p(side))
}

fn solve_rhombus_masses(m: &MassVector, opts: &SolveOptions) -> Result<SolveReport> {
    if m.alpha != m.beta {
        return Err(Error::Domain("rhombus needs alpha == beta".into()));
    }
    // masses (δ, δ, α, α) behave like (1, 1, α/δ, α/δ)
    let ratio = m.alpha / m.delta;
    let mut lo = 1.0 / 3f64.sqrt();
    let mut hi = 3f64.sqrt();
    let mut iterations = 0;
    while hi - lo > 1e-16 * hi && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if rhombus_gap(mid, ratio) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let rho = 0.5 * (lo + hi);
    let side = 1.0 + rho * rho;
    let sq = SquaredDistances::new(4.0, side, side, side, side, 4.0 * rho * rho)?;
    let areas = crate::geometry::OrientedAreas::new([-rho, -rho, rho, rho]);
    // ψ'(4) − ψ'(side) = ν ρ² (1/δ² + 1/(δα))
    let p = psi_prime_unchecked;
    let d = m.delta;
    let nu = (p(4.0) - p(side)) / (rho * rho * (1.0 / (d * d) + 1.0 / (d * m.alpha)));
    let xi = p(4.0) - nu * rho * rho / (d * d);
    let state = normalize_seed(&DziobekState { sq, areas, nu, xi }, m, opts.normalization);
    let final_residual = ResidualVector::evaluate(&state, m)?.scaled_max(&state.sq);
    let converged = final_residual < opts.residual_tol.max(1e-13) * 10.0 && nu > 0.0;
    if !converged {
        return Err(Error::NoConvergence {
            iterations,
            residual: final_residual,
        });
    }
    Ok(SolveReport {
        masses: *m,
        state,
        iterations,
        final_residual,
        converged,
        symmetry: classify_symmetry(&state, SYMMETRY_TOL),
    })
}

/// Rhombus for masses `(1, 1, α, α)` by bisection on the diagonal ratio.
pub fn solve_rhombus(alpha: f64, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    solve_rhombus_masses(&MassVector::new(alpha, alpha)?, opts)
}

/// Diagonal ratio `|q3 q4| / |q1 q2|` of a solved state.
pub fn diagonal_ratio(state: &DziobekState) -> f64 {
    (state.sq.f / state.sq.a).sqrt()
}

/// `start, start + step, ..., stop` with every entry rounded to twelve decimals,
/// so `0.1` steps give `0.3` rather than `0.30000000000000004`.
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && start.is_finite() && stop.is_finite() && stop >= start) {
        return Err(Error::Domain(format!("bad grid {start}:{stop}:{step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n)
        .map(|k| {
            let x = start + k as f64 * step;
            format!("{x:.12}").parse().expect("formatted float parses")
        })
        .collect())
}

/// One grid cell of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub alpha: f64,
    pub beta: f64,
    pub report: Option<SolveReport>,
    pub frame: Option<CanonicalFrame>,
    pub lambda_cc: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub alpha_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
    /// Row-major: index `i * beta_grid.len() + j`.
    pub cells: Vec<SweepCell>,
}

impl SweepTable {
    pub fn cell(&self, i: usize, j: usize) -> &SweepCell {
        &self.cells[i * self.beta_grid.len() + j]
    }

    pub fn all_converged(&self) -> bool {
        self.cells.iter().all(|c| c.report.is_some())
    }
}

fn sweep_cell(alpha: f64, beta: f64, result: Result<SolveReport>) -> SweepCell {
    match result {
        Ok(rep) => {
            let cfg = realize(&rep.state.sq, &rep.masses).ok();
            let frame = cfg.as_ref().and_then(|c| canonicalize(c).ok());
            let lambda_cc = cfg
                .as_ref()
                .and_then(|c| newtonian_oracle(c).ok())
                .map(|o| o.lambda_cc);
            SweepCell {
                alpha,
                beta,
                report: Some(rep),
                frame,
                lambda_cc,
                error: None,
            }
        }
        Err(e) => SweepCell {
            alpha,
            beta,
            report: None,
            frame: None,
            lambda_cc: None,
            error: Some(e.to_string()),
        },
    }
}

fn validate_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Domain(format!("{name} grid is empty")));
    }
    if let Some(x) = grid.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(Error::Domain(format!("{name} grid entry {x} is not positive")));
    }
    Ok(())
}

/// Solve every `(α, β)` cell. Rows run independently; within a row each cell
/// is warm-started from its neighbour, walking `β` upward (or downward when
/// `reverse`). A failed warm start falls back to the kite solver.
pub fn sweep_ordered(
    alpha_grid: &[f64],
    beta_grid: &[f64],
    opts: &SolveOptions,
    exec: Execution,
    reverse: bool,
) -> Result<SweepTable> {
    validate_grid("alpha", alpha_grid)?;
    validate_grid("beta", beta_grid)?;
    opts.validate()?;
    let rows = exec::map(exec, alpha_grid, |&alpha| {
        let mut order: Vec<usize> = (0..beta_grid.len()).collect();
        if reverse {
            order.reverse();
        }
        let mut row: Vec<Option<SweepCell>> = vec![None; beta_grid.len()];
        let mut previous: Option<DziobekState> = None;
        for j in order {
            let beta = beta_grid[j];
            let result = MassVector::new(alpha, beta).and_then(|m| {
                let warm = previous
                    .as_ref()
                    .map(|seed| newton_solve(seed, &m, opts))
                    .and_then(|r| r.ok());
                match warm {
                    Some(rep) => Ok(rep),
                    None => solve_kite(&m, opts).and_then(|k| newton_solve(&k.state, &m, opts)),
                }
            });
            if let Ok(rep) = &result {
                previous = Some(rep.state);
            }
            row[j] = Some(sweep_cell(alpha, beta, result));
        }
        row.into_iter().map(|c| c.expect("every cell visited")).collect::<Vec<_>>()
    });
    Ok(SweepTable {
        alpha_grid: alpha_grid.to_vec(),
        beta_grid: beta_grid.to_vec(),
        cells: rows.into_iter().flatten().collect(),
    })
}

pub fn sweep(
    alpha_grid: &[f64],
    beta_grid: &[f64],
    opts: &SolveOptions,
    exec: Execution,
) -> Result<SweepTable> {
    sweep_ordered(alpha_grid, beta_grid, opts, exec, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{congruent, squared_distances, PlanarConfig, Point};

    fn square_seed(noise: [f64; 6]) -> DziobekState {
        let base = [2.0, 1.0, 1.0, 1.0, 1.0, 2.0];
        let sq = SquaredDistances::from_array(std::array::from_fn(|k| base[k] * (1.0 + noise[k]))).unwrap();
        DziobekState::from_distances(sq, &MassVector::equal()).unwrap()
    }

    #[test]
    fn exact_square_converges_immediately() {
        let rep = newton_solve(&square_seed([0.0; 6]), &MassVector::equal(), &SolveOptions::default()).unwrap();
        assert!(rep.converged);
        assert!(rep.iterations <= 2);
        assert_eq!(rep.symmetry, SymmetryLabel::Square);
    }

    #[test]
    fn perturbed_square_recovers_multipliers() {
        let seed = square_seed([0.01, -0.01, 0.01, 0.005, -0.008, -0.01]);
        let rep = newton_solve(&seed, &MassVector::equal(), &SolveOptions::default()).unwrap();
        assert_eq!(rep.symmetry, SymmetryLabel::Square);
        // back to unit side: b = 1
        let unit = rep.state.dilate(1.0 / rep.state.sq.b);
        assert!((unit.nu - (1.0 - 2f64.powf(-1.5))).abs() < 1e-9);
        assert!((unit.xi + 0.3383883476).abs() < 1e-9);
        assert!((rep.state.sq.inertia(&MassVector::equal()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fix_a_one_normalization() {
        let opts = SolveOptions {
            normalization: Normalization::FixAOne,
            ..Default::default()
        };
        let rep = newton_solve(&square_seed([0.01, 0.0, -0.01, 0.0, 0.01, 0.0]), &MassVector::equal(), &opts).unwrap();
        assert!((rep.state.sq.a - 1.0).abs() < 1e-12);
        assert!((rep.state.sq.b - 0.5).abs() < 1e-10);
    }

    #[test]
    fn flattened_square_never_returns_a_wrong_answer() {
        let h = 0.5_f64.sqrt();
        let flat = PlanarConfig::new(
            [
                Point::new(-h, 0.0),
                Point::new(h, 0.0),
                Point::new(0.0, h / 100.0),
                Point::new(0.0, -h / 100.0),
            ],
            MassVector::equal(),
        )
        .unwrap();
        let seed = DziobekState::from_distances(squared_distances(&flat), &MassVector::equal()).unwrap();
        match newton_solve(&seed, &MassVector::equal(), &SolveOptions::default()) {
            Err(Error::LeftConvexRegion { .. }) | Err(Error::NoConvergence { .. }) => {}
            Ok(rep) => {
                let cfg = realize(&rep.state.sq, &rep.masses).unwrap();
                let square = realize(&SquaredDistances::new(2.0, 1.0, 1.0, 1.0, 1.0, 2.0).unwrap(), &MassVector::equal()).unwrap();
                assert!(congruent(&cfg, &square, 1e-9));
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn decimal_grid() {
        let g = linear_grid(0.1, 3.0, 0.1).unwrap();
        assert_eq!(g.len(), 30);
        assert_eq!(g[2], 0.3);
        assert_eq!(g[29], 3.0);
        assert_eq!(linear_grid(0.2, 1.0, 0.2).unwrap(), vec![0.2, 0.4, 0.6, 0.8, 1.0]);
        assert!(linear_grid(1.0, 0.5, 0.1).is_err());
    }

    #[test]
    fn invalid_options_are_rejected() {
        let seed = square_seed([0.0; 6]);
        let bad = SolveOptions {
            damping: 0.0,
            ..Default::default()
        };
        assert!(newton_solve(&seed, &MassVector::equal(), &bad).is_err());
        let bad = SolveOptions {
            max_iterations: 0,
            ..Default::default()
        };
        assert!(newton_solve(&seed, &MassVector::equal(), &bad).is_err());
    }

    #[test]
    fn iteration_budget_is_enforced() {
        let seed = square_seed([0.2, -0.1, 0.15, 0.1, -0.2, -0.1]);
        let opts = SolveOptions {
            max_iterations: 1,
            ..Default::default()
        };
        assert!(matches!(
            newton_solve(&seed, &MassVector::equal(), &opts),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn kite_for_equal_masses_is_square() {
        let rep = solve_kite(&MassVector::equal(), &SolveOptions::default()).unwrap();
        let sq = rep.state.sq;
        assert!((sq.a - sq.f).abs() < 1e-10);
        assert!((sq.b - sq.c).abs() < 1e-10);
    }

    #[test]
    fn kite_has_exact_mirror_distances() {
        let m = MassVector::new(0.5, 0.8).unwrap();
        let rep = solve_kite(&m, &SolveOptions::default()).unwrap();
        let sq = rep.state.sq;
        assert_eq!(sq.b, sq.d);
        assert_eq!(sq.c, sq.e);
        assert!((sq.b - sq.c).abs() > 1e-3);
        assert_eq!(rep.symmetry, SymmetryLabel::KiteAxis34);
    }

    #[test]
    fn rhombus_at_unit_mass_is_square() {
        let rep = solve_rhombus(1.0, &SolveOptions::default()).unwrap();
        assert!((diagonal_ratio(&rep.state) - 1.0).abs() < 1e-12);
        assert_eq!(rep.symmetry, SymmetryLabel::Square);
    }

    #[test]
    fn rhombus_rejects_bad_mass() {
        assert!(solve_rhombus(0.0, &SolveOptions::default()).is_err());
        assert!(solve_rhombus(-1.0, &SolveOptions::default()).is_err());
    }

    #[test]
    fn single_cell_sweep() {
        let t = sweep(&[1.0], &[1.0], &SolveOptions::default(), Execution::Sequential).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.cells[0].report.unwrap().symmetry, SymmetryLabel::Square);
        assert!(sweep(&[], &[1.0], &SolveOptions::default(), Execution::Sequential).is_err());
        assert!(sweep(&[1.0], &[-1.0], &SolveOptions::default(), Execution::Sequential).is_err());
    }
}
