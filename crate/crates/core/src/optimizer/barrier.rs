//! Small dense log-barrier interior-point method for problems of the form
//!
//! ```text
//! maximize   cᵀz
//! subject to aᵢᵀz ≤ bᵢ             (linear rows)
//!            ‖z[2k], z[2k+1]‖ ≤ 1   (one unit disk per variable pair)
//! ```
//!
//! It is the independent cross-check for the per-step analytic solve and
//! reproduces the near-boundary behaviour of interior-point solvers.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSettings {
    /// Stop when the barrier's duality-gap bound `θ / t` falls below this.
    pub gap_tol: f64,
    /// Factor by which `t` grows between centring steps.
    pub mu: f64,
    pub max_newton: usize,
}

impl Default for BarrierSettings {
    fn default() -> Self {
        Self {
            gap_tol: 1e-10,
            mu: 20.0,
            max_newton: 100,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConicProblem {
    pub c: DVector<f64>,
    pub a: DMatrix<f64>,
    pub b: DVector<f64>,
}

#[derive(Debug, Clone)]
pub struct BarrierSolution {
    pub z: DVector<f64>,
    pub objective: f64,
    pub gap_bound: f64,
    pub newton_steps: usize,
}

impl ConicProblem {
    fn disks(&self) -> usize {
        self.c.len() / 2
    }

    /// Barrier degree `θ`: one per linear row, two per disk.
    fn theta(&self) -> f64 {
        (self.a.nrows() + 2 * self.disks()) as f64
    }

    fn slacks(&self, z: &DVector<f64>) -> Option<(DVector<f64>, Vec<f64>)> {
        let lin = &self.b - &self.a * z;
        if lin.iter().any(|s| *s <= 0.0) {
            return None;
        }
        let mut disk = Vec::with_capacity(self.disks());
        for k in 0..self.disks() {
            let s = 1.0 - z[2 * k] * z[2 * k] - z[2 * k + 1] * z[2 * k + 1];
            if s <= 0.0 {
                return None;
            }
            disk.push(s);
        }
        Some((lin, disk))
    }

    /// `t·(−cᵀz) − Σ log slacks`, or `None` outside the interior.
    fn merit(&self, z: &DVector<f64>, t: f64) -> Option<f64> {
        let (lin, disk) = self.slacks(z)?;
        let barrier: f64 =
            lin.iter().map(|s| s.ln()).sum::<f64>() + disk.iter().map(|s| s.ln()).sum::<f64>();
        Some(-t * self.c.dot(z) - barrier)
    }
}

/// Solves from a strictly feasible `start`.
pub fn solve(
    problem: &ConicProblem,
    start: DVector<f64>,
    settings: &BarrierSettings,
) -> Result<BarrierSolution> {
    let n = problem.c.len();
    if !n.is_multiple_of(2) || problem.a.ncols() != n || problem.a.nrows() != problem.b.len() {
        return Err(Error::Solver(
            "inconsistent conic problem dimensions".into(),
        ));
    }
    if problem.slacks(&start).is_none() {
        return Err(Error::Solver("start point is not strictly feasible".into()));
    }
    let theta = problem.theta();
    let scale = problem.c.amax().max(f64::MIN_POSITIVE);
    let mut t = 1.0 / scale;
    let mut z = start;
    let mut newton_steps = 0;
    loop {
        // Centring by damped Newton.
        for _ in 0..settings.max_newton.max(1) {
            let (lin, disk) = problem.slacks(&z).expect("iterate stays interior");
            let mut grad = -t * &problem.c;
            let mut hess = DMatrix::<f64>::zeros(n, n);
            for (i, s) in lin.iter().enumerate() {
                let row = problem.a.row(i).transpose();
                grad += &row / *s;
                hess += (&row * row.transpose()) / (s * s);
            }
            for (k, s) in disk.iter().enumerate() {
                let (i, j) = (2 * k, 2 * k + 1);
                let (zi, zj) = (z[i], z[j]);
                grad[i] += 2.0 * zi / s;
                grad[j] += 2.0 * zj / s;
                let s2 = s * s;
                hess[(i, i)] += 2.0 / s + 4.0 * zi * zi / s2;
                hess[(j, j)] += 2.0 / s + 4.0 * zj * zj / s2;
                hess[(i, j)] += 4.0 * zi * zj / s2;
                hess[(j, i)] += 4.0 * zi * zj / s2;
            }
            let chol = hess
                .cholesky()
                .ok_or_else(|| Error::Solver("barrier Hessian is not positive definite".into()))?;
            let step = -chol.solve(&grad);
            let decrement = -grad.dot(&step);
            newton_steps += 1;
            if decrement / 2.0 <= 1e-12 {
                break;
            }
            let f0 = problem.merit(&z, t).expect("interior");
            let mut alpha = 1.0;
            loop {
                let trial = &z + alpha * &step;
                if let Some(f) = problem.merit(&trial, t) {
                    if f <= f0 - 0.25 * alpha * decrement {
                        z = trial;
                        break;
                    }
                }
                alpha *= 0.5;
                if alpha < 1e-14 {
                    return Err(Error::Solver("line search stalled".into()));
                }
            }
        }
        let gap_bound = theta / t;
        if gap_bound <= settings.gap_tol {
            return Ok(BarrierSolution {
                objective: problem.c.dot(&z),
                z,
                gap_bound,
                newton_steps,
            });
        }
        t *= settings.mu;
    }
}
