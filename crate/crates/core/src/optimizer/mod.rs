//! Remaining-horizon tilt optimisation.
//!
//! With the panel azimuth following the sun, a step's tilt enters only
//! through `x = cos δΣ` and `y = sin δΣ`. Irradiance and field PAR are linear
//! in `(x, y)`; relaxing `x² + y² = 1` to the unit disk turns the horizon into
//! a conic program whose objective and constraints never couple two steps.
//! The official path therefore solves each step in closed form; the
//! interior-point path in [`barrier`] exists for cross-validation.

pub mod barrier;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::crop_epic::{
    advance_phenology, interception, CropParams, CropState, DailyClimate, BIOMASS_FACTOR,
};
use crate::error::{Error, Result};
use crate::pv_array::{diffuse_coefficients, panel_irradiance, power, PvParams};
use crate::shading::ShadingAffineFit;
use crate::solar_geometry::{AngleRange, SolarPosition, Tracking};
use crate::weather::WeatherSample;
use barrier::{BarrierSettings, ConicProblem};

/// `x² + y²` within this of 1 counts as on the circle.
pub const EXACT_TOL: f64 = 1e-6;
/// Slack allowed on the slab constraint when screening candidates.
const FEASIBILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepCoefficients {
    pub t: usize,
    pub day: usize,
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    /// `d1 = sin(90° − β)`, `d2 = cos(90° − β)`.
    pub d1: f64,
    pub d2: f64,
    pub dni: f64,
    pub dhi: f64,
    /// Sun-tracking tilt at this step, degrees.
    pub tracking_tilt: f64,
}

impl StepCoefficients {
    pub fn new(
        t: usize,
        day: usize,
        weather: &WeatherSample,
        sun: &SolarPosition,
        tracking_tilt: f64,
        fit: &ShadingAffineFit,
        alpha: f64,
    ) -> Self {
        let (b1, b2) = diffuse_coefficients(weather.dhi, sun.altitude);
        let z = (90.0 - sun.altitude).to_radians();
        let (dni, dhi) = (weather.dni, weather.dhi);
        Self {
            t,
            day,
            b1,
            b2,
            c1: -fit.g1 * dni * alpha,
            c2: alpha * (dni - fit.g2 * dni + dhi),
            d1: z.sin(),
            d2: z.cos(),
            dni,
            dhi,
            tracking_tilt,
        }
    }

    pub fn is_feasible(&self, x: f64, y: f64, tol: f64) -> bool {
        let s = self.d1 * x + self.d2 * y;
        x * x + y * y <= 1.0 + tol && s >= -tol && s <= 1.0 + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepDecision {
    pub t: usize,
    pub x: f64,
    pub y: f64,
    pub exact: bool,
    /// Applied tilt minus the sun-tracking tilt, degrees.
    pub delta_tilt: f64,
    /// Applied panel tilt, degrees.
    pub tilt: f64,
    pub tilt_clamped: bool,
    /// The objective vanished and sun tracking was returned.
    pub degenerate: bool,
}

/// Linearised remaining-horizon problem in LER units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HorizonProblem {
    pub omega: f64,
    pub t0: usize,
    /// Daylight steps in `[t0, T)`.
    pub steps: Vec<StepCoefficients>,
    /// Predicted-yield LER gained per unit of field PAR (W/m²) at a step of
    /// day `d`, indexed by absolute day.
    pub day_weights: Vec<f64>,
    /// PV LER gained per W/m² of panel irradiance, one per entry of `steps`.
    pub revenue_weights: Vec<f64>,
    /// Part of the predicted PV LER not multiplied by a decision variable.
    pub accrued_pv: f64,
    /// Part of the predicted crop LER not multiplied by a decision variable.
    pub accrued_crop: f64,
    pub tilt_limits: AngleRange,
}

impl HorizonProblem {
    /// `(p, q)` such that step `i` contributes `p·x + q·y` to the objective.
    pub fn step_objective(&self, i: usize) -> (f64, f64) {
        let s = &self.steps[i];
        let rw = self.revenue_weights[i];
        let cw = self.day_weights[s.day];
        let p = self.omega * rw * (s.dni + s.b1) + (1.0 - self.omega) * cw * s.c1;
        let q = self.omega * rw * s.b2;
        (p, q)
    }

    /// Predicted `(LER_pv, LER_crop)` of a plan on the linear model.
    pub fn predict(&self, xy: &[(f64, f64)]) -> (f64, f64) {
        let mut pv = self.accrued_pv;
        let mut crop = self.accrued_crop;
        for ((s, rw), &(x, y)) in self.steps.iter().zip(&self.revenue_weights).zip(xy) {
            pv += rw * ((s.dni + s.b1) * x + s.b2 * y);
            crop += self.day_weights[s.day] * (s.c1 * x + s.c2);
        }
        (pv, crop)
    }

    pub fn objective(&self, xy: &[(f64, f64)]) -> f64 {
        let (pv, crop) = self.predict(xy);
        self.omega * pv + (1.0 - self.omega) * crop
    }
}

/// Everything [`build_problem`] needs about the season so far and the
/// weather ahead.
#[derive(Debug, Clone, Copy)]
pub struct HorizonInputs<'a> {
    pub t0: usize,
    pub dt: f64,
    pub steps_per_day: usize,
    /// Full-season series: realized before `t0`, forecast from `t0` on.
    pub weather: &'a [WeatherSample],
    pub suns: &'a [SolarPosition],
    pub tracking: &'a [Tracking],
    pub fits: &'a [Option<ShadingAffineFit>],
    pub tilt_limits: AngleRange,
    pub pv: &'a PvParams,
    pub crop: &'a CropParams,
    /// Crop state at the end of the day before `t0`'s day.
    pub state: CropState,
    /// Realized field PAR summed over the steps of `t0`'s day before `t0`.
    pub day_par_realized: f64,
    /// Realized revenue of steps before `t0`, $.
    pub revenue_realized: f64,
    pub y_crop_only: f64,
    pub revenue_tracking: f64,
}

/// Decision steps: sun above the horizon and some irradiance.
pub fn is_decision_step(weather: &WeatherSample, sun: &SolarPosition) -> bool {
    sun.is_daylight() && weather.dni + weather.dhi > 0.0
}

/// Hour-of-day price index of a weather sample.
pub fn price_hour(weather: &WeatherSample) -> usize {
    use chrono::Timelike;
    weather.timestamp.hour() as usize
}

/// Leaf area used for interception and stress on each day from `first_day`
/// on, predicted from `state` with the temperatures in `weather`.
pub fn phenology_schedule(
    state: &CropState,
    weather: &[WeatherSample],
    steps_per_day: usize,
    first_day: usize,
    crop: &CropParams,
) -> Result<Vec<(f64, f64)>> {
    let days = weather.len() / steps_per_day;
    let mut prev = *state;
    let mut out = Vec::with_capacity(days.saturating_sub(first_day));
    for d in first_day..days {
        let temps: Vec<f64> = weather[d * steps_per_day..(d + 1) * steps_per_day]
            .iter()
            .map(|w| w.temperature)
            .collect();
        let next = advance_phenology(&prev, &DailyClimate::from_hourly(&temps)?, crop);
        out.push((interception(prev.lai), next.reg));
        prev = next;
    }
    Ok(out)
}

pub fn build_problem(inputs: &HorizonInputs<'_>, omega: f64) -> Result<HorizonProblem> {
    let HorizonInputs {
        t0,
        dt,
        steps_per_day,
        weather,
        suns,
        tracking,
        fits,
        pv,
        crop,
        ..
    } = *inputs;
    let horizon = weather.len();
    if !(0.0..=1.0).contains(&omega) {
        return Err(Error::Build(format!("omega {omega} outside [0, 1]")));
    }
    if steps_per_day == 0 || horizon % steps_per_day != 0 {
        return Err(Error::Build(format!(
            "{horizon} steps is not a whole number of days"
        )));
    }
    if suns.len() != horizon || tracking.len() != horizon || fits.len() != horizon {
        return Err(Error::Build(
            "weather, sun, tracking and fit series differ in length".into(),
        ));
    }
    if t0 > horizon {
        return Err(Error::Build(format!("t0 = {t0} beyond horizon {horizon}")));
    }
    if !(inputs.y_crop_only > 0.0 && inputs.revenue_tracking > 0.0) {
        return Err(Error::UndefinedLer(format!(
            "baselines must be positive: yield {}, revenue {}",
            inputs.y_crop_only, inputs.revenue_tracking
        )));
    }
    let days = horizon / steps_per_day;
    let first_day = (t0 / steps_per_day).min(days);
    if inputs.state.day != first_day {
        return Err(Error::Build(format!(
            "crop state is at day {} but t0 falls on day {first_day}",
            inputs.state.day
        )));
    }
    let crop_scale = BIOMASS_FACTOR * crop.be * dt * crop.hi / inputs.y_crop_only;
    let mut day_weights = vec![0.0; days];
    for (i, (intercept, reg)) in
        phenology_schedule(&inputs.state, weather, steps_per_day, first_day, crop)?
            .into_iter()
            .enumerate()
    {
        day_weights[first_day + i] = crop_scale * reg * intercept;
    }

    let mut accrued_crop = crop.hi * inputs.state.biomass / inputs.y_crop_only;
    if first_day < days {
        accrued_crop += day_weights[first_day] * inputs.day_par_realized;
    }
    let mut tracking_revenue_ahead = 0.0;
    let mut linear_offset = 0.0;
    let mut steps = Vec::new();
    let mut revenue_weights = Vec::new();
    for t in t0..horizon {
        let (w, sun) = (&weather[t], &suns[t]);
        let day = t / steps_per_day;
        let price = pv.price_at_hour(price_hour(w));
        if !is_decision_step(w, sun) {
            accrued_crop += day_weights[day] * pv.alpha * (w.dni + w.dhi);
            continue;
        }
        let Tracking::Track { orientation, .. } = tracking[t] else {
            return Err(Error::Build(format!(
                "no tracking orientation at daylight step {t}"
            )));
        };
        let fit = fits[t]
            .as_ref()
            .ok_or_else(|| Error::Build(format!("missing shading fit for daylight step {t}")))?;
        let (i_db, i_diff) = panel_irradiance(w, sun, &orientation);
        tracking_revenue_ahead += price * power(pv, i_db, i_diff) * dt;
        let coeff = StepCoefficients::new(t, day, w, sun, orientation.tilt, fit, pv.alpha);
        let rw = price * dt * pv.gain() / inputs.revenue_tracking;
        linear_offset += rw * (coeff.dni + coeff.b1);
        steps.push(coeff);
        revenue_weights.push(rw);
    }
    let accrued_pv = (inputs.revenue_realized + tracking_revenue_ahead) / inputs.revenue_tracking
        - linear_offset;
    let problem = HorizonProblem {
        omega,
        t0,
        steps,
        day_weights,
        revenue_weights,
        accrued_pv,
        accrued_crop,
        tilt_limits: inputs.tilt_limits,
    };
    if !problem
        .day_weights
        .iter()
        .chain(&problem.revenue_weights)
        .chain([&problem.accrued_pv, &problem.accrued_crop])
        .all(|v| v.is_finite())
    {
        return Err(Error::Build("non-finite problem weights".into()));
    }
    Ok(problem)
}

/// Result of [`recover_tilt`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveredTilt {
    pub tilt: f64,
    pub delta_tilt: f64,
    pub clamped: bool,
}

/// Tilt deviation encoded by `(x, y)`. On the circle it is the polar angle
/// folded into [-90°, 90°]: δ and δ ± 180° describe the same panel plane, and
/// for `x ≥ 0` this is just `asin y`. Inside the disk `arccos x` and `asin y`
/// disagree and the larger magnitude wins, signed like `y` (negative when
/// `y = 0`).
pub fn recover_delta(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    if (1.0 - r2).abs() <= EXACT_TOL {
        let a = y.atan2(x).to_degrees();
        return if a > 90.0 {
            a - 180.0
        } else if a < -90.0 {
            a + 180.0
        } else {
            a
        };
    }
    let from_y = y.clamp(-1.0, 1.0).asin().to_degrees();
    let from_x = x.clamp(-1.0, 1.0).acos().to_degrees();
    if from_x > from_y.abs() {
        if y > 0.0 {
            from_x
        } else {
            -from_x
        }
    } else {
        from_y
    }
}

pub fn recover_tilt(x: f64, y: f64, tracking_tilt: f64, tilt_limits: &AngleRange) -> RecoveredTilt {
    let wanted = tracking_tilt + recover_delta(x, y);
    let (tilt, clamped) = tilt_limits.clamp(wanted);
    RecoveredTilt {
        tilt,
        delta_tilt: tilt - tracking_tilt,
        clamped,
    }
}

/// Points of the feasible set that can maximise a linear objective.
fn candidates(coeff: &StepCoefficients, p: f64, q: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
    let norm = p.hypot(q);
    let free = (norm > 0.0).then(|| (p / norm, q / norm));
    let (d1, d2) = (coeff.d1, coeff.d2);
    free.into_iter()
        .filter(move |&(x, y)| coeff.is_feasible(x, y, FEASIBILITY_TOL))
        .chain([(d2, -d1), (-d2, d1), (d1, d2)])
}

/// Exact maximiser of `p·x + q·y` over the step's feasible set. Ties go to
/// the larger `x`, the point closer to sun tracking.
pub fn solve_step(coeff: &StepCoefficients, p: f64, q: f64) -> (f64, f64, bool) {
    if p == 0.0 && q == 0.0 {
        return (1.0, 0.0, true);
    }
    let scale = p.abs() + q.abs();
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for (x, y) in candidates(coeff, p, q) {
        let v = p * x + q * y;
        let better =
            v > best.0 + 1e-14 * scale || ((v - best.0).abs() <= 1e-14 * scale && x > best.1);
        if better {
            best = (v, x, y);
        }
    }
    (best.1, best.2, false)
}

/// Single-step solve by the interior-point path.
pub fn solve_step_barrier(
    coeff: &StepCoefficients,
    p: f64,
    q: f64,
    settings: &BarrierSettings,
) -> Result<(f64, f64)> {
    let problem = ConicProblem {
        c: DVector::from_vec(vec![p, q]),
        a: DMatrix::from_row_slice(2, 2, &[-coeff.d1, -coeff.d2, coeff.d1, coeff.d2]),
        b: DVector::from_vec(vec![0.0, 1.0]),
    };
    let start = DVector::from_vec(vec![0.5 * coeff.d1, 0.5 * coeff.d2]);
    let s = barrier::solve(&problem, start, settings)?;
    Ok((s.z[0], s.z[1]))
}

/// Solves every step of the horizon as one conic program.
pub fn solve_horizon_joint(
    problem: &HorizonProblem,
    settings: &BarrierSettings,
) -> Result<Vec<(f64, f64)>> {
    let n = problem.steps.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut c = DVector::zeros(2 * n);
    let mut a = DMatrix::zeros(2 * n, 2 * n);
    let mut b = DVector::zeros(2 * n);
    let mut start = DVector::zeros(2 * n);
    for (i, s) in problem.steps.iter().enumerate() {
        let (p, q) = problem.step_objective(i);
        c[2 * i] = p;
        c[2 * i + 1] = q;
        a[(2 * i, 2 * i)] = -s.d1;
        a[(2 * i, 2 * i + 1)] = -s.d2;
        a[(2 * i + 1, 2 * i)] = s.d1;
        a[(2 * i + 1, 2 * i + 1)] = s.d2;
        b[2 * i + 1] = 1.0;
        start[2 * i] = 0.5 * s.d1;
        start[2 * i + 1] = 0.5 * s.d2;
    }
    let sol = barrier::solve(&ConicProblem { c, a, b }, start, settings)?;
    Ok((0..n).map(|i| (sol.z[2 * i], sol.z[2 * i + 1])).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    /// Closed-form per-step maximiser.
    #[default]
    Analytic,
    /// Per-step log-barrier interior-point solve.
    Barrier,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizonSolution {
    pub plan: Vec<StepDecision>,
    pub predicted_ler_pv: f64,
    pub predicted_ler_crop: f64,
    pub objective: f64,
}

pub fn solve_horizon(problem: &HorizonProblem, backend: Backend) -> Result<HorizonSolution> {
    let settings = BarrierSettings::default();
    let mut plan = Vec::with_capacity(problem.steps.len());
    let mut xy = Vec::with_capacity(problem.steps.len());
    for (i, s) in problem.steps.iter().enumerate() {
        let (p, q) = problem.step_objective(i);
        if !(p.is_finite() && q.is_finite()) {
            return Err(Error::Solver(format!(
                "non-finite objective at step {}",
                s.t
            )));
        }
        let (x, y, degenerate) = match backend {
            Backend::Analytic => solve_step(s, p, q),
            Backend::Barrier if p == 0.0 && q == 0.0 => (1.0, 0.0, true),
            Backend::Barrier => {
                let (x, y) = solve_step_barrier(s, p, q, &settings)?;
                (x, y, false)
            }
        };
        let rec = recover_tilt(x, y, s.tracking_tilt, &problem.tilt_limits);
        plan.push(StepDecision {
            t: s.t,
            x,
            y,
            exact: (1.0 - (x * x + y * y)).abs() <= EXACT_TOL,
            delta_tilt: rec.delta_tilt,
            tilt: rec.tilt,
            tilt_clamped: rec.clamped,
            degenerate,
        });
        xy.push((x, y));
    }
    let (predicted_ler_pv, predicted_ler_crop) = problem.predict(&xy);
    Ok(HorizonSolution {
        plan,
        predicted_ler_pv,
        predicted_ler_crop,
        objective: problem.omega * predicted_ler_pv + (1.0 - problem.omega) * predicted_ler_crop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn coeff(beta: f64) -> StepCoefficients {
        let z = (90.0 - beta).to_radians();
        let (b1, b2) = diffuse_coefficients(100.0, beta);
        StepCoefficients {
            t: 0,
            day: 0,
            b1,
            b2,
            c1: -50.0,
            c2: 300.0,
            d1: z.sin(),
            d2: z.cos(),
            dni: 700.0,
            dhi: 100.0,
            tracking_tilt: 90.0 - beta,
        }
    }

    #[test]
    fn coefficient_hand_values() {
        let (b1, b2) = diffuse_coefficients(100.0, 30.0);
        assert_abs_diff_eq!(b1, 25.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b2, -50.0 * 60f64.to_radians().sin(), epsilon = 1e-12);
        let c = coeff(30.0);
        assert_abs_diff_eq!(c.d1 * c.d1 + c.d2 * c.d2, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn axis_maximisers() {
        // β = 45°: the slab line passes through (0.707, -0.707) and (-0.707, 0.707).
        let c = coeff(45.0);
        assert_eq!(solve_step(&c, 1.0, 0.0), (1.0, 0.0, false));
        let (x, y, _) = solve_step(&c, 0.0, 1.0);
        assert_abs_diff_eq!(x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(y, 1.0, epsilon = 1e-15);
        assert_eq!(solve_step(&c, 0.0, 0.0), (1.0, 0.0, true));
    }

    #[test]
    fn slab_binds_when_objective_points_behind() {
        let c = coeff(30.0);
        // Pure lowering of x: the best feasible point is the far slab corner.
        let (x, y, _) = solve_step(&c, -1.0, 0.0);
        assert_abs_diff_eq!(x, -c.d2, epsilon = 1e-15);
        assert_abs_diff_eq!(y, c.d1, epsilon = 1e-15);
        assert_abs_diff_eq!(c.d1 * x + c.d2 * y, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn recovery_examples() {
        let limits = AngleRange::new(0.0, 90.0).unwrap();
        assert_eq!(recover_delta(1.0, 0.0), 0.0);
        assert_abs_diff_eq!(
            recover_delta(0.8, 0.6),
            36.869_897_645_844_02,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(recover_delta(0.5, 0.5), 60.0, epsilon = 1e-9);
        assert_abs_diff_eq!(recover_delta(0.5, -0.5), -60.0, epsilon = 1e-9);
        assert_abs_diff_eq!(recover_delta(0.5, 0.0), -60.0, epsilon = 1e-9);
        // Back-facing points fold onto the same plane.
        assert_abs_diff_eq!(
            recover_delta(-0.6, 0.8),
            -53.130_102_354_155_98,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(recover_delta(0.0, 1.0), 90.0, epsilon = 1e-12);
        let r = recover_tilt(0.5, 0.5, 50.0, &limits);
        assert_eq!((r.tilt, r.clamped), (90.0, true));
        assert_abs_diff_eq!(r.delta_tilt, 40.0);
        let r = recover_tilt(0.8, 0.6, 20.0, &limits);
        assert!(!r.clamped);
        assert_abs_diff_eq!(r.tilt, 56.869_897_645_844_02, epsilon = 1e-9);
    }

    #[test]
    fn barrier_agrees_with_closed_form() {
        let settings = BarrierSettings::default();
        for beta in [10.0, 35.0, 60.0, 85.0] {
            let c = coeff(beta);
            for (p, q) in [(1.0, 0.2), (-0.3, 1.0), (-1.0, -0.1), (0.2, -1.0)] {
                let (xa, ya, _) = solve_step(&c, p, q);
                let (xb, yb) = solve_step_barrier(&c, p, q, &settings).unwrap();
                assert_abs_diff_eq!(p * xa + q * ya, p * xb + q * yb, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn tiny_objectives_stay_interior_under_barrier() {
        let c = coeff(40.0);
        let (x, y) = solve_step_barrier(&c, 1e-9, 0.0, &BarrierSettings::default()).unwrap();
        assert!(1.0 - (x * x + y * y) > EXACT_TOL);
    }
}
