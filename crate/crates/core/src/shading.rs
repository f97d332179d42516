//! Field shading factor of a panel array and its affine tilt approximation.
//!
//! Ground frame: x east, y north, z up, metres. Rows run east-west and the
//! array is centred on the origin; the field polygon is given in the same
//! frame.
//!
//! Every panel shares one orientation, so all shadows are translates of the
//! same parallelogram spanned by the ground projections `U`, `V` of the
//! panel's two edge directions. Mapping the ground through `[U V]⁻¹` turns
//! each shadow into an axis-aligned `width × height` rectangle. The shaded
//! area is then an exact rectangle-union-in-polygon computation scaled by
//! `|det [U V]|`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, Point, Rect};
use crate::solar_geometry::{AngleRange, PanelOrientation, SolarPosition, Tracking};

/// Sweep resolution of the tilt deviation, degrees.
pub const SWEEP_STEP_DEG: f64 = 1.0;

/// Below this |det [U V]| (m² per m² of panel) the shadow is a segment.
const DEGENERATE_SHADOW: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayLayout {
    pub rows: usize,
    pub panels_per_row: usize,
    /// Panel edge along the horizontal rotation axis, m.
    pub panel_width: f64,
    /// Panel edge along the slope, m.
    pub panel_height: f64,
    /// Height of the panel centre above ground, m.
    pub mount_height: f64,
    /// North-south distance between row centres, m.
    pub row_pitch: f64,
    /// East-west distance between panel centres within a row, m.
    pub panel_pitch: f64,
    /// Crop field boundary on the ground plane.
    pub field_polygon: Vec<Point>,
}

impl ArrayLayout {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("panel_width", self.panel_width),
            ("panel_height", self.panel_height),
            ("mount_height", self.mount_height),
            ("row_pitch", self.row_pitch),
            ("panel_pitch", self.panel_pitch),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        if self.rows == 0 || self.panels_per_row == 0 {
            return Err(Error::InvalidParameter(
                "array must contain at least one panel".into(),
            ));
        }
        // A lower edge below ground would be projected the wrong way.
        if self.mount_height < 0.5 * self.panel_height {
            return Err(Error::InvalidParameter(format!(
                "mount_height {} is below half the panel height {}",
                self.mount_height, self.panel_height
            )));
        }
        if !geometry::is_simple(&self.field_polygon) {
            return Err(Error::InvalidParameter(
                "field polygon must be simple with non-zero area".into(),
            ));
        }
        Ok(())
    }

    pub fn panel_count(&self) -> usize {
        self.rows * self.panels_per_row
    }

    pub fn field_area(&self) -> f64 {
        geometry::area(&self.field_polygon)
    }

    /// Ground-plane positions of the panel centres.
    pub fn panel_centres(&self) -> impl Iterator<Item = Point> + '_ {
        let row_off = 0.5 * (self.rows as f64 - 1.0);
        let col_off = 0.5 * (self.panels_per_row as f64 - 1.0);
        (0..self.rows).flat_map(move |r| {
            (0..self.panels_per_row).map(move |c| {
                [
                    (c as f64 - col_off) * self.panel_pitch,
                    (r as f64 - row_off) * self.row_pitch,
                ]
            })
        })
    }
}

/// Ground projection of the panel edge directions for one sun/panel pair.
struct ShadowFrame {
    u: Point,
    v: Point,
    det: f64,
    /// Ground offset of a point at mount height, per unit of height.
    lean: Point,
}

impl ShadowFrame {
    fn new(sun: &SolarPosition, panel: &PanelOrientation) -> Option<Self> {
        if !sun.is_daylight() {
            return None;
        }
        let s = sun.direction();
        let (sa, ca) = panel.azimuth.to_radians().sin_cos();
        let (st, ct) = panel.tilt.to_radians().sin_cos();
        let lean = [-s[0] / s[2], -s[1] / s[2]];
        // Width edge is horizontal; the slope edge climbs by sin(tilt).
        let u = [ca, sa];
        let v = [-ct * sa + st * lean[0], ct * ca + st * lean[1]];
        let det = u[0] * v[1] - u[1] * v[0];
        if det.abs() < DEGENERATE_SHADOW {
            return None;
        }
        Some(Self { u, v, det, lean })
    }

    fn to_frame(&self, p: Point) -> Point {
        let inv = 1.0 / self.det;
        [
            inv * (self.v[1] * p[0] - self.v[0] * p[1]),
            inv * (-self.u[1] * p[0] + self.u[0] * p[1]),
        ]
    }
}

/// Vertices of every panel's shadow on the ground, in panel order.
pub fn shadow_polygons(
    layout: &ArrayLayout,
    sun: &SolarPosition,
    panel: &PanelOrientation,
) -> Vec<[Point; 4]> {
    let Some(frame) = ShadowFrame::new(sun, panel) else {
        return Vec::new();
    };
    let (hw, hh) = (0.5 * layout.panel_width, 0.5 * layout.panel_height);
    let h = layout.mount_height;
    layout
        .panel_centres()
        .map(|c| {
            let g = [c[0] + h * frame.lean[0], c[1] + h * frame.lean[1]];
            let corner = |a: f64, b: f64| {
                [
                    g[0] + a * frame.u[0] + b * frame.v[0],
                    g[1] + a * frame.u[1] + b * frame.v[1],
                ]
            };
            [
                corner(-hw, -hh),
                corner(hw, -hh),
                corner(hw, hh),
                corner(-hw, hh),
            ]
        })
        .collect()
}

/// Fraction of the field area covered by the union of all panel shadows.
/// Zero when the sun is down or the panels are edge-on to the beam.
pub fn shading_factor(layout: &ArrayLayout, sun: &SolarPosition, panel: &PanelOrientation) -> f64 {
    let Some(frame) = ShadowFrame::new(sun, panel) else {
        return 0.0;
    };
    let field_area = layout.field_area();
    if field_area <= 0.0 {
        return 0.0;
    }
    let field: Vec<Point> = layout
        .field_polygon
        .iter()
        .map(|&p| frame.to_frame(p))
        .collect();
    let (hw, hh) = (0.5 * layout.panel_width, 0.5 * layout.panel_height);
    let h = layout.mount_height;
    let rects: Vec<Rect> = layout
        .panel_centres()
        .map(|c| {
            let q = frame.to_frame([c[0] + h * frame.lean[0], c[1] + h * frame.lean[1]]);
            Rect {
                x0: q[0] - hw,
                x1: q[0] + hw,
                y0: q[1] - hh,
                y1: q[1] + hh,
            }
        })
        .collect();
    let covered = geometry::union_of_rects_area_in(&rects, &field) * frame.det.abs();
    (covered / field_area).clamp(0.0, 1.0)
}

/// One point of the tilt-deviation sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub delta_tilt: f64,
    pub shading: f64,
}

/// Shading factor at 1° tilt deviations `δ ∈ [-90°, 90°]` from the
/// tracking orientation, keeping only tilts inside `tilt_limits`.
pub fn tilt_sweep(
    layout: &ArrayLayout,
    sun: &SolarPosition,
    tracking: &PanelOrientation,
    tilt_limits: &AngleRange,
) -> Vec<SweepPoint> {
    let steps = (90.0 / SWEEP_STEP_DEG).round() as i32;
    (-steps..=steps)
        .map(|k| f64::from(k) * SWEEP_STEP_DEG)
        .filter(|d| {
            let tilt = tracking.tilt + d;
            tilt >= tilt_limits.min - 1e-9 && tilt <= tilt_limits.max + 1e-9
        })
        .map(|delta_tilt| SweepPoint {
            delta_tilt,
            shading: shading_factor(
                layout,
                sun,
                &PanelOrientation::new(tracking.azimuth, tracking.tilt + delta_tilt),
            ),
        })
        .collect()
}

/// `S_F ≈ g1 · cos(δΣ) + g2` for time step `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadingAffineFit {
    pub t: usize,
    pub g1: f64,
    pub g2: f64,
    pub r_squared: f64,
    pub max_residual: f64,
    pub points: usize,
}

impl ShadingAffineFit {
    /// Unclamped affine value at `x = cos δΣ`.
    pub fn linear(&self, x: f64) -> f64 {
        self.g1 * x + self.g2
    }

    /// Affine prediction clamped to a valid fraction.
    pub fn predict(&self, x: f64) -> f64 {
        self.linear(x).clamp(0.0, 1.0)
    }
}

/// Least-squares fit of shading against `cos δ` over sweep points.
pub fn fit_sweep(points: &[SweepPoint]) -> Result<ShadingAffineFit> {
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "{} feasible sweep point(s); at least 2 are needed",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points
        .iter()
        .map(|p| p.delta_tilt.to_radians().cos())
        .collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.shading).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, p) in xs.iter().zip(points) {
        let (dx, dy) = (x - mean_x, p.shading - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let g1 = if sxx > 1e-18 { sxy / sxx } else { 0.0 };
    let g2 = mean_y - g1 * mean_x;
    let (mut ss_res, mut max_residual) = (0.0f64, 0.0f64);
    for (x, p) in xs.iter().zip(points) {
        let r = p.shading - (g1 * x + g2);
        ss_res += r * r;
        max_residual = max_residual.max(r.abs());
    }
    let r_squared = if syy > 1e-18 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else if ss_res <= 1e-18 {
        1.0
    } else {
        0.0
    };
    Ok(ShadingAffineFit {
        t: 0,
        g1,
        g2,
        r_squared,
        max_residual,
        points: points.len(),
    })
}

/// Affine approximation of the shading factor for one daylight step.
pub fn fit_affine_sf(
    layout: &ArrayLayout,
    sun: &SolarPosition,
    tracking: &PanelOrientation,
    tilt_limits: &AngleRange,
) -> Result<ShadingAffineFit> {
    if !sun.is_daylight() {
        return Err(Error::Fit("sun below the horizon".into()));
    }
    fit_sweep(&tilt_sweep(layout, sun, tracking, tilt_limits))
}

/// Fits every daylight step of a season. Entry `t` is `None` when the sun is
/// down. The fits depend only on geometry, so they are computed once and
/// shared by every optimisation of the season.
pub fn fit_season(
    layout: &ArrayLayout,
    suns: &[SolarPosition],
    tracking: &[Tracking],
    tilt_limits: &AngleRange,
) -> Result<Vec<Option<ShadingAffineFit>>> {
    suns.par_iter()
        .zip(tracking.par_iter())
        .enumerate()
        .map(|(t, (sun, track))| match track {
            Tracking::Track { orientation, .. } if sun.is_daylight() => {
                let mut fit = fit_affine_sf(layout, sun, orientation, tilt_limits)
                    .map_err(|e| Error::Fit(format!("step {t}: {e}")))?;
                fit.t = t;
                Ok(Some(fit))
            }
            _ => Ok(None),
        })
        .collect()
}

/// Source of the shading factor when computing field PAR.
#[derive(Debug, Clone, Copy)]
pub enum ShadingModel<'a> {
    /// Affine approximation, clamped to [0, 1].
    Affine(&'a ShadingAffineFit),
    /// A shading factor computed from the exact geometry.
    Exact(f64),
}

/// PAR reaching the field: shading removes only the direct component.
pub fn par_field(model: ShadingModel<'_>, par_db: f64, par_diff: f64, x: f64) -> f64 {
    let sf = match model {
        ShadingModel::Affine(fit) => fit.predict(x),
        ShadingModel::Exact(sf) => sf.clamp(0.0, 1.0),
    };
    (1.0 - sf) * par_db + par_diff
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn single_panel(field_side: f64) -> ArrayLayout {
        let h = 0.5 * field_side;
        ArrayLayout {
            rows: 1,
            panels_per_row: 1,
            panel_width: 1.0,
            panel_height: 1.0,
            mount_height: 2.0,
            row_pitch: 3.0,
            panel_pitch: 3.0,
            field_polygon: vec![[-h, -h], [h, -h], [h, h], [-h, h]],
        }
    }

    #[test]
    fn zenith_sun_flat_panel() {
        let mut layout = single_panel(1.0);
        layout.field_polygon = vec![[-2.0, -2.0], [3.0, -2.0], [3.0, 0.0], [-2.0, 0.0]];
        assert_abs_diff_eq!(layout.field_area(), 10.0);
        let sun = SolarPosition::new(0.0, 90.0);
        let sf = shading_factor(&layout, &sun, &PanelOrientation::new(0.0, 0.0));
        // Panel footprint straddles y = 0, so only half of it lies in the field.
        assert_abs_diff_eq!(sf, 0.05, epsilon = 1e-12);
        layout.field_polygon = vec![[-2.0, -1.0], [3.0, -1.0], [3.0, 1.0], [-2.0, 1.0]];
        let sf = shading_factor(&layout, &sun, &PanelOrientation::new(0.0, 0.0));
        assert_abs_diff_eq!(sf, 0.1, epsilon = 1e-12);
    }

    #[test]
    fn shadow_area_matches_projection_formula() {
        let layout = single_panel(200.0);
        for (sun, panel) in [
            (
                SolarPosition::new(30.0, 40.0),
                PanelOrientation::new(10.0, 35.0),
            ),
            (
                SolarPosition::new(-80.0, 15.0),
                PanelOrientation::new(-80.0, 60.0),
            ),
            (
                SolarPosition::new(120.0, 70.0),
                PanelOrientation::new(0.0, 80.0),
            ),
        ] {
            let cos_inc = crate::solar_geometry::incidence_cosine(&sun, &panel);
            let expected = cos_inc.abs() / sun.altitude.to_radians().sin() / layout.field_area();
            assert_abs_diff_eq!(
                shading_factor(&layout, &sun, &panel),
                expected,
                epsilon = 1e-12
            );
            let poly = &shadow_polygons(&layout, &sun, &panel)[0];
            assert_abs_diff_eq!(
                geometry::area(poly) / layout.field_area(),
                expected,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn edge_on_and_night_give_zero() {
        let layout = single_panel(50.0);
        let sun = SolarPosition::new(0.0, 30.0);
        // Normal perpendicular to the sun ray: tilt 90° - 30° + 90°.
        let edge_on = PanelOrientation::new(0.0, 150.0);
        assert!(crate::solar_geometry::incidence_cosine(&sun, &edge_on).abs() < 1e-12);
        assert_eq!(shading_factor(&layout, &sun, &edge_on), 0.0);
        let night = SolarPosition::new(0.0, -5.0);
        assert_eq!(
            shading_factor(&layout, &night, &PanelOrientation::new(0.0, 0.0)),
            0.0
        );
    }

    #[test]
    fn shadows_outside_field_do_not_count() {
        let mut layout = single_panel(4.0);
        layout.field_polygon = vec![[10.0, 10.0], [12.0, 10.0], [12.0, 12.0], [10.0, 12.0]];
        let sun = SolarPosition::new(0.0, 60.0);
        assert_eq!(
            shading_factor(&layout, &sun, &PanelOrientation::new(0.0, 30.0)),
            0.0
        );
    }

    #[test]
    fn exactly_affine_data_is_recovered() {
        let points: Vec<SweepPoint> = (-40..=70)
            .map(|d| {
                let x = f64::from(d).to_radians().cos();
                SweepPoint {
                    delta_tilt: f64::from(d),
                    shading: 0.37 * x - 0.02,
                }
            })
            .collect();
        let fit = fit_sweep(&points).unwrap();
        assert_abs_diff_eq!(fit.g1, 0.37, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.g2, -0.02, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
        assert!(fit.max_residual < 1e-12);
    }

    #[test]
    fn too_few_sweep_points() {
        let one = [SweepPoint {
            delta_tilt: 0.0,
            shading: 0.1,
        }];
        assert!(matches!(fit_sweep(&one), Err(Error::Fit(_))));
        let layout = single_panel(50.0);
        let sun = SolarPosition::new(0.0, 45.0);
        let tracking = PanelOrientation::new(0.0, 45.0);
        let pinned = AngleRange::new(45.0, 45.0).unwrap();
        assert!(fit_affine_sf(&layout, &sun, &tracking, &pinned).is_err());
    }

    #[test]
    fn sweep_respects_tilt_limits() {
        let layout = single_panel(50.0);
        let sun = SolarPosition::new(20.0, 50.0);
        let tracking = PanelOrientation::new(20.0, 40.0);
        let limits = AngleRange::new(0.0, 90.0).unwrap();
        let pts = tilt_sweep(&layout, &sun, &tracking, &limits);
        assert_eq!(pts.first().unwrap().delta_tilt, -40.0);
        assert_eq!(pts.last().unwrap().delta_tilt, 50.0);
        assert_eq!(pts.len(), 91);
    }

    #[test]
    fn par_field_cases() {
        let alpha = 0.45;
        assert_abs_diff_eq!(
            par_field(ShadingModel::Exact(0.0), 400.0 * alpha, 100.0 * alpha, 1.0),
            500.0 * alpha
        );
        assert_abs_diff_eq!(
            par_field(ShadingModel::Exact(1.0), 400.0 * alpha, 100.0 * alpha, 1.0),
            100.0 * alpha
        );
        let fit = ShadingAffineFit {
            t: 0,
            g1: 0.3,
            g2: 0.1,
            r_squared: 1.0,
            max_residual: 0.0,
            points: 2,
        };
        // (1 - 0.4) * 400α + 100α = 340α
        assert_abs_diff_eq!(
            par_field(
                ShadingModel::Affine(&fit),
                400.0 * alpha,
                100.0 * alpha,
                1.0
            ),
            340.0 * alpha,
            epsilon = 1e-12
        );
        // Overshooting predictions are clamped.
        let high = ShadingAffineFit { g1: 1.5, ..fit };
        assert_abs_diff_eq!(par_field(ShadingModel::Affine(&high), 10.0, 2.0, 1.0), 2.0);
    }

    #[test]
    fn layout_validation() {
        let mut layout = single_panel(10.0);
        assert!(layout.validate().is_ok());
        layout.mount_height = 0.2;
        assert!(layout.validate().is_err());
        let mut layout = single_panel(10.0);
        layout.field_polygon = vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(layout.validate().is_err());
        let mut layout = single_panel(10.0);
        layout.rows = 0;
        assert!(layout.validate().is_err());
    }
}
