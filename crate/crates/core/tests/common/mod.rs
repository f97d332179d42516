//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's numerical code.

#![allow(dead_code)]

use std::f64::consts::PI;

use agrivolt::mpc_engine::ScenarioConfig;

pub const DESK_SEASON: &str = include_str!("../../../../configs/desk_season.toml");

pub fn desk_config(days: usize) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::from_toml_str(DESK_SEASON).expect("bundled config parses");
    cfg.season.days = days;
    cfg
}

/// Brute-force maximum of `p cos δ + q sin δ` over `δ ∈ [-180°, 180°]` on a
/// 0.01° grid, keeping only `0 ≤ d1 cos δ + d2 sin δ ≤ 1`. The two ends of
/// the feasible arc are evaluated as well, since the slab can bind between
/// grid points.
pub struct GridOracle {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl GridOracle {
    pub fn new() -> Self {
        let n = 36_000;
        let (mut cos, mut sin) = (Vec::with_capacity(n + 1), Vec::with_capacity(n + 1));
        for k in 0..=n {
            let a = (-180.0 + 0.01 * k as f64) * PI / 180.0;
            cos.push(a.cos());
            sin.push(a.sin());
        }
        Self { cos, sin }
    }

    pub fn best(&self, p: f64, q: f64, d1: f64, d2: f64) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for (c, s) in self.cos.iter().zip(&self.sin) {
            let slab = d1 * c + d2 * s;
            if (0.0..=1.0).contains(&slab) {
                let v = p * c + q * s;
                if v > best {
                    best = v;
                }
            }
        }
        // Arc ends: where d1 cos δ + d2 sin δ = 0.
        let phase = d2.atan2(d1);
        for a in [phase + PI / 2.0, phase - PI / 2.0] {
            best = best.max(p * a.cos() + q * a.sin());
        }
        best
    }
}

/// Scanline raster of the shaded fraction of a field, sampling cell centres
/// on a `cell`-metre grid.
pub struct RasterScene {
    pub field: Vec<[f64; 2]>,
    /// Shadow quadrilaterals on the ground.
    pub shadows: Vec<[[f64; 2]; 4]>,
}

fn rot_z(v: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]]
}

fn rot_x(v: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    [v[0], c * v[1] - s * v[2], s * v[1] + c * v[2]]
}

/// Shadows of a rectangular panel grid. Panels start flat with the width
/// edge on x; tilting lifts the north edge, then the panel is turned about
/// the vertical so its normal faces `panel_azimuth` east of south.
#[allow(clippy::too_many_arguments)]
pub fn project_shadows(
    centres: &[[f64; 2]],
    mount_height: f64,
    width: f64,
    height: f64,
    sun_azimuth_deg: f64,
    sun_altitude_deg: f64,
    panel_azimuth_deg: f64,
    panel_tilt_deg: f64,
) -> Vec<[[f64; 2]; 4]> {
    let (az, alt) = (sun_azimuth_deg.to_radians(), sun_altitude_deg.to_radians());
    // Unit vector pointing at the sun; south is -y.
    let sun = rot_z([0.0, -alt.cos(), alt.sin()], az);
    let tilt = panel_tilt_deg.to_radians();
    let turn = panel_azimuth_deg.to_radians();
    centres
        .iter()
        .map(|c| {
            let mut quad = [[0.0; 2]; 4];
            for (k, (a, b)) in [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]
                .iter()
                .enumerate()
            {
                let local = rot_z(rot_x([a * width, b * height, 0.0], tilt), turn);
                let p = [c[0] + local[0], c[1] + local[1], mount_height + local[2]];
                let k_ray = p[2] / sun[2];
                quad[k] = [p[0] - k_ray * sun[0], p[1] - k_ray * sun[1]];
            }
            quad
        })
        .collect()
}

/// Crossings of the horizontal line `y` with a closed polygon.
fn crossings(poly: &[[f64; 2]], y: f64) -> Vec<f64> {
    let mut xs = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        if (a[1] <= y) != (b[1] <= y) {
            xs.push(a[0] + (y - a[1]) * (b[0] - a[0]) / (b[1] - a[1]));
        }
    }
    xs.sort_by(f64::total_cmp);
    xs
}

fn merge(mut iv: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (a, b) in iv {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// Number of centres `x0 + (k + ½)·cell` inside `[a, b]`.
fn centres_in(a: f64, b: f64, x0: f64, cell: f64) -> i64 {
    let lo = ((a - x0) / cell - 0.5).ceil() as i64;
    let hi = ((b - x0) / cell - 0.5).floor() as i64;
    (hi - lo + 1).max(0)
}

impl RasterScene {
    pub fn shaded_fraction(&self, cell: f64) -> f64 {
        let (mut x0, mut y0, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in &self.field {
            x0 = x0.min(p[0]);
            y0 = y0.min(p[1]);
            y1 = y1.max(p[1]);
        }
        let rows = ((y1 - y0) / cell).ceil() as usize;
        let (mut inside, mut shaded) = (0i64, 0i64);
        for r in 0..rows {
            let y = y0 + (r as f64 + 0.5) * cell;
            let fx = crossings(&self.field, y);
            let field_iv: Vec<(f64, f64)> = fx
                .chunks(2)
                .filter(|c| c.len() == 2)
                .map(|c| (c[0], c[1]))
                .collect();
            for &(a, b) in &field_iv {
                inside += centres_in(a, b, x0, cell);
            }
            let shadow_iv = merge(
                self.shadows
                    .iter()
                    .filter_map(|q| {
                        let xs = crossings(q, y);
                        (xs.len() >= 2).then(|| (xs[0], xs[xs.len() - 1]))
                    })
                    .collect(),
            );
            for &(fa, fb) in &field_iv {
                for &(sa, sb) in &shadow_iv {
                    let (a, b) = (fa.max(sa), fb.min(sb));
                    if a < b {
                        shaded += centres_in(a, b, x0, cell);
                    }
                }
            }
        }
        if inside == 0 {
            0.0
        } else {
            shaded as f64 / inside as f64
        }
    }
}

/// EPIC reference model written directly from the growth equations.
#[derive(Debug, Clone, Copy)]
pub struct RefCrop {
    pub tb: f64,
    pub to: f64,
    pub phu: f64,
    pub lai_max: f64,
    pub ah1: f64,
    pub ah2: f64,
    pub be: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefState {
    pub hui: f64,
    pub huf: f64,
    pub reg: f64,
    pub lai: f64,
    pub biomass: f64,
}

/// Advances one day from 24 hourly temperatures and field PAR values.
pub fn ref_day(c: &RefCrop, s: RefState, temps: &[f64], par: &[f64]) -> RefState {
    let mut tmin = temps[0];
    let mut tmax = temps[0];
    let mut tsum = 0.0;
    for &t in temps {
        if t < tmin {
            tmin = t;
        }
        if t > tmax {
            tmax = t;
        }
        tsum += t;
    }
    let tg = tsum / temps.len() as f64;
    let hu = f64::max(0.0, (tmin + tmax) / 2.0 - c.tb);
    let hui = s.hui + hu / c.phu;
    let reg = if tg <= c.tb || tg > 1.5 * c.to {
        0.0
    } else {
        let v = (PI / 2.0 * (tg - c.tb) / (c.to - c.tb)).sin();
        v.clamp(0.0, 1.0)
    };
    let huf = if hui > 0.0 {
        hui / (hui + (c.ah1 - c.ah2 * hui).exp())
    } else {
        0.0
    };
    let mut dlai =
        (huf - s.huf) * c.lai_max * (1.0 - (5.0 * (s.lai - c.lai_max)).exp()) * reg.sqrt();
    if dlai < 0.0 {
        dlai = 0.0;
    }
    let lai = (s.lai + dlai).min(c.lai_max);
    let mut par_crop = 0.0;
    for &p in par {
        par_crop += p * (1.0 - (-0.65 * s.lai).exp());
    }
    let biomass = s.biomass + 0.001 * c.be * par_crop * reg;
    RefState {
        hui,
        huf,
        reg,
        lai,
        biomass,
    }
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let (mut num, mut va, mut vb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        num += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 || vb == 0.0 {
        0.0
    } else {
        num / (va * vb).sqrt()
    }
}
