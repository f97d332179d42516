//! Planar polygon helpers used by the shading model.
//!
//! Polygons are vertex lists without a repeated closing vertex. Either
//! winding is accepted; areas are returned unsigned.

pub type Point = [f64; 2];

/// Signed shoelace area, positive for counter-clockwise winding.
pub fn signed_area(poly: &[Point]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    let mut prev = poly[poly.len() - 1];
    for &p in poly {
        acc += prev[0] * p[1] - p[0] * prev[1];
        prev = p;
    }
    0.5 * acc
}

pub fn area(poly: &[Point]) -> f64 {
    signed_area(poly).abs()
}

/// Axis-aligned bounding box as `(min, max)`.
pub fn bounds(poly: &[Point]) -> (Point, Point) {
    poly.iter().fold(
        ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]),
        |(lo, hi), p| {
            (
                [lo[0].min(p[0]), lo[1].min(p[1])],
                [hi[0].max(p[0]), hi[1].max(p[1])],
            )
        },
    )
}

/// Sutherland-Hodgman pass keeping the part of `poly` where
/// `sign * p[axis] <= sign * bound`. Concave input may leave zero-width
/// bridges along the cut; they do not change the area.
fn clip_axis(poly: &[Point], axis: usize, bound: f64, keep_below: bool) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 4);
    if n == 0 {
        return out;
    }
    let inside = |p: &Point| {
        if keep_below {
            p[axis] <= bound
        } else {
            p[axis] >= bound
        }
    };
    let cross = |a: &Point, b: &Point| -> Point {
        let t = (bound - a[axis]) / (b[axis] - a[axis]);
        let other = 1 - axis;
        let mut p = [0.0; 2];
        p[axis] = bound;
        p[other] = a[other] + t * (b[other] - a[other]);
        p
    };
    let mut prev = poly[n - 1];
    let mut prev_in = inside(&prev);
    for &cur in poly {
        let cur_in = inside(&cur);
        match (prev_in, cur_in) {
            (true, true) => out.push(cur),
            (true, false) => out.push(cross(&prev, &cur)),
            (false, true) => {
                out.push(cross(&prev, &cur));
                out.push(cur);
            }
            (false, false) => {}
        }
        prev = cur;
        prev_in = cur_in;
    }
    out
}

/// Part of `poly` inside the vertical strip `x0 <= x <= x1`.
pub fn clip_to_strip(poly: &[Point], x0: f64, x1: f64) -> Vec<Point> {
    let left = clip_axis(poly, 0, x0, false);
    clip_axis(&left, 0, x1, true)
}

/// Area of `poly` inside the axis-aligned box `[x0, x1] × [y0, y1]`.
pub fn area_in_box(poly: &[Point], x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let strip = clip_to_strip(poly, x0, x1);
    area_in_band(&strip, y0, y1)
}

/// Area of `poly` inside the horizontal band `y0 <= y <= y1`.
pub fn area_in_band(poly: &[Point], y0: f64, y1: f64) -> f64 {
    let below = clip_axis(poly, 1, y1, true);
    let b = clip_axis(&below, 1, y0, false);
    area(&b)
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

/// Exact area of `(∪ rects) ∩ poly`.
///
/// Sweeps vertical slabs between consecutive rectangle x-edges. Inside a slab
/// the union's cross-section is a fixed set of disjoint y-intervals, so the
/// covered region restricted to the slab is a disjoint set of boxes, each
/// intersected with the polygon by clipping.
pub fn union_of_rects_area_in(rects: &[Rect], poly: &[Point]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let (lo, hi) = bounds(poly);
    let mut live: Vec<Rect> = rects
        .iter()
        .filter(|r| r.x1 > r.x0 && r.y1 > r.y0)
        .filter(|r| r.x1 > lo[0] && r.x0 < hi[0] && r.y1 > lo[1] && r.y0 < hi[1])
        .map(|r| Rect {
            x0: r.x0.max(lo[0]),
            x1: r.x1.min(hi[0]),
            y0: r.y0.max(lo[1]),
            y1: r.y1.min(hi[1]),
        })
        .collect();
    if live.is_empty() {
        return 0.0;
    }
    live.sort_by(|a, b| a.x0.total_cmp(&b.x0));

    let mut xs: Vec<f64> = live.iter().flat_map(|r| [r.x0, r.x1]).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut total = 0.0;
    let mut next = 0;
    let mut active: Vec<Rect> = Vec::new();
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for w in xs.windows(2) {
        let (xa, xb) = (w[0], w[1]);
        while next < live.len() && live[next].x0 <= xa {
            active.push(live[next]);
            next += 1;
        }
        active.retain(|r| r.x1 > xa);
        if active.is_empty() {
            continue;
        }
        intervals.clear();
        intervals.extend(
            active
                .iter()
                .filter(|r| r.x0 <= xa && r.x1 >= xb)
                .map(|r| (r.y0, r.y1)),
        );
        if intervals.is_empty() {
            continue;
        }
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let strip = clip_to_strip(poly, xa, xb);
        if strip.len() < 3 {
            continue;
        }
        let (mut cur0, mut cur1) = intervals[0];
        for &(a, b) in &intervals[1..] {
            if a <= cur1 {
                cur1 = cur1.max(b);
            } else {
                total += area_in_band(&strip, cur0, cur1);
                cur0 = a;
                cur1 = b;
            }
        }
        total += area_in_band(&strip, cur0, cur1);
    }
    total
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// True when the polygon has at least three vertices, non-zero area and no
/// two non-adjacent edges properly cross.
pub fn is_simple(poly: &[Point]) -> bool {
    let n = poly.len();
    if n < 3 || area(poly) <= 0.0 || poly.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return false;
    }
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (poly[j], poly[(j + 1) % n]);
            if segments_cross(a, b, c, d) {
                return false;
            }
        }
    }
    true
}
