//! Four or more directions: the shrinking similar triangles that force
//! `R(U)` to be dense, and an empirical grid measurement of how a closure
//! fills a window.
//!
//! For `U = {1, u, v, w}` with angles `0 < α < β < γ < π` the sequences are
//!
//! ```text
//! p₀ = I_{u,w}(0, 1),   s₀ = 1
//! r_{i−1} = I_{1,v}(p_{i−1}, 0)
//! p_i = I_{u,w}(0, r_{i−1}),   s_i = I_{1,w}(0, r_{i−1})
//! ```
//!
//! `p ↦ I_{u,w}(0, I_{1,v}(p, 0))` is real-linear, so every step scales the
//! triangle `0, p_{i−1}, s_{i−1}` by the same factor.

mod fixed;

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::closure::{ClosureError, ClosureState, DEFAULT_MAX_POINTS};
use crate::field::RealQuad;
use crate::geometry::{common_radicand, ensure_distinct, intersect, s_bracket, Direction, GeometryError, Point};

use fixed::FixedClosure;

/// Default working precision of the fixed-point mode, in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("bad direction ordering: {0}")]
    BadOrdering(String),
    #[error("invalid measurement window: {0}")]
    BadWindow(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl From<ClosureError> for DensityError {
    fn from(e: ClosureError) -> Self {
        match e {
            ClosureError::Geometry(g) => DensityError::Geometry(g),
            ClosureError::DegenerateBasis => DensityError::BadOrdering("degenerate basis".into()),
        }
    }
}

/// `(x, y)` evaluated from a dyadic approximation with `precision_bits`
/// fractional bits (at least 64).
pub fn float_point(p: &Point, precision_bits: u32) -> (f64, f64) {
    let bits = precision_bits.max(64);
    (p.re.to_f64_with(bits), p.im.to_f64_with(bits))
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionStep {
    pub index: usize,
    /// `r_{i−1}`, the point on `L_v(0)` the step starts from.
    pub r_prev: Point,
    pub p: Point,
    pub s: Point,
    /// `r_i = I_{1,v}(p_i, 0)`.
    pub r: Point,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionInvariants {
    pub nonzero: bool,
    pub p_nested: bool,
    pub s_nested: bool,
    pub r_nested: bool,
    /// `|p_i|²·|s_{i−1}|² = |p_{i−1}|²·|s_i|²` for every step.
    pub similar: bool,
    /// `p_i = λ·p_{i−1}` and `s_i = λ·s_{i−1}` with one `λ`.
    pub constant_ratio: bool,
    /// `s(p₁, s₁) ≠ 0`.
    pub independent: bool,
}

impl ContractionInvariants {
    pub fn all(&self) -> bool {
        self.nonzero
            && self.p_nested
            && self.s_nested
            && self.r_nested
            && self.similar
            && self.constant_ratio
            && self.independent
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionTrace {
    pub u: Direction,
    pub v: Direction,
    pub w: Direction,
    pub p0: Point,
    pub r0: Point,
    pub entries: Vec<ContractionStep>,
    /// `λ = s₁ / s₀`.
    pub ratio: RealQuad,
    pub invariants: ContractionInvariants,
    pub violations: Vec<String>,
}

/// Sorts `{1, u, v, w}` into `(u, v, w)` by angle.
pub fn order_directions(dirs: &[Direction]) -> Result<(Direction, Direction, Direction), DensityError> {
    if dirs.len() != 4 {
        return Err(DensityError::BadOrdering(format!("need exactly 4 directions, got {}", dirs.len())));
    }
    ensure_distinct(dirs)?;
    if !dirs.iter().any(Direction::is_horizontal) {
        return Err(DensityError::BadOrdering("the direction 1 (deg:0) must be present".into()));
    }
    let mut rest: Vec<Direction> = dirs.iter().filter(|d| !d.is_horizontal()).cloned().collect();
    let mut incomparable = false;
    rest.sort_by(|a, b| {
        a.cmp_angle(b).unwrap_or_else(|| {
            incomparable = true;
            Ordering::Equal
        })
    });
    if incomparable {
        return Err(DensityError::BadOrdering("directions do not share one quadratic field".into()));
    }
    let [u, v, w] = <[Direction; 3]>::try_from(rest).expect("three non-horizontal directions");
    Ok((u, v, w))
}

/// `0 < λ < 1` where `inner = λ·outer`, both on one line through 0.
fn strictly_inside(inner: &Point, outer: &Point) -> bool {
    let dot = inner.dot(outer);
    let outer_sq = outer.norm_sq();
    s_bracket(inner, outer).is_zero() && dot.signum() > 0 && dot.try_cmp(&outer_sq) == Some(Ordering::Less)
}

pub fn contraction_sequence(dirs: &[Direction], steps: usize) -> Result<ContractionTrace, DensityError> {
    if steps == 0 {
        return Err(DensityError::BadOrdering("steps must be at least 1".into()));
    }
    let (u, v, w) = order_directions(dirs)?;
    let one = Direction::horizontal();
    let o = Point::origin();
    let p0 = intersect(&u, &w, &o, &Point::one())?;
    let r0 = intersect(&one, &v, &p0, &o)?;

    let mut entries: Vec<ContractionStep> = Vec::with_capacity(steps);
    let mut r_prev = r0.clone();
    for index in 1..=steps {
        let p = intersect(&u, &w, &o, &r_prev)?;
        let s = intersect(&one, &w, &o, &r_prev)?;
        let r = intersect(&one, &v, &p, &o)?;
        entries.push(ContractionStep { index, r_prev: r_prev.clone(), p: p.clone(), s: s.clone(), r: r.clone() });
        r_prev = r;
    }

    // s₀ = 1, so λ is the real part of s₁.
    let ratio = entries[0].s.re.clone();
    let mut inv = ContractionInvariants {
        nonzero: true,
        p_nested: true,
        s_nested: true,
        r_nested: true,
        similar: true,
        constant_ratio: true,
        independent: !s_bracket(&entries[0].p, &entries[0].s).is_zero(),
    };
    let mut violations = Vec::new();
    if !inv.independent {
        violations.push("p₁ and s₁ are parallel".to_string());
    }
    let mut prev = (p0.clone(), Point::one(), r0.clone());
    for e in &entries {
        let (pp, sp, rp) = &prev;
        let i = e.index;
        if e.p.is_zero() || e.s.is_zero() || e.r.is_zero() {
            inv.nonzero = false;
            violations.push(format!("step {i}: a sequence point is 0"));
        }
        if !strictly_inside(&e.p, pp) {
            inv.p_nested = false;
            violations.push(format!("step {i}: p_i not strictly between 0 and p_(i-1)"));
        }
        if !strictly_inside(&e.s, sp) {
            inv.s_nested = false;
            violations.push(format!("step {i}: s_i not strictly between 0 and s_(i-1)"));
        }
        if !strictly_inside(&e.r, rp) {
            inv.r_nested = false;
            violations.push(format!("step {i}: r_i not strictly between 0 and r_(i-1)"));
        }
        if &e.p.norm_sq() * &sp.norm_sq() != &pp.norm_sq() * &e.s.norm_sq() {
            inv.similar = false;
            violations.push(format!("step {i}: triangles 0 p s are not similar"));
        }
        if e.p != pp.scale(&ratio) || e.s != sp.scale(&ratio) || e.r != rp.scale(&ratio) {
            inv.constant_ratio = false;
            violations.push(format!("step {i}: contraction factor changed"));
        }
        prev = (e.p.clone(), e.s.clone(), e.r.clone());
    }
    Ok(ContractionTrace { u, v, w, p0, r0, entries, ratio, invariants: inv, violations })
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self, DensityError> {
        if !(x0 < x1 && y0 < y1) || ![x0, y0, x1, y1].iter().all(|c| c.is_finite()) {
            return Err(DensityError::BadWindow(format!("[{x0}, {x1}] × [{y0}, {y1}]")));
        }
        Ok(Self { x0, y0, x1, y1 })
    }

    pub fn unit() -> Self {
        Self { x0: 0.0, y0: 0.0, x1: 1.0, y1: 1.0 }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (self.x0..=self.x1).contains(&x) && (self.y0..=self.y1).contains(&y)
    }

    /// Grid cell of a contained point; the closed upper edges fold into the
    /// last row and column.
    fn cell(&self, x: f64, y: f64, resolution: usize) -> (usize, usize) {
        let fx = (x - self.x0) / (self.x1 - self.x0) * resolution as f64;
        let fy = (y - self.y0) / (self.y1 - self.y0) * resolution as f64;
        ((fx as usize).min(resolution - 1), (fy as usize).min(resolution - 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithmeticMode {
    Exact,
    Fixed,
}

#[derive(Debug, Clone, Copy)]
pub struct DensityOptions {
    pub max_points: usize,
    pub precision_bits: u32,
}

impl Default for DensityOptions {
    fn default() -> Self {
        Self { max_points: DEFAULT_MAX_POINTS, precision_bits: DEFAULT_PRECISION_BITS }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub window: Window,
    pub depth: u32,
    pub grid_resolution: usize,
    pub mode: ArithmeticMode,
    pub precision_bits: u32,
    pub point_count: usize,
    pub points_in_window: usize,
    pub occupied_cells: usize,
    pub empty_cells: usize,
    pub empty_fraction: f64,
    /// Side of the largest all-empty square block of cells.
    pub largest_empty_square: usize,
    /// `largest_empty_square / grid_resolution`, in window widths.
    pub max_gap: f64,
    pub truncated: bool,
    /// Row-major occupancy, row 0 at `y0`.
    #[serde(skip)]
    pub occupied: Vec<bool>,
}

/// Largest `k` such that some `k × k` block of cells is empty.
pub fn largest_empty_square(occupied: &[bool], resolution: usize) -> usize {
    let mut best = 0;
    let mut dp = vec![0usize; resolution * resolution];
    for y in 0..resolution {
        for x in 0..resolution {
            let i = y * resolution + x;
            if occupied[i] {
                continue;
            }
            dp[i] =
                if x == 0 || y == 0 { 1 } else { 1 + dp[i - 1].min(dp[i - resolution]).min(dp[i - resolution - 1]) };
            best = best.max(dp[i]);
        }
    }
    best
}

/// Bins already-evaluated points into the window grid.
pub fn grid_report(points: &[(f64, f64)], window: Window, resolution: usize) -> (usize, Vec<bool>) {
    let mut occupied = vec![false; resolution * resolution];
    let mut inside = 0;
    for &(x, y) in points {
        if window.contains(x, y) {
            inside += 1;
            let (cx, cy) = window.cell(x, y, resolution);
            occupied[cy * resolution + cx] = true;
        }
    }
    (inside, occupied)
}

/// Expands the closure of `{0, 1}` under `dirs` to `depth` and measures how
/// it fills `window` on a `resolution × resolution` grid. Exact arithmetic is
/// used when all directions share one quadratic field, fixed-point otherwise.
pub fn measure_density(
    dirs: &[Direction],
    depth: u32,
    window: Window,
    resolution: usize,
    opts: DensityOptions,
) -> Result<DensityReport, DensityError> {
    if resolution == 0 {
        return Err(DensityError::BadWindow("grid resolution must be positive".into()));
    }
    ensure_distinct(dirs)?;
    let bits = opts.precision_bits.max(64);
    let exact = common_radicand(dirs.iter().map(Direction::vec)).is_ok();
    let (mode, floats, point_count, truncated) = if exact {
        let state = ClosureState::with_unit_seeds(dirs.to_vec())?.expand_to(depth, opts.max_points);
        let floats: Vec<(f64, f64)> = state.points().map(|p| float_point(p, bits)).collect();
        (ArithmeticMode::Exact, floats, state.len(), state.truncated())
    } else {
        let mut c = FixedClosure::new(dirs, bits);
        while c.depth < depth && !c.truncated {
            c.expand(opts.max_points);
        }
        (ArithmeticMode::Fixed, c.to_f64(), c.len(), c.truncated)
    };
    let (inside, occupied) = grid_report(&floats, window, resolution);
    let occupied_cells = occupied.iter().filter(|&&o| o).count();
    let cells = resolution * resolution;
    let gap = largest_empty_square(&occupied, resolution);
    Ok(DensityReport {
        window,
        depth,
        grid_resolution: resolution,
        mode,
        precision_bits: bits,
        point_count,
        points_in_window: inside,
        occupied_cells,
        empty_cells: cells - occupied_cells,
        empty_fraction: (cells - occupied_cells) as f64 / cells as f64,
        largest_empty_square: gap,
        max_gap: gap as f64 / resolution as f64,
        truncated,
        occupied,
    })
}
