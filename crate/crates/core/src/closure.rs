//! Generation of the constructible sets `M₀ ⊆ M₁ ⊆ …` and exact lattice
//! verification for three directions.
//!
//! `M₀` is the seed set (by default `{0, 1}`); `M_{j+1}` adds every
//! `I_{u,v}(p, q)` with `u ≠ v` in the direction set and `p ≠ q` in `M_j`.
//! Sets are stored cumulatively, so the state at depth `j` is `M₀ ∪ … ∪ M_j`.

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldError, RealQuad};
use crate::geometry::{common_radicand, ensure_distinct, intersect, Direction, GeometryError, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("lattice basis (1, z) is degenerate: z is real")]
    DegenerateBasis,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl From<FieldError> for ClosureError {
    fn from(e: FieldError) -> Self {
        ClosureError::Geometry(GeometryError::Field(e))
    }
}

/// Default cap on the number of stored points.
pub const DEFAULT_MAX_POINTS: usize = 100_000;

// Outer-loop points handled per parallel batch.
const BATCH: usize = 64;

#[derive(Debug, Clone)]
pub struct ClosureState {
    directions: Vec<Direction>,
    seeds: Vec<Point>,
    points: IndexMap<Point, u32>,
    depth: u32,
    truncated: bool,
    radicand: u64,
}

impl ClosureState {
    /// State at depth 0 with the given seeds. All inputs must share one
    /// quadratic field and the directions must be pairwise distinct.
    pub fn new(directions: Vec<Direction>, seeds: Vec<Point>) -> Result<Self, ClosureError> {
        ensure_distinct(&directions)?;
        let radicand = common_radicand(directions.iter().map(Direction::vec).chain(seeds.iter()))?;
        let mut points = IndexMap::new();
        for s in &seeds {
            points.entry(s.clone()).or_insert(0);
        }
        Ok(Self { directions, seeds, points, depth: 0, truncated: false, radicand })
    }

    /// Seeds `{0, 1}`.
    pub fn with_unit_seeds(directions: Vec<Direction>) -> Result<Self, ClosureError> {
        Self::new(directions, vec![Point::origin(), Point::one()])
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn seeds(&self) -> &[Point] {
        &self.seeds
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// True once a point cap cut an expansion short.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains_key(p)
    }

    /// Points in insertion order.
    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.points.keys()
    }

    /// Points with the depth at which each first appeared.
    pub fn points_with_depth(&self) -> impl Iterator<Item = (&Point, u32)> {
        self.points.iter().map(|(p, d)| (p, *d))
    }

    /// One expansion step without a point cap.
    pub fn expand(&self) -> Self {
        self.expand_capped(usize::MAX)
    }

    /// One expansion step; stops adding points once `max_points` are stored
    /// and marks the state truncated.
    pub fn expand_capped(&self, max_points: usize) -> Self {
        let mut next = self.clone();
        next.depth += 1;
        if self.directions.len() < 2 || self.truncated {
            return next;
        }
        let current: Vec<&Point> = self.points.keys().collect();
        let origin = Point::origin();

        // I_{u,v}(p, q) = I_{u,v}(p, 0) + I_{u,v}(0, q), and by the swap rule
        // unordered direction pairs with ordered point pairs cover everything.
        let mut tables = Vec::new();
        for (i, u) in self.directions.iter().enumerate() {
            for v in &self.directions[i + 1..] {
                let left: Vec<Point> = current
                    .par_iter()
                    .map(|p| intersect(u, v, p, &origin).expect("distinct directions in one field"))
                    .collect();
                let right: Vec<Point> = current
                    .par_iter()
                    .map(|q| intersect(u, v, &origin, q).expect("distinct directions in one field"))
                    .collect();
                tables.push((left, right));
            }
        }

        let n = current.len();
        'outer: for start in (0..n).step_by(BATCH) {
            let end = (start + BATCH).min(n);
            let batch: Vec<Vec<Point>> = (start..end)
                .into_par_iter()
                .map(|pi| {
                    let mut found = Vec::new();
                    for (left, right) in &tables {
                        for (qi, b) in right.iter().enumerate() {
                            if qi == pi {
                                continue;
                            }
                            let cand = &left[pi] + b;
                            if !self.points.contains_key(&cand) {
                                found.push(cand);
                            }
                        }
                    }
                    found
                })
                .collect();
            for cand in batch.into_iter().flatten() {
                if next.points.contains_key(&cand) {
                    continue;
                }
                if next.points.len() >= max_points {
                    next.truncated = true;
                    break 'outer;
                }
                next.points.insert(cand, next.depth);
            }
        }
        next
    }

    /// Expands until `depth` is reached or the cap is hit.
    pub fn expand_to(&self, depth: u32, max_points: usize) -> Self {
        let mut state = self.clone();
        while state.depth < depth && !state.truncated {
            state = state.expand_capped(max_points);
        }
        state
    }
}

/// Real coordinates `(a, b)` of a point in the basis `(1, z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeCoords {
    pub a: RealQuad,
    pub b: RealQuad,
}

impl LatticeCoords {
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

/// Solves `p = a + b·z` over the reals.
pub fn solve_lattice(p: &Point, z: &Point) -> Result<LatticeCoords, ClosureError> {
    if z.im.is_zero() {
        return Err(ClosureError::DegenerateBasis);
    }
    common_radicand([p, z])?;
    let b = &p.im / &z.im;
    let a = &p.re - &(&b * &z.re);
    Ok(LatticeCoords { a, b })
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeEntry {
    pub point: Point,
    pub coords: LatticeCoords,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub z: Point,
    pub entries: Vec<LatticeEntry>,
    pub all_integer: bool,
    pub violations: Vec<Point>,
    /// Observed `[min, max]` of the integral coordinates `a` and `b`.
    pub a_range: Option<(i64, i64)>,
    pub b_range: Option<(i64, i64)>,
}

/// Lattice coordinates of every stored point in the basis `(1, z)`.
pub fn verify_lattice(state: &ClosureState, z: &Point) -> Result<LatticeReport, ClosureError> {
    let entries = state
        .points()
        .map(|p| Ok(LatticeEntry { point: p.clone(), coords: solve_lattice(p, z)? }))
        .collect::<Result<Vec<_>, ClosureError>>()?;
    let violations: Vec<Point> = entries.iter().filter(|e| !e.coords.is_integral()).map(|e| e.point.clone()).collect();
    let range = |f: fn(&LatticeCoords) -> &RealQuad| {
        entries.iter().filter_map(|e| f(&e.coords).as_integer()).filter_map(|n| i64::try_from(n).ok()).fold(
            None,
            |acc: Option<(i64, i64)>, n| match acc {
                None => Some((n, n)),
                Some((lo, hi)) => Some((lo.min(n), hi.max(n))),
            },
        )
    };
    Ok(LatticeReport {
        z: z.clone(),
        all_integer: violations.is_empty(),
        a_range: range(|c| &c.a),
        b_range: range(|c| &c.b),
        violations,
        entries,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub expected: Point,
    pub actual: Point,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub z: Point,
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

/// Evaluates the twelve intersection values behind `R(1, u, v) = Z + zZ`
/// with `z = I_{u,v}(0, 1)`.
pub fn six_identities_check(u: &Direction, v: &Direction) -> Result<IdentityReport, ClosureError> {
    let one_dir = Direction::horizontal();
    ensure_distinct(&[one_dir.clone(), u.clone(), v.clone()])?;
    let o = Point::origin();
    let one = Point::one();
    let z = intersect(u, v, &o, &one)?;
    let one_minus_z = &one - &z;
    let z_minus_one = &z - &one;

    let cases: [(&'static str, &Direction, &Direction, &Point, Point); 12] = [
        ("I_{u,v}(1,0) = 1-z", u, v, &one, one_minus_z),
        ("I_{u,v}(z,0) = 0", u, v, &z, o.clone()),
        ("I_{v,u}(1,0) = z", v, u, &one, z.clone()),
        ("I_{v,u}(z,0) = z", v, u, &z, z.clone()),
        ("I_{u,1}(1,0) = 1", u, &one_dir, &one, one.clone()),
        ("I_{u,1}(z,0) = 0", u, &one_dir, &z, o.clone()),
        ("I_{v,1}(1,0) = 1", v, &one_dir, &one, one.clone()),
        ("I_{v,1}(z,0) = 1", v, &one_dir, &z, one.clone()),
        ("I_{1,u}(1,0) = 0", &one_dir, u, &one, o.clone()),
        ("I_{1,u}(z,0) = z", &one_dir, u, &z, z.clone()),
        ("I_{1,v}(1,0) = 0", &one_dir, v, &one, o.clone()),
        ("I_{1,v}(z,0) = z-1", &one_dir, v, &z, z_minus_one),
    ];
    let mut checks = Vec::with_capacity(cases.len());
    for (name, a, b, p, expected) in cases {
        let actual = intersect(a, b, p, &o)?;
        checks.push(IdentityCheck { name, pass: actual == expected, expected, actual });
    }
    Ok(IdentityReport { all_pass: checks.iter().all(|c| c.pass), z, checks })
}
