//! Points of the plane over a real quadratic field, directions modulo real
//! scaling, and the intersection operator `I_{u,v}(p, q)`.
//!
//! A point `x + iy` is stored as its two real coordinates. The bracket
//! `s(x, y) = x·ȳ − x̄·y` is always purely imaginary, equal to
//! `2i·(Im x · Re y − Re x · Im y)`, and vanishes iff `x` and `y` are
//! parallel over the reals.

mod linear;
mod spec;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::field::{FieldError, Rational, RealQuad};

pub use linear::{apply_map, normalize_directions, LinearMap};
pub use spec::{parse_direction, parse_direction_list, parse_point, split_top_level};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("directions are parallel")]
    ParallelDirections,
    #[error("a direction must be a nonzero vector")]
    ZeroDirection,
    #[error("directions must be pairwise distinct")]
    DuplicateDirections,
    #[error("linear map is singular")]
    SingularMap,
    #[error("invalid direction {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A complex number `re + i·im` with exact real-quadratic coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub re: RealQuad,
    pub im: RealQuad,
}

impl Point {
    pub fn new(re: RealQuad, im: RealQuad) -> Self {
        Self { re, im }
    }

    pub fn real(re: RealQuad) -> Self {
        Self { re, im: RealQuad::zero() }
    }

    pub fn origin() -> Self {
        Self::real(RealQuad::zero())
    }

    pub fn one() -> Self {
        Self::real(RealQuad::one())
    }

    pub fn i() -> Self {
        Self::new(RealQuad::zero(), RealQuad::one())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(re.into(), im.into())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The field context shared by both coordinates.
    pub fn radicand(&self) -> Result<u64, FieldError> {
        self.re.common_radicand(&self.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, r: &RealQuad) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::new(self.re.scale(r), self.im.scale(r))
    }

    /// Complex product.
    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.re * &other.re - &self.im * &other.im, &self.re * &other.im + &self.im * &other.re)
    }

    /// `|x|²`.
    pub fn norm_sq(&self) -> RealQuad {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Euclidean inner product of the coordinate vectors.
    pub fn dot(&self, other: &Self) -> RealQuad {
        &self.re * &other.re + &self.im * &other.im
    }

    /// `Re x · Im y − Im x · Re y`.
    pub fn cross(&self, other: &Self) -> RealQuad {
        &self.re * &other.im - &self.im * &other.re
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        &self + &rhs
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        &self - &rhs
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.re, -&self.im)
    }
}

/// Common field context of a family of points, `0` if all are rational.
pub fn common_radicand<'a>(points: impl IntoIterator<Item = &'a Point>) -> Result<u64, FieldError> {
    let mut n = 0u64;
    for p in points {
        for c in [&p.re, &p.im] {
            n = RealQuad::sqrt(n).common_radicand(c)?;
        }
    }
    Ok(n)
}

/// A line direction: a nonzero vector up to multiplication by a nonzero real.
///
/// Stored canonically as `(x, 1)` when not horizontal and as `(1, 0)`
/// otherwise, so two directions are equal iff their angles agree mod π.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    vec: Point,
}

impl Direction {
    pub fn new(v: Point) -> Result<Self, GeometryError> {
        if v.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        v.radicand()?;
        let vec = if v.im.is_zero() { Point::one() } else { Point::new(&v.re / &v.im, RealQuad::one()) };
        Ok(Self { vec })
    }

    /// The real axis, direction `1`.
    pub fn horizontal() -> Self {
        Self { vec: Point::one() }
    }

    /// The imaginary axis, direction `i`.
    pub fn vertical() -> Self {
        Self { vec: Point::i() }
    }

    /// Direction `1 + i·t`, i.e. the line of slope `t`.
    pub fn from_slope(t: RealQuad) -> Result<Self, GeometryError> {
        Self::new(Point::new(RealQuad::one(), t))
    }

    pub fn vec(&self) -> &Point {
        &self.vec
    }

    pub fn is_horizontal(&self) -> bool {
        self.vec.im.is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        self.vec.re.is_zero()
    }

    /// `tan` of the direction's angle; `None` for the vertical direction.
    pub fn tan(&self) -> Option<RealQuad> {
        if self.is_vertical() {
            None
        } else {
            Some(&self.vec.im / &self.vec.re)
        }
    }

    /// Orders directions by their angle in `[0, π)` using the sign of the
    /// cross product. `None` when the field contexts are incompatible.
    pub fn cmp_angle(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            return Some(Ordering::Equal);
        }
        let c = self.vec.re.checked_mul(&other.vec.im).ok()?;
        let c = c.checked_sub(&self.vec.im.checked_mul(&other.vec.re).ok()?).ok()?;
        Some(0.cmp(&c.signum()))
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Direction{:?}", self.vec)
    }
}

/// Fails with `DuplicateDirections` unless the directions are pairwise distinct.
pub fn ensure_distinct(dirs: &[Direction]) -> Result<(), GeometryError> {
    for (i, a) in dirs.iter().enumerate() {
        if dirs[i + 1..].contains(a) {
            return Err(GeometryError::DuplicateDirections);
        }
    }
    Ok(())
}

/// `s(x, y) = x·ȳ − x̄·y`, a purely imaginary point.
pub fn s_bracket(x: &Point, y: &Point) -> Point {
    Point::new(RealQuad::zero(), s_imag(x, y))
}

/// Imaginary part of `s(x, y)`: `2·(Im x · Re y − Re x · Im y)`.
pub fn s_imag(x: &Point, y: &Point) -> RealQuad {
    let c = &x.im * &y.re - &x.re * &y.im;
    &c + &c
}

/// `I_{u,v}(p, q)`: the intersection of the line through `p` with direction
/// `u` and the line through `q` with direction `v`.
///
/// Computed as `(s_{u,p}/s_{u,v})·v + (s_{v,q}/s_{v,u})·u`. Total for every
/// `p`, `q` (including `p == q`) as long as `u` and `v` are not parallel.
pub fn intersect(u: &Direction, v: &Direction, p: &Point, q: &Point) -> Result<Point, GeometryError> {
    common_radicand([u.vec(), v.vec(), p, q])?;
    let (u, v) = (u.vec(), v.vec());
    let s_uv = s_imag(u, v);
    if s_uv.is_zero() {
        return Err(GeometryError::ParallelDirections);
    }
    let along_v = &s_imag(u, p) / &s_uv;
    let along_u = &s_imag(v, q) / &(-&s_uv);
    Ok(&v.scale(&along_v) + &u.scale(&along_u))
}
