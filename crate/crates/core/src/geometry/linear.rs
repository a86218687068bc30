use crate::field::RealQuad;

use super::{ensure_distinct, Direction, GeometryError, Point};

/// A real-linear map of the plane, `(x, y) ↦ (a·x + b·y, c·x + d·y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    pub a: RealQuad,
    pub b: RealQuad,
    pub c: RealQuad,
    pub d: RealQuad,
}

impl LinearMap {
    /// Rows `(a, b)` and `(c, d)`; fails if the determinant vanishes.
    pub fn new(a: RealQuad, b: RealQuad, c: RealQuad, d: RealQuad) -> Result<Self, GeometryError> {
        let m = Self { a, b, c, d };
        if m.det().is_zero() {
            return Err(GeometryError::SingularMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self { a: RealQuad::one(), b: RealQuad::zero(), c: RealQuad::zero(), d: RealQuad::one() }
    }

    pub fn det(&self) -> RealQuad {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Inverse through the adjugate.
    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self { a: &self.d / &det, b: -(&self.b / &det), c: -(&self.c / &det), d: &self.a / &det }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(&self.a * &p.re + &self.b * &p.im, &self.c * &p.re + &self.d * &p.im)
    }

    pub fn apply_direction(&self, u: &Direction) -> Direction {
        Direction::new(self.apply(u.vec())).expect("invertible maps keep directions nonzero")
    }
}

pub fn apply_map(t: &LinearMap, p: &Point) -> Point {
    t.apply(p)
}

/// Moves the first direction onto the real axis.
///
/// For `x = (x₁, x₂)` the map is `((x₁, x₂), (−x₂, x₁))`, a rotation by
/// `−arg x` scaled by `|x|`; it keeps every coordinate in the field of `x`.
pub fn normalize_directions(dirs: &[Direction]) -> Result<(Vec<Direction>, LinearMap), GeometryError> {
    ensure_distinct(dirs)?;
    let Some(first) = dirs.first() else {
        return Ok((Vec::new(), LinearMap::identity()));
    };
    let x = first.vec();
    let t = LinearMap::new(x.re.clone(), x.im.clone(), -&x.im, x.re.clone())?;
    let mapped = dirs.iter().map(|u| t.apply_direction(u)).collect();
    Ok((mapped, t))
}
