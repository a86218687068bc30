//! Fixed-point closure for direction sets that span more than one quadratic
//! field. Coordinates are integers scaled by `2^precision`; points closer
//! than `2^-40` (after snapping to that grid) are identified.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::geometry::Direction;

pub(crate) const DEDUP_BITS: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct FixedVec {
    x: BigInt,
    y: BigInt,
}

fn cross(a: &FixedVec, b: &FixedVec) -> BigInt {
    &a.x * &b.y - &a.y * &b.x
}

#[derive(Debug, Clone)]
pub(crate) struct FixedClosure {
    precision: u32,
    directions: Vec<FixedVec>,
    points: IndexMap<(BigInt, BigInt), FixedVec>,
    pub(crate) depth: u32,
    pub(crate) truncated: bool,
}

impl FixedClosure {
    pub(crate) fn new(directions: &[Direction], precision: u32) -> Self {
        let scale = BigInt::from(1u8) << precision;
        let to_fixed = |d: &Direction| {
            let dx = d.vec().re.to_dyadic(precision);
            let dy = d.vec().im.to_dyadic(precision);
            FixedVec { x: (dx * &scale).to_integer(), y: (dy * &scale).to_integer() }
        };
        let mut c = Self {
            precision,
            directions: directions.iter().map(to_fixed).collect(),
            points: IndexMap::new(),
            depth: 0,
            truncated: false,
        };
        c.insert(FixedVec { x: BigInt::zero(), y: BigInt::zero() });
        c.insert(FixedVec { x: scale.clone(), y: BigInt::zero() });
        c
    }

    fn key(&self, p: &FixedVec) -> (BigInt, BigInt) {
        let shift = self.precision.saturating_sub(DEDUP_BITS);
        let half = if shift == 0 { BigInt::zero() } else { BigInt::from(1u8) << (shift - 1) };
        ((&p.x + &half) >> shift, (&p.y + &half) >> shift)
    }

    fn insert(&mut self, p: FixedVec) -> bool {
        let k = self.key(&p);
        if self.points.contains_key(&k) {
            return false;
        }
        self.points.insert(k, p);
        true
    }

    pub(crate) fn len(&self) -> usize {
        self.points.len()
    }

    /// Line through `p` along `u` meets line through `q` along `v`.
    fn intersect(u: &FixedVec, v: &FixedVec, p: &FixedVec, q: &FixedVec) -> Option<FixedVec> {
        let den = cross(u, v);
        if den.is_zero() {
            return None;
        }
        let d = FixedVec { x: &q.x - &p.x, y: &q.y - &p.y };
        let num = cross(&d, v);
        Some(FixedVec { x: &p.x + (&num * &u.x) / &den, y: &p.y + (&num * &u.y) / &den })
    }

    pub(crate) fn expand(&mut self, max_points: usize) {
        self.depth += 1;
        if self.truncated {
            return;
        }
        let current: Vec<FixedVec> = self.points.values().cloned().collect();
        let mut pairs = Vec::new();
        for (i, u) in self.directions.iter().enumerate() {
            for v in &self.directions[i + 1..] {
                pairs.push((u, v));
            }
        }
        let found: Vec<Vec<FixedVec>> = (0..current.len())
            .into_par_iter()
            .map(|pi| {
                let p = &current[pi];
                let mut out = Vec::new();
                for (u, v) in &pairs {
                    for (qi, q) in current.iter().enumerate() {
                        if qi != pi {
                            if let Some(x) = Self::intersect(u, v, p, q) {
                                out.push(x);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        for p in found.into_iter().flatten() {
            if self.points.len() >= max_points {
                let k = self.key(&p);
                if !self.points.contains_key(&k) {
                    self.truncated = true;
                    return;
                }
                continue;
            }
            self.insert(p);
        }
    }

    pub(crate) fn to_f64(&self) -> Vec<(f64, f64)> {
        let scale = 2f64.powi(-(self.precision as i32));
        self.points
            .values()
            .map(|p| {
                let x = p.x.to_f64().unwrap_or(f64::NAN) * scale;
                let y = p.y.to_f64().unwrap_or(f64::NAN) * scale;
                (x, y)
            })
            .collect()
    }
}
