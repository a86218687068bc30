//! JSON shapes for exact values. Rationals are always written `"p/q"` and
//! quadratic values as `{rat, irr, radicand}`; no floats appear in exact
//! output.

use num_bigint::BigInt;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::field::{Rational, RealQuad, SquarefreeDecomposition};
use crate::geometry::{Direction, LinearMap, Point};

/// `"p/q"` with `q ≥ 1`, including integers (`"5/1"`).
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

pub fn serialize_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational_string(r)),
        None => s.serialize_none(),
    }
}

pub fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn serialize_opt_bigint<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => s.serialize_str(&n.to_string()),
        None => s.serialize_none(),
    }
}

impl Serialize for RealQuad {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RealQuad", 3)?;
        st.serialize_field("rat", &rational_string(self.rat()))?;
        st.serialize_field("irr", &rational_string(self.irr()))?;
        st.serialize_field("radicand", &self.radicand())?;
        st.end()
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Point", 2)?;
        st.serialize_field("re", &self.re)?;
        st.serialize_field("im", &self.im)?;
        st.end()
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vec().serialize(s)
    }
}

impl Serialize for LinearMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = [[&self.a, &self.b], [&self.c, &self.d]];
        rows.serialize(s)
    }
}

impl Serialize for SquarefreeDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SquarefreeDecomposition", 3)?;
        st.serialize_field("input", &self.input.to_string())?;
        st.serialize_field("core", &self.core.to_string())?;
        st.serialize_field("cofactor", &self.cofactor.to_string())?;
        st.end()
    }
}
