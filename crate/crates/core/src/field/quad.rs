use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::squarefree::squarefree_u64;
use super::{FieldError, Rational};

/// The real number `rat + irr·√radicand`.
///
/// Canonical form: `radicand` is squarefree, and `radicand == 0` exactly when
/// `irr == 0`. A rational value therefore has a single representation no
/// matter which field it came from, so derived `Eq` and `Hash` are value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealQuad {
    rat: Rational,
    irr: Rational,
    radicand: u64,
}

impl RealQuad {
    /// Builds `rat + irr·√n`, folding square factors of `n` into `irr`.
    pub fn new(rat: Rational, irr: Rational, n: u64) -> Self {
        let (core, cofactor) = squarefree_u64(n);
        let irr = irr * Rational::from_integer(BigInt::from(cofactor));
        Self::canonical(rat, irr, core)
    }

    fn canonical(rat: Rational, irr: Rational, radicand: u64) -> Self {
        if irr.is_zero() || radicand == 0 {
            return Self { rat, irr: Rational::zero(), radicand: 0 };
        }
        if radicand == 1 {
            return Self { rat: rat + irr, irr: Rational::zero(), radicand: 0 };
        }
        Self { rat, irr, radicand }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self { rat: r, irr: Rational::zero(), radicand: 0 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `√n`, exact.
    pub fn sqrt(n: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn irr(&self) -> &Rational {
        &self.irr
    }

    /// Squarefree radicand, `0` for rational values.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.rat.is_integer()
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.rat.to_integer())
    }

    /// `rat − irr·√n`.
    pub fn conj(&self) -> Self {
        Self { rat: self.rat.clone(), irr: -&self.irr, radicand: self.radicand }
    }

    /// Field norm `rat² − irr²·n`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.irr * &self.irr * Rational::from_integer(BigInt::from(self.radicand))
    }

    /// Exact sign as `-1`, `0` or `1`.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.rat);
        let sb = sign_of(&self.irr);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // mixed signs: the larger of a² and b²n wins
        let a2 = &self.rat * &self.rat;
        let b2n = &self.irr * &self.irr * Rational::from_integer(BigInt::from(self.radicand));
        match a2.cmp(&b2n) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Common field context of two values, or `MixedRadicand`.
    pub fn common_radicand(&self, other: &Self) -> Result<u64, FieldError> {
        match (self.radicand, other.radicand) {
            (0, n) | (n, 0) => Ok(n),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(FieldError::MixedRadicand { left: a, right: b }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        let n = self.common_radicand(other)?;
        Ok(Self::canonical(&self.rat + &other.rat, &self.irr + &other.irr, n))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        let n = self.common_radicand(other)?;
        Ok(Self::canonical(&self.rat - &other.rat, &self.irr - &other.irr, n))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let n = self.common_radicand(other)?;
        let nq = Rational::from_integer(BigInt::from(n));
        let rat = &self.rat * &other.rat + &self.irr * &other.irr * nq;
        let irr = &self.rat * &other.irr + &self.irr * &other.rat;
        Ok(Self::canonical(rat, irr, n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.common_radicand(other)?;
        let inv = other.checked_recip()?;
        self.checked_mul(&inv)
    }

    /// `1/x = conj(x) / norm(x)`.
    pub fn checked_recip(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let norm = self.norm();
        // norm of a nonzero element is nonzero because the radicand is squarefree
        debug_assert!(!norm.is_zero());
        let c = self.conj();
        Ok(Self::canonical(&c.rat / &norm, &c.irr / &norm, self.radicand))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::canonical(&self.rat * r, &self.irr * r, self.radicand)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact comparison; `None` when the radicands are incompatible.
    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self.checked_sub(other).ok()?;
        Some(d.signum().cmp(&0))
    }

    /// Dyadic approximation `m / 2^bits` with `|x − m/2^bits| < 2^(1−bits)`.
    pub fn to_dyadic(&self, bits: u32) -> Rational {
        let scale = BigInt::one() << bits;
        let a = (&self.rat * Rational::from_integer(scale.clone())).floor().to_integer();
        let b = if self.irr.is_zero() {
            BigInt::zero()
        } else {
            // floor(sqrt(x)) == floor(sqrt(floor(x)))
            let sq = &self.irr * &self.irr * Rational::from_integer(BigInt::from(self.radicand) * &scale * &scale);
            let root = sq.floor().to_integer().sqrt();
            if self.irr.is_negative() {
                -root
            } else {
                root
            }
        };
        Rational::new(a + b, scale)
    }

    /// Nearest `f64`, computed from a 128-bit dyadic approximation.
    pub fn to_f64(&self) -> f64 {
        self.to_f64_with(128)
    }

    pub fn to_f64_with(&self, bits: u32) -> f64 {
        self.to_dyadic(bits).to_f64().unwrap_or(f64::NAN)
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

pub fn rq_add(a: &RealQuad, b: &RealQuad) -> Result<RealQuad, FieldError> {
    a.checked_add(b)
}

pub fn rq_sub(a: &RealQuad, b: &RealQuad) -> Result<RealQuad, FieldError> {
    a.checked_sub(b)
}

pub fn rq_mul(a: &RealQuad, b: &RealQuad) -> Result<RealQuad, FieldError> {
    a.checked_mul(b)
}

pub fn rq_div(a: &RealQuad, b: &RealQuad) -> Result<RealQuad, FieldError> {
    a.checked_div(b)
}

pub fn rq_sign(a: &RealQuad) -> i8 {
    a.signum()
}

impl From<Rational> for RealQuad {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for RealQuad {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl PartialOrd for RealQuad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other)
    }
}

impl Neg for RealQuad {
    type Output = RealQuad;
    fn neg(self) -> RealQuad {
        -&self
    }
}

impl Neg for &RealQuad {
    type Output = RealQuad;
    fn neg(self) -> RealQuad {
        RealQuad { rat: -&self.rat, irr: -&self.irr, radicand: self.radicand }
    }
}

// Operator forms panic on MixedRadicand / DivisionByZero; callers validate the
// field context up front and use the checked_* methods at API boundaries.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RealQuad> for &RealQuad {
            type Output = RealQuad;
            fn $method(self, rhs: &RealQuad) -> RealQuad {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {e}", stringify!($method)),
                }
            }
        }
        impl $trait<RealQuad> for RealQuad {
            type Output = RealQuad;
            fn $method(self, rhs: RealQuad) -> RealQuad {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RealQuad> for RealQuad {
            type Output = RealQuad;
            fn $method(self, rhs: &RealQuad) -> RealQuad {
                (&self).$method(rhs)
            }
        }
        impl $trait<RealQuad> for &RealQuad {
            type Output = RealQuad;
            fn $method(self, rhs: RealQuad) -> RealQuad {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl fmt::Display for RealQuad {
    /// Renders in the literal grammar, e.g. `1/2 + 3*sqrt(7)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if self.rat.is_zero() {
            return write!(f, "{}*sqrt({})", self.irr, self.radicand);
        }
        let sign = if self.irr.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt({})", self.rat, sign, self.irr.abs(), self.radicand)
    }
}

impl fmt::Debug for RealQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealQuad({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use proptest::prelude::*;

    fn rq(a: (i64, i64), b: (i64, i64), n: u64) -> RealQuad {
        RealQuad::new(rat(a.0, a.1), rat(b.0, b.1), n)
    }

    #[test]
    fn conjugate_product() {
        let x = rq((1, 1), (1, 1), 7);
        let y = rq((1, 1), (-1, 1), 7);
        assert_eq!(&x * &y, RealQuad::from_integer(-6));
    }

    #[test]
    fn self_division_is_one() {
        let s = RealQuad::sqrt(3);
        assert_eq!(rq_div(&s, &s).unwrap(), RealQuad::one());
    }

    #[test]
    fn rationalized_inverse() {
        let x = rq((1, 1), (1, 1), 2);
        let inv = rq_div(&RealQuad::one(), &x).unwrap();
        assert_eq!(inv, rq((-1, 1), (1, 1), 2));
        // oracle: multiply back
        assert_eq!(&inv * &x, RealQuad::one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(rq_div(&RealQuad::one(), &RealQuad::zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let err = rq_add(&RealQuad::sqrt(2), &RealQuad::sqrt(3)).unwrap_err();
        assert_eq!(err, FieldError::MixedRadicand { left: 2, right: 3 });
        // rationals live in every field
        assert!(rq_mul(&RealQuad::sqrt(2), &RealQuad::from_integer(5)).is_ok());
    }

    #[test]
    fn signs() {
        assert_eq!(rq_sign(&RealQuad::zero()), 0);
        assert_eq!(rq_sign(&rq((-2, 1), (1, 1), 5)), 1);
        assert_eq!(rq_sign(&rq((3, 1), (-2, 1), 2)), 1);
        assert_eq!(rq_sign(&rq((-3, 1), (2, 1), 2)), -1);
        assert_eq!(rq_sign(&rq((2, 1), (-1, 1), 5)), -1);
    }

    #[test]
    fn integrality() {
        assert!(RealQuad::new(rat(10, 1), rat(0, 1), 14).is_integer());
        assert!(!RealQuad::new(rat(1, 2), rat(0, 1), 2).is_integer());
        assert!(!RealQuad::sqrt(2).is_integer());
        assert_eq!(RealQuad::from_integer(10).as_integer(), Some(BigInt::from(10)));
    }

    #[test]
    fn radicand_folding() {
        // √56 = 2√14
        let s = RealQuad::sqrt(56);
        assert_eq!(s.radicand(), 14);
        assert_eq!(s.irr(), &rat(2, 1));
        // perfect squares collapse to rationals
        assert_eq!(RealQuad::sqrt(16), RealQuad::from_integer(4));
        assert_eq!(RealQuad::sqrt(1), RealQuad::one());
        assert_eq!(RealQuad::sqrt(0), RealQuad::zero());
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        for x in [rq((1, 2), (3, 1), 7), rq((1, 2), (-3, 4), 7), rq((0, 1), (-1, 1), 2), rq((-5, 3), (0, 1), 0)] {
            assert_eq!(crate::field::parse_real_quad(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn dyadic_approximation() {
        let s2 = RealQuad::sqrt(2);
        assert_eq!(s2.to_f64(), std::f64::consts::SQRT_2);
        assert_eq!(RealQuad::one().to_f64(), 1.0);
        let x = rq((-7, 3), (5, 11), 13);
        let approx = x.to_dyadic(80);
        let err = (&RealQuad::from_rational(approx) - &x).to_f64();
        assert!(err.abs() < 2f64.powi(-79));
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
    }

    fn arb_rq(n: u64) -> impl Strategy<Value = RealQuad> {
        (arb_rat(), arb_rat()).prop_map(move |(a, b)| RealQuad::new(a, b, n))
    }

    fn arb_triple() -> impl Strategy<Value = (RealQuad, RealQuad, RealQuad)> {
        prop_oneof![Just(0u64), Just(2), Just(3), Just(5), Just(7), Just(14)]
            .prop_flat_map(|n| (arb_rq(n), arb_rq(n), arb_rq(n)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &a), &RealQuad::zero());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
                prop_assert_eq!(&b * &b.checked_recip().unwrap(), RealQuad::one());
            }
        }

        #[test]
        fn sign_matches_float((a, b, _c) in arb_triple()) {
            let x = &a - &b;
            let f = x.to_f64();
            let s = rq_sign(&x);
            if f.abs() > 1e-9 {
                prop_assert_eq!(s, if f > 0.0 { 1 } else { -1 });
            }
            prop_assert_eq!(s == 0, x.is_zero());
        }

        #[test]
        fn canonical_form_is_value_equality((a, b, _c) in arb_triple()) {
            // a − b == 0 as a value iff the structures coincide
            prop_assert_eq!((&a - &b).is_zero(), a == b);
        }
    }
}
