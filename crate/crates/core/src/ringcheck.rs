//! When `Z + zZ` is a ring, and when that ring is the full ring of integers
//! of `Q(z)`.
//!
//! For `z = I_{u,v}(0, 1)` with trace `k = z + z̄` and norm `m = z·z̄`, the
//! lattice `Z + zZ` is closed under multiplication iff `z² = k·z − m` lies in
//! it, i.e. iff `k, m ∈ Z`. In that case `z = k/2 + y·√d/2` where
//! `k² − 4m = y²·d` with `d < 0` squarefree, and the order is maximal iff it
//! contains `√d` (for `d ≢ 1 mod 4`) or `(1 + √d)/2` (for `d ≡ 1 mod 4`).
//!
//! Maximality is decided by that membership test. A second route evaluates
//! the tangent conditions (`(k·tan α)²` for odd `k`, `((k/2)·tan α)²` for even
//! `k ≠ 0`, `tan² β` for `k = 0`) and reads the mod-4 congruence on the field
//! label `d = −(that square)`. The same conditions read on the positive
//! square disagree with the membership test for even `k`; every such
//! disagreement is reported as a warning.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::closure::{solve_lattice, ClosureError, LatticeCoords};
use crate::field::{is_squarefree, squarefree_decompose, Rational, RealQuad, SquarefreeDecomposition};
use crate::geometry::{ensure_distinct, intersect, Direction, GeometryError, Point};
use crate::serial::{serialize_opt_bigint, serialize_rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("z is real; Z + zZ is not a lattice")]
    RealZ,
    #[error("z is not of degree 2 over Q: trace or norm is irrational")]
    NotQuadratic,
    #[error("invalid cosine fraction: {0}")]
    InvalidFraction(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl From<ClosureError> for RingError {
    fn from(e: ClosureError) -> Self {
        match e {
            ClosureError::DegenerateBasis => RingError::RealZ,
            ClosureError::Geometry(g) => RingError::Geometry(g),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NotARing,
    RingProperSuborder,
    RingMaximalOrder,
}

/// `z = I_{u,v}(0, 1)` for the direction set `{1, u, v}`.
pub fn compute_z(u: &Direction, v: &Direction) -> Result<Point, RingError> {
    ensure_distinct(&[Direction::horizontal(), u.clone(), v.clone()])?;
    Ok(intersect(u, v, &Point::origin(), &Point::one())?)
}

/// Trace `k = 2·Re z` and norm `m = |z|²`.
pub fn trace_norm(z: &Point) -> (RealQuad, RealQuad) {
    (&z.re + &z.re, z.norm_sq())
}

#[derive(Debug, Clone, Serialize)]
pub struct RingPredicate {
    pub z: Point,
    pub k: RealQuad,
    pub m: RealQuad,
    /// `k ∈ Z` and `m ∈ Z`.
    pub is_ring: bool,
    /// Coordinates of `z²` in the basis `(1, z)`.
    pub z_squared: LatticeCoords,
    /// `z² ∈ Z + zZ`, decided independently of `k` and `m`.
    pub z_squared_in_lattice: bool,
    pub consistent: bool,
}

pub fn ring_predicate(z: &Point) -> Result<RingPredicate, RingError> {
    if z.is_real() {
        return Err(RingError::RealZ);
    }
    let (k, m) = trace_norm(z);
    let is_ring = k.is_integer() && m.is_integer();
    let z_squared = solve_lattice(&z.mul(z), z)?;
    let direct = z_squared.is_integral();
    Ok(RingPredicate {
        z: z.clone(),
        k,
        m,
        is_ring,
        z_squared,
        z_squared_in_lattice: direct,
        consistent: is_ring == direct,
    })
}

/// Squarefree `d < 0` with `Q(z) = Q(√d)`.
pub fn field_of(z: &Point) -> Result<BigInt, RingError> {
    if z.is_real() {
        return Err(RingError::RealZ);
    }
    let (k, m) = trace_norm(z);
    let (Some(k), Some(m)) = (k.as_rational(), m.as_rational()) else {
        return Err(RingError::NotQuadratic);
    };
    let disc: Rational = k * k - m * Rational::from_integer(BigInt::from(4));
    // p/q and p·q differ by the square q²
    let cleared = disc.numer() * disc.denom();
    let dec = squarefree_decompose(&cleared).map_err(|_| RingError::RealZ)?;
    Ok(dec.core)
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaRoute {
    /// `√d` or `(1 + √d)/2`, the second basis element of the maximal order.
    pub generator: Point,
    pub generator_coords: LatticeCoords,
    pub contains_generator: bool,
    pub d_mod_4: u8,
    pub k_odd: bool,
    /// `(d ≡ 1 mod 4 ∧ k odd ∧ y = 1) ∨ (d ≢ 1 mod 4 ∧ k even ∧ y = 2)`.
    pub discriminant_test: bool,
    pub maximal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigClause {
    KOdd,
    KEven,
    KZero,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrigRoute {
    pub clause: TrigClause,
    /// `tan α` for `k ≠ 0`, `tan β` for `k = 0`.
    pub tangent: RealQuad,
    /// `(k·tan α)²`, `((k/2)·tan α)²` or `tan² β`.
    pub quantity: RealQuad,
    pub squarefree_positive_integer: bool,
    /// `quantity mod 4` when it is an integer.
    pub quantity_mod_4: Option<u8>,
    /// `(−quantity) mod 4`, the residue of the field label.
    pub field_label_mod_4: Option<u8>,
    /// Conditions with the congruence read on the field label `−quantity`.
    pub maximal: bool,
    /// Conditions with the congruence read on `quantity` itself.
    pub literal_maximal: bool,
    /// `k² − 4m = −(k·tan α)²` (only checked for `k ≠ 0`).
    pub dagger_identity: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Routes {
    pub lemma: Option<LemmaRoute>,
    pub trig: Option<TrigRoute>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub z: Point,
    pub k: RealQuad,
    pub m: RealQuad,
    /// `k² − 4m` once `k` and `m` are integers.
    #[serde(serialize_with = "serialize_opt_bigint")]
    pub discriminant: Option<BigInt>,
    pub decomposition: Option<SquarefreeDecomposition>,
    #[serde(serialize_with = "serialize_opt_bigint")]
    pub y: Option<BigInt>,
    #[serde(serialize_with = "serialize_opt_bigint")]
    pub d: Option<BigInt>,
    /// `d` with `Q(z) = Q(√d)`, also for non-rings with rational `k`, `m`.
    #[serde(serialize_with = "serialize_opt_bigint")]
    pub field_label: Option<BigInt>,
    pub verdict: Verdict,
    pub routes: Routes,
    /// Both routes reached the same verdict (vacuously true when only one ran).
    pub routes_agree: bool,
    pub warnings: Vec<Warning>,
}

/// Classifies `Z + zZ`, reading the tangents off `z` itself
/// (`u ∥ z`, `v ∥ z − 1`).
pub fn classify_order(z: &Point) -> Result<OrderReport, RingError> {
    if z.is_real() {
        return Err(RingError::RealZ);
    }
    let u = Direction::new(z.clone())?;
    let v = Direction::new(z - &Point::one())?;
    classify_inner(z, &u, &v)
}

/// Classifies `R(1, u, v) = Z + zZ` with `z = I_{u,v}(0, 1)`, reading the
/// tangents off the given directions.
pub fn classify_directions(u: &Direction, v: &Direction) -> Result<OrderReport, RingError> {
    let z = compute_z(u, v)?;
    classify_inner(&z, u, v)
}

fn mod4(n: &BigInt) -> u8 {
    n.mod_floor(&BigInt::from(4)).to_u8().expect("residue below 4")
}

fn classify_inner(z: &Point, u: &Direction, v: &Direction) -> Result<OrderReport, RingError> {
    let pred = ring_predicate(z)?;
    let (k, m) = (pred.k.clone(), pred.m.clone());
    let field_label = field_of(z).ok();
    let mut report = OrderReport {
        z: z.clone(),
        k: k.clone(),
        m: m.clone(),
        discriminant: None,
        decomposition: None,
        y: None,
        d: None,
        field_label,
        verdict: Verdict::NotARing,
        routes: Routes { lemma: None, trig: None },
        routes_agree: true,
        warnings: Vec::new(),
    };
    if !pred.consistent {
        report.warnings.push(Warning {
            code: "ring_tests_disagree",
            message: "integrality of k, m disagrees with z² ∈ Z + zZ".into(),
        });
    }
    if !pred.is_ring {
        return Ok(report);
    }

    let k_int = k.as_integer().expect("ring has integral trace");
    let m_int = m.as_integer().expect("ring has integral norm");
    let disc = &k_int * &k_int - BigInt::from(4) * &m_int;
    let dec = squarefree_decompose(&disc).map_err(|_| RingError::RealZ)?;
    let lemma = lemma_route(z, &k_int, &dec)?;
    let trig = trig_route(&k, &m, &disc, u, v);

    report.verdict = if lemma.maximal { Verdict::RingMaximalOrder } else { Verdict::RingProperSuborder };
    if lemma.maximal != lemma.discriminant_test {
        report.warnings.push(Warning {
            code: "lemma_tests_disagree",
            message: "membership of the maximal-order generator disagrees with the discriminant test".into(),
        });
    }
    if let Some(t) = &trig {
        report.routes_agree = t.maximal == lemma.maximal;
        if !report.routes_agree {
            report.warnings.push(Warning {
                code: "trig_route_divergence",
                message: format!(
                    "tangent conditions ({:?}) give maximal = {}, membership test gives {}",
                    t.clause, t.maximal, lemma.maximal
                ),
            });
        }
        if t.literal_maximal != lemma.maximal {
            report.warnings.push(Warning {
                code: "literal_congruence_divergence",
                message: format!(
                    "reading \"congruent to 2 or 3 mod 4\" on the positive quantity {} ({:?}) gives maximal = {}, \
                     but the field label {} ≡ {} mod 4 gives maximal = {}",
                    t.quantity,
                    t.clause,
                    t.literal_maximal,
                    dec.core,
                    mod4(&dec.core),
                    lemma.maximal
                ),
            });
        }
    }
    report.discriminant = Some(disc);
    report.y = Some(dec.cofactor.clone());
    report.d = Some(dec.core.clone());
    report.decomposition = Some(dec);
    report.routes = Routes { lemma: Some(lemma), trig };
    Ok(report)
}

fn lemma_route(z: &Point, k: &BigInt, dec: &SquarefreeDecomposition) -> Result<LemmaRoute, RingError> {
    let d = &dec.core;
    let abs_d = d.abs().to_u64().expect("desk-scale discriminant");
    let d_mod_4 = mod4(d);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let generator = if d_mod_4 == 1 {
        Point::new(RealQuad::from_rational(half.clone()), RealQuad::sqrt(abs_d).scale(&half))
    } else {
        Point::new(RealQuad::zero(), RealQuad::sqrt(abs_d))
    };
    let coords = solve_lattice(&generator, z)?;
    let contains = coords.is_integral();
    let k_odd = k.is_odd();
    let y = &dec.cofactor;
    let discriminant_test = if d_mod_4 == 1 { k_odd && y.is_one() } else { !k_odd && *y == BigInt::from(2) };
    Ok(LemmaRoute {
        generator,
        generator_coords: coords,
        contains_generator: contains,
        d_mod_4,
        k_odd,
        discriminant_test,
        maximal: contains,
    })
}

fn trig_route(k: &RealQuad, m: &RealQuad, disc: &BigInt, u: &Direction, v: &Direction) -> Option<TrigRoute> {
    let (clause, tangent, scale) = if k.is_zero() {
        (TrigClause::KZero, v.tan()?, RealQuad::one())
    } else {
        let k_int = k.as_integer()?;
        let scale = if k_int.is_odd() { k.clone() } else { k.scale(&Rational::new(BigInt::one(), BigInt::from(2))) };
        let clause = if k_int.is_odd() { TrigClause::KOdd } else { TrigClause::KEven };
        (clause, u.tan()?, scale)
    };
    let quantity = (&scale * &tangent).square();
    let q_int = quantity.as_integer();
    let squarefree_positive_integer = q_int.as_ref().is_some_and(|q| q.is_positive() && is_squarefree(q));
    let quantity_mod_4 = q_int.as_ref().map(mod4);
    let field_label_mod_4 = q_int.as_ref().map(|q| mod4(&-q));
    let two_or_three = |r: Option<u8>| matches!(r, Some(2) | Some(3));
    let (maximal, literal_maximal) = match clause {
        TrigClause::KOdd => (squarefree_positive_integer, squarefree_positive_integer),
        TrigClause::KEven | TrigClause::KZero => (
            squarefree_positive_integer && two_or_three(field_label_mod_4),
            squarefree_positive_integer && two_or_three(quantity_mod_4),
        ),
    };
    let dagger_identity = (!k.is_zero()).then(|| {
        let lhs = RealQuad::from_rational(Rational::from_integer(disc.clone()));
        let kt = (k * &tangent).square();
        lhs == -kt && &k.square() - &m.scale(&Rational::from_integer(BigInt::from(4))) == lhs
    });
    Some(TrigRoute {
        clause,
        tangent,
        quantity,
        squarefree_positive_integer,
        quantity_mod_4,
        field_label_mod_4,
        maximal,
        literal_maximal,
        dagger_identity,
    })
}

/// The ring-producing pair built from `cos α = s/t`: `z = s + i·√(t² − s²)`,
/// `u ∥ z`, `v ∥ z − 1`.
#[derive(Debug, Clone, Serialize)]
pub struct BetaConstruction {
    pub s: u64,
    pub t: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub cos_alpha: Rational,
    pub z: Point,
    pub u_dir: Direction,
    pub v_dir: Direction,
    pub k: RealQuad,
    pub m: RealQuad,
}

pub fn construct_from_cos(s: u64, t: u64) -> Result<BetaConstruction, RingError> {
    if s == 0 || t == 0 {
        return Err(RingError::InvalidFraction(format!("{s}/{t}: s and t must be positive")));
    }
    if s >= t {
        return Err(RingError::InvalidFraction(format!("{s}/{t}: need s < t")));
    }
    let g = s.gcd(&t);
    if g != 1 {
        return Err(RingError::InvalidFraction(format!(
            "{s}/{t} is not reduced (gcd {g}); the unreduced choice only generates the subring Z + {g}zZ"
        )));
    }
    let z = unreduced_z(s, t);
    let u_dir = Direction::new(z.clone())?;
    let v_dir = Direction::new(&z - &Point::one())?;
    let (k, m) = trace_norm(&z);
    Ok(BetaConstruction { s, t, cos_alpha: Rational::new(BigInt::from(s), BigInt::from(t)), z, u_dir, v_dir, k, m })
}

/// `s + i·√(t² − s²)` without any coprimality requirement.
pub fn unreduced_z(s: u64, t: u64) -> Point {
    let r = t * t - s * s;
    Point::new(RealQuad::from(s as i64), RealQuad::sqrt(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_real_quad, rat};
    use crate::geometry::parse_direction_list;

    fn rq(s: &str) -> RealQuad {
        parse_real_quad(s).unwrap()
    }

    fn pair(s: &str) -> (Direction, Direction) {
        let d = parse_direction_list(s).unwrap();
        (d[0].clone(), d[1].clone())
    }

    #[test]
    fn z_examples() {
        let (u, v) = pair("deg:45,deg:90");
        assert_eq!(compute_z(&u, &v).unwrap(), Point::from_ints(1, 1));
        let (u, v) = pair("tan:sqrt(7),vec:(-1,1*sqrt(7))");
        assert_eq!(compute_z(&u, &v).unwrap(), Point::new(rq("1/2"), rq("1/2*sqrt(7)")));
        let (u, v) = pair("i,vec:(1,1*sqrt(5))");
        assert_eq!(compute_z(&u, &v).unwrap(), Point::new(rq("0"), rq("-1*sqrt(5)")));
        let (u, _) = pair("deg:0,deg:90");
        assert!(compute_z(&u, &Direction::vertical()).is_err());
    }

    #[test]
    fn ring_examples() {
        let p = ring_predicate(&Point::new(rq("1/4"), rq("1/4*sqrt(3)"))).unwrap();
        assert_eq!(p.k, RealQuad::from_rational(rat(1, 2)));
        assert!(!p.is_ring && p.consistent);

        let z = Point::new(rq("1/2"), rq("1/2*sqrt(7)"));
        let p = ring_predicate(&z).unwrap();
        assert_eq!((p.k.clone(), p.m.clone()), (RealQuad::from(1), RealQuad::from(2)));
        assert!(p.is_ring && p.consistent);
        assert_eq!(p.z_squared, LatticeCoords { a: RealQuad::from(-2), b: RealQuad::one() });

        let p = ring_predicate(&Point::from_ints(1, 1)).unwrap();
        assert_eq!((p.k, p.m), (RealQuad::from(2), RealQuad::from(2)));
        assert!(p.is_ring);

        assert_eq!(ring_predicate(&Point::one()).unwrap_err(), RingError::RealZ);
    }

    #[test]
    fn proper_suborder_for_sqrt56() {
        let z = Point::new(rq("5"), rq("1*sqrt(56)"));
        let r = classify_order(&z).unwrap();
        assert_eq!(r.k, RealQuad::from(10));
        assert_eq!(r.m, RealQuad::from(81));
        assert_eq!(r.discriminant, Some(BigInt::from(-224)));
        assert_eq!(r.y, Some(BigInt::from(4)));
        assert_eq!(r.d, Some(BigInt::from(-14)));
        assert_eq!(r.verdict, Verdict::RingProperSuborder);
        assert!(r.routes_agree);
        let trig = r.routes.trig.as_ref().unwrap();
        assert_eq!(trig.quantity, RealQuad::from(56));
        assert_eq!(trig.dagger_identity, Some(true));
    }

    #[test]
    fn maximal_for_sqrt_minus_7() {
        let (u, v) = pair("tan:sqrt(7),vec:(-1,1*sqrt(7))");
        let r = classify_directions(&u, &v).unwrap();
        assert_eq!(r.discriminant, Some(BigInt::from(-7)));
        assert_eq!(r.y, Some(BigInt::one()));
        assert_eq!(r.verdict, Verdict::RingMaximalOrder);
        let trig = r.routes.trig.as_ref().unwrap();
        assert_eq!(trig.clause, TrigClause::KOdd);
        assert_eq!(trig.quantity, RealQuad::from(7));
        assert!(r.routes_agree && r.warnings.is_empty());
    }

    #[test]
    fn k_zero_divergence_is_reported() {
        let z = Point::new(rq("0"), rq("-1*sqrt(5)"));
        let r = classify_order(&z).unwrap();
        // Z + √−5·Z is the full ring of integers of Q(√−5)
        assert_eq!(r.verdict, Verdict::RingMaximalOrder);
        let trig = r.routes.trig.as_ref().unwrap();
        assert_eq!(trig.clause, TrigClause::KZero);
        assert_eq!(trig.quantity_mod_4, Some(1));
        assert!(!trig.literal_maximal);
        assert!(trig.maximal);
        assert!(r.warnings.iter().any(|w| w.code == "literal_congruence_divergence"));
    }

    #[test]
    fn gaussian_integers_are_maximal() {
        let r = classify_order(&Point::from_ints(1, 1)).unwrap();
        assert_eq!(r.verdict, Verdict::RingMaximalOrder);
        assert_eq!(r.d, Some(BigInt::from(-1)));
        assert_eq!(r.y, Some(BigInt::from(2)));
        assert!(r.routes_agree);
    }

    #[test]
    fn not_a_ring_short_circuits() {
        let r = classify_order(&Point::new(rq("1/4"), rq("1/4*sqrt(3)"))).unwrap();
        assert_eq!(r.verdict, Verdict::NotARing);
        assert!(r.decomposition.is_none() && r.routes.lemma.is_none());
        assert_eq!(r.field_label, Some(BigInt::from(-3)));
    }

    #[test]
    fn field_labels() {
        assert_eq!(field_of(&Point::from_ints(1, 1)).unwrap(), BigInt::from(-1));
        assert_eq!(field_of(&Point::new(rq("1/2"), rq("1/2*sqrt(7)"))).unwrap(), BigInt::from(-7));
        for d in [1u64, 2, 3, 5, 6, 7, 10] {
            let z = Point::new(RealQuad::zero(), -RealQuad::sqrt(d));
            assert_eq!(field_of(&z).unwrap(), BigInt::from(-(d as i64)));
        }
        assert_eq!(field_of(&Point::one()), Err(RingError::RealZ));
        assert_eq!(field_of(&Point::new(rq("sqrt(2)"), rq("1"))), Err(RingError::NotQuadratic));
    }

    #[test]
    fn constructions() {
        let c = construct_from_cos(3, 5).unwrap();
        assert_eq!(c.z, Point::from_ints(3, 4));
        assert_eq!((c.k.clone(), c.m.clone()), (RealQuad::from(6), RealQuad::from(25)));
        assert!(ring_predicate(&c.z).unwrap().is_ring);

        let c = construct_from_cos(5, 9).unwrap();
        assert_eq!(c.z, Point::new(rq("5"), rq("1*sqrt(56)")));
        assert_eq!(compute_z(&c.u_dir, &c.v_dir).unwrap(), c.z);

        let c = construct_from_cos(1, 2).unwrap();
        assert_eq!(c.z, Point::new(rq("1"), rq("sqrt(3)")));
        assert!(c.v_dir.is_vertical());

        for (s, t) in [(0, 3), (3, 3), (4, 3), (2, 4)] {
            assert!(matches!(construct_from_cos(s, t), Err(RingError::InvalidFraction(_))), "{s}/{t}");
        }
    }

    #[test]
    fn minimal_polynomial_and_cosine_relations() {
        for (s, t) in [(1, 2), (2, 3), (3, 5), (5, 9), (4, 7)] {
            let c = construct_from_cos(s, t).unwrap();
            let z = &c.z;
            let (k, m) = trace_norm(z);
            // z² − k·z + m = 0
            let lhs = &(&z.mul(z) - &z.scale(&k)) + &Point::real(m.clone());
            assert!(lhs.is_zero());
            // k²·|u|² = 4m·(Re u)²
            let u = c.u_dir.vec();
            assert_eq!(&k.square() * &u.norm_sq(), &(&m * &RealQuad::from(4)) * &u.re.square());
        }
    }
}
