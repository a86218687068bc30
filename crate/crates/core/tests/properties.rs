use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use origami_core::closure::{solve_lattice, ClosureState};
use origami_core::field::{rat, RealQuad};
use origami_core::geometry::{apply_map, parse_direction_list, Direction, LinearMap, Point};
use origami_core::ringcheck::{classify_order, ring_predicate, trace_norm, unreduced_z, Verdict};

fn random_quad(rng: &mut ChaCha8Rng, n: u64) -> RealQuad {
    let a = rat(rng.gen_range(-12..=12), rng.gen_range(1..=4));
    let b = rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    RealQuad::new(a, b, n)
}

fn random_nonreal(rng: &mut ChaCha8Rng) -> Point {
    let n = [0u64, 2, 3, 5, 7, 14][rng.gen_range(0..6)];
    loop {
        let z = Point::new(
            RealQuad::from_rational(rat(rng.gen_range(-12..=12), rng.gen_range(1..=4))),
            random_quad(rng, n),
        );
        if !z.is_real() {
            return z;
        }
    }
}

#[test]
fn ring_tests_are_equivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let z = random_nonreal(&mut rng);
        let p = ring_predicate(&z).unwrap();
        assert_eq!(p.is_ring, p.z_squared_in_lattice, "z = {z:?}");
        assert!(p.consistent);
    }
}

#[test]
fn minimal_polynomial_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let z = random_nonreal(&mut rng);
        let (k, m) = trace_norm(&z);
        let value = &(&z.mul(&z) - &z.scale(&k)) + &Point::real(m);
        assert!(value.is_zero(), "z = {z:?}");
    }
}

#[test]
fn unreduced_cosines_give_sublattices() {
    for (s, t) in [(1u64, 2u64), (5, 9), (2, 7), (3, 4)] {
        let z = unreduced_z(s, t);
        for g in 2..=5u64 {
            let coords = solve_lattice(&unreduced_z(g * s, g * t), &z).unwrap();
            assert_eq!(coords.a, RealQuad::zero());
            assert_eq!(coords.b, RealQuad::from_integer(g as i64));
        }
    }
}

#[test]
fn ring_verdicts_from_ring_predicate() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let z = random_nonreal(&mut rng);
        let rep = classify_order(&z).unwrap();
        let is_ring = ring_predicate(&z).unwrap().is_ring;
        assert_eq!(rep.verdict != Verdict::NotARing, is_ring);
        if is_ring {
            assert!(rep.routes_agree, "z = {z:?}: {:?}", rep.warnings);
        }
    }
}

/// A shear fixing 1 maps the closure of `U` onto the closure of `T·U`.
#[test]
fn closure_commutes_with_maps_fixing_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for spec in ["deg:0,deg:45,deg:90", "deg:0,deg:30,deg:60,deg:90", "deg:0,deg:60,deg:90,deg:135"] {
        let dirs = parse_direction_list(spec).unwrap();
        let n = ClosureState::with_unit_seeds(dirs.clone()).unwrap().radicand();
        let b = random_quad(&mut rng, n);
        let d = loop {
            let d = random_quad(&mut rng, n);
            if !d.is_zero() {
                break d;
            }
        };
        let t = LinearMap::new(RealQuad::one(), b, RealQuad::zero(), d).unwrap();
        let mapped: Vec<Direction> = dirs.iter().map(|u| t.apply_direction(u)).collect();

        let depth = if dirs.len() == 3 { 3 } else { 2 };
        let a = ClosureState::with_unit_seeds(dirs).unwrap().expand_to(depth, 100_000);
        let b = ClosureState::with_unit_seeds(mapped).unwrap().expand_to(depth, 100_000);
        let image: HashSet<Point> = a.points().map(|p| apply_map(&t, p)).collect();
        let direct: HashSet<Point> = b.points().cloned().collect();
        assert_eq!(image, direct, "{spec}");
    }
}
