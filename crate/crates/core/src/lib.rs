//! Exact computation of origami point sets `R(U)`: the closure of `{0, 1}`
//! under line intersections in a fixed set of directions.
//!
//! Three directions give a lattice `Z + zZ`, and [`ringcheck`] decides whether
//! it is a ring and whether that ring is a maximal order. Four or more
//! directions give a dense set, which [`density`] traces and measures.
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doc-tests of this crate.

pub mod closure;
pub mod density;
pub mod field;
pub mod geometry;
pub mod ringcheck;
pub mod serial;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/intersections.md")]
    mod intersections {}
    #[doc = include_str!("../../../book/src/closure.md")]
    mod closure {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/density.md")]
    mod density {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
