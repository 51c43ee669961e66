//! Construction, verification and exact minimization of *s-covers*.
//!
//! An s-cover on `n` points is a family of lines (point sets of size at least
//! two) in which two lines share at most one point and every `s` points
//! include a pair lying on a common line. With every line capped at
//! `(n-1)/(s-1)` points, such a family needs at least `(n-1)/(s-1) + s - 1`
//! lines for large `n`, and the bound is attained whenever `(s-1) | (n-1)`.
//! For `s = 2` this is the de Bruijn–Erdős theorem.
//!
//! The crate provides
//!
//! * the incidence model and exact cap arithmetic ([`model`]);
//! * prime fields and prime search ([`field`]);
//! * the explicit families: grid, near pencil, projective planes of prime
//!   order, the recursive tight family and the prime-plane construction for
//!   the non-divisible case ([`construct`]);
//! * the cover check, through K_s-freeness of the graph of uncovered pairs
//!   ([`verify`], [`graph`]);
//! * the structure profile and the counting inequalities every s-cover
//!   satisfies ([`lemmas`]);
//! * an exact minimizer for small `n` with an independent brute-force oracle
//!   ([`solver`]);
//! * a JSON document format ([`io`]).
//!
//! ```
//! use scover::{construct::grid_construction, model::CapMode, verify::verify_cover};
//!
//! let f = grid_construction(5, 4).unwrap();
//! assert_eq!((f.n(), f.len()), (16, 8));
//! assert!(verify_cover(&f, CapMode::Standard).is_valid());
//! ```
//!
//! The guide in `book/` explains each piece at more length; its code samples
//! are compiled and run as doctests of this crate.

pub mod construct;
pub mod field;
pub mod graph;
pub mod io;
pub mod lemmas;
pub mod model;
pub mod solver;
pub mod verify;

pub use model::{bound_of, cap_of, make_family, CapMode, CoverFamily, Line, PointId, Rational};

// Book chapters, run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
