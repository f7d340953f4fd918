//! Signed tilings of lattice regions by ribbon L n-ominoes (`n` even).
//!
//! The crate pairs an exact Groebner-basis engine over `Z[x, y]` and
//! `Q[x, y]` with closed-form deciders for rectangles and inflated L regions,
//! a rectangle arithmetic engine, and an independent brute-force oracle that
//! solves the signed-tiling linear system exactly.

pub mod decide;
pub mod error;
pub mod groebner;
pub mod identities;
pub mod oracle;
pub mod polyring;
pub mod rectcalc;
pub mod tilesets;

pub use error::{Error, Result};
pub use polyring::{Coeff, Domain, Monomial, Polynomial, QPoly, ZPoly};
