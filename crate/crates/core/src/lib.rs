//! Exact arithmetic for v-adic gamma values and period products over
//! rational function fields.
//!
//! The crate computes, entirely in exact characteristic-p arithmetic:
//!
//! - Carlitz factorials and the deleted products D_{i,v} ([`gamma`]);
//! - the v-adic arithmetic gamma function as a truncated Laurent series in
//!   the completed field k_v = F_{q^d}((theta - eps)) ([`series`], [`place`]);
//! - the crystalline-de Rham period products Omega_{ell,v,s}(v) and
//!   Phi_{v,s}(v) with the index combinatorics tying them together
//!   ([`periods`]);
//! - exponent-lattice combinatorics: transcendence degrees, the
//!   algebraicity predicate, and Gross-Koblitz kernel orbits ([`relations`]);
//! - a machine-verification suite for the functional equations, product
//!   expansions, Gross-Koblitz evaluations, and the Chowla-Selberg row
//!   identity ([`verify`]).

pub mod digits;
pub mod error;
pub mod field;
pub mod gamma;
pub mod periods;
pub mod place;
pub mod poly;
pub mod relations;
pub mod series;
pub mod verify;

pub use digits::QDigits;
pub use error::{Error, Result};
pub use field::{FieldElem, FqField};
pub use gamma::{carlitz_d, carlitz_factorial, v_ord_factorial, GammaCtx, GammaValue, Rational};
pub use place::Place;
pub use poly::{enumerate_monic, is_irreducible, parse_poly, Poly};
pub use series::{DiffBound, LaurentSeries};
pub use verify::{CheckCtx, CheckReport, SuiteConfig, SuiteResult};
