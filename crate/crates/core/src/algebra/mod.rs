//! Prime fields, polynomials, truncated series and dense linear algebra.

pub mod bipoly;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod series;

pub use bipoly::{poly_det, resultant_v, BiPoly};
pub use field::{is_prime, Fp};
pub use matrix::{rank_and_nullspace, Matrix};
pub use poly::{distinct_roots, is_squarefree, poly_gcd, poly_xgcd, roots_in_field, splits_completely, Poly};
pub use series::{series_expand, LocalExpansion, Param, Series};
