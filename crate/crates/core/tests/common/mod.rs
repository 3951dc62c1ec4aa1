#![allow(dead_code)]

use scrollkit::algebra::{BiPoly, Poly};
use scrollkit::curve::{CurveModel, Divisor, Point};

pub fn hyper(coeffs: &[i64], p: u32) -> CurveModel {
    CurveModel::make_hyperelliptic(&Poly::from_i64s(coeffs, p)).unwrap()
}

/// `y^2 = x^5 - x` over F_7: genus 2, all six Weierstrass points rational.
pub fn g2_small() -> CurveModel {
    hyper(&[0, -1, 0, 0, 0, 1], 7)
}

/// `y^2 = x^5 + x + 3` over F_101.
pub fn g2_large() -> CurveModel {
    hyper(&[3, 1, 0, 0, 0, 1], 101)
}

/// `y^2 = x(x-1)(x-2)(x-3)(x-4)` over F_11.
pub fn g2_split() -> CurveModel {
    hyper(&[0, 24, -50, 35, -10, 1], 11)
}

pub fn elliptic() -> CurveModel {
    hyper(&[1, 1, 0, 1], 7)
}

pub fn g3_hyper() -> CurveModel {
    hyper(&[5, 1, 0, 2, 0, 0, 0, 1], 11)
}

/// The Fermat quartic `x^4 + y^4 + 1 = 0`.
pub fn quartic(p: u32) -> CurveModel {
    CurveModel::make_plane(&BiPoly::from_terms(&[(4, 0, 1), (0, 4, 1), (0, 0, 1)], p)).unwrap()
}

pub fn inf(n: i64) -> Divisor {
    Divisor::from_terms([(Point::Infinity(0), n)])
}
