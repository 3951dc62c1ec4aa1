use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::Fp;

/// A rational point of a curve model. Points at infinity are indexed into
/// the model's list of rational places at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Affine(Fp, Fp),
    Infinity(usize),
}

impl Point {
    pub fn affine(x: i64, y: i64, p: u32) -> Point {
        Point::Affine(Fp::new(x, p), Fp::new(y, p))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Point::Infinity(_))
    }

    pub fn x(&self) -> Option<Fp> {
        match self {
            Point::Affine(x, _) => Some(*x),
            Point::Infinity(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Affine(x, y) => write!(f, "({x},{y})"),
            Point::Infinity(0) => write!(f, "inf"),
            Point::Infinity(i) => write!(f, "inf{i}"),
        }
    }
}

/// Finite formal sum of rational points with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    terms: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn point(p: Point) -> Self {
        Divisor::from_terms([(p, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Point, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, p: Point, n: i64) {
        let e = self.terms.entry(p).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Point, i64)> + '_ {
        self.terms.iter().map(|(p, n)| (*p, *n))
    }

    pub fn coeff(&self, p: &Point) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n > 0)
    }

    pub fn support(&self) -> Vec<Point> {
        self.terms.keys().copied().collect()
    }

    pub fn positive_part(&self) -> Divisor {
        Divisor::from_terms(self.terms().filter(|t| t.1 > 0))
    }

    pub fn negative_part(&self) -> Divisor {
        Divisor::from_terms(self.terms().filter(|t| t.1 < 0).map(|(p, n)| (p, -n)))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms().map(|(p, n)| (p, n * k)))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(p, n)| if n == 1 { p.to_string() } else { format!("{n}*{p}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&Divisor> for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in rhs.terms() {
            d.add_term(p, n);
        }
        d
    }
}

impl Sub<&Divisor> for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in rhs.terms() {
            d.add_term(p, -n);
        }
        d
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        self.scale(-1)
    }
}

impl Mul<&Divisor> for i64 {
    type Output = Divisor;
    fn mul(self, rhs: &Divisor) -> Divisor {
        rhs.scale(self)
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(self, rhs: Divisor) -> Divisor {
        &self + &rhs
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(self, rhs: Divisor) -> Divisor {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let p = 7;
        let a = Divisor::from_terms([(Point::affine(1, 2, p), 2), (Point::Infinity(0), -1)]);
        let b = Divisor::point(Point::Infinity(0));
        let c = &a + &b;
        assert_eq!(c.degree(), 2);
        assert_eq!(c.support().len(), 1);
        assert!((&c - &c).is_zero());
    }
}
