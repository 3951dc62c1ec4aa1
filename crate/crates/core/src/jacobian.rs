//! Degree-0 classes on odd-degree hyperelliptic models in Mumford form,
//! with Cantor's composition and reduction.

use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::OnceLock;

use crate::algebra::{distinct_roots, poly_xgcd, roots_in_field, Fp, Poly};
use crate::curve::{CurveModel, Divisor, Point};
use crate::error::{Error, Result};
use crate::riemann_roch;

/// The class of `D - deg(D) inf` for the reduced effective `D` cut out by
/// `u(x) = 0, y = v(x)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JacClass {
    u: Poly,
    v: Poly,
    curve: u64,
}

impl JacClass {
    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.deg() == 0
    }

    /// Degree of the reduced effective part.
    pub fn weight(&self) -> usize {
        self.u.deg() as usize
    }
}

impl fmt::Debug for JacClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Default cap on the estimated size of J(F_p) for exhaustive enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

pub struct Jacobian {
    f: Poly,
    g: usize,
    id: u64,
    budget: u64,
    elements: OnceLock<Result<Vec<JacClass>>>,
    halves: OnceLock<HashMap<JacClass, Vec<JacClass>>>,
}

impl Jacobian {
    pub fn new(curve: &CurveModel) -> Result<Self> {
        Jacobian::with_budget(curve, DEFAULT_BUDGET)
    }

    pub fn with_budget(curve: &CurveModel, budget: u64) -> Result<Self> {
        if !curve.is_odd_model() {
            return Err(Error::Unsupported(
                "Mumford arithmetic needs an odd-degree hyperelliptic model; use riemann_roch for equivalence".into(),
            ));
        }
        let f = curve.hyperelliptic_poly().unwrap().clone();
        let mut h = DefaultHasher::new();
        f.hash(&mut h);
        Ok(Jacobian {
            g: curve.genus(),
            id: h.finish(),
            f,
            budget,
            elements: OnceLock::new(),
            halves: OnceLock::new(),
        })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    fn p(&self) -> u32 {
        self.f.modulus()
    }

    pub fn identity(&self) -> JacClass {
        JacClass { u: Poly::one(self.p()), v: Poly::zero(self.p()), curve: self.id }
    }

    fn make(&self, u: Poly, v: Poly) -> JacClass {
        let v = v.rem(&u);
        JacClass { u, v, curve: self.id }
    }

    fn check(&self, c: &JacClass) -> Result<()> {
        if c.curve != self.id {
            return Err(Error::Domain("class belongs to a different curve".into()));
        }
        Ok(())
    }

    /// Build a class from a Mumford pair, checking `u | v^2 - f`.
    pub fn from_mumford(&self, u: Poly, v: Poly) -> Result<JacClass> {
        if u.is_zero() || !u.is_monic() {
            return Err(Error::Domain(format!("u = {u} must be monic")));
        }
        let r = &(&v * &v) - &self.f;
        if !r.rem(&u).is_zero() {
            return Err(Error::Domain(format!("u = {u} does not divide v^2 - f")));
        }
        Ok(self.reduce(u, v))
    }

    /// The class of `[P - inf]`.
    pub fn point_class(&self, pt: &Point) -> Result<JacClass> {
        match *pt {
            Point::Infinity(_) => Ok(self.identity()),
            Point::Affine(x, y) => {
                if !(y * y - self.f.eval(x)).is_zero() {
                    return Err(Error::Domain(format!("{pt} is not on the curve")));
                }
                Ok(self.make(Poly::linear_root(x), Poly::constant(y)))
            }
        }
    }

    /// The class of `D - deg(D) inf`.
    pub fn class_of(&self, d: &Divisor) -> Result<JacClass> {
        let mut acc = self.identity();
        for (pt, n) in d.terms() {
            let c = self.point_class(&pt)?;
            acc = self.add(&acc, &self.mul(&c, n))?;
        }
        Ok(acc)
    }

    fn compose(&self, a: &JacClass, b: &JacClass) -> (Poly, Poly) {
        let (d0, e1, e2) = poly_xgcd(&a.u, &b.u);
        let vs = &a.v + &b.v;
        let (d, c1, c2) = poly_xgcd(&d0, &vs);
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let u = (&a.u * &b.u).div_exact(&(&d * &d)).expect("d^2 divides u1 u2");
        let num = &(&(&s1 * &a.u) * &b.v) + &(&(&s2 * &b.u) * &a.v);
        let num = &num + &(&c2 * &(&(&a.v * &b.v) + &self.f));
        let v = num.div_exact(&d).expect("d divides the composition numerator").rem(&u);
        (u, v)
    }

    fn reduce(&self, mut u: Poly, mut v: Poly) -> JacClass {
        v = v.rem(&u);
        while u.deg() > self.g as i64 {
            let un = (&self.f - &(&v * &v)).div_exact(&u).expect("u divides f - v^2");
            u = un.monic();
            v = (-&v).rem(&u);
        }
        let u = u.monic();
        self.make(u, v)
    }

    pub fn add(&self, a: &JacClass, b: &JacClass) -> Result<JacClass> {
        self.check(a)?;
        self.check(b)?;
        let (u, v) = self.compose(a, b);
        Ok(self.reduce(u, v))
    }

    pub fn double(&self, a: &JacClass) -> Result<JacClass> {
        self.add(a, a)
    }

    pub fn neg(&self, a: &JacClass) -> JacClass {
        self.make(a.u.clone(), -&a.v)
    }

    pub fn sub(&self, a: &JacClass, b: &JacClass) -> Result<JacClass> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &JacClass, n: i64) -> JacClass {
        let mut base = if n < 0 { self.neg(a) } else { a.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base).unwrap();
            }
            base = self.add(&base, &base).unwrap();
            k >>= 1;
        }
        acc
    }

    /// Effective divisor `E` of degree `weight(c)` with `[E - weight(c) inf] = c`,
    /// when the roots of `u` are rational.
    pub fn divisor_of_class(&self, c: &JacClass) -> Result<Divisor> {
        self.check(c)?;
        let roots = roots_in_field(&c.u);
        if roots.iter().map(|r| r.1).sum::<usize>() != c.weight() {
            return Err(Error::NonRational(format!("u = {} does not split over F_p", c.u)));
        }
        Ok(Divisor::from_terms(roots.into_iter().map(|(a, m)| (Point::Affine(a, c.v.eval(a)), m as i64))))
    }

    /// A degree-0 divisor supported on rational points in class `c`. When
    /// the Mumford `u` of `c` does not split, `c - [P]` and then
    /// `c - [P] - [Q]` are tried over rational `P`, `Q`.
    pub fn rational_representative(&self, curve: &CurveModel, c: &JacClass) -> Result<Divisor> {
        let inf = Point::Infinity(0);
        let lift = |e: Divisor| {
            let w = e.degree();
            &e - &Divisor::from_terms([(inf, w)])
        };
        if let Ok(e) = self.divisor_of_class(c) {
            return Ok(lift(e));
        }
        let pts: Vec<Point> = curve.enumerate_points().iter().filter(|p| !p.is_infinite()).copied().collect();
        for pt in &pts {
            let rest = self.sub(c, &self.point_class(pt)?)?;
            if let Ok(e) = self.divisor_of_class(&rest) {
                return Ok(&lift(e) + &lift(Divisor::point(*pt)));
            }
        }
        for (i, p1) in pts.iter().enumerate() {
            let c1 = self.sub(c, &self.point_class(p1)?)?;
            for p2 in &pts[i..] {
                let rest = self.sub(&c1, &self.point_class(p2)?)?;
                if let Ok(e) = self.divisor_of_class(&rest) {
                    let pair = Divisor::from_terms([(*p1, 1), (*p2, 1)]);
                    return Ok(&lift(e) + &lift(pair));
                }
            }
        }
        Err(Error::NonRational(format!("no representative of {c:?} over rational points was found")))
    }

    /// All classes killed by 2, from subsets of the roots of `f`.
    pub fn two_torsion(&self) -> Result<Vec<JacClass>> {
        let roots = distinct_roots(&self.f);
        if roots.len() != self.f.deg() as usize {
            return Err(Error::NonRational(format!("f = {} does not split over F_p", self.f)));
        }
        let p = self.p();
        let mut out = Vec::new();
        for mask in 0u32..(1 << roots.len()) {
            if mask.count_ones() as usize > self.g {
                continue;
            }
            let mut u = Poly::one(p);
            for (i, r) in roots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    u = &u * &Poly::linear_root(*r);
                }
            }
            out.push(self.make(u, Poly::zero(p)));
        }
        let expect = 1usize << (2 * self.g);
        if out.len() != expect {
            return Err(Error::Consistency(format!("found {} two-torsion classes, expected {expect}", out.len())));
        }
        Ok(out)
    }

    /// Upper estimate `(sqrt(p) + 1)^(2g)` for the size of J(F_p).
    pub fn size_estimate(&self) -> f64 {
        ((self.p() as f64).sqrt() + 1.0).powi(2 * self.g as i32)
    }

    /// Every rational class, by running over Mumford pairs.
    pub fn elements(&self) -> Result<&[JacClass]> {
        self.elements.get_or_init(|| self.enumerate()).as_deref().map_err(Clone::clone)
    }

    fn enumerate(&self) -> Result<Vec<JacClass>> {
        let est = self.size_estimate();
        if est > self.budget as f64 {
            return Err(Error::Budget(format!(
                "|J(F_p)| may reach {est:.0}, above the enumeration budget {}",
                self.budget
            )));
        }
        let p = self.p();
        let mut out = vec![self.identity()];
        for deg in 1..=self.g {
            for tail in 0..(p as u64).pow(deg as u32) {
                let mut c = digits(tail, deg, p);
                c.push(Fp::one(p));
                let u = Poly::new(c, p);
                for v in self.square_roots_of_f_mod(&u) {
                    out.push(self.make(u.clone(), v));
                }
            }
        }
        Ok(out)
    }

    /// All `v` with `deg v < deg u` and `v^2 = f mod u`.
    fn square_roots_of_f_mod(&self, u: &Poly) -> Vec<Poly> {
        let p = self.p();
        let n = u.deg() as usize;
        let fr = self.f.rem(u);
        let mut out = Vec::new();
        for top in 0..(p as u64).pow(n as u32 - 1) {
            let mut wc = vec![Fp::zero(p)];
            wc.extend(digits(top, n - 1, p));
            let w = Poly::new(wc, p);
            // (v0 + w)^2 - f = v0^2 + v0 * B + R mod u
            let r = (&(&w * &w) - &fr).rem(u);
            let b = w.scale(Fp::new(2, p)).rem(u);
            let candidates: Vec<Fp> = match (1..n).find(|&j| !b.coeff(j).is_zero()) {
                Some(j) => vec![-r.coeff(j) / b.coeff(j)],
                None => {
                    if (1..n).any(|j| !r.coeff(j).is_zero()) {
                        continue;
                    }
                    // v0^2 + b0 v0 + r0 = 0
                    let (b0, r0) = (b.coeff(0), r.coeff(0));
                    let disc = b0 * b0 - Fp::new(4, p) * r0;
                    match disc.sqrt() {
                        None => Vec::new(),
                        Some(s) if s.is_zero() => vec![-b0 / Fp::new(2, p)],
                        Some(s) => vec![(s - b0) / Fp::new(2, p), (-s - b0) / Fp::new(2, p)],
                    }
                }
            };
            for v0 in candidates {
                let v = &w + &Poly::constant(v0);
                if (&(&v * &v) - &fr).rem(u).is_zero() {
                    out.push(v);
                }
            }
        }
        out
    }

    fn halving_table(&self) -> Result<&HashMap<JacClass, Vec<JacClass>>> {
        let elems = self.elements()?;
        Ok(self.halves.get_or_init(|| {
            let mut table: HashMap<JacClass, Vec<JacClass>> = HashMap::new();
            for x in elems {
                table.entry(self.double(x).unwrap()).or_default().push(x.clone());
            }
            table
        }))
    }

    /// All rational `x` with `2x = c`. A nonempty answer always has as many
    /// elements as the rational 2-torsion.
    pub fn square_roots(&self, c: &JacClass) -> Result<Vec<JacClass>> {
        self.check(c)?;
        let table = self.halving_table()?;
        let torsion = table.get(&self.identity()).map_or(0, Vec::len);
        let roots = table.get(c).cloned().unwrap_or_default();
        if !roots.is_empty() && roots.len() != torsion {
            return Err(Error::Consistency(format!(
                "{} halves of {c:?}, but {torsion} rational two-torsion classes",
                roots.len()
            )));
        }
        Ok(roots)
    }

    /// Number of rational points of the Jacobian (by enumeration).
    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }
}

/// `n` base-`p` digits of `k`, least significant first.
fn digits(mut k: u64, n: usize, p: u32) -> Vec<Fp> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(Fp::from_u64(k % p as u64, p));
        k /= p as u64;
    }
    out
}

/// Linear equivalence of two divisors of equal degree. On odd hyperelliptic
/// models the Mumford computation and `h0(D1 - D2) = 1` must agree.
pub fn is_equivalent(curve: &CurveModel, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    if d1.degree() != d2.degree() {
        return Err(Error::Domain(format!("degrees {} and {} differ", d1.degree(), d2.degree())));
    }
    let diff = d1 - d2;
    let by_rr = riemann_roch::h0(curve, &diff)? == 1;
    if curve.is_odd_model() {
        let jac = Jacobian::new(curve)?;
        let by_cantor = jac.class_of(&diff)?.is_identity();
        if by_cantor != by_rr {
            return Err(Error::Consistency(format!(
                "equivalence of {d1} and {d2}: Cantor says {by_cantor}, h0 says {by_rr}"
            )));
        }
    }
    Ok(by_rr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weierstrass_classes() {
        let p = 7;
        let c = CurveModel::make_hyperelliptic(&Poly::from_i64s(&[0, -1, 0, 0, 0, 1], p)).unwrap();
        let j = Jacobian::new(&c).unwrap();
        let d = Divisor::from_terms([(Point::affine(0, 0, p), 1), (Point::affine(1, 0, p), 1)]);
        let cl = j.class_of(&d).unwrap();
        assert_eq!(cl.u(), &Poly::from_i64s(&[0, -1, 1], p));
        assert!(cl.v().is_zero());
        let w = j.point_class(&Point::affine(0, 0, p)).unwrap();
        assert!(j.double(&w).unwrap().is_identity());
        assert!(j.class_of(&Divisor::from_terms([(Point::Infinity(0), 2)])).unwrap().is_identity());
    }
}
