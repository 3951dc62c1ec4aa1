use super::divisor::{Divisor, Point};
use super::model::{Chart, CurveModel, Place};
use crate::algebra::{poly_gcd, resultant_v, roots_in_field, BiPoly, Fp, LocalExpansion, Matrix, Poly, Series};
use crate::error::{Error, Result};

/// A function `(sum_i a_i(x) y^i) / d(x)` on a curve model, with `i` below
/// the degree of the equation in `y` and `d` monic. Common factors of the
/// numerator coefficients and `d` are cancelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionElem {
    num: Vec<Poly>,
    den: Poly,
}

const MAX_PREC: usize = 1 << 13;

/// Reduce a polynomial in `y` (given by coefficients in `x`) modulo an
/// equation monic in `y`.
pub(crate) fn reduce_mod(eq: &BiPoly, mut c: Vec<Poly>) -> Vec<Poly> {
    let p = eq.modulus();
    let m = eq.deg_v() as usize;
    while c.len() > m {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let base = c.len() - m;
        for i in 0..m {
            c[base + i] = &c[base + i] - &(&top * &eq.coeff(i));
        }
    }
    c.resize(m, Poly::zero(p));
    c
}

/// `sum_b polys[b](u(t)) v(t)^b`
pub(crate) fn chart_series(polys: &[Poly], ex: &LocalExpansion) -> Series {
    let n = ex.u.prec();
    let p = ex.u.modulus();
    let mut acc = Series::zero(n, p);
    for a in polys.iter().rev() {
        let mut s = Series::zero(n, p);
        for &c in a.coeffs().iter().rev() {
            s = &(&s * &ex.u) + &Series::constant(c, n);
        }
        acc = &(&acc * &ex.v) + &s;
    }
    acc
}

/// Numerator polynomials moved to the chart at infinity: multiplying by
/// `w^t` turns `a_b(x) y^b` into `w^(t - deg - kappa b) rev(a_b)(w) s^b`.
pub(crate) fn to_infinity_chart(num: &[Poly], kappa: usize, t: usize) -> Vec<Poly> {
    num.iter()
        .enumerate()
        .map(|(b, a)| if a.is_zero() { a.clone() } else { a.reverse(t - kappa * b) })
        .collect()
}

impl FunctionElem {
    pub fn new(curve: &CurveModel, num: Vec<Poly>, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let num = reduce_mod(curve.affine_equation(), num);
        let mut g = den.clone();
        for a in &num {
            g = poly_gcd(&g, a);
        }
        let num: Vec<Poly> = num.iter().map(|a| a.div_exact(&g).unwrap()).collect();
        let den = den.div_exact(&g).unwrap();
        let inv = den.lc().inv().unwrap();
        Ok(FunctionElem { num: num.iter().map(|a| a.scale(inv)).collect(), den: den.scale(inv) })
    }

    pub fn from_poly(curve: &CurveModel, a: Poly) -> Self {
        let p = curve.modulus();
        FunctionElem::new(curve, vec![a], Poly::one(p)).unwrap()
    }

    pub fn constant(curve: &CurveModel, c: Fp) -> Self {
        FunctionElem::from_poly(curve, Poly::constant(c))
    }

    pub fn x(curve: &CurveModel) -> Self {
        FunctionElem::from_poly(curve, Poly::x(curve.modulus()))
    }

    pub fn y(curve: &CurveModel) -> Self {
        let p = curve.modulus();
        FunctionElem::new(curve, vec![Poly::zero(p), Poly::one(p)], Poly::one(p)).unwrap()
    }

    pub fn numerator(&self) -> &[Poly] {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|a| a.is_zero())
    }

    pub fn mul(&self, curve: &CurveModel, other: &FunctionElem) -> FunctionElem {
        let p = curve.modulus();
        let m = self.num.len();
        let mut prod = vec![Poly::zero(p); 2 * m];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in other.num.iter().enumerate() {
                prod[i + j] = &prod[i + j] + &(a * b);
            }
        }
        FunctionElem::new(curve, prod, &self.den * &other.den).unwrap()
    }

    pub fn add(&self, curve: &CurveModel, other: &FunctionElem) -> FunctionElem {
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| &(a * &other.den) + &(b * &self.den))
            .collect();
        FunctionElem::new(curve, num, &self.den * &other.den).unwrap()
    }

    pub fn scale(&self, c: Fp) -> FunctionElem {
        if c.is_zero() {
            let p = c.modulus();
            return FunctionElem { num: vec![Poly::zero(p); self.num.len()], den: Poly::one(p) };
        }
        FunctionElem { num: self.num.iter().map(|a| a.scale(c)).collect(), den: self.den.clone() }
    }

    /// Numerator coefficients over a multiple `den` of the denominator.
    pub fn numerator_over(&self, den: &Poly) -> Option<Vec<Poly>> {
        let r = den.div_exact(&self.den)?;
        Some(self.num.iter().map(|a| a * &r).collect())
    }

    /// Weighted degree of the numerator: `max deg a_b + kappa * b`.
    pub fn weight(&self, kappa: usize) -> i64 {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(b, a)| a.deg() + (kappa * b) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Value at an affine rational point outside the poles of the denominator.
    pub fn eval(&self, pt: &Point) -> Option<Fp> {
        let Point::Affine(x, y) = *pt else { return None };
        let dv = self.den.eval(x).inv()?;
        let mut acc = Fp::zero(x.modulus());
        for a in self.num.iter().rev() {
            acc = acc * y + a.eval(x);
        }
        Some(acc * dv)
    }

    /// Valuations of numerator and denominator at a place, in the chart
    /// coordinates (so at infinity the numerator is `N w^T`).
    fn valuation_parts(&self, curve: &CurveModel, place: &Place) -> Result<(i64, i64)> {
        let (num, den) = match place.chart {
            Chart::Affine => (self.num.clone(), vec![self.den.clone()]),
            Chart::Infinity => {
                let t = self.weight(curve.kappa()) as usize;
                (to_infinity_chart(&self.num, curve.kappa(), t), vec![self.den.reverse(self.den.deg() as usize)])
            }
        };
        let mut prec = 8;
        loop {
            let ex = curve.expansion(place, prec)?;
            let vn = chart_series(&num, &ex).valuation();
            let vd = chart_series(&den, &ex).valuation();
            if let (Some(a), Some(b)) = (vn, vd) {
                return Ok((a as i64, b as i64));
            }
            if prec >= MAX_PREC {
                return Err(Error::Consistency(format!("valuation at {} not found below precision {prec}", place.point)));
            }
            prec *= 2;
        }
    }

    /// Laurent expansion in the local parameter at a rational point:
    /// returns `(v, c)` with the function equal to `t^v (c_0 + c_1 t + ...)`
    /// and `c` holding `len` coefficients.
    pub fn laurent(&self, curve: &CurveModel, pt: &Point, len: usize) -> Result<(i64, Vec<Fp>)> {
        let v = self.valuation(curve, pt)?;
        let place = curve.place(pt)?;
        let (vn, vd) = self.valuation_parts(curve, &place)?;
        let (num, den) = match place.chart {
            Chart::Affine => (self.num.clone(), vec![self.den.clone()]),
            Chart::Infinity => {
                let t = self.weight(curve.kappa()) as usize;
                (to_infinity_chart(&self.num, curve.kappa(), t), vec![self.den.reverse(self.den.deg() as usize)])
            }
        };
        let prec = len.max(1) + vn.max(vd) as usize + place.e;
        let ex = curve.expansion(&place, prec)?;
        let sn = chart_series(&num, &ex).shift_down(vn as usize);
        let sd = chart_series(&den, &ex).shift_down(vd as usize);
        let mut q = &sn * &sd.inv().expect("unit after removing the valuation");
        if place.chart == Chart::Infinity {
            // multiply by w^(deg den - T), where w = t^e * unit
            let e = place.e;
            let unit = ex.u.shift_down(e);
            let k = self.den.deg() - self.weight(curve.kappa());
            let factor = if k >= 0 { unit.pow(k as usize) } else { unit.inv().unwrap().pow((-k) as usize) };
            q = &q * &factor;
        }
        Ok((v, q.coeffs()[..len].to_vec()))
    }

    pub fn valuation(&self, curve: &CurveModel, pt: &Point) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::Domain("valuation of the zero function".into()));
        }
        let place = curve.place(pt)?;
        let (vn, vd) = self.valuation_parts(curve, &place)?;
        Ok(match place.chart {
            Chart::Affine => vn - vd,
            Chart::Infinity => {
                let e = place.e as i64;
                vn - vd - self.weight(curve.kappa()) * e + self.den.deg() * e
            }
        })
    }

    /// The principal divisor. Fails when a zero or pole is not rational.
    pub fn divisor_of(&self, curve: &CurveModel) -> Result<Divisor> {
        if self.is_zero() {
            return Err(Error::Domain("divisor of the zero function".into()));
        }
        let p = curve.modulus();
        let m = curve.fiber_degree();
        let numer = BiPoly::new(self.num.clone(), p);
        let norm = resultant_v(curve.affine_equation(), &numer);
        let norm_roots = roots_in_field(&norm);
        if norm_roots.iter().map(|r| r.1 as i64).sum::<i64>() != norm.deg() {
            return Err(Error::NonRational(format!("zeros over non-rational x (norm {norm}); try another p")));
        }
        let den_roots = roots_in_field(&self.den);
        if den_roots.iter().map(|r| r.1 as i64).sum::<i64>() != self.den.deg() {
            return Err(Error::NonRational(format!("poles over non-rational x (denominator {}); try another p", self.den)));
        }
        let mut xs: Vec<Fp> = norm_roots.iter().map(|r| r.0).collect();
        xs.extend(den_roots.into_iter().map(|r| r.0));
        xs.sort();
        xs.dedup();
        let mut div = Divisor::zero();
        for c in xs {
            let mut zero_sum = 0i64;
            let mut ram_sum = 0usize;
            for pt in curve.points_over(c) {
                let place = curve.place(&pt)?;
                let (vn, vd) = self.valuation_parts(curve, &place)?;
                zero_sum += vn;
                ram_sum += place.e;
                div.add_term(pt, vn - vd);
            }
            let expected = norm_roots.iter().find(|r| r.0 == c).map_or(0, |r| r.1 as i64);
            if zero_sum != expected {
                return Err(Error::NonRational(format!("zeros at non-rational places over x = {c}")));
            }
            if ram_sum < m && self.den.eval(c).is_zero() {
                return Err(Error::NonRational(format!("poles at non-rational places over x = {c}")));
            }
        }
        // places at infinity
        let kappa = curve.kappa();
        let t = self.weight(kappa) as usize;
        let mnum = BiPoly::new(to_infinity_chart(&self.num, kappa, t), p);
        let inf_norm = resultant_v(curve.infinity_equation(), &mnum);
        let expected = inf_norm.coeffs().iter().position(|a| !a.is_zero()).unwrap_or(0) as i64;
        let mut zero_sum = 0;
        let mut ram_sum = 0;
        for i in 0..curve.infinity_values().len() {
            let pt = Point::Infinity(i);
            let place = curve.place(&pt)?;
            let (vn, vd) = self.valuation_parts(curve, &place)?;
            let e = place.e as i64;
            zero_sum += vn;
            ram_sum += place.e;
            div.add_term(pt, vn - vd - t as i64 * e + self.den.deg() * e);
        }
        if zero_sum != expected {
            return Err(Error::NonRational("zeros at non-rational places at infinity".into()));
        }
        if ram_sum < m && t as i64 != self.den.deg() {
            return Err(Error::NonRational("zeros or poles at non-rational places at infinity".into()));
        }
        if div.degree() != 0 {
            return Err(Error::Consistency(format!("principal divisor {div} has degree {}", div.degree())));
        }
        Ok(div)
    }
}

/// Coefficient vectors of functions written over a common denominator.
/// Linear relations among the vectors are exactly linear relations among
/// the functions.
pub fn coefficient_vectors(fs: &[FunctionElem]) -> Vec<Vec<Fp>> {
    let Some(first) = fs.first() else { return Vec::new() };
    let p = first.den.modulus();
    let mut den = Poly::one(p);
    for f in fs {
        let g = poly_gcd(&den, &f.den);
        den = &den * &f.den.div_exact(&g).unwrap();
    }
    let nums: Vec<Vec<Poly>> = fs.iter().map(|f| f.numerator_over(&den).unwrap()).collect();
    let m = first.num.len();
    let width: Vec<usize> =
        (0..m).map(|b| nums.iter().map(|n| n[b].coeffs().len()).max().unwrap_or(0)).collect();
    nums.iter()
        .map(|n| {
            let mut row = Vec::new();
            for b in 0..m {
                let mut c = n[b].coeffs().to_vec();
                c.resize(width[b], Fp::zero(p));
                row.extend(c);
            }
            row
        })
        .collect()
}

/// Dimension of the F_p-span of a list of functions.
pub fn span_rank(fs: &[FunctionElem]) -> usize {
    let rows = coefficient_vectors(fs);
    let Some(first) = rows.first() else { return 0 };
    let p = fs[0].den.modulus();
    Matrix::from_rows(&rows, first.len(), p).rank()
}

/// A maximal linearly independent sublist, in order.
pub fn independent_subset(fs: &[FunctionElem]) -> Vec<FunctionElem> {
    let rows = coefficient_vectors(fs);
    let Some(first) = rows.first() else { return Vec::new() };
    let p = fs[0].den.modulus();
    let t = Matrix::from_rows(&rows, first.len(), p).transpose();
    let mut t = t;
    t.rref().into_iter().map(|c| fs[c].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus2() -> CurveModel {
        CurveModel::make_hyperelliptic(&Poly::from_i64s(&[0, -1, 0, 0, 0, 1], 7)).unwrap()
    }

    #[test]
    fn valuations_of_x() {
        let c = genus2();
        let x = FunctionElem::x(&c);
        assert_eq!(x.valuation(&c, &Point::affine(0, 0, 7)).unwrap(), 2);
        assert_eq!(x.valuation(&c, &Point::Infinity(0)).unwrap(), -2);
        let one = FunctionElem::constant(&c, Fp::one(7));
        assert_eq!(one.valuation(&c, &Point::affine(1, 0, 7)).unwrap(), 0);
    }

    #[test]
    fn principal_divisors() {
        let c = genus2();
        let p = 7;
        let dx = FunctionElem::x(&c).divisor_of(&c).unwrap();
        assert_eq!(dx, Divisor::from_terms([(Point::affine(0, 0, p), 2), (Point::Infinity(0), -2)]));
        // x^5 - x has the irreducible factor x^2 + 1 over F_7
        assert!(matches!(FunctionElem::y(&c).divisor_of(&c), Err(Error::NonRational(_))));
        let split = CurveModel::make_hyperelliptic(&Poly::from_i64s(&[0, -1, 0, 0, 0, 1], 5)).unwrap();
        let dy = FunctionElem::y(&split).divisor_of(&split).unwrap();
        assert_eq!(dy.coeff(&Point::Infinity(0)), -5);
        assert!((0..5).all(|a| dy.coeff(&Point::affine(a, 0, 5)) == 1));
        assert!(FunctionElem::constant(&c, Fp::new(3, p)).divisor_of(&c).unwrap().is_zero());
    }
}
