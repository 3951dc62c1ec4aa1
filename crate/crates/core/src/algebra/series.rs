use std::ops::{Add, Mul, Neg, Sub};

use super::bipoly::BiPoly;
use super::field::Fp;
use crate::error::{Error, Result};

/// Truncated power series `sum c_i t^i`, known modulo `t^prec` where
/// `prec = coefficients.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    c: Vec<Fp>,
    p: u32,
}

impl Series {
    pub fn new(c: Vec<Fp>, p: u32) -> Self {
        Series { c, p }
    }

    pub fn zero(prec: usize, p: u32) -> Self {
        Series { c: vec![Fp::zero(p); prec], p }
    }

    pub fn constant(a: Fp, prec: usize) -> Self {
        let mut s = Series::zero(prec, a.modulus());
        if prec > 0 {
            s.c[0] = a;
        }
        s
    }

    /// `a + t`, the identity parametrization shifted to `a`.
    pub fn shifted_param(a: Fp, prec: usize) -> Self {
        let mut s = Series::constant(a, prec);
        if prec > 1 {
            s.c[1] = Fp::one(a.modulus());
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.c.len()
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fp {
        self.c.get(i).copied().unwrap_or(Fp::zero(self.p))
    }

    pub fn truncate(&self, prec: usize) -> Series {
        let mut c = self.c.clone();
        c.resize(prec.min(c.len()), Fp::zero(self.p));
        Series { c, p: self.p }
    }

    /// Order of the first nonzero coefficient, `None` if zero to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    pub fn scale(&self, a: Fp) -> Series {
        Series { c: self.c.iter().map(|&b| a * b).collect(), p: self.p }
    }

    /// Multiply by `t^k`, keeping the precision window anchored at zero.
    pub fn shift_up(&self, k: usize) -> Series {
        let n = self.c.len() + k;
        let mut c = vec![Fp::zero(self.p); k];
        c.extend_from_slice(&self.c);
        c.truncate(n);
        Series { c, p: self.p }
    }

    /// Divide by `t^k`, dropping the first `k` coefficients.
    pub fn shift_down(&self, k: usize) -> Series {
        Series { c: self.c.iter().skip(k).copied().collect(), p: self.p }
    }

    /// Inverse of a unit series.
    pub fn inv(&self) -> Option<Series> {
        let n = self.c.len();
        let a0 = self.c.first()?.inv()?;
        let mut out = vec![Fp::zero(self.p); n];
        out[0] = a0;
        for k in 1..n {
            let mut acc = Fp::zero(self.p);
            for i in 1..=k {
                acc += self.c[i] * out[k - i];
            }
            out[k] = -acc * a0;
        }
        Some(Series { c: out, p: self.p })
    }

    pub fn pow(&self, e: usize) -> Series {
        let mut acc = Series::constant(Fp::one(self.p), self.c.len());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.c.len().min(rhs.c.len());
        Series { c: (0..n).map(|i| self.c[i] + rhs.c[i]).collect(), p: self.p }
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.c.len().min(rhs.c.len());
        Series { c: (0..n).map(|i| self.c[i] - rhs.c[i]).collect(), p: self.p }
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.c.len().min(rhs.c.len());
        let p = self.p as u64;
        let mut acc = vec![0u64; n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            let av = a.value() as u64;
            for (j, b) in rhs.c.iter().enumerate().take(n - i) {
                acc[i + j] = (acc[i + j] + av * b.value() as u64) % p;
            }
        }
        Series { c: acc.into_iter().map(|v| Fp::from_u64(v, self.p)).collect(), p: self.p }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { c: self.c.iter().map(|&a| -a).collect(), p: self.p }
    }
}

/// Which affine coordinate, shifted to the point, serves as local parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    X,
    Y,
}

/// A smooth branch of `G(u, v) = 0` through a point, as power series in the
/// local parameter `t`.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    pub param: Param,
    pub u: Series,
    pub v: Series,
}

/// Hensel-lift the branch of `G(u, v) = 0` through `(u0, v0)`.
///
/// When `dG/dv` is nonzero the parameter is `t = u - u0`; otherwise the
/// coordinates swap roles and `t = v - v0`.
pub fn series_expand(g: &BiPoly, point: (Fp, Fp), prec: usize) -> Result<LocalExpansion> {
    if prec == 0 {
        return Err(Error::Domain("precision must be at least 1".into()));
    }
    let (u0, v0) = point;
    if !g.eval(u0, v0).is_zero() {
        return Err(Error::Domain(format!("({u0}, {v0}) is not on the curve")));
    }
    let gu = g.partial_u();
    let gv = g.partial_v();
    if !gv.eval(u0, v0).is_zero() {
        let u = Series::shifted_param(u0, prec);
        let v = newton_lift(g, &gv, &u, v0, prec, false);
        Ok(LocalExpansion { param: Param::X, u, v })
    } else if !gu.eval(u0, v0).is_zero() {
        let v = Series::shifted_param(v0, prec);
        let u = newton_lift(g, &gu, &v, u0, prec, true);
        Ok(LocalExpansion { param: Param::Y, u, v })
    } else {
        Err(Error::Singular(format!("both partials vanish at ({u0}, {v0})")))
    }
}

/// Solve for the dependent coordinate by Newton iteration with doubling
/// precision. `swapped` means the known series is `v` and we solve for `u`.
fn newton_lift(g: &BiPoly, dg: &BiPoly, known: &Series, start: Fp, prec: usize, swapped: bool) -> Series {
    let p = start.modulus();
    let mut sol = Series::constant(start, 1);
    let mut n = 1;
    while n < prec {
        n = (2 * n).min(prec);
        let k = known.truncate(n);
        let mut s = sol.coeffs().to_vec();
        s.resize(n, Fp::zero(p));
        let cur = Series::new(s, p);
        let (uu, vv) = if swapped { (&cur, &k) } else { (&k, &cur) };
        let val = g.eval_series(uu, vv);
        let der = dg.eval_series(uu, vv);
        let step = &val * &der.inv().expect("derivative is a unit at a smooth point");
        sol = &cur - &step;
    }
    sol.truncate(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    #[test]
    fn branch_of_cubic() {
        let p = 10007;
        // y^2 - x^3 - 1 at (0, 1): y = 1 + x^3/2 + ...
        let g = BiPoly::hyperelliptic(&Poly::from_i64s(&[1, 0, 0, 1], p));
        let e = series_expand(&g, (Fp::zero(p), Fp::one(p)), 8).unwrap();
        assert_eq!(e.param, Param::X);
        assert_eq!(e.v.coeff(3), Fp::new(1, p) / Fp::new(2, p));
        let r = g.eval_series(&e.u, &e.v);
        assert!(r.coeffs().iter().all(|a| a.is_zero()));
        let e1 = series_expand(&g, (Fp::zero(p), Fp::one(p)), 1).unwrap();
        assert_eq!(e1.v.coeff(0), Fp::one(p));
    }

    #[test]
    fn chart_swap_at_vertical_tangent() {
        let p = 7;
        // y^2 = x^5 - x at the Weierstrass point (0, 0)
        let g = BiPoly::hyperelliptic(&Poly::from_i64s(&[0, -1, 0, 0, 0, 1], p));
        let e = series_expand(&g, (Fp::zero(p), Fp::zero(p)), 6).unwrap();
        assert_eq!(e.param, Param::Y);
        assert_eq!(e.u.valuation(), Some(2));
    }
}
