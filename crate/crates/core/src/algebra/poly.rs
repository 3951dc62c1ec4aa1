use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Fp;
use crate::error::{Error, Result};

/// Dense univariate polynomial over F_p, coefficients in ascending order.
///
/// The zero polynomial has an empty coefficient vector; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Fp>,
    p: u32,
}

impl Poly {
    pub fn new(mut c: Vec<Fp>, p: u32) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        Poly { c, p }
    }

    pub fn from_i64s(coeffs: &[i64], p: u32) -> Self {
        Poly::new(coeffs.iter().map(|&a| Fp::new(a, p)).collect(), p)
    }

    pub fn zero(p: u32) -> Self {
        Poly { c: Vec::new(), p }
    }

    pub fn one(p: u32) -> Self {
        Poly { c: vec![Fp::one(p)], p }
    }

    pub fn constant(a: Fp) -> Self {
        Poly::new(vec![a], a.modulus())
    }

    /// The monomial `a * x^k`.
    pub fn monomial(a: Fp, k: usize) -> Self {
        let p = a.modulus();
        let mut c = vec![Fp::zero(p); k + 1];
        c[k] = a;
        Poly::new(c, p)
    }

    pub fn x(p: u32) -> Self {
        Poly::monomial(Fp::one(p), 1)
    }

    /// `x - a`
    pub fn linear_root(a: Fp) -> Self {
        Poly::new(vec![-a, Fp::one(a.modulus())], a.modulus())
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `-1` standing in for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Fp {
        self.c.get(i).copied().unwrap_or(Fp::zero(self.p))
    }

    pub fn lc(&self) -> Fp {
        self.c.last().copied().unwrap_or(Fp::zero(self.p))
    }

    pub fn eval(&self, x: Fp) -> Fp {
        let mut acc = Fp::zero(self.p);
        for &a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| a * Fp::new(i as i64, self.p))
            .collect();
        Poly::new(c, self.p)
    }

    pub fn scale(&self, a: Fp) -> Poly {
        Poly::new(self.c.iter().map(|&b| a * b).collect(), self.p)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Fp::zero(self.p); k];
        c.extend_from_slice(&self.c);
        Poly { c, p: self.p }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(inv)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divmod(&self, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        let db = b.c.len() - 1;
        if self.c.len() < b.c.len() {
            return (Poly::zero(self.p), self.clone());
        }
        let inv = b.lc().inv().unwrap();
        let mut r = self.c.clone();
        let mut q = vec![Fp::zero(self.p); self.c.len() - db];
        for i in (0..q.len()).rev() {
            let t = r[i + db] * inv;
            q[i] = t;
            if t.is_zero() {
                continue;
            }
            for j in 0..=db {
                r[i + j] -= t * b.c[j];
            }
        }
        r.truncate(db);
        (Poly::new(q, self.p), Poly::new(r, self.p))
    }

    pub fn rem(&self, b: &Poly) -> Poly {
        self.divmod(b).1
    }

    /// Exact division; `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(b);
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Substitute `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Poly {
        let mut c = vec![Fp::zero(self.p); self.c.len().saturating_sub(1) * k + 1];
        if self.is_zero() {
            return Poly::zero(self.p);
        }
        for (i, &a) in self.c.iter().enumerate() {
            c[i * k] = a;
        }
        Poly::new(c, self.p)
    }

    /// Substitute `x -> x + a`.
    pub fn translate(&self, a: Fp) -> Poly {
        let lin = Poly::new(vec![a, Fp::one(self.p)], self.p);
        let mut acc = Poly::zero(self.p);
        for &coef in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(coef);
        }
        acc
    }

    /// Reverse with respect to degree `n`: `x^n f(1/x)`.
    pub fn reverse(&self, n: usize) -> Poly {
        assert!(self.c.len() <= n + 1);
        let mut c = vec![Fp::zero(self.p); n + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[n - i] = a;
        }
        Poly::new(c, self.p)
    }
}

/// Monic greatest common divisor. `gcd(0, 0)` is zero.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn poly_xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let p = a.modulus();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
    let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1);
        r0 = r1;
        r1 = r;
        let s = &s0 - &(&q * &s1);
        s0 = s1;
        s1 = s;
        let t = &t0 - &(&q * &t1);
        t0 = t1;
        t1 = t;
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = r0.lc().inv().unwrap();
    (r0.scale(inv), s0.scale(inv), t0.scale(inv))
}

/// True iff `gcd(f, f') = 1`; a vanishing derivative counts as not squarefree.
pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Domain("zero polynomial has no squarefree test".into()));
    }
    let d = f.derivative();
    if d.is_zero() {
        return Ok(f.deg() == 0);
    }
    Ok(poly_gcd(f, &d).is_one())
}

/// Roots of `f` in F_p with multiplicities, sorted by residue.
///
/// The distinct roots come from `gcd(f, x^p - x)`, split by the
/// Cantor-Zassenhaus trick with a deterministic sequence of shifts.
pub fn roots_in_field(f: &Poly) -> Vec<(Fp, usize)> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let p = f.modulus();
    if f.deg() <= 0 {
        return Vec::new();
    }
    let fm = f.monic();
    let x = Poly::x(p);
    let xp = x.pow_mod(p as u64, &fm);
    let split = poly_gcd(&fm, &(&xp - &x));
    let mut roots = Vec::new();
    split_linear(&split, &mut roots, 0);
    roots.sort();
    roots
        .into_iter()
        .map(|r| {
            let lin = Poly::linear_root(r);
            let mut m = 0;
            let mut g = fm.clone();
            while let Some(q) = g.div_exact(&lin) {
                g = q;
                m += 1;
            }
            (r, m)
        })
        .collect()
}

fn split_linear(g: &Poly, out: &mut Vec<Fp>, mut shift: i64) {
    let p = g.modulus();
    match g.deg() {
        d if d <= 0 => {}
        1 => out.push(-g.coeff(0) / g.coeff(1)),
        _ => {
            let e = ((p - 1) / 2) as u64;
            loop {
                let a = Fp::new(shift, p);
                shift += 1;
                let lin = Poly::new(vec![a, Fp::one(p)], p);
                let h = &lin.pow_mod(e, g) - &Poly::one(p);
                let d = poly_gcd(g, &h);
                if d.deg() > 0 && d.deg() < g.deg() {
                    let rest = g.div_exact(&d).unwrap();
                    split_linear(&d, out, shift);
                    split_linear(&rest, out, shift);
                    return;
                }
                if shift > p as i64 + 2 {
                    // Only reachable for p tiny relative to the degree; fall back to scanning.
                    for v in 0..p {
                        let r = Fp::new(v as i64, p);
                        if g.eval(r).is_zero() {
                            out.push(r);
                        }
                    }
                    return;
                }
            }
        }
    }
}

/// Distinct roots only, ignoring multiplicity.
pub fn distinct_roots(f: &Poly) -> Vec<Fp> {
    roots_in_field(f).into_iter().map(|(r, _)| r).collect()
}

/// True iff `f` is a product of linear factors over F_p.
pub fn splits_completely(f: &Poly) -> bool {
    let total: usize = roots_in_field(f).iter().map(|&(_, m)| m).sum();
    total as i64 == f.deg()
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{}x", a)?,
                _ if a.is_one() => write!(f, "x^{}", i)?,
                _ => write!(f, "{}x^{}", a, i)?,
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(c, self.p)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(c, self.p)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let av = a.value() as u64;
            for (j, b) in rhs.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + av * b.value() as u64) % p;
            }
        }
        Poly::new(acc.into_iter().map(|v| Fp::from_u64(v, self.p)).collect(), self.p)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|&a| -a).collect(), p: self.p }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p7(c: &[i64]) -> Poly {
        Poly::from_i64s(c, 7)
    }

    #[test]
    fn gcd_examples() {
        // x^2 - 1 and x - 1
        assert_eq!(poly_gcd(&p7(&[-1, 0, 1]), &p7(&[-1, 1])), p7(&[-1, 1]));
        let f = p7(&[3, 0, 2]);
        assert_eq!(poly_gcd(&f, &Poly::zero(7)), f.monic());
        // x^5 - x against 5x^4 - 1
        assert!(poly_gcd(&p7(&[0, -1, 0, 0, 0, 1]), &p7(&[-1, 0, 0, 0, 5])).is_one());
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&p7(&[0, -1, 0, 0, 0, 1])).unwrap());
        assert!(!is_squarefree(&p7(&[0, 0, 1, 1])).unwrap());
        assert!(!is_squarefree(&p7(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap());
        assert!(is_squarefree(&Poly::zero(7)).is_err());
    }

    #[test]
    fn root_examples() {
        let r = roots_in_field(&p7(&[-1, 0, 1]));
        assert_eq!(r, vec![(Fp::new(1, 7), 1), (Fp::new(6, 7), 1)]);
        assert!(roots_in_field(&p7(&[1, 0, 1])).is_empty());
        assert_eq!(roots_in_field(&p7(&[4, -4, 1])), vec![(Fp::new(2, 7), 2)]);
        let all = roots_in_field(&p7(&[0, -1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(all.len(), 7);
    }

    #[test]
    fn xgcd_identity() {
        let a = Poly::from_i64s(&[5, 3, 0, 1, 8], 101);
        let b = Poly::from_i64s(&[1, 7, 2], 101);
        let (g, s, t) = poly_xgcd(&a, &b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
