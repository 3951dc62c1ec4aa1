use super::field::Fp;
use super::poly::Poly;
use super::series::Series;

/// Bivariate polynomial `sum_j a_j(u) v^j`, stored by powers of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    a: Vec<Poly>,
    p: u32,
}

impl BiPoly {
    pub fn new(mut a: Vec<Poly>, p: u32) -> Self {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        BiPoly { a, p }
    }

    pub fn zero(p: u32) -> Self {
        BiPoly { a: Vec::new(), p }
    }

    /// From `(i, j, c)` triples meaning `c u^i v^j`.
    pub fn from_terms(terms: &[(usize, usize, i64)], p: u32) -> Self {
        let mut out = BiPoly::zero(p);
        for &(i, j, c) in terms {
            out = out.add(&BiPoly::monomial(Fp::new(c, p), i, j));
        }
        out
    }

    pub fn monomial(c: Fp, i: usize, j: usize) -> Self {
        let p = c.modulus();
        let mut a = vec![Poly::zero(p); j + 1];
        a[j] = Poly::monomial(c, i);
        BiPoly::new(a, p)
    }

    /// `v^2 - f(u)`
    pub fn hyperelliptic(f: &Poly) -> Self {
        let p = f.modulus();
        BiPoly::new(vec![-f, Poly::zero(p), Poly::one(p)], p)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.a
    }

    pub fn coeff(&self, j: usize) -> Poly {
        self.a.get(j).cloned().unwrap_or(Poly::zero(self.p))
    }

    pub fn term(&self, i: usize, j: usize) -> Fp {
        self.a.get(j).map(|c| c.coeff(i)).unwrap_or(Fp::zero(self.p))
    }

    pub fn deg_v(&self) -> i64 {
        self.a.len() as i64 - 1
    }

    pub fn total_degree(&self) -> i64 {
        self.a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| c.deg() + j as i64)
            .max()
            .unwrap_or(-1)
    }

    /// All nonzero terms as `(i, j, c)`.
    pub fn terms(&self) -> Vec<(usize, usize, Fp)> {
        let mut out = Vec::new();
        for (j, c) in self.a.iter().enumerate() {
            for (i, &x) in c.coeffs().iter().enumerate() {
                if !x.is_zero() {
                    out.push((i, j, x));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.a.len().max(other.a.len());
        BiPoly::new((0..n).map(|j| &self.coeff(j) + &other.coeff(j)).collect(), self.p)
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let n = self.a.len().max(other.a.len());
        BiPoly::new((0..n).map(|j| &self.coeff(j) - &other.coeff(j)).collect(), self.p)
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(self.p);
        }
        let mut out = vec![Poly::zero(self.p); self.a.len() + other.a.len() - 1];
        for (i, x) in self.a.iter().enumerate() {
            for (j, y) in other.a.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        BiPoly::new(out, self.p)
    }

    pub fn scale(&self, c: Fp) -> BiPoly {
        BiPoly::new(self.a.iter().map(|x| x.scale(c)).collect(), self.p)
    }

    pub fn eval(&self, u: Fp, v: Fp) -> Fp {
        let mut acc = Fp::zero(self.p);
        for c in self.a.iter().rev() {
            acc = acc * v + c.eval(u);
        }
        acc
    }

    /// Specialize `u` to a value, leaving a polynomial in `v`.
    pub fn at_u(&self, u: Fp) -> Poly {
        Poly::new(self.a.iter().map(|c| c.eval(u)).collect(), self.p)
    }

    pub fn partial_u(&self) -> BiPoly {
        BiPoly::new(self.a.iter().map(|c| c.derivative()).collect(), self.p)
    }

    pub fn partial_v(&self) -> BiPoly {
        let a = self
            .a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(Fp::new(j as i64, self.p)))
            .collect();
        BiPoly::new(a, self.p)
    }

    /// Exchange the roles of `u` and `v`.
    pub fn swap(&self) -> BiPoly {
        let mut out = BiPoly::zero(self.p);
        for (i, j, c) in self.terms() {
            out = out.add(&BiPoly::monomial(c, j, i));
        }
        out
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> BiPoly {
        let mut out = BiPoly::zero(self.p);
        for (i, j, c) in self.terms() {
            if i + j == k {
                out = out.add(&BiPoly::monomial(c, i, j));
            }
        }
        out
    }

    /// Dehomogenize at the line at infinity: with `Q(X, Y, Z)` the
    /// homogenization of degree `d`, return `Q(1, s, w)` as a polynomial in
    /// `(s, w)` with `s` in the `u` slot and `w` in the `v` slot.
    pub fn chart_at_infinity(&self, d: usize) -> BiPoly {
        let mut out = BiPoly::zero(self.p);
        for (i, j, c) in self.terms() {
            out = out.add(&BiPoly::monomial(c, j, d - i - j));
        }
        out
    }

    pub fn eval_series(&self, u: &Series, v: &Series) -> Series {
        let n = u.prec().min(v.prec());
        let mut acc = Series::zero(n, self.p);
        for c in self.a.iter().rev() {
            let mut cu = Series::zero(n, self.p);
            for &x in c.coeffs().iter().rev() {
                cu = &(&cu * u) + &Series::constant(x, n);
            }
            acc = &(&acc * v) + &cu;
        }
        acc
    }
}

/// Determinant of a square matrix over F_p[x] by fraction-free (Bareiss)
/// elimination.
pub fn poly_det(mut m: Vec<Vec<Poly>>, p: u32) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(p);
    }
    let mut sign = Fp::one(p);
    let mut prev = Poly::one(p);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero(p);
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(sign)
}

/// Resultant with respect to `v` of two bivariate polynomials, a polynomial
/// in `u`, via the Sylvester matrix.
pub fn resultant_v(a: &BiPoly, b: &BiPoly) -> Poly {
    let p = a.modulus();
    let (m, n) = (a.deg_v(), b.deg_v());
    if m < 0 || n < 0 {
        return Poly::zero(p);
    }
    let (m, n) = (m as usize, n as usize);
    if m + n == 0 {
        return Poly::one(p);
    }
    let size = m + n;
    let mut s = vec![vec![Poly::zero(p); size]; size];
    for r in 0..n {
        for j in 0..=m {
            s[r][r + j] = a.coeff(m - j);
        }
    }
    for r in 0..m {
        for j in 0..=n {
            s[n + r][r + j] = b.coeff(n - j);
        }
    }
    poly_det(s, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_detects_common_root() {
        let p = 101;
        // v^2 - u and v - 3 share a root exactly when u = 9.
        let a = BiPoly::from_terms(&[(0, 2, 1), (1, 0, -1)], p);
        let b = BiPoly::from_terms(&[(0, 1, 1), (0, 0, -3)], p);
        let r = resultant_v(&a, &b);
        assert_eq!(r.deg(), 1);
        assert!(r.eval(Fp::new(9, p)).is_zero());
    }

    #[test]
    fn determinant_matches_expansion() {
        let p = 13;
        let x = Poly::x(p);
        let one = Poly::one(p);
        let m = vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]];
        let d = poly_det(m, p);
        assert_eq!(d, Poly::from_i64s(&[-1, 0, 1], p));
    }
}
