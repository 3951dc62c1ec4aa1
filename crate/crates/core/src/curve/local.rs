use crate::algebra::{BiPoly, Fp};

/// The finite ring `(F_p[t]/t^k)[v] / G(c + t, v)` attached to the fibre of a
/// chart over `u = c`, where the chart polynomial `G(u, v)` is monic in `v`.
///
/// Elements are flat coefficient vectors; index `j * k + i` holds the
/// coefficient of `t^i v^j`.
#[derive(Clone, Debug)]
pub struct FiberRing {
    p: u32,
    k: usize,
    m: usize,
    red: Vec<Vec<Fp>>,
}

fn trunc_mul(a: &[Fp], b: &[Fp], k: usize, p: u32) -> Vec<Fp> {
    let mut out = vec![Fp::zero(p); k];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k - i) {
            out[i + j] += *x * *y;
        }
    }
    out
}

impl FiberRing {
    pub fn new(g: &BiPoly, c: Fp, k: usize) -> Self {
        let p = g.modulus();
        let m = g.deg_v() as usize;
        assert!(g.coeff(m).is_one(), "chart polynomial must be monic in the fibre variable");
        let red = (0..m)
            .map(|j| {
                let mut v = g.coeff(j).translate(c).coeffs().to_vec();
                v.resize(k, Fp::zero(p));
                v.truncate(k);
                v
            })
            .collect();
        FiberRing { p, k, m, red }
    }

    pub fn dim(&self) -> usize {
        self.k * self.m
    }

    pub fn zero(&self) -> Vec<Fp> {
        vec![Fp::zero(self.p); self.dim()]
    }

    pub fn one(&self) -> Vec<Fp> {
        let mut e = self.zero();
        if self.k > 0 {
            e[0] = Fp::one(self.p);
        }
        e
    }

    /// `t^i v^j`, reduced.
    pub fn monomial(&self, i: usize, j: usize) -> Vec<Fp> {
        let mut e = self.one();
        for _ in 0..j {
            e = self.mul(&e, &self.v_minus(Fp::zero(self.p)));
        }
        self.mul_base(&e, &self.t_power(i))
    }

    /// `v - a`.
    pub fn v_minus(&self, a: Fp) -> Vec<Fp> {
        let mut e = self.zero();
        if self.k == 0 {
            return e;
        }
        e[0] = -a;
        if self.m > 1 {
            e[self.k] = Fp::one(self.p);
        } else {
            // v is reduced by the linear relation v = -red[0]
            for i in 0..self.k {
                e[i] -= self.red[0][i];
            }
        }
        e
    }

    /// The base element `t^i` as a coefficient vector in `t`.
    pub fn t_power(&self, i: usize) -> Vec<Fp> {
        let mut v = vec![Fp::zero(self.p); self.k];
        if i < self.k {
            v[i] = Fp::one(self.p);
        }
        v
    }

    /// Multiply an element by a base element given as coefficients in `t`.
    pub fn mul_base(&self, a: &[Fp], base: &[Fp]) -> Vec<Fp> {
        let k = self.k;
        let mut out = self.zero();
        for j in 0..self.m {
            let prod = trunc_mul(&a[j * k..(j + 1) * k], base, k, self.p);
            out[j * k..(j + 1) * k].copy_from_slice(&prod);
        }
        out
    }

    pub fn mul(&self, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
        let (k, m, p) = (self.k, self.m, self.p);
        if k == 0 {
            return Vec::new();
        }
        let mut prod = vec![vec![Fp::zero(p); k]; 2 * m - 1];
        for j1 in 0..m {
            let x = &a[j1 * k..(j1 + 1) * k];
            if x.iter().all(|c| c.is_zero()) {
                continue;
            }
            for j2 in 0..m {
                let y = &b[j2 * k..(j2 + 1) * k];
                let t = trunc_mul(x, y, k, p);
                for i in 0..k {
                    prod[j1 + j2][i] += t[i];
                }
            }
        }
        for top in (m..2 * m - 1).rev() {
            let c = std::mem::replace(&mut prod[top], vec![Fp::zero(p); k]);
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            for j in 0..m {
                let t = trunc_mul(&c, &self.red[j], k, p);
                for i in 0..k {
                    prod[top - m + j][i] -= t[i];
                }
            }
        }
        prod.into_iter().take(m).flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    #[test]
    fn relation_holds_in_fibre_ring() {
        let p = 11;
        // v^2 = u^3 + 1 over u = 2 + t, so v^2 = 9 + 12t + 6t^2 + t^3
        let g = BiPoly::hyperelliptic(&Poly::from_i64s(&[1, 0, 0, 1], p));
        let r = FiberRing::new(&g, Fp::new(2, p), 3);
        let v = r.v_minus(Fp::zero(p));
        let v2 = r.mul(&v, &v);
        let expect: Vec<Fp> = [9, 12, 6, 0, 0, 0].iter().map(|&a| Fp::new(a, p)).collect();
        assert_eq!(v2, expect);
    }
}
