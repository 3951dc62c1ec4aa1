use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element of the prime field F_p with the modulus carried alongside.
///
/// The modulus is a runtime value, so every element knows which field it
/// lives in; mixing moduli is a logic error caught by debug assertions.
#[derive(Clone, Copy)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Self {
        debug_assert!(p >= 3);
        let m = p as i64;
        Fp { v: value.rem_euclid(m) as u32, p }
    }

    pub fn zero(p: u32) -> Self {
        Fp { v: 0, p }
    }

    pub fn one(p: u32) -> Self {
        Fp { v: 1, p }
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn is_one(self) -> bool {
        self.v == 1
    }

    /// Representative in (-p/2, p/2], handy for printing.
    pub fn signed(self) -> i64 {
        let v = self.v as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let (mut a, mut b) = (self.v as i64, self.p as i64);
        let (mut x0, mut x1) = (1i64, 0i64);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Some(Fp::new(x0, self.p))
    }

    /// Legendre symbol: 1 for nonzero squares, -1 for non-squares, 0 for zero.
    pub fn legendre(self) -> i32 {
        if self.v == 0 {
            return 0;
        }
        let r = self.pow(((self.p - 1) / 2) as u64);
        if r.is_one() {
            1
        } else {
            -1
        }
    }

    pub fn is_square(self) -> bool {
        self.legendre() >= 0
    }

    /// Square root by Tonelli-Shanks, returning the smaller residue of the pair.
    pub fn sqrt(self) -> Option<Self> {
        let p = self.p;
        if self.v == 0 {
            return Some(self);
        }
        if self.legendre() != 1 {
            return None;
        }
        let mut q = (p - 1) as u64;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = Fp::new(2, p);
        while z.legendre() != -1 {
            z = z + Fp::one(p);
        }
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow((q + 1) / 2);
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t;
            while !t2.is_one() {
                t2 *= t2;
                i += 1;
            }
            let b = c.pow(1u64 << (m - i - 1));
            m = i;
            c = b * b;
            t *= c;
            r *= b;
        }
        let other = -r;
        Some(if other.v < r.v { other } else { r })
    }

    pub fn from_u64(value: u64, p: u32) -> Self {
        Fp { v: (value % p as u64) as u32, p }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        debug_assert_eq!(self.p, other.p, "mixed moduli");
        self.v == other.v
    }
}

impl Eq for Fp {}

impl Hash for Fp {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl PartialOrd for Fp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.v.cmp(&other.v)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p, "mixed moduli");
        let s = self.v as u64 + rhs.v as u64;
        let p = self.p as u64;
        Fp { v: if s >= p { (s - p) as u32 } else { s as u32 }, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p, "mixed moduli");
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.v + (self.p - rhs.v) };
        Fp { v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p, "mixed moduli");
        Fp { v: ((self.v as u64 * rhs.v as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.v == 0 {
            self
        } else {
            Fp { v: self.p - self.v, p: self.p }
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_sqrt() {
        let p = 10007;
        for v in 1..200 {
            let a = Fp::new(v, p);
            assert!((a * a.inv().unwrap()).is_one());
            let sq = a * a;
            let r = sq.sqrt().unwrap();
            assert_eq!(r * r, sq);
        }
        assert_eq!(Fp::new(-1, 7).legendre(), -1);
        assert!(Fp::new(-1, 13).is_square());
    }

    #[test]
    fn primality() {
        assert!(is_prime(10007));
        assert!(!is_prime(10001));
        assert!(is_prime(101));
    }
}
