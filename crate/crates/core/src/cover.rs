//! Double covers `C: y^2 = g(x^2) -> X: v^2 = g(u)`, `(x, y) -> (x^2, y)`,
//! for odd-degree `g`. `C` is an even model of genus `deg g - 1`, `X` an odd
//! model of genus `(deg g - 1) / 2`, and the cover is branched only over `u = 0`.

use std::collections::HashMap;

use rand::Rng;

use crate::algebra::{is_squarefree, Fp, Poly};
use crate::curve::{CurveModel, Divisor, Point};
use crate::error::{Error, Result};
use crate::jacobian::{is_equivalent, JacClass, Jacobian};
use crate::riemann_roch::{h0, h1};

pub struct DoubleCover {
    g: Poly,
    pub c: CurveModel,
    pub x: CurveModel,
    jac: Jacobian,
}

impl std::fmt::Debug for DoubleCover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DoubleCover(g = {})", self.g)
    }
}

/// `g(x^2)`.
fn even_lift(g: &Poly) -> Poly {
    let p = g.modulus();
    let mut coeffs = vec![0i64; 2 * g.deg() as usize + 1];
    for i in 0..=g.deg() as usize {
        coeffs[2 * i] = g.coeff(i).value() as i64;
    }
    Poly::from_i64s(&coeffs, p)
}

/// Admissible polynomials: odd degree at least 3, `g` and `g(x^2)`
/// squarefree, `g(0)` and the leading coefficient nonzero squares.
pub fn is_admissible(g: &Poly) -> bool {
    let p = g.modulus();
    g.deg() >= 3
        && g.deg() % 2 == 1
        && is_squarefree(g).unwrap_or(false)
        && is_squarefree(&even_lift(g)).unwrap_or(false)
        && g.eval(Fp::zero(p)).is_square()
        && !g.eval(Fp::zero(p)).is_zero()
        && g.lc().is_square()
}

/// A random admissible polynomial of the given odd degree.
pub fn random_admissible(degree: usize, p: u32, rng: &mut impl Rng) -> Result<Poly> {
    if degree < 3 || degree.is_multiple_of(2) {
        return Err(Error::Domain(format!("degree {degree} must be odd and at least 3")));
    }
    for _ in 0..10_000 {
        let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.gen_range(0..p as i64)).collect();
        coeffs.push(1);
        let g = Poly::from_i64s(&coeffs, p);
        if is_admissible(&g) {
            return Ok(g);
        }
    }
    Err(Error::Domain(format!("no admissible polynomial of degree {degree} found over F_{p}")))
}

impl DoubleCover {
    pub fn new(g: &Poly) -> Result<Self> {
        let p = g.modulus();
        if g.deg() < 3 || g.deg() % 2 == 0 {
            return Err(Error::Domain(format!("g = {g} must have odd degree at least 3")));
        }
        if !is_squarefree(g)? {
            return Err(Error::Singular(format!("g = {g} is not squarefree")));
        }
        if g.eval(Fp::zero(p)).is_zero() {
            return Err(Error::Singular("g(0) = 0, so g(x^2) has the factor x^2".into()));
        }
        let lifted = even_lift(g);
        if !is_squarefree(&lifted)? {
            return Err(Error::Singular(format!("g(x^2) = {lifted} is not squarefree")));
        }
        let x = CurveModel::make_hyperelliptic(g)?;
        let c = CurveModel::make_hyperelliptic(&lifted)?;
        let jac = Jacobian::new(&x)?;
        let cover = DoubleCover { g: g.clone(), c, x, jac };
        if !cover.hurwitz() {
            return Err(Error::Consistency(format!("Hurwitz fails for {cover:?}")));
        }
        Ok(cover)
    }

    pub fn poly(&self) -> &Poly {
        &self.g
    }

    /// Fixed points of `x -> -x` over the algebraic closure: two over
    /// `x = 0`, and the two points at infinity when `deg g` is even.
    pub fn branch_degree(&self) -> i64 {
        2 + if self.g.deg() % 2 == 0 { 2 } else { 0 }
    }

    /// `2 g_C - 2 = 2 (2 g_X - 2) + deg B`.
    pub fn hurwitz(&self) -> bool {
        let gc = self.c.genus() as i64;
        let gx = self.x.genus() as i64;
        2 * gc - 2 == 2 * (2 * gx - 2) + self.branch_degree()
    }

    /// `gamma(P)`.
    pub fn image(&self, pt: &Point) -> Result<Point> {
        match *pt {
            Point::Affine(x, y) if self.c.contains(pt) => Ok(Point::Affine(x * x, y)),
            Point::Infinity(_) if self.c.contains(pt) => Ok(Point::Infinity(0)),
            _ => Err(Error::Domain(format!("{pt} is not a rational point of C"))),
        }
    }

    /// `gamma_* D`.
    pub fn pushforward(&self, d: &Divisor) -> Result<Divisor> {
        let mut out = Divisor::zero();
        for (pt, n) in d.terms() {
            out.add_term(self.image(&pt)?, n);
        }
        Ok(out)
    }

    /// Whether `gamma^* P` is supported on rational points.
    pub fn liftable(&self, pt: &Point) -> bool {
        match pt {
            Point::Affine(u, _) => u.is_square(),
            Point::Infinity(_) => true,
        }
    }

    /// `gamma^* D`.
    pub fn pullback(&self, d: &Divisor) -> Result<Divisor> {
        let mut out = Divisor::zero();
        for (pt, n) in d.terms() {
            match pt {
                Point::Affine(u, v) if u.is_zero() => out.add_term(Point::Affine(u, v), 2 * n),
                Point::Affine(u, v) => {
                    let s = u.sqrt().ok_or_else(|| Error::NonRational(format!("the fibre over {pt} is not rational")))?;
                    out.add_term(Point::Affine(s, v), n);
                    out.add_term(Point::Affine(-s, v), n);
                }
                Point::Infinity(_) => {
                    out.add_term(Point::Infinity(0), n);
                    out.add_term(Point::Infinity(1), n);
                }
            }
        }
        Ok(out)
    }

    /// Branch divisor on `X` and ramification divisor on `C`, both over `u = 0`.
    pub fn branch_and_ramification(&self) -> Result<(Divisor, Divisor)> {
        let p = self.g.modulus();
        let zero = Fp::zero(p);
        let s = self
            .g
            .eval(zero)
            .sqrt()
            .ok_or_else(|| Error::NonRational("g(0) is not a square: the branch points are not rational".into()))?;
        let pts = [Point::Affine(zero, s), Point::Affine(zero, -s)];
        let r = Divisor::from_terms(pts.iter().map(|q| (*q, 1)));
        let b = self.pushforward(&r)?;
        // the two points over 0 are their own images
        if b != r || b.degree() != self.branch_degree() {
            return Err(Error::Consistency(format!("gamma_* R = {b} differs from the branch divisor")));
        }
        Ok((b, r))
    }

    /// Rational points of `X` whose preimages are rational.
    pub fn liftable_points(&self) -> Vec<Point> {
        self.x.enumerate_points().iter().filter(|p| self.liftable(p)).copied().collect()
    }

    /// A degree-1 divisor supported on liftable points in the class
    /// `[m - inf] = target`, of the form `P` or `P + Q - R`.
    fn liftable_in_class(&self, target: &JacClass) -> Result<Option<Divisor>> {
        let pts = self.liftable_points();
        let classes: Vec<JacClass> = pts.iter().map(|p| self.jac.point_class(p)).collect::<Result<_>>()?;
        for (pt, c) in pts.iter().zip(&classes) {
            if c == target {
                return Ok(Some(Divisor::point(*pt)));
            }
        }
        let mut need: HashMap<JacClass, usize> = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            need.entry(self.jac.add(target, c)?).or_insert(i);
        }
        for i in 0..pts.len() {
            for j in i..pts.len() {
                let s = self.jac.add(&classes[i], &classes[j])?;
                if let Some(&r) = need.get(&s) {
                    return Ok(Some(Divisor::from_terms([(pts[i], 1), (pts[j], 1), (pts[r], -1)])));
                }
            }
        }
        Ok(None)
    }

    /// `h0_C(gamma^* m) = h0_X(m) + h0_X(m + E)`.
    pub fn projection_formula(&self, e: &Divisor, m: &Divisor) -> Result<bool> {
        let lhs = h0(&self.c, &self.pullback(m)?)?;
        Ok(lhs == h0(&self.x, m)? + h0(&self.x, &(m + e))?)
    }

    /// The same identity for `h1`.
    pub fn projection_formula_h1(&self, e: &Divisor, m: &Divisor) -> Result<bool> {
        let lhs = h1(&self.c, &self.pullback(m)?)?;
        Ok(lhs == h1(&self.x, m)? + h1(&self.x, &(m + e))?)
    }

    /// Random divisors on `X` supported on liftable points, of degree in
    /// `-1 ..= 2 g_X + 2`.
    pub fn random_liftable(&self, rng: &mut impl Rng) -> Divisor {
        let pts = self.liftable_points();
        let gx = self.x.genus() as i64;
        let deg = rng.gen_range(-1..=2 * gx + 2);
        let neg = rng.gen_range(0..=1i64);
        let mut m = Divisor::zero();
        for _ in 0..deg + neg {
            m.add_term(pts[rng.gen_range(0..pts.len())], 1);
        }
        for _ in 0..neg {
            m.add_term(pts[rng.gen_range(0..pts.len())], -1);
        }
        m
    }

    /// The twist `E` with `gamma_* O_C = O + O(E)`: the half of `-B` that
    /// satisfies the projection formula on a battery of divisors. The battery
    /// holds, for every candidate, a divisor `m ~ -E` (where `h0(m + E) = 1`
    /// singles that candidate out) plus random liftable divisors.
    pub fn pushforward_twist(&self, rng: &mut impl Rng) -> Result<Divisor> {
        let (b, _) = self.branch_and_ramification()?;
        let halves = self.jac.square_roots(&self.jac.class_of(&-&b)?)?;
        if halves.is_empty() {
            return Err(Error::Consistency("-B has no rational half".into()));
        }
        let inf = Divisor::point(Point::Infinity(0));
        let half_deg = -b.degree() / 2;
        let mut candidates = Vec::new();
        for h in &halves {
            let rep = self.jac.rational_representative(&self.x, h)?;
            candidates.push(&rep + &inf.scale(half_deg));
        }
        let mut battery = Vec::new();
        for e in &candidates {
            if let Some(m) = self.liftable_in_class(&self.jac.class_of(&-e)?)? {
                battery.push(m);
            }
        }
        let gx = self.x.genus() as i64;
        let mut degrees_seen = std::collections::BTreeSet::new();
        while battery.len() < 8 || degrees_seen.len() < (2 * gx + 3) as usize {
            let m = self.random_liftable(rng);
            degrees_seen.insert(m.degree());
            battery.push(m);
            if battery.len() > 200 {
                break;
            }
        }
        let mut passing = Vec::new();
        for e in candidates {
            let mut ok = true;
            for m in &battery {
                if !self.projection_formula(&e, m)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                passing.push(e);
            }
        }
        match passing.len() {
            1 => Ok(passing.pop().unwrap()),
            0 => Err(Error::Consistency("no half of -B satisfies the projection formula".into())),
            n => Err(Error::Consistency(format!("{n} halves of -B pass the whole battery"))),
        }
    }

    /// `K_C ~ gamma^* K_X + R`.
    pub fn canonical_formula(&self) -> Result<bool> {
        let (_, r) = self.branch_and_ramification()?;
        let kc = self.c.canonical_divisor()?;
        let pulled = &self.pullback(&self.x.canonical_divisor()?)? + &r;
        is_equivalent(&self.c, &kc, &pulled)
    }

    /// The genus of `X` is `(pi - 1)/2`, `pi/2` or `(pi + 1)/2` for `pi = g_C`,
    /// and `X` is elliptic or hyperelliptic.
    pub fn involution_genus_check(&self) -> bool {
        let pi = self.c.genus() as i64;
        let gx = 2 * self.x.genus() as i64;
        (pi - 1..=pi + 1).contains(&gx) && (self.x.is_elliptic() || self.x.is_hyperelliptic())
    }

    /// `gamma^*(g12 of X) ~ 2 (g12 of C)`, on the fibre at infinity and on
    /// every rational fibre over a nonzero square.
    pub fn h1_diagram_check(&self) -> Result<bool> {
        let pi = self.c.g12_divisor()?;
        let twice = pi.scale(2);
        let mut fibres = vec![self.x.infinity_fiber()?.ok_or_else(|| Error::Consistency("fibre at infinity".into()))?];
        let p = self.g.modulus();
        for u in 1..p {
            let u = Fp::new(u as i64, p);
            if u.is_square() {
                if let Some(f) = self.x.x_fiber(u)? {
                    fibres.push(f);
                }
            }
        }
        for f in fibres {
            let pulled = self.pullback(&f)?;
            if pulled.degree() != twice.degree() || !is_equivalent(&self.c, &pulled, &twice)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For `b = K_X - E`: `g_C = deg b + 1` and both sides have speciality 1.
    pub fn verify_segre(&self, e: &Divisor) -> Result<bool> {
        let b = &self.x.canonical_divisor()? - e;
        let scroll_side = h1(&self.x, &b)? + h1(&self.x, &(&b + e))?;
        let curve_side = h1(&self.c, &self.c.canonical_divisor()?)?;
        Ok(self.c.genus() as i64 == b.degree() + 1 && scroll_side == 1 && curve_side == 1)
    }
}

/// Curve-side bookkeeping for elementary transformations of the canonical
/// scroll of a cover: the hyperplane class restricted to `C`.
#[derive(Clone, Debug)]
pub struct ProjectionState<'a> {
    cover: &'a DoubleCover,
    pub a: Divisor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionReport {
    pub h0: usize,
    pub speciality: usize,
}

impl<'a> ProjectionState<'a> {
    /// Starts from `a = K_C`.
    pub fn new(cover: &'a DoubleCover) -> Result<Self> {
        Ok(ProjectionState { cover, a: cover.c.canonical_divisor()? })
    }

    /// `a + gamma^* m`.
    pub fn twist(&self, m: &Divisor) -> Result<Self> {
        Ok(ProjectionState { cover: self.cover, a: &self.a + &self.cover.pullback(m)? })
    }

    /// Projection from a point of `C`: `a - x`.
    pub fn project(&self, x: &Point) -> Self {
        ProjectionState { cover: self.cover, a: &self.a - &Divisor::point(*x) }
    }

    /// The inverse transformation: `a + x`.
    pub fn unproject(&self, x: &Point) -> Self {
        ProjectionState { cover: self.cover, a: &self.a + &Divisor::point(*x) }
    }

    pub fn report(&self) -> Result<ProjectionReport> {
        Ok(ProjectionReport { h0: h0(&self.cover.c, &self.a)?, speciality: h1(&self.cover.c, &self.a)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_doubles_exponents() {
        let g = Poly::from_i64s(&[1, 2, 0, 1], 13);
        let l = even_lift(&g);
        assert_eq!(l.deg(), 6);
        assert_eq!(l.coeff(2).value(), 2);
        assert_eq!(l.coeff(3).value(), 0);
    }
}
