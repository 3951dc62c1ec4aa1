use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::divisor::{Divisor, Point};
use crate::algebra::{
    distinct_roots, is_squarefree, poly_gcd, resultant_v, roots_in_field, series_expand, BiPoly, Fp,
    LocalExpansion, Poly,
};
use crate::error::{Error, Result};
use crate::riemann_roch;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveKind {
    /// `y^2 = f(x)`
    Hyperelliptic { f: Poly },
    /// `q(x, y) = 0` of total degree `degree`, scaled monic in `y`. When the
    /// input had no `y^degree` term it was first replaced by
    /// `q(x + shear*y, y)`, and the model lives in those coordinates.
    Plane { q: BiPoly, degree: usize, shear: Fp },
}

/// Which affine patch a place lives on. The affine chart has coordinates
/// `(x, y)`; the chart at infinity has coordinates `(w, s)` with `x = 1/w`
/// and `y = s / w^kappa`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Affine,
    Infinity,
}

/// A rational place together with the data needed to work locally at it.
/// `base` and `fiber` are its chart coordinates and `e` is the valuation of
/// `base coordinate - base` (the ramification index of the x-map there).
#[derive(Clone, Copy, Debug)]
pub struct Place {
    pub point: Point,
    pub chart: Chart,
    pub base: Fp,
    pub fiber: Fp,
    pub e: usize,
}

/// A smooth projective curve over F_p given by a plane affine equation
/// monic in `y` together with a chart covering the places over `x = infinity`.
pub struct CurveModel {
    kind: CurveKind,
    p: u32,
    genus: usize,
    aff: BiPoly,
    inf: BiPoly,
    kappa: usize,
    inf_values: Vec<Fp>,
    points: OnceLock<Vec<Point>>,
    canonical: OnceLock<Result<Divisor>>,
    h0_cache: Mutex<HashMap<Divisor, usize>>,
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CurveKind::Hyperelliptic { f: poly } => write!(f, "y^2 = {poly} over F_{} (g={})", self.p, self.genus),
            CurveKind::Plane { q, degree, .. } => {
                write!(f, "plane curve of degree {degree} over F_{} (g={}): {:?}", self.p, self.genus, q.terms())
            }
        }
    }
}

fn binomials(n: usize, p: u32) -> Vec<Fp> {
    let mut row = vec![Fp::one(p)];
    for _ in 0..n {
        let mut next = vec![Fp::one(p); row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// `q(x + lambda*y, y)`
fn shear(q: &BiPoly, lambda: Fp) -> BiPoly {
    let p = q.modulus();
    let mut out = BiPoly::zero(p);
    for (i, j, c) in q.terms() {
        let binom = binomials(i, p);
        for k in 0..=i {
            let coef = c * binom[k] * lambda.pow(k as u64);
            out = out.add(&BiPoly::monomial(coef, i - k, j + k));
        }
    }
    out
}

/// Binary form `sum c_ij X^i Y^j` (all `i + j = n`) dehomogenized at `X = 1`.
fn form_in_s(h: &BiPoly) -> Poly {
    let p = h.modulus();
    let mut out = Poly::zero(p);
    for (_, j, c) in h.terms() {
        out = &out + &Poly::monomial(c, j);
    }
    out
}

impl CurveModel {
    fn build(kind: CurveKind, p: u32, genus: usize, aff: BiPoly, inf: BiPoly, kappa: usize, inf_values: Vec<Fp>) -> Self {
        CurveModel {
            kind,
            p,
            genus,
            aff,
            inf,
            kappa,
            inf_values,
            points: OnceLock::new(),
            canonical: OnceLock::new(),
            h0_cache: Mutex::new(HashMap::new()),
        }
    }

    /// The curve `y^2 = f(x)`.
    pub fn make_hyperelliptic(f: &Poly) -> Result<Self> {
        let p = f.modulus();
        if p < 3 {
            return Err(Error::Domain("characteristic 2 is not supported".into()));
        }
        let n = f.deg();
        if n < 3 {
            return Err(Error::Domain(format!("deg f = {n} < 3")));
        }
        if !is_squarefree(f)? {
            return Err(Error::Domain(format!("f = {f} is not squarefree")));
        }
        let genus = ((n - 1) / 2) as usize;
        let kappa = genus + 1;
        let rev = f.reverse(2 * genus + 2);
        let inf = BiPoly::hyperelliptic(&rev);
        let inf_values = if n % 2 == 1 {
            vec![Fp::zero(p)]
        } else {
            match f.lc().sqrt() {
                Some(r) => {
                    let (a, b) = if r.value() <= (-r).value() { (r, -r) } else { (-r, r) };
                    vec![a, b]
                }
                None => Vec::new(),
            }
        };
        let aff = BiPoly::hyperelliptic(f);
        Ok(CurveModel::build(CurveKind::Hyperelliptic { f: f.clone() }, p, genus, aff, inf, kappa, inf_values))
    }

    /// The projective closure of `q(x, y) = 0`. If `(0:1:0)` lies on the
    /// curve, the coordinates are sheared by `x -> x + lambda*y` first; see
    /// [`CurveModel::plane_point`].
    pub fn make_plane(q: &BiPoly) -> Result<Self> {
        let p = q.modulus();
        if p < 3 {
            return Err(Error::Domain("characteristic 2 is not supported".into()));
        }
        let d = q.total_degree();
        if d < 3 {
            return Err(Error::Domain(format!("plane curve of degree {d} < 3")));
        }
        let d = d as usize;
        let Some(lambda) = (0..p).map(|l| Fp::new(l as i64, p)).find(|&l| !shear(q, l).term(0, d).is_zero()) else {
            return Err(Error::Unsupported("every point at infinity is rational; no shear moves them off (0:1:0)".into()));
        };
        let q = shear(q, lambda);
        let q = q.scale(q.term(0, d).inv().unwrap());
        check_plane_smooth(&q, d)?;
        let inf = q.chart_at_infinity(d).swap();
        let top = form_in_s(&q.homogeneous_part(d));
        let inf_values = distinct_roots(&top);
        let genus = (d - 1) * (d - 2) / 2;
        Ok(CurveModel::build(CurveKind::Plane { q: q.clone(), degree: d, shear: lambda }, p, genus, q, inf, 1, inf_values))
    }

    /// The model point for a point `(x, y)` given in the coordinates of the
    /// polynomial passed to `make_plane`.
    pub fn plane_point(&self, x: Fp, y: Fp) -> Point {
        match &self.kind {
            CurveKind::Plane { shear, .. } => Point::Affine(x - *shear * y, y),
            CurveKind::Hyperelliptic { .. } => Point::Affine(x, y),
        }
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Affine equation, monic in `y`, as a polynomial in `(x, y)`.
    pub fn affine_equation(&self) -> &BiPoly {
        &self.aff
    }

    /// Equation of the chart at infinity as a polynomial in `(w, s)`.
    pub fn infinity_equation(&self) -> &BiPoly {
        &self.inf
    }

    pub fn chart_equation(&self, chart: Chart) -> &BiPoly {
        match chart {
            Chart::Affine => &self.aff,
            Chart::Infinity => &self.inf,
        }
    }

    /// Weight of `y` at infinity: `y = s / w^kappa`.
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// Degree of the x-map, i.e. the degree of the equation in `y`.
    pub fn fiber_degree(&self) -> usize {
        self.aff.deg_v() as usize
    }

    pub fn infinity_values(&self) -> &[Fp] {
        &self.inf_values
    }

    pub fn hyperelliptic_poly(&self) -> Option<&Poly> {
        match &self.kind {
            CurveKind::Hyperelliptic { f } => Some(f),
            CurveKind::Plane { .. } => None,
        }
    }

    /// Odd-degree hyperelliptic model with its single point at infinity.
    pub fn is_odd_model(&self) -> bool {
        self.hyperelliptic_poly().is_some_and(|f| f.deg() % 2 == 1)
    }

    /// Hyperelliptic in the geometric sense: a double-cover model of genus at least 2.
    pub fn is_hyperelliptic(&self) -> bool {
        self.hyperelliptic_poly().is_some() && self.genus >= 2
    }

    pub fn is_elliptic(&self) -> bool {
        self.genus == 1
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match pt {
            Point::Affine(x, y) => x.modulus() == self.p && self.aff.eval(*x, *y).is_zero(),
            Point::Infinity(i) => *i < self.inf_values.len(),
        }
    }

    pub fn place(&self, pt: &Point) -> Result<Place> {
        if !self.contains(pt) {
            return Err(Error::Domain(format!("{pt} is not a rational point of the curve")));
        }
        let (chart, base, fiber) = match *pt {
            Point::Affine(x, y) => (Chart::Affine, x, y),
            Point::Infinity(i) => (Chart::Infinity, Fp::zero(self.p), self.inf_values[i]),
        };
        let g = self.chart_equation(chart);
        let e = if !g.partial_v().eval(base, fiber).is_zero() {
            1
        } else {
            let prec = self.fiber_degree() + 2;
            let ex = series_expand(g, (base, fiber), prec)?;
            let shifted = &ex.u - &crate::algebra::Series::constant(base, prec);
            shifted.valuation().ok_or_else(|| Error::Consistency(format!("ramification at {pt} exceeds the fibre degree")))?
        };
        Ok(Place { point: *pt, chart, base, fiber, e })
    }

    pub fn expansion(&self, place: &Place, prec: usize) -> Result<LocalExpansion> {
        series_expand(self.chart_equation(place.chart), (place.base, place.fiber), prec)
    }

    /// Rational points over `x = c`.
    pub fn points_over(&self, c: Fp) -> Vec<Point> {
        let mut ys = distinct_roots(&self.aff.at_u(c));
        ys.sort();
        ys.into_iter().map(|y| Point::Affine(c, y)).collect()
    }

    /// All rational points: affine ones sorted by coordinates, then infinity.
    pub fn enumerate_points(&self) -> &[Point] {
        self.points.get_or_init(|| {
            let mut pts = Vec::new();
            for x in 0..self.p {
                pts.extend(self.points_over(Fp::new(x as i64, self.p)));
            }
            pts.extend((0..self.inf_values.len()).map(Point::Infinity));
            pts
        })
    }

    /// Uniform sum of `degree` rational points (with repetition). With
    /// `signed`, a few points are also subtracted while keeping the degree.
    pub fn random_divisor_with(&self, degree: i64, signed: bool, rng: &mut impl Rng) -> Divisor {
        let pts = self.enumerate_points();
        let mut d = Divisor::zero();
        let neg = if signed { rng.gen_range(0..=2).max(-degree) } else { 0 };
        let pos = degree + neg;
        for _ in 0..pos.max(0) {
            d.add_term(*pts.choose(rng).unwrap(), 1);
        }
        for _ in 0..neg {
            d.add_term(*pts.choose(rng).unwrap(), -1);
        }
        d
    }

    pub fn random_divisor(&self, degree: i64, seed: u64, signed: bool) -> Divisor {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_divisor_with(degree, signed, &mut rng)
    }

    /// Sum of `degree` distinct rational points, or `None` if there are too few.
    pub fn random_reduced_divisor(&self, degree: usize, rng: &mut impl Rng) -> Option<Divisor> {
        let pts = self.enumerate_points();
        if pts.len() < degree {
            return None;
        }
        Some(Divisor::from_terms(pts.choose_multiple(rng, degree).map(|p| (*p, 1))))
    }

    /// The full fibre of the x-map over a rational `c`, if it is rational.
    pub fn x_fiber(&self, c: Fp) -> Result<Option<Divisor>> {
        let mut d = Divisor::zero();
        for pt in self.points_over(c) {
            d.add_term(pt, self.place(&pt)?.e as i64);
        }
        Ok((d.degree() == self.fiber_degree() as i64).then_some(d))
    }

    /// The fibre of the x-map over infinity, if it is rational.
    pub fn infinity_fiber(&self) -> Result<Option<Divisor>> {
        let mut d = Divisor::zero();
        for i in 0..self.inf_values.len() {
            let pt = Point::Infinity(i);
            d.add_term(pt, self.place(&pt)?.e as i64);
        }
        Ok((d.degree() == self.fiber_degree() as i64).then_some(d))
    }

    fn any_rational_fiber(&self) -> Result<Divisor> {
        if let Some(d) = self.infinity_fiber()? {
            return Ok(d);
        }
        for c in 0..self.p {
            if let Some(d) = self.x_fiber(Fp::new(c as i64, self.p))? {
                return Ok(d);
            }
        }
        Err(Error::NonRational("no fibre of the x-map is fully rational; use a larger p".into()))
    }

    /// Ramification points of the hyperelliptic x-map that are rational.
    pub fn weierstrass_points(&self) -> Vec<Point> {
        let Some(f) = self.hyperelliptic_poly() else {
            return Vec::new();
        };
        let mut out: Vec<Point> = distinct_roots(f).into_iter().map(|r| Point::Affine(r, Fp::zero(self.p))).collect();
        out.sort();
        if self.is_odd_model() {
            out.push(Point::Infinity(0));
        }
        out
    }

    /// A degree-2 divisor in the hyperelliptic pencil: the fibre over infinity
    /// when rational, otherwise the first rational affine fibre. For plane
    /// cubics any degree-2 divisor moves in a pencil; twice the first
    /// rational point is used.
    pub fn g12_divisor(&self) -> Result<Divisor> {
        match &self.kind {
            CurveKind::Hyperelliptic { .. } => {
                let d = self.any_rational_fiber()?;
                if self.genus >= 2 {
                    let h = riemann_roch::h0_unchecked(self, &d)?;
                    if h != 2 {
                        return Err(Error::Consistency(format!("h0(g12) = {h}, expected 2")));
                    }
                }
                Ok(d)
            }
            CurveKind::Plane { degree: 3, .. } => {
                let pt = *self
                    .enumerate_points()
                    .first()
                    .ok_or_else(|| Error::NonRational("the curve has no rational point".into()))?;
                Ok(Divisor::from_terms([(pt, 2)]))
            }
            CurveKind::Plane { .. } => Err(Error::Unsupported("a smooth plane curve of degree >= 4 has no g12".into())),
        }
    }

    /// A rational divisor in the canonical class, cached.
    pub fn canonical_divisor(&self) -> Result<Divisor> {
        self.canonical.get_or_init(|| self.compute_canonical()).clone()
    }

    fn compute_canonical(&self) -> Result<Divisor> {
        let g = self.genus as i64;
        let k = match &self.kind {
            _ if g == 1 => Divisor::zero(),
            CurveKind::Hyperelliptic { .. } => self.any_rational_fiber()?.scale(g - 1),
            CurveKind::Plane { degree, .. } => self.line_section()?.scale(*degree as i64 - 3),
        };
        let h = riemann_roch::h0_unchecked(self, &k)?;
        if k.degree() != 2 * g - 2 || h != self.genus {
            return Err(Error::Consistency(format!("canonical divisor {k} has degree {} and h0 {h}", k.degree())));
        }
        Ok(k)
    }

    /// A line meeting the curve in `d` distinct rational affine points.
    pub fn line_section(&self) -> Result<Divisor> {
        let CurveKind::Plane { degree, .. } = &self.kind else {
            return Err(Error::Unsupported("line sections are defined for plane models".into()));
        };
        let d = *degree;
        let p = self.p;
        for c in 0..p {
            let c = Fp::new(c as i64, p);
            let pts = self.points_over(c);
            if pts.len() == d {
                return Ok(Divisor::from_terms(pts.into_iter().map(|pt| (pt, 1))));
            }
        }
        for alpha in 0..p {
            for beta in 0..p {
                let (a, b) = (Fp::new(alpha as i64, p), Fp::new(beta as i64, p));
                // q(x, a x + b) as a polynomial in x
                let line = Poly::new(vec![b, a], p);
                let mut h = Poly::zero(p);
                for coef in self.aff.coeffs().iter().rev() {
                    h = &(&h * &line) + coef;
                }
                if h.deg() != d as i64 {
                    continue;
                }
                let roots = roots_in_field(&h);
                if roots.len() == d && roots.iter().all(|r| r.1 == 1) {
                    let pts = roots.into_iter().map(|(x, _)| (Point::Affine(x, a * x + b), 1));
                    return Ok(Divisor::from_terms(pts));
                }
            }
        }
        Err(Error::NonRational(format!(
            "no line meets the curve in {d} distinct rational points over F_{p}; use a larger p"
        )))
    }

    pub(crate) fn cached_h0(&self, d: &Divisor) -> Option<usize> {
        self.h0_cache.lock().unwrap().get(d).copied()
    }

    pub(crate) fn store_h0(&self, d: &Divisor, h: usize) {
        let mut cache = self.h0_cache.lock().unwrap();
        if cache.len() > 200_000 {
            cache.clear();
        }
        cache.insert(d.clone(), h);
    }
}

/// Smoothness of the projective closure of a plane curve monic in `y`.
fn check_plane_smooth(q: &BiPoly, d: usize) -> Result<()> {
    let p = q.modulus();
    // Singular points at infinity are common roots of q_d, q_d' and q_{d-1}.
    let top = form_in_s(&q.homogeneous_part(d));
    let sub = form_in_s(&q.homogeneous_part(d - 1));
    let g = poly_gcd(&poly_gcd(&top, &top.derivative()), &sub);
    if g.deg() > 0 {
        return Err(Error::Singular(format!("singular point at infinity with s a root of {g}")));
    }
    // Affine part: any singular point makes Res_y(q, q_y) and Res_y(q, q_x)
    // share a root; a random shear removes accidental common roots.
    for lambda in 0..12u32.min(p) {
        let ql = shear(q, Fp::new(lambda as i64, p));
        if ql.coeff(d).deg() != 0 {
            continue;
        }
        let r_y = resultant_v(&ql, &ql.partial_v());
        if r_y.is_zero() {
            return Err(Error::Singular("the equation has a repeated factor".into()));
        }
        let r_x = resultant_v(&ql, &ql.partial_u());
        let g = poly_gcd(&r_y, &r_x);
        if g.deg() == 0 {
            return Ok(());
        }
        for c in distinct_roots(&g) {
            for y in distinct_roots(&ql.at_u(c)) {
                if ql.partial_u().eval(c, y).is_zero() && ql.partial_v().eval(c, y).is_zero() {
                    let x = c - Fp::new(lambda as i64, p) * y;
                    return Err(Error::Singular(format!("singular point at ({x}, {y})")));
                }
            }
        }
    }
    Err(Error::Singular("the singular locus is nonempty over an extension of F_p".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_and_infinity() {
        let p = 7;
        let c = CurveModel::make_hyperelliptic(&Poly::from_i64s(&[0, -1, 0, 0, 0, 1], p)).unwrap();
        assert_eq!(c.genus(), 2);
        assert_eq!(c.infinity_values().len(), 1);
        let e = CurveModel::make_hyperelliptic(&Poly::from_i64s(&[1, 1, 0, 1], p)).unwrap();
        assert_eq!(e.genus(), 1);
        let bad = CurveModel::make_hyperelliptic(&Poly::from_i64s(&[0, 0, -1, 1], p));
        assert!(matches!(bad, Err(Error::Domain(_))));
    }

    #[test]
    fn plane_smoothness() {
        let p = 13;
        let fermat = BiPoly::from_terms(&[(4, 0, 1), (0, 4, 1), (0, 0, 1)], p);
        assert_eq!(CurveModel::make_plane(&fermat).unwrap().genus(), 3);
        let nodal = BiPoly::from_terms(&[(0, 2, 1), (3, 0, -1), (2, 0, -1)], p);
        assert!(matches!(CurveModel::make_plane(&nodal), Err(Error::Singular(_))));
        let cubic = BiPoly::from_terms(&[(0, 2, 1), (3, 0, -1), (0, 0, -1)], p);
        let c = CurveModel::make_plane(&cubic).unwrap();
        assert_eq!(c.genus(), 1);
        // (2, 3) satisfies y^2 = x^3 + 1 over F_13
        assert!(c.contains(&c.plane_point(Fp::new(2, p), Fp::new(3, p))));
    }

    #[test]
    fn point_count_matches_residue_oracle() {
        let p = 7;
        let f = Poly::from_i64s(&[0, -1, 0, 0, 0, 1], p);
        let c = CurveModel::make_hyperelliptic(&f).unwrap();
        let mut expect = 1;
        for x in 0..p as i64 {
            let v = f.eval(Fp::new(x, p));
            expect += if v.is_zero() { 1 } else if v.is_square() { 2 } else { 0 };
        }
        assert_eq!(c.enumerate_points().len(), expect);
    }

    #[test]
    fn sampling_is_seeded() {
        let p = 11;
        let c = CurveModel::make_hyperelliptic(&Poly::from_i64s(&[1, 2, 0, 3, 0, 1], p)).unwrap();
        assert_eq!(c.random_divisor(5, 9, false), c.random_divisor(5, 9, false));
        assert!(c.random_divisor(0, 1, false).is_zero());
        assert_eq!(c.random_divisor(3, 4, true).degree(), 3);
    }
}
