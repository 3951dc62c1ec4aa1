//! Riemann-Roch spaces L(D) on curve models, and the linear-system probes
//! built on them.
//!
//! A function in L(D) is written `N / d(x)` where `d` clears the affine
//! poles allowed by D and `N` lies in the coordinate ring, which is free
//! over F_p[x] on `1, y, ..., y^(m-1)`. Pole orders at infinity bound the
//! monomials of `N`; zero conditions at the points of D become membership
//! of `N` in an ideal, tested in the finite ring of a thickened fibre. This
//! handles places of higher degree in the same fibres without naming them.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Fp, Matrix, Poly, Series};
use crate::curve::{Chart, CurveModel, Divisor, FiberRing, FunctionElem, Point};
use crate::error::{Error, Result};

/// A basis of L(D). All elements share the denominator `den`.
#[derive(Clone, Debug)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub den: Poly,
    pub basis: Vec<FunctionElem>,
}

impl RRBasis {
    pub fn h0(&self) -> usize {
        self.basis.len()
    }
}

/// A positive multiple of a point sitting over one fibre.
struct Local {
    fiber: Fp,
    n: i64,
}

struct Ansatz {
    den: Poly,
    total: usize,
    monomials: Vec<(usize, usize)>,
}

fn validate(curve: &CurveModel, d: &Divisor) -> Result<()> {
    for pt in d.support() {
        if !curve.contains(&pt) {
            return Err(Error::Domain(format!("{pt} is not a rational point of the curve")));
        }
    }
    Ok(())
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// `(c + t)^a` truncated mod `t^k`, for all `a <= max`.
fn shifted_powers(c: Fp, max: usize, k: usize) -> Vec<Vec<Fp>> {
    let p = c.modulus();
    let mut out = Vec::with_capacity(max + 1);
    let mut cur = vec![Fp::zero(p); k];
    if k > 0 {
        cur[0] = Fp::one(p);
    }
    for _ in 0..=max {
        out.push(cur.clone());
        let mut next = vec![Fp::zero(p); k];
        for i in 0..k {
            next[i] += cur[i] * c;
            if i + 1 < k {
                next[i + 1] += cur[i];
            }
        }
        cur = next;
    }
    out
}

/// Generators of the ideal `prod_i P_i^(n_i)` inside a fibre ring, for
/// rational points `P_i = (t = 0, v = b_i)`. Products containing `t^k` vanish.
fn ideal_generators(ring: &FiberRing, k: usize, pts: &[(Fp, usize)]) -> Vec<Vec<Fp>> {
    let pows: Vec<Vec<Vec<Fp>>> = pts
        .iter()
        .map(|&(b, n)| {
            let lin = ring.v_minus(b);
            let mut acc = vec![ring.one()];
            for _ in 0..n {
                acc.push(ring.mul(acc.last().unwrap(), &lin));
            }
            acc
        })
        .collect();
    let mut gens = Vec::new();
    let mut js = vec![0usize; pts.len()];
    loop {
        let tdeg: usize = js.iter().sum();
        if tdeg < k {
            let mut g = ring.mul_base(&ring.one(), &ring.t_power(tdeg));
            for (i, &j) in js.iter().enumerate() {
                g = ring.mul(&g, &pows[i][pts[i].1 - j]);
            }
            gens.push(g);
        }
        // next tuple
        let mut i = 0;
        loop {
            if i == js.len() {
                return gens;
            }
            if js[i] < pts[i].1 {
                js[i] += 1;
                break;
            }
            js[i] = 0;
            i += 1;
        }
    }
}

fn series_powers(s: &Series, max: usize) -> Vec<Series> {
    let mut out = vec![Series::constant(Fp::one(s.modulus()), s.prec())];
    for i in 0..max {
        out.push(&out[i] * s);
    }
    out
}

/// Solve for a basis of L(D) as numerators over the ansatz denominator.
fn solve(curve: &CurveModel, d: &Divisor) -> Result<(Ansatz, Vec<Vec<Fp>>)> {
    validate(curve, d)?;
    let p = curve.modulus();
    let m = curve.fiber_degree();
    let kappa = curve.kappa();

    // pole orders to clear in each fibre
    let mut fibres: BTreeMap<Fp, Vec<(Point, Local, usize)>> = BTreeMap::new();
    let mut at_inf: Vec<(Point, Local, usize)> = Vec::new();
    for (pt, n) in d.terms() {
        let place = curve.place(&pt)?;
        let loc = Local { fiber: place.fiber, n };
        match pt {
            Point::Affine(x, _) => fibres.entry(x).or_default().push((pt, loc, place.e)),
            Point::Infinity(_) => at_inf.push((pt, loc, place.e)),
        }
    }
    let order = |pts: &[(Point, Local, usize)]| -> usize {
        pts.iter().filter(|x| x.1.n > 0).map(|x| ceil_div(x.1.n, x.2 as i64)).max().unwrap_or(0) as usize
    };
    let mut den = Poly::one(p);
    let mut kc: BTreeMap<Fp, usize> = BTreeMap::new();
    for (c, pts) in &fibres {
        let k = order(pts);
        kc.insert(*c, k);
        den = &den * &Poly::linear_root(*c).pow(k);
    }
    let kinf = order(&at_inf);
    let total = den.deg() as usize + kinf;
    let monomials: Vec<(usize, usize)> =
        (0..m).filter(|b| kappa * b <= total).flat_map(|b| (0..=total - kappa * b).map(move |a| (a, b))).collect();
    let ncols = monomials.len();
    let mut rows: Vec<Vec<Fp>> = Vec::new();

    // zero conditions in the thickened fibres that carry poles
    let mut fibre_block = |ring: &FiberRing, k: usize, images: &[Vec<Fp>], pts: &[(Fp, usize)]| {
        for g in ideal_generators(ring, k, pts) {
            let prods: Vec<Vec<Fp>> = images.iter().map(|img| ring.mul(img, &g)).collect();
            for r in 0..ring.dim() {
                let row: Vec<Fp> = prods.iter().map(|v| v[r]).collect();
                if row.iter().any(|a| !a.is_zero()) {
                    rows.push(row);
                }
            }
        }
    };
    for (c, pts) in &fibres {
        let k = kc[c];
        if k == 0 {
            continue;
        }
        let ring = FiberRing::new(curve.affine_equation(), *c, k);
        let xs = shifted_powers(*c, total, k);
        let mut ys = vec![ring.one()];
        for b in 1..m {
            ys.push(ring.mul(&ys[b - 1], &ring.v_minus(Fp::zero(p))));
        }
        let images: Vec<Vec<Fp>> = monomials.iter().map(|&(a, b)| ring.mul_base(&ys[b], &xs[a])).collect();
        let gens: Vec<(Fp, usize)> = pts.iter().filter(|x| x.1.n > 0).map(|x| (x.1.fiber, x.1.n as usize)).collect();
        fibre_block(&ring, k, &images, &gens);
    }
    if kinf > 0 {
        let ring = FiberRing::new(curve.infinity_equation(), Fp::zero(p), kinf);
        let mut ss = vec![ring.one()];
        for b in 1..m {
            ss.push(ring.mul(&ss[b - 1], &ring.v_minus(Fp::zero(p))));
        }
        let images: Vec<Vec<Fp>> = monomials
            .iter()
            .map(|&(a, b)| ring.mul_base(&ss[b], &ring.t_power(total - a - kappa * b)))
            .collect();
        let gens: Vec<(Fp, usize)> = at_inf.iter().filter(|x| x.1.n > 0).map(|x| (x.1.fiber, x.1.n as usize)).collect();
        fibre_block(&ring, kinf, &images, &gens);
    }

    // required zeros at points with negative coefficient
    let kc = &kc;
    let negatives = fibres
        .iter()
        .flat_map(|(c, pts)| pts.iter().map(move |x| (x, kc[c])))
        .chain(at_inf.iter().map(|x| (x, kinf)))
        .filter(|(x, _)| x.1.n < 0);
    for ((pt, loc, e), k) in negatives {
        let need = (k * e) as i64 - loc.n;
        let place = curve.place(pt)?;
        let ex = curve.expansion(&place, need as usize)?;
        let us = series_powers(&ex.u, total);
        let vs = series_powers(&ex.v, m);
        let cols: Vec<Series> = monomials
            .iter()
            .map(|&(a, b)| match place.chart {
                Chart::Affine => &us[a] * &vs[b],
                Chart::Infinity => &us[total - a - kappa * b] * &vs[b],
            })
            .collect();
        for i in 0..need as usize {
            rows.push(cols.iter().map(|s| s.coeff(i)).collect());
        }
    }

    let null = if rows.is_empty() {
        (0..ncols)
            .map(|i| {
                let mut v = vec![Fp::zero(p); ncols];
                v[i] = Fp::one(p);
                v
            })
            .collect()
    } else {
        Matrix::from_rows(&rows, ncols, p).rank_and_nullspace().1
    };
    Ok((Ansatz { den, total, monomials }, null))
}

fn to_functions(curve: &CurveModel, ans: &Ansatz, null: &[Vec<Fp>]) -> Vec<FunctionElem> {
    let p = curve.modulus();
    let m = curve.fiber_degree();
    null.iter()
        .map(|vec| {
            let mut coeffs = vec![vec![Fp::zero(p); ans.total + 1]; m];
            for (&(a, b), &c) in ans.monomials.iter().zip(vec) {
                coeffs[b][a] = c;
            }
            let num = coeffs.into_iter().map(|c| Poly::new(c, p)).collect();
            FunctionElem::new(curve, num, ans.den.clone()).expect("nonzero denominator")
        })
        .collect()
}

/// h0(D) without the Riemann-Roch cross-check. Used for the dual side of
/// that check and while the canonical class is being established.
pub fn h0_unchecked(curve: &CurveModel, d: &Divisor) -> Result<usize> {
    if d.degree() < 0 {
        return Ok(0);
    }
    if let Some(h) = curve.cached_h0(d) {
        return Ok(h);
    }
    let h = solve(curve, d)?.1.len();
    curve.store_h0(d, h);
    Ok(h)
}

fn check_identity(curve: &CurveModel, d: &Divisor, h: usize) -> Result<()> {
    let k = curve.canonical_divisor()?;
    let dual = h0_unchecked(curve, &(&k - d))?;
    let g = curve.genus() as i64;
    if h as i64 - dual as i64 != d.degree() - g + 1 {
        return Err(Error::Consistency(format!(
            "Riemann-Roch identity fails for D = {d} on {curve:?}: h0(D) = {h}, h0(K-D) = {dual}, deg D = {}, g = {g}",
            d.degree()
        )));
    }
    Ok(())
}

/// A basis of L(D), with its dimension checked against Riemann-Roch.
pub fn rr_space(curve: &CurveModel, d: &Divisor) -> Result<RRBasis> {
    validate(curve, d)?;
    let p = curve.modulus();
    if d.degree() < 0 {
        return Ok(RRBasis { divisor: d.clone(), den: Poly::one(p), basis: Vec::new() });
    }
    let (ans, null) = solve(curve, d)?;
    check_identity(curve, d, null.len())?;
    curve.store_h0(d, null.len());
    let basis = to_functions(curve, &ans, &null);
    Ok(RRBasis { divisor: d.clone(), den: ans.den, basis })
}

pub fn h0(curve: &CurveModel, d: &Divisor) -> Result<usize> {
    validate(curve, d)?;
    if d.degree() < 0 {
        return Ok(0);
    }
    if let Some(h) = curve.cached_h0(d) {
        return Ok(h);
    }
    let h = solve(curve, d)?.1.len();
    check_identity(curve, d, h)?;
    curve.store_h0(d, h);
    Ok(h)
}

/// h1(D) = h0(K - D).
pub fn h1(curve: &CurveModel, d: &Divisor) -> Result<usize> {
    let k = curve.canonical_divisor()?;
    h0(curve, &(&k - d))
}

pub fn is_base_point(curve: &CurveModel, d: &Divisor, pt: &Point) -> Result<bool> {
    let h = h0(curve, d)?;
    if h == 0 {
        return Err(Error::Domain(format!("|{d}| is empty")));
    }
    Ok(h0(curve, &(d - &Divisor::point(*pt)))? == h)
}

/// Rational part of the fixed divisor of |D|: at each rational point, the
/// least order of `f + D` over a basis of L(D).
pub fn base_locus(curve: &CurveModel, d: &Divisor) -> Result<Divisor> {
    let rr = rr_space(curve, d)?;
    if rr.basis.is_empty() {
        return Err(Error::Domain(format!("|{d}| is empty")));
    }
    let mut out = Divisor::zero();
    for pt in candidate_base_points(curve, d) {
        let off_support = d.coeff(&pt) == 0;
        // a section that is regular and nonzero at P rules it out at once
        if off_support && rr.basis.iter().any(|f| f.eval(&pt).is_some_and(|v| !v.is_zero())) {
            continue;
        }
        let mut least = i64::MAX;
        for f in &rr.basis {
            least = least.min(f.valuation(curve, &pt)? + d.coeff(&pt));
            if least == 0 {
                break;
            }
        }
        out.add_term(pt, least);
    }
    Ok(out)
}

/// Rational base points of |D|.
pub fn base_points(curve: &CurveModel, d: &Divisor) -> Result<Vec<Point>> {
    Ok(base_locus(curve, d)?.support())
}

/// Every base point of |D| lies on D itself when D is effective.
fn candidate_base_points(curve: &CurveModel, d: &Divisor) -> Vec<Point> {
    if d.is_effective() || d.is_zero() {
        d.support()
    } else {
        curve.enumerate_points().to_vec()
    }
}

/// Base multiplicity of a point: the largest `mu` with `h0(D - mu P) = h0(D)`.
pub fn base_multiplicity(curve: &CurveModel, d: &Divisor, pt: &Point) -> Result<usize> {
    let h = h0(curve, d)?;
    if h == 0 {
        return Err(Error::Domain(format!("|{d}| is empty")));
    }
    let mut mu = 0;
    while h0(curve, &(d - &Divisor::from_terms([(*pt, mu as i64 + 1)])))? == h {
        mu += 1;
    }
    Ok(mu)
}

/// The double-base-point criterion: |A| is nonempty and no rational base
/// point P has `h0(A - 2P) = h0(A - P)`, i.e. every rational base point is simple.
pub fn is_smooth_system(curve: &CurveModel, a: &Divisor) -> Result<bool> {
    if h0(curve, a)? == 0 {
        return Ok(false);
    }
    if a.degree() == 0 {
        return Ok(true);
    }
    Ok(base_locus(curve, a)?.terms().all(|(_, m)| m <= 1))
}

/// Separation verdict for pairs of rational points, tangent directions
/// included. It says nothing about points over extensions of F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVerdict {
    pub holds: bool,
    pub witness: Option<(Point, Point)>,
}

impl RationalVerdict {
    pub const SCOPE: &'static str = "rational-points-only";
}

const PAIR_BUDGET: usize = 200_000;

/// Very ampleness of |D| tested on rational pairs: `h0(D - P - Q) = h0(D) - 2`.
pub fn separates(curve: &CurveModel, d: &Divisor) -> Result<RationalVerdict> {
    let pts = curve.enumerate_points();
    let pairs = pts.len() * (pts.len() + 1) / 2;
    if pairs > PAIR_BUDGET {
        return Err(Error::Budget(format!("{pairs} rational pairs exceed the scan budget {PAIR_BUDGET}; use a smaller p")));
    }
    let h = h0(curve, d)? as i64;
    for (i, p1) in pts.iter().enumerate() {
        for p2 in &pts[i..] {
            let e = &(d - &Divisor::point(*p1)) - &Divisor::point(*p2);
            if h0(curve, &e)? as i64 != h - 2 {
                return Ok(RationalVerdict { holds: false, witness: Some((*p1, *p2)) });
            }
        }
    }
    Ok(RationalVerdict { holds: true, witness: None })
}

/// Image of a rational point under the map given by a basis of L(D),
/// normalized so that the first nonzero coordinate is 1.
pub fn image_of_point(curve: &CurveModel, basis: &RRBasis, pt: &Point) -> Result<Vec<Fp>> {
    let p = curve.modulus();
    let mut lead = Vec::with_capacity(basis.basis.len());
    for h in &basis.basis {
        let (v, c) = h.laurent(curve, pt, 1)?;
        lead.push((v, c[0]));
    }
    let vmin = lead.iter().map(|x| x.0).min().ok_or_else(|| Error::Domain("empty linear system".into()))?;
    let coords: Vec<Fp> = lead.iter().map(|&(v, c)| if v == vmin { c } else { Fp::zero(p) }).collect();
    let inv = coords.iter().find(|c| !c.is_zero()).unwrap().inv().unwrap();
    Ok(coords.into_iter().map(|c| c * inv).collect())
}

/// How the map given by |b| behaves on a hyperelliptic or elliptic curve.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiProfile {
    pub birational: bool,
    pub very_ample: bool,
    /// Largest number of rational points sharing one image point.
    pub max_singularity: usize,
    /// Degree of the map onto its image.
    pub map_degree: usize,
    pub image_degree: usize,
    /// Share of unordered pairs of distinct rational points with equal images.
    pub identified_pairs: f64,
}

/// Dimension of the span of all `n`-fold products of a basis, for `n = 1..=max`.
pub fn product_dimensions(curve: &CurveModel, basis: &[FunctionElem], max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur: Vec<FunctionElem> = crate::curve::independent_subset(basis);
    out.push(cur.len());
    for _ in 1..max {
        let prods: Vec<FunctionElem> =
            cur.iter().flat_map(|a| basis.iter().map(move |b| a.mul(curve, b))).collect();
        cur = crate::curve::independent_subset(&prods);
        out.push(cur.len());
    }
    out
}

/// `(image degree, map degree)` of the morphism given by the complete
/// system `|d|`; both are zero when `h0(d) <= 1`.
pub fn map_degree(curve: &CurveModel, d: &Divisor) -> Result<(usize, usize)> {
    let rr = rr_space(curve, d)?;
    map_degree_of(curve, d, &rr)
}

fn map_degree_of(curve: &CurveModel, b: &Divisor, rr: &RRBasis) -> Result<(usize, usize)> {
    let r = rr.h0() as i64 - 1;
    if r <= 0 {
        return Ok((0, 0));
    }
    let fixed = base_locus(curve, b)?.degree();
    // The Hilbert function of the image is polynomial from deg - r + 1
    // on, with slope equal to the degree of the image.
    let n = (b.degree() - r + 2).max(3) as usize;
    let dims = product_dimensions(curve, &rr.basis, n);
    let slope = dims[n - 1] - dims[n - 2];
    let moving = (b.degree() - fixed) as usize;
    if slope == 0 || moving % slope != 0 {
        return Err(Error::Consistency(format!(
            "image degree {slope} does not divide the moving degree {moving} for b = {b}"
        )));
    }
    Ok((slope, moving / slope))
}

pub fn phi_b_profile(curve: &CurveModel, b: &Divisor) -> Result<PhiProfile> {
    if !(curve.hyperelliptic_poly().is_some() || curve.is_elliptic()) {
        return Err(Error::Domain("phi_b profile needs a hyperelliptic or elliptic curve".into()));
    }
    let g = curve.genus() as i64;
    if b.degree() < 2 * g - 2 || h1(curve, b)? != 0 {
        return Err(Error::Domain(format!("b = {b} must be nonspecial of degree at least 2g-2")));
    }
    let rr = rr_space(curve, b)?;
    let (image_degree, map_degree) = map_degree_of(curve, b, &rr)?;
    let mut groups: HashMap<Vec<Fp>, usize> = HashMap::new();
    let pts = curve.enumerate_points();
    for pt in pts {
        *groups.entry(image_of_point(curve, &rr, pt)?).or_default() += 1;
    }
    let same: usize = groups.values().map(|n| n * (n - 1) / 2).sum();
    let total = pts.len() * pts.len().saturating_sub(1) / 2;
    let very_ample = if rr.h0() >= 3 { separates(curve, b)?.holds } else { false };
    Ok(PhiProfile {
        birational: map_degree == 1,
        very_ample,
        max_singularity: groups.values().copied().max().unwrap_or(0),
        map_degree,
        image_degree,
        identified_pairs: if total == 0 { 0.0 } else { same as f64 / total as f64 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::span_rank;

    fn genus2() -> CurveModel {
        CurveModel::make_hyperelliptic(&Poly::from_i64s(&[0, -1, 0, 0, 0, 1], 7)).unwrap()
    }

    #[test]
    fn three_infinity_has_basis_one_x() {
        let c = genus2();
        let rr = rr_space(&c, &Divisor::from_terms([(Point::Infinity(0), 3)])).unwrap();
        assert_eq!(rr.h0(), 2);
        let mut funcs = rr.basis.clone();
        funcs.push(FunctionElem::constant(&c, Fp::one(7)));
        funcs.push(FunctionElem::x(&c));
        assert_eq!(span_rank(&funcs), 2);
    }

    #[test]
    fn small_cases() {
        let c = genus2();
        assert_eq!(h0(&c, &Divisor::zero()).unwrap(), 1);
        let k = c.canonical_divisor().unwrap();
        assert_eq!(h0(&c, &k).unwrap(), 2);
        assert_eq!(h0(&c, &Divisor::from_terms([(Point::Infinity(0), -1)])).unwrap(), 0);
        let w = Divisor::from_terms([(Point::affine(0, 0, 7), 2)]);
        assert_eq!(h0(&c, &w).unwrap(), 2);
        let mixed = Divisor::from_terms([(Point::affine(0, 0, 7), 3), (Point::Infinity(0), -1)]);
        assert_eq!(h0(&c, &mixed).unwrap(), 1);
    }

    #[test]
    fn basis_elements_satisfy_the_divisor() {
        let c = genus2();
        let d = Divisor::from_terms([(Point::affine(2, 3, 7), 2), (Point::affine(2, 4, 7), 1), (Point::Infinity(0), 2)]);
        let rr = rr_space(&c, &d).unwrap();
        assert_eq!(rr.h0(), 4);
        for h in &rr.basis {
            let div = h.divisor_of(&c);
            if let Ok(div) = div {
                assert!((&div + &d).terms().all(|(_, n)| n >= 0), "{h:?}");
            }
            for pt in d.support() {
                assert!(h.valuation(&c, &pt).unwrap() >= -d.coeff(&pt));
            }
        }
    }
}
