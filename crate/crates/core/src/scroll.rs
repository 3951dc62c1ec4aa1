//! Decomposable ruled surfaces `P(O + O(e))` over a curve and the scrolls
//! given by `|X0 + b f|`. Every surface cohomology group is pushed down to
//! the base curve through `H0(n X0 + c f) = sum_i H0(c + i e)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::curve::{CurveKind, CurveModel, Divisor, Point};
use crate::error::{Error, Result};
use crate::jacobian::{is_equivalent, Jacobian};
use crate::multmap::{corank, green_hypothesis, NormalityVerdict};
use crate::riemann_roch::{base_locus, h0, h1, image_of_point, is_smooth_system, rr_space};
use crate::seed::trial_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Holds,
    Fails,
    /// The answer depends on points that are not defined over F_p.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub status: Status,
    pub reason: String,
}

impl Finding {
    fn new(status: Status, reason: impl Into<String>) -> Self {
        Finding { status, reason: reason.into() }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Smoothness of the class of `a`, with rationality taken into account.
///
/// The base-point scan only sees rational points. It is exact when
/// `deg a >= 2g` (no base points), when `deg a < 4` (a closed point of
/// degree at least 2 counted twice needs degree 4), or once some section
/// has all its zeros at rational points, since the base locus lies inside
/// every member of the system.
fn smooth_class(curve: &CurveModel, a: &Divisor) -> Result<Finding> {
    if h0(curve, a)? == 0 {
        return Ok(Finding::new(Status::Fails, "2(b-K) is not effective"));
    }
    if !is_smooth_system(curve, a)? {
        return Ok(Finding::new(Status::Fails, format!("|{a}| has a double rational base point")));
    }
    let g = curve.genus() as i64;
    if a.degree() >= 2 * g || a.degree() < 4 {
        return Ok(Finding::new(Status::Holds, "2(b-K) is a smooth class"));
    }
    let rr = rr_space(curve, a)?;
    let p = curve.modulus();
    let mut candidates = rr.basis.clone();
    for c in 1..4i64 {
        let mut acc = rr.basis[0].clone();
        for (i, f) in rr.basis.iter().enumerate().skip(1) {
            acc = acc.add(curve, &f.scale(crate::algebra::Fp::new(c * (i as i64 + 1), p)));
        }
        candidates.push(acc);
    }
    for f in candidates.iter().filter(|f| !f.is_zero()) {
        match f.divisor_of(curve) {
            Ok(_) => return Ok(Finding::new(Status::Holds, "2(b-K) is a smooth class")),
            Err(Error::NonRational(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(Finding::new(Status::Indeterminate, format!("every tried member of |{a}| has zeros outside F_p")))
}

/// Whether `b` gives a canonical ruled surface `P(O + O(K - b))`: degree at
/// least `2g - 2`, nonspecial, not canonical, and `2(b - K)` a smooth class.
pub fn is_canonical_pair(curve: &CurveModel, b: &Divisor) -> Result<Finding> {
    let g = curve.genus() as i64;
    if b.degree() < 2 * g - 2 {
        return Ok(Finding::new(Status::Fails, format!("deg b = {} < 2g - 2", b.degree())));
    }
    if h1(curve, b)? != 0 {
        return Ok(Finding::new(Status::Fails, "b is special"));
    }
    let k = curve.canonical_divisor()?;
    if b.degree() == 2 * g - 2 && is_equivalent(curve, b, &k)? {
        return Ok(Finding::new(Status::Fails, "b ~ K"));
    }
    smooth_class(curve, &(b - &k).scale(2))
}

/// The configurations in which a canonical pair fails to give a canonical scroll.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScrollException {
    /// `b ~ K + g12`.
    KPlusPencil,
    /// `b ~ K + P` with `P` a Weierstrass point.
    KPlusWeierstrass,
    /// `b ~ (g-2) g12 + P + Q` with `P`, `Q` Weierstrass points.
    WeierstrassPair,
    /// An elliptic base with `deg b` in `{0, 1, 2}`.
    EllipticLowDegree(i64),
}

enum Match {
    Case(ScrollException),
    NoCase,
    Unknown(String),
}

/// Hyperelliptic exception cases. On odd models the Weierstrass conditions
/// become 2-torsion conditions in the Jacobian, which needs no rational
/// Weierstrass points; elsewhere rational Weierstrass points are searched.
fn hyperelliptic_case(curve: &CurveModel, b: &Divisor) -> Result<Match> {
    let g = curve.genus() as i64;
    let d = b.degree();
    if d < 2 * g - 2 || d > 2 * g {
        return Ok(Match::NoCase);
    }
    let k = curve.canonical_divisor()?;
    let g12 = curve.g12_divisor()?;
    if curve.is_odd_model() {
        let jac = Jacobian::new(curve)?;
        let hit = if d == 2 * g {
            jac.class_of(&(&(b - &k) - &g12))?.is_identity()
        } else if d == 2 * g - 1 {
            let y = jac.class_of(&(b - &k))?;
            y.weight() <= 1 && jac.double(&y)?.is_identity()
        } else {
            let x = jac.class_of(&(b - &g12.scale(g - 2)))?;
            !x.is_identity() && x.weight() <= 2 && jac.double(&x)?.is_identity()
        };
        let case = [ScrollException::WeierstrassPair, ScrollException::KPlusWeierstrass, ScrollException::KPlusPencil]
            [(d - (2 * g - 2)) as usize];
        return Ok(if hit { Match::Case(case) } else { Match::NoCase });
    }
    let w = curve.weierstrass_points();
    if d == 2 * g {
        return Ok(if is_equivalent(curve, b, &(&k + &g12))? { Match::Case(ScrollException::KPlusPencil) } else { Match::NoCase });
    }
    if d == 2 * g - 1 {
        // b - K is then a rational effective class of degree 1, i.e. a rational point
        for pt in &w {
            if is_equivalent(curve, b, &(&k + &Divisor::point(*pt)))? {
                return Ok(Match::Case(ScrollException::KPlusWeierstrass));
            }
        }
        return Ok(Match::NoCase);
    }
    let base = g12.scale(g - 2);
    for (i, p1) in w.iter().enumerate() {
        for p2 in &w[i + 1..] {
            let cand = &base + &Divisor::from_terms([(*p1, 1), (*p2, 1)]);
            if is_equivalent(curve, b, &cand)? {
                return Ok(Match::Case(ScrollException::WeierstrassPair));
            }
        }
    }
    let f = curve.hyperelliptic_poly().unwrap();
    if (w.len() as i64) < f.deg() {
        return Ok(Match::Unknown("some Weierstrass points are not rational".into()));
    }
    Ok(Match::NoCase)
}

fn exception_case(curve: &CurveModel, b: &Divisor) -> Result<Match> {
    if curve.is_elliptic() {
        let d = b.degree();
        return Ok(if (0..=2).contains(&d) { Match::Case(ScrollException::EllipticLowDegree(d)) } else { Match::NoCase });
    }
    if curve.is_hyperelliptic() {
        return hyperelliptic_case(curve, b);
    }
    Ok(Match::NoCase)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollCheck {
    pub status: Status,
    pub exception: Option<ScrollException>,
    pub reason: String,
}

/// Whether `|X0 + b f|` maps the canonical ruled surface of `b` onto a
/// canonical scroll: a canonical pair outside the exception list.
pub fn defines_canonical_scroll(curve: &CurveModel, b: &Divisor) -> Result<ScrollCheck> {
    let pair = is_canonical_pair(curve, b)?;
    if !pair.holds() {
        return Ok(ScrollCheck { status: pair.status, exception: None, reason: format!("not a canonical pair: {}", pair.reason) });
    }
    Ok(match exception_case(curve, b)? {
        Match::Case(c) => ScrollCheck { status: Status::Fails, exception: Some(c), reason: format!("exception {c:?}") },
        Match::NoCase => ScrollCheck { status: Status::Holds, exception: None, reason: "no exception applies".into() },
        Match::Unknown(r) => ScrollCheck { status: Status::Indeterminate, exception: None, reason: r },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BisecantCase {
    KPlusPencil,
    KPlusWeierstrass,
    WeierstrassPair,
    /// Elliptic base, `deg b = 1`: the bisecant curve has genus 2.
    EllipticDegreeOne,
    /// Elliptic base, `deg b = 2`: decided by the branch divisor of the chosen curve.
    EllipticDegreeTwo,
    /// Elliptic base, `deg b = 0`: the bisecant curve is elliptic.
    EllipticCover,
    /// No listed case; the bisecant curve is not hyperelliptic.
    NoCase,
    /// The list could not be decided over F_p.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisecant {
    /// Whether a smooth curve in `|2 X1|` is hyperelliptic, when decided.
    pub hyperelliptic_c: Option<bool>,
    pub case: BisecantCase,
    /// `h0(b - g12) = h0(b) - 1`, on hyperelliptic bases.
    pub criterion: Option<bool>,
}

/// Hyperellipticity of the bisecant curves `|2 X1|`, by the `h0` criterion
/// and by the explicit case list. The two must agree on hyperelliptic bases.
pub fn classify_bisecant(curve: &CurveModel, b: &Divisor) -> Result<Bisecant> {
    let pair = is_canonical_pair(curve, b)?;
    if !pair.holds() {
        return Err(Error::Domain(format!("({b}) is not a canonical pair: {}", pair.reason)));
    }
    if curve.is_elliptic() {
        let (h, case) = match b.degree() {
            0 => (Some(false), BisecantCase::EllipticCover),
            1 => (Some(true), BisecantCase::EllipticDegreeOne),
            2 => (None, BisecantCase::EllipticDegreeTwo),
            _ => (Some(false), BisecantCase::NoCase),
        };
        return Ok(Bisecant { hyperelliptic_c: h, case, criterion: None });
    }
    if !curve.is_hyperelliptic() {
        // a curve with an involution onto a non-hyperelliptic, non-elliptic base is not hyperelliptic
        return Ok(Bisecant { hyperelliptic_c: Some(false), case: BisecantCase::NoCase, criterion: None });
    }
    let g12 = curve.g12_divisor()?;
    let criterion = h0(curve, &(b - &g12))? + 1 == h0(curve, b)?;
    let case = match hyperelliptic_case(curve, b)? {
        Match::Case(ScrollException::KPlusPencil) => BisecantCase::KPlusPencil,
        Match::Case(ScrollException::KPlusWeierstrass) => BisecantCase::KPlusWeierstrass,
        Match::Case(_) => BisecantCase::WeierstrassPair,
        Match::NoCase => BisecantCase::NoCase,
        Match::Unknown(_) => {
            return Ok(Bisecant { hyperelliptic_c: Some(criterion), case: BisecantCase::Unresolved, criterion: Some(criterion) })
        }
    };
    let listed = case != BisecantCase::NoCase;
    if listed != criterion {
        return Err(Error::Consistency(format!(
            "b = {b}: h0 criterion says {criterion}, case list says {case:?}"
        )));
    }
    Ok(Bisecant { hyperelliptic_c: Some(criterion), case, criterion: Some(criterion) })
}

/// `P(O + O(e))` over `curve`.
#[derive(Clone, Debug)]
pub struct RuledSurface<'c> {
    pub curve: &'c CurveModel,
    pub e: Divisor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedSpaces {
    /// Projective dimension of `|2 X1|`.
    pub dim_2x1: i64,
    pub dim_f0: i64,
    /// `-1` when the second fixed space is empty.
    pub dim_f1: i64,
}

impl<'c> RuledSurface<'c> {
    pub fn new(curve: &'c CurveModel, e: Divisor) -> Self {
        RuledSurface { curve, e }
    }

    /// `h0(n X0 + c f) = sum_{i=0..n} h0(c + i e)`.
    pub fn h0(&self, n: usize, c: &Divisor) -> Result<usize> {
        let mut total = 0;
        for i in 0..=n as i64 {
            total += h0(self.curve, &(c + &self.e.scale(i)))?;
        }
        Ok(total)
    }

    /// Dimensions of `|2 X1|` and of its two spaces of fixed divisors.
    pub fn fixed_space_dims(&self) -> Result<FixedSpaces> {
        if self.e.degree() == 0 && h0(self.curve, &self.e)? == 1 {
            return Err(Error::Domain("e ~ 0: the surface is a product".into()));
        }
        let h1e = h0(self.curve, &-&self.e)? as i64;
        let h2e = h0(self.curve, &self.e.scale(-2))? as i64;
        let dims = FixedSpaces { dim_2x1: h1e + h2e, dim_f0: h2e, dim_f1: h1e - 1 };
        if dims.dim_f1 >= 0 && dims.dim_f0 + dims.dim_f1 + 1 != dims.dim_2x1 {
            return Err(Error::Consistency(format!("fixed spaces {dims:?} do not add up")));
        }
        Ok(dims)
    }
}

/// Coranks of the summands of `s(H, ..., H)` for `k` copies: entry `i`
/// is the corank with `i` copies of `b + e` and `k - i` copies of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollCorank {
    pub k: usize,
    pub terms: Vec<usize>,
    pub total: usize,
}

impl ScrollCorank {
    /// The summand made only of `b`.
    pub fn b_side(&self) -> usize {
        self.terms[0]
    }

    /// The summand made only of `b + e` (the canonical class for a canonical scroll).
    pub fn k_side(&self) -> usize {
        self.terms[self.k]
    }

    pub fn mixed(&self) -> usize {
        self.total - self.b_side() - self.k_side()
    }
}

/// The decomposition for two factors: vanishing mixed term, and the total
/// equal to the sum of the pure terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalCheck {
    pub table: ScrollCorank,
    pub holds: bool,
}

/// A ruled surface polarized by `H ~ X0 + b f`.
#[derive(Clone, Debug)]
pub struct PolarizedScroll<'c> {
    pub surface: RuledSurface<'c>,
    pub b: Divisor,
    /// `e ~ K - b`.
    pub canonical: bool,
}

impl<'c> PolarizedScroll<'c> {
    pub fn new(surface: RuledSurface<'c>, b: Divisor) -> Result<Self> {
        let k = surface.curve.canonical_divisor()?;
        let target = &k - &b;
        let canonical = surface.e.degree() == target.degree() && is_equivalent(surface.curve, &surface.e, &target)?;
        Ok(PolarizedScroll { surface, b, canonical })
    }

    /// The scroll of a canonical pair, `e = K - b`.
    pub fn canonical(curve: &'c CurveModel, b: &Divisor) -> Result<Self> {
        let e = &curve.canonical_divisor()? - b;
        Ok(PolarizedScroll { surface: RuledSurface::new(curve, e), b: b.clone(), canonical: true })
    }

    fn curve(&self) -> &'c CurveModel {
        self.surface.curve
    }

    /// `b + e`, the second directrix class.
    pub fn twin(&self) -> Divisor {
        &self.b + &self.surface.e
    }

    pub fn ambient_dim(&self) -> Result<i64> {
        Ok(h0(self.curve(), &self.b)? as i64 + h0(self.curve(), &self.twin())? as i64 - 1)
    }

    pub fn degree(&self) -> i64 {
        self.b.degree() + self.twin().degree()
    }

    /// `h1(H) = h1(b) + h1(b + e)`.
    pub fn speciality(&self) -> Result<usize> {
        let twin = h1(self.curve(), &self.twin())?;
        if self.canonical && twin != 1 {
            return Err(Error::Consistency(format!("h1(b + e) = {twin} although b + e ~ K")));
        }
        Ok(h1(self.curve(), &self.b)? + twin)
    }

    pub fn corank_terms(&self, k: usize) -> Result<ScrollCorank> {
        if k < 1 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        let twin = self.twin();
        let mut terms = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut factors = vec![twin.clone(); i];
            factors.extend(std::iter::repeat(self.b.clone()).take(k - i));
            terms.push(corank(self.curve(), &factors)?.corank);
        }
        let total = terms.iter().sum();
        Ok(ScrollCorank { k, terms, total })
    }

    pub fn principal_check(&self) -> Result<PrincipalCheck> {
        let table = self.corank_terms(2)?;
        let holds = table.terms[1] == 0 && table.total == table.b_side() + table.k_side();
        Ok(PrincipalCheck { table, holds })
    }

    /// Degree-`k` hypersurfaces containing the scroll:
    /// `C(N + k, k) - h0(kH) + dim s(H, ..., H)`.
    pub fn hypersurface_count(&self, k: usize) -> Result<i64> {
        let n = self.ambient_dim()?;
        if n < 0 {
            return Err(Error::Domain("the scroll has no sections".into()));
        }
        let forms = binomial(n as u64 + k as u64, k as u64) as i64;
        let sections = self.surface.h0(k, &self.b.scale(k as i64))? as i64;
        let s = if k >= 2 { self.corank_terms(k)?.total as i64 } else { 0 };
        let count = forms - sections + s;
        if count < 0 {
            return Err(Error::Consistency(format!("negative hypersurface count {count} in degree {k}")));
        }
        Ok(count)
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalityFailure {
    pub k: usize,
    pub k_side: usize,
    pub b_side: usize,
    pub mixed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollNormality {
    pub table: Vec<ScrollCorank>,
    /// The Green cutoff covers every `k > k_max` on both directrix sides.
    pub extended: bool,
    pub verdict: NormalityVerdict,
    pub failure: Option<NormalityFailure>,
}

/// The Green cutoff for `D`: vanishing `s((m-1)D, D)` for every `m > k_max`.
fn side_extends(curve: &CurveModel, d: &Divisor, k_max: usize) -> Result<bool> {
    let h = h0(curve, d)?;
    if h <= 1 {
        // multiplication by a single section of a degree-0 system is onto
        return Ok(d.degree() == 0);
    }
    if !base_locus(curve, d)?.is_zero() {
        return Ok(false);
    }
    Ok(green_hypothesis(curve, &d.scale(k_max as i64), d)?.holds)
}

/// Projective normality of the canonical scroll of `b`, from the corank
/// decomposition for `2 <= k <= k_max`.
pub fn normality_verdict(curve: &CurveModel, b: &Divisor, k_max: usize) -> Result<ScrollNormality> {
    let check = defines_canonical_scroll(curve, b)?;
    if check.status != Status::Holds {
        return Err(Error::Domain(format!("b = {b} does not define a canonical scroll: {}", check.reason)));
    }
    let scroll = PolarizedScroll::canonical(curve, b)?;
    let mut table = Vec::new();
    let mut failure = None;
    for k in 2..=k_max {
        let row = scroll.corank_terms(k)?;
        if row.total != 0 && failure.is_none() {
            failure = Some(NormalityFailure { k, k_side: row.k_side(), b_side: row.b_side(), mixed: row.mixed() });
        }
        table.push(row);
    }
    let k = curve.canonical_divisor()?;
    let extended = side_extends(curve, b, k_max)? && side_extends(curve, &k, k_max)?;
    let verdict = match failure {
        Some(f) => NormalityVerdict::NotProjectivelyNormal { k: f.k },
        None if extended => NormalityVerdict::ProjectivelyNormal,
        None => NormalityVerdict::Undetermined,
    };
    Ok(ScrollNormality { table, extended, verdict, failure })
}

/// Classes built from `2x = 2K + a` for effective `a`, in the low range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constructed {
    pub attempts: usize,
    pub halves: usize,
    pub canonical: usize,
    /// Set when the Jacobian budget stopped the search.
    pub partial: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExistenceScan {
    pub degree: i64,
    pub trials: usize,
    pub canonical: usize,
    pub not_canonical: usize,
    pub indeterminate: usize,
    /// Share of canonical pairs among the determinate trials.
    pub fraction: f64,
    pub witnesses: Vec<Divisor>,
    pub counterexamples: Vec<Divisor>,
    pub constructed: Option<Constructed>,
}

const KEEP: usize = 5;

/// Random sums of rational points of the given degree, tested with
/// [`is_canonical_pair`]. In the low range `2 deg <= 5(g - 1)` on odd
/// models, classes are also built by halving `2K + a`.
pub fn existence_scan(curve: &CurveModel, degree: i64, trials: usize, seed: u64) -> Result<ExistenceScan> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let stream = crate::seed::stream_id("existence") ^ degree as u64;
    let results: Vec<(Divisor, Status)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, stream, t as u64);
            let b = curve.random_divisor_with(degree, false, &mut rng);
            is_canonical_pair(curve, &b).map(|f| (b, f.status))
        })
        .collect::<Result<_>>()?;
    let count = |s: Status| results.iter().filter(|r| r.1 == s).count();
    let canonical = count(Status::Holds);
    let not_canonical = count(Status::Fails);
    let pick = |s: Status| results.iter().filter(|r| r.1 == s).take(KEEP).map(|r| r.0.clone()).collect();
    let g = curve.genus() as i64;
    let constructed = if curve.is_odd_model() && 2 * degree <= 5 * (g - 1) && degree >= 2 * g - 2 {
        Some(construct_low_range(curve, degree, trials.min(20), seed)?)
    } else {
        None
    };
    let determinate = canonical + not_canonical;
    Ok(ExistenceScan {
        degree,
        trials,
        canonical,
        not_canonical,
        indeterminate: count(Status::Indeterminate),
        fraction: if determinate == 0 { 0.0 } else { canonical as f64 / determinate as f64 },
        witnesses: pick(Status::Holds),
        counterexamples: pick(Status::Fails),
        constructed,
    })
}

fn construct_low_range(curve: &CurveModel, degree: i64, attempts: usize, seed: u64) -> Result<Constructed> {
    let g = curve.genus() as i64;
    let jac = Jacobian::new(curve)?;
    let k = curve.canonical_divisor()?;
    let a_deg = 2 * degree - 4 * (g - 1);
    let inf = Divisor::from_terms([(Point::Infinity(0), degree)]);
    let mut out = Constructed::default();
    let stream = crate::seed::stream_id("existence-low") ^ degree as u64;
    let mut seen = std::collections::BTreeSet::new();
    for t in 0..attempts {
        let mut rng = trial_rng(seed, stream, t as u64);
        let a = curve.random_divisor_with(a_deg, false, &mut rng);
        out.attempts += 1;
        let target = jac.class_of(&(&k.scale(2) + &a))?;
        let halves = match jac.square_roots(&target) {
            Ok(h) => h,
            Err(Error::Budget(_)) => {
                out.partial = true;
                break;
            }
            Err(e) => return Err(e),
        };
        for x in halves {
            if !seen.insert(format!("{x:?}")) {
                continue;
            }
            out.halves += 1;
            let Ok(rep) = jac.rational_representative(curve, &x) else { continue };
            if is_canonical_pair(curve, &(&rep + &inf))?.holds() {
                out.canonical += 1;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveExistence {
    pub degree: i64,
    pub classes: usize,
    pub canonical: usize,
    pub not_canonical: usize,
    pub indeterminate: usize,
    pub canonical_classes: Vec<Divisor>,
}

/// [`is_canonical_pair`] on every rational class of the given degree
/// (odd models; the classes are shifted by multiples of infinity).
pub fn existence_exhaustive(curve: &CurveModel, degree: i64) -> Result<ExhaustiveExistence> {
    let jac = Jacobian::new(curve)?;
    let inf = Divisor::from_terms([(Point::Infinity(0), degree)]);
    let classes = jac.elements()?;
    let verdicts: Vec<(Option<Divisor>, Status)> = classes
        .par_iter()
        .map(|c| match jac.rational_representative(curve, c) {
            Ok(rep) => {
                let b = &rep + &inf;
                is_canonical_pair(curve, &b).map(|f| (Some(b), f.status))
            }
            Err(Error::NonRational(_)) => Ok((None, Status::Indeterminate)),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let count = |s: Status| verdicts.iter().filter(|r| r.1 == s).count();
    Ok(ExhaustiveExistence {
        degree,
        classes: classes.len(),
        canonical: count(Status::Holds),
        not_canonical: count(Status::Fails),
        indeterminate: count(Status::Indeterminate),
        canonical_classes: verdicts.into_iter().filter(|r| r.1 == Status::Holds).filter_map(|r| r.0).collect(),
    })
}

/// Whether a set of distinct points is special for its size: two points
/// exchanged by the hyperelliptic involution, or `d - 1` collinear points on
/// a plane curve of degree `d`.
pub fn is_special_configuration(curve: &CurveModel, pts: &[Point]) -> bool {
    match curve.kind() {
        CurveKind::Hyperelliptic { .. } if curve.genus() >= 2 => pts.iter().enumerate().any(|(i, a)| {
            pts[i + 1..].iter().any(|b| match (a, b) {
                (Point::Affine(x1, y1), Point::Affine(x2, y2)) => x1 == x2 && *y1 == -*y2,
                (Point::Infinity(_), Point::Infinity(_)) => true,
                _ => false,
            })
        }),
        CurveKind::Plane { degree, .. } if *degree >= 4 => {
            let need = degree - 1;
            pts.len() >= need && subsets(pts.len(), need).any(|s| collinear(curve, &s.iter().map(|&i| pts[i]).collect::<Vec<_>>()))
        }
        _ => false,
    }
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).filter(move |m| m.count_ones() as usize == k).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

/// Collinearity in the projective plane; a rational point at infinity with
/// value `s` is the direction `(1, s)` of the model.
fn collinear(curve: &CurveModel, pts: &[Point]) -> bool {
    let p = curve.modulus();
    let zero = crate::algebra::Fp::zero(p);
    let one = crate::algebra::Fp::one(p);
    let hom: Vec<[crate::algebra::Fp; 3]> = pts
        .iter()
        .map(|pt| match *pt {
            Point::Affine(x, y) => [x, y, one],
            Point::Infinity(i) => [one, curve.infinity_values()[i], zero],
        })
        .collect();
    let rows: Vec<Vec<_>> = hom.iter().map(|r| r.to_vec()).collect();
    crate::algebra::Matrix::from_rows(&rows, 3, p).rank() <= 2
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyProbe {
    pub degree: usize,
    pub samples: usize,
    /// Special configurations skipped for `a <= g`.
    pub excluded: usize,
    pub smooth: usize,
    pub base_point_free: usize,
    pub nonspecial: usize,
    pub speciality: BTreeMap<usize, usize>,
}

/// Statistics over effective divisors of degree `a`. For `a <= g` the
/// samples are sets of distinct points outside the special configurations.
pub fn divisor_family_probe(curve: &CurveModel, a: usize, trials: usize, seed: u64) -> Result<FamilyProbe> {
    let g = curve.genus();
    let stream = crate::seed::stream_id("family") ^ a as u64;
    let rows: Vec<Option<(bool, bool, usize)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, stream, t as u64);
            let d = if a <= g {
                let Some(d) = curve.random_reduced_divisor(a, &mut rng) else { return Ok(None) };
                if is_special_configuration(curve, &d.support()) {
                    return Ok(None);
                }
                d
            } else {
                curve.random_divisor_with(a as i64, false, &mut rng)
            };
            let smooth = is_smooth_system(curve, &d)?;
            let bpf = base_locus(curve, &d)?.is_zero();
            Ok(Some((smooth, bpf, h1(curve, &d)?)))
        })
        .collect::<Result<_>>()?;
    let mut out = FamilyProbe { degree: a, ..Default::default() };
    for r in rows {
        match r {
            None => out.excluded += 1,
            Some((smooth, bpf, s)) => {
                out.samples += 1;
                out.smooth += smooth as usize;
                out.base_point_free += bpf as usize;
                out.nonspecial += (s == 0) as usize;
                *out.speciality.entry(s).or_default() += 1;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionSpeciality {
    /// Dimension of the span of the points in canonical space.
    pub span_dim: i64,
    /// Speciality gained by projecting from that span.
    pub i_new: i64,
}

/// Span of distinct points under the canonical embedding, checked against
/// `dim <A> = deg A - h0(A)`.
pub fn projection_speciality(curve: &CurveModel, pts: &[Point]) -> Result<ProjectionSpeciality> {
    if curve.hyperelliptic_poly().is_some() || curve.genus() < 3 {
        return Err(Error::Unsupported("the canonical map of this model is not an embedding".into()));
    }
    let a = Divisor::from_terms(pts.iter().map(|p| (*p, 1)));
    if a.degree() as usize != pts.len() || !a.is_effective() {
        return Err(Error::Domain("the points must be distinct".into()));
    }
    let kb = rr_space(curve, &curve.canonical_divisor()?)?;
    let rows = pts.iter().map(|pt| image_of_point(curve, &kb, pt)).collect::<Result<Vec<_>>>()?;
    let rank = if rows.is_empty() { 0 } else { crate::algebra::Matrix::from_rows(&rows, kb.h0(), curve.modulus()).rank() };
    let span_dim = rank as i64 - 1;
    let i_new = 1 + pts.len() as i64 - (span_dim + 1);
    let h = h0(curve, &a)? as i64;
    if span_dim != a.degree() - h || i_new != h {
        return Err(Error::Consistency(format!("span of {a} has dimension {span_dim}, but h0 = {h}")));
    }
    Ok(ProjectionSpeciality { span_dim, i_new })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(6, 3), 20);
    }
}
