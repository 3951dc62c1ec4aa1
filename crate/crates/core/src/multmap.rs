//! Coranks of multiplication maps `H0(D1) x ... x H0(Dk) -> H0(D1 + ... + Dk)`
//! and the lemmas used to predict when they vanish.

use crate::algebra::Matrix;
use crate::curve::{independent_subset, span_rank, CurveModel, Divisor, FunctionElem};
use crate::error::{Error, Result};
use crate::riemann_roch::{self, base_points, h0, h1, rr_space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultMapReport {
    pub factors: Vec<Divisor>,
    /// Product of the factor dimensions.
    pub domain: usize,
    pub target: usize,
    pub rank: usize,
    pub corank: usize,
    /// Some factor has no sections; the corank is then the whole target.
    pub degenerate: bool,
    /// Whether the evaluation check at rational points could be run.
    pub evaluation_checked: bool,
}

/// A basis of the span of all products `f1 * ... * fk` with `fi` from `bases[i]`.
pub fn product_span(curve: &CurveModel, bases: &[Vec<FunctionElem>]) -> Vec<FunctionElem> {
    let Some(first) = bases.first() else {
        return vec![FunctionElem::constant(curve, crate::algebra::Fp::one(curve.modulus()))];
    };
    let mut span = independent_subset(first);
    for basis in &bases[1..] {
        let prods: Vec<FunctionElem> = span.iter().flat_map(|a| basis.iter().map(move |b| a.mul(curve, b))).collect();
        span = independent_subset(&prods);
    }
    span
}

/// Rank of the values of `fs` at rational affine points where every
/// denominator is nonzero, or `None` when fewer than `need` such points exist.
fn evaluation_rank(curve: &CurveModel, fs: &[FunctionElem], avoid: &Divisor, need: usize) -> Option<usize> {
    let pts: Vec<_> = curve
        .enumerate_points()
        .iter()
        .filter(|pt| avoid.coeff(pt) == 0 && fs.iter().all(|f| f.eval(pt).is_some()))
        .copied()
        .collect();
    if pts.len() < need || fs.is_empty() {
        return None;
    }
    let rows: Vec<Vec<_>> = fs.iter().map(|f| pts.iter().map(|pt| f.eval(pt).unwrap()).collect()).collect();
    Some(Matrix::from_rows(&rows, pts.len(), curve.modulus()).rank())
}

pub fn corank(curve: &CurveModel, ds: &[Divisor]) -> Result<MultMapReport> {
    if ds.is_empty() {
        return Err(Error::Domain("corank needs at least one factor".into()));
    }
    let total = ds.iter().fold(Divisor::zero(), |acc, d| &acc + d);
    let target_basis = rr_space(curve, &total)?;
    let target = target_basis.h0();
    let mut bases = Vec::with_capacity(ds.len());
    for d in ds {
        bases.push(rr_space(curve, d)?.basis);
    }
    let domain: usize = bases.iter().map(Vec::len).product();
    if domain == 0 {
        return Ok(MultMapReport {
            factors: ds.to_vec(),
            domain,
            target,
            rank: 0,
            corank: target,
            degenerate: true,
            evaluation_checked: false,
        });
    }
    let span = product_span(curve, &bases);
    let rank = span.len();
    // every product must be a combination of the target basis
    let mut joint = target_basis.basis.clone();
    joint.extend(span.iter().cloned());
    if span_rank(&joint) != target {
        return Err(Error::Consistency(format!("a product of sections of {ds:?} lies outside L({total})")));
    }
    // second representation: values at more points than deg(total) are injective on L(total)
    let need = total.degree().max(0) as usize + 1;
        let evaluation_checked = match evaluation_rank(curve, &span, &total, need) {
        Some(r) if r != rank => {
            return Err(Error::Consistency(format!("evaluation rank {r} differs from coefficient rank {rank} for {ds:?}")));
        }
        Some(_) => true,
        None => false,
    };
    Ok(MultMapReport {
        factors: ds.to_vec(),
        domain,
        target,
        rank,
        corank: target - rank,
        degenerate: false,
        evaluation_checked,
    })
}

/// Outcome of a hypothesis check, with the reason when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub holds: bool,
    pub reason: String,
}

impl Hypothesis {
    fn yes(reason: impl Into<String>) -> Self {
        Hypothesis { holds: true, reason: reason.into() }
    }

    fn no(reason: impl Into<String>) -> Self {
        Hypothesis { holds: false, reason: reason.into() }
    }
}

/// Green's criterion for `s(a, b) = 0`: `b` effective and base-point-free and
/// `h1(a - b) <= h0(b) - 2`.
pub fn green_hypothesis(curve: &CurveModel, a: &Divisor, b: &Divisor) -> Result<Hypothesis> {
    if !(b.is_effective() || b.is_zero()) {
        return Ok(Hypothesis::no(format!("b = {b} is not effective")));
    }
    let bp = base_points(curve, b)?;
    if !bp.is_empty() {
        return Ok(Hypothesis::no(format!("b has base points {bp:?}")));
    }
    let lhs = h1(curve, &(a - b))? as i64;
    let rhs = h0(curve, b)? as i64 - 2;
    Ok(if lhs <= rhs {
        Hypothesis::yes(format!("h1(a-b) = {lhs} <= h0(b) - 2 = {rhs}"))
    } else {
        Hypothesis::no(format!("h1(a-b) = {lhs} > h0(b) - 2 = {rhs}"))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilCheck {
    pub kernel: usize,
    pub expected: usize,
    pub base_locus: Divisor,
    pub holds: bool,
}

/// Kernel of `V x H0(F) -> H0(F + L)` for the pencil `V` spanned by the
/// first two basis sections of `L`, against `h0(F - L + B)` with `B` the
/// base locus of the pencil (rational points only).
pub fn pencil_trick_kernel_check(curve: &CurveModel, l: &Divisor, f: &Divisor) -> Result<PencilCheck> {
    let lb = rr_space(curve, l)?;
    if lb.h0() < 2 {
        return Err(Error::Domain(format!("h0({l}) = {} < 2", lb.h0())));
    }
    let pencil = &lb.basis[..2];
    // B(P) = min over the pencil of v_P(s) + L(P)
    let mut base = Divisor::zero();
    for pt in curve.enumerate_points() {
        let m = pencil.iter().map(|s| s.valuation(curve, pt)).collect::<Result<Vec<_>>>()?;
        let mult = m.into_iter().min().unwrap() + l.coeff(pt);
        base.add_term(*pt, mult);
    }
    let fb = rr_space(curve, f)?;
    let prods: Vec<FunctionElem> = pencil.iter().flat_map(|s| fb.basis.iter().map(move |t| s.mul(curve, t))).collect();
    let rank = if prods.is_empty() { 0 } else { span_rank(&prods) };
    let kernel = prods.len() - rank;
    let expected = h0(curve, &(&(f - l) + &base))?;
    Ok(PencilCheck { kernel, expected, holds: kernel == expected, base_locus: base })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LangeCheck {
    pub drop_on_b1: bool,
    pub points_impose_on_b2: bool,
    pub residual_surjective: bool,
    pub holds: bool,
}

/// The three hypotheses under which `s(b1, b2) = 0` follows from
/// `a = a1 + ... + ad`.
pub fn lange_hypothesis(curve: &CurveModel, b1: &Divisor, b2: &Divisor, a: &Divisor) -> Result<LangeCheck> {
    if !(a.is_effective() || a.is_zero()) {
        return Err(Error::Domain(format!("a = {a} must be effective")));
    }
    let d = a.degree();
    let drop_on_b1 = h0(curve, &(b1 - a))? as i64 == h0(curve, b1)? as i64 - d;
    let h2 = h0(curve, b2)?;
    let mut points_impose_on_b2 = true;
    for pt in a.support() {
        if h0(curve, &(b2 - &Divisor::point(pt)))? + 1 != h2 {
            points_impose_on_b2 = false;
        }
    }
    let residual_surjective = corank(curve, &[b1 - a, b2.clone()])?.corank == 0;
    Ok(LangeCheck {
        drop_on_b1,
        points_impose_on_b2,
        residual_surjective,
        holds: drop_on_b1 && points_impose_on_b2 && residual_surjective,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityCheck {
    pub precondition: bool,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
    pub holds: bool,
}

/// `s(F1, F2, rest) = s(F1 + F2, rest)` when `s(F1, F2) = 0`; skipped otherwise.
pub fn corank_additivity_check(curve: &CurveModel, f1: &Divisor, f2: &Divisor, rest: &[Divisor]) -> Result<AdditivityCheck> {
    if corank(curve, &[f1.clone(), f2.clone()])?.corank != 0 {
        return Ok(AdditivityCheck { precondition: false, lhs: None, rhs: None, holds: false });
    }
    let mut left = vec![f1.clone(), f2.clone()];
    left.extend(rest.iter().cloned());
    let mut right = vec![f1 + f2];
    right.extend(rest.iter().cloned());
    let lhs = corank(curve, &left)?.corank;
    let rhs = corank(curve, &right)?.corank;
    Ok(AdditivityCheck { precondition: true, lhs: Some(lhs), rhs: Some(rhs), holds: lhs == rhs })
}

pub const DEFAULT_K_MAX: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalityVerdict {
    ProjectivelyNormal,
    /// The first `k` with a nonzero corank.
    NotProjectivelyNormal { k: usize },
    /// Coranks vanish up to `k_max` but the cutoff argument does not apply.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    /// `(k, corank of k copies of D)` for `2 <= k <= k_max`.
    pub coranks: Vec<(usize, usize)>,
    pub base_point_free: bool,
    pub birational: bool,
    /// The Green cutoff settles every `k > k_max`.
    pub extended: bool,
    pub verdict: NormalityVerdict,
}

/// Iterated self-coranks of `D`. If all vanish up to `k_max` and
/// `h1((k_max - 1) D) <= h0(D) - 2` with `|D|` base-point-free, Green's
/// criterion gives `s((k-1)D, D) = 0` for every larger `k`.
pub fn is_projectively_normal(curve: &CurveModel, d: &Divisor, k_max: usize) -> Result<NormalityReport> {
    let base_point_free = base_points(curve, d)?.is_empty();
    let birational = riemann_roch::map_degree(curve, d)?.1 == 1;
    let mut coranks = Vec::new();
    let mut first_failure = None;
    for k in 2..=k_max {
        let c = corank(curve, &vec![d.clone(); k])?.corank;
        coranks.push((k, c));
        if c != 0 && first_failure.is_none() {
            first_failure = Some(k);
        }
    }
    let h0d = h0(curve, d)? as i64;
    let extended = base_point_free && h1(curve, &d.scale(k_max.max(2) as i64 - 1))? as i64 <= h0d - 2;
    let verdict = match first_failure {
        Some(k) => NormalityVerdict::NotProjectivelyNormal { k },
        None if extended => NormalityVerdict::ProjectivelyNormal,
        None => NormalityVerdict::Undetermined,
    };
    Ok(NormalityReport { coranks, base_point_free, birational, extended, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    #[test]
    fn multiplication_by_constants() {
        let c = CurveModel::make_hyperelliptic(&Poly::from_i64s(&[0, -1, 0, 0, 0, 1], 7)).unwrap();
        let d = c.random_divisor(4, 1, false);
        let r = corank(&c, &[Divisor::zero(), d]).unwrap();
        assert_eq!(r.corank, 0);
        assert_eq!(r.rank, r.target);
    }
}
