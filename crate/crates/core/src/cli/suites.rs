//! One runner per suite. Each returns its records in a fixed order; trials
//! run in parallel and are folded back by index.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::cover::{random_admissible, DoubleCover, ProjectionState};
use crate::curve::{CurveModel, Divisor, Point};
use crate::error::Error;
use crate::jacobian::Jacobian;
use crate::multmap::{corank, corank_additivity_check, green_hypothesis, pencil_trick_kernel_check, NormalityVerdict};
use crate::riemann_roch::{h0, h0_unchecked};
use crate::scroll::{
    classify_bisecant, defines_canonical_scroll, divisor_family_probe, existence_exhaustive, existence_scan,
    is_canonical_pair, normality_verdict, projection_speciality, PolarizedScroll, RuledSurface, Status,
};
use crate::seed::{stream_id, trial_rng};

use super::config::{Resolved, SuiteSpec};
use super::report::{Record, SuiteReport, Verdict};
use super::CliError;

type Out = Result<Vec<Record>, CliError>;

/// Library errors: consistency failures keep their meaning, anything else
/// means the suite was pointed at input it cannot handle.
fn lib(suite: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| match e {
        Error::Consistency(m) => CliError::Consistency(format!("{suite}: {m}")),
        other => CliError::Schema(format!("{suite}: {other}")),
    }
}

fn tally(check: String, ok: usize, n: usize, anchor: &str) -> Record {
    Record::new(check, format!("{n}/{n}"), format!("{ok}/{n}"), Verdict::from_bool(ok == n), anchor)
}

fn status_verdict(s: Status) -> Verdict {
    match s {
        Status::Indeterminate => Verdict::Indeterminate,
        _ => Verdict::Pass,
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Indeterminate => "indeterminate",
    }
}

fn need_points(curve: &CurveModel, name: &str) -> Result<(), CliError> {
    if curve.enumerate_points().is_empty() {
        return Err(CliError::Schema(format!("curve '{name}' has no rational points")));
    }
    Ok(())
}

pub fn run(spec: &SuiteSpec, res: &Resolved, seed: u64, k_max: usize) -> Result<SuiteReport, CliError> {
    let records = match spec {
        SuiteSpec::Rr { curves, trials } => rr(res, curves, *trials, seed),
        SuiteSpec::Equiv { curve, trials } => equiv(res, curve, *trials, seed),
        SuiteSpec::Canonical { divisors, sample } => canonical(res, divisors, sample.as_ref(), seed),
        SuiteSpec::Classify { curve, degrees } => classify(res, curve, degrees),
        SuiteSpec::Existence { curve, degrees, trials, exhaustive, min_fraction, family } => {
            existence(res, curve, degrees, *trials, *exhaustive, *min_fraction, family, seed)
        }
        SuiteSpec::Cover { p, degrees, count, m_trials } => cover(*p, degrees, *count, *m_trials, seed),
        SuiteSpec::Normality { divisors } => normality(res, divisors, k_max),
        SuiteSpec::Projection { curve, trials, cover } => projection(res, curve, *trials, cover.as_deref(), seed),
        SuiteSpec::FixedSpaces { divisors } => fixed_spaces(res, divisors),
    }?;
    Ok(SuiteReport::new(spec.name(), records))
}

fn rr(res: &Resolved, curves: &[String], trials: usize, seed: u64) -> Out {
    let mut out = Vec::new();
    for name in curves {
        let curve = res.curve(name)?;
        need_points(curve, name)?;
        let g = curve.genus() as i64;
        let k = curve.canonical_divisor().map_err(lib("rr"))?;
        let stream = stream_id(&format!("rr:{name}"));
        let ok: Vec<bool> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, stream, t as u64);
                let deg = rng.gen_range(-2..=2 * g + 2);
                let d = curve.random_divisor_with(deg, true, &mut rng);
                let a = h0_unchecked(curve, &d)? as i64;
                let b = h0_unchecked(curve, &(&k - &d))? as i64;
                Ok(a - b == d.degree() - g + 1)
            })
            .collect::<crate::Result<_>>()
            .map_err(lib("rr"))?;
        out.push(tally(format!("rr-identity[{name}]"), ok.iter().filter(|&&b| b).count(), trials, "riemann-roch"));
        let hk = h0(curve, &k).map_err(lib("rr"))?;
        out.push(Record::compare(format!("canonical-class[{name}]"), format!("deg {} h0 {g}", 2 * g - 2), format!("deg {} h0 {hk}", k.degree()), "riemann-roch"));
    }
    Ok(out)
}

fn equiv(res: &Resolved, name: &str, trials: usize, seed: u64) -> Out {
    let curve = res.curve(name)?;
    if !curve.is_odd_model() {
        return Err(CliError::Schema(format!("equiv: curve '{name}' is not an odd hyperelliptic model")));
    }
    need_points(curve, name)?;
    let jac = Jacobian::new(curve).map_err(lib("equiv"))?;
    let inf = curve.infinity_fiber().map_err(lib("equiv"))?.ok_or_else(|| CliError::Schema("equiv: no rational fibre at infinity".into()))?;
    let xs: Vec<_> = curve.enumerate_points().iter().filter_map(|p| p.x()).collect();
    let stream = stream_id("equiv");
    let rows: Vec<(bool, bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, stream, t as u64);
            let d1 = &curve.random_divisor_with(2, false, &mut rng) - &curve.random_divisor_with(2, false, &mut rng);
            let shift = rng.gen_bool(0.5);
            let fibre = xs.choose(&mut rng).map(|&c| curve.x_fiber(c)).transpose()?.flatten();
            let (built, d2) = match (shift, fibre) {
                (true, Some(f)) => (true, &(&d1 + &f) - &inf),
                _ => (false, &curve.random_divisor_with(2, false, &mut rng) - &curve.random_divisor_with(2, false, &mut rng)),
            };
            let diff = &d1 - &d2;
            let cantor = jac.class_of(&diff)?.is_identity();
            let by_rr = h0_unchecked(curve, &diff)? == 1;
            let constructed = !built || (cantor && by_rr);
            Ok((cantor == by_rr, cantor, constructed))
        })
        .collect::<crate::Result<_>>()
        .map_err(lib("equiv"))?;
    let agree = rows.iter().filter(|r| r.0).count();
    let equivalent = rows.iter().filter(|r| r.1).count();
    Ok(vec![
        tally(format!("cantor-vs-h0[{name}]"), agree, trials, "equivalence"),
        Record::new(format!("equivalent-pairs[{name}]"), "at least 1", equivalent, Verdict::from_bool(equivalent > 0), "equivalence"),
        tally(format!("principal-shift[{name}]"), rows.iter().filter(|r| r.2).count(), trials, "equivalence"),
    ])
}

fn canonical(res: &Resolved, divisors: &[String], sample: Option<&super::config::Sampling>, seed: u64) -> Out {
    let err = lib("canonical");
    let mut out = Vec::new();
    for name in divisors {
        let (curve, b) = res.divisor(name)?;
        let g = curve.genus() as i64;
        let pair = is_canonical_pair(curve, b).map_err(&err)?;
        let high = b.degree() >= 3 * g - 2;
        let rec = if pair.status == Status::Indeterminate {
            Record::new(format!("canonical-pair[{name}]"), if high { "holds" } else { "-" }, pair.reason.clone(), Verdict::Indeterminate, "existence.smooth-class")
        } else if high {
            Record::compare(format!("canonical-pair[{name}]"), "holds", status_word(pair.status), "existence.high-degree")
        } else {
            Record::new(format!("canonical-pair[{name}]"), "-", format!("{}: {}", status_word(pair.status), pair.reason), Verdict::Pass, "existence.smooth-class")
        };
        out.push(rec);
        if !pair.holds() {
            continue;
        }
        let scroll = defines_canonical_scroll(curve, b).map_err(&err)?;
        let observed = match scroll.exception {
            Some(e) => format!("{} ({e:?})", status_word(scroll.status)),
            None => status_word(scroll.status).to_string(),
        };
        out.push(Record::new(format!("canonical-scroll[{name}]"), "-", observed, status_verdict(scroll.status), "scroll.exceptions"));
        let ps = PolarizedScroll::canonical(curve, b).map_err(&err)?;
        out.push(Record::compare(format!("speciality[{name}]"), 1, ps.speciality().map_err(&err)?, "scroll.speciality-one"));
        out.push(Record::compare(format!("linearly-normal[{name}]"), 0, ps.hypersurface_count(1).map_err(&err)?, "scroll.hypersurface-count"));
    }
    if let Some(s) = sample {
        let curve = res.curve(&s.curve)?;
        need_points(curve, &s.curve)?;
        for &deg in &s.degrees {
            let stream = stream_id(&format!("canonical:{}:{deg}", s.curve));
            let rows: Vec<Option<bool>> = (0..s.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(seed, stream, t as u64);
                    let b = curve.random_divisor_with(deg, false, &mut rng);
                    if !is_canonical_pair(curve, &b)?.holds() {
                        return Ok(None);
                    }
                    Ok(Some(PolarizedScroll::canonical(curve, &b)?.speciality()? == 1))
                })
                .collect::<crate::Result<_>>()
                .map_err(&err)?;
            let pairs: Vec<bool> = rows.into_iter().flatten().collect();
            let ok = pairs.iter().filter(|&&b| b).count();
            out.push(tally(format!("sampled-speciality[{},deg {deg}]", s.curve), ok, pairs.len(), "scroll.speciality-one"));
        }
    }
    Ok(out)
}

fn classify(res: &Resolved, name: &str, degrees: &[i64]) -> Out {
    let err = lib("classify");
    let curve = res.curve(name)?;
    if !curve.is_odd_model() {
        return Err(CliError::Schema(format!("classify: curve '{name}' is not an odd hyperelliptic model")));
    }
    let mut out = Vec::new();
    for &deg in degrees {
        let ex = existence_exhaustive(curve, deg).map_err(&err)?;
        let verdicts = ex
            .canonical_classes
            .par_iter()
            .map(|b| classify_bisecant(curve, b))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(&err)?;
        let decided = verdicts.iter().filter(|v| v.criterion.is_some() && v.case != crate::scroll::BisecantCase::Unresolved).count();
        let hyper = verdicts.iter().filter(|v| v.hyperelliptic_c == Some(true)).count();
        out.push(tally(format!("criterion-vs-cases[{name},deg {deg}]"), decided, verdicts.len(), "bisecant.classification"));
        out.push(Record::new(
            format!("hyperelliptic-bisecant[{name},deg {deg}]"),
            "-",
            format!("{hyper} of {} canonical classes ({} classes in total)", verdicts.len(), ex.classes),
            if ex.indeterminate > 0 { Verdict::Indeterminate } else { Verdict::Pass },
            "bisecant.classification",
        ));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn existence(
    res: &Resolved,
    name: &str,
    degrees: &[i64],
    trials: usize,
    exhaustive: bool,
    min_fraction: Option<f64>,
    family: &[usize],
    seed: u64,
) -> Out {
    let err = lib("existence");
    let curve = res.curve(name)?;
    need_points(curve, name)?;
    let g = curve.genus() as i64;
    let mut out = Vec::new();
    for &deg in degrees {
        let scan = existence_scan(curve, deg, trials, seed).map_err(&err)?;
        let observed = format!(
            "{:.4} ({} canonical, {} not, {} indeterminate)",
            scan.fraction, scan.canonical, scan.not_canonical, scan.indeterminate
        );
        let check = format!("canonical-fraction[{name},deg {deg}]");
        out.push(if deg >= 3 * g - 2 {
            let v = Verdict::from_bool(scan.canonical == trials);
            Record::new(check, "1.0000", observed, v, "existence.high-degree")
        } else if 2 * deg > 5 * (g - 1) {
            match min_fraction {
                Some(m) => Record::new(check, format!(">= {m:.4}"), observed, Verdict::from_bool(scan.fraction >= m), "existence.generic"),
                None => Record::new(check, "-", observed, Verdict::Pass, "existence.generic"),
            }
        } else {
            Record::new(check, "-", observed, Verdict::Pass, "existence.low-range")
        });
        if let Some(c) = &scan.constructed {
            let v = if c.canonical > 0 {
                Verdict::Pass
            } else if c.partial {
                Verdict::Indeterminate
            } else {
                Verdict::Fail
            };
            out.push(Record::new(
                format!("constructed[{name},deg {deg}]"),
                "at least 1 canonical class",
                format!("{} canonical of {} halves", c.canonical, c.halves),
                v,
                "existence.halving",
            ));
        }
        if exhaustive {
            let ex = existence_exhaustive(curve, deg).map_err(&err)?;
            let observed = format!("{} of {} classes ({} indeterminate)", ex.canonical, ex.classes, ex.indeterminate);
            let check = format!("exhaustive[{name},deg {deg}]");
            out.push(if deg == 2 * g - 2 {
                let torsion = Jacobian::new(curve).and_then(|j| j.two_torsion()).map_err(&err)?.len();
                let v = if ex.indeterminate > 0 { Verdict::Indeterminate } else { Verdict::from_bool(ex.canonical + 1 == torsion) };
                Record::new(check, format!("{} of {} classes", torsion - 1, ex.classes), observed, v, "existence.two-torsion")
            } else if deg >= 3 * g - 2 {
                Record::new(check, format!("{0} of {0} classes", ex.classes), observed, Verdict::from_bool(ex.canonical == ex.classes), "existence.high-degree")
            } else {
                Record::new(check, "-", observed, Verdict::Pass, "existence.low-range")
            });
        }
    }
    for &a in family {
        let probe = divisor_family_probe(curve, a, trials, seed).map_err(&err)?;
        let n = probe.samples;
        if a as i64 >= 2 * g - 1 {
            out.push(tally(format!("family-smooth[{name},deg {a}]"), probe.smooth, n, "smoothness.large-degree"));
        } else if a as i64 <= g {
            let want = (g - a as i64) as usize;
            let ok = probe.speciality.get(&want).copied().unwrap_or(0);
            out.push(Record::new(
                format!("family-speciality[{name},deg {a}]"),
                format!("speciality {want} on {n}/{n}"),
                format!("speciality {want} on {ok}/{n} ({} excluded)", probe.excluded),
                Verdict::from_bool(ok == n),
                "smoothness.general-points",
            ));
        } else {
            out.push(Record::new(
                format!("family-smooth[{name},deg {a}]"),
                "-",
                format!("{}/{n} smooth, {}/{n} base-point-free", probe.smooth, probe.base_point_free),
                Verdict::Pass,
                "smoothness.intermediate",
            ));
        }
    }
    Ok(out)
}

#[derive(Default)]
struct CoverRow {
    hurwitz: bool,
    branch: bool,
    canonical: bool,
    projection: usize,
    projection_h1: usize,
    genus_set: bool,
    diagram: bool,
    segre: bool,
}

fn cover_row(g: &crate::algebra::Poly, m_trials: usize, seed: u64, stream: u64) -> crate::Result<CoverRow> {
    let c = DoubleCover::new(g)?;
    let mut rng = trial_rng(seed, stream, 0);
    let e = c.pushforward_twist(&mut rng)?;
    let (b, _) = c.branch_and_ramification()?;
    let mut row = CoverRow {
        hurwitz: c.hurwitz(),
        branch: crate::jacobian::is_equivalent(&c.x, &e.scale(-2), &b)?,
        canonical: c.canonical_formula()?,
        genus_set: c.involution_genus_check(),
        diagram: c.h1_diagram_check()?,
        segre: c.verify_segre(&e)?,
        ..Default::default()
    };
    for t in 0..m_trials {
        let mut rng = trial_rng(seed, stream, 1 + t as u64);
        let m = c.random_liftable(&mut rng);
        row.projection += c.projection_formula(&e, &m)? as usize;
        row.projection_h1 += c.projection_formula_h1(&e, &m)? as usize;
    }
    Ok(row)
}

fn cover(p: u32, degrees: &[usize], count: usize, m_trials: usize, seed: u64) -> Out {
    let err = lib("cover");
    if degrees.is_empty() {
        return Err(CliError::Schema("cover: degrees must not be empty".into()));
    }
    if !crate::algebra::is_prime(p) || p < 3 {
        return Err(CliError::Schema(format!("cover: p = {p} is not an odd prime")));
    }
    let stream = stream_id("cover");
    let polys = (0..count)
        .map(|i| random_admissible(degrees[i % degrees.len()], p, &mut trial_rng(seed, stream, i as u64)))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(&err)?;
    let rows = polys
        .par_iter()
        .enumerate()
        .map(|(i, g)| cover_row(g, m_trials, seed, stream_id(&format!("cover:{i}"))))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(&err)?;
    let n = rows.len();
    let count_of = |f: fn(&CoverRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let polys_seen = polys.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; ");
    Ok(vec![
        Record::new("covers", count, polys_seen, Verdict::from_bool(n == count), "cover.family"),
        tally("hurwitz".into(), count_of(|r| r.hurwitz), n, "cover.hurwitz"),
        tally("minus-two-e-is-branch".into(), count_of(|r| r.branch), n, "cover.twist"),
        tally("canonical-formula".into(), count_of(|r| r.canonical), n, "cover.canonical"),
        tally("projection-formula-h0".into(), rows.iter().map(|r| r.projection).sum(), n * m_trials, "cover.projection-formula"),
        tally("projection-formula-h1".into(), rows.iter().map(|r| r.projection_h1).sum(), n * m_trials, "cover.projection-formula"),
        tally("involution-genus".into(), count_of(|r| r.genus_set), n, "cover.involution-genus"),
        tally("pencil-diagram".into(), count_of(|r| r.diagram), n, "cover.pencil-diagram"),
        tally("segre-speciality".into(), count_of(|r| r.segre), n, "cover.segre"),
    ])
}

fn verdict_word(v: &NormalityVerdict) -> String {
    match v {
        NormalityVerdict::ProjectivelyNormal => "projectively normal".into(),
        NormalityVerdict::NotProjectivelyNormal { k } => format!("not projectively normal (k = {k})"),
        NormalityVerdict::Undetermined => "undetermined".into(),
    }
}

fn normality(res: &Resolved, divisors: &[String], k_max: usize) -> Out {
    let err = lib("normality");
    let mut out = Vec::new();
    for name in divisors {
        let (curve, b) = res.divisor(name)?;
        let check = defines_canonical_scroll(curve, b).map_err(&err)?;
        match check.status {
            Status::Holds => {}
            Status::Indeterminate => {
                out.push(Record::new(format!("normality[{name}]"), "-", check.reason, Verdict::Indeterminate, "normality.canonical-scroll"));
                continue;
            }
            Status::Fails => {
                return Err(CliError::Schema(format!("normality: '{name}' does not define a canonical scroll: {}", check.reason)));
            }
        }
        let scroll = PolarizedScroll::canonical(curve, b).map_err(&err)?;
        let pc = scroll.principal_check().map_err(&err)?;
        out.push(Record::new(
            format!("principal-decomposition[{name}]"),
            "mixed 0, total = K-side + b-side",
            format!("terms {:?}, total {}", pc.table.terms, pc.table.total),
            Verdict::from_bool(pc.holds),
            "normality.decomposition",
        ));
        let g = curve.genus() as i64;
        let nv = normality_verdict(curve, b, k_max).map_err(&err)?;
        let mut observed = verdict_word(&nv.verdict);
        if let Some(f) = nv.failure {
            observed.push_str(&format!(", K-side {}, b-side {}, mixed {}", f.k_side, f.b_side, f.mixed));
        }
        let (expected, anchor) = if curve.is_elliptic() {
            (Some("projectively normal"), "normality.elliptic")
        } else if curve.is_hyperelliptic() {
            (Some("not projectively normal"), "normality.hyperelliptic")
        } else if b.degree() > 2 * g {
            (Some("projectively normal"), "normality.nonhyperelliptic")
        } else {
            (None, "normality.nonhyperelliptic")
        };
        let rec = match expected {
            Some(e) => {
                let mut ok = observed.starts_with(e) && !(e == "projectively normal" && observed.starts_with("not"));
                if e.starts_with("not") {
                    ok = ok && nv.failure.is_some_and(|f| f.k_side > 0);
                }
                let e = if e.starts_with("not") { "not projectively normal, K-side" } else { e };
                Record::new(format!("normality[{name}]"), e, observed, Verdict::from_bool(ok), anchor)
            }
            None => Record::new(format!("normality[{name}]"), "-", observed, Verdict::Pass, anchor),
        };
        out.push(rec);
    }
    Ok(out)
}

fn projection(res: &Resolved, name: &str, trials: usize, cover_poly: Option<&[i64]>, seed: u64) -> Out {
    let err = lib("projection");
    let curve = res.curve(name)?;
    need_points(curve, name)?;
    let g = curve.genus();
    let pts = curve.enumerate_points();
    let stream = stream_id(&format!("projection:{name}"));
    let rows: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, stream, t as u64);
            let r = rng.gen_range(1..=(2 * g).min(pts.len()));
            let set: Vec<Point> = pts.choose_multiple(&mut rng, r).copied().collect();
            let a = Divisor::from_terms(set.iter().map(|p| (*p, 1)));
            let s = projection_speciality(curve, &set)?;
            Ok(s.span_dim == a.degree() - h0(curve, &a)? as i64)
        })
        .collect::<crate::Result<_>>()
        .map_err(&err)?;
    let mut out = vec![tally(format!("span-dimension[{name}]"), rows.iter().filter(|&&b| b).count(), trials, "projection.geometric-rr")];
    if let Some(coeffs) = cover_poly {
        let g = crate::algebra::Poly::from_i64s(coeffs, curve.modulus());
        let c = DoubleCover::new(&g).map_err(&err)?;
        let e = c.pushforward_twist(&mut trial_rng(seed, stream_id("projection:cover"), 0)).map_err(&err)?;
        let kx = c.x.canonical_divisor().map_err(&err)?;
        let b = &kx - &e;
        let start = ProjectionState::new(&c).map_err(&err)?;
        let base = start.report().map_err(&err)?;
        let cpts = c.c.enumerate_points();
        let (mut round, mut twist, mut spec) = (0, 0, 0);
        for t in 0..trials {
            let mut rng = trial_rng(seed, stream_id("projection:cover"), 1 + t as u64);
            let x = *cpts.choose(&mut rng).unwrap();
            round += (start.project(&x).unproject(&x).report().map_err(&err)? == base) as usize;
            let m = c.random_liftable(&mut rng);
            let lhs = start.twist(&m).map_err(&err)?.report().map_err(&err)?.h0;
            let rhs = h0(&c.x, &(&b + &m)).map_err(&err)? + h0(&c.x, &(&kx + &m)).map_err(&err)?;
            twist += (lhs == rhs) as usize;
            let r = rng.gen_range(1..=c.c.genus().min(cpts.len()));
            let set: Vec<Point> = cpts.choose_multiple(&mut rng, r).copied().collect();
            let mut st = start.clone();
            for p in &set {
                st = st.project(p);
            }
            let a = Divisor::from_terms(set.iter().map(|p| (*p, 1)));
            spec += (st.report().map_err(&err)?.speciality == h0(&c.c, &a).map_err(&err)?) as usize;
        }
        out.push(tally("project-unproject".into(), round, trials, "projection.round-trip"));
        out.push(tally("twist-sections".into(), twist, trials, "projection.twist"));
        out.push(tally("projected-speciality".into(), spec, trials, "projection.speciality"));
    }
    Ok(out)
}

fn fixed_spaces(res: &Resolved, divisors: &[String]) -> Out {
    let err = lib("fixed-spaces");
    let mut out = Vec::new();
    for name in divisors {
        let (curve, b) = res.divisor(name)?;
        let e = &curve.canonical_divisor().map_err(&err)? - b;
        let dims = RuledSurface::new(curve, e.clone()).fixed_space_dims().map_err(&err)?;
        // sections of 2 X1 = 2 X0 - 2e f, summed over the fibre grading
        let surface = RuledSurface::new(curve, e.clone());
        let direct = surface.h0(2, &e.scale(-2)).map_err(&err)? as i64 - 1;
        out.push(Record::compare(format!("dim-bisecant-system[{name}]"), direct, dims.dim_2x1, "fixed-spaces.ledger"));
        let ledger = if dims.dim_f1 >= 0 { dims.dim_f0 + dims.dim_f1 + 1 } else { dims.dim_f0 };
        out.push(Record::new(
            format!("fixed-spaces[{name}]"),
            format!("dim F0 + dim F1 + 1 = {}", dims.dim_2x1),
            format!("dim F0 = {}, dim F1 = {}", dims.dim_f0, dims.dim_f1),
            Verdict::from_bool(ledger == dims.dim_2x1 || dims.dim_f1 < 0),
            "fixed-spaces.ledger",
        ));
        if is_canonical_pair(curve, b).map_err(&err)?.holds() {
            let ps = PolarizedScroll::canonical(curve, b).map_err(&err)?;
            let quadrics = ps.hypersurface_count(2).map_err(&err)?;
            out.push(Record::new(format!("quadrics[{name}]"), "-", quadrics, Verdict::Pass, "scroll.hypersurface-count"));
        }
        let s = corank(curve, &[b.clone(), b.clone()]).map_err(&err)?;
        let green = green_hypothesis(curve, b, b).map_err(&err)?;
        if green.holds {
            out.push(Record::compare(format!("green[{name}]"), 0, s.corank, "multiplication.green"));
        }
        if h0(curve, b).map_err(&err)? >= 2 {
            let k = curve.canonical_divisor().map_err(&err)?;
            let pc = pencil_trick_kernel_check(curve, b, &k).map_err(&err)?;
            out.push(Record::compare(format!("pencil-kernel[{name}]"), pc.expected, pc.kernel, "multiplication.pencil-trick"));
            let add = corank_additivity_check(curve, b, &k, std::slice::from_ref(b)).map_err(&err)?;
            if add.precondition {
                out.push(Record::compare(format!("additivity[{name}]"), add.rhs.unwrap(), add.lhs.unwrap(), "multiplication.additivity"));
            }
        }
    }
    Ok(out)
}
