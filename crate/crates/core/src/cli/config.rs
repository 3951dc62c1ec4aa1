//! JSON run configuration.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, BiPoly, Fp, Poly};
use crate::curve::{CurveModel, Divisor, Point};

use super::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Base seed; every randomized suite derives its trial streams from it.
    pub seed: u64,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    #[serde(default)]
    pub out: Option<String>,
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub divisors: Vec<DivisorSpec>,
    pub suites: Vec<SuiteSpec>,
}

fn default_k_max() -> usize {
    crate::multmap::DEFAULT_K_MAX
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CurveKindSpec {
    /// `y^2 = f(x)`, coefficients from the constant term up.
    Hyperelliptic { f: Vec<i64> },
    /// `q(x, y) = 0` as `[i, j, c]` terms `c x^i y^j`.
    Plane { terms: Vec<[i64; 3]> },
}

// `deny_unknown_fields` does not combine with `flatten`; the tagged kind
// still rejects stray keys.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveSpec {
    pub name: String,
    pub p: u32,
    #[serde(flatten)]
    pub kind: CurveKindSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    /// Affine coordinates in the coordinates of the declared equation.
    Coords([i64; 2]),
    /// `"inf"`, or `"inf1"`, `"inf2"`, ... for further points at infinity.
    Named(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointTerm {
    pub at: PointSpec,
    #[serde(default = "one")]
    pub mult: i64,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub degree: i64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSpec {
    pub name: String,
    pub curve: String,
    #[serde(default)]
    pub points: Vec<PointTerm>,
    #[serde(default)]
    pub random: Option<RandomSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    pub curve: String,
    pub degrees: Vec<i64>,
    pub trials: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "suite", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SuiteSpec {
    Rr {
        curves: Vec<String>,
        trials: usize,
    },
    Equiv {
        curve: String,
        trials: usize,
    },
    Canonical {
        #[serde(default)]
        divisors: Vec<String>,
        #[serde(default)]
        sample: Option<Sampling>,
    },
    Classify {
        curve: String,
        degrees: Vec<i64>,
    },
    Existence {
        curve: String,
        degrees: Vec<i64>,
        trials: usize,
        #[serde(default)]
        exhaustive: bool,
        /// Minimum canonical fraction expected below the range where every class qualifies.
        #[serde(default)]
        min_fraction: Option<f64>,
        /// Degrees for the effective-divisor family probe.
        #[serde(default)]
        family: Vec<usize>,
    },
    Cover {
        p: u32,
        degrees: Vec<usize>,
        count: usize,
        m_trials: usize,
    },
    Normality {
        divisors: Vec<String>,
    },
    Projection {
        curve: String,
        trials: usize,
        #[serde(default)]
        cover: Option<Vec<i64>>,
    },
    FixedSpaces {
        divisors: Vec<String>,
    },
}

impl SuiteSpec {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteSpec::Rr { .. } => "rr",
            SuiteSpec::Equiv { .. } => "equiv",
            SuiteSpec::Canonical { .. } => "canonical",
            SuiteSpec::Classify { .. } => "classify",
            SuiteSpec::Existence { .. } => "existence",
            SuiteSpec::Cover { .. } => "cover",
            SuiteSpec::Normality { .. } => "normality",
            SuiteSpec::Projection { .. } => "projection",
            SuiteSpec::FixedSpaces { .. } => "fixed-spaces",
        }
    }
}

pub const SUITE_NAMES: [&str; 9] =
    ["rr", "equiv", "canonical", "classify", "existence", "cover", "normality", "projection", "fixed-spaces"];

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(format!("config: {e}")))
    }

    /// Replace every field modulus, including those of cover suites.
    pub fn override_p(&mut self, p: u32) {
        for c in &mut self.curves {
            c.p = p;
        }
        for s in &mut self.suites {
            if let SuiteSpec::Cover { p: q, .. } = s {
                *q = p;
            }
        }
    }
}

/// Curves and divisors resolved from a validated configuration.
pub struct Resolved {
    pub curves: BTreeMap<String, CurveModel>,
    pub divisors: BTreeMap<String, (String, Divisor)>,
}

impl Resolved {
    pub fn curve(&self, name: &str) -> Result<&CurveModel, CliError> {
        self.curves.get(name).ok_or_else(|| CliError::Schema(format!("unknown curve '{name}'")))
    }

    pub fn divisor(&self, name: &str) -> Result<(&CurveModel, &Divisor), CliError> {
        let (c, d) = self.divisors.get(name).ok_or_else(|| CliError::Schema(format!("unknown divisor '{name}'")))?;
        Ok((self.curve(c)?, d))
    }
}

fn build_curve(spec: &CurveSpec) -> Result<CurveModel, CliError> {
    if !is_prime(spec.p) || spec.p < 3 {
        return Err(CliError::Schema(format!("curve '{}': p = {} is not an odd prime", spec.name, spec.p)));
    }
    let built = match &spec.kind {
        CurveKindSpec::Hyperelliptic { f } => CurveModel::make_hyperelliptic(&Poly::from_i64s(f, spec.p)),
        CurveKindSpec::Plane { terms } => {
            let t: Vec<(usize, usize, i64)> = terms
                .iter()
                .map(|&[i, j, c]| {
                    if i < 0 || j < 0 {
                        Err(CliError::Schema(format!("curve '{}': negative exponent", spec.name)))
                    } else {
                        Ok((i as usize, j as usize, c))
                    }
                })
                .collect::<Result<_, _>>()?;
            CurveModel::make_plane(&BiPoly::from_terms(&t, spec.p))
        }
    };
    built.map_err(|e| CliError::Schema(format!("curve '{}': {e}", spec.name)))
}

fn build_point(curve: &CurveModel, name: &str, at: &PointSpec) -> Result<Point, CliError> {
    let p = curve.modulus();
    let pt = match at {
        PointSpec::Coords([x, y]) => {
            let (x, y) = (Fp::new(*x, p), Fp::new(*y, p));
            if curve.hyperelliptic_poly().is_some() {
                Point::Affine(x, y)
            } else {
                curve.plane_point(x, y)
            }
        }
        PointSpec::Named(s) => {
            let idx = match s.strip_prefix("inf") {
                Some("") => 0,
                Some(n) => n.parse().map_err(|_| CliError::Schema(format!("divisor '{name}': bad point '{s}'")))?,
                None => return Err(CliError::Schema(format!("divisor '{name}': bad point '{s}'"))),
            };
            Point::Infinity(idx)
        }
    };
    if !curve.contains(&pt) {
        return Err(CliError::Schema(format!("divisor '{name}': {at:?} is not a rational point of the curve")));
    }
    Ok(pt)
}

pub fn resolve(cfg: &RunConfig) -> Result<Resolved, CliError> {
    let mut curves = BTreeMap::new();
    for spec in &cfg.curves {
        if curves.insert(spec.name.clone(), build_curve(spec)?).is_some() {
            return Err(CliError::Schema(format!("duplicate curve '{}'", spec.name)));
        }
    }
    let mut divisors = BTreeMap::new();
    for spec in &cfg.divisors {
        let curve = curves.get(&spec.curve).ok_or_else(|| CliError::Schema(format!("divisor '{}': unknown curve '{}'", spec.name, spec.curve)))?;
        let d = match (&spec.random, spec.points.is_empty()) {
            (Some(r), true) => curve.random_divisor(r.degree, r.seed, false),
            (None, _) => {
                let mut d = Divisor::zero();
                for t in &spec.points {
                    d.add_term(build_point(curve, &spec.name, &t.at)?, t.mult);
                }
                d
            }
            (Some(_), false) => {
                return Err(CliError::Schema(format!("divisor '{}': give either points or random, not both", spec.name)))
            }
        };
        if divisors.insert(spec.name.clone(), (spec.curve.clone(), d)).is_some() {
            return Err(CliError::Schema(format!("duplicate divisor '{}'", spec.name)));
        }
    }
    if cfg.k_max < 2 {
        return Err(CliError::Schema("k_max must be at least 2".into()));
    }
    Ok(Resolved { curves, divisors })
}
