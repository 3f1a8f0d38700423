//! Numerical checks of concrete candidate solutions.
//!
//! Candidates are affine maps `x -> r x + c` and power maps `x -> c x^rho`
//! on `(0, inf)` subintervals. Residuals of an equation are sampled on a
//! grid over the candidate's domain and compared with a scale built from
//! the same terms, giving a three-valued verdict.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boros;
use crate::reduction::Direction;
use crate::{Error, Interval, IterativeEquation, Result};

pub const DEFAULT_GRID: usize = 257;
pub const DEFAULT_TOL: f64 = 1e-9;
/// Residuals above `REFUTE_FACTOR * tol * scale` refute.
pub const REFUTE_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Affine { slope: f64, intercept: f64 },
    Power { coefficient: f64, exponent: f64 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Affine { slope, intercept } => write!(f, "affine:{slope},{intercept}"),
            Family::Power {
                coefficient,
                exponent,
            } => write!(f, "power:{coefficient},{exponent}"),
        }
    }
}

/// `affine:r,c` or `power:c,rho`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidCandidate(format!("expected `affine:r,c` or `power:c,rho`, got `{s}`"))
        };
        let (kind, params) = s.trim().split_once(':').ok_or_else(bad)?;
        let values: Vec<f64> = params
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let [a, b] = values[..] else {
            return Err(bad());
        };
        match kind.trim().to_ascii_lowercase().as_str() {
            "affine" => Ok(Family::Affine {
                slope: a,
                intercept: b,
            }),
            "power" => Ok(Family::Power {
                coefficient: a,
                exponent: b,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct RawCandidate {
    #[serde(flatten)]
    family: Family,
    domain: Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCandidate", into = "RawCandidate")]
pub struct CandidateFunction {
    family: Family,
    domain: Interval,
}

impl TryFrom<RawCandidate> for CandidateFunction {
    type Error = Error;

    fn try_from(raw: RawCandidate) -> Result<Self> {
        CandidateFunction::new(raw.family, raw.domain)
    }
}

impl From<CandidateFunction> for RawCandidate {
    fn from(c: CandidateFunction) -> Self {
        RawCandidate {
            family: c.family,
            domain: c.domain,
        }
    }
}

impl CandidateFunction {
    pub fn new(family: Family, domain: Interval) -> Result<Self> {
        match family {
            Family::Affine { slope, intercept } => {
                if !slope.is_finite() || !intercept.is_finite() {
                    return Err(Error::InvalidCandidate("non-finite parameter".into()));
                }
                if slope == 0.0 {
                    return Err(Error::InvalidCandidate(
                        "affine slope must be nonzero".into(),
                    ));
                }
            }
            Family::Power {
                coefficient,
                exponent,
            } => {
                if !coefficient.is_finite() || !exponent.is_finite() {
                    return Err(Error::InvalidCandidate("non-finite parameter".into()));
                }
                if !(coefficient > 0.0) {
                    return Err(Error::InvalidCandidate(
                        "power coefficient must be positive".into(),
                    ));
                }
                if !domain.is_positive() {
                    return Err(Error::InvalidCandidate(format!(
                        "power maps need a domain inside (0,inf), got {domain}"
                    )));
                }
            }
        }
        Ok(CandidateFunction { family, domain })
    }

    pub fn affine(slope: f64, intercept: f64, domain: Interval) -> Result<Self> {
        Self::new(Family::Affine { slope, intercept }, domain)
    }

    pub fn power(coefficient: f64, exponent: f64, domain: Interval) -> Result<Self> {
        Self::new(
            Family::Power {
                coefficient,
                exponent,
            },
            domain,
        )
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn apply(&self, x: f64) -> f64 {
        match self.family {
            Family::Affine { slope, intercept } => slope * x + intercept,
            Family::Power {
                coefficient,
                exponent,
            } => coefficient * x.powf(exponent),
        }
    }

    /// Direction read off the parameters.
    pub fn direction(&self) -> Option<Direction> {
        let s = match self.family {
            Family::Affine { slope, .. } => slope,
            Family::Power { exponent, .. } => exponent,
        };
        if s > 0.0 {
            Some(Direction::Increasing)
        } else if s < 0.0 {
            Some(Direction::Decreasing)
        } else {
            None
        }
    }

    /// Whether the parameters alone make the map onto its domain: nonzero
    /// slope on the real line, nonzero exponent on `(0, inf)`.
    fn surjective_by_structure(&self) -> bool {
        match self.family {
            Family::Affine { .. } => self.domain.is_real_line(),
            Family::Power { exponent, .. } => {
                exponent != 0.0 && self.domain == Interval::positive_half_line()
            }
        }
    }
}

/// `(x, g(x), ..., g^n(x))`.
pub fn orbit(g: &CandidateFunction, x: f64, n: usize) -> Result<Vec<f64>> {
    let escape = |index: usize, value: f64| Error::Escape {
        index,
        value,
        domain: g.domain.to_string(),
    };
    if !x.is_finite() || !g.domain.contains(x) {
        return Err(escape(0, x));
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(x);
    let mut cur = x;
    for index in 1..=n {
        cur = g.apply(cur);
        if !cur.is_finite() || !g.domain.contains(cur) {
            return Err(escape(index, cur));
        }
        out.push(cur);
    }
    Ok(out)
}

/// `size` ascending sample points in `domain`.
///
/// Bounded intervals are sampled uniformly, open endpoints pulled in by
/// half a step. Infinite ends go through `x = a + L u / (1 - u)` on half
/// lines and `x = u / (1 - u^2)` on the real line, `L = max(1, |a|)`, with
/// `u` uniform, so points crowd near finite endpoints and still reach a few
/// hundred `L` out.
pub fn sample_grid(domain: &Interval, size: usize) -> Result<Vec<f64>> {
    if size < 3 {
        return Err(Error::InvalidArgument(format!(
            "grid size must be at least 3, got {size}"
        )));
    }
    let step = 1.0 / (size - 1) as f64;
    let t0 = if domain.lower_closed() {
        0.0
    } else {
        0.5 * step
    };
    let t1 = if domain.upper_closed() {
        1.0
    } else {
        1.0 - 0.5 * step
    };
    let ts = (0..size).map(|i| t0 + (t1 - t0) * i as f64 / (size - 1) as f64);
    let (a, b) = (domain.lower(), domain.upper());
    let map: Box<dyn Fn(f64) -> f64> = match (a.is_finite(), b.is_finite()) {
        (true, true) => Box::new(move |t| a + (b - a) * t),
        (true, false) => {
            let l = a.abs().max(1.0);
            Box::new(move |t| a + l * t / (1.0 - t))
        }
        (false, true) => {
            let l = b.abs().max(1.0);
            Box::new(move |t| b - l * (1.0 - t) / t)
        }
        (false, false) => Box::new(|t| {
            let u = 2.0 * t - 1.0;
            u / (1.0 - u * u)
        }),
    };
    let mut xs: Vec<f64> = ts.map(map).filter(|x| domain.contains(*x)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 {
        return Err(Error::InvalidInterval(format!(
            "{domain} is too narrow to sample"
        )));
    }
    Ok(xs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Solves,
    Refutes,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Solves => "solves",
            Verdict::Refutes => "refutes",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

pub fn verdict(max_residual: f64, residual_scale: f64, tol: f64) -> Verdict {
    if max_residual <= tol * residual_scale {
        Verdict::Solves
    } else if max_residual > REFUTE_FACTOR * tol * residual_scale {
        Verdict::Refutes
    } else {
        Verdict::Inconclusive
    }
}

/// Direct-domain residual of the Boros equation, computed alongside the
/// log-domain one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub max_relative_residual: f64,
    pub verdict: Verdict,
}

/// Floats that may be infinite: numbers when finite, else `"inf"`,
/// `"-inf"` or `"nan"`.
mod extended_float {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("not a number: `{other}`"))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(with = "extended_float")]
    pub max_residual: f64,
    pub residual_scale: f64,
    /// Largest pointwise residual divided by its own scale.
    #[serde(with = "extended_float")]
    pub max_relative_residual: f64,
    pub samples: usize,
    pub injective_on_grid: bool,
    pub direction: Option<Direction>,
    pub verdict: Verdict,
    /// Why the candidate was refuted without evaluating residuals.
    pub diagnostic: Option<String>,
    pub cross_check: Option<CrossCheck>,
    pub notes: Vec<String>,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

fn surjectivity_notes(g: &CandidateFunction) -> Vec<String> {
    if g.surjective_by_structure() {
        vec!["surjectivity assumed from family structure".to_string()]
    } else {
        vec!["surjectivity onto the domain not established".to_string()]
    }
}

/// Samples `sum a_k g^k(x)` over the grid.
pub fn verify_iterative(
    eq: &IterativeEquation,
    g: &CandidateFunction,
    grid_size: usize,
    tol: f64,
) -> Result<VerificationReport> {
    check_tol(tol)?;
    if !g.domain.is_subset_of(eq.domain()) {
        return Err(Error::InvalidArgument(format!(
            "candidate domain {} is not inside the equation domain {}",
            g.domain,
            eq.domain()
        )));
    }
    let grid = sample_grid(&g.domain, grid_size)?;
    let (injective_on_grid, direction) = injectivity_on(g, &grid);
    let a = eq.coeffs();
    let mut max_residual: f64 = 0.0;
    let mut residual_scale: f64 = 0.0;
    let mut max_relative: f64 = 0.0;
    for &x in &grid {
        let xs = match orbit(g, x, eq.order()) {
            Ok(xs) => xs,
            Err(e) => {
                return Ok(VerificationReport {
                    max_residual: f64::INFINITY,
                    residual_scale,
                    max_relative_residual: f64::INFINITY,
                    samples: grid.len(),
                    injective_on_grid,
                    direction,
                    verdict: Verdict::Refutes,
                    diagnostic: Some(format!(
                        "candidate does not map its domain into itself: {e}"
                    )),
                    cross_check: None,
                    notes: Vec::new(),
                })
            }
        };
        let residual = a.iter().zip(&xs).map(|(c, v)| c * v).sum::<f64>().abs();
        let scale: f64 = a.iter().zip(&xs).map(|(c, v)| (c * v).abs()).sum();
        max_residual = max_residual.max(residual);
        residual_scale = residual_scale.max(scale);
        if scale > 0.0 {
            max_relative = max_relative.max(residual / scale);
        }
    }
    Ok(VerificationReport {
        max_residual,
        residual_scale,
        max_relative_residual: max_relative,
        samples: grid.len(),
        injective_on_grid,
        direction,
        verdict: verdict(max_residual, residual_scale, tol),
        diagnostic: None,
        cross_check: None,
        notes: surjectivity_notes(g),
    })
}

/// `log f(x)` via `log c + rho log x` for power maps.
fn log_image(f: &CandidateFunction, x: f64) -> f64 {
    match f.family {
        Family::Power {
            coefficient,
            exponent,
        } => coefficient.ln() + exponent * x.ln(),
        Family::Affine { .. } => f.apply(x).ln(),
    }
}

/// Checks `f^n(x) = f(x)^n / x^(n-1)` through the log conjugate
/// `g = log o f o exp`, which must solve `g^n - n g + (n - 1) id = 0`
/// on `log J`. The direct relative residual is reported as a cross-check.
pub fn verify_boros(
    n: usize,
    f: &CandidateFunction,
    grid_size: usize,
    tol: f64,
) -> Result<VerificationReport> {
    check_tol(tol)?;
    if !f.domain.is_positive() {
        return Err(Error::InvalidInterval(format!(
            "{} is not contained in (0,inf)",
            f.domain
        )));
    }
    let eq = boros::log_equation(n, &f.domain)?;
    let grid = sample_grid(&f.domain, grid_size)?;
    let (injective_on_grid, direction) = injectivity_on(f, &grid);
    let a = eq.coeffs();

    let mut max_residual: f64 = 0.0;
    let mut residual_scale: f64 = 0.0;
    let mut max_relative: f64 = 0.0;
    let mut direct_relative: f64 = 0.0;
    for &x in &grid {
        let xs = match orbit(f, x, n) {
            Ok(xs) => xs,
            Err(e) => {
                return Ok(VerificationReport {
                    max_residual: f64::INFINITY,
                    residual_scale,
                    max_relative_residual: f64::INFINITY,
                    samples: grid.len(),
                    injective_on_grid,
                    direction,
                    verdict: Verdict::Refutes,
                    diagnostic: Some(format!(
                        "candidate does not map its domain into itself: {e}"
                    )),
                    cross_check: None,
                    notes: Vec::new(),
                })
            }
        };
        // log-domain orbit y_k = log f^k(x), each step taken in logs
        let mut ys = Vec::with_capacity(n + 1);
        ys.push(x.ln());
        for k in 1..=n {
            ys.push(log_image(f, xs[k - 1]));
        }
        let residual = a.iter().zip(&ys).map(|(c, v)| c * v).sum::<f64>().abs();
        let scale: f64 = a.iter().zip(&ys).map(|(c, v)| (c * v).abs()).sum();
        max_residual = max_residual.max(residual);
        residual_scale = residual_scale.max(scale);
        if scale > 0.0 {
            max_relative = max_relative.max(residual / scale);
        }

        let lhs = xs[n];
        let rhs = (n as f64 * xs[1].ln() - (n - 1) as f64 * x.ln()).exp();
        let denom = lhs.abs().max(rhs);
        if denom > 0.0 {
            direct_relative = direct_relative.max((lhs - rhs).abs() / denom);
        }
    }
    let direct_verdict = verdict(direct_relative, 1.0, tol);
    Ok(VerificationReport {
        max_residual,
        residual_scale,
        max_relative_residual: max_relative,
        samples: grid.len(),
        injective_on_grid,
        direction,
        verdict: verdict(max_residual, residual_scale, tol),
        diagnostic: None,
        cross_check: Some(CrossCheck {
            max_relative_residual: direct_relative,
            verdict: direct_verdict,
        }),
        notes: surjectivity_notes(f),
    })
}

fn injectivity_on(g: &CandidateFunction, grid: &[f64]) -> (bool, Option<Direction>) {
    let images: Vec<f64> = grid.iter().map(|&x| g.apply(x)).collect();
    let diffs: Vec<f64> = images.windows(2).map(|w| w[1] - w[0]).collect();
    let direction = if diffs.iter().all(|&d| d > 0.0) {
        Some(Direction::Increasing)
    } else if diffs.iter().all(|&d| d < 0.0) {
        Some(Direction::Decreasing)
    } else {
        None
    };
    let injective = direction.is_some() || {
        let mut sorted = images.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).all(|w| w[0] != w[1])
    };
    (injective, direction)
}

/// Distinct images on the grid and a consistent sign of differences.
pub fn check_injectivity_monotonicity(
    g: &CandidateFunction,
    grid_size: usize,
) -> Result<(bool, Option<Direction>)> {
    let grid = sample_grid(&g.domain, grid_size)?;
    Ok(injectivity_on(g, &grid))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real() -> Interval {
        Interval::real_line()
    }

    fn pos() -> Interval {
        Interval::positive_half_line()
    }

    #[test]
    fn orbit_examples() {
        let g = CandidateFunction::affine(1.0, 2.0, real()).unwrap();
        assert_eq!(orbit(&g, 0.0, 3).unwrap(), vec![0.0, 2.0, 4.0, 6.0]);
        let f = CandidateFunction::power(1.0, -2.0, pos()).unwrap();
        assert_eq!(orbit(&f, 2.0, 2).unwrap(), vec![2.0, 0.25, 16.0]);
        assert_eq!(orbit(&f, 2.0, 0).unwrap(), vec![2.0]);
    }

    #[test]
    fn orbit_escape_names_the_index() {
        let g = CandidateFunction::affine(2.0, 0.0, Interval::open(0.0, 10.0).unwrap()).unwrap();
        match orbit(&g, 3.0, 4) {
            Err(Error::Escape { index, value, .. }) => {
                assert_eq!(index, 2);
                assert_eq!(value, 12.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            orbit(&g, 11.0, 1),
            Err(Error::Escape { index: 0, .. })
        ));
    }

    #[test]
    fn candidate_validation() {
        assert!(CandidateFunction::affine(0.0, 1.0, real()).is_err());
        assert!(CandidateFunction::power(-1.0, 2.0, pos()).is_err());
        assert!(CandidateFunction::power(1.0, 2.0, real()).is_err());
        assert!(CandidateFunction::power(1.0, f64::NAN, pos()).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!(
            "affine:2,-1".parse::<Family>().unwrap(),
            Family::Affine {
                slope: 2.0,
                intercept: -1.0
            }
        );
        assert_eq!(
            " power: 1 , -2 ".parse::<Family>().unwrap(),
            Family::Power {
                coefficient: 1.0,
                exponent: -2.0
            }
        );
        for bad in [
            "affine:1",
            "cubic:1,2",
            "power:a,b",
            "affine1,2",
            "affine:1,2,3",
        ] {
            assert!(bad.parse::<Family>().is_err(), "{bad}");
        }
        let f = Family::Power {
            coefficient: 0.5,
            exponent: -2.0,
        };
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }

    #[test]
    fn grid_shapes() {
        let g = sample_grid(&Interval::closed(2.0, 5.0).unwrap(), 4).unwrap();
        assert_eq!(g, vec![2.0, 3.0, 4.0, 5.0]);
        let g = sample_grid(&Interval::open(0.0, 1.0).unwrap(), 257).unwrap();
        assert_eq!(g.len(), 257);
        assert!(g[0] > 0.0 && g[256] < 1.0);
        let g = sample_grid(&pos(), 257).unwrap();
        assert_eq!(g.len(), 257);
        assert!(g[0] > 0.0 && g[0] < 0.01 && g[256] > 100.0);
        let g = sample_grid(&real(), 257).unwrap();
        assert!(g[0] < -100.0 && g[256] > 100.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let g = sample_grid(&"(-inf,-3]".parse().unwrap(), 9).unwrap();
        assert_eq!(g[8], -3.0);
        assert!(g[0] < -3.0 * 100.0 / 9.0);
        assert!(sample_grid(&real(), 2).is_err());
    }

    #[test]
    fn iterative_examples() {
        let eq = IterativeEquation::from_coeffs(&[1.0, -2.0, 1.0]).unwrap();
        for c in [-3.0, 0.0, 0.5, 10.0] {
            let g = CandidateFunction::affine(1.0, c, real()).unwrap();
            let r = verify_iterative(&eq, &g, DEFAULT_GRID, DEFAULT_TOL).unwrap();
            assert_eq!(r.verdict, Verdict::Solves, "c = {c}");
            assert_eq!(r.samples, 257);
        }
        let g = CandidateFunction::affine(2.0, 0.0, real()).unwrap();
        let r = verify_iterative(&eq, &g, DEFAULT_GRID, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Refutes);

        let eq = IterativeEquation::from_coeffs(&[-6.0, 1.0, 1.0]).unwrap();
        let r = verify_iterative(&eq, &g, DEFAULT_GRID, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Solves);
        assert!(r.max_relative_residual < 1e-15);
        assert_eq!(r.direction, Some(Direction::Increasing));
        assert!(r.notes[0].contains("assumed"));
    }

    #[test]
    fn escape_refutes_with_diagnostic() {
        let eq = IterativeEquation::new(
            crate::Polynomial::new(vec![-6.0, 1.0, 1.0]),
            Interval::positive_half_line(),
        )
        .unwrap();
        let g = CandidateFunction::affine(-3.0, 0.0, pos()).unwrap();
        let r = verify_iterative(&eq, &g, DEFAULT_GRID, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Refutes);
        assert!(r.diagnostic.unwrap().contains("into itself"));
    }

    #[test]
    fn domain_must_fit() {
        let eq = IterativeEquation::new(
            crate::Polynomial::new(vec![-6.0, 1.0, 1.0]),
            Interval::positive_half_line(),
        )
        .unwrap();
        let g = CandidateFunction::affine(2.0, 0.0, real()).unwrap();
        assert!(verify_iterative(&eq, &g, DEFAULT_GRID, DEFAULT_TOL).is_err());
    }

    #[test]
    fn verdict_bands() {
        assert_eq!(verdict(1e-10, 1.0, 1e-9), Verdict::Solves);
        assert_eq!(verdict(1e-8, 1.0, 1e-9), Verdict::Inconclusive);
        assert_eq!(verdict(1e-6, 1.0, 1e-9), Verdict::Inconclusive);
        assert_eq!(verdict(2e-6, 1.0, 1e-9), Verdict::Refutes);
    }

    #[test]
    fn boros_examples() {
        for c in [0.5, 1.0, 3.0] {
            for exponent in [1.0, -2.0] {
                let f = CandidateFunction::power(c, exponent, pos()).unwrap();
                let r = verify_boros(3, &f, DEFAULT_GRID, DEFAULT_TOL).unwrap();
                assert_eq!(r.verdict, Verdict::Solves, "c = {c}, rho = {exponent}");
                let cross = r.cross_check.unwrap();
                assert_eq!(cross.verdict, Verdict::Solves);
                assert!(cross.max_relative_residual <= 1e-9);
            }
        }
        let f = CandidateFunction::power(1.0, -2.0, pos()).unwrap();
        let r = verify_boros(4, &f, DEFAULT_GRID, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Refutes);
        assert_eq!(r.cross_check.unwrap().verdict, Verdict::Refutes);

        let g = CandidateFunction::affine(1.0, 0.0, real()).unwrap();
        assert!(verify_boros(3, &g, DEFAULT_GRID, DEFAULT_TOL).is_err());
    }

    #[test]
    fn injectivity_examples() {
        let g = CandidateFunction::affine(2.0, 1.0, real()).unwrap();
        assert_eq!(
            check_injectivity_monotonicity(&g, 257).unwrap(),
            (true, Some(Direction::Increasing))
        );
        let f = CandidateFunction::power(1.0, -2.0, pos()).unwrap();
        assert_eq!(
            check_injectivity_monotonicity(&f, 257).unwrap(),
            (true, Some(Direction::Decreasing))
        );
        let g = CandidateFunction::affine(-1.0, 0.0, real()).unwrap();
        assert_eq!(
            check_injectivity_monotonicity(&g, 257).unwrap(),
            (true, Some(Direction::Decreasing))
        );
        let f = CandidateFunction::power(1.0, 0.0, pos()).unwrap();
        assert_eq!(
            check_injectivity_monotonicity(&f, 257).unwrap(),
            (false, None)
        );
    }
}
