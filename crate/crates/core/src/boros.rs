//! The equation `f^n(x) = f(x)^n / x^(n-1)` on subintervals of `(0, inf)`.
//!
//! Conjugating by `log` turns it into the iterative equation
//! `g^n(y) - n g(y) + (n - 1) y = 0` with characteristic polynomial
//! `r^n - n r + n - 1 = (r - 1)^2 (r^(n-2) + 2 r^(n-3) + ... + (n - 1))`.
//! For even `n` the only real root is 1 (double); for odd `n` there is one
//! more, `r0 < -1`, and every non-real root `z` has `1 < |z| < -r0`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::roots::{classify, find_roots};
use crate::{Error, Interval, IterativeEquation, Polynomial, Result, RootSet, ToleranceConfig};

/// Default absolute tolerance for [`find_r0`].
pub const R0_TOL: f64 = 1e-14;
/// Default margin for [`check_root_bounds`].
pub const BOUND_TOL: f64 = 1e-9;
/// `|sin phi|` below this makes the sine inequality meaningless.
pub const SINE_GUARD: f64 = 1e-12;

/// Characteristic polynomial and its cofactor with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorosCharacteristic {
    pub n: usize,
    /// Ascending coefficients of `r^n - n r + n - 1`.
    pub char_coeffs: Vec<i64>,
    /// Ascending coefficients `[n-1, n-2, ..., 1]` of the cofactor.
    pub cofactor_coeffs: Vec<i64>,
    pub char_poly: Polynomial,
    pub cofactor: Polynomial,
}

/// Characteristic data together with the roots and the bound checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorosAnalysis {
    pub n: usize,
    pub char_poly: Polynomial,
    pub cofactor: Polynomial,
    pub roots: RootSet,
    /// The real root below `-1`; odd `n` only.
    pub r0: Option<f64>,
    /// `|cofactor(r0)|`.
    pub r0_residual: Option<f64>,
    pub bound_ok: bool,
    pub vieta_residual: f64,
}

/// Ascending product of integer polynomials; `None` on overflow.
pub fn integer_product(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(x.checked_mul(*y)?)?;
        }
    }
    Some(out)
}

fn to_poly(c: &[i64]) -> Polynomial {
    Polynomial::new(c.iter().map(|&v| v as f64).collect())
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    Ok(())
}

pub fn boros_characteristic(n: usize) -> Result<BorosCharacteristic> {
    check_n(n)?;
    let ni = i64::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} too large")))?;
    let mut char_coeffs = vec![0i64; n + 1];
    char_coeffs[0] = ni - 1;
    char_coeffs[1] -= ni;
    char_coeffs[n] += 1;
    let cofactor_coeffs: Vec<i64> = (1..ni).rev().collect();
    let product = integer_product(&[1, -2, 1], &cofactor_coeffs)
        .ok_or_else(|| Error::InvalidArgument(format!("n = {n} overflows")))?;
    if product != char_coeffs {
        return Err(Error::Internal(format!(
            "factorization identity fails for n = {n}"
        )));
    }
    Ok(BorosCharacteristic {
        n,
        char_poly: to_poly(&char_coeffs),
        cofactor: to_poly(&cofactor_coeffs),
        char_coeffs,
        cofactor_coeffs,
    })
}

/// The log-transformed equation `g^n - n g + (n - 1) id = 0` on `log J`.
pub fn log_equation(n: usize, domain: &Interval) -> Result<IterativeEquation> {
    let ch = boros_characteristic(n)?;
    IterativeEquation::new(ch.char_poly, domain.log_image()?)
}

/// Real root of the cofactor together with `|cofactor(value)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegativeRoot {
    pub value: f64,
    pub residual: f64,
}

/// The real root `r0 < -1` for odd `n`: bisection on `[-n, -1]` down to
/// width `tol`, then one Newton step kept only if it lowers the residual.
pub fn find_r0(n: usize, tol: f64) -> Result<NegativeRoot> {
    check_n(n)?;
    if n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "r0 exists only for odd n, got {n}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let q = boros_characteristic(n)?.cofactor;
    let f = |x: f64| q.evaluate_real(x);
    let (mut lo, mut hi) = (-(n as f64), -1.0);
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo.signum() == fhi.signum() || flo == 0.0 || fhi == 0.0 {
        return Err(Error::Internal(format!(
            "no sign change of the cofactor on [-{n}, -1] ({flo}, {fhi})"
        )));
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut value = 0.5 * (lo + hi);
    let mut residual = f(value).abs();
    let slope = q.derivative().evaluate_real(value);
    if slope != 0.0 {
        let polished = value - f(value) / slope;
        let r = f(polished).abs();
        if polished.is_finite() && r < residual {
            value = polished;
            residual = r;
        }
    }
    Ok(NegativeRoot { value, residual })
}

/// `(bound_ok, vieta_residual)` for populated roots.
///
/// Every non-real root must satisfy `1 + tol < |z|` and, for odd `n`,
/// `|z| < -r0 - tol`. The residual compares the product of all roots with
/// `(-1)^n (n - 1)`, relative to `n - 1`.
pub fn check_root_bounds(ba: &BorosAnalysis, tol: f64) -> Result<(bool, f64)> {
    let cls = classify(&ba.roots, ToleranceConfig::default().imag_tol)?;
    let upper = match ba.r0 {
        Some(r0) => -r0 - tol,
        None => f64::INFINITY,
    };
    let bound_ok = cls
        .conjugate_pairs
        .iter()
        .all(|p| p.modulus > 1.0 + tol && p.modulus < upper);
    let mut product = 1.0;
    for r in &cls.real_roots {
        product *= r.value.powi(r.multiplicity as i32);
    }
    for p in &cls.conjugate_pairs {
        product *= p.modulus.powi(2 * p.multiplicity as i32);
    }
    let sign = if ba.n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = (ba.n - 1) as f64;
    let residual = (product - sign * scale).abs() / scale;
    Ok((bound_ok, residual))
}

/// Roots, `r0` and the bound checks for the order-`n` equation.
pub fn analyze_boros(n: usize, cfg: &ToleranceConfig) -> Result<BorosAnalysis> {
    let ch = boros_characteristic(n)?;
    let roots = find_roots(&ch.char_poly, cfg)?;
    let r0 = if n % 2 == 1 {
        Some(find_r0(n, R0_TOL)?)
    } else {
        None
    };
    let mut ba = BorosAnalysis {
        n,
        char_poly: ch.char_poly,
        cofactor: ch.cofactor,
        roots,
        r0: r0.map(|r| r.value),
        r0_residual: r0.map(|r| r.residual),
        bound_ok: false,
        vieta_residual: 0.0,
    };
    let (bound_ok, vieta_residual) = check_root_bounds(&ba, BOUND_TOL)?;
    ba.bound_ok = bound_ok;
    ba.vieta_residual = vieta_residual;
    Ok(ba)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `|sin n phi| < n |sin phi|`.
pub fn sine_inequality(n: usize, phi: f64) -> Result<SineCheck> {
    check_n(n)?;
    let s = phi.sin();
    if !(s.abs() > SINE_GUARD) {
        return Err(Error::InvalidArgument(format!(
            "|sin phi| = {} is too small",
            s.abs()
        )));
    }
    let lhs = (n as f64 * phi).sin().abs();
    let rhs = n as f64 * s.abs();
    Ok(SineCheck {
        lhs,
        rhs,
        holds: lhs < rhs,
    })
}

/// `|z|` of a root `z = |z| e^{i phi}` of `r^n - n r + n - 1`, from
/// `|z|^(n-1) = n sin phi / sin n phi`. `None` when the ratio is not positive.
pub fn predicted_modulus(n: usize, phi: f64) -> Option<f64> {
    let ratio = n as f64 * phi.sin() / (n as f64 * phi).sin();
    (ratio.is_finite() && ratio > 0.0).then(|| ratio.powf(1.0 / (n - 1) as f64))
}

/// Shape of `J`, which decides the solution families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BorosCase {
    /// Bounded, closure avoids 0.
    BoundedAwayFromZero,
    /// Bounded, lower endpoint 0.
    BoundedTouchingZero,
    /// Unbounded above, closure avoids 0.
    UnboundedAwayFromZero,
    /// `(0, inf)` with even `n`.
    HalfLineEven,
    /// `(0, inf)` with odd `n`.
    HalfLineOdd,
}

impl BorosCase {
    pub fn label(self) -> &'static str {
        match self {
            BorosCase::BoundedAwayFromZero => "(i)",
            BorosCase::BoundedTouchingZero => "(ii)",
            BorosCase::UnboundedAwayFromZero => "(iii)",
            BorosCase::HalfLineEven => "(iv)",
            BorosCase::HalfLineOdd => "(v)",
        }
    }
}

impl fmt::Display for BorosCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Admissible values of the coefficient `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientRange {
    Exactly(f64),
    Within(Interval),
}

impl CoefficientRange {
    pub fn contains(&self, c: f64) -> bool {
        match self {
            CoefficientRange::Exactly(v) => c == *v,
            CoefficientRange::Within(i) => i.contains(c),
        }
    }

    /// A few admissible values used for verification.
    pub fn representatives(&self) -> Vec<f64> {
        let candidates: &[f64] = match self {
            CoefficientRange::Exactly(v) => return vec![*v],
            CoefficientRange::Within(_) => &[0.5, 1.0, 3.0],
        };
        candidates
            .iter()
            .copied()
            .filter(|&c| self.contains(c))
            .collect()
    }
}

impl fmt::Display for CoefficientRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRange::Exactly(v) => write!(f, "c = {v}"),
            CoefficientRange::Within(i) => write!(f, "c in {i}"),
        }
    }
}

/// `f(x) = c x^exponent` with `c` ranging over `coefficient`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFamily {
    pub description: String,
    pub exponent: f64,
    pub coefficient: CoefficientRange,
}

impl SolutionFamily {
    fn linear(coefficient: CoefficientRange) -> Self {
        let description = match coefficient {
            CoefficientRange::Exactly(1.0) => "f(x) = x".to_string(),
            _ => "f(x) = c x".to_string(),
        };
        SolutionFamily {
            description,
            exponent: 1.0,
            coefficient,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorosClassification {
    pub n: usize,
    pub interval: Interval,
    pub case: BorosCase,
    pub families: Vec<SolutionFamily>,
    pub r0: Option<f64>,
    pub r0_residual: Option<f64>,
    pub note: String,
}

const FORWARD_ONLY: &str =
    "listed families are verified to solve the equation; exhaustiveness is not checked numerically";
const SECOND_ORDER_NOTE: &str =
    "for n = 2 only the linear families are listed; further solutions are not classified";

/// Continuous solutions `f: J -> J` by the shape of `J`.
pub fn classify_boros(n: usize, j: &Interval) -> Result<BorosClassification> {
    check_n(n)?;
    if !j.is_positive() {
        return Err(Error::InvalidInterval(format!(
            "{j} is not contained in (0,inf)"
        )));
    }
    let touches_zero = j.lower() == 0.0;
    let unbounded = j.upper() == f64::INFINITY;
    let case = match (unbounded, touches_zero) {
        (false, false) => BorosCase::BoundedAwayFromZero,
        (false, true) => BorosCase::BoundedTouchingZero,
        (true, false) => BorosCase::UnboundedAwayFromZero,
        (true, true) if n.is_multiple_of(2) => BorosCase::HalfLineEven,
        (true, true) => BorosCase::HalfLineOdd,
    };
    let positive = Interval::positive_half_line();
    let mut families = vec![SolutionFamily::linear(match case {
        BorosCase::BoundedAwayFromZero => CoefficientRange::Exactly(1.0),
        BorosCase::BoundedTouchingZero => {
            CoefficientRange::Within(Interval::new(0.0, 1.0, false, true)?)
        }
        BorosCase::UnboundedAwayFromZero => {
            CoefficientRange::Within(Interval::new(1.0, f64::INFINITY, true, false)?)
        }
        BorosCase::HalfLineEven | BorosCase::HalfLineOdd => CoefficientRange::Within(positive),
    })];
    let (mut r0, mut r0_residual) = (None, None);
    if case == BorosCase::HalfLineOdd {
        let root = find_r0(n, R0_TOL)?;
        families.push(SolutionFamily {
            description: if root.value.fract() == 0.0 {
                format!("f(x) = c/x^{}", -root.value)
            } else {
                format!("f(x) = c x^r0, r0 = {}", root.value)
            },
            exponent: root.value,
            coefficient: CoefficientRange::Within(positive),
        });
        r0 = Some(root.value);
        r0_residual = Some(root.residual);
    }
    let mut note = FORWARD_ONLY.to_string();
    if n == 2 {
        note = format!("{note}; {SECOND_ORDER_NOTE}");
    }
    Ok(BorosClassification {
        n,
        interval: *j,
        case,
        families,
        r0,
        r0_residual,
        note,
    })
}

/// Representative interval of each case, for sweeps over `n`.
pub fn representative_intervals() -> Vec<Interval> {
    let iv = |s: &str| s.parse::<Interval>().expect("valid literal");
    vec![iv("(1,2)"), iv("(0,1]"), iv("(2,inf)"), iv("(0,inf)")]
}

/// Principal arguments in `(0, pi)` of the non-real roots.
pub fn pair_arguments(ba: &BorosAnalysis) -> Result<Vec<(f64, f64)>> {
    let cls = classify(&ba.roots, ToleranceConfig::default().imag_tol)?;
    Ok(cls
        .conjugate_pairs
        .iter()
        .filter(|p| p.argument > 0.0 && p.argument < PI)
        .map(|p| (p.modulus, p.argument))
        .collect())
}
