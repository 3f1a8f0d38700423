//! Real polynomials and iterative equations.
//!
//! [`Polynomial`] stores coefficients in ascending order: `coeffs[k]` is the
//! coefficient of `r^k`. The representation is canonical: the zero
//! polynomial is the empty list and otherwise the last coefficient is
//! nonzero.

use std::fmt;
use std::ops::{Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::roots::RootSet;
use crate::{Error, Interval, Result};

/// Imaginary parts of reconstructed coefficients below
/// `IMAG_RESIDUE_TOL * (1 + |c|)` are treated as rounding noise, where `|c|`
/// is the matching coefficient of the product over `|root|`.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, dropping trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![1.0] }
    }

    /// `r - root`
    pub fn linear_factor(root: f64) -> Self {
        Polynomial::new(vec![-root, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<f64> {
        self.coeffs.last().copied()
    }

    /// Coefficient of `r^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Largest coefficient magnitude; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation at a complex point. The zero polynomial evaluates
    /// to zero everywhere.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn evaluate_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(lead) => self.scale(1.0 / lead),
            None => Polynomial::zero(),
        }
    }

    /// Coefficients in the opposite order. For a nonzero constant term this
    /// is the polynomial whose roots are the reciprocals of the original
    /// roots.
    pub fn reversed(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().rev().copied().collect())
    }

    /// Synthetic long division: `self = divisor * quotient + remainder` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divide(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let m = divisor.coeffs.len();
        let n = self.coeffs.len();
        if n < m {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; n - m + 1];
        for k in (0..=n - m).rev() {
            let c = rem[k + m - 1] / lead;
            quot[k] = c;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= c * d;
            }
            // exact cancellation of the eliminated term
            rem[k + m - 1] = 0.0;
        }
        rem.truncate(m - 1);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// The monic polynomial `prod (r - z_j)^{k_j}` of a conjugate-closed root
    /// set. The empty root set gives the constant `1`.
    pub fn from_roots(roots: &RootSet) -> Result<Polynomial> {
        let mut acc = vec![Complex64::new(1.0, 0.0)];
        // product of (r + |root|), bounds the rounding in `acc`
        let mut magnitude = vec![1.0];
        for entry in roots.entries() {
            let m = entry.root.norm();
            for _ in 0..entry.multiplicity {
                let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
                let mut next_mag = vec![0.0; acc.len() + 1];
                for (k, &c) in acc.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * entry.root;
                    next_mag[k + 1] += magnitude[k];
                    next_mag[k] += magnitude[k] * m;
                }
                acc = next;
                magnitude = next_mag;
            }
        }
        let mut coeffs = Vec::with_capacity(acc.len());
        for (k, c) in acc.iter().enumerate() {
            if c.im.abs() > IMAG_RESIDUE_TOL * (1.0 + magnitude[k]) {
                return Err(Error::NotConjugateClosed(format!(
                    "coefficient of r^{k} has imaginary part {:e}",
                    c.im
                )));
            }
            coeffs.push(c.re);
        }
        Ok(Polynomial::new(coeffs))
    }
}

impl From<Vec<f64>> for Polynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Vec<f64> {
        p.coeffs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let shown = if (1e-4..1e16).contains(&mag) {
                format!("{mag}")
            } else {
                format!("{mag:e}")
            };
            match k {
                0 => write!(f, "{shown}")?,
                _ => {
                    if mag != 1.0 {
                        write!(f, "{shown}")?;
                    }
                    if k == 1 {
                        write!(f, "r")?;
                    } else {
                        write!(f, "r^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `a_N g^N(x) + ... + a_1 g(x) + a_0 x = 0` for a self-map `g` of `domain`.
///
/// The characteristic polynomial shares the coefficient list. Both `a_0` and
/// `a_N` are nonzero and `N >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterativeEquation {
    poly: Polynomial,
    domain: Interval,
}

impl IterativeEquation {
    pub fn new(poly: Polynomial, domain: Interval) -> Result<Self> {
        if poly.coeffs().iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidEquation("non-finite coefficient".into()));
        }
        match poly.degree() {
            None | Some(0) => {
                return Err(Error::InvalidEquation(
                    "at least two coefficients with a nonzero leading one are required".into(),
                ))
            }
            Some(_) => {}
        }
        if poly.coeff(0) == 0.0 {
            return Err(Error::InvalidEquation("a_0 must be nonzero".into()));
        }
        Ok(IterativeEquation { poly, domain })
    }

    /// Equation on the whole real line.
    pub fn from_coeffs(coeffs: &[f64]) -> Result<Self> {
        Self::new(Polynomial::new(coeffs.to_vec()), Interval::real_line())
    }

    pub fn characteristic(&self) -> &Polynomial {
        &self.poly
    }

    pub fn coeffs(&self) -> &[f64] {
        self.poly.coeffs()
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    /// The order `N`.
    pub fn order(&self) -> usize {
        self.poly.coeffs().len() - 1
    }

    pub fn with_domain(&self, domain: Interval) -> Self {
        IterativeEquation {
            poly: self.poly.clone(),
            domain,
        }
    }

    pub fn monic(&self) -> Self {
        IterativeEquation {
            poly: self.poly.monic(),
            domain: self.domain,
        }
    }

    /// The equation satisfied by `g^{-1}` when `g` is a bijective solution:
    /// coefficients reversed, characteristic roots reciprocated.
    pub fn dual(&self) -> Self {
        IterativeEquation {
            poly: self.poly.reversed(),
            domain: self.domain,
        }
    }
}
