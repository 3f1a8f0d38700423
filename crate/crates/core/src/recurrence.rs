//! The linear recurrence `a_N x_{m+N} + ... + a_1 x_{m+1} + a_0 x_m = 0`.
//!
//! Orbits `x_m = g^m(x_0)` of a solution `g` satisfy this recurrence, so the
//! closed form below describes every orbit: each real root `l` of
//! multiplicity `k` contributes `A(m) l^m` and each conjugate pair
//! `rho e^{+-i phi}` contributes `(B(m) cos m phi + C(m) sin m phi) rho^m`,
//! with polynomials of degree below the multiplicity.

use serde::{Deserialize, Serialize};

use crate::roots::{classify, RootSet};
use crate::{Error, IterativeEquation, Polynomial, Result};

const IMAG_TOL: f64 = 1e-10;
/// Systems with a larger 1-norm condition number are reported as singular.
const MAX_CONDITION: f64 = 1e13;

/// `x_0 ..= x_{m_max}` generated from the first `N` values.
pub fn iterate_recurrence(eq: &IterativeEquation, init: &[f64], m_max: usize) -> Result<Vec<f64>> {
    let a = eq.coeffs();
    let order = eq.order();
    if init.len() != order {
        return Err(Error::InitLength {
            expected: order,
            got: init.len(),
        });
    }
    let lead = a[order];
    let mut xs = init.to_vec();
    while xs.len() <= m_max {
        let m = xs.len() - order;
        let s: f64 = (0..order).map(|k| a[k] * xs[m + k]).sum();
        xs.push(-s / lead);
    }
    xs.truncate(m_max + 1);
    Ok(xs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealTerm {
    pub root: f64,
    pub multiplicity: usize,
    /// `A(m)`, degree below `multiplicity`.
    pub poly: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTerm {
    pub modulus: f64,
    /// Principal argument in `(0, pi)`.
    pub argument: f64,
    pub multiplicity: usize,
    /// `B(m)`, coefficient of `cos m phi`.
    pub cos_poly: Polynomial,
    /// `C(m)`, coefficient of `sin m phi`.
    pub sin_poly: Polynomial,
}

/// General solution of the recurrence fitted to given initial values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormSolution {
    pub real_terms: Vec<RealTerm>,
    pub pair_terms: Vec<PairTerm>,
    /// 1-norm condition number of the interpolation system.
    pub condition: f64,
}

fn powm(base: f64, m: usize) -> f64 {
    base.powi(m as i32)
}

impl ClosedFormSolution {
    /// Order of the recurrence (number of free coefficients).
    pub fn order(&self) -> usize {
        self.real_terms
            .iter()
            .map(|t| t.multiplicity)
            .sum::<usize>()
            + 2 * self
                .pair_terms
                .iter()
                .map(|t| t.multiplicity)
                .sum::<usize>()
    }

    /// Contribution of the real roots alone.
    pub fn real_part(&self, m: usize) -> f64 {
        let mf = m as f64;
        self.real_terms
            .iter()
            .map(|t| t.poly.evaluate_real(mf) * powm(t.root, m))
            .sum()
    }

    /// Contribution of the conjugate pairs alone.
    pub fn oscillatory_part(&self, m: usize) -> f64 {
        let mf = m as f64;
        self.pair_terms
            .iter()
            .map(|t| {
                let angle = mf * t.argument;
                (t.cos_poly.evaluate_real(mf) * angle.cos()
                    + t.sin_poly.evaluate_real(mf) * angle.sin())
                    * powm(t.modulus, m)
            })
            .sum()
    }
}

pub fn evaluate_closed(cf: &ClosedFormSolution, m: usize) -> f64 {
    cf.real_part(m) + cf.oscillatory_part(m)
}

/// Basis sequences in the order the unknown coefficients are laid out:
/// per real root `m^j l^m`, per pair `m^j rho^m cos m phi` then
/// `m^j rho^m sin m phi`, `j` below the multiplicity.
fn basis_row(real: &[(f64, usize)], pairs: &[(f64, f64, usize)], m: usize) -> Vec<f64> {
    let mf = m as f64;
    let mut row = Vec::new();
    for &(root, k) in real {
        let p = powm(root, m);
        row.extend((0..k).map(|j| mf.powi(j as i32) * p));
    }
    for &(rho, phi, k) in pairs {
        let r = powm(rho, m);
        let (s, c) = (mf * phi).sin_cos();
        row.extend((0..k).map(|j| mf.powi(j as i32) * r * c));
        row.extend((0..k).map(|j| mf.powi(j as i32) * r * s));
    }
    row
}

/// Fits the closed form to `x_0 ..= x_{N-1}`.
pub fn closed_form(rs: &RootSet, init: &[f64]) -> Result<ClosedFormSolution> {
    let cls = classify(rs, IMAG_TOL)?;
    let order = rs.degree();
    if init.len() != order {
        return Err(Error::InitLength {
            expected: order,
            got: init.len(),
        });
    }
    let real: Vec<(f64, usize)> = cls
        .real_roots
        .iter()
        .map(|r| (r.value, r.multiplicity))
        .collect();
    let pairs: Vec<(f64, f64, usize)> = cls
        .conjugate_pairs
        .iter()
        .map(|p| (p.modulus, p.argument, p.multiplicity))
        .collect();

    let matrix: Vec<Vec<f64>> = (0..order).map(|m| basis_row(&real, &pairs, m)).collect();
    let (coeffs, condition) = solve_dense(matrix, init)?;

    let mut it = coeffs.into_iter();
    let mut take = |k: usize| Polynomial::new(it.by_ref().take(k).collect());
    let real_terms = real
        .iter()
        .map(|&(root, k)| RealTerm {
            root,
            multiplicity: k,
            poly: take(k),
        })
        .collect();
    let pair_terms = pairs
        .iter()
        .map(|&(modulus, argument, k)| PairTerm {
            modulus,
            argument,
            multiplicity: k,
            cos_poly: take(k),
            sin_poly: take(k),
        })
        .collect();
    Ok(ClosedFormSolution {
        real_terms,
        pair_terms,
        condition,
    })
}

/// LU factorization with partial pivoting, stored in place.
struct Lu {
    a: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut a: Vec<Vec<f64>>) -> Option<Lu> {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
            if a[pivot][col] == 0.0 {
                return None;
            }
            a.swap(col, pivot);
            perm.swap(col, pivot);
            for row in (col + 1)..n {
                let f = a[row][col] / a[col][col];
                a[row][col] = f;
                for k in (col + 1)..n {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
        Some(Lu { a, perm })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.a.len();
        let mut x: Vec<f64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            for k in 0..i {
                x[i] -= self.a[i][k] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                x[i] -= self.a[i][k] * x[k];
            }
            x[i] /= self.a[i][i];
        }
        x
    }
}

fn norm_1(columns: impl Iterator<Item = Vec<f64>>) -> f64 {
    columns
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves `A x = b`; returns `x` and the 1-norm condition number of `A`.
fn solve_dense(a: Vec<Vec<f64>>, b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let n = a.len();
    if n == 0 {
        return Ok((Vec::new(), 1.0));
    }
    let a_norm = norm_1((0..n).map(|j| a.iter().map(|row| row[j]).collect()));
    let lu = Lu::factor(a).ok_or(Error::SingularSystem {
        condition: f64::INFINITY,
    })?;
    let inv_norm = norm_1((0..n).map(|j| {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        lu.solve(&e)
    }));
    let condition = a_norm * inv_norm;
    if !(condition <= MAX_CONDITION) {
        return Err(Error::SingularSystem { condition });
    }
    Ok((lu.solve(b), condition))
}

/// Shape of a real sequence with respect to its consecutive differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotonicityClass {
    /// `x_m - x_{m-1}` keeps one sign.
    Monotone,
    /// `(-1)^m (x_m - x_{m-1})` keeps one sign.
    AntiMonotone,
    /// Both of the above, e.g. constant sequences.
    Both,
    Neither,
}

/// `1e-12 * max |x_m|`
pub fn default_slack(xs: &[f64]) -> f64 {
    1e-12 * xs.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn one_signed(values: impl Iterator<Item = f64> + Clone, slack: f64) -> bool {
    values.clone().all(|d| d >= -slack) || values.into_iter().all(|d| d <= slack)
}

/// Differences within `slack` of zero are compatible with either sign.
/// Sequences shorter than two terms are vacuously `Both`.
pub fn classify_monotonicity(xs: &[f64], slack: f64) -> MonotonicityClass {
    let diffs = xs.windows(2).map(|w| w[1] - w[0]);
    let signed = xs.windows(2).enumerate().map(|(i, w)| {
        // the difference x_m - x_{m-1} with m = i + 1
        let d = w[1] - w[0];
        if i % 2 == 0 {
            -d
        } else {
            d
        }
    });
    match (one_signed(diffs, slack), one_signed(signed, slack)) {
        (true, true) => MonotonicityClass::Both,
        (true, false) => MonotonicityClass::Monotone,
        (false, true) => MonotonicityClass::AntiMonotone,
        (false, false) => MonotonicityClass::Neither,
    }
}

/// Prefix length on which oscillating witnesses are expected to show a sign
/// change of their differences. Heuristic, not a proof.
pub fn witness_prefix_len(order: usize) -> usize {
    16 * (order + 1)
}
