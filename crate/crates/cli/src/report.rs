//! Report types and the commands that build them.
//!
//! Every report serializes to a JSON object whose `kind` field names the
//! command. Complex numbers are `[re, im]`, root entries `[[re, im], k]`,
//! real roots `[value, k]` and intervals their textual form such as
//! `"(0,inf)"`.

use serde::{Deserialize, Serialize};

use itereq_core::boros::{analyze_boros, classify_boros, BorosAnalysis, BorosClassification};
use itereq_core::lab::{
    verify_boros, verify_iterative, CandidateFunction, Family, VerificationReport,
};
use itereq_core::recurrence::{
    closed_form, evaluate_closed, iterate_recurrence, ClosedFormSolution,
};
use itereq_core::reduction::{
    analyze, reduce_boros_equation, AnalysisVerdict, Direction, ReductionChain,
};
use itereq_core::roots::{classify, find_roots};
use itereq_core::{
    Interval, IterativeEquation, Polynomial, Result, RootClassification, RootSet, ToleranceConfig,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Roots(RootsReport),
    Reduce(ReduceReport),
    Recurrence(RecurrenceReport),
    Verify(VerifyReport),
    Boros(BorosReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootsReport {
    pub coeffs: Vec<f64>,
    pub roots: RootSet,
    pub classification: RootClassification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub coeffs: Vec<f64>,
    pub domain: Interval,
    pub roots: RootSet,
    pub verdict: AnalysisVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub coeffs: Vec<f64>,
    pub init: Vec<f64>,
    pub closed_form: ClosedFormSolution,
    pub iterated: Vec<f64>,
    pub closed: Vec<f64>,
    /// `max |closed(m) - iterated(m)| / max(1, |iterated(m)|)`
    pub max_discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "equation", rename_all = "snake_case")]
pub enum VerifyTarget {
    Iterative { coeffs: Vec<f64> },
    Boros { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub target: VerifyTarget,
    pub candidate: CandidateFunction,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub description: String,
    pub coefficient: f64,
    pub exponent: f64,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorosReport {
    pub analysis: BorosAnalysis,
    pub classification: BorosClassification,
    pub checks: Vec<FamilyCheck>,
    /// Reduction of the log-transformed equation for each admissible
    /// direction.
    pub reductions: Vec<ReductionChain>,
}

pub fn roots_report(coeffs: &[f64], cfg: &ToleranceConfig) -> Result<RootsReport> {
    let eq = IterativeEquation::from_coeffs(coeffs)?;
    let roots = find_roots(eq.characteristic(), cfg)?;
    let classification = classify(&roots, cfg.imag_tol)?;
    Ok(RootsReport {
        coeffs: coeffs.to_vec(),
        roots,
        classification,
    })
}

pub fn reduce_report(
    coeffs: &[f64],
    domain: Interval,
    cfg: &ToleranceConfig,
) -> Result<ReduceReport> {
    let eq = IterativeEquation::new(Polynomial::new(coeffs.to_vec()), domain)?;
    let roots = find_roots(eq.characteristic(), cfg)?;
    let verdict = analyze(&eq, cfg)?;
    Ok(ReduceReport {
        coeffs: coeffs.to_vec(),
        domain,
        roots,
        verdict,
    })
}

pub fn recurrence_report(
    coeffs: &[f64],
    init: &[f64],
    terms: usize,
    cfg: &ToleranceConfig,
) -> Result<RecurrenceReport> {
    let eq = IterativeEquation::from_coeffs(coeffs)?;
    let iterated = iterate_recurrence(&eq, init, terms)?;
    let roots = find_roots(eq.characteristic(), cfg)?;
    let cf = closed_form(&roots, init)?;
    let closed: Vec<f64> = (0..iterated.len())
        .map(|m| evaluate_closed(&cf, m))
        .collect();
    let max_discrepancy = iterated
        .iter()
        .zip(&closed)
        .map(|(x, c)| (x - c).abs() / x.abs().max(1.0))
        .fold(0.0, f64::max);
    Ok(RecurrenceReport {
        coeffs: coeffs.to_vec(),
        init: init.to_vec(),
        closed_form: cf,
        iterated,
        closed,
        max_discrepancy,
    })
}

pub fn verify_report(
    target: VerifyTarget,
    family: Family,
    domain: Interval,
    grid: usize,
    tol: f64,
) -> Result<VerifyReport> {
    let candidate = CandidateFunction::new(family, domain)?;
    let report = match &target {
        VerifyTarget::Iterative { coeffs } => {
            let eq = IterativeEquation::new(Polynomial::new(coeffs.clone()), domain)?;
            verify_iterative(&eq, &candidate, grid, tol)?
        }
        VerifyTarget::Boros { n } => verify_boros(*n, &candidate, grid, tol)?,
    };
    Ok(VerifyReport {
        target,
        candidate,
        report,
    })
}

pub fn boros_report(
    n: usize,
    interval: Interval,
    cfg: &ToleranceConfig,
    grid: usize,
    tol: f64,
) -> Result<BorosReport> {
    let classification = classify_boros(n, &interval)?;
    let analysis = analyze_boros(n, cfg)?;
    let mut checks = Vec::new();
    for family in &classification.families {
        for c in family.coefficient.representatives() {
            let f = CandidateFunction::power(c, family.exponent, interval)?;
            checks.push(FamilyCheck {
                description: family.description.clone(),
                coefficient: c,
                exponent: family.exponent,
                report: verify_boros(n, &f, grid, tol)?,
            });
        }
    }
    let mut reductions = vec![reduce_boros_equation(n, Direction::Increasing, cfg)?];
    if n % 2 == 1 {
        reductions.push(reduce_boros_equation(n, Direction::Decreasing, cfg)?);
    }
    Ok(BorosReport {
        analysis,
        classification,
        checks,
        reductions,
    })
}
