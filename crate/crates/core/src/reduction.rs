//! Order reduction by root elimination.
//!
//! Each rule states conditions on the characteristic root set under which
//! the equation is equivalent, for continuous solutions of a given
//! monotonicity, to the equation whose characteristic polynomial keeps only
//! part of the roots.
//!
//! | rule   | hypothesis                                                 | eliminated          |
//! |--------|------------------------------------------------------------|---------------------|
//! | R1     | real moduli < pair moduli                                  | all pairs           |
//! | R2     | real moduli > pair moduli (via the dual)                   | all pairs           |
//! | R3     | as R1 ignoring a simple root 1, which is kept              | all pairs           |
//! | R4     | as R2 ignoring a simple root 1, which is kept              | all pairs           |
//! | R5     | extremes real of opposite sign, the rest strictly between  | negative extreme    |
//! | R6(i)  | as R5, positive extreme is not 1                           | positive extreme    |
//! | R6(ii) | as R5, positive extreme is 1 of multiplicity `k >= 2`      | `k - 1` copies of 1 |
//! | R7     | as R5/R6 for the roots other than a simple root 1          | extreme by direction|
//!
//! R5 concerns increasing solutions, R6 decreasing ones and R7 either,
//! keyed on the direction. The source statement of R7 speaks of decreasing
//! surjections while its conclusion covers both directions; here R7 is keyed
//! on the direction and requires surjectivity only when the dual is used.
//!
//! A rule that eliminates the extreme of smallest modulus does so through
//! the dual equation, whose roots are the reciprocals: the result is the
//! direct rule applied to the reciprocal root set, mapped back. Results
//! obtained this way need `g` to be surjective, which is automatic on the
//! real line.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::roots::{
    classify, find_roots, strictly_below, ConjugatePair, GapStatus, RealRoot, RootEntry,
};
use crate::{
    Complex64, Error, Interval, IterativeEquation, Polynomial, Result, RootSet, ToleranceConfig,
};

/// Absolute tolerance for recognising the root 1.
pub const UNIT_ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    #[serde(rename = "R6(i)")]
    R6i,
    #[serde(rename = "R6(ii)")]
    R6ii,
    R7,
}

impl Rule {
    /// The rule that yields the same result on the dual equation.
    pub fn dual(self) -> Rule {
        match self {
            Rule::R1 => Rule::R2,
            Rule::R2 => Rule::R1,
            Rule::R3 => Rule::R4,
            Rule::R4 => Rule::R3,
            other => other,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6i => "R6(i)",
            Rule::R6ii => "R6(ii)",
            Rule::R7 => "R7",
        };
        f.write_str(s)
    }
}

/// Direction of a strictly monotone solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "increasing" | "inc" => Ok(Direction::Increasing),
            "decreasing" | "dec" => Ok(Direction::Decreasing),
            _ => Err(Error::InvalidArgument(format!("unknown direction `{s}`"))),
        }
    }
}

/// Monotonicity a solution must have for a result to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Any,
    Increasing,
    Decreasing,
}

impl Monotonicity {
    pub fn admits(self, direction: Direction) -> bool {
        match self {
            Monotonicity::Any => true,
            Monotonicity::Increasing => direction == Direction::Increasing,
            Monotonicity::Decreasing => direction == Direction::Decreasing,
        }
    }
}

impl From<Direction> for Monotonicity {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Increasing => Monotonicity::Increasing,
            Direction::Decreasing => Monotonicity::Decreasing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionResult {
    pub rule: Rule,
    pub requires_monotonicity: Monotonicity,
    pub requires_surjectivity: bool,
    /// Surjectivity is required but holds for every continuous solution
    /// because the domain is the real line.
    pub surjectivity_automatic: bool,
    pub used_dual: bool,
    pub eliminated: RootSet,
    pub reduced: RootSet,
    /// Monic characteristic polynomial of the reduced equation.
    pub reduced_poly: Polynomial,
}

impl ReductionResult {
    /// The reduced equation on the same domain.
    pub fn reduced_equation(&self, domain: Interval) -> Result<IterativeEquation> {
        IterativeEquation::new(self.reduced_poly.clone(), domain)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisVerdict {
    pub results: Vec<ReductionResult>,
    /// Every root is non-real: no continuous solution exists.
    pub no_solution: bool,
    /// A real root and a conjugate pair share the largest (or, for the
    /// dual, the smallest) modulus within `gap_tol`.
    pub open_case: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Item {
    Real(RealRoot),
    Pair(ConjugatePair),
}

impl Item {
    fn modulus(&self) -> f64 {
        match self {
            Item::Real(r) => r.value.abs(),
            Item::Pair(p) => p.modulus,
        }
    }

    fn multiplicity(&self) -> usize {
        match self {
            Item::Real(r) => r.multiplicity,
            Item::Pair(p) => p.multiplicity,
        }
    }

    fn real_value(&self) -> Option<f64> {
        match self {
            Item::Real(r) => Some(r.value),
            Item::Pair(_) => None,
        }
    }

    fn is_unit(&self) -> bool {
        self.real_value()
            .is_some_and(|v| (v - 1.0).abs() <= UNIT_ROOT_TOL)
    }

    fn with_multiplicity(&self, multiplicity: usize) -> Item {
        match *self {
            Item::Real(r) => Item::Real(RealRoot { multiplicity, ..r }),
            Item::Pair(p) => Item::Pair(ConjugatePair { multiplicity, ..p }),
        }
    }

    /// `1/z`; the pair `rho e^{+-i phi}` maps to `rho^-1 e^{-+i phi}`.
    fn reciprocal(&self) -> Item {
        match *self {
            Item::Real(r) => Item::Real(RealRoot {
                value: r.value.recip(),
                ..r
            }),
            Item::Pair(p) => Item::Pair(ConjugatePair {
                modulus: p.modulus.recip(),
                ..p
            }),
        }
    }
}

fn moduli<'a>(items: impl IntoIterator<Item = &'a Item>) -> Vec<f64> {
    items.into_iter().map(Item::modulus).collect()
}

fn to_root_set(items: &[Item]) -> Result<RootSet> {
    let mut entries = Vec::new();
    for item in items {
        match item {
            Item::Real(r) => entries.push(RootEntry::real(r.value, r.multiplicity)),
            Item::Pair(p) => {
                let z = p.upper();
                entries.push(RootEntry::new(z, p.multiplicity));
                entries.push(RootEntry::new(z.conj(), p.multiplicity));
            }
        }
    }
    RootSet::new(entries)
}

/// Outcome of a rule on the direct side, before mapping through the dual.
struct Outcome {
    rule: Rule,
    monotonicity: Monotonicity,
    eliminated: Vec<Item>,
    reduced: Vec<Item>,
}

fn split_unit(items: &[Item]) -> Option<(Item, Vec<Item>)> {
    let idx = items.iter().position(Item::is_unit)?;
    if items[idx].multiplicity() != 1 {
        return None;
    }
    let mut rest = items.to_vec();
    let unit = rest.remove(idx);
    Some((unit, rest))
}

fn strict(lower: &[f64], upper: &[f64], gap_tol: f64) -> bool {
    strictly_below(lower, upper, gap_tol) == GapStatus::Strict
}

/// R1 on the direct side: all real moduli below all pair moduli.
fn eliminate_pairs(items: &[Item], gap_tol: f64) -> Option<Outcome> {
    let (reals, pairs): (Vec<Item>, Vec<Item>) =
        items.iter().partition(|i| matches!(i, Item::Real(_)));
    if reals.is_empty() || pairs.is_empty() || !strict(&moduli(&reals), &moduli(&pairs), gap_tol) {
        return None;
    }
    Some(Outcome {
        rule: Rule::R1,
        monotonicity: Monotonicity::Any,
        eliminated: pairs,
        reduced: reals,
    })
}

/// R3 on the direct side: as R1 for the roots other than a simple root 1.
fn eliminate_pairs_keeping_unit(items: &[Item], gap_tol: f64) -> Option<Outcome> {
    let (unit, rest) = split_unit(items)?;
    let (others, pairs): (Vec<Item>, Vec<Item>) =
        rest.iter().partition(|i| matches!(i, Item::Real(_)));
    if pairs.is_empty() || !strict(&moduli(&others), &moduli(&pairs), gap_tol) {
        return None;
    }
    let mut reduced = vec![unit];
    reduced.extend(others);
    Some(Outcome {
        rule: Rule::R3,
        monotonicity: Monotonicity::Any,
        eliminated: pairs,
        reduced,
    })
}

/// Indices of the smallest and largest modulus items when both are real,
/// of opposite sign, and every other item lies strictly between them.
fn real_extremes(items: &[Item], gap_tol: f64) -> Option<(usize, usize)> {
    if items.len() < 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| items[a].modulus().total_cmp(&items[b].modulus()));
    let lo = order[0];
    let hi = order[order.len() - 1];
    let (a, b) = (items[lo].real_value()?, items[hi].real_value()?);
    if a * b >= 0.0 {
        return None;
    }
    let middle = moduli(order[1..order.len() - 1].iter().map(|&i| &items[i]));
    let (m_lo, m_hi) = ([items[lo].modulus()], [items[hi].modulus()]);
    let ok = strict(&m_lo, &m_hi, gap_tol)
        && strict(&m_lo, &middle, gap_tol)
        && strict(&middle, &m_hi, gap_tol);
    ok.then_some((lo, hi))
}

/// R5/R6 on the direct side: eliminates the extreme of largest modulus.
fn eliminate_extreme(items: &[Item], gap_tol: f64) -> Option<Outcome> {
    let (_, hi) = real_extremes(items, gap_tol)?;
    let top = items[hi];
    let value = top.real_value()?;
    let mut reduced: Vec<Item> = items
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != hi)
        .map(|(_, it)| *it)
        .collect();
    let (rule, monotonicity, eliminated) = if value < 0.0 {
        (Rule::R5, Monotonicity::Increasing, top)
    } else if top.is_unit() {
        let k = top.multiplicity();
        if k < 2 {
            return None;
        }
        reduced.push(top.with_multiplicity(1));
        (
            Rule::R6ii,
            Monotonicity::Decreasing,
            top.with_multiplicity(k - 1),
        )
    } else {
        (Rule::R6i, Monotonicity::Decreasing, top)
    };
    Some(Outcome {
        rule,
        monotonicity,
        eliminated: vec![eliminated],
        reduced,
    })
}

/// R7 on the direct side: as R5/R6 for the roots other than a simple root 1.
fn eliminate_extreme_keeping_unit(items: &[Item], gap_tol: f64) -> Option<Outcome> {
    let (unit, rest) = split_unit(items)?;
    let mut out = eliminate_extreme(&rest, gap_tol)?;
    out.rule = Rule::R7;
    out.reduced.push(unit);
    Some(out)
}

fn direct_outcomes(items: &[Item], gap_tol: f64) -> Vec<Outcome> {
    [
        eliminate_pairs(items, gap_tol),
        eliminate_pairs_keeping_unit(items, gap_tol),
        eliminate_extreme(items, gap_tol),
        eliminate_extreme_keeping_unit(items, gap_tol),
    ]
    .into_iter()
    .flatten()
    .collect()
}

fn rule_rank(rule: Rule) -> u8 {
    match rule {
        Rule::R1 => 1,
        Rule::R2 => 2,
        Rule::R3 => 3,
        Rule::R4 => 4,
        Rule::R5 => 5,
        Rule::R6i => 6,
        Rule::R6ii => 7,
        Rule::R7 => 8,
    }
}

fn monotonicity_rank(m: Monotonicity) -> u8 {
    match m {
        Monotonicity::Any => 0,
        Monotonicity::Increasing => 1,
        Monotonicity::Decreasing => 2,
    }
}

fn build(out: Outcome, used_dual: bool, domain: &Interval) -> Result<ReductionResult> {
    let (eliminated, reduced) = if used_dual {
        let back = |v: Vec<Item>| v.iter().map(Item::reciprocal).collect::<Vec<_>>();
        (back(out.eliminated), back(out.reduced))
    } else {
        (out.eliminated, out.reduced)
    };
    let reduced = to_root_set(&reduced)?.sorted();
    let reduced_poly = Polynomial::from_roots(&reduced)?;
    Ok(ReductionResult {
        rule: if used_dual { out.rule.dual() } else { out.rule },
        requires_monotonicity: out.monotonicity,
        requires_surjectivity: used_dual,
        surjectivity_automatic: used_dual && domain.is_real_line(),
        used_dual,
        eliminated: to_root_set(&eliminated)?.sorted(),
        reduced,
        reduced_poly,
    })
}

/// Whether a real root and a pair both attain the largest or the smallest
/// modulus, within `gap_tol`.
fn tie_at_extreme(items: &[Item], gap_tol: f64) -> bool {
    let tie = |target: f64| {
        let near = |i: &&Item| (i.modulus() - target).abs() <= gap_tol * target;
        let real = items
            .iter()
            .filter(near)
            .any(|i| matches!(i, Item::Real(_)));
        let pair = items
            .iter()
            .filter(near)
            .any(|i| matches!(i, Item::Pair(_)));
        real && pair
    };
    let ms = moduli(items);
    let max = ms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ms.iter().copied().fold(f64::INFINITY, f64::min);
    !ms.is_empty() && (tie(max) || tie(min))
}

/// Every applicable rule for a root set, in rule order.
pub fn analyze_root_set(
    rs: &RootSet,
    domain: &Interval,
    cfg: &ToleranceConfig,
) -> Result<AnalysisVerdict> {
    cfg.validate()?;
    let cls = classify(rs, cfg.imag_tol)?;
    if rs
        .entries()
        .iter()
        .any(|e| e.root == Complex64::new(0.0, 0.0))
    {
        return Err(Error::InvalidEquation("zero characteristic root".into()));
    }
    let items: Vec<Item> = cls
        .real_roots
        .iter()
        .map(|&r| Item::Real(r))
        .chain(cls.conjugate_pairs.iter().map(|&p| Item::Pair(p)))
        .collect();
    if cls.real_roots.is_empty() {
        return Ok(AnalysisVerdict {
            results: Vec::new(),
            no_solution: !items.is_empty(),
            open_case: false,
        });
    }
    let reciprocal: Vec<Item> = items.iter().map(Item::reciprocal).collect();
    let mut results = Vec::new();
    for out in direct_outcomes(&items, cfg.gap_tol) {
        results.push(build(out, false, domain)?);
    }
    for out in direct_outcomes(&reciprocal, cfg.gap_tol) {
        results.push(build(out, true, domain)?);
    }
    results.sort_by_key(|r| {
        (
            rule_rank(r.rule),
            monotonicity_rank(r.requires_monotonicity),
        )
    });
    Ok(AnalysisVerdict {
        results,
        no_solution: false,
        open_case: tie_at_extreme(&items, cfg.gap_tol),
    })
}

/// Finds the characteristic roots of `eq` and applies every rule.
pub fn analyze(eq: &IterativeEquation, cfg: &ToleranceConfig) -> Result<AnalysisVerdict> {
    let rs = find_roots(eq.characteristic(), cfg)?;
    analyze_root_set(&rs, eq.domain(), cfg)
}

/// Successive reductions of the log-transformed Boros equation
/// `g^n - n g + (n - 1) id = 0` down to order two.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionChain {
    pub n: usize,
    pub direction: Direction,
    pub steps: Vec<ReductionResult>,
    pub reduced: RootSet,
    pub reduced_poly: Polynomial,
}

/// Reduces the order-`n` Boros characteristic polynomial for solutions of
/// the given direction: `(r - 1)^2` for increasing ones and
/// `(r - 1)(r - r0)` for decreasing ones (odd `n` only).
pub fn reduce_boros_equation(
    n: usize,
    direction: Direction,
    cfg: &ToleranceConfig,
) -> Result<ReductionChain> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if direction == Direction::Decreasing && n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "no decreasing solutions exist for even n = {n}"
        )));
    }
    let ba = crate::boros::boros_characteristic(n)?;
    // a decreasing solution forces the whole real line as domain
    let domain = Interval::real_line();
    let mut current = find_roots(&ba.char_poly, cfg)?;
    let mut steps = Vec::new();
    while current.degree() > 2 {
        let verdict = analyze_root_set(&current, &domain, cfg)?;
        let Some(next) = verdict
            .results
            .into_iter()
            .find(|r| r.requires_monotonicity.admits(direction))
        else {
            break;
        };
        current = next.reduced.clone();
        steps.push(next);
    }
    let cls = classify(&current, cfg.imag_tol)?;
    let unit = cls
        .real_roots
        .iter()
        .find(|r| (r.value - 1.0).abs() <= UNIT_ROOT_TOL);
    let expected = match direction {
        Direction::Increasing => unit.is_some_and(|u| u.multiplicity == 2),
        Direction::Decreasing => {
            unit.is_some_and(|u| u.multiplicity == 1)
                && cls.real_roots.len() == 2
                && cls.real_roots.iter().any(|r| r.value < -1.0)
        }
    };
    if current.degree() != 2 || !expected {
        return Err(Error::Internal(format!(
            "reduction of the n = {n} Boros equation stalled at {:?}",
            current.entries()
        )));
    }
    let reduced_poly = Polynomial::from_roots(&current)?;
    Ok(ReductionChain {
        n,
        direction,
        steps,
        reduced: current,
        reduced_poly,
    })
}
