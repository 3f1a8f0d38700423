//! Human-readable rendering of reports.

use std::fmt::Write;

use itereq_core::lab::{Verdict, VerificationReport};
use itereq_core::reduction::{Monotonicity, ReductionResult};
use itereq_core::{Polynomial, RootSet};

use crate::report::{
    BorosReport, RecurrenceReport, ReduceReport, Report, RootsReport, VerifyReport, VerifyTarget,
};

/// Shortest of `{}` and 12 significant digits, snapping near-integers.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded = x.round();
    if (x - rounded).abs() <= 1e-12 * x.abs() {
        return format!("{}", rounded + 0.0);
    }
    let short = format!("{:.11e}", x).parse::<f64>().unwrap_or(x);
    let plain = short.to_string();
    if plain.len() <= 18 {
        plain
    } else {
        format!("{short:e}")
    }
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", ")
}

fn poly(p: &Polynomial) -> String {
    let snapped: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|&c| num(c).parse().unwrap_or(c))
        .collect();
    Polynomial::new(snapped).to_string()
}

fn root_set(rs: &RootSet) -> String {
    if rs.is_empty() {
        return "(none)".into();
    }
    rs.entries()
        .iter()
        .map(|e| {
            let z = if e.root.im == 0.0 {
                num(e.root.re)
            } else {
                let sign = if e.root.im < 0.0 { '-' } else { '+' };
                format!("{} {sign} {}i", num(e.root.re), num(e.root.im.abs()))
            };
            if e.multiplicity == 1 {
                z
            } else {
                format!("{z} (x{})", e.multiplicity)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn roots(r: &RootsReport) -> String {
    let mut out = String::new();
    let p = Polynomial::new(r.coeffs.clone());
    let _ = writeln!(out, "characteristic polynomial: {}", poly(&p));
    let _ = writeln!(out, "roots:");
    for e in r.classification.real_roots.iter() {
        let _ = writeln!(out, "  {}  multiplicity {}", num(e.value), e.multiplicity);
    }
    for p in &r.classification.conjugate_pairs {
        let z = p.upper();
        let _ = writeln!(
            out,
            "  {} +- {}i  multiplicity {}  modulus {}  argument {}",
            num(z.re),
            num(z.im),
            p.multiplicity,
            num(p.modulus),
            num(p.argument)
        );
    }
    out
}

fn monotonicity(m: Monotonicity) -> &'static str {
    match m {
        Monotonicity::Any => "any continuous solution",
        Monotonicity::Increasing => "increasing solutions",
        Monotonicity::Decreasing => "decreasing solutions",
    }
}

fn reduction(out: &mut String, r: &ReductionResult, indent: &str) {
    let surj = match (r.requires_surjectivity, r.surjectivity_automatic) {
        (false, _) => "surjectivity not required",
        (true, true) => "surjectivity required (automatic on the real line)",
        (true, false) => "surjectivity required",
    };
    let _ = writeln!(
        out,
        "{indent}{}: for {}; {surj}{}",
        r.rule,
        monotonicity(r.requires_monotonicity),
        if r.used_dual {
            "; via the dual equation"
        } else {
            ""
        }
    );
    let _ = writeln!(out, "{indent}  eliminated: {}", root_set(&r.eliminated));
    let _ = writeln!(out, "{indent}  reduced:    {}", poly(&r.reduced_poly));
    let _ = writeln!(
        out,
        "{indent}  reduced coefficients: {}",
        list(r.reduced_poly.coeffs())
    );
}

fn reduce(r: &ReduceReport) -> String {
    let mut out = String::new();
    let p = Polynomial::new(r.coeffs.clone());
    let _ = writeln!(
        out,
        "characteristic polynomial: {}  on {}",
        poly(&p),
        r.domain
    );
    let _ = writeln!(out, "roots: {}", root_set(&r.roots));
    if r.verdict.no_solution {
        let _ = writeln!(
            out,
            "no continuous solution: every characteristic root is non-real"
        );
    } else if r.verdict.results.is_empty() {
        let _ = writeln!(out, "no reduction rule applies");
    }
    for res in &r.verdict.results {
        reduction(&mut out, res, "");
    }
    if r.verdict.open_case {
        let _ = writeln!(
            out,
            "open case: a real root and a conjugate pair share the extreme modulus"
        );
    }
    out
}

fn recurrence(r: &RecurrenceReport) -> String {
    let mut out = String::new();
    let cf = &r.closed_form;
    let _ = writeln!(out, "closed form (condition number {}):", num(cf.condition));
    for t in &cf.real_terms {
        let _ = writeln!(out, "  ({}) * {}^m", poly_in_m(&t.poly), num(t.root));
    }
    for t in &cf.pair_terms {
        let _ = writeln!(
            out,
            "  (({}) cos({} m) + ({}) sin({} m)) * {}^m",
            poly_in_m(&t.cos_poly),
            num(t.argument),
            poly_in_m(&t.sin_poly),
            num(t.argument),
            num(t.modulus)
        );
    }
    let _ = writeln!(out, "m  iterated  closed");
    for (m, (x, c)) in r.iterated.iter().zip(&r.closed).enumerate() {
        let _ = writeln!(out, "{m}  {}  {}", num(*x), num(*c));
    }
    let _ = writeln!(out, "max relative discrepancy: {:e}", r.max_discrepancy);
    out
}

fn poly_in_m(p: &Polynomial) -> String {
    poly(p).replace('r', "m")
}

fn verification(out: &mut String, v: &VerificationReport, indent: &str) {
    let _ = writeln!(
        out,
        "{indent}verdict: {}  (max residual {:e}, scale {:e}, max relative {:e}, {} samples)",
        v.verdict, v.max_residual, v.residual_scale, v.max_relative_residual, v.samples
    );
    if let Some(d) = &v.diagnostic {
        let _ = writeln!(out, "{indent}  {d}");
    }
    if let Some(c) = &v.cross_check {
        let _ = writeln!(
            out,
            "{indent}  direct-domain check: {} (max relative {:e})",
            c.verdict, c.max_relative_residual
        );
    }
    let dir = v
        .direction
        .map_or("not monotone".to_string(), |d| d.to_string());
    let _ = writeln!(
        out,
        "{indent}  injective on grid: {}; direction: {dir}",
        v.injective_on_grid
    );
    for n in &v.notes {
        let _ = writeln!(out, "{indent}  note: {n}");
    }
}

fn verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    match &r.target {
        VerifyTarget::Iterative { coeffs } => {
            let _ = writeln!(out, "equation coefficients: {}", list(coeffs));
        }
        VerifyTarget::Boros { n } => {
            let _ = writeln!(out, "f^{n}(x) = f(x)^{n} / x^{}", n - 1);
        }
    }
    let _ = writeln!(
        out,
        "candidate: {} on {}",
        r.candidate.family(),
        r.candidate.domain()
    );
    verification(&mut out, &r.report, "");
    out
}

fn boros(r: &BorosReport) -> String {
    let mut out = String::new();
    let a = &r.analysis;
    let c = &r.classification;
    let _ = writeln!(out, "n = {}  J = {}", a.n, c.interval);
    let _ = writeln!(out, "characteristic polynomial: {}", poly(&a.char_poly));
    let _ = writeln!(out, "cofactor of (r - 1)^2: {}", poly(&a.cofactor));
    if let (Some(r0), Some(res)) = (a.r0, a.r0_residual) {
        let _ = writeln!(out, "r0 = {r0}  (residual {res:e})");
    }
    let _ = writeln!(
        out,
        "modulus bounds hold: {}  vieta residual: {:e}",
        a.bound_ok, a.vieta_residual
    );
    let _ = writeln!(out, "case {}", c.case);
    for f in &c.families {
        let _ = writeln!(out, "  {}  {}", f.description, f.coefficient);
    }
    for check in &r.checks {
        let _ = writeln!(
            out,
            "  check {} with c = {}:",
            check.description,
            num(check.coefficient)
        );
        verification(&mut out, &check.report, "    ");
    }
    for chain in &r.reductions {
        let _ = writeln!(
            out,
            "reduction for {} solutions: {}",
            chain.direction,
            poly(&chain.reduced_poly)
        );
        for step in &chain.steps {
            reduction(&mut out, step, "  ");
        }
    }
    let all_solve = r.checks.iter().all(|c| c.report.verdict == Verdict::Solves);
    let _ = writeln!(
        out,
        "all listed families verified: {}",
        if all_solve { "yes" } else { "no" }
    );
    let _ = writeln!(out, "note: {}", c.note);
    out
}

pub fn render(report: &Report) -> String {
    match report {
        Report::Roots(r) => roots(r),
        Report::Reduce(r) => reduce(r),
        Report::Recurrence(r) => recurrence(r),
        Report::Verify(r) => verify(r),
        Report::Boros(r) => boros(r),
    }
}
