//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use itereq_core::boros::{
    analyze_boros, boros_characteristic, classify_boros, find_r0, pair_arguments, sine_inequality,
    R0_TOL,
};
use itereq_core::lab::{verify_boros, verify_iterative, CandidateFunction, Verdict};
use itereq_core::recurrence::{
    classify_monotonicity, closed_form, default_slack, evaluate_closed, iterate_recurrence,
    witness_prefix_len, MonotonicityClass,
};
use itereq_core::reduction::{analyze, ReductionResult, Rule};
use itereq_core::roots::{classify, find_roots, RootEntry};
use itereq_core::{Complex64, Interval, IterativeEquation, Polynomial, RootSet, ToleranceConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn err<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{context}: {e}")
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed <= limit {
        Ok(format!("{:.3}s", elapsed.as_secs_f64()))
    } else {
        Err(format!(
            "took {:.3}s, limit {:.0}s",
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        ))
    }
}

fn factorization_identity() -> Outcome {
    let start = Instant::now();
    for n in 2..=40usize {
        let ch = boros_characteristic(n).map_err(err("boros_characteristic"))?;
        let cofactor: Vec<i64> = (0..n - 1).map(|i| (n - 1 - i) as i64).collect();
        ensure!(
            ch.cofactor_coeffs == cofactor,
            "n = {n}: cofactor {:?}",
            ch.cofactor_coeffs
        );
        let square = [1i64, -2, 1];
        let mut product = vec![0i64; n + 1];
        for (i, a) in square.iter().enumerate() {
            for (j, b) in cofactor.iter().enumerate() {
                product[i + j] += a * b;
            }
        }
        let mut expected = vec![0i64; n + 1];
        expected[0] = n as i64 - 1;
        expected[1] = -(n as i64);
        expected[n] += 1;
        ensure!(product == expected, "n = {n}: product {product:?}");
        ensure!(
            ch.char_coeffs == expected,
            "n = {n}: library {:?}",
            ch.char_coeffs
        );
    }
    let time = within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("n in [2, 40] exact, {time}"))
}

fn boros_cubic() -> Outcome {
    let r0 = find_r0(3, R0_TOL).map_err(err("find_r0"))?.value;
    ensure!((r0 + 2.0).abs() <= 1e-12, "r0 = {r0}");
    let cls = classify_boros(3, &Interval::positive_half_line()).map_err(err("classify"))?;
    let descriptions: Vec<&str> = cls
        .families
        .iter()
        .map(|f| f.description.as_str())
        .collect();
    ensure!(
        descriptions == ["f(x) = c x", "f(x) = c/x^2"],
        "families {descriptions:?}"
    );
    ensure!(
        cls.families[0].exponent == 1.0 && (cls.families[1].exponent + 2.0).abs() <= 1e-12,
        "exponents"
    );
    let mut worst: f64 = 0.0;
    for family in &cls.families {
        for c in [0.5, 1.0, 3.0] {
            ensure!(
                family.coefficient.contains(c),
                "c = {c} outside {}",
                family.coefficient
            );
            let f = CandidateFunction::power(c, family.exponent, Interval::positive_half_line())
                .map_err(err("candidate"))?;
            let r = verify_boros(3, &f, 257, 1e-9).map_err(err("verify_boros"))?;
            ensure!(
                r.verdict == Verdict::Solves && r.max_relative_residual <= 1e-9,
                "{} with c = {c}: {} ({:e})",
                family.description,
                r.verdict,
                r.max_relative_residual
            );
            worst = worst.max(r.max_relative_residual);
        }
    }
    Ok(format!(
        "r0 = {r0}, cx and c/x^2 solve, max relative residual {worst:.1e}"
    ))
}

fn root_bounds() -> Outcome {
    let mut worst_vieta: f64 = 0.0;
    let mut tightest: f64 = f64::INFINITY;
    for n in (5..=19).step_by(2) {
        let ba = analyze_boros(n, &cfg()).map_err(err("analyze_boros"))?;
        let r0 = ba.r0.ok_or(format!("n = {n}: no r0"))?;
        let cls = classify(&ba.roots, cfg().imag_tol).map_err(err("classify"))?;
        let mut product = r0;
        for pair in &cls.conjugate_pairs {
            let m = pair.modulus;
            ensure!(
                1.0 + 1e-9 < m && m < -r0 - 1e-9,
                "n = {n}: |z| = {m} outside (1, {})",
                -r0
            );
            tightest = tightest.min(-r0 - m);
            product *= (m * m).powi(pair.multiplicity as i32);
        }
        let vieta = (product + (n as f64 - 1.0)).abs() / (n as f64 - 1.0);
        ensure!(vieta <= 1e-8, "n = {n}: vieta residual {vieta:e}");
        worst_vieta = worst_vieta.max(vieta);
        ensure!(ba.bound_ok, "n = {n}: library bound check failed");
    }
    for n in (2..=20).step_by(2) {
        let ba = analyze_boros(n, &cfg()).map_err(err("analyze_boros"))?;
        let cls = classify(&ba.roots, cfg().imag_tol).map_err(err("classify"))?;
        let others: Vec<f64> = cls
            .real_roots
            .iter()
            .map(|r| r.value)
            .filter(|v| (v - 1.0).abs() > 1e-9)
            .collect();
        ensure!(others.is_empty(), "n = {n}: extra real roots {others:?}");
        ensure!(
            pair_arguments(&ba).map_err(err("pairs"))?.len() * 2 == n - 2,
            "n = {n}"
        );
    }
    Ok(format!(
        "odd n in [5, 19]: smallest margin below -r0 {tightest:.2e}, worst vieta {worst_vieta:.1e}; even n in [2, 20]: only root 1"
    ))
}

fn linear(slope: f64) -> CandidateFunction {
    CandidateFunction::affine(slope, 0.0, Interval::real_line()).unwrap()
}

fn solves(eq: &IterativeEquation, slope: f64, what: &str) -> Result<f64, String> {
    let r = verify_iterative(eq, &linear(slope), 257, 1e-10).map_err(err("verify"))?;
    ensure!(
        r.verdict == Verdict::Solves && r.max_relative_residual <= 1e-10,
        "g(x) = {slope}x on {what}: {} ({:e})",
        r.verdict,
        r.max_relative_residual
    );
    Ok(r.max_relative_residual)
}

fn find_rule(results: &[ReductionResult], rule: Rule) -> Result<&ReductionResult, String> {
    results
        .iter()
        .find(|r| r.rule == rule)
        .ok_or(format!("{rule} did not fire"))
}

fn reduction_instances() -> Outcome {
    let line = Interval::real_line();
    let eq = IterativeEquation::from_coeffs(&[-1.0, 3.0, -2.5, 1.0]).map_err(err("equation"))?;
    let v = analyze(&eq, &cfg()).map_err(err("analyze"))?;
    let r1 = find_rule(&v.results, Rule::R1)?;
    let reduced = r1.reduced_poly.coeffs();
    ensure!(
        reduced.len() == 2 && (reduced[0] + 0.5).abs() <= 1e-12 && reduced[1] == 1.0,
        "R1 reduced to {:?}",
        reduced
    );
    let mut worst = solves(
        &r1.reduced_equation(line).map_err(err("reduced"))?,
        0.5,
        "R1 reduced",
    )?;
    worst = worst.max(solves(&eq, 0.5, "original")?);

    let eq = IterativeEquation::from_coeffs(&[-6.0, 1.0, 1.0]).map_err(err("equation"))?;
    let v = analyze(&eq, &cfg()).map_err(err("analyze"))?;
    let r5 = find_rule(&v.results, Rule::R5)?;
    let r6 = find_rule(&v.results, Rule::R6i)?;
    for (r, slope) in [(r5, 2.0), (r6, -3.0)] {
        let reduced = r.reduced_equation(line).map_err(err("reduced"))?;
        worst = worst.max(solves(&reduced, slope, &format!("{} reduced", r.rule))?);
        worst = worst.max(solves(&eq, slope, "original")?);
    }
    Ok(format!(
        "R1 gives x/2; R5 gives 2x; R6(i) gives -3x; max relative residual {worst:.1e}"
    ))
}

/// Conjugate-closed root set with at most `max_degree` roots counted with
/// multiplicity, moduli in `moduli`, distinct roots at least `separation`
/// apart.
fn random_roots(
    rng: &mut ChaCha8Rng,
    max_degree: usize,
    moduli: (f64, f64),
    max_multiplicity: usize,
    separation: f64,
) -> RootSet {
    let degree = rng.gen_range(1..=max_degree);
    let mut entries: Vec<RootEntry> = Vec::new();
    let mut used = 0;
    while used < degree {
        let k = rng.gen_range(1..=max_multiplicity);
        let modulus = rng.gen_range(moduli.0..moduli.1);
        let pair = degree - used >= 2 * k && rng.gen_bool(0.5);
        let z = if pair {
            Complex64::from_polar(modulus, rng.gen_range(0.25..PI - 0.25))
        } else if rng.gen_bool(0.5) {
            Complex64::new(modulus, 0.0)
        } else {
            Complex64::new(-modulus, 0.0)
        };
        let k = if pair { k } else { k.min(degree - used) };
        if entries
            .iter()
            .any(|e| (e.root - z).norm() < separation || (e.root - z.conj()).norm() < separation)
        {
            continue;
        }
        entries.push(RootEntry::new(z, k));
        if pair {
            entries.push(RootEntry::new(z.conj(), k));
            used += 2 * k;
        } else {
            used += k;
        }
    }
    RootSet::new(entries).unwrap()
}

fn equation(rs: &RootSet) -> IterativeEquation {
    IterativeEquation::new(Polynomial::from_roots(rs).unwrap(), Interval::real_line()).unwrap()
}

fn closed_form_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0005);
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let rs = random_roots(&mut rng, 6, (0.5, 2.0), 2, 0.2);
        let init: Vec<f64> = (0..rs.degree()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let eq = equation(&rs);
        let xs = iterate_recurrence(&eq, &init, 30).map_err(err("iterate"))?;
        let found = find_roots(eq.characteristic(), &cfg()).map_err(err("find_roots"))?;
        let cf = closed_form(&found, &init).map_err(err("closed_form"))?;
        for (m, x) in xs.iter().enumerate() {
            let e = (evaluate_closed(&cf, m) - x).abs() / x.abs().max(1.0);
            ensure!(
                e <= 1e-8,
                "trial {trial}, m = {m}: {e:e} for {:?}",
                rs.entries()
            );
            worst = worst.max(e);
        }
    }
    let time = within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!(
        "200 trials, worst scaled error {worst:.1e}, {time}"
    ))
}

fn sine_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0006);
    let mut checked = 0;
    while checked < 10_000 {
        let n = rng.gen_range(2..=60usize);
        let phi = rng.gen_range(-4.0 * PI..4.0 * PI);
        if phi.sin().abs() <= 1e-6 {
            continue;
        }
        let s = sine_inequality(n, phi).map_err(err("sine_inequality"))?;
        ensure!(s.holds, "n = {n}, phi = {phi}: {} vs {}", s.lhs, s.rhs);
        ensure!(
            (n as f64 * phi).sin().abs() < n as f64 * phi.sin().abs(),
            "n = {n}, phi = {phi}: direct check"
        );
        checked += 1;
    }
    Ok(format!("{checked} random (n, phi)"))
}

fn no_solution_detection() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_itereq");
    for coeffs in ["1,0,1", "2,2,3,2,1"] {
        let out = Command::new(bin)
            .args(["reduce", "--coeffs", coeffs])
            .output()
            .map_err(err("spawn"))?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        ensure!(
            out.status.success(),
            "exit {:?} for {coeffs}",
            out.status.code()
        );
        ensure!(
            stdout.contains("no continuous solution"),
            "{coeffs}: output was\n{stdout}"
        );
    }
    Ok("r^2+1 and (r^2+1)(r^2+2r+2)".into())
}

fn dual_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0008);
    let mut rules = 0;
    for trial in 0..50 {
        let rs = random_roots(&mut rng, 6, (0.3, 3.0), 1, 0.3);
        let eq = equation(&rs);
        let direct_roots = find_roots(eq.characteristic(), &cfg()).map_err(err("roots"))?;
        let dual_roots = find_roots(eq.dual().characteristic(), &cfg()).map_err(err("roots"))?;
        let reciprocal = direct_roots.reciprocal().map_err(err("reciprocal"))?;
        ensure!(
            dual_roots.approx_eq(&reciprocal, 1e-10),
            "trial {trial}: dual roots {dual_roots:?} vs {reciprocal:?}"
        );
        let direct = analyze(&eq, &cfg()).map_err(err("analyze"))?;
        let dual = analyze(&eq.dual(), &cfg()).map_err(err("analyze dual"))?;
        ensure!(
            direct.no_solution == dual.no_solution && direct.open_case == dual.open_case,
            "trial {trial}: flags differ"
        );
        ensure!(
            direct.results.len() == dual.results.len(),
            "trial {trial}: rule counts differ"
        );
        for r in &direct.results {
            let matched = dual.results.iter().any(|d| {
                d.rule == r.rule.dual()
                    && d.requires_monotonicity == r.requires_monotonicity
                    && d.eliminated
                        .approx_eq(&r.eliminated.reciprocal().unwrap(), 1e-10)
                    && d.reduced.approx_eq(&r.reduced.reciprocal().unwrap(), 1e-10)
            });
            ensure!(matched, "trial {trial}: no dual counterpart for {}", r.rule);
            rules += 1;
        }
    }
    Ok(format!("50 equations, {rules} rule results matched"))
}

/// Orbit of an equation whose dominant roots are a conjugate pair with a
/// nonzero leading coefficient in the closed form.
fn witness(rng: &mut ChaCha8Rng) -> Result<Vec<f64>, String> {
    loop {
        let rho = rng.gen_range(0.8..2.0);
        let phi = rng.gen_range(0.25..PI - 0.25);
        let k = rng.gen_range(1..=2usize);
        let z = Complex64::from_polar(rho, phi);
        let mut entries = vec![RootEntry::new(z, k), RootEntry::new(z.conj(), k)];
        for _ in 0..rng.gen_range(0..=2) {
            let l = rng.gen_range(0.1..rho - 0.2);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            entries.push(RootEntry::real(sign * l, 1));
        }
        let Ok(rs) = RootSet::new(entries) else {
            continue;
        };
        let init: Vec<f64> = (0..rs.degree()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let cf = closed_form(&rs, &init).map_err(err("closed_form"))?;
        let pair = &cf.pair_terms[0];
        let top = pair
            .cos_poly
            .coeffs()
            .len()
            .max(pair.sin_poly.coeffs().len());
        if top < k {
            continue;
        }
        let lead = |p: &Polynomial| p.coeffs().get(k - 1).copied().unwrap_or(0.0);
        if lead(&pair.cos_poly).hypot(lead(&pair.sin_poly)) < 1e-3 {
            continue;
        }
        let len = witness_prefix_len(rs.degree());
        return iterate_recurrence(&equation(&rs), &init, len - 1).map_err(err("iterate"));
    }
}

fn monotonicity_classifier() -> Outcome {
    let class = |xs: &[f64]| classify_monotonicity(xs, default_slack(xs));
    let steps: Vec<f64> = (0..=4).map(f64::from).collect();
    ensure!(class(&steps) == MonotonicityClass::Monotone, "0..4");
    let alternating: Vec<f64> = (0..=6).map(|m| (-1f64).powi(m)).collect();
    ensure!(
        class(&alternating) == MonotonicityClass::AntiMonotone,
        "(-1)^m"
    );
    let quarter: Vec<f64> = (0..=8).map(|m| (m as f64 * PI / 2.0).cos()).collect();
    ensure!(class(&quarter) == MonotonicityClass::Neither, "cos(m pi/2)");

    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0009);
    for trial in 0..100 {
        let len = rng.gen_range(3..60);
        let mut x = rng.gen_range(-10.0..10.0);
        let up = rng.gen_bool(0.5);
        let anti = trial % 2 == 1;
        let mut xs = vec![x];
        for m in 1..len {
            let step = rng.gen_range(0.01..3.0) * if up { 1.0 } else { -1.0 };
            x += if anti && m % 2 == 1 { -step } else { step };
            xs.push(x);
        }
        let want = if anti {
            MonotonicityClass::AntiMonotone
        } else {
            MonotonicityClass::Monotone
        };
        ensure!(class(&xs) == want, "trial {trial}: {xs:?}");
    }

    for trial in 0..100 {
        let xs = witness(&mut rng)?;
        ensure!(
            class(&xs) == MonotonicityClass::Neither,
            "witness {trial} classified {:?}",
            class(&xs)
        );
    }
    Ok("3 examples, 100 constructions, 100 witnesses".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("factorization identity", factorization_identity),
        ("n = 3 ground truth", boros_cubic),
        ("root-bound lemmas", root_bounds),
        (
            "reduction equivalence on worked instances",
            reduction_instances,
        ),
        ("closed-form oracle equivalence", closed_form_oracle),
        ("sine inequality", sine_suite),
        ("no-solution detection", no_solution_detection),
        ("dual coherence", dual_coherence),
        ("monotonicity classifier", monotonicity_classifier),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
