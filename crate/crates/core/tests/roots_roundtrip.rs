//! Round trip `RootSet -> Polynomial -> RootSet` on random conjugate-closed
//! root sets with moduli in [0.2, 5] and multiplicities up to 3.

use std::f64::consts::PI;

use itereq_core::roots::{classify, find_roots};
use itereq_core::{Complex64, Polynomial, RootEntry, RootSet, ToleranceConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimal distance between generated roots; closer roots are
/// indistinguishable from a multiple root at double precision.
const MIN_SEPARATION: f64 = 0.3;

fn random_root_set(rng: &mut ChaCha8Rng, max_degree: usize) -> RootSet {
    let mut entries: Vec<RootEntry> = Vec::new();
    let mut degree = 0;
    let target = rng.gen_range(1..=max_degree);
    let mut attempts = 0;
    while degree < target && attempts < 100 {
        attempts += 1;
        let k = rng.gen_range(1..=3usize);
        let modulus = rng.gen_range(0.2..5.0);
        let real = rng.gen_bool(0.5);
        let z = if real {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            Complex64::new(sign * modulus, 0.0)
        } else {
            Complex64::from_polar(modulus, rng.gen_range(0.15..(PI - 0.15)))
        };
        let cost = if real { k } else { 2 * k };
        if degree + cost > max_degree {
            continue;
        }
        let clash = entries.iter().any(|e| {
            (e.root - z).norm() < MIN_SEPARATION || (e.root - z.conj()).norm() < MIN_SEPARATION
        });
        if clash {
            continue;
        }
        entries.push(RootEntry::new(z, k));
        if !real {
            entries.push(RootEntry::new(z.conj(), k));
        }
        degree += cost;
    }
    RootSet::new(entries).unwrap()
}

#[test]
fn find_roots_inverts_from_roots() {
    let cfg = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let rs = random_root_set(&mut rng, 8);
        let p = Polynomial::from_roots(&rs).unwrap();
        match find_roots(&p, &cfg) {
            Ok(found) => {
                if found.degree() != p.degree().unwrap() || !found.approx_eq(&rs, 1e-8) {
                    failures.push(format!("trial {trial}: {rs:?} -> {found:?}"));
                }
            }
            Err(e) => failures.push(format!("trial {trial}: {rs:?} -> {e}")),
        }
    }
    assert!(
        failures.is_empty(),
        "{} failures:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

#[test]
fn multiplicity_and_conjugate_closure_are_conserved() {
    let cfg = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let degree = rng.gen_range(1..=10);
        let coeffs: Vec<f64> = (0..=degree)
            .map(|k| {
                if k == degree {
                    1.0
                } else {
                    rng.gen_range(-3.0..3.0)
                }
            })
            .collect();
        let p = Polynomial::new(coeffs);
        let rs = find_roots(&p, &cfg).unwrap();
        assert_eq!(rs.degree(), degree);
        assert!(rs.is_conjugate_closed(1e-14));
        classify(&rs, cfg.imag_tol).unwrap();
    }
}
