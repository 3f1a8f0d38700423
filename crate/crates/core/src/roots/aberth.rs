//! Aberth–Ehrlich simultaneous iteration, used when the QR iteration on the
//! companion matrix stalls.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Polynomial, Result};

const MAX_SWEEPS: usize = 2000;

/// All roots of a polynomial with nonzero constant term.
pub(crate) fn solve(p: &Polynomial) -> Result<Vec<Complex64>> {
    let n = p.degree().ok_or(Error::DegreeTooLow)?;
    let dp = p.derivative();
    let lead = p.leading().unwrap_or(1.0).abs();
    // geometric mean of the root moduli as the starting radius
    let radius = (p.coeff(0).abs() / lead)
        .powf(1.0 / n as f64)
        .max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut frozen = vec![false; n];

    for _ in 0..MAX_SWEEPS {
        let mut all_frozen = true;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let pz = p.evaluate(z[i]);
            let dpz = dp.evaluate(z[i]);
            let scale: f64 = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, a)| a.abs() * z[i].norm().powi(k as i32))
                .sum();
            if pz.norm() <= 4.0 * f64::EPSILON * scale {
                frozen[i] = true;
                continue;
            }
            all_frozen = false;
            let newton = if dpz.norm() == 0.0 {
                Complex64::new(radius * 1e-3, radius * 1e-3)
            } else {
                pz / dpz
            };
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i && z[j] != z[i])
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            let next = z[i] - step;
            if !next.re.is_finite() || !next.im.is_finite() {
                return Err(Error::NoConvergence);
            }
            if (next - z[i]).norm() <= f64::EPSILON * next.norm() {
                frozen[i] = true;
            }
            z[i] = next;
        }
        if all_frozen {
            return Ok(z);
        }
    }
    // a stalled cluster still carries usable approximations; the
    // reconstruction check downstream decides
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_double_roots() {
        // (r - 4)^2 (r + 4)^2 = r^4 - 32 r^2 + 256
        let p = Polynomial::new(vec![256.0, 0.0, -32.0, 0.0, 1.0]);
        let z = solve(&p).unwrap();
        let near_plus = z.iter().filter(|w| (*w - 4.0).norm() < 1e-5).count();
        let near_minus = z.iter().filter(|w| (*w + 4.0).norm() < 1e-5).count();
        assert_eq!((near_plus, near_minus), (2, 2), "{z:?}");
    }

    #[test]
    fn cubic() {
        let p = Polynomial::new(vec![-6.0, 11.0, -6.0, 1.0]);
        let mut re: Vec<f64> = solve(&p).unwrap().iter().map(|w| w.re).collect();
        re.sort_by(f64::total_cmp);
        for (got, want) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
