//! Grouping numerically perturbed roots into roots with multiplicities.
//!
//! A root of multiplicity `k` comes out of any backward-stable root finder as
//! a ring of `k` approximations whose radius scales like `(eps * S / |t_k|)^(1/k)`
//! with `S = sum |a_i| |c|^i` and `t_k = p^(k)(c) / k!`. Two groups are merged
//! when the diameter of their union fits either the configured clustering
//! radius or that predicted spread. The centroid of a merged group is then
//! refined by Newton's method on `p^(k-1)`, which has a simple root there.

use num_complex::Complex64;

use crate::Polynomial;

/// Headroom on unit roundoff for the backward error of the eigenvalue route.
const BACKWARD_ERROR: f64 = 1e3 * f64::EPSILON;
/// Safety factor between the predicted and the accepted spread.
const SPREAD_FACTOR: f64 = 4.0;
const CENTROID_NEWTON_STEPS: usize = 4;

pub(crate) struct Cluster {
    pub centre: Complex64,
    pub members: Vec<Complex64>,
    /// Largest diameter this cluster was allowed to have.
    pub radius: f64,
}

impl Cluster {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `(t_k(c), S(c))`: the k-th Taylor coefficient at `c` and the magnitude
/// scale of the evaluation.
fn taylor_coefficient(p: &Polynomial, c: Complex64, k: usize) -> (Complex64, f64) {
    let coeffs = p.coeffs();
    let mut t = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    for i in k..coeffs.len() {
        t += binomial(i, k) * coeffs[i] * pow;
        pow *= c;
    }
    let absc = c.norm();
    let scale = coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| a.abs() * absc.powi(i as i32))
        .sum();
    (t, scale)
}

fn diameter(points: &[Complex64]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

fn mean(points: &[Complex64]) -> Complex64 {
    points.iter().sum::<Complex64>() / points.len() as f64
}

/// Acceptable diameter for a group of `k` approximations centred at `c`.
fn allowed_diameter(p: &Polynomial, c: Complex64, k: usize, base: f64) -> f64 {
    if k < 2 {
        return base;
    }
    let (tk, scale) = taylor_coefficient(p, c, k);
    let tk = tk.norm();
    if tk == 0.0 || !tk.is_finite() {
        return base;
    }
    let predicted = (BACKWARD_ERROR * scale / tk).powf(1.0 / k as f64);
    base.max(SPREAD_FACTOR * predicted)
}

/// Newton iteration on `p^(k-1)` started at the mean of the group.
fn refine_centre(p: &Polynomial, start: Complex64, k: usize, radius: f64) -> Complex64 {
    let mut c = start;
    for _ in 0..CENTROID_NEWTON_STEPS {
        let (num, _) = taylor_coefficient(p, c, k - 1);
        let (den, _) = taylor_coefficient(p, c, k);
        if den.norm() == 0.0 {
            break;
        }
        let next = c - num / (den * k as f64);
        if !next.re.is_finite() || !next.im.is_finite() || (next - start).norm() > radius {
            break;
        }
        if next == c {
            break;
        }
        c = next;
    }
    c
}

/// Agglomerative grouping: repeatedly merge the pair of groups whose union
/// has the smallest diameter relative to its allowed diameter, while that
/// ratio stays at most one.
pub(crate) fn cluster(p: &Polynomial, approx: &[Complex64], base_radius: f64) -> Vec<Cluster> {
    let mut groups: Vec<Vec<Complex64>> = approx.iter().map(|&z| vec![z]).collect();
    // pairs further apart than this never merge; bounds the search
    let reach = {
        let s = approx.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
        (1e-2 * s).max(base_radius)
    };
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..groups.len() {
            for j in (i + 1)..groups.len() {
                let near = groups[i]
                    .iter()
                    .any(|a| groups[j].iter().any(|b| (a - b).norm() <= reach));
                if !near {
                    continue;
                }
                let union: Vec<Complex64> = groups[i].iter().chain(&groups[j]).copied().collect();
                let d = diameter(&union);
                let allowed = allowed_diameter(p, mean(&union), union.len(), base_radius);
                let ratio = d / allowed;
                if ratio <= 1.0 && best.is_none_or(|(_, _, r)| ratio < r) {
                    best = Some((i, j, ratio));
                }
            }
        }
        match best {
            Some((i, j, _)) => {
                let moved = groups.swap_remove(j);
                groups[i].extend(moved);
            }
            None => break,
        }
    }

    groups
        .into_iter()
        .map(|members| {
            let k = members.len();
            let centroid = mean(&members);
            let radius = allowed_diameter(p, centroid, k, base_radius);
            let centre = if k == 1 {
                members[0]
            } else {
                refine_centre(p, centroid, k, radius)
            };
            Cluster {
                centre,
                members,
                radius,
            }
        })
        .collect()
}
