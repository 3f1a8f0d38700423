//! Characteristic roots: extraction, classification and modulus gaps.
//!
//! [`find_roots`] computes the eigenvalues of the balanced companion matrix
//! (falling back to a full Aberth–Ehrlich iteration if the QR sweep stalls),
//! polishes them with one guarded Aberth (simultaneous Newton) sweep, groups
//! them into roots with multiplicities and finally checks that the result
//! reproduces the input polynomial.

mod aberth;
mod cluster;
mod companion;

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Polynomial, Result};

/// Numerical tolerances shared by root extraction and the reduction rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Clustering radius relative to `max(1, max |root|)`, measured after
    /// rescaling by a power of two near the geometric mean root modulus.
    pub cluster_radius: f64,
    /// Maximal relative coefficient error of the reconstruction.
    pub recon_tol: f64,
    /// Relative margin a strict modulus inequality must exceed.
    pub gap_tol: f64,
    /// Relative imaginary part below which a root counts as real.
    pub imag_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            cluster_radius: 1e-6,
            recon_tol: 1e-8,
            gap_tol: 1e-9,
            imag_tol: 1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("cluster_radius", self.cluster_radius),
            ("recon_tol", self.recon_tol),
            ("gap_tol", self.gap_tol),
            ("imag_tol", self.imag_tol),
        ];
        for (name, v) in all {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// A root together with its multiplicity. Serialized as `[[re, im], k]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(Complex64, usize)", into = "(Complex64, usize)")]
pub struct RootEntry {
    pub root: Complex64,
    pub multiplicity: usize,
}

impl RootEntry {
    pub fn new(root: Complex64, multiplicity: usize) -> Self {
        RootEntry { root, multiplicity }
    }

    pub fn real(value: f64, multiplicity: usize) -> Self {
        RootEntry::new(Complex64::new(value, 0.0), multiplicity)
    }
}

impl From<(Complex64, usize)> for RootEntry {
    fn from((root, multiplicity): (Complex64, usize)) -> Self {
        RootEntry { root, multiplicity }
    }
}

impl From<RootEntry> for (Complex64, usize) {
    fn from(e: RootEntry) -> Self {
        (e.root, e.multiplicity)
    }
}

/// Pairwise distinct roots with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<RootEntry>", into = "Vec<RootEntry>")]
pub struct RootSet {
    entries: Vec<RootEntry>,
}

impl TryFrom<Vec<RootEntry>> for RootSet {
    type Error = Error;

    fn try_from(entries: Vec<RootEntry>) -> Result<Self> {
        RootSet::new(entries)
    }
}

impl From<RootSet> for Vec<RootEntry> {
    fn from(rs: RootSet) -> Self {
        rs.entries
    }
}

fn canonical_order(a: &RootEntry, b: &RootEntry) -> Ordering {
    let a_real = a.root.im == 0.0;
    let b_real = b.root.im == 0.0;
    match (a_real, b_real) {
        (true, true) => b.root.re.total_cmp(&a.root.re),
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a
            .root
            .norm()
            .total_cmp(&b.root.norm())
            .then(a.root.re.total_cmp(&b.root.re))
            .then(b.root.im.abs().total_cmp(&a.root.im.abs()))
            .then(b.root.im.total_cmp(&a.root.im)),
    }
}

impl RootSet {
    /// Validates finiteness, positive multiplicities and distinctness.
    pub fn new(entries: Vec<RootEntry>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.multiplicity == 0 {
                return Err(Error::InvalidArgument("zero multiplicity".into()));
            }
            if !e.root.re.is_finite() || !e.root.im.is_finite() {
                return Err(Error::InvalidArgument("non-finite root".into()));
            }
            if entries[..i].iter().any(|o| o.root == e.root) {
                return Err(Error::InvalidArgument(format!(
                    "root {} listed twice",
                    e.root
                )));
            }
        }
        Ok(RootSet { entries })
    }

    pub fn empty() -> Self {
        RootSet::default()
    }

    pub fn entries(&self) -> &[RootEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Real roots first (descending), then non-real roots by modulus with
    /// the upper half-plane member of each pair first.
    pub fn sorted(&self) -> RootSet {
        let mut entries = self.entries.clone();
        entries.sort_by(canonical_order);
        RootSet { entries }
    }

    /// Entry within `tol` of `z`, if any.
    pub fn find(&self, z: Complex64, tol: f64) -> Option<&RootEntry> {
        self.entries.iter().find(|e| (e.root - z).norm() <= tol)
    }

    /// Every root replaced by its reciprocal.
    pub fn reciprocal(&self) -> Result<RootSet> {
        if self
            .entries
            .iter()
            .any(|e| e.root == Complex64::new(0.0, 0.0))
        {
            return Err(Error::InvalidArgument("zero root has no reciprocal".into()));
        }
        RootSet::new(
            self.entries
                .iter()
                .map(|e| RootEntry::new(e.root.inv(), e.multiplicity))
                .collect(),
        )
    }

    /// Multiset equality up to `tol` in the root values; multiplicities must
    /// agree exactly.
    pub fn approx_eq(&self, other: &RootSet, tol: f64) -> bool {
        if self.entries.len() != other.entries.len() {
            return false;
        }
        let mut used = vec![false; other.entries.len()];
        for e in &self.entries {
            let hit = other.entries.iter().enumerate().position(|(j, o)| {
                !used[j] && o.multiplicity == e.multiplicity && (o.root - e.root).norm() <= tol
            });
            match hit {
                Some(j) => used[j] = true,
                None => return false,
            }
        }
        true
    }

    /// Whether every non-real root has a conjugate partner of equal
    /// multiplicity, comparing with relative tolerance `tol`.
    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| {
            let slack = tol * (1.0 + e.root.norm());
            e.root.im.abs() <= slack
                || self.entries.iter().any(|o| {
                    o.multiplicity == e.multiplicity && (o.root - e.root.conj()).norm() <= slack
                })
        })
    }
}

/// A real root with its multiplicity. Serialized as `[value, k]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, usize)", into = "(f64, usize)")]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
}

impl From<(f64, usize)> for RealRoot {
    fn from((value, multiplicity): (f64, usize)) -> Self {
        RealRoot {
            value,
            multiplicity,
        }
    }
}

impl From<RealRoot> for (f64, usize) {
    fn from(r: RealRoot) -> Self {
        (r.value, r.multiplicity)
    }
}

/// A conjugate pair `rho * exp(+-i phi)` with `phi` in `(0, pi)`, listed once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugatePair {
    pub modulus: f64,
    pub argument: f64,
    pub multiplicity: usize,
}

impl ConjugatePair {
    /// The member in the upper half-plane.
    pub fn upper(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.argument)
    }
}

/// The real/non-real split of a root set.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RootClassification {
    /// Sorted by decreasing value.
    pub real_roots: Vec<RealRoot>,
    /// Sorted by increasing modulus.
    pub conjugate_pairs: Vec<ConjugatePair>,
}

impl RootClassification {
    pub fn real_moduli(&self) -> Vec<f64> {
        self.real_roots.iter().map(|r| r.value.abs()).collect()
    }

    pub fn pair_moduli(&self) -> Vec<f64> {
        self.conjugate_pairs.iter().map(|p| p.modulus).collect()
    }

    /// Back to a root set (each pair expanded to both members).
    pub fn to_root_set(&self) -> RootSet {
        let mut entries: Vec<RootEntry> = self
            .real_roots
            .iter()
            .map(|r| RootEntry::real(r.value, r.multiplicity))
            .collect();
        for p in &self.conjugate_pairs {
            let z = p.upper();
            entries.push(RootEntry::new(z, p.multiplicity));
            entries.push(RootEntry::new(z.conj(), p.multiplicity));
        }
        RootSet { entries }
    }
}

/// Outcome of a strict inequality test at finite precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapStatus {
    Strict,
    Violated,
    Indeterminate,
}

/// Whether every modulus in `lower` is strictly below every modulus in
/// `upper`. Empty sides hold vacuously.
pub fn strictly_below(lower: &[f64], upper: &[f64], gap_tol: f64) -> GapStatus {
    if lower.is_empty() || upper.is_empty() {
        return GapStatus::Strict;
    }
    let hi = lower.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
    let lo = upper.iter().fold(f64::INFINITY, |m, &x| m.min(x));
    let margin = lo - hi;
    let slack = gap_tol * hi.abs().max(lo.abs());
    if margin > slack {
        GapStatus::Strict
    } else if margin < -slack {
        GapStatus::Violated
    } else {
        GapStatus::Indeterminate
    }
}

/// Modulus ordering between real roots and conjugate pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    /// Every real modulus strictly below every pair modulus.
    pub real_below_pairs: GapStatus,
    /// Every real modulus strictly above every pair modulus.
    pub real_above_pairs: GapStatus,
}

pub fn modulus_gap(cls: &RootClassification, gap_tol: f64) -> GapReport {
    let real = cls.real_moduli();
    let pairs = cls.pair_moduli();
    GapReport {
        real_below_pairs: strictly_below(&real, &pairs, gap_tol),
        real_above_pairs: strictly_below(&pairs, &real, gap_tol),
    }
}

/// Splits a conjugate-closed root set into real roots and pairs.
///
/// A root is real when `|Im z| <= tol (1 + |z|)`. Each pair is reported
/// once, through its upper half-plane member.
pub fn classify(rs: &RootSet, tol: f64) -> Result<RootClassification> {
    let mut real_roots = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for e in rs.entries() {
        let slack = tol * (1.0 + e.root.norm());
        if e.root.im.abs() <= slack {
            real_roots.push(RealRoot {
                value: e.root.re,
                multiplicity: e.multiplicity,
            });
        } else if e.root.im > 0.0 {
            upper.push(*e);
        } else {
            lower.push(*e);
        }
    }
    let mut conjugate_pairs = Vec::new();
    for u in upper {
        let slack = tol * (1.0 + u.root.norm());
        let partner = lower.iter().position(|l| {
            l.multiplicity == u.multiplicity && (l.root - u.root.conj()).norm() <= slack
        });
        let Some(j) = partner else {
            return Err(Error::NotConjugateClosed(format!(
                "no conjugate partner for {} (multiplicity {})",
                u.root, u.multiplicity
            )));
        };
        let l = lower.swap_remove(j);
        let z = 0.5 * (u.root + l.root.conj());
        conjugate_pairs.push(ConjugatePair {
            modulus: z.norm(),
            argument: z.arg(),
            multiplicity: u.multiplicity,
        });
    }
    if let Some(l) = lower.first() {
        return Err(Error::NotConjugateClosed(format!(
            "no conjugate partner for {} (multiplicity {})",
            l.root, l.multiplicity
        )));
    }
    real_roots.sort_by(|a, b| b.value.total_cmp(&a.value));
    conjugate_pairs.sort_by(|a, b| {
        a.modulus
            .total_cmp(&b.modulus)
            .then(a.argument.total_cmp(&b.argument))
    });
    debug_assert!(conjugate_pairs
        .iter()
        .all(|p| p.argument > 0.0 && p.argument < PI));
    Ok(RootClassification {
        real_roots,
        conjugate_pairs,
    })
}

/// One Aberth sweep; each update is kept only if it lowers `|p|`.
fn aberth_polish(p: &Polynomial, dp: &Polynomial, roots: &mut [Complex64]) {
    let old = roots.to_vec();
    for (i, z) in roots.iter_mut().enumerate() {
        let pz = p.evaluate(old[i]);
        let dpz = dp.evaluate(old[i]);
        if pz.norm() == 0.0 || dpz.norm() == 0.0 {
            continue;
        }
        let newton = pz / dpz;
        let repulsion: Complex64 = old
            .iter()
            .enumerate()
            .filter(|&(j, w)| j != i && *w != old[i])
            .map(|(_, w)| (old[i] - w).inv())
            .sum();
        let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
        let candidate = old[i] - step;
        if candidate.re.is_finite()
            && candidate.im.is_finite()
            && p.evaluate(candidate).norm() < pz.norm()
        {
            *z = candidate;
        }
    }
}

/// All complex roots of `p` with multiplicities.
///
/// Fails for constant polynomials and when the recovered roots do not
/// reproduce `p` to `cfg.recon_tol` (relative to the largest coefficient).
pub fn find_roots(p: &Polynomial, cfg: &ToleranceConfig) -> Result<RootSet> {
    let degree = p.degree().ok_or(Error::DegreeTooLow)?;
    if degree == 0 {
        return Err(Error::DegreeTooLow);
    }
    if p.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    let monic = p.monic();

    // exact zero roots
    let zeros = monic.coeffs().iter().take_while(|&&c| c == 0.0).count();
    let deflated = Polynomial::new(monic.coeffs()[zeros..].to_vec());

    // substitute r = s t with s a power of two near the geometric mean
    // root modulus
    let n = deflated.coeffs().len() - 1;
    let s = (deflated.coeffs()[0].abs().ln() / n as f64 / std::f64::consts::LN_2)
        .round()
        .exp2();
    let balanced = Polynomial::new(
        deflated
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| c * s.powi(k as i32 - n as i32))
            .collect(),
    );
    let lower = &balanced.coeffs()[..n];
    let mut approx = match companion::monic_roots(lower) {
        Ok(z) => z,
        Err(Error::NoConvergence) => aberth::solve(&balanced)?,
        Err(e) => return Err(e),
    };
    let dp = balanced.derivative();
    aberth_polish(&balanced, &dp, &mut approx);

    let scale = approx.iter().fold(1.0_f64, |m, z| m.max(z.norm()));
    let base = cfg.cluster_radius * scale;
    let clusters = cluster::cluster(&balanced, &approx, base);

    let mut entries = pair_conjugates(clusters)?;
    entries.iter_mut().for_each(|e| e.root *= s);
    if zeros > 0 {
        entries.push(RootEntry::real(0.0, zeros));
    }
    let rs = RootSet::new(entries)?.sorted();

    let rebuilt = Polynomial::from_roots(&rs)?.scale(p.leading().unwrap_or(1.0));
    let error = (&rebuilt - p).max_abs_coeff() / p.max_abs_coeff();
    if !(error <= cfg.recon_tol) {
        return Err(Error::IllConditioned {
            error,
            tolerance: cfg.recon_tol,
        });
    }
    Ok(rs)
}

/// Matches every cluster with the cluster nearest to its conjugate. A
/// cluster that is its own best match becomes a real root; the others are
/// replaced by exact conjugate pairs.
fn pair_conjugates(clusters: Vec<cluster::Cluster>) -> Result<Vec<RootEntry>> {
    let n = clusters.len();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        if partner[i].is_some() {
            continue;
        }
        let ci = &clusters[i];
        let target = ci.centre.conj();
        let best = (0..n)
            .filter(|&j| {
                (j == i || partner[j].is_none()) && clusters[j].multiplicity() == ci.multiplicity()
            })
            .map(|j| (j, (clusters[j].centre - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((j, dist)) = best else {
            return Err(unpaired(ci));
        };
        let tol = ci.radius.max(clusters[j].radius);
        if dist > tol {
            return Err(unpaired(ci));
        }
        partner[i] = Some(j);
        partner[j] = Some(i);
        if j == i {
            entries.push(RootEntry::real(ci.centre.re, ci.multiplicity()));
        } else {
            let z = 0.5 * (ci.centre + clusters[j].centre.conj());
            entries.push(RootEntry::new(z, ci.multiplicity()));
            entries.push(RootEntry::new(z.conj(), ci.multiplicity()));
        }
    }
    Ok(entries)
}

fn unpaired(c: &cluster::Cluster) -> Error {
    Error::IllConditioned {
        error: c.centre.im.abs(),
        tolerance: c.radius,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn perfect_square() {
        let rs = find_roots(&Polynomial::new(vec![1.0, -2.0, 1.0]), &cfg()).unwrap();
        assert_eq!(rs.entries().len(), 1);
        assert_eq!(rs.entries()[0].multiplicity, 2);
        assert!((rs.entries()[0].root.re - 1.0).abs() < 1e-12);
        assert_eq!(rs.entries()[0].root.im, 0.0);
    }

    #[test]
    fn boros_cubic() {
        let rs = find_roots(&Polynomial::new(vec![2.0, -3.0, 0.0, 1.0]), &cfg()).unwrap();
        let want = RootSet::new(vec![RootEntry::real(1.0, 2), RootEntry::real(-2.0, 1)]).unwrap();
        assert!(rs.approx_eq(&want, 1e-10), "{rs:?}");
    }

    #[test]
    fn zero_and_constant_polynomials_are_rejected() {
        assert_eq!(
            find_roots(&Polynomial::zero(), &cfg()),
            Err(Error::DegreeTooLow)
        );
        assert_eq!(
            find_roots(&Polynomial::new(vec![3.0]), &cfg()),
            Err(Error::DegreeTooLow)
        );
    }

    #[test]
    fn zero_root_is_exact() {
        // r^2 (r - 1)
        let rs = find_roots(&Polynomial::new(vec![0.0, 0.0, -1.0, 1.0]), &cfg()).unwrap();
        assert_eq!(rs.degree(), 3);
        assert!(rs.find(Complex64::new(0.0, 0.0), 0.0).unwrap().multiplicity == 2);
    }

    #[test]
    fn classify_examples() {
        let rs = RootSet::new(vec![RootEntry::real(1.0, 2), RootEntry::real(-2.0, 1)]).unwrap();
        let cls = classify(&rs, 1e-10).unwrap();
        assert_eq!(
            cls.real_roots,
            vec![
                RealRoot {
                    value: 1.0,
                    multiplicity: 2
                },
                RealRoot {
                    value: -2.0,
                    multiplicity: 1
                }
            ]
        );
        assert!(cls.conjugate_pairs.is_empty());

        let rs = RootSet::new(vec![
            RootEntry::new(Complex64::new(1.0, 1.0), 1),
            RootEntry::new(Complex64::new(1.0, -1.0), 1),
        ])
        .unwrap();
        let cls = classify(&rs, 1e-10).unwrap();
        assert!(cls.real_roots.is_empty());
        let pair = cls.conjugate_pairs[0];
        assert!((pair.modulus - 2f64.sqrt()).abs() < 1e-15);
        assert!((pair.argument - PI / 4.0).abs() < 1e-15);
        assert_eq!(pair.multiplicity, 1);
    }

    #[test]
    fn classify_rejects_unmatched() {
        let rs = RootSet::new(vec![RootEntry::new(Complex64::new(1.0, 1.0), 1)]).unwrap();
        assert!(matches!(
            classify(&rs, 1e-10),
            Err(Error::NotConjugateClosed(_))
        ));
        let rs = RootSet::new(vec![
            RootEntry::new(Complex64::new(1.0, 1.0), 2),
            RootEntry::new(Complex64::new(1.0, -1.0), 1),
        ])
        .unwrap();
        assert!(classify(&rs, 1e-10).is_err());
    }

    #[test]
    fn modulus_gap_examples() {
        // (r - 0.5)(r^2 - 2r + 2): roots recomputed from the expansion
        let rs = find_roots(&Polynomial::new(vec![-1.0, 3.0, -2.5, 1.0]), &cfg()).unwrap();
        let cls = classify(&rs, cfg().imag_tol).unwrap();
        assert_eq!(cls.real_roots.len(), 1);
        assert!((cls.real_roots[0].value - 0.5).abs() < 1e-12);
        assert!((cls.conjugate_pairs[0].modulus - 2f64.sqrt()).abs() < 1e-12);
        let gap = modulus_gap(&cls, 1e-9);
        assert_eq!(gap.real_below_pairs, GapStatus::Strict);
        assert_eq!(gap.real_above_pairs, GapStatus::Violated);

        let tie = RootClassification {
            real_roots: vec![RealRoot {
                value: 1.0,
                multiplicity: 2,
            }],
            conjugate_pairs: vec![ConjugatePair {
                modulus: 1.0,
                argument: PI / 2.0,
                multiplicity: 1,
            }],
        };
        let gap = modulus_gap(&tie, 1e-9);
        assert_eq!(gap.real_below_pairs, GapStatus::Indeterminate);
        assert_eq!(gap.real_above_pairs, GapStatus::Indeterminate);

        let no_pairs = RootClassification {
            real_roots: vec![RealRoot {
                value: 3.0,
                multiplicity: 1,
            }],
            conjugate_pairs: vec![],
        };
        let gap = modulus_gap(&no_pairs, 1e-9);
        assert_eq!(gap.real_below_pairs, GapStatus::Strict);
        assert_eq!(gap.real_above_pairs, GapStatus::Strict);
    }

    #[test]
    fn badly_scaled_coefficients() {
        for (a0, lead) in [(1.0, 1e-200), (1e-150, 1.0), (1.0, 1e-20)] {
            let mut coeffs = vec![0.0; 28];
            coeffs[0] = a0;
            coeffs[27] = lead;
            let rs = find_roots(&Polynomial::new(coeffs), &cfg()).unwrap();
            assert_eq!(rs.degree(), 27);
            let want = (a0 / lead).powf(1.0 / 27.0);
            for e in rs.entries() {
                assert!(
                    (e.root.norm() - want).abs() <= 1e-9 * want,
                    "{} vs {want}",
                    e.root
                );
            }
        }
    }
}
