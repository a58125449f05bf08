//! Closed-form error bounds tied to disc geometry.
//!
//! Everything here assumes a disc `|z - a e^{i alpha}| <= r1` that excludes
//! the origin (`a > r1`), which is exactly the situation where inverting a
//! matrix, truncating its off-diagonal entries, or perturbing it leaves the
//! eigenvalues in predictable, quantifiable regions:
//!
//! * [`invert_disc`] maps a disc through `z -> 1/z`.
//! * [`error_region`] describes the oval that the eigenvalue ratio
//!   `perturbed / original` sweeps when both the eigenvalue location and the
//!   perturbation are disc-bounded, together with its worst-case modulus and
//!   a concentric-circle approximation.
//! * [`lemma_entry_bound`] and [`estimate_k`] quantify how strongly an
//!   eigenvector concentrates on its own disc coordinate.
//! * [`condition_bound`] / [`corollary_bound`] turn that concentration into
//!   an eigenvector-matrix condition-number bound and an eigenvalue
//!   perturbation bound.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::{eig_symmetric, SpectrumReport};
use crate::error::{Error, Result};
use crate::gershgorin::GershgorinDisc;
use crate::matrix::{DenseMatrix, Symmetry};

/// Image of a zero-free disc under `z -> 1/z`, again a disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvertedDisc {
    pub center: Complex64,
    pub radius: f64,
}

/// Maps the disc `|z - a e^{i alpha}| <= r1` through `z -> 1/z`.
///
/// The image is the disc with center `a e^{-i alpha} / ((a+r1)(a-r1))` and
/// radius `r1 / ((a+r1)(a-r1))`; it requires `a > r1 >= 0` so the source
/// disc stays away from the origin.
pub fn invert_disc(a: f64, alpha: f64, r1: f64) -> Result<InvertedDisc> {
    if !(r1 >= 0.0) {
        return Err(Error::Precondition(format!("negative disc radius {r1}")));
    }
    if !(a > r1) {
        return Err(Error::DegenerateDisc { a, r1 });
    }
    let d = (a + r1) * (a - r1);
    let center = Complex64::from_polar(a / d, -alpha);
    let radius = r1 / d;
    // the extreme moduli of the image must be the reciprocals of the
    // source disc's extreme moduli
    debug_assert!({
        let hi = center.norm() + radius;
        let lo = center.norm() - radius;
        (hi - 1.0 / (a - r1)).abs() <= 1e-12 * hi && (lo - 1.0 / (a + r1)).abs() <= 1e-12 * hi
    });
    Ok(InvertedDisc { center, radius })
}

/// Oval region swept by the eigenvalue ratio `perturbed / original` when the
/// original eigenvalue lives on a circle of radius `r1` about `a e^{i alpha}`
/// and the perturbed one is additionally displaced by at most `r2`.
///
/// `bound` is the exact worst case of `|ratio - 1|`, attained when both
/// displacements line up with the center direction. The oval is close to a
/// circle: `approx_center`/`approx_radius` describe it, and the circle's
/// extreme moduli `approx_center ± approx_radius` match the oval's exactly.
/// `shifted_center` is `approx_center - 1`, the systematic outward drift of
/// the relative error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRegion {
    pub a: f64,
    pub alpha: f64,
    pub r1: f64,
    pub r2: f64,
    /// Worst-case relative error `(r1^2 + a(r1+r2) + r1 r2) / ((a+r1)(a-r1))`,
    /// equal to `(r1 + r2) / (a - r1)`.
    pub bound: f64,
    /// Center `(a^2 + r1 r2) / ((a+r1)(a-r1))` of the circle approximating
    /// the ratio region.
    pub approx_center: f64,
    /// Radius `a (r1 + r2) / ((a+r1)(a-r1))` of that circle.
    pub approx_radius: f64,
    /// `approx_center - 1 = (r1^2 + r1 r2) / ((a+r1)(a-r1))`.
    pub shifted_center: f64,
}

/// Builds the [`ErrorRegion`] for center modulus `a` (phase taken as 0).
pub fn error_region(a: f64, r1: f64, r2: f64) -> Result<ErrorRegion> {
    region_with_phase(a, 0.0, r1, r2)
}

fn region_with_phase(a: f64, alpha: f64, r1: f64, r2: f64) -> Result<ErrorRegion> {
    if !(r1 >= 0.0 && r2 >= 0.0) {
        return Err(Error::Precondition(format!(
            "negative radius: r1 = {r1}, r2 = {r2}"
        )));
    }
    if !(a > r1) {
        return Err(Error::DegenerateDisc { a, r1 });
    }
    let d = (a + r1) * (a - r1);
    let bound = (r1 * r1 + a * (r1 + r2) + r1 * r2) / d;
    let approx_center = (a * a + r1 * r2) / d;
    let approx_radius = a * (r1 + r2) / d;
    let shifted_center = (r1 * r1 + r1 * r2) / d;
    // the two closed forms of the worst case must agree
    debug_assert!((bound - (r1 + r2) / (a - r1)).abs() <= 1e-12 * bound.max(1.0));
    debug_assert!((shifted_center - (approx_center - 1.0)).abs() <= 1e-12 * approx_center);
    Ok(ErrorRegion {
        a,
        alpha,
        r1,
        r2,
        bound,
        approx_center,
        approx_radius,
        shifted_center,
    })
}

impl ErrorRegion {
    /// Builds the region from a complex disc center; only its modulus enters
    /// the bounds, the phase is kept for reporting.
    pub fn from_center(center: Complex64, r1: f64, r2: f64) -> Result<ErrorRegion> {
        region_with_phase(center.norm(), center.arg(), r1, r2)
    }

    /// Relative error `ratio - 1` at boundary angles `theta` (eigenvalue
    /// displacement) and `eta` (perturbation displacement):
    ///
    /// `(r1^2 + a(r1 e^{i theta} + r2 e^{i eta}) + r1 r2 e^{i(theta+eta)}) / ((a+r1)(a-r1))`.
    pub fn oval_sample(&self, theta: f64, eta: f64) -> Complex64 {
        let (a, r1, r2) = (self.a, self.r1, self.r2);
        let d = (a + r1) * (a - r1);
        let e1 = Complex64::from_polar(1.0, theta);
        let e2 = Complex64::from_polar(1.0, eta);
        let z = (r1 * r1 + a * (r1 * e1 + r2 * e2) + r1 * r2 * e1 * e2) / d;
        // same point via the factored ratio (a + r2 e^{i eta})(a + r1 e^{i theta}) / D - 1
        debug_assert!({
            let w = (a + r2 * e2) * (a + r1 * e1) / d - 1.0;
            (z - w).norm() <= 1e-12 * (1.0 + z.norm())
        });
        z
    }

    /// Exact extreme moduli `(min |ratio|, max |ratio|)` over the region;
    /// they coincide with `approx_center -/+ approx_radius`.
    pub fn modulus_range(&self) -> (f64, f64) {
        (
            self.approx_center - self.approx_radius,
            self.approx_center + self.approx_radius,
        )
    }
}

/// `|perturbed - reference| / |reference|`; rejects (near-)zero references.
pub fn relative_error(reference: Complex64, perturbed: Complex64) -> Result<f64> {
    let m = reference.norm();
    if m < 1e-300 {
        return Err(Error::ZeroEigenvalue { modulus: m });
    }
    Ok((perturbed - reference).norm() / m)
}

/// Bound `r_i / |lambda - a_i|` on the modulus of eigenvector entry `i` when
/// the eigenvector is scaled to unit maximum entry and `lambda` lies outside
/// disc `i`. Rejects `lambda` (numerically) equal to the disc center.
pub fn lemma_entry_bound(a_i: Complex64, r_i: f64, lambda: Complex64) -> Result<f64> {
    if !(r_i >= 0.0) {
        return Err(Error::Precondition(format!("negative disc radius {r_i}")));
    }
    let gap = (lambda - a_i).norm();
    if gap < 1e-12 * (1.0 + a_i.norm()) {
        return Err(Error::CoincidentCenter { gap });
    }
    Ok(r_i / gap)
}

/// Concentration parameter of a matched spectrum: with each eigenvector
/// rescaled so its own-disc entry equals 1, `k` is `n^2` times the largest
/// remaining entry modulus. Diagonal matrices give `k = 0`; well-separated
/// discs keep `k` of order 1.
pub fn estimate_k(spectrum: &SpectrumReport, discs: &[GershgorinDisc]) -> Result<f64> {
    let n = spectrum.pairs.len();
    if n < 2 {
        return Err(Error::Precondition(
            "concentration estimate needs at least two eigenpairs".into(),
        ));
    }
    if discs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} eigenpairs but {} discs",
            discs.len()
        )));
    }
    let n2 = (n * n) as f64;
    let mut k: f64 = 0.0;
    for pair in &spectrum.pairs {
        let i = pair.disc_index.ok_or_else(|| {
            Error::Precondition("spectrum has not been matched to discs".into())
        })?;
        if pair.eigenvector.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "eigenvector of length {} in an n = {n} spectrum",
                pair.eigenvector.len()
            )));
        }
        let pivot = pair.eigenvector[i].norm();
        if pivot == 0.0 {
            return Err(Error::Precondition(format!(
                "eigenvector carries no weight on its disc coordinate {i}"
            )));
        }
        for (m, x) in pair.eigenvector.iter().enumerate() {
            if m != i {
                k = k.max(n2 * x.norm() / pivot);
            }
        }
    }
    Ok(k)
}

/// Condition-number bound for the eigenvector matrix of an `n x n` matrix
/// whose eigenvectors have concentration parameter `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionBound {
    pub n: usize,
    pub k: f64,
    /// `(n^3 + 3kn^2 + k^2) / (n^3 - 3kn^2 - 3k^2)`.
    pub kappa_bound: f64,
    /// Entry bounds for the Gram matrix of unit-max-entry eigenvectors:
    /// its diagonal lies in `[h_diag_lo, h_diag_hi]`, off-diagonal moduli
    /// stay below `h_offdiag_max`, and each Gershgorin radius below
    /// `h_radius`.
    pub h_diag_lo: f64,
    pub h_diag_hi: f64,
    pub h_offdiag_max: f64,
    pub h_radius: f64,
}

/// Evaluates the condition bound, requiring the regime
/// `n^3 - 3kn^2 - 3k^2 > 0` in which the Gram matrix is provably
/// positive definite.
pub fn condition_bound(n: usize, k: f64) -> Result<ConditionBound> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "condition bound needs n >= 2, got {n}"
        )));
    }
    if !(k >= 0.0) {
        return Err(Error::Precondition(format!(
            "concentration parameter must be nonnegative, got {k}"
        )));
    }
    let nf = n as f64;
    let n3 = nf * nf * nf;
    let denominator = n3 - 3.0 * k * nf * nf - 3.0 * k * k;
    if denominator <= 0.0 {
        return Err(Error::InvalidRegime { n, k, denominator });
    }
    let numerator = n3 + 3.0 * k * nf * nf + k * k;
    let kappa_bound = numerator / denominator;

    let h_diag_lo = 1.0 - 3.0 * k * k / n3;
    let h_diag_hi = 1.0 + k * k / n3;
    let h_offdiag_max = 2.0 * k / (nf * nf) + k * k / n3;
    let h_radius = 3.0 * k / nf;
    // the quotient of the Gershgorin envelope of the Gram matrix must
    // reproduce the closed-form bound
    debug_assert!({
        let q = (h_diag_hi + h_radius) / (h_diag_lo - h_radius);
        (q - kappa_bound).abs() <= 1e-12 * kappa_bound
    });
    Ok(ConditionBound {
        n,
        k,
        kappa_bound,
        h_diag_lo,
        h_diag_hi,
        h_offdiag_max,
        h_radius,
    })
}

/// Eigenvalue perturbation bound `kappa_bound * ||delta||_2` for a
/// perturbation of spectral norm `delta_norm`.
pub fn corollary_bound(cond: &ConditionBound, delta_norm: f64) -> Result<f64> {
    if !(delta_norm >= 0.0) {
        return Err(Error::Precondition(format!(
            "perturbation norm must be nonnegative, got {delta_norm}"
        )));
    }
    Ok(cond.kappa_bound * delta_norm)
}

/// Largest singular value, by power iteration on the normal matrix
/// `A^H A`. Deterministic start; converges when the singular-value estimate
/// changes by less than `1e-10` relatively between steps.
pub fn spectral_norm(a: &DenseMatrix) -> Result<f64> {
    let n = a.n();
    if a.frobenius_norm() == 0.0 {
        return Ok(0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(crate::derive_seed(0x2B0A_11D5, n as u64));
    let mut v = random_unit(n, &mut rng);
    let mut prev = -1.0;
    for _ in 0..10_000 {
        let w = a.matvec(&v);
        let sigma = l2_norm(&w);
        if sigma == 0.0 {
            // landed in the null space; restart from a fresh direction
            v = random_unit(n, &mut rng);
            prev = -1.0;
            continue;
        }
        if prev >= 0.0 && (sigma - prev).abs() <= 1e-10 * sigma {
            return Ok(sigma);
        }
        prev = sigma;
        let mut u = adjoint_matvec(a, &w);
        let un = l2_norm(&u);
        if un == 0.0 {
            v = random_unit(n, &mut rng);
            prev = -1.0;
            continue;
        }
        for x in &mut u {
            *x /= un;
        }
        v = u;
    }
    Err(Error::NonConvergence {
        what: "spectral-norm power iteration".into(),
        achieved: prev,
        iterations: 10_000,
    })
}

/// 2-norm condition number of the eigenvector matrix of a spectrum (columns
/// are the stored unit eigenvectors).
///
/// The Gram matrix `X^H X` is Hermitian, so its spectrum equals that of the
/// real symmetric embedding `[[Re, -Im], [Im, Re]]`, which the symmetric
/// solver diagonalizes exactly once, with every eigenvalue doubled.
pub fn condition_number_2(spectrum: &SpectrumReport) -> Result<f64> {
    let n = spectrum.pairs.len();
    if n == 0 {
        return Err(Error::Precondition("empty spectrum".into()));
    }
    for pair in &spectrum.pairs {
        if pair.eigenvector.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "eigenvector of length {} in an n = {n} spectrum",
                pair.eigenvector.len()
            )));
        }
    }
    let mut h = vec![Complex64::ZERO; n * n];
    for p in 0..n {
        for q in 0..n {
            let mut s = Complex64::ZERO;
            for i in 0..n {
                s += spectrum.pairs[p].eigenvector[i].conj() * spectrum.pairs[q].eigenvector[i];
            }
            h[p * n + q] = s;
        }
    }
    let m = 2 * n;
    let mut e = vec![0.0; m * m];
    for p in 0..n {
        for q in 0..n {
            let z = h[p * n + q];
            e[p * m + q] = z.re;
            e[p * m + (q + n)] = -z.im;
            e[(p + n) * m + q] = z.im;
            e[(p + n) * m + (q + n)] = z.re;
        }
    }
    let embed = DenseMatrix::from_real(m, &e, Symmetry::Symmetric)?;
    let s = eig_symmetric(&embed)?;
    let lo = s.pairs[0].eigenvalue.re;
    let hi = s.pairs[m - 1].eigenvalue.re;
    if lo <= hi * f64::EPSILON {
        return Err(Error::Precondition(format!(
            "eigenvector matrix is numerically singular (gram extremes {lo:e}, {hi:e})"
        )));
    }
    Ok((hi / lo).sqrt())
}

fn random_unit(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, 0.0))
        .collect();
    let norm = l2_norm(&v);
    if norm == 0.0 {
        v[0] = Complex64::new(1.0, 0.0);
    } else {
        for x in &mut v {
            *x /= norm;
        }
    }
    v
}

fn l2_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn adjoint_matvec(a: &DenseMatrix, x: &[Complex64]) -> Vec<Complex64> {
    let n = a.n();
    let mut out = vec![Complex64::ZERO; n];
    for j in 0..n {
        let mut s = Complex64::ZERO;
        for (i, xi) in x.iter().enumerate() {
            s += a.get(i, j).conj() * xi;
        }
        out[j] = s;
    }
    out
}
