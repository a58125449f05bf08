//! Dense eigensolvers and eigenvalue-to-disc matching.
//!
//! Symmetric matrices go through cyclic Jacobi; general real matrices go
//! through a Hessenberg reduction plus Francis double-shift QR, with
//! eigenvectors recovered by shifted inverse iteration. Both paths return a
//! [`SpectrumReport`] sorted ascending by (real, imaginary) part, every
//! eigenvector normalized and phase-fixed so its largest entry is real
//! positive.

mod assignment;
mod francis;
mod inverse_iter;
mod jacobi;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gershgorin::{RadiusMode, SeparationReport};
use crate::matrix::DenseMatrix;

/// Residual acceptance threshold, relative to `1 + ||A||_F`.
const RESIDUAL_TOL_REL: f64 = 1e-8;

/// One eigenvalue with its unit eigenvector and bookkeeping.
#[derive(Debug, Clone)]
pub struct SpectralPair {
    pub eigenvalue: Complex64,
    /// Unit 2-norm eigenvector, phase-fixed so the largest-modulus entry is
    /// real and positive.
    pub eigenvector: Vec<Complex64>,
    /// Disc assigned by [`match_to_discs`]; `None` until matching runs.
    pub disc_index: Option<usize>,
    /// `||A x - lambda x||_2` for this pair.
    pub residual: f64,
}

/// Full spectrum sorted ascending by (real, imaginary) part.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub pairs: Vec<SpectralPair>,
    /// True when each eigenvalue's nearest disc already formed a bijection,
    /// so no global assignment repair was needed.
    pub matched: bool,
    /// Set when the discs are pairwise disjoint in a containment-guaranteeing
    /// radius mode and the nearest-disc map still collided: either the solver
    /// or the disc computation must be wrong.
    pub oracle_contradiction: bool,
}

/// Diagonalizes a real symmetric matrix.
///
/// The symmetry is re-verified entrywise (exact equality) regardless of the
/// matrix tag. Eigenvalues come back ascending with orthonormal real
/// eigenvectors; each pair's residual is checked against
/// `1e-8 * (1 + ||A||_F)`.
pub fn eig_symmetric(a: &DenseMatrix) -> Result<SpectrumReport> {
    let n = a.n();
    let re = a.real_entries()?;
    for i in 0..n {
        for j in (i + 1)..n {
            if re[i * n + j] != re[j * n + i] {
                return Err(Error::NotSymmetric { i, j });
            }
        }
    }

    let (eigs, v) =
        jacobi::jacobi_eigen(&re, n, 1e-12, 100).map_err(|(achieved, sweeps)| {
            Error::NonConvergence {
                what: "jacobi off-diagonal reduction".into(),
                achieved,
                iterations: sweeps,
            }
        })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| eigs[p].total_cmp(&eigs[q]));

    let tol = RESIDUAL_TOL_REL * (1.0 + a.frobenius_norm());
    let mut pairs = Vec::with_capacity(n);
    for &k in &order {
        let mut x: Vec<Complex64> =
            (0..n).map(|i| Complex64::new(v[i * n + k], 0.0)).collect();
        phase_fix(&mut x);
        let lambda = Complex64::new(eigs[k], 0.0);
        let residual = inverse_iter::eigen_residual(&re, n, lambda, &x);
        if residual > tol {
            return Err(Error::NonConvergence {
                what: format!("eigenpair residual for eigenvalue {}", eigs[k]),
                achieved: residual,
                iterations: 0,
            });
        }
        pairs.push(SpectralPair {
            eigenvalue: lambda,
            eigenvector: x,
            disc_index: None,
            residual,
        });
    }
    Ok(SpectrumReport {
        pairs,
        matched: false,
        oracle_contradiction: false,
    })
}

/// Computes the full spectrum of a real square matrix.
///
/// Eigenvalues come from Hessenberg + Francis QR; each eigenvector is then
/// recovered by inverse iteration against the *original* matrix, so the
/// reported residuals are meaningful end-to-end. Complex eigenvalues arrive
/// in conjugate pairs and share a conjugated eigenvector.
pub fn eig_general(a: &DenseMatrix) -> Result<SpectrumReport> {
    let n = a.n();
    let re = a.real_entries()?;

    let mut h = re.clone();
    francis::hessenberg_reduce(&mut h, n);
    let mut eigs = francis::hqr(&mut h, n, 100).map_err(|(achieved, its)| {
        Error::NonConvergence {
            what: "francis qr deflation".into(),
            achieved,
            iterations: its,
        }
    })?;
    eigs.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));

    let frob = a.frobenius_norm();
    let tol = RESIDUAL_TOL_REL * (1.0 + frob);

    let mut slots: Vec<Option<(Vec<Complex64>, f64)>> = vec![None; n];
    for j in 0..n {
        if slots[j].is_some() {
            continue;
        }
        let lambda = eigs[j];
        let (x, residual) = solve_eigenvector(&re, n, lambda, frob, tol, j as u64);
        if lambda.im != 0.0 {
            // QR emits exact conjugate pairs; reuse the vector for the twin.
            if let Some(k) = (j + 1..n).find(|&k| {
                slots[k].is_none() && eigs[k].re == lambda.re && eigs[k].im == -lambda.im
            }) {
                let xc: Vec<Complex64> = x.iter().map(|z| z.conj()).collect();
                let rc = inverse_iter::eigen_residual(&re, n, eigs[k], &xc);
                slots[k] = Some((xc, rc));
            }
        }
        slots[j] = Some((x, residual));
    }

    let mut pairs = Vec::with_capacity(n);
    for (j, slot) in slots.into_iter().enumerate() {
        let (x, residual) = slot.expect("every eigenvalue receives a vector");
        if residual > tol {
            return Err(Error::NonConvergence {
                what: format!("inverse iteration for eigenvalue {}", eigs[j]),
                achieved: residual,
                iterations: RETRY_STEPS.len(),
            });
        }
        pairs.push(SpectralPair {
            eigenvalue: eigs[j],
            eigenvector: x,
            disc_index: None,
            residual,
        });
    }
    Ok(SpectrumReport {
        pairs,
        matched: false,
        oracle_contradiction: false,
    })
}

/// Step budgets tried per eigenvalue; each entry restarts from a fresh
/// random vector, so the tail doubles as full restarts.
const RETRY_STEPS: [usize; 8] = [2, 3, 4, 5, 2, 3, 4, 5];

fn solve_eigenvector(
    a: &[f64],
    n: usize,
    lambda: Complex64,
    frob: f64,
    tol: f64,
    salt: u64,
) -> (Vec<Complex64>, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(crate::derive_seed(0xE16E_5EED, salt));
    let mut best: Option<(Vec<Complex64>, f64)> = None;
    for steps in RETRY_STEPS {
        let (x, r) = inverse_iter::inverse_iteration(a, n, lambda, frob, steps, &mut rng);
        if best.as_ref().is_none_or(|(_, br)| r < *br) {
            best = Some((x, r));
        }
        if best.as_ref().is_some_and(|(_, br)| *br <= tol) {
            break;
        }
    }
    let (mut x, r) = best.expect("at least one attempt runs");
    phase_fix(&mut x);
    (x, r)
}

/// Rotates a vector so its largest-modulus entry becomes real positive
/// (ties go to the earliest index). Leaves zero vectors untouched.
fn phase_fix(x: &mut [Complex64]) {
    let mut k = 0usize;
    let mut best = 0.0f64;
    for (i, xi) in x.iter().enumerate() {
        let m = xi.norm();
        if m > best {
            best = m;
            k = i;
        }
    }
    if best == 0.0 {
        return;
    }
    let phase = x[k].conj() / best;
    for xi in x.iter_mut() {
        *xi *= phase;
    }
    x[k] = Complex64::new(x[k].re, 0.0);
}

/// Assigns each eigenvalue to a Gershgorin disc.
///
/// Primary rule: every eigenvalue takes its nearest disc by boundary
/// distance `|lambda - center| - radius` (ties to the smallest disc index).
/// If that map is a bijection the report is `matched`. Otherwise a global
/// minimum-cost assignment on center distances repairs it to a total
/// pairing, and — when the discs are disjoint under a row or column radius,
/// which guarantees one eigenvalue per disc — the collision is flagged as an
/// `oracle_contradiction`.
pub fn match_to_discs(
    spectrum: &SpectrumReport,
    report: &SeparationReport,
) -> Result<SpectrumReport> {
    let n = spectrum.pairs.len();
    if n == 0 {
        return Err(Error::Precondition("empty spectrum".into()));
    }
    if report.discs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} eigenvalues but {} discs",
            report.discs.len()
        )));
    }
    let mode = report.radius_mode;

    let mut nearest = vec![0usize; n];
    for (j, pair) in spectrum.pairs.iter().enumerate() {
        let mut best = f64::INFINITY;
        for (i, disc) in report.discs.iter().enumerate() {
            let d = disc.boundary_distance(pair.eigenvalue, mode);
            if d < best {
                best = d;
                nearest[j] = i;
            }
        }
    }

    let mut hits = vec![0usize; n];
    for &i in &nearest {
        hits[i] += 1;
    }
    let matched = hits.iter().all(|&h| h == 1);

    let assign = if matched {
        nearest
    } else {
        let mut cost = vec![0.0; n * n];
        for (j, pair) in spectrum.pairs.iter().enumerate() {
            for (i, disc) in report.discs.iter().enumerate() {
                cost[j * n + i] = (pair.eigenvalue - disc.center).norm();
            }
        }
        assignment::min_cost_assignment(&cost, n)
    };

    let oracle_contradiction = report.disjoint && mode != RadiusMode::Min && !matched;

    let mut pairs = spectrum.pairs.clone();
    for (j, pair) in pairs.iter_mut().enumerate() {
        pair.disc_index = Some(assign[j]);
    }
    Ok(SpectrumReport {
        pairs,
        matched,
        oracle_contradiction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gershgorin::{compute_discs, separation_report};
    use crate::matrix::Symmetry;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    fn random_symmetric(n: usize, seed: u64) -> DenseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let g = rng.random::<f64>() * 2.0 - 1.0;
                e[i * n + j] = g;
                e[j * n + i] = g;
            }
        }
        DenseMatrix::from_real(n, &e, Symmetry::Symmetric).unwrap()
    }

    #[test]
    fn coupled_two_by_two() {
        let a = DenseMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let s = eig_symmetric(&a).unwrap();
        assert_abs_diff_eq!(s.pairs[0].eigenvalue.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.pairs[1].eigenvalue.re, 3.0, epsilon = 1e-12);
        let c = 0.5f64.sqrt();
        assert_abs_diff_eq!(s.pairs[0].eigenvector[0].re, c, epsilon = 1e-12);
        assert_abs_diff_eq!(s.pairs[0].eigenvector[1].re, -c, epsilon = 1e-12);
        assert_abs_diff_eq!(s.pairs[1].eigenvector[0].re, c, epsilon = 1e-12);
        assert_abs_diff_eq!(s.pairs[1].eigenvector[1].re, c, epsilon = 1e-12);
    }

    #[test]
    fn diagonal_matrix_is_its_own_spectrum() {
        let a = DenseMatrix::diagonal(&[9.0, 4.0]).unwrap();
        let s = eig_symmetric(&a).unwrap();
        assert_eq!(s.pairs[0].eigenvalue, Complex64::new(4.0, 0.0));
        assert_eq!(s.pairs[1].eigenvalue, Complex64::new(9.0, 0.0));
        assert_eq!(s.pairs[0].eigenvector[1], Complex64::new(1.0, 0.0));
        assert_eq!(s.pairs[1].eigenvector[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn jacobi_reconstructs_and_stays_orthogonal() {
        let n = 10;
        let a = random_symmetric(n, 7);
        let s = eig_symmetric(&a).unwrap();
        let mut recon_err = 0.0f64;
        let mut ortho_err = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut aij = 0.0;
                let mut gram = 0.0;
                for pair in &s.pairs {
                    aij += pair.eigenvalue.re * pair.eigenvector[i].re * pair.eigenvector[j].re;
                    gram += pair.eigenvector[i].re * pair.eigenvector[j].re;
                }
                recon_err += (aij - a.re(i, j)).powi(2);
                let target = if i == j { 1.0 } else { 0.0 };
                ortho_err += (gram - target).powi(2);
            }
        }
        assert!(recon_err.sqrt() <= 1e-9 * a.frobenius_norm());
        assert!(ortho_err.sqrt() <= 1e-9);
    }

    #[test]
    fn symmetric_solver_rejects_asymmetry() {
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert!(matches!(
            eig_symmetric(&a),
            Err(Error::NotSymmetric { i: 0, j: 1 })
        ));
    }

    #[test]
    fn rotation_matrix_gives_conjugate_pair() {
        let a = DenseMatrix::from_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let s = eig_general(&a).unwrap();
        assert_abs_diff_eq!(s.pairs[0].eigenvalue.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.pairs[0].eigenvalue.im, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.pairs[1].eigenvalue.im, 1.0, epsilon = 1e-12);
        for i in 0..2 {
            let d = (s.pairs[0].eigenvector[i] - s.pairs[1].eigenvector[i].conj()).norm();
            assert!(d <= 1e-12);
        }
        for pair in &s.pairs {
            assert!(pair.residual <= 1e-8 * (1.0 + a.frobenius_norm()));
        }
    }

    #[test]
    fn triangular_matrix_eigenvalues_are_its_diagonal() {
        let a = DenseMatrix::from_rows(&[&[1.0, 5.0], &[0.0, 2.0]]).unwrap();
        let s = eig_general(&a).unwrap();
        assert_abs_diff_eq!(s.pairs[0].eigenvalue.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.pairs[1].eigenvalue.re, 2.0, epsilon = 1e-12);
        assert_eq!(s.pairs[0].eigenvalue.im, 0.0);
        assert_eq!(s.pairs[1].eigenvalue.im, 0.0);
    }

    #[test]
    fn general_spectrum_preserves_trace_and_conjugation() {
        let n = 20;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let a = DenseMatrix::from_real(n, &e, Symmetry::General).unwrap();
        let s = eig_general(&a).unwrap();
        let sum: Complex64 = s.pairs.iter().map(|p| p.eigenvalue).sum();
        let tol = 1e-8 * (1.0 + a.frobenius_norm());
        assert!((sum.re - a.trace().re).abs() <= tol);
        assert!(sum.im.abs() <= tol);
        for p in &s.pairs {
            if p.eigenvalue.im != 0.0 {
                assert!(s.pairs.iter().any(|q| q.eigenvalue == p.eigenvalue.conj()));
            }
        }
    }

    #[test]
    fn general_solver_agrees_with_jacobi_on_symmetric_input() {
        let a = random_symmetric(12, 5);
        let sj = eig_symmetric(&a).unwrap();
        let sg = eig_general(&a).unwrap();
        for (p, q) in sj.pairs.iter().zip(&sg.pairs) {
            assert_abs_diff_eq!(p.eigenvalue.re, q.eigenvalue.re, epsilon = 1e-8);
            assert!(q.eigenvalue.im.abs() <= 1e-8);
        }
    }

    #[test]
    fn eigenvalues_are_invariant_under_symmetric_permutation() {
        let a = random_symmetric(8, 21);
        let b = a.permuted(&[3, 1, 4, 0, 6, 2, 7, 5]).unwrap();
        let sa = eig_symmetric(&a).unwrap();
        let sb = eig_symmetric(&b).unwrap();
        for (p, q) in sa.pairs.iter().zip(&sb.pairs) {
            assert_abs_diff_eq!(p.eigenvalue.re, q.eigenvalue.re, epsilon = 1e-9);
        }
    }

    #[test]
    fn matching_follows_nearest_disc_on_diagonal_matrix() {
        let a = DenseMatrix::diagonal(&[4.0, 9.0]).unwrap();
        let report = separation_report(&compute_discs(&a), RadiusMode::Row).unwrap();
        let s = match_to_discs(&eig_symmetric(&a).unwrap(), &report).unwrap();
        assert!(s.matched);
        assert!(!s.oracle_contradiction);
        assert_eq!(s.pairs[0].disc_index, Some(0));
        assert_eq!(s.pairs[1].disc_index, Some(1));
    }

    #[test]
    fn clustered_eigenvalues_fall_back_to_global_assignment() {
        let a = DenseMatrix::from_rows(&[&[2.0, 0.1], &[0.1, 2.6]]).unwrap();
        let report = separation_report(&compute_discs(&a), RadiusMode::Row).unwrap();
        assert!(report.disjoint);
        // Hand-built eigenvalues whose nearest discs collide on disc 1.
        let pair = |re: f64| SpectralPair {
            eigenvalue: Complex64::new(re, 0.0),
            eigenvector: Vec::new(),
            disc_index: None,
            residual: 0.0,
        };
        let spectrum = SpectrumReport {
            pairs: vec![pair(2.55), pair(2.6)],
            matched: false,
            oracle_contradiction: false,
        };
        let s = match_to_discs(&spectrum, &report).unwrap();
        assert!(!s.matched);
        assert!(s.oracle_contradiction);
        assert_eq!(s.pairs[0].disc_index, Some(0));
        assert_eq!(s.pairs[1].disc_index, Some(1));
    }

    #[test]
    fn matching_rejects_count_mismatch() {
        let a = DenseMatrix::diagonal(&[4.0, 9.0]).unwrap();
        let report = separation_report(&compute_discs(&a), RadiusMode::Row).unwrap();
        let three = DenseMatrix::diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let s = eig_symmetric(&three).unwrap();
        assert!(matches!(
            match_to_discs(&s, &report),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
