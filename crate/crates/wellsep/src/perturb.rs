//! Matrix families with controlled disc separation, and perturbations that
//! respect it.
//!
//! The generators place diagonals on an arithmetic ladder (`i·n` or `i·n^2`)
//! and rescale off-diagonal noise until every Gershgorin disc stays clear of
//! its neighbors, which makes the outputs positive definite and keeps every
//! downstream bound applicable. [`check_interlacing`] verifies that adding a
//! small positive-diagonal symmetric step `t·S` slides each eigenvalue up
//! without crossing the next one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::eigen::eig_symmetric;
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, Symmetry};

/// Diagonal ladder spacing for [`gen_separated_symmetric`]: centers `n`
/// apart (`Linear`) or `n^2` apart (`Quadratic`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separation {
    Linear,
    Quadratic,
}

impl Separation {
    pub fn as_str(self) -> &'static str {
        match self {
            Separation::Linear => "linear",
            Separation::Quadratic => "quadratic",
        }
    }
}

impl std::str::FromStr for Separation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "linear" => Ok(Separation::Linear),
            "quadratic" => Ok(Separation::Quadratic),
            other => Err(format!("unknown separation `{other}` (use linear|quadratic)")),
        }
    }
}

/// A reproducible perturbation recipe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbSpec {
    pub kind: PerturbKind,
    /// Off-diagonal multiplier `c` in `[0, 1]` (used by `OffdiagScale`).
    pub factor: f64,
    /// Step size `t >= 0` (used by `StructuredS`).
    pub t: f64,
    /// Seed for the structured perturbation's RNG.
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbKind {
    /// Scale every off-diagonal entry by `factor`, keeping the diagonal.
    OffdiagScale,
    /// Add `t * S` with `S` from [`gen_structured_S`].
    StructuredS,
}

impl PerturbSpec {
    /// Materializes the perturbed matrix.
    pub fn apply(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        match self.kind {
            PerturbKind::OffdiagScale => {
                if !(0.0..=1.0).contains(&self.factor) {
                    return Err(Error::Precondition(format!(
                        "off-diagonal multiplier must lie in [0, 1], got {}",
                        self.factor
                    )));
                }
                Ok(truncate_offdiag(a, self.factor))
            }
            PerturbKind::StructuredS => {
                if !(self.t >= 0.0) {
                    return Err(Error::Precondition(format!(
                        "step size must be nonnegative, got {}",
                        self.t
                    )));
                }
                let s = gen_structured_S(a.n(), self.seed)?;
                a.add_scaled(&s, self.t)
            }
        }
    }
}

/// Symmetric matrix with diagonal `i·n` (`Linear`) or `i·n^2` (`Quadratic`),
/// `i = 1..n`, and Gaussian off-diagonals rescaled row-wise until every row
/// radius is at most 0.4 times both the smallest diagonal gap and the
/// smallest diagonal. The discs are therefore pairwise disjoint and stay to
/// the right of the origin, and the matrix is positive definite.
pub fn gen_separated_symmetric(n: usize, sep: Separation, seed: u64) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::Precondition(format!("generator needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    let spacing = match sep {
        Separation::Linear => nf,
        Separation::Quadratic => nf * nf,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = vec![0.0; n * n];
    for i in 0..n {
        e[i * n + i] = (i + 1) as f64 * spacing;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let g: f64 = rng.sample(StandardNormal);
            e[i * n + j] = g;
            e[j * n + i] = g;
        }
    }
    // smallest diagonal gap and smallest diagonal both equal `spacing`
    rescale_symmetric_rows(&mut e, n, 0.4 * spacing);
    DenseMatrix::from_real(n, &e, Symmetry::Symmetric)
}

/// Scales off-diagonal entry (i, j) by `min(s_i, s_j)` where `s_i` caps row
/// `i`'s off-diagonal absolute sum at `target`; keeps the matrix symmetric.
fn rescale_symmetric_rows(e: &mut [f64], n: usize, target: f64) {
    let scale: Vec<f64> = (0..n)
        .map(|i| {
            let r: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| e[i * n + j].abs())
                .sum();
            if r > target {
                target / r
            } else {
                1.0
            }
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                e[i * n + j] *= scale[i].min(scale[j]);
            }
        }
    }
}

/// Upper Hessenberg matrix with diagonal `i·n`, strictly positive
/// uniform-(0,1] entries on the remaining Hessenberg positions, and the same
/// row-radius rescaling as [`gen_separated_symmetric`], so its row discs are
/// pairwise disjoint.
#[allow(non_snake_case)]
pub fn gen_hessenberg_positive(n: usize, seed: u64) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::Precondition(format!("generator needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = vec![0.0; n * n];
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            if i == j {
                e[i * n + i] = (i + 1) as f64 * nf;
            } else {
                // 1 - u in (0, 1] keeps every stored entry strictly positive
                e[i * n + j] = 1.0 - rng.random::<f64>();
            }
        }
    }
    let target = 0.4 * nf;
    for i in 0..n {
        let r: f64 = (0..n).filter(|&j| j != i).map(|j| e[i * n + j].abs()).sum();
        if r > target {
            let s = target / r;
            for j in 0..n {
                if j != i {
                    e[i * n + j] *= s;
                }
            }
        }
    }
    DenseMatrix::from_real(n, &e, Symmetry::General)
}

/// Keeps the diagonal and multiplies every off-diagonal entry by `c`, so
/// each disc keeps its center while its radius scales by `c`.
pub fn truncate_offdiag(a: &DenseMatrix, c: f64) -> DenseMatrix {
    let n = a.n();
    let entries = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j {
                a.entries()[idx]
            } else {
                c * a.entries()[idx]
            }
        })
        .collect();
    DenseMatrix::from_complex(n, entries, a.symmetry())
        .expect("entrywise scaling preserves shape and symmetry")
}

/// Symmetric perturbation direction with diagonal uniform in `[0.5, 1.5]`
/// and off-diagonals `g/n` (standard Gaussian `g`) clamped to `|.| <= 1/n`.
#[allow(non_snake_case)]
pub fn gen_structured_S(n: usize, seed: u64) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::Precondition(format!("generator needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = vec![0.0; n * n];
    for i in 0..n {
        e[i * n + i] = 0.5 + rng.random::<f64>();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let g: f64 = rng.sample(StandardNormal);
            let v = (g / nf).clamp(-1.0 / nf, 1.0 / nf);
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
    }
    DenseMatrix::from_real(n, &e, Symmetry::Symmetric)
}

/// Eigenvalues of `A` and `A + tS`, ascending, with the interlacing verdict.
#[derive(Debug, Clone)]
pub struct InterlaceResult {
    pub base_eigs: Vec<f64>,
    pub pert_eigs: Vec<f64>,
    /// `base[0] <= pert[0] <= base[1] <= pert[1] <= ... <= base[n-1] <= pert[n-1]`
    /// up to a slack of `1e-9 * (1 + ||A||_F)`.
    pub interlaced: bool,
    /// Smallest index whose chain link fails, when any does.
    pub first_violation: Option<usize>,
}

/// Diagonalizes `A` and `A + tS` and checks that their sorted eigenvalues
/// interlace, each perturbed value sitting between its base value and the
/// next one.
pub fn check_interlacing(a: &DenseMatrix, s: &DenseMatrix, t: f64) -> Result<InterlaceResult> {
    if !(t >= 0.0) {
        return Err(Error::Precondition(format!(
            "step size must be nonnegative, got {t}"
        )));
    }
    let perturbed = a.add_scaled(s, t)?;
    let base: Vec<f64> = eig_symmetric(a)?
        .pairs
        .iter()
        .map(|p| p.eigenvalue.re)
        .collect();
    let pert: Vec<f64> = eig_symmetric(&perturbed)?
        .pairs
        .iter()
        .map(|p| p.eigenvalue.re)
        .collect();

    let slack = 1e-9 * (1.0 + a.frobenius_norm());
    let n = base.len();
    let mut first_violation = None;
    for i in 0..n {
        let lower_ok = pert[i] >= base[i] - slack;
        let upper_ok = i + 1 >= n || pert[i] <= base[i + 1] + slack;
        if !(lower_ok && upper_ok) {
            first_violation = Some(i);
            break;
        }
    }
    Ok(InterlaceResult {
        base_eigs: base,
        pert_eigs: pert,
        interlaced: first_violation.is_none(),
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eig_general;
    use crate::gershgorin::{compute_discs, separation_report, RadiusMode};
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_by_two_linear_family() {
        for seed in 0..20 {
            let a = gen_separated_symmetric(2, Separation::Linear, seed).unwrap();
            assert_eq!(a.re(0, 0), 2.0);
            assert_eq!(a.re(1, 1), 4.0);
            assert!(a.re(0, 1).abs() <= 0.8 + 1e-15);
            assert_eq!(a.re(0, 1), a.re(1, 0));
        }
    }

    #[test]
    fn generated_discs_are_disjoint_and_spectrum_positive() {
        for (sep, seed) in [(Separation::Linear, 1), (Separation::Quadratic, 2)] {
            let a = gen_separated_symmetric(10, sep, seed).unwrap();
            let report = separation_report(&compute_discs(&a), RadiusMode::Row).unwrap();
            assert!(report.disjoint);
            assert!(report.origin_clear);
            let s = eig_symmetric(&a).unwrap();
            assert!(s.pairs[0].eigenvalue.re > 0.0);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gen_separated_symmetric(12, Separation::Linear, 99).unwrap();
        let b = gen_separated_symmetric(12, Separation::Linear, 99).unwrap();
        assert_eq!(a.entries(), b.entries());
        let c = gen_separated_symmetric(12, Separation::Linear, 100).unwrap();
        assert_ne!(a.entries(), c.entries());
        let h = gen_hessenberg_positive(9, 5).unwrap();
        let h2 = gen_hessenberg_positive(9, 5).unwrap();
        assert_eq!(h.entries(), h2.entries());
    }

    #[test]
    fn hessenberg_pattern_and_positivity() {
        let a = gen_hessenberg_positive(3, 4).unwrap();
        assert_eq!(a.re(2, 0), 0.0);
        assert!(a.re(1, 0) > 0.0);
        assert!(a.re(2, 1) > 0.0);
        let b = gen_hessenberg_positive(6, 11).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if j + 1 < i {
                    assert_eq!(b.re(i, j), 0.0);
                } else {
                    assert!(b.re(i, j) > 0.0);
                }
            }
        }
    }

    #[test]
    fn hessenberg_eigenvalues_stay_inside_their_discs() {
        let a = gen_hessenberg_positive(8, 13).unwrap();
        let report = separation_report(&compute_discs(&a), RadiusMode::Row).unwrap();
        assert!(report.disjoint);
        let s = eig_general(&a).unwrap();
        for pair in &s.pairs {
            assert!(report
                .discs
                .iter()
                .any(|d| d.contains(pair.eigenvalue, RadiusMode::Row, 1e-8)));
        }
    }

    #[test]
    fn truncation_scales_offdiagonals_only() {
        let a = DenseMatrix::from_rows(&[&[5.0, 1.0], &[2.0, 10.0]]).unwrap();
        let b = truncate_offdiag(&a, 0.5);
        assert_eq!(b.re(0, 0), 5.0);
        assert_eq!(b.re(0, 1), 0.5);
        assert_eq!(b.re(1, 0), 1.0);
        assert_eq!(b.re(1, 1), 10.0);

        let full = truncate_offdiag(&a, 1.0);
        assert_eq!(full.entries(), a.entries());
        let diag = truncate_offdiag(&a, 0.0);
        assert_eq!(diag.re(0, 1), 0.0);
        assert_eq!(diag.re(1, 0), 0.0);
        assert_eq!(diag.re(0, 0), 5.0);
    }

    #[test]
    fn truncation_shrinks_disc_radii_in_place() {
        let a = gen_separated_symmetric(7, Separation::Linear, 3).unwrap();
        let b = truncate_offdiag(&a, 0.5);
        let da = compute_discs(&a);
        let db = compute_discs(&b);
        for (x, y) in da.iter().zip(&db) {
            assert_eq!(x.center, y.center);
            assert_abs_diff_eq!(y.row_radius, 0.5 * x.row_radius, epsilon = 1e-12);
        }
    }

    #[test]
    fn structured_direction_respects_entry_budgets() {
        let n = 10;
        let s = gen_structured_S(n, 8).unwrap();
        for i in 0..n {
            let d = s.re(i, i);
            assert!((0.5..=1.5).contains(&d));
            for j in 0..n {
                if i != j {
                    assert!(s.re(i, j).abs() <= 1.0 / n as f64);
                    assert_eq!(s.re(i, j), s.re(j, i));
                }
            }
        }
        assert!(matches!(
            gen_structured_S(1, 8),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn diagonal_shift_interlaces() {
        let a = DenseMatrix::diagonal(&[1.0, 10.0]).unwrap();
        let s = DenseMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let r = check_interlacing(&a, &s, 1.0).unwrap();
        assert_abs_diff_eq!(r.base_eigs[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.base_eigs[1], 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.pert_eigs[0], 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.pert_eigs[1], 10.5, epsilon = 1e-12);
        assert!(r.interlaced);
        assert_eq!(r.first_violation, None);
    }

    #[test]
    fn zero_step_keeps_spectrum_and_interlaces() {
        let a = gen_separated_symmetric(6, Separation::Linear, 17).unwrap();
        let s = gen_structured_S(6, 18).unwrap();
        let r = check_interlacing(&a, &s, 0.0).unwrap();
        assert!(r.interlaced);
        for (b, p) in r.base_eigs.iter().zip(&r.pert_eigs) {
            assert_abs_diff_eq!(b, p, epsilon = 1e-9 * (1.0 + a.frobenius_norm()));
        }
    }

    #[test]
    fn generated_family_interlaces_and_moves_up() {
        let a = gen_separated_symmetric(20, Separation::Linear, 31).unwrap();
        let s = gen_structured_S(20, 32).unwrap();
        let slack = 1e-9 * (1.0 + a.frobenius_norm());
        for t in [0.25, 1.0] {
            let r = check_interlacing(&a, &s, t).unwrap();
            assert!(r.interlaced, "violation at {:?}", r.first_violation);
            for (b, p) in r.base_eigs.iter().zip(&r.pert_eigs) {
                assert!(p >= &(b - slack));
            }
        }
    }

    #[test]
    fn negative_step_is_rejected() {
        let a = DenseMatrix::diagonal(&[1.0, 2.0]).unwrap();
        let s = DenseMatrix::diagonal(&[1.0, 1.0]).unwrap();
        assert!(matches!(
            check_interlacing(&a, &s, -0.5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn perturb_spec_dispatches() {
        let a = DenseMatrix::from_rows(&[&[5.0, 1.0], &[2.0, 10.0]]).unwrap();
        let plan = PerturbSpec {
            kind: PerturbKind::OffdiagScale,
            factor: 0.5,
            t: 0.0,
            seed: 0,
        };
        let b = plan.apply(&a).unwrap();
        assert_eq!(b.re(0, 1), 0.5);

        let sym = gen_separated_symmetric(5, Separation::Linear, 2).unwrap();
        let plan = PerturbSpec {
            kind: PerturbKind::StructuredS,
            factor: 0.0,
            t: 0.5,
            seed: 7,
        };
        let c = plan.apply(&sym).unwrap();
        let s = gen_structured_S(5, 7).unwrap();
        assert_abs_diff_eq!(c.re(0, 0), sym.re(0, 0) + 0.5 * s.re(0, 0), epsilon = 1e-15);

        let bad = PerturbSpec {
            kind: PerturbKind::OffdiagScale,
            factor: 1.5,
            t: 0.0,
            seed: 0,
        };
        assert!(bad.apply(&a).is_err());
    }
}
