//! Cyclic Jacobi diagonalization for real symmetric matrices.
//!
//! Sweeps annihilate every off-diagonal pair per pass; rotations are
//! accumulated into the eigenvector matrix. Convergence is declared when the
//! off-diagonal Frobenius norm drops below `tol_rel * ||A||_F`.

/// Outcome of a failed Jacobi run: (achieved off-diagonal norm, sweeps used).
pub(crate) type JacobiFailure = (f64, usize);

/// Diagonalizes a symmetric matrix given in row-major storage.
///
/// Returns `(eigenvalues, v)` with `v` row-major and eigenvector `k` stored
/// in column `k`. Eigenvalues are unsorted (diagonal order after sweeps).
pub(crate) fn jacobi_eigen(
    a_in: &[f64],
    n: usize,
    tol_rel: f64,
    max_sweeps: usize,
) -> Result<(Vec<f64>, Vec<f64>), JacobiFailure> {
    let mut a = a_in.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob = a_in.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tol = tol_rel * frob;

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if off <= tol {
            let eigs = (0..n).map(|i| a[i * n + i]).collect();
            return Ok((eigs, v));
        }
        if sweeps == max_sweeps {
            return Err((off, sweeps));
        }
        sweeps += 1;

        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                // stable tangent of the rotation angle
                let t = if theta.abs() > 1e150 {
                    1.0 / (2.0 * theta)
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a[p * n + p];
                let aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = akp - s * (akq + tau * akp);
                    let new_kq = akq + s * (akp - tau * akq);
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp - s * (vkq + tau * vkp);
                    v[k * n + q] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * sum).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_2x2() {
        let a = [2.0, 1.0, 1.0, 2.0];
        let (eigs, _) = jacobi_eigen(&a, 2, 1e-12, 100).unwrap();
        let mut sorted = eigs.clone();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((sorted[0] - 1.0).abs() < 1e-14);
        assert!((sorted[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_is_fixed_point() {
        let a = [4.0, 0.0, 0.0, 9.0];
        let (eigs, v) = jacobi_eigen(&a, 2, 1e-12, 100).unwrap();
        assert_eq!(eigs, vec![4.0, 9.0]);
        assert_eq!(v, vec![1.0, 0.0, 0.0, 1.0]);
    }
}
