//! Complex LU factorization and inverse iteration for eigenvector recovery.

use num_complex::Complex64;
use rand::Rng;

/// Dense complex LU with partial pivoting. Near-singular pivots are floored
/// rather than rejected: inverse iteration wants the shifted matrix to be as
/// singular as possible, the floor only keeps the arithmetic finite.
pub(crate) struct ComplexLu {
    n: usize,
    lu: Vec<Complex64>,
    piv: Vec<usize>,
}

impl ComplexLu {
    pub(crate) fn factor(mut a: Vec<Complex64>, n: usize, pivot_floor: f64) -> Self {
        let mut piv = vec![0usize; n];
        for k in 0..n {
            let mut best = k;
            let mut best_mag = a[k * n + k].norm();
            for i in (k + 1)..n {
                let mag = a[i * n + k].norm();
                if mag > best_mag {
                    best_mag = mag;
                    best = i;
                }
            }
            piv[k] = best;
            if best != k {
                for j in 0..n {
                    a.swap(k * n + j, best * n + j);
                }
            }
            if a[k * n + k].norm() < pivot_floor {
                a[k * n + k] = Complex64::new(pivot_floor, 0.0);
            }
            let pivot = a[k * n + k];
            for i in (k + 1)..n {
                let f = a[i * n + k] / pivot;
                a[i * n + k] = f;
                for j in (k + 1)..n {
                    let upd = f * a[k * n + j];
                    a[i * n + j] -= upd;
                }
            }
        }
        ComplexLu { n, lu: a, piv }
    }

    pub(crate) fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.piv[k]);
        }
        for i in 1..n {
            let mut sum = b[i];
            for j in 0..i {
                sum -= self.lu[i * n + j] * b[j];
            }
            b[i] = sum;
        }
        for i in (0..n).rev() {
            let mut sum = b[i];
            for j in (i + 1)..n {
                sum -= self.lu[i * n + j] * b[j];
            }
            b[i] = sum / self.lu[i * n + i];
        }
    }
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
    norm
}

/// Residual ||A x - lambda x||_2 for a real matrix and complex eigenpair.
pub(crate) fn eigen_residual(a: &[f64], n: usize, lambda: Complex64, x: &[Complex64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        let mut acc = Complex64::ZERO;
        for j in 0..n {
            acc += a[i * n + j] * x[j];
        }
        acc -= lambda * x[i];
        sum += acc.norm_sqr();
    }
    sum.sqrt()
}

/// One inverse-iteration run: factor (A - (lambda + delta) I), take `steps`
/// solve-and-normalize steps from a random start, report the residual.
pub(crate) fn inverse_iteration(
    a: &[f64],
    n: usize,
    lambda: Complex64,
    frob: f64,
    steps: usize,
    rng: &mut impl Rng,
) -> (Vec<Complex64>, f64) {
    let delta = 1e-10 * (1.0 + lambda.norm());
    let shift = lambda + Complex64::new(delta, 0.0);
    let mut shifted: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    for i in 0..n {
        shifted[i * n + i] -= shift;
    }
    let pivot_floor = f64::EPSILON * frob.max(1.0) * 1e-3 + f64::MIN_POSITIVE;
    let lu = ComplexLu::factor(shifted, n, pivot_floor);

    let mut x: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    normalize(&mut x);
    for _ in 0..steps {
        lu.solve_in_place(&mut x);
        if normalize(&mut x) == 0.0 {
            break;
        }
    }
    let residual = eigen_residual(a, n, lambda, &x);
    (x, residual)
}
