//! Hessenberg reduction and the double-shift QR eigenvalue iteration.
//!
//! `hessenberg_reduce` is the classic Householder orthes step; `hqr` is a
//! port of the EISPACK/Numerical Recipes Francis double-shift iteration,
//! eigenvalues only (eigenvectors are recovered separately by inverse
//! iteration). Variable names follow the original fortran lineage.

use num_complex::Complex64;

/// Failure payload: (last subdiagonal magnitude, iterations spent on it).
pub(crate) type QrFailure = (f64, usize);

/// Householder reduction to upper Hessenberg form, in place, no Q.
pub(crate) fn hessenberg_reduce(h: &mut [f64], n: usize) {
    if n < 3 {
        return;
    }
    let mut ort = vec![0.0; n];
    let high = n - 1;
    for m in 1..high {
        let mut scale = 0.0;
        for i in m..=high {
            scale += h[i * n + m - 1].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut h_sum = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[i * n + m - 1] / scale;
            h_sum += ort[i] * ort[i];
        }
        let mut g = h_sum.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        h_sum -= ort[m] * g;
        ort[m] -= g;

        // apply the Householder similarity transformation H = (I - u u'/h) H (I - u u'/h)
        for j in m..n {
            let mut f = 0.0;
            for i in (m..=high).rev() {
                f += ort[i] * h[i * n + j];
            }
            f /= h_sum;
            for i in m..=high {
                h[i * n + j] -= f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = 0.0;
            for j in (m..=high).rev() {
                f += ort[j] * h[i * n + j];
            }
            f /= h_sum;
            for j in m..=high {
                h[i * n + j] -= f * ort[j];
            }
        }
        h[m * n + m - 1] = scale * g;
    }
    // zero out the sub-subdiagonal fill that the iteration must not see
    for i in 2..n {
        for j in 0..(i - 1) {
            h[i * n + j] = 0.0;
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by Francis double-shift QR.
///
/// Complex conjugate pairs come out adjacent with the positive imaginary
/// part first. `max_its` bounds the iterations spent deflating any single
/// eigenvalue; exceptional shifts fire every tenth iteration.
#[allow(unused_assignments)] // p/q/r live across the deflation loop like in the reference scheme
pub(crate) fn hqr(h: &mut [f64], n: usize, max_its: usize) -> Result<Vec<Complex64>, QrFailure> {
    let eps = f64::EPSILON;
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h[i * n + j].abs();
        }
    }

    let (mut p, mut q, mut r): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut t = 0.0;
    let mut nn = n as isize - 1;
    while nn >= 0 {
        let mut its = 0usize;
        loop {
            let nnu = nn as usize;
            // look for a single negligible subdiagonal element
            let mut l = nnu;
            while l >= 1 {
                let mut s = h[(l - 1) * n + l - 1].abs() + h[l * n + l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h[l * n + l - 1].abs() <= eps * s {
                    h[l * n + l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = h[nnu * n + nnu];
            if l == nnu {
                // one real root found
                eigs.push(Complex64::new(x + t, 0.0));
                nn -= 1;
                break;
            }
            let mut y = h[(nnu - 1) * n + nnu - 1];
            let mut w = h[nnu * n + nnu - 1] * h[(nnu - 1) * n + nnu];
            if l == nnu - 1 {
                // a pair of roots from the trailing 2x2 block
                p = 0.5 * (y - x);
                q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + z.copysign(p);
                    let lam1 = x + z;
                    let lam2 = if z != 0.0 { x - w / z } else { lam1 };
                    eigs.push(Complex64::new(lam1, 0.0));
                    eigs.push(Complex64::new(lam2, 0.0));
                } else {
                    eigs.push(Complex64::new(x + p, z));
                    eigs.push(Complex64::new(x + p, -z));
                }
                nn -= 2;
                break;
            }

            // no root yet: perform a double QR sweep
            if its == max_its {
                return Err((h[nnu * n + nnu - 1].abs(), its));
            }
            if its > 0 && its.is_multiple_of(10) {
                // exceptional shift
                t += x;
                for i in 0..=nnu {
                    h[i * n + i] -= x;
                }
                let s = h[nnu * n + nnu - 1].abs() + h[(nnu - 1) * n + nnu - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            let mut m = nnu - 2;
            loop {
                let z = h[m * n + m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h[(m + 1) * n + m] + h[m * n + m + 1];
                q = h[(m + 1) * n + m + 1] - z - rr - ss;
                r = h[(m + 2) * n + m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = h[m * n + m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs()
                    * (h[(m - 1) * n + m - 1].abs() + z.abs() + h[(m + 1) * n + m + 1].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nnu {
                h[i * n + i - 2] = 0.0;
                if i != m + 2 {
                    h[i * n + i - 3] = 0.0;
                }
            }
            // bulge chase
            for k in m..nnu {
                if k != m {
                    p = h[k * n + k - 1];
                    q = h[(k + 1) * n + k - 1];
                    r = if k != nnu - 1 { h[(k + 2) * n + k - 1] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        h[k * n + k - 1] = -h[k * n + k - 1];
                    }
                } else {
                    h[k * n + k - 1] = -s * x;
                }
                p += s;
                x = p / s;
                let y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nnu {
                    let mut pp = h[k * n + j] + q * h[(k + 1) * n + j];
                    if k != nnu - 1 {
                        pp += r * h[(k + 2) * n + j];
                        h[(k + 2) * n + j] -= pp * z;
                    }
                    h[(k + 1) * n + j] -= pp * y;
                    h[k * n + j] -= pp * x;
                }
                let mmin = nnu.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * h[i * n + k] + y * h[i * n + k + 1];
                    if k != nnu - 1 {
                        pp += z * h[i * n + k + 2];
                        h[i * n + k + 2] -= pp * r;
                    }
                    h[i * n + k + 1] -= pp * q;
                    h[i * n + k] -= pp;
                }
            }
        }
    }
    Ok(eigs)
}
