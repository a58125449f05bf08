//! The geometry behind the truncation bound: what does the set of possible
//! relative eigenvalue errors look like, and how well does a circle
//! approximate it?

use wellsep::{error_region, invert_disc};

fn main() {
    // a disc of radius r1 = 1 around |center| = 10, perturbed within r2 = 2
    let region = error_region(10.0, 1.0, 2.0).expect("center exceeds radius");

    println!("worst-case relative error bound: {:.6}", region.bound);
    println!(
        "circle approximation: center {:.6} (shifted {:.6}), radius {:.6}",
        region.approx_center, region.shifted_center, region.approx_radius
    );

    // sample the exact oval on a coarse grid; the bound is attained where
    // both perturbations align with the center direction
    let steps = 200;
    let mut max_err: f64 = 0.0;
    let (mut lo, mut hi): (f64, f64) = (f64::INFINITY, 0.0);
    for i in 0..steps {
        for j in 0..steps {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / steps as f64;
            let eta = 2.0 * std::f64::consts::PI * j as f64 / steps as f64;
            let z = region.oval_sample(theta, eta);
            max_err = max_err.max(z.norm());
            let ratio = (z + 1.0).norm();
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    println!("sampled max |relative error|: {max_err:.6}");
    let (range_lo, range_hi) = region.modulus_range();
    println!("sampled ratio moduli [{lo:.6}, {hi:.6}] vs predicted [{range_lo:.6}, {range_hi:.6}]");

    // the same machinery describes where 1/lambda can live
    let inv = invert_disc(10.0, 0.0, 1.0).expect("disc avoids the origin");
    println!(
        "inverted disc: center {:.6}{:+.6}i, radius {:.6}",
        inv.center.re, inv.center.im, inv.radius
    );
}
