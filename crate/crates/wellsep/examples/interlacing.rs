//! Push a well-separated symmetric matrix along a nonnegative structured
//! direction: each eigenvalue climbs, but never past its upstairs neighbor.

use wellsep::{check_interlacing, gen_separated_symmetric, gen_structured_S, Separation};

fn main() {
    let n = 12;
    let a = gen_separated_symmetric(n, Separation::Linear, 11).expect("n >= 2");
    let s = gen_structured_S(n, 12).expect("n >= 2");

    for t in [0.0, 0.25, 0.5, 1.0] {
        let r = check_interlacing(&a, &s, t).expect("symmetric inputs");
        let max_climb = r
            .base_eigs
            .iter()
            .zip(&r.pert_eigs)
            .map(|(b, p)| p - b)
            .fold(f64::NEG_INFINITY, f64::max);
        println!(
            "t = {t:<5} interlaced = {:<5} max eigenvalue climb = {max_climb:.4}",
            r.interlaced
        );
    }

    let r = check_interlacing(&a, &s, 1.0).expect("symmetric inputs");
    println!("\nchain for t = 1 (base <= perturbed <= next base):");
    for i in 0..4 {
        println!(
            "  lambda_{i} = {:.4} <= lambda~_{i} = {:.4} <= lambda_{} = {:.4}",
            r.base_eigs[i],
            r.pert_eigs[i],
            i + 1,
            r.base_eigs[i + 1]
        );
    }
}
