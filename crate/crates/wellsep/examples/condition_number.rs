//! How ill-conditioned can the eigenvector basis of a well-separated matrix
//! get? Compare the computed 2-norm condition number against the closed-form
//! budget, then use the budget to cap eigenvalue drift under a perturbation.

use wellsep::{
    compute_discs, condition_bound, condition_number_2, corollary_bound, eig_symmetric,
    estimate_k, gen_separated_symmetric, gen_structured_S, match_to_discs, separation_report,
    spectral_norm, DenseMatrix, RadiusMode, Separation,
};

fn main() {
    let n = 14;
    let a = gen_separated_symmetric(n, Separation::Quadratic, 5).expect("n >= 2");

    let report = separation_report(&compute_discs(&a), RadiusMode::Row).expect("nonempty");
    let spectrum = match_to_discs(&eig_symmetric(&a).unwrap(), &report).unwrap();

    let k = estimate_k(&spectrum, &report.discs).expect("matched spectrum");
    let kappa = condition_number_2(&spectrum).expect("independent eigenvectors");
    let budget = condition_bound(n, k).expect("inside the valid regime");

    println!("off-diagonal mass estimate k = {k:.4}");
    println!("computed kappa_2(X)          = {kappa:.8}");
    println!("closed-form budget           = {:.8}", budget.kappa_bound);
    println!(
        "gram envelope: diag [{:.6}, {:.6}], off-diag <= {:.6}, radius {:.6}",
        budget.h_diag_lo, budget.h_diag_hi, budget.h_offdiag_max, budget.h_radius
    );

    // the budget converts a perturbation norm into an eigenvalue-drift cap
    let s = gen_structured_S(n, 6).expect("n >= 2");
    let zero = DenseMatrix::diagonal(&vec![0.0; n]).unwrap();
    let delta = zero.add_scaled(&s, 0.01).unwrap();
    let delta_norm = spectral_norm(&delta).expect("power iteration converges");
    let cap = corollary_bound(&budget, delta_norm).expect("nonnegative norm");

    let perturbed = a.add_scaled(&s, 0.01).unwrap();
    let pert_spectrum = eig_symmetric(&perturbed).unwrap();
    let max_shift = spectrum
        .pairs
        .iter()
        .zip(&pert_spectrum.pairs)
        .map(|(p, q)| (p.eigenvalue - q.eigenvalue).norm())
        .fold(0.0, f64::max);

    println!("\n||Delta||_2 = {delta_norm:.6}");
    println!("max eigenvalue shift = {max_shift:.3e} <= cap {cap:.3e}: {}", max_shift <= cap);
}
