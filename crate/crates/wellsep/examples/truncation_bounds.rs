//! Throw away half of every off-diagonal entry: how far do the eigenvalues
//! move, and does the closed-form per-disc bound cover it?

use wellsep::{
    compute_discs, eig_symmetric, gen_separated_symmetric, match_to_discs, relative_error,
    separation_report, truncate_offdiag, ErrorRegion, RadiusMode, Separation,
};

fn main() {
    let n = 30;
    let a = gen_separated_symmetric(n, Separation::Linear, 7).expect("n >= 2");
    let c = 0.5;
    let truncated = truncate_offdiag(&a, c);

    let mode = RadiusMode::Row;
    let report = separation_report(&compute_discs(&a), mode).expect("nonempty");
    let report_t = separation_report(&compute_discs(&truncated), mode).expect("nonempty");

    let spectrum = match_to_discs(&eig_symmetric(&a).unwrap(), &report).unwrap();
    let spectrum_t = match_to_discs(&eig_symmetric(&truncated).unwrap(), &report_t).unwrap();

    // pair each original eigenvalue with the truncated one in the same disc
    let mut by_disc = vec![(0.0, 0.0); n];
    for p in &spectrum.pairs {
        by_disc[p.disc_index.unwrap()].0 = p.eigenvalue.re;
    }
    for p in &spectrum_t.pairs {
        by_disc[p.disc_index.unwrap()].1 = p.eigenvalue.re;
    }

    println!("{:>4} {:>14} {:>14} {:>12} {:>12}", "disc", "lambda", "lambda~", "rel_error", "bound");
    let mut worst_ratio: f64 = 0.0;
    for (i, disc) in report.discs.iter().enumerate() {
        let (lam, lam_t) = by_disc[i];
        let r1 = disc.radius(mode);
        let r2 = report_t.discs[i].radius(mode);
        let region = ErrorRegion::from_center(disc.center, r1, r2).expect("center beats radius");
        let rel = relative_error(lam.into(), lam_t.into()).expect("nonzero eigenvalue");
        worst_ratio = worst_ratio.max(rel / region.bound);
        if i < 8 {
            println!("{i:>4} {lam:>14.6} {lam_t:>14.6} {rel:>12.3e} {:>12.3e}", region.bound);
        }
    }
    println!("... worst observed rel_error / bound over all {n} discs: {worst_ratio:.3}");
}
