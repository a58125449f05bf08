//! Where can the eigenvalues be? Gershgorin discs and the separation report
//! for a small hand-written matrix.

use wellsep::{compute_discs, separation_report, DenseMatrix, RadiusMode};

fn main() {
    let a = DenseMatrix::from_rows(&[
        &[10.0, 0.4, 0.1],
        &[0.3, 20.0, 0.6],
        &[0.2, 0.5, 31.0],
    ])
    .expect("square matrix");

    let discs = compute_discs(&a);
    for d in &discs {
        println!(
            "disc {}: center {:.1}, row radius {:.2}, col radius {:.2}, min radius {:.2}",
            d.index,
            d.center.re,
            d.row_radius,
            d.col_radius,
            d.min_radius
        );
    }

    for mode in [RadiusMode::Row, RadiusMode::Col, RadiusMode::Min] {
        let report = separation_report(&discs, mode).expect("nonempty disc set");
        println!(
            "{:>3} radii: disjoint={}, pairwise gap {:.3}, order {:?}",
            mode.as_str(),
            report.disjoint,
            report.pairwise_gap,
            report.separation_order
        );
    }

    // every eigenvalue of a (here: real, since a is close to diagonal) must
    // sit inside the union of the discs
    let spectrum = wellsep::eig_general(&a).expect("solver converges");
    let report = separation_report(&discs, RadiusMode::Row).expect("nonempty");
    for p in &spectrum.pairs {
        let inside = discs
            .iter()
            .any(|d| d.contains(p.eigenvalue, report.radius_mode, 1e-12));
        println!("eigenvalue {:.4} inside some disc: {inside}", p.eigenvalue.re);
    }
}
