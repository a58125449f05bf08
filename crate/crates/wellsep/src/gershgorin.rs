//! Gershgorin discs and separation diagnostics.
//!
//! Every eigenvalue of a square matrix lies in the union of its row discs
//! (and likewise in the union of its column discs). The `Min` radius takes
//! the smaller of the two per disc; that variant is not an inclusion region
//! in general, so it is used only where the bound formulas call for it,
//! never for containment checks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Which off-diagonal absolute sum plays the role of the disc radius.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum RadiusMode {
    #[default]
    Row,
    Col,
    Min,
}

impl RadiusMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RadiusMode::Row => "row",
            RadiusMode::Col => "col",
            RadiusMode::Min => "min",
        }
    }
}

impl std::str::FromStr for RadiusMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "row" => Ok(RadiusMode::Row),
            "col" => Ok(RadiusMode::Col),
            "min" => Ok(RadiusMode::Min),
            other => Err(format!("unknown radius mode `{other}` (expected row|col|min)")),
        }
    }
}

/// One Gershgorin disc: the diagonal entry plus all three radius variants.
#[derive(Clone, Debug)]
pub struct GershgorinDisc {
    pub index: usize,
    pub center: Complex64,
    pub row_radius: f64,
    pub col_radius: f64,
    pub min_radius: f64,
}

impl GershgorinDisc {
    pub fn radius(&self, mode: RadiusMode) -> f64 {
        match mode {
            RadiusMode::Row => self.row_radius,
            RadiusMode::Col => self.col_radius,
            RadiusMode::Min => self.min_radius,
        }
    }

    /// Signed distance from a point to the disc boundary (negative inside).
    pub fn boundary_distance(&self, z: Complex64, mode: RadiusMode) -> f64 {
        (z - self.center).norm() - self.radius(mode)
    }

    pub fn contains(&self, z: Complex64, mode: RadiusMode, slack: f64) -> bool {
        self.boundary_distance(z, mode) <= slack
    }
}

/// Heuristic classification of how strongly the diagonal entries separate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeparationOrder {
    Quadratic,
    Linear,
    Unseparated,
}

impl SeparationOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            SeparationOrder::Quadratic => "quadratic",
            SeparationOrder::Linear => "linear",
            SeparationOrder::Unseparated => "unseparated",
        }
    }
}

/// Pairwise-gap and clearance diagnostics for a disc family.
#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub discs: Vec<GershgorinDisc>,
    pub radius_mode: RadiusMode,
    /// min over i != j of |c_i - c_j| - r_i - r_j; +inf for a single disc.
    pub pairwise_gap: f64,
    pub disjoint: bool,
    /// Every disc avoids the unit circle: ||c| - 1| > r.
    pub unit_circle_clear: bool,
    /// Every disc avoids the origin: |c| > r.
    pub origin_clear: bool,
    /// min over i != j of |c_i - c_j| / n.
    pub sep_constant_linear: f64,
    /// min over i != j of |c_i - c_j| / n^2.
    pub sep_constant_quadratic: f64,
    pub max_radius: f64,
    pub separation_order: SeparationOrder,
}

/// Computes one disc per row; all three radius variants are stored.
pub fn compute_discs(a: &DenseMatrix) -> Vec<GershgorinDisc> {
    let n = a.n();
    (0..n)
        .map(|i| {
            let mut row_radius = 0.0;
            let mut col_radius = 0.0;
            for j in 0..n {
                if j != i {
                    row_radius += a.get(i, j).norm();
                    col_radius += a.get(j, i).norm();
                }
            }
            GershgorinDisc {
                index: i,
                center: a.get(i, i),
                row_radius,
                col_radius,
                min_radius: row_radius.min(col_radius),
            }
        })
        .collect()
}

/// Builds the separation diagnostics for a nonempty disc family.
pub fn separation_report(discs: &[GershgorinDisc], mode: RadiusMode) -> Result<SeparationReport> {
    if discs.is_empty() {
        return Err(Error::Precondition("separation report needs at least one disc".into()));
    }
    let n = discs.len();
    let mut pairwise_gap = f64::INFINITY;
    let mut min_center_dist = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = (discs[i].center - discs[j].center).norm();
            min_center_dist = min_center_dist.min(dist);
            pairwise_gap =
                pairwise_gap.min(dist - discs[i].radius(mode) - discs[j].radius(mode));
        }
    }
    let unit_circle_clear = discs
        .iter()
        .all(|d| (d.center.norm() - 1.0).abs() > d.radius(mode));
    let origin_clear = discs.iter().all(|d| d.center.norm() > d.radius(mode));
    let max_radius = discs.iter().map(|d| d.radius(mode)).fold(0.0, f64::max);
    let sep_constant_linear = min_center_dist / n as f64;
    let sep_constant_quadratic = sep_constant_linear / n as f64;

    let separation_order = if sep_constant_quadratic >= 1.0 && max_radius <= sep_constant_linear {
        SeparationOrder::Quadratic
    } else if sep_constant_linear >= 1.0 && max_radius <= sep_constant_linear {
        SeparationOrder::Linear
    } else {
        SeparationOrder::Unseparated
    };

    Ok(SeparationReport {
        discs: discs.to_vec(),
        radius_mode: mode,
        pairwise_gap,
        disjoint: pairwise_gap > 0.0,
        unit_circle_clear,
        origin_clear,
        sep_constant_linear,
        sep_constant_quadratic,
        max_radius,
        separation_order,
    })
}
