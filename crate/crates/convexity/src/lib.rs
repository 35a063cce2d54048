//! Hierarchical quasiconvexity on finite windows of hierarchical spaces:
//! realisation and hierarchy-path gauges, gates, hulls, filling squares,
//! drift in the orthogonals, the orthogonal projection dichotomy, strong
//! quasiconvexity and the combination theorems.
//!
//! An infinite gauge cannot be observed on a finite window, so every verdict
//! compares a measurement on the full window with the same measurement on
//! the sub-window of half the coordinate radius (see [`frame`]).

pub mod combined;
mod coords;
pub mod dichotomy;
pub mod drift;
pub mod error;
pub mod frame;
pub mod gate;
pub mod gauge;
pub mod hqc;
mod metric;
pub mod paths;
pub mod squares;
pub mod strong;
pub mod subset;
pub mod union;

use serde::{Deserialize, Serialize};

pub use combined::{combined_amalgam_convexity, AmalgamSubsets, CombinedReport, TheoremCheck};
pub use dichotomy::{orth_dichotomy, DichotomyReport, PairDichotomy};
pub use drift::{drift_qualifying, no_drift_check, DomainDrift, DriftReport, DriftSample};
pub use error::{ConvexityError, Result};
pub use frame::{central_vertex, Frame, WindowInfo};
pub use gate::{gate, gate_vs_intersection, Gate, GateContext, GateIntersection};
pub use gauge::{GaugeKind, GaugeSample, GaugeTable};
pub use hqc::{default_tolerances, hqc_check, HqcFailure, HqcReport, ProjectionTrend, RealisationWitness};
pub use paths::{
    default_path_lambdas, enumerate_hierarchy_paths, hqc_via_paths, hull, is_hierarchy_path, lambda_candidates, measure_lambda0, HullReport,
    Lambda0Report, PathGaugeReport, PathSet,
};
pub use squares::{fill_all_squares, FillReport, SquareDefect};
pub use strong::{default_lambdas, strong_sweep, StrongReport};
pub use subset::{Provenance, SubsetSpec};
pub use union::{union_qc_hyperbolic, UnionBound};

/// Work limits for the searches.  Exceeding one marks the result partial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Member pairs per quasiconvexity constant.
    pub qc_pairs: usize,
    /// Search expansions per pair of path endpoints.
    pub path_expansions: usize,
    /// Endpoint pairs per path gauge or hull round.
    pub path_pairs: usize,
    /// Cached breadth-first rows on graphs too large for a distance table.
    pub distance_rows: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { qc_pairs: 200_000, path_expansions: 5_000, path_pairs: 200, distance_rows: 512 }
    }
}
