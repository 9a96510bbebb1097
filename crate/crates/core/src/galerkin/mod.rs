//! Mode-by-mode Galerkin solution of the diagonal residual system.

mod cubic;
mod solve;
mod table;

pub use cubic::{eval_poly, interpolate_cubic, real_roots, solve_cubic_real_unit, RootPick};
pub use solve::{
    eliminate_comega, galerkin_solve, galerkin_solve_with, sufficiency_scan,
    sufficiency_scan_with, GalerkinConfig, ScanEntry, SolveRecord, SolveReport,
    SufficiencyScan, DEFAULT_MAX_SWEEPS, MAX_MODES, MIN_MODES,
};
pub use table::{comparison_table, ComparisonRow, ComparisonTable};
