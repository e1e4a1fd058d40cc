//! Structured results of Monte Carlo experiments.

use serde::Serialize;

/// One measured cell: a (row, column) position in an experiment's layout
/// with its Monte Carlo mean, standard error and contributing count.
///
/// For table experiments the column is the matrix dimension and the count
/// is the number of matrices (or, for pooled spacing averages, the number
/// of individual spacings, `(M-1) * samples`). For histogram experiments
/// the row identifies a bin, `mean` holds the observed bin count and
/// `std_error` the null-hypothesis sigma for that bin.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub row_label: String,
    pub col_label: String,
    pub mean: f64,
    pub std_error: f64,
    pub count: u64,
}

/// Result of one experiment run. Serialized verbatim to JSON; the CSV
/// emitter flattens `cells` with one data row each.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub experiment_name: String,
    pub dims: Vec<usize>,
    pub samples_per_cell: u64,
    pub seed: u64,
    pub cells: Vec<Cell>,
    pub wall_time_seconds: f64,
}

impl ExperimentReport {
    /// Looks up a cell by labels; convenient for tests and consistency
    /// checks.
    pub fn cell(&self, row: &str, col: &str) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.row_label == row && c.col_label == col)
    }
}
