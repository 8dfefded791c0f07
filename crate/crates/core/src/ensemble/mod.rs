//! Monte Carlo engine for the real and complex Ginibre ensembles.

mod experiment;
mod sample;
mod stats;
mod summary;

pub use experiment::{
    merge_results, run_experiment, sector_counts, sector_counts_per_sample, ExperimentConfig, ExperimentKey,
    ExperimentResult, SamplePoints, Statistic, BACKWARD_CHECK_STRIDE, BACKWARD_ERROR_LIMIT, MAX_FAILURE_FRACTION,
};
pub use sample::{
    backward_error, eigenvalues, sample_matrix, sample_stream, EnsembleKind, EnsembleMatrix, Entries, GAUSSIAN_SAMPLER,
    RNG_DESCRIPTION,
};
pub use stats::{ecdf_at, ecdf_with_stderr, ks_statistic, Histogram};
pub use summary::{spectrum_summary, ScaledPoint, SpectrumSummary};
