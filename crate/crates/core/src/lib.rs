#![forbid(unsafe_code)]

//! Modeling and analysis of tag co-occurrence networks.
//!
//! The pipeline: parse tag-question data into a bipartite graph
//! ([`ingest`]), fit heavy-tailed distributions to its tag frequencies
//! ([`distfit`]), generate random bipartite graphs with matched frequency
//! structure ([`generator`]), project onto the weighted co-tagging network
//! ([`cotag`]), and compute the statistics that tie model to data
//! ([`analysis`]).

pub mod analysis;
pub mod cotag;
pub mod distfit;
pub mod generator;
pub mod graph;
pub mod ingest;
mod numeric;
pub mod report;

pub use analysis::{
    analyze_graph, compare_model_to_data, cubic_log_fit, expected_unique_cotags,
    expected_weighted_cotags, linear_cotag_regression, pca_explained_variance, AnalysisError,
    CubicLogFit, LinearFit, PcaSummary,
};
pub use cotag::{project, ClusteringReport, CotagError, CotagGraph};
pub use distfit::{
    fit_lognormal, fit_powerlaw, fit_stretched_exponential, fit_truncated_powerlaw, ks_statistic,
    likelihood_ratio_test, param_population, DistFitError, DistributionFit, Family, FitParams,
    LikelihoodRatioResult, ParamPopulation,
};
pub use generator::{
    assign_tags, expected_empty_questions, generate, generate_with_clamp, sample_frequencies,
    solve_corrected_questions, tags_per_question_distribution, GenerationReport, GeneratorConfig,
    GeneratorError, GeneratorRng,
};
pub use graph::{BipartiteTagGraph, GraphError, GraphSummary, TagFrequencyVector};
pub use ingest::{
    build_bipartite, decode_tag_attribute, parse_posts_xml, parse_tsv, BuildOutcome,
    CommunityDataset, IngestError, QuestionRecord, RejectCounts,
};
pub use report::{
    AnalysisReport, ClusteringBlock, ComparisonReport, CubicBlock, LinearBlock, LognormalBlock,
    MetricComparison, SCHEMA_VERSION,
};

/// Any error this crate can raise, for callers that funnel everything to
/// one place (the CLI maps these onto exit codes).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    DistFit(#[from] DistFitError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Cotag(#[from] CotagError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}
