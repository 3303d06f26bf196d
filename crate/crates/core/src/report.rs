//! Serializable report records shared by the library and the CLI.
//!
//! Every top-level JSON artifact carries `schema_version`; the matching JSON
//! Schema documents ship in the repository under `schemas/v<version>/`.

use serde::{Deserialize, Serialize};

/// Version stamped into every JSON artifact.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LognormalBlock {
    pub mu: f64,
    pub sigma: f64,
    /// KS distance of the fit.
    #[serde(rename = "D")]
    pub d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearBlock {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicBlock {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub mse: f64,
    /// Fitted degree; below three signals a rank-deficiency fallback.
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusteringBlock {
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "Cw")]
    pub c_w: f64,
    /// `ln(Cw)`, absent when `Cw` is zero.
    #[serde(rename = "logCw")]
    pub log_cw: Option<f64>,
    #[serde(rename = "Clw")]
    pub c_lw: f64,
    /// Nodes with degree below two: they contribute zero to each average
    /// but remain in the denominator.
    pub n_nodes_deg_lt2: u64,
}

/// Per-community analysis record. Fit blocks are omitted (`null`) when the
/// community is too small for them to be meaningful.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub community: String,
    pub n_tags: u64,
    pub n_questions: u64,
    pub m: u64,
    /// Base of every logarithm in this record.
    pub log_base: String,
    pub lognormal: Option<LognormalBlock>,
    pub linear: Option<LinearBlock>,
    pub cubic: Option<CubicBlock>,
    pub clustering: ClusteringBlock,
    /// Fractions of questions with 1, 2, 3, 4, 5, and more than five tags.
    pub tags_per_question: [f64; 6],
}

/// Correlation and mean squared error of one metric across communities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricComparison {
    pub correlation: f64,
    pub mse: f64,
    pub mean_data: f64,
    pub mean_model: f64,
    /// Communities contributing to this metric.
    pub n: u64,
}

/// Model-versus-data comparison across a community collection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub schema_version: String,
    pub communities: Vec<String>,
    pub slope: Option<MetricComparison>,
    pub clustering_c: MetricComparison,
    pub clustering_c_lw: MetricComparison,
    pub clustering_log_cw: Option<MetricComparison>,
    /// One comparison per tags-per-question bucket (1..=5, >5).
    pub tags_per_question: Vec<MetricComparison>,
    /// PCA explained-variance ratios of the cubic coefficient rows.
    pub pca_data: Option<Vec<f64>>,
    pub pca_model: Option<Vec<f64>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analysis_report_round_trips_and_uses_schema_keys() {
        let report = AnalysisReport {
            schema_version: SCHEMA_VERSION.into(),
            community: "coffee".into(),
            n_tags: 107,
            n_questions: 937,
            m: 2460,
            log_base: "e".into(),
            lognormal: Some(LognormalBlock {
                mu: 1.2,
                sigma: 1.4,
                d: 0.05,
            }),
            linear: Some(LinearBlock {
                slope: 1.8,
                intercept: 0.2,
                r2: 0.99,
            }),
            cubic: Some(CubicBlock {
                a0: 0.1,
                a1: 1.0,
                a2: -0.1,
                a3: 0.01,
                mse: 0.02,
                degree: 3,
            }),
            clustering: ClusteringBlock {
                c: 0.6,
                c_w: 0.02,
                log_cw: Some(0.02f64.ln()),
                c_lw: 0.3,
                n_nodes_deg_lt2: 1,
            },
            tags_per_question: [0.3, 0.3, 0.2, 0.1, 0.1, 0.0],
        };
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"D\":"));
        assert!(json.contains("\"logCw\":"));
        assert!(json.contains("\"Clw\":"));
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
