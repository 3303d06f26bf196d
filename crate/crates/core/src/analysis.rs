//! The statistical layer connecting generated graphs to data: co-tag
//! regressions, closed-form expectations under uniform assignment, cubic
//! log-log fits, and PCA over fitted coefficients.

use nalgebra::{DMatrix, DVector, SMatrix, SymmetricEigen};
use serde::Serialize;
use thiserror::Error;

use crate::cotag::{self, CotagError};
use crate::distfit::{self, FitParams};
use crate::generator::{self, GeneratorError};
use crate::graph::{BipartiteTagGraph, GraphError};
use crate::numeric::ln_hypergeom_zero;
use crate::report::{
    AnalysisReport, ClusteringBlock, ComparisonReport, CubicBlock, LinearBlock, LognormalBlock,
    MetricComparison, SCHEMA_VERSION,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("input lengths differ: {left} vs {right}")]
    MismatchedLengths { left: usize, right: usize },
    #[error("zero variance in the predictor")]
    ZeroVariance,
    #[error("least-squares solve failed: {0}")]
    LeastSquares(&'static str),
    #[error("community lists differ: {missing_in_model:?} missing in model, {missing_in_data:?} missing in data")]
    MismatchedCommunities {
        missing_in_model: Vec<String>,
        missing_in_data: Vec<String>,
    },
    #[error(transparent)]
    Cotag(#[from] CotagError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Ordinary least squares `y = slope x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares fit of `ln(d+1)` on powers of `ln(x+1)`.
///
/// `degree` is normally 3; with fewer than four distinct predictor values
/// the fit falls back to the highest full-rank degree and higher
/// coefficients stay zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicLogFit {
    pub coeffs: [f64; 4],
    pub mse: f64,
    pub degree: usize,
}

/// Explained-variance ratios of mean-centered coefficient rows, descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PcaSummary {
    pub explained_variance_ratios: Vec<f64>,
}

/// OLS of weighted co-tag counts on tag frequencies.
pub fn linear_cotag_regression(x: &[f64], k: &[f64]) -> Result<LinearFit, AnalysisError> {
    if x.len() != k.len() {
        return Err(AnalysisError::MismatchedLengths {
            left: x.len(),
            right: k.len(),
        });
    }
    if x.len() < 3 {
        return Err(AnalysisError::TooFewPoints {
            needed: 3,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_k = k.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mean_x) * (v - mean_x)).sum();
    if sxx == 0.0 {
        return Err(AnalysisError::ZeroVariance);
    }
    let sxk: f64 = x
        .iter()
        .zip(k)
        .map(|(xv, kv)| (xv - mean_x) * (kv - mean_k))
        .sum();
    let slope = sxk / sxx;
    let intercept = mean_k - slope * mean_x;
    let ss_res: f64 = x
        .iter()
        .zip(k)
        .map(|(xv, kv)| {
            let r = kv - (slope * xv + intercept);
            r * r
        })
        .sum();
    let ss_tot: f64 = k.iter().map(|v| (v - mean_k) * (v - mean_k)).sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// `E[k_t] = (m - x_t) x_t / n_hat` under independent uniform assignment,
/// with `m` the realized total of `freqs`.
pub fn expected_weighted_cotags(freqs: &[u64], t: usize, n_hat: u64) -> f64 {
    let m: u64 = freqs.iter().sum();
    let x_t = freqs[t];
    (m - x_t) as f64 * x_t as f64 / n_hat as f64
}

/// `E[d_t] = sum_{s != t} [1 - C(n_hat - x_s, x_t) / C(n_hat, x_t)]`,
/// the expected number of unique co-tags. The binomial ratio is evaluated
/// as a product in log space, which stays accurate for question counts up
/// to the millions; terms where `x_s + x_t > n_hat` are 1 by pigeonhole.
pub fn expected_unique_cotags(freqs: &[u64], t: usize, n_hat: u64) -> f64 {
    let x_t = freqs[t];
    if x_t == 0 {
        return 0.0;
    }
    freqs
        .iter()
        .enumerate()
        .filter(|&(s, _)| s != t)
        .map(|(_, &x_s)| {
            if x_s == 0 {
                0.0
            } else if x_s + x_t > n_hat {
                1.0
            } else {
                let p_disjoint = ln_hypergeom_zero(n_hat, x_s, x_t).exp();
                (1.0 - p_disjoint).clamp(0.0, 1.0)
            }
        })
        .sum()
}

/// Fit `ln(d+1) = sum_i a_i ln(x+1)^i` (natural log, degree up to three) by
/// SVD least squares; the Vandermonde design is ill-conditioned, so normal
/// equations are avoided.
pub fn cubic_log_fit(x: &[f64], d: &[f64]) -> Result<CubicLogFit, AnalysisError> {
    if x.len() != d.len() {
        return Err(AnalysisError::MismatchedLengths {
            left: x.len(),
            right: d.len(),
        });
    }
    if x.len() < 5 {
        return Err(AnalysisError::TooFewPoints {
            needed: 5,
            got: x.len(),
        });
    }
    let l: Vec<f64> = x.iter().map(|v| (v + 1.0).ln()).collect();
    let y: Vec<f64> = d.iter().map(|v| (v + 1.0).ln()).collect();

    let mut distinct = l.clone();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    distinct.dedup();
    let degree = distinct.len().saturating_sub(1).min(3);

    let design = DMatrix::from_fn(l.len(), degree + 1, |i, j| l[i].powi(j as i32));
    let rhs = DVector::from_column_slice(&y);
    let solution = design
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-13)
        .map_err(AnalysisError::LeastSquares)?;

    let residual = design * &solution - rhs;
    let mse = residual.norm_squared() / l.len() as f64;
    let mut coeffs = [0.0; 4];
    for j in 0..=degree {
        coeffs[j] = solution[j];
    }
    Ok(CubicLogFit { coeffs, mse, degree })
}

/// Explained-variance ratios of the sample covariance of mean-centered
/// rows (no variance scaling), descending.
pub fn pca_explained_variance(rows: &[[f64; 4]]) -> Result<PcaSummary, AnalysisError> {
    if rows.len() < 2 {
        return Err(AnalysisError::TooFewPoints {
            needed: 2,
            got: rows.len(),
        });
    }
    let n = rows.len() as f64;
    let mut means = [0.0f64; 4];
    for row in rows {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v / n;
        }
    }
    let mut cov = SMatrix::<f64, 4, 4>::zeros();
    for row in rows {
        for i in 0..4 {
            for j in 0..4 {
                cov[(i, j)] += (row[i] - means[i]) * (row[j] - means[j]) / (n - 1.0);
            }
        }
    }
    if cov.trace() <= 0.0 {
        return Err(AnalysisError::ZeroVariance);
    }
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(cov)
        .eigenvalues
        .iter()
        .map(|&v| v.max(0.0))
        .collect();
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    let total: f64 = eigenvalues.iter().sum();
    Ok(PcaSummary {
        explained_variance_ratios: eigenvalues.iter().map(|&v| v / total).collect(),
    })
}

/// Full single-community analysis: frequency fit, projection, regressions,
/// clustering, and the tags-per-question distribution. Fit blocks that need
/// more data than the community offers are omitted rather than fatal.
pub fn analyze_graph(
    community: &str,
    graph: &BipartiteTagGraph,
) -> Result<AnalysisReport, AnalysisError> {
    let freqs = graph.frequencies()?;
    let x = freqs.as_f64();

    let lognormal = distfit::fit_lognormal(&x).ok().map(|fit| {
        let FitParams::Lognormal { mu, sigma } = fit.params else {
            unreachable!("fit_lognormal returns lognormal params")
        };
        LognormalBlock {
            mu,
            sigma,
            d: fit.ks_statistic,
        }
    });

    let projection = cotag::project(graph);
    let weighted: Vec<f64> = projection.weighted_degrees().iter().map(|&v| v as f64).collect();
    let unique: Vec<f64> = projection.unweighted_degrees().iter().map(|&v| v as f64).collect();

    let linear = linear_cotag_regression(&x, &weighted).ok().map(|fit| LinearBlock {
        slope: fit.slope,
        intercept: fit.intercept,
        r2: fit.r_squared,
    });
    let cubic = cubic_log_fit(&x, &unique).ok().map(|fit| CubicBlock {
        a0: fit.coeffs[0],
        a1: fit.coeffs[1],
        a2: fit.coeffs[2],
        a3: fit.coeffs[3],
        mse: fit.mse,
        degree: fit.degree,
    });

    let clustering = projection.clustering_report()?;
    let tags_per_question = generator::tags_per_question_distribution(graph)?;

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION.to_string(),
        community: community.to_string(),
        n_tags: graph.n_tags() as u64,
        n_questions: graph.n_questions(),
        m: graph.total_occurrences(),
        log_base: "e".to_string(),
        lognormal,
        linear,
        cubic,
        clustering: ClusteringBlock {
            c: clustering.c_unweighted,
            c_w: clustering.c_weighted,
            log_cw: clustering.ln_c_weighted,
            c_lw: clustering.c_logweighted,
            n_nodes_deg_lt2: clustering.n_nodes_deg_lt2,
        },
        tags_per_question,
    })
}

fn compare_metric(data: &[f64], model: &[f64]) -> MetricComparison {
    debug_assert_eq!(data.len(), model.len());
    let n = data.len() as f64;
    let mse = data
        .iter()
        .zip(model)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n;
    let mean_data = data.iter().sum::<f64>() / n;
    let mean_model = model.iter().sum::<f64>() / n;
    let correlation = if mse == 0.0 {
        1.0
    } else {
        let sd = |v: &[f64], mu: f64| v.iter().map(|a| (a - mu) * (a - mu)).sum::<f64>().sqrt();
        let (sda, sdb) = (sd(data, mean_data), sd(model, mean_model));
        if sda == 0.0 || sdb == 0.0 {
            0.0
        } else {
            data.iter()
                .zip(model)
                .map(|(a, b)| (a - mean_data) * (b - mean_model))
                .sum::<f64>()
                / (sda * sdb)
        }
    };
    MetricComparison {
        correlation,
        mse,
        mean_data,
        mean_model,
        n: data.len() as u64,
    }
}

/// Per-metric correlation and mean squared error between per-community
/// analyses of empirical data and of model samples, matched by community
/// name. Also reports PCA explained-variance ratios of each side's cubic
/// coefficient rows.
pub fn compare_model_to_data(
    data: &[AnalysisReport],
    model: &[AnalysisReport],
) -> Result<ComparisonReport, AnalysisError> {
    let mut data_sorted: Vec<&AnalysisReport> = data.iter().collect();
    let mut model_sorted: Vec<&AnalysisReport> = model.iter().collect();
    data_sorted.sort_by(|a, b| a.community.cmp(&b.community));
    model_sorted.sort_by(|a, b| a.community.cmp(&b.community));

    let data_names: Vec<&str> = data_sorted.iter().map(|r| r.community.as_str()).collect();
    let model_names: Vec<&str> = model_sorted.iter().map(|r| r.community.as_str()).collect();
    if data_names != model_names {
        return Err(AnalysisError::MismatchedCommunities {
            missing_in_model: data_names
                .iter()
                .filter(|n| !model_names.contains(n))
                .map(|n| n.to_string())
                .collect(),
            missing_in_data: model_names
                .iter()
                .filter(|n| !data_names.contains(n))
                .map(|n| n.to_string())
                .collect(),
        });
    }

    let paired = |select: &dyn Fn(&AnalysisReport) -> Option<f64>| -> Option<MetricComparison> {
        let pairs: (Vec<f64>, Vec<f64>) = data_sorted
            .iter()
            .zip(&model_sorted)
            .filter_map(|(d, m)| select(d).zip(select(m)))
            .unzip();
        (!pairs.0.is_empty()).then(|| compare_metric(&pairs.0, &pairs.1))
    };

    let slope = paired(&|r| r.linear.as_ref().map(|l| l.slope));
    let clustering_c = paired(&|r| Some(r.clustering.c)).expect("clustering always present");
    let clustering_c_lw = paired(&|r| Some(r.clustering.c_lw)).expect("clustering always present");
    let clustering_log_cw = paired(&|r| r.clustering.log_cw);
    let tags_per_question: Vec<MetricComparison> = (0..6)
        .map(|b| paired(&move |r| Some(r.tags_per_question[b])).expect("fractions always present"))
        .collect();

    let coeff_rows = |reports: &[&AnalysisReport]| -> Vec<[f64; 4]> {
        reports
            .iter()
            .filter_map(|r| r.cubic.as_ref().map(|c| [c.a0, c.a1, c.a2, c.a3]))
            .collect()
    };
    let pca_data = pca_explained_variance(&coeff_rows(&data_sorted))
        .ok()
        .map(|p| p.explained_variance_ratios);
    let pca_model = pca_explained_variance(&coeff_rows(&model_sorted))
        .ok()
        .map(|p| p.explained_variance_ratios);

    Ok(ComparisonReport {
        schema_version: SCHEMA_VERSION.to_string(),
        communities: data_names.iter().map(|n| n.to_string()).collect(),
        slope,
        clustering_c,
        clustering_c_lw,
        clustering_log_cw,
        tags_per_question,
        pca_data,
        pca_model,
    })
}
