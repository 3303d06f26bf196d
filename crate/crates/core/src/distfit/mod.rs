//! Heavy-tailed distribution fitting, KS statistics, and Vuong-style
//! likelihood-ratio tests over tag frequency vectors.
//!
//! All fits use continuous likelihoods over the observed support with
//! `x_min` fixed at the sample minimum. The lognormal has a closed-form MLE;
//! the power law uses the continuous closed form
//! `alpha = 1 + n / sum ln(x_i / x_min)`; the truncated power law and
//! stretched exponential are maximized numerically with deterministic
//! initialization (power-law alpha, `lambda = 1/mean`, `beta = 1`),
//! parameter tolerance 1e-8, and a 10,000-iteration cap.

mod families;
mod optim;

use serde::Serialize;
use thiserror::Error;

use crate::numeric::{mean, normal_cdf, population_sd, sample_sd};
use families::{
    lognormal_cdf, lognormal_ln_pdf, powerlaw_cdf, powerlaw_ln_pdf, stretched_exp_cdf,
    stretched_exp_ln_pdf, tpl_cdf_grid, tpl_ln_norm, tpl_ln_pdf,
};
use optim::{golden_section_max, nelder_mead_max};

/// Fits are meaningless below this sample size.
pub const MIN_FIT_SAMPLE: usize = 10;

const PARAM_TOL: f64 = 1e-8;
const MAX_ITER: u32 = 10_000;

#[derive(Debug, Error)]
pub enum DistFitError {
    #[error("need at least {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },
    #[error("values must be positive and finite, got {value}")]
    NonPositiveValue { value: f64 },
    #[error("degenerate sample: all values identical")]
    DegenerateSample,
    #[error("{family} fit did not converge within {MAX_ITER} iterations (best loglik {best_loglik})")]
    NonConvergence {
        family: Family,
        best: FitParams,
        best_loglik: f64,
    },
    #[error("indistinguishable models: per-point likelihoods are identical")]
    IndistinguishableModels,
    #[error("expected a {expected} fit, got {got}")]
    WrongFamily { expected: Family, got: Family },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Lognormal,
    Powerlaw,
    TruncatedPowerlaw,
    StretchedExponential,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Family::Lognormal => "lognormal",
            Family::Powerlaw => "powerlaw",
            Family::TruncatedPowerlaw => "truncated_powerlaw",
            Family::StretchedExponential => "stretched_exponential",
        };
        f.write_str(name)
    }
}

/// Family-specific fitted parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum FitParams {
    Lognormal { mu: f64, sigma: f64 },
    Powerlaw { alpha: f64 },
    TruncatedPowerlaw { alpha: f64, lambda: f64 },
    StretchedExponential { lambda: f64, beta: f64 },
}

/// One fitted distribution: family, parameters, the support minimum the fit
/// conditions on, the KS distance, and the total log-likelihood.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionFit {
    pub family: Family,
    #[serde(flatten)]
    pub params: FitParams,
    pub x_min: f64,
    pub ks_statistic: f64,
    pub loglik: f64,
}

/// Vuong-style normalized log-likelihood ratio. `r` is the z-score
/// `(L_null - L_alt) / (s sqrt(n))`; positive values favor the null.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LikelihoodRatioResult {
    pub r: f64,
    pub p_value: f64,
}

/// Mean/standard-deviation summary of one fitted-parameter list, with a KS
/// distance against the fitted normal as a normality score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalFitSummary {
    pub mean: f64,
    pub sd: f64,
    pub ks_normal: f64,
}

/// Fitted lognormal parameters pooled across communities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamPopulation {
    pub mus: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub mu_summary: NormalFitSummary,
    pub sigma_summary: NormalFitSummary,
}

struct SampleStats {
    sorted: Vec<f64>,
    n: f64,
    x_min: f64,
    sum_ln: f64,
    mean: f64,
}

fn sample_stats(values: &[f64]) -> Result<SampleStats, DistFitError> {
    if values.len() < MIN_FIT_SAMPLE {
        return Err(DistFitError::TooFewValues {
            needed: MIN_FIT_SAMPLE,
            got: values.len(),
        });
    }
    for &v in values {
        if !v.is_finite() || v <= 0.0 {
            return Err(DistFitError::NonPositiveValue { value: v });
        }
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    Ok(SampleStats {
        n: sorted.len() as f64,
        x_min: sorted[0],
        sum_ln: sorted.iter().map(|v| v.ln()).sum(),
        mean: mean(&sorted),
        sorted,
    })
}

/// Two-sided KS distance between the empirical CDF of `sorted` (ascending)
/// and model CDF values evaluated at those points.
fn ks_from_model_cdf(sorted: &[f64], model: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start + 1;
        while end < sorted.len() && sorted[end] == sorted[start] {
            end += 1;
        }
        let lo = start as f64 / n;
        let hi = end as f64 / n;
        let f = model[start];
        d = d.max(hi - f).max(f - lo);
        start = end;
    }
    d
}

fn model_cdf_grid(fit: &DistributionFit, sorted: &[f64]) -> Vec<f64> {
    match fit.params {
        FitParams::Lognormal { mu, sigma } => {
            // Condition the unconditional lognormal on the observed support.
            let f0 = lognormal_cdf(mu, sigma, fit.x_min);
            let denom = (1.0 - f0).max(f64::MIN_POSITIVE);
            sorted
                .iter()
                .map(|&x| ((lognormal_cdf(mu, sigma, x) - f0) / denom).clamp(0.0, 1.0))
                .collect()
        }
        FitParams::Powerlaw { alpha } => sorted
            .iter()
            .map(|&x| powerlaw_cdf(alpha, fit.x_min, x))
            .collect(),
        FitParams::TruncatedPowerlaw { alpha, lambda } => {
            tpl_cdf_grid(alpha, lambda, fit.x_min, sorted)
        }
        FitParams::StretchedExponential { lambda, beta } => sorted
            .iter()
            .map(|&x| stretched_exp_cdf(lambda, beta, fit.x_min, x))
            .collect(),
    }
}

/// `D = sup |empirical CDF - model CDF|`, with the model conditioned on
/// `x >= x_min` and the empirical CDF checked on both sides of each step.
pub fn ks_statistic(values: &[f64], fit: &DistributionFit) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let model = model_cdf_grid(fit, &sorted);
    ks_from_model_cdf(&sorted, &model)
}

/// Lognormal MLE: mean and population standard deviation of the logs.
pub fn fit_lognormal(values: &[f64]) -> Result<DistributionFit, DistFitError> {
    let stats = sample_stats(values)?;
    let logs: Vec<f64> = stats.sorted.iter().map(|v| v.ln()).collect();
    let mu = mean(&logs);
    let sigma = population_sd(&logs);
    if sigma == 0.0 {
        return Err(DistFitError::DegenerateSample);
    }
    let loglik = stats
        .sorted
        .iter()
        .map(|&x| lognormal_ln_pdf(mu, sigma, x))
        .sum();
    let mut fit = DistributionFit {
        family: Family::Lognormal,
        params: FitParams::Lognormal { mu, sigma },
        x_min: stats.x_min,
        ks_statistic: 0.0,
        loglik,
    };
    fit.ks_statistic = ks_from_model_cdf(&stats.sorted, &model_cdf_grid(&fit, &stats.sorted));
    Ok(fit)
}

fn powerlaw_alpha(stats: &SampleStats) -> Result<f64, DistFitError> {
    let sum_ln_ratio = stats.sum_ln - stats.n * stats.x_min.ln();
    if sum_ln_ratio <= 0.0 {
        return Err(DistFitError::DegenerateSample);
    }
    Ok(1.0 + stats.n / sum_ln_ratio)
}

/// Continuous power-law MLE on `[x_min, inf)`.
pub fn fit_powerlaw(values: &[f64]) -> Result<DistributionFit, DistFitError> {
    let stats = sample_stats(values)?;
    let alpha = powerlaw_alpha(&stats)?;
    let sum_ln_ratio = stats.sum_ln - stats.n * stats.x_min.ln();
    let loglik = stats.n * (alpha - 1.0).ln() - stats.n * stats.x_min.ln() - alpha * sum_ln_ratio;
    let mut fit = DistributionFit {
        family: Family::Powerlaw,
        params: FitParams::Powerlaw { alpha },
        x_min: stats.x_min,
        ks_statistic: 0.0,
        loglik,
    };
    fit.ks_statistic = ks_from_model_cdf(&stats.sorted, &model_cdf_grid(&fit, &stats.sorted));
    Ok(fit)
}

// Optimizer domain walls; likelihoods outside are treated as -inf. Wide
// enough for any data this library meets, narrow enough to keep the
// normalization quadrature well-conditioned.
const ALPHA_RANGE: (f64, f64) = (-20.0, 50.0);
const LN_LAMBDA_RANGE: (f64, f64) = (-46.0, 46.0);
const LN_BETA_RANGE: (f64, f64) = (-7.0, 7.0);

/// `f(x) ~ x^-alpha e^(-lambda x)` on `[x_min, inf)`, maximized over
/// `(alpha, ln lambda)` by Nelder-Mead.
pub fn fit_truncated_powerlaw(values: &[f64]) -> Result<DistributionFit, DistFitError> {
    let stats = sample_stats(values)?;
    let alpha0 = powerlaw_alpha(&stats)?;
    let sum_x: f64 = stats.sorted.iter().sum();
    let x_min = stats.x_min;
    let n = stats.n;
    let sum_ln = stats.sum_ln;

    let objective = |p: &[f64]| -> f64 {
        let (alpha, ln_lambda) = (p[0], p[1]);
        if !(ALPHA_RANGE.0..=ALPHA_RANGE.1).contains(&alpha)
            || !(LN_LAMBDA_RANGE.0..=LN_LAMBDA_RANGE.1).contains(&ln_lambda)
        {
            return f64::NEG_INFINITY;
        }
        let lambda = ln_lambda.exp();
        let ll = -n * tpl_ln_norm(alpha, lambda, x_min) - alpha * sum_ln - lambda * sum_x;
        if ll.is_nan() {
            f64::NEG_INFINITY
        } else {
            ll
        }
    };

    let start = [alpha0, (1.0 / stats.mean).ln()];
    let out = nelder_mead_max(
        objective,
        &start,
        &[0.5, 1.0],
        |p| vec![p[0], p[1].exp()],
        PARAM_TOL,
        MAX_ITER,
    );
    let params = FitParams::TruncatedPowerlaw {
        alpha: out.params[0],
        lambda: out.params[1].exp(),
    };
    if !out.converged {
        return Err(DistFitError::NonConvergence {
            family: Family::TruncatedPowerlaw,
            best: params,
            best_loglik: out.value,
        });
    }
    let mut fit = DistributionFit {
        family: Family::TruncatedPowerlaw,
        params,
        x_min,
        ks_statistic: 0.0,
        loglik: out.value,
    };
    fit.ks_statistic = ks_from_model_cdf(&stats.sorted, &model_cdf_grid(&fit, &stats.sorted));
    Ok(fit)
}

/// `f(x) ~ x^(beta-1) e^(-lambda x^beta)` on `[x_min, inf)`, maximized over
/// `(ln lambda, ln beta)` by Nelder-Mead.
pub fn fit_stretched_exponential(values: &[f64]) -> Result<DistributionFit, DistFitError> {
    let stats = sample_stats(values)?;
    if stats.sorted[0] == *stats.sorted.last().unwrap() {
        return Err(DistFitError::DegenerateSample);
    }
    let x_min = stats.x_min;
    let n = stats.n;
    let sum_ln = stats.sum_ln;
    let sorted = stats.sorted.clone();

    let objective = |p: &[f64]| -> f64 {
        let (ln_lambda, ln_beta) = (p[0], p[1]);
        if !(LN_LAMBDA_RANGE.0..=LN_LAMBDA_RANGE.1).contains(&ln_lambda)
            || !(LN_BETA_RANGE.0..=LN_BETA_RANGE.1).contains(&ln_beta)
        {
            return f64::NEG_INFINITY;
        }
        let lambda = ln_lambda.exp();
        let beta = ln_beta.exp();
        let sum_x_beta: f64 = sorted.iter().map(|&x| x.powf(beta)).sum();
        let ll = n * (ln_beta + ln_lambda + lambda * x_min.powf(beta)) + (beta - 1.0) * sum_ln
            - lambda * sum_x_beta;
        if ll.is_finite() {
            ll
        } else {
            f64::NEG_INFINITY
        }
    };

    let start = [(1.0 / stats.mean).ln(), 0.0];
    let out = nelder_mead_max(
        objective,
        &start,
        &[1.0, 0.5],
        |p| vec![p[0].exp(), p[1].exp()],
        PARAM_TOL,
        MAX_ITER,
    );
    let params = FitParams::StretchedExponential {
        lambda: out.params[0].exp(),
        beta: out.params[1].exp(),
    };
    if !out.converged {
        return Err(DistFitError::NonConvergence {
            family: Family::StretchedExponential,
            best: params,
            best_loglik: out.value,
        });
    }
    let mut fit = DistributionFit {
        family: Family::StretchedExponential,
        params,
        x_min,
        ks_statistic: 0.0,
        loglik: out.value,
    };
    fit.ks_statistic = ks_from_model_cdf(&stats.sorted, &model_cdf_grid(&fit, &stats.sorted));
    Ok(fit)
}

/// Per-point log-densities under a fit, using each family's own support
/// convention so they sum to the fit's stored `loglik`.
fn point_ln_densities(fit: &DistributionFit, values: &[f64]) -> Vec<f64> {
    match fit.params {
        FitParams::Lognormal { mu, sigma } => values
            .iter()
            .map(|&x| lognormal_ln_pdf(mu, sigma, x))
            .collect(),
        FitParams::Powerlaw { alpha } => values
            .iter()
            .map(|&x| powerlaw_ln_pdf(alpha, fit.x_min, x))
            .collect(),
        FitParams::TruncatedPowerlaw { alpha, lambda } => {
            let ln_norm = tpl_ln_norm(alpha, lambda, fit.x_min);
            values
                .iter()
                .map(|&x| tpl_ln_pdf(alpha, lambda, ln_norm, x))
                .collect()
        }
        FitParams::StretchedExponential { lambda, beta } => values
            .iter()
            .map(|&x| stretched_exp_ln_pdf(lambda, beta, fit.x_min, x))
            .collect(),
    }
}

/// Vuong likelihood-ratio test of `null_fit` against `alt_fit` on the same
/// data. `r > 0` favors the null; `p = 2 Phi(-|r|)`.
pub fn likelihood_ratio_test(
    values: &[f64],
    null_fit: &DistributionFit,
    alt_fit: &DistributionFit,
) -> Result<LikelihoodRatioResult, DistFitError> {
    if values.len() < 2 {
        return Err(DistFitError::TooFewValues {
            needed: 2,
            got: values.len(),
        });
    }
    let null_ll = point_ln_densities(null_fit, values);
    let alt_ll = point_ln_densities(alt_fit, values);
    let diffs: Vec<f64> = null_ll
        .iter()
        .zip(&alt_ll)
        .map(|(a, b)| a - b)
        .collect();
    let s = sample_sd(&diffs);
    if s == 0.0 {
        return Err(DistFitError::IndistinguishableModels);
    }
    let total: f64 = diffs.iter().sum();
    let r = total / (s * (values.len() as f64).sqrt());
    Ok(LikelihoodRatioResult {
        r,
        p_value: 2.0 * normal_cdf(-r.abs()),
    })
}

fn normal_summary(values: &[f64]) -> NormalFitSummary {
    let mu = mean(values);
    let sd = sample_sd(values);
    let ks_normal = if sd == 0.0 {
        // Point mass against its own normal limit: the CDF half-steps at mu.
        0.5
    } else {
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let model: Vec<f64> = sorted.iter().map(|&x| normal_cdf((x - mu) / sd)).collect();
        ks_from_model_cdf(&sorted, &model)
    };
    NormalFitSummary {
        mean: mu,
        sd,
        ks_normal,
    }
}

/// Pool fitted lognormal parameters across communities and summarize each
/// parameter's distribution with a fitted normal.
pub fn param_population(fits: &[DistributionFit]) -> Result<ParamPopulation, DistFitError> {
    if fits.len() < 2 {
        return Err(DistFitError::TooFewValues {
            needed: 2,
            got: fits.len(),
        });
    }
    let mut mus = Vec::with_capacity(fits.len());
    let mut sigmas = Vec::with_capacity(fits.len());
    for fit in fits {
        match fit.params {
            FitParams::Lognormal { mu, sigma } => {
                mus.push(mu);
                sigmas.push(sigma);
            }
            _ => {
                return Err(DistFitError::WrongFamily {
                    expected: Family::Lognormal,
                    got: fit.family,
                })
            }
        }
    }
    Ok(ParamPopulation {
        mu_summary: normal_summary(&mus),
        sigma_summary: normal_summary(&sigmas),
        mus,
        sigmas,
    })
}

/// Numerically maximize the power-law likelihood over alpha. Used to verify
/// the closed-form MLE; exposed for the test suites.
pub fn powerlaw_alpha_numeric(values: &[f64]) -> Result<f64, DistFitError> {
    let stats = sample_stats(values)?;
    let sum_ln_ratio = stats.sum_ln - stats.n * stats.x_min.ln();
    if sum_ln_ratio <= 0.0 {
        return Err(DistFitError::DegenerateSample);
    }
    let n = stats.n;
    let x_min = stats.x_min;
    let objective = |alpha: f64| {
        if alpha <= 1.0 {
            return f64::NEG_INFINITY;
        }
        n * (alpha - 1.0).ln() - n * x_min.ln() - alpha * sum_ln_ratio
    };
    let out = golden_section_max(objective, 1.0 + 1e-12, 64.0, 1e-10, MAX_ITER);
    Ok(out.params[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn repeat(pattern: &[f64], times: usize) -> Vec<f64> {
        pattern
            .iter()
            .copied()
            .cycle()
            .take(pattern.len() * times)
            .collect()
    }

    #[test]
    fn lognormal_mle_balanced_logs() {
        // ln-values alternate {0, 2}: mean 1, population sd 1.
        let values = repeat(&[1.0, std::f64::consts::E.powi(2)], 6);
        let fit = fit_lognormal(&values).unwrap();
        match fit.params {
            FitParams::Lognormal { mu, sigma } => {
                assert_abs_diff_eq!(mu, 1.0, epsilon = 1e-12);
                assert_abs_diff_eq!(sigma, 1.0, epsilon = 1e-12);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn lognormal_rejects_degenerate_and_short_samples() {
        let e = std::f64::consts::E;
        // four identical values: too few, and degenerate besides
        assert!(fit_lognormal(&[e, e, e, e]).is_err());
        let twelve = vec![e; 12];
        assert!(matches!(
            fit_lognormal(&twelve),
            Err(DistFitError::DegenerateSample)
        ));
        assert!(matches!(
            fit_lognormal(&repeat(&[1.0, 2.0], 4)),
            Err(DistFitError::TooFewValues { .. })
        ));
    }

    #[test]
    fn lognormal_rejects_nonpositive_values() {
        let mut values = repeat(&[1.0, 2.0, 3.0, 4.0], 3);
        values[3] = 0.0;
        assert!(matches!(
            fit_lognormal(&values),
            Err(DistFitError::NonPositiveValue { .. })
        ));
    }

    #[test]
    fn powerlaw_closed_form_on_known_sums() {
        // x = x_min e^k patterns give sum ln(x/x_min) exactly.
        let values: Vec<f64> = (0..12).map(|i| (0.25 * i as f64).exp()).collect();
        let fit = fit_powerlaw(&values).unwrap();
        let sum: f64 = (0..12).map(|i| 0.25 * i as f64).sum();
        match fit.params {
            FitParams::Powerlaw { alpha } => {
                assert_abs_diff_eq!(alpha, 1.0 + 12.0 / sum, epsilon = 1e-12);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn ks_degenerate_sample_is_at_least_half() {
        let fit = DistributionFit {
            family: Family::Lognormal,
            params: FitParams::Lognormal { mu: 0.0, sigma: 1.0 },
            x_min: 0.1,
            ks_statistic: 0.0,
            loglik: 0.0,
        };
        let values = vec![2.5; 40];
        assert!(ks_statistic(&values, &fit) >= 0.5);
    }

    #[test]
    fn ks_is_within_unit_interval() {
        let values: Vec<f64> = (1..=50).map(|i| i as f64).collect();
        let fit = fit_lognormal(&values).unwrap();
        assert!((0.0..=1.0).contains(&fit.ks_statistic));
    }

    #[test]
    fn lr_test_of_model_against_itself_errors() {
        let values: Vec<f64> = (1..=30).map(|i| 1.0 + (i as f64).sqrt()).collect();
        let fit = fit_lognormal(&values).unwrap();
        assert!(matches!(
            likelihood_ratio_test(&values, &fit, &fit),
            Err(DistFitError::IndistinguishableModels)
        ));
    }

    #[test]
    fn lr_test_antisymmetry() {
        let values: Vec<f64> = (1..=60).map(|i| 1.0 + (i as f64).powf(1.3)).collect();
        let null = fit_lognormal(&values).unwrap();
        let alt = fit_powerlaw(&values).unwrap();
        let ab = likelihood_ratio_test(&values, &null, &alt).unwrap();
        let ba = likelihood_ratio_test(&values, &alt, &null).unwrap();
        assert_abs_diff_eq!(ab.r, -ba.r, epsilon = 1e-12);
        assert_abs_diff_eq!(ab.p_value, ba.p_value, epsilon = 1e-12);
    }

    #[test]
    fn param_population_two_point_arithmetic() {
        let mk = |mu: f64, sigma: f64| DistributionFit {
            family: Family::Lognormal,
            params: FitParams::Lognormal { mu, sigma },
            x_min: 1.0,
            ks_statistic: 0.0,
            loglik: 0.0,
        };
        let pop = param_population(&[mk(1.0, 1.0), mk(3.0, 2.0)]).unwrap();
        assert_abs_diff_eq!(pop.mu_summary.mean, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pop.mu_summary.sd, 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(pop.sigma_summary.mean, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn param_population_rejects_wrong_family() {
        let values: Vec<f64> = (1..=30).map(|i| i as f64).collect();
        let pl = fit_powerlaw(&values).unwrap();
        let ln = fit_lognormal(&values).unwrap();
        assert!(matches!(
            param_population(&[ln, pl]),
            Err(DistFitError::WrongFamily { .. })
        ));
    }

    #[test]
    fn truncated_powerlaw_nests_powerlaw_in_small_lambda_limit() {
        // On data without an exponential cutoff the TPL loglik at tiny
        // lambda approaches the pure power-law loglik.
        let values: Vec<f64> = (0..200)
            .map(|i| (1.0 - (i as f64 + 0.5) / 200.0).powf(-1.0 / 1.5))
            .collect();
        let pl = fit_powerlaw(&values).unwrap();
        let n = values.len() as f64;
        let sum_ln: f64 = values.iter().map(|v| v.ln()).sum();
        let sum_x: f64 = values.iter().sum();
        let FitParams::Powerlaw { alpha } = pl.params else {
            unreachable!()
        };
        let lambda = 1e-12;
        let tpl_ll = -n * families::tpl_ln_norm(alpha, lambda, pl.x_min) - alpha * sum_ln
            - lambda * sum_x;
        assert_abs_diff_eq!(tpl_ll, pl.loglik, epsilon = 1e-3 * pl.loglik.abs());
    }

    #[test]
    fn loglik_matches_point_density_sum() {
        let values: Vec<f64> = (1..=40).map(|i| (i as f64).powf(1.2)).collect();
        for fit in [
            fit_lognormal(&values).unwrap(),
            fit_powerlaw(&values).unwrap(),
            fit_stretched_exponential(&values).unwrap(),
            fit_truncated_powerlaw(&values).unwrap(),
        ] {
            let total: f64 = point_ln_densities(&fit, &values).iter().sum();
            assert_abs_diff_eq!(total, fit.loglik, epsilon = 1e-6 * fit.loglik.abs().max(1.0));
        }
    }
}
