//! Log-densities and CDFs of the four heavy-tailed families.
//!
//! The power law, truncated power law, and stretched exponential are defined
//! directly on the observed support `[x_min, inf)`, so their CDFs vanish at
//! `x_min`. The lognormal is fit unconditionally (its MLE is the mean and
//! population standard deviation of the logs); where a CDF restricted to the
//! support is needed (the KS statistic) it is conditioned explicitly.

use crate::numeric::{adaptive_simpson, normal_cdf};

pub(crate) fn lognormal_ln_pdf(mu: f64, sigma: f64, x: f64) -> f64 {
    let z = (x.ln() - mu) / sigma;
    -x.ln() - sigma.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln() - 0.5 * z * z
}

pub(crate) fn lognormal_cdf(mu: f64, sigma: f64, x: f64) -> f64 {
    normal_cdf((x.ln() - mu) / sigma)
}

/// Pareto density on `[x_min, inf)`: `f(x) = (a-1)/x_min (x/x_min)^-a`.
pub(crate) fn powerlaw_ln_pdf(alpha: f64, x_min: f64, x: f64) -> f64 {
    (alpha - 1.0).ln() - x_min.ln() - alpha * (x / x_min).ln()
}

pub(crate) fn powerlaw_cdf(alpha: f64, x_min: f64, x: f64) -> f64 {
    1.0 - (x / x_min).powf(1.0 - alpha)
}

/// `f(x) = beta lambda x^(beta-1) exp(lambda (x_min^beta - x^beta))`.
pub(crate) fn stretched_exp_ln_pdf(lambda: f64, beta: f64, x_min: f64, x: f64) -> f64 {
    beta.ln() + lambda.ln() + (beta - 1.0) * x.ln() + lambda * (x_min.powf(beta) - x.powf(beta))
}

pub(crate) fn stretched_exp_cdf(lambda: f64, beta: f64, x_min: f64, x: f64) -> f64 {
    -f64::exp_m1(lambda * (x_min.powf(beta) - x.powf(beta)))
}

/// `ln integral_{x_min}^inf x^-alpha e^(-lambda x) dx`, the truncated
/// power law's normalizing constant. `lambda` must be positive.
///
/// Substituting `x = x_min e^u` turns the integrand into
/// `exp((1-alpha) u - c e^u)` with `c = lambda x_min`, which decays
/// doubly-exponentially; that form is integrated adaptively after shifting
/// by its maximum so the quadrature works on an O(1) integrand.
pub(crate) fn tpl_ln_norm(alpha: f64, lambda: f64, x_min: f64) -> f64 {
    debug_assert!(lambda > 0.0 && x_min > 0.0);
    let ln_c = lambda.ln() + x_min.ln();
    if ln_c > 700.0 {
        return f64::NEG_INFINITY; // e^-c underflows any representable scale
    }
    let h = |u: f64| {
        let t = ln_c + u;
        let e = if t > 709.0 { f64::INFINITY } else { t.exp() };
        (1.0 - alpha) * u - e
    };
    // Maximum of h: at ln((1-alpha)/c) when alpha < 1 pushes the peak
    // inside the domain, otherwise at the left endpoint.
    let u_peak = if alpha < 1.0 {
        ((1.0 - alpha).ln() - ln_c).max(0.0)
    } else {
        0.0
    };
    let h_max = h(u_peak);
    let mut upper = u_peak + 1.0;
    while h(upper) - h_max > -60.0 {
        upper = u_peak + 2.0 * (upper - u_peak);
    }
    let scaled = |u: f64| (h(u) - h_max).exp();
    let j = adaptive_simpson(&scaled, 0.0, upper, 1e-15 * upper);
    h_max + j.ln() + (1.0 - alpha) * x_min.ln()
}

/// Truncated power-law log-density given a precomputed `tpl_ln_norm`.
pub(crate) fn tpl_ln_pdf(alpha: f64, lambda: f64, ln_norm: f64, x: f64) -> f64 {
    -ln_norm - alpha * x.ln() - lambda * x
}

/// Truncated power-law CDF evaluated on an ascending grid, by accumulating
/// segment integrals of the unnormalized density and normalizing against
/// the segments plus the analytic tail beyond the last point.
pub(crate) fn tpl_cdf_grid(alpha: f64, lambda: f64, x_min: f64, sorted: &[f64]) -> Vec<f64> {
    if sorted.is_empty() {
        return Vec::new();
    }
    // Unnormalized density scaled by its value at the mode to avoid
    // under/overflow; the scale cancels in the final ratio.
    let ln_g = |x: f64| -alpha * x.ln() - lambda * x;
    let x_mode = if alpha < 0.0 {
        (-alpha / lambda).max(x_min)
    } else {
        x_min
    };
    let ln_scale = ln_g(x_mode);
    let g = |x: f64| (ln_g(x) - ln_scale).exp();

    let total_rough = (tpl_ln_norm(alpha, lambda, x_min) - ln_scale).exp();
    let tol = (total_rough * 1e-12).max(f64::MIN_POSITIVE);

    let mut cumulative = Vec::with_capacity(sorted.len());
    let mut acc = 0.0;
    let mut prev = x_min;
    for &x in sorted {
        if x > prev {
            acc += adaptive_simpson(&g, prev, x, tol);
            prev = x;
        }
        cumulative.push(acc);
    }
    let tail = (tpl_ln_norm(alpha, lambda, prev) - ln_scale).exp();
    let total = acc + tail;
    cumulative.iter().map(|&c| c / total).collect()
}
