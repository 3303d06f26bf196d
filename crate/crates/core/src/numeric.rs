//! Small numeric helpers shared across the fitting and analysis modules.

/// Standard normal CDF via the complementary error function (libm's erfc is
/// accurate to a unit in the last place, comfortably inside the 1e-12
/// absolute budget the fits rely on).
pub(crate) fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// `ln[ C(n - a, b) / C(n, b) ]`, the log-probability that a uniform
/// `b`-subset of `n` slots avoids a fixed `a`-subset.
///
/// Computed as `sum_{i<b} ln(1 - a/(n - i))` over the smaller of the two
/// set sizes, which stays accurate where log-gamma differences of
/// near-equal magnitudes would cancel away most of their precision.
/// Returns `-inf` when avoidance is impossible (`a + b > n`).
pub(crate) fn ln_hypergeom_zero(n: u64, a: u64, b: u64) -> f64 {
    if a + b > n {
        return f64::NEG_INFINITY;
    }
    if a == 0 || b == 0 {
        return 0.0;
    }
    let (a, b) = (a.max(b), a.min(b));
    let mut ln_p = 0.0;
    for i in 0..b {
        ln_p += libm::log1p(-(a as f64) / ((n - i) as f64));
        if ln_p < -45.0 {
            // p is already below 3e-20; further terms only shrink it
            return ln_p;
        }
    }
    ln_p
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population standard deviation (divide by n).
pub(crate) fn population_sd(values: &[f64]) -> f64 {
    let mu = mean(values);
    (values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / values.len() as f64).sqrt()
}

/// Sample standard deviation (divide by n - 1).
pub(crate) fn sample_sd(values: &[f64]) -> f64 {
    let mu = mean(values);
    (values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance.
pub(crate) fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }

    if a >= b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}
