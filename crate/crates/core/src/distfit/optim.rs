//! Deterministic derivative-free maximizers used by the distribution fits.

/// Outcome of a bounded search: parameters, objective value, iterations used.
#[derive(Debug, Clone)]
pub(crate) struct OptimOutcome {
    pub params: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub(crate) fn golden_section_max(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: u32,
) -> OptimOutcome {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut converged = false;
    for _ in 0..max_iter {
        if (b - a).abs() < tol {
            converged = true;
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    OptimOutcome {
        value: f(x),
        params: vec![x],
        converged,
    }
}

/// Nelder-Mead maximization. `natural` maps optimizer coordinates to the
/// model's natural parameters; convergence is declared when the simplex
/// spread in natural coordinates drops below `tol` in every component.
pub(crate) fn nelder_mead_max(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    steps: &[f64],
    natural: impl Fn(&[f64]) -> Vec<f64>,
    tol: f64,
    max_iter: u32,
) -> OptimOutcome {
    let dim = start.len();
    assert_eq!(steps.len(), dim);

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..dim {
        let mut v = start.to_vec();
        v[i] += steps[i];
        let fv = f(&v);
        simplex.push((v, fv));
    }

    let spread = |simplex: &[(Vec<f64>, f64)]| -> f64 {
        let best = natural(&simplex[0].0);
        simplex[1..]
            .iter()
            .map(|(v, _)| {
                natural(v)
                    .iter()
                    .zip(&best)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    };

    let mut converged = false;
    for _ in 0..max_iter {
        // descending by value: best first
        simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
        if spread(&simplex) < tol {
            converged = true;
            break;
        }

        let worst = simplex[dim].0.clone();
        let f_worst = simplex[dim].1;
        let f_best = simplex[0].1;
        let f_second_worst = simplex[dim - 1].1;

        let mut centroid = vec![0.0; dim];
        for (v, _) in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }
        let point_at = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = point_at(1.0);
        let f_reflected = f(&reflected);
        if f_reflected > f_best {
            let expanded = point_at(2.0);
            let f_expanded = f(&expanded);
            if f_expanded > f_reflected {
                simplex[dim] = (expanded, f_expanded);
            } else {
                simplex[dim] = (reflected, f_reflected);
            }
        } else if f_reflected > f_second_worst {
            simplex[dim] = (reflected, f_reflected);
        } else {
            let contracted = if f_reflected > f_worst {
                point_at(0.5)
            } else {
                point_at(-0.5)
            };
            let f_contracted = f(&contracted);
            if f_contracted > f_worst.max(f_reflected) {
                simplex[dim] = (contracted, f_contracted);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let v: Vec<f64> = entry
                        .0
                        .iter()
                        .zip(&best)
                        .map(|(x, b)| b + 0.5 * (x - b))
                        .collect();
                    let fv = f(&v);
                    *entry = (v, fv);
                }
            }
        }
    }

    simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    OptimOutcome {
        params: simplex[0].0.clone(),
        value: simplex[0].1,
        converged,
    }
}
