//! Random bipartite tag-question graphs.
//!
//! The model draws lognormal tag occurrence counts, rescales them so their
//! pre-rounding sum hits the target `m`, inflates the question count so that
//! after uniform assignment the expected number of non-empty questions
//! matches the requested `N_Q` (the fixed point of
//! `N(1 - exp(-m/N)) = N_Q`), assigns each tag to a uniform random subset of
//! question slots without replacement, and finally discards questions that
//! received no tags.
//!
//! All randomness flows from a single seeded ChaCha12 stream, so a config
//! (including its seed) pins the output graph bit for bit on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, LogNormal};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{BipartiteTagGraph, GraphError, TagFrequencyVector};

/// The seeded RNG driving generation.
pub type GeneratorRng = ChaCha12Rng;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error(
        "no solution: every question needs >= 1 tag and some need >= 2 \
         (requires n_questions < m, got n_questions = {n_questions}, m = {m})"
    )]
    NoSolution { m: u64, n_questions: u64 },
    #[error("tag {tag} has frequency {frequency} > corrected question count {n_hat}")]
    FrequencyExceedsQuestions { tag: u32, frequency: u64, n_hat: u64 },
    #[error("corrected question count {n_hat} exceeds the supported 2^32 - 1")]
    TooManyQuestions { n_hat: u64 },
    #[error("graph has no tagged questions")]
    EmptyGraph,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Inputs of one generation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorConfig {
    pub n_tags: u64,
    pub n_questions: u64,
    /// Target total number of tag occurrences.
    pub m: u64,
    pub mu: f64,
    pub sigma: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), GeneratorError> {
        if self.n_tags == 0 {
            return Err(GeneratorError::InvalidConfig("n_tags must be >= 1".into()));
        }
        if self.n_questions == 0 {
            return Err(GeneratorError::InvalidConfig(
                "n_questions must be >= 1".into(),
            ));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(GeneratorError::InvalidConfig(
                "sigma must be positive and finite".into(),
            ));
        }
        if !self.mu.is_finite() {
            return Err(GeneratorError::InvalidConfig("mu must be finite".into()));
        }
        if self.n_questions >= self.m {
            return Err(GeneratorError::NoSolution {
                m: self.m,
                n_questions: self.n_questions,
            });
        }
        Ok(())
    }
}

/// Bookkeeping for one generation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationReport {
    /// The solved and rounded inflated question count `N_hat_Q`.
    pub corrected_questions: u64,
    /// Post-rounding sum of tag frequencies; this, not the target `m`,
    /// feeds the correction equation and all downstream expectations.
    pub realized_m: u64,
    pub surviving_questions: u64,
    /// Frequencies that rounded to zero and were clamped up to one.
    pub n_clamped_zero: u64,
    /// Frequencies clamped down to the corrected question count
    /// (only with the opt-in clamp; zero otherwise).
    pub n_clamped_to_questions: u64,
    pub n_empty_discarded: u64,
    pub frac_over_five: f64,
}

/// Draw lognormal occurrence counts, scale their (pre-rounding) sum to `m`,
/// and round. Zeros are clamped up to one so all `n_tags` tags stay alive;
/// the clamp count is returned alongside the vector.
pub fn sample_frequencies(
    config: &GeneratorConfig,
    rng: &mut GeneratorRng,
) -> Result<(TagFrequencyVector, u64), GeneratorError> {
    let lognormal = LogNormal::new(config.mu, config.sigma)
        .map_err(|e| GeneratorError::InvalidConfig(e.to_string()))?;
    let draws: Vec<f64> = (0..config.n_tags).map(|_| lognormal.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    let scale = config.m as f64 / total;
    let mut clamped = 0u64;
    let values: Vec<u64> = draws
        .iter()
        .map(|&d| {
            let rounded = (d * scale).round() as u64;
            if rounded == 0 {
                clamped += 1;
                1
            } else {
                rounded
            }
        })
        .collect();
    Ok((TagFrequencyVector::new(values)?, clamped))
}

/// Solve `N(1 - exp(-m/N)) = n_questions` for the unique root above
/// `n_questions` by bisection (bracket doubled until it straddles, relative
/// width 1e-9), then round to the nearest integer.
pub fn solve_corrected_questions(m: u64, n_questions: u64) -> Result<u64, GeneratorError> {
    if n_questions >= m {
        return Err(GeneratorError::NoSolution { m, n_questions });
    }
    let target = n_questions as f64;
    let mf = m as f64;
    let f = |n: f64| n * (1.0 - (-mf / n).exp());
    let mut lo = target;
    let mut hi = 2.0 * target;
    while f(hi) <= target {
        hi *= 2.0;
    }
    while hi - lo > 1e-9 * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).round() as u64)
}

/// Assign each tag to a uniform random subset of `x_t` question slots out of
/// `n_hat`, without replacement and independently across tags. The returned
/// graph may still contain empty questions; [`generate`] discards them.
pub fn assign_tags(
    freqs: &TagFrequencyVector,
    n_hat: u64,
    clamp: bool,
    rng: &mut GeneratorRng,
) -> Result<(BipartiteTagGraph, u64), GeneratorError> {
    let n_hat_u32 =
        u32::try_from(n_hat).map_err(|_| GeneratorError::TooManyQuestions { n_hat })?;
    let n_tags = freqs.len();
    let width = (n_tags.saturating_sub(1)).to_string().len();
    let tag_names: Vec<String> = (0..n_tags).map(|t| format!("t{t:0width$}")).collect();

    let mut clamped = 0u64;
    let mut incidence = Vec::with_capacity(n_tags);
    for (t, &x) in freqs.values().iter().enumerate() {
        let x = if x > n_hat {
            if !clamp {
                return Err(GeneratorError::FrequencyExceedsQuestions {
                    tag: t as u32,
                    frequency: x,
                    n_hat,
                });
            }
            clamped += 1;
            n_hat
        } else {
            x
        };
        let mut questions: Vec<u32> = rand::seq::index::sample(rng, n_hat as usize, x as usize)
            .into_iter()
            .map(|q| q as u32)
            .collect();
        questions.sort_unstable();
        incidence.push(questions);
    }
    let graph = BipartiteTagGraph::new(tag_names, n_hat_u32, incidence)?;
    Ok((graph, clamped))
}

/// Run the full model. Frequencies whose rounded value exceeds the corrected
/// question count are an error.
pub fn generate(config: &GeneratorConfig) -> Result<(BipartiteTagGraph, GenerationReport), GeneratorError> {
    generate_with_clamp(config, false)
}

/// As [`generate`], optionally clamping oversized frequencies down to the
/// corrected question count instead of failing (for extreme-sigma runs).
pub fn generate_with_clamp(
    config: &GeneratorConfig,
    clamp: bool,
) -> Result<(BipartiteTagGraph, GenerationReport), GeneratorError> {
    config.validate()?;
    let mut rng = GeneratorRng::seed_from_u64(config.seed);
    let (freqs, n_clamped_zero) = sample_frequencies(config, &mut rng)?;
    let realized_m = freqs.total();
    let n_hat = solve_corrected_questions(realized_m, config.n_questions)?;
    let (raw, n_clamped_to_questions) = assign_tags(&freqs, n_hat, clamp, &mut rng)?;

    // Keep questions with at least one tag, compacting indices in order.
    let by_question = raw.question_tags();
    let mut remap = vec![u32::MAX; by_question.len()];
    let mut survivors = 0u32;
    let mut over_five = 0u64;
    for (q, tags) in by_question.iter().enumerate() {
        if tags.is_empty() {
            continue;
        }
        remap[q] = survivors;
        survivors += 1;
        if tags.len() > 5 {
            over_five += 1;
        }
    }
    if survivors == 0 {
        return Err(GeneratorError::EmptyGraph);
    }
    let incidence: Vec<Vec<u32>> = (0..raw.n_tags())
        .map(|t| {
            raw.incidence(t as u32)
                .iter()
                .map(|&q| remap[q as usize])
                .collect()
        })
        .collect();
    let graph = BipartiteTagGraph::new(raw.tag_names().to_vec(), survivors, incidence)?;

    let report = GenerationReport {
        corrected_questions: n_hat,
        realized_m,
        surviving_questions: survivors as u64,
        n_clamped_zero,
        n_clamped_to_questions,
        n_empty_discarded: n_hat - survivors as u64,
        frac_over_five: over_five as f64 / survivors as f64,
    };
    Ok((graph, report))
}

/// Expected count and standard deviation of zero-tag questions when `m`
/// occurrences land uniformly on `n_hat` slots: `n p` and `sqrt(n p (1-p))`
/// with `p = exp(-m / n_hat)`.
pub fn expected_empty_questions(m: u64, n_hat: u64) -> (f64, f64) {
    assert!(n_hat >= 1, "n_hat must be positive");
    let n = n_hat as f64;
    let p = (-(m as f64) / n).exp();
    (n * p, (n * p * (1.0 - p)).sqrt())
}

/// Fractions of questions with 1, 2, 3, 4, 5, and more than five tags,
/// over questions that carry at least one tag.
pub fn tags_per_question_distribution(
    graph: &BipartiteTagGraph,
) -> Result<[f64; 6], GeneratorError> {
    let mut buckets = [0u64; 6];
    let mut tagged = 0u64;
    for tags in graph.question_tags() {
        if tags.is_empty() {
            continue;
        }
        tagged += 1;
        buckets[tags.len().min(6) - 1] += 1;
    }
    if tagged == 0 {
        return Err(GeneratorError::EmptyGraph);
    }
    Ok(buckets.map(|b| b as f64 / tagged as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;

    fn config(n_tags: u64, n_questions: u64, m: u64, sigma: f64, seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            n_tags,
            n_questions,
            m,
            mu: 1.0,
            sigma,
            seed,
        }
    }

    #[test]
    fn single_tag_gets_all_occurrences() {
        let cfg = config(1, 10, 100, 1.5, 7);
        let mut rng = GeneratorRng::seed_from_u64(cfg.seed);
        let (freqs, clamped) = sample_frequencies(&cfg, &mut rng).unwrap();
        assert_eq!(freqs.values(), &[100]);
        assert_eq!(clamped, 0);
    }

    #[test]
    fn tiny_sigma_splits_evenly() {
        let cfg = config(10, 50, 1000, 1e-12, 3);
        let mut rng = GeneratorRng::seed_from_u64(cfg.seed);
        let (freqs, _) = sample_frequencies(&cfg, &mut rng).unwrap();
        assert!(freqs.values().iter().all(|&x| x == 100));
    }

    #[test]
    fn correction_solver_matches_reference_root() {
        // High-precision reference: N(1 - e^(-2000/N)) = 1000 at
        // N = 1255.00097...
        assert_eq!(solve_corrected_questions(2000, 1000).unwrap(), 1255);
    }

    #[test]
    fn correction_vanishes_when_m_dominates() {
        assert_eq!(solve_corrected_questions(100_000, 1000).unwrap(), 1000);
    }

    #[test]
    fn correction_requires_more_occurrences_than_questions() {
        assert!(matches!(
            solve_corrected_questions(1000, 1000),
            Err(GeneratorError::NoSolution { .. })
        ));
        assert!(matches!(
            solve_corrected_questions(10, 1000),
            Err(GeneratorError::NoSolution { .. })
        ));
    }

    #[test]
    fn correction_root_brackets_target() {
        let f = |n: f64, m: f64| n * (1.0 - (-m / n).exp());
        for (m, nq) in [(2000u64, 1000u64), (1500, 1000), (30_000, 10_000), (7, 5)] {
            let root = solve_corrected_questions(m, nq).unwrap();
            assert!(f((root - 1) as f64, m as f64) < nq as f64 + 1.0);
            assert!(f((root + 1) as f64, m as f64) >= nq as f64 - 1.0);
        }
    }

    #[test]
    fn assign_full_subset_when_frequency_equals_questions() {
        let freqs = TagFrequencyVector::new(vec![6, 2]).unwrap();
        let mut rng = GeneratorRng::seed_from_u64(0);
        let (graph, clamped) = assign_tags(&freqs, 6, false, &mut rng).unwrap();
        assert_eq!(graph.incidence(0), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(graph.degree(1), 2);
        assert_eq!(clamped, 0);
    }

    #[test]
    fn assign_single_draw_lands_in_range() {
        let freqs = TagFrequencyVector::new(vec![1]).unwrap();
        for seed in 0..20 {
            let mut rng = GeneratorRng::seed_from_u64(seed);
            let (graph, _) = assign_tags(&freqs, 10, false, &mut rng).unwrap();
            assert_eq!(graph.total_occurrences(), 1);
            assert!(graph.incidence(0)[0] < 10);
        }
    }

    #[test]
    fn assign_rejects_oversized_frequency_unless_clamped() {
        let freqs = TagFrequencyVector::new(vec![7]).unwrap();
        let mut rng = GeneratorRng::seed_from_u64(0);
        assert!(matches!(
            assign_tags(&freqs, 5, false, &mut rng),
            Err(GeneratorError::FrequencyExceedsQuestions {
                tag: 0,
                frequency: 7,
                n_hat: 5
            })
        ));
        let mut rng = GeneratorRng::seed_from_u64(0);
        let (graph, clamped) = assign_tags(&freqs, 5, true, &mut rng).unwrap();
        assert_eq!(clamped, 1);
        assert_eq!(graph.degree(0), 5);
    }

    #[test]
    fn generate_is_deterministic() {
        let cfg = config(50, 400, 1200, 1.3, 42);
        let (g1, r1) = generate(&cfg).unwrap();
        let (g2, r2) = generate(&cfg).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(r1, r2);
        let (g3, _) = generate(&config(50, 400, 1200, 1.3, 43)).unwrap();
        assert_ne!(g1, g3);
    }

    #[test]
    fn generate_single_tag_degenerate_regime() {
        // One tag, five occurrences, four requested questions: the solver
        // inflates to 11 slots, the tag fills five of them, and exactly
        // those five survive -- all annotated by the single tag.
        let cfg = config(1, 4, 5, 1.0, 9);
        let (graph, report) = generate(&cfg).unwrap();
        assert_eq!(report.corrected_questions, 11);
        assert_eq!(report.realized_m, 5);
        assert_eq!(report.surviving_questions, 5);
        assert_eq!(graph.n_questions(), 5);
        assert_eq!(graph.degree(0), 5);
        assert_eq!(graph.n_orphan_questions(), 0);
    }

    #[test]
    fn generate_discards_empty_questions() {
        let cfg = config(30, 200, 500, 1.2, 5);
        let (graph, report) = generate(&cfg).unwrap();
        assert_eq!(graph.n_orphan_questions(), 0);
        assert_eq!(
            report.corrected_questions - report.n_empty_discarded,
            report.surviving_questions
        );
        assert_eq!(graph.n_questions(), report.surviving_questions);
        assert_eq!(graph.total_occurrences(), report.realized_m);
    }

    #[test]
    fn expected_empty_degenerate_cases() {
        let (e, s) = expected_empty_questions(0, 50);
        assert_abs_diff_eq!(e, 50.0);
        assert_abs_diff_eq!(s, 0.0);
        let (e, _) = expected_empty_questions(1_000_000, 50);
        assert!(e < 1e-300);
    }

    #[test]
    fn tags_per_question_single_tag_everywhere() {
        let g = BipartiteTagGraph::new(
            vec!["a".into(), "b".into()],
            4,
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        let fractions = tags_per_question_distribution(&g).unwrap();
        assert_eq!(fractions, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn tags_per_question_buckets_over_five() {
        // one question tagged by seven tags, one by a single tag
        let incidence: Vec<Vec<u32>> = (0..7)
            .map(|t| if t == 0 { vec![0, 1] } else { vec![0] })
            .collect();
        let names = (0..7).map(|t| format!("t{t}")).collect();
        let g = BipartiteTagGraph::new(names, 2, incidence).unwrap();
        let fractions = tags_per_question_distribution(&g).unwrap();
        assert_abs_diff_eq!(fractions[5], 0.5);
        assert_abs_diff_eq!(fractions[0], 0.5);
        assert_abs_diff_eq!(fractions.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(config(0, 10, 100, 1.0, 0).validate().is_err());
        assert!(config(5, 0, 100, 1.0, 0).validate().is_err());
        assert!(config(5, 10, 100, 0.0, 0).validate().is_err());
        assert!(config(5, 100, 100, 1.0, 0).validate().is_err());
        assert!(config(5, 10, 100, 1.0, 0).validate().is_ok());
    }
}
