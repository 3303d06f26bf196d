//! Monte Carlo checks of the generator's distributional guarantees against
//! exact hypergeometric and binomial oracles.

use cotag_core::{
    assign_tags, expected_empty_questions, expected_unique_cotags, expected_weighted_cotags,
    generate, project, sample_frequencies, solve_corrected_questions, GeneratorConfig,
    GeneratorRng, TagFrequencyVector,
};
use rand::SeedableRng;
use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Hypergeometric, Normal};

fn overlap_counts(freqs: &[u64], n_hat: u64, trials: usize, seed: u64) -> Vec<u64> {
    // distribution of w_{0,1} over repeated assignments
    let freqs = TagFrequencyVector::new(freqs.to_vec()).unwrap();
    let mut rng = GeneratorRng::seed_from_u64(seed);
    let max_overlap = freqs.values()[0].min(freqs.values()[1]) as usize;
    let mut counts = vec![0u64; max_overlap + 1];
    for _ in 0..trials {
        let (graph, _) = assign_tags(&freqs, n_hat, false, &mut rng).unwrap();
        let overlap = graph
            .incidence(0)
            .iter()
            .filter(|q| graph.incidence(1).binary_search(q).is_ok())
            .count();
        counts[overlap] += 1;
    }
    counts
}

#[test]
fn pairwise_overlap_matches_hypergeometric_pmf() {
    // w_{s,t} ~ Hypergeom(n_hat, x_s, x_t); with 10^5 trials each pmf value
    // is estimated to about +-0.003, so +-0.005 per outcome is a safe gate.
    let trials = 100_000;
    let counts = overlap_counts(&[3, 3], 6, trials, 42);
    let oracle = Hypergeometric::new(6, 3, 3).unwrap();
    for (k, &count) in counts.iter().enumerate() {
        let expected = oracle.pmf(k as u64);
        let observed = count as f64 / trials as f64;
        assert!(
            (observed - expected).abs() < 0.005,
            "k={k}: observed {observed} vs pmf {expected}"
        );
    }
}

#[test]
fn pairwise_overlap_chi_square_not_rejected() {
    // chi-square goodness of fit at the 0.01 level over a grid of small
    // configurations, 10^4 trials each
    let cases: [(&[u64], u64); 4] = [
        (&[3, 3], 6),
        (&[2, 5, 1], 8),
        (&[4, 4], 10),
        (&[3, 2, 2], 7),
    ];
    let trials = 10_000;
    for (i, (freqs, n_hat)) in cases.iter().enumerate() {
        let counts = overlap_counts(freqs, *n_hat, trials, 1000 + i as u64);
        let oracle = Hypergeometric::new(*n_hat, freqs[0], freqs[1]).unwrap();
        let support_min = (freqs[0] + freqs[1]).saturating_sub(*n_hat) as usize;
        let mut chi2 = 0.0;
        let mut df: i64 = -1;
        for (k, &count) in counts.iter().enumerate().skip(support_min) {
            let expected = oracle.pmf(k as u64) * trials as f64;
            assert!(expected > 0.0);
            let diff = count as f64 - expected;
            chi2 += diff * diff / expected;
            df += 1;
        }
        let critical = ChiSquared::new(df as f64).unwrap().inverse_cdf(0.99);
        assert!(
            chi2 < critical,
            "case {i}: chi2 {chi2} >= critical {critical} (df {df})"
        );
    }
}

#[test]
fn per_slot_marginal_inclusion_is_uniform() {
    // each slot belongs to the tag's subset with probability x/n_hat;
    // counts over repeated seeds are Binomial(trials, x/n_hat)
    let trials = 2000u64;
    let (x, n_hat) = (3u64, 10u64);
    let freqs = TagFrequencyVector::new(vec![x]).unwrap();
    let mut slot_counts = vec![0u64; n_hat as usize];
    let mut rng = GeneratorRng::seed_from_u64(7);
    for _ in 0..trials {
        let (graph, _) = assign_tags(&freqs, n_hat, false, &mut rng).unwrap();
        for &q in graph.incidence(0) {
            slot_counts[q as usize] += 1;
        }
    }
    let p = x as f64 / n_hat as f64;
    let se = (trials as f64 * p * (1.0 - p)).sqrt();
    let expected = trials as f64 * p;
    for (slot, &count) in slot_counts.iter().enumerate() {
        assert!(
            (count as f64 - expected).abs() <= 3.0 * se,
            "slot {slot}: {count} vs {expected} +- {}",
            3.0 * se
        );
    }
}

#[test]
fn surviving_question_count_tracks_expectation() {
    for (seed, config) in [
        (1u64, GeneratorConfig { n_tags: 80, n_questions: 500, m: 1500, mu: 1.0, sigma: 1.2, seed: 0 }),
        (2, GeneratorConfig { n_tags: 200, n_questions: 2000, m: 5000, mu: 0.5, sigma: 1.0, seed: 0 }),
        (3, GeneratorConfig { n_tags: 40, n_questions: 300, m: 900, mu: 2.0, sigma: 0.8, seed: 0 }),
    ] {
        let config = GeneratorConfig { seed, ..config };
        let (_, report) = generate(&config).unwrap();
        let (expected_empty, std) =
            expected_empty_questions(report.realized_m, report.corrected_questions);
        let expected_surviving = report.corrected_questions as f64 - expected_empty;
        let dev = (report.surviving_questions as f64 - expected_surviving).abs();
        assert!(
            dev <= 4.0 * std + 1.0,
            "seed {seed}: surviving {} vs expected {expected_surviving} (std {std})",
            report.surviving_questions
        );
    }
}

#[test]
fn sampled_frequencies_keep_total_and_lognormal_shape() {
    let config = GeneratorConfig {
        n_tags: 100,
        n_questions: 1,
        m: 10_000,
        mu: 1.0,
        sigma: 1.5,
        seed: 31,
    };
    let mut rng = GeneratorRng::seed_from_u64(config.seed);
    let (freqs, _) = sample_frequencies(&config, &mut rng).unwrap();
    let realized: u64 = freqs.total();
    assert!(
        (realized as i64 - 10_000).unsigned_abs() <= 100,
        "realized m = {realized}"
    );

    // KS against the scaled lognormal: sigma is preserved by scaling, the
    // location shifts; estimate the shift from the sample logs.
    let values = freqs.as_f64();
    let mut sorted = values.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mu_hat = sorted.iter().map(|v| v.ln()).sum::<f64>() / sorted.len() as f64;
    let normal = Normal::new(mu_hat, 1.5).unwrap();
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = normal.cdf(x.ln());
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    assert!(d < 0.15, "KS vs scaled lognormal = {d}");
}

#[test]
fn monte_carlo_degree_means_match_closed_forms() {
    // For random small configurations, the MC means of weighted and unique
    // co-tag degrees stay within four standard errors of the closed forms.
    let mut seed_rng = GeneratorRng::seed_from_u64(99);
    use rand::Rng;
    for case in 0..20 {
        let n_tags = seed_rng.random_range(2..6usize);
        let n_hat = seed_rng.random_range(5..14u64);
        let freqs_vec: Vec<u64> = (0..n_tags)
            .map(|_| seed_rng.random_range(1..=n_hat.min(6)))
            .collect();
        let freqs = TagFrequencyVector::new(freqs_vec.clone()).unwrap();
        let trials = 2000;
        let mut k_samples = vec![Vec::with_capacity(trials); n_tags];
        let mut d_samples = vec![Vec::with_capacity(trials); n_tags];
        let mut rng = GeneratorRng::seed_from_u64(5000 + case);
        for _ in 0..trials {
            let (graph, _) = assign_tags(&freqs, n_hat, false, &mut rng).unwrap();
            let projection = project(&graph);
            for t in 0..n_tags {
                k_samples[t].push(projection.weighted_degree(t as u32).unwrap() as f64);
                d_samples[t].push(projection.unweighted_degree(t as u32).unwrap() as f64);
            }
        }
        for t in 0..n_tags {
            for (samples, expected, label) in [
                (&k_samples[t], expected_weighted_cotags(&freqs_vec, t, n_hat), "k"),
                (&d_samples[t], expected_unique_cotags(&freqs_vec, t, n_hat), "d"),
            ] {
                let mean = samples.iter().sum::<f64>() / trials as f64;
                let var = samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                    / (trials as f64 - 1.0);
                let se = (var / trials as f64).sqrt();
                assert!(
                    (mean - expected).abs() <= 4.0 * se + 1e-9,
                    "case {case} tag {t} {label}: mean {mean} vs {expected} (se {se}), freqs {freqs_vec:?} n_hat {n_hat}"
                );
            }
        }
    }
}

#[test]
fn expected_unique_cotags_matches_exhaustive_enumeration() {
    // n_hat = 4, x = [2,2,2]: place tags 2 and 3 on all C(4,2)^2 = 36
    // subset pairs against tag 1 fixed on {0,1} and average its unique
    // co-tag count. Closed form: 5/3.
    let slots = [0u32, 1, 2, 3];
    let pairs: Vec<(u32, u32)> = (0..4)
        .flat_map(|a| ((a + 1)..4).map(move |b| (slots[a as usize], slots[b])))
        .collect();
    assert_eq!(pairs.len(), 6);
    let tag1 = [0u32, 1];
    let mut total = 0u64;
    for s2 in &pairs {
        for s3 in &pairs {
            let mut unique = 0;
            for other in [s2, s3] {
                let overlaps = tag1.contains(&other.0) || tag1.contains(&other.1);
                if overlaps {
                    unique += 1;
                }
            }
            total += unique;
        }
    }
    let enumerated = total as f64 / 36.0;
    let closed = expected_unique_cotags(&[2, 2, 2], 0, 4);
    assert_eq!(enumerated, 5.0 / 3.0);
    assert!((closed - enumerated).abs() < 1e-12);
}

#[test]
fn corrected_count_solution_is_monotone_bracketed() {
    let f = |n: f64, m: f64| n * (1.0 - (-m / n).exp());
    for (m, nq) in [(1500u64, 1000u64), (2000, 1000), (3000, 1000), (123_456, 45_678)] {
        let root = solve_corrected_questions(m, nq).unwrap();
        assert!(root >= nq);
        assert!(f(root as f64 - 1.0, m as f64) < nq as f64 + 1.0);
        assert!(f(root as f64 + 1.0, m as f64) >= nq as f64 - 1.0);
    }
}
