use hardy_core::catalog::optimal_state;
use hardy_core::engine::{hardy_score, joint_table, sample_outcomes, MeasurementScenario, SettingPair};

#[test]
fn frequencies_converge_to_probabilities() {
    let h = optimal_state(2).unwrap();
    let scenario = MeasurementScenario::constructed(&h).unwrap();
    let n = 1_000_000u64;
    for pair in [
        SettingPair::A1B1,
        SettingPair::A1B2,
        SettingPair::A2B1,
        SettingPair::A2B2,
    ] {
        let (a, b) = pair.bases(&scenario);
        let table = joint_table(&h, a, b).unwrap();
        let counts = sample_outcomes(&h, &scenario, pair, n, 42).unwrap();
        for m in 0..2 {
            for k in 0..2 {
                let p = table[m * 2 + k];
                let freq = counts.get(m, k) as f64 / n as f64;
                let sigma = (p * (1.0 - p) / n as f64).sqrt();
                assert!(
                    (freq - p).abs() <= 5.0 * sigma + 10.0 / n as f64,
                    "{pair} ({m},{k}): {freq} vs {p}"
                );
            }
        }
    }
    let score = hardy_score(&h).unwrap().score;
    let counts = sample_outcomes(&h, &scenario, SettingPair::A2B2, n, 42).unwrap();
    let sigma = (score * (1.0 - score) / n as f64).sqrt();
    assert!((counts.ordered_frequency() - score).abs() <= 3.0 * sigma);
}

#[test]
fn same_seed_same_counts() {
    let h = optimal_state(3).unwrap();
    let scenario = MeasurementScenario::constructed(&h).unwrap();
    let a = sample_outcomes(&h, &scenario, SettingPair::A2B2, 50_000, 9).unwrap();
    let b = sample_outcomes(&h, &scenario, SettingPair::A2B2, 50_000, 9).unwrap();
    let c = sample_outcomes(&h, &scenario, SettingPair::A2B2, 50_000, 10).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.counts, c.counts);
}
