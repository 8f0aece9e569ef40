use rand::Rng;
use spectralab::bits::BitString;
use spectralab::circuits::{gen_sparse_iqp, iqp_prob_dist, CouplingRule, DiagonalCircuit, PhaseRule, SparseIqpSpec};
use spectralab::fourier::{
    decay_spectrum, exact_component_convolution, iwht, low_weight_reconstruct, mc_estimate_component,
    spectral_correlation, wht, EstimatorBudget, ReconstructionConfig, Spectrum,
};
use spectralab::noise::premeasurement_depolarize;
use spectralab::quantum::ProbDist;
use spectralab::rng::seeded;
use spectralab::stats::{mean_std, sample_haar_probdist};

fn naive_wht(p: &[f64]) -> Vec<f64> {
    let len = p.len();
    (0..len)
        .map(|s| {
            (0..len)
                .map(|x| if (x & s).count_ones() % 2 == 0 { p[x] } else { -p[x] })
                .sum::<f64>()
                / len as f64
        })
        .collect()
}

fn chaotic(n: usize, seed: u64) -> DiagonalCircuit {
    gen_sparse_iqp(&SparseIqpSpec {
        n,
        gamma: 100.0,
        seed,
        phase_rule: PhaseRule::UniformContinuous,
        coupling_rule: CouplingRule::UniformContinuous,
    })
    .unwrap()
}

#[test]
fn wht_against_direct_sum() {
    for n in 0..=10 {
        let p = sample_haar_probdist(n, 70 + n as u64).unwrap();
        let fast = wht(&p);
        for (a, b) in fast.coeffs().iter().zip(naive_wht(p.probs())) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn hand_computed_spectra() {
    let u = wht(&ProbDist::uniform(5));
    assert!((u.get(0) - 1.0 / 32.0).abs() < 1e-18);
    assert!(u.coeffs()[1..].iter().all(|&c| c.abs() < 1e-18));
    let delta = wht(&ProbDist::point_mass(2, 0).unwrap());
    assert!(delta.coeffs().iter().all(|&c| (c - 0.25).abs() < 1e-16));
    let back = iwht(&u);
    assert!(back.iter().all(|v| (v - 1.0 / 32.0).abs() < 1e-16));

    let truncated = Spectrum::new(vec![0.25, 0.25, 0.25, 0.0]).unwrap();
    let q = iwht(&truncated);
    for (a, b) in q.iter().zip([0.75, 0.25, 0.25, -0.25]) {
        assert!((a - b).abs() < 1e-16);
    }
}

#[test]
fn spectra_are_bounded_by_the_point_mass() {
    for n in 1..=8 {
        let p = sample_haar_probdist(n, 80 + n as u64).unwrap();
        let bound = 1.0 / p.len() as f64;
        assert!(wht(&p).coeffs().iter().all(|c| c.abs() <= bound + 1e-16));
    }
}

#[test]
fn decay_matches_channel() {
    for n in 1..=12 {
        let p = sample_haar_probdist(n, 90 + n as u64).unwrap();
        for eps in [0.0, 0.01, 0.1, 0.5, 1.0] {
            let q = iwht(&decay_spectrum(&wht(&p), eps).unwrap());
            let channel = premeasurement_depolarize(&p, eps).unwrap();
            for (a, b) in q.iter().zip(channel.probs()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn convolution_normalisation() {
    let empty = DiagonalCircuit::empty(5);
    for s in [0u64, 1, 7, 31] {
        let v = exact_component_convolution(&empty, BitString::new(s, 5).unwrap()).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }
    let d = gen_sparse_iqp(&SparseIqpSpec::new(10, 2.0, 3)).unwrap();
    let zero = exact_component_convolution(&d, BitString::new(0, 10).unwrap()).unwrap();
    assert!((zero - 1.0).abs() < 1e-12);
    let spec = wht(&iqp_prob_dist(&d).unwrap());
    for s in 0..1024u64 {
        let v = exact_component_convolution(&d, BitString::new(s, 10).unwrap()).unwrap();
        assert!((v - 1024.0 * spec.get(s as usize)).abs() < 1e-10);
    }
}

#[test]
fn monte_carlo_trivial_cases_are_exact() {
    let budget = EstimatorBudget::hoeffding(0.3, 0.1).unwrap();
    let empty = DiagonalCircuit::empty(6);
    let d = chaotic(6, 4);
    for s in [0u64, 5, 63] {
        let b = BitString::new(s, 6).unwrap();
        assert_eq!(mc_estimate_component(&empty, b, &budget, 1).unwrap(), 1.0);
    }
    let zero = mc_estimate_component(&d, BitString::new(0, 6).unwrap(), &budget, 1).unwrap();
    assert!((zero - 1.0).abs() < 1e-12);
}

#[test]
fn hoeffding_budget_holds_empirically() {
    let n = 10;
    let d = chaotic(n, 5);
    let budget = EstimatorBudget::hoeffding(0.1, 0.05).unwrap();
    assert_eq!(budget.samples, (2.0 / 0.01 * (2.0f64 / 0.05).ln()).ceil() as u64);
    let mut rng = seeded(6);
    let mut exceed = 0;
    for _ in 0..200 {
        let s = BitString::new(rng.gen_range(0..1u64 << n), n).unwrap();
        let exact = exact_component_convolution(&d, s).unwrap();
        if (mc_estimate_component(&d, s, &budget, 7).unwrap() - exact).abs() > budget.eta {
            exceed += 1;
        }
    }
    // Hoeffding is conservative: at most 5% may fail, in practice almost none do.
    assert!(exceed <= 10, "{exceed}");
    assert!(EstimatorBudget::with_samples(0.1, 0.05, budget.samples - 1).is_err());
}

#[test]
fn exact_truncation_shrinks_in_l2() {
    let n = 10;
    let d = gen_sparse_iqp(&SparseIqpSpec::new(n, 3.0, 8)).unwrap();
    let noisy = premeasurement_depolarize(&iqp_prob_dist(&d).unwrap(), 0.1).unwrap();
    let oracle = decay_spectrum(&wht(&iqp_prob_dist(&d).unwrap()), 0.1).unwrap();
    let mut last = f64::INFINITY;
    for l in 0..=4 {
        let cfg = ReconstructionConfig {
            l,
            budget: None,
            beta: 2.0,
            delta: 0.1,
            eps: 0.1,
        };
        let r = low_weight_reconstruct(&d, &cfg, 0).unwrap();
        for (&s, &c) in r.masks.iter().zip(&r.coeffs) {
            assert!((c - oracle.get(s as usize)).abs() < 1e-14);
        }
        // ℓ2 shrinks by Parseval; ℓ1 need not.
        let q = iwht(&r.spectrum());
        let dist = noisy.probs().iter().zip(&q).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        assert!(dist <= last + 1e-15, "l = {l}: {dist} > {last}");
        assert!(r.l1_to(&noisy) <= dist * (noisy.len() as f64).sqrt() + 1e-12);
        last = dist;
    }
}

#[test]
fn correlation_examples() {
    let a = wht(&sample_haar_probdist(10, 9).unwrap());
    assert!((spectral_correlation(&a, &a, 1, 10).unwrap() - 1.0).abs() < 1e-12);

    let mut rng = seeded(10);
    let noise = Spectrum::new((0..1024).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
    let r = spectral_correlation(&a, &noise, 1, 10).unwrap();
    assert!(r.abs() < 3.0 / (1023f64).sqrt(), "{r}");

    assert!(spectral_correlation(&a, &a, 11, 12).is_err());
}

#[test]
fn fine_budget_tracks_exact_spectrum() {
    let n = 10;
    let d = chaotic(n, 11);
    let eta = (-(n as f64) / 2.0).exp2() / 10.0;
    let cfg = ReconstructionConfig {
        l: 2,
        budget: Some(EstimatorBudget::hoeffding(eta, 0.01).unwrap()),
        beta: 2.0,
        delta: 0.1,
        eps: 0.0,
    };
    let r = low_weight_reconstruct(&d, &cfg, 12).unwrap();
    let exact = wht(&iqp_prob_dist(&d).unwrap());
    assert!(spectral_correlation(&r.spectrum(), &exact, 1, 2).unwrap() > 0.99);
}

#[test]
fn haar_spectral_scale() {
    let n = 12;
    let big_n = (1u64 << n) as f64;
    let pool: Vec<f64> = (0..10)
        .flat_map(|i| {
            let s = wht(&sample_haar_probdist(n, 200 + i).unwrap());
            s.coeffs()[1..].iter().map(|c| c * big_n).collect::<Vec<_>>()
        })
        .collect();
    let (_, std) = mean_std(&pool);
    assert!((std / (-(n as f64) / 2.0).exp2() - 1.0).abs() < 0.05, "{std}");
}
