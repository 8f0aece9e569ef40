use rand::seq::index::sample;
use serde::{Deserialize, Serialize};
use spectralab::bits::masks_of_weight;
use spectralab::circuits::{gen_random_universal, RandomCircuitSpec};
use spectralab::fourier::{pt_rescale_factor, wht, Spectrum};
use spectralab::noise::{alpha_pred, run_trajectories};
use spectralab::quantum::Circuit;
use spectralab::rng::{derive_seed, stream};
use spectralab::stats::mean_std;

use crate::config::{instance_seeds, Fig23Params};
use crate::error::CliResult;

const MASK_SALT: u64 = 0x6d61_736b;
const TRAJECTORY_SALT: u64 = 0x7472_616a;

/// One sampled Fourier component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig2Row {
    pub eps: f64,
    pub instance: usize,
    pub seed: u64,
    pub weight: usize,
    pub s: u64,
    pub coeff: f64,
    /// `coeff · 2^{3n/2}`.
    pub rescaled: f64,
}

/// Spread of all components of one weight, pooled over instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig3Row {
    pub eps: f64,
    pub weight: usize,
    /// Components pooled (masks of this weight × instances).
    pub pool: usize,
    pub std: f64,
    pub rescaled_std: f64,
    /// `std` divided by the same statistic of the ideal outputs.
    pub ratio_to_ideal: f64,
    /// Mean trajectory no-error fraction over instances.
    pub no_error_fraction: f64,
}

/// Per-(ε, instance) trajectory summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub eps: f64,
    pub instance: usize,
    pub seed: u64,
    pub gates: usize,
    pub trajectories: usize,
    pub no_error_fraction: f64,
    pub alpha_pred: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig23Output {
    pub n: usize,
    pub fig2: Vec<Fig2Row>,
    pub fig3: Vec<Fig3Row>,
    pub trajectories: Vec<TrajectoryRow>,
    pub warnings: Vec<String>,
}

/// Trajectory-averaged spectra of random universal circuits across an ε
/// sweep. Sampled masks are fixed per instance so the same components are
/// followed as ε grows.
pub fn cmd_fig2_fig3(p: &Fig23Params, seeds: &[u64]) -> CliResult<Fig23Output> {
    let seeds = instance_seeds(seeds, p.instances)?;
    let circuits: Vec<Circuit> = seeds
        .iter()
        .map(|&s| gen_random_universal(&RandomCircuitSpec::new(p.rows, p.cols, p.depth, s)))
        .collect::<spectralab::Result<_>>()?;
    let n = p.rows * p.cols;
    let scale = pt_rescale_factor(n);
    let by_weight: Vec<Vec<u64>> = (0..=n).map(|w| masks_of_weight(n, w)).collect();

    let picked: Vec<Vec<u64>> = seeds
        .iter()
        .map(|&s| pick_masks(&by_weight, p.masks_per_weight, derive_seed(s, MASK_SALT)))
        .collect();
    let ideal: Vec<Spectrum> = circuits
        .iter()
        .map(|c| Ok(wht(&c.run()?.probabilities())))
        .collect::<spectralab::Result<_>>()?;
    let ideal_std = weight_stds(&ideal, &by_weight);

    let mut out = Fig23Output {
        n,
        fig2: Vec::new(),
        fig3: Vec::new(),
        trajectories: Vec::new(),
        warnings: Vec::new(),
    };
    for (ei, &eps) in p.eps.iter().enumerate() {
        let nm = p.noise_model(eps)?;
        let mut spectra = Vec::with_capacity(circuits.len());
        let mut nef = Vec::with_capacity(circuits.len());
        for (i, c) in circuits.iter().enumerate() {
            let tseed = derive_seed(derive_seed(seeds[i], TRAJECTORY_SALT), ei as u64);
            let r = run_trajectories(c, &nm, p.trajectories, tseed)?;
            let spec = wht(&r.avg_dist);
            for &s in &picked[i] {
                let coeff = spec.get(s as usize);
                out.fig2.push(Fig2Row {
                    eps,
                    instance: i,
                    seed: seeds[i],
                    weight: s.count_ones() as usize,
                    s,
                    coeff,
                    rescaled: coeff * scale,
                });
            }
            out.trajectories.push(TrajectoryRow {
                eps,
                instance: i,
                seed: tseed,
                gates: c.gate_count(),
                trajectories: p.trajectories,
                no_error_fraction: r.no_error_fraction,
                alpha_pred: alpha_pred(c, &nm)?.product,
            });
            nef.push(r.no_error_fraction);
            spectra.push(spec);
        }
        let f = mean_std(&nef).0;
        // Trajectories with an error add roughly PT-scale noise of relative
        // size sqrt((1 − f)/K) against a signal of relative size f.
        let rel_noise = ((1.0 - f) / p.trajectories as f64).sqrt() / f.max(f64::MIN_POSITIVE);
        if rel_noise > 0.1 {
            out.warnings.push(format!(
                "eps = {eps}: trajectory noise ≈ {:.0}% of the signal scale; K = {} is too small",
                100.0 * rel_noise,
                p.trajectories
            ));
        }
        for (w, (pool, std)) in weight_stds(&spectra, &by_weight).into_iter().enumerate().skip(1) {
            out.fig3.push(Fig3Row {
                eps,
                weight: w,
                pool,
                std,
                rescaled_std: std * scale,
                ratio_to_ideal: std / ideal_std[w].1,
                no_error_fraction: f,
            });
        }
    }
    Ok(out)
}

/// Up to `per_weight` distinct masks of each weight `1..=n`, uniformly at
/// random, in (weight, value) order.
fn pick_masks(by_weight: &[Vec<u64>], per_weight: usize, seed: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for (w, masks) in by_weight.iter().enumerate().skip(1) {
        let mut rng = stream(seed, w as u64);
        let mut chosen: Vec<u64> = if masks.len() <= per_weight {
            masks.clone()
        } else {
            sample(&mut rng, masks.len(), per_weight)
                .into_iter()
                .map(|i| masks[i])
                .collect()
        };
        chosen.sort_unstable();
        out.extend(chosen);
    }
    out
}

/// `(pool, std)` for each weight, pooling every mask of that weight.
fn weight_stds(spectra: &[Spectrum], by_weight: &[Vec<u64>]) -> Vec<(usize, f64)> {
    by_weight
        .iter()
        .map(|masks| {
            let pool: Vec<f64> = spectra
                .iter()
                .flat_map(|sp| masks.iter().map(move |&s| sp.get(s as usize)))
                .collect();
            (pool.len(), mean_std(&pool).1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Fig23Params {
        Fig23Params {
            rows: 2,
            cols: 3,
            depth: 12,
            eps: vec![0.0, 0.01, 0.2],
            instances: 3,
            trajectories: 200,
            masks_per_weight: 4,
            ..Fig23Params::default()
        }
    }

    #[test]
    fn row_layout() {
        let out = cmd_fig2_fig3(&small(), &[5]).unwrap();
        let per_instance: usize = (1..=6).map(|w| masks_of_weight(6, w).len().min(4)).sum();
        assert_eq!(out.fig2.len(), 3 * 3 * per_instance);
        assert_eq!(out.fig3.len(), 3 * 6);
        assert_eq!(out.trajectories.len(), 9);
        for r in out.fig3.iter().filter(|r| r.eps == 0.0) {
            assert!((r.ratio_to_ideal - 1.0).abs() < 1e-12);
            assert_eq!(r.no_error_fraction, 1.0);
        }
        assert!(out.warnings.iter().any(|w| w.starts_with("eps = 0.2")));
    }

    #[test]
    fn masks_are_followed_across_eps() {
        let out = cmd_fig2_fig3(&small(), &[5]).unwrap();
        let at = |eps: f64| -> Vec<(usize, u64)> {
            out.fig2.iter().filter(|r| r.eps == eps).map(|r| (r.instance, r.s)).collect()
        };
        assert_eq!(at(0.0), at(0.2));
    }

    #[test]
    fn pick_masks_is_distinct_and_capped() {
        let by_weight: Vec<Vec<u64>> = (0..=8).map(|w| masks_of_weight(8, w)).collect();
        let m = pick_masks(&by_weight, 5, 1);
        assert_eq!(m.len(), 5 * 7 + 1);
        let mut d = m.clone();
        d.dedup();
        assert_eq!(d, m);
    }
}
