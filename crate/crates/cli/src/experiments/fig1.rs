use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use spectralab::circuits::{gen_sparse_iqp, iqp_prob_dist, SparseIqpSpec};
use spectralab::stats::{entropy, mean_std, PtReference};

use crate::config::{instance_seeds, Fig1Params};
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig1Row {
    pub gamma: f64,
    pub instance: usize,
    pub seed: u64,
    pub entropy: f64,
    pub pt_entropy_ref: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig1Summary {
    pub gamma: f64,
    pub instances: usize,
    pub mean_entropy: f64,
    pub std_entropy: f64,
    /// Mean of `|entropy − pt_entropy_ref|`.
    pub mean_abs_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig1Output {
    pub rows: Vec<Fig1Row>,
    pub summary: Vec<Fig1Summary>,
}

/// Output entropies of sparse IQP instances for each γ. Instance `i` uses
/// the same seed at every γ.
pub fn cmd_fig1(p: &Fig1Params, seeds: &[u64]) -> CliResult<Fig1Output> {
    let seeds = instance_seeds(seeds, p.instances)?;
    let reference = PtReference::new(p.n).entropy_ref;
    let tasks: Vec<(f64, usize)> = p
        .gammas
        .iter()
        .flat_map(|&g| (0..p.instances).map(move |i| (g, i)))
        .collect();
    let rows = tasks
        .par_iter()
        .map(|&(gamma, instance)| -> CliResult<Fig1Row> {
            let spec = SparseIqpSpec {
                n: p.n,
                gamma,
                seed: seeds[instance],
                phase_rule: p.phase_rule,
                coupling_rule: p.coupling_rule,
            };
            let dist = iqp_prob_dist(&gen_sparse_iqp(&spec)?)?;
            Ok(Fig1Row {
                gamma,
                instance,
                seed: spec.seed,
                entropy: entropy(&dist),
                pt_entropy_ref: reference,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let summary = p
        .gammas
        .iter()
        .map(|&g| {
            let hs: Vec<f64> = rows.iter().filter(|r| r.gamma == g).map(|r| r.entropy).collect();
            let gaps: Vec<f64> = hs.iter().map(|h| (h - reference).abs()).collect();
            let (mean_entropy, std_entropy) = mean_std(&hs);
            Fig1Summary {
                gamma: g,
                instances: hs.len(),
                mean_entropy,
                std_entropy,
                mean_abs_gap: mean_std(&gaps).0,
            }
        })
        .collect();
    Ok(Fig1Output { rows, summary })
}
