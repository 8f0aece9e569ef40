//! CSV/JSON writers and the run manifest.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{ExperimentConfig, Params};
use crate::error::CliResult;
use crate::experiments::{cmd_attack, cmd_fig1, cmd_fig2_fig3, cmd_xeb};

/// Bumped whenever a column is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment: &'static str,
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub threads: usize,
    pub started_at: String,
    pub finished_at: String,
    pub elapsed_seconds: f64,
    /// File name to schema tag.
    pub files: BTreeMap<String, String>,
    pub warnings: Vec<String>,
}

/// Writes `rows` with a leading `schema_version` column.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> CliResult<()> {
    let mut plain = csv::Writer::from_writer(Vec::new());
    for row in rows {
        plain.serialize(row)?;
    }
    let bytes = plain.into_inner().map_err(|e| e.into_error())?;
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(bytes.as_slice());
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    let version = SCHEMA_VERSION.to_string();
    for (i, rec) in reader.byte_records().enumerate() {
        let rec = rec?;
        let first: &[u8] = if i == 0 { b"schema_version" } else { version.as_bytes() };
        w.write_record(std::iter::once(first).chain(rec.iter()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn schema(name: &str) -> String {
    format!("{name}/v{SCHEMA_VERSION}")
}

/// Runs `cfg` on a pool of `threads` workers (all cores when `None`),
/// writes its outputs into `out` and returns the manifest.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path) -> CliResult<Manifest> {
    cfg.validate()?;
    fs::create_dir_all(out)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build()?;
    let started = chrono::Utc::now();
    let clock = std::time::Instant::now();

    let mut files = BTreeMap::new();
    let mut warnings = Vec::new();
    pool.install(|| -> CliResult<()> {
        match &cfg.params {
            Params::Fig1(p) => {
                let r = cmd_fig1(p, &cfg.seeds)?;
                write_csv(&out.join("fig1.csv"), &r.rows)?;
                write_csv(&out.join("fig1_summary.csv"), &r.summary)?;
                files.insert("fig1.csv".into(), schema("fig1"));
                files.insert("fig1_summary.csv".into(), schema("fig1_summary"));
            }
            Params::Fig2Fig3(p) => {
                let r = cmd_fig2_fig3(p, &cfg.seeds)?;
                write_csv(&out.join("fig2.csv"), &r.fig2)?;
                write_csv(&out.join("fig3.csv"), &r.fig3)?;
                write_csv(&out.join("trajectories.csv"), &r.trajectories)?;
                files.insert("fig2.csv".into(), schema("fig2"));
                files.insert("fig3.csv".into(), schema("fig3"));
                files.insert("trajectories.csv".into(), schema("trajectories"));
                warnings.extend(r.warnings);
            }
            Params::Attack(p) => {
                write_json(&out.join("attack.json"), &cmd_attack(p, &cfg.seeds)?)?;
                files.insert("attack.json".into(), schema("attack"));
            }
            Params::Xeb(p) => {
                write_json(&out.join("xeb.json"), &cmd_xeb(p, &cfg.seeds)?)?;
                files.insert("xeb.json".into(), schema("xeb"));
            }
        }
        Ok(())
    })?;

    let manifest = Manifest {
        tool: "spectralab",
        version: env!("CARGO_PKG_VERSION"),
        experiment: cfg.params.name(),
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        threads: pool.current_num_threads(),
        started_at: started.to_rfc3339(),
        finished_at: chrono::Utc::now().to_rfc3339(),
        elapsed_seconds: clock.elapsed().as_secs_f64(),
        files,
        warnings,
    };
    write_json(&out.join("manifest.json"), &manifest)?;
    Ok(manifest)
}

/// `cfg.out`, or `results/<experiment>` when unset.
pub fn default_out(cfg: &ExperimentConfig) -> PathBuf {
    cfg.out
        .clone()
        .unwrap_or_else(|| PathBuf::from("results").join(cfg.params.name()))
}
