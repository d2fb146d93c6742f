use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use log::info;
use uavcb::metrics::{acr, igd_series, reference_front};
use uavcb::problem::ObjectiveVector;

use crate::args::MetricsArgs;
use crate::io;

struct SeedRun {
    label: String,
    snapshots: Vec<Vec<ObjectiveVector>>,
    best: Vec<[f64; 3]>,
}

fn is_seed_dir(dir: &Path) -> bool {
    dir.join("history.csv").is_file() && dir.join("snapshots.csv").is_file()
}

/// Seed folders named by the inputs, in a stable order.
fn seed_dirs(inputs: &[PathBuf]) -> Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    for input in inputs {
        let parent = input
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "run".into());
        if is_seed_dir(input) {
            out.push((parent, input.clone()));
            continue;
        }
        let mut found: Vec<PathBuf> = fs::read_dir(input)
            .with_context(|| format!("reading {}", input.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| is_seed_dir(p))
            .collect();
        found.sort();
        for dir in found {
            let name = dir.file_name().expect("listed entry").to_string_lossy().into_owned();
            out.push((format!("{parent}_{name}"), dir));
        }
    }
    if out.is_empty() {
        bail!("no run output found (expected history.csv and snapshots.csv)");
    }
    Ok(out)
}

pub fn cmd_metrics(a: &MetricsArgs) -> Result<()> {
    let runs: Vec<SeedRun> = seed_dirs(&a.runs)?
        .into_iter()
        .map(|(label, dir)| {
            Ok(SeedRun {
                label,
                snapshots: io::read_snapshots(&dir.join("snapshots.csv"))?,
                best: io::read_history(&dir.join("history.csv"))?,
            })
        })
        .collect::<Result<_>>()?;
    for r in &runs {
        if r.snapshots.is_empty() || r.snapshots.len() != r.best.len() {
            bail!("{}: history and snapshots disagree in length", r.label);
        }
    }

    let finals: Vec<&[ObjectiveVector]> = runs.iter().map(|r| r.snapshots.last().expect("checked").as_slice()).collect();
    let reference = reference_front(finals);
    info!("reference front of {} points from {} runs", reference.len(), runs.len());
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;

    for r in &runs {
        let igd = igd_series(&r.snapshots, &reference)?;
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["iter", "igd"])?;
        for (t, v) in igd.iter().enumerate() {
            w.write_record([(t + 1).to_string(), v.to_string()])?;
        }
        io::write_atomic(&a.out.join(format!("{}_igd.csv", r.label)), &w.into_inner()?)?;

        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["iter", "acr_f1", "acr_f2", "acr_f3"])?;
        if r.best.len() >= 2 {
            for (t, row) in acr(&r.best)?.iter().enumerate() {
                w.write_record([(t + 2).to_string(), row[0].to_string(), row[1].to_string(), row[2].to_string()])?;
            }
        }
        io::write_atomic(&a.out.join(format!("{}_acr.csv", r.label)), &w.into_inner()?)?;
    }
    println!("metrics for {} runs written to {}", runs.len(), a.out.display());
    Ok(())
}
