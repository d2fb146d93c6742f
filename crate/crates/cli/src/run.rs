use std::fs;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use log::info;
use uavcb::metrics::reference_front;
use uavcb::optimizer::{run, Algorithm};
use uavcb::problem::{ObjectiveVector, Problem, SolutionVector};
use uavcb::scenario::initial_positions;

use crate::args::RunArgs;
use crate::io::{self, RunManifest};

pub fn cmd_run(a: &RunArgs) -> Result<()> {
    let mut config = a.scenario.load()?;
    if let Some(t) = a.iters {
        config.opt.t_max = t;
    }
    if let Some(n) = a.pop {
        config.opt.n_pop = n;
    }
    config.validate().context("invalid settings")?;
    if a.seeds.is_empty() {
        bail!("no seeds given");
    }
    let algorithm: Algorithm = a.algo.into();

    let started = Instant::now();
    let started_unix_s = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let hover = initial_positions(&config, config.opt.seed)?;
    let problem = Problem::new(config.clone(), hover.clone())?;
    let fine = if a.fine {
        Some(Problem::with_quadrature(config.clone(), hover, config.opt.report_quad)?)
    } else {
        None
    };
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;

    let mut pool: Vec<(u64, SolutionVector, ObjectiveVector)> = Vec::new();
    for &seed in &a.seeds {
        info!("{} seed {seed}: {} iterations", algorithm.name(), config.opt.t_max);
        let result = run(&problem, algorithm, seed)?;
        let mut entries: Vec<(SolutionVector, ObjectiveVector)> = result
            .archive
            .into_entries()
            .into_iter()
            .map(|e| (e.solution, e.objectives))
            .collect();
        if let Some(fine) = &fine {
            for (s, o) in entries.iter_mut() {
                *o = fine.evaluate_penalized(s)?;
            }
        }
        let dir = a.out.join(format!("seed_{seed}"));
        fs::create_dir_all(&dir)?;
        io::write_archive(&dir.join("archive.csv"), problem.layout, &entries)?;
        io::write_history(&dir.join("history.csv"), &result.history)?;
        io::write_snapshots(&dir.join("snapshots.csv"), &result.history)?;
        pool.extend(entries.into_iter().map(|(s, o)| (seed, s, o)));
    }

    let objs: Vec<ObjectiveVector> = pool.iter().map(|p| p.2).collect();
    let front = reference_front([objs.as_slice()]);
    let mut pooled: Vec<(u64, &SolutionVector, &ObjectiveVector)> = Vec::new();
    for (seed, s, o) in &pool {
        if front.contains(o) && !pooled.iter().any(|p| p.2 == o) {
            pooled.push((*seed, s, o));
        }
    }
    write_pool(&a.out.join("pool.csv"), problem.layout, &pooled)?;

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: std::env::args().collect(),
        config_path: a.scenario.config.as_ref().map(|p| p.display().to_string()),
        algorithm: algorithm.name().to_string(),
        seeds: a.seeds.clone(),
        output_dir: a.out.display().to_string(),
        fine: a.fine,
        started_unix_s,
        wall_clock_s: started.elapsed().as_secs_f64(),
        config,
    };
    io::write_manifest(&a.out.join("manifest.json"), &manifest)?;
    println!(
        "{} seeds -> {} (pool of {} solutions)",
        a.seeds.len(),
        a.out.display(),
        pooled.len()
    );
    Ok(())
}

fn write_pool(
    path: &std::path::Path,
    layout: uavcb::problem::Layout,
    rows: &[(u64, &SolutionVector, &ObjectiveVector)],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["seed".to_string()];
    header.extend(io::archive_header(layout));
    w.write_record(&header)?;
    for (i, (seed, s, o)) in rows.iter().enumerate() {
        let mut row = vec![seed.to_string(), i.to_string()];
        row.extend(s.values().iter().map(|v| v.to_string()));
        row.extend([o.f1, o.f2, o.f3, o.violation].map(|v| v.to_string()));
        w.write_record(&row)?;
    }
    io::write_atomic(path, &w.into_inner()?)
}
