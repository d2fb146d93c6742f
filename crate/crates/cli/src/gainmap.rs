use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use uavcb::channel::{ArraySpec, GainMap, SphereGrid};
use uavcb::metrics::knee_index;
use uavcb::problem::{Layout, ObjectiveVector, SolutionVector};

use crate::args::GainmapArgs;
use crate::io;

/// Picks `index` from an archive file, or its knee solution.
pub fn select_entry(path: &Path, layout: Layout, index: Option<usize>) -> Result<(usize, SolutionVector)> {
    let entries = io::read_archive(path, layout)?;
    let idx = match index {
        Some(i) => i,
        None => {
            let objs: Vec<ObjectiveVector> = entries.iter().map(|e| e.1).collect();
            knee_index(&objs).with_context(|| format!("{} is empty", path.display()))?
        }
    };
    let (sol, _) = entries.into_iter().nth(idx).with_context(|| {
        format!("index {idx} is out of range for {}", path.display())
    })?;
    Ok((idx, sol))
}

fn write_map(spec: &ArraySpec, eta: f64, grid: &SphereGrid, path: &Path) -> Result<()> {
    let map = GainMap::compute(spec, eta, grid).with_context(|| format!("computing {}", path.display()))?;
    let mut buf = Vec::new();
    map.write_csv(&mut buf)?;
    io::write_atomic(path, &buf)
}

pub fn cmd_gainmap(a: &GainmapArgs) -> Result<()> {
    let config = a.scenario.load_or(|| io::config_beside_archive(&a.archive))?;
    let layout = Layout::new(config.n_ur, config.n_uj);
    let (idx, sol) = select_entry(&a.archive, layout, a.index)?;
    let lambda = config.rf.wavelength();
    let grid = SphereGrid::new(config.opt.report_quad);
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    write_map(&sol.relay_array(lambda)?, config.rf.eta, &grid, &a.out.join("relay_gain.csv"))?;
    write_map(&sol.jammer_array(lambda)?, config.rf.eta, &grid, &a.out.join("jammer_gain.csv"))?;
    println!("entry {idx}: gain maps written to {}", a.out.display());
    Ok(())
}
