//! CSV and manifest files shared by the subcommands.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use uavcb::optimizer::RunHistory;
use uavcb::problem::{Layout, ObjectiveVector, SolutionVector};
use uavcb::scenario::ScenarioConfig;

pub const OBJECTIVE_COLUMNS: [&str; 4] = ["f1_db", "f2_db", "f3_j", "violation_m"];

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().context("output path has no file name")?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    {
        let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn csv_bytes(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(w.into_inner()?)
}

fn objective_fields(o: &ObjectiveVector) -> [String; 4] {
    [o.f1, o.f2, o.f3, o.violation].map(|v| v.to_string())
}

fn parse_f64(s: &str, path: &Path, line: usize) -> Result<f64> {
    s.trim()
        .parse()
        .with_context(|| format!("{}:{line}: not a number: {s:?}", path.display()))
}

fn open_csv(path: &Path) -> Result<csv::Reader<fs::File>> {
    csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))
}

pub fn archive_header(layout: Layout) -> Vec<String> {
    let mut h = vec!["index".to_string()];
    h.extend(layout.variable_names());
    h.extend(OBJECTIVE_COLUMNS.map(String::from));
    h
}

pub fn write_archive(path: &Path, layout: Layout, entries: &[(SolutionVector, ObjectiveVector)]) -> Result<()> {
    let rows = entries.iter().enumerate().map(|(i, (s, o))| {
        let mut row = vec![i.to_string()];
        row.extend(s.values().iter().map(|v| v.to_string()));
        row.extend(objective_fields(o));
        row
    });
    write_atomic(path, &csv_bytes(&archive_header(layout), rows)?)
}

pub fn read_archive(path: &Path, layout: Layout) -> Result<Vec<(SolutionVector, ObjectiveVector)>> {
    let mut r = open_csv(path)?;
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if header != archive_header(layout) {
        bail!(
            "{}: columns do not match a {}+{} UAV layout",
            path.display(),
            layout.n_ur,
            layout.n_uj
        );
    }
    let dim = layout.dim();
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let nums: Vec<f64> = rec
            .iter()
            .skip(1)
            .map(|s| parse_f64(s, path, line + 2))
            .collect::<Result<_>>()?;
        let sol = SolutionVector::from_values(layout, nums[..dim].to_vec())?;
        let o = &nums[dim..];
        out.push((sol, ObjectiveVector::new(o[0], o[1], o[2], o[3])));
    }
    Ok(out)
}

pub fn write_history(path: &Path, h: &RunHistory) -> Result<()> {
    let header = ["iter", "best_f1_db", "best_f2_db", "best_f3_j", "archive_size"].map(String::from);
    let rows = h.best.iter().zip(&h.archive_sizes).enumerate().map(|(t, (b, n))| {
        vec![
            (t + 1).to_string(),
            b[0].to_string(),
            b[1].to_string(),
            b[2].to_string(),
            n.to_string(),
        ]
    });
    write_atomic(path, &csv_bytes(&header, rows)?)
}

pub fn read_history(path: &Path) -> Result<Vec<[f64; 3]>> {
    let mut r = open_csv(path)?;
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 5 {
            bail!("{}:{}: expected 5 columns", path.display(), line + 2);
        }
        let v = |k: usize| parse_f64(&rec[k], path, line + 2);
        out.push([v(1)?, v(2)?, v(3)?]);
    }
    Ok(out)
}

pub fn write_snapshots(path: &Path, h: &RunHistory) -> Result<()> {
    let mut header = vec!["iter".to_string(), "entry".to_string()];
    header.extend(OBJECTIVE_COLUMNS.map(String::from));
    let rows = h.snapshots.iter().enumerate().flat_map(|(t, snap)| {
        snap.iter().enumerate().map(move |(i, o)| {
            let mut row = vec![(t + 1).to_string(), i.to_string()];
            row.extend(objective_fields(o));
            row
        })
    });
    write_atomic(path, &csv_bytes(&header, rows)?)
}

/// Archive objectives per iteration, in iteration order.
pub fn read_snapshots(path: &Path) -> Result<Vec<Vec<ObjectiveVector>>> {
    let mut r = open_csv(path)?;
    let mut out: Vec<Vec<ObjectiveVector>> = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 6 {
            bail!("{}:{}: expected 6 columns", path.display(), line + 2);
        }
        let iter: usize = rec[0]
            .parse()
            .with_context(|| format!("{}:{}: bad iteration", path.display(), line + 2))?;
        let v = |k: usize| parse_f64(&rec[k], path, line + 2);
        let o = ObjectiveVector::new(v(2)?, v(3)?, v(4)?, v(5)?);
        if iter == out.len() + 1 {
            out.push(Vec::new());
        } else if iter != out.len() {
            bail!("{}:{}: iterations out of order", path.display(), line + 2);
        }
        out.last_mut().expect("pushed above").push(o);
    }
    Ok(out)
}

/// Enough to rerun a command and get byte-identical data files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: Vec<String>,
    pub config_path: Option<String>,
    pub algorithm: String,
    pub seeds: Vec<u64>,
    pub output_dir: String,
    pub fine: bool,
    pub started_unix_s: u64,
    pub wall_clock_s: f64,
    pub config: ScenarioConfig,
}

pub fn write_manifest(path: &Path, m: &RunManifest) -> Result<()> {
    let mut text = serde_json::to_string_pretty(m)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn read_manifest(path: &Path) -> Result<RunManifest> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The config recorded by `run` for an archive at `<out>/seed_<s>/archive.csv`.
pub fn config_beside_archive(archive: &Path) -> Result<Option<ScenarioConfig>> {
    let Some(manifest) = archive.parent().and_then(Path::parent).map(|d| d.join("manifest.json")) else {
        return Ok(None);
    };
    if !manifest.is_file() {
        return Ok(None);
    }
    let config = read_manifest(&manifest)?.config;
    config.validate().with_context(|| format!("invalid config in {}", manifest.display()))?;
    Ok(Some(config))
}
