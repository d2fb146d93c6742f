use anyhow::Result;
use uavcb::baselines::{eval_multihop, eval_non_cb, eval_single_cb, MultihopConfig};
use uavcb::problem::{ObjectiveVector, Problem};
use uavcb::scenario::initial_positions;

use crate::args::{BaselineArgs, BaselineMode};
use crate::gainmap::select_entry;
use crate::io;

pub const BASELINE_HEADER: [&str; 6] = ["mode", "f1_db", "f2_db", "f3_j", "violation_m", "delivered"];

pub fn cmd_baseline(a: &BaselineArgs) -> Result<()> {
    let config = a.scenario.load_or(|| match &a.archive {
        Some(path) => io::config_beside_archive(path),
        None => Ok(None),
    })?;
    let hover = initial_positions(&config, config.opt.seed)?;
    let problem = Problem::new(config, hover)?;
    let (name, objectives, delivered): (&str, ObjectiveVector, bool) = match a.mode {
        BaselineMode::NonCb => ("non-cb", eval_non_cb(&problem)?, true),
        BaselineMode::SingleCb => {
            let deployment = match &a.archive {
                Some(path) => select_entry(path, problem.layout, a.index)?.1,
                None => problem.hover_solution(),
            };
            ("single-cb", eval_single_cb(&problem, &deployment)?, true)
        }
        BaselineMode::Multihop => {
            let mh = MultihopConfig {
                hop_count: a.hops,
                hop_altitude: a.hop_altitude,
                gamma_th_db: a.gamma_th,
            };
            let report = eval_multihop(&problem, &mh)?;
            ("multihop", report.objectives, report.delivered)
        }
    };

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BASELINE_HEADER)?;
    let o = objectives;
    w.write_record([
        name.to_string(),
        o.f1.to_string(),
        o.f2.to_string(),
        o.f3.to_string(),
        o.violation.to_string(),
        delivered.to_string(),
    ])?;
    let bytes = w.into_inner()?;
    match &a.out {
        Some(path) => io::write_atomic(path, &bytes)?,
        None => print!("{}", String::from_utf8(bytes)?),
    }
    Ok(())
}
