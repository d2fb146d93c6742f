use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::problem::{dominates, ObjectiveVector, Problem, SolutionVector};

use super::archive::{ArchiveEntry, ParetoArchive};
use super::hybrid::{aoa_update_relay, woa_update_jammer, AoaParams, WoaDraws};
use super::mayfly::{mayfly_step, Mayfly, MayflyParams, Sex};
use super::operators::{chaotic_init, moa, uniform_init, zeta};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Conventional multi-objective mayfly algorithm.
    Moma,
    /// Chaotic initialization plus whale/arithmetic segment overlays.
    Imoma,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Moma => "moma",
            Algorithm::Imoma => "imoma",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "moma" => Ok(Algorithm::Moma),
            "imoma" => Ok(Algorithm::Imoma),
            other => Err(format!("unknown algorithm `{other}` (expected imoma or moma)")),
        }
    }
}

/// Per-iteration record of a run; every vector has `t_max` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RunHistory {
    pub seed: u64,
    /// Best archived `(f1, f2, f3)` per iteration: max f1, min f2, min f3.
    /// Taken over feasible entries whenever the archive holds any.
    pub best: Vec<[f64; 3]>,
    pub archive_sizes: Vec<usize>,
    /// Objective evaluations performed in each iteration.
    pub evaluations: Vec<usize>,
    /// Archive dominance checks performed in each iteration.
    pub comparisons: Vec<u64>,
    /// Archive objectives after each iteration's update.
    pub snapshots: Vec<Vec<ObjectiveVector>>,
}

impl RunHistory {
    fn new(seed: u64, t_max: usize) -> Self {
        Self {
            seed,
            best: Vec::with_capacity(t_max),
            archive_sizes: Vec::with_capacity(t_max),
            evaluations: Vec::with_capacity(t_max),
            comparisons: Vec::with_capacity(t_max),
            snapshots: Vec::with_capacity(t_max),
        }
    }

    pub fn len(&self) -> usize {
        self.best.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best.is_empty()
    }
}

/// Best `(max f1, min f2, min f3)` over a set of objective vectors,
/// restricted to feasible ones when any exist.
pub(crate) fn best_of(objs: &[ObjectiveVector]) -> [f64; 3] {
    let any_feasible = objs.iter().any(|o| o.is_feasible());
    let pool = objs.iter().filter(|o| !any_feasible || o.is_feasible());
    pool.fold([f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY], |b, o| {
        [b[0].max(o.f1), b[1].min(o.f2), b[2].min(o.f3)]
    })
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub archive: ParetoArchive,
    pub history: RunHistory,
}

pub fn imoma_run(problem: &Problem, seed: u64) -> Result<RunResult> {
    run(problem, Algorithm::Imoma, seed)
}

pub fn moma_run(problem: &Problem, seed: u64) -> Result<RunResult> {
    run(problem, Algorithm::Moma, seed)
}

/// Runs `t_max` iterations. Each iteration evaluates the moved population
/// together with the previous generation's offspring (in parallel), lets a
/// dominating offspring replace its parent, updates personal bests and the
/// archive, then draws every random number for the next move on this thread.
/// Results depend only on `(problem, algorithm, seed)`.
pub fn run(problem: &Problem, algorithm: Algorithm, seed: u64) -> Result<RunResult> {
    let opt = &problem.config.opt;
    let t_max = opt.t_max;
    let n_pop = opt.n_pop;
    let half = n_pop / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mayfly_params = MayflyParams::from(opt);
    let aoa = AoaParams::from(opt);

    let initial = match algorithm {
        Algorithm::Imoma => chaotic_init(problem, n_pop, opt.tent_a, &mut rng),
        Algorithm::Moma => uniform_init(problem, n_pop, &mut rng),
    };

    let mut archive = ParetoArchive::new(opt.archive_capacity());
    let mut history = RunHistory::new(seed, t_max);
    let mut pop: Vec<Mayfly> = Vec::new();
    let mut pending_positions: Vec<SolutionVector> = initial;
    let mut pending_offspring: Vec<SolutionVector> = Vec::new();

    for t in 1..=t_max {
        let comparisons_before = archive.comparisons();

        let batch: Vec<SolutionVector> = pending_positions
            .iter()
            .chain(&pending_offspring)
            .cloned()
            .collect();
        let objs = problem.evaluate_batch(&batch)?;
        let (pos_objs, off_objs) = objs.split_at(pending_positions.len());

        if pop.is_empty() {
            pop = pending_positions
                .iter()
                .zip(pos_objs)
                .enumerate()
                .map(|(i, (s, &o))| Mayfly::new(s.clone(), o, if i < half { Sex::Male } else { Sex::Female }))
                .collect();
        } else {
            for (fly, (s, &o)) in pop.iter_mut().zip(pending_positions.iter().zip(pos_objs)) {
                fly.settle(s.clone(), o);
            }
        }
        // Offspring come in pairs: the first may replace male `i`, the
        // second female `i + half`.
        for (k, (child, &obj)) in pending_offspring.iter().zip(off_objs).enumerate() {
            let which = k / 2 + if k % 2 == 0 { 0 } else { half };
            let fly = &mut pop[which];
            if dominates(&obj, &fly.objectives) {
                fly.velocity.iter_mut().for_each(|v| *v = 0.0);
                fly.settle(child.clone(), obj);
            }
        }

        archive.update(
            batch
                .into_iter()
                .zip(objs.iter().copied())
                .map(|(solution, objectives)| ArchiveEntry { solution, objectives }),
        );

        let snapshot = archive.objectives();
        history.best.push(best_of(&snapshot));
        history.archive_sizes.push(archive.len());
        history.evaluations.push(pending_positions.len() + pending_offspring.len());
        history.comparisons.push(archive.comparisons() - comparisons_before);
        history.snapshots.push(snapshot);

        if t == t_max {
            break;
        }

        pending_offspring = mayfly_step(&mut pop, &archive, &mayfly_params, problem, &mut rng)?;

        if algorithm == Algorithm::Imoma {
            let z = zeta(t, t_max);
            let m = moa(t, t_max, opt.moa_min, opt.moa_max);
            for fly in pop.iter_mut() {
                let r1: f64 = rng.random();
                let r3: f64 = rng.random();
                let r4: f64 = rng.random();
                let elite_j = archive.roulette_elite(&mut rng)?.solution.clone();
                let draws = WoaDraws::sample(&mut rng);
                woa_update_jammer(&mut fly.position, &elite_j, t, t_max, z, r1, opt.woa_b, draws);
                let elite_r = archive.roulette_elite(&mut rng)?.solution.clone();
                aoa_update_relay(
                    &mut fly.position,
                    &elite_r,
                    &problem.bounds,
                    t,
                    t_max,
                    z,
                    m,
                    &aoa,
                    r1,
                    r3,
                    r4,
                );
                problem.repair_in_place(&mut fly.position);
            }
        }

        pending_positions = pop.iter().map(|f| f.position.clone()).collect();
    }

    Ok(RunResult { archive, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::operators::uniform_init;
    use crate::problem::non_dominated_indices;
    use crate::scenario::{initial_positions, QuadRes, ScenarioConfig};

    fn tiny(n_pop: usize, t_max: usize) -> Problem {
        let mut cfg = ScenarioConfig::smaller();
        cfg.n_ur = 3;
        cfg.n_uj = 2;
        cfg.opt.n_pop = n_pop;
        cfg.opt.t_max = t_max;
        cfg.opt.quad = QuadRes::new(16, 32);
        let hover = initial_positions(&cfg, 5).unwrap();
        Problem::new(cfg, hover).unwrap()
    }

    #[test]
    fn single_iteration_archives_initial_front() {
        let p = tiny(2, 1);
        let res = moma_run(&p, 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let init = uniform_init(&p, 2, &mut rng);
        let objs: Vec<_> = init.iter().map(|s| p.evaluate_penalized(s).unwrap()).collect();
        let mut expected: Vec<_> = non_dominated_indices(&objs).into_iter().map(|i| objs[i]).collect();
        expected.dedup();
        assert_eq!(res.archive.objectives(), expected);
        assert_eq!(res.history.len(), 1);
        assert_eq!(res.history.evaluations, vec![2]);
    }

    #[test]
    fn runs_are_reproducible() {
        let p = tiny(6, 8);
        for algo in [Algorithm::Imoma, Algorithm::Moma] {
            let a = run(&p, algo, 3).unwrap();
            let b = run(&p, algo, 3).unwrap();
            assert_eq!(a.history, b.history);
            assert_eq!(a.archive.objectives(), b.archive.objectives());
        }
    }

    #[test]
    fn archive_stays_non_dominated_and_bounded() {
        let p = tiny(8, 12);
        let res = imoma_run(&p, 9).unwrap();
        let n = p.config.opt.n_pop;
        for (t, snap) in res.history.snapshots.iter().enumerate() {
            assert!(snap.len() <= p.config.opt.archive_capacity());
            for a in snap {
                assert!(!snap.iter().any(|b| dominates(b, a)), "iteration {t}");
            }
            let cap = p.config.opt.archive_capacity();
            let bound = (cap + 2 * n) * 2 * n + (cap + 2 * n).pow(2);
            assert!(res.history.comparisons[t] as usize <= bound);
        }
        assert!(res.archive.is_mutually_non_dominated());
        for e in res.archive.entries() {
            assert_eq!(p.repair(&e.solution), e.solution);
        }
    }

    #[test]
    fn best_f1_never_regresses_when_feasible() {
        let p = tiny(8, 15);
        let res = imoma_run(&p, 21).unwrap();
        let feasible: Vec<bool> = res
            .history
            .snapshots
            .iter()
            .map(|s| s.iter().any(|o| o.is_feasible()))
            .collect();
        let first = feasible.iter().position(|&f| f).unwrap_or(feasible.len());
        for t in first.max(1)..res.history.len() {
            // A feasible archive can lose a best-objective holder only to a
            // point that dominates it, which can only improve the extreme.
            assert!(res.history.best[t][0] >= res.history.best[t - 1][0] - 1e-9 || t == first);
        }
    }

    #[test]
    fn algorithm_names_parse() {
        assert_eq!("imoma".parse::<Algorithm>().unwrap(), Algorithm::Imoma);
        assert_eq!("moma".parse::<Algorithm>().unwrap().name(), "moma");
        assert!("nsga".parse::<Algorithm>().is_err());
    }
}
