use rand::Rng;

use crate::error::{Error, Result};
use crate::problem::{dominates, ObjectiveVector, Problem, SolutionVector, VarBounds};
use crate::scenario::OptimizerParams;

use super::archive::ParetoArchive;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sex {
    Male,
    Female,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mayfly {
    pub position: SolutionVector,
    pub velocity: Vec<f64>,
    pub objectives: ObjectiveVector,
    pub pbest: SolutionVector,
    pub pbest_objectives: ObjectiveVector,
    pub sex: Sex,
}

impl Mayfly {
    pub fn new(position: SolutionVector, objectives: ObjectiveVector, sex: Sex) -> Self {
        let dim = position.values().len();
        Self {
            pbest: position.clone(),
            position,
            velocity: vec![0.0; dim],
            objectives,
            pbest_objectives: objectives,
            sex,
        }
    }

    /// Adopts a newly evaluated position; the personal best only moves to a
    /// strictly dominating point.
    pub fn settle(&mut self, position: SolutionVector, objectives: ObjectiveVector) {
        self.position = position;
        self.objectives = objectives;
        if dominates(&objectives, &self.pbest_objectives) {
            self.pbest = self.position.clone();
            self.pbest_objectives = objectives;
        }
    }
}

/// Movement and mating coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MayflyParams {
    pub g_inertia: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub beta: f64,
    pub dance_d: f64,
    pub walk_fl: f64,
    pub v_max_frac: f64,
}

impl From<&OptimizerParams> for MayflyParams {
    fn from(o: &OptimizerParams) -> Self {
        Self {
            g_inertia: o.g_inertia,
            a1: o.a1,
            a2: o.a2,
            a3: o.a3,
            beta: o.beta,
            dance_d: o.dance_d,
            walk_fl: o.walk_fl,
            v_max_frac: o.v_max_frac,
        }
    }
}

/// RMS distance in range-normalized coordinates, so the attraction
/// `exp(-beta r^2)` does not vanish on kilometer-scale variables.
fn normalized_distance(a: &[f64], b: &[f64], bounds: &VarBounds) -> f64 {
    let n = a.len() as f64;
    let ss: f64 = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(k, (x, y))| {
            let span = bounds.span(k);
            if span > 0.0 {
                ((x - y) / span).powi(2)
            } else {
                0.0
            }
        })
        .sum();
    (ss / n).sqrt()
}

/// Uniform-blend crossover: `L m + (1 - L) f` and its mirror, per dimension.
pub fn crossover(male: &[f64], female: &[f64], blend: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let a = male
        .iter()
        .zip(female)
        .zip(blend)
        .map(|((m, f), l)| l * m + (1.0 - l) * f)
        .collect();
    let b = male
        .iter()
        .zip(female)
        .zip(blend)
        .map(|((m, f), l)| l * f + (1.0 - l) * m)
        .collect();
    (a, b)
}

/// Index of the male not dominated by any other male; lowest index wins ties.
fn best_male(pop: &[Mayfly], males: usize) -> usize {
    (0..males)
        .find(|&i| !(0..males).any(|j| dominates(&pop[j].objectives, &pop[i].objectives)))
        .unwrap_or(0)
}

/// One mayfly generation. `pop` holds males in its first half and their
/// paired females in the second. Males are pulled toward their personal best
/// and a roulette-drawn archive elite (the best male dances instead); a female
/// follows her mate when he dominates her and walks randomly otherwise.
/// Positions are moved and repaired in place; the returned offspring (two per
/// pair, repaired) still need evaluation.
pub fn mayfly_step<R: Rng + ?Sized>(
    pop: &mut [Mayfly],
    archive: &ParetoArchive,
    params: &MayflyParams,
    problem: &Problem,
    rng: &mut R,
) -> Result<Vec<SolutionVector>> {
    if archive.is_empty() {
        return Err(Error::EmptyArchive);
    }
    let bounds = &problem.bounds;
    let dim = problem.layout.dim();
    let half = pop.len() / 2;
    let dancer = best_male(pop, half);

    for i in 0..pop.len() {
        let new_v: Vec<f64> = {
            let fly = &pop[i];
            let x = fly.position.values();
            let v = &fly.velocity;
            if i < half {
                if i == dancer {
                    (0..dim)
                        .map(|k| params.g_inertia * v[k] + params.dance_d * bounds.span(k) * rng.random_range(-1.0..=1.0))
                        .collect()
                } else {
                    let gbest = archive.roulette_elite(rng)?.solution.values();
                    let pbest = fly.pbest.values();
                    let rp = normalized_distance(pbest, x, bounds);
                    let rg = normalized_distance(gbest, x, bounds);
                    let cp = params.a1 * (-params.beta * rp * rp).exp();
                    let cg = params.a2 * (-params.beta * rg * rg).exp();
                    (0..dim)
                        .map(|k| params.g_inertia * v[k] + cp * (pbest[k] - x[k]) + cg * (gbest[k] - x[k]))
                        .collect()
                }
            } else {
                let mate = &pop[i - half];
                if dominates(&mate.objectives, &fly.objectives) {
                    let xm = mate.position.values();
                    let r = normalized_distance(xm, x, bounds);
                    let c = params.a3 * (-params.beta * r * r).exp();
                    (0..dim)
                        .map(|k| params.g_inertia * v[k] + c * (xm[k] - x[k]))
                        .collect()
                } else {
                    (0..dim)
                        .map(|k| params.g_inertia * v[k] + params.walk_fl * bounds.span(k) * rng.random_range(-1.0..=1.0))
                        .collect()
                }
            }
        };
        let fly = &mut pop[i];
        for (k, (v, nv)) in fly.velocity.iter_mut().zip(new_v).enumerate() {
            let vmax = params.v_max_frac * bounds.span(k);
            *v = if vmax > 0.0 { nv.clamp(-vmax, vmax) } else { 0.0 };
        }
        for (x, v) in fly.position.values_mut().iter_mut().zip(&fly.velocity) {
            *x += v;
        }
        problem.repair_in_place(&mut fly.position);
    }

    let mut offspring = Vec::with_capacity(2 * half);
    for i in 0..half {
        let blend: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
        let (a, b) = crossover(pop[i].position.values(), pop[i + half].position.values(), &blend);
        for values in [a, b] {
            let sol = SolutionVector::from_values(problem.layout, values)?;
            offspring.push(problem.repair(&sol));
        }
    }
    Ok(offspring)
}
