use rand::Rng;

use crate::problem::{Problem, SolutionVector};

/// One step of the Tent map with breakpoint `a`.
pub fn tent_map(z: f64, a: f64) -> f64 {
    if z <= a {
        z / a
    } else {
        (1.0 - z) / (1.0 - a)
    }
}

/// Tent step that escapes the absorbing endpoints: a result of exactly 0 or 1
/// is replaced by a fresh uniform draw.
pub fn tent_next<R: Rng + ?Sized>(z: f64, a: f64, rng: &mut R) -> f64 {
    let next = tent_map(z, a);
    if next <= 0.0 || next >= 1.0 {
        fresh_unit(rng)
    } else {
        next
    }
}

fn fresh_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Population initialized dimension by dimension from independent Tent
/// sequences, each mapped affinely onto that variable's bounds.
pub fn chaotic_init<R: Rng + ?Sized>(
    problem: &Problem,
    n_pop: usize,
    tent_a: f64,
    rng: &mut R,
) -> Vec<SolutionVector> {
    let dim = problem.layout.dim();
    let b = &problem.bounds;
    let mut values = vec![vec![0.0; dim]; n_pop];
    for d in 0..dim {
        let mut z = fresh_unit(rng);
        for row in values.iter_mut() {
            z = tent_next(z, tent_a, rng);
            row[d] = b.lower[d] + z * b.span(d);
        }
    }
    finish(problem, values)
}

/// Population drawn uniformly inside the bounds.
pub fn uniform_init<R: Rng + ?Sized>(problem: &Problem, n_pop: usize, rng: &mut R) -> Vec<SolutionVector> {
    let dim = problem.layout.dim();
    let b = &problem.bounds;
    let values = (0..n_pop)
        .map(|_| (0..dim).map(|d| b.lower[d] + rng.random::<f64>() * b.span(d)).collect())
        .collect();
    finish(problem, values)
}

fn finish(problem: &Problem, values: Vec<Vec<f64>>) -> Vec<SolutionVector> {
    values
        .into_iter()
        .map(|v| {
            let sol = SolutionVector::from_values(problem.layout, v).expect("dimension from layout");
            problem.repair(&sol)
        })
        .collect()
}

/// Threshold gating the position overlays: falls from 0.5 to 0 over the
/// first half of the run and climbs back to 0.5 over the second.
pub fn zeta(t: usize, t_max: usize) -> f64 {
    let ratio = t as f64 / t_max as f64;
    if 2 * t < t_max {
        0.5 - ratio
    } else {
        ratio - 0.5
    }
}

/// Linearly accelerated switch between exploration and exploitation.
pub fn moa(t: usize, t_max: usize, min: f64, max: f64) -> f64 {
    min + t as f64 * (max - min) / t_max as f64
}
