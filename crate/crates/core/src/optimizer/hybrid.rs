//! Segment-wise overlays applied after each mayfly step: a whale-style update
//! of the jammer cluster and an arithmetic-operator update of the relay
//! cluster. Both follow the printed update rules literally, including the
//! previous position being added to the whale displacement; out-of-box
//! results are left to the caller's repair.

use std::f64::consts::PI;

use rand::Rng;

use crate::problem::{Segment, SolutionVector, VarBounds};
use crate::scenario::OptimizerParams;

/// Random numbers consumed by one whale update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WoaDraws {
    /// Branch selector: shrinking encirclement below 0.5, spiral otherwise.
    pub p: f64,
    /// Uniform draw behind the shrink coefficient `l = 2 a r - a`.
    pub r: f64,
    pub r2: f64,
    /// Spiral parameter in `[-1, 1]`.
    pub l_spiral: f64,
}

impl WoaDraws {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            p: rng.random(),
            r: rng.random(),
            r2: rng.random(),
            l_spiral: rng.random_range(-1.0..=1.0),
        }
    }
}

fn is_first_half(t: usize, t_max: usize) -> bool {
    2 * t < t_max
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Updates the jammer segment of `sol` in place.
///
/// The altitudes always move relative to the elite's; in the first half of
/// the run the horizontal coordinates may encircle the cluster centroid, and
/// in the second half the whole position may be replaced by the elite's with
/// the currents moved relative to the elite's currents. Both gated moves
/// require `r1 < zeta`.
#[allow(clippy::too_many_arguments)]
pub fn woa_update_jammer(
    sol: &mut SolutionVector,
    elite: &SolutionVector,
    t: usize,
    t_max: usize,
    zeta: f64,
    r1: f64,
    spiral_b: f64,
    d: WoaDraws,
) {
    let a = 2.0 * (1.0 - t as f64 / t_max as f64);
    let l = 2.0 * a * d.r - a;
    let h = (spiral_b * d.l_spiral).exp() * (2.0 * PI * d.l_spiral).cos();
    let shrink = d.p < 0.5;
    // x + target - l |2 r2 target - x|  or  x + |target - x| H + target
    let whale = |x: f64, target: f64| {
        if shrink {
            x + target - l * (2.0 * d.r2 * target - x).abs()
        } else {
            x + (target - x).abs() * h + target
        }
    };

    let elite_z = elite.segment(Segment::JammerZ).to_vec();
    for (z, e) in sol.segment_mut(Segment::JammerZ).iter_mut().zip(&elite_z) {
        *z = whale(*z, *e);
    }

    if r1 >= zeta {
        return;
    }
    if is_first_half(t, t_max) {
        for seg in [Segment::JammerX, Segment::JammerY] {
            let c = mean(sol.segment(seg));
            for x in sol.segment_mut(seg) {
                *x = whale(*x, c);
            }
        }
    } else {
        for seg in [Segment::JammerX, Segment::JammerY, Segment::JammerZ] {
            sol.segment_mut(seg).copy_from_slice(elite.segment(seg));
        }
        let elite_i = elite.segment(Segment::JammerI).to_vec();
        for (i, e) in sol.segment_mut(Segment::JammerI).iter_mut().zip(&elite_i) {
            *i = if shrink {
                // The printed rule measures the elite current against itself.
                *i + e - l * (2.0 * d.r2 * e - e).abs()
            } else {
                *i + (e - *i).abs() * h + e
            };
        }
    }
}

/// Constants of the arithmetic-operator relay update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AoaParams {
    pub alpha: f64,
    pub mu: f64,
    pub eps: f64,
}

impl From<&OptimizerParams> for AoaParams {
    fn from(o: &OptimizerParams) -> Self {
        Self {
            alpha: o.aoa_alpha,
            mu: o.aoa_mu,
            eps: o.aoa_eps,
        }
    }
}

impl AoaParams {
    /// Math optimizer probability `1 - (t / t_max)^(1 / alpha)`.
    pub fn mop(&self, t: usize, t_max: usize) -> f64 {
        1.0 - (t as f64 / t_max as f64).powf(1.0 / self.alpha)
    }
}

/// Updates the relay segment of `sol` in place.
///
/// With `M = MOP(t)` and `S = (ub - lb) mu + lb` for the segment at hand, the
/// exploration operators (`r1 > moa`) give `base / (M S + eps)` or
/// `base M S` (split by `r3`) and the exploitation operators give
/// `base - M S` or `base + M S` (split by `r4`). Altitudes always move from
/// the elite's; in the first half of the run the horizontal coordinates may
/// collapse around the cluster centroid, and in the second half the position
/// may be replaced by the elite's with the currents moved from the elite's.
/// Both gated moves require `r1 < zeta`.
#[allow(clippy::too_many_arguments)]
pub fn aoa_update_relay(
    sol: &mut SolutionVector,
    elite: &SolutionVector,
    bounds: &VarBounds,
    t: usize,
    t_max: usize,
    zeta: f64,
    moa: f64,
    params: &AoaParams,
    r1: f64,
    r3: f64,
    r4: f64,
) {
    let layout = sol.layout();
    let m = params.mop(t, t_max);
    let explore = r1 > moa;
    let step = |base: f64, seg: Segment| {
        let (lb, ub) = bounds.segment_bounds(layout, seg);
        let s = (ub - lb) * params.mu + lb;
        match (explore, r3 < 0.5, r4 < 0.5) {
            (true, true, _) => base / (m * s + params.eps),
            (true, false, _) => base * m * s,
            (false, _, true) => base - m * s,
            (false, _, false) => base + m * s,
        }
    };

    let elite_z = elite.segment(Segment::RelayZ).to_vec();
    for (z, e) in sol.segment_mut(Segment::RelayZ).iter_mut().zip(&elite_z) {
        *z = step(*e, Segment::RelayZ);
    }

    if r1 >= zeta {
        return;
    }
    if is_first_half(t, t_max) {
        for seg in [Segment::RelayX, Segment::RelayY] {
            let c = mean(sol.segment(seg));
            let v = step(c, seg);
            sol.segment_mut(seg).fill(v);
        }
    } else {
        for seg in [Segment::RelayX, Segment::RelayY, Segment::RelayZ] {
            sol.segment_mut(seg).copy_from_slice(elite.segment(seg));
        }
        let elite_i = elite.segment(Segment::RelayI).to_vec();
        for (i, e) in sol.segment_mut(Segment::RelayI).iter_mut().zip(&elite_i) {
            *i = step(*e, Segment::RelayI);
        }
    }
}
