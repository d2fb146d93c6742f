//! The tri-objective deployment problem: solution layout, box repair,
//! objective evaluation and feasibility-aware Pareto dominance.

use std::ops::Range;

use rayon::prelude::*;

use crate::channel::{self, ArraySpec, GainPattern, SphereGrid};
use crate::energy;
use crate::error::{Error, Result};
use crate::geometry::{Bounds3, Point3};
use crate::scenario::{HoverPositions, QuadRes, ScenarioConfig};

/// SINR reported for a deployment whose relay array radiates nothing, dB.
pub const SILENT_RELAY_SINR_DB: f64 = -300.0;

/// Violation added to a deployment whose relay array radiates nothing.
pub const SILENT_RELAY_PENALTY: f64 = 1e9;

/// Variable segments of a flattened solution, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Segment {
    RelayX,
    RelayY,
    RelayZ,
    RelayI,
    JammerX,
    JammerY,
    JammerZ,
    JammerI,
}

impl Segment {
    pub const ALL: [Segment; 8] = [
        Segment::RelayX,
        Segment::RelayY,
        Segment::RelayZ,
        Segment::RelayI,
        Segment::JammerX,
        Segment::JammerY,
        Segment::JammerZ,
        Segment::JammerI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Segment::RelayX => "relay_x",
            Segment::RelayY => "relay_y",
            Segment::RelayZ => "relay_z",
            Segment::RelayI => "relay_i",
            Segment::JammerX => "jammer_x",
            Segment::JammerY => "jammer_y",
            Segment::JammerZ => "jammer_z",
            Segment::JammerI => "jammer_i",
        }
    }

    fn is_relay(self) -> bool {
        matches!(
            self,
            Segment::RelayX | Segment::RelayY | Segment::RelayZ | Segment::RelayI
        )
    }
}

/// Cluster sizes; fixes the flattened dimension `4 n_ur + 4 n_uj`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub n_ur: usize,
    pub n_uj: usize,
}

impl Layout {
    pub fn new(n_ur: usize, n_uj: usize) -> Self {
        Self { n_ur, n_uj }
    }

    pub fn dim(&self) -> usize {
        4 * (self.n_ur + self.n_uj)
    }

    pub fn range(&self, seg: Segment) -> Range<usize> {
        let r = self.n_ur;
        let j = self.n_uj;
        let start = match seg {
            Segment::RelayX => 0,
            Segment::RelayY => r,
            Segment::RelayZ => 2 * r,
            Segment::RelayI => 3 * r,
            Segment::JammerX => 4 * r,
            Segment::JammerY => 4 * r + j,
            Segment::JammerZ => 4 * r + 2 * j,
            Segment::JammerI => 4 * r + 3 * j,
        };
        let len = if seg.is_relay() { r } else { j };
        start..start + len
    }

    /// Column names in storage order, e.g. `relay_x_0`.
    pub fn variable_names(&self) -> Vec<String> {
        Segment::ALL
            .iter()
            .flat_map(|&s| self.range(s).enumerate().map(move |(k, _)| format!("{}_{k}", s.name())))
            .collect()
    }
}

/// One candidate deployment, flattened as relay X, Y, Z, I then jammer X, Y, Z, I.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionVector {
    layout: Layout,
    values: Vec<f64>,
}

impl SolutionVector {
    pub fn from_values(layout: Layout, values: Vec<f64>) -> Result<Self> {
        if values.len() != layout.dim() {
            return Err(Error::Dimension {
                expected: layout.dim(),
                got: values.len(),
            });
        }
        Ok(Self { layout, values })
    }

    pub fn from_parts(
        relay: &[Point3],
        relay_i: &[f64],
        jammer: &[Point3],
        jammer_i: &[f64],
    ) -> Result<Self> {
        let layout = Layout::new(relay.len(), jammer.len());
        if relay_i.len() != relay.len() || jammer_i.len() != jammer.len() {
            return Err(Error::Dimension {
                expected: relay.len() + jammer.len(),
                got: relay_i.len() + jammer_i.len(),
            });
        }
        let mut values = Vec::with_capacity(layout.dim());
        for (pts, currents) in [(relay, relay_i), (jammer, jammer_i)] {
            values.extend(pts.iter().map(|p| p.x));
            values.extend(pts.iter().map(|p| p.y));
            values.extend(pts.iter().map(|p| p.z));
            values.extend_from_slice(currents);
        }
        Ok(Self { layout, values })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn segment(&self, seg: Segment) -> &[f64] {
        &self.values[self.layout.range(seg)]
    }

    pub fn segment_mut(&mut self, seg: Segment) -> &mut [f64] {
        let r = self.layout.range(seg);
        &mut self.values[r]
    }

    fn points(&self, xs: Segment, ys: Segment, zs: Segment) -> Vec<Point3> {
        let (x, y, z) = (self.segment(xs), self.segment(ys), self.segment(zs));
        (0..x.len()).map(|k| Point3::new(x[k], y[k], z[k])).collect()
    }

    pub fn relay_positions(&self) -> Vec<Point3> {
        self.points(Segment::RelayX, Segment::RelayY, Segment::RelayZ)
    }

    pub fn jammer_positions(&self) -> Vec<Point3> {
        self.points(Segment::JammerX, Segment::JammerY, Segment::JammerZ)
    }

    pub fn relay_array(&self, wavelength: f64) -> Result<ArraySpec> {
        ArraySpec::new(
            self.relay_positions(),
            self.segment(Segment::RelayI).to_vec(),
            wavelength,
        )
    }

    pub fn jammer_array(&self, wavelength: f64) -> Result<ArraySpec> {
        ArraySpec::new(
            self.jammer_positions(),
            self.segment(Segment::JammerI).to_vec(),
            wavelength,
        )
    }
}

/// Objective values of one deployment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveVector {
    /// Bob's SINR, dB (maximized).
    pub f1: f64,
    /// Willie's SINR, dB (minimized).
    pub f2: f64,
    /// Fleet transit energy, J (minimized).
    pub f3: f64,
    /// Total pairwise separation deficit, m.
    pub violation: f64,
}

impl ObjectiveVector {
    pub fn new(f1: f64, f2: f64, f3: f64, violation: f64) -> Self {
        Self { f1, f2, f3, violation }
    }

    /// `(-f1, f2, f3)`, every component minimized.
    pub fn minimized(&self) -> [f64; 3] {
        [-self.f1, self.f2, self.f3]
    }

    pub fn is_feasible(&self) -> bool {
        self.violation <= 0.0
    }
}

/// Feasibility-first dominance: feasible beats infeasible, infeasible pairs
/// compare by violation, feasible pairs by Pareto dominance on `(-f1, f2, f3)`.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    match (a.is_feasible(), b.is_feasible()) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.violation < b.violation,
        (true, true) => pareto_dominates(&a.minimized(), &b.minimized()),
    }
}

/// Plain Pareto dominance for minimization.
pub fn pareto_dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Indices of the entries not dominated by any other entry.
pub fn non_dominated_indices(objs: &[ObjectiveVector]) -> Vec<usize> {
    (0..objs.len())
        .filter(|&i| !objs.iter().any(|o| dominates(o, &objs[i])))
        .collect()
}

/// Per-pair separation deficits and box-clip distances of a raw vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    /// `max(0, d_min - dist)` for every relay pair.
    pub relay_deficits: Vec<f64>,
    /// `max(0, d_min - dist)` for every jammer pair.
    pub jammer_deficits: Vec<f64>,
    /// `|x - clamp(x)|` per variable.
    pub box_clip: Vec<f64>,
}

impl ConstraintReport {
    pub fn separation_total(&self) -> f64 {
        self.relay_deficits.iter().chain(&self.jammer_deficits).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.relay_deficits
            .iter()
            .chain(&self.jammer_deficits)
            .chain(&self.box_clip)
            .all(|&d| d == 0.0)
    }
}

fn pair_deficits(points: &[Point3], d_min: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(points.len() * points.len().saturating_sub(1) / 2);
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            out.push((d_min - p.distance(*q)).max(0.0));
        }
    }
    out
}

/// Per-variable box bounds in storage order.
#[derive(Debug, Clone, PartialEq)]
pub struct VarBounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl VarBounds {
    pub fn new(layout: Layout, relay_box: &Bounds3, jammer_box: &Bounds3) -> Self {
        let mut lower = vec![0.0; layout.dim()];
        let mut upper = vec![0.0; layout.dim()];
        for seg in Segment::ALL {
            let r = match seg {
                Segment::RelayX => relay_box.x,
                Segment::RelayY => relay_box.y,
                Segment::RelayZ => relay_box.z,
                Segment::JammerX => jammer_box.x,
                Segment::JammerY => jammer_box.y,
                Segment::JammerZ => jammer_box.z,
                Segment::RelayI | Segment::JammerI => [0.0, 1.0],
            };
            for k in layout.range(seg) {
                lower[k] = r[0];
                upper[k] = r[1];
            }
        }
        Self { lower, upper }
    }

    pub fn span(&self, k: usize) -> f64 {
        self.upper[k] - self.lower[k]
    }

    /// `[lb, ub]` shared by every variable of a segment.
    pub fn segment_bounds(&self, layout: Layout, seg: Segment) -> (f64, f64) {
        let k = layout.range(seg).start;
        (self.lower[k], self.upper[k])
    }
}

/// A deployment problem instance: scenario, hover points and quadrature grid.
#[derive(Debug, Clone)]
pub struct Problem {
    pub config: ScenarioConfig,
    pub hover: HoverPositions,
    pub layout: Layout,
    pub bounds: VarBounds,
    grid: SphereGrid,
    grid_levels: Option<usize>,
}

impl Problem {
    pub fn new(config: ScenarioConfig, hover: HoverPositions) -> Result<Self> {
        let res = config.opt.quad;
        Self::with_quadrature(config, hover, res)
    }

    pub fn with_quadrature(config: ScenarioConfig, hover: HoverPositions, res: QuadRes) -> Result<Self> {
        if hover.relay.len() != config.n_ur {
            return Err(Error::Dimension {
                expected: config.n_ur,
                got: hover.relay.len(),
            });
        }
        if hover.jammer.len() != config.n_uj {
            return Err(Error::Dimension {
                expected: config.n_uj,
                got: hover.jammer.len(),
            });
        }
        let layout = Layout::new(config.n_ur, config.n_uj);
        let bounds = VarBounds::new(layout, &config.geometry.relay_box, &config.geometry.jammer_box);
        Ok(Self {
            config,
            hover,
            layout,
            bounds,
            grid: SphereGrid::new(res),
            grid_levels: None,
        })
    }

    /// Restricts repaired solutions to `levels` evenly spaced values per
    /// variable (both bounds included).
    pub fn with_grid_levels(mut self, levels: usize) -> Self {
        assert!(levels >= 2);
        self.grid_levels = Some(levels);
        self
    }

    pub fn grid_levels(&self) -> Option<usize> {
        self.grid_levels
    }

    pub fn sphere_grid(&self) -> &SphereGrid {
        &self.grid
    }

    /// The hover deployment: every UAV where it is, full excitation.
    pub fn hover_solution(&self) -> SolutionVector {
        SolutionVector::from_parts(
            &self.hover.relay,
            &vec![1.0; self.layout.n_ur],
            &self.hover.jammer,
            &vec![1.0; self.layout.n_uj],
        )
        .expect("hover layout matches config")
    }

    /// Clamps coordinates into their boxes and currents into `[0, 1]`.
    /// Separation is left to the violation term.
    pub fn repair(&self, sol: &SolutionVector) -> SolutionVector {
        let mut out = sol.clone();
        self.repair_in_place(&mut out);
        out
    }

    pub fn repair_in_place(&self, sol: &mut SolutionVector) {
        let b = &self.bounds;
        for (k, v) in sol.values_mut().iter_mut().enumerate() {
            let x = if v.is_nan() { b.lower[k] } else { v.clamp(b.lower[k], b.upper[k]) };
            *v = match self.grid_levels {
                Some(levels) => snap(x, b.lower[k], b.upper[k], levels),
                None => x,
            };
        }
    }

    pub fn constraint_report(&self, sol: &SolutionVector) -> ConstraintReport {
        let d_min = self.config.rf.d_min;
        let b = &self.bounds;
        ConstraintReport {
            relay_deficits: pair_deficits(&sol.relay_positions(), d_min),
            jammer_deficits: pair_deficits(&sol.jammer_positions(), d_min),
            box_clip: sol
                .values()
                .iter()
                .enumerate()
                .map(|(k, &v)| (v - v.clamp(b.lower[k], b.upper[k])).abs())
                .collect(),
        }
    }

    /// Objective values of a repaired solution. Fails with
    /// [`Error::ZeroPowerArray`] when every relay current is zero.
    pub fn evaluate(&self, sol: &SolutionVector) -> Result<ObjectiveVector> {
        let rf = &self.config.rf;
        let geo = &self.config.geometry;
        let lambda = rf.wavelength();
        let relay = sol.relay_array(lambda)?;
        let jammer = sol.jammer_array(lambda)?;
        let relay_pattern = GainPattern::new(&relay, rf.eta, &self.grid)?;
        let jammer_pattern = match GainPattern::new(&jammer, rf.eta, &self.grid) {
            Ok(p) => Some(p),
            Err(Error::ZeroPowerArray) => None,
            Err(e) => return Err(e),
        };
        let sinr_at = |vessel: Point3| -> Result<f64> {
            let (s, i) = channel::link_terms(&relay, &relay_pattern, &jammer, jammer_pattern.as_ref(), vessel, rf)?;
            Ok(channel::sinr_db_from_terms(s, i, rf.sigma2_w))
        };
        let f1 = sinr_at(geo.bob)?;
        let f2 = sinr_at(geo.willie)?;
        let f3 = self.fleet_energy(sol);
        let violation = self.constraint_report(sol).separation_total();
        Ok(ObjectiveVector::new(f1, f2, f3, violation))
    }

    /// Like [`Problem::evaluate`], but a silent relay array is scored as a
    /// heavily penalized infeasible point instead of an error.
    pub fn evaluate_penalized(&self, sol: &SolutionVector) -> Result<ObjectiveVector> {
        match self.evaluate(sol) {
            Err(Error::ZeroPowerArray) => Ok(ObjectiveVector::new(
                SILENT_RELAY_SINR_DB,
                SILENT_RELAY_SINR_DB,
                self.fleet_energy(sol),
                self.constraint_report(sol).separation_total() + SILENT_RELAY_PENALTY,
            )),
            other => other,
        }
    }

    /// Energy for every UAV to fly from its hover point to the deployment.
    pub fn fleet_energy(&self, sol: &SolutionVector) -> f64 {
        let e = &self.config.energy;
        let relay = energy::transit_legs(&self.hover.relay, &sol.relay_positions(), e);
        let jammer = energy::transit_legs(&self.hover.jammer, &sol.jammer_positions(), e);
        energy::fleet_energy(relay.iter().chain(&jammer), e)
    }

    /// Evaluates a batch in parallel; output order follows input order.
    pub fn evaluate_batch(&self, sols: &[SolutionVector]) -> Result<Vec<ObjectiveVector>> {
        sols.par_iter().map(|s| self.evaluate_penalized(s)).collect()
    }

    /// Every point of the `levels`-per-variable grid with its objectives.
    /// Meant for small layouts; the count is `levels^dim`.
    pub fn enumerate_grid(&self, levels: usize) -> Result<Vec<(SolutionVector, ObjectiveVector)>> {
        let dim = self.layout.dim();
        let total = levels
            .checked_pow(dim as u32)
            .expect("grid enumeration size overflows usize");
        (0..total)
            .into_par_iter()
            .map(|mut code| {
                let mut values = vec![0.0; dim];
                for (k, v) in values.iter_mut().enumerate() {
                    let level = code % levels;
                    code /= levels;
                    *v = level_value(self.bounds.lower[k], self.bounds.upper[k], level, levels);
                }
                let sol = SolutionVector::from_values(self.layout, values)?;
                let obj = self.evaluate_penalized(&sol)?;
                Ok((sol, obj))
            })
            .collect()
    }
}

fn level_value(lo: f64, hi: f64, level: usize, levels: usize) -> f64 {
    if level == levels - 1 {
        hi
    } else {
        lo + (hi - lo) * level as f64 / (levels - 1) as f64
    }
}

fn snap(x: f64, lo: f64, hi: f64, levels: usize) -> f64 {
    if hi <= lo {
        return lo;
    }
    let level = ((x - lo) / (hi - lo) * (levels - 1) as f64).round() as usize;
    level_value(lo, hi, level.min(levels - 1), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::initial_positions;
    use proptest::prelude::*;

    fn small_problem() -> Problem {
        let mut cfg = ScenarioConfig::smaller();
        cfg.opt.quad = QuadRes::new(24, 48);
        let hover = initial_positions(&cfg, 3).unwrap();
        Problem::new(cfg, hover).unwrap()
    }

    fn ov(f1: f64, f2: f64, f3: f64, v: f64) -> ObjectiveVector {
        ObjectiveVector::new(f1, f2, f3, v)
    }

    #[test]
    fn layout_segments_tile_the_vector() {
        let l = Layout::new(3, 2);
        assert_eq!(l.dim(), 20);
        let mut seen = vec![false; l.dim()];
        for s in Segment::ALL {
            for k in l.range(s) {
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
        assert_eq!(l.range(Segment::JammerX), 12..14);
        assert_eq!(l.variable_names()[13], "jammer_x_1");
    }

    #[test]
    fn from_parts_round_trips_positions() {
        let relay = [Point3::new(1.0, 2.0, 3.0), Point3::new(4.0, 5.0, 6.0)];
        let jammer = [Point3::new(7.0, 8.0, 9.0)];
        let s = SolutionVector::from_parts(&relay, &[0.1, 0.2], &jammer, &[0.3]).unwrap();
        assert_eq!(s.values(), &[1.0, 4.0, 2.0, 5.0, 3.0, 6.0, 0.1, 0.2, 7.0, 8.0, 9.0, 0.3]);
        assert_eq!(s.relay_positions(), relay);
        assert_eq!(s.jammer_positions(), jammer);
    }

    #[test]
    fn hover_deployment_costs_no_energy() {
        let p = small_problem();
        let obj = p.evaluate(&p.hover_solution()).unwrap();
        assert_eq!(obj.f3, 0.0);
    }

    #[test]
    fn uniform_current_scaling_leaves_objectives() {
        let p = small_problem();
        let base = p.hover_solution();
        let mut scaled = base.clone();
        for v in scaled.segment_mut(Segment::RelayI) {
            *v *= 0.5;
        }
        let a = p.evaluate(&base).unwrap();
        let b = p.evaluate(&scaled).unwrap();
        assert!((a.f1 - b.f1).abs() < 1e-9);
        assert!((a.f2 - b.f2).abs() < 1e-9);
        assert_eq!(a.f3, b.f3);
    }

    #[test]
    fn silent_relay_is_error_or_penalty() {
        let p = small_problem();
        let mut s = p.hover_solution();
        s.segment_mut(Segment::RelayI).fill(0.0);
        assert!(matches!(p.evaluate(&s), Err(Error::ZeroPowerArray)));
        let pen = p.evaluate_penalized(&s).unwrap();
        assert!(pen.violation >= SILENT_RELAY_PENALTY);
        assert!(!pen.is_feasible());
    }

    #[test]
    fn repair_clamps() {
        let p = small_problem();
        let mut s = p.hover_solution();
        s.segment_mut(Segment::RelayI)[0] = 1.3;
        s.segment_mut(Segment::RelayX)[1] = -5.0;
        let r = p.repair(&s);
        assert_eq!(r.segment(Segment::RelayI)[0], 1.0);
        assert_eq!(r.segment(Segment::RelayX)[1], 0.0);
        let report = p.constraint_report(&s);
        assert!(!report.is_zero());
        assert_eq!(report.box_clip[p.layout.range(Segment::RelayX).start + 1], 5.0);
    }

    #[test]
    fn repair_leaves_in_bounds_vector_bit_exact() {
        let p = small_problem();
        let s = p.hover_solution();
        let r = p.repair(&s);
        for (a, b) in s.values().iter().zip(r.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn separation_deficit_counts_pairs() {
        let p = small_problem();
        let mut s = p.hover_solution();
        // Stack relay UAV 1 half a meter above UAV 0.
        let (x, y, z) = (s.segment(Segment::RelayX)[0], s.segment(Segment::RelayY)[0], s.segment(Segment::RelayZ)[0]);
        s.segment_mut(Segment::RelayX)[1] = x;
        s.segment_mut(Segment::RelayY)[1] = y;
        s.segment_mut(Segment::RelayZ)[1] = z + 0.5;
        let rep = p.constraint_report(&s);
        assert!((rep.separation_total() - 0.5).abs() < 1e-12);
        assert!(!p.evaluate(&s).unwrap().is_feasible());
    }

    #[test]
    fn grid_snapping() {
        assert_eq!(snap(0.2, 0.0, 1.0, 3), 0.0);
        assert_eq!(snap(0.3, 0.0, 1.0, 3), 0.5);
        assert_eq!(snap(0.9, 60.0, 120.0, 3), 60.0);
        assert_eq!(snap(119.0, 60.0, 120.0, 3), 120.0);
    }

    #[test]
    fn dominance_examples() {
        let a = ov(10.0, -30.0, 100.0, 0.0);
        let b = ov(9.0, -20.0, 200.0, 0.0);
        assert!(dominates(&a, &b));
        assert!(!dominates(&b, &a));
        assert!(!dominates(&a, &a));
        let bad = ov(100.0, -100.0, 0.0, 5.0);
        assert!(dominates(&b, &bad));
        assert!(!dominates(&bad, &b));
        assert!(dominates(&ov(0.0, 0.0, 0.0, 1.0), &bad));
    }

    fn arb_obj() -> impl Strategy<Value = ObjectiveVector> {
        (-3i32..3, -3i32..3, -3i32..3, prop_oneof![Just(0.0), 0.0f64..2.0])
            .prop_map(|(a, b, c, v)| ov(a as f64, b as f64, c as f64, v))
    }

    proptest! {
        #[test]
        fn dominance_irreflexive_and_transitive(objs in proptest::collection::vec(arb_obj(), 1..12)) {
            for a in &objs {
                prop_assert!(!dominates(a, a));
                for b in &objs {
                    prop_assert!(!(dominates(a, b) && dominates(b, a)));
                    for c in &objs {
                        if dominates(a, b) && dominates(b, c) {
                            prop_assert!(dominates(a, c));
                        }
                    }
                }
            }
        }
    }
}
