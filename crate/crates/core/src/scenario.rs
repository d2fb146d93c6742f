//! Scenario configuration: geometry, RF and energy constants, optimizer
//! settings, and seeded hover-point sampling.
//!
//! Configuration documents are JSON. Every section and field is optional and
//! falls back to the defaults of the smaller/larger network presets below;
//! unknown keys are rejected so typos surface as errors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Bounds3, Point3};

/// Rejection-sampling budget per hover point.
pub const MAX_PLACEMENT_ATTEMPTS: usize = 10_000;

/// Speed of light divided by 1e6, so that `C_MHZ / f_mhz` is a wavelength in meters.
pub const C_MHZ: f64 = 299.792_458;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Geometry {
    pub bob: Point3,
    pub willie: Point3,
    /// Land base station, origin of the multi-hop chain.
    pub lbs: Point3,
    pub relay_box: Bounds3,
    pub jammer_box: Bounds3,
    pub sea_level: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Self {
            bob: Point3::new(2400.0, 2300.0, 5.0),
            willie: Point3::new(2000.0, 2000.0, 5.0),
            lbs: Point3::new(0.0, 0.0, 5.0),
            relay_box: Bounds3 {
                x: [0.0, 100.0],
                y: [0.0, 100.0],
                z: [60.0, 120.0],
            },
            jammer_box: Bounds3 {
                x: [4400.0, 4500.0],
                y: [4300.0, 4400.0],
                z: [60.0, 120.0],
            },
            sea_level: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RfParams {
    pub f_c_mhz: f64,
    /// Per-UAV transmit power in the relay array, W.
    pub p_ur: f64,
    /// Per-UAV transmit power in the jammer array, W.
    pub p_uj: f64,
    /// Transmit power of the lone relay UAV used by the baselines, W.
    pub p_r: f64,
    /// Transmit power of the lone jamming UAV used by the baselines, W.
    pub p_j: f64,
    pub sigma2_w: f64,
    pub eta: f64,
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub c_r: f64,
    pub eta_los: f64,
    pub eta_nlos: f64,
    /// Amplitude of the elevation sigmoid in the relay path-loss model, dB.
    /// No published value; defaults to `eta_los - eta_nlos`.
    pub a_u: f64,
    /// Housed for completeness; no model term consumes it.
    pub c_u: f64,
    pub d_min: f64,
}

impl Default for RfParams {
    fn default() -> Self {
        Self {
            f_c_mhz: 2400.0,
            p_ur: 0.1,
            p_uj: 0.1,
            p_r: 0.1,
            p_j: 0.1,
            // -150 dBm
            sigma2_w: 1e-18,
            eta: 1.0,
            alpha_a: 5.0188,
            alpha_b: 0.3511,
            c_r: 34.0,
            eta_los: 2.3,
            eta_nlos: 34.0,
            a_u: 2.3 - 34.0,
            c_u: 1.0,
            d_min: 1.0,
        }
    }
}

impl RfParams {
    pub fn wavelength(&self) -> f64 {
        C_MHZ / self.f_c_mhz
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergyParams {
    pub p_i: f64,
    pub p_b: f64,
    pub v_m: f64,
    pub v_t: f64,
    pub d_f: f64,
    pub s_r: f64,
    pub rho_a: f64,
    pub a_r: f64,
    pub m_u: f64,
    pub g: f64,
    /// Cruise speed for repositioning legs, m/s.
    pub v_f: f64,
    pub v_max: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        Self {
            p_i: 88.63,
            p_b: 79.86,
            v_m: 4.03,
            v_t: 120.0,
            d_f: 0.6,
            s_r: 0.05,
            rho_a: 1.225,
            a_r: 0.503,
            m_u: 2.0,
            g: 9.8,
            v_f: 10.0,
            v_max: 20.0,
        }
    }
}

/// Midpoint-rule grid resolution over the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadRes {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl QuadRes {
    pub const fn new(n_theta: usize, n_phi: usize) -> Self {
        Self { n_theta, n_phi }
    }

    pub const fn doubled(self) -> Self {
        Self::new(self.n_theta * 2, self.n_phi * 2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerParams {
    pub n_pop: usize,
    pub t_max: usize,
    /// Defaults to `n_pop` when absent.
    pub archive_cap: Option<usize>,
    pub seed: u64,
    pub tent_a: f64,
    pub woa_b: f64,
    pub aoa_alpha: f64,
    pub aoa_mu: f64,
    pub aoa_eps: f64,
    pub moa_min: f64,
    pub moa_max: f64,
    pub g_inertia: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub beta: f64,
    /// Nuptial dance amplitude as a fraction of each variable's range.
    pub dance_d: f64,
    /// Female random-walk amplitude as a fraction of each variable's range.
    pub walk_fl: f64,
    /// Velocity clamp as a fraction of each variable's range.
    pub v_max_frac: f64,
    /// Quadrature used inside the optimization loop.
    pub quad: QuadRes,
    /// Quadrature used for final reporting and gain maps.
    pub report_quad: QuadRes,
}

impl Default for OptimizerParams {
    fn default() -> Self {
        Self {
            n_pop: 30,
            t_max: 500,
            archive_cap: None,
            seed: 1,
            tent_a: 0.499,
            woa_b: 1.0,
            aoa_alpha: 5.0,
            aoa_mu: 0.499,
            aoa_eps: 1e-12,
            moa_min: 0.2,
            moa_max: 1.0,
            g_inertia: 0.8,
            a1: 1.0,
            a2: 1.5,
            a3: 1.5,
            beta: 2.0,
            dance_d: 0.1,
            walk_fl: 0.1,
            v_max_frac: 0.1,
            quad: QuadRes::new(91, 181),
            report_quad: QuadRes::new(181, 361),
        }
    }
}

impl OptimizerParams {
    pub fn archive_capacity(&self) -> usize {
        self.archive_cap.unwrap_or(self.n_pop)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub geometry: Geometry,
    pub rf: RfParams,
    pub energy: EnergyParams,
    pub opt: OptimizerParams,
    pub n_ur: usize,
    pub n_uj: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::larger()
    }
}

impl ScenarioConfig {
    /// 16 relay UAVs and 8 jammer UAVs.
    pub fn larger() -> Self {
        Self::with_counts(16, 8)
    }

    /// 8 relay UAVs and 4 jammer UAVs.
    pub fn smaller() -> Self {
        Self::with_counts(8, 4)
    }

    fn with_counts(n_ur: usize, n_uj: usize) -> Self {
        Self {
            geometry: Geometry::default(),
            rf: RfParams::default(),
            energy: EnergyParams::default(),
            opt: OptimizerParams::default(),
            n_ur,
            n_uj,
        }
    }

    pub fn from_json(document: &str) -> Result<Self> {
        let config: ScenarioConfig = serde_json::from_str(document)?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.geometry;
        for (name, b) in [("geometry.relay_box", &g.relay_box), ("geometry.jammer_box", &g.jammer_box)] {
            for (axis, r) in ["x", "y", "z"].iter().zip(b.axes()) {
                if !(r[0] < r[1]) {
                    return Err(Error::invalid(
                        &format!("{name}.{axis}"),
                        format!("{:?}", r),
                        "min must be strictly less than max",
                    ));
                }
            }
            if b.z[0] <= g.sea_level {
                return Err(Error::invalid(
                    &format!("{name}.z"),
                    format!("{:?}", b.z),
                    "UAVs must fly above sea level",
                ));
            }
        }

        let rf = &self.rf;
        positive("rf.f_c_mhz", rf.f_c_mhz)?;
        positive("rf.p_ur", rf.p_ur)?;
        positive("rf.p_uj", rf.p_uj)?;
        positive("rf.p_r", rf.p_r)?;
        positive("rf.p_j", rf.p_j)?;
        positive("rf.sigma2_w", rf.sigma2_w)?;
        positive("rf.d_min", rf.d_min)?;
        if !(0.0..=1.0).contains(&rf.eta) {
            return Err(Error::invalid("rf.eta", rf.eta, "must lie in [0, 1]"));
        }

        let e = &self.energy;
        for (path, v) in [
            ("energy.p_i", e.p_i),
            ("energy.p_b", e.p_b),
            ("energy.v_m", e.v_m),
            ("energy.v_t", e.v_t),
            ("energy.d_f", e.d_f),
            ("energy.s_r", e.s_r),
            ("energy.rho_a", e.rho_a),
            ("energy.a_r", e.a_r),
            ("energy.m_u", e.m_u),
            ("energy.g", e.g),
            ("energy.v_f", e.v_f),
            ("energy.v_max", e.v_max),
        ] {
            positive(path, v)?;
        }
        if e.v_f > e.v_max {
            return Err(Error::invalid("energy.v_f", e.v_f, "exceeds energy.v_max"));
        }

        let o = &self.opt;
        if o.n_pop < 2 || o.n_pop % 2 != 0 {
            return Err(Error::invalid(
                "opt.n_pop",
                o.n_pop,
                "must be even and at least 2 (male/female pairing)",
            ));
        }
        if o.t_max < 1 {
            return Err(Error::invalid("opt.t_max", o.t_max, "must be at least 1"));
        }
        if o.archive_capacity() < 1 {
            return Err(Error::invalid("opt.archive_cap", o.archive_capacity(), "must be at least 1"));
        }
        if !(o.tent_a > 0.0 && o.tent_a < 1.0) {
            return Err(Error::invalid("opt.tent_a", o.tent_a, "must lie in (0, 1)"));
        }
        if !(o.moa_min < o.moa_max) {
            return Err(Error::invalid("opt.moa_min", o.moa_min, "must be below opt.moa_max"));
        }
        positive("opt.aoa_alpha", o.aoa_alpha)?;
        positive("opt.aoa_eps", o.aoa_eps)?;
        for (path, q) in [("opt.quad", o.quad), ("opt.report_quad", o.report_quad)] {
            if q.n_theta < 16 || q.n_phi < 16 {
                return Err(Error::invalid(
                    path,
                    format!("{}x{}", q.n_theta, q.n_phi),
                    "quadrature needs at least 16 points per axis",
                ));
            }
        }

        if self.n_ur < 1 {
            return Err(Error::invalid("n_ur", self.n_ur, "must be at least 1"));
        }
        if self.n_uj < 1 {
            return Err(Error::invalid("n_uj", self.n_uj, "must be at least 1"));
        }
        Ok(())
    }
}

fn positive(path: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(path, v, "must be strictly positive"))
    }
}

/// Hover points the UAVs occupy before repositioning.
#[derive(Debug, Clone, PartialEq)]
pub struct HoverPositions {
    pub relay: Vec<Point3>,
    pub jammer: Vec<Point3>,
}

/// Samples hover points uniformly in each cluster's box, resampling any point
/// closer than `d_min` to one already placed in the same cluster.
pub fn initial_positions(config: &ScenarioConfig, seed: u64) -> Result<HoverPositions> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d_min = config.rf.d_min;
    let relay = sample_separated(&mut rng, &config.geometry.relay_box, config.n_ur, d_min)?;
    let jammer = sample_separated(&mut rng, &config.geometry.jammer_box, config.n_uj, d_min)?;
    Ok(HoverPositions { relay, jammer })
}

fn sample_separated<R: Rng>(
    rng: &mut R,
    bounds: &Bounds3,
    count: usize,
    d_min: f64,
) -> Result<Vec<Point3>> {
    let mut placed: Vec<Point3> = Vec::with_capacity(count);
    for _ in 0..count {
        let mut ok = false;
        for _ in 0..MAX_PLACEMENT_ATTEMPTS {
            let p = Point3::new(
                uniform(rng, bounds.x),
                uniform(rng, bounds.y),
                uniform(rng, bounds.z),
            );
            if placed.iter().all(|q| q.distance(p) >= d_min) {
                placed.push(p);
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::SeparationUnsatisfiable {
                count,
                d_min,
                attempts: MAX_PLACEMENT_ATTEMPTS,
            });
        }
    }
    Ok(placed)
}

fn uniform<R: Rng>(rng: &mut R, r: [f64; 2]) -> f64 {
    r[0] + rng.random::<f64>() * (r[1] - r[0])
}
