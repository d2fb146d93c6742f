//! Comparison approaches: a lone relay with a lone jammer, a beamforming
//! relay with a lone jammer, and a free-space multi-hop chain.

use serde::{Deserialize, Serialize};

use crate::channel::{self, GainPattern, LinkTerms};
use crate::energy::{self, FlightLeg};
use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::problem::{ObjectiveVector, Problem, SolutionVector};
use crate::scenario::{RfParams, ScenarioConfig};

/// Multi-hop chain parameters. `None` fields resolve against the scenario.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MultihopConfig {
    /// Number of hop UAVs; defaults to the fleet size.
    pub hop_count: Option<usize>,
    /// Common hop altitude, m; defaults to the middle of the relay box.
    pub hop_altitude: Option<f64>,
    /// Minimum per-hop SNR for a hop to decode, dB.
    pub gamma_th_db: f64,
}

/// [`MultihopConfig`] with defaults filled in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedMultihop {
    pub hop_count: usize,
    pub hop_altitude: f64,
    pub gamma_th_db: f64,
}

impl MultihopConfig {
    pub fn resolve(&self, config: &ScenarioConfig) -> Result<ResolvedMultihop> {
        let hop_count = self.hop_count.unwrap_or(config.n_ur + config.n_uj);
        if hop_count == 0 {
            return Err(Error::invalid("multihop.hop_count", hop_count, "must be at least 1"));
        }
        let z = config.geometry.relay_box.z;
        let hop_altitude = self.hop_altitude.unwrap_or(0.5 * (z[0] + z[1]));
        if !hop_altitude.is_finite() || hop_altitude <= config.geometry.sea_level {
            return Err(Error::invalid(
                "multihop.hop_altitude",
                hop_altitude,
                "must be finite and above sea level",
            ));
        }
        if self.gamma_th_db.is_nan() {
            return Err(Error::invalid("multihop.gamma_th_db", self.gamma_th_db, "must not be NaN"));
        }
        Ok(ResolvedMultihop {
            hop_count,
            hop_altitude,
            gamma_th_db: self.gamma_th_db,
        })
    }
}

/// Free-space loss in dB with distance in metres and carrier in MHz.
pub fn free_space_loss_db(d_m: f64, f_mhz: f64) -> f64 {
    32.45 + 20.0 * (d_m / 1000.0).log10() + 20.0 * f_mhz.log10()
}

/// Where the lone jammer settles: the point of the jammer box nearest Willie.
pub fn lone_jammer_position(config: &ScenarioConfig) -> Point3 {
    config.geometry.jammer_box.clamp(config.geometry.willie)
}

fn lone_jammer_leg(problem: &Problem) -> FlightLeg {
    let start = problem.hover.jammer[0];
    FlightLeg::new(start, lone_jammer_position(&problem.config), problem.config.energy.v_f)
}

fn lone_jammer_terms(at: Point3, vessel: Point3, rf: &RfParams) -> Result<LinkTerms> {
    Ok(LinkTerms {
        power_w: rf.p_j,
        count: 1,
        gain: 1.0,
        path_loss_db: channel::path_loss_jammer_db(at, vessel, rf)?,
    })
}

/// One relay UAV with an isotropic antenna at its hover point and one jammer
/// UAV flown toward Willie. Only the jammer moves, so f3 is its leg alone.
pub fn eval_non_cb(problem: &Problem) -> Result<ObjectiveVector> {
    let cfg = &problem.config;
    let rf = &cfg.rf;
    let relay = problem.hover.relay[0];
    let jammer = lone_jammer_position(cfg);
    let sinr = |vessel: Point3| -> Result<f64> {
        let signal = LinkTerms {
            power_w: rf.p_r,
            count: 1,
            gain: 1.0,
            path_loss_db: channel::path_loss_relay_db(relay, vessel, rf)?,
        };
        let interference = lone_jammer_terms(jammer, vessel, rf)?;
        Ok(channel::sinr_db_from_terms(signal, interference, rf.sigma2_w))
    };
    let f1 = sinr(cfg.geometry.bob)?;
    let f2 = sinr(cfg.geometry.willie)?;
    let f3 = energy::flight_energy(&lone_jammer_leg(problem), &cfg.energy);
    Ok(ObjectiveVector::new(f1, f2, f3, 0.0))
}

/// The relay cluster beamforms as in `deployment`; jamming comes from one
/// isotropic UAV flown toward Willie. The deployment's jammer segment is
/// ignored.
pub fn eval_single_cb(problem: &Problem, deployment: &SolutionVector) -> Result<ObjectiveVector> {
    let cfg = &problem.config;
    let rf = &cfg.rf;
    let relay = deployment.relay_array(rf.wavelength())?;
    let pattern = GainPattern::new(&relay, rf.eta, problem.sphere_grid())?;
    let center = relay.centroid();
    let jammer = lone_jammer_position(cfg);
    let sinr = |vessel: Point3| -> Result<f64> {
        let (theta, phi) = channel::direction_to(center, vessel)?;
        let signal = LinkTerms {
            power_w: rf.p_ur,
            count: relay.len(),
            gain: pattern.gain(theta, phi),
            path_loss_db: channel::path_loss_relay_db(center, vessel, rf)?,
        };
        let interference = lone_jammer_terms(jammer, vessel, rf)?;
        Ok(channel::sinr_db_from_terms(signal, interference, rf.sigma2_w))
    };
    let f1 = sinr(cfg.geometry.bob)?;
    let f2 = sinr(cfg.geometry.willie)?;
    let relay_legs = energy::transit_legs(&problem.hover.relay, &deployment.relay_positions(), &cfg.energy);
    let f3 = energy::fleet_energy(relay_legs.iter().chain([&lone_jammer_leg(problem)]), &cfg.energy);
    let violation = problem.constraint_report(deployment).relay_deficits.iter().sum();
    Ok(ObjectiveVector::new(f1, f2, f3, violation))
}

/// Hop positions spaced evenly on the horizontal LBS to Bob line, endpoints
/// excluded.
pub fn hop_positions(config: &ScenarioConfig, hop_count: usize, altitude: f64) -> Vec<Point3> {
    let a = config.geometry.lbs;
    let b = config.geometry.bob;
    (1..=hop_count)
        .map(|i| {
            let s = i as f64 / (hop_count + 1) as f64;
            Point3::new(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), altitude)
        })
        .collect()
}

/// Result of a multi-hop evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct MultihopReport {
    pub objectives: ObjectiveVector,
    pub hops: Vec<Point3>,
    /// SNR of every air link in the chain (LBS to first hop onward), dB.
    pub link_snr_db: Vec<f64>,
    /// False when some link fell below the threshold; f1 and f2 are then 0.
    pub delivered: bool,
}

/// A chain LBS, hop 1, ..., hop K with free-space air links and a final
/// single-antenna hop to Bob (overheard by Willie, no jamming). Hop UAVs fly
/// from the fleet's hover points, relays first, cycling if the chain is
/// longer than the fleet.
pub fn eval_multihop(problem: &Problem, mh: &MultihopConfig) -> Result<MultihopReport> {
    let cfg = &problem.config;
    let rf = &cfg.rf;
    let mh = mh.resolve(cfg)?;
    let hops = hop_positions(cfg, mh.hop_count, mh.hop_altitude);

    let mut link_snr_db = Vec::with_capacity(hops.len());
    let mut prev = cfg.geometry.lbs;
    for &h in &hops {
        let loss = free_space_loss_db(prev.distance(h), rf.f_c_mhz);
        link_snr_db.push(10.0 * (rf.p_r * channel::channel_gain(loss) / rf.sigma2_w).log10());
        prev = h;
    }
    let last = *hops.last().expect("hop_count >= 1");
    let snr = |vessel: Point3| -> Result<f64> {
        let signal = LinkTerms {
            power_w: rf.p_r,
            count: 1,
            gain: 1.0,
            path_loss_db: channel::path_loss_relay_db(last, vessel, rf)?,
        };
        Ok(10.0 * (signal.received_w() / rf.sigma2_w).log10())
    };
    let to_bob = snr(cfg.geometry.bob)?;
    let delivered = link_snr_db.iter().chain([&to_bob]).all(|&s| s >= mh.gamma_th_db);
    let (f1, f2) = if delivered {
        (to_bob, snr(cfg.geometry.willie)?)
    } else {
        (0.0, 0.0)
    };

    let starts = problem.hover.relay.iter().chain(&problem.hover.jammer).cycle();
    let legs: Vec<FlightLeg> = starts
        .zip(&hops)
        .map(|(&s, &h)| FlightLeg::new(s, h, cfg.energy.v_f))
        .collect();
    let f3 = energy::fleet_energy(&legs, &cfg.energy);
    Ok(MultihopReport {
        objectives: ObjectiveVector::new(f1, f2, f3, 0.0),
        hops,
        link_snr_db,
        delivered,
    })
}
