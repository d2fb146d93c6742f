//! Rotary-wing propulsion power and straight-line transit energy.

use crate::geometry::Point3;
use crate::scenario::EnergyParams;

/// A rest-to-rest straight-line transit at constant cruise speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightLeg {
    pub start: Point3,
    pub end: Point3,
    /// m/s, strictly positive.
    pub speed: f64,
}

impl FlightLeg {
    pub fn new(start: Point3, end: Point3, speed: f64) -> Self {
        debug_assert!(speed > 0.0);
        Self { start, end, speed }
    }

    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }

    pub fn duration(&self) -> f64 {
        self.length() / self.speed
    }
}

/// Propulsion power of a rotary-wing UAV in level flight at speed `v`, W.
pub fn propulsion_power(v: f64, p: &EnergyParams) -> f64 {
    let v2 = v * v;
    let vm2 = p.v_m * p.v_m;
    let induced = ((1.0 + v2 * v2 / (4.0 * vm2 * vm2)).sqrt() - v2 / (2.0 * vm2)).sqrt();
    let blade = 1.0 + 3.0 * v2 / (p.v_t * p.v_t);
    let parasite = 0.5 * p.d_f * p.s_r * p.rho_a * p.a_r * v2 * v;
    p.p_i * induced + p.p_b * blade + parasite
}

/// Energy of one transit leg, J. Propulsion over the flight time plus the
/// signed potential-energy change; the kinetic term vanishes rest-to-rest.
pub fn flight_energy(leg: &FlightLeg, p: &EnergyParams) -> f64 {
    let dh = leg.end.z - leg.start.z;
    propulsion_power(leg.speed, p) * leg.duration() + p.m_u * p.g * dh
}

/// Total energy over every UAV's leg, J.
pub fn fleet_energy<'a>(legs: impl IntoIterator<Item = &'a FlightLeg>, p: &EnergyParams) -> f64 {
    legs.into_iter().map(|l| flight_energy(l, p)).sum()
}

/// Legs from each hover point to its assigned destination at cruise speed.
pub fn transit_legs(from: &[Point3], to: &[Point3], p: &EnergyParams) -> Vec<FlightLeg> {
    debug_assert_eq!(from.len(), to.len());
    from.iter()
        .zip(to)
        .map(|(&a, &b)| FlightLeg::new(a, b, p.v_f))
        .collect()
}
