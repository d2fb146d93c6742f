//! Radio channel: array factor, directive gain by spherical quadrature,
//! air-to-sea path loss and the SINR seen by a vessel.
//!
//! Angles handed to the array factor are radians (polar angle from +z and
//! azimuth from +x). The path-loss sigmoids take the elevation in degrees,
//! distances in meters and the carrier in MHz.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::scenario::{QuadRes, RfParams};

/// Positions and excitation currents of a virtual antenna array.
#[derive(Debug, Clone, PartialEq)]
pub struct ArraySpec {
    pub positions: Vec<Point3>,
    pub currents: Vec<f64>,
    pub wavelength: f64,
}

impl ArraySpec {
    pub fn new(positions: Vec<Point3>, currents: Vec<f64>, wavelength: f64) -> Result<Self> {
        if positions.is_empty() || positions.len() != currents.len() {
            return Err(Error::Dimension {
                expected: positions.len().max(1),
                got: currents.len(),
            });
        }
        if let Some(i) = currents.iter().position(|c| !(0.0..=1.0).contains(c)) {
            return Err(Error::invalid(
                &format!("currents[{i}]"),
                currents[i],
                "excitation current must lie in [0, 1]",
            ));
        }
        if !(wavelength > 0.0) {
            return Err(Error::invalid("wavelength", wavelength, "must be positive"));
        }
        Ok(Self {
            positions,
            currents,
            wavelength,
        })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    pub fn centroid(&self) -> Point3 {
        Point3::centroid(&self.positions)
    }

    fn is_silent(&self) -> bool {
        self.currents.iter().all(|&c| c.abs() < 1e-12)
    }

    /// Element phase-center coordinates scaled by the wavenumber and taken
    /// relative to the array centroid. Only the modulus of the array factor is
    /// consumed downstream, which a common translation leaves unchanged.
    fn scaled_offsets(&self) -> Vec<(Point3, f64)> {
        let k = self.wavenumber();
        let c = self.centroid();
        self.positions
            .iter()
            .zip(&self.currents)
            .filter(|(_, &i)| i != 0.0)
            .map(|(&p, &i)| ((p - c) * k, i))
            .collect()
    }
}

/// Unit vector for polar angle `theta` and azimuth `phi`.
pub fn unit_direction(theta: f64, phi: f64) -> Point3 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Point3::new(st * cp, st * sp, ct)
}

/// Complex array factor `sum_m I_m exp(i k (p_m . u(theta, phi)))` using the
/// absolute element coordinates.
pub fn array_factor(spec: &ArraySpec, theta: f64, phi: f64) -> Complex64 {
    let u = unit_direction(theta, phi);
    let k = spec.wavenumber();
    spec.positions
        .iter()
        .zip(&spec.currents)
        .map(|(p, &i)| Complex64::from_polar(i, k * p.dot(u)))
        .sum()
}

fn af_power(offsets: &[(Point3, f64)], u: Point3) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for &(p, i) in offsets {
        let (s, c) = p.dot(u).sin_cos();
        re += i * c;
        im += i * s;
    }
    re * re + im * im
}

/// Uniform midpoint-rule grid over the unit sphere with `sin(theta)` weights.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    pub res: QuadRes,
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    dirs: Vec<Point3>,
    weights: Vec<f64>,
}

impl SphereGrid {
    pub fn new(res: QuadRes) -> Self {
        let dt = PI / res.n_theta as f64;
        let dp = 2.0 * PI / res.n_phi as f64;
        let thetas: Vec<f64> = (0..res.n_theta).map(|i| (i as f64 + 0.5) * dt).collect();
        let phis: Vec<f64> = (0..res.n_phi).map(|j| -PI + (j as f64 + 0.5) * dp).collect();
        let mut dirs = Vec::with_capacity(res.n_theta * res.n_phi);
        let mut weights = Vec::with_capacity(res.n_theta * res.n_phi);
        for &t in &thetas {
            let w = t.sin() * dt * dp;
            for &p in &phis {
                dirs.push(unit_direction(t, p));
                weights.push(w);
            }
        }
        Self {
            res,
            thetas,
            phis,
            dirs,
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// Midpoint estimate of the integral of `f(theta, phi) sin(theta)` over the sphere.
    pub fn integrate(&self, mut f: impl FnMut(f64, f64) -> f64) -> f64 {
        let mut total = 0.0;
        let mut idx = 0;
        for &t in &self.thetas {
            for &p in &self.phis {
                total += f(t, p) * self.weights[idx];
                idx += 1;
            }
        }
        total
    }
}

/// Quadrature estimate of the radiated power `int |AF|^2 sin(theta) dtheta dphi`.
pub fn radiated_power(spec: &ArraySpec, grid: &SphereGrid) -> f64 {
    let offsets = spec.scaled_offsets();
    grid.dirs
        .iter()
        .zip(&grid.weights)
        .map(|(&u, &w)| af_power(&offsets, u) * w)
        .sum()
}

/// Pre-integrated array pattern that yields the directive gain toward any
/// direction without repeating the quadrature.
#[derive(Debug, Clone)]
pub struct GainPattern {
    offsets: Vec<(Point3, f64)>,
    scale: f64,
}

impl GainPattern {
    pub fn new(spec: &ArraySpec, eta: f64, grid: &SphereGrid) -> Result<Self> {
        if spec.is_silent() {
            return Err(Error::ZeroPowerArray);
        }
        let denom = radiated_power(spec, grid);
        if !(denom > f64::MIN_POSITIVE) {
            return Err(Error::ZeroPowerArray);
        }
        Ok(Self {
            offsets: spec.scaled_offsets(),
            scale: 4.0 * PI * eta / denom,
        })
    }

    pub fn gain(&self, theta: f64, phi: f64) -> f64 {
        self.scale * af_power(&self.offsets, unit_direction(theta, phi))
    }
}

/// Directive gain `4 pi |AF(target)|^2 eta / int |AF|^2 sin(theta)` with a
/// unit element pattern.
pub fn antenna_gain(
    spec: &ArraySpec,
    target_theta: f64,
    target_phi: f64,
    eta: f64,
    grid: &SphereGrid,
) -> Result<f64> {
    Ok(GainPattern::new(spec, eta, grid)?.gain(target_theta, target_phi))
}

/// Gain sampled on the midpoint nodes of a sphere grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GainMap {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    /// Row-major over `(theta, phi)`.
    pub gains: Vec<f64>,
}

impl GainMap {
    pub fn compute(spec: &ArraySpec, eta: f64, grid: &SphereGrid) -> Result<Self> {
        let pattern = GainPattern::new(spec, eta, grid)?;
        let gains = grid
            .dirs
            .iter()
            .map(|&u| pattern.scale * af_power(&pattern.offsets, u))
            .collect();
        Ok(Self {
            thetas: grid.thetas.clone(),
            phis: grid.phis.clone(),
            gains,
        })
    }

    pub fn at(&self, i_theta: usize, i_phi: usize) -> f64 {
        self.gains[i_theta * self.phis.len() + i_phi]
    }

    /// Grid indices and value of the largest sampled gain.
    pub fn argmax(&self) -> (usize, usize, f64) {
        let (idx, &g) = self
            .gains
            .iter()
            .enumerate()
            .fold((0, &f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
        (idx / self.phis.len(), idx % self.phis.len(), g)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "theta_rad,phi_rad,gain_linear,gain_dbi")?;
        for (i, t) in self.thetas.iter().enumerate() {
            for (j, p) in self.phis.iter().enumerate() {
                let g = self.at(i, j);
                writeln!(out, "{t},{p},{g},{}", 10.0 * g.log10())?;
            }
        }
        Ok(())
    }
}

/// Polar angle from +z and azimuth of the vector from `center` to `target`.
/// Azimuth is reported in `(-pi, pi]`.
pub fn direction_to(center: Point3, target: Point3) -> Result<(f64, f64)> {
    let v = target - center;
    let rho = v.x.hypot(v.y);
    if rho == 0.0 && v.z == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let theta = rho.atan2(v.z);
    let mut phi = v.y.atan2(v.x);
    if phi <= -PI {
        phi = PI;
    }
    Ok((theta, phi))
}

/// Elevation (degrees) and slant range (meters) from a vessel to an array center.
/// The elevation uses the array's height above the vessel.
fn elevation_and_range(center: Point3, vessel: Point3) -> Result<(f64, f64)> {
    let d = center.distance(vessel);
    if d == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let h = center.z - vessel.z;
    Ok(((h / d).clamp(-1.0, 1.0).asin().to_degrees(), d))
}

fn sigmoid_denominator(elev_deg: f64, rf: &RfParams) -> f64 {
    1.0 + rf.alpha_a * (-rf.alpha_b * (elev_deg - rf.alpha_a)).exp()
}

/// `20 log10(4 pi f_c / 300)` with the carrier in MHz.
pub fn frequency_term_db(f_c_mhz: f64) -> f64 {
    20.0 * (4.0 * PI * f_c_mhz / 300.0).log10()
}

/// Path loss from the relay array center to a vessel, dB.
pub fn path_loss_relay_db(center: Point3, vessel: Point3, rf: &RfParams) -> Result<f64> {
    let (elev, d) = elevation_and_range(center, vessel)?;
    Ok(rf.a_u / sigmoid_denominator(elev, rf)
        + 20.0 * d.log10()
        + rf.c_r
        + frequency_term_db(rf.f_c_mhz))
}

/// Path loss from the jammer array center to a vessel, dB.
pub fn path_loss_jammer_db(center: Point3, vessel: Point3, rf: &RfParams) -> Result<f64> {
    let (elev, d) = elevation_and_range(center, vessel)?;
    Ok((rf.eta_los - rf.eta_nlos) / sigmoid_denominator(elev, rf)
        + rf.eta_nlos
        + 20.0 * ((4.0 * PI * rf.f_c_mhz / 300.0).log10() + d.log10()))
}

/// Linear channel power gain corresponding to a path loss in dB.
pub fn channel_gain(path_loss_db: f64) -> f64 {
    10f64.powf(-path_loss_db / 10.0)
}

/// One transmitting cluster's contribution at a receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkTerms {
    /// Per-UAV transmit power, W.
    pub power_w: f64,
    pub count: usize,
    pub gain: f64,
    pub path_loss_db: f64,
}

impl LinkTerms {
    pub fn received_w(&self) -> f64 {
        self.power_w * self.count as f64 * self.gain * channel_gain(self.path_loss_db)
    }
}

/// `10 log10(signal / (interference + noise))`.
pub fn sinr_db_from_terms(signal: LinkTerms, interference: LinkTerms, sigma2_w: f64) -> f64 {
    10.0 * (signal.received_w() / (interference.received_w() + sigma2_w)).log10()
}

/// SINR at `vessel` from the relay array with the jammer array as interference.
/// A silent jammer contributes no interference; a silent relay is an error.
pub fn sinr_db(
    relay: &ArraySpec,
    jammer: &ArraySpec,
    vessel: Point3,
    rf: &RfParams,
    grid: &SphereGrid,
) -> Result<f64> {
    let relay_pattern = GainPattern::new(relay, rf.eta, grid)?;
    let jammer_pattern = match GainPattern::new(jammer, rf.eta, grid) {
        Ok(p) => Some(p),
        Err(Error::ZeroPowerArray) => None,
        Err(e) => return Err(e),
    };
    let (signal, interference) =
        link_terms(relay, &relay_pattern, jammer, jammer_pattern.as_ref(), vessel, rf)?;
    Ok(sinr_db_from_terms(signal, interference, rf.sigma2_w))
}

pub(crate) fn link_terms(
    relay: &ArraySpec,
    relay_pattern: &GainPattern,
    jammer: &ArraySpec,
    jammer_pattern: Option<&GainPattern>,
    vessel: Point3,
    rf: &RfParams,
) -> Result<(LinkTerms, LinkTerms)> {
    let rc = relay.centroid();
    let (t, p) = direction_to(rc, vessel)?;
    let signal = LinkTerms {
        power_w: rf.p_ur,
        count: relay.len(),
        gain: relay_pattern.gain(t, p),
        path_loss_db: path_loss_relay_db(rc, vessel, rf)?,
    };
    let jc = jammer.centroid();
    let (t, p) = direction_to(jc, vessel)?;
    let interference = LinkTerms {
        power_w: rf.p_uj,
        count: jammer.len(),
        gain: jammer_pattern.map_or(0.0, |jp| jp.gain(t, p)),
        path_loss_db: path_loss_jammer_db(jc, vessel, rf)?,
    };
    Ok((signal, interference))
}
