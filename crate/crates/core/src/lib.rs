//! Simulator and multi-objective optimizer for dual UAV-cluster maritime
//! physical-layer security.
//!
//! A relay cluster forms a virtual antenna array that beams data toward a
//! legitimate vessel (Bob) while a jammer cluster beams interference toward an
//! eavesdropper (Willie). Each candidate deployment is scored on three
//! objectives: Bob's SINR (maximized), Willie's SINR (minimized) and the fleet
//! flight energy needed to reach the deployment (minimized).
//!
//! Module map:
//!
//! * [`scenario`] configuration, presets and hover-point sampling
//! * [`channel`] array factor, quadrature gain, path loss and SINR
//! * [`energy`] rotary-wing propulsion power and transit energy
//! * [`problem`] solution layout, objective evaluation and dominance
//! * [`optimizer`] Pareto archive, MOMA and IMOMA solvers
//! * [`baselines`] non-CB, single-CB and multi-hop comparison approaches
//! * [`metrics`] IGD and ACR convergence metrics

pub mod baselines;
pub mod channel;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod optimizer;
pub mod problem;
pub mod scenario;

pub use error::{Error, Result};
pub use geometry::Point3;
