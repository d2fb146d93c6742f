//! Pareto archive and the two mayfly-based solvers.
//!
//! [`moma_run`] is the conventional multi-objective mayfly algorithm: uniform
//! random initialization and the mayfly movement/mating step only.
//! [`imoma_run`] adds Tent-map chaotic initialization and, after every mayfly
//! step, a whale-style update of the jammer segment and an arithmetic-operator
//! update of the relay segment, gated by the `zeta` threshold and the MOA
//! schedule.

mod archive;
mod hybrid;
mod mayfly;
mod operators;
mod solver;

pub use archive::{crowding_distances, roulette_index, ArchiveEntry, ParetoArchive};
pub use hybrid::{aoa_update_relay, woa_update_jammer, AoaParams, WoaDraws};
pub use mayfly::{crossover, mayfly_step, Mayfly, MayflyParams, Sex};
pub use operators::{chaotic_init, moa, tent_map, tent_next, uniform_init, zeta};
pub use solver::{imoma_run, moma_run, run, Algorithm, RunHistory, RunResult};
