//! Models and optimizers for UAV-swarm collaborative secure relaying.
//!
//! The crate is layered bottom-up: [`scenario`] describes the world,
//! [`channel`], [`beamforming`], [`link_budget`] and [`energy`] are the
//! physical models, [`problem`] turns them into three objectives, and
//! [`moea`], [`imogoa`] and [`baselines`] search or benchmark that space.

pub mod baselines;
pub mod beamforming;
pub mod channel;
pub mod energy;
pub mod error;
pub mod imogoa;
pub mod link_budget;
pub mod moea;
pub mod problem;
pub mod scenario;

pub use error::{Error, Result};
pub use scenario::{Position3D, Scenario, ScenarioConfig};
