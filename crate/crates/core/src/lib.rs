//! Outage analysis of two-way relay NOMA (TWR-NOMA) with decode-and-forward
//! relaying under imperfect and perfect successive interference cancellation.
//!
//! Three independent routes evaluate the same outage events:
//!
//! * [`analysis`]: closed-form exact and high-SNR asymptotic expressions,
//! * [`oracle`]: adaptive quadrature of the underlying probability integrals,
//! * [`montecarlo`]: seeded simulation of the SINR events over Rayleigh fading.
//!
//! [`experiments`] composes them into SNR sweeps, figure presets and a
//! TWR-OMA reference curve.

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod hypoexp;
pub mod model;
pub mod montecarlo;
pub mod oracle;
pub mod sinr;

pub use error::{Error, Result};
pub use model::{ChannelSample, DerivedConstants, PairRoles, RandomStream, SicMode, SystemConfig};
