//! Coverage analysis kernels for clustered LEO satellite downlinks.
//!
//! Satellites form a homogeneous Poisson point process on a sphere of radius
//! `R_S`. A typical user at `(0, 0, R_E)` is jointly served by every visible
//! satellite inside a cluster cap of polar angle `phi_clu`, while the remaining
//! visible satellites interfere through antenna side lobes. This crate provides
//! two independent routes to the SIR coverage probability `P(SIR >= gamma)`:
//!
//! * [`montecarlo`] draws constellation snapshots and counts coverage directly;
//! * [`analytic`] moment-matches the accumulated powers to Gamma variables and
//!   brackets coverage between Erlang-shaped bounds built from high-order
//!   Laplace-transform derivatives.
//!
//! The crate is `no_std` (it needs `alloc`). IO, parallel orchestration and the
//! command line live in the `satcov-cli` crate.

#![no_std]
// `num_traits::Float` looks unused whenever a dependency brings std into the
// build, since std's inherent float methods then take precedence.
#![allow(unused_imports)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod channel;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod pointprocess;
pub mod rng;
pub mod specialfns;

pub use error::{Error, Result};
pub use geometry::{ClusterGeometry, Region, SystemParams};
