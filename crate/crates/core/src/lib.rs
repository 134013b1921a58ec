// SPDX-License-Identifier: Apache-2.0

//! Crosstalk delay toolkit for capacitively coupled RC buses.
//!
//! - [`bus`]: bus description, transition patterns, crosstalk classes and
//!   the lumped baseline delay.
//! - [`analytic`]: closed-form victim waveforms built from the eigenmodes of
//!   the coupling matrix, with and without driver/load buffering.
//! - [`sim`]: segmented RC-ladder transient simulator used as ground truth.
//! - [`search`]: worst-case pattern search.
//! - [`cac`]: crosstalk-avoidance codebooks.
//! - [`scenario`] and [`report`]: batch inputs and rendered outputs for the
//!   `xtalk` command line tool.

pub mod analytic;
pub mod bus;
pub mod cac;
pub mod error;
pub mod report;
pub mod scenario;
pub mod search;
pub mod sim;

pub use bus::{
    baseline_delay, classify_bus, classify_wire, delta_of, normalize_rising, BusSpec, CrosstalkClass, DelayEstimate,
    DeltaVector, ModelTag, Transition, TransitionPattern,
};
pub use error::{Error, Result};

/// Seconds to picoseconds.
pub const PS: f64 = 1e12;
