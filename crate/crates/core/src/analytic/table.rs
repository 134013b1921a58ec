// SPDX-License-Identifier: Apache-2.0

//! Closed-form scalar delays for the worst pattern of each class.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::crossing_time;
use super::eigen::buffered_mode;
use super::models::{boundary_waveform, Boundary};
use crate::bus::{BusSpec, CrosstalkClass, ModelTag, TransitionPattern};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowModel {
    ThreeWire,
    FiveWire,
    Boundary1,
    Boundary2,
}

impl WindowModel {
    pub const ALL: [WindowModel; 4] =
        [WindowModel::ThreeWire, WindowModel::FiveWire, WindowModel::Boundary1, WindowModel::Boundary2];

    pub fn width(self) -> usize {
        match self {
            WindowModel::ThreeWire | WindowModel::Boundary1 => 3,
            WindowModel::FiveWire => 5,
            WindowModel::Boundary2 => 4,
        }
    }

    /// Zero-based index of the observed wire inside the window.
    pub fn observed(self) -> usize {
        match self {
            WindowModel::ThreeWire => 1,
            WindowModel::FiveWire => 2,
            WindowModel::Boundary1 => 0,
            WindowModel::Boundary2 => 1,
        }
    }

    pub fn max_class(self) -> CrosstalkClass {
        match self {
            WindowModel::Boundary1 => CrosstalkClass::C2,
            _ => CrosstalkClass::C4,
        }
    }

    pub fn tag(self) -> ModelTag {
        match self {
            WindowModel::ThreeWire => ModelTag::ThreeWire,
            WindowModel::FiveWire => ModelTag::FiveWire,
            WindowModel::Boundary1 => ModelTag::Boundary1,
            WindowModel::Boundary2 => ModelTag::Boundary2,
        }
    }
}

impl fmt::Display for WindowModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag().name())
    }
}

impl FromStr for WindowModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "three-wire" | "three" | "3" => Ok(WindowModel::ThreeWire),
            "five-wire" | "five" | "5" => Ok(WindowModel::FiveWire),
            "boundary1" | "b1" => Ok(WindowModel::Boundary1),
            "boundary2" | "b2" => Ok(WindowModel::Boundary2),
            other => Err(Error::Unsupported(format!("unknown model {other:?}"))),
        }
    }
}

/// Worst pattern of `class` for `model`, with the observed wire rising.
pub fn worst_pattern(model: WindowModel, class: CrosstalkClass) -> Result<TransitionPattern> {
    let rows: &[&str] = match model {
        WindowModel::ThreeWire => &["uuu", "uu-", "-u-", "du-", "dud"],
        WindowModel::FiveWire => &["duuud", "duu-d", "d-u-d", "udu-u", "ududu"],
        WindowModel::Boundary1 => &["uud", "u-d", "udd"],
        WindowModel::Boundary2 => &["uuud", "-uud", "duud", "du-u", "dudu"],
    };
    rows.get(usize::from(class.index()))
        .map(|s| s.parse().expect("static pattern"))
        .ok_or_else(|| Error::Unsupported(format!("{model} has no {class} class")))
}

/// Evaluates the closed-form delay for `class` under `model`.
///
/// The buffered boundary windows have no closed form; they fall back to
/// the crossing time of the buffered expansion of the worst pattern.
pub fn table_delay(class: CrosstalkClass, model: WindowModel, spec: &BusSpec, buffered: bool) -> Result<f64> {
    let i = usize::from(class.index());
    if class > model.max_class() {
        return Err(Error::Unsupported(format!("{model} has no {class} class")));
    }
    let lambda = spec.lambda();
    let tau = spec.tau();
    let ln = f64::ln;
    let value = match (model, buffered) {
        (WindowModel::ThreeWire, false) => {
            let p3 = 1.0 + 3.0 * lambda;
            [
                ln(8.0 / PI) * tau,
                ln(16.0 / PI) * tau,
                ln(16.0 / (3.0 * PI)) * p3 * tau,
                ln(8.0 / PI) * p3 * tau,
                ln(32.0 / (3.0 * PI)) * p3 * tau,
            ][i]
        }
        (WindowModel::FiveWire, false) => {
            let p3 = 1.0 + 3.0 * lambda;
            let p2 = 1.0 + 1.5 * lambda;
            [
                0.165 * p3 * tau,
                0.384 * p3 * tau,
                ln(32.0 / (3.0 * PI)) * p2 * tau,
                ln(8.0 / PI) * p3 * tau,
                ln(32.0 / (3.0 * PI)) * p3 * tau,
            ][i]
        }
        (WindowModel::Boundary1, false) => {
            let p = 1.0 + lambda;
            [0.783 * p * tau, ln(8.0 / PI) * p * tau, 1.094 * p * tau][i]
        }
        (WindowModel::Boundary2, false) => {
            let p = 1.0 + 2.0 * lambda;
            [
                ln(8.0 / PI) * tau,
                0.427 * p * tau,
                ln(8.0 / PI) * p * tau,
                1.441 * p * tau,
                6.540 * (1.0 + (2.0 - 2f64.sqrt()) * lambda) * tau,
            ][i]
        }
        (WindowModel::ThreeWire, true) => {
            let (b1, t1) = buffered_mode(spec, 1.0);
            let (b2, t2) = buffered_mode(spec, 1.0 + 3.0 * lambda);
            [ln(2.0 * b1) * t1, ln(4.0 * b1) * t1, ln(4.0 * b2 / 3.0) * t2, ln(2.0 * b2) * t2, ln(8.0 * b2 / 3.0) * t2]
                [i]
        }
        (WindowModel::FiveWire, true) => {
            let (b4, t4) = buffered_mode(spec, 1.0 + 1.5 * lambda);
            let (b5, t3) = buffered_mode(spec, 1.0 + 3.0 * lambda);
            // Delays of the first two rows solve a quadratic in exp(−t/τ3),
            // obtained by approximating the middle mode's decay by the
            // square of the fastest one.
            let f1 = -ln(0.25 + 0.5 * (0.25 + 3.0 / (2.0 * b5)).sqrt());
            let f2 = -ln(0.125 + 0.5 * (1.0 / 16.0 + 3.0 / (2.0 * b5)).sqrt());
            [f1 * t3, f2 * t3, ln(8.0 * b4 / 3.0) * t4, ln(2.0 * b5) * t3, ln(8.0 * b5 / 3.0) * t3][i]
        }
        (WindowModel::Boundary1, true) | (WindowModel::Boundary2, true) => {
            let which = if model == WindowModel::Boundary1 { Boundary::Wire1 } else { Boundary::Wire2 };
            let wave = boundary_waveform(&worst_pattern(model, class)?, spec, which, true)?;
            crossing_time(&wave, 0.5)?
        }
    };
    Ok(value)
}
