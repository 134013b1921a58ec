// SPDX-License-Identifier: Apache-2.0

//! Bus description, transition patterns and the per-wire crosstalk classes.
//!
//! A wire's class `iC` is the coefficient `i` of the coupling factor in the
//! classic three-wire delay estimate `(1 + iλ)·τ0`. Internal wires can reach
//! `4C` (both neighbours switching against the victim), boundary wires only
//! `2C`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Electrical and structural description of a uniformly coupled bus.
///
/// All quantities are SI: ohms, farads, meters. Per-unit-length values are
/// per meter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBusSpec", into = "RawBusSpec")]
pub struct BusSpec {
    wire_count: usize,
    r: f64,
    c: f64,
    cc: f64,
    length: f64,
    driver_resistance: f64,
    load_capacitance: f64,
    segments: usize,
}

/// Wire format of [`BusSpec`]; key names carry their units.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBusSpec {
    wire_count: usize,
    r_ohm_per_meter: f64,
    c_farad_per_meter: f64,
    cc_farad_per_meter: f64,
    length_meter: f64,
    #[serde(default)]
    driver_resistance_ohm: f64,
    #[serde(default)]
    load_capacitance_farad: f64,
    #[serde(default = "default_segments")]
    segments: usize,
}

fn default_segments() -> usize {
    BusSpec::DEFAULT_SEGMENTS
}

impl TryFrom<RawBusSpec> for BusSpec {
    type Error = Error;

    fn try_from(raw: RawBusSpec) -> Result<Self> {
        BusSpec::new(
            raw.wire_count,
            raw.r_ohm_per_meter,
            raw.c_farad_per_meter,
            raw.cc_farad_per_meter,
            raw.length_meter,
            raw.driver_resistance_ohm,
            raw.load_capacitance_farad,
        )?
        .with_segments(raw.segments)
    }
}

impl From<BusSpec> for RawBusSpec {
    fn from(spec: BusSpec) -> Self {
        RawBusSpec {
            wire_count: spec.wire_count,
            r_ohm_per_meter: spec.r,
            c_farad_per_meter: spec.c,
            cc_farad_per_meter: spec.cc,
            length_meter: spec.length,
            driver_resistance_ohm: spec.driver_resistance,
            load_capacitance_farad: spec.load_capacitance,
            segments: spec.segments,
        }
    }
}

impl BusSpec {
    pub const DEFAULT_SEGMENTS: usize = 100;

    pub fn new(
        wire_count: usize,
        r: f64,
        c: f64,
        cc: f64,
        length: f64,
        driver_resistance: f64,
        load_capacitance: f64,
    ) -> Result<Self> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!("{name} must be positive and finite, got {v}")))
            }
        };
        let non_negative = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!("{name} must be non-negative and finite, got {v}")))
            }
        };
        if wire_count == 0 {
            return Err(Error::InvalidSpec("wire_count must be at least 1".into()));
        }
        positive("r", r)?;
        positive("c", c)?;
        positive("length", length)?;
        non_negative("cc", cc)?;
        non_negative("driver_resistance", driver_resistance)?;
        non_negative("load_capacitance", load_capacitance)?;
        Ok(BusSpec {
            wire_count,
            r,
            c,
            cc,
            length,
            driver_resistance,
            load_capacitance,
            segments: Self::DEFAULT_SEGMENTS,
        })
    }

    /// Global bus in a 45 nm process: 5 mm long, 13.75 Ω/mm, 8.263 fF/mm to
    /// ground, 101.136 fF/mm to each neighbour, 100 Ω drivers, no load.
    pub fn reference_45nm(wire_count: usize) -> Result<Self> {
        BusSpec::new(wire_count, 13.75e3, 8.263e-12, 101.136e-12, 5e-3, 100.0, 0.0)
    }

    pub fn with_segments(mut self, segments: usize) -> Result<Self> {
        if segments == 0 {
            return Err(Error::InvalidSpec("segments must be at least 1".into()));
        }
        self.segments = segments;
        Ok(self)
    }

    pub fn with_wire_count(mut self, wire_count: usize) -> Result<Self> {
        if wire_count == 0 {
            return Err(Error::InvalidSpec("wire_count must be at least 1".into()));
        }
        self.wire_count = wire_count;
        Ok(self)
    }

    pub fn with_load_capacitance(mut self, load: f64) -> Result<Self> {
        if !(load.is_finite() && load >= 0.0) {
            return Err(Error::InvalidSpec(format!("load capacitance must be non-negative, got {load}")));
        }
        self.load_capacitance = load;
        Ok(self)
    }

    pub fn with_driver_resistance(mut self, rs: f64) -> Result<Self> {
        if !(rs.is_finite() && rs >= 0.0) {
            return Err(Error::InvalidSpec(format!("driver resistance must be non-negative, got {rs}")));
        }
        self.driver_resistance = rs;
        Ok(self)
    }

    /// Sets the coupling capacitance per unit length.
    pub fn with_coupling(mut self, cc: f64) -> Result<Self> {
        if !(cc.is_finite() && cc >= 0.0) {
            return Err(Error::InvalidSpec(format!("coupling capacitance must be non-negative, got {cc}")));
        }
        self.cc = cc;
        Ok(self)
    }

    pub fn wire_count(&self) -> usize {
        self.wire_count
    }
    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn cc(&self) -> f64 {
        self.cc
    }
    pub fn length(&self) -> f64 {
        self.length
    }
    pub fn driver_resistance(&self) -> f64 {
        self.driver_resistance
    }
    pub fn load_capacitance(&self) -> f64 {
        self.load_capacitance
    }
    pub fn segments(&self) -> usize {
        self.segments
    }

    /// Coupling factor λ = cc / c.
    pub fn lambda(&self) -> f64 {
        self.cc / self.c
    }

    /// Total wire resistance R = r·L.
    pub fn total_resistance(&self) -> f64 {
        self.r * self.length
    }

    /// Total ground capacitance C = c·L.
    pub fn total_capacitance(&self) -> f64 {
        self.c * self.length
    }

    /// Intrinsic line constant r·c·L²/2.
    pub fn tau0_intrinsic(&self) -> f64 {
        self.r * self.c * self.length * self.length / 2.0
    }

    /// Time constant of the slowest spatial mode of an unloaded line,
    /// (8/π²)·r·c·L²/2.
    pub fn tau(&self) -> f64 {
        8.0 / (std::f64::consts::PI * std::f64::consts::PI) * self.tau0_intrinsic()
    }

    /// Lumped single-wire delay used by the baseline model: (R_S + R/2)·C.
    pub fn tau0_baseline(&self) -> f64 {
        (self.driver_resistance + self.total_resistance() / 2.0) * self.total_capacitance()
    }
}

/// Transition of one wire between two bus cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transition {
    Fall,
    Steady,
    Rise,
}

impl Transition {
    pub const ALL: [Transition; 3] = [Transition::Fall, Transition::Steady, Transition::Rise];

    pub fn from_delta(delta: i8) -> Option<Self> {
        match delta {
            -1 => Some(Transition::Fall),
            0 => Some(Transition::Steady),
            1 => Some(Transition::Rise),
            _ => None,
        }
    }

    pub fn delta(self) -> i8 {
        match self {
            Transition::Fall => -1,
            Transition::Steady => 0,
            Transition::Rise => 1,
        }
    }

    /// Reverses the direction; steady wires stay steady.
    pub fn flipped(self) -> Self {
        match self {
            Transition::Fall => Transition::Rise,
            Transition::Steady => Transition::Steady,
            Transition::Rise => Transition::Fall,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Transition::Fall => 'd',
            Transition::Steady => '-',
            Transition::Rise => 'u',
        }
    }

    pub fn arrow(self) -> char {
        match self {
            Transition::Fall => '↓',
            Transition::Steady => '-',
            Transition::Rise => '↑',
        }
    }

    fn from_symbol(ch: char) -> Option<Self> {
        match ch {
            'u' | 'U' | '↑' => Some(Transition::Rise),
            'd' | 'D' | '↓' => Some(Transition::Fall),
            '-' | '–' => Some(Transition::Steady),
            _ => None,
        }
    }
}

/// Initial and final logic levels of every wire of a bus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionPattern {
    initial: Vec<bool>,
    final_state: Vec<bool>,
}

impl TransitionPattern {
    pub fn new(initial: Vec<bool>, final_state: Vec<bool>) -> Result<Self> {
        if initial.len() != final_state.len() {
            return Err(Error::InvalidPattern(format!(
                "initial has {} wires but final has {}",
                initial.len(),
                final_state.len()
            )));
        }
        if initial.is_empty() {
            return Err(Error::InvalidPattern("pattern has no wires".into()));
        }
        Ok(TransitionPattern { initial, final_state })
    }

    /// Builds a pattern from per-wire transitions; steady wires sit at 0.
    pub fn from_transitions(transitions: &[Transition]) -> Result<Self> {
        let initial = transitions.iter().map(|t| *t == Transition::Fall).collect();
        let final_state = transitions.iter().map(|t| *t == Transition::Rise).collect();
        TransitionPattern::new(initial, final_state)
    }

    /// Pattern of the bus switching from codeword `from` to codeword `to`.
    /// Bit `width - 1 - k` of each word drives wire `k`.
    pub fn from_codewords(from: u32, to: u32, width: usize) -> Result<Self> {
        let bit = |w: u32, k: usize| (w >> (width - 1 - k)) & 1 == 1;
        TransitionPattern::new((0..width).map(|k| bit(from, k)).collect(), (0..width).map(|k| bit(to, k)).collect())
    }

    pub fn wire_count(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[bool] {
        &self.initial
    }

    pub fn final_state(&self) -> &[bool] {
        &self.final_state
    }

    pub fn transition(&self, k: usize) -> Transition {
        match (self.initial[k], self.final_state[k]) {
            (false, true) => Transition::Rise,
            (true, false) => Transition::Fall,
            _ => Transition::Steady,
        }
    }

    pub fn transitions(&self) -> Vec<Transition> {
        (0..self.wire_count()).map(|k| self.transition(k)).collect()
    }

    /// Complements every bit of both states.
    pub fn complemented(&self) -> Self {
        TransitionPattern {
            initial: self.initial.iter().map(|b| !b).collect(),
            final_state: self.final_state.iter().map(|b| !b).collect(),
        }
    }

    /// Same pattern with the wire order reversed.
    pub fn mirrored(&self) -> Self {
        TransitionPattern {
            initial: self.initial.iter().rev().copied().collect(),
            final_state: self.final_state.iter().rev().copied().collect(),
        }
    }

    /// Sub-pattern of wires `start..start + len`.
    pub fn window(&self, start: usize, len: usize) -> Result<Self> {
        if start + len > self.wire_count() || len == 0 {
            return Err(Error::WireOutOfRange { index: start + len.saturating_sub(1), count: self.wire_count() });
        }
        TransitionPattern::new(self.initial[start..start + len].to_vec(), self.final_state[start..start + len].to_vec())
    }

    pub fn is_quiet(&self) -> bool {
        self.initial == self.final_state
    }

    /// `u`/`d`/`-` rendering; steady levels are not shown.
    pub fn direction_string(&self) -> String {
        self.transitions().into_iter().map(Transition::symbol).collect()
    }

    pub fn arrow_string(&self) -> String {
        self.transitions().into_iter().map(Transition::arrow).collect()
    }

    /// Explicit `initial>final` bit rendering.
    pub fn bit_string(&self) -> String {
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        format!("{}>{}", bits(&self.initial), bits(&self.final_state))
    }
}

impl fmt::Display for TransitionPattern {
    /// Direction string when no steady wire sits high, explicit bits otherwise,
    /// so that the text always parses back to the same pattern.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lossless = (0..self.wire_count()).all(|k| self.transition(k) != Transition::Steady || !self.initial[k]);
        if lossless {
            f.write_str(&self.direction_string())
        } else {
            f.write_str(&self.bit_string())
        }
    }
}

impl FromStr for TransitionPattern {
    type Err = Error;

    /// Accepts `u`/`d`/`-` strings (arrows allowed, whitespace and parentheses
    /// ignored) or explicit `initial>final` bit strings such as `101>010`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        if let Some((from, to)) = cleaned.split_once('>') {
            let bits = |part: &str| -> Result<Vec<bool>> {
                part.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::InvalidPattern(format!("unexpected character {other:?} in bit string"))),
                    })
                    .collect()
            };
            return TransitionPattern::new(bits(from)?, bits(to)?);
        }
        let transitions = cleaned
            .chars()
            .map(|c| {
                Transition::from_symbol(c)
                    .ok_or_else(|| Error::InvalidPattern(format!("unexpected character {c:?} in pattern")))
            })
            .collect::<Result<Vec<_>>>()?;
        TransitionPattern::from_transitions(&transitions)
    }
}

impl Serialize for TransitionPattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TransitionPattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Per-wire transition directions Δ ∈ {−1, 0, +1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaVector(Vec<i8>);

impl DeltaVector {
    pub fn new(deltas: Vec<i8>) -> Result<Self> {
        if let Some(bad) = deltas.iter().find(|d| !(-1..=1).contains(*d)) {
            return Err(Error::InvalidPattern(format!("delta {bad} outside {{-1, 0, 1}}")));
        }
        Ok(DeltaVector(deltas))
    }

    pub fn from_transitions(transitions: &[Transition]) -> Self {
        DeltaVector(transitions.iter().map(|t| t.delta()).collect())
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        DeltaVector(self.0.iter().map(|d| -d).collect())
    }

    pub fn reversed(&self) -> Self {
        DeltaVector(self.0.iter().rev().copied().collect())
    }
}

pub fn delta_of(pattern: &TransitionPattern) -> DeltaVector {
    DeltaVector(pattern.initial.iter().zip(&pattern.final_state).map(|(&a, &b)| b as i8 - a as i8).collect())
}

/// Crosstalk class `iC`, `i ∈ 0..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrosstalkClass(u8);

impl CrosstalkClass {
    pub const C0: CrosstalkClass = CrosstalkClass(0);
    pub const C1: CrosstalkClass = CrosstalkClass(1);
    pub const C2: CrosstalkClass = CrosstalkClass(2);
    pub const C3: CrosstalkClass = CrosstalkClass(3);
    pub const C4: CrosstalkClass = CrosstalkClass(4);
    pub const ALL: [CrosstalkClass; 5] = [Self::C0, Self::C1, Self::C2, Self::C3, Self::C4];

    pub fn new(index: u8) -> Result<Self> {
        if index <= 4 {
            Ok(CrosstalkClass(index))
        } else {
            Err(Error::InvalidPattern(format!("crosstalk class {index} outside 0..=4")))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Delay factor 1 + iλ.
    pub fn factor(self, lambda: f64) -> f64 {
        1.0 + f64::from(self.0) * lambda
    }
}

impl fmt::Display for CrosstalkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}C", self.0)
    }
}

impl FromStr for CrosstalkClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_end_matches(['C', 'c']);
        let index: u8 =
            digits.parse().map_err(|_| Error::InvalidPattern(format!("cannot parse crosstalk class {s:?}")))?;
        CrosstalkClass::new(index)
    }
}

impl Serialize for CrosstalkClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CrosstalkClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which model produced a delay figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelTag {
    Baseline,
    ThreeWire,
    FiveWire,
    Boundary1,
    Boundary2,
    Simulator,
}

impl ModelTag {
    pub fn name(self) -> &'static str {
        match self {
            ModelTag::Baseline => "baseline",
            ModelTag::ThreeWire => "three-wire",
            ModelTag::FiveWire => "five-wire",
            ModelTag::Boundary1 => "boundary1",
            ModelTag::Boundary2 => "boundary2",
            ModelTag::Simulator => "simulator",
        }
    }
}

impl FromStr for ModelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ModelTag::Baseline,
            ModelTag::ThreeWire,
            ModelTag::FiveWire,
            ModelTag::Boundary1,
            ModelTag::Boundary2,
            ModelTag::Simulator,
        ]
        .into_iter()
        .find(|t| t.name() == s)
        .ok_or_else(|| Error::InvalidScenario(format!("unknown model {s:?}")))
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Delay of one wire under one model. Quiet wires carry zero delay and `0C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayEstimate {
    /// Zero-based wire index.
    pub wire: usize,
    /// Seconds.
    pub value: f64,
    pub source: ModelTag,
    pub class: CrosstalkClass,
}

/// Class of wire `k` (zero-based).
///
/// Internal wires: `2 − Δk(Δk−1 + Δk+1)`; boundary wires: `1 − Δk·Δneighbour`;
/// a lone wire or a quiet wire is `0C`.
pub fn classify_wire(delta: &DeltaVector, k: usize) -> Result<CrosstalkClass> {
    let d = delta.as_slice();
    let m = d.len();
    if k >= m {
        return Err(Error::WireOutOfRange { index: k, count: m });
    }
    let dk = i32::from(d[k]);
    if dk == 0 || m == 1 {
        return Ok(CrosstalkClass::C0);
    }
    let left = if k > 0 { Some(i32::from(d[k - 1])) } else { None };
    let right = if k + 1 < m { Some(i32::from(d[k + 1])) } else { None };
    let index = match (left, right) {
        (Some(l), Some(r)) => 2 - dk * (l + r),
        (Some(n), None) | (None, Some(n)) => 1 - dk * n,
        (None, None) => 0,
    };
    // dk = ±1 and neighbours in {-1,0,1} keep the index inside 0..=4.
    Ok(CrosstalkClass(index as u8))
}

/// Per-wire classes and the bus maximum.
pub fn classify_bus(delta: &DeltaVector) -> (Vec<CrosstalkClass>, CrosstalkClass) {
    let classes: Vec<_> = (0..delta.len()).map(|k| classify_wire(delta, k).expect("index in range")).collect();
    let max = classes.iter().copied().max().unwrap_or(CrosstalkClass::C0);
    (classes, max)
}

/// Delay of wire `k` under the lumped `(1 + iλ)·τ0` model.
pub fn baseline_delay(delta: &DeltaVector, k: usize, spec: &BusSpec) -> Result<DelayEstimate> {
    let class = classify_wire(delta, k)?;
    let value = if delta.as_slice()[k] == 0 { 0.0 } else { class.factor(spec.lambda()) * spec.tau0_baseline() };
    Ok(DelayEstimate { wire: k, value, source: ModelTag::Baseline, class })
}

/// Complements the whole pattern when wire `k` falls so that it rises.
/// Classes are invariant under the complement.
pub fn normalize_rising(pattern: &TransitionPattern, k: usize) -> Result<TransitionPattern> {
    if k >= pattern.wire_count() {
        return Err(Error::WireOutOfRange { index: k, count: pattern.wire_count() });
    }
    match pattern.transition(k) {
        Transition::Rise => Ok(pattern.clone()),
        Transition::Fall => Ok(pattern.complemented()),
        Transition::Steady => Err(Error::NoTransition { wire: k }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TransitionPattern {
        s.parse().unwrap()
    }

    fn classes(s: &str) -> Vec<u8> {
        classify_bus(&delta_of(&p(s))).0.into_iter().map(CrosstalkClass::index).collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_of(&p("000>111")).as_slice(), &[1, 1, 1]);
        assert_eq!(delta_of(&p("101>010")).as_slice(), &[-1, 1, -1]);
        assert_eq!(delta_of(&p("0110>0110")).as_slice(), &[0, 0, 0, 0]);
        assert!(matches!("01>010".parse::<TransitionPattern>(), Err(Error::InvalidPattern(_))));
    }

    #[test]
    fn middle_wire_classes() {
        let d = |s: &str| delta_of(&p(s));
        assert_eq!(classify_wire(&d("uuu"), 1).unwrap(), CrosstalkClass::C0);
        assert_eq!(classify_wire(&d("dud"), 1).unwrap(), CrosstalkClass::C4);
        assert_eq!(classify_wire(&d("---"), 0).unwrap(), CrosstalkClass::C0);
        assert_eq!(classify_wire(&d("---"), 2).unwrap(), CrosstalkClass::C0);
        assert!(matches!(classify_wire(&d("uuu"), 3), Err(Error::WireOutOfRange { .. })));
    }

    #[test]
    fn bus_classes() {
        assert_eq!(classes("ududdd"), vec![2, 4, 4, 2, 0, 0]);
        assert_eq!(classes("uu"), vec![0, 0]);
        assert_eq!(classes("ud"), vec![2, 2]);
        assert_eq!(classes("u"), vec![0]);
        assert_eq!(classify_bus(&delta_of(&p("ududdd"))).1, CrosstalkClass::C4);
    }

    #[test]
    fn baseline_matches_reference_columns() {
        let spec = BusSpec::reference_45nm(3).unwrap();
        let ps = |s: &str| baseline_delay(&delta_of(&p(s)), 1, &spec).unwrap().value * 1e12;
        assert!((ps("uuu") - 5.55).abs() < 0.005);
        assert!((ps("dud") - 277.35).abs() < 0.01);
        assert_eq!(ps("u-u"), 0.0);

        let uncoupled = spec.clone().with_coupling(0.0).unwrap();
        for s in ["uuu", "uu-", "-u-", "du-", "dud"] {
            let v = baseline_delay(&delta_of(&p(s)), 1, &uncoupled).unwrap().value;
            assert!((v - uncoupled.tau0_baseline()).abs() < 1e-24);
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_rising(&p("dud"), 1).unwrap(), p("dud"));
        assert_eq!(normalize_rising(&p("101>010"), 1).unwrap(), p("101>010"));
        assert_eq!(normalize_rising(&p("010>101"), 1).unwrap(), p("101>010"));
        assert_eq!(normalize_rising(&p("11>00"), 0).unwrap(), p("00>11"));
        assert!(matches!(normalize_rising(&p("u-u"), 1), Err(Error::NoTransition { wire: 1 })));
    }

    #[test]
    fn pattern_text_forms() {
        assert_eq!(p("↑↓-"), p("ud-"));
        assert_eq!(p("u u (d u) -"), p("uudu-"));
        let explicit = p("110>011");
        assert_eq!(explicit.to_string(), "110>011");
        assert_eq!(explicit.to_string().parse::<TransitionPattern>().unwrap(), explicit);
        assert_eq!(p("du-").to_string(), "du-");
        assert!("uxd".parse::<TransitionPattern>().is_err());
        assert!("".parse::<TransitionPattern>().is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(BusSpec::new(0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(BusSpec::new(1, -1.0, 1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(BusSpec::new(1, 1.0, 1.0, -1.0, 1.0, 0.0, 0.0).is_err());
        assert!(BusSpec::new(1, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0).unwrap().with_segments(0).is_err());
        let spec = BusSpec::reference_45nm(5).unwrap();
        assert!((spec.lambda() - 12.2396).abs() < 1e-4);
        assert!((spec.total_capacitance() - 41.315e-15).abs() < 1e-20);
        assert!((spec.total_resistance() - 68.75).abs() < 1e-9);
    }

    #[test]
    fn spec_json_uses_unit_keys() {
        let spec = BusSpec::reference_45nm(3).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("r_ohm_per_meter"));
        assert!(json.contains("load_capacitance_farad"));
        let back: BusSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let bad = json.replace("\"wire_count\":3", "\"wire_count\":0");
        assert!(serde_json::from_str::<BusSpec>(&bad).is_err());
    }
}
