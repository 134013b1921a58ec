// SPDX-License-Identifier: Apache-2.0

//! Worst-case pattern search for the middle wire of an odd-width bus.
//!
//! The middle three wires are pinned to a representative of the class; the
//! outer wires are searched. Three strategies: a full `3^(m−3)` sweep, a
//! sweep over mirror-symmetric `↑↑`/`↓↓` pairs, and the greedy pair-flip
//! search that starts from all outer wires opposing the victim.

use serde::{Deserialize, Serialize};

use crate::analytic::{wire_delay, ProfileEvaluator};
use crate::bus::{classify_wire, delta_of, BusSpec, CrosstalkClass, Transition, TransitionPattern};
use crate::error::{Error, Result};
use crate::sim::ResponseBank;

/// Flips must raise the delay by more than this to be accepted, and a later
/// candidate must beat the incumbent by more than this to replace it.
pub const DELAY_TIE: f64 = 1e-15;

/// Default cap on oracle calls for the sweeps: `3^8`, enough for `m = 11`.
pub const DEFAULT_BUDGET: u64 = 6561;

/// Anything that can time one wire of a pattern.
pub trait DelayOracle {
    fn wire_count(&self) -> usize;
    fn delay(&self, pattern: &TransitionPattern, wire: usize) -> Result<f64>;
}

impl DelayOracle for ResponseBank {
    fn wire_count(&self) -> usize {
        ResponseBank::wire_count(self)
    }

    fn delay(&self, pattern: &TransitionPattern, wire: usize) -> Result<f64> {
        ResponseBank::delay(self, pattern, wire)
    }
}

/// Analytic window profile used as an oracle.
#[derive(Debug, Clone)]
pub struct AnalyticOracle {
    pub spec: BusSpec,
    pub evaluator: ProfileEvaluator,
}

impl DelayOracle for AnalyticOracle {
    fn wire_count(&self) -> usize {
        self.spec.wire_count()
    }

    fn delay(&self, pattern: &TransitionPattern, wire: usize) -> Result<f64> {
        Ok(wire_delay(pattern, wire, &self.spec, self.evaluator)?.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryStep {
    pub pattern: TransitionPattern,
    /// Seconds.
    pub delay: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub class: CrosstalkClass,
    pub pattern: TransitionPattern,
    /// Seconds.
    pub delay: f64,
    /// Passes for the greedy search; candidates for the sweeps.
    pub iterations: u64,
    pub evaluations: u64,
    /// Accepted patterns in order, starting point first. The sweeps record
    /// each new incumbent.
    pub trajectory: Vec<TrajectoryStep>,
}

/// Middle-three pattern used for each class, victim rising.
pub fn class_representative(class: CrosstalkClass) -> TransitionPattern {
    ["uuu", "uu-", "-u-", "du-", "dud"][usize::from(class.index())].parse().expect("static pattern")
}

fn check_width(m: usize, oracle: &dyn DelayOracle, min: usize) -> Result<()> {
    if m % 2 == 0 || m < min {
        return Err(Error::Unsupported(format!("search needs an odd wire count of at least {min}, got {m}")));
    }
    if oracle.wire_count() != m {
        return Err(Error::InvalidSpec(format!("oracle models {} wires, search asked for {m}", oracle.wire_count())));
    }
    Ok(())
}

fn check_middle(middle: &TransitionPattern, class: CrosstalkClass) -> Result<()> {
    if middle.wire_count() != 3 {
        return Err(Error::InvalidPattern(format!("middle pattern needs 3 wires, got {}", middle.wire_count())));
    }
    if middle.transition(1) == Transition::Steady {
        return Err(Error::NoTransition { wire: 1 });
    }
    let got = classify_wire(&delta_of(middle), 1)?;
    if got != class {
        return Err(Error::InvalidPattern(format!("middle pattern {middle} is {got}, not {class}")));
    }
    Ok(())
}

fn assemble(outer: &[Transition], middle: &TransitionPattern) -> Result<TransitionPattern> {
    let half = outer.len() / 2;
    let mut all = Vec::with_capacity(outer.len() + 3);
    all.extend_from_slice(&outer[..half]);
    all.extend(middle.transitions());
    all.extend_from_slice(&outer[half..]);
    TransitionPattern::from_transitions(&all)
}

/// Greedy symmetric pair flipping.
///
/// Outer wires start opposite to the victim. Each pass visits the pairs
/// `(j, m+1−j)` from the innermost (`j = (m−3)/2`) outwards, reverses both
/// directions, and keeps the flip only if the victim delay rises by more
/// than [`DELAY_TIE`]. Passes repeat until one changes nothing.
pub fn alg1(
    m: usize,
    class: CrosstalkClass,
    middle: &TransitionPattern,
    oracle: &dyn DelayOracle,
) -> Result<SearchReport> {
    check_width(m, oracle, 5)?;
    check_middle(middle, class)?;
    let victim = m / 2;
    let pairs = (m - 3) / 2;
    // Outer wires, left half then right half.
    let mut outer = vec![middle.transition(1).flipped(); 2 * pairs];
    let mut pattern = assemble(&outer, middle)?;
    let mut best = oracle.delay(&pattern, victim)?;
    let mut evaluations = 1;
    let mut trajectory = vec![TrajectoryStep { pattern: pattern.clone(), delay: best }];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut changed = false;
        for j in (1..=pairs).rev() {
            // 1-based wires j and m+1−j are outer[j−1] and outer[2·pairs − j].
            let (a, b) = (j - 1, 2 * pairs - j);
            outer[a] = outer[a].flipped();
            outer[b] = outer[b].flipped();
            let candidate = assemble(&outer, middle)?;
            let d = oracle.delay(&candidate, victim)?;
            evaluations += 1;
            if d > best + DELAY_TIE {
                best = d;
                pattern = candidate;
                trajectory.push(TrajectoryStep { pattern: pattern.clone(), delay: best });
                changed = true;
            } else {
                outer[a] = outer[a].flipped();
                outer[b] = outer[b].flipped();
            }
        }
        if !changed {
            break;
        }
    }
    Ok(SearchReport { class, pattern, delay: best, iterations, evaluations, trajectory })
}

/// Sweeps `candidates` outer assignments in order and keeps the first
/// pattern attaining the maximum (up to [`DELAY_TIE`]).
fn sweep(
    class: CrosstalkClass,
    middle: &TransitionPattern,
    oracle: &dyn DelayOracle,
    candidates: impl Iterator<Item = Vec<Transition>>,
) -> Result<SearchReport> {
    let victim = oracle.wire_count() / 2;
    let mut best: Option<(TransitionPattern, f64)> = None;
    let mut trajectory = Vec::new();
    let mut evaluations = 0;
    for outer in candidates {
        let pattern = assemble(&outer, middle)?;
        let d = oracle.delay(&pattern, victim)?;
        evaluations += 1;
        if best.as_ref().map_or(true, |(_, b)| d > b + DELAY_TIE) {
            trajectory.push(TrajectoryStep { pattern: pattern.clone(), delay: d });
            best = Some((pattern, d));
        }
    }
    let (pattern, delay) = best.expect("at least one candidate");
    Ok(SearchReport { class, pattern, delay, iterations: evaluations, evaluations, trajectory })
}

fn budget_check(count: u64, budget: u64, what: &str) -> Result<()> {
    if count > budget {
        return Err(Error::Budget(format!("{what} needs {count} evaluations, budget is {budget}")));
    }
    Ok(())
}

/// Every assignment of `↓`, `-`, `↑` to the outer wires, in lexicographic
/// order of the full pattern with `↓ < - < ↑`.
pub fn exhaustive(m: usize, class: CrosstalkClass, oracle: &dyn DelayOracle, budget: u64) -> Result<SearchReport> {
    check_width(m, oracle, 3)?;
    let free = m - 3;
    let count = 3u64.checked_pow(free as u32).unwrap_or(u64::MAX);
    budget_check(count, budget, "exhaustive search")?;
    let middle = class_representative(class);
    let candidates = (0..count).map(move |mut code| {
        let mut outer = vec![Transition::Fall; free];
        for slot in outer.iter_mut().rev() {
            *slot = Transition::ALL[(code % 3) as usize];
            code /= 3;
        }
        outer
    });
    sweep(class, &middle, oracle, candidates)
}

/// Mirror-symmetric patterns whose outer pairs are `↑↑` or `↓↓`, in
/// lexicographic order with `↓ < ↑`.
pub fn symmetric_enumerate(
    m: usize,
    class: CrosstalkClass,
    oracle: &dyn DelayOracle,
    budget: u64,
) -> Result<SearchReport> {
    check_width(m, oracle, 3)?;
    let pairs = (m - 3) / 2;
    let count = 1u64.checked_shl(pairs as u32).unwrap_or(u64::MAX);
    budget_check(count, budget, "symmetric enumeration")?;
    let middle = class_representative(class);
    let candidates = (0..count).map(move |code| {
        let left: Vec<Transition> = (0..pairs)
            .map(|j| if (code >> (pairs - 1 - j)) & 1 == 1 { Transition::Rise } else { Transition::Fall })
            .collect();
        let mut outer = left.clone();
        outer.extend(left.iter().rev());
        outer
    });
    sweep(class, &middle, oracle, candidates)
}
