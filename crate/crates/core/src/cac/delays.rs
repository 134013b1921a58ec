// SPDX-License-Identifier: Apache-2.0

//! Worst per-wire delay over every transition of a codebook.

use serde::{Deserialize, Serialize};

use super::{format_word, Codebook};
use crate::bus::{Transition, TransitionPattern};
use crate::error::{Error, Result};
use crate::search::DelayOracle;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WireWorst {
    /// 0-based.
    pub wire: usize,
    /// Seconds.
    pub delay: f64,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodebookDelays {
    pub width: usize,
    pub codewords: usize,
    pub transitions: usize,
    /// One entry per wire; `None` if the wire never switches.
    pub per_wire: Vec<Option<WireWorst>>,
    pub overall: Option<WireWorst>,
}

/// Evaluates every ordered transition of `book` with `oracle`. Ties keep the
/// first transition in ascending (from, to) order.
pub fn codebook_worst_delays(book: &Codebook, oracle: &dyn DelayOracle) -> Result<CodebookDelays> {
    let n = book.width();
    if oracle.wire_count() != n {
        return Err(Error::WidthMismatch { left: n, right: oracle.wire_count() });
    }
    let mut per_wire: Vec<Option<(f64, u32, u32)>> = vec![None; n];
    for (u, v) in book.transitions() {
        let pattern = TransitionPattern::from_codewords(u, v, n)?;
        for (k, slot) in per_wire.iter_mut().enumerate() {
            if pattern.transition(k) == Transition::Steady {
                continue;
            }
            let d = oracle.delay(&pattern, k)?;
            if slot.map_or(true, |(best, _, _)| d > best) {
                *slot = Some((d, u, v));
            }
        }
    }
    let per_wire: Vec<Option<WireWorst>> = per_wire
        .into_iter()
        .enumerate()
        .map(|(wire, w)| {
            w.map(|(delay, u, v)| WireWorst { wire, delay, from: format_word(u, n), to: format_word(v, n) })
        })
        .collect();
    let overall = per_wire
        .iter()
        .flatten()
        .fold(None::<&WireWorst>, |acc, w| match acc {
            Some(a) if a.delay >= w.delay => Some(a),
            _ => Some(w),
        })
        .cloned();
    Ok(CodebookDelays { width: n, codewords: book.len(), transitions: book.transition_count(), per_wire, overall })
}
