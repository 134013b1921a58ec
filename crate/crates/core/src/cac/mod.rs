// SPDX-License-Identifier: Apache-2.0

//! Crosstalk-avoidance codebooks: sets of bus states whose every transition
//! stays at or below a crosstalk class.
//!
//! Codeword bits are written most significant first, and the first bit
//! drives wire 1.

mod clique;
mod delays;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use delays::{codebook_worst_delays, CodebookDelays, WireWorst};

use crate::bus::{classify_bus, delta_of, CrosstalkClass, TransitionPattern};
use crate::error::{Error, Result};
use clique::{lex_max_clique, Bits, Graph};

/// Widest codebook the exact search accepts.
pub const MAX_SEARCH_WIDTH: usize = 12;

/// Default node budget of the clique search.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

fn check_width(width: usize) -> Result<()> {
    if width == 0 || width > 32 {
        return Err(Error::InvalidSpec(format!("codeword width must be 1..=32, got {width}")));
    }
    Ok(())
}

fn check_word(word: u32, width: usize) -> Result<()> {
    if width < 32 && word >> width != 0 {
        return Err(Error::WidthMismatch { left: 32 - word.leading_zeros() as usize, right: width });
    }
    Ok(())
}

/// Worst class over all wires of the transition `u → v`.
pub fn pair_class(u: u32, v: u32, width: usize) -> Result<CrosstalkClass> {
    check_width(width)?;
    check_word(u, width)?;
    check_word(v, width)?;
    let pattern = TransitionPattern::from_codewords(u, v, width)?;
    Ok(classify_bus(&delta_of(&pattern)).1)
}

/// Bit-string form of [`pair_class`].
pub fn pair_class_bits(u: &str, v: &str) -> Result<CrosstalkClass> {
    if u.len() != v.len() {
        return Err(Error::WidthMismatch { left: u.len(), right: v.len() });
    }
    pair_class(parse_word(u)?, parse_word(v)?, u.len())
}

pub fn parse_word(bits: &str) -> Result<u32> {
    if bits.is_empty() || bits.len() > 32 || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidPattern(format!("codeword {bits:?} is not a 1..=32 digit bit string")));
    }
    Ok(u32::from_str_radix(bits, 2).expect("validated bits"))
}

pub fn format_word(word: u32, width: usize) -> String {
    (0..width).rev().map(|b| if word >> b & 1 == 1 { '1' } else { '0' }).collect()
}

/// Worst class of `u → v` computed straight from the bits. The generator
/// uses this; certification goes through [`pair_class`] instead.
fn fast_pair_class(u: u32, v: u32, width: usize) -> u8 {
    let delta = |k: usize| -> i32 {
        let bit = width - 1 - k;
        ((v >> bit) & 1) as i32 - ((u >> bit) & 1) as i32
    };
    let mut worst = 0;
    for k in 0..width {
        let d = delta(k);
        if d == 0 {
            continue;
        }
        let left = if k > 0 { Some(delta(k - 1)) } else { None };
        let right = if k + 1 < width { Some(delta(k + 1)) } else { None };
        let class = match (left, right) {
            (Some(a), Some(b)) => 2 - d * (a + b),
            (Some(a), None) | (None, Some(a)) => 1 - d * a,
            (None, None) => 0,
        };
        worst = worst.max(class);
    }
    worst as u8
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Transitions capped at 1C.
    Olc,
    /// Codewords free of `010` and `101`.
    Fpc,
    /// Transitions capped at 3C.
    Foc,
}

impl Family {
    pub fn cap(self) -> CrosstalkClass {
        match self {
            Family::Olc => CrosstalkClass::C1,
            Family::Fpc => CrosstalkClass::C2,
            Family::Foc => CrosstalkClass::C3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Olc => "olc",
            Family::Fpc => "fpc",
            Family::Foc => "foc",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "olc" => Ok(Family::Olc),
            "fpc" => Ok(Family::Fpc),
            "foc" => Ok(Family::Foc),
            _ => Err(Error::InvalidScenario(format!("unknown code family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCodebook", into = "RawCodebook")]
pub struct Codebook {
    width: usize,
    /// Ascending, no duplicates.
    codewords: Vec<u32>,
    class_cap: CrosstalkClass,
    /// False when the exact search ran out of budget.
    optimal: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCodebook {
    width: usize,
    cap: CrosstalkClass,
    codewords: Vec<String>,
    #[serde(default = "yes")]
    optimal: bool,
}

fn yes() -> bool {
    true
}

impl TryFrom<RawCodebook> for Codebook {
    type Error = Error;

    fn try_from(raw: RawCodebook) -> Result<Self> {
        let mut words = Vec::with_capacity(raw.codewords.len());
        for bits in &raw.codewords {
            if bits.len() != raw.width {
                return Err(Error::WidthMismatch { left: bits.len(), right: raw.width });
            }
            words.push(parse_word(bits)?);
        }
        let mut book = Codebook::new(raw.width, words, raw.cap)?;
        book.optimal = raw.optimal;
        Ok(book)
    }
}

impl From<Codebook> for RawCodebook {
    fn from(book: Codebook) -> Self {
        RawCodebook {
            width: book.width,
            cap: book.class_cap,
            codewords: book.codewords.iter().map(|&w| format_word(w, book.width)).collect(),
            optimal: book.optimal,
        }
    }
}

impl Codebook {
    /// Sorts the codewords; duplicates and out-of-width words are errors.
    /// The cap is recorded, not checked: see [`certify`].
    pub fn new(width: usize, mut codewords: Vec<u32>, class_cap: CrosstalkClass) -> Result<Self> {
        check_width(width)?;
        for &w in &codewords {
            check_word(w, width)?;
        }
        codewords.sort_unstable();
        if let Some(pair) = codewords.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::InvalidPattern(format!("duplicate codeword {}", format_word(pair[0], width))));
        }
        Ok(Codebook { width, codewords, class_cap, optimal: true })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn codewords(&self) -> &[u32] {
        &self.codewords
    }

    pub fn class_cap(&self) -> CrosstalkClass {
        self.class_cap
    }

    pub fn is_optimal(&self) -> bool {
        self.optimal
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Ordered pairs of distinct codewords.
    pub fn transition_count(&self) -> usize {
        self.len() * self.len().saturating_sub(1)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.codewords.iter().flat_map(move |&u| self.codewords.iter().filter(move |&&v| v != u).map(move |&v| (u, v)))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Largest codebook on `n` wires whose transitions all stay at or below
/// `cap`, found by exact clique search. Among optimal books the one with the
/// lexicographically smallest ascending codeword list is returned. If the
/// search exceeds `node_budget` the best book found so far comes back with
/// `is_optimal() == false`.
pub fn generate_codebook(n: usize, cap: CrosstalkClass, node_budget: u64) -> Result<Codebook> {
    if n == 0 || n > MAX_SEARCH_WIDTH {
        return Err(Error::Budget(format!("exact codebook search supports 1..={MAX_SEARCH_WIDTH} wires, got {n}")));
    }
    let size = 1usize << n;
    let mut adj = vec![Bits::empty(size); size];
    for u in 0..size {
        for v in u + 1..size {
            if fast_pair_class(u as u32, v as u32, n) <= cap.index() {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    let (clique, optimal) = lex_max_clique(&Graph { adj }, node_budget);
    let mut book = Codebook::new(n, clique.into_iter().map(|v| v as u32).collect(), cap)?;
    book.optimal = optimal;
    Ok(book)
}

/// All `n`-bit words containing neither `010` nor `101`.
pub fn fpc_set(n: usize) -> Result<Codebook> {
    check_width(n)?;
    if n > 24 {
        return Err(Error::Budget(format!("fpc enumeration capped at 24 wires, got {n}")));
    }
    let words = (0..1u32 << n)
        .filter(|&w| {
            (0..n.saturating_sub(2)).all(|s| {
                let tri = (w >> s) & 0b111;
                tri != 0b010 && tri != 0b101
            })
        })
        .collect();
    Codebook::new(n, words, CrosstalkClass::C2)
}

pub fn family_codebook(n: usize, family: Family, node_budget: u64) -> Result<Codebook> {
    match family {
        Family::Fpc => fpc_set(n),
        Family::Olc | Family::Foc => generate_codebook(n, family.cap(), node_budget),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub from: String,
    pub to: String,
    pub class: CrosstalkClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub width: usize,
    pub cap: CrosstalkClass,
    pub codewords: usize,
    pub transitions: usize,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Re-checks every ordered pair of `book` against its cap.
pub fn certify(book: &Codebook) -> Result<Certificate> {
    let mut violations = Vec::new();
    for (u, v) in book.transitions() {
        let class = pair_class(u, v, book.width)?;
        if class > book.class_cap {
            violations.push(Violation { from: format_word(u, book.width), to: format_word(v, book.width), class });
        }
    }
    Ok(Certificate {
        width: book.width,
        cap: book.class_cap,
        codewords: book.len(),
        transitions: book.transition_count(),
        valid: violations.is_empty(),
        violations,
    })
}
