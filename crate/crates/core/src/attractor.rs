//! String attractors: position sets such that every substring of the text has
//! an occurrence covering at least one of the positions.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::text::Text;

/// Largest text the exhaustive validator accepts by default.
pub const DEFAULT_VALIDATION_CAP: usize = 4096;

/// A strictly increasing set of 1-based text positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Attractor {
    positions: Vec<u64>,
}

impl Attractor {
    /// Checks ordering, range, and non-emptiness against a text of length `n`.
    pub fn new(positions: Vec<u64>, n: usize) -> Result<Self> {
        if n > 0 && positions.is_empty() {
            return Err(Error::InvalidAttractor("empty set for a nonempty text".into()));
        }
        if n == 0 && !positions.is_empty() {
            return Err(Error::InvalidAttractor("positions given for the empty text".into()));
        }
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidAttractor(format!(
                    "positions not strictly increasing at {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&p) = positions.iter().find(|&&p| p == 0 || p > n as u64) {
            return Err(Error::InvalidAttractor(format!("position {p} outside [1..{n}]")));
        }
        Ok(Attractor { positions })
    }

    /// Sorts and deduplicates arbitrary positions, then checks them.
    pub fn from_unsorted(mut positions: Vec<u64>, n: usize) -> Result<Self> {
        positions.sort_unstable();
        positions.dedup();
        Attractor::new(positions, n)
    }

    /// Every position of the text.
    pub fn all(n: usize) -> Self {
        Attractor { positions: (1..=n as u64).collect() }
    }

    pub fn positions(&self) -> &[u64] {
        &self.positions
    }

    /// Number of positions (gamma).
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    /// Parses one decimal position per line; blank lines are skipped.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let positions = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.parse::<u64>().map_err(|e| Error::Parse(format!("bad position {l:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Attractor::new(positions, n)
    }

    /// One position per line, newline terminated.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for p in &self.positions {
            writeln!(out, "{p}").unwrap();
        }
        out
    }
}

/// Exhaustive attractor check with the default cap.
pub fn validate_attractor(text: &Text, gamma: &Attractor) -> Result<bool> {
    validate_attractor_capped(text, gamma, DEFAULT_VALIDATION_CAP)
}

pub fn validate_attractor_capped(text: &Text, gamma: &Attractor, cap: usize) -> Result<bool> {
    Ok(find_uncovered(text, gamma, cap)?.is_none())
}

/// Returns the leftmost shortest substring `[i, j]` none of whose occurrences
/// covers an attractor position, or `None` when `gamma` is an attractor.
///
/// Substrings of each length are grouped into equality classes by refining the
/// classes of the previous length with one more symbol, so the check is exact
/// and runs in O(n^2) expected time.
pub fn find_uncovered(text: &Text, gamma: &Attractor, cap: usize) -> Result<Option<(usize, usize)>> {
    let n = text.len();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(None);
    }
    if gamma.positions().iter().any(|&p| p == 0 || p > n as u64) {
        return Err(Error::InvalidAttractor("position outside the text".into()));
    }

    // next_attr[p] = smallest attractor position >= p (1-based), or usize::MAX.
    let mut next_attr = vec![usize::MAX; n + 2];
    for p in (1..=n).rev() {
        next_attr[p] = if gamma.contains(p as u64) { p } else { next_attr[p + 1] };
    }

    let mut ids: HashMap<(u32, u64), u32> = HashMap::new();
    // class[p - 1] = class of the substring of the current length starting at p.
    let mut class: Vec<u32> = vec![0; n];
    let mut covered: Vec<bool> = Vec::new();
    for len in 1..=n {
        let starts = n - len + 1;
        ids.clear();
        for p in 1..=starts {
            let prev = if len == 1 { 0 } else { class[p - 1] };
            let key = (prev, text.at(p + len - 1));
            let next = ids.len() as u32;
            class[p - 1] = *ids.entry(key).or_insert(next);
        }
        let classes = ids.len();
        covered.clear();
        covered.resize(classes, false);
        for p in 1..=starts {
            if next_attr[p] < p + len {
                covered[class[p - 1] as usize] = true;
            }
        }
        if let Some(p) = (1..=starts).find(|&p| !covered[class[p - 1] as usize]) {
            return Ok(Some((p, p + len - 1)));
        }
        if classes == starts {
            // Every substring of this length is unique and covered in place;
            // longer substrings extend these occurrences and stay covered.
            return Ok(None);
        }
    }
    Ok(None)
}

/// Attractor for the gap string of `bits`, derived from an attractor of `bits`.
///
/// Starts from `{1}`; each position `i` of `gamma` contributes `r+1, r+2` when
/// `bits[i] = 0` and `r, r+1` when `bits[i] = 1`, where `r = rank1(i)`.
/// Values outside `[1..m]` are dropped. The result has at most `2 gamma + 1`
/// positions.
pub fn gap_attractor(bits: &Text, gamma: &Attractor) -> Result<Attractor> {
    bits.ensure_binary()?;
    let mut rank = vec![0u64; bits.len() + 1];
    for i in 1..=bits.len() {
        rank[i] = rank[i - 1] + bits.at(i);
    }
    let m = rank[bits.len()];
    if m == 0 {
        return Err(Error::EmptySet);
    }
    let mut out = vec![1u64];
    for &p in gamma.positions() {
        let i = p as usize;
        if i == 0 || i > bits.len() {
            return Err(Error::InvalidAttractor(format!("position {p} outside the bitstring")));
        }
        let r = rank[i];
        let (a, b) = if bits.at(i) == 0 { (r + 1, r + 2) } else { (r, r + 1) };
        out.extend([a, b].into_iter().filter(|&x| (1..=m).contains(&x)));
    }
    Attractor::from_unsorted(out, m as usize)
}
