//! Rank, select, access and predecessor, each reduced to partial sums.
//!
//! * rank: one partial-sum index per symbol over the symbol's bitstring
//!   projection, all sharing the text's attractor.
//! * select: one partial-sum index per symbol over the gap string of the
//!   projection, with the attractor rebuilt by [`gap_attractor`].
//! * access: difference of consecutive partial sums on the raw text.
//! * predecessor: `select1(rank1(y))` on a membership bitstring.

use std::collections::HashMap;

use crate::attractor::{gap_attractor, Attractor};
use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::psum::{IndexParams, PsumIndex, SpaceStats};
use crate::text::{gap_encode, Text};

/// Clamps `tau` into the legal range of a sub-structure.
fn fit_tau(tau: u64, n: usize, gamma: usize) -> u64 {
    tau.clamp(2, IndexParams::max_tau(n, gamma))
}

fn sum_stats<'a>(parts: impl Iterator<Item = &'a PsumIndex>) -> SpaceStats {
    let mut total = SpaceStats { blocks_per_level: Vec::new(), pointers: 0, explicit_entries: 0, stored_words: 0 };
    for idx in parts {
        let s = idx.space_stats();
        if total.blocks_per_level.len() < s.blocks_per_level.len() {
            total.blocks_per_level.resize(s.blocks_per_level.len(), 0);
        }
        for (acc, b) in total.blocks_per_level.iter_mut().zip(&s.blocks_per_level) {
            *acc += b;
        }
        total.pointers += s.pointers;
        total.explicit_entries += s.explicit_entries;
        total.stored_words += s.stored_words;
    }
    total
}

/// Access and partial sums on the raw integer text.
pub type AccessIndex = PsumIndex;

/// `rank_c(i)` for every symbol `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankIndex {
    n: usize,
    by_symbol: HashMap<u64, PsumIndex>,
}

impl RankIndex {
    pub fn build(text: &Text, gamma: &Attractor, tau: u64) -> Result<Self> {
        let mut by_symbol = HashMap::new();
        for c in text.alphabet() {
            let proj = text.project(c);
            by_symbol.insert(c, PsumIndex::build(&proj, gamma, tau)?);
        }
        Ok(RankIndex { n: text.len(), by_symbol })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Occurrences of `c` in `S[1..i]`; symbols absent from the text count 0.
    pub fn rank(&self, c: u64, i: u64) -> Result<u64> {
        if i > self.n as u64 {
            return Err(Error::OutOfRange { pos: i, lo: 0, hi: self.n as u64 });
        }
        match self.by_symbol.get(&c) {
            Some(idx) => idx.psum(i),
            None => Ok(0),
        }
    }

    pub fn descent_depth(&self, c: u64, i: u64) -> Result<usize> {
        if i > self.n as u64 {
            return Err(Error::OutOfRange { pos: i, lo: 0, hi: self.n as u64 });
        }
        match self.by_symbol.get(&c) {
            Some(idx) => idx.descent_depth(i),
            None => Ok(0),
        }
    }

    /// `S[i]`, found as the symbol whose rank increases at `i`.
    pub fn access(&self, i: u64) -> Result<u64> {
        if i == 0 || i > self.n as u64 {
            return Err(Error::OutOfRange { pos: i, lo: 1, hi: self.n as u64 });
        }
        for c in self.symbols() {
            let idx = &self.by_symbol[&c];
            if idx.psum(i)? != idx.psum(i - 1)? {
                return Ok(c);
            }
        }
        unreachable!("every position holds some symbol")
    }

    pub fn symbols(&self) -> Vec<u64> {
        let mut s: Vec<u64> = self.by_symbol.keys().copied().collect();
        s.sort_unstable();
        s
    }

    pub fn structure(&self, c: u64) -> Option<&PsumIndex> {
        self.by_symbol.get(&c)
    }

    pub fn space_stats(&self) -> SpaceStats {
        let symbols = self.symbols();
        sum_stats(symbols.iter().map(|c| &self.by_symbol[c]))
    }

    pub(crate) fn encode(&self, w: &mut Writer) {
        w.u64(self.n as u64);
        let symbols = self.symbols();
        w.u64(symbols.len() as u64);
        for c in symbols {
            w.u64(c);
            self.by_symbol[&c].encode(w);
        }
    }

    pub(crate) fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.u64()? as usize;
        let count = r.count(8)?;
        let mut by_symbol = HashMap::with_capacity(count);
        for _ in 0..count {
            let c = r.u64()?;
            let idx = PsumIndex::decode(r)?;
            if idx.len() != n {
                return Err(Error::Format("rank sub-index length mismatch".into()));
            }
            if by_symbol.insert(c, idx).is_some() {
                return Err(Error::Format(format!("duplicate symbol {c}")));
            }
        }
        Ok(RankIndex { n, by_symbol })
    }
}

/// Per-symbol select over the gap string of the symbol's projection.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SymbolSelect {
    count: u64,
    gaps: PsumIndex,
}

/// `select_c(k)` for every symbol `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectIndex {
    n: usize,
    by_symbol: HashMap<u64, SymbolSelect>,
}

impl SelectIndex {
    /// `tau` is clamped into each gap string's legal range.
    pub fn build(text: &Text, gamma: &Attractor, tau: u64) -> Result<Self> {
        let mut by_symbol = HashMap::new();
        for c in text.alphabet() {
            let proj = text.project(c);
            let gaps = gap_encode(&proj)?;
            let gap_gamma = gap_attractor(&proj, gamma)?;
            let gap_text = gaps.to_text();
            let tau = fit_tau(tau, gap_text.len(), gap_gamma.len());
            let idx = PsumIndex::build(&gap_text, &gap_gamma, tau)?;
            by_symbol.insert(c, SymbolSelect { count: gaps.len() as u64, gaps: idx });
        }
        Ok(SelectIndex { n: text.len(), by_symbol })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Occurrences of `c` in the whole text.
    pub fn count(&self, c: u64) -> u64 {
        self.by_symbol.get(&c).map_or(0, |s| s.count)
    }

    fn entry(&self, c: u64, k: u64) -> Result<&SymbolSelect> {
        match self.by_symbol.get(&c) {
            Some(s) if (1..=s.count).contains(&k) => Ok(s),
            other => Err(Error::RankOutOfRange { symbol: c, k, count: other.map_or(0, |s| s.count) }),
        }
    }

    /// Position of the `k`-th occurrence of `c`.
    pub fn select(&self, c: u64, k: u64) -> Result<u64> {
        self.entry(c, k)?.gaps.psum(k)
    }

    pub fn descent_depth(&self, c: u64, k: u64) -> Result<usize> {
        self.entry(c, k)?.gaps.descent_depth(k)
    }

    pub fn structure(&self, c: u64) -> Option<&PsumIndex> {
        self.by_symbol.get(&c).map(|s| &s.gaps)
    }

    pub fn symbols(&self) -> Vec<u64> {
        let mut s: Vec<u64> = self.by_symbol.keys().copied().collect();
        s.sort_unstable();
        s
    }

    pub fn space_stats(&self) -> SpaceStats {
        let symbols = self.symbols();
        sum_stats(symbols.iter().map(|c| &self.by_symbol[c].gaps))
    }

    pub(crate) fn encode(&self, w: &mut Writer) {
        w.u64(self.n as u64);
        let symbols = self.symbols();
        w.u64(symbols.len() as u64);
        for c in symbols {
            let s = &self.by_symbol[&c];
            w.u64(c);
            w.u64(s.count);
            s.gaps.encode(w);
        }
    }

    pub(crate) fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.u64()? as usize;
        let count = r.count(16)?;
        let mut by_symbol = HashMap::with_capacity(count);
        for _ in 0..count {
            let c = r.u64()?;
            let occ = r.u64()?;
            let gaps = PsumIndex::decode(r)?;
            if gaps.len() as u64 != occ || occ == 0 {
                return Err(Error::Format("select sub-index count mismatch".into()));
            }
            if by_symbol.insert(c, SymbolSelect { count: occ, gaps }).is_some() {
                return Err(Error::Format(format!("duplicate symbol {c}")));
            }
        }
        Ok(SelectIndex { n, by_symbol })
    }
}

/// Predecessor queries on `U = { i : S[i] != 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredSet {
    n: usize,
    members: u64,
    rank: PsumIndex,
    select: Option<PsumIndex>,
}

impl PredSet {
    /// Builds over the membership bitstring of `text` (nonzero symbols are
    /// members). An attractor of `text` is also one of that bitstring.
    pub fn build(text: &Text, gamma: &Attractor, tau: u64) -> Result<Self> {
        let bits = Text::new(text.symbols().iter().map(|&s| u64::from(s != 0)).collect());
        let rank = PsumIndex::build(&bits, gamma, tau)?;
        let gaps = gap_encode(&bits)?;
        let select = if gaps.is_empty() {
            None
        } else {
            let gap_gamma = gap_attractor(&bits, gamma)?;
            let gap_text = gaps.to_text();
            let tau = fit_tau(tau, gap_text.len(), gap_gamma.len());
            Some(PsumIndex::build(&gap_text, &gap_gamma, tau)?)
        };
        Ok(PredSet { n: text.len(), members: gaps.len() as u64, rank, select })
    }

    /// Universe size.
    pub fn universe(&self) -> usize {
        self.n
    }

    /// Number of members (m).
    pub fn members(&self) -> u64 {
        self.members
    }

    /// Largest member `<= y`, or `None` when every member exceeds `y`.
    pub fn predecessor(&self, y: u64) -> Result<Option<u64>> {
        if y == 0 || y > self.n as u64 {
            return Err(Error::OutOfRange { pos: y, lo: 1, hi: self.n as u64 });
        }
        let r = self.rank.psum(y)?;
        match (r, &self.select) {
            (0, _) => Ok(None),
            (r, Some(sel)) => sel.psum(r).map(Some),
            (_, None) => unreachable!("nonzero rank implies members"),
        }
    }

    /// Levels visited by the rank descent plus the select descent.
    pub fn descent_depth(&self, y: u64) -> Result<usize> {
        if y == 0 || y > self.n as u64 {
            return Err(Error::OutOfRange { pos: y, lo: 1, hi: self.n as u64 });
        }
        let r = self.rank.psum(y)?;
        let mut depth = self.rank.descent_depth(y)?;
        if let (true, Some(sel)) = (r > 0, &self.select) {
            depth += sel.descent_depth(r)?;
        }
        Ok(depth)
    }

    pub fn rank_structure(&self) -> &PsumIndex {
        &self.rank
    }

    pub fn select_structure(&self) -> Option<&PsumIndex> {
        self.select.as_ref()
    }

    pub fn space_stats(&self) -> SpaceStats {
        sum_stats(std::iter::once(&self.rank).chain(self.select.as_ref()))
    }

    pub(crate) fn encode(&self, w: &mut Writer) {
        w.u64(self.n as u64);
        w.u64(self.members);
        self.rank.encode(w);
        match &self.select {
            Some(s) => {
                w.u64(1);
                s.encode(w);
            }
            None => w.u64(0),
        }
    }

    pub(crate) fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.u64()? as usize;
        let members = r.u64()?;
        let rank = PsumIndex::decode(r)?;
        let select = match r.u64()? {
            0 => None,
            1 => Some(PsumIndex::decode(r)?),
            _ => return Err(Error::Format("bad select flag".into())),
        };
        if rank.len() != n || select.as_ref().map_or(0, |s| s.len() as u64) != members {
            return Err(Error::Format("predecessor structure size mismatch".into()));
        }
        Ok(PredSet { n, members, rank, select })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lz77::lz77_attractor;

    fn abra() -> (Text, Attractor) {
        let t = Text::from_bytes(b"abracadabra");
        let g = lz77_attractor(&t);
        (t, g)
    }

    const A: u64 = b'a' as u64;

    #[test]
    fn rank_examples() {
        let (t, g) = abra();
        let r = RankIndex::build(&t, &g, 2).unwrap();
        assert_eq!(r.rank(A, 5).unwrap(), 2);
        assert_eq!(r.rank(A, 0).unwrap(), 0);
        assert_eq!(r.rank(u64::from(b'z'), 11).unwrap(), 0);
        let total: u64 = t.alphabet().iter().map(|&c| r.rank(c, 11).unwrap()).sum();
        assert_eq!(total, 11);
        assert!(matches!(r.rank(A, 12), Err(Error::OutOfRange { .. })));
        assert_eq!(r.access(4).unwrap(), A);
    }

    #[test]
    fn select_examples() {
        let (t, g) = abra();
        let s = SelectIndex::build(&t, &g, 2).unwrap();
        assert_eq!(s.select(A, 3).unwrap(), 6);
        assert_eq!(s.select(A, 1).unwrap(), 1);
        assert_eq!(s.count(A), 5);
        assert_eq!(s.select(A, 6), Err(Error::RankOutOfRange { symbol: A, k: 6, count: 5 }));
        assert_eq!(s.select(A, 0), Err(Error::RankOutOfRange { symbol: A, k: 0, count: 5 }));
        assert_eq!(s.select(7, 1), Err(Error::RankOutOfRange { symbol: 7, k: 1, count: 0 }));

        let bits = Text::from_bits_str("0010011").unwrap();
        let s = SelectIndex::build(&bits, &Attractor::new(vec![2, 3, 7], 7).unwrap(), 2).unwrap();
        assert_eq!(s.select(1, 2).unwrap(), 6);
    }

    #[test]
    fn access_example() {
        let t = Text::new(vec![2, 0, 1, 3]);
        let idx = AccessIndex::build(&t, &lz77_attractor(&t), 2).unwrap();
        assert_eq!(idx.access(3).unwrap(), 1);
        assert!(idx.access(0).is_err());
        assert!(idx.access(5).is_err());

        let zeros = Text::new(vec![0; 9]);
        let idx = AccessIndex::build(&zeros, &lz77_attractor(&zeros), 2).unwrap();
        assert!((1..=9).all(|i| idx.access(i).unwrap() == 0));
    }

    #[test]
    fn predecessor_examples() {
        let bits = Text::from_bits_str("0010011").unwrap();
        let p = PredSet::build(&bits, &lz77_attractor(&bits), 2).unwrap();
        assert_eq!(p.members(), 3);
        assert_eq!(p.predecessor(5).unwrap(), Some(3));
        assert_eq!(p.predecessor(2).unwrap(), None);
        assert_eq!(p.predecessor(7).unwrap(), Some(7));
        assert!(p.predecessor(0).is_err());
        assert!(p.predecessor(8).is_err());
    }

    #[test]
    fn predecessor_on_empty_set() {
        let bits = Text::new(vec![0; 5]);
        let p = PredSet::build(&bits, &lz77_attractor(&bits), 2).unwrap();
        assert_eq!(p.predecessor(5).unwrap(), None);
        assert_eq!(p.members(), 0);
    }

    #[test]
    fn large_tau_is_clamped_for_gap_strings() {
        let t = Text::from_bytes(b"aaaaaaaaaaaaaaaab");
        let g = lz77_attractor(&t);
        let tau = IndexParams::max_tau(t.len(), g.len());
        let s = SelectIndex::build(&t, &g, tau).unwrap();
        assert_eq!(s.select(u64::from(b'b'), 1).unwrap(), 17);
        assert_eq!(s.select(A, 16).unwrap(), 16);
    }
}
