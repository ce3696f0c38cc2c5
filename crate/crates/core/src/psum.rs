//! Partial sums in space proportional to `tau * gamma * log_tau(n / gamma)`.
//!
//! Level 0 tiles the text with at most `gamma` blocks of length `tau^L`. At
//! every deeper level `j`, each attractor position `i` owns `2 tau` blocks of
//! length `tau^(L-j)`: `tau` consecutive blocks ending right before `i` and
//! `tau` starting right after it. Every block above the last level keeps a
//! pointer `(i, v)` to an occurrence `S[i-v .. i-v+len-1]` of its content that
//! covers attractor position `i`. That occurrence is tiled by the next level's
//! blocks around `i` (plus `S[i]` itself), so a block-prefix sum reduces to one
//! block-prefix sum one level down plus a constant number of stored values.
//!
//! Blocks whose nominal span leaves `[1..n]` behave as if padded with zeros;
//! their pointers describe only the in-range part.

use std::collections::HashMap;

use crate::attractor::Attractor;
use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::text::Text;

/// Branching factor and per-level block lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexParams {
    tau: u64,
    /// `block_len[j] = tau^(L - j)`, so `block_len[L] = 1`.
    block_len: Vec<u64>,
}

impl IndexParams {
    /// Largest legal branching factor for a text of length `n` with `gamma`
    /// attractor positions.
    pub fn max_tau(n: usize, gamma: usize) -> u64 {
        if gamma == 0 {
            return u64::MAX;
        }
        (n as u64).div_ceil(gamma as u64).max(2)
    }

    pub fn new(n: usize, gamma: usize, tau: u64) -> Result<Self> {
        let max = Self::max_tau(n, gamma);
        if tau < 2 || tau > max {
            return Err(Error::InvalidTau { tau, max });
        }
        let target = if gamma == 0 { 1 } else { (n as u64).div_ceil(gamma as u64) };
        let mut levels = 0usize;
        let mut top = 1u64;
        while top < target {
            top = top.checked_mul(tau).ok_or(Error::Overflow)?;
            levels += 1;
        }
        let mut block_len = Vec::with_capacity(levels + 1);
        let mut len = top;
        for _ in 0..=levels {
            block_len.push(len);
            len /= tau;
        }
        Ok(IndexParams { tau, block_len })
    }

    pub fn tau(&self) -> u64 {
        self.tau
    }

    /// Number of levels below level 0 (L).
    pub fn levels(&self) -> usize {
        self.block_len.len() - 1
    }

    pub fn block_len(&self, level: usize) -> u64 {
        self.block_len[level]
    }

    pub fn block_lens(&self) -> &[u64] {
        &self.block_len
    }
}

/// Occurrence pointer: attractor number `attr` (0-based rank in the attractor)
/// and offset `offset`, so the content starts at `position(attr) - offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pointer {
    pub attr: u32,
    pub offset: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Nominal 1-based start; may be below 1 for blocks left of the text.
    pub start: i64,
    /// Nominal positions before the first in-range one.
    pub pad: u64,
    /// In-range length.
    pub len: u64,
    pub pointer: Option<Pointer>,
    /// Sum of the `offset` symbols preceding the pointed attractor position.
    pub prefix_sum: u64,
    /// Sum of the whole block (the symbol itself at the last level).
    pub sum: u64,
    /// Level 0: sum of everything before the block. Deeper levels: sum of
    /// this block and all blocks between it and its attractor position.
    pub run_sum: u64,
}

/// How one block-prefix sum was reduced during a query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Last level: the stored symbol.
    Explicit,
    /// Prefix extends past the pointed attractor position: recurse right.
    Right { d: u64, rest: u64 },
    /// Prefix ends at or before the pointed attractor position: recurse left.
    Left { d: u64, rest: u64 },
}

/// One level of a descent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub level: usize,
    pub block: usize,
    /// Requested prefix length on the in-range content.
    pub prefix: u64,
    pub kind: StepKind,
}

/// Per-level sizes of a built index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceStats {
    pub blocks_per_level: Vec<usize>,
    pub pointers: usize,
    pub explicit_entries: usize,
    pub stored_words: usize,
}

const LEFT: usize = 0;
const RIGHT: usize = 1;

/// Static partial-sum index over an integer text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsumIndex {
    n: usize,
    params: IndexParams,
    attractor: Attractor,
    /// `S[i]` for each attractor position, by attractor rank.
    attr_symbols: Vec<u64>,
    /// `levels[0]` tiles the text; `levels[j]` for `j >= 1` holds `2 tau gamma`
    /// blocks laid out by [`PsumIndex::flank`].
    levels: Vec<Vec<Block>>,
}

struct PrefixSums(Vec<u64>);

impl PrefixSums {
    fn new(text: &Text) -> Result<Self> {
        let mut p = Vec::with_capacity(text.len() + 1);
        p.push(0u64);
        let mut acc = 0u64;
        for &s in text.symbols() {
            acc = acc.checked_add(s).ok_or(Error::Overflow)?;
            p.push(acc);
        }
        Ok(PrefixSums(p))
    }

    /// Sum of positions `lo..=hi` (1-based), 0 when empty.
    fn range(&self, lo: u64, hi: u64) -> u64 {
        if lo > hi {
            0
        } else {
            self.0[hi as usize] - self.0[lo as usize - 1]
        }
    }
}

/// Polynomial fingerprints of all substrings; used only to skip candidate
/// occurrences quickly, every hit is confirmed by direct comparison.
struct Fingerprints {
    prefix: Vec<u64>,
    powers: Vec<u64>,
}

const MOD: u64 = (1 << 61) - 1;
const BASE: u64 = 0x1f3d_5b79_a2c4_e601 % MOD;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD as u128) as u64
}

impl Fingerprints {
    fn new(s: &[u64]) -> Self {
        let mut prefix = vec![0u64; s.len() + 1];
        let mut powers = vec![1u64; s.len() + 1];
        for (k, &x) in s.iter().enumerate() {
            prefix[k + 1] = (mulmod(prefix[k], BASE) + (x % MOD) + 1) % MOD;
            powers[k + 1] = mulmod(powers[k], BASE);
        }
        Fingerprints { prefix, powers }
    }

    /// Fingerprint of the 1-based range `[lo, lo + len)`.
    fn get(&self, lo: usize, len: usize) -> u64 {
        let hi = self.prefix[lo - 1 + len];
        let sub = mulmod(self.prefix[lo - 1], self.powers[len]);
        (hi + MOD - sub) % MOD
    }
}

struct PointerFinder<'a> {
    s: &'a [u64],
    gamma: &'a [u64],
    fp: Fingerprints,
    /// (len, fingerprint) -> (content start, pointer) of contents already resolved.
    cache: HashMap<(u64, u64), Vec<(u64, Pointer)>>,
}

impl<'a> PointerFinder<'a> {
    fn same(&self, a: u64, b: u64, len: u64) -> bool {
        let (a, b, len) = (a as usize - 1, b as usize - 1, len as usize);
        self.s[a..a + len] == self.s[b..b + len]
    }

    /// Lexicographically smallest `(attr, offset)` whose occurrence equals
    /// `S[lo .. lo+len-1]` and covers the attractor position.
    fn find(&mut self, lo: u64, len: u64) -> Option<Pointer> {
        let n = self.s.len() as u64;
        let h = self.fp.get(lo as usize, len as usize);
        if let Some(seen) = self.cache.get(&(len, h)) {
            if let Some(&(_, ptr)) = seen.iter().find(|(start, _)| self.same(*start, lo, len)) {
                return Some(ptr);
            }
        }
        let mut found = None;
        'outer: for (a, &i) in self.gamma.iter().enumerate() {
            let q_max = i.min(n + 1 - len);
            let q_min = (i + 1).saturating_sub(len).max(1);
            let mut q = q_max;
            while q >= q_min {
                if self.fp.get(q as usize, len as usize) == h && self.same(q, lo, len) {
                    found = Some(Pointer { attr: a as u32, offset: i - q });
                    break 'outer;
                }
                q -= 1;
            }
        }
        if let Some(ptr) = found {
            self.cache.entry((len, h)).or_default().push((lo, ptr));
        }
        found
    }
}

impl PsumIndex {
    /// Builds the index. `gamma` must be an attractor of `text`; if it is not,
    /// construction may fail with [`Error::PointerNotFound`].
    pub fn build(text: &Text, gamma: &Attractor, tau: u64) -> Result<Self> {
        let n = text.len();
        if gamma.positions().iter().any(|&p| p == 0 || p > n as u64) {
            return Err(Error::InvalidAttractor("position outside the text".into()));
        }
        if n > 0 && gamma.is_empty() {
            return Err(Error::InvalidAttractor("empty set for a nonempty text".into()));
        }
        let params = IndexParams::new(n, gamma.len(), tau)?;
        let sums = PrefixSums::new(text)?;
        let attr_symbols = gamma.positions().iter().map(|&p| text.at(p as usize)).collect();
        let mut index = PsumIndex {
            n,
            params,
            attractor: gamma.clone(),
            attr_symbols,
            levels: Vec::new(),
        };
        if n == 0 {
            index.levels.push(Vec::new());
            return Ok(index);
        }

        let mut finder = PointerFinder {
            s: text.symbols(),
            gamma: gamma.positions(),
            fp: Fingerprints::new(text.symbols()),
            cache: HashMap::new(),
        };
        let last = index.params.levels();

        let top = index.params.block_len(0);
        let count = (n as u64).div_ceil(top);
        let mut level0 = Vec::with_capacity(count as usize);
        for k in 0..count {
            let start = k * top + 1;
            let end = (start + top - 1).min(n as u64);
            let mut block = index.make_block(start as i64, end - start + 1, last == 0, &sums, &mut finder)?;
            block.run_sum = sums.range(1, start - 1);
            level0.push(block);
        }
        index.levels.push(level0);

        let tau = index.params.tau();
        for level in 1..=last {
            let len = index.params.block_len(level);
            let mut blocks = Vec::with_capacity(2 * tau as usize * gamma.len());
            for &i in gamma.positions() {
                let i = i as i64;
                for side in [LEFT, RIGHT] {
                    for k in 1..=tau as i64 {
                        let start = if side == LEFT { i - len as i64 * k } else { i + 1 + len as i64 * (k - 1) };
                        let end = start + len as i64 - 1;
                        let lo = start.max(1);
                        let hi = end.min(n as i64);
                        let in_range = if hi >= lo { (hi - lo + 1) as u64 } else { 0 };
                        let mut block = index
                            .make_block(start, in_range, level == last, &sums, &mut finder)
                            .map_err(|e| match e {
                                Error::PointerNotFound { .. } => Error::PointerNotFound { level },
                                other => other,
                            })?;
                        block.run_sum = if side == LEFT {
                            sums.range(lo.max(1) as u64, i as u64 - 1)
                        } else {
                            sums.range(i as u64 + 1, (hi.max(i)) as u64)
                        };
                        blocks.push(block);
                    }
                }
            }
            index.levels.push(blocks);
        }
        Ok(index)
    }

    fn make_block(
        &self,
        start: i64,
        in_range: u64,
        explicit: bool,
        sums: &PrefixSums,
        finder: &mut PointerFinder<'_>,
    ) -> Result<Block> {
        let lo = start.max(1) as u64;
        let pad = if in_range == 0 { 0 } else { (lo as i64 - start) as u64 };
        let sum = sums.range(lo, lo + in_range - 1);
        let mut block = Block { start, pad, len: in_range, pointer: None, prefix_sum: 0, sum, run_sum: 0 };
        if !explicit && in_range > 0 {
            let ptr = finder.find(lo, in_range).ok_or(Error::PointerNotFound { level: 0 })?;
            block.prefix_sum = sums.range(lo, lo + ptr.offset - 1);
            block.pointer = Some(ptr);
        }
        Ok(block)
    }

    /// Index of `←B_{i,level,k}` (`side = LEFT`) or `→B_{i,level,k}` for the
    /// attractor of rank `attr`, `k` in `1..=tau`.
    fn flank(&self, attr: usize, side: usize, k: u64) -> usize {
        let tau = self.params.tau() as usize;
        (attr * 2 + side) * tau + (k as usize - 1)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn params(&self) -> &IndexParams {
        &self.params
    }

    pub fn attractor(&self) -> &Attractor {
        &self.attractor
    }

    pub fn level_blocks(&self, level: usize) -> &[Block] {
        &self.levels[level]
    }

    /// The symbol stored for attractor position `pos`, if `pos` is one.
    pub fn symbol_at_attractor(&self, pos: u64) -> Option<u64> {
        let r = self.attractor.positions().binary_search(&pos).ok()?;
        Some(self.attr_symbols[r])
    }

    /// Sum of the first `v` symbols.
    pub fn psum(&self, v: u64) -> Result<u64> {
        self.descend(v, |_| {})
    }

    /// Number of levels visited while answering `psum(v)`.
    pub fn descent_depth(&self, v: u64) -> Result<usize> {
        let mut depth = 0;
        self.descend(v, |_| depth += 1)?;
        Ok(depth)
    }

    /// `psum(v)` together with the reduction performed at each level.
    pub fn trace(&self, v: u64) -> Result<(u64, Vec<Step>)> {
        let mut steps = Vec::new();
        let sum = self.descend(v, |s| steps.push(*s))?;
        Ok((sum, steps))
    }

    /// `S[i]` as `psum(i) - psum(i - 1)`.
    pub fn access(&self, i: u64) -> Result<u64> {
        if i == 0 || i > self.n as u64 {
            return Err(Error::OutOfRange { pos: i, lo: 1, hi: self.n as u64 });
        }
        Ok(self.psum(i)? - self.psum(i - 1)?)
    }

    fn descend(&self, v: u64, mut visit: impl FnMut(&Step)) -> Result<u64> {
        let n = self.n as u64;
        if v > n {
            return Err(Error::OutOfRange { pos: v, lo: 0, hi: n });
        }
        if v == 0 {
            return Ok(0);
        }
        let top = self.params.block_len(0);
        let k = ((v - 1) / top) as usize;
        let first = &self.levels[0][k];
        let mut acc = i128::from(first.run_sum);
        let last = self.params.levels();

        // Invariant: `acc + sum(block[1..prefix])` is the answer, where the
        // prefix is measured on the block's nominal span.
        let (mut level, mut idx, mut prefix) = (0usize, k, (v - 1) % top + 1);
        loop {
            let block = &self.levels[level][idx];
            let t = prefix.saturating_sub(block.pad).min(block.len);
            if t == 0 {
                break;
            }
            if level == last {
                visit(&Step { level, block: idx, prefix: t, kind: StepKind::Explicit });
                acc += i128::from(block.sum);
                break;
            }
            let ptr = block.pointer.expect("blocks above the last level carry pointers");
            let attr = ptr.attr as usize;
            let v_off = ptr.offset;
            let child_len = self.params.block_len(level + 1);
            acc += i128::from(block.prefix_sum);
            if t > v_off {
                let d = (t - v_off - 1) / child_len;
                let rest = (t - v_off - 1) % child_len;
                visit(&Step { level, block: idx, prefix: t, kind: StepKind::Right { d, rest } });
                acc += i128::from(self.attr_symbols[attr]);
                if d > 0 {
                    acc += i128::from(self.levels[level + 1][self.flank(attr, RIGHT, d)].run_sum);
                }
                if rest == 0 {
                    break;
                }
                idx = self.flank(attr, RIGHT, d + 1);
                prefix = rest;
            } else {
                let d = (v_off - t) / child_len;
                let rest = (v_off - t) % child_len;
                visit(&Step { level, block: idx, prefix: t, kind: StepKind::Left { d, rest } });
                if d > 0 {
                    acc -= i128::from(self.levels[level + 1][self.flank(attr, LEFT, d)].run_sum);
                }
                if rest == 0 {
                    break;
                }
                idx = self.flank(attr, LEFT, d + 1);
                acc -= i128::from(self.levels[level + 1][idx].sum);
                prefix = child_len - rest;
            }
            level += 1;
        }
        u64::try_from(acc).map_err(|_| Error::Overflow)
    }

    pub fn space_stats(&self) -> SpaceStats {
        let blocks_per_level: Vec<usize> = self.levels.iter().map(Vec::len).collect();
        let pointers = self.levels.iter().flatten().filter(|b| b.pointer.is_some()).count();
        let last = self.params.levels();
        let explicit_entries = self.levels[last].len() + self.attr_symbols.len();
        // A block stores one pointer (two words) and three sums.
        let stored_words = blocks_per_level.iter().sum::<usize>() * 5 + self.attr_symbols.len() * 2;
        SpaceStats { blocks_per_level, pointers, explicit_entries, stored_words }
    }

    pub(crate) fn encode(&self, w: &mut Writer) {
        w.u64(self.n as u64);
        w.u64(self.params.tau());
        w.u64(self.params.levels() as u64);
        w.words(self.attractor.positions());
        w.words(&self.attr_symbols);
        for blocks in &self.levels {
            w.u64(blocks.len() as u64);
            for b in blocks {
                w.i64(b.start);
                w.u64(b.pad);
                w.u64(b.len);
                match b.pointer {
                    Some(p) => {
                        w.u64(1);
                        w.u64(u64::from(p.attr));
                        w.u64(p.offset);
                    }
                    None => {
                        w.u64(0);
                        w.u64(0);
                        w.u64(0);
                    }
                }
                w.u64(b.prefix_sum);
                w.u64(b.sum);
                w.u64(b.run_sum);
            }
        }
    }

    pub(crate) fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.u64()? as usize;
        let tau = r.u64()?;
        let levels = r.u64()? as usize;
        let attractor = Attractor::new(r.words()?, n).map_err(|e| Error::Format(e.to_string()))?;
        let params = IndexParams::new(n, attractor.len(), tau).map_err(|e| Error::Format(e.to_string()))?;
        if params.levels() != levels {
            return Err(Error::Format(format!("level count {levels} does not match parameters")));
        }
        let attr_symbols = r.words()?;
        if attr_symbols.len() != attractor.len() {
            return Err(Error::Format("attractor symbol count mismatch".into()));
        }
        let gamma = attractor.len();
        let mut blocks_by_level = Vec::with_capacity(levels + 1);
        for level in 0..=levels {
            let count = r.count(72)?;
            let expected = if level == 0 {
                (n as u64).div_ceil(params.block_len(0)) as usize
            } else {
                2 * tau as usize * gamma
            };
            if count != expected {
                return Err(Error::Format(format!("level {level} has {count} blocks, expected {expected}")));
            }
            let mut blocks = Vec::with_capacity(count);
            for _ in 0..count {
                let start = r.i64()?;
                let pad = r.u64()?;
                let len = r.u64()?;
                let has = r.u64()?;
                let attr = r.u64()?;
                let offset = r.u64()?;
                let pointer = match has {
                    0 => None,
                    1 if (attr as usize) < gamma && offset < len => Some(Pointer { attr: attr as u32, offset }),
                    _ => return Err(Error::Format("bad block pointer".into())),
                };
                if level < levels && len > 0 && pointer.is_none() {
                    return Err(Error::Format("missing block pointer".into()));
                }
                if pad + len > params.block_len(level) {
                    return Err(Error::Format("block extent exceeds its level length".into()));
                }
                let prefix_sum = r.u64()?;
                let sum = r.u64()?;
                let run_sum = r.u64()?;
                blocks.push(Block { start, pad, len, pointer, prefix_sum, sum, run_sum });
            }
            blocks_by_level.push(blocks);
        }
        Ok(PsumIndex { n, params, attractor, attr_symbols, levels: blocks_by_level })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lz77::lz77_attractor;

    fn naive(s: &[u64], v: usize) -> u64 {
        s[..v].iter().sum()
    }

    #[test]
    fn params_arithmetic() {
        let p = IndexParams::new(16, 2, 2).unwrap();
        assert_eq!(p.levels(), 3);
        assert_eq!(p.block_lens(), &[8, 4, 2, 1]);

        let p = IndexParams::new(5, 5, 2).unwrap();
        assert_eq!(p.levels(), 0);
        assert_eq!(p.block_lens(), &[1]);

        // ceil(10 / 3) = 4 is not a power of 3: the top length rounds up to 9.
        let p = IndexParams::new(10, 3, 3).unwrap();
        assert_eq!(p.block_lens(), &[9, 3, 1]);

        assert_eq!(IndexParams::new(16, 2, 1), Err(Error::InvalidTau { tau: 1, max: 8 }));
        assert_eq!(IndexParams::new(16, 2, 9), Err(Error::InvalidTau { tau: 9, max: 8 }));
        assert!(IndexParams::new(3, 3, 2).is_ok());
    }

    #[test]
    fn build_shape_n16_gamma2() {
        // (ab)^8: every substring occurs starting at 1 or 2.
        let s: Vec<u64> = (0..16).map(|k| k % 2).collect();
        let text = Text::new(s.clone());
        let gamma = Attractor::new(vec![1, 2], 16).unwrap();
        assert!(crate::attractor::validate_attractor(&text, &gamma).unwrap());
        let idx = PsumIndex::build(&text, &gamma, 2).unwrap();
        assert_eq!(idx.space_stats().blocks_per_level, vec![2, 8, 8, 8]);
        for v in 0..=16 {
            assert_eq!(idx.psum(v).unwrap(), naive(&s, v as usize));
            assert!(idx.descent_depth(v).unwrap() <= 4);
        }
    }

    #[test]
    fn spec_examples() {
        let text = Text::new(vec![2, 0, 1, 3, 0, 1]);
        let idx = PsumIndex::build(&text, &lz77_attractor(&text), 2).unwrap();
        assert_eq!(idx.psum(4).unwrap(), 6);
        assert_eq!(idx.psum(0).unwrap(), 0);
        assert_eq!(idx.descent_depth(0).unwrap(), 0);

        let bits = Text::from_bits_str("00101").unwrap();
        let idx = PsumIndex::build(&bits, &lz77_attractor(&bits), 2).unwrap();
        assert_eq!(idx.psum(5).unwrap(), 2);
        assert_eq!(idx.psum(6), Err(Error::OutOfRange { pos: 6, lo: 0, hi: 5 }));
    }

    #[test]
    fn degenerate_every_position() {
        let s = vec![4, 1, 1, 7, 0];
        let text = Text::new(s.clone());
        let idx = PsumIndex::build(&text, &Attractor::all(5), 2).unwrap();
        assert_eq!(idx.params().levels(), 0);
        for v in 0..=5 {
            assert_eq!(idx.psum(v).unwrap(), naive(&s, v as usize));
            assert!(idx.descent_depth(v).unwrap() <= 1);
        }
    }

    #[test]
    fn empty_text() {
        let idx = PsumIndex::build(&Text::new(vec![]), &Attractor::new(vec![], 0).unwrap(), 2).unwrap();
        assert_eq!(idx.psum(0).unwrap(), 0);
        assert!(idx.psum(1).is_err());
    }

    #[test]
    fn invalid_attractor_is_reported() {
        let text = Text::from_bytes(b"abcdefgh");
        let gamma = Attractor::new(vec![1], 8).unwrap();
        assert!(matches!(PsumIndex::build(&text, &gamma, 2), Err(Error::PointerNotFound { .. })));
    }

    #[test]
    fn overflow_is_reported() {
        let text = Text::new(vec![u64::MAX, 1]);
        assert_eq!(PsumIndex::build(&text, &Attractor::all(2), 2), Err(Error::Overflow));
    }

    #[test]
    fn large_symbols_within_range() {
        let big = u64::MAX / 4;
        let s = vec![big, 0, big, 0, big, 0];
        let text = Text::new(s.clone());
        let idx = PsumIndex::build(&text, &lz77_attractor(&text), 2).unwrap();
        for v in 0..=6 {
            assert_eq!(idx.psum(v).unwrap(), naive(&s, v as usize));
        }
    }

    #[test]
    fn early_termination_happens() {
        let s: Vec<u64> = b"abaababaabaababaababaabaababaabaab".iter().map(|&b| u64::from(b - b'a')).collect();
        let text = Text::new(s);
        let idx = PsumIndex::build(&text, &lz77_attractor(&text), 2).unwrap();
        let full = idx.params().levels() + 1;
        let depths: Vec<usize> = (1..=text.len() as u64).map(|v| idx.descent_depth(v).unwrap()).collect();
        assert!(depths.iter().all(|&d| d <= full));
        assert!(depths.iter().any(|&d| d < full));
    }

    #[test]
    fn trace_reports_levels() {
        let text = Text::from_bytes(b"abababababababab");
        let idx = PsumIndex::build(&text, &lz77_attractor(&text), 2).unwrap();
        for v in 1..=16 {
            let (sum, steps) = idx.trace(v).unwrap();
            assert_eq!(sum, idx.psum(v).unwrap());
            assert_eq!(steps.len(), idx.descent_depth(v).unwrap());
            for w in steps.windows(2) {
                assert_eq!(w[1].level, w[0].level + 1);
            }
        }
    }

    #[test]
    fn symbol_under_attractor() {
        let text = Text::from_bytes(b"abababa");
        let idx = PsumIndex::build(&text, &lz77_attractor(&text), 2).unwrap();
        assert_eq!(idx.symbol_at_attractor(2), Some(u64::from(b'b')));
        assert_eq!(idx.symbol_at_attractor(3), None);
    }
}
