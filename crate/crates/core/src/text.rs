//! Integer texts, their single-symbol projections, and gap strings.
//!
//! Positions are 1-based everywhere in this crate: `text.at(1)` is the first
//! symbol and `text.at(text.len())` the last.

use std::fmt;

use crate::error::{Error, Result};

/// A string over the integer alphabet `[0, sigma)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Text {
    symbols: Vec<u64>,
    sigma: u64,
}

impl Text {
    pub fn new(symbols: Vec<u64>) -> Self {
        let sigma = symbols.iter().max().map_or(0, |&m| m.saturating_add(1));
        Text { symbols, sigma }
    }

    /// Each byte becomes one symbol.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Text::new(bytes.iter().map(|&b| u64::from(b)).collect())
    }

    /// Parses a string of `0`/`1` characters, ignoring whitespace.
    pub fn from_bits_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("expected 0 or 1, found {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Text::new)
    }

    /// Parses whitespace-separated decimal integers.
    pub fn from_ints_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad integer {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Text::new)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Alphabet size: largest symbol plus one, or 0 for the empty text.
    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    /// Symbol at 1-based position `i`.
    ///
    /// Panics if `i` is not in `[1..n]`.
    #[inline]
    pub fn at(&self, i: usize) -> u64 {
        self.symbols[i - 1]
    }

    pub fn is_binary(&self) -> bool {
        self.symbols.iter().all(|&s| s <= 1)
    }

    pub(crate) fn ensure_binary(&self) -> Result<()> {
        match self.symbols.iter().find(|&&s| s > 1) {
            Some(&s) => Err(Error::NotBinary(s)),
            None => Ok(()),
        }
    }

    /// Distinct symbols in increasing order.
    pub fn alphabet(&self) -> Vec<u64> {
        let mut a = self.symbols.clone();
        a.sort_unstable();
        a.dedup();
        a
    }

    /// Bitstring marking the positions holding `c`.
    pub fn project(&self, c: u64) -> Text {
        Text::new(self.symbols.iter().map(|&s| u64::from(s == c)).collect())
    }

    /// Swaps 0 and 1 in a bitstring, turning rank0/select0 questions into
    /// rank1/select1 ones.
    pub fn flip_bits(&self) -> Result<Text> {
        self.ensure_binary()?;
        Ok(Text::new(self.symbols.iter().map(|&s| 1 - s).collect()))
    }

    /// Length after removing trailing zeros.
    pub fn trimmed_len(&self) -> usize {
        self.symbols.iter().rposition(|&s| s != 0).map_or(0, |p| p + 1)
    }
}

impl From<Vec<u64>> for Text {
    fn from(symbols: Vec<u64>) -> Self {
        Text::new(symbols)
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text({:?})", self.symbols)
    }
}

impl fmt::Display for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_binary() {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(u64::to_string).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

/// Distances between consecutive set bits: a bitstring `0^{x_1-1}1 ... 0^{x_m-1}1`
/// is represented by `x_1 ... x_m`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GapString {
    gaps: Vec<u64>,
}

impl GapString {
    /// Builds from explicit gaps, all of which must be positive.
    pub fn new(gaps: Vec<u64>) -> Result<Self> {
        if gaps.contains(&0) {
            return Err(Error::Parse("gaps must be positive".into()));
        }
        Ok(GapString { gaps })
    }

    /// Encodes a bitstring after dropping its trailing zeros.
    pub fn encode(bits: &Text) -> Result<Self> {
        bits.ensure_binary()?;
        let mut gaps = Vec::new();
        let mut last = 0u64;
        for (p, &b) in bits.symbols().iter().enumerate() {
            if b == 1 {
                let pos = p as u64 + 1;
                gaps.push(pos - last);
                last = pos;
            }
        }
        Ok(GapString { gaps })
    }

    /// Rebuilds the trimmed bitstring.
    pub fn decode(&self) -> Text {
        let mut out = Vec::with_capacity(self.total() as usize);
        for &g in &self.gaps {
            out.extend(std::iter::repeat_n(0, (g - 1) as usize));
            out.push(1);
        }
        Text::new(out)
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Sum of all gaps, i.e. the trimmed bitstring length.
    pub fn total(&self) -> u64 {
        self.gaps.iter().sum()
    }

    pub fn to_text(&self) -> Text {
        Text::new(self.gaps.clone())
    }
}

/// Convenience for `GapString::encode`.
pub fn gap_encode(bits: &Text) -> Result<GapString> {
    GapString::encode(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bytes(s: &str) -> Text {
        Text::from_bytes(s.as_bytes())
    }

    #[test]
    fn project_abracadabra() {
        let p = bytes("abracadabra").project(u64::from(b'a'));
        assert_eq!(p, Text::from_bits_str("10010101001").unwrap());
    }

    #[test]
    fn project_absent_and_unary() {
        assert_eq!(bytes("abc").project(u64::from(b'z')).symbols(), &[0, 0, 0]);
        assert_eq!(bytes("aaa").project(u64::from(b'a')).symbols(), &[1, 1, 1]);
    }

    #[test]
    fn gap_encode_examples() {
        let g = |s: &str| gap_encode(&Text::from_bits_str(s).unwrap()).unwrap();
        assert_eq!(g("0010011").gaps(), &[3, 3, 1]);
        assert_eq!(g("1111").gaps(), &[1, 1, 1, 1]);
        assert!(g("0000").is_empty());
        assert_eq!(g("0010011000").gaps(), &[3, 3, 1]);
    }

    #[test]
    fn gap_decode_restores_trimmed() {
        let bits = Text::from_bits_str("01001100").unwrap();
        let g = gap_encode(&bits).unwrap();
        assert_eq!(g.decode(), Text::from_bits_str("010011").unwrap());
        assert_eq!(g.total() as usize, bits.trimmed_len());
    }

    #[test]
    fn gap_encode_rejects_non_binary() {
        assert_eq!(gap_encode(&Text::new(vec![0, 2])), Err(Error::NotBinary(2)));
        assert!(GapString::new(vec![1, 0]).is_err());
    }

    #[test]
    fn sigma_and_parse() {
        assert_eq!(Text::new(vec![]).sigma(), 0);
        assert_eq!(Text::from_ints_str("3 0 7\n1").unwrap().sigma(), 8);
        assert!(Text::from_ints_str("1 x").is_err());
        assert!(Text::from_bits_str("012").is_err());
    }

    #[test]
    fn flip() {
        let b = Text::from_bits_str("0110").unwrap();
        assert_eq!(b.flip_bits().unwrap().to_string(), "1001");
    }
}
