//! A bundle of the query structures built over one text and attractor.

use std::fmt;
use std::str::FromStr;

use crate::attractor::Attractor;
use crate::error::{Error, Result};
use crate::psum::{IndexParams, PsumIndex};
use crate::query::{PredSet, RankIndex, SelectIndex};
use crate::text::Text;

/// Which structures to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Structures {
    pub psum: bool,
    pub rank: bool,
    pub select: bool,
    pub pred: bool,
}

impl Structures {
    pub const ALL: Structures = Structures { psum: true, rank: true, select: true, pred: true };

    pub(crate) fn bits(&self) -> u64 {
        u64::from(self.psum) | u64::from(self.rank) << 1 | u64::from(self.select) << 2 | u64::from(self.pred) << 3
    }

    pub(crate) fn from_bits(b: u64) -> Result<Self> {
        if b & !0xf != 0 {
            return Err(Error::Format(format!("unknown structure flags {b:#x}")));
        }
        Ok(Structures { psum: b & 1 != 0, rank: b & 2 != 0, select: b & 4 != 0, pred: b & 8 != 0 })
    }
}

impl Default for Structures {
    fn default() -> Self {
        Structures::ALL
    }
}

impl FromStr for Structures {
    type Err = Error;

    /// Comma-separated subset of `psum,rank,select,pred`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Structures { psum: false, rank: false, select: false, pred: false };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "psum" | "access" => out.psum = true,
                "rank" => out.rank = true,
                "select" => out.select = true,
                "pred" => out.pred = true,
                other => return Err(Error::Parse(format!("unknown structure {other:?}"))),
            }
        }
        if out.bits() == 0 {
            return Err(Error::Parse("no structures requested".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Structures {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.psum, "psum"), (self.rank, "rank"), (self.select, "select"), (self.pred, "pred")]
            .into_iter()
            .filter_map(|(on, name)| on.then_some(name))
            .collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttractorIndex {
    pub(crate) n: usize,
    pub(crate) sigma: u64,
    pub(crate) tau: u64,
    pub(crate) attractor: Attractor,
    pub(crate) psum: Option<PsumIndex>,
    pub(crate) rank: Option<RankIndex>,
    pub(crate) select: Option<SelectIndex>,
    pub(crate) pred: Option<PredSet>,
}

impl AttractorIndex {
    pub fn build(text: &Text, attractor: &Attractor, tau: u64, structures: Structures) -> Result<Self> {
        IndexParams::new(text.len(), attractor.len(), tau)?;
        Ok(AttractorIndex {
            n: text.len(),
            sigma: text.sigma(),
            tau,
            attractor: attractor.clone(),
            psum: structures.psum.then(|| PsumIndex::build(text, attractor, tau)).transpose()?,
            rank: structures.rank.then(|| RankIndex::build(text, attractor, tau)).transpose()?,
            select: structures.select.then(|| SelectIndex::build(text, attractor, tau)).transpose()?,
            pred: structures.pred.then(|| PredSet::build(text, attractor, tau)).transpose()?,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn tau(&self) -> u64 {
        self.tau
    }

    /// Levels of the text-level structures.
    pub fn levels(&self) -> usize {
        IndexParams::new(self.n, self.attractor.len(), self.tau).map_or(0, |p| p.levels())
    }

    pub fn attractor(&self) -> &Attractor {
        &self.attractor
    }

    pub fn structures(&self) -> Structures {
        Structures {
            psum: self.psum.is_some(),
            rank: self.rank.is_some(),
            select: self.select.is_some(),
            pred: self.pred.is_some(),
        }
    }

    fn missing(name: &'static str) -> Error {
        Error::MissingStructure(name)
    }

    pub fn psum_index(&self) -> Result<&PsumIndex> {
        self.psum.as_ref().ok_or_else(|| Self::missing("psum"))
    }

    pub fn rank_index(&self) -> Result<&RankIndex> {
        self.rank.as_ref().ok_or_else(|| Self::missing("rank"))
    }

    pub fn select_index(&self) -> Result<&SelectIndex> {
        self.select.as_ref().ok_or_else(|| Self::missing("select"))
    }

    pub fn pred_set(&self) -> Result<&PredSet> {
        self.pred.as_ref().ok_or_else(|| Self::missing("pred"))
    }

    pub fn psum(&self, v: u64) -> Result<u64> {
        self.psum_index()?.psum(v)
    }

    /// Served by the psum structure when present, otherwise by rank.
    pub fn access(&self, i: u64) -> Result<u64> {
        match (&self.psum, &self.rank) {
            (Some(p), _) => p.access(i),
            (None, Some(r)) => r.access(i),
            (None, None) => Err(Self::missing("psum")),
        }
    }

    pub fn rank(&self, c: u64, i: u64) -> Result<u64> {
        self.rank_index()?.rank(c, i)
    }

    pub fn select(&self, c: u64, k: u64) -> Result<u64> {
        self.select_index()?.select(c, k)
    }

    pub fn predecessor(&self, y: u64) -> Result<Option<u64>> {
        self.pred_set()?.predecessor(y)
    }

    /// Recovers the text through access queries.
    pub fn reconstruct(&self) -> Result<Text> {
        (1..=self.n as u64).map(|i| self.access(i)).collect::<Result<Vec<_>>>().map(Text::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lz77::lz77_attractor;

    #[test]
    fn structures_parse() {
        let s: Structures = "psum,select".parse().unwrap();
        assert!(s.psum && s.select && !s.rank && !s.pred);
        assert_eq!(s.to_string(), "psum,select");
        assert!("psum,bogus".parse::<Structures>().is_err());
        assert!("".parse::<Structures>().is_err());
        assert_eq!(Structures::from_bits(Structures::ALL.bits()).unwrap(), Structures::ALL);
        assert!(Structures::from_bits(16).is_err());
    }

    #[test]
    fn build_and_query() {
        let t = Text::from_bytes(b"abababa");
        let g = lz77_attractor(&t);
        assert_eq!(g.len(), 3);
        let idx = AttractorIndex::build(&t, &g, 2, Structures::ALL).unwrap();
        assert_eq!(idx.reconstruct().unwrap(), t);
        assert_eq!(idx.rank(u64::from(b'a'), 7).unwrap(), 4);
        assert_eq!(idx.select(u64::from(b'b'), 2).unwrap(), 4);
        assert_eq!(idx.predecessor(3).unwrap(), Some(3));
        assert!(AttractorIndex::build(&t, &g, 1, Structures::ALL).is_err());
    }

    #[test]
    fn missing_structure_is_an_error() {
        let t = Text::from_bytes(b"abab");
        let idx = AttractorIndex::build(&t, &lz77_attractor(&t), 2, "rank".parse().unwrap()).unwrap();
        assert!(idx.psum(1).is_err());
        assert_eq!(idx.access(2).unwrap(), u64::from(b'b'));
        assert!(idx.select(u64::from(b'a'), 1).is_err());
    }
}
