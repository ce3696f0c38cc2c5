//! Balanced-parentheses sequences with linear-scan navigation operations.
//!
//! Positions are 1-based. `excess(i)` counts opens minus closes in `[1..i]`,
//! with `excess(0) = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::text::Text;

/// Open parentheses are `true`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParenString {
    parens: Vec<bool>,
}

impl ParenString {
    pub fn new(parens: Vec<bool>) -> Self {
        ParenString { parens }
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '(' => Ok(true),
                ')' => Ok(false),
                other => Err(Error::Parse(format!("expected '(' or ')', found {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ParenString::new)
    }

    /// Reads a 0/1 text with 1 = open.
    pub fn from_text(t: &Text) -> Result<Self> {
        t.ensure_binary()?;
        Ok(ParenString::new(t.symbols().iter().map(|&s| s == 1).collect()))
    }

    /// Writes a 0/1 text with 1 = open.
    pub fn to_text(&self) -> Text {
        Text::new(self.parens.iter().map(|&p| u64::from(p)).collect())
    }

    pub fn len(&self) -> usize {
        self.parens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parens.is_empty()
    }

    pub fn is_open(&self, i: usize) -> bool {
        self.parens[i - 1]
    }

    /// Every prefix has nonnegative excess and the total excess is zero.
    pub fn is_balanced(&self) -> bool {
        let mut e = 0i64;
        for &p in &self.parens {
            e += if p { 1 } else { -1 };
            if e < 0 {
                return false;
            }
        }
        e == 0
    }

    fn check_pos(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfRange { pos: i as u64, lo: 1, hi: self.len() as u64 });
        }
        Ok(())
    }

    fn check_range(&self, i: usize, j: usize) -> Result<()> {
        self.check_pos(i)?;
        self.check_pos(j)?;
        if i > j {
            return Err(Error::InvalidParen(format!("empty range [{i}, {j}]")));
        }
        Ok(())
    }

    /// Opens minus closes in `[1..i]`; `i` may be 0.
    pub fn excess(&self, i: usize) -> Result<i64> {
        if i > self.len() {
            return Err(Error::OutOfRange { pos: i as u64, lo: 0, hi: self.len() as u64 });
        }
        Ok(self.parens[..i].iter().map(|&p| if p { 1 } else { -1 }).sum())
    }

    /// Position of the close matching the open at `i`, found by depth counting.
    pub fn findclose(&self, i: usize) -> Result<usize> {
        self.check_pos(i)?;
        if !self.is_open(i) {
            return Err(Error::InvalidParen(format!("position {i} is not an open parenthesis")));
        }
        let mut depth = 0i64;
        for j in i..=self.len() {
            depth += if self.is_open(j) { 1 } else { -1 };
            if depth == 0 {
                return Ok(j);
            }
        }
        Err(Error::NoMatch)
    }

    /// Position of the open matching the close at `i`, found by depth counting.
    pub fn findopen(&self, i: usize) -> Result<usize> {
        self.check_pos(i)?;
        if self.is_open(i) {
            return Err(Error::InvalidParen(format!("position {i} is not a close parenthesis")));
        }
        let mut depth = 0i64;
        for j in (1..=i).rev() {
            depth += if self.is_open(j) { 1 } else { -1 };
            if depth == 0 {
                return Ok(j);
            }
        }
        Err(Error::NoMatch)
    }

    /// First `j > i` with `excess(j) = excess(i) + delta`.
    pub fn fwd_search(&self, i: usize, delta: i64) -> Result<usize> {
        self.check_pos(i)?;
        let target = self.excess(i)? + delta;
        let mut e = self.excess(i)?;
        for j in i + 1..=self.len() {
            e += if self.is_open(j) { 1 } else { -1 };
            if e == target {
                return Ok(j);
            }
        }
        Err(Error::NoMatch)
    }

    /// Last `j < i` with `excess(j) = excess(i) + delta`; `j = 0` is allowed.
    pub fn bwd_search(&self, i: usize, delta: i64) -> Result<usize> {
        self.check_pos(i)?;
        let target = self.excess(i)? + delta;
        let mut e = self.excess(i)?;
        for j in (0..i).rev() {
            // excess(j) = excess(j + 1) - contribution of position j + 1
            e -= if self.is_open(j + 1) { 1 } else { -1 };
            if e == target {
                return Ok(j);
            }
        }
        Err(Error::NoMatch)
    }

    fn excesses(&self, i: usize, j: usize) -> Result<impl Iterator<Item = (usize, i64)> + '_> {
        self.check_range(i, j)?;
        let start = self.excess(i)?;
        Ok((i..=j).scan(start, move |e, t| {
            if t > i {
                *e += if self.is_open(t) { 1 } else { -1 };
            }
            Some((t, *e))
        }))
    }

    /// Minimum of `excess(t)` over `i <= t <= j`.
    pub fn rmq(&self, i: usize, j: usize) -> Result<i64> {
        Ok(self.excesses(i, j)?.map(|(_, e)| e).min().unwrap())
    }

    /// Maximum of `excess(t)` over `i <= t <= j`.
    pub fn rmq_max(&self, i: usize, j: usize) -> Result<i64> {
        Ok(self.excesses(i, j)?.map(|(_, e)| e).max().unwrap())
    }

    /// Leftmost position of the minimum excess in `[i, j]`.
    pub fn rmqi(&self, i: usize, j: usize) -> Result<usize> {
        let mut best = (i64::MAX, 0);
        for (t, e) in self.excesses(i, j)? {
            if e < best.0 {
                best = (e, t);
            }
        }
        Ok(best.1)
    }

    /// Leftmost position of the maximum excess in `[i, j]`.
    pub fn rmqi_max(&self, i: usize, j: usize) -> Result<usize> {
        let mut best = (i64::MIN, 0);
        for (t, e) in self.excesses(i, j)? {
            if e > best.0 {
                best = (e, t);
            }
        }
        Ok(best.1)
    }
}

impl fmt::Display for ParenString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &p in &self.parens {
            f.write_str(if p { "(" } else { ")" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParenString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParenString({self})")
    }
}
