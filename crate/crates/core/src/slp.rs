//! Straight-line programs with binary right-hand sides.
//!
//! Nonterminal `k` may only reference terminals and nonterminals `< k`, which
//! makes every grammar acyclic by construction. A length-1 string cannot be
//! derived by binary rules, so a single unary rule is allowed, and only as the
//! root.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::text::Text;

/// Default limit on expanded length.
pub const DEFAULT_EXPAND_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Terminal(u64),
    /// 0-based rule index.
    Rule(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Pair(Symbol, Symbol),
    /// Root-only rule deriving a single terminal.
    Unary(u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Slp {
    rules: Vec<Rule>,
    root: Option<Symbol>,
    dedup: HashMap<(Symbol, Symbol), u32>,
}

impl Slp {
    pub fn new() -> Self {
        Slp::default()
    }

    /// Returns a nonterminal deriving `a b`, reusing an identical rule if one
    /// exists.
    pub fn pair(&mut self, a: Symbol, b: Symbol) -> Symbol {
        for s in [a, b] {
            if let Symbol::Rule(k) = s {
                assert!((k as usize) < self.rules.len(), "reference to undefined rule {k}");
            }
        }
        if let Some(&k) = self.dedup.get(&(a, b)) {
            return Symbol::Rule(k);
        }
        let k = self.rules.len() as u32;
        self.rules.push(Rule::Pair(a, b));
        self.dedup.insert((a, b), k);
        Symbol::Rule(k)
    }

    /// Sets the start symbol. A terminal root gets a unary rule.
    pub fn set_root(&mut self, root: Symbol) {
        let root = match root {
            Symbol::Terminal(t) => {
                self.rules.push(Rule::Unary(t));
                Symbol::Rule(self.rules.len() as u32 - 1)
            }
            r => r,
        };
        self.root = Some(root);
    }

    pub fn root(&self) -> Option<Symbol> {
        self.root
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Number of nonterminals (g).
    pub fn size(&self) -> usize {
        self.rules.len()
    }

    /// Terminals used anywhere in the rules, sorted.
    pub fn terminals(&self) -> Vec<u64> {
        let mut ts: Vec<u64> = self
            .rules
            .iter()
            .flat_map(|r| match *r {
                Rule::Pair(a, b) => vec![a, b],
                Rule::Unary(t) => vec![Symbol::Terminal(t)],
            })
            .filter_map(|s| match s {
                Symbol::Terminal(t) => Some(t),
                Symbol::Rule(_) => None,
            })
            .collect();
        ts.sort_unstable();
        ts.dedup();
        ts
    }

    /// Checks acyclicity (references point to lower indices only) and that a
    /// unary rule appears only as the root.
    pub fn check(&self) -> Result<()> {
        for (k, rule) in self.rules.iter().enumerate() {
            match *rule {
                Rule::Pair(a, b) => {
                    for s in [a, b] {
                        if let Symbol::Rule(j) = s {
                            if j as usize >= k {
                                return Err(Error::Grammar(format!("rule X{} references X{}", k + 1, j + 1)));
                            }
                        }
                    }
                }
                Rule::Unary(_) => {
                    if self.root != Some(Symbol::Rule(k as u32)) {
                        return Err(Error::Grammar(format!("unary rule X{} is not the root", k + 1)));
                    }
                }
            }
        }
        match self.root {
            Some(Symbol::Rule(k)) if (k as usize) < self.rules.len() => Ok(()),
            Some(Symbol::Terminal(_)) => Err(Error::Grammar("terminal root".into())),
            _ => Err(Error::Grammar("missing root".into())),
        }
    }

    /// Expanded length of every rule, saturating.
    fn lengths(&self) -> Vec<u64> {
        let mut len = Vec::with_capacity(self.rules.len());
        for rule in &self.rules {
            let l = match *rule {
                Rule::Pair(a, b) => sym_value(&len, a, 1).saturating_add(sym_value(&len, b, 1)),
                Rule::Unary(_) => 1,
            };
            len.push(l);
        }
        len
    }

    /// Number of terminals equal to `t` in the expansion of every rule.
    fn counts(&self, t: u64) -> Vec<u64> {
        let mut cnt = Vec::with_capacity(self.rules.len());
        for rule in &self.rules {
            let of = |s: Symbol, cnt: &Vec<u64>| match s {
                Symbol::Terminal(x) => u64::from(x == t),
                Symbol::Rule(k) => cnt[k as usize],
            };
            let c = match *rule {
                Rule::Pair(a, b) => of(a, &cnt).saturating_add(of(b, &cnt)),
                Rule::Unary(x) => u64::from(x == t),
            };
            cnt.push(c);
        }
        cnt
    }

    pub fn expanded_len(&self, s: Symbol) -> u64 {
        sym_value(&self.lengths(), s, 1)
    }

    /// Expansion of the root.
    pub fn expand(&self) -> Result<Text> {
        self.expand_capped(DEFAULT_EXPAND_CAP)
    }

    pub fn expand_capped(&self, cap: u64) -> Result<Text> {
        self.check()?;
        self.expand_symbol(self.root.unwrap(), cap)
    }

    /// Expansion of any symbol, refused if longer than `cap`.
    pub fn expand_symbol(&self, s: Symbol, cap: u64) -> Result<Text> {
        let len = self.expanded_len(s);
        if len > cap {
            return Err(Error::CapExceeded { n: len.min(usize::MAX as u64) as usize, cap: cap as usize });
        }
        let mut out = Vec::with_capacity(len as usize);
        let mut stack = vec![s];
        while let Some(top) = stack.pop() {
            match top {
                Symbol::Terminal(t) => out.push(t),
                Symbol::Rule(k) => match self.rules[k as usize] {
                    Rule::Pair(a, b) => {
                        stack.push(b);
                        stack.push(a);
                    }
                    Rule::Unary(t) => out.push(t),
                },
            }
        }
        Ok(Text::new(out))
    }

    /// Adds rules deriving `t^count` and returns the symbol deriving it.
    ///
    /// Uses `floor(log2 count)` doubling rules plus one rule per extra set bit
    /// of `count`, i.e. at most `2 ceil(log2 count) + 1` new rules.
    pub fn repeat(&mut self, t: u64, count: u64) -> Symbol {
        assert!(count >= 1, "repeat count must be positive");
        // powers[b] derives t^(2^b).
        let mut powers = vec![Symbol::Terminal(t)];
        while (1u64 << powers.len()) <= count {
            let p = *powers.last().unwrap();
            powers.push(self.pair(p, p));
        }
        let mut acc: Option<Symbol> = None;
        for (b, &p) in powers.iter().enumerate().rev() {
            if count >> b & 1 == 1 {
                acc = Some(match acc {
                    None => p,
                    Some(a) => self.pair(a, p),
                });
            }
        }
        acc.unwrap()
    }

    /// One rule per line (`X3 -> X1 '0'`), then `root Xk`.
    pub fn to_text_format(&self) -> String {
        let mut out = String::new();
        for (k, rule) in self.rules.iter().enumerate() {
            match *rule {
                Rule::Pair(a, b) => writeln!(out, "X{} -> {} {}", k + 1, fmt_sym(a), fmt_sym(b)).unwrap(),
                Rule::Unary(t) => writeln!(out, "X{} -> '{}'", k + 1, t).unwrap(),
            }
        }
        if let Some(r) = self.root {
            writeln!(out, "root {}", fmt_sym(r)).unwrap();
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut g = Slp::new();
        let mut root = None;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Grammar(format!("line {}: {m}", lineno + 1));
            if let Some(r) = line.strip_prefix("root ") {
                root = Some(parse_sym(r.trim()).ok_or_else(|| err("bad root"))?);
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected '->'"))?;
            let expected = format!("X{}", g.rules.len() + 1);
            if lhs.trim() != expected {
                return Err(err(&format!("expected {expected}")));
            }
            let parts: Vec<Symbol> =
                rhs.split_whitespace().map(parse_sym).collect::<Option<_>>().ok_or_else(|| err("bad symbol"))?;
            match parts.as_slice() {
                [a, b] => {
                    for s in [a, b] {
                        if let Symbol::Rule(j) = s {
                            if *j as usize >= g.rules.len() {
                                return Err(err("forward reference"));
                            }
                        }
                    }
                    g.dedup.entry((*a, *b)).or_insert(g.rules.len() as u32);
                    g.rules.push(Rule::Pair(*a, *b));
                }
                [Symbol::Terminal(t)] => g.rules.push(Rule::Unary(*t)),
                _ => return Err(err("right-hand side must have two symbols")),
            }
        }
        g.root = root;
        g.check()?;
        Ok(g)
    }

    pub(crate) fn ones(&self) -> u64 {
        self.root.map_or(0, |r| sym_value(&self.counts(1), r, 0))
    }
}

fn sym_value(per_rule: &[u64], s: Symbol, terminal: u64) -> u64 {
    match s {
        Symbol::Terminal(_) => terminal,
        Symbol::Rule(k) => per_rule[k as usize],
    }
}

fn fmt_sym(s: Symbol) -> String {
    match s {
        Symbol::Terminal(t) => format!("'{t}'"),
        Symbol::Rule(k) => format!("X{}", k + 1),
    }
}

fn parse_sym(s: &str) -> Option<Symbol> {
    if let Some(inner) = s.strip_prefix('\'').and_then(|r| r.strip_suffix('\'')) {
        return inner.parse().ok().map(Symbol::Terminal);
    }
    let k: u32 = s.strip_prefix('X')?.parse().ok()?;
    k.checked_sub(1).map(Symbol::Rule)
}

/// Balanced pairing of adjacent symbols, level by level, with identical pairs
/// shared. Uses at most `n - 1` rules (one unary rule when `n = 1`).
pub fn build_slp(text: &Text) -> Result<Slp> {
    if text.is_empty() {
        return Err(Error::Grammar("cannot build a grammar for the empty text".into()));
    }
    let mut g = Slp::new();
    let mut layer: Vec<Symbol> = text.symbols().iter().map(|&t| Symbol::Terminal(t)).collect();
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|c| match *c {
                [a, b] => g.pair(a, b),
                [a] => a,
                _ => unreachable!(),
            })
            .collect();
    }
    g.set_root(layer[0]);
    Ok(g)
}

/// Copy of `g` extended with rules deriving `symbol^count`; also returns the
/// symbol deriving it.
pub fn repeat_rules(g: &Slp, symbol: u64, count: u64) -> (Slp, Symbol) {
    let mut out = g.clone();
    let s = out.repeat(symbol, count);
    (out, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Text {
        Text::from_bytes(s.as_bytes())
    }

    fn ceil_log2(x: u64) -> u32 {
        if x <= 1 { 0 } else { 64 - (x - 1).leading_zeros() }
    }

    #[test]
    fn expand_examples() {
        let (a, b) = (u64::from(b'a'), u64::from(b'b'));
        let mut g = Slp::new();
        let r = g.pair(Symbol::Terminal(a), Symbol::Terminal(b));
        g.set_root(r);
        assert_eq!(g.expand().unwrap(), t("ab"));

        let mut g = Slp::new();
        let x1 = g.pair(Symbol::Terminal(a), Symbol::Terminal(a));
        let x2 = g.pair(x1, x1);
        g.set_root(x2);
        assert_eq!(g.expand().unwrap(), t("aaaa"));
        assert_eq!(g.size(), 2);
    }

    #[test]
    fn build_sizes() {
        assert_eq!(build_slp(&t("ab")).unwrap().size(), 1);
        assert_eq!(build_slp(&t("abcd")).unwrap().size(), 3);
        let one = build_slp(&t("x")).unwrap();
        assert_eq!(one.size(), 1);
        assert_eq!(one.expand().unwrap(), t("x"));
        assert!(build_slp(&t("")).is_err());
        // Sharing: a^8 needs only three rules.
        assert_eq!(build_slp(&t("aaaaaaaa")).unwrap().size(), 3);
    }

    #[test]
    fn build_round_trips() {
        for s in ["a", "ab", "abc", "abracadabra", "0101101011011010110"] {
            let g = build_slp(&t(s)).unwrap();
            g.check().unwrap();
            assert!(g.size() < s.len().max(2));
            assert_eq!(g.expand().unwrap(), t(s));
        }
    }

    #[test]
    fn repeat_counts() {
        let close = u64::from(b')');
        let base = build_slp(&t("ab")).unwrap();
        let (g, s) = repeat_rules(&base, close, 1);
        assert_eq!(g.size(), base.size());
        assert_eq!(s, Symbol::Terminal(close));

        let (g, s) = repeat_rules(&base, close, 5);
        assert_eq!(g.expand_symbol(s, 100).unwrap(), t(")))))"));
        assert!(g.size() - base.size() <= 2 * 3 + 1);

        for count in 1..=64u64 {
            let (g, s) = repeat_rules(&base, 7, count);
            assert_eq!(g.expand_symbol(s, 1000).unwrap(), Text::new(vec![7; count as usize]));
            assert!(g.size() - base.size() <= 2 * ceil_log2(count) as usize + 1, "count {count}");
            g.check().unwrap();
        }
    }

    #[test]
    fn expansion_cap() {
        let mut g = Slp::new();
        let mut s = Symbol::Terminal(0);
        for _ in 0..30 {
            s = g.pair(s, s);
        }
        g.set_root(s);
        assert!(matches!(g.expand(), Err(Error::CapExceeded { .. })));
        assert_eq!(g.expanded_len(s), 1 << 30);
        assert_eq!(g.expand_symbol(Symbol::Rule(9), 1 << 10).unwrap().len(), 1 << 10);
    }

    #[test]
    fn text_format_round_trip() {
        let g = build_slp(&t("abracadabra")).unwrap();
        let s = g.to_text_format();
        assert!(s.starts_with("X1 -> '97' '98'\n"));
        let back = Slp::parse(&s).unwrap();
        assert_eq!(back.expand().unwrap(), g.expand().unwrap());
        assert_eq!(back.size(), g.size());

        let one = build_slp(&t("x")).unwrap();
        assert_eq!(Slp::parse(&one.to_text_format()).unwrap().expand().unwrap(), t("x"));
    }

    #[test]
    fn parse_rejects_bad_grammars() {
        assert!(Slp::parse("X1 -> X1 '0'\nroot X1\n").is_err());
        assert!(Slp::parse("X1 -> '0' '1'\n").is_err());
        assert!(Slp::parse("X2 -> '0' '1'\nroot X1\n").is_err());
        assert!(Slp::parse("X1 -> '0' '1' '1'\nroot X1\n").is_err());
        assert!(Slp::parse("X1 -> '0'\nX2 -> X1 X1\nroot X2\n").is_err());
    }
}
