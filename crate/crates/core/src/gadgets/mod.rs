//! Encodings that reduce rank and access on a bitstring to select, excess,
//! findclose and range-extremum queries on a derived string, and the grammar
//! rewrites showing the derived strings stay grammar-compressible.
//!
//! Grammars over parentheses use terminal `1` for `(` and `0` for `)`.

mod parens;
mod verify;

pub use parens::ParenString;
pub use verify::{verify_reductions, IdentityCheck, ReductionReport};

use crate::error::{Error, Result};
use crate::slp::{Rule, Slp, Symbol};
use crate::text::Text;

const OPEN: u64 = 1;
const CLOSE: u64 = 0;

/// `0 -> 1`, `1 -> 01`, applied symbol by symbol.
pub fn delta_encode(bits: &Text) -> Result<Text> {
    bits.ensure_binary()?;
    let mut out = Vec::with_capacity(2 * bits.len());
    for &b in bits.symbols() {
        if b == 1 {
            out.push(0);
        }
        out.push(1);
    }
    Ok(Text::new(out))
}

/// `(` then `()` per 0 and `((` per 1, closed by `)^(k+1)` with `k = 2 rank1(n)`.
pub fn excess_encode(bits: &Text) -> Result<ParenString> {
    bits.ensure_binary()?;
    let ones = bits.symbols().iter().filter(|&&b| b == 1).count();
    let mut p = Vec::with_capacity(2 * bits.len() + 2 * ones + 2);
    p.push(true);
    for &b in bits.symbols() {
        p.extend(if b == 1 { [true, true] } else { [true, false] });
    }
    p.extend(std::iter::repeat_n(false, 2 * ones + 1));
    Ok(ParenString::new(p))
}

/// `(^n` then `)` per 0 and `())` per 1.
pub fn findclose_encode(bits: &Text) -> Result<ParenString> {
    bits.ensure_binary()?;
    let mut p = vec![true; bits.len()];
    for &b in bits.symbols() {
        if b == 1 {
            p.extend([true, false, false]);
        } else {
            p.push(false);
        }
    }
    Ok(ParenString::new(p))
}

/// Rebuilds `g` rule by rule with terminals replaced via `map`; rules keep
/// their relative order, so acyclicity carries over.
fn rewrite(g: &Slp, out: &mut Slp, map: impl Fn(u64) -> Symbol) -> Result<Symbol> {
    g.check()?;
    let mut new_of: Vec<Symbol> = Vec::with_capacity(g.size());
    let sym = |s: Symbol, new_of: &Vec<Symbol>| match s {
        Symbol::Terminal(t) => map(t),
        Symbol::Rule(k) => new_of[k as usize],
    };
    for rule in g.rules() {
        let s = match *rule {
            Rule::Pair(a, b) => {
                let (a, b) = (sym(a, &new_of), sym(b, &new_of));
                out.pair(a, b)
            }
            Rule::Unary(t) => map(t),
        };
        new_of.push(s);
    }
    Ok(sym(g.root().unwrap(), &new_of))
}

fn ensure_binary_grammar(g: &Slp) -> Result<()> {
    match g.terminals().into_iter().find(|&t| t > 1) {
        Some(t) => Err(Error::NotBinary(t)),
        None => Ok(()),
    }
}

/// Grammar for `delta_encode(expand(g))` with at most one extra rule: a rule
/// `X -> 0 1` replaces terminal 1 and terminal 0 becomes 1. `X` is only added
/// when terminal 1 occurs.
pub fn slp_delta_transform(g: &Slp) -> Result<Slp> {
    ensure_binary_grammar(g)?;
    let mut out = Slp::new();
    let x = if g.terminals().contains(&1) {
        Some(out.pair(Symbol::Terminal(0), Symbol::Terminal(1)))
    } else {
        None
    };
    let root = rewrite(g, &mut out, |t| if t == 1 { x.unwrap() } else { Symbol::Terminal(1) })?;
    out.set_root(root);
    Ok(out)
}

fn expansion_len(g: &Slp, n: u64) -> Result<()> {
    g.check()?;
    let len = g.expanded_len(g.root().unwrap());
    if len != n {
        return Err(Error::Grammar(format!("grammar expands to length {len}, expected {n}")));
    }
    Ok(())
}

/// Grammar for `excess_encode(expand(g))`, where `g` derives a bitstring of
/// length `n`.
pub fn slp_excess_transform(g: &Slp, n: u64) -> Result<Slp> {
    ensure_binary_grammar(g)?;
    expansion_len(g, n)?;
    let ones = g.ones();
    let terms = g.terminals();
    let mut out = Slp::new();
    let zero = terms.contains(&0).then(|| out.pair(Symbol::Terminal(OPEN), Symbol::Terminal(CLOSE)));
    let one = terms.contains(&1).then(|| out.pair(Symbol::Terminal(OPEN), Symbol::Terminal(OPEN)));
    let body = rewrite(g, &mut out, |t| if t == 1 { one.unwrap() } else { zero.unwrap() })?;
    let tail = out.repeat(CLOSE, 2 * ones + 1);
    let rest = out.pair(body, tail);
    let root = out.pair(Symbol::Terminal(OPEN), rest);
    out.set_root(root);
    Ok(out)
}

/// Grammar for `findclose_encode(expand(g))`, where `g` derives a bitstring
/// of length `n`.
pub fn slp_findclose_transform(g: &Slp, n: u64) -> Result<Slp> {
    ensure_binary_grammar(g)?;
    expansion_len(g, n)?;
    let mut out = Slp::new();
    let one = g.terminals().contains(&1).then(|| {
        let closes = out.pair(Symbol::Terminal(CLOSE), Symbol::Terminal(CLOSE));
        out.pair(Symbol::Terminal(OPEN), closes)
    });
    let body = rewrite(g, &mut out, |t| if t == 1 { one.unwrap() } else { Symbol::Terminal(CLOSE) })?;
    let head = out.repeat(OPEN, n);
    let root = out.pair(head, body);
    out.set_root(root);
    Ok(out)
}
