//! Linear-scan reference answers. Nothing here shares code with the indexed
//! query paths.

use crate::error::{Error, Result};
use crate::text::Text;

fn check(pos: u64, lo: u64, hi: u64) -> Result<()> {
    if pos < lo || pos > hi {
        return Err(Error::OutOfRange { pos, lo, hi });
    }
    Ok(())
}

/// Sum of `S[1..v]`, `v` in `[0..n]`.
pub fn naive_psum(text: &Text, v: u64) -> Result<u64> {
    check(v, 0, text.len() as u64)?;
    let mut acc = 0u64;
    for &s in &text.symbols()[..v as usize] {
        acc = acc.checked_add(s).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Occurrences of `c` in `S[1..i]`, `i` in `[0..n]`.
pub fn naive_rank(text: &Text, c: u64, i: u64) -> Result<u64> {
    check(i, 0, text.len() as u64)?;
    Ok(text.symbols()[..i as usize].iter().filter(|&&s| s == c).count() as u64)
}

/// Position of the `k`-th occurrence of `c`.
pub fn naive_select(text: &Text, c: u64, k: u64) -> Result<u64> {
    let mut seen = 0u64;
    for (p, &s) in text.symbols().iter().enumerate() {
        if s == c {
            seen += 1;
            if seen == k {
                return Ok(p as u64 + 1);
            }
        }
    }
    let count = text.symbols().iter().filter(|&&s| s == c).count() as u64;
    Err(Error::RankOutOfRange { symbol: c, k, count })
}

/// `S[i]`, `i` in `[1..n]`.
pub fn naive_access(text: &Text, i: u64) -> Result<u64> {
    check(i, 1, text.len() as u64)?;
    Ok(text.symbols()[i as usize - 1])
}

/// Largest `x <= y` with `S[x] != 0`, scanning down from `y`.
pub fn naive_predecessor(text: &Text, y: u64) -> Result<Option<u64>> {
    check(y, 1, text.len() as u64)?;
    Ok((1..=y).rev().find(|&x| text.symbols()[x as usize - 1] != 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = Text::from_bytes(b"abracadabra");
        assert_eq!(naive_rank(&t, u64::from(b'a'), 5).unwrap(), 2);
        assert_eq!(naive_select(&t, u64::from(b'a'), 3).unwrap(), 6);
        assert!(naive_select(&t, u64::from(b'a'), 6).is_err());
        assert_eq!(naive_psum(&Text::new(vec![2, 0, 1]), 0).unwrap(), 0);
        assert_eq!(naive_psum(&Text::new(vec![2, 0, 1, 3, 0, 1]), 4).unwrap(), 6);
        let u = Text::from_bits_str("0010011").unwrap();
        assert_eq!(naive_predecessor(&u, 5).unwrap(), Some(3));
        assert_eq!(naive_predecessor(&u, 2).unwrap(), None);
        assert_eq!(naive_access(&u, 3).unwrap(), 1);
        assert!(naive_access(&u, 0).is_err());
    }

    #[test]
    fn rank_select_inverse() {
        let t = Text::from_bytes(b"mississippi");
        for c in t.alphabet() {
            let total = naive_rank(&t, c, t.len() as u64).unwrap();
            for k in 1..=total {
                let p = naive_select(&t, c, k).unwrap();
                assert_eq!(naive_rank(&t, c, p).unwrap(), k);
            }
        }
    }
}
