use std::fmt;

use super::{delta_encode, excess_encode, findclose_encode};
use crate::error::Result;
use crate::text::Text;

/// Outcome of one identity checked at every position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<usize>,
}

impl IdentityCheck {
    fn new(name: &'static str) -> Self {
        IdentityCheck { name, checked: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, i: usize, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            self.first_failure.get_or_insert(i);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub n: usize,
    pub checks: Vec<IdentityCheck>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

impl fmt::Display for ReductionReport {
    /// `key=value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for c in &self.checks {
            writeln!(
                f,
                "{}={} checked={} failures={}{}",
                c.name,
                if c.passed() { "pass" } else { "fail" },
                c.checked,
                c.failures,
                c.first_failure.map(|i| format!(" first_failure={i}")).unwrap_or_default()
            )?;
        }
        write!(f, "result={}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Checks, at every `i` in `[1..n]`:
///
/// 1. `rank1(i) = select1(delta(S), i) - i`
/// 2. `rank1(i) = (excess(Dx, 2i+1) - 1) / 2` on the excess encoding `Dx`
/// 3. `rank1(i) = (findclose(Df, n-i+1) - n - i) / 2` on the findclose encoding `Df`
/// 4. `S[i] = 0` iff `RMQi(Dx, 2i, 2i+1) = 2i`, and `S[i] = 1` iff `rmqi(Dx, 2i, 2i+1) = 2i`
///
/// Failures are counted, never raised. Rank and select are computed by
/// direct scans.
pub fn verify_reductions(bits: &Text) -> Result<ReductionReport> {
    let n = bits.len();
    let delta = delta_encode(bits)?;
    let dx = excess_encode(bits)?;
    let df = findclose_encode(bits)?;

    let mut select_delta = IdentityCheck::new("select_delta");
    let mut excess = IdentityCheck::new("excess");
    let mut findclose = IdentityCheck::new("findclose");
    let mut access_max = IdentityCheck::new("access_rmqi_max");
    let mut access_min = IdentityCheck::new("access_rmqi_min");

    // Positions of set bits in delta(S), in order.
    let ones_in_delta: Vec<usize> =
        delta.symbols().iter().enumerate().filter(|(_, &b)| b == 1).map(|(p, _)| p + 1).collect();

    let mut rank = 0i64;
    for i in 1..=n {
        let bit = bits.at(i);
        rank += bit as i64;

        let sel = ones_in_delta.get(i - 1).map(|&p| p as i64);
        select_delta.record(i, sel == Some(rank + i as i64));

        let e = dx.excess(2 * i + 1).ok();
        excess.record(i, e.is_some_and(|e| e - 1 == 2 * rank));

        let fc = df.findclose(n - i + 1).ok().map(|p| p as i64);
        findclose.record(i, fc.is_some_and(|p| p - n as i64 - i as i64 == 2 * rank));

        let at_first_max = dx.rmqi_max(2 * i, 2 * i + 1).ok() == Some(2 * i);
        access_max.record(i, at_first_max == (bit == 0));
        let at_first_min = dx.rmqi(2 * i, 2 * i + 1).ok() == Some(2 * i);
        access_min.record(i, at_first_min == (bit == 1));
    }

    Ok(ReductionReport { n, checks: vec![select_delta, excess, findclose, access_max, access_min] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Text {
        Text::from_bits_str(s).unwrap()
    }

    #[test]
    fn worked_values_at_position_three() {
        let s = bits("00101");
        let dx = excess_encode(&s).unwrap();
        assert_eq!((dx.excess(7).unwrap() - 1) / 2, 1);
        let df = findclose_encode(&s).unwrap();
        assert_eq!((df.findclose(3).unwrap() as i64 - 5 - 3) / 2, 1);
        // select1(1101101, 3) = 4
        let d = delta_encode(&s).unwrap();
        let third = d.symbols().iter().enumerate().filter(|(_, &b)| b == 1).nth(2).unwrap().0 + 1;
        assert_eq!(third - 3, 1);
    }

    #[test]
    fn example_passes() {
        let r = verify_reductions(&bits("00101")).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 5);
        assert!(r.checks.iter().all(|c| c.checked == 5));
        let text = r.to_string();
        assert!(text.contains("excess=pass checked=5 failures=0"));
        assert!(text.ends_with("result=pass"));
    }

    #[test]
    fn exhaustive_small() {
        for n in 1..=10usize {
            for mask in 0u32..(1 << n) {
                let t = Text::new((0..n).map(|k| u64::from(mask >> k & 1)).collect());
                assert!(verify_reductions(&t).unwrap().passed(), "{t}");
            }
        }
    }

    #[test]
    fn rejects_non_binary() {
        assert!(verify_reductions(&Text::new(vec![3])).is_err());
    }
}
