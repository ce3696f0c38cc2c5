//! Greedy LZ77 parsing (longest previous factor, self-overlap allowed, no
//! trailing literal) and the attractor induced by its phrase ends.

use crate::attractor::Attractor;
use crate::text::Text;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phrase {
    Literal(u64),
    /// Copy of `len` symbols starting at 1-based position `src`.
    Copy { src: u64, len: u64 },
}

impl Phrase {
    pub fn len(&self) -> u64 {
        match *self {
            Phrase::Literal(_) => 1,
            Phrase::Copy { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Lz77Parse {
    phrases: Vec<Phrase>,
}

impl Lz77Parse {
    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    /// Number of phrases (z).
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn text_len(&self) -> u64 {
        self.phrases.iter().map(Phrase::len).sum()
    }

    /// 1-based end position of every phrase.
    pub fn phrase_ends(&self) -> Vec<u64> {
        self.phrases
            .iter()
            .scan(0u64, |end, p| {
                *end += p.len();
                Some(*end)
            })
            .collect()
    }

    /// Expands the phrases back into the text. Copies may overlap themselves.
    pub fn decode(&self) -> Text {
        let mut out: Vec<u64> = Vec::with_capacity(self.text_len() as usize);
        for p in &self.phrases {
            match *p {
                Phrase::Literal(c) => out.push(c),
                Phrase::Copy { src, len } => {
                    for k in 0..len as usize {
                        out.push(out[src as usize - 1 + k]);
                    }
                }
            }
        }
        Text::new(out)
    }
}

/// Z-array of `seq`: `z[k]` is the length of the longest common prefix of
/// `seq` and `seq[k..]` (with `z[0] = seq.len()`).
fn z_array<T: PartialEq>(seq: &[T]) -> Vec<usize> {
    let n = seq.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for k in 1..n {
        if k < r {
            z[k] = z[k - l].min(r - k);
        }
        while k + z[k] < n && seq[z[k]] == seq[k + z[k]] {
            z[k] += 1;
        }
        if k + z[k] > r {
            l = k;
            r = k + z[k];
        }
    }
    z
}

/// Greedy left-to-right parse. Each phrase is the longest factor starting at
/// the current position that also starts at an earlier position, ties broken
/// by the leftmost source; a literal is emitted when the symbol is new.
pub fn lz77_parse(text: &Text) -> Lz77Parse {
    let s = text.symbols();
    let n = s.len();
    let mut phrases = Vec::new();
    let mut pos = 0usize;
    while pos < n {
        // lcp(s[pos..], s[q..]) for q < pos via the Z-array of s[pos..] # s.
        let mut seq: Vec<Option<u64>> = Vec::with_capacity(2 * n - pos + 1);
        seq.extend(s[pos..].iter().copied().map(Some));
        seq.push(None);
        seq.extend(s[..n].iter().copied().map(Some));
        let z = z_array(&seq);
        let base = n - pos + 1;
        let (mut best_len, mut best_src) = (0usize, 0usize);
        for q in 0..pos {
            let l = z[base + q];
            if l > best_len {
                best_len = l;
                best_src = q;
            }
        }
        if best_len == 0 {
            phrases.push(Phrase::Literal(s[pos]));
            pos += 1;
        } else {
            phrases.push(Phrase::Copy { src: best_src as u64 + 1, len: best_len as u64 });
            pos += best_len;
        }
    }
    Lz77Parse { phrases }
}

/// The set of phrase end positions; one position per phrase.
pub fn attractor_from_lz77(parse: &Lz77Parse) -> Attractor {
    let n = parse.text_len() as usize;
    Attractor::new(parse.phrase_ends(), n).expect("phrase ends are strictly increasing and in range")
}

/// Shorthand for `attractor_from_lz77(&lz77_parse(text))`.
pub fn lz77_attractor(text: &Text) -> Attractor {
    attractor_from_lz77(&lz77_parse(text))
}
