//! On-disk index container.
//!
//! Layout (integers are little-endian u64 unless noted):
//!
//! ```text
//! "ATRQ"  version:u8
//! n  sigma  gamma  tau  L  structure-flags
//! gamma attractor positions
//! per present structure, in flag order: tag  byte-length  payload
//! checksum  (CRC-64/ECMA-182 of every preceding byte)
//! ```
//!
//! Flags: bit 0 psum, bit 1 rank, bit 2 select, bit 3 pred.

use crc::{Crc, Table, CRC_64_ECMA_182};

use crate::attractor::Attractor;
use crate::codec::{Reader, Writer};
use crate::error::{Error, Result};
use crate::index::{AttractorIndex, Structures};
use crate::psum::PsumIndex;
use crate::query::{PredSet, RankIndex, SelectIndex};

pub const MAGIC: &[u8; 4] = b"ATRQ";
pub const VERSION: u8 = 1;

const CHECKSUM: Crc<u64, Table<16>> = Crc::<u64, Table<16>>::new(&CRC_64_ECMA_182);

fn section(w: &mut Writer, tag: u64, body: impl FnOnce(&mut Writer)) {
    let mut inner = Writer::default();
    body(&mut inner);
    w.u64(tag);
    w.u64(inner.buf.len() as u64);
    w.buf.extend_from_slice(&inner.buf);
}

/// Serializes an index into container bytes.
pub fn save(index: &AttractorIndex) -> Vec<u8> {
    let mut w = Writer::default();
    w.buf.extend_from_slice(MAGIC);
    w.buf.push(VERSION);
    let flags = index.structures();
    w.u64(index.n as u64);
    w.u64(index.sigma);
    w.u64(index.attractor.len() as u64);
    w.u64(index.tau);
    w.u64(index.levels() as u64);
    w.u64(flags.bits());
    for &p in index.attractor.positions() {
        w.u64(p);
    }
    if let Some(p) = &index.psum {
        section(&mut w, 1, |w| p.encode(w));
    }
    if let Some(r) = &index.rank {
        section(&mut w, 2, |w| r.encode(w));
    }
    if let Some(s) = &index.select {
        section(&mut w, 4, |w| s.encode(w));
    }
    if let Some(p) = &index.pred {
        section(&mut w, 8, |w| p.encode(w));
    }
    let sum = CHECKSUM.checksum(&w.buf);
    w.u64(sum);
    w.buf
}

fn read_section<'a, T>(r: &mut Reader<'a>, tag: u64, decode: impl FnOnce(&mut Reader<'a>) -> Result<T>) -> Result<T> {
    let found = r.u64()?;
    if found != tag {
        return Err(Error::Format(format!("expected section {tag}, found {found}")));
    }
    let len = r.u64()?;
    let mut inner = Reader::new(r.take(usize::try_from(len).map_err(|_| Error::Format("bad section length".into()))?)?);
    let value = decode(&mut inner)?;
    if !inner.is_empty() {
        return Err(Error::Format(format!("trailing bytes in section {tag}")));
    }
    Ok(value)
}

/// Parses container bytes, checking magic, version, checksum and structure.
pub fn load(bytes: &[u8]) -> Result<AttractorIndex> {
    if bytes.len() < 5 + 8 || &bytes[..4] != MAGIC {
        return Err(Error::Format("not an index container".into()));
    }
    if bytes[4] != VERSION {
        return Err(Error::Format(format!("unsupported container version {}", bytes[4])));
    }
    let (data, tail) = bytes.split_at(bytes.len() - 8);
    let stored = u64::from_le_bytes(tail.try_into().unwrap());
    if CHECKSUM.checksum(data) != stored {
        return Err(Error::Format("checksum mismatch".into()));
    }

    let body = &data[5..];
    let mut r = Reader::new(body);
    let n = r.u64()? as usize;
    let sigma = r.u64()?;
    let gamma = r.count(8)?;
    let tau = r.u64()?;
    let levels = r.u64()?;
    let flags = Structures::from_bits(r.u64()?)?;
    let positions = (0..gamma).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
    let attractor = Attractor::new(positions, n).map_err(|e| Error::Format(e.to_string()))?;

    let mut index = AttractorIndex { n, sigma, tau, attractor, psum: None, rank: None, select: None, pred: None };
    if index.levels() as u64 != levels {
        return Err(Error::Format("header level count mismatch".into()));
    }
    if flags.psum {
        index.psum = Some(read_section(&mut r, 1, PsumIndex::decode)?);
    }
    if flags.rank {
        index.rank = Some(read_section(&mut r, 2, RankIndex::decode)?);
    }
    if flags.select {
        index.select = Some(read_section(&mut r, 4, SelectIndex::decode)?);
    }
    if flags.pred {
        index.pred = Some(read_section(&mut r, 8, PredSet::decode)?);
    }
    if !r.is_empty() {
        return Err(Error::Format("trailing bytes after sections".into()));
    }
    let sizes_ok = index.psum.as_ref().is_none_or(|p| p.len() == n && p.attractor() == &index.attractor)
        && index.rank.as_ref().is_none_or(|x| x.len() == n)
        && index.select.as_ref().is_none_or(|x| x.len() == n)
        && index.pred.as_ref().is_none_or(|x| x.universe() == n);
    if !sizes_ok {
        return Err(Error::Format("structure sizes disagree with the header".into()));
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lz77::lz77_attractor;
    use crate::text::Text;

    fn sample() -> AttractorIndex {
        let t = Text::from_bytes(b"abracadabra abracadabra");
        AttractorIndex::build(&t, &lz77_attractor(&t), 2, Structures::ALL).unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let idx = sample();
        let bytes = save(&idx);
        assert_eq!(&bytes[..5], b"ATRQ\x01");
        let back = load(&bytes).unwrap();
        assert_eq!(back, idx);
        assert_eq!(save(&back), bytes);
    }

    #[test]
    fn header_fields() {
        let idx = sample();
        let bytes = save(&idx);
        let word = |k: usize| u64::from_le_bytes(bytes[5 + 8 * k..13 + 8 * k].try_into().unwrap());
        assert_eq!(word(0), 23);
        assert_eq!(word(1), u64::from(b'r') + 1);
        assert_eq!(word(2), idx.attractor().len() as u64);
        assert_eq!(word(3), 2);
        assert_eq!(word(4), idx.levels() as u64);
        assert_eq!(word(5), 0xf);
    }

    #[test]
    fn every_single_byte_corruption_is_detected() {
        let bytes = save(&sample());
        for k in 0..bytes.len() {
            for flip in [0x01u8, 0x80, 0xff] {
                let mut bad = bytes.clone();
                bad[k] ^= flip;
                assert!(load(&bad).is_err(), "byte {k} flip {flip:#x} undetected");
            }
        }
    }

    #[test]
    fn truncation_and_version() {
        let bytes = save(&sample());
        assert!(load(&bytes[..bytes.len() - 1]).is_err());
        assert!(load(&bytes[..3]).is_err());
        let mut v2 = bytes.clone();
        v2[4] = 2;
        assert!(matches!(load(&v2), Err(Error::Format(m)) if m.contains("version")));
    }

    #[test]
    fn partial_structures() {
        let t = Text::from_bits_str("0010011100100111").unwrap();
        let idx = AttractorIndex::build(&t, &lz77_attractor(&t), 2, "select,pred".parse().unwrap()).unwrap();
        let back = load(&save(&idx)).unwrap();
        assert_eq!(back, idx);
        assert_eq!(back.predecessor(9).unwrap(), Some(8));
    }
}
