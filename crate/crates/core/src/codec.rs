//! Little-endian 64-bit word encoding shared by the serialized structures.

use crate::error::{Error, Result};

#[derive(Default)]
pub(crate) struct Writer {
    pub(crate) buf: Vec<u8>,
}

impl Writer {
    pub(crate) fn u64(&mut self, x: u64) {
        self.buf.extend_from_slice(&x.to_le_bytes());
    }

    pub(crate) fn i64(&mut self, x: i64) {
        self.buf.extend_from_slice(&x.to_le_bytes());
    }

    pub(crate) fn words(&mut self, xs: &[u64]) {
        self.u64(xs.len() as u64);
        for &x in xs {
            self.u64(x);
        }
    }
}

pub(crate) struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub(crate) fn u64(&mut self) -> Result<u64> {
        let end = self.pos + 8;
        let bytes = self
            .buf
            .get(self.pos..end)
            .ok_or_else(|| Error::Format("unexpected end of data".into()))?;
        self.pos = end;
        Ok(u64::from_le_bytes(bytes.try_into().unwrap()))
    }

    pub(crate) fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Format("section exceeds data".into()))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub(crate) fn i64(&mut self) -> Result<i64> {
        self.u64().map(|x| x as i64)
    }

    /// Reads a count and checks it against the bytes that remain.
    pub(crate) fn count(&mut self, bytes_per_item: usize) -> Result<usize> {
        let c = self.u64()?;
        let remaining = (self.buf.len() - self.pos) as u64;
        if c.saturating_mul(bytes_per_item as u64) > remaining {
            return Err(Error::Format(format!("count {c} exceeds remaining data")));
        }
        Ok(c as usize)
    }

    pub(crate) fn words(&mut self) -> Result<Vec<u64>> {
        let c = self.count(8)?;
        (0..c).map(|_| self.u64()).collect()
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.pos == self.buf.len()
    }
}
