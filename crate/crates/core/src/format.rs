//! On-disk phrase formats.
//!
//! Both formats number text positions from 1. A literal is written as its byte
//! value with length 0; a copy as `(source + 1, length)`.
//!
//! * text: one phrase per line, `"p len"` in decimal;
//! * binary: `b"LZSC"`, version byte `0x01`, `n` and `z` as little-endian
//!   `u64`, then `z` records of two little-endian `u64` `(p, len)`.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::lpf_parse::{Factorization, Phrase};

pub const MAGIC: &[u8; 4] = b"LZSC";
pub const VERSION: u8 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Binary,
}

fn to_record(ph: &Phrase) -> (u64, u64) {
    if ph.is_literal() {
        (ph.pos as u64, 0)
    } else {
        (ph.pos as u64 + 1, ph.len as u64)
    }
}

fn from_record(index: usize, p: u64, len: u64) -> Result<Phrase> {
    let p = usize::try_from(p).map_err(|_| Error::Format(format!("record {index}: position {p} too large")))?;
    let len = usize::try_from(len).map_err(|_| Error::Format(format!("record {index}: length {len} too large")))?;
    if len == 0 {
        if p > u8::MAX as usize {
            return Err(Error::Format(format!("record {index}: literal {p} is not a byte")));
        }
        Ok(Phrase::literal(p as u8))
    } else if p == 0 {
        Err(Error::Format(format!("record {index}: copy source 0 (positions start at 1)")))
    } else {
        Ok(Phrase::copy(p - 1, len))
    }
}

pub fn write(f: &Factorization, format: Format, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Text => {
            for ph in f.phrases() {
                let (p, len) = to_record(ph);
                writeln!(out, "{p} {len}")?;
            }
        }
        Format::Binary => {
            out.write_all(MAGIC)?;
            out.write_all(&[VERSION])?;
            out.write_all(&(f.n() as u64).to_le_bytes())?;
            out.write_all(&(f.len() as u64).to_le_bytes())?;
            for ph in f.phrases() {
                let (p, len) = to_record(ph);
                out.write_all(&p.to_le_bytes())?;
                out.write_all(&len.to_le_bytes())?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn to_bytes(f: &Factorization, format: Format) -> Vec<u8> {
    let mut buf = Vec::new();
    write(f, format, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

/// Reads either format, telling them apart by the magic bytes. Phrase
/// sources are not checked here; decoding does that.
pub fn read(data: &[u8]) -> Result<Factorization> {
    if data.starts_with(MAGIC) {
        read_binary(data)
    } else {
        read_text(data)
    }
}

fn read_binary(mut data: &[u8]) -> Result<Factorization> {
    let mut header = [0u8; 21];
    data.read_exact(&mut header).map_err(|_| Error::Format("truncated header".into()))?;
    if header[4] != VERSION {
        return Err(Error::Format(format!("unsupported version {}", header[4])));
    }
    let n = u64::from_le_bytes(header[5..13].try_into().unwrap());
    let z = u64::from_le_bytes(header[13..21].try_into().unwrap());
    if data.len() as u64 != z.saturating_mul(16) {
        return Err(Error::Format(format!("expected {z} records, found {} bytes of records", data.len())));
    }
    let phrases = data
        .chunks_exact(16)
        .enumerate()
        .map(|(k, rec)| {
            let p = u64::from_le_bytes(rec[..8].try_into().unwrap());
            let len = u64::from_le_bytes(rec[8..].try_into().unwrap());
            from_record(k, p, len)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = usize::try_from(n).map_err(|_| Error::Format("length too large".into()))?;
    Factorization::new(phrases, n).map_err(|e| Error::Format(e.to_string()))
}

fn read_text(data: &[u8]) -> Result<Factorization> {
    let mut phrases = Vec::new();
    for (k, line) in data.lines().enumerate() {
        let line = line.map_err(|_| Error::Format(format!("line {}: not UTF-8", k + 1)))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_ascii_whitespace();
        let (Some(p), Some(len), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Format(format!("line {}: expected two fields", k + 1)));
        };
        let parse = |s: &str| s.parse::<u64>().map_err(|_| Error::Format(format!("line {}: bad number {s:?}", k + 1)));
        phrases.push(from_record(phrases.len(), parse(p)?, parse(len)?)?);
    }
    let n = phrases.iter().map(Phrase::span).sum();
    Factorization::new(phrases, n).map_err(|e| Error::Format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{lz_parse, ParseOptions};

    #[test]
    fn banana_text() {
        let f = lz_parse(b"banana", &ParseOptions::default()).unwrap();
        assert_eq!(to_bytes(&f, Format::Text), b"98 0\n97 0\n110 0\n2 3\n");
    }

    #[test]
    fn banana_binary_layout() {
        let f = lz_parse(b"banana", &ParseOptions::default()).unwrap();
        let bin = to_bytes(&f, Format::Binary);
        assert_eq!(bin.len(), 21 + 4 * 16);
        assert_eq!(&bin[..5], b"LZSC\x01");
        assert_eq!(u64::from_le_bytes(bin[5..13].try_into().unwrap()), 6);
        assert_eq!(u64::from_le_bytes(bin[13..21].try_into().unwrap()), 4);
        assert_eq!(read(&bin).unwrap(), f);
        assert_eq!(read(&to_bytes(&f, Format::Text)).unwrap(), f);
    }

    #[test]
    fn malformed_inputs() {
        assert!(read(b"LZSC\x02").is_err());
        assert!(read(b"1 2 3\n").is_err());
        assert!(read(b"0 4\n").is_err());
        assert!(read(b"300 0\n").is_err());
        assert!(read(b"x 0\n").is_err());
        let f = lz_parse(b"banana", &ParseOptions::default()).unwrap();
        let mut bin = to_bytes(&f, Format::Binary);
        bin.pop();
        assert!(read(&bin).is_err());
    }
}
