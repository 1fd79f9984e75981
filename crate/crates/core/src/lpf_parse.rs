//! Block-wise LZ77 parsing.
//!
//! The input is cut into blocks of `b` bytes. For each block `B = X[kb..kb+b)`
//! with prefix `A = X[..kb)`:
//!
//! 1. scan `X[..kb)` right to left against the index of `B`, starting from the
//!    whole of `B` matched so matches may run into `B`;
//! 2. invert those matching statistics into the longest match of every suffix
//!    of `B` starting in `A`;
//! 3. take the longer of that and the block-local longest previous factor;
//! 4. parse greedily. The last phrase of the block is truncated at the block
//!    end, so it is re-measured against the whole text before moving on.
//!
//! Positions are 0-based throughout. A literal phrase stores its byte in
//! `pos` and has `len == 0`.

use std::ops::Range;

use crate::block_index::BlockIndex;
use crate::error::{Error, Result};
use crate::marks::PhraseMarks;
use crate::matching_stats::{ms_scan, MsEntry, MsMode, ScanStart, Skip};
use crate::ms_invert::MsInverter;
use crate::two_way;
use crate::word::IndexWord;

pub const DEFAULT_BLOCK_SIZE: usize = 1 << 20;
pub const DEFAULT_SKIP_THRESHOLD: usize = 40;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Phrase {
    pub pos: usize,
    pub len: usize,
}

impl Phrase {
    pub fn literal(c: u8) -> Self {
        Phrase { pos: c as usize, len: 0 }
    }

    pub fn copy(src: usize, len: usize) -> Self {
        debug_assert!(len > 0);
        Phrase { pos: src, len }
    }

    pub fn is_literal(&self) -> bool {
        self.len == 0
    }

    /// Number of text bytes the phrase covers.
    pub fn span(&self) -> usize {
        self.len.max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    phrases: Vec<Phrase>,
    n: usize,
}

impl Factorization {
    /// Checks that the phrases cover exactly `n >= 1` bytes.
    pub fn new(phrases: Vec<Phrase>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let covered: usize = phrases.iter().map(Phrase::span).sum();
        if covered != n {
            return Err(Error::MalformedPhrase {
                index: phrases.len(),
                reason: format!("phrases cover {covered} bytes, expected {n}"),
            });
        }
        Ok(Factorization { phrases, n })
    }

    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    pub fn into_phrases(self) -> Vec<Phrase> {
        self.phrases
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of phrases `z`.
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// `(start, phrase)` pairs.
    pub fn iter_starts(&self) -> impl Iterator<Item = (usize, Phrase)> + '_ {
        self.phrases.iter().scan(0, |start, &ph| {
            let at = *start;
            *start += ph.span();
            Some((at, ph))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseOptions {
    pub block_size: usize,
    pub ms_mode: MsMode,
    pub skip: bool,
    pub skip_threshold: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            block_size: DEFAULT_BLOCK_SIZE,
            ms_mode: MsMode::OnePosition,
            skip: true,
            skip_threshold: DEFAULT_SKIP_THRESHOLD,
        }
    }
}

impl ParseOptions {
    pub fn with_block_size(block_size: usize) -> Self {
        ParseOptions { block_size, ..Self::default() }
    }

    /// Block size giving `blocks` blocks over `n` bytes.
    pub fn block_size_for(n: usize, blocks: usize) -> usize {
        n.div_ceil(blocks.max(1)).max(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.block_size == 0 {
            return Err(Error::InvalidOption("block size must be at least 1".into()));
        }
        if self.skip_threshold == 0 {
            return Err(Error::InvalidOption("skip threshold must be at least 1".into()));
        }
        Ok(())
    }
}

/// What a parse cost, beyond the text and the output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseReport {
    pub factorization: Factorization,
    /// Peak over blocks of index + inverted statistics + block LPF bytes.
    pub peak_block_bytes: usize,
    /// Largest index alone, over blocks.
    pub peak_index_bytes: usize,
    /// The n-bit phrase boundary bitvector.
    pub marks_bytes: usize,
    pub blocks_indexed: usize,
    pub block_size: usize,
}

impl ParseReport {
    pub fn working_space_bytes(&self) -> usize {
        self.peak_block_bytes + self.marks_bytes
    }
}

/// Longest previous factor of every block position, sources inside the block.
pub fn lpf_of_block<I: IndexWord>(idx: &BlockIndex<'_, I>) -> Vec<MsEntry> {
    let rows = idx.rows();
    let mut lpf = vec![MsEntry::EMPTY; idx.len()];
    // Nearest rows on either side with a smaller text position give the
    // longest earlier match.
    let mut stack: Vec<usize> = Vec::new();
    for row in 1..rows {
        let p = idx.sa_at(row);
        while stack.last().is_some_and(|&top| idx.sa_at(top) > p) {
            stack.pop();
        }
        if let Some(&top) = stack.last() {
            let len = idx.lcp_at(idx.rmq_lcp(top + 1, row));
            if len > 0 {
                lpf[p] = MsEntry::new(idx.sa_at(top), len);
            }
        }
        stack.push(row);
    }
    stack.clear();
    for row in (1..rows).rev() {
        let p = idx.sa_at(row);
        while stack.last().is_some_and(|&top| idx.sa_at(top) > p) {
            stack.pop();
        }
        if let Some(&top) = stack.last() {
            let len = idx.lcp_at(idx.rmq_lcp(row + 1, top));
            if len > lpf[p].len {
                lpf[p] = MsEntry::new(idx.sa_at(top), len);
            }
        }
        stack.push(row);
    }
    lpf
}

/// Longest previous factors of block positions `kb..kb+b` within `X[..kb+b)`.
/// `ms_b` wins ties; in-block sources are shifted by `kb`.
pub fn merge_lpf(mut ms_b: Vec<MsEntry>, lpf_b: &[MsEntry], kb: usize) -> Vec<MsEntry> {
    for (slot, local) in ms_b.iter_mut().zip(lpf_b) {
        if local.len > slot.len {
            *slot = MsEntry::new(kb + local.pos, local.len);
        }
    }
    ms_b
}

/// Greedy parse of `x[block]` from `carry`. The phrase that reaches the block
/// end is withheld and its start returned instead.
pub fn factorize_block(lpf: &[MsEntry], x: &[u8], block: Range<usize>, carry: usize) -> (Vec<Phrase>, Option<usize>) {
    let mut phrases = Vec::new();
    let mut i = carry.max(block.start);
    while i < block.end {
        let e = lpf[i - block.start];
        let step = e.len.max(1);
        if i + step >= block.end {
            return (phrases, Some(i));
        }
        phrases.push(if e.len == 0 { Phrase::literal(x[i]) } else { Phrase::copy(e.pos, e.len) });
        i += step;
    }
    (phrases, None)
}

/// Longest prefix of `x[i..]` that also starts somewhere in `x[..i]`.
pub fn extend_last_phrase(x: &[u8], i: usize) -> Phrase {
    longest_previous_factor(x, i, MsEntry::EMPTY)
}

/// Like [`extend_last_phrase`], given a match `known` already established for
/// `x[i..]`. Gallops over the length with a constant-space exact matcher.
fn longest_previous_factor(x: &[u8], i: usize, known: MsEntry) -> Phrase {
    if i == 0 {
        return Phrase::literal(x[0]);
    }
    let max = x.len() - i;
    // An occurrence of x[i..i+m) starting before i lies within x[..i-1+m).
    let probe = |m: usize| two_way::find(&x[..i - 1 + m], &x[i..i + m]);

    let (mut lo, mut src) = (known.len, known.pos);
    let mut step = 1;
    let mut hi = loop {
        let m = lo + step;
        if m > max {
            break max + 1;
        }
        match probe(m) {
            Some(p) => {
                lo = m;
                src = p;
                step *= 2;
            }
            None => break m,
        }
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match probe(mid) {
            Some(p) => {
                lo = mid;
                src = p;
            }
            None => hi = mid,
        }
    }
    if lo == 0 {
        Phrase::literal(x[i])
    } else {
        Phrase::copy(src, lo)
    }
}

/// LZ77 parse of `x`, block by block.
pub fn lz_parse(x: &[u8], opts: &ParseOptions) -> Result<Factorization> {
    lz_parse_report(x, opts).map(|r| r.factorization)
}

/// Parses with the narrowest index word that fits the block size.
pub fn lz_parse_report(x: &[u8], opts: &ParseOptions) -> Result<ParseReport> {
    if opts.block_size.min(x.len()) <= u32::MAX_BLOCK {
        lz_parse_with::<u32>(x, opts)
    } else {
        lz_parse_with::<u64>(x, opts)
    }
}

pub fn lz_parse_with<I: IndexWord>(x: &[u8], opts: &ParseOptions) -> Result<ParseReport> {
    opts.validate()?;
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = x.len();
    let b = opts.block_size.min(n);
    let mut marks = PhraseMarks::new(n);
    let mut phrases = Vec::new();
    let mut carry = 0;
    let mut peak_block_bytes = 0;
    let mut peak_index_bytes = 0;
    let mut blocks_indexed = 0;

    for start in (0..n).step_by(b) {
        let end = (start + b).min(n);
        if carry >= end {
            // Covered by a phrase from an earlier block.
            continue;
        }
        let idx = BlockIndex::<I>::build(&x[start..end])?;
        blocks_indexed += 1;

        let mut inverter = MsInverter::new(end - start);
        if start > 0 {
            let skip = opts.skip.then_some(Skip { marks: &marks, threshold: opts.skip_threshold });
            ms_scan(&idx, &x[..end], start, ScanStart::Block, opts.ms_mode, skip, |i, e| inverter.accumulate(i, e));
        }
        let inverter_bytes = inverter.heap_bytes();
        let ms_b = inverter.finalize(&idx);
        let lpf_b = lpf_of_block(&idx);
        let index_bytes = idx.heap_bytes();
        let lpf_bytes = lpf_b.capacity() * std::mem::size_of::<MsEntry>();
        peak_index_bytes = peak_index_bytes.max(index_bytes);
        peak_block_bytes = peak_block_bytes.max(index_bytes + inverter_bytes + lpf_bytes);
        let lpf = merge_lpf(ms_b, &lpf_b, start);
        drop(lpf_b);
        drop(idx);

        let (block_phrases, last) = factorize_block(&lpf, x, start..end, carry);
        let mut at = carry.max(start);
        for ph in block_phrases {
            marks.set(at);
            at += ph.span();
            phrases.push(ph);
        }
        let Some(i) = last else { continue };
        debug_assert_eq!(i, at);
        let known = lpf[i - start];
        let ph = if end == n {
            if known.len == 0 {
                Phrase::literal(x[i])
            } else {
                Phrase::copy(known.pos, known.len)
            }
        } else {
            longest_previous_factor(x, i, known)
        };
        marks.set(i);
        phrases.push(ph);
        carry = i + ph.span();
        if carry < n {
            marks.set(carry);
        }
    }

    Ok(ParseReport {
        factorization: Factorization::new(phrases, n)?,
        peak_block_bytes,
        peak_index_bytes,
        marks_bytes: marks.heap_bytes(),
        blocks_indexed,
        block_size: b,
    })
}

/// Rebuilds the text. Copies run left to right, so a source may overlap the
/// bytes it produces.
pub fn decode(f: &Factorization) -> Result<Vec<u8>> {
    decode_phrases(f.phrases(), Some(f.n()))
}

/// Decodes a raw phrase list, checking every phrase as it goes.
pub fn decode_phrases(phrases: &[Phrase], expected_len: Option<usize>) -> Result<Vec<u8>> {
    let mut out: Vec<u8> = Vec::with_capacity(expected_len.unwrap_or(0));
    for (index, ph) in phrases.iter().enumerate() {
        if ph.is_literal() {
            let c = u8::try_from(ph.pos).map_err(|_| Error::MalformedPhrase {
                index,
                reason: format!("literal symbol {} out of byte range", ph.pos),
            })?;
            out.push(c);
            continue;
        }
        let start = out.len();
        if ph.pos >= start {
            return Err(Error::MalformedPhrase {
                index,
                reason: format!("source {} not before phrase start {start}", ph.pos),
            });
        }
        for k in 0..ph.len {
            out.push(out[ph.pos + k]);
        }
    }
    if let Some(n) = expected_len {
        if out.len() != n {
            return Err(Error::MalformedPhrase {
                index: phrases.len(),
                reason: format!("decoded {} bytes, expected {n}", out.len()),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Idx<'t> = BlockIndex<'t, u32>;

    fn lens(f: &Factorization) -> Vec<(usize, usize)> {
        f.iter_starts().map(|(s, p)| (s, p.len)).collect()
    }

    #[test]
    fn block_lpf() {
        let idx = Idx::build(b"banana").unwrap();
        let lpf = lpf_of_block(&idx);
        assert_eq!(&lpf[..3], &[MsEntry::EMPTY; 3]);
        assert_eq!(lpf[3], MsEntry::new(1, 3));
        assert_eq!(lpf[4], MsEntry::new(2, 2));
        assert_eq!(lpf[5].len, 1);
        assert!([1, 3].contains(&lpf[5].pos));

        let idx = Idx::build(b"ab").unwrap();
        assert_eq!(lpf_of_block(&idx), vec![MsEntry::EMPTY; 2]);
        let idx = Idx::build(b"aaaa").unwrap();
        assert_eq!(lpf_of_block(&idx)[1], MsEntry::new(0, 3));
    }

    #[test]
    fn merge_prefers_longer_then_prefix() {
        let merged = merge_lpf(vec![MsEntry::new(0, 2), MsEntry::new(1, 1)], &[MsEntry::EMPTY; 2], 2);
        assert_eq!(merged, vec![MsEntry::new(0, 2), MsEntry::new(1, 1)]);
        let merged = merge_lpf(vec![MsEntry::EMPTY], &[MsEntry::new(0, 2)], 10);
        assert_eq!(merged, vec![MsEntry::new(10, 2)]);
        let merged = merge_lpf(vec![MsEntry::new(3, 2)], &[MsEntry::new(0, 2)], 10);
        assert_eq!(merged, vec![MsEntry::new(3, 2)]);
        assert_eq!(merge_lpf(vec![MsEntry::EMPTY], &[MsEntry::EMPTY], 4), vec![MsEntry::EMPTY]);
    }

    #[test]
    fn factorize_single_block() {
        let x = b"abaabab";
        let idx = Idx::build(x).unwrap();
        let lpf = lpf_of_block(&idx);
        let (phrases, last) = factorize_block(&lpf, x, 0..7, 0);
        assert_eq!(phrases, vec![Phrase::literal(b'a'), Phrase::literal(b'b'), Phrase::copy(0, 1), Phrase::copy(0, 3)]);
        assert_eq!(last, Some(6));
        let (phrases, last) = factorize_block(&lpf, x, 0..7, 9);
        assert!(phrases.is_empty() && last.is_none());
    }

    #[test]
    fn extension_cases() {
        assert_eq!(extend_last_phrase(b"abaabab", 3), Phrase::copy(0, 3));
        assert_eq!(extend_last_phrase(b"aaaa", 1), Phrase::copy(0, 3));
        assert_eq!(extend_last_phrase(b"ab", 1), Phrase::literal(b'b'));
        assert_eq!(extend_last_phrase(b"abcabcabcab", 3), Phrase::copy(0, 8));
    }

    #[test]
    fn banana_parse() {
        let f = lz_parse(b"banana", &ParseOptions::with_block_size(6)).unwrap();
        assert_eq!(
            f.phrases(),
            &[Phrase::literal(b'b'), Phrase::literal(b'a'), Phrase::literal(b'n'), Phrase::copy(1, 3)]
        );
        assert_eq!(decode(&f).unwrap(), b"banana");
    }

    #[test]
    fn every_block_size_same_boundaries() {
        let x = b"abaabab";
        let want = vec![(0, 0), (1, 0), (2, 1), (3, 3), (6, 1)];
        for b in 1..=7 {
            for mode in [MsMode::OnePosition, MsMode::Standard] {
                let opts = ParseOptions { block_size: b, ms_mode: mode, skip: false, skip_threshold: 40 };
                let f = lz_parse(x, &opts).unwrap();
                assert_eq!(lens(&f), want, "b={b} {mode:?}");
                assert_eq!(decode(&f).unwrap(), x);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(lz_parse(b"", &ParseOptions::default()), Err(Error::EmptyInput)));
        assert!(lz_parse(b"a", &ParseOptions::with_block_size(0)).is_err());
        assert!(Factorization::new(vec![], 0).is_err());
    }

    #[test]
    fn decode_self_overlap_and_errors() {
        let f = Factorization::new(vec![Phrase::literal(b'a'), Phrase::copy(0, 3)], 4).unwrap();
        assert_eq!(decode(&f).unwrap(), b"aaaa");
        let bad = [Phrase::literal(b'a'), Phrase::copy(1, 2)];
        assert!(matches!(decode_phrases(&bad, None), Err(Error::MalformedPhrase { index: 1, .. })));
        let bad = [Phrase { pos: 300, len: 0 }];
        assert!(decode_phrases(&bad, None).is_err());
    }
}
