//! Matching statistics of a text against an indexed block, computed by a
//! right-to-left scan.
//!
//! Two scanners are provided. [`IntervalState`] tracks the full SA interval of
//! the current match and contracts it through NSV/PSV when a left extension
//! fails. [`RowState`] keeps a single row inside that interval and resolves a
//! failed extension from the nearest occurrences of the symbol in the BWT
//! around the row, which needs only the BWT, LCP, `R` and the chunk
//! summaries.
//!
//! Entries are handed to a sink as they are produced; nothing proportional to
//! the scanned text is stored.

use crate::block_index::{BlockIndex, SaInterval};
use crate::marks::PhraseMarks;
use crate::word::IndexWord;

/// One matching-statistics pair: `text[i..i+len)` equals `block[pos..pos+len)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MsEntry {
    pub pos: usize,
    pub len: usize,
}

impl MsEntry {
    pub const EMPTY: MsEntry = MsEntry { pos: 0, len: 0 };

    pub fn new(pos: usize, len: usize) -> Self {
        MsEntry { pos, len }
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MsMode {
    /// Single row per step (the faster scanner).
    #[default]
    OnePosition,
    /// Full SA interval with NSV/PSV contraction.
    Standard,
}

/// Where the scan starts from, i.e. what is taken to be matched at `end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanStart {
    /// The empty string: plain matching statistics of `text[..end]`.
    Empty,
    /// The whole block, which must be `text[end..]`. Matches may then run
    /// across `end` into the block.
    Block,
}

#[derive(Clone, Copy, Debug)]
pub struct Skip<'m> {
    pub marks: &'m PhraseMarks,
    /// Only phrases at least this long are skipped over.
    pub threshold: usize,
}

/// State of a right-to-left matching-statistics scan.
#[allow(clippy::len_without_is_empty)]
pub trait ScanState: Copy {
    /// Nothing matched yet.
    fn empty<I: IndexWord>(idx: &BlockIndex<'_, I>) -> Self;

    /// The whole block matched.
    fn whole_block<I: IndexWord>(idx: &BlockIndex<'_, I>) -> Self;

    /// Recomputes the state for `pattern` from scratch by right extension.
    fn restart<I: IndexWord>(idx: &BlockIndex<'_, I>, pattern: &[u8]) -> Self;

    /// Prepends `c` to the current match, contracting it as needed.
    fn step<I: IndexWord>(&mut self, idx: &BlockIndex<'_, I>, c: u8) -> MsEntry;

    fn entry<I: IndexWord>(&self, idx: &BlockIndex<'_, I>) -> MsEntry;

    fn len(&self) -> usize;

    /// A row whose suffix starts with the current match.
    fn row(&self) -> usize;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalState {
    pub range: SaInterval,
    pub len: usize,
}

impl IntervalState {
    /// Replaces the interval by its enclosing LCP interval.
    fn contract<I: IndexWord>(&mut self, idx: &BlockIndex<'_, I>) {
        let rows = idx.rows();
        let SaInterval { start, end } = self.range;
        let left = idx.lcp_at(start);
        let right = if end < rows { idx.lcp_at(end) } else { 0 };
        let parent = left.max(right);
        debug_assert!(parent < self.len);
        let start = if left == parent { idx.psv(start).unwrap_or(0) } else { start };
        let end = if end < rows && right == parent { idx.nsv(end).unwrap_or(rows) } else { end };
        self.range = SaInterval::new(start, end);
        self.len = parent;
    }
}

impl ScanState for IntervalState {
    fn empty<I: IndexWord>(idx: &BlockIndex<'_, I>) -> Self {
        IntervalState { range: idx.full_interval(), len: 0 }
    }

    fn whole_block<I: IndexWord>(idx: &BlockIndex<'_, I>) -> Self {
        let row = idx.isa()[0].as_usize();
        IntervalState { range: SaInterval::new(row, row + 1), len: idx.len() }
    }

    fn restart<I: IndexWord>(idx: &BlockIndex<'_, I>, pattern: &[u8]) -> Self {
        let (range, len) = longest_prefix_match(idx, pattern);
        IntervalState { range, len }
    }

    #[inline]
    fn step<I: IndexWord>(&mut self, idx: &BlockIndex<'_, I>, c: u8) -> MsEntry {
        if !idx.contains_symbol(c) {
            *self = Self::empty(idx);
            return MsEntry::EMPTY;
        }
        loop {
            let next = idx.backward_extend(self.range, c);
            if !next.is_empty() {
                self.range = next;
                self.len += 1;
                return self.entry(idx);
            }
            self.contract(idx);
        }
    }

    fn entry<I: IndexWord>(&self, idx: &BlockIndex<'_, I>) -> MsEntry {
        if self.len == 0 {
            MsEntry::EMPTY
        } else {
            MsEntry::new(idx.sa_at(self.range.start), self.len)
        }
    }

    fn len(&self) -> usize {
        self.len
    }

    fn row(&self) -> usize {
        self.range.start
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowState {
    pub row: usize,
    pub len: usize,
}

impl ScanState for RowState {
    fn empty<I: IndexWord>(_idx: &BlockIndex<'_, I>) -> Self {
        RowState { row: 0, len: 0 }
    }

    fn whole_block<I: IndexWord>(idx: &BlockIndex<'_, I>) -> Self {
        RowState { row: idx.isa()[0].as_usize(), len: idx.len() }
    }

    fn restart<I: IndexWord>(idx: &BlockIndex<'_, I>, pattern: &[u8]) -> Self {
        let (range, len) = longest_prefix_match(idx, pattern);
        RowState { row: if len == 0 { 0 } else { range.start }, len }
    }

    #[inline]
    fn step<I: IndexWord>(&mut self, idx: &BlockIndex<'_, I>, c: u8) -> MsEntry {
        if !idx.contains_symbol(c) {
            self.len = 0;
            return MsEntry::EMPTY;
        }
        let base = idx.count_smaller(c);
        let s = self.row;
        if idx.bwt()[s] == c as u16 {
            self.row = base + idx.r()[s].as_usize() - 1;
            self.len += 1;
            return self.entry(idx);
        }
        let before = idx.nearest_occ_before(c, s);
        if let Some(u) = before {
            if u.lcp >= self.len {
                self.row = base + u.rank - 1;
                self.len += 1;
                return self.entry(idx);
            }
        }
        // A missing occurrence counts as an LCP of minus infinity.
        match (before, idx.nearest_occ_after(c, s)) {
            (Some(u), None) => {
                self.row = base + u.rank - 1;
                self.len = u.lcp + 1;
            }
            (Some(u), Some(lv)) if lv <= u.lcp => {
                self.row = base + u.rank - 1;
                self.len = u.lcp + 1;
            }
            (before, Some(lv)) => {
                self.row = base + before.map_or(0, |u| u.rank);
                self.len = self.len.min(lv) + 1;
            }
            (None, None) => unreachable!("symbol present in the block but not in its BWT"),
        }
        self.entry(idx)
    }

    fn entry<I: IndexWord>(&self, idx: &BlockIndex<'_, I>) -> MsEntry {
        if self.len == 0 {
            MsEntry::EMPTY
        } else {
            MsEntry::new(idx.sa_at(self.row), self.len)
        }
    }

    fn len(&self) -> usize {
        self.len
    }

    fn row(&self) -> usize {
        self.row
    }
}

/// Longest prefix of `pattern` occurring in the block, with its SA interval,
/// by binary-search right extension.
pub fn longest_prefix_match<I: IndexWord>(idx: &BlockIndex<'_, I>, pattern: &[u8]) -> (SaInterval, usize) {
    let text = idx.text();
    let mut range = idx.full_interval();
    let mut len = 0;
    for (k, &c) in pattern.iter().enumerate() {
        // Symbol at depth k of a row's suffix; shorter suffixes sort first.
        let key = |row: usize| -> i32 {
            let p = idx.sa_at(row) + k;
            text.get(p).map_or(-1, |&x| x as i32)
        };
        let c = c as i32;
        let lo = partition(range.start, range.end, |row| key(row) < c);
        let hi = partition(lo, range.end, |row| key(row) <= c);
        if lo == hi {
            break;
        }
        range = SaInterval::new(lo, hi);
        len = k + 1;
    }
    (range, len)
}

/// First index in `lo..hi` where `pred` turns false.
fn partition(mut lo: usize, mut hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Streams matching statistics of `text[i..]` against the block for
/// `i = end-1` down to `0`.
///
/// With `skip`, whenever the entry at `j` lies inside a marked phrase
/// `text[i..i+l)` with `l >= threshold` and `i < j`, positions `i..j` are not
/// scanned and the scan resumes at `i-1` from a fresh right-extension search.
pub fn ms_scan<I, F>(
    idx: &BlockIndex<'_, I>,
    text: &[u8],
    end: usize,
    start: ScanStart,
    mode: MsMode,
    skip: Option<Skip<'_>>,
    sink: F,
) where
    I: IndexWord,
    F: FnMut(usize, MsEntry),
{
    match mode {
        MsMode::OnePosition => scan_with::<RowState, I, F>(idx, text, end, start, skip, sink),
        MsMode::Standard => scan_with::<IntervalState, I, F>(idx, text, end, start, skip, sink),
    }
}

pub fn scan_with<S, I, F>(
    idx: &BlockIndex<'_, I>,
    text: &[u8],
    end: usize,
    start: ScanStart,
    skip: Option<Skip<'_>>,
    mut sink: F,
) where
    S: ScanState,
    I: IndexWord,
    F: FnMut(usize, MsEntry),
{
    let mut state = match start {
        ScanStart::Empty => S::empty(idx),
        ScanStart::Block => {
            debug_assert_eq!(&text[end..end + idx.len()], idx.text());
            S::whole_block(idx)
        }
    };
    // Phrase `ph_start..ph_end` containing the current position.
    let (mut ph_start, mut ph_end) = (usize::MAX, usize::MAX);
    let mut restart = false;
    let mut j = end;
    while j > 0 {
        j -= 1;
        let e = if restart {
            restart = false;
            state = S::restart(idx, &text[j..]);
            state.entry(idx)
        } else {
            state.step(idx, text[j])
        };
        sink(j, e);

        let Some(skip) = skip else { continue };
        if j < ph_start {
            ph_end = if ph_start == usize::MAX {
                skip.marks.next_set(j + 1).unwrap_or(text.len())
            } else {
                ph_start
            };
            ph_start = skip.marks.prev_set(j).unwrap_or(0);
        }
        if e.len > 0 && ph_start < j && ph_end - ph_start >= skip.threshold && j + e.len <= ph_end {
            j = ph_start;
            restart = true;
        }
    }
}
