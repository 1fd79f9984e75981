//! Immutable index over one text block.
//!
//! The block `B` is indexed as `B#`, where `#` is a sentinel smaller than every
//! byte. Rows are 0-based: row 0 always holds the sentinel suffix (text
//! position `b`), rows `1..=b` hold the real suffixes in lexicographic order.
//!
//! Besides the usual suffix array, inverse, LCP and BWT, the index carries the
//! structures the two matching-statistics scanners need:
//!
//! * sampled rank counts for backward search (interval mode),
//! * `R[i] = rank(BWT, BWT[i], i)` plus per-chunk summaries so the
//!   single-row scanner can find the nearest occurrence of a symbol around a
//!   row by scanning at most one chunk of `2σ` rows,
//! * NSV/PSV over LCP as 16-bit offsets for right contraction,
//! * an RMQ over LCP.

mod rmq;
mod smaller;

use crate::error::{Error, Result};
use crate::word::IndexWord;

pub use rmq::Rmq;
use smaller::{Direction, SmallerValues};
pub use smaller::DEFAULT_ESCAPE;

/// BWT symbol stored in the sentinel's row.
pub const SENTINEL: u16 = 256;

const RANK_STEP: usize = 64;
const ABSENT: u16 = u16::MAX;

/// Half-open range `start..end` of suffix array rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SaInterval {
    pub start: usize,
    pub end: usize,
}

impl SaInterval {
    pub fn new(start: usize, end: usize) -> Self {
        SaInterval { start, end }
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn contains(&self, row: usize) -> bool {
        self.start <= row && row < self.end
    }
}

/// The nearest occurrence of a symbol before some row `s` in the BWT.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    /// `rank(BWT, c, u)`, counting the occurrence itself.
    pub rank: usize,
    /// `min LCP[u+1..=s]`.
    pub lcp: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexOptions {
    /// NSV/PSV offsets at or above this value go to the overflow table.
    pub offset_escape: u16,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions { offset_escape: DEFAULT_ESCAPE }
    }
}

#[derive(Clone, Debug)]
pub struct BlockIndex<'t, I> {
    text: &'t [u8],
    sa: Vec<I>,
    isa: Vec<I>,
    lcp: Vec<I>,
    bwt: Vec<u16>,
    /// `c_table[c]` = number of BWT symbols smaller than `c`, sentinel included.
    c_table: Vec<usize>,
    /// Dense id of each byte present in the block, `ABSENT` otherwise.
    sym_id: [u16; 256],
    sigma: usize,
    /// `rank_samples[k * sigma + id]` = occurrences of `id` in `bwt[0..k * RANK_STEP)`.
    rank_samples: Vec<I>,
    r: Vec<I>,
    nsv: SmallerValues<I>,
    psv: SmallerValues<I>,
    rmq: Rmq<I>,
    chunk: usize,
    /// Per chunk and symbol: occurrences before the chunk start.
    chunk_rank: Vec<I>,
    /// Per chunk and symbol: `min LCP[u+1..=start]` for the last occurrence `u < start`.
    chunk_before: Vec<I>,
    /// Per chunk and symbol: `min LCP[end..=v]` for the first occurrence `v >= end`.
    chunk_after: Vec<I>,
}

impl<'t, I: IndexWord> BlockIndex<'t, I> {
    pub fn build(text: &'t [u8]) -> Result<Self> {
        Self::build_with(text, IndexOptions::default())
    }

    pub fn build_with(text: &'t [u8], opts: IndexOptions) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyBlock);
        }
        if text.len() > I::MAX_BLOCK {
            return Err(Error::BlockTooLarge { len: text.len(), max: I::MAX_BLOCK });
        }
        if opts.offset_escape == 0 {
            return Err(Error::InvalidOption("offset escape must be at least 1".into()));
        }
        let b = text.len();
        let rows = b + 1;

        let mut sa = Vec::with_capacity(rows);
        sa.push(I::from_usize(b));
        sa.extend(crate::sais::suffix_array(text).into_iter().map(I::from_usize));

        let mut isa = vec![I::zero(); rows];
        for (row, &p) in sa.iter().enumerate() {
            isa[p.as_usize()] = I::from_usize(row);
        }

        // Kasai; the sentinel row never shares a prefix.
        let mut lcp = vec![I::zero(); rows];
        let mut h = 0usize;
        for i in 0..b {
            let row = isa[i].as_usize();
            if row <= 1 {
                h = 0;
                continue;
            }
            let j = sa[row - 1].as_usize();
            while i + h < b && j + h < b && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[row] = I::from_usize(h);
            h = h.saturating_sub(1);
        }

        let bwt: Vec<u16> = sa
            .iter()
            .map(|&p| match p.as_usize() {
                0 => SENTINEL,
                p => text[p - 1] as u16,
            })
            .collect();

        let mut occ = [0usize; 256];
        for &c in text {
            occ[c as usize] += 1;
        }
        let mut c_table = vec![0usize; 257];
        c_table[0] = 1;
        for c in 0..256 {
            c_table[c + 1] = c_table[c] + occ[c];
        }

        let mut sym_id = [ABSENT; 256];
        let mut sigma = 0;
        for c in 0..256 {
            if occ[c] > 0 {
                sym_id[c] = sigma as u16;
                sigma += 1;
            }
        }

        // Rank samples and R in one pass.
        let mut running = vec![0usize; sigma];
        let mut rank_samples = Vec::with_capacity((rows / RANK_STEP + 1) * sigma);
        let mut r = Vec::with_capacity(rows);
        for (row, &c) in bwt.iter().enumerate() {
            if row % RANK_STEP == 0 {
                rank_samples.extend(running.iter().map(|&k| I::from_usize(k)));
            }
            if c == SENTINEL {
                // The sentinel is the only one of its kind.
                r.push(I::one());
            } else {
                let id = sym_id[c as usize] as usize;
                running[id] += 1;
                r.push(I::from_usize(running[id]));
            }
        }
        if rows.is_multiple_of(RANK_STEP) {
            rank_samples.extend(running.iter().map(|&k| I::from_usize(k)));
        }

        let nsv = SmallerValues::build(&lcp, Direction::Next, opts.offset_escape);
        let psv = SmallerValues::build(&lcp, Direction::Previous, opts.offset_escape);
        let rmq = Rmq::new(&lcp);

        let mut index = BlockIndex {
            text,
            sa,
            isa,
            lcp,
            bwt,
            c_table,
            sym_id,
            sigma,
            rank_samples,
            r,
            nsv,
            psv,
            rmq,
            chunk: 2 * sigma,
            chunk_rank: Vec::new(),
            chunk_before: Vec::new(),
            chunk_after: Vec::new(),
        };
        index.build_summaries();
        Ok(index)
    }

    fn build_summaries(&mut self) {
        let rows = self.rows();
        let (w, sigma) = (self.chunk, self.sigma);
        let nchunks = rows.div_ceil(w);
        let mut chunk_rank = Vec::with_capacity(nchunks * sigma);
        let mut chunk_before = Vec::with_capacity(nchunks * sigma);
        let mut chunk_after = vec![I::NONE; nchunks * sigma];

        let mut count = vec![0usize; sigma];
        let mut last = vec![usize::MAX; sigma];
        for k in 0..nchunks {
            let start = k * w;
            for id in 0..sigma {
                chunk_rank.push(I::from_usize(count[id]));
                chunk_before.push(match last[id] {
                    usize::MAX => I::NONE,
                    u => self.lcp[self.rmq_lcp(u + 1, start)],
                });
            }
            for row in start..(start + w).min(rows) {
                if let Some(id) = self.bwt_id(row) {
                    count[id] += 1;
                    last[id] = row;
                }
            }
        }

        let mut next = vec![usize::MAX; sigma];
        for k in (0..nchunks).rev() {
            let start = k * w;
            let end = start + w;
            if end < rows {
                for id in 0..sigma {
                    if next[id] != usize::MAX {
                        chunk_after[k * sigma + id] = self.lcp[self.rmq_lcp(end, next[id])];
                    }
                }
            }
            for row in (start..end.min(rows)).rev() {
                if let Some(id) = self.bwt_id(row) {
                    next[id] = row;
                }
            }
        }

        self.chunk_rank = chunk_rank;
        self.chunk_before = chunk_before;
        self.chunk_after = chunk_after;
    }

    #[inline]
    fn bwt_id(&self, row: usize) -> Option<usize> {
        match self.bwt[row] {
            SENTINEL => None,
            c => Some(self.sym_id[c as usize] as usize),
        }
    }

    /// Block length `b`.
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// Number of rows, `b + 1`.
    pub fn rows(&self) -> usize {
        self.sa.len()
    }

    pub fn text(&self) -> &'t [u8] {
        self.text
    }

    pub fn sa(&self) -> &[I] {
        &self.sa
    }

    pub fn isa(&self) -> &[I] {
        &self.isa
    }

    pub fn lcp(&self) -> &[I] {
        &self.lcp
    }

    pub fn bwt(&self) -> &[u16] {
        &self.bwt
    }

    pub fn r(&self) -> &[I] {
        &self.r
    }

    #[inline]
    pub fn sa_at(&self, row: usize) -> usize {
        self.sa[row].as_usize()
    }

    #[inline]
    pub fn lcp_at(&self, row: usize) -> usize {
        self.lcp[row].as_usize()
    }

    /// Distinct symbols in the block.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Rows per summary chunk (`2σ`).
    pub fn chunk_len(&self) -> usize {
        self.chunk
    }

    #[inline]
    pub fn contains_symbol(&self, c: u8) -> bool {
        self.sym_id[c as usize] != ABSENT
    }

    /// `C[c]`: number of rows whose suffix starts with a symbol smaller than `c`.
    #[inline]
    pub fn count_smaller(&self, c: u8) -> usize {
        self.c_table[c as usize]
    }

    /// Occurrences of `c` in `bwt[0..i)`.
    pub fn rank(&self, c: u8, i: usize) -> usize {
        let id = self.sym_id[c as usize];
        if id == ABSENT {
            return 0;
        }
        let k = i / RANK_STEP;
        let base = self.rank_samples[k * self.sigma + id as usize].as_usize();
        let c = c as u16;
        base + self.bwt[k * RANK_STEP..i].iter().filter(|&&x| x == c).count()
    }

    pub fn full_interval(&self) -> SaInterval {
        SaInterval::new(0, self.rows())
    }

    /// Left extension: maps the `Y`-interval to the `cY`-interval.
    #[inline]
    pub fn backward_extend(&self, iv: SaInterval, c: u8) -> SaInterval {
        if !self.contains_symbol(c) || iv.is_empty() {
            return SaInterval::new(0, 0);
        }
        let base = self.count_smaller(c);
        SaInterval::new(base + self.rank(c, iv.start), base + self.rank(c, iv.end))
    }

    /// LF mapping of a row whose BWT symbol is `c`.
    #[inline]
    pub fn lf(&self, row: usize) -> Option<usize> {
        match self.bwt[row] {
            SENTINEL => None,
            c => Some(self.c_table[c as usize] + self.r[row].as_usize() - 1),
        }
    }

    /// Next smaller value of `lcp[i]`, `None` at the right boundary.
    #[inline]
    pub fn nsv(&self, i: usize) -> Option<usize> {
        self.nsv.get(i)
    }

    /// Previous smaller value of `lcp[i]`, `None` at the left boundary.
    #[inline]
    pub fn psv(&self, i: usize) -> Option<usize> {
        self.psv.get(i)
    }

    /// Number of NSV/PSV entries served by the overflow table.
    pub fn offset_overflows(&self) -> usize {
        self.nsv.overflow_len() + self.psv.overflow_len()
    }

    /// Row in `i..=j` with the smallest LCP value, leftmost on ties.
    #[inline]
    pub fn rmq_lcp(&self, i: usize, j: usize) -> usize {
        self.rmq.query(&self.lcp, i, j)
    }

    /// Longest common prefix of the block suffixes starting at `p` and `q`.
    pub fn lcp_of_suffixes(&self, p: usize, q: usize) -> usize {
        if p == q {
            return self.len() - p;
        }
        let (a, b) = (self.isa[p].as_usize(), self.isa[q].as_usize());
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.lcp_at(self.rmq_lcp(lo + 1, hi))
    }

    /// Nearest row `u < s` with `bwt[u] = c`, scanning at most one chunk.
    pub fn nearest_occ_before(&self, c: u8, s: usize) -> Option<Occurrence> {
        let id = self.sym_id[c as usize];
        if id == ABSENT {
            return None;
        }
        let c = c as u16;
        let k = s / self.chunk;
        let start = k * self.chunk;
        let mut m = usize::MAX;
        let mut row = s;
        while row > start {
            m = m.min(self.lcp_at(row));
            row -= 1;
            if self.bwt[row] == c {
                return Some(Occurrence { rank: self.r[row].as_usize(), lcp: m });
            }
        }
        let slot = k * self.sigma + id as usize;
        let before = self.chunk_before[slot];
        if before.is_none() {
            return None;
        }
        Some(Occurrence { rank: self.chunk_rank[slot].as_usize(), lcp: m.min(before.as_usize()) })
    }

    /// For the nearest row `v > s` with `bwt[v] = c`, returns `min LCP[s+1..=v]`.
    pub fn nearest_occ_after(&self, c: u8, s: usize) -> Option<usize> {
        let id = self.sym_id[c as usize];
        if id == ABSENT {
            return None;
        }
        let c = c as u16;
        let k = s / self.chunk;
        let end = ((k + 1) * self.chunk).min(self.rows());
        let mut m = usize::MAX;
        for row in s + 1..end {
            m = m.min(self.lcp_at(row));
            if self.bwt[row] == c {
                return Some(m);
            }
        }
        let after = self.chunk_after[k * self.sigma + id as usize];
        if after.is_none() {
            return None;
        }
        Some(m.min(after.as_usize()))
    }

    /// Heap bytes held by the index arrays (the borrowed text is not counted).
    pub fn heap_bytes(&self) -> usize {
        let w = std::mem::size_of::<I>();
        (self.sa.capacity()
            + self.isa.capacity()
            + self.lcp.capacity()
            + self.r.capacity()
            + self.rank_samples.capacity()
            + self.chunk_rank.capacity()
            + self.chunk_before.capacity()
            + self.chunk_after.capacity())
            * w
            + self.bwt.capacity() * 2
            + self.c_table.capacity() * std::mem::size_of::<usize>()
            + std::mem::size_of_val(&self.sym_id)
            + self.nsv.heap_bytes()
            + self.psv.heap_bytes()
            + self.rmq.heap_bytes()
    }
}
