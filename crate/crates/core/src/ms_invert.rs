//! Inversion of matching statistics.
//!
//! Given the matching statistics of a (long) text `A` against a block `B`,
//! computes the matching statistics of `B` against `A` using only `SA_B` and
//! `LCP_B`. Entries of the forward statistics may be fed in any order and
//! discarded immediately, so `MS_{A|B}` is never stored.

use crate::block_index::BlockIndex;
use crate::matching_stats::MsEntry;
use crate::word::IndexWord;

#[derive(Clone, Debug)]
pub struct MsInverter {
    /// Slot `q` holds a position of `A` and a match length for `B[q..]`.
    ms: Vec<MsEntry>,
}

impl MsInverter {
    pub fn new(block_len: usize) -> Self {
        MsInverter { ms: vec![MsEntry::EMPTY; block_len] }
    }

    /// Records that `A[i..i+len)` equals `B[pos..pos+len)`.
    #[inline]
    pub fn accumulate(&mut self, i: usize, e: MsEntry) {
        if e.len == 0 {
            return;
        }
        let slot = &mut self.ms[e.pos];
        if e.len > slot.len {
            *slot = MsEntry::new(i, e.len);
        }
    }

    pub fn slots(&self) -> &[MsEntry] {
        &self.ms
    }

    /// Spreads the recorded matches to lexicographic neighbours, in SA order
    /// and then in reverse, capping lengths by the LCP in between.
    pub fn finalize<I: IndexWord>(self, idx: &BlockIndex<'_, I>) -> Vec<MsEntry> {
        let mut ms = self.ms;
        debug_assert_eq!(ms.len(), idx.len());
        let rows = idx.rows();
        // Row 0 is the sentinel suffix and holds no slot.
        let mut carry = ms[idx.sa_at(1)];
        for row in 2..rows {
            carry.len = carry.len.min(idx.lcp_at(row));
            let slot = &mut ms[idx.sa_at(row)];
            if carry.len > slot.len {
                *slot = carry;
            } else {
                carry = *slot;
            }
        }
        let mut carry = ms[idx.sa_at(rows - 1)];
        for row in (1..rows - 1).rev() {
            carry.len = carry.len.min(idx.lcp_at(row + 1));
            let slot = &mut ms[idx.sa_at(row)];
            if carry.len > slot.len {
                *slot = carry;
            } else {
                carry = *slot;
            }
        }
        for e in &mut ms {
            if e.len == 0 {
                *e = MsEntry::EMPTY;
            }
        }
        ms
    }

    pub fn heap_bytes(&self) -> usize {
        self.ms.capacity() * std::mem::size_of::<MsEntry>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Idx<'t> = BlockIndex<'t, u32>;

    #[test]
    fn accumulate_keeps_longest() {
        let mut inv = MsInverter::new(3);
        inv.accumulate(0, MsEntry::new(1, 2));
        assert_eq!(inv.slots()[1], MsEntry::new(0, 2));
        inv.accumulate(4, MsEntry::new(1, 1));
        assert_eq!(inv.slots()[1], MsEntry::new(0, 2));
        inv.accumulate(2, MsEntry::EMPTY);
        assert_eq!(inv.slots()[0], MsEntry::EMPTY);
    }

    #[test]
    fn nab_against_ana() {
        // MS of "nab" w.r.t. "ana": (1,2), (0 or 2,1), empty.
        let idx = Idx::build(b"ana").unwrap();
        let mut inv = MsInverter::new(3);
        inv.accumulate(0, MsEntry::new(1, 2));
        inv.accumulate(1, MsEntry::new(0, 1));
        inv.accumulate(2, MsEntry::EMPTY);
        let ms = inv.finalize(&idx);
        assert_eq!(ms, vec![MsEntry::new(1, 1), MsEntry::new(0, 2), MsEntry::new(1, 1)]);
    }

    #[test]
    fn nothing_accumulated() {
        let idx = Idx::build(b"xyz").unwrap();
        let ms = MsInverter::new(3).finalize(&idx);
        assert!(ms.iter().all(MsEntry::is_empty));
    }

    #[test]
    fn single_symbol_identity() {
        let idx = Idx::build(b"a").unwrap();
        let mut inv = MsInverter::new(1);
        inv.accumulate(0, MsEntry::new(0, 1));
        assert_eq!(inv.finalize(&idx), vec![MsEntry::new(0, 1)]);
    }
}
