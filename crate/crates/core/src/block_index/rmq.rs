//! Range minimum queries: sparse table over block minima, linear scans inside
//! blocks. Uses O(n / 32 · log n) words on top of the array itself.

use crate::word::IndexWord;

const BLOCK: usize = 32;

#[derive(Clone, Debug)]
pub struct Rmq<I> {
    /// `levels[k][i]` is the position of the minimum over blocks `i .. i + 2^k`.
    levels: Vec<Vec<I>>,
}

impl<I: IndexWord> Rmq<I> {
    pub fn new(values: &[I]) -> Self {
        let nblocks = values.len().div_ceil(BLOCK);
        let mut base = Vec::with_capacity(nblocks);
        for b in 0..nblocks {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(values.len()) - 1;
            base.push(I::from_usize(scan_min(values, lo, hi)));
        }
        let mut levels = vec![base];
        let mut width = 1;
        while 2 * width <= nblocks {
            let prev = levels.last().unwrap();
            let next: Vec<I> = (0..=nblocks - 2 * width)
                .map(|i| pick(values, prev[i].as_usize(), prev[i + width].as_usize()))
                .map(I::from_usize)
                .collect();
            levels.push(next);
            width *= 2;
        }
        Rmq { levels }
    }

    /// Position of the minimum of `values[i..=j]`, leftmost on ties.
    pub fn query(&self, values: &[I], i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < values.len());
        let (bi, bj) = (i / BLOCK, j / BLOCK);
        if bj <= bi + 1 {
            return scan_min(values, i, j);
        }
        let left = scan_min(values, i, (bi + 1) * BLOCK - 1);
        let (lo, hi) = (bi + 1, bj - 1);
        let k = usize::BITS - 1 - (hi - lo + 1).leading_zeros();
        let level = &self.levels[k as usize];
        let mid = pick(values, level[lo].as_usize(), level[hi + 1 - (1 << k)].as_usize());
        let best = pick(values, left, mid);
        pick(values, best, scan_min(values, bj * BLOCK, j))
    }

    pub fn heap_bytes(&self) -> usize {
        self.levels.iter().map(|l| l.capacity() * std::mem::size_of::<I>()).sum()
    }
}

#[inline]
fn scan_min<I: IndexWord>(values: &[I], lo: usize, hi: usize) -> usize {
    let mut best = lo;
    for k in lo + 1..=hi {
        if values[k] < values[best] {
            best = k;
        }
    }
    best
}

/// Assumes `a` lies left of `b`.
#[inline]
fn pick<I: IndexWord>(values: &[I], a: usize, b: usize) -> usize {
    if values[b] < values[a] {
        b
    } else {
        a
    }
}
