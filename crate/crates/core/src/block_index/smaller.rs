//! Next/previous smaller value over the LCP array, stored as 16-bit offsets.
//!
//! Offset `0` means "no smaller value", offsets at or above the escape value
//! are routed to a sorted side table searched in O(log b).

use crate::word::IndexWord;

pub const DEFAULT_ESCAPE: u16 = u16::MAX;

#[derive(Clone, Debug)]
pub struct SmallerValues<I> {
    offsets: Vec<u16>,
    dir: Direction,
    escape: u16,
    /// `(i, j)` for every `i` whose offset did not fit, sorted by `i`.
    overflow: Vec<(I, I)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Next,
    Previous,
}

impl<I: IndexWord> SmallerValues<I> {
    pub fn build(values: &[I], dir: Direction, escape: u16) -> Self {
        debug_assert!(escape >= 1);
        let n = values.len();
        let mut target = vec![usize::MAX; n];
        let mut stack: Vec<usize> = Vec::new();
        let order: Box<dyn Iterator<Item = usize>> = match dir {
            Direction::Next => Box::new((0..n).rev()),
            Direction::Previous => Box::new(0..n),
        };
        for i in order {
            while let Some(&top) = stack.last() {
                if values[top] >= values[i] {
                    stack.pop();
                } else {
                    break;
                }
            }
            if let Some(&top) = stack.last() {
                target[i] = top;
            }
            stack.push(i);
        }

        let mut offsets = Vec::with_capacity(n);
        let mut overflow = Vec::new();
        for (i, &j) in target.iter().enumerate() {
            if j == usize::MAX {
                offsets.push(0);
                continue;
            }
            let off = i.abs_diff(j);
            if off < escape as usize {
                offsets.push(off as u16);
            } else {
                offsets.push(escape);
                overflow.push((I::from_usize(i), I::from_usize(j)));
            }
        }
        SmallerValues { offsets, dir, escape, overflow }
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        match self.offsets[i] {
            0 => None,
            off if off == self.escape => {
                let key = I::from_usize(i);
                let k = self.overflow.binary_search_by(|&(p, _)| p.cmp(&key)).expect("escaped offset has an overflow entry");
                Some(self.overflow[k].1.as_usize())
            }
            off => Some(match self.dir {
                Direction::Next => i + off as usize,
                Direction::Previous => i - off as usize,
            }),
        }
    }

    pub fn overflow_len(&self) -> usize {
        self.overflow.len()
    }

    pub fn heap_bytes(&self) -> usize {
        self.offsets.capacity() * 2 + self.overflow.capacity() * 2 * std::mem::size_of::<I>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_next(v: &[u32], i: usize) -> Option<usize> {
        (i + 1..v.len()).find(|&j| v[j] < v[i])
    }

    fn naive_prev(v: &[u32], i: usize) -> Option<usize> {
        (0..i).rev().find(|&j| v[j] < v[i])
    }

    #[test]
    fn banana_lcp() {
        let lcp = [0u32, 0, 1, 3, 0, 0, 2];
        let next = SmallerValues::build(&lcp, Direction::Next, DEFAULT_ESCAPE);
        let prev = SmallerValues::build(&lcp, Direction::Previous, DEFAULT_ESCAPE);
        assert_eq!(prev.get(3), Some(2));
        assert_eq!(next.get(3), Some(4));
        assert_eq!(prev.get(0), None);
        assert_eq!(next.get(6), None);
    }

    #[test]
    fn every_escape_width_agrees() {
        let v: Vec<u32> = (0..300u32).map(|i| (i * 7919) % 13).collect();
        for escape in [1u16, 2, 3, 17, DEFAULT_ESCAPE] {
            let next = SmallerValues::build(&v, Direction::Next, escape);
            let prev = SmallerValues::build(&v, Direction::Previous, escape);
            if escape <= 2 {
                assert!(next.overflow_len() > 0);
            }
            for i in 0..v.len() {
                assert_eq!(next.get(i), naive_next(&v, i));
                assert_eq!(prev.get(i), naive_prev(&v, i));
            }
        }
    }
}
