//! Integer word types used to store per-block index arrays.
//!
//! Every array in a [`BlockIndex`](crate::BlockIndex) holds positions or
//! lengths bounded by the block length, so the word width only needs to cover
//! `b + 1`. Narrower words halve the index footprint, which is what the block
//! size trades against.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{Bounded, PrimInt, Unsigned};

/// Unsigned integer usable as an index word.
pub trait IndexWord: PrimInt + Unsigned + Bounded + Hash + Debug + Default + Send + Sync + 'static {
    /// Reserved "no value" marker; never a valid position or length.
    const NONE: Self;

    /// Largest block length this word can index (rows `0..=len` plus the marker).
    const MAX_BLOCK: usize;

    fn from_usize(v: usize) -> Self;

    fn as_usize(self) -> usize;

    #[inline]
    fn is_none(self) -> bool {
        self == Self::NONE
    }
}

macro_rules! impl_index_word {
    ($t:ty) => {
        impl IndexWord for $t {
            const NONE: Self = <$t>::MAX;
            const MAX_BLOCK: usize = if (<$t>::MAX as u128) >= usize::MAX as u128 {
                usize::MAX - 2
            } else {
                (<$t>::MAX - 2) as usize
            };

            #[inline]
            fn from_usize(v: usize) -> Self {
                debug_assert!(v <= <$t>::MAX as usize);
                v as $t
            }

            #[inline]
            fn as_usize(self) -> usize {
                self as usize
            }
        }
    };
}

impl_index_word!(u16);
impl_index_word!(u32);
impl_index_word!(u64);
impl_index_word!(usize);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn none_is_max() {
        assert!(u32::NONE.is_none());
        assert_eq!(<u16 as IndexWord>::MAX_BLOCK, 65533);
        assert_eq!(u32::from_usize(7).as_usize(), 7);
    }
}
