//! One bit per text position marking where LZ77 phrases start.

#[derive(Clone, Debug, Default)]
pub struct PhraseMarks {
    words: Vec<u64>,
    len: usize,
}

impl PhraseMarks {
    pub fn new(len: usize) -> Self {
        PhraseMarks { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Largest marked position `<= i`.
    pub fn prev_set(&self, i: usize) -> Option<usize> {
        let mut w = i / 64;
        let mut bits = self.words[w] & (u64::MAX >> (63 - i % 64));
        loop {
            if bits != 0 {
                return Some(w * 64 + 63 - bits.leading_zeros() as usize);
            }
            if w == 0 {
                return None;
            }
            w -= 1;
            bits = self.words[w];
        }
    }

    /// Smallest marked position `>= i`.
    pub fn next_set(&self, i: usize) -> Option<usize> {
        if i >= self.len {
            return None;
        }
        let mut w = i / 64;
        let mut bits = self.words[w] & (u64::MAX << (i % 64));
        loop {
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            bits = self.words[w];
        }
    }

    pub fn heap_bytes(&self) -> usize {
        self.words.capacity() * 8
    }
}
