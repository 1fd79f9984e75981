//! Brute-force reference implementations. Quadratic or worse; meant for
//! inputs of a few hundred bytes.

use crate::lpf_parse::{Factorization, Phrase};
use crate::matching_stats::MsEntry;

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Matching statistics of `y` with respect to `z`; the witness is the
/// leftmost position of a longest match.
pub fn brute_ms(y: &[u8], z: &[u8]) -> Vec<MsEntry> {
    (0..y.len())
        .map(|i| {
            let mut best = MsEntry::EMPTY;
            for p in 0..z.len() {
                let l = common_prefix(&y[i..], &z[p..]);
                if l > best.len {
                    best = MsEntry::new(p, l);
                }
            }
            best
        })
        .collect()
}

/// Longest previous factor of every position; sources may overlap the
/// position itself.
pub fn brute_lpf(x: &[u8]) -> Vec<MsEntry> {
    (0..x.len())
        .map(|i| {
            let mut best = MsEntry::EMPTY;
            for p in 0..i {
                let l = common_prefix(&x[i..], &x[p..]);
                if l > best.len {
                    best = MsEntry::new(p, l);
                }
            }
            best
        })
        .collect()
}

/// Greedy left-to-right LZ77 parse over [`brute_lpf`].
///
/// # Panics
///
/// On empty input.
pub fn brute_lz(x: &[u8]) -> Factorization {
    let lpf = brute_lpf(x);
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < x.len() {
        let e = lpf[i];
        if e.len == 0 {
            phrases.push(Phrase::literal(x[i]));
            i += 1;
        } else {
            phrases.push(Phrase::copy(e.pos, e.len));
            i += e.len;
        }
    }
    Factorization::new(phrases, x.len()).expect("greedy parse covers the input")
}

/// Suffix array of `text#` with `#` smaller than every byte.
pub fn brute_sa(text: &[u8]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..=text.len()).collect();
    sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    sa
}

/// LCP array matching [`brute_sa`].
pub fn brute_lcp(text: &[u8], sa: &[usize]) -> Vec<usize> {
    let mut lcp = vec![0; sa.len()];
    for r in 1..sa.len() {
        lcp[r] = common_prefix(&text[sa[r - 1]..], &text[sa[r]..]);
    }
    lcp
}

/// Checks that a phrase list is a valid parse of `x`: every copy's source
/// starts earlier and matches.
pub fn certify(x: &[u8], f: &Factorization) -> Result<(), String> {
    for (start, ph) in f.iter_starts() {
        if ph.is_literal() {
            if x.get(start).map(|&c| c as usize) != Some(ph.pos) {
                return Err(format!("literal at {start} does not match the text"));
            }
        } else if ph.pos >= start || start + ph.len > x.len() || x[ph.pos..ph.pos + ph.len] != x[start..start + ph.len] {
            return Err(format!("phrase at {start} ({}, {}) is not a valid earlier match", ph.pos, ph.len));
        }
    }
    Ok(())
}
