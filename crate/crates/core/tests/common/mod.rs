#![allow(dead_code)]

use lzscan::oracle::{brute_lcp, brute_sa};
use lzscan::{BlockIndex, Factorization, IndexOptions, IndexWord, MsEntry, SaInterval, SENTINEL};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const ALPHABETS: [usize; 4] = [1, 2, 4, 26];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_text(rng: &mut StdRng, len: usize, sigma: usize) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma) as u8).collect()
}

/// Text built from random fresh runs and (possibly mutated) copies of earlier
/// material, so that long phrases show up even in short strings.
pub fn repetitive_text(rng: &mut StdRng, len: usize, sigma: usize) -> Vec<u8> {
    let head = rng.gen_range(1..=8.min(len));
    let mut x = random_text(rng, head, sigma);
    while x.len() < len {
        if rng.gen_bool(0.3) {
            let k = rng.gen_range(1..=6);
            x.extend(random_text(rng, k, sigma));
        } else {
            let src = rng.gen_range(0..x.len());
            let k = rng.gen_range(1..=80);
            for t in 0..k {
                let c = x[src + t];
                x.push(if rng.gen_bool(0.01) { b'a' + rng.gen_range(0..sigma) as u8 } else { c });
            }
        }
    }
    x.truncate(len);
    x
}

/// A fuzz case: uniform or repetitive, length in `1..=max_len`, alphabet from
/// [`ALPHABETS`].
pub fn fuzz_case(rng: &mut StdRng, max_len: usize) -> Vec<u8> {
    let sigma = ALPHABETS[rng.gen_range(0..ALPHABETS.len())];
    let len = rng.gen_range(1..=max_len);
    if rng.gen_bool(0.5) {
        random_text(rng, len, sigma)
    } else {
        repetitive_text(rng, len, sigma)
    }
}

pub fn boundaries(f: &Factorization) -> Vec<(usize, usize)> {
    f.iter_starts().map(|(s, p)| (s, p.len)).collect()
}

/// Rows whose suffix of `text#` starts with `y`.
pub fn brute_interval(text: &[u8], sa: &[usize], y: &[u8]) -> SaInterval {
    let rows: Vec<usize> = (0..sa.len()).filter(|&r| text[sa[r]..].starts_with(y)).collect();
    match (rows.first(), rows.last()) {
        (Some(&a), Some(&b)) => {
            assert_eq!(b - a + 1, rows.len(), "interval of {y:?} not contiguous");
            SaInterval::new(a, b + 1)
        }
        _ => SaInterval::new(0, 0),
    }
}

/// Checks every index structure of `text` against its definition. Returns
/// the number of individual facts checked.
pub fn check_index<I: IndexWord>(text: &[u8], opts: IndexOptions) -> usize {
    let idx = BlockIndex::<I>::build_with(text, opts).unwrap();
    let mut checks = 0;
    let rows = text.len() + 1;
    let us = |v: &[I]| v.iter().map(|x| x.as_usize()).collect::<Vec<_>>();

    let sa = brute_sa(text);
    assert_eq!(us(idx.sa()), sa, "sa of {text:?}");
    let isa = us(idx.isa());
    for (r, &p) in sa.iter().enumerate() {
        assert_eq!(isa[p], r);
    }
    let lcp = brute_lcp(text, &sa);
    assert_eq!(us(idx.lcp()), lcp, "lcp of {text:?}");
    let bwt: Vec<u16> = sa.iter().map(|&p| if p == 0 { SENTINEL } else { text[p - 1] as u16 }).collect();
    assert_eq!(idx.bwt(), &bwt[..], "bwt of {text:?}");
    let r = us(idx.r());
    for i in 0..rows {
        let want = bwt[..=i].iter().filter(|&&c| c == bwt[i]).count();
        assert!(r[i] >= 1);
        assert_eq!(r[i], want, "r[{i}] of {text:?}");
    }
    checks += 5 * rows;

    for i in 0..rows {
        let nsv = (i + 1..rows).find(|&j| lcp[j] < lcp[i]);
        let psv = (0..i).rev().find(|&j| lcp[j] < lcp[i]);
        assert_eq!(idx.nsv(i), nsv, "nsv({i}) of {text:?}");
        assert_eq!(idx.psv(i), psv, "psv({i}) of {text:?}");
        for j in i..rows {
            let want = (i..=j).min_by_key(|&k| (lcp[k], k)).unwrap();
            assert_eq!(idx.rmq_lcp(i, j), want, "rmq({i},{j}) of {text:?}");
        }
        checks += 2 + rows - i;
    }

    let mut symbols: Vec<u8> = text.to_vec();
    symbols.sort_unstable();
    symbols.dedup();
    symbols.push(b'~');
    for &c in &symbols {
        for s in 0..rows {
            let u = (0..s).rev().find(|&u| bwt[u] == c as u16);
            let want = u.map(|u| {
                let rank = bwt[..=u].iter().filter(|&&x| x == c as u16).count();
                (rank, (u + 1..=s).map(|k| lcp[k]).min().unwrap())
            });
            assert_eq!(idx.nearest_occ_before(c, s).map(|o| (o.rank, o.lcp)), want, "before({}, {s}) of {text:?}", c as char);
            let v = (s + 1..rows).find(|&v| bwt[v] == c as u16);
            let want = v.map(|v| (s + 1..=v).map(|k| lcp[k]).min().unwrap());
            assert_eq!(idx.nearest_occ_after(c, s), want, "after({}, {s}) of {text:?}", c as char);
            checks += 2;
        }
    }

    // Backward search from every distinct substring interval (and the empty one).
    let mut patterns: Vec<&[u8]> = vec![&[]];
    for i in 0..text.len() {
        for j in i + 1..=text.len() {
            patterns.push(&text[i..j]);
        }
    }
    patterns.sort_unstable();
    patterns.dedup();
    for y in patterns {
        let iv = brute_interval(text, &sa, y);
        for &c in &symbols {
            let mut cy = vec![c];
            cy.extend_from_slice(y);
            let want = brute_interval(text, &sa, &cy);
            let got = idx.backward_extend(iv, c);
            if want.is_empty() {
                assert!(got.is_empty(), "extend {y:?} by {} in {text:?}", c as char);
            } else {
                assert_eq!(got, want, "extend {y:?} by {} in {text:?}", c as char);
            }
            checks += 1;
        }
    }
    checks
}

/// Each `len > 0` entry must be a real match: `y[i..i+len) == z[pos..pos+len)`.
pub fn certify_ms(y: &[u8], z: &[u8], ms: &[MsEntry]) -> bool {
    ms.iter().enumerate().all(|(i, e)| e.len == 0 || (e.pos + e.len <= z.len() && i + e.len <= y.len() && y[i..i + e.len] == z[e.pos..e.pos + e.len]))
}
