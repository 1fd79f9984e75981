//! Suffix array construction by induced sorting (SA-IS).

const EMPTY: usize = usize::MAX;

/// Suffix array of a byte string (no sentinel). Suffixes that are proper
/// prefixes of others sort first.
pub fn suffix_array(text: &[u8]) -> Vec<usize> {
    let s: Vec<usize> = text.iter().map(|&c| c as usize).collect();
    sa_is(&s, 255)
}

/// SA-IS over integer symbols in `0..=upper`.
fn sa_is(s: &[usize], upper: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }

    // ls[i]: suffix i is S-type
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }

    // sum_l[c]: start of bucket c; sum_s[c]: start of the S part of bucket c
    let mut sum_l = vec![0usize; upper + 2];
    let mut sum_s = vec![0usize; upper + 2];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i]] += 1;
        } else {
            sum_l[s[i] + 1] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        if c < upper {
            sum_l[c + 1] += sum_s[c];
        }
    }

    let induce = |lms: &[usize], sa: &mut [usize]| {
        sa.fill(EMPTY);
        let mut buf = sum_s.clone();
        for &d in lms {
            if d == n {
                continue;
            }
            let slot = buf[s[d]];
            buf[s[d]] += 1;
            sa[slot] = d;
        }
        buf.copy_from_slice(&sum_l);
        let slot = buf[s[n - 1]];
        buf[s[n - 1]] += 1;
        sa[slot] = n - 1;
        for i in 0..n {
            let v = sa[i];
            if v != EMPTY && v >= 1 && !ls[v - 1] {
                let slot = buf[s[v - 1]];
                buf[s[v - 1]] += 1;
                sa[slot] = v - 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != EMPTY && v >= 1 && ls[v - 1] {
                buf[s[v - 1] + 1] -= 1;
                sa[buf[s[v - 1] + 1]] = v - 1;
            }
        }
    };

    let mut lms_map = vec![EMPTY; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len();
            lms.push(i);
        }
    }
    let m = lms.len();

    let mut sa = vec![EMPTY; n];
    induce(&lms, &mut sa);

    if m > 0 {
        let mut sorted_lms: Vec<usize> = sa.iter().copied().filter(|&v| lms_map[v] != EMPTY).collect();
        let mut rec_s = vec![0usize; m];
        let mut rec_upper = 0;
        rec_s[lms_map[sorted_lms[0]]] = 0;
        for i in 1..m {
            let mut l = sorted_lms[i - 1];
            let mut r = sorted_lms[i];
            let end_l = if lms_map[l] + 1 < m { lms[lms_map[l] + 1] } else { n };
            let end_r = if lms_map[r] + 1 < m { lms[lms_map[r] + 1] } else { n };
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l && s[l] == s[r] {
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i]]] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper);
        for (slot, &r) in sorted_lms.iter_mut().zip(&rec_sa) {
            *slot = lms[r];
        }
        induce(&sorted_lms, &mut sa);
    }
    sa
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(s: &[u8]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..s.len()).collect();
        sa.sort_by_key(|&i| &s[i..]);
        sa
    }

    #[test]
    fn known_strings() {
        for s in ["banana", "mississippi", "abracadabra", "aaaaaaa", "a", "", "zzzzzapzap", "ababaababa"] {
            assert_eq!(suffix_array(s.as_bytes()), naive(s.as_bytes()), "{s}");
        }
        assert_eq!(suffix_array(b"banana"), vec![5, 3, 1, 0, 4, 2]);
    }

    proptest! {
        #[test]
        fn matches_naive(s in proptest::collection::vec(0u8..4, 0..200)) {
            prop_assert_eq!(suffix_array(&s), naive(&s));
        }

        #[test]
        fn matches_naive_full_bytes(s in proptest::collection::vec(any::<u8>(), 0..200)) {
            prop_assert_eq!(suffix_array(&s), naive(&s));
        }
    }
}
