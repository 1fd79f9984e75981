//! Two-way exact string matching (Crochemore–Perrin): linear time, constant
//! extra space.

/// Position of the first occurrence of `needle` in `haystack`.
pub fn find(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    let n = needle.len();
    if n == 0 {
        return Some(0);
    }
    if n > haystack.len() {
        return None;
    }
    let (crit_lt, period_lt) = maximal_suffix(needle, false);
    let (crit_gt, period_gt) = maximal_suffix(needle, true);
    let (crit, period) = if crit_lt > crit_gt { (crit_lt, period_lt) } else { (crit_gt, period_gt) };

    if period + crit <= n && needle[..crit] == needle[period..period + crit] {
        // Periodic needle: remember how much of the left half is known to match.
        let mut pos = 0;
        let mut memory = 0;
        while pos + n <= haystack.len() {
            let mut i = crit.max(memory);
            while i < n && needle[i] == haystack[pos + i] {
                i += 1;
            }
            if i < n {
                pos += i - crit + 1;
                memory = 0;
                continue;
            }
            let mut j = crit;
            while j > memory && needle[j - 1] == haystack[pos + j - 1] {
                j -= 1;
            }
            if j <= memory {
                return Some(pos);
            }
            pos += period;
            memory = n - period;
        }
    } else {
        let period = crit.max(n - crit) + 1;
        let mut pos = 0;
        while pos + n <= haystack.len() {
            let mut i = crit;
            while i < n && needle[i] == haystack[pos + i] {
                i += 1;
            }
            if i < n {
                pos += i - crit + 1;
                continue;
            }
            let mut j = crit;
            while j > 0 && needle[j - 1] == haystack[pos + j - 1] {
                j -= 1;
            }
            if j == 0 {
                return Some(pos);
            }
            pos += period;
        }
    }
    None
}

/// Start and period of the lexicographically maximal suffix under `<`
/// (or `>` when `reversed`).
fn maximal_suffix(arr: &[u8], reversed: bool) -> (usize, usize) {
    let mut left = 0;
    let mut right = 1;
    let mut offset = 0;
    let mut period = 1;
    while let Some(&a) = arr.get(right + offset) {
        let b = arr[left + offset];
        if (a < b && !reversed) || (a > b && reversed) {
            right += offset + 1;
            offset = 0;
            period = right - left;
        } else if a == b {
            if offset + 1 == period {
                right += offset + 1;
                offset = 0;
            } else {
                offset += 1;
            }
        } else {
            left = right;
            right += 1;
            offset = 0;
            period = 1;
        }
    }
    (left, period)
}
