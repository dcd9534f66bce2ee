//! Fixed-size subset enumeration in lexicographic order.

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        let Some(next) = acc.checked_mul((n - i) as u128) else {
            return u128::MAX;
        };
        acc = next / (i + 1) as u128;
    }
    acc
}

/// Advances `cur` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order. Returns false after the last one.
pub fn next_combination(cur: &mut [usize], n: usize) -> bool {
    let k = cur.len();
    let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
        return false;
    };
    cur[i] += 1;
    for j in i + 1..k {
        cur[j] = cur[j - 1] + 1;
    }
    true
}
