//! Lexicographic subset enumeration and bitmask helpers.

/// Coordinate sets as bitmasks; codes longer than this are out of reach
/// for the exhaustive verifiers anyway.
pub type Mask = u128;
pub const MAX_MASK_BITS: usize = 128;

pub fn mask_of(items: &[usize]) -> Mask {
    items.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn mask_items(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Σ_{s=1..=t} C(n, s).
pub fn patterns_up_to(n: usize, t: usize) -> f64 {
    (1..=t.min(n)).map(|s| binomial(n, s)).sum()
}

/// Steps `idx` (a strictly increasing k-subset of `0..n`) to its
/// lexicographic successor. Returns `false` when `idx` was the last subset.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every k-subset of `0..n` in lexicographic order until `f`
/// returns `false`. Returns whether the enumeration ran to completion.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        if k == 0 || !next_combination(&mut idx, n) {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lex_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn counts_match_binomials() {
        for n in 0..9 {
            for k in 0..=n {
                let mut count = 0;
                for_each_combination(n, k, |_| {
                    count += 1;
                    true
                });
                assert_eq!(count as f64, binomial(n, k));
            }
        }
        assert_eq!(patterns_up_to(16, 7), 26_332.0);
    }

    #[test]
    fn masks_round_trip() {
        let items = vec![0, 5, 64, 127];
        assert_eq!(mask_items(mask_of(&items)), items);
    }
}
