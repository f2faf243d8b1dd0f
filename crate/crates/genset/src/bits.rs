//! Small integer helpers shared across modules: exact binomials and
//! subset iteration over bitmasks.

use num::{BigRational, BigUint, One};

/// C(n, k) in u128. Panics on overflow; callers stay in desk-scale ranges.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial overflow")
            / (i as u128 + 1);
    }
    acc
}

/// C(n, k) as a BigUint, for the checks whose sides outgrow u128.
pub fn binom_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Mask keeping only the bits strictly above `b` within a 64-bit word.
#[inline]
pub fn above_bit_mask(b: usize) -> u64 {
    if b >= 63 {
        0
    } else {
        !0u64 << (b + 1)
    }
}

/// Exact nonnegative integer power of a rational.
pub fn rational_pow(base: &BigRational, exp: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Falling factorial n·(n−1)⋯(n−k+1) in u128.
pub fn falling(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| {
        acc.checked_mul((n - i) as u128).expect("falling overflow")
    })
}

/// Iterates all subsets of `mask` in increasing numeric order, including 0
/// and `mask` itself.
pub fn subsets_of(mask: u32) -> SubsetIter {
    SubsetIter {
        mask,
        cur: 0,
        done: false,
    }
}

pub struct SubsetIter {
    mask: u32,
    cur: u32,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        let out = self.cur;
        if self.cur == self.mask {
            self.done = true;
        } else {
            // standard subset-stepping trick: next subset of mask above cur
            self.cur = (self.cur.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

/// All k-element index subsets of 0..n, visited in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(10, 0), 1);
        assert_eq!(binom(10, 10), 1);
        assert_eq!(binom(4, 5), 0);
        assert_eq!(binom(52, 5), 2_598_960);
    }

    #[test]
    fn binom_big_matches_u128() {
        for n in 0..40u64 {
            for k in 0..=n {
                assert_eq!(BigUint::from(binom(n, k)), binom_big(n, k));
            }
        }
    }

    #[test]
    fn subset_iter_counts() {
        let mask = 0b10110u32;
        let subs: Vec<u32> = subsets_of(mask).collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], 0);
        assert_eq!(*subs.last().unwrap(), mask);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|s| s & !mask == 0));
    }

    #[test]
    fn combinations_count() {
        let mut count = 0u64;
        for_each_combination(6, 3, |c| {
            assert!(c.windows(2).all(|w| w[0] < w[1]));
            count += 1;
        });
        assert_eq!(count, 20);
        let mut empty_count = 0;
        for_each_combination(3, 0, |_| empty_count += 1);
        assert_eq!(empty_count, 1);
    }

    #[test]
    fn falling_values() {
        assert_eq!(falling(5, 0), 1);
        assert_eq!(falling(5, 2), 20);
        assert_eq!(falling(5, 5), 120);
        assert_eq!(falling(3, 4), 0);
    }
}
