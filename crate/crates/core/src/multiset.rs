//! Shared enumeration of sorted multisets, the point sets of
//! symmetric powers.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::power::binomial;

/// Number of size-n multisets over `size` points: C(size+n-1, n).
pub(crate) fn multiset_count(size: usize, n: usize) -> BigInt {
    binomial((size + n).saturating_sub(1) as u64, n as u64)
}

/// All nondecreasing length-n sequences over 0..size, in
/// lexicographic order.
pub(crate) fn sorted_multisets(size: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = alloc::vec![0usize; n];
    loop {
        out.push(current.clone());
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            if current[k - 1] + 1 < size {
                current[k - 1] += 1;
                for j in k..n {
                    current[j] = current[k - 1];
                }
                break;
            }
            k -= 1;
        }
        if k == 0 {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        for size in 0..5usize {
            for n in 0..5usize {
                let listed = sorted_multisets(size, n).len();
                assert_eq!(
                    BigInt::from(listed as u64),
                    multiset_count(size, n),
                    "size {size}, n {n}"
                );
            }
        }
    }

    #[test]
    fn empty_multiset_cases() {
        assert_eq!(sorted_multisets(3, 0), alloc::vec![Vec::<usize>::new()]);
        assert!(sorted_multisets(0, 2).is_empty());
    }
}
