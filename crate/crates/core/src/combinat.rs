//! Small combinatorial helpers: counts, lexicographic enumeration and ranking
//! of subsets and injections, permutation signs.
//!
//! Subsets and injections use 1-based labels throughout.

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `n!/(n-d)!`, the number of injections `[d] ↪ [n]`.
pub fn falling_factorial(n: usize, d: usize) -> usize {
    if d > n {
        return 0;
    }
    ((n - d + 1)..=n).product()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All `k`-subsets of `[n]` as increasing lists, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lexicographic rank of an increasing subset of `[n]` among subsets of the same size.
pub fn subset_rank(subset: &[usize], n: usize) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &s) in subset.iter().enumerate() {
        for v in prev + 1..s {
            rank += binomial(n - v, k - i - 1);
        }
        prev = s;
    }
    rank
}

/// The complement of an increasing subset in `[n]`, increasing.
pub fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n - subset.len());
    let mut it = subset.iter().peekable();
    for v in 1..=n {
        if it.peek() == Some(&&v) {
            it.next();
        } else {
            out.push(v);
        }
    }
    out
}

/// All image tuples of injections `[d] ↪ [n]` in lexicographic order.
pub fn injection_images(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(falling_factorial(n, d));
    if d > n {
        return out;
    }
    let mut cur = Vec::with_capacity(d);
    let mut used = vec![false; n + 1];
    fn rec(d: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(d, n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(d, n, &mut cur, &mut used, &mut out);
    out
}

/// Lexicographic rank of an injection image tuple among injections `[d] ↪ [n]`.
pub fn injection_rank(images: &[usize], n: usize) -> usize {
    let d = images.len();
    let mut rank = 0;
    for (pos, &v) in images.iter().enumerate() {
        let smaller_unused = (1..v).filter(|u| !images[..pos].contains(u)).count();
        rank += smaller_unused * falling_factorial(n - pos - 1, d - pos - 1);
    }
    rank
}

/// Inverse of [`injection_rank`]: the image tuple at position `rank`.
pub fn injection_unrank(mut rank: usize, d: usize, n: usize) -> Vec<usize> {
    let mut images = Vec::with_capacity(d);
    for pos in 0..d {
        let block = falling_factorial(n - pos - 1, d - pos - 1);
        let mut skip = rank / block;
        rank %= block;
        let v = (1..=n)
            .filter(|u| !images.contains(u))
            .find(|_| {
                if skip == 0 {
                    true
                } else {
                    skip -= 1;
                    false
                }
            })
            .expect("rank in range");
        images.push(v);
    }
    images
}

/// Sign of the permutation that sorts `seq` (entries assumed distinct).
pub fn sort_sign<T: Ord>(seq: &[T]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of `[k]` as image tuples, lexicographic.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    injection_images(k, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(falling_factorial(4, 2), 12);
        assert_eq!(falling_factorial(3, 4), 0);
        assert_eq!(falling_factorial(5, 0), 1);
    }

    #[test]
    fn subset_ranks_are_positions() {
        for n in 0..7 {
            for k in 0..=n {
                let all = subsets(n, k);
                assert_eq!(all.len(), binomial(n, k));
                for (i, s) in all.iter().enumerate() {
                    assert_eq!(subset_rank(s, n), i);
                }
            }
        }
    }

    #[test]
    fn injection_ranks_are_positions() {
        for n in 0..6 {
            for d in 0..=n {
                let all = injection_images(d, n);
                assert_eq!(all.len(), falling_factorial(n, d));
                for (i, s) in all.iter().enumerate() {
                    assert_eq!(injection_rank(s, n), i);
                    assert_eq!(&injection_unrank(i, d, n), s);
                }
            }
        }
    }

    #[test]
    fn signs() {
        assert_eq!(sort_sign(&[1, 2, 3]), 1);
        assert_eq!(sort_sign(&[2, 1, 3]), -1);
        assert_eq!(sort_sign(&[3, 1, 2]), 1);
        assert_eq!(complement(&[2, 4], 5), vec![1, 3, 5]);
    }
}
