//! Lyndon-word primitives over any totally ordered alphabet.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A factor of a string given as `(start, len)`.
pub type Factor = (usize, usize);

/// Lyndon factorization by Duval's algorithm.
pub fn duval_factorize<T: Ord>(s: &[T]) -> Result<Vec<Factor>> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = s.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let period = j - k;
        while i <= k {
            factors.push((i, period));
            i += period;
        }
    }
    Ok(factors)
}

/// Returns whether `s` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon<T: Ord>(s: &[T]) -> bool {
    match duval_factorize(s) {
        Ok(f) => f.len() == 1,
        Err(_) => false,
    }
}

/// Splits a Lyndon word `w` into `(u, v)` where `v` is its longest proper
/// Lyndon suffix. Returns the length of `u`.
pub fn standard_factorization<T: Ord>(w: &[T]) -> Result<usize> {
    if w.len() < 2 || !is_lyndon(w) {
        return Err(Error::NotFactorizable);
    }
    // The longest proper Lyndon suffix is the smallest proper suffix, which
    // is the last Lyndon factor of w[1..].
    let tail = duval_factorize(&w[1..])?;
    let &(start, _) = tail.last().expect("non-empty factorization");
    Ok(start + 1)
}

/// Index of the lexicographically least rotation; ties go to the smallest index.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        match a.cmp(b) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i == j {
                    i += 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if i == j {
                    j += 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Compares `u^∞` with `v^∞`.
///
/// Two infinite periodic strings with periods `|u|` and `|v|` that agree on
/// `|u| + |v|` characters are equal, so that prefix decides.
pub fn omega_compare<T: Ord>(u: &[T], v: &[T]) -> Ordering {
    assert!(!u.is_empty() && !v.is_empty(), "omega_compare on empty string");
    let bound = u.len() + v.len();
    for k in 0..bound {
        match u[k % u.len()].cmp(&v[k % v.len()]) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Suffix array by prefix doubling. Suitable for small and medium inputs
/// over arbitrary ordered alphabets.
pub fn suffix_array<T: Ord>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n == 0 {
        return sa;
    }
    sa.sort_by(|&a, &b| s[a].cmp(&s[b]));
    let mut rank = vec![0usize; n];
    for w in 1..n {
        rank[sa[w]] = rank[sa[w - 1]] + usize::from(s[sa[w]] != s[sa[w - 1]]);
    }
    let mut k = 1;
    let mut tmp = vec![0usize; n];
    while k < n && rank[sa[n - 1]] + 1 < n {
        // rank + 1 so that "past the end" (0) sorts first
        let key = |i: usize| (rank[i] + 1, if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w]) != key(sa[w - 1]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        k <<= 1;
    }
    sa
}

/// Suffix array of a byte string.
pub fn suffix_array_bytes(s: &[u8]) -> Vec<u32> {
    let (_, sa) = cdivsufsort::sort(s).into_parts();
    sa.into_iter().map(|x| x as u32).collect()
}

/// Next-smaller-value scan over suffix ranks; `n` marks "no smaller suffix".
fn nss_from_sa<I: Copy + Into<usize>>(sa: &[I]) -> Vec<usize> {
    let n = sa.len();
    let mut rank = vec![0usize; n];
    for (r, &p) in sa.iter().enumerate() {
        rank[p.into()] = r;
    }
    let mut nss = vec![n; n];
    let mut stack: Vec<usize> = Vec::new();
    for i in (0..n).rev() {
        while let Some(&j) = stack.last() {
            if rank[j] > rank[i] {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&j) = stack.last() {
            nss[i] = j;
        }
        stack.push(i);
    }
    nss
}

/// Next smaller suffix array; `nss[i] = |s|` when no later suffix is smaller.
pub fn nss_array<T: Ord>(s: &[T]) -> Vec<usize> {
    nss_from_sa(&suffix_array(s))
}

/// Lyndon array: `λ[i]` is the length of the longest Lyndon prefix of suffix `i`.
pub fn lyndon_array<T: Ord>(s: &[T]) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let nss = nss_array(s);
    Ok(nss.iter().enumerate().map(|(i, &j)| j - i).collect())
}

/// Lyndon array of a byte string, with 32-bit entries.
pub fn lyndon_array_bytes(s: &[u8]) -> Result<Vec<u32>> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sa: Vec<u32> = suffix_array_bytes(s);
    let sa: Vec<usize> = sa.into_iter().map(|x| x as usize).collect();
    let nss = nss_from_sa(&sa);
    Ok(nss.iter().enumerate().map(|(i, &j)| (j - i) as u32).collect())
}
