//! Run-length encoded strings.

use crate::alphabet::ExtChar;

/// Maximal runs of equal characters; counts are positive and adjacent runs
/// carry distinct characters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RleString<C = ExtChar> {
    runs: Vec<(C, u64)>,
}

impl<C: Copy + Eq> RleString<C> {
    pub fn new() -> Self {
        RleString { runs: Vec::new() }
    }

    /// Appends `count` copies of `c`, merging with the last run.
    pub fn push(&mut self, c: C, count: u64) {
        if count == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((last, n)) if *last == c => *n += count,
            _ => self.runs.push((c, count)),
        }
    }

    pub fn runs(&self) -> &[(C, u64)] {
        &self.runs
    }

    pub fn num_runs(&self) -> usize {
        self.runs.len()
    }

    pub fn total_len(&self) -> u64 {
        self.runs.iter().map(|&(_, n)| n).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = C> + '_ {
        self.runs
            .iter()
            .flat_map(|&(c, n)| std::iter::repeat_n(c, n as usize))
    }

    pub fn to_vec(&self) -> Vec<C> {
        self.iter().collect()
    }

    /// Maps every character, re-merging runs that become equal.
    pub fn map<D: Copy + Eq>(&self, mut f: impl FnMut(C) -> D) -> RleString<D> {
        let mut out = RleString::new();
        for &(c, n) in &self.runs {
            out.push(f(c), n);
        }
        out
    }
}

impl<C: Copy + Eq> FromIterator<C> for RleString<C> {
    fn from_iter<I: IntoIterator<Item = C>>(iter: I) -> Self {
        let mut out = RleString::new();
        for c in iter {
            out.push(c, 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn runs_merge() {
        let mut r = RleString::new();
        r.push(b'a', 2);
        r.push(b'a', 1);
        r.push(b'b', 0);
        r.push(b'c', 4);
        assert_eq!(r.runs(), &[(b'a', 3), (b'c', 4)]);
        assert_eq!(r.total_len(), 7);
        let collapsed = r.map(|_| b'x');
        assert_eq!(collapsed.runs(), &[(b'x', 7)]);
    }

    proptest! {
        #[test]
        fn decoding_round_trips(s in prop::collection::vec(0u8..3, 0..64)) {
            let r: RleString<u8> = s.iter().copied().collect();
            prop_assert_eq!(r.to_vec(), s.clone());
            prop_assert!(r.runs().windows(2).all(|w| w[0].0 != w[1].0));
            prop_assert!(r.runs().iter().all(|&(_, n)| n > 0));
        }
    }
}
