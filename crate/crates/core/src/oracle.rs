//! Brute-force reference transforms for testing.
//!
//! Everything here sorts explicit rotations or suffixes and is only meant
//! for small inputs.

use std::collections::HashMap;

use crate::alphabet::{lift, ExtChar};
use crate::collection::SequenceCollection;
use crate::deriver::BwtVariant;
use crate::error::{Error, Result};
use crate::grammar::{Grammar, Rule, SymbolId};
use crate::lyndon::{duval_factorize, omega_compare, standard_factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_len: usize,
    pub max_records: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_len: 4096,
            max_records: 64,
        }
    }
}

impl OracleLimits {
    fn check_len(&self, len: usize) -> Result<()> {
        if len > self.max_len {
            return Err(Error::TooLarge {
                len,
                limit: self.max_len,
            });
        }
        Ok(())
    }

    fn check_records<T: AsRef<[ExtChar]>>(&self, records: &[T]) -> Result<()> {
        if records.len() > self.max_records {
            return Err(Error::TooLarge {
                len: records.len(),
                limit: self.max_records,
            });
        }
        self.check_len(records.iter().map(|r| r.as_ref().len()).sum())
    }
}

/// Last characters of all conjugates of all `words`, in infinite periodic
/// order.
fn sorted_conjugates_last<T: AsRef<[ExtChar]>>(words: &[T]) -> Vec<ExtChar> {
    let mut conj: Vec<Vec<ExtChar>> = Vec::new();
    for w in words {
        let w = w.as_ref();
        for k in 0..w.len() {
            let mut r = w[k..].to_vec();
            r.extend_from_slice(&w[..k]);
            conj.push(r);
        }
    }
    conj.sort_by(|a, b| omega_compare(a, b));
    conj.iter().map(|c| *c.last().expect("non-empty")).collect()
}

/// Bijective BWT by sorting the conjugates of the Lyndon factors.
pub fn oracle_bbwt(s: &[ExtChar], limits: &OracleLimits) -> Result<Vec<ExtChar>> {
    limits.check_len(s.len())?;
    let factors: Vec<&[ExtChar]> = duval_factorize(s)?
        .into_iter()
        .map(|(st, len)| &s[st..st + len])
        .collect();
    Ok(sorted_conjugates_last(&factors))
}

/// Extended BWT of a multiset by sorting all conjugates of all records.
pub fn oracle_ebwt<T: AsRef<[ExtChar]>>(records: &[T], limits: &OracleLimits) -> Result<Vec<ExtChar>> {
    limits.check_records(records)?;
    if let Some(k) = records.iter().position(|r| r.as_ref().is_empty()) {
        return Err(Error::EmptyRecord(k));
    }
    Ok(sorted_conjugates_last(records))
}

/// BWT from a naive suffix sort: `s[SA[i] - 1]`, wrapping around.
pub fn oracle_bwt_sa(s: &[ExtChar], limits: &OracleLimits) -> Result<Vec<ExtChar>> {
    limits.check_len(s.len())?;
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
    Ok(sa.iter().map(|&i| s[(i + n - 1) % n]).collect())
}

/// Lyndon SLP by recursive standard factorization, naming each distinct
/// substring once.
pub fn oracle_lyndon_slp(s: &[ExtChar], limits: &OracleLimits) -> Result<Grammar> {
    limits.check_len(s.len())?;
    let mut names: HashMap<Vec<ExtChar>, SymbolId> = HashMap::new();
    let mut rules: Vec<Rule> = Vec::new();

    fn name(
        w: &[ExtChar],
        names: &mut HashMap<Vec<ExtChar>, SymbolId>,
        rules: &mut Vec<Rule>,
    ) -> Result<SymbolId> {
        if let Some(&id) = names.get(w) {
            return Ok(id);
        }
        let rule = if w.len() == 1 {
            Rule::Terminal(w[0])
        } else {
            let split = standard_factorization(w)?;
            let a = name(&w[..split], names, rules)?;
            let b = name(&w[split..], names, rules)?;
            Rule::Pair(a, b)
        };
        rules.push(rule);
        let id = SymbolId::from_index(rules.len() - 1);
        names.insert(w.to_vec(), id);
        Ok(id)
    }

    let roots = duval_factorize(s)?
        .into_iter()
        .map(|(st, len)| name(&s[st..st + len], &mut names, &mut rules))
        .collect::<Result<Vec<_>>>()?;
    Grammar::new(rules, roots)
}

/// Reference output of `variant` straight from its definition.
pub fn oracle_variant(
    variant: BwtVariant,
    coll: &SequenceCollection,
    limits: &OracleLimits,
) -> Result<Vec<ExtChar>> {
    let recs: Vec<Vec<ExtChar>> = coll.iter().map(lift).collect();
    if recs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let single = || match recs.as_slice() {
        [one] => Ok(one.clone()),
        more => Err(Error::SingleTextRequired {
            variant: variant.name(),
            records: more.len(),
        }),
    };
    match variant {
        BwtVariant::Bbwt => oracle_bbwt(&single()?, limits),
        BwtVariant::DollarBwt => {
            let mut s = single()?;
            s.push(ExtChar::sentinel(0));
            oracle_bwt_sa(&s, limits)
        }
        BwtVariant::Ebwt => oracle_ebwt(&recs, limits),
        BwtVariant::DolEbwt => {
            let dollared: Vec<Vec<ExtChar>> = recs
                .into_iter()
                .map(|mut r| {
                    r.push(ExtChar::sentinel(0));
                    r
                })
                .collect();
            oracle_ebwt(&dollared, limits)
        }
        BwtVariant::MdolBwt => {
            limits.check_records(&recs)?;
            let mut s = Vec::new();
            for (k, r) in recs.iter().enumerate() {
                s.extend_from_slice(r);
                s.push(ExtChar::sentinel(k as u32));
            }
            oracle_bwt_sa(&s, limits)
        }
        BwtVariant::ConcBwt => {
            limits.check_records(&recs)?;
            let mut s = Vec::new();
            for r in &recs {
                s.extend_from_slice(r);
                s.push(ExtChar::sentinel(1));
            }
            s.push(ExtChar::sentinel(0));
            oracle_bwt_sa(&s, limits)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyndon::least_rotation;
    use proptest::prelude::*;

    fn lim() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn bbwt_examples() {
        assert_eq!(oracle_bbwt(&lift(b"abbabcbcabb"), &lim()).unwrap(), lift(b"bcbbbaacabb"));
        assert_eq!(oracle_bbwt(&lift(b"a"), &lim()).unwrap(), lift(b"a"));
        assert_eq!(oracle_bbwt(&lift(b"abab"), &lim()).unwrap(), lift(b"bbaa"));
    }

    #[test]
    fn ebwt_examples() {
        let running = [lift(b"abbabcbc"), lift(b"abb")];
        assert_eq!(oracle_ebwt(&running, &lim()).unwrap(), lift(b"bcbbbaacabb"));
        assert_eq!(oracle_ebwt(&[lift(b"a"), lift(b"a")], &lim()).unwrap(), lift(b"aa"));
        assert_eq!(oracle_ebwt(&[lift(b"abab")], &lim()).unwrap(), lift(b"bbaa"));
    }

    #[test]
    fn sa_bwt_examples() {
        let dollar = |s: &[u8]| {
            let mut v = lift(s);
            v.push(ExtChar::sentinel(0));
            v
        };
        let show = |v: Vec<ExtChar>| v.iter().map(|c| c.to_string()).collect::<String>();
        assert_eq!(show(oracle_bwt_sa(&dollar(b"a"), &lim()).unwrap()), "a$0");
        assert_eq!(show(oracle_bwt_sa(&dollar(b"banana"), &lim()).unwrap()), "annb$0aa");
    }

    #[test]
    fn slp_examples() {
        let g = oracle_lyndon_slp(&lift(b"abbabcbcabb"), &lim()).unwrap();
        assert_eq!(g.num_symbols(), 9);
        assert_eq!(g.roots().len(), 2);
        assert_eq!(g.expand(g.roots()[0], 64).unwrap(), lift(b"abbabcbc"));
        assert_eq!(g.expand(g.roots()[1], 64).unwrap(), lift(b"abb"));
        assert_eq!(oracle_lyndon_slp(&lift(b"ab"), &lim()).unwrap().num_symbols(), 3);
    }

    #[test]
    fn limits_are_enforced() {
        let small = OracleLimits {
            max_len: 3,
            max_records: 1,
        };
        assert_eq!(
            oracle_bbwt(&lift(b"abcd"), &small),
            Err(Error::TooLarge { len: 4, limit: 3 })
        );
        assert!(oracle_ebwt(&[lift(b"a"), lift(b"b")], &small).is_err());
        assert!(oracle_bwt_sa(&lift(b"abcd"), &small).is_err());
        assert!(oracle_lyndon_slp(&lift(b"abcd"), &small).is_err());
    }

    proptest! {
        #[test]
        fn bbwt_is_ebwt_of_factors(s in prop::collection::vec(b'a'..b'd', 1..40)) {
            let s = lift(&s);
            let factors: Vec<Vec<ExtChar>> = duval_factorize(&s)
                .unwrap()
                .into_iter()
                .map(|(st, len)| s[st..st + len].to_vec())
                .collect();
            prop_assert_eq!(oracle_bbwt(&s, &lim()).unwrap(), oracle_ebwt(&factors, &lim()).unwrap());
        }

        #[test]
        fn ebwt_is_bbwt_of_decreasing_canonical_forms(
            records in prop::collection::vec(prop::collection::vec(b'a'..b'd', 1..10), 1..6),
        ) {
            let primitive = |w: &[u8]| (1..w.len()).all(|p| !w.len().is_multiple_of(p) || w[p..] != w[..w.len() - p]);
            prop_assume!(records.iter().all(|r| primitive(r)));
            let mut canon: Vec<Vec<ExtChar>> = records
                .iter()
                .map(|r| {
                    let k = least_rotation(r);
                    lift(&[&r[k..], &r[..k]].concat())
                })
                .collect();
            canon.sort_by(|a, b| b.cmp(a));
            let lifted: Vec<_> = records.iter().map(|r| lift(r)).collect();
            prop_assert_eq!(
                oracle_ebwt(&lifted, &lim()).unwrap(),
                oracle_bbwt(&canon.concat(), &lim()).unwrap()
            );
        }

        #[test]
        fn rotations_of_primitive_strings_agree(s in prop::collection::vec(b'a'..b'd', 1..16)) {
            let n = s.len();
            let primitive = (1..n).all(|p| n % p != 0 || s[p..] != s[..n - p]);
            prop_assume!(primitive);
            let k = least_rotation(&s);
            let canon = lift(&[&s[k..], &s[..k]].concat());
            let expected = oracle_bbwt(&canon, &lim()).unwrap();
            for r in 0..n {
                let rot = lift(&[&s[r..], &s[..r]].concat());
                prop_assert_eq!(oracle_ebwt(&[rot], &lim()).unwrap(), expected.clone());
            }
        }
    }
}
