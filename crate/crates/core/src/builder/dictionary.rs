//! Naming function shared by all parsers of one grammar.

use std::hash::BuildHasherDefault;

use dashmap::mapref::entry::Entry;
use dashmap::DashMap;
use rustc_hash::FxHasher;

use crate::alphabet::ExtChar;
use crate::grammar::{Grammar, Rule, RuleSource, SymbolId};

type FxBuild = BuildHasherDefault<FxHasher>;

/// Cached per-symbol metadata.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolInfo {
    pub rule: Rule,
    pub len: u64,
    pub first_char: ExtChar,
    pub last_char: ExtChar,
    pub height: u32,
}

/// Concurrent insert-or-get naming of terminals and pairs.
///
/// Ids are handed out by the append-only symbol table, so a pair is always
/// named with an id larger than both of its parts. A key maps to one id no
/// matter how many threads ask for it.
pub struct Dictionary {
    terminals: DashMap<ExtChar, SymbolId, FxBuild>,
    pairs: DashMap<(SymbolId, SymbolId), SymbolId, FxBuild>,
    heavy: DashMap<Box<[SymbolId]>, SymbolId, FxBuild>,
    symbols: boxcar::Vec<SymbolInfo>,
}

impl Default for Dictionary {
    fn default() -> Self {
        Self::new()
    }
}

impl Dictionary {
    pub fn new() -> Self {
        Dictionary {
            terminals: DashMap::with_hasher(FxBuild::default()),
            pairs: DashMap::with_hasher(FxBuild::default()),
            heavy: DashMap::with_hasher(FxBuild::default()),
            symbols: boxcar::Vec::new(),
        }
    }

    /// Number of symbols named so far.
    pub fn len(&self) -> usize {
        self.symbols.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn info(&self, s: SymbolId) -> &SymbolInfo {
        &self.symbols[s.index()]
    }

    pub fn rule(&self, s: SymbolId) -> Rule {
        self.info(s).rule
    }

    pub fn sym_len(&self, s: SymbolId) -> u64 {
        self.info(s).len
    }

    pub fn terminal(&self, c: ExtChar) -> SymbolId {
        if let Some(id) = self.terminals.get(&c) {
            return *id;
        }
        match self.terminals.entry(c) {
            Entry::Occupied(e) => *e.get(),
            Entry::Vacant(e) => {
                let idx = self.symbols.push(SymbolInfo {
                    rule: Rule::Terminal(c),
                    len: 1,
                    first_char: c,
                    last_char: c,
                    height: 0,
                });
                *e.insert(SymbolId::from_index(idx))
            }
        }
    }

    /// Name of the symbol deriving `val(a) val(b)`.
    pub fn pair(&self, a: SymbolId, b: SymbolId) -> SymbolId {
        if let Some(id) = self.pairs.get(&(a, b)) {
            return *id;
        }
        match self.pairs.entry((a, b)) {
            Entry::Occupied(e) => *e.get(),
            Entry::Vacant(e) => {
                let (ia, ib) = (self.info(a), self.info(b));
                let idx = self.symbols.push(SymbolInfo {
                    rule: Rule::Pair(a, b),
                    len: ia.len + ib.len,
                    first_char: ia.first_char,
                    last_char: ib.last_char,
                    height: 1 + ia.height.max(ib.height),
                });
                *e.insert(SymbolId::from_index(idx))
            }
        }
    }

    /// Looks up the pair without creating it.
    pub fn find_pair(&self, a: SymbolId, b: SymbolId) -> Option<SymbolId> {
        self.pairs.get(&(a, b)).map(|r| *r)
    }

    pub fn find_terminal(&self, c: ExtChar) -> Option<SymbolId> {
        self.terminals.get(&c).map(|r| *r)
    }

    pub(crate) fn heavy_get(&self, key: &[SymbolId]) -> Option<SymbolId> {
        self.heavy.get(key).map(|r| *r)
    }

    pub(crate) fn heavy_insert(&self, key: &[SymbolId], s: SymbolId) {
        self.heavy.entry(key.into()).or_insert(s);
    }

    /// Up to `k` leading characters of `val(s)`.
    pub fn prefix(&self, s: SymbolId, k: usize, out: &mut Vec<ExtChar>) {
        out.clear();
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            if out.len() >= k {
                break;
            }
            match self.rule(x) {
                Rule::Terminal(c) => out.push(c),
                Rule::Pair(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
    }

    /// Extracts the grammar reachable from `roots`, renumbered densely.
    /// Relative id order is preserved, so `a, b < i` still holds for every
    /// rule `X_i -> X_a X_b`.
    pub fn extract(&self, roots: &[SymbolId]) -> Grammar {
        let n = self.len();
        let mut reachable = vec![false; n];
        let mut stack: Vec<SymbolId> = roots.to_vec();
        while let Some(x) = stack.pop() {
            if std::mem::replace(&mut reachable[x.index()], true) {
                continue;
            }
            if let Rule::Pair(a, b) = self.rule(x) {
                stack.push(a);
                stack.push(b);
            }
        }
        let mut new_id = vec![SymbolId::NULL; n];
        let mut next = 0usize;
        for (k, _) in reachable.iter().enumerate().filter(|(_, &r)| r) {
            next += 1;
            new_id[k] = SymbolId::from_index(next - 1);
        }
        let map = |s: SymbolId| new_id[s.index()];
        let rules = (0..n)
            .filter(|&k| reachable[k])
            .map(|k| match self.symbols[k].rule {
                Rule::Terminal(c) => Rule::Terminal(c),
                Rule::Pair(a, b) => Rule::Pair(map(a), map(b)),
            })
            .collect();
        let roots = roots.iter().map(|&r| map(r)).collect();
        Grammar::new(rules, roots).expect("dictionary grammars are well formed")
    }
}

impl RuleSource for Dictionary {
    fn rule_of(&self, s: SymbolId) -> Rule {
        self.rule(s)
    }
}
