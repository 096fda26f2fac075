//! Straight-line programs whose rules realize standard factorizations.

use std::fmt;

use crate::alphabet::ExtChar;
use crate::error::{Error, Result};

/// Default cap on the number of characters [`Grammar::expand`] produces.
pub const DEFAULT_EXPANSION_CAP: u64 = 1 << 20;

/// Grammar symbol. Ids are dense from 1; 0 is reserved as null.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub const NULL: SymbolId = SymbolId(0);

    /// Builds the id of the symbol stored at zero-based `index`.
    pub fn from_index(index: usize) -> Self {
        SymbolId(u32::try_from(index + 1).expect("symbol id overflow"))
    }

    pub fn index(self) -> usize {
        debug_assert!(self.0 != 0, "null symbol has no index");
        self.0 as usize - 1
    }

    pub fn is_null(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Terminal(ExtChar),
    Pair(SymbolId, SymbolId),
}

impl Rule {
    pub fn children(self) -> Option<(SymbolId, SymbolId)> {
        match self {
            Rule::Terminal(_) => None,
            Rule::Pair(a, b) => Some((a, b)),
        }
    }
}

/// Anything that can report the rule of a symbol.
pub trait RuleSource {
    fn rule_of(&self, s: SymbolId) -> Rule;
}

impl RuleSource for Grammar {
    fn rule_of(&self, s: SymbolId) -> Rule {
        self.rule(s)
    }
}

/// A Lyndon SLP with dense symbol ids and cached per-symbol metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    rules: Vec<Rule>,
    roots: Vec<SymbolId>,
    len: Vec<u64>,
    last_char: Vec<ExtChar>,
    height: Vec<u32>,
}

impl Grammar {
    /// Validates ids and acyclicity and computes the cached metadata.
    /// Symbol `k` (1-based) has rule `rules[k - 1]`.
    pub fn new(rules: Vec<Rule>, roots: Vec<SymbolId>) -> Result<Self> {
        let g = rules.len();
        let valid = |s: SymbolId| !s.is_null() && s.index() < g;
        for (k, r) in rules.iter().enumerate() {
            if let Rule::Pair(a, b) = *r {
                if !valid(a) || !valid(b) {
                    return Err(Error::MalformedGrammar(format!(
                        "rule of X{} references an unknown symbol",
                        k + 1
                    )));
                }
            }
        }
        if let Some(r) = roots.iter().find(|&&r| !valid(r)) {
            return Err(Error::MalformedGrammar(format!("unknown root {r}")));
        }

        let mut len = vec![0u64; g];
        let mut last_char = vec![ExtChar::default(); g];
        let mut height = vec![0u32; g];
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; g];
        let mut stack = Vec::new();
        for start in 0..g {
            if state[start] != 0 {
                continue;
            }
            stack.push(start);
            while let Some(&x) = stack.last() {
                match rules[x] {
                    Rule::Terminal(c) => {
                        len[x] = 1;
                        last_char[x] = c;
                        state[x] = 2;
                        stack.pop();
                    }
                    Rule::Pair(a, b) => {
                        let (a, b) = (a.index(), b.index());
                        if state[x] == 0 {
                            state[x] = 1;
                            for child in [b, a] {
                                match state[child] {
                                    0 => stack.push(child),
                                    1 => {
                                        return Err(Error::MalformedGrammar(format!(
                                            "cycle through X{}",
                                            child + 1
                                        )))
                                    }
                                    _ => {}
                                }
                            }
                        } else {
                            stack.pop();
                            if state[x] == 2 {
                                continue;
                            }
                            len[x] = len[a] + len[b];
                            last_char[x] = last_char[b];
                            height[x] = 1 + height[a].max(height[b]);
                            state[x] = 2;
                        }
                    }
                }
            }
        }
        Ok(Grammar {
            rules,
            roots,
            len,
            last_char,
            height,
        })
    }

    /// Number of symbols.
    pub fn num_symbols(&self) -> usize {
        self.rules.len()
    }

    /// Number of production rules plus the number of start symbols.
    pub fn size(&self) -> usize {
        self.rules.len() + self.roots.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, s: SymbolId) -> Rule {
        self.rules[s.index()]
    }

    pub fn roots(&self) -> &[SymbolId] {
        &self.roots
    }

    pub fn len(&self, s: SymbolId) -> u64 {
        self.len[s.index()]
    }

    pub fn last_char(&self, s: SymbolId) -> ExtChar {
        self.last_char[s.index()]
    }

    pub fn height(&self, s: SymbolId) -> u32 {
        self.height[s.index()]
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolId> {
        (0..self.rules.len()).map(SymbolId::from_index)
    }

    /// Total length of the generated string.
    pub fn text_len(&self) -> u64 {
        self.roots.iter().map(|&r| self.len(r)).sum()
    }

    /// The string generated by `s`, refusing anything longer than `cap`.
    pub fn expand(&self, s: SymbolId, cap: u64) -> Result<Vec<ExtChar>> {
        let len = self.len(s);
        if len > cap {
            return Err(Error::ExpansionTooLarge { len, cap });
        }
        let mut out = Vec::with_capacity(len as usize);
        self.expand_into(s, &mut out);
        Ok(out)
    }

    /// Concatenated expansion of all roots.
    pub fn expand_roots(&self, cap: u64) -> Result<Vec<ExtChar>> {
        let len = self.text_len();
        if len > cap {
            return Err(Error::ExpansionTooLarge { len, cap });
        }
        let mut out = Vec::with_capacity(len as usize);
        for &r in &self.roots {
            self.expand_into(r, &mut out);
        }
        Ok(out)
    }

    fn expand_into(&self, s: SymbolId, out: &mut Vec<ExtChar>) {
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            match self.rule(x) {
                Rule::Terminal(c) => out.push(c),
                Rule::Pair(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
    }

    /// Renames symbols: the symbol at zero-based index `k` becomes `new_id[k]`.
    /// `new_id` must be a permutation of `1..=g`.
    pub fn renumber(&self, new_id: &[SymbolId]) -> Grammar {
        let g = self.rules.len();
        assert_eq!(new_id.len(), g);
        let map = |s: SymbolId| new_id[s.index()];
        let mut rules = vec![Rule::Terminal(ExtChar::default()); g];
        let mut len = vec![0; g];
        let mut last_char = vec![ExtChar::default(); g];
        let mut height = vec![0; g];
        for (k, id) in new_id.iter().enumerate() {
            let t = id.index();
            rules[t] = match self.rules[k] {
                Rule::Terminal(c) => Rule::Terminal(c),
                Rule::Pair(a, b) => Rule::Pair(map(a), map(b)),
            };
            len[t] = self.len[k];
            last_char[t] = self.last_char[k];
            height[t] = self.height[k];
        }
        Grammar {
            rules,
            roots: self.roots.iter().map(|&r| map(r)).collect(),
            len,
            last_char,
            height,
        }
    }

    /// Renumbers symbols in post-order of a left-to-right traversal from the
    /// roots and drops unreachable symbols. Isomorphic grammars have equal
    /// canonical forms.
    pub fn canonical(&self) -> Grammar {
        let g = self.rules.len();
        let mut new_index = vec![usize::MAX; g];
        let mut order = Vec::new();
        let mut stack: Vec<(usize, bool)> = Vec::new();
        for &r in &self.roots {
            stack.push((r.index(), false));
            while let Some((x, expanded)) = stack.pop() {
                if new_index[x] != usize::MAX {
                    continue;
                }
                match self.rules[x] {
                    Rule::Pair(a, b) if !expanded => {
                        stack.push((x, true));
                        stack.push((b.index(), false));
                        stack.push((a.index(), false));
                    }
                    _ => {
                        new_index[x] = order.len();
                        order.push(x);
                    }
                }
            }
        }
        let map = |s: SymbolId| SymbolId::from_index(new_index[s.index()]);
        let rules = order
            .iter()
            .map(|&x| match self.rules[x] {
                Rule::Terminal(c) => Rule::Terminal(c),
                Rule::Pair(a, b) => Rule::Pair(map(a), map(b)),
            })
            .collect();
        Grammar {
            rules,
            roots: self.roots.iter().map(|&r| map(r)).collect(),
            len: order.iter().map(|&x| self.len[x]).collect(),
            last_char: order.iter().map(|&x| self.last_char[x]).collect(),
            height: order.iter().map(|&x| self.height[x]).collect(),
        }
    }
}
