//! Linear-time lexicographic renaming of a Lyndon SLP.

use crate::error::{Error, Result};
use crate::grammar::{Grammar, Rule, SymbolId};

/// A grammar whose id order is the lexicographic order of the generated
/// strings.
#[derive(Clone, Debug)]
pub struct SortedGrammar {
    pub grammar: Grammar,
    /// `perm[k]` is the new id of the symbol with old zero-based index `k`.
    pub perm: Vec<SymbolId>,
    /// `inv_perm[k]` is the old id of the symbol with new zero-based index `k`.
    pub inv_perm: Vec<SymbolId>,
    /// Number of symbols whose first symbol is this one (itself included),
    /// indexed by new id.
    pub prefix_counts: Vec<usize>,
    /// Loop iterations spent sorting.
    pub iterations: usize,
}

/// Symbols by increasing height (counting sort).
fn height_order(g: &Grammar) -> Vec<SymbolId> {
    let max_h = g.symbols().map(|s| g.height(s)).max().unwrap_or(0) as usize;
    let mut start = vec![0usize; max_h + 2];
    for s in g.symbols() {
        start[g.height(s) as usize + 1] += 1;
    }
    for k in 1..start.len() {
        start[k] += start[k - 1];
    }
    let mut order = vec![SymbolId::NULL; g.num_symbols()];
    for s in g.symbols() {
        let slot = &mut start[g.height(s) as usize];
        order[*slot] = s;
        *slot += 1;
    }
    order
}

fn prefix_counts_in(g: &Grammar, by_height: &[SymbolId]) -> Vec<usize> {
    let mut cnt = vec![1usize; g.num_symbols()];
    for &x in by_height.iter().rev() {
        if let Rule::Pair(a, _) = g.rule(x) {
            cnt[a.index()] += cnt[x.index()];
        }
    }
    cnt
}

/// For every symbol, the number of symbols whose leftmost path contains it.
pub fn count_prefix_symbols(g: &Grammar) -> Vec<usize> {
    prefix_counts_in(g, &height_order(g))
}

/// Renames the symbols of `g` in lexicographic order of their expansions.
pub fn sort_grammar(g: &Grammar) -> Result<SortedGrammar> {
    let n = g.num_symbols();
    let by_height = height_order(g);
    let cnt = prefix_counts_in(g, &by_height);
    let mut iterations = 0usize;

    // Symbols grouped by their second child. Within a group a rule must come
    // after any rule of the group that is its first symbol (abc -> a.bc
    // before abcbc -> abc.bc), so groups are filled by increasing height.
    let mut head = vec![0usize; n + 1];
    for r in g.rules() {
        if let Rule::Pair(_, b) = *r {
            head[b.index() + 1] += 1;
        }
    }
    for k in 0..n {
        head[k + 1] += head[k];
    }
    let mut fill = head.clone();
    let mut by_second = vec![SymbolId::NULL; head[n]];
    for &s in &by_height {
        if let Rule::Pair(_, b) = g.rule(s) {
            by_second[fill[b.index()]] = s;
            fill[b.index()] += 1;
        }
    }

    let mut terminals: Vec<_> = g
        .symbols()
        .filter_map(|s| match g.rule(s) {
            Rule::Terminal(c) => Some((c, s)),
            Rule::Pair(..) => None,
        })
        .collect();
    terminals.sort_unstable();
    if terminals.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::MalformedGrammar(
            "two terminals share a character".into(),
        ));
    }

    // order[k] = symbol at rank k, NULL for not yet placed
    let mut order = vec![SymbolId::NULL; n];
    // next_free[x] = one past the rank range still free below x's placed children
    let mut next_free = vec![0usize; n];
    let mut filled = 0usize;
    for &(_, t) in &terminals {
        iterations += 1;
        order[filled] = t;
        filled += cnt[t.index()];
        next_free[t.index()] = filled;
    }
    if filled != n {
        return Err(Error::MalformedGrammar(
            "prefix counts do not cover every symbol".into(),
        ));
    }

    for rank in (0..n).rev() {
        iterations += 1;
        let x = order[rank];
        if x.is_null() {
            return Err(Error::MalformedGrammar(format!("no symbol induced at rank {rank}")));
        }
        for &j in &by_second[head[x.index()]..head[x.index() + 1]] {
            iterations += 1;
            let Rule::Pair(a, _) = g.rule(j) else {
                unreachable!("listed symbols are pairs")
            };
            let upper = next_free[a.index()];
            let pos = upper.checked_sub(cnt[j.index()]).ok_or_else(|| {
                Error::MalformedGrammar(format!("no room below {a} for {j}"))
            })?;
            if !order[pos].is_null() {
                return Err(Error::MalformedGrammar(format!(
                    "{j} and {} claim rank {pos}",
                    order[pos]
                )));
            }
            next_free[j.index()] = upper;
            next_free[a.index()] = pos;
            order[pos] = j;
        }
    }

    let mut perm = vec![SymbolId::NULL; n];
    for (rank, &s) in order.iter().enumerate() {
        perm[s.index()] = SymbolId::from_index(rank);
    }
    let mut prefix_counts = vec![0; n];
    for (k, &c) in cnt.iter().enumerate() {
        prefix_counts[perm[k].index()] = c;
    }
    Ok(SortedGrammar {
        grammar: g.renumber(&perm),
        perm,
        inv_perm: order,
        prefix_counts,
        iterations,
    })
}

/// Rank intervals and parents of the first-symbol forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstSymbolForest {
    /// Inclusive 1-based rank interval per symbol, indexed by zero-based id.
    pub intervals: Vec<(usize, usize)>,
    /// Parent per symbol; `SymbolId::NULL` for terminals.
    pub parents: Vec<SymbolId>,
}

impl FirstSymbolForest {
    pub fn interval(&self, s: SymbolId) -> (usize, usize) {
        self.intervals[s.index()]
    }

    pub fn parent(&self, s: SymbolId) -> Option<SymbolId> {
        let p = self.parents[s.index()];
        (!p.is_null()).then_some(p)
    }

    /// Children of `s` in rank order.
    pub fn children(&self, s: SymbolId) -> Vec<SymbolId> {
        (0..self.parents.len())
            .filter(|&k| self.parents[k] == s)
            .map(SymbolId::from_index)
            .collect()
    }
}

pub fn first_symbol_forest(sg: &SortedGrammar) -> FirstSymbolForest {
    let g = &sg.grammar;
    let intervals = g
        .symbols()
        .map(|s| (s.0 as usize, s.0 as usize + sg.prefix_counts[s.index()] - 1))
        .collect();
    let parents = g
        .symbols()
        .map(|s| match g.rule(s) {
            Rule::Pair(a, _) => a,
            Rule::Terminal(_) => SymbolId::NULL,
        })
        .collect();
    FirstSymbolForest { intervals, parents }
}
