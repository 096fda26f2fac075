//! Symbol comparison by simultaneous descent of two leftmost paths.

use std::cmp::Ordering;

use crate::grammar::{Rule, RuleSource, SymbolId};

/// Lexicographic order of `val(t)` and `val(c)` without expanding either.
///
/// Requires `a < i` for every rule `X_i -> X_a X_b` (true both for grammars
/// named in creation order and for sorted grammars). Runs in time
/// proportional to the grammar height per level of recursion.
pub fn compare_symbols_naive<R: RuleSource + ?Sized>(
    src: &R,
    mut t: SymbolId,
    mut c: SymbolId,
) -> Ordering {
    'outer: loop {
        if t == c {
            return Ordering::Equal;
        }
        // (l, l_sib) walks t's leftmost path, (r, r_sib) walks c's; the
        // sibling is the right child of the node we descended from.
        let (mut l, mut l_sib) = (t, None);
        let (mut r, mut r_sib) = (c, None);
        loop {
            if l == r {
                // longest common prefix symbol found
                match (l_sib, r_sib) {
                    (Some(x), Some(y)) => {
                        t = x;
                        c = y;
                        continue 'outer;
                    }
                    (None, _) => return Ordering::Less,
                    (_, None) => return Ordering::Greater,
                }
            }
            match (src.rule_of(l), src.rule_of(r)) {
                (Rule::Pair(a, b), Rule::Pair(a2, b2)) => {
                    if a == a2 {
                        t = b;
                        c = b2;
                        continue 'outer;
                    }
                    if a < a2 {
                        r = a2;
                        r_sib = Some(b2);
                    } else {
                        l = a;
                        l_sib = Some(b);
                    }
                }
                (Rule::Pair(a, b), Rule::Terminal(_)) => {
                    l = a;
                    l_sib = Some(b);
                }
                (Rule::Terminal(_), Rule::Pair(a2, b2)) => {
                    r = a2;
                    r_sib = Some(b2);
                }
                (Rule::Terminal(x), Rule::Terminal(y)) => return x.cmp(&y),
            }
        }
    }
}
