//! Symbols kept in lexicographic order as a balanced parenthesis sequence of
//! the first-symbol forest.
//!
//! Each indexed symbol owns an opening and a closing marker in an
//! [`OrderList`]. The opening markers appear in lexicographic order of the
//! generated strings, so comparing two indexed symbols is a rank comparison.
//! A new rule `X_i -> X_a X_b` nests directly inside `X_a`'s pair, in front of
//! the smallest sibling `X_j -> X_a X_c` with `val(X_c) > val(X_b)`.

use std::cmp::Ordering;
use std::fmt;

use super::order_list::{Handle, OrderList};
use crate::error::{Error, Result};
use crate::grammar::{Rule, RuleSource, SymbolId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Paren {
    Open,
    Close,
}

#[derive(Clone, Debug, Default)]
struct Slot {
    markers: Option<(Handle, Handle)>,
    /// Second symbol of the rule, for pairs.
    tail: SymbolId,
    /// Children in the first-symbol forest, in lexicographic order.
    children: Vec<SymbolId>,
}

#[derive(Clone, Debug, Default)]
pub struct OrderedMarkerIndex {
    list: OrderList,
    slots: Vec<Slot>,
    /// Terminal symbols (forest roots), in character order.
    roots: Vec<SymbolId>,
    owner: Vec<(SymbolId, Paren)>,
}

impl OrderedMarkerIndex {
    pub fn new() -> Self {
        OrderedMarkerIndex {
            owner: vec![(SymbolId::NULL, Paren::Close)],
            ..Default::default()
        }
    }

    /// Number of indexed symbols.
    pub fn len(&self) -> usize {
        self.roots.len() + self.slots.iter().map(|s| s.children.len()).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_indexed(&self, s: SymbolId) -> bool {
        self.markers(s).is_some()
    }

    fn markers(&self, s: SymbolId) -> Option<(Handle, Handle)> {
        self.slots.get(s.index()).and_then(|slot| slot.markers)
    }

    fn open_rank(&self, s: SymbolId) -> Result<usize> {
        let (open, _) = self.markers(s).ok_or(Error::SymbolNotIndexed(s))?;
        Ok(self.list.rank(open))
    }

    /// Lexicographic order of two indexed symbols.
    pub fn compare(&self, t: SymbolId, c: SymbolId) -> Result<Ordering> {
        if t == c {
            return self.open_rank(t).map(|_| Ordering::Equal);
        }
        Ok(self.open_rank(t)?.cmp(&self.open_rank(c)?))
    }

    fn slot_mut(&mut self, s: SymbolId) -> &mut Slot {
        if self.slots.len() <= s.index() {
            self.slots.resize_with(s.index() + 1, Slot::default);
        }
        &mut self.slots[s.index()]
    }

    fn place(&mut self, s: SymbolId, before: Handle) {
        let open = self.list.insert_before(before);
        let close = self.list.insert_before(before);
        self.owner.push((s, Paren::Open));
        self.owner.push((s, Paren::Close));
        self.slot_mut(s).markers = Some((open, close));
    }

    /// Inserts symbol `s` whose rule is given by `src`.
    ///
    /// Terminals become forest roots in character order. A pair requires
    /// both of its children to be indexed already.
    pub fn insert<R: RuleSource + ?Sized>(&mut self, src: &R, s: SymbolId) -> Result<()> {
        if self.is_indexed(s) {
            return Ok(());
        }
        match src.rule_of(s) {
            Rule::Terminal(ch) => {
                let char_of = |x: SymbolId| match src.rule_of(x) {
                    Rule::Terminal(c) => c,
                    Rule::Pair(..) => unreachable!("forest roots are terminals"),
                };
                let pos = self.roots.partition_point(|&r| char_of(r) < ch);
                let before = match self.roots.get(pos) {
                    Some(&next) => self.markers(next).expect("indexed root").0,
                    None => self.list.end(),
                };
                self.place(s, before);
                self.roots.insert(pos, s);
                Ok(())
            }
            Rule::Pair(a, b) => self.insert_pair(s, a, b),
        }
    }

    /// Inserts `X_i -> X_a X_b` with `X_a` and `X_b` already indexed.
    pub fn insert_pair(&mut self, i: SymbolId, a: SymbolId, b: SymbolId) -> Result<()> {
        if self.is_indexed(i) {
            return Ok(());
        }
        let (_, close_a) = self.markers(a).ok_or(Error::ChildrenNotIndexed(i))?;
        let rank_b = self.open_rank(b).map_err(|_| Error::ChildrenNotIndexed(i))?;
        let siblings = &self.slots[a.index()].children;
        // siblings are sorted, so their second symbols are sorted as well
        let mut lo = 0;
        let mut hi = siblings.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            let c = self.slots[siblings[mid].index()].tail;
            if self.open_rank(c)? > rank_b {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let before = match siblings.get(lo) {
            Some(&j) => self.markers(j).expect("indexed sibling").0,
            None => close_a,
        };
        self.place(i, before);
        self.slots[i.index()].tail = b;
        self.slots[a.index()].children.insert(lo, i);
        Ok(())
    }

    /// Indexes `s` and, first, everything it derives that is missing.
    pub fn ensure<R: RuleSource + ?Sized>(&mut self, src: &R, s: SymbolId) -> Result<()> {
        if self.is_indexed(s) {
            return Ok(());
        }
        let mut stack = vec![(s, false)];
        while let Some((x, ready)) = stack.pop() {
            if self.is_indexed(x) {
                continue;
            }
            match src.rule_of(x) {
                Rule::Pair(a, b) if !ready => {
                    stack.push((x, true));
                    stack.push((b, false));
                    stack.push((a, false));
                }
                Rule::Pair(a, b) => self.insert_pair(x, a, b)?,
                Rule::Terminal(_) => self.insert(src, x)?,
            }
        }
        Ok(())
    }

    /// The marker sequence, left to right.
    pub fn markers_in_order(&self) -> Vec<(SymbolId, Paren)> {
        self.list
            .iter()
            .into_iter()
            .filter(|&h| h != self.list.end())
            .map(|h| self.owner[h.index()])
            .collect()
    }
}

impl fmt::Display for OrderedMarkerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, p) in self.markers_in_order() {
            match p {
                Paren::Open => write!(f, "(_{}", s.0)?,
                Paren::Close => write!(f, ")_{}", s.0)?,
            }
        }
        Ok(())
    }
}
