//! Online right-to-left construction of Lyndon SLPs.
//!
//! Items (characters or existing symbols) are prepended one at a time. The
//! stack holds the Lyndon factorization of the suffix read so far; a new
//! item absorbs stack entries while they are lexicographically larger.

mod dictionary;
mod naive;
mod order_list;
mod ordered;

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;

pub use dictionary::{Dictionary, SymbolInfo};
pub use naive::compare_symbols_naive;
pub use order_list::{Handle, OrderList};
pub use ordered::{OrderedMarkerIndex, Paren};

use crate::alphabet::ExtChar;
use crate::collection::SequenceCollection;
use crate::error::{Error, Result};
use crate::grammar::SymbolId;
use crate::lyndon::lyndon_array_bytes;

/// Characters cached per stack entry.
pub const PREFIX_CACHE_LEN: usize = 16;

/// Default heavy/light threshold.
pub const DEFAULT_N_THRES: usize = 31;

/// Default memory budget for the Lyndon array strategy (bytes).
pub const DEFAULT_LYNDON_ARRAY_BUDGET: usize = 1 << 30;

/// How the parser decides `val(X_t) > val(X_c)` when the prefix cache ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ComparisonStrategy {
    /// Two-pointer descent on leftmost paths.
    #[default]
    Naive,
    /// Length test against the precomputed Lyndon array of the record.
    /// Symbol items and sentinels fall back to [`ComparisonStrategy::Naive`].
    LyndonArray,
    /// Rank comparison in an [`OrderedMarkerIndex`].
    OrderedMarkers,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub strategy: ComparisonStrategy,
    /// Heavy/light batching threshold; `None` disables batching.
    pub n_thres: Option<usize>,
    pub threads: usize,
    /// Upper bound on Lyndon array plus suffix array bytes per record.
    pub lyndon_array_budget: usize,
    /// Re-check every prefix-cache verdict with a full comparison.
    pub verify_cache: bool,
    /// Record one [`NodeEvent`] per merge.
    pub trace: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            strategy: ComparisonStrategy::Naive,
            n_thres: None,
            threads: 1,
            lyndon_array_budget: DEFAULT_LYNDON_ARRAY_BUDGET,
            verify_cache: false,
            trace: false,
        }
    }
}

impl BuildOptions {
    pub fn with_strategy(strategy: ComparisonStrategy) -> Self {
        BuildOptions {
            strategy,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.n_thres {
            Some(n) if n <= 1 => Err(Error::InvalidThreshold(n)),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub items: u64,
    pub merges: u64,
    pub cache_decisions: u64,
    pub full_comparisons: u64,
    pub heavy_hits: u64,
    pub heavy_misses: u64,
}

impl ParseStats {
    pub fn add(&mut self, o: &ParseStats) {
        self.items += o.items;
        self.merges += o.merges;
        self.cache_decisions += o.cache_decisions;
        self.full_comparisons += o.full_comparisons;
        self.heavy_hits += o.heavy_hits;
        self.heavy_misses += o.heavy_misses;
    }
}

/// One node created by a merge, in creation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeEvent {
    pub len: u64,
    pub heavy: bool,
    pub heavy_descendants: usize,
}

/// An item to prepend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Item {
    Char(ExtChar),
    Symbol(SymbolId),
}

#[derive(Clone, Debug)]
struct Prefix {
    chars: [ExtChar; PREFIX_CACHE_LEN],
    len: u8,
}

impl Prefix {
    fn one(c: ExtChar) -> Self {
        let mut chars = [ExtChar::default(); PREFIX_CACHE_LEN];
        chars[0] = c;
        Prefix { chars, len: 1 }
    }

    fn from_slice(s: &[ExtChar]) -> Self {
        let mut chars = [ExtChar::default(); PREFIX_CACHE_LEN];
        let n = s.len().min(PREFIX_CACHE_LEN);
        chars[..n].copy_from_slice(&s[..n]);
        Prefix { chars, len: n as u8 }
    }

    fn as_slice(&self) -> &[ExtChar] {
        &self.chars[..self.len as usize]
    }

    fn concat(&self, other: &Prefix) -> Prefix {
        let mut out = self.clone();
        let room = PREFIX_CACHE_LEN - out.len as usize;
        let take = room.min(other.len as usize);
        out.chars[out.len as usize..out.len as usize + take].copy_from_slice(&other.chars[..take]);
        out.len += take as u8;
        out
    }
}

/// A node on the parse stack: a named symbol, or a light node known only by
/// its immediate heavy descendants.
#[derive(Clone, Debug)]
struct Entry {
    sym: SymbolId,
    len: u64,
    prefix: Prefix,
    /// Immediate heavy descendants of a light node; empty for heavy nodes.
    light: Vec<SymbolId>,
}

impl Entry {
    fn heavy_parts(&self) -> &[SymbolId] {
        if self.light.is_empty() {
            std::slice::from_ref(&self.sym)
        } else {
            &self.light
        }
    }
}

/// Verdict of the cached prefixes, if they decide the comparison.
fn cache_verdict(t: &Entry, c: &Entry) -> Option<Ordering> {
    let (pt, pc) = (t.prefix.as_slice(), c.prefix.as_slice());
    let common = pt.len().min(pc.len());
    match pt[..common].cmp(&pc[..common]) {
        Ordering::Equal => {}
        ord => return Some(ord),
    }
    let t_full = pt.len() as u64 == t.len;
    let c_full = pc.len() as u64 == c.len;
    match (t_full, c_full) {
        (true, true) => Some(t.len.cmp(&c.len)),
        (true, false) if pt.len() <= pc.len() => Some(Ordering::Less),
        (false, true) if pc.len() <= pt.len() => Some(Ordering::Greater),
        _ => None,
    }
}

/// Single-owner parser state over a shared [`Dictionary`].
pub struct Parser<'d> {
    dict: &'d Dictionary,
    opts: BuildOptions,
    stack: Vec<Entry>,
    ordered: Option<OrderedMarkerIndex>,
    byte_terminals: [SymbolId; 256],
    prefix_buf: Vec<ExtChar>,
    stats: ParseStats,
    trace: Vec<NodeEvent>,
}

impl<'d> Parser<'d> {
    pub fn new(dict: &'d Dictionary, opts: BuildOptions) -> Result<Self> {
        opts.validate()?;
        Ok(Parser {
            dict,
            opts,
            stack: Vec::new(),
            ordered: (opts.strategy == ComparisonStrategy::OrderedMarkers)
                .then(OrderedMarkerIndex::new),
            byte_terminals: [SymbolId::NULL; 256],
            prefix_buf: Vec::with_capacity(PREFIX_CACHE_LEN),
            stats: ParseStats::default(),
            trace: Vec::new(),
        })
    }

    pub fn dictionary(&self) -> &'d Dictionary {
        self.dict
    }

    pub fn stats(&self) -> ParseStats {
        self.stats
    }

    pub fn trace(&self) -> &[NodeEvent] {
        &self.trace
    }

    pub fn ordered_index(&self) -> Option<&OrderedMarkerIndex> {
        self.ordered.as_ref()
    }

    /// Number of entries currently on the stack.
    pub fn depth(&self) -> usize {
        self.stack.len()
    }

    fn terminal(&mut self, c: ExtChar) -> SymbolId {
        if let Some(b) = c.as_byte() {
            let cached = self.byte_terminals[b as usize];
            if !cached.is_null() {
                return cached;
            }
            let id = self.dict.terminal(c);
            self.byte_terminals[b as usize] = id;
            id
        } else {
            self.dict.terminal(c)
        }
    }

    fn entry_for(&mut self, item: Item) -> Entry {
        match item {
            Item::Char(c) => Entry {
                sym: self.terminal(c),
                len: 1,
                prefix: Prefix::one(c),
                light: Vec::new(),
            },
            Item::Symbol(s) => {
                self.dict.prefix(s, PREFIX_CACHE_LEN, &mut self.prefix_buf);
                Entry {
                    sym: s,
                    len: self.dict.sym_len(s),
                    prefix: Prefix::from_slice(&self.prefix_buf),
                    light: Vec::new(),
                }
            }
        }
    }

    /// Prepends one item, restoring the stack invariant.
    pub fn prepend(&mut self, item: Item) -> Result<()> {
        let entry = self.entry_for(item);
        self.push_entry(entry, None)
    }

    fn push_entry(&mut self, mut c: Entry, lambda: Option<u64>) -> Result<()> {
        self.stats.items += 1;
        while let Some(mut t) = self.stack.pop() {
            let t_larger = match lambda {
                Some(l) => c.len < l,
                None => self.compare_entries(&mut t, &mut c)? == Ordering::Greater,
            };
            if !t_larger {
                self.stack.push(t);
                break;
            }
            c = self.merge(c, t)?;
        }
        self.stack.push(c);
        Ok(())
    }

    fn compare_entries(&mut self, t: &mut Entry, c: &mut Entry) -> Result<Ordering> {
        if let Some(v) = cache_verdict(t, c) {
            self.stats.cache_decisions += 1;
            if self.opts.verify_cache {
                let full = self.compare_resolved(t, c)?;
                assert_eq!(v, full, "prefix cache disagrees with full comparison");
            }
            return Ok(v);
        }
        self.stats.full_comparisons += 1;
        self.compare_resolved(t, c)
    }

    fn compare_resolved(&mut self, t: &mut Entry, c: &mut Entry) -> Result<Ordering> {
        let ts = self.resolve(t)?;
        let cs = self.resolve(c)?;
        self.compare_symbols(ts, cs)
    }

    /// Full comparison of two named symbols with the active strategy.
    pub fn compare_symbols(&mut self, t: SymbolId, c: SymbolId) -> Result<Ordering> {
        match self.ordered.as_mut() {
            Some(index) => {
                index.ensure(self.dict, t)?;
                index.ensure(self.dict, c)?;
                index.compare(t, c)
            }
            None => Ok(compare_symbols_naive(self.dict, t, c)),
        }
    }

    /// Names a light entry by reparsing its heavy descendants.
    fn resolve(&mut self, e: &mut Entry) -> Result<SymbolId> {
        if e.sym.is_null() {
            let parts = std::mem::take(&mut e.light);
            e.sym = self.name_sequence(&parts)?;
            e.light = parts;
        }
        Ok(e.sym)
    }

    /// Parses a sequence of symbols that together form one Lyndon tree and
    /// returns the root.
    fn name_sequence(&mut self, parts: &[SymbolId]) -> Result<SymbolId> {
        let mut st: Vec<SymbolId> = Vec::with_capacity(parts.len());
        for &x in parts.iter().rev() {
            let mut c = x;
            while let Some(&t) = st.last() {
                if self.compare_symbols(t, c)? != Ordering::Greater {
                    break;
                }
                st.pop();
                c = self.dict.pair(c, t);
            }
            st.push(c);
        }
        debug_assert_eq!(st.len(), 1, "heavy descendants must form one tree");
        Ok(st[0])
    }

    fn merge(&mut self, c: Entry, t: Entry) -> Result<Entry> {
        self.stats.merges += 1;
        let len = c.len + t.len;
        let prefix = c.prefix.concat(&t.prefix);
        let Some(n_thres) = self.opts.n_thres else {
            let sym = self.dict.pair(c.sym, t.sym);
            if self.opts.trace {
                self.trace.push(NodeEvent {
                    len,
                    heavy: true,
                    heavy_descendants: 2,
                });
            }
            return Ok(Entry {
                sym,
                len,
                prefix,
                light: Vec::new(),
            });
        };

        let mut parts = Vec::with_capacity(c.heavy_parts().len() + t.heavy_parts().len());
        parts.extend_from_slice(c.heavy_parts());
        parts.extend_from_slice(t.heavy_parts());
        let heavy = parts.len() > n_thres;
        debug_assert!(parts.len() <= 2 * n_thres);
        if self.opts.trace {
            self.trace.push(NodeEvent {
                len,
                heavy,
                heavy_descendants: parts.len(),
            });
        }
        if !heavy {
            return Ok(Entry {
                sym: SymbolId::NULL,
                len,
                prefix,
                light: parts,
            });
        }
        let sym = match self.dict.heavy_get(&parts) {
            Some(s) => {
                self.stats.heavy_hits += 1;
                s
            }
            None => {
                self.stats.heavy_misses += 1;
                // both halves may already be named
                let s = if !c.sym.is_null() && !t.sym.is_null() {
                    self.dict.pair(c.sym, t.sym)
                } else {
                    self.name_sequence(&parts)?
                };
                self.dict.heavy_insert(&parts, s);
                s
            }
        };
        Ok(Entry {
            sym,
            len,
            prefix,
            light: Vec::new(),
        })
    }

    /// Parses a byte string right to left.
    ///
    /// With [`ComparisonStrategy::LyndonArray`] and an empty stack, merges
    /// are decided by the Lyndon array of `s` alone.
    pub fn extend_bytes(&mut self, s: &[u8]) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        let use_lambda =
            self.opts.strategy == ComparisonStrategy::LyndonArray && self.stack.is_empty();
        if use_lambda {
            let need = s.len().saturating_mul(16);
            if need > self.opts.lyndon_array_budget {
                return Err(Error::LyndonArrayTooLarge {
                    len: s.len(),
                    budget: self.opts.lyndon_array_budget,
                });
            }
            let lambda = lyndon_array_bytes(s)?;
            for (i, &b) in s.iter().enumerate().rev() {
                let e = self.entry_for(Item::Char(ExtChar::byte(b)));
                self.push_entry(e, Some(lambda[i] as u64))?;
            }
        } else {
            for &b in s.iter().rev() {
                let e = self.entry_for(Item::Char(ExtChar::byte(b)));
                self.push_entry(e, None)?;
            }
        }
        Ok(())
    }

    /// Parses a string of extended characters right to left.
    pub fn extend_chars(&mut self, s: &[ExtChar]) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        if self.opts.strategy == ComparisonStrategy::LyndonArray
            && self.stack.is_empty()
            && s.iter().all(|c| !c.is_sentinel())
        {
            let bytes: Vec<u8> = s.iter().map(|c| c.as_byte().expect("byte")).collect();
            return self.extend_bytes(&bytes);
        }
        for &c in s.iter().rev() {
            self.prepend(Item::Char(c))?;
        }
        Ok(())
    }

    /// Names every stack entry and returns the roots left to right,
    /// leaving the stack empty.
    pub fn finish(&mut self) -> Result<Vec<SymbolId>> {
        let mut entries = std::mem::take(&mut self.stack);
        let mut roots = Vec::with_capacity(entries.len());
        for e in entries.iter_mut().rev() {
            roots.push(self.resolve(e)?);
        }
        Ok(roots)
    }
}

/// Lyndon SLP roots of `s`, without heavy/light batching.
pub fn build_sequence(
    s: &[ExtChar],
    dict: &Dictionary,
    strategy: ComparisonStrategy,
) -> Result<Vec<SymbolId>> {
    let mut p = Parser::new(dict, BuildOptions::with_strategy(strategy))?;
    p.extend_chars(s)?;
    p.finish()
}

/// Lyndon SLP roots of `s` with heavy/light batching at threshold `n_thres`.
pub fn build_with_heavy_light(
    s: &[ExtChar],
    dict: &Dictionary,
    strategy: ComparisonStrategy,
    n_thres: usize,
) -> Result<Vec<SymbolId>> {
    let opts = BuildOptions {
        strategy,
        n_thres: Some(n_thres),
        ..Default::default()
    };
    let mut p = Parser::new(dict, opts)?;
    p.extend_chars(s)?;
    p.finish()
}

/// Runs `job` once per record index on `opts.threads` workers that pull from
/// a shared queue. Each worker owns one [`Parser`]; the stack is empty when
/// `job` starts. Results are returned in record order.
pub fn build_records_parallel<F>(
    count: usize,
    dict: &Dictionary,
    opts: BuildOptions,
    job: F,
) -> Result<(Vec<Vec<SymbolId>>, ParseStats)>
where
    F: Fn(usize, &mut Parser<'_>) -> Result<Vec<SymbolId>> + Sync,
{
    opts.validate()?;
    let threads = opts.threads.max(1).min(count.max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Vec<SymbolId>>>>> =
        Mutex::new((0..count).map(|_| None).collect());
    let totals = Mutex::new(ParseStats::default());
    let worker = || -> Result<()> {
        let mut parser = Parser::new(dict, opts)?;
        loop {
            let k = next.fetch_add(1, AtomicOrdering::Relaxed);
            if k >= count {
                break;
            }
            let r = job(k, &mut parser);
            // a failed job may leave entries behind
            parser.stack.clear();
            results.lock().expect("results lock")[k] = Some(r);
        }
        totals.lock().expect("stats lock").add(&parser.stats);
        Ok(())
    };
    if threads == 1 {
        worker()?;
    } else {
        std::thread::scope(|scope| -> Result<()> {
            let handles: Vec<_> = (0..threads).map(|_| scope.spawn(worker)).collect();
            for h in handles {
                h.join().expect("worker panicked")?;
            }
            Ok(())
        })?;
    }
    let roots = results
        .into_inner()
        .expect("results lock")
        .into_iter()
        .map(|r| r.expect("every record processed"))
        .collect::<Result<Vec<_>>>()?;
    Ok((roots, totals.into_inner().expect("stats lock")))
}

/// Per-record Lyndon SLP roots over one shared dictionary.
pub fn build_collection_parallel(
    coll: &SequenceCollection,
    dict: &Dictionary,
    opts: BuildOptions,
) -> Result<Vec<Vec<SymbolId>>> {
    let records = coll.records();
    let (roots, _) = build_records_parallel(records.len(), dict, opts, |k, p| {
        let data = &records[k].data;
        if data.is_empty() {
            return Err(Error::EmptyRecord(k));
        }
        p.extend_bytes(data)?;
        p.finish()
    })?;
    Ok(roots)
}

#[cfg(test)]
mod tests;
