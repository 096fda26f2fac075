//! BWT variants from a sorted Lyndon grammar.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::alphabet::ExtChar;
use crate::builder::{build_records_parallel, BuildOptions, Dictionary, Item, ParseStats, Parser};
use crate::collection::SequenceCollection;
use crate::error::{Error, Result};
use crate::grammar::{Rule, SymbolId};
use crate::lyndon::least_rotation;
use crate::rle::RleString;
use crate::sorter::{sort_grammar, SortedGrammar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BwtVariant {
    Bbwt,
    DollarBwt,
    Ebwt,
    DolEbwt,
    MdolBwt,
    ConcBwt,
}

impl BwtVariant {
    pub const ALL: [BwtVariant; 6] = [
        BwtVariant::Bbwt,
        BwtVariant::DollarBwt,
        BwtVariant::Ebwt,
        BwtVariant::DolEbwt,
        BwtVariant::MdolBwt,
        BwtVariant::ConcBwt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BwtVariant::Bbwt => "bbwt",
            BwtVariant::DollarBwt => "dollar-bwt",
            BwtVariant::Ebwt => "ebwt",
            BwtVariant::DolEbwt => "dol-ebwt",
            BwtVariant::MdolBwt => "mdol-bwt",
            BwtVariant::ConcBwt => "conc-bwt",
        }
    }

    /// Whether the variant works on exactly one text.
    pub fn is_single_text(self) -> bool {
        matches!(self, BwtVariant::Bbwt | BwtVariant::DollarBwt)
    }

    /// Whether the output contains separator characters.
    pub fn uses_sentinels(self) -> bool {
        !matches!(self, BwtVariant::Bbwt | BwtVariant::Ebwt)
    }

    /// Number of separators added for `records` input records.
    pub fn sentinel_count(self, records: usize) -> usize {
        match self {
            BwtVariant::Bbwt | BwtVariant::Ebwt => 0,
            BwtVariant::DollarBwt => 1,
            BwtVariant::DolEbwt | BwtVariant::MdolBwt => records,
            BwtVariant::ConcBwt => records + 1,
        }
    }
}

impl fmt::Display for BwtVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BwtVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        BwtVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DeriveStats {
    /// (symbol, count) records drained from the slot table.
    pub records: u64,
    pub slots: usize,
}

/// Checks `a < i < b` for every rule `X_i -> X_a X_b`.
pub fn check_sorted(sg: &SortedGrammar) -> Result<()> {
    let g = &sg.grammar;
    for s in g.symbols() {
        if let Rule::Pair(a, b) = g.rule(s) {
            if !(a < s && s < b) {
                return Err(Error::UnsortedGrammar(s));
            }
        }
    }
    Ok(())
}

/// BBWT of the string generated by the roots of `sg`.
pub fn derive_bbwt(sg: &SortedGrammar) -> Result<RleString> {
    derive_bbwt_with_stats(sg).map(|(out, _)| out)
}

pub fn derive_bbwt_with_stats(sg: &SortedGrammar) -> Result<(RleString, DeriveStats)> {
    check_sorted(sg)?;
    let g = &sg.grammar;
    if g.roots().is_empty() {
        return Err(Error::EmptyInput);
    }
    let n_slots = 2 * g.num_symbols();
    let mut slots: Vec<Vec<(SymbolId, u64)>> = vec![Vec::new(); n_slots];
    let append = |list: &mut Vec<(SymbolId, u64)>, s: SymbolId, count: u64| match list.last_mut() {
        Some((last, n)) if *last == s => *n += count,
        _ => list.push((s, count)),
    };
    for &r in g.roots() {
        append(&mut slots[2 * r.index() + 1], r, 1);
    }
    let mut out = RleString::new();
    let mut stats = DeriveStats {
        records: 0,
        slots: n_slots,
    };
    for i in 0..n_slots {
        // the list may grow while it is drained: X -> A B with A -> A' B
        // sends A' back to the slot of B
        let mut k = 0;
        while k < slots[i].len() {
            let (s0, count) = slots[i][k];
            k += 1;
            stats.records += 1;
            out.push(g.last_char(s0), count);
            let mut s = s0;
            while let Rule::Pair(a, b) = g.rule(s) {
                let target = 2 * b.index();
                if target < i {
                    return Err(Error::UnsortedGrammar(s));
                }
                append(&mut slots[target], a, count);
                s = b;
            }
        }
        slots[i] = Vec::new();
    }
    Ok((out, stats))
}

/// Wall time per pipeline stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub build: Duration,
    pub prune: Duration,
    pub sort: Duration,
    pub derive: Duration,
}

/// Output of a full pipeline run.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub variant: BwtVariant,
    pub bwt: RleString,
    pub sorted: SortedGrammar,
    pub parse: ParseStats,
    pub derive: DeriveStats,
    pub timings: StageTimings,
}

impl Derivation {
    /// Output with separators rendered as bytes.
    pub fn rendered(&self) -> RleString<u8> {
        render(self.variant, &self.bwt)
    }

    /// Grammar size: rules plus start symbols.
    pub fn grammar_size(&self) -> usize {
        self.sorted.grammar.size()
    }
}

/// Renders separators as `$`, except the concatenated BWT's terminator,
/// which becomes `#`.
pub fn render(variant: BwtVariant, bwt: &RleString) -> RleString<u8> {
    bwt.map(|c| match c.as_byte() {
        Some(b) => b,
        None if variant == BwtVariant::ConcBwt && c == ExtChar::sentinel(0) => b'#',
        None => b'$',
    })
}

fn single_text(variant: BwtVariant, coll: &SequenceCollection) -> Result<&[u8]> {
    match coll.records() {
        [] => Err(Error::EmptyInput),
        [one] => Ok(&one.data),
        more => Err(Error::SingleTextRequired {
            variant: variant.name(),
            records: more.len(),
        }),
    }
}

fn per_record(
    coll: &SequenceCollection,
    dict: &Dictionary,
    opts: &BuildOptions,
    job: impl Fn(&[u8], &mut Parser<'_>) -> Result<Vec<SymbolId>> + Sync,
) -> Result<(Vec<Vec<SymbolId>>, ParseStats)> {
    if coll.is_empty() {
        return Err(Error::EmptyInput);
    }
    let records = coll.records();
    build_records_parallel(records.len(), dict, *opts, |k, p| {
        let data = &records[k].data;
        if data.is_empty() {
            return Err(Error::EmptyRecord(k));
        }
        job(data, p)
    })
}

/// Lyndon factorization of a rotated sequence of separators and record
/// roots, parsed in symbol form.
fn build_rotation(
    dict: &Dictionary,
    opts: &BuildOptions,
    items: &[Item],
) -> Result<(Vec<SymbolId>, ParseStats)> {
    let mut p = Parser::new(dict, BuildOptions { n_thres: None, ..*opts })?;
    for &item in items.iter().rev() {
        p.prepend(item)?;
    }
    let roots = p.finish()?;
    Ok((roots, p.stats()))
}

fn symbols(roots: &[SymbolId]) -> impl Iterator<Item = Item> + '_ {
    roots.iter().map(|&r| Item::Symbol(r))
}

/// Builds, prunes, sorts and derives `variant` of `coll`.
///
/// Single-text variants require exactly one record.
pub fn derive(
    variant: BwtVariant,
    coll: &SequenceCollection,
    opts: &BuildOptions,
) -> Result<Derivation> {
    opts.validate()?;
    let dict = Dictionary::new();
    let t0 = Instant::now();
    let (roots, parse) = match variant {
        BwtVariant::Bbwt => {
            let s = single_text(variant, coll)?;
            let mut p = Parser::new(&dict, *opts)?;
            p.extend_bytes(s)?;
            (p.finish()?, p.stats())
        }
        BwtVariant::DollarBwt => {
            let s = single_text(variant, coll)?;
            let mut p = Parser::new(&dict, *opts)?;
            p.extend_bytes(s)?;
            p.prepend(Item::Char(ExtChar::sentinel(0)))?;
            (p.finish()?, p.stats())
        }
        BwtVariant::Ebwt => {
            let (per, stats) = per_record(coll, &dict, opts, |s, p| {
                let k = least_rotation(s);
                let mut rotated = Vec::with_capacity(s.len());
                rotated.extend_from_slice(&s[k..]);
                rotated.extend_from_slice(&s[..k]);
                p.extend_bytes(&rotated)?;
                p.finish()
            })?;
            (per.concat(), stats)
        }
        BwtVariant::DolEbwt => {
            let (per, stats) = per_record(coll, &dict, opts, |s, p| {
                p.extend_bytes(s)?;
                p.prepend(Item::Char(ExtChar::sentinel(0)))?;
                p.finish()
            })?;
            (per.concat(), stats)
        }
        BwtVariant::MdolBwt => {
            let (per, stats) = per_record(coll, &dict, opts, |s, p| {
                p.extend_bytes(s)?;
                p.finish()
            })?;
            // $_1 S_2 $_2 ... S_n $_n S_1
            let mut items = vec![Item::Char(ExtChar::sentinel(0))];
            for (k, roots) in per.iter().enumerate().skip(1) {
                items.extend(symbols(roots));
                items.push(Item::Char(ExtChar::sentinel(k as u32)));
            }
            items.extend(symbols(&per[0]));
            let (roots, rot) = build_rotation(&dict, opts, &items)?;
            (roots, merge_stats(stats, rot))
        }
        BwtVariant::ConcBwt => {
            let (per, stats) = per_record(coll, &dict, opts, |s, p| {
                p.extend_bytes(s)?;
                p.finish()
            })?;
            // # S_1 $ S_2 $ ... S_n $
            let mut items = vec![Item::Char(ExtChar::sentinel(0))];
            for roots in &per {
                items.extend(symbols(roots));
                items.push(Item::Char(ExtChar::sentinel(1)));
            }
            let (roots, rot) = build_rotation(&dict, opts, &items)?;
            (roots, merge_stats(stats, rot))
        }
    };
    let build = t0.elapsed();

    let t1 = Instant::now();
    let grammar = dict.extract(&roots);
    drop(dict);
    let prune = t1.elapsed();

    let t2 = Instant::now();
    let sorted = sort_grammar(&grammar)?;
    drop(grammar);
    let sort = t2.elapsed();

    let t3 = Instant::now();
    let (bwt, derive_stats) = derive_bbwt_with_stats(&sorted)?;
    let derive = t3.elapsed();

    Ok(Derivation {
        variant,
        bwt,
        sorted,
        parse,
        derive: derive_stats,
        timings: StageTimings {
            build,
            prune,
            sort,
            derive,
        },
    })
}

/// The string whose BBWT equals `variant` of `coll`, in the root order
/// [`derive`] uses.
pub fn variant_text(variant: BwtVariant, coll: &SequenceCollection) -> Result<Vec<ExtChar>> {
    if coll.is_empty() {
        return Err(Error::EmptyInput);
    }
    let recs: Vec<&[u8]> = coll.iter().collect();
    let lifted = |s: &[u8]| s.iter().map(|&b| ExtChar::byte(b)).collect::<Vec<_>>();
    let mut out = Vec::with_capacity(coll.total_len() as usize + coll.len() + 1);
    match variant {
        BwtVariant::Bbwt => out.extend(lifted(single_text(variant, coll)?)),
        BwtVariant::DollarBwt => {
            out.push(ExtChar::sentinel(0));
            out.extend(lifted(single_text(variant, coll)?));
        }
        BwtVariant::Ebwt => {
            for s in recs {
                let k = least_rotation(s);
                out.extend(lifted(&s[k..]));
                out.extend(lifted(&s[..k]));
            }
        }
        BwtVariant::DolEbwt => {
            for s in recs {
                out.push(ExtChar::sentinel(0));
                out.extend(lifted(s));
            }
        }
        BwtVariant::MdolBwt => {
            out.push(ExtChar::sentinel(0));
            for (k, s) in recs.iter().enumerate().skip(1) {
                out.extend(lifted(s));
                out.push(ExtChar::sentinel(k as u32));
            }
            out.extend(lifted(recs[0]));
        }
        BwtVariant::ConcBwt => {
            out.push(ExtChar::sentinel(0));
            for s in recs {
                out.extend(lifted(s));
                out.push(ExtChar::sentinel(1));
            }
        }
    }
    Ok(out)
}

fn merge_stats(mut a: ParseStats, b: ParseStats) -> ParseStats {
    a.add(&b);
    a
}

fn variant_output(
    variant: BwtVariant,
    coll: &SequenceCollection,
    opts: &BuildOptions,
) -> Result<RleString> {
    derive(variant, coll, opts).map(|d| d.bwt)
}

fn singleton(s: &[u8]) -> Result<SequenceCollection> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    SequenceCollection::from_strings([s])
}

/// BWT of `s` followed by one separator smaller than every byte.
pub fn derive_dollar_bwt(s: &[u8], opts: &BuildOptions) -> Result<RleString> {
    variant_output(BwtVariant::DollarBwt, &singleton(s)?, opts)
}

/// BBWT of a single text given as bytes.
pub fn derive_bbwt_of(s: &[u8], opts: &BuildOptions) -> Result<RleString> {
    variant_output(BwtVariant::Bbwt, &singleton(s)?, opts)
}

pub fn derive_ebwt(coll: &SequenceCollection, opts: &BuildOptions) -> Result<RleString> {
    variant_output(BwtVariant::Ebwt, coll, opts)
}

pub fn derive_dol_ebwt(coll: &SequenceCollection, opts: &BuildOptions) -> Result<RleString> {
    variant_output(BwtVariant::DolEbwt, coll, opts)
}

pub fn derive_mdol_bwt(coll: &SequenceCollection, opts: &BuildOptions) -> Result<RleString> {
    variant_output(BwtVariant::MdolBwt, coll, opts)
}

pub fn derive_conc_bwt(coll: &SequenceCollection, opts: &BuildOptions) -> Result<RleString> {
    variant_output(BwtVariant::ConcBwt, coll, opts)
}
