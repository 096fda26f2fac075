use super::*;
use crate::alphabet::lift;
use crate::grammar::tests::running_example;
use crate::grammar::{Grammar, Rule, DEFAULT_EXPANSION_CAP};
use crate::lyndon::{duval_factorize, standard_factorization};
use proptest::prelude::*;

const STRATEGIES: [ComparisonStrategy; 3] = [
    ComparisonStrategy::Naive,
    ComparisonStrategy::LyndonArray,
    ComparisonStrategy::OrderedMarkers,
];

fn build(s: &[u8], opts: BuildOptions) -> Grammar {
    let d = Dictionary::new();
    let mut p = Parser::new(&d, opts).unwrap();
    p.extend_bytes(s).unwrap();
    let roots = p.finish().unwrap();
    d.extract(&roots)
}

fn root_strings(g: &Grammar) -> Vec<Vec<ExtChar>> {
    g.roots()
        .iter()
        .map(|&r| g.expand(r, DEFAULT_EXPANSION_CAP).unwrap())
        .collect()
}

fn factors(s: &[u8]) -> Vec<Vec<ExtChar>> {
    let s = lift(s);
    duval_factorize(&s)
        .unwrap()
        .into_iter()
        .map(|(st, len)| s[st..st + len].to_vec())
        .collect()
}

fn assert_valid(g: &Grammar) {
    for x in g.symbols() {
        if let Rule::Pair(a, b) = g.rule(x) {
            let w = g.expand(x, DEFAULT_EXPANSION_CAP).unwrap();
            let split = standard_factorization(&w).unwrap();
            assert_eq!(split as u64, g.len(a), "rule {x}");
            assert_eq!(w[split..], g.expand(b, DEFAULT_EXPANSION_CAP).unwrap()[..]);
        }
    }
}

#[test]
fn running_example_matches_reference_grammar() {
    for strategy in STRATEGIES {
        let g = build(b"abbabcbcabb", BuildOptions::with_strategy(strategy));
        assert_eq!(g.num_symbols(), 9);
        assert_eq!(g.roots().len(), 2);
        assert_eq!(g.canonical(), running_example().canonical());
    }
}

#[test]
fn small_examples() {
    let d = Dictionary::new();
    let roots = build_sequence(&lift(b"cba"), &d, ComparisonStrategy::Naive).unwrap();
    assert_eq!(roots.len(), 3);
    assert!(roots.iter().all(|&r| matches!(d.rule(r), Rule::Terminal(_))));
    assert_eq!(d.len(), 3);

    let d = Dictionary::new();
    let roots = build_sequence(&lift(b"ab"), &d, ComparisonStrategy::Naive).unwrap();
    let (a, b) = (d.find_terminal(ExtChar::byte(b'a')), d.find_terminal(ExtChar::byte(b'b')));
    assert_eq!(d.rule(roots[0]), Rule::Pair(a.unwrap(), b.unwrap()));

    let d = Dictionary::new();
    let roots = build_sequence(&lift(b"aaaa"), &d, ComparisonStrategy::Naive).unwrap();
    assert_eq!(roots, vec![roots[0]; 4]);
    assert_eq!(d.len(), 1);

    let g = build(b"banana", BuildOptions::default());
    assert_eq!(root_strings(&g), factors(b"banana"));
    assert_eq!(root_strings(&g).len(), 4);
}

#[test]
fn empty_input_and_bad_threshold() {
    let d = Dictionary::new();
    assert_eq!(
        build_sequence(&[], &d, ComparisonStrategy::Naive),
        Err(Error::EmptyInput)
    );
    assert_eq!(
        build_with_heavy_light(&lift(b"ab"), &d, ComparisonStrategy::Naive, 1).unwrap_err(),
        Error::InvalidThreshold(1)
    );
}

#[test]
fn lyndon_array_budget_is_enforced() {
    let d = Dictionary::new();
    let opts = BuildOptions {
        strategy: ComparisonStrategy::LyndonArray,
        lyndon_array_budget: 64,
        ..Default::default()
    };
    let mut p = Parser::new(&d, opts).unwrap();
    assert!(matches!(
        p.extend_bytes(&[b'a'; 100]),
        Err(Error::LyndonArrayTooLarge { len: 100, .. })
    ));
}

fn ordered_running_example(skip_last: Option<u32>) -> OrderedMarkerIndex {
    let g = running_example();
    let mut index = OrderedMarkerIndex::new();
    for s in g.symbols().filter(|s| Some(s.0) != skip_last) {
        index.ensure(&g, s).unwrap();
    }
    if let Some(k) = skip_last {
        index.insert(&g, SymbolId(k)).unwrap();
    }
    index
}

const RUNNING_MARKERS: &str = "(_1(_2(_3(_4)_4)_3)_2(_5(_6)_6)_5)_1(_7(_8)_8)_7(_9)_9";

#[test]
fn marker_sequence_of_running_example() {
    let index = ordered_running_example(None);
    assert_eq!(index.to_string(), RUNNING_MARKERS);
    assert_eq!(index.len(), 9);
    assert_eq!(index.compare(SymbolId(1), SymbolId(7)), Ok(Ordering::Less));
    assert_eq!(index.compare(SymbolId(4), SymbolId(4)), Ok(Ordering::Equal));
    assert_eq!(index.compare(SymbolId(6), SymbolId(3)), Ok(Ordering::Greater));
}

#[test]
fn late_insertion_nests_inside_first_symbol() {
    // X4 -> X3 X6 becomes the only child of X3
    assert_eq!(ordered_running_example(Some(4)).to_string(), RUNNING_MARKERS);
}

#[test]
fn pair_with_childless_first_symbol_goes_before_its_close() {
    let g = running_example();
    let mut index = OrderedMarkerIndex::new();
    for k in [1, 7] {
        index.insert(&g, SymbolId(k)).unwrap();
    }
    index.insert_pair(SymbolId(2), SymbolId(1), SymbolId(7)).unwrap();
    assert_eq!(index.to_string(), "(_1(_2)_2)_1(_7)_7");
}

#[test]
fn ordered_index_errors() {
    let g = running_example();
    let mut index = OrderedMarkerIndex::new();
    index.insert(&g, SymbolId(1)).unwrap();
    assert_eq!(
        index.compare(SymbolId(1), SymbolId(7)),
        Err(Error::SymbolNotIndexed(SymbolId(7)))
    );
    assert_eq!(
        index.insert_pair(SymbolId(2), SymbolId(1), SymbolId(7)),
        Err(Error::ChildrenNotIndexed(SymbolId(2)))
    );
}

fn assert_balanced(index: &OrderedMarkerIndex) {
    let mut open = Vec::new();
    for (s, p) in index.markers_in_order() {
        match p {
            Paren::Open => open.push(s),
            Paren::Close => assert_eq!(open.pop(), Some(s)),
        }
    }
    assert!(open.is_empty());
}

/// Lyndon tree shape: `.` for a leaf, `(LR)` for an inner node.
fn shape(w: &[u8]) -> String {
    if w.len() == 1 {
        return ".".into();
    }
    let k = standard_factorization(w).unwrap();
    format!("({}{})", shape(&w[..k]), shape(&w[k..]))
}

#[test]
fn heavy_light_partition_with_threshold_two() {
    // tree ((((0,1),(2,3)),(4,(5,6))),7)
    let target = "((((..)(..))(.(..))).)";
    let word = (0..4u32.pow(8))
        .map(|mut x| {
            (0..8)
                .map(|_| {
                    let c = b'a' + (x % 4) as u8;
                    x /= 4;
                    c
                })
                .collect::<Vec<u8>>()
        })
        .find(|w| crate::lyndon::is_lyndon(w) && shape(w) == target)
        .expect("a word with the wanted shape exists");
    let d = Dictionary::new();
    let opts = BuildOptions {
        n_thres: Some(2),
        trace: true,
        ..Default::default()
    };
    let mut p = Parser::new(&d, opts).unwrap();
    p.extend_bytes(&word).unwrap();
    let mut events: Vec<(u64, bool, usize)> = p
        .trace()
        .iter()
        .map(|e| (e.len, e.heavy, e.heavy_descendants))
        .collect();
    events.sort();
    assert_eq!(
        events,
        vec![
            (2, false, 2),
            (2, false, 2),
            (2, false, 2),
            (3, true, 3),
            (4, true, 4),
            (7, false, 2),
            (8, true, 3),
        ]
    );
    let roots = p.finish().unwrap();
    assert_eq!(d.extract(&roots).canonical(), build(&word, BuildOptions::default()).canonical());
}

#[test]
fn shared_dictionary_collection() {
    let coll = SequenceCollection::from_strings(["ab", "ab", "b"]).unwrap();
    let d = Dictionary::new();
    let roots = build_collection_parallel(&coll, &d, BuildOptions::default()).unwrap();
    assert_eq!(roots.len(), 3);
    assert_eq!(roots[0], roots[1]);
    assert_eq!(d.len(), 3);
}

fn random_collection(seed: u64, n: usize) -> SequenceCollection {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let recs: Vec<Vec<u8>> = (0..n)
        .map(|_| {
            let len = rng.random_range(1..40);
            (0..len).map(|_| b"acgt"[rng.random_range(0..4)]).collect()
        })
        .collect();
    SequenceCollection::from_strings(recs).unwrap()
}

#[test]
fn parallel_build_matches_sequential() {
    let coll = random_collection(7, 100);
    let mut reference = None;
    for threads in [1, 4] {
        for strategy in STRATEGIES {
            let d = Dictionary::new();
            let opts = BuildOptions {
                strategy,
                threads,
                n_thres: Some(8),
                ..Default::default()
            };
            let roots = build_collection_parallel(&coll, &d, opts).unwrap();
            for (r, rec) in roots.iter().zip(coll.records()) {
                let mut text = Vec::new();
                for &x in r {
                    let g = d.extract(&[x]);
                    text.extend(g.expand(g.roots()[0], DEFAULT_EXPANSION_CAP).unwrap());
                }
                assert_eq!(text, lift(&rec.data));
            }
            let canon = d.extract(&roots.concat()).canonical();
            match &reference {
                None => reference = Some(canon),
                Some(c) => assert_eq!(c, &canon),
            }
        }
    }
}

#[test]
fn failed_record_is_reported() {
    let d = Dictionary::new();
    let res = build_records_parallel(3, &d, BuildOptions::default(), |k, p| {
        if k == 1 {
            return Err(Error::EmptyRecord(k));
        }
        p.extend_bytes(b"ab")?;
        p.finish()
    });
    assert_eq!(res.unwrap_err(), Error::EmptyRecord(1));
}

#[test]
fn grammar_is_valid_exhaustively_for_short_inputs() {
    for len in 1..=8u32 {
        for mut x in 0..3u32.pow(len) {
            let s: Vec<u8> = (0..len)
                .map(|_| {
                    let c = b'a' + (x % 3) as u8;
                    x /= 3;
                    c
                })
                .collect();
            let g = build(&s, BuildOptions::default());
            assert_valid(&g);
            assert_eq!(root_strings(&g), factors(&s));
        }
    }
}

fn options() -> impl Strategy<Value = BuildOptions> {
    (
        prop::sample::select(STRATEGIES.to_vec()),
        prop::option::of(prop::sample::select(vec![2usize, 3, 8, 31])),
    )
        .prop_map(|(strategy, n_thres)| BuildOptions {
            strategy,
            n_thres,
            verify_cache: true,
            trace: true,
            ..Default::default()
        })
}

proptest! {
    #[test]
    fn every_configuration_builds_the_same_grammar(
        s in prop::collection::vec(b'a'..b'e', 1..120),
        opts in options(),
    ) {
        let reference = build(&s, BuildOptions::default());
        let d = Dictionary::new();
        let mut p = Parser::new(&d, opts).unwrap();
        p.extend_bytes(&s).unwrap();
        if let Some(n) = opts.n_thres {
            for e in p.trace() {
                if e.heavy {
                    prop_assert!(e.heavy_descendants > n && e.heavy_descendants <= 2 * n);
                } else {
                    prop_assert!(e.heavy_descendants <= n);
                }
            }
        }
        let roots = p.finish().unwrap();
        let g = d.extract(&roots);
        assert_valid(&g);
        prop_assert_eq!(root_strings(&g), factors(&s));
        prop_assert_eq!(g.canonical(), reference.canonical());
    }

    #[test]
    fn separated_symbol_items_match_character_items(
        parts in prop::collection::vec(prop::collection::vec(b'a'..b'd', 1..12), 1..6),
        strategy in prop::sample::select(STRATEGIES.to_vec()),
    ) {
        // $ S_1 $ S_2 ... with every S_k fed as its own roots
        let d = Dictionary::new();
        let mut per_part = Vec::new();
        for part in &parts {
            let mut p = Parser::new(&d, BuildOptions::default()).unwrap();
            p.extend_bytes(part).unwrap();
            per_part.push(p.finish().unwrap());
        }
        let mut p = Parser::new(&d, BuildOptions::with_strategy(strategy)).unwrap();
        for roots in per_part.iter().rev() {
            for &r in roots.iter().rev() {
                p.prepend(Item::Symbol(r)).unwrap();
            }
            p.prepend(Item::Char(ExtChar::sentinel(0))).unwrap();
        }
        let roots = p.finish().unwrap();

        let mut text = Vec::new();
        for part in &parts {
            text.push(ExtChar::sentinel(0));
            text.extend(lift(part));
        }
        let plain = Dictionary::new();
        let plain_roots = build_sequence(&text, &plain, ComparisonStrategy::Naive).unwrap();
        prop_assert_eq!(d.extract(&roots).canonical(), plain.extract(&plain_roots).canonical());
    }

    #[test]
    fn ordered_ranks_follow_expansion_order(s in prop::collection::vec(b'a'..b'd', 1..30)) {
        let d = Dictionary::new();
        let roots = build_sequence(&lift(&s), &d, ComparisonStrategy::Naive).unwrap();
        let g = d.extract(&roots);
        prop_assume!(g.num_symbols() <= 50);
        let mut index = OrderedMarkerIndex::new();
        for x in g.symbols() {
            index.insert(&g, x).unwrap();
            assert_balanced(&index);
        }
        let mut by_rank: Vec<SymbolId> = g.symbols().collect();
        by_rank.sort_by(|&x, &y| index.compare(x, y).unwrap());
        let ex: Vec<_> = by_rank.iter().map(|&x| g.expand(x, 1 << 20).unwrap()).collect();
        prop_assert!(ex.windows(2).all(|w| w[0] < w[1]));
        for x in g.symbols() {
            for y in g.symbols() {
                prop_assert_eq!(
                    index.compare(x, y).unwrap(),
                    compare_symbols_naive(&g, x, y)
                );
            }
        }
    }
}
