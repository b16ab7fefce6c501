use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kingship::circuit::{
    gw_materialize, jt_materialize, lift_j, random_circuit, table_to_circuit, BooleanCircuit, JTournamentCircuit,
};
use kingship::digraph::{
    all_k_kings, find_king_landau, is_k_king, is_k_king_bfs, parse_graph, random_digraph, random_tournament,
    recognize_jpartite_direct, recognize_jpartite_patterns, write_graph,
};
use kingship::formula::{parse_formula, truth_table_of, PropFormula, TruthTable};
use kingship::pairing::{pair, unpair, PairingVersion};
use kingship::specifier::{make_builtin_specifier, BuiltinKind, TournamentFamily};
use kingship::{BitString, Limits};

fn bits(max: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(BitString::from_bits)
}

fn bits_exact(len: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), len).prop_map(BitString::from_bits)
}

fn version() -> impl Strategy<Value = PairingVersion> {
    prop_oneof![Just(PairingVersion::V1), Just(PairingVersion::V2)]
}

fn builtin() -> impl Strategy<Value = BuiltinKind> {
    prop_oneof![
        Just("max"),
        Just("pi2:ttfe"),
        Just("conp:ttplain"),
        Just("np:ttplain"),
        Just("kkings:3:catalog"),
        Just("kkings:4:ttfe"),
    ]
    .prop_map(|s| s.parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn index_order_is_string_order(a in 0u64..1 << 16, b in 0u64..1 << 16, len in 16usize..24) {
        let (x, y) = (BitString::from_index(a, len), BitString::from_index(b, len));
        prop_assert_eq!(a.cmp(&b), x.cmp(&y));
        prop_assert_eq!(x.to_index(), a);
        prop_assert_eq!(x.to_string().parse::<BitString>().unwrap(), x);
    }

    #[test]
    fn pairing_roundtrips(v in version(), x in bits(20), y in bits(20)) {
        let z = pair(v, &x, &y);
        prop_assert_eq!(z.len(), v.paired_len(x.len(), y.len()));
        prop_assert_eq!(unpair(v, &z), Some((x, y)));
    }

    #[test]
    fn unpair_inverts_exactly_on_the_range(v in version(), s in bits(24)) {
        if let Some((x, y)) = unpair(v, &s) {
            prop_assert_eq!(pair(v, &x, &y), s);
        }
    }

    #[test]
    fn landau_king_is_a_king(n in 1usize..24, seed: u64) {
        let t = random_tournament(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let king = find_king_landau(&t);
        prop_assert!(is_k_king(t.graph(), king, 2).unwrap());
        prop_assert!(all_k_kings(t.graph(), 2).unwrap().contains(&king));
    }

    #[test]
    fn kingship_is_monotone_in_k_and_matches_bfs(n in 1usize..16, p in 0.05f64..0.95, seed: u64) {
        let g = random_digraph(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        for v in 0..n {
            let mut before = false;
            for k in 1..=n {
                let now = is_k_king(&g, v, k).unwrap();
                prop_assert_eq!(now, is_k_king_bfs(&g, v, k).unwrap());
                prop_assert!(!before || now, "node {} stops being a king at k={}", v, k);
                before = now;
            }
        }
    }

    #[test]
    fn graph_text_roundtrips(n in 1usize..12, p in 0.0f64..1.0, seed: u64) {
        let g = random_digraph(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let back = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(back.num_nodes(), n);
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn circuit_text_roundtrips(arity in 1usize..7, gates in 1usize..30, seed: u64) {
        let c = random_circuit(arity, gates, &mut ChaCha8Rng::seed_from_u64(seed));
        let back = BooleanCircuit::parse(&c.to_string()).unwrap();
        for x in BitString::all_of_length(arity) {
            prop_assert_eq!(c.eval(&x).unwrap(), back.eval(&x).unwrap());
        }
        prop_assert_eq!(back.to_string(), c.to_string());
    }

    #[test]
    fn table_circuits_reproduce_the_graph(width in 1usize..4, p in 0.0f64..1.0, seed: u64) {
        let g = random_digraph(1 << width, p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let sg = table_to_circuit(
            width,
            |x, y| g.has_edge(x.to_index() as usize, y.to_index() as usize),
            &Limits::default(),
        )
        .unwrap();
        let back = gw_materialize(&sg, &Limits::default()).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn formula_text_keeps_its_truth_table(table in (1u32..5).prop_flat_map(|n| bits_exact(1 << n))) {
        let n = table.len().trailing_zeros() as usize;
        let table = TruthTable::from_bits(&table).unwrap();
        let f = PropFormula::from_truth_table(&table).unwrap();
        let back = parse_formula(&f.to_string()).unwrap();
        prop_assert_eq!(back.num_vars(), n);
        prop_assert_eq!(truth_table_of(&back, &Limits::default()).unwrap(), table);
    }

    #[test]
    fn builtins_select_one_argument_symmetrically(kind in builtin(), x in bits(48), y in bits(48)) {
        let spec = make_builtin_specifier(kind).unwrap();
        let r = spec.select(&x, &y);
        prop_assert!(r == x || r == y);
        prop_assert_eq!(spec.select(&y, &x), r.clone());
        if x.len() < y.len() {
            prop_assert_eq!(r, x);
        }
    }

    #[test]
    fn builtins_are_symmetric_on_equal_lengths(kind in builtin(), m in 1usize..40, a: u64, b: u64) {
        let spec = make_builtin_specifier(kind).unwrap();
        let mask = if m >= 64 { u64::MAX } else { (1 << m) - 1 };
        let (x, y) = (BitString::from_index(a & mask, m), BitString::from_index(b & mask, m));
        prop_assert_eq!(spec.select(&x, &y), spec.select(&y, &x));
    }

    #[test]
    fn circuit_multipartite_tournaments_are_multipartite(j in 2usize..4, n in 0usize..2, gates in 1usize..12, seed: u64) {
        let c = random_circuit(j * (n + 1), gates, &mut ChaCha8Rng::seed_from_u64(seed));
        let jc = JTournamentCircuit::new(j, n, c).unwrap();
        let g = jt_materialize(&jc, &Limits::default()).unwrap();
        prop_assert_eq!(g.graph().num_nodes(), j << n);
        prop_assert!(recognize_jpartite_direct(g.graph(), j).unwrap());
        prop_assert!(recognize_jpartite_patterns(g.graph(), j).unwrap());
    }

    #[test]
    fn adding_an_empty_part_keeps_kings(j in 2usize..4, n in 0usize..2, gates in 1usize..12, seed: u64) {
        let c = random_circuit(j * (n + 1), gates, &mut ChaCha8Rng::seed_from_u64(seed));
        let jc = JTournamentCircuit::new(j, n, c).unwrap();
        let lifted = lift_j(&jc);
        let (g, h) = (jt_materialize(&jc, &Limits::default()).unwrap(), jt_materialize(&lifted, &Limits::default()).unwrap());
        for v in 0..jc.num_nodes() {
            let node = jc.node_at(v);
            let w = lifted.node_id(&node).unwrap();
            for k in 1..=4 {
                prop_assert_eq!(is_k_king(g.graph(), v, k).unwrap(), is_k_king(h.graph(), w, k).unwrap());
            }
        }
    }
}
