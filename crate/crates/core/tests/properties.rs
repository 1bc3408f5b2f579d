mod common;

use common::{bfs, dir_bits};
use proptest::prelude::*;
use slim_core::archive::{decode, encode, Archive, EncodeOptions, Section};
use slim_core::graph::{Graph, Vertex};
use slim_core::query::{degree_table, QueryEngine};

/// Arbitrary small graphs: any arc set, optionally symmetric and colored.
fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..40, any::<bool>(), any::<bool>()).prop_flat_map(|(n, symmetric, colored)| {
        let arcs = prop::collection::vec((0..n as Vertex, 0..n as Vertex), 0..4 * n);
        let colors = prop::collection::vec(0u32..6, n);
        (arcs, colors).prop_map(move |(arcs, colors)| {
            let mut arcs: Vec<_> = arcs.into_iter().filter(|(u, v)| u != v).collect();
            if symmetric {
                let back: Vec<_> = arcs.iter().map(|&(u, v)| (v, u)).collect();
                arcs.extend(back);
            }
            arcs.sort_unstable();
            arcs.dedup();
            Graph::build(n, &arcs, colored.then_some(colors.clone()), false).expect("valid arc list")
        })
    })
}

fn sections() -> EncodeOptions {
    EncodeOptions::with_sections(&[Section::Deg, Section::Adj, Section::Near(2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn any_small_graph_round_trips(g in small_graph()) {
        let (a, _) = encode(&g, &sections());
        let back = Archive::from_bytes(&a.to_bytes()).unwrap();
        prop_assert_eq!(decode(&back).unwrap(), g);
    }

    #[test]
    fn queries_agree_with_scans(g in small_graph()) {
        let (a, _) = encode(&g, &sections());
        let q = QueryEngine::open(&a).unwrap();
        let und = g.undirected();
        let degs = degree_table(&g);
        for u in g.vertices() {
            let lu = q.label_of(u).unwrap();
            let (d, o, i) = q.degree(lu).unwrap();
            prop_assert_eq!([d, o, i], degs[u as usize]);
            let mut want: Vec<(u32, u8)> = und.out(u).iter().map(|&v| (q.label_of(v).unwrap(), dir_bits(&g, u, v))).collect();
            want.sort_unstable();
            prop_assert_eq!(q.neighbors(lu).unwrap(), want);
            let dist = bfs(&und, u, 2);
            for v in g.vertices() {
                let lv = q.label_of(v).unwrap();
                prop_assert_eq!(q.adjacent(lu, lv).unwrap(), (g.has_arc(u, v), g.has_arc(v, u)));
                let p = q.near(lu, lv, 2).unwrap();
                let d = dist[v as usize];
                prop_assert_eq!(p.as_ref().map(|p| p.len() as u32 - 1), (d != u32::MAX).then_some(d));
            }
        }
    }

    #[test]
    fn truncated_archives_fail_cleanly(g in small_graph(), cut in 1usize..64) {
        let bytes = encode(&g, &sections()).0.to_bytes();
        let keep = bytes.len().saturating_sub(cut);
        prop_assert!(Archive::from_bytes(&bytes[..keep]).is_err());
    }
}
