#![allow(dead_code)]

use ck_spectra::{Graph, Multiplicity, Vertex};
use proptest::prelude::*;

/// Graphs with `1..=max_n` vertices and a few bundles, multiplicities
/// drawn from {1, 2, ω}.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let mult = prop_oneof![
            3 => Just(Multiplicity::ONE),
            1 => Just(Multiplicity::Finite(2)),
            2 => Just(Multiplicity::Omega),
        ];
        prop::collection::vec((0..n, 0..n, mult), 0..=2 * n).prop_map(move |edges| {
            let mut b = Graph::builder();
            for i in 0..n {
                b.vertex(format!("v{i}")).unwrap();
            }
            for (s, d, m) in edges {
                b.bundle(None, Vertex::new(s), Vertex::new(d), m).unwrap();
            }
            b.build()
        })
    })
}
