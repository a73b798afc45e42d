mod common;

use ck_spectra::generators::{ea_graph, phi, px_closure, PXModel};
use ck_spectra::tails::finite_return_vertices;
use ck_spectra::topology::{
    check_kuratowski, graph_closure, ideal_closure, refined_graph_closure, separation_report,
    spec_points, test_subsets, verify_homeomorphism, PointSet,
};
use ck_spectra::{Multiplicity, Side, SpecPoint, SpecSpace, VerifyOptions};
use common::arb_graph;
use proptest::prelude::*;

fn point_set(n: usize, members: impl IntoIterator<Item = usize>) -> PointSet {
    let mut s = PointSet::with_capacity(n);
    for i in members {
        s.insert(i);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn all_three_closures_are_kuratowski(g in arb_graph(6)) {
        prop_assume!(g.condition_k());
        let opts = VerifyOptions::default();
        for side in [Side::GraphSide, Side::IdealSide, Side::RefinedGraphSide] {
            let space = SpecSpace::spec(&g, side).unwrap();
            let (subsets, _) = test_subsets(space.len(), &opts);
            prop_assert!(check_kuratowski(&space, &subsets).is_ok());
            prop_assert!(separation_report(&space).t0);
        }
    }

    #[test]
    fn refined_graph_closure_matches_ideal_closure(g in arb_graph(6)) {
        prop_assume!(g.condition_k());
        let opts = VerifyOptions { graph_side: Side::RefinedGraphSide, ..Default::default() };
        prop_assert!(verify_homeomorphism(&g, &opts).is_ok());
    }

    #[test]
    fn without_finite_return_vertices_closure_is_containment(g in arb_graph(6)) {
        prop_assume!(g.condition_k() && finite_return_vertices(&g).is_empty());
        let pts = spec_points(&g).unwrap();
        let (subsets, _) = test_subsets(pts.len(), &VerifyOptions::default());
        for x in &subsets {
            let union = x.ones().fold(ck_spectra::VertexSet::EMPTY, |acc, i| match pts[i] {
                SpecPoint::Cluster(c) => acc | c,
                SpecPoint::FiniteReturn(_) => unreachable!(),
            });
            let expected = point_set(pts.len(), (0..pts.len()).filter(|&i| match pts[i] {
                SpecPoint::Cluster(c) => c.is_subset(union),
                SpecPoint::FiniteReturn(_) => false,
            }));
            prop_assert_eq!(graph_closure(&g, &pts, x), expected);
        }
    }
}

#[test]
fn px_closure_equals_union_containment_on_finite_ground() {
    for ground in [&["a"][..], &["a", "b"], &["a", "b", "c"]] {
        let m = PXModel::new(ground).unwrap();
        let points = m.points();
        for fam_bits in 0u32..1 << points.len() {
            let family: Vec<u32> = (0..points.len())
                .filter(|i| fam_bits >> i & 1 == 1)
                .map(|i| points[i])
                .collect();
            let by_containment: Vec<u32> = points
                .iter()
                .copied()
                .filter(|&t| family.iter().any(|&s| t & s == t))
                .collect();
            assert_eq!(px_closure(&m, &family), by_containment);
        }
    }
}

#[test]
fn phi_is_a_homeomorphism_onto_clusters() {
    for ground in [&["a"][..], &["a", "b"], &["a", "b", "c"]] {
        let m = PXModel::new(ground).unwrap();
        let g = m.graph();
        let pts = spec_points(&g).unwrap();
        let points = m.points();
        assert_eq!(pts.len(), points.len());
        let index: Vec<usize> = points
            .iter()
            .map(|&s| {
                pts.iter()
                    .position(|&p| p == SpecPoint::Cluster(phi(&m, s)))
                    .expect("phi lands in the clusters")
            })
            .collect();
        let mut sorted = index.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), pts.len());

        for fam_bits in 0u32..1 << points.len() {
            let chosen: Vec<usize> = (0..points.len())
                .filter(|i| fam_bits >> i & 1 == 1)
                .collect();
            let family: Vec<u32> = chosen.iter().map(|&i| points[i]).collect();
            let x = point_set(pts.len(), chosen.iter().map(|&i| index[i]));
            let cl_p = px_closure(&m, &family);
            let image = point_set(
                pts.len(),
                cl_p.iter()
                    .map(|s| index[points.iter().position(|p| p == s).unwrap()]),
            );
            assert_eq!(graph_closure(&g, &pts, &x), image);
            assert_eq!(ideal_closure(&g, &pts, &x), image);
            assert_eq!(refined_graph_closure(&g, &pts, &x), image);
        }
    }
}

#[test]
fn ea_family_invariants() {
    for ground in [
        &["a"][..],
        &["a", "b"],
        &["a", "b", "c"],
        &["a", "b", "c", "d"],
    ] {
        let g = ea_graph(ground, Multiplicity::Omega).unwrap();
        assert!(g.condition_k() && g.condition_l());
        assert!(g.is_downward_directed(g.all()));
        assert!(finite_return_vertices(&g).is_empty());
        assert_eq!(spec_points(&g).unwrap().len(), (1 << ground.len()) - 1);
    }
}
