//! Simple-cycle counting, Condition (K) and Condition (L).
//!
//! A simple cycle based at `v` is a cycle that does not pass through `v`
//! before its end; intermediate vertices may repeat. Parallel edges count as
//! distinct, so counts are taken in ℕ ∪ {ω} and only their class
//! (zero, one, or more) matters.

use super::{BundleId, Graph, Multiplicity, Vertex, VertexSet};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleCountClass {
    Zero,
    One,
    TwoOrMore,
}

impl CycleCountClass {
    pub fn of(count: Multiplicity) -> Self {
        match count {
            Multiplicity::Finite(0) => CycleCountClass::Zero,
            Multiplicity::Finite(1) => CycleCountClass::One,
            _ => CycleCountClass::TwoOrMore,
        }
    }
}

/// A cycle none of whose vertices emits any other edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExitlessCycle {
    pub vertices: Vec<Vertex>,
}

impl Graph {
    /// Vertices other than `v` that lie on some first-return walk at `v`.
    pub(crate) fn return_region(&self, v: Vertex) -> VertexSet {
        let others = self.all().without(v);
        let grow = |start: VertexSet, adj: &[VertexSet]| {
            let mut seen = start & others;
            let mut frontier = seen;
            while !frontier.is_empty() {
                let next = frontier
                    .iter()
                    .fold(VertexSet::EMPTY, |acc, x| acc | adj[x.0])
                    & others;
                frontier = next - seen;
                seen = seen | next;
            }
            seen
        };
        let forward = grow(self.succ[v.0], &self.succ);
        let backward = grow(self.pred[v.0], &self.pred);
        forward & backward
    }

    /// Number of simple cycles based at `v`, as a class.
    ///
    /// If the return region of `v` carries a cycle, walks can wind around it
    /// arbitrarily often and the count is infinite. Otherwise the region is
    /// acyclic and the walks are counted by a pass in topological order,
    /// weighting each step by its multiplicity.
    pub fn simple_cycle_class(&self, v: Vertex) -> Result<CycleCountClass> {
        self.check_vertex(v)?;
        let region = self.return_region(v);
        let Some(order) = self.topological_order(region) else {
            return Ok(CycleCountClass::TwoOrMore);
        };
        let mut paths = vec![Multiplicity::ZERO; self.vertex_count()];
        for &a in &order {
            let mut count = self.multiplicity_between(v, a);
            for b in (self.pred[a.0] & region).iter() {
                count = count + paths[b.0] * self.multiplicity_between(b, a);
            }
            paths[a.0] = count;
        }
        let total = region
            .iter()
            .fold(self.multiplicity_between(v, v), |acc, b| {
                acc + paths[b.0] * self.multiplicity_between(b, v)
            });
        Ok(CycleCountClass::of(total))
    }

    /// Kahn's algorithm on the subgraph induced by `region`; `None` if it
    /// contains a cycle.
    fn topological_order(&self, region: VertexSet) -> Option<Vec<Vertex>> {
        let mut indegree = vec![0usize; self.vertex_count()];
        for a in region {
            indegree[a.0] = (self.pred[a.0] & region).len();
        }
        let mut ready: Vec<Vertex> = region.iter().filter(|a| indegree[a.0] == 0).collect();
        let mut order = Vec::with_capacity(region.len());
        while let Some(a) = ready.pop() {
            order.push(a);
            for b in (self.succ[a.0] & region).iter() {
                indegree[b.0] -= 1;
                if indegree[b.0] == 0 {
                    ready.push(b);
                }
            }
        }
        (order.len() == region.len()).then_some(order)
    }

    /// Some first-return walk at `v` as a bundle sequence, if one exists.
    /// When `v` has exactly one simple cycle this is that cycle.
    pub fn first_return_walk(&self, v: Vertex) -> Option<Vec<BundleId>> {
        let region = self.return_region(v);
        for &b in &self.out_bundles[v.0] {
            if self.bundles[b.0].dst == v {
                return Some(vec![b]);
            }
        }
        // depth-first search confined to the region; any vertex in it can
        // complete the walk, so greedy descent with backtracking terminates
        let mut stack: Vec<(Vertex, Vec<BundleId>)> = Vec::new();
        for &b in &self.out_bundles[v.0] {
            let d = self.bundles[b.0].dst;
            if region.contains(d) {
                stack.push((d, vec![b]));
            }
        }
        let mut visited = VertexSet::EMPTY;
        while let Some((at, walk)) = stack.pop() {
            for &b in &self.out_bundles[at.0] {
                let d = self.bundles[b.0].dst;
                if d == v {
                    let mut done = walk.clone();
                    done.push(b);
                    return Some(done);
                }
                if region.contains(d) && !visited.contains(d) {
                    visited.insert(d);
                    let mut next = walk.clone();
                    next.push(b);
                    stack.push((d, next));
                }
            }
        }
        None
    }

    /// Condition (K): no vertex is the source of exactly one simple cycle.
    /// Returns the first offending vertex on failure.
    pub fn condition_k_violation(&self) -> Option<Vertex> {
        self.vertices()
            .find(|&v| self.simple_cycle_class(v).expect("vertex in range") == CycleCountClass::One)
    }

    pub fn condition_k(&self) -> bool {
        self.condition_k_violation().is_none()
    }

    /// An exitless cycle, if one exists. Such a cycle uses only vertices
    /// that emit exactly one edge, so it is found by following the unique
    /// successor inside that subgraph.
    pub fn condition_l_violation(&self) -> Option<ExitlessCycle> {
        let single: VertexSet = self
            .vertices()
            .filter(|&v| self.out_mult[v.0] == Multiplicity::ONE)
            .collect();
        let next = |v: Vertex| self.succ[v.0].first().expect("one successor");
        let mut cleared = VertexSet::EMPTY;
        for start in single {
            if cleared.contains(start) {
                continue;
            }
            let mut path = Vec::new();
            let mut on_path = VertexSet::EMPTY;
            let mut at = start;
            while single.contains(at) && !cleared.contains(at) && !on_path.contains(at) {
                on_path.insert(at);
                path.push(at);
                at = next(at);
            }
            if on_path.contains(at) {
                let pos = path.iter().position(|&p| p == at).expect("on path");
                return Some(ExitlessCycle {
                    vertices: path[pos..].to_vec(),
                });
            }
            cleared = cleared | on_path;
        }
        None
    }

    pub fn condition_l(&self) -> bool {
        self.condition_l_violation().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{ea_graph, running_example};

    fn single_loop(mult: Multiplicity) -> Graph {
        let mut b = Graph::builder();
        b.vertex("a").unwrap();
        b.edge(None, "a", "a", mult).unwrap();
        b.build()
    }

    #[test]
    fn running_example_cycle_classes() {
        let g = running_example().graph;
        let class = |n: &str| g.simple_cycle_class(g.vertex(n).unwrap()).unwrap();
        assert_eq!(class("z"), CycleCountClass::TwoOrMore);
        for n in ["u", "v", "x", "z"] {
            assert_eq!(class(n), CycleCountClass::TwoOrMore, "{n}");
        }
        for n in ["t", "w", "y"] {
            assert_eq!(class(n), CycleCountClass::Zero, "{n}");
        }
        assert!(g.condition_k());
        assert!(g.condition_l());
    }

    #[test]
    fn single_loop_has_one_cycle_and_no_exit() {
        let g = single_loop(Multiplicity::ONE);
        assert_eq!(
            g.simple_cycle_class(Vertex(0)).unwrap(),
            CycleCountClass::One
        );
        assert_eq!(g.condition_k_violation(), Some(Vertex(0)));
        assert_eq!(
            g.condition_l_violation(),
            Some(ExitlessCycle {
                vertices: vec![Vertex(0)]
            })
        );
    }

    #[test]
    fn doubled_loop_satisfies_k() {
        let g = single_loop(Multiplicity::Finite(2));
        assert_eq!(
            g.simple_cycle_class(Vertex(0)).unwrap(),
            CycleCountClass::TwoOrMore
        );
        assert!(g.condition_k());
        assert!(g.condition_l());
    }

    #[test]
    fn ea_graph_is_acyclic() {
        for m in [Multiplicity::ONE, Multiplicity::Omega] {
            let g = ea_graph(&["a", "b", "c"], m).unwrap();
            for v in g.vertices() {
                assert_eq!(g.simple_cycle_class(v).unwrap(), CycleCountClass::Zero);
            }
            assert!(g.condition_k());
            assert!(g.condition_l());
        }
    }

    #[test]
    fn intermediate_revisits_make_infinitely_many_cycles() {
        // a -> b, b -> b (loop), b -> a: walks a b^k a for every k ≥ 1
        let mut bld = Graph::builder();
        bld.vertices(["a", "b"]).unwrap();
        bld.edge(None, "a", "b", Multiplicity::ONE).unwrap();
        bld.edge(None, "b", "b", Multiplicity::ONE).unwrap();
        bld.edge(None, "b", "a", Multiplicity::ONE).unwrap();
        let g = bld.build();
        assert_eq!(
            g.simple_cycle_class(Vertex(0)).unwrap(),
            CycleCountClass::TwoOrMore
        );
    }

    #[test]
    fn first_return_walk_of_a_two_cycle() {
        let mut bld = Graph::builder();
        bld.vertices(["a", "b"]).unwrap();
        bld.edge(Some("p"), "a", "b", Multiplicity::ONE).unwrap();
        bld.edge(Some("q"), "b", "a", Multiplicity::ONE).unwrap();
        let g = bld.build();
        assert_eq!(
            g.first_return_walk(Vertex(0)),
            Some(vec![BundleId(0), BundleId(1)])
        );
        assert_eq!(g.condition_l_violation().unwrap().vertices.len(), 2);
    }
}
