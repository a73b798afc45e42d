//! Maximal tails, clusters of maximal tails, boundary paths and
//! finite-return vertices.
//!
//! A set of vertices is classified through four axioms:
//!
//! * MT1: upward closed under `≥`;
//! * MT2: every regular member emits an edge back into the set;
//! * MT3: downward directed (strict reading, witness inside the set);
//! * MT4: countable separation, automatic for finite vertex sets.
//!
//! MT1 ∧ MT2 characterizes unions of maximal tails, adding MT3 gives
//! clusters, and adding MT4 gives maximal tails. The empty set satisfies all
//! four vacuously but is excluded from [`maximal_tails`] and [`clusters`],
//! since every tail contains the source of its path.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{all_subsets, BundleId, Graph, Multiplicity, Vertex, VertexSet};

/// Outcome of the four MT axioms on a vertex set, with witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MtReport {
    /// `(v, w)` with `w` in the set, `v ≥ w`, `v` outside.
    pub mt1_violation: Option<(Vertex, Vertex)>,
    /// A regular member whose edges all leave the set.
    pub mt2_violation: Option<Vertex>,
    /// Two members with no common lower bound in the set.
    pub mt3_violation: Option<(Vertex, Vertex)>,
    /// Minimal countable separating set.
    pub mt4_witness: VertexSet,
}

impl MtReport {
    pub fn mt1(&self) -> bool {
        self.mt1_violation.is_none()
    }

    pub fn mt2(&self) -> bool {
        self.mt2_violation.is_none()
    }

    pub fn mt3(&self) -> bool {
        self.mt3_violation.is_none()
    }

    pub fn mt4(&self) -> bool {
        true
    }

    pub fn all(&self) -> bool {
        self.mt1() && self.mt2() && self.mt3() && self.mt4()
    }
}

fn mt1_violation(g: &Graph, w: VertexSet) -> Option<(Vertex, Vertex)> {
    w.iter()
        .find_map(|m| (g.upward_of(m) - w).first().map(|outside| (outside, m)))
}

fn mt2_violation(g: &Graph, w: VertexSet) -> Option<Vertex> {
    let regular = g.regular_vertices();
    (w & regular)
        .iter()
        .find(|&v| !g.successors(v).intersects(w))
}

/// Evaluates MT1–MT4 on `w`.
pub fn mt_report(g: &Graph, w: VertexSet) -> Result<MtReport> {
    g.check_set(w)?;
    Ok(MtReport {
        mt1_violation: mt1_violation(g, w),
        mt2_violation: mt2_violation(g, w),
        mt3_violation: g.directedness_violation(w, Default::default()),
        mt4_witness: g.has_csp(w).1,
    })
}

/// MT1 ∧ MT2. True for the empty set.
pub fn is_union_of_maximal_tails(g: &Graph, w: VertexSet) -> Result<bool> {
    g.check_set(w)?;
    Ok(mt1_violation(g, w).is_none() && mt2_violation(g, w).is_none())
}

fn is_cluster(g: &Graph, w: VertexSet) -> bool {
    !w.is_empty()
        && mt1_violation(g, w).is_none()
        && mt2_violation(g, w).is_none()
        && g.is_downward_directed(w)
}

/// Nonempty sets satisfying MT1–MT3, in canonical order.
pub fn clusters(g: &Graph) -> Result<Vec<VertexSet>> {
    g.check_enumerable()?;
    Ok(all_subsets(g.vertex_count())
        .filter(|&w| is_cluster(g, w))
        .collect())
}

/// Nonempty sets satisfying MT1–MT4, in canonical order.
pub fn maximal_tails(g: &Graph) -> Result<Vec<VertexSet>> {
    g.check_enumerable()?;
    Ok(all_subsets(g.vertex_count())
        .filter(|&w| is_cluster(g, w) && g.has_csp(w).0)
        .collect())
}

/// Whether `w` is a maximal tail, without enumerating.
pub fn is_maximal_tail(g: &Graph, w: VertexSet) -> Result<bool> {
    Ok(!w.is_empty() && mt_report(g, w)?.all())
}

/// Whether `w` is a cluster of maximal tails, without enumerating.
pub fn is_cluster_of_maximal_tails(g: &Graph, w: VertexSet) -> Result<bool> {
    g.check_set(w)?;
    Ok(is_cluster(g, w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryPathKind {
    /// A finite path ending at a singular vertex (possibly of length zero).
    Finite { steps: Vec<BundleId> },
    /// `prefix` followed by `cycle` repeated forever.
    EventuallyPeriodic {
        prefix: Vec<BundleId>,
        cycle: Vec<BundleId>,
    },
}

/// A boundary path of a finite-vertex graph. Infinite paths are stored as
/// eventually periodic ones; the tail of a path only depends on the set of
/// vertices it visits, and every such set arises from an eventually periodic
/// path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPath {
    pub start: Vertex,
    pub kind: BoundaryPathKind,
    vertex_trace: VertexSet,
}

impl BoundaryPath {
    /// Validates a finite path: consecutive bundles connect, and the range
    /// is singular.
    pub fn finite(g: &Graph, start: Vertex, steps: Vec<BundleId>) -> Result<Self> {
        g.check_vertex(start)?;
        let (end, trace) = follow(g, start, &steps)?;
        if !g.is_singular(end) {
            return Err(Error::InvalidPath(format!(
                "finite path ends at regular vertex `{}`",
                g.name(end)
            )));
        }
        Ok(BoundaryPath {
            start,
            kind: BoundaryPathKind::Finite { steps },
            vertex_trace: trace,
        })
    }

    /// Validates `prefix · cycle^∞`.
    pub fn eventually_periodic(
        g: &Graph,
        start: Vertex,
        prefix: Vec<BundleId>,
        cycle: Vec<BundleId>,
    ) -> Result<Self> {
        g.check_vertex(start)?;
        if cycle.is_empty() {
            return Err(Error::InvalidPath("empty cycle".into()));
        }
        let (mid, head) = follow(g, start, &prefix)?;
        let (end, tail) = follow(g, mid, &cycle)?;
        if end != mid {
            return Err(Error::InvalidPath(format!(
                "cycle starts at `{}` but ends at `{}`",
                g.name(mid),
                g.name(end)
            )));
        }
        Ok(BoundaryPath {
            start,
            kind: BoundaryPathKind::EventuallyPeriodic { prefix, cycle },
            vertex_trace: head | tail,
        })
    }

    /// The set of vertices the path visits.
    pub fn vertex_trace(&self) -> VertexSet {
        self.vertex_trace
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, BoundaryPathKind::Finite { .. })
    }

    /// Renders the path by bundle labels, falling back to `src->dst`.
    pub fn describe(&self, g: &Graph) -> String {
        let step = |b: &BundleId| {
            let bundle = g.bundle(*b);
            bundle
                .label
                .clone()
                .unwrap_or_else(|| format!("({}->{})", g.name(bundle.src), g.name(bundle.dst)))
        };
        match &self.kind {
            BoundaryPathKind::Finite { steps } if steps.is_empty() => {
                g.name(self.start).to_string()
            }
            BoundaryPathKind::Finite { steps } => {
                steps.iter().map(step).collect::<Vec<_>>().join(" ")
            }
            BoundaryPathKind::EventuallyPeriodic { prefix, cycle } => {
                let head: Vec<String> = prefix.iter().map(step).collect();
                let rep: Vec<String> = cycle.iter().map(step).collect();
                let mut out = head.join(" ");
                if !out.is_empty() {
                    out.push(' ');
                }
                out.push_str(&format!("({})^∞", rep.join(" ")));
                out
            }
        }
    }
}

fn follow(g: &Graph, start: Vertex, steps: &[BundleId]) -> Result<(Vertex, VertexSet)> {
    let mut at = start;
    let mut trace = VertexSet::singleton(start);
    for &b in steps {
        if b.index() >= g.bundles().len() {
            return Err(Error::InvalidPath(format!("unknown bundle #{}", b.index())));
        }
        let bundle = g.bundle(b);
        if bundle.src != at {
            return Err(Error::InvalidPath(format!(
                "bundle #{} leaves `{}`, expected `{}`",
                b.index(),
                g.name(bundle.src),
                g.name(at)
            )));
        }
        at = bundle.dst;
        trace.insert(at);
    }
    Ok((at, trace))
}

/// `T_α = U(α⁰)`.
pub fn tail_of_boundary(g: &Graph, path: &BoundaryPath) -> Result<VertexSet> {
    g.check_set(path.vertex_trace)?;
    Ok(g.upward_unchecked(path.vertex_trace))
}

/// Constructs a boundary path whose tail is `w`.
///
/// Takes the separating set `x₁, x₂, …` of `w`, builds a descending chain
/// `v₁ ≥ v₂ ≥ …` inside `w` with `x_k ≥ v_{k+1}` (MT3 supplies each link),
/// joins consecutive links by shortest paths, and then extends along edges
/// into `w` (MT2) until the walk reaches a singular vertex or repeats.
pub fn realize_as_tail(g: &Graph, w: VertexSet) -> Result<BoundaryPath> {
    let report = mt_report(g, w)?;
    if w.is_empty() || !report.all() {
        return Err(Error::NotAMaximalTail(g.fmt_set(w)));
    }
    let start = w.first().expect("nonempty");
    let mut steps: Vec<BundleId> = Vec::new();
    let mut at = start;
    for x in report.mt4_witness {
        let common = g.descendants(x) & g.descendants(at) & w;
        let next = common.first().expect("MT3 supplies a common lower bound");
        steps.extend(shortest_path(g, at, next));
        at = next;
    }

    let mut seen_at: HashMap<Vertex, usize> = HashMap::new();
    loop {
        if g.is_singular(at) {
            return BoundaryPath::finite(g, start, steps);
        }
        seen_at.insert(at, steps.len());
        let b = g
            .out_bundles(at)
            .iter()
            .copied()
            .find(|&b| w.contains(g.bundle(b).dst))
            .expect("MT2 supplies an edge back into the set");
        steps.push(b);
        at = g.bundle(b).dst;
        if let Some(&pos) = seen_at.get(&at) {
            let cycle = steps.split_off(pos);
            return BoundaryPath::eventually_periodic(g, start, steps, cycle);
        }
    }
}

/// Shortest bundle path from `from` to `to` (BFS, earliest bundle first).
fn shortest_path(g: &Graph, from: Vertex, to: Vertex) -> Vec<BundleId> {
    if from == to {
        return Vec::new();
    }
    let mut parent: Vec<Option<BundleId>> = vec![None; g.vertex_count()];
    let mut seen = VertexSet::singleton(from);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(at) = queue.pop_front() {
        for &b in g.out_bundles(at) {
            let d = g.bundle(b).dst;
            if !seen.contains(d) {
                seen.insert(d);
                parent[d.index()] = Some(b);
                if d == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    while cur != from {
                        let b = parent[cur.index()].expect("bfs parent");
                        path.push(b);
                        cur = g.bundle(b).src;
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(d);
            }
        }
    }
    unreachable!("caller guarantees `from` reaches `to`")
}

/// Number of edges leaving `v` whose range can reach `v` again.
pub fn return_edge_count(g: &Graph, v: Vertex) -> Multiplicity {
    g.edges_into(v, g.upward_of(v))
}

/// Infinite emitters with a positive, finite number of return edges.
pub fn finite_return_vertices(g: &Graph) -> VertexSet {
    g.infinite_emitters()
        .iter()
        .filter(|&v| return_edge_count(g, v).is_finite_positive())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{ea_graph, running_example};

    fn fork() -> Graph {
        let mut b = Graph::builder();
        b.vertices(["a", "b", "c"]).unwrap();
        b.edge(None, "b", "a", Multiplicity::ONE).unwrap();
        b.edge(None, "b", "c", Multiplicity::ONE).unwrap();
        b.build()
    }

    #[test]
    fn mt_report_examples() {
        let g = running_example().graph;
        assert!(mt_report(&g, VertexSet::EMPTY).unwrap().all());

        let t2 = g.set(["u", "v", "w", "x"]).unwrap();
        assert!(mt_report(&g, t2).unwrap().all());

        let wx = g.set(["w", "x"]).unwrap();
        let r = mt_report(&g, wx).unwrap();
        assert!(!r.mt1());
        let (outside, inside) = r.mt1_violation.unwrap();
        assert!(!wx.contains(outside) && wx.contains(inside));
        assert!(g.reaches(outside, inside).unwrap());
    }

    #[test]
    fn running_example_has_four_tails() {
        let fx = running_example();
        let g = &fx.graph;
        let mut expected = fx.expected.tails.to_vec();
        expected.sort();
        assert_eq!(maximal_tails(g).unwrap(), expected);
        assert_eq!(clusters(g).unwrap(), expected);
    }

    #[test]
    fn single_sink_has_one_tail() {
        let mut b = Graph::builder();
        b.vertex("v").unwrap();
        let g = b.build();
        assert_eq!(maximal_tails(&g).unwrap(), vec![VertexSet::from_bits(1)]);
    }

    #[test]
    fn ea_pair_has_three_tails() {
        let g = ea_graph(&["a", "b"], Multiplicity::Omega).unwrap();
        let tails = maximal_tails(&g).unwrap();
        assert_eq!(
            tails,
            vec![g.set(["v_a"]).unwrap(), g.set(["v_b"]).unwrap(), g.all()]
        );
    }

    #[test]
    fn fork_is_a_union_but_not_a_cluster() {
        let g = fork();
        assert!(is_union_of_maximal_tails(&g, g.all()).unwrap());
        assert!(!clusters(&g).unwrap().contains(&g.all()));
        assert!(is_union_of_maximal_tails(&g, VertexSet::EMPTY).unwrap());
    }

    #[test]
    fn yz_is_not_a_union() {
        let g = running_example().graph;
        let yz = g.set(["y", "z"]).unwrap();
        assert!(!is_union_of_maximal_tails(&g, yz).unwrap());
        let (outside, _) = mt_report(&g, yz).unwrap().mt1_violation.unwrap();
        assert!(!yz.contains(outside));
    }

    #[test]
    fn tails_of_named_boundary_paths() {
        let g = running_example().graph;
        let v = |n| g.vertex(n).unwrap();

        let at_w = BoundaryPath::finite(&g, v("w"), vec![]).unwrap();
        assert_eq!(tail_of_boundary(&g, &at_w).unwrap(), g.set(["w"]).unwrap());

        let e = g.bundle_by_label("e").unwrap();
        let eee = BoundaryPath::eventually_periodic(&g, v("z"), vec![], vec![e]).unwrap();
        assert_eq!(
            tail_of_boundary(&g, &eee).unwrap(),
            g.set(["u", "v", "w", "x", "y", "z"]).unwrap()
        );

        let at_x = BoundaryPath::finite(&g, v("x"), vec![]).unwrap();
        assert_eq!(
            tail_of_boundary(&g, &at_x).unwrap(),
            g.set(["u", "v", "w", "x"]).unwrap()
        );

        let f = g.bundle_by_label("f").unwrap();
        let fff = BoundaryPath::eventually_periodic(&g, v("x"), vec![], vec![f]).unwrap();
        assert_eq!(
            tail_of_boundary(&g, &fff).unwrap(),
            g.set(["u", "v", "w", "x"]).unwrap()
        );
    }

    #[test]
    fn invalid_paths_are_rejected() {
        let g = running_example().graph;
        let v = |n| g.vertex(n).unwrap();
        // y is regular
        assert!(matches!(
            BoundaryPath::finite(&g, v("y"), vec![]),
            Err(Error::InvalidPath(_))
        ));
        // d is a loop at z, not at x
        let d = g.bundle_by_label("d").unwrap();
        assert!(matches!(
            BoundaryPath::eventually_periodic(&g, v("x"), vec![], vec![d]),
            Err(Error::InvalidPath(_))
        ));
        assert!(matches!(
            BoundaryPath::eventually_periodic(&g, v("z"), vec![], vec![]),
            Err(Error::InvalidPath(_))
        ));
    }

    #[test]
    fn realization_examples() {
        let g = running_example().graph;
        let t3 = g.set(["w"]).unwrap();
        let p = realize_as_tail(&g, t3).unwrap();
        assert_eq!(p.start, g.vertex("w").unwrap());
        assert_eq!(p.kind, BoundaryPathKind::Finite { steps: vec![] });

        let t2 = g.set(["u", "v", "w", "x"]).unwrap();
        let p = realize_as_tail(&g, t2).unwrap();
        assert_eq!(tail_of_boundary(&g, &p).unwrap(), t2);

        let t4 = g.set(["u", "v", "w", "x", "y", "z"]).unwrap();
        let p = realize_as_tail(&g, t4).unwrap();
        assert!(!p.is_finite());
        assert_eq!(tail_of_boundary(&g, &p).unwrap(), t4);

        assert!(matches!(
            realize_as_tail(&g, g.set(["w", "x"]).unwrap()),
            Err(Error::NotAMaximalTail(_))
        ));
        assert!(matches!(
            realize_as_tail(&g, VertexSet::EMPTY),
            Err(Error::NotAMaximalTail(_))
        ));

        let ea = ea_graph(&["a"], Multiplicity::Omega).unwrap();
        let p = realize_as_tail(&ea, ea.all()).unwrap();
        assert_eq!(p.kind, BoundaryPathKind::Finite { steps: vec![] });
    }

    #[test]
    fn finite_return_examples() {
        let g = running_example().graph;
        assert_eq!(finite_return_vertices(&g), g.set(["x"]).unwrap());
        let x = g.vertex("x").unwrap();
        assert_eq!(return_edge_count(&g, x), Multiplicity::Finite(2));

        let ea = ea_graph(&["a", "b", "c"], Multiplicity::Omega).unwrap();
        assert!(finite_return_vertices(&ea).is_empty());

        // v ⇒∞ w, a loop at v and a loop at w
        let mut b = Graph::builder();
        b.vertices(["v", "w"]).unwrap();
        b.edge(None, "v", "w", Multiplicity::Omega).unwrap();
        b.edge(None, "v", "v", Multiplicity::ONE).unwrap();
        b.edge(None, "w", "w", Multiplicity::ONE).unwrap();
        let g = b.build();
        assert_eq!(finite_return_vertices(&g), g.set(["v"]).unwrap());
        assert!(clusters(&g).unwrap().contains(&g.set(["v"]).unwrap()));
    }
}
