//! Graph data model: vertices, edge bundles with multiplicities in ℕ ∪ {ω},
//! reachability, and the structural predicates used throughout the crate.
//!
//! A [`Graph`] has finitely many vertices but possibly countably many edges:
//! parallel edges between two vertices are grouped into a [`Bundle`] whose
//! multiplicity may be ω. Every question the engine asks about edge counts
//! reduces to `0`, a finite `n`, or ω, so this representation is exact.

mod cycles;
mod multiplicity;
mod vertex_set;

use std::collections::HashMap;
use std::fmt;

pub use cycles::{CycleCountClass, ExitlessCycle};
pub use multiplicity::{Multiplicity, ParseMultiplicityError};
pub use vertex_set::{all_subsets, subsets_of, Vertex, VertexSet, MAX_VERTICES};

use crate::error::{Error, Result};

/// Default bound on the vertex count for operations that scan all subsets
/// of the vertex set.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

/// Upper bound accepted by [`Graph::with_enumeration_limit`].
pub const MAX_ENUMERATION_LIMIT: usize = 30;

/// Index of a bundle in its graph's declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct BundleId(pub(crate) usize);

impl BundleId {
    pub fn new(index: usize) -> Self {
        BundleId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// `mult` parallel edges from `src` to `dst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub label: Option<String>,
    pub src: Vertex,
    pub dst: Vertex,
    pub mult: Multiplicity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Sink,
    InfiniteEmitter,
    Regular,
}

impl VertexKind {
    pub fn is_singular(self) -> bool {
        !matches!(self, VertexKind::Regular)
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Sink => "sink",
            VertexKind::InfiniteEmitter => "infinite emitter",
            VertexKind::Regular => "regular",
        })
    }
}

/// Partition of the vertex set into sinks, infinite emitters and regular
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClasses {
    pub kinds: Vec<VertexKind>,
    pub sinks: VertexSet,
    pub infinite_emitters: VertexSet,
    pub regular: VertexSet,
}

impl VertexClasses {
    pub fn singular(&self) -> VertexSet {
        self.sinks | self.infinite_emitters
    }
}

/// How the common lower bound in a downward-directedness check is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Directedness {
    /// The witness must lie in the set being tested. This is the reading
    /// under which a set's directedness matches that of the subgraph it
    /// spans when the set is upward closed.
    #[default]
    Strict,
    /// The witness may be any vertex of the graph.
    Ambient,
}

/// A directed graph with finitely many vertices and edge bundles.
///
/// Immutable once built; see [`GraphBuilder`].
#[derive(Clone, Debug)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    bundles: Vec<Bundle>,
    out_bundles: Vec<Vec<BundleId>>,
    succ: Vec<VertexSet>,
    pred: Vec<VertexSet>,
    /// descendants (including self)
    reach: Vec<VertexSet>,
    /// ancestors (including self), i.e. `U(v)`
    upward: Vec<VertexSet>,
    out_mult: Vec<Multiplicity>,
    /// row-major `n × n` total multiplicity between ordered pairs
    pair_mult: Vec<Multiplicity>,
    classes: VertexClasses,
    enumeration_limit: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.bundles == other.bundles
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn empty() -> Graph {
        GraphBuilder::default().build()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> {
        (0..self.names.len()).map(Vertex)
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.names.len())
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Builds a vertex set from names.
    pub fn set<'a, I>(&self, names: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().map(|n| self.vertex(n)).collect()
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn bundle(&self, id: BundleId) -> &Bundle {
        &self.bundles[id.0]
    }

    pub fn bundle_by_label(&self, label: &str) -> Option<BundleId> {
        self.bundles
            .iter()
            .position(|b| b.label.as_deref() == Some(label))
            .map(BundleId)
    }

    /// Bundles with source `v`, in declaration order.
    pub fn out_bundles(&self, v: Vertex) -> &[BundleId] {
        &self.out_bundles[v.0]
    }

    pub fn successors(&self, v: Vertex) -> VertexSet {
        self.succ[v.0]
    }

    pub fn predecessors(&self, v: Vertex) -> VertexSet {
        self.pred[v.0]
    }

    /// Total number of edges leaving `v`.
    pub fn out_multiplicity(&self, v: Vertex) -> Multiplicity {
        self.out_mult[v.0]
    }

    /// Total number of edges from `u` to `v`.
    pub fn multiplicity_between(&self, u: Vertex, v: Vertex) -> Multiplicity {
        self.pair_mult[u.0 * self.names.len() + v.0]
    }

    /// Number of edges with source `v` and range in `targets`.
    pub fn edges_into(&self, v: Vertex, targets: VertexSet) -> Multiplicity {
        self.out_bundles[v.0]
            .iter()
            .map(|&b| &self.bundles[b.0])
            .filter(|b| targets.contains(b.dst))
            .map(|b| b.mult)
            .sum()
    }

    pub fn enumeration_limit(&self) -> usize {
        self.enumeration_limit
    }

    /// Returns a copy of the graph with a different enumeration limit,
    /// clamped to [`MAX_ENUMERATION_LIMIT`].
    pub fn with_enumeration_limit(mut self, limit: usize) -> Graph {
        self.enumeration_limit = limit.min(MAX_ENUMERATION_LIMIT);
        self
    }

    /// Fails with `SizeLimitExceeded` when the graph is too large for a
    /// scan over all vertex subsets.
    pub fn check_enumerable(&self) -> Result<()> {
        if self.vertex_count() > self.enumeration_limit {
            Err(Error::SizeLimitExceeded {
                vertices: self.vertex_count(),
                limit: self.enumeration_limit,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.0 < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    pub(crate) fn check_set(&self, s: VertexSet) -> Result<()> {
        match (s - self.all()).first() {
            None => Ok(()),
            Some(v) => Err(Error::UnknownVertex(format!("#{}", v.0))),
        }
    }

    /// Renders a vertex set as `{a, b, c}` in declaration order.
    pub fn fmt_set(&self, s: VertexSet) -> String {
        let parts: Vec<&str> = s.iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn classify_vertices(&self) -> VertexClasses {
        self.classes.clone()
    }

    pub fn sinks(&self) -> VertexSet {
        self.classes.sinks
    }

    pub fn infinite_emitters(&self) -> VertexSet {
        self.classes.infinite_emitters
    }

    pub fn regular_vertices(&self) -> VertexSet {
        self.classes.regular
    }

    pub fn kind(&self, v: Vertex) -> VertexKind {
        self.classes.kinds[v.0]
    }

    pub fn is_singular(&self, v: Vertex) -> bool {
        self.kind(v).is_singular()
    }

    /// `u ≥ v`: there is a path (possibly of length zero) from `u` to `v`.
    pub fn reaches(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.reach[u.0].contains(v))
    }

    /// Vertices reachable from `v`, including `v`.
    pub fn descendants(&self, v: Vertex) -> VertexSet {
        self.reach[v.0]
    }

    /// `U(v)`: vertices that reach `v`, including `v`.
    pub fn upward_of(&self, v: Vertex) -> VertexSet {
        self.upward[v.0]
    }

    /// `U(S)`: vertices that reach some member of `s`.
    pub fn upward_set(&self, s: VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(self.upward_unchecked(s))
    }

    pub(crate) fn upward_unchecked(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc | self.upward[v.0])
    }

    /// A pair of members of `w` without a common lower bound, if any.
    pub fn directedness_violation(
        &self,
        w: VertexSet,
        mode: Directedness,
    ) -> Option<(Vertex, Vertex)> {
        let scope = match mode {
            Directedness::Strict => w,
            Directedness::Ambient => self.all(),
        };
        let members: Vec<Vertex> = w.iter().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if !(self.reach[u.0] & self.reach[v.0]).intersects(scope) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Strict downward directedness of `w` (see [`Directedness::Strict`]).
    pub fn is_downward_directed(&self, w: VertexSet) -> bool {
        self.directedness_violation(w, Directedness::Strict)
            .is_none()
    }

    /// Countable Separation Property relative to `w`. Always holds for a
    /// finite vertex set; the returned witness `S ⊆ w` is minimal, found by
    /// dropping members in declaration order while `w ⊆ U(S)` survives.
    pub fn has_csp(&self, w: VertexSet) -> (bool, VertexSet) {
        let mut witness = w;
        for v in w.iter() {
            let trial = witness.without(v);
            if w.is_subset(self.upward_unchecked(trial)) {
                witness = trial;
            }
        }
        (true, witness)
    }
}

/// Incremental constructor for [`Graph`].
///
/// Unlabeled bundles between the same ordered pair are merged by saturating
/// addition; labels must be unique.
#[derive(Debug)]
pub struct GraphBuilder {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    bundles: Vec<Bundle>,
    labels: HashMap<String, BundleId>,
    unlabeled: HashMap<(Vertex, Vertex), BundleId>,
    enumeration_limit: usize,
}

impl Default for GraphBuilder {
    fn default() -> Self {
        GraphBuilder {
            names: Vec::new(),
            index: HashMap::new(),
            bundles: Vec::new(),
            labels: HashMap::new(),
            unlabeled: HashMap::new(),
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

impl GraphBuilder {
    pub fn vertex(&mut self, name: impl Into<String>) -> Result<Vertex> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        if self.names.len() == MAX_VERTICES {
            return Err(Error::SizeLimitExceeded {
                vertices: MAX_VERTICES + 1,
                limit: MAX_VERTICES,
            });
        }
        let v = Vertex(self.names.len());
        self.index.insert(name.clone(), v);
        self.names.push(name);
        Ok(v)
    }

    /// Adds several vertices; convenient for fixtures.
    pub fn vertices<I, S>(&mut self, names: I) -> Result<Vec<Vertex>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        names.into_iter().map(|n| self.vertex(n)).collect()
    }

    pub fn lookup(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).copied()
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.labels.contains_key(label)
    }

    pub fn bundle(
        &mut self,
        label: Option<&str>,
        src: Vertex,
        dst: Vertex,
        mult: Multiplicity,
    ) -> Result<BundleId> {
        for v in [src, dst] {
            if v.0 >= self.names.len() {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
        }
        if mult.is_zero() {
            return Err(Error::ZeroMultiplicity);
        }
        match label {
            Some(label) => {
                if self.labels.contains_key(label) {
                    return Err(Error::DuplicateLabel(label.to_string()));
                }
                let id = BundleId(self.bundles.len());
                self.labels.insert(label.to_string(), id);
                self.bundles.push(Bundle {
                    label: Some(label.to_string()),
                    src,
                    dst,
                    mult,
                });
                Ok(id)
            }
            None => {
                if let Some(&id) = self.unlabeled.get(&(src, dst)) {
                    let b = &mut self.bundles[id.0];
                    b.mult = b.mult + mult;
                    return Ok(id);
                }
                let id = BundleId(self.bundles.len());
                self.unlabeled.insert((src, dst), id);
                self.bundles.push(Bundle {
                    label: None,
                    src,
                    dst,
                    mult,
                });
                Ok(id)
            }
        }
    }

    /// Name-based variant of [`bundle`](Self::bundle).
    pub fn edge(
        &mut self,
        label: Option<&str>,
        src: &str,
        dst: &str,
        mult: Multiplicity,
    ) -> Result<BundleId> {
        let s = self
            .lookup(src)
            .ok_or_else(|| Error::UnknownVertex(src.to_string()))?;
        let d = self
            .lookup(dst)
            .ok_or_else(|| Error::UnknownVertex(dst.to_string()))?;
        self.bundle(label, s, d, mult)
    }

    pub fn enumeration_limit(&mut self, limit: usize) -> &mut Self {
        self.enumeration_limit = limit.min(MAX_ENUMERATION_LIMIT);
        self
    }

    pub fn build(self) -> Graph {
        let n = self.names.len();
        let mut out_bundles = vec![Vec::new(); n];
        let mut succ = vec![VertexSet::EMPTY; n];
        let mut pred = vec![VertexSet::EMPTY; n];
        let mut out_mult = vec![Multiplicity::ZERO; n];
        let mut pair_mult = vec![Multiplicity::ZERO; n * n];
        for (i, b) in self.bundles.iter().enumerate() {
            out_bundles[b.src.0].push(BundleId(i));
            succ[b.src.0].insert(b.dst);
            pred[b.dst.0].insert(b.src);
            out_mult[b.src.0] = out_mult[b.src.0] + b.mult;
            let cell = &mut pair_mult[b.src.0 * n + b.dst.0];
            *cell = *cell + b.mult;
        }
        let reach = closure_under(&succ);
        let upward = closure_under(&pred);
        let classes = classes_from(&out_mult);
        Graph {
            names: self.names,
            index: self.index,
            bundles: self.bundles,
            out_bundles,
            succ,
            pred,
            reach,
            upward,
            out_mult,
            pair_mult,
            classes,
            enumeration_limit: self.enumeration_limit,
        }
    }
}

fn classes_from(out_mult: &[Multiplicity]) -> VertexClasses {
    let kinds: Vec<VertexKind> = out_mult
        .iter()
        .map(|&m| match m {
            Multiplicity::Omega => VertexKind::InfiniteEmitter,
            m if m.is_zero() => VertexKind::Sink,
            _ => VertexKind::Regular,
        })
        .collect();
    let pick = |k: VertexKind| {
        kinds
            .iter()
            .enumerate()
            .filter(|(_, &kind)| kind == k)
            .map(|(i, _)| Vertex(i))
            .collect::<VertexSet>()
    };
    VertexClasses {
        sinks: pick(VertexKind::Sink),
        infinite_emitters: pick(VertexKind::InfiniteEmitter),
        regular: pick(VertexKind::Regular),
        kinds,
    }
}

/// Reflexive-transitive closure of an adjacency relation, one BFS per vertex.
fn closure_under(adj: &[VertexSet]) -> Vec<VertexSet> {
    (0..adj.len())
        .map(|start| {
            let mut seen = VertexSet::singleton(Vertex(start));
            let mut frontier = seen;
            while !frontier.is_empty() {
                let next = frontier
                    .iter()
                    .fold(VertexSet::EMPTY, |acc, v| acc | adj[v.0]);
                frontier = next - seen;
                seen = seen | next;
            }
            seen
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{ea_graph, running_example};

    fn three_vertex_fork() -> Graph {
        // a <- b -> c
        let mut b = Graph::builder();
        b.vertices(["a", "b", "c"]).unwrap();
        b.edge(None, "b", "a", Multiplicity::ONE).unwrap();
        b.edge(None, "b", "c", Multiplicity::ONE).unwrap();
        b.build()
    }

    #[test]
    fn running_example_vertex_classes() {
        let g = running_example().graph;
        let c = g.classify_vertices();
        assert_eq!(c.sinks, g.set(["t"]).unwrap());
        assert_eq!(c.infinite_emitters, g.set(["u", "w", "x"]).unwrap());
        assert_eq!(c.regular, g.set(["v", "y", "z"]).unwrap());
    }

    #[test]
    fn isolated_vertex_is_a_sink() {
        let mut b = Graph::builder();
        let v = b.vertex("v").unwrap();
        let g = b.build();
        assert_eq!(g.kind(v), VertexKind::Sink);
    }

    #[test]
    fn ea_surrogate_has_only_infinite_emitters_and_one_terminal_sink() {
        let g = ea_graph(&["a", "b", "c"], Multiplicity::Omega).unwrap();
        let c = g.classify_vertices();
        assert_eq!(c.sinks, g.set(["v_a_b_c"]).unwrap());
        assert_eq!(c.infinite_emitters, g.all() - c.sinks);
    }

    #[test]
    fn reachability_examples() {
        let g = running_example().graph;
        let v = |n| g.vertex(n).unwrap();
        assert!(g.reaches(v("u"), v("t")).unwrap());
        assert!(!g.reaches(v("y"), v("w")).unwrap());
        for x in g.vertices() {
            assert!(g.reaches(x, x).unwrap());
        }
        assert!(matches!(
            g.reaches(Vertex(99), v("t")),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn upward_set_examples() {
        let g = running_example().graph;
        assert_eq!(
            g.upward_set(g.set(["t"]).unwrap()).unwrap(),
            g.set(["t", "u", "v", "w", "x"]).unwrap()
        );
        assert_eq!(g.upward_set(VertexSet::EMPTY).unwrap(), VertexSet::EMPTY);

        let ea = ea_graph(&["a", "b"], Multiplicity::Omega).unwrap();
        assert_eq!(ea.upward_set(ea.set(["v_a_b"]).unwrap()).unwrap(), ea.all());
        assert_eq!(
            ea.upward_set(ea.set(["v_a"]).unwrap()).unwrap(),
            ea.set(["v_a"]).unwrap()
        );
        assert!(ea.upward_set(VertexSet::from_bits(1 << 40)).is_err());
    }

    #[test]
    fn directedness_examples() {
        let ea = ea_graph(&["a", "b", "c"], Multiplicity::Omega).unwrap();
        assert!(ea.is_downward_directed(ea.all()));

        let fork = three_vertex_fork();
        let violation = fork.directedness_violation(fork.all(), Directedness::Strict);
        assert_eq!(violation, Some((Vertex(0), Vertex(2))));

        assert!(fork.is_downward_directed(VertexSet::singleton(Vertex(1))));
        assert!(fork.is_downward_directed(VertexSet::EMPTY));
    }

    #[test]
    fn strict_and_ambient_readings_differ_off_upward_closed_sets() {
        let g = ea_graph(&["a", "b"], Multiplicity::Omega).unwrap();
        let w = g.set(["v_a", "v_b"]).unwrap();
        assert!(!g.is_downward_directed(w));
        assert!(g.directedness_violation(w, Directedness::Ambient).is_none());
    }

    #[test]
    fn csp_witness_is_minimal() {
        let g = running_example().graph;
        let (ok, witness) = g.has_csp(g.all());
        assert!(ok);
        assert!(witness.is_subset(g.set(["t", "w", "z"]).unwrap()));
        assert_eq!(g.upward_set(witness).unwrap(), g.all());
        for v in witness {
            assert_ne!(g.upward_set(witness.without(v)).unwrap(), g.all());
        }
        assert_eq!(g.has_csp(VertexSet::EMPTY), (true, VertexSet::EMPTY));
    }

    #[test]
    fn unlabeled_duplicates_merge_and_labels_stay_unique() {
        let mut b = Graph::builder();
        b.vertices(["a", "b"]).unwrap();
        b.edge(None, "a", "b", Multiplicity::ONE).unwrap();
        b.edge(None, "a", "b", Multiplicity::Finite(2)).unwrap();
        b.edge(Some("f"), "a", "b", Multiplicity::ONE).unwrap();
        assert_eq!(
            b.edge(Some("f"), "b", "a", Multiplicity::ONE),
            Err(Error::DuplicateLabel("f".into()))
        );
        assert_eq!(b.vertex("a"), Err(Error::DuplicateVertex("a".into())));
        assert_eq!(
            b.edge(None, "a", "b", Multiplicity::ZERO),
            Err(Error::ZeroMultiplicity)
        );
        let g = b.build();
        assert_eq!(g.bundles().len(), 2);
        assert_eq!(g.bundles()[0].mult, Multiplicity::Finite(3));
        let (a, bb) = (g.vertex("a").unwrap(), g.vertex("b").unwrap());
        assert_eq!(g.multiplicity_between(a, bb), Multiplicity::Finite(4));
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let mut b = Graph::builder();
        for i in 0..5 {
            b.vertex(format!("v{i}")).unwrap();
        }
        let g = b.build().with_enumeration_limit(4);
        assert_eq!(
            g.check_enumerable(),
            Err(Error::SizeLimitExceeded {
                vertices: 5,
                limit: 4
            })
        );
    }
}
