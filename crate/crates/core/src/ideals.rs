//! Saturated hereditary sets, breaking vertices, admissible pairs and the
//! prime/primitive classification of the ideals they name.
//!
//! Under Condition (K) every ideal of the graph algebra is `I_(H,S)` for a
//! unique admissible pair `(H, S)`, so the ideal lattice is computed entirely
//! on vertex sets. Two classifiers are provided: [`classify_ideal`] reads the
//! answer off the tail structure of `E⁰ ∖ H`, and [`classify_via_quotient`]
//! builds the quotient graph and tests primeness there. They are meant to
//! agree on every input.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{all_subsets, subsets_of, BundleId, Graph, Multiplicity, Vertex, VertexSet};
use crate::tails;

/// A bundle with source in `H` and range outside it.
pub fn hereditary_violation(g: &Graph, h: VertexSet) -> Option<BundleId> {
    h.iter().find_map(|v| {
        g.out_bundles(v)
            .iter()
            .copied()
            .find(|&b| !h.contains(g.bundle(b).dst))
    })
}

pub fn is_hereditary(g: &Graph, h: VertexSet) -> bool {
    hereditary_violation(g, h).is_none()
}

/// A regular vertex outside `H` all of whose edges land in `H`.
pub fn saturation_violation(g: &Graph, h: VertexSet) -> Option<Vertex> {
    let regular = g.regular_vertices();
    (regular - h).iter().find(|&v| g.successors(v).is_subset(h))
}

pub fn is_saturated(g: &Graph, h: VertexSet) -> bool {
    saturation_violation(g, h).is_none()
}

pub fn is_saturated_hereditary(g: &Graph, h: VertexSet) -> bool {
    is_hereditary(g, h) && is_saturated(g, h)
}

/// All saturated hereditary sets in canonical order, including `∅` and `E⁰`.
pub fn saturated_hereditary_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    g.check_enumerable()?;
    Ok(all_subsets(g.vertex_count())
        .filter(|&h| is_saturated_hereditary(g, h))
        .collect())
}

/// Breaking vertices without the saturated-hereditary precondition check.
pub(crate) fn breaking_unchecked(g: &Graph, h: VertexSet) -> VertexSet {
    let outside = g.all() - h;
    g.infinite_emitters()
        .iter()
        .filter(|&v| g.edges_into(v, outside).is_finite_positive())
        .collect()
}

/// `B_H`: infinite emitters with a positive, finite number of edges leaving
/// `H`. Edges are counted individually (a bundle contributes its
/// multiplicity).
pub fn breaking_vertices(g: &Graph, h: VertexSet) -> Result<VertexSet> {
    g.check_set(h)?;
    if !is_saturated_hereditary(g, h) {
        return Err(Error::NotSaturatedHereditary(g.fmt_set(h)));
    }
    Ok(breaking_unchecked(g, h))
}

/// A vertex on which counting edges and counting distinct range vertices
/// give different verdicts about membership in `B_H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BreakingDiscrepancy {
    pub vertex: Vertex,
    pub edges_leaving: Multiplicity,
    pub ranges_leaving: usize,
}

/// Singular vertices where the edge count and the range-vertex count of
/// edges leaving `H` disagree on breaking status. This happens exactly when
/// an ω-bundle leaves `H`.
pub fn breaking_count_discrepancies(g: &Graph, h: VertexSet) -> Vec<BreakingDiscrepancy> {
    let outside = g.all() - h;
    g.vertices()
        .filter(|&v| g.is_singular(v))
        .filter_map(|v| {
            let edges = g.edges_into(v, outside);
            let ranges = (g.successors(v) & outside).len();
            let by_edges = edges.is_finite_positive();
            let by_ranges = ranges > 0;
            (by_edges != by_ranges).then_some(BreakingDiscrepancy {
                vertex: v,
                edges_leaving: edges,
                ranges_leaving: ranges,
            })
        })
        .collect()
}

/// A saturated hereditary set `H` with a set `S ⊆ B_H` of breaking
/// vertices; names the gauge-invariant ideal `I_(H,S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    h: VertexSet,
    s: VertexSet,
}

impl AdmissiblePair {
    pub fn new(g: &Graph, h: VertexSet, s: VertexSet) -> Result<Self> {
        g.check_set(h)?;
        g.check_set(s)?;
        if !is_saturated_hereditary(g, h) || !s.is_subset(breaking_unchecked(g, h)) {
            return Err(Error::NotAdmissible {
                h: g.fmt_set(h),
                s: g.fmt_set(s),
            });
        }
        Ok(AdmissiblePair { h, s })
    }

    /// Skips validation; for pairs produced by the engine itself.
    pub(crate) fn trusted(h: VertexSet, s: VertexSet) -> Self {
        AdmissiblePair { h, s }
    }

    /// `(∅, ∅)`, the zero ideal.
    pub fn zero() -> Self {
        AdmissiblePair {
            h: VertexSet::EMPTY,
            s: VertexSet::EMPTY,
        }
    }

    /// `(E⁰, ∅)`, the whole algebra.
    pub fn whole(g: &Graph) -> Self {
        AdmissiblePair {
            h: g.all(),
            s: VertexSet::EMPTY,
        }
    }

    pub fn h(&self) -> VertexSet {
        self.h
    }

    pub fn s(&self) -> VertexSet {
        self.s
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        PairDisplay { pair: self, g }
    }
}

struct PairDisplay<'a> {
    pair: &'a AdmissiblePair,
    g: &'a Graph,
}

impl fmt::Display for PairDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.g.fmt_set(self.pair.h),
            self.g.fmt_set(self.pair.s)
        )
    }
}

/// Every admissible pair, ordered by `H` then `S` (bitmask order).
///
/// Without Condition (K) this is only the gauge-invariant part of the ideal
/// lattice; callers that care should check [`Graph::condition_k`].
pub fn admissible_pairs(g: &Graph) -> Result<Vec<AdmissiblePair>> {
    let mut out = Vec::new();
    for h in saturated_hereditary_sets(g)? {
        let b = breaking_unchecked(g, h);
        out.extend(subsets_of(b).map(|s| AdmissiblePair { h, s }));
    }
    Ok(out)
}

/// Intersection of ideals: `H = ⋂ H_j`, `S = (⋂ (H_j ∪ S_j)) ∩ B_H`.
/// The empty intersection is the whole algebra `(E⁰, ∅)`.
pub fn meet<'a, I>(g: &Graph, pairs: I) -> AdmissiblePair
where
    I: IntoIterator<Item = &'a AdmissiblePair>,
{
    let mut h = g.all();
    let mut hs = g.all();
    for p in pairs {
        h = h & p.h;
        hs = hs & (p.h | p.s);
    }
    AdmissiblePair {
        h,
        s: hs & breaking_unchecked(g, h),
    }
}

/// Ideal containment `I_P ⊆ I_Q`, defined as `meet(P, Q) = P`.
pub fn ideal_leq(g: &Graph, p: &AdmissiblePair, q: &AdmissiblePair) -> bool {
    meet(g, [p, q]) == *p
}

/// The graph `E ∖ (H, S)` whose algebra is the quotient by `I_(H,S)`.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub graph: Graph,
    /// For each kept breaking vertex `v ∈ B_H ∖ S`: `(v in E, v′ in quotient)`.
    pub primed: Vec<(Vertex, Vertex)>,
    /// For each quotient vertex, the vertex of `E` it comes from.
    pub vertex_origin: Vec<Vertex>,
    /// For each quotient bundle, the bundle of `E` it copies.
    pub provenance: Vec<BundleId>,
}

impl QuotientGraph {
    pub fn primed_sinks(&self) -> VertexSet {
        self.primed.iter().map(|&(_, q)| q).collect()
    }
}

/// Builds `E ∖ (H, S)`: vertices `E⁰ ∖ H` plus a sink `v′` for each
/// `v ∈ B_H ∖ S`; bundles are those of `E` with range outside `H`, plus a
/// copy `src → v′` of every bundle with range `v ∈ B_H ∖ S`.
pub fn quotient_graph(g: &Graph, pair: &AdmissiblePair) -> Result<QuotientGraph> {
    let kept = g.all() - pair.h;
    let primed_src = breaking_unchecked(g, pair.h) - pair.s;

    let mut b = Graph::builder();
    b.enumeration_limit(g.enumeration_limit());
    let mut local = vec![None; g.vertex_count()];
    let mut vertex_origin = Vec::new();
    for v in kept {
        local[v.index()] = Some(b.vertex(g.name(v))?);
        vertex_origin.push(v);
    }
    let mut primed_local = vec![None; g.vertex_count()];
    let mut primed = Vec::new();
    for v in primed_src {
        let mut name = format!("{}'", g.name(v));
        while b.lookup(&name).is_some() {
            name.push('\'');
        }
        let q = b.vertex(name)?;
        primed_local[v.index()] = Some(q);
        primed.push((v, q));
        vertex_origin.push(v);
    }

    let mut provenance = Vec::new();
    let mut copies = Vec::new();
    for (i, bundle) in g.bundles().iter().enumerate() {
        if !kept.contains(bundle.dst) {
            continue;
        }
        let src = local[bundle.src.index()].expect("hereditary H keeps sources");
        let dst = local[bundle.dst.index()].expect("kept");
        let id = b.bundle(bundle.label.as_deref(), src, dst, bundle.mult)?;
        if provenance.len() == id.index() {
            provenance.push(BundleId::new(i));
        }
        if let Some(q) = primed_local[bundle.dst.index()] {
            copies.push((i, src, q));
        }
    }
    for (i, src, q) in copies {
        let bundle = &g.bundles()[i];
        let label = bundle.label.as_ref().map(|l| {
            let mut l = format!("{l}'");
            while b.has_label(&l) {
                l.push('\'');
            }
            l
        });
        let id = b.bundle(label.as_deref(), src, q, bundle.mult)?;
        if provenance.len() == id.index() {
            provenance.push(BundleId::new(i));
        }
    }
    Ok(QuotientGraph {
        graph: b.build(),
        primed,
        vertex_origin,
        provenance,
    })
}

/// Prime/primitive status of an ideal `I_(H,S)` of a Condition (K) graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IdealClass {
    /// `E⁰ ∖ H` is a maximal tail and `S = B_H`.
    Primitive2a,
    /// `E⁰ ∖ H = U(v0)` and `S = B_H ∖ {v0}`.
    Primitive2b(Vertex),
    /// `E⁰ ∖ H` is a cluster but not a maximal tail and `S = B_H`.
    PrimeNotPrimitive,
    NotPrime,
}

impl IdealClass {
    pub fn is_prime(self) -> bool {
        !matches!(self, IdealClass::NotPrime)
    }

    pub fn is_primitive(self) -> bool {
        matches!(self, IdealClass::Primitive2a | IdealClass::Primitive2b(_))
    }
}

/// The tail-side facts that decide an ideal's class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassificationFacts {
    /// `E⁰ ∖ H` is empty, i.e. the pair names the whole algebra.
    pub complement_empty: bool,
    /// `B_H ∖ S`.
    pub missing_breaking: VertexSet,
    /// MT1–MT3 hold on `E⁰ ∖ H`.
    pub complement_is_cluster: bool,
    /// MT4 holds on `E⁰ ∖ H`.
    pub complement_separable: bool,
    /// `E⁰ ∖ H = U(v0)` for the single missing breaking vertex `v0`.
    pub complement_is_upward_of_missing: bool,
}

impl ClassificationFacts {
    pub fn gather(g: &Graph, pair: &AdmissiblePair) -> Result<Self> {
        let complement = g.all() - pair.h;
        let missing = breaking_unchecked(g, pair.h) - pair.s;
        let report = tails::mt_report(g, complement)?;
        let upward = match missing.len() {
            1 => complement == g.upward_of(missing.first().expect("one")),
            _ => false,
        };
        Ok(ClassificationFacts {
            complement_empty: complement.is_empty(),
            missing_breaking: missing,
            complement_is_cluster: report.mt1() && report.mt2() && report.mt3(),
            complement_separable: report.mt4(),
            complement_is_upward_of_missing: upward,
        })
    }

    pub fn classify(&self) -> IdealClass {
        if self.complement_empty {
            return IdealClass::NotPrime;
        }
        match self.missing_breaking.len() {
            0 if self.complement_is_cluster && self.complement_separable => IdealClass::Primitive2a,
            0 if self.complement_is_cluster => IdealClass::PrimeNotPrimitive,
            1 if self.complement_is_upward_of_missing => {
                IdealClass::Primitive2b(self.missing_breaking.first().expect("one"))
            }
            _ => IdealClass::NotPrime,
        }
    }
}

pub(crate) fn require_k(g: &Graph) -> Result<()> {
    match g.condition_k_violation() {
        None => Ok(()),
        Some(v) => Err(Error::ConditionKRequired(g.name(v).to_string())),
    }
}

/// Classifies `I_(H,S)` from the tail structure of `E⁰ ∖ H`.
pub fn classify_ideal(g: &Graph, pair: &AdmissiblePair) -> Result<IdealClass> {
    require_k(g)?;
    classify_ideal_unchecked(g, pair)
}

/// As [`classify_ideal`] but skips the Condition (K) check, for callers that
/// have already done it.
pub fn classify_ideal_unchecked(g: &Graph, pair: &AdmissiblePair) -> Result<IdealClass> {
    Ok(ClassificationFacts::gather(g, pair)?.classify())
}

/// Classifies `I_(H,S)` through the quotient graph: the quotient algebra is
/// prime iff the quotient graph satisfies Condition (L) and is downward
/// directed, and primitive iff it is moreover separable. The zero quotient
/// is not prime.
pub fn classify_via_quotient(g: &Graph, pair: &AdmissiblePair) -> Result<IdealClass> {
    require_k(g)?;
    let q = quotient_graph(g, pair)?;
    let qg = &q.graph;
    if qg.vertex_count() == 0 {
        return Ok(IdealClass::NotPrime);
    }
    let prime = qg.condition_l() && qg.is_downward_directed(qg.all());
    if !prime {
        return Ok(IdealClass::NotPrime);
    }
    if !qg.has_csp(qg.all()).0 {
        return Ok(IdealClass::PrimeNotPrimitive);
    }
    Ok(match q.primed.as_slice() {
        [] => IdealClass::Primitive2a,
        [(v0, _)] => IdealClass::Primitive2b(*v0),
        _ => unreachable!("a directed graph has at most one sink"),
    })
}
