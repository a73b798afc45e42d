//! The prime and primitive ideal spaces as finite topological spaces.
//!
//! Points are clusters of maximal tails (or maximal tails, for the
//! primitive subspace) together with the finite-return vertices. Each space
//! can be closed two ways: on the graph side through the vertex set
//! `𝒱(X)`, and on the ideal side by intersecting the ideals `h(X)` and
//! collecting the points whose ideal contains the intersection. The map `h`
//! is verified to carry one closure onto the other.

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::ideals::{self, AdmissiblePair};
use crate::tails;

/// A set of points, indexed by position in a point list.
pub type PointSet = FixedBitSet;

/// A point of the prime ideal space.
///
/// The tag keeps a cluster `{v}` and a finite-return vertex `v` apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecPoint {
    Cluster(VertexSet),
    FiniteReturn(Vertex),
}

/// Which closure operator a [`SpecSpace`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Clusters inside `𝒱(X)`, points of `X`, and finite-return vertices
    /// with infinitely many edges into `𝒱(X)`.
    GraphSide,
    /// Points whose ideal contains the intersection of the ideals of `X`.
    IdealSide,
    /// [`Side::GraphSide`] with an extra condition on breaking vertices; see
    /// [`refined_graph_closure`].
    RefinedGraphSide,
}

/// Clusters in canonical order, then finite-return vertices.
pub fn spec_points(g: &Graph) -> Result<Vec<SpecPoint>> {
    ideals::require_k(g)?;
    Ok(with_fr(g, tails::clusters(g)?))
}

/// Maximal tails in canonical order, then finite-return vertices.
pub fn prim_points(g: &Graph) -> Result<Vec<SpecPoint>> {
    ideals::require_k(g)?;
    Ok(with_fr(g, tails::maximal_tails(g)?))
}

fn with_fr(g: &Graph, sets: Vec<VertexSet>) -> Vec<SpecPoint> {
    sets.into_iter()
        .map(SpecPoint::Cluster)
        .chain(
            tails::finite_return_vertices(g)
                .iter()
                .map(SpecPoint::FiniteReturn),
        )
        .collect()
}

/// Display names: clusters are `T1, T2, …` in list order, finite-return
/// points are `FR(v)`.
pub fn point_labels(g: &Graph, points: &[SpecPoint]) -> Vec<String> {
    let mut k = 0;
    points
        .iter()
        .map(|p| match p {
            SpecPoint::Cluster(_) => {
                k += 1;
                format!("T{k}")
            }
            SpecPoint::FiniteReturn(v) => format!("FR({})", g.name(*v)),
        })
        .collect()
}

fn contribution(g: &Graph, p: SpecPoint) -> VertexSet {
    match p {
        SpecPoint::Cluster(c) => c,
        SpecPoint::FiniteReturn(v) => g.upward_of(v),
    }
}

/// `𝒱(X)`: the union of the clusters in `X` and the sets `U(v0)` for the
/// finite-return vertices in `X`.
pub fn v_of<'a, I>(g: &Graph, x: I) -> VertexSet
where
    I: IntoIterator<Item = &'a SpecPoint>,
{
    x.into_iter()
        .fold(VertexSet::EMPTY, |acc, &p| acc | contribution(g, p))
}

/// Membership of a point in the graph-side closure of `x` with `v = 𝒱(x)`.
/// A finite-return vertex only sends finitely many edges into its own
/// upward set, so the edge-count test alone would not keep it in the
/// closure of itself; points of `x` are therefore always members.
fn graph_member(g: &Graph, p: SpecPoint, in_x: bool, v: VertexSet) -> bool {
    match p {
        SpecPoint::Cluster(c) => c.is_subset(v),
        SpecPoint::FiniteReturn(v0) => in_x || g.edges_into(v0, v).is_omega(),
    }
}

/// Graph-side closure of `x` (indices into `pts`): the clusters inside
/// `𝒱(x)`, the finite-return points of `x`, and the finite-return vertices
/// sending infinitely many edges into `𝒱(x)`.
pub fn graph_closure(g: &Graph, pts: &[SpecPoint], x: &PointSet) -> PointSet {
    let v = v_of(g, x.ones().map(|i| &pts[i]));
    collect(pts.len(), |i| graph_member(g, pts[i], x.contains(i), v))
}

/// Graph-side closure with the breaking-vertex condition that the plain
/// `𝒱(X)` test misses.
///
/// Call an infinite emitter `u` *X-breaking* if it sends finitely many but
/// at least one edge into `𝒱(X)`, and for every point `λ ∈ X` whose set
/// contains `u` it sends an edge into that set and is not `λ`'s own
/// finite-return vertex. A point `p` with vertex set `V_p` lies in the
/// closure iff `V_p ⊆ 𝒱(X)` and every X-breaking vertex inside `V_p` sends
/// an edge into `V_p` and is not `p`'s finite-return vertex.
pub fn refined_graph_closure(g: &Graph, pts: &[SpecPoint], x: &PointSet) -> PointSet {
    let contributions: Vec<VertexSet> = pts.iter().map(|&p| contribution(g, p)).collect();
    refined(g, pts, &contributions, x)
}

fn refined(g: &Graph, pts: &[SpecPoint], sets: &[VertexSet], x: &PointSet) -> PointSet {
    let v = x.ones().fold(VertexSet::EMPTY, |acc, i| acc | sets[i]);
    let keeps = |u: Vertex, i: usize| {
        !g.edges_into(u, sets[i]).is_zero() && pts[i] != SpecPoint::FiniteReturn(u)
    };
    let x_breaking: VertexSet = g
        .infinite_emitters()
        .iter()
        .filter(|&u| {
            g.edges_into(u, v).is_finite_positive()
                && x.ones().all(|i| !sets[i].contains(u) || keeps(u, i))
        })
        .collect();
    collect(pts.len(), |i| {
        sets[i].is_subset(v) && (x_breaking & sets[i]).iter().all(|u| keeps(u, i))
    })
}

/// The ideal attached to a point: `(E⁰ ∖ C, B_H)` for a cluster `C` and
/// `(E⁰ ∖ U(v0), B_H ∖ {v0})` for a finite-return vertex `v0`.
pub fn h_map(g: &Graph, p: SpecPoint) -> AdmissiblePair {
    let h = g.all() - contribution(g, p);
    let b = ideals::breaking_unchecked(g, h);
    match p {
        SpecPoint::Cluster(_) => AdmissiblePair::trusted(h, b),
        SpecPoint::FiniteReturn(v0) => AdmissiblePair::trusted(h, b.without(v0)),
    }
}

/// Ideal-side closure of `x`: the points whose ideal contains the
/// intersection of the ideals of `x`.
pub fn ideal_closure(g: &Graph, pts: &[SpecPoint], x: &PointSet) -> PointSet {
    let pairs: Vec<AdmissiblePair> = pts.iter().map(|&p| h_map(g, p)).collect();
    ideal_closure_pairs(g, &pairs, x)
}

/// Ideal-side closure over an explicit list of ideals.
pub fn ideal_closure_pairs(g: &Graph, pairs: &[AdmissiblePair], x: &PointSet) -> PointSet {
    let m = ideals::meet(g, x.ones().map(|i| &pairs[i]));
    collect(pairs.len(), |i| ideals::ideal_leq(g, &m, &pairs[i]))
}

fn collect(n: usize, mut member: impl FnMut(usize) -> bool) -> PointSet {
    let mut out = PointSet::with_capacity(n);
    for i in 0..n {
        if member(i) {
            out.insert(i);
        }
    }
    out
}

/// A finite point set with one of the two closure operators.
#[derive(Clone, Debug)]
pub struct SpecSpace {
    pub points: Vec<SpecPoint>,
    pub side: Side,
    graph: Graph,
    contributions: Vec<VertexSet>,
    pairs: Vec<AdmissiblePair>,
}

impl SpecSpace {
    pub fn new(g: &Graph, points: Vec<SpecPoint>, side: Side) -> Self {
        SpecSpace {
            contributions: points.iter().map(|&p| contribution(g, p)).collect(),
            pairs: points.iter().map(|&p| h_map(g, p)).collect(),
            points,
            side,
            graph: g.clone(),
        }
    }

    /// The prime ideal space of `g`.
    pub fn spec(g: &Graph, side: Side) -> Result<Self> {
        Ok(SpecSpace::new(g, spec_points(g)?, side))
    }

    /// The primitive ideal space of `g`.
    pub fn prim(g: &Graph, side: Side) -> Result<Self> {
        Ok(SpecSpace::new(g, prim_points(g)?, side))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `h` of each point, in point order.
    pub fn ideals(&self) -> &[AdmissiblePair] {
        &self.pairs
    }

    pub fn labels(&self) -> Vec<String> {
        point_labels(&self.graph, &self.points)
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn singleton(&self, i: usize) -> PointSet {
        let mut s = self.empty_set();
        s.insert(i);
        s
    }

    pub fn closure(&self, x: &PointSet) -> PointSet {
        let g = &self.graph;
        match self.side {
            Side::GraphSide => {
                let v = x
                    .ones()
                    .fold(VertexSet::EMPTY, |acc, i| acc | self.contributions[i]);
                collect(self.len(), |i| {
                    graph_member(g, self.points[i], x.contains(i), v)
                })
            }
            Side::IdealSide => ideal_closure_pairs(g, &self.pairs, x),
            Side::RefinedGraphSide => refined(g, &self.points, &self.contributions, x),
        }
    }

    pub fn singleton_closures(&self) -> Vec<PointSet> {
        (0..self.len())
            .map(|i| self.closure(&self.singleton(i)))
            .collect()
    }
}

/// Controls how many point subsets the checkers visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Spaces with at most this many points are checked on every subset.
    pub exhaustive_limit: usize,
    /// Number of random subsets for larger spaces.
    pub samples: usize,
    pub seed: u64,
    /// The graph-side operator compared against the ideal side.
    pub graph_side: Side,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_limit: 12,
            samples: 256,
            seed: 0,
            graph_side: Side::GraphSide,
        }
    }
}

/// The subsets to check: all of them for small spaces, otherwise `∅`, the
/// full set, all singletons and a seeded random sample. The flag reports
/// which case applied.
pub fn test_subsets(n: usize, opts: &VerifyOptions) -> (Vec<PointSet>, bool) {
    let make = |bits: &mut dyn Iterator<Item = usize>| {
        let mut s = PointSet::with_capacity(n);
        for i in bits {
            s.insert(i);
        }
        s
    };
    if n <= opts.exhaustive_limit && n < 64 {
        let all = (0..1u64 << n)
            .map(|mask| make(&mut (0..n).filter(move |i| mask >> i & 1 == 1)))
            .collect();
        return (all, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = vec![make(&mut std::iter::empty()), make(&mut (0..n))];
    out.extend((0..n).map(|i| make(&mut std::iter::once(i))));
    for _ in 0..opts.samples {
        let density: f64 = rng.gen();
        let picks: Vec<usize> = (0..n).filter(|_| rng.gen_bool(density)).collect();
        out.push(make(&mut picks.into_iter()));
    }
    (out, false)
}

fn fmt_points(labels: &[String], s: &PointSet) -> String {
    let names: Vec<&str> = s.ones().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Checks the Kuratowski axioms on the given subsets: `cl(∅) = ∅`,
/// `X ⊆ cl(X)`, `cl(cl(X)) = cl(X)` and `cl(X ∪ {p}) = cl(X) ∪ cl({p})` for
/// every point `p`. The last one yields finite additivity by induction when
/// the subsets are exhaustive.
pub fn check_kuratowski(space: &SpecSpace, subsets: &[PointSet]) -> Result<()> {
    let labels = space.labels();
    let fail = |what: &str, x: &PointSet| {
        Err(Error::VerificationFailure(format!(
            "{:?} closure: {what} fails at X = {}",
            space.side,
            fmt_points(&labels, x)
        )))
    };
    let empty = space.empty_set();
    if space.closure(&empty) != empty {
        return fail("cl(∅) = ∅", &empty);
    }
    let singles = space.singleton_closures();
    for x in subsets {
        let cl = space.closure(x);
        if !x.is_subset(&cl) {
            return fail("extensivity", x);
        }
        if space.closure(&cl) != cl {
            return fail("idempotence", x);
        }
        for (p, cl_p) in singles.iter().enumerate() {
            let mut xp = x.clone();
            xp.insert(p);
            let mut union = cl.clone();
            union.union_with(cl_p);
            if space.closure(&xp) != union {
                return fail(&format!("additivity with {}", labels[p]), x);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomeomorphismReport {
    pub spec_points: usize,
    pub prim_points: usize,
    pub spec_subsets_checked: usize,
    pub prim_subsets_checked: usize,
    pub exhaustive: bool,
}

/// Verifies that `h` is a bijection from the spec points onto the prime
/// ideals (and from the prim points onto the primitive ones), that both
/// closures are Kuratowski operators, and that `h` carries graph-side
/// closures to ideal-side closures. The primitive space is also checked to
/// carry the subspace closure.
pub fn verify_homeomorphism(g: &Graph, opts: &VerifyOptions) -> Result<HomeomorphismReport> {
    ideals::require_k(g)?;
    let spec_g = SpecSpace::spec(g, opts.graph_side)?;
    let prim_g = SpecSpace::prim(g, opts.graph_side)?;

    let mut prime = Vec::new();
    let mut primitive = Vec::new();
    for pair in ideals::admissible_pairs(g)? {
        let class = ideals::classify_ideal_unchecked(g, &pair)?;
        if class.is_prime() {
            prime.push(pair);
        }
        if class.is_primitive() {
            primitive.push(pair);
        }
    }
    check_bijection(g, &spec_g, prime, "prime")?;
    check_bijection(g, &prim_g, primitive, "primitive")?;

    let spec_checked = check_sides(&spec_g, opts)?;
    let prim_checked = check_sides(&prim_g, opts)?;

    // prim closure = spec closure restricted to prim points
    let index: Vec<usize> = prim_g
        .points
        .iter()
        .map(|p| {
            spec_g
                .points
                .iter()
                .position(|q| q == p)
                .expect("maximal tails are clusters")
        })
        .collect();
    let (subsets, _) = test_subsets(prim_g.len(), opts);
    let labels = prim_g.labels();
    for x in &subsets {
        let mut lifted = spec_g.empty_set();
        lifted.extend(x.ones().map(|i| index[i]));
        let big = spec_g.closure(&lifted);
        let restricted = collect(prim_g.len(), |i| big.contains(index[i]));
        if restricted != prim_g.closure(x) {
            return Err(Error::VerificationFailure(format!(
                "primitive closure differs from subspace closure at X = {}",
                fmt_points(&labels, x)
            )));
        }
    }

    Ok(HomeomorphismReport {
        spec_points: spec_g.len(),
        prim_points: prim_g.len(),
        spec_subsets_checked: spec_checked.0,
        prim_subsets_checked: prim_checked.0,
        exhaustive: spec_checked.1 && prim_checked.1,
    })
}

fn check_bijection(
    g: &Graph,
    space: &SpecSpace,
    mut expected: Vec<AdmissiblePair>,
    what: &str,
) -> Result<()> {
    let mut image = space.ideals().to_vec();
    image.sort();
    let before = image.len();
    image.dedup();
    if image.len() != before {
        return Err(Error::VerificationFailure(format!(
            "h is not injective on the {what} points"
        )));
    }
    expected.sort();
    if image != expected {
        let show = |v: &[AdmissiblePair]| {
            v.iter()
                .map(|p| p.display(g).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        return Err(Error::VerificationFailure(format!(
            "h maps the {what} points onto [{}], but the {what} ideals are [{}]",
            show(&image),
            show(&expected)
        )));
    }
    Ok(())
}

fn check_sides(graph_side: &SpecSpace, opts: &VerifyOptions) -> Result<(usize, bool)> {
    let mut ideal_side = graph_side.clone();
    ideal_side.side = Side::IdealSide;
    let (subsets, exhaustive) = test_subsets(graph_side.len(), opts);
    check_kuratowski(graph_side, &subsets)?;
    check_kuratowski(&ideal_side, &subsets)?;
    let labels = graph_side.labels();
    for x in &subsets {
        let a = graph_side.closure(x);
        let b = ideal_side.closure(x);
        if a != b {
            return Err(Error::VerificationFailure(format!(
                "X = {}: graph-side closure {} but ideal-side closure {}",
                fmt_points(&labels, x),
                fmt_points(&labels, &a),
                fmt_points(&labels, &b)
            )));
        }
    }
    Ok((subsets.len(), exhaustive))
}

/// Separation properties of a finite space, computed from its closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub t0: bool,
    /// Two distinct points with the same closure.
    pub t0_violation: Option<(usize, usize)>,
    pub t1: bool,
    pub hausdorff: bool,
    pub discrete: bool,
    pub non_closed_singletons: Vec<usize>,
    /// `specialization[p]` lists the points of `cl({p})`.
    pub specialization: Vec<Vec<usize>>,
}

/// T0, T1 and Hausdorff checks. Hausdorff is tested on minimal open
/// neighbourhoods `O_p = {q : p ∈ cl({q})}`, the complement of the largest
/// closed set avoiding `p`.
pub fn separation_report(space: &SpecSpace) -> SeparationReport {
    let n = space.len();
    let cls = space.singleton_closures();
    let mut t0_violation = None;
    'outer: for p in 0..n {
        for q in p + 1..n {
            if cls[p] == cls[q] {
                t0_violation = Some((p, q));
                break 'outer;
            }
        }
    }
    let non_closed: Vec<usize> = (0..n).filter(|&p| cls[p].count_ones(..) != 1).collect();
    let nbhd: Vec<PointSet> = (0..n).map(|p| collect(n, |q| cls[q].contains(p))).collect();
    let hausdorff = (0..n).all(|p| (p + 1..n).all(|q| nbhd[p].is_disjoint(&nbhd[q])));
    let discrete = nbhd.iter().all(|o| o.count_ones(..) == 1);
    SeparationReport {
        t0: t0_violation.is_none(),
        t0_violation,
        t1: non_closed.is_empty(),
        hausdorff,
        discrete,
        non_closed_singletons: non_closed,
        specialization: cls.iter().map(|c| c.ones().collect()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub spec_points: usize,
    pub prim_points: usize,
    pub equal: bool,
    pub dense: bool,
}

/// Checks that the primitive points coincide with the prime points and are
/// dense in the prime space.
pub fn prim_spec_density_check(g: &Graph) -> Result<DensityReport> {
    let spec = SpecSpace::spec(g, Side::GraphSide)?;
    let prim = prim_points(g)?;
    let mut prim_set = spec.empty_set();
    for p in &prim {
        match spec.points.iter().position(|q| q == p) {
            Some(i) => prim_set.insert(i),
            None => {
                return Err(Error::VerificationFailure(
                    "a primitive point is not a prime point".into(),
                ))
            }
        }
    }
    let report = DensityReport {
        spec_points: spec.len(),
        prim_points: prim.len(),
        equal: prim == spec.points,
        dense: spec.closure(&prim_set) == spec.full_set(),
    };
    if !report.equal || !report.dense {
        return Err(Error::VerificationFailure(format!(
            "{} prime points, {} primitive points, dense: {}",
            report.spec_points, report.prim_points, report.dense
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{ea_graph, running_example};
    use crate::graph::Multiplicity;

    fn index_of(pts: &[SpecPoint], p: SpecPoint) -> usize {
        pts.iter().position(|&q| q == p).unwrap()
    }

    #[test]
    fn running_example_points_and_closure() {
        let fx = running_example();
        let g = &fx.graph;
        let pts = spec_points(g).unwrap();
        assert_eq!(pts.len(), 5);
        assert_eq!(prim_points(g).unwrap(), pts);
        let [_, t2, t3, t4] = fx.expected.tails;
        let x = g.vertex("x").unwrap();
        assert_eq!(pts[4], SpecPoint::FiniteReturn(x));

        let t4_point = [SpecPoint::Cluster(t4)];
        assert_eq!(
            v_of(g, &t4_point),
            g.set(["u", "v", "w", "x", "y", "z"]).unwrap()
        );
        assert_eq!(v_of(g, &[SpecPoint::FiniteReturn(x)]), t2);

        let mut xs = PointSet::with_capacity(pts.len());
        xs.insert(index_of(&pts, SpecPoint::Cluster(t4)));
        let cl = graph_closure(g, &pts, &xs);
        let expected: PointSet = [
            SpecPoint::Cluster(t2),
            SpecPoint::Cluster(t3),
            SpecPoint::Cluster(t4),
            SpecPoint::FiniteReturn(x),
        ]
        .iter()
        .map(|&p| index_of(&pts, p))
        .collect();
        assert_eq!(cl, expected);
        assert_eq!(ideal_closure(g, &pts, &xs), expected);
    }

    #[test]
    fn running_example_h_images() {
        let fx = running_example();
        let g = &fx.graph;
        let [_, t2, t3, t4] = fx.expected.tails;
        let [_, h2, h3, h4] = fx.expected.hereditary;
        let x = g.vertex("x").unwrap();
        let w = g.vertex("w").unwrap();
        assert_eq!(
            h_map(g, SpecPoint::Cluster(t3)),
            AdmissiblePair::trusted(h3, VertexSet::EMPTY)
        );
        assert_eq!(
            h_map(g, SpecPoint::Cluster(t4)),
            AdmissiblePair::trusted(h4, VertexSet::EMPTY)
        );
        assert_eq!(
            h_map(g, SpecPoint::FiniteReturn(x)),
            AdmissiblePair::trusted(h2, VertexSet::singleton(w))
        );
        assert_eq!(g.all() - t2, h2);
    }

    #[test]
    fn running_example_prim_is_t0_not_hausdorff() {
        let g = running_example().graph;
        for side in [Side::GraphSide, Side::IdealSide] {
            let space = SpecSpace::prim(&g, side).unwrap();
            let r = separation_report(&space);
            assert!(r.t0);
            assert!(!r.t1);
            assert!(!r.hausdorff);
            let t4 = space.labels().iter().position(|l| l == "T4").unwrap();
            assert!(r.non_closed_singletons.contains(&t4));
        }
    }

    #[test]
    fn empty_closures() {
        let g = running_example().graph;
        let pts = spec_points(&g).unwrap();
        let empty = PointSet::with_capacity(pts.len());
        assert_eq!(graph_closure(&g, &pts, &empty), empty);
        assert_eq!(ideal_closure(&g, &pts, &empty), empty);
        let mut full = empty.clone();
        full.insert_range(..);
        assert_eq!(ideal_closure(&g, &pts, &full), full);
        assert_eq!(v_of(&g, &[]), VertexSet::EMPTY);
    }

    #[test]
    fn plain_graph_closure_overshoots_on_running_example() {
        // {w} ⊆ T2, but w is a breaking vertex of E⁰ ∖ T2 with no edge into
        // {w}, so the ideal of T2 is not contained in the ideal of {w}.
        let fx = running_example();
        let g = &fx.graph;
        let [_, t2, t3, _] = fx.expected.tails;
        let pts = spec_points(g).unwrap();
        let mut x = PointSet::with_capacity(pts.len());
        x.insert(index_of(&pts, SpecPoint::Cluster(t2)));
        let t3_index = index_of(&pts, SpecPoint::Cluster(t3));
        assert!(graph_closure(g, &pts, &x).contains(t3_index));
        assert!(!ideal_closure(g, &pts, &x).contains(t3_index));
        assert!(!refined_graph_closure(g, &pts, &x).contains(t3_index));
        let err = verify_homeomorphism(g, &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::VerificationFailure(_)));
    }

    #[test]
    fn verification_passes_on_fixtures() {
        let opts = VerifyOptions::default();
        let refined = VerifyOptions {
            graph_side: Side::RefinedGraphSide,
            ..opts
        };
        let r = verify_homeomorphism(&running_example().graph, &refined).unwrap();
        assert_eq!((r.spec_points, r.spec_subsets_checked), (5, 32));
        assert!(r.exhaustive);
        let ea = ea_graph(&["a", "b", "c"], Multiplicity::Omega).unwrap();
        let r = verify_homeomorphism(&ea, &opts).unwrap();
        assert_eq!((r.spec_points, r.spec_subsets_checked), (7, 128));
        assert_eq!(r.prim_points, 7);

        let mut b = Graph::builder();
        b.vertex("s").unwrap();
        let sink = b.build();
        let r = verify_homeomorphism(&sink, &opts).unwrap();
        assert_eq!((r.spec_points, r.spec_subsets_checked), (1, 2));
    }

    #[test]
    fn ea_pair_is_t0_but_not_t1() {
        let g = ea_graph(&["a", "b"], Multiplicity::Omega).unwrap();
        let space = SpecSpace::spec(&g, Side::GraphSide).unwrap();
        let cluster = |names: &[&str]| SpecPoint::Cluster(g.set(names.iter().copied()).unwrap());
        let ga = index_of(&space.points, cluster(&["v_a"]));
        let gb = index_of(&space.points, cluster(&["v_b"]));
        let gab = index_of(&space.points, cluster(&["v_a", "v_b", "v_a_b"]));
        let r = separation_report(&space);
        assert!(r.t0 && !r.t1);
        assert!(r.specialization[gab].contains(&ga));

        let mut x = space.empty_set();
        x.insert(ga);
        x.insert(gb);
        assert_eq!(space.closure(&x), x);
    }

    #[test]
    fn edgeless_graph_is_discrete() {
        let mut b = Graph::builder();
        b.vertices(["p", "q", "r"]).unwrap();
        let g = b.build();
        let space = SpecSpace::spec(&g, Side::GraphSide).unwrap();
        assert_eq!(space.len(), 3);
        let r = separation_report(&space);
        assert!(r.t1 && r.hausdorff && r.discrete);
    }

    #[test]
    fn density_on_fixtures() {
        let r = prim_spec_density_check(&running_example().graph).unwrap();
        assert_eq!((r.spec_points, r.prim_points), (5, 5));
        let ea = ea_graph(&["a", "b", "c"], Multiplicity::Omega).unwrap();
        assert_eq!(prim_spec_density_check(&ea).unwrap().prim_points, 7);
        let mut b = Graph::builder();
        b.vertex("a").unwrap();
        b.edge(None, "a", "a", Multiplicity::Finite(2)).unwrap();
        assert_eq!(prim_spec_density_check(&b.build()).unwrap().spec_points, 1);
    }

    #[test]
    fn condition_k_is_required() {
        let mut b = Graph::builder();
        b.vertex("a").unwrap();
        b.edge(None, "a", "a", Multiplicity::ONE).unwrap();
        let g = b.build();
        assert!(matches!(spec_points(&g), Err(Error::ConditionKRequired(_))));
        assert!(matches!(
            verify_homeomorphism(&g, &VerifyOptions::default()),
            Err(Error::ConditionKRequired(_))
        ));
    }

    #[test]
    fn sampled_subsets_are_reproducible() {
        let opts = VerifyOptions {
            exhaustive_limit: 3,
            samples: 10,
            seed: 7,
            ..Default::default()
        };
        let (a, exhaustive) = test_subsets(6, &opts);
        assert!(!exhaustive);
        assert_eq!(a.len(), 2 + 6 + 10);
        assert_eq!(a, test_subsets(6, &opts).0);
    }
}
