//! Fixture graphs and seeded random graphs.
//!
//! * [`running_example`]: a seven-vertex graph with four maximal tails, one
//!   finite-return vertex and five primitive ideals, bundled with its known
//!   invariants.
//! * [`ea_graph`]: the graph on nonempty subsets of a set `X` with an edge
//!   bundle `v_A → v_A'` for every proper inclusion `A ⊊ A'`.
//! * [`PXModel`]: the space of nonempty subsets of `X` with the closure
//!   matching the cluster space of `ea_graph(X, ω)`.
//! * [`random_condition_k_graph`]: reproducible random graphs satisfying
//!   Condition (K).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{
    CycleCountClass, Graph, Multiplicity, Vertex, VertexSet, DEFAULT_ENUMERATION_LIMIT,
};
use crate::ideals::AdmissiblePair;
use crate::topology::SpecPoint;

/// A graph together with invariants known in advance.
#[derive(Clone, Debug)]
pub struct GraphFixture {
    pub graph: Graph,
    pub expected: ExpectedFacts,
}

/// Known invariants of [`running_example`].
#[derive(Clone, Debug)]
pub struct ExpectedFacts {
    /// The maximal tails `T1, …, T4`.
    pub tails: [VertexSet; 4],
    /// `H_i = E⁰ ∖ T_i`.
    pub hereditary: [VertexSet; 4],
    /// `B_{H_i}`.
    pub breaking: [VertexSet; 4],
    pub finite_return: VertexSet,
    /// Labels of the bundles from the finite-return vertex back into its
    /// upward set.
    pub return_labels: [&'static str; 2],
    /// The primitive ideals; they are also all the prime ideals.
    pub primitive: [AdmissiblePair; 5],
    /// Closure of the point `T4` in the primitive space.
    pub closure_of_t4: [SpecPoint; 4],
    pub notes: &'static str,
}

/// The seven-vertex running example.
pub fn running_example() -> GraphFixture {
    use Multiplicity::Omega;
    let one = Multiplicity::ONE;
    let mut b = Graph::builder();
    b.vertices(["t", "u", "v", "w", "x", "y", "z"])
        .expect("distinct names");
    let edges: [(Option<&str>, &str, &str, Multiplicity); 13] = [
        (None, "u", "t", one),
        (None, "u", "v", Omega),
        (None, "v", "x", one),
        (None, "w", "x", one),
        (None, "w", "y", Omega),
        (None, "x", "y", Omega),
        (None, "x", "z", one),
        (None, "x", "t", one),
        (Some("g"), "x", "u", one),
        (Some("f"), "x", "x", one),
        (None, "y", "z", one),
        (Some("d"), "z", "z", one),
        (Some("e"), "z", "z", one),
    ];
    for (label, s, d, m) in edges {
        b.edge(label, s, d, m).expect("declared vertices");
    }
    let g = b.build();
    let set = |names: &[&str]| g.set(names.iter().copied()).expect("fixture names");

    let tails = [
        set(&["t", "u", "v", "w", "x"]),
        set(&["u", "v", "w", "x"]),
        set(&["w"]),
        set(&["u", "v", "w", "x", "y", "z"]),
    ];
    let hereditary = [
        set(&["y", "z"]),
        set(&["t", "y", "z"]),
        set(&["t", "u", "v", "x", "y", "z"]),
        set(&["t"]),
    ];
    let wx = set(&["w", "x"]);
    let breaking = [wx, wx, VertexSet::EMPTY, VertexSet::EMPTY];
    let pair = AdmissiblePair::trusted;
    let primitive = [
        pair(hereditary[0], breaking[0]),
        pair(hereditary[1], breaking[1]),
        pair(hereditary[1], set(&["w"])),
        pair(hereditary[2], VertexSet::EMPTY),
        pair(hereditary[3], VertexSet::EMPTY),
    ];
    let x = g.vertex("x").expect("fixture name");
    let closure_of_t4 = [
        SpecPoint::Cluster(tails[1]),
        SpecPoint::Cluster(tails[2]),
        SpecPoint::Cluster(tails[3]),
        SpecPoint::FiniteReturn(x),
    ];
    GraphFixture {
        expected: ExpectedFacts {
            tails,
            hereditary,
            breaking,
            finite_return: VertexSet::singleton(x),
            return_labels: ["f", "g"],
            primitive,
            closure_of_t4,
            notes: "x emits exactly two edges into U(x): the loop f and the edge g to u; \
                    there is a single x->u bundle",
        },
        graph: g,
    }
}

/// Largest `|X|` accepted by [`ea_graph`] and [`PXModel`].
pub const EA_MAX_GROUND: usize = 4;

fn check_ground(n: usize) -> Result<()> {
    if n > EA_MAX_GROUND {
        return Err(Error::SizeLimitExceeded {
            vertices: (1 << n) - 1,
            limit: (1 << EA_MAX_GROUND) - 1,
        });
    }
    Ok(())
}

fn subset_name(x: &[&str], mask: u32) -> String {
    let parts: Vec<&str> = (0..x.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| x[i])
        .collect();
    format!("v_{}", parts.join("_"))
}

/// Vertices `v_A` for nonempty `A ⊆ X` and a bundle of multiplicity `m`
/// from `v_A` to `v_A'` whenever `A ⊊ A'`.
///
/// The vertex for the subset with bitmask `A` (bit `i` for `x[i]`) has
/// index `A - 1` and is named `v_` followed by its elements joined by `_`.
pub fn ea_graph(x: &[&str], m: Multiplicity) -> Result<Graph> {
    check_ground(x.len())?;
    let mut b = Graph::builder();
    let top = 1u32 << x.len();
    for mask in 1..top {
        b.vertex(subset_name(x, mask))?;
    }
    for a in 1..top {
        for a2 in 1..top {
            if a != a2 && a & a2 == a {
                b.bundle(None, ea_vertex(a), ea_vertex(a2), m)?;
            }
        }
    }
    Ok(b.build())
}

/// The vertex of `ea_graph` for the subset with bitmask `mask`.
pub fn ea_vertex(mask: u32) -> Vertex {
    Vertex::new(mask as usize - 1)
}

/// Nonempty subsets of a finite ground set, as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PXModel {
    pub ground: Vec<String>,
}

impl PXModel {
    pub fn new(ground: &[&str]) -> Result<Self> {
        check_ground(ground.len())?;
        Ok(PXModel {
            ground: ground.iter().map(|s| s.to_string()).collect(),
        })
    }

    /// All points `1 ..= 2^|X| - 1` in increasing order.
    pub fn points(&self) -> Vec<u32> {
        (1..1u32 << self.ground.len()).collect()
    }

    /// `ea_graph(X, ω)`, the graph whose clusters model this space.
    pub fn graph(&self) -> Graph {
        let names: Vec<&str> = self.ground.iter().map(String::as_str).collect();
        ea_graph(&names, Multiplicity::Omega).expect("ground size checked")
    }

    pub fn describe(&self, s: u32) -> String {
        let parts: Vec<&str> = (0..self.ground.len())
            .filter(|i| s >> i & 1 == 1)
            .map(|i| self.ground[i].as_str())
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// `T` lies in the closure of `family` iff every nonempty finite `A ⊆ T`
/// is contained in some member of `family`. Evaluated literally over all
/// nonempty `A ⊆ T`.
pub fn px_closure(model: &PXModel, family: &[u32]) -> Vec<u32> {
    model
        .points()
        .into_iter()
        .filter(|&t| {
            submasks(t)
                .filter(|&a| a != 0)
                .all(|a| family.iter().any(|&s| a & s == a))
        })
        .collect()
}

fn submasks(t: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != t).then(|| cur.wrapping_sub(t) & t);
        Some(cur)
    })
}

/// `γ_S = {v_A : ∅ ≠ A ⊆ S}` inside [`PXModel::graph`].
pub fn phi(_model: &PXModel, s: u32) -> VertexSet {
    submasks(s).filter(|&a| a != 0).map(ea_vertex).collect()
}

/// Parameters for [`random_graph`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomGraphParams {
    pub vertices: usize,
    /// Probability of a bundle for each ordered pair, loops included.
    pub density: f64,
    /// Probability that a bundle has multiplicity ω; otherwise it is 1 or 2.
    pub omega_prob: f64,
    /// Raise multiplicities until Condition (K) holds.
    pub repair: bool,
}

/// A reproducible random graph with vertices `v0, v1, …`.
///
/// With `repair` set, every vertex with exactly one simple cycle gets its
/// first return walk's leading bundle doubled, which gives it two simple
/// cycles. Raising a multiplicity never lowers a count, so the pass
/// terminates with Condition (K) satisfied.
pub fn random_graph(seed: u64, params: RandomGraphParams) -> Result<Graph> {
    let n = params.vertices;
    if n > DEFAULT_ENUMERATION_LIMIT {
        return Err(Error::SizeLimitExceeded {
            vertices: n,
            limit: DEFAULT_ENUMERATION_LIMIT,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, Multiplicity)> = Vec::new();
    for s in 0..n {
        for d in 0..n {
            if rng.gen_bool(params.density) {
                let m = if rng.gen_bool(params.omega_prob) {
                    Multiplicity::Omega
                } else {
                    Multiplicity::Finite(rng.gen_range(1..=2))
                };
                edges.push((s, d, m));
            }
        }
    }
    let build = |edges: &[(usize, usize, Multiplicity)]| {
        let mut b = Graph::builder();
        for i in 0..n {
            b.vertex(format!("v{i}")).expect("distinct names");
        }
        for &(s, d, m) in edges {
            b.bundle(None, Vertex::new(s), Vertex::new(d), m)
                .expect("valid bundle");
        }
        b.build()
    };
    let mut g = build(&edges);
    if params.repair {
        while let Some(v) = g
            .vertices()
            .find(|&v| g.simple_cycle_class(v).expect("vertex in range") == CycleCountClass::One)
        {
            let walk = g.first_return_walk(v).expect("a cycle exists");
            edges[walk[0].index()].2 = edges[walk[0].index()].2 + Multiplicity::ONE;
            g = build(&edges);
        }
    }
    Ok(g)
}

/// [`random_graph`] with repair enabled.
pub fn random_condition_k_graph(
    seed: u64,
    vertices: usize,
    density: f64,
    omega_prob: f64,
) -> Result<Graph> {
    random_graph(
        seed,
        RandomGraphParams {
            vertices,
            density,
            omega_prob,
            repair: true,
        },
    )
}
