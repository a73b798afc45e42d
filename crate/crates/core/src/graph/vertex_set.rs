use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Maximum number of vertices a [`Graph`](super::Graph) may hold.
pub const MAX_VERTICES: usize = 64;

/// Index of a vertex in its graph's declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Vertex(pub(crate) usize);

impl Vertex {
    pub fn new(index: usize) -> Self {
        Vertex(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// A subset of the vertices of a graph, stored as a bitmask over
/// declaration order.
///
/// The derived `Ord` compares bitmask values, which is the canonical
/// ordering used for every enumeration in this crate.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1u64 << v.0)
    }

    pub fn contains(self, v: Vertex) -> bool {
        v.0 < MAX_VERTICES && self.0 & (1u64 << v.0) != 0
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1u64 << v.0;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1u64 << v.0);
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | (1u64 << v.0))
    }

    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !(1u64 << v.0))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Lowest-indexed member.
    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| Vertex(self.0.trailing_zeros() as usize))
    }

    /// Members in declaration order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(Vertex(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

/// All subsets of `{0, …, n-1}` in increasing bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    debug_assert!(n < MAX_VERTICES);
    (0..(1u64 << n)).map(VertexSet)
}

/// All subsets of `set`, in increasing bitmask order.
pub fn subsets_of(set: VertexSet) -> impl Iterator<Item = VertexSet> {
    let full = set.0;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == full {
            None
        } else {
            Some((cur.wrapping_sub(full)) & full)
        };
        Some(VertexSet(cur))
    })
}
