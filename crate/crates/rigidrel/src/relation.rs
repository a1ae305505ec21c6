//! Finite binary relations on `0..n`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use crate::{Error, Permutation, VertexMap};

/// A finite binary relation (directed graph, loops allowed) on vertices
/// `0..n`.
///
/// Immutable after construction. The edge set is a set by construction and
/// iterates in sorted `(u, v)` order, so every computation downstream is
/// deterministic. An adjacency bitset is kept alongside the edge set for
/// constant-time membership tests in the search kernels.
#[derive(Debug, Clone)]
pub struct Relation {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<u64>,
    row_words: usize,
}

impl Relation {
    /// Builds a relation, rejecting edges with endpoints outside `0..n`.
    /// Duplicate edges collapse (the edge set is a set).
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
        }
        Ok(Self::from_set(n, edges))
    }

    /// The relation on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_set(n, BTreeSet::new())
    }

    pub(crate) fn from_set(n: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let row_words = n.div_ceil(64);
        let mut adj = vec![0u64; n * row_words];
        for &(u, v) in &edges {
            adj[u * row_words + v / 64] |= 1 << (v % 64);
        }
        Relation {
            n,
            edges,
            adj,
            row_words,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in sorted `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Membership test; panics if `u` or `v` is out of range.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.adj[u * self.row_words + v / 64] >> (v % 64) & 1 == 1
    }

    /// True when no vertex is related to itself.
    pub fn is_irreflexive(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u != v)
    }

    /// First vertex carrying a loop, if any.
    pub fn loop_vertex(&self) -> Option<usize> {
        self.edges.iter().find(|&&(u, v)| u == v).map(|&(u, _)| u)
    }

    /// The substructure induced on `subset`, renumbered by the sorted order
    /// of the subset (the i-th smallest member becomes vertex i). Keeps
    /// exactly the edges with both endpoints in the subset.
    pub fn induced(&self, subset: &[usize]) -> Result<Relation, Error> {
        let members: BTreeSet<usize> = subset.iter().copied().collect();
        for &vertex in &members {
            if vertex >= self.n {
                return Err(Error::VertexOutOfRange { vertex, n: self.n });
            }
        }
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in members.iter().enumerate() {
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| members.contains(&u) && members.contains(&v))
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Ok(Relation::from_set(members.len(), edges))
    }

    /// Relabels vertices along `p`: edge `(u, v)` becomes `(p(u), p(v))`.
    pub fn relabel(&self, p: &Permutation) -> Result<Relation, Error> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: p.n(),
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (p.apply(u), p.apply(v)))
            .collect();
        Ok(Relation::from_set(self.n, edges))
    }

    /// True when `p` preserves the relation in both directions:
    /// `(a, b)` is an edge exactly when `(p(a), p(b))` is.
    pub fn is_automorphism(&self, p: &Permutation) -> Result<bool, Error> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: p.n(),
            });
        }
        Ok((0..self.n).all(|u| {
            (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(p.apply(u), p.apply(v)))
        }))
    }

    /// True when `f` preserves the relation in the forward direction only:
    /// every edge `(a, b)` yields an edge `(f(a), f(b))`.
    pub fn is_endomorphism(&self, f: &VertexMap) -> Result<bool, Error> {
        if f.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: f.n(),
            });
        }
        Ok(self
            .edges
            .iter()
            .all(|&(a, b)| self.has_edge(f.apply(a), f.apply(b))))
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Relation {}

impl Hash for Relation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

/// Relations order by vertex count, then lexicographically by their sorted
/// edge sequences.
impl Ord for Relation {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.edges).cmp(&(other.n, &other.edges))
    }
}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, edges: &[(usize, usize)]) -> Relation {
        Relation::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_out_of_range_edges() {
        assert_eq!(
            Relation::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn duplicate_edges_collapse() {
        let r = Relation::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(r.edge_count(), 2);
        assert_eq!(r.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn identity_is_always_an_automorphism() {
        let r = rel(4, &[(0, 1), (1, 2), (3, 3)]);
        assert!(r.is_automorphism(&Permutation::identity(4)).unwrap());
        assert!(r
            .is_endomorphism(&VertexMap::identity(4))
            .unwrap());
    }

    #[test]
    fn swap_preserves_the_empty_relation() {
        let r = Relation::empty(2);
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        assert!(r.is_automorphism(&swap).unwrap());
    }

    #[test]
    fn swap_breaks_a_path() {
        // image of (0,1) under 0<->2 is (2,1), not an edge
        let r = rel(3, &[(0, 1), (1, 2)]);
        let swap = Permutation::transposition(3, 0, 2).unwrap();
        assert!(!r.is_automorphism(&swap).unwrap());
    }

    #[test]
    fn endomorphism_is_one_directional() {
        let looped = rel(2, &[(0, 0), (0, 1)]);
        let to_zero = VertexMap::constant(2, 0).unwrap();
        assert!(looped.is_endomorphism(&to_zero).unwrap());

        let arc = rel(2, &[(0, 1)]);
        assert!(!arc.is_endomorphism(&to_zero).unwrap());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let r = rel(3, &[(0, 1)]);
        assert!(matches!(
            r.is_automorphism(&Permutation::identity(2)),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            r.is_endomorphism(&VertexMap::identity(4)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn irreflexivity() {
        assert!(rel(2, &[(0, 1)]).is_irreflexive());
        assert!(!rel(1, &[(0, 0)]).is_irreflexive());
        assert!(Relation::empty(3).is_irreflexive());
    }

    #[test]
    fn induced_substructure_renumbers() {
        let r = rel(3, &[(0, 1), (1, 2)]);
        let sub = r.induced(&[0, 2]).unwrap();
        assert_eq!(sub, Relation::empty(2));

        let whole = r.induced(&[0, 1, 2]).unwrap();
        assert_eq!(whole, r);

        let nothing = r.induced(&[]).unwrap();
        assert_eq!(nothing, Relation::empty(0));

        assert!(r.induced(&[0, 3]).is_err());
    }

    #[test]
    fn relabel_moves_edges() {
        let r = rel(3, &[(0, 1), (0, 2), (1, 2)]);
        let reverse = Permutation::from_images(vec![2, 1, 0]).unwrap();
        let s = r.relabel(&reverse).unwrap();
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(1, 0), (2, 0), (2, 1)]);
    }
}
