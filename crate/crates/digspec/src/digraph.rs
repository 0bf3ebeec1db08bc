//! Immutable digraph data model.
//!
//! A digraph is loop-free and has no parallel arcs. Arcs are stored as a
//! sorted list of `(tail, head)` pairs so that equality, hashing and
//! enumeration dedup are deterministic. Vertices are 0-indexed.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("loop arc ({0}, {0})")]
    LoopArc(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("arc ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("invalid order for this family")]
    InvalidOrder,
    #[error("digraphs have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    /// Builds a digraph after validating every arc.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut sorted: Vec<(usize, usize)> = Vec::with_capacity(arcs.len());
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(DigraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(DigraphError::LoopArc(u));
            }
            sorted.push((u, v));
        }
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(DigraphError::DuplicateArc(w[0].0, w[0].1));
            }
        }
        Ok(Digraph { n, arcs: sorted })
    }

    /// Builds from arcs already sorted, distinct, loop-free and in range.
    pub(crate) fn from_sorted_unchecked(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(arcs.iter().all(|&(u, v)| u != v && u < n && v < n));
        Digraph { n, arcs }
    }

    /// The single-vertex digraph K1.
    pub fn k1() -> Self {
        Digraph { n: 1, arcs: Vec::new() }
    }

    /// Directed path on n >= 1 vertices: arcs (i, i+1).
    pub fn directed_path(n: usize) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::InvalidOrder);
        }
        let arcs = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Ok(Digraph { n, arcs })
    }

    /// Directed cycle on n >= 2 vertices: arcs (i, (i+1) mod n). n = 2 is
    /// the symmetric digon.
    pub fn directed_cycle(n: usize) -> Result<Self, DigraphError> {
        if n < 2 {
            return Err(DigraphError::InvalidOrder);
        }
        let mut arcs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        arcs.sort_unstable();
        Ok(Digraph { n, arcs })
    }

    /// Oriented star S_n(x, y) on n = x + y + 1 vertices. Vertex 0 is the
    /// center, with x arcs out of it and y arcs into it.
    pub fn oriented_star(x: usize, y: usize) -> Result<Self, DigraphError> {
        if x + y == 0 {
            return Err(DigraphError::InvalidOrder);
        }
        let n = x + y + 1;
        let mut arcs = Vec::with_capacity(x + y);
        for i in 1..=x {
            arcs.push((0, i));
        }
        for j in 1..=y {
            arcs.push((x + j, 0));
        }
        arcs.sort_unstable();
        Ok(Digraph { n, arcs })
    }

    /// Disjoint union; the second digraph's vertices are shifted by n1.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let shift = self.n;
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|&(u, v)| (u + shift, v + shift)));
        arcs.sort_unstable();
        Digraph { n: self.n + other.n, arcs }
    }

    /// Adds the reverse of every arc.
    pub fn symmetric_closure(&self) -> Digraph {
        let mut arcs = self.arcs.clone();
        for &(u, v) in &self.arcs {
            if !self.has_arc(v, u) {
                arcs.push((v, u));
            }
        }
        arcs.sort_unstable();
        Digraph { n: self.n, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// a(D), the number of arcs.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, _) in &self.arcs {
            d[u] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, v) in &self.arcs {
            d[v] += 1;
        }
        d
    }

    /// Outdegree sequence, sorted descending.
    pub fn outdegree_sequence(&self) -> Vec<usize> {
        let mut d = self.out_degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// First outdegree Zagreb index: sum of squared outdegrees.
    pub fn zagreb_plus(&self) -> usize {
        self.out_degrees().iter().map(|&d| d * d).sum()
    }

    /// True if the digraph has no pair of symmetric arcs (no digon).
    pub fn is_oriented(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| u > v || !self.has_arc(v, u))
    }

    /// Edges of the underlying simple graph, with each digon replaced by a
    /// single edge. Pairs are returned as (min, max), sorted.
    pub fn underlying_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    fn underlying_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v) in self.underlying_edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Connected components of the underlying graph, each a sorted vertex
    /// list; components ordered by smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let adj = self.underlying_adjacency();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.n <= 1 || self.weak_components().len() == 1
    }

    /// True if the digraph has no directed cycle. A digon is a directed
    /// cycle of length two.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = self.in_degrees();
        let mut queue: VecDeque<usize> =
            (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        let mut heads = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            heads[u].push(v);
        }
        while let Some(u) = queue.pop_front() {
            removed += 1;
            for &v in &heads[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        removed == self.n
    }

    /// Structural class flags used by the enumeration filters.
    pub fn classify(&self) -> ClassFlags {
        let connected = self.is_weakly_connected();
        let edges = self.underlying_edges().len();
        ClassFlags {
            connected,
            // A connected digraph is an oriented tree iff it has n-1 arcs
            // and no digon (so the underlying graph is a tree).
            oriented_tree: connected
                && self.arc_count() + 1 == self.n
                && self.is_oriented(),
            // Exactly one cycle in the underlying simple graph.
            unicyclic: connected && edges == self.n,
            acyclic: self.is_acyclic(),
        }
    }

    /// Two-colors the underlying graph. Returns `(part_a, part_b)` with
    /// every arc crossing between the parts, or `None` if some component
    /// has an odd cycle. Isolated vertices go to part A.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let adj = self.underlying_adjacency();
        let mut color: Vec<i8> = vec![-1; self.n];
        for s in 0..self.n {
            if color[s] >= 0 {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if color[w] < 0 {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        let part_a = (0..self.n).filter(|&v| color[v] == 0).collect();
        let part_b = (0..self.n).filter(|&v| color[v] == 1).collect();
        Some((part_a, part_b))
    }

    /// Relabels vertices: vertex v becomes perm[v].
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        let mut arcs: Vec<(usize, usize)> =
            self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        arcs.sort_unstable();
        Digraph { n: self.n, arcs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlags {
    pub oriented_tree: bool,
    pub unicyclic: bool,
    pub connected: bool,
    pub acyclic: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_digraph_validation() {
        assert!(Digraph::new(1, &[]).is_ok());
        let u1 = Digraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(u1.arc_count(), 4);
        assert_eq!(
            Digraph::new(2, &[(0, 0)]).unwrap_err(),
            DigraphError::LoopArc(0)
        );
        assert_eq!(
            Digraph::new(2, &[(0, 1), (0, 1)]).unwrap_err(),
            DigraphError::DuplicateArc(0, 1)
        );
        assert_eq!(
            Digraph::new(2, &[(0, 2)]).unwrap_err(),
            DigraphError::VertexOutOfRange(0, 2, 2)
        );
    }

    #[test]
    fn path_family() {
        assert_eq!(Digraph::directed_path(1).unwrap(), Digraph::k1());
        let p4 = Digraph::directed_path(4).unwrap();
        assert_eq!(p4.arcs(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            Digraph::directed_path(5).unwrap().outdegree_sequence(),
            vec![1, 1, 1, 1, 0]
        );
        assert_eq!(Digraph::directed_path(0).unwrap_err(), DigraphError::InvalidOrder);
    }

    #[test]
    fn cycle_family() {
        let c3 = Digraph::directed_cycle(3).unwrap();
        assert_eq!(c3.arcs(), &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(
            Digraph::directed_cycle(6).unwrap().outdegree_sequence(),
            vec![1; 6]
        );
        for n in 2..=10 {
            assert_eq!(Digraph::directed_cycle(n).unwrap().arc_count(), n);
        }
        assert_eq!(Digraph::directed_cycle(1).unwrap_err(), DigraphError::InvalidOrder);
    }

    #[test]
    fn star_family() {
        let s = Digraph::oriented_star(3, 0).unwrap();
        assert_eq!(s.arcs(), &[(0, 1), (0, 2), (0, 3)]);
        let in_star = Digraph::oriented_star(0, 2).unwrap();
        assert_eq!(in_star.arcs(), &[(1, 0), (2, 0)]);
        assert_eq!(
            Digraph::oriented_star(2, 2).unwrap().outdegree_sequence(),
            vec![2, 1, 1, 0, 0]
        );
        let s32 = Digraph::oriented_star(3, 2).unwrap();
        assert_eq!(s32.out_degrees()[0], 3);
        assert_eq!(s32.in_degrees()[0], 2);
        assert_eq!(Digraph::oriented_star(0, 0).unwrap_err(), DigraphError::InvalidOrder);
    }

    #[test]
    fn union_and_closure() {
        let c3 = Digraph::directed_cycle(3).unwrap();
        let u = c3.disjoint_union(&Digraph::k1());
        assert_eq!(u.n(), 4);
        assert_eq!(u.arc_count(), 3);
        assert_eq!(u.weak_components().len(), 2);

        let empty2 = Digraph::k1().disjoint_union(&Digraph::k1());
        assert_eq!((empty2.n(), empty2.arc_count()), (2, 0));

        let sp3 = Digraph::directed_path(3).unwrap().symmetric_closure();
        assert_eq!(sp3.arc_count(), 4);
        assert_eq!(sp3.symmetric_closure(), sp3);
    }

    #[test]
    fn degree_identities() {
        let d = Digraph::new(5, &[(0, 1), (1, 2), (2, 0), (3, 0), (0, 4)]).unwrap();
        let a = d.arc_count();
        assert_eq!(d.out_degrees().iter().sum::<usize>(), a);
        assert_eq!(d.in_degrees().iter().sum::<usize>(), a);
    }

    #[test]
    fn zagreb_values() {
        for n in 2..=8 {
            assert_eq!(Digraph::directed_cycle(n).unwrap().zagreb_plus(), n);
            assert_eq!(Digraph::directed_path(n).unwrap().zagreb_plus(), n - 1);
        }
        // tree with outdegree sequence [2, 1^{n-3}, 0^2] has Zg+ = n+1
        let t = Digraph::new(5, &[(0, 1), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(t.outdegree_sequence(), vec![2, 1, 1, 0, 0]);
        assert_eq!(t.zagreb_plus(), 6);
    }

    #[test]
    fn classification() {
        for n in 2..=6 {
            let flags = Digraph::directed_path(n).unwrap().classify();
            assert!(flags.oriented_tree && flags.connected && flags.acyclic);
            assert!(!flags.unicyclic);
        }
        let u1 = Digraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        let flags = u1.classify();
        assert!(flags.unicyclic && flags.connected && !flags.oriented_tree);
        assert!(!flags.acyclic);

        let c3k1 = Digraph::directed_cycle(3).unwrap().disjoint_union(&Digraph::k1());
        assert!(!c3k1.classify().connected);

        // digon: one underlying edge, counts as the single cycle
        let digon = Digraph::directed_cycle(2).unwrap();
        assert!(!digon.classify().oriented_tree);
        assert!(!digon.classify().acyclic);
    }

    #[test]
    fn bipartition_cases() {
        let (a, b) = Digraph::directed_cycle(4).unwrap().bipartition().unwrap();
        assert_eq!((a.len(), b.len()), (2, 2));
        assert!(Digraph::directed_cycle(5).unwrap().bipartition().is_none());
        let star = Digraph::oriented_star(2, 2).unwrap();
        let (a, b) = star.bipartition().unwrap();
        assert!(a == vec![0] || b == vec![0]);
        for &(u, v) in star.arcs() {
            assert_ne!(a.contains(&u), a.contains(&v));
        }
    }
}
