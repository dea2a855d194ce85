//! Directed graphs over players `0..n`.
//!
//! Edge `u -> v` in the follower graph means `v` follows `u` (receives `x_u`
//! in its feed). In the interference graph it means `x_u` appears in the cost
//! of `v`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints `>= n`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !set.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Self::from_set(n, set))
    }

    fn from_set(n: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        // BTreeSet iteration is sorted by (u, v), so every list ends up sorted.
        for &(u, v) in &edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in &mut in_adj {
            list.sort_unstable();
        }
        Digraph {
            n,
            edges,
            out_adj,
            in_adj,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical `(from, to)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: i, n: self.n })
        }
    }

    /// `{ j : j -> i }`, sorted. For the follower graph these are the users `i` follows.
    pub fn in_neighbors(&self, i: usize) -> Result<&[usize]> {
        self.check(i)?;
        Ok(&self.in_adj[i])
    }

    /// `{ j : i -> j }`, sorted. For the follower graph these are the followers of `i`.
    pub fn out_neighbors(&self, i: usize) -> Result<&[usize]> {
        self.check(i)?;
        Ok(&self.out_adj[i])
    }

    /// Strongly connected components (Kosaraju), each sorted, ordered by smallest member.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);

        // Iterative DFS recording finish order.
        for root in 0..n {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&u) = self.out_adj[v].get(*next) {
                    *next += 1;
                    if !visited[u] {
                        visited[u] = true;
                        stack.push((u, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }

        visited.fill(false);
        let mut comps = Vec::new();
        for &root in order.iter().rev() {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut comp = vec![root];
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &u in &self.in_adj[v] {
                    if !visited[u] {
                        visited[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_unstable_by_key(|c| c[0]);
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected_components().len() == 1
    }

    /// Interference graph of a follower graph.
    ///
    /// `j -> i` is present iff `j != i` and either `j -> i` is a follower edge
    /// (`x_j` is in the feed of `i`) or `i` and `j` share a follower `l`
    /// (`x_j` is in the feed mass that prices the attention `i` receives from `l`).
    pub fn interference(&self) -> Digraph {
        let mut set = self.edges.clone();
        for l in 0..self.n {
            let producers = &self.in_adj[l];
            for &i in producers {
                for &j in producers {
                    if i != j {
                        set.insert((j, i));
                    }
                }
            }
        }
        Self::from_set(self.n, set)
    }

    /// Undirected support: each `{u, v}` with `u -> v` or `v -> u`, as `(min, max)`, sorted.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        set.into_iter().collect()
    }

    /// Neighbours of each node in the undirected support, sorted.
    pub fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v) in self.undirected_edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> Digraph {
        Digraph::new(2, [(0, 1), (1, 0)]).unwrap()
    }

    /// Bundled follower graph, 0-based.
    fn fig2() -> Digraph {
        let edges = [(3, 0), (3, 2), (3, 4), (2, 1), (2, 4), (4, 3), (0, 2), (1, 0)];
        Digraph::new(5, edges).unwrap()
    }

    #[test]
    fn two_cycle_neighbors() {
        let g = two_cycle();
        assert_eq!(g.in_neighbors(0).unwrap(), &[1]);
        assert_eq!(g.out_neighbors(1).unwrap(), &[0]);
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn fig2_neighbors() {
        let g = fig2();
        assert_eq!(g.in_neighbors(4).unwrap(), &[2, 3]);
        assert_eq!(g.in_neighbors(3).unwrap(), &[4]);
        assert_eq!(g.out_neighbors(3).unwrap(), &[0, 2, 4]);
        assert_eq!(g.out_neighbors(2).unwrap(), &[1, 4]);
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn out_of_range_lookup() {
        let g = two_cycle();
        assert_eq!(
            g.in_neighbors(2),
            Err(Error::NodeOutOfRange { node: 2, n: 2 })
        );
        assert!(g.out_neighbors(5).is_err());
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Digraph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Digraph::new(2, [(0, 1), (0, 1)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Digraph::new(2, [(0, 2)]),
            Err(Error::NodeOutOfRange { node: 2, .. })
        ));
        assert_eq!(Digraph::new(0, []), Err(Error::EmptyGraph));
    }

    #[test]
    fn one_way_edge_is_not_strongly_connected() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(!g.is_strongly_connected());
        assert_eq!(g.strongly_connected_components(), vec![vec![0], vec![1]]);
        assert!(Digraph::new(1, []).unwrap().is_strongly_connected());
    }

    #[test]
    fn interference_of_two_cycle_is_itself() {
        let g = two_cycle();
        assert_eq!(g.interference(), g);
    }

    #[test]
    fn interference_of_fig2() {
        let gc = fig2();
        let gi = gc.interference();
        assert_eq!(gi.edge_count(), 12);
        // 1->4, 3->4, 2->4, 4->2 in 1-based ids.
        let extra: BTreeSet<_> = gi.edges().filter(|&(u, v)| !gc.contains(u, v)).collect();
        let expected: BTreeSet<_> = [(0, 3), (2, 3), (1, 3), (3, 1)].into_iter().collect();
        assert_eq!(extra, expected);
        assert!(gc.is_subgraph_of(&gi));
        assert!(gi.is_strongly_connected());
        assert!(gi.edges().all(|(u, v)| u != v));
    }

    #[test]
    fn undirected_support_merges_reciprocal_edges() {
        let g = fig2();
        // 4->5 and 5->4 collapse into one channel.
        assert_eq!(g.undirected_edges().len(), 7);
        assert_eq!(g.undirected_adjacency()[2], vec![0, 1, 3, 4]);
    }
}
