//! Simple undirected graphs on at most 128 vertices.
//!
//! Adjacency is one [`VertexSet`] row per vertex, so neighborhood unions,
//! domination checks, and induced-connectivity tests are word operations.
//! Graphs are immutable after construction; every "mutation" returns a new
//! graph.

use crate::bitset::{VertexSet, MAX_VERTICES};
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

/// Supported text encodings for graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `# comment` lines, one `n m` header line, then `m` lines `u v`
    /// with 0-indexed endpoints.
    EdgeList,
    /// DIMACS: `c` comments, `p edge n m`, then `e u v` with 1-indexed
    /// endpoints.
    Dimacs,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edge-list" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            other => Err(format!("unknown graph format {other:?} (expected edge-list or dimacs)")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex id {id} out of range for n={n}")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: {n} vertices exceed the supported maximum of 128")]
    TooManyVertices { line: usize, n: usize },
}

/// Errors from graph operations with violated preconditions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("expected two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
}

/// An immutable simple undirected graph with vertex ids `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are deduplicated;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        assert!(n <= MAX_VERTICES, "graph capacity is {MAX_VERTICES} vertices");
        let mut adj = vec![VertexSet::empty(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SameVertex(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u.max(v)));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let m = adj.iter().map(|s| s.len()).sum::<usize>() / 2;
        Ok(Graph { n, m, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, &[]).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Open neighborhood of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Closed neighborhood of `v`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v] | VertexSet::singleton(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// All vertices as a set.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Union of closed neighborhoods over `s`: `s ∪ ⋃_{v∈s} N(v)`.
    pub fn closed_neighborhood(&self, s: VertexSet) -> VertexSet {
        let mut out = s;
        for v in s.iter() {
            out |= self.adj[v];
        }
        out
    }

    /// Union of open neighborhoods over `s` (members of `s` included only
    /// when adjacent to another member).
    pub fn open_neighborhood(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::empty();
        for v in s.iter() {
            out |= self.adj[v];
        }
        out
    }

    /// Whether `s` is a dominating set.
    pub fn dominates_all(&self, s: VertexSet) -> bool {
        self.closed_neighborhood(s) == self.vertices()
    }

    /// Whether the subgraph induced by `s` is connected.
    ///
    /// Convention: the empty set is not connected, singletons are.
    pub fn is_connected_induced(&self, s: VertexSet) -> bool {
        let Some(start) = s.first() else {
            return false;
        };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            next &= s;
            next -= seen;
            seen |= next;
            frontier = next;
        }
        seen == s
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut remaining = self.vertices();
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::empty();
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                next -= comp;
                comp |= next;
                frontier = next;
            }
            remaining -= comp;
            out.push(comp);
        }
        out
    }

    /// Whether `u` and `v` are true twins (`N[u] = N[v]`).
    pub fn are_true_twins(&self, u: usize, v: usize) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        if u >= self.n || v >= self.n {
            return Err(GraphError::OutOfRange(u.max(v)));
        }
        Ok(self.closed_neighbors(u) == self.closed_neighbors(v))
    }

    /// A copy of the graph without the listed edges. Every listed pair must
    /// currently be an edge.
    pub fn delete_edges(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = self.adj.clone();
        for &(u, v) in edges {
            if u >= self.n || v >= self.n {
                return Err(GraphError::OutOfRange(u.max(v)));
            }
            if u == v {
                return Err(GraphError::SameVertex(u));
            }
            if !adj[u].contains(v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
            adj[u].remove(v);
            adj[v].remove(u);
        }
        let m = adj.iter().map(|s| s.len()).sum::<usize>() / 2;
        Ok(Graph { n: self.n, m, adj })
    }

    /// The subgraph induced by `s`, with vertices renumbered `0..|s|` in
    /// ascending order of their old ids. Returns the new graph and the
    /// old id of each new vertex.
    pub fn induced_subgraph(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        let old_ids: Vec<usize> = s.iter().collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in old_ids.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![VertexSet::empty(); old_ids.len()];
        for (i, &v) in old_ids.iter().enumerate() {
            for w in (self.adj[v] & s).iter() {
                adj[i].insert(pos[w]);
            }
        }
        let m = adj.iter().map(|a| a.len()).sum::<usize>() / 2;
        (
            Graph {
                n: old_ids.len(),
                m,
                adj,
            },
            old_ids,
        )
    }

    /// Disjoint union; the i-th input occupies a contiguous id block after
    /// the blocks of its predecessors.
    pub fn disjoint_union(parts: &[&Graph]) -> Graph {
        let n: usize = parts.iter().map(|g| g.n).sum();
        assert!(n <= MAX_VERTICES, "disjoint union exceeds {MAX_VERTICES} vertices");
        let mut edges = Vec::new();
        let mut offset = 0;
        for g in parts {
            for (u, v) in g.edges() {
                edges.push((u + offset, v + offset));
            }
            offset += g.n;
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// All connected induced vertex sets of exactly `size` vertices that
    /// contain `root` and stay inside `allowed`. Each set is produced once;
    /// the order is deterministic.
    pub fn connected_sets_containing(
        &self,
        root: usize,
        size: usize,
        allowed: VertexSet,
    ) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if size == 0 || !allowed.contains(root) {
            return out;
        }
        let cur = VertexSet::singleton(root);
        if size == 1 {
            out.push(cur);
            return out;
        }
        let frontier = (self.adj[root] & allowed) - cur;
        self.grow_connected(cur, frontier, VertexSet::empty(), size, allowed, &mut out);
        out
    }

    // Classic duplicate-free enumeration: once an extension vertex has been
    // tried, it is banned from the entire remaining subtree, so every set
    // is produced in exactly one branch.
    fn grow_connected(
        &self,
        cur: VertexSet,
        frontier: VertexSet,
        mut banned: VertexSet,
        size: usize,
        allowed: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        let mut rest = frontier;
        while let Some(w) = rest.first() {
            rest.remove(w);
            banned.insert(w);
            let next = cur | VertexSet::singleton(w);
            if next.len() == size {
                out.push(next);
            } else {
                let fr = ((rest | (self.adj[w] & allowed)) - next) - banned;
                self.grow_connected(next, fr, banned, size, allowed, out);
            }
        }
    }

    /// Serializes in edge-list format (parse/serialize round-trips preserve
    /// the vertex count and edge set).
    pub fn to_edge_list_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// Serializes in DIMACS format with 1-indexed endpoints.
    pub fn to_dimacs_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p edge {} {}", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {} {}", u + 1, v + 1);
        }
        s
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

/// Parses a graph in the given format. See [`GraphFormat`] for the grammar.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

fn two_ints(line: usize, tokens: &[&str]) -> Result<(usize, usize), ParseError> {
    if tokens.len() != 2 {
        return Err(ParseError::Malformed {
            line,
            reason: format!("expected two integers, got {} tokens", tokens.len()),
        });
    }
    let parse = |t: &str| {
        t.parse::<usize>().map_err(|_| ParseError::Malformed {
            line,
            reason: format!("invalid integer {t:?}"),
        })
    };
    Ok((parse(tokens[0])?, parse(tokens[1])?))
}

fn check_edge(line: usize, u: usize, v: usize, n: usize) -> Result<(), ParseError> {
    if u == v {
        return Err(ParseError::SelfLoop { line, v: u });
    }
    if u >= n || v >= n {
        return Err(ParseError::VertexOutOfRange {
            line,
            id: u.max(v),
            n,
        });
    }
    Ok(())
}

/// Parses the edge-list format: `#` comments, an `n m` header, `m` edge lines.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = t.split_ascii_whitespace().collect();
        match header {
            None => {
                let (n, m) = two_ints(line, &tokens)?;
                if n > MAX_VERTICES {
                    return Err(ParseError::TooManyVertices { line, n });
                }
                header = Some((n, m));
            }
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(ParseError::Malformed {
                        line,
                        reason: format!("more edge lines than the declared {m}"),
                    });
                }
                let (u, v) = two_ints(line, &tokens)?;
                check_edge(line, u, v, n)?;
                edges.push((u, v));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError::Malformed {
            line: last_line.max(1),
            reason: "missing `n m` header line".into(),
        });
    };
    if edges.len() < m {
        return Err(ParseError::Malformed {
            line: last_line.max(1),
            reason: format!("declared {m} edges but found {}", edges.len()),
        });
    }
    Ok(Graph::from_edges(n, &edges).expect("validated while parsing"))
}

/// Parses DIMACS (`p edge n m`, `e u v` 1-indexed).
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = t.split_ascii_whitespace().collect();
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "duplicate problem line".into(),
                    });
                }
                if tokens.len() != 4 || tokens[1] != "edge" {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "expected `p edge <n> <m>`".into(),
                    });
                }
                let (n, m) = two_ints(line, &tokens[2..4])?;
                if n > MAX_VERTICES {
                    return Err(ParseError::TooManyVertices { line, n });
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, m)) = header else {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "edge before problem line".into(),
                    });
                };
                if edges.len() == m {
                    return Err(ParseError::Malformed {
                        line,
                        reason: format!("more edge lines than the declared {m}"),
                    });
                }
                let (u1, v1) = two_ints(line, &tokens[1..])?;
                if u1 == 0 || v1 == 0 {
                    return Err(ParseError::Malformed {
                        line,
                        reason: "DIMACS vertex ids are 1-indexed".into(),
                    });
                }
                let (u, v) = (u1 - 1, v1 - 1);
                check_edge(line, u, v, n)?;
                edges.push((u, v));
            }
            other => {
                return Err(ParseError::Malformed {
                    line,
                    reason: format!("unknown line type {other:?}"),
                });
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError::Malformed {
            line: last_line.max(1),
            reason: "missing problem line".into(),
        });
    };
    if edges.len() < m {
        return Err(ParseError::Malformed {
            line: last_line.max(1),
            reason: format!("declared {m} edges but found {}", edges.len()),
        });
    }
    Ok(Graph::from_edges(n, &edges).expect("validated while parsing"))
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn vs(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn parse_empty_graph() {
        let g = parse_edge_list("3 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn parse_triangle() {
        let g = parse_edge_list("3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        for v in 0..3 {
            assert_eq!(g.degree(v), 2);
        }
    }

    #[test]
    fn parse_dimacs_p4() {
        let g = parse_dimacs("p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n").unwrap();
        assert_eq!(g, path(4));
    }

    #[test]
    fn parse_accepts_comments_and_duplicates() {
        let g = parse_edge_list("# a path\n2 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.m(), 1);
        let g = parse_dimacs("c hi\np edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn parse_errors_name_lines() {
        assert_eq!(
            parse_edge_list("2 1\n0 x\n"),
            Err(ParseError::Malformed {
                line: 2,
                reason: "invalid integer \"x\"".into()
            })
        );
        assert_eq!(
            parse_edge_list("2 1\n0 5\n"),
            Err(ParseError::VertexOutOfRange { line: 2, id: 5, n: 2 })
        );
        assert_eq!(parse_edge_list("2 1\n1 1\n"), Err(ParseError::SelfLoop { line: 2, v: 1 }));
        assert_eq!(
            parse_edge_list("200 0\n"),
            Err(ParseError::TooManyVertices { line: 1, n: 200 })
        );
        assert!(matches!(
            parse_edge_list("2 2\n0 1\n"),
            Err(ParseError::Malformed { .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 0\ne 1 2\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn closed_neighborhood_cases() {
        let k3 = complete(3);
        assert_eq!(k3.closed_neighborhood(vs(&[0])), vs(&[0, 1, 2]));
        let p4 = path(4);
        assert_eq!(p4.closed_neighborhood(vs(&[1])), vs(&[0, 1, 2]));
        assert_eq!(p4.closed_neighborhood(VertexSet::empty()), VertexSet::empty());
    }

    #[test]
    fn induced_connectivity_cases() {
        let p4 = path(4);
        assert!(p4.is_connected_induced(vs(&[0, 1])));
        assert!(!p4.is_connected_induced(vs(&[0, 3])));
        assert!(p4.is_connected_induced(vs(&[2])));
        assert!(!p4.is_connected_induced(VertexSet::empty()));
    }

    #[test]
    fn component_cases() {
        assert_eq!(complete(3).connected_components(), vec![vs(&[0, 1, 2])]);
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(g.connected_components(), vec![vs(&[0, 1]), vs(&[2])]);
        assert!(Graph::empty(0).connected_components().is_empty());
    }

    #[test]
    fn twin_cases() {
        assert_eq!(complete(3).are_true_twins(0, 1), Ok(true));
        assert_eq!(path(4).are_true_twins(0, 1), Ok(false));
        // triangle {0,1,2} plus a pendant on 0 breaks the (0,1) twin relation
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.are_true_twins(0, 1), Ok(false));
        assert_eq!(g.are_true_twins(1, 2), Ok(true));
        assert_eq!(g.are_true_twins(1, 1), Err(GraphError::SameVertex(1)));
    }

    #[test]
    fn delete_edges_cases() {
        let k3 = complete(3);
        let p3 = k3.delete_edges(&[(0, 1)]).unwrap();
        assert_eq!(p3.edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(k3.delete_edges(&[]).unwrap(), k3);
        let p4 = path(4);
        let split = p4.delete_edges(&[(1, 2)]).unwrap();
        assert_eq!(split.connected_components(), vec![vs(&[0, 1]), vs(&[2, 3])]);
        assert_eq!(p4.delete_edges(&[(0, 2)]), Err(GraphError::NotAnEdge(0, 2)));
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let p4 = path(4);
        let (h, ids) = p4.induced_subgraph(vs(&[1, 2, 3]));
        assert_eq!(ids, vec![1, 2, 3]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn connected_set_enumeration_matches_brute_force() {
        let mut rng = SplitMix64::new(0x5eed);
        for _ in 0..60 {
            let n = 2 + (rng.next_u64() % 6) as usize;
            let g = crate::generators::gnp(n, 0.45, rng.next_u64());
            let allowed = VertexSet::from_bits(rng.next_u64() as u128) & g.vertices();
            for root in allowed.iter() {
                for size in 1..=4usize {
                    let mut got = g.connected_sets_containing(root, size, allowed);
                    got.sort();
                    let mut want = Vec::new();
                    for bits in 0u32..1 << n {
                        let s = VertexSet::from_bits(bits as u128);
                        if s.len() == size
                            && s.contains(root)
                            && s.is_subset_of(allowed)
                            && g.is_connected_induced(s)
                        {
                            want.push(s);
                        }
                    }
                    let mut got_d = got.clone();
                    got_d.dedup();
                    assert_eq!(got_d.len(), got.len(), "duplicate sets emitted");
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn connectivity_agrees_with_bfs_oracle() {
        // independent oracle: plain BFS on an adjacency-list copy
        fn bfs_connected(g: &Graph, s: VertexSet) -> bool {
            let verts: Vec<usize> = s.iter().collect();
            if verts.is_empty() {
                return false;
            }
            let mut seen = vec![false; g.n()];
            let mut queue = vec![verts[0]];
            seen[verts[0]] = true;
            while let Some(v) = queue.pop() {
                for w in 0..g.n() {
                    if g.has_edge(v, w) && s.contains(w) && !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            verts.into_iter().all(|v| seen[v])
        }

        let mut rng = SplitMix64::new(1234);
        for _ in 0..1000 {
            let n = 1 + (rng.next_u64() % 16) as usize;
            let g = crate::generators::gnp(n, 0.3, rng.next_u64());
            let s = VertexSet::from_bits(rng.next_u64() as u128) & g.vertices();
            assert_eq!(g.is_connected_induced(s), bfs_connected(&g, s));
        }
    }

    #[test]
    fn twin_relation_is_transitive_on_small_graphs() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..500 {
            let n = 3 + (rng.next_u64() % 6) as usize; // n <= 8
            let g = crate::generators::gnp(n, 0.5, rng.next_u64());
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a != b && b != c && a != c {
                            let ab = g.are_true_twins(a, b).unwrap();
                            let bc = g.are_true_twins(b, c).unwrap();
                            if ab && bc {
                                assert!(g.are_true_twins(a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn parse_serialize_roundtrip(n in 0usize..12, seed in any::<u64>()) {
            let g = crate::generators::gnp(n, 0.4, seed);
            let back = parse_edge_list(&g.to_edge_list_string()).unwrap();
            prop_assert_eq!(&back, &g);
            let back = parse_dimacs(&g.to_dimacs_string()).unwrap();
            prop_assert_eq!(&back, &g);
        }
    }
}
