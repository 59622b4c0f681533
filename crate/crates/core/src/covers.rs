//! Exact minimum vertex covers and twin covers with verifiable certificates.
//!
//! A twin edge joins two vertices with identical closed neighborhoods; a
//! twin cover must meet every edge that is not a twin edge. Stripping the
//! twin edges of a graph therefore turns twin covers into plain vertex
//! covers, which is exactly how [`min_twin_cover`] computes one.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverKind {
    #[serde(rename = "vertex-cover")]
    VertexCover,
    #[serde(rename = "twin-cover")]
    TwinCover,
}

/// A vertex set claimed to cover every (non-twin) edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub kind: CoverKind,
    pub members: VertexSet,
}

impl CoverCertificate {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// All edges `{u, v}` with `N[u] = N[v]`, as pairs `u < v` in ascending order.
pub fn twin_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        let nu = g.closed_neighbors(u);
        for v in g.neighbors(u).iter() {
            if v > u && nu == g.closed_neighbors(v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// True iff the certificate's defining property holds in `g`.
pub fn verify_cover(g: &Graph, cert: &CoverCertificate) -> bool {
    match cert.kind {
        CoverKind::VertexCover => g
            .edges()
            .iter()
            .all(|&(u, v)| cert.members.contains(u) || cert.members.contains(v)),
        CoverKind::TwinCover => g.edges().iter().all(|&(u, v)| {
            cert.members.contains(u)
                || cert.members.contains(v)
                || g.closed_neighbors(u) == g.closed_neighbors(v)
        }),
    }
}

/// Exact minimum vertex cover by branch and reduce.
///
/// Reductions: vertices of degree 0 are dropped and the neighbor of a
/// degree-1 vertex is forced into the cover. Branching picks a vertex `v`
/// of maximum degree and tries `v` in the cover against all of `N(v)` in
/// the cover, pruned with a greedy-matching lower bound. Among covers of
/// minimum size the search keeps the one whose member list is
/// lexicographically smallest of those it encounters, which makes the
/// output deterministic.
pub fn min_vertex_cover(g: &Graph) -> CoverCertificate {
    let mut best = greedy_matching_cover(g);
    let adj: Vec<VertexSet> = (0..g.n()).map(|v| g.neighbors(v)).collect();
    branch_cover(&adj, VertexSet::empty(), &mut best);
    debug_assert!(verify_cover(
        g,
        &CoverCertificate {
            kind: CoverKind::VertexCover,
            members: best,
        }
    ));
    CoverCertificate {
        kind: CoverKind::VertexCover,
        members: best,
    }
}

/// Exact minimum twin cover: a minimum vertex cover of the graph with all
/// twin edges removed.
pub fn min_twin_cover(g: &Graph) -> CoverCertificate {
    let stripped = g
        .delete_edges(&twin_edges(g))
        .expect("twin edges are edges");
    let vc = min_vertex_cover(&stripped);
    let cert = CoverCertificate {
        kind: CoverKind::TwinCover,
        members: vc.members,
    };
    debug_assert!(verify_cover(g, &cert));
    cert
}

// Both endpoints of a greedily chosen maximal matching: a valid cover and
// the initial incumbent for the search.
fn greedy_matching_cover(g: &Graph) -> VertexSet {
    let mut cover = VertexSet::empty();
    let mut matched = VertexSet::empty();
    for u in 0..g.n() {
        if matched.contains(u) {
            continue;
        }
        if let Some(v) = (g.neighbors(u) - matched).first() {
            matched.insert(u);
            matched.insert(v);
            cover.insert(u);
            cover.insert(v);
        }
    }
    cover
}

// Size of a greedy maximal matching on the remaining graph; every edge of a
// matching needs its own cover vertex.
fn matching_lower_bound(adj: &[VertexSet]) -> usize {
    let mut matched = VertexSet::empty();
    let mut size = 0;
    for u in 0..adj.len() {
        if matched.contains(u) {
            continue;
        }
        if let Some(v) = (adj[u] - matched).first() {
            matched.insert(u);
            matched.insert(v);
            size += 1;
        }
    }
    size
}

fn remove_vertex(adj: &mut [VertexSet], v: usize) {
    for w in adj[v].iter() {
        adj[w].remove(v);
    }
    adj[v] = VertexSet::empty();
}

fn better(candidate: VertexSet, best: VertexSet) -> bool {
    match candidate.len().cmp(&best.len()) {
        Ordering::Less => true,
        Ordering::Equal => candidate.lex_cmp(best) == Ordering::Less,
        Ordering::Greater => false,
    }
}

fn branch_cover(adj: &[VertexSet], cover: VertexSet, best: &mut VertexSet) {
    let mut adj = adj.to_vec();
    let mut cover = cover;
    // reduction loop
    loop {
        let mut changed = false;
        for v in 0..adj.len() {
            if adj[v].len() == 1 {
                let u = adj[v].first().unwrap();
                cover.insert(u);
                remove_vertex(&mut adj, u);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let pivot = (0..adj.len())
        .filter(|&v| !adj[v].is_empty())
        .max_by_key(|&v| (adj[v].len(), usize::MAX - v));
    let Some(v) = pivot else {
        // edgeless: the accumulated cover is complete
        if better(cover, *best) {
            *best = cover;
        }
        return;
    };
    if cover.len() + matching_lower_bound(&adj) > best.len() {
        return;
    }
    // branch 1: v joins the cover
    {
        let mut adj2 = adj.clone();
        let mut cover2 = cover;
        cover2.insert(v);
        remove_vertex(&mut adj2, v);
        branch_cover(&adj2, cover2, best);
    }
    // branch 2: v stays out, so all of N(v) joins
    {
        let mut adj2 = adj;
        let mut cover2 = cover;
        for w in adj2[v].to_vec() {
            cover2.insert(w);
            remove_vertex(&mut adj2, w);
        }
        branch_cover(&adj2, cover2, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::*;
    use crate::graph::Graph;
    use crate::rng::SplitMix64;

    #[test]
    fn twin_edges_cases() {
        assert_eq!(twin_edges(&complete(3)), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(twin_edges(&path(4)), vec![]);
        // K4 minus the edge (0,1): only (2,3) keeps equal closed neighborhoods
        let g = complete(4).delete_edges(&[(0, 1)]).unwrap();
        assert_eq!(twin_edges(&g), vec![(2, 3)]);
    }

    #[test]
    fn min_vertex_cover_cases() {
        assert_eq!(min_vertex_cover(&path(4)).size(), 2);
        assert_eq!(min_vertex_cover(&complete(5)).size(), 4);
        let star = star(4);
        let c = min_vertex_cover(&star);
        assert_eq!(c.size(), 1);
        assert!(c.members.contains(0));
        assert_eq!(min_vertex_cover(&Graph::empty(0)).size(), 0);
        assert_eq!(min_vertex_cover(&Graph::empty(5)).size(), 0);
    }

    #[test]
    fn min_twin_cover_cases() {
        assert_eq!(min_twin_cover(&complete(5)).size(), 0);
        assert_eq!(min_twin_cover(&path(4)).size(), 2);
        // two triangles sharing vertex 0; each triangle's outer pair are twins
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let c = min_twin_cover(&g);
        assert_eq!(c.size(), 1);
        assert!(c.members.contains(0));
    }

    #[test]
    fn verify_cover_cases() {
        let p4 = path(4);
        let vc = |ids: &[usize]| CoverCertificate {
            kind: CoverKind::VertexCover,
            members: ids.iter().copied().collect(),
        };
        assert!(verify_cover(&p4, &vc(&[1, 2])));
        assert!(!verify_cover(&p4, &vc(&[0, 3])));
        let tc = CoverCertificate {
            kind: CoverKind::TwinCover,
            members: VertexSet::empty(),
        };
        assert!(verify_cover(&complete(3), &tc));
        assert!(!verify_cover(&p4, &tc));
    }

    fn brute_min(g: &Graph, twin: bool) -> usize {
        let twins = twin_edges(g);
        let is_twin = |u: usize, v: usize| twins.contains(&(u.min(v), u.max(v)));
        (0u32..1 << g.n())
            .filter(|&bits| {
                let s = VertexSet::from_bits(bits as u128);
                g.edges()
                    .iter()
                    .all(|&(u, v)| s.contains(u) || s.contains(v) || (twin && is_twin(u, v)))
            })
            .map(|bits| bits.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn covers_match_brute_force_on_random_graphs() {
        let mut rng = SplitMix64::new(0xC0FE);
        for i in 0..500 {
            let n = 1 + (rng.next_u64() % 10) as usize;
            let p = [0.2, 0.5, 0.8][i % 3];
            let g = crate::generators::gnp(n, p, rng.next_u64());
            let vc = min_vertex_cover(&g);
            let tc = min_twin_cover(&g);
            assert_eq!(vc.size(), brute_min(&g, false), "vc mismatch on {g:?}");
            assert_eq!(tc.size(), brute_min(&g, true), "tc mismatch on {g:?}");
            assert!(tc.size() <= vc.size());
            assert!(verify_cover(&g, &vc));
            assert!(verify_cover(&g, &tc));
        }
    }

    #[test]
    fn deterministic_output() {
        let g = crate::generators::gnp(9, 0.4, 99);
        let a = min_vertex_cover(&g);
        let b = min_vertex_cover(&g);
        assert_eq!(a, b);
    }
}
