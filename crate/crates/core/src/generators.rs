//! Instance generators: the hardness-reduction constructions from split
//! graphs and 3-SAT, plus seeded planted-parameter families for benchmark
//! corpora.
//!
//! Every generator is a pure function of its inputs (and seed, where one
//! exists), so sidecar records regenerate instances bit-exactly.

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::cnf::Cnf;
use crate::graph::Graph;
use crate::rng::SplitMix64;
use crate::solution::SolveError;
use serde::{Deserialize, Serialize};

/// Uniform random graph: every pair is an edge independently with
/// probability `p`; pairs are drawn in ascending `(u, v)` order.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// What an instance was generated from; enough to regenerate it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SourceRecord {
    Split {
        edge_list: String,
        clique: Vec<usize>,
    },
    Cnf {
        dimacs: String,
    },
    PlantedVc {
        n: usize,
        nu: usize,
        p: f64,
    },
    PlantedTc {
        n_cover: usize,
        classes: Vec<(usize, Vec<usize>)>,
        p: f64,
    },
}

/// The JSON sidecar written next to every generated graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceSidecar {
    pub reduction: String,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub source: SourceRecord,
    pub seed: Option<u64>,
    pub expected: Option<bool>,
}

/// A generated instance: the graph plus the question `(r, k)` it encodes
/// and where it came from. `expected` is the source's answer when an
/// oracle solved it.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub r: usize,
    pub k: usize,
    pub reduction: &'static str,
    pub source: SourceRecord,
    pub seed: Option<u64>,
    pub expected: Option<bool>,
}

impl GeneratedInstance {
    pub fn sidecar(&self) -> InstanceSidecar {
        InstanceSidecar {
            reduction: self.reduction.to_string(),
            r: Some(self.r),
            k: Some(self.k),
            source: self.source.clone(),
            seed: self.seed,
            expected: self.expected,
        }
    }
}

fn check_capacity(n: usize, what: &str) -> Result<(), SolveError> {
    if n > MAX_VERTICES {
        return Err(SolveError::InvalidArgument(format!(
            "{what} would have {n} vertices, above the capacity of {MAX_VERTICES}"
        )));
    }
    Ok(())
}

/// Checks that `(clique_part, rest)` is a split partition with both sides
/// of size at least two.
fn validate_split(g: &Graph, clique_part: VertexSet) -> Result<(), SolveError> {
    if !clique_part.is_subset_of(g.vertices()) {
        return Err(SolveError::InvalidArgument(
            "clique part contains vertices outside the graph".into(),
        ));
    }
    let independent = g.vertices() - clique_part;
    if clique_part.len() < 2 || independent.len() < 2 {
        return Err(SolveError::InvalidArgument(format!(
            "split sides must both have at least 2 vertices (clique {}, independent {})",
            clique_part.len(),
            independent.len()
        )));
    }
    for u in clique_part.iter() {
        for v in clique_part.iter() {
            if v > u && !g.has_edge(u, v) {
                return Err(SolveError::InvalidArgument(format!(
                    "clique part misses the edge ({u}, {v})"
                )));
            }
        }
    }
    for u in independent.iter() {
        if let Some(v) = (g.neighbors(u) & independent).first() {
            return Err(SolveError::InvalidArgument(format!(
                "independent part contains the edge ({u}, {v})"
            )));
        }
    }
    Ok(())
}

fn split_source_record(g: &Graph, clique_part: VertexSet) -> SourceRecord {
    SourceRecord::Split {
        edge_list: g.to_edge_list_string(),
        clique: clique_part.to_vec(),
    }
}

/// `k` copies of the split source with the union of clique parts made one
/// clique. The output asks for `r`-units and `k` of them; it is a
/// yes-instance iff the source has a dominating set of size at most `r`.
pub fn gen_split_k_copies(
    g: &Graph,
    clique_part: VertexSet,
    r: usize,
    k: usize,
) -> Result<GeneratedInstance, SolveError> {
    copies_with_joined_cliques(g, clique_part, r, k, k, "split-k")
}

/// `r` copies of the split source with the clique parts joined. Same output
/// shape as [`gen_split_k_copies`] with the roles of `r` and `k` exchanged:
/// yes iff the source has a dominating set of size at most `k`.
pub fn gen_split_r_copies(
    g: &Graph,
    clique_part: VertexSet,
    r: usize,
    k: usize,
) -> Result<GeneratedInstance, SolveError> {
    copies_with_joined_cliques(g, clique_part, r, k, r, "split-r")
}

fn copies_with_joined_cliques(
    g: &Graph,
    clique_part: VertexSet,
    r: usize,
    k: usize,
    copies: usize,
    reduction: &'static str,
) -> Result<GeneratedInstance, SolveError> {
    if r == 0 || k == 0 || copies == 0 {
        return Err(SolveError::InvalidArgument(
            "r and k must be positive".into(),
        ));
    }
    validate_split(g, clique_part)?;
    let n = g.n();
    check_capacity(n * copies, reduction)?;
    let mut edges = Vec::new();
    for c in 0..copies {
        for (u, v) in g.edges() {
            edges.push((c * n + u, c * n + v));
        }
    }
    let clique_ids: Vec<usize> = (0..copies)
        .flat_map(|c| clique_part.iter().map(move |v| c * n + v))
        .collect();
    for i in 0..clique_ids.len() {
        for j in i + 1..clique_ids.len() {
            edges.push((clique_ids[i], clique_ids[j]));
        }
    }
    let graph = Graph::from_edges(n * copies, &edges)
        .map_err(|e| SolveError::Internal(format!("{reduction} construction: {e}")))?;
    Ok(GeneratedInstance {
        graph,
        r,
        k,
        reduction,
        source: split_source_record(g, clique_part),
        seed: None,
        expected: None,
    })
}

/// Bipartite construction: clique edges are deleted and every copy gains a
/// triangle-free gadget `s1, s2, t` with `t` joined to the whole clique
/// part; copies are chained through their `s1` vertices. The output asks
/// for units of size `r + 1` (and `k` of them); yes iff the source has a
/// dominating set of size at most `r`.
pub fn gen_bipartite_t_gadget(
    g: &Graph,
    clique_part: VertexSet,
    r: usize,
    k: usize,
) -> Result<GeneratedInstance, SolveError> {
    if r < 2 || k == 0 {
        return Err(SolveError::InvalidArgument(
            "needs r >= 2 and k >= 1".into(),
        ));
    }
    validate_split(g, clique_part)?;
    let n = g.n();
    let block = n + 3;
    check_capacity(block * k, "bip-t")?;
    let clique_edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| clique_part.contains(u) && clique_part.contains(v))
        .collect();
    let base = g
        .delete_edges(&clique_edges)
        .map_err(|e| SolveError::Internal(format!("bip-t strip: {e}")))?;
    let mut edges = Vec::new();
    for c in 0..k {
        let off = c * block;
        let (s1, s2, t) = (off + n, off + n + 1, off + n + 2);
        for (u, v) in base.edges() {
            edges.push((off + u, off + v));
        }
        edges.push((s1, t));
        edges.push((s2, t));
        for v in clique_part.iter() {
            edges.push((t, off + v));
        }
        if c + 1 < k {
            edges.push((s1, (c + 1) * block + n));
        }
    }
    let graph = Graph::from_edges(block * k, &edges)
        .map_err(|e| SolveError::Internal(format!("bip-t construction: {e}")))?;
    Ok(GeneratedInstance {
        graph,
        r: r + 1,
        k,
        reduction: "bip-t",
        source: split_source_record(g, clique_part),
        seed: None,
        expected: None,
    })
}

/// Bipartite construction: clique edges are deleted and `k` paths of `r`
/// vertices are attached, each path head joined to the whole clique part.
/// Yes iff the source has a dominating set of size at most `k`.
pub fn gen_bipartite_paths(
    g: &Graph,
    clique_part: VertexSet,
    r: usize,
    k: usize,
) -> Result<GeneratedInstance, SolveError> {
    if r == 0 || k == 0 {
        return Err(SolveError::InvalidArgument(
            "r and k must be positive".into(),
        ));
    }
    validate_split(g, clique_part)?;
    let n = g.n();
    check_capacity(n + k * r, "bip-paths")?;
    let clique_edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| clique_part.contains(u) && clique_part.contains(v))
        .collect();
    let base = g
        .delete_edges(&clique_edges)
        .map_err(|e| SolveError::Internal(format!("bip-paths strip: {e}")))?;
    let mut edges = base.edges();
    for i in 0..k {
        let head = n + i * r;
        for v in clique_part.iter() {
            edges.push((head, v));
        }
        for j in 1..r {
            edges.push((head + j - 1, head + j));
        }
    }
    let graph = Graph::from_edges(n + k * r, &edges)
        .map_err(|e| SolveError::Internal(format!("bip-paths construction: {e}")))?;
    Ok(GeneratedInstance {
        graph,
        r,
        k,
        reduction: "bip-paths",
        source: split_source_record(g, clique_part),
        seed: None,
        expected: None,
    })
}

/// Variable-gadget construction from a 3-SAT formula with `n` variables
/// and `m` clauses: per variable the vertices `v_x, v_x̄, y` and a pendant
/// path `z_1..z_{r-1}`, per clause one vertex joined to its literals.
/// The output has `(r+2)·n + m` vertices, asks for `n` units of size `r`,
/// and is yes iff the formula is satisfiable. Maximum degree 3 and
/// planarity of the incidence structure hold when the formula is
/// restricted (each variable exactly three occurrences, at most two per
/// polarity).
pub fn gen_from_3sat(cnf: &Cnf, r: usize) -> Result<GeneratedInstance, SolveError> {
    if r <= 1 {
        return Err(SolveError::InvalidArgument(
            "the formula construction needs r >= 2".into(),
        ));
    }
    let n = cnf.num_vars;
    let m = cnf.clauses.len();
    check_capacity((r + 2) * n + m, "sat")?;
    let var_block = r + 2;
    let v_pos = |i: usize| i * var_block;
    let v_neg = |i: usize| i * var_block + 1;
    let y = |i: usize| i * var_block + 2;
    // z_j for j in 1..r is y's pendant path; z_0 is y itself
    let z = |i: usize, j: usize| i * var_block + 2 + j;
    let clause = |j: usize| n * var_block + j;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((v_pos(i), y(i)));
        edges.push((v_neg(i), y(i)));
        for j in 1..r {
            edges.push((z(i, j - 1), z(i, j)));
        }
    }
    for (j, lits) in cnf.clauses.iter().enumerate() {
        for &lit in lits {
            let i = lit.unsigned_abs() as usize - 1;
            let terminal = if lit > 0 { v_pos(i) } else { v_neg(i) };
            edges.push((clause(j), terminal));
        }
    }
    let graph = Graph::from_edges(var_block * n + m, &edges)
        .map_err(|e| SolveError::Internal(format!("sat construction: {e}")))?;
    Ok(GeneratedInstance {
        graph,
        r,
        k: n,
        reduction: "sat",
        source: SourceRecord::Cnf {
            dimacs: cnf.to_dimacs_string(),
        },
        seed: None,
        expected: None,
    })
}

/// Random graph with a planted vertex cover: vertices `0..nu` form the
/// cover; edges exist only inside the cover or between cover and
/// independent side, each kept with probability `edge_prob`, and every
/// independent vertex is wired to at least one cover vertex.
pub fn gen_planted_vc(n: usize, nu: usize, edge_prob: f64, seed: u64) -> Graph {
    assert!(nu <= n, "planted cover larger than the graph");
    assert!(n <= MAX_VERTICES);
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    let mut covered = vec![false; n];
    for u in 0..n {
        for v in u + 1..n {
            if u >= nu && v >= nu {
                continue; // both on the independent side
            }
            if rng.next_bool(edge_prob) {
                edges.push((u, v));
                covered[u] = true;
                covered[v] = true;
            }
        }
    }
    if nu > 0 {
        for v in nu..n {
            if !covered[v] {
                let w = rng.next_below(nu as u64) as usize;
                edges.push((w, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random graph with a planted twin cover: vertices `0..n_cover` are wired
/// randomly among themselves; each `(size, attach)` class is a clique of
/// mutual twins whose members all attach to exactly `attach`.
pub fn gen_planted_twin_cover(
    n_cover: usize,
    classes: &[(usize, VertexSet)],
    edge_prob: f64,
    seed: u64,
) -> Result<Graph, SolveError> {
    let n = n_cover + classes.iter().map(|&(s, _)| s).sum::<usize>();
    check_capacity(n, "planted twin cover")?;
    let cover_set = VertexSet::full(n_cover);
    for (i, (size, attach)) in classes.iter().enumerate() {
        if attach.is_empty() {
            return Err(SolveError::InvalidArgument(format!(
                "class {i} has an empty attach set; it would be a detached clique"
            )));
        }
        if !attach.is_subset_of(cover_set) {
            return Err(SolveError::InvalidArgument(format!(
                "class {i} attaches outside the cover"
            )));
        }
        if *size == 0 {
            return Err(SolveError::InvalidArgument(format!("class {i} is empty")));
        }
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n_cover {
        for v in u + 1..n_cover {
            if rng.next_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let mut next = n_cover;
    for (size, attach) in classes {
        let members: Vec<usize> = (next..next + size).collect();
        next += size;
        for (a, &u) in members.iter().enumerate() {
            for &v in &members[a + 1..] {
                edges.push((u, v));
            }
            for w in attach.iter() {
                edges.push((w, u));
            }
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| SolveError::Internal(format!("planted tc: {e}")))
}

/// A 2-coloring check; bipartite outputs of the bipartite generators are
/// validated with this.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut color = vec![None::<bool>; g.n()];
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            let cv = color[v].unwrap();
            for w in g.neighbors(v).iter() {
                match color[w] {
                    None => {
                        color[w] = Some(!cv);
                        queue.push(w);
                    }
                    Some(cw) if cw == cv => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{min_twin_cover, min_vertex_cover, twin_edges};
    use crate::graph::parse_edge_list;

    fn split_source() -> (Graph, VertexSet) {
        // clique {0,1}, independent {2,3}, edges 0-2 and 1-3
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        (g, [0, 1].into_iter().collect())
    }

    #[test]
    fn split_validation() {
        let star = crate::graph::testutil::star(2);
        // clique side of size 1 is rejected
        assert!(matches!(
            gen_split_k_copies(&star, VertexSet::singleton(0), 2, 2),
            Err(SolveError::InvalidArgument(_))
        ));
        let (g, c) = split_source();
        assert!(gen_split_k_copies(&g, c, 2, 2).is_ok());
        // a non-clique "clique part"
        let bad: VertexSet = [0, 2].into_iter().collect();
        assert!(matches!(
            gen_split_k_copies(&g, bad, 2, 2),
            Err(SolveError::InvalidArgument(_))
        ));
    }

    #[test]
    fn split_k_copies_shape() {
        let (g, c) = split_source();
        let inst = gen_split_k_copies(&g, c, 2, 2).unwrap();
        assert_eq!(inst.graph.n(), 8);
        assert_eq!((inst.r, inst.k), (2, 2));
        // the four clique vertices {0,1,4,5} form a clique
        for &u in &[0usize, 1, 4, 5] {
            for &v in &[0usize, 1, 4, 5] {
                if u < v {
                    assert!(inst.graph.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn split_r_copies_shape() {
        let (g, c) = split_source();
        let inst = gen_split_r_copies(&g, c, 3, 2).unwrap();
        assert_eq!(inst.graph.n(), 12);
        assert_eq!((inst.r, inst.k), (3, 2));
    }

    #[test]
    fn bipartite_outputs_are_bipartite() {
        let (g, c) = split_source();
        let t = gen_bipartite_t_gadget(&g, c, 2, 2).unwrap();
        assert!(is_bipartite(&t.graph));
        assert_eq!(t.r, 3); // unit size r + 1
        assert_eq!(t.graph.n(), 2 * (4 + 3));
        let p = gen_bipartite_paths(&g, c, 3, 2).unwrap();
        assert!(is_bipartite(&p.graph));
        assert_eq!(p.graph.n(), 4 + 2 * 3);
    }

    #[test]
    fn sat_construction_counts() {
        // the four-variable, four-clause restricted formula
        let cnf = Cnf::new(
            4,
            vec![
                vec![1, 2, -4],
                vec![-1, 2, -3],
                vec![-2, 3, 4],
                vec![-1, -3, -4],
            ],
        )
        .unwrap();
        assert!(cnf.is_restricted());
        let inst = gen_from_3sat(&cnf, 3).unwrap();
        assert_eq!(inst.graph.n(), (3 + 2) * 4 + 4); // 24 vertices
        assert_eq!(inst.k, 4);
        assert!(inst.graph.max_degree() <= 3);
        assert!(is_bipartite(&inst.graph));
        assert!(matches!(gen_from_3sat(&cnf, 1), Err(SolveError::InvalidArgument(_))));
    }

    #[test]
    fn planted_vc_bounds_and_determinism() {
        let g = gen_planted_vc(6, 2, 1.0, 1);
        assert!(min_vertex_cover(&g).size() <= 2);
        let g = gen_planted_vc(40, 10, 0.3, 7);
        assert!(min_vertex_cover(&g).size() <= 10);
        // every independent vertex has a cover neighbor
        for v in 10..40 {
            assert!(!(g.neighbors(v) & VertexSet::full(10)).is_empty());
        }
        assert_eq!(g, gen_planted_vc(40, 10, 0.3, 7));
        assert_ne!(g, gen_planted_vc(40, 10, 0.3, 8));
    }

    #[test]
    fn planted_tc_shape() {
        let classes = [(3usize, VertexSet::singleton(0))];
        let g = gen_planted_twin_cover(1, &classes, 0.0, 0).unwrap();
        assert_eq!(g.n(), 4);
        assert!(min_twin_cover(&g).size() <= 1);
        // intra-class edges are twin edges
        let twins = twin_edges(&g);
        for (u, v) in [(1, 2), (1, 3), (2, 3)] {
            assert!(twins.contains(&(u, v)));
        }
        assert!(matches!(
            gen_planted_twin_cover(1, &[(2, VertexSet::empty())], 0.5, 0),
            Err(SolveError::InvalidArgument(_))
        ));
    }

    #[test]
    fn sidecar_roundtrip() {
        let (g, c) = split_source();
        let mut inst = gen_split_k_copies(&g, c, 2, 2).unwrap();
        inst.expected = Some(true);
        let json = serde_json::to_string(&inst.sidecar()).unwrap();
        let back: InstanceSidecar = serde_json::from_str(&json).unwrap();
        assert_eq!(back.reduction, "split-k");
        assert_eq!(back.expected, Some(true));
        let SourceRecord::Split { edge_list, clique } = back.source else {
            panic!("wrong source kind");
        };
        assert_eq!(parse_edge_list(&edge_list).unwrap(), g);
        assert_eq!(clique, vec![0, 1]);
    }
}
