//! Branching solver for the decision question "is there a family of at
//! most `k` units?".
//!
//! The recursion picks the smallest undominated vertex, enumerates every
//! unit that could dominate it among the still-unused vertices, and
//! branches. Depth is bounded by `k`, so the tree has at most
//! (candidates per vertex)^k nodes; with maximum degree Δ the candidate
//! count per vertex is Δ^O(r²).

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::solution::{verify_solution, GroupedSolution, SolveError, SolveOutcome, SolveStats};
use std::time::Instant;

/// All connected `r`-sets that avoid `forbidden` and intersect `N[v]`
/// (the units that could dominate `v`). Deterministic order: sets are
/// grouped by their smallest member of `N[v] \ forbidden`.
pub fn enumerate_candidate_units(
    g: &Graph,
    v: usize,
    r: usize,
    forbidden: VertexSet,
) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let seeds = g.closed_neighbors(v) - forbidden;
    let mut allowed = g.vertices() - forbidden;
    for w in seeds.iter() {
        out.extend(g.connected_sets_containing(w, r, allowed));
        // later seeds may not reuse w, so each unit is emitted exactly once
        allowed.remove(w);
    }
    out
}

/// Decides whether an `r`-grouped dominating set with at most `k` units
/// exists; returns a verified witness when it does.
pub fn solve_xp(g: &Graph, r: usize, k: usize) -> Result<SolveOutcome, SolveError> {
    if r == 0 {
        return Err(SolveError::InvalidArgument(
            "unit size r must be positive".into(),
        ));
    }
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let mut units = Vec::new();
    let found = branch(g, r, k, VertexSet::empty(), &mut units, &mut stats.nodes);
    stats.wall = start.elapsed();
    if found {
        let sol = GroupedSolution {
            r,
            units: units.clone(),
        };
        if let Err(violation) = verify_solution(g, &sol) {
            return Err(SolveError::Internal(format!(
                "branching produced an invalid family: {violation}"
            )));
        }
        let k_used = sol.units.len();
        Ok(SolveOutcome::feasible(k_used, sol, stats))
    } else {
        Ok(SolveOutcome::infeasible(stats))
    }
}

fn branch(
    g: &Graph,
    r: usize,
    depth_left: usize,
    used: VertexSet,
    units: &mut Vec<VertexSet>,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    let dominated = g.closed_neighborhood(used);
    let Some(v) = (g.vertices() - dominated).first() else {
        return true;
    };
    if depth_left == 0 {
        return false;
    }
    for unit in enumerate_candidate_units(g, v, r, used) {
        units.push(unit);
        if branch(g, r, depth_left - 1, used | unit, units, nodes) {
            return true;
        }
        units.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::*;
    use crate::solution::brute_force_min_units;
    use crate::rng::SplitMix64;

    fn vs(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn candidate_units_on_p4() {
        let p4 = path(4);
        assert_eq!(
            enumerate_candidate_units(&p4, 0, 2, VertexSet::empty()),
            vec![vs(&[0, 1]), vs(&[1, 2])]
        );
        assert_eq!(
            enumerate_candidate_units(&p4, 0, 2, vs(&[1])),
            Vec::<VertexSet>::new()
        );
    }

    #[test]
    fn candidate_units_on_k3() {
        let k3 = complete(3);
        assert_eq!(
            enumerate_candidate_units(&k3, 0, 3, VertexSet::empty()),
            vec![vs(&[0, 1, 2])]
        );
    }

    #[test]
    fn candidate_completeness_vs_subset_enumeration() {
        let mut rng = SplitMix64::new(0xCAFE);
        for _ in 0..80 {
            let n = 2 + (rng.next_u64() % 9) as usize; // n <= 10
            let g = crate::generators::gnp(n, 0.4, rng.next_u64());
            let forbidden = VertexSet::from_bits(rng.next_u64() as u128) & g.vertices();
            for v in (g.vertices() - forbidden).iter().take(3) {
                for r in 1..=3usize {
                    let mut got = enumerate_candidate_units(&g, v, r, forbidden);
                    got.sort();
                    let before = got.len();
                    got.dedup();
                    assert_eq!(before, got.len(), "duplicates emitted");
                    let mut want = Vec::new();
                    for bits in 0u32..1 << n {
                        let s = VertexSet::from_bits(bits as u128);
                        if s.len() == r
                            && !s.intersects(forbidden)
                            && s.intersects(g.closed_neighbors(v))
                            && g.is_connected_induced(s)
                        {
                            want.push(s);
                        }
                    }
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn decision_cases() {
        let c4 = cycle(4);
        assert!(solve_xp(&c4, 2, 1).unwrap().is_feasible());
        let c6 = cycle(6);
        assert!(!solve_xp(&c6, 2, 1).unwrap().is_feasible());
        assert!(solve_xp(&c6, 2, 2).unwrap().is_feasible());
        // k = 0 is feasible exactly on the empty graph
        assert!(solve_xp(&crate::graph::Graph::empty(0), 2, 0).unwrap().is_feasible());
        assert!(!solve_xp(&c4, 2, 0).unwrap().is_feasible());
    }

    #[test]
    fn agrees_with_oracle_across_k() {
        let mut rng = SplitMix64::new(0xD0E);
        for _ in 0..40 {
            let n = 1 + (rng.next_u64() % 8) as usize;
            let g = crate::generators::gnp(n, 0.4, rng.next_u64());
            for r in 1..=3usize {
                let oracle = brute_force_min_units(&g, r, None).unwrap();
                for k in 0..=(n / r) {
                    let got = solve_xp(&g, r, k).unwrap().is_feasible();
                    let want = matches!(oracle.min_units, Some(m) if m <= k);
                    assert_eq!(got, want, "g={g:?} r={r} k={k}");
                }
            }
        }
    }
}
