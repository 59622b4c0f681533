//! `r = 1`: ordinary minimum domination, realized as singleton units.
//!
//! For a candidate `X = J ∩ D` the cover vertices outside `N[X]` must be
//! dominated from the independent side, and every independent vertex
//! without an `X` neighbor must join the solution itself. The minimum
//! number of independent vertices covering a cover subset is a set-cover
//! subset DP computed once for all `2^|J|` masks; forced-vertex counts and
//! their coverage are zeta transforms over complement masks.

use super::{finish_stats, BudgetTracker, CoverCtx, SolverConfig};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::solution::{
    verify_solution, GroupedSolution, SolveError, SolveOutcome, SolveStats,
};
use std::time::Instant;

const INF: u32 = u32::MAX;

/// Minimum dominating set of `g`, given a vertex cover, as 1-units.
pub fn solve_r1(
    g: &Graph,
    j_cover: VertexSet,
    cfg: &SolverConfig,
) -> Result<SolveOutcome, SolveError> {
    let start = Instant::now();
    let mut budget = BudgetTracker::new(cfg.state_budget);
    let ctx = CoverCtx::build(g, j_cover, &mut budget)?;
    let jn = ctx.jn();
    let size = 1usize << jn;
    budget.charge(3 * size as u64)?;

    if g.n() == 0 {
        let mut stats = SolveStats::default();
        finish_stats(start, 1, &mut stats);
        return Ok(SolveOutcome::feasible(
            0,
            GroupedSolution { r: 1, units: vec![] },
            stats,
        ));
    }

    // coverers[p]: independent vertices adjacent to cover position p
    let mut coverers: Vec<Vec<usize>> = vec![Vec::new(); jn.max(1)];
    for &v in &ctx.ind {
        let mut m = ctx.vnbr_pos[v];
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            coverers[p].push(v);
        }
    }

    // dp[mask]: fewest independent vertices whose neighborhoods cover mask
    let mut dp = vec![INF; size];
    let mut choice = vec![usize::MAX; size];
    dp[0] = 0;
    for mask in 1..size {
        if mask % 4096 == 0 {
            cfg.check_deadline()?;
        }
        let p = mask.trailing_zeros() as usize;
        for &v in &coverers[p] {
            let rest = mask & !(ctx.vnbr_pos[v] as usize);
            if dp[rest] != INF && dp[rest] + 1 < dp[mask] {
                dp[mask] = dp[rest] + 1;
                choice[mask] = v;
            }
        }
    }

    // cnb[x]: closed neighborhood of the cover subset x, within the cover
    let mut cnb = vec![0u64; size];
    for mask in 1..size {
        let p = mask.trailing_zeros() as usize;
        cnb[mask] = cnb[mask & (mask - 1)] | ctx.cn_pos[p];
    }

    // zeta transforms over "free" masks S = complement of X:
    // forced_cnt[S] = #independent vertices with all neighbors inside S,
    // forced_cov[S] = union of their neighborhoods
    let mut forced_cnt = vec![0u32; size];
    let mut forced_cov = vec![0u64; size];
    for &v in &ctx.ind {
        let m = ctx.vnbr_pos[v] as usize;
        forced_cnt[m] += 1;
        forced_cov[m] |= ctx.vnbr_pos[v];
    }
    for b in 0..jn {
        for mask in 0..size {
            if mask >> b & 1 == 1 {
                forced_cnt[mask] += forced_cnt[mask ^ (1 << b)];
                forced_cov[mask] |= forced_cov[mask ^ (1 << b)];
            }
        }
    }

    let mut best: Option<(u32, usize)> = None; // (total, x mask)
    for x in 0..size {
        if x % 4096 == 0 {
            cfg.check_deadline()?;
        }
        let free = ctx.all_pos as usize & !x;
        let y = ctx.all_pos & !cnb[x];
        let rest = (y & !forced_cov[free]) as usize;
        if dp[rest] == INF {
            continue;
        }
        let total = x.count_ones() + forced_cnt[free] + dp[rest];
        if best.map_or(true, |(t, _)| total < t) {
            best = Some((total, x));
        }
    }

    let (total, x) = best.expect("r=1 is always feasible on a nonempty graph");
    let mut units: Vec<VertexSet> = ctx.mask_to_set(x as u64).iter().map(VertexSet::singleton).collect();
    let free = ctx.all_pos as usize & !x;
    for &v in &ctx.ind {
        if ctx.vnbr_pos[v] as usize & !free == 0 {
            units.push(VertexSet::singleton(v));
        }
    }
    let mut rest = (ctx.all_pos & !cnb[x]) as usize & !(forced_cov[free] as usize);
    while rest != 0 {
        let v = choice[rest];
        units.push(VertexSet::singleton(v));
        rest &= !(ctx.vnbr_pos[v] as usize);
    }
    debug_assert_eq!(units.len(), total as usize);
    let sol = GroupedSolution { r: 1, units };
    if let Err(violation) = verify_solution(g, &sol) {
        return Err(SolveError::Internal(format!(
            "r=1 reconstruction failed verification: {violation}"
        )));
    }
    let mut stats = SolveStats::default();
    finish_stats(start, size as u64, &mut stats);
    Ok(SolveOutcome::feasible(total as usize, sol, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::min_vertex_cover;
    use crate::graph::testutil::*;
    use crate::rng::SplitMix64;
    use crate::solution::brute_force_min_units;

    fn vs(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn p4_needs_two() {
        let p4 = path(4);
        let out = solve_r1(&p4, vs(&[1, 2]), &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(2));
    }

    #[test]
    fn star_center_suffices() {
        let g = star(4);
        let out = solve_r1(&g, vs(&[0]), &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(1));
    }

    #[test]
    fn edgeless_graph_needs_everything() {
        let g = Graph::empty(3);
        let out = solve_r1(&g, VertexSet::empty(), &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(3));
        assert_eq!(out.solution.unwrap().units.len(), 3);
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..60 {
            let n = 1 + (rng.next_u64() % 9) as usize;
            let g = crate::generators::gnp(n, 0.35, rng.next_u64());
            let cover = min_vertex_cover(&g).members;
            let got = solve_r1(&g, cover, &SolverConfig::default()).unwrap();
            let want = brute_force_min_units(&g, 1, None).unwrap();
            assert_eq!(got.min_units, want.min_units, "on {g:?}");
        }
    }
}
