//! `r = 2`: paired domination.
//!
//! State `(X, Y)` over cover positions: `X` holds the cover vertices
//! already in the solution (pre-matched pairs from the base layer plus
//! partners of processed independent vertices), `Y` the cover vertices not
//! yet dominated by any committed solution vertex. Processing independent
//! vertex `v` either skips it or pairs it with a fresh cover vertex
//! `u ∈ N(v) \ X`. A terminal state is an answer when `Y` is empty and
//! every independent vertex has a neighbor in `X`.

use super::{
    check_state_bound, finish_stats, BudgetTracker, CoverCtx, IndDomination, SolverConfig,
};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::solution::{
    verify_solution, GroupedSolution, SolveError, SolveOutcome, SolveStats, Status,
};
use std::collections::{HashMap, HashSet};
use std::time::Instant;

const MV_BASE: u16 = u16::MAX;
const MV_SKIP: u16 = u16::MAX - 1;

#[derive(Clone, Copy)]
struct Entry {
    val: u32,
    // position paired with this layer's vertex, or MV_SKIP / MV_BASE
    mv: u16,
    prev_y: u64,
}

#[inline]
fn key(x: u64, y: u64) -> u128 {
    (x as u128) << 64 | y as u128
}

#[inline]
fn unkey(k: u128) -> (u64, u64) {
    ((k >> 64) as u64, k as u64)
}

/// Exact minimum number of 2-units, with a verified reconstruction.
pub fn solve_r2(
    g: &Graph,
    j_cover: VertexSet,
    cfg: &SolverConfig,
) -> Result<SolveOutcome, SolveError> {
    let start = Instant::now();
    let mut budget = BudgetTracker::new(cfg.state_budget);
    let ctx = CoverCtx::build(g, j_cover, &mut budget)?;
    let jn = ctx.jn();
    let size = 1usize << jn;
    budget.charge(size as u64)?;

    // pm[mask]: the cover subset splits into adjacent pairs
    let mut pm = vec![false; size];
    pm[0] = true;
    for mask in 1..size {
        let u = mask.trailing_zeros() as usize;
        let mut others = ctx.adj_pos[u] as usize & mask;
        while others != 0 {
            let w = others.trailing_zeros() as usize;
            others &= others - 1;
            if pm[mask & !(1 << u) & !(1 << w)] {
                pm[mask] = true;
                break;
            }
        }
    }

    let mut seen_states: HashSet<u128> = HashSet::new();
    let mut layers: Vec<HashMap<u128, Entry>> = Vec::with_capacity(ctx.ind.len() + 1);

    let mut base: HashMap<u128, Entry> = HashMap::new();
    for mask in 0..size as u64 {
        if pm[mask as usize] {
            let y = ctx.all_pos & !ctx.closed_pos(mask);
            budget.charge(1)?;
            seen_states.insert(key(mask, y));
            base.insert(
                key(mask, y),
                Entry {
                    val: 0,
                    mv: MV_BASE,
                    prev_y: 0,
                },
            );
        }
    }
    layers.push(base);

    for (j, &v) in ctx.ind.iter().enumerate() {
        cfg.check_deadline()?;
        let nv = ctx.vnbr_pos[v];
        let mut next: HashMap<u128, Entry> = HashMap::with_capacity(layers[j].len());
        let mut keys: Vec<u128> = layers[j].keys().copied().collect();
        keys.sort_unstable();
        for k in keys {
            let entry = layers[j][&k];
            let (x, y) = unkey(k);
            relax(
                &mut next,
                &mut seen_states,
                &mut budget,
                k,
                Entry {
                    val: entry.val,
                    mv: MV_SKIP,
                    prev_y: y,
                },
            )?;
            let mut candidates = nv & !x;
            while candidates != 0 {
                let u = candidates.trailing_zeros() as usize;
                candidates &= candidates - 1;
                let nk = key(x | 1 << u, y & !(nv | ctx.cn_pos[u]));
                relax(
                    &mut next,
                    &mut seen_states,
                    &mut budget,
                    nk,
                    Entry {
                        val: entry.val + 1,
                        mv: u as u16,
                        prev_y: y,
                    },
                )?;
            }
        }
        #[cfg(debug_assertions)]
        for (k, e) in &layers[j] {
            debug_assert!(next[k].val <= e.val, "prefix monotonicity violated");
        }
        layers.push(next);
    }

    let mut stats = SolveStats::default();
    let distinct = seen_states.len() as u64;
    check_state_bound(distinct, 2, jn)?;

    let mut ind_dom = IndDomination::new(&ctx);
    let last = layers.last().unwrap();
    let mut terminal_keys: Vec<u128> = last.keys().copied().collect();
    terminal_keys.sort_unstable();
    let mut best: Option<(u32, u128)> = None;
    for k in terminal_keys {
        let (x, y) = unkey(k);
        if y != 0 || !ind_dom.dominated(x) {
            continue;
        }
        let total = x.count_ones() + last[&k].val;
        if best.map_or(true, |(t, _)| total < t) {
            best = Some((total, k));
        }
    }

    let Some((total, terminal)) = best else {
        finish_stats(start, distinct, &mut stats);
        return Ok(SolveOutcome::infeasible(stats));
    };
    debug_assert_eq!(total % 2, 0);

    // walk back-pointers, pairing each used independent vertex
    let mut units = Vec::new();
    let mut k = terminal;
    for j in (1..layers.len()).rev() {
        let entry = layers[j][&k];
        let (x, _) = unkey(k);
        match entry.mv {
            MV_SKIP => k = key(x, entry.prev_y),
            u => {
                let u = u as usize;
                units.push(
                    [ctx.verts[u], ctx.ind[j - 1]]
                        .into_iter()
                        .collect::<VertexSet>(),
                );
                k = key(x & !(1 << u), entry.prev_y);
            }
        }
    }
    let (x0, _) = unkey(k);
    let mut rest = x0 as usize;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        let mut partners = ctx.adj_pos[u] as usize & rest;
        let mut matched = false;
        while partners != 0 {
            let w = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            if pm[rest & !(1 << u) & !(1 << w)] {
                units.push(
                    [ctx.verts[u], ctx.verts[w]]
                        .into_iter()
                        .collect::<VertexSet>(),
                );
                rest &= !(1 << u);
                rest &= !(1 << w);
                matched = true;
                break;
            }
        }
        if !matched {
            return Err(SolveError::Internal(
                "pair reconstruction lost a matching".into(),
            ));
        }
    }
    units.reverse();

    let sol = GroupedSolution { r: 2, units };
    if let Err(violation) = verify_solution(g, &sol) {
        return Err(SolveError::Internal(format!(
            "r=2 reconstruction failed verification: {violation}"
        )));
    }
    if sol.units.len() != (total / 2) as usize {
        return Err(SolveError::Internal(
            "r=2 reconstruction disagrees with the table value".into(),
        ));
    }
    finish_stats(start, distinct, &mut stats);
    Ok(SolveOutcome {
        status: Status::Feasible,
        min_units: Some((total / 2) as usize),
        solution: Some(sol),
        stats,
    })
}

fn relax(
    map: &mut HashMap<u128, Entry>,
    seen: &mut HashSet<u128>,
    budget: &mut BudgetTracker,
    k: u128,
    entry: Entry,
) -> Result<(), SolveError> {
    match map.get_mut(&k) {
        None => {
            budget.charge(1)?;
            seen.insert(k);
            map.insert(k, entry);
        }
        Some(old) => {
            // ties keep the first writer; key order makes that deterministic
            if entry.val < old.val {
                *old = entry;
            }
        }
    }
    Ok(())
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
    fn c4_needs_one_pair() {
        let c4 = cycle(4);
        let out = solve_r2(&c4, vs(&[0, 2]), &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(1));
        assert_eq!(
            verify_solution(&c4, out.solution.as_ref().unwrap()),
            Ok(())
        );
    }

    #[test]
    fn c6_needs_two_pairs() {
        let c6 = cycle(6);
        let cover = min_vertex_cover(&c6).members;
        let out = solve_r2(&c6, cover, &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(2));
    }

    #[test]
    fn k2_single_unit() {
        let k2 = complete(2);
        let out = solve_r2(&k2, vs(&[0]), &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(1));
        assert_eq!(out.solution.unwrap().units, vec![vs(&[0, 1])]);
    }

    #[test]
    fn isolated_vertex_infeasible() {
        let g = Graph::empty(1);
        let out = solve_r2(&g, VertexSet::empty(), &SolverConfig::default()).unwrap();
        assert!(!out.is_feasible());
    }

    #[test]
    fn empty_graph_zero_units() {
        let g = Graph::empty(0);
        let out = solve_r2(&g, VertexSet::empty(), &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(0));
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        let mut rng = SplitMix64::new(22);
        for _ in 0..60 {
            let n = 1 + (rng.next_u64() % 9) as usize;
            let g = crate::generators::gnp(n, 0.4, rng.next_u64());
            let cover = min_vertex_cover(&g).members;
            let got = solve_r2(&g, cover, &SolverConfig::default()).unwrap();
            let want = brute_force_min_units(&g, 2, None).unwrap();
            assert_eq!(got.min_units, want.min_units, "on {g:?}");
            if let Some(sol) = got.solution {
                assert_eq!(verify_solution(&g, &sol), Ok(()));
            }
        }
    }

    #[test]
    fn independent_of_cover_choice() {
        let mut rng = SplitMix64::new(23);
        for _ in 0..30 {
            let n = 2 + (rng.next_u64() % 7) as usize;
            let g = crate::generators::gnp(n, 0.5, rng.next_u64());
            let c1 = min_vertex_cover(&g).members;
            let c2 = g.vertices(); // V is always a cover
            let o1 = solve_r2(&g, c1, &SolverConfig::default()).unwrap();
            let o2 = solve_r2(&g, c2, &SolverConfig::default()).unwrap();
            assert_eq!(o1.min_units, o2.min_units, "on {g:?}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = crate::generators::gnp(12, 0.5, 7);
        let cfg = SolverConfig {
            state_budget: 8,
            deadline: None,
        };
        let cover = min_vertex_cover(&g).members;
        assert!(matches!(
            solve_r2(&g, cover, &cfg),
            Err(SolveError::StateBudget { .. })
        ));
    }
}
