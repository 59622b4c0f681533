//! `r = 3`: trio domination.
//!
//! State `(X, F, Y)`: `X` as for pairs, `F` the cover vertices sitting in a
//! pending pair with one already-processed independent vertex, `Y` the
//! not-yet-dominated cover vertices. Independent vertex `v` can be
//! skipped, complete a triple with two fresh cover vertices spanning at
//! least two edges with `v`, open a pending pair with a fresh cover
//! neighbor, or close a pending pair whose cover vertex it neighbors.

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

type Key = (u64, u64, u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mv {
    Base,
    Skip,
    /// `v` and two fresh cover vertices form the whole triple.
    Triple(u8, u8),
    /// `v` opens a pending pair with a fresh cover vertex.
    Open(u8),
    /// `v` closes the pending pair holding this cover vertex.
    Close(u8),
}

#[derive(Clone, Copy)]
struct Entry {
    val: u32,
    mv: Mv,
    prev_y: u64,
}

/// Exact minimum number of 3-units, with a verified reconstruction.
pub fn solve_r3(
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

    let connected_triple = |a: usize, b: usize, c_adj_a: bool, c_adj_b: bool| -> bool {
        let ab = ctx.adj_pos[a] >> b & 1 == 1;
        (ab as u8 + c_adj_a as u8 + c_adj_b as u8) >= 2
    };

    // part3[mask]: the cover subset splits into connected triples
    let mut part3 = vec![false; size];
    part3[0] = true;
    for mask in 1..size {
        let u = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << u);
        let mut ws = rest;
        'outer: while ws != 0 {
            let w = ws.trailing_zeros() as usize;
            ws &= ws - 1;
            let mut zs = rest & !((1 << (w + 1)) - 1);
            while zs != 0 {
                let z = zs.trailing_zeros() as usize;
                zs &= zs - 1;
                let uw = ctx.adj_pos[u] >> w & 1 == 1;
                let uz = ctx.adj_pos[u] >> z & 1 == 1;
                if connected_triple(w, z, uw, uz) && part3[mask & !(1 << u) & !(1 << w) & !(1 << z)]
                {
                    part3[mask] = true;
                    break 'outer;
                }
            }
        }
    }

    let mut seen_states: HashSet<Key> = HashSet::new();
    let mut layers: Vec<HashMap<Key, Entry>> = Vec::with_capacity(ctx.ind.len() + 1);

    let mut base: HashMap<Key, Entry> = HashMap::new();
    for mask in 0..size as u64 {
        if part3[mask as usize] {
            let y = ctx.all_pos & !ctx.closed_pos(mask);
            budget.charge(1)?;
            let k = (mask, 0, y);
            seen_states.insert(k);
            base.insert(
                k,
                Entry {
                    val: 0,
                    mv: Mv::Base,
                    prev_y: 0,
                },
            );
        }
    }
    layers.push(base);

    for (j, &v) in ctx.ind.iter().enumerate() {
        cfg.check_deadline()?;
        let nv = ctx.vnbr_pos[v];
        let mut next: HashMap<Key, Entry> = HashMap::with_capacity(layers[j].len());
        let mut keys: Vec<Key> = layers[j].keys().copied().collect();
        keys.sort_unstable();
        for k in keys {
            let entry = layers[j][&k];
            let (x, f, y) = k;
            let mut push = |nk: Key, e: Entry, budget: &mut BudgetTracker| {
                relax(&mut next, &mut seen_states, budget, nk, e)
            };
            push(
                k,
                Entry {
                    val: entry.val,
                    mv: Mv::Skip,
                    prev_y: y,
                },
                &mut budget,
            )?;
            // close a pending pair
            let mut closes = f & nv;
            while closes != 0 {
                let a = closes.trailing_zeros() as usize;
                closes &= closes - 1;
                push(
                    (x | 1 << a, f & !(1 << a), y & !nv),
                    Entry {
                        val: entry.val + 1,
                        mv: Mv::Close(a as u8),
                        prev_y: y,
                    },
                    &mut budget,
                )?;
            }
            let free = ctx.all_pos & !x & !f;
            // open a pending pair
            let mut opens = free & nv;
            while opens != 0 {
                let b = opens.trailing_zeros() as usize;
                opens &= opens - 1;
                push(
                    (x, f | 1 << b, y & !(nv | ctx.cn_pos[b])),
                    Entry {
                        val: entry.val + 1,
                        mv: Mv::Open(b as u8),
                        prev_y: y,
                    },
                    &mut budget,
                )?;
            }
            // complete a triple with two fresh cover vertices
            let mut aa = free;
            while aa != 0 {
                let a = aa.trailing_zeros() as usize;
                aa &= aa - 1;
                let mut bb = free & !((1u64 << (a + 1)) - 1);
                while bb != 0 {
                    let b = bb.trailing_zeros() as usize;
                    bb &= bb - 1;
                    let va = nv >> a & 1 == 1;
                    let vb = nv >> b & 1 == 1;
                    if connected_triple(a, b, va, vb) {
                        push(
                            (
                                x | 1 << a | 1 << b,
                                f,
                                y & !(nv | ctx.cn_pos[a] | ctx.cn_pos[b]),
                            ),
                            Entry {
                                val: entry.val + 1,
                                mv: Mv::Triple(a as u8, b as u8),
                                prev_y: y,
                            },
                            &mut budget,
                        )?;
                    }
                }
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
    check_state_bound(distinct, 3, jn)?;

    let mut ind_dom = IndDomination::new(&ctx);
    let last = layers.last().unwrap();
    let mut terminal_keys: Vec<Key> = last.keys().copied().collect();
    terminal_keys.sort_unstable();
    let mut best: Option<(u32, Key)> = None;
    for k in terminal_keys {
        let (x, f, y) = k;
        if f != 0 || y != 0 || !ind_dom.dominated(x) {
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
    debug_assert_eq!(total % 3, 0);

    // collect the move sequence, then replay it forward resolving the
    // pending pairs
    let mut moves: Vec<Mv> = Vec::with_capacity(layers.len());
    let mut k = terminal;
    for j in (1..layers.len()).rev() {
        let entry = layers[j][&k];
        let (x, f, _) = k;
        moves.push(entry.mv);
        k = match entry.mv {
            Mv::Skip => (x, f, entry.prev_y),
            Mv::Close(a) => (x & !(1 << a), f | 1 << a, entry.prev_y),
            Mv::Open(b) => (x, f & !(1 << b), entry.prev_y),
            Mv::Triple(a, b) => (x & !(1 << a) & !(1 << b), f, entry.prev_y),
            Mv::Base => unreachable!("base move above layer 0"),
        };
    }
    moves.reverse();

    let mut units = part3_units(&ctx, &part3, k.0)?;
    let mut pending: HashMap<u8, usize> = HashMap::new();
    for (j, mv) in moves.into_iter().enumerate() {
        let v = ctx.ind[j];
        match mv {
            Mv::Base => unreachable!(),
            Mv::Skip => {}
            Mv::Open(b) => {
                pending.insert(b, v);
            }
            Mv::Close(a) => {
                let w = pending.remove(&a).ok_or_else(|| {
                    SolveError::Internal("closed a pair that was never opened".into())
                })?;
                units.push([ctx.verts[a as usize], w, v].into_iter().collect());
            }
            Mv::Triple(a, b) => {
                units.push(
                    [ctx.verts[a as usize], ctx.verts[b as usize], v]
                        .into_iter()
                        .collect(),
                );
            }
        }
    }

    let sol = GroupedSolution { r: 3, units };
    if let Err(violation) = verify_solution(g, &sol) {
        return Err(SolveError::Internal(format!(
            "r=3 reconstruction failed verification: {violation}"
        )));
    }
    if sol.units.len() != (total / 3) as usize {
        return Err(SolveError::Internal(
            "r=3 reconstruction disagrees with the table value".into(),
        ));
    }
    finish_stats(start, distinct, &mut stats);
    Ok(SolveOutcome {
        status: Status::Feasible,
        min_units: Some((total / 3) as usize),
        solution: Some(sol),
        stats,
    })
}

fn part3_units(ctx: &CoverCtx, part3: &[bool], x0: u64) -> Result<Vec<VertexSet>, SolveError> {
    let mut units = Vec::new();
    let mut rest = x0 as usize;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        let others = rest & !(1 << u);
        let mut found = false;
        let mut ws = others;
        'outer: while ws != 0 {
            let w = ws.trailing_zeros() as usize;
            ws &= ws - 1;
            let mut zs = others & !((1 << (w + 1)) - 1);
            while zs != 0 {
                let z = zs.trailing_zeros() as usize;
                zs &= zs - 1;
                let uw = ctx.adj_pos[u] >> w & 1 == 1;
                let uz = ctx.adj_pos[u] >> z & 1 == 1;
                let wz = ctx.adj_pos[w] >> z & 1 == 1;
                let nxt = rest & !(1 << u) & !(1 << w) & !(1 << z);
                if (uw as u8 + uz as u8 + wz as u8) >= 2 && part3[nxt] {
                    units.push(
                        [ctx.verts[u], ctx.verts[w], ctx.verts[z]]
                            .into_iter()
                            .collect(),
                    );
                    rest = nxt;
                    found = true;
                    break 'outer;
                }
            }
        }
        if !found {
            return Err(SolveError::Internal(
                "triple reconstruction lost a partition".into(),
            ));
        }
    }
    Ok(units)
}

fn relax(
    map: &mut HashMap<Key, Entry>,
    seen: &mut HashSet<Key>,
    budget: &mut BudgetTracker,
    k: Key,
    entry: Entry,
) -> Result<(), SolveError> {
    match map.get_mut(&k) {
        None => {
            budget.charge(1)?;
            seen.insert(k);
            map.insert(k, entry);
        }
        Some(old) => {
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
    fn p3_is_one_triple() {
        let p3 = path(3);
        let out = solve_r3(&p3, vs(&[1]), &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(1));
        assert_eq!(out.solution.unwrap().units, vec![vs(&[0, 1, 2])]);
    }

    #[test]
    fn c6_needs_two_triples() {
        let c6 = cycle(6);
        let cover = min_vertex_cover(&c6).members;
        let out = solve_r3(&c6, cover, &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(2));
        assert_eq!(
            verify_solution(&c6, out.solution.as_ref().unwrap()),
            Ok(())
        );
    }

    #[test]
    fn too_small_graph_is_infeasible() {
        let k1 = Graph::empty(1);
        let out = solve_r3(&k1, VertexSet::empty(), &SolverConfig::default()).unwrap();
        assert!(!out.is_feasible());
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        let mut rng = SplitMix64::new(33);
        for _ in 0..60 {
            let n = 1 + (rng.next_u64() % 9) as usize;
            let g = crate::generators::gnp(n, 0.45, rng.next_u64());
            let cover = min_vertex_cover(&g).members;
            let got = solve_r3(&g, cover, &SolverConfig::default()).unwrap();
            let want = brute_force_min_units(&g, 3, None).unwrap();
            assert_eq!(got.min_units, want.min_units, "on {g:?}");
            if let Some(sol) = got.solution {
                assert_eq!(verify_solution(&g, &sol), Ok(()));
            }
        }
    }
}
