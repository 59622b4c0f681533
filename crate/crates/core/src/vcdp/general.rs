//! General `r`: dynamic programming over nested partitions of the cover.
//!
//! Each cover vertex is labeled `X` (in a finished unit), `Y` (not yet
//! dominated), `Other` (outside the solution, dominated), or as a member
//! of a *block*: the cover part of a fragment of known current size
//! `2 ≤ i ≤ r−1` that is connected so far and waits for future
//! independent vertices. Block ids are renumbered per level by first
//! occurrence in vertex order, so equal partial solutions share one key
//! and the key count respects `(r+1)^|J| · |J|^|J|`.
//!
//! Processing independent vertex `v` either skips it or applies a *merge*:
//! choose existing blocks `B` and fresh cover vertices `T`, require the
//! contracted graph on `{v} ∪ T ∪ B` (blocks contracted to their cover
//! parts) to be connected, and form a fragment of size
//! `1 + |T| + Σ sizes(B)`. At size `r` the fragment completes into `X`;
//! below `r` it becomes a new block. Pure-cover units enter only at the
//! base layer, as subsets pre-partitioned into connected `r`-sets.

use super::{
    check_state_bound, finish_stats, BudgetTracker, CoverCtx, IndDomination, SolverConfig,
};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::solution::{
    verify_solution, GroupedSolution, Partitioner, SolveError, SolveOutcome, SolveStats, Status,
};
use std::collections::{HashMap, HashSet};
use std::time::Instant;

const L_OTHER: u16 = 0;
const L_X: u16 = 1;
const L_Y: u16 = 2;
const TMP_ID: u16 = 0xFF;

#[inline]
fn block_label(level: u16, id: u16) -> u16 {
    debug_assert!((2..256).contains(&level) && id < 256);
    level << 8 | id
}

#[inline]
fn is_block(label: u16) -> bool {
    label >= 2 << 8
}

#[inline]
fn block_level(label: u16) -> u16 {
    label >> 8
}

type Labels = Box<[u16]>;

/// One cover vertex's role in a nested-partition state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateLabel {
    /// Outside the solution, already dominated.
    Other,
    /// In a finished unit.
    InX,
    /// Not yet dominated; must be dominated by future choices.
    InY,
    /// In the fragment `(level, id)`: a partial unit of current size `level`.
    Block { level: u8, id: u8 },
}

/// A labeling of the cover vertices — the DP table key for general `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NestedState {
    pub labels: Vec<StateLabel>,
}

/// Renumbers block ids per level in order of first occurrence (vertex-id
/// order). Idempotent; two labelings equal up to id permutations map to
/// the same result.
pub fn canonicalize(state: &NestedState) -> NestedState {
    let mut labels: Vec<u16> = state
        .labels
        .iter()
        .map(|l| match *l {
            StateLabel::Other => L_OTHER,
            StateLabel::InX => L_X,
            StateLabel::InY => L_Y,
            StateLabel::Block { level, id } => block_label(level as u16, id as u16),
        })
        .collect();
    canonical_relabel(&mut labels);
    NestedState {
        labels: labels
            .iter()
            .map(|&l| {
                if is_block(l) {
                    StateLabel::Block {
                        level: (l >> 8) as u8,
                        id: (l & 0xFF) as u8,
                    }
                } else {
                    match l {
                        L_OTHER => StateLabel::Other,
                        L_X => StateLabel::InX,
                        _ => StateLabel::InY,
                    }
                }
            })
            .collect(),
    }
}

// Returns the (old, new) pairs for block labels that changed.
fn canonical_relabel(labels: &mut [u16]) -> Vec<(u16, u16)> {
    let mut next_id: HashMap<u16, u16> = HashMap::new(); // level -> next fresh id
    let mut map: HashMap<u16, u16> = HashMap::new();
    for l in labels.iter_mut() {
        if is_block(*l) {
            let new = *map.entry(*l).or_insert_with(|| {
                let level = block_level(*l);
                let id = next_id.entry(level).or_insert(0);
                let fresh = block_label(level, *id);
                *id += 1;
                fresh
            });
            *l = new;
        }
    }
    map.into_iter().filter(|(a, b)| a != b).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum GMove {
    Base,
    Skip,
    /// Fresh cover positions `t_mask` plus the blocks with these labels
    /// (labels refer to the predecessor state) merge with the current
    /// independent vertex.
    Merge { t_mask: u64, blocks: Vec<u16> },
}

#[derive(Clone)]
struct Entry {
    val: u32,
    mv: GMove,
    prev: Labels,
}

struct MergeOutcome {
    labels: Labels,
    relabel: Vec<(u16, u16)>,
    /// Canonical label of the new block, or `None` when the fragment
    /// completed into `X`.
    new_block: Option<u16>,
}

fn jpart_mask(labels: &[u16], label: u16) -> u64 {
    let mut m = 0u64;
    for (p, &l) in labels.iter().enumerate() {
        if l == label {
            m |= 1 << p;
        }
    }
    m
}

fn apply_merge(
    ctx: &CoverCtx,
    r: usize,
    labels: &[u16],
    v: usize,
    t_mask: u64,
    blocks: &[u16],
) -> MergeOutcome {
    let mut size = 1 + t_mask.count_ones() as usize;
    let mut members = t_mask;
    for &b in blocks {
        size += block_level(b) as usize;
        members |= jpart_mask(labels, b);
    }
    debug_assert!(size <= r);
    let new_label = if size == r {
        L_X
    } else {
        block_label(size as u16, TMP_ID)
    };
    let mut out: Vec<u16> = labels.to_vec();
    let mut m = members;
    while m != 0 {
        let p = m.trailing_zeros() as usize;
        m &= m - 1;
        out[p] = new_label;
    }
    // every vertex entering the solution dominates its cover neighbors
    let mut shrink = ctx.vnbr_pos[v];
    let mut t = t_mask;
    while t != 0 {
        let p = t.trailing_zeros() as usize;
        t &= t - 1;
        shrink |= ctx.cn_pos[p];
    }
    for (p, l) in out.iter_mut().enumerate() {
        if *l == L_Y && shrink >> p & 1 == 1 {
            *l = L_OTHER;
        }
    }
    let relabel = canonical_relabel(&mut out);
    let new_block = if size == r {
        None
    } else {
        let tmp = block_label(size as u16, TMP_ID);
        Some(
            relabel
                .iter()
                .find(|&&(old, _)| old == tmp)
                .map(|&(_, new)| new)
                .unwrap_or(tmp),
        )
    };
    MergeOutcome {
        labels: out.into_boxed_slice(),
        relabel,
        new_block,
    }
}

// Contracted-connectivity test: v, the fresh vertices, and the blocks
// (contracted to their cover parts) must form one connected piece.
fn merge_connected(ctx: &CoverCtx, nv: u64, t_mask: u64, jparts: &[u64]) -> bool {
    let t_list: Vec<usize> = (0..64).filter(|&p| t_mask >> p & 1 == 1).collect();
    let nodes = 1 + t_list.len() + jparts.len();
    if nodes == 1 {
        return true;
    }
    let mut adj = vec![0u64; nodes]; // adjacency over the tiny node set
    let mut connect = |a: usize, b: usize| {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    };
    let part_nbhd: Vec<u64> = jparts
        .iter()
        .map(|&jp| {
            let mut nb = 0u64;
            let mut m = jp;
            while m != 0 {
                let p = m.trailing_zeros() as usize;
                m &= m - 1;
                nb |= ctx.adj_pos[p];
            }
            nb
        })
        .collect();
    for (i, &t) in t_list.iter().enumerate() {
        if nv >> t & 1 == 1 {
            connect(0, 1 + i);
        }
        for (i2, &t2) in t_list.iter().enumerate().skip(i + 1) {
            if ctx.adj_pos[t] >> t2 & 1 == 1 {
                connect(1 + i, 1 + i2);
            }
        }
        for (b, &jp) in jparts.iter().enumerate() {
            if ctx.adj_pos[t] & jp != 0 {
                connect(1 + i, 1 + t_list.len() + b);
            }
        }
    }
    for (b, &jp) in jparts.iter().enumerate() {
        if nv & jp != 0 {
            connect(0, 1 + t_list.len() + b);
        }
        for b2 in b + 1..jparts.len() {
            if part_nbhd[b] & jparts[b2] != 0 {
                connect(1 + t_list.len() + b, 1 + t_list.len() + b2);
            }
        }
    }
    // DFS over the bitmask adjacency
    let mut seen = 1u64;
    let mut stack = vec![0usize];
    while let Some(a) = stack.pop() {
        let mut m = adj[a] & !seen;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            seen |= 1 << b;
            stack.push(b);
        }
    }
    seen.count_ones() as usize == nodes
}

/// Exact minimum number of `r`-units via the nested-partition DP.
/// `r = 1` is routed to [`super::solve_r1`].
pub fn solve_general(
    g: &Graph,
    j_cover: VertexSet,
    r: usize,
    cfg: &SolverConfig,
) -> Result<SolveOutcome, SolveError> {
    if r == 0 {
        return Err(SolveError::InvalidArgument(
            "unit size r must be positive".into(),
        ));
    }
    if r == 1 {
        return super::solve_r1(g, j_cover, cfg);
    }
    let start = Instant::now();
    let mut budget = BudgetTracker::new(cfg.state_budget);
    let ctx = CoverCtx::build(g, j_cover, &mut budget)?;
    let jn = ctx.jn();
    let size = 1usize << jn;

    // partitionability of cover subsets into connected r-sets, on the
    // position graph
    let mut jedges = Vec::new();
    for p in 0..jn {
        let mut m = ctx.adj_pos[p] & !((1u64 << (p + 1)) - 1);
        while m != 0 {
            let q = m.trailing_zeros() as usize;
            m &= m - 1;
            jedges.push((p, q));
        }
    }
    let jgraph = Graph::from_edges(jn, &jedges)
        .map_err(|e| SolveError::Internal(format!("position graph: {e}")))?;
    let mut partitioner = Partitioner::new(&jgraph, r);

    let mut seen_states: HashSet<Labels> = HashSet::new();
    let mut layers: Vec<HashMap<Labels, Entry>> = Vec::with_capacity(ctx.ind.len() + 1);

    let mut base: HashMap<Labels, Entry> = HashMap::new();
    for mask in 0..size as u64 {
        let pos_set = VertexSet::from_bits(mask as u128);
        if !partitioner.feasible(pos_set) {
            continue;
        }
        let dominated = ctx.closed_pos(mask);
        let labels: Labels = (0..jn)
            .map(|p| {
                if mask >> p & 1 == 1 {
                    L_X
                } else if dominated >> p & 1 == 1 {
                    L_OTHER
                } else {
                    L_Y
                }
            })
            .collect();
        budget.charge(1)?;
        seen_states.insert(labels.clone());
        base.insert(
            labels.clone(),
            Entry {
                val: 0,
                mv: GMove::Base,
                prev: labels,
            },
        );
    }
    layers.push(base);

    for (j, &v) in ctx.ind.iter().enumerate() {
        cfg.check_deadline()?;
        let nv = ctx.vnbr_pos[v];
        let mut next: HashMap<Labels, Entry> = HashMap::with_capacity(layers[j].len());
        let mut keys: Vec<Labels> = layers[j].keys().cloned().collect();
        keys.sort_unstable();
        for k in keys {
            let entry = layers[j][&k].clone();
            relax(
                &mut next,
                &mut seen_states,
                &mut budget,
                k.clone(),
                Entry {
                    val: entry.val,
                    mv: GMove::Skip,
                    prev: k.clone(),
                },
            )?;
            enumerate_merges(&ctx, r, &k, v, nv, |t_mask, blocks| {
                let merged = apply_merge(&ctx, r, &k, v, t_mask, blocks);
                relax(
                    &mut next,
                    &mut seen_states,
                    &mut budget,
                    merged.labels,
                    Entry {
                        val: entry.val + 1,
                        mv: GMove::Merge {
                            t_mask,
                            blocks: blocks.to_vec(),
                        },
                        prev: k.clone(),
                    },
                )
            })?;
        }
        #[cfg(debug_assertions)]
        for (k, e) in &layers[j] {
            debug_assert!(next[k].val <= e.val, "prefix monotonicity violated");
        }
        layers.push(next);
    }

    let mut stats = SolveStats::default();
    let distinct = seen_states.len() as u64;
    check_state_bound(distinct, r, jn)?;

    let mut ind_dom = IndDomination::new(&ctx);
    let last = layers.last().unwrap();
    let mut terminal_keys: Vec<Labels> = last.keys().cloned().collect();
    terminal_keys.sort_unstable();
    let mut best: Option<(u32, Labels)> = None;
    for k in terminal_keys {
        if k.iter().any(|&l| l != L_OTHER && l != L_X) {
            continue;
        }
        let x_mask = jpart_mask(&k, L_X);
        if !ind_dom.dominated(x_mask) {
            continue;
        }
        let total = x_mask.count_ones() + last[&k].val;
        if best.as_ref().map_or(true, |&(t, _)| total < t) {
            best = Some((total, k));
        }
    }

    let Some((total, terminal)) = best else {
        finish_stats(start, distinct, &mut stats);
        return Ok(SolveOutcome::infeasible(stats));
    };
    debug_assert_eq!(total as usize % r, 0);

    // walk back, then replay forward tracking full fragment contents
    let mut trail: Vec<(Labels, GMove, Labels)> = Vec::new(); // (prev, move, next)
    let mut k = terminal.clone();
    for j in (1..layers.len()).rev() {
        let entry = layers[j][&k].clone();
        trail.push((entry.prev.clone(), entry.mv, k));
        k = entry.prev;
    }
    trail.reverse();

    let base_x = VertexSet::from_bits(jpart_mask(&k, L_X) as u128);
    let mut units: Vec<VertexSet> = partitioner
        .partition(base_x)
        .ok_or_else(|| SolveError::Internal("base partition vanished".into()))?
        .into_iter()
        .map(|posset| posset.iter().map(|p| ctx.verts[p]).collect())
        .collect();
    let mut contents: HashMap<u16, VertexSet> = HashMap::new();
    for (j, (prev, mv, next)) in trail.into_iter().enumerate() {
        let v = ctx.ind[j];
        match mv {
            GMove::Base => unreachable!("base move above layer 0"),
            GMove::Skip => {}
            GMove::Merge { t_mask, blocks } => {
                let mut frag = VertexSet::singleton(v);
                let mut m = t_mask;
                while m != 0 {
                    let p = m.trailing_zeros() as usize;
                    m &= m - 1;
                    frag.insert(ctx.verts[p]);
                }
                for b in &blocks {
                    let part = contents.remove(b).ok_or_else(|| {
                        SolveError::Internal("merge referenced an unknown block".into())
                    })?;
                    frag |= part;
                }
                let merged = apply_merge(&ctx, r, &prev, v, t_mask, &blocks);
                if merged.labels != next {
                    return Err(SolveError::Internal(
                        "replayed merge disagrees with the stored successor".into(),
                    ));
                }
                contents = remap_contents(contents, &merged.relabel);
                match merged.new_block {
                    None => units.push(frag),
                    Some(label) => {
                        contents.insert(label, frag);
                    }
                }
            }
        }
    }

    let sol = GroupedSolution { r, units };
    if let Err(violation) = verify_solution(g, &sol) {
        return Err(SolveError::Internal(format!(
            "general reconstruction failed verification: {violation}"
        )));
    }
    if sol.units.len() != total as usize / r {
        return Err(SolveError::Internal(
            "general reconstruction disagrees with the table value".into(),
        ));
    }
    finish_stats(start, distinct, &mut stats);
    Ok(SolveOutcome {
        status: Status::Feasible,
        min_units: Some(total as usize / r),
        solution: Some(sol),
        stats,
    })
}

fn remap_contents(
    contents: HashMap<u16, VertexSet>,
    relabel: &[(u16, u16)],
) -> HashMap<u16, VertexSet> {
    if relabel.is_empty() {
        return contents;
    }
    let map: HashMap<u16, u16> = relabel.iter().copied().collect();
    contents
        .into_iter()
        .map(|(l, s)| (*map.get(&l).unwrap_or(&l), s))
        .collect()
}

// Enumerates every merge candidate: block subsets by ascending label list,
// fresh sets by ascending combination order. The emit callback receives
// (t_mask, block labels).
fn enumerate_merges<F>(
    ctx: &CoverCtx,
    r: usize,
    labels: &[u16],
    _v: usize,
    nv: u64,
    mut emit: F,
) -> Result<(), SolveError>
where
    F: FnMut(u64, &[u16]) -> Result<(), SolveError>,
{
    // distinct blocks in first-occurrence order
    let mut blocks: Vec<(u16, u64)> = Vec::new();
    for (p, &l) in labels.iter().enumerate() {
        if is_block(l) && !blocks.iter().any(|&(b, _)| b == l) {
            blocks.push((l, jpart_mask(labels, l)));
        }
        let _ = p;
    }
    let free: Vec<usize> = labels
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l == L_OTHER || l == L_Y)
        .map(|(p, _)| p)
        .collect();

    let mut chosen: Vec<u16> = Vec::new();
    let mut jparts: Vec<u64> = Vec::new();
    pick_blocks(
        ctx,
        r,
        nv,
        &blocks,
        0,
        0,
        &free,
        &mut chosen,
        &mut jparts,
        &mut emit,
    )
}

#[allow(clippy::too_many_arguments)]
fn pick_blocks<F>(
    ctx: &CoverCtx,
    r: usize,
    nv: u64,
    blocks: &[(u16, u64)],
    from: usize,
    used_size: usize,
    free: &[usize],
    chosen: &mut Vec<u16>,
    jparts: &mut Vec<u64>,
    emit: &mut F,
) -> Result<(), SolveError>
where
    F: FnMut(u64, &[u16]) -> Result<(), SolveError>,
{
    let rem = r - 1 - used_size;
    pick_fresh(ctx, nv, free, 0, 0, rem, chosen, jparts, emit)?;
    for i in from..blocks.len() {
        let (label, jpart) = blocks[i];
        let level = block_level(label) as usize;
        if used_size + level > r - 1 {
            continue;
        }
        chosen.push(label);
        jparts.push(jpart);
        pick_blocks(
            ctx,
            r,
            nv,
            blocks,
            i + 1,
            used_size + level,
            free,
            chosen,
            jparts,
            emit,
        )?;
        chosen.pop();
        jparts.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn pick_fresh<F>(
    ctx: &CoverCtx,
    nv: u64,
    free: &[usize],
    from: usize,
    t_mask: u64,
    slots_left: usize,
    chosen: &mut Vec<u16>,
    jparts: &mut Vec<u64>,
    emit: &mut F,
) -> Result<(), SolveError>
where
    F: FnMut(u64, &[u16]) -> Result<(), SolveError>,
{
    // a fragment is only worth forming when it grows past the lone vertex
    if (t_mask != 0 || !chosen.is_empty()) && merge_connected(ctx, nv, t_mask, jparts) {
        emit(t_mask, chosen)?;
    }
    if slots_left == 0 {
        return Ok(());
    }
    for i in from..free.len() {
        pick_fresh(
            ctx,
            nv,
            free,
            i + 1,
            t_mask | 1 << free[i],
            slots_left - 1,
            chosen,
            jparts,
            emit,
        )?;
    }
    Ok(())
}

fn relax(
    map: &mut HashMap<Labels, Entry>,
    seen: &mut HashSet<Labels>,
    budget: &mut BudgetTracker,
    k: Labels,
    entry: Entry,
) -> Result<(), SolveError> {
    match map.get_mut(&k) {
        None => {
            budget.charge(1)?;
            if !seen.contains(&k) {
                seen.insert(k.clone());
            }
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
    use crate::vcdp::{solve_r2, solve_r3};

    fn vs(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn canonicalize_renumbers_by_first_occurrence() {
        let b = |level: u8, id: u8| StateLabel::Block { level, id };
        let state = NestedState {
            labels: vec![b(2, 7), StateLabel::InX, b(2, 3), b(2, 7)],
        };
        let canon = canonicalize(&state);
        assert_eq!(
            canon.labels,
            vec![b(2, 0), StateLabel::InX, b(2, 1), b(2, 0)]
        );
        // idempotent
        assert_eq!(canonicalize(&canon), canon);
        // no blocks: unchanged
        let plain = NestedState {
            labels: vec![StateLabel::InY, StateLabel::Other],
        };
        assert_eq!(canonicalize(&plain), plain);
        // equal up to id permutation: identical canonical forms
        let state2 = NestedState {
            labels: vec![b(2, 1), StateLabel::InX, b(2, 9), b(2, 1)],
        };
        assert_eq!(canonicalize(&state2), canon);
    }

    #[test]
    fn spider_with_unit_of_four() {
        // center 0 adjacent to 1 and 2; 1 carries the leaf 3
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let out = solve_general(&g, vs(&[0, 1, 2]), 4, &SolverConfig::default()).unwrap();
        assert_eq!(out.min_units, Some(1));
        assert_eq!(out.solution.unwrap().units, vec![vs(&[0, 1, 2, 3])]);
    }

    #[test]
    fn tiny_graph_infeasible_for_r2() {
        let g = Graph::empty(1);
        let out = solve_general(&g, VertexSet::empty(), 2, &SolverConfig::default()).unwrap();
        assert!(!out.is_feasible());
    }

    #[test]
    fn agrees_with_specialized_solvers() {
        let mut rng = SplitMix64::new(44);
        for _ in 0..50 {
            let n = 1 + (rng.next_u64() % 9) as usize;
            let g = crate::generators::gnp(n, 0.4, rng.next_u64());
            let cover = min_vertex_cover(&g).members;
            let cfg = SolverConfig::default();
            let g2 = solve_general(&g, cover, 2, &cfg).unwrap();
            let r2 = solve_r2(&g, cover, &cfg).unwrap();
            assert_eq!(g2.min_units, r2.min_units, "r=2 on {g:?}");
            let g3 = solve_general(&g, cover, 3, &cfg).unwrap();
            let r3 = solve_r3(&g, cover, &cfg).unwrap();
            assert_eq!(g3.min_units, r3.min_units, "r=3 on {g:?}");
        }
    }

    #[test]
    fn agrees_with_oracle_for_r4() {
        let mut rng = SplitMix64::new(45);
        for _ in 0..40 {
            let n = 1 + (rng.next_u64() % 9) as usize;
            let g = crate::generators::gnp(n, 0.5, rng.next_u64());
            let cover = min_vertex_cover(&g).members;
            let got = solve_general(&g, cover, 4, &SolverConfig::default()).unwrap();
            let want = brute_force_min_units(&g, 4, None).unwrap();
            assert_eq!(got.min_units, want.min_units, "on {g:?}");
            if let Some(sol) = got.solution {
                assert_eq!(verify_solution(&g, &sol), Ok(()));
            }
        }
    }
}
