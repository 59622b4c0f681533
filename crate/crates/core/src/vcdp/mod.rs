//! Dynamic programs over a vertex cover `J`.
//!
//! All four solvers share one scheme: order the independent side
//! `I = V \ J` ascending and process it one vertex at a time, tracking for
//! each cover vertex how it participates in the partial solution. A state
//! records which cover vertices sit in finished units (`X`), which sit in
//! fragments still waiting for future independent vertices (the blocks),
//! and which are not yet dominated by any committed solution vertex (`Y`).
//! Pure-cover units are only admitted at the base layer, where a subset of
//! `J` may be pre-partitioned into connected `r`-sets.
//!
//! For `r = 2` a fragment would have to be completed immediately, so the
//! state degenerates to `(X, Y)`; for `r = 3` every fragment is a single
//! cover vertex paired with one processed independent vertex, giving
//! `(X, F, Y)`. General `r` keeps a nested partition of the cover,
//! canonicalized so that the table key count stays within
//! `(r+1)^|J| · |J|^|J|`.

mod general;
mod r1;
mod r2;
mod r3;

pub use general::{canonicalize, solve_general, NestedState, StateLabel};
pub use r1::solve_r1;
pub use r2::solve_r2;
pub use r3::solve_r3;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::solution::{SolveError, SolveStats};
use std::collections::HashMap;
use std::time::Instant;

/// Resource limits shared by all cover DPs.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Maximum number of table entries materialized by one solve.
    pub state_budget: u64,
    /// Optional wall-clock deadline, checked between layers.
    pub deadline: Option<Instant>,
}

pub const DEFAULT_STATE_BUDGET: u64 = 1 << 26;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            state_budget: DEFAULT_STATE_BUDGET,
            deadline: None,
        }
    }
}

impl SolverConfig {
    pub(crate) fn check_deadline(&self) -> Result<(), SolveError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(SolveError::TimeLimit),
            _ => Ok(()),
        }
    }
}

pub(crate) struct BudgetTracker {
    limit: u64,
    used: u64,
}

impl BudgetTracker {
    pub(crate) fn new(limit: u64) -> Self {
        BudgetTracker { limit, used: 0 }
    }

    pub(crate) fn charge(&mut self, entries: u64) -> Result<(), SolveError> {
        self.used = self.used.saturating_add(entries);
        if self.used > self.limit {
            Err(SolveError::StateBudget {
                limit: self.limit,
                component: None,
            })
        } else {
            Ok(())
        }
    }
}

/// The independent side `V \ J` in ascending order — the processing order
/// of every DP here. Fails if `j_cover` is not a vertex cover.
pub fn order_independent_set(g: &Graph, j_cover: VertexSet) -> Result<Vec<usize>, SolveError> {
    if let Some(&(u, v)) = g
        .edges()
        .iter()
        .find(|&&(u, v)| !j_cover.contains(u) && !j_cover.contains(v))
    {
        return Err(SolveError::InvalidArgument(format!(
            "not a vertex cover: edge ({u}, {v}) has no endpoint in it"
        )));
    }
    if let Some(v) = (j_cover - g.vertices()).first() {
        return Err(SolveError::InvalidArgument(format!(
            "cover contains vertex {v}, which is not in the graph"
        )));
    }
    Ok((g.vertices() - j_cover).iter().collect())
}

/// Precomputed position maps for one cover: cover vertices are numbered
/// `0..|J|` ascending and all adjacency is re-expressed as `u64` masks over
/// those positions.
pub(crate) struct CoverCtx {
    /// Cover vertices, ascending; index = position.
    pub verts: Vec<usize>,
    /// Independent side, ascending (the processing order).
    pub ind: Vec<usize>,
    /// Per cover position: adjacency to other cover positions.
    pub adj_pos: Vec<u64>,
    /// Per cover position: closed neighborhood within the cover.
    pub cn_pos: Vec<u64>,
    /// Per graph vertex: its cover neighbors as a position mask.
    pub vnbr_pos: Vec<u64>,
    /// Mask with one bit per cover position.
    pub all_pos: u64,
}

impl CoverCtx {
    /// Builds the context; errors if `j_cover` is not a cover or if the
    /// base-layer enumeration alone (`2^|J|` masks) would blow the budget.
    pub(crate) fn build(
        g: &Graph,
        j_cover: VertexSet,
        budget: &mut BudgetTracker,
    ) -> Result<CoverCtx, SolveError> {
        let ind = order_independent_set(g, j_cover)?;
        let verts: Vec<usize> = j_cover.iter().collect();
        let jn = verts.len();
        if jn >= 63 {
            return Err(SolveError::StateBudget {
                limit: budget.limit,
                component: None,
            });
        }
        budget.charge(1u64 << jn)?;
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let to_mask = |s: VertexSet| -> u64 {
            s.iter()
                .filter(|&v| pos[v] != usize::MAX)
                .fold(0u64, |m, v| m | 1 << pos[v])
        };
        let adj_pos: Vec<u64> = verts.iter().map(|&v| to_mask(g.neighbors(v))).collect();
        let cn_pos: Vec<u64> = adj_pos
            .iter()
            .enumerate()
            .map(|(i, &m)| m | 1 << i)
            .collect();
        let vnbr_pos: Vec<u64> = (0..g.n()).map(|v| to_mask(g.neighbors(v))).collect();
        let all_pos = if jn == 0 { 0 } else { (1u64 << jn) - 1 };
        Ok(CoverCtx {
            verts,
            ind,
            adj_pos,
            cn_pos,
            vnbr_pos,
            all_pos,
        })
    }

    pub(crate) fn jn(&self) -> usize {
        self.verts.len()
    }

    /// Closed neighborhood (within the cover) of a set of cover positions.
    pub(crate) fn closed_pos(&self, mask: u64) -> u64 {
        let mut out = mask;
        let mut m = mask;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= self.cn_pos[p];
        }
        out
    }

    /// Converts a position mask back to graph vertex ids.
    pub(crate) fn mask_to_set(&self, mask: u64) -> VertexSet {
        let mut s = VertexSet::empty();
        let mut m = mask;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            s.insert(self.verts[p]);
        }
        s
    }
}

/// Memoized check that every independent vertex has a neighbor in the
/// candidate top-level `X` — the feasibility condition at extraction.
pub(crate) struct IndDomination<'c> {
    ctx: &'c CoverCtx,
    memo: HashMap<u64, bool>,
}

impl<'c> IndDomination<'c> {
    pub(crate) fn new(ctx: &'c CoverCtx) -> Self {
        IndDomination {
            ctx,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn dominated(&mut self, x_mask: u64) -> bool {
        let ctx = self.ctx;
        *self.memo.entry(x_mask).or_insert_with(|| {
            ctx.ind
                .iter()
                .all(|&v| ctx.vnbr_pos[v] & x_mask != 0)
        })
    }
}

/// Per-solve counter of distinct canonical states, with the bound
/// `(r+1)^|J| · |J|^|J|` checked at the end of every solve.
pub(crate) fn state_bound(r: usize, jn: usize) -> f64 {
    ((r + 1) as f64).powi(jn as i32) * (jn.max(1) as f64).powi(jn as i32)
}

pub(crate) fn check_state_bound(
    distinct_states: u64,
    r: usize,
    jn: usize,
) -> Result<(), SolveError> {
    if (distinct_states as f64) > state_bound(r, jn) {
        return Err(SolveError::Internal(format!(
            "materialized {distinct_states} states, above the ({}+1)^{jn}·{jn}^{jn} bound",
            r
        )));
    }
    Ok(())
}

pub(crate) fn finish_stats(start: Instant, distinct_states: u64, stats: &mut SolveStats) {
    stats.states = distinct_states;
    stats.wall = start.elapsed();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::*;

    fn vs(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn independent_order_cases() {
        let p4 = path(4);
        assert_eq!(order_independent_set(&p4, vs(&[1, 2])).unwrap(), vec![0, 3]);
        let k3 = complete(3);
        assert_eq!(order_independent_set(&k3, vs(&[0, 1])).unwrap(), vec![2]);
        assert_eq!(
            order_independent_set(&k3, k3.vertices()).unwrap(),
            Vec::<usize>::new()
        );
        assert!(matches!(
            order_independent_set(&p4, vs(&[0])),
            Err(SolveError::InvalidArgument(_))
        ));
    }

    #[test]
    fn cover_ctx_masks() {
        let p4 = path(4);
        let mut budget = BudgetTracker::new(1 << 20);
        let ctx = CoverCtx::build(&p4, vs(&[1, 2]), &mut budget).unwrap();
        assert_eq!(ctx.verts, vec![1, 2]);
        assert_eq!(ctx.ind, vec![0, 3]);
        // positions: 1 -> 0, 2 -> 1; they are adjacent
        assert_eq!(ctx.adj_pos, vec![0b10, 0b01]);
        assert_eq!(ctx.vnbr_pos[0], 0b01);
        assert_eq!(ctx.vnbr_pos[3], 0b10);
        assert_eq!(ctx.closed_pos(0b01), 0b11);
        assert_eq!(ctx.mask_to_set(0b11), vs(&[1, 2]));
    }
}
