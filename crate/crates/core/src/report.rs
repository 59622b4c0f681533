//! The machine-readable report emitted by `gdom solve --json`.
//!
//! The field set is identical for every algorithm; fields that do not
//! apply are `null`. Errors are reported as `{"error": {...}}` objects.

use crate::covers::CoverKind;
use crate::reductions::SolveRun;
use crate::solution::{SolutionJson, SolveError, Status};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: Status,
    pub r: usize,
    pub k_star: Option<usize>,
    /// Present exactly when feasible; same schema as a solution file.
    pub solution: Option<SolutionJson>,
    /// Present when `--k` was given.
    pub decision: Option<DecisionReport>,
    /// Union of the per-component covers the DPs ran on.
    pub cover: Option<CoverReport>,
    /// `auto` resolves per component; this is the overall selector.
    pub algorithm: String,
    pub components: Vec<ComponentEntry>,
    pub stats: StatsReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecisionReport {
    pub k: usize,
    pub answer: String, // "yes" | "no"
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverReport {
    pub kind: CoverKind,
    pub size: usize,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub rep: usize,
    pub n: usize,
    pub algo: String,
    pub cover_kind: Option<CoverKind>,
    pub cover_size: Option<usize>,
    pub k_star: Option<usize>,
    pub states: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatsReport {
    pub states: u64,
    pub nodes: u64,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

impl ErrorReport {
    pub fn new(kind: &str, message: impl ToString) -> Self {
        ErrorReport {
            error: ErrorBody {
                kind: kind.into(),
                message: message.to_string(),
            },
        }
    }

    pub fn from_solve_error(e: &SolveError) -> Self {
        let kind = match e {
            SolveError::InvalidArgument(_) => "invalid-argument",
            SolveError::StateBudget { .. } => "state-budget",
            SolveError::TimeLimit => "time-limit",
            SolveError::Internal(_) => "internal",
        };
        ErrorReport::new(kind, e)
    }
}

impl SolveReport {
    pub fn from_run(run: &SolveRun, algo: &str, k_bound: Option<usize>) -> Self {
        let outcome = &run.outcome;
        let mut cover_members = Vec::new();
        let mut cover_kind = None;
        for comp in &run.components {
            if let Some(c) = &comp.cover {
                cover_members.extend(c.members.iter());
                // a mixed run reports the weaker kind
                cover_kind = Some(match (cover_kind, c.kind) {
                    (Some(CoverKind::TwinCover), _) | (_, CoverKind::TwinCover) => {
                        CoverKind::TwinCover
                    }
                    _ => CoverKind::VertexCover,
                });
            }
        }
        cover_members.sort_unstable();
        cover_members.dedup();
        SolveReport {
            status: outcome.status,
            r: run.r,
            k_star: outcome.min_units,
            solution: outcome.solution.as_ref().map(SolutionJson::from),
            decision: k_bound.map(|k| DecisionReport {
                k,
                answer: if outcome.decision(k) { "yes" } else { "no" }.into(),
            }),
            cover: cover_kind.map(|kind| CoverReport {
                kind,
                size: cover_members.len(),
                members: cover_members,
            }),
            algorithm: algo.to_string(),
            components: run
                .components
                .iter()
                .map(|c| ComponentEntry {
                    rep: c.rep,
                    n: c.n,
                    algo: c.algo.to_string(),
                    cover_kind: c.cover.as_ref().map(|cv| cv.kind),
                    cover_size: c.cover.as_ref().map(|cv| cv.size()),
                    k_star: c.k_star,
                    states: c.states,
                })
                .collect(),
            stats: StatsReport {
                states: outcome.stats.states,
                nodes: outcome.stats.nodes,
                seconds: outcome.stats.wall.as_secs_f64(),
            },
        }
    }
}
