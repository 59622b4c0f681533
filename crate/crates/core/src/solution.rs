//! Solution representation, the validity verifier, and the brute-force
//! oracle the optimized solvers are tested against.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::time::{Duration, Instant};
use thiserror::Error;

/// A family of disjoint connected units, each of exactly `r` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedSolution {
    pub r: usize,
    pub units: Vec<VertexSet>,
}

impl GroupedSolution {
    pub fn vertex_union(&self) -> VertexSet {
        self.units
            .iter()
            .fold(VertexSet::empty(), |acc, &u| acc | u)
    }

    /// Total number of solution vertices.
    pub fn size(&self) -> usize {
        self.units.iter().map(|u| u.len()).sum()
    }
}

/// The on-disk JSON form: `{"r": 2, "units": [[0,1],[4,5]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionJson {
    pub r: usize,
    pub units: Vec<Vec<usize>>,
}

impl From<&GroupedSolution> for SolutionJson {
    fn from(sol: &GroupedSolution) -> Self {
        SolutionJson {
            r: sol.r,
            units: sol.units.iter().map(|u| u.to_vec()).collect(),
        }
    }
}

impl TryFrom<SolutionJson> for GroupedSolution {
    type Error = String;

    fn try_from(json: SolutionJson) -> Result<Self, String> {
        if json.r == 0 {
            return Err("unit size r must be positive".into());
        }
        let mut units = Vec::with_capacity(json.units.len());
        for (i, unit) in json.units.iter().enumerate() {
            let set: VertexSet = unit
                .iter()
                .map(|&v| {
                    if v < crate::bitset::MAX_VERTICES {
                        Ok(v)
                    } else {
                        Err(format!("unit {i}: vertex {v} exceeds capacity"))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .collect();
            if set.len() != unit.len() {
                return Err(format!("unit {i} repeats a vertex"));
            }
            units.push(set);
        }
        Ok(GroupedSolution { r: json.r, units })
    }
}

/// First violated solution invariant, with the offending unit or vertex.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("units {a} and {b} overlap at vertex {v}")]
    Overlap { a: usize, b: usize, v: usize },
    #[error("unit {unit} has size {size}, expected r = {r}")]
    WrongSize { unit: usize, size: usize, r: usize },
    #[error("unit {unit} does not induce a connected subgraph")]
    DisconnectedUnit { unit: usize },
    #[error("vertex {v} is not dominated")]
    UndominatedVertex { v: usize },
    #[error("unit {unit} contains vertex {v}, which is not in the graph")]
    VertexOutOfRange { unit: usize, v: usize },
}

/// Checks the four defining invariants in order: disjointness, unit size,
/// unit connectivity, domination. Returns the first violation found.
pub fn verify_solution(g: &Graph, sol: &GroupedSolution) -> Result<(), Violation> {
    for (i, unit) in sol.units.iter().enumerate() {
        if let Some(v) = (*unit - g.vertices()).first() {
            return Err(Violation::VertexOutOfRange { unit: i, v });
        }
    }
    let mut seen = VertexSet::empty();
    for (i, &unit) in sol.units.iter().enumerate() {
        if unit.intersects(seen) {
            let v = (unit & seen).first().unwrap();
            let a = sol.units[..i]
                .iter()
                .position(|p| p.contains(v))
                .unwrap();
            return Err(Violation::Overlap { a, b: i, v });
        }
        seen |= unit;
    }
    for (i, &unit) in sol.units.iter().enumerate() {
        if unit.len() != sol.r {
            return Err(Violation::WrongSize {
                unit: i,
                size: unit.len(),
                r: sol.r,
            });
        }
    }
    for (i, &unit) in sol.units.iter().enumerate() {
        if !g.is_connected_induced(unit) {
            return Err(Violation::DisconnectedUnit { unit: i });
        }
    }
    if let Some(v) = (g.vertices() - g.closed_neighborhood(seen)).first() {
        return Err(Violation::UndominatedVertex { v });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "feasible")]
    Feasible,
    #[serde(rename = "infeasible")]
    Infeasible,
}

/// Work counters common to all solvers. `states` counts distinct
/// dynamic-programming states materialized; `nodes` counts search-tree
/// nodes of branching algorithms.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SolveStats {
    pub states: u64,
    pub nodes: u64,
    pub wall: Duration,
}

impl SolveStats {
    pub fn absorb(&mut self, other: &SolveStats) {
        self.states += other.states;
        self.nodes += other.nodes;
        self.wall += other.wall;
    }
}

/// Result of an exact solve: the minimum number of units with a witness,
/// or a proof of infeasibility.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: Status,
    pub min_units: Option<usize>,
    pub solution: Option<GroupedSolution>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn feasible(k: usize, solution: GroupedSolution, stats: SolveStats) -> Self {
        SolveOutcome {
            status: Status::Feasible,
            min_units: Some(k),
            solution: Some(solution),
            stats,
        }
    }

    pub fn infeasible(stats: SolveStats) -> Self {
        SolveOutcome {
            status: Status::Infeasible,
            min_units: None,
            solution: None,
            stats,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }

    /// The decision answer for "at most `k_bound` units?".
    pub fn decision(&self, k_bound: usize) -> bool {
        matches!(self.min_units, Some(k) if k <= k_bound)
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("state budget of {limit} entries exceeded{}", component_suffix(.component))]
    StateBudget { limit: u64, component: Option<usize> },
    #[error("time limit exceeded")]
    TimeLimit,
    #[error("internal error: {0}")]
    Internal(String),
}

fn component_suffix(component: &Option<usize>) -> String {
    match component {
        Some(c) => format!(" in component {c}"),
        None => String::new(),
    }
}

/// Default vertex cap for [`brute_force_min_units`]; raise it explicitly
/// with [`brute_force_min_units_with_cap`] when you really mean it.
pub const ORACLE_DEFAULT_VERTEX_CAP: usize = 16;

/// Splits `s` into connected sets of exactly `r` vertices, if possible.
///
/// One-shot wrapper around [`Partitioner`].
pub fn partition_into_connected_r_sets(
    g: &Graph,
    s: VertexSet,
    r: usize,
) -> Option<Vec<VertexSet>> {
    Partitioner::new(g, r).partition(s)
}

/// Exact-cover search for partitions of a vertex set into connected
/// `r`-sets, with memoization on the remainder mask so that repeated
/// queries within one solve share work.
pub struct Partitioner<'g> {
    g: &'g Graph,
    r: usize,
    // remainder mask -> the unit containing its smallest vertex, or None
    memo: HashMap<u128, Option<VertexSet>>,
}

impl<'g> Partitioner<'g> {
    pub fn new(g: &'g Graph, r: usize) -> Self {
        assert!(r >= 1, "unit size must be positive");
        Partitioner {
            g,
            r,
            memo: HashMap::new(),
        }
    }

    /// Whether `s` can be partitioned; cheap after the first query.
    pub fn feasible(&mut self, s: VertexSet) -> bool {
        if s.len() % self.r != 0 {
            return false;
        }
        self.search(s)
    }

    pub fn partition(&mut self, s: VertexSet) -> Option<Vec<VertexSet>> {
        if !self.feasible(s) {
            return None;
        }
        let mut rest = s;
        let mut units = Vec::with_capacity(s.len() / self.r);
        while !rest.is_empty() {
            let unit = self.memo[&rest.bits()].expect("feasible remainder");
            units.push(unit);
            rest -= unit;
        }
        Some(units)
    }

    fn search(&mut self, s: VertexSet) -> bool {
        if s.is_empty() {
            return true;
        }
        if let Some(hit) = self.memo.get(&s.bits()) {
            return hit.is_some();
        }
        let v = s.first().unwrap();
        // the unit containing the smallest vertex determines the recursion
        let mut found = None;
        for unit in self.g.connected_sets_containing(v, self.r, s) {
            if self.search(s - unit) {
                found = Some(unit);
                break;
            }
        }
        self.memo.insert(s.bits(), found);
        found.is_some()
    }
}

/// Ascending-lexicographic enumeration of all `t`-subsets of `0..n`.
pub(crate) fn for_each_combination<F: FnMut(VertexSet) -> bool>(n: usize, t: usize, mut f: F) {
    if t > n {
        return;
    }
    if t == 0 {
        f(VertexSet::empty());
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        if !f(idx.iter().copied().collect()) {
            return;
        }
        // advance to the next combination
        let mut i = t;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - t {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exhaustive oracle: smallest `k` such that some set of `r·k` vertices
/// dominates the graph and splits into connected `r`-sets.
///
/// Candidate unions are enumerated in ascending lexicographic order and
/// domination is tested before partitionability, so the reported witness
/// is the lexicographically least one. Intended for `n ≤ 16`; larger
/// graphs are rejected unless the cap is raised explicitly.
pub fn brute_force_min_units(
    g: &Graph,
    r: usize,
    k_cap: Option<usize>,
) -> Result<SolveOutcome, SolveError> {
    brute_force_min_units_with_cap(g, r, k_cap, ORACLE_DEFAULT_VERTEX_CAP)
}

/// [`brute_force_min_units`] with an explicit vertex cap.
pub fn brute_force_min_units_with_cap(
    g: &Graph,
    r: usize,
    k_cap: Option<usize>,
    vertex_cap: usize,
) -> Result<SolveOutcome, SolveError> {
    if r == 0 {
        return Err(SolveError::InvalidArgument(
            "unit size r must be positive".into(),
        ));
    }
    if g.n() > vertex_cap {
        return Err(SolveError::InvalidArgument(format!(
            "brute-force oracle capped at {} vertices, got {}",
            vertex_cap,
            g.n()
        )));
    }
    let start = Instant::now();
    let mut stats = SolveStats::default();
    if g.n() == 0 {
        stats.wall = start.elapsed();
        return Ok(SolveOutcome::feasible(
            0,
            GroupedSolution { r, units: vec![] },
            stats,
        ));
    }
    let kmax = g.n() / r;
    let kmax = k_cap.map_or(kmax, |c| c.min(kmax));
    let mut partitioner = Partitioner::new(g, r);
    for k in 1..=kmax {
        let mut witness = None;
        for_each_combination(g.n(), r * k, |s| {
            stats.nodes += 1;
            if g.dominates_all(s) {
                if let Some(units) = partitioner.partition(s) {
                    witness = Some(units);
                    return false;
                }
            }
            true
        });
        if let Some(units) = witness {
            let sol = GroupedSolution { r, units };
            debug_assert_eq!(verify_solution(g, &sol), Ok(()));
            stats.states = partitioner.memo.len() as u64;
            stats.wall = start.elapsed();
            return Ok(SolveOutcome::feasible(k, sol, stats));
        }
    }
    stats.states = partitioner.memo.len() as u64;
    stats.wall = start.elapsed();
    Ok(SolveOutcome::infeasible(stats))
}
