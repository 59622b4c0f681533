//! Structural preprocessing and orchestration: twin-edge stripping, the
//! large-`r` constructive shortcut, per-component dispatch, and algorithm
//! auto-selection.
//!
//! Twin-edge stripping rests on an exchange argument: with a twin cover
//! `K`, some minimum solution has every unit meeting `K` (for `r ≥ 2`), so
//! edges joining two vertices outside `K` — all twin edges — never carry a
//! unit's connectivity and can be deleted. `K` is then a plain vertex
//! cover of the stripped graph and the cover DPs apply with `|J| = τ`.
//! The exchange needs a unit to be able to reach `K`, so a component that
//! misses `K` entirely gets one arbitrary vertex promoted into `K` first
//! (such a component is a clique of mutual twins).

use crate::bitset::VertexSet;
use crate::covers::{min_twin_cover, min_vertex_cover, verify_cover, CoverCertificate, CoverKind};
use crate::graph::Graph;
use crate::solution::{
    brute_force_min_units_with_cap, verify_solution, GroupedSolution, SolveError, SolveOutcome,
    SolveStats, Status,
};
use crate::vcdp::{solve_general, solve_r1, solve_r2, solve_r3, SolverConfig, DEFAULT_STATE_BUDGET};
use crate::xp::solve_xp;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

/// Algorithm selector for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    /// Brute force on small components, otherwise the twin-cover pipeline
    /// (or the large-`r` shortcut when `r ≥ 2τ − 1`).
    Auto,
    Brute,
    VcDp,
    TcDp,
    Xp,
    BigR,
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Algo::Auto),
            "brute" => Ok(Algo::Brute),
            "vc-dp" => Ok(Algo::VcDp),
            "tc-dp" => Ok(Algo::TcDp),
            "xp" => Ok(Algo::Xp),
            "big-r" => Ok(Algo::BigR),
            other => Err(format!(
                "unknown algorithm {other:?} (expected auto, brute, vc-dp, tc-dp, xp, or big-r)"
            )),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Auto => "auto",
            Algo::Brute => "brute",
            Algo::VcDp => "vc-dp",
            Algo::TcDp => "tc-dp",
            Algo::Xp => "xp",
            Algo::BigR => "big-r",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub algo: Algo,
    /// Decision bound: answer whether `k* ≤ k_bound`. A post-filter for
    /// the exact algorithms; in the `xp` path it caps the search depth,
    /// so an infeasible outcome there means "no family within the bound".
    pub k_bound: Option<usize>,
    pub state_budget: u64,
    pub time_limit: Option<Duration>,
    /// Components of at most this many vertices are brute-forced under
    /// `auto`.
    pub brute_max_n: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            algo: Algo::Auto,
            k_bound: None,
            state_budget: DEFAULT_STATE_BUDGET,
            time_limit: None,
            brute_max_n: 12,
        }
    }
}

/// How one component was solved, for reporting.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    /// Smallest vertex id of the component (its name in messages).
    pub rep: usize,
    pub n: usize,
    pub algo: Algo,
    /// The cover the DP ran on, in original vertex ids.
    pub cover: Option<CoverCertificate>,
    pub k_star: Option<usize>,
    pub states: u64,
}

/// A full solve with per-component details.
#[derive(Debug, Clone)]
pub struct SolveRun {
    pub r: usize,
    pub outcome: SolveOutcome,
    pub components: Vec<ComponentReport>,
}

/// Deletes every edge whose two endpoints both lie outside the twin cover
/// (all such edges are twin edges). The cover must verify; it is a vertex
/// cover of the result, and for `r ≥ 2` the minimum unit count is
/// unchanged provided every multi-vertex component meets the cover.
pub fn strip_noncover_twin_edges(
    g: &Graph,
    k_cover: &CoverCertificate,
) -> Result<Graph, SolveError> {
    if k_cover.kind != CoverKind::TwinCover {
        return Err(SolveError::InvalidArgument(
            "stripping needs a twin-cover certificate".into(),
        ));
    }
    if !verify_cover(g, k_cover) {
        return Err(SolveError::InvalidArgument(
            "the claimed twin cover does not cover all non-twin edges".into(),
        ));
    }
    let outside: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !k_cover.members.contains(u) && !k_cover.members.contains(v))
        .collect();
    #[cfg(debug_assertions)]
    for &(u, v) in &outside {
        debug_assert!(g.are_true_twins(u, v).unwrap(), "non-twin edge outside the cover");
    }
    g.delete_edges(&outside)
        .map_err(|e| SolveError::Internal(format!("stripping: {e}")))
}

/// Builds one unit: a connected dominating set of exactly `r` vertices in
/// a connected component, grown from a nonempty twin cover of it.
/// Needs `r ≥ 2·|K| − 1`; returns `None` when the component is smaller
/// than `r` (then no unit fits at all).
pub fn big_r_unit(
    g_component: &Graph,
    k_in_component: VertexSet,
    r: usize,
) -> Result<Option<VertexSet>, SolveError> {
    if k_in_component.is_empty() {
        return Err(SolveError::InvalidArgument(
            "the seed twin cover must be nonempty (pick one vertex on complete components)".into(),
        ));
    }
    if !k_in_component.is_subset_of(g_component.vertices()) {
        return Err(SolveError::InvalidArgument(
            "seed cover outside the component".into(),
        ));
    }
    if !g_component.is_connected_induced(g_component.vertices()) {
        return Err(SolveError::InvalidArgument(
            "big-r unit construction needs a connected component".into(),
        ));
    }
    let tau = k_in_component.len();
    if r + 1 < 2 * tau {
        return Err(SolveError::InvalidArgument(format!(
            "needs r >= 2·τ − 1 (got r = {r}, τ = {tau}); route to the cover DP instead"
        )));
    }
    if g_component.n() < r {
        return Ok(None);
    }
    let mut unit = k_in_component;
    // connect: a vertex adjacent to two pieces shrinks the piece count
    while !g_component.is_connected_induced(unit) {
        let pieces = components_within(g_component, unit);
        let candidate = (g_component.vertices() - unit).iter().find(|&v| {
            let nb = g_component.neighbors(v);
            pieces.iter().filter(|&&p| nb.intersects(p)).count() >= 2
        });
        match candidate {
            Some(v) => unit.insert(v),
            None => {
                return Err(SolveError::Internal(
                    "no vertex joins two pieces of a dominating set in a connected graph".into(),
                ))
            }
        }
    }
    // pad to exactly r, staying connected
    while unit.len() < r {
        let v = (g_component.open_neighborhood(unit) - unit)
            .first()
            .ok_or_else(|| SolveError::Internal("ran out of adjacent vertices".into()))?;
        unit.insert(v);
    }
    if unit.len() != r
        || !g_component.is_connected_induced(unit)
        || !g_component.dominates_all(unit)
    {
        return Err(SolveError::Internal(
            "constructed unit is not a size-r connected dominating set".into(),
        ));
    }
    Ok(Some(unit))
}

fn components_within(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let mut remaining = s;
    let mut out = Vec::new();
    while let Some(start) = remaining.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next |= g.neighbors(v);
            }
            next &= s;
            next -= comp;
            comp |= next;
            frontier = next;
        }
        remaining -= comp;
        out.push(comp);
    }
    out
}

/// Solves with defaults; see [`solve_detailed`] for reports and options.
pub fn solve(
    g: &Graph,
    r: usize,
    k_bound: Option<usize>,
    algo: Algo,
) -> Result<SolveOutcome, SolveError> {
    let opts = SolveOptions {
        algo,
        k_bound,
        ..SolveOptions::default()
    };
    Ok(solve_detailed(g, r, &opts)?.outcome)
}

/// Decomposes into connected components, solves each with the selected
/// algorithm, and sums the minima. Any component that cannot host a unit
/// makes the whole instance infeasible.
pub fn solve_detailed(g: &Graph, r: usize, opts: &SolveOptions) -> Result<SolveRun, SolveError> {
    if r == 0 {
        return Err(SolveError::InvalidArgument(
            "unit size r must be positive".into(),
        ));
    }
    let start = Instant::now();
    let cfg = SolverConfig {
        state_budget: opts.state_budget,
        deadline: opts.time_limit.map(|d| start + d),
    };
    let mut stats = SolveStats::default();
    let mut components = Vec::new();
    let mut units: Vec<VertexSet> = Vec::new();
    let mut total_k = 0usize;
    let mut feasible = true;

    for (ci, comp) in g.connected_components().into_iter().enumerate() {
        cfg.check_deadline()?;
        let (sub, ids) = g.induced_subgraph(comp);
        let solved = solve_component(&sub, r, opts, &cfg).map_err(|e| match e {
            SolveError::StateBudget { limit, .. } => SolveError::StateBudget {
                limit,
                component: Some(ci),
            },
            other => other,
        })?;
        let ComponentSolve {
            outcome,
            algo,
            cover,
        } = solved;
        stats.absorb(&outcome.stats);
        components.push(ComponentReport {
            rep: ids[0],
            n: sub.n(),
            algo,
            cover: cover.map(|c| CoverCertificate {
                kind: c.kind,
                members: c.members.iter().map(|p| ids[p]).collect(),
            }),
            k_star: outcome.min_units,
            states: outcome.stats.states,
        });
        match outcome.status {
            Status::Infeasible => {
                feasible = false;
            }
            Status::Feasible => {
                total_k += outcome.min_units.expect("feasible outcome has a count");
                if let Some(sol) = outcome.solution {
                    units.extend(
                        sol.units
                            .into_iter()
                            .map(|u| u.iter().map(|p| ids[p]).collect::<VertexSet>()),
                    );
                }
            }
        }
        if !feasible {
            break;
        }
    }

    stats.wall = start.elapsed();
    let outcome = if feasible {
        let sol = GroupedSolution { r, units };
        if let Err(violation) = verify_solution(g, &sol) {
            return Err(SolveError::Internal(format!(
                "combined solution failed verification: {violation}"
            )));
        }
        SolveOutcome {
            status: Status::Feasible,
            min_units: Some(total_k),
            solution: Some(sol),
            stats,
        }
    } else {
        SolveOutcome::infeasible(stats)
    };
    Ok(SolveRun {
        r,
        outcome,
        components,
    })
}

struct ComponentSolve {
    outcome: SolveOutcome,
    algo: Algo,
    cover: Option<CoverCertificate>,
}

fn solve_component(
    sub: &Graph,
    r: usize,
    opts: &SolveOptions,
    cfg: &SolverConfig,
) -> Result<ComponentSolve, SolveError> {
    match opts.algo {
        Algo::Auto => {
            if sub.n() <= opts.brute_max_n {
                return brute_component(sub, r);
            }
            if r == 1 {
                return vc_dp_component(sub, r, cfg);
            }
            let tc = min_twin_cover(sub);
            if r + 1 >= 2 * tc.size() {
                big_r_component(sub, r, tc)
            } else {
                tc_dp_component(sub, r, tc, cfg)
            }
        }
        Algo::Brute => brute_component(sub, r),
        Algo::VcDp => vc_dp_component(sub, r, cfg),
        Algo::TcDp => {
            if r == 1 {
                // twin-edge stripping is only optimum-preserving for r >= 2
                vc_dp_component(sub, r, cfg)
            } else {
                tc_dp_component(sub, r, min_twin_cover(sub), cfg)
            }
        }
        Algo::Xp => xp_component(sub, r, opts, cfg),
        Algo::BigR => big_r_component(sub, r, min_twin_cover(sub)),
    }
}

fn brute_component(sub: &Graph, r: usize) -> Result<ComponentSolve, SolveError> {
    let outcome = brute_force_min_units_with_cap(sub, r, None, sub.n())?;
    Ok(ComponentSolve {
        outcome,
        algo: Algo::Brute,
        cover: None,
    })
}

fn vc_dp_component(
    sub: &Graph,
    r: usize,
    cfg: &SolverConfig,
) -> Result<ComponentSolve, SolveError> {
    let cover = min_vertex_cover(sub);
    let outcome = dispatch_dp(sub, cover.members, r, cfg)?;
    Ok(ComponentSolve {
        outcome,
        algo: Algo::VcDp,
        cover: Some(cover),
    })
}

fn tc_dp_component(
    sub: &Graph,
    r: usize,
    mut tc: CoverCertificate,
    cfg: &SolverConfig,
) -> Result<ComponentSolve, SolveError> {
    // a multi-vertex component entirely outside the cover is a clique of
    // twins; promote one vertex so every unit can meet the cover
    if tc.members.is_empty() && sub.n() >= 2 {
        tc.members.insert(0);
    }
    let stripped = strip_noncover_twin_edges(sub, &tc)?;
    let outcome = dispatch_dp(&stripped, tc.members, r, cfg)?;
    // edges only got removed, so the solution must stand in the original
    if let Some(sol) = &outcome.solution {
        if let Err(violation) = verify_solution(sub, sol) {
            return Err(SolveError::Internal(format!(
                "stripped-graph solution invalid on the original graph: {violation}"
            )));
        }
    }
    Ok(ComponentSolve {
        outcome,
        algo: Algo::TcDp,
        cover: Some(tc),
    })
}

fn dispatch_dp(
    g: &Graph,
    cover: VertexSet,
    r: usize,
    cfg: &SolverConfig,
) -> Result<SolveOutcome, SolveError> {
    match r {
        0 => unreachable!("checked by the caller"),
        1 => solve_r1(g, cover, cfg),
        2 => solve_r2(g, cover, cfg),
        3 => solve_r3(g, cover, cfg),
        _ => solve_general(g, cover, r, cfg),
    }
}

fn big_r_component(
    sub: &Graph,
    r: usize,
    tc: CoverCertificate,
) -> Result<ComponentSolve, SolveError> {
    let start = Instant::now();
    let mut seed = tc.members;
    if seed.is_empty() {
        // complete component (every edge is a twin edge): any vertex works
        seed.insert(0);
    }
    let unit = big_r_unit(sub, seed, r)?;
    let mut stats = SolveStats::default();
    stats.nodes = 1;
    stats.wall = start.elapsed();
    let outcome = match unit {
        None => SolveOutcome::infeasible(stats),
        Some(u) => SolveOutcome::feasible(
            1,
            GroupedSolution { r, units: vec![u] },
            stats,
        ),
    };
    Ok(ComponentSolve {
        outcome,
        algo: Algo::BigR,
        cover: Some(tc),
    })
}

// Iterates the depth bound upward, so the first feasible depth is the
// exact minimum. With a k_bound the iteration stops there and an
// infeasible outcome means "nothing within the bound".
fn xp_component(
    sub: &Graph,
    r: usize,
    opts: &SolveOptions,
    cfg: &SolverConfig,
) -> Result<ComponentSolve, SolveError> {
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let cap = opts.k_bound.unwrap_or(usize::MAX).min(sub.n() / r);
    for k in 0..=cap {
        cfg.check_deadline()?;
        let out = solve_xp(sub, r, k)?;
        stats.nodes += out.stats.nodes;
        if out.is_feasible() {
            stats.wall = start.elapsed();
            let sol = out.solution.expect("feasible xp outcome has a witness");
            let k_star = sol.units.len();
            return Ok(ComponentSolve {
                outcome: SolveOutcome::feasible(k_star, sol, stats),
                algo: Algo::Xp,
                cover: None,
            });
        }
    }
    stats.wall = start.elapsed();
    Ok(ComponentSolve {
        outcome: SolveOutcome::infeasible(stats),
        algo: Algo::Xp,
        cover: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::*;
    use crate::rng::SplitMix64;
    use crate::solution::brute_force_min_units;

    fn vs(ids: &[usize]) -> VertexSet {
        ids.iter().copied().collect()
    }

    fn tc(ids: &[usize]) -> CoverCertificate {
        CoverCertificate {
            kind: CoverKind::TwinCover,
            members: ids.iter().copied().collect(),
        }
    }

    #[test]
    fn strip_cases() {
        // triangle with a marked apex: the outside edge (1,2) is a twin edge
        let g = complete(3);
        let stripped = strip_noncover_twin_edges(&g, &tc(&[0])).unwrap();
        assert_eq!(stripped.edges(), vec![(0, 1), (0, 2)]);
        // P4 with both middle vertices covered: nothing outside the cover
        let p4 = path(4);
        assert_eq!(strip_noncover_twin_edges(&p4, &tc(&[1, 2])).unwrap(), p4);
        // invalid certificate
        assert!(matches!(
            strip_noncover_twin_edges(&p4, &tc(&[0])),
            Err(SolveError::InvalidArgument(_))
        ));
        let vc = CoverCertificate {
            kind: CoverKind::VertexCover,
            members: vs(&[1, 2]),
        };
        assert!(matches!(
            strip_noncover_twin_edges(&p4, &vc),
            Err(SolveError::InvalidArgument(_))
        ));
    }

    #[test]
    fn big_r_unit_cases() {
        let p5 = path(5);
        let unit = big_r_unit(&p5, vs(&[1, 3]), 4).unwrap().unwrap();
        assert_eq!(unit, vs(&[0, 1, 2, 3]));
        let k4 = complete(4);
        let unit = big_r_unit(&k4, vs(&[0]), 3).unwrap().unwrap();
        assert_eq!(unit, vs(&[0, 1, 2]));
        // component smaller than r
        assert_eq!(big_r_unit(&path(3), vs(&[1]), 4).unwrap(), None);
        // precondition r >= 2τ − 1
        assert!(matches!(
            big_r_unit(&p5, vs(&[1, 3]), 2),
            Err(SolveError::InvalidArgument(_))
        ));
        assert!(matches!(
            big_r_unit(&p5, VertexSet::empty(), 4),
            Err(SolveError::InvalidArgument(_))
        ));
    }

    #[test]
    fn solve_sums_components() {
        let c4 = cycle(4);
        let two = Graph::disjoint_union(&[&c4, &c4]);
        let out = solve(&two, 2, None, Algo::Auto).unwrap();
        assert_eq!(out.min_units, Some(2));
        assert_eq!(verify_solution(&two, out.solution.as_ref().unwrap()), Ok(()));
    }

    #[test]
    fn isolated_vertex_makes_r2_infeasible() {
        let c4 = cycle(4);
        let g = Graph::disjoint_union(&[&c4, &Graph::empty(1)]);
        let out = solve(&g, 2, None, Algo::Auto).unwrap();
        assert!(!out.is_feasible());
    }

    #[test]
    fn clique_with_pendant() {
        // K10 plus a pendant on vertex 0: τ = 1, solved by one pair
        let mut edges = Vec::new();
        for u in 0..10 {
            for v in u + 1..10 {
                edges.push((u, v));
            }
        }
        edges.push((0, 10));
        let g = Graph::from_edges(11, &edges).unwrap();
        for algo in [Algo::Auto, Algo::TcDp, Algo::BigR] {
            let out = solve(&g, 2, None, algo).unwrap();
            assert_eq!(out.min_units, Some(1), "algo {algo}");
            assert_eq!(verify_solution(&g, out.solution.as_ref().unwrap()), Ok(()));
        }
    }

    #[test]
    fn every_algo_agrees_with_the_oracle() {
        let mut rng = SplitMix64::new(0xFACE);
        for _ in 0..30 {
            let n = 2 + (rng.next_u64() % 8) as usize;
            let g = crate::generators::gnp(n, 0.45, rng.next_u64());
            for r in 1..=3usize {
                let want = brute_force_min_units(&g, r, None).unwrap();
                for algo in [Algo::Auto, Algo::VcDp, Algo::TcDp, Algo::Xp] {
                    let got = solve(&g, r, None, algo).unwrap();
                    assert_eq!(got.min_units, want.min_units, "r={r} algo={algo} on {g:?}");
                    if let Some(sol) = got.solution {
                        assert_eq!(verify_solution(&g, &sol), Ok(()));
                    }
                }
            }
        }
    }

    #[test]
    fn detailed_reports_cover_and_algo() {
        let g = gen_planted();
        let opts = SolveOptions {
            algo: Algo::TcDp,
            ..SolveOptions::default()
        };
        let run = solve_detailed(&g, 2, &opts).unwrap();
        assert_eq!(run.components.len(), 1);
        let comp = &run.components[0];
        assert_eq!(comp.algo, Algo::TcDp);
        assert!(comp.cover.is_some());
        assert!(verify_cover(&g, comp.cover.as_ref().unwrap()));
    }

    fn gen_planted() -> Graph {
        crate::generators::gen_planted_twin_cover(
            2,
            &[(2, vs(&[0])), (3, vs(&[0, 1]))],
            0.7,
            5,
        )
        .unwrap()
    }

    #[test]
    fn xp_respects_k_bound() {
        let c6 = cycle(6);
        let opts = SolveOptions {
            algo: Algo::Xp,
            k_bound: Some(1),
            ..SolveOptions::default()
        };
        let run = solve_detailed(&c6, 2, &opts).unwrap();
        assert!(!run.outcome.is_feasible()); // nothing within the bound
        let opts = SolveOptions {
            algo: Algo::Xp,
            k_bound: Some(3),
            ..SolveOptions::default()
        };
        let run = solve_detailed(&c6, 2, &opts).unwrap();
        assert_eq!(run.outcome.min_units, Some(2));
        assert!(run.outcome.decision(3));
    }

    #[test]
    fn rejects_zero_r() {
        assert!(matches!(
            solve(&path(3), 0, None, Algo::Auto),
            Err(SolveError::InvalidArgument(_))
        ));
    }
}
