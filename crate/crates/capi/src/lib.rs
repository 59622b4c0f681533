//! C ABI for the grouped-domination solvers.
//!
//! Everything crosses the boundary as opaque handles, status codes, and
//! UTF-8 strings. Strings returned by this library are heap-allocated and
//! must be released with [`gdom_string_free`]; handles with their
//! respective `_free` functions. Out-parameters for error messages may be
//! null when the caller does not want them.

use grouped_domination::graph::{parse_graph, Graph, GraphFormat};
use grouped_domination::reductions::SolveRun;
use grouped_domination::report::SolveReport;
use grouped_domination::solution::{GroupedSolution, SolutionJson, SolveError};
use grouped_domination::{solve_detailed, verify_solution, Algo, SolveOptions};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdomStatus {
    GdomOk = 0,
    /// Input text did not parse.
    GdomErrParse = 1,
    /// A precondition was violated (bad r, invalid solution, null argument).
    GdomErrInvalidArgument = 2,
    /// The state budget was exhausted.
    GdomErrStateBudget = 3,
    GdomErrTimeLimit = 4,
    GdomErrInternal = 5,
}

/// Graph input formats accepted by [`gdom_graph_parse`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdomFormat {
    GdomFormatEdgeList = 0,
    GdomFormatDimacs = 1,
}

/// Algorithm selector accepted by [`gdom_solve`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdomAlgo {
    GdomAlgoAuto = 0,
    GdomAlgoBrute = 1,
    GdomAlgoVcDp = 2,
    GdomAlgoTcDp = 3,
    GdomAlgoXp = 4,
    GdomAlgoBigR = 5,
}

/// An immutable parsed graph.
pub struct GdomGraph {
    inner: Graph,
}

/// The outcome of one solve, including per-component details.
pub struct GdomResult {
    run: SolveRun,
    algo: Algo,
}

fn set_message(out: *mut *mut c_char, msg: &str) {
    if out.is_null() {
        return;
    }
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    unsafe { *out = c.into_raw() };
}

fn clear_out<T>(out: *mut *mut T) {
    if !out.is_null() {
        unsafe { *out = ptr::null_mut() };
    }
}

fn status_of(e: &SolveError) -> GdomStatus {
    match e {
        SolveError::InvalidArgument(_) => GdomStatus::GdomErrInvalidArgument,
        SolveError::StateBudget { .. } => GdomStatus::GdomErrStateBudget,
        SolveError::TimeLimit => GdomStatus::GdomErrTimeLimit,
        SolveError::Internal(_) => GdomStatus::GdomErrInternal,
    }
}

/// Parses a graph from UTF-8 `text`. On success stores a handle in `*out`
/// and returns `GdomOk`; otherwise stores an error message in
/// `*error_out` (when non-null).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer; `error_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn gdom_graph_parse(
    text: *const c_char,
    format: GdomFormat,
    out: *mut *mut GdomGraph,
    error_out: *mut *mut c_char,
) -> GdomStatus {
    clear_out(error_out);
    if text.is_null() || out.is_null() {
        set_message(error_out, "null pointer argument");
        return GdomStatus::GdomErrInvalidArgument;
    }
    clear_out(out);
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        set_message(error_out, "input is not valid UTF-8");
        return GdomStatus::GdomErrParse;
    };
    let fmt = match format {
        GdomFormat::GdomFormatEdgeList => GraphFormat::EdgeList,
        GdomFormat::GdomFormatDimacs => GraphFormat::Dimacs,
    };
    match catch_unwind(|| parse_graph(text, fmt)) {
        Ok(Ok(g)) => {
            *out = Box::into_raw(Box::new(GdomGraph { inner: g }));
            GdomStatus::GdomOk
        }
        Ok(Err(e)) => {
            set_message(error_out, &e.to_string());
            GdomStatus::GdomErrParse
        }
        Err(_) => {
            set_message(error_out, "internal panic while parsing");
            GdomStatus::GdomErrInternal
        }
    }
}

/// Releases a graph handle. Null is a no-op.
///
/// # Safety
/// `g` must have come from [`gdom_graph_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gdom_graph_free(g: *mut GdomGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices.
///
/// # Safety
/// `g` must be a live handle from [`gdom_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn gdom_graph_n(g: *const GdomGraph) -> u32 {
    (*g).inner.n() as u32
}

/// Number of edges.
///
/// # Safety
/// `g` must be a live handle from [`gdom_graph_parse`].
#[no_mangle]
pub unsafe extern "C" fn gdom_graph_m(g: *const GdomGraph) -> u32 {
    (*g).inner.m() as u32
}

/// Computes the minimum number of `r`-units of `g`. `state_budget = 0`
/// selects the default budget. On success stores a result handle in
/// `*out`.
///
/// # Safety
/// `g` must be a live handle, `out` a valid pointer; `error_out` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn gdom_solve(
    g: *const GdomGraph,
    r: u32,
    algo: GdomAlgo,
    state_budget: u64,
    out: *mut *mut GdomResult,
    error_out: *mut *mut c_char,
) -> GdomStatus {
    clear_out(error_out);
    if g.is_null() || out.is_null() {
        set_message(error_out, "null pointer argument");
        return GdomStatus::GdomErrInvalidArgument;
    }
    clear_out(out);
    let graph = &(*g).inner;
    let algo = match algo {
        GdomAlgo::GdomAlgoAuto => Algo::Auto,
        GdomAlgo::GdomAlgoBrute => Algo::Brute,
        GdomAlgo::GdomAlgoVcDp => Algo::VcDp,
        GdomAlgo::GdomAlgoTcDp => Algo::TcDp,
        GdomAlgo::GdomAlgoXp => Algo::Xp,
        GdomAlgo::GdomAlgoBigR => Algo::BigR,
    };
    let mut opts = SolveOptions {
        algo,
        ..SolveOptions::default()
    };
    if state_budget > 0 {
        opts.state_budget = state_budget;
    }
    match catch_unwind(AssertUnwindSafe(|| {
        solve_detailed(graph, r as usize, &opts)
    })) {
        Ok(Ok(run)) => {
            *out = Box::into_raw(Box::new(GdomResult { run, algo }));
            GdomStatus::GdomOk
        }
        Ok(Err(e)) => {
            set_message(error_out, &e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_message(error_out, "internal panic while solving");
            GdomStatus::GdomErrInternal
        }
    }
}

/// Releases a result handle. Null is a no-op.
///
/// # Safety
/// `res` must have come from [`gdom_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gdom_result_free(res: *mut GdomResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// 1 when a minimum family exists, 0 when the instance is infeasible.
///
/// # Safety
/// `res` must be a live handle from [`gdom_solve`].
#[no_mangle]
pub unsafe extern "C" fn gdom_result_feasible(res: *const GdomResult) -> i32 {
    (*res).run.outcome.is_feasible() as i32
}

/// Minimum number of units, or -1 when infeasible.
///
/// # Safety
/// `res` must be a live handle from [`gdom_solve`].
#[no_mangle]
pub unsafe extern "C" fn gdom_result_min_units(res: *const GdomResult) -> i64 {
    (*res).run.outcome.min_units.map_or(-1, |k| k as i64)
}

/// The witness as solution JSON (`{"r": .., "units": [[..], ..]}`), or
/// null when infeasible. Free with [`gdom_string_free`].
///
/// # Safety
/// `res` must be a live handle from [`gdom_solve`].
#[no_mangle]
pub unsafe extern "C" fn gdom_result_solution_json(res: *const GdomResult) -> *mut c_char {
    match &(*res).run.outcome.solution {
        None => ptr::null_mut(),
        Some(sol) => {
            let json = serde_json::to_string(&SolutionJson::from(sol)).unwrap_or_default();
            CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
        }
    }
}

/// The full machine-readable report (same schema as `gdom solve --json`).
/// Free with [`gdom_string_free`].
///
/// # Safety
/// `res` must be a live handle from [`gdom_solve`].
#[no_mangle]
pub unsafe extern "C" fn gdom_result_report_json(res: *const GdomResult) -> *mut c_char {
    let res = &*res;
    let report = SolveReport::from_run(&res.run, &res.algo.to_string(), None);
    let json = serde_json::to_string(&report).unwrap_or_default();
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// Checks a solution (as solution JSON) against a graph. Returns `GdomOk`
/// when valid; `GdomErrInvalidArgument` with a message describing the
/// violation or parse failure otherwise.
///
/// # Safety
/// `g` must be a live handle, `solution_json` a valid NUL-terminated
/// string; `error_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn gdom_verify_solution_json(
    g: *const GdomGraph,
    solution_json: *const c_char,
    error_out: *mut *mut c_char,
) -> GdomStatus {
    clear_out(error_out);
    if g.is_null() || solution_json.is_null() {
        set_message(error_out, "null pointer argument");
        return GdomStatus::GdomErrInvalidArgument;
    }
    let Ok(text) = CStr::from_ptr(solution_json).to_str() else {
        set_message(error_out, "solution is not valid UTF-8");
        return GdomStatus::GdomErrInvalidArgument;
    };
    let parsed: SolutionJson = match serde_json::from_str(text) {
        Ok(p) => p,
        Err(e) => {
            set_message(error_out, &format!("solution JSON: {e}"));
            return GdomStatus::GdomErrInvalidArgument;
        }
    };
    let sol = match GroupedSolution::try_from(parsed) {
        Ok(s) => s,
        Err(e) => {
            set_message(error_out, &e);
            return GdomStatus::GdomErrInvalidArgument;
        }
    };
    match verify_solution(&(*g).inner, &sol) {
        Ok(()) => GdomStatus::GdomOk,
        Err(violation) => {
            set_message(error_out, &violation.to_string());
            GdomStatus::GdomErrInvalidArgument
        }
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gdom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        gdom_string_free(p);
        s
    }

    #[test]
    fn parse_solve_verify_roundtrip() {
        unsafe {
            let text = cstr("4 4\n0 1\n1 2\n2 3\n3 0\n");
            let mut g: *mut GdomGraph = ptr::null_mut();
            let mut err: *mut c_char = ptr::null_mut();
            let st = gdom_graph_parse(
                text.as_ptr(),
                GdomFormat::GdomFormatEdgeList,
                &mut g,
                &mut err,
            );
            assert_eq!(st, GdomStatus::GdomOk);
            assert_eq!(gdom_graph_n(g), 4);
            assert_eq!(gdom_graph_m(g), 4);

            let mut res: *mut GdomResult = ptr::null_mut();
            let st = gdom_solve(g, 2, GdomAlgo::GdomAlgoAuto, 0, &mut res, &mut err);
            assert_eq!(st, GdomStatus::GdomOk);
            assert_eq!(gdom_result_feasible(res), 1);
            assert_eq!(gdom_result_min_units(res), 1);

            let sol = take_string(gdom_result_solution_json(res));
            let st = gdom_verify_solution_json(g, cstr(&sol).as_ptr(), &mut err);
            assert_eq!(st, GdomStatus::GdomOk);

            let report = take_string(gdom_result_report_json(res));
            assert!(report.contains("\"k_star\":1"));

            gdom_result_free(res);
            gdom_graph_free(g);
        }
    }

    #[test]
    fn parse_error_reports_message() {
        unsafe {
            let text = cstr("2 1\n1 1\n");
            let mut g: *mut GdomGraph = ptr::null_mut();
            let mut err: *mut c_char = ptr::null_mut();
            let st = gdom_graph_parse(
                text.as_ptr(),
                GdomFormat::GdomFormatEdgeList,
                &mut g,
                &mut err,
            );
            assert_eq!(st, GdomStatus::GdomErrParse);
            assert!(g.is_null());
            let msg = take_string(err);
            assert!(msg.contains("self-loop"));
        }
    }

    #[test]
    fn invalid_solution_reports_violation() {
        unsafe {
            let text = cstr("4 3\n0 1\n1 2\n2 3\n");
            let mut g: *mut GdomGraph = ptr::null_mut();
            let st = gdom_graph_parse(
                text.as_ptr(),
                GdomFormat::GdomFormatEdgeList,
                &mut g,
                ptr::null_mut(),
            );
            assert_eq!(st, GdomStatus::GdomOk);
            let mut err: *mut c_char = ptr::null_mut();
            let bad = cstr("{\"r\":2,\"units\":[[0,3]]}");
            let st = gdom_verify_solution_json(g, bad.as_ptr(), &mut err);
            assert_eq!(st, GdomStatus::GdomErrInvalidArgument);
            let msg = take_string(err);
            assert!(msg.contains("connected"));
            gdom_graph_free(g);
        }
    }

    #[test]
    fn infeasible_solve() {
        unsafe {
            let text = cstr("1 0\n");
            let mut g: *mut GdomGraph = ptr::null_mut();
            gdom_graph_parse(
                text.as_ptr(),
                GdomFormat::GdomFormatEdgeList,
                &mut g,
                ptr::null_mut(),
            );
            let mut res: *mut GdomResult = ptr::null_mut();
            let st = gdom_solve(g, 2, GdomAlgo::GdomAlgoAuto, 0, &mut res, ptr::null_mut());
            assert_eq!(st, GdomStatus::GdomOk);
            assert_eq!(gdom_result_feasible(res), 0);
            assert_eq!(gdom_result_min_units(res), -1);
            assert!(gdom_result_solution_json(res).is_null());
            gdom_result_free(res);
            gdom_graph_free(g);
        }
    }
}
