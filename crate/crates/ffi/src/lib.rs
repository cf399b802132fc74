//! C ABI over the `partialcover` solvers.
//!
//! Instances and reports are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`PcStatus`]; on failure the
//! message is available from [`pc_last_error_message`] on the same thread.
//! Strings returned by the library are released with [`pc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use partialcover::format::parse_wpvc;
use partialcover::oracle::{oracle_wpvc, DEFAULT_CAP};
use partialcover::report::{render_json, render_text};
use partialcover::{
    solve_epvcbd, solve_pvcbm, solve_wpvc_bounded_degree, solve_wpvc_by_l, solve_wpvcbfd, Graph, OracleError,
    SolveError, SolveReport, WpvcInstance,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInstance = 4,
    VariantError = 5,
    NotBipartite = 6,
    DegreeExceeded = 7,
    InputError = 8,
    OracleCapExceeded = 9,
    InternalError = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcAlgorithm {
    Epvcbd = 0,
    BoundedDegree = 1,
    ByL = 2,
    Fractional = 3,
    Oracle = 4,
}

/// A parsed instance.
pub struct PcInstance {
    instance: WpvcInstance,
    labels: Vec<String>,
}

/// The outcome of one solver run.
pub struct PcReport {
    report: SolveReport,
    graph: Graph,
    labels: Vec<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: PcStatus, msg: impl Into<String>) -> PcStatus {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
    status
}

fn solve_status(e: &SolveError) -> PcStatus {
    match e {
        SolveError::Variant(_) => PcStatus::VariantError,
        SolveError::NotBipartite(_) => PcStatus::NotBipartite,
        SolveError::DegreeExceeded { .. } => PcStatus::DegreeExceeded,
        SolveError::Input(_) => PcStatus::InputError,
        SolveError::Internal(_) => PcStatus::InternalError,
    }
}

fn oracle_status(e: &OracleError) -> PcStatus {
    match e {
        OracleError::CapExceeded { .. } => PcStatus::OracleCapExceeded,
        OracleError::NotBipartite(_) => PcStatus::NotBipartite,
    }
}

fn guarded(f: impl FnOnce() -> PcStatus) -> PcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(PcStatus::Panic, "panic inside the solver"))
}

/// Message of the last failed call on this thread. The pointer stays valid
/// until the next failing call on the same thread; it is never null.
#[no_mangle]
pub extern "C" fn pc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an instance in the weighted text format and validates it.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_parse(text: *const c_char, out: *mut *mut PcInstance) -> PcStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(PcStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(PcStatus::InvalidUtf8, "instance text is not UTF-8");
        };
        let parsed = match parse_wpvc(text, None) {
            Ok(p) => p,
            Err(e) => return fail(PcStatus::ParseError, e.to_string()),
        };
        if let Err(violations) = parsed.instance.validate() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return fail(PcStatus::InvalidInstance, msgs.join("; "));
        }
        *out = Box::into_raw(Box::new(PcInstance { instance: parsed.instance, labels: parsed.labels }));
        PcStatus::Ok
    })
}

/// # Safety
/// `inst` must come from [`pc_instance_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_free(inst: *mut PcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live instance handle or null.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_vertex_count(inst: *const PcInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.instance.graph.n())
}

/// # Safety
/// `inst` must be a live instance handle or null.
#[no_mangle]
pub unsafe extern "C" fn pc_instance_edge_count(inst: *const PcInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.instance.graph.m())
}

unsafe fn finish(inst: &PcInstance, report: SolveReport, out: *mut *mut PcReport) -> PcStatus {
    let handle = PcReport { report, graph: inst.instance.graph.clone(), labels: inst.labels.clone() };
    *out = Box::into_raw(Box::new(handle));
    PcStatus::Ok
}

/// Runs one algorithm. `degree` is the bound for
/// [`PcAlgorithm::BoundedDegree`]; 0 means the maximum degree of the graph.
/// [`PcAlgorithm::Oracle`] uses the default size cap.
///
/// # Safety
/// `inst` must be a live instance handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_solve(
    inst: *const PcInstance,
    alg: PcAlgorithm,
    degree: usize,
    out: *mut *mut PcReport,
) -> PcStatus {
    guarded(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(PcStatus::NullArgument, "null argument");
        };
        *out = ptr::null_mut();
        let i = &inst.instance;
        let result = match alg {
            PcAlgorithm::Epvcbd => solve_epvcbd(i),
            PcAlgorithm::BoundedDegree => {
                let d = if degree == 0 { i.graph.max_degree() } else { degree };
                solve_wpvc_bounded_degree(i, d)
            }
            PcAlgorithm::ByL => solve_wpvc_by_l(i),
            PcAlgorithm::Fractional => solve_wpvcbfd(i),
            PcAlgorithm::Oracle => {
                return match oracle_wpvc(i, DEFAULT_CAP) {
                    Ok(r) => finish(inst, r, out),
                    Err(e) => fail(oracle_status(&e), e.to_string()),
                };
            }
        };
        match result {
            Ok(r) => finish(inst, r, out),
            Err(e) => fail(solve_status(&e), e.to_string()),
        }
    })
}

/// Matching-constrained variant on the instance graph; the budget and
/// threshold in the file are ignored in favor of `k1` and `k2`.
///
/// # Safety
/// `inst` must be a live instance handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_solve_pvcbm(
    inst: *const PcInstance,
    k1: usize,
    k2: usize,
    k3: usize,
    out: *mut *mut PcReport,
) -> PcStatus {
    guarded(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(PcStatus::NullArgument, "null argument");
        };
        *out = ptr::null_mut();
        match solve_pvcbm(&inst.instance.graph, k1, k2, k3) {
            Ok(r) => finish(inst, r, out),
            Err(e) => fail(solve_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `report` must come from a solve call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_report_free(report: *mut PcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn pc_report_is_yes(report: *const PcReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.verdict.is_yes())
}

/// # Safety
/// `report` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn pc_report_nodes_expanded(report: *const PcReport) -> u64 {
    report.as_ref().map_or(0, |r| r.report.nodes_expanded)
}

/// # Safety
/// `report` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn pc_report_max_depth(report: *const PcReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.max_depth)
}

/// Number of integrally chosen vertices in the witness (0 on no).
///
/// # Safety
/// `report` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn pc_report_witness_len(report: *const PcReport) -> usize {
    report.as_ref().and_then(|r| r.report.witness.as_ref()).map_or(0, |w| w.integral.len())
}

/// Copies up to `cap` witness vertex ids (0-based, ascending) into `buf` and
/// returns how many were copied.
///
/// # Safety
/// `report` must be a live report handle and `buf` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn pc_report_witness(report: *const PcReport, buf: *mut usize, cap: usize) -> usize {
    let Some(w) = report.as_ref().and_then(|r| r.report.witness.as_ref()) else {
        return 0;
    };
    if buf.is_null() {
        return 0;
    }
    let mut n = 0;
    for (i, &v) in w.integral.iter().take(cap).enumerate() {
        *buf.add(i) = v;
        n += 1;
    }
    n
}

/// Renders the report as `key=value` lines, or as one JSON object when
/// `json` is set. Release the result with [`pc_string_free`]. Returns null
/// for a null report.
///
/// # Safety
/// `report` must be a live report handle or null.
#[no_mangle]
pub unsafe extern "C" fn pc_report_to_string(report: *const PcReport, json: bool) -> *mut c_char {
    let Some(r) = report.as_ref() else {
        return ptr::null_mut();
    };
    let text = if json {
        render_json(&r.report, &r.graph, Some(&r.labels))
    } else {
        render_text(&r.report, &r.graph, Some(&r.labels))
    };
    CString::new(text).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from [`pc_report_to_string`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
