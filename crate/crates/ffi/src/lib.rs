//! C ABI over the `dfvs` solver.
//!
//! Instances, solutions, and cancellation tokens are opaque heap handles that
//! the caller releases with the matching `*_free` function. Every fallible call
//! returns a [`DfvsStatus`]; results come back through out-pointers. Vertex ids
//! crossing the boundary are 1-based, as in the PACE format.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Duration;

use dfvs::oracle::{exact_min_dfvs_instance, is_valid_dfvs};
use dfvs::pace::parse_instance;
use dfvs::{solve, Instance, SolverConfig, VertexId};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfvsStatus {
    Ok = 0,
    NullPointer = 1,
    ParseError = 2,
    InvalidArgument = 3,
    TooLarge = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Solver settings. `time_limit_secs <= 0` disables the wall-clock limit and
/// `max_iterations < 0` disables the iteration cap; with both disabled the
/// search runs until its cancellation token fires.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DfvsConfig {
    pub seed: u64,
    pub time_limit_secs: f64,
    pub max_iterations: i64,
    pub trigger_fraction: f64,
    pub restore_fraction: f64,
    pub degree_bound: u32,
}

impl Default for DfvsConfig {
    fn default() -> Self {
        let d = SolverConfig::default();
        DfvsConfig {
            seed: d.seed,
            time_limit_secs: d.time_limit.map_or(0.0, |t| t.as_secs_f64()),
            max_iterations: -1,
            trigger_fraction: d.trigger_fraction,
            restore_fraction: d.restore_fraction,
            degree_bound: d.degree_bound as u32,
        }
    }
}

impl DfvsConfig {
    fn to_solver(self) -> Option<SolverConfig> {
        let time_limit = if self.time_limit_secs.is_finite() && self.time_limit_secs > 0.0 {
            Some(Duration::from_secs_f64(self.time_limit_secs))
        } else {
            None
        };
        let config = SolverConfig {
            seed: self.seed,
            time_limit,
            max_iterations: u64::try_from(self.max_iterations).ok(),
            trigger_fraction: self.trigger_fraction,
            restore_fraction: self.restore_fraction,
            degree_bound: self.degree_bound as usize,
            ..SolverConfig::default()
        };
        config.validate().ok().map(|_| config)
    }
}

/// Opaque parsed instance.
pub struct DfvsInstance(Instance);

/// Opaque solution: ascending 1-based vertex ids.
pub struct DfvsSolution(Vec<u32>);

/// Opaque cancellation flag, safe to fire from any thread.
pub struct DfvsCancelToken(Arc<AtomicBool>);

fn guard<F: FnOnce() -> DfvsStatus>(f: F) -> DfvsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DfvsStatus::Panic)
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn dfvs_status_message(status: DfvsStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        DfvsStatus::Ok => c"ok",
        DfvsStatus::NullPointer => c"null pointer argument",
        DfvsStatus::ParseError => c"instance text could not be parsed",
        DfvsStatus::InvalidArgument => c"invalid argument",
        DfvsStatus::TooLarge => c"instance too large for the exact solver",
        DfvsStatus::BufferTooSmall => c"output buffer too small",
        DfvsStatus::Panic => c"internal error",
    };
    msg.as_ptr()
}

/// # Safety
/// `out` must be null or point to writable memory for one `DfvsConfig`.
#[no_mangle]
pub unsafe extern "C" fn dfvs_config_default(out: *mut DfvsConfig) -> DfvsStatus {
    if out.is_null() {
        return DfvsStatus::NullPointer;
    }
    out.write(DfvsConfig::default());
    DfvsStatus::Ok
}

/// Parses PACE-format text of `len` bytes.
///
/// # Safety
/// `text` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dfvs_instance_parse(
    text: *const u8,
    len: usize,
    out: *mut *mut DfvsInstance,
) -> DfvsStatus {
    if text.is_null() || out.is_null() {
        return DfvsStatus::NullPointer;
    }
    guard(|| {
        let bytes = slice::from_raw_parts(text, len);
        let Ok(s) = std::str::from_utf8(bytes) else {
            return DfvsStatus::ParseError;
        };
        match parse_instance(s) {
            Ok(inst) => {
                out.write(Box::into_raw(Box::new(DfvsInstance(inst))));
                DfvsStatus::Ok
            }
            Err(_) => DfvsStatus::ParseError,
        }
    })
}

/// Builds an instance over vertices `1..=n` from `m` arcs `tails[i] -> heads[i]`.
///
/// # Safety
/// `tails` and `heads` must each point to `m` readable `uint32_t` values
/// (either may be null when `m == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dfvs_instance_from_arcs(
    n: u32,
    tails: *const u32,
    heads: *const u32,
    m: usize,
    out: *mut *mut DfvsInstance,
) -> DfvsStatus {
    if out.is_null() || (m > 0 && (tails.is_null() || heads.is_null())) {
        return DfvsStatus::NullPointer;
    }
    guard(|| {
        let (t, h) = if m == 0 {
            (&[][..], &[][..])
        } else {
            (
                slice::from_raw_parts(tails, m),
                slice::from_raw_parts(heads, m),
            )
        };
        let in_range = |x: u32| x >= 1 && x <= n;
        if !t.iter().chain(h).all(|&x| in_range(x)) {
            return DfvsStatus::InvalidArgument;
        }
        let arcs = t
            .iter()
            .zip(h)
            .map(|(&u, &v)| (VertexId::from_external(u), VertexId::from_external(v)));
        let inst = Instance::from_arcs(n as usize, arcs);
        out.write(Box::into_raw(Box::new(DfvsInstance(inst))));
        DfvsStatus::Ok
    })
}

/// # Safety
/// `inst` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dfvs_instance_free(inst: *mut DfvsInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dfvs_instance_vertex_count(inst: *const DfvsInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.vertex_count())
}

/// Number of distinct arcs, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dfvs_instance_edge_count(inst: *const DfvsInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.edge_count())
}

#[no_mangle]
pub extern "C" fn dfvs_cancel_token_new() -> *mut DfvsCancelToken {
    Box::into_raw(Box::new(DfvsCancelToken(Arc::new(AtomicBool::new(false)))))
}

/// Asks every solve using this token to stop and return its best solution.
///
/// # Safety
/// `token` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dfvs_cancel_token_cancel(token: *const DfvsCancelToken) {
    if let Some(t) = token.as_ref() {
        t.0.store(true, Ordering::Relaxed);
    }
}

/// # Safety
/// `token` must be null or a handle not yet freed, and no solve may still be
/// running with it.
#[no_mangle]
pub unsafe extern "C" fn dfvs_cancel_token_free(token: *mut DfvsCancelToken) {
    if !token.is_null() {
        drop(Box::from_raw(token));
    }
}

/// Runs the heuristic solver. `config` and `token` may be null (defaults, no
/// cancellation).
///
/// # Safety
/// `inst` must be a live instance handle, `config` and `token` null or valid,
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfvs_solve(
    inst: *const DfvsInstance,
    config: *const DfvsConfig,
    token: *const DfvsCancelToken,
    out: *mut *mut DfvsSolution,
) -> DfvsStatus {
    let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
        return DfvsStatus::NullPointer;
    };
    let cfg = config.as_ref().copied().unwrap_or_default();
    let Some(cfg) = cfg.to_solver() else {
        return DfvsStatus::InvalidArgument;
    };
    let cancel = token.as_ref().map(|t| Arc::clone(&t.0));
    guard(|| {
        let outcome = solve(&inst.0, &cfg, cancel.as_deref());
        let ids = outcome
            .best
            .vertices()
            .iter()
            .map(|v| v.external())
            .collect();
        out.write(Box::into_raw(Box::new(DfvsSolution(ids))));
        DfvsStatus::Ok
    })
}

/// Exhaustive minimum solution; refuses instances above 20 vertices.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dfvs_exact_min(
    inst: *const DfvsInstance,
    out: *mut *mut DfvsSolution,
) -> DfvsStatus {
    let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
        return DfvsStatus::NullPointer;
    };
    guard(|| match exact_min_dfvs_instance(&inst.0) {
        Ok(vs) => {
            let ids = vs.iter().map(|v| v.external()).collect();
            out.write(Box::into_raw(Box::new(DfvsSolution(ids))));
            DfvsStatus::Ok
        }
        Err(_) => DfvsStatus::TooLarge,
    })
}

/// Whether removing the `len` given vertices leaves the instance acyclic.
///
/// # Safety
/// `inst` must be a live handle, `ids` must point to `len` readable values
/// (may be null when `len == 0`), and `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dfvs_is_valid(
    inst: *const DfvsInstance,
    ids: *const u32,
    len: usize,
    valid: *mut bool,
) -> DfvsStatus {
    let Some(inst) = inst.as_ref() else {
        return DfvsStatus::NullPointer;
    };
    if valid.is_null() || (len > 0 && ids.is_null()) {
        return DfvsStatus::NullPointer;
    }
    guard(|| {
        let ids = if len == 0 {
            &[][..]
        } else {
            slice::from_raw_parts(ids, len)
        };
        let n = inst.0.vertex_count();
        if !ids.iter().all(|&x| x >= 1 && x as usize <= n) {
            return DfvsStatus::InvalidArgument;
        }
        let set: Vec<VertexId> = ids.iter().map(|&x| VertexId::from_external(x)).collect();
        valid.write(is_valid_dfvs(&inst.0, &set));
        DfvsStatus::Ok
    })
}

/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dfvs_solution_len(sol: *const DfvsSolution) -> usize {
    sol.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the ascending vertex ids into `buf`, which holds `cap` values.
///
/// # Safety
/// `sol` must be a live handle and `buf` must point to `cap` writable values
/// (may be null when the solution is empty).
#[no_mangle]
pub unsafe extern "C" fn dfvs_solution_copy(
    sol: *const DfvsSolution,
    buf: *mut u32,
    cap: usize,
) -> DfvsStatus {
    let Some(sol) = sol.as_ref() else {
        return DfvsStatus::NullPointer;
    };
    if sol.0.len() > cap {
        return DfvsStatus::BufferTooSmall;
    }
    if sol.0.is_empty() {
        return DfvsStatus::Ok;
    }
    if buf.is_null() {
        return DfvsStatus::NullPointer;
    }
    ptr::copy_nonoverlapping(sol.0.as_ptr(), buf, sol.0.len());
    DfvsStatus::Ok
}

/// # Safety
/// `sol` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dfvs_solution_free(sol: *mut DfvsSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}
