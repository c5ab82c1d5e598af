//! C interface over the core library: opaque root-system handles, status
//! codes, and JSON-string results so any language with a C FFI can drive
//! construction, verification, search and the abelian statistics.
//!
//! Conventions: functions return `McStatus`; output strings are UTF-8,
//! NUL-terminated, allocated by this library and released with
//! [`mc_string_free`]; a failing call stores a message retrievable with
//! [`mc_last_error`] (thread local, valid until the next failing call on
//! the same thread).

use libc::c_char;
use mc_core::completeness::{Family, Provenance};
use mc_core::coxeter::{element_from_word, parse_word_file};
use mc_core::families::{paper_family, PaperFamilyId};
use mc_core::report;
use mc_core::roots::{build_root_system, RootSystem, TypeId};
use mc_core::search::{search_mc, SearchConfig, SearchStatus};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;
use std::sync::Arc;
use std::time::Duration;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum McStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidType = 3,
    InvalidArgument = 4,
    Unsupported = 5,
    VerificationFailed = 6,
    BudgetExhausted = 7,
    InternalError = 8,
}

/// Opaque handle to an immutable root system.
pub struct McRootSystem {
    rs: Arc<RootSystem>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: McStatus, msg: impl Into<String>) -> McStatus {
    set_error(msg.into());
    status
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |c| c.as_ptr())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn mc_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Releases a string returned by this library. NULL is accepted.
///
/// # Safety
/// `s` must have been returned by a function of this library and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, McStatus> {
    if p.is_null() {
        return Err(fail(McStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(McStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn emit_json(value: &serde_json::Value, out: *mut *mut c_char) -> McStatus {
    let text = match serde_json::to_string_pretty(value) {
        Ok(t) => t,
        Err(e) => return fail(McStatus::InternalError, format!("serialize: {e}")),
    };
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            McStatus::Ok
        }
        Err(_) => fail(McStatus::InternalError, "embedded NUL in JSON"),
    }
}

/// Builds the root system named by `type_spec` ("A5", "B3", "I2:7", "H4").
///
/// # Safety
/// `type_spec` must point to a NUL-terminated string and `out` to a valid
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn mc_root_system_new(
    type_spec: *const c_char,
    out: *mut *mut McRootSystem,
) -> McStatus {
    if out.is_null() {
        return fail(McStatus::NullArgument, "null output pointer");
    }
    let spec = match read_str(type_spec) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let t = match TypeId::parse(spec) {
        Ok(t) => t,
        Err(e) => return fail(McStatus::InvalidType, e.to_string()),
    };
    match build_root_system(t) {
        Ok(rs) => {
            *out = Box::into_raw(Box::new(McRootSystem { rs }));
            McStatus::Ok
        }
        Err(e) => fail(McStatus::InternalError, e.to_string()),
    }
}

/// Releases a root-system handle. NULL is accepted.
///
/// # Safety
/// `h` must have come from [`mc_root_system_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mc_root_system_free(h: *mut McRootSystem) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

unsafe fn handle<'a>(h: *const McRootSystem) -> Result<&'a Arc<RootSystem>, McStatus> {
    if h.is_null() {
        return Err(fail(McStatus::NullArgument, "null root system handle"));
    }
    Ok(&(*h).rs)
}

/// Rank of the system, or -1 on a null handle.
///
/// # Safety
/// `h` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn mc_root_system_rank(h: *const McRootSystem) -> i32 {
    match handle(h) {
        Ok(rs) => rs.rank() as i32,
        Err(_) => -1,
    }
}

/// Number of positive roots, or -1 on a null handle.
///
/// # Safety
/// `h` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn mc_root_system_positive_count(h: *const McRootSystem) -> i32 {
    match handle(h) {
        Ok(rs) => rs.n_positive() as i32,
        Err(_) => -1,
    }
}

/// Indexed positive roots with exact coordinates, as JSON.
///
/// # Safety
/// `h` must be a live handle; `out_json` a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn mc_roots_json(
    h: *const McRootSystem,
    out_json: *mut *mut c_char,
) -> McStatus {
    let rs = match handle(h) {
        Ok(rs) => rs,
        Err(st) => return st,
    };
    if out_json.is_null() {
        return fail(McStatus::NullArgument, "null output pointer");
    }
    emit_json(&report::roots_json(rs), out_json)
}

fn verify_common(
    rs: &RootSystem,
    family: Family,
    non_reduced: Vec<usize>,
    label: &str,
    out_json: *mut *mut c_char,
) -> McStatus {
    let outcome = report::verify_family(rs, &family, non_reduced);
    let doc = report::verify_json(rs, label, &outcome);
    let st = emit_json(&doc, out_json);
    if st != McStatus::Ok {
        return st;
    }
    if outcome.failed() {
        fail(McStatus::VerificationFailed, "family failed verification")
    } else {
        McStatus::Ok
    }
}

/// Verifies the family described by a word-list text (whitespace-separated
/// 1-based generators, one word per line, `#` comments). The JSON verdict
/// is produced even when verification fails (status `VerificationFailed`).
///
/// # Safety
/// `h` must be a live handle; `words_text` a NUL-terminated string;
/// `out_json` a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn mc_verify_words(
    h: *const McRootSystem,
    words_text: *const c_char,
    out_json: *mut *mut c_char,
) -> McStatus {
    let rs = match handle(h) {
        Ok(rs) => rs,
        Err(st) => return st,
    };
    let text = match read_str(words_text) {
        Ok(s) => s,
        Err(st) => return st,
    };
    if out_json.is_null() {
        return fail(McStatus::NullArgument, "null output pointer");
    }
    let words = match parse_word_file(text) {
        Ok(w) => w,
        Err(e) => return fail(McStatus::InvalidArgument, e.to_string()),
    };
    let mut members = Vec::with_capacity(words.len());
    let mut non_reduced = Vec::new();
    for (i, w) in words.iter().enumerate() {
        match element_from_word(rs, w) {
            Ok(g) => {
                if g.length() != w.len() {
                    non_reduced.push(i);
                }
                members.push(g);
            }
            Err(e) => return fail(McStatus::InvalidArgument, e.to_string()),
        }
    }
    let family = match Family::new(members, Provenance::Embedded) {
        Ok(f) => f,
        Err(e) => return fail(McStatus::InvalidArgument, e.to_string()),
    };
    verify_common(rs, family, non_reduced, "words", out_json)
}

/// Verifies the type's published family (constructed or embedded).
///
/// # Safety
/// `h` must be a live handle; `out_json` a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn mc_verify_paper_family(
    h: *const McRootSystem,
    out_json: *mut *mut c_char,
) -> McStatus {
    let rs = match handle(h) {
        Ok(rs) => rs,
        Err(st) => return st,
    };
    if out_json.is_null() {
        return fail(McStatus::NullArgument, "null output pointer");
    }
    let id = match PaperFamilyId::for_type(rs.type_id(), None) {
        Ok(id) => id,
        Err(e) => return fail(McStatus::Unsupported, e.to_string()),
    };
    let pf = match paper_family(rs, id) {
        Ok(pf) => pf,
        Err(e) => return fail(McStatus::InternalError, e.to_string()),
    };
    verify_common(rs, pf.family, pf.non_reduced, "paper", out_json)
}

/// Exhaustive MC search; see the JSON for value, status and witness.
/// `k_max == 0` uses the type's hard cap, `time_budget_ms == 0` means no
/// time limit, `threads == 0` uses all cores. Returns `BudgetExhausted`
/// when the scan was truncated (the JSON still carries the best witness).
///
/// # Safety
/// `h` must be a live handle; `out_json` a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn mc_search(
    h: *const McRootSystem,
    k_min: u32,
    k_max: u32,
    node_budget: u64,
    time_budget_ms: u64,
    threads: u32,
    use_pruning: bool,
    out_json: *mut *mut c_char,
) -> McStatus {
    let rs = match handle(h) {
        Ok(rs) => rs,
        Err(st) => return st,
    };
    if out_json.is_null() {
        return fail(McStatus::NullArgument, "null output pointer");
    }
    let cfg = SearchConfig {
        k_min: k_min.max(1) as usize,
        k_max: (k_max > 0).then_some(k_max as usize),
        node_budget: if node_budget == 0 {
            u64::MAX
        } else {
            node_budget
        },
        time_budget: (time_budget_ms > 0).then(|| Duration::from_millis(time_budget_ms)),
        threads: threads as usize,
        use_conditions_pruning: use_pruning,
        ..SearchConfig::default()
    };
    let res = search_mc(rs, &cfg);
    let st = emit_json(&report::search_json(rs, &res), out_json);
    if st != McStatus::Ok {
        return st;
    }
    match res.status {
        SearchStatus::BudgetExhausted => {
            fail(McStatus::BudgetExhausted, "search budget exhausted")
        }
        _ => McStatus::Ok,
    }
}

/// Maximum strongly abelian subset; `time_budget_ms == 0` means no limit.
///
/// # Safety
/// `h` must be a live handle; `out_json` a valid pointer slot.
#[no_mangle]
pub unsafe extern "C" fn mc_max_strongly_abelian(
    h: *const McRootSystem,
    time_budget_ms: u64,
    out_json: *mut *mut c_char,
) -> McStatus {
    let rs = match handle(h) {
        Ok(rs) => rs,
        Err(st) => return st,
    };
    if out_json.is_null() {
        return fail(McStatus::NullArgument, "null output pointer");
    }
    let res = mc_core::abelian::max_strongly_abelian(
        rs,
        (time_budget_ms > 0).then(|| Duration::from_millis(time_budget_ms)),
    );
    let st = emit_json(&report::max_abelian_json(rs, &res), out_json);
    if st != McStatus::Ok {
        return st;
    }
    match res.status {
        SearchStatus::Exact => McStatus::Ok,
        _ => fail(McStatus::BudgetExhausted, "clique search timed out"),
    }
}
