//! C ABI for the genset library: opaque handles, status codes, and
//! out-pointer results, so other languages can drive the family and graph
//! machinery without touching Rust types.
//!
//! Ownership rules: every `*_new`/`*_parse`/constructor output must be
//! released with the matching `*_free`; strings returned by the library are
//! released with `genset_string_free`. Passing NULL where a handle is
//! expected yields `GENSET_STATUS_NULL_POINTER`, never a crash. All
//! functions are `unsafe` in the Rust sense for the usual FFI reason:
//! pointers must be valid (or NULL) and strings NUL-terminated.

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr, CString};

use genset::error::Error;
use genset::kneser;
use genset::search;
use genset::setfam::{self, SetFamily};
use genset::stability;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GensetStatus {
    Ok = 0,
    InvalidArgument = 1,
    Capacity = 2,
    ParseError = 3,
    EmptyDomain = 4,
    NoGoodClique = 5,
    IoError = 6,
    NullPointer = 7,
}

fn status_of(err: &Error) -> GensetStatus {
    match err {
        Error::InvalidArgument(_) => GensetStatus::InvalidArgument,
        Error::Capacity(_) => GensetStatus::Capacity,
        Error::Parse { .. } => GensetStatus::ParseError,
        Error::EmptyFamily => GensetStatus::InvalidArgument,
        Error::EmptyDomain(_) => GensetStatus::EmptyDomain,
        Error::NoGoodClique { .. } => GensetStatus::NoGoodClique,
        Error::Io(_) => GensetStatus::IoError,
    }
}

/// Opaque set-family handle.
pub struct GensetFamily(SetFamily);

/// Opaque graph handle.
pub struct GensetGraph(kneser::Graph);

macro_rules! nonnull {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => return GensetStatus::NullPointer,
        }
    };
}

macro_rules! out_ptr {
    ($ptr:expr) => {
        match unsafe { $ptr.as_mut() } {
            Some(r) => r,
            None => return GensetStatus::NullPointer,
        }
    };
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

/// Library version as a static string; do not free.
#[no_mangle]
pub unsafe extern "C" fn genset_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string allocated by this library.
#[no_mangle]
pub unsafe extern "C" fn genset_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

// ---------------------------------------------------------------------------
// families
// ---------------------------------------------------------------------------

/// Builds the canonical k-generator of [n] (power sets of a balanced
/// partition, minus the empty set).
#[no_mangle]
pub unsafe extern "C" fn genset_canonical_family(
    n: u32,
    k: u32,
    out: *mut *mut GensetFamily,
) -> GensetStatus {
    let out = out_ptr!(out);
    match setfam::canonical_size(n, k) {
        Ok(size) if size > 2_000_000 => GensetStatus::Capacity,
        Err(e) => status_of(&e),
        Ok(_) => match setfam::balanced_partition(n, k) {
            Ok(partition) => {
                let fam = setfam::canonical_generator(&partition);
                *out = Box::into_raw(Box::new(GensetFamily(fam)));
                GensetStatus::Ok
            }
            Err(e) => status_of(&e),
        },
    }
}

/// Parses the family text format (`n=<int>` header, one member per line).
#[no_mangle]
pub unsafe extern "C" fn genset_family_parse(
    text: *const c_char,
    out: *mut *mut GensetFamily,
) -> GensetStatus {
    let out = out_ptr!(out);
    let Some(text) = (unsafe { cstr(text) }) else {
        return GensetStatus::NullPointer;
    };
    match SetFamily::parse_str(text) {
        Ok(fam) => {
            *out = Box::into_raw(Box::new(GensetFamily(fam)));
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Reads a family file in the text format.
#[no_mangle]
pub unsafe extern "C" fn genset_family_from_file(
    path: *const c_char,
    out: *mut *mut GensetFamily,
) -> GensetStatus {
    let out = out_ptr!(out);
    let Some(path) = (unsafe { cstr(path) }) else {
        return GensetStatus::NullPointer;
    };
    match SetFamily::read_file(std::path::Path::new(path)) {
        Ok(fam) => {
            *out = Box::into_raw(Box::new(GensetFamily(fam)));
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn genset_family_free(f: *mut GensetFamily) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Number of members; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn genset_family_len(f: *const GensetFamily) -> u64 {
    unsafe { f.as_ref() }.map_or(0, |f| f.0.len() as u64)
}

/// Ground-set size; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn genset_family_ground_n(f: *const GensetFamily) -> u32 {
    unsafe { f.as_ref() }.map_or(0, |f| f.0.ground_n())
}

/// Serializes the family to its text format; free with genset_string_free.
#[no_mangle]
pub unsafe extern "C" fn genset_family_to_text(
    f: *const GensetFamily,
    out: *mut *mut c_char,
) -> GensetStatus {
    let out = out_ptr!(out);
    let fam = nonnull!(f);
    match CString::new(fam.0.to_text()) {
        Ok(s) => {
            *out = s.into_raw();
            GensetStatus::Ok
        }
        Err(_) => GensetStatus::InvalidArgument,
    }
}

/// True iff every subset of the ground set is a disjoint union of at most
/// k members.
#[no_mangle]
pub unsafe extern "C" fn genset_family_is_k_generator(
    f: *const GensetFamily,
    k: u32,
    out: *mut bool,
) -> GensetStatus {
    let out = out_ptr!(out);
    let fam = nonnull!(f);
    match setfam::is_k_generator(&fam.0, k as usize) {
        Ok(v) => {
            *out = v;
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Same with overlapping unions allowed.
#[no_mangle]
pub unsafe extern "C" fn genset_family_is_k_base(
    f: *const GensetFamily,
    k: u32,
    out: *mut bool,
) -> GensetStatus {
    let out = out_ptr!(out);
    let fam = nonnull!(f);
    match setfam::is_k_base(&fam.0, k as usize) {
        Ok(v) => {
            *out = v;
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The size (k+r)·2^q − k of the canonical k-generator, n = qk + r.
#[no_mangle]
pub unsafe extern "C" fn genset_canonical_size(n: u32, k: u32, out: *mut u64) -> GensetStatus {
    let out = out_ptr!(out);
    match setfam::canonical_size(n, k) {
        Ok(v) => {
            *out = v;
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Smallest m with sum_{i<=k} C(m,i) >= 2^n.
#[no_mangle]
pub unsafe extern "C" fn genset_counting_lower_bound(n: u32, k: u32, out: *mut u64) -> GensetStatus {
    let out = out_ptr!(out);
    if !(1 <= k && k <= n && n <= setfam::MAX_GROUND_N) {
        return GensetStatus::InvalidArgument;
    }
    *out = setfam::counting_lower_bound(n, k);
    GensetStatus::Ok
}

/// The closed-form c0·k·2^{n/k} upper bound for the canonical size.
#[no_mangle]
pub unsafe extern "C" fn genset_crude_upper_bound(n: u32, k: u32, out: *mut f64) -> GensetStatus {
    let out = out_ptr!(out);
    if !(1 <= k && k <= n) {
        return GensetStatus::InvalidArgument;
    }
    *out = setfam::crude_upper_bound(n, k);
    GensetStatus::Ok
}

// ---------------------------------------------------------------------------
// graphs
// ---------------------------------------------------------------------------

/// Disjointness graph of the family: members are vertices in sorted order,
/// joined when their masks are disjoint.
#[no_mangle]
pub unsafe extern "C" fn genset_disjointness_graph(
    f: *const GensetFamily,
    out: *mut *mut GensetGraph,
) -> GensetStatus {
    let out = out_ptr!(out);
    let fam = nonnull!(f);
    match kneser::disjointness_graph(&fam.0) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(GensetGraph(g)));
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn genset_graph_free(g: *mut GensetGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

#[no_mangle]
pub unsafe extern "C" fn genset_graph_order(g: *const GensetGraph) -> u64 {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.order() as u64)
}

#[no_mangle]
pub unsafe extern "C" fn genset_graph_edge_count(g: *const GensetGraph) -> u64 {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.edge_count())
}

/// Exact number of r-cliques; Capacity if the count overflows u64.
#[no_mangle]
pub unsafe extern "C" fn genset_graph_clique_count(
    g: *const GensetGraph,
    r: u32,
    out: *mut u64,
) -> GensetStatus {
    let out = out_ptr!(out);
    let g = nonnull!(g);
    match u64::try_from(kneser::clique_count(&g.0, r as usize)) {
        Ok(v) => {
            *out = v;
            GensetStatus::Ok
        }
        Err(_) => GensetStatus::Capacity,
    }
}

/// Exact chromatic number (order <= 30).
#[no_mangle]
pub unsafe extern "C" fn genset_graph_chromatic_number(
    g: *const GensetGraph,
    out: *mut u32,
) -> GensetStatus {
    let out = out_ptr!(out);
    let g = nonnull!(g);
    match kneser::chromatic_number(&g.0) {
        Ok(v) => {
            *out = v;
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Edges to delete to make the graph bipartite (order <= 24).
#[no_mangle]
pub unsafe extern "C" fn genset_graph_bipartization_distance(
    g: *const GensetGraph,
    out: *mut u64,
) -> GensetStatus {
    let out = out_ptr!(out);
    let g = nonnull!(g);
    match stability::bipartization_distance_exact(&g.0) {
        Ok(v) => {
            *out = v;
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Minimum intra-class edges over k-partitions (order <= 16 for k >= 3).
#[no_mangle]
pub unsafe extern "C" fn genset_graph_kpartization_distance(
    g: *const GensetGraph,
    k: u32,
    out: *mut u64,
) -> GensetStatus {
    let out = out_ptr!(out);
    let g = nonnull!(g);
    match stability::kpartization_distance_exact(&g.0, k as usize) {
        Ok(v) => {
            *out = v;
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

/// Exact minimum k-generator (or k-base with `base` set) size. `max_nodes`
/// of 0 means unlimited; `out_complete` reports whether the search finished
/// (when false, `out_min` is the best upper bound found).
#[no_mangle]
pub unsafe extern "C" fn genset_min_generator_size(
    n: u32,
    k: u32,
    base: bool,
    max_nodes: u64,
    out_min: *mut u64,
    out_complete: *mut bool,
) -> GensetStatus {
    let out_min = out_ptr!(out_min);
    let out_complete = out_ptr!(out_complete);
    let mode = if base {
        search::SearchMode::Base
    } else {
        search::SearchMode::Generator
    };
    let budget = search::Budget {
        max_nodes: if max_nodes == 0 { None } else { Some(max_nodes) },
        ..search::Budget::default()
    };
    match search::min_generator_size(n, k, mode, false, &budget) {
        Ok(result) => {
            *out_min = result.min_size;
            *out_complete = result.status == search::SearchStatus::Complete;
            GensetStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
