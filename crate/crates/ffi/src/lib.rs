//! C ABI for `setfam`.
//!
//! Families and search results are opaque heap handles released with their
//! `_free` functions. Every fallible call returns a [`SetfamStatus`]; on
//! failure the message is available from [`setfam_last_error`] on the same
//! thread. Strings returned through out-parameters are owned by the caller
//! and released with [`setfam_string_free`]. Elements are 1-based, member
//! indices 0-based.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use libc::{c_char, size_t};

use setfam::bounds;
use setfam::constructions as cons;
use setfam::family::{
    parse_family, validate_family, write_family, Allowed, IntersectionConstraint, SetFamily,
    SubsetBits, ViolationKind,
};
use setfam::search::{self, SearchOptions, SearchResult, SearchStatus};
use setfam::Error;

/// Opaque family handle.
pub struct SetfamFamily(SetFamily);

/// Opaque search result handle.
pub struct SetfamSearchResult(SearchResult);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetfamStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Unsupported = 4,
    TooLarge = 5,
    /// The input does not satisfy the operation's hypothesis.
    Hypothesis = 6,
    /// A design or self-check failed.
    DesignFailed = 7,
    /// A buffer was too small; the required length was still reported.
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetfamAllowedKind {
    Interval = 0,
    Explicit = 1,
}

/// Admissibility rule. With `Interval` the allowed intersection sizes are
/// `lmin..=lmax`; with `Explicit` they are the `lset_len` values at `lset`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SetfamConstraint {
    pub kind: SetfamAllowedKind,
    pub lmin: size_t,
    pub lmax: size_t,
    pub lset: *const size_t,
    pub lset_len: size_t,
    pub size_min: size_t,
    pub size_max: size_t,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetfamViolationKind {
    None = 0,
    IntersectionSize = 1,
    MemberSize = 2,
    Duplicate = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetfamValidation {
    pub valid: bool,
    pub kind: SetfamViolationKind,
    pub i: size_t,
    pub j: size_t,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetfamTheorem {
    Ekr = 0,
    Rcw = 1,
    FranklWilson = 2,
    Snevily = 3,
    Thm15 = 4,
    Thm16 = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetfamSearchStatus {
    Exact = 0,
    BudgetExhausted = 1,
}

/// Search options. Zero budgets mean unlimited; `seed` may be null.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SetfamSearchOptions {
    pub symmetry_breaking: bool,
    pub parallel: bool,
    pub node_budget: u64,
    pub time_budget_ms: u64,
    pub seed: *const SetfamFamily,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SetfamStatus {
    match err {
        Error::Parse { .. } => SetfamStatus::Parse,
        Error::Unsupported(_) => SetfamStatus::Unsupported,
        Error::InstanceTooLarge { .. } => SetfamStatus::TooLarge,
        Error::Hypothesis(_) | Error::EmptyFamily => SetfamStatus::Hypothesis,
        Error::DesignFailed(_) => SetfamStatus::DesignFailed,
        _ => SetfamStatus::InvalidArgument,
    }
}

struct Failure(SetfamStatus, String);

type FfiResult<T> = Result<T, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null_err(what: &str) -> Failure {
    Failure(SetfamStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> SetfamStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SetfamStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SetfamStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null_err(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null_err("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_family(out: *mut *mut SetfamFamily, f: SetFamily) -> FfiResult<()> {
    write_out(out, Box::into_raw(Box::new(SetfamFamily(f))))
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|e| Failure(SetfamStatus::InvalidArgument, e.to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn slice<'a, T>(p: *const T, len: size_t, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null_err(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn setfam_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn setfam_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text family format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_family_parse(
    text: *const c_char,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| {
        if text.is_null() {
            return Err(null_err("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(SetfamStatus::Parse, e.to_string()))?;
        emit_family(out, parse_family(s)?)
    })
}

/// Builds a family from `count` members whose elements are stored back to
/// back in `elements`, member `i` having `lengths[i]` entries.
///
/// # Safety
/// `elements` and `lengths` must be readable for the implied lengths.
#[no_mangle]
pub unsafe extern "C" fn setfam_family_from_lists(
    n: size_t,
    elements: *const size_t,
    lengths: *const size_t,
    count: size_t,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| {
        let lengths = slice(lengths, count, "lengths")?;
        let total = lengths
            .iter()
            .try_fold(0usize, |acc, &l| acc.checked_add(l))
            .ok_or(Failure(
                SetfamStatus::InvalidArgument,
                "length overflow".into(),
            ))?;
        let elements = slice(elements, total, "elements")?;
        let mut members = Vec::with_capacity(count);
        let mut at = 0;
        for &len in lengths {
            members.push(SubsetBits::from_elements(
                n,
                elements[at..at + len].iter().copied(),
            )?);
            at += len;
        }
        emit_family(out, SetFamily::new(n, members)?)
    })
}

/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn setfam_family_free(f: *mut SetfamFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Ground size, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn setfam_family_n(f: *const SetfamFamily) -> size_t {
    f.as_ref().map_or(0, |f| f.0.n())
}

/// Member count, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn setfam_family_len(f: *const SetfamFamily) -> size_t {
    f.as_ref().map_or(0, |f| f.0.len())
}

/// Copies the elements of member `index` into `buf`. `out_len` receives the
/// member size even when `cap` is too small.
///
/// # Safety
/// `buf` must be writable for `cap` entries; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_family_member(
    f: *const SetfamFamily,
    index: size_t,
    buf: *mut size_t,
    cap: size_t,
    out_len: *mut size_t,
) -> SetfamStatus {
    guard(|| {
        let f = deref(f, "family")?;
        let m = f.0.members().get(index).ok_or_else(|| {
            Failure(
                SetfamStatus::InvalidArgument,
                format!("member index {index} out of range (len {})", f.0.len()),
            )
        })?;
        write_out(out_len, m.len())?;
        if m.len() > cap {
            return Err(Failure(
                SetfamStatus::BufferTooSmall,
                format!("member has {} elements, buffer holds {cap}", m.len()),
            ));
        }
        if buf.is_null() && !m.is_empty() {
            return Err(null_err("buf"));
        }
        for (k, e) in m.elements().enumerate() {
            buf.add(k).write(e);
        }
        Ok(())
    })
}

/// Renders the family in the text format.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_family_to_text(
    f: *const SetfamFamily,
    out: *mut *mut c_char,
) -> SetfamStatus {
    guard(|| emit_string(out, write_family(&deref(f, "family")?.0)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_projective_plane(
    q: u64,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| emit_family(out, cons::projective_plane(q)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_fano_complement(out: *mut *mut SetfamFamily) -> SetfamStatus {
    guard(|| emit_family(out, cons::fano_complement()))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_paley_biplane(out: *mut *mut SetfamFamily) -> SetfamStatus {
    guard(|| emit_family(out, cons::paley_biplane()))
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_residual(
    f: *const SetfamFamily,
    block: size_t,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| emit_family(out, cons::residual(&deref(f, "family")?.0, block)?))
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_steiner_augment(
    f: *const SetfamFamily,
    k: u64,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| emit_family(out, cons::steiner_augment(&deref(f, "family")?.0, k)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_d_construction(
    k: u64,
    d: u64,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| emit_family(out, cons::d_construction(k, d)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_all_k_subsets(
    n: size_t,
    k: size_t,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| emit_family(out, cons::all_k_subsets(n, k)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_star(
    n: size_t,
    s: size_t,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| emit_family(out, cons::star_family(n, s)?))
}

unsafe fn constraint(c: *const SetfamConstraint) -> FfiResult<IntersectionConstraint> {
    let c = deref(c, "constraint")?;
    let allowed = match c.kind {
        SetfamAllowedKind::Interval => Allowed::Interval {
            lmin: c.lmin,
            lmax: c.lmax,
        },
        SetfamAllowedKind::Explicit => {
            Allowed::Explicit(slice(c.lset, c.lset_len, "lset")?.iter().copied().collect())
        }
    };
    Ok(IntersectionConstraint::new(
        allowed, c.size_min, c.size_max,
    )?)
}

/// # Safety
/// `f` and `c` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_validate(
    f: *const SetfamFamily,
    c: *const SetfamConstraint,
    out: *mut SetfamValidation,
) -> SetfamStatus {
    guard(|| {
        let report = validate_family(&deref(f, "family")?.0, &constraint(c)?)?;
        let v = match report.first_violation {
            None => SetfamValidation {
                valid: true,
                kind: SetfamViolationKind::None,
                i: 0,
                j: 0,
            },
            Some(v) => SetfamValidation {
                valid: false,
                kind: match v.kind {
                    ViolationKind::IntersectionSize => SetfamViolationKind::IntersectionSize,
                    ViolationKind::MemberSize => SetfamViolationKind::MemberSize,
                    ViolationKind::Duplicate => SetfamViolationKind::Duplicate,
                },
                i: v.i,
                j: v.j,
            },
        };
        write_out(out, v)
    })
}

/// Whether every `t`-subset lies in exactly `lambda` members.
///
/// # Safety
/// `f` must be a live handle; `out_holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_verify_design(
    f: *const SetfamFamily,
    t: u64,
    lambda: u64,
    out_holds: *mut bool,
) -> SetfamStatus {
    guard(|| {
        let check = cons::verify_design(&deref(f, "family")?.0, t, lambda)?;
        write_out(out_holds, check.holds)
    })
}

/// Evaluates a bound and writes its JSON report. Parameters the theorem
/// does not take are ignored.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_bound_json(
    theorem: SetfamTheorem,
    n: u64,
    s: u64,
    k: u64,
    out_json: *mut *mut c_char,
) -> SetfamStatus {
    guard(|| {
        let report = match theorem {
            SetfamTheorem::Ekr => bounds::ekr_bound(n, s)?,
            SetfamTheorem::Rcw => bounds::rcw_bound(n, k)?,
            SetfamTheorem::FranklWilson => bounds::frankl_wilson_bound(n, k)?,
            SetfamTheorem::Snevily => bounds::snevily_bound(n, k)?,
            SetfamTheorem::Thm15 => bounds::thm15_bound(n, s, k)?,
            SetfamTheorem::Thm16 => bounds::thm16_bound(n, s, k)?,
        };
        let json = setfam::cli::render_bound(&report, true);
        emit_string(out_json, json.trim_end().to_string())
    })
}

/// Exact maximum admissible family on `[n]`.
///
/// # Safety
/// `c` must be valid; `options` may be null for defaults; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_max_family(
    n: size_t,
    c: *const SetfamConstraint,
    options: *const SetfamSearchOptions,
    out: *mut *mut SetfamSearchResult,
) -> SetfamStatus {
    guard(|| {
        let c = constraint(c)?;
        let mut opts = SearchOptions::default();
        if let Some(o) = options.as_ref() {
            opts.symmetry_breaking = o.symmetry_breaking;
            opts.parallel = o.parallel;
            opts.node_budget = (o.node_budget > 0).then_some(o.node_budget);
            opts.time_budget =
                (o.time_budget_ms > 0).then(|| Duration::from_millis(o.time_budget_ms));
            opts.lower_bound_seed = o.seed.as_ref().map(|s| s.0.clone());
        }
        let r = search::max_family(n, &c, &opts)?;
        write_out(out, Box::into_raw(Box::new(SetfamSearchResult(r))))
    })
}

/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn setfam_search_result_free(r: *mut SetfamSearchResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn setfam_search_result_max_size(r: *const SetfamSearchResult) -> size_t {
    r.as_ref().map_or(0, |r| r.0.max_size)
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn setfam_search_result_nodes(r: *const SetfamSearchResult) -> u64 {
    r.as_ref().map_or(0, |r| r.0.nodes_explored)
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn setfam_search_result_elapsed_ms(r: *const SetfamSearchResult) -> u64 {
    r.as_ref().map_or(0, |r| r.0.elapsed.as_millis() as u64)
}

/// Null handles report `BudgetExhausted`.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn setfam_search_result_status(
    r: *const SetfamSearchResult,
) -> SetfamSearchStatus {
    match r.as_ref().map(|r| r.0.status) {
        Some(SearchStatus::Exact) => SetfamSearchStatus::Exact,
        _ => SetfamSearchStatus::BudgetExhausted,
    }
}

/// Copies the witness family into a new handle.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_search_result_witness(
    r: *const SetfamSearchResult,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| emit_family(out, deref(r, "search result")?.0.witness.clone()))
}

/// Triple cover of an intersecting family with no common element and no
/// hitting pair; the triples are returned as a family sorted by mask.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn setfam_triple_cover(
    f: *const SetfamFamily,
    out: *mut *mut SetfamFamily,
) -> SetfamStatus {
    guard(|| emit_family(out, search::triple_cover(&deref(f, "family")?.0)?.triples))
}
