//! C interface to `cayley-embed`.
//!
//! Squares and groups are opaque handles, created by `ce_pls_parse`,
//! `ce_group_from_spec` or `ce_group_from_table` and released with
//! `ce_pls_free` or `ce_group_free`. Every fallible call
//! returns a [`CeStatus`]; on failure `ce_last_error()` describes the problem
//! until the next call on the same thread. Strings returned through `char **`
//! out-parameters are owned by the caller and released with `ce_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cayley_embed::embed::{count_embeddings, embed_diagonal_partition, embeds_in_class};
use cayley_embed::group::{Group, GroupSpec};
use cayley_embed::pls::{canonical_form, parse_pls, Pls};
use cayley_embed::screening::{psi, psi_with, PsiOptions, ScreeningError, Variant};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CeStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// A square, group table or group spec failed to parse or validate.
    ParseError = 3,
    /// Arguments are well formed but out of range for the operation.
    InvalidArgument = 4,
    /// No complete group class is known for the requested order.
    IncompleteClass = 5,
    /// An internal error; the library caught a panic.
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CeVariant {
    Group = 0,
    Abelian = 1,
    Cyclic = 2,
}

impl From<CeVariant> for Variant {
    fn from(v: CeVariant) -> Variant {
        match v {
            CeVariant::Group => Variant::Group,
            CeVariant::Abelian => Variant::Abelian,
            CeVariant::Cyclic => Variant::Cyclic,
        }
    }
}

/// A partial latin square.
pub struct CePls(Pls);

/// A finite group.
pub struct CeGroup(Group);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

type Fallible<T> = Result<T, (CeStatus, String)>;

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(body: impl FnOnce() -> Fallible<()>) -> CeStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CeStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            CeStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Fallible<&'a str> {
    if s.is_null() {
        return Err((CeStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (CeStatus::InvalidUtf8, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Fallible<&'a T> {
    p.as_ref().ok_or_else(|| (CeStatus::NullArgument, format!("null {what}")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Fallible<()> {
    if out.is_null() {
        return Err((CeStatus::NullArgument, "null out-parameter".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// The message for the last failed call on this thread, or `""`. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ce_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The library version as a static string.
#[no_mangle]
pub extern "C" fn ce_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ce_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a square in triple-list (`r c s`, 1-based) or grid format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_pls_parse(text: *const c_char, out: *mut *mut CePls) -> CeStatus {
    guard(|| {
        let p = parse_pls(read_str(text)?).map_err(|e| (CeStatus::ParseError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(CePls(p))))
    })
}

/// # Safety
/// `p` must come from `ce_pls_parse` and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ce_pls_free(p: *mut CePls) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of filled cells, or 0 for null.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ce_pls_size(p: *const CePls) -> usize {
    p.as_ref().map_or(0, |p| p.0.size())
}

/// The species key as a hex string.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_pls_species_key(p: *const CePls, out: *mut *mut c_char) -> CeStatus {
    guard(|| {
        let p = deref(p, "square")?;
        put(out, owned_string(canonical_form(&p.0).to_hex()))
    })
}

/// Builds a group from a spec string such as `cyclic:12` or `dihedral:3`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_group_from_spec(spec: *const c_char, out: *mut *mut CeGroup) -> CeStatus {
    guard(|| {
        let spec: GroupSpec = read_str(spec)?.parse().map_err(|e: cayley_embed::group::GroupError| {
            (CeStatus::ParseError, e.to_string())
        })?;
        let g = spec.build().map_err(|e| (CeStatus::InvalidArgument, e.to_string()))?;
        put(out, Box::into_raw(Box::new(CeGroup(g))))
    })
}

/// Builds a group from an `n x n` row-major Cayley table with entries in
/// `0..n`.
///
/// # Safety
/// `table` must point to `n * n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_group_from_table(n: usize, table: *const u32, out: *mut *mut CeGroup) -> CeStatus {
    guard(|| {
        if table.is_null() {
            return Err((CeStatus::NullArgument, "null table".into()));
        }
        if n == 0 {
            return Err((CeStatus::InvalidArgument, "order must be positive".into()));
        }
        let flat = std::slice::from_raw_parts(table, n * n);
        let rows: Vec<Vec<usize>> = flat.chunks(n).map(|r| r.iter().map(|&x| x as usize).collect()).collect();
        let g = Group::from_table(&rows).map_err(|e| (CeStatus::ParseError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(CeGroup(g))))
    })
}

/// # Safety
/// `g` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ce_group_free(g: *mut CeGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Group order, or 0 for null.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ce_group_order(g: *const CeGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Decides whether `p` embeds in `g`. When `verdict_json` is non-null it
/// receives the verdict as JSON, with the witness or the obstruction.
///
/// # Safety
/// Handles must be live; `embeddable` must be writable; `verdict_json` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn ce_embed(
    p: *const CePls,
    g: *const CeGroup,
    embeddable: *mut bool,
    verdict_json: *mut *mut c_char,
) -> CeStatus {
    guard(|| {
        let (p, g) = (deref(p, "square")?, deref(g, "group")?);
        let verdict = embeds_in_class(&p.0, std::slice::from_ref(&g.0)).verdicts.remove(0).verdict;
        put(embeddable, verdict.is_embeddable())?;
        if !verdict_json.is_null() {
            verdict_json.write(owned_string(serde_json::to_string(&verdict).expect("serializable")));
        }
        Ok(())
    })
}

/// The exact number of embeddings of `p` in `g`.
///
/// # Safety
/// Handles must be live; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ce_count_embeddings(p: *const CePls, g: *const CeGroup, count: *mut u64) -> CeStatus {
    guard(|| {
        let (p, g) = (deref(p, "square")?, deref(g, "group")?);
        put(count, count_embeddings(&p.0, &g.0, None))
    })
}

/// Searches for a permutation `pi` of `g` whose products `x pi(x)` take the
/// multiplicities `parts[0..n_parts]`. On success `found` is set and, if
/// found, `pi_out` (room for `|g|` entries, may be null) receives `pi`.
///
/// # Safety
/// `g` must be live; `parts` must hold `n_parts` values; `found` must be
/// writable; `pi_out` must be null or hold `|g|` writable values.
#[no_mangle]
pub unsafe extern "C" fn ce_diagonal_partition(
    g: *const CeGroup,
    parts: *const usize,
    n_parts: usize,
    found: *mut bool,
    pi_out: *mut usize,
) -> CeStatus {
    guard(|| {
        let g = deref(g, "group")?;
        if parts.is_null() {
            return Err((CeStatus::NullArgument, "null parts".into()));
        }
        let parts = std::slice::from_raw_parts(parts, n_parts);
        let pi = embed_diagonal_partition(&g.0, parts).map_err(|e| (CeStatus::InvalidArgument, e.to_string()))?;
        put(found, pi.is_some())?;
        if let (Some(pi), false) = (pi, pi_out.is_null()) {
            std::slice::from_raw_parts_mut(pi_out, pi.len()).copy_from_slice(&pi);
        }
        Ok(())
    })
}

fn psi_status(e: ScreeningError) -> (CeStatus, String) {
    let status = match e {
        ScreeningError::IncompleteClass { .. } => CeStatus::IncompleteClass,
        _ => CeStatus::InvalidArgument,
    };
    (status, e.to_string())
}

/// `psi(n)` for the built-in class. `result_json` may be null; otherwise it
/// receives the full result with obstacles and statistics.
///
/// # Safety
/// `psi_out` must be writable; `result_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ce_psi(
    n: usize,
    variant: CeVariant,
    psi_out: *mut usize,
    result_json: *mut *mut c_char,
) -> CeStatus {
    guard(|| {
        let r = psi(n, variant.into()).map_err(psi_status)?;
        put(psi_out, r.psi)?;
        if !result_json.is_null() {
            result_json.write(owned_string(serde_json::to_string(&r).expect("serializable")));
        }
        Ok(())
    })
}

/// `psi(n)` over caller-supplied groups, asserted to be the complete class.
///
/// # Safety
/// `groups` must hold `n_groups` live handles; `psi_out` must be writable;
/// `result_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ce_psi_with_groups(
    n: usize,
    variant: CeVariant,
    groups: *const *const CeGroup,
    n_groups: usize,
    psi_out: *mut usize,
    result_json: *mut *mut c_char,
) -> CeStatus {
    guard(|| {
        if groups.is_null() {
            return Err((CeStatus::NullArgument, "null group array".into()));
        }
        let handles = std::slice::from_raw_parts(groups, n_groups);
        let gs = handles
            .iter()
            .map(|&h| deref(h, "group").map(|g| g.0.clone()))
            .collect::<Fallible<Vec<Group>>>()?;
        let r = psi_with(n, variant.into(), &gs, &PsiOptions::default()).map_err(psi_status)?;
        put(psi_out, r.psi)?;
        if !result_json.is_null() {
            result_json.write(owned_string(serde_json::to_string(&r).expect("serializable")));
        }
        Ok(())
    })
}
