//! C ABI over `mgs-core`.
//!
//! Quivers cross the boundary as opaque `MgsQuiver` handles. Every fallible
//! function returns an `MgsStatus`; on failure a message is available from
//! `mgs_last_error_message` until the next call on the same thread.
//! Strings returned by the library are freed with `mgs_string_free`, step
//! arrays with `mgs_steps_free`, handles with `mgs_quiver_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mgs_core::engine::check_sequence;
use mgs_core::format::{deserialize_labeled, serialize_labeled, to_dot};
use mgs_core::quiver::color_string;
use mgs_core::{
    CycleFamily, EngineError, FamilyError, FormatError, IceQuiver, LabelMap, QuiverError, TorusFamily,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Invariant = 4,
    FrozenMutation = 5,
    Overflow = 6,
    UndefinedColor = 7,
    Utf8 = 8,
    Panic = 9,
}

/// Opaque quiver handle.
pub struct MgsQuiver {
    quiver: IceQuiver,
    labels: Option<LabelMap>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MgsReport {
    pub is_green: bool,
    pub is_maximal: bool,
    /// 1-based failing step, 0 when every step was green.
    pub failure_index: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(MgsStatus, String);

impl From<QuiverError> for Failure {
    fn from(e: QuiverError) -> Self {
        let status = match e {
            QuiverError::FrozenMutation { .. } => MgsStatus::FrozenMutation,
            QuiverError::IntegerOverflow => MgsStatus::Overflow,
            QuiverError::MixedSigns { .. } | QuiverError::NoFrozenArrows { .. } => MgsStatus::UndefinedColor,
            QuiverError::IndexOutOfRange { .. } => MgsStatus::InvalidArgument,
            _ => MgsStatus::Invariant,
        };
        Failure(status, e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        Failure(MgsStatus::InvalidArgument, e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::InvariantViolation(q) => q.into(),
            other => Failure(MgsStatus::Parse, other.to_string()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Quiver(q) => q.into(),
            other => Failure(MgsStatus::InvalidArgument, other.to_string()),
        }
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MgsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MgsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MgsStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(MgsStatus::NullPointer, "null pointer argument".into())
}

unsafe fn handle<'a>(q: *const MgsQuiver) -> Result<&'a MgsQuiver, Failure> {
    q.as_ref().ok_or_else(null)
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(null)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no NUL").into_raw()
}

fn boxed(quiver: IceQuiver, labels: Option<LabelMap>) -> *mut MgsQuiver {
    Box::into_raw(Box::new(MgsQuiver { quiver, labels }))
}

/// Message for the last failing call on this thread, or NULL. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn mgs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// The framed torus quiver of genus `n` (n >= 3).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_torus_new(n: usize, out: *mut *mut MgsQuiver) -> MgsStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let t = TorusFamily::new(n)?;
        *out = boxed(t.quiver(), Some(t.label_map()));
        Ok(())
    })
}

/// The framed oriented `n`-cycle.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_cycle_new(n: usize, out: *mut *mut MgsQuiver) -> MgsStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let c = CycleFamily::new(n)?;
        *out = boxed(c.quiver(), Some(c.label_map()));
        Ok(())
    })
}

/// Parses a JSON quiver document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_from_json(json: *const c_char, out: *mut *mut MgsQuiver) -> MgsStatus {
    guard(|| {
        let out = out_ptr(out)?;
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(MgsStatus::Utf8, e.to_string()))?;
        let (q, labels) = deserialize_labeled(text)?;
        *out = boxed(q, labels);
        Ok(())
    })
}

/// # Safety
/// `q` must be a handle from this library (or NULL) and not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_free(q: *mut MgsQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_clone(q: *const MgsQuiver, out: *mut *mut MgsQuiver) -> MgsStatus {
    guard(|| {
        let q = handle(q)?;
        *out_ptr(out)? = boxed(q.quiver.clone(), q.labels.clone());
        Ok(())
    })
}

/// # Safety
/// `q` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_n_mutable(q: *const MgsQuiver) -> usize {
    q.as_ref().map_or(0, |q| q.quiver.n_mutable())
}

/// # Safety
/// `q` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_n_frozen(q: *const MgsQuiver) -> usize {
    q.as_ref().map_or(0, |q| q.quiver.n_frozen())
}

/// Exchange matrix entry: arrows `i -> j` minus arrows `j -> i`.
///
/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_entry(q: *const MgsQuiver, i: usize, j: usize, out: *mut i32) -> MgsStatus {
    guard(|| {
        let q = handle(q)?;
        let dim = q.quiver.dim();
        if i >= dim || j >= dim {
            return Err(QuiverError::IndexOutOfRange { index: i.max(j), size: dim }.into());
        }
        *out_ptr(out)? = q.quiver.entry(i, j);
        Ok(())
    })
}

/// Index of a vertex label, for quivers that carry labels.
///
/// # Safety
/// `q` must be a valid handle, `label` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_vertex_index(
    q: *const MgsQuiver,
    label: *const c_char,
    out: *mut usize,
) -> MgsStatus {
    guard(|| {
        let q = handle(q)?;
        if label.is_null() {
            return Err(null());
        }
        let name = CStr::from_ptr(label)
            .to_str()
            .map_err(|e| Failure(MgsStatus::Utf8, e.to_string()))?;
        let idx = q
            .labels
            .as_ref()
            .and_then(|l| l.index(name))
            .ok_or_else(|| Failure(MgsStatus::InvalidArgument, format!("unknown vertex {name:?}")))?;
        *out_ptr(out)? = idx;
        Ok(())
    })
}

/// Mutates the quiver in place at mutable vertex `k`. On failure the quiver
/// is unchanged.
///
/// # Safety
/// `q` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_mutate(q: *mut MgsQuiver, k: usize) -> MgsStatus {
    guard(|| {
        let q = q.as_mut().ok_or_else(null)?;
        q.quiver = q.quiver.mutate(k)?;
        Ok(())
    })
}

/// Colors of the mutable vertices as a string of `G`/`R`.
///
/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_colors(q: *const MgsQuiver, out: *mut *mut c_char) -> MgsStatus {
    guard(|| {
        let q = handle(q)?;
        let colors = q.quiver.color_vector()?;
        *out_ptr(out)? = into_c_string(color_string(&colors));
        Ok(())
    })
}

/// The quiver as a JSON document (with labels when present).
///
/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_to_json(q: *const MgsQuiver, out: *mut *mut c_char) -> MgsStatus {
    guard(|| {
        let q = handle(q)?;
        *out_ptr(out)? = into_c_string(serialize_labeled(&q.quiver, q.labels.as_ref()));
        Ok(())
    })
}

/// The quiver in Graphviz dot syntax.
///
/// # Safety
/// `q` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mgs_quiver_to_dot(q: *const MgsQuiver, out: *mut *mut c_char) -> MgsStatus {
    guard(|| {
        let q = handle(q)?;
        *out_ptr(out)? = into_c_string(to_dot(&q.quiver, q.labels.as_ref()));
        Ok(())
    })
}

/// Checks whether `steps[0..len]` is a maximal green sequence for `q`.
///
/// # Safety
/// `q` must be a valid handle, `steps` must point to `len` values (or be
/// NULL with `len == 0`), `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mgs_check_sequence(
    q: *const MgsQuiver,
    steps: *const usize,
    len: usize,
    out: *mut MgsReport,
) -> MgsStatus {
    guard(|| {
        let q = handle(q)?;
        let steps = if len == 0 {
            &[][..]
        } else if steps.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(steps, len)
        };
        let r = check_sequence(&q.quiver, steps)?;
        *out_ptr(out)? = MgsReport {
            is_green: r.is_green,
            is_maximal: r.is_maximal,
            failure_index: r.failure_index.unwrap_or(0),
        };
        Ok(())
    })
}

fn export_steps(steps: Vec<usize>, out: *mut *mut usize, out_len: *mut usize) -> Result<(), Failure> {
    let (out, out_len) = unsafe { (out_ptr(out)?, out_ptr(out_len)?) };
    let boxed = steps.into_boxed_slice();
    *out_len = boxed.len();
    *out = Box::into_raw(boxed) as *mut usize;
    Ok(())
}

/// The maximal green sequence of length `24n - 4` for the torus quiver of
/// genus `n`, as vertex indices.
///
/// # Safety
/// `out` and `out_len` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mgs_theorem_sequence(n: usize, out: *mut *mut usize, out_len: *mut usize) -> MgsStatus {
    guard(|| {
        let t = TorusFamily::new(n)?;
        export_steps(t.theorem_sequence().steps().to_vec(), out, out_len)
    })
}

/// The cycle sequence `f_n, ..., f_1, f_3, ..., f_n` for the torus of
/// genus `n` (torus vertex indices).
///
/// # Safety
/// `out` and `out_len` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mgs_cycle_sequence(n: usize, out: *mut *mut usize, out_len: *mut usize) -> MgsStatus {
    guard(|| {
        let t = TorusFamily::new(n)?;
        export_steps(t.cycle_sequence().steps().to_vec(), out, out_len)
    })
}

/// # Safety
/// `steps`/`len` must come from one call of this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn mgs_steps_free(steps: *mut usize, len: usize) {
    if !steps.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(steps, len)));
    }
}

/// # Safety
/// `s` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn mgs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
