//! C ABI over `cathom`.
//!
//! Objects cross the boundary as opaque heap handles created by a
//! `*_from_json` function and released by the matching `*_free`. Every
//! fallible call returns a [`CathomStatus`]; on failure the message is
//! available from [`cathom_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and released with
//! [`cathom_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use cathom::chfunctor::ch_category;
use cathom::fincat::{CategoryDescription, FinCategory};
use cathom::nerve::{check_two_coskeletal, nerve};
use cathom::ratlinalg::{format_vector, parse_vector};
use cathom::twovect::{
    eckmann_hilton_check, solve_composition, CompositionSolution, EhVerdict, GraphDocument,
    MagmaDocument, MagmaPair, ReflexiveVectGraph,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CathomStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or a document that does not match its schema.
    Parse = 3,
    /// Well-formed input that fails validation, or a failed check.
    Invalid = 4,
    /// An argument or buffer length outside the accepted range.
    OutOfRange = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CathomComposition {
    /// The unit laws force one composition and it is `⋄`.
    UniqueDiamond = 0,
    /// The unit laws force one composition that differs from `⋄`.
    UniqueOther = 1,
    Affine = 2,
    None = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CathomEhVerdict {
    Confirmed = 0,
    InterchangeViolation = 1,
}

/// A validated finite category.
pub struct CathomCategory(Arc<FinCategory>);

/// A reflexive graph of rational vector spaces.
pub struct CathomGraph(ReflexiveVectGraph);

/// A finite set with two unital operations.
pub struct CathomMagma(MagmaPair);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', "?")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(CathomStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CathomStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CathomStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CathomStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            CathomStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CathomStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(CathomStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(
            CathomStatus::NullPointer,
            format!("{what} is null"),
        ))
    } else {
        Ok(())
    }
}

fn parse<T: serde::de::DeserializeOwned>(json: &str) -> Result<T, Failure> {
    serde_json::from_str(json).map_err(|e| Failure(CathomStatus::Parse, e.to_string()))
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(CathomStatus::Invalid, e.to_string())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("library output has no NUL bytes")
        .into_raw()
}

unsafe fn write_counts(values: &[usize], out: *mut usize, out_len: usize) -> Result<(), Failure> {
    out_ptr(out, "out")?;
    if out_len < values.len() {
        return Err(Failure(
            CathomStatus::OutOfRange,
            format!("buffer holds {out_len}, need {}", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Message for the most recent failure on this thread; empty after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn cathom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cathom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cathom_category_from_json(
    json: *const c_char,
    out: *mut *mut CathomCategory,
) -> CathomStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let raw: CategoryDescription = parse(read_str(json, "json")?)?;
        let c = FinCategory::from_description(&raw).map_err(invalid)?;
        *out = Box::into_raw(Box::new(CathomCategory(Arc::new(c))));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a live handle from [`cathom_category_from_json`].
#[no_mangle]
pub unsafe extern "C" fn cathom_category_free(c: *mut CathomCategory) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn cathom_category_size(
    c: *const CathomCategory,
    objects: *mut usize,
    morphisms: *mut usize,
) -> CathomStatus {
    guard(|| {
        let c = handle(c, "category")?;
        out_ptr(objects, "objects")?;
        out_ptr(morphisms, "morphisms")?;
        *objects = c.0.object_count();
        *morphisms = c.0.morphism_count();
        Ok(())
    })
}

/// Writes the simplex counts of the nerve in dimensions `0..=max_dim`.
/// `out_len` must be at least `max_dim + 1`.
///
/// # Safety
/// `c` must be a live handle and `out` must hold `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn cathom_nerve_counts(
    c: *const CathomCategory,
    max_dim: usize,
    out: *mut usize,
    out_len: usize,
) -> CathomStatus {
    guard(|| {
        let c = handle(c, "category")?;
        write_counts(&nerve(&c.0, max_dim).set().counts(), out, out_len)
    })
}

/// Writes the Betti numbers `b0..b_{max_dim-1}` of the nerve truncated at
/// `max_dim`; the top degree is not reported. Requires `max_dim >= 1` and
/// `out_len >= max_dim`.
///
/// # Safety
/// `c` must be a live handle and `out` must hold `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn cathom_betti(
    c: *const CathomCategory,
    max_dim: usize,
    normalized: bool,
    out: *mut usize,
    out_len: usize,
) -> CathomStatus {
    guard(|| {
        let c = handle(c, "category")?;
        if max_dim == 0 {
            return Err(Failure(
                CathomStatus::OutOfRange,
                "max_dim must be at least 1".into(),
            ));
        }
        let r = ch_category(c.0.clone(), max_dim).map_err(invalid)?;
        let complex = if normalized {
            &r.normalized
        } else {
            &r.complex
        };
        let b = complex.betti(max_dim - 1).map_err(invalid)?;
        write_counts(&b, out, out_len)
    })
}

/// Sets `*ok` to whether every compatible boundary in dimension 3 (and 4
/// when `max_dim == 4`) has exactly one filler. `max_dim` must be 3 or 4.
///
/// # Safety
/// `c` must be a live handle and `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn cathom_two_coskeletal(
    c: *const CathomCategory,
    max_dim: usize,
    ok: *mut bool,
) -> CathomStatus {
    guard(|| {
        let c = handle(c, "category")?;
        out_ptr(ok, "ok")?;
        if !(3..=4).contains(&max_dim) {
            return Err(Failure(
                CathomStatus::OutOfRange,
                "max_dim must be 3 or 4".into(),
            ));
        }
        let n = nerve(&c.0, max_dim);
        *ok = check_two_coskeletal(n.set(), max_dim == 4)
            .map_err(invalid)?
            .is_ok();
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cathom_graph_from_json(
    json: *const c_char,
    out: *mut *mut CathomGraph,
) -> CathomStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let doc: GraphDocument = parse(read_str(json, "json")?)?;
        let g = doc.to_graph().map_err(invalid)?;
        *out = Box::into_raw(Box::new(CathomGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a live handle from [`cathom_graph_from_json`].
#[no_mangle]
pub unsafe extern "C" fn cathom_graph_free(g: *mut CathomGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Computes `g ⋄ f` for vectors written like `(1, 0, 3/2, 0)`. The result
/// is returned in the same notation.
///
/// # Safety
/// `graph` must be a live handle, `g` and `f` NUL-terminated strings, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cathom_diamond(
    graph: *const CathomGraph,
    g: *const c_char,
    f: *const c_char,
    out: *mut *mut c_char,
) -> CathomStatus {
    guard(|| {
        let graph = handle(graph, "graph")?;
        out_ptr(out, "out")?;
        let gv = parse_vector(read_str(g, "g")?)
            .map_err(|e| Failure(CathomStatus::Parse, e.to_string()))?;
        let fv = parse_vector(read_str(f, "f")?)
            .map_err(|e| Failure(CathomStatus::Parse, e.to_string()))?;
        let v = graph.0.diamond(&gv, &fv).map_err(invalid)?;
        *out = into_c_string(format_vector(&v));
        Ok(())
    })
}

/// Classifies the compositions allowed by the unit laws. `affine_dim` may
/// be null; otherwise it receives the solution-space dimension (0 unless
/// the verdict is `Affine`).
///
/// # Safety
/// `graph` must be a live handle and `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn cathom_solve_composition(
    graph: *const CathomGraph,
    verdict: *mut CathomComposition,
    affine_dim: *mut usize,
) -> CathomStatus {
    guard(|| {
        let graph = handle(graph, "graph")?;
        out_ptr(verdict, "verdict")?;
        let (v, d) = match solve_composition(&graph.0).map_err(invalid)? {
            CompositionSolution::Unique {
                equals_diamond: true,
                ..
            } => (CathomComposition::UniqueDiamond, 0),
            CompositionSolution::Unique {
                equals_diamond: false,
                ..
            } => (CathomComposition::UniqueOther, 0),
            CompositionSolution::Affine(d) => (CathomComposition::Affine, d),
            CompositionSolution::None => (CathomComposition::None, 0),
        };
        *verdict = v;
        if !affine_dim.is_null() {
            *affine_dim = d;
        }
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cathom_magma_from_json(
    json: *const c_char,
    out: *mut *mut CathomMagma,
) -> CathomStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let doc: MagmaDocument = parse(read_str(json, "json")?)?;
        let p = MagmaPair::from_document(&doc).map_err(invalid)?;
        *out = Box::into_raw(Box::new(CathomMagma(p)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a live handle from [`cathom_magma_from_json`].
#[no_mangle]
pub unsafe extern "C" fn cathom_magma_free(m: *mut CathomMagma) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Tests the interchange law on every quadruple. `report` may be null;
/// otherwise it receives a one-line description of the verdict.
///
/// # Safety
/// `m` must be a live handle and `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn cathom_eh_check(
    m: *const CathomMagma,
    verdict: *mut CathomEhVerdict,
    report: *mut *mut c_char,
) -> CathomStatus {
    guard(|| {
        let m = handle(m, "magma")?;
        out_ptr(verdict, "verdict")?;
        let v = eckmann_hilton_check(&m.0)
            .map_err(|e| Failure(CathomStatus::Internal, e.to_string()))?;
        *verdict = match v {
            EhVerdict::Confirmed { .. } => CathomEhVerdict::Confirmed,
            EhVerdict::InterchangeViolation { .. } => CathomEhVerdict::InterchangeViolation,
        };
        if !report.is_null() {
            *report = into_c_string(v.to_string());
        }
        Ok(())
    })
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn cathom_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
