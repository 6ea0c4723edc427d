//! C ABI over `osp_shuffle`.
//!
//! Every function returns an [`OspStatus`]. Strings handed out through `out` pointers are
//! owned by the caller and released with [`osp_string_free`]. After a non-`Ok` status,
//! [`osp_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use osp_shuffle::bases::Algebra;
use osp_shuffle::cartan::Weight;
use osp_shuffle::error::Error;
use osp_shuffle::repcheck::{
    verify_relations, GradedSuperModule, ModuleJson, Orientation, QuiverData,
};
use osp_shuffle::shuffle::Element;
use osp_shuffle::words::Word;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OspStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed word, weight, root or module text.
    Parse = 3,
    /// Well-formed input outside the domain of the call, e.g. a non-dominant word.
    InvalidInput = 4,
    /// An internal consistency check failed.
    MathFailure = 5,
    Panic = 6,
}

/// Opaque handle to an algebra of fixed rank, with its per-weight caches.
pub struct OspAlgebra {
    inner: Algebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(OspStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => OspStatus::Parse,
            Error::NotInSubalgebra(_) | Error::Inconsistent(_) => OspStatus::MathFailure,
            _ => OspStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OspStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OspStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            OspStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(OspStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OspStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn algebra<'a>(p: *const OspAlgebra) -> Result<&'a Algebra, Failure> {
    p.as_ref()
        .map(|a| &a.inner)
        .ok_or_else(|| Failure(OspStatus::NullPointer, "algebra handle is null".into()))
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            OspStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    *out = CString::new(s).expect("output has no nul bytes").into_raw();
    Ok(())
}

fn word(alg: &Algebra, s: &str) -> Result<Word, Failure> {
    let w: Word = s.parse().map_err(Error::from)?;
    w.validate(alg.rank())?;
    Ok(w)
}

/// Creates the algebra of rank `n >= 1`. Free with [`osp_algebra_free`].
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn osp_algebra_new(n: u32, out: *mut *mut OspAlgebra) -> OspStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(
                OspStatus::NullPointer,
                "output pointer is null".into(),
            ));
        }
        if n == 0 || n > 64 {
            return Err(Failure(
                OspStatus::InvalidInput,
                format!("rank {n} is outside 1..=64"),
            ));
        }
        *out = Box::into_raw(Box::new(OspAlgebra {
            inner: Algebra::new(n as usize),
        }));
        Ok(())
    })
}

/// # Safety
/// `alg` must be null or a handle from [`osp_algebra_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn osp_algebra_free(alg: *mut OspAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Rank of the algebra, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn osp_algebra_rank(alg: *const OspAlgebra) -> u32 {
    alg.as_ref().map_or(0, |a| a.inner.rank() as u32)
}

/// Shuffle product of two words such as `"(1,2)"`, written as element text.
///
/// # Safety
/// `alg` must be a live handle, `left` and `right` nul-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osp_shuffle_words(
    alg: *const OspAlgebra,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> OspStatus {
    guard(|| {
        let alg = algebra(alg)?;
        let a = word(alg, text(left, "left word")?)?;
        let b = word(alg, text(right, "right word")?)?;
        emit(
            out,
            alg.shuffle(&Element::word(a), &Element::word(b))
                .to_string(),
        )
    })
}

/// Leading coefficient of the dual canonical vector of a dominant word.
///
/// # Safety
/// As for [`osp_shuffle_words`].
#[no_mangle]
pub unsafe extern "C" fn osp_kappa(
    alg: *const OspAlgebra,
    w: *const c_char,
    out: *mut *mut c_char,
) -> OspStatus {
    guard(|| {
        let alg = algebra(alg)?;
        let w = word(alg, text(w, "word")?)?;
        emit(out, alg.kappa(&w)?.to_string())
    })
}

/// Dual canonical vector of a dominant word, as element text.
///
/// # Safety
/// As for [`osp_shuffle_words`].
#[no_mangle]
pub unsafe extern "C" fn osp_dual_canonical(
    alg: *const OspAlgebra,
    w: *const c_char,
    out: *mut *mut c_char,
) -> OspStatus {
    guard(|| {
        let alg = algebra(alg)?;
        let w = word(alg, text(w, "word")?)?;
        emit(out, alg.dual_canonical_word(&w)?.to_string())
    })
}

/// Dual PBW vector of a dominant word, as element text.
///
/// # Safety
/// As for [`osp_shuffle_words`].
#[no_mangle]
pub unsafe extern "C" fn osp_dual_pbw(
    alg: *const OspAlgebra,
    w: *const c_char,
    out: *mut *mut c_char,
) -> OspStatus {
    guard(|| {
        let alg = algebra(alg)?;
        let w = word(alg, text(w, "word")?)?;
        emit(out, alg.dual_pbw(&w)?.to_string())
    })
}

/// Dominant words, PBW, dual PBW and dual canonical vectors of a weight such as `"1,2"`, as JSON.
///
/// # Safety
/// As for [`osp_shuffle_words`].
#[no_mangle]
pub unsafe extern "C" fn osp_weight_bases_json(
    alg: *const OspAlgebra,
    weight: *const c_char,
    out: *mut *mut c_char,
) -> OspStatus {
    guard(|| {
        let alg = algebra(alg)?;
        let nu: Weight = text(weight, "weight")?.parse().map_err(Error::from)?;
        alg.datum().check_rank(&nu)?;
        let b = alg.weight_bases(&nu)?;
        let n = alg.rank();
        let json = |xs: &[Element]| xs.iter().map(|x| x.to_json(n)).collect::<Vec<_>>();
        let value = serde_json::json!({
            "n": n,
            "weight": nu,
            "words": b.words,
            "pbw": json(&b.pbw),
            "norms": b.norms.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "dual_pbw": json(&b.dual_pbw),
            "dual_canonical": json(&b.canonical),
        });
        emit(out, value.to_string())
    })
}

/// Checks the defining relations on a module given in the module-file JSON format.
/// `orientation` is 0 for arrows `i -> i+1` and 1 for the reverse. `passed` receives 1 or 0
/// and `report` (if non-null) the text report.
///
/// # Safety
/// `module_json` must be a nul-terminated string, `passed` writable, `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn osp_verify_module(
    module_json: *const c_char,
    orientation: u32,
    passed: *mut i32,
    report: *mut *mut c_char,
) -> OspStatus {
    guard(|| {
        if passed.is_null() {
            return Err(Failure(
                OspStatus::NullPointer,
                "passed pointer is null".into(),
            ));
        }
        let orientation = match orientation {
            0 => Orientation::Up,
            1 => Orientation::Down,
            o => {
                return Err(Failure(
                    OspStatus::InvalidInput,
                    format!("orientation {o} is not 0 or 1"),
                ))
            }
        };
        let json: ModuleJson = serde_json::from_str(text(module_json, "module JSON")?)
            .map_err(|e| Failure(OspStatus::Parse, format!("invalid module file: {e}")))?;
        let m = GradedSuperModule::from_json(&json)?;
        let quiver = QuiverData::new(osp_shuffle::cartan::RootDatum::osp(m.n), orientation);
        let r = verify_relations(&m, &quiver)?;
        *passed = i32::from(r.passed());
        if !report.is_null() {
            emit(report, r.to_string())?;
        }
        Ok(())
    })
}

/// Message for the last failure on this thread, or null. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn osp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn osp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
