//! C ABI for the cartanlab engine.
//!
//! Algebras are exposed as opaque handles created by `cartan_algebra_new` and
//! released by `cartan_algebra_free`.  Every fallible function returns an
//! integer status (`CARTAN_OK` on success); strings returned through out
//! parameters are owned by the caller and must be released with
//! `cartan_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cartanlab::criterion::{reproduce_counterexample, verify, FamilySpec, Realized};
use cartanlab::liecore::LieOps;
use cartanlab::report::{build_algebra, invariants, simplicity_verdict};

/// Success.
pub const CARTAN_OK: i32 = 0;
/// A required pointer argument was null.
pub const CARTAN_ERR_NULL: i32 = -1;
/// A string argument was not valid UTF-8.
pub const CARTAN_ERR_ENCODING: i32 = -2;
/// The family tag or parameter combination is invalid.
pub const CARTAN_ERR_INVALID_SPEC: i32 = -3;
/// The requested counterexample name is unknown.
pub const CARTAN_ERR_UNKNOWN_NAME: i32 = -4;
/// An internal invariant failed (library bug).
pub const CARTAN_ERR_INTERNAL: i32 = -5;

/// Simplicity verdicts returned by `cartan_algebra_simplicity`.
pub const CARTAN_SIMPLE: i32 = 1;
pub const CARTAN_NOT_SIMPLE: i32 = 2;
pub const CARTAN_INCONCLUSIVE: i32 = 3;

/// Opaque algebra handle.
pub struct CartanAlgebra {
    spec: FamilySpec,
    alg: Realized,
}

fn catch<F: FnOnce() -> i32>(f: F) -> i32 {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CARTAN_ERR_INTERNAL)
}

/// # Safety
/// `ptr` must be valid for reads of a NUL-terminated string, or null.
unsafe fn opt_str<'a>(ptr: *const c_char) -> Result<Option<&'a str>, i32> {
    if ptr.is_null() {
        return Ok(None);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map(Some)
        .map_err(|_| CARTAN_ERR_ENCODING)
}

fn parse_alpha(text: &str) -> Result<Vec<((usize, usize), u64)>, i32> {
    let mut out = Vec::new();
    for entry in text.split(';').filter(|e| !e.trim().is_empty()) {
        let parts: Vec<&str> = entry.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(CARTAN_ERR_INVALID_SPEC);
        }
        let i: usize = parts[0].parse().map_err(|_| CARTAN_ERR_INVALID_SPEC)?;
        let j: usize = parts[1].parse().map_err(|_| CARTAN_ERR_INVALID_SPEC)?;
        let c: u64 = parts[2].parse().map_err(|_| CARTAN_ERR_INVALID_SPEC)?;
        if i >= j || c == 0 {
            return Err(CARTAN_ERR_INVALID_SPEC);
        }
        out.push(((i, j), c));
    }
    Ok(out)
}

fn build_spec(
    family: &str,
    p: u64,
    n: &[u32],
    l: i64,
    alpha: Option<&str>,
) -> Result<FamilySpec, i32> {
    if n.is_empty() || n.iter().any(|&x| x == 0) {
        return Err(CARTAN_ERR_INVALID_SPEC);
    }
    let l_of = || -> Result<usize, i32> {
        usize::try_from(l).map_err(|_| CARTAN_ERR_INVALID_SPEC)
    };
    let spec = match family {
        "W" => FamilySpec::W { p, n: n.to_vec() },
        "S" if n.len() >= 2 => FamilySpec::S { p, n: n.to_vec() },
        "H" if n.len() >= 2 && n.len() % 2 == 0 => FamilySpec::H { p, n: n.to_vec() },
        "K" if p > 2 && n.len() >= 3 && n.len() % 2 == 1 => FamilySpec::K { p, n: n.to_vec() },
        "M" if n.len() == 2 && (p == 0 || p == 5) => FamilySpec::M { n1: n[0], n2: n[1] },
        "STau" if n.len() >= 2 => FamilySpec::STau { p, n: n.to_vec() },
        "SPhi" if n.len() >= 2 => {
            let l = l_of()?;
            if l >= n.len() {
                return Err(CARTAN_ERR_INVALID_SPEC);
            }
            FamilySpec::SPhi { p, n: n.to_vec(), l }
        }
        "H1st" if n.len() >= 2 && n.len() % 2 == 0 => FamilySpec::HOmega {
            p,
            n: n.to_vec(),
            alpha: match alpha {
                Some(text) => parse_alpha(text)?,
                None => Vec::new(),
            },
        },
        "H2nd" if n.len() >= 2 && n.len() % 2 == 0 => {
            let l = l_of()?;
            if l >= n.len() / 2 {
                return Err(CARTAN_ERR_INVALID_SPEC);
            }
            FamilySpec::HSecond { p, n: n.to_vec(), l }
        }
        _ => return Err(CARTAN_ERR_INVALID_SPEC),
    };
    if !matches!(spec, FamilySpec::M { .. }) && !cartanlab::fp::is_prime(p) {
        return Err(CARTAN_ERR_INVALID_SPEC);
    }
    Ok(spec)
}

/// Construct an algebra.
///
/// `family` is one of "W", "S", "H", "K", "M", "STau", "SPhi", "H1st",
/// "H2nd".  `n` points to `n_len` shape exponents.  `l` is the 0-based
/// distinguished index for SPhi/H2nd (pass 0 otherwise).  `alpha` is an
/// optional "i,j,c;i,j,c" list for H1st (pass NULL otherwise; p may be 0 for
/// M, which lives at p = 5).  On success `*out` owns the new handle.
///
/// # Safety
/// `family` must be a valid NUL-terminated string, `n` valid for `n_len`
/// reads, `out` valid for one write; `alpha` null or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn cartan_algebra_new(
    family: *const c_char,
    p: u64,
    n: *const u32,
    n_len: usize,
    l: i64,
    alpha: *const c_char,
    out: *mut *mut CartanAlgebra,
) -> i32 {
    if family.is_null() || n.is_null() || out.is_null() {
        return CARTAN_ERR_NULL;
    }
    let family = match unsafe { opt_str(family) } {
        Ok(Some(s)) => s.to_owned(),
        Ok(None) => return CARTAN_ERR_NULL,
        Err(e) => return e,
    };
    let alpha = match unsafe { opt_str(alpha) } {
        Ok(s) => s.map(str::to_owned),
        Err(e) => return e,
    };
    let n = unsafe { std::slice::from_raw_parts(n, n_len) }.to_vec();
    catch(|| {
        let spec = match build_spec(&family, p, &n, l, alpha.as_deref()) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let alg = build_algebra(&spec, None);
        let handle = Box::new(CartanAlgebra { spec, alg });
        unsafe { *out = Box::into_raw(handle) };
        CARTAN_OK
    })
}

/// Release a handle created by `cartan_algebra_new`.  Null is ignored.
///
/// # Safety
/// `handle` must be null or a pointer returned by `cartan_algebra_new` that
/// has not already been freed.
#[no_mangle]
pub unsafe extern "C" fn cartan_algebra_free(handle: *mut CartanAlgebra) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Dimension of the algebra; 0 if the handle is null.
///
/// # Safety
/// `handle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cartan_algebra_dim(handle: *const CartanAlgebra) -> usize {
    match unsafe { handle.as_ref() } {
        Some(h) => h.alg.dim(),
        None => 0,
    }
}

/// Depth s and height h of the standard grading or filtration.
///
/// # Safety
/// `handle` must be a live handle; `depth` and `height` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cartan_algebra_invariants(
    handle: *const CartanAlgebra,
    depth: *mut i64,
    height: *mut i64,
) -> i32 {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return CARTAN_ERR_NULL;
    };
    if depth.is_null() || height.is_null() {
        return CARTAN_ERR_NULL;
    }
    catch(|| {
        let (s, ht, _) = invariants(&h.alg);
        unsafe {
            *depth = s;
            *height = ht;
        }
        CARTAN_OK
    })
}

/// Decide simplicity with the given seed.  Returns `CARTAN_SIMPLE`,
/// `CARTAN_NOT_SIMPLE`, `CARTAN_INCONCLUSIVE` or a negative error code.
///
/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cartan_algebra_simplicity(
    handle: *const CartanAlgebra,
    seed: u64,
) -> i32 {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return CARTAN_ERR_NULL;
    };
    catch(|| match simplicity_verdict(&h.alg, seed).as_str() {
        "Simple" => CARTAN_SIMPLE,
        "NotSimple" => CARTAN_NOT_SIMPLE,
        _ => CARTAN_INCONCLUSIVE,
    })
}

/// Run the family's generator criterion.  On success writes 1 to `*passed`
/// if every condition holds, else 0.
///
/// # Safety
/// `handle` must be a live handle and `passed` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cartan_algebra_verify(
    handle: *const CartanAlgebra,
    passed: *mut i32,
) -> i32 {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return CARTAN_ERR_NULL;
    };
    if passed.is_null() {
        return CARTAN_ERR_NULL;
    }
    catch(|| {
        let report = verify(&h.spec);
        unsafe { *passed = report.passed as i32 };
        CARTAN_OK
    })
}

/// Produce the criterion report as a JSON document in `*out` (caller frees
/// with `cartan_string_free`).
///
/// # Safety
/// `handle` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cartan_algebra_verify_json(
    handle: *const CartanAlgebra,
    out: *mut *mut c_char,
) -> i32 {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return CARTAN_ERR_NULL;
    };
    if out.is_null() {
        return CARTAN_ERR_NULL;
    }
    catch(|| {
        let report = verify(&h.spec);
        let doc = serde_json::json!({
            "family": report.family,
            "shape": report.shape,
            "mode": report.mode,
            "recipe": report.recipe,
            "dim": report.dim,
            "conditions": report.conditions.iter().map(|c| serde_json::json!({
                "name": c.name,
                "passed": c.passed,
                "witness": c.witness,
            })).collect::<Vec<_>>(),
            "flags": report.flags,
            "passed": report.passed,
        });
        let text = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
        let cstr = CString::new(text).expect("JSON contains no NUL");
        unsafe { *out = cstr.into_raw() };
        CARTAN_OK
    })
}

/// Structure-constant dump of the algebra as a JSON document in `*out`
/// (caller frees with `cartan_string_free`).
///
/// # Safety
/// `handle` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cartan_algebra_dump_json(
    handle: *const CartanAlgebra,
    out: *mut *mut c_char,
) -> i32 {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return CARTAN_ERR_NULL;
    };
    if out.is_null() {
        return CARTAN_ERR_NULL;
    }
    catch(|| {
        let sc = match cartanlab::report::to_lie_algebra(&h.alg) {
            Ok(sc) => sc,
            Err(_) => return CARTAN_ERR_INTERNAL,
        };
        let text = cartanlab::cache::write_dump(&sc);
        let cstr = CString::new(text).expect("JSON contains no NUL");
        unsafe { *out = cstr.into_raw() };
        CARTAN_OK
    })
}

/// Replay a stock counterexample ("rumynin" or "contact_p3").  On success
/// writes 1 to `*reproduced` if every documented assertion holds.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `reproduced` valid for
/// one write.
#[no_mangle]
pub unsafe extern "C" fn cartan_counterexample(
    name: *const c_char,
    reproduced: *mut i32,
) -> i32 {
    let name = match unsafe { opt_str(name) } {
        Ok(Some(s)) => s.to_owned(),
        Ok(None) => return CARTAN_ERR_NULL,
        Err(e) => return e,
    };
    if reproduced.is_null() {
        return CARTAN_ERR_NULL;
    }
    catch(|| match reproduce_counterexample(&name) {
        Ok(report) => {
            unsafe { *reproduced = report.reproduced as i32 };
            CARTAN_OK
        }
        Err(_) => CARTAN_ERR_UNKNOWN_NAME,
    })
}

/// Release a string returned by this library.  Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn cartan_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn new_handle(family: &str, p: u64, n: &[u32]) -> *mut CartanAlgebra {
        let family = CString::new(family).unwrap();
        let mut handle: *mut CartanAlgebra = ptr::null_mut();
        let rc = unsafe {
            cartan_algebra_new(family.as_ptr(), p, n.as_ptr(), n.len(), 0, ptr::null(), &mut handle)
        };
        assert_eq!(rc, CARTAN_OK);
        handle
    }

    #[test]
    fn witt_handle_round_trip() {
        let h = new_handle("W", 5, &[1]);
        assert_eq!(unsafe { cartan_algebra_dim(h) }, 5);
        let (mut s, mut ht) = (0i64, 0i64);
        assert_eq!(unsafe { cartan_algebra_invariants(h, &mut s, &mut ht) }, CARTAN_OK);
        assert_eq!((s, ht), (1, 3));
        assert_eq!(unsafe { cartan_algebra_simplicity(h, 0) }, CARTAN_SIMPLE);
        let mut passed = -1;
        assert_eq!(unsafe { cartan_algebra_verify(h, &mut passed) }, CARTAN_OK);
        assert_eq!(passed, 1);
        unsafe { cartan_algebra_free(h) };
    }

    #[test]
    fn dump_json_parses_back() {
        let h = new_handle("H", 5, &[1, 1]);
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { cartan_algebra_dump_json(h, &mut text) }, CARTAN_OK);
        let rust_text = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
        unsafe { cartan_string_free(text) };
        let alg = cartanlab::cache::read_dump(&rust_text).unwrap();
        assert_eq!(alg.dim, 23);
        unsafe { cartan_algebra_free(h) };
    }

    #[test]
    fn verify_json_reports_conditions() {
        let h = new_handle("W", 3, &[1]);
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { cartan_algebra_verify_json(h, &mut text) }, CARTAN_OK);
        let doc = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
        unsafe { cartan_string_free(text) };
        assert!(doc.contains("G III"));
        assert!(doc.contains("\"passed\": false"));
        unsafe { cartan_algebra_free(h) };
    }

    #[test]
    fn h1st_accepts_alpha() {
        let family = CString::new("H1st").unwrap();
        let alpha = CString::new("0,1,1").unwrap();
        let n = [1u32, 1];
        let mut handle: *mut CartanAlgebra = ptr::null_mut();
        let rc = unsafe {
            cartan_algebra_new(family.as_ptr(), 5, n.as_ptr(), n.len(), 0, alpha.as_ptr(), &mut handle)
        };
        assert_eq!(rc, CARTAN_OK);
        assert_eq!(unsafe { cartan_algebra_dim(handle) }, 24);
        unsafe { cartan_algebra_free(handle) };
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut handle: *mut CartanAlgebra = ptr::null_mut();
        for (family, p, n) in [("K", 2u64, vec![1u32, 1, 1]), ("Q", 5, vec![1]), ("W", 4, vec![1])] {
            let family = CString::new(family).unwrap();
            let rc = unsafe {
                cartan_algebra_new(family.as_ptr(), p, n.as_ptr(), n.len(), 0, ptr::null(), &mut handle)
            };
            assert_eq!(rc, CARTAN_ERR_INVALID_SPEC);
        }
        let rc = unsafe {
            cartan_algebra_new(ptr::null(), 5, [1u32].as_ptr(), 1, 0, ptr::null(), &mut handle)
        };
        assert_eq!(rc, CARTAN_ERR_NULL);
    }

    #[test]
    fn counterexamples_reproduce_through_ffi() {
        for name in ["rumynin", "contact_p3"] {
            let cname = CString::new(name).unwrap();
            let mut reproduced = 0;
            let rc = unsafe { cartan_counterexample(cname.as_ptr(), &mut reproduced) };
            assert_eq!(rc, CARTAN_OK, "{name}");
            assert_eq!(reproduced, 1, "{name}");
        }
        let cname = CString::new("bogus").unwrap();
        let mut reproduced = 0;
        let rc = unsafe { cartan_counterexample(cname.as_ptr(), &mut reproduced) };
        assert_eq!(rc, CARTAN_ERR_UNKNOWN_NAME);
    }
}
