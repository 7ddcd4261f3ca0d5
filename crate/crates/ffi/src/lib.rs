//! C ABI over the `mplrc` library.
//!
//! Codes are opaque [`MplrcCode`] handles. Every function returns an
//! [`MplrcStatus`]; on failure [`mplrc_last_error_message`] describes the
//! error for the calling thread.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mplrc::codefile::{CodeFile, Decoded};
use mplrc::constructions::{
    build_cor1, build_cor2, build_thm1, build_thm2, build_thm3, build_thm4, build_thm5,
    build_thm6, default_points, enumerate_cor1, BuildOptions, Family,
};
use mplrc::galois::FieldElement;
use mplrc::locality::{check_certificate, classify, local_repair_with};
use mplrc::product::vandermonde_nsc;
use mplrc::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MplrcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    VerificationFailed = 3,
    Format = 4,
    RepairFailed = 5,
    Panic = 6,
}

/// Opaque code handle.
pub struct MplrcCode {
    decoded: Decoded,
    file: CodeFile,
}

/// Numeric inputs of a construction; fields a family does not use are
/// ignored.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct MplrcBuildArgs {
    pub q: u64,
    pub r: usize,
    pub delta: usize,
    pub g: usize,
    pub m_codes: usize,
    pub n_blocks: usize,
    pub v: usize,
    pub tau: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct MplrcCodeParams {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub has_locality: bool,
    pub r: usize,
    pub delta: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct MplrcReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_exact: bool,
    pub bound: i64,
    pub optimal: bool,
    pub certificate_valid: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MplrcCor1Row {
    pub n_blocks: usize,
    pub m_codes: usize,
    pub r: usize,
    pub delta: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> MplrcStatus {
    match e {
        Error::Format(_) => MplrcStatus::Format,
        Error::InvalidCertificate(_) | Error::InconsistentWord => MplrcStatus::VerificationFailed,
        Error::RepairFailed { .. } => MplrcStatus::RepairFailed,
        _ => MplrcStatus::InvalidArgument,
    }
}

type FfiResult = Result<(), (MplrcStatus, String)>;

fn fail<T>(status: MplrcStatus, msg: impl Into<String>) -> Result<T, (MplrcStatus, String)> {
    Err((status, msg.into()))
}

fn lib<T>(r: mplrc::Result<T>) -> Result<T, (MplrcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn guard(f: impl FnOnce() -> FfiResult) -> MplrcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MplrcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MplrcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (MplrcStatus, String)> {
    if p.is_null() {
        return fail(MplrcStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (MplrcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn code_arg<'a>(p: *const MplrcCode) -> Result<&'a MplrcCode, (MplrcStatus, String)> {
    p.as_ref()
        .ok_or_else(|| (MplrcStatus::NullPointer, "code handle is null".to_string()))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (MplrcStatus, String)> {
    p.as_mut()
        .ok_or_else(|| (MplrcStatus::NullPointer, format!("{what} is null")))
}

fn handle(file: CodeFile) -> Result<*mut MplrcCode, (MplrcStatus, String)> {
    let decoded = lib(file.decode())?;
    Ok(Box::into_raw(Box::new(MplrcCode { decoded, file })))
}

/// Builds a code of the named family (`"cor1"`, `"thm6"`, ...). `thm2`
/// needs existing codes; see [`mplrc_compose`].
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mplrc_construct(
    family: *const c_char,
    args: MplrcBuildArgs,
    out: *mut *mut MplrcCode,
) -> MplrcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let family: Family = lib(str_arg(family, "family")?.parse())?;
        let a = args;
        let o = BuildOptions::default();
        let bundle = lib(match family {
            Family::Thm1 => build_thm1(a.q, a.r, a.delta, a.g, a.m_codes, a.n_blocks, &o),
            Family::Cor1 => build_cor1(a.q, a.r, a.delta, a.m_codes, a.n_blocks, &o),
            Family::Cor2 => build_cor2(a.q, a.r, a.m_codes, a.n_blocks, &o),
            Family::Thm3 => build_thm3(a.q, a.r, a.delta, &o),
            Family::Thm4 => build_thm4(a.q, a.r, a.delta, a.v, &o),
            Family::Thm5 => build_thm5(a.q, a.r, a.delta, a.v, a.tau, &o),
            Family::Thm6 => build_thm6(a.q, a.r, a.delta, a.v, a.tau, a.n_blocks, &o),
            Family::Thm2 => {
                return fail(MplrcStatus::InvalidArgument, "thm2 is built with mplrc_compose")
            }
        })?;
        *out = handle(CodeFile::from_bundle(&bundle))?;
        Ok(())
    })
}

/// Composes `n_blocks - 1` copies of `c1` with `cn` through the default
/// square Vandermonde matrix. `c1` must carry a locality certificate.
///
/// # Safety
/// Handles must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mplrc_compose(
    c1: *const MplrcCode,
    cn: *const MplrcCode,
    n_blocks: usize,
    out: *mut *mut MplrcCode,
) -> MplrcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let c1 = code_arg(c1)?;
        let cn = code_arg(cn)?;
        let Some(cert) = &c1.decoded.cert else {
            return fail(MplrcStatus::InvalidArgument, "first code has no locality certificate");
        };
        let field = c1.decoded.code.field();
        let pts = lib(default_points(field, n_blocks))?;
        let a = lib(vandermonde_nsc(field, &pts, n_blocks))?;
        let bundle = lib(build_thm2(&c1.decoded.code, cert, &cn.decoded.code, a.matrix()))?;
        *out = handle(CodeFile::from_bundle(&bundle))?;
        Ok(())
    })
}

/// Parses a code file.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mplrc_code_from_json(
    json: *const c_char,
    out: *mut *mut MplrcCode,
) -> MplrcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let file = lib(CodeFile::from_json(str_arg(json, "json")?))?;
        *out = handle(file)?;
        Ok(())
    })
}

/// Canonical JSON of the code. Release with [`mplrc_string_free`].
///
/// # Safety
/// `code` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mplrc_code_to_json(
    code: *const MplrcCode,
    out: *mut *mut c_char,
) -> MplrcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let code = code_arg(code)?;
        let s = CString::new(code.file.to_json()).expect("JSON has no NUL");
        *out = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn mplrc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `code` must come from this library, or be null. It must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn mplrc_code_free(code: *mut MplrcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `code` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mplrc_code_params(
    code: *const MplrcCode,
    out: *mut MplrcCodeParams,
) -> MplrcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let c = code_arg(code)?;
        let cert = c.decoded.cert.as_ref();
        *out = MplrcCodeParams {
            q: c.decoded.code.field().order(),
            n: c.decoded.code.len(),
            k: c.decoded.code.dimension(),
            has_locality: cert.is_some(),
            r: cert.map_or(0, |c| c.r),
            delta: cert.map_or(0, |c| c.delta),
        };
        Ok(())
    })
}

/// Recomputes the distance, the certificate and optimality. Returns
/// `VerificationFailed` (with the report filled in) when the code carries a
/// construction claim it does not meet.
///
/// # Safety
/// `code` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mplrc_code_verify(
    code: *const MplrcCode,
    out: *mut MplrcReport,
) -> MplrcStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let c = code_arg(code)?;
        let Some(cert) = &c.decoded.cert else {
            return fail(MplrcStatus::InvalidArgument, "code has no locality certificate");
        };
        let check = lib(check_certificate(&c.decoded.code, cert))?;
        if let Some(reason) = check.failure() {
            *out = MplrcReport::default();
            return fail(MplrcStatus::VerificationFailed, reason);
        }
        let rep = lib(classify(&c.decoded.code, cert))?;
        *out = MplrcReport {
            n: rep.n,
            k: rep.k,
            d: rep.d,
            d_exact: rep.d_exact,
            bound: rep.bound,
            optimal: rep.optimal,
            certificate_valid: true,
        };
        if let Some(b) = &c.decoded.construction {
            let p = b.predicted;
            if !rep.d_exact || (rep.n, rep.k, rep.d) != (p.n, p.k, p.d) || (b.optimal_claim && !rep.optimal) {
                return fail(
                    MplrcStatus::VerificationFailed,
                    format!("{} does not match predicted {p}", rep.summary()),
                );
            }
        }
        Ok(())
    })
}

fn elements(c: &MplrcCode, raw: &[u32]) -> Result<Vec<FieldElement>, (MplrcStatus, String)> {
    let f = c.decoded.code.field();
    raw.iter()
        .map(|&x| lib(f.element(x as u64)))
        .collect()
}

/// Writes `msg * G` (length n) into `out`.
///
/// # Safety
/// `msg` must point to `msg_len` values and `out` to `out_len` writable
/// values.
#[no_mangle]
pub unsafe extern "C" fn mplrc_code_encode(
    code: *const MplrcCode,
    msg: *const u32,
    msg_len: usize,
    out: *mut u32,
    out_len: usize,
) -> MplrcStatus {
    guard(|| {
        let c = code_arg(code)?;
        if msg.is_null() || out.is_null() {
            return fail(MplrcStatus::NullPointer, "buffer is null");
        }
        let code = &c.decoded.code;
        if msg_len != code.dimension() || out_len != code.len() {
            return fail(
                MplrcStatus::InvalidArgument,
                format!("need k = {} message and n = {} output", code.dimension(), code.len()),
            );
        }
        let m = elements(c, std::slice::from_raw_parts(msg, msg_len))?;
        let word = lib(code.encode(&m))?;
        let out = std::slice::from_raw_parts_mut(out, out_len);
        for (o, v) in out.iter_mut().zip(word) {
            *o = v.value();
        }
        Ok(())
    })
}

/// Restores erased symbols of `word` in place. `erased[j] != 0` marks
/// position `j`; erased entries of `word` are ignored on input.
///
/// # Safety
/// `word` and `erased` must each point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn mplrc_code_repair(
    code: *const MplrcCode,
    word: *mut u32,
    erased: *const u8,
    len: usize,
) -> MplrcStatus {
    guard(|| {
        let c = code_arg(code)?;
        if word.is_null() || erased.is_null() {
            return fail(MplrcStatus::NullPointer, "buffer is null");
        }
        let Some(cert) = &c.decoded.cert else {
            return fail(MplrcStatus::InvalidArgument, "code has no locality certificate");
        };
        if len != c.decoded.code.len() {
            return fail(MplrcStatus::InvalidArgument, format!("word length {len}"));
        }
        let word = std::slice::from_raw_parts_mut(word, len);
        let mask = std::slice::from_raw_parts(erased, len);
        let erased: BTreeSet<usize> = (0..len).filter(|&j| mask[j] != 0).collect();
        let known = elements(
            c,
            &word
                .iter()
                .zip(mask)
                .map(|(&x, &m)| if m != 0 { 0 } else { x })
                .collect::<Vec<_>>(),
        )?;
        let restored = lib(local_repair_with(&c.decoded.code, cert, &erased, |j| known[j]))?;
        for (j, v) in restored.values {
            word[j] = v.value();
        }
        Ok(())
    })
}

/// Writes up to `cap` parameter rows into `out` and the total number into
/// `count`. `out` may be null to query the count.
///
/// # Safety
/// `out`, if non-null, must point to `cap` writable rows; `count` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn mplrc_enumerate_cor1(
    q: u64,
    out: *mut MplrcCor1Row,
    cap: usize,
    count: *mut usize,
) -> MplrcStatus {
    guard(|| {
        let count = out_arg(count, "count")?;
        let rows = lib(enumerate_cor1(q))?;
        *count = rows.len();
        if !out.is_null() {
            let out = std::slice::from_raw_parts_mut(out, cap);
            for (o, r) in out.iter_mut().zip(&rows) {
                *o = MplrcCor1Row {
                    n_blocks: r.n_blocks,
                    m_codes: r.m_codes,
                    r: r.r,
                    delta: r.delta,
                    n: r.n,
                    k: r.k,
                    d: r.d,
                };
            }
        }
        Ok(())
    })
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn mplrc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
