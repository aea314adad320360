//! C ABI over the `pseudosusy` library.
//!
//! Every object crosses the boundary as an opaque handle created by a
//! `ps_*_new`/constructor call and released by the matching `ps_*_free`.
//! Fallible functions return a [`PsStatus`] and write results through out
//! pointers; the message of the most recent failure on the calling thread is
//! available from [`ps_last_error_message`].
//!
//! Matrices are exchanged as row-major arrays of [`PsComplex`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pseudosusy::intertwiner::{canonical_factorization, self_factorization, Factorization};
use pseudosusy::pseudoherm::{canonical_eta, verify_pseudo_hermiticity, EtaOperator, SignAssignment};
use pseudosusy::psusy::{assemble, from_factorization, verify_algebra, witten_index, PseudoSusySystem};
use pseudosusy::spectral::{classify_spectrum, decompose, BiorthonormalSystem, SpectrumTag};
use pseudosusy::twolevel::{two_level_factorization, TwoLevelParams};
use pseudosusy::{Check, ComplexMatrix, Error, Tolerance, C64};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    NotSquare = 10,
    DimensionMismatch = 11,
    NonFinite = 12,
    InvalidTolerance = 13,
    NumericalFailure = 14,
    NonDiagonalizable = 15,
    NotPseudoHermitian = 16,
    RealSpectrumRequired = 17,
    InvalidEta = 18,
    NotIsospectral = 19,
    DegenerateTwoLevel = 20,
    NonRealDeterminant = 21,
    InvalidSigns = 22,
    Singular = 23,
    Panic = 99,
}

impl From<&Error> for PsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotSquare { .. } => PsStatus::NotSquare,
            Error::DimensionMismatch(_) => PsStatus::DimensionMismatch,
            Error::NonFinite { .. } => PsStatus::NonFinite,
            Error::InvalidTolerance(_) => PsStatus::InvalidTolerance,
            Error::NumericalFailure(_) => PsStatus::NumericalFailure,
            Error::NonDiagonalizable(_) => PsStatus::NonDiagonalizable,
            Error::NotPseudoHermitian(_) => PsStatus::NotPseudoHermitian,
            Error::RealSpectrumRequired => PsStatus::RealSpectrumRequired,
            Error::InvalidEta(_) => PsStatus::InvalidEta,
            Error::NotIsospectral(_) => PsStatus::NotIsospectral,
            Error::DegenerateTwoLevel => PsStatus::DegenerateTwoLevel,
            Error::NonRealDeterminant { .. } => PsStatus::NonRealDeterminant,
            Error::InvalidSigns(_) => PsStatus::InvalidSigns,
            Error::Singular => PsStatus::Singular,
            Error::InvalidArgument(_) => PsStatus::InvalidArgument,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for PsComplex {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<PsComplex> for C64 {
    fn from(z: PsComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsTolerance {
    pub rtol: f64,
    pub atol: f64,
    pub cond_max: f64,
}

/// A residual and the threshold it was compared against.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PsCheck {
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl From<Check> for PsCheck {
    fn from(c: Check) -> Self {
        Self { residual: c.residual, threshold: c.threshold, pass: c.pass }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsSpectrumTag {
    AllReal = 0,
    ConjugatePaired = 1,
    Mixed = 2,
    Unpairable = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PsAlgebraReport {
    pub q_squared: PsCheck,
    pub q_sharp_squared: PsCheck,
    pub anticommutator: PsCheck,
    pub tau_q: PsCheck,
    pub eta_tau: PsCheck,
    pub q_h: PsCheck,
    pub intertwining: PsCheck,
    pub intertwining_sharp: PsCheck,
    pub pseudo_hermiticity: PsCheck,
    pub pass: bool,
}

/// Integer part of the Witten-index report. `index_d_identity` is -1 when
/// the kernels contain null vectors and the identity does not apply.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PsWittenReport {
    pub d0_plus: u64,
    pub d0_minus: u64,
    pub delta: i64,
    pub ker_d: u64,
    pub ker_d_dagger: u64,
    pub betti_plus: i64,
    pub betti_minus: i64,
    pub non_null_kernels: bool,
    pub betti_identity: bool,
    pub index_d_identity: i32,
}

pub struct PsMatrix(ComplexMatrix);
pub struct PsSystem(BiorthonormalSystem);
pub struct PsEta(EtaOperator);
pub struct PsFactorization(Factorization);
pub struct PsSusy(PseudoSusySystem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: PsStatus, msg: impl Into<String>) -> PsStatus {
    set_error(msg.into());
    status
}

/// Run `f`, turning library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), PsStatus>) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(PsStatus::Panic, "internal panic"),
    }
}

fn lib(e: Error) -> PsStatus {
    let status = PsStatus::from(&e);
    fail(status, e.to_string())
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, PsStatus> {
    p.as_ref().ok_or_else(|| fail(PsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, PsStatus> {
    p.as_mut().ok_or_else(|| fail(PsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn tolerance(p: *const PsTolerance) -> Result<Tolerance, PsStatus> {
    match p.as_ref() {
        None => Ok(Tolerance::default()),
        Some(t) => Tolerance::new(t.rtol, t.atol, t.cond_max).map_err(lib),
    }
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ps_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL; 0
/// when no error has been recorded.
#[no_mangle]
pub unsafe extern "C" fn ps_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

#[no_mangle]
pub extern "C" fn ps_tolerance_default() -> PsTolerance {
    let t = Tolerance::default();
    PsTolerance { rtol: t.rtol, atol: t.atol, cond_max: t.cond_max }
}

// Matrices

/// Build a `rows × cols` matrix from `rows*cols` row-major entries.
#[no_mangle]
pub unsafe extern "C" fn ps_matrix_new(
    rows: usize,
    cols: usize,
    entries: *const PsComplex,
    result: *mut *mut PsMatrix,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let n = rows.checked_mul(cols).ok_or_else(|| fail(PsStatus::InvalidArgument, "size overflows"))?;
        if n > 0 && entries.is_null() {
            return Err(fail(PsStatus::NullPointer, "entries is null"));
        }
        let values: Vec<C64> =
            if n == 0 { Vec::new() } else { std::slice::from_raw_parts(entries, n).iter().map(|&z| z.into()).collect() };
        let m = ComplexMatrix::from_row_major(rows, cols, &values).map_err(lib)?;
        *result = boxed(PsMatrix(m));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_matrix_free(m: *mut PsMatrix) {
    free(m)
}

#[no_mangle]
pub unsafe extern "C" fn ps_matrix_rows(m: *const PsMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

#[no_mangle]
pub unsafe extern "C" fn ps_matrix_cols(m: *const PsMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Copy the entries row-major into `buf`, which must hold `rows*cols` values.
#[no_mangle]
pub unsafe extern "C" fn ps_matrix_entries(m: *const PsMatrix, buf: *mut PsComplex, len: usize) -> PsStatus {
    guard(|| {
        let m = get(m, "matrix")?;
        let values = m.0.to_row_major();
        if len < values.len() {
            return Err(fail(PsStatus::BufferTooSmall, format!("need {} entries, got {len}", values.len())));
        }
        if !values.is_empty() {
            if buf.is_null() {
                return Err(fail(PsStatus::NullPointer, "buf is null"));
            }
            let dst = std::slice::from_raw_parts_mut(buf, values.len());
            for (d, v) in dst.iter_mut().zip(values) {
                *d = v.into();
            }
        }
        Ok(())
    })
}

// Spectral decomposition

#[no_mangle]
pub unsafe extern "C" fn ps_decompose(
    h: *const PsMatrix,
    tol: *const PsTolerance,
    result: *mut *mut PsSystem,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let h = get(h, "h")?;
        let sys = decompose(&h.0, &tolerance(tol)?).map_err(lib)?;
        *result = boxed(PsSystem(sys));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_system_free(s: *mut PsSystem) {
    free(s)
}

#[no_mangle]
pub unsafe extern "C" fn ps_system_dim(s: *const PsSystem) -> usize {
    s.as_ref().map_or(0, |s| s.0.dim())
}

/// Eigenvalue of each column of Ψ, `dim` values.
#[no_mangle]
pub unsafe extern "C" fn ps_system_eigenvalues(s: *const PsSystem, buf: *mut PsComplex, len: usize) -> PsStatus {
    guard(|| {
        let s = get(s, "system")?;
        let values = s.0.column_values();
        if len < values.len() {
            return Err(fail(PsStatus::BufferTooSmall, format!("need {} values, got {len}", values.len())));
        }
        if !values.is_empty() {
            let dst = out(buf, "buf")?;
            let dst = std::slice::from_raw_parts_mut(dst, values.len());
            for (d, v) in dst.iter_mut().zip(values) {
                *d = v.into();
            }
        }
        Ok(())
    })
}

/// Right eigenvectors Ψ (`which = 0`) or dual vectors Φ (`which = 1`).
#[no_mangle]
pub unsafe extern "C" fn ps_system_basis(s: *const PsSystem, which: i32, result: *mut *mut PsMatrix) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let s = get(s, "system")?;
        let m = match which {
            0 => s.0.psi().clone(),
            1 => s.0.phi().clone(),
            _ => return Err(fail(PsStatus::InvalidArgument, format!("which must be 0 or 1, got {which}"))),
        };
        *result = boxed(PsMatrix(m));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_classify_spectrum(
    s: *const PsSystem,
    tol: *const PsTolerance,
    tag: *mut PsSpectrumTag,
) -> PsStatus {
    guard(|| {
        let tag = out(tag, "tag")?;
        let s = get(s, "system")?;
        *tag = match classify_spectrum(&s.0, &tolerance(tol)?).tag {
            SpectrumTag::AllReal => PsSpectrumTag::AllReal,
            SpectrumTag::ConjugatePaired => PsSpectrumTag::ConjugatePaired,
            SpectrumTag::Mixed => PsSpectrumTag::Mixed,
            SpectrumTag::Unpairable => PsSpectrumTag::Unpairable,
        };
        Ok(())
    })
}

// Metrics

/// Canonical metric of `s`. `signs` holds ±1 per real eigenvector in column
/// order; pass NULL for all +1.
#[no_mangle]
pub unsafe extern "C" fn ps_canonical_eta(
    s: *const PsSystem,
    signs: *const i32,
    n_signs: usize,
    tol: *const PsTolerance,
    result: *mut *mut PsEta,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let s = get(s, "system")?;
        let tol = tolerance(tol)?;
        let assignment = if signs.is_null() {
            SignAssignment::all_positive(&s.0)
        } else {
            SignAssignment::from_flat(&s.0, std::slice::from_raw_parts(signs, n_signs)).map_err(lib)?
        };
        let eta = canonical_eta(&s.0, &assignment, &tol).map_err(lib)?;
        *result = boxed(PsEta(eta));
        Ok(())
    })
}

/// Wrap a Hermitian invertible matrix as a metric.
#[no_mangle]
pub unsafe extern "C" fn ps_eta_from_matrix(
    m: *const PsMatrix,
    tol: *const PsTolerance,
    result: *mut *mut PsEta,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let m = get(m, "matrix")?;
        let eta = EtaOperator::new(m.0.clone(), &tolerance(tol)?).map_err(lib)?;
        *result = boxed(PsEta(eta));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_eta_free(e: *mut PsEta) {
    free(e)
}

/// η (`inverse = false`) or η⁻¹ (`inverse = true`) as a new matrix.
#[no_mangle]
pub unsafe extern "C" fn ps_eta_matrix(e: *const PsEta, inverse: bool, result: *mut *mut PsMatrix) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let e = get(e, "eta")?;
        let m = if inverse { e.0.inverse() } else { e.0.matrix() };
        *result = boxed(PsMatrix(m.clone()));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_verify_pseudo_hermiticity(
    h: *const PsMatrix,
    e: *const PsEta,
    tol: *const PsTolerance,
    check: *mut PsCheck,
) -> PsStatus {
    guard(|| {
        let check = out(check, "check")?;
        let (h, e) = (get(h, "h")?, get(e, "eta")?);
        *check = verify_pseudo_hermiticity(&h.0, &e.0, &tolerance(tol)?).map_err(lib)?.into();
        Ok(())
    })
}

// Factorization

/// `H₁ = L♯L`, `H₂ = LL♯` for isospectral `s1`, `s2`.
#[no_mangle]
pub unsafe extern "C" fn ps_canonical_factorization(
    s1: *const PsSystem,
    s2: *const PsSystem,
    tol: *const PsTolerance,
    result: *mut *mut PsFactorization,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let (s1, s2) = (get(s1, "s1")?, get(s2, "s2")?);
        let f = canonical_factorization(&s1.0, &s2.0, &tolerance(tol)?).map_err(lib)?;
        *result = boxed(PsFactorization(f));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_self_factorization(
    s: *const PsSystem,
    tol: *const PsTolerance,
    result: *mut *mut PsFactorization,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let s = get(s, "system")?;
        let f = self_factorization(&s.0, &tolerance(tol)?).map_err(lib)?;
        *result = boxed(PsFactorization(f));
        Ok(())
    })
}

/// Closed-form factorization of `[[a, b], [c, -a]]`. `energy` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ps_two_level_factorization(
    a: PsComplex,
    b: PsComplex,
    c: PsComplex,
    tol: *const PsTolerance,
    energy: *mut PsComplex,
    result: *mut *mut PsFactorization,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let t = two_level_factorization(&TwoLevelParams::new(a.into(), b.into(), c.into()), &tolerance(tol)?)
            .map_err(lib)?;
        if let Some(e) = energy.as_mut() {
            *e = t.energy.into();
        }
        *result = boxed(PsFactorization(t.factorization));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_factorization_free(f: *mut PsFactorization) {
    free(f)
}

/// L (`sharp = false`) or L♯ (`sharp = true`) as a new matrix.
#[no_mangle]
pub unsafe extern "C" fn ps_factorization_l(
    f: *const PsFactorization,
    sharp: bool,
    result: *mut *mut PsMatrix,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let f = get(f, "factorization")?;
        let m = if sharp { &f.0.l_sharp } else { f.0.l() };
        *result = boxed(PsMatrix(m.clone()));
        Ok(())
    })
}

/// `‖L♯L − H₁‖` and `‖LL♯ − H₂‖` with their thresholds. Either out pointer
/// may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ps_factorization_residuals(
    f: *const PsFactorization,
    h1: *mut PsCheck,
    h2: *mut PsCheck,
) -> PsStatus {
    guard(|| {
        let f = get(f, "factorization")?;
        if let Some(h1) = h1.as_mut() {
            *h1 = f.0.residual_h1.into();
        }
        if let Some(h2) = h2.as_mut() {
            *h2 = f.0.residual_h2.into();
        }
        Ok(())
    })
}

// Pseudo-supersymmetric systems

/// Assemble from `D : H₊ → H₋`. NULL metrics mean the identity.
#[no_mangle]
pub unsafe extern "C" fn ps_susy_assemble(
    d: *const PsMatrix,
    eta_plus: *const PsEta,
    eta_minus: *const PsEta,
    result: *mut *mut PsSusy,
) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let d = get(d, "d")?;
        let ep = eta_plus.as_ref().map_or_else(|| EtaOperator::identity(d.0.cols()), |e| e.0.clone());
        let em = eta_minus.as_ref().map_or_else(|| EtaOperator::identity(d.0.rows()), |e| e.0.clone());
        let p = assemble(&d.0, &ep, &em).map_err(lib)?;
        *result = boxed(PsSusy(p));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_susy_from_factorization(f: *const PsFactorization, result: *mut *mut PsSusy) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let f = get(f, "factorization")?;
        *result = boxed(PsSusy(from_factorization(&f.0).map_err(lib)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_susy_free(p: *mut PsSusy) {
    free(p)
}

/// The full Hamiltonian `H = diag(H₊, H₋)` as a new matrix.
#[no_mangle]
pub unsafe extern "C" fn ps_susy_hamiltonian(p: *const PsSusy, result: *mut *mut PsMatrix) -> PsStatus {
    guard(|| {
        let result = out(result, "result")?;
        let p = get(p, "system")?;
        *result = boxed(PsMatrix(p.0.h().clone()));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_susy_verify_algebra(
    p: *const PsSusy,
    tol: *const PsTolerance,
    report: *mut PsAlgebraReport,
) -> PsStatus {
    guard(|| {
        let report = out(report, "report")?;
        let p = get(p, "system")?;
        let a = verify_algebra(&p.0, &tolerance(tol)?);
        *report = PsAlgebraReport {
            q_squared: a.q_squared.into(),
            q_sharp_squared: a.q_sharp_squared.into(),
            anticommutator: a.anticommutator.into(),
            tau_q: a.tau_q.into(),
            eta_tau: a.eta_tau.into(),
            q_h: a.q_h.into(),
            intertwining: a.intertwining.into(),
            intertwining_sharp: a.intertwining_sharp.into(),
            pseudo_hermiticity: a.pseudo_hermiticity.into(),
            pass: a.pass,
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ps_susy_witten_index(
    p: *const PsSusy,
    tol: *const PsTolerance,
    report: *mut PsWittenReport,
) -> PsStatus {
    guard(|| {
        let report = out(report, "report")?;
        let p = get(p, "system")?;
        let w = witten_index(&p.0, &tolerance(tol)?);
        *report = PsWittenReport {
            d0_plus: w.d0_plus as u64,
            d0_minus: w.d0_minus as u64,
            delta: w.delta,
            ker_d: w.ker_d as u64,
            ker_d_dagger: w.ker_d_dagger as u64,
            betti_plus: w.betti_plus,
            betti_minus: w.betti_minus,
            non_null_kernels: w.non_null_kernels,
            betti_identity: w.betti_identity,
            index_d_identity: w.index_d_identity.map_or(-1, i32::from),
        };
        Ok(())
    })
}
