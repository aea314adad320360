use std::ptr;

use pseudosusy_ffi::*;

fn z(re: f64, im: f64) -> PsComplex {
    PsComplex { re, im }
}

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    let n = unsafe { ps_last_error_message(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

unsafe fn matrix(rows: usize, cols: usize, entries: &[PsComplex]) -> *mut PsMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(ps_matrix_new(rows, cols, entries.as_ptr(), &mut m), PsStatus::Ok);
    m
}

unsafe fn entries(m: *const PsMatrix) -> Vec<PsComplex> {
    let mut buf = vec![z(0.0, 0.0); ps_matrix_rows(m) * ps_matrix_cols(m)];
    assert_eq!(ps_matrix_entries(m, buf.as_mut_ptr(), buf.len()), PsStatus::Ok);
    buf
}

#[test]
fn matrices_round_trip() {
    unsafe {
        let src = [z(1.0, 2.0), z(-0.5, 0.0), z(0.0, 3.0), z(4.0, -1.0), z(0.0, 0.0), z(7.0, 7.0)];
        let m = matrix(2, 3, &src);
        assert_eq!((ps_matrix_rows(m), ps_matrix_cols(m)), (2, 3));
        assert_eq!(entries(m), src);
        let mut small = [z(0.0, 0.0); 2];
        assert_eq!(ps_matrix_entries(m, small.as_mut_ptr(), 2), PsStatus::BufferTooSmall);
        ps_matrix_free(m);
    }
}

#[test]
fn null_and_invalid_inputs_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(ps_matrix_new(2, 2, ptr::null(), &mut out), PsStatus::NullPointer);
        assert!(out.is_null());
        assert_eq!(ps_decompose(ptr::null(), ptr::null(), &mut ptr::null_mut()), PsStatus::NullPointer);
        assert!(last_error().contains("null"));

        let nan = [z(f64::NAN, 0.0)];
        assert_eq!(ps_matrix_new(1, 1, nan.as_ptr(), &mut out), PsStatus::NonFinite);

        let m = matrix(1, 2, &[z(1.0, 0.0), z(2.0, 0.0)]);
        let mut sys = ptr::null_mut();
        assert_eq!(ps_decompose(m, ptr::null(), &mut sys), PsStatus::NotSquare);
        assert!(sys.is_null());
        ps_matrix_free(m);

        let bad_tol = PsTolerance { rtol: -1.0, ..ps_tolerance_default() };
        let h = matrix(1, 1, &[z(1.0, 0.0)]);
        assert_eq!(ps_decompose(h, &bad_tol, &mut sys), PsStatus::InvalidTolerance);
        ps_matrix_free(h);
    }
}

#[test]
fn jordan_block_is_not_diagonalizable() {
    unsafe {
        let h = matrix(2, 2, &[z(0.0, 0.0), z(1.0, 0.0), z(0.0, 0.0), z(0.0, 0.0)]);
        let mut sys = ptr::null_mut();
        assert_eq!(ps_decompose(h, ptr::null(), &mut sys), PsStatus::NonDiagonalizable);
        assert!(!last_error().is_empty());
        ps_matrix_free(h);
    }
}

#[test]
fn oscillator_through_the_abi() {
    unsafe {
        let w = 2.0f64;
        let h = matrix(2, 2, &[z(0.0, 0.0), z(0.0, 1.0), z(0.0, -w * w), z(0.0, 0.0)]);
        let tol = ps_tolerance_default();
        let mut sys = ptr::null_mut();
        assert_eq!(ps_decompose(h, &tol, &mut sys), PsStatus::Ok);
        assert_eq!(ps_system_dim(sys), 2);
        let mut values = [z(0.0, 0.0); 2];
        assert_eq!(ps_system_eigenvalues(sys, values.as_mut_ptr(), 2), PsStatus::Ok);
        assert!((values[0].re + w).abs() < 1e-12 && (values[1].re - w).abs() < 1e-12);
        let mut tag = PsSpectrumTag::Unpairable;
        assert_eq!(ps_classify_spectrum(sys, &tol, &mut tag), PsStatus::Ok);
        assert_eq!(tag, PsSpectrumTag::AllReal);

        let signs = [-1i32, 1];
        let mut eta = ptr::null_mut();
        assert_eq!(ps_canonical_eta(sys, signs.as_ptr(), 2, &tol, &mut eta), PsStatus::Ok);
        let mut check = PsCheck::default();
        assert_eq!(ps_verify_pseudo_hermiticity(h, eta, &tol, &mut check), PsStatus::Ok);
        assert!(check.pass);
        assert_eq!(ps_canonical_eta(sys, signs.as_ptr(), 1, &tol, &mut eta), PsStatus::InvalidSigns);

        let mut f = ptr::null_mut();
        assert_eq!(ps_self_factorization(sys, &tol, &mut f), PsStatus::Ok);
        let (mut r1, mut r2) = (PsCheck::default(), PsCheck::default());
        assert_eq!(ps_factorization_residuals(f, &mut r1, &mut r2), PsStatus::Ok);
        assert!(r1.pass && r2.pass);

        let mut susy = ptr::null_mut();
        assert_eq!(ps_susy_from_factorization(f, &mut susy), PsStatus::Ok);
        let mut alg = PsAlgebraReport::default();
        assert_eq!(ps_susy_verify_algebra(susy, &tol, &mut alg), PsStatus::Ok);
        assert!(alg.pass);
        assert_eq!(alg.q_squared.residual, 0.0);

        ps_susy_free(susy);
        ps_factorization_free(f);
        ps_eta_free(eta);
        ps_system_free(sys);
        ps_matrix_free(h);
    }
}

#[test]
fn two_level_closed_form() {
    unsafe {
        let mut f = ptr::null_mut();
        let mut e = z(0.0, 0.0);
        let st = ps_two_level_factorization(z(0.0, 0.0), z(1.0, 0.0), z(-1.0, 0.0), ptr::null(), &mut e, &mut f);
        assert_eq!(st, PsStatus::Ok);
        assert!((e.re).abs() < 1e-15 && (e.im - 1.0).abs() < 1e-15);
        let mut l = ptr::null_mut();
        assert_eq!(ps_factorization_l(f, false, &mut l), PsStatus::Ok);
        assert_eq!((ps_matrix_rows(l), ps_matrix_cols(l)), (2, 2));
        ps_matrix_free(l);
        ps_factorization_free(f);

        let st = ps_two_level_factorization(z(1.0, 1.0), z(1.0, 0.0), z(0.0, 0.0), ptr::null(), ptr::null_mut(), &mut f);
        assert_eq!(st, PsStatus::NonRealDeterminant);
    }
}

#[test]
fn witten_index_of_rectangular_map() {
    unsafe {
        // Full-rank 2x3: one-dimensional kernel, trivial cokernel.
        let d = matrix(2, 3, &[z(1.0, 0.0), z(0.0, 0.0), z(2.0, 1.0), z(0.0, 0.0), z(1.0, 0.0), z(0.0, -1.0)]);
        let mut susy = ptr::null_mut();
        assert_eq!(ps_susy_assemble(d, ptr::null(), ptr::null(), &mut susy), PsStatus::Ok);
        let mut w = PsWittenReport::default();
        assert_eq!(ps_susy_witten_index(susy, ptr::null(), &mut w), PsStatus::Ok);
        assert_eq!((w.d0_plus, w.d0_minus, w.delta), (1, 0, 1));
        assert_eq!((w.ker_d, w.ker_d_dagger), (1, 0));
        assert!(w.betti_identity);
        assert_eq!(w.index_d_identity, 1);
        let mut h = ptr::null_mut();
        assert_eq!(ps_susy_hamiltonian(susy, &mut h), PsStatus::Ok);
        assert_eq!(ps_matrix_rows(h), 5);
        ps_matrix_free(h);
        ps_susy_free(susy);
        ps_matrix_free(d);
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(ps_matrix_new(1, 1, ptr::null(), &mut out), PsStatus::NullPointer);
    }
    let other = std::thread::spawn(|| unsafe { ps_last_error_message(ptr::null_mut(), 0) }).join().unwrap();
    assert_eq!(other, 0);
    assert!(unsafe { ps_last_error_message(ptr::null_mut(), 0) } > 0);
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { std::ffi::CStr::from_ptr(ps_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
