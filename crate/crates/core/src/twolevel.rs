//! Closed forms for traceless two-level Hamiltonians `[[a, b], [c, −a]]`.
//!
//! Eigenvalues are `∓E` with `E = √(a² + bc)`, `Re E ≥ 0`. A real determinant
//! `−E²` means `E` is real (Case I) or purely imaginary (Case II).

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::intertwiner::{
    canonical_factorization, verify_intertwining, Factorization, Intertwiner, MatchedClusters,
    SpectralPairing,
};
use crate::numkernel::{ComplexMatrix, Tolerance, C64};
use crate::pseudoherm::{verify_pseudo_hermiticity, EtaOperator, SignAssignment};
use crate::spectral::{verify_biorthonormality, BiorthonormalSystem, BiorthonormalityReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl TwoLevelParams {
    pub fn new(a: C64, b: C64, c: C64) -> Self {
        Self { a, b, c }
    }

    pub fn hamiltonian(&self) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[&[self.a, self.b], &[self.c, -self.a]])
            .expect("finite parameters give a finite matrix")
    }

    /// `det H = −a² − bc = −E²`.
    pub fn determinant(&self) -> C64 {
        -self.a * self.a - self.b * self.c
    }

    /// Principal root with `Re E ≥ 0`; on the imaginary axis (within
    /// `atol·(1+|E|)`) the root with `Im E ≥ 0`.
    pub fn energy(&self, tol: &Tolerance) -> C64 {
        let mut e = (self.a * self.a + self.b * self.c).sqrt();
        if e.re < 0.0 {
            e = -e;
        }
        if e.re.abs() <= tol.atol * (1.0 + e.norm()) && e.im < 0.0 {
            e = -e;
        }
        e
    }

    fn rotated(&self, u: &ComplexMatrix) -> Self {
        let h = u.adjoint() * self.hamiltonian() * u;
        Self::new(h[(0, 0)], h[(0, 1)], h[(1, 0)])
    }

    fn check_finite(&self) -> Result<()> {
        for (i, z) in [self.a, self.b, self.c].iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: i, col: 0 });
            }
        }
        Ok(())
    }
}

/// Split off half the trace: `H = params + shift·I`.
pub fn normalize_traceless(h: &ComplexMatrix, tol: &Tolerance) -> Result<(TwoLevelParams, C64)> {
    if h.shape() != (2, 2) {
        return Err(Error::DimensionMismatch(format!(
            "two-level Hamiltonian must be 2x2, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let shift = h.trace() / 2.0;
    let params = TwoLevelParams::new(h[(0, 0)] - shift, h[(0, 1)], h[(1, 0)]);
    if is_degenerate(&params, tol) {
        return Err(Error::DegenerateTwoLevel);
    }
    Ok((params, shift))
}

fn is_degenerate(p: &TwoLevelParams, tol: &Tolerance) -> bool {
    p.energy(tol).norm() <= tol.cluster(p.hamiltonian().norm())
}

fn rotation_candidates() -> [ComplexMatrix; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [
        ComplexMatrix::from_real_rows(&[&[s, -s], &[s, s]]).unwrap(),
        ComplexMatrix::from_rows(&[&[C64::new(s, 0.0), C64::new(0.0, s)], &[C64::new(0.0, s), C64::new(s, 0.0)]])
            .unwrap(),
    ]
}

/// Closed-form eigenvectors, columns ordered `(−E, +E)`:
/// `ψ₁ = (−b, a+E)`, `ψ₂ = (a+E, c)`, `φ₁ = (−c*, a*+E*)/N*`,
/// `φ₂ = (a*+E*, b*)/N*` with `N = 2E(a+E)`.
///
/// When `|a+E| < |E|/2` the formulas are ill-conditioned, so the basis is
/// first rotated by whichever fixed unitary maximizes `|a+E|`.
pub fn closed_form_system(params: &TwoLevelParams, tol: &Tolerance) -> Result<BiorthonormalSystem> {
    tol.validate()?;
    params.check_finite()?;
    if is_degenerate(params, tol) {
        return Err(Error::DegenerateTwoLevel);
    }
    let e = params.energy(tol);
    let mut u = ComplexMatrix::identity(2);
    let mut p = *params;
    if (p.a + e).norm() < 0.5 * e.norm() {
        for cand in rotation_candidates() {
            let q = params.rotated(&cand);
            if (q.a + e).norm() > (p.a + e).norm() {
                p = q;
                u = cand;
            }
        }
    }
    let ae = p.a + e;
    let n = (e * ae * 2.0).conj();
    let psi = ComplexMatrix::from_rows(&[&[-p.b, ae], &[ae, p.c]]).unwrap();
    let phi = ComplexMatrix::from_rows(&[&[-p.c.conj() / n, ae.conj() / n], &[ae.conj() / n, p.b.conj() / n]]).unwrap();
    let sys = BiorthonormalSystem::from_parts(&[(-e, 1), (e, 1)], &u * psi, &u * phi, tol)?;
    Ok(sys.with_hamiltonian(params.hamiltonian()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwoLevelCase {
    /// `E` real and positive.
    RealEnergy,
    /// `E` purely imaginary.
    ImaginaryEnergy,
}

#[derive(Debug, Clone)]
pub struct TwoLevelFactorization {
    pub case: TwoLevelCase,
    pub energy: C64,
    pub system: BiorthonormalSystem,
    pub factorization: Factorization,
}

/// Explicit Case I / Case II factorization `H = L♯L = LL♯`.
pub fn two_level_factorization(params: &TwoLevelParams, tol: &Tolerance) -> Result<TwoLevelFactorization> {
    let system = closed_form_system(params, tol)?;
    let e = params.energy(tol);
    let slack = tol.atol * (1.0 + e.norm());
    let case = if e.im.abs() <= slack {
        TwoLevelCase::RealEnergy
    } else if e.re.abs() <= slack {
        TwoLevelCase::ImaginaryEnergy
    } else {
        return Err(Error::NonRealDeterminant { re: e.re, im: e.im });
    };
    let (psi1, psi2) = (system.psi().column(0), system.psi().column(1));
    let (phi1, phi2) = (system.phi().column(0), system.phi().column(1));
    let out = |u: &[C64], v: &[C64]| ComplexMatrix::outer(u, v);
    let (l, alpha, eta1, eta2) = match case {
        TwoLevelCase::RealEnergy => {
            let root = C64::new(e.re.sqrt(), 0.0);
            let signs = SignAssignment::from_flat(&system, &[-1, 1])?;
            let eta1 = EtaOperator::from_parts(
                out(&phi2, &phi2) - out(&phi1, &phi1),
                out(&psi2, &psi2) - out(&psi1, &psi1),
                Some(signs),
            );
            let eta2 = EtaOperator::from_parts(
                out(&phi1, &phi1) + out(&phi2, &phi2),
                out(&psi1, &psi1) + out(&psi2, &psi2),
                Some(SignAssignment::all_positive(&system)),
            );
            (ComplexMatrix::identity(2).scale(root), vec![root, root], eta1, eta2)
        }
        TwoLevelCase::ImaginaryEnergy => {
            let swap = EtaOperator::from_parts(
                out(&phi1, &phi2) + out(&phi2, &phi1),
                out(&psi1, &psi2) + out(&psi2, &psi1),
                Some(SignAssignment::all_positive(&system)),
            );
            let l = out(&psi1, &phi1) + out(&psi2, &phi2).scale(e);
            (l, vec![C64::new(1.0, 0.0), e], swap.clone(), swap)
        }
    };
    let components = vec![out(&psi1, &phi1), out(&psi2, &phi2)];
    let pairing = SpectralPairing {
        matched: (0..2).map(|i| MatchedClusters { source: i, target: i, mu: 1 }).collect(),
        unmatched_source_zero: None,
        unmatched_target_zero: None,
        tolerance: tol.cluster(system.scale()),
    };
    let h = params.hamiltonian();
    let cond = system.cond_psi();
    let threshold = tol.rtol * (1.0 + h.norm()) * cond * cond;
    let factorization = Factorization::from_parts(
        Intertwiner::from_parts(l, alpha, pairing, components),
        eta1,
        eta2,
        h.clone(),
        h,
        threshold,
    )?;
    Ok(TwoLevelFactorization {
        case,
        energy: e,
        system,
        factorization,
    })
}

fn oscillator_params(omega: f64) -> Result<TwoLevelParams> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidArgument(format!("omega must be positive and finite, got {omega}")));
    }
    Ok(TwoLevelParams::new(
        C64::new(0.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(0.0, -omega * omega),
    ))
}

/// `H_o = [[0, i], [−iω², 0]]`.
pub fn oscillator_hamiltonian(omega: f64) -> Result<ComplexMatrix> {
    Ok(oscillator_params(omega)?.hamiltonian())
}

#[derive(Debug, Clone)]
pub struct OscillatorReport {
    pub omega: f64,
    pub h_o: ComplexMatrix,
    pub psi: ComplexMatrix,
    pub phi: ComplexMatrix,
    pub eta1: ComplexMatrix,
    pub eta1_inverse: ComplexMatrix,
    pub eta2: ComplexMatrix,
    pub l: ComplexMatrix,
    pub l_sharp: ComplexMatrix,
    pub biorthonormality: BiorthonormalityReport,
    /// `‖L♯L − H_o‖`
    pub l_sharp_l: Check,
    /// `‖LL♯ − H_o‖`
    pub l_l_sharp: Check,
    pub pseudo_hermiticity_eta1: Check,
    pub pseudo_hermiticity_eta2: Check,
}

/// Case I factorization of the oscillator with `L = √ω·I`.
pub fn oscillator_demo(omega: f64, tol: &Tolerance) -> Result<OscillatorReport> {
    let params = oscillator_params(omega)?;
    let t = two_level_factorization(&params, tol)?;
    let f = &t.factorization;
    let h_o = params.hamiltonian();
    Ok(OscillatorReport {
        omega,
        psi: t.system.psi().clone(),
        phi: t.system.phi().clone(),
        eta1: f.eta1.matrix().clone(),
        eta1_inverse: f.eta1.inverse().clone(),
        eta2: f.eta2.matrix().clone(),
        l: f.l().clone(),
        l_sharp: f.l_sharp.clone(),
        biorthonormality: verify_biorthonormality(&t.system, tol),
        l_sharp_l: f.residual_h1,
        l_l_sharp: f.residual_h2,
        pseudo_hermiticity_eta1: verify_pseudo_hermiticity(&h_o, &f.eta1, tol)?,
        pseudo_hermiticity_eta2: verify_pseudo_hermiticity(&h_o, &f.eta2, tol)?,
        h_o,
    })
}

/// `H_s = diag(ω, −ω)` with the standard basis as its biorthonormal system.
pub fn spin_system(omega: f64, tol: &Tolerance) -> Result<BiorthonormalSystem> {
    oscillator_params(omega)?;
    let basis = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])?;
    let w = C64::new(omega, 0.0);
    BiorthonormalSystem::from_parts(&[(-w, 1), (w, 1)], basis.clone(), basis, tol)
}

#[derive(Debug, Clone)]
pub struct SpinReport {
    pub omega: f64,
    pub h_o: ComplexMatrix,
    pub h_s: ComplexMatrix,
    pub eta1: ComplexMatrix,
    pub eta2: ComplexMatrix,
    pub l: ComplexMatrix,
    pub l_sharp: ComplexMatrix,
    /// `‖L♯L − H_o‖`
    pub l_sharp_l: Check,
    /// `‖LL♯ − H_s‖`
    pub l_l_sharp: Check,
    /// `‖L H_o − H_s L‖`
    pub intertwining: Check,
    pub factorization: Factorization,
}

/// Intertwine the oscillator with the spin Hamiltonian.
pub fn spin_intertwine_demo(omega: f64, tol: &Tolerance) -> Result<SpinReport> {
    let params = oscillator_params(omega)?;
    let osc = closed_form_system(&params, tol)?;
    let spin = spin_system(omega, tol)?;
    let f = canonical_factorization(&osc, &spin, tol)?;
    let h_o = params.hamiltonian();
    let h_s = spin.hamiltonian().clone();
    let intertwining = Check::new(verify_intertwining(f.l(), &h_o, &h_s)?, f.residual_h1.threshold);
    Ok(SpinReport {
        omega,
        eta1: f.eta1.matrix().clone(),
        eta2: f.eta2.matrix().clone(),
        l: f.l().clone(),
        l_sharp: f.l_sharp.clone(),
        l_sharp_l: f.residual_h1,
        l_l_sharp: f.residual_h2,
        intertwining,
        h_o,
        h_s,
        factorization: f,
    })
}
