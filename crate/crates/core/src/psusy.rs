//! Two-component pseudo-supersymmetric systems built from a map `D` between
//! a `+` and a `−` sector, their algebra, and the Witten index.
//!
//! Block layout is `+` sector first: `τ = diag(I, −I)`, `Q = [[0, 0], [D, 0]]`.

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::intertwiner::Factorization;
use crate::numkernel::{hermitian_eigenvalues, kernel_basis, range_basis, rank, ComplexMatrix, Tolerance, C64};
use crate::pseudoherm::{pseudo_adjoint, EtaOperator};

#[derive(Debug, Clone)]
pub struct PseudoSusySystem {
    d: ComplexMatrix,
    d_sharp: ComplexMatrix,
    eta_plus: EtaOperator,
    eta_minus: EtaOperator,
    h_plus: ComplexMatrix,
    h_minus: ComplexMatrix,
    tau: ComplexMatrix,
    q: ComplexMatrix,
    q_sharp: ComplexMatrix,
    h: ComplexMatrix,
    eta: EtaOperator,
}

impl PseudoSusySystem {
    pub fn d(&self) -> &ComplexMatrix {
        &self.d
    }
    pub fn d_sharp(&self) -> &ComplexMatrix {
        &self.d_sharp
    }
    pub fn eta_plus(&self) -> &EtaOperator {
        &self.eta_plus
    }
    pub fn eta_minus(&self) -> &EtaOperator {
        &self.eta_minus
    }
    pub fn h_plus(&self) -> &ComplexMatrix {
        &self.h_plus
    }
    pub fn h_minus(&self) -> &ComplexMatrix {
        &self.h_minus
    }
    pub fn tau(&self) -> &ComplexMatrix {
        &self.tau
    }
    pub fn q(&self) -> &ComplexMatrix {
        &self.q
    }
    pub fn q_sharp(&self) -> &ComplexMatrix {
        &self.q_sharp
    }
    pub fn h(&self) -> &ComplexMatrix {
        &self.h
    }
    pub fn eta(&self) -> &EtaOperator {
        &self.eta
    }

    /// Dimensions of the `+` and `−` sectors.
    pub fn sectors(&self) -> (usize, usize) {
        (self.d.cols(), self.d.rows())
    }

    /// The equivalent system `D → S₋ D S₊⁻¹` with metrics `η± → S±⁻† η± S±⁻¹`.
    pub fn transformed(&self, s_plus: &ComplexMatrix, s_minus: &ComplexMatrix) -> Result<Self> {
        let (np, nm) = self.sectors();
        if s_plus.shape() != (np, np) || s_minus.shape() != (nm, nm) {
            return Err(Error::DimensionMismatch("transformation does not match sector sizes".into()));
        }
        let sp_inv = s_plus.inverse()?;
        let sm_inv = s_minus.inverse()?;
        let metric = |eta: &EtaOperator, s: &ComplexMatrix, s_inv: &ComplexMatrix| {
            let m = s_inv.adjoint() * eta.matrix() * s_inv;
            let m = (&m + &m.adjoint()).scale_real(0.5);
            let inv = s * eta.inverse() * s.adjoint();
            EtaOperator::from_parts(m, inv, None)
        };
        let d = s_minus * &self.d * &sp_inv;
        assemble(
            &d,
            &metric(&self.eta_plus, s_plus, &sp_inv),
            &metric(&self.eta_minus, s_minus, &sm_inv),
        )
    }
}

/// Build `H± = ½D♯D, ½DD♯` and the block operators `τ, Q, Q♯, H, η`.
pub fn assemble(d: &ComplexMatrix, eta_plus: &EtaOperator, eta_minus: &EtaOperator) -> Result<PseudoSusySystem> {
    let (nm, np) = d.shape();
    let d_sharp = pseudo_adjoint(d, eta_plus, eta_minus)?;
    let h_plus = (&d_sharp * d).scale_real(0.5);
    let h_minus = (d * &d_sharp).scale_real(0.5);
    let n = np + nm;
    let tau = ComplexMatrix::block_diagonal(&ComplexMatrix::identity(np), &ComplexMatrix::identity(nm).scale_real(-1.0));
    let q = ComplexMatrix::embed(n, n, np, 0, d);
    let q_sharp = ComplexMatrix::embed(n, n, 0, np, &d_sharp);
    let h = ComplexMatrix::block_diagonal(&h_plus, &h_minus);
    let eta = EtaOperator::from_parts(
        ComplexMatrix::block_diagonal(eta_plus.matrix(), eta_minus.matrix()),
        ComplexMatrix::block_diagonal(eta_plus.inverse(), eta_minus.inverse()),
        None,
    );
    Ok(PseudoSusySystem {
        d: d.clone(),
        d_sharp,
        eta_plus: eta_plus.clone(),
        eta_minus: eta_minus.clone(),
        h_plus,
        h_minus,
        tau,
        q,
        q_sharp,
        h,
        eta,
    })
}

/// `D = √2·L` with `η₊ = η₁`, `η₋ = η₂`, so that `H₊ = H₁` and `H₋ = H₂`.
pub fn from_factorization(fact: &Factorization) -> Result<PseudoSusySystem> {
    if !fact.pass() {
        return Err(Error::NumericalFailure(format!(
            "factorization residuals {:e}, {:e} exceed {:e}",
            fact.residual_h1.residual, fact.residual_h2.residual, fact.residual_h1.threshold
        )));
    }
    assemble(&fact.l().scale_real(std::f64::consts::SQRT_2), &fact.eta1, &fact.eta2)
}

fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    /// `‖Q²‖`, required to vanish exactly.
    pub q_squared: Check,
    /// `‖(Q♯)²‖`, required to vanish exactly.
    pub q_sharp_squared: Check,
    /// `‖{Q, Q♯} − 2H‖`
    pub anticommutator: Check,
    /// `‖{τ, Q}‖`, exact.
    pub tau_q: Check,
    /// `‖[η, τ]‖`, exact.
    pub eta_tau: Check,
    /// `‖[Q, H]‖`
    pub q_h: Check,
    /// `‖D H₊ − H₋ D‖`
    pub intertwining: Check,
    /// `‖D♯ H₋ − H₊ D♯‖`
    pub intertwining_sharp: Check,
    /// `‖η H η⁻¹ − H†‖`
    pub pseudo_hermiticity: Check,
    pub pass: bool,
}

/// Residual thresholds grow with the number of `Q` factors in the product.
fn algebra_scale(psys: &PseudoSusySystem) -> f64 {
    1.0 + psys.q.norm() + psys.q_sharp.norm()
}

pub fn verify_algebra(psys: &PseudoSusySystem, tol: &Tolerance) -> AlgebraReport {
    let s = algebra_scale(psys);
    let t2 = tol.rtol * s * s;
    let t3 = t2 * s;
    let p = psys;
    let q_squared = Check::new((&p.q * &p.q).norm(), 0.0);
    let q_sharp_squared = Check::new((&p.q_sharp * &p.q_sharp).norm(), 0.0);
    let anti = Check::new((anticommutator(&p.q, &p.q_sharp) - p.h.scale_real(2.0)).norm(), t2);
    let tau_q = Check::new(anticommutator(&p.tau, &p.q).norm(), 0.0);
    let eta_tau = Check::new(commutator(p.eta.matrix(), &p.tau).norm(), 0.0);
    let q_h = Check::new(commutator(&p.q, &p.h).norm(), t3);
    let intertwining = Check::new((&p.d * &p.h_plus - &p.h_minus * &p.d).norm(), t3);
    let intertwining_sharp = Check::new((&p.d_sharp * &p.h_minus - &p.h_plus * &p.d_sharp).norm(), t3);
    let pseudo_hermiticity = Check::new(
        (p.eta.matrix() * &p.h * p.eta.inverse() - p.h.adjoint()).norm(),
        t2 * p.eta.condition_number(),
    );
    let all = [
        q_squared,
        q_sharp_squared,
        anti,
        tau_q,
        eta_tau,
        q_h,
        intertwining,
        intertwining_sharp,
        pseudo_hermiticity,
    ];
    AlgebraReport {
        q_squared,
        q_sharp_squared,
        anticommutator: anti,
        tau_q,
        eta_tau,
        q_h,
        intertwining,
        intertwining_sharp,
        pseudo_hermiticity,
        pass: all.iter().all(|c| c.pass),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtendedAlgebraReport {
    /// `‖{Q_i, Q_j♯} − 2δ_ij H‖` for every ordered pair.
    pub mixed: Vec<PairCheck>,
    /// `‖{Q_i, Q_j}‖` for every ordered pair.
    pub nilpotent: Vec<PairCheck>,
    /// `‖{Q^α_i, Q^β_j} − 2δ_ij δ_αβ H‖`, indexed by `2i + α` and `2j + β`.
    pub hermitian_combinations: Vec<PairCheck>,
    pub pass: bool,
}

/// Several odd generators `Q_i` from maps `D_i`, sharing the metrics. `H`
/// is taken from the first generator.
pub fn verify_extended_algebra(
    generators: &[ComplexMatrix],
    eta_plus: &EtaOperator,
    eta_minus: &EtaOperator,
    tol: &Tolerance,
) -> Result<ExtendedAlgebraReport> {
    let systems = generators
        .iter()
        .map(|d| assemble(d, eta_plus, eta_minus))
        .collect::<Result<Vec<_>>>()?;
    let first = systems
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one generator is required".into()))?;
    let h2 = first.h.scale_real(2.0);
    let zero = ComplexMatrix::zeros(h2.rows(), h2.cols());
    let s = systems.iter().map(algebra_scale).fold(1.0, f64::max);
    let threshold = tol.rtol * s * s;
    let mut mixed = Vec::new();
    let mut nilpotent = Vec::new();
    for (i, a) in systems.iter().enumerate() {
        for (j, b) in systems.iter().enumerate() {
            let want = if i == j { &h2 } else { &zero };
            mixed.push(PairCheck {
                i,
                j,
                check: Check::new((anticommutator(&a.q, &b.q_sharp) - want).norm(), threshold),
            });
            nilpotent.push(PairCheck {
                i,
                j,
                check: Check::new(anticommutator(&a.q, &b.q).norm(), threshold),
            });
        }
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let combos: Vec<ComplexMatrix> = systems
        .iter()
        .flat_map(|p| {
            [
                (&p.q + &p.q_sharp).scale_real(inv_sqrt2),
                (&p.q - &p.q_sharp).scale(C64::new(0.0, -inv_sqrt2)),
            ]
        })
        .collect();
    let mut hermitian_combinations = Vec::new();
    for (x, a) in combos.iter().enumerate() {
        for (y, b) in combos.iter().enumerate() {
            let want = if x == y { &h2 } else { &zero };
            hermitian_combinations.push(PairCheck {
                i: x,
                j: y,
                check: Check::new((anticommutator(a, b) - want).norm(), threshold),
            });
        }
    }
    let pass = mixed
        .iter()
        .chain(&nilpotent)
        .chain(&hermitian_combinations)
        .all(|p| p.check.pass);
    Ok(ExtendedAlgebraReport {
        mixed,
        nilpotent,
        hermitian_combinations,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorNullity {
    pub kernel_dim: usize,
    /// Smallest `|λ|` of `K†ηK`; absent when the kernel is trivial.
    pub min_abs_eigenvalue: Option<f64>,
    pub threshold: f64,
    pub non_null: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullKernelReport {
    pub plus: SectorNullity,
    pub minus: SectorNullity,
}

impl NullKernelReport {
    pub fn non_null(&self) -> bool {
        self.plus.non_null && self.minus.non_null
    }
}

fn sector_nullity(k: &ComplexMatrix, eta: &EtaOperator, tol: &Tolerance) -> SectorNullity {
    let threshold = tol.atol * eta.matrix().norm();
    if k.cols() == 0 {
        return SectorNullity {
            kernel_dim: 0,
            min_abs_eigenvalue: None,
            threshold,
            non_null: true,
        };
    }
    let restricted = k.adjoint() * eta.matrix() * k;
    let min = hermitian_eigenvalues(&restricted)
        .iter()
        .map(|x| x.abs())
        .fold(f64::INFINITY, f64::min);
    SectorNullity {
        kernel_dim: k.cols(),
        min_abs_eigenvalue: Some(min),
        threshold,
        non_null: min > threshold,
    }
}

/// The metric restricted to each zero-energy sector must be non-degenerate.
pub fn null_kernel_check(psys: &PseudoSusySystem, tol: &Tolerance) -> NullKernelReport {
    NullKernelReport {
        plus: sector_nullity(&kernel_basis(&psys.h_plus, tol), &psys.eta_plus, tol),
        minus: sector_nullity(&kernel_basis(&psys.h_minus, tol), &psys.eta_minus, tol),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WittenReport {
    pub d0_plus: usize,
    pub d0_minus: usize,
    pub delta: i64,
    pub ker_d: usize,
    pub ker_d_dagger: usize,
    pub ker_d0: usize,
    pub ker_d0_flat: usize,
    pub rank_a_plus: usize,
    pub rank_a_minus: usize,
    pub betti_plus: i64,
    pub betti_minus: i64,
    pub analytic_index_sigma: i64,
    pub analytic_index_d: i64,
    pub non_null_kernels: bool,
    /// `D` maps `ker H₊` into `ker H₋`: `‖(I − K₋K₋†) D K₊‖`.
    pub kernel_map: Check,
    /// `D♯` maps `ker H₋` into `ker H₊`.
    pub kernel_map_sharp: Check,
    /// `‖A₋A₊‖`
    pub complex_plus: Check,
    /// `‖A₊A₋‖`
    pub complex_minus: Check,
    /// `Δ = b₊ − b₋`
    pub betti_identity: bool,
    /// `Δ = dim ker D − dim ker D†`; only asserted for non-null kernels.
    pub index_d_identity: Option<bool>,
}

pub fn witten_index(psys: &PseudoSusySystem, tol: &Tolerance) -> WittenReport {
    let (np, nm) = psys.sectors();
    let d = &psys.d;
    let k_plus = kernel_basis(&psys.h_plus, tol);
    let k_minus = kernel_basis(&psys.h_minus, tol);
    let (d0p, d0m) = (k_plus.cols(), k_minus.cols());

    let cond = psys.eta_plus.condition_number() * psys.eta_minus.condition_number();
    let guard = tol.rank_cutoff(np, nm, 1.0 + d.norm().max(psys.d_sharp.norm())) * cond;
    let leak = |k_out: &ComplexMatrix, m: &ComplexMatrix, k_in: &ComplexMatrix| {
        let image = m * k_in;
        let kept = k_out * (k_out.adjoint() * &image);
        Check::new((image - kept).norm(), guard)
    };
    let kernel_map = leak(&k_minus, d, &k_plus);
    let kernel_map_sharp = leak(&k_plus, &psys.d_sharp, &k_minus);

    let d0 = k_minus.adjoint() * d * &k_plus;
    let d0_flat = k_plus.adjoint() * &psys.d_sharp * &k_minus;
    let ker_d0 = d0p - rank(&d0, tol);
    let ker_d0_flat = d0m - rank(&d0_flat, tol);

    let k_tilde = range_basis(&(psys.eta_minus.matrix() * &k_minus), tol);
    let a_plus = k_tilde.adjoint() * psys.eta_minus.matrix() * d * &k_plus;
    let a_minus = k_plus.adjoint() * psys.eta_plus.inverse() * d.adjoint() * &k_tilde;
    let rank_a_plus = rank(&a_plus, tol);
    let rank_a_minus = rank(&a_minus, tol);
    let complex_plus = Check::new((&a_minus * &a_plus).norm(), guard * (1.0 + d.norm()));
    let complex_minus = Check::new((&a_plus * &a_minus).norm(), guard * (1.0 + d.norm()));

    let betti_plus = (d0p - rank_a_plus.min(d0p)) as i64 - rank_a_minus as i64;
    let betti_minus = (d0m - rank_a_minus.min(d0m)) as i64 - rank_a_plus as i64;
    let rank_d = rank(d, tol);
    let ker_d = np - rank_d;
    let ker_d_dagger = nm - rank_d;
    let delta = d0p as i64 - d0m as i64;
    let analytic_index_sigma = betti_plus - betti_minus;
    let analytic_index_d = ker_d as i64 - ker_d_dagger as i64;
    let non_null_kernels = null_kernel_check(psys, tol).non_null();
    WittenReport {
        d0_plus: d0p,
        d0_minus: d0m,
        delta,
        ker_d,
        ker_d_dagger,
        ker_d0,
        ker_d0_flat,
        rank_a_plus,
        rank_a_minus,
        betti_plus,
        betti_minus,
        analytic_index_sigma,
        analytic_index_d,
        non_null_kernels,
        kernel_map,
        kernel_map_sharp,
        complex_plus,
        complex_minus,
        betti_identity: delta == analytic_index_sigma,
        index_d_identity: non_null_kernels.then_some(delta == analytic_index_d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intertwiner::self_factorization;
    use crate::spectral::decompose;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn id(n: usize) -> EtaOperator {
        EtaOperator::identity(n)
    }

    #[test]
    fn zero_map_gives_trivial_system() {
        let p = assemble(&ComplexMatrix::zeros(2, 2), &id(2), &id(2)).unwrap();
        assert_eq!(p.h().max_abs(), 0.0);
        let r = verify_algebra(&p, &Tolerance::default());
        assert!(r.pass);
        assert_eq!(r.q_squared.residual, 0.0);
    }

    #[test]
    fn identity_metrics_give_positive_partners() {
        let d = ComplexMatrix::from_rows(&[&[c(1.0, 1.0), c(0.0, 2.0), c(1.0, 0.0)], &[c(0.5, 0.0), c(-1.0, 0.0), c(0.0, 0.3)]])
            .unwrap();
        let p = assemble(&d, &id(3), &id(2)).unwrap();
        assert!(p.h_plus().approx_eq(&(d.adjoint() * &d).scale_real(0.5), 1e-15));
        assert!(p.h_minus().approx_eq(&(&d * d.adjoint()).scale_real(0.5), 1e-15));
        assert!(hermitian_eigenvalues(p.h_plus())[0] > -1e-14);
        assert!(p.h_plus().hermiticity_defect() < 1e-15);
        let r = verify_algebra(&p, &Tolerance::default());
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn indefinite_metrics_satisfy_algebra() {
        let tol = Tolerance::default();
        let ep = EtaOperator::new(ComplexMatrix::from_rows(&[&[c(1.0, 0.0), c(0.0, 2.0)], &[c(0.0, -2.0), c(-1.0, 0.0)]]).unwrap(), &tol)
            .unwrap();
        let em = EtaOperator::new(ComplexMatrix::from_real_diagonal(&[1.0, -1.0]), &tol).unwrap();
        let d = ComplexMatrix::from_rows(&[&[c(1.0, 0.5), c(2.0, 0.0)], &[c(0.0, 1.0), c(1.0, -1.0)]]).unwrap();
        let p = assemble(&d, &ep, &em).unwrap();
        let r = verify_algebra(&p, &tol);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.q_squared.residual, 0.0);
        assert_eq!(r.q_sharp_squared.residual, 0.0);
        assert_eq!(r.tau_q.residual, 0.0);
        assert_eq!(r.eta_tau.residual, 0.0);
    }

    #[test]
    fn extended_algebra_detects_phase_rotated_generator() {
        let tol = Tolerance::default();
        let d = ComplexMatrix::from_rows(&[&[c(1.0, 0.0), c(0.5, 0.5)], &[c(0.0, 0.0), c(2.0, 0.0)]]).unwrap();
        let single = verify_extended_algebra(std::slice::from_ref(&d), &id(2), &id(2), &tol).unwrap();
        assert!(single.pass, "{single:?}");
        let pair = verify_extended_algebra(&[d.clone(), d.scale(c(0.0, 1.0))], &id(2), &id(2), &tol).unwrap();
        assert!(!pair.pass);
        let p = assemble(&d, &id(2), &id(2)).unwrap();
        let cross = pair.mixed.iter().find(|m| m.i == 0 && m.j == 1).unwrap();
        // {Q₁, Q₂♯} = −i{Q, Q♯} = −2iH.
        assert!((cross.check.residual - p.h().scale_real(2.0).norm()).abs() < 1e-12);
    }

    #[test]
    fn diagonal_witten_index() {
        let tol = Tolerance::default();
        let p = assemble(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0]), &id(2), &id(2)).unwrap();
        let w = witten_index(&p, &tol);
        assert_eq!((w.d0_plus, w.d0_minus, w.delta), (1, 1, 0));
        assert_eq!((w.ker_d, w.ker_d_dagger), (1, 1));
        assert!(w.betti_identity);
        assert_eq!(w.index_d_identity, Some(true));
        assert!(w.kernel_map.pass && w.complex_plus.pass && w.complex_minus.pass);
    }

    #[test]
    fn rectangular_full_rank_has_unit_index() {
        let tol = Tolerance::default();
        let d = ComplexMatrix::from_rows(&[&[c(1.0, 0.0), c(2.0, 1.0), c(0.0, 1.0)], &[c(0.0, -1.0), c(1.0, 0.0), c(3.0, 0.0)]])
            .unwrap();
        let p = assemble(&d, &id(3), &id(2)).unwrap();
        let w = witten_index(&p, &tol);
        assert_eq!((w.d0_plus, w.d0_minus, w.delta), (1, 0, 1));
        assert_eq!(w.analytic_index_d, 1);
        assert_eq!(w.analytic_index_sigma, 1);
        assert_eq!(w.index_d_identity, Some(true));
    }

    #[test]
    fn restricted_metric_nullity() {
        let tol = Tolerance::default();
        let k = ComplexMatrix::identity(2);
        let swap = EtaOperator::new(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(), &tol).unwrap();
        assert!(sector_nullity(&k, &swap, &tol).non_null);
        // η = [[0,0,1],[0,1,0],[1,0,0]] restricted to span(e₁, e₂) is diag(0, 1).
        let eta3 = EtaOperator::new(ComplexMatrix::from_real_rows(&[&[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0]]).unwrap(), &tol)
            .unwrap();
        let k2 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(!sector_nullity(&k2, &eta3, &tol).non_null);
    }

    #[test]
    fn null_kernel_breaks_index_identity_reporting() {
        // D = [1, 0] with η₊ = swap: H₊ = ½[[0,0],[1,0]] is nilpotent and its
        // kernel vector e₂ is η₊-null.
        let tol = Tolerance::default();
        let ep = EtaOperator::new(ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(), &tol).unwrap();
        let d = ComplexMatrix::from_real_rows(&[&[1.0, 0.0]]).unwrap();
        let p = assemble(&d, &ep, &id(1)).unwrap();
        let w = witten_index(&p, &tol);
        assert_eq!((w.d0_plus, w.d0_minus, w.delta), (1, 1, 0));
        assert!(w.betti_identity);
        assert!(!w.non_null_kernels);
        assert_eq!(w.index_d_identity, None);
        // The identity with the index of D genuinely fails here.
        assert_eq!(w.analytic_index_d, 1);
    }

    #[test]
    fn factorization_round_trip() {
        let tol = Tolerance::default();
        let h = ComplexMatrix::from_real_diagonal(&[1.0, 4.0]);
        let f = self_factorization(&decompose(&h, &tol).unwrap(), &tol).unwrap();
        let p = from_factorization(&f).unwrap();
        assert!(p.h_plus().approx_eq(&h, 1e-13));
        assert!(p.h_minus().approx_eq(&h, 1e-13));
        assert_eq!(witten_index(&p, &tol).delta, 0);

        let singular = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 1.0]]).unwrap();
        let f = self_factorization(&decompose(&singular, &tol).unwrap(), &tol).unwrap();
        let p = from_factorization(&f).unwrap();
        let w = witten_index(&p, &tol);
        assert_eq!((w.d0_plus, w.d0_minus, w.delta), (1, 1, 0));
    }

    #[test]
    fn index_is_invariant_under_equivalence() {
        let tol = Tolerance::default();
        let d = ComplexMatrix::from_rows(&[&[c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)], &[c(2.0, 0.0), c(4.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let p = assemble(&d, &id(3), &id(2)).unwrap();
        let sp = ComplexMatrix::from_rows(&[
            &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.2)],
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.3, 0.0)],
            &[c(0.1, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let sm = ComplexMatrix::from_rows(&[&[c(2.0, 0.0), c(0.0, 1.0)], &[c(0.0, 0.0), c(1.0, 0.0)]]).unwrap();
        let q = p.transformed(&sp, &sm).unwrap();
        let (w0, w1) = (witten_index(&p, &tol), witten_index(&q, &tol));
        assert_eq!(w0.delta, 1);
        assert_eq!(w0.delta, w1.delta);
        assert!(verify_algebra(&q, &tol).pass);
    }
}
