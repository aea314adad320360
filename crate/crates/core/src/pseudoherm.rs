//! Pseudo-metric operators, pseudo-adjoints and the structural consequences
//! of pseudo-Hermiticity: an antilinear symmetry for paired spectra and a
//! Hermitian similarity for real spectra.

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::numkernel::{hermitian_eigenvalues, singular_values, ComplexMatrix, Tolerance, C64};
use crate::spectral::{classify_spectrum, BiorthonormalSystem, ClusterKind, SpectrumTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// One sign per eigenvector of every real cluster, in cluster order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignAssignment {
    /// `(cluster index, signs)` for each real cluster.
    blocks: Vec<(usize, Vec<Sign>)>,
}

impl SignAssignment {
    pub fn all_positive(sys: &BiorthonormalSystem) -> Self {
        Self::from_fn(sys, |_| Sign::Plus)
    }

    /// Same sign for every eigenvector of a real cluster, chosen per cluster.
    pub fn from_fn(sys: &BiorthonormalSystem, mut f: impl FnMut(usize) -> Sign) -> Self {
        let blocks = sys
            .clusters()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind == ClusterKind::Real)
            .map(|(i, c)| (i, vec![f(i); c.multiplicity]))
            .collect();
        Self { blocks }
    }

    /// Positional ±1 list over the real-cluster eigenvectors.
    pub fn from_flat(sys: &BiorthonormalSystem, flat: &[i32]) -> Result<Self> {
        let needed: usize = real_clusters(sys).map(|(_, d)| d).sum();
        if flat.len() != needed {
            return Err(Error::InvalidSigns(format!(
                "expected {needed} signs (one per real eigenvector), got {}",
                flat.len()
            )));
        }
        let mut it = flat.iter();
        let mut blocks = Vec::new();
        for (i, d) in real_clusters(sys) {
            let mut signs = Vec::with_capacity(d);
            for &s in it.by_ref().take(d) {
                signs.push(match s {
                    1 => Sign::Plus,
                    -1 => Sign::Minus,
                    other => {
                        return Err(Error::InvalidSigns(format!("sign must be +1 or -1, got {other}")))
                    }
                });
            }
            blocks.push((i, signs));
        }
        Ok(Self { blocks })
    }

    pub fn flat(&self) -> Vec<i32> {
        self.blocks
            .iter()
            .flat_map(|(_, s)| s.iter().map(|&x| x.value() as i32))
            .collect()
    }

    pub fn blocks(&self) -> &[(usize, Vec<Sign>)] {
        &self.blocks
    }

    fn check_against(&self, sys: &BiorthonormalSystem) -> Result<()> {
        let expected: Vec<(usize, usize)> = real_clusters(sys).collect();
        let got: Vec<(usize, usize)> = self.blocks.iter().map(|(i, s)| (*i, s.len())).collect();
        if expected != got {
            return Err(Error::InvalidSigns(
                "sign assignment does not match the real clusters of the system".into(),
            ));
        }
        Ok(())
    }
}

fn real_clusters(sys: &BiorthonormalSystem) -> impl Iterator<Item = (usize, usize)> + '_ {
    sys.clusters()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kind == ClusterKind::Real)
        .map(|(i, c)| (i, c.multiplicity))
}

/// Hermitian invertible metric together with its inverse.
#[derive(Debug, Clone)]
pub struct EtaOperator {
    matrix: ComplexMatrix,
    inverse: ComplexMatrix,
    signs: Option<SignAssignment>,
}

impl EtaOperator {
    /// Validate a user-supplied metric: Hermitian and numerically invertible.
    pub fn new(matrix: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let n = matrix.ensure_square()?;
        let norm = matrix.norm();
        let defect = matrix.hermiticity_defect();
        if defect > tol.cluster(norm) {
            return Err(Error::InvalidEta(format!("not Hermitian (defect {defect:e})")));
        }
        let sigma = singular_values(&matrix);
        if n > 0 {
            let smallest = *sigma.last().unwrap();
            if smallest <= tol.rank_cutoff(n, n, sigma[0]) {
                return Err(Error::InvalidEta(format!(
                    "singular (smallest singular value {smallest:e})"
                )));
            }
        }
        let inverse = matrix.inverse().map_err(|_| Error::InvalidEta("singular".into()))?;
        Ok(Self {
            matrix,
            inverse,
            signs: None,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n),
            inverse: ComplexMatrix::identity(n),
            signs: None,
        }
    }

    pub(crate) fn from_parts(matrix: ComplexMatrix, inverse: ComplexMatrix, signs: Option<SignAssignment>) -> Self {
        Self {
            matrix,
            inverse,
            signs,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &ComplexMatrix {
        &self.inverse
    }

    pub fn signs(&self) -> Option<&SignAssignment> {
        self.signs.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `‖η‖·‖η⁻¹‖`.
    pub fn condition_number(&self) -> f64 {
        self.matrix.norm() * self.inverse.norm()
    }
}

/// `A♯ = η₊⁻¹ A† η₋` for `A` mapping the `η₊` space into the `η₋` space.
pub fn pseudo_adjoint(a: &ComplexMatrix, eta_plus: &EtaOperator, eta_minus: &EtaOperator) -> Result<ComplexMatrix> {
    if eta_plus.dim() != a.cols() || eta_minus.dim() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{}, eta_plus is {n}x{n}, eta_minus is {m}x{m}",
            a.rows(),
            a.cols(),
            n = eta_plus.dim(),
            m = eta_minus.dim()
        )));
    }
    Ok(eta_plus.inverse() * a.adjoint() * eta_minus.matrix())
}

fn require_paired(sys: &BiorthonormalSystem, tol: &Tolerance) -> Result<()> {
    let class = classify_spectrum(sys, tol);
    if class.tag == SpectrumTag::Unpairable {
        let values: Vec<String> = class
            .unpaired
            .iter()
            .map(|&i| sys.clusters()[i].value.to_string())
            .collect();
        return Err(Error::NotPseudoHermitian(format!(
            "no conjugate partner for {}",
            values.join(", ")
        )));
    }
    Ok(())
}

/// Column-space blocks `G` and `G⁻¹` so that `η = Φ G Φ†`, `η⁻¹ = Ψ G⁻¹ Ψ†`.
fn assemble(sys: &BiorthonormalSystem, g: ComplexMatrix, g_inv: ComplexMatrix, signs: Option<SignAssignment>) -> EtaOperator {
    let matrix = sys.phi() * &g * sys.phi().adjoint();
    let inverse = sys.psi() * &g_inv * sys.psi().adjoint();
    EtaOperator::from_parts(matrix, inverse, signs)
}

/// The canonical metric: `±|φ⟩⟨φ|` on real clusters, swap terms on pairs.
pub fn canonical_eta(sys: &BiorthonormalSystem, signs: &SignAssignment, tol: &Tolerance) -> Result<EtaOperator> {
    require_paired(sys, tol)?;
    signs.check_against(sys)?;
    let n = sys.dim();
    let mut g = ComplexMatrix::zeros(n, n);
    for (i, s) in signs.blocks() {
        let off = sys.clusters()[*i].offset;
        for (a, sign) in s.iter().enumerate() {
            g[(off + a, off + a)] = C64::new(sign.value(), 0.0);
        }
    }
    for c in sys.clusters() {
        if let (ClusterKind::PairUpper, Some(p)) = (c.kind, c.partner) {
            let low = sys.clusters()[p].offset;
            for a in 0..c.multiplicity {
                g[(c.offset + a, low + a)] = C64::new(1.0, 0.0);
                g[(low + a, c.offset + a)] = C64::new(1.0, 0.0);
            }
        }
    }
    // G is an involution, so it is its own inverse.
    Ok(assemble(sys, g.clone(), g, Some(signs.clone())))
}

/// Metric data in the general form: a Hermitian block per real cluster and
/// an invertible block per conjugate pair, both in cluster order.
#[derive(Debug, Clone)]
pub struct MetricBlocks {
    pub real: Vec<ComplexMatrix>,
    pub pairs: Vec<ComplexMatrix>,
}

/// Most general metric compatible with the eigenbasis of `sys`.
pub fn eta_from_m(sys: &BiorthonormalSystem, blocks: &MetricBlocks, tol: &Tolerance) -> Result<EtaOperator> {
    require_paired(sys, tol)?;
    let reals: Vec<_> = real_clusters(sys).collect();
    let pairs: Vec<(usize, usize)> = sys
        .clusters()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match (c.kind, c.partner) {
            (ClusterKind::PairUpper, Some(p)) => Some((i, p)),
            _ => None,
        })
        .collect();
    if blocks.real.len() != reals.len() || blocks.pairs.len() != pairs.len() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} real and {} pair blocks, got {} and {}",
            reals.len(),
            pairs.len(),
            blocks.real.len(),
            blocks.pairs.len()
        )));
    }
    let n = sys.dim();
    let mut g = ComplexMatrix::zeros(n, n);
    let mut g_inv = ComplexMatrix::zeros(n, n);
    let place = |target: &mut ComplexMatrix, row: usize, col: usize, b: &ComplexMatrix| {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                target[(row + r, col + c)] = b[(r, c)];
            }
        }
    };
    let invert = |b: &ComplexMatrix, d: usize| -> Result<ComplexMatrix> {
        if b.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "block is {}x{}, cluster multiplicity is {d}",
                b.rows(),
                b.cols()
            )));
        }
        let sigma = singular_values(b);
        if sigma.last().copied().unwrap_or(0.0) <= tol.rank_cutoff(d, d, sigma[0]) {
            return Err(Error::InvalidEta("singular metric block".into()));
        }
        b.inverse().map_err(|_| Error::InvalidEta("singular metric block".into()))
    };
    for ((i, d), m) in reals.iter().zip(&blocks.real) {
        let m_inv = invert(m, *d)?;
        if m.hermiticity_defect() > tol.cluster(m.norm()) {
            return Err(Error::InvalidEta("real-cluster block is not Hermitian".into()));
        }
        let off = sys.clusters()[*i].offset;
        place(&mut g, off, off, m);
        place(&mut g_inv, off, off, &m_inv);
    }
    for ((u, l), p) in pairs.iter().zip(&blocks.pairs) {
        let d = sys.clusters()[*u].multiplicity;
        let p_inv = invert(p, d)?;
        let (ou, ol) = (sys.clusters()[*u].offset, sys.clusters()[*l].offset);
        place(&mut g, ou, ol, p);
        place(&mut g, ol, ou, &p.adjoint());
        place(&mut g_inv, ou, ol, &p_inv.adjoint());
        place(&mut g_inv, ol, ou, &p_inv);
    }
    Ok(assemble(sys, g, g_inv, None))
}

/// `‖ηHη⁻¹ − H†‖` against `rtol·(1+‖H‖)·cond(η)`.
pub fn verify_pseudo_hermiticity(h: &ComplexMatrix, eta: &EtaOperator, tol: &Tolerance) -> Result<Check> {
    let n = h.ensure_square()?;
    if eta.dim() != n {
        return Err(Error::DimensionMismatch(format!("H is {n}x{n}, eta is {0}x{0}", eta.dim())));
    }
    let residual = (eta.matrix() * h * eta.inverse() - h.adjoint()).norm();
    Ok(Check::new(residual, tol.rtol * (1.0 + h.norm()) * eta.condition_number()))
}

/// Antilinear map `v ↦ S·conj(v)`.
#[derive(Debug, Clone)]
pub struct AntilinearOperator {
    linear_part: ComplexMatrix,
}

impl AntilinearOperator {
    pub fn new(linear_part: ComplexMatrix) -> Self {
        Self { linear_part }
    }

    pub fn linear_part(&self) -> &ComplexMatrix {
        &self.linear_part
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let conj: Vec<C64> = v.iter().map(|z| z.conj()).collect();
        let col = ComplexMatrix::from_columns(conj.len(), &[conj]);
        (&self.linear_part * &col).column(0)
    }

    /// `‖H·S − S·conj(H)‖`: zero exactly when the map commutes with `H`.
    pub fn commutation_residual(&self, h: &ComplexMatrix) -> f64 {
        (h * &self.linear_part - &self.linear_part * h.conj()).norm()
    }
}

/// `S = Ψ P Φᵀ`, with `P` swapping the columns of each conjugate pair.
pub fn antilinear_symmetry(sys: &BiorthonormalSystem, tol: &Tolerance) -> Result<AntilinearOperator> {
    require_paired(sys, tol)?;
    let n = sys.dim();
    let mut p = ComplexMatrix::zeros(n, n);
    for c in sys.clusters() {
        let partner_off = match (c.kind, c.partner) {
            (ClusterKind::Real, _) => c.offset,
            (_, Some(q)) => sys.clusters()[q].offset,
            (_, None) => unreachable!("paired spectrum checked above"),
        };
        for a in 0..c.multiplicity {
            p[(c.offset + a, partner_off + a)] = C64::new(1.0, 0.0);
        }
    }
    Ok(AntilinearOperator::new(sys.psi() * &p * sys.phi().transpose()))
}

/// Threshold for the antilinear commutation residual: `rtol·‖H‖·cond(Ψ)²`.
pub fn antilinear_threshold(sys: &BiorthonormalSystem, tol: &Tolerance) -> f64 {
    let cond = sys.cond_psi();
    tol.rtol * sys.scale() * cond * cond
}

/// `H = O⁻¹ h O` with `h` real diagonal and `η = O†O` positive definite.
#[derive(Debug, Clone)]
pub struct HermitianSimilarity {
    pub o: ComplexMatrix,
    pub o_inverse: ComplexMatrix,
    pub h: ComplexMatrix,
    pub eta: EtaOperator,
    /// Smallest eigenvalue of `η`.
    pub eta_min_eigenvalue: f64,
}

pub fn hermitian_similarity(sys: &BiorthonormalSystem, tol: &Tolerance) -> Result<HermitianSimilarity> {
    if classify_spectrum(sys, tol).tag != SpectrumTag::AllReal {
        return Err(Error::RealSpectrumRequired);
    }
    let o = sys.phi().adjoint();
    let o_inverse = sys.psi().clone();
    let diag: Vec<f64> = sys.column_values().iter().map(|e| e.re).collect();
    let h = ComplexMatrix::from_real_diagonal(&diag);
    let matrix = sys.phi() * sys.phi().adjoint();
    let inverse = sys.psi() * sys.psi().adjoint();
    let eta_min_eigenvalue = hermitian_eigenvalues(&matrix).first().copied().unwrap_or(f64::INFINITY);
    Ok(HermitianSimilarity {
        o,
        o_inverse,
        h,
        eta: EtaOperator::from_parts(matrix, inverse, Some(SignAssignment::all_positive(sys))),
        eta_min_eigenvalue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::decompose;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn oscillator(omega: f64) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[&[c(0.0, 0.0), c(0.0, 1.0)], &[c(0.0, -omega * omega), c(0.0, 0.0)]])
            .unwrap()
    }

    #[test]
    fn identity_metrics_give_plain_adjoint() {
        let a = ComplexMatrix::from_rows(&[&[c(1.0, 2.0), c(0.0, 1.0), c(3.0, 0.0)], &[c(0.0, 0.0), c(1.0, -1.0), c(2.0, 2.0)]])
            .unwrap();
        let s = pseudo_adjoint(&a, &EtaOperator::identity(3), &EtaOperator::identity(2)).unwrap();
        assert_eq!(s, a.adjoint());
        assert!(pseudo_adjoint(&a, &EtaOperator::identity(2), &EtaOperator::identity(2)).is_err());
    }

    #[test]
    fn double_pseudo_adjoint_is_identity() {
        let tol = Tolerance::default();
        let a = ComplexMatrix::from_rows(&[&[c(1.0, 2.0), c(0.5, 1.0)], &[c(-1.0, 0.0), c(1.0, -1.0)]]).unwrap();
        let ep = EtaOperator::new(ComplexMatrix::from_rows(&[&[c(2.0, 0.0), c(0.0, 1.0)], &[c(0.0, -1.0), c(-1.0, 0.0)]]).unwrap(), &tol)
            .unwrap();
        let em = EtaOperator::new(ComplexMatrix::from_real_rows(&[&[1.0, 3.0], &[3.0, 1.0]]).unwrap(), &tol).unwrap();
        let once = pseudo_adjoint(&a, &ep, &em).unwrap();
        let twice = pseudo_adjoint(&once, &em, &ep).unwrap();
        assert!(twice.approx_eq(&a, 1e-12));
    }

    #[test]
    fn eta_validation() {
        let tol = Tolerance::default();
        let not_herm = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(EtaOperator::new(not_herm, &tol), Err(Error::InvalidEta(_))));
        let singular = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert!(matches!(EtaOperator::new(singular, &tol), Err(Error::InvalidEta(_))));
    }

    #[test]
    fn hermitian_system_with_plus_signs_is_identity() {
        let tol = Tolerance::default();
        let sys = decompose(&ComplexMatrix::from_real_diagonal(&[1.0, -1.0]), &tol).unwrap();
        let eta = canonical_eta(&sys, &SignAssignment::all_positive(&sys), &tol).unwrap();
        assert!(eta.matrix().approx_eq(&ComplexMatrix::identity(2), 1e-14));
    }

    #[test]
    fn oscillator_signed_metric() {
        // Direct evaluation of -|φ1⟩⟨φ1| + |φ2⟩⟨φ2| with φ1 = (-i, 1/2)/2, φ2 = (1/2, -i/4)/2.
        let tol = Tolerance::default();
        let h = oscillator(2.0);
        let psi = ComplexMatrix::from_rows(&[&[c(0.0, -1.0), c(2.0, 0.0)], &[c(2.0, 0.0), c(0.0, -4.0)]]).unwrap();
        let phi = psi.inverse().unwrap().adjoint();
        let sys = BiorthonormalSystem::from_parts(&[(c(-2.0, 0.0), 1), (c(2.0, 0.0), 1)], psi, phi, &tol).unwrap();
        let signs = SignAssignment::from_flat(&sys, &[-1, 1]).unwrap();
        let eta = canonical_eta(&sys, &signs, &tol).unwrap();
        let want = ComplexMatrix::from_rows(&[&[c(-12.0, 0.0), c(0.0, 10.0)], &[c(0.0, -10.0), c(-3.0, 0.0)]])
            .unwrap()
            .scale_real(1.0 / 64.0);
        assert!(eta.matrix().approx_eq(&want, 1e-12));
        let inv = ComplexMatrix::from_rows(&[&[c(3.0, 0.0), c(0.0, 10.0)], &[c(0.0, -10.0), c(12.0, 0.0)]]).unwrap();
        assert!(eta.inverse().approx_eq(&inv, 1e-11));
        assert!(verify_pseudo_hermiticity(&h, &eta, &tol).unwrap().pass);
    }

    #[test]
    fn conjugate_pair_metric() {
        let tol = Tolerance::default();
        let h = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-4.0, 0.0]]).unwrap();
        let sys = decompose(&h, &tol).unwrap();
        let eta = canonical_eta(&sys, &SignAssignment::all_positive(&sys), &tol).unwrap();
        let phi = sys.phi();
        let want = ComplexMatrix::outer(&phi.column(0), &phi.column(1)) + ComplexMatrix::outer(&phi.column(1), &phi.column(0));
        assert!(eta.matrix().approx_eq(&want, 1e-14));
        assert!(eta.matrix().hermiticity_defect() < 1e-14);
        assert!(verify_pseudo_hermiticity(&h, &eta, &tol).unwrap().pass);
    }

    #[test]
    fn unpairable_refused() {
        let tol = Tolerance::default();
        let sys = decompose(&ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(2.0, 3.0)]), &tol).unwrap();
        let signs = SignAssignment::all_positive(&sys);
        assert!(matches!(canonical_eta(&sys, &signs, &tol), Err(Error::NotPseudoHermitian(_))));
        assert!(matches!(antilinear_symmetry(&sys, &tol), Err(Error::NotPseudoHermitian(_))));
    }

    #[test]
    fn sign_list_validation() {
        let tol = Tolerance::default();
        let sys = decompose(&ComplexMatrix::from_real_diagonal(&[1.0, 2.0]), &tol).unwrap();
        assert!(SignAssignment::from_flat(&sys, &[1]).is_err());
        assert!(SignAssignment::from_flat(&sys, &[1, 0]).is_err());
        assert_eq!(SignAssignment::from_flat(&sys, &[1, -1]).unwrap().flat(), vec![1, -1]);
    }

    #[test]
    fn general_blocks_reduce_to_canonical() {
        let tol = Tolerance::default();
        let h = ComplexMatrix::from_real_diagonal(&[2.0, 2.0, -1.0]);
        let sys = decompose(&h, &tol).unwrap();
        let deg = sys.clusters().iter().position(|c| c.multiplicity == 2).unwrap();
        let mut real = Vec::new();
        let mut flat = Vec::new();
        for cl in sys.clusters() {
            if cl.multiplicity == 2 {
                real.push(ComplexMatrix::from_real_diagonal(&[1.0, -1.0]));
                flat.extend([1, -1]);
            } else {
                real.push(ComplexMatrix::identity(1));
                flat.push(1);
            }
        }
        let general = eta_from_m(&sys, &MetricBlocks { real, pairs: vec![] }, &tol).unwrap();
        let canon = canonical_eta(&sys, &SignAssignment::from_flat(&sys, &flat).unwrap(), &tol).unwrap();
        assert!(general.matrix().approx_eq(canon.matrix(), 1e-14));
        assert_eq!(deg, 1);
    }

    #[test]
    fn degenerate_block_metric_is_valid() {
        let tol = Tolerance::default();
        let w = ComplexMatrix::from_rows(&[
            &[c(1.0, 0.0), c(0.5, 0.5), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.2, 0.0)],
            &[c(0.3, 0.0), c(0.0, 0.0), c(1.0, -0.5)],
        ])
        .unwrap();
        let h = &w * &ComplexMatrix::from_real_diagonal(&[3.0, 3.0, -2.0]) * w.inverse().unwrap();
        let sys = decompose(&h, &tol).unwrap();
        let real: Vec<ComplexMatrix> = sys
            .clusters()
            .iter()
            .map(|cl| if cl.multiplicity == 2 { ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap() } else { ComplexMatrix::identity(1) })
            .collect();
        let eta = eta_from_m(&sys, &MetricBlocks { real, pairs: vec![] }, &tol).unwrap();
        assert!(eta.matrix().hermiticity_defect() < 1e-12);
        assert!(verify_pseudo_hermiticity(&h, &eta, &tol).unwrap().residual <= 1e-10);
    }

    #[test]
    fn singular_block_rejected() {
        let tol = Tolerance::default();
        let sys = decompose(&ComplexMatrix::from_real_diagonal(&[1.0, 2.0]), &tol).unwrap();
        let blocks = MetricBlocks { real: vec![ComplexMatrix::zeros(1, 1), ComplexMatrix::identity(1)], pairs: vec![] };
        assert!(matches!(eta_from_m(&sys, &blocks, &tol), Err(Error::InvalidEta(_))));
    }

    #[test]
    fn residual_examples() {
        let tol = Tolerance::default();
        let herm = ComplexMatrix::from_rows(&[&[c(1.0, 0.0), c(2.0, 1.0)], &[c(2.0, -1.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(verify_pseudo_hermiticity(&herm, &EtaOperator::identity(2), &tol).unwrap().residual, 0.0);
        let nil = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let chk = verify_pseudo_hermiticity(&nil, &EtaOperator::identity(2), &tol).unwrap();
        assert!((chk.residual - 1.0).abs() < 1e-14);
        assert!(!chk.pass);
    }

    #[test]
    fn antilinear_examples() {
        let tol = Tolerance::default();
        let real = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(AntilinearOperator::new(ComplexMatrix::identity(2)).commutation_residual(&real), 0.0);
        let sys = decompose(&real, &tol).unwrap();
        let s = antilinear_symmetry(&sys, &tol).unwrap();
        assert!(s.commutation_residual(&real) <= antilinear_threshold(&sys, &tol));

        let d = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let sys = decompose(&d, &tol).unwrap();
        let s = antilinear_symmetry(&sys, &tol).unwrap();
        assert!(s.linear_part().approx_eq(&ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(), 1e-15));
        assert_eq!(s.commutation_residual(&d), 0.0);

        let h = oscillator(2.0);
        let sys = decompose(&h, &tol).unwrap();
        assert!(antilinear_symmetry(&sys, &tol).unwrap().commutation_residual(&h) <= 1e-10);
    }

    #[test]
    fn antilinear_apply_conjugates() {
        let s = AntilinearOperator::new(ComplexMatrix::identity(2));
        assert_eq!(s.apply(&[c(1.0, 2.0), c(0.0, -1.0)]), vec![c(1.0, -2.0), c(0.0, 1.0)]);
    }

    #[test]
    fn similarity_to_hermitian() {
        let tol = Tolerance::default();
        let h = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 2.0]]).unwrap();
        let sys = decompose(&h, &tol).unwrap();
        let sim = hermitian_similarity(&sys, &tol).unwrap();
        assert!((&sim.o * &h * &sim.o_inverse - &sim.h).norm() <= 1e-12);
        assert!(sim.h.approx_eq(&ComplexMatrix::from_real_diagonal(&[1.0, 2.0]), 1e-14));
        assert!(sim.eta_min_eigenvalue > 0.0);
        assert!(verify_pseudo_hermiticity(&h, &sim.eta, &tol).unwrap().pass);

        let osc = decompose(&oscillator(2.0), &tol).unwrap();
        let sim = hermitian_similarity(&osc, &tol).unwrap();
        assert!(sim.h.approx_eq(&ComplexMatrix::from_real_diagonal(&[-2.0, 2.0]), 1e-12));
        assert!(sim.eta_min_eigenvalue > 0.0);

        let pair = decompose(&ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-4.0, 0.0]]).unwrap(), &tol).unwrap();
        assert!(matches!(hermitian_similarity(&pair, &tol), Err(Error::RealSpectrumRequired)));
    }
}
