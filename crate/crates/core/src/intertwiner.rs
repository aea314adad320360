//! Intertwining operators between isospectral Hamiltonians and the
//! factorization `H₁ = L♯L`, `H₂ = LL♯`.

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::numkernel::{ComplexMatrix, Tolerance, C64};
use crate::pseudoherm::{canonical_eta, pseudo_adjoint, EtaOperator, Sign, SignAssignment};
use crate::spectral::{classify_spectrum, BiorthonormalSystem, ClusterKind, SpectrumTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchedClusters {
    pub source: usize,
    pub target: usize,
    /// Number of eigenvectors paired: the smaller of the two multiplicities.
    pub mu: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralPairing {
    pub matched: Vec<MatchedClusters>,
    /// Zero cluster of the source left without a counterpart.
    pub unmatched_source_zero: Option<usize>,
    /// Zero cluster of the target left without a counterpart.
    pub unmatched_target_zero: Option<usize>,
    pub tolerance: f64,
}

impl SpectralPairing {
    pub fn target_of(&self, source: usize) -> Option<usize> {
        self.matched.iter().find(|m| m.source == source).map(|m| m.target)
    }
}

/// Greedy nearest-eigenvalue matching of clusters.
///
/// Nonzero clusters must match with equal multiplicity. Zero clusters may be
/// missing on either side or differ in size.
pub fn match_spectra(sys1: &BiorthonormalSystem, sys2: &BiorthonormalSystem, tol: &Tolerance) -> Result<SpectralPairing> {
    tol.validate()?;
    let tol_c = tol.cluster(sys1.scale().max(sys2.scale()));
    let (c1, c2) = (sys1.clusters(), sys2.clusters());
    let mut used = vec![false; c2.len()];
    let mut pairing = SpectralPairing {
        matched: Vec::new(),
        unmatched_source_zero: None,
        unmatched_target_zero: None,
        tolerance: tol_c,
    };
    for (i, a) in c1.iter().enumerate() {
        let zero = a.value.norm() <= tol_c;
        let best = (0..c2.len())
            .filter(|&j| !used[j] && (c2[j].value - a.value).norm() <= tol_c)
            .min_by(|&x, &y| {
                let dx = (c2[x].value - a.value).norm();
                let dy = (c2[y].value - a.value).norm();
                dx.partial_cmp(&dy).unwrap_or(std::cmp::Ordering::Equal)
            });
        match best {
            Some(j) => {
                if !zero && c2[j].multiplicity != a.multiplicity {
                    return Err(Error::NotIsospectral(format!(
                        "eigenvalue {} has multiplicity {} vs {}",
                        a.value, a.multiplicity, c2[j].multiplicity
                    )));
                }
                used[j] = true;
                pairing.matched.push(MatchedClusters {
                    source: i,
                    target: j,
                    mu: a.multiplicity.min(c2[j].multiplicity),
                });
            }
            None if zero => pairing.unmatched_source_zero = Some(i),
            None => {
                return Err(Error::NotIsospectral(format!(
                    "eigenvalue {} has no counterpart",
                    a.value
                )))
            }
        }
    }
    for (j, b) in c2.iter().enumerate() {
        if used[j] {
            continue;
        }
        if b.value.norm() <= tol_c {
            pairing.unmatched_target_zero = Some(j);
        } else {
            return Err(Error::NotIsospectral(format!(
                "eigenvalue {} of the target has no counterpart",
                b.value
            )));
        }
    }
    Ok(pairing)
}

/// `L = Σ_n α_n L_n` with `L_n = Σ_{a<μ_n} |ψ⁽²⁾_{n,a}⟩⟨φ⁽¹⁾_{n,a}|`.
#[derive(Debug, Clone)]
pub struct Intertwiner {
    matrix: ComplexMatrix,
    alpha: Vec<C64>,
    pairing: SpectralPairing,
    components: Vec<ComplexMatrix>,
}

impl Intertwiner {
    pub(crate) fn from_parts(
        matrix: ComplexMatrix,
        alpha: Vec<C64>,
        pairing: SpectralPairing,
        components: Vec<ComplexMatrix>,
    ) -> Self {
        Self {
            matrix,
            alpha,
            pairing,
            components,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn alpha(&self) -> &[C64] {
        &self.alpha
    }

    pub fn pairing(&self) -> &SpectralPairing {
        &self.pairing
    }

    /// The unscaled `L_n` of the `m`-th matched pair.
    pub fn component(&self, m: usize) -> &ComplexMatrix {
        &self.components[m]
    }
}

pub fn build_l(
    source: &BiorthonormalSystem,
    target: &BiorthonormalSystem,
    pairing: &SpectralPairing,
    alpha: &[C64],
) -> Result<Intertwiner> {
    if alpha.len() != pairing.matched.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for {} matched clusters",
            alpha.len(),
            pairing.matched.len()
        )));
    }
    let (n1, n2) = (source.dim(), target.dim());
    let mut matrix = ComplexMatrix::zeros(n2, n1);
    let mut components = Vec::with_capacity(alpha.len());
    for (m, &a) in pairing.matched.iter().zip(alpha) {
        let (c1, c2) = (&source.clusters()[m.source], &target.clusters()[m.target]);
        let psi = target.psi().columns(c2.offset, m.mu);
        let phi = source.phi().columns(c1.offset, m.mu);
        let ln = psi * phi.adjoint();
        matrix = matrix + ln.scale(a);
        components.push(ln);
    }
    Ok(Intertwiner {
        matrix,
        alpha: alpha.to_vec(),
        pairing: pairing.clone(),
        components,
    })
}

/// `‖L·H₁ − H₂·L‖`.
pub fn verify_intertwining(l: &ComplexMatrix, h1: &ComplexMatrix, h2: &ComplexMatrix) -> Result<f64> {
    let n1 = h1.ensure_square()?;
    let n2 = h2.ensure_square()?;
    if l.shape() != (n2, n1) {
        return Err(Error::DimensionMismatch(format!(
            "L is {}x{}, expected {n2}x{n1}",
            l.rows(),
            l.cols()
        )));
    }
    Ok((l * h1 - h2 * l).norm())
}

#[derive(Debug, Clone)]
pub struct Factorization {
    pub intertwiner: Intertwiner,
    pub l_sharp: ComplexMatrix,
    pub eta1: EtaOperator,
    pub eta2: EtaOperator,
    pub h1: ComplexMatrix,
    pub h2: ComplexMatrix,
    /// `‖H₁ − L♯L‖`
    pub residual_h1: Check,
    /// `‖H₂ − LL♯‖`
    pub residual_h2: Check,
}

impl Factorization {
    pub fn l(&self) -> &ComplexMatrix {
        self.intertwiner.matrix()
    }

    /// Assemble from explicit parts, computing both residuals against `threshold`.
    pub fn from_parts(
        intertwiner: Intertwiner,
        eta1: EtaOperator,
        eta2: EtaOperator,
        h1: ComplexMatrix,
        h2: ComplexMatrix,
        threshold: f64,
    ) -> Result<Self> {
        let l = intertwiner.matrix();
        let l_sharp = pseudo_adjoint(l, &eta1, &eta2)?;
        let residual_h1 = Check::new((&h1 - &l_sharp * l).norm(), threshold);
        let residual_h2 = Check::new((&h2 - l * &l_sharp).norm(), threshold);
        Ok(Self {
            intertwiner,
            l_sharp,
            eta1,
            eta2,
            h1,
            h2,
            residual_h1,
            residual_h2,
        })
    }

    pub fn pass(&self) -> bool {
        self.residual_h1.pass && self.residual_h2.pass
    }
}

/// Sign `−1` on real clusters with negative eigenvalue, `+1` elsewhere.
fn source_signs(sys: &BiorthonormalSystem, tol_c: f64) -> SignAssignment {
    SignAssignment::from_fn(sys, |i| {
        let e = sys.clusters()[i].value;
        if e.re < 0.0 && e.norm() > tol_c {
            Sign::Minus
        } else {
            Sign::Plus
        }
    })
}

/// `√|E|` on real clusters (zero on the zero cluster), `E` on the upper
/// member of a pair and `1` on the lower member.
fn canonical_alpha(sys: &BiorthonormalSystem, pairing: &SpectralPairing) -> Vec<C64> {
    pairing
        .matched
        .iter()
        .map(|m| {
            let c = &sys.clusters()[m.source];
            match c.kind {
                ClusterKind::Real if c.value.norm() <= pairing.tolerance => C64::new(0.0, 0.0),
                ClusterKind::Real => C64::new(c.value.norm().sqrt(), 0.0),
                ClusterKind::PairUpper => c.value,
                ClusterKind::PairLower => C64::new(1.0, 0.0),
            }
        })
        .collect()
}

/// Canonical signs, coefficients and metrics realizing `H₁ = L♯L`, `H₂ = LL♯`.
pub fn canonical_factorization(sys1: &BiorthonormalSystem, sys2: &BiorthonormalSystem, tol: &Tolerance) -> Result<Factorization> {
    for sys in [sys1, sys2] {
        if classify_spectrum(sys, tol).tag == SpectrumTag::Unpairable {
            return Err(Error::NotPseudoHermitian(
                "a complex eigenvalue has no conjugate partner".into(),
            ));
        }
    }
    let pairing = match_spectra(sys1, sys2, tol)?;
    for m in &pairing.matched {
        let (a, b) = (&sys1.clusters()[m.source], &sys2.clusters()[m.target]);
        if a.kind != b.kind {
            return Err(Error::NotIsospectral(format!(
                "eigenvalue {} is {:?} on one side and {:?} on the other",
                a.value, a.kind, b.kind
            )));
        }
        if let (Some(pa), Some(pb)) = (a.partner, b.partner) {
            if pairing.target_of(pa) != Some(pb) {
                return Err(Error::NotIsospectral(format!(
                    "conjugate partners of {} are matched inconsistently",
                    a.value
                )));
            }
        }
    }
    let eta1 = canonical_eta(sys1, &source_signs(sys1, pairing.tolerance), tol)?;
    let eta2 = canonical_eta(sys2, &SignAssignment::all_positive(sys2), tol)?;
    let alpha = canonical_alpha(sys1, &pairing);
    let intertwiner = build_l(sys1, sys2, &pairing, &alpha)?;
    let scale = sys1.scale().max(sys2.scale());
    let threshold = tol.rtol * (1.0 + scale) * sys1.cond_psi() * sys2.cond_psi();
    Factorization::from_parts(
        intertwiner,
        eta1,
        eta2,
        sys1.hamiltonian().clone(),
        sys2.hamiltonian().clone(),
        threshold,
    )
}

/// `H = L♯L` with both sides the same system.
pub fn self_factorization(sys: &BiorthonormalSystem, tol: &Tolerance) -> Result<Factorization> {
    canonical_factorization(sys, sys, tol)
}
