//! Biorthonormal eigensystems of diagonalizable Hamiltonians.
//!
//! A [`BiorthonormalSystem`] stores right eigenvectors `Ψ` and their duals
//! `Φ = (Ψ⁻¹)†` grouped into degenerate clusters. Clusters are labelled as
//! real, or as the upper/lower member of a complex-conjugate pair.

use std::ops::Range;

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::numkernel::{
    condition_number, eig, normalize_phase, smallest_right_singular, ComplexMatrix, Tolerance,
    C64,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClusterKind {
    Real,
    PairUpper,
    PairLower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenCluster {
    pub value: C64,
    pub multiplicity: usize,
    pub kind: ClusterKind,
    /// Index of the conjugate partner cluster, if one was found.
    pub partner: Option<usize>,
    /// First column of this cluster in `Ψ` and `Φ`.
    pub offset: usize,
}

impl EigenCluster {
    pub fn columns(&self) -> Range<usize> {
        self.offset..self.offset + self.multiplicity
    }
}

#[derive(Debug, Clone)]
pub struct BiorthonormalSystem {
    clusters: Vec<EigenCluster>,
    psi: ComplexMatrix,
    phi: ComplexMatrix,
    hamiltonian: ComplexMatrix,
    scale: f64,
}

impl BiorthonormalSystem {
    /// Assemble a system from explicit eigenvectors.
    ///
    /// `spectrum` lists `(value, multiplicity)` per cluster in column order.
    /// Kinds and partners are assigned with the cluster tolerance of the
    /// reconstructed Hamiltonian. Biorthonormality is not enforced here; use
    /// [`verify_biorthonormality`].
    pub fn from_parts(
        spectrum: &[(C64, usize)],
        psi: ComplexMatrix,
        phi: ComplexMatrix,
        tol: &Tolerance,
    ) -> Result<Self> {
        tol.validate()?;
        let n = psi.ensure_square()?;
        if phi.shape() != psi.shape() {
            return Err(Error::DimensionMismatch(format!(
                "psi is {n}x{n} but phi is {}x{}",
                phi.rows(),
                phi.cols()
            )));
        }
        let total: usize = spectrum.iter().map(|&(_, d)| d).sum();
        if total != n || spectrum.iter().any(|&(_, d)| d == 0) {
            return Err(Error::DimensionMismatch(format!(
                "multiplicities must be positive and sum to {n}, got {total}"
            )));
        }
        let values: Vec<C64> = spectrum
            .iter()
            .flat_map(|&(e, d)| std::iter::repeat(e).take(d))
            .collect();
        let hamiltonian = &psi * &ComplexMatrix::from_diagonal(&values) * phi.adjoint();
        let scale = hamiltonian.norm();
        let mut clusters = Vec::with_capacity(spectrum.len());
        let mut offset = 0;
        for &(value, multiplicity) in spectrum {
            clusters.push(EigenCluster {
                value,
                multiplicity,
                kind: ClusterKind::Real,
                partner: None,
                offset,
            });
            offset += multiplicity;
        }
        label(&mut clusters, tol.cluster(scale));
        Ok(Self {
            clusters,
            psi,
            phi,
            hamiltonian,
            scale,
        })
    }

    /// Replace the stored Hamiltonian by the exact matrix the system describes.
    pub(crate) fn with_hamiltonian(mut self, h: ComplexMatrix) -> Self {
        self.scale = h.norm();
        self.hamiltonian = h;
        self
    }

    pub fn dim(&self) -> usize {
        self.psi.rows()
    }

    pub fn clusters(&self) -> &[EigenCluster] {
        &self.clusters
    }

    pub fn psi(&self) -> &ComplexMatrix {
        &self.psi
    }

    pub fn phi(&self) -> &ComplexMatrix {
        &self.phi
    }

    /// The Hamiltonian the system was built from (or its reconstruction).
    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    /// `‖H‖₂`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn cond_psi(&self) -> f64 {
        condition_number(&self.psi)
    }

    pub fn psi_block(&self, n: usize) -> ComplexMatrix {
        let c = &self.clusters[n];
        self.psi.columns(c.offset, c.multiplicity)
    }

    pub fn phi_block(&self, n: usize) -> ComplexMatrix {
        let c = &self.clusters[n];
        self.phi.columns(c.offset, c.multiplicity)
    }

    /// Spectral projector `Λ_n = Ψ_n Φ_n†`.
    pub fn projector(&self, n: usize) -> ComplexMatrix {
        self.psi_block(n) * self.phi_block(n).adjoint()
    }

    /// Eigenvalue attached to each column of `Ψ`.
    pub fn column_values(&self) -> Vec<C64> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat(c.value).take(c.multiplicity))
            .collect()
    }

    /// Mix the columns of cluster `n` by the invertible `v`: `Ψ_n → Ψ_n v`,
    /// `Φ_n → Φ_n v⁻†`. The result describes the same Hamiltonian.
    pub fn with_cluster_basis(&self, n: usize, v: &ComplexMatrix) -> Result<Self> {
        let c = self
            .clusters
            .get(n)
            .ok_or_else(|| Error::InvalidArgument(format!("no cluster {n}")))?;
        let d = c.multiplicity;
        if v.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "cluster {n} has multiplicity {d}, basis change is {}x{}",
                v.rows(),
                v.cols()
            )));
        }
        let new_psi = self.psi_block(n) * v;
        let new_phi = self.phi_block(n) * v.inverse()?.adjoint();
        let mut out = self.clone();
        for a in 0..d {
            for r in 0..self.dim() {
                out.psi[(r, c.offset + a)] = new_psi[(r, a)];
                out.phi[(r, c.offset + a)] = new_phi[(r, a)];
            }
        }
        Ok(out)
    }
}

/// Assign kinds and conjugate partners. Pairing requires equal multiplicity.
fn label(clusters: &mut [EigenCluster], tol_c: f64) {
    for c in clusters.iter_mut() {
        c.partner = None;
        c.kind = if c.value.im.abs() <= tol_c {
            ClusterKind::Real
        } else if c.value.im > 0.0 {
            ClusterKind::PairUpper
        } else {
            ClusterKind::PairLower
        };
    }
    for u in 0..clusters.len() {
        if clusters[u].kind != ClusterKind::PairUpper {
            continue;
        }
        let target = clusters[u].value.conj();
        let best = (0..clusters.len())
            .filter(|&l| {
                clusters[l].kind == ClusterKind::PairLower
                    && clusters[l].partner.is_none()
                    && clusters[l].multiplicity == clusters[u].multiplicity
                    && (clusters[l].value - target).norm() <= tol_c
            })
            .min_by(|&x, &y| {
                let dx = (clusters[x].value - target).norm();
                let dy = (clusters[y].value - target).norm();
                dx.partial_cmp(&dy).unwrap_or(std::cmp::Ordering::Equal)
            });
        if let Some(l) = best {
            clusters[u].partner = Some(l);
            clusters[l].partner = Some(u);
        }
    }
}

fn cmp_value(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
}

/// Diagonalize `h` into a clustered biorthonormal system.
pub fn decompose(h: &ComplexMatrix, tol: &Tolerance) -> Result<BiorthonormalSystem> {
    tol.validate()?;
    let n = h.ensure_square()?;
    let scale = h.norm();
    if n == 0 {
        return Ok(BiorthonormalSystem {
            clusters: Vec::new(),
            psi: ComplexMatrix::zeros(0, 0),
            phi: ComplexMatrix::zeros(0, 0),
            hamiltonian: h.clone(),
            scale,
        });
    }
    let tol_c = tol.cluster(scale);
    let e = eig(h)?;

    // Single-linkage grouping of eigenvalues within tol_c.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let next = p[j];
            p[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (e.values[i] - e.values[j]).norm() <= tol_c {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_to_group = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_to_group[r] == usize::MAX {
            root_to_group[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_to_group[r]].push(i);
    }

    struct Group {
        value: C64,
        vectors: Vec<Vec<C64>>,
    }
    let mut built = Vec::with_capacity(groups.len());
    for members in &groups {
        let d = members.len();
        let value = members.iter().map(|&i| e.values[i]).sum::<C64>() / d as f64;
        let vectors = if d == 1 {
            vec![e.vectors.column(members[0])]
        } else {
            let shifted = h - &ComplexMatrix::identity(n).scale(value);
            let (k, worst) = smallest_right_singular(&shifted, d);
            if worst > tol_c {
                return Err(Error::NonDiagonalizable(format!(
                    "eigenvalue {value} has algebraic multiplicity {d} but a smaller eigenspace"
                )));
            }
            (0..d)
                .map(|a| {
                    let mut v = k.column(a);
                    normalize_phase(&mut v);
                    v
                })
                .collect()
        };
        built.push(Group { value, vectors });
    }
    built.sort_by(|a, b| cmp_value(&a.value, &b.value));

    let mut clusters: Vec<EigenCluster> = built
        .iter()
        .map(|g| EigenCluster {
            value: g.value,
            multiplicity: g.vectors.len(),
            kind: ClusterKind::Real,
            partner: None,
            offset: 0,
        })
        .collect();
    label(&mut clusters, tol_c);

    // Canonical order: sorted, with each paired lower cluster right after its upper.
    let mut order = Vec::with_capacity(clusters.len());
    for (i, c) in clusters.iter().enumerate() {
        match (c.kind, c.partner) {
            (ClusterKind::PairLower, Some(_)) => {}
            (ClusterKind::PairUpper, Some(p)) => {
                order.push(i);
                order.push(p);
            }
            _ => order.push(i),
        }
    }
    let mut position = vec![0; clusters.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let mut ordered = Vec::with_capacity(order.len());
    let mut columns = Vec::with_capacity(n);
    let mut offset = 0;
    for &old in &order {
        let mut c = clusters[old].clone();
        c.partner = c.partner.map(|p| position[p]);
        c.offset = offset;
        offset += c.multiplicity;
        columns.extend(built[old].vectors.iter().cloned());
        ordered.push(c);
    }
    clusters = ordered;

    let psi = ComplexMatrix::from_columns(n, &columns);
    let cond = condition_number(&psi);
    if cond.is_nan() || cond > tol.cond_max {
        return Err(Error::NonDiagonalizable(format!(
            "eigenvector matrix condition number {cond:e} exceeds {:e}",
            tol.cond_max
        )));
    }
    let phi = psi
        .inverse()
        .map_err(|_| Error::NonDiagonalizable("eigenvector matrix is singular".into()))?
        .adjoint();
    Ok(BiorthonormalSystem {
        clusters,
        psi,
        phi,
        hamiltonian: h.clone(),
        scale,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectrumTag {
    AllReal,
    ConjugatePaired,
    Mixed,
    Unpairable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumClass {
    pub tag: SpectrumTag,
    /// Kind of each cluster, in cluster order.
    pub kinds: Vec<ClusterKind>,
    /// Clusters with a complex eigenvalue and no conjugate partner.
    pub unpaired: Vec<usize>,
}

/// Classify a spectrum as real, conjugate-paired, mixed or unpairable.
///
/// Kinds and pairings are recomputed under `tol`, so the result does not
/// depend on the tolerance the system was built with.
pub fn classify_spectrum(sys: &BiorthonormalSystem, tol: &Tolerance) -> SpectrumClass {
    let mut clusters = sys.clusters.clone();
    label(&mut clusters, tol.cluster(sys.scale));
    let kinds: Vec<ClusterKind> = clusters.iter().map(|c| c.kind).collect();
    let unpaired: Vec<usize> = clusters
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kind != ClusterKind::Real && c.partner.is_none())
        .map(|(i, _)| i)
        .collect();
    let any_real = kinds.contains(&ClusterKind::Real);
    let any_complex = kinds.iter().any(|&k| k != ClusterKind::Real);
    let tag = if !unpaired.is_empty() {
        SpectrumTag::Unpairable
    } else if !any_complex {
        SpectrumTag::AllReal
    } else if !any_real {
        SpectrumTag::ConjugatePaired
    } else {
        SpectrumTag::Mixed
    };
    SpectrumClass {
        tag,
        kinds,
        unpaired,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiorthonormalityReport {
    /// `‖Φ†Ψ − I‖`
    pub duality: Check,
    /// `‖ΨΦ† − I‖`
    pub completeness: Check,
    pub pass: bool,
}

pub fn verify_biorthonormality(sys: &BiorthonormalSystem, tol: &Tolerance) -> BiorthonormalityReport {
    let n = sys.dim();
    let id = ComplexMatrix::identity(n);
    let threshold = tol.rtol * n as f64;
    let duality = Check::new((sys.phi.adjoint() * &sys.psi - &id).norm(), threshold);
    let completeness = Check::new((&sys.psi * sys.phi.adjoint() - &id).norm(), threshold);
    BiorthonormalityReport {
        duality,
        completeness,
        pass: duality.pass && completeness.pass,
    }
}

/// `Σ_n E_n Λ_n`.
pub fn reconstruct(sys: &BiorthonormalSystem) -> ComplexMatrix {
    &sys.psi * &ComplexMatrix::from_diagonal(&sys.column_values()) * sys.phi.adjoint()
}
