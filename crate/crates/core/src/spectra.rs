//! Relative Laplacians and their spectra.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::chains::{epsilon, Augmentation, RelativeChains};
use crate::complex::SimplicialComplex;
use crate::eigen::symmetric_eigenvalues;
use crate::error::{domain, invariant, Result};
use crate::face::Face;
use crate::homology::betti;
use crate::matrix::IntegerMatrix;
use crate::pair::ComplexPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianKind {
    /// L_k = L_k^ud + L_k^du.
    Full,
    /// ∂_{k+1} ∂_{k+1}^T.
    UpDown,
    /// ∂_k^T ∂_k.
    DownUp,
}

/// A Laplacian part on C_k, rows and columns labelled by the k-faces of
/// X \ A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianPart {
    pub kind: LaplacianKind,
    pub k: isize,
    pub matrix: IntegerMatrix,
}

/// Floating spectrum with exact rank, characteristic polynomial and
/// pseudo-determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub exact_rank: usize,
    pub zero_multiplicity: usize,
    pub pseudo_det: BigInt,
    /// Coefficients of det(tI − L), lowest degree first.
    pub charpoly: Vec<BigInt>,
}

impl SpectrumReport {
    pub fn smallest(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn largest(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    pub fn nonzero(&self) -> &[f64] {
        &self.eigenvalues[self.zero_multiplicity..]
    }
}

/// Zero threshold for a spectrum whose largest eigenvalue is `lambda_max`.
pub fn zero_tolerance(lambda_max: f64) -> f64 {
    1e-8 * lambda_max.abs().max(1.0)
}

fn product_form(chains: &RelativeChains<'_>, k: isize, kind: LaplacianKind) -> IntegerMatrix {
    let up = || {
        let b = chains.boundary(k + 1);
        b.mul(&b.transpose())
    };
    let down = || {
        let b = chains.boundary(k);
        b.transpose().mul(&b)
    };
    match kind {
        LaplacianKind::UpDown => up(),
        LaplacianKind::DownUp => down(),
        LaplacianKind::Full => up().add(&down()),
    }
}

/// Entrywise formulas: for the up-down part, deg_X(σ) on the diagonal and
/// −(−1)^ε(σ,τ) when σ ∪ τ ∈ X_{k+1}; for the down-up part, the number of
/// facets of σ surviving in C_{k−1} on the diagonal and (−1)^ε(σ,τ) when
/// σ ∩ τ survives in C_{k−1}.
fn closed_form(chains: &RelativeChains<'_>, k: isize, kind: LaplacianKind) -> IntegerMatrix {
    let x = chains.pair().complex();
    let basis = chains.basis(k);
    let lower = chains.basis(k - 1);
    let in_lower = |f: &Face| lower.binary_search(f).is_ok();
    let n = basis.len();
    let mut m = IntegerMatrix::zeros(n, n);
    let (want_up, want_down) = match kind {
        LaplacianKind::Full => (true, true),
        LaplacianKind::UpDown => (true, false),
        LaplacianKind::DownUp => (false, true),
    };
    for (i, s) in basis.iter().enumerate() {
        let mut diag = 0i64;
        if want_up {
            diag += x.cofacets(s).count() as i64;
        }
        if want_down {
            diag += s.facets().filter(|(_, g)| in_lower(g)).count() as i64;
        }
        m.set(i, i, BigInt::from(diag));
        for (j, t) in basis.iter().enumerate() {
            if i == j || s.intersection(t).len() + 1 != s.len() {
                continue;
            }
            let e = epsilon(s, t).expect("faces share a facet");
            let parity: i64 = if e % 2 == 0 { 1 } else { -1 };
            let mut v = 0i64;
            if want_up && x.contains(&s.union(t)) {
                v -= parity;
            }
            if want_down && in_lower(&s.intersection(t)) {
                v += parity;
            }
            m.set(i, j, BigInt::from(v));
        }
    }
    m.with_labels(basis.clone(), basis)
}

/// A Laplacian part for any chain complex of a pair, in any degree. Both
/// the matrix product and the entrywise formulas are evaluated; any
/// disagreement is an invariant violation.
pub fn laplacian_of(
    chains: &RelativeChains<'_>,
    k: isize,
    kind: LaplacianKind,
) -> Result<LaplacianPart> {
    let prod = product_form(chains, k, kind);
    let closed = closed_form(chains, k, kind);
    if prod != closed {
        return Err(invariant!(
            "product-form and entrywise {kind:?} Laplacians differ in degree {k}"
        ));
    }
    Ok(LaplacianPart {
        kind,
        k,
        matrix: prod,
    })
}

/// L_k(X, A) or one of its parts, with C_{−1}(X, A) = 0.
pub fn laplacian(pair: &ComplexPair, k: isize, kind: LaplacianKind) -> Result<LaplacianPart> {
    if k < 0 || k > pair.dim() {
        return Err(domain!("dimension {k} outside 0..={}", pair.dim()));
    }
    laplacian_of(&RelativeChains::new(pair, Augmentation::Relative), k, kind)
}

/// The absolute Laplacian L_k(X): the augmented complex of X, so L_0 is the
/// graph Laplacian plus the all-ones matrix.
pub fn absolute_laplacian(x: &SimplicialComplex, k: isize) -> Result<LaplacianPart> {
    if k < 0 || k > x.dim() {
        return Err(domain!("dimension {k} outside 0..={}", x.dim()));
    }
    let pair = ComplexPair::absolute(x.clone());
    laplacian_of(
        &RelativeChains::new(&pair, Augmentation::Reduced),
        k,
        LaplacianKind::Full,
    )
}

/// Floating eigenvalues and the exact rank. The count of eigenvalues
/// below the zero tolerance must equal the exact nullity.
pub fn checked_eigenvalues(m: &IntegerMatrix) -> Result<(Vec<f64>, usize)> {
    if !m.is_symmetric() {
        return Err(domain!("eigenvalues requested for a non-symmetric matrix"));
    }
    let ev = symmetric_eigenvalues(&m.to_f64());
    let rank = m.rank();
    let tol = zero_tolerance(ev.last().copied().unwrap_or(0.0));
    let zeros = ev.iter().filter(|x| x.abs() < tol).count();
    if zeros != m.rows() - rank {
        return Err(invariant!(
            "floating zero count {zeros} differs from exact nullity {}",
            m.rows() - rank
        ));
    }
    if ev.first().is_some_and(|&x| x < -tol) {
        return Err(invariant!("negative eigenvalue {} in a Laplacian", ev[0]));
    }
    Ok((ev, rank))
}

pub fn spectrum_of_matrix(m: &IntegerMatrix) -> Result<SpectrumReport> {
    let (mut eigenvalues, exact_rank) = checked_eigenvalues(m)?;
    let n = m.rows();
    let zero_multiplicity = n - exact_rank;
    for x in &mut eigenvalues[..zero_multiplicity] {
        *x = 0.0;
    }
    let charpoly = m.charpoly()?;
    let pseudo_det = charpoly[n - exact_rank].abs();
    Ok(SpectrumReport {
        eigenvalues,
        exact_rank,
        zero_multiplicity,
        pseudo_det,
        charpoly,
    })
}

pub fn spectrum(part: &LaplacianPart) -> Result<SpectrumReport> {
    spectrum_of_matrix(&part.matrix)
}

/// μ_k(X, A), the smallest eigenvalue of L_k(X, A); `None` when
/// X_k \ A_k is empty.
pub fn spectral_gap(pair: &ComplexPair, k: isize) -> Result<Option<f64>> {
    let part = laplacian(pair, k, LaplacianKind::Full)?;
    let (ev, rank) = checked_eigenvalues(&part.matrix)?;
    Ok(ev.first().map(|&x| if rank < ev.len() { 0.0 } else { x }))
}

/// χ_j = Σ_{i ≥ j+1} (−1)^{i−j−1} (f_i − β_i) for a chain complex of a
/// pair. Equal to rank ∂_{j+1}; the equality is verified.
pub fn chi_of(chains: &RelativeChains<'_>, j: isize) -> Result<usize> {
    let top = chains.pair().dim();
    let mut sum: i64 = 0;
    for i in (j + 1)..=top {
        let term = chains.rank_of_group(i) as i64 - betti(chains, i) as i64;
        sum += if (i - j - 1) % 2 == 0 { term } else { -term };
    }
    let rank = chains.boundary(j + 1).rank() as i64;
    if sum != rank {
        return Err(invariant!(
            "alternating sum {sum} differs from rank {rank} of the degree {} boundary",
            j + 1
        ));
    }
    Ok(rank as usize)
}

/// χ_{k−1}(X, A) = Σ_{j≥k} (−1)^{j−k} (f_j − β_j), which equals the rank
/// of ∂_k(X, A). Note the index shift: the argument is the degree of the
/// boundary map.
pub fn chi(pair: &ComplexPair, k: isize) -> Result<usize> {
    if k < 0 {
        return Err(domain!("chi needs k ≥ 0"));
    }
    chi_of(&RelativeChains::new(pair, Augmentation::Relative), k - 1)
}

/// (nullity of L_k^ud, nullity of L_k^du) = (f_k − χ_k, f_k − χ_{k−1}),
/// cross-checked against exact ranks of both parts.
pub fn zero_multiplicities(pair: &ComplexPair, k: isize) -> Result<(usize, usize)> {
    let chains = RelativeChains::new(pair, Augmentation::Relative);
    zero_multiplicities_of(&chains, k)
}

pub fn zero_multiplicities_of(chains: &RelativeChains<'_>, k: isize) -> Result<(usize, usize)> {
    let f = chains.rank_of_group(k);
    let predicted = (f - chi_of(chains, k)?, f - chi_of(chains, k - 1)?);
    let ud = laplacian_of(chains, k, LaplacianKind::UpDown)?.matrix;
    let du = laplacian_of(chains, k, LaplacianKind::DownUp)?.matrix;
    let measured = (f - ud.rank(), f - du.rank());
    if predicted != measured {
        return Err(invariant!(
            "zero multiplicities {measured:?} differ from f_k − χ predictions {predicted:?}"
        ));
    }
    Ok(measured)
}

/// Both λ_max estimates for L_k^ud(X, A).
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMaxReport {
    pub lambda_max: f64,
    /// (k + 2) · max deg_X over all k-faces of X.
    pub upper_bound: usize,
    pub upper_holds: bool,
    /// Σ deg_X(σ) over X_k \ A_k, divided by χ_k; `None` when χ_k = 0.
    pub lower_bound: Option<f64>,
    pub lower_holds: Option<bool>,
}

pub fn lambda_max_bounds(pair: &ComplexPair, k: isize) -> Result<LambdaMaxReport> {
    let part = laplacian(pair, k, LaplacianKind::UpDown)?;
    let (ev, _) = checked_eigenvalues(&part.matrix)?;
    let lambda_max = ev.last().copied().unwrap_or(0.0);
    let tol = zero_tolerance(lambda_max);
    let x = pair.complex();
    let max_deg = x
        .faces(k)
        .map(|s| x.cofacets(s).count())
        .max()
        .unwrap_or(0);
    let upper_bound = (k as usize + 2) * max_deg;
    let chi_k = chi(pair, k + 1)?;
    let lower_bound = (chi_k > 0).then(|| {
        let total: usize = pair
            .relative_faces(k)
            .iter()
            .map(|s| x.cofacets(s).count())
            .sum();
        total as f64 / chi_k as f64
    });
    Ok(LambdaMaxReport {
        lambda_max,
        upper_bound,
        upper_holds: lambda_max <= upper_bound as f64 + tol,
        lower_bound,
        lower_holds: lower_bound.map(|b| b <= lambda_max + tol),
    })
}

/// Graph Laplacian of the 1-skeleton, rows and columns by vertex.
pub fn graph_laplacian(x: &SimplicialComplex) -> IntegerMatrix {
    let verts: Vec<Face> = x.faces(0).cloned().collect();
    let b = crate::chains::signed_incidence(verts, x.faces(1).cloned().collect());
    b.mul(&b.transpose())
}

/// λ_2 of the 1-skeleton; `None` with fewer than two vertices.
pub fn algebraic_connectivity(x: &SimplicialComplex) -> Result<Option<f64>> {
    let (ev, rank) = checked_eigenvalues(&graph_laplacian(x))?;
    if ev.len() < 2 {
        return Ok(None);
    }
    Ok(Some(if rank + 1 < ev.len() { 0.0 } else { ev[1] }))
}

/// Pseudo-determinant as the product of nonzero floating eigenvalues, used
/// only to cross-check the exact value.
pub fn float_pseudo_det(report: &SpectrumReport) -> f64 {
    report.nonzero().iter().product()
}

/// Matches the nonzero parts of two sorted spectra within a relative
/// tolerance.
pub fn nonzero_spectra_match(a: &[f64], b: &[f64], rel_tol: f64) -> bool {
    let nz = |v: &[f64]| -> Vec<f64> {
        let tol = zero_tolerance(v.last().copied().unwrap_or(0.0));
        v.iter().copied().filter(|x| x.abs() >= tol).collect()
    };
    let (a, b) = (nz(a), nz(b));
    a.len() == b.len()
        && a.iter()
            .zip(&b)
            .all(|(x, y)| (x - y).abs() <= rel_tol * x.abs().max(y.abs()).max(1.0))
}
