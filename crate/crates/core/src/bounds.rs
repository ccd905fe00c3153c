//! Lower bounds on spectral gaps μ_k(X, A) from missing faces, degrees and
//! boundary overlaps, with the vanishing-homology certificates they imply.
//!
//! Bounds are computed exactly when they are integers and compared with the
//! floating gap using τ_zero slack on the violating side only.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;

use crate::chains::epsilon;
use crate::complex::SimplicialComplex;
use crate::error::{domain, invariant, Result};
use crate::face::{Face, Vertex};
use crate::generators::{model_join, simplex};
use crate::homology::relative_homology;
use crate::matrix::IntegerMatrix;
use crate::pair::ComplexPair;
use crate::spectra::{
    absolute_laplacian, algebraic_connectivity, checked_eigenvalues, laplacian, zero_tolerance,
    LaplacianKind,
};

/// The k-th additive compound of a square matrix: rows and columns indexed
/// by the k-subsets of 0..n in lexicographic order.
pub fn additive_compound(m: &IntegerMatrix, k: usize) -> Result<IntegerMatrix> {
    if !m.is_square() {
        return Err(domain!("additive compound needs a square matrix"));
    }
    let n = m.rows();
    if k < 1 || k > n {
        return Err(domain!("compound order {k} outside 1..={n}"));
    }
    let subsets: Vec<Face> = (0..n as Vertex)
        .combinations(k)
        .map(|c| Face::new(c).expect("distinct"))
        .collect();
    let mut out = IntegerMatrix::zeros(subsets.len(), subsets.len());
    for (a, s) in subsets.iter().enumerate() {
        let diag: BigInt = s.vertices().iter().map(|&i| m.get(i as usize, i as usize)).sum();
        out.set(a, a, diag);
        for (b, t) in subsets.iter().enumerate() {
            if a == b || s.intersection(t).len() + 1 != k {
                continue;
            }
            let i = s.difference(t).vertices()[0] as usize;
            let j = t.difference(s).vertices()[0] as usize;
            let v = m.get(i, j).clone();
            let v = if epsilon(s, t)? % 2 == 0 { v } else { -v };
            out.set(a, b, v);
        }
    }
    Ok(out)
}

/// A bound value: exact when the formula only involves integers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundValue {
    Integer(i64),
    Float(f64),
}

impl BoundValue {
    pub fn as_f64(self) -> f64 {
        match self {
            BoundValue::Integer(v) => v as f64,
            BoundValue::Float(v) => v,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Integer(v) => write!(f, "{v}"),
            BoundValue::Float(v) => f.write_str(&format_float(*v)),
        }
    }
}

/// Six decimals with trailing zeros removed; "-0" prints as "0".
pub fn format_float(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    MissingFace,
    MissingFaceRefined,
    Flag,
    PureBoundary,
    Comparison,
    FlagComparison,
}

impl BoundName {
    pub fn label(self) -> &'static str {
        match self {
            BoundName::MissingFace => "4.2",
            BoundName::MissingFaceRefined => "4.2-refined",
            BoundName::Flag => "4.3",
            BoundName::PureBoundary => "4.4",
            BoundName::Comparison => "4.5",
            BoundName::FlagComparison => "flag-corollary",
        }
    }
}

/// One evaluated bound against the measured gap.
///
/// `bound` is a lower bound on `gap`. For the pure-boundary estimate,
/// `upper` is also set and the measured value must lie in the interval.
/// `gap` is `None` when there are no k-faces outside A; the bound then
/// holds vacuously. `certificate` is set only when the bound proves
/// H_k(X, A; R) = 0 and the exact Betti number agrees.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub k: isize,
    pub bound: BoundValue,
    pub upper: Option<BoundValue>,
    pub gap: Option<f64>,
    pub holds: bool,
    pub equality: bool,
    pub certificate: bool,
    pub hypothesis_met: bool,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(name: BoundName, k: isize, bound: BoundValue, measured: Option<(f64, f64)>) -> Self {
        let (gap, holds, equality) = match measured {
            None => (None, true, false),
            Some((g, tol)) => {
                let b = bound.as_f64();
                (Some(g), g >= b - tol, (g - b).abs() <= tol)
            }
        };
        BoundReport {
            name,
            k,
            bound,
            upper: None,
            gap,
            holds,
            equality,
            certificate: false,
            hypothesis_met: true,
            notes: Vec::new(),
        }
    }
}

/// Smallest eigenvalue of L_k(X, A) with its zero tolerance. Exact rank
/// decides whether it is zero.
fn measured_gap(pair: &ComplexPair, k: isize) -> Result<Option<(f64, f64)>> {
    let part = laplacian(pair, k, LaplacianKind::Full)?;
    let (ev, rank) = checked_eigenvalues(&part.matrix)?;
    let Some(&lo) = ev.first() else {
        return Ok(None);
    };
    let tol = zero_tolerance(*ev.last().expect("nonempty"));
    Ok(Some((if rank < ev.len() { 0.0 } else { lo }, tol)))
}

/// Confirms H_k(X, A; R) = 0 exactly after a bound has certified it.
fn confirm_vanishing(pair: &ComplexPair, k: isize) -> Result<()> {
    let h = relative_homology(pair, k)?;
    if h.betti != 0 {
        return Err(invariant!(
            "bound certifies H_{k}(X, A; R) = 0 but the exact Betti number is {}",
            h.betti
        ));
    }
    Ok(())
}

fn check_bound_dimension(pair: &ComplexPair, k: isize) -> Result<()> {
    if k < 1 {
        return Err(domain!("these bounds are stated for k ≥ 1, got {k}"));
    }
    if k > pair.dim().max(1) {
        return Err(domain!("dimension {k} exceeds dim X = {}", pair.dim()));
    }
    Ok(())
}

/// Missing-face bound for a pair whose subcomplex is a k-th discrete
/// boundary, in its closed and refined forms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MissingFaceReport {
    pub closed: BoundReport,
    pub refined: BoundReport,
    /// h(X′); `None` when X′ is a full simplex, in which case 0 is used.
    pub h_prime: Option<isize>,
    pub n_prime: usize,
    pub max_overlap: usize,
    pub overlap_constant: bool,
    /// When the closed form is attained: whether X′ has the spectrum and
    /// f-vector of the model join and the overlaps are constant.
    pub characterization: Option<bool>,
}

/// |σ_{k−1} ∩ A_{k−1}| for every σ ∈ X′_k.
fn overlaps(pair: &ComplexPair, xp: &SimplicialComplex, k: isize) -> Vec<usize> {
    xp.faces(k).map(|s| pair.boundary_overlap(s)).collect()
}

/// The model complex with parameters (h, n, k), allowing h = 0 where the
/// join collapses to Δ^k.
fn model_complex(h: usize, n: usize, k: usize) -> Result<SimplicialComplex> {
    if h == 0 {
        return Ok(simplex(k));
    }
    model_join(h, n, k)
}

fn sorted_spectrum(x: &SimplicialComplex, k: isize) -> Result<Vec<f64>> {
    let m = absolute_laplacian(x, k)?.matrix;
    Ok(checked_eigenvalues(&m)?.0)
}

/// X′ matches the model when the f-vectors agree and the k-th Laplacian
/// spectra agree within tolerance.
fn matches_model(xp: &SimplicialComplex, h: usize, n: usize, k: isize) -> Result<bool> {
    let Ok(model) = model_complex(h, n, k as usize) else {
        return Ok(false);
    };
    if model.f_vector() != xp.f_vector() {
        return Ok(false);
    }
    let (a, b) = (sorted_spectrum(xp, k)?, sorted_spectrum(&model, k)?);
    let tol = 1e-6 * a.last().copied().unwrap_or(1.0).max(1.0);
    Ok(a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol))
}

pub fn bound_thm42(pair: &ComplexPair, k: isize) -> Result<MissingFaceReport> {
    check_bound_dimension(pair, k)?;
    let xp = pair.x_prime(k)?;
    let h_prime = xp.missing_face_dim();
    let h = h_prime.unwrap_or(0) as i64;
    let n_prime = xp.num_vertices();
    let n = n_prime as i64;
    let ov = overlaps(pair, &xp, k);
    let max_overlap = ov.iter().copied().max().unwrap_or(0);
    let overlap_constant = ov.iter().all_equal();

    // L_k(X, A) = L_k(X′) − R with R the diagonal of overlaps.
    if xp.dim() >= k {
        let rel = laplacian(pair, k, LaplacianKind::Full)?.matrix;
        let mut shifted = absolute_laplacian(&xp, k)?.matrix;
        for (i, &o) in ov.iter().enumerate() {
            let v = shifted.get(i, i) - BigInt::from(o);
            shifted.set(i, i, v);
        }
        if shifted != rel {
            return Err(invariant!(
                "L_k(X, A) differs from L_k(X′) minus the overlap diagonal"
            ));
        }
    }

    let base = (h + 1) * (k as i64 + 1) - h * n;
    let closed_value = base - max_overlap as i64;
    let refined_value = xp
        .faces(k)
        .zip(&ov)
        .map(|(s, &o)| (h + 1) * xp.degree(s).expect("face of X′") as i64 - o as i64)
        .min()
        .unwrap_or(0)
        + base;
    let measured = measured_gap(pair, k)?;
    let mut closed = BoundReport::new(
        BoundName::MissingFace,
        k,
        BoundValue::Integer(closed_value),
        measured,
    );
    let mut refined = BoundReport::new(
        BoundName::MissingFaceRefined,
        k,
        BoundValue::Integer(refined_value),
        measured,
    );
    if refined_value < closed_value {
        return Err(invariant!(
            "refined bound {refined_value} is below the closed form {closed_value}"
        ));
    }
    if h_prime.is_none() {
        for r in [&mut closed, &mut refined] {
            r.notes
                .push("X′ has no missing face; evaluated with h′ = 0".to_string());
        }
    }
    let characterization = if closed.equality {
        let hp = h as usize;
        Some(overlap_constant && matches_model(&xp, hp, n_prime, k)?)
    } else {
        None
    };
    Ok(MissingFaceReport {
        closed,
        refined,
        h_prime,
        n_prime,
        max_overlap,
        overlap_constant,
        characterization,
    })
}

/// Bound for flag complexes in terms of λ_2 of the 1-skeleton of X′.
pub fn bound_thm43(pair: &ComplexPair, k: isize) -> Result<BoundReport> {
    check_bound_dimension(pair, k)?;
    if !pair.complex().is_flag() {
        return Err(domain!("X is not a flag complex"));
    }
    let xp = pair.x_prime(k)?;
    let n_prime = xp.num_vertices();
    let ov = overlaps(pair, &xp, k);
    let max_overlap = ov.iter().copied().max().unwrap_or(0);
    let lambda2 = algebraic_connectivity(&xp)?.unwrap_or(0.0);
    check_compound_decomposition(pair, &xp, k, &ov)?;

    let kf = k as f64;
    let value = (kf + 1.0) * lambda2 - kf * n_prime as f64 - max_overlap as f64;
    let measured = measured_gap(pair, k)?;
    let mut report = BoundReport::new(BoundName::Flag, k, BoundValue::Float(value), measured);
    let threshold = (kf * n_prime as f64 + max_overlap as f64) / (kf + 1.0);
    if measured.is_some() && lambda2 - threshold > zero_tolerance(lambda2) {
        confirm_vanishing(pair, k)?;
        report.certificate = true;
    }
    report.notes.push(format!(
        "lambda_2(G_X') = {}, n' = {n_prime}, max overlap = {max_overlap}",
        format_float(lambda2)
    ));
    Ok(report)
}

/// Checks L_k(X, A) = P − R where P is the principal submatrix of the
/// (k+1)-th compound of L_0(X′) on X′_k and R is diagonal with entries
/// Σ_{u∈σ} deg(u) − deg(σ) + |σ_{k−1} ∩ A_{k−1}|.
fn check_compound_decomposition(
    pair: &ComplexPair,
    xp: &SimplicialComplex,
    k: isize,
    ov: &[usize],
) -> Result<()> {
    let verts = xp.vertices();
    let faces: Vec<Face> = xp.faces(k).cloned().collect();
    if faces.is_empty() {
        return Ok(());
    }
    let l0 = absolute_laplacian(xp, 0)?.matrix;
    let compound = additive_compound(&l0, k as usize + 1)?;
    let index: Vec<usize> = faces
        .iter()
        .map(|s| {
            let local: Vec<Vertex> = s
                .vertices()
                .iter()
                .map(|v| verts.binary_search(v).expect("vertex of X′") as Vertex)
                .collect();
            rank_subset(&local, verts.len())
        })
        .collect();
    let mut p = compound.select(&index, &index);
    for (i, s) in faces.iter().enumerate() {
        let vdeg: usize = s
            .vertices()
            .iter()
            .map(|&v| xp.degree(&Face::vertex(v)).expect("vertex of X′"))
            .sum();
        let r = vdeg - xp.degree(s).expect("face of X′") + ov[i];
        let v = p.get(i, i) - BigInt::from(r);
        p.set(i, i, v);
    }
    let rel = laplacian(pair, k, LaplacianKind::Full)?.matrix;
    let p = p.with_labels(rel.row_labels().to_vec(), rel.col_labels().to_vec());
    if p != rel {
        return Err(invariant!("L_k(X, A) differs from the compound decomposition"));
    }
    Ok(())
}

/// Position of a sorted subset among all subsets of the same size of 0..n
/// in lexicographic order.
fn rank_subset(s: &[Vertex], n: usize) -> usize {
    let k = s.len();
    let mut rank = 0usize;
    let mut prev: usize = 0;
    for (i, &v) in s.iter().enumerate() {
        for skipped in prev..v as usize {
            rank += binom(n - skipped - 1, k - i - 1);
        }
        prev = v as usize + 1;
    }
    rank
}

fn binom(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r.min(n - r)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Two-sided estimate of μ_d(X) for a pure d-complex from the overlaps of
/// its top faces with the discrete boundary B(X). When H_d(X, B(X); R) = 0
/// the hypothesis is not met and the report holds vacuously.
pub fn bound_thm44(x: &SimplicialComplex) -> Result<BoundReport> {
    let d = x.dim();
    if d < 1 || !x.is_pure() {
        return Err(domain!("needs a pure complex of dimension ≥ 1"));
    }
    let b = x.discrete_boundary()?;
    let rel = ComplexPair::new(x.clone(), b)?;
    let ov: Vec<usize> = x.faces(d).map(|s| rel.boundary_overlap(s)).collect();
    let lo = *ov.iter().min().expect("pure and nonempty");
    let hi = *ov.iter().max().expect("pure and nonempty");
    let abs = ComplexPair::absolute(x.clone());
    let measured = measured_gap(&abs, d)?;
    let mut report = BoundReport::new(
        BoundName::PureBoundary,
        d,
        BoundValue::Integer(lo as i64),
        measured,
    );
    report.upper = Some(BoundValue::Integer(hi as i64));
    let beta = relative_homology(&rel, d)?.betti;
    report.hypothesis_met = beta > 0;
    if let Some((g, tol)) = measured {
        report.holds = !report.hypothesis_met || (g >= lo as f64 - tol && g <= hi as f64 + tol);
    }
    if !report.hypothesis_met {
        report.equality = false;
        report.notes.push("H_d(X, B(X); R) = 0: hypothesis not met".to_string());
    }
    Ok(report)
}

/// max over σ ∈ X_k \ A_k of |σ_{k−1} ∩ A_{k−1}| + |{τ ∈ X_k \ A_k :
/// τ ∩ σ ∈ A_{k−1}}|.
pub fn comparison_penalty(pair: &ComplexPair, k: isize) -> usize {
    let rel = pair.relative_faces(k);
    let a = pair.subcomplex();
    rel.iter()
        .map(|s| {
            let shared = rel
                .iter()
                .filter(|t| {
                    let i = s.intersection(t);
                    i.len() == s.len() - 1 && a.contains(&i)
                })
                .count();
            pair.boundary_overlap(s) + shared
        })
        .max()
        .unwrap_or(0)
}

/// μ_k(X, A) ≥ μ_k(X) − penalty, with a certificate when μ_k(X) exceeds
/// the penalty.
pub fn bound_thm45(pair: &ComplexPair, k: isize) -> Result<BoundReport> {
    check_bound_dimension(pair, k)?;
    let penalty = comparison_penalty(pair, k);
    let abs = ComplexPair::absolute(pair.complex().clone());
    let measured = measured_gap(pair, k)?;
    let Some((mu_abs, tol_abs)) = measured_gap(&abs, k)? else {
        let mut r = BoundReport::new(BoundName::Comparison, k, BoundValue::Integer(0), None);
        r.notes.push("no k-faces".to_string());
        return Ok(r);
    };
    let value = mu_abs - penalty as f64;
    let mut report = BoundReport::new(BoundName::Comparison, k, BoundValue::Float(value), measured);
    if let (Some((g, tol)), BoundValue::Float(b)) = (measured, report.bound) {
        // Both sides are floating; allow the roundoff of each.
        report.holds = g >= b - tol - tol_abs;
        report.equality = (g - b).abs() <= tol + tol_abs;
    }
    if measured.is_some() && value > tol_abs {
        confirm_vanishing(pair, k)?;
        report.certificate = true;
    }
    report.notes.push(format!(
        "mu_k(X) = {}, penalty = {penalty}",
        format_float(mu_abs)
    ));
    Ok(report)
}

/// For a flag complex X on n vertices and any subcomplex A: μ_k(X, A) ≥
/// (k+1)λ_2(G_X) − kn − penalty, which certifies H_k(X, A; R) = 0 when
/// positive.
pub fn flag_corollary(pair: &ComplexPair, k: isize) -> Result<BoundReport> {
    check_bound_dimension(pair, k)?;
    let x = pair.complex();
    if !x.is_flag() {
        return Err(domain!("X is not a flag complex"));
    }
    let n = x.num_vertices() as f64;
    let lambda2 = algebraic_connectivity(x)?.unwrap_or(0.0);
    let penalty = comparison_penalty(pair, k) as f64;
    let kf = k as f64;
    let value = (kf + 1.0) * lambda2 - kf * n - penalty;
    let measured = measured_gap(pair, k)?;
    let mut report =
        BoundReport::new(BoundName::FlagComparison, k, BoundValue::Float(value), measured);
    let threshold = (kf * n + penalty) / (kf + 1.0);
    if measured.is_some() && lambda2 - threshold > zero_tolerance(lambda2) {
        confirm_vanishing(pair, k)?;
        report.certificate = true;
    }
    report.notes.push(format!(
        "lambda_2(G_X) = {}, threshold = {}",
        format_float(lambda2),
        format_float(threshold)
    ));
    Ok(report)
}

/// Every bound whose hypotheses the pair meets at dimension k. Bounds whose
/// preconditions fail are skipped, not reported as violations.
pub fn all_bounds(pair: &ComplexPair, k: isize) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    check_bound_dimension(pair, k)?;
    if pair.is_discrete_boundary(k) {
        let r = bound_thm42(pair, k)?;
        out.push(r.closed);
        out.push(r.refined);
        if pair.complex().is_flag() {
            out.push(bound_thm43(pair, k)?);
        }
    }
    if pair.subcomplex_is_trivial() && pair.dim() == k && pair.complex().is_pure() {
        out.push(bound_thm44(pair.complex())?);
    }
    out.push(bound_thm45(pair, k)?);
    if pair.complex().is_flag() {
        out.push(flag_corollary(pair, k)?);
    }
    Ok(out)
}
