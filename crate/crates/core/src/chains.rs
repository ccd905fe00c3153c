//! Oriented boundary matrices.
//!
//! Every face is oriented by its sorted vertex list. Rows and columns are
//! in lexicographic face order.

use num_bigint::BigInt;

use crate::complex::SimplicialComplex;
use crate::error::{domain, Result};
use crate::face::Face;
use crate::matrix::IntegerMatrix;
use crate::pair::ComplexPair;

/// sgn(η, σ) = (−1)^i where η = σ \ {v_i} and σ = [v_0, ..., v_k].
pub fn sign(eta: &Face, sigma: &Face) -> Result<i32> {
    if eta.len() + 1 != sigma.len() || !eta.is_subset(sigma) {
        return Err(domain!("{eta} is not a codimension-one face of {sigma}"));
    }
    let i = (0..sigma.len())
        .find(|&i| eta.vertices().get(i) != Some(&sigma.vertices()[i]))
        .expect("one vertex is missing");
    Ok(if i % 2 == 0 { 1 } else { -1 })
}

/// ε(σ, τ): the number of shared vertices strictly between u and v, where
/// {u, v} is the symmetric difference of two faces meeting in a common
/// codimension-one face.
pub fn epsilon(sigma: &Face, tau: &Face) -> Result<usize> {
    let shared = sigma.intersection(tau);
    if sigma.len() != tau.len() || shared.len() + 1 != sigma.len() {
        return Err(domain!("{sigma} and {tau} do not share a codimension-one face"));
    }
    let a = sigma.difference(tau).vertices()[0];
    let b = tau.difference(sigma).vertices()[0];
    let (u, v) = (a.min(b), a.max(b));
    Ok(shared.vertices().iter().filter(|&&w| u < w && w < v).count())
}

/// The signed incidence matrix with the given (sorted) row and column
/// faces: entry sgn(η, σ) when η ⊂ σ, zero otherwise.
pub fn signed_incidence(rows: Vec<Face>, cols: Vec<Face>) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (j, sigma) in cols.iter().enumerate() {
        for (idx, eta) in sigma.facets() {
            if let Ok(i) = rows.binary_search(&eta) {
                let s = if idx % 2 == 0 { 1 } else { -1 };
                m.set(i, j, BigInt::from(s));
            }
        }
    }
    m.with_labels(rows, cols)
}

fn check_range(dim: isize, k: isize) -> Result<()> {
    if k < 0 || k > dim {
        return Err(domain!("dimension {k} outside 0..={dim}"));
    }
    Ok(())
}

/// ∂_k(X): rows X_{k−1} (the single row ∅ when k = 0), columns X_k.
pub fn boundary_matrix(x: &SimplicialComplex, k: isize) -> Result<IntegerMatrix> {
    check_range(x.dim(), k)?;
    Ok(signed_incidence(
        x.faces(k - 1).cloned().collect(),
        x.faces(k).cloned().collect(),
    ))
}

/// ∂_k(X, A): rows X_{k−1} \ A_{k−1}, columns X_k \ A_k. Since ∅ ∈ A the
/// k = 0 matrix has no rows.
pub fn relative_boundary_matrix(pair: &ComplexPair, k: isize) -> Result<IntegerMatrix> {
    check_range(pair.dim(), k)?;
    Ok(RelativeChains::new(pair, Augmentation::Relative).boundary(k))
}

/// ∂_k[B, C]: rows C ⊆ X_{k−1}, columns B ⊆ X_k, both sorted.
pub fn submatrix(
    x: &SimplicialComplex,
    k: isize,
    b: &[Face],
    c: &[Face],
) -> Result<IntegerMatrix> {
    if b.len() != c.len() {
        return Err(domain!("|B| = {} differs from |C| = {}", b.len(), c.len()));
    }
    if let Some(f) = b.iter().find(|f| f.dim() != k || !x.contains(f)) {
        return Err(domain!("{f} is not a {k}-face of the complex"));
    }
    if let Some(f) = c.iter().find(|f| f.dim() != k - 1 || !x.contains(f)) {
        return Err(domain!("{f} is not a {}-face of the complex", k - 1));
    }
    let mut b = b.to_vec();
    let mut c = c.to_vec();
    b.sort();
    c.sort();
    Ok(signed_incidence(c, b))
}

/// How the degree −1 chain group of a pair is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Augmentation {
    /// C_{−1}(X, A) = 0: ∅ always lies in A and is quotiented out. H_0
    /// counts components not meeting A (all components when A = {∅}).
    Relative,
    /// When A has no vertices, C_{−1} keeps the basis element ∅, so
    /// (X, {∅}) yields the augmented (reduced) complex of X. For A with
    /// vertices this coincides with `Relative`.
    Reduced,
}

/// The chain complex of a pair with a chosen augmentation. Bases are
/// defined for every integer degree and empty outside the complex.
#[derive(Clone, Copy, Debug)]
pub struct RelativeChains<'a> {
    pair: &'a ComplexPair,
    aug: Augmentation,
}

impl<'a> RelativeChains<'a> {
    pub fn new(pair: &'a ComplexPair, aug: Augmentation) -> Self {
        RelativeChains { pair, aug }
    }

    pub fn pair(&self) -> &'a ComplexPair {
        self.pair
    }

    pub fn augmentation(&self) -> Augmentation {
        self.aug
    }

    /// Basis faces of C_k in lexicographic order.
    pub fn basis(&self, k: isize) -> Vec<Face> {
        match k {
            k if k < -1 => Vec::new(),
            -1 => match self.aug {
                Augmentation::Reduced if self.pair.subcomplex_is_trivial() => {
                    vec![Face::empty()]
                }
                _ => Vec::new(),
            },
            k => self.pair.relative_faces(k),
        }
    }

    pub fn rank_of_group(&self, k: isize) -> usize {
        self.basis(k).len()
    }

    /// The boundary map C_k → C_{k−1}.
    pub fn boundary(&self, k: isize) -> IntegerMatrix {
        signed_incidence(self.basis(k - 1), self.basis(k))
    }
}
