//! Complex pairs (X, A).

use crate::complex::SimplicialComplex;
use crate::error::{domain, invariant, Error, Result};
use crate::face::Face;

/// A complex together with a subcomplex. Inclusion is checked once at
/// construction; the pair is immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPair {
    complex: SimplicialComplex,
    subcomplex: SimplicialComplex,
}

impl ComplexPair {
    pub fn new(complex: SimplicialComplex, subcomplex: SimplicialComplex) -> Result<Self> {
        if let Some(f) = subcomplex.all_faces().find(|f| !complex.contains(f)) {
            return Err(Error::Validation(format!(
                "subcomplex not contained in complex (face {f})"
            )));
        }
        Ok(ComplexPair {
            complex,
            subcomplex,
        })
    }

    /// (X, {∅}).
    pub fn absolute(complex: SimplicialComplex) -> Self {
        ComplexPair {
            complex,
            subcomplex: SimplicialComplex::void_face(),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn subcomplex(&self) -> &SimplicialComplex {
        &self.subcomplex
    }

    pub fn dim(&self) -> isize {
        self.complex.dim()
    }

    /// True when A has no vertices, i.e. A = {∅}.
    pub fn subcomplex_is_trivial(&self) -> bool {
        self.subcomplex.dim() < 0
    }

    /// X_k \ A_k in lexicographic order.
    pub fn relative_faces(&self, k: isize) -> Vec<Face> {
        self.complex
            .faces(k)
            .filter(|f| !self.subcomplex.contains(f))
            .cloned()
            .collect()
    }

    /// f_k(X, A) = |X_k \ A_k|.
    pub fn f(&self, k: isize) -> usize {
        self.complex.f(k) - self.subcomplex.f(k)
    }

    /// (X_(p), A_(p)).
    pub fn skeleton(&self, p: isize) -> ComplexPair {
        ComplexPair {
            complex: self.complex.skeleton(p),
            subcomplex: self.subcomplex.skeleton(p),
        }
    }

    /// Whether every (k−1)-face of A has degree at most one in X.
    pub fn is_discrete_boundary(&self, k: isize) -> bool {
        self.subcomplex
            .faces(k - 1)
            .all(|f| self.complex.degree(f).is_ok_and(|d| d <= 1))
    }

    /// |σ_{k−1} ∩ A_{k−1}|: how many codimension-one faces of σ lie in A.
    pub fn boundary_overlap(&self, sigma: &Face) -> usize {
        sigma
            .facets()
            .filter(|(_, g)| self.subcomplex.contains(g))
            .count()
    }

    /// X′: the closure of X_k \ A_k together with all faces of dimension
    /// above k. Requires A to be a k-th discrete boundary. The two facts
    /// X′_k = X_k \ A_k and X′_{k+1} = X_{k+1} are verified on the result.
    pub fn x_prime(&self, k: isize) -> Result<SimplicialComplex> {
        if k < 0 {
            return Err(domain!("x_prime needs k ≥ 0, got {k}"));
        }
        if !self.is_discrete_boundary(k) {
            return Err(domain!("subcomplex is not a {k}-th discrete boundary"));
        }
        let top = self.complex.dim();
        let faces = self
            .relative_faces(k)
            .into_iter()
            .chain((k + 1..=top).flat_map(|j| self.complex.faces(j).cloned()));
        let xp = SimplicialComplex::closure(faces);
        let rel: Vec<Face> = self.relative_faces(k);
        if !xp.faces(k).eq(rel.iter()) {
            return Err(invariant!("X′_k differs from X_k \\ A_k"));
        }
        if !xp.faces(k + 1).eq(self.complex.faces(k + 1)) {
            return Err(invariant!("X′_(k+1) differs from X_(k+1)"));
        }
        Ok(xp)
    }
}
