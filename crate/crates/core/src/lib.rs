//! Combinatorial Laplacians of simplicial pairs (X, A).
//!
//! The crate builds relative boundary matrices and Laplacians, computes
//! integer homology through the Smith normal form, enumerates relative
//! spanning trees and forests, checks the relative matrix-tree theorem in
//! exact arithmetic, and evaluates lower bounds on the spectral gap.
//!
//! ```
//! use relcomplex::generators::projective_plane;
//! use relcomplex::homology::relative_homology;
//! use relcomplex::ComplexPair;
//!
//! let rp2 = ComplexPair::absolute(projective_plane());
//! assert_eq!(relative_homology(&rp2, 1).unwrap().to_string(), "Z/2");
//! ```

pub mod bounds;
pub mod chains;
pub mod check;
pub mod complex;
pub mod eigen;
pub mod error;
pub mod face;
pub mod generators;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod pair;
pub mod random;
pub mod snf;
pub mod spanning;
pub mod spectra;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use face::{Face, Vertex};
pub use matrix::IntegerMatrix;
pub use pair::ComplexPair;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/laplacians.md")]
    mod laplacians {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/spanning.md")]
    mod spanning {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
