//! Integer relative homology.

use num_bigint::BigInt;
use num_traits::One;

use crate::chains::{Augmentation, RelativeChains};
use crate::error::{domain, Result};
use crate::pair::ComplexPair;
use crate::snf::smith_normal_form;

/// H_k(X, A) ≅ Z^betti ⊕ Z/α_1 ⊕ ... ⊕ Z/α_t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub k: isize,
    pub betti: usize,
    pub torsion_factors: Vec<BigInt>,
    pub torsion_order: BigInt,
}

impl std::fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for a in &self.torsion_factors {
            parts.push(format!("Z/{a}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Betti number from ranks: f_k − rank ∂_k − rank ∂_{k+1}.
pub fn betti(chains: &RelativeChains<'_>, k: isize) -> usize {
    let f = chains.rank_of_group(k);
    f - chains.boundary(k).rank() - chains.boundary(k + 1).rank()
}

/// Homology of an arbitrary chain complex of a pair, in any degree.
pub fn homology_of(chains: &RelativeChains<'_>, k: isize) -> HomologySummary {
    let snf = smith_normal_form(&chains.boundary(k + 1));
    HomologySummary {
        k,
        betti: betti(chains, k),
        torsion_factors: snf.torsion_factors(),
        torsion_order: snf.torsion_order(),
    }
}

/// H_k(X, A) with C_{−1}(X, A) = 0, for 0 ≤ k ≤ dim X.
pub fn relative_homology(pair: &ComplexPair, k: isize) -> Result<HomologySummary> {
    if k < 0 || k > pair.dim() {
        return Err(domain!("dimension {k} outside 0..={}", pair.dim()));
    }
    Ok(homology_of(
        &RelativeChains::new(pair, Augmentation::Relative),
        k,
    ))
}

/// |H_k(X, A) / Z^β|, the order of the torsion subgroup.
pub fn torsion_order_mod_free(pair: &ComplexPair, k: isize) -> Result<BigInt> {
    Ok(relative_homology(pair, k)?.torsion_order)
}

/// Torsion order of H_k for any degree and augmentation; 1 outside the
/// complex.
pub fn torsion_order_of(chains: &RelativeChains<'_>, k: isize) -> BigInt {
    if chains.rank_of_group(k + 1) == 0 {
        return BigInt::one();
    }
    smith_normal_form(&chains.boundary(k + 1)).torsion_order()
}

/// β_0, ..., β_dim of (X, A).
pub fn betti_numbers(pair: &ComplexPair) -> Vec<usize> {
    let ch = RelativeChains::new(pair, Augmentation::Relative);
    (0..=pair.dim()).map(|k| betti(&ch, k)).collect()
}

/// Σ(−1)^i f_i(X, A) = Σ(−1)^i β_i(X, A).
pub fn euler_poincare_check(pair: &ComplexPair) -> bool {
    let alt = |v: &mut dyn Iterator<Item = usize>| -> i64 {
        v.enumerate()
            .map(|(i, x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum()
    };
    let faces = alt(&mut (0..=pair.dim()).map(|k| pair.f(k)));
    let bettis = alt(&mut betti_numbers(pair).into_iter());
    faces == bettis
}
