//! The invariant suite run by `relcomplex check`.
//!
//! Each check records a name, a pass flag and a short detail line. An
//! `Invariant` error raised inside a check counts as a failure of that
//! check; other errors abort the suite.

use serde::Serialize;

use crate::chains::{Augmentation, RelativeChains};
use crate::error::{Error, Result};
use crate::homology::{betti, euler_poincare_check};
use crate::matrix::IntegerMatrix;
use crate::pair::ComplexPair;
use crate::spectra::{
    checked_eigenvalues, lambda_max_bounds, laplacian_of, nonzero_spectra_match,
    zero_multiplicities_of, LaplacianKind,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: String, outcome: Result<(bool, String)>) -> Result<()> {
        let (passed, detail) = match outcome {
            Ok(r) => r,
            Err(Error::Invariant(msg)) => (false, msg),
            Err(e) => return Err(e),
        };
        self.checks.push(CheckResult {
            name,
            passed,
            detail,
        });
        Ok(())
    }
}

/// Deliberate corruptions used to exercise the failure path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Adds 1 to the top-left entry of every boundary matrix before the
    /// ∂∘∂ check.
    CorruptBoundary,
}

fn boundary(ch: &RelativeChains<'_>, k: isize, fault: Fault) -> IntegerMatrix {
    let mut m = ch.boundary(k);
    if fault == Fault::CorruptBoundary && m.rows() > 0 && m.cols() > 0 {
        let v = m.get(0, 0) + 1;
        m.set(0, 0, v);
    }
    m
}

pub fn run_checks(pair: &ComplexPair) -> Result<CheckReport> {
    run_checks_with(pair, Fault::None)
}

pub fn run_checks_with(pair: &ComplexPair, fault: Fault) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let top = pair.dim();
    for aug in [Augmentation::Relative, Augmentation::Reduced] {
        let ch = RelativeChains::new(pair, aug);
        let tag = match aug {
            Augmentation::Relative => "",
            Augmentation::Reduced => " (augmented)",
        };
        for k in 0..=top.max(0) + 1 {
            let dd = boundary(&ch, k, fault).mul(&boundary(&ch, k + 1, fault));
            report.record(
                format!("boundary squares to zero, k={k}{tag}"),
                Ok((dd.is_zero(), format!("{}x{}", dd.rows(), dd.cols()))),
            )?;
        }
    }

    let ch = RelativeChains::new(pair, Augmentation::Relative);
    for k in 0..=top {
        report.record(format!("laplacian forms agree, k={k}"), {
            [LaplacianKind::UpDown, LaplacianKind::DownUp, LaplacianKind::Full]
                .into_iter()
                .try_for_each(|kind| laplacian_of(&ch, k, kind).map(drop))
                .map(|()| (true, "product = entrywise".to_string()))
        })?;
        report.record(
            format!("zero multiplicities, k={k}"),
            zero_multiplicities_of(&ch, k).map(|(u, d)| (true, format!("ud {u}, du {d}"))),
        )?;
        report.record(format!("hodge nullity, k={k}"), {
            laplacian_of(&ch, k, LaplacianKind::Full)
                .and_then(|l| checked_eigenvalues(&l.matrix))
                .map(|(ev, rank)| {
                    let b = betti(&ch, k);
                    let nullity = ev.len() - rank;
                    (nullity == b, format!("nullity {nullity}, betti {b}"))
                })
        })?;
        if k < top {
            report.record(format!("ud/du spectra match, k={k}"), {
                let ud = laplacian_of(&ch, k, LaplacianKind::UpDown)
                    .and_then(|l| checked_eigenvalues(&l.matrix));
                let du = laplacian_of(&ch, k + 1, LaplacianKind::DownUp)
                    .and_then(|l| checked_eigenvalues(&l.matrix));
                ud.and_then(|a| du.map(|b| (a, b))).map(|((a, _), (b, _))| {
                    (nonzero_spectra_match(&a, &b, 1e-8), "nonzero parts".to_string())
                })
            })?;
        }
        report.record(
            format!("lambda_max estimates, k={k}"),
            lambda_max_bounds(pair, k).map(|r| {
                (
                    r.upper_holds && r.lower_holds.unwrap_or(true),
                    format!("lambda_max {:.6} <= {}", r.lambda_max, r.upper_bound),
                )
            }),
        )?;
    }
    report.record(
        "euler-poincare".to_string(),
        Ok((euler_poincare_check(pair), String::new())),
    )?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::simplex;
    use crate::SimplicialComplex;

    #[test]
    fn simplex_pair_passes() {
        let a = SimplicialComplex::from_facets([vec![0, 1]]).unwrap();
        let pair = ComplexPair::new(simplex(2), a).unwrap();
        let r = run_checks(&pair).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn corruption_is_caught() {
        let pair = ComplexPair::absolute(simplex(2));
        let r = run_checks_with(&pair, Fault::CorruptBoundary).unwrap();
        assert!(!r.all_passed());
    }
}
