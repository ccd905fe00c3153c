//! Test-only oracles, written independently of the library's algorithms.
#![allow(dead_code)]

use itertools::Itertools;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use relcomplex::{ComplexPair, IntegerMatrix, SimplicialComplex};

pub fn cx(facets: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec())).unwrap()
}

pub fn to_i64(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

pub fn dmatrix(m: &[Vec<i64>]) -> DMatrix<f64> {
    let r = m.len();
    let c = if r == 0 { 0 } else { m[0].len() };
    DMatrix::from_fn(r, c, |i, j| m[i][j] as f64)
}

/// Eigenvalues from nalgebra, sorted ascending.
pub fn eigenvalues(m: &IntegerMatrix) -> Vec<f64> {
    if m.rows() == 0 {
        return Vec::new();
    }
    let d = dmatrix(&to_i64(m));
    let mut ev: Vec<f64> = d.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn eigenvalues_f64(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Determinant by Laplace expansion along the first row, in i128.
pub fn det_laplace(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let term = m[0][j] as i128 * det_laplace(&minor);
        total += if j % 2 == 0 { term } else { -term };
    }
    total
}

/// Determinant via floating LU, rounded. Fine for small matrices with
/// small entries.
pub fn det_float(m: &[Vec<i64>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    dmatrix(m).determinant().round() as i128
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// d_j: gcd of all j×j minors.
pub fn determinantal_divisor(m: &[Vec<i64>], j: usize) -> i128 {
    let r = m.len();
    let c = if r == 0 { 0 } else { m[0].len() };
    let mut g = 0i128;
    for rows in (0..r).combinations(j) {
        for cols in (0..c).combinations(j) {
            let sub: Vec<Vec<i64>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&k| m[i][k]).collect())
                .collect();
            g = gcd(g, det_float(&sub));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

/// Invariant factors from determinantal divisors: s_j = d_j / d_{j−1}.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let r = m.len();
    let c = if r == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut prev = 1i128;
    for j in 1..=r.min(c) {
        let d = determinantal_divisor(m, j);
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

/// Number of spanning trees by Kirchhoff: any cofactor of the graph
/// Laplacian, built directly from the edge list.
pub fn kirchhoff(n: usize, edges: &[(usize, usize)]) -> i128 {
    let mut l = vec![vec![0i64; n]; n];
    for &(a, b) in edges {
        l[a][a] += 1;
        l[b][b] += 1;
        l[a][b] -= 1;
        l[b][a] -= 1;
    }
    let reduced: Vec<Vec<i64>> = l[1..].iter().map(|r| r[1..].to_vec()).collect();
    det_laplace(&reduced)
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every connected labelled graph on n vertices.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..1 << all.len())
        .map(|mask| {
            all.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect::<Vec<_>>()
        })
        .filter(|es| is_connected(n, es))
        .collect()
}

pub fn graph_complex(n: usize, edges: &[(usize, usize)]) -> SimplicialComplex {
    let mut facets: Vec<Vec<u32>> = edges.iter().map(|&(a, b)| vec![a as u32, b as u32]).collect();
    facets.extend((0..n as u32).map(|v| vec![v]));
    SimplicialComplex::from_facets(facets).unwrap()
}

/// Betti numbers over Q from ranks of boundary matrices built here from
/// the face lists, with the empty face quotiented out (unreduced).
pub fn betti_oracle(pair: &ComplexPair, k: isize) -> usize {
    let rel = |j: isize| -> Vec<Vec<u32>> {
        pair.complex()
            .faces(j)
            .filter(|f| !pair.subcomplex().contains(f))
            .map(|f| f.vertices().to_vec())
            .collect()
    };
    let rank_of = |j: isize| -> usize {
        if j <= 0 {
            return 0;
        }
        let rows = rel(j - 1);
        let cols = rel(j);
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        let m = DMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            let (eta, sigma) = (&rows[r], &cols[c]);
            match (0..sigma.len()).find(|&i| {
                let mut s = sigma.clone();
                s.remove(i);
                &s == eta
            }) {
                Some(i) if i % 2 == 0 => 1.0,
                Some(_) => -1.0,
                None => 0.0,
            }
        });
        m.rank(1e-9)
    };
    rel(k).len() - rank_of(k) - rank_of(k + 1)
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
