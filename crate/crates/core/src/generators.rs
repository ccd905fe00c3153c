//! Named complex families.

use crate::complex::SimplicialComplex;
use crate::error::{domain, Result};
use crate::face::{Face, Vertex};

/// Parameterized families understood by [`generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Δ^m on vertices `0..=m`.
    Simplex(usize),
    /// Δ^m_(p).
    SkeletonSimplex(usize, isize),
    /// d-path of length m: facets `{i, ..., i+d}` for `i < m`.
    DPath(usize, usize),
    /// d-circuit of length m: cyclic windows of d+1 consecutive vertices
    /// on m vertices.
    DCircuit(usize, usize),
    /// d-star with m facets: a common (d−1)-face `{0..d−1}` plus one extra
    /// vertex per facet.
    DStar(usize, usize),
    /// (∂Δ^h)^{*(n−k−1)} * Δ^{(h+1)(k+1)−hn−1}.
    ModelJoin(usize, usize, usize),
    /// The 6-vertex triangulation of the real projective plane.
    ProjectivePlane,
}

pub fn generate(family: Family) -> Result<SimplicialComplex> {
    match family {
        Family::Simplex(m) => Ok(simplex(m)),
        Family::SkeletonSimplex(m, p) => Ok(simplex(m).skeleton(p)),
        Family::DPath(d, m) => d_path(d, m),
        Family::DCircuit(d, m) => d_circuit(d, m),
        Family::DStar(d, m) => d_star(d, m),
        Family::ModelJoin(h, n, k) => model_join(h, n, k),
        Family::ProjectivePlane => Ok(projective_plane()),
    }
}

fn window(start: usize, len: usize, modulus: Option<usize>) -> Face {
    let vs: Vec<Vertex> = (start..start + len)
        .map(|v| modulus.map_or(v, |m| v % m) as Vertex)
        .collect();
    Face::new(vs).expect("window vertices are distinct")
}

pub fn simplex(m: usize) -> SimplicialComplex {
    SimplicialComplex::closure([window(0, m + 1, None)])
}

/// RP²_6: the quotient of the icosahedron by the antipodal map.
pub fn projective_plane() -> SimplicialComplex {
    const FACETS: [[Vertex; 3]; 10] = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ];
    SimplicialComplex::from_facets(FACETS.iter().map(|f| f.to_vec())).expect("valid facets")
}

pub fn d_path(d: usize, m: usize) -> Result<SimplicialComplex> {
    if d == 0 || m == 0 {
        return Err(domain!("d_path needs d ≥ 1 and m ≥ 1"));
    }
    Ok(SimplicialComplex::closure(
        (0..m).map(|i| window(i, d + 1, None)),
    ))
}

pub fn d_circuit(d: usize, m: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(domain!("d_circuit needs d ≥ 1"));
    }
    let realizable = (d == 1 && m >= 3) || m >= d + 3;
    if !realizable {
        return Err(domain!(
            "no cyclic-window {d}-circuit of length {m}; need m ≥ {}",
            if d == 1 { 3 } else { d + 3 }
        ));
    }
    let x = SimplicialComplex::closure((0..m).map(|i| window(i, d + 1, Some(m))));
    circuit_order(&x)?;
    Ok(x)
}

pub fn d_star(d: usize, m: usize) -> Result<SimplicialComplex> {
    if d == 0 || m == 0 {
        return Err(domain!("d_star needs d ≥ 1 and m ≥ 1"));
    }
    let core: Vec<Vertex> = (0..d as Vertex).collect();
    Ok(SimplicialComplex::closure((0..m).map(|i| {
        let mut vs = core.clone();
        vs.push((d + i) as Vertex);
        Face::new(vs).expect("distinct")
    })))
}

/// The extremal complex for the missing-face bound with parameters
/// (h, n, k): n vertices, missing faces of dimension h.
pub fn model_join(h: usize, n: usize, k: usize) -> Result<SimplicialComplex> {
    if h == 0 {
        return Err(domain!("model_join needs h ≥ 1"));
    }
    if n < k + 1 {
        return Err(domain!("model_join needs n ≥ k + 1"));
    }
    let free = (h + 1) * (k + 1);
    if free < h * n {
        return Err(domain!(
            "model_join needs (h+1)(k+1) ≥ hn, got {free} < {}",
            h * n
        ));
    }
    let hollow = simplex(h).skeleton(h as isize - 1);
    let mut x = SimplicialComplex::void_face();
    for _ in 0..(n - k - 1) {
        x = x.join(&hollow);
    }
    let cone_vertices = free - h * n;
    let tail = if cone_vertices == 0 {
        SimplicialComplex::void_face()
    } else {
        simplex(cone_vertices - 1)
    };
    Ok(x.join(&tail))
}

/// Orders the facets of a pure complex as a d-circuit: a cyclic sequence
/// in which two facets share a (d−1)-face exactly when they are
/// neighbours. Fails with a domain error if no such order exists.
pub fn circuit_order(x: &SimplicialComplex) -> Result<Vec<Face>> {
    let d = x.dim();
    if d < 1 || !x.is_pure() {
        return Err(domain!("not a pure complex of dimension ≥ 1"));
    }
    let facets: Vec<Face> = x.faces(d).cloned().collect();
    let m = facets.len();
    if m < 3 {
        return Err(domain!("a circuit needs at least 3 facets"));
    }
    let adjacent = |a: &Face, b: &Face| a.intersection(b).len() == d as usize;
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..m {
            if i != j && adjacent(&facets[i], &facets[j]) {
                nbrs[i].push(j);
            }
        }
    }
    if nbrs.iter().any(|n| n.len() != 2) {
        return Err(domain!("facet adjacency is not a cycle"));
    }
    let mut order = vec![0usize];
    let mut prev = 0usize;
    let mut cur = nbrs[0][0];
    while cur != 0 {
        order.push(cur);
        let next = if nbrs[cur][0] == prev {
            nbrs[cur][1]
        } else {
            nbrs[cur][0]
        };
        prev = cur;
        cur = next;
    }
    if order.len() != m {
        return Err(domain!("facet adjacency is disconnected"));
    }
    Ok(order.into_iter().map(|i| facets[i].clone()).collect())
}

/// Whether the facets of a d-circuit admit orientations inducing opposite
/// orientations on every shared (d−1)-face.
pub fn is_orientable_circuit(x: &SimplicialComplex) -> Result<bool> {
    let order = circuit_order(x)?;
    // sign[i] = ±1 multiplies the canonical orientation of facet i.
    let induced = |eta: &Face, sigma: &Face| -> i32 {
        let removed = sigma.difference(eta).vertices()[0];
        let i = sigma.vertices().iter().position(|&v| v == removed).unwrap();
        if i % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let m = order.len();
    let mut sign = 1i32;
    for i in 0..m {
        let (a, b) = (&order[i], &order[(i + 1) % m]);
        let eta = a.intersection(b);
        let next = -sign * induced(&eta, a) * induced(&eta, b);
        if i + 1 == m {
            return Ok(next == 1);
        }
        sign = next;
    }
    unreachable!("circuits have at least three facets")
}
