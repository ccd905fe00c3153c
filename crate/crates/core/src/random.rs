//! Seeded random complexes and pairs.
//!
//! Faces are added dimension by dimension: a candidate face is considered
//! only when all its facets are already present, and is kept with the given
//! probability. Candidates are visited in lexicographic order so a seed
//! fixes the result.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{flag_complex, SimplicialComplex};
use crate::error::{domain, Result};
use crate::face::{Face, Vertex};
use crate::pair::ComplexPair;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain!("probability {p} outside [0, 1]"));
    }
    Ok(())
}

/// Grows a complex inside `ambient` (all subsets of `vertices` when
/// `None`). Vertices are kept with probability `p_vertex`, higher faces
/// with `p` up to dimension `max_dim`. `allow` filters candidates.
fn grow<R: Rng>(
    rng: &mut R,
    vertices: &[Vertex],
    ambient: Option<&SimplicialComplex>,
    p_vertex: f64,
    p: f64,
    max_dim: isize,
    allow: &dyn Fn(&Face) -> bool,
) -> SimplicialComplex {
    let mut faces = vec![Face::empty()];
    let mut current: Vec<Face> = Vec::new();
    for &v in vertices {
        let f = Face::vertex(v);
        if allow(&f) && rng.random_bool(p_vertex) {
            current.push(f);
        }
    }
    let mut dim = 0;
    while !current.is_empty() && dim < max_dim {
        faces.extend(current.iter().cloned());
        let have: std::collections::BTreeSet<&Face> = current.iter().collect();
        let mut next = Vec::new();
        let present: Vec<Vertex> = current
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .unique()
            .sorted()
            .collect();
        for cand in present.into_iter().combinations(dim as usize + 2) {
            let cand = Face::new(cand).expect("distinct");
            if ambient.is_some_and(|a| !a.contains(&cand)) || !allow(&cand) {
                continue;
            }
            if cand.facets().all(|(_, g)| have.contains(&g)) && rng.random_bool(p) {
                next.push(cand);
            }
        }
        current = next;
        dim += 1;
    }
    faces.extend(current);
    SimplicialComplex::from_closed_faces(faces).expect("grown layer by layer")
}

/// A random complex on vertices 0..n with every vertex present and each
/// admissible higher face kept with probability `density`.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    n: usize,
    density: f64,
    max_dim: isize,
) -> Result<SimplicialComplex> {
    check_probability(density)?;
    let verts: Vec<Vertex> = (0..n as Vertex).collect();
    Ok(grow(rng, &verts, None, 1.0, density, max_dim, &|_| true))
}

/// A random subcomplex of X: each face of X whose facets were kept is kept
/// with probability `p`.
pub fn random_subcomplex<R: Rng>(
    rng: &mut R,
    x: &SimplicialComplex,
    p: f64,
) -> Result<SimplicialComplex> {
    check_probability(p)?;
    Ok(grow(rng, &x.vertices(), Some(x), p, p, x.dim(), &|_| true))
}

/// A random k-th discrete boundary of X: (k−1)-faces of degree at most one,
/// no faces above dimension k.
pub fn random_discrete_boundary<R: Rng>(
    rng: &mut R,
    x: &SimplicialComplex,
    k: isize,
    p: f64,
) -> Result<SimplicialComplex> {
    check_probability(p)?;
    if k < 0 {
        return Err(domain!("discrete boundaries need k ≥ 0"));
    }
    let allow = |f: &Face| f.dim() != k - 1 || x.degree(f).is_ok_and(|d| d <= 1);
    let a = grow(rng, &x.vertices(), Some(x), p, p, k, &allow);
    debug_assert!(ComplexPair::new(x.clone(), a.clone())
        .unwrap()
        .is_discrete_boundary(k));
    Ok(a)
}

/// The flag complex of an Erdős–Rényi graph G(n, p), truncated above
/// `max_dim`.
pub fn random_flag_complex<R: Rng>(
    rng: &mut R,
    n: usize,
    p: f64,
    max_dim: isize,
) -> Result<SimplicialComplex> {
    check_probability(p)?;
    let verts: Vec<Vertex> = (0..n as Vertex).collect();
    let edges: Vec<[Vertex; 2]> = verts
        .iter()
        .copied()
        .tuple_combinations()
        .filter(|_| rng.random_bool(p))
        .map(|(a, b)| [a, b])
        .collect();
    Ok(flag_complex(&verts, &edges).skeleton(max_dim))
}

/// A random pair on at most `max_vertices` vertices with a random
/// subcomplex, which is {∅} about a quarter of the time.
pub fn random_pair<R: Rng>(rng: &mut R, max_vertices: usize) -> Result<ComplexPair> {
    if max_vertices == 0 {
        return Err(domain!("need at least one vertex"));
    }
    let n = rng.random_range(1..=max_vertices);
    let density = rng.random_range(0.3..0.9);
    let x = random_complex(rng, n, density, 3)?;
    let a = if rng.random_bool(0.25) {
        SimplicialComplex::void_face()
    } else {
        let p = rng.random_range(0.1..0.6);
        random_subcomplex(rng, &x, p)?
    };
    ComplexPair::new(x, a)
}
