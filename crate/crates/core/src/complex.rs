//! Finite abstract simplicial complexes.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{domain, Error, Result};
use crate::face::{Face, Vertex};

/// A downward-closed family of faces, always containing the empty face.
///
/// Faces are grouped by dimension; `levels[0]` holds the single empty face,
/// `levels[k + 1]` the k-faces. Each level is a `BTreeSet`, so iteration is
/// lexicographic and every matrix built from a complex has a stable layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    levels: Vec<BTreeSet<Face>>,
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        Self::void_face()
    }
}

impl SimplicialComplex {
    /// The complex `{∅}`.
    pub fn void_face() -> Self {
        SimplicialComplex {
            levels: vec![BTreeSet::from([Face::empty()])],
        }
    }

    /// Closure of a list of facets. Facets contained in other facets are
    /// absorbed; a repeated vertex inside one facet is a validation error.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: Into<Vec<Vertex>>,
    {
        let faces = facets
            .into_iter()
            .map(|f| Face::new(f.into()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::closure(faces))
    }

    /// The smallest complex containing every given face.
    pub fn closure<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        let mut out = Self::void_face();
        for f in faces {
            out.insert_closed(f);
        }
        out
    }

    fn insert_closed(&mut self, face: Face) {
        if self.contains(&face) {
            return;
        }
        let level = face.len();
        while self.levels.len() <= level {
            self.levels.push(BTreeSet::new());
        }
        for (_, sub) in face.facets() {
            self.insert_closed(sub);
        }
        self.levels[level].insert(face);
    }

    /// Builds a complex from a face family that must already be downward
    /// closed.
    pub fn from_closed_faces<I: IntoIterator<Item = Face>>(faces: I) -> Result<Self> {
        let mut out = Self::void_face();
        let mut all: Vec<Face> = faces.into_iter().collect();
        all.sort_by_key(|f| f.len());
        for f in all {
            if f.is_empty() {
                continue;
            }
            if f.facets().any(|(_, g)| !out.contains(&g)) {
                return Err(Error::Validation(format!(
                    "face family is not downward closed at {f}"
                )));
            }
            let level = f.len();
            while out.levels.len() <= level {
                out.levels.push(BTreeSet::new());
            }
            out.levels[level].insert(f);
        }
        Ok(out)
    }

    pub fn dim(&self) -> isize {
        self.levels.len() as isize - 2
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.levels
            .get(face.len())
            .is_some_and(|level| level.contains(face))
    }

    /// The k-faces, k ≥ −1, in lexicographic order. Empty outside range.
    pub fn faces(&self, k: isize) -> impl Iterator<Item = &Face> + '_ {
        let idx = k + 1;
        let level = if idx >= 0 {
            self.levels.get(idx as usize)
        } else {
            None
        };
        level.into_iter().flat_map(|l| l.iter())
    }

    pub fn face_set(&self, k: isize) -> Option<&BTreeSet<Face>> {
        if k < -1 {
            return None;
        }
        self.levels.get((k + 1) as usize)
    }

    /// Number of k-faces.
    pub fn f(&self, k: isize) -> usize {
        self.face_set(k).map_or(0, BTreeSet::len)
    }

    /// f-vector `(f_0, ..., f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|k| self.f(k)).collect()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.levels.iter().flat_map(|l| l.iter())
    }

    pub fn num_faces(&self) -> usize {
        self.levels.iter().map(BTreeSet::len).sum()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.faces(0).map(|f| f.vertices()[0]).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.f(0)
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.faces(0).map(|f| f.vertices()[0]).max()
    }

    /// Maximal faces in lexicographic order within each dimension, highest
    /// dimension first.
    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for k in (-1..=self.dim()).rev() {
            for f in self.faces(k) {
                if self.degree_unchecked(f) == 0 {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// Facets sorted by dimension then lexicographically, the order used by
    /// file output.
    pub fn sorted_facets(&self) -> Vec<Face> {
        let mut fs = self.facets();
        fs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        fs
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|f| f.dim() == d)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all_faces().all(|f| other.contains(f))
    }

    /// X_(p): all faces of dimension at most p. Values of `p` below −1 are
    /// treated as −1.
    pub fn skeleton(&self, p: isize) -> SimplicialComplex {
        let keep = (p.max(-1) + 2) as usize;
        SimplicialComplex {
            levels: self.levels.iter().take(keep).cloned().collect(),
        }
    }

    fn degree_unchecked(&self, face: &Face) -> usize {
        let Some(up) = self.levels.get(face.len() + 1) else {
            return 0;
        };
        if face.is_empty() {
            return up.len();
        }
        up.iter().filter(|g| face.is_subset(g)).count()
    }

    /// Number of faces one dimension up that contain `face`.
    pub fn degree(&self, face: &Face) -> Result<usize> {
        if !self.contains(face) {
            return Err(domain!("face {face} is not in the complex"));
        }
        Ok(self.degree_unchecked(face))
    }

    /// The faces one dimension up containing `face`.
    pub fn cofacets<'a>(&'a self, face: &'a Face) -> impl Iterator<Item = &'a Face> + 'a {
        self.faces(face.dim() + 1).filter(move |g| face.is_subset(g))
    }

    /// lk(X, σ) = {τ ∈ X : τ ∪ σ ∈ X, τ ∩ σ = ∅}.
    pub fn link(&self, sigma: &Face) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(domain!("face {sigma} is not in the complex"));
        }
        let faces = self
            .all_faces()
            .filter(|t| t.is_disjoint(sigma) && self.contains(&t.union(sigma)))
            .cloned();
        Ok(SimplicialComplex::closure(faces))
    }

    /// Applies an injective vertex map.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Result<SimplicialComplex> {
        let faces = self
            .all_faces()
            .map(|face| face.map_vertices(&f))
            .collect::<Result<Vec<_>>>()?;
        let out = SimplicialComplex::closure(faces);
        if out.num_faces() != self.num_faces() {
            return Err(Error::Validation("relabeling is not injective".into()));
        }
        Ok(out)
    }

    /// X * Y. The vertices of `other` are shifted past the largest vertex of
    /// `self` so the two vertex sets are disjoint.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.max_vertex().map_or(0, |m| m + 1);
        let shifted: Vec<Face> = other
            .all_faces()
            .map(|f| Face::from_sorted(f.vertices().iter().map(|v| v + offset).collect()))
            .collect();
        let mut faces = Vec::new();
        for s in self.facets() {
            for t in &shifted {
                faces.push(s.union(t));
            }
        }
        SimplicialComplex::closure(faces)
    }

    /// All missing faces: subsets of the vertex set not in X whose proper
    /// subsets all lie in X.
    pub fn missing_faces(&self) -> Vec<Face> {
        let verts = self.vertices();
        let mut out = BTreeSet::new();
        // Every missing face is some face τ plus a vertex above max τ.
        for tau in self.all_faces() {
            let floor = tau.vertices().last().copied();
            for &v in &verts {
                if floor.is_some_and(|m| v <= m) {
                    continue;
                }
                let mut vs = tau.vertices().to_vec();
                vs.push(v);
                let sigma = Face::from_sorted(vs);
                if !self.contains(&sigma) && sigma.facets().all(|(_, g)| self.contains(&g)) {
                    out.insert(sigma);
                }
            }
        }
        out.into_iter().collect()
    }

    /// h(X), the largest dimension of a missing face. `None` when X is a
    /// full simplex (or has no vertices).
    pub fn missing_face_dim(&self) -> Option<isize> {
        self.missing_faces().iter().map(Face::dim).max()
    }

    /// Edges of the 1-skeleton as vertex pairs.
    pub fn edges(&self) -> Vec<[Vertex; 2]> {
        self.faces(1)
            .map(|e| [e.vertices()[0], e.vertices()[1]])
            .collect()
    }

    /// True when X equals the clique complex of its 1-skeleton.
    pub fn is_flag(&self) -> bool {
        flag_complex(&self.vertices(), &self.edges()) == *self
    }

    /// B(X): the closure of the (d−1)-faces of degree at most one, for X
    /// pure of dimension d ≥ 1.
    pub fn discrete_boundary(&self) -> Result<SimplicialComplex> {
        let d = self.dim();
        if d < 1 {
            return Err(domain!("discrete boundary needs dimension ≥ 1, got {d}"));
        }
        if !self.is_pure() {
            return Err(domain!("discrete boundary needs a pure complex"));
        }
        let faces = self
            .faces(d - 1)
            .filter(|t| self.degree_unchecked(t) <= 1)
            .cloned();
        Ok(SimplicialComplex::closure(faces))
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::closure(self.all_faces().chain(other.all_faces()).cloned())
    }
}

/// The clique complex of a simple graph. Vertices listed in `vertices` are
/// included even when isolated; loops are rejected silently by ignoring
/// them.
pub fn flag_complex(vertices: &[Vertex], edges: &[[Vertex; 2]]) -> SimplicialComplex {
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for &v in vertices {
        adj.entry(v).or_default();
    }
    for &[a, b] in edges {
        if a == b {
            continue;
        }
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut cliques = Vec::new();
    let p: BTreeSet<Vertex> = adj.keys().copied().collect();
    bron_kerbosch(&adj, Vec::new(), p, BTreeSet::new(), &mut cliques);
    SimplicialComplex::closure(
        cliques
            .into_iter()
            .map(|c| Face::new(c).expect("clique vertices are distinct")),
    )
}

fn bron_kerbosch(
    adj: &BTreeMap<Vertex, BTreeSet<Vertex>>,
    r: Vec<Vertex>,
    mut p: BTreeSet<Vertex>,
    mut x: BTreeSet<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|u| adj[u].intersection(&p).count())
        .copied()
        .expect("p is nonempty");
    let candidates: Vec<Vertex> = p.difference(&adj[&pivot]).copied().collect();
    for v in candidates {
        let nv = &adj[&v];
        let mut r2 = r.clone();
        r2.push(v);
        bron_kerbosch(
            adj,
            r2,
            p.intersection(nv).copied().collect(),
            x.intersection(nv).copied().collect(),
            out,
        );
        p.remove(&v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face;

    fn cx(facets: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec())).unwrap()
    }

    #[test]
    fn closure_of_triangle() {
        let x = cx(&[&[0, 1, 2]]);
        assert_eq!(x.num_faces(), 8);
        assert_eq!(x.dim(), 2);
        assert_eq!(x.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn empty_facet_list() {
        let x = SimplicialComplex::from_facets(Vec::<Vec<Vertex>>::new()).unwrap();
        assert_eq!(x.dim(), -1);
        assert_eq!(x.num_faces(), 1);
        assert!(x.contains(&Face::empty()));
    }

    #[test]
    fn absorbed_facets_and_duplicates() {
        let x = cx(&[&[0, 1], &[0, 1, 2]]);
        assert_eq!(x.facets(), vec![face![0, 1, 2]]);
        assert!(SimplicialComplex::from_facets(vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn hollow_triangle() {
        let x = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(x.f(1), 3);
        assert_eq!(x.f(2), 0);
    }

    #[test]
    fn skeletons() {
        let d2 = cx(&[&[0, 1, 2]]);
        assert_eq!(d2.skeleton(1), cx(&[&[0, 1], &[1, 2], &[0, 2]]));
        assert_eq!(d2.skeleton(2), d2);
        let d3 = cx(&[&[0, 1, 2, 3]]);
        assert_eq!(d3.skeleton(0).f_vector(), vec![4]);
        assert_eq!(d3.skeleton(-1), SimplicialComplex::void_face());
    }

    #[test]
    fn degrees() {
        let d2 = cx(&[&[0, 1, 2]]);
        assert_eq!(d2.degree(&face![0, 1]).unwrap(), 1);
        let hollow = d2.skeleton(1);
        assert_eq!(hollow.degree(&face![0, 1]).unwrap(), 0);
        let d3 = cx(&[&[0, 1, 2, 3]]);
        assert_eq!(d3.degree(&face![0]).unwrap(), 3);
        assert!(d2.degree(&face![5]).is_err());
    }

    #[test]
    fn links() {
        let d2 = cx(&[&[0, 1, 2]]);
        assert_eq!(d2.link(&face![0]).unwrap(), cx(&[&[1, 2]]));
        assert_eq!(d2.link(&Face::empty()).unwrap(), d2);
        let hollow = d2.skeleton(1);
        assert_eq!(hollow.link(&face![0]).unwrap(), cx(&[&[1], &[2]]));
    }

    #[test]
    fn joins() {
        let two = cx(&[&[0], &[1]]);
        let one = cx(&[&[0]]);
        assert_eq!(two.join(&one), cx(&[&[0, 2], &[1, 2]]));
        assert_eq!(two.join(&SimplicialComplex::void_face()), two);
        let p = cx(&[&[0]]);
        assert_eq!(p.join(&p).join(&p), cx(&[&[0, 1, 2]]));
    }

    #[test]
    fn missing_faces_by_definition() {
        let hollow = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(hollow.missing_face_dim(), Some(2));
        let path = cx(&[&[0, 1], &[1, 2]]);
        assert_eq!(path.missing_faces(), vec![face![0, 2]]);
        assert_eq!(path.missing_face_dim(), Some(1));
        assert_eq!(cx(&[&[0, 1, 2, 3]]).missing_face_dim(), None);
    }

    #[test]
    fn flag_complexes() {
        let k4: Vec<[Vertex; 2]> = vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
        assert_eq!(flag_complex(&[], &k4), cx(&[&[0, 1, 2, 3]]));
        let c4 = [[0, 1], [1, 2], [2, 3], [0, 3]];
        assert_eq!(flag_complex(&[], &c4), cx(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]));
        let pendant = [[0, 1], [1, 2], [0, 2], [2, 3]];
        assert_eq!(flag_complex(&[], &pendant), cx(&[&[0, 1, 2], &[2, 3]]));
        assert_eq!(flag_complex(&[7], &[]), cx(&[&[7]]));
    }

    #[test]
    fn discrete_boundaries() {
        let star = cx(&[&[0, 1], &[0, 2], &[0, 3]]);
        assert_eq!(star.discrete_boundary().unwrap(), cx(&[&[1], &[2], &[3]]));
        let path = cx(&[&[0, 1], &[1, 2]]);
        assert_eq!(path.discrete_boundary().unwrap(), cx(&[&[0], &[2]]));
        let c4 = cx(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        assert_eq!(c4.discrete_boundary().unwrap(), SimplicialComplex::void_face());
        assert!(cx(&[&[0, 1, 2], &[2, 3]]).discrete_boundary().is_err());
    }

    #[test]
    fn closed_family_validation() {
        assert!(SimplicialComplex::from_closed_faces(vec![face![0, 1]]).is_err());
        let ok = SimplicialComplex::from_closed_faces(vec![face![0], face![1], face![0, 1]]);
        assert_eq!(ok.unwrap(), cx(&[&[0, 1]]));
    }
}
