use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A face stored as its strictly increasing vertex list.
///
/// The sorted list is the canonical orientation `[v_0, ..., v_k]` under the
/// integer order on vertices. The empty list is the empty face, of
/// dimension -1. `Ord` is lexicographic on the vertex list, which is the
/// order used for every matrix row and column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<Vertex>);

impl Face {
    /// Builds a face from vertices in any order. Repeated vertices are
    /// rejected.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "duplicate vertex in face {vertices:?}"
            )));
        }
        Ok(Face(vertices))
    }

    /// Wraps a list the caller guarantees to be strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertex(v: Vertex) -> Self {
        Face(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Face(out)
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    /// Vertices of `self` not in `other`.
    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// The codimension-one faces `σ \ {v_i}` paired with the removed index `i`.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Face)> + '_ {
        (0..self.len()).map(move |i| {
            let mut vs = self.0.clone();
            vs.remove(i);
            (i, Face(vs))
        })
    }

    /// All subsets of this face, including the empty face and the face
    /// itself.
    pub fn subfaces(&self) -> Vec<Face> {
        let n = self.len();
        (0u64..(1u64 << n))
            .map(|mask| {
                Face(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Face> {
        Face::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl TryFrom<Vec<Vertex>> for Face {
    type Error = Error;

    fn try_from(value: Vec<Vertex>) -> Result<Self> {
        Face::new(value)
    }
}

/// Shorthand used throughout tests and examples: `face![0, 1, 2]`.
///
/// Panics on repeated vertices.
#[macro_export]
macro_rules! face {
    () => { $crate::Face::empty() };
    ($($v:expr),+ $(,)?) => {
        $crate::Face::new(vec![$($v),+]).expect("face! with repeated vertex")
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_dimension() {
        let f = Face::new(vec![2, 0, 1]).unwrap();
        assert_eq!(f.vertices(), &[0, 1, 2]);
        assert_eq!(f.dim(), 2);
        assert_eq!(Face::empty().dim(), -1);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(Face::new(vec![1, 1]).is_err());
    }

    #[test]
    fn set_operations() {
        let a = face![0, 1, 3];
        let b = face![1, 2, 3];
        assert_eq!(a.union(&b), face![0, 1, 2, 3]);
        assert_eq!(a.intersection(&b), face![1, 3]);
        assert_eq!(a.difference(&b), face![0]);
        assert!(face![1, 3].is_subset(&a));
        assert!(!face![2].is_subset(&a));
        assert!(Face::empty().is_subset(&a));
        assert_eq!(a.subfaces().len(), 8);
    }

    #[test]
    fn facets_carry_removed_index() {
        let got: Vec<_> = face![0, 1, 2].facets().collect();
        assert_eq!(got[0], (0, face![1, 2]));
        assert_eq!(got[1], (1, face![0, 2]));
        assert_eq!(got[2], (2, face![0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(face![0, 12].to_string(), "{0,12}");
        assert_eq!(Face::empty().to_string(), "{}");
    }
}
