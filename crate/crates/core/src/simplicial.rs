//! Finite simplicial complexes and the order-complex / face-poset functors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::IntMatrix;
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("EmptyFacet: facets must be nonempty")]
    EmptyFacet,
    #[error("UnknownVertex: `{0}`")]
    UnknownVertex(String),
    #[error("DuplicateVertex: `{0}`")]
    DuplicateVertex(String),
}

/// A finite simplicial complex. Simplices are sorted vertex-index vectors,
/// grouped by dimension and sorted within each dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    by_dim: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Closure of the given facets under taking faces.
    pub fn new(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<Self, ComplexError> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(ComplexError::DuplicateVertex(v.clone()));
            }
        }
        let mut all = BTreeSet::new();
        for f in facets {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= vertices.len()) {
                return Err(ComplexError::UnknownVertex(v.to_string()));
            }
            let k = f.len();
            assert!(k < 24, "facet too large to close under faces");
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                all.insert(face);
            }
        }
        // isolated vertices listed without facets are still vertices
        for v in 0..vertices.len() {
            all.insert(vec![v]);
        }
        Ok(Self::from_closed(vertices, all))
    }

    pub fn from_labels<L: AsRef<str>>(vertices: &[L], facets: &[Vec<L>]) -> Result<Self, ComplexError> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let lookup: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut idx = Vec::new();
        for f in facets {
            let mut face = Vec::new();
            for v in f {
                face.push(
                    *lookup
                        .get(v.as_ref())
                        .ok_or_else(|| ComplexError::UnknownVertex(v.as_ref().to_string()))?,
                );
            }
            idx.push(face);
        }
        Self::new(names.clone(), &idx)
    }

    fn from_closed(vertices: Vec<String>, all: BTreeSet<Vec<usize>>) -> Self {
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        let index = by_dim
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { vertices, by_dim, index }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplex_index(s).is_some()
    }

    pub fn simplex_count(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for d in 0..self.by_dim.len() {
            for s in &self.by_dim[d] {
                let covered = self.by_dim.get(d + 1).is_some_and(|up| {
                    up.iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok()))
                });
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Simplicial boundary `C_d → C_{d−1}` for `d ≥ 1`, rows indexed by
    /// `(d−1)`-simplices and columns by `d`-simplices.
    pub fn boundary_matrix(&self, d: usize) -> IntMatrix {
        assert!(d >= 1);
        let rows = self.simplices(d - 1).len();
        let cols = self.simplices(d).len();
        let mut m = IntMatrix::zeros(rows, cols);
        for (j, s) in self.simplices(d).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let r = self.index[d - 1][&face];
                m.set(r, j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// Subcomplex of simplices whose vertices all lie in `keep`.
    pub fn full_subcomplex(&self, keep: &[usize]) -> SimplicialComplex {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let all = self
            .by_dim
            .iter()
            .flatten()
            .filter(|s| s.iter().all(|v| set.contains(v)))
            .cloned()
            .collect();
        let mut k = Self::from_closed(self.vertices.clone(), all);
        // keep the vertex list for index stability; isolated dropped vertices simply have no simplex
        k.vertices = self.vertices.clone();
        k
    }
}

/// `K(X)`: the simplicial complex of nonempty chains of `X`. Vertex `i` is
/// element `i` of the poset.
pub fn order_complex(x: &Poset) -> SimplicialComplex {
    let mut all = BTreeSet::new();
    let mut stack: Vec<usize> = Vec::new();
    fn extend(x: &Poset, stack: &mut Vec<usize>, all: &mut BTreeSet<Vec<usize>>) {
        let mut s = stack.clone();
        s.sort_unstable();
        all.insert(s);
        let last = *stack.last().unwrap();
        for y in x.up_set(last).ones() {
            if y != last {
                stack.push(y);
                extend(x, stack, all);
                stack.pop();
            }
        }
    }
    for v in 0..x.len() {
        stack.push(v);
        extend(x, &mut stack, &mut all);
        stack.pop();
    }
    SimplicialComplex::from_closed(x.labels().to_vec(), all)
}

/// `X(K)`: simplices ordered by inclusion, listed by dimension and then
/// lexicographically; labels are `{a,b,…}`.
pub fn face_poset(k: &SimplicialComplex) -> Poset {
    let mut labels = Vec::new();
    let mut offset = Vec::new();
    for d in 0..k.by_dim.len() {
        offset.push(labels.len());
        for s in &k.by_dim[d] {
            let names: Vec<&str> = s.iter().map(|&v| k.vertices[v].as_str()).collect();
            labels.push(format!("{{{}}}", names.join(",")));
        }
    }
    let mut pairs = Vec::new();
    for d in 1..k.by_dim.len() {
        for (j, s) in k.by_dim[d].iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                pairs.push((offset[d - 1] + k.index[d - 1][&face], offset[d] + j));
            }
        }
    }
    Poset::from_index_pairs(labels, &pairs).expect("face poset is a poset")
}

/// Index in [`face_poset`] of each simplex, by dimension.
pub fn face_poset_offsets(k: &SimplicialComplex) -> Vec<usize> {
    let mut acc = 0;
    k.by_dim
        .iter()
        .map(|s| {
            let o = acc;
            acc += s.len();
            o
        })
        .collect()
}

/// Named complexes used throughout the tests and the corpus.
pub mod models {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// Boundary of the `d+1`-simplex, a `d`-sphere.
    pub fn sphere_boundary(d: usize) -> SimplicialComplex {
        let n = d + 2;
        let facets: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&v| v != i).collect()).collect();
        SimplicialComplex::new(names(n), &facets).unwrap()
    }

    /// The seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
    pub fn torus7() -> SimplicialComplex {
        let mut facets = Vec::new();
        for i in 0..7 {
            facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        SimplicialComplex::new(names(7), &facets).unwrap()
    }

    /// The six-vertex real projective plane.
    pub fn rp2_6() -> SimplicialComplex {
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::new(names(6), &facets).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::models::{chain, sphere};

    /// Independent chain counter: a subset is a chain iff pairwise comparable.
    fn brute_chain_count(p: &Poset) -> usize {
        let n = p.len();
        assert!(n <= 16);
        (1u32..(1 << n))
            .filter(|mask| {
                let items: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                items.iter().all(|&a| items.iter().all(|&b| p.comparable(a, b)))
            })
            .count()
    }

    #[test]
    fn chain_gives_full_simplex() {
        let k = order_complex(&chain(3));
        assert_eq!(k.f_vector(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn circle_order_complex_is_square() {
        let k = order_complex(&sphere(1));
        assert_eq!(k.f_vector(), vec![4, 4]);
        assert_eq!(k.simplex_count(), brute_chain_count(&sphere(1)));
        let s2 = sphere(2);
        assert_eq!(order_complex(&s2).simplex_count(), brute_chain_count(&s2));
    }

    #[test]
    fn face_posets() {
        let edge = SimplicialComplex::from_labels(&["a", "b"], &[vec!["a", "b"]]).unwrap();
        let p = face_poset(&edge);
        assert_eq!(p.len(), 3);
        assert_eq!(p.minimal_elements().len(), 2);
        assert_eq!(p.label(2), "{a,b}");

        let tri = models::sphere_boundary(1);
        let p = face_poset(&tri);
        assert_eq!(p.len(), 6);
        assert_eq!(p.edge_count(), 6);
        assert!(p.beat_points().is_empty());

        let sd = order_complex(&face_poset(&models::torus7()));
        assert_eq!(sd.f_vector()[0], models::torus7().simplex_count());
    }

    #[test]
    fn boundaries_compose_to_zero() {
        let k = models::torus7();
        assert!(k.boundary_matrix(1).mul(&k.boundary_matrix(2)).is_zero());
        assert_eq!(k.euler_characteristic(), 0);
        assert_eq!(models::rp2_6().euler_characteristic(), 1);
        assert_eq!(models::rp2_6().facets().len(), 10);
    }
}
