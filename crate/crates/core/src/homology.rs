//! Integer chain complexes and their homology.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::linalg::{smith_form, IntMatrix};
use crate::simplicial::SimplicialComplex;

/// A finitely generated abelian group `Z^rank ⊕ Z_{d1} ⊕ …` with `d1 | d2 | …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(alloc::format!("Z_{d}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Homology in degrees `0..len`, with trailing zero groups trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Homology {
    groups: Vec<HomologyGroup>,
}

impl Homology {
    pub fn new(mut groups: Vec<HomologyGroup>) -> Self {
        while groups.last().is_some_and(HomologyGroup::is_zero) {
            groups.pop();
        }
        Homology { groups }
    }

    pub fn group(&self, d: usize) -> HomologyGroup {
        self.groups.get(d).cloned().unwrap_or_default()
    }

    pub fn betti(&self, d: usize) -> usize {
        self.groups.get(d).map_or(0, |g| g.rank)
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.is_empty()
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return f.write_str("trivial");
        }
        for (d, g) in self.groups.iter().enumerate() {
            if d > 0 {
                f.write_str(", ")?;
            }
            write!(f, "H{d} = {g}")?;
        }
        Ok(())
    }
}

/// Free chain complex `C_top → … → C_0`; `boundaries[k−1]` is `d_k: C_k → C_{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainComplexError {
    #[error("ShapeMismatch: d_{0} has the wrong shape")]
    ShapeMismatch(usize),
    #[error("BoundaryNotNilpotent: d_{0} ∘ d_{1} ≠ 0")]
    NotNilpotent(usize, usize),
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, ChainComplexError> {
        assert_eq!(boundaries.len() + 1, ranks.len().max(1), "one boundary per positive degree");
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(ChainComplexError::ShapeMismatch(k + 1));
            }
        }
        let c = ChainComplex { ranks, boundaries };
        c.check_nilpotent()?;
        Ok(c)
    }

    /// Skips the `d∘d = 0` check; used to study deliberately corrupted complexes.
    pub fn new_unchecked(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Self {
        ChainComplex { ranks, boundaries }
    }

    pub fn check_nilpotent(&self) -> Result<(), ChainComplexError> {
        for k in 1..self.boundaries.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero() {
                return Err(ChainComplexError::NotNilpotent(k, k + 1));
            }
        }
        Ok(())
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_k`, for `k ≥ 1`.
    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k - 1]
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    fn homology_with(&self, augment: bool) -> Homology {
        let n = self.ranks.len();
        if n == 0 {
            return Homology::default();
        }
        // rank and torsion of each d_k, k = 0 (augmentation) ..= top
        let mut rank_of = vec![0usize; n + 1];
        let mut torsion_of: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        if augment && self.ranks[0] > 0 {
            rank_of[0] = 1;
        }
        for k in 1..n {
            let s = smith_form(&self.boundaries[k - 1]);
            rank_of[k] = s.rank();
            torsion_of[k] = s.torsion().iter().map(|d| d.to_u64().expect("torsion fits in u64")).collect();
        }
        let groups = (0..n)
            .map(|k| HomologyGroup {
                rank: self.ranks[k] - rank_of[k] - rank_of[k + 1],
                torsion: torsion_of[k + 1].clone(),
            })
            .collect();
        Homology::new(groups)
    }

    pub fn homology(&self) -> Homology {
        self.homology_with(false)
    }

    /// Reduced homology with respect to the augmentation summing all 0-chains.
    pub fn reduced_homology(&self) -> Homology {
        self.homology_with(true)
    }
}

pub fn simplicial_chain_complex(k: &SimplicialComplex) -> ChainComplex {
    let Some(top) = k.dim() else {
        return ChainComplex::new_unchecked(Vec::new(), Vec::new());
    };
    let ranks = (0..=top).map(|d| k.simplices(d).len()).collect();
    let boundaries = (1..=top).map(|d| k.boundary_matrix(d)).collect();
    ChainComplex::new_unchecked(ranks, boundaries)
}

/// Reduced integer homology of a nonempty complex (the empty complex gives
/// the trivial answer here; callers needing `H̃₋₁(∅) = Z` handle it).
pub fn simplicial_homology(k: &SimplicialComplex) -> Homology {
    simplicial_chain_complex(k).reduced_homology()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::models::{point, sphere};
    use crate::simplicial::{models, order_complex};

    fn z() -> HomologyGroup {
        HomologyGroup::free(1)
    }

    #[test]
    fn point_and_spheres() {
        assert!(simplicial_homology(&order_complex(&point())).is_trivial());
        let circle = simplicial_homology(&models::sphere_boundary(1));
        assert_eq!(circle.groups(), &[HomologyGroup::default(), z()]);
        let s2 = simplicial_homology(&order_complex(&sphere(2)));
        assert_eq!(s2.group(2), z());
        assert_eq!(s2.group(1), HomologyGroup::default());
    }

    #[test]
    fn torus_and_projective_plane() {
        let t = simplicial_homology(&models::torus7());
        assert_eq!(t.group(1), HomologyGroup::free(2));
        assert_eq!(t.group(2), z());
        let p = simplicial_homology(&models::rp2_6());
        assert_eq!(p.group(1), HomologyGroup { rank: 0, torsion: vec![2] });
        assert!(p.group(2).is_zero());
        assert_eq!(alloc::format!("{p}"), "H0 = 0, H1 = Z_2");
    }

    #[test]
    fn disjoint_points_have_reduced_h0() {
        let k = crate::simplicial::SimplicialComplex::from_labels(&["a", "b", "c"], &[vec!["a"], vec!["b"], vec!["c"]])
            .unwrap();
        assert_eq!(simplicial_homology(&k).group(0), HomologyGroup::free(2));
    }
}
