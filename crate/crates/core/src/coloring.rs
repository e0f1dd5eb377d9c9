//! Group colorings of Hasse diagrams.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{FiniteGroup, Group, GroupError, PresentedGroup, Truth, Word, DEFAULT_BUDGET};
use crate::pi1::{pi1_presentation, Digon, EdgePath, Pi1Error, Pi1Presentation};
use crate::poset::{Poset, Subdiagram};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("WrongLength: expected {expected} edge colors, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("DifferentPosets: the colorings live on different posets")]
    DifferentPosets,
    #[error("TrivialityNotCertified: {0}")]
    TrivialityNotCertified(String),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An assignment of a group element to every Hasse edge, stored on the
/// upward orientation; `c(y, x) = c(x, y)⁻¹` is derived.
#[derive(Clone, Debug)]
pub struct Coloring<G: Group> {
    poset: Poset,
    group: G,
    colors: Vec<G::Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// Two monotone chains with different weights.
    NotAdmissible(Digon),
    /// No conflict was proven, but some weight comparison was undecided.
    Unknown(Digon),
}

impl Admissibility {
    pub fn truth(&self) -> Truth {
        match self {
            Admissibility::Admissible => Truth::Yes,
            Admissibility::NotAdmissible(_) => Truth::No,
            Admissibility::Unknown(_) => Truth::Unknown,
        }
    }
}

impl<G: Group> Coloring<G> {
    pub fn new(poset: &Poset, group: &G, colors: Vec<G::Element>) -> Result<Self, ColoringError> {
        if colors.len() != poset.edge_count() {
            return Err(ColoringError::WrongLength { expected: poset.edge_count(), got: colors.len() });
        }
        Ok(Coloring { poset: poset.clone(), group: group.clone(), colors })
    }

    pub fn trivial(poset: &Poset, group: &G) -> Self {
        Coloring { poset: poset.clone(), group: group.clone(), colors: vec![group.identity(); poset.edge_count()] }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn colors(&self) -> &[G::Element] {
        &self.colors
    }

    /// Color of the edge with index `e`, upward orientation.
    pub fn color(&self, e: usize) -> &G::Element {
        &self.colors[e]
    }

    pub fn set_color(&mut self, e: usize, g: G::Element) {
        self.colors[e] = g;
    }

    /// `c(a, b)` for Hasse neighbours `a`, `b` in either order.
    pub fn step_color(&self, a: usize, b: usize) -> G::Element {
        let e = self.poset.edge_between(a, b).expect("not a Hasse edge");
        if self.poset.is_cover(a, b) {
            self.colors[e].clone()
        } else {
            self.group.inverse(&self.colors[e])
        }
    }

    /// Ordered product of the step colors; the identity for a constant path.
    pub fn weight(&self, path: &EdgePath) -> G::Element {
        path.steps().fold(self.group.identity(), |acc, (a, b)| self.group.op(&acc, &self.step_color(a, b)))
    }

    /// For every interval, all saturated chains must have the same weight.
    /// Weights from each bottom element are propagated up a linear extension;
    /// the first disagreement yields the offending pair of chains.
    pub fn is_admissible(&self) -> Admissibility {
        let x = &self.poset;
        let n = x.len();
        let mut undecided: Option<Digon> = None;
        for bottom in 0..n {
            let mut weight: Vec<Option<G::Element>> = vec![None; n];
            let mut via: Vec<usize> = vec![usize::MAX; n];
            weight[bottom] = Some(self.group.identity());
            for &y in x.linear_extension() {
                if y == bottom || !x.lt(bottom, y) {
                    continue;
                }
                for &z in x.lower_covers(y) {
                    let Some(wz) = weight[z].clone() else { continue };
                    let cand = self.group.op(&wz, &self.colors[x.edge_between(z, y).unwrap()]);
                    match &weight[y] {
                        None => {
                            weight[y] = Some(cand);
                            via[y] = z;
                        }
                        Some(cur) => match self.group.equals(cur, &cand) {
                            Truth::Yes => {}
                            t => {
                                let digon = witness_chains(bottom, y, &via, z);
                                if t == Truth::No {
                                    return Admissibility::NotAdmissible(digon);
                                }
                                undecided.get_or_insert(digon);
                            }
                        },
                    }
                }
            }
        }
        match undecided {
            None => Admissibility::Admissible,
            Some(d) => Admissibility::Unknown(d),
        }
    }

    /// Weights `w(γ_a · e · γ_b⁻¹)` of the fundamental cycles of a spanning tree at `base`.
    pub fn fundamental_weights(&self, base: usize) -> Result<Vec<G::Element>, ColoringError> {
        let p = pi1_presentation(&self.poset, base, None)?;
        Ok(p.fundamental_cycles().iter().map(|c| self.weight(c)).collect())
    }

    /// Whether the weights of closed paths at `base` generate the group.
    pub fn is_connected_coloring(&self, base: usize) -> Result<Truth, ColoringError> {
        let w = self.fundamental_weights(base)?;
        Ok(self.group.generated_by(&w))
    }

    /// Edgewise inverse.
    pub fn invert(&self) -> Self {
        Coloring {
            poset: self.poset.clone(),
            group: self.group.clone(),
            colors: self.colors.iter().map(|g| self.group.inverse(g)).collect(),
        }
    }

    /// Pushes the colors along a homomorphism.
    pub fn map_group<H: Group>(&self, target: &H, f: impl Fn(&G::Element) -> H::Element) -> Coloring<H> {
        Coloring { poset: self.poset.clone(), group: target.clone(), colors: self.colors.iter().map(f).collect() }
    }

    /// `c'(x, y) = g_x c(x, y) g_y⁻¹`.
    pub fn twist(&self, g: &[G::Element]) -> Self {
        let colors = self
            .poset
            .covers()
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| {
                let t = self.group.op(&g[a], &self.colors[e]);
                self.group.op(&t, &self.group.inverse(&g[b]))
            })
            .collect();
        Coloring { poset: self.poset.clone(), group: self.group.clone(), colors }
    }

    /// An equivalent coloring that is the identity on every edge of `parts`
    /// (pairwise disjoint connected subdiagrams). Each part must have all
    /// of its cycle weights certified trivial.
    pub fn trivialize_on_subdiagrams(&self, parts: &[Subdiagram]) -> Result<Self, ColoringError> {
        let n = self.poset.len();
        let mut g = vec![self.group.identity(); n];
        let mut claimed = vec![false; n];
        for (j, part) in parts.iter().enumerate() {
            if part.poset() != &self.poset {
                return Err(ColoringError::DifferentPosets);
            }
            if !part.is_connected() {
                return Err(ColoringError::TrivialityNotCertified(format!("part {j} is not connected")));
            }
            let (sub, verts) = part.as_poset();
            let local = self.restrict(part);
            let root = 0;
            let pres = pi1_presentation(&sub, root, None)?;
            for (k, cycle) in pres.fundamental_cycles().iter().enumerate() {
                let t = local.group.is_identity(&local.weight(cycle));
                if t != Truth::Yes {
                    let (a, b) = sub.edge(pres.generator_edges[k]);
                    return Err(ColoringError::TrivialityNotCertified(format!(
                        "cycle through {}≺{} in part {j} has weight {} (trivial: {t})",
                        sub.label(a),
                        sub.label(b),
                        self.group.format_element(&local.weight(cycle))
                    )));
                }
            }
            for (i, &v) in verts.iter().enumerate() {
                if claimed[v] {
                    return Err(ColoringError::TrivialityNotCertified(format!(
                        "parts overlap at {}",
                        self.poset.label(v)
                    )));
                }
                claimed[v] = true;
                g[v] = local.weight(&pres.tree_paths[i]);
            }
        }
        Ok(self.twist(&g))
    }

    /// The coloring of the subdiagram's own poset.
    pub fn restrict(&self, part: &Subdiagram) -> Self {
        let (sub, verts) = part.as_poset();
        let colors = sub
            .covers()
            .iter()
            .map(|&(a, b)| self.colors[self.poset.edge_between(verts[a], verts[b]).unwrap()].clone())
            .collect();
        Coloring { poset: sub, group: self.group.clone(), colors }
    }
}

/// Reconstructs the two chains from `bottom` to `top` that disagree: one
/// through the recorded predecessor of `top`, one through `other`.
fn witness_chains(bottom: usize, top: usize, via: &[usize], other: usize) -> Digon {
    let back = |mut v: usize| {
        let mut chain = vec![v];
        while v != bottom {
            v = via[v];
            chain.push(v);
        }
        chain.reverse();
        chain
    };
    let mut left = back(via[top]);
    left.push(top);
    let mut right = back(other);
    right.push(top);
    Digon { bottom, top, left, right }
}

/// `φ` and `(g_x)` with `c'(x, y) = φ(g_x c(x, y) g_y⁻¹)` on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringEquivalence {
    pub automorphism: Vec<usize>,
    pub witness: Vec<usize>,
}

impl ColoringEquivalence {
    pub fn verify(&self, c: &Coloring<FiniteGroup>, d: &Coloring<FiniteGroup>) -> bool {
        let g = c.group();
        c.poset().covers().iter().enumerate().all(|(e, &(a, b))| {
            let inner = g.mul(g.mul(self.witness[a], c.colors[e]), g.inv(self.witness[b]));
            self.automorphism[inner] == d.colors[e]
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Yes(ColoringEquivalence),
    No,
    Unknown(String),
}

/// `c⁻¹(x, y) = c(x, y)⁻¹` on every edge.
pub fn invert_coloring<G: Group>(c: &Coloring<G>) -> Coloring<G> {
    c.invert()
}

/// Decides equivalence of two colorings over the same finite group by
/// searching automorphisms `φ` and, per component, the base value `g_r`;
/// the rest of `g` is forced along a spanning tree.
pub fn are_equivalent(c: &Coloring<FiniteGroup>, d: &Coloring<FiniteGroup>) -> Result<EquivalenceVerdict, ColoringError> {
    if c.poset() != d.poset() || c.group() != d.group() {
        return Err(ColoringError::DifferentPosets);
    }
    let g = c.group();
    let auts = match g.automorphisms() {
        Ok(a) => a,
        Err(e) => return Ok(EquivalenceVerdict::Unknown(format!("{e}"))),
    };
    let x = c.poset();
    let components = x.components();
    'aut: for phi in &auts {
        let mut phi_inv = vec![0; g.order()];
        for (a, &b) in phi.iter().enumerate() {
            phi_inv[b] = a;
        }
        let mut witness = vec![usize::MAX; x.len()];
        for comp in &components {
            let found = (0..g.order()).any(|start| {
                let mut w = witness.clone();
                if propagate(c, d, &phi_inv, comp[0], start, &mut w) {
                    witness = w;
                    true
                } else {
                    false
                }
            });
            if !found {
                continue 'aut;
            }
        }
        let eq = ColoringEquivalence { automorphism: phi.clone(), witness };
        debug_assert!(eq.verify(c, d));
        return Ok(EquivalenceVerdict::Yes(eq));
    }
    Ok(EquivalenceVerdict::No)
}

/// Forces `g_y = φ⁻¹(c'(x,y))⁻¹ g_x c(x,y)` along a BFS from `root`, checking every edge met.
fn propagate(
    c: &Coloring<FiniteGroup>,
    d: &Coloring<FiniteGroup>,
    phi_inv: &[usize],
    root: usize,
    start: usize,
    w: &mut [usize],
) -> bool {
    let g = c.group();
    let x = c.poset();
    w[root] = start;
    let mut queue = alloc::collections::VecDeque::from([root]);
    while let Some(a) = queue.pop_front() {
        for b in x.neighbours(a) {
            let cab = c.step_color(a, b);
            let dab = d.step_color(a, b);
            let forced = g.mul(g.mul(g.inv(phi_inv[dab]), w[a]), cab);
            if w[b] == usize::MAX {
                w[b] = forced;
                queue.push_back(b);
            } else if w[b] != forced {
                return false;
            }
        }
    }
    true
}

/// Equivalence for arbitrary groups: only refutations through invariants
/// (admissibility, connectedness) are attempted.
pub fn are_equivalent_generic<G: Group>(c: &Coloring<G>, d: &Coloring<G>, base: usize) -> Result<EquivalenceVerdict, ColoringError> {
    if c.poset() != d.poset() {
        return Err(ColoringError::DifferentPosets);
    }
    let differ = |a: Truth, b: Truth| matches!((a, b), (Truth::Yes, Truth::No) | (Truth::No, Truth::Yes));
    if differ(c.is_admissible().truth(), d.is_admissible().truth()) {
        return Ok(EquivalenceVerdict::No);
    }
    if c.poset().is_connected() && differ(c.is_connected_coloring(base)?, d.is_connected_coloring(base)?) {
        return Ok(EquivalenceVerdict::No);
    }
    Ok(EquivalenceVerdict::Unknown("equivalence is only decided over finite groups".into()))
}

/// The coloring by the presentation group: edges of the spanning tree get
/// the identity, every other edge its generator.
pub fn standard_coloring(x: &Poset, base: usize) -> Result<(Coloring<PresentedGroup>, Pi1Presentation), ColoringError> {
    standard_coloring_with_budget(x, base, DEFAULT_BUDGET)
}

pub fn standard_coloring_with_budget(
    x: &Poset,
    base: usize,
    budget: usize,
) -> Result<(Coloring<PresentedGroup>, Pi1Presentation), ColoringError> {
    let p = pi1_presentation(x, base, None)?;
    let group = PresentedGroup::new(p.presentation.clone(), budget);
    let colors = p.edge_generator.iter().map(|g| g.map_or_else(Word::empty, Word::generator)).collect();
    Ok((Coloring { poset: x.clone(), group, colors }, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi1::cycle_word;
    use crate::poset::models::{fence, sphere};

    fn figure_eight() -> (Poset, Vec<usize>) {
        sphere(1).wedge(0, &sphere(1), 0)
    }

    #[test]
    fn weights() {
        let c4 = sphere(1);
        let z2 = FiniteGroup::cyclic(2);
        let mut col = Coloring::trivial(&c4, &z2);
        col.set_color(3, 1);
        let p = pi1_presentation(&c4, 0, None).unwrap();
        let cycle = p.fundamental_cycle(p.generator_edges[0]);
        assert_eq!(col.weight(&EdgePath::constant(&c4, 0)), 0);
        assert_eq!(col.weight(&cycle.concat(&cycle.inverse())), 0);
        assert_eq!(col.weight(&cycle), 1);
        assert_eq!(col.is_admissible(), Admissibility::Admissible);
        assert_eq!(col.is_connected_coloring(0).unwrap(), Truth::Yes);
        assert_eq!(Coloring::trivial(&c4, &z2).is_connected_coloring(0).unwrap(), Truth::No);
    }

    #[test]
    fn admissibility_conflict_is_localized() {
        let s2 = sphere(2);
        let z2 = FiniteGroup::cyclic(2);
        let mut col = Coloring::trivial(&s2, &z2);
        col.set_color(0, 1);
        match col.is_admissible() {
            Admissibility::NotAdmissible(d) => {
                assert_eq!(d.left[0], d.bottom);
                assert_ne!(d.left, d.right);
                let w = |ch: &[usize]| {
                    ch.windows(2).fold(0, |acc, s| z2.mul(acc, col.step_color(s[0], s[1])))
                };
                assert_ne!(w(&d.left), w(&d.right));
            }
            other => panic!("expected a conflict, got {other:?}"),
        }
    }

    #[test]
    fn standard_coloring_matches_cycle_words() {
        let x = crate::simplicial::face_poset(&crate::simplicial::models::rp2_6());
        let (c, p) = standard_coloring(&x, 0).unwrap();
        assert_eq!(c.is_admissible(), Admissibility::Admissible);
        for cycle in p.fundamental_cycles() {
            assert_eq!(c.weight(&cycle), cycle_word(&cycle, &p).free_reduce());
        }
        let (c, _) = standard_coloring(&fence(4), 0).unwrap();
        assert!(c.colors().iter().all(Word::is_empty));
    }

    /// The dihedral coloring of a graph with two independent cycles whose
    /// inverse is not connected.
    #[test]
    fn dihedral_coloring_and_its_inverse() {
        let (x, map) = figure_eight();
        let d3 = FiniteGroup::dihedral(3);
        let r = d3.element_by_name("r").unwrap();
        let s = d3.element_by_name("s").unwrap();
        let r2 = d3.mul(r, r);
        let sr2 = d3.mul(s, r2);
        // ξ: the left circle; the vertex `v` = a1 (index 2) has edges to a0 (0) and b0 (1)
        let v = 2;
        let e0 = x.edge_between(0, v).unwrap();
        let e1 = x.edge_between(1, v).unwrap();
        let mut col = Coloring::trivial(&x, &d3);
        // 0 ≺ v, so e0 gets r; the other edge at v gets s r²
        col.set_color(e0, r);
        col.set_color(e1, sr2);
        let e0p = x.edge_between(map[2], map[1]).unwrap();
        col.set_color(e0p, s);
        assert_eq!(col.is_admissible(), Admissibility::Admissible);
        let cycle = EdgePath::new(&x, vec![v, 1, 3, 0, v]).unwrap();
        assert_eq!(col.weight(&cycle), d3.mul(d3.inv(sr2), r));
        assert_eq!(col.is_connected_coloring(0).unwrap(), Truth::Yes);
        assert_eq!(col.invert().is_connected_coloring(0).unwrap(), Truth::No);
    }

    #[test]
    fn equivalence_search() {
        let (x, _) = figure_eight();
        let z3 = FiniteGroup::cyclic(3);
        let mut c = Coloring::trivial(&x, &z3);
        c.set_color(0, 1);
        c.set_color(5, 1);
        match are_equivalent(&c, &c).unwrap() {
            EquivalenceVerdict::Yes(eq) => {
                assert!(eq.verify(&c, &c));
            }
            other => panic!("{other:?}"),
        }
        // twisting by vertex elements and applying x ↦ −x gives an equivalent coloring
        let g: Vec<usize> = (0..x.len()).map(|i| i % 3).collect();
        let twisted = c.twist(&g).map_group(&z3, |&a| z3.inv(a));
        assert!(matches!(are_equivalent(&c, &twisted).unwrap(), EquivalenceVerdict::Yes(_)));
        let trivial = Coloring::trivial(&x, &z3);
        assert_eq!(are_equivalent(&c, &trivial).unwrap(), EquivalenceVerdict::No);
    }

    #[test]
    fn trivialization() {
        let x = sphere(1);
        let z4 = FiniteGroup::cyclic(4);
        let c = Coloring::new(&x, &z4, vec![1, 2, 3, 1]).unwrap();
        let tree = crate::pi1::spanning_tree_subdiagram(&x).unwrap();
        let t = c.trivialize_on_subdiagrams(&[tree.clone()]).unwrap();
        for e in tree.edges().ones() {
            assert_eq!(*t.color(e), 0);
        }
        let p = pi1_presentation(&x, 0, None).unwrap();
        let cyc = p.fundamental_cycle(p.generator_edges[0]);
        assert_eq!(t.weight(&cyc), c.weight(&cyc));
        assert!(matches!(are_equivalent(&c, &t).unwrap(), EquivalenceVerdict::Yes(_)));
        let whole = Subdiagram::full(&x);
        assert!(matches!(c.trivialize_on_subdiagrams(&[whole]), Err(ColoringError::TrivialityNotCertified(_))));
        let single = Subdiagram::from_edges(&x, [2]);
        let s = c.trivialize_on_subdiagrams(&[single]).unwrap();
        assert_eq!(*s.color(2), 0);
    }
}
