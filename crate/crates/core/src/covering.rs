//! Poset coverings: the construction `E(c)`, verification, lifting, deck
//! transformations, universal covers with finite abelian π₁ and the
//! finite-group realization construction.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{standard_coloring_with_budget, Admissibility, Coloring, ColoringError};
use crate::group::{FiniteGroup, GroupError, Truth, DEFAULT_BUDGET};
use crate::pi1::{Digon, EdgePath, Pi1Error};
use crate::poset::{MonotoneMap, Poset, PosetError};
use crate::simplicial::{face_poset, face_poset_offsets, order_complex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoveringError {
    #[error("NotAdmissible: chains {:?} and {:?} from {} to {} have different weights", .0.left, .0.right, .0.bottom, .0.top)]
    NotAdmissible(Digon),
    #[error("NotACovering: {0}")]
    NotACovering(CoveringViolation),
    #[error("NotFiniteOrUnknownPi1: {0}")]
    NotFiniteOrUnknownPi1(String),
    #[error("InvalidLift: {0}")]
    InvalidLift(String),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Why a monotone map fails to be a covering; indices refer to the lowest
/// offending element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoveringViolation {
    NotSurjective { missed: usize },
    DownSet { element: usize },
    UpSet { element: usize },
    Chain { base_chain_top: usize },
}

impl fmt::Display for CoveringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoveringViolation::NotSurjective { missed } => write!(f, "base element {missed} is not hit"),
            CoveringViolation::DownSet { element } => write!(f, "U restricted at element {element} is not a bijection"),
            CoveringViolation::UpSet { element } => write!(f, "F restricted at element {element} is not a bijection"),
            CoveringViolation::Chain { base_chain_top } => {
                write!(f, "preimage of a chain ending at base element {base_chain_top} is not a disjoint union of copies")
            }
        }
    }
}

/// `p` is surjective and restricts to bijections `U_e → U_{p(e)}` and
/// `F_e → F_{p(e)}` for every `e`.
pub fn verify_covering(p: &MonotoneMap) -> Result<(), CoveringViolation> {
    if let Some(missed) = (0..p.target().len()).find(|&b| !p.images().contains(&b)) {
        return Err(CoveringViolation::NotSurjective { missed });
    }
    let (e, b) = (p.source(), p.target());
    let bijective = |from: &fixedbitset::FixedBitSet, onto: &fixedbitset::FixedBitSet| {
        let mut hit = fixedbitset::FixedBitSet::with_capacity(b.len());
        for v in from.ones() {
            let w = p.apply(v);
            if hit.contains(w) {
                return false;
            }
            hit.insert(w);
        }
        hit == *onto
    };
    for x in 0..e.len() {
        if !bijective(e.down_set(x), b.down_set(p.apply(x))) {
            return Err(CoveringViolation::DownSet { element: x });
        }
        if !bijective(e.up_set(x), b.up_set(p.apply(x))) {
            return Err(CoveringViolation::UpSet { element: x });
        }
    }
    Ok(())
}

/// Independent check: the preimage of every chain of the base is a disjoint
/// union of chains, each mapped bijectively onto it.
pub fn verify_covering_by_chains(p: &MonotoneMap) -> Result<(), CoveringViolation> {
    if let Some(missed) = (0..p.target().len()).find(|&b| !p.images().contains(&b)) {
        return Err(CoveringViolation::NotSurjective { missed });
    }
    let total = order_complex(p.source());
    let base = order_complex(p.target());
    match preimage_violation(&total, &base, p.images()) {
        None => Ok(()),
        Some(sigma) => Err(CoveringViolation::Chain { base_chain_top: *sigma.last().unwrap() }),
    }
}

/// First simplex of `base` whose preimage is not a disjoint union of
/// simplices mapped isomorphically onto it.
fn preimage_violation(total: &SimplicialComplex, base: &SimplicialComplex, map: &[usize]) -> Option<Vec<usize>> {
    let mut fibers = vec![Vec::new(); base.vertices().len()];
    for (v, &b) in map.iter().enumerate() {
        fibers[b].push(v);
    }
    let top = base.dim().unwrap_or(0);
    for d in 0..=top {
        for sigma in base.simplices(d) {
            let verts: Vec<usize> = sigma.iter().flat_map(|&b| fibers[b].iter().copied()).collect();
            let mut seen = BTreeSet::new();
            for &start in &verts {
                if seen.contains(&start) {
                    continue;
                }
                let mut comp = vec![start];
                seen.insert(start);
                let mut i = 0;
                while i < comp.len() {
                    let a = comp[i];
                    i += 1;
                    for &b in &verts {
                        let edge = [a.min(b), a.max(b)];
                        if a != b && !seen.contains(&b) && total.contains(&edge) {
                            seen.insert(b);
                            comp.push(b);
                        }
                    }
                }
                comp.sort_unstable();
                let mut image: Vec<usize> = comp.iter().map(|&v| map[v]).collect();
                image.sort_unstable();
                image.dedup();
                if comp.len() != sigma.len() || image != *sigma || !total.contains(&comp) {
                    return Some(sigma.clone());
                }
            }
        }
    }
    None
}

/// A verified covering `p: E → B`.
#[derive(Clone, Debug)]
pub struct CoveringMap {
    projection: MonotoneMap,
}

impl CoveringMap {
    pub fn new(projection: MonotoneMap) -> Result<Self, CoveringError> {
        verify_covering(&projection).map_err(CoveringError::NotACovering)?;
        Ok(CoveringMap { projection })
    }

    pub fn identity(x: &Poset) -> Self {
        CoveringMap { projection: MonotoneMap::identity(x) }
    }

    pub fn total(&self) -> &Poset {
        self.projection.source()
    }

    pub fn base(&self) -> &Poset {
        self.projection.target()
    }

    pub fn projection(&self) -> &MonotoneMap {
        &self.projection
    }

    pub fn project(&self, e: usize) -> usize {
        self.projection.apply(e)
    }

    pub fn fiber(&self, b: usize) -> Vec<usize> {
        (0..self.total().len()).filter(|&e| self.project(e) == b).collect()
    }

    /// Number of sheets over the first base element; constant over connected bases.
    pub fn sheets(&self) -> usize {
        if self.base().is_empty() {
            0
        } else {
            self.fiber(0).len()
        }
    }

    /// The unique Hasse neighbour of `e` over the base neighbour `b` of `p(e)`.
    pub fn lift_step(&self, e: usize, b: usize) -> Option<usize> {
        let x = self.total();
        let pe = self.project(e);
        let candidates = if self.base().is_cover(pe, b) {
            x.upper_covers(e)
        } else if self.base().is_cover(b, pe) {
            x.lower_covers(e)
        } else {
            return None;
        };
        let mut it = candidates.iter().copied().filter(|&u| self.project(u) == b);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }
}

/// `E(c)`: elements `(x, g)` at index `x·|G| + g`, with `(x, g) ≺ (y, g·c(x, y))`.
pub fn build_cover(c: &Coloring<FiniteGroup>) -> Result<CoveringMap, CoveringError> {
    match c.is_admissible() {
        Admissibility::Admissible => {}
        Admissibility::NotAdmissible(d) | Admissibility::Unknown(d) => return Err(CoveringError::NotAdmissible(d)),
    }
    let b = c.poset();
    let g = c.group();
    let n = g.order();
    let mut labels = Vec::with_capacity(b.len() * n);
    for x in 0..b.len() {
        for a in 0..n {
            labels.push(format!("({},{})", b.label(x), g.element_name(a)));
        }
    }
    let mut pairs = Vec::with_capacity(b.edge_count() * n);
    for (e, &(x, y)) in b.covers().iter().enumerate() {
        for a in 0..n {
            pairs.push((x * n + a, y * n + g.mul(a, *c.color(e))));
        }
    }
    let total = Poset::from_index_pairs(labels, &pairs)?;
    let images = (0..b.len() * n).map(|i| i / n).collect();
    let p = MonotoneMap::new(&total, b, images)?;
    CoveringMap::new(p)
}

/// The unique lift of `path` starting at `start`.
pub fn lift_path(p: &CoveringMap, path: &EdgePath, start: usize) -> Result<EdgePath, CoveringError> {
    if path.poset() != p.base() || p.project(start) != path.start() {
        return Err(CoveringError::InvalidLift(format!("element {start} does not lie over the start of the path")));
    }
    let mut verts = vec![start];
    let mut cur = start;
    for (_, b) in path.steps() {
        cur = p
            .lift_step(cur, b)
            .ok_or_else(|| CoveringError::InvalidLift(format!("no unique lift of a step at element {cur}")))?;
        verts.push(cur);
    }
    Ok(EdgePath::new(p.total(), verts)?)
}

/// All automorphisms `h` of `E` with `p∘h = p`, as permutations. On each
/// component `h` is determined by the image of one point; choices are
/// propagated through unique lifts and checked.
pub fn deck_transformations(p: &CoveringMap) -> Vec<Vec<usize>> {
    let e = p.total();
    let comps = e.components();
    let mut out = Vec::new();
    let mut h = vec![usize::MAX; e.len()];
    let mut used = vec![false; e.len()];
    deck_search(p, &comps, 0, &mut h, &mut used, &mut out);
    out.sort();
    out
}

fn deck_search(
    p: &CoveringMap,
    comps: &[Vec<usize>],
    i: usize,
    h: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == comps.len() {
        let e = p.total();
        if e.covers().iter().all(|&(a, b)| e.is_cover(h[a], h[b])) {
            out.push(h.clone());
        }
        return;
    }
    let root = comps[i][0];
    for target in p.fiber(p.project(root)) {
        if used[target] {
            continue;
        }
        let saved = h.clone();
        let saved_used = used.clone();
        if propagate_deck(p, root, target, h, used) {
            deck_search(p, comps, i + 1, h, used, out);
        }
        *h = saved;
        *used = saved_used;
    }
}

fn propagate_deck(p: &CoveringMap, root: usize, target: usize, h: &mut [usize], used: &mut [bool]) -> bool {
    let e = p.total();
    h[root] = target;
    used[target] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in e.neighbours(v) {
            let Some(img) = p.lift_step(h[v], p.project(w)) else { return false };
            if h[w] == usize::MAX {
                if used[img] {
                    return false;
                }
                h[w] = img;
                used[img] = true;
                queue.push_back(w);
            } else if h[w] != img {
                return false;
            }
        }
    }
    true
}

/// Finite abelian group `Z_{d₁} × … × Z_{d_k}` in mixed radix, last factor fastest.
pub fn cyclic_product(orders: &[u64]) -> FiniteGroup {
    orders.iter().fold(FiniteGroup::trivial(), |acc, &d| {
        if acc.order() == 1 {
            FiniteGroup::cyclic(d as usize)
        } else {
            acc.product(&FiniteGroup::cyclic(d as usize))
        }
    })
}

/// The universal cover, available when the fundamental group is recognized
/// as finite abelian: the standard coloring is pushed to the abelianization.
pub fn universal_cover(x: &Poset, base: usize) -> Result<CoveringMap, CoveringError> {
    universal_cover_with_budget(x, base, DEFAULT_BUDGET)
}

pub fn universal_cover_with_budget(x: &Poset, base: usize, budget: usize) -> Result<CoveringMap, CoveringError> {
    let col = universal_cover_coloring(x, base, budget)?;
    if col.group().order() == 1 {
        return Ok(CoveringMap::identity(x));
    }
    build_cover(&col)
}

/// The standard coloring pushed to a finite abelian group isomorphic to π₁;
/// fails unless π₁ is recognized as finite abelian.
pub fn universal_cover_coloring(x: &Poset, base: usize, budget: usize) -> Result<Coloring<FiniteGroup>, CoveringError> {
    let (std_col, pres) = standard_coloring_with_budget(x, base, budget)?;
    let verdict = &std_col.group().simplified().verdict;
    if verdict.finite_order().is_none() || !verdict.is_abelian() {
        return Err(CoveringError::NotFiniteOrUnknownPi1(format!("fundamental group recognized as: {verdict}")));
    }
    let ab = pres.presentation.abelianization();
    let orders = ab.group().torsion().to_vec();
    debug_assert_eq!(ab.group().rank(), 0);
    let g = cyclic_product(&orders);
    Ok(std_col.map_group(&g, |w| {
        ab.project(w).iter().zip(&orders).fold(0usize, |acc, (&v, &d)| acc * d as usize + v as usize)
    }))
}

/// The finite-group realization: a height-2 poset with a free action of `G`
/// whose orbit poset has fundamental group `G`.
#[derive(Clone, Debug)]
pub struct MilnorConstruction {
    pub total: Poset,
    /// Permutation of the total poset induced by each group element.
    pub action: Vec<Vec<usize>>,
    pub quotient: Poset,
    pub covering: CoveringMap,
}

/// Minimal points `(g, i)`, middle points `(g, h, i)` for `i ∈ Z₃` and
/// maximal points `(g, h, k)`; `(g, h, i+1)` covers `(g, i)` and `(h, i+2)`,
/// and `(g, h, k)` covers `(g, h, 1)`, `(k, g, 2)`, `(h, k, 0)`.
pub fn milnor_poset(g: &FiniteGroup) -> Result<MilnorConstruction, CoveringError> {
    let n = g.order();
    let bottom = |a: usize, i: usize| a * 3 + i;
    let middle = |a: usize, b: usize, i: usize| 3 * n + (a * n + b) * 3 + i;
    let top = |a: usize, b: usize, c: usize| 3 * n + 3 * n * n + (a * n + b) * n + c;
    let name = |a: usize| g.element_name(a);

    let mut labels = Vec::new();
    for a in 0..n {
        for i in 0..3 {
            labels.push(format!("v({},{i})", name(a)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for i in 0..3 {
                labels.push(format!("e({},{},{i})", name(a), name(b)));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                labels.push(format!("f({},{},{})", name(a), name(b), name(c)));
            }
        }
    }
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for j in 0..3 {
                pairs.push((bottom(a, (j + 2) % 3), middle(a, b, j)));
                pairs.push((bottom(b, (j + 1) % 3), middle(a, b, j)));
            }
            for c in 0..n {
                pairs.push((middle(a, b, 1), top(a, b, c)));
                pairs.push((middle(c, a, 2), top(a, b, c)));
                pairs.push((middle(b, c, 0), top(a, b, c)));
            }
        }
    }
    let total = Poset::from_index_pairs(labels.clone(), &pairs)?;
    let act = |s: usize, v: usize| -> usize {
        if v < 3 * n {
            bottom(g.mul(s, v / 3), v % 3)
        } else if v < 3 * n + 3 * n * n {
            let r = v - 3 * n;
            middle(g.mul(s, r / (3 * n)), g.mul(s, (r / 3) % n), r % 3)
        } else {
            let r = v - 3 * n - 3 * n * n;
            top(g.mul(s, r / (n * n)), g.mul(s, (r / n) % n), g.mul(s, r % n))
        }
    };
    let action: Vec<Vec<usize>> = (0..n).map(|s| (0..total.len()).map(|v| act(s, v)).collect()).collect();
    // orbit representative: the translate whose first coordinate is the identity
    let orbit = |v: usize| -> usize {
        let first = if v < 3 * n {
            v / 3
        } else if v < 3 * n + 3 * n * n {
            (v - 3 * n) / (3 * n)
        } else {
            (v - 3 * n - 3 * n * n) / (n * n)
        };
        let rep = act(g.inv(first), v);
        // representatives have first coordinate = identity (index 0)
        if rep < 3 * n {
            rep % 3
        } else if rep < 3 * n + 3 * n * n {
            3 + (rep - 3 * n) % (3 * n)
        } else {
            3 + 3 * n + (rep - 3 * n - 3 * n * n) % (n * n)
        }
    };
    let images: Vec<usize> = (0..total.len()).map(orbit).collect();
    let mut qlabels = vec![String::new(); 3 + 3 * n + n * n];
    for (v, &q) in images.iter().enumerate() {
        if qlabels[q].is_empty() {
            qlabels[q] = format!("[{}]", labels[v]);
        }
    }
    let qpairs: BTreeSet<(usize, usize)> = total.covers().iter().map(|&(a, b)| (images[a], images[b])).collect();
    let quotient = Poset::from_index_pairs(qlabels, &qpairs.into_iter().collect::<Vec<_>>())?;
    let covering = CoveringMap::new(MonotoneMap::new(&total, &quotient, images)?)?;
    Ok(MilnorConstruction { total, action, quotient, covering })
}

/// A simplicial map given by its vertex map.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: Vec<usize>) -> Option<Self> {
        let m = SimplicialMap { source: source.clone(), target: target.clone(), vertex_map };
        let ok = m.vertex_map.len() == source.vertices().len()
            && (0..=source.dim().unwrap_or(0)).all(|d| source.simplices(d).iter().all(|s| target.contains(&m.image(s))));
        ok.then_some(m)
    }

    /// Sorted vertex set of the image of a simplex.
    pub fn image(&self, s: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|&x| self.vertex_map[x]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Preimage of every simplex is a disjoint union of simplices mapped
    /// isomorphically onto it, and every vertex is hit.
    pub fn is_covering(&self) -> bool {
        let hit: BTreeSet<usize> = self.vertex_map.iter().copied().collect();
        hit.len() == self.target.vertices().len()
            && preimage_violation(&self.source, &self.target, &self.vertex_map).is_none()
    }

    /// The induced map of face posets.
    pub fn face_poset_map(&self) -> MonotoneMap {
        let src = face_poset(&self.source);
        let tgt = face_poset(&self.target);
        let so = face_poset_offsets(&self.source);
        let to = face_poset_offsets(&self.target);
        let mut images = vec![0; src.len()];
        for d in 0..so.len() {
            for (j, s) in self.source.simplices(d).iter().enumerate() {
                let t = self.image(s);
                images[so[d] + j] = to[t.len() - 1] + self.target.simplex_index(&t).unwrap();
            }
        }
        MonotoneMap::new(&src, &tgt, images).expect("face maps are monotone")
    }
}

/// `K(p)` for a poset covering, checked with the simplex-preimage criterion.
pub fn simplicial_covering_check(p: &CoveringMap) -> bool {
    order_complex_map(p.projection()).is_covering()
}

pub fn order_complex_map(p: &MonotoneMap) -> SimplicialMap {
    SimplicialMap {
        source: order_complex(p.source()),
        target: order_complex(p.target()),
        vertex_map: p.images().to_vec(),
    }
}

/// `X(φ)` of a simplicial covering is a poset covering.
pub fn face_poset_covering_check(phi: &SimplicialMap) -> bool {
    verify_covering(&phi.face_poset_map()).is_ok()
}

/// Whether a closed path at `start` lifts to a closed path.
pub fn lifts_closed(p: &CoveringMap, path: &EdgePath, start: usize) -> Result<Truth, CoveringError> {
    let l = lift_path(p, path, start)?;
    Ok(Truth::from(l.is_closed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::simplicial_homology;
    use crate::pi1::{is_simply_connected, pi1_presentation};
    use crate::poset::models::{point, sphere};

    fn hom(x: &Poset) -> crate::homology::Homology {
        simplicial_homology(&order_complex(x))
    }

    #[test]
    fn verification_basics() {
        let s = sphere(1);
        assert!(verify_covering(&MonotoneMap::identity(&s)).is_ok());
        let two = Poset::from_index_pairs(vec!["a".into(), "b".into()], &[]).unwrap();
        let to_point = MonotoneMap::new(&two, &point(), vec![0, 0]).unwrap();
        assert!(verify_covering(&to_point).is_ok());
        // two points over a 2-chain, both mapped to its bottom: not surjective
        let chain = crate::poset::models::chain(2);
        let bad = MonotoneMap::new(&two, &chain, vec![0, 0]).unwrap();
        assert_eq!(verify_covering(&bad), Err(CoveringViolation::NotSurjective { missed: 1 }));
        // a circle folded onto an interval
        let fold = MonotoneMap::new(&s, &chain, vec![0, 0, 1, 1]).unwrap();
        assert!(verify_covering(&fold).is_err());
        assert!(verify_covering_by_chains(&fold).is_err());
    }

    #[test]
    fn trivial_coloring_gives_copies() {
        let s = sphere(1);
        let z2 = FiniteGroup::cyclic(2);
        let p = build_cover(&Coloring::trivial(&s, &z2)).unwrap();
        assert_eq!(p.total().len(), 8);
        assert_eq!(p.total().components().len(), 2);
        assert!(verify_covering_by_chains(p.projection()).is_ok());
    }

    #[test]
    fn double_cover_of_the_circle() {
        let s = sphere(1);
        let z2 = FiniteGroup::cyclic(2);
        let mut c = Coloring::trivial(&s, &z2);
        c.set_color(3, 1);
        let p = build_cover(&c).unwrap();
        assert!(p.total().is_connected());
        let h = hom(p.total());
        assert_eq!(h.betti(1), 1);
        assert!(h.group(1).torsion.is_empty());
        assert!(simplicial_covering_check(&p));
        assert_eq!(deck_transformations(&p).len(), 2);
        let pres = pi1_presentation(&s, 0, None).unwrap();
        let cycle = pres.fundamental_cycle(pres.generator_edges[0]);
        let lift = lift_path(&p, &cycle, 0).unwrap();
        assert_eq!(lift.end(), c.weight(&cycle));
        assert!(lift_path(&p, &cycle.concat(&cycle.inverse()), 0).unwrap().is_closed());
        assert!(lift_path(&p, &EdgePath::constant(&s, 0), 1).unwrap().is_empty());
        let sm = order_complex_map(p.projection());
        assert!(face_poset_covering_check(&sm));
    }

    #[test]
    fn milnor_small_groups() {
        let t = milnor_poset(&FiniteGroup::trivial()).unwrap();
        assert_eq!(t.total.len(), 7);
        assert_eq!(t.quotient.len(), 7);
        assert_eq!(is_simply_connected(&t.total), Truth::Yes);

        let m = milnor_poset(&FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(m.total.len(), 26);
        assert_eq!(m.quotient.len(), 13);
        assert!(verify_covering_by_chains(m.covering.projection()).is_ok());
        assert!(simplicial_covering_check(&m.covering));
        let h = hom(&m.quotient);
        assert_eq!(h.group(1).torsion, vec![2]);
        assert_eq!(h.betti(2), 0);
        assert_eq!(is_simply_connected(&m.total), Truth::Yes);
        // the action is by covering automorphisms
        let decks = deck_transformations(&m.covering);
        assert_eq!(decks.len(), 2);
        for a in &m.action {
            assert!(decks.contains(a));
        }

        let z3 = milnor_poset(&FiniteGroup::cyclic(3)).unwrap();
        let p = pi1_presentation(&z3.quotient, 0, None).unwrap();
        assert_eq!(p.presentation.abelianization().group().invariants(), (0, vec![3]));
    }

    #[test]
    fn universal_cover_of_projective_plane() {
        let m = milnor_poset(&FiniteGroup::cyclic(2)).unwrap();
        let u = universal_cover(&m.quotient, 0).unwrap();
        assert_eq!(u.total().len(), 26);
        assert_eq!(is_simply_connected(u.total()), Truth::Yes);
        let h = hom(u.total());
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.betti(2), 1);
        assert_eq!(deck_transformations(&u).len(), 2);
        assert!(matches!(universal_cover(&sphere(1), 0), Err(CoveringError::NotFiniteOrUnknownPi1(_))));
        assert_eq!(universal_cover(&sphere(2), 0).unwrap().sheets(), 1);
    }

    #[test]
    fn rigid_double_copy_decks_are_swaps() {
        let chain = crate::poset::models::chain(2);
        let z2 = FiniteGroup::cyclic(2);
        let p = build_cover(&Coloring::trivial(&chain, &z2)).unwrap();
        let decks = deck_transformations(&p);
        assert_eq!(decks, vec![vec![0, 1, 2, 3, 4, 5], vec![1, 0, 3, 2, 5, 4]]);
    }
}
