//! Edge-paths, simple digons and presentations of the fundamental group.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::group::{GroupPresentation, Letter, Truth, Verdict, Word, DEFAULT_BUDGET};
use crate::poset::{Poset, Subdiagram};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Pi1Error {
    #[error("NotConnected: the Hasse diagram is not connected")]
    NotConnected,
    #[error("PossiblyNotSimplyConnected: the subdiagram is not certified simply connected")]
    PossiblyNotSimplyConnected,
    #[error("SubdiagramNotSpanning: the subdiagram misses element `{0}`")]
    SubdiagramNotSpanning(String),
    #[error("HypothesisViolation: {0}")]
    HypothesisViolation(String),
    #[error("InvalidPath: {0}")]
    InvalidPath(String),
}

/// A walk in the Hasse diagram, stored as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    poset: Poset,
    vertices: Vec<usize>,
}

impl EdgePath {
    pub fn new(poset: &Poset, vertices: Vec<usize>) -> Result<Self, Pi1Error> {
        if vertices.is_empty() {
            return Err(Pi1Error::InvalidPath("a path needs a start point".into()));
        }
        for w in vertices.windows(2) {
            if poset.edge_between(w[0], w[1]).is_none() {
                return Err(Pi1Error::InvalidPath(format!(
                    "{} and {} are not joined by a Hasse edge",
                    poset.label(w[0]),
                    poset.label(w[1])
                )));
            }
        }
        Ok(EdgePath { poset: poset.clone(), vertices })
    }

    /// The constant path at `x`.
    pub fn constant(poset: &Poset, x: usize) -> Self {
        EdgePath { poset: poset.clone(), vertices: vec![x] }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    /// Directed steps `(from, to)`.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn concat(&self, other: &EdgePath) -> EdgePath {
        assert_eq!(self.end(), other.start(), "paths do not compose");
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        EdgePath { poset: self.poset.clone(), vertices: v }
    }

    pub fn inverse(&self) -> EdgePath {
        let mut v = self.vertices.clone();
        v.reverse();
        EdgePath { poset: self.poset.clone(), vertices: v }
    }
}

/// Spanning tree of the Hasse diagram found by breadth-first search from
/// the first element.
pub fn spanning_tree_subdiagram(x: &Poset) -> Result<Subdiagram, Pi1Error> {
    if !x.is_connected() {
        return Err(Pi1Error::NotConnected);
    }
    Ok(bfs_tree(x, 0, &Subdiagram::full(x), None))
}

/// BFS spanning tree of `within` rooted at `root`, extending `seed` when given
/// (the seed's vertices are explored through seed edges first).
fn bfs_tree(x: &Poset, root: usize, within: &Subdiagram, seed: Option<&Subdiagram>) -> Subdiagram {
    let mut verts = FixedBitSet::with_capacity(x.len());
    let mut edges = FixedBitSet::with_capacity(x.edge_count());
    let mut queue = VecDeque::new();
    verts.insert(root);
    queue.push_back(root);
    let grow = |allowed: &dyn Fn(usize) -> bool, verts: &mut FixedBitSet, edges: &mut FixedBitSet, queue: &mut VecDeque<usize>| {
        while let Some(v) = queue.pop_front() {
            for w in x.neighbours(v) {
                let e = x.edge_between(v, w).unwrap();
                if allowed(e) && !verts.contains(w) {
                    verts.insert(w);
                    edges.insert(e);
                    queue.push_back(w);
                }
            }
        }
    };
    if let Some(s) = seed {
        grow(&|e| s.contains_edge(e), &mut verts, &mut edges, &mut queue);
        queue.extend(verts.ones());
    }
    grow(&|e| within.contains_edge(e), &mut verts, &mut edges, &mut queue);
    Subdiagram::new(x, verts, edges).expect("tree edges join tree vertices")
}

/// Two saturated chains from `bottom` to `top` with disjoint interiors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digon {
    pub bottom: usize,
    pub top: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Digon {
    /// Edge indices of a chain, bottom to top.
    pub fn chain_edges(poset: &Poset, chain: &[usize]) -> Vec<usize> {
        chain.windows(2).map(|w| poset.edge_between(w[0], w[1]).unwrap()).collect()
    }
}

/// Saturated chains from `x` to `y`, memoized per interval.
pub(crate) struct ChainCache<'a> {
    poset: &'a Poset,
    memo: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl<'a> ChainCache<'a> {
    pub(crate) fn new(poset: &'a Poset) -> Self {
        ChainCache { poset, memo: BTreeMap::new() }
    }

    pub(crate) fn chains(&mut self, x: usize, y: usize) -> Vec<Vec<usize>> {
        if x == y {
            return vec![vec![x]];
        }
        if let Some(c) = self.memo.get(&(x, y)) {
            return c.clone();
        }
        let mut out = Vec::new();
        for &z in self.poset.upper_covers(x) {
            if self.poset.leq(z, y) {
                for tail in self.chains(z, y) {
                    let mut c = vec![x];
                    c.extend(tail);
                    out.push(c);
                }
            }
        }
        self.memo.insert((x, y), out.clone());
        out
    }
}

/// All simple digons, ordered by bottom, top and chain-pair index.
pub fn simple_digons(x: &Poset) -> Vec<Digon> {
    let mut cache = ChainCache::new(x);
    let mut out = Vec::new();
    for a in 0..x.len() {
        for b in x.up_set(a).ones() {
            if b == a || x.is_cover(a, b) {
                continue;
            }
            let chains = cache.chains(a, b);
            for i in 0..chains.len() {
                for j in i + 1..chains.len() {
                    let (l, r) = (&chains[i], &chains[j]);
                    let inner_l = &l[1..l.len() - 1];
                    let inner_r = &r[1..r.len() - 1];
                    if inner_l.iter().all(|v| !inner_r.contains(v)) {
                        out.push(Digon { bottom: a, top: b, left: l.clone(), right: r.clone() });
                    }
                }
            }
        }
    }
    out
}

/// A presentation of `π₁(X, x₀)` read off a simply connected spanning
/// subdiagram `D`: one generator per edge outside `D`, one relator per simple digon.
#[derive(Clone, Debug)]
pub struct Pi1Presentation {
    pub presentation: GroupPresentation,
    /// Hasse edge of each generator.
    pub generator_edges: Vec<usize>,
    /// Generator of each Hasse edge, `None` for edges of `D`.
    pub edge_generator: Vec<Option<usize>>,
    pub tree: Subdiagram,
    pub base: usize,
    /// Paths `γ_x` inside `D` from the base point to each element.
    pub tree_paths: Vec<EdgePath>,
}

impl Pi1Presentation {
    pub fn poset(&self) -> &Poset {
        self.tree.poset()
    }

    /// Word of a chain read bottom to top.
    fn chain_word(&self, chain: &[usize]) -> Word {
        let x = self.poset();
        let mut w = Word::empty();
        for e in Digon::chain_edges(x, chain) {
            if let Some(g) = self.edge_generator[e] {
                w.push(Letter::new(g, false));
            }
        }
        w
    }

    /// The closed path `γ_a · (a,b) · γ_b⁻¹` through the edge `e = (a, b)`.
    pub fn fundamental_cycle(&self, e: usize) -> EdgePath {
        let (a, b) = self.poset().edge(e);
        let step = EdgePath::new(self.poset(), vec![a, b]).unwrap();
        self.tree_paths[a].concat(&step).concat(&self.tree_paths[b].inverse())
    }

    /// Fundamental cycles of all generators, in generator order.
    pub fn fundamental_cycles(&self) -> Vec<EdgePath> {
        self.generator_edges.iter().map(|&e| self.fundamental_cycle(e)).collect()
    }
}

pub fn pi1_presentation(x: &Poset, base: usize, d: Option<&Subdiagram>) -> Result<Pi1Presentation, Pi1Error> {
    if !x.is_connected() {
        return Err(Pi1Error::NotConnected);
    }
    let tree = match d {
        None => bfs_tree(x, base, &Subdiagram::full(x), None),
        Some(d) => {
            if let Some(v) = (0..x.len()).find(|&v| !d.contains_vertex(v)) {
                return Err(Pi1Error::SubdiagramNotSpanning(x.label(v).into()));
            }
            let (dp, _) = d.as_poset();
            if is_simply_connected(&dp) != Truth::Yes {
                return Err(Pi1Error::PossiblyNotSimplyConnected);
            }
            d.clone()
        }
    };
    Ok(presentation_from_tree(x, base, tree, &simple_digons(x)))
}

fn presentation_from_tree(x: &Poset, base: usize, tree: Subdiagram, digons: &[Digon]) -> Pi1Presentation {
    let mut edge_generator = vec![None; x.edge_count()];
    let mut generator_edges = Vec::new();
    let mut names = Vec::new();
    for e in 0..x.edge_count() {
        if !tree.contains_edge(e) {
            edge_generator[e] = Some(generator_edges.len());
            generator_edges.push(e);
            names.push(format!("e{e}"));
        }
    }
    let tree_paths = tree_paths(x, base, &tree);
    let mut p = Pi1Presentation {
        presentation: GroupPresentation::new(names.clone(), Vec::new()).unwrap(),
        generator_edges,
        edge_generator,
        tree,
        base,
        tree_paths,
    };
    let relators: Vec<Word> = digons
        .iter()
        .map(|dg| p.chain_word(&dg.left).concat(&p.chain_word(&dg.right).inverse()))
        .filter(|w| !w.is_empty())
        .collect();
    p.presentation = GroupPresentation::new(names, relators).unwrap();
    p
}

/// Paths from `base` to every vertex inside the connected spanning subdiagram `d`.
fn tree_paths(x: &Poset, base: usize, d: &Subdiagram) -> Vec<EdgePath> {
    let n = x.len();
    let mut parent = vec![usize::MAX; n];
    parent[base] = base;
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for w in x.neighbours(v) {
            let e = x.edge_between(v, w).unwrap();
            if d.contains_edge(e) && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (0..n)
        .map(|v| {
            assert!(parent[v] != usize::MAX, "subdiagram does not connect {}", x.label(v));
            let mut path = vec![v];
            let mut cur = v;
            while cur != base {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            EdgePath { poset: x.clone(), vertices: path }
        })
        .collect()
}

/// `Yes` if the presentation simplifies to the trivial group, `No` if the
/// abelianization is nontrivial or the diagram is disconnected.
pub fn is_simply_connected(x: &Poset) -> Truth {
    is_simply_connected_with_budget(x, DEFAULT_BUDGET)
}

pub fn is_simply_connected_with_budget(x: &Poset, budget: usize) -> Truth {
    if !x.is_connected() {
        return Truth::No;
    }
    let p = pi1_presentation(x, 0, None).expect("connected");
    let s = p.presentation.simplify(budget);
    if s.verdict == Verdict::Trivial {
        Truth::Yes
    } else if !s.presentation.abelianization().group().is_trivial() {
        Truth::No
    } else {
        Truth::Unknown
    }
}

/// The word of generators crossed by a path: upward crossings give the
/// generator, downward crossings its inverse. Not reduced.
pub fn cycle_word(path: &EdgePath, p: &Pi1Presentation) -> Word {
    let x = p.poset();
    let mut w = Word::empty();
    for (a, b) in path.steps() {
        let e = x.edge_between(a, b).unwrap();
        if let Some(g) = p.edge_generator[e] {
            w.push(Letter::new(g, !x.is_cover(a, b)));
        }
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanKampenVerdict {
    /// The pushout presentation presents `π₁(X)`.
    Exact,
    /// Some digon lies in neither part; the pushout only maps onto `π₁(X)`.
    EpimorphismOnly,
}

#[derive(Clone, Debug)]
pub struct VanKampen {
    pub presentation: GroupPresentation,
    pub verdict: VanKampenVerdict,
    /// Hasse edge of each generator.
    pub generator_edges: Vec<usize>,
}

/// Pushout presentation for a cover of the diagram by subdiagrams `A`, `B`
/// with connected intersection containing the base point.
pub fn van_kampen(x: &Poset, a: &Subdiagram, b: &Subdiagram, base: usize) -> Result<VanKampen, Pi1Error> {
    let fail = |m: &str| Err(Pi1Error::HypothesisViolation(m.into()));
    if !a.is_connected() {
        return fail("A is not connected");
    }
    if !b.is_connected() {
        return fail("B is not connected");
    }
    if let Some(e) = (0..x.edge_count()).find(|&e| !a.contains_edge(e) && !b.contains_edge(e)) {
        let (p, q) = x.edge(e);
        return Err(Pi1Error::HypothesisViolation(format!(
            "edge {}≺{} lies in neither A nor B",
            x.label(p),
            x.label(q)
        )));
    }
    if let Some(v) = (0..x.len()).find(|&v| !a.contains_vertex(v) && !b.contains_vertex(v)) {
        return Err(Pi1Error::HypothesisViolation(format!("element {} lies in neither A nor B", x.label(v))));
    }
    let c = a.intersection(b);
    if !c.contains_vertex(base) {
        return fail("the intersection does not contain the base point");
    }
    if !c.is_connected() {
        return fail("the intersection of A and B is not connected");
    }
    let d_c = bfs_tree(x, base, &c, None);
    let d_a = bfs_tree(x, base, a, Some(&d_c));
    let d_b = bfs_tree(x, base, b, Some(&d_c));
    let in_trees = |e: usize| d_a.contains_edge(e) || d_b.contains_edge(e);
    let mut edge_generator = vec![None; x.edge_count()];
    let mut generator_edges = Vec::new();
    let mut names = Vec::new();
    for e in 0..x.edge_count() {
        if !in_trees(e) {
            edge_generator[e] = Some(generator_edges.len());
            generator_edges.push(e);
            names.push(format!("e{e}"));
        }
    }
    let chain_word = |chain: &[usize]| {
        let mut w = Word::empty();
        for e in Digon::chain_edges(x, chain) {
            if let Some(g) = edge_generator[e] {
                w.push(Letter::new(g, false));
            }
        }
        w
    };
    let mut relators = Vec::new();
    for part in [a, b] {
        let (sub, verts) = part.as_poset();
        for dg in simple_digons(&sub) {
            let left: Vec<usize> = dg.left.iter().map(|&i| verts[i]).collect();
            let right: Vec<usize> = dg.right.iter().map(|&i| verts[i]).collect();
            let r = chain_word(&left).concat(&chain_word(&right).inverse());
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }
    let inside = |part: &Subdiagram, chain: &[usize]| Digon::chain_edges(x, chain).iter().all(|&e| part.contains_edge(e));
    let exact = simple_digons(x).iter().all(|dg| {
        [a, b].iter().any(|part| inside(part, &dg.left) && inside(part, &dg.right))
    });
    Ok(VanKampen {
        presentation: GroupPresentation::new(names, relators).unwrap(),
        verdict: if exact { VanKampenVerdict::Exact } else { VanKampenVerdict::EpimorphismOnly },
        generator_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::KnownGroup;
    use crate::homology::simplicial_homology;
    use crate::poset::models::{chain, fence, sphere};
    use crate::simplicial::{face_poset, models as cx, order_complex};

    fn triangle() -> Poset {
        let k = crate::simplicial::SimplicialComplex::new(
            (0..3).map(|i| alloc::format!("{i}")).collect(),
            &[vec![0, 1, 2]],
        )
        .unwrap();
        face_poset(&k)
    }

    fn h1_matches(x: &Poset) {
        let p = pi1_presentation(x, 0, None).unwrap();
        let ab = p.presentation.abelianization();
        let h = simplicial_homology(&order_complex(x)).group(1);
        assert_eq!(ab.group().invariants(), (h.rank, h.torsion.clone()));
    }

    #[test]
    fn spanning_trees() {
        let t = spanning_tree_subdiagram(&chain(4)).unwrap();
        assert_eq!(t.edges().count_ones(..), 4);
        let c = sphere(1);
        let t = spanning_tree_subdiagram(&c).unwrap();
        assert_eq!(t.edges().count_ones(..), 3);
        let two = crate::poset::models::point().disjoint_union(&crate::poset::models::point());
        assert_eq!(spanning_tree_subdiagram(&two).unwrap_err(), Pi1Error::NotConnected);
    }

    #[test]
    fn digon_counts() {
        assert!(simple_digons(&sphere(1)).is_empty());
        assert!(simple_digons(&crate::poset::models::point()).is_empty());
        assert_eq!(simple_digons(&triangle()).len(), 3);
    }

    #[test]
    fn circle_presentation() {
        let c = sphere(1);
        let p = pi1_presentation(&c, 0, None).unwrap();
        assert_eq!(p.presentation.generator_count(), 1);
        assert!(p.presentation.relators().is_empty());
        assert_eq!(p.presentation.simplify(DEFAULT_BUDGET).verdict, Verdict::IsomorphicTo(KnownGroup::Integers));
        assert_eq!(is_simply_connected(&c), Truth::No);
        assert_eq!(is_simply_connected(&fence(3)), Truth::Yes);
        let cyc = p.fundamental_cycle(p.generator_edges[0]);
        assert!(cyc.is_closed());
        assert_eq!(cycle_word(&cyc, &p), Word::generator(0));
        assert!(cycle_word(&cyc.concat(&cyc.inverse()), &p).free_reduce().is_empty());
    }

    #[test]
    fn abelianization_equals_h1() {
        h1_matches(&sphere(2));
        h1_matches(&face_poset(&cx::torus7()));
        h1_matches(&face_poset(&cx::rp2_6()));
        h1_matches(&crate::poset::models::fence_cycle(6));
    }

    #[test]
    fn free_face_condition_gives_free_group() {
        // face poset of a graph: no digons, every saturated chain has one edge
        let k = cx::sphere_boundary(2);
        let graph = k.full_subcomplex(&[0, 1, 2, 3]);
        let one_skeleton = crate::simplicial::SimplicialComplex::new(
            graph.vertices().to_vec(),
            &graph.simplices(1).to_vec(),
        )
        .unwrap();
        let x = face_poset(&one_skeleton);
        let s = pi1_presentation(&x, 0, None).unwrap().presentation.simplify(DEFAULT_BUDGET);
        assert_eq!(s.verdict, Verdict::IsomorphicTo(KnownGroup::Free(3)));
    }

    #[test]
    fn user_supplied_subdiagram_must_be_simply_connected() {
        let c = sphere(1);
        let full = Subdiagram::full(&c);
        assert_eq!(pi1_presentation(&c, 0, Some(&full)).unwrap_err(), Pi1Error::PossiblyNotSimplyConnected);
        let partial = Subdiagram::from_edges(&c, [0]);
        assert!(matches!(pi1_presentation(&c, 0, Some(&partial)), Err(Pi1Error::SubdiagramNotSpanning(_))));
        let tree = Subdiagram::from_edges(&c, [0, 1, 2]);
        assert_eq!(pi1_presentation(&c, 0, Some(&tree)).unwrap().presentation.generator_count(), 1);
    }

    #[test]
    fn van_kampen_on_figure_eight() {
        let (w, map) = sphere(1).wedge(0, &sphere(1), 0);
        let left = Subdiagram::induced(&w, &[0, 1, 2, 3]);
        let right_elems: Vec<usize> = map.clone();
        let right = Subdiagram::induced(&w, &right_elems);
        let vk = van_kampen(&w, &left, &right, 0).unwrap();
        assert_eq!(vk.verdict, VanKampenVerdict::Exact);
        assert_eq!(vk.presentation.abelianization().group().invariants(), (2, vec![]));
        assert_eq!(vk.presentation.simplify(DEFAULT_BUDGET).verdict, Verdict::IsomorphicTo(KnownGroup::Free(2)));

        let full = Subdiagram::full(&w);
        let whole = van_kampen(&w, &full, &full, 0).unwrap();
        let direct = pi1_presentation(&w, 0, None).unwrap();
        assert_eq!(whole.presentation.generator_count(), direct.presentation.generator_count());
        assert_eq!(whole.presentation.relators().len(), 2 * direct.presentation.relators().len());
    }

    #[test]
    fn van_kampen_detects_split_digons() {
        let x = triangle();
        // vertices 0..3, edges 3..6 ({0,1},{0,2},{1,2}), face 6
        let a = Subdiagram::induced(&x, &[0, 1, 2, 3, 4, 5]);
        let b = Subdiagram::induced(&x, &[0, 3, 4, 6]);
        let vk = van_kampen(&x, &a, &b, 0);
        // the edge {1,2} ≺ face is in neither part
        assert!(matches!(vk, Err(Pi1Error::HypothesisViolation(_))));
        let b = Subdiagram::induced(&x, &[0, 1, 2, 3, 4, 5, 6]);
        let a = Subdiagram::induced(&x, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(van_kampen(&x, &a, &b, 0).unwrap().verdict, VanKampenVerdict::Exact);
        // edges: (0,3) (0,4) (1,3) (1,5) (2,4) (2,5) (3,6) (4,6) (5,6)
        assert_eq!(x.edge(7), (4, 6));
        let a = Subdiagram::from_edges(&x, [0, 1, 2, 3, 4, 5, 6, 8]);
        let b = Subdiagram::from_edges(&x, [0, 1, 6, 7]);
        // the digon 2 ≺ {0,2} ≺ face, 2 ≺ {1,2} ≺ face lies in neither part
        assert_eq!(van_kampen(&x, &a, &b, 0).unwrap().verdict, VanKampenVerdict::EpimorphismOnly);
    }
}
