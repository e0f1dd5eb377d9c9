//! Finite posets stored as Hasse diagrams.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("CycleError: the relation through `{0}` is not antisymmetric")]
    Cycle(String),
    #[error("UnknownLabel: `{0}`")]
    UnknownLabel(String),
    #[error("DuplicateLabel: `{0}`")]
    DuplicateLabel(String),
    #[error("NotMonotone: {0} ≺ {1} is sent to an incomparable or reversed pair")]
    NotMonotone(String, String),
    #[error("InvalidSubdiagram: {0}")]
    InvalidSubdiagram(String),
}

#[derive(Debug)]
struct PosetData {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    /// Covers `(lower, upper)` sorted lexicographically; position is the edge index.
    edges: Vec<(usize, usize)>,
    edge_index: BTreeMap<(usize, usize), usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    height: Vec<usize>,
    /// A linear extension: every element appears after everything below it.
    linear: Vec<usize>,
}

/// A finite poset. Cloning is cheap; the data is shared and immutable.
#[derive(Clone, Debug)]
pub struct Poset(Arc<PosetData>);

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.labels == other.0.labels && self.0.edges == other.0.edges)
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from labels and relation pairs `(a, b)` meaning `a < b`.
    /// The pairs may contain redundant (transitive) relations; they are reduced.
    pub fn from_covers<L, P>(labels: &[L], pairs: &[(P, P)]) -> Result<Poset, PosetError>
    where
        L: AsRef<str>,
        P: AsRef<str>,
    {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| PosetError::UnknownLabel(s.to_string()));
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx_pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Poset::from_index_pairs(labels, &idx_pairs)
    }

    /// Same as [`Poset::from_covers`] with pairs given as indices into `labels`.
    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let n = labels.len();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let mut preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in pairs {
            assert!(a < n && b < n, "pair index out of range");
            if a == b {
                return Err(PosetError::Cycle(labels[a].clone()));
            }
            preds[b].insert(a);
        }
        // Kahn's algorithm, smallest index first for determinism
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for (b, ps) in preds.iter().enumerate() {
            indeg[b] = ps.len();
            for &a in ps {
                succs[a].push(b);
            }
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut linear = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            linear.push(x);
            for &y in &succs[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if linear.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(PosetError::Cycle(labels[stuck].clone()));
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for &x in &linear {
            let mut d = FixedBitSet::with_capacity(n);
            d.insert(x);
            for &p in &preds[x] {
                d.union_with(&down[p]);
            }
            down[x] = d;
        }
        let mut edges = Vec::new();
        for x in 0..n {
            for &p in &preds[x] {
                let redundant = preds[x].iter().any(|&q| q != p && down[q].contains(p));
                if !redundant {
                    edges.push((p, x));
                }
            }
        }
        edges.sort_unstable();
        Ok(Poset::assemble(labels, index, edges, down, linear))
    }

    fn assemble(
        labels: Vec<String>,
        index: BTreeMap<String, usize>,
        edges: Vec<(usize, usize)>,
        down: Vec<FixedBitSet>,
        linear: Vec<usize>,
    ) -> Poset {
        let n = labels.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        let mut edge_index = BTreeMap::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            upper[a].push(b);
            lower[b].push(a);
            edge_index.insert((a, b), i);
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, d) in down.iter().enumerate() {
            for y in d.ones() {
                up[y].insert(x);
            }
        }
        let mut height = vec![0usize; n];
        for &x in &linear {
            height[x] = lower[x].iter().map(|&p| height[p] + 1).max().unwrap_or(0);
        }
        Poset(Arc::new(PosetData { labels, index, edges, edge_index, upper, lower, down, up, height, linear }))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.0.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.0.index.get(label).copied().ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
    }

    /// Hasse edges `(lower, upper)`; an edge's position is its index.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.0.edges
    }

    pub fn edge_count(&self) -> usize {
        self.0.edges.len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.0.edges[e]
    }

    /// Index of the edge joining `a` and `b` in either orientation.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.0.edge_index.get(&(a, b)).or_else(|| self.0.edge_index.get(&(b, a))).copied()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.0.edge_index.contains_key(&(a, b))
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.0.upper[x]
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.0.lower[x]
    }

    /// Hasse neighbours of `x` (lower covers first).
    pub fn neighbours(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.0.lower[x].iter().chain(self.0.upper[x].iter()).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.0.down[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `U_x`, the elements below or equal to `x`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.0.down[x]
    }

    /// `F_x`, the elements above or equal to `x`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.0.up[x]
    }

    pub fn punctured_down_set(&self, x: usize) -> Vec<usize> {
        self.0.down[x].ones().filter(|&y| y != x).collect()
    }

    pub fn punctured_up_set(&self, x: usize) -> Vec<usize> {
        self.0.up[x].ones().filter(|&y| y != x).collect()
    }

    pub fn height(&self, x: usize) -> usize {
        self.0.height[x]
    }

    /// Length of the longest chain; 0 for the empty poset.
    pub fn poset_height(&self) -> usize {
        self.0.height.iter().copied().max().unwrap_or(0)
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.0.linear
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.0.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.0.upper[x].is_empty()).collect()
    }

    /// Subposet on `elements` with the restricted order; labels are kept and
    /// elements keep the relative order given.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let labels = elements.iter().map(|&x| self.0.labels[x].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                if self.lt(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Poset::from_index_pairs(labels, &pairs).expect("a subposet is a poset")
    }

    /// Elements that cover exactly one element or are covered by exactly one.
    pub fn beat_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.0.lower[x].len() == 1 || self.0.upper[x].len() == 1)
            .collect()
    }

    /// Removes beat points (always the first listed one) until none remain.
    pub fn core(&self) -> Poset {
        let mut current = self.clone();
        loop {
            let beats = current.beat_points();
            let Some(&first) = beats.first() else {
                return current;
            };
            let keep: Vec<usize> = (0..current.len()).filter(|&x| x != first).collect();
            current = current.induced(&keep);
        }
    }

    pub fn opposite(&self) -> Poset {
        let pairs: Vec<(usize, usize)> = self.0.edges.iter().map(|&(a, b)| (b, a)).collect();
        Poset::from_index_pairs(self.0.labels.clone(), &pairs).expect("opposite of a poset")
    }

    /// Componentwise order on `X × Y`; element `(a, b)` has index `a·|Y| + b`
    /// and label `(la,lb)`.
    pub fn product(&self, other: &Poset) -> Poset {
        let m = other.len();
        let mut labels = Vec::with_capacity(self.len() * m);
        for a in self.labels() {
            for b in other.labels() {
                labels.push(format!("({a},{b})"));
            }
        }
        let mut pairs = Vec::new();
        for a in 0..self.len() {
            for b in 0..m {
                for &a2 in self.upper_covers(a) {
                    pairs.push((a * m + b, a2 * m + b));
                }
                for &b2 in other.upper_covers(b) {
                    pairs.push((a * m + b, a * m + b2));
                }
            }
        }
        Poset::from_index_pairs(labels, &pairs).expect("product of posets")
    }

    /// Disjoint union; elements of `other` are shifted by `self.len()` and
    /// relabelled when their labels collide.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        self.glue(other, None)
    }

    /// Wedge obtained by identifying `x` in `self` with `y` in `other`; the
    /// glued point keeps its label from `self`. Returns the poset and the index
    /// of each element of `other`.
    pub fn wedge(&self, x: usize, other: &Poset, y: usize) -> (Poset, Vec<usize>) {
        let p = self.glue(other, Some((x, y)));
        let n = self.len();
        let map = (0..other.len())
            .map(|b| match b.cmp(&y) {
                core::cmp::Ordering::Equal => x,
                core::cmp::Ordering::Less => n + b,
                core::cmp::Ordering::Greater => n + b - 1,
            })
            .collect();
        (p, map)
    }

    fn glue(&self, other: &Poset, identify: Option<(usize, usize)>) -> Poset {
        let mut labels: Vec<String> = self.0.labels.clone();
        let mut used: BTreeSet<String> = labels.iter().cloned().collect();
        let mut map = vec![0usize; other.len()];
        for b in 0..other.len() {
            if let Some((x, y)) = identify {
                if b == y {
                    map[b] = x;
                    continue;
                }
            }
            let mut l = other.label(b).to_string();
            while used.contains(&l) {
                l.push('\'');
            }
            used.insert(l.clone());
            map[b] = labels.len();
            labels.push(l);
        }
        let mut pairs: Vec<(usize, usize)> = self.0.edges.clone();
        pairs.extend(other.covers().iter().map(|&(a, b)| (map[a], map[b])));
        Poset::from_index_pairs(labels, &pairs).expect("gluing along a point keeps a poset")
    }

    /// Connected components of the Hasse diagram, each sorted, ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbours(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for l in self.labels() {
            s.push_str(&format!("  \"{}\";\n", l.replace('"', "\\\"")));
        }
        for &(a, b) in self.covers() {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.label(a).replace('"', "\\\""),
                self.label(b).replace('"', "\\\"")
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// A subgraph of a Hasse diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdiagram {
    poset: Poset,
    vertices: FixedBitSet,
    edges: FixedBitSet,
}

impl Subdiagram {
    pub fn new(poset: &Poset, vertices: FixedBitSet, edges: FixedBitSet) -> Result<Self, PosetError> {
        if vertices.len() != poset.len() || edges.len() != poset.edge_count() {
            return Err(PosetError::InvalidSubdiagram("mask sizes do not match the poset".into()));
        }
        for e in edges.ones() {
            let (a, b) = poset.edge(e);
            if !vertices.contains(a) || !vertices.contains(b) {
                return Err(PosetError::InvalidSubdiagram(format!(
                    "edge {}≺{} has an endpoint outside the vertex set",
                    poset.label(a),
                    poset.label(b)
                )));
            }
        }
        Ok(Subdiagram { poset: poset.clone(), vertices, edges })
    }

    /// The subdiagram spanned by a set of edges and their endpoints.
    pub fn from_edges(poset: &Poset, edges: impl IntoIterator<Item = usize>) -> Self {
        let mut v = FixedBitSet::with_capacity(poset.len());
        let mut e = FixedBitSet::with_capacity(poset.edge_count());
        for i in edges {
            let (a, b) = poset.edge(i);
            v.insert(a);
            v.insert(b);
            e.insert(i);
        }
        Subdiagram { poset: poset.clone(), vertices: v, edges: e }
    }

    /// The whole Hasse diagram.
    pub fn full(poset: &Poset) -> Self {
        let mut v = FixedBitSet::with_capacity(poset.len());
        v.insert_range(..);
        let mut e = FixedBitSet::with_capacity(poset.edge_count());
        e.insert_range(..);
        Subdiagram { poset: poset.clone(), vertices: v, edges: e }
    }

    /// All edges between elements of `elements`.
    pub fn induced(poset: &Poset, elements: &[usize]) -> Self {
        let mut v = FixedBitSet::with_capacity(poset.len());
        for &x in elements {
            v.insert(x);
        }
        let mut e = FixedBitSet::with_capacity(poset.edge_count());
        for (i, &(a, b)) in poset.covers().iter().enumerate() {
            if v.contains(a) && v.contains(b) {
                e.insert(i);
            }
        }
        Subdiagram { poset: poset.clone(), vertices: v, edges: e }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn vertices(&self) -> &FixedBitSet {
        &self.vertices
    }

    pub fn edges(&self) -> &FixedBitSet {
        &self.edges
    }

    pub fn contains_vertex(&self, x: usize) -> bool {
        self.vertices.contains(x)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.contains(e)
    }

    pub fn intersection(&self, other: &Subdiagram) -> Subdiagram {
        let mut v = self.vertices.clone();
        v.intersect_with(&other.vertices);
        let mut e = self.edges.clone();
        e.intersect_with(&other.edges);
        Subdiagram { poset: self.poset.clone(), vertices: v, edges: e }
    }

    /// The poset whose Hasse diagram is this subdiagram, together with the
    /// parent index of each of its elements.
    pub fn as_poset(&self) -> (Poset, Vec<usize>) {
        let verts: Vec<usize> = self.vertices.ones().collect();
        let mut local = BTreeMap::new();
        for (i, &x) in verts.iter().enumerate() {
            local.insert(x, i);
        }
        let labels = verts.iter().map(|&x| self.poset.label(x).to_string()).collect();
        let pairs: Vec<(usize, usize)> = self
            .edges
            .ones()
            .map(|e| {
                let (a, b) = self.poset.edge(e);
                (local[&a], local[&b])
            })
            .collect();
        (Poset::from_index_pairs(labels, &pairs).expect("subdiagram of a poset"), verts)
    }

    /// Connected components as vertex lists (isolated vertices included).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (p, verts) = self.as_poset();
        p.components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| verts[i]).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// An order-preserving map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Poset,
    target: Poset,
    images: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: &Poset, target: &Poset, images: Vec<usize>) -> Result<Self, PosetError> {
        assert_eq!(images.len(), source.len(), "map must be total");
        for &(a, b) in source.covers() {
            if !target.leq(images[a], images[b]) {
                return Err(PosetError::NotMonotone(source.label(a).into(), source.label(b).into()));
            }
        }
        Ok(MonotoneMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(p: &Poset) -> Self {
        MonotoneMap { source: p.clone(), target: p.clone(), images: (0..p.len()).collect() }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(self.target, other.source);
        MonotoneMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }
}

/// The non-Hausdorff mapping cylinder of `f: X → Y`: the disjoint union with
/// `y < x` whenever `y ≤ f(x)`. Source elements come first, labelled `src:…`,
/// then target elements labelled `tgt:…`. Returns the cylinder and its
/// retraction onto the target.
pub fn mapping_cylinder(f: &MonotoneMap) -> (Poset, MonotoneMap) {
    let n = f.source.len();
    let mut labels: Vec<String> = f.source.labels().iter().map(|l| format!("src:{l}")).collect();
    labels.extend(f.target.labels().iter().map(|l| format!("tgt:{l}")));
    let mut pairs: Vec<(usize, usize)> = f.source.covers().to_vec();
    pairs.extend(f.target.covers().iter().map(|&(a, b)| (n + a, n + b)));
    pairs.extend((0..n).map(|x| (n + f.apply(x), x)));
    let cyl = Poset::from_index_pairs(labels, &pairs).expect("mapping cylinder is a poset");
    let images = (0..n).map(|x| f.apply(x)).chain(0..f.target.len()).collect();
    let r = MonotoneMap::new(&cyl, &f.target, images).expect("retraction is monotone");
    (cyl, r)
}

/// Frequently used small posets.
pub mod models {
    use super::*;

    fn numbered(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// The chain `0 < 1 < … < n`.
    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Poset::from_index_pairs(numbered(n + 1), &pairs).unwrap()
    }

    /// The fence `I_n = 0 < 1 > 2 < 3 …` with `n + 1` points.
    pub fn fence(n: usize) -> Poset {
        let pairs: Vec<(usize, usize)> =
            (0..n).map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) }).collect();
        Poset::from_index_pairs(numbered(n + 1), &pairs).unwrap()
    }

    /// The cyclic fence `C_n`. For even `n` this is `0<1>2<…<n−1>0`; for odd
    /// `n ≥ 5` it is `0<1>2<…>n−1<0`, with `0` above `n−1`.
    pub fn fence_cycle(n: usize) -> Poset {
        assert!(n >= 4, "cyclic fences need at least four points");
        let mut pairs: Vec<(usize, usize)> =
            (0..n - 1).map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) }).collect();
        if n % 2 == 0 {
            pairs.push((0, n - 1));
        } else {
            pairs.push((n - 1, 0));
        }
        Poset::from_index_pairs(numbered(n), &pairs).unwrap()
    }

    /// The minimal finite model of the `d`-sphere: two points at each height,
    /// each above both points of the previous height. Labels are `a{k}`, `b{k}`.
    pub fn sphere(d: usize) -> Poset {
        let mut labels = Vec::new();
        for k in 0..=d {
            labels.push(format!("a{k}"));
            labels.push(format!("b{k}"));
        }
        let mut pairs = Vec::new();
        for k in 1..=d {
            for lo in [2 * k - 2, 2 * k - 1] {
                for hi in [2 * k, 2 * k + 1] {
                    pairs.push((lo, hi));
                }
            }
        }
        Poset::from_index_pairs(labels, &pairs).unwrap()
    }

    pub fn point() -> Poset {
        Poset::from_index_pairs(vec!["*".into()], &[]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::models::*;
    use super::*;

    fn set(p: &Poset, bits: &FixedBitSet) -> Vec<String> {
        bits.ones().map(|x| p.label(x).to_string()).collect()
    }

    #[test]
    fn fence_from_labels() {
        let p = Poset::from_covers(&["0", "1", "2", "3"], &[("0", "1"), ("2", "1"), ("2", "3")]).unwrap();
        assert_eq!(p, fence(3));
        assert_eq!(p.poset_height(), 1);
    }

    #[test]
    fn singleton_and_cycle() {
        let p = Poset::from_covers::<_, &str>(&["a"], &[]).unwrap();
        assert_eq!(p.height(0), 0);
        let err = Poset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(_)));
        let err = Poset::from_covers(&["a"], &[("a", "z")]).unwrap_err();
        assert_eq!(err, PosetError::UnknownLabel("z".into()));
        assert!(matches!(
            Poset::from_covers(&["a", "a"], &[] as &[(&str, &str)]),
            Err(PosetError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn transitive_pairs_are_reduced() {
        let p = Poset::from_covers(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        let again = Poset::from_index_pairs(p.labels().to_vec(), p.covers()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn down_sets_of_fence() {
        // 0 < 1 > 2: both ends sit below the middle point
        let p = fence(2);
        assert_eq!(set(&p, p.down_set(1)), ["0", "1", "2"]);
        assert_eq!(set(&p, p.down_set(2)), ["2"]);
        assert!(p.punctured_down_set(0).is_empty());
        assert_eq!(set(&p, p.up_set(0)), ["0", "1"]);
    }

    #[test]
    fn punctured_top_of_sphere_is_circle() {
        let s = sphere(2);
        let top = s.index_of("a2").unwrap();
        let u = s.induced(&s.punctured_down_set(top));
        assert_eq!(u.len(), 4);
        assert_eq!(u.edge_count(), 4);
        assert!(u.beat_points().is_empty());
    }

    #[test]
    fn fences_are_contractible() {
        for n in 0..8 {
            assert_eq!(fence(n).core().len(), 1, "I_{n}");
        }
        let circle = sphere(1);
        assert!(circle.beat_points().is_empty());
        assert_eq!(circle.core(), circle);
        assert_eq!(point().core(), point());
    }

    #[test]
    fn product_of_intervals_is_a_square() {
        let sq = fence(1).product(&fence(1));
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.edge_count(), 4);
        let lo = sq.index_of("(0,0)").unwrap();
        let hi = sq.index_of("(1,1)").unwrap();
        assert!(sq.lt(lo, hi));
        assert_eq!(sq.lower_covers(hi).len(), 2);
        assert_eq!(fence(3).product(&point()).edge_count(), 3);
    }

    #[test]
    fn opposite_is_an_involution() {
        let p = fence(4);
        let op = p.opposite();
        assert_eq!(op.opposite(), p);
        for x in 0..p.len() {
            assert_eq!(op.down_set(x), p.up_set(x));
        }
    }

    #[test]
    fn cylinders() {
        let pt = point();
        let (cyl, r) = mapping_cylinder(&MonotoneMap::identity(&pt));
        assert_eq!(cyl.len(), 2);
        assert_eq!(cyl.edge_count(), 1);
        assert!(r.is_surjective());

        let anti = Poset::from_covers::<_, &str>(&["p", "q"], &[]).unwrap();
        let f = MonotoneMap::new(&anti, &pt, vec![0, 0]).unwrap();
        let (cyl, r) = mapping_cylinder(&f);
        assert_eq!(cyl.minimal_elements(), vec![2]);
        assert_eq!(cyl.maximal_elements(), vec![0, 1]);
        // r restricted to the target is the identity
        assert_eq!(r.apply(2), 0);

        let g = MonotoneMap::new(&fence(3), &chain(2), vec![0, 2, 1, 1]).unwrap();
        let (cyl, _) = mapping_cylinder(&g);
        assert_eq!(cyl.core().len(), 1);
    }

    #[test]
    fn non_monotone_map_rejected() {
        let c = chain(1);
        assert!(MonotoneMap::new(&c, &c, vec![1, 0]).is_err());
    }

    #[test]
    fn fence_cycles() {
        let c4 = fence_cycle(4);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.beat_points().is_empty());
        let c5 = fence_cycle(5);
        assert_eq!(c5.poset_height(), 2);
        assert!(c5.is_connected());
    }

    #[test]
    fn wedge_and_components() {
        let (w, map) = sphere(1).wedge(0, &sphere(1), 0);
        assert_eq!(w.len(), 7);
        assert_eq!(map[0], 0);
        assert!(w.is_connected());
        let u = sphere(1).disjoint_union(&point());
        assert_eq!(u.components().len(), 2);
    }

    #[test]
    fn subdiagram_roundtrip() {
        let s = sphere(1);
        let d = Subdiagram::from_edges(&s, [0, 1, 2]);
        let (p, verts) = d.as_poset();
        assert_eq!(verts.len(), 4);
        assert_eq!(p.edge_count(), 3);
        assert!(d.is_connected());
        assert!(Subdiagram::new(&s, FixedBitSet::with_capacity(4), {
            let mut e = FixedBitSet::with_capacity(4);
            e.insert(0);
            e
        })
        .is_err());
    }
}
