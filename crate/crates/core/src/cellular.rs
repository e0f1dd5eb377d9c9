//! Cellular posets: incidence numbers, the cellular chain complex, its
//! twisted version over a finite regular covering, and π₂.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::coloring::{standard_coloring_with_budget, Admissibility, Coloring, ColoringError};
use crate::covering::{universal_cover_coloring, CoveringError};
use crate::group::{FgAbelianGroup, FiniteGroup, Group, GroupPresentation, Truth, DEFAULT_BUDGET};
use crate::homology::{simplicial_homology, ChainComplex, ChainComplexError, Homology, HomologyGroup};
use crate::linalg::{kernel_basis, IntMatrix};
use crate::pi1::{cycle_word, pi1_presentation, EdgePath, Pi1Error};
use crate::poset::{Poset, Subdiagram};
use crate::simplicial::order_complex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellularError {
    #[error("NotGraded: element {0} covers an element of non-adjacent degree")]
    NotGraded(String),
    #[error("NotSpherical: the punctured down-set of {element} has reduced homology {found}")]
    NotSpherical { element: String, found: String },
    #[error("NotAdmissible: the coloring is not admissible")]
    NotAdmissible,
    #[error("DifferentPosets: the coloring lives on another poset")]
    DifferentPosets,
    #[error(transparent)]
    Chain(#[from] ChainComplexError),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

/// A chosen generator of `H̃_{p−1}(K(Û_x))` together with an integral
/// cocycle taking the value 1 on it. Simplices are sorted global indices.
#[derive(Clone, Debug, Default)]
pub struct SphereGenerator {
    pub cycle: BTreeMap<Vec<usize>, i64>,
    pub cocycle: BTreeMap<Vec<usize>, i64>,
}

impl SphereGenerator {
    /// Multiple of the generator represented by a cycle.
    pub fn evaluate(&self, chain: &BTreeMap<Vec<usize>, i64>) -> i64 {
        chain.iter().map(|(s, c)| c * self.cocycle.get(s).copied().unwrap_or(0)).sum()
    }
}

/// A cellular poset with its degrees, generators and incidence numbers.
#[derive(Clone, Debug)]
pub struct CellularStructure {
    poset: Poset,
    degree: Vec<usize>,
    generators: Vec<SphereGenerator>,
    /// Position of each element among the elements of its degree.
    cell_index: Vec<usize>,
    cells: Vec<Vec<usize>>,
    incidence: BTreeMap<(usize, usize), i64>,
}

/// Verifies gradedness and the sphere condition, fixes generators and
/// computes every incidence number.
pub fn cellular_structure(x: &Poset) -> Result<CellularStructure, CellularError> {
    let n = x.len();
    let degree: Vec<usize> = (0..n).map(|i| x.height(i)).collect();
    for &(w, y) in x.covers() {
        if degree[y] != degree[w] + 1 {
            return Err(CellularError::NotGraded(x.label(y).into()));
        }
    }
    let mut generators = Vec::with_capacity(n);
    for i in 0..n {
        generators.push(sphere_generator(x, i, degree[i])?);
    }
    let top = degree.iter().copied().max().unwrap_or(0);
    let mut cells = vec![Vec::new(); if n == 0 { 0 } else { top + 1 }];
    let mut cell_index = vec![0; n];
    for i in 0..n {
        cell_index[i] = cells[degree[i]].len();
        cells[degree[i]].push(i);
    }
    let mut incidence = BTreeMap::new();
    for &(w, y) in x.covers() {
        incidence.insert((y, w), incidence_number(&generators[y], &generators[w], w, degree[y]));
    }
    Ok(CellularStructure { poset: x.clone(), degree, generators, cell_index, cells, incidence })
}

/// The connecting map of `Û_x = (Û_x − {w}) ∪ U_w` on chains: the part of
/// the generator through `w`, its boundary with `w` removed, read against
/// the generator of `Û_w`.
fn incidence_number(gx: &SphereGenerator, gw: &SphereGenerator, w: usize, p: usize) -> i64 {
    if p == 1 {
        return gx.cycle.get(&vec![w]).copied().unwrap_or(0);
    }
    let mut face_chain: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (s, &c) in &gx.cycle {
        if let Ok(pos) = s.binary_search(&w) {
            let mut f = s.clone();
            f.remove(pos);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            *face_chain.entry(f).or_insert(0) += sign * c;
        }
    }
    gw.evaluate(&face_chain)
}

fn sphere_generator(x: &Poset, i: usize, p: usize) -> Result<SphereGenerator, CellularError> {
    if p == 0 {
        // H̃₋₁(∅) = Z, generated by the empty simplex
        let mut g = SphereGenerator::default();
        g.cycle.insert(Vec::new(), 1);
        g.cocycle.insert(Vec::new(), 1);
        return Ok(g);
    }
    let below = x.punctured_down_set(i);
    let sub = x.induced(&below);
    let k = order_complex(&sub);
    let h = simplicial_homology(&k);
    let spherical = (0..h.groups().len().max(p)).all(|d| {
        let g = h.group(d);
        if d == p - 1 {
            g.rank == 1 && g.torsion.is_empty()
        } else {
            g.is_zero()
        }
    });
    if !spherical {
        return Err(CellularError::NotSpherical { element: x.label(i).into(), found: format!("{h}") });
    }
    let dim = p - 1;
    let simplices: Vec<Vec<usize>> =
        k.simplices(dim).iter().map(|s| s.iter().map(|&v| below[v]).collect()).collect();
    let down = if dim == 0 {
        IntMatrix::from_rows(&[vec![1; simplices.len()]])
    } else {
        k.boundary_matrix(dim)
    };
    let up = k.boundary_matrix(dim + 1);
    let to_i64 = |v: Vec<Vec<num_bigint::BigInt>>| -> Vec<Vec<i64>> {
        v.into_iter().map(|c| c.iter().map(|e| e.to_i64().expect("small coefficient")).collect()).collect()
    };
    let cycles = to_i64(kernel_basis(&down));
    let cocycles = to_i64(kernel_basis(&up.transpose()));
    let pairing: Vec<Vec<i64>> =
        cycles.iter().map(|z| cocycles.iter().map(|f| dot(z, f)).collect()).collect();
    // the pairing has rank one: P = ±u vᵀ with u, v primitive
    let (i0, j0) = (0..cycles.len())
        .flat_map(|a| (0..cocycles.len()).map(move |b| (a, b)))
        .find(|&(a, b)| pairing[a][b] != 0)
        .expect("a spherical complex has a nonzero pairing");
    let u: Vec<i64> = pairing.iter().map(|r| r[j0]).collect();
    let v: Vec<i64> = pairing[i0].clone();
    let a = bezout(&u);
    let b = bezout(&v);
    let mut z = combine(&cycles, &a);
    let mut f = combine(&cocycles, &b);
    if let Some(&first) = z.iter().find(|&&c| c != 0) {
        if first < 0 {
            z.iter_mut().for_each(|c| *c = -*c);
        }
    }
    let s = dot(&z, &f);
    assert!(s == 1 || s == -1, "generator pairing must be a unit, got {s}");
    if s < 0 {
        f.iter_mut().for_each(|c| *c = -*c);
    }
    let collect = |v: &[i64]| -> BTreeMap<Vec<usize>, i64> {
        simplices.iter().zip(v).filter(|(_, &c)| c != 0).map(|(s, &c)| (s.clone(), c)).collect()
    };
    Ok(SphereGenerator { cycle: collect(&z), cocycle: collect(&f) })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Coefficients `a` with `a·u = gcd(u)` (up to sign normalization by the caller).
fn bezout(u: &[i64]) -> Vec<i64> {
    let mut a = vec![0; u.len()];
    let mut g = 0i64;
    for (i, &x) in u.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if g == 0 {
            g = x;
            a[i] = 1;
            continue;
        }
        let e = g.extended_gcd(&x);
        for c in a.iter_mut().take(i) {
            *c *= e.x;
        }
        a[i] = e.y;
        g = e.gcd;
    }
    if g < 0 {
        a.iter_mut().for_each(|c| *c = -*c);
    }
    a
}

fn combine(basis: &[Vec<i64>], coeffs: &[i64]) -> Vec<i64> {
    let len = basis.first().map_or(0, Vec::len);
    let mut out = vec![0i64; len];
    for (v, &c) in basis.iter().zip(coeffs) {
        for (o, &x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

impl CellularStructure {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn degree(&self, x: usize) -> usize {
        self.degree[x]
    }

    pub fn dimension(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    /// Elements of degree `p`, in index order.
    pub fn cells(&self, p: usize) -> &[usize] {
        self.cells.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn cell_index(&self, x: usize) -> usize {
        self.cell_index[x]
    }

    pub fn generator(&self, x: usize) -> &SphereGenerator {
        &self.generators[x]
    }

    /// `ε(x, w)` for `w ≺ x`; zero for non-covers.
    pub fn incidence(&self, x: usize, w: usize) -> i64 {
        self.incidence.get(&(x, w)).copied().unwrap_or(0)
    }

    pub fn incidence_numbers(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.incidence
    }

    /// `d(x) = Σ_{w≺x} ε(x, w) w`.
    pub fn chain_complex(&self) -> Result<ChainComplex, CellularError> {
        let ranks: Vec<usize> = self.cells.iter().map(Vec::len).collect();
        let mut boundaries = Vec::new();
        for p in 1..ranks.len() {
            let mut m = IntMatrix::zeros(ranks[p - 1], ranks[p]);
            for &x in &self.cells[p] {
                for &w in self.poset.lower_covers(x) {
                    m.set(self.cell_index[w], self.cell_index[x], self.incidence(x, w));
                }
            }
            boundaries.push(m);
        }
        Ok(ChainComplex::new(ranks, boundaries)?)
    }
}

/// Reduced homology of the cellular chain complex.
pub fn cellular_homology(s: &CellularStructure) -> Result<Homology, CellularError> {
    Ok(s.chain_complex()?.reduced_homology())
}

/// `ZG ⊗ C_*(X)` with `d(x) = Σ ε(x, w) c(w, x)⁻¹ w`, expanded over the
/// regular representation: `(x, g)` sits at `cell_index(x)·|G| + g`.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    pub group: FiniteGroup,
    pub complex: ChainComplex,
}

impl TwistedComplex {
    pub fn homology(&self) -> Homology {
        self.complex.homology()
    }

    pub fn basis_index(&self, s: &CellularStructure, x: usize, g: usize) -> usize {
        s.cell_index(x) * self.group.order() + g
    }
}

pub fn twisted_complex(s: &CellularStructure, c: &Coloring<FiniteGroup>) -> Result<TwistedComplex, CellularError> {
    if c.poset() != s.poset() {
        return Err(CellularError::DifferentPosets);
    }
    if c.is_admissible() != Admissibility::Admissible {
        return Err(CellularError::NotAdmissible);
    }
    let g = c.group();
    let n = g.order();
    let x = s.poset();
    let ranks: Vec<usize> = s.cells.iter().map(|v| v.len() * n).collect();
    let mut boundaries = Vec::new();
    for p in 1..ranks.len() {
        let mut m = IntMatrix::zeros(ranks[p - 1], ranks[p]);
        for &y in s.cells(p) {
            for &w in x.lower_covers(y) {
                let eps = s.incidence(y, w);
                let cinv = g.inv(*c.color(x.edge_between(w, y).unwrap()));
                for a in 0..n {
                    m.add_to(s.cell_index(w) * n + g.mul(a, cinv), s.cell_index(y) * n + a, eps);
                }
            }
        }
        boundaries.push(m);
    }
    Ok(TwistedComplex { group: g.clone(), complex: ChainComplex::new(ranks, boundaries)? })
}

/// Outcome of the Hurewicz-type sufficient condition.
#[derive(Clone, Debug)]
pub struct HurewiczCheck {
    pub verdict: Truth,
    /// Edges between elements of heights 1, 2 and 3.
    pub diagram: Subdiagram,
    pub components: Vec<Vec<usize>>,
    /// First component whose loops were not certified trivial.
    pub failed_component: Option<usize>,
}

pub fn hurewicz_condition(x: &Poset) -> Result<HurewiczCheck, CellularError> {
    hurewicz_condition_with_budget(x, DEFAULT_BUDGET)
}

pub fn hurewicz_condition_with_budget(x: &Poset, budget: usize) -> Result<HurewiczCheck, CellularError> {
    let edges = x
        .covers()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| (1..=3).contains(&x.height(a)) && (1..=3).contains(&x.height(b)))
        .map(|(e, _)| e);
    let diagram = Subdiagram::from_edges(x, edges);
    let components = diagram.components();
    let (_, pres) = standard_coloring_with_budget(x, 0, budget)?;
    let group = crate::group::PresentedGroup::new(pres.presentation.clone(), budget);
    let mut verdict = Truth::Yes;
    let mut failed_component = None;
    for (k, comp) in components.iter().enumerate() {
        let part = Subdiagram::induced(x, comp).intersection(&diagram);
        let (sub, verts) = part.as_poset();
        let local = pi1_presentation(&sub, 0, None)?;
        for cycle in local.fundamental_cycles() {
            // carry the loop into X and conjugate it to the base point
            let path: Vec<usize> = cycle.vertices().iter().map(|&v| verts[v]).collect();
            let start = path[0];
            let closed = pres.tree_paths[start]
                .concat(&EdgePath::new(x, path)?)
                .concat(&pres.tree_paths[start].inverse());
            let t = group.is_trivial_word(&cycle_word(&closed, &pres));
            if t != Truth::Yes {
                verdict = Truth::Unknown;
                failed_component.get_or_insert(k);
            }
        }
    }
    Ok(HurewiczCheck { verdict, diagram, components, failed_component })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi2Description {
    FreeZGModuleOfRank(usize),
    AbelianGroup(FgAbelianGroup),
    /// A formal description that could not be put in either normal form.
    Formal(String),
    Unknown(String),
}

impl fmt::Display for Pi2Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi2Description::FreeZGModuleOfRank(r) => write!(f, "free Z[pi1]-module of rank {r}"),
            Pi2Description::AbelianGroup(g) => write!(f, "{g}"),
            Pi2Description::Formal(s) => write!(f, "{s}"),
            Pi2Description::Unknown(s) => write!(f, "unknown ({s})"),
        }
    }
}

fn as_abelian(h: &HomologyGroup) -> FgAbelianGroup {
    FgAbelianGroup::new(h.rank, &h.torsion)
}

/// π₂ of a connected cellular poset: from the universal cover when π₁ is
/// recognized as finite abelian, from the Hurewicz-type theorem otherwise.
pub fn pi2(x: &Poset, base: usize) -> Result<Pi2Description, CellularError> {
    pi2_with_budget(x, base, DEFAULT_BUDGET)
}

pub fn pi2_with_budget(x: &Poset, base: usize, budget: usize) -> Result<Pi2Description, CellularError> {
    let s = cellular_structure(x)?;
    match universal_cover_coloring(x, base, budget) {
        Ok(col) => {
            let h = if col.group().order() == 1 {
                cellular_homology(&s)?.group(2)
            } else {
                twisted_complex(&s, &col)?.homology().group(2)
            };
            return Ok(Pi2Description::AbelianGroup(as_abelian(&h)));
        }
        Err(CoveringError::NotFiniteOrUnknownPi1(_)) => {}
        Err(e) => return Err(e.into()),
    }
    let check = hurewicz_condition_with_budget(x, budget)?;
    if check.verdict == Truth::Yes {
        let h2 = cellular_homology(&s)?.group(2);
        return Ok(Pi2Description::FreeZGModuleOfRank(h2.rank));
    }
    Ok(Pi2Description::Unknown(format!(
        "fundamental group not recognized as finite abelian; loops of component {} of the height-1..3 diagram not certified trivial",
        check.failed_component.unwrap_or(0)
    )))
}

/// Whether `α = Σ n·g·x` over degree-2 cells is a cycle of the twisted
/// complex, i.e. `Σ_{x≻w} ε(x, w) n^x_{h·c(w,x)} = 0` for every degree-1 `w`
/// and every `h`. Group elements are compared with the group's own equality.
pub fn pi2_membership<G: Group>(s: &CellularStructure, c: &Coloring<G>, alpha: &[(usize, G::Element, i64)]) -> Truth {
    let x = s.poset();
    let g = c.group();
    let mut buckets: Vec<(usize, G::Element, i64)> = Vec::new();
    let mut undecided = false;
    for (cell, elem, n) in alpha {
        for &w in x.lower_covers(*cell) {
            let eps = s.incidence(*cell, w);
            if eps == 0 || *n == 0 {
                continue;
            }
            let at = g.op(elem, &g.inverse(c.color(x.edge_between(w, *cell).unwrap())));
            let mut placed = false;
            for b in buckets.iter_mut().filter(|b| b.0 == w) {
                match g.equals(&b.1, &at) {
                    Truth::Yes => {
                        b.2 += eps * n;
                        placed = true;
                        break;
                    }
                    Truth::Unknown => undecided = true,
                    Truth::No => {}
                }
            }
            if !placed {
                buckets.push((w, at, eps * n));
            }
        }
    }
    if buckets.iter().all(|b| b.2 == 0) {
        Truth::Yes
    } else if undecided {
        Truth::Unknown
    } else {
        Truth::No
    }
}

/// `π₂(X ∨ Y) = π₂(X) ⊕ Z[π₁(X)] ⊗ π₂(Y)` for simply-connected `Y`.
pub fn wedge_pi2(pi2_x: &Pi2Description, pi1_x: &GroupPresentation, pi2_y: &FgAbelianGroup) -> Pi2Description {
    if pi2_y.is_trivial() {
        return pi2_x.clone();
    }
    let verdict = pi1_x.simplify(DEFAULT_BUDGET).verdict;
    match (pi2_x, verdict.finite_order()) {
        (Pi2Description::AbelianGroup(a), Some(n)) if pi2_y.torsion().is_empty() => {
            Pi2Description::AbelianGroup(FgAbelianGroup::new(a.rank() + n as usize * pi2_y.rank(), a.torsion()))
        }
        (Pi2Description::FreeZGModuleOfRank(r), _) if pi2_y.torsion().is_empty() => {
            Pi2Description::FreeZGModuleOfRank(r + pi2_y.rank())
        }
        _ => Pi2Description::Formal(format!("({pi2_x}) + Z[{pi1_x}] (x) ({pi2_y})")),
    }
}
