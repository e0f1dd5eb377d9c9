//! Red/blue edge colorings of rectangular, cylindrical and toric boards,
//! identified with `Z₂`-colorings of the posets `I_n×I_m`, `C_n×I_m` and `C_n×C_m`.
//! Move-equivalence is decided by linear algebra over `F₂`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::Coloring;
use crate::group::FiniteGroup;
use crate::linalg::F2Matrix;
use crate::poset::models::{fence, fence_cycle};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoardError {
    #[error("DimensionTooSmall: {kind} board {n}x{m}")]
    DimensionTooSmall { kind: BoardKind, n: usize, m: usize },
    #[error("WrongLength: expected {expected} edge colors, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("InvalidColoring: square {0} has an odd number of red edges")]
    InvalidColoring(usize),
    #[error("BadColorChar: {0:?} is neither 'r' nor 'b'")]
    BadColorChar(char),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoardKind {
    Rectangle,
    Cylinder,
    Torus,
}

impl fmt::Display for BoardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoardKind::Rectangle => "rectangle",
            BoardKind::Cylinder => "cylinder",
            BoardKind::Torus => "torus",
        })
    }
}

impl core::str::FromStr for BoardKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rectangle" => Ok(BoardKind::Rectangle),
            "cylinder" => Ok(BoardKind::Cylinder),
            "torus" => Ok(BoardKind::Torus),
            _ => Err(alloc::format!("unknown board kind {s:?}")),
        }
    }
}

/// A board of `n×m` squares. The first dimension is the cyclic one for
/// cylinders. Edges are the Hasse edges of the poset, in the poset's order.
#[derive(Clone, Debug)]
pub struct Board {
    kind: BoardKind,
    n: usize,
    m: usize,
    poset: Poset,
    /// Grid coordinates of each poset element.
    coords: Vec<(usize, usize)>,
    /// Bottom, right, top, left edges of each square.
    squares: Vec<[usize; 4]>,
    incident: Vec<Vec<usize>>,
}

pub fn board(kind: BoardKind, n: usize, m: usize) -> Result<Board, BoardError> {
    let small = match kind {
        BoardKind::Rectangle => n < 1 || m < 1,
        BoardKind::Cylinder => n < 4 || m < 1,
        BoardKind::Torus => n < 4 || m < 4,
    };
    if small {
        return Err(BoardError::DimensionTooSmall { kind, n, m });
    }
    let (rows, cols) = match kind {
        BoardKind::Rectangle => (fence(n), fence(m)),
        BoardKind::Cylinder => (fence_cycle(n), fence(m)),
        BoardKind::Torus => (fence_cycle(n), fence_cycle(m)),
    };
    let (p, q) = (rows.len(), cols.len());
    let poset = rows.product(&cols);
    let coords = (0..p * q).map(|x| (x / q, x % q)).collect();
    let at = |i: usize, j: usize| (i % p) * q + j % q;
    let edge = |a: usize, b: usize| poset.edge_between(a, b).expect("adjacent board vertices are covers");
    let mut squares = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let (a, b, c, d) = (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
            squares.push([edge(a, b), edge(b, c), edge(d, c), edge(a, d)]);
        }
    }
    let mut incident = vec![Vec::new(); poset.len()];
    for (e, &(a, b)) in poset.covers().iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    Ok(Board { kind, n, m, poset, coords, squares, incident })
}

impl Board {
    pub fn kind(&self) -> BoardKind {
        self.kind
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        self.coords[v]
    }

    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.poset.len()
    }

    pub fn edge_count(&self) -> usize {
        self.poset.edge_count()
    }

    /// `Z₂`-coloring of the board's poset: red is the nontrivial element.
    pub fn as_poset_coloring(&self, col: &BoardColoring) -> Coloring<FiniteGroup> {
        let colors = col.red.iter().map(|&r| usize::from(r)).collect();
        Coloring::new(&self.poset, &FiniteGroup::cyclic(2), colors).expect("one color per edge")
    }

    pub fn from_poset_coloring(&self, c: &Coloring<FiniteGroup>) -> BoardColoring {
        BoardColoring { red: c.colors().iter().map(|&g| g != 0).collect() }
    }

    fn check_length(&self, col: &BoardColoring) -> Result<(), BoardError> {
        if col.red.len() != self.edge_count() {
            return Err(BoardError::WrongLength { expected: self.edge_count(), got: col.red.len() });
        }
        Ok(())
    }
}

/// Red (`true`) or blue (`false`) for every board edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoardColoring {
    pub red: Vec<bool>,
}

impl BoardColoring {
    pub fn all_blue(b: &Board) -> Self {
        BoardColoring { red: vec![false; b.edge_count()] }
    }

    /// One `r` or `b` per edge; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self, BoardError> {
        let red = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'r' => Ok(true),
                'b' => Ok(false),
                _ => Err(BoardError::BadColorChar(c)),
            })
            .collect::<Result<_, _>>()?;
        Ok(BoardColoring { red })
    }
}

impl fmt::Display for BoardColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.red {
            f.write_str(if r { "r" } else { "b" })?;
        }
        Ok(())
    }
}

/// Every square has an even number of red edges (so 0, 2 or 4 blue ones).
pub fn is_valid(b: &Board, col: &BoardColoring) -> Result<bool, BoardError> {
    b.check_length(col)?;
    Ok(first_odd_square(b, col).is_none())
}

fn first_odd_square(b: &Board, col: &BoardColoring) -> Option<usize> {
    b.squares.iter().position(|sq| sq.iter().filter(|&&e| col.red[e]).count() % 2 == 1)
}

/// Flips every edge incident to `vertex`.
pub fn apply_move(b: &Board, col: &BoardColoring, vertex: usize) -> BoardColoring {
    let mut out = col.clone();
    for &e in &b.incident[vertex] {
        out.red[e] = !out.red[e];
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveEquivalence {
    /// Moving at each of these vertices once turns the first coloring into the second.
    Yes(Vec<usize>),
    No,
}

/// Solves `δx = col₁ + col₂` over `F₂`, where `δ` sends a vertex to its incident edges.
pub fn moves_equivalent(b: &Board, c1: &BoardColoring, c2: &BoardColoring) -> Result<MoveEquivalence, BoardError> {
    for c in [c1, c2] {
        b.check_length(c)?;
        if let Some(sq) = first_odd_square(b, c) {
            return Err(BoardError::InvalidColoring(sq));
        }
    }
    let mut delta = F2Matrix::zeros(b.edge_count(), b.vertex_count());
    let mut rhs = Vec::with_capacity(b.edge_count());
    for (e, &(x, y)) in b.poset.covers().iter().enumerate() {
        delta.set(e, x, true);
        delta.set(e, y, true);
        rhs.push(c1.red[e] != c2.red[e]);
    }
    Ok(match delta.solve(&rhs) {
        Some(x) => MoveEquivalence::Yes((0..x.len()).filter(|&v| x[v]).collect()),
        None => MoveEquivalence::No,
    })
}

/// Number of move classes of valid colorings: `2^(dim Z − dim B)` with `Z`
/// the valid colorings and `B` the colorings reachable from all-blue.
pub fn count_classes(b: &Board) -> u64 {
    let (e, v) = (b.edge_count(), b.vertex_count());
    let mut squares = F2Matrix::zeros(b.squares.len(), e);
    for (s, sq) in b.squares.iter().enumerate() {
        for &x in sq {
            squares.flip(s, x);
        }
    }
    let mut moves = F2Matrix::zeros(e, v);
    for (f, &(x, y)) in b.poset.covers().iter().enumerate() {
        moves.set(f, x, true);
        moves.set(f, y, true);
    }
    let cocycles = e - squares.rank();
    1u64 << (cocycles - moves.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{are_equivalent, EquivalenceVerdict};
    use alloc::collections::{BTreeSet, VecDeque};
    use std::collections::HashMap;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// All valid colorings, by backtracking over edges with square pruning.
    fn valid_colorings(b: &Board) -> Vec<u64> {
        let e = b.edge_count();
        let mut last_edge = vec![0; b.squares().len()];
        for (s, sq) in b.squares().iter().enumerate() {
            last_edge[s] = *sq.iter().max().unwrap();
        }
        let mut out = Vec::new();
        fn go(b: &Board, i: usize, mask: u64, last_edge: &[usize], out: &mut Vec<u64>) {
            if i == b.edge_count() {
                out.push(mask);
                return;
            }
            for bit in [0u64, 1] {
                let m = mask | bit << i;
                let ok = b.squares().iter().enumerate().all(|(s, sq)| {
                    last_edge[s] != i || sq.iter().filter(|&&x| m >> x & 1 == 1).count() % 2 == 0
                });
                if ok {
                    go(b, i + 1, m, last_edge, out);
                }
            }
        }
        assert!(e <= 64);
        go(b, 0, 0, &last_edge, &mut out);
        out
    }

    fn move_mask(b: &Board, v: usize) -> u64 {
        b.incident_edges(v).iter().fold(0, |m, &e| m | 1 << e)
    }

    /// Class label of every valid coloring, by breadth-first search over moves.
    fn brute_classes(b: &Board) -> HashMap<u64, usize> {
        let mut class = HashMap::new();
        let mut k = 0;
        for start in valid_colorings(b) {
            if class.contains_key(&start) {
                continue;
            }
            class.insert(start, k);
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                for v in 0..b.vertex_count() {
                    let d = c ^ move_mask(b, v);
                    if let std::collections::hash_map::Entry::Vacant(slot) = class.entry(d) {
                        slot.insert(k);
                        queue.push_back(d);
                    }
                }
            }
            k += 1;
        }
        class
    }

    fn from_mask(b: &Board, m: u64) -> BoardColoring {
        BoardColoring { red: (0..b.edge_count()).map(|e| m >> e & 1 == 1).collect() }
    }

    #[test]
    fn shapes() {
        let r = board(BoardKind::Rectangle, 1, 1).unwrap();
        assert_eq!((r.squares().len(), r.edge_count(), r.vertex_count()), (1, 4, 4));
        let t = board(BoardKind::Torus, 4, 4).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count(), t.squares().len()), (16, 32, 16));
        for sq in t.squares() {
            assert_eq!(sq.iter().collect::<BTreeSet<_>>().len(), 4);
        }
        assert!(matches!(board(BoardKind::Cylinder, 3, 2), Err(BoardError::DimensionTooSmall { .. })));
        assert!(matches!(board(BoardKind::Rectangle, 0, 2), Err(BoardError::DimensionTooSmall { .. })));
    }

    #[test]
    fn validity_and_moves() {
        let b = board(BoardKind::Rectangle, 1, 1).unwrap();
        let blue = BoardColoring::all_blue(&b);
        assert!(is_valid(&b, &blue).unwrap());
        let mut one = blue.clone();
        one.red[0] = true;
        assert!(!is_valid(&b, &one).unwrap());
        let c = board(BoardKind::Cylinder, 4, 2).unwrap();
        let col = apply_move(&c, &BoardColoring::all_blue(&c), 3);
        assert_eq!(apply_move(&c, &col, 3), BoardColoring::all_blue(&c));
        assert_eq!(apply_move(&c, &apply_move(&c, &col, 1), 5), apply_move(&c, &apply_move(&c, &col, 5), 1));
        assert_eq!(moves_equivalent(&c, &BoardColoring::all_blue(&c), &col).unwrap(), MoveEquivalence::Yes(vec![3]));
    }

    #[test]
    fn moves_preserve_validity() {
        for (kind, n, m) in [(BoardKind::Rectangle, 2, 2), (BoardKind::Cylinder, 4, 1), (BoardKind::Cylinder, 5, 1)] {
            let b = board(kind, n, m).unwrap();
            for c in valid_colorings(&b) {
                for v in 0..b.vertex_count() {
                    assert!(is_valid(&b, &from_mask(&b, c ^ move_mask(&b, v))).unwrap());
                }
            }
        }
    }

    #[test]
    fn validity_is_admissibility() {
        for (kind, n, m) in [
            (BoardKind::Rectangle, 1, 1),
            (BoardKind::Rectangle, 2, 2),
            (BoardKind::Rectangle, 3, 2),
            (BoardKind::Cylinder, 4, 1),
            (BoardKind::Cylinder, 4, 2),
            (BoardKind::Cylinder, 5, 1),
        ] {
            let b = board(kind, n, m).unwrap();
            // exhaustive on small boards; on larger ones every valid coloring plus random ones
            let masks: Vec<u64> = if b.edge_count() <= 16 {
                (0..1u64 << b.edge_count()).collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(11);
                let mut v = valid_colorings(&b);
                v.extend((0..4096).map(|_| rng.gen_range(0..1u64 << b.edge_count())));
                v
            };
            for mask in masks {
                let col = from_mask(&b, mask);
                let adm = b.as_poset_coloring(&col).is_admissible().truth().is_yes();
                assert_eq!(is_valid(&b, &col).unwrap(), adm, "{kind} {n}x{m} {col}");
            }
        }
    }

    #[test]
    fn class_counts_match_brute_force() {
        for (kind, n, m, expected) in [
            (BoardKind::Rectangle, 1, 1, 1),
            (BoardKind::Rectangle, 2, 3, 1),
            (BoardKind::Rectangle, 3, 3, 1),
            (BoardKind::Cylinder, 4, 1, 2),
            (BoardKind::Cylinder, 4, 2, 2),
            (BoardKind::Cylinder, 5, 1, 2),
            (BoardKind::Torus, 4, 4, 4),
        ] {
            let b = board(kind, n, m).unwrap();
            assert_eq!(count_classes(&b), expected, "{kind} {n}x{m}");
            let classes = brute_classes(&b);
            let k = classes.values().collect::<BTreeSet<_>>().len() as u64;
            assert_eq!(k, expected, "{kind} {n}x{m}");
        }
    }

    #[test]
    fn linear_solver_agrees_with_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (kind, n, m) in [(BoardKind::Rectangle, 2, 2), (BoardKind::Cylinder, 4, 1), (BoardKind::Cylinder, 6, 1)] {
            let b = board(kind, n, m).unwrap();
            let classes = brute_classes(&b);
            let mut all: Vec<u64> = classes.keys().copied().collect();
            all.sort_unstable();
            for _ in 0..200 {
                let (x, y) = (all[rng.gen_range(0..all.len())], all[rng.gen_range(0..all.len())]);
                let (cx, cy) = (from_mask(&b, x), from_mask(&b, y));
                match moves_equivalent(&b, &cx, &cy).unwrap() {
                    MoveEquivalence::Yes(w) => {
                        assert_eq!(classes[&x], classes[&y]);
                        let moved = w.iter().fold(cx.clone(), |c, &v| apply_move(&b, &c, v));
                        assert_eq!(moved, cy);
                    }
                    MoveEquivalence::No => assert_ne!(classes[&x], classes[&y]),
                }
            }
        }
    }

    #[test]
    fn ring_around_the_cylinder() {
        let b = board(BoardKind::Cylinder, 4, 2).unwrap();
        // red on every edge crossing the cut between cyclic rows 0 and 1
        let mut ring = BoardColoring::all_blue(&b);
        for (e, &(x, y)) in b.poset().covers().iter().enumerate() {
            let ((i1, j1), (i2, j2)) = (b.coords(x), b.coords(y));
            if j1 == j2 && [i1, i2].contains(&0) && [i1, i2].contains(&1) {
                ring.red[e] = true;
            }
        }
        assert!(is_valid(&b, &ring).unwrap());
        assert_eq!(moves_equivalent(&b, &BoardColoring::all_blue(&b), &ring).unwrap(), MoveEquivalence::No);
    }

    #[test]
    fn move_equivalence_is_coloring_equivalence() {
        for (kind, n, m) in [(BoardKind::Rectangle, 1, 2), (BoardKind::Cylinder, 4, 1)] {
            let b = board(kind, n, m).unwrap();
            let all = valid_colorings(&b);
            for &x in all.iter().step_by(3) {
                for &y in all.iter().step_by(5) {
                    let (cx, cy) = (from_mask(&b, x), from_mask(&b, y));
                    let moves = moves_equivalent(&b, &cx, &cy).unwrap() != MoveEquivalence::No;
                    let eq = are_equivalent(&b.as_poset_coloring(&cx), &b.as_poset_coloring(&cy)).unwrap();
                    assert_eq!(moves, matches!(eq, EquivalenceVerdict::Yes(_)));
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let b = board(BoardKind::Rectangle, 2, 1).unwrap();
        let c = apply_move(&b, &BoardColoring::all_blue(&b), 0);
        let text = alloc::format!("{c}");
        assert_eq!(BoardColoring::parse(&text).unwrap(), c);
        assert!(matches!(BoardColoring::parse("rbx"), Err(BoardError::BadColorChar('x'))));
    }
}
