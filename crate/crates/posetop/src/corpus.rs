//! The acceptance corpus: every criterion is recomputed from scratch, with
//! brute-force oracles where an independent check exists.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use posetop_core::asphericity::{aspherical_2complex, aspherical_presentation, AsphericityVerdict};
use posetop_core::boards::{board, count_classes, moves_equivalent, Board, BoardColoring, BoardKind, MoveEquivalence};
use posetop_core::cellular::{
    cellular_homology, cellular_structure, pi2, pi2_membership, twisted_complex, Pi2Description,
};
use posetop_core::coloring::{invert_coloring, standard_coloring, Coloring};
use posetop_core::covering::{
    build_cover, cyclic_product, deck_transformations, face_poset_covering_check, lift_path, milnor_poset,
    order_complex_map, simplicial_covering_check, universal_cover, universal_cover_coloring, verify_covering,
    CoveringMap,
};
use posetop_core::group::{
    FgAbelianGroup, FiniteGroup, Group, GroupPresentation, KnownGroup, Truth, Verdict, DEFAULT_BUDGET,
};
use posetop_core::homology::simplicial_chain_complex;
use posetop_core::pi1::{pi1_presentation, EdgePath};
use posetop_core::poset::models::{fence_cycle, sphere};
use posetop_core::simplicial::models as complexes;
use posetop_core::{face_poset, order_complex, simplicial_homology, ChainComplex, Homology, Poset, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, Default)]
pub struct CorpusOptions {
    pub seed: u64,
    /// Flip the sign of one incidence number before the `d∘d = 0` check.
    pub inject_fault: bool,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub const CRITERIA: [&str; 8] = [
    "milnor-rp2-pipeline",
    "board-theorems",
    "cellular-equals-simplicial",
    "covering-correspondence",
    "pi2-equations",
    "hurewicz-degenerate",
    "asphericity",
    "property-suites",
];

pub fn run(opts: &CorpusOptions) -> Vec<CriterionResult> {
    let checks: [fn(&CorpusOptions) -> Check; 8] = [
        milnor_rp2,
        board_theorems,
        cellular_equals_simplicial,
        covering_correspondence,
        pi2_equations,
        hurewicz_degenerate,
        asphericity,
        property_suites,
    ];
    checks
        .iter()
        .zip(CRITERIA)
        .enumerate()
        .map(|(i, (check, name))| {
            let (passed, detail) = match check(opts) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CriterionResult { id: i + 1, name, passed, detail }
        })
        .collect()
}

pub fn format_report(results: &[CriterionResult]) -> String {
    let mut s = String::new();
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{status} [{}] {}: {}", r.id, r.name, r.detail);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(s, "{passed}/{} criteria passed", results.len());
    s
}

// ---------------------------------------------------------------- fixtures

/// A circle with two 2-spheres attached: arcs u, t over {p, q}; v, k over
/// {p, m}; s, r over {m, n}; discs x, y over {u, t, v}, z over {s, r, v}, w over {s, r}.
pub fn circle_and_two_spheres() -> Poset {
    let labels = ["p", "q", "m", "n", "u", "t", "v", "k", "s", "r", "x", "y", "z", "w"];
    let pairs = [
        ("p", "u"), ("q", "u"), ("p", "t"), ("q", "t"), ("p", "v"), ("m", "v"), ("p", "k"), ("m", "k"),
        ("m", "s"), ("n", "s"), ("m", "r"), ("n", "r"),
        ("u", "x"), ("t", "x"), ("v", "x"), ("u", "y"), ("t", "y"), ("v", "y"),
        ("s", "z"), ("r", "z"), ("v", "z"), ("s", "w"), ("r", "w"),
    ];
    Poset::from_covers(&labels, &pairs).expect("fixture is a poset")
}

/// Named posets used across criteria.
pub fn corpus_posets() -> Vec<(&'static str, Poset)> {
    let rp2 = milnor_poset(&FiniteGroup::cyclic(2)).expect("Z_2 is finite").quotient;
    let (eight, _) = sphere(1).wedge(0, &sphere(1), 0);
    vec![
        ("S1", sphere(1)),
        ("S2", sphere(2)),
        ("C5", fence_cycle(5)),
        ("figure-eight", eight),
        ("RP2-milnor", rp2),
        ("torus7", face_poset(&complexes::torus7())),
        ("RP2-6", face_poset(&complexes::rp2_6())),
        ("tetrahedron", face_poset(&complexes::sphere_boundary(2))),
        ("circle-and-two-spheres", circle_and_two_spheres()),
        ("cylinder-C4xI2", board(BoardKind::Cylinder, 4, 2).unwrap().poset().clone()),
    ]
}

fn z(rank: usize, torsion: &[u64]) -> FgAbelianGroup {
    FgAbelianGroup::new(rank, torsion)
}

/// The standard coloring pushed through `π₁ → Z^r → (Z_n)^r`.
pub fn free_quotient_coloring(x: &Poset, base: usize, n: u64) -> Result<Coloring<FiniteGroup>, String> {
    let (c, pres) = standard_coloring(x, base).map_err(err)?;
    let ab = pres.presentation.abelianization();
    let r = ab.group().rank();
    let g = cyclic_product(&vec![n; r]);
    Ok(c.map_group(&g, |w| {
        ab.project(w)[..r].iter().fold(0usize, |acc, &v| acc * n as usize + v.rem_euclid(n as i64) as usize)
    }))
}

fn random_loop(x: &Poset, base: usize, tree_paths: &[EdgePath], rng: &mut ChaCha8Rng) -> EdgePath {
    let mut walk = vec![base];
    for _ in 0..rng.gen_range(1..24) {
        let here = *walk.last().unwrap();
        let next: Vec<usize> = x.neighbours(here).collect();
        if let Some(&v) = next.choose(rng) {
            walk.push(v);
        }
    }
    let end = *walk.last().unwrap();
    EdgePath::new(x, walk).unwrap().concat(&tree_paths[end].inverse())
}

/// Random simplicial 2-complex whose face poset has at most `limit` elements.
fn random_two_complex(rng: &mut ChaCha8Rng, limit: usize) -> SimplicialComplex {
    loop {
        let n = rng.gen_range(3..=5);
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if rng.gen_bool(0.3) {
                        facets.push(vec![a, b, c]);
                    }
                }
                if rng.gen_bool(0.35) {
                    facets.push(vec![a, b]);
                }
            }
            facets.push(vec![a]);
        }
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let k = SimplicialComplex::new(names, &facets).unwrap();
        if k.simplex_count() <= limit && k.dim() == Some(2) {
            return k;
        }
    }
}

/// Cone over a random graph with extra triangles spanned by its 3-cycles:
/// simply connected, with one 2-sphere per extra triangle (at least one).
fn random_simply_connected(rng: &mut ChaCha8Rng) -> (SimplicialComplex, usize) {
    loop {
        let n = rng.gen_range(3..=5);
        let apex = n;
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.6) {
                    edges.push((a, b));
                }
            }
        }
        let mut facets: Vec<Vec<usize>> = edges.iter().map(|&(a, b)| vec![a, b, apex]).collect();
        facets.extend((0..n).map(|a| vec![a, apex]));
        let has = |a, b| edges.contains(&(a, b));
        let mut extra = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if has(a, b) && has(a, c) && has(b, c) && rng.gen_bool(0.7) {
                        facets.push(vec![a, b, c]);
                        extra += 1;
                    }
                }
            }
        }
        let names: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
        let k = SimplicialComplex::new(names, &facets).unwrap();
        if extra > 0 {
            return (k, extra);
        }
    }
}

// --------------------------------------------------------------- criteria

fn milnor_rp2(_: &CorpusOptions) -> Check {
    let mc = milnor_poset(&FiniteGroup::cyclic(2)).map_err(err)?;
    let q = &mc.quotient;
    ensure(q.len() == 13, || format!("quotient has {} elements", q.len()))?;
    ensure(mc.total.len() == 26, || format!("total space has {} elements", mc.total.len()))?;
    let p = pi1_presentation(q, 0, None).map_err(err)?;
    let ab = p.presentation.abelianization();
    ensure(ab.group().is_isomorphic(&z(0, &[2])), || format!("abelianization {}", ab.group()))?;
    let verdict = p.presentation.simplify(DEFAULT_BUDGET).verdict;
    ensure(verdict == Verdict::IsomorphicTo(KnownGroup::Cyclic(2)), || format!("simplify verdict {verdict}"))?;
    let h = cellular_homology(&cellular_structure(q).map_err(err)?).map_err(err)?;
    ensure(h.group(1).torsion == [2] && h.betti(1) == 0 && h.group(2).is_zero(), || format!("cellular homology {h}"))?;
    let u = universal_cover(q, 0).map_err(err)?;
    ensure(u.total().len() == 26, || format!("universal cover has {} elements", u.total().len()))?;
    verify_covering(u.projection()).map_err(err)?;
    let deck = deck_transformations(&u).len();
    ensure(deck == 2, || format!("deck group of order {deck}"))?;
    let p2 = pi2(q, 0).map_err(err)?;
    ensure(matches!(&p2, Pi2Description::AbelianGroup(g) if g.is_isomorphic(&z(1, &[]))), || format!("pi2 = {p2}"))?;
    Ok(format!("13 points, pi1 = {verdict}, H1 = Z_2, H2 = 0, cover 26 points with deck group of order 2, pi2 = {p2}"))
}

/// Every valid coloring as an edge bitmask, by backtracking with square pruning.
fn valid_colorings(b: &Board) -> Vec<u64> {
    let e = b.edge_count();
    assert!(e <= 64);
    let closes: Vec<usize> = b.squares().iter().map(|sq| *sq.iter().max().unwrap()).collect();
    let mut out = Vec::new();
    fn go(b: &Board, i: usize, mask: u64, closes: &[usize], out: &mut Vec<u64>) {
        if i == b.edge_count() {
            out.push(mask);
            return;
        }
        for bit in [0u64, 1] {
            let m = mask | bit << i;
            let ok = b
                .squares()
                .iter()
                .zip(closes)
                .all(|(sq, &last)| last != i || sq.iter().filter(|&&x| m >> x & 1 == 1).count() % 2 == 0);
            if ok {
                go(b, i + 1, m, closes, out);
            }
        }
    }
    go(b, 0, 0, &closes, &mut out);
    out
}

/// Move class of every valid coloring, by breadth-first search over single moves.
fn move_classes(b: &Board) -> HashMap<u64, usize> {
    let moves: Vec<u64> =
        (0..b.vertex_count()).map(|v| b.incident_edges(v).iter().fold(0, |m, &e| m | 1 << e)).collect();
    let mut class = HashMap::new();
    let mut k = 0;
    for start in valid_colorings(b) {
        if class.contains_key(&start) {
            continue;
        }
        class.insert(start, k);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for m in &moves {
                if let std::collections::hash_map::Entry::Vacant(slot) = class.entry(c ^ m) {
                    slot.insert(k);
                    queue.push_back(c ^ m);
                }
            }
        }
        k += 1;
    }
    class
}

fn mask_coloring(b: &Board, m: u64) -> BoardColoring {
    BoardColoring { red: (0..b.edge_count()).map(|e| m >> e & 1 == 1).collect() }
}

fn board_theorems(_: &CorpusOptions) -> Check {
    for n in 1..=3 {
        for m in 1..=3 {
            let k = count_classes(&board(BoardKind::Rectangle, n, m).map_err(err)?);
            ensure(k == 1, || format!("rectangle {n}x{m} has {k} classes"))?;
        }
    }
    for m in 1..=2 {
        let k = count_classes(&board(BoardKind::Cylinder, 4, m).map_err(err)?);
        ensure(k == 2, || format!("cylinder 4x{m} has {k} classes"))?;
    }
    let torus = board(BoardKind::Torus, 4, 4).map_err(err)?;
    let brute = move_classes(&torus).values().collect::<BTreeSet<_>>().len() as u64;
    let torus_classes = count_classes(&torus);
    ensure(brute == torus_classes, || format!("torus: {torus_classes} classes by rank, {brute} by enumeration"))?;

    let mut small = Vec::new();
    for n in 1..=6 {
        for m in 1..=6 {
            small.push((BoardKind::Rectangle, n, m));
            small.push((BoardKind::Cylinder, n, m));
        }
    }
    let mut pairs = 0usize;
    let mut boards = 0usize;
    for (kind, n, m) in small {
        let Ok(b) = board(kind, n, m) else { continue };
        if b.edge_count() > 12 {
            continue;
        }
        boards += 1;
        let class = move_classes(&b);
        let mut all: Vec<u64> = class.keys().copied().collect();
        all.sort_unstable();
        for &x in &all {
            for &y in &all {
                let (cx, cy) = (mask_coloring(&b, x), mask_coloring(&b, y));
                let verdict = moves_equivalent(&b, &cx, &cy).map_err(err)?;
                let same = class[&x] == class[&y];
                match verdict {
                    MoveEquivalence::Yes(ws) => {
                        let mut moved = x;
                        for v in ws {
                            moved ^= b.incident_edges(v).iter().fold(0u64, |acc, &e| acc | 1 << e);
                        }
                        ensure(same && moved == y, || format!("{kind} {n}x{m}: bad witness for {cx} -> {cy}"))?;
                    }
                    MoveEquivalence::No => ensure(!same, || format!("{kind} {n}x{m}: missed {cx} ~ {cy}"))?,
                }
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "rectangles 1, cylinders C4xI_m 2, torus 4x4 {torus_classes} (= enumeration); \
         {pairs} coloring pairs on {boards} boards with <= 12 edges agree with move search"
    ))
}

fn cellular_vs_simplicial(x: &Poset) -> Result<(Homology, Homology), String> {
    let c = cellular_homology(&cellular_structure(x).map_err(err)?).map_err(err)?;
    Ok((c, simplicial_homology(&order_complex(x))))
}

fn cellular_equals_simplicial(opts: &CorpusOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x3);
    let mut checked = 0;
    for i in 0..50 {
        let k = random_two_complex(&mut rng, 20);
        let x = face_poset(&k);
        let (c, s) = cellular_vs_simplicial(&x)?;
        ensure(c == s, || format!("random complex {i}: cellular {c} vs simplicial {s}"))?;
        ensure(s == simplicial_homology(&k), || format!("random complex {i}: face poset changed homology"))?;
        checked += 1;
    }
    for (name, x) in corpus_posets() {
        if cellular_structure(&x).is_err() {
            continue;
        }
        let (c, s) = cellular_vs_simplicial(&x)?;
        ensure(c == s, || format!("{name}: cellular {c} vs simplicial {s}"))?;
        checked += 1;
    }
    Ok(format!("{checked} cellular posets, all degrees equal"))
}

/// Lift uniqueness and, for covers `E(c)`, `w_c(ξ) = 1 ⟺ closed lift`.
fn check_cover(
    name: &str,
    p: &CoveringMap,
    coloring: Option<&Coloring<FiniteGroup>>,
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    ensure(simplicial_covering_check(p), || format!("{name}: K(p) is not a simplicial covering"))?;
    ensure(face_poset_covering_check(&order_complex_map(p.projection())), || {
        format!("{name}: X(K(p)) is not a covering")
    })?;
    let x = p.base();
    let pres = pi1_presentation(x, 0, None).map_err(err)?;
    let mut loops = pres.fundamental_cycles();
    loops.extend((0..100).map(|_| random_loop(x, 0, &pres.tree_paths, rng)));
    let e = p.total();
    for (li, xi) in loops.iter().enumerate() {
        for start in p.fiber(0) {
            let lift = lift_path(p, xi, start).map_err(err)?;
            let lv = lift.vertices();
            ensure(lv[0] == start, || format!("{name}: lift does not start at the chosen point"))?;
            for (k, w) in lv.windows(2).enumerate() {
                let (a, b) = (xi.vertices()[k], xi.vertices()[k + 1]);
                ensure(p.project(w[1]) == b, || format!("{name}: lift leaves the fiber"))?;
                let up = x.is_cover(a, b);
                let options = e
                    .neighbours(w[0])
                    .filter(|&v| p.project(v) == b && e.is_cover(w[0], v) == up)
                    .count();
                ensure(options == 1, || format!("{name}: {options} lifts of a step of loop {li}"))?;
            }
            if let Some(c) = coloring {
                let trivial = c.weight(xi) == c.group().identity();
                ensure(trivial == lift.is_closed(), || format!("{name}: Fix property fails on loop {li}"))?;
            }
        }
    }
    Ok(loops.len())
}

fn covering_correspondence(opts: &CorpusOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x4);
    let mut covers: Vec<(String, CoveringMap, Option<Coloring<FiniteGroup>>)> = Vec::new();
    let mc = milnor_poset(&FiniteGroup::cyclic(2)).map_err(err)?;
    covers.push(("milnor Z_2".into(), mc.covering.clone(), None));
    let mc3 = milnor_poset(&FiniteGroup::cyclic(3)).map_err(err)?;
    covers.push(("milnor Z_3".into(), mc3.covering.clone(), None));
    let c = universal_cover_coloring(&mc.quotient, 0, DEFAULT_BUDGET).map_err(err)?;
    covers.push(("universal cover of RP2".into(), build_cover(&c).map_err(err)?, Some(c)));
    for (name, x, n) in [
        ("C5 by Z_3", fence_cycle(5), 3),
        ("torus7 by Z_2xZ_2", face_poset(&complexes::torus7()), 2),
        ("figure-eight by Z_2xZ_2", sphere(1).wedge(0, &sphere(1), 0).0, 2),
        ("cylinder C4xI2 by Z_4", board(BoardKind::Cylinder, 4, 2).unwrap().poset().clone(), 4),
    ] {
        let c = free_quotient_coloring(&x, 0, n)?;
        covers.push((name.into(), build_cover(&c).map_err(err)?, Some(c)));
    }
    let mut total_loops = 0;
    for (name, p, c) in &covers {
        total_loops += check_cover(name, p, c.as_ref(), &mut rng)?;
    }
    Ok(format!("{} coverings, {total_loops} loops lifted from every point of the base fiber", covers.len()))
}

fn pi2_equations(opts: &CorpusOptions) -> Check {
    let x = circle_and_two_spheres();
    let i = |l: &str| x.index_of(l).unwrap();
    let s = cellular_structure(&x).map_err(err)?;
    let zg = FgAbelianGroup::free(1);
    let mut c = Coloring::trivial(&x, &zg);
    for (lo, hi, g) in [("p", "v", 1), ("u", "x", 1), ("t", "x", 1), ("v", "y", -1)] {
        c.set_color(x.edge_between(i(lo), i(hi)).unwrap(), vec![g]);
    }
    let one = vec![0i64];
    let a = vec![1i64];
    let generators = [
        vec![(i("x"), a.clone(), 1), (i("y"), one.clone(), -1)],
        vec![(i("z"), one.clone(), 1), (i("w"), one.clone(), -1)],
    ];
    for (k, g) in generators.iter().enumerate() {
        ensure(pi2_membership(&s, &c, g) == Truth::Yes, || format!("generator {} rejected", k + 1))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5);
    let cells = ["x", "y", "z", "w"];
    for t in 0..20 {
        let mut chain = generators[t % 2].clone();
        let cell = i(cells.choose(&mut rng).unwrap());
        let coeff = *[-2i64, -1, 1, 2].choose(&mut rng).unwrap();
        chain.push((cell, vec![rng.gen_range(-3..=3)], coeff));
        ensure(pi2_membership(&s, &c, &chain) == Truth::No, || format!("perturbation {t} accepted: {chain:?}"))?;
    }
    let p2 = pi2(&x, 0).map_err(err)?;
    ensure(p2 == Pi2Description::FreeZGModuleOfRank(2), || format!("pi2 = {p2}"))?;
    let z4 = FiniteGroup::cyclic(4);
    let c4 = c.map_group(&z4, |v| v[0].rem_euclid(4) as usize);
    let h2 = twisted_complex(&s, &c4).map_err(err)?.homology().betti(2);
    ensure(h2 == 8, || format!("twisted H2 over Z_4 has rank {h2}"))?;
    Ok("a x - y and z - w accepted, 20 perturbations rejected, pi2 free of rank 2, Z_4 push H2 rank 8".into())
}

fn hurewicz_degenerate(opts: &CorpusOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6);
    let mut ranks = Vec::new();
    for t in 0..20 {
        let (k, spheres) = random_simply_connected(&mut rng);
        let x = face_poset(&k);
        let h2 = cellular_homology(&cellular_structure(&x).map_err(err)?).map_err(err)?.group(2);
        ensure(h2.rank == spheres && h2.torsion.is_empty(), || format!("poset {t}: H2 = {h2}, expected Z^{spheres}"))?;
        let p2 = pi2(&x, 0).map_err(err)?;
        let expected = z(h2.rank, &[]);
        ensure(matches!(&p2, Pi2Description::AbelianGroup(g) if g.is_isomorphic(&expected)), || {
            format!("poset {t}: pi2 = {p2}, H2 = {h2}")
        })?;
        ranks.push(h2.rank);
    }
    Ok(format!("20 coned complexes, pi2 = H2 with ranks {ranks:?}"))
}

fn asphericity(_: &CorpusOptions) -> Check {
    let two_relator = GroupPresentation::parse("<a,b,c,d,e | b^2 c a^-1 b^-1 d b a, c^-1 d e b e>").map_err(err)?;
    let r = aspherical_presentation(&two_relator);
    ensure(r.verdict == AsphericityVerdict::Aspherical, || format!("two-relator presentation: {}", r.verdict))?;
    let ab = two_relator.abelianization();
    let target = ab.project(&two_relator.parse_word("a b^3").unwrap());
    // the cycle c -> d <- a -> c, traced by hand
    let dp = posetop_core::asphericity::build_dp(&two_relator);
    let edge = |from: &str, to: &str| {
        let (s, t) = (
            dp.vertex_of_generator(two_relator.generator_index(from).unwrap()).unwrap(),
            dp.vertex_of_generator(two_relator.generator_index(to).unwrap()).unwrap(),
        );
        dp.edges.iter().position(|e| e.source == s && e.target == t).unwrap()
    };
    let walk = [(edge("c", "d"), true), (edge("a", "d"), false), (edge("a", "c"), true)];
    let image = ab.project(&dp.walk_weight(&walk));
    ensure(image == target, || format!("two-relator cycle abelianizes to {image:?}"))?;
    let negated: Vec<i64> = target.iter().map(|v| -v).collect();
    let certified = r.certificates.iter().find(|c| c.image == target || c.image == negated);
    let Some(cert) = certified else { return Err("no certificate abelianizes to a+3b".into()) };
    ensure(ab.project(&cert.weight) == cert.image, || "certificate image does not match its weight".into())?;
    let torus = GroupPresentation::parse("<a,b | a b a^-1 b^-1>").map_err(err)?;
    let v = aspherical_presentation(&torus).verdict;
    ensure(v == AsphericityVerdict::Aspherical, || format!("torus presentation: {v}"))?;
    let rp2 = GroupPresentation::parse("<a | a^2>").map_err(err)?;
    let v = aspherical_presentation(&rp2).verdict;
    ensure(matches!(v, AsphericityVerdict::Unknown(_)), || format!("<a | a^2>: {v}"))?;
    let v = aspherical_2complex(&face_poset(&complexes::torus7()), true).map_err(err)?.verdict;
    ensure(v == AsphericityVerdict::Aspherical, || format!("torus7: {v}"))?;
    let v = aspherical_2complex(&face_poset(&complexes::sphere_boundary(2)), true).map_err(err)?.verdict;
    ensure(matches!(v, AsphericityVerdict::Unknown(_)), || format!("tetrahedron boundary: {v}"))?;
    Ok("two-relator presentation aspherical via a+3b, torus aspherical, <a|a^2> unknown, torus7 aspherical, tetrahedron unknown".into())
}

fn random_poset(rng: &mut ChaCha8Rng, max: usize) -> Poset {
    let n = rng.gen_range(1..=max);
    let p = rng.gen_range(0.15..0.5);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    Poset::from_index_pairs((0..n).map(|i| format!("e{i}")).collect(), &pairs).unwrap()
}

/// Flips the sign of the first nonzero entry of `d_2`.
fn corrupt(c: &ChainComplex) -> Option<ChainComplex> {
    if c.ranks().len() < 3 {
        return None;
    }
    let mut d2 = c.boundary(2).clone();
    let (i, j) = (0..d2.rows()).flat_map(|i| (0..d2.cols()).map(move |j| (i, j))).find(|&(i, j)| d2.get(i, j) != 0)?;
    d2.set(i, j, -d2.get(i, j));
    let mut boundaries: Vec<_> = (1..c.ranks().len()).map(|k| c.boundary(k).clone()).collect();
    boundaries[1] = d2;
    Some(ChainComplex::new_unchecked(c.ranks().to_vec(), boundaries))
}

fn property_suites(opts: &CorpusOptions) -> Check {
    // d∘d = 0
    let mut complexes: Vec<(String, ChainComplex)> = Vec::new();
    for (name, x) in corpus_posets() {
        complexes.push((format!("{name} order complex"), simplicial_chain_complex(&order_complex(&x))));
        if let Ok(s) = cellular_structure(&x) {
            complexes.push((format!("{name} cellular"), s.chain_complex().map_err(err)?));
        }
    }
    let rp2 = milnor_poset(&FiniteGroup::cyclic(2)).map_err(err)?.quotient;
    let s = cellular_structure(&rp2).map_err(err)?;
    let u = universal_cover_coloring(&rp2, 0, DEFAULT_BUDGET).map_err(err)?;
    complexes.push(("RP2 twisted by pi1".into(), twisted_complex(&s, &u).map_err(err)?.complex));
    if opts.inject_fault {
        let k = complexes.iter().position(|(n, c)| n.ends_with("cellular") && corrupt(c).is_some()).unwrap();
        let bad = corrupt(&complexes[k].1).unwrap();
        complexes[k] = (format!("{} with one flipped incidence sign", complexes[k].0), bad);
    }
    for (name, c) in &complexes {
        c.check_nilpotent().map_err(|e| format!("d∘d ≠ 0 on {name}: {e}"))?;
    }
    // beat points
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x8);
    for t in 0..100 {
        let x = random_poset(&mut rng, 12);
        let (h, hc) = (simplicial_homology(&order_complex(&x)), simplicial_homology(&order_complex(&x.core())));
        ensure(h == hc, || format!("random poset {t}: core changed homology {h} -> {hc}"))?;
    }
    // abelianized π₁ = H₁
    let mut connected = 0;
    for (name, x) in corpus_posets() {
        if !x.is_connected() {
            continue;
        }
        let ab = pi1_presentation(&x, 0, None).map_err(err)?.presentation.abelianization();
        let h1 = simplicial_homology(&order_complex(&x)).group(1);
        ensure(ab.group().is_isomorphic(&z(h1.rank, &h1.torsion)), || format!("{name}: pi1^ab {} vs H1 {h1}", ab.group()))?;
        connected += 1;
    }
    // inverse colorings over abelian groups on boards
    let mut inverted = 0;
    for (kind, n, m) in [
        (BoardKind::Rectangle, 2, 2),
        (BoardKind::Cylinder, 4, 2),
        (BoardKind::Cylinder, 5, 1),
        (BoardKind::Torus, 4, 4),
    ] {
        let b = board(kind, n, m).map_err(err)?;
        let x = b.poset();
        for q in [2u64, 3, 4] {
            let base = free_quotient_coloring(x, 0, q)?;
            let g = base.group().clone();
            for _ in 0..5 {
                let twist: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..g.order())).collect();
                let noise: Vec<usize> = (0..x.edge_count()).map(|_| rng.gen_range(0..g.order())).collect();
                for c in [base.twist(&twist), Coloring::new(x, &g, noise).map_err(err)?] {
                    let ci = invert_coloring(&c);
                    let (a, ai) = (c.is_admissible().truth(), ci.is_admissible().truth());
                    ensure(a == ai, || format!("{kind} {n}x{m} over Z_{q}: admissibility {a} vs {ai}"))?;
                    if a == Truth::Yes {
                        let (k, ki) = (c.is_connected_coloring(0).map_err(err)?, ci.is_connected_coloring(0).map_err(err)?);
                        ensure(k == ki, || format!("{kind} {n}x{m} over Z_{q}: connectedness {k} vs {ki}"))?;
                    }
                    inverted += 1;
                }
            }
        }
    }
    Ok(format!(
        "d∘d = 0 on {} complexes; core keeps homology on 100 random posets; pi1^ab = H1 on {connected} posets; \
         {inverted} board colorings inverted",
        complexes.len()
    ))
}
