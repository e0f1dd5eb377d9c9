use posetop::docs::{AnyColoring, BoardDoc, ColoringDoc, ComplexDoc, GroupSpec, MapDoc, PosetDoc};
use posetop_core::boards::{board, BoardColoring, BoardKind};
use posetop_core::coloring::Coloring;
use posetop_core::covering::milnor_poset;
use posetop_core::group::{FgAbelianGroup, FiniteGroup, GroupPresentation, PresentedGroup, Word, DEFAULT_BUDGET};
use posetop_core::poset::models::{fence_cycle, sphere};
use posetop_core::simplicial::models as complexes;
use posetop_core::{face_poset, Poset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn through_json<T: serde::Serialize + serde::de::DeserializeOwned>(x: &T) -> T {
    serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap()
}

fn sample_posets() -> Vec<Poset> {
    vec![
        sphere(2),
        fence_cycle(6),
        face_poset(&complexes::torus7()),
        milnor_poset(&FiniteGroup::cyclic(2)).unwrap().quotient,
        board(BoardKind::Torus, 4, 4).unwrap().poset().clone(),
    ]
}

#[test]
fn posets() {
    for x in sample_posets() {
        assert_eq!(through_json(&PosetDoc::from_poset(&x)).to_poset().unwrap(), x);
    }
}

#[test]
fn complexes() {
    for k in [complexes::torus7(), complexes::rp2_6(), complexes::sphere_boundary(3)] {
        assert_eq!(through_json(&ComplexDoc::from_complex(&k)).to_complex().unwrap(), k);
    }
}

#[test]
fn maps() {
    let mc = milnor_poset(&FiniteGroup::cyclic(3)).unwrap();
    let f = mc.covering.projection();
    let back = through_json(&MapDoc::from_map(f)).to_map().unwrap();
    assert_eq!((back.source(), back.target(), back.images()), (f.source(), f.target(), f.images()));
}

#[test]
fn colorings() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for x in sample_posets() {
        let d3 = FiniteGroup::dihedral(3);
        let finite = Coloring::new(&x, &d3, (0..x.edge_count()).map(|_| rng.gen_range(0..6)).collect()).unwrap();
        let doc = through_json(&ColoringDoc::from_coloring(&AnyColoring::Finite(finite.clone()), GroupSpec::literal("D_3")));
        let AnyColoring::Finite(back) = doc.to_coloring().unwrap() else { panic!("expected a finite group") };
        assert_eq!((back.poset(), back.colors()), (finite.poset(), finite.colors()));

        let z2 = FgAbelianGroup::free(2);
        let abelian =
            Coloring::new(&x, &z2, (0..x.edge_count()).map(|_| vec![rng.gen_range(-3..4), rng.gen_range(-3..4)]).collect())
                .unwrap();
        let doc = through_json(&ColoringDoc::from_coloring(&AnyColoring::Abelian(abelian.clone()), GroupSpec::literal("Z^2")));
        let AnyColoring::Abelian(back) = doc.to_coloring().unwrap() else { panic!("expected an abelian group") };
        assert_eq!(back.colors(), abelian.colors());

        let text = "<a, b | a b a^-1 b^-1>";
        let g = PresentedGroup::new(GroupPresentation::parse(text).unwrap(), DEFAULT_BUDGET);
        let words = (0..x.edge_count())
            .map(|_| Word::power_of(rng.gen_range(0..2), rng.gen_range(-2..3)).concat(&Word::generator(1)))
            .collect();
        let presented = Coloring::new(&x, &g, words).unwrap();
        let doc = through_json(&ColoringDoc::from_coloring(&AnyColoring::Presented(presented.clone()), GroupSpec::literal(text)));
        let AnyColoring::Presented(back) = doc.to_coloring().unwrap() else { panic!("expected a presentation") };
        assert_eq!(back.colors(), presented.colors());
    }
}

#[test]
fn presentations() {
    for text in ["<a | a^2>", "<a, b | a b a^-1 b^-1>", "<a,b,c,d,e | b^2 c a^-1 b^-1 d b a, c^-1 d e b e>", "<x, y | >"] {
        let p = GroupPresentation::parse(text).unwrap();
        assert_eq!(GroupPresentation::parse(&p.to_string()).unwrap(), p);
    }
}

#[test]
fn boards() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (kind, n, m) in [(BoardKind::Rectangle, 2, 3), (BoardKind::Cylinder, 5, 2), (BoardKind::Torus, 4, 5)] {
        let b = board(kind, n, m).unwrap();
        let back = through_json(&BoardDoc::from_board(&b)).to_board().unwrap();
        assert_eq!((back.kind(), back.dimensions(), back.poset()), (kind, (n, m), b.poset()));
        let col = BoardColoring { red: (0..b.edge_count()).map(|_| rng.gen_bool(0.5)).collect() };
        assert_eq!(BoardColoring::parse(&col.to_string()).unwrap(), col);
    }
}
