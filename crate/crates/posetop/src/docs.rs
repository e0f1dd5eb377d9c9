//! JSON documents for posets, complexes, colorings, maps and boards, plus the
//! group literal syntax.

use std::fmt;

use posetop_core::boards::{board, Board, BoardKind};
use posetop_core::coloring::Coloring;
use posetop_core::group::{FgAbelianGroup, FiniteGroup, Group, GroupPresentation, PresentedGroup, DEFAULT_BUDGET};
use posetop_core::{MonotoneMap, Poset, SimplicialComplex};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A malformed document; maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("ParseError: {0}")]
pub struct DocError(pub String);

impl DocError {
    fn new(msg: impl fmt::Display) -> Self {
        DocError(msg.to_string())
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetDoc {
    pub fn from_poset(x: &Poset) -> Self {
        PosetDoc {
            elements: x.labels().to_vec(),
            covers: x.covers().iter().map(|&(a, b)| (x.label(a).to_string(), x.label(b).to_string())).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset, DocError> {
        Poset::from_covers(&self.elements, &self.covers).map_err(DocError::new)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ComplexDoc {
    /// Defaults to the facet vertices in order of first appearance.
    #[serde(default)]
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl ComplexDoc {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        let names = k.vertices();
        ComplexDoc {
            vertices: names.to_vec(),
            facets: k.facets().iter().map(|f| f.iter().map(|&v| names[v].clone()).collect()).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, DocError> {
        let mut vertices = self.vertices.clone();
        if vertices.is_empty() {
            for v in self.facets.iter().flatten() {
                if !vertices.contains(v) {
                    vertices.push(v.clone());
                }
            }
        }
        SimplicialComplex::from_labels(&vertices, &self.facets).map_err(DocError::new)
    }
}

/// A poset document, or a complex document read as its face poset.
pub fn read_poset_value(v: &Value) -> Result<Poset, DocError> {
    if v.get("facets").is_some() {
        let doc: ComplexDoc = serde_json::from_value(v.clone()).map_err(DocError::new)?;
        Ok(posetop_core::face_poset(&doc.to_complex()?))
    } else {
        let doc: PosetDoc = serde_json::from_value(v.clone()).map_err(DocError::new)?;
        doc.to_poset()
    }
}

/// A group literal (`Z`, `Z_n`, `ZxZ`, `Z^k`, `S_n`, `D_n`, products with
/// `x`, a presentation `<…|…>`) or an explicit multiplication table.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum GroupSpec {
    Literal(String),
    Table { name: String, elements: Vec<String>, table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub enum AnyGroup {
    Finite(FiniteGroup),
    Abelian(FgAbelianGroup),
    Presented(PresentedGroup),
}

enum Factor {
    Integers(usize),
    Finite(FiniteGroup),
    Cyclic(usize),
}

fn factor(text: &str) -> Result<Factor, DocError> {
    let number = |s: &str| s.parse::<usize>().map_err(|_| DocError::new(format!("bad group literal {text:?}")));
    if text == "Z" {
        return Ok(Factor::Integers(1));
    }
    if let Some(k) = text.strip_prefix("Z^") {
        return Ok(Factor::Integers(number(k)?));
    }
    if let Some(n) = text.strip_prefix("Z_") {
        let n = number(n)?;
        if n == 0 {
            return Err(DocError::new("Z_0 is not a finite cyclic group"));
        }
        return Ok(Factor::Cyclic(n));
    }
    if let Some(n) = text.strip_prefix("S_") {
        let n = number(n)?;
        if !(1..=6).contains(&n) {
            return Err(DocError::new("symmetric groups are supported up to S_6"));
        }
        return Ok(Factor::Finite(FiniteGroup::symmetric(n)));
    }
    if let Some(n) = text.strip_prefix("D_") {
        let n = number(n)?;
        if n == 0 {
            return Err(DocError::new("D_0 is not a dihedral group"));
        }
        return Ok(Factor::Finite(FiniteGroup::dihedral(n)));
    }
    Err(DocError::new(format!("bad group literal {text:?}")))
}

impl GroupSpec {
    pub fn literal(s: &str) -> Self {
        GroupSpec::Literal(s.to_string())
    }

    pub fn build(&self) -> Result<AnyGroup, DocError> {
        self.build_with_budget(DEFAULT_BUDGET)
    }

    pub fn build_with_budget(&self, budget: usize) -> Result<AnyGroup, DocError> {
        let text = match self {
            GroupSpec::Table { name, elements, table } => {
                return FiniteGroup::from_table(name, elements.clone(), table)
                    .map(AnyGroup::Finite)
                    .map_err(DocError::new)
            }
            GroupSpec::Literal(t) => t.trim(),
        };
        if text.starts_with('<') {
            let p = GroupPresentation::parse(text).map_err(DocError::new)?;
            return Ok(AnyGroup::Presented(PresentedGroup::new(p, budget)));
        }
        let factors: Vec<Factor> = text.split('x').map(|f| factor(f.trim())).collect::<Result<_, _>>()?;
        if factors.iter().any(|f| matches!(f, Factor::Integers(_))) {
            let mut rank = 0;
            let mut torsion = Vec::new();
            for f in factors {
                match f {
                    Factor::Integers(k) => rank += k,
                    Factor::Cyclic(n) => torsion.push(n as u64),
                    Factor::Finite(_) => return Err(DocError::new("products of Z with nonabelian groups are not supported")),
                }
            }
            return Ok(AnyGroup::Abelian(FgAbelianGroup::new(rank, &torsion)));
        }
        let mut group = FiniteGroup::trivial();
        for (i, f) in factors.into_iter().enumerate() {
            let g = match f {
                Factor::Cyclic(n) => FiniteGroup::cyclic(n),
                Factor::Finite(g) => g,
                Factor::Integers(_) => unreachable!(),
            };
            group = if i == 0 { g } else { group.product(&g) };
        }
        Ok(AnyGroup::Finite(group))
    }
}

/// A coloring over whichever kind of group its literal names.
#[derive(Clone, Debug)]
pub enum AnyColoring {
    Finite(Coloring<FiniteGroup>),
    Abelian(Coloring<FgAbelianGroup>),
    Presented(Coloring<PresentedGroup>),
}

impl AnyColoring {
    pub fn poset(&self) -> &Poset {
        match self {
            AnyColoring::Finite(c) => c.poset(),
            AnyColoring::Abelian(c) => c.poset(),
            AnyColoring::Presented(c) => c.poset(),
        }
    }
}

/// The poset document plus a group and one `[lower, upper, element]` per edge;
/// edges left out are colored with the identity.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ColoringDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub group: GroupSpec,
    pub colors: Vec<(String, String, Value)>,
}

fn finite_element(g: &FiniteGroup, v: &Value) -> Result<usize, DocError> {
    match v {
        Value::Number(n) => {
            let k = n.as_i64().ok_or_else(|| DocError::new(format!("bad element {v}")))?;
            Ok(k.rem_euclid(g.order() as i64) as usize)
        }
        Value::String(s) => g
            .element_by_name(s)
            .or_else(|| s.parse::<i64>().ok().map(|k| k.rem_euclid(g.order() as i64) as usize))
            .ok_or_else(|| DocError::new(format!("unknown element {s:?}"))),
        _ => Err(DocError::new(format!("bad element {v}"))),
    }
}

fn abelian_element(g: &FgAbelianGroup, v: &Value) -> Result<Vec<i64>, DocError> {
    let bad = || DocError::new(format!("bad element {v} for {}", g.dimension()));
    let mut out = match v {
        Value::Number(n) if g.dimension() == 1 => vec![n.as_i64().ok_or_else(bad)?],
        Value::Array(items) if items.len() == g.dimension() => {
            items.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<_, _>>()?
        }
        _ => return Err(bad()),
    };
    g.reduce(&mut out);
    Ok(out)
}

impl ColoringDoc {
    pub fn from_coloring(c: &AnyColoring, group: GroupSpec) -> Self {
        let x = c.poset();
        let label = |e: usize| {
            let (a, b) = x.edge(e);
            (x.label(a).to_string(), x.label(b).to_string())
        };
        let colors = (0..x.edge_count())
            .map(|e| {
                let v = match c {
                    AnyColoring::Finite(c) => Value::from(*c.color(e)),
                    AnyColoring::Abelian(c) => Value::from(c.color(e).clone()),
                    AnyColoring::Presented(c) => Value::from(c.group().presentation().format_word(c.color(e))),
                };
                let (a, b) = label(e);
                (a, b, v)
            })
            .collect();
        let poset = PosetDoc::from_poset(x);
        ColoringDoc { elements: poset.elements, covers: poset.covers, group, colors }
    }

    pub fn to_coloring(&self) -> Result<AnyColoring, DocError> {
        let x = PosetDoc { elements: self.elements.clone(), covers: self.covers.clone() }.to_poset()?;
        let edge = |a: &str, b: &str| -> Result<usize, DocError> {
            let (i, j) = (x.index_of(a).map_err(DocError::new)?, x.index_of(b).map_err(DocError::new)?);
            x.edge_between(i, j)
                .filter(|_| x.is_cover(i, j))
                .ok_or_else(|| DocError::new(format!("{a} ≺ {b} is not an edge")))
        };
        fn fill<G: Group>(
            x: &Poset,
            g: &G,
            colors: &[(String, String, Value)],
            edge: impl Fn(&str, &str) -> Result<usize, DocError>,
            parse: impl Fn(&Value) -> Result<G::Element, DocError>,
        ) -> Result<Coloring<G>, DocError> {
            let mut c = Coloring::trivial(x, g);
            for (a, b, v) in colors {
                c.set_color(edge(a, b)?, parse(v)?);
            }
            Ok(c)
        }
        Ok(match self.group.build()? {
            AnyGroup::Finite(g) => AnyColoring::Finite(fill(&x, &g, &self.colors, edge, |v| finite_element(&g, v))?),
            AnyGroup::Abelian(g) => AnyColoring::Abelian(fill(&x, &g, &self.colors, edge, |v| abelian_element(&g, v))?),
            AnyGroup::Presented(g) => {
                let p = g.presentation().clone();
                AnyColoring::Presented(fill(&x, &g, &self.colors, edge, |v| {
                    let s = v.as_str().ok_or_else(|| DocError::new(format!("words are strings, got {v}")))?;
                    p.parse_word(s).map_err(DocError::new)
                })?)
            }
        })
    }
}

/// A monotone map: `images[i]` is the label of the image of `source.elements[i]`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MapDoc {
    pub source: PosetDoc,
    pub target: PosetDoc,
    pub images: Vec<String>,
}

impl MapDoc {
    pub fn from_map(f: &MonotoneMap) -> Self {
        MapDoc {
            source: PosetDoc::from_poset(f.source()),
            target: PosetDoc::from_poset(f.target()),
            images: f.images().iter().map(|&y| f.target().label(y).to_string()).collect(),
        }
    }

    pub fn to_map(&self) -> Result<MonotoneMap, DocError> {
        let (s, t) = (self.source.to_poset()?, self.target.to_poset()?);
        if self.images.len() != s.len() {
            return Err(DocError::new(format!("{} images for {} elements", self.images.len(), s.len())));
        }
        let images = self.images.iter().map(|l| t.index_of(l).map_err(DocError::new)).collect::<Result<_, _>>()?;
        MonotoneMap::new(&s, &t, images).map_err(DocError::new)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct BoardDoc {
    pub kind: String,
    pub n: usize,
    pub m: usize,
}

impl BoardDoc {
    pub fn from_board(b: &Board) -> Self {
        let (n, m) = b.dimensions();
        BoardDoc { kind: b.kind().to_string(), n, m }
    }

    pub fn to_board(&self) -> Result<Board, DocError> {
        let kind: BoardKind = self.kind.parse().map_err(DocError::new)?;
        board(kind, self.n, self.m).map_err(DocError::new)
    }
}

/// A presentation in its text form, `<a, b | a b a^-1 b^-1>`.
pub fn presentation_text(p: &GroupPresentation) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use posetop_core::poset::models::{fence_cycle, sphere};

    #[test]
    fn group_literals() {
        let order = |s: &str| match GroupSpec::literal(s).build().unwrap() {
            AnyGroup::Finite(g) => g.order(),
            _ => 0,
        };
        assert_eq!(order("Z_4"), 4);
        assert_eq!(order("S_3"), 6);
        assert_eq!(order("D_4"), 8);
        assert_eq!(order("Z_2xZ_2"), 4);
        assert!(matches!(GroupSpec::literal("ZxZ").build().unwrap(), AnyGroup::Abelian(g) if g.rank() == 2));
        assert!(matches!(GroupSpec::literal("<a|a^3>").build().unwrap(), AnyGroup::Presented(_)));
        assert!(GroupSpec::literal("Q_8").build().is_err());
    }

    #[test]
    fn poset_round_trip() {
        for x in [sphere(2), fence_cycle(5)] {
            let text = serde_json::to_string(&PosetDoc::from_poset(&x)).unwrap();
            let back: PosetDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_poset().unwrap(), x);
        }
    }

    #[test]
    fn coloring_defaults_to_identity() {
        let doc: ColoringDoc = serde_json::from_str(
            r#"{"elements":["a","b","c","d"],"covers":[["a","c"],["a","d"],["b","c"],["b","d"]],
                "group":"Z_3","colors":[["a","c",2]]}"#,
        )
        .unwrap();
        let AnyColoring::Finite(c) = doc.to_coloring().unwrap() else { panic!() };
        assert_eq!(c.colors().iter().filter(|&&g| g != 0).count(), 1);
    }
}
