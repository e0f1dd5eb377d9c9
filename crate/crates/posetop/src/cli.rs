//! Command-line verbs. Every verb prints one deterministic JSON report; exit
//! codes are 0 on success, 1 on domain errors and 2 on malformed input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use posetop_core::asphericity::{aspherical_2complex, aspherical_presentation, build_dp, AsphericityReport, AsphericityVerdict};
use posetop_core::boards::{board, count_classes, is_valid, moves_equivalent, BoardColoring, BoardKind, MoveEquivalence};
use posetop_core::cellular::{cellular_homology, cellular_structure, pi2_with_budget, Pi2Description};
use posetop_core::coloring::{are_equivalent, are_equivalent_generic, Coloring, EquivalenceVerdict};
use posetop_core::covering::{build_cover, deck_transformations, milnor_poset, verify_covering, CoveringMap};
use posetop_core::group::{FiniteGroup, Group, GroupPresentation, DEFAULT_BUDGET};
use posetop_core::pi1::pi1_presentation;
use posetop_core::{order_complex, simplicial_homology, Homology, Poset};
use serde_json::{json, Value};

use crate::corpus::{self, CorpusOptions};
use crate::docs::{read_poset_value, AnyColoring, AnyGroup, ColoringDoc, DocError, GroupSpec, MapDoc, PosetDoc};

#[derive(Parser, Debug)]
#[command(name = "posetop", version, about = "Homotopy invariants of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Presentation of the fundamental group read off the Hasse diagram.
    Pi1 {
        input: Option<PathBuf>,
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Reduced integral homology of a poset or simplicial complex.
    Homology {
        input: Option<PathBuf>,
        /// Use the cellular chain complex instead of the order complex.
        #[arg(long)]
        cellular: bool,
    },
    /// Second homotopy group of a cellular poset.
    Pi2 {
        input: Option<PathBuf>,
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Covering E(c) of an admissible coloring over a finite group.
    Cover { input: Option<PathBuf> },
    /// Deck transformations of E(c).
    Deck { input: Option<PathBuf> },
    /// Admissibility and connectedness of a coloring.
    ColoringCheck {
        input: Option<PathBuf>,
        #[arg(long)]
        base: Option<String>,
    },
    /// Equivalence of two colorings.
    Equiv { first: PathBuf, second: PathBuf },
    /// Asphericity certificates for a presentation or a regular 2-complex.
    Aspherical {
        input: Option<PathBuf>,
        /// Read the input as the face poset of a regular CW-complex of dimension 2.
        #[arg(long)]
        cw2: bool,
        /// Read the input as a group presentation `<a, b | r1, r2>`.
        #[arg(long)]
        presentation: bool,
    },
    /// Red/blue colorings of boards.
    Board {
        #[arg(long)]
        kind: BoardKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(subcommand)]
        action: BoardAction,
    },
    /// Core of a poset, by removing beat points.
    Core {
        input: Option<PathBuf>,
        /// Emit the Hasse diagram in DOT format instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Milnor-type model of BG for a finite group; prints the quotient poset.
    Milnor {
        #[arg(long)]
        group: String,
        /// Print the total space and its projection instead.
        #[arg(long)]
        total: bool,
    },
    /// Checks that a monotone map is a covering.
    Verify { input: Option<PathBuf> },
    /// Runs the bundled acceptance corpus.
    Corpus {
        /// Corrupt one incidence number to show the harness catches it.
        #[arg(long)]
        inject_fault: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum BoardAction {
    /// Number of move classes of valid colorings.
    Classes,
    /// Whether a coloring is valid.
    Valid { coloring: PathBuf },
    /// Whether two valid colorings are related by moves.
    Equiv { first: PathBuf, second: PathBuf },
}

enum Failure {
    Parse(String),
    Domain { name: String, report: Value },
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        Failure::Parse(e.0)
    }
}

/// A domain error named by its leading `Name:`.
fn domain(e: impl std::fmt::Display) -> Failure {
    let message = e.to_string();
    let name = message.split(':').next().unwrap_or("Error").trim().to_string();
    Failure::Domain { report: json!({ "error": name, "message": message }), name }
}

enum Output {
    Json(Value),
    Text(String),
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Parse(e.to_string()))?;
            Ok(s)
        }
    }
}

fn read_json(path: &Option<PathBuf>) -> Result<Value, Failure> {
    serde_json::from_str(&read_input(path)?).map_err(|e| Failure::Parse(e.to_string()))
}

fn read_poset(path: &Option<PathBuf>) -> Result<Poset, Failure> {
    Ok(read_poset_value(&read_json(path)?)?)
}

fn read_coloring(path: &Option<PathBuf>) -> Result<(AnyColoring, GroupSpec), Failure> {
    let doc: ColoringDoc = serde_json::from_value(read_json(path)?).map_err(|e| Failure::Parse(e.to_string()))?;
    Ok((doc.to_coloring()?, doc.group))
}

fn base_index(x: &Poset, base: &Option<String>) -> Result<usize, Failure> {
    match base {
        Some(l) => x.index_of(l).map_err(|e| Failure::Parse(e.to_string())),
        None => Ok(0),
    }
}

/// Every degree up to `dim`, zeros included.
fn homology_json(h: &Homology, dim: usize) -> Value {
    let groups: Vec<Value> = (0..=dim.max(h.groups().len().saturating_sub(1)))
        .map(|d| {
            let g = h.group(d);
            json!({ "degree": d, "rank": g.rank, "torsion": g.torsion, "group": g.to_string() })
        })
        .collect();
    json!({ "reduced": true, "groups": groups })
}

fn pi2_json(p: &Pi2Description) -> Value {
    let (kind, value) = match p {
        Pi2Description::FreeZGModuleOfRank(r) => ("FreeZGModuleOfRank", json!(r)),
        Pi2Description::AbelianGroup(g) => ("AbelianGroup", json!(g.to_string())),
        Pi2Description::Formal(s) => ("Formal", json!(s)),
        Pi2Description::Unknown(s) => ("Unknown", json!(s)),
    };
    json!({ "kind": kind, "value": value, "display": p.to_string() })
}

fn finite(c: &AnyColoring) -> Result<&Coloring<FiniteGroup>, Failure> {
    match c {
        AnyColoring::Finite(c) => Ok(c),
        _ => Err(Failure::Domain {
            name: "NotFiniteGroup".into(),
            report: json!({ "error": "NotFiniteGroup", "message": "this verb needs a finite group" }),
        }),
    }
}

/// A map document for the projection, so the output pipes into `verify`.
fn cover_json(p: &CoveringMap) -> Value {
    let mut v = serde_json::to_value(MapDoc::from_map(p.projection())).expect("documents serialize");
    v["sheets"] = json!(p.sheets());
    v
}

/// Weights are words in `p`; `abelian_image` is in the abelianization's
/// invariant-factor coordinates, `exponent_sums` in the generators of `p`.
fn aspherical_json(r: &AsphericityReport, p: &GroupPresentation) -> Value {
    let (verdict, reason) = match &r.verdict {
        AsphericityVerdict::Aspherical => ("Aspherical", Value::Null),
        AsphericityVerdict::Unknown(why) => ("Unknown", json!(why)),
    };
    let certificates: Vec<Value> = r
        .certificates
        .iter()
        .map(|c| {
            json!({
                "component": c.component,
                "cycles": c.combination,
                "weight": p.format_word(&c.weight),
                "abelian_image": c.image,
                "exponent_sums": c.weight.exponent_sums(p.generator_count()),
            })
        })
        .collect();
    json!({ "verdict": verdict, "reason": reason, "certificates": certificates })
}

fn read_board_coloring(path: &Path) -> Result<BoardColoring, Failure> {
    let text = read_input(&Some(path.to_path_buf()))?;
    BoardColoring::parse(&text).map_err(|e| Failure::Parse(e.to_string()))
}

fn dispatch(cli: Cli) -> Result<Output, Failure> {
    let out = match cli.command {
        Command::Pi1 { input, base, budget } => {
            let x = read_poset(&input)?;
            let b = base_index(&x, &base)?;
            let p = pi1_presentation(&x, b, None).map_err(domain)?;
            let simplified = p.presentation.simplify(budget);
            let ab = p.presentation.abelianization();
            json!({
                "elements": x.len(),
                "summary": format!("{} elements, {} edges", x.len(), x.edge_count()),
                "base": x.label(b),
                "presentation": p.presentation.to_string(),
                "simplified": simplified.presentation.to_string(),
                "verdict": posetop_core::group::describe_verdict(&simplified.verdict),
                "abelianization": ab.group().to_string(),
            })
        }
        Command::Homology { input, cellular } => {
            let v = read_json(&input)?;
            let (h, dim) = if v.get("facets").is_some() && !cellular {
                let doc: crate::docs::ComplexDoc = serde_json::from_value(v).map_err(|e| Failure::Parse(e.to_string()))?;
                let k = doc.to_complex()?;
                (simplicial_homology(&k), k.dim().unwrap_or(0))
            } else {
                let x = read_poset_value(&v)?;
                let dim = x.poset_height();
                if cellular {
                    (cellular_homology(&cellular_structure(&x).map_err(domain)?).map_err(domain)?, dim)
                } else {
                    (simplicial_homology(&order_complex(&x)), dim)
                }
            };
            homology_json(&h, dim)
        }
        Command::Pi2 { input, base, budget } => {
            let x = read_poset(&input)?;
            let b = base_index(&x, &base)?;
            json!({ "pi2": pi2_json(&pi2_with_budget(&x, b, budget).map_err(domain)?) })
        }
        Command::Cover { input } => {
            let (c, _) = read_coloring(&input)?;
            cover_json(&build_cover(finite(&c)?).map_err(domain)?)
        }
        Command::Deck { input } => {
            let (c, _) = read_coloring(&input)?;
            let p = build_cover(finite(&c)?).map_err(domain)?;
            let deck: Vec<Vec<&str>> = deck_transformations(&p)
                .iter()
                .map(|perm| perm.iter().map(|&e| p.total().label(e)).collect())
                .collect();
            json!({ "order": deck.len(), "deck_transformations": deck })
        }
        Command::ColoringCheck { input, base } => {
            let (c, _) = read_coloring(&input)?;
            let b = base_index(c.poset(), &base)?;
            fn check<G: Group>(c: &Coloring<G>, b: usize) -> Result<Value, Failure> {
                let adm = c.is_admissible();
                let digon = match &adm {
                    posetop_core::coloring::Admissibility::Admissible => Value::Null,
                    posetop_core::coloring::Admissibility::NotAdmissible(d)
                    | posetop_core::coloring::Admissibility::Unknown(d) => {
                        let x = c.poset();
                        let names = |v: &[usize]| v.iter().map(|&i| x.label(i).to_string()).collect::<Vec<_>>();
                        json!({ "left": names(&d.left), "right": names(&d.right) })
                    }
                };
                let connected = c.is_connected_coloring(b).map_err(domain)?;
                Ok(json!({ "admissible": adm.truth().to_string(), "digon": digon, "connected": connected.to_string() }))
            }
            match &c {
                AnyColoring::Finite(c) => check(c, b)?,
                AnyColoring::Abelian(c) => check(c, b)?,
                AnyColoring::Presented(c) => check(c, b)?,
            }
        }
        Command::Equiv { first, second } => {
            let (c, _) = read_coloring(&Some(first))?;
            let (d, _) = read_coloring(&Some(second))?;
            let verdict = match (&c, &d) {
                (AnyColoring::Finite(c), AnyColoring::Finite(d)) => are_equivalent(c, d).map_err(domain)?,
                (AnyColoring::Abelian(c), AnyColoring::Abelian(d)) => are_equivalent_generic(c, d, 0).map_err(domain)?,
                (AnyColoring::Presented(c), AnyColoring::Presented(d)) => {
                    are_equivalent_generic(c, d, 0).map_err(domain)?
                }
                _ => return Err(domain("DifferentGroups: the colorings use different kinds of groups")),
            };
            match verdict {
                EquivalenceVerdict::Yes(w) => {
                    json!({ "equivalent": "Yes", "automorphism": w.automorphism, "witness": w.witness })
                }
                EquivalenceVerdict::No => json!({ "equivalent": "No" }),
                EquivalenceVerdict::Unknown(why) => json!({ "equivalent": "Unknown", "reason": why }),
            }
        }
        Command::Aspherical { input, cw2, presentation } => {
            if presentation {
                let p = GroupPresentation::parse(read_input(&input)?.trim()).map_err(|e| Failure::Parse(e.to_string()))?;
                let dp = build_dp(&p);
                let edges: Vec<Value> = dp
                    .edges
                    .iter()
                    .map(|e| json!([dp.names[e.source], dp.names[e.target], p.format_word(&e.color)]))
                    .collect();
                let mut report = aspherical_json(&aspherical_presentation(&p), &p);
                report["digraph"] = json!({ "vertices": dp.names, "edges": edges });
                report
            } else {
                let x = read_poset(&input)?;
                let r = aspherical_2complex(&x, cw2).map_err(domain)?;
                let pres = pi1_presentation(&x, 0, None).map_err(domain)?.presentation;
                aspherical_json(&r, &pres)
            }
        }
        Command::Board { kind, n, m, action } => {
            let b = board(kind, n, m).map_err(domain)?;
            match action {
                BoardAction::Classes => json!({
                    "kind": kind.to_string(), "n": n, "m": m,
                    "vertices": b.vertex_count(), "edges": b.edge_count(), "squares": b.squares().len(),
                    "classes": count_classes(&b),
                }),
                BoardAction::Valid { coloring } => {
                    json!({ "valid": is_valid(&b, &read_board_coloring(&coloring)?).map_err(domain)? })
                }
                BoardAction::Equiv { first, second } => {
                    let (c1, c2) = (read_board_coloring(&first)?, read_board_coloring(&second)?);
                    match moves_equivalent(&b, &c1, &c2).map_err(domain)? {
                        MoveEquivalence::Yes(vs) => {
                            let at: Vec<(usize, usize)> = vs.iter().map(|&v| b.coords(v)).collect();
                            json!({ "equivalent": true, "moves": at })
                        }
                        MoveEquivalence::No => json!({ "equivalent": false }),
                    }
                }
            }
        }
        Command::Core { input, dot } => {
            let c = read_poset(&input)?.core();
            if dot {
                return Ok(Output::Text(c.to_dot()));
            }
            serde_json::to_value(PosetDoc::from_poset(&c)).unwrap()
        }
        Command::Milnor { group, total } => {
            let g = match GroupSpec::Literal(group).build()? {
                AnyGroup::Finite(g) => g,
                _ => return Err(domain("NotFiniteGroup: the Milnor model needs a finite group")),
            };
            let mc = milnor_poset(&g).map_err(domain)?;
            if total {
                cover_json(&mc.covering)
            } else {
                serde_json::to_value(PosetDoc::from_poset(&mc.quotient)).unwrap()
            }
        }
        Command::Verify { input } => {
            let doc: MapDoc = serde_json::from_value(read_json(&input)?).map_err(|e| Failure::Parse(e.to_string()))?;
            let f = doc.to_map()?;
            match verify_covering(&f) {
                Ok(()) => {
                    let sheets = CoveringMap::new(f).map_err(domain)?.sheets();
                    json!({ "covering": true, "sheets": sheets })
                }
                Err(v) => {
                    return Err(Failure::Domain {
                        name: "NotACovering".into(),
                        report: json!({ "error": "NotACovering", "counterexample": violation_json(&f, &v) }),
                    });
                }
            }
        }
        Command::Corpus { inject_fault, seed } => {
            let results = corpus::run(&CorpusOptions { seed, inject_fault });
            let text = corpus::format_report(&results);
            if results.iter().all(|r| r.passed) {
                return Ok(Output::Text(text));
            }
            return Err(Failure::Domain { name: "CorpusFailure".into(), report: Value::String(text) });
        }
    };
    Ok(Output::Json(out))
}

fn violation_json(f: &posetop_core::MonotoneMap, v: &posetop_core::covering::CoveringViolation) -> Value {
    use posetop_core::covering::CoveringViolation as V;
    let t = |i: usize| f.target().label(i).to_string();
    let s = |i: usize| f.source().label(i).to_string();
    let (kind, element, message) = match *v {
        V::NotSurjective { missed } => ("NotSurjective", t(missed), format!("base element {} is not hit", t(missed))),
        V::DownSet { element } => {
            ("DownSet", s(element), format!("the map is not a bijection from U_{} onto its image's down-set", s(element)))
        }
        V::UpSet { element } => {
            ("UpSet", s(element), format!("the map is not a bijection from F_{} onto its image's up-set", s(element)))
        }
        V::Chain { base_chain_top } => (
            "Chain",
            t(base_chain_top),
            format!("the preimage of a chain ending at {} is not a disjoint union of copies", t(base_chain_top)),
        ),
    };
    json!({ "kind": kind, "element": element, "message": message })
}

/// Parses `argv` (including the program name), runs the verb and writes the
/// report; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap());
            0
        }
        Ok(Output::Text(s)) => {
            let _ = write!(out, "{s}");
            0
        }
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "ParseError: {}", msg.strip_prefix("ParseError: ").unwrap_or(&msg));
            2
        }
        Err(Failure::Domain { name, report }) => {
            match report {
                Value::String(s) => {
                    let _ = write!(out, "{s}");
                }
                v => {
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            let _ = writeln!(err, "{name}");
            1
        }
    }
}
