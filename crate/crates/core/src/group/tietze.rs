use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Abelianization, FgAbelianGroup, Group, GroupPresentation, Letter, Truth, Word};

/// Default number of letter rewrites a simplification may spend.
pub const DEFAULT_BUDGET: usize = 10_000;

/// Groups that simplification can recognise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnownGroup {
    Integers,
    Cyclic(u64),
    Free(usize),
    /// Any abelian group, given by its invariants.
    Abelian(FgAbelianGroup),
}

impl fmt::Display for KnownGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnownGroup::Integers => f.write_str("Z"),
            KnownGroup::Cyclic(n) => write!(f, "Z_{n}"),
            KnownGroup::Free(k) => write!(f, "F_{k}"),
            KnownGroup::Abelian(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Trivial,
    IsomorphicTo(KnownGroup),
    Unknown,
}

impl Verdict {
    /// The group is known to be abelian (hence equal to its abelianization).
    pub fn is_abelian(&self) -> bool {
        matches!(
            self,
            Verdict::Trivial
                | Verdict::IsomorphicTo(KnownGroup::Integers | KnownGroup::Cyclic(_) | KnownGroup::Abelian(_))
        )
    }

    /// Order of the group if it is certified finite.
    pub fn finite_order(&self) -> Option<u64> {
        match self {
            Verdict::Trivial => Some(1),
            Verdict::IsomorphicTo(KnownGroup::Cyclic(n)) => Some(*n),
            Verdict::IsomorphicTo(KnownGroup::Abelian(g)) => g.order(),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Trivial => f.write_str("trivial"),
            Verdict::IsomorphicTo(g) => write!(f, "{g}"),
            Verdict::Unknown => f.write_str("unknown"),
        }
    }
}

/// Result of Tietze simplification.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// Image of each original generator as a word in the simplified generators.
    pub substitution: Vec<Word>,
    pub verdict: Verdict,
    pub steps: usize,
    /// True when the budget ran out before no move was left.
    pub exhausted: bool,
}

impl Simplified {
    /// Rewrites a word over the original generators.
    pub fn translate(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for l in w.letters() {
            let image = &self.substitution[l.generator];
            out = out.concat(&if l.inverse { image.inverse() } else { image.clone() });
        }
        out.free_reduce()
    }
}

fn normalize(relators: Vec<Word>) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in relators {
        let r = r.cyclic_reduce();
        if r.is_empty() {
            continue;
        }
        if seen.insert(r.relator_class()) {
            out.push(r);
        }
    }
    out
}

fn commutator(i: usize, j: usize) -> Word {
    Word(vec![Letter::new(i, false), Letter::new(j, false), Letter::new(i, true), Letter::new(j, true)])
}

fn verdict_of(p: &GroupPresentation) -> Verdict {
    let k = p.generator_count();
    if k == 0 {
        return Verdict::Trivial;
    }
    if p.relators().is_empty() {
        return Verdict::IsomorphicTo(if k == 1 { KnownGroup::Integers } else { KnownGroup::Free(k) });
    }
    let classes: BTreeSet<Word> = p.relators().iter().map(Word::relator_class).collect();
    let abelian = k == 1
        || (0..k).all(|i| (i + 1..k).all(|j| classes.contains(&commutator(i, j).relator_class())));
    if !abelian {
        return Verdict::Unknown;
    }
    let g = p.abelianization().group().clone();
    let (rank, torsion) = g.invariants();
    match (rank, torsion.as_slice()) {
        (0, []) => Verdict::Trivial,
        (1, []) => Verdict::IsomorphicTo(KnownGroup::Integers),
        (0, [n]) => Verdict::IsomorphicTo(KnownGroup::Cyclic(*n)),
        _ => Verdict::IsomorphicTo(KnownGroup::Abelian(FgAbelianGroup::new(rank, &torsion))),
    }
}

impl GroupPresentation {
    /// Tietze simplification within `budget` letter rewrites: free and cyclic
    /// reduction, removal of duplicate relators, and elimination of any
    /// generator occurring exactly once in some relator (shortest relator
    /// first). The verdict only claims what the final presentation certifies.
    pub fn simplify(&self, budget: usize) -> Simplified {
        let n = self.generator_count();
        let mut alive = vec![true; n];
        let mut subst: Vec<Word> = (0..n).map(Word::generator).collect();
        let mut relators = normalize(self.relators().to_vec());
        let mut steps = 0;
        let mut exhausted = false;
        loop {
            let mut best: Option<(usize, usize, usize)> = None; // (len, relator, generator)
            for (ri, r) in relators.iter().enumerate() {
                if best.is_some_and(|(len, _, _)| len <= r.len()) {
                    continue;
                }
                let mut count = vec![0usize; n];
                for l in r.letters() {
                    count[l.generator] += 1;
                }
                if let Some(g) = (0..n).find(|&g| count[g] == 1) {
                    best = Some((r.len(), ri, g));
                }
            }
            let Some((_, ri, g)) = best else { break };
            let cost: usize = relators.iter().filter(|r| r.occurrences(g) > 0).map(Word::len).sum::<usize>()
                + subst.iter().filter(|s| s.occurrences(g) > 0).map(Word::len).sum::<usize>();
            if steps + cost > budget {
                exhausted = true;
                break;
            }
            steps += cost;
            let r = relators.remove(ri);
            let pos = r.letters().iter().position(|l| l.generator == g).unwrap();
            let rot = r.rotate(pos);
            let rest = Word(rot.letters()[1..].to_vec());
            // g^ε · rest = 1  ⇒  g = rest^{-ε}
            let expr = if rot.letters()[0].inverse { rest } else { rest.inverse() }.free_reduce();
            relators = normalize(relators.iter().map(|w| w.substitute(g, &expr)).collect());
            for s in subst.iter_mut() {
                *s = s.substitute(g, &expr).free_reduce();
            }
            alive[g] = false;
        }
        let kept: Vec<usize> = (0..n).filter(|&g| alive[g]).collect();
        let mut renumber = vec![usize::MAX; n];
        for (i, &g) in kept.iter().enumerate() {
            renumber[g] = i;
        }
        let presentation = GroupPresentation::new(
            kept.iter().map(|&g| self.generators()[g].clone()).collect(),
            relators.iter().map(|r| r.map_generators(|g| renumber[g])).collect(),
        )
        .expect("simplified presentation is well formed");
        let substitution = subst.iter().map(|s| s.map_generators(|g| renumber[g])).collect();
        let verdict = verdict_of(&presentation);
        Simplified { presentation, substitution, verdict, steps, exhausted }
    }

    /// Three-valued triviality test for a word, sound but incomplete.
    pub fn word_is_trivial(&self, w: &Word, budget: usize) -> Truth {
        word_is_trivial_in(self, &self.simplify(budget), &self.abelianization(), w)
    }

    /// `Yes` when the image of `w` in the abelianization has a nonzero free
    /// coordinate (so `w` has infinite order); `Unknown` otherwise.
    pub fn has_infinite_order_abelian_certificate(&self, w: &Word) -> Truth {
        let ab = self.abelianization();
        if ab.group().has_infinite_order(&ab.project(w)) {
            Truth::Yes
        } else {
            Truth::Unknown
        }
    }
}

fn word_is_trivial_in(original: &GroupPresentation, s: &Simplified, ab: &Abelianization, w: &Word) -> Truth {
    let image = s.translate(w);
    if image.is_empty() {
        return Truth::Yes;
    }
    if s.presentation.relators().is_empty() {
        // nonempty reduced word in a free group
        return Truth::No;
    }
    if s.verdict.is_abelian() {
        return Truth::from(s.presentation.abelianization().is_zero(&image));
    }
    if !ab.is_zero(w) {
        return Truth::No;
    }
    let class = image.cyclic_reduce().relator_class();
    if s.presentation.relators().iter().any(|r| r.relator_class() == class)
        || original.relators().iter().any(|r| r.relator_class() == w.cyclic_reduce().relator_class())
    {
        return Truth::Yes;
    }
    Truth::Unknown
}

#[derive(Debug)]
struct PresentedData {
    presentation: GroupPresentation,
    simplified: Simplified,
    abelianization: Abelianization,
}

/// A finitely presented group; elements are words. Equality is decided by
/// the sound-but-incomplete triviality test and may be `Unknown`.
#[derive(Clone, Debug)]
pub struct PresentedGroup(Arc<PresentedData>);

impl PresentedGroup {
    pub fn new(presentation: GroupPresentation, budget: usize) -> Self {
        let simplified = presentation.simplify(budget);
        let abelianization = presentation.abelianization();
        PresentedGroup(Arc::new(PresentedData { presentation, simplified, abelianization }))
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.0.presentation
    }

    pub fn simplified(&self) -> &Simplified {
        &self.0.simplified
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.0.abelianization
    }

    pub fn is_trivial_word(&self, w: &Word) -> Truth {
        word_is_trivial_in(&self.0.presentation, &self.0.simplified, &self.0.abelianization, w)
    }
}

impl PartialEq for PresentedGroup {
    fn eq(&self, other: &Self) -> bool {
        self.0.presentation == other.0.presentation
    }
}

impl Group for PresentedGroup {
    type Element = Word;

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn op(&self, a: &Word, b: &Word) -> Word {
        a.concat(b).free_reduce()
    }

    fn inverse(&self, a: &Word) -> Word {
        a.inverse()
    }

    fn equals(&self, a: &Word, b: &Word) -> Truth {
        self.is_trivial_word(&a.concat(&b.inverse()))
    }

    fn generated_by(&self, elements: &[Word]) -> Truth {
        let ab = &self.0.abelianization;
        let images: Vec<Vec<i64>> = elements.iter().map(|w| ab.project(w)).collect();
        if ab.group().generated_by(&images) == Truth::No {
            return Truth::No;
        }
        let s = &self.0.simplified;
        if s.verdict.is_abelian() {
            return Truth::Yes;
        }
        let mut singles = BTreeSet::new();
        for w in elements {
            let t = s.translate(w);
            if t.len() == 1 {
                singles.insert(t.letters()[0].generator);
            }
        }
        if singles.len() == s.presentation.generator_count() {
            return Truth::Yes;
        }
        Truth::Unknown
    }

    fn format_element(&self, a: &Word) -> String {
        self.0.presentation.format_word(a)
    }

    fn describe(&self) -> String {
        self.0.presentation.to_string()
    }
}

impl fmt::Display for Simplified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.presentation, self.verdict)
    }
}

/// Shorthand used by reports.
pub fn describe_verdict(v: &Verdict) -> String {
    match v {
        Verdict::Unknown => "Unknown".to_string(),
        other => format!("{other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GroupPresentation {
        GroupPresentation::parse(s).unwrap()
    }

    #[test]
    fn verdicts() {
        assert_eq!(p("<a, b | a, b>").simplify(DEFAULT_BUDGET).verdict, Verdict::Trivial);
        assert_eq!(p("<a, b | b>").simplify(DEFAULT_BUDGET).verdict, Verdict::IsomorphicTo(KnownGroup::Integers));
        assert_eq!(p("<a | a^2>").simplify(DEFAULT_BUDGET).verdict, Verdict::IsomorphicTo(KnownGroup::Cyclic(2)));
        assert_eq!(p("<a, b | >").simplify(DEFAULT_BUDGET).verdict, Verdict::IsomorphicTo(KnownGroup::Free(2)));
        assert_eq!(p("<a, b | a b a^-1 b^-1>").simplify(DEFAULT_BUDGET).verdict, Verdict::IsomorphicTo(KnownGroup::Abelian(FgAbelianGroup::free(2))));
        assert_eq!(p("<a, b | a b a^-1 b^-1, a^2, b^3>").simplify(DEFAULT_BUDGET).verdict, Verdict::IsomorphicTo(KnownGroup::Cyclic(6)));
        assert_eq!(p("<a, b | a^2, b^3, a b a b>").simplify(DEFAULT_BUDGET).verdict, Verdict::Unknown);
        // b = a^-1 then a^3
        assert_eq!(p("<a, b | a b, a^3>").simplify(DEFAULT_BUDGET).verdict, Verdict::IsomorphicTo(KnownGroup::Cyclic(3)));
    }

    #[test]
    fn simplification_keeps_abelianization() {
        for s in ["<a, b, c | a b c^-1, c a^-2, b^4>", "<a, b, c, d, e | b^2 c a^-1 b^-1 d b a, c^-1 d e b e>", "<x, y | x y x y^-1>"] {
            let q = p(s);
            let simple = q.simplify(DEFAULT_BUDGET);
            assert!(simple.presentation.abelianization().group().is_isomorphic(q.abelianization().group()), "{s}");
            // substitution respects relators
            for r in q.relators() {
                let image = simple.translate(r);
                assert!(simple.presentation.abelianization().is_zero(&image));
            }
        }
    }

    #[test]
    fn tiny_budget_stops_early() {
        let s = p("<a, b, c | a b c^-1, c a^-2, b^4>").simplify(0);
        assert!(s.exhausted);
        assert_eq!(s.presentation.generator_count(), 3);
    }

    #[test]
    fn word_triviality() {
        let z2 = p("<a | a^2>");
        assert_eq!(z2.word_is_trivial(&Word::power_of(0, 2), DEFAULT_BUDGET), Truth::Yes);
        assert_eq!(z2.word_is_trivial(&Word::generator(0), DEFAULT_BUDGET), Truth::No);
        let free = p("<a, b | >");
        assert_eq!(free.word_is_trivial(&free.parse_word("a b a^-1 b^-1").unwrap(), DEFAULT_BUDGET), Truth::No);
        let hard = p("<a, b | a^2, b^3, a b a b>");
        assert_eq!(hard.word_is_trivial(&hard.parse_word("b a b a").unwrap(), DEFAULT_BUDGET), Truth::Yes);
    }

    #[test]
    fn infinite_order_certificates() {
        assert_eq!(p("<a | >").has_infinite_order_abelian_certificate(&Word::generator(0)), Truth::Yes);
        assert_eq!(p("<a | a^2>").has_infinite_order_abelian_certificate(&Word::generator(0)), Truth::Unknown);
        let two_relator = p("<a, b, c, d, e | b^2 c a^-1 b^-1 d b a, c^-1 d e b e>");
        let w = two_relator.parse_word("c^-1 b a b^2 c").unwrap();
        assert_eq!(two_relator.has_infinite_order_abelian_certificate(&w), Truth::Yes);
    }

    #[test]
    fn presented_group_generation() {
        let g = PresentedGroup::new(p("<a, b | a b a^-1 b^-1>"), DEFAULT_BUDGET);
        assert_eq!(g.generated_by(&[Word::generator(0)]), Truth::No);
        assert_eq!(g.generated_by(&[Word::generator(0), Word::generator(1)]), Truth::Yes);
        let f = PresentedGroup::new(p("<a, b | >"), DEFAULT_BUDGET);
        assert_eq!(f.generated_by(&[Word::generator(0), Word::generator(1)]), Truth::Yes);
        assert_eq!(f.equals(&Word::generator(0), &Word::generator(1)), Truth::No);
    }
}
