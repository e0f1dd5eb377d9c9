//! Groups: finite tables, finitely generated abelian groups and finite
//! presentations.

mod abelian;
mod finite;
mod presentation;
mod tietze;
mod word;

use alloc::string::String;
use core::fmt::Debug;

pub use abelian::FgAbelianGroup;
pub use finite::{FiniteGroup, AUTOMORPHISM_BOUND};
pub use presentation::{Abelianization, GroupPresentation};
pub use tietze::{describe_verdict, KnownGroup, PresentedGroup, Simplified, Verdict, DEFAULT_BUDGET};
pub use word::{Letter, Word};

/// Three-valued answer for questions that are undecidable in general.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }
}

impl Truth {
    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::No, _) | (_, Truth::No) => Truth::No,
            (Truth::Yes, Truth::Yes) => Truth::Yes,
            _ => Truth::Unknown,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Truth::Yes
    }
}

impl core::fmt::Display for Truth {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Truth::Yes => "Yes",
            Truth::No => "No",
            Truth::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("InvalidTable: {0}")]
    InvalidTable(String),
    #[error("GroupTooLarge: order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("UnknownGenerator: `{0}`")]
    UnknownGenerator(String),
    #[error("UnknownElement: `{0}`")]
    UnknownElement(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

/// The operations colorings need from a group. Equality may be undecidable,
/// so it is three-valued; for finite and abelian groups it is exact.
pub trait Group: Clone + Debug {
    type Element: Clone + Debug + PartialEq + Eq + PartialOrd + Ord;

    fn identity(&self) -> Self::Element;
    fn op(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;
    fn equals(&self, a: &Self::Element, b: &Self::Element) -> Truth;
    /// Whether `elements` generate the whole group.
    fn generated_by(&self, elements: &[Self::Element]) -> Truth;
    fn format_element(&self, a: &Self::Element) -> String;
    fn describe(&self) -> String;

    fn is_identity(&self, a: &Self::Element) -> Truth {
        self.equals(a, &self.identity())
    }

    fn as_finite(&self) -> Option<&FiniteGroup> {
        None
    }
}

/// Left-to-right product of a word under an assignment of the generators.
pub fn evaluate<G: Group>(
    group: &G,
    word: &Word,
    assignment: &[G::Element],
) -> Result<G::Element, GroupError> {
    let mut acc = group.identity();
    for l in word.letters() {
        let g = assignment
            .get(l.generator)
            .ok_or_else(|| GroupError::UnknownGenerator(alloc::format!("#{}", l.generator)))?;
        let x = if l.inverse { group.inverse(g) } else { g.clone() };
        acc = group.op(&acc, &x);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn evaluation() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(evaluate(&z2, &Word::empty(), &[1]).unwrap(), 0);
        assert_eq!(evaluate(&z2, &Word::power_of(0, 2), &[1]).unwrap(), 0);
        assert!(evaluate(&z2, &Word::generator(3), &[1]).is_err());
        let p = GroupPresentation::parse("<a, b, c, d, e | b^2 c a^-1 b^-1 d b a, c^-1 d e b e>").unwrap();
        let ab = p.abelianization();
        let w = p.parse_word("c^-1 b a b b c").unwrap();
        // in the free abelian group on the generators the word is a + 3b
        let free = FgAbelianGroup::free(5);
        let basis: vec::Vec<vec::Vec<i64>> =
            (0..5).map(|i| (0..5).map(|j| i64::from(i == j)).collect()).collect();
        assert_eq!(evaluate(&free, &w, &basis).unwrap(), vec![1, 3, 0, 0, 0]);
        assert!(ab.group().has_infinite_order(&ab.project(&w)));
    }
}
