use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{FgAbelianGroup, GroupError, Letter, Word};
use crate::linalg::{smith_decomposition, IntMatrix};

/// A finite presentation `⟨generators | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        let mut seen = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.clone(), i).is_some() {
                return Err(GroupError::Parse(format!("generator `{g}` declared twice")));
            }
        }
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| l.generator >= generators.len()) {
                return Err(GroupError::UnknownGenerator(format!("#{}", l.generator)));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    /// Parses `<a, b | a b a^-1 b^-1, a^2>`. Letters are separated by
    /// whitespace; `x^k` abbreviates a power and juxtaposed single-character
    /// generators such as `ab` are split.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .or_else(|| t.strip_prefix('⟨').and_then(|s| s.strip_suffix('⟩')))
            .ok_or_else(|| GroupError::Parse("presentation must be enclosed in < >".into()))?;
        let (gens, rels) = match inner.split_once('|') {
            Some((g, r)) => (g, r),
            None => (inner, ""),
        };
        let generators: Vec<String> =
            gens.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
        for g in &generators {
            if !g.chars().all(is_ident_char) {
                return Err(GroupError::Parse(format!("invalid generator name `{g}`")));
            }
        }
        let shell = GroupPresentation::new(generators, Vec::new())?;
        let mut relators = Vec::new();
        for r in rels.split(',') {
            if r.trim().is_empty() {
                continue;
            }
            relators.push(shell.parse_word(r)?);
        }
        GroupPresentation::new(shell.generators, relators)
    }

    /// Parses a word over this presentation's generators; `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        let index: BTreeMap<&str, usize> =
            self.generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let mut word = Word::empty();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '*' || c == '·' {
                i += 1;
                continue;
            }
            if c == '(' || c == ')' {
                return Err(GroupError::Parse("parentheses are not supported in words".into()));
            }
            if !is_ident_char(c) {
                return Err(GroupError::Parse(format!("unexpected character `{c}`")));
            }
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let ident: String = chars[start..i].iter().collect();
            let mut exp: i64 = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let s = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[s..i].iter().collect();
                exp = num.parse().map_err(|_| GroupError::Parse(format!("bad exponent `{num}`")))?;
            }
            let pieces: Vec<usize> = if ident == "1" {
                Vec::new()
            } else if let Some(&g) = index.get(ident.as_str()) {
                alloc::vec![g]
            } else {
                // split juxtaposed single-character generators
                let mut v = Vec::new();
                for ch in ident.chars() {
                    let mut buf = [0u8; 4];
                    let key: &str = ch.encode_utf8(&mut buf);
                    v.push(*index.get(key).ok_or_else(|| GroupError::UnknownGenerator(ident.clone()))?);
                }
                v
            };
            // the exponent binds to the last letter only
            if let Some((&last, rest)) = pieces.split_last() {
                for &g in rest {
                    word.push(Letter::new(g, false));
                }
                word = word.concat(&Word::power_of(last, exp));
            }
        }
        Ok(word)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn format_word(&self, w: &Word) -> String {
        format_word_with(w, |g| self.generators[g].as_str())
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> =
            self.relators.iter().map(|r| r.exponent_sums(self.generators.len())).collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, self.generators.len())
        } else {
            IntMatrix::from_rows(&rows)
        }
    }

    pub fn abelianization(&self) -> Abelianization {
        let n = self.generators.len();
        let m = self.relation_matrix();
        let d = smith_decomposition(&m);
        let r = d.rank();
        let mut torsion_coords = Vec::new();
        for (j, inv) in d.invariants.iter().enumerate() {
            if !inv.is_zero() && *inv != BigInt::from(1) {
                torsion_coords.push((j, inv.to_u64().expect("small torsion")));
            }
        }
        let group = FgAbelianGroup::new(n - r, &torsion_coords.iter().map(|&(_, d)| d).collect::<Vec<_>>());
        Abelianization { group, change: d.right, rank: r, torsion_coords }
    }
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn format_word_with<'a>(w: &Word, name: impl Fn(usize) -> &'a str) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let k = (j - i) as i64 * letters[i].exponent();
        let g = name(letters[i].generator);
        parts.push(if k == 1 { g.to_string() } else { format!("{g}^{k}") });
        i = j;
    }
    parts.join(" ")
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

/// `G/[G,G]` of a presentation together with the projection of words.
#[derive(Clone, Debug)]
pub struct Abelianization {
    group: FgAbelianGroup,
    /// Unimodular basis change: coordinates of a word are `exponents · change`.
    change: Vec<Vec<BigInt>>,
    rank: usize,
    torsion_coords: Vec<(usize, u64)>,
}

impl Abelianization {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Image of a word as an element of [`Abelianization::group`].
    pub fn project(&self, w: &Word) -> Vec<i64> {
        let n = self.change.len();
        let x = w.exponent_sums(n);
        let coord = |j: usize| -> BigInt { (0..n).map(|i| BigInt::from(x[i]) * &self.change[i][j]).sum() };
        let mut out = Vec::with_capacity(self.group.dimension());
        for j in self.rank..n {
            out.push(coord(j).to_i64().expect("abelianized coordinate fits in i64"));
        }
        for &(j, d) in &self.torsion_coords {
            let v = coord(j);
            let m = BigInt::from(d);
            let mut r = v % &m;
            if r.is_negative() {
                r += &m;
            }
            out.push(r.to_i64().unwrap());
        }
        out
    }

    pub fn is_zero(&self, w: &Word) -> bool {
        self.project(w).iter().all(|&v| v == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parse_and_display() {
        let p = GroupPresentation::parse("<a, b | a b a^-1 b^-1>").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators()[0].len(), 4);
        assert_eq!(p.to_string(), "<a, b | a b a^-1 b^-1>");
        let q = GroupPresentation::parse("<a, b, c, d, e | b^2 c a^-1 b^-1 d b a, c^-1 d e b e>").unwrap();
        assert_eq!(q.relators()[0].len(), 8);
        assert_eq!(GroupPresentation::parse(&q.to_string()).unwrap(), q);
        let juxt = GroupPresentation::parse("<a, b | abab^-1>").unwrap();
        assert_eq!(juxt.relators()[0].len(), 4);
        assert!(GroupPresentation::parse("<a | b>").is_err());
        assert!(GroupPresentation::parse("a | a").is_err());
        assert_eq!(GroupPresentation::parse("<a |>").unwrap().relators().len(), 0);
    }

    #[test]
    fn abelianizations() {
        let z = GroupPresentation::parse("<a | >").unwrap().abelianization();
        assert_eq!(z.group().invariants(), (1, vec![]));
        let klein = GroupPresentation::parse("<a, b | a b a b^-1>").unwrap();
        let ab = klein.abelianization();
        assert_eq!(ab.group().invariants(), (1, vec![2]));
        // a has order two, b infinite order
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert!(!ab.is_zero(&a));
        assert!(ab.is_zero(&a.pow(2)));
        assert!(ab.group().has_infinite_order(&ab.project(&b)));
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let p = GroupPresentation::parse("<a, b, c | a^4 b^-6, c^3 a^2>").unwrap();
        let ab = p.abelianization();
        let g = ab.group().clone();
        use crate::group::Group;
        let x = p.parse_word("a b^2 c").unwrap();
        let y = p.parse_word("c^-1 a^3").unwrap();
        assert_eq!(ab.project(&x.concat(&y)), g.op(&ab.project(&x), &ab.project(&y)));
        for r in p.relators() {
            assert!(ab.is_zero(r));
        }
    }
}
