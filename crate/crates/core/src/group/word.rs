use alloc::vec;
use alloc::vec::Vec;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word in the generators of a free group; not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Word {
        Word(vec![Letter::new(g, false)])
    }

    pub fn generator_inverse(g: usize) -> Word {
        Word(vec![Letter::new(g, true)])
    }

    /// `g^k` for any integer `k`.
    pub fn power_of(g: usize, k: i64) -> Word {
        Word(vec![Letter::new(g, k < 0); k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Freely and cyclically reduced form.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce().0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    /// Rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::empty();
        }
        let mut v = self.0[k % n..].to_vec();
        v.extend_from_slice(&self.0[..k % n]);
        Word(v)
    }

    /// Canonical representative of the relator class: least rotation of the
    /// cyclically reduced word or of its inverse.
    pub fn relator_class(&self) -> Word {
        let w = self.cyclic_reduce();
        let inv = w.inverse();
        (0..w.len().max(1))
            .flat_map(|k| [w.rotate(k), inv.rotate(k)])
            .min()
            .unwrap_or_default()
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.0 {
            v[l.generator] += l.exponent();
        }
        v
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.generator == g).count()
    }

    /// Replaces every letter of generator `g` by `replacement` (inverted for
    /// inverse letters).
    pub fn substitute(&self, g: usize, replacement: &Word) -> Word {
        let inv = replacement.inverse();
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if l.generator == g {
                out.extend_from_slice(if l.inverse { &inv.0 } else { &replacement.0 });
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Applies `f` to every generator index.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|l| Letter::new(f(l.generator), l.inverse)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(spec: &[(usize, bool)]) -> Word {
        Word(spec.iter().map(|&(g, i)| Letter::new(g, i)).collect())
    }

    #[test]
    fn reductions() {
        let x = w(&[(0, false), (1, false), (1, true), (0, true)]);
        assert!(x.free_reduce().is_empty());
        let y = w(&[(1, true), (0, false), (0, false), (1, false)]);
        assert_eq!(y.cyclic_reduce(), Word::power_of(0, 2));
        let z = w(&[(0, false), (1, false)]);
        assert!(z.concat(&z.inverse()).free_reduce().is_empty());
    }

    #[test]
    fn relator_classes_identify_rotations_and_inverses() {
        let r = w(&[(0, false), (1, false), (0, true), (1, true)]);
        assert_eq!(r.relator_class(), r.rotate(2).relator_class());
        assert_eq!(r.relator_class(), r.inverse().relator_class());
    }

    #[test]
    fn substitution() {
        let r = w(&[(0, false), (1, true)]);
        let s = r.substitute(1, &w(&[(2, false), (3, false)]));
        assert_eq!(s, w(&[(0, false), (3, true), (2, true)]));
        assert_eq!(s.exponent_sums(4), vec![1, 0, -1, -1]);
    }
}
