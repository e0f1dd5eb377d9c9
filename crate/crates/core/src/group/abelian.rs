use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{Group, Truth};
use crate::linalg::{smith_form, IntMatrix};

/// `Z^rank ⊕ Z_{d1} ⊕ … ⊕ Z_{dk}`. Elements are integer vectors with the
/// free coordinates first and torsion coordinates reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
}

impl FgAbelianGroup {
    /// Torsion orders equal to one are dropped; zero is not allowed.
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        assert!(torsion.iter().all(|&d| d > 0), "torsion orders must be positive");
        FgAbelianGroup { rank, torsion: torsion.iter().copied().filter(|&d| d > 1).collect() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup::new(rank, &[])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn dimension(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Divisor-chain invariants, for comparing presentations of the same group.
    pub fn invariants(&self) -> (usize, Vec<u64>) {
        let t = self.torsion.len();
        let mut m = IntMatrix::zeros(t, t);
        for (i, &d) in self.torsion.iter().enumerate() {
            m.set(i, i, d as i64);
        }
        let chain = smith_form(&m)
            .torsion()
            .iter()
            .map(|d| d.to_u64().expect("small torsion"))
            .collect();
        (self.rank, chain)
    }

    pub fn is_isomorphic(&self, other: &FgAbelianGroup) -> bool {
        self.invariants() == other.invariants()
    }

    pub fn is_trivial(&self) -> bool {
        self.dimension() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn reduce(&self, v: &mut [i64]) {
        assert_eq!(v.len(), self.dimension());
        for (i, &d) in self.torsion.iter().enumerate() {
            v[self.rank + i] = v[self.rank + i].rem_euclid(d as i64);
        }
    }

    /// True iff some free coordinate is nonzero.
    pub fn has_infinite_order(&self, v: &[i64]) -> bool {
        v[..self.rank].iter().any(|&x| x != 0)
    }

    pub fn element_order(&self, v: &[i64]) -> Option<u64> {
        if self.has_infinite_order(v) {
            return None;
        }
        let mut l = 1u64;
        for (i, &d) in self.torsion.iter().enumerate() {
            let x = v[self.rank + i].rem_euclid(d as i64) as u64;
            let o = d / num_integer::gcd(d, x);
            l = num_integer::lcm(l, o);
        }
        Some(l)
    }
}

impl core::fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z_{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Group for FgAbelianGroup {
    type Element = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        alloc::vec![0; self.dimension()]
    }

    fn op(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let mut v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut v);
        v
    }

    fn inverse(&self, a: &Vec<i64>) -> Vec<i64> {
        let mut v: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&mut v);
        v
    }

    fn equals(&self, a: &Vec<i64>, b: &Vec<i64>) -> Truth {
        let mut x = a.clone();
        let mut y = b.clone();
        self.reduce(&mut x);
        self.reduce(&mut y);
        Truth::from(x == y)
    }

    /// The span of `elements` together with the torsion relations is the
    /// whole lattice iff the Smith form is the identity.
    fn generated_by(&self, elements: &[Vec<i64>]) -> Truth {
        let dim = self.dimension();
        if dim == 0 {
            return Truth::Yes;
        }
        let cols = elements.len() + self.torsion.len();
        let mut m = IntMatrix::zeros(dim, cols);
        for (j, e) in elements.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, e[i]);
            }
        }
        for (k, &d) in self.torsion.iter().enumerate() {
            m.set(self.rank + k, elements.len() + k, d as i64);
        }
        let s = smith_form(&m);
        Truth::from(s.rank() == dim && s.torsion().is_empty())
    }

    fn format_element(&self, a: &Vec<i64>) -> String {
        let items: Vec<String> = a.iter().map(|x| format!("{x}")).collect();
        format!("[{}]", items.join(","))
    }

    fn describe(&self) -> String {
        format!("{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn generation() {
        let z2 = FgAbelianGroup::free(2);
        assert_eq!(z2.generated_by(&[vec![1, 0], vec![0, 1]]), Truth::Yes);
        assert_eq!(z2.generated_by(&[vec![2, 0], vec![0, 1]]), Truth::No);
        assert_eq!(z2.generated_by(&[vec![2, 1], vec![1, 1]]), Truth::Yes);
        let z6 = FgAbelianGroup::new(0, &[6]);
        assert_eq!(z6.generated_by(&[vec![5]]), Truth::Yes);
        assert_eq!(z6.generated_by(&[vec![2]]), Truth::No);
        assert_eq!(z6.generated_by(&[vec![2], vec![3]]), Truth::Yes);
    }

    #[test]
    fn invariants_are_canonical() {
        let a = FgAbelianGroup::new(1, &[2, 3]);
        let b = FgAbelianGroup::new(1, &[6]);
        assert!(a.is_isomorphic(&b));
        assert_eq!(a.invariants(), (1, vec![6]));
        assert_eq!(format!("{}", FgAbelianGroup::new(1, &[2])), "Z + Z_2");
        assert_eq!(a.element_order(&[0, 1, 1]), Some(6));
        assert_eq!(a.element_order(&[1, 0, 0]), None);
    }
}
