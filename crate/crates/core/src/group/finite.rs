use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Group, GroupError, Truth};

#[derive(Debug, PartialEq, Eq)]
struct Table {
    name: String,
    names: Vec<String>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

/// A finite group given by its multiplication table. Elements are indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup(Arc<Table>);

/// Default cap on the order of groups whose automorphisms get enumerated.
pub const AUTOMORPHISM_BOUND: usize = 16;

impl FiniteGroup {
    /// Validates `table[a][b] = a·b`: closure, identity, inverses and
    /// associativity (exhaustive up to order 16, 10⁴ sampled triples above).
    pub fn from_table(name: &str, names: Vec<String>, table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if names.len() != n {
            return Err(GroupError::InvalidTable("one name per element required".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(GroupError::InvalidTable("table is not square".into()));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(GroupError::InvalidTable(format!("entry {bad} out of range")));
            }
            mul.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {a} has no inverse")))?;
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= 16 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::InvalidTable(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
        Ok(FiniteGroup(Arc::new(Table { name: name.to_string(), names, mul, inv, identity })))
    }

    fn from_fn(name: String, names: Vec<String>, op: impl Fn(usize, usize) -> usize) -> Self {
        let n = names.len();
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        FiniteGroup::from_table(&name, names, &table).expect("built-in group tables are valid")
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// `Z_n` with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        FiniteGroup::from_fn(format!("Z_{n}"), (0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
    }

    /// Direct product; `(a, b)` has index `a·|H| + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let mut names = Vec::new();
        for a in &self.0.names {
            for b in &other.0.names {
                names.push(format!("({a},{b})"));
            }
        }
        FiniteGroup::from_fn(format!("{}x{}", self.0.name, other.0.name), names, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
    }

    /// Dihedral group of order `2n`: `r^i s^j` has index `i + n·j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..2 * n)
            .map(|k| {
                let (i, j) = (k % n, k / n);
                match (i, j) {
                    (0, 0) => "1".to_string(),
                    (0, 1) => "s".to_string(),
                    (1, 0) => "r".to_string(),
                    (1, 1) => "r s".to_string(),
                    (i, 0) => format!("r^{i}"),
                    (i, _) => format!("r^{i} s"),
                }
            })
            .collect();
        FiniteGroup::from_fn(format!("D_{n}"), names, |a, b| {
            let (i, j, k, l) = (a % n, a / n, b % n, b / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            rot + n * ((j + l) % 2)
        })
    }

    /// Symmetric group on `0..n`; permutations in lexicographic order, composed
    /// right to left: `(p·q)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=6).contains(&n), "symmetric groups are supported up to S_6");
        let mut perms: Vec<Vec<usize>> = Vec::new();
        fn gen(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    gen(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        gen(&mut Vec::new(), &mut vec![false; n], &mut perms);
        let names = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let index = |p: &Vec<usize>| perms.binary_search(p).unwrap();
        FiniteGroup::from_fn(format!("S_{n}"), names, |a, b| {
            let c: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
            index(&c)
        })
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn order(&self) -> usize {
        self.0.names.len()
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.0.names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        self.0
            .names
            .iter()
            .position(|n| n.chars().filter(|c| !c.is_whitespace()).collect::<String>() == compact)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a]
    }

    pub fn id(&self) -> usize {
        self.0.identity
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.id();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.id() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The smallest subgroup containing `set`, sorted.
    pub fn subgroup_closure(&self, set: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.id()] = true;
        let mut queue = VecDeque::from([self.id()]);
        while let Some(x) = queue.pop_front() {
            for &s in set {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    /// A generating set chosen greedily by element index, preferring elements
    /// of large order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        by_order.sort_by_key(|&a| (core::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = self.subgroup_closure(&gens);
        for a in by_order {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    /// All automorphisms as image permutations, the identity first.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        self.automorphisms_bounded(AUTOMORPHISM_BOUND)
    }

    pub fn automorphisms_bounded(&self, bound: usize) -> Result<Vec<Vec<usize>>, GroupError> {
        let n = self.order();
        if n > bound {
            return Err(GroupError::GroupTooLarge { order: n, bound });
        }
        let gens = self.generating_set();
        let mut out = Vec::new();
        let mut images = Vec::new();
        self.extend_automorphisms(&gens, &mut images, &mut out);
        out.sort();
        let id: Vec<usize> = (0..n).collect();
        if let Some(pos) = out.iter().position(|p| *p == id) {
            out.swap(0, pos);
            out[1..].sort();
        }
        Ok(out)
    }

    fn extend_automorphisms(&self, gens: &[usize], images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if images.len() == gens.len() {
            if let Some(p) = self.extend_homomorphism(gens, images) {
                out.push(p);
            }
            return;
        }
        let g = gens[images.len()];
        let ord = self.element_order(g);
        for cand in 0..self.order() {
            if self.element_order(cand) == ord && !images.contains(&cand) {
                images.push(cand);
                self.extend_automorphisms(gens, images, out);
                images.pop();
            }
        }
    }

    /// The bijective homomorphism sending `gens[i] ↦ images[i]`, if any.
    fn extend_homomorphism(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.id()] = self.id();
        let mut queue = VecDeque::from([self.id()]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = self.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != n {
            return None;
        }
        // full homomorphism check; the BFS only enforced right multiplication by generators
        for a in 0..n {
            for b in 0..n {
                if map[self.mul(a, b)] != self.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

impl Group for FiniteGroup {
    type Element = usize;

    fn identity(&self) -> usize {
        self.id()
    }

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }

    fn inverse(&self, a: &usize) -> usize {
        self.inv(*a)
    }

    fn equals(&self, a: &usize, b: &usize) -> Truth {
        Truth::from(a == b)
    }

    fn generated_by(&self, elements: &[usize]) -> Truth {
        Truth::from(self.subgroup_closure(elements).len() == self.order())
    }

    fn format_element(&self, a: &usize) -> String {
        self.element_name(*a).to_string()
    }

    fn describe(&self) -> String {
        self.name().to_string()
    }

    fn as_finite(&self) -> Option<&FiniteGroup> {
        Some(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all bijections fixing the identity.
    fn brute_automorphism_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        let others: Vec<usize> = (0..n).filter(|&x| x != g.id()).collect();
        let mut count = 0;
        let mut perm = others.clone();
        fn permute(k: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
            if k == perm.len() {
                f(perm);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute(k + 1, perm, f);
                perm.swap(k, i);
            }
        }
        permute(0, &mut perm, &mut |p| {
            let mut map = vec![0; n];
            map[g.id()] = g.id();
            for (src, &dst) in others.iter().zip(p) {
                map[*src] = dst;
            }
            if (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == g.mul(map[a], map[b]))) {
                count += 1;
            }
        });
        count
    }

    #[test]
    fn rejects_non_groups() {
        let names = vec!["x".to_string(), "y".to_string()];
        let bad = FiniteGroup::from_table("bad", names.clone(), &[vec![0, 1], vec![1, 1]]);
        assert!(matches!(bad, Err(GroupError::InvalidTable(_))));
        // a Latin square with identity 0 that is not associative
        let names5: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let loop5 = [
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table("loop", names5, &loop5).is_err());
    }

    #[test]
    fn dihedral_generators() {
        let d3 = FiniteGroup::dihedral(3);
        assert_eq!(d3.order(), 6);
        let s = d3.element_by_name("s").unwrap();
        let r = d3.element_by_name("r").unwrap();
        let sr = d3.mul(s, r);
        assert_eq!(d3.subgroup_closure(&[sr, s]).len(), 6);
        assert_eq!(d3.subgroup_closure(&[d3.id()]), vec![d3.id()]);
        assert!(!d3.is_abelian());
        assert_eq!(d3.element_order(sr), 2);
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        for g in [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(6),
            FiniteGroup::dihedral(3),
            FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)),
            FiniteGroup::dihedral(4),
        ] {
            let auts = g.automorphisms().unwrap();
            assert_eq!(auts.len(), brute_automorphism_count(&g), "{}", g.name());
            assert_eq!(auts[0], (0..g.order()).collect::<Vec<_>>());
        }
        assert_eq!(FiniteGroup::cyclic(2).automorphisms().unwrap().len(), 1);
        assert_eq!(FiniteGroup::cyclic(3).automorphisms().unwrap().len(), 2);
        assert_eq!(FiniteGroup::dihedral(3).automorphisms().unwrap().len(), 6);
        assert!(matches!(
            FiniteGroup::cyclic(17).automorphisms(),
            Err(GroupError::GroupTooLarge { order: 17, bound: 16 })
        ));
    }

    #[test]
    fn automorphisms_closed_under_composition() {
        let g = FiniteGroup::dihedral(4);
        let auts = g.automorphisms().unwrap();
        for a in &auts {
            for b in &auts {
                let c: Vec<usize> = (0..g.order()).map(|x| a[b[x]]).collect();
                assert!(auts.contains(&c));
            }
        }
    }

    #[test]
    fn symmetric_group() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.automorphisms().unwrap().len(), 6);
        assert!(FiniteGroup::symmetric(4).generating_set().len() <= 2);
    }

    #[test]
    fn large_tables_are_sampled() {
        let g = FiniteGroup::cyclic(20);
        assert_eq!(g.pow(3, -1), 17);
    }
}
