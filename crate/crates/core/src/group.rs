//! Finite groups given by dense Cayley tables.
//!
//! Elements are the indices `0..order`. Built-in families use fixed encodings
//! so that every downstream report is reproducible:
//!
//! * `Z_k`: element `i` is `i mod k`.
//! * `D_n` (order `2n`): `i < n` is the rotation `r^i`, `n + i` is the reflection `s·r^i`.
//! * `S_n`: permutations of `0..n` in lexicographic order of one-line notation,
//!   multiplied as composition `(στ)(x) = σ(τ(x))`.
//! * `Z_2^n`: element `a` is a bitmask, multiplication is XOR.
//! * `G × H`: element `(g, h)` has index `g·|H| + h`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Size caps protecting the dense downstream algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Groups up to this order get exhaustive axiom checks; larger ones are sampled.
    pub exhaustive_order: usize,
    /// Hard cap on group order.
    pub max_order: usize,
    /// Hard cap on representation dimension.
    pub max_dim: usize,
    /// Largest `n` accepted by [`symmetric_group`].
    pub max_symmetric_degree: usize,
    /// Largest `n` for the `Z_2^n` oracle families.
    pub max_bits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { exhaustive_order: 200, max_order: 1024, max_dim: 1024, max_symmetric_degree: 6, max_bits: 5 }
    }
}

impl Limits {
    pub(crate) fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(Error::CapExceeded { what: "group order", value: order, cap: self.max_order });
        }
        Ok(())
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::CapExceeded { what: "representation dimension", value: dim, cap: self.max_dim });
        }
        Ok(())
    }
}

/// Number of random triples checked when a table is too large for an exhaustive pass.
const SAMPLED_TRIPLES: usize = 20_000;

/// Partition of a group into conjugacy classes. The identity's class is always first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl ConjugacyClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
    classes: ConjugacyClassPartition,
}

impl FiniteGroup {
    /// Assembles a group from a table already known to satisfy the axioms.
    fn trusted(order: usize, cayley: Vec<usize>, labels: Option<Vec<String>>) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| cayley[e * order + x] == x))
            .expect("trusted table has an identity");
        let mut inverses = vec![0; order];
        for g in 0..order {
            inverses[g] = (0..order).find(|&h| cayley[g * order + h] == identity).expect("trusted table is a group");
        }
        let mut group = FiniteGroup {
            order,
            cayley,
            identity,
            inverses,
            labels,
            classes: ConjugacyClassPartition { classes: vec![], class_of: vec![], representatives: vec![] },
        };
        group.classes = group.compute_classes();
        group
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g·x·g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn table_row(&self, a: usize) -> &[usize] {
        &self.cayley[a * self.order..(a + 1) * self.order]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("{g}"),
        }
    }

    pub fn classes(&self) -> &ConjugacyClassPartition {
        &self.classes
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with every element, ascending.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    /// `|C_G(g)| = |G| / |cl(g)|`.
    pub fn centralizer_size(&self, g: usize) -> usize {
        self.order / self.classes.classes[self.classes.class_of[g]].len()
    }

    fn compute_classes(&self) -> ConjugacyClassPartition {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            classes.push(members);
            let id = classes.len() - 1;
            for &m in &classes[id] {
                class_of[m] = id;
            }
        }
        // Identity class first, then by smallest member.
        let e = self.identity;
        classes.sort_by_key(|c| (c[0] != e && !c.contains(&e), c[0]));
        for (id, c) in classes.iter().enumerate() {
            for &m in c {
                class_of[m] = id;
            }
        }
        let representatives = classes.iter().map(|c| c[0]).collect();
        ConjugacyClassPartition { classes, class_of, representatives }
    }
}

/// The conjugacy classes of `g` (precomputed at construction).
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClassPartition {
    g.classes.clone()
}

pub fn center(g: &FiniteGroup) -> Vec<usize> {
    g.center()
}

/// Validates a Cayley table and builds the group.
pub fn group_from_cayley(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<FiniteGroup> {
    group_from_cayley_with(table, labels, &Limits::default())
}

pub fn group_from_cayley_with(
    table: &[Vec<usize>],
    labels: Option<Vec<String>>,
    limits: &Limits,
) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    limits.check_order(n)?;
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!("row {i} has length {}, expected {n}", row.len())));
        }
        if let Some(j) = row.iter().position(|&x| x >= n) {
            return Err(Error::MalformedTable(format!("entry ({i},{j}) = {} out of range", row[j])));
        }
    }
    if let Some(l) = &labels {
        if l.len() != n {
            return Err(Error::MalformedTable(format!("{} labels for {n} elements", l.len())));
        }
    }
    let mul = |a: usize, b: usize| table[a][b];
    let identity = (0..n).find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x)).ok_or(Error::NoIdentity)?;
    for g in 0..n {
        if !(0..n).any(|h| mul(g, h) == identity && mul(h, g) == identity) {
            return Err(Error::NotInvertible(g));
        }
    }
    let check = |a: usize, b: usize, c: usize| {
        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
            Err(Error::NotAssociative { a, b, c })
        } else {
            Ok(())
        }
    };
    if n <= limits.exhaustive_order {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..SAMPLED_TRIPLES {
            check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
        }
    }
    // Latin-square property; implied by the axioms when associativity was exhaustive.
    let mut seen = vec![false; n];
    for i in 0..n {
        for axis in 0..2 {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = if axis == 0 { mul(i, j) } else { mul(j, i) };
                if core::mem::replace(&mut seen[v], true) {
                    let what = if axis == 0 { "row" } else { "column" };
                    return Err(Error::MalformedTable(format!("{what} {i} repeats element {v}")));
                }
            }
        }
    }
    let flat = table.iter().flatten().copied().collect();
    Ok(FiniteGroup::trusted(n, flat, labels))
}

pub fn cyclic_group(k: usize) -> Result<FiniteGroup> {
    cyclic_group_with(k, &Limits::default())
}

pub fn cyclic_group_with(k: usize, limits: &Limits) -> Result<FiniteGroup> {
    if k < 1 {
        return Err(Error::InvalidParameter("cyclic group needs k >= 1".into()));
    }
    limits.check_order(k)?;
    let cayley = (0..k * k).map(|idx| (idx / k + idx % k) % k).collect();
    Ok(FiniteGroup::trusted(k, cayley, None))
}

pub fn dihedral_group(n: usize) -> Result<FiniteGroup> {
    dihedral_group_with(n, &Limits::default())
}

pub fn dihedral_group_with(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::InvalidParameter("dihedral group needs n >= 1".into()));
    }
    let order = 2 * n;
    limits.check_order(order)?;
    // (reflect, i) encodes s^reflect · r^i.
    let decode = |x: usize| (x >= n, x % n);
    let encode = |s: bool, i: usize| if s { n + i } else { i };
    let mut cayley = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let (sa, i) = decode(a);
            let (sb, j) = decode(b);
            // s^a r^i s^b r^j = s^(a+b) r^(±i + j), the sign flipping when s^b passes r^i.
            let k = if sb { (j + n - i) % n } else { (i + j) % n };
            cayley.push(encode(sa ^ sb, k));
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (s, i) = decode(x);
            if s {
                format!("sr{i}")
            } else {
                format!("r{i}")
            }
        })
        .collect();
    Ok(FiniteGroup::trusted(order, cayley, Some(labels)))
}

/// Lexicographic rank of a permutation of `0..n`.
fn permutation_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    symmetric_group_with(n, &Limits::default())
}

pub fn symmetric_group_with(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::InvalidParameter("symmetric group needs n >= 1".into()));
    }
    if n > limits.max_symmetric_degree {
        return Err(Error::CapExceeded { what: "symmetric degree", value: n, cap: limits.max_symmetric_degree });
    }
    let perms = permutations_lex(n);
    let order = perms.len();
    limits.check_order(order)?;
    let mut cayley = Vec::with_capacity(order * order);
    let mut composed = vec![0; n];
    for sigma in &perms {
        for tau in &perms {
            for x in 0..n {
                composed[x] = sigma[tau[x]];
            }
            cayley.push(permutation_rank(&composed));
        }
    }
    let labels = perms.iter().map(|p| p.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join("")).collect();
    Ok(FiniteGroup::trusted(order, cayley, Some(labels)))
}

/// `Z_2^n` with bitmask elements.
pub fn elementary_abelian_2(n: usize) -> Result<FiniteGroup> {
    elementary_abelian_2_with(n, &Limits::default())
}

pub fn elementary_abelian_2_with(n: usize, limits: &Limits) -> Result<FiniteGroup> {
    if n > limits.max_bits {
        return Err(Error::CapExceeded { what: "bit length", value: n, cap: limits.max_bits });
    }
    let order = 1usize << n;
    limits.check_order(order)?;
    let cayley = (0..order * order).map(|idx| (idx / order) ^ (idx % order)).collect();
    Ok(FiniteGroup::trusted(order, cayley, None))
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_with(g, h, &Limits::default())
}

pub fn direct_product_with(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let (ng, nh) = (g.order(), h.order());
    let order = ng * nh;
    limits.check_order(order)?;
    let mut cayley = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            cayley.push(g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh));
        }
    }
    let labels = match (g.labels(), h.labels()) {
        (None, None) => None,
        _ => Some((0..order).map(|x| format!("({},{})", g.label(x / nh), h.label(x % nh))).collect()),
    };
    Ok(FiniteGroup::trusted(order, cayley, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn table(g: &FiniteGroup) -> Vec<Vec<usize>> {
        (0..g.order()).map(|a| g.table_row(a).to_vec()).collect()
    }

    /// Brute-force orbit sizes by enumerating `x ↦ g x g⁻¹` from scratch.
    fn brute_class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orbit = vec![false; n];
            for h in 0..n {
                let hinv = (0..n).find(|&k| g.mul(h, k) == g.identity()).unwrap();
                orbit[g.mul(g.mul(h, x), hinv)] = true;
            }
            let size = orbit.iter().filter(|&&b| b).count();
            for (y, &o) in orbit.iter().enumerate() {
                if o {
                    seen[y] = true;
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    fn sorted(mut v: Vec<usize>) -> Vec<usize> {
        v.sort_unstable();
        v
    }

    #[test]
    fn trivial_and_z2_tables() {
        let g = group_from_cayley(&[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        let z2 = group_from_cayley(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(z2.identity(), 0);
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn s3_from_table_has_three_classes() {
        let s3 = symmetric_group(3).unwrap();
        let rebuilt = group_from_cayley(&table(&s3), None).unwrap();
        assert_eq!(sorted(rebuilt.classes().sizes()), vec![1, 2, 3]);
        assert_eq!(brute_class_sizes(&rebuilt), vec![1, 2, 3]);
    }

    #[test]
    fn cayley_errors_name_the_violation() {
        assert!(matches!(group_from_cayley(&[], None), Err(Error::MalformedTable(_))));
        assert!(matches!(group_from_cayley(&[vec![0, 1], vec![1]], None), Err(Error::MalformedTable(_))));
        assert!(matches!(group_from_cayley(&[vec![0, 2], vec![1, 0]], None), Err(Error::MalformedTable(_))));
        assert_eq!(group_from_cayley(&[vec![1, 1], vec![1, 1]], None), Err(Error::NoIdentity));
        // 0 is the identity but 1·x never yields 0.
        assert_eq!(group_from_cayley(&[vec![0, 1], vec![1, 1]], None), Err(Error::NotInvertible(1)));
        // Latin square with identity and inverses that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(group_from_cayley(&loop5, None), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn cyclic_family() {
        assert!(matches!(cyclic_group(0), Err(Error::InvalidParameter(_))));
        assert_eq!(cyclic_group(1).unwrap().order(), 1);
        let z2 = cyclic_group(2).unwrap();
        assert_eq!(z2.mul(1, 1), 0);
        let z5 = cyclic_group(5).unwrap();
        assert!(z5.is_abelian());
        assert_eq!(z5.classes().len(), 5);
        assert_eq!(brute_class_sizes(&z5), vec![1; 5]);
    }

    #[test]
    fn dihedral_family() {
        let d3 = dihedral_group(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert_eq!(d3.classes().len(), 3);
        let d5 = dihedral_group(5).unwrap();
        assert_eq!(d5.center(), vec![0]);
        assert_eq!(sorted(d5.classes().sizes()), vec![1, 2, 2, 5]);
        assert_eq!(brute_class_sizes(&d5), vec![1, 2, 2, 5]);
        let d4 = dihedral_group(4).unwrap();
        assert_eq!(d4.center().len(), 2);
        assert!(group_from_cayley(&table(&d4), None).is_ok());
        assert!(matches!(dihedral_group(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn symmetric_family() {
        assert_eq!(symmetric_group(1).unwrap().order(), 1);
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.labels().unwrap()[0], "012");
        assert_eq!(s3.labels().unwrap()[5], "210");
        assert_eq!(brute_class_sizes(&s3), vec![1, 2, 3]);
        assert_eq!(s3.center(), vec![0]);
        let s4 = symmetric_group(4).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.classes().len(), 5);
        assert!(group_from_cayley(&table(&s4), None).is_ok());
        assert!(matches!(symmetric_group(7), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn direct_products() {
        let z2 = cyclic_group(2).unwrap();
        let v4 = direct_product(&z2, &z2).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.classes().len(), 4);
        let s3 = symmetric_group(3).unwrap();
        let s3s3 = direct_product(&s3, &s3).unwrap();
        assert_eq!(s3s3.order(), 36);
        assert_eq!(s3s3.classes().len(), 9);
        assert!(group_from_cayley(&table(&s3s3), None).is_ok());
        let trivial = cyclic_group(1).unwrap();
        assert_eq!(table(&direct_product(&trivial, &s3).unwrap()), table(&s3));
        let big = cyclic_group(40).unwrap();
        assert!(matches!(direct_product(&big, &big), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn identity_class_comes_first_for_relabelled_tables() {
        // Z_3 with identity at index 2.
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = group_from_cayley(&t, None).unwrap();
        assert_eq!(g.identity(), 2);
        assert_eq!(g.classes().classes[0], vec![2]);
    }

    #[test]
    fn elementary_abelian() {
        let g = elementary_abelian_2(3).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert_eq!(g.mul(0b101, 0b110), 0b011);
        assert!(elementary_abelian_2(6).is_err());
    }
}
