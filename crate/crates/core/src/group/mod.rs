//! Finite groups given by full Cayley tables.
//!
//! Elements are dense indices `0..order` with `0` the identity. Every
//! constructor validates the table exhaustively (Latin square, identity,
//! inverses, associativity), so downstream code can index the tables
//! without further checks.

mod builtin;
pub mod catalog;
mod construct;
mod coset;
mod element;
mod perm;

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{arg, Error, Result};

pub use builtin::{builtin_group, reference_chain, BuiltinGroup};
pub use construct::{
    action_from_generators, cyclic_group, direct_product, group_from_permutations,
    matrix_group_mod_p, semidirect_product,
};
pub use coset::{double_cosets, left_cosets, CosetPartition};
pub use element::ElementSpec;
pub use perm::Permutation;

/// Largest group order the constructors accept.
pub const MAX_ORDER: usize = 1000;

/// Dense index of a group element; `0` is the identity.
pub type Element = usize;

/// Extra structure remembered from construction, used to parse element
/// descriptions (cycle notation, tuples, matrices).
#[derive(Clone, Debug)]
pub(crate) enum Kind {
    Table,
    Permutations { degree: usize, perms: Vec<Permutation> },
    Product(Arc<FiniteGroup>, Arc<FiniteGroup>),
    Semidirect(Arc<FiniteGroup>, Arc<FiniteGroup>),
    Matrices { modulus: u32, entries: Vec<[u32; 4]> },
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    labels: Vec<String>,
    generators: Vec<Element>,
    named: Vec<(String, Element)>,
    kind: Kind,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table.
    ///
    /// `labels` defaults to the decimal element indices.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul: &[Element],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::assemble(name.into(), order, mul, labels, Kind::Table, None)
    }

    pub(crate) fn assemble(
        name: String,
        order: usize,
        mul: &[Element],
        labels: Option<Vec<String>>,
        kind: Kind,
        generators: Option<Vec<Element>>,
    ) -> Result<Self> {
        if order == 0 {
            return arg("group order must be positive");
        }
        if order > MAX_ORDER {
            return Err(Error::Resource(format!(
                "group order {order} exceeds the cap of {MAX_ORDER}"
            )));
        }
        if mul.len() != order * order {
            return arg(format!(
                "multiplication table has {} entries, expected {}",
                mul.len(),
                order * order
            ));
        }
        let labels = match labels {
            Some(l) if l.len() != order => {
                return arg(format!("{} labels for {order} elements", l.len()))
            }
            Some(l) => l,
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        let table: Vec<u16> = mul.iter().map(|&x| x as u16).collect();
        let inv = validate_table(order, mul)?;
        let mut group = FiniteGroup {
            name,
            order,
            mul: table,
            inv,
            labels,
            generators: Vec::new(),
            named: Vec::new(),
            kind,
        };
        group.generators = match generators {
            Some(g) if group.subgroup(&g).order() == order => g,
            _ => group.small_generating_set(),
        };
        Ok(group)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mul[a * self.order + b] as Element
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inv[a] as Element
    }

    pub fn pow(&self, a: Element, exp: i64) -> Element {
        let base = if exp < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..exp.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn label(&self, a: Element) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// A generating set recorded at construction, or a greedy small one.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Generators with symbolic names usable in words such as `zyz^-1y`.
    pub fn named_generators(&self) -> &[(String, Element)] {
        &self.named
    }

    pub(crate) fn set_named(&mut self, named: Vec<(String, Element)>) {
        self.named = named;
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Multiset census of element orders, indexed by order.
    pub fn order_census(&self) -> Vec<usize> {
        let mut census = vec![0; self.order + 1];
        for a in 0..self.order {
            census[self.element_order(a)] += 1;
        }
        census
    }

    /// Closure of `gens` under multiplication.
    pub fn subgroup(&self, gens: &[Element]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(m) = queue.pop_front() {
            for &g in gens {
                let p = self.mul(m, g);
                if !mask[p] {
                    mask[p] = true;
                    members.push(p);
                    queue.push_back(p);
                }
            }
        }
        members.sort_unstable();
        Subgroup { members, mask }
    }

    /// Validating constructor for an explicit member list.
    pub fn subgroup_from_members(&self, members: &[Element]) -> Result<Subgroup> {
        let mut mask = vec![false; self.order];
        for &m in members {
            if m >= self.order {
                return arg(format!("element {m} out of range for order {}", self.order));
            }
            mask[m] = true;
        }
        if !mask[0] {
            return arg("subgroup must contain the identity");
        }
        let sorted: Vec<Element> = (0..self.order).filter(|&i| mask[i]).collect();
        for &a in &sorted {
            if !mask[self.inv(a)] {
                return arg(format!("not closed under inverses at {a}"));
            }
            for &b in &sorted {
                if !mask[self.mul(a, b)] {
                    return arg(format!("not closed under multiplication at ({a}, {b})"));
                }
            }
        }
        if !self.order.is_multiple_of(sorted.len()) {
            return arg("subgroup order does not divide the group order");
        }
        Ok(Subgroup { members: sorted, mask })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: (0..self.order).collect(), mask: vec![true; self.order] }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup(&[])
    }

    /// Every subgroup, found by repeatedly adjoining single elements.
    /// Intended for small groups (tests, catalog sweeps).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<Subgroup> = vec![self.trivial_subgroup()];
        let mut seen: std::collections::HashSet<Vec<Element>> =
            found.iter().map(|s| s.members.clone()).collect();
        let mut frontier = 0;
        while frontier < found.len() {
            let base = found[frontier].clone();
            frontier += 1;
            for g in 0..self.order {
                if base.contains(g) {
                    continue;
                }
                let mut gens = base.members.clone();
                gens.push(g);
                let s = self.subgroup(&gens);
                if seen.insert(s.members.clone()) {
                    found.push(s);
                }
            }
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        found
    }

    /// Extends `images[i] = φ(gens[i])` to a homomorphism into `target`.
    /// Fails if the assignment is inconsistent or `gens` does not generate.
    pub fn extend_homomorphism(
        &self,
        gens: &[Element],
        target: &FiniteGroup,
        images: &[Element],
    ) -> Result<Vec<Element>> {
        if gens.len() != images.len() {
            return arg("generator and image lists differ in length");
        }
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let p = self.mul(e, g);
                let q = target.mul(map[e], img);
                if map[p] == usize::MAX {
                    map[p] = q;
                    queue.push_back(p);
                } else if map[p] != q {
                    return arg(format!("generator images do not define a homomorphism (at {p})"));
                }
            }
        }
        if map.contains(&usize::MAX) {
            return arg("elements do not generate the group");
        }
        Ok(map)
    }

    /// Greedy generating set: repeatedly adjoin an element of largest
    /// order not yet covered.
    fn small_generating_set(&self) -> Vec<Element> {
        let mut by_order: Vec<Element> = (1..self.order).collect();
        let orders: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        by_order.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        // Prefer a pair of elements generating the whole group.
        if self.order > 1 {
            let top: Vec<Element> = by_order.iter().copied().take(64).collect();
            for &a in &top {
                for &b in &by_order {
                    if self.subgroup(&[a, b]).order() == self.order {
                        return if self.subgroup(&[a]).order() == self.order {
                            vec![a]
                        } else {
                            vec![a, b]
                        };
                    }
                }
            }
        }
        for &g in &by_order {
            if current.order() == self.order {
                break;
            }
            if !current.contains(g) {
                gens.push(g);
                current = self.subgroup(&gens);
            }
        }
        gens
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// Checks the group axioms and returns the inverse table.
fn validate_table(order: usize, mul: &[Element]) -> Result<Vec<u16>> {
    let mut seen = vec![0u32; order];
    for r in 0..order {
        let stamp = r as u32 + 1;
        for c in 0..order {
            let x = mul[r * order + c];
            if x >= order {
                return arg(format!("table entry {x} out of range"));
            }
            if seen[x] == stamp {
                return arg(format!("row {r} repeats element {x}"));
            }
            seen[x] = stamp;
        }
    }
    let mut seen = vec![false; order * order];
    for c in 0..order {
        for r in 0..order {
            let x = mul[r * order + c];
            if std::mem::replace(&mut seen[c * order + x], true) {
                return arg(format!("column {c} repeats element {x}"));
            }
        }
    }
    for x in 0..order {
        if mul[x] != x || mul[x * order] != x {
            return arg(format!("element 0 is not an identity (fails at {x})"));
        }
    }
    let mut inv = vec![0u16; order];
    for x in 0..order {
        let Some(y) = (0..order).find(|&y| mul[x * order + y] == 0) else {
            return arg(format!("element {x} has no inverse"));
        };
        inv[x] = y as u16;
    }
    for a in 0..order {
        for b in 0..order {
            let ab = mul[a * order + b];
            for c in 0..order {
                if mul[ab * order + c] != mul[a * order + mul[b * order + c]] {
                    return arg(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(inv)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<Element>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        self.mask[x]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn ambient_order(&self) -> usize {
        self.mask.len()
    }
}

/// A strictly decreasing sequence `G = H_0 > H_1 > … > H_n`.
#[derive(Clone, Debug)]
pub struct SubgroupChain {
    subgroups: Vec<Subgroup>,
}

impl SubgroupChain {
    pub fn new(group: &FiniteGroup, subgroups: Vec<Subgroup>) -> Result<Self> {
        match subgroups.first() {
            Some(h) if h.order() == group.order() => {}
            _ => return arg("a subgroup chain must start with the whole group"),
        }
        for (i, pair) in subgroups.windows(2).enumerate() {
            if !pair[1].is_subgroup_of(&pair[0]) || pair[1].order() == pair[0].order() {
                return arg(format!(
                    "H_{} (order {}) is not a proper subgroup of H_{} (order {})",
                    i + 1,
                    pair[1].order(),
                    i,
                    pair[0].order()
                ));
            }
        }
        Ok(SubgroupChain { subgroups })
    }

    /// `G > H_1 > …` from generator lists of `H_1, H_2, …`.
    pub fn from_generators(group: &FiniteGroup, gens: &[Vec<Element>]) -> Result<Self> {
        let mut subgroups = vec![group.whole()];
        for g in gens {
            if let Some(&bad) = g.iter().find(|&&x| x >= group.order()) {
                return arg(format!("generator {bad} out of range"));
            }
            subgroups.push(group.subgroup(g));
        }
        Self::new(group, subgroups)
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.subgroups.iter().map(Subgroup::order).collect()
    }

    /// Consecutive indices `[H_{i-1} : H_i]`.
    pub fn indices(&self) -> Vec<usize> {
        self.subgroups.windows(2).map(|w| w[0].order() / w[1].order()).collect()
    }

    /// Whether the indices are non-increasing, the ordering that front-loads
    /// the levels with few points.
    pub fn has_descending_indices(&self) -> bool {
        self.indices().windows(2).all(|w| w[0] >= w[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_groups() {
        // A loop of order 5: Latin square with identity, not associative.
        let table = [
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let err = FiniteGroup::from_table("bad", 5, &table, None).unwrap_err();
        assert!(matches!(err, Error::Argument(_)), "{err}");
        assert!(FiniteGroup::from_table("bad", 2, &[0, 1, 1, 1], None).is_err());
        assert!(FiniteGroup::from_table("bad", 2, &[1, 0, 0, 1], None).is_err());
    }

    #[test]
    fn subgroup_closure_and_chain() {
        let c7 = cyclic_group(7).unwrap();
        assert_eq!(c7.subgroup(&[1]).order(), 7);
        assert_eq!(c7.subgroup(&[]).members(), &[0]);
        let c12 = cyclic_group(12).unwrap();
        let chain =
            SubgroupChain::from_generators(&c12, &[vec![2], vec![4], vec![]]).unwrap();
        assert_eq!(chain.orders(), vec![12, 6, 3, 1]);
        assert_eq!(chain.indices(), vec![2, 2, 3]);
        assert!(!chain.has_descending_indices());
        assert!(SubgroupChain::from_generators(&c12, &[vec![4], vec![2]]).is_err());
        assert!(SubgroupChain::from_generators(&c12, &[vec![1]]).is_err());
    }

    #[test]
    fn explicit_members_are_validated() {
        let c6 = cyclic_group(6).unwrap();
        assert!(c6.subgroup_from_members(&[0, 2, 4]).is_ok());
        assert!(c6.subgroup_from_members(&[0, 2]).is_err());
        assert!(c6.subgroup_from_members(&[2, 4]).is_err());
    }

    #[test]
    fn all_subgroups_of_small_groups() {
        assert_eq!(cyclic_group(12).unwrap().all_subgroups().len(), 6);
        let v4 = direct_product(&cyclic_group(2).unwrap(), &cyclic_group(2).unwrap()).unwrap();
        assert_eq!(v4.all_subgroups().len(), 5);
        let s3 = group_from_permutations(&[
            Permutation::parse_cycles("(1,2,3)", 3).unwrap(),
            Permutation::parse_cycles("(1,2)", 3).unwrap(),
        ])
        .unwrap();
        assert_eq!(s3.all_subgroups().len(), 6);
    }

    #[test]
    fn homomorphism_extension() {
        let c6 = cyclic_group(6).unwrap();
        let c3 = cyclic_group(3).unwrap();
        let map = c6.extend_homomorphism(&[1], &c3, &[1]).unwrap();
        assert_eq!(map, vec![0, 1, 2, 0, 1, 2]);
        assert!(c3.extend_homomorphism(&[1], &c6, &[1]).is_err());
    }
}
