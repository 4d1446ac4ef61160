//! Finite groups stored as full Cayley tables, with subgroup enumeration,
//! conjugation machinery and isomorphism-type recognition for the small
//! 2-groups this crate works with.
//!
//! Elements are plain indices `0..order`; index 0 is always the identity.
//! Subgroups are bit-sets over those indices, so every operation here is a
//! handful of table lookups per product.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order any operation accepts.
pub const MAX_ORDER: usize = 512;

const WORDS: usize = MAX_ORDER / 64;

/// A set of element indices below [`MAX_ORDER`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet {
    words: [u64; WORDS],
}

impl ElemSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, x % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, x: usize) -> bool {
        x < MAX_ORDER && self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w |= o;
        }
        out
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w &= o;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

/// Sets are ordered by size, then lexicographically on their sorted members.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            for (a, b) in self.words.iter().zip(other.words.iter()) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    // The set owning the smallest differing element sorts first.
                    return if a & low != 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup of some parent [`Group`], held as its member set.
///
/// The parent is not stored; every operation that needs the table takes the
/// group explicitly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: ElemSet,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup {
            members: ElemSet::singleton(0),
        }
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoTag {
    Trivial,
    Cyclic,
    KleinFour,
    Dihedral,
    Quaternion,
    Semidihedral,
    Other,
}

impl IsoTag {
    pub fn name(self) -> &'static str {
        match self {
            IsoTag::Trivial => "trivial",
            IsoTag::Cyclic => "cyclic",
            IsoTag::KleinFour => "klein_four",
            IsoTag::Dihedral => "dihedral",
            IsoTag::Quaternion => "quaternion",
            IsoTag::Semidihedral => "semidihedral",
            IsoTag::Other => "other",
        }
    }

    pub fn parse(s: &str) -> Option<IsoTag> {
        Some(match s {
            "trivial" => IsoTag::Trivial,
            "cyclic" => IsoTag::Cyclic,
            "klein_four" => IsoTag::KleinFour,
            "dihedral" => IsoTag::Dihedral,
            "quaternion" => IsoTag::Quaternion,
            "semidihedral" => IsoTag::Semidihedral,
            "other" => IsoTag::Other,
            _ => return None,
        })
    }
}

/// Isomorphism type of a small 2-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsoType {
    #[serde(rename = "type")]
    pub tag: IsoTag,
    pub order: usize,
}

impl IsoType {
    pub fn new(tag: IsoTag, order: usize) -> Self {
        IsoType { tag, order }
    }

    pub fn trivial() -> Self {
        IsoType::new(IsoTag::Trivial, 1)
    }
}

/// Ordered by group order first, then by tag.
impl Ord for IsoType {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order, self.tag).cmp(&(other.order, other.tag))
    }
}

impl PartialOrd for IsoType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            IsoTag::Trivial => write!(f, "1"),
            IsoTag::Cyclic => write!(f, "C{}", self.order),
            IsoTag::KleinFour => write!(f, "V4"),
            IsoTag::Dihedral => write!(f, "D{}", self.order),
            IsoTag::Quaternion => write!(f, "Q{}", self.order),
            IsoTag::Semidihedral => write!(f, "SD{}", self.order),
            IsoTag::Other => write!(f, "other({})", self.order),
        }
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// A finite group given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    element_orders: Vec<u16>,
    generators: Vec<usize>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// Builds a group from a row-major Cayley table, checking every axiom.
    pub fn from_table(
        order: usize,
        table: Vec<usize>,
        generators: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Group> {
        let g = Self::from_table_unchecked(order, table, generators, names)?;
        g.check_axioms()?;
        Ok(g)
    }

    /// Builds a group, checking shape, identity and generation but not
    /// associativity. Used by constructors whose multiplication is associative
    /// by construction.
    pub(crate) fn from_table_unchecked(
        order: usize,
        table: Vec<usize>,
        generators: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderCapExceeded {
                order,
                cap: MAX_ORDER,
            });
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(Error::InvalidTable("wrong number of element names".into()));
            }
        }
        let table: Vec<u16> = table.into_iter().map(|x| x as u16).collect();
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::InvalidTable("index 0 is not a two-sided identity".into()));
            }
        }
        let mut inverses = vec![u16::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    if table[b * order + a] != 0 {
                        return Err(Error::InvalidTable(format!(
                            "element {a} has a one-sided inverse only"
                        )));
                    }
                    inverses[a] = b as u16;
                    break;
                }
            }
            if inverses[a] == u16::MAX {
                return Err(Error::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        let mut element_orders = vec![0u16; order];
        for (x, slot) in element_orders.iter_mut().enumerate() {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = table[y * order + x] as usize;
                k += 1;
                if k > order + 1 {
                    return Err(Error::InvalidTable(format!("element {x} has no finite order")));
                }
            }
            *slot = k as u16;
        }
        for &gen in &generators {
            if gen >= order {
                return Err(Error::IndexOutOfRange { index: gen, order });
            }
        }
        let g = Group {
            order,
            table,
            inverses,
            element_orders,
            generators,
            names,
        };
        if g.closure(&g.generators).order() != order {
            return Err(Error::InvalidTable(
                "designated generators do not generate the group".into(),
            ));
        }
        Ok(g)
    }

    /// Exhaustive associativity and inverse check.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            if self.mul(a, self.inverse(a)) != 0 || self.mul(self.inverse(a), a) != 0 {
                return Err(Error::InvalidTable(format!("bad inverse for {a}")));
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name_of(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Checked product `a·b`.
    pub fn multiply(&self, a: usize, b: usize) -> Result<usize> {
        for x in [a, b] {
            if x >= self.order {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    order: self.order,
                });
            }
        }
        Ok(self.mul(a, b))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `g·x·g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order).collect(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut members = ElemSet::singleton(0);
        let mut elems = vec![0usize];
        let mut i = 0;
        while i < elems.len() {
            let e = elems[i];
            for &g in gens {
                let p = self.mul(e, g);
                if members.insert(p) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        Subgroup { members }
    }

    /// Returns `Some` when `set` is a subgroup.
    pub fn subgroup_from_set(&self, set: ElemSet) -> Option<Subgroup> {
        if !set.contains(0) {
            return None;
        }
        for a in set.iter() {
            if a >= self.order {
                return None;
            }
            for b in set.iter() {
                if !set.contains(self.mul(a, self.inverse(b))) {
                    return None;
                }
            }
        }
        Some(Subgroup { members: set })
    }

    /// Every subgroup exactly once, sorted by order and then lexicographically.
    ///
    /// Layered closure: start from the cyclic subgroups and keep joining each
    /// newly found subgroup with every cyclic subgroup until nothing new
    /// appears. A small generating set is carried along with each subgroup so
    /// joins stay cheap.
    pub fn enumerate_subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order > MAX_ORDER {
            return Err(Error::OrderCapExceeded {
                order: self.order,
                cap: MAX_ORDER,
            });
        }
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        let mut found: Vec<Subgroup> = Vec::new();
        for x in 0..self.order {
            let c = self.closure(&[x]);
            if seen.insert(c.members) {
                cyclic.push((x, c));
                found.push(c);
            }
        }
        let mut frontier: Vec<(Vec<usize>, Subgroup)> =
            cyclic.iter().map(|&(x, c)| (vec![x], c)).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (gens, h) in &frontier {
                for &(x, c) in &cyclic {
                    if c.is_subgroup_of(h) {
                        continue;
                    }
                    let mut joined_gens = gens.clone();
                    joined_gens.push(x);
                    let j = self.closure(&joined_gens);
                    if seen.insert(j.members) {
                        found.push(j);
                        next.push((joined_gens, j));
                    }
                }
            }
            frontier = next;
        }
        found.sort();
        Ok(found)
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        Subgroup {
            members: h.members.iter().map(|x| self.conjugate(g, x)).collect(),
        }
    }

    /// Partition of `subgroups` (which must be closed under conjugation)
    /// into conjugacy classes. Classes are ordered by representative, and
    /// the representative is the least member.
    pub fn conjugacy_classes_of_subgroups(&self, subgroups: &[Subgroup]) -> Vec<SubgroupClass> {
        let mut assigned: HashSet<ElemSet> = HashSet::new();
        let mut classes = Vec::new();
        let gens: Vec<usize> = if self.generators.is_empty() {
            vec![0]
        } else {
            self.generators.clone()
        };
        for h in subgroups {
            if assigned.contains(&h.members) {
                continue;
            }
            let mut orbit = vec![*h];
            assigned.insert(h.members);
            let mut i = 0;
            while i < orbit.len() {
                let cur = orbit[i];
                for &g in &gens {
                    let c = self.conjugate_subgroup(&cur, g);
                    if assigned.insert(c.members) {
                        orbit.push(c);
                    }
                }
                i += 1;
            }
            orbit.sort();
            classes.push(SubgroupClass {
                representative: orbit[0],
                members: orbit,
            });
        }
        classes.sort_by(|a, b| a.representative.cmp(&b.representative));
        classes
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup {
            members: (0..self.order)
                .filter(|&g| h.members.iter().all(|x| self.commutes(g, x)))
                .collect(),
        }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup {
            members: (0..self.order)
                .filter(|&g| h.members.iter().all(|x| h.contains(self.conjugate(g, x))))
                .collect(),
        }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let elems = h.elements();
        elems
            .iter()
            .enumerate()
            .all(|(i, &a)| elems[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian_subgroup(&self.whole())
    }

    /// Isomorphism type of `h`, recognised from order, exponent,
    /// commutativity and the number of involutions.
    pub fn iso_type(&self, h: &Subgroup) -> IsoType {
        let order = h.order();
        let other = IsoType::new(IsoTag::Other, order);
        if order == 1 {
            return IsoType::trivial();
        }
        let mut exponent = 1;
        let mut involutions = 0;
        for x in h.members.iter() {
            let o = self.element_order(x);
            exponent = exponent.max(o);
            if o == 2 {
                involutions += 1;
            }
        }
        if exponent == order {
            return IsoType::new(IsoTag::Cyclic, order);
        }
        if !order.is_power_of_two() {
            return other;
        }
        if order == 4 {
            return IsoType::new(IsoTag::KleinFour, 4);
        }
        if exponent != order / 2 || self.is_abelian_subgroup(h) {
            return other;
        }
        // Non-abelian 2-group of order 2^k with a cyclic subgroup of index 2.
        let k = order.trailing_zeros();
        if involutions == (1 << (k - 1)) + 1 {
            IsoType::new(IsoTag::Dihedral, order)
        } else if involutions == 1 {
            IsoType::new(IsoTag::Quaternion, order)
        } else if k >= 4 && involutions == (1 << (k - 2)) + 1 {
            IsoType::new(IsoTag::Semidihedral, order)
        } else {
            other
        }
    }

    pub fn group_iso_type(&self) -> IsoType {
        self.iso_type(&self.whole())
    }

    /// Re-indexes a subgroup as a standalone group. Returns the group and the
    /// embedding `local index -> parent index`; local index order follows
    /// parent index order, so the identity stays at 0.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (Group, Vec<usize>) {
        let embed = h.elements();
        let local: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let n = embed.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &embed {
            for &b in &embed {
                table.push(local[&self.mul(a, b)]);
            }
        }
        let gens = minimal_generators(self, h)
            .into_iter()
            .map(|x| local[&x])
            .collect();
        let names = self
            .names
            .as_ref()
            .map(|names| embed.iter().map(|&x| names[x].clone()).collect());
        let g = Group::from_table_unchecked(n, table, gens, names)
            .expect("subgroup of a valid group is a valid group");
        (g, embed)
    }
}

/// Greedy generating set for `h`: repeatedly add the smallest-index element
/// of largest order that is not yet generated.
pub fn minimal_generators(g: &Group, h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial();
    while current.order() < h.order() {
        let pick = h
            .members
            .iter()
            .filter(|&x| !current.contains(x))
            .max_by(|&a, &b| {
                g.element_order(a)
                    .cmp(&g.element_order(b))
                    .then_with(|| b.cmp(&a))
            })
            .expect("proper subgroup leaves an element out");
        gens.push(pick);
        current = g.closure(&gens);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Group {
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        Group::from_table(n, table, if n > 1 { vec![1] } else { vec![] }, None).unwrap()
    }

    #[test]
    fn trivial_group_is_accepted() {
        let g = cyclic(1);
        assert_eq!(g.order(), 1);
        let subs = g.enumerate_subgroups().unwrap();
        assert_eq!(subs, vec![Subgroup::trivial()]);
        assert_eq!(g.conjugacy_classes_of_subgroups(&subs).len(), 1);
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.group_iso_type(), IsoType::trivial());
    }

    #[test]
    fn c2_has_two_subgroups() {
        assert_eq!(cyclic(2).enumerate_subgroups().unwrap().len(), 2);
    }

    #[test]
    fn multiply_rejects_out_of_range() {
        let g = cyclic(4);
        assert_eq!(g.multiply(1, 2).unwrap(), 3);
        assert!(matches!(
            g.multiply(4, 0),
            Err(Error::IndexOutOfRange { index: 4, order: 4 })
        ));
    }

    #[test]
    fn identity_row() {
        let g = cyclic(8);
        for x in 0..8 {
            assert_eq!(g.multiply(0, x).unwrap(), x);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        // not associative: a "group" on 3 elements where 1*1 = 1
        let table = vec![0, 1, 2, 1, 1, 0, 2, 0, 1];
        assert!(Group::from_table(3, table, vec![1, 2], None).is_err());
        // generators that do not generate
        let t: Vec<usize> = (0..4).flat_map(|a| (0..4).map(move |b| (a + b) % 4)).collect();
        assert!(Group::from_table(4, t, vec![2], None).is_err());
    }

    #[test]
    fn abelian_subgroups_are_their_own_classes() {
        let g = cyclic(16);
        let subs = g.enumerate_subgroups().unwrap();
        let classes = g.conjugacy_classes_of_subgroups(&subs);
        assert_eq!(classes.len(), subs.len());
        assert!(classes.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn centralizer_of_trivial_is_everything() {
        let g = cyclic(8);
        assert_eq!(g.centralizer(&Subgroup::trivial()), g.whole());
    }

    #[test]
    fn elemset_order_is_by_size_then_lexicographic() {
        let a: ElemSet = [0, 1, 5].into_iter().collect();
        let b: ElemSet = [0, 2, 3].into_iter().collect();
        let c: ElemSet = [0, 1].into_iter().collect();
        assert!(a < b);
        assert!(c < a);
        let d: ElemSet = [0, 70].into_iter().collect();
        let e: ElemSet = [0, 300].into_iter().collect();
        assert!(d < e);
    }

    #[test]
    fn order_four_exponent_four_is_cyclic() {
        let g = cyclic(4);
        assert_eq!(g.group_iso_type(), IsoType::new(IsoTag::Cyclic, 4));
    }
}
