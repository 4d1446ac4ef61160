//! Saturated fusion systems on the dihedral, quaternion and semidihedral
//! families, generated from Inn(D) and prescribed automorphism groups of the
//! essential subgroups.
//!
//! Morphisms are never stored wholesale. The closure keeps a union-find over
//! subgroups for the F-isomorphism classes, one transporter isomorphism per
//! subgroup from its class representative, and the full F-automorphism
//! group of each representative.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automorphism::AutomorphismGroup;
use crate::error::{Error, Result};
use crate::family::{build, taxonomy, FamilyId, FamilyKind, TaxonomyLabel};
use crate::group::{minimal_generators, ElemSet, Group, IsoType, Subgroup};

/// Upper bound on |Aut_F(P)| before the closure is declared inconsistent.
const AUT_F_BOUND: usize = 1 << 16;

const NONE: u16 = u16::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FusionLabel {
    F00,
    F01,
    F10,
    F11,
}

impl FusionLabel {
    pub const ALL: [FusionLabel; 4] = [
        FusionLabel::F00,
        FusionLabel::F01,
        FusionLabel::F10,
        FusionLabel::F11,
    ];

    /// `(i, j)` of `F_ij`.
    pub fn indices(self) -> (bool, bool) {
        match self {
            FusionLabel::F00 => (false, false),
            FusionLabel::F01 => (false, true),
            FusionLabel::F10 => (true, false),
            FusionLabel::F11 => (true, true),
        }
    }

    pub fn from_indices(i: bool, j: bool) -> Self {
        match (i, j) {
            (false, false) => FusionLabel::F00,
            (false, true) => FusionLabel::F01,
            (true, false) => FusionLabel::F10,
            (true, true) => FusionLabel::F11,
        }
    }

    pub fn is_valid_for(self, kind: FamilyKind) -> bool {
        match kind {
            FamilyKind::Dihedral | FamilyKind::Quaternion => self != FusionLabel::F10,
            FamilyKind::Semidihedral => true,
            FamilyKind::Cyclic | FamilyKind::KleinFour => false,
        }
    }

    pub fn all_for(kind: FamilyKind) -> Vec<FusionLabel> {
        Self::ALL
            .into_iter()
            .filter(|l| l.is_valid_for(kind))
            .collect()
    }
}

impl fmt::Display for FusionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FusionLabel::F00 => "F00",
            FusionLabel::F01 => "F01",
            FusionLabel::F10 => "F10",
            FusionLabel::F11 => "F11",
        };
        f.write_str(s)
    }
}

impl FromStr for FusionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F00" => Ok(FusionLabel::F00),
            "F01" => Ok(FusionLabel::F01),
            "F10" => Ok(FusionLabel::F10),
            "F11" => Ok(FusionLabel::F11),
            _ => Err(Error::InvalidSpec {
                spec: s.to_string(),
                reason: "fusion label must be one of F00, F01, F10, F11".into(),
            }),
        }
    }
}

/// An injective map defined on one subgroup of the parent group, stored on
/// parent indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalMap {
    images: Vec<u16>,
}

impl fmt::Debug for LocalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.images
                    .iter()
                    .enumerate()
                    .filter(|(_, &y)| y != NONE),
            )
            .finish()
    }
}

impl LocalMap {
    pub fn identity_on(order: usize, h: &Subgroup) -> Self {
        let mut images = vec![NONE; order];
        for x in h.members().iter() {
            images[x] = x as u16;
        }
        LocalMap { images }
    }

    /// Restriction of `x ↦ g x g⁻¹` to `h`.
    pub fn conjugation_on(grp: &Group, g: usize, h: &Subgroup) -> Self {
        let mut images = vec![NONE; grp.order()];
        for x in h.members().iter() {
            images[x] = grp.conjugate(g, x) as u16;
        }
        LocalMap { images }
    }

    pub fn from_pairs(order: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut images = vec![NONE; order];
        for (x, y) in pairs {
            images[x] = y as u16;
        }
        LocalMap { images }
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        match self.images.get(x) {
            Some(&y) if y != NONE => Some(y as usize),
            _ => None,
        }
    }

    pub fn domain(&self) -> ElemSet {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &y)| y != NONE)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn image_set(&self) -> ElemSet {
        self.images
            .iter()
            .filter(|&&y| y != NONE)
            .map(|&y| y as usize)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| y == NONE || y as usize == x)
    }

    /// `self ∘ other` on the domain of `other`; `other`'s image must lie in
    /// the domain of `self`.
    pub fn after(&self, other: &LocalMap) -> LocalMap {
        LocalMap {
            images: other
                .images
                .iter()
                .map(|&y| if y == NONE { NONE } else { self.images[y as usize] })
                .collect(),
        }
    }

    pub fn restrict(&self, h: &Subgroup) -> LocalMap {
        LocalMap {
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(x, &y)| if h.contains(x) { y } else { NONE })
                .collect(),
        }
    }

    pub fn inverse(&self) -> LocalMap {
        let mut images = vec![NONE; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            if y != NONE {
                images[y as usize] = x as u16;
            }
        }
        LocalMap { images }
    }

    pub fn image_of(&self, h: &Subgroup) -> Option<ElemSet> {
        h.members().iter().map(|x| self.apply(x)).collect::<Option<ElemSet>>()
    }

    fn is_homomorphism_on(&self, g: &Group, h: &Subgroup) -> bool {
        h.members().iter().all(|a| {
            h.members().iter().all(|b| {
                self.apply(g.mul(a, b))
                    .zip(self.apply(a).zip(self.apply(b)))
                    .is_some_and(|(ab, (ia, ib))| ab == g.mul(ia, ib))
            })
        })
    }
}

/// Prescribed automorphism data for one essential subgroup class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialSeed {
    pub label: TaxonomyLabel,
    pub subgroup: Subgroup,
    pub enhanced: bool,
    /// Generators of the prescribed Aut_F(R): Aut_D(R), plus an
    /// automorphism of order 3 when enhanced.
    pub generators: Vec<LocalMap>,
    /// |Aut_F(R)| of the prescribed group.
    pub aut_f_order: usize,
    /// |Out_F(R)|: 2 (C2) or 6 (S3).
    pub out_f_order: usize,
}

/// One F-isomorphism class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FClass {
    /// Index into [`FusionSystem::subgroups`]; the least member.
    pub representative: usize,
    pub members: Vec<usize>,
    /// Aut_F of the representative, sorted.
    pub aut_f: Vec<LocalMap>,
    pub iso: IsoType,
    /// |Inn(P)| for P in the class.
    pub inner_order: usize,
    /// Whether an enhanced essential subgroup lies in this class.
    pub enhanced: bool,
}

impl FClass {
    pub fn out_f_order(&self) -> usize {
        self.aut_f.len() / self.inner_order
    }
}

/// A fusion system on `build(family)`, closed under the generating data.
#[derive(Clone, Debug)]
pub struct FusionSystem {
    family: FamilyId,
    label: FusionLabel,
    group: Group,
    subgroups: Vec<Subgroup>,
    index: HashMap<ElemSet, usize>,
    essentials: Vec<EssentialSeed>,
    classes: Vec<FClass>,
    class_of: Vec<usize>,
    /// Per subgroup, an F-isomorphism from its class representative.
    transport: Vec<LocalMap>,
}

fn essential_labels(f: FamilyId) -> [TaxonomyLabel; 2] {
    let (k1, k2, m1, m2) = match f.kind {
        FamilyKind::Dihedral => (1, 2, 2, 2),
        FamilyKind::Quaternion => (1, 2, 3, 3),
        _ => (1, 2, 2, 3),
    };
    [
        TaxonomyLabel::branch(f.kind, k1, m1),
        TaxonomyLabel::branch(f.kind, k2, m2),
    ]
}

/// Essential classes enhanced (Out_F ≅ S3) in the standard model of `label`.
///
/// Dihedral and quaternion `F01` enhance the `st`-branch class; semidihedral
/// `F_ij` enhances the Klein-four class when `i = 1` and the Q8 class when
/// `j = 1`.
pub fn standard_enhancement(f: FamilyId, label: FusionLabel) -> Vec<TaxonomyLabel> {
    let [first, second] = essential_labels(f);
    match f.kind {
        FamilyKind::Semidihedral => {
            let (i, j) = label.indices();
            let mut out = Vec::new();
            if i {
                out.push(first);
            }
            if j {
                out.push(second);
            }
            out
        }
        _ => match label {
            FusionLabel::F00 => vec![],
            FusionLabel::F01 => vec![second],
            _ => vec![first, second],
        },
    }
}

/// Validates that `label` names a fusion system this crate handles on `f`.
pub fn check_block(f: FamilyId, label: FusionLabel) -> Result<()> {
    f.validate()?;
    if !matches!(
        f.kind,
        FamilyKind::Dihedral | FamilyKind::Quaternion | FamilyKind::Semidihedral
    ) {
        return Err(Error::InvalidFusionLabel { family: f, label });
    }
    if f.kind == FamilyKind::Quaternion && f.n == 3 {
        return Err(Error::QuaternionEightDeferred);
    }
    if !label.is_valid_for(f.kind) {
        return Err(Error::InvalidFusionLabel { family: f, label });
    }
    Ok(())
}

/// Builds and closes the fusion system `label` on `f`.
pub fn build_fusion(f: FamilyId, label: FusionLabel) -> Result<FusionSystem> {
    check_block(f, label)?;
    build_fusion_with_enhanced(f, label, &standard_enhancement(f, label))
}

/// Like [`build_fusion`], but with an explicit choice of enhanced essential
/// classes. The number of enhanced classes must agree with `label`; on
/// semidihedral groups the choice must be the standard one.
pub fn build_fusion_with_enhanced(
    f: FamilyId,
    label: FusionLabel,
    enhanced: &[TaxonomyLabel],
) -> Result<FusionSystem> {
    check_block(f, label)?;
    let essentials = essential_labels(f);
    for e in enhanced {
        if !essentials.contains(e) {
            return Err(Error::InvalidFusionLabel { family: f, label });
        }
    }
    let standard = standard_enhancement(f, label);
    let consistent = match f.kind {
        FamilyKind::Semidihedral => {
            let mut a = enhanced.to_vec();
            a.sort();
            a.dedup();
            a == standard
        }
        _ => {
            let mut a = enhanced.to_vec();
            a.dedup();
            a.len() == standard.len()
        }
    };
    if !consistent {
        return Err(Error::InvalidFusionLabel { family: f, label });
    }

    let group = build(f)?;
    let tax = taxonomy(f, &group)?;
    let mut seeds = Vec::new();
    for el in essentials {
        let entry = tax
            .iter()
            .find(|e| e.label == el)
            .expect("essential labels are part of the taxonomy");
        seeds.push(essential_seed(&group, el, entry.named, enhanced.contains(&el))?);
    }
    let subgroups = group.enumerate_subgroups()?;
    FusionSystem::close(f, label, group, subgroups, seeds)
}

fn essential_seed(
    g: &Group,
    label: TaxonomyLabel,
    r: Subgroup,
    enhanced: bool,
) -> Result<EssentialSeed> {
    let normalizer = g.normalizer(&r);
    let mut generators: Vec<LocalMap> = minimal_generators(g, &normalizer)
        .into_iter()
        .map(|x| LocalMap::conjugation_on(g, x, &r))
        .collect();
    if enhanced {
        let (local, embed) = g.subgroup_as_group(&r);
        let aut = AutomorphismGroup::compute(&local)?;
        let three = aut
            .automorphisms()
            .iter()
            .find(|a| a.order() == 3)
            .ok_or_else(|| Error::ClosureBound(format!("{label} has no automorphism of order 3")))?;
        generators.push(LocalMap::from_pairs(
            g.order(),
            (0..local.order()).map(|x| (embed[x], embed[three.apply(x)])),
        ));
    }
    for gen in &generators {
        if gen.domain() != *r.members() || gen.image_set() != *r.members() || !gen.is_homomorphism_on(g, &r) {
            return Err(Error::NotAnAutomorphism);
        }
    }
    let identity = LocalMap::identity_on(g.order(), &r);
    let aut_f_order = generate(&identity, &generators)?.len();
    let inner = inner_order(g, &r);
    Ok(EssentialSeed {
        label,
        subgroup: r,
        enhanced,
        generators,
        aut_f_order,
        out_f_order: aut_f_order / inner,
    })
}

fn inner_order(g: &Group, h: &Subgroup) -> usize {
    let center = h
        .members()
        .iter()
        .filter(|&x| h.members().iter().all(|y| g.commutes(x, y)))
        .count();
    h.order() / center
}

/// Group generated by `gens`, all maps on a common domain.
fn generate(identity: &LocalMap, gens: &[LocalMap]) -> Result<Vec<LocalMap>> {
    let mut seen: HashSet<LocalMap> = HashSet::new();
    seen.insert(identity.clone());
    let mut elems = vec![identity.clone()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let next = g.after(&elems[i]);
            if seen.insert(next.clone()) {
                elems.push(next);
                if elems.len() > AUT_F_BOUND {
                    return Err(Error::ClosureBound(format!(
                        "automorphism group exceeds {AUT_F_BOUND} elements"
                    )));
                }
            }
        }
        i += 1;
    }
    elems.sort();
    Ok(elems)
}

/// A small generating set of a group of maps, chosen greedily in sorted order.
fn generating_set(group: &[LocalMap]) -> Result<Vec<LocalMap>> {
    let Some(identity) = group.iter().find(|a| a.is_identity()) else {
        return Ok(Vec::new());
    };
    let mut gens: Vec<LocalMap> = Vec::new();
    let mut span: HashSet<LocalMap> = HashSet::from([identity.clone()]);
    for a in group {
        if !span.contains(a) {
            gens.push(a.clone());
            span = generate(identity, &gens)?.into_iter().collect();
        }
    }
    Ok(gens)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Keeps the smaller index as root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl FusionSystem {
    fn close(
        family: FamilyId,
        label: FusionLabel,
        group: Group,
        subgroups: Vec<Subgroup>,
        essentials: Vec<EssentialSeed>,
    ) -> Result<FusionSystem> {
        let mut arrows: Vec<LocalMap> = group
            .generators()
            .iter()
            .map(|&x| LocalMap::conjugation_on(&group, x, &group.whole()))
            .collect();
        for seed in &essentials {
            arrows.extend(seed.generators.iter().cloned());
        }
        Self::close_with_arrows(family, label, group, subgroups, essentials, arrows)
    }

    fn close_with_arrows(
        family: FamilyId,
        label: FusionLabel,
        group: Group,
        subgroups: Vec<Subgroup>,
        essentials: Vec<EssentialSeed>,
        arrows: Vec<LocalMap>,
    ) -> Result<FusionSystem> {
        let index: HashMap<ElemSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (*h.members(), i))
            .collect();
        let domains: Vec<ElemSet> = arrows.iter().map(LocalMap::domain).collect();
        let step = |q: usize, a: usize| -> Option<usize> {
            let h = &subgroups[q];
            if !h.members().is_subset(&domains[a]) {
                return None;
            }
            let img = arrows[a].image_of(h)?;
            index.get(&img).copied()
        };

        let mut uf = UnionFind::new(subgroups.len());
        for q in 0..subgroups.len() {
            for a in 0..arrows.len() {
                if let Some(q2) = step(q, a) {
                    uf.union(q, q2);
                }
            }
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); subgroups.len()];
        for q in 0..subgroups.len() {
            let r = uf.find(q);
            by_root[r].push(q);
        }

        let order = group.order();
        let mut transport: Vec<Option<LocalMap>> = vec![None; subgroups.len()];
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for members in by_root.into_iter().filter(|m| !m.is_empty()) {
            let rep = members[0];
            let rep_group = subgroups[rep];
            let identity = LocalMap::identity_on(order, &rep_group);
            transport[rep] = Some(identity.clone());
            let mut queue = vec![rep];
            let mut loops: HashSet<LocalMap> = HashSet::new();
            let mut i = 0;
            while i < queue.len() {
                let q = queue[i];
                let to_q = transport[q].clone().expect("visited");
                for (a, arrow) in arrows.iter().enumerate() {
                    let Some(q2) = step(q, a) else { continue };
                    let candidate = arrow.after(&to_q);
                    match &transport[q2] {
                        None => {
                            transport[q2] = Some(candidate);
                            queue.push(q2);
                        }
                        Some(to_q2) => {
                            let back = to_q2.inverse().after(&candidate);
                            if !back.is_identity() {
                                loops.insert(back);
                            }
                        }
                    }
                }
                i += 1;
            }
            if queue.len() != members.len() {
                return Err(Error::ClosureBound(format!(
                    "transport reached {} subgroups of a class of {}",
                    queue.len(),
                    members.len()
                )));
            }
            let mut gens: Vec<LocalMap> = loops.into_iter().collect();
            gens.sort();
            let aut_f = generate(&identity, &gens)?;
            let enhanced = essentials
                .iter()
                .any(|s| s.enhanced && members.iter().any(|&q| subgroups[q] == s.subgroup));
            let id = classes.len();
            for &q in &members {
                class_of[q] = id;
            }
            classes.push(FClass {
                representative: rep,
                iso: group.iso_type(&rep_group),
                inner_order: inner_order(&group, &rep_group),
                members,
                aut_f,
                enhanced,
            });
        }
        let transport = transport.into_iter().map(|t| t.expect("every subgroup lies in a class")).collect();
        Ok(FusionSystem {
            family,
            label,
            group,
            subgroups,
            index,
            essentials,
            classes,
            class_of,
            transport,
        })
    }

    /// Re-runs the closure using every computed Aut_F(P) as generating data.
    /// On a closed system this reproduces the same classes and groups.
    pub fn alperin_closure(&self) -> Result<FusionSystem> {
        let mut arrows: Vec<LocalMap> = self
            .group
            .generators()
            .iter()
            .map(|&x| LocalMap::conjugation_on(&self.group, x, &self.group.whole()))
            .collect();
        for class in &self.classes {
            arrows.extend(generating_set(&class.aut_f)?);
        }
        for seed in &self.essentials {
            arrows.extend(seed.generators.iter().cloned());
        }
        Self::close_with_arrows(
            self.family,
            self.label,
            self.group.clone(),
            self.subgroups.clone(),
            self.essentials.clone(),
            arrows,
        )
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn label(&self) -> FusionLabel {
        self.label
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn essentials(&self) -> &[EssentialSeed] {
        &self.essentials
    }

    pub fn classes(&self) -> &[FClass] {
        &self.classes
    }

    pub fn subgroup_index(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.members()).copied()
    }

    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.subgroup_index(h).map(|i| self.class_of[i])
    }

    pub fn class_index_of_subgroup(&self, idx: usize) -> usize {
        self.class_of[idx]
    }

    pub fn representative(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.classes[class].representative]
    }

    /// Aut_F(P) for any subgroup P, carried over from the class representative.
    pub fn aut_f(&self, h: &Subgroup) -> Option<Vec<LocalMap>> {
        let idx = self.subgroup_index(h)?;
        let class = &self.classes[self.class_of[idx]];
        let to = &self.transport[idx];
        let from = to.inverse();
        let mut out: Vec<LocalMap> = class
            .aut_f
            .iter()
            .map(|a| to.after(&a.after(&from)))
            .collect();
        out.sort();
        Some(out)
    }

    /// An F-isomorphism from the class representative onto `h`.
    pub fn transporter(&self, h: &Subgroup) -> Option<&LocalMap> {
        self.subgroup_index(h).map(|i| &self.transport[i])
    }

    /// Number of F-classes whose members have isomorphism type `iso`.
    pub fn class_count(&self, iso: IsoType) -> usize {
        self.classes.iter().filter(|c| c.iso == iso).count()
    }

    /// Index of the F-class containing the centre of D when it has order 2.
    pub fn center_class(&self) -> Option<usize> {
        let z = self.group.center();
        self.class_of(&z)
    }

    /// Sorted invariant `(type, |Out_F|, enhanced)` over all F-classes.
    pub fn invariant(&self) -> Vec<(IsoType, usize, bool)> {
        let mut v: Vec<_> = self
            .classes
            .iter()
            .map(|c| (c.iso, c.out_f_order(), c.enhanced))
            .collect();
        v.sort();
        v
    }

    /// Structural equality of the closed data (classes and Aut_F groups).
    pub fn same_closure(&self, other: &FusionSystem) -> bool {
        self.subgroups == other.subgroups && self.classes == other.classes
    }
}

/// Isomorphism test between two closed fusion systems on family groups.
///
/// Same family and order, and the same multiset of
/// `(type, |Out_F|, enhanced)` over F-classes.
pub fn fusion_isomorphic(a: &FusionSystem, b: &FusionSystem) -> Result<bool> {
    if a.group.order() != b.group.order() {
        return Err(Error::Incomparable(format!(
            "fusion systems on groups of orders {} and {}",
            a.group.order(),
            b.group.order()
        )));
    }
    if a.family.kind != b.family.kind {
        return Ok(false);
    }
    Ok(a.invariant() == b.invariant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::IsoTag;

    fn c2() -> IsoType {
        IsoType::new(IsoTag::Cyclic, 2)
    }

    fn c4() -> IsoType {
        IsoType::new(IsoTag::Cyclic, 4)
    }

    #[test]
    fn dihedral_involution_classes() {
        for n in 3..=5 {
            let f = FamilyId::dihedral(n).unwrap();
            let counts: Vec<usize> = FusionLabel::all_for(f.kind)
                .into_iter()
                .map(|l| build_fusion(f, l).unwrap().class_count(c2()))
                .collect();
            assert_eq!(counts, vec![3, 2, 1], "n={n}");
        }
    }

    #[test]
    fn quaternion_c4_classes() {
        for n in 4..=6 {
            let f = FamilyId::quaternion(n).unwrap();
            let counts: Vec<usize> = FusionLabel::all_for(f.kind)
                .into_iter()
                .map(|l| build_fusion(f, l).unwrap().class_count(c4()))
                .collect();
            assert_eq!(counts, vec![3, 2, 1], "n={n}");
        }
    }

    #[test]
    fn semidihedral_counts() {
        for n in 4..=6 {
            let f = FamilyId::semidihedral(n).unwrap();
            let fs: Vec<_> = FusionLabel::ALL
                .into_iter()
                .map(|l| build_fusion(f, l).unwrap())
                .collect();
            let inv: Vec<_> = fs.iter().map(|s| s.class_count(c2())).collect();
            let cyc: Vec<_> = fs.iter().map(|s| s.class_count(c4())).collect();
            assert_eq!(inv, vec![2, 2, 1, 1]);
            assert_eq!(cyc, vec![2, 1, 2, 1]);
        }
    }

    #[test]
    fn whole_group_is_alone_with_trivial_out_f() {
        for (f, l) in [
            (FamilyId::dihedral(4).unwrap(), FusionLabel::F11),
            (FamilyId::quaternion(4).unwrap(), FusionLabel::F01),
            (FamilyId::semidihedral(5).unwrap(), FusionLabel::F10),
        ] {
            let fs = build_fusion(f, l).unwrap();
            let whole = fs.group().whole();
            let c = fs.class_of(&whole).unwrap();
            assert_eq!(fs.classes()[c].members.len(), 1);
            assert_eq!(fs.classes()[c].out_f_order(), 1);
        }
    }

    #[test]
    fn enhanced_essentials_get_s3() {
        let f = FamilyId::dihedral(4).unwrap();
        let fs = build_fusion(f, FusionLabel::F11).unwrap();
        for seed in fs.essentials() {
            assert!(seed.enhanced);
            assert_eq!(seed.out_f_order, 6);
            let c = fs.class_of(&seed.subgroup).unwrap();
            assert_eq!(fs.classes()[c].out_f_order(), 6);
        }
        let fs = build_fusion(FamilyId::quaternion(5).unwrap(), FusionLabel::F01).unwrap();
        let enhanced: Vec<_> = fs.essentials().iter().filter(|s| s.enhanced).map(|s| s.label.to_string()).collect();
        assert_eq!(enhanced, vec!["T2_3"]);
    }

    #[test]
    fn semidihedral_f00_is_group_fusion() {
        let f = FamilyId::semidihedral(5).unwrap();
        let fs = build_fusion(f, FusionLabel::F00).unwrap();
        let g = fs.group();
        let classes = g.conjugacy_classes_of_subgroups(fs.subgroups());
        assert_eq!(classes.len(), fs.classes().len());
        for c in fs.classes() {
            let p = fs.subgroups()[c.representative];
            let aut_d: HashSet<LocalMap> = g
                .normalizer(&p)
                .members()
                .iter()
                .map(|x| LocalMap::conjugation_on(g, x, &p))
                .collect();
            assert_eq!(aut_d.len(), c.aut_f.len());
        }
    }

    #[test]
    fn invalid_blocks() {
        assert!(matches!(
            build_fusion(FamilyId::quaternion(3).unwrap(), FusionLabel::F00),
            Err(Error::QuaternionEightDeferred)
        ));
        assert!(matches!(
            build_fusion(FamilyId::dihedral(4).unwrap(), FusionLabel::F10),
            Err(Error::InvalidFusionLabel { .. })
        ));
        assert!(build_fusion(FamilyId::cyclic(3).unwrap(), FusionLabel::F00).is_err());
    }

    #[test]
    fn opposite_enhancement_is_isomorphic() {
        let f = FamilyId::dihedral(4).unwrap();
        let a = build_fusion(f, FusionLabel::F01).unwrap();
        let w1 = TaxonomyLabel::branch(f.kind, 1, 2);
        let b = build_fusion_with_enhanced(f, FusionLabel::F01, &[w1]).unwrap();
        assert!(!a.same_closure(&b));
        assert!(fusion_isomorphic(&a, &b).unwrap());
        let c = build_fusion(f, FusionLabel::F11).unwrap();
        assert!(!fusion_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn different_orders_are_incomparable() {
        let a = build_fusion(FamilyId::dihedral(3).unwrap(), FusionLabel::F00).unwrap();
        let b = build_fusion(FamilyId::dihedral(4).unwrap(), FusionLabel::F00).unwrap();
        assert!(fusion_isomorphic(&a, &b).is_err());
    }

    #[test]
    fn closure_is_idempotent() {
        let fs = build_fusion(FamilyId::semidihedral(4).unwrap(), FusionLabel::F11).unwrap();
        let again = fs.alperin_closure().unwrap();
        assert!(fs.same_closure(&again));
    }
}
