//! The dihedral, generalised quaternion and semidihedral 2-groups, plus the
//! cyclic and Klein-four groups, built from normal forms `s^i t^j`, together
//! with the standard labelling of their subgroup classes.
//!
//! Element `s^i t^j` has index `2i + j` (cyclic groups use index `i`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automorphism::{extend_to_homomorphism, Automorphism, AutomorphismGroup};
use crate::error::{Error, Result};
use crate::group::{Group, IsoTag, IsoType, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Dihedral,
    Quaternion,
    Semidihedral,
    Cyclic,
    KleinFour,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Dihedral => "dihedral",
            FamilyKind::Quaternion => "quaternion",
            FamilyKind::Semidihedral => "semidihedral",
            FamilyKind::Cyclic => "cyclic",
            FamilyKind::KleinFour => "klein_four",
        }
    }

    /// Smallest admissible exponent `n`.
    pub fn min_n(self) -> u32 {
        match self {
            FamilyKind::Dihedral | FamilyKind::Quaternion => 3,
            FamilyKind::Semidihedral => 4,
            FamilyKind::Cyclic => 0,
            FamilyKind::KleinFour => 2,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dihedral" => FamilyKind::Dihedral,
            "quaternion" => FamilyKind::Quaternion,
            "semidihedral" => FamilyKind::Semidihedral,
            "cyclic" => FamilyKind::Cyclic,
            "klein_four" => FamilyKind::KleinFour,
            _ => return Err(Error::InvalidFamily(format!("unknown family '{s}'"))),
        })
    }
}

/// A family member of order `2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyId {
    pub kind: FamilyKind,
    pub n: u32,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, n: u32) -> Result<FamilyId> {
        let f = FamilyId { kind, n };
        f.validate()?;
        Ok(f)
    }

    pub fn dihedral(n: u32) -> Result<FamilyId> {
        Self::new(FamilyKind::Dihedral, n)
    }

    pub fn quaternion(n: u32) -> Result<FamilyId> {
        Self::new(FamilyKind::Quaternion, n)
    }

    pub fn semidihedral(n: u32) -> Result<FamilyId> {
        Self::new(FamilyKind::Semidihedral, n)
    }

    pub fn cyclic(n: u32) -> Result<FamilyId> {
        Self::new(FamilyKind::Cyclic, n)
    }

    pub fn klein_four() -> FamilyId {
        FamilyId {
            kind: FamilyKind::KleinFour,
            n: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < self.kind.min_n() {
            return Err(Error::InvalidFamily(format!(
                "{} requires n >= {}, got {}",
                self.kind,
                self.kind.min_n(),
                self.n
            )));
        }
        if self.kind == FamilyKind::KleinFour && self.n != 2 {
            return Err(Error::InvalidFamily("klein_four requires n = 2".into()));
        }
        if self.n > 9 {
            return Err(Error::OrderCapExceeded {
                order: 1usize.checked_shl(self.n).unwrap_or(usize::MAX),
                cap: crate::group::MAX_ORDER,
            });
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        1 << self.n
    }

    /// Order of `s`.
    fn s_order(&self) -> usize {
        match self.kind {
            FamilyKind::Cyclic => 1 << self.n,
            _ => 1 << (self.n - 1),
        }
    }

    /// `t·s·t⁻¹ = s^r`.
    fn twist(&self) -> usize {
        let m = self.s_order();
        match self.kind {
            FamilyKind::Dihedral | FamilyKind::Quaternion => m - 1,
            FamilyKind::Semidihedral => (1 << (self.n - 2)) - 1,
            FamilyKind::Cyclic | FamilyKind::KleinFour => 1,
        }
    }

    /// `t² = s^c`.
    fn t_square(&self) -> usize {
        match self.kind {
            FamilyKind::Quaternion => 1 << (self.n - 2),
            _ => 0,
        }
    }

    /// Isomorphism type of the family group itself.
    pub fn iso_type(&self) -> IsoType {
        let order = self.order();
        let tag = match self.kind {
            FamilyKind::Dihedral => IsoTag::Dihedral,
            FamilyKind::Quaternion => IsoTag::Quaternion,
            FamilyKind::Semidihedral => IsoTag::Semidihedral,
            FamilyKind::KleinFour => IsoTag::KleinFour,
            FamilyKind::Cyclic if order == 1 => IsoTag::Trivial,
            FamilyKind::Cyclic => IsoTag::Cyclic,
        };
        IsoType::new(tag, order)
    }

    /// The family group whose isomorphism type is `iso`, if any.
    pub fn for_iso_type(iso: IsoType) -> Option<FamilyId> {
        let n = iso.order.trailing_zeros();
        if !iso.order.is_power_of_two() {
            return None;
        }
        let kind = match iso.tag {
            IsoTag::Trivial | IsoTag::Cyclic => FamilyKind::Cyclic,
            IsoTag::KleinFour => FamilyKind::KleinFour,
            IsoTag::Dihedral => FamilyKind::Dihedral,
            IsoTag::Quaternion => FamilyKind::Quaternion,
            IsoTag::Semidihedral => FamilyKind::Semidihedral,
            IsoTag::Other => return None,
        };
        FamilyId::new(kind, n).ok()
    }

    /// Index of `s^i t^j`.
    pub fn element(&self, i: i64, j: u32) -> usize {
        let m = self.s_order() as i64;
        let i = i.rem_euclid(m) as usize;
        match self.kind {
            FamilyKind::Cyclic => i,
            _ => 2 * i + (j as usize % 2),
        }
    }

    pub fn s(&self) -> usize {
        self.element(1, 0)
    }

    pub fn t(&self) -> usize {
        self.element(0, 1)
    }

    /// `s_m = s^(2^(n-m-1))`, generator of the cyclic subgroup of order `2^m`.
    pub fn s_level(&self, m: u32) -> usize {
        let top = self.s_order().trailing_zeros();
        self.element(1i64 << (top - m), 0)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.n)
    }
}

/// Builds the group with multiplication `t·s^i = s^(r·i)·t`.
pub fn build(f: FamilyId) -> Result<Group> {
    f.validate()?;
    let m = f.s_order();
    if f.kind == FamilyKind::Cyclic {
        let table = (0..m).flat_map(|a| (0..m).map(move |b| (a + b) % m)).collect();
        let gens = if m > 1 { vec![1] } else { vec![] };
        let names = (0..m).map(|i| power_name("s", i)).collect();
        return Group::from_table_unchecked(m, table, gens, Some(names));
    }
    let r = f.twist();
    let c = f.t_square();
    let order = 2 * m;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (i, j) = (a / 2, a % 2);
        for b in 0..order {
            let (k, l) = (b / 2, b % 2);
            let k_twisted = if j == 1 { (r * k) % m } else { k };
            let carry = if j == 1 && l == 1 { c } else { 0 };
            let s_exp = (i + k_twisted + carry) % m;
            table.push(2 * s_exp + ((j + l) % 2));
        }
    }
    let names = (0..order)
        .map(|x| {
            let (i, j) = (x / 2, x % 2);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (_, 0) => power_name("s", i),
                (0, _) => "t".to_string(),
                _ => format!("{}t", power_name("s", i)),
            }
        })
        .collect();
    Group::from_table_unchecked(order, table, vec![f.s(), f.t()], Some(names))
}

fn power_name(base: &str, i: usize) -> String {
    match i {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{i}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaxonomyKind {
    Whole,
    S,
    W1,
    W2,
    T1,
    T2,
}

/// Name of a subgroup class in the standard labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TaxonomyLabel {
    pub kind: TaxonomyKind,
    pub m: u32,
}

impl TaxonomyLabel {
    pub fn whole(n: u32) -> Self {
        TaxonomyLabel {
            kind: TaxonomyKind::Whole,
            m: n,
        }
    }

    pub fn s(m: u32) -> Self {
        TaxonomyLabel {
            kind: TaxonomyKind::S,
            m,
        }
    }

    /// `W^i_m` for dihedral groups, `T^i_m` otherwise.
    pub fn branch(kind: FamilyKind, i: u32, m: u32) -> Self {
        let kind = match (kind, i) {
            (FamilyKind::Dihedral, 1) => TaxonomyKind::W1,
            (FamilyKind::Dihedral, _) => TaxonomyKind::W2,
            (_, 1) => TaxonomyKind::T1,
            _ => TaxonomyKind::T2,
        };
        TaxonomyLabel { kind, m }
    }

    /// 1 for the `t`-branch, 2 for the `st`-branch, 0 otherwise.
    pub fn branch_index(&self) -> u32 {
        match self.kind {
            TaxonomyKind::W1 | TaxonomyKind::T1 => 1,
            TaxonomyKind::W2 | TaxonomyKind::T2 => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for TaxonomyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TaxonomyKind::Whole => write!(f, "D"),
            TaxonomyKind::S => write!(f, "S_{}", self.m),
            TaxonomyKind::W1 => write!(f, "W1_{}", self.m),
            TaxonomyKind::W2 => write!(f, "W2_{}", self.m),
            TaxonomyKind::T1 => write!(f, "T1_{}", self.m),
            TaxonomyKind::T2 => write!(f, "T2_{}", self.m),
        }
    }
}

/// One labelled conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaxonEntry {
    pub label: TaxonomyLabel,
    pub representative: Subgroup,
    /// The subgroup named by the label's defining generators; a member of
    /// the class, not necessarily its least element.
    pub named: Subgroup,
    pub class_size: usize,
    pub iso: IsoType,
}

/// The labelled subgroups `(label, defining subgroup, expected type)` of `f`.
fn named_subgroups(f: FamilyId, g: &Group) -> Vec<(TaxonomyLabel, Subgroup, IsoType)> {
    let n = f.n;
    let mut out = vec![(TaxonomyLabel::whole(n), g.whole(), f.iso_type())];
    let top = match f.kind {
        FamilyKind::Cyclic => n,
        _ => n - 1,
    };
    for m in 0..=top {
        let iso = if m == 0 {
            IsoType::trivial()
        } else {
            IsoType::new(IsoTag::Cyclic, 1 << m)
        };
        if f.kind == FamilyKind::Cyclic && m == n {
            continue;
        }
        out.push((TaxonomyLabel::s(m), g.closure(&[f.s_level(m)]), iso));
    }
    if f.kind == FamilyKind::Cyclic {
        return out;
    }
    let t = f.t();
    let st = g.mul(f.s(), t);
    for i in 1..=2u32 {
        let reflection = if i == 1 { t } else { st };
        let lowest = match (f.kind, i) {
            (FamilyKind::Dihedral, _) | (FamilyKind::Semidihedral, 1) => 1,
            _ => 2,
        };
        for m in lowest..n {
            let h = g.closure(&[f.s_level(m - 1), reflection]);
            let order = 1usize << m;
            let tag = match (f.kind, i, m) {
                (_, _, 1) => IsoTag::Cyclic,
                (FamilyKind::Dihedral, _, 2) | (FamilyKind::Semidihedral, 1, 2) => {
                    IsoTag::KleinFour
                }
                (FamilyKind::Quaternion, _, 2) | (FamilyKind::Semidihedral, 2, 2) => {
                    IsoTag::Cyclic
                }
                (FamilyKind::Dihedral, _, _) | (FamilyKind::Semidihedral, 1, _) => {
                    IsoTag::Dihedral
                }
                _ => IsoTag::Quaternion,
            };
            out.push((
                TaxonomyLabel::branch(f.kind, i, m),
                h,
                IsoType::new(tag, order),
            ));
        }
    }
    out
}

/// Labels every conjugacy class of subgroups of `g = build(f)`.
///
/// The labels are computed from their defining generators and then checked:
/// each class must receive exactly one label and the recognised isomorphism
/// type must agree with the expected one.
pub fn taxonomy(f: FamilyId, g: &Group) -> Result<Vec<TaxonEntry>> {
    if f.kind == FamilyKind::KleinFour {
        return Err(Error::InvalidFamily(
            "klein_four has no standard subgroup labelling".into(),
        ));
    }
    if g.order() != f.order() {
        return Err(Error::InvalidFamily(format!(
            "group of order {} is not build({f})",
            g.order()
        )));
    }
    let subgroups = g.enumerate_subgroups()?;
    let classes = g.conjugacy_classes_of_subgroups(&subgroups);
    let mut labels: Vec<Option<(TaxonomyLabel, Subgroup)>> = vec![None; classes.len()];
    for (label, h, expected) in named_subgroups(f, g) {
        let idx = classes
            .iter()
            .position(|c| c.members.contains(&h))
            .ok_or_else(|| Error::TaxonomyMismatch {
                family: f,
                detail: format!("{label} is not a subgroup"),
            })?;
        if let Some((prev, _)) = labels[idx] {
            return Err(Error::TaxonomyMismatch {
                family: f,
                detail: format!("{label} and {prev} name the same class"),
            });
        }
        let found = g.iso_type(&h);
        if found != expected {
            return Err(Error::TaxonomyMismatch {
                family: f,
                detail: format!("{label} has type {found}, expected {expected}"),
            });
        }
        labels[idx] = Some((label, h));
    }
    classes
        .iter()
        .zip(labels)
        .map(|(class, label)| {
            let (label, named) = label.ok_or_else(|| Error::UnlabeledClass {
                family: f,
                detail: format!(
                    "class of order {} with representative {:?}",
                    class.representative.order(),
                    class.representative
                ),
            })?;
            Ok(TaxonEntry {
                label,
                representative: class.representative,
                named,
                class_size: class.members.len(),
                iso: g.iso_type(&class.representative),
            })
        })
        .collect()
}

/// Number of subgroup conjugacy classes, in closed form.
pub fn expected_class_count(f: FamilyId) -> Option<usize> {
    let n = f.n as usize;
    match f.kind {
        FamilyKind::Dihedral => Some(1 + n + 2 * (n - 1)),
        FamilyKind::Quaternion => Some(1 + n + 2 * (n - 2)),
        FamilyKind::Semidihedral => Some(1 + n + (n - 1) + (n - 2)),
        FamilyKind::Cyclic => Some(n + 1),
        FamilyKind::KleinFour => None,
    }
}

/// `f_{a,b}`: `s ↦ s^b`, `t ↦ t·s^a`.
pub fn f_ab(f: FamilyId, g: &Group, a: i64, b: i64) -> Result<Automorphism> {
    if matches!(f.kind, FamilyKind::Cyclic | FamilyKind::KleinFour) {
        return Err(Error::InvalidFamily(format!("f_(a,b) is not defined on {f}")));
    }
    let s_img = f.element(b, 0);
    let t_img = g.mul(f.t(), f.element(a, 0));
    let images = extend_to_homomorphism(g, &[f.s(), f.t()], g, &[s_img, t_img])
        .ok_or(Error::NotAnAutomorphism)?;
    Automorphism::from_images(g, images)
}

/// The distinguished outer automorphism ε: `f_{1,1}` on dihedral and
/// quaternion groups (identity on `⟨s⟩`, `t ↦ ts`), inversion on cyclic groups.
pub fn distinguished_epsilon(f: FamilyId) -> Result<Automorphism> {
    let g = build(f)?;
    match f.kind {
        FamilyKind::Dihedral | FamilyKind::Quaternion if f.n >= 3 => {
            let eps = f_ab(f, &g, 1, 1)?;
            let aut = AutomorphismGroup::compute(&g)?;
            if aut.is_inner(&eps)? {
                return Err(Error::NoEpsilon(f));
            }
            Ok(eps)
        }
        FamilyKind::Cyclic if f.n >= 2 => {
            let images = (0..g.order()).map(|x| g.inverse(x)).collect();
            Automorphism::from_images(&g, images)
        }
        _ => Err(Error::NoEpsilon(f)),
    }
}
