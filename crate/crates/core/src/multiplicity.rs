//! Multiplicities of simple functors in the functor of a block, full
//! decomposition tables, and functorial equivalence.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automorphism::{first_isomorphism_onto, last_isomorphism_onto, Automorphism};
use crate::characters::{
    enumerate_labels_of, local_model, orbit_weight, DeltaPair, SimpleFunctorLabel,
    SimpleModuleLabel, U,
};
use crate::error::{Error, Result};
use crate::family::{FamilyId, FamilyKind};
use crate::fusion::{check_block, FusionLabel, FusionSystem};
use crate::group::{IsoType, Subgroup};

/// `l(G, b)` for the block with fusion system `label`.
pub fn num_simple_modules(f: FamilyId, label: FusionLabel) -> Result<usize> {
    check_block(f, label)?;
    Ok(match (f.kind, label) {
        (FamilyKind::Semidihedral, FusionLabel::F00) => 1,
        (FamilyKind::Semidihedral, FusionLabel::F01 | FusionLabel::F10) => 2,
        (FamilyKind::Semidihedral, FusionLabel::F11) => 3,
        (_, FusionLabel::F00) => 1,
        (_, FusionLabel::F01) => 2,
        _ => 3,
    })
}

/// Values `l(kC_G(P)e_P)` per F-class, for fully centralised representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDatum {
    pub family: FamilyId,
    pub label: FusionLabel,
    /// Indexed like [`FusionSystem::classes`].
    pub per_class_l: Vec<usize>,
    /// Each local PIM set is a trivial permutation set of size `l(P)`.
    pub trivial_pim_action: bool,
}

/// Source of local data for a closed fusion system.
pub trait LocalDataProvider {
    fn local_datum(&self, fs: &FusionSystem) -> Result<LocalDatum>;
}

/// Local data for the three families: `l = 1` except on the trivial
/// subgroup (`l(G, b)`) and, for quaternion and semidihedral groups, on the
/// class of the centre.
#[derive(Clone, Copy, Debug, Default)]
pub struct StandardLocalData;

impl LocalDataProvider for StandardLocalData {
    fn local_datum(&self, fs: &FusionSystem) -> Result<LocalDatum> {
        let f = fs.family();
        let label = fs.label();
        let mut per_class_l = vec![1; fs.classes().len()];
        let trivial = fs
            .class_of(&Subgroup::trivial())
            .expect("trivial subgroup is enumerated");
        per_class_l[trivial] = num_simple_modules(f, label)?;
        let centre_l = match f.kind {
            FamilyKind::Quaternion => Some(num_simple_modules(f, label)?),
            FamilyKind::Semidihedral => {
                let (_, j) = label.indices();
                Some(num_simple_modules(f, FusionLabel::from_indices(false, j))?)
            }
            _ => None,
        };
        if let Some(l) = centre_l {
            let c = fs
                .center_class()
                .ok_or_else(|| Error::ClosureBound("centre not among the subgroups".into()))?;
            per_class_l[c] = l;
        }
        Ok(LocalDatum {
            family: f,
            label,
            per_class_l,
            trivial_pim_action: true,
        })
    }
}

pub fn local_datum(fs: &FusionSystem) -> Result<LocalDatum> {
    StandardLocalData.local_datum(fs)
}

/// `Aut_F(P)` of a class representative carried to the model of its type.
#[derive(Clone, Debug)]
pub struct ClassTransport {
    pub class: usize,
    pub iso: IsoType,
    /// `π0⁻¹ Aut_F(P) π0` for the least isomorphism `π0: L → P`.
    pub h: Vec<Automorphism>,
    /// Image of `h` in `Out(L)`, as coset ids.
    pub out_image: Vec<usize>,
}

fn pull_back(fs: &FusionSystem, class: usize, pi: &[usize]) -> Vec<Automorphism> {
    let mut inv = vec![usize::MAX; fs.group().order()];
    for (x, &y) in pi.iter().enumerate() {
        inv[y] = x;
    }
    let mut h: Vec<Automorphism> = fs.classes()[class]
        .aut_f
        .iter()
        .map(|a| {
            Automorphism::from_images_unchecked(
                pi.iter()
                    .map(|&y| inv[a.apply(y).expect("aut_f is defined on the class representative")])
                    .collect(),
            )
        })
        .collect();
    h.sort();
    h
}

/// Transports `Aut_F` of the class representative to the model of its type
/// and checks that the least and greatest isomorphisms agree up to
/// conjugacy in `Out(L)`.
pub fn transport_class(fs: &FusionSystem, class: usize) -> Result<ClassTransport> {
    let c = &fs.classes()[class];
    let model = local_model(c.iso)?;
    let rep = fs.representative(class);
    let first = first_isomorphism_onto(&model.group, fs.group(), rep)
        .ok_or_else(|| Error::TransportMismatch(format!("no isomorphism from {} onto class {class}", c.iso)))?;
    let last = last_isomorphism_onto(&model.group, fs.group(), rep).expect("an isomorphism exists");
    let h = pull_back(fs, class, &first);
    let out_image = model.out_image(&h)?;
    if last != first {
        let other = model.out_image(&pull_back(fs, class, &last))?;
        let out = &model.aut.out_group().group;
        let target: HashSet<usize> = other.iter().copied().collect();
        let conjugate = (0..out.order()).any(|g| {
            let moved: HashSet<usize> = out_image.iter().map(|&x| out.conjugate(g, x)).collect();
            moved == target
        });
        if !conjugate {
            return Err(Error::TransportMismatch(format!("class {class} of type {}", c.iso)));
        }
    }
    Ok(ClassTransport {
        class,
        iso: c.iso,
        h,
        out_image,
    })
}

/// Evaluates multiplicities for one closed fusion system.
#[derive(Debug)]
pub struct MultiplicityEngine<'a> {
    fs: &'a FusionSystem,
    datum: LocalDatum,
    transports: Vec<ClassTransport>,
}

impl<'a> MultiplicityEngine<'a> {
    pub fn new(fs: &'a FusionSystem, datum: LocalDatum) -> Result<Self> {
        if !datum.trivial_pim_action {
            return Err(Error::CharacterData(
                "local PIM sets with non-trivial action are not supported".into(),
            ));
        }
        if datum.per_class_l.len() != fs.classes().len() || datum.per_class_l.contains(&0) {
            return Err(Error::CharacterData("local datum does not match the fusion system".into()));
        }
        let transports = (0..fs.classes().len())
            .map(|c| transport_class(fs, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiplicityEngine {
            fs,
            datum,
            transports,
        })
    }

    pub fn transports(&self) -> &[ClassTransport] {
        &self.transports
    }

    pub fn datum(&self) -> &LocalDatum {
        &self.datum
    }

    /// `Σ_{[P] ≅ L} l(P) · w(P, u, V)`.
    pub fn multiplicity(&self, label: &SimpleFunctorLabel) -> Result<usize> {
        label.validate()?;
        let mut found = false;
        let mut total = 0;
        for t in self.transports.iter().filter(|t| t.iso == label.l()) {
            found = true;
            let w = orbit_weight(t.iso, &t.h, label.u(), &label.module)?;
            total += self.datum.per_class_l[t.class] * w;
        }
        if !found {
            return Err(Error::IncompatibleLabel {
                family: self.fs.family(),
                label: label.to_string(),
            });
        }
        Ok(total)
    }

    pub fn decompose(&self) -> Result<DecompositionTable> {
        let f = self.fs.family();
        let mut entries = Vec::new();
        for label in enumerate_labels_of(self.fs.group())? {
            let m = self.multiplicity(&label)?;
            if m > 0 {
                entries.push(TableEntry::new(&label, m));
            }
        }
        Ok(DecompositionTable {
            family: f.kind,
            n: f.n,
            fusion: self.fs.label(),
            entries,
        })
    }
}

pub fn multiplicity(fs: &FusionSystem, ld: &LocalDatum, label: &SimpleFunctorLabel) -> Result<usize> {
    MultiplicityEngine::new(fs, ld.clone())?.multiplicity(label)
}

/// Full table with the standard local data.
pub fn decompose(fs: &FusionSystem) -> Result<DecompositionTable> {
    MultiplicityEngine::new(fs, local_datum(fs)?)?.decompose()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    #[serde(rename = "L")]
    pub l: IsoType,
    pub u: U,
    #[serde(rename = "V")]
    pub v: SimpleModuleLabel,
    pub m: usize,
}

impl TableEntry {
    pub fn new(label: &SimpleFunctorLabel, m: usize) -> Self {
        TableEntry {
            l: label.l(),
            u: label.u(),
            v: label.module.clone(),
            m,
        }
    }

    pub fn label(&self) -> SimpleFunctorLabel {
        SimpleFunctorLabel {
            pair: DeltaPair { l: self.l, u: self.u },
            module: self.v.clone(),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    l_type: &'a str,
    l_order: usize,
    u: String,
    v_kind: &'a str,
    v_exponents: String,
    m: usize,
}

/// Nonzero multiplicities of one block functor, in canonical label order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTable {
    pub family: FamilyKind,
    pub n: u32,
    pub fusion: FusionLabel,
    pub entries: Vec<TableEntry>,
}

impl DecompositionTable {
    pub fn as_map(&self) -> BTreeMap<SimpleFunctorLabel, usize> {
        self.entries.iter().map(|e| (e.label(), e.m)).collect()
    }

    /// Multiplicity of `label`, zero when absent.
    pub fn get(&self, label: &SimpleFunctorLabel) -> usize {
        self.entries
            .iter()
            .find(|e| e.label() == *label)
            .map_or(0, |e| e.m)
    }

    pub fn spec(&self) -> String {
        format!("{}:{}:{}", self.family, self.n, self.fusion)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let mut t: DecompositionTable =
            serde_json::from_str(s).map_err(|e| Error::InvalidSpec {
                spec: "<json>".into(),
                reason: e.to_string(),
            })?;
        t.entries.sort_by_key(|e| e.label());
        Ok(t)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            w.serialize(CsvRow {
                l_type: e.l.tag.name(),
                l_order: e.l.order,
                u: e.u.to_string(),
                v_kind: e.v.kind.name(),
                v_exponents: e
                    .v
                    .exponents
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                m: e.m,
            })
            .expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
    }

    /// Human-readable layout, grouped by `L`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.spec()).unwrap();
        let mut current = None;
        for e in &self.entries {
            if current != Some(e.l) {
                writeln!(out, "L = {}", e.l).unwrap();
                current = Some(e.l);
            }
            writeln!(out, "  u = {:<2}  V = {:<10}  m = {}", e.u.to_string(), e.v.to_string(), e.m).unwrap();
        }
        out
    }
}

/// Equality of tables as label → multiplicity maps.
pub fn functorially_equivalent(a: &DecompositionTable, b: &DecompositionTable) -> bool {
    a.as_map() == b.as_map()
}

/// Least label (canonical order) whose multiplicities differ.
pub fn first_difference(
    a: &DecompositionTable,
    b: &DecompositionTable,
) -> Option<(SimpleFunctorLabel, usize, usize)> {
    let (ma, mb) = (a.as_map(), b.as_map());
    let labels: std::collections::BTreeSet<&SimpleFunctorLabel> = ma.keys().chain(mb.keys()).collect();
    let diff = labels.into_iter().find_map(|l| {
        let (x, y) = (ma.get(l).copied().unwrap_or(0), mb.get(l).copied().unwrap_or(0));
        (x != y).then(|| (l.clone(), x, y))
    });
    diff
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::ModuleKind;
    use crate::fusion::build_fusion;
    use crate::group::IsoTag;

    fn table(f: FamilyId, l: FusionLabel) -> DecompositionTable {
        decompose(&build_fusion(f, l).unwrap()).unwrap()
    }

    fn s3_row(t: &DecompositionTable, l: IsoType) -> [usize; 4] {
        let lab = |u, module| SimpleFunctorLabel {
            pair: DeltaPair { l, u },
            module,
        };
        [
            t.get(&lab(U::Identity, SimpleModuleLabel::s3(ModuleKind::S3Trivial))),
            t.get(&lab(U::Identity, SimpleModuleLabel::s3(ModuleKind::S3Sign))),
            t.get(&lab(U::Identity, SimpleModuleLabel::s3(ModuleKind::S3Std2))),
            t.get(&lab(U::U0, SimpleModuleLabel::trivial_character())),
        ]
    }

    #[test]
    fn simple_module_counts() {
        let d = FamilyId::dihedral(4).unwrap();
        let s = FamilyId::semidihedral(4).unwrap();
        assert_eq!(num_simple_modules(d, FusionLabel::F11).unwrap(), 3);
        assert_eq!(num_simple_modules(s, FusionLabel::F10).unwrap(), 2);
        assert_eq!(num_simple_modules(s, FusionLabel::F00).unwrap(), 1);
        assert!(num_simple_modules(d, FusionLabel::F10).is_err());
    }

    #[test]
    fn dihedral_eight_f00() {
        let t = table(FamilyId::dihedral(3).unwrap(), FusionLabel::F00);
        let trivial = SimpleFunctorLabel {
            pair: DeltaPair { l: IsoType::trivial(), u: U::Identity },
            module: SimpleModuleLabel::trivial_character(),
        };
        assert_eq!(t.get(&trivial), 1);
        let c2 = SimpleFunctorLabel {
            pair: DeltaPair { l: IsoType::new(IsoTag::Cyclic, 2), u: U::Identity },
            module: SimpleModuleLabel::abelian(vec![]),
        };
        assert_eq!(t.get(&c2), 3);
        assert_eq!(s3_row(&t, IsoType::new(IsoTag::KleinFour, 4)), [2, 0, 2, 0]);
        let d8 = IsoType::new(IsoTag::Dihedral, 8);
        assert!(t.entries.iter().filter(|e| e.l == d8).all(|e| e.m == 1));
    }

    #[test]
    fn semidihedral_sixteen_f11() {
        let t = table(FamilyId::semidihedral(4).unwrap(), FusionLabel::F11);
        assert_eq!(s3_row(&t, IsoType::new(IsoTag::Quaternion, 8)), [1, 0, 0, 1]);
        assert_eq!(s3_row(&t, IsoType::new(IsoTag::KleinFour, 4)), [1, 0, 0, 1]);
        assert_eq!(t.entries[0].m, 3);
    }

    #[test]
    fn quaternion_f01_q8_row() {
        let t = table(FamilyId::quaternion(4).unwrap(), FusionLabel::F01);
        assert_eq!(s3_row(&t, IsoType::new(IsoTag::Quaternion, 8)), [2, 0, 1, 1]);
    }

    #[test]
    fn json_round_trip() {
        let t = table(FamilyId::dihedral(4).unwrap(), FusionLabel::F01);
        let json = t.to_json();
        let back = DecompositionTable::from_json(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn csv_has_one_row_per_entry() {
        let t = table(FamilyId::dihedral(3).unwrap(), FusionLabel::F11);
        assert_eq!(t.to_csv().lines().count(), t.entries.len() + 1);
    }

    #[test]
    fn equivalence_and_difference() {
        let f = FamilyId::dihedral(4).unwrap();
        let a = table(f, FusionLabel::F00);
        let b = table(f, FusionLabel::F11);
        assert!(functorially_equivalent(&a, &a));
        assert!(!functorially_equivalent(&a, &b));
        let (label, x, y) = first_difference(&a, &b).unwrap();
        assert_eq!(label.l(), IsoType::trivial());
        assert_eq!((x, y), (1, 3));
    }

    #[test]
    fn missing_type_is_incompatible() {
        let fs = build_fusion(FamilyId::quaternion(4).unwrap(), FusionLabel::F00).unwrap();
        let ld = local_datum(&fs).unwrap();
        let v4 = SimpleFunctorLabel {
            pair: DeltaPair { l: IsoType::new(IsoTag::KleinFour, 4), u: U::Identity },
            module: SimpleModuleLabel::s3(ModuleKind::S3Trivial),
        };
        assert!(matches!(multiplicity(&fs, &ld, &v4), Err(Error::IncompatibleLabel { .. })));
    }
}
