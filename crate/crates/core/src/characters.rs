//! Simple functor labels `(L, u, V)` and fixed-point dimensions of simple
//! `Out(L, u)`-modules.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::automorphism::{Automorphism, AutomorphismGroup, OutStructure};
use crate::error::{Error, Result};
use crate::family::{build, FamilyId};
use crate::group::{Group, IsoTag, IsoType};

/// The `u` of a pair `(L, u)`: the identity or an automorphism of order 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum U {
    #[serde(rename = "1")]
    Identity,
    #[serde(rename = "u0")]
    U0,
}

impl fmt::Display for U {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            U::Identity => "1",
            U::U0 => "u0",
        })
    }
}

/// Whether `L` carries the extra pair `(L, u0)`.
pub fn admits_u0(l: IsoType) -> bool {
    matches!(
        (l.tag, l.order),
        (IsoTag::KleinFour, 4) | (IsoTag::Quaternion, 8)
    )
}

/// Structure of `Out(L, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOut {
    /// Abelian, with non-increasing cyclic factor orders.
    Abelian(Vec<usize>),
    S3,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaPair {
    #[serde(rename = "L")]
    pub l: IsoType,
    pub u: U,
}

impl DeltaPair {
    pub fn new(l: IsoType, u: U) -> Result<Self> {
        if u == U::U0 && !admits_u0(l) {
            return Err(Error::CharacterData(format!("{l} has no pair with u0")));
        }
        Ok(DeltaPair { l, u })
    }

    pub fn out_group_of_pair(&self) -> Result<PairOut> {
        if self.u == U::U0 {
            return Ok(PairOut::Trivial);
        }
        let model = local_model(self.l)?;
        let out = model.aut.out_group();
        Ok(match &out.structure {
            OutStructure::Abelian { factors } if factors.is_empty() => PairOut::Trivial,
            OutStructure::Abelian { .. } => PairOut::Abelian(out.factor_orders()),
            OutStructure::NonAbelian { .. } => PairOut::S3,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    AbelianCharacter,
    S3Trivial,
    S3Sign,
    S3Std2,
}

impl ModuleKind {
    pub fn name(self) -> &'static str {
        match self {
            ModuleKind::AbelianCharacter => "abelian_character",
            ModuleKind::S3Trivial => "s3_trivial",
            ModuleKind::S3Sign => "s3_sign",
            ModuleKind::S3Std2 => "s3_std2",
        }
    }

    /// Character values on elements of order 1, 2, 3.
    fn s3_values(self) -> Option<[i64; 3]> {
        match self {
            ModuleKind::AbelianCharacter => None,
            ModuleKind::S3Trivial => Some([1, 1, 1]),
            ModuleKind::S3Sign => Some([1, -1, 1]),
            ModuleKind::S3Std2 => Some([2, 0, -1]),
        }
    }
}

/// A simple module of `Out(L, u)`.
///
/// Abelian characters are exponent tuples: the character sends the generator
/// of the `i`-th cyclic factor (of order `o_i`) to `ζ_{o_i}^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleModuleLabel {
    pub kind: ModuleKind,
    pub exponents: Vec<usize>,
}

impl SimpleModuleLabel {
    pub fn trivial_character() -> Self {
        SimpleModuleLabel {
            kind: ModuleKind::AbelianCharacter,
            exponents: Vec::new(),
        }
    }

    pub fn abelian(exponents: Vec<usize>) -> Self {
        SimpleModuleLabel {
            kind: ModuleKind::AbelianCharacter,
            exponents,
        }
    }

    pub fn s3(kind: ModuleKind) -> Self {
        SimpleModuleLabel {
            kind,
            exponents: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        if self.kind == ModuleKind::S3Std2 {
            2
        } else {
            1
        }
    }

    /// Whether the module is the trivial one.
    pub fn is_trivial(&self) -> bool {
        match self.kind {
            ModuleKind::AbelianCharacter => self.exponents.iter().all(|&e| e == 0),
            ModuleKind::S3Trivial => true,
            _ => false,
        }
    }

    fn reduced(mut self, factors: &[usize]) -> Self {
        for (e, o) in self.exponents.iter_mut().zip(factors) {
            *e %= o;
        }
        self
    }
}

impl fmt::Display for SimpleModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModuleKind::AbelianCharacter if self.exponents.is_empty() => f.write_str("F"),
            ModuleKind::AbelianCharacter => {
                let e: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
                write!(f, "chi({})", e.join(","))
            }
            ModuleKind::S3Trivial => f.write_str("F"),
            ModuleKind::S3Sign => f.write_str("F-"),
            ModuleKind::S3Std2 => f.write_str("V2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleFunctorLabel {
    pub pair: DeltaPair,
    pub module: SimpleModuleLabel,
}

impl SimpleFunctorLabel {
    pub fn l(&self) -> IsoType {
        self.pair.l
    }

    pub fn u(&self) -> U {
        self.pair.u
    }

    /// Checks that `module` is a simple module of `Out(L, u)` in canonical form.
    pub fn validate(&self) -> Result<()> {
        let bad = || Error::CharacterData(format!("{self} is not a valid label"));
        match (self.pair.out_group_of_pair()?, self.module.kind) {
            (PairOut::Trivial, ModuleKind::AbelianCharacter) if self.module.exponents.is_empty() => Ok(()),
            (PairOut::S3, k) if k != ModuleKind::AbelianCharacter && self.module.exponents.is_empty() => Ok(()),
            (PairOut::Abelian(factors), ModuleKind::AbelianCharacter)
                if factors.len() == self.module.exponents.len()
                    && self.module.exponents.iter().zip(&factors).all(|(e, o)| e < o) =>
            {
                Ok(())
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SimpleFunctorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({}, {}, {})", self.pair.l, self.pair.u, self.module)
    }
}

/// A model group for an isomorphism type, with its automorphism data.
#[derive(Debug)]
pub struct LocalModel {
    pub iso: IsoType,
    pub family: FamilyId,
    pub group: Group,
    pub aut: AutomorphismGroup,
    /// Least automorphism of order 3, for V4 and Q8.
    pub u0: Option<Automorphism>,
}

impl LocalModel {
    fn compute(iso: IsoType) -> Result<LocalModel> {
        let family = FamilyId::for_iso_type(iso)
            .ok_or_else(|| Error::CharacterData(format!("no model group for {iso}")))?;
        let group = build(family)?;
        let aut = AutomorphismGroup::compute(&group)?;
        let u0 = if admits_u0(iso) {
            aut.automorphisms().iter().find(|a| a.order() == 3).cloned()
        } else {
            None
        };
        Ok(LocalModel {
            iso,
            family,
            group,
            aut,
            u0,
        })
    }

    /// Out-coset ids of a set of automorphisms of the model.
    pub fn out_image(&self, h: &[Automorphism]) -> Result<Vec<usize>> {
        self.aut.out_image(h)
    }
}

static MODELS: OnceLock<Mutex<HashMap<IsoType, Arc<LocalModel>>>> = OnceLock::new();

/// Shared model for `iso`, computed once per process.
pub fn local_model(iso: IsoType) -> Result<Arc<LocalModel>> {
    let cache = MODELS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().expect("model cache poisoned").get(&iso) {
        return Ok(Arc::clone(m));
    }
    let model = Arc::new(LocalModel::compute(iso)?);
    let mut guard = cache.lock().expect("model cache poisoned");
    Ok(Arc::clone(guard.entry(iso).or_insert(model)))
}

/// All simple modules of `Out(L, 1)`, canonical order.
pub fn modules_for(l: IsoType) -> Result<Vec<SimpleModuleLabel>> {
    Ok(match DeltaPair::new(l, U::Identity)?.out_group_of_pair()? {
        PairOut::Trivial => vec![SimpleModuleLabel::trivial_character()],
        PairOut::S3 => vec![
            SimpleModuleLabel::s3(ModuleKind::S3Trivial),
            SimpleModuleLabel::s3(ModuleKind::S3Sign),
            SimpleModuleLabel::s3(ModuleKind::S3Std2),
        ],
        PairOut::Abelian(factors) => {
            let mut out = vec![Vec::new()];
            for &o in &factors {
                out = out
                    .into_iter()
                    .flat_map(|prefix: Vec<usize>| {
                        (0..o).map(move |e| {
                            let mut v = prefix.clone();
                            v.push(e);
                            v
                        })
                    })
                    .collect();
            }
            out.into_iter()
                .map(|e| SimpleModuleLabel::abelian(e).reduced(&factors))
                .collect()
        }
    })
}

/// Every label `(L, u, V)` with `L` isomorphic to a subgroup of `g`, sorted.
pub fn enumerate_labels_of(g: &Group) -> Result<Vec<SimpleFunctorLabel>> {
    let subgroups = g.enumerate_subgroups()?;
    let types: HashSet<IsoType> = subgroups.iter().map(|h| g.iso_type(h)).collect();
    let mut labels = Vec::new();
    for l in types {
        for module in modules_for(l)? {
            labels.push(SimpleFunctorLabel {
                pair: DeltaPair::new(l, U::Identity)?,
                module,
            });
        }
        if admits_u0(l) {
            labels.push(SimpleFunctorLabel {
                pair: DeltaPair::new(l, U::U0)?,
                module: SimpleModuleLabel::trivial_character(),
            });
        }
    }
    labels.sort();
    Ok(labels)
}

/// Every label for the family group `d`.
pub fn enumerate_labels(d: FamilyId) -> Result<Vec<SimpleFunctorLabel>> {
    d.validate()?;
    enumerate_labels_of(&build(d)?)
}

fn check_subgroup(out: &Group, h: &[usize]) -> Result<()> {
    let set: HashSet<usize> = h.iter().copied().collect();
    let closed = set.contains(&0)
        && h.iter().all(|&a| h.iter().all(|&b| set.contains(&out.mul(a, b))));
    if closed {
        Ok(())
    } else {
        Err(Error::CharacterData(format!("{h:?} is not a subgroup of Out")))
    }
}

/// `dim V^H` for `H` a subgroup of `Out(L)`, given by Out-coset ids.
///
/// Computed as `(1/|H|) Σ_{h∈H} χ_V(h)`; an inexact quotient is an error.
pub fn fixed_point_dim(l: IsoType, v: &SimpleModuleLabel, h: &[usize]) -> Result<usize> {
    let model = local_model(l)?;
    let out = model.aut.out_group();
    check_subgroup(&out.group, h)?;
    if h.is_empty() {
        return Err(Error::CharacterData("empty subgroup".into()));
    }
    let (sum, size) = match v.kind.s3_values() {
        Some(values) => {
            if out.is_abelian() {
                return Err(Error::CharacterData(format!("{v} is not a module of Out({l})")));
            }
            let sum: i64 = h
                .iter()
                .map(|&c| match out.group.element_order(c) {
                    1 => Ok(values[0]),
                    2 => Ok(values[1]),
                    3 => Ok(values[2]),
                    o => Err(Error::CharacterData(format!("element of order {o} in S3"))),
                })
                .sum::<Result<i64>>()?;
            (sum, h.len() as i64)
        }
        None => {
            let factors = out.factor_orders();
            if factors.len() != v.exponents.len() {
                return Err(Error::CharacterData(format!("{v} is not a character of Out({l})")));
            }
            let coords = out.coordinates.as_ref().expect("abelian Out has coordinates");
            let kernel = h
                .iter()
                .filter(|&&c| abelian_character_trivial_at(&factors, &v.exponents, &coords[c]))
                .count();
            if h.len() % kernel != 0 {
                return Err(Error::CharacterData("kernel size does not divide |H|".into()));
            }
            // Σχ(h) over H is |H| when χ|_H is trivial and 0 otherwise.
            let sum = if kernel == h.len() { h.len() as i64 } else { 0 };
            (sum, h.len() as i64)
        }
    };
    if sum < 0 || sum % size != 0 {
        return Err(Error::CharacterData(format!(
            "character sum {sum} not divisible by |H| = {size}"
        )));
    }
    Ok((sum / size) as usize)
}

/// `χ(c) = 1` where `χ = (e_i)` and `c` has coordinates `(c_i)`.
pub fn abelian_character_trivial_at(factors: &[usize], exponents: &[usize], coords: &[usize]) -> bool {
    let o = factors.iter().copied().max().unwrap_or(1);
    let total: usize = factors
        .iter()
        .zip(exponents)
        .zip(coords)
        .map(|((&oi, &e), &c)| (e * c % oi) * (o / oi))
        .sum();
    total % o == 0
}

/// Out-coset ids forming the kernel of an abelian character of `Out(L)`.
pub fn character_kernel(l: IsoType, v: &SimpleModuleLabel) -> Result<Vec<usize>> {
    let model = local_model(l)?;
    let out = model.aut.out_group();
    let coords = out
        .coordinates
        .as_ref()
        .ok_or_else(|| Error::CharacterData(format!("Out({l}) is not abelian")))?;
    let factors = out.factor_orders();
    Ok((0..out.order())
        .filter(|&c| abelian_character_trivial_at(&factors, &v.exponents, &coords[c]))
        .collect())
}

/// Type of `Out_F(P)` for the essential types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFType {
    C2,
    S3,
}

impl OutFType {
    pub fn from_order(order: usize) -> Result<OutFType> {
        match order {
            2 => Ok(OutFType::C2),
            6 => Ok(OutFType::S3),
            o => Err(Error::UnrecognisedOutF(o)),
        }
    }
}

/// `{φ ∈ Aut(L) : φ u φ⁻¹ ∈ u·Inn(L)}`: the restriction of `Aut(L, u)` to `L`.
fn pair_automorphisms(model: &LocalModel, u: &Automorphism) -> Result<Vec<Automorphism>> {
    let u_inv = u.inverse();
    let mut out = Vec::new();
    for phi in model.aut.automorphisms() {
        let c = phi.compose(u).compose(&phi.inverse()).compose(&u_inv);
        if model.aut.is_inner(&c)? {
            out.push(phi.clone());
        }
    }
    Ok(out)
}

/// Dimension of `⊕_π F ⊗_{Aut(L,u)_π} V` for one F-class, with `H` the
/// transported `Aut_F(P) ≤ Aut(L)`.
///
/// Isomorphisms `L → P` are `π0 ∘ ψ` with `ψ ∈ Aut(L)`; the admissible ones
/// form `X = {ψ : ψ u ψ⁻¹ ∈ H}`, and the orbits are the double cosets
/// `H \ X / A` with `A` the restriction of `Aut(L, u)`.
pub fn orbit_weight(
    l: IsoType,
    h: &[Automorphism],
    u: U,
    v: &SimpleModuleLabel,
) -> Result<usize> {
    let model = local_model(l)?;
    let h_set: HashSet<&Automorphism> = h.iter().collect();
    let u_aut = match u {
        U::Identity => {
            // X = A = Aut(L): a single orbit with stabiliser H.
            let image = model.out_image(h)?;
            return fixed_point_dim(l, v, &image);
        }
        U::U0 => model
            .u0
            .clone()
            .ok_or_else(|| Error::CharacterData(format!("{l} has no u0")))?,
    };
    if !v.is_trivial() || v.kind != ModuleKind::AbelianCharacter || !v.exponents.is_empty() {
        return Err(Error::CharacterData(format!("{v} is not a module of Out({l}, u0)")));
    }
    let a = pair_automorphisms(&model, &u_aut)?;
    let x: Vec<&Automorphism> = model
        .aut
        .automorphisms()
        .iter()
        .filter(|psi| h_set.contains(&psi.compose(&u_aut).compose(&psi.inverse())))
        .collect();
    let mut covered: HashSet<Automorphism> = HashSet::new();
    let mut weight = 0;
    for psi in x {
        if covered.contains(psi) {
            continue;
        }
        for hh in h {
            for phi in &a {
                covered.insert(hh.compose(psi).compose(&phi.inverse()));
            }
        }
        // Out(L, u0) is trivial, so each orbit contributes F ⊗ F.
        weight += 1;
    }
    Ok(weight)
}

/// [`orbit_weight`] for `(u0, F)` given only the type of `Out_F(P)`,
/// evaluated on a model Aut_F(P) of that type.
pub fn u0_orbit_weight(l: IsoType, out_f: OutFType) -> Result<usize> {
    let h = model_aut_f(l, out_f)?;
    orbit_weight(l, &h, U::U0, &SimpleModuleLabel::trivial_character())
}

/// A subgroup of `Aut(L)` containing `Inn(L)` whose image in `Out(L) ≅ S3`
/// has the given type: the full group for S3, Inn plus the least outer
/// involution class for C2.
pub fn model_aut_f(l: IsoType, out_f: OutFType) -> Result<Vec<Automorphism>> {
    if !admits_u0(l) {
        return Err(Error::CharacterData(format!("{l} is not an essential type")));
    }
    let model = local_model(l)?;
    let out = model.aut.out_group();
    let cosets: Vec<usize> = match out_f {
        OutFType::S3 => (0..out.order()).collect(),
        OutFType::C2 => {
            let t = (1..out.order())
                .find(|&c| out.group.element_order(c) == 2)
                .ok_or(Error::UnrecognisedOutF(out.order()))?;
            vec![0, t]
        }
    };
    Ok(cosets
        .iter()
        .flat_map(|&c| out.cosets[c].iter().map(|&i| model.aut.automorphisms()[i].clone()))
        .collect())
}

/// `Σ_g χ_i(g) χ_j(g)` over S3 for the stored character table, indexed by
/// trivial, sign, standard.
pub fn s3_inner_products() -> [[i64; 3]; 3] {
    // Class sizes for orders 1, 2, 3.
    let sizes = [1, 3, 2];
    let kinds = [ModuleKind::S3Trivial, ModuleKind::S3Sign, ModuleKind::S3Std2];
    let mut out = [[0; 3]; 3];
    for (i, a) in kinds.iter().enumerate() {
        for (j, b) in kinds.iter().enumerate() {
            let (va, vb) = (a.s3_values().unwrap(), b.s3_values().unwrap());
            out[i][j] = (0..3).map(|k| sizes[k] * va[k] * vb[k]).sum();
        }
    }
    out
}
