//! Independent brute-force checks and the reference multiplicity tables.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::AutomorphismGroup;
use crate::characters::{
    enumerate_labels_of, local_model, ModuleKind, SimpleFunctorLabel, U,
};
use crate::error::{Error, Result};
use crate::family::{build, distinguished_epsilon, FamilyId, FamilyKind};
use crate::fusion::{build_fusion, FusionLabel};
use crate::group::{ElemSet, Group, IsoTag};
use crate::multiplicity::{decompose, DecompositionTable};

/// Largest group order the brute-force oracles accept.
pub const ORACLE_MAX_ORDER: usize = 64;

/// Largest family parameter covered by the reference tables (order 256).
pub const GOLDEN_MAX_N: u32 = 8;

fn oracle_cap(g: &Group) -> Result<()> {
    if g.order() > ORACLE_MAX_ORDER {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap: ORACLE_MAX_ORDER,
        });
    }
    Ok(())
}

/// |Aut(g)| by backtracking over images of every element in index order,
/// checking the full Cayley table as it goes.
pub fn brute_force_aut_count(g: &Group) -> Result<usize> {
    oracle_cap(g)?;
    let n = g.order();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    phi[0] = 0;
    used[0] = true;
    Ok(extend(g, 1, &mut phi, &mut used))
}

fn consistent(g: &Group, x: usize, phi: &[usize]) -> bool {
    (0..g.order()).filter(|&a| phi[a] != usize::MAX).all(|a| {
        let check = |p: usize, q: usize| {
            let r = g.mul(p, q);
            phi[r] == usize::MAX || phi[r] == g.mul(phi[p], phi[q])
        };
        check(a, x) && check(x, a)
    })
}

fn extend(g: &Group, x: usize, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> usize {
    let n = g.order();
    if x == n {
        return 1;
    }
    let forced = (0..x).find_map(|a| {
        (0..x)
            .find(|&b| g.mul(a, b) == x)
            .map(|b| g.mul(phi[a], phi[b]))
    });
    let candidates: Vec<usize> = match forced {
        Some(y) => vec![y],
        None => (0..n)
            .filter(|&y| !used[y] && g.element_order(y) == g.element_order(x))
            .collect(),
    };
    let mut count = 0;
    for y in candidates {
        if used[y] {
            continue;
        }
        phi[x] = y;
        used[y] = true;
        if consistent(g, x, phi) {
            count += extend(g, x + 1, phi, used);
        }
        used[y] = false;
        phi[x] = usize::MAX;
    }
    count
}

fn close_set(g: &Group, seed: ElemSet) -> ElemSet {
    let mut set = seed;
    set.insert(0);
    let mut frontier: Vec<usize> = set.iter().collect();
    while let Some(a) = frontier.pop() {
        let current: Vec<usize> = set.iter().collect();
        for b in current {
            for p in [g.mul(a, b), g.mul(b, a)] {
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
    }
    set
}

/// Number of subgroups: closures of all pairs `{a, b}`, then pairwise joins
/// until nothing new appears.
pub fn brute_force_subgroup_count(g: &Group) -> Result<usize> {
    oracle_cap(g)?;
    let n = g.order();
    let mut found: HashSet<ElemSet> = HashSet::new();
    for a in 0..n {
        for b in a..n {
            found.insert(close_set(g, [a, b].into_iter().collect()));
        }
    }
    loop {
        let current: Vec<ElemSet> = found.iter().copied().collect();
        let mut added = false;
        for (i, x) in current.iter().enumerate() {
            for y in &current[i + 1..] {
                if x.is_subset(y) || y.is_subset(x) {
                    continue;
                }
                if found.insert(close_set(g, x.union(y))) {
                    added = true;
                }
            }
        }
        if !added {
            return Ok(found.len());
        }
    }
}

/// |Aut| of the family group from its semidirect-product description.
pub fn semidirect_aut_order(f: FamilyId) -> Option<usize> {
    let n = f.n;
    match f.kind {
        FamilyKind::Dihedral => Some(1 << (2 * n - 3)),
        FamilyKind::Quaternion if n == 3 => Some(24),
        FamilyKind::Quaternion => Some(1 << (2 * n - 3)),
        FamilyKind::Semidihedral => Some(1 << (2 * n - 4)),
        FamilyKind::Cyclic if n == 0 => Some(1),
        FamilyKind::Cyclic => Some(1 << (n - 1)),
        FamilyKind::KleinFour => Some(6),
    }
}

/// Bound of an `m` range in the reference data: an integer or `n-k`.
fn eval_bound(expr: &str, n: u32) -> Result<i64> {
    let e = expr.replace(' ', "");
    if let Ok(v) = e.parse::<i64>() {
        return Ok(v);
    }
    if e == "n" {
        return Ok(n as i64);
    }
    if let Some(k) = e.strip_prefix("n-").and_then(|k| k.parse::<i64>().ok()) {
        return Ok(n as i64 - k);
    }
    Err(Error::Golden(format!("bad bound '{expr}'")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenL {
    #[serde(rename = "type")]
    pub tag: IsoTag,
    pub m_from: String,
    pub m_to: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VSelector {
    Any,
    EpsInKer,
    EpsNotInKer,
    Trivial,
    Sign,
    Std2,
    U0,
}

/// One reference row: expected multiplicity per fusion label for all labels
/// selected by `L`, `u` and `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub source: String,
    pub family: FamilyKind,
    #[serde(rename = "L")]
    pub l: GoldenL,
    pub u: U,
    #[serde(rename = "V")]
    pub v: VSelector,
    pub expected: BTreeMap<FusionLabel, usize>,
    #[serde(default)]
    pub n_min: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenTable {
    pub format: String,
    pub rows: Vec<GoldenRow>,
}

static GOLDEN_JSON: &str = include_str!("../data/golden.json");

pub fn golden_table() -> Result<GoldenTable> {
    let t: GoldenTable =
        serde_json::from_str(GOLDEN_JSON).map_err(|e| Error::Golden(e.to_string()))?;
    for r in &t.rows {
        for (label, _) in &r.expected {
            if !label.is_valid_for(r.family) {
                return Err(Error::Golden(format!("{}: label {label} invalid", r.source)));
            }
        }
        if (r.u == U::U0) != (r.v == VSelector::U0) {
            return Err(Error::Golden(format!("{}: u and V disagree", r.source)));
        }
    }
    Ok(t)
}

impl GoldenRow {
    /// Range of `m` for parameter `n`; empty when the row does not apply.
    pub fn m_range(&self, n: u32) -> Result<std::ops::RangeInclusive<i64>> {
        let lo = eval_bound(&self.l.m_from, n)?;
        let hi = eval_bound(&self.l.m_to, n)?;
        if self.n_min.is_some_and(|k| n < k) {
            return Ok(1..=0);
        }
        Ok(lo..=hi)
    }

    /// Whether `label` is selected by this row for parameter `n`.
    pub fn selects(&self, n: u32, label: &SimpleFunctorLabel) -> Result<bool> {
        let l = label.l();
        if l.tag != self.l.tag || label.u() != self.u {
            return Ok(false);
        }
        let m = l.order.trailing_zeros() as i64;
        if !self.m_range(n)?.contains(&m) {
            return Ok(false);
        }
        let v = &label.module;
        Ok(match self.v {
            VSelector::Any => true,
            VSelector::U0 => true,
            VSelector::Trivial => v.is_trivial(),
            VSelector::Std2 => v.kind == ModuleKind::S3Std2,
            VSelector::Sign => match v.kind {
                ModuleKind::S3Sign => true,
                ModuleKind::AbelianCharacter => v.exponents == [1] && {
                    let model = local_model(l)?;
                    model.aut.out_group().factor_orders() == [2]
                },
                _ => false,
            },
            VSelector::EpsInKer | VSelector::EpsNotInKer => {
                let inside = epsilon_in_kernel(label)?;
                inside == (self.v == VSelector::EpsInKer)
            }
        })
    }
}

/// Whether the distinguished outer class of `L` lies in the kernel of `V`.
pub fn epsilon_in_kernel(label: &SimpleFunctorLabel) -> Result<bool> {
    let l = label.l();
    let model = local_model(l)?;
    let eps = distinguished_epsilon(model.family)?;
    let class = model.aut.outer_class_of(&eps)?;
    let out = model.aut.out_group();
    let coords = out
        .coordinates
        .as_ref()
        .ok_or_else(|| Error::Golden(format!("Out({l}) is not abelian")))?;
    Ok(crate::characters::abelian_character_trivial_at(
        &out.factor_orders(),
        &label.module.exponents,
        &coords[class],
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenMismatch {
    pub source: String,
    pub label: String,
    pub expected: usize,
    pub actual: usize,
}

/// Outcome of comparing one computed table with the reference rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub spec: String,
    /// Number of (row, label) comparisons made.
    pub checked: usize,
    pub mismatches: Vec<GoldenMismatch>,
    /// Nonzero table entries no row accounts for.
    pub uncovered: Vec<String>,
    /// Rows with a nonempty range that selected no label, with the `m` value.
    pub unmatched_rows: Vec<String>,
}

impl GoldenReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.uncovered.is_empty() && self.unmatched_rows.is_empty()
    }
}

/// Compares a computed table with the reference rows for its family.
pub fn check_against_golden(
    table: &DecompositionTable,
    labels: &[SimpleFunctorLabel],
    golden: &GoldenTable,
) -> Result<GoldenReport> {
    let n = table.n;
    let computed = table.as_map();
    let mut covered: HashSet<&SimpleFunctorLabel> = HashSet::new();
    let mut report = GoldenReport {
        spec: table.spec(),
        checked: 0,
        mismatches: Vec::new(),
        uncovered: Vec::new(),
        unmatched_rows: Vec::new(),
    };
    for row in golden.rows.iter().filter(|r| r.family == table.family) {
        let Some(&expected) = row.expected.get(&table.fusion) else {
            continue;
        };
        let mut hits_per_m: BTreeMap<i64, usize> = row.m_range(n)?.map(|m| (m, 0)).collect();
        for label in labels {
            if !row.selects(n, label)? {
                continue;
            }
            *hits_per_m
                .entry(label.l().order.trailing_zeros() as i64)
                .or_default() += 1;
            covered.insert(label);
            report.checked += 1;
            let actual = computed.get(label).copied().unwrap_or(0);
            if actual != expected {
                report.mismatches.push(GoldenMismatch {
                    source: row.source.clone(),
                    label: label.to_string(),
                    expected,
                    actual,
                });
            }
        }
        for (m, hits) in hits_per_m {
            if hits == 0 {
                report
                    .unmatched_rows
                    .push(format!("{} ({:?}) at m={m}", row.source, row.v));
            }
        }
    }
    for (label, m) in &computed {
        if !covered.contains(label) {
            report.uncovered.push(format!("{label} = {m}"));
        }
    }
    Ok(report)
}

/// Decomposes `(f, label)` and compares with the reference rows.
pub fn verify_golden(f: FamilyId, label: FusionLabel) -> Result<GoldenReport> {
    let fs = build_fusion(f, label)?;
    let table = decompose(&fs)?;
    let labels = enumerate_labels_of(fs.group())?;
    check_against_golden(&table, &labels, &golden_table()?)
}

/// Structural check of one family group against the oracles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralCheck {
    pub group: String,
    pub quantity: String,
    pub engine: usize,
    pub reference: usize,
}

impl StructuralCheck {
    pub fn ok(&self) -> bool {
        self.engine == self.reference
    }
}

/// Engine counts against the brute-force oracles and the closed formula.
pub fn structural_checks(f: FamilyId) -> Result<Vec<StructuralCheck>> {
    let g = build(f)?;
    let mut out = Vec::new();
    let aut = AutomorphismGroup::compute(&g)?;
    if let Some(expected) = semidirect_aut_order(f) {
        out.push(StructuralCheck {
            group: f.to_string(),
            quantity: "aut order (formula)".into(),
            engine: aut.len(),
            reference: expected,
        });
    }
    if g.order() <= ORACLE_MAX_ORDER {
        out.push(StructuralCheck {
            group: f.to_string(),
            quantity: "aut order (backtracking)".into(),
            engine: aut.len(),
            reference: brute_force_aut_count(&g)?,
        });
        out.push(StructuralCheck {
            group: f.to_string(),
            quantity: "subgroup count".into(),
            engine: g.enumerate_subgroups()?.len(),
            reference: brute_force_subgroup_count(&g)?,
        });
    }
    Ok(out)
}

/// Every supported `(family, n)` with `n ≤ max_n`.
pub fn supported_groups(max_n: u32) -> Vec<FamilyId> {
    let max_n = max_n.min(GOLDEN_MAX_N);
    [
        FamilyKind::Dihedral,
        FamilyKind::Quaternion,
        FamilyKind::Semidihedral,
    ]
    .into_iter()
    .flat_map(|kind| {
        let lo = if kind == FamilyKind::Quaternion { 4 } else { kind.min_n() };
        (lo..=max_n).map(move |n| FamilyId { kind, n })
    })
    .collect()
}

/// Full verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub golden: Vec<GoldenReport>,
    pub structural: Vec<StructuralCheck>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.golden.iter().all(GoldenReport::is_clean) && self.structural.iter().all(StructuralCheck::ok)
    }
}

/// Golden tables for every block, plus structural checks, for `n ≤ max_n`.
pub fn verify_all(max_n: u32) -> Result<VerifyReport> {
    let groups = supported_groups(max_n);
    let cells: Vec<(FamilyId, FusionLabel)> = groups
        .iter()
        .flat_map(|&f| FusionLabel::all_for(f.kind).into_iter().map(move |l| (f, l)))
        .collect();
    let golden = cells
        .par_iter()
        .map(|&(f, l)| verify_golden(f, l))
        .collect::<Result<Vec<_>>>()?;
    let structural = groups
        .par_iter()
        .map(|&f| structural_checks(f))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(VerifyReport { golden, structural })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aut_counts() {
        assert_eq!(brute_force_aut_count(&build(FamilyId::dihedral(3).unwrap()).unwrap()).unwrap(), 8);
        assert_eq!(brute_force_aut_count(&build(FamilyId::quaternion(3).unwrap()).unwrap()).unwrap(), 24);
        assert_eq!(brute_force_aut_count(&build(FamilyId::cyclic(1).unwrap()).unwrap()).unwrap(), 1);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(brute_force_subgroup_count(&build(FamilyId::klein_four()).unwrap()).unwrap(), 5);
        assert_eq!(brute_force_subgroup_count(&build(FamilyId::dihedral(3).unwrap()).unwrap()).unwrap(), 10);
    }

    #[test]
    fn oracle_cap_enforced() {
        let g = build(FamilyId::dihedral(7).unwrap()).unwrap();
        assert!(matches!(brute_force_aut_count(&g), Err(Error::OrderCapExceeded { .. })));
    }

    #[test]
    fn bounds() {
        assert_eq!(eval_bound("n-1", 5).unwrap(), 4);
        assert_eq!(eval_bound("3", 5).unwrap(), 3);
        assert_eq!(eval_bound("n", 5).unwrap(), 5);
        assert!(eval_bound("2n", 5).is_err());
    }

    #[test]
    fn golden_parses() {
        let t = golden_table().unwrap();
        assert_eq!(t.rows.len(), 43);
    }

    #[test]
    fn small_dihedral_matches() {
        let r = verify_golden(FamilyId::dihedral(4).unwrap(), FusionLabel::F01).unwrap();
        assert!(r.is_clean(), "{r:#?}");
        assert!(r.checked > 0);
    }
}
