//! Block specs and serialisable summaries of taxonomies and fusion systems.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{build, taxonomy, FamilyId, FamilyKind, TaxonomyLabel};
use crate::fusion::{check_block, FusionLabel, FusionSystem};
use crate::group::{Group, IsoType, Subgroup};

/// Parsed `family:n[:label]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub family: FamilyId,
    pub fusion: Option<FusionLabel>,
}

impl BlockSpec {
    /// Parses a spec; `with_fusion` demands (or forbids) the label part.
    pub fn parse(s: &str, with_fusion: bool) -> Result<BlockSpec> {
        let bad = |reason: &str| Error::InvalidSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let expected = if with_fusion { 3 } else { 2 };
        if parts.len() != expected {
            return Err(bad(if with_fusion {
                "expected family:n:label, e.g. dihedral:4:F01"
            } else {
                "expected family:n, e.g. semidihedral:5"
            }));
        }
        let kind: FamilyKind = parts[0].parse()?;
        if !matches!(
            kind,
            FamilyKind::Dihedral | FamilyKind::Quaternion | FamilyKind::Semidihedral
        ) {
            return Err(bad("family must be dihedral, quaternion or semidihedral"));
        }
        let n: u32 = parts[1]
            .parse()
            .map_err(|_| bad("n must be a non-negative integer"))?;
        let family = FamilyId::new(kind, n)?;
        let fusion = if with_fusion {
            let label: FusionLabel = parts[2].parse()?;
            check_block(family, label)?;
            Some(label)
        } else {
            None
        };
        Ok(BlockSpec { family, fusion })
    }

    pub fn label(&self) -> FusionLabel {
        self.fusion.expect("spec parsed with a fusion label")
    }
}

fn subgroup_names(g: &Group, h: &Subgroup) -> String {
    let gens = crate::group::minimal_generators(g, h);
    if gens.is_empty() {
        return "<1>".into();
    }
    let names: Vec<String> = gens.iter().map(|&x| g.name_of(x)).collect();
    format!("<{}>", names.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaxonRow {
    pub label: String,
    pub generators: String,
    pub order: usize,
    #[serde(rename = "type")]
    pub iso: IsoType,
    pub class_size: usize,
    /// Label of the class of the normaliser of the named subgroup.
    pub normalizer: String,
}

/// Labelled subgroup classes of `f` with their normalisers.
pub fn taxonomy_rows(f: FamilyId) -> Result<Vec<TaxonRow>> {
    let g = build(f)?;
    let tax = taxonomy(f, &g)?;
    let label_of = |h: &Subgroup| -> String {
        tax.iter()
            .find(|e| {
                e.iso == g.iso_type(h)
                    && (0..g.order()).any(|x| g.conjugate_subgroup(&e.named, x) == *h)
            })
            .map_or_else(|| "?".to_string(), |e| e.label.to_string())
    };
    Ok(tax
        .iter()
        .map(|e| TaxonRow {
            label: e.label.to_string(),
            generators: subgroup_names(&g, &e.named),
            order: e.named.order(),
            iso: e.iso,
            class_size: e.class_size,
            normalizer: label_of(&g.normalizer(&e.named)),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionRow {
    /// Taxonomy labels of the D-classes merged into this F-class.
    pub labels: Vec<String>,
    pub representative: String,
    #[serde(rename = "type")]
    pub iso: IsoType,
    pub subgroups: usize,
    pub out_f_order: usize,
    pub out_f: String,
    pub enhanced: bool,
}

fn describe_out_f(order: usize) -> String {
    match order {
        1 => "1".into(),
        6 => "S3".into(),
        k => format!("C{k}"),
    }
}

pub fn fusion_rows(fs: &FusionSystem) -> Result<Vec<FusionRow>> {
    let g = fs.group();
    let tax = taxonomy(fs.family(), g)?;
    let mut labels: Vec<Vec<TaxonomyLabel>> = vec![Vec::new(); fs.classes().len()];
    for e in &tax {
        if let Some(c) = fs.class_of(&e.named) {
            labels[c].push(e.label);
        }
    }
    Ok(fs
        .classes()
        .iter()
        .zip(labels)
        .map(|(c, mut l)| {
            l.sort();
            FusionRow {
                labels: l.iter().map(|x| x.to_string()).collect(),
                representative: subgroup_names(g, &fs.subgroups()[c.representative]),
                iso: c.iso,
                subgroups: c.members.len(),
                out_f_order: c.out_f_order(),
                out_f: describe_out_f(c.out_f_order()),
                enhanced: c.enhanced,
            }
        })
        .collect())
}

pub fn taxonomy_text(f: FamilyId, rows: &[TaxonRow]) -> String {
    let mut out = format!("{f}\n");
    for r in rows {
        writeln!(
            out,
            "{:<7} {:<6} {:<16} class size {:<3} normaliser {}",
            r.label,
            r.iso.to_string(),
            r.generators,
            r.class_size,
            r.normalizer
        )
        .unwrap();
    }
    out
}

pub fn fusion_text(fs: &FusionSystem, rows: &[FusionRow]) -> String {
    let mut out = format!("{}:{}\n", fs.family(), fs.label());
    for r in rows {
        writeln!(
            out,
            "{:<6} Out_F = {:<3} {:>3} subgroups  {}{}",
            r.iso.to_string(),
            r.out_f,
            r.subgroups,
            r.labels.join(" "),
            if r.enhanced { "  (essential)" } else { "" }
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct TaxonCsv<'a> {
    label: &'a str,
    generators: &'a str,
    order: usize,
    l_type: &'a str,
    class_size: usize,
    normalizer: &'a str,
}

pub fn taxonomy_csv(rows: &[TaxonRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(TaxonCsv {
            label: &r.label,
            generators: &r.generators,
            order: r.order,
            l_type: r.iso.tag.name(),
            class_size: r.class_size,
            normalizer: &r.normalizer,
        })
        .expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}

#[derive(Serialize)]
struct FusionCsv<'a> {
    labels: String,
    representative: &'a str,
    l_type: &'a str,
    order: usize,
    subgroups: usize,
    out_f_order: usize,
    enhanced: bool,
}

pub fn fusion_csv(rows: &[FusionRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(FusionCsv {
            labels: r.labels.join(" "),
            representative: &r.representative,
            l_type: r.iso.tag.name(),
            order: r.iso.order,
            subgroups: r.subgroups,
            out_f_order: r.out_f_order,
            enhanced: r.enhanced,
        })
        .expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}
