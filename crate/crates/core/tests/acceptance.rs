//! One line per acceptance criterion. Exits non-zero on any failure that is
//! not the documented deviation in the semidihedral cyclic row.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use block_functors::automorphism::{Automorphism, AutomorphismGroup, OutStructure};
use block_functors::characters::{
    abelian_character_trivial_at, character_kernel, fixed_point_dim, local_model, modules_for,
    orbit_weight, s3_inner_products, model_aut_f, DeltaPair, ModuleKind, OutFType,
    SimpleFunctorLabel, SimpleModuleLabel, U,
};
use block_functors::family::{build, expected_class_count, f_ab, taxonomy, TaxonomyLabel};
use block_functors::fusion::{build_fusion, build_fusion_with_enhanced, fusion_isomorphic};
use block_functors::multiplicity::{decompose, functorially_equivalent};
use block_functors::oracle::{
    brute_force_aut_count, brute_force_subgroup_count, semidirect_aut_order, supported_groups,
    verify_golden, GOLDEN_MAX_N,
};
use block_functors::report::BlockSpec;
use block_functors::{Error, FamilyId, FamilyKind, FusionLabel, IsoTag, IsoType};

struct Outcome {
    pass: bool,
    detail: String,
    /// Failure consists only of the documented semidihedral cyclic deviation.
    known: bool,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into(), known: false }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into(), known: false }
}

fn cells() -> Vec<(FamilyId, FusionLabel)> {
    supported_groups(GOLDEN_MAX_N)
        .into_iter()
        .flat_map(|f| FusionLabel::all_for(f.kind).into_iter().map(move |l| (f, l)))
        .collect()
}

/// Multiplicity of `(C_{2^{n-1}}, 1, V)` predicted from the action of `t`
/// on `<s>` computed directly in the semidihedral group.
fn semidihedral_top_cyclic_prediction(n: u32, v: &SimpleModuleLabel) -> Result<usize, String> {
    let f = FamilyId::semidihedral(n).map_err(|e| e.to_string())?;
    let g = build(f).map_err(|e| e.to_string())?;
    let order = 1usize << (n - 1);
    let r = (1i64 << (n - 2)) - 1;
    if g.conjugate(f.t(), f.s()) != f.element(r, 0) {
        return Err("t does not act on s by the expected power".into());
    }
    let c = FamilyId::cyclic(n - 1).map_err(|e| e.to_string())?;
    let model = build(c).map_err(|e| e.to_string())?;
    let power = Automorphism::from_images(&model, (0..order).map(|i| c.element(i as i64 * r, 0)).collect())
        .map_err(|e| e.to_string())?;
    let l = IsoType::new(IsoTag::Cyclic, order);
    let lm = local_model(l).map_err(|e| e.to_string())?;
    let class = lm.aut.outer_class_of(&power).map_err(|e| e.to_string())?;
    let out = lm.aut.out_group();
    let coords = out.coordinates.as_ref().ok_or("Out of a cyclic group is abelian")?;
    Ok(abelian_character_trivial_at(&out.factor_orders(), &v.exponents, &coords[class]) as usize)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut clean = 0;
    let mut mismatches = 0;
    let mut unexplained = Vec::new();
    let cells = cells();
    for &(f, l) in &cells {
        let report = match verify_golden(f, l) {
            Ok(r) => r,
            Err(e) => return fail(format!("{f}:{l}: {e}")),
        };
        if report.is_clean() {
            clean += 1;
            continue;
        }
        if !report.uncovered.is_empty() || !report.unmatched_rows.is_empty() {
            unexplained.push(format!("{f}:{l}: coverage {:?} {:?}", report.uncovered, report.unmatched_rows));
        }
        let table = decompose(&build_fusion(f, l).unwrap()).unwrap();
        let top = IsoType::new(IsoTag::Cyclic, 1 << (f.n - 1));
        for m in &report.mismatches {
            mismatches += 1;
            let entry = modules_for(top).unwrap().into_iter().find(|v| {
                SimpleFunctorLabel {
                    pair: DeltaPair { l: top, u: U::Identity },
                    module: v.clone(),
                }
                .to_string()
                    == m.label
            });
            let explained = f.kind == FamilyKind::Semidihedral
                && m.source == "semidihedral/c"
                && entry.as_ref().is_some_and(|v| {
                    let label = SimpleFunctorLabel {
                        pair: DeltaPair { l: top, u: U::Identity },
                        module: v.clone(),
                    };
                    semidihedral_top_cyclic_prediction(f.n, v) == Ok(m.actual) && table.get(&label) == m.actual
                });
            if !explained {
                unexplained.push(format!("{f}:{l}: {} {} expected {} got {}", m.source, m.label, m.expected, m.actual));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if mismatches == 0 && unexplained.is_empty() {
        return pass(format!("{clean}/{} blocks match every reference row ({secs:.1}s)", cells.len()));
    }
    if unexplained.is_empty() {
        return Outcome {
            pass: false,
            known: true,
            detail: format!(
                "{clean}/{} blocks match; {mismatches} entries differ, all in the semidihedral cyclic row at L = C_(2^(n-1)), \
                 where t acts on <s> by x -> x^(2^(n-2)-1) rather than inversion; computed values agree with that action ({secs:.1}s)",
                cells.len()
            ),
        };
    }
    fail(format!("unexplained: {}", unexplained.join("; ")))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for f in supported_groups(GOLDEN_MAX_N) {
        let labels = FusionLabel::all_for(f.kind);
        let systems: Vec<_> = labels.iter().map(|&l| build_fusion(f, l).unwrap()).collect();
        let tables: Vec<_> = systems.iter().map(|s| decompose(s).unwrap()).collect();
        for i in 0..labels.len() {
            for j in 0..labels.len() {
                let eq = functorially_equivalent(&tables[i], &tables[j]);
                let iso = fusion_isomorphic(&systems[i], &systems[j]).unwrap();
                if eq != iso {
                    return fail(format!("{f}: {} vs {}: equivalent={eq}, isomorphic={iso}", labels[i], labels[j]));
                }
                checked += 1;
            }
        }
        if f.kind != FamilyKind::Semidihedral {
            let m = if f.kind == FamilyKind::Dihedral { 2 } else { 3 };
            let other = build_fusion_with_enhanced(f, FusionLabel::F01, &[TaxonomyLabel::branch(f.kind, 1, m)]).unwrap();
            let t = decompose(&other).unwrap();
            let eq = functorially_equivalent(&t, &tables[1]);
            let iso = fusion_isomorphic(&other, &systems[1]).unwrap();
            if !(eq && iso) {
                return fail(format!("{f}: F01 with the other essential class: equivalent={eq}, isomorphic={iso}"));
            }
            checked += 1;
        }
    }
    pass(format!("{checked} pairs agree"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut groups: Vec<FamilyId> = vec![FamilyId::quaternion(3).unwrap()];
    groups.extend(supported_groups(GOLDEN_MAX_N));
    for f in groups {
        let g = build(f).unwrap();
        let aut = AutomorphismGroup::compute(&g).unwrap();
        let formula = semidirect_aut_order(f).unwrap();
        if aut.len() != formula {
            return fail(format!("{f}: |Aut| = {} but formula gives {formula}", aut.len()));
        }
        if g.order() <= 64 {
            let brute = brute_force_aut_count(&g).unwrap();
            if brute != formula {
                return fail(format!("{f}: backtracking gives {brute}, formula {formula}"));
            }
        }
        if f.kind == FamilyKind::Semidihedral {
            let out = aut.out_group();
            let cyclic_order = 1usize << (f.n - 3);
            let is_cyclic = matches!(&out.structure, OutStructure::Abelian { factors } if factors.len() == 1 && factors[0].0 == cyclic_order);
            let f05 = f_ab(f, &g, 0, 5).unwrap();
            let class = aut.outer_class_of(&f05).unwrap();
            if !is_cyclic || out.group.element_order(class) != cyclic_order {
                return fail(format!("{f}: Out = {}, class of f_(0,5) has order {}", out.describe(), out.group.element_order(class)));
            }
        }
        checked += 1;
    }
    pass(format!("{checked} groups"))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for f in supported_groups(GOLDEN_MAX_N) {
        let g = build(f).unwrap();
        let subgroups = g.enumerate_subgroups().unwrap();
        let tax = taxonomy(f, &g).unwrap();
        if Some(tax.len()) != expected_class_count(f) {
            return fail(format!("{f}: {} classes, expected {:?}", tax.len(), expected_class_count(f)));
        }
        if tax.iter().map(|e| e.class_size).sum::<usize>() != subgroups.len() {
            return fail(format!("{f}: class sizes do not sum to the subgroup count"));
        }
        for e in tax.iter().filter(|e| e.label.branch_index() > 0) {
            let next = TaxonomyLabel { kind: e.label.kind, m: e.label.m + 1 };
            let expected = if e.label.m + 1 == f.n {
                g.whole()
            } else {
                match tax.iter().find(|x| x.label == next) {
                    Some(x) => x.named,
                    None => return fail(format!("{f}: no {next}")),
                }
            };
            if g.normalizer(&e.named) != expected {
                return fail(format!("{f}: normaliser of {} is not {next}", e.label));
            }
        }
        if g.order() <= 64 {
            let brute = brute_force_subgroup_count(&g).unwrap();
            if brute != subgroups.len() {
                return fail(format!("{f}: closure count {brute}, layered count {}", subgroups.len()));
            }
        }
        checked += 1;
    }
    pass(format!("{checked} groups"))
}

fn criterion_5() -> Outcome {
    let v4 = IsoType::new(IsoTag::KleinFour, 4);
    let q8 = IsoType::new(IsoTag::Quaternion, 8);
    let rows = [
        (OutFType::C2, [1, 0, 1, 0]),
        (OutFType::S3, [1, 0, 0, 1]),
    ];
    let modules = [
        (U::Identity, SimpleModuleLabel::s3(ModuleKind::S3Trivial)),
        (U::Identity, SimpleModuleLabel::s3(ModuleKind::S3Sign)),
        (U::Identity, SimpleModuleLabel::s3(ModuleKind::S3Std2)),
        (U::U0, SimpleModuleLabel::trivial_character()),
    ];
    for l in [v4, q8] {
        for (ty, expected) in rows {
            let h = model_aut_f(l, ty).unwrap();
            for ((u, v), want) in modules.iter().zip(expected) {
                let got = orbit_weight(l, &h, *u, v).unwrap();
                if got != want {
                    return fail(format!("{l}, Out_F {ty:?}, ({u}, {v}): {got} != {want}"));
                }
            }
        }
    }
    if s3_inner_products() != [[6, 0, 0], [0, 6, 0], [0, 0, 6]] {
        return fail("S3 character table is not orthonormal");
    }
    // Kernel predicate on every subgroup of every abelian Out(L) up to C64.
    for m in 1..=6 {
        let l = IsoType::new(IsoTag::Cyclic, 1 << m);
        let model = local_model(l).unwrap();
        let out = &model.aut.out_group().group;
        let subgroups = out.enumerate_subgroups().unwrap();
        for v in modules_for(l).unwrap() {
            let kernel: HashSet<usize> = character_kernel(l, &v).unwrap().into_iter().collect();
            for h in &subgroups {
                let elems = h.elements();
                let dim = fixed_point_dim(l, &v, &elems).unwrap();
                let inside = elems.iter().all(|x| kernel.contains(x));
                if dim != inside as usize {
                    return fail(format!("{l}, {v}: dim {dim} but kernel containment {inside}"));
                }
            }
        }
    }
    let mut systems = 0;
    for (f, label) in cells() {
        let fs = build_fusion(f, label).unwrap();
        if !fs.same_closure(&fs.alperin_closure().unwrap()) {
            return fail(format!("{f}:{label}: closure not idempotent"));
        }
        let g = fs.group();
        for c in fs.classes() {
            if c.members.iter().any(|&i| g.iso_type(&fs.subgroups()[i]) != c.iso) {
                return fail(format!("{f}:{label}: F-class mixes isomorphism types"));
            }
        }
        for cls in g.conjugacy_classes_of_subgroups(fs.subgroups()) {
            let ids: HashSet<_> = cls.members.iter().map(|h| fs.class_of(h).unwrap()).collect();
            if ids.len() != 1 {
                return fail(format!("{f}:{label}: a conjugacy class is split between F-classes"));
            }
        }
        systems += 1;
    }
    pass(format!("16 lemma rows, orthogonality, kernel predicate, {systems} closed systems"))
}

fn criterion_6() -> Outcome {
    match BlockSpec::parse("quaternion:3:F00", true) {
        Err(e @ Error::QuaternionEightDeferred) if e.to_string().contains("deferred to prior work") => {}
        other => return fail(format!("quaternion:3 gave {other:?}")),
    }
    for spec in ["dihedral:4:F10", "quaternion:5:F10"] {
        match BlockSpec::parse(spec, true) {
            Err(Error::InvalidFusionLabel { .. }) => {}
            other => return fail(format!("{spec} gave {other:?}")),
        }
    }
    pass("quaternion:3 deferred; F10 rejected for dihedral and quaternion")
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("reference tables", criterion_1),
        ("equivalence matches fusion isomorphism", criterion_2),
        ("automorphism oracles", criterion_3),
        ("taxonomy oracles", criterion_4),
        ("lemma tables and closure properties", criterion_5),
        ("negative control", criterion_6),
    ];
    let mut ok = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {} ({name}): {status}: {}", i + 1, outcome.detail);
        if !outcome.pass && !outcome.known {
            ok = false;
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
