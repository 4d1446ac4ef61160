use block_functors::automorphism::AutomorphismGroup;
use block_functors::characters::{local_model, DeltaPair, SimpleFunctorLabel, SimpleModuleLabel, U};
use block_functors::family::{build, expected_class_count, taxonomy};
use block_functors::fusion::{build_fusion, fusion_isomorphic};
use block_functors::multiplicity::{decompose, first_difference, functorially_equivalent, num_simple_modules};
use block_functors::oracle::{
    brute_force_aut_count, brute_force_subgroup_count, semidirect_aut_order, supported_groups,
    verify_golden,
};
use block_functors::{Error, FamilyId, FusionLabel, IsoTag, IsoType};

fn trivial_label() -> SimpleFunctorLabel {
    SimpleFunctorLabel {
        pair: DeltaPair { l: IsoType::trivial(), u: U::Identity },
        module: SimpleModuleLabel::trivial_character(),
    }
}

#[test]
fn d8_has_ten_subgroups() {
    let g = build(FamilyId::dihedral(3).unwrap()).unwrap();
    assert_eq!(g.enumerate_subgroups().unwrap().len(), 10);
    assert_eq!(brute_force_subgroup_count(&g).unwrap(), 10);
}

#[test]
fn q8_has_twenty_four_automorphisms() {
    let g = build(FamilyId::quaternion(3).unwrap()).unwrap();
    let aut = AutomorphismGroup::compute(&g).unwrap();
    assert_eq!(aut.len(), 24);
    assert_eq!(brute_force_aut_count(&g).unwrap(), 24);
    assert_eq!(aut.out_group().order(), 6);
}

#[test]
fn automorphism_counts_agree_with_oracles() {
    for f in supported_groups(6) {
        let g = build(f).unwrap();
        let n = AutomorphismGroup::compute(&g).unwrap().len();
        assert_eq!(Some(n), semidirect_aut_order(f), "{f}");
        assert_eq!(n, brute_force_aut_count(&g).unwrap(), "{f}");
    }
}

#[test]
fn class_counts_match_closed_form() {
    for f in supported_groups(7) {
        let g = build(f).unwrap();
        let tax = taxonomy(f, &g).unwrap();
        assert_eq!(Some(tax.len()), expected_class_count(f), "{f}");
        let total: usize = tax.iter().map(|e| e.class_size).sum();
        assert_eq!(total, g.enumerate_subgroups().unwrap().len(), "{f}");
    }
}

#[test]
fn semidihedral_sixteen_top_labels() {
    // Out(SD16) has order 2, so L = D contributes two labels.
    let f = FamilyId::semidihedral(4).unwrap();
    let table = decompose(&build_fusion(f, FusionLabel::F00).unwrap()).unwrap();
    let top: Vec<_> = table.entries.iter().filter(|e| e.l == f.iso_type()).collect();
    assert_eq!(top.len(), 2);
    assert_eq!(local_model(f.iso_type()).unwrap().aut.out_group().order(), 2);
}

#[test]
fn dihedral_eight_full_fusion() {
    let f = FamilyId::dihedral(3).unwrap();
    let fs = build_fusion(f, FusionLabel::F11).unwrap();
    let table = decompose(&fs).unwrap();
    assert_eq!(table.get(&trivial_label()), 3);
    // Enhancing both Klein four classes fuses all involutions but keeps the two classes apart.
    assert_eq!(fs.class_count(IsoType::new(IsoTag::KleinFour, 4)), 2);
    assert_eq!(fs.class_count(IsoType::new(IsoTag::Cyclic, 2)), 1);
}

#[test]
fn trivial_multiplicity_is_number_of_simple_modules() {
    for f in supported_groups(6) {
        for label in FusionLabel::all_for(f.kind) {
            let t = decompose(&build_fusion(f, label).unwrap()).unwrap();
            assert_eq!(t.get(&trivial_label()), num_simple_modules(f, label).unwrap(), "{f}:{label}");
        }
    }
}

#[test]
fn distinct_fusion_gives_distinct_functors() {
    for f in supported_groups(6) {
        let labels = FusionLabel::all_for(f.kind);
        let tables: Vec<_> = labels
            .iter()
            .map(|&l| decompose(&build_fusion(f, l).unwrap()).unwrap())
            .collect();
        for i in 0..labels.len() {
            for j in 0..labels.len() {
                let fi = build_fusion(f, labels[i]).unwrap();
                let fj = build_fusion(f, labels[j]).unwrap();
                let iso = fusion_isomorphic(&fi, &fj).unwrap();
                assert_eq!(functorially_equivalent(&tables[i], &tables[j]), iso, "{f} {} {}", labels[i], labels[j]);
                assert_eq!(first_difference(&tables[i], &tables[j]).is_none(), iso);
            }
        }
    }
}

#[test]
fn different_families_are_not_equivalent() {
    let d = decompose(&build_fusion(FamilyId::dihedral(4).unwrap(), FusionLabel::F11).unwrap()).unwrap();
    let q = decompose(&build_fusion(FamilyId::quaternion(4).unwrap(), FusionLabel::F11).unwrap()).unwrap();
    assert!(!functorially_equivalent(&d, &q));
}

#[test]
fn dihedral_and_quaternion_match_reference_rows() {
    for f in supported_groups(7).into_iter().filter(|f| f.kind != block_functors::FamilyKind::Semidihedral) {
        for label in FusionLabel::all_for(f.kind) {
            let r = verify_golden(f, label).unwrap();
            assert!(r.is_clean(), "{f}:{label}: {:?}", r);
            assert!(r.checked > 0);
        }
    }
}

#[test]
fn semidihedral_deviations_confined_to_top_cyclic_subgroup() {
    for f in supported_groups(7).into_iter().filter(|f| f.kind == block_functors::FamilyKind::Semidihedral) {
        let top_cyclic = IsoType::new(IsoTag::Cyclic, 1 << (f.n - 1));
        for label in FusionLabel::all_for(f.kind) {
            let r = verify_golden(f, label).unwrap();
            assert!(r.uncovered.is_empty() && r.unmatched_rows.is_empty(), "{f}:{label}");
            for m in &r.mismatches {
                assert_eq!(m.source, "semidihedral/c", "{f}:{label}: {m:?}");
                assert!(m.label.contains(&top_cyclic.to_string()), "{f}:{label}: {m:?}");
            }
        }
    }
}

#[test]
fn quaternion_eight_is_rejected() {
    assert!(matches!(
        build_fusion(FamilyId::quaternion(3).unwrap(), FusionLabel::F00),
        Err(Error::QuaternionEightDeferred)
    ));
}
