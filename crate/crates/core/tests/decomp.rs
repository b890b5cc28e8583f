use std::sync::Arc;

use altvertex::constructions::{named_subgroups, natural_modules, degree_six_data, NaturalKind};
use altvertex::decomp::{decompose, is_indecomposable, DecompOptions, LocalityCertificate};
use altvertex::gmod::{iso_test, GModule};
use altvertex::perm::PermGroup;
use altvertex::Field;

fn natural(n: usize, group: PermGroup, kind: NaturalKind, field: Field) -> GModule {
    let nat = natural_modules(n, field).unwrap();
    GModule::natural(Arc::new(group), &nat, kind, format!("n={n}")).unwrap()
}

#[test]
fn heart_on_sylow_at_ten_is_local() {
    let s = named_subgroups(10).unwrap();
    let e = natural(10, s.q.clone(), NaturalKind::Heart, Field::GF2);
    assert!(is_indecomposable(&e, 0).unwrap().is_local());
}

#[test]
fn degree_six_residue_field() {
    let data = degree_six_data().unwrap();
    let e = natural(6, data.q.clone(), NaturalKind::Heart, Field::GF2);
    assert_eq!(is_indecomposable(&e, 0).unwrap(), LocalityCertificate::Local { residue_degree: 2 });
    let fixed = DecompOptions { allow_escalation: false, ..DecompOptions::default() };
    assert_eq!(decompose(&e, &fixed).unwrap().dims(), vec![4]);
    let d = decompose(&e, &DecompOptions::default()).unwrap();
    assert!(d.escalated);
    assert_eq!(d.field_used, Field::GF4);
    assert_eq!(d.dims(), vec![2, 2]);
    assert!(d.replay());
    assert!(d.is_absolute());
    let e4 = natural(6, data.q.clone(), NaturalKind::Heart, Field::GF4);
    let u = e4.submodule(&data.u_basis).unwrap();
    let v = e4.submodule(&data.v_basis).unwrap();
    assert!(!iso_test(&u, &v, 0).unwrap().is_isomorphic());
    let matches = |m: &GModule| iso_test(&d.summands[0], m, 0).unwrap().is_isomorphic();
    let other = |m: &GModule| iso_test(&d.summands[1], m, 0).unwrap().is_isomorphic();
    assert!((matches(&u) && other(&v)) || (matches(&v) && other(&u)));
}

#[test]
fn permutation_module_is_indecomposable_but_artificial_sum_splits() {
    for n in [4usize, 6, 8] {
        let g = PermGroup::symmetric(n);
        let m = natural(n, g.clone(), NaturalKind::Permutation, Field::GF2);
        assert!(is_indecomposable(&m, 0).unwrap().is_local(), "n = {n}");
        let aug = natural(n, g.clone(), NaturalKind::Augmentation, Field::GF2);
        let sum = aug.direct_sum(&GModule::trivial(Arc::clone(aug.group_arc()), Field::GF2)).unwrap();
        match is_indecomposable(&sum, 0).unwrap() {
            LocalityCertificate::Splits { idempotent } => {
                assert_eq!(idempotent.mul(&idempotent), idempotent);
            }
            other => panic!("expected a split, got {other:?}"),
        }
    }
}

#[test]
fn block_cycle_restriction_at_fourteen() {
    let s = named_subgroups(14).unwrap();
    let e = natural(14, s.y_alt.clone(), NaturalKind::Heart, Field::GF2);
    let d = decompose(&e, &DecompOptions::default()).unwrap();
    assert_eq!(d.dims(), vec![4, 8]);
    assert!(d.replay());
}

#[test]
fn x8_restriction_at_ten_is_two_regular_modules() {
    let s = named_subgroups(10).unwrap();
    let x = Arc::new(PermGroup::new(10, vec![s.xs[0].clone()]).unwrap());
    let e = natural(10, (*x).clone(), NaturalKind::Heart, Field::GF2);
    let d = decompose(&e, &DecompOptions::default()).unwrap();
    assert_eq!(d.dims(), vec![4, 4]);
    assert!(d.replay());
    let reg = GModule::regular(x, Field::GF2, 16).unwrap();
    for w in &d.summands {
        assert!(iso_test(w, &reg, 0).unwrap().is_isomorphic());
    }
}

#[test]
fn escalation_leaves_absolutely_indecomposable_summands() {
    let data = degree_six_data().unwrap();
    let e = natural(6, data.q.clone(), NaturalKind::Heart, Field::GF2);
    let d = decompose(&e, &DecompOptions::default()).unwrap();
    for w in &d.summands {
        assert_eq!(is_indecomposable(w, 5).unwrap(), LocalityCertificate::Local { residue_degree: 1 });
    }
}
