use std::sync::Arc;

use altvertex::constructions::{named_subgroups, natural_modules, degree_six_data, NaturalKind};
use altvertex::gmod::{endo_algebra, hom_space, iso_test, GModule, IsoOutcome};
use altvertex::perm::{Perm, PermGroup};
use altvertex::Field;

fn heart(n: usize, group: PermGroup, field: Field) -> GModule {
    let nat = natural_modules(n, field).unwrap();
    GModule::natural(Arc::new(group), &nat, NaturalKind::Heart, format!("E, n={n}")).unwrap()
}

fn perm(text: &str, n: usize) -> Perm {
    Perm::parse_with_degree(text, n).unwrap()
}

#[test]
fn heart_on_x8_is_twice_regular() {
    let s = named_subgroups(10).unwrap();
    let x = Arc::new(PermGroup::new(10, vec![s.xs[0].clone()]).unwrap());
    let e = heart(10, (*x).clone(), Field::GF2);
    let reg = GModule::regular(Arc::clone(&x), Field::GF2, 16).unwrap();
    let two = reg.direct_sum(&reg).unwrap();
    let e = e.restrict_arc(x).unwrap();
    assert!(iso_test(&e, &two, 7).unwrap().is_isomorphic());
}

#[test]
fn endomorphisms_over_h_prime_at_ten() {
    let n = 10;
    let a4 = PermGroup::alternating(4);
    let mut gens: Vec<Perm> = a4.gens().iter().map(|g| g.extend(n)).collect();
    gens.extend(a4.gens().iter().map(|g| g.shift(4, n)));
    gens.push(perm("(1,2)(5,6)", n));
    gens.push(perm("(1,2)(9,10)", n));
    let h = PermGroup::new(n, gens).unwrap();
    assert_eq!(h.order(), 12 * 12 * 4);
    let e = heart(n, h, Field::GF2);
    let end = endo_algebra(&e).unwrap();
    assert_eq!(end.dim(), 5);
    assert!(end.is_commutative());
}

#[test]
fn induced_u_matches_heart_on_q6() {
    let data = degree_six_data().unwrap();
    let e = heart(6, data.q6.clone(), Field::GF4);
    let res_q = e.restrict(&data.q).unwrap();
    let u = res_q.submodule(&data.u_basis).unwrap();
    let ind = u.induce(Arc::new(data.q6.clone()), 8).unwrap();
    assert_eq!(ind.dim(), 4);
    match iso_test(&ind, &e, 3).unwrap() {
        IsoOutcome::Isomorphic(x) => {
            for (a, b) in ind.actions().iter().zip(e.actions()) {
                assert_eq!(a.mul(&x), x.mul(b));
            }
        }
        other => panic!("expected an isomorphism, got {other:?}"),
    }
}

#[test]
fn frobenius_reciprocity_dimensions() {
    for n in [4usize, 6, 8] {
        let s = named_subgroups(n).unwrap();
        let g = Arc::new(s.q.clone());
        let e = heart(n, s.q.clone(), Field::GF2);
        for h in [s.b_alt.clone(), s.y_alt.clone(), PermGroup::trivial(n)] {
            if h.index_in(&s.q).unwrap() > 64 {
                continue;
            }
            let h = Arc::new(h);
            let res = e.restrict_arc(Arc::clone(&h)).unwrap();
            for w in [GModule::trivial(Arc::clone(&h), Field::GF2), res.clone()] {
                let ind = w.induce(Arc::clone(&g), 64).unwrap();
                assert_eq!(ind.dim() as u128, w.dim() as u128 * h.index_in(&g).unwrap());
                assert_eq!(
                    hom_space(&ind, &e).unwrap().dim(),
                    hom_space(&w, &res).unwrap().dim(),
                    "n = {n}, |H| = {}",
                    h.order()
                );
            }
        }
    }
}

#[test]
fn induced_regular_is_regular() {
    let g = Arc::new(PermGroup::alternating(4));
    let h = Arc::new(PermGroup::new(4, vec![perm("(1,2)(3,4)", 4)]).unwrap());
    let ind = GModule::regular(h, Field::GF2, 8).unwrap().induce(Arc::clone(&g), 8).unwrap();
    let reg = GModule::regular(g, Field::GF2, 16).unwrap();
    assert!(iso_test(&ind, &reg, 0).unwrap().is_isomorphic());
}

#[test]
fn heart_is_a_homomorphic_image_of_products() {
    let g = PermGroup::alternating(7);
    let e = heart(7, g.clone(), Field::GF2);
    let gens = g.gens();
    let word = gens[0].mul(&gens[1]).mul(&gens[0].inv()).mul(&gens[1]);
    let a = e.action_of(&word).unwrap();
    let b = e.actions()[0]
        .mul(&e.actions()[1])
        .mul(&e.actions()[0].inverse().unwrap())
        .mul(&e.actions()[1]);
    assert_eq!(a, b);
    let trivial = e.restrict(&PermGroup::trivial(7)).unwrap();
    assert_eq!(trivial.dim(), 6);
    assert!(trivial.actions().is_empty());
}
