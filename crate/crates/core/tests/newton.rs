mod common;

use gcv::newton::*;
use gcv::polytope::*;
use gcv::realroots::{cmp_rational, rat};
use gcv::AlgebraicNumber;
use num_rational::BigRational;
use std::cmp::Ordering;

use common::{bottom_by_substitution, poly};

fn values_eq(got: &[AlgebraicNumber], want: &[BigRational]) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(a, q)| cmp_rational(a, q) == Ordering::Equal)
}

fn triple() -> PolyTuple {
    let v = "x,y,z";
    PolyTuple::new(
        poly("1 + x + x^2", v),
        vec![poly("-2 + x + 2*y - y^2", v), poly("1 + 2*x - 3*y + 4*z", v)],
    )
    .unwrap()
}

#[test]
fn bottom_oracle_values() {
    assert_eq!(bottom_by_substitution(), vec![rat(3, 1), rat(237, 16)]);
}

#[test]
fn bottom_facing_discriminant() {
    let t = triple();
    let f = tuple_facings(&t.tuple).unwrap();
    let bottom = f
        .iter()
        .find(|x| x.indices == vec![0, 1, 2] && x.normals.contains(&vec![0, 0, -1]))
        .unwrap();
    let d = face_discriminant(&t, bottom, 3).unwrap();
    assert!(values_eq(&d.values, &bottom_by_substitution()), "{:?}", d.values);
}

#[test]
fn side_facings_give_one() {
    let t = triple();
    let io = important_origin_facings(&t.tuple).unwrap();
    let side: Vec<&Facing> = io.iter().filter(|f| f.faces[&0].vertices == vec![vec![0, 0, 0]]).collect();
    assert!(!side.is_empty());
    let mut ones = 0;
    for f in side {
        let d = face_discriminant(&t, f, 1).unwrap();
        if d.values.is_empty() {
            // a monomial constraint restriction has no zeros on the torus
            assert_eq!(d.reason, "a restricted constraint has no torus zeros");
        } else {
            assert!(values_eq(&d.values, &[rat(1, 1)]), "{:?}", f);
            ones += 1;
        }
    }
    assert!(ones > 0);
}

#[test]
fn non_origin_facings_are_empty() {
    let t = triple();
    for f in tuple_facings(&t.tuple).unwrap().iter().filter(|f| !f.origin) {
        assert!(face_discriminant(&t, f, 1).unwrap().values.is_empty());
    }
}

#[test]
fn broughton_superset() {
    let t = remark_4_4_mode(&poly("x + x^2*y", "x,y")).unwrap();
    assert_eq!(t.tuple.entries.len(), 1);
    assert_eq!(t.tuple.entries[&0].vertices, vec![vec![0, 0], vec![1, 0], vec![2, 1]]);
    let r = bifurcation_superset_newton(&t, 7).unwrap();
    assert!(values_eq(&r.superset, &[rat(0, 1)]));
    // the edge along the x axis restricts F to x, which has no torus critical points
    let edge = r.facings.iter().find(|d| d.facing.faces[&0].vertices == vec![vec![0, 0], vec![1, 0]]).unwrap();
    assert!(edge.values.is_empty());
}

#[test]
fn proper_map_superset() {
    let t = remark_4_4_mode(&poly("x^2 + y^2", "x,y")).unwrap();
    assert_eq!(t.tuple.entries[&0].vertices, vec![vec![0, 0], vec![0, 2], vec![2, 0]]);
    let r = bifurcation_superset_newton(&t, 7).unwrap();
    assert!(values_eq(&r.superset, &[rat(0, 1)]));
}

#[test]
fn constant_objective() {
    let t = remark_4_4_mode(&poly("5", "x,y")).unwrap();
    assert_eq!(t.tuple.entries[&0].vertices, vec![vec![0, 0]]);
    let r = bifurcation_superset_newton(&t, 1).unwrap();
    assert!(values_eq(&r.superset, &[rat(5, 1)]));
}

#[test]
fn full_facing_matches_torus_critical_values() {
    // unique critical point (2, 3) lies on the torus, value 0
    let f = poly("(x - 2)^2 + (y - 3)^2 + 1", "x,y");
    let t = remark_4_4_mode(&f).unwrap();
    let full = Facing {
        indices: vec![0],
        faces: t.tuple.entries.clone(),
        normals: vec![vec![0, 0]],
        dimension: t.tuple.dimension(),
        important: true,
        origin: true,
    };
    let d = face_discriminant(&t, &full, 5).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
    let k0 = gcv::acv::critical_values_k0(&f, &mut rng).unwrap();
    assert!(values_eq(&d.values, &[rat(1, 1)]));
    assert_eq!(k0.values.len(), 1);
    assert_eq!(cmp_rational(&k0.values[0], &rat(1, 1)), Ordering::Equal);
}

#[test]
fn rabier_value_is_covered() {
    // 0 is approached along (-1/(2l), l) for x + x^2 y
    let f = poly("x + x^2*y", "x,y");
    let t = remark_4_4_mode(&f).unwrap();
    let r = bifurcation_superset_newton(&t, 2).unwrap();
    assert!(r.superset.iter().any(|a| cmp_rational(a, &rat(0, 1)) == Ordering::Equal));
}

#[test]
fn deterministic_report() {
    let t = triple();
    let a = serde_json::to_string(&bifurcation_superset_newton(&t, 9).unwrap()).unwrap();
    let b = serde_json::to_string(&bifurcation_superset_newton(&t, 9).unwrap()).unwrap();
    assert_eq!(a, b);
}
