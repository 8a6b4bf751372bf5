mod common;

use gcv::polytope::*;
use gcv::MPoly;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeMap;

use common::poly;

fn lp(pts: &[&[i64]]) -> LatticePolytope {
    let n = pts[0].len();
    LatticePolytope::from_points(n, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// The triple (F, g1, g2) with F = 1 + x + x^2, g1 = -2 + x + 2y - y^2, g2 = 1 + 2x - 3y + 4z.
fn triple() -> PolytopeTuple {
    let v = "x,y,z";
    PolytopeTuple::from_vec(vec![
        newton_polytope(&poly("1 + x + x^2", v), true).unwrap(),
        newton_polytope(&poly("-2 + x + 2*y - y^2", v), false).unwrap(),
        newton_polytope(&poly("1 + 2*x - 3*y + 4*z", v), false).unwrap(),
    ])
    .unwrap()
}

#[test]
fn newton_polytope_examples() {
    let v = "x,y,z";
    assert_eq!(newton_polytope(&poly("1 + x + x^2", v), false).unwrap(), lp(&[&[0, 0, 0], &[2, 0, 0]]));
    assert_eq!(
        newton_polytope(&poly("-2 + x + 2*y - y^2", v), false).unwrap(),
        lp(&[&[0, 0, 0], &[1, 0, 0], &[0, 2, 0]])
    );
    assert_eq!(newton_polytope(&poly("-2 + x + 2*y - y^2", v), false).unwrap().vertices.len(), 3);
    assert_eq!(newton_polytope(&poly("5", v), false).unwrap(), lp(&[&[0, 0, 0]]));
    assert!(newton_polytope(&MPoly::zero(2), false).is_err());
    assert_eq!(newton_polytope(&poly("x + x^2*y", "x,y"), true).unwrap(), lp(&[&[0, 0], &[1, 0], &[2, 1]]));
}

#[test]
fn minkowski_examples() {
    let sq = minkowski_sum(&lp(&[&[0, 0], &[1, 0]]), &lp(&[&[0, 0], &[0, 1]])).unwrap();
    assert_eq!(sq, lp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
    assert_eq!(sq.vertices.len(), 4);
    assert_eq!(minkowski_sum(&sq, &lp(&[&[0, 0]])).unwrap(), sq);
    assert!(minkowski_sum(&sq, &lp(&[&[0, 0, 0]])).is_err());
    assert_eq!(triple().minkowski().dim(), 3);
}

#[test]
fn segment_facings() {
    let t = PolytopeTuple::from_vec(vec![lp(&[&[0], &[2]])]).unwrap();
    let f = tuple_facings(&t).unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|x| x.faces[&0].vertices.len() == 1 && x.dimension == -1));
    assert_eq!(t.dimension(), 0);
}

#[test]
fn square_facings() {
    let t = PolytopeTuple::from_vec(vec![lp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])]).unwrap();
    let f = tuple_facings(&t).unwrap();
    assert_eq!(f.len(), 8);
    assert_eq!(f.iter().filter(|x| x.faces[&0].vertices.len() == 1).count(), 4);
    assert_eq!(f.iter().filter(|x| x.faces[&0].vertices.len() == 2).count(), 4);
}

#[test]
fn bottom_facing_of_triple() {
    let t = triple();
    assert_eq!(t.dimension(), 0);
    let f = tuple_facings(&t).unwrap();
    let bottom = f
        .iter()
        .find(|x| x.indices == vec![0, 1, 2] && x.normals.contains(&vec![0, 0, -1]))
        .expect("bottom facing");
    assert_eq!(bottom.faces[&2], lp(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]));
    assert_eq!(bottom.faces[&0], t.entries[&0]);
    assert_eq!(bottom.faces[&1], t.entries[&1]);
    assert_eq!(bottom.dimension, -1);
    let io = important_origin_facings(&t).unwrap();
    assert!(io.iter().any(|x| x == bottom));
    assert!(bottom.important && bottom.origin);
}

#[test]
fn broughton_origin_faces() {
    let t = PolytopeTuple::from_vec(vec![newton_polytope(&poly("x + x^2*y", "x,y"), true).unwrap()]).unwrap();
    let io = important_origin_facings(&t).unwrap();
    let faces: Vec<LatticePolytope> = io.iter().map(|x| x.faces[&0].clone()).collect();
    assert_eq!(faces.len(), 3);
    assert!(faces.contains(&lp(&[&[0, 0]])));
    assert!(faces.contains(&lp(&[&[0, 0], &[1, 0]])));
    assert!(faces.contains(&lp(&[&[0, 0], &[2, 1]])));
}

#[test]
fn origin_vertex_of_segment() {
    let t = PolytopeTuple::from_vec(vec![lp(&[&[0], &[1]])]).unwrap();
    let all = tuple_facings(&t).unwrap();
    let io = important_origin_facings(&t).unwrap();
    assert_eq!(io.len(), 1);
    assert_eq!(io[0].faces[&0], lp(&[&[0]]));
    assert!(all.iter().any(|x| x.faces[&0] == lp(&[&[1]]) && !x.origin));
    let not_origin = PolytopeTuple::from_vec(vec![lp(&[&[1], &[2]])]).unwrap();
    assert!(important_origin_facings(&not_origin).is_err());
}

#[test]
fn restriction_examples() {
    let v = "x,y,z";
    let g2 = poly("1 + 2*x - 3*y + 4*z", v);
    let bottom = lp(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
    assert_eq!(restrict_to_face(&g2, &bottom).unwrap(), poly("1 + 2*x - 3*y", v));
    assert_eq!(restrict_to_face(&g2, &newton_polytope(&g2, false).unwrap()).unwrap(), g2);
    let b = poly("x + x^2*y", "x,y");
    assert!(restrict_to_face(&b, &lp(&[&[0, 0]])).unwrap().is_zero());
}

#[test]
fn facings_are_exposed_by_their_normals() {
    let t = triple();
    let sum = t.minkowski();
    for f in tuple_facings(&t).unwrap() {
        for w in &f.normals {
            let full = t.face(w);
            let restricted: BTreeMap<usize, LatticePolytope> =
                f.indices.iter().map(|i| (*i, full[i].clone())).collect();
            assert_eq!(restricted, f.faces);
            let fsum = full.values().fold(LatticePolytope::point(vec![0; 3]), |a, p| minkowski_sum(&a, p).unwrap());
            assert_eq!(fsum, sum.face(w));
        }
    }
}

#[test]
fn importance_rechecked_by_brute_force() {
    let t = triple();
    let support: Vec<usize> = t.entries.keys().cloned().collect();
    let io = important_origin_facings(&t).unwrap();
    let all = tuple_facings(&t).unwrap();
    for f in &io {
        assert!(all.contains(f));
        let ok = f.normals.iter().any(|w| {
            let full = t.face(w);
            (1u32..8).all(|mask| {
                let j: Vec<usize> = (0..3).filter(|b| mask >> b & 1 == 1).map(|b| support[b]).collect();
                if !f.indices.iter().all(|i| j.contains(i)) {
                    return true;
                }
                let faces: BTreeMap<usize, LatticePolytope> = j.iter().map(|i| (*i, full[i].clone())).collect();
                f.dimension <= facing_dimension(&faces)
            })
        });
        assert!(ok);
    }
}

fn arb_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), 1i64..5), 1..6).prop_map(|ts| {
        MPoly::from_terms(2, ts.into_iter().map(|((a, c), k)| (vec![a, c], BigInt::from(k))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minkowski_additivity(p in arb_poly(), q in arb_poly()) {
        // positive coefficients: no cancellation in the product
        let pq = &p * &q;
        let lhs = newton_polytope(&pq, false).unwrap();
        let rhs = minkowski_sum(&newton_polytope(&p, false).unwrap(), &newton_polytope(&q, false).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_idempotent_and_linear(p in arb_poly(), q in arb_poly(), w in (-2i64..3, -2i64..3)) {
        let sigma = newton_polytope(&p, false).unwrap().face(&[w.0, w.1]);
        let r = restrict_to_face(&p, &sigma).unwrap();
        prop_assert_eq!(restrict_to_face(&r, &sigma).unwrap(), r.clone());
        let lhs = restrict_to_face(&(&p + &q), &sigma).unwrap();
        let rhs = &r + &restrict_to_face(&q, &sigma).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
