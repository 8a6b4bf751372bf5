//! Face-discriminants and the Newton-polytope superset of the bifurcation
//! values at infinity.

use crate::acv::ser_upoly;
use crate::elimination::{determinant_poly, make_square, resultant_gcp};
use crate::polyring::{MPoly, UPoly};
use crate::polytope::{
    important_origin_facings, newton_polytope, restrict_to_face, Facing, LatticePolytope, PolytopeTuple,
};
use crate::realroots::{isolate_real_roots, sort_dedup, AlgebraicNumber};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

pub const DISCLAIMER: &str =
    "Newton non-degeneracy of the input is assumed, not verified; the superset is valid for inputs in the generic set.";

#[derive(Clone, Debug, Serialize)]
pub struct PolyTuple {
    #[serde(skip)]
    pub objective: MPoly,
    #[serde(skip)]
    pub constraints: Vec<MPoly>,
    pub tuple: PolytopeTuple,
}

impl PolyTuple {
    pub fn new(objective: MPoly, constraints: Vec<MPoly>) -> Result<Self> {
        let n = objective.nvars();
        let mut entries = BTreeMap::new();
        entries.insert(0, newton_polytope_or_origin(&objective)?);
        for (i, g) in constraints.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::VarMismatch(n, g.nvars()));
            }
            entries.insert(i + 1, newton_polytope(g, false)?);
        }
        Ok(PolyTuple { objective, constraints, tuple: PolytopeTuple::new(entries)? })
    }

    fn poly(&self, i: usize) -> &MPoly {
        if i == 0 {
            &self.objective
        } else {
            &self.constraints[i - 1]
        }
    }
}

fn newton_polytope_or_origin(f: &MPoly) -> Result<LatticePolytope> {
    if f.is_zero() {
        return Ok(LatticePolytope::point(vec![0; f.nvars()]));
    }
    newton_polytope(f, true)
}

/// Unconstrained f as a tuple with support {0}.
pub fn remark_4_4_mode(f: &MPoly) -> Result<PolyTuple> {
    PolyTuple::new(f.clone(), vec![])
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceDiscriminant {
    pub facing: Facing,
    pub values: Vec<AlgebraicNumber>,
    #[serde(serialize_with = "ser_opt_upoly")]
    pub polynomial: Option<UPoly>,
    pub reason: String,
}

fn ser_opt_upoly<S: serde::Serializer>(u: &Option<UPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u {
        Some(u) => ser_upoly(u, s),
        None => s.serialize_none(),
    }
}

fn torus_reduce(p: &MPoly) -> MPoly {
    p.divide_monomial(&p.monomial_content()).primitive_part()
}

pub fn face_discriminant(t: &PolyTuple, facing: &Facing, seed: u64) -> Result<FaceDiscriminant> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    face_discriminant_rng(t, facing, &mut rng)
}

fn done(facing: &Facing, values: Vec<AlgebraicNumber>, polynomial: Option<UPoly>, reason: &str) -> FaceDiscriminant {
    FaceDiscriminant { facing: facing.clone(), values, polynomial, reason: reason.into() }
}

fn face_discriminant_rng<R: Rng>(t: &PolyTuple, facing: &Facing, rng: &mut R) -> Result<FaceDiscriminant> {
    if !facing.origin {
        return Ok(done(facing, vec![], None, "not an origin facing"));
    }
    let n = t.objective.nvars();
    let fg = restrict_to_face(&t.objective, &facing.faces[&0])?;
    let mut gs = Vec::new();
    for (&i, face) in &facing.faces {
        if i != 0 {
            gs.push(torus_reduce(&restrict_to_face(t.poly(i), face)?));
        }
    }
    if gs.iter().any(|g| g.is_constant()) {
        return Ok(done(facing, vec![], None, "a restricted constraint has no torus zeros"));
    }
    if fg.is_constant() {
        let c = BigRational::from_integer(fg.constant_term());
        return Ok(done(facing, vec![AlgebraicNumber::from_rational(&c)], None, "constant restriction of F"));
    }
    // variables absent from every restricted polynomial are free on the torus: set them to 1
    let present: Vec<usize> =
        (0..n).filter(|&v| fg.depends_on(v) || gs.iter().any(|g| g.depends_on(v))).collect();
    let m = present.len();
    let one = BigInt::from(1);
    let shrink = |p: &MPoly| -> MPoly {
        let mut q = p.clone();
        for v in 0..n {
            if !present.contains(&v) {
                q = q.substitute_int(v, &one);
            }
        }
        q.restrict_vars(&present)
    };
    let fg = shrink(&fg);
    let gs: Vec<MPoly> = gs.iter().map(&shrink).collect();
    // rank deficiency of Jac(F_G, g_G): all (r'+1)-minors
    let r = gs.len();
    let mut rows = vec![fg.clone()];
    rows.extend(gs.iter().cloned());
    let jac: Vec<Vec<MPoly>> = rows
        .iter()
        .map(|p| (0..m).map(|v| p.partial_derivative(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut minors = Vec::new();
    if r + 1 <= m {
        for cols in column_sets(m, r + 1) {
            let sub: Vec<Vec<MPoly>> = jac.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            let d = determinant_poly(&sub)?;
            if !d.is_zero() {
                minors.push(torus_reduce(&d));
            }
        }
    }
    if minors.iter().any(|p| p.is_constant()) {
        return Ok(done(facing, vec![], None, "no torus critical points"));
    }
    // ring: x_1..x_m, t, z
    let lift: Vec<usize> = (0..m).collect();
    let mut sys: Vec<MPoly> = gs.iter().chain(minors.iter()).map(|p| p.remap(m + 2, &lift)).collect();
    let mut sat = MPoly::monomial(m + 2, { let mut e = vec![1u32; m + 1]; e.push(0); e }, BigInt::from(1));
    sat = &sat - &MPoly::one(m + 2);
    let fz = &fg.remap(m + 2, &lift) - &MPoly::var(m + 2, m + 1);
    let target = m + 2;
    let mut padded = 0;
    while sys.len() + 2 < target {
        // generic affine slices through a positive-dimensional critical set
        let mut h = MPoly::constant(m + 2, BigInt::from(rng.gen_range(1..=1000i64)));
        for v in 0..m {
            h.add_term({ let mut e = vec![0; m + 2]; e[v] = 1; e }, BigInt::from(rng.gen_range(1..=1000i64)));
        }
        sys.push(h);
        padded += 1;
    }
    let dmax = sys.iter().chain([&sat, &fz]).map(|p| p.total_degree()).max().unwrap_or(1);
    let mut square = if sys.len() + 2 > target { make_square(&sys, target - 2, dmax, rng)? } else { sys };
    square.push(sat);
    square.push(fz);
    let res = resultant_gcp(&square, m + 1, &[None], rng)?;
    let u = res.resultant.to_upoly(0).expect("univariate in z");
    if u.is_zero() {
        return Err(Error::Degenerate("face system elimination vanished".into()));
    }
    if u.degree() == 0 {
        return Ok(done(facing, vec![], Some(u), "elimination polynomial is constant"));
    }
    let sq = u.squarefree_part()?;
    let reason = if padded > 0 { "eliminated (with generic slices)" } else { "eliminated" };
    Ok(done(facing, isolate_real_roots(&sq)?, Some(sq), reason))
}

fn column_sets(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..(1 << m))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..m).filter(|b| mask >> b & 1 == 1).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonReport {
    pub facings: Vec<FaceDiscriminant>,
    pub origin_value: AlgebraicNumber,
    pub superset: Vec<AlgebraicNumber>,
    pub seed: u64,
    pub disclaimer: &'static str,
}

/// Union of the face-discriminants over the important origin facings, plus F(0).
pub fn bifurcation_superset_newton(t: &PolyTuple, seed: u64) -> Result<NewtonReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let io = important_origin_facings(&t.tuple)?;
    let mut out = Vec::with_capacity(io.len());
    let mut all = Vec::new();
    for f in &io {
        let d = face_discriminant_rng(t, f, &mut rng)?;
        all.extend(d.values.iter().cloned());
        out.push(d);
    }
    let f0 = AlgebraicNumber::from_rational(&BigRational::from_integer(t.objective.constant_term()));
    all.push(f0.clone());
    Ok(NewtonReport { facings: out, origin_value: f0, superset: sort_dedup(all), seed, disclaimer: DISCLAIMER })
}
