//! Lattice polytopes, Newton polytopes, tuples and their facings.

use crate::polyring::MPoly;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_AMBIENT_CAP: usize = 6;

pub type Point = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePolytope {
    pub dim_ambient: usize,
    /// sorted, vertices only
    pub vertices: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeTuple {
    pub entries: BTreeMap<usize, LatticePolytope>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facing {
    pub indices: Vec<usize>,
    pub faces: BTreeMap<usize, LatticePolytope>,
    /// exposing directions (maximized) of every witness tuple-face
    pub normals: Vec<Point>,
    pub dimension: i64,
    pub important: bool,
    pub origin: bool,
}

// ---------------------------------------------------------------------------
// rational linear algebra on small integer data

fn to_q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Row echelon form in place; returns pivot columns.
fn echelon(rows: &mut Vec<Vec<BigRational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn rank(vectors: &[Point], n: usize) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| to_q(v)).collect();
    echelon(&mut rows, n).len()
}

/// Integer basis of {w : <v, w> = 0 for all v}, each vector primitive.
fn nullspace(vectors: &[Point], n: usize) -> Vec<Point> {
    let mut rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| to_q(v)).collect();
    let piv = echelon(&mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut w = vec![BigRational::zero(); n];
            w[fc] = BigRational::one();
            for (r, &pc) in piv.iter().enumerate() {
                w[pc] = -rows[r][fc].clone();
            }
            primitive(&w)
        })
        .collect()
}

fn primitive(w: &[BigRational]) -> Point {
    let den = w.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let ints: Vec<BigInt> = w.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    ints.iter()
        .map(|x| if g.is_zero() { 0 } else { (x / &g).to_i64().expect("normal fits i64") })
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dedup_points(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    pts
}

/// Affine dimension of a finite point set (-1 when empty).
pub fn affine_dim(pts: &[Point]) -> i64 {
    if pts.is_empty() {
        return -1;
    }
    let n = pts[0].len();
    let diffs: Vec<Point> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    rank(&diffs, n) as i64
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Facets of conv(pts) inside its affine hull: (outer normal in the hull's
/// direction space, indices of points on the facet).
fn facets(pts: &[Point]) -> Vec<(Point, BTreeSet<usize>)> {
    let n = pts[0].len();
    let k = affine_dim(pts) as usize;
    if k == 0 {
        return vec![];
    }
    let diffs: Vec<Point> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    let perp = nullspace(&diffs, n);
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for combo in combinations(pts.len(), k) {
        let base = &pts[combo[0]];
        let mut cons: Vec<Point> = combo[1..].iter().map(|&i| sub(&pts[i], base)).collect();
        if rank(&cons, n) != k - 1 {
            continue;
        }
        cons.extend(perp.iter().cloned());
        let ns = nullspace(&cons, n);
        debug_assert_eq!(ns.len(), 1);
        let mut w = ns[0].clone();
        let h = dot(&w, base);
        let vals: Vec<i64> = pts.iter().map(|p| dot(&w, p) - h).collect();
        let above = vals.iter().any(|&v| v > 0);
        let below = vals.iter().any(|&v| v < 0);
        if above && below {
            continue;
        }
        if above {
            w = w.iter().map(|x| -x).collect();
        }
        let on: BTreeSet<usize> = (0..pts.len()).filter(|&i| vals[i] == 0).collect();
        if seen.insert(on.clone()) {
            out.push((w, on));
        }
    }
    out
}

/// Vertices of conv(pts).
pub fn hull_vertices(pts: &[Point]) -> Vec<Point> {
    let pts = dedup_points(pts.to_vec());
    if pts.len() <= 1 {
        return pts;
    }
    let fs = facets(&pts);
    let mut out = Vec::new();
    for i in 0..pts.len() {
        let mut inter: BTreeSet<usize> = (0..pts.len()).collect();
        for (_, on) in &fs {
            if on.contains(&i) {
                inter = inter.intersection(on).cloned().collect();
            }
        }
        if inter.len() == 1 {
            out.push(pts[i].clone());
        }
    }
    out
}

impl LatticePolytope {
    pub fn from_points(dim_ambient: usize, pts: &[Point]) -> Result<Self> {
        if pts.iter().any(|p| p.len() != dim_ambient) {
            return Err(Error::InvalidInput("point of the wrong dimension".into()));
        }
        if pts.is_empty() {
            return Err(Error::InvalidInput("empty point set".into()));
        }
        Ok(LatticePolytope { dim_ambient, vertices: hull_vertices(pts) })
    }

    pub fn point(p: Point) -> Self {
        LatticePolytope { dim_ambient: p.len(), vertices: vec![p] }
    }

    pub fn dim(&self) -> i64 {
        affine_dim(&self.vertices)
    }

    pub fn contains_origin(&self) -> bool {
        self.vertices.iter().any(|v| v.iter().all(|&x| x == 0))
    }

    /// Face maximizing <w, .>.
    pub fn face(&self, w: &[i64]) -> LatticePolytope {
        let best = self.vertices.iter().map(|v| dot(w, v)).max().expect("nonempty");
        LatticePolytope {
            dim_ambient: self.dim_ambient,
            vertices: self.vertices.iter().filter(|v| dot(w, v) == best).cloned().collect(),
        }
    }

    pub fn contains(&self, q: &[i64]) -> bool {
        if self.vertices.len() == 1 {
            return self.vertices[0] == q;
        }
        let k = self.dim();
        let mut with = self.vertices.clone();
        with.push(q.to_vec());
        if affine_dim(&with) != k {
            return false;
        }
        facets(&self.vertices).iter().all(|(w, on)| {
            let i = *on.iter().next().unwrap();
            dot(w, q) <= dot(w, &self.vertices[i])
        })
    }
}

pub fn newton_polytope(p: &MPoly, include_origin: bool) -> Result<LatticePolytope> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.nvars();
    let mut pts: Vec<Point> = p.terms().keys().map(|e| e.iter().map(|&x| x as i64).collect()).collect();
    if include_origin {
        pts.push(vec![0; n]);
    }
    LatticePolytope::from_points(n, &pts)
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    if p.dim_ambient != q.dim_ambient {
        return Err(Error::VarMismatch(p.dim_ambient, q.dim_ambient));
    }
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    LatticePolytope::from_points(p.dim_ambient, &pts)
}

fn sum_all<'a, I: IntoIterator<Item = &'a LatticePolytope>>(it: I, n: usize) -> LatticePolytope {
    let mut acc = LatticePolytope::point(vec![0; n]);
    for p in it {
        acc = minkowski_sum(&acc, p).expect("same ambient dimension");
    }
    acc
}

/// dim(sum of the listed polytopes) - count, computed from the union of edge directions.
fn tuple_dim(polys: &[&LatticePolytope]) -> i64 {
    if polys.is_empty() {
        return 0;
    }
    let n = polys[0].dim_ambient;
    let mut dirs = Vec::new();
    for p in polys {
        for v in &p.vertices[1..] {
            dirs.push(sub(v, &p.vertices[0]));
        }
    }
    rank(&dirs, n) as i64 - polys.len() as i64
}

/// dim(sum) - #entries.
pub fn facing_dimension(faces: &BTreeMap<usize, LatticePolytope>) -> i64 {
    let v: Vec<&LatticePolytope> = faces.values().collect();
    tuple_dim(&v)
}

impl PolytopeTuple {
    pub fn new(entries: BTreeMap<usize, LatticePolytope>) -> Result<Self> {
        let mut dims = entries.values().map(|p| p.dim_ambient);
        if let Some(d) = dims.next() {
            if dims.any(|x| x != d) {
                return Err(Error::InvalidInput("tuple entries differ in ambient dimension".into()));
            }
        } else {
            return Err(Error::InvalidInput("empty tuple".into()));
        }
        Ok(PolytopeTuple { entries })
    }

    pub fn from_vec(v: Vec<LatticePolytope>) -> Result<Self> {
        Self::new(v.into_iter().enumerate().collect())
    }

    pub fn dim_ambient(&self) -> usize {
        self.entries.values().next().map_or(0, |p| p.dim_ambient)
    }

    pub fn minkowski(&self) -> LatticePolytope {
        sum_all(self.entries.values(), self.dim_ambient())
    }

    pub fn dimension(&self) -> i64 {
        facing_dimension(&self.entries)
    }

    pub fn is_origin(&self) -> bool {
        self.entries.get(&0).map_or(false, |p| p.contains_origin())
    }

    /// Tuple-face exposed by w.
    pub fn face(&self, w: &[i64]) -> BTreeMap<usize, LatticePolytope> {
        self.entries.iter().map(|(&i, p)| (i, p.face(w))).collect()
    }
}

/// Exposing directions of every face of the polytope (proper faces, plus the
/// whole polytope when it is not full dimensional), each the sum of the
/// facet normals of the facets containing it.
pub fn face_normals(p: &LatticePolytope) -> Vec<Point> {
    let n = p.dim_ambient;
    let pts = &p.vertices;
    let mut out: BTreeSet<Point> = BTreeSet::new();
    if (p.dim() as usize) < n {
        out.insert(vec![0; n]);
    }
    let fs = facets(pts);
    let mut faces: BTreeSet<BTreeSet<usize>> = fs.iter().map(|(_, s)| s.clone()).collect();
    loop {
        let cur: Vec<BTreeSet<usize>> = faces.iter().cloned().collect();
        let mut added = false;
        for i in 0..cur.len() {
            for j in i + 1..cur.len() {
                let x: BTreeSet<usize> = cur[i].intersection(&cur[j]).cloned().collect();
                if !x.is_empty() && faces.insert(x) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    for face in &faces {
        let mut w = vec![0i64; n];
        for (fw, on) in &fs {
            if face.is_subset(on) {
                for k in 0..n {
                    w[k] += fw[k];
                }
            }
        }
        out.insert(w);
    }
    out.into_iter().collect()
}

fn subsets(support: &[usize]) -> Vec<Vec<usize>> {
    let m = support.len();
    (1u64..(1 << m))
        .map(|mask| (0..m).filter(|b| mask >> b & 1 == 1).map(|b| support[b]).collect())
        .collect()
}

pub fn tuple_facings(t: &PolytopeTuple) -> Result<Vec<Facing>> {
    tuple_facings_capped(t, DEFAULT_AMBIENT_CAP)
}

pub fn tuple_facings_capped(t: &PolytopeTuple, cap: usize) -> Result<Vec<Facing>> {
    let n = t.dim_ambient();
    if n > cap {
        return Err(Error::ScaleCap(format!("ambient dimension {} exceeds cap {}", n, cap)));
    }
    let support: Vec<usize> = t.entries.keys().cloned().collect();
    let normals = face_normals(&t.minkowski());
    let all_i = subsets(&support);
    let mut found: BTreeMap<(Vec<usize>, Vec<LatticePolytope>), Facing> = BTreeMap::new();
    for w in &normals {
        let full = t.face(w);
        for ind in &all_i {
            let faces: BTreeMap<usize, LatticePolytope> = ind.iter().map(|i| (*i, full[i].clone())).collect();
            let dim = facing_dimension(&faces);
            // importance through this witness: dim <= dim of every larger restriction
            let important = all_i.iter().filter(|j| ind.iter().all(|i| j.contains(i))).all(|j| {
                let sub: Vec<&LatticePolytope> = j.iter().map(|i| &full[i]).collect();
                dim <= tuple_dim(&sub)
            });
            let key = (ind.clone(), faces.values().cloned().collect::<Vec<_>>());
            let entry = found.entry(key).or_insert_with(|| Facing {
                indices: ind.clone(),
                origin: ind.contains(&0) && faces[&0].contains_origin(),
                faces: faces.clone(),
                normals: vec![],
                dimension: dim,
                important: false,
            });
            entry.normals.push(w.clone());
            entry.important |= important;
        }
    }
    Ok(found.into_values().collect())
}

pub fn important_origin_facings(t: &PolytopeTuple) -> Result<Vec<Facing>> {
    if !t.is_origin() {
        return Err(Error::InvalidInput("tuple is not origin: need index 0 with 0 in its polytope".into()));
    }
    Ok(tuple_facings(t)?.into_iter().filter(|f| f.important && f.origin).collect())
}

/// Terms of p whose exponents lie in sigma.
pub fn restrict_to_face(p: &MPoly, sigma: &LatticePolytope) -> Result<MPoly> {
    if p.nvars() != sigma.dim_ambient {
        return Err(Error::VarMismatch(p.nvars(), sigma.dim_ambient));
    }
    Ok(MPoly::from_terms(
        p.nvars(),
        p.terms()
            .iter()
            .filter(|(e, _)| sigma.contains(&e.iter().map(|&x| x as i64).collect::<Vec<_>>()))
            .map(|(e, c)| (e.clone(), c.clone())),
    ))
}
