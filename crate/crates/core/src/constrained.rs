//! Constrained case: Jacobian minors, the polynomial set J for each choice
//! vector, and a toy-scale elimination that yields candidate values for the
//! infimum of F over {g = 0, h >= 0}.

use crate::acv::ser_upoly;
use crate::bounds::{constrained_bounds, BoundReport};
use crate::groebner::{eliminate_to_last, elimination_ideal};
use crate::elimination::{binomial, determinant_poly, make_square, resultant_gcp};
use crate::polyring::{MPoly, UPoly};
use crate::realroots::{interlacing_rationals, isolate_real_roots, rat_string, sign_at, sort_dedup, AlgebraicNumber};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Largest Macaulay matrix the toy pipeline will build.
pub const DEFAULT_SCALE_CAP: usize = 600;
pub const TOY_MAX_VARS: usize = 3;
pub const TOY_MAX_DEGREE: u32 = 3;
const EXHAUSTIVE_LIMIT: u64 = 64;
const SAMPLED_CHOICES: usize = 16;
const GROEBNER_BUDGET: usize = 200_000;

#[derive(Clone, Debug, Serialize)]
pub struct MinorPair {
    pub subset: Vec<usize>,
    pub column: usize,
    #[serde(skip)]
    pub m: MPoly,
    pub m_text: String,
    #[serde(skip)]
    pub m_j: MPoly,
    pub m_j_text: String,
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rows (grad F; Jac g).
fn matrix_c(f: &MPoly, gs: &[MPoly]) -> Result<Vec<Vec<MPoly>>> {
    let n = f.nvars();
    std::iter::once(f)
        .chain(gs.iter())
        .map(|p| (0..n).map(|v| p.partial_derivative(v)).collect::<Result<Vec<_>>>())
        .collect()
}

/// All pairs (m_I, m_{I,j}) for |I| = r + 1 and j in I, subsets in
/// lexicographic order.
pub fn jacobian_minors(f: &MPoly, gs: &[MPoly]) -> Result<Vec<MinorPair>> {
    let n = f.nvars();
    let r = gs.len();
    if r >= n {
        return Err(Error::InvalidInput(format!("{} constraints in {} variables leave no minors", r, n)));
    }
    if let Some(g) = gs.iter().find(|g| g.nvars() != n) {
        return Err(Error::VarMismatch(n, g.nvars()));
    }
    let c = matrix_c(f, gs)?;
    let mut out = Vec::new();
    for subset in subsets_of_size(n, r + 1) {
        let full: Vec<Vec<MPoly>> = c.iter().map(|row| subset.iter().map(|&k| row[k].clone()).collect()).collect();
        let m = determinant_poly(&full)?;
        for &j in &subset {
            let sub: Vec<Vec<MPoly>> = c[1..]
                .iter()
                .map(|row| subset.iter().filter(|&&k| k != j).map(|&k| row[k].clone()).collect())
                .collect();
            let m_j = if r == 0 { MPoly::one(n) } else { determinant_poly(&sub)? };
            out.push(MinorPair {
                subset: subset.clone(),
                column: j,
                m_text: m.to_string(),
                m: m.clone(),
                m_j_text: m_j.to_string(),
                m_j,
            });
        }
    }
    Ok(out)
}

/// r + 1 + (n+1) C(n, r+1) + 1.
pub fn system_j_cardinality(n: u64, r: u64) -> BigInt {
    BigInt::from(r + 2) + BigInt::from(n + 1) * binomial(&BigInt::from(n), r + 1)
}

/// Layout of the ring of J: x_1..x_n, t, y_{i,0..n} for every subset i, z.
#[derive(Clone, Debug, Serialize)]
pub struct RingLayout {
    pub n: usize,
    pub subsets: usize,
}

impl RingLayout {
    pub fn nvars(&self) -> usize {
        self.n + 2 + (self.n + 1) * self.subsets
    }
    pub fn t(&self) -> usize {
        self.n
    }
    pub fn y(&self, i: usize, k: usize) -> usize {
        self.n + 1 + i * (self.n + 1) + k
    }
    pub fn z(&self) -> usize {
        self.nvars() - 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemJ {
    pub layout: RingLayout,
    /// chosen column j_i for every subset i
    pub choice: Vec<usize>,
    #[serde(skip)]
    pub polynomials: Vec<MPoly>,
    pub count: usize,
    #[serde(skip)]
    pub h: MPoly,
    pub h_text: String,
    pub h_factors: usize,
}

/// J for the choice vector `choice` (one column per subset, in the order of
/// `jacobian_minors`). The numerators follow the map x -> (w, x_1 w, ..., x_n w),
/// each with its own y variable.
pub fn build_system_j(f: &MPoly, gs: &[MPoly], choice: &[usize], seed: u64) -> Result<SystemJ> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let minors = jacobian_minors(f, gs)?;
    build_j(f, gs, &minors, choice, &mut rng)
}

fn build_j<R: Rng>(f: &MPoly, gs: &[MPoly], minors: &[MinorPair], choice: &[usize], rng: &mut R) -> Result<SystemJ> {
    let n = f.nvars();
    let r = gs.len();
    let s = minors.len() / (r + 1);
    if choice.len() != s {
        return Err(Error::InvalidInput(format!("choice vector needs {} entries", s)));
    }
    let layout = RingLayout { n, subsets: s };
    let nv = layout.nvars();
    let lift_map: Vec<usize> = (0..n).collect();
    let lift = |p: &MPoly| p.remap(nv, &lift_map);
    let mut polys: Vec<MPoly> = gs.iter().map(&lift).collect();
    polys.push(&lift(f) - &MPoly::var(nv, layout.z()));
    let mut dens = Vec::new();
    for (i, &j) in choice.iter().enumerate() {
        let pair = minors[i * (r + 1)..(i + 1) * (r + 1)]
            .iter()
            .find(|p| p.column == j)
            .ok_or_else(|| Error::InvalidInput(format!("column {} is not in subset {}", j, i)))?;
        let (m, mj) = (lift(&pair.m), lift(&pair.m_j));
        for k in 0..=n {
            let num = if k == 0 { m.clone() } else { &MPoly::var(nv, k - 1) * &m };
            polys.push(&(&mj * &MPoly::var(nv, layout.y(i, k))) - &num);
        }
        if !mj.is_zero() {
            dens.push(mj);
        }
    }
    if dens.is_empty() {
        return Err(Error::Degenerate("every denominator vanishes identically for this choice".into()));
    }
    let k = s.min(n).min(dens.len());
    let dmax = dens.iter().map(|p| p.total_degree()).max().unwrap_or(0).max(1);
    let hs = make_square(&dens, k, dmax, rng)?;
    let mut h = MPoly::one(nv);
    for hk in &hs {
        h = &h * hk;
    }
    polys.push(&(&MPoly::var(nv, layout.t()) * &h) - &MPoly::one(nv));
    Ok(SystemJ {
        count: polys.len(),
        layout,
        choice: choice.to_vec(),
        polynomials: polys,
        h_text: h.to_string(),
        h,
        h_factors: hs.len(),
    })
}

/// Choice vectors in lexicographic order, or a seeded sample when there are too many.
fn choice_vectors<R: Rng>(minors: &[MinorPair], r: usize, rng: &mut R) -> (Vec<Vec<usize>>, bool) {
    let s = minors.len() / (r + 1);
    let cols: Vec<Vec<usize>> = (0..s).map(|i| minors[i * (r + 1)..(i + 1) * (r + 1)].iter().map(|p| p.column).collect()).collect();
    let total = (r as u64 + 1).checked_pow(s as u32);
    let decode = |mut idx: u64| -> Vec<usize> {
        let mut v = vec![0; s];
        for i in (0..s).rev() {
            v[i] = cols[i][(idx % (r as u64 + 1)) as usize];
            idx /= r as u64 + 1;
        }
        v
    };
    match total {
        Some(t) if t <= EXHAUSTIVE_LIMIT => ((0..t).map(decode).collect(), false),
        _ => {
            let picks: Vec<Vec<usize>> = (0..SAMPLED_CHOICES)
                .map(|_| cols.iter().map(|c| c[rng.gen_range(0..c.len())]).collect())
                .collect();
            (picks, true)
        }
    }
}

/// Macaulay matrix size for polynomials of the given degrees eliminating `k` variables.
fn macaulay_size(degrees: &[u32], k: usize) -> u64 {
    let m: u64 = degrees.iter().map(|&d| d.max(1) as u64 - 1).sum::<u64>() + 1;
    let b = binomial(&BigInt::from(m + k as u64), k as u64);
    b.to_u64().unwrap_or(u64::MAX)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChoiceOutcome {
    pub choice: Vec<usize>,
    pub count: usize,
    pub h_text: String,
    pub method: &'static str,
    pub matrix_size: u64,
    #[serde(serialize_with = "ser_opt_upoly")]
    pub polynomial: Option<UPoly>,
    pub roots: Vec<AlgebraicNumber>,
    pub failure: Option<String>,
}

fn ser_opt_upoly<S: serde::Serializer>(u: &Option<UPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u {
        Some(u) => ser_upoly(u, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ActiveSetOutcome {
    /// inequalities treated as equalities
    pub active: Vec<usize>,
    pub mode: &'static str,
    pub partial: bool,
    pub choices: Vec<ChoiceOutcome>,
    pub roots: Vec<AlgebraicNumber>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveWitness {
    /// coordinates as "p/q" strings; the solved coordinate is null
    pub fixed: Vec<Option<String>>,
    pub solved: usize,
    pub root: AlgebraicNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct SublevelTest {
    pub r: String,
    pub witness: Option<CurveWitness>,
    pub probes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstrainedStatus {
    Finite,
    UnboundedBelow,
    Undetermined,
    BoundsOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstrainedReport {
    pub nvars: usize,
    pub equalities: usize,
    pub inequalities: usize,
    pub seed: u64,
    pub scale_cap: usize,
    pub active_sets: Vec<ActiveSetOutcome>,
    pub candidates: Vec<AlgebraicNumber>,
    pub sublevel_tests: Vec<SublevelTest>,
    pub status: ConstrainedStatus,
    pub value: Option<AlgebraicNumber>,
    /// (n r d1)^(n^2) with unit constant, compared against every reported degree
    #[serde(serialize_with = "crate::ser_bigint")]
    pub degree_ceiling: BigInt,
    pub max_degree: usize,
    pub bounds: BoundReport,
    pub notes: Vec<String>,
}

/// Candidate values for inf F over {g = 0, h >= 0}, unioned over every set of
/// active inequalities, then the smallest candidate whose upper interlacing
/// rational has a witnessed sublevel set.
pub fn constrained_infimum_toy(
    f: &MPoly,
    eqs: &[MPoly],
    ineqs: &[MPoly],
    seed: u64,
    scale_cap: usize,
) -> Result<ConstrainedReport> {
    let n = f.nvars();
    if let Some(g) = eqs.iter().chain(ineqs).find(|g| g.nvars() != n) {
        return Err(Error::VarMismatch(n, g.nvars()));
    }
    if eqs.iter().chain(ineqs).any(|g| g.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    if ineqs.len() > 6 {
        return Err(Error::InvalidInput("at most 6 inequalities".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = f.total_degree();
    let d1 = eqs.iter().chain(ineqs).map(|g| g.total_degree()).max().unwrap_or(0);
    let r = eqs.len().max(1) as u64;
    let bounds = constrained_bounds(n as u64, d as u64, d1.max(1) as u64, tau(f, eqs, ineqs), eqs.len() as u64);
    let degree_ceiling = num_traits::pow(BigInt::from(n as u64 * r * d1.max(1) as u64), n * n);
    let mut notes = Vec::new();
    let mut report = ConstrainedReport {
        nvars: n,
        equalities: eqs.len(),
        inequalities: ineqs.len(),
        seed,
        scale_cap,
        active_sets: vec![],
        candidates: vec![],
        sublevel_tests: vec![],
        status: ConstrainedStatus::BoundsOnly,
        value: None,
        degree_ceiling,
        max_degree: 0,
        bounds,
        notes: vec![],
    };
    if n > TOY_MAX_VARS || d.max(d1) > TOY_MAX_DEGREE {
        report.notes.push(format!(
            "outside the toy range (n <= {}, degrees <= {}); bounds only",
            TOY_MAX_VARS, TOY_MAX_DEGREE
        ));
        return Ok(report);
    }
    let mut all = Vec::new();
    for mask in 0u32..(1 << ineqs.len()) {
        let active: Vec<usize> = (0..ineqs.len()).filter(|b| mask >> b & 1 == 1).collect();
        let mut gs: Vec<MPoly> = eqs.to_vec();
        gs.extend(active.iter().map(|&i| ineqs[i].clone()));
        let outcome = match active_set(f, &gs, scale_cap, &mut rng) {
            Ok(o) => o,
            Err(Error::ScaleCap(msg)) => {
                report.notes.push(format!("scale cap exceeded ({}); bounds only", msg));
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        all.extend(outcome.roots.iter().cloned());
        report.active_sets.push(ActiveSetOutcome { active, ..outcome });
    }
    let candidates = sort_dedup(all);
    report.max_degree = report
        .active_sets
        .iter()
        .flat_map(|a| a.choices.iter())
        .filter_map(|c| c.polynomial.as_ref().map(|p| p.degree()))
        .max()
        .unwrap_or(0);
    if report.active_sets.iter().any(|a| a.partial) {
        notes.push("choice vectors were sampled; the candidate set may be partial".into());
    }
    // selection
    let rs = interlacing_rationals(&candidates);
    let mut status = ConstrainedStatus::Undetermined;
    let mut value = None;
    for (j, q) in rs.iter().enumerate() {
        let (w, probes) = sublevel_witness(f, eqs, ineqs, q, &mut rng);
        let found = w.is_some();
        report.sublevel_tests.push(SublevelTest { r: rat_string(q), witness: w, probes });
        if found {
            if j == 0 || candidates.is_empty() {
                status = ConstrainedStatus::UnboundedBelow;
            } else {
                status = ConstrainedStatus::Finite;
                value = Some(candidates[j - 1].clone());
            }
            break;
        }
    }
    if status == ConstrainedStatus::Undetermined {
        notes.push("no sublevel witness found: the feasible set may be empty".into());
    }
    notes.push("empty sublevel verdicts come from a randomized search and are not certified".into());
    report.notes.extend(notes);
    report.candidates = candidates;
    report.status = status;
    report.value = value;
    Ok(report)
}

fn tau(f: &MPoly, eqs: &[MPoly], ineqs: &[MPoly]) -> u64 {
    std::iter::once(f).chain(eqs).chain(ineqs).map(|p| p.bitsize()).max().unwrap_or(1)
}

fn active_set<R: Rng>(f: &MPoly, gs: &[MPoly], cap: usize, rng: &mut R) -> Result<ActiveSetOutcome> {
    let n = f.nvars();
    if gs.len() >= n {
        return finite_values(f, gs, cap, rng);
    }
    let minors = jacobian_minors(f, gs)?;
    let (choices, partial) = choice_vectors(&minors, gs.len(), rng);
    let mut outs = Vec::new();
    let mut roots = Vec::new();
    for choice in choices {
        let sys = match build_j(f, gs, &minors, &choice, rng) {
            Ok(s) => s,
            Err(Error::Degenerate(msg)) => {
                outs.push(failed(&choice, 0, String::new(), 0, msg));
                continue;
            }
            Err(e) => return Err(e),
        };
        let o = eliminate_j(&sys, cap, rng)?;
        roots.extend(o.roots.iter().cloned());
        outs.push(o);
    }
    Ok(ActiveSetOutcome { active: vec![], mode: "choice vectors", partial, choices: outs, roots: sort_dedup(roots) })
}

fn failed(choice: &[usize], count: usize, h_text: String, size: u64, msg: String) -> ChoiceOutcome {
    ChoiceOutcome {
        choice: choice.to_vec(),
        count,
        h_text,
        method: "",
        matrix_size: size,
        polynomial: None,
        roots: vec![],
        failure: Some(msg),
    }
}

/// Eliminates (x, t) from J and sets every y to 0: exactly through a Gröbner
/// basis of the elimination ideal when that fits the budget, otherwise
/// through the resultant of n + 2 generic combinations (a superset).
fn eliminate_j<R: Rng>(sys: &SystemJ, cap: usize, rng: &mut R) -> Result<ChoiceOutcome> {
    let l = &sys.layout;
    let k = l.n + 1;
    let zi = l.nvars() - 1;
    let at_origin = |p: &MPoly| -> UPoly {
        let mut q = p.clone();
        for v in k..zi {
            q = q.substitute_int(v, &BigInt::zero());
        }
        q.restrict_vars(&[zi]).to_upoly(0).expect("univariate in z")
    };
    let fail = |size: u64, method: &'static str, msg: String| ChoiceOutcome {
        method,
        ..failed(&sys.choice, sys.count, sys.h_text.clone(), size, msg)
    };
    if let Some(ideal) = elimination_ideal(&sys.polynomials, k, GROEBNER_BUDGET) {
        let mut g = UPoly::zero();
        for p in &ideal {
            let u = at_origin(p);
            if !u.is_zero() {
                g = if g.is_zero() { u } else { g.gcd(&u) };
            }
        }
        if g.is_zero() {
            return Ok(fail(0, EXACT, "the closure contains the whole line y = 0".into()));
        }
        return finish(sys, 0, EXACT, g);
    }
    let dmax = sys.polynomials.iter().map(|p| p.total_degree()).max().unwrap_or(1);
    let size = macaulay_size(&vec![dmax; k + 1], k);
    if size > cap as u64 {
        return Err(Error::ScaleCap(format!("Macaulay matrix of size {} > {}", size, cap)));
    }
    let square = make_square(&sys.polynomials, k + 1, dmax, rng)?;
    let mut fixed: Vec<Option<BigInt>> = vec![Some(BigInt::zero()); l.nvars() - k];
    *fixed.last_mut().unwrap() = None;
    let res = match resultant_gcp(&square, k, &fixed, rng) {
        Ok(r) => r,
        Err(Error::Degenerate(msg)) => return Ok(fail(size, RESULTANT, msg)),
        Err(e) => return Err(e),
    };
    let u = res
        .resultant
        .to_upoly(l.nvars() - k - 1)
        .ok_or_else(|| Error::Degenerate("elimination left y-dependence".into()))?;
    if u.is_zero() {
        return Ok(fail(size, RESULTANT, "vanishes at y = 0".into()));
    }
    finish(sys, size, RESULTANT, u)
}

const EXACT: &str = "elimination ideal";
const RESULTANT: &str = "resultant of generic combinations";

fn finish(sys: &SystemJ, size: u64, method: &'static str, u: UPoly) -> Result<ChoiceOutcome> {
    let (poly, roots) = if u.degree() == 0 {
        (u, vec![])
    } else {
        let sq = u.squarefree_part()?;
        let roots = isolate_real_roots(&sq)?;
        (sq, roots)
    };
    Ok(ChoiceOutcome {
        choice: sys.choice.clone(),
        count: sys.count,
        h_text: sys.h_text.clone(),
        method,
        matrix_size: size,
        polynomial: Some(poly),
        roots,
        failure: None,
    })
}

/// Values of F on the (generically finite) set V(gs) when #gs >= n.
fn finite_values<R: Rng>(f: &MPoly, gs: &[MPoly], cap: usize, rng: &mut R) -> Result<ActiveSetOutcome> {
    let n = f.nvars();
    let map: Vec<usize> = (0..n).collect();
    let fz = &f.remap(n + 1, &map) - &MPoly::var(n + 1, n);
    let mut all: Vec<MPoly> = gs.iter().map(|g| g.remap(n + 1, &map)).collect();
    all.push(fz.clone());
    let (u, method, size) = match eliminate_to_last(&all, n, GROEBNER_BUDGET) {
        Some(p) => (p.restrict_vars(&[n]).to_upoly(0).expect("univariate in z"), EXACT, 0),
        None => {
            let dmax = gs.iter().map(|g| g.total_degree()).max().unwrap_or(1);
            let mut sys: Vec<MPoly> = make_square(gs, n, dmax, rng)?.iter().map(|g| g.remap(n + 1, &map)).collect();
            sys.push(fz);
            let degs: Vec<u32> = sys.iter().map(|p| p.total_degree()).collect();
            let size = macaulay_size(&degs, n);
            if size > cap as u64 {
                return Err(Error::ScaleCap(format!("Macaulay matrix of size {} > {}", size, cap)));
            }
            let res = resultant_gcp(&sys, n, &[None], rng)?;
            (res.resultant.to_upoly(0).expect("univariate in z"), RESULTANT, size)
        }
    };
    let (poly, roots, failure) = if u.is_zero() {
        (None, vec![], Some("elimination vanished".to_string()))
    } else if u.degree() == 0 {
        (Some(u), vec![], None)
    } else {
        let sq = u.squarefree_part()?;
        let roots = isolate_real_roots(&sq)?;
        (Some(sq), roots, None)
    };
    let out = ChoiceOutcome {
        choice: vec![],
        count: all.len(),
        h_text: "1".into(),
        method,
        matrix_size: size,
        polynomial: poly,
        roots: roots.clone(),
        failure,
    };
    Ok(ActiveSetOutcome { active: vec![], mode: "finite fiber", partial: false, choices: vec![out], roots })
}

/// Rational sample values: small dyadics, integers and seeded random rationals.
fn sample_values<R: Rng>(rng: &mut R) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = vec![BigRational::zero()];
    for k in 0..8i32 {
        let p = BigRational::from_integer(BigInt::one() << k as usize);
        v.push(p.clone());
        v.push(-p.clone());
        v.push(p.recip());
        v.push(-p.recip());
    }
    for _ in 0..24 {
        let num = rng.gen_range(-999i64..=999);
        let den = rng.gen_range(1i64..=97);
        v.push(BigRational::new(BigInt::from(num), BigInt::from(den)));
    }
    v.sort();
    v.dedup();
    v
}

/// A feasible point with F <= q: all coordinates but one rational, the last a
/// real root of the single equality restricted to that line. Inequalities and
/// F - q are signed exactly at the root.
fn sublevel_witness<R: Rng>(
    f: &MPoly,
    eqs: &[MPoly],
    ineqs: &[MPoly],
    q: &BigRational,
    rng: &mut R,
) -> (Option<CurveWitness>, usize) {
    let n = f.nvars();
    let vals = sample_values(rng);
    let fq = f.scale(q.denom()).checked_sub(&MPoly::constant(n, q.numer().clone())).expect("same ring");
    let mut probes = 0;
    match eqs.len() {
        0 => {
            for pt in grid(n, &vals, rng) {
                probes += 1;
                if fq.eval_rational(&pt) <= BigRational::zero() && ineqs.iter().all(|h| h.eval_rational(&pt) >= BigRational::zero()) {
                    let root = AlgebraicNumber::from_rational(&pt[n - 1]);
                    let fixed = pt[..n - 1].iter().map(|c| Some(rat_string(c))).chain([None]).collect();
                    return (Some(CurveWitness { fixed, solved: n - 1, root }), probes);
                }
            }
            (None, probes)
        }
        1 => {
            let g = &eqs[0];
            for v in (0..n).filter(|&v| g.depends_on(v)) {
                let others: Vec<usize> = (0..n).filter(|&k| k != v).collect();
                for pt in grid(n - 1, &vals, rng) {
                    let restrict = |p: &MPoly| -> UPoly {
                        let mut p = p.clone();
                        for (idx, &k) in others.iter().enumerate() {
                            p = p.substitute_rational(k, &pt[idx]);
                        }
                        p.restrict_vars(&[v]).to_upoly(0).expect("univariate")
                    };
                    let u = restrict(g);
                    if u.is_zero() || u.degree() == 0 {
                        continue;
                    }
                    let Ok(roots) = isolate_real_roots(&u) else { continue };
                    let fu = restrict(&fq);
                    let hs: Vec<UPoly> = ineqs.iter().map(restrict).collect();
                    for a in roots {
                        probes += 1;
                        if sign_at(&a, &fu) <= 0 && hs.iter().all(|h| sign_at(&a, h) >= 0) {
                            let mut fixed: Vec<Option<String>> = vec![None; n];
                            for (idx, &k) in others.iter().enumerate() {
                                fixed[k] = Some(rat_string(&pt[idx]));
                            }
                            return (Some(CurveWitness { fixed, solved: v, root: a }), probes);
                        }
                    }
                }
            }
            (None, probes)
        }
        // several equalities: no exact curve parametrization at this scale
        _ => (None, probes),
    }
}

/// Points of the product grid of the sample values (all of them for one or
/// two coordinates, a seeded sample beyond that).
fn grid<R: Rng>(dim: usize, vals: &[BigRational], rng: &mut R) -> Vec<Vec<BigRational>> {
    if dim == 0 {
        return vec![vec![]];
    }
    let total = (vals.len() as u64).saturating_pow(dim as u32);
    if total <= 5000 {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|p: Vec<BigRational>| {
                    vals.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        return out;
    }
    (0..5000).map(|_| (0..dim).map(|_| vals[rng.gen_range(0..vals.len())].clone()).collect()).collect()
}
