//! Global infimum over R^n from the candidate set K0 ∪ K∞ and
//! fiber-emptiness tests at interlacing rationals.

use crate::acv::asymptotic_critical_values;
use crate::polyring::MPoly;
use crate::polytope::{face_normals, newton_polytope, DEFAULT_AMBIENT_CAP};
use crate::realroots::{
    algebraic_eq, interlacing_rationals, rat_string, refine_to, AlgebraicNumber,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

pub const DEFAULT_PRECISION: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// random starts per round
    pub starts: usize,
    /// box radius multiplier between rounds
    pub growth: u32,
    pub rounds: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { starts: 64, growth: 4, rounds: 8 }
    }
}

fn ser_rat<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(q))
}

fn ser_rats<S: Serializer>(q: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(q.iter().map(rat_string))
}

/// A rational point together with the exact value of f there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "ser_rats")]
    pub point: Vec<BigRational>,
    #[serde(serialize_with = "ser_rat")]
    pub value: BigRational,
}

impl Witness {
    fn at(f: &MPoly, point: Vec<BigRational>) -> Self {
        let value = f.eval_rational(&point);
        Witness { point, value }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FiberVerdict {
    /// f(below) <= r <= f(above); the fiber is nonempty by the intermediate value theorem
    Nonempty { below: Witness, above: Witness },
    /// no point with the missing inequality was found within the budget
    ProbablyEmpty { probes: usize, missing: String },
}

impl FiberVerdict {
    pub fn is_nonempty(&self) -> bool {
        matches!(self, FiberVerdict::Nonempty { .. })
    }
}

fn to_rational(x: f64, bits: u32) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let scale = (1u64 << bits) as f64;
    let num = BigInt::from_f64((x * scale).round()).unwrap_or_else(BigInt::zero);
    BigRational::new(num, BigInt::from(1u64 << bits))
}

fn rationalize(x: &[f64], bits: u32) -> Vec<BigRational> {
    x.iter().map(|&v| to_rational(v, bits)).collect()
}

/// Damped descent on sign*f with backtracking; every visited point is passed to `visit`,
/// which returns true to stop.
fn descend(f: &MPoly, start: Vec<f64>, sign: f64, iters: usize, visit: &mut dyn FnMut(&[f64]) -> bool) -> Vec<f64> {
    let mut x = start;
    let mut fx = sign * f.eval_f64(&x);
    let mut step = 0.5;
    if visit(&x) {
        return x;
    }
    for _ in 0..iters {
        let g: Vec<f64> = f.gradient_f64(&x).iter().map(|v| sign * v).collect();
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            break;
        }
        let mut moved = false;
        for _ in 0..40 {
            let y: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - step * b / norm.max(1.0)).collect();
            let fy = sign * f.eval_f64(&y);
            if fy.is_finite() && fy < fx {
                x = y;
                fx = fy;
                step *= 2.0;
                moved = true;
                break;
            }
            step /= 2.0;
        }
        if !moved {
            break;
        }
        if visit(&x) {
            break;
        }
    }
    x
}

/// Monomial-curve probes x_i = ±2^(k w_i) along exposing directions of NP(f).
fn ray_probes(f: &MPoly) -> Vec<Vec<BigRational>> {
    let n = f.nvars();
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    if n <= DEFAULT_AMBIENT_CAP {
        if let Ok(p) = newton_polytope(f, false) {
            dirs = face_normals(&p);
        }
    }
    for i in 0..n {
        for s in [1, -1] {
            let mut e = vec![0; n];
            e[i] = s;
            dirs.push(e);
        }
    }
    dirs.sort();
    dirs.dedup();
    let signs = 1usize << n.min(4);
    let mut out = Vec::new();
    for w in &dirs {
        for k in 1..=6i64 {
            for mask in 0..signs {
                let pt: Vec<BigRational> = w
                    .iter()
                    .enumerate()
                    .map(|(i, &wi)| {
                        let e = k * wi;
                        let mag = if e >= 0 {
                            BigRational::from_integer(BigInt::one() << e as usize)
                        } else {
                            BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
                        };
                        if i < 4 && mask >> i & 1 == 1 {
                            -mag
                        } else {
                            mag
                        }
                    })
                    .collect();
                out.push(pt);
            }
        }
    }
    out
}

struct Search<'a> {
    f: &'a MPoly,
    budget: SearchBudget,
    probes: usize,
}

impl<'a> Search<'a> {
    /// A rational point with sign*(f - r) <= 0, if one is found.
    fn find_side<R: Rng>(&mut self, r: &BigRational, sign: i32, rng: &mut R) -> Option<Witness> {
        let f = self.f;
        let ok = |w: &Witness| match w.value.cmp(r) {
            Ordering::Equal => true,
            Ordering::Less => sign > 0,
            Ordering::Greater => sign < 0,
        };
        let origin = Witness::at(f, vec![BigRational::zero(); f.nvars()]);
        self.probes += 1;
        if ok(&origin) {
            return Some(origin);
        }
        for p in ray_probes(f) {
            self.probes += 1;
            let w = Witness::at(f, p);
            if ok(&w) {
                return Some(w);
            }
        }
        let rf = r.to_f64().unwrap_or(0.0);
        let mut radius = 1.0f64;
        for _ in 0..self.budget.rounds {
            for _ in 0..self.budget.starts {
                let start: Vec<f64> = (0..f.nvars()).map(|_| rng.gen_range(-radius..=radius)).collect();
                let mut found: Option<Witness> = None;
                let mut probes = 0;
                descend(f, start, sign as f64, 60, &mut |x| {
                    probes += 1;
                    let v = f.eval_f64(x);
                    if (sign > 0 && v <= rf) || (sign < 0 && v >= rf) {
                        let w = Witness::at(f, rationalize(x, 24));
                        if ok(&w) {
                            found = Some(w);
                            return true;
                        }
                    }
                    false
                });
                self.probes += probes;
                if found.is_some() {
                    return found;
                }
            }
            radius *= self.budget.growth as f64;
        }
        None
    }
}

/// Looks for rational p, q with f(p) <= r <= f(q).
pub fn fiber_nonempty_witness(f: &MPoly, r: &BigRational, budget: SearchBudget, seed: u64) -> FiberVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    fiber_rng(f, r, budget, &mut rng)
}

fn fiber_rng<R: Rng>(f: &MPoly, r: &BigRational, budget: SearchBudget, rng: &mut R) -> FiberVerdict {
    let mut s = Search { f, budget, probes: 0 };
    let below = s.find_side(r, 1, rng);
    let Some(below) = below else {
        return FiberVerdict::ProbablyEmpty { probes: s.probes, missing: "f <= r".into() };
    };
    let above = if below.value == *r { Some(below.clone()) } else { s.find_side(r, -1, rng) };
    match above {
        Some(above) => FiberVerdict::Nonempty { below, above },
        None => FiberVerdict::ProbablyEmpty { probes: s.probes, missing: "f >= r".into() },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfimumStatus {
    Finite,
    UnboundedBelow,
    Constant,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberTest {
    #[serde(serialize_with = "ser_rat")]
    pub r: BigRational,
    pub result: FiberVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfimumResult {
    pub status: InfimumStatus,
    pub value: Option<AlgebraicNumber>,
    pub attained: bool,
    /// a point where f equals (or is within 2^-precision above) the value
    pub attainment_witness: Option<Witness>,
    /// a point with f below the smallest candidate, or below -2^10 for an empty candidate set
    pub unbounded_witness: Option<Witness>,
    pub candidates: Vec<AlgebraicNumber>,
    pub critical_values: Vec<AlgebraicNumber>,
    pub fiber_tests: Vec<FiberTest>,
    pub seed: u64,
    pub budget: SearchBudget,
    pub precision: u32,
    pub notes: Vec<String>,
}

const CAVEAT: &str = "probably-empty fiber verdicts come from a randomized search and are not certified";

/// Infimum of f over R^n.
pub fn infimum(f: &MPoly, c: u64, seed: u64, budget: SearchBudget, precision: u32) -> Result<InfimumResult> {
    let n = f.nvars();
    let base = InfimumResult {
        status: InfimumStatus::Constant,
        value: None,
        attained: true,
        attainment_witness: None,
        unbounded_witness: None,
        candidates: vec![],
        critical_values: vec![],
        fiber_tests: vec![],
        seed,
        budget,
        precision,
        notes: vec![],
    };
    if f.is_constant() {
        let v = BigRational::from_integer(f.constant_term());
        return Ok(InfimumResult {
            value: Some(AlgebraicNumber::from_rational(&v)),
            attainment_witness: Some(Witness { point: vec![BigRational::zero(); n], value: v }),
            ..base
        });
    }
    // unused variables do not change the infimum
    let used: Vec<usize> = (0..n).filter(|&i| f.depends_on(i)).collect();
    let g = f.restrict_vars(&used);
    let lift = |w: Witness| -> Witness {
        let mut p = vec![BigRational::zero(); n];
        for (k, &i) in used.iter().enumerate() {
            p[i] = w.point[k].clone();
        }
        Witness { point: p, value: w.value }
    };
    let report = asymptotic_critical_values(&g, c, seed)?;
    let candidates = report.rabier_superset.clone();
    let critical = report.k0.values.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let mut notes = vec![CAVEAT.to_string()];
    if !report.k0.exact {
        notes.push("critical values are a superset (exact elimination exceeded its budget)".into());
    }
    let base = InfimumResult {
        status: InfimumStatus::UnboundedBelow,
        attained: false,
        candidates: candidates.clone(),
        critical_values: critical.clone(),
        ..base
    };
    if candidates.is_empty() {
        let low = BigRational::from_integer(BigInt::from(-1024));
        let mut s = Search { f: &g, budget, probes: 0 };
        let w = s.find_side(&low, 1, &mut rng).map(&lift);
        notes.push("no real candidates: the image of f has no finite endpoint".into());
        return Ok(InfimumResult { unbounded_witness: w, notes, ..base });
    }
    let rs = interlacing_rationals(&candidates);
    let mut tests: Vec<FiberTest> = Vec::new();
    let mut chosen: Option<usize> = None;
    for (j, r) in rs.iter().enumerate() {
        let v = fiber_rng(&g, r, budget, &mut rng);
        let nonempty = v.is_nonempty();
        let v = match v {
            FiberVerdict::Nonempty { below, above } => FiberVerdict::Nonempty { below: lift(below), above: lift(above) },
            e => e,
        };
        tests.push(FiberTest { r: r.clone(), result: v });
        if nonempty {
            chosen = Some(j);
            break;
        }
    }
    let Some(j) = chosen else {
        return Err(Error::MonteCarlo("no interlacing rational has a witnessed fiber".into()));
    };
    if j == 0 {
        let w = match &tests[0].result {
            FiberVerdict::Nonempty { below, .. } => Some(below.clone()),
            _ => None,
        };
        notes.push("f takes a value below every candidate".into());
        return Ok(InfimumResult { unbounded_witness: w, fiber_tests: tests, notes, ..base });
    }
    let value = candidates[j - 1].clone();
    let in_k0 = critical.iter().any(|k| algebraic_eq(k, &value));
    let mut attainment_witness = None;
    if in_k0 {
        attainment_witness = attain(&g, &value, budget, precision, &mut rng).map(&lift);
        if attainment_witness.is_none() {
            notes.push("value is a critical value but no point reaching it was found".into());
        }
    }
    Ok(InfimumResult {
        status: InfimumStatus::Finite,
        attained: attainment_witness.is_some(),
        value: Some(value),
        attainment_witness,
        fiber_tests: tests,
        notes,
        ..base
    })
}

/// Multistart descent toward the value, then rounding the best points at
/// several scales; accepts exact equality or a gap below 2^-precision.
fn attain<R: Rng>(f: &MPoly, value: &AlgebraicNumber, budget: SearchBudget, precision: u32, rng: &mut R) -> Option<Witness> {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << precision as usize);
    let tight = refine_to(value, &(&tol / BigInt::from(4)));
    let close = |w: &Witness| -> bool {
        if let Some(q) = value.as_rational() {
            return w.value == *q;
        }
        w.value >= tight.lo && &w.value - &tight.hi < tol
    };
    let target = value.to_f64();
    let mut best: Vec<Vec<f64>> = Vec::new();
    let mut radius = 1.0f64;
    for _ in 0..budget.rounds.min(3) {
        for _ in 0..budget.starts {
            let start: Vec<f64> = (0..f.nvars()).map(|_| rng.gen_range(-radius..=radius)).collect();
            let x = descend(f, start, 1.0, 400, &mut |_| false);
            if (f.eval_f64(&x) - target).abs() < 1e-6 * (1.0 + target.abs()) {
                best.push(x);
            }
        }
        radius *= budget.growth as f64;
        if best.len() >= 4 {
            break;
        }
    }
    for x in &best {
        for bits in (0..=48).step_by(4) {
            let w = Witness::at(f, rationalize(x, bits));
            if close(&w) {
                return Some(w);
            }
        }
    }
    None
}
