//! Closed-form degree and magnitude bounds for the infimum.

use crate::elimination::binomial;
use crate::realroots::rat_string;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Attained,
    Unconstrained,
    Newton,
    Constrained,
}

impl std::str::FromStr for Scenario {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "attained" => Ok(Scenario::Attained),
            "unconstrained" => Ok(Scenario::Unconstrained),
            "newton" => Ok(Scenario::Newton),
            "constrained" => Ok(Scenario::Constrained),
            _ => Err(format!("unknown scenario `{}`", s)),
        }
    }
}

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_string(q))
}

fn ser_opt_bigint<S: Serializer>(q: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_opt_rational<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(v) => s.serialize_str(&rat_string(v)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttainedDegree {
    #[serde(serialize_with = "crate::ser_bigint")]
    pub bound: BigInt,
    #[serde(serialize_with = "crate::ser_bigint")]
    pub cap: BigInt,
}

/// max_{0<=i<=min(r+s,n)} C(n,i) d^i (d-1)^(n-i), together with 2^(n-1) d^n.
pub fn attained_degree_bound(n: u64, d: u64, r: u64, s: u64) -> AttainedDegree {
    let top = (r + s).min(n);
    let bd = BigInt::from(d);
    let bd1 = BigInt::from(d.saturating_sub(1));
    let bound = (0..=top)
        .map(|i| {
            binomial(&BigInt::from(n), i)
                * num_traits::pow(bd.clone(), i as usize)
                * num_traits::pow(bd1.clone(), (n - i) as usize)
        })
        .max()
        .unwrap_or_else(BigInt::zero);
    let cap = if n == 0 {
        BigInt::one()
    } else {
        num_traits::pow(BigInt::from(2), (n - 1) as usize) * num_traits::pow(bd, n as usize)
    };
    AttainedDegree { bound, cap }
}

/// log2 of a positive integer, exact when it is a power of two, otherwise a
/// rational upper bound within 1/64.
pub fn log2_upper(x: &BigInt) -> (BigRational, bool) {
    assert!(x.is_positive());
    let bits = x.bits();
    if x == &(BigInt::one() << (bits - 1)) {
        return (BigRational::from_integer(BigInt::from(bits - 1)), true);
    }
    let b = num_traits::pow(x.clone(), 64).bits();
    (BigRational::new(BigInt::from(b), BigInt::from(64)), false)
}

#[derive(Clone, Debug, Serialize)]
pub struct LogBound {
    /// symbolic form of log2 of the lower bound on |f*|
    pub expression: String,
    /// the exact log2 when every logarithm involved is rational
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<BigRational>,
    /// a rational value never above the exact log2; 2^safe is a valid lower bound
    #[serde(serialize_with = "ser_rational")]
    pub safe: BigRational,
    pub approx: f64,
    #[serde(serialize_with = "crate::ser_bigint")]
    pub h_tilde: BigInt,
}

/// log2 of (2^(5 - n/2) H~ d^n)^(-n 2^n d^n) with H~ = max(H, n+r+s).
pub fn attained_value_log_bound(n: u64, d: u64, h: &BigInt, r: u64, s: u64) -> LogBound {
    let ht = h.clone().max(BigInt::from(n + r + s)).max(BigInt::one());
    let bd = BigInt::from(d.max(1));
    let weight = BigInt::from(n) * num_traits::pow(BigInt::from(2), n as usize) * num_traits::pow(bd.clone(), n as usize);
    let base = BigRational::from_integer(BigInt::from(5)) - BigRational::new(BigInt::from(n), BigInt::from(2));
    let (lh, eh) = log2_upper(&ht);
    let (ld, ed) = log2_upper(&bd);
    let nn = BigRational::from_integer(BigInt::from(n));
    let w = BigRational::from_integer(weight.clone());
    let safe = -(&w * (&base + &lh + &nn * &ld));
    let exact = if eh && ed { Some(safe.clone()) } else { None };
    let approx = -(weight_f64(&weight))
        * (5.0 - n as f64 / 2.0 + ht_f64(&ht).log2() + n as f64 * (d.max(1) as f64).log2());
    LogBound {
        expression: format!("-{}*(5 - {}/2 + log2({}) + {}*log2({}))", weight, n, ht, n, bd),
        exact,
        safe,
        approx,
        h_tilde: ht,
    }
}

fn weight_f64(w: &BigInt) -> f64 {
    w.to_string().parse().unwrap_or(f64::INFINITY)
}

fn ht_f64(h: &BigInt) -> f64 {
    h.to_string().parse().unwrap_or(f64::INFINITY)
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub formula: &'static str,
    pub asymptotic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub scenario: Scenario,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub degree_bound: Option<BigInt>,
    /// log2-magnitude exponent: 2^-eta <= |f*| <= 2^eta
    #[serde(serialize_with = "ser_opt_rational")]
    pub eta: Option<BigRational>,
    pub entries: Vec<BoundEntry>,
    pub notes: Vec<String>,
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn powu(b: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

const ASYMPTOTIC_NOTE: &str = "asymptotic entries use unit constants and drop polylog factors; not certified";

pub fn unconstrained_bounds(n: u64, d: u64, tau: u64) -> BoundReport {
    let deg = powu(d, n.saturating_sub(1));
    let eta = BigInt::from(n) * &deg * BigInt::from(tau) + BigInt::from(n * n);
    BoundReport {
        scenario: Scenario::Unconstrained,
        degree_bound: Some(deg.clone()),
        eta: Some(int(eta.clone())),
        entries: vec![
            BoundEntry { name: "degree", value: int(deg), formula: "d^(n-1)", asymptotic: true },
            BoundEntry { name: "eta", value: int(eta), formula: "n d^(n-1) tau + n^2", asymptotic: true },
        ],
        notes: vec![ASYMPTOTIC_NOTE.into()],
    }
}

pub fn newton_bounds(n: u64, d: u64, tau: u64) -> BoundReport {
    let eta = BigInt::from(n * n) * powu(d, n.saturating_sub(1)) * BigInt::from(n + tau);
    BoundReport {
        scenario: Scenario::Newton,
        degree_bound: None,
        eta: Some(int(eta.clone())),
        entries: vec![BoundEntry { name: "eta", value: int(eta), formula: "n^2 d^(n-1) (n + tau)", asymptotic: true }],
        notes: vec![ASYMPTOTIC_NOTE.into(), "valid for Newton non-degenerate inputs".into()],
    }
}

/// Constrained scenario; r = 0 dispatches to the unconstrained bounds.
pub fn constrained_bounds(n: u64, d: u64, d1: u64, tau: u64, r: u64) -> BoundReport {
    if r == 0 {
        let mut rep = unconstrained_bounds(n, d, tau);
        rep.notes.push("r = 0: unconstrained scenario".into());
        return rep;
    }
    let base = n * r * d1;
    let deg = powu(base, n * n);
    let eta = BigInt::from(r * (d + n + tau) + d1) * &deg;
    BoundReport {
        scenario: Scenario::Constrained,
        degree_bound: Some(deg.clone()),
        eta: Some(int(eta.clone())),
        entries: vec![
            BoundEntry { name: "degree", value: int(deg), formula: "(n r d1)^(n^2)", asymptotic: true },
            BoundEntry { name: "eta", value: int(eta), formula: "(r (d + n + tau) + d1) (n r d1)^(n^2)", asymptotic: true },
        ],
        notes: vec![
            ASYMPTOTIC_NOTE.into(),
            "eta read as (r(d+n+tau)+d1)(n r d1)^(n^2); the printed grouping is unbalanced".into(),
        ],
    }
}

pub fn attained_bounds(n: u64, d: u64, h: &BigInt, r: u64, s: u64) -> BoundReport {
    let deg = attained_degree_bound(n, d, r, s);
    let lb = attained_value_log_bound(n, d, h, r, s);
    let mut notes = vec![format!("log2 |f*| >= {}", lb.expression)];
    if lb.exact.is_none() {
        notes.push("eta is a rational upper bound of the irrational exact value".into());
    }
    BoundReport {
        scenario: Scenario::Attained,
        degree_bound: Some(deg.bound.clone()),
        eta: Some(-lb.safe.clone()),
        entries: vec![
            BoundEntry {
                name: "degree",
                value: int(deg.bound),
                formula: "max_{i<=min(r+s,n)} C(n,i) d^i (d-1)^(n-i)",
                asymptotic: false,
            },
            BoundEntry { name: "degree_cap", value: int(deg.cap), formula: "2^(n-1) d^n", asymptotic: false },
            BoundEntry {
                name: "log2_lower",
                value: lb.safe,
                formula: "-n 2^n d^n (5 - n/2 + log2 H~ + n log2 d)",
                asymptotic: false,
            },
        ],
        notes,
    }
}

/// max(0, 1 - D/|S|).
pub fn hyperplane_success_probability(degree: &BigInt, s_size: &BigInt) -> BigRational {
    assert!(s_size.is_positive(), "|S| must be positive");
    let p = BigRational::one() - BigRational::new(degree.clone(), s_size.clone());
    if p.is_negative() {
        BigRational::zero()
    } else {
        p
    }
}
