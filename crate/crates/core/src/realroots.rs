//! Real roots of integer polynomials in isolating-interval form.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::UPoly;

/// A real algebraic number: square-free defining polynomial plus an interval
/// [lo, hi] holding exactly one of its roots. Either lo == hi (the root is
/// that rational) or neither endpoint is a root and the signs differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    pub defining: UPoly,
    pub lo: BigRational,
    pub hi: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl AlgebraicNumber {
    pub fn from_rational(q: &BigRational) -> Self {
        let defining = UPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        AlgebraicNumber { defining, lo: q.clone(), hi: q.clone() }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(&rat(k, 1))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.lo == self.hi {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        let a = refine(self, 60);
        let m = (&a.lo + &a.hi) / BigInt::from(2);
        m.numer().to_f64().unwrap_or(f64::NAN) / m.denom().to_f64().unwrap_or(f64::NAN)
    }

    /// Bisection step; may collapse to an exact rational root.
    fn bisect(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let m = (&self.lo + &self.hi) / BigInt::from(2);
        let sm = self.defining.sign_at(&m);
        if sm == 0 {
            self.lo = m.clone();
            self.hi = m;
        } else if sm == self.defining.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicNumber", 4)?;
        let coeffs: Vec<String> = self.defining.coeffs().iter().map(|c| c.to_string()).collect();
        st.serialize_field("defining", &coeffs)?;
        st.serialize_field("lo", &rat_string(&self.lo))?;
        st.serialize_field("hi", &rat_string(&self.hi))?;
        st.serialize_field("approx", &format!("{:.12e}", self.to_f64()))?;
        st.end()
    }
}

/// Sign variations of (x+1)^d p((a x + b)/(x+1)), an upper bound (with parity)
/// on the number of roots of p in the open interval (a, b).
pub fn descartes_bound(p: &UPoly, a: &BigRational, b: &BigRational) -> usize {
    let d = p.degree();
    if p.is_zero() || d == 0 {
        return 0;
    }
    let den = a.denom().lcm(b.denom());
    let an = (a * &den).to_integer();
    let bn = (b * &den).to_integer();
    let l1 = UPoly::new(vec![bn, an]);
    let l2 = UPoly::new(vec![den.clone(), den]);
    let mut pow1 = vec![UPoly::constant(BigInt::one())];
    let mut pow2 = vec![UPoly::constant(BigInt::one())];
    for k in 1..=d {
        pow1.push(pow1[k - 1].mul(&l1));
        pow2.push(pow2[k - 1].mul(&l2));
    }
    let mut q = UPoly::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        q = q.add(&pow1[i].mul(&pow2[d - i]).scale(c));
    }
    q.sign_variations()
}

fn cauchy_bound(p: &UPoly) -> BigRational {
    let lc = p.lc().abs();
    let m = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let (q, r) = m.div_rem(&lc);
    let b = q + if r.is_zero() { 0 } else { 1 } + 1;
    BigRational::from_integer(b)
}

/// Isolates the distinct real roots of u, sorted increasingly.
pub fn isolate_real_roots(u: &UPoly) -> Result<Vec<AlgebraicNumber>> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = u.squarefree_part()?;
    if p.degree() == 0 {
        return Ok(vec![]);
    }
    let b = cauchy_bound(&p);
    let mut stack = vec![(-b.clone(), b)];
    let mut out = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let v = descartes_bound(&p, &a, &b);
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push(AlgebraicNumber { defining: p.clone(), lo: a, hi: b });
            continue;
        }
        let m = (&a + &b) / BigInt::from(2);
        if p.sign_at(&m) == 0 {
            out.push(AlgebraicNumber { defining: p.clone(), lo: m.clone(), hi: m.clone() });
            let mut eps = (&b - &a) / BigInt::from(4);
            loop {
                let (l, r) = (&m - &eps, &m + &eps);
                if p.sign_at(&l) != 0 && p.sign_at(&r) != 0 && descartes_bound(&p, &l, &r) == 1 {
                    break;
                }
                eps /= BigInt::from(2);
            }
            stack.push((a, &m - &eps));
            stack.push((&m + &eps, b));
        } else {
            stack.push((a, m.clone()));
            stack.push((m, b));
        }
    }
    for r in out.iter_mut() {
        snap_rational(r);
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Detects a rational root: a root p/q has q | lc, so once the interval is
/// narrower than 1/lc^2 the simplest rational inside is the only candidate.
fn snap_rational(a: &mut AlgebraicNumber) {
    if a.lo == a.hi {
        return;
    }
    let lc = a.defining.lc().abs();
    let target = BigRational::new(BigInt::one(), &lc * &lc);
    while a.lo != a.hi && a.width() >= target {
        a.bisect();
    }
    if a.lo == a.hi {
        return;
    }
    let q = simplest_between(&a.lo, &a.hi);
    if a.defining.sign_at(&q) == 0 {
        a.lo = q.clone();
        a.hi = q;
    }
}

/// Narrows the interval to width at most 2^-bits.
pub fn refine(a: &AlgebraicNumber, bits: u32) -> AlgebraicNumber {
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    refine_to(a, &target)
}

pub fn refine_to(a: &AlgebraicNumber, width: &BigRational) -> AlgebraicNumber {
    let mut r = a.clone();
    while r.lo != r.hi && &r.width() > width {
        r.bisect();
    }
    r
}

/// Smallest-denominator rational in the open interval (lo, hi), lo < hi.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo < hi);
    let zero = BigRational::zero();
    if lo < &zero && hi > &zero {
        return zero;
    }
    if hi <= &zero {
        return -simplest_open(&-hi, Some(&-lo));
    }
    simplest_open(lo, Some(hi))
}

fn simplest_open(lo: &BigRational, hi: Option<&BigRational>) -> BigRational {
    let fl = lo.floor();
    let n = &fl + BigInt::one();
    match hi {
        None => return n,
        Some(h) if &n < h => return n,
        _ => {}
    }
    let h = hi.unwrap();
    let lo_f = lo - &fl;
    let hi_f = h - &fl;
    let ylo = hi_f.recip();
    let y = if lo_f.is_zero() {
        simplest_open(&ylo, None)
    } else {
        let yhi = lo_f.recip();
        simplest_open(&ylo, Some(&yhi))
    };
    fl + y.recip()
}

/// Exact sign of u at the algebraic number a.
pub fn sign_at(a: &AlgebraicNumber, u: &UPoly) -> i32 {
    if u.is_zero() {
        return 0;
    }
    if let Some(q) = a.as_rational() {
        return u.sign_at(q);
    }
    let g = a.defining.gcd(u);
    if g.degree() >= 1 && g.sign_at(&a.lo) * g.sign_at(&a.hi) < 0 {
        return 0;
    }
    let mut r = a.clone();
    loop {
        if let Some(q) = r.as_rational() {
            return u.sign_at(q);
        }
        let sl = u.sign_at(&r.lo);
        let sh = u.sign_at(&r.hi);
        if sl != 0 && sl == sh && descartes_bound(u, &r.lo, &r.hi) == 0 {
            return sl;
        }
        r.bisect();
    }
}

/// Exact equality of two real algebraic numbers.
pub fn algebraic_eq(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    if a.hi < b.lo || b.hi < a.lo {
        return false;
    }
    if let Some(q) = a.as_rational() {
        return sign_at(b, &UPoly::new(vec![-q.numer().clone(), q.denom().clone()])) == 0;
    }
    if let Some(q) = b.as_rational() {
        return sign_at(a, &UPoly::new(vec![-q.numer().clone(), q.denom().clone()])) == 0;
    }
    let g = a.defining.gcd(&b.defining);
    if g.degree() == 0 || sign_at(a, &g) != 0 {
        return false;
    }
    // a is a root of g | def_b; it equals b iff it lies in b's interval
    let mut r = a.clone();
    loop {
        if r.hi < b.lo || b.hi < r.lo {
            return false;
        }
        if r.lo >= b.lo && r.hi <= b.hi {
            return true;
        }
        r.bisect();
    }
}

pub fn cmp_algebraic(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Ordering {
    if algebraic_eq(a, b) {
        return Ordering::Equal;
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    loop {
        if x.hi < y.lo {
            return Ordering::Less;
        }
        if y.hi < x.lo {
            return Ordering::Greater;
        }
        if x.lo == x.hi && y.lo == y.hi {
            return x.lo.cmp(&y.lo);
        }
        if x.width() >= y.width() {
            x.bisect();
        } else {
            y.bisect();
        }
    }
}

/// Compares an algebraic number with a rational.
pub fn cmp_rational(a: &AlgebraicNumber, q: &BigRational) -> Ordering {
    cmp_algebraic(a, &AlgebraicNumber::from_rational(q))
}

/// Sorts and removes duplicates (exact equality).
pub fn sort_dedup(mut v: Vec<AlgebraicNumber>) -> Vec<AlgebraicNumber> {
    v.sort_by(cmp_algebraic);
    let mut out: Vec<AlgebraicNumber> = Vec::new();
    for a in v {
        if out.last().map_or(true, |l| !algebraic_eq(l, &a)) {
            out.push(a);
        }
    }
    out
}

/// Rationals r_0 < e_1 < r_1 < ... < e_m < r_m for sorted distinct roots:
/// outer points one unit beyond the integer hull of the root intervals, inner
/// points the simplest rationals strictly between consecutive roots.
pub fn interlacing_rationals(roots: &[AlgebraicNumber]) -> Vec<BigRational> {
    if roots.is_empty() {
        return vec![BigRational::zero()];
    }
    let mut rs: Vec<AlgebraicNumber> = roots.to_vec();
    for i in 0..rs.len().saturating_sub(1) {
        loop {
            if rs[i].hi < rs[i + 1].lo {
                break;
            }
            if rs[i].width() >= rs[i + 1].width() {
                rs[i].bisect();
            } else {
                rs[i + 1].bisect();
            }
            assert!(
                !(rs[i].lo == rs[i].hi && rs[i + 1].lo == rs[i + 1].hi && rs[i].lo == rs[i + 1].lo),
                "interlacing needs distinct roots"
            );
        }
    }
    let one = BigRational::one();
    let mut out = vec![rs[0].lo.floor() - &one];
    for i in 0..rs.len() - 1 {
        out.push(simplest_between(&rs[i].hi, &rs[i + 1].lo));
    }
    out.push(rs[rs.len() - 1].hi.ceil() + one);
    out
}
