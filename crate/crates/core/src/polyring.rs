//! Sparse multivariate and dense univariate polynomials over the integers.
//!
//! `MPoly` keeps a map from exponent vectors to nonzero coefficients; `UPoly`
//! is a dense coefficient vector, low degree first.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Bitsize convention: ceil(lg(1 + |c|)), so bitsize(0) = 0 and bitsize(+-1) = 1.
pub fn int_bitsize(c: &BigInt) -> u64 {
    let a = c.abs() + 1u32;
    let bits = a.bits();
    // a is a power of two iff a & (a-1) == 0
    let pow2 = (&a & (&a - 1u32)).is_zero();
    if pow2 {
        bits - 1
    } else {
        bits
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: BigInt) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigInt)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    /// Clears denominators: returns the integer polynomial and the lcm used.
    pub fn from_rational_terms<I: IntoIterator<Item = (Exponent, BigRational)>>(
        nvars: usize,
        terms: I,
    ) -> (Self, BigInt) {
        let terms: Vec<_> = terms.into_iter().collect();
        let scale = terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let p = Self::from_terms(
            nvars,
            terms.into_iter().map(|(e, c)| (e, (c * &scale).to_integer())),
        );
        (p, scale)
    }

    pub fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn coeff(&self, exp: &[u32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Total degree counting only the variables in `vars`.
    pub fn degree_in_block(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|&v| e[v]).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn bitsize(&self) -> u64 {
        int_bitsize(&self.max_abs_coeff())
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the leading (grlex-largest) coefficient positive.
    pub fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        self.map_coeffs(|c| c / &g)
    }

    /// Coefficient of the grlex-largest term.
    pub fn leading_coeff(&self) -> BigInt {
        self.sorted_terms().first().map(|(_, c)| (*c).clone()).unwrap_or_default()
    }

    pub fn map_coeffs<F: Fn(&BigInt) -> BigInt>(&self, f: F) -> MPoly {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        self.map_coeffs(|c| c * k)
    }

    fn check(&self, other: &MPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut r = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca * cb);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut result = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, i: usize) -> Result<MPoly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * BigInt::from(e[i]));
            }
        }
        Ok(r)
    }

    pub fn eval_rational(&self, pt: &[BigRational]) -> BigRational {
        assert_eq!(pt.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, pt: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (x, &k) in pt.iter().zip(e) {
                    t *= x.powi(k as i32);
                }
                t
            })
            .sum()
    }

    pub fn gradient_f64(&self, pt: &[f64]) -> Vec<f64> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).unwrap().eval_f64(pt))
            .collect()
    }

    /// Replaces x_i by the integer `v`; the variable count is kept.
    pub fn substitute_int(&self, i: usize, v: &BigInt) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            r.add_term(e2, c * num_traits::pow(v.clone(), e[i] as usize));
        }
        r
    }

    /// Replaces x_i by the rational `v`, returning an integer polynomial
    /// scaled by den(v)^deg_i.
    pub fn substitute_rational(&self, i: usize, v: &BigRational) -> MPoly {
        let d = self.degree_in(i) as usize;
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            let k = e[i] as usize;
            let num = num_traits::pow(v.numer().clone(), k) * num_traits::pow(v.denom().clone(), d - k);
            r.add_term(e2, c * num);
        }
        r
    }

    /// Moves variable j to position map[j] in a ring with `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.nvars);
        let mut r = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[map[j]] += k;
                }
            }
            r.add_term(e2, c.clone());
        }
        r
    }

    /// Keeps the listed variables (in order); all others must not occur.
    pub fn restrict_vars(&self, keep: &[usize]) -> MPoly {
        let mut r = MPoly::zero(keep.len());
        for (e, c) in &self.terms {
            debug_assert!((0..self.nvars).all(|v| keep.contains(&v) || e[v] == 0));
            r.add_term(keep.iter().map(|&v| e[v]).collect(), c.clone());
        }
        r
    }

    /// Coefficients with respect to x_i, lowest power first; x_i is absent from them.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MPoly::zero(self.nvars); if self.is_zero() { 0 } else { d + 1 }];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            out[e[i] as usize].add_term(e2, c.clone());
        }
        out
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn divide_monomial(&self, m: &[u32]) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone())),
        )
    }

    pub fn to_upoly(&self, i: usize) -> Option<UPoly> {
        let mut coeffs = vec![BigInt::zero(); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            coeffs[e[i] as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn from_upoly(u: &UPoly, nvars: usize, i: usize) -> MPoly {
        MPoly::from_terms(
            nvars,
            u.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[i] = k as u32;
                (e, c.clone())
            }),
        )
    }

    /// Terms in graded lexicographic order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.sign() == Sign::Minus;
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &k) in e.iter().enumerate() {
                let name = names.get(j).cloned().unwrap_or_else(|| format!("x{}", j));
                match k {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{}^{}", name, k)),
                }
            }
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    factors.insert(0, a.to_string());
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.to_string_with(&names))
    }
}

impl<'a> std::ops::Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        self.checked_add(o).expect("variable count mismatch")
    }
}

impl<'a> std::ops::Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self.checked_sub(o).expect("variable count mismatch")
    }
}

impl<'a> std::ops::Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        self.checked_mul(o).expect("variable count mismatch")
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.map_coeffs(|c| -c)
    }
}

// ---------------------------------------------------------------------------
// Univariate

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// x - c
    pub fn linear_root(c: &BigInt) -> Self {
        Self::new(vec![-c.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with deg(0) = 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn bitsize(&self) -> u64 {
        self.coeffs.iter().map(int_bitsize).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of the polynomial at a rational point, computed without fractions.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let (p, q) = (x.numer(), x.denom());
        // sum c_k p^k q^(d-k); q > 0 so the sign is preserved
        let d = self.degree();
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        let mut terms = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            terms.push(qpow.clone());
            qpow *= q;
        }
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * p + c * &terms[d - k];
        }
        sign_of(&acc)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut r = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        UPoly::new(r)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content removed, leading coefficient positive.
    pub fn primitive_part(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        UPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of self by d: lc(d)^(deg self - deg d + 1) * self mod d.
    pub fn pseudo_rem(&self, d: &UPoly) -> UPoly {
        assert!(!d.is_zero());
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.lc();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let top = r[k].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &top * dc;
            }
            r.pop();
            while r.last().map_or(false, |c| c.is_zero()) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    /// Exact division over Z; returns None when `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.lc();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let (qt, rem) = r[k].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &qt * dc;
            }
            q[k - dd] = qt;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UPoly::new(q))
    }

    /// Primitive gcd with positive leading coefficient (gcd(0,0) = 0).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Product of the distinct irreducible factors, content removed.
    pub fn squarefree_part(&self) -> Result<UPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p = self.primitive_part();
        if p.degree() == 0 {
            return Ok(UPoly::constant(BigInt::one()));
        }
        let g = p.gcd(&p.derivative());
        Ok(p.div_exact(&g).expect("gcd divides").primitive_part())
    }

    /// Substitutes x -> x + c.
    pub fn taylor_shift(&self, c: &BigInt) -> UPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        UPoly::new(a)
    }

    /// x^d p(1/x)
    pub fn reverse(&self) -> UPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        UPoly::new(c)
    }

    /// Sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let mut last = 0;
        let mut v = 0;
        for c in &self.coeffs {
            let s = sign_of(c);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Integer polynomial with the same roots as a rational-coefficient one.
    pub fn from_rationals(c: &[BigRational]) -> UPoly {
        let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        UPoly::new(c.iter().map(|x| (x * &l).to_integer()).collect())
    }

    pub fn to_string_var(&self, v: &str) -> String {
        let names = vec![v.to_string()];
        MPoly::from_upoly(self, 1, 0).to_string_with(&names)
    }
}

pub fn sign_of(c: &BigInt) -> i32 {
    match c.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

// ---------------------------------------------------------------------------
// Kronecker substitution

/// Mixed-radix weights: w_0 = 1, w_{k+1} = w_k (cap_k + 1).
pub fn kronecker_weights(caps: &[u32]) -> Result<Vec<u64>> {
    let mut w = Vec::with_capacity(caps.len());
    let mut cur: u64 = 1;
    for &c in caps {
        w.push(cur);
        cur = cur
            .checked_mul(c as u64 + 1)
            .ok_or_else(|| Error::InvalidInput("Kronecker weights overflow".into()))?;
    }
    Ok(w)
}

/// Encodes p(x_0, ..., x_k) as p(s, s^{w_1}, ..., s^{w_k}).
pub fn kronecker_substitute(p: &MPoly, caps: &[u32]) -> Result<UPoly> {
    if caps.len() != p.nvars() {
        return Err(Error::VarMismatch(caps.len(), p.nvars()));
    }
    let w = kronecker_weights(caps)?;
    let mut pairs = Vec::with_capacity(p.len());
    let mut maxe = 0usize;
    for (e, c) in p.terms() {
        let mut k: u64 = 0;
        for (v, (&ev, &cap)) in e.iter().zip(caps).enumerate() {
            if ev > cap {
                return Err(Error::CapViolated { var: v, degree: ev, cap });
            }
            k += ev as u64 * w[v];
        }
        let k = usize::try_from(k).map_err(|_| Error::InvalidInput("encoded degree too large".into()))?;
        maxe = maxe.max(k);
        pairs.push((k, c.clone()));
    }
    let mut coeffs = vec![BigInt::zero(); if pairs.is_empty() { 0 } else { maxe + 1 }];
    for (k, c) in pairs {
        coeffs[k] = c;
    }
    Ok(UPoly::new(coeffs))
}

/// Inverse of `kronecker_substitute` under the same caps.
pub fn kronecker_decode(u: &UPoly, caps: &[u32]) -> Result<MPoly> {
    let w = kronecker_weights(caps)?;
    let mut p = MPoly::zero(caps.len());
    for (k, c) in u.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut rest = k as u64;
        let mut e = vec![0u32; caps.len()];
        for v in (0..caps.len()).rev() {
            e[v] = (rest / w[v]) as u32;
            rest %= w[v];
            if v + 1 < caps.len() && e[v] > caps[v] {
                return Err(Error::CapViolated { var: v, degree: e[v], cap: caps[v] });
            }
        }
        if let Some(last) = caps.len().checked_sub(1) {
            if e[last] > caps[last] {
                return Err(Error::CapViolated { var: last, degree: e[last], cap: caps[last] });
            }
        }
        p.add_term(e, c.clone());
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

pub fn parse_poly(text: &str, vars: &[String]) -> Result<MPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    p.skip_ws();
    if p.pos >= p.src.len() {
        return Err(Error::Syntax { offset: p.pos, msg: "empty expression".into() });
    }
    let r = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::Syntax {
            offset: p.pos,
            msg: format!("unexpected `{}`", p.src[p.pos] as char),
        });
    }
    Ok(r)
}

/// Convenience wrapper taking `&str` variable names.
pub fn parse(text: &str, vars: &[&str]) -> Result<MPoly> {
    let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    parse_poly(text, &v)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c == b'+' {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else if c == b'-' {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(Error::Syntax { offset: start, msg: "expected exponent".into() });
            }
            let k: u32 = digits
                .parse()
                .map_err(|_| Error::Syntax { offset: start, msg: "exponent too large".into() })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<MPoly> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Syntax { offset: self.pos, msg: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().expect("digits");
                Ok(MPoly::constant(n, v))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(n, i)),
                    None => Err(Error::UnknownVariable { name, offset: start }),
                }
            }
            Some(c) => Err(Error::Syntax { offset: self.pos, msg: format!("unexpected `{}`", c as char) }),
            None => Err(Error::Syntax { offset: self.pos, msg: "unexpected end of input".into() }),
        }
    }
}

// ---------------------------------------------------------------------------
// Bitsize bounds for products and powers. `lg` is taken as log2(max(x, 2)),
// i.e. never below one; with lg(1) = 0 the product bound is false for
// linear factors, e.g. (3x + 3y)^2 has the coefficient 18.

fn lg_at_least_one(x: u64) -> f64 {
    (x.max(2) as f64).log2()
}

/// b <= t1 + t2 + 2 nu lg(delta), decided exactly as 2^(b - t1 - t2) <= max(delta,2)^(2 nu).
pub fn product_bitsize_ok(b: u64, t1: u64, t2: u64, nu: u64, delta: u64) -> bool {
    if b <= t1 + t2 {
        return true;
    }
    let lhs = BigInt::one() << (b - t1 - t2);
    let rhs = num_traits::pow(BigInt::from(delta.max(2)), (2 * nu) as usize);
    lhs <= rhs
}

/// Bound for an m-fold product: sum tau_i + 12 nu m lg(m) lg(sum delta_i).
pub fn multi_product_bitsize_bound(taus: &[u64], degs: &[u64], nu: u64) -> f64 {
    let m = taus.len() as u64;
    let st: u64 = taus.iter().sum();
    let sd: u64 = degs.iter().sum();
    if m <= 1 {
        return st as f64;
    }
    st as f64 + 12.0 * nu as f64 * m as f64 * (m as f64).log2() * lg_at_least_one(sd)
}

/// Bound for f^m: m tau + 12 nu m lg(delta).
pub fn power_bitsize_bound(tau: u64, delta: u64, nu: u64, m: u64) -> f64 {
    (m * tau) as f64 + 12.0 * nu as f64 * m as f64 * lg_at_least_one(delta)
}

/// The same bound read literally, with lg(1) = 0.
pub fn product_bitsize_bound_literal(t1: u64, t2: u64, nu: u64, delta: u64) -> f64 {
    let lg = if delta == 0 { 0.0 } else { (delta as f64).log2() };
    (t1 + t2) as f64 + 2.0 * nu as f64 * lg
}
