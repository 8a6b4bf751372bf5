//! Macaulay matrices and resultants with parameters.
//!
//! Determinants of matrices whose entries are polynomials in auxiliary
//! variables are computed by evaluation and interpolation modulo word-size
//! primes: the free auxiliary variables are Kronecker-packed into one
//! variable, the matrix is evaluated at integer points, and the coefficients
//! are recovered by Chinese remaindering.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modp::{self, Crt, Field, Mat, Primes};
use crate::polyring::{kronecker_decode, kronecker_weights, Exponent, MPoly, UPoly};

/// Square matrix with entries drawn from a table of auxiliary polynomials.
#[derive(Clone, Debug)]
pub struct AuxMatrix {
    pub dim: usize,
    pub n_aux: usize,
    pub coeffs: Vec<MPoly>,
    /// row -> (column, coefficient id)
    pub rows: Vec<Vec<(usize, usize)>>,
    /// rows receiving + s on the diagonal
    pub perturbed: Vec<bool>,
    /// indices of the extraneous-factor submatrix (rows = columns)
    pub e_index: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    pub m: u32,
    pub degrees: Vec<u32>,
    /// homogeneous monomials of degree m; eliminated variables first, homogenizing variable last
    pub columns: Vec<Exponent>,
    /// (source polynomial, shift monomial) for each row; row i is assigned to column i
    pub row_labels: Vec<(usize, Exponent)>,
    pub reduced: Vec<bool>,
    pub matrix: AuxMatrix,
}

impl MacaulayMatrix {
    pub fn nu(&self) -> usize {
        self.columns.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationResult {
    #[serde(skip)]
    pub resultant: MPoly,
    pub resultant_text: String,
    pub perturbation: String,
    pub s_order: usize,
    pub e_order: usize,
    pub m: u32,
    pub matrix_dim: usize,
    pub extraneous_dim: usize,
    pub degree_caps: Vec<u32>,
    pub primes_used: usize,
}

pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    if n < &BigInt::from(k) {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    r
}

/// Degree threshold 1 + n(13 d^n - 1) beyond which the maximal minors of the
/// Macaulay matrix form a resultant system.
pub fn nullstellensatz_degree(n: u64, d: u64) -> BigInt {
    let dn = num_traits::pow(BigInt::from(d), n as usize);
    BigInt::one() + BigInt::from(n) * (BigInt::from(13) * dn - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemSize {
    #[serde(serialize_with = "crate::ser_bigint")]
    pub m: BigInt,
    #[serde(serialize_with = "crate::ser_bigint")]
    pub nu: BigInt,
    #[serde(serialize_with = "crate::ser_bigint")]
    pub rows_upper: BigInt,
}

/// Sizes of the resultant-system matrix for p polynomials of degree <= d in
/// n homogeneous variables: m, the column count C(m+n-1, n-1), and an upper
/// bound p C(m+n-2, n-1) on the row count (all degrees >= 1).
pub fn resultant_system_size(n: u64, d: u64, p: u64) -> SystemSize {
    let m = nullstellensatz_degree(n, d);
    let k = n.saturating_sub(1);
    let nu = binomial(&(&m + BigInt::from(n) - 1), k);
    let rows = BigInt::from(p) * binomial(&(&m + BigInt::from(n) - 2), k);
    SystemSize { m, nu, rows_upper: rows }
}

fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    if nvars == 0 {
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// Splits a polynomial in (elim vars, aux vars) into homogeneous-exponent -> aux coefficient.
fn homogeneous_coeffs(p: &MPoly, n_elim: usize, deg: u32) -> BTreeMap<Exponent, MPoly> {
    let n_aux = p.nvars() - n_elim;
    let mut out: BTreeMap<Exponent, MPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut h: Exponent = e[..n_elim].to_vec();
        let s: u32 = h.iter().sum();
        h.push(deg - s);
        out.entry(h)
            .or_insert_with(|| MPoly::zero(n_aux))
            .add_term(e[n_elim..].to_vec(), c.clone());
    }
    out
}

/// Macaulay matrix of N = n_elim + 1 polynomials in (elim vars, aux vars).
/// Polynomial i < n_elim is attached to the i-th eliminated variable, the last
/// polynomial to the homogenizing variable; a column monomial is assigned to
/// the first polynomial whose attached power divides it.
pub fn macaulay_matrix(polys: &[MPoly], n_elim: usize, m: Option<u32>) -> Result<MacaulayMatrix> {
    let nh = n_elim + 1;
    if polys.len() != nh {
        return Err(Error::InvalidInput(format!(
            "Macaulay matrix needs {} polynomials, got {}",
            nh,
            polys.len()
        )));
    }
    let nvars = polys[0].nvars();
    if polys.iter().any(|p| p.nvars() != nvars) || nvars < n_elim {
        return Err(Error::VarMismatch(nvars, n_elim));
    }
    let n_aux = nvars - n_elim;
    let elim: Vec<usize> = (0..n_elim).collect();
    let degrees: Vec<u32> = polys.iter().map(|p| p.degree_in_block(&elim)).collect();
    if degrees.iter().any(|&d| d == 0) {
        return Err(Error::InvalidInput("every polynomial needs positive degree".into()));
    }
    let m0: u32 = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
    let m = m.unwrap_or(m0);
    if m < m0 {
        return Err(Error::InvalidInput(format!("degree {} below the minimum {}", m, m0)));
    }
    let columns = monomials_of_degree(nh, m);
    let index: HashMap<Exponent, usize> =
        columns.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let hc: Vec<BTreeMap<Exponent, MPoly>> = polys
        .iter()
        .zip(&degrees)
        .map(|(p, &d)| homogeneous_coeffs(p, n_elim, d))
        .collect();
    let mut coeffs: Vec<MPoly> = Vec::new();
    let mut coef_ids: Vec<Vec<(Exponent, usize)>> = Vec::new();
    for map in &hc {
        let mut ids = Vec::new();
        for (e, c) in map {
            ids.push((e.clone(), coeffs.len()));
            coeffs.push(c.clone());
        }
        coef_ids.push(ids);
    }
    let mut rows = Vec::with_capacity(columns.len());
    let mut labels = Vec::with_capacity(columns.len());
    let mut reduced = Vec::with_capacity(columns.len());
    for beta in &columns {
        let divisors: Vec<usize> = (0..nh).filter(|&i| beta[i] >= degrees[i]).collect();
        let i = divisors[0];
        reduced.push(divisors.len() == 1);
        let mut shift = beta.clone();
        shift[i] -= degrees[i];
        let mut row = Vec::new();
        for (e, id) in &coef_ids[i] {
            let col: Exponent = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
            row.push((index[&col], *id));
        }
        rows.push(row);
        labels.push((i, shift));
    }
    let perturbed = labels.iter().map(|(i, _)| *i + 1 < nh).collect();
    let e_index = (0..columns.len()).filter(|&c| !reduced[c]).collect();
    Ok(MacaulayMatrix {
        m,
        degrees,
        columns,
        row_labels: labels,
        reduced,
        matrix: AuxMatrix { dim: rows.len(), n_aux, coeffs, rows, perturbed, e_index },
    })
}

// ---------------------------------------------------------------------------
// Degree bounds

/// Maximum-weight perfect matching (Hungarian method); None if none exists.
fn max_weight_assignment(w: &[Vec<Option<i64>>]) -> Option<i64> {
    let n = w.len();
    if n == 0 {
        return Some(0);
    }
    const BIG: i64 = 1 << 40;
    let cost = |i: usize, j: usize| -> i64 {
        match w[i][j] {
            Some(x) => -x,
            None => BIG,
        }
    };
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0i64;
    for j in 1..=n {
        let i = p[j];
        match w[i - 1][j - 1] {
            Some(x) => total += x,
            None => return None,
        }
    }
    Some(total)
}

/// Upper bound on the degree in aux variable `v` of det(A + s D).
pub fn det_degree_bound(a: &AuxMatrix, v: usize) -> u32 {
    let n = a.dim;
    let mut w = vec![vec![None; n]; n];
    for (r, row) in a.rows.iter().enumerate() {
        for &(c, id) in row {
            w[r][c] = Some(a.coeffs[id].degree_in(v) as i64);
        }
        if a.perturbed[r] && w[r][r].is_none() {
            w[r][r] = Some(0);
        }
    }
    max_weight_assignment(&w).unwrap_or(0).max(0) as u32
}

// ---------------------------------------------------------------------------
// Evaluation engine

struct Residues {
    f: Field,
    /// per coefficient: (exponent, residue) pairs
    coeffs: Vec<Vec<(Exponent, u64)>>,
    maxdeg: Vec<u32>,
}

impl Residues {
    fn new(f: Field, a: &AuxMatrix) -> Self {
        let coeffs = a
            .coeffs
            .iter()
            .map(|c| c.terms().iter().map(|(e, v)| (e.clone(), f.from_bigint(v))).collect())
            .collect();
        let maxdeg = (0..a.n_aux)
            .map(|v| a.coeffs.iter().map(|c| c.degree_in(v)).max().unwrap_or(0))
            .collect();
        Residues { f, coeffs, maxdeg }
    }

    fn matrix(&self, a: &AuxMatrix, point: &[u64]) -> Mat {
        let f = &self.f;
        let pows: Vec<Vec<u64>> = point
            .iter()
            .zip(&self.maxdeg)
            .map(|(&x, &d)| {
                let mut pw = Vec::with_capacity(d as usize + 1);
                pw.push(f.one());
                for k in 0..d as usize {
                    pw.push(f.mul(pw[k], x));
                }
                pw
            })
            .collect();
        let vals: Vec<u64> = self
            .coeffs
            .iter()
            .map(|terms| {
                let mut acc = 0u64;
                for (e, c) in terms {
                    let mut t = *c;
                    for (v, &k) in e.iter().enumerate() {
                        if k > 0 {
                            t = f.mul(t, pows[v][k as usize]);
                        }
                    }
                    acc = f.add(acc, t);
                }
                acc
            })
            .collect();
        let mut m = vec![vec![0u64; a.dim]; a.dim];
        for (r, row) in a.rows.iter().enumerate() {
            for &(c, id) in row {
                m[r][c] = f.add(m[r][c], vals[id]);
            }
        }
        m
    }
}

fn dets_at(res: &Residues, a: &AuxMatrix, point: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let f = &res.f;
    let m = res.matrix(a, point);
    let dm = match modp::det_perturbed(f, &m, &a.perturbed) {
        Some(d) => d,
        None => modp::det_perturbed_interp(f, &m, &a.perturbed),
    };
    let e: Mat = a.e_index.iter().map(|&r| a.e_index.iter().map(|&c| m[r][c]).collect()).collect();
    let eperturbed: Vec<bool> = a.e_index.iter().map(|&r| a.perturbed[r]).collect();
    let de = match modp::det_perturbed(f, &e, &eperturbed) {
        Some(d) => d,
        None => modp::det_perturbed_interp(f, &e, &eperturbed),
    };
    (dm, de)
}

fn trailing(v: &[u64]) -> Option<usize> {
    v.iter().position(|&c| c != 0)
}

#[derive(Clone, Debug)]
pub struct RatioInfo {
    pub s_order: usize,
    pub e_order: usize,
    pub degree_caps: Vec<u32>,
    pub primes_used: usize,
}

/// Lowest nonvanishing s-coefficient of det(M + sD) divided by that of the
/// extraneous submatrix, as a polynomial in the aux variables. Variables with
/// a `fixed` value are specialized after the generic s-orders are found.
pub fn trailing_ratio<R: Rng>(
    a: &AuxMatrix,
    fixed: &[Option<BigInt>],
    rng: &mut R,
) -> Result<(MPoly, RatioInfo)> {
    assert_eq!(fixed.len(), a.n_aux);
    let n_aux = a.n_aux;
    // generic s-orders at random points
    let mut k_m: Option<usize> = None;
    let mut k_e: Option<usize> = None;
    for p in Primes::new().take(2) {
        let f = Field::new(p);
        let res = Residues::new(f, a);
        let pt: Vec<u64> = (0..n_aux).map(|_| f.to_m(rng.gen_range(1..p))).collect();
        let (dm, de) = dets_at(&res, a, &pt);
        if let Some(t) = trailing(&dm) {
            k_m = Some(k_m.map_or(t, |k| k.min(t)));
        }
        if let Some(t) = trailing(&de) {
            k_e = Some(k_e.map_or(t, |k| k.min(t)));
        }
    }
    let k_m = k_m.ok_or_else(|| Error::Degenerate("determinant vanishes for every s".into()))?;
    let k_e = k_e.ok_or_else(|| Error::Degenerate("extraneous factor vanishes".into()))?;

    let free: Vec<usize> = (0..n_aux).filter(|&v| fixed[v].is_none()).collect();
    let caps: Vec<u32> = free.iter().map(|&v| det_degree_bound(a, v)).collect();
    let weights = kronecker_weights(&caps)?;
    let du: u64 = caps.iter().zip(&weights).map(|(&c, &w)| c as u64 * w).sum();
    let npts = du as usize + 1;

    // coefficient size: 1-norm product over rows, after specialization
    let spec_coeffs: Vec<MPoly> = a
        .coeffs
        .iter()
        .map(|c| {
            let mut c = c.clone();
            for (v, val) in fixed.iter().enumerate() {
                if let Some(val) = val {
                    c = c.substitute_int(v, val);
                }
            }
            c
        })
        .collect();
    let mut bits: f64 = 0.0;
    for (r, row) in a.rows.iter().enumerate() {
        let mut norm = if a.perturbed[r] { BigInt::one() } else { BigInt::zero() };
        for &(_, id) in row {
            for c in spec_coeffs[id].terms().values() {
                norm += c.abs();
            }
        }
        if norm > BigInt::one() {
            bits += norm.bits() as f64;
        }
    }
    let max_primes = ((bits + du as f64 + 4.0) / 61.0).ceil() as usize + 1;

    let mut crt = Crt::new();
    let mut prev: Option<Vec<BigInt>> = None;
    let mut used = 0;
    for p in Primes::new() {
        let f = Field::new(p);
        let res = Residues::new(f, a);
        let mut xs = Vec::with_capacity(npts);
        let mut ys = Vec::with_capacity(npts);
        let mut u: u64 = 0;
        let mut skipped = 0usize;
        while xs.len() < npts {
            u += 1;
            let um = f.to_m(u);
            let mut pt = vec![0u64; n_aux];
            for (k, &v) in free.iter().enumerate() {
                pt[v] = f.pow(um, weights[k]);
            }
            for (v, val) in fixed.iter().enumerate() {
                if let Some(val) = val {
                    pt[v] = f.from_bigint(val);
                }
            }
            let (dm, de) = dets_at(&res, a, &pt);
            let ce = de.get(k_e).copied().unwrap_or(0);
            if ce == 0 {
                skipped += 1;
                if skipped > npts + 64 {
                    return Err(Error::Degenerate(
                        "extraneous factor vanishes on the specialization".into(),
                    ));
                }
                continue;
            }
            let cm = dm.get(k_m).copied().unwrap_or(0);
            xs.push(um);
            ys.push(f.mul(cm, f.inv(ce)));
        }
        let coef = modp::interpolate(&f, &xs, &ys);
        let plain: Vec<u64> = coef.iter().map(|&c| f.from_m(c)).collect();
        crt.add(&plain, p);
        used += 1;
        let cur = crt.symmetric();
        let stable = prev.as_ref().map_or(false, |pv| *pv == cur);
        if stable || used >= max_primes {
            let u = UPoly::new(cur);
            if u.is_zero() {
                return Err(Error::Degenerate("specialized resultant vanishes identically".into()));
            }
            let packed = kronecker_decode(&u, &caps)?;
            let mut map = vec![0usize; free.len()];
            for (k, &v) in free.iter().enumerate() {
                map[k] = v;
            }
            let out = packed.remap(n_aux, &map);
            return Ok((
                out,
                RatioInfo { s_order: k_m, e_order: k_e, degree_caps: caps, primes_used: used },
            ));
        }
        prev = Some(cur);
    }
    Err(Error::Degenerate("ran out of primes".into()))
}

/// Exact determinant of a matrix of polynomials (all in the same ring).
pub fn determinant_poly(m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let nvars = m[0][0].nvars();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("matrix not square".into()));
    }
    let mut coeffs = Vec::new();
    let mut rows = Vec::with_capacity(n);
    for r in m {
        let mut row = Vec::new();
        for (c, e) in r.iter().enumerate() {
            if e.nvars() != nvars {
                return Err(Error::VarMismatch(e.nvars(), nvars));
            }
            if !e.is_zero() {
                row.push((c, coeffs.len()));
                coeffs.push(e.clone());
            }
        }
        rows.push(row);
    }
    let a = AuxMatrix {
        dim: n,
        n_aux: nvars,
        coeffs,
        rows,
        perturbed: vec![false; n],
        e_index: vec![],
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    match trailing_ratio(&a, &vec![None; nvars], &mut rng) {
        Ok((p, info)) if info.s_order == 0 => Ok(p),
        Ok(_) => Ok(MPoly::zero(nvars)),
        Err(Error::Degenerate(_)) => Ok(MPoly::zero(nvars)),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Resultants

/// Eliminates the first `n_elim` variables from n_elim + 1 polynomials whose
/// remaining variables are parameters. Returns the lowest nonvanishing
/// coefficient (in s) of the perturbed determinant ratio, a multiple of the
/// resultant; first with the last polynomial unperturbed, then, if that
/// vanishes identically, with every polynomial perturbed.
pub fn resultant_gcp<R: Rng>(
    polys: &[MPoly],
    n_elim: usize,
    fixed: &[Option<BigInt>],
    rng: &mut R,
) -> Result<EliminationResult> {
    if polys.len() != n_elim + 1 {
        return Err(Error::InvalidInput(format!(
            "square system needs {} polynomials, got {}",
            n_elim + 1,
            polys.len()
        )));
    }
    let nvars = polys[0].nvars();
    let n_aux = nvars - n_elim;
    if fixed.len() != n_aux {
        return Err(Error::InvalidInput("one specialization slot per parameter".into()));
    }
    if polys.iter().any(|p| p.is_zero()) {
        return Err(Error::Degenerate("zero polynomial in the system".into()));
    }
    let elim: Vec<usize> = (0..n_elim).collect();
    let specialize = |p: &MPoly| -> MPoly {
        let mut q = p.clone();
        for (v, val) in fixed.iter().enumerate() {
            if let Some(val) = val {
                q = q.substitute_int(n_elim + v, val);
            }
        }
        q
    };
    // a member of degree zero in the eliminated variables is, up to a power, the resultant
    if let Some(p) = polys.iter().find(|p| p.degree_in_block(&elim) == 0) {
        let q = specialize(p);
        let aux: Vec<usize> = (n_elim..nvars).collect();
        let r = q.restrict_vars(&aux);
        return Ok(EliminationResult {
            resultant_text: r.to_string(),
            resultant: r,
            perturbation: "none (degree-zero member)".into(),
            s_order: 0,
            e_order: 0,
            m: 0,
            matrix_dim: 0,
            extraneous_dim: 0,
            degree_caps: vec![],
            primes_used: 0,
        });
    }
    let mut mm = macaulay_matrix(polys, n_elim, None)?;
    let attempt = trailing_ratio(&mm.matrix, fixed, rng);
    let (r, info, mode) = match attempt {
        Ok((r, info)) => (r, info, "last polynomial unperturbed"),
        Err(Error::Degenerate(msg)) if msg.contains("every s") => {
            mm.matrix.perturbed = vec![true; mm.nu()];
            let (r, info) = trailing_ratio(&mm.matrix, fixed, rng)?;
            (r, info, "all polynomials perturbed")
        }
        Err(e) => return Err(e),
    };
    let r = normalize_sign(&r);
    Ok(EliminationResult {
        resultant_text: r.to_string(),
        resultant: r,
        perturbation: mode.into(),
        s_order: info.s_order,
        e_order: info.e_order,
        m: mm.m,
        matrix_dim: mm.nu(),
        extraneous_dim: mm.matrix.e_index.len(),
        degree_caps: info.degree_caps,
        primes_used: info.primes_used,
    })
}

fn normalize_sign(p: &MPoly) -> MPoly {
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p.clone()
    }
}

/// Sylvester resultant of two univariate polynomials (Bareiss elimination).
pub fn sylvester_resultant(a: &UPoly, b: &UPoly) -> BigInt {
    let (m, n) = (a.degree(), b.degree());
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    bareiss_det(s)
}

/// Fraction-free determinant of an integer matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// n combinations f_1 + g f_2 + ... + g^{p-1} f_p with distinct g drawn from
/// {1, ..., p d^n + 1}; the inputs themselves when p = n.
pub fn make_square<R: Rng>(polys: &[MPoly], n: usize, d: u32, rng: &mut R) -> Result<Vec<MPoly>> {
    let p = polys.len();
    if p < n {
        return Err(Error::InvalidInput(format!("{} polynomials cannot be squared to {}", p, n)));
    }
    if p == n {
        return Ok(polys.to_vec());
    }
    let size = gamma_set_size(p, d, n);
    let mut gammas: Vec<u64> = Vec::with_capacity(n);
    while gammas.len() < n {
        let g = rng.gen_range(1..=size);
        if !gammas.contains(&g) {
            gammas.push(g);
        }
    }
    Ok(gammas
        .iter()
        .map(|&g| {
            let gb = BigInt::from(g);
            let mut acc = MPoly::zero(polys[0].nvars());
            let mut pw = BigInt::one();
            for f in polys {
                acc = &acc + &f.scale(&pw);
                pw *= &gb;
            }
            acc
        })
        .collect())
}

/// |Gamma| = p d^n + 1, saturated at 2^40.
pub fn gamma_set_size(p: usize, d: u32, n: usize) -> u64 {
    let mut v: u64 = p as u64;
    for _ in 0..n {
        v = v.saturating_mul(d.max(1) as u64).min(1 << 40);
    }
    v + 1
}
