//! Word-size prime field arithmetic (Montgomery form) and the dense linear
//! algebra used by the multimodular determinant engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub p: u64,
    pinv: u64,
    r2: u64,
}

impl Field {
    /// `p` must be an odd prime below 2^62.
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 62));
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Field { p, pinv: inv.wrapping_neg(), r2 }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn to_m(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn from_m(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn one(&self) -> u64 {
        self.to_m(1)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut r = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Residue of a big integer, in Montgomery form.
    pub fn from_bigint(&self, c: &BigInt) -> u64 {
        let r = c.mod_floor(&BigInt::from(self.p));
        self.to_m(r.to_u64().unwrap())
    }

    pub fn from_i64(&self, c: i64) -> u64 {
        self.to_m(c.rem_euclid(self.p as i64) as u64)
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62 in decreasing order.
pub struct Primes {
    next: u64,
}

impl Primes {
    pub fn new() -> Self {
        Primes { next: (1u64 << 62) - 1 }
    }
}

impl Default for Primes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
        None
    }
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Clone, Debug)]
pub struct Crt {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Crt {
    pub fn new() -> Self {
        Crt { modulus: BigInt::one(), values: Vec::new() }
    }

    /// `res` in ordinary (non-Montgomery) representation.
    pub fn add(&mut self, res: &[u64], p: u64) {
        if self.values.len() < res.len() {
            self.values.resize(res.len(), BigInt::zero());
        }
        let pb = BigInt::from(p);
        let minv = self.modulus.mod_floor(&pb).to_u64().unwrap();
        let minv = if minv == 0 { 0 } else { mod_inverse(minv, p) };
        for (k, v) in self.values.iter_mut().enumerate() {
            let r = res.get(k).copied().unwrap_or(0);
            let cur = v.mod_floor(&pb).to_u64().unwrap();
            let diff = (r as u128 + p as u128 - cur as u128) % p as u128;
            let t = (diff * minv as u128 % p as u128) as u64;
            *v += &self.modulus * t;
        }
        self.modulus *= pb;
    }

    /// Values mapped to the symmetric range (-M/2, M/2].
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.values
            .iter()
            .map(|v| {
                let v = v.mod_floor(&self.modulus);
                if v > half {
                    v - &self.modulus
                } else {
                    v
                }
            })
            .collect()
    }
}

impl Default for Crt {
    fn default() -> Self {
        Self::new()
    }
}

pub fn mod_inverse(a: u64, p: u64) -> u64 {
    let g = BigInt::from(a).extended_gcd(&BigInt::from(p));
    assert!(g.gcd.is_one());
    g.x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Symmetric residue to a signed integer of any size, helper for tests.
pub fn symmetric_i128(v: u64, p: u64) -> i128 {
    if v > p / 2 {
        v as i128 - p as i128
    } else {
        v as i128
    }
}

pub type Mat = Vec<Vec<u64>>;

/// Determinant by Gaussian elimination; entries in Montgomery form.
pub fn det(f: &Field, mut a: Mat) -> u64 {
    let n = a.len();
    let mut d = f.one();
    for c in 0..n {
        let piv = match (c..n).find(|&r| a[r][c] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if piv != c {
            a.swap(piv, c);
            d = f.neg(d);
        }
        d = f.mul(d, a[c][c]);
        let inv = f.inv(a[c][c]);
        for r in c + 1..n {
            if a[r][c] == 0 {
                continue;
            }
            let factor = f.mul(a[r][c], inv);
            let (top, bottom) = a.split_at_mut(r);
            let pr = &top[c];
            let row = &mut bottom[0];
            for k in c..n {
                if pr[k] != 0 {
                    row[k] = f.sub(row[k], f.mul(factor, pr[k]));
                }
            }
        }
    }
    d
}

/// Coefficients (low first, Montgomery form) of det(xI - A), via Hessenberg reduction.
pub fn charpoly(f: &Field, mut h: Mat) -> Vec<u64> {
    let n = h.len();
    // similarity reduction to upper Hessenberg form
    for c in 0..n.saturating_sub(2) {
        let piv = (c + 1..n).find(|&r| h[r][c] != 0);
        let piv = match piv {
            Some(r) => r,
            None => continue,
        };
        if piv != c + 1 {
            h.swap(piv, c + 1);
            for row in h.iter_mut() {
                row.swap(piv, c + 1);
            }
        }
        let inv = f.inv(h[c + 1][c]);
        for r in c + 2..n {
            if h[r][c] == 0 {
                continue;
            }
            let u = f.mul(h[r][c], inv);
            // row_r -= u * row_{c+1}
            let (top, bottom) = h.split_at_mut(r);
            let src = &top[c + 1];
            let dst = &mut bottom[0];
            for k in 0..n {
                if src[k] != 0 {
                    dst[k] = f.sub(dst[k], f.mul(u, src[k]));
                }
            }
            // col_{c+1} += u * col_r
            for row in h.iter_mut() {
                if row[r] != 0 {
                    row[c + 1] = f.add(row[c + 1], f.mul(u, row[r]));
                }
            }
        }
    }
    // p_k(x) for the leading k x k block
    let one = f.one();
    let mut polys: Vec<Vec<u64>> = vec![vec![one]];
    for k in 1..=n {
        let kk = k - 1;
        let prev = &polys[k - 1];
        let mut pk = vec![0u64; k + 1];
        for (i, &c) in prev.iter().enumerate() {
            pk[i + 1] = f.add(pk[i + 1], c);
            pk[i] = f.sub(pk[i], f.mul(h[kk][kk], c));
        }
        let mut t = one;
        for i in (1..k).rev() {
            // t = prod_{j=i+1}^{k} h[j-1][j-2] in 1-based terms
            t = f.mul(t, h[i][i - 1]);
            if t == 0 {
                break;
            }
            let coef = f.mul(h[i - 1][kk], t);
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[i - 1].iter().enumerate() {
                pk[j] = f.sub(pk[j], f.mul(coef, c));
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// Coefficients in s (low first, Montgomery form) of det(A + s D) where D is
/// the 0/1 diagonal given by `perturbed`. Returns None when the unperturbed
/// block is singular, in which case the caller may interpolate in s instead.
pub fn det_perturbed(f: &Field, a: &Mat, perturbed: &[bool]) -> Option<Vec<u64>> {
    let n = a.len();
    let uidx: Vec<usize> = (0..n).filter(|&i| !perturbed[i]).collect();
    let pidx: Vec<usize> = (0..n).filter(|&i| perturbed[i]).collect();
    let (nu, np) = (uidx.len(), pidx.len());
    if nu == 0 {
        let neg: Mat = a.iter().map(|r| r.iter().map(|&x| f.neg(x)).collect()).collect();
        return Some(charpoly(f, neg));
    }
    // augmented [A_UU | A_UP], eliminated to reduced row echelon form
    let mut aug: Mat = uidx
        .iter()
        .map(|&r| uidx.iter().chain(pidx.iter()).map(|&c| a[r][c]).collect())
        .collect();
    let w = nu + np;
    let mut d = f.one();
    for c in 0..nu {
        let piv = (c..nu).find(|&r| aug[r][c] != 0)?;
        if piv != c {
            aug.swap(piv, c);
            d = f.neg(d);
        }
        d = f.mul(d, aug[c][c]);
        let inv = f.inv(aug[c][c]);
        for k in c..w {
            aug[c][k] = f.mul(aug[c][k], inv);
        }
        let pivot_row = aug[c].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == c || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for k in c..w {
                if pivot_row[k] != 0 {
                    row[k] = f.sub(row[k], f.mul(factor, pivot_row[k]));
                }
            }
        }
    }
    // X = A_UU^{-1} A_UP is aug[.., nu..]; S = A_PP - A_PU X
    let mut neg_s: Mat = vec![vec![0; np]; np];
    for (i, &pr) in pidx.iter().enumerate() {
        let mut row: Vec<u64> = pidx.iter().map(|&pc| a[pr][pc]).collect();
        for (k, &uc) in uidx.iter().enumerate() {
            let coef = a[pr][uc];
            if coef == 0 {
                continue;
            }
            let xr = &aug[k][nu..];
            for j in 0..np {
                if xr[j] != 0 {
                    row[j] = f.sub(row[j], f.mul(coef, xr[j]));
                }
            }
        }
        for j in 0..np {
            neg_s[i][j] = f.neg(row[j]);
        }
    }
    let cp = charpoly(f, neg_s);
    Some(cp.into_iter().map(|c| f.mul(c, d)).collect())
}

/// det(A + s D) by evaluation at np+1 values of s and interpolation.
pub fn det_perturbed_interp(f: &Field, a: &Mat, perturbed: &[bool]) -> Vec<u64> {
    let np = perturbed.iter().filter(|&&b| b).count();
    let mut xs = Vec::with_capacity(np + 1);
    let mut ys = Vec::with_capacity(np + 1);
    for k in 0..=np as u64 {
        let s = f.to_m(k);
        let mut m = a.clone();
        for (i, row) in m.iter_mut().enumerate() {
            if perturbed[i] {
                row[i] = f.add(row[i], s);
            }
        }
        xs.push(s);
        ys.push(det(f, m));
    }
    interpolate(f, &xs, &ys)
}

/// Newton interpolation; points and values in Montgomery form, output low first.
pub fn interpolate(f: &Field, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(dd[i], dd[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            dd[i] = f.mul(num, f.inv(den));
        }
    }
    // expand the Newton form from the innermost term
    let mut coef = vec![0u64; n];
    for i in (0..n).rev() {
        // coef = coef * (x - xs[i]) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if coef[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = f.add(next[k + 1], coef[k]);
            }
            next[k] = f.sub(next[k], f.mul(coef[k], xs[i]));
        }
        next[0] = f.add(next[0], dd[i]);
        coef = next;
    }
    coef
}

/// Bits needed for the symmetric reconstruction of integers with |v| <= b.
pub fn bits_for_bound(b: &BigInt) -> u64 {
    b.abs().bits() + 2
}
