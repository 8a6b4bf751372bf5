#![allow(dead_code)]

use gcv::realroots::rat;
use gcv::{parse, MPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use gcv::elimination::resultant_gcp;
use gcv::polyring::{multi_product_bitsize_bound, power_bitsize_bound, product_bitsize_ok};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Test polynomials with n <= 3 variables and degree <= 4.
pub const CORPUS: &[(&str, &str)] = &[
    ("x^3", "x"),
    ("x^3 - 3*x", "x"),
    ("x^4 - x^2 + 2", "x"),
    ("x + x^2*y", "x,y"),
    ("(x*y - 1)^2 + x^2", "x,y"),
    ("x^2 + y^2", "x,y"),
    ("(x - y)^2", "x,y"),
    ("x^2*y^2 + x*y + y^3 - x", "x,y"),
    ("x^3 + y^3 - 3*x*y", "x,y"),
    ("x^2*y + y - 1", "x,y"),
    ("x^4 + y^4 - 4*x*y + 1", "x,y"),
    ("x*y^3 - 2*x^2*y + 3", "x,y"),
    ("x*y*z + x^2 - y", "x,y,z"),
    ("x^2 + y^2 + z^2 - x*y*z", "x,y,z"),
    ("x^2*y + y^2*z + z^2*x + x*y*z - 1", "x,y,z"),
    ("x*y + y*z^3 - x", "x,y,z"),
];

pub fn poly(text: &str, vars: &str) -> MPoly {
    let v: Vec<&str> = vars.split(',').collect();
    parse(text, &v).unwrap()
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Determinant over Q by plain Gaussian elimination.
pub fn det_q(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for k in 0..n {
        let piv = match (k..n).find(|&r| !a[r][k].is_zero()) {
            Some(r) => r,
            None => return BigRational::zero(),
        };
        if piv != k {
            a.swap(piv, k);
            d = -d;
        }
        d *= a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Sylvester determinant in x of two polynomials in (x, y) at y = y0.
pub fn sylvester_at(f: &MPoly, g: &MPoly, y0: i64) -> BigRational {
    let coeffs = |h: &MPoly| -> Vec<BigRational> {
        let dx = h.degree_in(0) as usize;
        let mut c = vec![q(0); dx + 1];
        for (e, k) in h.terms() {
            c[e[0] as usize] += q(y0).pow(e[1] as i32) * BigRational::from_integer(k.clone());
        }
        c.reverse();
        c
    };
    let (a, b) = (coeffs(f), coeffs(g));
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut s = vec![vec![q(0); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    det_q(s)
}

pub fn random_biv(rng: &mut ChaCha8Rng) -> MPoly {
    let dx = rng.gen_range(1..=3u32);
    let mut f = MPoly::zero(2);
    for i in 0..=dx {
        for j in 0..=(3 - i.min(3)) {
            if rng.gen_bool(0.6) {
                f.add_term(vec![i, j], BigInt::from(rng.gen_range(-9i64..=9)));
            }
        }
    }
    f.add_term(vec![dx, 0], BigInt::from(rng.gen_range(1i64..=5)));
    f
}

pub fn random_poly(rng: &mut ChaCha8Rng, nu: usize, delta: u32, tau: u32) -> MPoly {
    let mut f = MPoly::zero(nu);
    let nterms = rng.gen_range(1..=12);
    let maxc: i64 = (1i64 << tau) - 1;
    for _ in 0..nterms {
        let mut e = vec![0u32; nu];
        let mut left = rng.gen_range(0..=delta);
        for v in 0..nu {
            let k = rng.gen_range(0..=left);
            e[v] = k;
            left -= k;
        }
        let c = rng.gen_range(-maxc..=maxc);
        f.add_term(e, BigInt::from(c));
    }
    // force the full degree and the full bitsize
    let mut e = vec![0u32; nu];
    e[0] = delta;
    f.add_term(e, BigInt::from(maxc));
    f
}

/// Solves g1 = 0 with y = (1 + 2x)/3 by the rational root theorem and
/// evaluates F at the solutions.
pub fn bottom_by_substitution() -> Vec<BigRational> {
    // 9 g1(x, (1+2x)/3) = -4x^2 + 17x - 13
    let q = |x: &BigRational| -> BigRational {
        let y = (BigRational::from_integer(1.into()) + x * BigRational::from_integer(2.into()))
            / BigRational::from_integer(3.into());
        BigRational::from_integer((-2).into()) + x + &y * BigRational::from_integer(2.into()) - &y * &y
    };
    let mut roots = Vec::new();
    for num in -13i64..=13 {
        for den in [1i64, 2, 4] {
            let x = rat(num, den);
            if q(&x).is_zero() && !roots.contains(&x) && !x.is_zero() {
                let y = (rat(1, 1) + &x * rat(2, 1)) / rat(3, 1);
                assert!(!y.is_zero());
                roots.push(x);
            }
        }
    }
    let mut vals: Vec<BigRational> = roots.iter().map(|x| rat(1, 1) + x + x * x).collect();
    vals.sort();
    vals
}

/// Compares resultant_gcp with the Sylvester determinant at 25 integer points
/// on random bivariate pairs of degree <= 3. Returns (compared, mismatches).
pub fn gcp_sylvester_mismatches(seed: u64, count: usize) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut compared = 0;
    let mut mismatches = 0;
    while compared < count {
        let f = random_biv(&mut rng);
        let g = random_biv(&mut rng);
        if f.degree_in(0) == 0 || g.degree_in(0) == 0 {
            continue;
        }
        let pts: Vec<i64> = (-12..=12).collect();
        let syl: Vec<BigRational> = pts.iter().map(|&y| sylvester_at(&f, &g, y)).collect();
        if syl.iter().all(|v| v.is_zero()) {
            // common factor: no classical resultant to compare against
            continue;
        }
        let r = resultant_gcp(&[f.clone(), g.clone()], 1, &[None], &mut rng).unwrap();
        let vals: Vec<BigRational> = pts.iter().map(|&y| r.resultant.eval_rational(&[q(y)])).collect();
        let same = vals == syl;
        let neg = vals.iter().zip(&syl).all(|(a, b)| a == &-b.clone());
        if !(same || neg) {
            mismatches += 1;
        }
        compared += 1;
    }
    (compared, mismatches)
}

/// Random products and powers (nu <= 4, delta <= 6, tau <= 16) checked
/// against the bitsize formulas. Returns (checked, violations).
pub fn bitsize_violations(seed: u64, count: usize) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for i in 0..count {
        let nu = rng.gen_range(1..=4usize);
        let delta = rng.gen_range(1..=6u32);
        let t1 = rng.gen_range(1..=16u32);
        let t2 = rng.gen_range(1..=16u32);
        let f1 = random_poly(&mut rng, nu, delta, t1);
        let f2 = random_poly(&mut rng, nu, delta, t2);
        let prod = &f1 * &f2;
        let d = f1.total_degree().max(f2.total_degree()) as u64;
        if !product_bitsize_ok(prod.bitsize(), f1.bitsize(), f2.bitsize(), nu as u64, d) {
            violations.push(format!("#{} product", i));
        }
        let m = rng.gen_range(2..=4usize);
        let fs: Vec<MPoly> = (0..m)
            .map(|_| {
                let (dg, tb) = (rng.gen_range(1..=6), rng.gen_range(1..=16));
                random_poly(&mut rng, nu, dg, tb)
            })
            .collect();
        let mut acc = MPoly::one(nu);
        for f in &fs {
            acc = &acc * f;
        }
        let taus: Vec<u64> = fs.iter().map(|f| f.bitsize()).collect();
        let degs: Vec<u64> = fs.iter().map(|f| f.total_degree() as u64).collect();
        if acc.bitsize() as f64 > multi_product_bitsize_bound(&taus, &degs, nu as u64) {
            violations.push(format!("#{} multi-product", i));
        }
        let k = rng.gen_range(2..=4u32);
        let pw = f1.pow(k);
        if pw.bitsize() as f64 > power_bitsize_bound(f1.bitsize(), f1.total_degree() as u64, nu as u64, k as u64) {
            violations.push(format!("#{} power", i));
        }
    }
    (count, violations)
}
