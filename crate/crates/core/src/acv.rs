//! Asymptotic critical values through super polar curves, plus the classical
//! critical values K0.

use crate::elimination::resultant_gcp;
use crate::groebner;
use crate::polyring::{MPoly, UPoly};
use crate::realroots::{isolate_real_roots, sort_dedup, AlgebraicNumber};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_CONFIDENCE: u64 = 100;
pub const RETRY_BUDGET: usize = 5;
const GROEBNER_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuperPolarCombos {
    /// a[k][i] multiplies df/dx_i in g_k
    pub a: Vec<Vec<u64>>,
    /// b[k][i][j] multiplies x_i df/dx_j in g_k
    pub b: Vec<Vec<Vec<u64>>>,
    #[serde(skip)]
    pub polys: Vec<MPoly>,
    pub polys_text: Vec<String>,
    pub seed: u64,
    pub sample_size: u64,
}

/// |S| = 2 c n d^(n-1), saturating.
pub fn sample_set_size(c: u64, n: usize, d: u32) -> u64 {
    let mut s = 2u64.saturating_mul(c).saturating_mul(n as u64);
    for _ in 1..n {
        s = s.saturating_mul(d as u64);
    }
    s.max(1)
}

pub fn super_polar_combos(f: &MPoly, c: u64, seed: u64) -> Result<SuperPolarCombos> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    combos_from(f, c, seed, &mut rng)
}

fn combos_from<R: Rng>(f: &MPoly, c: u64, seed: u64, rng: &mut R) -> Result<SuperPolarCombos> {
    let n = f.nvars();
    if n == 0 || f.is_constant() {
        return Err(Error::InvalidInput("f must be nonconstant".into()));
    }
    let size = sample_set_size(c, n, f.total_degree());
    let grads: Vec<MPoly> = (0..n).map(|i| f.partial_derivative(i)).collect::<Result<_>>()?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut polys = Vec::new();
    for _ in 0..n - 1 {
        let ak: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=size)).collect();
        let bk: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(1..=size)).collect()).collect();
        let mut g = MPoly::zero(n);
        for i in 0..n {
            g = &g + &grads[i].scale(&BigInt::from(ak[i]));
            for j in 0..n {
                let xi = MPoly::var(n, i);
                g = &g + &(&xi * &grads[j]).scale(&BigInt::from(bk[i][j]));
            }
        }
        polys.push(g);
        a.push(ak);
        b.push(bk);
    }
    Ok(SuperPolarCombos {
        a,
        b,
        polys_text: polys.iter().map(|p| p.to_string()).collect(),
        polys,
        seed,
        sample_size: size,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockElimination {
    pub keep: usize,
    /// elimination polynomial in (x_keep, z)
    #[serde(skip)]
    pub hbar: MPoly,
    pub hbar_text: String,
    #[serde(serialize_with = "ser_upoly")]
    pub h: UPoly,
    pub degree_z: usize,
    pub perturbation: String,
    pub s_order: usize,
    pub degree_caps: Vec<u32>,
    pub primes_used: usize,
}

pub(crate) fn ser_upoly<S: serde::Serializer>(u: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(u.coeffs().len()))?;
    for c in u.coeffs() {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

/// Eliminates every variable except x_keep from {g_1, ..., g_(n-1), f - z};
/// h is the square-free part (in z) of the leading coefficient in x_keep.
pub fn eliminate_variable_block<R: Rng>(
    f: &MPoly,
    combos: &SuperPolarCombos,
    keep: usize,
    rng: &mut R,
) -> Result<BlockElimination> {
    let n = f.nvars();
    if keep >= n {
        return Err(Error::IndexOutOfRange(keep));
    }
    // order: x_{-keep}, x_keep, z
    let mut map = vec![0usize; n];
    let mut pos = 0;
    for (j, slot) in map.iter_mut().enumerate() {
        if j != keep {
            *slot = pos;
            pos += 1;
        }
    }
    map[keep] = n - 1;
    let mut polys: Vec<MPoly> = combos.polys.iter().map(|g| g.remap(n + 1, &map)).collect();
    let fz = &f.remap(n + 1, &map) - &MPoly::var(n + 1, n);
    polys.push(fz);
    let res = resultant_gcp(&polys, n - 1, &[None, None], rng)?;
    let hbar = res.resultant.primitive_part();
    if hbar.is_zero() {
        return Err(Error::Degenerate("elimination polynomial vanishes identically".into()));
    }
    let cs = hbar.coeffs_in(0);
    let lc = cs.last().cloned().unwrap_or_else(|| MPoly::zero(2));
    let lcz = lc.restrict_vars(&[1]).to_upoly(0).expect("univariate in z");
    let h = if lcz.degree() == 0 { UPoly::constant(BigInt::one()) } else { lcz.squarefree_part()? };
    Ok(BlockElimination {
        keep,
        hbar_text: hbar.to_string(),
        hbar,
        degree_z: h.degree(),
        h,
        perturbation: res.perturbation,
        s_order: res.s_order,
        degree_caps: res.degree_caps,
        primes_used: res.primes_used,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct K0Report {
    pub values: Vec<AlgebraicNumber>,
    #[serde(serialize_with = "ser_upoly")]
    pub polynomial: UPoly,
    /// the unperturbed resultant vanished identically (solutions at infinity
    /// or a positive-dimensional critical locus)
    pub degenerate_resultant: bool,
    /// false when only the perturbed-determinant superset is available
    pub exact: bool,
    pub no_critical_points: bool,
}

/// Critical values: roots of the elimination of x from {df/dx_1, ..., df/dx_n, f - z}.
pub fn critical_values_k0<R: Rng>(f: &MPoly, rng: &mut R) -> Result<K0Report> {
    if f.is_constant() {
        return Err(Error::InvalidInput("f must be nonconstant".into()));
    }
    let used: Vec<usize> = (0..f.nvars()).filter(|&i| f.depends_on(i)).collect();
    let g = f.restrict_vars(&used);
    let n = g.nvars();
    let grads: Vec<MPoly> = (0..n).map(|i| g.partial_derivative(i)).collect::<Result<_>>()?;
    let none = K0Report {
        values: vec![],
        polynomial: UPoly::constant(BigInt::one()),
        degenerate_resultant: false,
        exact: true,
        no_critical_points: true,
    };
    if grads.iter().any(|p| p.is_constant()) {
        return Ok(none);
    }
    let (mut r, degenerate) = k0_elimination(&g, rng)?;
    let mut exact = !degenerate;
    if degenerate && r.degree() > 0 {
        // the perturbed determinant may pick up values coming from infinity;
        // an exact elimination ideal removes them when it is cheap enough
        let mut polys: Vec<MPoly> = grads.iter().map(|p| p.remap(n + 1, &(0..n).collect::<Vec<_>>())).collect();
        polys.push(&g.remap(n + 1, &(0..n).collect::<Vec<_>>()) - &MPoly::var(n + 1, n));
        if let Some(e) = groebner::eliminate_to_last(&polys, n, GROEBNER_BUDGET) {
            r = e.restrict_vars(&[n]).to_upoly(0).expect("univariate in z");
            exact = true;
        }
    }
    if r.degree() == 0 {
        return Ok(K0Report { degenerate_resultant: degenerate, exact, ..none });
    }
    let sq = r.squarefree_part()?;
    Ok(K0Report {
        values: isolate_real_roots(&sq)?,
        polynomial: sq,
        degenerate_resultant: degenerate,
        exact,
        no_critical_points: false,
    })
}

fn k0_elimination<R: Rng>(g: &MPoly, rng: &mut R) -> Result<(UPoly, bool)> {
    let n = g.nvars();
    let map: Vec<usize> = (0..n).collect();
    let mut polys: Vec<MPoly> = (0..n)
        .map(|i| g.partial_derivative(i).map(|p| p.remap(n + 1, &map)))
        .collect::<Result<_>>()?;
    polys.push(&g.remap(n + 1, &map) - &MPoly::var(n + 1, n));
    let res = resultant_gcp(&polys, n, &[None], rng)?;
    let r = res.resultant.to_upoly(0).expect("univariate in z");
    if r.is_zero() {
        return Err(Error::Degenerate("critical-value elimination vanished".into()));
    }
    Ok((r, res.s_order > 0))
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalValueReport {
    pub nvars: usize,
    pub degree: u32,
    pub seed: u64,
    pub confidence: u64,
    pub attempts: usize,
    pub combos: SuperPolarCombos,
    pub blocks: Vec<BlockElimination>,
    #[serde(serialize_with = "ser_upoly")]
    pub h: UPoly,
    #[serde(serialize_with = "crate::ser_bigint")]
    pub degree_bound: BigInt,
    pub asymptotic: Vec<AlgebraicNumber>,
    pub k0: K0Report,
    /// K0 together with the asymptotic candidates, sorted without repeats
    pub rabier_superset: Vec<AlgebraicNumber>,
    pub failures: Vec<String>,
}

impl CriticalValueReport {
    pub fn factors(&self) -> Vec<&UPoly> {
        self.blocks.iter().map(|b| &b.h).collect()
    }
}

/// Monte Carlo computation of a superset of the asymptotic critical values.
pub fn asymptotic_critical_values(f: &MPoly, c: u64, seed: u64) -> Result<CriticalValueReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.nvars();
    if n == 0 || f.is_constant() {
        return Err(Error::InvalidInput("f must be nonconstant".into()));
    }
    let d = f.total_degree();
    let mut failures = Vec::new();
    for attempt in 1..=RETRY_BUDGET {
        let combos = combos_from(f, c, seed, &mut rng)?;
        let mut blocks = Vec::with_capacity(n);
        let mut failed = false;
        for i in 0..n {
            match eliminate_variable_block(f, &combos, i, &mut rng) {
                Ok(b) => blocks.push(b),
                Err(Error::Degenerate(msg)) => {
                    failures.push(format!("attempt {}: variable {}: {}", attempt, i, msg));
                    failed = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if failed {
            continue;
        }
        let mut prod = UPoly::constant(BigInt::one());
        for b in &blocks {
            prod = prod.mul(&b.h);
        }
        let h = if prod.degree() == 0 { prod } else { prod.squarefree_part()? };
        let asymptotic = if h.degree() == 0 { vec![] } else { isolate_real_roots(&h)? };
        let k0 = critical_values_k0(f, &mut rng)?;
        let mut all = asymptotic.clone();
        all.extend(k0.values.iter().cloned());
        return Ok(CriticalValueReport {
            nvars: n,
            degree: d,
            seed,
            confidence: c,
            attempts: attempt,
            combos,
            blocks,
            h,
            degree_bound: num_traits::pow(BigInt::from(d), n - 1),
            asymptotic,
            k0,
            rabier_superset: sort_dedup(all),
            failures,
        });
    }
    Err(Error::MonteCarlo(format!(
        "super polar elimination degenerate after {} attempts: {}",
        RETRY_BUDGET,
        failures.join("; ")
    )))
}

/// deg_z bound d^(n-1) as an integer.
pub fn degree_bound(n: usize, d: u32) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    num_traits::pow(BigInt::from(d), n - 1)
}
