//! Small Buchberger implementation over Q with an elimination order, used to
//! tighten degenerate eliminations. Gives up (None) past a work budget.

use crate::polyring::MPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

type Exp = Vec<u32>;
type Poly = Vec<(Exp, BigRational)>;

/// Block order: the first `k` variables (grevlex) dominate the rest (grevlex).
#[derive(Clone, Copy)]
struct Order {
    k: usize,
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl Order {
    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        grevlex(&a[..self.k], &b[..self.k]).then_with(|| grevlex(&a[self.k..], &b[self.k..]))
    }
}

fn from_mpoly(p: &MPoly, o: Order) -> Poly {
    let mut v: Poly = p
        .terms()
        .iter()
        .map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone())))
        .collect();
    v.sort_by(|a, b| o.cmp(&b.0, &a.0));
    make_monic(v)
}

fn make_monic(mut p: Poly) -> Poly {
    if let Some((_, lc)) = p.first() {
        let inv = lc.recip();
        for t in p.iter_mut() {
            t.1 = &t.1 * &inv;
        }
    }
    p
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_scaled(p: &Poly, q: &Poly, shift: &[u32], c: &BigRational, o: Order) -> Poly {
    // p - c * x^shift * q, both sorted descending
    let shifted: Vec<(Exp, BigRational)> = q
        .iter()
        .map(|(e, k)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), k * c))
        .collect();
    let mut out = Vec::with_capacity(p.len() + shifted.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() || j < shifted.len() {
        let ord = if i == p.len() {
            Ordering::Less
        } else if j == shifted.len() {
            Ordering::Greater
        } else {
            o.cmp(&p[i].0, &shifted[j].0)
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let v = &p[i].1 - &shifted[j].1;
                if !v.is_zero() {
                    out.push((p[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Limb operations allowed per unit of step budget; stops coefficient blow-up.
const LIMBS_PER_STEP: u64 = 50;
const MAX_COEFF_BITS: u64 = 8_192;

struct Work {
    steps: usize,
    limbs: u64,
}

fn limbs(p: &Poly) -> u64 {
    p.iter().map(|(_, c)| (c.numer().bits() + c.denom().bits()) / 64 + 1).sum()
}

fn reduce(mut p: Poly, basis: &[Poly], o: Order, work: &mut Work, budget: usize) -> Option<Poly> {
    let mut rem: Poly = Vec::new();
    while !p.is_empty() {
        work.steps += 1;
        work.limbs += limbs(&p);
        if p[0].1.numer().bits() + p[0].1.denom().bits() > MAX_COEFF_BITS {
            return None;
        }
        if work.steps > budget || work.limbs > budget as u64 * LIMBS_PER_STEP {
            return None;
        }
        let (lead, c) = p[0].clone();
        match basis.iter().find(|g| divides(&g[0].0, &lead)) {
            Some(g) => {
                let shift: Exp = lead.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
                p = sub_scaled(&p, g, &shift, &c, o);
            }
            None => {
                rem.push((lead, c));
                p.remove(0);
            }
        }
    }
    Some(rem)
}

fn spoly(f: &Poly, g: &Poly, o: Order) -> Poly {
    let l = lcm(&f[0].0, &g[0].0);
    let sf: Exp = l.iter().zip(&f[0].0).map(|(a, b)| a - b).collect();
    let sg: Exp = l.iter().zip(&g[0].0).map(|(a, b)| a - b).collect();
    let a = sub_scaled(&Vec::new(), f, &sf, &-BigRational::one(), o);
    sub_scaled(&a, g, &sg, &BigRational::one(), o)
}

/// Reduced-enough Gröbner basis for the block order with the first `k`
/// variables dominant; None past the budget.
fn buchberger(polys: &[MPoly], o: Order, budget: usize) -> Option<Vec<Poly>> {
    let mut basis: Vec<Poly> = polys.iter().filter(|p| !p.is_zero()).map(|p| from_mpoly(p, o)).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut work = Work { steps: 0, limbs: 0 };
    while let Some((i, j)) = pick(&mut pairs, &basis, o) {
        if basis.len() > 400 {
            return None;
        }
        let (f, g) = (&basis[i], &basis[j]);
        // coprime leading monomials reduce to zero
        if f[0].0.iter().zip(&g[0].0).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let s = spoly(f, g, o);
        let r = reduce(s, &basis, o, &mut work, budget)?;
        if r.is_empty() {
            continue;
        }
        let r = make_monic(r);
        if r[0].0.iter().all(|&e| e == 0) {
            return Some(vec![r]);
        }
        let n = basis.len();
        basis.push(r);
        for i in 0..n {
            pairs.push((i, n));
        }
    }
    Some(basis)
}

fn to_integer_poly(g: &Poly, nv: usize) -> MPoly {
    let den = g.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out = MPoly::zero(nv);
    for (e, c) in g {
        out.add_term(e.clone(), (c * BigRational::from_integer(den.clone())).to_integer());
    }
    let out = out.primitive_part();
    if out.leading_coeff().is_negative() {
        -&out
    } else {
        out
    }
}

/// Generators of <polys> ∩ Q[x_k, ...] (a Gröbner basis of the elimination
/// ideal), or None past the budget. The unit ideal gives [1].
pub fn elimination_ideal(polys: &[MPoly], k: usize, budget: usize) -> Option<Vec<MPoly>> {
    let nv = polys.first()?.nvars();
    let basis = buchberger(polys, Order { k }, budget)?;
    Some(
        basis
            .iter()
            .filter(|g| g.iter().all(|(e, _)| e[..k].iter().all(|&x| x == 0)))
            .map(|g| to_integer_poly(g, nv))
            .collect(),
    )
}

/// Generator of the elimination ideal <polys> ∩ Q[x_k, ...] when that ideal
/// is principal in one remaining variable (the last one). Returns Some(1)
/// when the ideal is the unit ideal and None past the budget.
pub fn eliminate_to_last(polys: &[MPoly], k: usize, budget: usize) -> Option<MPoly> {
    let nv = polys.first()?.nvars();
    let o = Order { k };
    let basis = buchberger(polys, o, budget)?;
    // elements free of the first nv - 1 variables
    let mut best: Option<&Poly> = None;
    for g in &basis {
        if g.iter().all(|(e, _)| e[..nv - 1].iter().all(|&x| x == 0)) {
            if best.map_or(true, |b| o.cmp(&g[0].0, &b[0].0) == Ordering::Less) {
                best = Some(g);
            }
        }
    }
    Some(to_integer_poly(best?, nv))
}

fn pick(pairs: &mut Vec<(usize, usize)>, basis: &[Poly], o: Order) -> Option<(usize, usize)> {
    if pairs.is_empty() {
        return None;
    }
    // normal strategy: smallest lcm first
    let mut best = 0;
    let mut best_l = lcm(&basis[pairs[0].0][0].0, &basis[pairs[0].1][0].0);
    for (idx, &(i, j)) in pairs.iter().enumerate().skip(1) {
        let l = lcm(&basis[i][0].0, &basis[j][0].0);
        if o.cmp(&l, &best_l) == Ordering::Less {
            best = idx;
            best_l = l;
        }
    }
    Some(pairs.swap_remove(best))
}
