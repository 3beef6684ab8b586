//! Univariate factorization over `F_p` (squarefree, distinct-degree and
//! equal-degree splitting) and over `Q` (squarefree decomposition, modular
//! factorization, Hensel lifting and factor recombination).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldSpec, Scalar};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Degree cap for factorization over `Q`.
pub const RATIONAL_DEGREE_CAP: usize = 24;

/// `unit * prod(factor^mult)`, factors monic irreducible and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }
}

pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    let Some(deg) = f.degree() else {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    };
    let unit = f.lead().unwrap().clone();
    let monic = f.monic();
    let mut factors = match f.field() {
        FieldSpec::Prime(_) => factor_fp_monic(&monic),
        FieldSpec::Rationals => {
            if deg > RATIONAL_DEGREE_CAP {
                return Err(Error::UnsupportedDegree {
                    degree: deg,
                    cap: RATIONAL_DEGREE_CAP,
                });
            }
            factor_q_monic(&monic)
        }
    };
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// True iff `f` is monic, of degree at least one, and irreducible.
pub fn is_monic_irreducible(f: &Poly) -> Result<bool> {
    if !f.is_monic() || f.degree() == Some(0) {
        return Ok(false);
    }
    let fac = poly_factor(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

fn merge(mut v: Vec<(Poly, usize)>) -> Vec<(Poly, usize)> {
    v.sort();
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (f, m) in v {
        match out.last_mut() {
            Some((g, k)) if *g == f => *k += m,
            _ => out.push((f, m)),
        }
    }
    out
}

// ---------------------------------------------------------------- F_p

fn factor_fp_monic(f: &Poly) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = Vec::new();
    for (sf, mult) in squarefree_fp(f) {
        for (g, d) in distinct_degree(&sf) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    merge(out)
}

fn pth_root(f: &Poly) -> Poly {
    let p = f.field().characteristic() as usize;
    // In F_p every element is its own p-th root.
    let coeffs = f.coeffs().iter().step_by(p).cloned().collect();
    Poly::new(f.field(), coeffs)
}

fn squarefree_fp(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.field().characteristic() as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.div_exact(&y).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_fp(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let p = BigUint::from(field.characteristic());
    let x = Poly::t(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(&p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly(field: FieldSpec, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = field.characteristic();
    let c = (0..below)
        .map(|_| field.from_i64(rng.gen_range(0..p) as i64))
        .collect();
    Poly::new(field, c)
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.characteristic();
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = if p == 2 {
            // Trace map to F_2: a + a^2 + ... + a^(2^(d-1)).
            let mut acc = a.clone();
            let mut sq = a.clone();
            for _ in 1..d {
                sq = sq.mul(&sq).rem(f);
                acc = acc.add(&sq);
            }
            acc
        } else {
            let direct = f.gcd(&a);
            if !direct.is_one() && direct.degree() != f.degree() {
                let rest = f.div_exact(&direct).unwrap();
                let mut v = equal_degree(&direct, d, rng);
                v.extend(equal_degree(&rest, d, rng));
                return v;
            }
            let q = BigUint::from(p).pow(d as u32);
            let e = (q - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&Poly::one(field))
        };
        let u = f.gcd(&g);
        if !u.is_one() && u.degree() != f.degree() {
            let rest = f.div_exact(&u).unwrap();
            let mut v = equal_degree(&u, d, rng);
            v.extend(equal_degree(&rest, d, rng));
            return v;
        }
    }
}

// ---------------------------------------------------------------- Q

fn squarefree_q(f: &Poly) -> Vec<(Poly, usize)> {
    // Yun's algorithm (characteristic zero).
    let mut out = Vec::new();
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_exact(&b).unwrap();
    let mut d = df.div_exact(&b).unwrap().sub(&c.derivative());
    let mut i = 1;
    while !c.is_one() {
        let a = c.gcd(&d);
        if !a.is_one() {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).unwrap();
        d = d.div_exact(&a).unwrap().sub(&c.derivative());
        i += 1;
    }
    out
}

type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Primitive integer polynomial with positive leading coefficient, proportional to `f`.
fn to_primitive_z(f: &Poly) -> ZPoly {
    let qs: Vec<&BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap())
        .collect();
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q.numer() * &l) / q.denom()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: ZPoly = ints.into_iter().map(|c| c / &g).collect();
    if out.last().unwrap().is_negative() {
        out.iter_mut().for_each(|c| *c = -&*c);
    }
    out
}

fn z_to_q(f: &ZPoly) -> Poly {
    let q = FieldSpec::Rationals;
    Poly::new(q, f.iter().map(|c| q.from_bigint(c)).collect())
}

fn z_to_fp(f: &ZPoly, p: u32) -> Poly {
    let field = FieldSpec::Prime(p);
    Poly::new(field, f.iter().map(|c| field.from_bigint(c)).collect())
}

fn fp_to_z(f: &Poly) -> ZPoly {
    f.coeffs()
        .iter()
        .map(|c| BigInt::from(c.residue().unwrap()))
        .collect()
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z))
            .collect(),
    )
}

fn z_add_scaled(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z) * m)
            .collect(),
    )
}

/// Coefficients reduced into the symmetric range `(-m/2, m/2]`.
fn z_symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn z_scale(a: &ZPoly, c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: ZPoly = a.iter().map(|c| c / &g).collect();
    if out.last().is_some_and(Signed::is_negative) {
        out.iter_mut().for_each(|c| *c = -&*c);
    }
    out
}

/// Lifts `f = G0 * H0 (mod p)` to `f = G * H (mod p^k)`, `H` monic.
fn hensel_two(f: &ZPoly, g0: &Poly, h0: &Poly, p: u32, k: u32) -> (ZPoly, ZPoly) {
    let pb = BigInt::from(p);
    let (_, s, t) = g0.ext_gcd(h0);
    debug_assert!(s.mul(g0).add(&t.mul(h0)).is_one());
    let mut g = fp_to_z(g0);
    let mut h = fp_to_z(h0);
    let mut m = pb.clone();
    for _ in 1..k {
        let e: ZPoly = z_sub(f, &z_mul(&g, &h)).iter().map(|c| c / &m).collect();
        let ep = z_to_fp(&e, p);
        let dg = t.mul(&ep).rem(g0);
        let dh = ep
            .sub(&h0.mul(&dg))
            .div_exact(g0)
            .expect("Hensel step is exact");
        g = z_add_scaled(&g, &fp_to_z(&dg), &m);
        h = z_add_scaled(&h, &fp_to_z(&dh), &m);
        m *= &pb;
    }
    (z_symmetric(&g, &m), z_symmetric(&h, &m))
}

/// Monic lifts mod `p^k` of the modular factors of `f` (`lc` = lead of `f`).
fn hensel_multi(f: &ZPoly, factors: &[Poly], p: u32, k: u32) -> Vec<ZPoly> {
    let m = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.modinv(&m).expect("lead coefficient invertible mod p");
        return vec![z_symmetric(&z_scale(f, &inv), &m)];
    }
    let field = FieldSpec::Prime(p);
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc = z_to_fp(&vec![f.last().unwrap().clone()], p);
    let g0 = left.iter().fold(lc, |acc, g| acc.mul(g));
    let h0 = right.iter().fold(Poly::one(field), |acc, g| acc.mul(g));
    let (g, h) = hensel_two(f, &g0, &h0, p, k);
    let mut out = hensel_multi(&g, left, p, k);
    out.extend(hensel_multi(&h, right, p, k));
    out
}

fn small_primes() -> impl Iterator<Item = u32> {
    (3u32..).filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn norm_bound(f: &ZPoly) -> BigInt {
    let sq: BigInt = f.iter().map(|c| c * c).sum();
    sq.sqrt() + 1
}

fn factor_squarefree_z(h: &ZPoly) -> Vec<ZPoly> {
    let n = h.len() - 1;
    if n <= 1 {
        return vec![h.clone()];
    }
    let lc = h.last().unwrap().clone();
    let p = small_primes()
        .find(|&p| {
            if (&lc % BigInt::from(p)).is_zero() {
                return false;
            }
            let hp = z_to_fp(h, p);
            hp.gcd(&hp.derivative()).is_one()
        })
        .expect("some prime keeps a squarefree polynomial squarefree");
    let modular: Vec<Poly> = factor_fp_monic(&z_to_fp(h, p).monic())
        .into_iter()
        .map(|(g, m)| {
            debug_assert_eq!(m, 1);
            g
        })
        .collect();
    if modular.len() == 1 {
        return vec![h.clone()];
    }
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm_bound(h);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lifted = hensel_multi(h, &modular, p, k);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut cur = h.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lcur = cur.last().unwrap().clone();
            let cand = idx.iter().fold(vec![lcur], |acc, &i| {
                z_symmetric(&z_mul(&acc, &remaining[i]), &m)
            });
            let cand = z_primitive(&cand);
            let (q, rem) = z_to_q(&cur).div_rem(&z_to_q(&cand));
            if rem.is_zero() {
                found.push(cand);
                cur = to_primitive_z(&q);
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                }
                continue 'outer;
            }
            // next combination
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if cur.len() > 1 {
        found.push(cur);
    }
    found
}

fn factor_q_monic(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (sf, mult) in squarefree_q(f) {
        for g in factor_squarefree_z(&to_primitive_z(&sf)) {
            out.push((z_to_q(&g).monic(), mult));
        }
    }
    merge(out)
}
