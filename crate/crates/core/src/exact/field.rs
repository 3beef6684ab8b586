use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The base field: a prime field `F_p` or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::Domain(format!("prime {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    /// Parses `"Q"`, `"F5"` or a bare prime such as `"5"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s.strip_prefix('F').unwrap_or(s);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Domain(format!("unrecognized field {s:?}")))?;
        Self::prime(p)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp { v: 0, p: *p },
            FieldSpec::Rationals => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(*p as i64) as u32,
                p: *p,
            },
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(n.into())),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let r = n.mod_floor_pos(*p);
                Scalar::Fp { v: r, p: *p }
            }
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
        }
    }

    /// Parses a scalar literal: a decimal integer, or `a/b` over Q.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("bad scalar {s:?}"),
        };
        match self {
            FieldSpec::Prime(_) => {
                if let Some((a, b)) = s.split_once('/') {
                    let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                    let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                    let b = self.from_bigint(&b);
                    let inv = b
                        .inv()
                        .ok_or_else(|| Error::Domain("division by zero".into()))?;
                    Ok(&self.from_bigint(&a) * &inv)
                } else {
                    let a: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(self.from_bigint(&a))
                }
            }
            FieldSpec::Rationals => {
                let (a, b) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (s, "1"),
                };
                let a: BigInt = a.parse().map_err(|_| bad())?;
                let b: BigInt = b.parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(Error::Domain("division by zero".into()));
                }
                Ok(Scalar::Q(BigRational::new(a, b)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

trait ModFloorPos {
    fn mod_floor_pos(&self, p: u32) -> u32;
}

impl ModFloorPos for BigInt {
    fn mod_floor_pos(&self, p: u32) -> u32 {
        let m = BigInt::from(p);
        let mut r = self % &m;
        if r.is_negative() {
            r += &m;
        }
        u32::try_from(r).expect("residue fits in u32")
    }
}

/// A field element in canonical form.
#[derive(Debug, Clone)]
pub enum Scalar {
    Fp { v: u32, p: u32 },
    Q(BigRational),
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p as u64 - 2, p)
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
            Scalar::Q(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: inv_mod(*v, *p),
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(q.recip()),
        })
    }

    pub fn pow(&self, e: u64) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v, e, *p),
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(num_traits::pow(q.clone(), e as usize)),
        }
    }

    /// Residue value for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Fp { v: a, p: p1 }, Scalar::Fp { v: b, p: p2 }) => p1 == p2 && a == b,
            (Scalar::Q(a), Scalar::Q(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Fp { v, p } => {
                p.hash(state);
                v.hash(state);
            }
            Scalar::Q(q) => q.hash(state),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Fp { v: a, p: p1 }, Scalar::Fp { v: b, p: p2 }) => (p1, a).cmp(&(p2, b)),
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp { .. }, Scalar::Q(_)) => Ordering::Less,
            (Scalar::Q(_), Scalar::Fp { .. }) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

macro_rules! field_mismatch {
    ($a:expr, $b:expr) => {
        panic!("scalar field mismatch: {} vs {}", $a.field(), $b.field())
    };
}

impl<'a> Add for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                let s = *a as u64 + *b as u64;
                Scalar::Fp {
                    v: (s % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => field_mismatch!(self, rhs),
        }
    }
}

impl<'a> Sub for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => field_mismatch!(self, rhs),
        }
    }
}

impl<'a> Mul for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: mul_mod(*a, *b, *p),
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => field_mismatch!(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(-q),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
