//! Exact coefficient arithmetic: prime fields F_p and arbitrary-precision rationals.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Default prime for generic-coefficient computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// Runtime description of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FieldSpec {
    /// The prime field F_p.
    Prime(u64),
    /// Exact rational numbers.
    Rationals,
}

/// An element of the field selected by a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Fp(u64),
    Rat(BigRational),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Checks that a `Prime(p)` spec really names a prime.
    pub fn validated(self) -> Result<Self> {
        match self {
            FieldSpec::Prime(p) if !is_prime(p) => {
                Err(Error::input(format!("field characteristic {p} is not prime")))
            }
            FieldSpec::Prime(p) if p > (1 << 31) => Err(Error::input(format!(
                "prime {p} too large; primes up to 2^31 are supported"
            ))),
            other => Ok(other),
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Prime(_) => Coeff::Fp(0),
            FieldSpec::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Prime(_) => Coeff::Fp(1),
            FieldSpec::Rationals => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            FieldSpec::Prime(p) => Coeff::Fp((v.rem_euclid(*p as i64)) as u64),
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp((x + y) % p),
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Prime(p), Coeff::Fp(x)) => Coeff::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        match (self, a) {
            (FieldSpec::Prime(p), Coeff::Fp(x)) => {
                if *x == 0 {
                    None
                } else {
                    // Fermat: x^(p-2) mod p.
                    let mut base = *x as u128;
                    let mut exp = p - 2;
                    let m = *p as u128;
                    let mut acc: u128 = 1;
                    while exp > 0 {
                        if exp & 1 == 1 {
                            acc = acc * base % m;
                        }
                        base = base * base % m;
                        exp >>= 1;
                    }
                    Some(Coeff::Fp(acc as u64))
                }
            }
            (FieldSpec::Rationals, Coeff::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Coeff::Rat(x.recip()))
                }
            }
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    /// Uniformly random nonzero element (small nonzero integers for the rationals).
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Coeff {
        match self {
            FieldSpec::Prime(p) => Coeff::Fp(rng.gen_range(1..*p)),
            FieldSpec::Rationals => {
                let mut v: i64 = 0;
                while v == 0 {
                    v = rng.gen_range(-1000..=1000);
                }
                Coeff::Rat(BigRational::from_integer(BigInt::from(v)))
            }
        }
    }

    /// Parses a decimal integer or `a/b` rational literal into this field.
    pub fn parse(&self, s: &str) -> Result<Coeff> {
        let s = s.trim();
        match self {
            FieldSpec::Prime(p) => {
                let v = i128::from_str(s)
                    .map_err(|_| Error::input(format!("bad coefficient literal {s:?} for F_{p}")))?;
                Ok(Coeff::Fp(v.rem_euclid(*p as i128) as u64))
            }
            FieldSpec::Rationals => {
                let r = BigRational::from_str(s)
                    .map_err(|_| Error::input(format!("bad rational literal {s:?}")))?;
                Ok(Coeff::Rat(r))
            }
        }
    }
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Fp(x) => *x == 0,
            Coeff::Rat(x) => x.is_zero(),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Fp(x) => write!(f, "{x}"),
            Coeff::Rat(x) => write!(f, "{x}"),
        }
    }
}
