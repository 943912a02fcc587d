//! Scalar arithmetic: residues modulo a prime and unbounded integers.
//!
//! The [`Ring`] trait lets the condition-row builders run unchanged over
//! GF(p) (the default path) and over the integers (the exact oracle path).

use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;

/// Modulus used when none is given.
pub const DEFAULT_MODULUS: u64 = 1_000_003;

/// An odd prime `p`, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p > 2 && is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotAnOddPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    pub fn reduce_i64(self, v: i64) -> u64 {
        let p = self.0 as i128;
        (((v as i128) % p + p) % p) as u64
    }

    pub fn reduce_bigint(self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        let r = ((v % &p) + &p) % &p;
        // r < p < 2^64
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            (a as u128 + self.0 as u128 - b as u128) as u64
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        let a = a % self.0;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.0 - 2))
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Default for PrimeModulus {
    fn default() -> Self {
        PrimeModulus(DEFAULT_MODULUS)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Commutative ring used to assemble condition rows.
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Embeds a residue representative in `[0, p)`.
    fn lift(&self, v: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn pow(&self, base: &Self::Elem, exp: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, base);
        }
        acc
    }
}

impl Ring for PrimeModulus {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn lift(&self, v: u64) -> u64 {
        self.reduce(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        PrimeModulus::add(*self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        PrimeModulus::mul(*self, *a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn pow(&self, base: &u64, exp: u32) -> u64 {
        PrimeModulus::pow(*self, *base, exp as u64)
    }
}

/// The integers, with residues lifted to their representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn lift(&self, v: u64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// A single exact scalar in one of the two arithmetic modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Residue { value: u64, modulus: PrimeModulus },
    Integer(BigInt),
}

impl Scalar {
    pub fn residue(value: u64, modulus: PrimeModulus) -> Self {
        Scalar::Residue {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Scalar::Integer(v.into())
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Residue { modulus, .. } => Mode::Residue(*modulus),
            Scalar::Integer(_) => Mode::Integer,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Residue { value, .. } => *value == 0,
            Scalar::Integer(v) => v.is_zero(),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.combine(other, PrimeModulus::add, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.combine(other, PrimeModulus::sub, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.combine(other, PrimeModulus::mul, |a, b| a * b)
    }

    fn combine(
        &self,
        other: &Scalar,
        residue_op: fn(PrimeModulus, u64, u64) -> u64,
        integer_op: fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<Scalar, Error> {
        match (self, other) {
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Residue {
                    value: residue_op(*p, *a, *b),
                    modulus: *p,
                })
            }
            (Scalar::Integer(a), Scalar::Integer(b)) => Ok(Scalar::Integer(integer_op(a, b))),
            _ => Err(Error::MixedModes),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue { value, .. } => write!(f, "{}", value),
            Scalar::Integer(v) => write!(f, "{}", v),
        }
    }
}

/// Arithmetic mode shared by every entry of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Residue(PrimeModulus),
    Integer,
}
