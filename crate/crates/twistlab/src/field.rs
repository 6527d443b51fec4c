//! Exact ground fields: arbitrary-precision rationals and prime fields F_p.
//!
//! Every computation in this crate is exact; there is no floating point and
//! no tolerance anywhere. A [`Field`] value is carried alongside matrices so
//! that elements (which are plain data, e.g. `u64` residues) always know how
//! to combine, and so that maps over GF(p) and GF(q) with p != q can be
//! rejected at runtime.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// An exact field together with its element representation.
///
/// The field value itself is small and cheap to clone; elements are owned
/// data. `PartialEq` on the field detects mismatches (e.g. GF(2) vs GF(3)).
pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` exactly on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Parse an exact scalar: an optionally signed integer or a fraction "p/q".
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Render a scalar so that `parse(format(x)) == x`.
    fn format(&self, a: &Self::Elem) -> String;

    /// Display name used in error messages and spec files.
    fn name(&self) -> String;

    /// Every element of the field in a fixed order, when the field is
    /// finite; `None` for infinite fields. Exhaustive searches use this.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// The field of rational numbers with arbitrary-precision integer parts.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse {
            location: format!("scalar \"{s}\""),
            message: msg.to_string(),
        };
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = den.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            let n: BigInt = s.parse().map_err(|_| bad("bad integer"))?;
            Ok(BigRational::from_integer(n))
        }
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn name(&self) -> String {
        "rational".to_string()
    }
}

/// The prime field F_p for a prime p <= 2^31, elements as canonical residues.
///
/// The bound keeps products inside `u64` (p^2 < 2^62) so arithmetic never
/// allocates; this is the representation the brute-force searches run on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.p as i64);
        m as u64
    }
}

/// Deterministic trial division; fine for p <= 2^31.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid on (a, p); p prime so gcd = 1.
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse {
            location: format!("scalar \"{s}\""),
            message: msg.to_string(),
        };
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: i64 = den.trim().parse().map_err(|_| bad("bad denominator"))?;
            let dinv = self
                .inv(&self.reduce_i64(d))
                .ok_or_else(|| bad("denominator is zero in this field"))?;
            Ok(self.mul(&self.reduce_i64(n), &dinv))
        } else {
            let n: i64 = s.parse().map_err(|_| bad("bad integer"))?;
            Ok(self.reduce_i64(n))
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn name(&self) -> String {
        format!("gf({})", self.p)
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
}
