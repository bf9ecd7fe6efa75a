//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals, with arbitrary-precision
//! numerators and denominators, and prime fields `GF(p)` for `p < 2^32`.
//! Both implement [`Field`], which also carries the row representation used
//! by the elimination routines in [`crate::linalg`]: fraction-free integer
//! rows over the rationals and lazily reduced `u64` rows over `GF(p)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "rational"),
            FieldDescriptor::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldDescriptor::Rational);
        }
        let p = s
            .strip_prefix("gf:")
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("bad modulus in `{s}`: {e}")))?;
        PrimeField::new(p)?;
        Ok(FieldDescriptor::Prime(p))
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field together with the row arithmetic used for elimination.
///
/// Elements are plain values; every operation goes through the field
/// instance so that prime fields can carry their modulus at runtime.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;
    /// Row representation for elimination. A row stands for its
    /// field-element vector up to a nonzero scalar.
    type Row: Clone + fmt::Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Fails when the denominator vanishes in the field.
    fn from_ratio(&self, v: &BigRational) -> Result<Self::Elem>;
    /// Canonical rational representative (`[0, p)` for prime fields).
    fn to_ratio(&self, a: &Self::Elem) -> BigRational;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn row_from(&self, v: &[Self::Elem]) -> Self::Row;
    fn row_entry(&self, row: &Self::Row, j: usize) -> Self::Elem;
    fn row_leading(&self, row: &Self::Row) -> Option<usize>;
    /// Rescale so that the row has a canonical pivot at column `pivot`.
    fn row_normalize(&self, row: &mut Self::Row, pivot: usize);
    /// Clear every pivot column of `basis` from `row`. `basis` is sorted by
    /// pivot column and each basis row is zero left of its pivot.
    fn row_reduce(&self, row: &mut Self::Row, basis: &[(usize, Self::Row)]);

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_u64(&self, v: u64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Exact string form: an integer or `num/den`.
    fn format(&self, a: &Self::Elem) -> String {
        format_ratio(&self.to_ratio(a))
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        self.from_ratio(&parse_ratio(s)?)
    }

    fn characteristic_error(&self) -> Error {
        Error::Characteristic {
            field: self.descriptor(),
            characteristic: self.characteristic(),
        }
    }
}

pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad coefficient `{s}`: {e}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(
            s.parse::<BigInt>().map_err(|e| bad(&e))?,
        )),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().map_err(|e| bad(&e))?;
            let d = d.trim().parse::<BigInt>().map_err(|e| bad(&e))?;
            if d.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    type Row = Vec<BigInt>;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn from_ratio(&self, v: &BigRational) -> Result<BigRational> {
        Ok(v.clone())
    }

    fn to_ratio(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(self.characteristic_error())
        } else {
            Ok(a.recip())
        }
    }

    fn row_from(&self, v: &[BigRational]) -> Vec<BigInt> {
        let lcm = v
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut row: Vec<BigInt> = v
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        make_primitive(&mut row);
        row
    }

    fn row_entry(&self, row: &Vec<BigInt>, j: usize) -> BigRational {
        BigRational::from_integer(row[j].clone())
    }

    fn row_leading(&self, row: &Vec<BigInt>) -> Option<usize> {
        row.iter().position(|x| !x.is_zero())
    }

    fn row_normalize(&self, row: &mut Vec<BigInt>, pivot: usize) {
        make_primitive(row);
        if row[pivot].is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
    }

    fn row_reduce(&self, row: &mut Vec<BigInt>, basis: &[(usize, Vec<BigInt>)]) {
        for (c, b) in basis {
            let c = *c;
            if row[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(&b[c]);
            let scale_row = &b[c] / &g;
            let scale_basis = &row[c] / &g;
            for x in row[..c].iter_mut().filter(|x| !x.is_zero()) {
                *x *= &scale_row;
            }
            for (x, y) in row[c..].iter_mut().zip(&b[c..]) {
                let mut v = &*x * &scale_row;
                if !y.is_zero() {
                    v -= &scale_basis * y;
                }
                *x = v;
            }
            make_primitive(row);
        }
    }
}

/// Divide a row by the gcd of its entries.
fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut().filter(|x| !x.is_zero()) {
        *x /= &g;
    }
}

/// The prime field `GF(p)`, `p < 2^32`, with elements stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;
    type Row = Vec<u64>;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }

    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        self.reduce_bigint(v)
    }

    fn from_ratio(&self, v: &BigRational) -> Result<u64> {
        let n = self.reduce_bigint(v.numer());
        let d = self.reduce_bigint(v.denom());
        self.div(&n, &d)
    }

    fn to_ratio(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
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

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(self.characteristic_error());
        }
        Ok(self.pow(a, (self.p - 2) as u32))
    }

    fn pow(&self, a: &u64, mut e: u32) -> u64 {
        let mut base = *a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    fn row_from(&self, v: &[u64]) -> Vec<u64> {
        v.to_vec()
    }

    fn row_entry(&self, row: &Vec<u64>, j: usize) -> u64 {
        row[j]
    }

    fn row_leading(&self, row: &Vec<u64>) -> Option<usize> {
        row.iter().position(|&x| x != 0)
    }

    fn row_normalize(&self, row: &mut Vec<u64>, pivot: usize) {
        let inv = self.inv(&row[pivot]).expect("pivot is nonzero");
        if inv != 1 {
            for x in row[pivot..].iter_mut() {
                *x = *x * inv % self.p;
            }
        }
    }

    fn row_reduce(&self, row: &mut Vec<u64>, basis: &[(usize, Vec<u64>)]) {
        // Entries accumulate unreduced; each update adds at most (p-1)^2.
        let p = self.p;
        let step = (p - 1) * (p - 1);
        let limit = if step == 0 {
            usize::MAX
        } else {
            (((u64::MAX - (p - 1)) / step) as usize).max(1)
        };
        let mut pending = 0usize;
        for (c, b) in basis {
            let c = *c;
            let f = row[c] % p;
            if f == 0 {
                row[c] = 0;
                continue;
            }
            let g = p - f;
            for (x, y) in row[c..].iter_mut().zip(&b[c..]) {
                *x += g * y;
            }
            pending += 1;
            if pending >= limit {
                row.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
        }
        row.iter_mut().for_each(|x| *x %= p);
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
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
    'outer: for &a in &BASES {
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
