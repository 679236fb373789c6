//! Coefficient fields: small prime fields in machine words and exact rationals.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use crate::error::FieldError;

/// Arithmetic over a coefficient field.
///
/// Elements are plain values; the field object carries whatever context the
/// arithmetic needs (the modulus for prime fields).
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Zero for the rationals.
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;
    /// Decimal rendering; rationals as `a/b`.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    /// All `k` distinct k-th roots of unity, or an error when the field does
    /// not contain them.
    fn kth_roots_of_unity(&self, k: u32) -> Result<Vec<Self::Elem>, FieldError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a * b + c`
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(&self.mul(a, b), c)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
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

    /// `true` when the characteristic does not divide `k`.
    fn admits_colors(&self, k: u32) -> bool {
        let c = self.characteristic();
        c == 0 || u64::from(k) % c != 0
    }
}

/// Textual field selector: `gf:p` or `qq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    /// Smallest prime not dividing `k`; the default for pure linear-algebra runs.
    pub fn default_for_solving(k: u32) -> Self {
        FieldSpec::Prime(next_prime_where(2, |p| k % p != 0))
    }

    /// Smallest prime `p` with `p ≡ 1 (mod k)`, so that k-th roots of unity exist.
    pub fn default_for_evaluation(k: u32) -> Self {
        FieldSpec::Prime(next_prime_where(2, |p| p % k == 1 % k && k % p != 0))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => u64::from(*p),
            FieldSpec::Rationals => 0,
        }
    }

    /// Whether the field contains all k-th roots of unity.
    pub fn has_roots_of_unity(&self, k: u32) -> bool {
        match self {
            FieldSpec::Prime(p) => k > 0 && (p - 1) % k == 0,
            FieldSpec::Rationals => k <= 2,
        }
    }

    pub fn admits_colors(&self, k: u32) -> bool {
        match self {
            FieldSpec::Prime(p) => k % p != 0,
            FieldSpec::Rationals => true,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gf:{p}"),
            FieldSpec::Rationals => f.write_str("qq"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("gf:")
            .ok_or_else(|| FieldError::BadSpec(s.to_string()))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| FieldError::BadSpec(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

fn next_prime_where(start: u32, pred: impl Fn(u32) -> bool) -> u32 {
    (start..)
        .find(|&p| is_prime(p) && pred(p))
        .expect("primes are unbounded")
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// GF(p) for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&q| self.pow(&g, u64::from(order / q)) != 1)
            })
            .expect("every prime field has a primitive root")
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) * u64::from(*b)) % u64::from(self.p)) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut r0, mut r1) = (i64::from(self.p), i64::from(*a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.from_i64(t0))
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn mul_add(&self, a: &u32, b: &u32, c: &u32) -> u32 {
        ((u64::from(*a) * u64::from(*b) + u64::from(*c)) % u64::from(self.p)) as u32
    }
    fn characteristic(&self) -> u64 {
        u64::from(self.p)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u32, FieldError> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| FieldError::BadElement(s.to_string()))?;
        Ok(self.from_i64(v))
    }
    fn kth_roots_of_unity(&self, k: u32) -> Result<Vec<u32>, FieldError> {
        if k == 0 || (self.p - 1) % k != 0 {
            return Err(FieldError::NoRootsOfUnity {
                field: self.spec(),
                k,
            });
        }
        let w = self.pow(&self.primitive_root(), u64::from((self.p - 1) / k));
        let mut roots = Vec::with_capacity(k as usize);
        let mut cur = self.one();
        for _ in 0..k {
            roots.push(cur);
            cur = self.mul(&cur, &w);
        }
        Ok(roots)
    }
}

/// The field of rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let bad = || FieldError::BadElement(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }
    fn kth_roots_of_unity(&self, k: u32) -> Result<Vec<BigRational>, FieldError> {
        match k {
            1 => Ok(vec![self.one()]),
            2 => Ok(vec![self.one(), -self.one()]),
            _ => Err(FieldError::NoRootsOfUnity {
                field: FieldSpec::Rationals,
                k,
            }),
        }
    }
}
