use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Primes with a compiled `Fp` instantiation, usable from runtime field specs.
pub const SUPPORTED_PRIMES: &[u32] = &[5, 7, 11, 13, 101, 1009, 32003, 65521, 1000003];

pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not a prime > 3")));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::Field(format!(
                "prime {p} has no compiled field; supported: {SUPPORTED_PRIMES:?}"
            )));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "rationals" => return Ok(FieldSpec::Rationals),
            _ => {}
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let p: u32 = inner
            .parse()
            .map_err(|_| Error::Field(format!("unrecognized field '{s}'")))?;
        FieldSpec::prime(p)
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p as u64 {
        if p as u64 % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Exact scalar field. `eliminate` is the row-reduction hook; rationals
/// override it with an integer-preserving variant.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn spec() -> FieldSpec;

    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn parse_scalar(s: &str) -> Result<Self>;

    /// Uniform element of the field; for Q, a uniform integer in [-bound, bound].
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self;

    fn checked_div(&self, other: &Self) -> Result<Self> {
        other
            .inv()
            .map(|i| self.clone() * i)
            .ok_or(Error::DivisionByZero)
    }

    /// dst -= c * src
    fn sub_mul_slice(dst: &mut [Self], c: &Self, src: &[Self]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = d.clone() - c.clone() * s.clone();
            }
        }
    }

    fn scale_slice(v: &mut [Self], c: &Self) {
        for x in v.iter_mut() {
            *x = x.clone() * c.clone();
        }
    }

    /// Row-reduce in place, returning pivot columns. With `reduced` the
    /// result is the reduced echelon form with unit pivots.
    fn eliminate(m: &mut Matrix<Self>, reduced: bool) -> Vec<usize> {
        linalg::gauss_jordan(m, reduced)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp((v % P as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Symmetric representative in (-P/2, P/2].
impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 as u64 + o.0 as u64;
        Fp((s % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let s = self.0 as u64 + P as u64 - o.0 as u64;
        Fp((s % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp((self.0 as u64 * o.0 as u64 % P as u64) as u32)
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        match o.inv() {
            Some(i) => self * i,
            None => panic!("division by zero in GF({P})"),
        }
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn spec() -> FieldSpec {
        FieldSpec::PrimeField(P)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let t = s.trim();
        let parse_int = |x: &str| -> Result<Self> {
            let b: BigInt = x
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer '{x}'")))?;
            let r = ((b % P) + P) % P;
            Ok(Fp(r.try_into().expect("reduced value fits")))
        };
        match t.split_once('/') {
            Some((n, d)) => parse_int(n)?.checked_div(&parse_int(d)?),
            None => parse_int(t),
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, _bound: u32) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn sub_mul_slice(dst: &mut [Self], c: &Self, src: &[Self]) {
        if c.0 == 0 {
            return;
        }
        let p = P as u64;
        let nc = (p - c.0 as u64) % p;
        for (d, s) in dst.iter_mut().zip(src) {
            if s.0 != 0 {
                d.0 = ((d.0 as u64 + nc * s.0 as u64) % p) as u32;
            }
        }
    }
}

impl Field for BigRational {
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let t = s.trim();
        let int = |x: &str| -> Result<BigInt> {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer '{x}'")))
        };
        match t.split_once('/') {
            Some((n, d)) => {
                let d = int(d)?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(BigRational::new(int(n)?, d))
            }
            None => Ok(BigRational::from_integer(int(t)?)),
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        let b = bound as i64;
        Self::from_i64(rng.gen_range(-b..=b))
    }

    fn eliminate(m: &mut Matrix<Self>, reduced: bool) -> Vec<usize> {
        linalg::fraction_free(m, reduced)
    }
}

/// Run `$body` with `$F` bound to the concrete field type named by `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $F:ident => $body:expr) => {
        match $spec {
            $crate::FieldSpec::Rationals => {
                type $F = $crate::Rational;
                $body
            }
            $crate::FieldSpec::PrimeField(5) => {
                type $F = $crate::Fp<5>;
                $body
            }
            $crate::FieldSpec::PrimeField(7) => {
                type $F = $crate::Fp<7>;
                $body
            }
            $crate::FieldSpec::PrimeField(11) => {
                type $F = $crate::Fp<11>;
                $body
            }
            $crate::FieldSpec::PrimeField(13) => {
                type $F = $crate::Fp<13>;
                $body
            }
            $crate::FieldSpec::PrimeField(101) => {
                type $F = $crate::Fp<101>;
                $body
            }
            $crate::FieldSpec::PrimeField(1009) => {
                type $F = $crate::Fp<1009>;
                $body
            }
            $crate::FieldSpec::PrimeField(32003) => {
                type $F = $crate::Fp<32003>;
                $body
            }
            $crate::FieldSpec::PrimeField(65521) => {
                type $F = $crate::Fp<65521>;
                $body
            }
            $crate::FieldSpec::PrimeField(1000003) => {
                type $F = $crate::Fp<1000003>;
                $body
            }
            $crate::FieldSpec::PrimeField(p) => unreachable!("unsupported prime {}", p),
        }
    };
}
