//! Exact scalar fields.
//!
//! Every exact computation in the crate is generic over [`Field`]. Two
//! families implement it: arbitrary-precision rationals ([`Rational`]) and
//! prime fields [`Fp<P>`] with the modulus fixed at the type level. The
//! runtime-tagged [`Scalar`] is what the JSON boundary traffics in; it is
//! converted into a concrete field type before any kernel code runs.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Which field a space or literal lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Validating constructor for a prime field.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, FieldSpec::Rational)
    }

    pub fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MixedFields {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field usable by the linear-algebra kernel.
///
/// Equality must be structural equality of canonical forms: rationals are
/// kept in lowest terms and residues reduced, so `==` decides field equality.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn spec() -> FieldSpec;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    fn to_scalar(&self) -> Scalar;

    fn from_scalar(s: &Scalar) -> Result<Self>;

    /// Appends an injective canonical byte encoding of the value.
    fn write_key(&self, out: &mut Vec<u8>);

    /// Real value, when the field embeds in the reals.
    fn to_real(&self) -> Option<f64> {
        None
    }

    /// `num / den` computed in the field; `None` when `den` vanishes.
    fn from_ratio(num: i64, den: i64) -> Option<Self> {
        Self::from_i64(den).inv().map(|d| Self::from_i64(num) * d)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        Self::from_scalar(&Scalar::parse(Self::spec(), s)?)
    }
}

// ---------------------------------------------------------------------------
// rationals

impl Field for BigRational {
    fn spec() -> FieldSpec {
        FieldSpec::Rational
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }

    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Rational(q) => Ok(q.clone()),
            other => Err(Error::MixedFields {
                left: "Q".into(),
                right: other.field().to_string(),
            }),
        }
    }

    fn write_key(&self, out: &mut Vec<u8>) {
        write_bigint(self.numer(), out);
        write_bigint(self.denom(), out);
    }

    fn to_real(&self) -> Option<f64> {
        self.to_f64()
    }
}

fn write_bigint(n: &BigInt, out: &mut Vec<u8>) {
    let bytes = n.to_signed_bytes_le();
    out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    out.extend_from_slice(&bytes);
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

// ---------------------------------------------------------------------------
// prime fields

/// Residue class modulo the prime `P`, always stored reduced in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const MODULUS_IS_PRIME: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::MODULUS_IS_PRIME;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub const fn modulus() -> u64 {
        P
    }

    pub fn pow(self, e: u64) -> Self {
        Fp(pow_mod(self.0, e, P))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(mul_mod(self.0, rhs.0, P))
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn spec() -> FieldSpec {
        FieldSpec::Prime(P)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat: a^(p-2) = a^-1
            Some(Fp(pow_mod(self.0, P - 2, P)))
        }
    }

    fn from_i64(n: i64) -> Self {
        let r = (n as i128).rem_euclid(P as i128);
        Fp::new(r as u64)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Prime {
            residue: self.0,
            modulus: P,
        }
    }

    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Prime { residue, modulus } if *modulus == P => Ok(Fp::new(*residue)),
            other => Err(Error::MixedFields {
                left: Self::spec().to_string(),
                right: other.field().to_string(),
            }),
        }
    }

    fn write_key(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.0.to_le_bytes());
    }
}

const fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

const fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub const fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let mut i = 0;
    while i < WITNESSES.len() {
        let w = WITNESSES[i];
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
        i += 1;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mut i = 0;
    'witness: while i < WITNESSES.len() {
        let mut x = pow_mod(WITNESSES[i], d, n);
        i += 1;
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut r = 1;
        while r < s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
            r += 1;
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// runtime-tagged scalars

/// A field element whose field is only known at runtime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    /// Parses a literal such as `"-3/4"` or `"5"` into the given field.
    /// Prime-field literals may themselves be fractions; they are reduced.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        match field {
            FieldSpec::Rational => Ok(Scalar::Rational(q)),
            FieldSpec::Prime(p) => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                let n = reduce_bigint(q.numer(), p);
                let d = reduce_bigint(q.denom(), p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Prime {
                    residue: mul_mod(n, pow_mod(d, p - 2, p), p),
                    modulus: p,
                })
            }
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Prime {
                residue: 0,
                modulus: p,
            },
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = n % &m;
    if r.sign() == Sign::Minus {
        r += &m;
    }
    r.abs().to_u64().expect("residue fits in u64")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

/// Exact arithmetic on runtime-tagged scalars.
pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    a.field().ensure_same(&b.field())?;
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => {
                if y.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                x / y
            }
        })),
        (
            Scalar::Prime {
                residue: x,
                modulus: p,
            },
            Scalar::Prime { residue: y, .. },
        ) => {
            let p = *p;
            let r = match op {
                ArithOp::Add => ((*x as u128 + *y as u128) % p as u128) as u64,
                ArithOp::Sub => ((*x as u128 + p as u128 - *y as u128) % p as u128) as u64,
                ArithOp::Mul => mul_mod(*x, *y, p),
                ArithOp::Div => {
                    if *y == 0 {
                        return Err(Error::DivisionByZero);
                    }
                    mul_mod(*x, pow_mod(*y, p - 2, p), p)
                }
            };
            Ok(Scalar::Prime {
                residue: r,
                modulus: p,
            })
        }
        _ => unreachable!("field tags checked above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    fn q(s: &str) -> Scalar {
        Scalar::parse(FieldSpec::Rational, s).unwrap()
    }

    #[test]
    fn rational_sum_is_reduced() {
        let r = field_arith(&q("1/2"), &q("1/3"), ArithOp::Add).unwrap();
        assert_eq!(r, q("5/6"));
        assert_eq!(q("4/-6"), q("-2/3"));
    }

    #[test]
    fn inverse_of_three_mod_seven() {
        // brute-force scan for k with 3k = 1 (mod 7)
        let k = (1..7u64).find(|k| (3 * k) % 7 == 1).unwrap();
        assert_eq!(k, 5);
        assert_eq!(F7::new(3).inv().unwrap(), F7::new(k));
        let g = |v| Scalar::Prime {
            residue: v,
            modulus: 7,
        };
        assert_eq!(field_arith(&g(1), &g(3), ArithOp::Div).unwrap(), g(5));
    }

    #[test]
    fn inverse_times_self_is_one() {
        for v in 1..7 {
            let a = F7::new(v);
            assert_eq!(a * a.inv().unwrap(), F7::one());
        }
        for s in ["3/4", "-7", "11/13"] {
            let a = Rational::parse_literal(s).unwrap();
            assert_eq!(a.clone() * a.inv().unwrap(), Rational::one());
        }
    }

    #[test]
    fn mixed_fields_and_zero_division_are_errors() {
        let g = Scalar::Prime {
            residue: 1,
            modulus: 7,
        };
        assert!(matches!(
            field_arith(&q("1"), &g, ArithOp::Add),
            Err(Error::MixedFields { .. })
        ));
        assert_eq!(
            field_arith(&q("1"), &q("0"), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            Scalar::parse(FieldSpec::Rational, "1/0"),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn prime_literals_reduce() {
        assert_eq!(
            Scalar::parse(FieldSpec::Prime(7), "-1/2").unwrap(),
            Scalar::Prime {
                residue: 3,
                modulus: 7
            }
        );
        assert_eq!(F7::from_i64(-1), F7::new(6));
        assert_eq!(F7::from_ratio(1, 7), None);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("GF(7)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("GF(8)".parse::<FieldSpec>(), Err(Error::NotPrime(8)));
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| {
            n >= 2
                && (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn large_prime_field_arithmetic() {
        type Big = Fp<18_446_744_073_709_551_557>;
        let a = Big::from_i64(-2);
        assert_eq!(a * a.inv().unwrap(), Big::one());
        assert_eq!(a + Big::new(2), Big::zero());
    }
}
