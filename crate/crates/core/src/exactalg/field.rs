//! Coefficient fields: exact rationals and prime fields with modulus below 2^31.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ExactAlgError;

/// Default prime used for fast runs.
pub const DEFAULT_PRIME: u64 = 65521;
/// Larger prime for runs that want extra confidence against unlucky reductions.
pub const PARANOID_PRIME: u64 = 1_073_741_789;

/// Arithmetic over one concrete coefficient field.
///
/// Linear algebra in this crate is generic over this trait; the runtime
/// choice of field is made once through [`FieldSpec`] and [`with_field!`].
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero; callers only invert pivots.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, ExactAlgError>;
    /// A rational representative; for prime fields the symmetric residue in (-p/2, p/2].
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;

    /// `a - f * b`, the elimination kernel.
    #[inline]
    fn sub_mul(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(f, b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The rationals, with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
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
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, ExactAlgError> {
        Ok(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
}

/// The prime field `Z/pZ` for a prime `p < 2^31`, elements stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ExactAlgError> {
        Modulus::new(p).map(Self::from_modulus)
    }

    pub fn from_modulus(m: Modulus) -> Self {
        PrimeField { p: m.0 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, ExactAlgError> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return Err(ExactAlgError::BadReduction {
                modulus: self.p,
                value: q.to_string(),
            });
        }
        let num = self.reduce_bigint(q.numer());
        Ok(num * self.inv(&den) % self.p)
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        let v = if *a > self.p / 2 {
            *a as i64 - self.p as i64
        } else {
            *a as i64
        };
        BigRational::from_integer(BigInt::from(v))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(Modulus(self.p))
    }
    #[inline]
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        // a + (p - f*b mod p), all below 2^62
        (a + self.p - f * b % self.p) % self.p
    }
}

/// A validated prime modulus below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, ExactAlgError> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(ExactAlgError::InvalidModulus(p));
        }
        Ok(Modulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Modulus {
    type Error = ExactAlgError;
    fn try_from(p: u64) -> Result<Self, Self::Error> {
        Modulus::new(p)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Runtime field selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime(Modulus),
}

impl FieldSpec {
    pub fn default_prime() -> Self {
        FieldSpec::Prime(Modulus(DEFAULT_PRIME))
    }

    pub fn paranoid_prime() -> Self {
        FieldSpec::Prime(Modulus(PARANOID_PRIME))
    }

    pub fn prime(p: u64) -> Result<Self, ExactAlgError> {
        Modulus::new(p).map(FieldSpec::Prime)
    }

    /// The three fields every field-robustness check runs over.
    pub fn all_defaults() -> [FieldSpec; 3] {
        [
            FieldSpec::Rational,
            FieldSpec::default_prime(),
            FieldSpec::paranoid_prime(),
        ]
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(m) => m.0,
        }
    }

    /// Fails when a positive characteristic does not exceed `max_degree`.
    pub fn check_characteristic(&self, max_degree: usize) -> Result<(), ExactAlgError> {
        let c = self.characteristic();
        if c != 0 && c <= max_degree as u64 {
            return Err(ExactAlgError::CharacteristicTooSmall {
                characteristic: c,
                degree: max_degree,
            });
        }
        Ok(())
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::default_prime()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(m) => write!(f, "prime:{}", m.0),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ExactAlgError;

    /// Accepts `rational` (or `q`), `prime` (the default prime),
    /// `paranoid`, `prime:<p>`, or a bare prime `<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "rational" | "rationals" | "q" | "qq" => Ok(FieldSpec::Rational),
            "prime" => Ok(FieldSpec::default_prime()),
            "paranoid" => Ok(FieldSpec::paranoid_prime()),
            _ => {
                let digits = s.strip_prefix("prime:").unwrap_or(&s);
                let p: u64 = digits.parse().map_err(|_| ExactAlgError::InvalidFieldSpec(s.clone()))?;
                FieldSpec::prime(p)
            }
        }
    }
}

/// Run `$body` with `$f` bound to the concrete field named by `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            $crate::exactalg::FieldSpec::Rational => {
                let $f = $crate::exactalg::RationalField;
                $body
            }
            $crate::exactalg::FieldSpec::Prime(m) => {
                let $f = $crate::exactalg::PrimeField::from_modulus(m);
                $body
            }
        }
    };
}

/// A single field value tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn rational(num: i64, den: i64) -> Self {
        FieldElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(v: i64) -> Self {
        FieldElement::rational(v, 1)
    }

    pub fn modular(value: i64, modulus: u64) -> Result<Self, ExactAlgError> {
        let m = Modulus::new(modulus)?;
        Ok(FieldElement::Modular {
            value: value.rem_euclid(m.0 as i64) as u64,
            modulus: m.0,
        })
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rational,
            FieldElement::Modular { modulus, .. } => FieldSpec::Prime(Modulus(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            FieldElement::Rational(q) => q.clone(),
            FieldElement::Modular { value, modulus } => PrimeField { p: *modulus }.to_rational(value),
        }
    }

    pub fn from_rational_in(spec: FieldSpec, q: &BigRational) -> Result<Self, ExactAlgError> {
        match spec {
            FieldSpec::Rational => Ok(FieldElement::Rational(q.clone())),
            FieldSpec::Prime(m) => Ok(FieldElement::Modular {
                value: PrimeField::from_modulus(m).from_rational(q)?,
                modulus: m.0,
            }),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

/// Integer rational helper used across the crate.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// True when `q` is an integer with absolute value at most `bound`.
pub fn is_small_integer(q: &BigRational, bound: i64) -> bool {
    q.is_integer() && q.numer().abs() <= BigInt::from(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.sub_mul(&1, &3, &4), (1 + 7 * 2 - 12));
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = PrimeField::new(65521).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let h = f.from_rational(&half).unwrap();
        assert_eq!(f.mul(&h, &2), 1);
        let bad = BigRational::new(BigInt::from(1), BigInt::from(65521));
        assert!(f.from_rational(&bad).is_err());
    }

    #[test]
    fn symmetric_representative() {
        let f = PrimeField::new(65521).unwrap();
        assert_eq!(f.to_rational(&65520), rat(-1));
        assert_eq!(f.to_rational(&3), rat(3));
    }

    #[test]
    fn moduli_are_validated() {
        assert!(Modulus::new(65521).is_ok());
        assert!(Modulus::new(PARANOID_PRIME).is_ok());
        assert!(Modulus::new(65520).is_err());
        assert!(Modulus::new((1u64 << 31) + 11).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("rational".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("65521".parse::<FieldSpec>().unwrap(), FieldSpec::default_prime());
        assert_eq!(
            "prime:1073741789".parse::<FieldSpec>().unwrap(),
            FieldSpec::paranoid_prime()
        );
        assert!("prime:10".parse::<FieldSpec>().is_err());
        assert!("banana".parse::<FieldSpec>().is_err());
    }
}
