use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingSpec {
    Rational,
    Prime(u64),
    Integer,
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RingSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, RingSpec::Integer)
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            RingSpec::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            RingSpec::Integer => Scalar::Integer(v.clone()),
            RingSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// Parses a coefficient string: `a/b` (lowest terms) for ℚ, a decimal
    /// integer for ℤ and 𝔽_p (reduced mod p).
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let bad = |reason: &str| Error::Coefficient {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        match self {
            RingSpec::Rational => {
                let (num, den) = match t.split_once('/') {
                    Some((a, b)) => (a, Some(b)),
                    None => (t, None),
                };
                let num: BigInt = num.trim().parse().map_err(|_| bad("numerator is not an integer"))?;
                let den: BigInt = match den {
                    Some(b) => b.trim().parse().map_err(|_| bad("denominator is not an integer"))?,
                    None => BigInt::one(),
                };
                if !den.is_positive() {
                    return Err(bad("denominator must be positive"));
                }
                if !num.gcd(&den).is_one() {
                    return Err(bad("fraction is not in lowest terms"));
                }
                Ok(Scalar::Rational(BigRational::new_raw(num, den)))
            }
            RingSpec::Integer | RingSpec::Prime(_) => {
                if t.contains('/') {
                    return Err(bad("fractions are only allowed over Q"));
                }
                let v: BigInt = t.parse().map_err(|_| bad("not a decimal integer"))?;
                Ok(self.from_bigint(&v))
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rational => write!(f, "Q"),
            RingSpec::Prime(p) => write!(f, "F{p}"),
            RingSpec::Integer => write!(f, "Z"),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    /// `Q`, `Z` or `F<p>` with `p` prime.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" => Ok(RingSpec::Rational),
            "Z" => Ok(RingSpec::Integer),
            t => match t.strip_prefix('F').map(str::parse::<u64>) {
                Some(Ok(p)) => RingSpec::prime_field(p),
                _ => Err(Error::Unsupported(format!("unknown ring {t:?}; expected Q, Z or F<p>"))),
            },
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
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

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// An element of ℚ, 𝔽_p or ℤ. Values are canonical: rationals in lowest
/// terms with positive denominator, residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
    Integer(BigInt),
}

impl Scalar {
    pub fn ring(&self) -> RingSpec {
        match self {
            Scalar::Rational(_) => RingSpec::Rational,
            Scalar::Residue { modulus, .. } => RingSpec::Prime(*modulus),
            Scalar::Integer(_) => RingSpec::Integer,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
            Scalar::Integer(z) => z.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
            Scalar::Integer(z) => z.is_one(),
        }
    }

    /// Multiplicative inverse, if it exists in the ring.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) if !q.is_zero() => Some(Scalar::Rational(q.recip())),
            Scalar::Residue { value, modulus } if *value != 0 => Some(Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
            Scalar::Integer(z) if z.abs().is_one() => Some(Scalar::Integer(z.clone())),
            _ => None,
        }
    }

    /// The value as an integer when it is one (ℤ, integral rationals, residues
    /// as their representative in `[0, p)`).
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(BigInt::from(*value)),
            Scalar::Integer(z) => Some(z.clone()),
        }
    }

    /// Reinterprets an integral value in another ring.
    pub fn convert(&self, ring: RingSpec) -> Result<Scalar> {
        if self.ring() == ring {
            return Ok(self.clone());
        }
        match (self, ring) {
            (Scalar::Rational(q), RingSpec::Prime(p)) => {
                let pb = BigInt::from(p);
                if q.denom().mod_floor(&pb).is_zero() {
                    return Err(Error::Unsupported(format!("{q} has denominator divisible by {p}")));
                }
                let num = ring.from_bigint(q.numer());
                let den = ring.from_bigint(q.denom());
                Ok(&num * &den.inverse().expect("unit"))
            }
            (Scalar::Residue { .. }, RingSpec::Rational | RingSpec::Integer) => Err(Error::Unsupported(
                "residues do not lift canonically to Q or Z".into(),
            )),
            _ => {
                let z = self
                    .to_bigint()
                    .ok_or_else(|| Error::Unsupported(format!("{self} is not integral")))?;
                Ok(ring.from_bigint(&z))
            }
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.ring(), other.ring(), "scalar arithmetic across rings");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
            Scalar::Integer(z) => write!(f, "{z}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Integer(a) => Scalar::Integer(-a),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(RingSpec::prime_field(4).is_err());
        assert_eq!("F7".parse::<RingSpec>().unwrap(), RingSpec::Prime(7));
        assert_eq!("Q".parse::<RingSpec>().unwrap(), RingSpec::Rational);
        assert_eq!("F9".parse::<RingSpec>(), Err(Error::NotPrime(9)));
        assert!("R".parse::<RingSpec>().is_err());
    }

    #[test]
    fn parse_coefficients() {
        let q = RingSpec::Rational;
        assert_eq!(q.parse_scalar("-3/4").unwrap().to_string(), "-3/4");
        assert!(q.parse_scalar("2/4").is_err());
        assert!(q.parse_scalar("1/-2").is_err());
        let f7 = RingSpec::Prime(7);
        assert_eq!(f7.parse_scalar("-1").unwrap(), f7.from_i64(6));
        assert_eq!(f7.parse_scalar("15").unwrap(), f7.from_i64(1));
        assert!(RingSpec::Integer.parse_scalar("1/2").is_err());
    }

    #[test]
    fn residue_arithmetic() {
        let f5 = RingSpec::Prime(5);
        let a = f5.from_i64(3);
        let b = f5.from_i64(4);
        assert_eq!(&a + &b, f5.from_i64(2));
        assert_eq!(&a * &b, f5.from_i64(2));
        assert_eq!(&(&a * &a.inverse().unwrap()), &f5.one());
        assert_eq!(-&f5.zero(), f5.zero());
    }
}
