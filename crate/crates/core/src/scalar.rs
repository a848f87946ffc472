//! Exact coefficient fields.
//!
//! Every linear-algebra kernel in the crate is generic over [`Field`]. Two
//! concrete fields ship: the prime fields [`Fp`] (the default certificate
//! field is `Fp<32003>`) and the rationals [`Rational`], which keep an
//! inline `i64` fast path and spill to `BigRational` only on overflow.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Prime used to certify rational ranks from below (see [`Field::modular_image`]).
pub const CERT_PRIME: u64 = 2_147_483_629;

/// An exact field. Arithmetic never rounds.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// 0 for the rationals.
    const CHARACTERISTIC: u64;
    /// Short tag used in reports ("fp32003", "q").
    fn tag() -> String;

    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    /// `self -= c * x`, the elimination inner loop.
    fn sub_mul(&mut self, c: &Self, x: &Self) {
        *self = self.clone() - c.clone() * x.clone();
    }

    /// Scale a sparse vector to a primitive integer vector and reduce it
    /// modulo [`CERT_PRIME`]. Only meaningful in characteristic zero, where
    /// the rank of the reduced vectors is a lower bound for the true rank.
    fn modular_image(_v: &[(usize, Self)]) -> Option<Vec<(usize, u64)>> {
        None
    }
}

/// The prime field `Z/P`. `P` must be a prime below `2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
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

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative reads better for +-1 binomials
        let v = self.0 as i64;
        if v > P as i64 / 2 {
            write!(f, "{}", v - P as i64)
        } else {
            write!(f, "{v}")
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
        Fp(1)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp((self.0 as u64 * o.0 as u64 % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<const P: u32> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P as u64;

    fn tag() -> String {
        format!("fp{P}")
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u32().expect("residue fits"))
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_{P}");
        self.pow(P as u64 - 2)
    }

    #[inline]
    fn sub_mul(&mut self, c: &Self, x: &Self) {
        let prod = (c.0 as u64 * x.0 as u64 % P as u64) as u32;
        self.0 = if self.0 >= prod { self.0 - prod } else { self.0 + P - prod };
    }
}

/// Exact rational number with an inline small representation.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    /// numerator, positive denominator, coprime
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn from_integer(v: i64) -> Self {
        Rational(Repr::Small(v, 1))
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().numer().clone()
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().denom().clone()
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Build from an `i128` fraction, normalizing sign and common factors.
    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if n == 0 {
            return Rational(Repr::Small(0, 1));
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            )))),
        }
    }

    pub fn floor(&self) -> BigInt {
        self.to_big().floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.to_big().ceil().to_integer()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(v))
    }
}

impl PartialEq for Rational {
    fn eq(&self, o: &Self) -> bool {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            // canonical form: a value that fits is always Small
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Rational::from_i128(
                        *a as i128 * *d as i128 + *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        match self.0 {
            Repr::Small(n, d) if n != i64::MIN => Rational(Repr::Small(-n, d)),
            _ => Rational::from_big(-self.to_big()),
        }
    }
}

impl Div for Rational {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl Field for Rational {
    const CHARACTERISTIC: u64 = 0;

    fn tag() -> String {
        "q".to_string()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Rational::from(v.clone())
    }

    fn inv(&self) -> Self {
        match &self.0 {
            Repr::Small(0, _) => panic!("inverse of zero rational"),
            Repr::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Rational::from_big(b.recip()),
        }
    }

    fn modular_image(v: &[(usize, Self)]) -> Option<Vec<(usize, u64)>> {
        let mut lcm = BigInt::one();
        for (_, x) in v {
            let d = x.denom();
            if !d.is_one() {
                lcm = lcm.lcm(&d);
            }
        }
        let p = BigInt::from(CERT_PRIME);
        let small_lcm = lcm.to_i128();
        let out = v
            .iter()
            .filter_map(|(i, x)| {
                let r = match (&x.0, small_lcm) {
                    (Repr::Small(n, d), Some(l)) => {
                        let s = *n as i128 * (l / *d as i128);
                        s.rem_euclid(CERT_PRIME as i128) as u64
                    }
                    _ => {
                        let s = x.numer() * (&lcm / x.denom());
                        s.mod_floor(&p).to_u64().expect("residue fits")
                    }
                };
                (r != 0).then_some((*i, r))
            })
            .collect();
        Some(out)
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Rational::zero()
        } else {
            self.clone() - other.clone()
        }
    }
    fn signum(&self) -> Self {
        match self.cmp(&Rational::zero()) {
            Ordering::Less => -Rational::one(),
            Ordering::Equal => Rational::zero(),
            Ordering::Greater => Rational::one(),
        }
    }
    fn is_positive(&self) -> bool {
        *self > Rational::zero()
    }
    fn is_negative(&self) -> bool {
        *self < Rational::zero()
    }
}

impl std::ops::Rem for Rational {
    type Output = Self;
    fn rem(self, _o: Self) -> Self {
        Rational::zero()
    }
}

impl num_traits::Num for Rational {
    type FromStrRadixErr = num_rational::ParseRatioError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational::from_big)
    }
}

impl std::str::FromStr for Rational {
    type Err = num_rational::ParseRatioError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse::<BigRational>().map(Rational::from_big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type F = Fp<32003>;

    #[test]
    fn fp_inverse_roundtrip() {
        for v in [1i64, 2, 3, 17, 32002, 12345] {
            let x = F::from_i64(v);
            assert_eq!(x * x.inv(), F::one());
        }
        assert_eq!(F::from_i64(-1), F::from_i64(32002));
    }

    #[test]
    fn rational_overflow_spills_to_big() {
        let big = Rational::from_integer(i64::MAX);
        let sum = big.clone() + big.clone();
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = sum - big.clone();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
    }

    #[test]
    fn modular_image_scales_denominators() {
        let v = vec![
            (0, Rational::from_i128(1, 2)),
            (3, Rational::from_i128(-1, 3)),
        ];
        let img = Rational::modular_image(&v).unwrap();
        assert_eq!(img, vec![(0, 3), (3, CERT_PRIME - 2)]);
    }

    proptest! {
        #[test]
        fn rational_matches_bigrational(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
            let x = Rational::from_i128(a as i128, b as i128);
            let y = Rational::from_i128(c as i128, d as i128);
            let bx = BigRational::new(a.into(), b.into());
            let by = BigRational::new(c.into(), d.into());
            prop_assert_eq!((x.clone() + y.clone()).to_big(), &bx + &by);
            prop_assert_eq!((x.clone() * y.clone()).to_big(), &bx * &by);
            prop_assert_eq!((x.clone() - y.clone()).to_big(), &bx - &by);
            if !y.is_zero() {
                prop_assert_eq!((x / y).to_big(), bx / by);
            }
        }
    }
}
