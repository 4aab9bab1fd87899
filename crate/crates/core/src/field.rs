//! Prime-field arithmetic over GF(q).
//!
//! Elements carry their modulus so that mixing two fields is caught at the
//! point of use. Moduli are bounded by [`MAX_MODULUS`] so that products fit a
//! `u128` widening multiply and `q - 1` can be factored by trial division.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use thiserror::Error;

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_MODULUS: u64 = 1 << 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("elements of GF({left}) and GF({right}) cannot be combined")]
    FieldMismatch { left: u64, right: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("GF({modulus}) has only {available} distinct nonzero evaluation points, {requested} requested")]
    TooManyPoints {
        modulus: u64,
        requested: usize,
        available: u64,
    },
}

/// The field GF(q) together with its smallest generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u64,
    generator: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self, FieldError> {
        if modulus > MAX_MODULUS {
            return Err(FieldError::ModulusTooLarge(modulus));
        }
        if !is_prime(modulus) {
            return Err(FieldError::NotPrime(modulus));
        }
        let generator = smallest_generator(modulus);
        Ok(Self { modulus, generator })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn generator(&self) -> FieldElement {
        FieldElement::reduced(self.generator, self.modulus)
    }

    /// Embeds an integer, reducing it mod q.
    #[inline]
    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement::reduced(value % self.modulus, self.modulus)
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::reduced(0, self.modulus)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::reduced(1 % self.modulus, self.modulus)
    }

    pub fn zeros(&self, len: usize) -> Vec<FieldElement> {
        alloc::vec![self.zero(); len]
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.modulus == self.modulus
    }

    /// The evaluation points `(alpha, alpha^2, ..., alpha^n)` for the field generator `alpha`.
    pub fn eval_points(&self, n: usize) -> Result<Vec<FieldElement>, FieldError> {
        eval_points(self, n)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.modulus)
    }
}

/// An element of GF(q), always fully reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    #[inline]
    const fn reduced(value: u64, modulus: u64) -> Self {
        Self { value, modulus }
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Zero of the same field.
    #[inline]
    pub fn zero_like(self) -> Self {
        Self::reduced(0, self.modulus)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        }
    }

    pub fn try_add(self, other: Self) -> Result<Self, FieldError> {
        self.check(&other)?;
        let q = self.modulus;
        // both operands < q <= 2^48, no overflow
        let s = self.value + other.value;
        Ok(Self::reduced(if s >= q { s - q } else { s }, q))
    }

    pub fn try_sub(self, other: Self) -> Result<Self, FieldError> {
        self.check(&other)?;
        let q = self.modulus;
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + q - other.value
        };
        Ok(Self::reduced(v, q))
    }

    pub fn try_mul(self, other: Self) -> Result<Self, FieldError> {
        self.check(&other)?;
        let v = (self.value as u128 * other.value as u128) % self.modulus as u128;
        Ok(Self::reduced(v as u64, self.modulus))
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let q = self.modulus;
        let mut base = self;
        let mut acc = Self::reduced(1 % q, q);
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// `self^e` for a signed exponent; negative powers go through the inverse.
    pub fn pow_signed(self, exp: i64) -> Result<Self, FieldError> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self) -> Result<Self, FieldError> {
        if self.value == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(self.modulus - 2))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// The operator impls panic on a field mismatch; the `try_*` methods are the
// fallible surface.
impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.value == 0 {
            self
        } else {
            Self::reduced(self.modulus - self.value, self.modulus)
        }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= lower`.
pub fn next_prime(lower: u64) -> u64 {
    let mut candidate = lower.max(2);
    while !is_prime(candidate) {
        candidate += 1;
    }
    candidate
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            factors.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

fn smallest_generator(q: u64) -> u64 {
    let order = q - 1;
    let factors = prime_factors(order);
    (1..q)
        .find(|&g| factors.iter().all(|&p| pow_mod(g, order / p, q) != 1))
        .expect("every prime field has a generator")
}

/// Returns the smallest element of multiplicative order `q - 1`.
pub fn find_generator(q: u64) -> Result<FieldElement, FieldError> {
    Ok(PrimeField::new(q)?.generator())
}

/// `(alpha^1, ..., alpha^n)` for the generator `alpha` of `field`.
pub fn eval_points(field: &PrimeField, n: usize) -> Result<Vec<FieldElement>, FieldError> {
    let available = field.modulus() - 1;
    if n as u64 > available {
        return Err(FieldError::TooManyPoints {
            modulus: field.modulus(),
            requested: n,
            available,
        });
    }
    let alpha = field.generator();
    let mut points = Vec::with_capacity(n);
    let mut x = alpha;
    for _ in 0..n {
        points.push(x);
        x *= alpha;
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    // Independent inverse oracle: extended Euclid over the integers.
    fn egcd_inverse(a: u64, q: u64) -> u64 {
        let (mut r0, mut r1) = (q as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        assert_eq!(r0, 1);
        t0.rem_euclid(q as i128) as u64
    }

    #[test]
    fn addition_examples() {
        let f5 = gf(5);
        assert_eq!((f5.element(3) + f5.element(4)).value(), 2);
        assert_eq!((f5.element(2) + f5.element(3)).value(), 0);
        let f7 = gf(7);
        for x in 0..7 {
            assert_eq!((f7.zero() + f7.element(x)).value(), x);
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(gf(7).element(6).inv().unwrap().value(), 6);
        assert_eq!(gf(5).element(2).inv().unwrap().value(), 3);
        assert_eq!(egcd_inverse(4, 11), 3);
        assert_eq!(gf(11).element(4).inv().unwrap().value(), 3);
        assert_eq!(gf(11).zero().inv(), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn inverse_exhaustive_small_primes() {
        for q in (2..=101).filter(|&q| is_prime(q)) {
            let f = gf(q);
            for a in 1..q {
                let x = f.element(a);
                let inv = x.inv().unwrap();
                assert_eq!((x * inv).value(), 1, "q={q} a={a}");
                assert_eq!(inv.value(), egcd_inverse(a, q));
            }
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(find_generator(5).unwrap().value(), 2);
        assert_eq!(find_generator(7).unwrap().value(), 3);
        assert_eq!(find_generator(2).unwrap().value(), 1);
        assert!(find_generator(9).is_err());
    }

    #[test]
    fn generator_has_full_order() {
        for q in (3..2000).filter(|&q| is_prime(q)) {
            let g = find_generator(q).unwrap();
            // brute-force order
            let mut x = g;
            let mut order = 1;
            while x.value() != 1 {
                x *= g;
                order += 1;
            }
            assert_eq!(order, q - 1, "q={q}");
            for p in prime_factors(q - 1) {
                assert_ne!(g.pow((q - 1) / p).value(), 1);
            }
        }
    }

    #[test]
    fn eval_point_examples() {
        let pts: Vec<u64> = gf(5).eval_points(4).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(pts, [2, 4, 3, 1]);
        let pts: Vec<u64> = gf(7).eval_points(2).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(pts, [3, 2]);
        assert_eq!(gf(13).eval_points(1).unwrap(), [gf(13).generator()]);
        assert!(matches!(
            gf(5).eval_points(5),
            Err(FieldError::TooManyPoints { .. })
        ));
    }

    #[test]
    fn eval_points_distinct_exhaustive() {
        for q in (2..=101).filter(|&q| is_prime(q)) {
            let f = gf(q);
            let pts = f.eval_points((q - 1) as usize).unwrap();
            let mut seen: Vec<u64> = pts.iter().map(|x| x.value()).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len() as u64, q - 1);
            assert!(!seen.contains(&0));
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = gf(5).element(1);
        let b = gf(7).element(1);
        assert_eq!(
            a.try_add(b),
            Err(FieldError::FieldMismatch { left: 5, right: 7 })
        );
        assert!(a.try_mul(b).is_err());
        assert!(a.try_sub(b).is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime((1 << 31) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
        assert_eq!(next_prime(8), 11);
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..1_000_003, b in 0u64..1_000_003, c in 0u64..1_000_003) {
            let f = gf(1_000_003);
            let (a, b, c) = (f.element(a), f.element(b), f.element(c));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - b + b, a);
            prop_assert_eq!(a + (-a), f.zero());
        }
    }
}
