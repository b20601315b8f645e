//! Base fields: exact rationals, odd prime fields, and a sign-only model of
//! the reals used by the Grothendieck-Witt equality tests.
//!
//! Everything downstream (towers, polynomials, forms) is built over a
//! [`FieldDescriptor`], and base elements are [`Scalar`] values interpreted
//! relative to that descriptor.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rationals,
    /// Odd prime field F_p. Characteristic two is excluded throughout.
    PrimeField(u64),
    /// Sign-only model of the reals; only square classes and GW arithmetic
    /// are supported, no polynomial algebra.
    Reals,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
}

/// An element of the base field. `Fp` values are kept reduced mod p; the
/// prime itself lives in the descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor { kind: FieldKind::Rationals }
    }

    pub fn reals() -> Self {
        FieldDescriptor { kind: FieldKind::Reals }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if p == 2 || !is_prime_u64(p) {
            return Err(Error::Validation(format!("{p} is not an odd prime")));
        }
        Ok(FieldDescriptor { kind: FieldKind::PrimeField(p) })
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn is_rationals(&self) -> bool {
        self.kind == FieldKind::Rationals
    }

    pub fn is_reals(&self) -> bool {
        self.kind == FieldKind::Reals
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            FieldKind::PrimeField(_) => Scalar::Fp(0),
            _ => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.kind {
            FieldKind::PrimeField(_) => Scalar::Fp(1),
            _ => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.kind {
            FieldKind::PrimeField(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp(r)
            }
            _ => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self.kind {
            FieldKind::PrimeField(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb);
                let den = q.denom().mod_floor(&pb);
                let den: u64 = den.try_into().unwrap();
                if den == 0 {
                    return Err(Error::Validation(format!(
                        "denominator of {q} is divisible by {p}"
                    )));
                }
                let num: u64 = num.try_into().unwrap();
                Ok(self.mul(&Scalar::Fp(num), &self.inv(&Scalar::Fp(den))?))
            }
            _ => Ok(Scalar::Rat(q.clone())),
        }
    }

    fn p(&self) -> u64 {
        match self.kind {
            FieldKind::PrimeField(p) => p,
            _ => unreachable!("scalar kind mismatch"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % self.p() as u128) as u64)
            }
            _ => unreachable!("scalar kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Fp(x) => {
                let p = self.p();
                Scalar::Fp(if *x == 0 { 0 } else { p - x })
            }
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % self.p() as u128) as u64)
            }
            _ => unreachable!("scalar kind mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match a {
            Scalar::Rat(x) => Ok(Scalar::Rat(x.recip())),
            Scalar::Fp(x) => Ok(Scalar::Fp(self.pow_mod(*x, self.p() - 2))),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow_mod(&self, base: u64, mut e: u64) -> u64 {
        let p = self.p() as u128;
        let mut acc: u128 = 1;
        let mut b = base as u128 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as u64
    }

    /// Least quadratic non-residue mod p; exists for every odd prime.
    pub fn least_nonresidue(&self) -> u64 {
        let p = self.p();
        let mut n = 2;
        loop {
            if self.pow_mod(n, (p - 1) / 2) == p - 1 {
                return n;
            }
            n += 1;
        }
    }

    /// Canonical square-class representative of a nonzero base element.
    ///
    /// Over Q this is the signed squarefree integer s with a = s * square;
    /// over F_p it is 1 or the least non-residue; over the reals it is the
    /// sign.
    pub fn square_class(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::ZeroInput);
        }
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rat(q)) => {
                // numer * denom differs from q by the square denom^2
                let n = q.numer() * q.denom();
                Ok(Scalar::Rat(BigRational::from_integer(squarefree_part(&n)?)))
            }
            (FieldKind::Reals, Scalar::Rat(q)) => Ok(Scalar::Rat(BigRational::from_integer(
                BigInt::from(if q.is_positive() { 1 } else { -1 }),
            ))),
            (FieldKind::PrimeField(p), Scalar::Fp(x)) => {
                if self.pow_mod(*x, (p - 1) / 2) == 1 {
                    Ok(Scalar::Fp(1))
                } else {
                    Ok(Scalar::Fp(self.least_nonresidue()))
                }
            }
            _ => unreachable!("scalar kind mismatch"),
        }
    }

    /// True iff a is a nonzero square. Zero returns false.
    pub fn is_square(&self, a: &Scalar) -> bool {
        if self.is_zero(a) {
            return false;
        }
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rat(q)) => {
                q.is_positive()
                    && is_perfect_square(&q.numer().abs())
                    && is_perfect_square(&q.denom().abs())
            }
            (FieldKind::Reals, Scalar::Rat(q)) => q.is_positive(),
            (FieldKind::PrimeField(p), Scalar::Fp(x)) => self.pow_mod(*x, (p - 1) / 2) == 1,
            _ => unreachable!("scalar kind mismatch"),
        }
    }

    pub fn to_string_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp(x) => x.to_string(),
        }
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Trial-division bound for squarefree-part extraction. Cofactors below the
/// cube of this bound are decidable without full factorization.
const TRIAL_BOUND: u64 = 100_000;

/// Signed squarefree part of an integer: n = s * m^2 with s squarefree.
///
/// Primes up to `TRIAL_BOUND` are stripped by trial division. A remaining
/// cofactor c has no prime factor below the bound, so for c < bound^3 it is
/// prime, a product of two distinct primes, or a perfect square; beyond
/// that range a capacity error is raised.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::from(sign);
    let mut d = 2u64;
    while d <= TRIAL_BOUND {
        let db = BigInt::from(d);
        if (&db * &db) > m {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&db);
            if r.is_zero() {
                m = q;
                e += 1;
            } else {
                break;
            }
        }
        if e % 2 == 1 {
            out *= &db;
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if !m.is_one() {
        let bound = BigInt::from(TRIAL_BOUND);
        if m < &bound * &bound {
            // no factor below the bound, so m is prime
            out *= &m;
        } else if is_perfect_square(&m) {
            // contributes a square, drop it
        } else if m < &bound * &bound * &bound {
            // prime or product of two distinct primes, squarefree either way
            out *= &m;
        } else {
            return Err(Error::Capacity(format!(
                "squarefree part of integers with {}+ digit rough cofactors",
                m.to_string().len()
            )));
        }
    }
    Ok(out)
}

/// Place of Q at which a Hilbert symbol is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

fn valuation(q: &BigRational, p: u64) -> (i64, BigRational) {
    let pb = BigInt::from(p);
    let mut v: i64 = 0;
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    loop {
        let (qt, r) = num.div_rem(&pb);
        if r.is_zero() {
            num = qt;
            v += 1;
        } else {
            break;
        }
    }
    loop {
        let (qt, r) = den.div_rem(&pb);
        if r.is_zero() {
            den = qt;
            v -= 1;
        } else {
            break;
        }
    }
    (v, BigRational::new(num, den))
}

fn legendre_unit(u: &BigRational, p: u64) -> i32 {
    // Legendre symbol of a p-adic unit given as a fraction prime to p.
    let pb = BigInt::from(p);
    let num = u.numer().mod_floor(&pb);
    let den = u.denom().mod_floor(&pb);
    let fd = FieldDescriptor::prime_field(p).expect("odd prime");
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    let x = fd
        .div(&Scalar::Fp(num), &Scalar::Fp(den))
        .expect("unit denominator");
    if fd.is_square(&x) {
        1
    } else {
        -1
    }
}

fn odd_part_mod(q: &BigRational, modulus: u64) -> u64 {
    // value mod `modulus` of a 2-adic unit written as a fraction
    let mb = BigInt::from(modulus);
    let num = q.numer().mod_floor(&mb);
    let den = q.denom().mod_floor(&mb);
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    // denominator is odd, invert it mod 2^k by brute force (k <= 3)
    let mut di = 0;
    for c in 0..modulus {
        if (c * den) % modulus == 1 {
            di = c;
            break;
        }
    }
    (num * di) % modulus
}

/// Hilbert symbol (a, b)_v over Q: 1 if z^2 = a x^2 + b y^2 has a nontrivial
/// solution over the completion at v, else -1.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    match place {
        Place::Infinite => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(2) => {
            let (alpha, u) = valuation(a, 2);
            let (beta, v) = valuation(b, 2);
            let um = odd_part_mod(&u, 8);
            let vm = odd_part_mod(&v, 8);
            let eps = |x: u64| (x - 1) / 2 % 2; // (x-1)/2 mod 2 for odd x mod 8
            let omega = |x: u64| (x * x - 1) / 8 % 2;
            let e = eps(um) * eps(vm)
                + (alpha.rem_euclid(2) as u64) * omega(vm)
                + (beta.rem_euclid(2) as u64) * omega(um);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Finite(p) => {
            if !is_prime_u64(p) {
                return Err(Error::Validation(format!("{p} is not a prime place")));
            }
            let (alpha, u) = valuation(a, p);
            let (beta, v) = valuation(b, p);
            let mut s = 1i32;
            if beta.rem_euclid(2) == 1 {
                s *= legendre_unit(&u, p);
            }
            if alpha.rem_euclid(2) == 1 {
                s *= legendre_unit(&v, p);
            }
            if alpha.rem_euclid(2) == 1 && beta.rem_euclid(2) == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            Ok(s)
        }
    }
}

/// Odd primes dividing numerator or denominator of q.
pub fn odd_prime_support(q: &BigRational) -> Vec<u64> {
    let two = BigInt::from(2);
    let mut out = Vec::new();
    for part in [q.numer().abs(), q.denom().abs()] {
        let mut m = part;
        while (&m % &two).is_zero() && !m.is_zero() {
            m /= &two;
        }
        let mut d = 3u64;
        while !m.is_one() && !m.is_zero() {
            let db = BigInt::from(d);
            if &db * &db > m {
                // leftover prime
                if let Ok(p) = (&m).try_into() {
                    if p > 2 && is_prime_u64(p) && !out.contains(&p) {
                        out.push(p);
                    }
                }
                break;
            }
            if (&m % &db).is_zero() {
                if !out.contains(&d) {
                    out.push(d);
                }
                while (&m % &db).is_zero() {
                    m /= &db;
                }
            }
            d += 2;
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldDescriptor::rationals();
        let a = Scalar::Rat(q(1, 3));
        let b = Scalar::Rat(q(1, 6));
        assert_eq!(f.add(&a, &b), Scalar::Rat(q(1, 2)));
    }

    #[test]
    fn prime_field_division() {
        let f = FieldDescriptor::prime_field(5).unwrap();
        // 2/3 = 4 since 3*4 = 12 = 2 mod 5
        assert_eq!(f.div(&Scalar::Fp(2), &Scalar::Fp(3)).unwrap(), Scalar::Fp(4));
    }

    #[test]
    fn square_classes_over_q() {
        let f = FieldDescriptor::rationals();
        assert_eq!(f.square_class(&Scalar::Rat(q(18, 1))).unwrap(), Scalar::Rat(q(2, 1)));
        assert_eq!(f.square_class(&Scalar::Rat(q(-4, 9))).unwrap(), Scalar::Rat(q(-1, 1)));
        assert!(f.square_class(&Scalar::Rat(q(0, 1))).is_err());
    }

    #[test]
    fn square_classes_over_f5() {
        // squares mod 5 are {1, 4}; least non-residue is 2
        let f = FieldDescriptor::prime_field(5).unwrap();
        assert_eq!(f.least_nonresidue(), 2);
        assert_eq!(f.square_class(&Scalar::Fp(3)).unwrap(), Scalar::Fp(2));
        assert_eq!(f.square_class(&Scalar::Fp(4)).unwrap(), Scalar::Fp(1));
    }

    #[test]
    fn is_square_examples() {
        let f = FieldDescriptor::rationals();
        assert!(f.is_square(&Scalar::Rat(q(4, 9))));
        assert!(!f.is_square(&Scalar::Rat(q(-1, 1))));
        assert!(!f.is_square(&Scalar::Rat(q(0, 1))));
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        // 3^2 = 2 mod 7
        assert!(f7.is_square(&Scalar::Fp(2)));
    }

    #[test]
    fn square_class_ignores_square_factors() {
        let f = FieldDescriptor::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a = q(rng.gen_range(-50..50i64).max(1), rng.gen_range(1..30));
            let c = q(rng.gen_range(1..40i64), rng.gen_range(1..40));
            let ac2 = Scalar::Rat(&a * &c * &c);
            assert_eq!(
                f.square_class(&Scalar::Rat(a)).unwrap(),
                f.square_class(&ac2).unwrap()
            );
        }
    }

    #[test]
    fn hilbert_symbol_trivial_cases() {
        let one = q(1, 1);
        let b = q(77, 5);
        for v in [Place::Infinite, Place::Finite(2), Place::Finite(5), Place::Finite(7)] {
            assert_eq!(hilbert_symbol(&one, &b, v).unwrap(), 1);
            assert_eq!(hilbert_symbol(&b, &-&b, v).unwrap(), 1);
        }
    }

    #[test]
    fn hilbert_symbol_2_5_at_5() {
        // oracle: exhaustive solvability of z^2 = 2x^2 + 5y^2 mod 5^3 with
        // not all of x, y, z divisible by 5
        let mut solvable = false;
        let m = 125i64;
        'outer: for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % 5 == 0 && y % 5 == 0 && z % 5 == 0 {
                        continue;
                    }
                    if (z * z - 2 * x * x - 5 * y * y).rem_euclid(m) == 0 {
                        solvable = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(!solvable);
        assert_eq!(hilbert_symbol(&q(2, 1), &q(5, 1), Place::Finite(5)).unwrap(), -1);
    }

    #[test]
    fn hilbert_bimultiplicative_and_product_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let pick = |rng: &mut ChaCha8Rng| loop {
                let v = rng.gen_range(-30..30i64);
                if v != 0 {
                    return q(v, 1);
                }
            };
            let a = pick(&mut rng);
            let b1 = pick(&mut rng);
            let b2 = pick(&mut rng);
            let mut places = vec![Place::Infinite, Place::Finite(2)];
            for x in [&a, &b1, &b2, &(&b1 * &b2)] {
                for p in odd_prime_support(x) {
                    if !places.contains(&Place::Finite(p)) {
                        places.push(Place::Finite(p));
                    }
                }
            }
            let mut prod = 1;
            for &v in &places {
                let lhs = hilbert_symbol(&a, &(&b1 * &b2), v).unwrap();
                let rhs = hilbert_symbol(&a, &b1, v).unwrap() * hilbert_symbol(&a, &b2, v).unwrap();
                assert_eq!(lhs, rhs, "bimultiplicativity at {v}");
                prod *= hilbert_symbol(&a, &b1, v).unwrap();
            }
            assert_eq!(prod, 1, "product formula for ({a}, {b1})");
        }
    }

    #[test]
    fn squarefree_part_basics() {
        assert_eq!(squarefree_part(&BigInt::from(18)).unwrap(), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(-12)).unwrap(), BigInt::from(-3));
        assert_eq!(squarefree_part(&BigInt::from(1)).unwrap(), BigInt::from(1));
    }
}
