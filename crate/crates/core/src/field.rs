//! Base-field backends: Q, F_p (p an odd prime), R and C, with exact
//! square-class groups and the Hilbert-symbol pairing.
//!
//! Square classes are the index set of every Grothendieck-Witt
//! generator `<a>`, so the canonical representative convention here
//! fixes the representation used by the whole crate:
//!
//! * Q: signed squarefree integer (class of n/d is the squarefree part
//!   of n*d),
//! * F_p: 1 or the least positive nonresidue,
//! * R: +1 or -1,
//! * C: 1.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Trial-division limit used when canonicalizing square classes.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// One of the four supported base fields.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FieldDescriptor {
    /// The rational numbers.
    Rationals,
    /// The prime field F_p, p an odd prime.
    PrimeField(u64),
    /// A real closed field (square classes +1, -1).
    RealClosed,
    /// An algebraically closed field of characteristic 0.
    ComplexClosed,
}

impl FieldDescriptor {
    /// Construct the prime-field descriptor, rejecting p = 2 and composites.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedField(
                "characteristic 2 is not supported".into(),
            ));
        }
        if !is_prime_u64(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        Ok(FieldDescriptor::PrimeField(p))
    }

    /// The unit square class `<1>`.
    pub fn class_one(&self) -> SquareClass {
        SquareClass {
            descriptor: *self,
            rep: BigInt::one(),
        }
    }

    /// Canonical square class of a small integer; errors on zero.
    pub fn class_of_int(&self, n: i64) -> Result<SquareClass> {
        class_of(&self.element_from_int(n)?)
    }

    /// Build a field element from an exact rational value.
    ///
    /// Over F_p the value is reduced mod p; a denominator divisible by
    /// p is rejected. Zero is a legal element (only `class_of` insists
    /// on units).
    pub fn element_from_rational(&self, value: BigRational) -> Result<FieldElement> {
        match self {
            FieldDescriptor::PrimeField(p) => {
                let num = mod_u64(value.numer(), *p);
                let den = mod_u64(value.denom(), *p);
                if den == 0 {
                    return Err(Error::ZeroResidue(*p));
                }
                let inv = mod_pow_u64(den, *p - 2, *p);
                Ok(FieldElement {
                    descriptor: *self,
                    value: Scalar::Residue(mod_mul_u64(num, inv, *p)),
                })
            }
            _ => Ok(FieldElement {
                descriptor: *self,
                value: Scalar::Rational(value),
            }),
        }
    }

    /// Build a field element from an integer.
    pub fn element_from_int(&self, n: i64) -> Result<FieldElement> {
        self.element_from_rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl core::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "F{p}"),
            FieldDescriptor::RealClosed => write!(f, "R"),
            FieldDescriptor::ComplexClosed => write!(f, "C"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

/// An exact element of one of the base fields. May be zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldElement {
    descriptor: FieldDescriptor,
    value: Scalar,
}

impl FieldElement {
    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    /// The rational value, for the archimedean-style backends.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }

    /// The residue in 0..p for the prime-field backend.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.value {
            Scalar::Residue(r) => Some(*r),
            Scalar::Rational(_) => None,
        }
    }

    fn check_same(&self, other: &FieldElement, op: &str) -> Result<()> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch(format!(
                "{op}: {} vs {}",
                self.descriptor, other.descriptor
            )));
        }
        Ok(())
    }

    /// Exact field sum. A zero result is legal; callers forming the
    /// relation `<a+b> + <(a+b)ab>` must guard against it first.
    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other, "add")?;
        let value = match (&self.value, &other.value) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue(a), Scalar::Residue(b)) => {
                let p = match self.descriptor {
                    FieldDescriptor::PrimeField(p) => p,
                    _ => unreachable!(),
                };
                Scalar::Residue((a + b) % p)
            }
            _ => unreachable!(),
        };
        Ok(FieldElement {
            descriptor: self.descriptor,
            value,
        })
    }

    /// Exact field product.
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other, "mul")?;
        let value = match (&self.value, &other.value) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue(a), Scalar::Residue(b)) => {
                let p = match self.descriptor {
                    FieldDescriptor::PrimeField(p) => p,
                    _ => unreachable!(),
                };
                Scalar::Residue(mod_mul_u64(*a, *b, p))
            }
            _ => unreachable!(),
        };
        Ok(FieldElement {
            descriptor: self.descriptor,
            value,
        })
    }
}

/// Exact field sum of two elements (free-function form of [`FieldElement::add`]).
pub fn add_elements(x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
    x.add(y)
}

/// A canonical representative of k^x / (k^x)^2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SquareClass {
    descriptor: FieldDescriptor,
    rep: BigInt,
}

impl SquareClass {
    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn rep(&self) -> &BigInt {
        &self.rep
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    /// Internal constructor for reps already in canonical form.
    pub(crate) fn from_canonical_rep(descriptor: FieldDescriptor, rep: BigInt) -> Self {
        SquareClass { descriptor, rep }
    }

    /// Group law of k^x/(k^x)^2: `class_of(a*b)`.
    ///
    /// Canonical reps are squarefree, so the product class is
    /// `(a/g)(b/g)` with `g = gcd(|a|, |b|)`; no factorization needed.
    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch(format!(
                "class mul: {} vs {}",
                self.descriptor, other.descriptor
            )));
        }
        let g = self.rep.gcd(&other.rep);
        Ok(SquareClass {
            descriptor: self.descriptor,
            rep: (&self.rep / &g) * (&other.rep / &g),
        })
    }

    /// `<a>^n`, i.e. the class of a^n: self for odd n, `<1>` for even n.
    pub fn pow(&self, n: u64) -> SquareClass {
        if n % 2 == 1 {
            self.clone()
        } else {
            self.descriptor.class_one()
        }
    }
}

impl core::fmt::Display for SquareClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "<{}>", self.rep)
    }
}

/// Canonical square class of a nonzero field element.
pub fn class_of(x: &FieldElement) -> Result<SquareClass> {
    class_of_with_bound(x, DEFAULT_FACTOR_BOUND)
}

/// As [`class_of`] with an explicit trial-division bound.
pub fn class_of_with_bound(x: &FieldElement, bound: u64) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroValue(format!(
            "cannot take the square class of 0 over {}",
            x.descriptor
        )));
    }
    let rep = match (&x.descriptor, &x.value) {
        (FieldDescriptor::Rationals, Scalar::Rational(q)) => {
            squarefree_part(&(q.numer() * q.denom()), bound)?
        }
        (FieldDescriptor::RealClosed, Scalar::Rational(q)) => {
            if q.is_positive() {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        }
        (FieldDescriptor::ComplexClosed, Scalar::Rational(_)) => BigInt::one(),
        (FieldDescriptor::PrimeField(p), Scalar::Residue(r)) => {
            if is_residue(*r, *p) {
                BigInt::one()
            } else {
                BigInt::from(least_nonresidue(*p))
            }
        }
        _ => unreachable!(),
    };
    Ok(SquareClass {
        descriptor: x.descriptor,
        rep,
    })
}

/// Whether the cup product [a] u [b] vanishes in H^2(k, Z/2), i.e.
/// whether ax^2 + by^2 = 1 has a solution over k.
pub fn cup_vanishes(a: &SquareClass, b: &SquareClass) -> Result<bool> {
    if a.descriptor != b.descriptor {
        return Err(Error::DescriptorMismatch(format!(
            "cup product: {} vs {}",
            a.descriptor, b.descriptor
        )));
    }
    match a.descriptor {
        // H^2 of a finite field (or an algebraically closed one) vanishes.
        FieldDescriptor::PrimeField(_) | FieldDescriptor::ComplexClosed => Ok(true),
        FieldDescriptor::RealClosed => {
            Ok(!(a.rep.is_negative() && b.rep.is_negative()))
        }
        FieldDescriptor::Rationals => {
            // Symbols are +1 away from infinity, 2 and the odd primes
            // dividing the representatives.
            let qa = BigRational::from_integer(a.rep.clone());
            let qb = BigRational::from_integer(b.rep.clone());
            for place in relevant_places(&[&a.rep, &b.rep])? {
                if hilbert_symbol(&qa, &qb, &place)? == -1 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// A place of Q: a finite prime or the archimedean place.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Place {
    Finite(BigInt),
    Infinity,
}

impl core::fmt::Display for Place {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// The local Hilbert symbol (a, b)_v for nonzero rationals, +1 or -1.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroValue("hilbert symbol of 0".into()));
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Finite(p) => {
            if p < &BigInt::from(2) {
                return Err(Error::InvalidInput(format!("{p} is not a prime")));
            }
            if let Some(sp) = p.to_u64() {
                if !is_prime_u64(sp) {
                    return Err(Error::InvalidInput(format!("{p} is not a prime")));
                }
            }
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            if *p == BigInt::from(2) {
                // (-1)^{eps(u)eps(v) + alpha*omega(v) + beta*omega(u)}
                let eps_u = ((unit_mod(&u, 4) - 1) / 2) as i64;
                let eps_v = ((unit_mod(&v, 4) - 1) / 2) as i64;
                let om_u: i64 = if [1u64, 7].contains(&unit_mod(&u, 8)) { 0 } else { 1 };
                let om_v: i64 = if [1u64, 7].contains(&unit_mod(&v, 8)) { 0 } else { 1 };
                let e = eps_u * eps_v + alpha * om_v + beta * om_u;
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                // (-1)^{alpha*beta*(p-1)/2} (u|p)^beta (v|p)^alpha
                let eps_p = ((p - 1u32) / 2u32).is_odd();
                let mut sym = 1i32;
                if eps_p && (alpha * beta) % 2 != 0 {
                    sym = -sym;
                }
                if beta % 2 != 0 {
                    sym *= legendre_rational(&u, p);
                }
                if alpha % 2 != 0 {
                    sym *= legendre_rational(&v, p);
                }
                Ok(sym)
            }
        }
    }
}

/// Product of (a, b)_v over infinity, 2 and every odd prime dividing
/// the numerators or denominators; by reciprocity this must be +1.
pub fn hilbert_product(a: &BigRational, b: &BigRational) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroValue("hilbert symbol of 0".into()));
    }
    let entries = [
        a.numer().clone(),
        a.denom().clone(),
        b.numer().clone(),
        b.denom().clone(),
    ];
    let refs: Vec<&BigInt> = entries.iter().collect();
    let mut product = 1;
    for place in relevant_places(&refs)? {
        product *= hilbert_symbol(a, b, &place)?;
    }
    Ok(product)
}

/// Infinity, 2 and the odd primes dividing any of the given integers,
/// sorted and deduplicated.
pub(crate) fn relevant_places(entries: &[&BigInt]) -> Result<Vec<Place>> {
    let mut primes: Vec<BigInt> = alloc::vec![BigInt::from(2)];
    for n in entries {
        for p in odd_prime_divisors(n, DEFAULT_FACTOR_BOUND)? {
            primes.push(p);
        }
    }
    primes.sort();
    primes.dedup();
    let mut places: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    Ok(places)
}

/// The Legendre symbol of a p-adic unit given as a rational, p odd.
fn legendre_rational(u: &BigRational, p: &BigInt) -> i32 {
    let num = u.numer().mod_floor(p);
    let den = u.denom().mod_floor(p);
    let den_inv = den.modpow(&(p - 2u32), p);
    let val = (num * den_inv).mod_floor(p);
    let e = val.modpow(&((p - 1u32) / 2u32), p);
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// Split a nonzero rational as p^val * unit.
fn split_valuation(q: &BigRational, p: &BigInt) -> (i64, BigRational) {
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    let mut val = 0i64;
    loop {
        let (quo, rem) = num.div_rem(p);
        if rem.is_zero() {
            num = quo;
            val += 1;
        } else {
            break;
        }
    }
    loop {
        let (quo, rem) = den.div_rem(p);
        if rem.is_zero() {
            den = quo;
            val -= 1;
        } else {
            break;
        }
    }
    (val, BigRational::new(num, den))
}

/// Reduce a 2-adic unit modulo a small power of two, as a positive value.
fn unit_mod(u: &BigRational, m: u64) -> u64 {
    let mbig = BigInt::from(m);
    let num = u.numer().mod_floor(&mbig).to_u64().unwrap();
    let den = u.denom().mod_floor(&mbig).to_u64().unwrap();
    // invert the odd denominator mod m by brute force; m is 4 or 8
    let den_inv = (1..m).find(|d| (d * den) % m == 1).unwrap();
    (num * den_inv) % m
}

/// Signed squarefree part of a nonzero integer by trial division.
///
/// A cofactor surviving trial division is accepted when it is a
/// perfect square (contributing nothing) or provably prime (at most
/// bound^2); anything larger is an error rather than a guess.
pub fn squarefree_part(n: &BigInt, bound: u64) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroValue("squarefree part of 0".into()));
    }
    let sign = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut m = n.abs();
    let mut result = BigInt::one();
    let mut p = 2u64;
    let mut bound_hit = true;
    while p <= bound {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            // every factor <= sqrt(m) has been removed; m is 1 or prime
            bound_hit = false;
            break;
        }
        let mut exp = 0u32;
        loop {
            let (quo, rem) = m.div_rem(&pb);
            if rem.is_zero() {
                m = quo;
                exp += 1;
            } else {
                break;
            }
        }
        if exp % 2 == 1 {
            result *= pb;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if !m.is_one() {
        let sqrt = m.sqrt();
        if !bound_hit {
            result *= &m;
        } else if &sqrt * &sqrt == m {
            // even exponents only; contributes nothing
        } else if m <= BigInt::from(bound) * BigInt::from(bound) {
            // all factors exceed the bound, so a composite would exceed bound^2
            result *= &m;
        } else {
            return Err(Error::FactorBound(n.to_string()));
        }
    }
    Ok(sign * result)
}

/// Odd prime divisors of a squarefree-or-small integer.
pub(crate) fn odd_prime_divisors(n: &BigInt, bound: u64) -> Result<Vec<BigInt>> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return Err(Error::ZeroValue("divisors of 0".into()));
    }
    let mut p = 2u64;
    let mut bound_hit = true;
    while p <= bound {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            bound_hit = false;
            break;
        }
        let mut seen = false;
        loop {
            let (quo, rem) = m.div_rem(&pb);
            if rem.is_zero() {
                m = quo;
                seen = true;
            } else {
                break;
            }
        }
        if seen && p != 2 {
            out.push(pb);
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if !m.is_one() {
        if !bound_hit || m <= BigInt::from(bound) * BigInt::from(bound) {
            if m != BigInt::from(2) {
                out.push(m);
            }
        } else {
            return Err(Error::FactorBound(n.to_string()));
        }
    }
    Ok(out)
}

/// Euler's criterion for r mod p, p an odd prime. r = 0 is not a residue.
fn is_residue(r: u64, p: u64) -> bool {
    r != 0 && mod_pow_u64(r % p, (p - 1) / 2, p) == 1
}

/// Least positive quadratic nonresidue mod p.
fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&s| !is_residue(s, p)).expect("p > 2")
}

fn mod_u64(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn mod_mul_u64(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow_u64(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul_u64(acc, base, p);
        }
        base = mod_mul_u64(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_class_over_q() {
        assert_eq!(q().class_of_int(18).unwrap().rep(), &BigInt::from(2));
        assert_eq!(q().class_of_int(-12).unwrap().rep(), &BigInt::from(-3));
        let half = q().element_from_rational(rat(1, 2)).unwrap();
        assert_eq!(class_of(&half).unwrap().rep(), &BigInt::from(2));
        assert!(q().class_of_int(0).is_err());
    }

    #[test]
    fn canonical_class_over_f7() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        // 2 = 3^2 mod 7 is a square
        assert!(f7.class_of_int(2).unwrap().is_one());
        // 3 is the least nonresidue mod 7
        assert_eq!(f7.class_of_int(3).unwrap().rep(), &BigInt::from(3));
    }

    #[test]
    fn prime_field_guards() {
        assert!(FieldDescriptor::prime_field(2).is_err());
        assert!(FieldDescriptor::prime_field(9).is_err());
        assert!(FieldDescriptor::prime_field(10007).is_ok());
    }

    #[test]
    fn class_mul_collapses_squares() {
        let c2 = q().class_of_int(2).unwrap();
        let c3 = q().class_of_int(3).unwrap();
        let c6 = c2.mul(&c3).unwrap();
        assert_eq!(c6.rep(), &BigInt::from(6));
        assert!(c6.mul(&c6).unwrap().is_one());
        let r = FieldDescriptor::RealClosed;
        let m1 = r.class_of_int(-5).unwrap();
        assert_eq!(m1.rep(), &BigInt::from(-1));
        assert!(m1.mul(&m1).unwrap().is_one());
    }

    #[test]
    fn field_addition() {
        let a = q().element_from_rational(rat(1, 2)).unwrap();
        let b = q().element_from_rational(rat(1, 3)).unwrap();
        assert_eq!(a.add(&b).unwrap().as_rational().unwrap(), &rat(5, 6));
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let x = f5.element_from_int(2).unwrap();
        let y = f5.element_from_int(3).unwrap();
        assert!(x.add(&y).unwrap().is_zero());
    }

    #[test]
    fn hilbert_symbol_witnesses() {
        let two = rat(2, 1);
        let three = rat(3, 1);
        let p3 = Place::Finite(BigInt::from(3));
        // Legendre(2|3) = -1
        assert_eq!(hilbert_symbol(&two, &three, &p3).unwrap(), -1);
        let one = rat(1, 1);
        assert_eq!(hilbert_symbol(&one, &three, &p3).unwrap(), 1);
        assert_eq!(hilbert_symbol(&one, &three, &Place::Infinity).unwrap(), 1);
        let m1 = rat(-1, 1);
        assert_eq!(hilbert_symbol(&m1, &m1, &Place::Infinity).unwrap(), -1);
    }

    #[test]
    fn cup_product_examples() {
        let c2 = q().class_of_int(2).unwrap();
        let c3 = q().class_of_int(3).unwrap();
        let c7 = q().class_of_int(7).unwrap();
        assert!(!cup_vanishes(&c2, &c3).unwrap());
        // 2(3/5)^2 + 7(1/5)^2 = 1
        assert!(cup_vanishes(&c2, &c7).unwrap());
        let one = q().class_one();
        assert!(cup_vanishes(&one, &c3).unwrap());
        let r = FieldDescriptor::RealClosed;
        let m1 = r.class_of_int(-1).unwrap();
        assert!(!cup_vanishes(&m1, &m1).unwrap());
        assert!(cup_vanishes(&r.class_one(), &m1).unwrap());
    }

    #[test]
    fn reciprocity_products() {
        for (a, b) in [(2, 3), (-5, 7), (30, -42), (11, 13)] {
            let qa = rat(a, 1);
            let qb = rat(b, 1);
            assert_eq!(hilbert_product(&qa, &qb).unwrap(), 1, "({a},{b})");
        }
    }

    #[test]
    fn squarefree_cofactor_handling() {
        // survives as a provably-prime cofactor (trial division passed sqrt)
        let p = BigInt::from(1_000_003i64);
        assert_eq!(squarefree_part(&p, 1500).unwrap(), p);
        // perfect-square cofactor contributes nothing
        let sq = BigInt::from(1_000_003i64) * BigInt::from(1_000_003i64);
        assert!(squarefree_part(&sq, 1000).unwrap().is_one());
        // product of two large primes is rejected
        let semi = BigInt::from(1_000_003i64) * BigInt::from(1_000_033i64);
        assert!(matches!(
            squarefree_part(&semi, 1000),
            Err(Error::FactorBound(_))
        ));
        let _ = vec![0u8];
    }
}
