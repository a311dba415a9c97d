//! The Grothendieck-Witt ring of a base field: integer formal sums of
//! square classes with decidable semantic equality.
//!
//! Elements are stored in the group ring Z[k^x / squares] with
//! canonical class representatives as keys. Two stored sums can be
//! distinct yet equal in the Grothendieck-Witt ring; `is_equal`
//! decides this by splitting a difference into honest diagonal forms
//! and comparing classical invariants (rank; plus signature over R;
//! plus discriminant over finite fields; plus discriminant, signature
//! and Hasse symbols over Q, which is complete by Hasse-Minkowski and
//! Witt cancellation).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{
    hilbert_symbol, relevant_places, FieldDescriptor, Place, SquareClass,
};
use crate::ring::Ring;
use crate::{Error, Result};

/// A virtual quadratic form: an integer-weighted formal sum of square
/// classes. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct GwElement {
    descriptor: FieldDescriptor,
    coeffs: BTreeMap<BigInt, BigInt>,
}

impl GwElement {
    pub fn zero(descriptor: FieldDescriptor) -> Self {
        GwElement {
            descriptor,
            coeffs: BTreeMap::new(),
        }
    }

    /// The multiplicative unit `<1>`.
    pub fn one(descriptor: FieldDescriptor) -> Self {
        GwElement::generator(&descriptor.class_one())
    }

    /// The rank-one form `<a>`.
    pub fn generator(class: &SquareClass) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(class.rep().clone(), BigInt::one());
        GwElement {
            descriptor: class.descriptor(),
            coeffs,
        }
    }

    /// Build from (class, coefficient) terms; zero coefficients drop out.
    pub fn from_terms<I>(descriptor: FieldDescriptor, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SquareClass, BigInt)>,
    {
        let mut elem = GwElement::zero(descriptor);
        for (class, coeff) in terms {
            if class.descriptor() != descriptor {
                return Err(Error::DescriptorMismatch(format!(
                    "term over {} in element over {}",
                    class.descriptor(),
                    descriptor
                )));
            }
            elem.add_term(class.rep(), &coeff);
        }
        Ok(elem)
    }

    /// m copies of the hyperbolic form `<1> + <-1>`.
    pub fn hyperbolic(descriptor: FieldDescriptor, m: u64) -> Self {
        hyperbolic_scaled(descriptor, &BigInt::from(m))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Iterate (class, coefficient) pairs in the stored key order.
    pub fn terms(&self) -> impl Iterator<Item = (SquareClass, &BigInt)> + '_ {
        self.coeffs.iter().map(move |(rep, coeff)| {
            (
                SquareClass::from_canonical_rep(self.descriptor, rep.clone()),
                coeff,
            )
        })
    }

    pub fn coefficient(&self, class: &SquareClass) -> BigInt {
        self.coeffs.get(class.rep()).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, rep: &BigInt, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(rep.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(rep);
        }
    }

    fn check_same(&self, other: &GwElement, op: &str) -> Result<()> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch(format!(
                "{op}: {} vs {}",
                self.descriptor, other.descriptor
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GwElement) -> Result<GwElement> {
        self.check_same(other, "add")?;
        let mut out = self.clone();
        for (rep, coeff) in &other.coeffs {
            out.add_term(rep, coeff);
        }
        Ok(out)
    }

    pub fn neg(&self) -> GwElement {
        GwElement {
            descriptor: self.descriptor,
            coeffs: self
                .coeffs
                .iter()
                .map(|(rep, coeff)| (rep.clone(), -coeff))
                .collect(),
        }
    }

    pub fn sub(&self, other: &GwElement) -> Result<GwElement> {
        self.add(&other.neg())
    }

    /// Bilinear extension of the square-class group law.
    pub fn mul(&self, other: &GwElement) -> Result<GwElement> {
        self.check_same(other, "mul")?;
        let mut out = GwElement::zero(self.descriptor);
        for (rep_a, ca) in &self.coeffs {
            for (rep_b, cb) in &other.coeffs {
                let g = rep_a.gcd(rep_b);
                let rep = (rep_a / &g) * (rep_b / &g);
                out.add_term(&rep, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, scalar: &BigInt) -> GwElement {
        if scalar.is_zero() {
            return GwElement::zero(self.descriptor);
        }
        GwElement {
            descriptor: self.descriptor,
            coeffs: self
                .coeffs
                .iter()
                .map(|(rep, coeff)| (rep.clone(), coeff * scalar))
                .collect(),
        }
    }

    /// Sum of coefficients.
    pub fn rank(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Split into the honest positive part and the negated negative part.
    fn split(&self) -> (DiagonalForm, DiagonalForm) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (rep, coeff) in &self.coeffs {
            if coeff.is_positive() {
                pos.push((rep.clone(), coeff.clone()));
            } else {
                neg.push((rep.clone(), -coeff));
            }
        }
        (DiagonalForm(pos), DiagonalForm(neg))
    }

    /// Classical invariants of this (virtual) class. The Hasse symbols
    /// are those of the honest positive part; negative coefficients
    /// influence only rank, discriminant and signature here, and are
    /// handled by `is_equal` through the difference split.
    pub fn invariants(&self) -> Result<InvariantProfile> {
        let (pos, _) = self.split();
        let disc = self
            .coeffs
            .iter()
            .filter(|(_, c)| c.is_odd())
            .fold(BigInt::one(), |acc, (rep, _)| {
                let g = acc.gcd(rep);
                (acc / &g) * (rep / &g)
            });
        let signature = match self.descriptor {
            FieldDescriptor::Rationals | FieldDescriptor::RealClosed => Some(
                self.coeffs
                    .iter()
                    .map(|(rep, c)| if rep.is_negative() { -c } else { c.clone() })
                    .sum(),
            ),
            _ => None,
        };
        let hasse = if self.descriptor == FieldDescriptor::Rationals {
            let reps: Vec<&BigInt> = self.coeffs.keys().collect();
            let mut out = Vec::new();
            for place in relevant_places(&reps)? {
                out.push((place.clone(), pos.hasse(&place)?));
            }
            out
        } else {
            Vec::new()
        };
        Ok(InvariantProfile {
            rank: self.rank(),
            disc: SquareClass::from_canonical_rep(self.descriptor, disc),
            signature,
            hasse,
        })
    }

    /// Equality in the Grothendieck-Witt ring.
    ///
    /// Splits the difference d = self - other into honest forms P, N
    /// and decides P = N by rank plus the complete invariant set of
    /// the base field.
    pub fn is_equal(&self, other: &GwElement) -> Result<bool> {
        self.check_same(other, "is_equal")?;
        let diff = self.sub(other)?;
        let (pos, neg) = diff.split();
        if pos.rank() != neg.rank() {
            return Ok(false);
        }
        if pos.rank().is_zero() {
            return Ok(true);
        }
        match self.descriptor {
            FieldDescriptor::ComplexClosed => Ok(true),
            FieldDescriptor::RealClosed => Ok(pos.signature() == neg.signature()),
            FieldDescriptor::PrimeField(_) => Ok(pos.disc() == neg.disc()),
            FieldDescriptor::Rationals => {
                if pos.signature() != neg.signature() || pos.disc() != neg.disc() {
                    return Ok(false);
                }
                let entries: Vec<&BigInt> = pos
                    .0
                    .iter()
                    .chain(neg.0.iter())
                    .map(|(rep, _)| rep)
                    .collect();
                for place in relevant_places(&entries)? {
                    if pos.hasse(&place)? != neg.hasse(&place)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Whether this class is an integer multiple of the hyperbolic form.
    pub fn witt_is_zero(&self) -> Result<bool> {
        let rank = self.rank();
        if rank.is_odd() {
            return Ok(false);
        }
        let half = rank / BigInt::from(2);
        self.is_equal(&hyperbolic_scaled(self.descriptor, &half))
    }
}

impl core::fmt::Display for GwElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // positives first, then by |rep|, then by value
        let mut reps: Vec<&BigInt> = self.coeffs.keys().collect();
        reps.sort_by_key(|rep| (rep.is_negative(), rep.abs(), (*rep).clone()));
        for (idx, rep) in reps.iter().enumerate() {
            let coeff = &self.coeffs[*rep];
            let mag = coeff.abs();
            if idx == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "<{rep}>")?;
        }
        Ok(())
    }
}

/// m copies of H, with negative multiples meaning the negated class.
pub fn hyperbolic_scaled(descriptor: FieldDescriptor, m: &BigInt) -> GwElement {
    let mut elem = GwElement::zero(descriptor);
    if !m.is_zero() {
        let minus_one = descriptor
            .class_of_int(-1)
            .expect("-1 is a unit in every field");
        elem.add_term(&BigInt::one(), m);
        elem.add_term(minus_one.rep(), m);
    }
    elem
}

/// t_a = <2> + <a> - <1> - <2a>, the 2-torsion obstruction class.
pub fn t_elem(a: &SquareClass) -> Result<GwElement> {
    let desc = a.descriptor();
    let two = desc.class_of_int(2)?;
    let two_a = two.mul(a)?;
    let mut elem = GwElement::zero(desc);
    elem.add_term(two.rep(), &BigInt::one());
    elem.add_term(a.rep(), &BigInt::one());
    elem.add_term(&BigInt::one(), &(-BigInt::one()));
    elem.add_term(two_a.rep(), &(-BigInt::one()));
    Ok(elem)
}

/// An honest diagonal form as (class rep, multiplicity > 0) entries.
struct DiagonalForm(Vec<(BigInt, BigInt)>);

impl DiagonalForm {
    fn rank(&self) -> BigInt {
        self.0.iter().map(|(_, m)| m).sum()
    }

    fn signature(&self) -> BigInt {
        self.0
            .iter()
            .map(|(rep, m)| if rep.is_negative() { -m } else { m.clone() })
            .sum()
    }

    fn disc(&self) -> BigInt {
        self.0
            .iter()
            .filter(|(_, m)| m.is_odd())
            .fold(BigInt::one(), |acc, (rep, _)| {
                let g = acc.gcd(rep);
                (acc / &g) * (rep / &g)
            })
    }

    /// Hasse invariant prod_{i<j} (a_i, a_j)_v over the expanded
    /// diagonal; only exponent parities matter, so multiplicities
    /// reduce to C(m, 2) mod 2 within a class and m_i m_j mod 2 across
    /// classes.
    fn hasse(&self, place: &Place) -> Result<i32> {
        let mut sym = 1i32;
        for (i, (rep_i, mult_i)) in self.0.iter().enumerate() {
            let qi = BigRational::from_integer(rep_i.clone());
            // C(m, 2) odd iff m = 2, 3 mod 4
            let pairs_odd = {
                let m4 = mult_i.mod_floor(&BigInt::from(4));
                m4 == BigInt::from(2) || m4 == BigInt::from(3)
            };
            if pairs_odd && hilbert_symbol(&qi, &qi, place)? == -1 {
                sym = -sym;
            }
            for (rep_j, mult_j) in self.0.iter().skip(i + 1) {
                if mult_i.is_odd()
                    && mult_j.is_odd()
                    && hilbert_symbol(&qi, &BigRational::from_integer(rep_j.clone()), place)? == -1
                {
                    sym = -sym;
                }
            }
        }
        Ok(sym)
    }
}

/// Invariant profile used for display and equality diagnostics.
#[derive(Clone, Debug)]
pub struct InvariantProfile {
    pub rank: BigInt,
    pub disc: SquareClass,
    /// Signed count of positive versus negative entries; Q and R only.
    pub signature: Option<BigInt>,
    /// Hasse symbols of the honest positive part; Q only.
    pub hasse: Vec<(Place, i32)>,
}

impl core::fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "rank {}, disc {}", self.rank, self.disc)?;
        if let Some(sig) = &self.signature {
            write!(f, ", signature {sig}")?;
        }
        for (place, eps) in &self.hasse {
            write!(f, ", eps_{place} {}", if *eps == 1 { "+1" } else { "-1" })?;
        }
        Ok(())
    }
}

/// The Grothendieck-Witt ring of a fixed base field as a `Ring` value.
///
/// `eq` panics if square-class factorization exceeds the desk-scale
/// bound; CLI layers are expected to catch that as a guard failure.
#[derive(Clone, Debug)]
pub struct GwRing {
    descriptor: FieldDescriptor,
}

impl GwRing {
    pub fn new(descriptor: FieldDescriptor) -> Self {
        GwRing { descriptor }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }
}

impl Ring for GwRing {
    type Elem = GwElement;

    fn zero(&self) -> GwElement {
        GwElement::zero(self.descriptor)
    }

    fn one(&self) -> GwElement {
        GwElement::one(self.descriptor)
    }

    fn add(&self, a: &GwElement, b: &GwElement) -> GwElement {
        a.add(b).expect("same descriptor within one ring")
    }

    fn neg(&self, a: &GwElement) -> GwElement {
        a.neg()
    }

    fn mul(&self, a: &GwElement, b: &GwElement) -> GwElement {
        a.mul(b).expect("same descriptor within one ring")
    }

    fn eq(&self, a: &GwElement, b: &GwElement) -> bool {
        a.is_equal(b).expect("desk-scale factorization bound")
    }
}
