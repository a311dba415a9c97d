//! Carrier-object style commutative ring abstraction.
//!
//! Rings are small cloneable values (a field descriptor, a Galois-set
//! context) and elements are opaque; this keeps coefficient rings with
//! nontrivial semantic equality (the Grothendieck-Witt ring decides
//! equality through classical invariants) behind the same interface as
//! the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A commutative ring with unit and decidable equality.
pub trait Ring: Clone {
    type Elem: Clone + core::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Semantic equality; for quotient rings this may be far more than
    /// representational comparison.
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.zero())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.one())
    }
}

/// The ring of integers with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn eq(&self, a: &BigInt, b: &BigInt) -> bool {
        a == b
    }
}
