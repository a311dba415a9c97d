//! Power series truncated at a fixed degree, with coefficients in an
//! abstract commutative ring.
//!
//! A series stores coefficients of t^0 .. t^N inclusive. Binary
//! operations truncate to the smaller N, so results agree with
//! computing at a higher truncation and restricting afterwards.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::ring::Ring;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// The constant series 1 truncated at degree `trunc`.
    pub fn one(ring: R, trunc: usize) -> Self {
        let mut coeffs = Vec::with_capacity(trunc + 1);
        coeffs.push(ring.one());
        for _ in 0..trunc {
            coeffs.push(ring.zero());
        }
        TruncatedSeries { ring, coeffs }
    }

    /// Build a series from coefficients c_0 .. c_N.
    pub fn from_coeffs(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "series needs a constant coefficient");
        TruncatedSeries { ring, coeffs }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn has_unit_constant(&self) -> bool {
        self.ring.is_one(&self.coeffs[0])
    }

    /// Restrict to a smaller truncation degree.
    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc());
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..=trunc].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc().min(other.trunc());
        let coeffs = (0..=trunc)
            .map(|i| self.ring.add(&self.coeffs[i], &other.coeffs[i]))
            .collect();
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Cauchy product, truncated to the smaller degree.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.trunc().min(other.trunc());
        let mut coeffs = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let mut acc = self.ring.zero();
            for i in 0..=n {
                if self.ring.is_zero(&self.coeffs[i]) {
                    continue;
                }
                acc = self
                    .ring
                    .add(&acc, &self.ring.mul(&self.coeffs[i], &other.coeffs[n - i]));
            }
            coeffs.push(acc);
        }
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse; requires constant coefficient 1.
    pub fn inverse(&self) -> Result<Self> {
        if !self.has_unit_constant() {
            return Err(Error::LeadingCoeffNotOne(format!("{:?}", self.coeffs[0])));
        }
        let trunc = self.trunc();
        let mut inv: Vec<R::Elem> = Vec::with_capacity(trunc + 1);
        inv.push(self.ring.one());
        for n in 1..=trunc {
            let mut acc = self.ring.zero();
            for k in 1..=n {
                acc = self
                    .ring
                    .add(&acc, &self.ring.mul(&self.coeffs[k], &inv[n - k]));
            }
            inv.push(self.ring.neg(&acc));
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: inv,
        })
    }

    /// Substitute t -> t^step, producing a series truncated at `trunc`.
    ///
    /// The source must know its coefficients at least through
    /// `trunc / step`.
    pub fn substitute_power(&self, step: usize, trunc: usize) -> Self {
        assert!(step >= 1);
        assert!(
            self.trunc() >= trunc / step,
            "source series too short for substitution"
        );
        let mut coeffs = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            if n % step == 0 {
                coeffs.push(self.coeffs[n / step].clone());
            } else {
                coeffs.push(self.ring.zero());
            }
        }
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Integer power by repeated squaring, keeping the truncation.
    pub fn pow_uint(&self, exp: &BigUint) -> Self {
        let mut result = TruncatedSeries::one(self.ring.clone(), self.trunc());
        let mut base = self.clone();
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                result = result.mul(&base);
            }
            if i + 1 < bits {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Coefficientwise semantic equality at the same truncation.
    pub fn eq(&self, other: &Self) -> bool {
        self.trunc() == other.trunc() && self.eq_up_to(other, self.trunc())
    }

    /// Coefficientwise semantic equality through degree `n`.
    pub fn eq_up_to(&self, other: &Self, n: usize) -> bool {
        (0..=n).all(|i| self.ring.eq(&self.coeffs[i], &other.coeffs[i]))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| {
            if i == 0 {
                self.ring.is_one(c)
            } else {
                self.ring.is_zero(c)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::IntegerRing;
    use alloc::vec;
    use num_bigint::BigInt;

    fn series(coeffs: &[i64]) -> TruncatedSeries<IntegerRing> {
        TruncatedSeries::from_coeffs(IntegerRing, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn product_of_conjugates() {
        let f = series(&[1, 1, 0, 0]);
        let g = series(&[1, -1, 0, 0]);
        assert!(f.mul(&g).eq(&series(&[1, 0, -1, 0])));
    }

    #[test]
    fn geometric_inverse() {
        let f = series(&[1, -1, 0, 0, 0]);
        assert!(f.inverse().unwrap().eq(&series(&[1, 1, 1, 1, 1])));
        let g = series(&[1, 3, -2, 5, 7]);
        assert!(g.mul(&g.inverse().unwrap()).is_one());
    }

    #[test]
    fn inverse_requires_unit_constant() {
        let f = series(&[2, 1]);
        assert!(f.inverse().is_err());
    }

    #[test]
    fn truncation_consistency() {
        let f = series(&[1, 2, 3, 4, 5]);
        let g = series(&[1, -1, 2, -2, 3]);
        let product_then_truncate = f.mul(&g).truncate(2);
        let truncate_then_product = f.truncate(2).mul(&g.truncate(2));
        assert!(product_then_truncate.eq(&truncate_then_product));
    }

    #[test]
    fn substitution() {
        let f = series(&[1, 5, 7]);
        let sub = f.substitute_power(2, 5);
        assert_eq!(
            sub.coeffs(),
            &vec![1, 0, 5, 0, 7, 0]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()[..]
        );
    }

    #[test]
    fn binary_power() {
        let f = series(&[1, 1, 0, 0, 0]);
        let cube = f.pow_uint(&3u32.into());
        assert!(cube.eq(&series(&[1, 3, 3, 1, 0])));
        assert!(f.pow_uint(&0u32.into()).is_one());
    }
}
