//! Trace forms of Q[x]/(f) for monic squarefree f, via Newton power
//! sums and symmetric congruence diagonalization of the Gram matrix
//! Tr(x^i x^j). These classes carry no modeled Galois data; they feed
//! the rank law only.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{class_of, FieldDescriptor};
use crate::gw::GwElement;
use crate::{Error, Result};

/// A monic squarefree polynomial over Q, the spectrum of an etale
/// algebra of dimension equal to its degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtalePoly {
    /// Coefficients c_0 .. c_m with c_m = 1.
    coeffs: Vec<BigRational>,
}

impl EtalePoly {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput("polynomial must have degree >= 1".into()));
        }
        if !coeffs.last().expect("nonempty").is_one() {
            return Err(Error::InvalidInput("polynomial must be monic".into()));
        }
        let poly = EtalePoly { coeffs };
        if !poly.is_squarefree() {
            return Err(Error::NotSquarefree(format!("{poly}")));
        }
        Ok(poly)
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Result<Self> {
        EtalePoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn is_squarefree(&self) -> bool {
        let derivative: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i as u64)))
            .collect();
        poly_gcd_degree(&self.coeffs, &derivative) == 0
    }

    /// Power sums p_0 .. p_{count-1} of the roots, by Newton's
    /// identities on the monic coefficients.
    pub fn power_sums(&self, count: usize) -> Vec<BigRational> {
        let m = self.degree();
        let c = |j: i64| -> BigRational {
            if j < 0 {
                BigRational::zero()
            } else {
                self.coeffs[j as usize].clone()
            }
        };
        let mut sums: Vec<BigRational> =
            alloc::vec![BigRational::from_integer(BigInt::from(m as u64))];
        for k in 1..count {
            let mut acc = if k <= m {
                -BigRational::from_integer(BigInt::from(k as u64)) * c(m as i64 - k as i64)
            } else {
                BigRational::zero()
            };
            for i in 1..k.min(m + 1) {
                acc -= c(m as i64 - i as i64) * &sums[k - i];
            }
            sums.push(acc);
        }
        sums
    }
}

impl core::fmt::Display for EtalePoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if first && c.is_negative() {
                // leading coefficient is 1; this branch never runs for
                // valid polynomials but keeps rendering total
                write!(f, "-")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Degree of the polynomial gcd over Q; used only for separability.
fn poly_gcd_degree(a: &[BigRational], b: &[BigRational]) -> usize {
    let trim = |p: &[BigRational]| -> Vec<BigRational> {
        let mut v = p.to_vec();
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        v
    };
    let mut a = trim(a);
    let mut b = trim(b);
    while !b.is_empty() {
        // a mod b
        let db = b.len() - 1;
        let lead = b[db].clone();
        while a.len() > db && !a.is_empty() {
            let da = a.len() - 1;
            let factor = &a[da] / &lead;
            if factor.is_zero() {
                break;
            }
            for j in 0..=db {
                let adj = &factor * &b[j];
                a[da - db + j] -= adj;
            }
            a = trim(&a);
            if a.len() <= db {
                break;
            }
        }
        core::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        0
    } else {
        a.len() - 1
    }
}

/// The trace form of Q[x]/(f) as a diagonal Grothendieck-Witt class.
pub fn trace_form_poly(f: &EtalePoly) -> Result<GwElement> {
    let m = f.degree();
    let sums = f.power_sums(2 * m - 1);
    let mut gram: Vec<Vec<BigRational>> = (0..m)
        .map(|i| (0..m).map(|j| sums[i + j].clone()).collect())
        .collect();

    // symmetric congruence diagonalization
    let desc = FieldDescriptor::Rationals;
    let mut result = GwElement::zero(desc);
    for k in 0..m {
        if gram[k][k].is_zero() {
            if let Some(j) = (k + 1..m).find(|&j| !gram[j][j].is_zero()) {
                gram.swap(k, j);
                for row in gram.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..m).find(|&j| !gram[k][j].is_zero()) {
                // add row/col j into k; the new diagonal entry is
                // 2 gram[k][j] != 0 since char = 0
                for idx in 0..m {
                    let adj = gram[j][idx].clone();
                    gram[k][idx] += adj;
                }
                for row in gram.iter_mut() {
                    let adj = row[j].clone();
                    row[k] += adj;
                }
            } else {
                return Err(Error::InvalidInput(
                    "degenerate trace form; polynomial is not separable".into(),
                ));
            }
        }
        let pivot = gram[k][k].clone();
        for j in k + 1..m {
            let factor = &gram[k][j] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for idx in 0..m {
                let adj = &factor * &gram[k][idx];
                gram[j][idx] -= adj;
            }
            for row in gram.iter_mut() {
                let adj = &factor * &row[k];
                row[j] -= adj;
            }
        }
        let entry = desc.element_from_rational(pivot)?;
        result = result.add(&GwElement::generator(&class_of(&entry)?))?;
    }
    Ok(result)
}
