//! Generic power structures: exponentiation of series in 1 + t R[[t]]
//! by ring elements.
//!
//! A power structure is determined by its function family a_n via the
//! geometric series (1-t)^{-r} = 1 + sum a_n(r) t^n. Everything else
//! is derived: a series f factors uniquely as prod_i (1-t^i)^{-b_i}
//! modulo t^{N+1}, and f^r := prod_i (1-t^i)^{-b_i r}.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ring::{IntegerRing, Ring};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// The function family a_n of a power structure on a ring.
///
/// Implementations must be total: a_n is defined for every ring
/// element, including negatives of honest values.
pub trait PowerFns {
    type R: Ring;

    fn ring(&self) -> &Self::R;

    fn a_n(&self, r: &<Self::R as Ring>::Elem, n: usize) -> <Self::R as Ring>::Elem;
}

/// The geometric series (1-t)^{-r} = 1 + a_1(r) t + a_2(r) t^2 + ...
pub fn geom_pow<F: PowerFns>(
    fns: &F,
    r: &<F::R as Ring>::Elem,
    trunc: usize,
) -> TruncatedSeries<F::R> {
    let ring = fns.ring();
    let mut coeffs = Vec::with_capacity(trunc + 1);
    coeffs.push(ring.one());
    for n in 1..=trunc {
        coeffs.push(fns.a_n(r, n));
    }
    TruncatedSeries::from_coeffs(ring.clone(), coeffs)
}

/// a_n(-r) by the negation recurrence
/// `a_n(-r) = -(sum_{i=1}^{n} a_i(r) a_{n-i}(-r))` with `a_0(-r) = 1`,
/// i.e. the coefficients of the series inverse of (1-t)^{-r}.
pub fn neg_power_fn<F: PowerFns>(
    fns: &F,
    r: &<F::R as Ring>::Elem,
    n: usize,
) -> <F::R as Ring>::Elem {
    let ring = fns.ring();
    let mut neg: Vec<<F::R as Ring>::Elem> = Vec::with_capacity(n + 1);
    neg.push(ring.one());
    for m in 1..=n {
        let mut acc = ring.zero();
        for i in 1..=m {
            acc = ring.add(&acc, &ring.mul(&fns.a_n(r, i), &neg[m - i]));
        }
        neg.push(ring.neg(&acc));
    }
    neg.pop().expect("n + 1 entries")
}

/// The exponents b_1 .. b_N of the unique factorization
/// f = prod_{i >= 1} (1-t^i)^{-b_i} modulo t^{N+1}.
pub fn decompose<F: PowerFns>(
    fns: &F,
    f: &TruncatedSeries<F::R>,
) -> Result<Vec<<F::R as Ring>::Elem>> {
    if !f.has_unit_constant() {
        return Err(Error::LeadingCoeffNotOne(format!("{:?}", f.coeff(0))));
    }
    let ring = fns.ring();
    let trunc = f.trunc();
    let mut remainder = f.clone();
    let mut exponents = Vec::with_capacity(trunc);
    for i in 1..=trunc {
        let b = remainder.coeff(i).clone();
        if !ring.is_zero(&b) {
            let peel = geom_pow(fns, &b, trunc / i)
                .substitute_power(i, trunc)
                .inverse()?;
            remainder = remainder.mul(&peel);
        }
        exponents.push(b);
    }
    Ok(exponents)
}

/// Reassemble prod_i (1-t^i)^{-b_i} from decomposition exponents.
pub fn recompose<F: PowerFns>(
    fns: &F,
    exponents: &[<F::R as Ring>::Elem],
    trunc: usize,
) -> TruncatedSeries<F::R> {
    let ring = fns.ring();
    let mut acc = TruncatedSeries::one(ring.clone(), trunc);
    for (idx, b) in exponents.iter().enumerate() {
        let i = idx + 1;
        if i > trunc {
            break;
        }
        if !ring.is_zero(b) {
            acc = acc.mul(&geom_pow(fns, b, trunc / i).substitute_power(i, trunc));
        }
    }
    acc
}

/// f^r for f in 1 + t R[[t]]: decompose f and exponentiate factorwise,
/// (1-t^i)^{-b_i} becoming (1-t^i)^{-b_i r}.
pub fn pow<F: PowerFns>(
    fns: &F,
    f: &TruncatedSeries<F::R>,
    r: &<F::R as Ring>::Elem,
) -> Result<TruncatedSeries<F::R>> {
    let ring = fns.ring();
    let trunc = f.trunc();
    let exponents = decompose(fns, f)?;
    let mut acc = TruncatedSeries::one(ring.clone(), trunc);
    for (idx, b) in exponents.iter().enumerate() {
        let i = idx + 1;
        let e = ring.mul(b, r);
        if !ring.is_zero(&e) {
            acc = acc.mul(&geom_pow(fns, &e, trunc / i).substitute_power(i, trunc));
        }
    }
    Ok(acc)
}

/// A failed power-structure axiom on a concrete sample.
#[derive(Clone, Debug)]
pub struct AxiomViolation {
    pub axiom: u8,
    pub detail: String,
}

/// Check the seven power-structure axioms on sample data, modulo
/// t^{trunc+1}. Axiom 4 is the addition law f^{r+s} = f^r f^s.
///
/// Elements are paired as (r, s) = (elems[k], elems[k+1]) and series as
/// (f, g) = (series[k], series[k+1]), cyclically.
pub fn check_axioms<F: PowerFns>(
    fns: &F,
    elems: &[<F::R as Ring>::Elem],
    series: &[TruncatedSeries<F::R>],
    trunc: usize,
) -> Result<Vec<AxiomViolation>> {
    let ring = fns.ring();
    let mut violations = Vec::new();
    let mut report = |axiom: u8, detail: String| {
        violations.push(AxiomViolation { axiom, detail });
    };

    for (k, f) in series.iter().enumerate() {
        let partner = &series[(k + 1) % series.len()];
        let n = trunc.min(f.trunc()).min(partner.trunc());
        let f = f.truncate(n);
        let g = partner.truncate(n);
        let r = &elems[k % elems.len()];
        let s = &elems[(k + 1) % elems.len()];

        // 1: f^0 = 1
        if !pow(fns, &f, &ring.zero())?.is_one() {
            report(1, format!("sample {k}: f^0 != 1"));
        }
        // 2: f^1 = f
        if !pow(fns, &f, &ring.one())?.eq(&f) {
            report(2, format!("sample {k}: f^1 != f"));
        }
        // 3: (fg)^r = f^r g^r
        let fg_r = pow(fns, &f.mul(&g), r)?;
        let fr_gr = pow(fns, &f, r)?.mul(&pow(fns, &g, r)?);
        if !fg_r.eq(&fr_gr) {
            report(3, format!("sample {k}: (fg)^r != f^r g^r"));
        }
        // 4: f^{r+s} = f^r f^s
        let f_rs = pow(fns, &f, &ring.add(r, s))?;
        let fr_fs = pow(fns, &f, r)?.mul(&pow(fns, &f, s)?);
        if !f_rs.eq(&fr_fs) {
            report(4, format!("sample {k}: f^(r+s) != f^r f^s"));
        }
        // 5: f^{rs} = (f^r)^s
        let f_prod = pow(fns, &f, &ring.mul(r, s))?;
        let iterated = pow(fns, &pow(fns, &f, r)?, s)?;
        if !f_prod.eq(&iterated) {
            report(5, format!("sample {k}: f^(rs) != (f^r)^s"));
        }
        // 6: (1+t)^m = 1 + mt + O(t^2)
        let mut one_plus_t = TruncatedSeries::one(ring.clone(), f.trunc());
        if f.trunc() >= 1 {
            let coeffs = {
                let mut c = one_plus_t.coeffs().to_vec();
                c[1] = ring.one();
                c
            };
            one_plus_t = TruncatedSeries::from_coeffs(ring.clone(), coeffs);
            let powed = pow(fns, &one_plus_t, r)?;
            if !ring.eq(powed.coeff(1), r) {
                report(6, format!("sample {k}: coefficient of t in (1+t)^m is not m"));
            }
        }
        // 7: if g = f^m then f(t^i)^m = g(t^i)
        let powed = pow(fns, &f, r)?;
        for step in [2usize, 3] {
            let lhs = pow(fns, &f.substitute_power(step, f.trunc()), r)?;
            let rhs = powed.substitute_power(step, f.trunc());
            if !lhs.eq(&rhs) {
                report(7, format!("sample {k}: f(t^{step})^m != g(t^{step})"));
            }
        }
    }
    Ok(violations)
}

/// The classical power structure on the integers:
/// a_n(m) = C(m+n-1, n), the coefficients of (1-t)^{-m}.
#[derive(Clone, Copy, Debug, Default)]
pub struct Binomial;

impl Binomial {
    /// C(m+n-1, n) as a rising factorial divided by n!; exact for all
    /// integer m, negative ones included.
    pub fn coefficient(m: &BigInt, n: usize) -> BigInt {
        if n == 0 {
            return BigInt::one();
        }
        let mut num = BigInt::one();
        for j in 0..n {
            num *= m + BigInt::from(j as u64);
        }
        let mut den = BigInt::one();
        for j in 1..=n {
            den *= BigInt::from(j as u64);
        }
        let (q, r) = num.div_rem(&den);
        debug_assert!(r.is_zero(), "binomial coefficient must be integral");
        q
    }
}

impl PowerFns for Binomial {
    type R = IntegerRing;

    fn ring(&self) -> &IntegerRing {
        &IntegerRing
    }

    fn a_n(&self, r: &BigInt, n: usize) -> BigInt {
        Binomial::coefficient(r, n)
    }
}

/// Binomial coefficient C(a, b) for the rank laws.
pub fn binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..b {
        num *= BigInt::from(a - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::{vec, vec::Vec};

    fn zseries(coeffs: &[i64]) -> TruncatedSeries<IntegerRing> {
        TruncatedSeries::from_coeffs(IntegerRing, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn geometric_series_of_three() {
        let s = geom_pow(&Binomial, &BigInt::from(3), 3);
        assert_eq!(
            s.coeffs(),
            &[1, 3, 6, 10].map(BigInt::from)
        );
        assert!(geom_pow(&Binomial, &BigInt::zero(), 4).is_one());
    }

    #[test]
    fn negation_recurrence() {
        let one = BigInt::one();
        assert_eq!(neg_power_fn(&Binomial, &one, 1), BigInt::from(-1));
        assert_eq!(neg_power_fn(&Binomial, &one, 2), BigInt::zero());
        assert_eq!(neg_power_fn(&Binomial, &one, 0), BigInt::one());
        // consistency: geom(r) * series-from-neg-recurrence(-r) = 1
        let r = BigInt::from(4);
        let geom = geom_pow(&Binomial, &r, 6);
        let neg_coeffs: Vec<BigInt> = (0..=6).map(|n| neg_power_fn(&Binomial, &r, n)).collect();
        let neg_series = TruncatedSeries::from_coeffs(IntegerRing, neg_coeffs);
        assert!(geom.mul(&neg_series).is_one());
        // and it matches a_n(-r) directly
        assert_eq!(
            neg_power_fn(&Binomial, &r, 5),
            Binomial::coefficient(&-r, 5)
        );
    }

    #[test]
    fn decompose_examples() {
        // 1 + t = (1-t)^{-1} (1-t^2)
        let f = zseries(&[1, 1, 0, 0, 0, 0]);
        let bs = decompose(&Binomial, &f).unwrap();
        assert_eq!(bs, [1, -1, 0, 0, 0].map(BigInt::from));
        assert!(recompose(&Binomial, &bs, 5).eq(&f));

        // 1 + t + t^2 = (1-t^3)/(1-t)
        let g = zseries(&[1, 1, 1, 0, 0, 0]);
        let bs = decompose(&Binomial, &g).unwrap();
        assert_eq!(bs, [1, 0, -1, 0, 0].map(BigInt::from));

        // (1-t)^{-r} decomposes as b_1 = r alone
        let geom = geom_pow(&Binomial, &BigInt::from(7), 5);
        let bs = decompose(&Binomial, &geom).unwrap();
        assert_eq!(bs, [7, 0, 0, 0, 0].map(BigInt::from));

        let bad = zseries(&[2, 1]);
        assert!(decompose(&Binomial, &bad).is_err());
    }

    #[test]
    fn pow_binomial() {
        let one_minus_t = zseries(&[1, -1, 0, 0, 0, 0]);
        let s = pow(&Binomial, &one_minus_t, &BigInt::from(-2)).unwrap();
        assert_eq!(s.coeffs(), &[1, 2, 3, 4, 5, 6].map(BigInt::from));
        assert!(pow(&Binomial, &one_minus_t, &BigInt::zero())
            .unwrap()
            .is_one());
        assert!(pow(&Binomial, &one_minus_t, &BigInt::one())
            .unwrap()
            .eq(&one_minus_t));
    }

    #[test]
    fn integer_axioms_hold() {
        let elems: Vec<BigInt> = vec![0, 1, -1, 2, 3, -4, 5]
            .into_iter()
            .map(BigInt::from)
            .collect();
        let series = vec![
            zseries(&[1, 1, 0, 0, 0, 0, 0, 0, 0]),
            zseries(&[1, -2, 3, 0, 1, 0, 0, 0, 0]),
            zseries(&[1, 0, 1, 0, 2, 0, 0, 0, 0]),
            zseries(&[1, 5, -1, 2, 0, 3, 0, 0, 0]),
        ];
        let violations = check_axioms(&Binomial, &elems, &series, 8).unwrap();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn corrupted_structure_is_caught() {
        // a_2 deliberately wrong: breaks the addition law (axiom 4)
        #[derive(Clone)]
        struct Corrupted;
        impl PowerFns for Corrupted {
            type R = IntegerRing;
            fn ring(&self) -> &IntegerRing {
                &IntegerRing
            }
            fn a_n(&self, r: &BigInt, n: usize) -> BigInt {
                let honest = Binomial::coefficient(r, n);
                if n == 2 {
                    honest + BigInt::one()
                } else {
                    honest
                }
            }
        }
        let elems: Vec<BigInt> = vec![2, 3].into_iter().map(BigInt::from).collect();
        let series = vec![zseries(&[1, 1, 0, 0, 0])];
        let violations = check_axioms(&Corrupted, &elems, &series, 4).unwrap();
        assert!(violations.iter().any(|v| v.axiom == 4), "{violations:?}");
    }

    #[test]
    fn plain_binomial() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(6, 0), BigInt::one());
    }
}
