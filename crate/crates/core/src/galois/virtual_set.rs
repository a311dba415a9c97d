//! Virtual Galois sets: the free abelian group on orbit types of a
//! context, with the product induced from honest G-sets. This is the
//! fragment of K_0 of etale algebras spanned by multiquadratic
//! classes, and it carries the symmetric-power structure used as the
//! left-hand side of the trace compatibility checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::field::SquareClass;
use crate::gw::GwElement;
use crate::power::PowerFns;
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

use super::{coset_set, MqContext, Subspace};

/// An integer combination of orbit types (stabilizer subgroups) of one
/// context. Representation is canonical: equality is coefficientwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VirtualGaloisSet {
    context: MqContext,
    coeffs: BTreeMap<Subspace, BigInt>,
}

impl VirtualGaloisSet {
    pub fn zero(context: MqContext) -> Self {
        VirtualGaloisSet {
            context,
            coeffs: BTreeMap::new(),
        }
    }

    /// The class of Spec k: one fixed point, stabilizer all of G.
    pub fn point(context: MqContext) -> Self {
        let full = Subspace::from_members(
            (0..context.rank()).map(|i| 1u32 << i),
        );
        VirtualGaloisSet::orbit(context, full)
    }

    /// The class of a single orbit G/H.
    pub fn orbit(context: MqContext, stabilizer: Subspace) -> Self {
        let mut v = VirtualGaloisSet::zero(context);
        v.add_orbit(stabilizer, BigInt::one());
        v
    }

    pub(crate) fn add_orbit(&mut self, stabilizer: Subspace, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(stabilizer).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.retain(|_, c| !c.is_zero());
        }
    }

    pub fn context(&self) -> &MqContext {
        &self.context
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subspace, &BigInt)> + '_ {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether all coefficients are nonnegative (an honest G-set class).
    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Total number of points, counted virtually.
    pub fn virtual_size(&self) -> BigInt {
        let rank = self.context.rank();
        self.coeffs
            .iter()
            .map(|(h, c)| c * BigInt::from(1u64 << (rank - h.dim())))
            .sum()
    }

    fn check_context(&self, other: &Self, op: &str) -> Result<()> {
        if self.context != other.context {
            return Err(Error::ContextMismatch(format!("{op} over different contexts")));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other, "add")?;
        let mut out = self.clone();
        for (h, c) in &other.coeffs {
            out.add_orbit(h.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        VirtualGaloisSet {
            context: self.context.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(h, c)| (h.clone(), -c))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, scalar: &BigInt) -> Self {
        if scalar.is_zero() {
            return VirtualGaloisSet::zero(self.context.clone());
        }
        VirtualGaloisSet {
            context: self.context.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(h, c)| (h.clone(), c * scalar))
                .collect(),
        }
    }

    /// Product, computed pairwise on representative coset spaces.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other, "mul")?;
        let mut out = VirtualGaloisSet::zero(self.context.clone());
        for (h1, c1) in &self.coeffs {
            let rep1 = coset_set(&self.context, h1)?;
            for (h2, c2) in &other.coeffs {
                let rep2 = coset_set(&self.context, h2)?;
                let product = rep1.product(&rep2)?.decompose();
                for (h, c) in product.coeffs {
                    out.add_orbit(h, c * c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// Human-readable label of an orbit type: the fixed field of its
    /// stabilizer.
    pub fn orbit_label(&self, stabilizer: &Subspace) -> String {
        let chars = stabilizer.annihilator(self.context.rank());
        if chars.dim() == 0 {
            return "k".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for &v in chars.basis() {
            parts.push(format!("sqrt {}", self.context.class_for_mask(v).rep()));
        }
        format!("k({})", parts.join(", "))
    }
}

impl core::fmt::Display for VirtualGaloisSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (h, coeff)) in self.coeffs.iter().enumerate() {
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
            write!(f, "[{}]", self.orbit_label(h))?;
        }
        Ok(())
    }
}

/// The ring of virtual Galois sets over one context.
#[derive(Clone, Debug)]
pub struct VgsRing {
    context: MqContext,
}

impl VgsRing {
    pub fn new(context: MqContext) -> Self {
        VgsRing { context }
    }

    pub fn context(&self) -> &MqContext {
        &self.context
    }
}

impl Ring for VgsRing {
    type Elem = VirtualGaloisSet;

    fn zero(&self) -> VirtualGaloisSet {
        VirtualGaloisSet::zero(self.context.clone())
    }

    fn one(&self) -> VirtualGaloisSet {
        VirtualGaloisSet::point(self.context.clone())
    }

    fn add(&self, a: &VirtualGaloisSet, b: &VirtualGaloisSet) -> VirtualGaloisSet {
        a.add(b).expect("same context within one ring")
    }

    fn neg(&self, a: &VirtualGaloisSet) -> VirtualGaloisSet {
        a.neg()
    }

    fn mul(&self, a: &VirtualGaloisSet, b: &VirtualGaloisSet) -> VirtualGaloisSet {
        a.mul(b).expect("same context within one ring")
    }

    fn eq(&self, a: &VirtualGaloisSet, b: &VirtualGaloisSet) -> bool {
        a == b
    }
}

/// Symmetric powers as the power structure on virtual Galois sets:
/// on an honest orbit the n-th function is the class of the n-th
/// symmetric power, computed by multiset enumeration; sums and
/// negatives go through series convolution and inversion.
#[derive(Clone, Debug)]
pub struct GaloisPower {
    ring: VgsRing,
}

impl GaloisPower {
    pub fn new(context: MqContext) -> Self {
        GaloisPower {
            ring: VgsRing::new(context),
        }
    }

    /// 1 + sum_{j=1}^{trunc} [ (G/H)^{(j)} ] t^j.
    fn orbit_series(&self, stabilizer: &Subspace, trunc: usize) -> Result<TruncatedSeries<VgsRing>> {
        let rep = coset_set(self.ring.context(), stabilizer)?;
        let mut coeffs = Vec::with_capacity(trunc + 1);
        coeffs.push(self.ring.one());
        for j in 1..=trunc {
            coeffs.push(rep.sym_power(j)?.decompose());
        }
        Ok(TruncatedSeries::from_coeffs(self.ring.clone(), coeffs))
    }

    /// The full symmetric-power series (1-t)^{-v}, built in one pass.
    pub fn try_power_series(
        &self,
        v: &VirtualGaloisSet,
        trunc: usize,
    ) -> Result<TruncatedSeries<VgsRing>> {
        let mut acc = TruncatedSeries::one(self.ring.clone(), trunc);
        for (h, coeff) in v.terms() {
            let base = self.orbit_series(h, trunc)?;
            let factor = if coeff.is_negative() {
                base.inverse()?
            } else {
                base
            };
            acc = acc.mul(&factor.pow_uint(coeff.magnitude()));
        }
        Ok(acc)
    }

    /// Fallible core of `a_n`; the trait method unwraps resource errors.
    pub fn try_a_n(&self, v: &VirtualGaloisSet, n: usize) -> Result<VirtualGaloisSet> {
        if n == 0 {
            return Ok(self.ring.one());
        }
        Ok(self.try_power_series(v, n)?.coeff(n).clone())
    }
}

impl PowerFns for GaloisPower {
    type R = VgsRing;

    fn ring(&self) -> &VgsRing {
        &self.ring
    }

    fn a_n(&self, v: &VirtualGaloisSet, n: usize) -> VirtualGaloisSet {
        self.try_a_n(v, n).expect("symmetric power within resource bounds")
    }
}

/// The trace form of a virtual class: an orbit with fixed field
/// k(sqrt b_1, ..., sqrt b_s) contributes prod_j (<2> + <2 b_j>), the
/// fixed point contributes <1>, extended Z-linearly.
pub fn trace_form(v: &VirtualGaloisSet) -> Result<GwElement> {
    let desc = v.context().descriptor();
    let two = desc.class_of_int(2)?;
    let mut acc = GwElement::zero(desc);
    for (h, coeff) in v.terms() {
        let chars = h.annihilator(v.context().rank());
        let mut orbit_trace = GwElement::one(desc);
        for &vchar in chars.basis() {
            let b: SquareClass = v.context().class_for_mask(vchar);
            let factor = GwElement::generator(&two).add(&GwElement::generator(&two.mul(&b)?))?;
            orbit_trace = orbit_trace.mul(&factor)?;
        }
        acc = acc.add(&orbit_trace.scalar_mul(coeff))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::galois::spec_subfield;
    use alloc::vec;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn ctx(classes: &[i64]) -> MqContext {
        MqContext::new(
            q(),
            classes.iter().map(|&a| q().class_of_int(a).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn trace_of_quadratic() {
        let c = ctx(&[3]);
        let pa = spec_subfield(&c, &[1]).unwrap().decompose();
        let tr = trace_form(&pa).unwrap();
        // <2> + <6>
        let expect = GwElement::generator(&q().class_of_int(2).unwrap())
            .add(&GwElement::generator(&q().class_of_int(6).unwrap()))
            .unwrap();
        assert!(tr.is_equal(&expect).unwrap());
    }

    #[test]
    fn trace_of_biquadratic_torsor() {
        let c = ctx(&[2, 3]);
        let torsor = spec_subfield(&c, &[0b01, 0b10]).unwrap().decompose();
        let tr = trace_form(&torsor).unwrap();
        let expect = GwElement::from_terms(
            q(),
            [1i64, 2, 3, 6]
                .into_iter()
                .map(|a| (q().class_of_int(a).unwrap(), BigInt::one())),
        )
        .unwrap();
        assert!(tr.is_equal(&expect).unwrap());
        // basis independence: present the same field via sqrt 2, sqrt 6
        let c26 = ctx(&[2, 6]);
        let alt = spec_subfield(&c26, &[0b01, 0b10]).unwrap().decompose();
        assert!(trace_form(&alt).unwrap().is_equal(&expect).unwrap());
    }

    #[test]
    fn trace_of_point_and_zero() {
        let c = ctx(&[2]);
        let pt = VirtualGaloisSet::point(c.clone());
        assert!(trace_form(&pt)
            .unwrap()
            .is_equal(&GwElement::one(q()))
            .unwrap());
        assert!(trace_form(&VirtualGaloisSet::zero(c))
            .unwrap()
            .is_equal(&GwElement::zero(q()))
            .unwrap());
    }

    #[test]
    fn ring_structure() {
        let c = ctx(&[2]);
        let ring = VgsRing::new(c.clone());
        let p2 = spec_subfield(&c, &[1]).unwrap().decompose();
        // P_2 x P_2 = P_2 + P_2
        let square = ring.mul(&p2, &p2);
        assert_eq!(square, p2.scalar_mul(&2.into()));
        // identity
        assert_eq!(ring.mul(&p2, &ring.one()), p2);
        assert_eq!(square.virtual_size(), 4.into());
    }

    #[test]
    fn power_structure_on_quadratic_class() {
        let c = ctx(&[3]);
        let fns = GaloisPower::new(c.clone());
        let p3_set = spec_subfield(&c, &[1]).unwrap();
        let p3 = p3_set.decompose();
        let pt = VirtualGaloisSet::point(c.clone());
        // odd n: (m+1) copies of P_a; even n: point + m copies
        for n in 0..=6usize {
            let sym = fns.try_a_n(&p3, n).unwrap();
            let expect = if n % 2 == 1 {
                p3.scalar_mul(&BigInt::from((n as u64 + 1) / 2))
            } else {
                pt.add(&p3.scalar_mul(&BigInt::from(n as u64 / 2))).unwrap()
            };
            assert_eq!(sym, expect, "n = {n}");
            // and the engine value matches honest multiset enumeration
            assert_eq!(sym, p3_set.sym_power(n).unwrap().decompose(), "n = {n}");
        }
    }

    #[test]
    fn power_structure_on_virtual_class() {
        // a_2([P_3] - [pt]) through the engine: convolution + negation
        let c = ctx(&[3]);
        let fns = GaloisPower::new(c.clone());
        let p3 = spec_subfield(&c, &[1]).unwrap().decompose();
        let pt = VirtualGaloisSet::point(c.clone());
        let v = p3.sub(&pt).unwrap();
        // (1-t)^{-([X]-[pt])}: a_2 = X^(2) - X pt + pt^2... computed by engine;
        // check by trace compatibility instead of hand expansion
        let lhs = trace_form(&fns.try_a_n(&v, 2).unwrap()).unwrap();
        let gw = crate::gw_power::GwPower::new(q());
        let rhs = gw.a_n(&trace_form(&v).unwrap(), 2);
        assert!(lhs.is_equal(&rhs).unwrap());
    }

    #[test]
    fn labels() {
        let c = ctx(&[2, 3]);
        let v = spec_subfield(&c, &[0b01, 0b10]).unwrap().decompose();
        let (h, _) = v.terms().next().unwrap();
        assert_eq!(v.orbit_label(h), "k(sqrt 3, sqrt 2)");
        let pt = VirtualGaloisSet::point(c);
        let (h, _) = pt.terms().next().unwrap();
        assert_eq!(pt.orbit_label(h), "k");
        let _ = vec![0u8];
    }
}
