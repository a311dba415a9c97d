//! G-sets carrying an extra swap involution commuting with the whole
//! action, and the quadratic twist interleaving that swap into the
//! Galois action.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::field::SquareClass;
use crate::{Error, Result};

use super::{perms_isomorphic, GSet, MqContext, Subspace};

/// A G-set with a distinguished commuting involution.
#[derive(Clone, Debug)]
pub struct EquivariantSet {
    base: GSet,
    swap: Vec<usize>,
}

impl EquivariantSet {
    pub fn new(base: GSet, swap: Vec<usize>) -> Result<Self> {
        if swap.len() != base.size() {
            return Err(Error::InvalidAction("swap length mismatch".into()));
        }
        for x in 0..base.size() {
            if swap[x] >= base.size() || swap[swap[x]] != x {
                return Err(Error::InvalidAction("swap is not an involution".into()));
            }
        }
        for perm in base.action() {
            for x in 0..base.size() {
                if perm[swap[x]] != swap[perm[x]] {
                    return Err(Error::InvalidAction(
                        "swap does not commute with the action".into(),
                    ));
                }
            }
        }
        Ok(EquivariantSet { base, swap })
    }

    pub fn base(&self) -> &GSet {
        &self.base
    }

    pub fn swap(&self) -> &[usize] {
        &self.swap
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    /// Generator involutions plus the swap, as one permutation family.
    pub fn combined_perms(&self) -> Vec<Vec<usize>> {
        let mut perms = self.base.action().to_vec();
        perms.push(self.swap.clone());
        perms
    }

    pub fn disjoint_union(&self, other: &EquivariantSet) -> Result<EquivariantSet> {
        let base = self.base.disjoint_union(&other.base)?;
        let swap = self
            .swap
            .iter()
            .copied()
            .chain(other.swap.iter().map(|&x| x + self.base.size()))
            .collect();
        EquivariantSet::new(base, swap)
    }

    /// Orbit types under the extended group G x <swap>, keyed by
    /// stabilizer subspaces of F_2^{r+1} (last coordinate = swap).
    pub fn orbit_types(&self) -> BTreeMap<Subspace, BigInt> {
        let perms = self.combined_perms();
        let size = self.size();
        let mut seen = alloc::vec![false; size];
        let mut types: BTreeMap<Subspace, BigInt> = BTreeMap::new();
        for start in 0..size {
            if seen[start] {
                continue;
            }
            let mut frontier = alloc::vec![start];
            seen[start] = true;
            while let Some(x) = frontier.pop() {
                for perm in &perms {
                    if !seen[perm[x]] {
                        seen[perm[x]] = true;
                        frontier.push(perm[x]);
                    }
                }
            }
            let stab = Subspace::from_members((0u32..(1 << perms.len())).filter(|&mask| {
                let mut x = start;
                for (i, perm) in perms.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        x = perm[x];
                    }
                }
                x == start
            }));
            *types.entry(stab).or_default() += BigInt::one();
        }
        types
    }

    /// Isomorphism of equivariant sets over the same context, decided
    /// by extended orbit types.
    pub fn is_isomorphic(&self, other: &EquivariantSet) -> Result<bool> {
        if self.base.context() != other.base.context() {
            return Err(Error::ContextMismatch(
                "equivariant isomorphism over different contexts".into(),
            ));
        }
        Ok(self.orbit_types() == other.orbit_types())
    }

    /// Isomorphism by exhaustive equivariant-bijection search over the
    /// extended permutation family.
    pub fn is_isomorphic_by_search(&self, other: &EquivariantSet) -> Result<bool> {
        if self.base.context() != other.base.context() {
            return Err(Error::ContextMismatch(
                "equivariant isomorphism over different contexts".into(),
            ));
        }
        Ok(perms_isomorphic(
            self.size(),
            &self.combined_perms(),
            other.size(),
            &other.combined_perms(),
        ))
    }
}

/// X + X with the swap exchanging the two copies.
pub fn double_swap(x: &GSet) -> EquivariantSet {
    let base = x.disjoint_union(x).expect("same context");
    let n = x.size();
    let swap = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
    EquivariantSet::new(base, swap).expect("construction is equivariant")
}

/// X x X with the swap exchanging coordinates.
pub fn product_swap(x: &GSet) -> EquivariantSet {
    let base = x.product(x).expect("same context");
    let n = x.size();
    let swap = (0..n * n).map(|idx| (idx % n) * n + idx / n).collect();
    EquivariantSet::new(base, swap).expect("construction is equivariant")
}

/// Symmetric power with both the action and the swap induced on
/// multisets.
pub fn sym_power_equivariant(e: &EquivariantSet, n: usize) -> Result<EquivariantSet> {
    let base = e.base().sym_power(n)?;
    let (multisets, index) = e.base().multisets(n)?;
    let swap = multisets
        .iter()
        .map(|ms| {
            let mut image: Vec<usize> = ms.iter().map(|&x| e.swap()[x]).collect();
            image.sort_unstable();
            index[&image]
        })
        .collect();
    EquivariantSet::new(base, swap)
}

/// Twist by the quadratic character of k(sqrt d): every Galois
/// generator pairing nontrivially with d picks up the swap. A square d
/// is the trivial twist; a class outside the context span extends the
/// context by one generator acting through the swap alone.
pub fn twist(e: &EquivariantSet, d: &SquareClass) -> Result<GSet> {
    let (context, mask) = e.base().context().extend(d)?;
    let lifted = e.base().lift_to(&context)?;
    let action = lifted
        .action()
        .iter()
        .enumerate()
        .map(|(i, perm)| {
            if mask & (1 << i) != 0 {
                perm.iter().map(|&x| e.swap()[x]).collect()
            } else {
                perm.clone()
            }
        })
        .collect();
    GSet::new(context, e.size(), action)
}

impl GSet {
    /// Reinterpret over a context extending this one by extra
    /// generators, which act trivially.
    pub fn lift_to(&self, context: &MqContext) -> Result<GSet> {
        if context.rank() < self.context().rank()
            || context.classes()[..self.context().rank()] != *self.context().classes()
        {
            return Err(Error::ContextMismatch(
                "cannot lift: target context does not extend the source".into(),
            ));
        }
        let mut action = self.action().to_vec();
        for _ in self.context().rank()..context.rank() {
            action.push((0..self.size()).collect());
        }
        GSet::new(context.clone(), self.size(), action)
    }
}

/// The right-hand side of the symmetric-power decomposition of
/// X + X with swap: sum over i < n/2 of doubled products
/// X^{(i)} x X^{(n-i)}, plus the coordinate-swapped square of
/// X^{(n/2)} when n is even.
pub fn double_sym_decomposition(x: &GSet, n: usize) -> Result<EquivariantSet> {
    let mut parts: Vec<EquivariantSet> = Vec::new();
    for i in 0..=(n.saturating_sub(1)) / 2 {
        if 2 * i == n {
            break;
        }
        let product = x.sym_power(i)?.product(&x.sym_power(n - i)?)?;
        parts.push(double_swap(&product));
    }
    if n % 2 == 0 {
        parts.push(product_swap(&x.sym_power(n / 2)?));
    }
    let mut acc = parts.pop().expect("n >= 0 always yields a part");
    while let Some(part) = parts.pop() {
        acc = acc.disjoint_union(&part)?;
    }
    Ok(acc)
}
