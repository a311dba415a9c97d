//! Dimension-0 classes: multiquadratic etale algebras as finite sets
//! with an action of G = (Z/2)^r, labelled by square classes of the
//! base field.
//!
//! A context fixes an independent family a_1 .. a_r of square classes;
//! the Galois action on any multiquadratic algebra built from them
//! factors through G, with generator g_i flipping sqrt(a_i). Symmetric
//! powers are enumerated directly on multisets, and classes decompose
//! into orbit types indexed by stabilizer subgroups, i.e. subspaces of
//! F_2^r.

mod compat;
mod equivariant;
mod poly;
mod virtual_set;

pub use compat::{verify_rank_law, verify_trace_compat, CompatLine, CompatReport};
pub use equivariant::{
    double_swap, double_sym_decomposition, product_swap, sym_power_equivariant, twist,
    EquivariantSet,
};
pub use poly::{trace_form_poly, EtalePoly};
pub use virtual_set::{trace_form, GaloisPower, VgsRing, VirtualGaloisSet};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::field::{FieldDescriptor, SquareClass};
use crate::{Error, Result};

/// Largest number of independent square classes in one context.
pub const MAX_CONTEXT_RANK: usize = 12;

/// Refuse symmetric powers with more than this many multisets.
pub const SYM_POWER_BOUND: u64 = 1_000_000;

/// A subspace of F_2^r in reduced echelon form: basis vectors with
/// strictly decreasing leading bits, each pivot cleared from the
/// other vectors. The canonical form makes subspaces usable as map keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subspace {
    basis: Vec<u32>,
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace { basis: Vec::new() }
    }

    /// Echelonize arbitrary spanning vectors.
    ///
    /// The basis is kept fully reduced throughout: pivots strictly
    /// decreasing and absent from every other vector, so equal
    /// subspaces always produce identical bases.
    pub fn from_members<I: IntoIterator<Item = u32>>(members: I) -> Self {
        let mut basis: Vec<u32> = Vec::new();
        for mut v in members {
            for b in &basis {
                if v & (1 << highest_bit(*b)) != 0 {
                    v ^= *b;
                }
            }
            if v == 0 {
                continue;
            }
            let pivot = highest_bit(v);
            for b in basis.iter_mut() {
                if *b & (1 << pivot) != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
            basis.sort_by_key(|b| core::cmp::Reverse(highest_bit(*b)));
        }
        Subspace { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn contains(&self, mut v: u32) -> bool {
        for b in &self.basis {
            let pivot = highest_bit(*b);
            if v & (1 << pivot) != 0 {
                v ^= b;
            }
        }
        v == 0
    }

    /// All 2^dim members.
    pub fn members(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(1 << self.dim());
        for pick in 0u32..(1 << self.dim()) {
            let mut v = 0;
            for (i, b) in self.basis.iter().enumerate() {
                if pick & (1 << i) != 0 {
                    v ^= b;
                }
            }
            out.push(v);
        }
        out
    }

    /// The annihilator under the F_2 dot product on F_2^rank.
    pub fn annihilator(&self, rank: usize) -> Subspace {
        let members = (0u32..(1 << rank))
            .filter(|g| self.basis.iter().all(|v| (g & v).count_ones() % 2 == 0));
        Subspace::from_members(members)
    }
}

fn highest_bit(v: u32) -> u32 {
    31 - v.leading_zeros()
}

/// An ordered independent family of square classes, the base data for
/// every Galois set in scope.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MqContext {
    descriptor: FieldDescriptor,
    classes: Vec<SquareClass>,
}

impl MqContext {
    /// Build a context, checking multiplicative independence: no
    /// nonempty subproduct of the classes may be a square.
    pub fn new(descriptor: FieldDescriptor, classes: Vec<SquareClass>) -> Result<Self> {
        if classes.len() > MAX_CONTEXT_RANK {
            return Err(Error::ResourceBound(format!(
                "context rank {} exceeds {MAX_CONTEXT_RANK}",
                classes.len()
            )));
        }
        for class in &classes {
            if class.descriptor() != descriptor {
                return Err(Error::DescriptorMismatch(format!(
                    "context class {class} over {}",
                    class.descriptor()
                )));
            }
        }
        let ctx = MqContext {
            descriptor,
            classes,
        };
        for mask in 1u32..(1 << ctx.rank()) {
            if ctx.class_for_mask(mask).is_one() {
                return Err(Error::DependentClasses(format!(
                    "product of classes selected by {mask:#b} is a square"
                )));
            }
        }
        Ok(ctx)
    }

    /// The rank-0 context over a field.
    pub fn trivial(descriptor: FieldDescriptor) -> Self {
        MqContext {
            descriptor,
            classes: Vec::new(),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[SquareClass] {
        &self.classes
    }

    /// Product of the classes selected by the bits of `mask`.
    pub fn class_for_mask(&self, mask: u32) -> SquareClass {
        let mut acc = self.descriptor.class_one();
        for (i, class) in self.classes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = acc.mul(class).expect("same descriptor");
            }
        }
        acc
    }

    /// The mask expressing a class as a subproduct, if it lies in the
    /// span of the context.
    pub fn express(&self, class: &SquareClass) -> Option<u32> {
        (0u32..(1 << self.rank())).find(|&mask| self.class_for_mask(mask) == *class)
    }

    /// Express a class, extending the context by one generator when it
    /// is not already in the span. Returns the (possibly new) context
    /// and the expressing mask.
    pub fn extend(&self, class: &SquareClass) -> Result<(MqContext, u32)> {
        if let Some(mask) = self.express(class) {
            return Ok((self.clone(), mask));
        }
        let mut classes = self.classes.clone();
        classes.push(class.clone());
        let ctx = MqContext::new(self.descriptor, classes)?;
        Ok((ctx, 1 << self.rank()))
    }
}

/// A finite set with a (Z/2)^r-action given by commuting involutions,
/// one per context generator.
#[derive(Clone, Debug)]
pub struct GSet {
    context: MqContext,
    size: usize,
    action: Vec<Vec<usize>>,
}

impl GSet {
    /// Validate and build: one involution per generator, pairwise
    /// commuting.
    pub fn new(context: MqContext, size: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != context.rank() {
            return Err(Error::InvalidAction(format!(
                "{} permutations for rank {}",
                action.len(),
                context.rank()
            )));
        }
        for perm in &action {
            if perm.len() != size {
                return Err(Error::InvalidAction("permutation length mismatch".into()));
            }
            let mut seen = alloc::vec![false; size];
            for &img in perm {
                if img >= size || seen[img] {
                    return Err(Error::InvalidAction("not a permutation".into()));
                }
                seen[img] = true;
            }
            for x in 0..size {
                if perm[perm[x]] != x {
                    return Err(Error::InvalidAction("generator is not an involution".into()));
                }
            }
        }
        for a in &action {
            for b in &action {
                for x in 0..size {
                    if a[b[x]] != b[a[x]] {
                        return Err(Error::InvalidAction("generators do not commute".into()));
                    }
                }
            }
        }
        Ok(GSet {
            context,
            size,
            action,
        })
    }

    pub fn context(&self) -> &MqContext {
        &self.context
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// Apply the group element whose generator expansion is `mask`.
    pub fn apply_mask(&self, mask: u32, point: usize) -> usize {
        let mut x = point;
        for (i, perm) in self.action.iter().enumerate() {
            if mask & (1 << i) != 0 {
                x = perm[x];
            }
        }
        x
    }

    fn check_context(&self, other: &GSet, op: &str) -> Result<()> {
        if self.context != other.context {
            return Err(Error::ContextMismatch(format!("{op} over different contexts")));
        }
        Ok(())
    }

    /// Coproduct.
    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        self.check_context(other, "disjoint union")?;
        let size = self.size + other.size;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                a.iter()
                    .copied()
                    .chain(b.iter().map(|&x| x + self.size))
                    .collect()
            })
            .collect();
        GSet::new(self.context.clone(), size, action)
    }

    /// Cartesian product with the diagonal action.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        self.check_context(other, "product")?;
        let size = self.size * other.size;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                (0..size)
                    .map(|idx| {
                        let (i, j) = (idx / other.size, idx % other.size);
                        a[i] * other.size + b[j]
                    })
                    .collect()
            })
            .collect();
        GSet::new(self.context.clone(), size, action)
    }

    /// Size-n multisets of points with the induced action.
    pub fn sym_power(&self, n: usize) -> Result<GSet> {
        let (multisets, index) = self.multisets(n)?;
        let action = self
            .action
            .iter()
            .map(|perm| {
                multisets
                    .iter()
                    .map(|ms| {
                        let mut image: Vec<usize> = ms.iter().map(|&x| perm[x]).collect();
                        image.sort_unstable();
                        index[&image]
                    })
                    .collect()
            })
            .collect();
        GSet::new(self.context.clone(), multisets.len(), action)
    }

    /// Enumerate the sorted multisets of size n, with an index map.
    #[allow(clippy::type_complexity)]
    pub(crate) fn multisets(
        &self,
        n: usize,
    ) -> Result<(Vec<Vec<usize>>, BTreeMap<Vec<usize>, usize>)> {
        let count = crate::multiset::multiset_count(self.size, n);
        if count > BigInt::from(SYM_POWER_BOUND) {
            return Err(Error::ResourceBound(format!(
                "symmetric power would have {count} points"
            )));
        }
        let multisets = crate::multiset::sorted_multisets(self.size, n);
        let index: BTreeMap<Vec<usize>, usize> = multisets
            .iter()
            .enumerate()
            .map(|(i, ms)| (ms.clone(), i))
            .collect();
        Ok((multisets, index))
    }

    /// Connected components under the generator involutions.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.size];
        let mut orbits = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            let mut orbit = alloc::vec![start];
            seen[start] = true;
            let mut frontier = alloc::vec![start];
            while let Some(x) = frontier.pop() {
                for perm in &self.action {
                    let y = perm[x];
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        frontier.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Stabilizer of a point as a subspace of F_2^r; constant on
    /// orbits since G is abelian.
    pub fn stabilizer(&self, point: usize) -> Subspace {
        let rank = self.context.rank();
        Subspace::from_members(
            (0u32..(1 << rank)).filter(|&mask| self.apply_mask(mask, point) == point),
        )
    }

    /// Orbit-type decomposition as a virtual class.
    pub fn decompose(&self) -> VirtualGaloisSet {
        let mut v = VirtualGaloisSet::zero(self.context.clone());
        for orbit in self.orbits() {
            v.add_orbit(self.stabilizer(orbit[0]), BigInt::one());
        }
        v
    }

    /// Isomorphism of G-sets over the same context, decided through
    /// orbit types (complete for abelian G).
    pub fn is_isomorphic(&self, other: &GSet) -> Result<bool> {
        self.check_context(other, "isomorphism")?;
        Ok(self.decompose() == other.decompose())
    }

    /// Isomorphism by exhaustive equivariant-bijection search,
    /// independent of the orbit-type bookkeeping.
    pub fn is_isomorphic_by_search(&self, other: &GSet) -> Result<bool> {
        self.check_context(other, "isomorphism")?;
        Ok(perms_isomorphic(
            self.size,
            &self.action,
            other.size,
            &other.action,
        ))
    }
}

/// Spec of the fixed field of the annihilator of the span of `gens`:
/// the coset space G/H with G acting by translation. Empty `gens`
/// gives Spec k (one fixed point); the full span for r = 1 gives
/// Spec k(sqrt a).
pub fn spec_subfield(context: &MqContext, gens: &[u32]) -> Result<GSet> {
    let rank = context.rank();
    for &g in gens {
        if rank < 32 && g >= (1 << rank) {
            return Err(Error::InvalidInput(format!(
                "generator mask {g:#b} outside F_2^{rank}"
            )));
        }
    }
    let span = Subspace::from_members(gens.iter().copied());
    let stab = span.annihilator(rank);
    coset_set(context, &stab)
}

/// The transitive G-set G/H for a subgroup (= subspace) H.
pub fn coset_set(context: &MqContext, h: &Subspace) -> Result<GSet> {
    let rank = context.rank();
    let members = h.members();
    let canon = |mask: u32| -> u32 {
        members.iter().map(|m| mask ^ m).min().expect("nonempty")
    };
    let mut reps: Vec<u32> = (0u32..(1 << rank)).map(canon).collect();
    reps.sort_unstable();
    reps.dedup();
    let index: BTreeMap<u32, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let action = (0..rank)
        .map(|i| {
            reps.iter()
                .map(|&rep| index[&canon(rep ^ (1 << i))])
                .collect()
        })
        .collect();
    GSet::new(context.clone(), reps.len(), action)
}

/// Equivariant-bijection search between two families of permutations
/// over the same generator list. Complete: extends a partial map orbit
/// by orbit, propagating images along generators.
pub(crate) fn perms_isomorphic(
    size_x: usize,
    perms_x: &[Vec<usize>],
    size_y: usize,
    perms_y: &[Vec<usize>],
) -> bool {
    if size_x != size_y || perms_x.len() != perms_y.len() {
        return false;
    }
    let mut image: Vec<Option<usize>> = alloc::vec![None; size_x];
    let mut used = alloc::vec![false; size_y];
    search(perms_x, perms_y, &mut image, &mut used)
}

fn search(
    perms_x: &[Vec<usize>],
    perms_y: &[Vec<usize>],
    image: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    let x0 = match image.iter().position(|i| i.is_none()) {
        None => return true,
        Some(x) => x,
    };
    for y0 in 0..used.len() {
        if used[y0] {
            continue;
        }
        // propagate x0 -> y0 through the generator action
        let mut trail = Vec::new();
        let mut stack = alloc::vec![(x0, y0)];
        image[x0] = Some(y0);
        used[y0] = true;
        trail.push((x0, y0));
        let mut consistent = true;
        'propagate: while let Some((x, y)) = stack.pop() {
            for (px, py) in perms_x.iter().zip(perms_y) {
                let (xi, yi) = (px[x], py[y]);
                match image[xi] {
                    Some(existing) => {
                        if existing != yi {
                            consistent = false;
                            break 'propagate;
                        }
                    }
                    None => {
                        if used[yi] {
                            consistent = false;
                            break 'propagate;
                        }
                        image[xi] = Some(yi);
                        used[yi] = true;
                        trail.push((xi, yi));
                        stack.push((xi, yi));
                    }
                }
            }
        }
        if consistent && search(perms_x, perms_y, image, used) {
            return true;
        }
        for (x, y) in trail {
            image[x] = None;
            used[y] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power::binomial;
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
    fn subspace_canonical_form() {
        let a = Subspace::from_members([0b01u32, 0b11]);
        let b = Subspace::from_members([0b10u32, 0b01]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(0b11));
        let zero = Subspace::zero();
        assert_eq!(zero.members(), vec![0]);
        assert_eq!(zero.annihilator(2).dim(), 2);
    }

    #[test]
    fn context_independence() {
        assert!(MqContext::new(
            q(),
            vec![
                q().class_of_int(2).unwrap(),
                q().class_of_int(3).unwrap(),
                q().class_of_int(6).unwrap()
            ]
        )
        .is_err());
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        // 2 is the least nonresidue mod 5; a rank-1 context is fine
        assert!(MqContext::new(f5, vec![f5.class_of_int(2).unwrap()]).is_ok());
        assert!(MqContext::new(
            f5,
            vec![f5.class_of_int(2).unwrap(), f5.class_of_int(3).unwrap()]
        )
        .is_err());
    }

    #[test]
    fn context_expression() {
        let c = ctx(&[2, 3]);
        assert_eq!(c.express(&q().class_of_int(6).unwrap()), Some(0b11));
        assert_eq!(c.express(&q().class_one()), Some(0));
        assert_eq!(c.express(&q().class_of_int(5).unwrap()), None);
        let (extended, mask) = c.extend(&q().class_of_int(5).unwrap()).unwrap();
        assert_eq!(extended.rank(), 3);
        assert_eq!(mask, 0b100);
    }

    #[test]
    fn quadratic_spec() {
        let c = ctx(&[2]);
        let p2 = spec_subfield(&c, &[0b1]).unwrap();
        assert_eq!(p2.size(), 2);
        assert_eq!(p2.action()[0], vec![1, 0]);
        let point = spec_subfield(&c, &[]).unwrap();
        assert_eq!(point.size(), 1);
        let c23 = ctx(&[2, 3]);
        let torsor = spec_subfield(&c23, &[0b01, 0b10]).unwrap();
        assert_eq!(torsor.size(), 4);
        assert_eq!(torsor.orbits().len(), 1);
        assert_eq!(torsor.stabilizer(0).dim(), 0);
    }

    #[test]
    fn product_of_quadratic_with_itself_splits() {
        let c = ctx(&[2]);
        let p2 = spec_subfield(&c, &[0b1]).unwrap();
        let prod = p2.product(&p2).unwrap();
        assert_eq!(prod.size(), 4);
        // two orbits of size 2: k(sqrt 2) x k(sqrt 2) = k(sqrt 2)^2
        let orbits = prod.orbits();
        assert_eq!(orbits.len(), 2);
        assert!(orbits.iter().all(|o| o.len() == 2));
        // product with a point is the identity
        let point = spec_subfield(&c, &[]).unwrap();
        assert!(p2.product(&point).unwrap().is_isomorphic(&p2).unwrap());
        // disjoint union
        let both = p2.disjoint_union(&p2).unwrap();
        assert_eq!(both.size(), 4);
        assert_eq!(both.orbits().len(), 2);
        assert!(prod.is_isomorphic(&both).unwrap());
    }

    #[test]
    fn quadratic_sym_powers_alternate() {
        let c = ctx(&[3]);
        let pa = spec_subfield(&c, &[0b1]).unwrap();
        // even: one fixed point plus m copies; odd: m+1 copies
        for n in 0..=10usize {
            let sym = pa.sym_power(n).unwrap();
            let orbits = sym.orbits();
            if n % 2 == 0 {
                let fixed = orbits.iter().filter(|o| o.len() == 1).count();
                let moving = orbits.iter().filter(|o| o.len() == 2).count();
                assert_eq!((fixed, moving), (1, n / 2), "n = {n}");
            } else {
                assert!(orbits.iter().all(|o| o.len() == 2));
                assert_eq!(orbits.len(), n / 2 + 1, "n = {n}");
            }
        }
    }

    #[test]
    fn klein_torsor_square() {
        let c = ctx(&[2, 3]);
        let torsor = spec_subfield(&c, &[0b01, 0b10]).unwrap();
        let sym2 = torsor.sym_power(2).unwrap();
        assert_eq!(sym2.size(), 10);
        let orbits = sym2.orbits();
        assert_eq!(orbits.len(), 4);
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 4]);
        // the three 2-point orbits have the three different index-2 stabilizers
        let mut stabs: Vec<Subspace> = orbits
            .iter()
            .filter(|o| o.len() == 2)
            .map(|o| sym2.stabilizer(o[0]))
            .collect();
        stabs.sort();
        stabs.dedup();
        assert_eq!(stabs.len(), 3);
    }

    #[test]
    fn sym_power_sizes() {
        let c = ctx(&[2, 3]);
        let torsor = spec_subfield(&c, &[0b01, 0b10]).unwrap();
        for n in 0..=5usize {
            let sym = torsor.sym_power(n).unwrap();
            assert_eq!(
                BigInt::from(sym.size() as u64),
                binomial((4 + n - 1) as u64, n as u64)
            );
        }
    }

    #[test]
    fn resource_guard_fires() {
        let c = ctx(&[2, 3, 5]);
        let torsor = spec_subfield(&c, &[0b001, 0b010, 0b100]).unwrap();
        let big = torsor.sym_power(2).unwrap().product(&torsor).unwrap();
        // 36 * 8 = 288 points; sym^6 of that would have ~ 10^11 multisets
        assert!(matches!(
            big.sym_power(6),
            Err(Error::ResourceBound(_))
        ));
    }

    #[test]
    fn search_agrees_with_invariants() {
        let c = ctx(&[2, 3]);
        let torsor = spec_subfield(&c, &[0b01, 0b10]).unwrap();
        let p2 = spec_subfield(&c, &[0b01]).unwrap();
        let p3 = spec_subfield(&c, &[0b10]).unwrap();
        let p6 = spec_subfield(&c, &[0b11]).unwrap();
        let sym2 = torsor.sym_power(2).unwrap();
        let expect = p2
            .disjoint_union(&p3)
            .unwrap()
            .disjoint_union(&p6)
            .unwrap()
            .disjoint_union(&torsor)
            .unwrap();
        assert!(sym2.is_isomorphic(&expect).unwrap());
        assert!(sym2.is_isomorphic_by_search(&expect).unwrap());
        assert!(!p2.is_isomorphic(&p3).unwrap());
        assert!(!p2.is_isomorphic_by_search(&p3).unwrap());
        let two_points = p2.disjoint_union(&p3).unwrap();
        let other = p2.disjoint_union(&p6).unwrap();
        assert!(!two_points.is_isomorphic_by_search(&other).unwrap());
    }
}
