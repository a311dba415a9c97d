//! Burnside rings of small finite groups: subgroup lattices, tables of
//! marks, and symmetric-power generating series. This module is the
//! independent oracle for orbit decompositions computed on the Galois
//! side, and it reproduces the explicit Klein-group series in closed
//! form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::multiset::{multiset_count, sorted_multisets};
use crate::power::binomial;
use crate::{Error, Result};

/// Largest group order handled; subgroup enumeration is exhaustive.
pub const MAX_GROUP_ORDER: usize = 16;

/// Refuse symmetric powers with more than this many multisets.
pub const SYM_SERIES_BOUND: u64 = 1_000_000;

/// A finite permutation group with its element list cached. Element 0
/// is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Vec<usize>>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a . b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0usize; a.len()];
    for (x, &img) in a.iter().enumerate() {
        inv[img] = x;
    }
    inv
}

impl FiniteGroup {
    /// Closure of permutation generators on 0..degree.
    pub fn from_generators(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for gen in generators {
            if gen.len() != degree {
                return Err(Error::InvalidAction("generator degree mismatch".into()));
            }
            let mut seen = alloc::vec![false; degree];
            for &img in gen {
                if img >= degree || seen[img] {
                    return Err(Error::InvalidAction("generator is not a permutation".into()));
                }
                seen[img] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = alloc::vec![identity];
        let mut frontier = alloc::vec![0usize];
        while let Some(idx) = frontier.pop() {
            let current = elements[idx].clone();
            for gen in generators {
                let next = compose(gen, &current);
                if !elements.contains(&next) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::GroupBound(format!(
                            "group order exceeds {MAX_GROUP_ORDER}"
                        )));
                    }
                    elements.push(next);
                    frontier.push(elements.len() - 1);
                }
            }
        }
        elements.sort();
        Ok(FiniteGroup { degree, elements })
    }

    /// A small catalogue of named groups for the CLI.
    pub fn named(name: &str) -> Result<FiniteGroup> {
        let (degree, gens): (usize, Vec<Vec<usize>>) = match name {
            "C1" => (1, alloc::vec![]),
            "C2" => (2, alloc::vec![alloc::vec![1, 0]]),
            "C3" => (3, alloc::vec![alloc::vec![1, 2, 0]]),
            "C4" => (4, alloc::vec![alloc::vec![1, 2, 3, 0]]),
            "V4" => (
                4,
                alloc::vec![alloc::vec![1, 0, 3, 2], alloc::vec![2, 3, 0, 1]],
            ),
            "C5" => (5, alloc::vec![alloc::vec![1, 2, 3, 4, 0]]),
            "C6" => (6, alloc::vec![alloc::vec![1, 2, 3, 4, 5, 0]]),
            "S3" => (
                3,
                alloc::vec![alloc::vec![1, 2, 0], alloc::vec![1, 0, 2]],
            ),
            "C8" => (8, alloc::vec![alloc::vec![1, 2, 3, 4, 5, 6, 7, 0]]),
            "D4" => (
                4,
                alloc::vec![alloc::vec![1, 2, 3, 0], alloc::vec![3, 2, 1, 0]],
            ),
            "Q8" => (
                8,
                // left translations by i and j on 1, -1, i, -i, j, -j, k, -k
                alloc::vec![
                    alloc::vec![2, 3, 1, 0, 6, 7, 5, 4],
                    alloc::vec![4, 5, 7, 6, 1, 0, 2, 3],
                ],
            ),
            "A4" => (
                4,
                alloc::vec![alloc::vec![1, 2, 0, 3], alloc::vec![1, 0, 3, 2]],
            ),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown group {name}; available: C1 C2 C3 C4 V4 C5 C6 S3 C8 D4 Q8 A4"
                )))
            }
        };
        FiniteGroup::from_generators(degree, &gens)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    fn index_of(&self, perm: &[usize]) -> usize {
        self.elements
            .iter()
            .position(|e| e == perm)
            .expect("closed under composition")
    }

    /// Index of g * h.
    fn mul_index(&self, g: usize, h: usize) -> usize {
        self.index_of(&compose(&self.elements[g], &self.elements[h]))
    }

    /// Subgroup generated by a set of element indices, as sorted indices.
    fn generated_subgroup(&self, seed: &[usize]) -> Vec<usize> {
        let mut members = alloc::vec![0usize];
        let mut frontier = alloc::vec![0usize];
        while let Some(g) = frontier.pop() {
            for &s in seed {
                let next = self.mul_index(s, g);
                if !members.contains(&next) {
                    members.push(next);
                    frontier.push(next);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// All subgroups, by closing the cyclic ones under pairwise joins.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut subgroups: Vec<Vec<usize>> = alloc::vec![alloc::vec![0]];
        for g in 0..self.order() {
            let cyclic = self.generated_subgroup(&[g]);
            if !subgroups.contains(&cyclic) {
                subgroups.push(cyclic);
            }
        }
        loop {
            let mut added = false;
            let snapshot = subgroups.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let seed: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                    let join = self.generated_subgroup(&seed);
                    if !subgroups.contains(&join) {
                        subgroups.push(join);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        subgroups.sort_by_key(|h| (h.len(), h.clone()));
        subgroups
    }

    fn conjugate_subgroup(&self, h: &[usize], g: usize) -> Vec<usize> {
        let ge = &self.elements[g];
        let ginv = invert(ge);
        let mut out: Vec<usize> = h
            .iter()
            .map(|&x| self.index_of(&compose(ge, &compose(&self.elements[x], &ginv))))
            .collect();
        out.sort_unstable();
        out
    }

    /// Conjugacy classes of subgroups, each represented by its
    /// lexicographically least member, sorted by (order, members).
    pub fn subgroup_classes(&self) -> Vec<Vec<usize>> {
        let subgroups = self.subgroups();
        let mut reps: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for h in &subgroups {
            if seen.contains(h) {
                continue;
            }
            let mut orbit: Vec<Vec<usize>> = (0..self.order())
                .map(|g| self.conjugate_subgroup(h, g))
                .collect();
            orbit.sort();
            orbit.dedup();
            reps.push(orbit[0].clone());
            seen.extend(orbit);
        }
        reps.sort_by_key(|h| (h.len(), h.clone()));
        reps
    }
}

/// A G-set presented as one permutation of the points per group
/// element, indexed like `FiniteGroup::elements`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Validate an action table against the group: permutations,
    /// trivial identity, compatibility with multiplication.
    pub fn new(group: &FiniteGroup, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::InvalidAction(
                "one permutation per element required".into(),
            ));
        }
        let size = perms.first().map(|p| p.len()).unwrap_or(0);
        for perm in &perms {
            if perm.len() != size {
                return Err(Error::InvalidAction("point count mismatch".into()));
            }
            let mut seen = alloc::vec![false; size];
            for &img in perm {
                if img >= size || seen[img] {
                    return Err(Error::InvalidAction("not a permutation".into()));
                }
                seen[img] = true;
            }
        }
        if perms[0] != (0..size).collect::<Vec<usize>>() {
            return Err(Error::InvalidAction("identity must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul_index(g, h);
                for x in 0..size {
                    if perms[gh][x] != perms[g][perms[h][x]] {
                        return Err(Error::InvalidAction("table is not a group action".into()));
                    }
                }
            }
        }
        Ok(GroupAction { perms })
    }

    /// The group acting on itself by left translation.
    pub fn regular(group: &FiniteGroup) -> Self {
        let perms = (0..group.order())
            .map(|g| (0..group.order()).map(|x| group.mul_index(g, x)).collect())
            .collect();
        GroupAction { perms }
    }

    /// The group acting on the points it permutes natively.
    pub fn natural(group: &FiniteGroup) -> Self {
        GroupAction {
            perms: group.elements().to_vec(),
        }
    }

    /// Coset action on G/H for a subgroup given by element indices.
    pub fn cosets(group: &FiniteGroup, subgroup: &[usize]) -> Self {
        let canon = |g: usize| -> usize {
            subgroup
                .iter()
                .map(|&h| group.mul_index(g, h))
                .min()
                .expect("subgroup nonempty")
        };
        let mut reps: Vec<usize> = (0..group.order()).map(canon).collect();
        reps.sort_unstable();
        reps.dedup();
        let index: BTreeMap<usize, usize> =
            reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let perms = (0..group.order())
            .map(|g| {
                reps.iter()
                    .map(|&rep| index[&canon(group.mul_index(g, rep))])
                    .collect()
            })
            .collect();
        GroupAction { perms }
    }

    pub fn size(&self) -> usize {
        self.perms.first().map(|p| p.len()).unwrap_or(0)
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn disjoint_union(&self, other: &GroupAction) -> GroupAction {
        let n = self.size();
        let perms = self
            .perms
            .iter()
            .zip(&other.perms)
            .map(|(a, b)| {
                a.iter()
                    .copied()
                    .chain(b.iter().map(|&x| x + n))
                    .collect()
            })
            .collect();
        GroupAction { perms }
    }

    pub fn product(&self, other: &GroupAction) -> GroupAction {
        let m = other.size();
        let size = self.size() * m;
        let perms = self
            .perms
            .iter()
            .zip(&other.perms)
            .map(|(a, b)| (0..size).map(|idx| a[idx / m] * m + b[idx % m]).collect())
            .collect();
        GroupAction { perms }
    }

    /// Induced action on size-n multisets.
    pub fn sym_power(&self, n: usize) -> Result<GroupAction> {
        if multiset_count(self.size(), n) > BigInt::from(SYM_SERIES_BOUND) {
            return Err(Error::ResourceBound(format!(
                "symmetric power of a {}-point set at degree {n}",
                self.size()
            )));
        }
        let multisets = sorted_multisets(self.size(), n);
        let index: BTreeMap<Vec<usize>, usize> = multisets
            .iter()
            .enumerate()
            .map(|(i, ms)| (ms.clone(), i))
            .collect();
        let perms = self
            .perms
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
        Ok(GroupAction { perms })
    }

    /// Number of points fixed by every element of a subgroup.
    pub fn fixed_points(&self, subgroup: &[usize]) -> i64 {
        (0..self.size())
            .filter(|&x| subgroup.iter().all(|&g| self.perms[g][x] == x))
            .count() as i64
    }
}

/// The table of marks: rows index transitive sets G/H_i, columns index
/// subgroup classes H_j, entries count fixed points of H_j on G/H_i.
/// Lower triangular with positive diagonal under the (order, members)
/// class ordering.
#[derive(Clone, Debug)]
pub struct TableOfMarks {
    classes: Vec<Vec<usize>>,
    marks: Vec<Vec<i64>>,
}

impl TableOfMarks {
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        let classes = group.subgroup_classes();
        let mut marks = Vec::with_capacity(classes.len());
        for h in &classes {
            let action = GroupAction::cosets(group, h);
            marks.push(
                classes
                    .iter()
                    .map(|k| action.fixed_points(k))
                    .collect::<Vec<i64>>(),
            );
        }
        Ok(TableOfMarks { classes, marks })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn marks(&self) -> &[Vec<i64>] {
        &self.marks
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Solve the triangular mark system to express a G-set in the
    /// basis of transitive sets.
    pub fn decompose(&self, action: &GroupAction) -> Result<BurnsideElement> {
        let k = self.class_count();
        let fixed: Vec<i64> = self
            .classes
            .iter()
            .map(|h| action.fixed_points(h))
            .collect();
        let mut coeffs = alloc::vec![0i64; k];
        for j in (0..k).rev() {
            let mut value = fixed[j];
            for i in j + 1..k {
                value -= coeffs[i] * self.marks[i][j];
            }
            if value % self.marks[j][j] != 0 {
                return Err(Error::InvalidAction(
                    "mark vector is not an integer combination of transitive sets".into(),
                ));
            }
            coeffs[j] = value / self.marks[j][j];
        }
        Ok(BurnsideElement { coeffs })
    }
}

/// An element of the Burnside ring in the transitive basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BurnsideElement {
    coeffs: Vec<i64>,
}

impl BurnsideElement {
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        BurnsideElement { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

/// Coefficients of sum_i [X^(i)] t^i for i <= trunc, by brute-force
/// orbit decomposition of each symmetric power.
pub fn sym_series(
    table: &TableOfMarks,
    action: &GroupAction,
    trunc: usize,
) -> Result<Vec<BurnsideElement>> {
    (0..=trunc)
        .map(|n| table.decompose(&action.sym_power(n)?))
        .collect()
}

/// The closed-form symmetric-power series of the regular Klein-group
/// set:
///
/// (1-t^4)^{-1} [G/G]
/// + 1/2 ((1-t^2)^{-2} - (1-t^4)^{-1}) (sum of the three index-2 quotients)
/// + 1/2 ((1-t^4)^{-1} - 3/2 (1-t^2)^{-2} + 1/2 (1-t)^{-4}) [G/e].
///
/// Degreewise the half-integer weights must combine to integers; this
/// is asserted rather than assumed.
pub fn klein_closed_series(table: &TableOfMarks, trunc: usize) -> Result<Vec<BurnsideElement>> {
    // identify the Klein four-group through its subgroup lattice
    let orders: Vec<usize> = table.classes().iter().map(|h| h.len()).collect();
    if orders != [1, 2, 2, 2, 4] {
        return Err(Error::InvalidInput(
            "closed series requires the Klein four-group".into(),
        ));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let geo4 =
        |n: usize| -> BigRational { BigRational::from_integer(BigInt::from((n % 4 == 0) as u64)) };
    let geo22 = |n: usize| -> BigRational {
        if n % 2 == 0 {
            BigRational::from_integer(BigInt::from(n as u64 / 2 + 1))
        } else {
            BigRational::zero()
        }
    };
    let geo14 = |n: usize| -> BigRational { BigRational::from_integer(binomial(n as u64 + 3, 3)) };
    let to_int = |value: BigRational, n: usize| -> Result<i64> {
        if !value.is_integer() {
            return Err(Error::NonIntegral(format!(
                "klein series coefficient {value} at degree {n}"
            )));
        }
        Ok(i64::try_from(value.to_integer()).expect("desk-scale coefficient"))
    };
    let mut out = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let c_full = to_int(geo4(n), n)?;
        let c_mid = to_int(&half * (geo22(n) - geo4(n)), n)?;
        let c_free = to_int(
            &half
                * (geo4(n) - BigRational::new(BigInt::from(3), BigInt::from(2)) * geo22(n)
                    + &half * geo14(n)),
            n,
        )?;
        out.push(BurnsideElement {
            coeffs: alloc::vec![c_free, c_mid, c_mid, c_mid, c_full],
        })
    }
    Ok(out)
}
