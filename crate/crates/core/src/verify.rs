//! Named verification suites. Each suite runs one family of identities
//! at a fixed scale and reports per-check verdicts; the CLI `verify`
//! subcommands and the acceptance tests both call these functions, so
//! there is a single source of truth for what gets checked.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::burnside::{klein_closed_series, sym_series, FiniteGroup, GroupAction, TableOfMarks};
use crate::field::{hilbert_product, hilbert_symbol, FieldDescriptor, Place, SquareClass};
use crate::galois::{
    double_swap, double_sym_decomposition, spec_subfield, sym_power_equivariant, trace_form,
    trace_form_poly, twist, verify_rank_law, verify_trace_compat, EtalePoly, GSet, MqContext,
    Subspace, VirtualGaloisSet,
};
use crate::gw::{GwElement, GwRing};
use crate::gw_power::{agrees_with_classical, classical_sn_generator, GwPower};
use crate::power::{check_axioms, decompose, recompose, Binomial, PowerFns};
use crate::ring::IntegerRing;
use crate::series::TruncatedSeries;
use crate::Result;

/// One named check with printable sides.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    fn new(
        name: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            pass,
        }
    }

    /// A check counting failures against an expected zero.
    fn failures(name: impl Into<String>, failures: usize, total: usize) -> Self {
        Check {
            name: name.into(),
            lhs: format!("{failures} failures of {total}"),
            rhs: "0 failures".into(),
            pass: failures == 0,
        }
    }
}

/// A suite of checks run at a fixed scale.
#[derive(Clone, Debug)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failure_count(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

/// Fixed default seed so reports are reproducible run to run.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(rng: &mut ChaCha8Rng, height: i64) -> BigRational {
    let mut numer = 0i64;
    while numer == 0 {
        numer = rng.random_range(-height..=height);
    }
    let denom = rng.random_range(1..=height);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

fn random_class(rng: &mut ChaCha8Rng, desc: FieldDescriptor, height: i64) -> Result<SquareClass> {
    match desc {
        FieldDescriptor::PrimeField(p) => {
            let r = rng.random_range(1..p) as i64;
            desc.class_of_int(r)
        }
        _ => {
            let value = random_rational(rng, height);
            crate::field::class_of(&desc.element_from_rational(value)?)
        }
    }
}

fn random_gw_element(
    rng: &mut ChaCha8Rng,
    desc: FieldDescriptor,
    max_terms: usize,
    height: i64,
) -> Result<GwElement> {
    let terms = rng.random_range(0..=max_terms);
    let mut out = GwElement::zero(desc);
    for _ in 0..terms {
        let class = random_class(rng, desc, height)?;
        let coeff = loop {
            let c = rng.random_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        out = out.add(&GwElement::generator(&class).scalar_mul(&BigInt::from(coeff)))?;
    }
    Ok(out)
}

// ---------------------------------------------------------------- axioms

/// Power-structure axioms for the classical binomial structure on Z.
pub fn axioms_integer_suite(samples: usize, trunc: usize, seed: u64) -> Result<Suite> {
    let mut rng = rng(seed);
    let mut elems: Vec<BigInt> = alloc::vec![BigInt::zero(), BigInt::one()];
    let mut series: Vec<TruncatedSeries<IntegerRing>> = Vec::new();
    for _ in 0..samples {
        elems.push(BigInt::from(rng.random_range(-6i64..=6)));
        let coeffs: Vec<BigInt> = core::iter::once(BigInt::one())
            .chain((0..trunc).map(|_| BigInt::from(rng.random_range(-4i64..=4))))
            .collect();
        series.push(TruncatedSeries::from_coeffs(IntegerRing, coeffs));
    }
    let violations = check_axioms(&Binomial, &elems, &series, trunc)?;
    let checks = (1u8..=7)
        .map(|axiom| {
            let count = violations.iter().filter(|v| v.axiom == axiom).count();
            Check::failures(format!("axiom {axiom} over Z"), count, samples)
        })
        .collect();
    Ok(Suite {
        name: "axioms(Z)".into(),
        checks,
    })
}

/// Power-structure axioms for the Grothendieck-Witt structure of one field.
pub fn axioms_gw_suite(
    desc: FieldDescriptor,
    samples: usize,
    trunc: usize,
    seed: u64,
) -> Result<Suite> {
    let mut rng = rng(seed);
    let fns = GwPower::new(desc);
    let ring = GwRing::new(desc);
    let mut elems: Vec<GwElement> = alloc::vec![GwElement::zero(desc), GwElement::one(desc)];
    let mut series: Vec<TruncatedSeries<GwRing>> = Vec::new();
    for _ in 0..samples {
        elems.push(random_gw_element(&mut rng, desc, 3, 50)?);
        let coeffs: Vec<GwElement> = core::iter::once(GwElement::one(desc))
            .chain(
                (0..trunc)
                    .map(|_| random_gw_element(&mut rng, desc, 2, 20))
                    .collect::<Result<Vec<_>>>()?,
            )
            .collect();
        series.push(TruncatedSeries::from_coeffs(ring.clone(), coeffs));
    }
    let violations = check_axioms(&fns, &elems, &series, trunc)?;
    let checks = (1u8..=7)
        .map(|axiom| {
            let count = violations.iter().filter(|v| v.axiom == axiom).count();
            Check::failures(format!("axiom {axiom} over GW({desc})"), count, samples)
        })
        .collect();
    Ok(Suite {
        name: format!("axioms(GW({desc}))"),
        checks,
    })
}

/// The full axiom battery: Z plus six concrete coefficient rings.
pub fn axioms_full_suite(samples: usize, trunc: usize, seed: u64) -> Result<Suite> {
    let mut checks = Vec::new();
    checks.extend(axioms_integer_suite(samples, trunc, seed)?.checks);
    for desc in [
        FieldDescriptor::Rationals,
        FieldDescriptor::prime_field(3)?,
        FieldDescriptor::prime_field(5)?,
        FieldDescriptor::prime_field(7)?,
        FieldDescriptor::RealClosed,
        FieldDescriptor::ComplexClosed,
    ] {
        checks.extend(axioms_gw_suite(desc, samples, trunc, seed)?.checks);
    }
    Ok(Suite {
        name: "axioms".into(),
        checks,
    })
}

// ------------------------------------------------------- well-definedness

/// a_n descends through the defining relations of the Grothendieck-Witt
/// presentation: square scaling and the chain relation.
pub fn welldef_suite(pairs: usize, n_max: usize, height: i64, seed: u64) -> Result<Suite> {
    let desc = FieldDescriptor::Rationals;
    let mut rng = rng(seed);
    let fns = GwPower::new(desc);
    let mut scaling_failures = 0usize;
    let mut chain_failures = 0usize;
    for _ in 0..pairs {
        let (a, b) = loop {
            let a = random_rational(&mut rng, height);
            let b = random_rational(&mut rng, height);
            if !(&a + &b).is_zero() {
                break (a, b);
            }
        };
        let elem = |q: &BigRational| desc.element_from_rational(q.clone());
        let class_a = crate::field::class_of(&elem(&a)?)?;
        let class_b = crate::field::class_of(&elem(&b)?)?;
        let class_ab2 = crate::field::class_of(&elem(&(&a * &b * &b))?)?;
        let sum = &a + &b;
        let class_sum = crate::field::class_of(&elem(&sum)?)?;
        let class_sab = crate::field::class_of(&elem(&(&sum * &a * &b))?)?;

        let gen_a = GwElement::generator(&class_a);
        let gen_ab2 = GwElement::generator(&class_ab2);
        let pair_lhs = gen_a.add(&GwElement::generator(&class_b))?;
        let pair_rhs = GwElement::generator(&class_sum).add(&GwElement::generator(&class_sab))?;
        for n in 0..=n_max {
            if !fns.a_n(&gen_a, n).is_equal(&fns.a_n(&gen_ab2, n))? {
                scaling_failures += 1;
            }
            if !fns.a_n(&pair_lhs, n).is_equal(&fns.a_n(&pair_rhs, n))? {
                chain_failures += 1;
            }
        }
    }
    Ok(Suite {
        name: "welldef".into(),
        checks: alloc::vec![
            Check::failures(
                format!("a_n(<a>) = a_n(<a b^2>), {pairs} pairs, n <= {n_max}"),
                scaling_failures,
                pairs * (n_max + 1),
            ),
            Check::failures(
                format!("a_n(<a>+<b>) = a_n(<a+b>+<(a+b)ab>), {pairs} pairs, n <= {n_max}"),
                chain_failures,
                pairs * (n_max + 1),
            ),
        ],
    })
}

// ------------------------------------------------------ quadratic closed

/// Symmetric powers of quadratic spectra against the closed forms: the
/// orbit shape alternates with parity, and the trace forms are
/// (n+1)/2 (<2> + <2a>) for odd n and <1> + n/2 (<2> + <2a>) for even.
pub fn quadratic_suite(n_max: usize) -> Result<Suite> {
    let desc = FieldDescriptor::Rationals;
    let mut checks = Vec::new();
    for a in [2i64, 3, 5, -1] {
        let class = desc.class_of_int(a)?;
        let ctx = MqContext::new(desc, alloc::vec![class.clone()])?;
        let pa = spec_subfield(&ctx, &[1])?;
        let pa_class = pa.decompose();
        let pt = VirtualGaloisSet::point(ctx.clone());
        let two = GwElement::generator(&desc.class_of_int(2)?);
        let two_a = GwElement::generator(&desc.class_of_int(2 * a)?);
        let quad_trace = two.add(&two_a)?;
        let mut shape_failures = 0usize;
        let mut trace_failures = 0usize;
        for n in 0..=n_max {
            let sym = pa.sym_power(n)?;
            let expect_shape = if n % 2 == 1 {
                pa_class.scalar_mul(&BigInt::from((n as u64 + 1) / 2))
            } else {
                pt.add(&pa_class.scalar_mul(&BigInt::from(n as u64 / 2)))?
            };
            if sym.decompose() != expect_shape {
                shape_failures += 1;
            }
            let trace = trace_form(&sym.decompose())?;
            let expect_trace = if n % 2 == 1 {
                quad_trace.scalar_mul(&BigInt::from((n as u64 + 1) / 2))
            } else {
                GwElement::one(desc).add(&quad_trace.scalar_mul(&BigInt::from(n as u64 / 2)))?
            };
            if !trace.is_equal(&expect_trace)? {
                trace_failures += 1;
            }
        }
        checks.push(Check::failures(
            format!("sym^n(P_{a}) orbit shape, n <= {n_max}"),
            shape_failures,
            n_max + 1,
        ));
        checks.push(Check::failures(
            format!("trace(sym^n(P_{a})) closed form, n <= {n_max}"),
            trace_failures,
            n_max + 1,
        ));
    }
    Ok(Suite {
        name: "quadratic".into(),
        checks,
    })
}

// ------------------------------------------------------------- burnside

const BIQUADRATIC_PAIRS: [(i64, i64); 3] = [(2, 3), (-1, 2), (3, 5)];

/// Brute-force symmetric-power series of biquadratic torsors against
/// the closed Klein-group series.
pub fn burnside_series_suite(trunc: usize) -> Result<Suite> {
    let desc = FieldDescriptor::Rationals;
    let mut checks = Vec::new();
    for (alpha, beta) in BIQUADRATIC_PAIRS {
        let ctx = MqContext::new(
            desc,
            alloc::vec![desc.class_of_int(alpha)?, desc.class_of_int(beta)?],
        )?;
        let torsor = spec_subfield(&ctx, &[0b01, 0b10])?;
        let group = FiniteGroup::from_generators(torsor.size(), torsor.action())?;
        let table = TableOfMarks::new(&group)?;
        let action = GroupAction::natural(&group);
        let brute = sym_series(&table, &action, trunc)?;
        let closed = klein_closed_series(&table, trunc)?;
        let failures = brute.iter().zip(&closed).filter(|(b, c)| b != c).count();
        checks.push(Check::failures(
            format!(
                "sym series of Q(sqrt {alpha}, sqrt {beta}) torsor vs closed form, n <= {trunc}"
            ),
            failures,
            trunc + 1,
        ));
    }
    Ok(Suite {
        name: "burnside".into(),
        checks,
    })
}

/// Trace forms of biquadratic symmetric powers against the closed
/// three-case formula.
pub fn biquadratic_trace_suite(trunc: usize) -> Result<Suite> {
    let desc = FieldDescriptor::Rationals;
    let mut checks = Vec::new();
    for (alpha, beta) in BIQUADRATIC_PAIRS {
        let class_a = desc.class_of_int(alpha)?;
        let class_b = desc.class_of_int(beta)?;
        let ctx = MqContext::new(desc, alloc::vec![class_a.clone(), class_b.clone()])?;
        let torsor = spec_subfield(&ctx, &[0b01, 0b10])?;
        let mut failures = 0usize;
        for n in 0..=trunc {
            let trace = trace_form(&torsor.sym_power(n)?.decompose())?;
            let closed = crate::gw_power::closed_biquadratic(&class_a, &class_b, n)?;
            if !trace.is_equal(&closed)? {
                failures += 1;
            }
        }
        checks.push(Check::failures(
            format!("trace(sym^n Q(sqrt {alpha}, sqrt {beta})) vs closed form, n <= {trunc}"),
            failures,
            trunc + 1,
        ));
    }
    Ok(Suite {
        name: "biquadratic".into(),
        checks,
    })
}

// ---------------------------------------------------------- compat sweep

/// All subspaces of F_2^rank, via spans of small subsets.
fn all_subspaces(rank: usize) -> Vec<Subspace> {
    let vectors: Vec<u32> = (1u32..(1 << rank)).collect();
    let mut out: Vec<Subspace> = alloc::vec![Subspace::zero()];
    // every subspace has a basis of at most `rank` vectors
    let mut stack: Vec<(usize, Vec<u32>)> = alloc::vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if !chosen.is_empty() {
            let space = Subspace::from_members(chosen.iter().copied());
            if !out.contains(&space) {
                out.push(space);
            }
        }
        if chosen.len() < rank {
            for (offset, &v) in vectors.iter().enumerate().skip(start) {
                let mut next = chosen.clone();
                next.push(v);
                stack.push((offset + 1, next));
            }
        }
    }
    out.sort();
    out
}

/// The subfield spectra of a context: one G-set per subspace of
/// characters.
fn subfield_spectra(ctx: &MqContext) -> Result<Vec<GSet>> {
    all_subspaces(ctx.rank())
        .into_iter()
        .map(|space| spec_subfield(ctx, space.basis()))
        .collect()
}

/// Sums of at most `max_components` subfield spectra (with repetition).
fn spectra_multisets(spectra: &[GSet], max_components: usize) -> Result<Vec<VirtualGaloisSet>> {
    let mut subjects = Vec::new();
    for count in 1..=max_components {
        for multiset in crate::multiset::sorted_multisets(spectra.len(), count) {
            let mut acc = VirtualGaloisSet::zero(spectra[0].context().clone());
            for &idx in &multiset {
                acc = acc.add(&spectra[idx].decompose())?;
            }
            subjects.push(acc);
        }
    }
    Ok(subjects)
}

const SWEEP_CLASSES: [i64; 4] = [-1, 2, 3, 5];

fn sweep_contexts() -> Result<Vec<MqContext>> {
    let desc = FieldDescriptor::Rationals;
    let mut out = Vec::new();
    // the four rank-3 contexts cover every algebra built from rank <= 3
    // subsets of the class pool
    for skip in 0..SWEEP_CLASSES.len() {
        let classes: Vec<SquareClass> = SWEEP_CLASSES
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, &a)| desc.class_of_int(a))
            .collect::<Result<Vec<_>>>()?;
        out.push(MqContext::new(desc, classes)?);
    }
    Ok(out)
}

/// The main compatibility sweep: trace(sym^n A) = a_n(trace A) for all
/// multiquadratic algebras with at most three components over rank-3
/// contexts built from {-1, 2, 3, 5}, plus two virtual combinations.
pub fn compat_sweep_suite(n_max: usize) -> Result<Suite> {
    let mut checks = Vec::new();
    for ctx in sweep_contexts()? {
        let spectra = subfield_spectra(&ctx)?;
        let subjects = spectra_multisets(&spectra, 3)?;
        let total = subjects.len();
        let mut failures = 0usize;
        for subject in &subjects {
            let report = verify_trace_compat(subject, n_max)?;
            if !report.pass() {
                failures += 1;
            }
        }
        let labels: Vec<String> = ctx.classes().iter().map(|c| c.rep().to_string()).collect();
        checks.push(Check::failures(
            format!(
                "trace compat over Q(sqrt {}), {total} algebras, n <= {n_max}",
                labels.join(", sqrt ")
            ),
            failures,
            total,
        ));
    }

    // virtual combinations [P_3] - [pt] and [torsor(2,3)] - 2[pt]
    let desc = FieldDescriptor::Rationals;
    let ctx3 = MqContext::new(desc, alloc::vec![desc.class_of_int(3)?])?;
    let p3 = spec_subfield(&ctx3, &[1])?.decompose();
    let virtual_a = p3.sub(&VirtualGaloisSet::point(ctx3.clone()))?;
    let ctx23 = MqContext::new(
        desc,
        alloc::vec![desc.class_of_int(2)?, desc.class_of_int(3)?],
    )?;
    let torsor = spec_subfield(&ctx23, &[0b01, 0b10])?.decompose();
    let virtual_b = torsor.sub(&VirtualGaloisSet::point(ctx23.clone()).scalar_mul(&2.into()))?;
    let virtual_n = n_max.min(5);
    for (label, subject) in [
        ("[P_3] - [pt]", virtual_a),
        ("[Q(sqrt 2, sqrt 3)] - 2[pt]", virtual_b),
    ] {
        let report = verify_trace_compat(&subject, virtual_n)?;
        checks.push(Check::new(
            format!("trace compat for {label}, n <= {virtual_n}"),
            if report.pass() {
                "all degrees equal"
            } else {
                "mismatch"
            }
            .to_string(),
            "all degrees equal".to_string(),
            report.pass(),
        ));
    }
    Ok(Suite {
        name: "compat".into(),
        checks,
    })
}

/// Targeted compatibility report for one algebra class.
pub fn compat_single_suite(subject: &VirtualGaloisSet, n_max: usize) -> Result<Suite> {
    let report = verify_trace_compat(subject, n_max)?;
    let checks = report
        .lines
        .iter()
        .map(|line| {
            Check::new(
                format!("n = {}: trace(sym^n) = a_n(trace)", line.n),
                line.lhs.clone(),
                line.rhs.clone(),
                line.pass,
            )
        })
        .collect();
    Ok(Suite {
        name: format!("compat({})", report.subject),
        checks,
    })
}

// ------------------------------------------------------------- rank law

/// rank(a_n(trace A)) = C(m+n-1, n) across the sweep algebras and a
/// fixed list of separable polynomials.
pub fn rank_law_suite(n_max: usize) -> Result<Suite> {
    let mut checks = Vec::new();
    for ctx in sweep_contexts()? {
        let spectra = subfield_spectra(&ctx)?;
        let subjects = spectra_multisets(&spectra, 3)?;
        let total = subjects.len();
        let mut failures = 0usize;
        for subject in &subjects {
            let trace = trace_form(subject)?;
            let dim = u64::try_from(&subject.virtual_size()).expect("honest algebra dimension");
            let report = verify_rank_law("sweep algebra", &trace, dim, n_max)?;
            if !report.pass() {
                failures += 1;
            }
        }
        let labels: Vec<String> = ctx.classes().iter().map(|c| c.rep().to_string()).collect();
        checks.push(Check::failures(
            format!(
                "rank law over Q(sqrt {}), {total} algebras, n <= {n_max}",
                labels.join(", sqrt ")
            ),
            failures,
            total,
        ));
    }
    for coeffs in [
        &[-2i64, 0, 0, 1][..],
        &[1, 1, 0, 0, 1],
        &[-1, -1, 0, 0, 0, 1],
        &[1, 0, -10, 0, 1],
        &[1, 1, 0, 1],
    ] {
        let poly = EtalePoly::from_int_coeffs(coeffs)?;
        let trace = trace_form_poly(&poly)?;
        let report = verify_rank_law(&format!("{poly}"), &trace, poly.degree() as u64, n_max)?;
        checks.push(Check::new(
            format!("rank law for {poly}, n <= {n_max}"),
            if report.pass() {
                "all ranks match"
            } else {
                "mismatch"
            }
            .to_string(),
            "all ranks match".to_string(),
            report.pass(),
        ));
    }
    Ok(Suite {
        name: "rank".into(),
        checks,
    })
}

// ------------------------------------------------------------ classical

/// Divergence from the classical symmetric power: total agreement over
/// finite fields, failure at <3> over Q, agreement at <7> over Q with
/// the explicit conic point.
pub fn classical_suite(n_max: usize) -> Result<Suite> {
    let mut checks = Vec::new();
    for p in [3u64, 5, 7, 11] {
        let desc = FieldDescriptor::prime_field(p)?;
        let fns = GwPower::new(desc);
        let mut failures = 0usize;
        let mut total = 0usize;
        for a in 1..p {
            let class = desc.class_of_int(a as i64)?;
            if !agrees_with_classical(&class)? {
                failures += 1;
            }
            total += 1;
            for n in 0..=n_max {
                total += 1;
                let lhs = fns.a_n(&GwElement::generator(&class), n);
                if !lhs.is_equal(&classical_sn_generator(&class, n))? {
                    failures += 1;
                }
            }
        }
        checks.push(Check::failures(
            format!("classical agreement over F{p}, all units, n <= {n_max}"),
            failures,
            total,
        ));
    }

    let desc = FieldDescriptor::Rationals;
    let fns = GwPower::new(desc);
    let three = desc.class_of_int(3)?;
    let a2 = fns.a_n(&GwElement::generator(&three), 2);
    let classical = classical_sn_generator(&three, 2);
    let diverges = !a2.is_equal(&classical)?
        && classical.is_equal(&GwElement::one(desc))?
        && !agrees_with_classical(&three)?;
    checks.push(Check::new(
        "a_2(<3>) over Q differs from the classical <1>",
        format!("{a2}"),
        format!("{classical} (classical)"),
        diverges,
    ));

    let seven = desc.class_of_int(7)?;
    let witness = {
        // 2 (3/5)^2 + 7 (1/5)^2 = 1
        let x = BigRational::new(BigInt::from(3), BigInt::from(5));
        let y = BigRational::new(BigInt::from(1), BigInt::from(5));
        let lhs = BigRational::from_integer(BigInt::from(2)) * &x * &x
            + BigRational::from_integer(BigInt::from(7)) * &y * &y;
        lhs.is_one()
    };
    checks.push(Check::new(
        "agrees_with_classical(7) over Q with conic point (3/5, 1/5)",
        format!(
            "cup vanishes: {}, witness solves: {witness}",
            agrees_with_classical(&seven)?
        ),
        "cup vanishes: true, witness solves: true".to_string(),
        agrees_with_classical(&seven)? && witness,
    ));
    Ok(Suite {
        name: "classical".into(),
        checks,
    })
}

// --------------------------------------------------------------- twist

/// Every G-set of total size <= 4 over the context, up to isomorphism:
/// multisets of transitive subfield spectra with at most four
/// components and total size at most four.
fn small_bases(ctx: &MqContext) -> Result<Vec<GSet>> {
    let spectra = subfield_spectra(ctx)?;
    let mut out: Vec<GSet> = Vec::new();
    for count in 1..=4usize {
        for multiset in crate::multiset::sorted_multisets(spectra.len(), count) {
            let total: usize = multiset.iter().map(|&i| spectra[i].size()).sum();
            if total > 4 {
                continue;
            }
            let mut parts = multiset.iter().map(|&i| &spectra[i]);
            let mut set = parts.next().expect("count >= 1").clone();
            for part in parts {
                set = set.disjoint_union(part)?;
            }
            out.push(set);
        }
    }
    Ok(out)
}

/// Equivariant decomposition, twisting and inheritance checks:
/// doubled-set symmetric powers, twist versus product with a quadratic
/// spectrum, twist/symmetric-power commutation, and compatibility
/// inheritance under tensoring with a quadratic extension.
pub fn twist_suite(n_max: usize) -> Result<Suite> {
    let desc = FieldDescriptor::Rationals;
    let ctx = MqContext::new(
        desc,
        alloc::vec![desc.class_of_int(2)?, desc.class_of_int(3)?],
    )?;
    let bases = small_bases(&ctx)?;
    let mut checks = Vec::new();

    // doubled symmetric powers split into paired products plus the
    // middle coordinate-swap term
    let mut failures = 0usize;
    let mut total = 0usize;
    for base in &bases {
        let doubled = double_swap(base);
        for n in 0..=n_max {
            total += 1;
            let lhs = sym_power_equivariant(&doubled, n)?;
            let rhs = double_sym_decomposition(base, n)?;
            if !(lhs.is_isomorphic_by_search(&rhs)? && lhs.is_isomorphic(&rhs)?) {
                failures += 1;
            }
        }
    }
    checks.push(Check::failures(
        format!(
            "sym^n(X + X) decomposition, {} bases, n <= {n_max}",
            bases.len()
        ),
        failures,
        total,
    ));

    // twist of a doubled set is the product with the quadratic spectrum
    let mut failures = 0usize;
    let mut total = 0usize;
    for base in &bases {
        for d in [5i64, 6] {
            total += 1;
            let class = desc.class_of_int(d)?;
            let twisted = twist(&double_swap(base), &class)?;
            let (extended, mask) = ctx.extend(&class)?;
            let pd = spec_subfield(&extended, &[mask])?;
            let product = base.lift_to(&extended)?.product(&pd)?;
            if !(twisted.is_isomorphic_by_search(&product)? && twisted.is_isomorphic(&product)?) {
                failures += 1;
            }
        }
    }
    checks.push(Check::failures(
        format!(
            "twist(X + X, d) = X x P_d, {} bases, d in {{5, 6}}",
            bases.len()
        ),
        failures,
        total,
    ));

    // twisting commutes with symmetric powers
    let mut failures = 0usize;
    let mut total = 0usize;
    let commute_n = n_max.min(4);
    for base in &bases {
        let doubled = double_swap(base);
        for n in 0..=commute_n {
            total += 1;
            let d = desc.class_of_int(2)?;
            let lhs = twist(&sym_power_equivariant(&doubled, n)?, &d)?;
            let rhs = twist(&doubled, &d)?.sym_power(n)?;
            if !(lhs.is_isomorphic_by_search(&rhs)? && lhs.is_isomorphic(&rhs)?) {
                failures += 1;
            }
        }
    }
    checks.push(Check::failures(
        format!(
            "twist(sym^n E) = sym^n(twist E), {} bases, n <= {commute_n}",
            bases.len()
        ),
        failures,
        total,
    ));

    // compatibility inheritance: A tensor k(sqrt d)
    let ctx3 = MqContext::new(desc, alloc::vec![desc.class_of_int(3)?])?;
    let p3 = spec_subfield(&ctx3, &[1])?;
    let torsor = spec_subfield(&ctx, &[0b01, 0b10])?;
    for (label, base) in [("P_3", p3), ("Spec Q(sqrt 2, sqrt 3)", torsor)] {
        for d in [5i64, 7] {
            let class = desc.class_of_int(d)?;
            let (extended, mask) = base.context().extend(&class)?;
            let pd = spec_subfield(&extended, &[mask])?;
            let tensored = base.lift_to(&extended)?.product(&pd)?.decompose();
            let report = verify_trace_compat(&tensored, n_max)?;
            checks.push(Check::new(
                format!("trace compat for {label} x k(sqrt {d}), n <= {n_max}"),
                if report.pass() {
                    "all degrees equal"
                } else {
                    "mismatch"
                }
                .to_string(),
                "all degrees equal".to_string(),
                report.pass(),
            ));
        }
    }
    Ok(Suite {
        name: "twist".into(),
        checks,
    })
}

// ---------------------------------------------------------- reciprocity

/// Hilbert reciprocity on random rational pairs, plus the 3-adic
/// obstruction witness for (2, 3).
pub fn reciprocity_suite(pairs: usize, seed: u64) -> Result<Suite> {
    let mut rng = rng(seed);
    let mut failures = 0usize;
    for _ in 0..pairs {
        let a = random_rational(&mut rng, 200);
        let b = random_rational(&mut rng, 200);
        if hilbert_product(&a, &b)? != 1 {
            failures += 1;
        }
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    let witness = hilbert_symbol(&two, &three, &Place::Finite(BigInt::from(3)))?;
    Ok(Suite {
        name: "reciprocity".into(),
        checks: alloc::vec![
            Check::failures(
                format!("product formula on {pairs} random pairs"),
                failures,
                pairs
            ),
            Check::new("(2, 3)_3", format!("{witness}"), "-1", witness == -1),
        ],
    })
}

// ------------------------------------------------------------ roundtrip

/// decompose/recompose identity for random series over Z and over
/// GW(Q).
pub fn roundtrip_suite(count: usize, trunc: usize, seed: u64) -> Result<Suite> {
    let mut rng = rng(seed);
    let mut z_failures = 0usize;
    for _ in 0..count {
        let coeffs: Vec<BigInt> = core::iter::once(BigInt::one())
            .chain((0..trunc).map(|_| BigInt::from(rng.random_range(-9i64..=9))))
            .collect();
        let series = TruncatedSeries::from_coeffs(IntegerRing, coeffs);
        let exponents = decompose(&Binomial, &series)?;
        if !recompose(&Binomial, &exponents, trunc).eq(&series) {
            z_failures += 1;
        }
    }

    let desc = FieldDescriptor::Rationals;
    let fns = GwPower::new(desc);
    let ring = GwRing::new(desc);
    let mut gw_failures = 0usize;
    for _ in 0..count {
        let coeffs: Vec<GwElement> = core::iter::once(GwElement::one(desc))
            .chain(
                (0..trunc)
                    .map(|_| random_gw_element(&mut rng, desc, 2, 10))
                    .collect::<Result<Vec<_>>>()?,
            )
            .collect();
        let series = TruncatedSeries::from_coeffs(ring.clone(), coeffs);
        let exponents = decompose(&fns, &series)?;
        if !recompose(&fns, &exponents, trunc).eq(&series) {
            gw_failures += 1;
        }
    }
    Ok(Suite {
        name: "roundtrip".into(),
        checks: alloc::vec![
            Check::failures(
                format!("decompose/recompose over Z, {count} series, N = {trunc}"),
                z_failures,
                count,
            ),
            Check::failures(
                format!("decompose/recompose over GW(Q), {count} series, N = {trunc}"),
                gw_failures,
                count,
            ),
        ],
    })
}
