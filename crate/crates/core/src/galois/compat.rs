//! The compatibility check between symmetric powers of dimension-0
//! classes and the power structure on the Grothendieck-Witt ring:
//! trace(sym^n A) versus a_n(trace A), degree by degree.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::gw::GwElement;
use crate::gw_power::GwPower;
use crate::power::binomial;
use crate::Result;

use super::{trace_form, GaloisPower, VirtualGaloisSet};

/// One degree of a compatibility or rank check.
#[derive(Clone, Debug)]
pub struct CompatLine {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// Per-degree results for a single subject class.
#[derive(Clone, Debug)]
pub struct CompatReport {
    pub subject: String,
    pub lines: Vec<CompatLine>,
}

impl CompatReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|line| line.pass)
    }
}

/// Check trace(sym^n A) = a_n(trace A) for n = 0 .. n_max.
///
/// Both power series are built once and compared coefficientwise.
pub fn verify_trace_compat(subject: &VirtualGaloisSet, n_max: usize) -> Result<CompatReport> {
    let galois_power = GaloisPower::new(subject.context().clone());
    let gw_power = GwPower::new(subject.context().descriptor());
    let trace = trace_form(subject)?;
    let sym_series = galois_power.try_power_series(subject, n_max)?;
    let gw_series = gw_power.power_series(&trace, n_max);
    let mut lines = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let lhs = trace_form(sym_series.coeff(n))?;
        let rhs = gw_series.coeff(n);
        let pass = lhs.is_equal(rhs)?;
        lines.push(CompatLine {
            n,
            lhs: format!("{lhs}"),
            rhs: format!("{rhs}"),
            pass,
        });
    }
    Ok(CompatReport {
        subject: format!("{subject}"),
        lines,
    })
}

/// Check the rank law rank(a_n(trace)) = C(m+n-1, n) for an etale
/// algebra of dimension m, n = 0 .. n_max. This is the only check
/// available for classes without modeled Galois data.
pub fn verify_rank_law(
    subject: &str,
    trace: &GwElement,
    dimension: u64,
    n_max: usize,
) -> Result<CompatReport> {
    let gw_power = GwPower::new(trace.descriptor());
    let series = gw_power.power_series(trace, n_max);
    let mut lines = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let rank = series.coeff(n).rank();
        let expected: BigInt = binomial(dimension + n as u64 - 1, n as u64);
        lines.push(CompatLine {
            n,
            lhs: format!("rank {rank}"),
            rhs: format!("C({}, {n}) = {expected}", dimension as usize + n - 1),
            pass: rank == expected,
        });
    }
    Ok(CompatReport {
        subject: String::from(subject),
        lines,
    })
}
