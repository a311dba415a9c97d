//! Command implementations behind the `gwitt` binary. Each command
//! returns a deterministic [`report::Report`] carrying its own exit
//! code: 0 for success, 1 for a failed verification, 2 for parse or
//! usage errors, 3 for unsupported fields or exceeded guards.

pub mod parse;
pub mod report;

use num_bigint::BigInt;

use gwitt::burnside::{FiniteGroup, TableOfMarks};
use gwitt::field::FieldDescriptor;
use gwitt::galois::{trace_form, trace_form_poly, GaloisPower};
use gwitt::gw::GwElement;
use gwitt::gw_power::{classical_sn_generator, GwPower};
use gwitt::power::geom_pow;
use gwitt::verify::{self, Suite, DEFAULT_SEED};

use parse::{parse_algebra, parse_field, parse_form, FieldParseError, ParseError, ParsedAlgebra};
use report::{Report, ResultLine};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Largest degree bound accepted for a_n, geometric series and
/// symmetric powers at the command line.
pub const MAX_DEGREE: usize = 128;

fn check_degree(n: usize) -> Result<(), CliError> {
    if n > MAX_DEGREE {
        return Err(CliError {
            message: format!("degree {n} exceeds the guard of {MAX_DEGREE}"),
            exit: EXIT_GUARD,
        });
    }
    Ok(())
}

/// A command failure with its process exit code.
#[derive(Clone, Debug)]
pub struct CliError {
    pub message: String,
    pub exit: i32,
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError {
            message: format!("parse error {e}"),
            exit: EXIT_USAGE,
        }
    }
}

impl From<gwitt::Error> for CliError {
    fn from(e: gwitt::Error) -> Self {
        let exit = match e {
            gwitt::Error::UnsupportedField(_)
            | gwitt::Error::FactorBound(_)
            | gwitt::Error::ResourceBound(_)
            | gwitt::Error::GroupBound(_) => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        CliError {
            message: format!("{e}"),
            exit,
        }
    }
}

impl From<FieldParseError> for CliError {
    fn from(e: FieldParseError) -> Self {
        match e {
            FieldParseError::Syntax(err) => err.into(),
            FieldParseError::Unsupported(err) => err.into(),
        }
    }
}

type CmdResult = Result<Report, CliError>;

fn resolve_field(field: Option<&str>) -> Result<FieldDescriptor, CliError> {
    match field {
        None => Ok(FieldDescriptor::Rationals),
        Some(text) => Ok(parse_field(text)?),
    }
}

/// Render an error as a report so output stays total and deterministic.
pub fn error_report(command: &str, field: Option<&str>, inputs: &[String], err: &CliError) -> Report {
    Report {
        command: command.into(),
        field: field.unwrap_or("Q").into(),
        inputs: inputs.to_vec(),
        results: vec![ResultLine {
            name: "error".into(),
            lhs: err.message.clone(),
            rhs: String::new(),
            pass: false,
        }],
        exit: err.exit,
    }
}

fn suite_report(command: &str, field: FieldDescriptor, inputs: Vec<String>, suite: Suite) -> Report {
    let exit = if suite.pass() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Report {
        command: command.into(),
        field: format!("{field}"),
        inputs,
        results: suite
            .checks
            .into_iter()
            .map(|c| ResultLine {
                name: c.name,
                lhs: c.lhs,
                rhs: c.rhs,
                pass: c.pass,
            })
            .collect(),
        exit,
    }
}

fn invariant_line(form: &GwElement) -> Result<ResultLine, CliError> {
    let profile = form.invariants()?;
    Ok(ResultLine::value("invariants", format!("{profile}")))
}

pub fn cmd_normalize(field: Option<&str>, form_src: &str) -> CmdResult {
    let desc = resolve_field(field)?;
    let form = parse_form(form_src, desc)?;
    Ok(Report {
        command: "normalize".into(),
        field: format!("{desc}"),
        inputs: vec![form_src.into()],
        results: vec![
            ResultLine::value("canonical form", format!("{form}")),
            invariant_line(&form)?,
        ],
        exit: EXIT_OK,
    })
}

pub fn cmd_eq(field: Option<&str>, lhs_src: &str, rhs_src: &str) -> CmdResult {
    let desc = resolve_field(field)?;
    let lhs = parse_form(lhs_src, desc)?;
    let rhs = parse_form(rhs_src, desc)?;
    let equal = lhs.is_equal(&rhs)?;
    Ok(Report {
        command: "eq".into(),
        field: format!("{desc}"),
        inputs: vec![lhs_src.into(), rhs_src.into()],
        results: vec![
            ResultLine::comparison("equal in GW", format!("{lhs}"), format!("{rhs}"), equal),
            invariant_line(&lhs)?,
            invariant_line(&rhs)?,
        ],
        exit: if equal { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

pub fn cmd_an(field: Option<&str>, n: usize, form_src: &str) -> CmdResult {
    check_degree(n)?;
    let desc = resolve_field(field)?;
    let form = parse_form(form_src, desc)?;
    let fns = GwPower::new(desc);
    let value = fns.power_series(&form, n).coeff(n).clone();
    let mut results = vec![
        ResultLine::value(format!("a_{n}"), format!("{value}")),
        invariant_line(&value)?,
    ];
    // for a single generator, show the classical comparison
    let mut terms = form.terms();
    if let (Some((class, coeff)), None) = (terms.next(), terms.next()) {
        if coeff == &BigInt::from(1) {
            let classical = classical_sn_generator(&class, n);
            results.push(ResultLine::value(
                "classical S^n",
                format!(
                    "{classical}; agrees: {}",
                    value.is_equal(&classical)?
                ),
            ));
        }
    }
    Ok(Report {
        command: "an".into(),
        field: format!("{desc}"),
        inputs: vec![form_src.into()],
        results,
        exit: EXIT_OK,
    })
}

pub fn cmd_geom(field: Option<&str>, trunc: usize, form_src: &str) -> CmdResult {
    check_degree(trunc)?;
    let desc = resolve_field(field)?;
    let form = parse_form(form_src, desc)?;
    let fns = GwPower::new(desc);
    let series = geom_pow(&fns, &form, trunc);
    let results = (0..=trunc)
        .map(|i| ResultLine::value(format!("t^{i}"), format!("{}", series.coeff(i))))
        .collect();
    Ok(Report {
        command: "geom".into(),
        field: format!("{desc}"),
        inputs: vec![form_src.into()],
        results,
        exit: EXIT_OK,
    })
}

fn parse_pure_algebra(src: &str, desc: FieldDescriptor) -> Result<ParsedAlgebra, CliError> {
    let parsed = parse_algebra(src, desc)?;
    Ok(parsed)
}

pub fn cmd_sympow(field: Option<&str>, n: usize, algebra_src: &str) -> CmdResult {
    check_degree(n)?;
    let desc = resolve_field(field)?;
    let parsed = parse_pure_algebra(algebra_src, desc)?;
    if !parsed.is_pure_multiquadratic() {
        return Err(CliError {
            message: "symmetric powers need Galois data; polynomial atoms are trace-only".into(),
            exit: EXIT_USAGE,
        });
    }
    let subject = parsed.multiquadratic;
    let fns = GaloisPower::new(subject.context().clone());
    let sym = fns.try_a_n(&subject, n)?;
    let trace = trace_form(&sym)?;
    Ok(Report {
        command: "sympow".into(),
        field: format!("{desc}"),
        inputs: vec![algebra_src.into()],
        results: vec![
            ResultLine::value(format!("sym^{n}"), format!("{sym}")),
            ResultLine::value("trace form", format!("{trace}")),
            invariant_line(&trace)?,
        ],
        exit: EXIT_OK,
    })
}

fn total_trace(parsed: &ParsedAlgebra) -> Result<GwElement, CliError> {
    let mut trace = trace_form(&parsed.multiquadratic)?;
    for (poly, coeff) in &parsed.polys {
        trace = trace.add(&trace_form_poly(poly)?.scalar_mul(coeff))?;
    }
    Ok(trace)
}

pub fn cmd_trace(field: Option<&str>, algebra_src: &str) -> CmdResult {
    let desc = resolve_field(field)?;
    let parsed = parse_pure_algebra(algebra_src, desc)?;
    let trace = total_trace(&parsed)?;
    let mut results = Vec::new();
    if !parsed.multiquadratic.is_zero() {
        results.push(ResultLine::value(
            "multiquadratic part",
            format!("{}", parsed.multiquadratic),
        ));
    }
    results.push(ResultLine::value("trace form", format!("{trace}")));
    results.push(invariant_line(&trace)?);
    Ok(Report {
        command: "trace".into(),
        field: format!("{desc}"),
        inputs: vec![algebra_src.into()],
        results,
        exit: EXIT_OK,
    })
}

pub fn cmd_tableofmarks(group_name: &str) -> CmdResult {
    let group = FiniteGroup::named(group_name)?;
    let table = TableOfMarks::new(&group)?;
    let mut results = vec![ResultLine::value(
        "group order",
        format!("{}", group.order()),
    )];
    for (i, (class, row)) in table.classes().iter().zip(table.marks()).enumerate() {
        let rendered: Vec<String> = row.iter().map(|m| m.to_string()).collect();
        results.push(ResultLine::value(
            format!("G/H{i} (|H{i}| = {})", class.len()),
            rendered.join(" "),
        ));
    }
    Ok(Report {
        command: "tableofmarks".into(),
        field: "-".into(),
        inputs: vec![group_name.into()],
        results,
        exit: EXIT_OK,
    })
}

pub fn cmd_verify_axioms(
    field: Option<&str>,
    samples: usize,
    trunc: usize,
    seed: Option<u64>,
) -> CmdResult {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let suite = match field {
        // no explicit field: the full battery over Z and the six rings
        None => verify::axioms_full_suite(samples, trunc, seed)?,
        Some(text) => {
            let desc = parse_field(text)?;
            let mut checks = verify::axioms_integer_suite(samples, trunc, seed)?.checks;
            checks.extend(verify::axioms_gw_suite(desc, samples, trunc, seed)?.checks);
            Suite {
                name: format!("axioms(Z, GW({desc}))"),
                checks,
            }
        }
    };
    Ok(suite_report(
        "verify axioms",
        resolve_field(field)?,
        vec![format!("samples = {samples}, N = {trunc}, seed = {seed}")],
        suite,
    ))
}

pub fn cmd_verify_welldef(
    pairs: usize,
    n_max: usize,
    height: i64,
    seed: Option<u64>,
) -> CmdResult {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let suite = verify::welldef_suite(pairs, n_max, height, seed)?;
    Ok(suite_report(
        "verify welldef",
        FieldDescriptor::Rationals,
        vec![format!(
            "pairs = {pairs}, n <= {n_max}, height <= {height}, seed = {seed}"
        )],
        suite,
    ))
}

pub fn cmd_verify_compat(field: Option<&str>, n_max: usize, algebra: Option<&str>) -> CmdResult {
    let desc = resolve_field(field)?;
    let suite = match algebra {
        None => verify::compat_sweep_suite(n_max)?,
        Some(src) => {
            let parsed = parse_pure_algebra(src, desc)?;
            let mut checks = Vec::new();
            if !parsed.multiquadratic.is_zero() {
                checks.extend(
                    verify::compat_single_suite(&parsed.multiquadratic, n_max)?.checks,
                );
            }
            for (poly, coeff) in &parsed.polys {
                if coeff < &BigInt::from(0) {
                    return Err(CliError {
                        message: "rank law needs an honest algebra; negative polynomial \
                                  multiplicity has no dimension"
                            .into(),
                        exit: EXIT_USAGE,
                    });
                }
                let trace = trace_form_poly(poly)?.scalar_mul(coeff);
                let dim = u64::try_from(&(BigInt::from(poly.degree() as u64) * coeff))
                    .expect("small dimension");
                let report = gwitt::galois::verify_rank_law(
                    &format!("{poly}"),
                    &trace,
                    dim,
                    n_max,
                )?;
                checks.extend(report.lines.iter().map(|line| gwitt::verify::Check {
                    name: format!("rank law for {poly}, n = {}", line.n),
                    lhs: line.lhs.clone(),
                    rhs: line.rhs.clone(),
                    pass: line.pass,
                }));
            }
            Suite {
                name: format!("compat({src})"),
                checks,
            }
        }
    };
    Ok(suite_report(
        "verify compat",
        desc,
        algebra.map(|a| vec![a.into()]).unwrap_or_default(),
        suite,
    ))
}

pub fn cmd_verify_twist(n_max: usize) -> CmdResult {
    let suite = verify::twist_suite(n_max)?;
    Ok(suite_report(
        "verify twist",
        FieldDescriptor::Rationals,
        vec![format!("n <= {n_max}")],
        suite,
    ))
}

pub fn cmd_verify_burnside(trunc: usize) -> CmdResult {
    let mut checks = verify::burnside_series_suite(trunc)?.checks;
    checks.extend(verify::biquadratic_trace_suite(trunc)?.checks);
    let suite = Suite {
        name: "burnside".into(),
        checks,
    };
    Ok(suite_report(
        "verify burnside",
        FieldDescriptor::Rationals,
        vec![format!("n <= {trunc}")],
        suite,
    ))
}
