use std::collections::BTreeMap;
use std::fmt;

use sticks::closed_form::{
    is_vacuous, pa_pickup, pn_broken, pn_exponential, pn_pickup, pn_pickup_truncated, pr_pickup,
};
use sticks::constraints::{m_constants, max_length_form, s_constants};
use sticks::montecarlo::{default_workers, estimate, DistributionSpec, EventKind, EventSpec};
use sticks::parse::{format_rational, parse_range, parse_rational, rational_to_f64 as to_f64};
use sticks::report::{
    self, ConstantEntry, ConstantsReport, ExactResult, Inputs, McResult, Report, SCHEMA_VERSION,
};
use sticks::sequences::{lowest_index, StepFibTable};
use sticks::verify::{self, Suite, VerifyConfig};
use sticks::{BigRational, Error, ExactProb, Model};

use crate::args::{
    Command, ComputeArgs, ConstantKind, ConstantsArgs, ModelArg, Output, Problem, SimulateArgs,
    TableArgs, VerifyArgs,
};

pub const WORKERS_ENV: &str = "STICKS_WORKERS";
const MAX_DIGITS: usize = 10_000;
const MAX_TABLE_CELLS: usize = 10_000;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Lib(Error::Domain(_) | Error::Parse(_)) => 2,
            Failure::Lib(Error::Unsupported(_)) => 3,
            Failure::Lib(Error::Resource(_)) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "usage error: {msg}"),
            Failure::Lib(e) => e.fmt(f),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Text for standard output plus the exit status.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Compute(args) => compute(args),
        Command::Simulate(args) => simulate(args),
        Command::Verify(args) => verify(args),
        Command::Table(args) => table(args),
        Command::Constants(args) => constants(args),
    }
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::Pn => "pn",
            Problem::Pa => "pa",
            Problem::Pr => "pr",
        }
    }

    fn event(self) -> EventKind {
        match self {
            Problem::Pn => EventKind::NoPolygon,
            Problem::Pa => EventKind::AllPolygon,
            Problem::Pr => EventKind::RandomSubsetPolygon,
        }
    }
}

impl ModelArg {
    fn name(self) -> &'static str {
        match self {
            ModelArg::Pickup => "pickup",
            ModelArg::Broken => "broken",
            ModelArg::Exponential => "exponential",
            ModelArg::Truncated => "truncated",
        }
    }
}

fn check_digits(digits: usize) -> Result<(), Failure> {
    if digits > MAX_DIGITS {
        return Err(usage(format!("--digits is capped at {MAX_DIGITS}")));
    }
    Ok(())
}

/// `--a` is required by, and only accepted with, the truncated model.
fn truncation(model: ModelArg, a: Option<&str>) -> Result<Option<BigRational>, Failure> {
    match (model, a) {
        (ModelArg::Truncated, Some(a)) => Ok(Some(parse_rational(a)?)),
        (ModelArg::Truncated, None) => Err(usage("--model truncated needs --a num/den")),
        (_, Some(_)) => Err(usage("--a applies only to --model truncated")),
        (_, None) => Ok(None),
    }
}

fn exact(
    problem: Problem,
    model: ModelArg,
    p: usize,
    n: Option<usize>,
    a: Option<&BigRational>,
) -> sticks::Result<ExactProb> {
    let n = n.unwrap_or(0);
    match (problem, model) {
        (Problem::Pn, ModelArg::Pickup) => pn_pickup(p, n),
        (Problem::Pn, ModelArg::Broken) => pn_broken(p, n),
        (Problem::Pn, ModelArg::Exponential) => pn_exponential(p, n),
        (Problem::Pn, ModelArg::Truncated) => {
            pn_pickup_truncated(p, n, a.expect("truncation checked by caller"))
        }
        (Problem::Pa, ModelArg::Pickup) => pa_pickup(p, n),
        (Problem::Pr, ModelArg::Pickup) => pr_pickup(p),
        (problem, model) => Err(Error::Unsupported(format!(
            "no closed form for {} under the {} model; estimate it with `sticks simulate {}` instead",
            problem.name(),
            model.name(),
            problem.name()
        ))),
    }
}

fn vacuous(problem: Problem, p: usize, n: Option<usize>) -> bool {
    problem != Problem::Pr && n.is_some_and(|n| is_vacuous(p, n))
}

fn inputs(
    problem: Problem,
    model: ModelArg,
    p: usize,
    n: Option<usize>,
    extra: BTreeMap<String, String>,
) -> Inputs {
    Inputs {
        problem: problem.name().into(),
        model: model.name().into(),
        p,
        n,
        extra_params: extra,
    }
}

fn extra_a(a: Option<&BigRational>) -> BTreeMap<String, String> {
    a.map(|a| ("a".to_string(), format_rational(a)))
        .into_iter()
        .collect()
}

fn compute(args: ComputeArgs) -> Result<Outcome, Failure> {
    check_digits(args.digits)?;
    let a = truncation(args.model, args.a.as_deref())?;
    match (args.problem, args.n) {
        (Problem::Pr, Some(_)) => {
            return Err(usage(
                "--n does not apply to pr, which is the same for every n",
            ))
        }
        (Problem::Pn | Problem::Pa, None) => {
            return Err(usage(format!("{} needs --n", args.problem.name())))
        }
        _ => {}
    }
    let prob = exact(args.problem, args.model, args.p, args.n, a.as_ref())?;
    let row = Row {
        problem: args.problem,
        model: args.model,
        p: args.p,
        n: args.n,
        a: a.clone(),
        result: ExactResult::new(&prob, args.digits, vacuous(args.problem, args.p, args.n)),
    };
    match args.output {
        Output::Json => Ok(Outcome::ok(report::to_json(&row.report()))),
        Output::Csv => Ok(Outcome::ok(write_csv(&[row], args.model, true)?)),
    }
}

struct Row {
    problem: Problem,
    model: ModelArg,
    p: usize,
    n: Option<usize>,
    a: Option<BigRational>,
    result: ExactResult,
}

impl Row {
    fn report(&self) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: "compute".into(),
            inputs: inputs(
                self.problem,
                self.model,
                self.p,
                self.n,
                extra_a(self.a.as_ref()),
            ),
            result: Some(self.result.clone()),
            mc: None,
        }
    }
}

fn write_csv(rows: &[Row], model: ModelArg, decimal: bool) -> Result<String, Failure> {
    let truncated = model == ModelArg::Truncated;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["problem", "model", "p", "n"];
    if truncated {
        header.push("a");
    }
    header.push("exact");
    if decimal {
        header.push("decimal");
    }
    header.push("vacuous");
    let csv_err = |e: csv::Error| Failure::Lib(Error::Resource(format!("csv: {e}")));
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        let mut rec = vec![
            row.problem.name().to_string(),
            row.model.name().to_string(),
            row.p.to_string(),
            row.n.map(|n| n.to_string()).unwrap_or_default(),
        ];
        if truncated {
            rec.push(row.a.as_ref().map(format_rational).unwrap_or_default());
        }
        rec.push(format!("{}/{}", row.result.exact.num, row.result.exact.den));
        if decimal {
            rec.push(row.result.decimal.clone());
        }
        rec.push(row.result.vacuous.to_string());
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Lib(Error::Resource(format!("csv: {e}"))))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 fields"))
}

fn workers(flag: Option<usize>) -> Result<usize, Failure> {
    let value = match flag {
        Some(w) => w,
        None => match std::env::var(WORKERS_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(format!("{WORKERS_ENV}={s:?} is not a worker count")))?,
            Err(_) => default_workers(),
        },
    };
    if value == 0 {
        return Err(usage("worker count must be at least 1"));
    }
    Ok(value)
}

fn simulate(args: SimulateArgs) -> Result<Outcome, Failure> {
    check_digits(args.digits)?;
    let a = truncation(args.model, args.a.as_deref())?;
    let rate = match (args.model, args.rate.as_deref()) {
        (ModelArg::Exponential, Some(r)) => Some(parse_rational(r)?),
        (ModelArg::Exponential, None) => None,
        (_, Some(_)) => return Err(usage("--rate applies only to --model exponential")),
        (_, None) => None,
    };
    let dist = match args.model {
        ModelArg::Pickup => DistributionSpec::Uniform01,
        ModelArg::Broken => DistributionSpec::BrokenStick,
        ModelArg::Truncated => DistributionSpec::UniformTruncated {
            a: to_f64(a.as_ref().expect("truncation checked above")),
        },
        ModelArg::Exponential => DistributionSpec::Exponential {
            rate: rate.as_ref().map_or(1.0, to_f64),
        },
    };
    let workers = workers(args.workers)?;
    let event = EventSpec::new(args.problem.event(), args.p)?;
    let n = Some(args.n);
    // closed form first, so domain errors on (p, n, a) surface before the run
    let prob = match exact(args.problem, args.model, args.p, n, a.as_ref()) {
        Ok(prob) => Some(prob),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let est = estimate(event, dist, args.n, args.trials, args.seed, workers)?;

    let mut extra = extra_a(a.as_ref());
    if let Some(rate) = &rate {
        extra.insert("rate".into(), format_rational(rate));
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "simulate".into(),
        inputs: inputs(args.problem, args.model, args.p, n, extra),
        result: prob
            .as_ref()
            .map(|p| ExactResult::new(p, args.digits, vacuous(args.problem, args.p, n))),
        mc: Some(McResult::new(&est, workers, prob.as_ref())),
    };
    Ok(Outcome::ok(report::to_json(&report)))
}

fn verify(args: VerifyArgs) -> Result<Outcome, Failure> {
    let suite: Suite = args.suite.parse()?;
    let config = VerifyConfig {
        trials: args.trials,
        seed: args.seed,
        workers: workers(args.workers)?,
    };
    if config.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let report = verify::run(suite, &config);
    let code = if report.passed { 0 } else { 1 };
    Ok(Outcome {
        stdout: report::to_json(&report),
        code,
    })
}

fn table(args: TableArgs) -> Result<Outcome, Failure> {
    check_digits(args.digits)?;
    let a = truncation(args.model, args.a.as_deref())?;
    let ps = parse_range(&args.p)?;
    let ns = match (args.problem, args.n.as_deref()) {
        (Problem::Pr, Some(_)) => {
            return Err(usage(
                "--n does not apply to pr, which is the same for every n",
            ))
        }
        (Problem::Pr, None) => None,
        (_, Some(n)) => Some(parse_range(n)?),
        (problem, None) => return Err(usage(format!("{} needs --n", problem.name()))),
    };
    let cells = ps
        .clone()
        .count()
        .saturating_mul(ns.clone().map_or(1, |r| r.count()));
    if cells > MAX_TABLE_CELLS {
        return Err(Error::Resource(format!(
            "{cells} cells exceeds the table limit of {MAX_TABLE_CELLS}"
        ))
        .into());
    }
    if args.no_decimal && args.output == Output::Json {
        return Err(usage("--no-decimal applies only to --output csv"));
    }

    let mut rows = Vec::with_capacity(cells);
    for p in ps {
        let n_values: Vec<Option<usize>> = match &ns {
            Some(r) => r.clone().map(Some).collect(),
            None => vec![None],
        };
        for n in n_values {
            let prob = exact(args.problem, args.model, p, n, a.as_ref())?;
            rows.push(Row {
                problem: args.problem,
                model: args.model,
                p,
                n,
                a: a.clone(),
                result: ExactResult::new(&prob, args.digits, vacuous(args.problem, p, n)),
            });
        }
    }
    match args.output {
        Output::Csv => Ok(Outcome::ok(write_csv(&rows, args.model, !args.no_decimal)?)),
        Output::Json => {
            let reports: Vec<Report> = rows
                .iter()
                .map(|r| Report {
                    command: "table".into(),
                    ..r.report()
                })
                .collect();
            Ok(Outcome::ok(report::to_json(&reports)))
        }
    }
}

fn constants(args: ConstantsArgs) -> Result<Outcome, Failure> {
    let (p, n) = (args.p, args.n);
    let plain = |index: i64, value: String| ConstantEntry {
        index,
        value,
        coeffs: None,
        display: None,
    };
    if args.model.is_some() && args.kind != ConstantKind::Emax {
        return Err(usage("--model applies only to emax"));
    }
    let (kind, model, values) = match args.kind {
        ConstantKind::Fib => {
            let table = StepFibTable::new(p)?;
            let values = (lowest_index(p)..=n as i64)
                .map(|i| Ok(plain(i, table.fib(i)?.to_string())))
                .collect::<sticks::Result<Vec<_>>>()?;
            ("fib", None, values)
        }
        ConstantKind::M => {
            let values = m_constants(p, n)?
                .into_iter()
                .zip(1..)
                .map(|(m, i)| plain(i, m.to_string()))
                .collect();
            ("m", None, values)
        }
        ConstantKind::S => {
            let values = s_constants(p, n)?
                .into_iter()
                .zip(1..)
                .map(|(s, i)| plain(i, s.to_string()))
                .collect();
            ("s", None, values)
        }
        ConstantKind::Emax => {
            let model = match args.model.unwrap_or(ModelArg::Pickup) {
                ModelArg::Pickup => Model::Pickup,
                ModelArg::Broken => Model::Broken,
                other => {
                    return Err(usage(format!(
                        "emax has no {} variant; use pickup or broken",
                        other.name()
                    )))
                }
            };
            let mut values = Vec::with_capacity(n.saturating_sub(1));
            for i in 1..n {
                let (den, form) = max_length_form(p, n, i, model)?;
                let display = if form.is_zero() {
                    format!("1 / {den}")
                } else {
                    format!("(1 - ({form})) / {den}")
                };
                values.push(ConstantEntry {
                    index: i as i64,
                    value: den.to_string(),
                    coeffs: Some(form.coeffs().iter().map(ToString::to_string).collect()),
                    display: Some(display),
                });
            }
            ("emax", Some(model.to_string()), values)
        }
    };
    let report = ConstantsReport {
        schema_version: SCHEMA_VERSION,
        command: "constants".into(),
        kind: kind.into(),
        p,
        n: Some(n),
        model,
        values,
    };
    Ok(Outcome::ok(report::to_json(&report)))
}
