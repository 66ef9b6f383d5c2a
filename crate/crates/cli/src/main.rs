use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use connectors::genfunc::{closed_form_gf, transfer_distribution};
use connectors::linsys::{
    build_system_matrix, cramer_numerators, det_closed_form, term_sum, poly_det, term_permutation,
};
use connectors::totals;
use connectors::verify::{self, Outcome, VerifyConfig};
use connectors::word::{brute_distribution_capped, stat_count, ConnectorKind, ConnectorStat, Word, DEFAULT_ENUM_CAP};
use connectors::{BPolynomial, Error, QPolynomial};

const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "connectors", version, about = "Exact k-connector and gk-connector statistics on k-ary words")]
struct Cli {
    /// Add a human-readable rendering of polynomial results.
    #[arg(long, global = true)]
    pretty: bool,

    /// Maximum number of words a brute-force enumeration may visit.
    #[arg(long, global = true, env = "CONNECTOR_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatArg {
    Kcon,
    Gkcon,
}

impl StatArg {
    fn kind(self) -> ConnectorKind {
        match self {
            StatArg::Kcon => ConnectorKind::SumEquals,
            StatArg::Gkcon => ConnectorKind::SumGreater,
        }
    }

    fn name(self) -> &'static str {
        match self {
            StatArg::Kcon => "kcon",
            StatArg::Gkcon => "gkcon",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistMethod {
    Brute,
    Transfer,
    Gf,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TotalMethod {
    Formula,
    Brute,
    Transfer,
    Gf,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count k-connectors and gk-connectors of one word.
    Stats {
        /// Digit string (letters 1-9) or comma-separated letters.
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: u32,
    },
    /// Distribution polynomial of a statistic over all words of length n.
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        stat: StatArg,
        /// Pair-sum threshold; defaults to k.
        #[arg(long)]
        threshold: Option<u32>,
        #[arg(long, value_enum, default_value = "all")]
        method: DistMethod,
    },
    /// Sum of a statistic over all words of length n.
    Total {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        stat: StatArg,
        #[arg(long, value_enum, default_value = "formula")]
        method: TotalMethod,
    },
    /// Determinant and Cramer numerators of the gk-connector linear system.
    Det {
        #[arg(long)]
        k: u32,
    },
    /// Run every cross-check; exit 3 on the first mismatch.
    Verify {
        #[arg(long, default_value_t = 6)]
        kmax: u32,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Upper k for the determinant checks.
        #[arg(long, default_value_t = 14)]
        det_kmax: u32,
        /// Upper n for totals read off the generating-function series.
        #[arg(long, default_value_t = 50)]
        series_nmax: usize,
    },
    /// Totals triangle T(n, k) for 0 <= n <= nmax, 1 <= k <= kmax.
    Table {
        #[arg(long, value_enum)]
        stat: StatArg,
        #[arg(long)]
        kmax: u32,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

#[derive(Serialize)]
struct OutputRecord {
    command: &'static str,
    inputs: BTreeMap<&'static str, Value>,
    result: Value,
    method: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    display: Option<String>,
}

impl OutputRecord {
    fn new(command: &'static str, result: Value, method: impl Into<String>) -> Self {
        OutputRecord {
            command,
            inputs: BTreeMap::new(),
            result,
            method: method.into(),
            status: "ok",
            agreement: None,
            details: None,
            display: None,
        }
    }

    fn input(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key, value.into());
        self
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EnumerationTooLarge { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn poly_json<V>(p: &connectors::algebra::Poly<V>) -> Value {
    json!(p.to_decimal_strings())
}

fn check_k(k: u32) -> Result<(), Failure> {
    if k == 0 {
        return Err(Error::EmptyAlphabet.into());
    }
    Ok(())
}

fn standard_stat(kind: ConnectorKind, k: u32) -> ConnectorStat {
    match kind {
        ConnectorKind::SumEquals => ConnectorStat::kcon(k),
        ConnectorKind::SumGreater => ConnectorStat::gkcon(k),
    }
}

fn emit(record: &OutputRecord) {
    println!("{}", serde_json::to_string_pretty(record).expect("records serialize"));
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Stats { word, k } => {
            check_k(k)?;
            let w = Word::parse(&word, k)?;
            let record = OutputRecord::new(
                "stats",
                json!({
                    "kcon": stat_count(&w, ConnectorStat::kcon(k)).to_string(),
                    "gkcon": stat_count(&w, ConnectorStat::gkcon(k)).to_string(),
                }),
                "direct",
            )
            .input("word", w.to_string())
            .input("k", k);
            emit(&record);
            Ok(0)
        }
        Command::Dist { n, k, stat, threshold, method } => {
            check_k(k)?;
            let threshold = threshold.unwrap_or(k);
            let s = ConnectorStat::new(stat.kind(), threshold)?;
            dist(n, k, stat, s, method, cli.enum_cap, cli.pretty)
        }
        Command::Total { n, k, stat, method } => {
            check_k(k)?;
            total(n, k, stat, method, cli.enum_cap)
        }
        Command::Det { k } => {
            check_k(k)?;
            det(k, cli.pretty)
        }
        Command::Verify { kmax, nmax, det_kmax, series_nmax } => {
            if kmax == 0 {
                return Err(Failure::usage("kmax must be at least 1"));
            }
            let cfg = VerifyConfig { det_kmax, series_nmax, enum_cap: cli.enum_cap, ..VerifyConfig::new(kmax, nmax) };
            verify_cmd(&cfg)
        }
        Command::Table { stat, kmax, nmax, format } => {
            let format = Format::from_str(&format, true)
                .map_err(|_| Failure::usage(format!("unknown format {format:?}; expected json or csv")))?;
            if kmax == 0 {
                return Err(Failure::usage("kmax must be at least 1"));
            }
            table(stat, kmax, nmax, format);
            Ok(0)
        }
    }
}

fn dist(
    n: usize,
    k: u32,
    stat: StatArg,
    s: ConnectorStat,
    method: DistMethod,
    cap: u64,
    pretty: bool,
) -> Result<u8, Failure> {
    let gf_poly = || closed_form_gf(k, s).map(|gf| gf.coefficient(n));
    let mut computed: Vec<(&'static str, QPolynomial)> = Vec::new();
    let mut skipped: BTreeMap<&'static str, String> = BTreeMap::new();
    match method {
        DistMethod::Brute => computed.push(("brute", brute_distribution_capped(n, k, s, cap)?)),
        DistMethod::Transfer => computed.push(("transfer", transfer_distribution(n, k, s))),
        DistMethod::Gf => match gf_poly() {
            Some(p) => computed.push(("gf", p)),
            None => return Err(Failure::usage("method gf requires threshold equal to k")),
        },
        DistMethod::All => {
            match brute_distribution_capped(n, k, s, cap) {
                Ok(p) => computed.push(("brute", p)),
                Err(e) => {
                    skipped.insert("brute", e.to_string());
                }
            }
            computed.push(("transfer", transfer_distribution(n, k, s)));
            match gf_poly() {
                Some(p) => computed.push(("gf", p)),
                None => {
                    skipped.insert("gf", "closed form needs threshold equal to k".into());
                }
            }
        }
    }
    let (_, first) = &computed[0];
    let agree = computed.iter().all(|(_, p)| p == first);
    let names: Vec<&str> = computed.iter().map(|(m, _)| *m).collect();
    let mut record = OutputRecord::new("dist", poly_json(first), names.join(","))
        .input("n", n)
        .input("k", k)
        .input("stat", stat.name())
        .input("threshold", s.threshold());
    if method == DistMethod::All {
        record.agreement = Some(agree);
        let mut details = serde_json::Map::new();
        for (m, p) in &computed {
            details.insert((*m).to_string(), poly_json(p));
        }
        for (m, why) in &skipped {
            details.insert((*m).to_string(), json!({ "skipped": why }));
        }
        record.details = Some(Value::Object(details));
    }
    if pretty {
        record.display = Some(first.to_string());
    }
    if !agree {
        record.status = "mismatch";
        emit(&record);
        for (m, p) in &computed {
            eprintln!("{m}: {p}");
        }
        eprintln!("methods disagree");
        return Ok(EXIT_MISMATCH);
    }
    emit(&record);
    Ok(0)
}

fn total(n: usize, k: u32, stat: StatArg, method: TotalMethod, cap: u64) -> Result<u8, Failure> {
    let s = standard_stat(stat.kind(), k);
    let formula = || BigInt::from(totals::total(n, k, stat.kind()));
    let from_gf = || closed_form_gf(k, s).expect("natural threshold").derivative_q_at_1().coefficient(n).constant_term();
    let from_transfer = || verify::total_from_distribution(&transfer_distribution(n, k, s));
    let mut computed: Vec<(&'static str, BigInt)> = Vec::new();
    match method {
        TotalMethod::Formula => computed.push(("formula", formula())),
        TotalMethod::Gf => computed.push(("gf", from_gf())),
        TotalMethod::Transfer => computed.push(("transfer", from_transfer())),
        TotalMethod::Brute => {
            let p = brute_distribution_capped(n, k, s, cap)?;
            computed.push(("brute", verify::total_from_distribution(&p)));
        }
        TotalMethod::All => {
            computed.push(("formula", formula()));
            if let Ok(p) = brute_distribution_capped(n, k, s, cap) {
                computed.push(("brute", verify::total_from_distribution(&p)));
            }
            computed.push(("transfer", from_transfer()));
            computed.push(("gf", from_gf()));
        }
    }
    let first = computed[0].1.clone();
    let agree = computed.iter().all(|(_, v)| *v == first);
    let names: Vec<&str> = computed.iter().map(|(m, _)| *m).collect();
    let mut record = OutputRecord::new("total", json!(first.to_string()), names.join(","))
        .input("n", n)
        .input("k", k)
        .input("stat", stat.name());
    if method == TotalMethod::All {
        record.agreement = Some(agree);
        record.details = Some(Value::Object(computed.iter().map(|(m, v)| ((*m).to_string(), json!(v.to_string()))).collect()));
    }
    if !agree {
        record.status = "mismatch";
        emit(&record);
        eprintln!("methods disagree");
        return Ok(EXIT_MISMATCH);
    }
    emit(&record);
    Ok(0)
}

fn det(k: u32, pretty: bool) -> Result<u8, Failure> {
    let a = build_system_matrix(k);
    let computed = poly_det(&a)?;
    let closed = det_closed_form(k);
    let numerators = cramer_numerators(k);
    let sum: BPolynomial = numerators.iter().sum();
    let term_sum = term_sum(k);
    let permutation = term_permutation(k);
    let all_match = computed == closed && sum == term_sum && permutation.is_some();
    let result = json!({
        "k": k,
        "matrix": a.rows().iter().map(|r| r.iter().map(poly_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "det_computed": poly_json(&computed),
        "det_closed_form": poly_json(&closed),
        "match": computed == closed,
        "cramer_numerators": numerators.iter().map(poly_json).collect::<Vec<_>>(),
        "term_sum": poly_json(&term_sum),
        "sum_match": sum == term_sum,
        "permutation": permutation,
    });
    let mut record = OutputRecord::new("det", result, "bareiss").input("k", k);
    if pretty {
        let mut text = format!("A =\n{a}\ndet A = {computed}\n");
        for (l, nl) in numerators.iter().enumerate() {
            let _ = writeln!(text, "det A_{} = a * ({nl})", l + 1);
        }
        record.display = Some(text);
    }
    if !all_match {
        record.status = "mismatch";
        emit(&record);
        return Ok(EXIT_MISMATCH);
    }
    emit(&record);
    Ok(0)
}

fn verify_cmd(cfg: &VerifyConfig) -> Result<u8, Failure> {
    let report = verify::run(cfg);
    let mut summary = Vec::new();
    for name in report.check_names() {
        let cells: Vec<_> = report.checks.iter().filter(|c| c.check == name).collect();
        let failed = cells.iter().filter(|c| !c.passed()).count();
        let skipped = cells.iter().filter(|c| matches!(c.outcome, Outcome::Skipped(_))).count();
        let passed = cells.len() - failed - skipped;
        let status = if failed == 0 { "PASS" } else { "FAIL" };
        let extra = if skipped > 0 { format!(", {skipped} skipped") } else { String::new() };
        eprintln!("{status} {name} ({passed}/{}{extra})", cells.len());
        summary.push(json!({
            "check": name,
            "cells": cells.len(),
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
        }));
    }
    for f in &report.findings {
        match f.k {
            Some(k) => eprintln!("NOTE {} k={k}: {}", f.topic, f.message),
            None => eprintln!("NOTE {}: {}", f.topic, f.message),
        }
    }
    let failures: Vec<Value> = report
        .checks
        .iter()
        .filter_map(|c| match &c.outcome {
            Outcome::Fail(detail) => Some(json!({
                "check": c.check, "k": c.k, "n": c.n, "stat": c.stat, "detail": detail,
            })),
            _ => None,
        })
        .collect();
    let findings: Vec<Value> =
        report.findings.iter().map(|f| json!({ "topic": f.topic, "k": f.k, "message": f.message })).collect();
    let mut record = OutputRecord::new(
        "verify",
        json!({ "passed": report.passed(), "checks": summary, "failures": failures, "findings": findings }),
        "cross-check",
    )
    .input("kmax", cfg.kmax)
    .input("nmax", cfg.nmax)
    .input("det_kmax", cfg.det_kmax)
    .input("series_nmax", cfg.series_nmax);
    if let Some(first) = report.first_failure() {
        record.status = "mismatch";
        emit(&record);
        eprintln!("first mismatch: {}", first.location());
        return Ok(EXIT_MISMATCH);
    }
    emit(&record);
    Ok(0)
}

fn table(stat: StatArg, kmax: u32, nmax: usize, format: Format) {
    let rows: Vec<Vec<String>> = (0..=nmax)
        .map(|n| (1..=kmax).map(|k| totals::total(n, k, stat.kind()).to_string()).collect())
        .collect();
    match format {
        Format::Csv => {
            let header: Vec<String> = (1..=kmax).map(|k| k.to_string()).collect();
            println!("n\\k,{}", header.join(","));
            for (n, row) in rows.iter().enumerate() {
                println!("{n},{}", row.join(","));
            }
        }
        Format::Json => {
            let record = OutputRecord::new(
                "table",
                json!({
                    "columns": (1..=kmax).collect::<Vec<_>>(),
                    "rows": rows.iter().enumerate().map(|(n, r)| json!({ "n": n, "values": r })).collect::<Vec<_>>(),
                }),
                "formula",
            )
            .input("stat", stat.name())
            .input("kmax", kmax)
            .input("nmax", nmax);
            emit(&record);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
