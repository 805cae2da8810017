use std::io::{self, Write};
use std::time::{Duration, Instant};

use wilsonx_core::modarith::truncated_shifted_product_counted;
use wilsonx_core::oracle::ENUMERATION_BOUND;
use wilsonx_core::verify::{
    falling_factorial_sweep, lemma1_sweep, lemma2_sweep, oracle_sweep, SweepReport,
};
use wilsonx_core::{criterion_verdict, elem_sym_sum_mod, scan_range, Error, ScanRecord};

use crate::config::{OutputFormat, ScanConfig};
use crate::report::{describe, write_rows, Row};
use crate::{EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};

fn usage_error(
    err: &mut dyn Write,
    message: impl std::fmt::Display,
    usage: &str,
) -> io::Result<u8> {
    writeln!(err, "error: {message}")?;
    writeln!(err, "usage: {usage}")?;
    Ok(EXIT_USAGE)
}

fn report_violation(err: &mut dyn Write, record: &ScanRecord) -> io::Result<()> {
    writeln!(
        err,
        "THEORY VIOLATION: n = {}, c = {}, criterion mod n = {}, form = {:?}",
        record.n,
        record.c,
        record.criterion_residue.value(),
        record.classification.kind
    )
}

pub fn check(
    n: u64,
    c: u64,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    let (record, code) = match criterion_verdict(n, c) {
        Ok(record) => (record, EXIT_OK),
        Err(Error::TheoryViolation(record)) => (*record, EXIT_VIOLATION),
        Err(e) => return usage_error(err, e, "wilsonx check --n <N> --c <C> (needs c <= n - 2)"),
    };
    match format {
        OutputFormat::Table => write!(out, "{}", describe(&record))?,
        _ => write_rows(&mut *out, format, &[Row::from(&record)])?,
    }
    if code == EXIT_VIOLATION {
        report_violation(err, &record)?;
    }
    Ok(code)
}

pub fn scan(config: &ScanConfig, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    const USAGE: &str = "wilsonx scan --c <C> --from <N_LO> --to <N_HI> [--format table|csv|json-lines] [--jobs N] [--fail-fast]";
    if let Err(message) = config.validate() {
        return usage_error(err, message, USAGE);
    }
    let report = match scan_range(
        config.c,
        config.n_lo..=config.n_hi,
        config.parallelism,
        config.fail_fast,
    ) {
        Ok(report) => report,
        Err(e) => return usage_error(err, e, USAGE),
    };
    let rows: Vec<Row> = report.records.iter().map(Row::from).collect();
    write_rows(&mut *out, config.output_format, &rows)?;

    for record in report.records.iter().filter(|r| r.is_violation()) {
        report_violation(err, record)?;
    }
    let s = report.summary;
    writeln!(
        err,
        "summary: c = {}, n in [{}, {}], rows = {}, hits = {}, misses = {}, not-applicable = {}, violations = {}",
        config.c, config.n_lo, config.n_hi, report.records.len(), s.hits, s.misses, s.not_applicable, s.violations
    )?;
    if report.stopped_early {
        writeln!(err, "stopped early at the first violation (--fail-fast)")?;
    }
    Ok(if s.violations > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

fn write_sweeps(
    reports: &[SweepReport],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    let mut code = EXIT_OK;
    for report in reports {
        let status = if report.passed() { "ok" } else { "VIOLATED" };
        writeln!(
            out,
            "{:<24} {:>8} checked  {:>3} boundary  {status}",
            report.checker, report.checked, report.boundary
        )?;
        if let Some(first) = report.violations.first() {
            writeln!(
                err,
                "{} checker reported {} violation(s), first at {first}; this indicates an implementation bug",
                report.checker,
                report.violations.len()
            )?;
            code = EXIT_VIOLATION;
        }
    }
    Ok(code)
}

pub fn oracle(max: u64, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    if max > ENUMERATION_BOUND {
        return usage_error(
            err,
            format!(
                "refusing --max {max}: subset enumeration is bounded at n <= {ENUMERATION_BOUND}"
            ),
            "wilsonx oracle --max <N>",
        );
    }
    match oracle_sweep(max) {
        Ok(reports) => write_sweeps(&reports, out, err),
        Err(e) => usage_error(err, e, "wilsonx oracle --max <N>"),
    }
}

pub fn lemmas(n_max: u64, p_max: u64, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    let reports = [
        lemma1_sweep(n_max),
        lemma2_sweep(n_max),
        falling_factorial_sweep(p_max),
    ];
    write_sweeps(&reports, out, err)
}

pub fn bench(
    n: u64,
    c: u64,
    reps: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    const USAGE: &str = "wilsonx bench --n <N> [--c <C>] [--reps <R>]";
    if reps == 0 {
        return usage_error(err, "--reps must be positive", USAGE);
    }
    if n >= 2 && c > n - 1 {
        return usage_error(err, format!("need c <= n - 1, got n = {n}, c = {c}"), USAGE);
    }
    let (poly, ops) = match truncated_shifted_product_counted(n, c) {
        Ok(result) => result,
        Err(e) => return usage_error(err, e, USAGE),
    };
    let mut times = Vec::new();
    let mut residue = None;
    for _ in 0..reps {
        let start = Instant::now();
        let s = elem_sym_sum_mod(n, n - 1 - c).expect("validated input");
        times.push(start.elapsed());
        residue = Some(s);
    }
    let residue = residue.expect("at least one repetition");
    debug_assert_eq!(poly.coeff(c as usize), Some(residue));
    let min = times.iter().min().copied().unwrap_or_default();
    let mean = times.iter().sum::<Duration>().div_f64(reps as f64);
    let nominal = n as u128 * (c as u128 + 1);
    writeln!(out, "n = {n}, c = {c}, k = {}, reps = {reps}", n - 1 - c)?;
    writeln!(out, "e_k mod n        = {}", residue.value())?;
    writeln!(
        out,
        "multiply-adds    = {ops} (n(c+1) = {nominal}, difference {})",
        nominal - ops as u128
    )?;
    writeln!(out, "wall time        = min {min:.3?}, mean {mean:.3?}")?;
    Ok(EXIT_OK)
}
