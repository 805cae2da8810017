use std::fmt;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    #[value(name = "json-lines")]
    JsonLines,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Table => "table",
            OutputFormat::Csv => "csv",
            OutputFormat::JsonLines => "json-lines",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub c: u64,
    pub n_lo: u64,
    pub n_hi: u64,
    pub output_format: OutputFormat,
    pub parallelism: usize,
    pub fail_fast: bool,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_lo > self.n_hi {
            return Err(format!(
                "--from {} is greater than --to {}",
                self.n_lo, self.n_hi
            ));
        }
        if self.n_lo < 2 || self.c > self.n_lo - 2 {
            return Err(format!(
                "need c <= from - 2, got c = {}, from = {}",
                self.c, self.n_lo
            ));
        }
        if self.parallelism == 0 {
            return Err("--jobs must be positive".into());
        }
        Ok(())
    }
}

/// Plain decimal digits only: no sign, no exponent, no separators.
pub fn parse_decimal(s: &str) -> Result<u64, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a decimal nonnegative integer"));
    }
    s.parse()
        .map_err(|_| format!("`{s}` does not fit in 64 bits"))
}

pub fn parse_jobs(s: &str) -> Result<usize, String> {
    let jobs = parse_decimal(s)?;
    if jobs == 0 {
        return Err("worker count must be positive".into());
    }
    usize::try_from(jobs).map_err(|_| format!("`{s}` is too large"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_strict() {
        assert_eq!(parse_decimal("0"), Ok(0));
        assert_eq!(parse_decimal("1000000"), Ok(1_000_000));
        for bad in [
            "",
            "+5",
            "-1",
            "1e6",
            "2^62",
            "1_000",
            " 7",
            "0x10",
            "18446744073709551616",
        ] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
        assert!(parse_jobs("0").is_err());
        assert_eq!(parse_jobs("4"), Ok(4));
    }

    #[test]
    fn scan_config_validation() {
        let config = ScanConfig {
            c: 1,
            n_lo: 25,
            n_hi: 60,
            output_format: OutputFormat::Csv,
            parallelism: 2,
            fail_fast: false,
        };
        assert!(config.validate().is_ok());
        assert!(ScanConfig {
            n_lo: 61,
            ..config.clone()
        }
        .validate()
        .is_err());
        assert!(ScanConfig {
            c: 24,
            ..config.clone()
        }
        .validate()
        .is_err());
        assert!(ScanConfig {
            parallelism: 0,
            ..config
        }
        .validate()
        .is_err());
    }
}
