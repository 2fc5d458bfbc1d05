//! Named pass/fail checks with exact witnesses.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{LatticeError, Result};

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Exact values backing the verdict; integers and rationals are strings.
    pub witness: Value,
    pub runtime_ms: u64,
}

/// An ordered list of checks with unique names.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    /// Conjunction of all checks; true for an empty report.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, check: Check) -> Result<()> {
        if self.get(&check.name).is_some() {
            return Err(LatticeError::Precondition(format!(
                "duplicate check name {:?}",
                check.name
            )));
        }
        self.checks.push(check);
        Ok(())
    }

    /// Runs `f`, timing it. An `Err` becomes a failing check whose witness
    /// carries the error message.
    pub fn run<F>(&mut self, name: &str, f: F) -> Result<()>
    where
        F: FnOnce() -> Result<(bool, Value)>,
    {
        let start = Instant::now();
        let (pass, witness) = match f() {
            Ok(v) => v,
            Err(e) => (false, serde_json::json!({ "error": e.to_string() })),
        };
        self.push(Check {
            name: name.to_string(),
            pass,
            witness,
            runtime_ms: start.elapsed().as_millis() as u64,
        })
    }

    /// Appends every check of `other`, keeping names unique.
    pub fn extend(&mut self, other: VerificationReport) -> Result<()> {
        for c in other.checks {
            self.push(c)?;
        }
        Ok(())
    }

    /// The JSON document `{"suite", "checks", "pass"}`.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "suite": self.suite,
            "checks": self.checks,
            "pass": self.pass(),
        })
    }
}

/// Exact decimal form when the denominator is `2^a 5^b`, else `num/den`.
pub fn rational_string(r: &BigRational) -> String {
    let den = r.denom().clone();
    let mut rest = den.clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", r.numer(), den);
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return r.numer().to_string();
    }
    let scale = BigInt::from(10).pow(digits);
    let scaled = r.numer() * (&scale / &den);
    let negative = scaled < BigInt::zero();
    let s = num_traits::Signed::abs(&scaled).to_string();
    let s = format!("{s:0>width$}", width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    format!("{}{int}.{frac}", if negative { "-" } else { "" })
}

/// Reads a finite decimal such as `0.06007` or `-3` as an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || LatticeError::Parse(format!("not a decimal: {s:?}"));
    let (negative, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    let r = BigRational::new(digits, den);
    Ok(if negative { -r } else { r })
}

/// Parses `p/q` or a decimal.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| LatticeError::Parse(format!("bad numerator in {s:?}")))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| LatticeError::Parse(format!("bad denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(LatticeError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => parse_decimal(s.trim()),
    }
}
