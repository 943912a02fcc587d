//! Sweep reports in JSON and CSV.

use jetrank_core::verifier::Verdict;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    /// `chi; r1 r2 ...`
    pub weight: String,
    pub seed: u64,
    pub covered: bool,
    pub expect_max_rank: bool,
    pub expected_rank: usize,
    pub measured_rank: usize,
    pub nullity: usize,
    pub agrees: bool,
    pub retried: bool,
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        VerdictRecord {
            weight: v.weight.to_string(),
            seed: v.seed,
            covered: v.predicted.covered,
            expect_max_rank: v.predicted.expect_max_rank,
            expected_rank: v.predicted.expected_rank,
            measured_rank: v.measured_rank,
            nullity: v.nullity,
            agrees: v.agrees,
            retried: v.retried,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub d: usize,
    pub p: u64,
    pub base_seed: u64,
    pub verdicts: Vec<VerdictRecord>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub verdicts: usize,
    pub agree: usize,
    pub disagree: usize,
    pub retried: usize,
    pub uncovered: usize,
}

impl Summary {
    pub fn of(reports: &[SweepReport]) -> Self {
        let mut s = Summary::default();
        for v in reports.iter().flat_map(|r| &r.verdicts) {
            s.verdicts += 1;
            s.retried += v.retried as usize;
            if !v.covered {
                s.uncovered += 1;
            } else if v.agrees {
                s.agree += 1;
            } else {
                s.disagree += 1;
            }
        }
        s
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} verdicts: {} agree, {} disagree, {} retried, {} uncovered",
            self.verdicts, self.agree, self.disagree, self.retried, self.uncovered
        )
    }
}

/// One report renders as an object, several as an array.
pub fn to_json(reports: &[SweepReport]) -> Result<String, CliError> {
    let mut text = match reports {
        [one] => serde_json::to_string_pretty(one)?,
        many => serde_json::to_string_pretty(many)?,
    };
    text.push('\n');
    Ok(text)
}

pub fn to_csv(reports: &[SweepReport]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n",
        "d",
        "weight",
        "seed",
        "covered",
        "expect_max_rank",
        "expected_rank",
        "measured_rank",
        "nullity",
        "agrees",
        "retried",
    ])?;
    for r in reports {
        for v in &r.verdicts {
            w.write_record([
                r.n.to_string(),
                r.d.to_string(),
                v.weight.clone(),
                v.seed.to_string(),
                v.covered.to_string(),
                v.expect_max_rank.to_string(),
                v.expected_rank.to_string(),
                v.measured_rank.to_string(),
                v.nullity.to_string(),
                v.agrees.to_string(),
                v.retried.to_string(),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
