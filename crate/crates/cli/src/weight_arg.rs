//! Command-line weight syntax: `5,5` or `5,5:3`, lengths in any order,
//! with an optional `:chi` suffix. An empty length list is written `""` or `:chi`.

use jetrank_core::Weight;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightArg {
    pub lengths: Vec<usize>,
    pub chi: Option<usize>,
}

impl WeightArg {
    /// The weight with `chi` defaulting to `default_chi` computed from the length sum.
    pub fn resolve(&self, default_chi: impl FnOnce(usize) -> Result<usize, CliError>) -> Result<Weight, CliError> {
        let chi = match self.chi {
            Some(c) => c,
            None => default_chi(self.lengths.iter().sum())?,
        };
        let mut lengths = self.lengths.clone();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Weight::new(chi, lengths)?)
    }
}

fn number(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("'{}' is not a non-negative integer", s.trim()))
}

pub fn parse_weight(s: &str) -> Result<WeightArg, String> {
    let (lengths, chi) = match s.split_once(':') {
        Some((l, c)) => (l, Some(number(c)?)),
        None => (s, None),
    };
    let lengths = if lengths.trim().is_empty() {
        Vec::new()
    } else {
        lengths.split(',').map(number).collect::<Result<Vec<_>, _>>()?
    };
    if lengths.contains(&0) {
        return Err("jet lengths must be positive".into());
    }
    Ok(WeightArg { lengths, chi })
}

/// A comma-separated list of residues, as used for coordinates and coefficients.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("'{}' is not a non-negative integer", x.trim()))
        })
        .collect()
}

/// Degrees from an inclusive range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees(pub Vec<usize>);

/// Inclusive degree range: `4`, `1..4` or `1..=4`.
pub fn parse_degrees(s: &str) -> Result<Degrees, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (number(lo)?, number(hi.trim_start_matches('='))?),
        None => {
            let d = number(s)?;
            (d, d)
        }
    };
    if lo > hi {
        return Err(format!("empty degree range {}", s));
    }
    Ok(Degrees((lo..=hi).collect()))
}
