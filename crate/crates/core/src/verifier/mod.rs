//! Predicted versus measured rank for unions of jets.
//!
//! A prediction comes from condition C(n, d); a measurement samples one
//! configuration over GF(p) and computes the exact rank of its condition
//! matrix. Sweeps run one measurement per weight with seeds derived
//! deterministically from a base seed.

mod genpos;
mod prop21;
mod wronskian;

pub use genpos::{general_position_check, general_position_report, GeneralPositionReport, DEFAULT_SUBSET_CAP};
pub use prop21::{check_prop21, Prop21Report};
pub use wronskian::{coefficient_rank, wronskian_matrix, wronskian_rank};

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::admissibility::{check_condition_c, dimension, enumerate_admissible};
use crate::conditions::{condition_matrix, Arithmetic};
use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::geometry::{sample_configuration, Configuration, Weight};

const RETRY_SALT: u64 = 0x7265_7472_795f_6f6e; // "retry_on"
const SAMPLE_SALT: u64 = 0x7361_6d70_6c65_6421; // "sampled!"

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    /// Jet lengths sum to at most `C(n + d, d)`.
    pub covered: bool,
    pub expect_max_rank: bool,
    /// `min(C(n + d, d), total)`.
    pub expected_rank: usize,
}

/// Prediction for weights with sorted, positive lengths.
pub fn predict(n: usize, d: usize, w: &Weight) -> Prediction {
    let dim = dimension(n, d);
    let covered = w.length_sum() <= dim;
    let expect_max_rank = covered && check_condition_c(n, d, w.lengths()).unwrap_or(false);
    Prediction {
        covered,
        expect_max_rank,
        expected_rank: dim.min(w.total()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub n: usize,
    pub d: usize,
    pub weight: Weight,
    pub seed: u64,
    pub predicted: Prediction,
    pub measured_rank: usize,
    pub nullity: usize,
    /// The measurement confirms the prediction in the predicted direction.
    pub agrees: bool,
    /// This verdict came from the second, independent seed.
    pub retried: bool,
}

impl Verdict {
    pub fn is_max_rank(&self) -> bool {
        self.measured_rank == self.predicted.expected_rank
    }
}

/// Samples and measures one instance without checking coverage; uncovered
/// weights never agree.
pub fn measure_instance(n: usize, d: usize, w: &Weight, seed: u64, modulus: PrimeModulus) -> Result<Verdict> {
    if modulus.get() <= d as u64 {
        return Err(Error::ModulusTooSmall {
            modulus: modulus.get(),
            degree: d,
        });
    }
    let config = sample_configuration(w, n, modulus, seed)?;
    measure_configuration(&config, d)
}

/// Measures a given configuration against the prediction for its weight.
pub fn measure_configuration(config: &Configuration, d: usize) -> Result<Verdict> {
    if config.modulus.get() <= d as u64 {
        return Err(Error::ModulusTooSmall {
            modulus: config.modulus.get(),
            degree: d,
        });
    }
    let w = config.weight();
    let predicted = predict(config.n, d, &w);
    let cm = condition_matrix(config, d, Arithmetic::Modular)?;
    let measured_rank = cm.rank();
    let agrees = predicted.covered && ((measured_rank == predicted.expected_rank) == predicted.expect_max_rank);
    Ok(Verdict {
        n: config.n,
        d,
        weight: w,
        seed: config.seed,
        predicted,
        measured_rank,
        nullity: cm.basis.len() - measured_rank,
        agrees,
        retried: false,
    })
}

/// Measures one instance of a covered weight whose total does not exceed `C(n + d, d)`.
pub fn verify_instance(n: usize, d: usize, w: &Weight, seed: u64, modulus: PrimeModulus) -> Result<Verdict> {
    let dim = dimension(n, d);
    if w.length_sum() > dim {
        return Err(Error::NotCovered);
    }
    if w.total() > dim {
        return Err(Error::Overpadded {
            total: w.total(),
            dimension: dim,
        });
    }
    measure_instance(n, d, w, seed, modulus)
}

/// Verifies once; on disagreement, verifies again with an independent seed
/// and returns that second verdict.
pub fn verify_with_retry(n: usize, d: usize, w: &Weight, seed: u64, modulus: PrimeModulus) -> Result<Verdict> {
    let first = verify_instance(n, d, w, seed, modulus)?;
    if first.agrees {
        return Ok(first);
    }
    let retry_seed = mix(seed, RETRY_SALT);
    log::warn!(
        "n={} d={} weight [{}] seed {} disagreed (rank {}); retrying with seed {}",
        n,
        d,
        w,
        seed,
        first.measured_rank,
        retry_seed
    );
    let mut second = verify_instance(n, d, w, retry_seed, modulus)?;
    second.retried = true;
    Ok(second)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    /// Draws this many weights uniformly, with replacement, from S_d.
    Sampled(usize),
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Combines a seed with one more value.
pub fn mix(seed: u64, value: u64) -> u64 {
    splitmix64(seed ^ splitmix64(value))
}

/// Seed for one unit of sweep work, a pure function of its inputs.
pub fn derive_seed(base_seed: u64, w: &Weight, draw: u64) -> u64 {
    let h = w
        .flattened()
        .fold(mix(base_seed, w.jet_count() as u64), |acc, x| mix(acc, x as u64));
    mix(h, draw)
}

/// The `(weight, seed)` work items of a sweep, in deterministic order.
pub fn sweep_plan(n: usize, d: usize, mode: SweepMode, base_seed: u64, cap: usize) -> Result<Vec<(Weight, u64)>> {
    let set = enumerate_admissible(n, d, cap)?;
    match mode {
        SweepMode::Exhaustive => Ok(set
            .weights
            .into_iter()
            .map(|w| {
                let s = derive_seed(base_seed, &w, 0);
                (w, s)
            })
            .collect()),
        SweepMode::Sampled(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(base_seed, SAMPLE_SALT));
            Ok((0..k)
                .map(|i| {
                    let w = set.weights[rng.gen_range(0..set.weights.len())].clone();
                    let s = derive_seed(base_seed, &w, i as u64 + 1);
                    (w, s)
                })
                .collect())
        }
    }
}

/// Runs a sweep sequentially. Each item is independent, so callers may
/// instead run [`verify_with_retry`] over [`sweep_plan`] in parallel.
pub fn sweep(
    n: usize,
    d: usize,
    mode: SweepMode,
    base_seed: u64,
    modulus: PrimeModulus,
    cap: usize,
) -> Result<Vec<Verdict>> {
    sweep_plan(n, d, mode, base_seed, cap)?
        .iter()
        .map(|(w, seed)| verify_with_retry(n, d, w, *seed, modulus))
        .collect()
}
