//! Versioned JSON form of a sampled configuration.

use jetrank_core::{Configuration, Jet, Line, PrimeModulus, ProjPoint};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetDoc {
    /// The two spanning points `[a, b]`.
    pub axis: [Vec<u64>; 2],
    /// Support is `a + t0 * b`.
    pub t0: u64,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub version: u32,
    pub n: usize,
    pub p: u64,
    pub seed: u64,
    pub jets: Vec<JetDoc>,
    pub free_points: Vec<Vec<u64>>,
}

impl From<&Configuration> for ConfigDoc {
    fn from(c: &Configuration) -> Self {
        ConfigDoc {
            version: CONFIG_VERSION,
            n: c.n,
            p: c.modulus.get(),
            seed: c.seed,
            jets: c
                .jets
                .iter()
                .map(|j| JetDoc {
                    axis: [j.axis.a().coords().to_vec(), j.axis.b().coords().to_vec()],
                    t0: j.support_param,
                    length: j.length,
                })
                .collect(),
            free_points: c.free_points.iter().map(|q| q.coords().to_vec()).collect(),
        }
    }
}

impl ConfigDoc {
    pub fn to_configuration(&self) -> Result<Configuration, CliError> {
        if self.version != CONFIG_VERSION {
            return Err(CliError::usage(format!(
                "unsupported configuration version {}",
                self.version
            )));
        }
        let modulus = PrimeModulus::new(self.p)?;
        let point = |coords: &Vec<u64>| -> Result<ProjPoint, CliError> {
            if coords.len() != self.n + 1 {
                return Err(CliError::usage(format!("point {:?} is not in P^{}", coords, self.n)));
            }
            if let Some(&c) = coords.iter().find(|&&c| c >= self.p) {
                return Err(CliError::usage(format!(
                    "coordinate {} is not reduced mod {}",
                    c, self.p
                )));
            }
            Ok(ProjPoint::new(coords.clone(), modulus)?)
        };
        let mut config = Configuration::empty(self.n, modulus, self.seed);
        for j in &self.jets {
            if j.t0 >= self.p {
                return Err(CliError::usage(format!("t0 {} is not reduced mod {}", j.t0, self.p)));
            }
            let axis = Line::new(point(&j.axis[0])?, point(&j.axis[1])?)?;
            config.jets.push(Jet::new(axis, j.t0, j.length));
        }
        for q in &self.free_points {
            config.free_points.push(point(q)?);
        }
        Ok(config)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }
}
