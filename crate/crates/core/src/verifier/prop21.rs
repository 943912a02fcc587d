//! Flanking-jet check: maximal rank of `Y` plus a (v+1)-jet and of `Y`
//! plus a (v-1)-jet on a line `D`, versus maximal rank of `Y` plus the
//! v-jet on `D` with the same support.

use crate::admissibility::dimension;
use crate::conditions::{condition_matrix, jets_matrix, Arithmetic};
use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::geometry::{Jet, Sampler, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapRank {
    pub rows: usize,
    pub rank: usize,
}

impl MapRank {
    /// Source is the space of degree-d forms, of dimension `cols`.
    pub fn injective(&self, cols: usize) -> bool {
        self.rank == cols
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.rows
    }

    pub fn maximal(&self, cols: usize) -> bool {
        self.rank == self.rows.min(cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop21Report {
    pub n: usize,
    pub d: usize,
    pub v: usize,
    pub seed: u64,
    pub y_weight: Weight,
    /// `C(n + d, d)`.
    pub forms: usize,
    /// Dimension of degree-d forms vanishing on `Y`.
    pub h0_y: usize,
    pub plus: MapRank,
    pub minus: MapRank,
    pub mid: MapRank,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
}

impl Prop21Report {
    pub fn rank_plus(&self) -> usize {
        self.plus.rank
    }

    pub fn rank_minus(&self) -> usize {
        self.minus.rank
    }

    pub fn rank_mid(&self) -> usize {
        self.mid.rank
    }

    pub fn plus_maximal(&self) -> bool {
        self.plus.maximal(self.forms)
    }

    pub fn minus_maximal(&self) -> bool {
        self.minus.maximal(self.forms)
    }

    /// The (v+1) map is injective but not surjective and the (v-1) map is
    /// surjective but not injective.
    pub fn remaining_case(&self) -> bool {
        self.plus.injective(self.forms)
            && !self.plus.surjective()
            && self.minus.surjective()
            && !self.minus.injective(self.forms)
    }

    pub fn mid_bijective(&self) -> bool {
        self.mid.injective(self.forms) && self.mid.surjective()
    }

    /// Hypotheses hold but the conclusion fails.
    pub fn is_counterexample(&self) -> bool {
        self.hypotheses_hold && !self.conclusion_holds
    }
}

/// Samples `Y` of the given weight and a fresh generic line `D`, then
/// measures the three unions sharing `Y`, `D` and the jet support.
pub fn check_prop21(
    y_weight: &Weight,
    v: usize,
    n: usize,
    d: usize,
    seed: u64,
    modulus: PrimeModulus,
) -> Result<Prop21Report> {
    if v == 0 {
        return Err(Error::InvalidJetLength(0));
    }
    if modulus.get() <= d as u64 {
        return Err(Error::ModulusTooSmall {
            modulus: modulus.get(),
            degree: d,
        });
    }
    let mut sampler = Sampler::new(modulus, seed);
    let mut config = sampler.configuration(y_weight, n, seed)?;
    let y = condition_matrix(&config, d, Arithmetic::Modular)?;
    // D is sampled under the same guards as Y's own jets.
    sampler.push_jet(&mut config, v + 1)?;
    let d_jet = config.jets.pop().expect("just pushed");
    let forms = dimension(n, d);

    let measure = |length: usize| -> Result<MapRank> {
        let jet = Jet::new(d_jet.axis.clone(), d_jet.support_param, length);
        let extra = jets_matrix(modulus, &[jet], &y.basis)?;
        let m = y.matrix.vstack(&extra)?;
        Ok(MapRank {
            rows: m.rows(),
            rank: m.rank(),
        })
    };
    let plus = measure(v + 1)?;
    let minus = measure(v - 1)?;
    let mid = measure(v)?;
    let hypotheses_hold = plus.maximal(forms) && minus.maximal(forms);
    Ok(Prop21Report {
        n,
        d,
        v,
        seed,
        y_weight: y_weight.clone(),
        forms,
        h0_y: y.nullity(),
        plus,
        minus,
        mid,
        hypotheses_hold,
        conclusion_holds: mid.maximal(forms),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(chi: usize, lengths: &[usize]) -> Weight {
        Weight::new(chi, lengths.to_vec()).unwrap()
    }

    #[test]
    fn empty_y() {
        let r = check_prop21(&Weight::default(), 1, 2, 1, 3, PrimeModulus::default()).unwrap();
        assert!(r.plus_maximal() && r.minus_maximal() && r.conclusion_holds);
        assert_eq!(r.h0_y, 3);
        assert_eq!((r.rank_plus(), r.rank_minus(), r.rank_mid()), (2, 0, 1));
    }

    #[test]
    fn four_jet_and_three_points() {
        for seed in 0..10 {
            let r = check_prop21(&w(3, &[4]), 2, 2, 3, seed, PrimeModulus::default()).unwrap();
            assert!(r.hypotheses_hold, "seed {}", seed);
            assert!(r.conclusion_holds, "seed {}", seed);
            assert_eq!(r.h0_y, 3);
        }
    }

    #[test]
    fn remaining_case_is_bijective() {
        // Y = (3, 3, 1) in degree 3 leaves h0 = 3 = v; v+1 gives 11 rows, v-1 gives 9
        let r = check_prop21(&w(0, &[3, 3, 1]), 3, 2, 3, 11, PrimeModulus::default()).unwrap();
        assert!(r.remaining_case());
        assert!(r.mid_bijective());
        assert_eq!(r.h0_y, r.v);
    }

    #[test]
    fn zero_v_is_rejected() {
        assert_eq!(
            check_prop21(&Weight::default(), 0, 2, 1, 0, PrimeModulus::default()),
            Err(Error::InvalidJetLength(0))
        );
    }
}
