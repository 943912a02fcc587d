//! Points, lines and jets in projective space over GF(p), and seeded
//! sampling of generic configurations.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::linalg::Matrix;

/// Resamples allowed per genericity-guard violation.
pub const MAX_RETRIES: usize = 32;

/// A point of P^n given by homogeneous coordinates in `[0, p)`.
///
/// Equality is projective: two points are equal when their coordinate
/// vectors are proportional.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<u64>,
    modulus: PrimeModulus,
}

impl ProjPoint {
    pub fn new(coords: Vec<u64>, modulus: PrimeModulus) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidDimension(coords.len().saturating_sub(1)));
        }
        let coords: Vec<u64> = coords.into_iter().map(|c| modulus.reduce(c)).collect();
        if coords.iter().all(|&c| c == 0) {
            return Err(Error::InvalidDimension(coords.len() - 1));
        }
        Ok(ProjPoint { coords, modulus })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Ambient dimension n.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Rescales the representative by a nonzero factor.
    pub fn scaled(&self, factor: u64) -> ProjPoint {
        let p = self.modulus;
        assert!(p.reduce(factor) != 0, "scale factor must be nonzero");
        ProjPoint {
            coords: self.coords.iter().map(|&c| p.mul(c, factor)).collect(),
            modulus: p,
        }
    }

    /// `self + t * other` on representatives.
    fn affine_combination(&self, t: u64, other: &ProjPoint) -> Vec<u64> {
        let p = self.modulus;
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| p.add(a, p.mul(t, b)))
            .collect()
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus != other.modulus || self.coords.len() != other.coords.len() {
            return false;
        }
        let p = self.modulus;
        let x = &self.coords;
        let y = &other.coords;
        (0..x.len()).all(|i| (i + 1..x.len()).all(|j| p.mul(x[i], y[j]) == p.mul(x[j], y[i])))
    }
}

impl Eq for ProjPoint {}

/// Rank of a stack of coordinate vectors.
fn span_rank(modulus: PrimeModulus, vectors: &[&[u64]]) -> usize {
    let cols = vectors.first().map_or(0, |v| v.len());
    let values = vectors.iter().flat_map(|v| v.iter().copied()).collect();
    Matrix::from_residues(modulus, vectors.len(), cols, values)
        .expect("vectors share a length")
        .rank()
}

/// The line through two independent points, parametrized as `a + t*b`
/// with `b` itself at parameter infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    a: ProjPoint,
    b: ProjPoint,
}

impl Line {
    pub fn new(a: ProjPoint, b: ProjPoint) -> Result<Self> {
        if a.modulus != b.modulus || a.coords.len() != b.coords.len() {
            return Err(Error::MixedModes);
        }
        if span_rank(a.modulus, &[&a.coords, &b.coords]) != 2 {
            return Err(Error::CoincidentLines);
        }
        Ok(Line { a, b })
    }

    pub fn a(&self) -> &ProjPoint {
        &self.a
    }

    pub fn b(&self) -> &ProjPoint {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.a.modulus
    }

    /// The point at parameter `t`.
    pub fn point_at(&self, t: u64) -> ProjPoint {
        ProjPoint {
            coords: self.a.affine_combination(t, &self.b),
            modulus: self.a.modulus,
        }
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        x.coords.len() == self.a.coords.len()
            && span_rank(self.modulus(), &[&self.a.coords, &self.b.coords, &x.coords]) == 2
    }

    /// Same line, re-anchored so that parameter `t0` becomes parameter 0.
    pub fn reanchored(&self, t0: u64) -> Line {
        Line {
            a: self.point_at(t0),
            b: self.b.clone(),
        }
    }

    /// Whether the two lines are the same set of points.
    pub fn same_line(&self, other: &Line) -> bool {
        other.contains(&self.a) && other.contains(&self.b)
    }
}

/// A divisor of a given length supported at one point of its axis.
///
/// Length 0 is the empty subscheme; a 1-jet still carries its axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub axis: Line,
    pub support_param: u64,
    pub length: usize,
}

impl Jet {
    pub fn new(axis: Line, support_param: u64, length: usize) -> Self {
        let support_param = axis.modulus().reduce(support_param);
        Jet {
            axis,
            support_param,
            length,
        }
    }

    pub fn support(&self) -> ProjPoint {
        self.axis.point_at(self.support_param)
    }
}

/// In degree `e`, a line imposes the same conditions as any (e+1)-jet on it.
pub fn line_as_jet(line: &Line, e: usize) -> Jet {
    Jet::new(line.clone(), 0, e + 1)
}

/// Free-point count and non-increasing jet lengths `(chi; r1 >= ... >= rm >= 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Weight {
    chi: usize,
    lengths: Vec<usize>,
}

impl Weight {
    pub fn new(chi: usize, lengths: Vec<usize>) -> Result<Self> {
        if lengths.contains(&0) {
            return Err(Error::ZeroLength);
        }
        if lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::UnsortedLengths);
        }
        Ok(Weight { chi, lengths })
    }

    /// Sorts the lengths and drops zeros (0-jets are empty).
    pub fn normalized(chi: usize, mut lengths: Vec<usize>) -> Self {
        lengths.retain(|&r| r > 0);
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Weight { chi, lengths }
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn jet_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn length_sum(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn total(&self) -> usize {
        self.chi + self.length_sum()
    }

    /// `(chi, r1, r2, ...)` as one sequence.
    pub fn flattened(&self) -> impl Iterator<Item = usize> + '_ {
        core::iter::once(self.chi).chain(self.lengths.iter().copied())
    }

    pub fn with_chi(&self, chi: usize) -> Weight {
        Weight {
            chi,
            lengths: self.lengths.clone(),
        }
    }
}

/// Lexicographic order on `(chi, r1, r2, ...)`, shorter sequences padded with zeros.
impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.lengths.len().max(other.lengths.len()) + 1;
        let a = self.flattened().chain(core::iter::repeat(0)).take(len);
        let b = other.flattened().chain(core::iter::repeat(0)).take(len);
        a.cmp(b)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `chi; r1 r2 ... rm`
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; ", self.chi)?;
        for (i, r) in self.lengths.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", r)?;
        }
        Ok(())
    }
}

/// Concrete jets and free points in P^n, plus the seed that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub n: usize,
    pub modulus: PrimeModulus,
    pub seed: u64,
    pub jets: Vec<Jet>,
    pub free_points: Vec<ProjPoint>,
}

impl Configuration {
    pub fn empty(n: usize, modulus: PrimeModulus, seed: u64) -> Self {
        Configuration {
            n,
            modulus,
            seed,
            jets: Vec::new(),
            free_points: Vec::new(),
        }
    }

    pub fn weight(&self) -> Weight {
        Weight::normalized(self.free_points.len(), self.jets.iter().map(|j| j.length).collect())
    }

    /// Checks the genericity guards: distinct supports and points, and no
    /// support on another jet's axis.
    pub fn satisfies_guards(&self) -> bool {
        let supports: Vec<ProjPoint> = self.jets.iter().map(Jet::support).collect();
        let all: Vec<&ProjPoint> = supports.iter().chain(&self.free_points).collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if all[i] == all[j] {
                    return false;
                }
            }
        }
        for (i, s) in supports.iter().enumerate() {
            for (j, jet) in self.jets.iter().enumerate() {
                if i != j && jet.axis.contains(s) {
                    return false;
                }
            }
        }
        true
    }
}

/// Seeded source of generic points, lines and configurations.
pub struct Sampler {
    rng: ChaCha8Rng,
    modulus: PrimeModulus,
}

impl Sampler {
    pub fn new(modulus: PrimeModulus, seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            modulus,
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn residue(&mut self) -> u64 {
        self.rng.gen_range(0..self.modulus.get())
    }

    /// Uniform point of P^n, resampled while all coordinates vanish.
    pub fn point(&mut self, n: usize) -> Result<ProjPoint> {
        random_point(n, self.modulus, &mut self.rng)
    }

    pub fn line(&mut self, n: usize) -> Result<Line> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        loop {
            let a = self.point(n)?;
            let b = self.point(n)?;
            if a != b {
                return Ok(Line { a, b });
            }
        }
    }

    /// Adds a jet on a fresh line, supported at parameter 0, respecting the guards.
    pub fn push_jet(&mut self, config: &mut Configuration, length: usize) -> Result<()> {
        for _ in 0..=MAX_RETRIES {
            let line = self.line(config.n)?;
            let support = line.a.clone();
            let clash = config.free_points.contains(&support)
                || config.jets.iter().any(|j| {
                    let s = j.support();
                    s == support || j.axis.contains(&support) || line.contains(&s)
                });
            if !clash {
                config.jets.push(Jet::new(line, 0, length));
                return Ok(());
            }
        }
        Err(Error::RetriesExhausted { what: "jet" })
    }

    pub fn push_free_point(&mut self, config: &mut Configuration) -> Result<()> {
        for _ in 0..=MAX_RETRIES {
            let x = self.point(config.n)?;
            let clash = config.free_points.contains(&x) || config.jets.iter().any(|j| j.support() == x);
            if !clash {
                config.free_points.push(x);
                return Ok(());
            }
        }
        Err(Error::RetriesExhausted { what: "free point" })
    }

    /// One jet per length (in the weight's order) on generic lines, then the free points.
    pub fn configuration(&mut self, weight: &Weight, n: usize, seed: u64) -> Result<Configuration> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let mut config = Configuration::empty(n, self.modulus, seed);
        for &r in weight.lengths() {
            self.push_jet(&mut config, r)?;
        }
        for _ in 0..weight.chi() {
            self.push_free_point(&mut config)?;
        }
        Ok(config)
    }
}

pub fn random_point<R: Rng>(n: usize, modulus: PrimeModulus, rng: &mut R) -> Result<ProjPoint> {
    if n < 1 {
        return Err(Error::InvalidDimension(n));
    }
    loop {
        let coords: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..modulus.get())).collect();
        if coords.iter().any(|&c| c != 0) {
            return Ok(ProjPoint { coords, modulus });
        }
    }
}

/// Samples a configuration realizing `weight` from a fresh generator seeded with `seed`.
pub fn sample_configuration(weight: &Weight, n: usize, modulus: PrimeModulus, seed: u64) -> Result<Configuration> {
    Sampler::new(modulus, seed).configuration(weight, n, seed)
}

/// The coordinate point with a single 1 at `index`.
pub fn unit_point(n: usize, index: usize, modulus: PrimeModulus) -> ProjPoint {
    let mut coords = vec![0; n + 1];
    coords[index] = 1;
    ProjPoint { coords, modulus }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p() -> PrimeModulus {
        PrimeModulus::default()
    }

    #[test]
    fn projective_equality_is_proportionality() {
        let x = ProjPoint::new(vec![1, 2, 3], p()).unwrap();
        assert_eq!(x, x.scaled(17));
        assert_ne!(x, ProjPoint::new(vec![1, 2, 4], p()).unwrap());
        assert!(ProjPoint::new(vec![0, 0, 0], p()).is_err());
    }

    #[test]
    fn random_point_is_reproducible() {
        let a = Sampler::new(p(), 11).point(2).unwrap();
        let b = Sampler::new(p(), 11).point(2).unwrap();
        assert_eq!(a.coords(), b.coords());
        assert_eq!(a.coords().len(), 3);
        let c = Sampler::new(p(), 3).point(1).unwrap();
        assert_eq!(c.coords().len(), 2);
        assert!(c.coords().iter().any(|&v| v != 0));
    }

    #[test]
    fn thousand_points_are_pairwise_distinct() {
        let mut s = Sampler::new(p(), 2024);
        let pts: Vec<ProjPoint> = (0..1000).map(|_| s.point(2).unwrap()).collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                assert_ne!(pts[i], pts[j], "collision between samples {} and {}", i, j);
            }
        }
    }

    #[test]
    fn random_lines_span_rank_two() {
        for n in [2, 3] {
            let l = Sampler::new(p(), 5).line(n).unwrap();
            assert_eq!(span_rank(p(), &[l.a().coords(), l.b().coords()]), 2);
            assert_eq!(Sampler::new(p(), 5).line(n).unwrap(), l);
        }
        assert!(Sampler::new(p(), 5).line(1).is_err());
    }

    #[test]
    fn random_lines_in_p3_are_disjoint() {
        let mut s = Sampler::new(p(), 99);
        let lines: Vec<Line> = (0..50).map(|_| s.line(3).unwrap()).collect();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                // lines meet iff their four spanning points are dependent
                let r = span_rank(
                    p(),
                    &[
                        lines[i].a().coords(),
                        lines[i].b().coords(),
                        lines[j].a().coords(),
                        lines[j].b().coords(),
                    ],
                );
                assert_eq!(r, 4);
            }
        }
    }

    #[test]
    fn line_membership_and_reanchoring() {
        let l = Sampler::new(p(), 8).line(3).unwrap();
        assert!(l.contains(&l.point_at(12345)));
        assert!(l.contains(l.b()));
        let r = l.reanchored(77);
        assert!(l.same_line(&r));
        assert_eq!(r.point_at(0), l.point_at(77));
    }

    #[test]
    fn weight_validation_and_display() {
        assert_eq!(Weight::new(0, vec![1, 2]), Err(Error::UnsortedLengths));
        assert_eq!(Weight::new(0, vec![2, 0]), Err(Error::ZeroLength));
        let w = Weight::new(3, vec![4, 3]).unwrap();
        assert_eq!(w.total(), 10);
        assert_eq!(w.to_string(), "3; 4 3");
        assert_eq!(Weight::new(10, vec![]).unwrap().to_string(), "10; ");
        assert_eq!(
            Weight::normalized(1, vec![1, 0, 3]),
            Weight::new(1, vec![3, 1]).unwrap()
        );
    }

    #[test]
    fn sampled_configurations_match_weights() {
        let cases = [(3, vec![]), (0, vec![2, 1]), (0, vec![4, 3, 2, 1]), (2, vec![3, 3, 1])];
        for (chi, lengths) in cases {
            let w = Weight::new(chi, lengths).unwrap();
            let c = sample_configuration(&w, 2, p(), 42).unwrap();
            assert_eq!(c.weight(), w);
            assert!(c.satisfies_guards());
            assert_eq!(c, sample_configuration(&w, 2, p(), 42).unwrap());
        }
        let c = sample_configuration(&Weight::new(0, vec![2, 1]).unwrap(), 2, p(), 1).unwrap();
        assert!(!c.jets[0].axis.same_line(&c.jets[1].axis));
        assert!(!c.jets[0].axis.contains(&c.jets[1].support()));
    }

    #[test]
    fn tiny_modulus_exhausts_retries() {
        // GF(3) P^2 has 13 points; 20 free points cannot be distinct.
        let q = PrimeModulus::new(3).unwrap();
        let w = Weight::new(20, vec![]).unwrap();
        assert_eq!(
            sample_configuration(&w, 2, q, 0),
            Err(Error::RetriesExhausted { what: "free point" })
        );
    }

    #[test]
    fn line_as_jet_has_length_e_plus_one() {
        let l = Sampler::new(p(), 1).line(2).unwrap();
        assert_eq!(line_as_jet(&l, 0).length, 1);
        assert_eq!(line_as_jet(&l, 3).length, 4);
        assert_eq!(line_as_jet(&l, 3).support_param, 0);
    }
}
