//! Condition matrices of the degree-d evaluation map.
//!
//! Rows are linear functionals on degree-d forms, columns are monomials.
//! A jet of length r on an axis `a + t*b` contributes the first r Taylor
//! coefficients, at its support parameter, of the form restricted to the
//! axis. A free point contributes one evaluation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::field::{Integers, PrimeModulus, Ring};
use crate::geometry::{Configuration, Jet, Line, ProjPoint};
use crate::linalg::{Matrix, RingMatrix};

/// Degree-d monomials in `x0..xn`, graded-lex (here plain lex, highest
/// power of `x0` first, since all share one degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    exponents: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: usize) -> Self {
        let mut exponents = Vec::new();
        let mut current = vec![0u32; n + 1];
        fill(&mut exponents, &mut current, 0, d as u32);
        MonomialBasis { n, d, exponents }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }
}

fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

pub fn monomial_basis(n: usize, d: usize) -> MonomialBasis {
    MonomialBasis::new(n, d)
}

fn poly_mul<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if ring.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
        }
    }
    out
}

/// Powers `(a_j + t b_j)^k` for k = 0..=d, per coordinate j.
fn linear_powers<R: Ring>(ring: &R, line: &Line, d: usize) -> Vec<Vec<Vec<R::Elem>>> {
    line.a()
        .coords()
        .iter()
        .zip(line.b().coords())
        .map(|(&a, &b)| {
            let factor = [ring.lift(a), ring.lift(b)];
            let mut powers = Vec::with_capacity(d + 1);
            powers.push(vec![ring.one()]);
            for k in 1..=d {
                let next = poly_mul(ring, &powers[k - 1], &factor);
                powers.push(next);
            }
            powers
        })
        .collect()
}

fn restrict_with<R: Ring>(ring: &R, alpha: &[u32], powers: &[Vec<Vec<R::Elem>>]) -> Vec<R::Elem> {
    let mut g = vec![ring.one()];
    for (j, &e) in alpha.iter().enumerate() {
        if e > 0 {
            g = poly_mul(ring, &g, &powers[j][e as usize]);
        }
    }
    g
}

/// Coefficients (constant first) of the monomial `alpha` along `t -> a + t*b`.
pub fn restrict_monomial_to_line<R: Ring>(ring: &R, alpha: &[u32], line: &Line) -> Vec<R::Elem> {
    let d: u32 = alpha.iter().sum();
    let powers = linear_powers(ring, line, d as usize);
    let mut g = restrict_with(ring, alpha, &powers);
    g.resize(d as usize + 1, ring.zero());
    g
}

/// Binomial table `c[k][i] = C(k, i)` for k <= top, built by Pascal's rule.
fn binomials<R: Ring>(ring: &R, top: usize) -> Vec<Vec<R::Elem>> {
    let mut c: Vec<Vec<R::Elem>> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut row = vec![ring.one(); k + 1];
        for i in 1..k {
            row[i] = ring.add(&c[k - 1][i - 1], &c[k - 1][i]);
        }
        c.push(row);
    }
    c
}

/// Taylor coefficients of `g` at `t0`: entry i is the coefficient of `(t - t0)^i`.
fn taylor_shift<R: Ring>(ring: &R, g: &[R::Elem], t0: &R::Elem, binom: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    let n = g.len();
    let mut t0_pow = Vec::with_capacity(n);
    t0_pow.push(ring.one());
    for k in 1..n {
        let next = ring.mul(&t0_pow[k - 1], t0);
        t0_pow.push(next);
    }
    (0..n)
        .map(|i| {
            (i..n).fold(ring.zero(), |acc, k| {
                let term = ring.mul(&ring.mul(&binom[k][i], &g[k]), &t0_pow[k - i]);
                ring.add(&acc, &term)
            })
        })
        .collect()
}

/// Rows of an r-jet: row i is the i-th Taylor coefficient at the support.
/// Rows with i > d are zero.
pub fn jet_rows<R: Ring>(ring: &R, jet: &Jet, basis: &MonomialBasis) -> Vec<Vec<R::Elem>> {
    if jet.length == 0 {
        return Vec::new();
    }
    let d = basis.degree();
    let powers = linear_powers(ring, &jet.axis, d);
    let binom = binomials(ring, d);
    let t0 = ring.lift(jet.support_param);
    let shifted = jet.support_param != 0;
    let columns: Vec<Vec<R::Elem>> = basis
        .exponents()
        .iter()
        .map(|alpha| {
            let mut g = restrict_with(ring, alpha, &powers);
            g.resize(d + 1, ring.zero());
            if shifted {
                taylor_shift(ring, &g, &t0, &binom)
            } else {
                g
            }
        })
        .collect();
    (0..jet.length)
        .map(|i| {
            columns
                .iter()
                .map(|col| col.get(i).cloned().unwrap_or_else(|| ring.zero()))
                .collect()
        })
        .collect()
}

/// Evaluation of every basis monomial at the point's representative.
pub fn point_row<R: Ring>(ring: &R, point: &ProjPoint, basis: &MonomialBasis) -> Vec<R::Elem> {
    let x: Vec<R::Elem> = point.coords().iter().map(|&c| ring.lift(c)).collect();
    basis
        .exponents()
        .iter()
        .map(|alpha| {
            alpha
                .iter()
                .zip(&x)
                .fold(ring.one(), |acc, (&e, xj)| ring.mul(&acc, &ring.pow(xj, e)))
        })
        .collect()
}

/// Which configuration element produced a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSource {
    Jet(usize),
    FreePoint(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub source: RowSource,
    /// Taylor order within a jet; always 0 for free points.
    pub order: usize,
}

/// Arithmetic used to assemble a condition matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    /// Over GF(p), with p the configuration's modulus.
    Modular,
    /// Over the integers, coordinates lifted to `[0, p)`.
    Integer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionMatrix {
    pub matrix: Matrix,
    pub row_labels: Vec<RowLabel>,
    pub basis: MonomialBasis,
}

impl ConditionMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn nullity(&self) -> usize {
        self.matrix.kernel_dimension()
    }
}

fn assemble<R: RingMatrix>(ring: &R, config: &Configuration, d: usize) -> Result<ConditionMatrix> {
    let basis = MonomialBasis::new(config.n, d);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (k, jet) in config.jets.iter().enumerate() {
        for (i, row) in jet_rows(ring, jet, &basis).into_iter().enumerate() {
            rows.push(row);
            labels.push(RowLabel {
                source: RowSource::Jet(k),
                order: i,
            });
        }
    }
    for (k, pt) in config.free_points.iter().enumerate() {
        rows.push(point_row(ring, pt, &basis));
        labels.push(RowLabel {
            source: RowSource::FreePoint(k),
            order: 0,
        });
    }
    let matrix = ring.assemble(basis.len(), rows)?;
    Ok(ConditionMatrix {
        matrix,
        row_labels: labels,
        basis,
    })
}

/// All jet rows in configuration order, then all free-point rows.
pub fn condition_matrix(config: &Configuration, d: usize, arithmetic: Arithmetic) -> Result<ConditionMatrix> {
    match arithmetic {
        Arithmetic::Modular => assemble(&config.modulus, config, d),
        Arithmetic::Integer => assemble(&Integers, config, d),
    }
}

/// Stacked rows of several jets over GF(p), without labels.
pub fn jets_matrix(modulus: PrimeModulus, jets: &[Jet], basis: &MonomialBasis) -> Result<Matrix> {
    let rows = jets.iter().flat_map(|j| jet_rows(&modulus, j, basis)).collect();
    modulus.assemble(basis.len(), rows)
}
