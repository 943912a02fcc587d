//! Wronskian rank of a family of univariate polynomials over GF(p).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::linalg::Matrix;

fn max_degree(polys: &[Vec<u64>]) -> Option<usize> {
    polys.iter().filter_map(|f| f.iter().rposition(|&c| c != 0)).max()
}

fn check_family(polys: &[Vec<u64>], modulus: PrimeModulus) -> Result<()> {
    if polys.is_empty() {
        return Err(Error::EmptyFamily);
    }
    // derivatives up to order v-1 must not pick up a factor of p
    let degree = max_degree(polys).unwrap_or(0).max(polys.len() - 1);
    if degree as u64 >= modulus.get() {
        return Err(Error::DegreeTooHighForModulus {
            modulus: modulus.get(),
            degree,
        });
    }
    Ok(())
}

/// `i`-th formal derivative of `f` (coefficients constant first) evaluated at `t`.
fn derivative_at(modulus: PrimeModulus, f: &[u64], i: usize, t: u64) -> u64 {
    let mut acc = 0;
    let mut t_pow = 1;
    for (k, &c) in f.iter().enumerate().skip(i) {
        // falling factorial k (k-1) ... (k-i+1)
        let falling = (k - i + 1..=k).fold(1, |a, x| modulus.mul(a, x as u64));
        let term = modulus.mul(modulus.mul(falling, modulus.reduce(c)), t_pow);
        acc = modulus.add(acc, term);
        t_pow = modulus.mul(t_pow, t);
    }
    acc
}

/// The v x v matrix with entry `(i, j)` equal to the i-th derivative of `f_j` at `t`.
pub fn wronskian_matrix(polys: &[Vec<u64>], t: u64, modulus: PrimeModulus) -> Result<Matrix> {
    check_family(polys, modulus)?;
    let v = polys.len();
    let t = modulus.reduce(t);
    let values = (0..v)
        .flat_map(|i| polys.iter().map(move |f| derivative_at(modulus, f, i, t)))
        .collect();
    Matrix::from_residues(modulus, v, v, values)
}

pub fn wronskian_rank(polys: &[Vec<u64>], t: u64, modulus: PrimeModulus) -> Result<usize> {
    Ok(wronskian_matrix(polys, t, modulus)?.rank())
}

/// Rank of the coefficient matrix, one row per polynomial.
pub fn coefficient_rank(polys: &[Vec<u64>], modulus: PrimeModulus) -> Result<usize> {
    check_family(polys, modulus)?;
    let width = polys.iter().map(Vec::len).max().unwrap_or(0);
    let values = polys
        .iter()
        .flat_map(|f| (0..width).map(move |k| f.get(k).copied().unwrap_or(0)))
        .collect();
    Ok(Matrix::from_residues(modulus, polys.len(), width, values)?.rank())
}
