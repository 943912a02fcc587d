//! Dense exact matrices and their rank.
//!
//! Two arithmetic modes share one [`Matrix`] type: residues modulo a prime
//! (Gaussian elimination, first nonzero pivot in column order) and unbounded
//! integers (fraction-free Bareiss elimination, used as an oracle).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Integers, Mode, PrimeModulus, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Residue { modulus: PrimeModulus, values: Vec<u64> },
    Integer(Vec<BigInt>),
}

/// A row-major dense matrix whose entries all share one arithmetic mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, mode: Mode) -> Self {
        let entries = match mode {
            Mode::Residue(modulus) => Entries::Residue {
                modulus,
                values: vec![0; rows * cols],
            },
            Mode::Integer => Entries::Integer(vec![BigInt::zero(); rows * cols]),
        };
        Matrix { rows, cols, entries }
    }

    pub fn identity(size: usize, mode: Mode) -> Self {
        let mut m = Matrix::zeros(size, size, mode);
        for i in 0..size {
            match &mut m.entries {
                Entries::Residue { values, .. } => values[i * size + i] = 1,
                Entries::Integer(values) => values[i * size + i] = BigInt::from(1),
            }
        }
        m
    }

    /// Builds a residue matrix; values are reduced modulo `p`.
    pub fn from_residues(modulus: PrimeModulus, rows: usize, cols: usize, values: Vec<u64>) -> Result<Self> {
        check_len(rows, cols, values.len())?;
        let values = values.into_iter().map(|v| modulus.reduce(v)).collect();
        Ok(Matrix {
            rows,
            cols,
            entries: Entries::Residue { modulus, values },
        })
    }

    pub fn from_integers(rows: usize, cols: usize, values: Vec<BigInt>) -> Result<Self> {
        check_len(rows, cols, values.len())?;
        Ok(Matrix {
            rows,
            cols,
            entries: Entries::Integer(values),
        })
    }

    /// Builds a matrix from individually tagged scalars, rejecting mixed modes.
    pub fn from_scalars(rows: usize, cols: usize, scalars: Vec<Scalar>) -> Result<Self> {
        check_len(rows, cols, scalars.len())?;
        let Some(first) = scalars.first() else {
            // An empty matrix has no entries to disagree; call it integer.
            return Ok(Matrix::zeros(rows, cols, Mode::Integer));
        };
        match first.mode() {
            Mode::Residue(modulus) => {
                let values = scalars
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Residue { value, modulus: q } if q == modulus => Ok(value),
                        _ => Err(Error::MixedModes),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_residues(modulus, rows, cols, values)
            }
            Mode::Integer => {
                let values = scalars
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Integer(v) => Ok(v),
                        _ => Err(Error::MixedModes),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_integers(rows, cols, values)
            }
        }
    }

    /// Assembles rows produced over an arbitrary [`Ring`].
    pub fn from_ring_rows<R: RingMatrix>(ring: &R, cols: usize, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        ring.assemble(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> Mode {
        match &self.entries {
            Entries::Residue { modulus, .. } => Mode::Residue(*modulus),
            Entries::Integer(_) => Mode::Integer,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        let k = row * self.cols + col;
        match &self.entries {
            Entries::Residue { modulus, values } => Scalar::Residue {
                value: values[k],
                modulus: *modulus,
            },
            Entries::Integer(values) => Scalar::Integer(values[k].clone()),
        }
    }

    /// Residue entries, row-major, if this is a residue matrix.
    pub fn residues(&self) -> Option<&[u64]> {
        match &self.entries {
            Entries::Residue { values, .. } => Some(values),
            Entries::Integer(_) => None,
        }
    }

    pub fn transpose(&self) -> Matrix {
        fn tr<T: Clone>(v: &[T], rows: usize, cols: usize) -> Vec<T> {
            (0..cols)
                .flat_map(|j| (0..rows).map(move |i| v[i * cols + j].clone()))
                .collect()
        }
        let entries = match &self.entries {
            Entries::Residue { modulus, values } => Entries::Residue {
                modulus: *modulus,
                values: tr(values, self.rows, self.cols),
            },
            Entries::Integer(values) => Entries::Integer(tr(values, self.rows, self.cols)),
        };
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Applies row and column permutations: entry `(i, j)` of the result is
    /// entry `(row_perm[i], col_perm[j])` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Matrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        fn perm<T: Clone>(v: &[T], cols: usize, rp: &[usize], cp: &[usize]) -> Vec<T> {
            rp.iter()
                .flat_map(|&i| cp.iter().map(move |&j| v[i * cols + j].clone()))
                .collect()
        }
        let entries = match &self.entries {
            Entries::Residue { modulus, values } => Entries::Residue {
                modulus: *modulus,
                values: perm(values, self.cols, row_perm, col_perm),
            },
            Entries::Integer(values) => Entries::Integer(perm(values, self.cols, row_perm, col_perm)),
        };
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Residue { modulus, values: a }, Entries::Residue { modulus: q, values: b }) if modulus == q => {
                Entries::Residue {
                    modulus: *modulus,
                    values: a.iter().chain(b).copied().collect(),
                }
            }
            (Entries::Integer(a), Entries::Integer(b)) => Entries::Integer(a.iter().chain(b).cloned().collect()),
            _ => return Err(Error::MixedModes),
        };
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Reduces an integer matrix modulo `p`; a residue matrix must already use `p`.
    pub fn reduce_mod(&self, modulus: PrimeModulus) -> Result<Matrix> {
        let values = match &self.entries {
            Entries::Integer(values) => values.iter().map(|v| modulus.reduce_bigint(v)).collect(),
            Entries::Residue { modulus: q, values } if *q == modulus => values.clone(),
            Entries::Residue { .. } => return Err(Error::MixedModes),
        };
        Matrix::from_residues(modulus, self.rows, self.cols, values)
    }

    /// Rank in the matrix's own mode.
    pub fn rank(&self) -> usize {
        match &self.entries {
            Entries::Residue { modulus, values } => rank_residues(*modulus, self.rows, self.cols, values.clone()),
            Entries::Integer(values) => rank_integers(self.rows, self.cols, values.clone()),
        }
    }

    /// `cols - rank`: the dimension of the right kernel.
    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel over GF(p).
    pub fn kernel_basis(&self) -> Result<Vec<Vec<u64>>> {
        match &self.entries {
            Entries::Residue { modulus, values } => Ok(kernel_residues(*modulus, self.rows, self.cols, values.clone())),
            Entries::Integer(_) => Err(Error::WrongMode),
        }
    }
}

fn check_len(rows: usize, cols: usize, len: usize) -> Result<()> {
    if rows * cols == len {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            expected: rows * cols,
            found: len,
        })
    }
}

/// Rank over GF(p). Fails only if `m` holds integers.
pub fn rank_mod_p(m: &Matrix) -> Result<usize> {
    match &m.entries {
        Entries::Residue { modulus, values } => Ok(rank_residues(*modulus, m.rows, m.cols, values.clone())),
        Entries::Integer(_) => Err(Error::WrongMode),
    }
}

/// Rank over the rationals of an integer matrix.
pub fn rank_exact(m: &Matrix) -> Result<usize> {
    match &m.entries {
        Entries::Integer(values) => Ok(rank_integers(m.rows, m.cols, values.clone())),
        Entries::Residue { .. } => Err(Error::WrongMode),
    }
}

pub fn kernel_dimension(m: &Matrix) -> usize {
    m.kernel_dimension()
}

/// Row-reduces `a` in place to reduced echelon form and returns the pivot columns.
fn echelon_residues(p: PrimeModulus, rows: usize, cols: usize, a: &mut [u64]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = p.inv(a[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            a[r * cols + j] = p.mul(a[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let t = p.mul(f, a[r * cols + j]);
                a[i * cols + j] = p.sub(a[i * cols + j], t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank_residues(p: PrimeModulus, rows: usize, cols: usize, mut a: Vec<u64>) -> usize {
    echelon_residues(p, rows, cols, &mut a).len()
}

fn kernel_residues(p: PrimeModulus, rows: usize, cols: usize, mut a: Vec<u64>) -> Vec<Vec<u64>> {
    let pivots = echelon_residues(p, rows, cols, &mut a);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = p.neg(a[r * cols + free]);
            }
            v
        })
        .collect()
}

/// Fraction-free elimination. Every intermediate entry is a minor of the
/// input, so each division by the previous pivot is exact.
fn rank_integers(rows: usize, cols: usize, mut a: Vec<BigInt>) -> usize {
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let pivot = a[r * cols + c].clone();
        for i in r + 1..rows {
            let f = a[i * cols + c].clone();
            for j in c + 1..cols {
                let num = &pivot * &a[i * cols + j] - &f * &a[r * cols + j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i * cols + j] = num / &prev;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Matrix assembly for each [`Ring`] the crate builds rows over.
pub trait RingMatrix: Ring {
    fn assemble(&self, cols: usize, rows: Vec<Vec<Self::Elem>>) -> Result<Matrix>;
}

impl RingMatrix for PrimeModulus {
    fn assemble(&self, cols: usize, rows: Vec<Vec<u64>>) -> Result<Matrix> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * cols);
        for row in rows {
            check_len(1, cols, row.len())?;
            values.extend(row);
        }
        Matrix::from_residues(*self, n, cols, values)
    }
}

impl RingMatrix for Integers {
    fn assemble(&self, cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Matrix> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * cols);
        for row in rows {
            check_len(1, cols, row.len())?;
            values.extend(row);
        }
        Matrix::from_integers(n, cols, values)
    }
}

/// Debug dump: one row per line, entries separated by single spaces.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                match &self.entries {
                    Entries::Residue { values, .. } => write!(f, "{}", values[i * self.cols + j])?,
                    Entries::Integer(values) => write!(f, "{}", values[i * self.cols + j])?,
                }
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
