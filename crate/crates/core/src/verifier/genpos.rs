//! Certifies that a finite set of lines is in general position up to a
//! degree bound: every nonempty subset has maximal rank in every degree
//! `e <= d_max`.
//!
//! In degree e a line imposes the same conditions as an (e+1)-jet on it,
//! so the evaluation map of a union of lines is the stacked jet matrix.
//! Its target is the space of degree-e sections on the union. For lines
//! meeting in simple double points (pairs meet at distinct points, no
//! three through one point) those are tuples of binary forms, one per
//! line, agreeing at every intersection point. The target dimension is
//! `sum(e + 1)` minus the rank of those agreement conditions; for pairwise
//! disjoint lines it is just `sum(e + 1)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::admissibility::dimension;
use crate::conditions::{jets_matrix, MonomialBasis};
use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::geometry::{line_as_jet, Line, ProjPoint};
use crate::linalg::Matrix;

pub const DEFAULT_SUBSET_CAP: usize = 12;

/// Where two lines meet: homogeneous parameters `(s, t)` on each line
/// such that `s_i a_i + t_i b_i` and `s_j a_j + t_j b_j` are the same vector.
#[derive(Clone, Copy, Debug)]
struct Meeting {
    i: usize,
    j: usize,
    on_i: (u64, u64),
    on_j: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Bit k set when line k is in the subset.
    pub subset: u64,
    pub degree: usize,
    pub rank: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPositionReport {
    pub lines: usize,
    /// Degrees beyond this bound were not checked.
    pub d_max: usize,
    pub intersections: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl GeneralPositionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn meetings(lines: &[Line], modulus: PrimeModulus) -> Result<Vec<Meeting>> {
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (li, lj) = (&lines[i], &lines[j]);
            let cols = [li.a().coords(), li.b().coords(), lj.a().coords(), lj.b().coords()];
            let rows = cols[0].len();
            let values = (0..rows).flat_map(|r| cols.iter().map(move |c| c[r])).collect();
            let kernel = Matrix::from_residues(modulus, rows, 4, values)?.kernel_basis()?;
            match kernel.len() {
                0 => {}
                1 => {
                    let k = &kernel[0];
                    out.push(Meeting {
                        i,
                        j,
                        on_i: (k[0], k[1]),
                        on_j: (modulus.neg(k[2]), modulus.neg(k[3])),
                    });
                }
                _ => return Err(Error::CoincidentLines),
            }
        }
    }
    // no point may lie on three lines
    for m in &out {
        let point = lines[m.i]
            .a()
            .coords()
            .iter()
            .zip(lines[m.i].b().coords())
            .map(|(&a, &b)| modulus.add(modulus.mul(m.on_i.0, a), modulus.mul(m.on_i.1, b)));
        let point = ProjPoint::new(point.collect(), modulus)?;
        let through = lines.iter().filter(|l| l.contains(&point)).count();
        if through > 2 {
            return Err(Error::ConcurrentLines);
        }
    }
    Ok(out)
}

/// Values `s^(e-k) t^k`, k = 0..=e: evaluation of a binary form of degree e
/// given by its coefficients in the affine parameter.
fn binary_eval(modulus: PrimeModulus, (s, t): (u64, u64), e: usize) -> Vec<u64> {
    (0..=e)
        .map(|k| modulus.mul(modulus.pow(s, (e - k) as u64), modulus.pow(t, k as u64)))
        .collect()
}

/// Dimension of degree-e sections on the union of the chosen lines.
fn glued_dimension(modulus: PrimeModulus, subset: &[usize], meetings: &[Meeting], e: usize) -> Result<usize> {
    let block = e + 1;
    let position = |line: usize| subset.iter().position(|&l| l == line);
    let mut values = Vec::new();
    let mut rows = 0;
    for m in meetings {
        let (Some(pi), Some(pj)) = (position(m.i), position(m.j)) else {
            continue;
        };
        let mut row = vec![0u64; subset.len() * block];
        for (k, v) in binary_eval(modulus, m.on_i, e).into_iter().enumerate() {
            row[pi * block + k] = v;
        }
        for (k, v) in binary_eval(modulus, m.on_j, e).into_iter().enumerate() {
            row[pj * block + k] = modulus.neg(v);
        }
        values.extend(row);
        rows += 1;
    }
    let constraints = Matrix::from_residues(modulus, rows, subset.len() * block, values)?.rank();
    Ok(subset.len() * block - constraints)
}

pub fn general_position_report(lines: &[Line], d_max: usize, subset_cap: usize) -> Result<GeneralPositionReport> {
    if lines.len() > subset_cap || lines.len() >= 64 {
        return Err(Error::SubsetCapExceeded {
            lines: lines.len(),
            cap: subset_cap,
        });
    }
    let mut report = GeneralPositionReport {
        lines: lines.len(),
        d_max,
        intersections: 0,
        checks: 0,
        failures: Vec::new(),
    };
    let Some(first) = lines.first() else {
        return Ok(report);
    };
    let modulus = first.modulus();
    let n = first.dim();
    if lines.iter().any(|l| l.modulus() != modulus || l.dim() != n) {
        return Err(Error::MixedModes);
    }
    let meetings = meetings(lines, modulus)?;
    report.intersections = meetings.len();
    for e in 0..=d_max {
        let basis = MonomialBasis::new(n, e);
        let forms = dimension(n, e);
        for mask in 1u64..(1 << lines.len()) {
            let subset: Vec<usize> = (0..lines.len()).filter(|&k| mask >> k & 1 == 1).collect();
            let jets: Vec<_> = subset.iter().map(|&k| line_as_jet(&lines[k], e)).collect();
            let rank = jets_matrix(modulus, &jets, &basis)?.rank();
            let expected = forms.min(glued_dimension(modulus, &subset, &meetings, e)?);
            report.checks += 1;
            if rank != expected {
                report.failures.push(Failure {
                    subset: mask,
                    degree: e,
                    rank,
                    expected,
                });
            }
        }
    }
    Ok(report)
}

/// True when every nonempty subset has maximal rank in every degree up to `d_max`.
pub fn general_position_check(lines: &[Line], d_max: usize, subset_cap: usize) -> Result<bool> {
    Ok(general_position_report(lines, d_max, subset_cap)?.passed())
}
