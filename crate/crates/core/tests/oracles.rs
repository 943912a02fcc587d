//! Independent oracles for the derived expected values: brute-force minors
//! for rank, explicit kernel elements, pointwise evaluation for
//! restrictions, and a predicate written directly from the definition of
//! admissibility.

use jetrank_core::admissibility::{dimension, enumerate_admissible, DEFAULT_ENUMERATION_CAP};
use jetrank_core::conditions::{
    condition_matrix, jet_rows, jets_matrix, monomial_basis, point_row, restrict_monomial_to_line, Arithmetic,
};
use jetrank_core::geometry::{line_as_jet, sample_configuration, Jet, Sampler};
use jetrank_core::linalg::{rank_exact, rank_mod_p};
use jetrank_core::{Matrix, PrimeModulus, Weight};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p() -> PrimeModulus {
    PrimeModulus::default()
}

/// Determinant by permutation expansion over the integers.
fn det_leibniz(m: &[Vec<i64>]) -> i128 {
    fn go(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i128) -> i128 {
        if row == m.len() {
            return sign;
        }
        let mut acc = 0;
        let mut inversions_to_left = 0;
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            // sign flips once per unused column to the left of c
            let s = if inversions_to_left % 2 == 0 { sign } else { -sign };
            inversions_to_left += 1;
            if m[row][c] == 0 {
                continue;
            }
            used[c] = true;
            acc += m[row][c] as i128 * go(m, row + 1, used, s);
            used[c] = false;
        }
        acc
    }
    go(m, 0, &mut vec![false; m.len()], 1)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with_last = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut out = subsets(n - 1, k);
    out.extend(with_last);
    out
}

/// Largest k with a nonzero k x k minor.
fn rank_by_minors(a: &[Vec<i64>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                if det_leibniz(&minor) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

fn int_matrix(a: &[Vec<i64>]) -> Matrix {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    Matrix::from_integers(rows, cols, a.iter().flatten().map(|&x| BigInt::from(x)).collect()).unwrap()
}

#[test]
fn elimination_agrees_with_minor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..300 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        // low rank is common with a narrow range and occasional zero rows
        let hi = if rng.gen_bool(0.5) { 1 } else { 9 };
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-hi..=hi)).collect())
            .collect();
        let m = int_matrix(&a);
        let expected = rank_by_minors(&a);
        assert_eq!(rank_exact(&m).unwrap(), expected, "{:?}", a);
        assert_eq!(rank_mod_p(&m.reduce_mod(p()).unwrap()).unwrap(), expected, "{:?}", a);
    }
}

#[test]
fn exact_and_modular_ranks_agree_on_small_integer_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut agree = 0;
    for _ in 0..200 {
        let rows = rng.gen_range(1..=12);
        let cols = rng.gen_range(1..=12);
        let rank_cap = rng.gen_range(1..=rows.min(cols));
        // product of random factors gives controlled rank deficiency
        let left: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..rank_cap).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let right: Vec<Vec<i64>> = (0..rank_cap)
            .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let a: Vec<Vec<i64>> = if rng.gen_bool(0.5) {
            (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
                .collect()
        } else {
            (0..rows)
                .map(|i| {
                    (0..cols)
                        .map(|j| (0..rank_cap).map(|k| left[i][k] * right[k][j]).sum())
                        .collect()
                })
                .collect()
        };
        let m = int_matrix(&a);
        let exact = rank_exact(&m).unwrap();
        let modular = rank_mod_p(&m.reduce_mod(p()).unwrap()).unwrap();
        assert_eq!(exact, modular, "discrepancy on {:?}", a);
        agree += 1;
    }
    assert_eq!(agree, 200);
}

/// Linear form vanishing on the plane line through `a` and `b`: the cross product.
fn line_equation(a: &[u64], b: &[u64]) -> [u64; 3] {
    let q = p();
    let c = |i: usize, j: usize| q.sub(q.mul(a[i], b[j]), q.mul(a[j], b[i]));
    [c(1, 2), c(2, 0), c(0, 1)]
}

/// Product of forms given as coefficient maps over exponent vectors.
fn multiply(f: &[(Vec<u32>, u64)], g: &[(Vec<u32>, u64)]) -> Vec<(Vec<u32>, u64)> {
    let q = p();
    let mut out: Vec<(Vec<u32>, u64)> = Vec::new();
    for (ea, ca) in f {
        for (eb, cb) in g {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = q.mul(*ca, *cb);
            match out.iter_mut().find(|(k, _)| *k == e) {
                Some(entry) => entry.1 = q.add(entry.1, c),
                None => out.push((e, c)),
            }
        }
    }
    out
}

#[test]
fn two_full_jets_in_degree_four_leave_the_conics_times_both_lines() {
    let q = p();
    for seed in 0..5 {
        let w = Weight::new(0, vec![5, 5]).unwrap();
        let c = sample_configuration(&w, 2, q, seed).unwrap();
        let cm = condition_matrix(&c, 4, Arithmetic::Modular).unwrap();
        assert_eq!((cm.matrix.rows(), cm.matrix.cols()), (10, 15));
        assert_eq!(cm.nullity(), 6);
        assert_eq!(cm.rank(), 9);

        // build L1 * L2 * (each conic monomial) and check each is annihilated
        let linear = |eq: [u64; 3]| -> Vec<(Vec<u32>, u64)> {
            (0..3)
                .map(|i| {
                    let mut e = vec![0; 3];
                    e[i] = 1;
                    (e, eq[i])
                })
                .collect()
        };
        let l1 = linear(line_equation(c.jets[0].axis.a().coords(), c.jets[0].axis.b().coords()));
        let l2 = linear(line_equation(c.jets[1].axis.a().coords(), c.jets[1].axis.b().coords()));
        let product = multiply(&l1, &l2);
        let basis = monomial_basis(2, 4);
        let a = cm.matrix.residues().unwrap();
        let mut kernel_vectors = Vec::new();
        for conic in monomial_basis(2, 2).exponents() {
            let form = multiply(&product, &[(conic.clone(), 1)]);
            let v: Vec<u64> = basis
                .exponents()
                .iter()
                .map(|e| form.iter().find(|(k, _)| k == e).map_or(0, |x| x.1))
                .collect();
            for i in 0..cm.matrix.rows() {
                let s = (0..15).fold(0, |acc, j| q.add(acc, q.mul(a[i * 15 + j], v[j])));
                assert_eq!(s, 0);
            }
            kernel_vectors.extend(v);
        }
        let k = Matrix::from_residues(q, 6, 15, kernel_vectors).unwrap();
        assert_eq!(k.rank(), 6);
    }
}

#[test]
fn one_two_jet_and_a_one_jet_determine_no_linear_form() {
    // A linear form with order-2 contact along line 1 vanishes on line 1;
    // vanishing at a point off line 1 too leaves only zero.
    for seed in 0..20 {
        let w = Weight::new(0, vec![2, 1]).unwrap();
        let c = sample_configuration(&w, 2, p(), seed).unwrap();
        let m = condition_matrix(&c, 1, Arithmetic::Modular).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (3, 3));
        assert_eq!(rank_mod_p(&m.matrix).unwrap(), 3);
        let z = condition_matrix(&c, 1, Arithmetic::Integer).unwrap();
        assert_eq!(rank_exact(&z.matrix).unwrap(), 3);
    }
}

fn horner(coeffs: &[u64], t: u64) -> u64 {
    let q = p();
    coeffs.iter().rev().fold(0, |acc, &c| q.add(q.mul(acc, t), c))
}

#[test]
fn restriction_matches_pointwise_evaluation() {
    let q = p();
    let mut s = Sampler::new(q, 77);
    for n in [2, 3, 4] {
        for d in [1, 2, 4, 6] {
            let line = s.line(n).unwrap();
            for alpha in monomial_basis(n, d).exponents() {
                let g = restrict_monomial_to_line(&q, alpha, &line);
                assert_eq!(g.len(), d + 1);
                for _ in 0..3 {
                    let t = s.residue();
                    let x = line.point_at(t);
                    let direct = alpha
                        .iter()
                        .zip(x.coords())
                        .fold(1, |acc, (&e, &xj)| q.mul(acc, q.pow(xj, e as u64)));
                    assert_eq!(horner(&g, t), direct);
                }
            }
        }
    }
}

#[test]
fn full_jet_cuts_out_forms_vanishing_on_its_axis() {
    let q = p();
    let mut s = Sampler::new(q, 5);
    for n in [2, 3] {
        for d in 1..=5 {
            let line = s.line(n).unwrap();
            let basis = monomial_basis(n, d);
            let m = jets_matrix(q, &[Jet::new(line.clone(), 0, d + 1)], &basis).unwrap();
            assert_eq!(m.rank(), d + 1);
            assert_eq!(m.kernel_dimension(), dimension(n, d) - (d + 1));
            // every kernel form vanishes at points of the axis
            for v in m.kernel_basis().unwrap() {
                for _ in 0..3 {
                    let x = line.point_at(s.residue());
                    let row = point_row(&q, &x, &basis);
                    let val = row.iter().zip(&v).fold(0, |acc, (&r, &c)| q.add(acc, q.mul(r, c)));
                    assert_eq!(val, 0);
                }
            }
        }
    }
}

#[test]
fn line_as_jet_spans_the_same_rows_as_points_on_the_line() {
    let q = p();
    let mut s = Sampler::new(q, 6);
    for n in [2, 3] {
        for e in 0..=5 {
            let line = s.line(n).unwrap();
            let basis = monomial_basis(n, e);
            let jet = jets_matrix(q, &[line_as_jet(&line, e)], &basis).unwrap();
            let rows: Vec<u64> = (0..=e)
                .flat_map(|_| point_row(&q, &line.point_at(s.residue()), &basis))
                .collect();
            let pts = Matrix::from_residues(q, e + 1, basis.len(), rows).unwrap();
            let both = jet.vstack(&pts).unwrap();
            assert_eq!(jet.rank(), e + 1);
            assert_eq!(pts.rank(), e + 1);
            assert_eq!(both.rank(), e + 1);
        }
    }
}

#[test]
fn axis_is_recovered_from_reanchored_rows() {
    let q = p();
    let mut s = Sampler::new(q, 8);
    for d in 1..=4 {
        for r in 2..=d + 1 {
            let line = s.line(3).unwrap();
            let t0 = s.residue();
            let basis = monomial_basis(3, d);
            let a = jets_matrix(q, &[Jet::new(line.clone(), t0, r)], &basis).unwrap();
            let b = jets_matrix(q, &[Jet::new(line.reanchored(t0), 0, r)], &basis).unwrap();
            assert_eq!(a.rank(), r);
            assert_eq!(b.rank(), r);
            assert_eq!(a.vstack(&b).unwrap().rank(), r);
        }
    }
}

#[test]
fn single_jet_rank_saturates_at_d_plus_one() {
    let q = p();
    let mut s = Sampler::new(q, 9);
    for d in 0..=5 {
        let basis = monomial_basis(2, d);
        for r in 0..=d + 3 {
            let line = s.line(2).unwrap();
            let jet = Jet::new(line, s.residue(), r);
            let rows = jet_rows(&q, &jet, &basis);
            assert_eq!(rows.len(), r);
            let m = jets_matrix(q, &[jet], &basis).unwrap();
            assert_eq!(m.rank(), r.min(d + 1));
        }
    }
}

/// Admissibility straight from the definition, on an unpruned partition list.
fn admissible_by_definition(n: usize, d: usize, chi: usize, r: &[usize]) -> bool {
    let total = dimension(n, d);
    if chi + r.iter().sum::<usize>() != total {
        return false;
    }
    if r.windows(2).any(|w| w[0] < w[1]) || r.contains(&0) {
        return false;
    }
    if r.first().is_some_and(|&r1| r1 > d + 1) {
        return false;
    }
    if n == 2 {
        for s in 1..=d + 1 {
            let lhs: usize = r.iter().take(s).sum();
            let rhs = (d * s + 1) as i64 - ((s as i64 - 1) * (s as i64 - 2)) / 2;
            if lhs as i64 > rhs {
                return false;
            }
        }
    }
    true
}

fn partitions(k: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(k)).rev() {
        for mut rest in partitions(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn enumeration_matches_filtered_partitions() {
    for (n, d) in [
        (2, 0),
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 1),
        (3, 2),
        (3, 3),
        (4, 2),
    ] {
        let total = dimension(n, d);
        let mut expected = Vec::new();
        for chi in (0..=total).rev() {
            for r in partitions(total - chi, total) {
                if admissible_by_definition(n, d, chi, &r) {
                    expected.push(Weight::new(chi, r).unwrap());
                }
            }
        }
        expected.sort_by(|a, b| b.cmp(a));
        let got = enumerate_admissible(n, d, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(got.weights, expected, "n={} d={}", n, d);
    }
    assert_eq!(enumerate_admissible(2, 1, DEFAULT_ENUMERATION_CAP).unwrap().len(), 6);
}

#[test]
fn scaled_free_point_rows_keep_rank() {
    let q = p();
    let w = Weight::new(4, vec![3, 2]).unwrap();
    let c = sample_configuration(&w, 2, q, 12).unwrap();
    let mut scaled = c.clone();
    scaled.free_points = c.free_points.iter().map(|x| x.scaled(12345)).collect();
    for jet in &mut scaled.jets {
        let a = jet.axis.a().scaled(7);
        let b = jet.axis.b().scaled(99);
        jet.axis = jetrank_core::Line::new(a, b).unwrap();
    }
    for d in 1..=4 {
        let r1 = condition_matrix(&c, d, Arithmetic::Modular).unwrap().rank();
        let r2 = condition_matrix(&scaled, d, Arithmetic::Modular).unwrap().rank();
        assert_eq!(r1, r2);
    }
}
