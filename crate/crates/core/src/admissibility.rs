//! Weight combinatorics: the numerical condition C(n, d), d-admissible
//! weights and their lexicographic order, extremal decompositions and the
//! tilde-plus move used by the planar induction.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::Weight;

/// Default bound on the number of weights an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// `C(n + d, d)`, the dimension of degree-d forms on P^n.
pub fn dimension(n: usize, d: usize) -> usize {
    // exact at every step: the running value is C(n + i, i)
    (1..=d).fold(1usize, |acc, i| acc * (n + i) / i)
}

/// Right-hand side of the planar partial-sum bound at `s`: `d*s + 1 - C(s-1, 2)`.
pub fn planar_bound(d: usize, s: usize) -> i64 {
    let (d, s) = (d as i64, s as i64);
    d * s + 1 - (s - 1) * (s - 2) / 2
}

/// Condition C(n, d) on non-increasing positive lengths.
///
/// Always `r1 <= d + 1`; for the plane also the partial sums
/// `r1 + ... + rs <= d*s + 1 - C(s-1, 2)` for `1 <= s <= d + 1`,
/// missing entries counting as 0.
pub fn check_condition_c(n: usize, d: usize, lengths: &[usize]) -> Result<bool> {
    if lengths.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::UnsortedLengths);
    }
    if lengths.contains(&0) {
        return Err(Error::ZeroLength);
    }
    if lengths.first().is_some_and(|&r1| r1 > d + 1) {
        return Ok(false);
    }
    if n != 2 {
        return Ok(true);
    }
    let mut sum = 0i64;
    for s in 1..=d + 1 {
        sum += lengths.get(s - 1).copied().unwrap_or(0) as i64;
        if sum > planar_bound(d, s) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_admissible(n: usize, d: usize, w: &Weight) -> bool {
    w.total() == dimension(n, d) && check_condition_c(n, d, w.lengths()).unwrap_or(false)
}

pub fn compare_lex(w1: &Weight, w2: &Weight) -> Ordering {
    w1.cmp(w2)
}

/// All d-admissible weights for one `(n, d)`, strictly descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub n: usize,
    pub d: usize,
    pub weights: Vec<Weight>,
}

impl AdmissibleSet {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

struct Enumerator {
    n: usize,
    d: usize,
    cap: usize,
    out: Vec<Weight>,
}

impl Enumerator {
    /// Extends `prefix` (already within every bound) by parts `<= max_part`
    /// summing to `remaining`, largest part first.
    fn descend(&mut self, chi: usize, prefix: &mut Vec<usize>, remaining: usize, max_part: usize) -> Result<()> {
        if remaining == 0 {
            if self.out.len() == self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            self.out
                .push(Weight::new(chi, prefix.clone()).expect("parts are sorted"));
            return Ok(());
        }
        let s = prefix.len() + 1;
        let used: usize = prefix.iter().sum();
        let mut top = max_part.min(remaining);
        if self.n == 2 && s <= self.d + 1 {
            let room = planar_bound(self.d, s) - used as i64;
            if room < 1 {
                return Ok(());
            }
            top = top.min(room as usize);
        }
        for r in (1..=top).rev() {
            prefix.push(r);
            self.descend(chi, prefix, remaining - r, r)?;
            prefix.pop();
        }
        Ok(())
    }
}

/// Enumerates S_d by bounded-partition recursion with the partial-sum
/// bounds pruned as the parts are chosen.
pub fn enumerate_admissible(n: usize, d: usize, cap: usize) -> Result<AdmissibleSet> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let total = dimension(n, d);
    let mut e = Enumerator {
        n,
        d,
        cap,
        out: Vec::new(),
    };
    // chi first, descending; then parts largest-first: this is descending lex order.
    for chi in (0..=total).rev() {
        let mut prefix = Vec::new();
        e.descend(chi, &mut prefix, total - chi, d + 1)?;
    }
    Ok(AdmissibleSet { n, d, weights: e.out })
}

/// A weight split as `(chi, m1..mp, r1..rq)` with `m1..mp` the extremal run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalDecomposition {
    pub chi: usize,
    /// Plane: `d+1, d, ..., d+2-p`. Higher dimension: `p` copies of `d+1`.
    pub extremal: Vec<usize>,
    pub tail: Vec<usize>,
}

impl ExtremalDecomposition {
    pub fn p(&self) -> usize {
        self.extremal.len()
    }

    pub fn q(&self) -> usize {
        self.tail.len()
    }

    pub fn to_weight(&self) -> Weight {
        let lengths = self.extremal.iter().chain(&self.tail).copied().collect();
        Weight::normalized(self.chi, lengths)
    }
}

/// Splits off the longest leading run matching the extremal pattern.
pub fn decompose_extremal(w: &Weight, n: usize, d: usize) -> ExtremalDecomposition {
    let lengths = w.lengths();
    let p = lengths
        .iter()
        .enumerate()
        .take_while(|&(i, &r)| if n == 2 { i <= d && r == d + 1 - i } else { r == d + 1 })
        .count();
    ExtremalDecomposition {
        chi: w.chi(),
        extremal: lengths[..p].to_vec(),
        tail: lengths[p..].to_vec(),
    }
}

/// The planar tilde-plus move: with tail `(r1, ..., rq)` and
/// `r2 = ... = rt > r(t+1)`, increment `r1` and decrement `rt`.
///
/// Returns `None` when the tail has fewer than two entries. A part that
/// drops to 0 is removed and the lengths are re-sorted; `chi` is unchanged.
pub fn tilde_plus(w: &Weight, d: usize) -> Option<Weight> {
    let dec = decompose_extremal(w, 2, d);
    if dec.q() < 2 {
        return None;
    }
    let mut tail = dec.tail.clone();
    let r2 = tail[1];
    let t = (1..tail.len())
        .take_while(|&i| tail[i] == r2)
        .last()
        .expect("tail[1] == r2");
    tail[0] += 1;
    tail[t] -= 1;
    let lengths = dec.extremal.iter().chain(&tail).copied().collect();
    Some(Weight::normalized(dec.chi, lengths))
}

/// `Q(s) = s^2 - (3 + 2(d - p - r2)) s + 2(r1 - r2)`.
pub fn q_form(d: i64, p: i64, r1: i64, r2: i64, s: i64) -> i64 {
    s * s - (3 + 2 * (d - p - r2)) * s + 2 * (r1 - r2)
}

/// The weight `(0; d+1, d, ..., 1)`, the lex-largest weight without free points in the plane.
pub fn staircase(d: usize) -> Weight {
    Weight::new(0, (1..=d + 1).rev().collect()).expect("descending")
}

/// Lengths padded with free points up to `C(n + d, d)`; `None` when the lengths already exceed it.
pub fn pad_to_dimension(n: usize, d: usize, lengths: Vec<usize>) -> Option<Weight> {
    let sum: usize = lengths.iter().sum();
    let total = dimension(n, d);
    if sum > total {
        return None;
    }
    Some(Weight::normalized(total - sum, lengths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(chi: usize, lengths: &[usize]) -> Weight {
        Weight::new(chi, lengths.to_vec()).unwrap()
    }

    #[test]
    fn dimension_values() {
        assert_eq!(dimension(2, 0), 1);
        assert_eq!(dimension(2, 3), 10);
        assert_eq!(dimension(3, 5), 56);
        assert_eq!(dimension(2, 8), 45);
    }

    #[test]
    fn condition_c_examples() {
        assert_eq!(check_condition_c(2, 2, &[3, 2, 1]), Ok(true));
        assert_eq!(check_condition_c(2, 4, &[5, 5]), Ok(false));
        assert_eq!(check_condition_c(3, 4, &[5, 5, 5]), Ok(true));
        assert_eq!(check_condition_c(3, 4, &[6]), Ok(false));
        assert_eq!(check_condition_c(2, 2, &[1, 2]), Err(Error::UnsortedLengths));
        assert_eq!(check_condition_c(2, 2, &[]), Ok(true));
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(2, 1, &w(0, &[2, 1])));
        assert!(is_admissible(2, 1, &w(1, &[2])));
        assert!(!is_admissible(2, 2, &w(0, &[4, 1, 1])));
        assert!(!is_admissible(2, 1, &w(0, &[2])));
    }

    #[test]
    fn enumeration_small_cases() {
        let s0 = enumerate_admissible(2, 0, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(s0.weights, vec![w(1, &[]), w(0, &[1])]);
        let s1 = enumerate_admissible(2, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(
            s1.weights,
            vec![
                w(3, &[]),
                w(2, &[1]),
                w(1, &[2]),
                w(1, &[1, 1]),
                w(0, &[2, 1]),
                w(0, &[1, 1, 1])
            ]
        );
        assert_eq!(enumerate_admissible(2, 3, 5), Err(Error::CapExceeded { cap: 5 }));
    }

    #[test]
    fn enumeration_extremes() {
        for d in 0..6 {
            let s = enumerate_admissible(2, d, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(s.weights[0], w(dimension(2, d), &[]));
            let best_without_points = s.weights.iter().find(|x| x.chi() == 0).unwrap();
            assert_eq!(*best_without_points, staircase(d));
        }
    }

    #[test]
    fn lex_examples() {
        assert_eq!(compare_lex(&w(1, &[2]), &w(1, &[1, 1])), Ordering::Greater);
        assert_eq!(compare_lex(&w(0, &[3]), &w(1, &[2])), Ordering::Less);
        assert_eq!(compare_lex(&w(2, &[2, 1]), &w(2, &[2, 1])), Ordering::Equal);
        assert_eq!(compare_lex(&w(0, &[2]), &w(0, &[2, 1])), Ordering::Less);
    }

    #[test]
    fn decomposition_examples() {
        let a = decompose_extremal(&w(0, &[4, 3, 2, 1]), 2, 3);
        assert_eq!((a.p(), a.tail.clone()), (4, vec![]));
        let b = decompose_extremal(&w(0, &[4, 2, 2, 1, 1]), 2, 3);
        assert_eq!((b.p(), b.tail.clone()), (1, vec![2, 2, 1, 1]));
        let c = decompose_extremal(&w(3, &[3, 3, 1]), 3, 2);
        assert_eq!((c.p(), c.extremal.clone(), c.tail.clone()), (2, vec![3, 3], vec![1]));
        assert_eq!(c.to_weight(), w(3, &[3, 3, 1]));
    }

    #[test]
    fn tilde_plus_examples() {
        assert_eq!(tilde_plus(&w(0, &[4, 2, 2, 1, 1]), 3), Some(w(0, &[4, 3, 1, 1, 1])));
        let chi = dimension(2, 5) - 5;
        assert_eq!(tilde_plus(&w(chi, &[3, 1, 1]), 5), Some(w(chi, &[4, 1])));
        assert_eq!(tilde_plus(&w(6, &[4]), 3), None);
        assert_eq!(tilde_plus(&w(0, &[4, 3, 2, 1]), 3), None);
    }

    #[test]
    fn q_form_examples() {
        assert_eq!(q_form(5, 1, 7, 3, 0), 8);
        // d - p = 3, r2 = 1, r1 = 2
        assert_eq!(q_form(3, 0, 2, 1, 1), -4);
        assert_eq!(q_form(6, 2, 3, 3, 0), 0);
    }

    #[test]
    fn staircase_meets_every_bound_with_equality() {
        for d in 0..10 {
            let s = staircase(d);
            let mut sum = 0;
            for (i, r) in s.lengths().iter().enumerate() {
                sum += *r as i64;
                assert_eq!(sum, planar_bound(d, i + 1));
            }
            assert!(is_admissible(2, d, &s));
        }
    }
}
