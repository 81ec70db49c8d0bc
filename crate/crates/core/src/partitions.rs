//! Integer partitions, hook length and hook content dimensions, and
//! enumeration inside a box.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows (the first column's length, `λ₁†`).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part `λ₁`, zero for the empty partition.
    pub fn width(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.width();
        Partition(
            (0..w)
                .map(|j| self.0.iter().take_while(|&&r| r > j).count())
                .collect(),
        )
    }

    /// Hook lengths of every cell, row by row.
    fn hooks(&self) -> impl Iterator<Item = usize> + '_ {
        let conj = self.conjugate();
        self.0.iter().enumerate().flat_map(move |(i, &row)| {
            let conj = conj.0.clone();
            (0..row).map(move |j| (row - j - 1) + (conj[j] - i - 1) + 1)
        })
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` with at most `rows` parts, each at most `cols`,
/// in lexicographic order of their part sequences.
pub fn enumerate_in_box(n: usize, rows: usize, cols: usize) -> Vec<Partition> {
    fn go(rem: usize, rows: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if rows == 0 {
            return;
        }
        // the first part must leave room: rem <= first * rows
        let lo = rem.div_ceil(rows);
        for first in lo..=max.min(rem) {
            prefix.push(first);
            go(rem - first, rows - 1, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, rows, cols, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_of(n: usize) -> Vec<Partition> {
    enumerate_in_box(n, n, n)
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Dimension of the Specht module `π_λ` by the hook length formula.
pub fn dim_sym_irrep(lambda: &Partition) -> BigUint {
    let hooks = lambda.hooks().fold(BigUint::one(), |acc, h| acc * h);
    factorial(lambda.size()) / hooks
}

/// Dimension of the Schur module `S^λ K^d` by the hook content formula.
pub fn dim_schur(lambda: &Partition, d: usize) -> BigUint {
    if lambda.len() > d {
        return BigUint::zero();
    }
    let mut numer = BigUint::one();
    for (i, &row) in lambda.0.iter().enumerate() {
        for j in 0..row {
            numer *= d + j - i;
        }
    }
    let hooks = lambda.hooks().fold(BigUint::one(), |acc, h| acc * h);
    let (q, r) = numer.div_rem(&hooks);
    debug_assert!(r.is_zero());
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    /// p(n) by the recursion on the largest allowed part.
    fn count_partitions(n: usize, max: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| count_partitions(n - k, k)).sum()
    }

    #[test]
    fn box_examples() {
        assert_eq!(enumerate_in_box(2, 1, 2), vec![part(&[2])]);
        assert_eq!(enumerate_in_box(4, 2, 2), vec![part(&[2, 2])]);
        assert_eq!(
            enumerate_in_box(4, 2, 3),
            vec![part(&[2, 2]), part(&[3, 1])]
        );
        assert_eq!(enumerate_in_box(0, 0, 0), vec![part(&[])]);
        assert!(enumerate_in_box(5, 1, 4).is_empty());
    }

    #[test]
    fn box_enumeration_counts_all_partitions() {
        for n in 0..=20 {
            let all = partitions_of(n);
            assert_eq!(all.len() as u64, count_partitions(n, n), "n = {n}");
            assert!(all.windows(2).all(|w| w[0] < w[1]), "lexicographic order");
        }
    }

    #[test]
    fn box_respects_both_sides() {
        for lam in enumerate_in_box(9, 3, 4) {
            assert!(lam.width() <= 4 && lam.len() <= 3 && lam.size() == 9);
        }
        let brute = partitions_of(9)
            .into_iter()
            .filter(|l| l.width() <= 4 && l.len() <= 3)
            .count();
        assert_eq!(enumerate_in_box(9, 3, 4).len(), brute);
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        let lam = part(&[4, 2, 1]);
        assert_eq!(lam.conjugate(), part(&[3, 2, 1, 1]));
        assert_eq!(lam.conjugate().conjugate(), lam);
    }

    #[test]
    fn hook_length_examples() {
        assert_eq!(dim_sym_irrep(&part(&[5])), BigUint::one());
        assert_eq!(dim_sym_irrep(&part(&[2, 1])), BigUint::from(2u32));
        let sum: BigUint = partitions_of(4)
            .iter()
            .map(|l| dim_sym_irrep(l).pow(2))
            .sum();
        assert_eq!(sum, BigUint::from(24u32));
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        for n in 0..=12 {
            let sum: BigUint = partitions_of(n)
                .iter()
                .map(|l| dim_sym_irrep(l).pow(2))
                .sum();
            assert_eq!(sum, factorial(n), "n = {n}");
        }
    }

    /// Semistandard tableaux with entries in 1..=d, counted by brute force.
    fn count_ssyt(lambda: &Partition, d: usize) -> usize {
        let cells: Vec<(usize, usize)> = lambda
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
            .collect();
        fn fill(cells: &[(usize, usize)], k: usize, grid: &mut Vec<Vec<usize>>, d: usize) -> usize {
            if k == cells.len() {
                return 1;
            }
            let (i, j) = cells[k];
            let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
            let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
            let mut total = 0;
            for v in lo_row.max(lo_col)..=d {
                grid[i][j] = v;
                total += fill(cells, k + 1, grid, d);
            }
            grid[i][j] = 0;
            total
        }
        let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&r| vec![0; r]).collect();
        fill(&cells, 0, &mut grid, d)
    }

    #[test]
    fn hook_content_examples() {
        assert_eq!(dim_schur(&part(&[1]), 7), BigUint::from(7u32));
        assert_eq!(dim_schur(&part(&[1, 1, 1]), 2), BigUint::zero());
        assert_eq!(dim_schur(&part(&[2, 1]), 3), BigUint::from(8u32));
    }

    #[test]
    fn hook_content_matches_tableaux() {
        for n in 1..=6 {
            for lam in partitions_of(n) {
                for d in 1..=4 {
                    assert_eq!(
                        dim_schur(&lam, d).to_usize().unwrap(),
                        count_ssyt(&lam, d),
                        "{lam} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn schur_weyl_dimension_identity() {
        for n in 0..=10 {
            for d in 1..=4usize {
                let total: BigUint = partitions_of(n)
                    .iter()
                    .filter(|l| l.len() <= d)
                    .map(|l| dim_sym_irrep(l) * dim_schur(l, d))
                    .sum();
                assert_eq!(total, BigUint::from(d).pow(n as u32), "n={n} d={d}");
            }
        }
    }
}
