use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::fp::{inv_mod_u64, mul_mod_u64};
use super::{Fp, Prime, TPoly};

/// Integral domain with exact division, the setting of Bareiss elimination.
pub trait ExactDomain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / divisor`; callers guarantee the quotient lies in the domain.
    fn div_exact(&self, divisor: &Self) -> Self;
}

impl ExactDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

impl ExactDomain for TPoly {
    fn zero() -> Self {
        TPoly::zero()
    }
    fn one() -> Self {
        TPoly::one()
    }
    fn is_zero(&self) -> bool {
        TPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        TPoly::div_exact(self, divisor).expect("inexact Bareiss division in Z[t]")
    }
}

/// Fraction-free elimination in place. Returns `(rank, swap parity)`; when
/// the matrix is square and of full rank the last pivot is the determinant
/// up to that sign.
fn bareiss<T: ExactDomain>(m: &mut [Vec<T>]) -> (usize, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    let mut odd = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            odd = !odd;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                let v = pivot_row[c].mul(&row[j]).sub(&row[c].mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[c] = T::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    (rank, odd)
}

pub fn bareiss_rank<T: ExactDomain>(m: &[Vec<T>]) -> usize {
    let mut work = m.to_vec();
    bareiss(&mut work).0
}

/// Determinant of a square matrix over an exact domain.
pub fn bareiss_det<T: ExactDomain>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    let mut work = m.to_vec();
    let (rank, odd) = bareiss(&mut work);
    if rank < n {
        return T::zero();
    }
    let d = work[n - 1][n - 1].clone();
    if odd {
        d.neg()
    } else {
        d
    }
}

/// Rank of a rational matrix: rows are cleared of denominators, then
/// Bareiss elimination runs over the integers.
pub fn rank_rational(m: &[Vec<BigRational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(<BigInt as One>::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    bareiss_rank(&ints)
}

pub fn rank_fp(m: &[Vec<Fp>]) -> usize {
    let Some(first) = m.iter().flatten().next() else {
        return 0;
    };
    let p = first.prime();
    let cols = m[0].len();
    let mut mat = FpMatrix::zeros(p, m.len(), cols);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(x.prime(), p, "mixed moduli");
            mat.set(i, j, x.value());
        }
    }
    mat.rank()
}

/// Unique solution of `a x = b` over `Q`; `None` if the system is
/// inconsistent or underdetermined.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter()
                .cloned()
                .chain(std::iter::once(rhs.clone()))
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let piv = (r..rows).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(piv, r);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=cols {
                    let v = &f * &aug[r][j];
                    aug[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| aug[c][cols].clone()).collect())
}

/// Dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p.get();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows);
        let p = self.p.get();
        let mut out = FpMatrix::zeros(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b != 0 {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = (out.data[idx] + mul_mod_u64(a, b, p)) % p;
                    }
                }
            }
        }
        out
    }

    pub fn kron(&self, rhs: &FpMatrix) -> FpMatrix {
        let p = self.p.get();
        let mut out = FpMatrix::zeros(self.p, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let v = mul_mod_u64(a, rhs.get(k, l), p);
                        out.set(i * rhs.rows + k, j * rhs.cols + l, v);
                    }
                }
            }
        }
        out
    }

    pub fn sub_identity(&self) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let p = self.p.get();
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = (out.get(i, i) + p - 1) % p;
            out.set(i, i, v);
        }
        out
    }

    pub fn block_diag(p: Prime, blocks: &[FpMatrix]) -> FpMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = FpMatrix::zeros(p, n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        reduce_rows(&mut rows, self.p.get())
    }

    /// `rank(N^k)` for `k = 0, 1, ...` until the rank reaches zero; the
    /// image chain `im N^k = N(im N^(k-1))` is tracked by row-reduced bases.
    pub fn nilpotent_rank_profile(&self, max_steps: usize) -> Option<Vec<usize>> {
        assert_eq!(self.rows, self.cols);
        let p = self.p.get();
        let n = self.rows;
        // basis vectors of the current image as rows; N acts on column vectors,
        // so the image of v is (N v), computed as v * N^T
        let mut basis: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        let mut profile = vec![n];
        for _ in 0..max_steps {
            let mut next: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| {
                    let mut w = vec![0u64; n];
                    for (i, wi) in w.iter_mut().enumerate() {
                        let row = self.row(i);
                        let mut acc = 0u64;
                        for (a, b) in row.iter().zip(v) {
                            if *a != 0 && *b != 0 {
                                acc = (acc + mul_mod_u64(*a, *b, p)) % p;
                            }
                        }
                        *wi = acc;
                    }
                    w
                })
                .collect();
            let r = reduce_rows(&mut next, p);
            next.truncate(r);
            profile.push(r);
            if r == 0 {
                return Some(profile);
            }
            if r == basis.len() {
                // not nilpotent: the image stopped shrinking
                return None;
            }
            basis = next;
        }
        None
    }
}

/// Gaussian elimination mod `p`; leaves the first `rank` rows as a reduced basis.
fn reduce_rows(rows: &mut [Vec<u64>], p: u64) -> usize {
    let n_rows = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == n_rows {
            break;
        }
        let Some(piv) = (rank..n_rows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(piv, rank);
        let inv = inv_mod_u64(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = mul_mod_u64(*x, inv, p);
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(pivot) {
                if *y != 0 {
                    *x = (*x + p - mul_mod_u64(f, *y, p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
