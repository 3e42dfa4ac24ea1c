//! Exact integer matrices, the matrices `w_k` and `z_k`, and the rank
//! certificate for openness of the orbit of `(z_n, z_{n-1})`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense matrix over `Z`. Zero-sized matrices are allowed (`z_0` is the
/// empty matrix).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().map(BigInt::from).collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_i64()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Block diagonal `[[self, 0], [0, other]]`.
    pub fn direct_sum(&self, other: &IntMatrix) -> Self {
        let mut out = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows - 1, self.cols - 1);
        for (oi, i) in (0..self.rows).filter(|&i| i != skip_row).enumerate() {
            for (oj, j) in (0..self.cols).filter(|&j| j != skip_col).enumerate() {
                out[(oi, oj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Inverse of a matrix with determinant `+-1`, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let det = mat_det(self)?;
        if det.abs() != BigInt::one() {
            return Err(Error::InvalidArgument(format!("determinant {det} is not a unit")));
        }
        let k = self.rows;
        let mut out = IntMatrix::zeros(k, k);
        if k == 1 {
            out[(0, 0)] = det;
            return Ok(out);
        }
        for i in 0..k {
            for j in 0..k {
                let cofactor = mat_det(&self.minor(j, i))?;
                let signed = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
                out[(i, j)] = signed * &det;
            }
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        f.write_str("]")
    }
}

/// Entries are written as JSON integers when they fit in `i64` and as
/// decimal strings otherwise.
impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| match x.to_i64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::from(x.to_string()),
                    })
                    .collect()
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut out = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(D::Error::custom("ragged matrix rows"));
            }
            for (j, v) in row.iter().enumerate() {
                out[(i, j)] = match v {
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| D::Error::custom(format!("non-integer entry {n}")))?,
                    serde_json::Value::String(s) => {
                        s.parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}")))?
                    }
                    other => return Err(D::Error::custom(format!("bad matrix entry {other}"))),
                };
            }
        }
        Ok(out)
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn mat_det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    let k = m.rows;
    if k == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..k).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..k - 1 {
        if a[p][p].is_zero() {
            match (p + 1..k).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                a[i][j] = v / &prev;
            }
            a[i][p] = BigInt::zero();
        }
        prev = a[p][p].clone();
    }
    Ok(sign * &a[k - 1][k - 1])
}

/// Rank over `Q`, by fraction-free row reduction.
pub fn mat_rank_q(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            let mut g = BigInt::zero();
            for j in col..m.cols {
                row[j] = &row[j] * &prow[col] - &factor * &prow[j];
                g = g.gcd(&row[j]);
            }
            if g > BigInt::one() {
                for x in row[col..].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The `k x k` antidiagonal permutation matrix.
pub fn w_matrix(k: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(k, k);
    for i in 0..k {
        m[(i, k - 1 - i)] = BigInt::one();
    }
    m
}

/// `z_0` is empty, `z_1 = [1]`, and for `k >= 2`
/// `z_k = (w_{k-1} + 1)(z_{k-2}^-1 + 1_2)[[z_{k-1}^t w_{k-1} z_{k-1}, e_{k-1}^t], [0, 1]]`.
pub fn z_matrix(k: usize) -> IntMatrix {
    let mut zs = vec![IntMatrix::identity(0), IntMatrix::identity(1)];
    for m in 2..=k {
        let z1 = &zs[m - 1];
        let z2 = &zs[m - 2];
        let w = w_matrix(m - 1);
        let first = w.direct_sum(&IntMatrix::identity(1));
        let second = z2.inverse_unimodular().expect("z_k is unimodular").direct_sum(&IntMatrix::identity(2));
        let core = z1.transpose().mul(&w).and_then(|x| x.mul(z1)).expect("square blocks");
        let mut third = IntMatrix::zeros(m, m);
        third.set_block(0, 0, &core);
        third[(m - 2, m - 1)] = BigInt::one();
        third[(m - 1, m - 1)] = BigInt::one();
        let z = first.mul(&second).and_then(|x| x.mul(&third)).expect("square blocks");
        zs.push(z);
    }
    zs.swap_remove(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRank {
    pub rank: usize,
    pub expected: usize,
}

impl OrbitRank {
    pub fn is_open(&self) -> bool {
        self.rank == self.expected
    }
}

/// Rank of the tangent map of `(b, b', x) -> (b z_n x, b' z_{n-1} x)` at the
/// identity, where `b, b'` are lower triangular and `x` in `GL(n-1)` is
/// embedded in the upper-left corner of `GL(n)`. Translated back to the
/// identity, the image is spanned by the lower-triangular elementary matrices
/// of `gl(n) + gl(n-1)` and `(z_n X z_n^-1, z_{n-1} X z_{n-1}^-1)` for
/// elementary `X` in `gl(n-1)`.
pub fn open_orbit_rank(n: usize) -> Result<OrbitRank> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    orbit_rank_at(&z_matrix(n), &z_matrix(n - 1))
}

/// The same rank computed at an arbitrary unimodular pair `(g, h)` of sizes
/// `n` and `n - 1`.
pub fn orbit_rank_at(g: &IntMatrix, h: &IntMatrix) -> Result<OrbitRank> {
    let n = g.rows();
    if !g.is_square() || !h.is_square() || n < 2 || h.rows() + 1 != n {
        return Err(Error::DimensionMismatch("expected square matrices of sizes n and n - 1".into()));
    }
    let m = n - 1;
    let dim = n * n + m * m;
    let mut vectors: Vec<Vec<BigInt>> = Vec::new();

    let unit_vector = |pos: usize| {
        let mut v = vec![BigInt::zero(); dim];
        v[pos] = BigInt::one();
        v
    };
    for i in 0..n {
        for j in 0..=i {
            vectors.push(unit_vector(i * n + j));
        }
    }
    for i in 0..m {
        for j in 0..=i {
            vectors.push(unit_vector(n * n + i * m + j));
        }
    }

    let zn = g;
    let zn_inv = g.inverse_unimodular()?;
    let zm = h;
    let zm_inv = h.inverse_unimodular()?;
    for a in 0..m {
        for b in 0..m {
            let mut big = IntMatrix::zeros(n, n);
            big[(a, b)] = BigInt::one();
            let mut small = IntMatrix::zeros(m, m);
            small[(a, b)] = BigInt::one();
            let left = zn.mul(&big)?.mul(&zn_inv)?;
            let right = zm.mul(&small)?.mul(&zm_inv)?;
            vectors.push(left.data.into_iter().chain(right.data).collect());
        }
    }

    let mut mat = IntMatrix::zeros(vectors.len(), dim);
    mat.data = vectors.into_iter().flatten().collect();
    Ok(OrbitRank { rank: mat_rank_q(&mat), expected: dim })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn small_z_matrices() {
        assert_eq!(z_matrix(0), IntMatrix::identity(0));
        assert_eq!(z_matrix(1), m(vec![vec![1]]));
        assert_eq!(z_matrix(2), m(vec![vec![1, 1], vec![0, 1]]));
        assert_eq!(z_matrix(3), m(vec![vec![1, 2, 1], vec![0, 1, 0], vec![0, 0, 1]]));
        let z2 = z_matrix(2);
        let core = z2.transpose().mul(&w_matrix(2)).unwrap().mul(&z2).unwrap();
        assert_eq!(core, m(vec![vec![0, 1], vec![1, 2]]));
    }

    #[test]
    fn z_matrices_are_unimodular() {
        for k in 0..=12 {
            let z = z_matrix(k);
            assert_eq!(mat_det(&z).unwrap(), BigInt::one(), "k = {k}");
            let inv = z.inverse_unimodular().unwrap();
            assert_eq!(z.mul(&inv).unwrap(), IntMatrix::identity(k));
        }
    }

    #[test]
    fn w_is_an_involution() {
        for k in 1..8 {
            let w = w_matrix(k);
            assert_eq!(w.mul(&w).unwrap(), IntMatrix::identity(k));
        }
        assert_eq!(mat_det(&w_matrix(2)).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(mat_det(&z_matrix(3)).unwrap(), BigInt::one());
        assert_eq!(mat_rank_q(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(mat_det(&IntMatrix::zeros(2, 3)), Err(Error::NotSquare(2, 3)));
        let a = m(vec![vec![2, 4, 1], vec![1, 2, 0], vec![3, 6, 1]]);
        assert_eq!(mat_rank_q(&a), 2);
        assert_eq!(mat_det(&a).unwrap(), BigInt::zero());
        let b = m(vec![vec![0, 2, 1], vec![3, 1, 4], vec![5, 9, 2]]);
        // 0(2-36) - 2(6-20) + 1(27-5)
        assert_eq!(mat_det(&b).unwrap(), BigInt::from(50));
        assert_eq!(mat_rank_q(&b), 3);
    }

    #[test]
    fn orbit_is_open() {
        assert_eq!(open_orbit_rank(2).unwrap(), OrbitRank { rank: 5, expected: 5 });
        assert_eq!(open_orbit_rank(3).unwrap(), OrbitRank { rank: 13, expected: 13 });
        for n in 4..=6 {
            let r = open_orbit_rank(n).unwrap();
            assert_eq!(r.expected, n * n + (n - 1) * (n - 1));
            assert!(r.is_open(), "n = {n}: {r:?}");
        }
    }

    #[test]
    fn identity_pair_orbit_is_not_open() {
        // At (1, 1) only the strictly upper-triangular X add new directions.
        for n in 2..=5 {
            let r = orbit_rank_at(&IntMatrix::identity(n), &IntMatrix::identity(n - 1)).unwrap();
            let lower = n * (n + 1) / 2 + (n - 1) * n / 2;
            assert_eq!(r.rank, lower + (n - 1) * (n - 2) / 2);
            assert!(!r.is_open());
        }
    }

    #[test]
    fn json_round_trip() {
        let z = z_matrix(4);
        let text = serde_json::to_string(&z).unwrap();
        assert_eq!(serde_json::from_str::<IntMatrix>(&text).unwrap(), z);
        assert_eq!(serde_json::to_string(&z_matrix(3)).unwrap(), "[[1,2,1],[0,1,0],[0,0,1]]");
    }
}
