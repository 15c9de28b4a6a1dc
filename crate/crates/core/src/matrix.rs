//! Exact linear algebra over the integers: dense matrices, Smith normal form,
//! linear solving, kernel/image bases.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[BigInt], rows: usize, cols: usize) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for (i, e) in entries.iter().enumerate() {
            assert!(i < rows && i < cols);
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .sum::<BigInt>()
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -a.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "dimension mismatch in hstack");
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix built from a list of columns (each of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
        let mut out = IntMatrix::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "bad column length");
            for (i, v) in c.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    /// Keep only the listed columns, in order.
    pub fn select_cols(&self, keep: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = keep.iter().map(|&j| self.col(j)).collect();
        IntMatrix::from_cols(self.rows, &cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[i] += c * row[j]
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        assert_ne!(i, j);
        for k in 0..self.cols {
            let v = self.get(j, k) * c;
            let cur = self.get(i, k) + v;
            self.set(i, k, cur);
        }
    }

    /// col[j] += c * col[i]
    fn add_col(&mut self, j: usize, i: usize, c: &BigInt) {
        assert_ne!(i, j);
        for k in 0..self.rows {
            let v = self.get(k, i) * c;
            let cur = self.get(k, j) + v;
            self.set(k, j, cur);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k).clone();
            self.set(i, k, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -self.get(k, j).clone();
            self.set(k, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form `u * m * v = d` with unimodular `u`, `v` and their
/// inverses, `d` diagonal with nonnegative entries in a divisibility chain.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries, one per `min(rows, cols)` slot.
    pub fn diag(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diag().iter().filter(|x| !x.is_zero()).count()
    }
}

struct SnfWork {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.m.add_row(i, j, c);
        self.u.add_row(i, j, c);
        let neg = -c.clone();
        self.u_inv.add_col(j, i, &neg);
    }

    fn add_col(&mut self, j: usize, i: usize, c: &BigInt) {
        self.m.add_col(j, i, c);
        self.v.add_col(j, i, c);
        let neg = -c.clone();
        self.v_inv.add_row(i, j, &neg);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Position of a nonzero entry of minimal absolute value in the trailing
/// submatrix starting at `(t, t)`; ties broken by smallest row, then column.
fn min_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if x.abs() < m.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Smith normal form with smallest-absolute-value pivoting. Deterministic.
pub fn snf(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = SnfWork {
        m: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = min_pivot(&w.m, t) else {
                break 'pivot;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if w.m.get(i, t).is_zero() {
                    continue;
                }
                let q = -(w.m.get(i, t) / w.m.get(t, t));
                w.add_row(i, t, &q);
                if !w.m.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.m.get(t, j).is_zero() {
                    continue;
                }
                let q = -(w.m.get(t, j) / w.m.get(t, t));
                w.add_col(j, t, &q);
                if !w.m.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Pivot divides everything it eliminated; now enforce the
            // divisibility chain against the rest of the submatrix.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.m.get(i, j).mod_floor(w.m.get(t, t)).is_zero() {
                        w.add_row(t, i, &BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if w.m.get(t, t).is_negative() {
            w.negate_row(t);
        }
    }
    Snf {
        d: w.m,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// One integer solution `x` of `m x = b`, or `None` if there is none.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len(), "dimension mismatch in solve");
    solve_snf(&snf(m), b)
}

/// As `solve`, reusing a precomputed Smith form of the matrix.
pub fn solve_snf(s: &Snf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = s.d.rows();
    let cols = s.d.cols();
    let c = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let di = if i < cols { s.d.get(i, i).clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !c[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = c[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Columns form a basis of the kernel lattice `{x : m x = 0}`. The basis is
/// saturated: it spans a direct summand of the ambient lattice.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    kernel_basis_snf(&s)
}

pub fn kernel_basis_snf(s: &Snf) -> IntMatrix {
    let cols = s.d.cols();
    let diag = s.diag();
    let free: Vec<usize> = (0..cols)
        .filter(|&j| j >= diag.len() || diag[j].is_zero())
        .collect();
    s.v.select_cols(&free)
}

/// Columns form a basis of the image lattice (column span) of `m`.
pub fn image_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let cols: Vec<Vec<BigInt>> = s
        .diag()
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(j, d)| {
            s.u_inv
                .col(j)
                .into_iter()
                .map(|x| x * d)
                .collect::<Vec<_>>()
        })
        .collect();
    IntMatrix::from_cols(m.rows(), &cols)
}

/// Determinant by fraction-free Bareiss elimination. Exact; independent of
/// the Smith-form code path, which makes it usable as a cross-check.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                let _ = r;
                a.set(i, j, q);
            }
        }
        for i in k + 1..n {
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let s = snf(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "u*m*v != d");
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        let diag = s.diag();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() && !diag[i].is_zero() {
                assert!(
                    diag[i + 1].mod_floor(&diag[i]).is_zero(),
                    "divisibility chain broken: {:?}",
                    diag
                );
            }
            if diag[i].is_zero() && i + 1 < diag.len() {
                assert!(diag[i + 1].is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_small() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        check_snf(&m);
        let s = snf(&m);
        let diag: Vec<i64> = s.diag().iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(diag, vec![2, 2, 156]);
    }

    #[test]
    fn snf_spec_diag_case() {
        // diag(2,6,12) stays diag(2,6,12); diag(4,6) becomes diag(2,12).
        let m = IntMatrix::from_i64(&[&[2, 0, 0], &[0, 6, 0], &[0, 0, 12]]);
        let s = snf(&m);
        assert_eq!(s.d, m);
        let m2 = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        let s2 = snf(&m2);
        assert_eq!(s2.d, IntMatrix::from_i64(&[&[2, 0], &[0, 12]]));
        check_snf(&m);
        check_snf(&m2);
    }

    #[test]
    fn snf_zero_and_empty() {
        check_snf(&IntMatrix::zero(3, 2));
        check_snf(&IntMatrix::zero(0, 4));
        check_snf(&IntMatrix::zero(4, 0));
        check_snf(&IntMatrix::zero(0, 0));
        let s = snf(&IntMatrix::zero(0, 4));
        assert_eq!(kernel_basis_snf(&s).cols(), 4);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let b = [BigInt::from(4), BigInt::from(9)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b.to_vec());
        let b2 = [BigInt::from(1), BigInt::from(3)];
        assert!(solve(&m, &b2).is_none());
        // underdetermined but solvable
        let m3 = IntMatrix::from_i64(&[&[2, 3]]);
        let b3 = [BigInt::from(1)];
        let x3 = solve(&m3, &b3).unwrap();
        assert_eq!(m3.mul_vec(&x3), b3.to_vec());
    }

    #[test]
    fn kernel_and_image() {
        let m = IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        let im = image_basis(&m);
        assert_eq!(im.cols(), 1);
        // image is spanned by (1, 2)
        let c = im.col(0);
        assert_eq!(&c[1], &(&c[0] * BigInt::from(2)));
    }

    #[test]
    fn det_matches_diag_product() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let s = snf(&m);
        let prod: BigInt = s.diag().iter().product();
        assert_eq!(det_bareiss(&m).abs(), prod);
        assert_eq!(det_bareiss(&s.u).abs(), BigInt::one());
        assert_eq!(det_bareiss(&s.v).abs(), BigInt::one());
    }
}
