//! Integer-lattice routines for the oracles.  These deliberately avoid the
//! library's Smith-normal-form pipeline: plain Euclidean column elimination
//! only, so homology answers can be cross-checked through an unrelated code
//! path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use wseq_core::matrix::IntMatrix;

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, BigInt::from(rng.gen_range(-bound..=bound)));
        }
    }
    m
}

/// Random unimodular matrix with its inverse, built from elementary
/// shears, swaps and sign flips.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut pinv = IntMatrix::identity(n);
    if n == 0 {
        return (p, pinv);
    }
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let c = BigInt::from(*[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap());
                let mut e = IntMatrix::identity(n);
                e.set(i, j, c.clone());
                let mut einv = IntMatrix::identity(n);
                einv.set(i, j, -c);
                p = p.mul(&e);
                pinv = einv.mul(&pinv);
            }
            1 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let mut e = IntMatrix::identity(n);
                e.set(i, i, BigInt::zero());
                e.set(j, j, BigInt::zero());
                e.set(i, j, BigInt::one());
                e.set(j, i, BigInt::one());
                p = p.mul(&e);
                pinv = e.mul(&pinv);
            }
            _ => {
                let i = rng.gen_range(0..n);
                let mut e = IntMatrix::identity(n);
                e.set(i, i, -BigInt::one());
                p = p.mul(&e);
                pinv = e.mul(&pinv);
            }
        }
    }
    (p, pinv)
}

/// Column echelon basis of the column lattice of `m`, as (pivot row, column)
/// pairs with strictly increasing pivot rows and positive pivots.  Entries of
/// later columns vanish at earlier pivot rows.
pub fn column_echelon(m: &IntMatrix) -> Vec<(usize, Vec<BigInt>)> {
    let mut cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| m.col(j)).collect();
    let mut next = 0usize;
    let mut out = Vec::new();
    for row in 0..m.rows() {
        loop {
            let mut best: Option<usize> = None;
            for (j, c) in cols.iter().enumerate().skip(next) {
                if !c[row].is_zero()
                    && best.map_or(true, |b| c[row].abs() < cols[b][row].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            cols.swap(next, b);
            let mut done = true;
            for j in next + 1..cols.len() {
                if !cols[j][row].is_zero() {
                    let q = cols[j][row].div_floor(&cols[next][row]);
                    for i in 0..m.rows() {
                        let delta = &q * &cols[next][i];
                        cols[j][i] -= delta;
                    }
                    if !cols[j][row].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if next < cols.len() && !cols[next][row].is_zero() {
            if cols[next][row].is_negative() {
                for x in cols[next].iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push((row, cols[next].clone()));
            next += 1;
        }
    }
    out
}

/// Kernel lattice basis of `m` via stacked-identity column reduction.
pub fn echelon_kernel(m: &IntMatrix) -> IntMatrix {
    let stacked = {
        let mut s = IntMatrix::zero(m.rows() + m.cols(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                s.set(i, j, m.get(i, j).clone());
            }
        }
        for j in 0..m.cols() {
            s.set(m.rows() + j, j, BigInt::one());
        }
        s
    };
    // run the echelon pass pivoting on the top block only
    let mut cols: Vec<Vec<BigInt>> = (0..stacked.cols()).map(|j| stacked.col(j)).collect();
    let mut next = 0usize;
    let rows = stacked.rows();
    for row in 0..m.rows() {
        loop {
            let mut best: Option<usize> = None;
            for (j, c) in cols.iter().enumerate().skip(next) {
                if !c[row].is_zero()
                    && best.map_or(true, |b| c[row].abs() < cols[b][row].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            cols.swap(next, b);
            let mut done = true;
            for j in next + 1..cols.len() {
                if !cols[j][row].is_zero() {
                    let q = cols[j][row].div_floor(&cols[next][row]);
                    for i in 0..rows {
                        let delta = &q * &cols[next][i];
                        cols[j][i] -= delta;
                    }
                    if !cols[j][row].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if next < cols.len() && !cols[next][row].is_zero() {
            next += 1;
        }
    }
    let kernel: Vec<Vec<BigInt>> = cols[next..]
        .iter()
        .map(|c| c[m.rows()..].to_vec())
        .collect();
    for c in &cols[next..] {
        assert!(c[..m.rows()].iter().all(|x| x.is_zero()));
    }
    IntMatrix::from_cols(m.cols(), &kernel)
}

/// Canonical coset representative of `v` modulo the lattice spanned by the
/// echelon columns: each pivot row is reduced into `[0, pivot)`.
pub fn canon_mod(echelon: &[(usize, Vec<BigInt>)], v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for (p, c) in echelon {
        let q = v[*p].div_floor(&c[*p]);
        if !q.is_zero() {
            for (i, ci) in c.iter().enumerate() {
                let delta = &q * ci;
                v[i] -= delta;
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_vectors_annihilate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (rows, cols) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
            let m = random_matrix(&mut rng, rows, cols, 4);
            let k = echelon_kernel(&m);
            assert!(m.mul(&k).is_zero());
        }
        assert_eq!(echelon_kernel(&IntMatrix::identity(3)).cols(), 0);
        assert_eq!(echelon_kernel(&IntMatrix::zero(2, 3)).cols(), 3);
    }

    #[test]
    fn canonical_representatives_are_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let cols = rng.gen_range(0..=4);
            let m = random_matrix(&mut rng, 4, cols, 5);
            let ech = column_echelon(&m);
            let v: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-9..=9i64))).collect();
            let c = canon_mod(&ech, &v);
            // idempotent
            assert_eq!(canon_mod(&ech, &c), c);
            // invariant under adding a lattice column
            if m.cols() > 0 {
                let shifted: Vec<BigInt> =
                    v.iter().zip(m.col(0)).map(|(a, b)| a + b).collect();
                assert_eq!(canon_mod(&ech, &shifted), c);
            }
            // lattice vectors reduce to zero
            for j in 0..m.cols() {
                assert!(canon_mod(&ech, &m.col(j)).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn unimodular_pairs_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 0..=5 {
            let (p, pinv) = random_unimodular(&mut rng, n, 20);
            assert_eq!(p.mul(&pinv), IntMatrix::identity(n));
            assert_eq!(pinv.mul(&p), IntMatrix::identity(n));
        }
    }
}
