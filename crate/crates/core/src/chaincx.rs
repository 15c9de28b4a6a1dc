//! Free chain complexes of finitely generated free ℤ-modules.
//!
//! A complex is a family of free modules `V_n` (given by ranks) with
//! differentials `d_n : V_n → V_{n−1}` satisfying `d∘d = 0`.  Homology is
//! taken with the standard convention `H_n = ker d_n / im d_{n+1}` and is
//! returned as a presented group so that individual cycles can be projected
//! to canonical classes and classes lifted back to cycles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::abgroup::{AbGroup, PresentedGroup};
use crate::matrix::{self, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    /// A differential's shape does not match the ranks of its endpoints.
    ShapeMismatch {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// `d∘d ≠ 0`; `degree` is the smallest n with d_{n−1}·d_n ≠ 0.
    NotAComplex { degree: usize },
    /// A vector handed to a homology operation is not a cycle.
    NotACycle { degree: usize },
    /// A vector has the wrong length for its degree.
    BadVector { degree: usize, expected: usize, found: usize },
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::ShapeMismatch { degree, expected, found } => write!(
                f,
                "differential at degree {degree}: expected {}x{} matrix, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            ChainError::NotAComplex { degree } => {
                write!(f, "d∘d ≠ 0 at degree {degree}")
            }
            ChainError::NotACycle { degree } => {
                write!(f, "vector at degree {degree} is not a cycle")
            }
            ChainError::BadVector { degree, expected, found } => write!(
                f,
                "vector at degree {degree}: expected length {expected}, found {found}"
            ),
        }
    }
}

/// A bounded chain complex of free ℤ-modules, indexed by nonnegative degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeChainComplex {
    ranks: BTreeMap<usize, usize>,
    diffs: BTreeMap<usize, IntMatrix>,
}

impl FreeChainComplex {
    /// Builds a complex from ranks and differentials, checking shapes only.
    /// Use [`validate`](Self::validate) for the `d∘d = 0` law.
    ///
    /// Differentials for degrees where either endpoint has rank zero may be
    /// omitted; zero matrices of the right shape are supplied on demand.
    pub fn new(
        ranks: BTreeMap<usize, usize>,
        diffs: BTreeMap<usize, IntMatrix>,
    ) -> Result<Self, ChainError> {
        let mut kept_ranks = BTreeMap::new();
        for (&n, &r) in &ranks {
            if r > 0 {
                kept_ranks.insert(n, r);
            }
        }
        let rank_of = |n: isize| -> usize {
            if n < 0 {
                0
            } else {
                *kept_ranks.get(&(n as usize)).unwrap_or(&0)
            }
        };
        let mut kept_diffs = BTreeMap::new();
        for (&n, m) in &diffs {
            let expected = (rank_of(n as isize - 1), rank_of(n as isize));
            if (m.rows(), m.cols()) != expected {
                return Err(ChainError::ShapeMismatch {
                    degree: n,
                    expected,
                    found: (m.rows(), m.cols()),
                });
            }
            if expected.0 > 0 && expected.1 > 0 {
                kept_diffs.insert(n, m.clone());
            }
        }
        Ok(FreeChainComplex { ranks: kept_ranks, diffs: kept_diffs })
    }

    /// Complex with a single free module of the given rank in one degree.
    pub fn concentrated(degree: usize, rank: usize) -> Self {
        let mut ranks = BTreeMap::new();
        ranks.insert(degree, rank);
        FreeChainComplex::new(ranks, BTreeMap::new()).unwrap()
    }

    pub fn rank(&self, n: usize) -> usize {
        *self.ranks.get(&n).unwrap_or(&0)
    }

    /// Largest degree with a nonzero module (0 for the zero complex).
    pub fn max_degree(&self) -> usize {
        self.ranks.keys().next_back().copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<usize, usize> {
        &self.ranks
    }

    /// The differential `d_n : V_n → V_{n−1}` (zero matrix if absent).
    pub fn diff(&self, n: usize) -> IntMatrix {
        if let Some(m) = self.diffs.get(&n) {
            return m.clone();
        }
        let rows = if n == 0 { 0 } else { self.rank(n - 1) };
        IntMatrix::zero(rows, self.rank(n))
    }

    /// Checks `d_{n−1}·d_n = 0` everywhere, reporting the first failure.
    pub fn validate(&self) -> Result<(), ChainError> {
        for n in 2..=self.max_degree() {
            if !self.diff(n - 1).mul(&self.diff(n)).is_zero() {
                return Err(ChainError::NotAComplex { degree: n });
            }
        }
        Ok(())
    }

    /// `H_n = ker d_n / im d_{n+1}` with element-level projection and lift.
    ///
    /// Precondition: [`validate`](Self::validate) passes.
    pub fn homology(&self, n: usize) -> DegreeHomology {
        let cycles = matrix::kernel_basis(&self.diff(n));
        let k = cycles.cols();
        let bnd = self.diff(n + 1);
        let mut rel_cols = Vec::with_capacity(bnd.cols());
        for j in 0..bnd.cols() {
            let col = matrix::solve(&cycles, &bnd.col(j))
                .expect("homology: boundary is not a cycle (complex not validated?)");
            rel_cols.push(col);
        }
        let relations = IntMatrix::from_cols(k, &rel_cols);
        DegreeHomology {
            degree: n,
            cycles,
            presentation: PresentedGroup::new(k, relations),
        }
    }

    /// Splits `V_n` as `(Im d_n)′ ⊕ ker d_n`: the complement maps
    /// isomorphically onto `Im d_n`, the kernel part is killed by `d_n`.
    pub fn splitting(&self, n: usize) -> DegreeSplitting {
        let d = self.diff(n);
        let s = matrix::snf(&d);
        let r = s.rank();
        let complement: Vec<usize> = (0..r).collect();
        let kernel: Vec<usize> = (r..d.cols()).collect();
        DegreeSplitting {
            degree: n,
            kernel_basis: s.v.select_cols(&kernel),
            complement_basis: s.v.select_cols(&complement),
        }
    }

    /// The two-step free resolution `(Im d_{n+1})′ ↣ ker d_n ↠ H_n`.
    pub fn resolution_of_h(&self, n: usize) -> Resolution {
        let split_above = self.splitting(n + 1);
        let homology = self.homology(n);
        let img = self.diff(n + 1).mul(&split_above.complement_basis);
        let mut cols = Vec::with_capacity(img.cols());
        for j in 0..img.cols() {
            cols.push(
                matrix::solve(&homology.cycles, &img.col(j))
                    .expect("resolution: boundary is not a cycle"),
            );
        }
        let boundary = IntMatrix::from_cols(homology.cycles.cols(), &cols);
        Resolution {
            degree: n,
            complement: split_above.complement_basis,
            cycles: homology.cycles.clone(),
            boundary,
            homology,
        }
    }

    /// One-line textual summary, e.g. `V: 3:1 4:2` — used in diagnostics.
    pub fn describe(&self) -> String {
        if self.ranks.is_empty() {
            return String::from("V: 0");
        }
        let mut s = String::from("V:");
        for (n, r) in &self.ranks {
            s.push_str(&format!(" {n}:{r}"));
        }
        s
    }
}

/// Homology at one degree: a saturated cycle basis together with the
/// presentation of `ker d_n / im d_{n+1}` in cycle coordinates.
#[derive(Debug, Clone)]
pub struct DegreeHomology {
    pub degree: usize,
    /// Columns form a basis of `ker d_n ⊆ V_n`.
    pub cycles: IntMatrix,
    /// `ℤ^{#cycles}` modulo the columns of `d_{n+1}` in cycle coordinates.
    pub presentation: PresentedGroup,
}

impl DegreeHomology {
    pub fn group(&self) -> &AbGroup {
        self.presentation.group()
    }

    /// Canonical class of a cycle given in `V_n` coordinates.
    pub fn project_cycle(&self, v: &[BigInt]) -> Result<Vec<BigInt>, ChainError> {
        if v.len() != self.cycles.rows() {
            return Err(ChainError::BadVector {
                degree: self.degree,
                expected: self.cycles.rows(),
                found: v.len(),
            });
        }
        let z = matrix::solve(&self.cycles, v)
            .ok_or(ChainError::NotACycle { degree: self.degree })?;
        Ok(self.presentation.project(&z))
    }

    /// A cycle (in `V_n` coordinates) representing a canonical class.
    pub fn lift_class(&self, canonical: &[BigInt]) -> Vec<BigInt> {
        self.cycles.mul_vec(&self.presentation.lift(canonical))
    }

    /// Cycle representatives of all canonical generators, as matrix columns.
    pub fn generator_cycles(&self) -> IntMatrix {
        self.cycles.mul(&self.presentation.lift_matrix())
    }
}

/// Basis split of `V_n` as complement-of-kernel ⊕ kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSplitting {
    pub degree: usize,
    pub kernel_basis: IntMatrix,
    pub complement_basis: IntMatrix,
}

/// `(Im d_{n+1})′ ↣ ker d_n ↠ H_n`:  `boundary` is the injection written in
/// the `cycles` basis; the cokernel of `boundary` is `homology.group()`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub degree: usize,
    /// Basis of `(Im d_{n+1})′ ⊆ V_{n+1}`, as columns.
    pub complement: IntMatrix,
    /// Basis of `ker d_n ⊆ V_n`, as columns.
    pub cycles: IntMatrix,
    /// `d_{n+1}` restricted to `complement`, in `cycles` coordinates.
    pub boundary: IntMatrix,
    pub homology: DegreeHomology,
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::{One, Zero};

    fn cpx(ranks: &[(usize, usize)], diffs: &[(usize, IntMatrix)]) -> FreeChainComplex {
        FreeChainComplex::new(
            ranks.iter().copied().collect(),
            diffs.iter().cloned().collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_generator_gives_z() {
        let c = FreeChainComplex::concentrated(3, 1);
        assert!(c.validate().is_ok());
        assert_eq!(*c.homology(3).group(), AbGroup::free(1));
        assert_eq!(*c.homology(2).group(), AbGroup::trivial());
        assert_eq!(*c.homology(4).group(), AbGroup::trivial());
    }

    #[test]
    fn single_multiplication_by_k() {
        let c = cpx(&[(2, 1), (3, 1)], &[(3, IntMatrix::from_i64(&[&[4]]))]);
        assert!(c.validate().is_ok());
        assert_eq!(*c.homology(2).group(), AbGroup::cyclic(4));
        assert_eq!(*c.homology(3).group(), AbGroup::trivial());
    }

    #[test]
    fn validate_reports_first_bad_degree() {
        let one = IntMatrix::from_i64(&[&[1]]);
        let c = cpx(&[(1, 1), (2, 1), (3, 1)], &[(2, one.clone()), (3, one)]);
        assert_eq!(c.validate(), Err(ChainError::NotAComplex { degree: 3 }));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let err = FreeChainComplex::new(
            [(2usize, 1usize), (3, 2)].into_iter().collect(),
            [(3usize, IntMatrix::from_i64(&[&[1]]))].into_iter().collect(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            ChainError::ShapeMismatch { degree: 3, expected: (1, 2), found: (1, 1) }
        );
    }

    #[test]
    fn splitting_zero_and_injective() {
        let c = FreeChainComplex::concentrated(2, 3);
        let s = c.splitting(2);
        assert_eq!(s.complement_basis.cols(), 0);
        assert_eq!(s.kernel_basis.cols(), 3);

        let c = cpx(&[(1, 1), (2, 1)], &[(2, IntMatrix::from_i64(&[&[2]]))]);
        let s = c.splitting(2);
        assert_eq!(s.kernel_basis.cols(), 0);
        assert_eq!(s.complement_basis.cols(), 1);
    }

    #[test]
    fn splitting_assembles_to_unimodular_basis() {
        let d = IntMatrix::from_i64(&[&[2, 1, 0], &[0, 3, 6], &[4, 0, 2]]);
        let c = cpx(&[(1, 3), (2, 3)], &[(2, d.clone())]);
        let s = c.splitting(2);
        let assembled = s.complement_basis.hstack(&s.kernel_basis);
        let det = matrix::det_bareiss(&assembled);
        assert!(det == BigInt::one() || det == -BigInt::one());
        // d is injective on the complement: its columns there stay independent
        let on_comp = d.mul(&s.complement_basis);
        assert_eq!(matrix::snf(&on_comp).rank(), s.complement_basis.cols());
        assert!(d.mul(&s.kernel_basis).is_zero());
    }

    #[test]
    fn resolution_of_z2() {
        let c = cpx(&[(3, 1), (4, 1)], &[(4, IntMatrix::from_i64(&[&[2]]))]);
        let r = c.resolution_of_h(3);
        assert_eq!(r.boundary, IntMatrix::from_i64(&[&[2]]));
        assert_eq!(*r.homology.group(), AbGroup::cyclic(2));
        // cokernel of the boundary map re-presents the same group
        let coker = PresentedGroup::new(r.cycles.cols(), r.boundary.clone());
        assert_eq!(coker.group(), r.homology.group());
        // composite into homology is zero
        for j in 0..r.boundary.cols() {
            let cls = r.homology.presentation.project(&r.boundary.col(j));
            assert!(cls.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn resolution_with_empty_upper_degree() {
        let c = FreeChainComplex::concentrated(5, 2);
        let r = c.resolution_of_h(5);
        assert_eq!(r.complement.cols(), 0);
        assert_eq!(r.cycles.cols(), 2);
        assert_eq!(*r.homology.group(), AbGroup::free(2));
    }

    #[test]
    fn degenerate_degrees_are_zero() {
        let c = FreeChainComplex::new(BTreeMap::new(), BTreeMap::new()).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(*c.homology(7).group(), AbGroup::trivial());
        assert_eq!(c.splitting(7).kernel_basis.cols(), 0);
    }

    #[test]
    fn project_and_lift_round_trip() {
        // 0 → Z^2 →d Z^2 with d = [[2,0],[0,0]]: H_1 = Z2 + Z, H_2 = Z
        let d = IntMatrix::from_i64(&[&[2, 0], &[0, 0]]);
        let c = cpx(&[(1, 2), (2, 2)], &[(2, d)]);
        let h = c.homology(1);
        assert_eq!(*h.group(), AbGroup::from_orders(&[BigInt::from(0), BigInt::from(2)]));
        for k in 0..h.group().generator_count() {
            let mut cls = vec![BigInt::zero(); h.group().generator_count()];
            cls[k] = BigInt::one();
            let cyc = h.lift_class(&cls);
            assert_eq!(h.project_cycle(&cyc).unwrap(), cls);
        }
        // a non-cycle in degree 2 is rejected
        let h2 = c.homology(2);
        let e0 = vec![BigInt::one(), BigInt::zero()];
        assert_eq!(
            h2.project_cycle(&e0),
            Err(ChainError::NotACycle { degree: 2 })
        );
    }
}
