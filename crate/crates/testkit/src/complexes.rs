//! Random chain-complex generation and a brute-force coset-enumeration
//! oracle for integral homology.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use wseq_core::abgroup::AbGroup;
use wseq_core::chaincx::FreeChainComplex;
use wseq_core::matrix::IntMatrix;

use crate::lattice::{canon_mod, column_echelon, echelon_kernel, random_matrix};

fn max_abs(m: &IntMatrix) -> BigInt {
    let mut best = BigInt::zero();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j).abs() > best {
                best = m.get(i, j).abs();
            }
        }
    }
    best
}

/// Random valid complex in degrees 0..=3 with ranks ≤ 4 and differential
/// entries of absolute value ≤ 3.  Differentials above degree 1 are drawn
/// from the kernel lattice of the one below, so `d∘d = 0` holds exactly;
/// draws whose entries overflow the bound are rejected (returns `None`).
pub fn random_complex<R: Rng>(rng: &mut R) -> Option<FreeChainComplex> {
    let bound = BigInt::from(3);
    let r: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=4usize)).collect();
    let d1 = random_matrix(rng, r[0], r[1], 3);
    let k1 = echelon_kernel(&d1);
    let d2 = k1.mul(&random_matrix(rng, k1.cols(), r[2], 2));
    if max_abs(&d2) > bound {
        return None;
    }
    let k2 = echelon_kernel(&d2);
    let d3 = k2.mul(&random_matrix(rng, k2.cols(), r[3], 2));
    if max_abs(&d3) > bound {
        return None;
    }
    let c = FreeChainComplex::new(
        (0..4).map(|n| (n, r[n])).collect(),
        [(1, d1), (2, d2), (3, d3)].into_iter().collect(),
    )
    .expect("shapes are consistent by construction");
    c.validate().expect("kernel-lattice construction gives a complex");
    Some(c)
}

pub enum CosetAnswer {
    /// The quotient is infinite (boundary lattice has smaller rank than the
    /// cycle lattice).
    Infinite,
    /// Finite but more elements than the requested cap.
    TooBig,
    /// All elements, as canonical coset representatives in `V_n` coordinates
    /// (the zero class is the zero vector).
    Elements(Vec<Vec<BigInt>>),
}

/// Enumerates `ker d_n / im d_{n+1}` by breadth-first search over canonical
/// coset representatives, using only Euclidean column elimination.
pub fn coset_elements(c: &FreeChainComplex, n: usize, cap: usize) -> CosetAnswer {
    let kernel = echelon_kernel(&c.diff(n));
    let lattice = column_echelon(&c.diff(n + 1));
    if lattice.len() < kernel.cols() {
        return CosetAnswer::Infinite;
    }
    let dim = c.rank(n);
    let zero = vec![BigInt::zero(); dim];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(x) = queue.pop_front() {
        for j in 0..kernel.cols() {
            let y: Vec<BigInt> = x
                .iter()
                .zip(kernel.col(j))
                .map(|(a, b)| a + b)
                .collect();
            let y = canon_mod(&lattice, &y);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return CosetAnswer::TooBig;
                }
                queue.push_back(y);
            }
        }
    }
    CosetAnswer::Elements(seen.into_iter().collect())
}

/// Runs the library-vs-oracle homology comparison over seeded random
/// complexes until `target` of them have every homology group finite of
/// order ≤ 200 (decided by the oracle); those are compared element-census
/// against the library.  Degrees the oracle rejects as infinite or too
/// big are cross-checked coarsely.  Returns (complexes fully compared,
/// degrees compared).
pub fn run_coset_comparison(seed: u64, target: usize) -> (usize, usize) {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0usize;
    let mut compared_degrees = 0usize;
    let mut attempts = 0usize;
    while accepted < target {
        attempts += 1;
        assert!(
            attempts < 200 * target + 10_000,
            "random complex generation is rejecting too often"
        );
        let Some(c) = random_complex(&mut rng) else {
            continue;
        };
        let mut finite_parts = Vec::new();
        let mut all_small = true;
        for n in 0..=3 {
            match coset_elements(&c, n, 200) {
                CosetAnswer::Elements(e) => finite_parts.push((n, e)),
                CosetAnswer::Infinite => {
                    assert!(
                        c.homology(n).group().free_rank() >= 1,
                        "oracle says H_{n} infinite, library disagrees for {}",
                        c.describe()
                    );
                    all_small = false;
                }
                CosetAnswer::TooBig => {
                    let g = c.homology(n).group().clone();
                    assert!(
                        !g.is_finite() || g.order().unwrap() > 200.into(),
                        "oracle says H_{n} has > 200 elements, library says {g}"
                    );
                    all_small = false;
                }
            }
        }
        if !all_small {
            continue;
        }
        for (n, elements) in finite_parts {
            let h = c.homology(n);
            assert!(
                census_matches(&elements, &c.diff(n + 1), h.group()),
                "homology mismatch at degree {n} for {}: library says {}, oracle found {} elements",
                c.describe(),
                h.group(),
                elements.len()
            );
            compared_degrees += 1;
        }
        accepted += 1;
    }
    (accepted, compared_degrees)
}

/// Checks that the enumerated coset representatives realize exactly the
/// claimed group, by comparing `#{x : k·x = 0}` for every k against the
/// count `∏ gcd(k, tᵢ)` forced by the invariant factors.  That census
/// determines a finite abelian group uniquely.
pub fn census_matches(
    elements: &[Vec<BigInt>],
    boundary_lattice: &IntMatrix,
    group: &AbGroup,
) -> bool {
    if !group.is_finite() {
        return false;
    }
    let order = group.order().expect("finite group has an order");
    if order != BigInt::from(elements.len()) {
        return false;
    }
    let lattice = column_echelon(boundary_lattice);
    for k in 1..=elements.len() {
        let kk = BigInt::from(k);
        let killed = elements
            .iter()
            .filter(|x| {
                let scaled: Vec<BigInt> = x.iter().map(|a| a * &kk).collect();
                canon_mod(&lattice, &scaled).iter().all(|v| v.is_zero())
            })
            .count();
        let expected: BigInt = group.torsion().iter().map(|t| kk.gcd(t)).product();
        if BigInt::from(killed) != expected {
            return false;
        }
    }
    true
}
