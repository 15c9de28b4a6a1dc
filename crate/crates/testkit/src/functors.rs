//! Resolution-based computations of ⊗, Tor, Hom and Ext that only use
//! matrix algebra on presentations — an independent check of the
//! closed-form gcd arithmetic in `wseq_core::abgroup`.

use num_bigint::BigInt;
use num_traits::Zero;
use wseq_core::abgroup::{AbGroup, AbHom};
use wseq_core::matrix::IntMatrix;

pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(
                        i * b.rows() + k,
                        j * b.cols() + l,
                        a.get(i, j) * b.get(k, l),
                    );
                }
            }
        }
    }
    out
}

/// Direct sum of `n` copies of `b`, plus a permutation mapping each canonical
/// generator back to its copy-major slot `copy * gens(b) + gen`. The sum's
/// canonical order sorts free generators first and torsion ascending, which
/// for identical copies is just a stable re-sort of the concatenated orders.
fn power_perm(b: &AbGroup, n: usize) -> (AbGroup, Vec<usize>) {
    let orders: Vec<BigInt> = (0..n).flat_map(|_| b.orders()).collect();
    let mut idx: Vec<usize> = (0..orders.len()).collect();
    idx.sort_by(|&x, &y| {
        let (a, c) = (&orders[x], &orders[y]);
        match (a.is_zero(), c.is_zero()) {
            (true, true) | (false, false) if a == c => x.cmp(&y),
            (true, _) => core::cmp::Ordering::Less,
            (_, true) => core::cmp::Ordering::Greater,
            _ => a.cmp(c).then(x.cmp(&y)),
        }
    });
    (AbGroup::from_orders(&orders), idx)
}

/// The map `B^cols -> B^rows` acting blockwise by an integer matrix.
pub fn block_hom(m: &IntMatrix, b: &AbGroup) -> AbHom {
    let gb = b.generator_count();
    let (dom, dperm) = power_perm(b, m.cols());
    let (cod, cperm) = power_perm(b, m.rows());
    let mut big = IntMatrix::zero(cod.generator_count(), dom.generator_count());
    for (ci, &cslot) in cperm.iter().enumerate() {
        let (i, k) = (cslot / gb, cslot % gb);
        for (dj, &dslot) in dperm.iter().enumerate() {
            let (j, k2) = (dslot / gb, dslot % gb);
            if k == k2 {
                big.set(ci, dj, m.get(i, j).clone());
            }
        }
    }
    AbHom::new(dom, cod, big).expect("blockwise scalar action is well defined")
}

/// Tensor product computed from presentations:
/// `A (x) B = coker([R_A (x) I  |  I (x) R_B])`.
pub fn tensor_by_resolution(a: &AbGroup, b: &AbGroup) -> AbGroup {
    let ra = a.relation_matrix();
    let rb = b.relation_matrix();
    let ia = IntMatrix::identity(a.generator_count());
    let ib = IntMatrix::identity(b.generator_count());
    let rel = kronecker(&ra, &ib).hstack(&kronecker(&ia, &rb));
    let ambient = a.generator_count() * b.generator_count();
    let f = AbHom::new(AbGroup::free(rel.cols()), AbGroup::free(ambient), rel).unwrap();
    f.cokernel().0
}

/// `Tor(A, B) = ker(R_A . : B^k -> B^m)` for `0 -> Z^k -> Z^m -> A -> 0`.
pub fn tor_by_resolution(a: &AbGroup, b: &AbGroup) -> AbGroup {
    block_hom(&a.relation_matrix(), b).kernel().0
}

/// `Hom(A, B) = ker(R_A^T . : B^m -> B^k)`.
pub fn hom_by_resolution(a: &AbGroup, b: &AbGroup) -> AbGroup {
    block_hom(&a.relation_matrix().transpose(), b).kernel().0
}

/// `Ext(A, B) = coker(R_A^T . : B^m -> B^k)`.
pub fn ext_by_resolution(a: &AbGroup, b: &AbGroup) -> AbGroup {
    block_hom(&a.relation_matrix().transpose(), b).cokernel().0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_values_on_coprime_and_shared_factors() {
        let z2 = AbGroup::cyclic(2);
        let z3 = AbGroup::cyclic(3);
        let z4 = AbGroup::cyclic(4);
        let free = AbGroup::free(1);
        assert!(tensor_by_resolution(&z2, &z3).is_trivial());
        assert_eq!(tensor_by_resolution(&z2, &z4), z2);
        assert!(tor_by_resolution(&free, &z4).is_trivial());
        assert_eq!(tor_by_resolution(&z4, &z2), z2);
        assert!(hom_by_resolution(&z2, &free).is_trivial());
        assert_eq!(hom_by_resolution(&free, &z4), z4);
        assert_eq!(ext_by_resolution(&z4, &free), z4);
        assert!(ext_by_resolution(&free, &z2).is_trivial());
    }
}
