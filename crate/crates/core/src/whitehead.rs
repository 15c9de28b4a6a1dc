//! Whitehead exact-sequence invariants of a free tensor algebra with
//! differential: the Γ groups, the connecting maps b, the obstruction maps φ
//! with their Ext classes, perfectness verdicts, the characteristic-pair
//! split of a differential into a perfect part plus extension data, the
//! inverse realization, and a decision procedure for isomorphism of two
//! computed sequences.
//!
//! Throughout, `H_n(T(V_≤m))` is obtained from [`FreeDGA::truncation_homology`]
//! and `H_n(V, d)` from the linear part; all groups are reported in canonical
//! invariant-factor form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgroup::{self, AbError, AbGroup, AbHom};
use crate::chaincx::ChainError;
use crate::dga::{AlgElement, DgaError, DgaMorphism, FreeDGA, TruncationHomology};
use crate::matrix::{self, IntMatrix};

/* ## errors ## */

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WhError {
    Dga(DgaError),
    Chain(ChainError),
    Group(AbError),
    /// A cycle of the source could not be corrected to a cycle of the
    /// rebuilt differential at the named generator degree.
    Transport { degree: usize },
    /// The two inputs were computed over different degree ranges.
    RangeMismatch,
    /// The operation requires a quasi-perfect input at this degree.
    NotQuasiPerfect { degree: usize },
    /// An extension representative does not match the expected resolution
    /// shape or does not lift through the cokernel projection.
    BadRepresentative { degree: usize },
    /// An internal solve that exactness guarantees has failed; indicates an
    /// inconsistent input or an implementation fault.
    ExactnessFailure { degree: usize },
}

impl fmt::Display for WhError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhError::Dga(e) => write!(f, "{}", e),
            WhError::Chain(e) => write!(f, "{}", e),
            WhError::Group(e) => write!(f, "{}", e),
            WhError::Transport { degree } => {
                write!(f, "could not transport a cycle at degree {}", degree)
            }
            WhError::RangeMismatch => write!(f, "degree ranges do not match"),
            WhError::NotQuasiPerfect { degree } => {
                write!(f, "input is not quasi-perfect at degree {}", degree)
            }
            WhError::BadRepresentative { degree } => {
                write!(f, "malformed extension representative at degree {}", degree)
            }
            WhError::ExactnessFailure { degree } => {
                write!(f, "exactness violated at degree {}", degree)
            }
        }
    }
}

impl From<DgaError> for WhError {
    fn from(e: DgaError) -> Self {
        WhError::Dga(e)
    }
}
impl From<ChainError> for WhError {
    fn from(e: ChainError) -> Self {
        WhError::Chain(e)
    }
}
impl From<AbError> for WhError {
    fn from(e: AbError) -> Self {
        WhError::Group(e)
    }
}

/* ## small helpers ## */

fn unit(len: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[k] = BigInt::from(1);
    v
}

/// Linear combination of degree-homogeneous generators.
fn gens_elem(ids: &[usize], coords: &[BigInt]) -> AlgElement {
    let mut out = AlgElement::zero();
    for (&id, c) in ids.iter().zip(coords) {
        out.add_term(c.clone(), crate::dga::TensorWord(vec![id]));
    }
    out
}

/// Membership of `x` in the subgroup of `g` generated by the columns of
/// `gens` (both in canonical coordinates).
fn in_subgroup(g: &AbGroup, gens: &IntMatrix, x: &[BigInt]) -> bool {
    matrix::solve(&gens.hstack(&g.relation_matrix()), x).is_some()
}

fn same_subgroup(g: &AbGroup, a: &IntMatrix, b: &IntMatrix) -> bool {
    (0..a.cols()).all(|j| in_subgroup(g, b, &a.col(j)))
        && (0..b.cols()).all(|j| in_subgroup(g, a, &b.col(j)))
}

/// Solves `g ∘ boundary ≡ rep` row by row modulo the codomain orders:
/// for each codomain generator `i` the residual row may differ by a
/// multiple of `orders[i]`.  Returns the lift `g` when solvable.
fn solve_factorization(
    boundary: &IntMatrix,
    rep: &IntMatrix,
    orders: &[BigInt],
) -> Option<IntMatrix> {
    let k = boundary.rows();
    let r = boundary.cols();
    let c = rep.rows();
    debug_assert_eq!(rep.cols(), r);
    debug_assert_eq!(orders.len(), c);
    let mut g = IntMatrix::zero(c, k);
    if r == 0 {
        return Some(g);
    }
    let bt = boundary.transpose();
    for i in 0..c {
        let block = if orders[i].is_zero() {
            bt.clone()
        } else {
            let diag = vec![orders[i].clone(); r];
            bt.hstack(&IntMatrix::diagonal(&diag, r, r))
        };
        let target: Vec<BigInt> = (0..r).map(|j| rep.get(i, j).clone()).collect();
        let sol = matrix::solve(&block, &target)?;
        for (jj, val) in sol.iter().take(k).enumerate() {
            g.set(i, jj, val.clone());
        }
    }
    Some(g)
}

/* ## Γ groups ## */

/// The degree-n Γ group: the kernel of the map induced on `H_n(T(V_≤n))`
/// by projecting a cycle onto its length-one part.  Its elements are the
/// classes of decomposable cycles.
#[derive(Clone, Debug)]
pub struct GammaGroup {
    pub degree: usize,
    /// The ambient truncated homology `H_n(T(V_≤n))` it embeds into.
    pub ambient: TruncationHomology,
    /// Canonical invariant-factor form of Γ.
    pub group: AbGroup,
    /// The embedding into the ambient homology.
    pub as_kernel: AbHom,
}

impl GammaGroup {
    /// A cycle representative of a Γ element; always decomposable.
    pub fn rep(&self, d: &FreeDGA, g: &[BigInt]) -> AlgElement {
        self.ambient.lift(d, &self.as_kernel.apply(g))
    }

    /// Γ coordinates of a decomposable cycle, or `None` when its class
    /// does not lie in the kernel.
    pub fn classify(&self, d: &FreeDGA, e: &AlgElement) -> Result<Option<Vec<BigInt>>, WhError> {
        let h = self.ambient.project(d, e)?;
        Ok(self.as_kernel.preimage(&h))
    }
}

/// Computes Γ_n.  The length-one words sort first in the canonical word
/// basis, so the induced projection reads off the leading coordinates of a
/// lifted cycle; boundaries are decomposable, which makes it well defined
/// on classes.
pub fn gamma(d: &FreeDGA, n: usize) -> Result<GammaGroup, WhError> {
    let ambient = d.truncation_homology(n, n)?;
    let h_group = ambient.group().clone();
    let gn = d.gens_of_degree(n).len();
    let gen_cycles = ambient.homology.generator_cycles();
    let mut j = IntMatrix::zero(gn, h_group.generator_count());
    for r in 0..gn {
        for c in 0..h_group.generator_count() {
            j.set(r, c, gen_cycles.get(r, c).clone());
        }
    }
    let j_hom = AbHom::new(h_group, AbGroup::free(gn), j)?;
    let (group, as_kernel) = j_hom.kernel();
    Ok(GammaGroup {
        degree: n,
        ambient,
        group,
        as_kernel,
    })
}

/* ## the maps β, b, φ ## */

/// β_n sends a degree-n generator coordinate vector to the class of its
/// boundary in `H_{n−1}(T(V_≤n−1))`.  Returned together with the ambient
/// homology it lands in.
pub fn beta(d: &FreeDGA, n: usize) -> Result<(AbHom, TruncationHomology), WhError> {
    let m = n.saturating_sub(1);
    let low = d.truncation_homology(m, m)?;
    let ids = d.gens_of_degree(n);
    let mut cols = Vec::new();
    for &id in &ids {
        let val = d.apply_diff(&AlgElement::generator(id));
        cols.push(low.project(d, &val)?);
    }
    let hom = AbHom::new(
        AbGroup::free(ids.len()),
        low.group().clone(),
        IntMatrix::from_cols(low.group().generator_count(), &cols),
    )?;
    Ok((hom, low))
}

/// b_{n+1}: H_{n+1}(V, d) → Γ_n, evaluated on cycle representatives of the
/// homology generators.  Boundaries of cycles are decomposable, so the
/// values land in Γ and do not depend on the representative.
pub fn b_map(d: &FreeDGA, np1: usize) -> Result<AbHom, WhError> {
    let g = gamma(d, np1.saturating_sub(1))?;
    b_map_with(d, np1, &g)
}

/// Same as [`b_map`], reusing a precomputed Γ for the target degree.
pub fn b_map_with(d: &FreeDGA, np1: usize, g: &GammaGroup) -> Result<AbHom, WhError> {
    let lp = d.linear_part();
    let h = lp.homology(np1);
    let hv = h.group().clone();
    let reps = h.generator_cycles();
    let ids = d.gens_of_degree(np1);
    let n = np1.saturating_sub(1);
    let mut cols = Vec::new();
    for jcol in 0..hv.generator_count() {
        let z = gens_elem(&ids, &reps.col(jcol));
        let val = d.apply_diff(&z);
        let gc = g
            .classify(d, &val)?
            .ok_or(WhError::ExactnessFailure { degree: n })?;
        cols.push(gc);
    }
    AbHom::new(
        hv,
        g.group.clone(),
        IntMatrix::from_cols(g.group.generator_count(), &cols),
    )
    .map_err(WhError::from)
}

/// φ_n on the complement summand of `V_{n+1}`: the defect between the
/// boundary of a complement generator and the canonical completion of its
/// linear image to a cycle.  Values are classes of decomposable cycles
/// in Γ_n.  The zero map exactly when the differential is perfect at n
/// under the canonical completion.
pub fn phi(d: &FreeDGA, n: usize) -> Result<AbHom, WhError> {
    let g = gamma(d, n)?;
    phi_with(d, n, &g)
}

/// Same as [`phi`], reusing a precomputed Γ_n.
pub fn phi_with(d: &FreeDGA, n: usize, g: &GammaGroup) -> Result<AbHom, WhError> {
    let lp = d.linear_part();
    let split = lp.splitting(n + 1);
    let c = &split.complement_basis;
    let dmat = lp.diff(n + 1);
    let ids = d.gens_of_degree(n + 1);
    let low_ids = d.gens_of_degree(n);
    let mut cols = Vec::new();
    for jcol in 0..c.cols() {
        let l = gens_elem(&ids, &c.col(jcol));
        let v = gens_elem(&low_ids, &dmat.mul_vec(&c.col(jcol)));
        // complete the linear image to a cycle: x lives below the top
        // generator degree, so subtracting it keeps the class decomposable
        let dv = d.apply_diff(&v);
        let x = if dv.is_zero() {
            AlgElement::zero()
        } else {
            d.boundary_preimage(n - 1, &dv)?
                .ok_or(WhError::ExactnessFailure { degree: n })?
        };
        let y = d.apply_diff(&l).sub(&v).add(&x);
        let gc = g
            .classify(d, &y)?
            .ok_or(WhError::ExactnessFailure { degree: n })?;
        cols.push(gc);
    }
    AbHom::new(
        AbGroup::free(c.cols()),
        g.group.clone(),
        IntMatrix::from_cols(g.group.generator_count(), &cols),
    )
    .map_err(WhError::from)
}

/* ## Ext classes ## */

/// One element of an Ext group, presented through an explicit free
/// resolution: `representative` holds the obstruction values on the
/// relation module, considered modulo homomorphisms factoring through
/// `boundary`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    /// Relation-module inclusion of the resolution (middle-term coords).
    pub boundary: IntMatrix,
    /// Obstruction values on the relation module (codomain coords).
    pub representative: IntMatrix,
    /// The coefficient group (a cokernel of b).
    pub codomain: AbGroup,
    /// Isomorphism type of the ambient Ext group.
    pub ambient: AbGroup,
    /// Whether the lifting equation `g ∘ boundary = representative` has a
    /// solution, i.e. the class vanishes.
    pub trivial: bool,
}

impl ExtClass {
    /// Equality of two classes presented over the same resolution and
    /// coefficients; `None` when the presentations differ.
    pub fn same_class(&self, other: &ExtClass) -> Option<bool> {
        if self.boundary != other.boundary || self.codomain != other.codomain {
            return None;
        }
        let diff = self.representative.add(&other.representative.neg());
        Some(solve_factorization(&self.boundary, &diff, &self.codomain.orders()).is_some())
    }
}

/// The two extension classes attached to degree n: one over the resolution
/// of `H_n(V, d)`, one over the resolution of `ker b_n` through the kernel
/// of β_n.
#[derive(Clone, Debug)]
pub struct ExtClasses {
    pub bracket: ExtClass,
    pub brace: ExtClass,
}

pub fn ext_classes(d: &FreeDGA, n: usize) -> Result<ExtClasses, WhError> {
    let lp = d.linear_part();
    let g = gamma(d, n)?;
    let b_up = b_map_with(d, n + 1, &g)?;
    let (coker, proj) = b_up.cokernel();
    let ph = phi_with(d, n, &g)?;
    let rep = proj.compose(&ph)?;
    let orders = coker.orders();

    let res = lp.resolution_of_h(n);
    let bracket = ExtClass {
        trivial: solve_factorization(&res.boundary, rep.matrix(), &orders).is_some(),
        boundary: res.boundary.clone(),
        representative: rep.matrix().clone(),
        codomain: coker.clone(),
        ambient: abgroup::ext_group(res.homology.group(), &coker),
    };

    // resolution of ker b_n: the complement of ker d_{n+1} maps into the
    // saturated kernel lattice of β_n
    let (beta_hom, _) = beta(d, n)?;
    let kb = beta_hom.kernel().1;
    let kmat = kb.matrix();
    let split = lp.splitting(n + 1);
    let dm = lp.diff(n + 1);
    let mut dcols = Vec::new();
    for j in 0..split.complement_basis.cols() {
        let v = dm.mul_vec(&split.complement_basis.col(j));
        let x = matrix::solve(kmat, &v).ok_or(WhError::ExactnessFailure { degree: n })?;
        dcols.push(x);
    }
    let dbeta = IntMatrix::from_cols(kmat.cols(), &dcols);
    let gm1 = gamma(d, n.saturating_sub(1))?;
    let b_n = b_map_with(d, n, &gm1)?;
    let ker_bn = b_n.kernel().0;
    let brace = ExtClass {
        trivial: solve_factorization(&dbeta, rep.matrix(), &orders).is_some(),
        boundary: dbeta,
        representative: rep.matrix().clone(),
        ambient: abgroup::ext_group(&ker_bn, &coker),
        codomain: coker,
    };
    Ok(ExtClasses { bracket, brace })
}

/* ## verdicts ## */

/// φ_n vanishes identically under the canonical completion.
pub fn is_n_perfect(d: &FreeDGA, n: usize) -> Result<bool, WhError> {
    Ok(phi(d, n)?.is_zero())
}

/// The class of φ̄_n over the resolution of `H_n(V, d)` vanishes.
pub fn is_quasi_n_perfect(d: &FreeDGA, n: usize) -> Result<bool, WhError> {
    Ok(ext_classes(d, n)?.bracket.trivial)
}

pub fn is_perfect(d: &FreeDGA, range: (usize, usize)) -> Result<bool, WhError> {
    for n in range.0..=range.1 {
        if !is_n_perfect(d, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_quasi_perfect(d: &FreeDGA, range: (usize, usize)) -> Result<bool, WhError> {
    for n in range.0..=range.1 {
        if !is_quasi_n_perfect(d, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For quasi-perfect degrees the homology of the whole algebra splits:
/// compares `H_n(T(V_≤n+1))` with `Coker b_{n+1} ⊕ ker b_n` as canonical
/// groups.  Errors when the input is not quasi-perfect at n.
pub fn homology_splitting_check(d: &FreeDGA, n: usize) -> Result<bool, WhError> {
    if !is_quasi_n_perfect(d, n)? {
        return Err(WhError::NotQuasiPerfect { degree: n });
    }
    let hn_t = d.truncation_homology(n + 1, n)?;
    let g = gamma(d, n)?;
    let b_up = b_map_with(d, n + 1, &g)?;
    let coker = b_up.cokernel().0;
    let gm1 = gamma(d, n.saturating_sub(1))?;
    let b_n = b_map_with(d, n, &gm1)?;
    let kerb = b_n.kernel().0;
    Ok(*hn_t.group() == coker.direct_sum(&kerb))
}

/* ## the assembled sequence ## */

/// Everything computed at one degree of the sequence
/// `… → H_{n+1}(V) → Γ_n → H_n(T(V)) → H_n(V) → …`.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub degree: usize,
    /// `H_n(V, d)`.
    pub hn_v: AbGroup,
    pub gamma: GammaGroup,
    /// `b_{n+1}: H_{n+1}(V, d) → Γ_n`.
    pub b: AbHom,
    /// φ_n on the complement of `ker d_{n+1}`.
    pub phi: AbHom,
    pub ext_bracket: ExtClass,
    pub ext_brace: ExtClass,
    /// `H_n(T(V))`, stable from the degree-(n+1) truncation on.
    pub hn_t: AbGroup,
    /// Γ_n → H_n(T(V)).
    pub i: AbHom,
    /// H_n(T(V)) → H_n(V, d), induced by the length-one projection.
    pub p: AbHom,
    pub n_perfect: bool,
    pub quasi_n_perfect: bool,
}

#[derive(Clone, Debug)]
pub struct WhiteheadData {
    pub range: (usize, usize),
    pub degrees: BTreeMap<usize, DegreeData>,
}

/// Assembles the sequence over `range` and verifies exactness at every
/// junction inside the range; an exactness failure is reported as a hard
/// error, never as data.
pub fn whitehead_sequence(d: &FreeDGA, range: (usize, usize)) -> Result<WhiteheadData, WhError> {
    d.validate()?;
    let (lo, hi) = range;
    if lo == 0 || lo > hi {
        return Err(WhError::RangeMismatch);
    }
    let lp = d.linear_part();
    let mut b_prev = b_map(d, lo)?;
    let mut degrees = BTreeMap::new();
    for n in lo..=hi {
        let g = gamma(d, n)?;
        let b = b_map_with(d, n + 1, &g)?;
        let ph = phi_with(d, n, &g)?;
        let cls = ext_classes(d, n)?;
        let hn_v = lp.homology(n);
        let trunc_t = d.truncation_homology(n + 1, n)?;
        let hn_t = trunc_t.group().clone();

        // i: transfer Γ representatives into the larger truncation (the
        // degree-n word basis is unchanged, only boundaries grow)
        let mut icols = Vec::new();
        for k in 0..g.group.generator_count() {
            let rep_elem = g.rep(d, &unit(g.group.generator_count(), k));
            icols.push(trunc_t.project(d, &rep_elem)?);
        }
        let i = AbHom::new(
            g.group.clone(),
            hn_t.clone(),
            IntMatrix::from_cols(hn_t.generator_count(), &icols),
        )?;

        // p: length-one part of a representative, read in H_n(V, d)
        let low_ids = d.gens_of_degree(n);
        let mut pcols = Vec::new();
        for k in 0..hn_t.generator_count() {
            let z = trunc_t.lift(d, &unit(hn_t.generator_count(), k));
            let mut lin = vec![BigInt::zero(); low_ids.len()];
            for (w, c) in z.terms() {
                if w.len() == 1 {
                    let pos = low_ids
                        .iter()
                        .position(|&id| id == w.0[0])
                        .expect("length-one word of a degree-n element");
                    lin[pos] = c.clone();
                }
            }
            pcols.push(hn_v.project_cycle(&lin)?);
        }
        let p = AbHom::new(
            hn_t.clone(),
            hn_v.group().clone(),
            IntMatrix::from_cols(hn_v.group().generator_count(), &pcols),
        )?;

        // exactness at the three junctions touching degree n
        let ker_i = i.kernel().1;
        if !same_subgroup(&g.group, b.matrix(), ker_i.matrix()) {
            return Err(WhError::ExactnessFailure { degree: n });
        }
        let ker_p = p.kernel().1;
        if !same_subgroup(&hn_t, i.matrix(), ker_p.matrix()) {
            return Err(WhError::ExactnessFailure { degree: n });
        }
        let ker_b = b_prev.kernel().1;
        if !same_subgroup(hn_v.group(), p.matrix(), ker_b.matrix()) {
            return Err(WhError::ExactnessFailure { degree: n });
        }

        degrees.insert(
            n,
            DegreeData {
                degree: n,
                hn_v: hn_v.group().clone(),
                gamma: g,
                b: b.clone(),
                phi: ph.clone(),
                n_perfect: ph.is_zero(),
                quasi_n_perfect: cls.bracket.trivial,
                ext_bracket: cls.bracket,
                ext_brace: cls.brace,
                hn_t,
                i,
                p,
            },
        );
        b_prev = b;
    }
    Ok(WhiteheadData { range, degrees })
}

/* ## characteristic pairs ## */

/// A differential split into a perfect rebuild plus the extension data
/// needed to recover the original up to quasi-isomorphism type.
#[derive(Clone, Debug)]
pub struct CharacteristicPair {
    /// Same generators and linear part, rebuilt with all φ_n = 0.
    pub perfect_dga: FreeDGA,
    /// Degree n → the bracket class of the original differential.
    pub pi: BTreeMap<usize, ExtClass>,
}

/// Splits `d` into a perfect differential with the same linear part plus
/// its family of extension classes.  The rebuild proceeds degree by
/// degree: complement generators receive the canonical cycle completion
/// of their linear image, kernel generators keep their original boundary
/// after transporting it to a cycle of the rebuilt differential.
pub fn characteristic_pair(d: &FreeDGA) -> Result<CharacteristicPair, WhError> {
    d.validate()?;
    let lp = d.linear_part();
    let max = d.max_degree();
    let mut tilde = FreeDGA::new();
    for g in d.generators() {
        tilde
            .add_generator(&g.name, g.degree)
            .expect("generator list is already consistent");
    }
    tilde.set_word_cap(d.word_cap());
    for t in 2..=max {
        let ids = d.gens_of_degree(t);
        if ids.is_empty() {
            continue;
        }
        let split = lp.splitting(t);
        let c = &split.complement_basis;
        let k = &split.kernel_basis;
        let low = d.gens_of_degree(t - 1);
        let mut vals: Vec<AlgElement> = Vec::new();
        for j in 0..c.cols() {
            let dl_elem = gens_elem(&low, &lp.diff(t).mul_vec(&c.col(j)));
            let defect = tilde.apply_diff(&dl_elem);
            let a = if defect.is_zero() {
                AlgElement::zero()
            } else {
                tilde
                    .boundary_preimage(t - 2, &defect)?
                    .ok_or(WhError::Transport { degree: t })?
            };
            vals.push(dl_elem.sub(&a));
        }
        for j in 0..k.cols() {
            let z_elem = gens_elem(&ids, &k.col(j));
            let tval = d.apply_diff(&z_elem);
            let defect = tilde.apply_diff(&tval);
            let v = if defect.is_zero() {
                tval
            } else {
                let corr = tilde
                    .boundary_preimage(t - 2, &defect)?
                    .ok_or(WhError::Transport { degree: t })?;
                let cand = tval.sub(&corr);
                if !tilde.apply_diff(&cand).is_zero() {
                    return Err(WhError::Transport { degree: t });
                }
                cand
            };
            vals.push(v);
        }
        // express each original generator over the complement+kernel basis
        let u = c.hstack(k);
        for (pos, &id) in ids.iter().enumerate() {
            let y =
                matrix::solve(&u, &unit(ids.len(), pos)).ok_or(WhError::Transport { degree: t })?;
            let mut val = AlgElement::zero();
            for (jj, coeff) in y.iter().enumerate() {
                if !coeff.is_zero() {
                    val = val.add(&vals[jj].scale(coeff));
                }
            }
            let name = d.generator(id).name.clone();
            tilde.set_diff(&name, val)?;
        }
    }
    tilde.validate()?;
    let mut pi = BTreeMap::new();
    for n in 2..max {
        pi.insert(n, ext_classes(d, n)?.bracket);
    }
    Ok(CharacteristicPair {
        perfect_dga: tilde,
        pi,
    })
}

/// Rebuilds a differential from a perfect one plus extension
/// representatives: each complement generator gains a decomposable cycle
/// realizing its representative value, lifted through Γ and transported
/// across earlier modifications.
pub fn realize_from_pair(pair: &CharacteristicPair) -> Result<FreeDGA, WhError> {
    let base = &pair.perfect_dga;
    base.validate()?;
    let lp = base.linear_part();
    let mut out = base.clone();
    for (&n, cls) in &pair.pi {
        let t = n + 1;
        let split = lp.splitting(t);
        let c = &split.complement_basis;
        if cls.representative.cols() != c.cols() {
            return Err(WhError::BadRepresentative { degree: n });
        }
        if c.cols() == 0 || cls.representative.is_zero() {
            continue;
        }
        let g = gamma(base, n)?;
        let b = b_map_with(base, t, &g)?;
        let (coker, proj) = b.cokernel();
        if coker != cls.codomain {
            return Err(WhError::BadRepresentative { degree: n });
        }
        let mut hvals = Vec::new();
        let mut any = false;
        for j in 0..c.cols() {
            let target = coker.reduce(&cls.representative.col(j));
            if target.iter().all(Zero::is_zero) {
                hvals.push(AlgElement::zero());
                continue;
            }
            any = true;
            let gc = proj
                .preimage(&target)
                .ok_or(WhError::BadRepresentative { degree: n })?;
            let mut h = g.rep(base, &gc);
            let dh = out.apply_diff(&h);
            if !dh.is_zero() {
                let corr = out
                    .boundary_preimage(n - 1, &dh)?
                    .ok_or(WhError::Transport { degree: t })?;
                h = h.sub(&corr);
                if !out.apply_diff(&h).is_zero() {
                    return Err(WhError::Transport { degree: t });
                }
            }
            hvals.push(h);
        }
        if !any {
            continue;
        }
        let ids = base.gens_of_degree(t);
        let u = c.hstack(&split.kernel_basis);
        for (pos, &id) in ids.iter().enumerate() {
            let y =
                matrix::solve(&u, &unit(ids.len(), pos)).ok_or(WhError::Transport { degree: t })?;
            let mut val = out.diff_of(id).clone();
            for (j, hval) in hvals.iter().enumerate() {
                if !y[j].is_zero() {
                    val = val.add(&hval.scale(&y[j]));
                }
            }
            // re-close against lower-degree changes from earlier stages
            let defect = out.apply_diff(&val);
            if !defect.is_zero() {
                let corr = out
                    .boundary_preimage(t - 2, &defect)?
                    .ok_or(WhError::Transport { degree: t })?;
                val = val.sub(&corr);
                if !out.apply_diff(&val).is_zero() {
                    return Err(WhError::Transport { degree: t });
                }
            }
            let name = base.generator(id).name.clone();
            out.set_diff(&name, val)?;
        }
    }
    out.validate()?;
    Ok(out)
}

/* ## sequence comparison ## */

#[derive(Clone, Debug)]
pub struct SequenceWitness {
    /// Isomorphisms on `H_n(V, d)`, including the degree above the range.
    pub f: BTreeMap<usize, AbHom>,
    /// Isomorphisms on Γ_n.
    pub gamma: BTreeMap<usize, AbHom>,
    /// Isomorphisms on `H_n(T(V))`.
    pub h: BTreeMap<usize, AbHom>,
}

#[derive(Clone, Debug)]
pub enum SequenceComparison {
    Yes(SequenceWitness),
    No,
    Unknown,
}

/// Decides whether two computed sequences are isomorphic by finite search
/// over graded isomorphisms making every ladder square commute.
/// `Unknown` when some group in range has free rank two or more (the
/// isomorphism sets are then not finitely enumerable by this code).
pub fn sequences_isomorphic(
    a: &WhiteheadData,
    b: &WhiteheadData,
) -> Result<SequenceComparison, WhError> {
    if a.range != b.range {
        return Err(WhError::RangeMismatch);
    }
    let (lo, hi) = a.range;
    let degs: Vec<usize> = (lo..=hi).collect();

    let pool = |x: Result<Vec<AbHom>, AbError>| -> Result<Option<Vec<AbHom>>, WhError> {
        match x {
            Ok(l) => Ok(Some(l)),
            Err(AbError::FreeRankTooLarge) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };

    // candidate isomorphisms per degree; f has one extra slot at hi+1
    let mut f_lists: Vec<Vec<AbHom>> = Vec::new();
    for &n in &degs {
        match pool(abgroup::isomorphisms(
            &a.degrees[&n].hn_v,
            &b.degrees[&n].hn_v,
        ))? {
            None => return Ok(SequenceComparison::Unknown),
            Some(l) if l.is_empty() => return Ok(SequenceComparison::No),
            Some(l) => f_lists.push(l),
        }
    }
    match pool(abgroup::isomorphisms(
        a.degrees[&hi].b.domain(),
        b.degrees[&hi].b.domain(),
    ))? {
        None => return Ok(SequenceComparison::Unknown),
        Some(l) if l.is_empty() => return Ok(SequenceComparison::No),
        Some(l) => f_lists.push(l),
    }
    let mut gamma_lists: Vec<Vec<AbHom>> = Vec::new();
    let mut h_lists: Vec<Vec<AbHom>> = Vec::new();
    for &n in &degs {
        match pool(abgroup::isomorphisms(
            &a.degrees[&n].gamma.group,
            &b.degrees[&n].gamma.group,
        ))? {
            None => return Ok(SequenceComparison::Unknown),
            Some(l) if l.is_empty() => return Ok(SequenceComparison::No),
            Some(l) => gamma_lists.push(l),
        }
        match pool(abgroup::isomorphisms(
            &a.degrees[&n].hn_t,
            &b.degrees[&n].hn_t,
        ))? {
            None => return Ok(SequenceComparison::Unknown),
            Some(l) if l.is_empty() => return Ok(SequenceComparison::No),
            Some(l) => h_lists.push(l),
        }
    }

    // odometer over the f assignment; γ and h are then degreewise local
    let slots = f_lists.len();
    let mut idx = vec![0usize; slots];
    'outer: loop {
        let f_pick: Vec<&AbHom> = idx.iter().zip(&f_lists).map(|(&i, l)| &l[i]).collect();
        let mut gammas = BTreeMap::new();
        let mut hs = BTreeMap::new();
        let mut ok = true;
        for (pos, &n) in degs.iter().enumerate() {
            let da = &a.degrees[&n];
            let db = &b.degrees[&n];
            let f_up = f_pick[pos + 1];
            let f_n = f_pick[pos];
            let want_b = db.b.compose(f_up)?;
            let mut found = None;
            for gam in &gamma_lists[pos] {
                if gam.compose(&da.b)? != want_b {
                    continue;
                }
                let want_i = db.i.compose(gam)?;
                let want_p = f_n.compose(&da.p)?;
                for h in &h_lists[pos] {
                    if h.compose(&da.i)? == want_i && db.p.compose(h)? == want_p {
                        found = Some((gam.clone(), h.clone()));
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            match found {
                Some((gam, h)) => {
                    gammas.insert(n, gam);
                    hs.insert(n, h);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let mut f = BTreeMap::new();
            for (pos, &n) in degs.iter().enumerate() {
                f.insert(n, f_pick[pos].clone());
            }
            f.insert(hi + 1, f_pick[slots - 1].clone());
            return Ok(SequenceComparison::Yes(SequenceWitness {
                f,
                gamma: gammas,
                h: hs,
            }));
        }
        // advance the odometer
        for pos in 0..slots {
            idx[pos] += 1;
            if idx[pos] < f_lists[pos].len() {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        return Ok(SequenceComparison::No);
    }
}

/* ## morphisms of pairs ## */

/// Whether a chain-algebra morphism between two perfect differentials is
/// compatible with the given extension families: degreewise, the defect
/// between pushing the source class forward and pulling the target class
/// back must factor through the source resolution boundary.
pub fn check_morphism_condition(
    alpha: &DgaMorphism,
    pi_a: &BTreeMap<usize, ExtClass>,
    pi_b: &BTreeMap<usize, ExtClass>,
) -> Result<bool, WhError> {
    if pi_a.len() != pi_b.len() || pi_a.keys().zip(pi_b.keys()).any(|(x, y)| x != y) {
        return Err(WhError::RangeMismatch);
    }
    alpha.validate()?;
    let src = &alpha.source;
    let tgt = &alpha.target;
    let lpa = src.linear_part();
    let lpb = tgt.linear_part();
    let amap = alpha.linear_part();
    for (&n, ca) in pi_a {
        let cb = &pi_b[&n];
        let t = n + 1;
        let sa = lpa.splitting(t);
        let sb = lpb.splitting(t);
        let ra = sa.complement_basis.cols();
        let rb = sb.complement_basis.cols();
        if ca.representative.cols() != ra || cb.representative.cols() != rb {
            return Err(WhError::BadRepresentative { degree: n });
        }
        if ra == 0 {
            continue;
        }
        // complement component of the linear image of each source
        // complement generator
        let ga_count = src.gens_of_degree(t).len();
        let gb_count = tgt.gens_of_degree(t).len();
        let am = amap
            .get(&t)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(gb_count, ga_count));
        let ub = sb.complement_basis.hstack(&sb.kernel_basis);
        let mut xi_cols = Vec::new();
        for j in 0..ra {
            let img = am.mul_vec(&sa.complement_basis.col(j));
            let y = matrix::solve(&ub, &img).ok_or(WhError::ExactnessFailure { degree: n })?;
            xi_cols.push(y[..rb].to_vec());
        }
        let xi = IntMatrix::from_cols(rb, &xi_cols);
        // induced map on Γ, then on the cokernels of b
        let ga = gamma(src, n)?;
        let gb = gamma(tgt, n)?;
        let b_a = b_map_with(src, t, &ga)?;
        let b_b = b_map_with(tgt, t, &gb)?;
        let (cka, proja) = b_a.cokernel();
        let (ckb, projb) = b_b.cokernel();
        if cka != ca.codomain || ckb != cb.codomain {
            return Err(WhError::BadRepresentative { degree: n });
        }
        let mut gcols = Vec::new();
        for k in 0..ga.group.generator_count() {
            let rep = ga.rep(src, &unit(ga.group.generator_count(), k));
            let img = alpha.apply(&rep);
            let coords = gb
                .classify(tgt, &img)?
                .ok_or(WhError::ExactnessFailure { degree: n })?;
            gcols.push(coords);
        }
        let gam = AbHom::new(
            ga.group.clone(),
            gb.group.clone(),
            IntMatrix::from_cols(gb.group.generator_count(), &gcols),
        )?;
        let mut gbar_cols = Vec::new();
        for k in 0..cka.generator_count() {
            let lift = proja
                .preimage(&unit(cka.generator_count(), k))
                .ok_or(WhError::ExactnessFailure { degree: n })?;
            gbar_cols.push(projb.apply(&gam.apply(&lift)));
        }
        let gbar = AbHom::new(
            cka.clone(),
            ckb.clone(),
            IntMatrix::from_cols(ckb.generator_count(), &gbar_cols),
        )?;
        // defect between pushforward and pullback, tested against the
        // source resolution
        let psi = gbar
            .matrix()
            .mul(&ca.representative)
            .add(&cb.representative.mul(&xi).neg());
        if solve_factorization(&ca.boundary, &psi, &ckb.orders()).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
