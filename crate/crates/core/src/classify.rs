//! Adapted systems over a graded abelian group: minimal free realizations,
//! stagewise construction of perfect differentials from homomorphism
//! families, interchangeable Γ providers (realized, closed-form, table),
//! and enumeration/counting of the resulting families.
//!
//! A *system* over `H` is a family of maps `b_m : H_m → Γ_{m−1}` chosen
//! stage by stage for `m = 3, 4, …`; each choice extends the differential
//! of a free tensor algebra one generator degree further while keeping
//! every finished stage perfect one degree below the frontier.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abgroup::{self, AbError, AbGroup, AbHom, PresentedGroup};
use crate::chaincx::{ChainError, FreeChainComplex};
use crate::dga::{AlgElement, DgaError, FreeDGA, TensorWord};
use crate::matrix::{self, IntMatrix};
use crate::whitehead::{self, GammaGroup, WhError};

/* ## errors ## */

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClError {
    Dga(DgaError),
    Chain(ChainError),
    Group(AbError),
    Wh(WhError),
    /// Graded groups live in degrees ≥ 1; Γ queries need degree ≥ 2.
    BadDegree { degree: usize },
    /// The realized differential has not been built far enough for this
    /// query.
    NotBuilt { degree: usize },
    /// A homomorphism or state component does not have the expected
    /// domain/codomain at this degree.
    BadHom { degree: usize },
    /// The closed forms cover degrees 2..=9 only.
    OutOfRange { degree: usize },
    /// The requested computation is outside the implemented scope.
    Unsupported(&'static str),
    /// Some `Hom(H_m, Γ_{m−1})` is infinite; enumeration cannot finish.
    InfiniteFamily { degree: usize },
    MalformedTable(String),
    /// The induced map on a quotient Γ term is not well defined for this
    /// pair of systems.
    UndefinedAction { degree: usize },
}

impl fmt::Display for ClError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClError::Dga(e) => write!(f, "{}", e),
            ClError::Chain(e) => write!(f, "{}", e),
            ClError::Group(e) => write!(f, "{}", e),
            ClError::Wh(e) => write!(f, "{}", e),
            ClError::BadDegree { degree } => write!(f, "degree {} is out of bounds", degree),
            ClError::NotBuilt { degree } => {
                write!(f, "realization is not built through degree {}", degree)
            }
            ClError::BadHom { degree } => {
                write!(f, "mismatched homomorphism data at degree {}", degree)
            }
            ClError::OutOfRange { degree } => {
                write!(f, "no closed form at degree {}", degree)
            }
            ClError::Unsupported(what) => write!(f, "{}", what),
            ClError::InfiniteFamily { degree } => {
                write!(f, "infinitely many choices at degree {}", degree)
            }
            ClError::MalformedTable(what) => write!(f, "malformed table: {}", what),
            ClError::UndefinedAction { degree } => {
                write!(f, "induced action is undefined at degree {}", degree)
            }
        }
    }
}

impl From<DgaError> for ClError {
    fn from(e: DgaError) -> Self {
        ClError::Dga(e)
    }
}
impl From<ChainError> for ClError {
    fn from(e: ChainError) -> Self {
        ClError::Chain(e)
    }
}
impl From<AbError> for ClError {
    fn from(e: AbError) -> Self {
        ClError::Group(e)
    }
}
impl From<WhError> for ClError {
    fn from(e: WhError) -> Self {
        ClError::Wh(e)
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
        out.add_term(c.clone(), TensorWord(vec![id]));
    }
    out
}

/// `a / b` when the division is exact.
fn exact_div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    if b.is_zero() {
        return if a.is_zero() { Some(BigInt::zero()) } else { None };
    }
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

/* ## graded groups ## */

/// A graded abelian group in degrees ≥ 1, finitely many nonzero, each in
/// canonical invariant-factor form.  Trivial entries are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedGroup {
    groups: BTreeMap<usize, AbGroup>,
}

impl GradedGroup {
    pub fn new() -> Self {
        GradedGroup { groups: BTreeMap::new() }
    }

    pub fn from_entries(entries: &[(usize, AbGroup)]) -> Result<Self, ClError> {
        let mut out = GradedGroup::new();
        for (degree, g) in entries {
            out.set(*degree, g.clone())?;
        }
        Ok(out)
    }

    pub fn set(&mut self, degree: usize, g: AbGroup) -> Result<(), ClError> {
        if degree == 0 {
            return Err(ClError::BadDegree { degree });
        }
        if g.is_trivial() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, g);
        }
        Ok(())
    }

    /// The group in one degree; trivial when absent.
    pub fn get(&self, degree: usize) -> AbGroup {
        self.groups.get(&degree).cloned().unwrap_or_else(AbGroup::trivial)
    }

    /// Degrees carrying a nontrivial group, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        self.groups.keys().copied().collect()
    }

    pub fn max_degree(&self) -> usize {
        self.groups.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_all_finite(&self) -> bool {
        self.groups.values().all(AbGroup::is_finite)
    }

    /// Whether every degreewise automorphism group is finite (free rank
    /// at most one per degree).
    pub fn has_finite_automorphisms(&self) -> bool {
        self.groups.values().all(|g| g.free_rank() <= 1)
    }
}

/* ## minimal realization ## */

/// The minimal free chain complex with the given homology: one generator
/// per ℤ summand and a `×q` pair per ℤ_q summand.  Within a degree the
/// order is: free generators, torsion generators, then the relation
/// generators of the torsion one degree below.
pub fn minimal_complex(h: &GradedGroup) -> FreeChainComplex {
    let top = h.max_degree() + 1;
    let mut ranks = BTreeMap::new();
    for m in 1..=top {
        let own = h.get(m).generator_count();
        let rel = if m >= 2 { h.get(m - 1).torsion().len() } else { 0 };
        if own + rel > 0 {
            ranks.insert(m, own + rel);
        }
    }
    let mut diffs = BTreeMap::new();
    for m in 2..=top {
        let rows = ranks.get(&(m - 1)).copied().unwrap_or(0);
        let cols = ranks.get(&m).copied().unwrap_or(0);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut d = IntMatrix::zero(rows, cols);
        let below = h.get(m - 1);
        let off_col = h.get(m).generator_count();
        let off_row = below.free_rank();
        for (i, q) in below.torsion().iter().enumerate() {
            d.set(off_row + i, off_col + i, q.clone());
        }
        diffs.insert(m, d);
    }
    FreeChainComplex::new(ranks, diffs).expect("minimal shapes are consistent by construction")
}

/* ## adapted systems ## */

/// A partially or fully chosen system over `H`: the `b` maps picked so
/// far (keyed by their source degree), the Γ groups they mapped into, and
/// a free tensor algebra whose differential realizes the finished stages.
#[derive(Clone, Debug)]
pub struct AdaptedSystem {
    pub h: GradedGroup,
    /// `m → b_m : H_m → Γ_{m−1}`.
    pub b: BTreeMap<usize, AbHom>,
    /// Differential built through degree [`built_through`](Self::built_through);
    /// generators above it still carry the minimal differential.
    pub realized: FreeDGA,
    /// `n → Γ_n` as used when stage `n+1` was chosen.
    pub gamma_log: BTreeMap<usize, AbGroup>,
}

impl AdaptedSystem {
    /// The next source degree to choose a `b` map for.
    pub fn next_stage(&self) -> usize {
        self.b.keys().next_back().map_or(3, |&m| m + 1)
    }

    /// Highest generator degree whose differential is final.
    pub fn built_through(&self) -> usize {
        self.next_stage() - 1
    }
}

/// The empty system: the minimal differential (relation generators map to
/// `q` times their torsion generator), no stages chosen.  Generator names
/// are `x<n>_<i>` (free), `t<n>_<i>` (torsion) and `r<n>_<i>` (the
/// degree-(n+1) relation generator of `t<n>_<i>`).
pub fn initial_system(h: &GradedGroup) -> Result<AdaptedSystem, ClError> {
    initial_system_with_cap(h, None)
}

/// [`initial_system`] with an explicit word-basis cap on the realized
/// algebra (`None` keeps the default).
pub fn initial_system_with_cap(
    h: &GradedGroup,
    cap: Option<usize>,
) -> Result<AdaptedSystem, ClError> {
    let top = h.max_degree() + 1;
    let mut dga = FreeDGA::new();
    if let Some(c) = cap {
        dga.set_word_cap(c);
    }
    for m in 1..=top {
        let own = h.get(m);
        for i in 0..own.free_rank() {
            dga.add_generator(&format!("x{}_{}", m, i), m)?;
        }
        for i in 0..own.torsion().len() {
            dga.add_generator(&format!("t{}_{}", m, i), m)?;
        }
        if m >= 2 {
            for i in 0..h.get(m - 1).torsion().len() {
                dga.add_generator(&format!("r{}_{}", m - 1, i), m)?;
            }
        }
    }
    for n in 1..=h.max_degree() {
        for (i, q) in h.get(n).torsion().iter().enumerate() {
            let target = dga
                .gen_id(&format!("t{}_{}", n, i))
                .expect("torsion generator was just declared");
            dga.set_diff(&format!("r{}_{}", n, i), AlgElement::term(q.clone(), vec![target]))?;
        }
    }
    dga.validate()?;
    Ok(AdaptedSystem {
        h: h.clone(),
        b: BTreeMap::new(),
        realized: dga,
        gamma_log: BTreeMap::new(),
    })
}

/// Γ of the realized truncation, with the presentation needed to lift
/// elements to cycle representatives.  Exact (kernel of the linear-part
/// projection) once the differential is built through degree `n`; one
/// stage earlier it falls back to the homology of the lower truncation,
/// which computes the same group when nothing lives in degree one.
pub fn gamma_via_realization(state: &AdaptedSystem, n: usize) -> Result<GammaGroup, ClError> {
    if n < 2 {
        return Err(ClError::BadDegree { degree: n });
    }
    let built = state.built_through();
    if built >= n {
        return whitehead::gamma(&state.realized, n).map_err(ClError::from);
    }
    if built + 1 == n && state.h.get(1).is_trivial() {
        let ambient = state.realized.truncation_homology(n - 1, n)?;
        let group = ambient.group().clone();
        let as_kernel = AbHom::identity(&group);
        return Ok(GammaGroup { degree: n, ambient, group, as_kernel });
    }
    Err(ClError::NotBuilt { degree: n })
}

fn realize_step_with(
    state: &AdaptedSystem,
    b_next: &AbHom,
    g: &GammaGroup,
) -> Result<AdaptedSystem, ClError> {
    let m = state.next_stage();
    let n = m - 1;
    let hm = state.h.get(m);
    if b_next.domain() != &hm || b_next.codomain() != &g.group {
        return Err(ClError::BadHom { degree: m });
    }
    let mut out = state.clone();
    let ids = state.realized.gens_of_degree(m);
    if !ids.is_empty() {
        let lp = state.realized.linear_part();
        let hn = lp.homology(m);
        if hn.group() != &hm {
            return Err(ClError::BadHom { degree: m });
        }
        let split = lp.splitting(m);
        let c = &split.complement_basis;
        let k = &split.kernel_basis;
        let low = state.realized.gens_of_degree(n);
        let mut vals: Vec<AlgElement> = Vec::new();
        for j in 0..c.cols() {
            let dl_elem = gens_elem(&low, &lp.diff(m).mul_vec(&c.col(j)));
            let defect = out.realized.apply_diff(&dl_elem);
            let a = if defect.is_zero() {
                AlgElement::zero()
            } else {
                out.realized
                    .boundary_preimage(m - 2, &defect)?
                    .ok_or(ClError::Wh(WhError::Transport { degree: m }))?
            };
            vals.push(dl_elem.sub(&a));
        }
        for j in 0..k.cols() {
            let class = hn
                .project_cycle(&k.col(j))
                .map_err(|_| ClError::BadHom { degree: m })?;
            let target = b_next.apply(&class);
            if target.iter().all(Zero::is_zero) {
                vals.push(AlgElement::zero());
            } else {
                vals.push(g.rep(&state.realized, &target));
            }
        }
        let u = c.hstack(k);
        for (pos, &id) in ids.iter().enumerate() {
            let y = matrix::solve(&u, &unit(ids.len(), pos))
                .ok_or(ClError::Wh(WhError::Transport { degree: m }))?;
            let mut val = AlgElement::zero();
            for (jj, coeff) in y.iter().enumerate() {
                if !coeff.is_zero() {
                    val = val.add(&vals[jj].scale(coeff));
                }
            }
            let name = state.realized.generator(id).name.clone();
            out.realized.set_diff(&name, val)?;
        }
        // The cycles just written under the degree-m torsion generators
        // make the relation generators one degree up inconsistent: their
        // minimal value q·t now has boundary q·∂t.  That class is q times
        // a torsion value of `b_next`, hence a boundary in the truncation,
        // so patch each one here; its own stage rebuilds it from scratch.
        for &id in &state.realized.gens_of_degree(m + 1) {
            let dl = out.realized.diff_of(id).clone();
            let defect = out.realized.apply_diff(&dl);
            if defect.is_zero() {
                continue;
            }
            let w = out
                .realized
                .boundary_preimage(m - 1, &defect)?
                .ok_or(ClError::Wh(WhError::Transport { degree: m + 1 }))?;
            let name = state.realized.generator(id).name.clone();
            out.realized.set_diff(&name, dl.sub(&w))?;
        }
        out.realized.validate()?;
    }
    out.gamma_log.insert(n, g.group.clone());
    out.b.insert(m, b_next.clone());
    Ok(out)
}

/// Applies the next stage: kernel-basis generators of the new degree get
/// a decomposable cycle realizing their `b_next` value, complement
/// generators keep their linear image corrected by the canonical
/// preimage of its boundary defect.  The truncation stays perfect below
/// the new frontier, and the linear part is untouched.
pub fn realize_step(state: &AdaptedSystem, b_next: &AbHom) -> Result<AdaptedSystem, ClError> {
    let n = state.next_stage() - 1;
    let g = gamma_via_realization(state, n)?;
    realize_step_with(state, b_next, &g)
}

/* ## closed-form Γ ## */

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CfTerm {
    /// `H_a ⊗ H_b`.
    Tensor(usize, usize),
    /// `Tor(H_a, H_b)`.
    Tor(usize, usize),
    /// `(H₃⊗H₃⊗H₃) / (Im b₇⊗H₃ + H₃⊗Im b₇)`.
    Cube,
}

/// The quoted formulas, verbatim (including the symmetric reading of the
/// twice-listed degree-(3,6) tensor term and the Tor(H₄,H₄) summand that
/// the source's own arithmetic drops).
fn closed_form_terms(n: usize) -> Vec<CfTerm> {
    match n {
        6 => vec![CfTerm::Tensor(3, 3)],
        7 => vec![CfTerm::Tensor(3, 4), CfTerm::Tensor(4, 3), CfTerm::Tor(3, 3)],
        8 => vec![
            CfTerm::Tensor(3, 5),
            CfTerm::Tensor(4, 4),
            CfTerm::Tensor(5, 3),
            CfTerm::Tor(3, 4),
            CfTerm::Tor(4, 3),
        ],
        9 => vec![
            CfTerm::Tensor(3, 6),
            CfTerm::Tensor(4, 5),
            CfTerm::Tensor(5, 4),
            CfTerm::Tensor(6, 3),
            CfTerm::Tor(3, 5),
            CfTerm::Tor(4, 4),
            CfTerm::Tor(5, 3),
            CfTerm::Cube,
        ],
        _ => Vec::new(),
    }
}

/// Pairwise generator slots of `a ⊗ b`: full index pairs with the gcd of
/// the generator orders (0 = free).
fn tensor_slots(a: &AbGroup, b: &AbGroup) -> Vec<((usize, usize), BigInt)> {
    let ao = a.orders();
    let bo = b.orders();
    let mut out = Vec::new();
    for (i, oi) in ao.iter().enumerate() {
        for (j, oj) in bo.iter().enumerate() {
            out.push(((i, j), oi.gcd(oj)));
        }
    }
    out
}

/// Torsion-pair slots of `Tor(a, b)`; indices are full generator indices.
fn tor_slots(a: &AbGroup, b: &AbGroup) -> Vec<((usize, usize), BigInt)> {
    let ao = a.orders();
    let bo = b.orders();
    let mut out = Vec::new();
    for i in a.free_rank()..ao.len() {
        for j in b.free_rank()..bo.len() {
            out.push(((i, j), ao[i].gcd(&bo[j])));
        }
    }
    out
}

/// One term of a closed-form model with its offset into the flattened
/// ambient generator list.
struct CfLayout {
    term: CfTerm,
    offset: usize,
}

struct CfModel {
    layout: Vec<CfLayout>,
    ambient: usize,
    pres: PresentedGroup,
}

/// The pair presentation of `H₃ ⊗ H₃`, which fixes the coordinates that
/// `b₇` values are read in.
fn pair_model(h3: &AbGroup) -> PresentedGroup {
    let slots = tensor_slots(h3, h3);
    let cols: Vec<Vec<BigInt>> = slots
        .iter()
        .enumerate()
        .filter(|(_, (_, q))| !q.is_zero())
        .map(|(idx, (_, q))| {
            let mut col = vec![BigInt::zero(); slots.len()];
            col[idx] = q.clone();
            col
        })
        .collect();
    PresentedGroup::new(slots.len(), IntMatrix::from_cols(slots.len(), &cols))
}

fn cf_model(
    h: &GradedGroup,
    b: &BTreeMap<usize, AbHom>,
    n: usize,
) -> Result<CfModel, ClError> {
    let terms = closed_form_terms(n);
    let mut layout = Vec::new();
    let mut orders: Vec<BigInt> = Vec::new();
    let g3 = h.get(3);
    let g3n = g3.orders().len();
    for term in terms {
        let offset = orders.len();
        match term {
            CfTerm::Tensor(a, bb) => {
                for (_, q) in tensor_slots(&h.get(a), &h.get(bb)) {
                    orders.push(q);
                }
            }
            CfTerm::Tor(a, bb) => {
                for (_, q) in tor_slots(&h.get(a), &h.get(bb)) {
                    orders.push(q);
                }
            }
            CfTerm::Cube => {
                let o3 = g3.orders();
                for oi in &o3 {
                    for oj in &o3 {
                        for ok in &o3 {
                            orders.push(oi.gcd(oj).gcd(ok));
                        }
                    }
                }
            }
        }
        layout.push(CfLayout { term, offset });
    }
    let ambient = orders.len();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for (idx, q) in orders.iter().enumerate() {
        if !q.is_zero() {
            let mut col = vec![BigInt::zero(); ambient];
            col[idx] = q.clone();
            cols.push(col);
        }
    }
    if let Some(cube) = layout.iter().find(|l| matches!(l.term, CfTerm::Cube)) {
        if let Some(b7) = b.get(&7) {
            let p6 = pair_model(&g3);
            if b7.codomain() != p6.group() {
                return Err(ClError::BadHom { degree: 7 });
            }
            for jcol in 0..b7.matrix().cols() {
                let w = p6.lift(&b7.matrix().col(jcol));
                // w ⊗ H₃ generators
                for k in 0..g3n {
                    let mut col = vec![BigInt::zero(); ambient];
                    for i in 0..g3n {
                        for j in 0..g3n {
                            col[cube.offset + (i * g3n + j) * g3n + k] = w[i * g3n + j].clone();
                        }
                    }
                    cols.push(col);
                }
                // H₃ generators ⊗ w
                for i in 0..g3n {
                    let mut col = vec![BigInt::zero(); ambient];
                    for j in 0..g3n {
                        for k in 0..g3n {
                            col[cube.offset + (i * g3n + j) * g3n + k] = w[j * g3n + k].clone();
                        }
                    }
                    cols.push(col);
                }
            }
        }
    }
    let pres = PresentedGroup::new(ambient, IntMatrix::from_cols(ambient, &cols));
    Ok(CfModel { layout, ambient, pres })
}

fn check_cf_range(h: &GradedGroup, n: usize) -> Result<(), ClError> {
    if !(2..=9).contains(&n) {
        return Err(ClError::OutOfRange { degree: n });
    }
    if !h.get(1).is_trivial() || !h.get(2).is_trivial() {
        return Err(ClError::Unsupported("closed forms assume nothing below degree 3"));
    }
    Ok(())
}

/// Evaluates the quoted tensor/Tor formulas for Γ_n, `n ∈ 2..=9` (zero
/// through degree 5).  The degree-9 value divides the triple tensor of
/// the degree-3 group by the two-sided image of the stage-7 choice; when
/// `b` has no stage-7 entry that image is taken to be zero.
pub fn gamma_closed_form(
    h: &GradedGroup,
    b: &BTreeMap<usize, AbHom>,
    n: usize,
) -> Result<AbGroup, ClError> {
    check_cf_range(h, n)?;
    Ok(cf_model(h, b, n)?.pres.group().clone())
}

/// The automorphism of Γ_n induced by a graded automorphism `f` of `H`:
/// `f⊗f` on tensor terms, the torsion-restriction functoriality on Tor
/// terms, and the induced quotient map on the degree-9 cube term — the
/// latter relates the models conditioned on `b_src` and `b_dst` and is
/// only defined when `f` transports one image into the other.
pub fn induced_gamma_action(
    f: &BTreeMap<usize, AbHom>,
    h: &GradedGroup,
    b_src: &BTreeMap<usize, AbHom>,
    b_dst: &BTreeMap<usize, AbHom>,
    n: usize,
) -> Result<AbHom, ClError> {
    check_cf_range(h, n)?;
    let src = cf_model(h, b_src, n)?;
    let dst = cf_model(h, b_dst, n)?;
    debug_assert_eq!(src.ambient, dst.ambient);
    let mut fs: BTreeMap<usize, AbHom> = BTreeMap::new();
    for d in 3..=6 {
        let g = h.get(d);
        let fd = f.get(&d).cloned().unwrap_or_else(|| AbHom::identity(&g));
        if fd.domain() != &g || fd.codomain() != &g || !fd.is_isomorphism() {
            return Err(ClError::BadHom { degree: d });
        }
        fs.insert(d, fd);
    }
    let mut amb = IntMatrix::zero(dst.ambient, src.ambient);
    for l in &src.layout {
        match l.term {
            CfTerm::Tensor(a, bb) => {
                let (ga, gb) = (h.get(a), h.get(bb));
                let (fa, fb) = (fs[&a].matrix(), fs[&bb].matrix());
                let bn = gb.orders().len();
                for i in 0..ga.orders().len() {
                    for j in 0..bn {
                        for k in 0..ga.orders().len() {
                            for ll in 0..bn {
                                amb.set(
                                    l.offset + k * bn + ll,
                                    l.offset + i * bn + j,
                                    fa.get(k, i) * fb.get(ll, j),
                                );
                            }
                        }
                    }
                }
            }
            CfTerm::Tor(a, bb) => {
                let (ga, gb) = (h.get(a), h.get(bb));
                let (fa, fb) = (fs[&a].matrix(), fs[&bb].matrix());
                let (ao, bo) = (ga.orders(), gb.orders());
                let (fra, frb) = (ga.free_rank(), gb.free_rank());
                let tb = bo.len() - frb;
                for i in fra..ao.len() {
                    for j in frb..bo.len() {
                        let gij = ao[i].gcd(&bo[j]);
                        let scale = &bo[j] / &gij;
                        for k in fra..ao.len() {
                            let phi0 = exact_div(&(fa.get(k, i) * &ao[i]), &ao[k])
                                .ok_or(ClError::UndefinedAction { degree: n })?;
                            for ll in frb..bo.len() {
                                let gkl = ao[k].gcd(&bo[ll]);
                                let denom = &bo[ll] / &gkl;
                                let num = &phi0 * fb.get(ll, j) * &scale;
                                let entry = exact_div(&num, &denom)
                                    .ok_or(ClError::UndefinedAction { degree: n })?;
                                amb.set(
                                    l.offset + (k - fra) * tb + (ll - frb),
                                    l.offset + (i - fra) * tb + (j - frb),
                                    entry,
                                );
                            }
                        }
                    }
                }
            }
            CfTerm::Cube => {
                let f3 = fs[&3].matrix();
                let g3n = h.get(3).orders().len();
                for i in 0..g3n {
                    for j in 0..g3n {
                        for k in 0..g3n {
                            for i2 in 0..g3n {
                                for j2 in 0..g3n {
                                    for k2 in 0..g3n {
                                        amb.set(
                                            l.offset + (i2 * g3n + j2) * g3n + k2,
                                            l.offset + (i * g3n + j) * g3n + k,
                                            f3.get(i2, i) * f3.get(j2, j) * f3.get(k2, k),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let src_group = src.pres.group().clone();
    let dst_group = dst.pres.group().clone();
    let cols: Vec<Vec<BigInt>> = (0..src_group.generator_count())
        .map(|t| dst.pres.project(&amb.mul_vec(&src.pres.lift_gen(t))))
        .collect();
    let m = IntMatrix::from_cols(dst_group.generator_count(), &cols);
    AbHom::new(src_group, dst_group, m).map_err(|_| ClError::UndefinedAction { degree: n })
}

/* ## Γ providers ## */

/// A table entry may be conditioned on the position an earlier stage's
/// choice holds in the canonical `hom_elements` ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCondition {
    pub stage: usize,
    pub value_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTableEntry {
    pub degree: usize,
    pub condition: Option<TableCondition>,
    pub group: AbGroup,
}

/// Explicit per-degree Γ groups; degrees without an entry are trivial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaTable {
    pub entries: Vec<GammaTableEntry>,
}

#[derive(Clone, Debug)]
pub enum GammaProvider {
    /// Γ_n of the stagewise-realized truncation (exact).
    Realized,
    /// The quoted degree-≤9 tensor/Tor formulas.
    ClosedForm,
    /// Groups looked up from an explicit table.
    Table(GammaTable),
}

pub fn gamma_table_provider(table: GammaTable) -> Result<GammaProvider, ClError> {
    for e in &table.entries {
        if e.degree < 2 {
            return Err(ClError::MalformedTable(format!(
                "gamma {} is below the first meaningful degree",
                e.degree
            )));
        }
        if let Some(c) = &e.condition {
            if c.stage < 3 || c.stage > e.degree {
                return Err(ClError::MalformedTable(format!(
                    "a condition on b{} cannot govern gamma {}",
                    c.stage, e.degree
                )));
            }
        }
    }
    Ok(GammaProvider::Table(table))
}

/// Position of the stage-`m` choice in the canonical ordering of its hom
/// set.
fn chosen_index(state: &AdaptedSystem, stage: usize) -> Result<usize, ClError> {
    let bm = state.b.get(&stage).ok_or(ClError::NotBuilt { degree: stage })?;
    let homs = abgroup::hom_elements(bm.domain(), bm.codomain())?;
    homs.iter()
        .position(|x| x == bm)
        .ok_or_else(|| ClError::MalformedTable(format!("stage {} choice is not canonical", stage)))
}

fn table_gamma(t: &GammaTable, state: &AdaptedSystem, n: usize) -> Result<AbGroup, ClError> {
    for e in &t.entries {
        if e.degree != n {
            continue;
        }
        if let Some(c) = &e.condition {
            if chosen_index(state, c.stage)? == c.value_index {
                return Ok(e.group.clone());
            }
        }
    }
    for e in &t.entries {
        if e.degree == n && e.condition.is_none() {
            return Ok(e.group.clone());
        }
    }
    Ok(AbGroup::trivial())
}

/* ## enumeration and counting ## */

type StageFailure = (ClError, Vec<usize>);

fn run_stages(
    h: &GradedGroup,
    provider: &GammaProvider,
    max_degree: usize,
    cap: Option<usize>,
) -> Result<(Vec<AdaptedSystem>, Vec<usize>), StageFailure> {
    let mut stage_counts: Vec<usize> = Vec::new();
    let init = initial_system_with_cap(h, cap).map_err(|e| (e, stage_counts.clone()))?;
    let mut states = vec![init];
    for m in 3..=max_degree {
        let n = m - 1;
        let hm = h.get(m);
        let mut next: Vec<AdaptedSystem> = Vec::new();
        for st in &states {
            let fail = |e: ClError| (e, stage_counts.clone());
            let hom_err = |e: AbError| match e {
                AbError::InfiniteHom => ClError::InfiniteFamily { degree: m },
                other => ClError::Group(other),
            };
            match provider {
                GammaProvider::Realized => {
                    let g = gamma_via_realization(st, n).map_err(fail)?;
                    let homs =
                        abgroup::hom_elements(&hm, &g.group).map_err(|e| fail(hom_err(e)))?;
                    for bm in homs {
                        next.push(realize_step_with(st, &bm, &g).map_err(fail)?);
                    }
                }
                GammaProvider::ClosedForm | GammaProvider::Table(_) => {
                    let gam = match provider {
                        GammaProvider::ClosedForm => {
                            gamma_closed_form(&st.h, &st.b, n).map_err(fail)?
                        }
                        GammaProvider::Table(t) => table_gamma(t, st, n).map_err(fail)?,
                        GammaProvider::Realized => unreachable!(),
                    };
                    let homs = abgroup::hom_elements(&hm, &gam).map_err(|e| fail(hom_err(e)))?;
                    for bm in homs {
                        let mut out = st.clone();
                        out.gamma_log.insert(n, bm.codomain().clone());
                        out.b.insert(m, bm);
                        next.push(out);
                    }
                }
            }
        }
        if next.len() > states.len() {
            stage_counts.push(next.len());
        }
        states = next;
    }
    Ok((states, stage_counts))
}

/// Every complete system over `H` up to `max_degree`, in the
/// lexicographic order of the stagewise choices.
pub fn enumerate_systems(
    h: &GradedGroup,
    provider: &GammaProvider,
    max_degree: usize,
) -> Result<Vec<AdaptedSystem>, ClError> {
    enumerate_systems_with_cap(h, provider, max_degree, None)
}

/// [`enumerate_systems`] with an explicit word-basis cap for the realized
/// algebras.
pub fn enumerate_systems_with_cap(
    h: &GradedGroup,
    provider: &GammaProvider,
    max_degree: usize,
    cap: Option<usize>,
) -> Result<Vec<AdaptedSystem>, ClError> {
    run_stages(h, provider, max_degree, cap).map(|(s, _)| s).map_err(|(e, _)| e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// Count distinct stagewise families.
    Naive,
    /// Count orbits under the graded automorphism group of `H` acting by
    /// `b ↦ γ(f) ∘ b ∘ f⁻¹` (closed-form provider only).
    Orbit,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Finite { count: usize, representatives: Vec<AdaptedSystem> },
    Infinite { degree: usize },
    Unknown { reason: String },
}

#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub outcome: Outcome,
    /// Cumulative system counts, recorded at each stage where the count
    /// strictly grew.
    pub stage_counts: Vec<usize>,
    pub mode: CountMode,
    /// Set when undefined induced actions forced treating some pairs as
    /// inequivalent, making an orbit count a lower bound only.
    pub lower_bound: bool,
}

fn unknown(mode: CountMode, stage_counts: Vec<usize>, reason: &str) -> ClassificationResult {
    ClassificationResult {
        outcome: Outcome::Unknown { reason: String::from(reason) },
        stage_counts,
        mode,
        lower_bound: false,
    }
}

/// Counts quasi-isomorphism-type candidates over `H` through
/// `max_degree`.  Naive mode counts stagewise families; orbit mode
/// additionally divides by the graded automorphism group, which needs
/// the functorial closed-form Γ action and degreewise-finite
/// automorphism groups.
pub fn count_classes(
    h: &GradedGroup,
    provider: &GammaProvider,
    max_degree: usize,
    mode: CountMode,
) -> ClassificationResult {
    count_classes_with_cap(h, provider, max_degree, mode, None)
}

/// [`count_classes`] with an explicit word-basis cap for the realized
/// algebras.
pub fn count_classes_with_cap(
    h: &GradedGroup,
    provider: &GammaProvider,
    max_degree: usize,
    mode: CountMode,
    cap: Option<usize>,
) -> ClassificationResult {
    match mode {
        CountMode::Naive => match run_stages(h, provider, max_degree, cap) {
            Ok((systems, stage_counts)) => ClassificationResult {
                outcome: Outcome::Finite { count: systems.len(), representatives: systems },
                stage_counts,
                mode,
                lower_bound: false,
            },
            Err((ClError::InfiniteFamily { degree }, stage_counts)) => ClassificationResult {
                outcome: Outcome::Infinite { degree },
                stage_counts,
                mode,
                lower_bound: false,
            },
            Err((e, stage_counts)) => {
                unknown(mode, stage_counts, &format!("enumeration failed: {}", e))
            }
        },
        CountMode::Orbit => orbit_count(h, provider, max_degree, cap),
    }
}

fn invert_iso(f: &AbHom) -> Option<AbHom> {
    let gc = f.codomain().generator_count();
    let mut cols = Vec::new();
    for k in 0..gc {
        cols.push(f.preimage(&unit(gc, k))?);
    }
    let m = IntMatrix::from_cols(f.domain().generator_count(), &cols);
    AbHom::new(f.codomain().clone(), f.domain().clone(), m).ok()
}

/// The transformed family `m ↦ γ_{m−1}(f) ∘ b_m ∘ f_m⁻¹`, built stage by
/// stage so the degree-9 action relates the source image to the already
/// transformed stage-7 image.
fn transform_family(
    f: &BTreeMap<usize, AbHom>,
    h: &GradedGroup,
    s: &AdaptedSystem,
) -> Result<BTreeMap<usize, AbHom>, ClError> {
    let mut out: BTreeMap<usize, AbHom> = BTreeMap::new();
    for (&m, bm) in &s.b {
        let gam = induced_gamma_action(f, h, &s.b, &out, m - 1)?;
        let hm = h.get(m);
        let fm = f.get(&m).cloned().unwrap_or_else(|| AbHom::identity(&hm));
        if fm.domain() != &hm || !fm.is_isomorphism() {
            return Err(ClError::BadHom { degree: m });
        }
        let inv = invert_iso(&fm).ok_or(ClError::BadHom { degree: m })?;
        let t = gam.compose(bm)?.compose(&inv)?;
        out.insert(m, t);
    }
    Ok(out)
}

fn orbit_count(
    h: &GradedGroup,
    provider: &GammaProvider,
    max_degree: usize,
    cap: Option<usize>,
) -> ClassificationResult {
    let mode = CountMode::Orbit;
    if !matches!(provider, GammaProvider::ClosedForm) {
        return unknown(mode, Vec::new(), "orbit mode needs the functorial closed-form provider");
    }
    if !h.has_finite_automorphisms() {
        return unknown(mode, Vec::new(), "the graded automorphism group is infinite");
    }
    let (systems, stage_counts) = match run_stages(h, provider, max_degree, cap) {
        Ok(r) => r,
        Err((ClError::InfiniteFamily { degree }, stage_counts)) => {
            return ClassificationResult {
                outcome: Outcome::Infinite { degree },
                stage_counts,
                mode,
                lower_bound: false,
            }
        }
        Err((e, stage_counts)) => {
            return unknown(mode, stage_counts, &format!("enumeration failed: {}", e))
        }
    };
    let degrees: Vec<usize> = (3..=max_degree).filter(|&d| !h.get(d).is_trivial()).collect();
    let mut pools: Vec<Vec<AbHom>> = Vec::new();
    for &d in &degrees {
        match abgroup::automorphisms(&h.get(d)) {
            Ok(p) => pools.push(p),
            Err(e) => {
                return unknown(mode, stage_counts, &format!("automorphisms at degree {}: {}", d, e))
            }
        }
    }
    let mut parent: Vec<usize> = (0..systems.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    // Orbits only ever merge, so once a single class remains the partition
    // is final; skipping the rest of the group avoids walking automorphism
    // products that can run to tens of millions of elements.
    let mut classes = systems.len();
    let mut lower_bound = false;
    let mut idx = vec![0usize; pools.len()];
    while classes > 1 {
        let f: BTreeMap<usize, AbHom> = degrees
            .iter()
            .zip(pools.iter().zip(&idx))
            .map(|(&d, (pool, &i))| (d, pool[i].clone()))
            .collect();
        for (si, s) in systems.iter().enumerate() {
            match transform_family(&f, h, s) {
                Ok(tb) => match systems.iter().position(|c| c.b == tb) {
                    Some(ti) => {
                        let (ra, rb) = (find(&mut parent, si), find(&mut parent, ti));
                        if ra != rb {
                            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                            parent[hi] = lo;
                            classes -= 1;
                        }
                    }
                    None => {
                        return unknown(
                            mode,
                            stage_counts,
                            "internal: a transformed system is missing from the enumeration",
                        )
                    }
                },
                Err(ClError::UndefinedAction { .. }) => {
                    lower_bound = true;
                }
                Err(e) => {
                    return unknown(mode, stage_counts, &format!("action failed: {}", e))
                }
            }
        }
        let mut pos = pools.len();
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < pools[pos].len() {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if done {
            break;
        }
    }
    let mut reps = Vec::new();
    for i in 0..systems.len() {
        if find(&mut parent, i) == i {
            reps.push(systems[i].clone());
        }
    }
    ClassificationResult {
        outcome: Outcome::Finite { count: reps.len(), representatives: reps },
        stage_counts,
        mode,
        lower_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zq(k: u64) -> AbGroup {
        AbGroup::cyclic(k)
    }

    fn m1(v: i64) -> IntMatrix {
        let mut m = IntMatrix::zero(1, 1);
        m.set(0, 0, BigInt::from(v));
        m
    }

    /// Cyclic homology in degrees 3..=10 with a free top degree; the
    /// running example for counts: stages 2, 4, 12, 18.
    fn h25() -> GradedGroup {
        GradedGroup::from_entries(&[
            (3, zq(2)),
            (4, zq(3)),
            (5, zq(5)),
            (6, zq(5)),
            (7, zq(2)),
            (8, zq(4)),
            (9, zq(3)),
            (10, AbGroup::free(1)),
        ])
        .unwrap()
    }

    /// The evaluated Γ table of the running example: degree 9 depends on
    /// the stage-7 choice (index 0 = zero map).
    fn table25() -> GammaTable {
        GammaTable {
            entries: vec![
                GammaTableEntry { degree: 6, condition: None, group: zq(2) },
                GammaTableEntry { degree: 7, condition: None, group: zq(2) },
                GammaTableEntry { degree: 8, condition: None, group: zq(3) },
                GammaTableEntry {
                    degree: 9,
                    condition: Some(TableCondition { stage: 7, value_index: 0 }),
                    group: zq(2),
                },
                GammaTableEntry {
                    degree: 9,
                    condition: Some(TableCondition { stage: 7, value_index: 1 }),
                    group: AbGroup::trivial(),
                },
            ],
        }
    }

    #[test]
    fn graded_group_basics() {
        let mut h = GradedGroup::new();
        assert_eq!(h.set(0, zq(2)), Err(ClError::BadDegree { degree: 0 }));
        h.set(3, zq(2)).unwrap();
        h.set(5, AbGroup::trivial()).unwrap();
        assert_eq!(h.get(3), zq(2));
        assert!(h.get(5).is_trivial());
        assert_eq!(h.degrees(), vec![3]);
        assert_eq!(h.max_degree(), 3);
        assert!(h.is_all_finite() && h.has_finite_automorphisms());
        h.set(4, AbGroup::free(1)).unwrap();
        assert!(!h.is_all_finite() && h.has_finite_automorphisms());
        h.set(4, AbGroup::free(2)).unwrap();
        assert!(!h.has_finite_automorphisms());
    }

    #[test]
    fn minimal_complex_single_torsion() {
        let h = GradedGroup::from_entries(&[(3, zq(2))]).unwrap();
        let c = minimal_complex(&h);
        assert_eq!(c.rank(3), 1);
        assert_eq!(c.rank(4), 1);
        assert_eq!(c.diff(4), m1(2));
        assert_eq!(c.homology(3).group(), &zq(2));
        assert!(c.homology(4).group().is_trivial());
    }

    #[test]
    fn minimal_complex_free_only() {
        let h = GradedGroup::from_entries(&[(1, AbGroup::free(1)), (3, AbGroup::free(1))])
            .unwrap();
        let c = minimal_complex(&h);
        assert_eq!(c.rank(1), 1);
        assert_eq!(c.rank(2), 0);
        assert_eq!(c.rank(3), 1);
        assert_eq!(c.homology(1).group(), &AbGroup::free(1));
        assert_eq!(c.homology(3).group(), &AbGroup::free(1));
    }

    #[test]
    fn minimal_complex_round_trip() {
        let h = h25();
        let c = minimal_complex(&h);
        let total: usize = (1..=11).map(|n| c.rank(n)).sum();
        // seven torsion pairs and one free generator
        assert_eq!(total, 15);
        for n in 1..=11 {
            assert_eq!(c.homology(n).group(), &h.get(n), "degree {}", n);
        }
    }

    #[test]
    fn initial_system_matches_minimal() {
        let h = h25();
        let s = initial_system(&h).unwrap();
        let lp = s.realized.linear_part();
        let mc = minimal_complex(&h);
        for n in 1..=11 {
            assert_eq!(lp.rank(n), mc.rank(n), "rank at {}", n);
            assert_eq!(lp.diff(n), mc.diff(n), "diff at {}", n);
        }
        assert_eq!(s.next_stage(), 3);
        assert_eq!(s.built_through(), 2);
    }

    #[test]
    fn realize_zero_choice_keeps_minimal() {
        let h = GradedGroup::from_entries(&[(1, AbGroup::free(1)), (3, AbGroup::free(1))])
            .unwrap();
        let s = initial_system(&h).unwrap();
        let g = gamma_via_realization(&s, 2).unwrap();
        assert_eq!(g.group, AbGroup::free(1));
        let b = AbHom::zero(AbGroup::free(1), AbGroup::free(1));
        let s2 = realize_step(&s, &b).unwrap();
        let x3 = s2.realized.gen_id("x3_0").unwrap();
        assert!(s2.realized.diff_of(x3).is_zero());
        assert_eq!(s2.built_through(), 3);
    }

    #[test]
    fn realize_step_inserts_cycle() {
        let h = GradedGroup::from_entries(&[(1, AbGroup::free(1)), (3, AbGroup::free(1))])
            .unwrap();
        let s = initial_system(&h).unwrap();
        let b = AbHom::new(AbGroup::free(1), AbGroup::free(1), m1(2)).unwrap();
        let s2 = realize_step(&s, &b).unwrap();
        let a = s2.realized.gen_id("x1_0").unwrap();
        let x3 = s2.realized.gen_id("x3_0").unwrap();
        let expected = AlgElement::term(BigInt::from(2), vec![a, a]);
        assert_eq!(s2.realized.diff_of(x3), &expected);
    }

    #[test]
    fn realize_step_rejects_mismatched_hom() {
        let h = GradedGroup::from_entries(&[(1, AbGroup::free(1)), (3, AbGroup::free(1))])
            .unwrap();
        let s = initial_system(&h).unwrap();
        let bad = AbHom::zero(AbGroup::free(1), zq(2));
        assert!(matches!(
            realize_step(&s, &bad),
            Err(ClError::BadHom { degree: 3 })
        ));
    }

    #[test]
    fn realized_systems_are_perfect() {
        let h = GradedGroup::from_entries(&[(3, zq(2)), (7, zq(2))]).unwrap();
        let systems = enumerate_systems(&h, &GammaProvider::Realized, 7).unwrap();
        assert_eq!(systems.len(), 2);
        for s in &systems {
            assert_eq!(s.gamma_log[&6], zq(2));
            assert!(whitehead::is_perfect(&s.realized, (2, 6)).unwrap());
        }
        // the nonzero choice puts a decomposable cycle on the degree-7
        // torsion generator
        let t7 = systems[1].realized.gen_id("t7_0").unwrap();
        assert!(!systems[1].realized.diff_of(t7).is_zero());
        assert!(systems[0].realized.diff_of(t7).is_zero());
    }

    #[test]
    fn gamma_realized_low_degrees_vanish() {
        let h = h25();
        let s0 = initial_system(&h).unwrap();
        assert!(matches!(
            gamma_via_realization(&s0, 5),
            Err(ClError::NotBuilt { degree: 5 })
        ));
        let systems = enumerate_systems(&h, &GammaProvider::Realized, 6).unwrap();
        assert_eq!(systems.len(), 1);
        for n in 2..=5 {
            assert!(systems[0].gamma_log[&n].is_trivial(), "gamma {}", n);
        }
    }

    #[test]
    fn gamma_realized_example_values() {
        let h = h25();
        let systems = enumerate_systems(&h, &GammaProvider::Realized, 9).unwrap();
        assert_eq!(systems.len(), 12);
        for s in &systems {
            assert_eq!(s.gamma_log[&6], zq(2));
            assert_eq!(s.gamma_log[&7], zq(2));
            assert_eq!(s.gamma_log[&8], zq(3));
        }
        // stage-7 choices alternate slowest; the first system took zero
        let zero7 = &systems[0];
        let one7 = systems.iter().find(|s| !s.b[&7].is_zero()).unwrap();
        assert!(zero7.b[&7].is_zero());
        let g9_zero = gamma_via_realization(zero7, 9).unwrap();
        let g9_one = gamma_via_realization(one7, 9).unwrap();
        // the exact groups keep the degree-(4,4) torsion summand that the
        // evaluated table drops
        assert_eq!(g9_zero.group, zq(6));
        assert_eq!(g9_one.group, zq(3));
        assert!(whitehead::is_perfect(&zero7.realized, (2, 8)).unwrap());
        assert!(whitehead::is_perfect(&one7.realized, (2, 8)).unwrap());
    }

    #[test]
    fn closed_form_example_values() {
        let h = h25();
        let none = BTreeMap::new();
        assert_eq!(gamma_closed_form(&h, &none, 6).unwrap(), zq(2));
        assert_eq!(gamma_closed_form(&h, &none, 7).unwrap(), zq(2));
        assert_eq!(gamma_closed_form(&h, &none, 8).unwrap(), zq(3));
        for n in 2..=5 {
            assert!(gamma_closed_form(&h, &none, n).unwrap().is_trivial());
        }
        // degree 9 as written: the cube term survives a zero stage-7
        // choice and Tor of the two degree-4 groups contributes 3-torsion
        let mut b0 = BTreeMap::new();
        b0.insert(7, AbHom::zero(zq(2), zq(2)));
        assert_eq!(gamma_closed_form(&h, &b0, 9).unwrap(), zq(6));
        assert_eq!(gamma_closed_form(&h, &none, 9).unwrap(), zq(6));
        let mut b1 = BTreeMap::new();
        b1.insert(7, AbHom::new(zq(2), zq(2), m1(1)).unwrap());
        assert_eq!(gamma_closed_form(&h, &b1, 9).unwrap(), zq(3));
    }

    #[test]
    fn closed_form_range_checks() {
        let h = h25();
        let none = BTreeMap::new();
        assert_eq!(
            gamma_closed_form(&h, &none, 10),
            Err(ClError::OutOfRange { degree: 10 })
        );
        assert_eq!(gamma_closed_form(&h, &none, 1), Err(ClError::OutOfRange { degree: 1 }));
        let low = GradedGroup::from_entries(&[(2, zq(2))]).unwrap();
        assert!(matches!(
            gamma_closed_form(&low, &none, 6),
            Err(ClError::Unsupported(_))
        ));
    }

    #[test]
    fn closed_form_vanishes_without_low_degrees() {
        let h = GradedGroup::from_entries(&[(5, zq(2)), (9, zq(3))]).unwrap();
        let none = BTreeMap::new();
        for n in 2..=9 {
            assert!(gamma_closed_form(&h, &none, n).unwrap().is_trivial(), "gamma {}", n);
        }
    }

    #[test]
    fn closed_form_matches_realization() {
        // fixed fixture with a branching stage-7 choice
        let h = GradedGroup::from_entries(&[(3, zq(2)), (4, zq(2)), (7, zq(2))]).unwrap();
        let systems = enumerate_systems(&h, &GammaProvider::Realized, 8).unwrap();
        assert_eq!(systems.len(), 2);
        for s in &systems {
            for n in 6..=7 {
                assert_eq!(
                    s.gamma_log[&n],
                    gamma_closed_form(&h, &s.b, n).unwrap(),
                    "gamma {}",
                    n
                );
            }
            assert_eq!(
                gamma_via_realization(s, 8).unwrap().group,
                gamma_closed_form(&h, &s.b, 8).unwrap()
            );
        }
        // random cyclic groups in degrees 3..5
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let mut h = GradedGroup::new();
            for d in 3..=5 {
                let q = [1u64, 2, 3, 4, 6][rng.gen_range(0..5)];
                if q > 1 {
                    h.set(d, zq(q)).unwrap();
                }
            }
            let systems = enumerate_systems(&h, &GammaProvider::Realized, 8).unwrap();
            assert_eq!(systems.len(), 1);
            let s = &systems[0];
            for n in 6..=7 {
                assert_eq!(
                    s.gamma_log[&n],
                    gamma_closed_form(&h, &s.b, n).unwrap(),
                    "gamma {} of {:?}",
                    n,
                    h
                );
            }
            assert_eq!(
                gamma_via_realization(s, 8).unwrap().group,
                gamma_closed_form(&h, &s.b, 8).unwrap(),
                "gamma 8 of {:?}",
                h
            );
        }
    }

    #[test]
    fn table_provider_validation_and_lookup() {
        let bad = GammaTable {
            entries: vec![GammaTableEntry { degree: 1, condition: None, group: zq(2) }],
        };
        assert!(matches!(gamma_table_provider(bad), Err(ClError::MalformedTable(_))));
        let bad2 = GammaTable {
            entries: vec![GammaTableEntry {
                degree: 6,
                condition: Some(TableCondition { stage: 7, value_index: 0 }),
                group: zq(2),
            }],
        };
        assert!(matches!(gamma_table_provider(bad2), Err(ClError::MalformedTable(_))));
        assert!(gamma_table_provider(table25()).is_ok());
    }

    #[test]
    fn evaluated_table_reproduces_count() {
        let h = h25();
        let provider = gamma_table_provider(table25()).unwrap();
        let r = count_classes(&h, &provider, 10, CountMode::Naive);
        assert_eq!(r.stage_counts, vec![2, 4, 12, 18]);
        assert_eq!(r.mode, CountMode::Naive);
        assert!(!r.lower_bound);
        match &r.outcome {
            Outcome::Finite { count, representatives } => {
                assert_eq!(*count, 18);
                assert_eq!(representatives.len(), 18);
                for s in representatives {
                    assert_eq!(s.next_stage(), 11);
                }
            }
            other => panic!("expected a finite count, got {:?}", other),
        }
    }

    #[test]
    fn closed_form_count_differs_from_table() {
        let h = h25();
        let r = count_classes(&h, &GammaProvider::ClosedForm, 10, CountMode::Naive);
        assert_eq!(r.stage_counts, vec![2, 4, 12, 54]);
        match &r.outcome {
            Outcome::Finite { count, .. } => assert_eq!(*count, 54),
            other => panic!("expected a finite count, got {:?}", other),
        }
    }

    #[test]
    fn infinite_family_signal() {
        let h = GradedGroup::from_entries(&[(1, AbGroup::free(1)), (3, AbGroup::free(1))])
            .unwrap();
        assert!(matches!(
            enumerate_systems(&h, &GammaProvider::Realized, 3),
            Err(ClError::InfiniteFamily { degree: 3 })
        ));
        let r = count_classes(&h, &GammaProvider::Realized, 3, CountMode::Naive);
        assert!(matches!(r.outcome, Outcome::Infinite { degree: 3 }));
    }

    #[test]
    fn all_zero_table_single_system() {
        let h = h25();
        let provider = gamma_table_provider(GammaTable::default()).unwrap();
        let systems = enumerate_systems(&h, &provider, 10).unwrap();
        assert_eq!(systems.len(), 1);
        assert!(systems[0].b.values().all(AbHom::is_zero));
        let r = count_classes(&h, &provider, 10, CountMode::Naive);
        assert!(r.stage_counts.is_empty());
    }

    #[test]
    fn orbit_mode_preconditions() {
        let h = h25();
        let r = count_classes(&h, &GammaProvider::Realized, 6, CountMode::Orbit);
        assert!(matches!(r.outcome, Outcome::Unknown { .. }));
        let wide = GradedGroup::from_entries(&[(3, AbGroup::free(2))]).unwrap();
        let r2 = count_classes(&wide, &GammaProvider::ClosedForm, 4, CountMode::Orbit);
        assert!(matches!(r2.outcome, Outcome::Unknown { .. }));
    }

    #[test]
    fn orbit_counts_small_fixture() {
        let h = GradedGroup::from_entries(&[(3, zq(3)), (7, zq(3))]).unwrap();
        let naive = count_classes(&h, &GammaProvider::ClosedForm, 7, CountMode::Naive);
        let orbit = count_classes(&h, &GammaProvider::ClosedForm, 7, CountMode::Orbit);
        let (nc, oc) = match (&naive.outcome, &orbit.outcome) {
            (
                Outcome::Finite { count: nc, .. },
                Outcome::Finite { count: oc, representatives },
            ) => {
                // the zero system is its own orbit; the two nonzero
                // choices are swapped by negation upstairs
                assert!(representatives[0].b[&7].is_zero());
                (*nc, *oc)
            }
            other => panic!("expected finite counts, got {:?}", other),
        };
        assert_eq!(nc, 3);
        assert_eq!(oc, 2);
        assert!(nc >= oc);
        assert!(!orbit.lower_bound);
        assert_eq!(naive.stage_counts, vec![3]);
        assert_eq!(orbit.stage_counts, vec![3]);
    }

    #[test]
    fn induced_action_identity() {
        let h = h25();
        let empty = BTreeMap::new();
        for n in 6..=9 {
            let a = induced_gamma_action(&empty, &h, &empty, &empty, n).unwrap();
            assert!(a.is_isomorphism());
            assert_eq!(&a, &AbHom::identity(a.domain()));
        }
    }

    #[test]
    fn induced_action_examples() {
        // squaring a unit: ×2 on the degree-4 group acts as ×4 = ×1 on
        // its Tor square
        let h = GradedGroup::from_entries(&[(4, zq(3))]).unwrap();
        let mut f = BTreeMap::new();
        f.insert(4, AbHom::new(zq(3), zq(3), m1(2)).unwrap());
        let none = BTreeMap::new();
        let a = induced_gamma_action(&f, &h, &none, &none, 9).unwrap();
        assert_eq!(a.domain(), &zq(3));
        assert_eq!(&a, &AbHom::identity(&zq(3)));
        // a unit that is not a square stays visible on the tensor square
        let h5 = GradedGroup::from_entries(&[(3, zq(5))]).unwrap();
        let mut f5 = BTreeMap::new();
        f5.insert(3, AbHom::new(zq(5), zq(5), m1(2)).unwrap());
        let a6 = induced_gamma_action(&f5, &h5, &none, &none, 6).unwrap();
        assert_eq!(a6.matrix(), &m1(4));
    }

    #[test]
    fn induced_action_cube_undefined() {
        let h = GradedGroup::from_entries(&[(3, zq(4)), (7, zq(4))]).unwrap();
        let none = BTreeMap::new();
        let mut src = BTreeMap::new();
        src.insert(7, AbHom::new(zq(4), zq(4), m1(2)).unwrap());
        let mut dst = BTreeMap::new();
        dst.insert(7, AbHom::zero(zq(4), zq(4)));
        // the identity cannot carry the smaller quotient onto the larger
        assert_eq!(
            induced_gamma_action(&none, &h, &src, &dst, 9),
            Err(ClError::UndefinedAction { degree: 9 })
        );
        // the opposite direction collapses and is fine
        assert!(induced_gamma_action(&none, &h, &dst, &src, 9).is_ok());
    }
}
