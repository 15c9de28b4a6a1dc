//! Finitely generated abelian groups in invariant-factor form, homomorphisms
//! between them, and the functors tensor, Tor, Hom, Ext.
//!
//! A group is `Z^r + Z/t1 + ... + Z/tk` with `t1 | t2 | ... | tk`, `ti >= 2`.
//! Canonical generators are the free summands first, then the torsion
//! summands in that order. Elements are integer coordinate vectors over the
//! canonical generators; torsion coordinates are reduced into `[0, ti)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{self, IntMatrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AbError {
    /// Matrix shape does not match the generator counts of the groups.
    DimensionMismatch,
    /// A generator's order is not respected by the proposed images.
    NotWellDefined { column: usize },
    /// The requested enumeration would be infinite.
    InfiniteHom,
    /// Isomorphism search is only implemented for free rank <= 1.
    FreeRankTooLarge,
    /// Composition/addition of homs over incompatible groups.
    GroupMismatch,
}

impl fmt::Display for AbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbError::DimensionMismatch => write!(f, "matrix shape does not match the groups"),
            AbError::NotWellDefined { column } => {
                write!(f, "images do not respect the order of generator {}", column)
            }
            AbError::InfiniteHom => write!(f, "hom set is infinite"),
            AbError::FreeRankTooLarge => {
                write!(f, "isomorphism enumeration needs free rank <= 1")
            }
            AbError::GroupMismatch => write!(f, "incompatible groups"),
        }
    }
}

/// Finitely generated abelian group in invariant-factor form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn trivial() -> Self {
        AbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        AbGroup::from_orders(&[BigInt::from(order)])
    }

    /// Build from a list of cyclic orders, `0` meaning an infinite summand.
    /// The torsion part is normalised to invariant factors.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let free_rank = orders.iter().filter(|x| x.is_zero()).count();
        let torsion_in: Vec<BigInt> = orders
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.abs())
            .collect();
        let diag = IntMatrix::diagonal(&torsion_in, torsion_in.len(), torsion_in.len());
        let torsion: Vec<BigInt> = matrix::snf(&diag)
            .diag()
            .into_iter()
            .filter(|d| d > &BigInt::one())
            .collect();
        AbGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Per-generator orders, `0` for the free generators.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.free_rank];
        out.extend(self.torsion.iter().cloned());
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut orders = self.orders();
        orders.extend(other.orders());
        AbGroup::from_orders(&orders)
    }

    /// Reduce an element's coordinates: torsion entries into `[0, order)`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.generator_count(), "element length mismatch");
        x.iter()
            .zip(self.orders())
            .map(|(v, q)| if q.is_zero() { v.clone() } else { v.mod_floor(&q) })
            .collect()
    }

    /// Diagonal relation matrix (generator count x torsion count).
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.generator_count(), self.torsion.len());
        for (k, t) in self.torsion.iter().enumerate() {
            m.set(self.free_rank + k, k, t.clone());
        }
        m
    }

    /// All elements, as reduced coordinate vectors. `None` when infinite.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if self.free_rank > 0 {
            return None;
        }
        let mut out = vec![Vec::new()];
        for t in &self.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut v = BigInt::zero();
                while &v < t {
                    let mut e = prefix.clone();
                    e.push(v.clone());
                    next.push(e);
                    v += 1;
                }
            }
            out = next;
        }
        Some(out)
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = vec!["Z".into(); self.free_rank];
        terms.extend(self.torsion.iter().map(|t| format!("Z{}", t)));
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupParseError(pub String);

impl fmt::Display for GroupParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad group literal: {}", self.0)
    }
}

/// Parse a group literal: `0`, or `+`-separated terms `Z` / `Z<d>` with
/// `d >= 2`, e.g. `Z4 + Z4 + Z`.  `Z^<r>` abbreviates `r` free summands,
/// matching the rendered form.
pub fn parse_group(s: &str) -> Result<AbGroup, GroupParseError> {
    let t = s.trim();
    if t == "0" {
        return Ok(AbGroup::trivial());
    }
    if t.is_empty() {
        return Err(GroupParseError("empty literal".into()));
    }
    let mut orders = Vec::new();
    for term in t.split('+') {
        let term = term.trim();
        if term == "Z" {
            orders.push(BigInt::zero());
            continue;
        }
        if let Some(exp) = term.strip_prefix("Z^") {
            let ok = !exp.is_empty() && exp.bytes().all(|b| b.is_ascii_digit());
            let r: usize = if ok { exp.parse().unwrap_or(0) } else { 0 };
            if r == 0 {
                return Err(GroupParseError(format!("bad free rank in '{}'", term)));
            }
            orders.extend(core::iter::repeat(BigInt::zero()).take(r));
            continue;
        }
        let Some(digits) = term.strip_prefix('Z') else {
            return Err(GroupParseError(format!("bad term '{}'", term)));
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(GroupParseError(format!("bad term '{}'", term)));
        }
        let d: BigInt = digits.parse().expect("digits checked");
        if d < BigInt::from(2) {
            return Err(GroupParseError(format!(
                "cyclic order in '{}' must be at least 2",
                term
            )));
        }
        orders.push(d);
    }
    Ok(AbGroup::from_orders(&orders))
}

/* ## functors ## */

fn gcd_pair(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Tensor product over the integers, summand by summand.
pub fn tensor(a: &AbGroup, b: &AbGroup) -> AbGroup {
    let mut orders = Vec::new();
    for p in a.orders() {
        for q in b.orders() {
            orders.push(if p.is_zero() {
                q.clone()
            } else if q.is_zero() {
                p.clone()
            } else {
                gcd_pair(&p, &q)
            });
        }
    }
    AbGroup::from_orders(&orders)
}

/// `Tor(A, B)`: free summands contribute nothing; cyclic parts give gcd.
pub fn tor(a: &AbGroup, b: &AbGroup) -> AbGroup {
    let mut orders = Vec::new();
    for p in a.torsion() {
        for q in b.torsion() {
            orders.push(gcd_pair(p, q));
        }
    }
    AbGroup::from_orders(&orders)
}

/// `Hom(A, B)` as an abstract group.
pub fn hom_group(a: &AbGroup, b: &AbGroup) -> AbGroup {
    let mut orders = Vec::new();
    for p in a.orders() {
        for q in b.orders() {
            if p.is_zero() {
                orders.push(q.clone()); // Hom(Z, B-summand)
            } else if q.is_zero() {
                // Hom(Z/p, Z) = 0
            } else {
                orders.push(gcd_pair(&p, &q));
            }
        }
    }
    AbGroup::from_orders(&orders)
}

/// `Ext(A, B)`.
pub fn ext_group(a: &AbGroup, b: &AbGroup) -> AbGroup {
    let mut orders = Vec::new();
    for p in a.torsion() {
        for q in b.orders() {
            orders.push(if q.is_zero() { p.clone() } else { gcd_pair(p, &q) });
        }
    }
    AbGroup::from_orders(&orders)
}

/* ## presented groups ## */

/// A finitely presented abelian group: ambient `Z^n` modulo the column span
/// of a relation matrix, with the change of basis needed to move elements
/// between ambient and canonical coordinates.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    group: AbGroup,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// For each canonical generator: its row in `u`-coordinates and order.
    coord_rows: Vec<(usize, BigInt)>,
}

impl PresentedGroup {
    pub fn new(ambient_rank: usize, relations: IntMatrix) -> Self {
        assert_eq!(
            relations.rows(),
            ambient_rank,
            "relation matrix must have one row per ambient generator"
        );
        let s = matrix::snf(&relations);
        let diag = s.diag();
        let full_diag: Vec<BigInt> = (0..ambient_rank)
            .map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        let mut coord_rows = Vec::new();
        for (i, d) in full_diag.iter().enumerate() {
            if d.is_zero() {
                coord_rows.push((i, BigInt::zero()));
            }
        }
        for (i, d) in full_diag.iter().enumerate() {
            if d > &BigInt::one() {
                coord_rows.push((i, d.clone()));
            }
        }
        let free_rank = coord_rows.iter().filter(|(_, d)| d.is_zero()).count();
        let torsion = coord_rows
            .iter()
            .filter(|(_, d)| !d.is_zero())
            .map(|(_, d)| d.clone())
            .collect();
        PresentedGroup {
            ambient_rank,
            relations,
            group: AbGroup { free_rank, torsion },
            u: s.u,
            u_inv: s.u_inv,
            coord_rows,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    /// Canonical coordinates of an ambient vector.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient_rank, "ambient vector length mismatch");
        let y = self.u.mul_vec(x);
        self.coord_rows
            .iter()
            .map(|(row, d)| {
                if d.is_zero() {
                    y[*row].clone()
                } else {
                    y[*row].mod_floor(d)
                }
            })
            .collect()
    }

    /// Ambient representative of the `k`-th canonical generator.
    pub fn lift_gen(&self, k: usize) -> Vec<BigInt> {
        self.u_inv.col(self.coord_rows[k].0)
    }

    /// Ambient representative of an element given in canonical coordinates.
    pub fn lift(&self, canonical: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(canonical.len(), self.group.generator_count());
        let mut out = vec![BigInt::zero(); self.ambient_rank];
        for (k, c) in canonical.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, v) in self.lift_gen(k).iter().enumerate() {
                out[i] += c * v;
            }
        }
        out
    }

    /// Matrix whose columns are the ambient lifts of the canonical generators.
    pub fn lift_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = (0..self.group.generator_count())
            .map(|k| self.lift_gen(k))
            .collect();
        IntMatrix::from_cols(self.ambient_rank, &cols)
    }
}

/* ## homomorphisms ## */

/// Homomorphism between groups in canonical form; the matrix has one column
/// per domain generator holding the image in codomain coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbHom {
    domain: AbGroup,
    codomain: AbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(domain: AbGroup, codomain: AbGroup, m: IntMatrix) -> Result<AbHom, AbError> {
        if m.rows() != codomain.generator_count() || m.cols() != domain.generator_count() {
            return Err(AbError::DimensionMismatch);
        }
        let dom_orders = domain.orders();
        let cod_orders = codomain.orders();
        for (j, q) in dom_orders.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (i, e) in cod_orders.iter().enumerate() {
                let entry = m.get(i, j);
                let ok = if e.is_zero() {
                    (q * entry).is_zero()
                } else {
                    (q * entry).mod_floor(e).is_zero()
                };
                if !ok {
                    return Err(AbError::NotWellDefined { column: j });
                }
            }
        }
        let mut reduced = m;
        for (i, e) in cod_orders.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            for j in 0..reduced.cols() {
                let v = reduced.get(i, j).mod_floor(e);
                reduced.set(i, j, v);
            }
        }
        Ok(AbHom {
            domain,
            codomain,
            matrix: reduced,
        })
    }

    pub fn zero(domain: AbGroup, codomain: AbGroup) -> AbHom {
        let m = IntMatrix::zero(codomain.generator_count(), domain.generator_count());
        AbHom {
            domain,
            codomain,
            matrix: m,
        }
    }

    pub fn identity(g: &AbGroup) -> AbHom {
        AbHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntMatrix::identity(g.generator_count()),
        }
    }

    pub fn domain(&self) -> &AbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.codomain.reduce(&self.matrix.mul_vec(x))
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &AbHom) -> Result<AbHom, AbError> {
        if other.codomain != self.domain {
            return Err(AbError::GroupMismatch);
        }
        AbHom::new(
            other.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&other.matrix),
        )
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom, AbError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(AbError::GroupMismatch);
        }
        AbHom::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.add(&other.matrix),
        )
    }

    pub fn neg(&self) -> AbHom {
        AbHom::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.neg(),
        )
        .expect("negation stays well defined")
    }

    /// Kernel as an abstract group plus its embedding into the domain.
    pub fn kernel(&self) -> (AbGroup, AbHom) {
        let ga = self.domain.generator_count();
        let block = self.matrix.hstack(&self.codomain.relation_matrix());
        let k = matrix::kernel_basis(&block);
        // Project kernel columns of the block onto the domain part: their
        // span is the full preimage lattice of the codomain relations.
        let keep: Vec<usize> = (0..ga).collect();
        let mut proj = IntMatrix::zero(ga, k.cols());
        for j in 0..k.cols() {
            for (i, &row) in keep.iter().enumerate() {
                proj.set(i, j, k.get(row, j).clone());
            }
        }
        let basis = matrix::image_basis(&proj);
        let rel_a = self.domain.relation_matrix();
        let mut rel_in_basis_cols = Vec::new();
        for j in 0..rel_a.cols() {
            let c = rel_a.col(j);
            let z = matrix::solve(&basis, &c)
                .expect("domain relations lie inside the kernel lattice");
            rel_in_basis_cols.push(z);
        }
        let pres = PresentedGroup::new(
            basis.cols(),
            IntMatrix::from_cols(basis.cols(), &rel_in_basis_cols),
        );
        let group = pres.group().clone();
        let cols: Vec<Vec<BigInt>> = (0..group.generator_count())
            .map(|k| self.domain.reduce(&basis.mul_vec(&pres.lift_gen(k))))
            .collect();
        let emb = AbHom::new(
            group.clone(),
            self.domain.clone(),
            IntMatrix::from_cols(ga, &cols),
        )
        .expect("kernel embedding is well defined");
        (group, emb)
    }

    /// Cokernel as an abstract group plus the projection from the codomain.
    pub fn cokernel(&self) -> (AbGroup, AbHom) {
        let gb = self.codomain.generator_count();
        let rel = self.matrix.hstack(&self.codomain.relation_matrix());
        let pres = PresentedGroup::new(gb, rel);
        let group = pres.group().clone();
        let cols: Vec<Vec<BigInt>> = (0..gb)
            .map(|j| {
                let mut e = vec![BigInt::zero(); gb];
                e[j] = BigInt::one();
                pres.project(&e)
            })
            .collect();
        let proj = AbHom::new(
            self.codomain.clone(),
            group.clone(),
            IntMatrix::from_cols(group.generator_count(), &cols),
        )
        .expect("cokernel projection is well defined");
        (group, proj)
    }

    /// Isomorphism type of the image subgroup of the codomain.
    pub fn image(&self) -> AbGroup {
        let lat = self.matrix.hstack(&self.codomain.relation_matrix());
        let basis = matrix::image_basis(&lat);
        let rel_b = self.codomain.relation_matrix();
        let mut rel_cols = Vec::new();
        for j in 0..rel_b.cols() {
            let z = matrix::solve(&basis, &rel_b.col(j))
                .expect("codomain relations lie inside the image lattice");
            rel_cols.push(z);
        }
        PresentedGroup::new(basis.cols(), IntMatrix::from_cols(basis.cols(), &rel_cols))
            .group()
            .clone()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.kernel().0.is_trivial() && self.cokernel().0.is_trivial()
    }

    /// One solution `x` of `self(x) = y`, in domain coordinates.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(y.len(), self.codomain.generator_count());
        let block = self.matrix.hstack(&self.codomain.relation_matrix());
        let sol = matrix::solve(&block, y)?;
        Some(
            self.domain
                .reduce(&sol[..self.domain.generator_count()].to_vec()),
        )
    }
}

/* ## enumeration ## */

/// Allowed reduced values for a single matrix entry: domain generator of
/// order `q` (0 = free) mapping into a codomain generator of order `e`.
fn entry_values(q: &BigInt, e: &BigInt) -> Result<Vec<BigInt>, AbError> {
    if e.is_zero() {
        if q.is_zero() {
            return Err(AbError::InfiniteHom);
        }
        return Ok(vec![BigInt::zero()]);
    }
    if q.is_zero() {
        let mut out = Vec::new();
        let mut v = BigInt::zero();
        while &v < e {
            out.push(v.clone());
            v += 1;
        }
        return Ok(out);
    }
    let g = q.gcd(e);
    let step = e / &g;
    let mut out = Vec::new();
    let mut k = BigInt::zero();
    while &k < &g {
        out.push(&k * &step);
        k += 1;
    }
    Ok(out)
}

/// Every homomorphism `a -> b`, without duplicates, in lexicographic order
/// of the reduced matrix entries read row by row. Errors when infinite.
pub fn hom_elements(a: &AbGroup, b: &AbGroup) -> Result<Vec<AbHom>, AbError> {
    let dom_orders = a.orders();
    let cod_orders = b.orders();
    let mut slots: Vec<Vec<BigInt>> = Vec::new();
    for e in &cod_orders {
        for q in &dom_orders {
            slots.push(entry_values(q, e)?);
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut m = IntMatrix::zero(cod_orders.len(), dom_orders.len());
        for (s, &k) in idx.iter().enumerate() {
            let i = s / dom_orders.len();
            let j = s % dom_orders.len();
            m.set(i, j, slots[s][k].clone());
        }
        out.push(AbHom {
            domain: a.clone(),
            codomain: b.clone(),
            matrix: m,
        });
        // odometer: last slot varies fastest
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < slots[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Every isomorphism `a -> b`. Empty if the groups differ. Errors when the
/// free rank is 2 or more (the search space is infinite).
pub fn isomorphisms(a: &AbGroup, b: &AbGroup) -> Result<Vec<AbHom>, AbError> {
    if a != b {
        return Ok(Vec::new());
    }
    if a.free_rank() > 1 {
        return Err(AbError::FreeRankTooLarge);
    }
    let dom_orders = a.orders();
    let cod_orders = b.orders();
    // Candidate columns per domain generator.
    let mut column_choices: Vec<Vec<Vec<BigInt>>> = Vec::new();
    for q in &dom_orders {
        let mut cols: Vec<Vec<BigInt>> = vec![Vec::new()];
        for e in &cod_orders {
            let vals = if q.is_zero() && e.is_zero() {
                vec![BigInt::one(), BigInt::from(-1)]
            } else {
                entry_values(q, e)?
            };
            let mut next = Vec::new();
            for c in &cols {
                for v in &vals {
                    let mut c2 = c.clone();
                    c2.push(v.clone());
                    next.push(c2);
                }
            }
            cols = next;
        }
        column_choices.push(cols);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; column_choices.len()];
    'outer: loop {
        let cols: Vec<Vec<BigInt>> = idx
            .iter()
            .enumerate()
            .map(|(j, &k)| column_choices[j][k].clone())
            .collect();
        let cand = AbHom {
            domain: a.clone(),
            codomain: b.clone(),
            matrix: IntMatrix::from_cols(cod_orders.len(), &cols),
        };
        if cand.is_isomorphism() {
            out.push(cand);
        }
        let mut pos = column_choices.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < column_choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    Ok(out)
}

pub fn automorphisms(a: &AbGroup) -> Result<Vec<AbHom>, AbError> {
    isomorphisms(a, a)
}
