//! Free tensor-algebra DGAs (T(V), ∂): word bases, differential matrices,
//! linear parts, truncation homology, boundary preimages, and morphisms.
//!
//! Generators live in degrees ≥ 1, so every word has degree ≥ its length
//! and the degree-0 slice of the algebra never enters any matrix.  The
//! differential follows ∂(x⊗y) = ∂x⊗y + (−1)^{|x|} x⊗∂y.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abgroup::AbGroup;
use crate::chaincx::{DegreeHomology, FreeChainComplex};
use crate::matrix::{self, IntMatrix};

/// Default cap on the size of a single-degree word basis; degree-1
/// generators make bases grow geometrically.
pub const DEFAULT_WORD_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DgaError {
    DuplicateGenerator(String),
    BadDegree(String),
    UnknownGenerator(String),
    /// An element mixes degrees or contains a word outside the requested
    /// truncation/degree slice.
    NotHomogeneous(String),
    WrongDegree { name: String, expected: usize, found: usize },
    /// ∂² ≠ 0, first witnessed on this generator.
    SquareNotZero(String),
    /// A morphism fails α∘∂ = ∂∘α, first witnessed on this generator.
    NotChainMap(String),
    /// Word-basis size exceeds the configured cap.
    ResourceBound { degree: usize, count: u128, cap: usize },
    /// The morphism's source/target does not match the expected DGA.
    MorphismMismatch,
}

impl fmt::Display for DgaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DgaError::DuplicateGenerator(n) => write!(f, "duplicate generator {n}"),
            DgaError::BadDegree(n) => write!(f, "generator {n} must have degree ≥ 1"),
            DgaError::UnknownGenerator(n) => write!(f, "unknown generator {n}"),
            DgaError::NotHomogeneous(what) => write!(f, "element is not homogeneous: {what}"),
            DgaError::WrongDegree { name, expected, found } => write!(
                f,
                "value for {name} has degree {found}, expected {expected}"
            ),
            DgaError::SquareNotZero(n) => write!(f, "∂²({n}) ≠ 0"),
            DgaError::NotChainMap(n) => write!(f, "morphism does not commute with ∂ on {n}"),
            DgaError::ResourceBound { degree, count, cap } => write!(
                f,
                "word basis at degree {degree} has {count} words, cap is {cap}"
            ),
            DgaError::MorphismMismatch => write!(f, "morphism endpoints do not match"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A tensor monomial: ordered generator indices, length ≥ 1 in any element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorWord(pub Vec<usize>);

impl TensorWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

// canonical order: by length, then lexicographic in declaration order
impl Ord for TensorWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TensorWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite ℤ-linear combination of tensor words, canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgElement {
    terms: BTreeMap<TensorWord, BigInt>,
}

impl AlgElement {
    pub fn zero() -> Self {
        AlgElement { terms: BTreeMap::new() }
    }

    pub fn generator(id: usize) -> Self {
        AlgElement::term(BigInt::one(), vec![id])
    }

    pub fn term(coeff: BigInt, word: Vec<usize>) -> Self {
        let mut e = AlgElement::zero();
        e.add_term(coeff, TensorWord(word));
        e
    }

    pub fn add_term(&mut self, coeff: BigInt, word: TensorWord) {
        if coeff.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgElement {
        let mut out = AlgElement::zero();
        for (w, c) in self.terms() {
            out.add_term(-c.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> AlgElement {
        let mut out = AlgElement::zero();
        for (w, c) in self.terms() {
            out.add_term(c * k, w.clone());
        }
        out
    }

    /// Tensor product (word concatenation, bilinear, no signs).
    pub fn mul(&self, other: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                let mut word = w1.0.clone();
                word.extend_from_slice(&w2.0);
                out.add_term(c1 * c2, TensorWord(word));
            }
        }
        out
    }
}

/// A free DGA: the tensor algebra on named generators of degrees ≥ 1 with
/// a degree −1 differential given on generators and extended by Leibniz.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeDGA {
    gens: Vec<Generator>,
    by_name: BTreeMap<String, usize>,
    diff: Vec<AlgElement>,
    word_cap: usize,
}

impl FreeDGA {
    pub fn new() -> Self {
        FreeDGA {
            gens: Vec::new(),
            by_name: BTreeMap::new(),
            diff: Vec::new(),
            word_cap: DEFAULT_WORD_CAP,
        }
    }

    /// Convenience: declare all generators at once (name, degree), zero diff.
    pub fn with_generators(gens: &[(&str, usize)]) -> Result<Self, DgaError> {
        let mut d = FreeDGA::new();
        for (name, degree) in gens {
            d.add_generator(name, *degree)?;
        }
        Ok(d)
    }

    pub fn add_generator(&mut self, name: &str, degree: usize) -> Result<usize, DgaError> {
        if degree == 0 {
            return Err(DgaError::BadDegree(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(DgaError::DuplicateGenerator(name.to_string()));
        }
        let id = self.gens.len();
        self.gens.push(Generator { name: name.to_string(), degree });
        self.by_name.insert(name.to_string(), id);
        self.diff.push(AlgElement::zero());
        Ok(id)
    }

    pub fn set_word_cap(&mut self, cap: usize) {
        self.word_cap = cap;
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: usize) -> &Generator {
        &self.gens[id]
    }

    pub fn gen_id(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn gens_of_degree(&self, degree: usize) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| self.gens[i].degree == degree)
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn diff_of(&self, id: usize) -> &AlgElement {
        &self.diff[id]
    }

    /// Sets ∂(generator) to a homogeneous element of degree one less.
    pub fn set_diff(&mut self, name: &str, value: AlgElement) -> Result<(), DgaError> {
        let id = self
            .gen_id(name)
            .ok_or_else(|| DgaError::UnknownGenerator(name.to_string()))?;
        let expected = self.gens[id].degree - 1;
        if let Some(found) = self.element_degree(&value)? {
            if found != expected {
                return Err(DgaError::WrongDegree {
                    name: name.to_string(),
                    expected,
                    found,
                });
            }
        }
        self.diff[id] = value;
        Ok(())
    }

    pub fn word_degree(&self, w: &TensorWord) -> Result<usize, DgaError> {
        let mut total = 0usize;
        for &g in &w.0 {
            let gen = self
                .gens
                .get(g)
                .ok_or_else(|| DgaError::UnknownGenerator(format!("#{g}")))?;
            total += gen.degree;
        }
        Ok(total)
    }

    /// Degree of a homogeneous element (`None` for zero).
    pub fn element_degree(&self, e: &AlgElement) -> Result<Option<usize>, DgaError> {
        let mut degree = None;
        for (w, _) in e.terms() {
            let d = self.word_degree(w)?;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(DgaError::NotHomogeneous(format!(
                        "mixes degrees {prev} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Leibniz extension of ∂ to an arbitrary element.
    pub fn apply_diff(&self, e: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (w, c) in e.terms() {
            let mut sign_exp = 0usize;
            for (i, &g) in w.0.iter().enumerate() {
                let dv = &self.diff[g];
                if !dv.is_zero() {
                    let sign = if sign_exp % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    for (dw, dc) in dv.terms() {
                        let mut word = Vec::with_capacity(w.0.len() - 1 + dw.0.len());
                        word.extend_from_slice(&w.0[..i]);
                        word.extend_from_slice(&dw.0);
                        word.extend_from_slice(&w.0[i + 1..]);
                        out.add_term(c * dc * &sign, TensorWord(word));
                    }
                }
                sign_exp += self.gens[g].degree;
            }
        }
        out
    }

    /// Checks every ∂-value's degree and ∂² = 0 on every generator.
    pub fn validate(&self) -> Result<(), DgaError> {
        for (id, g) in self.gens.iter().enumerate() {
            let value = &self.diff[id];
            if let Some(found) = self.element_degree(value)? {
                if found + 1 != g.degree {
                    return Err(DgaError::WrongDegree {
                        name: g.name.clone(),
                        expected: g.degree - 1,
                        found,
                    });
                }
            }
            if !self.apply_diff(value).is_zero() {
                return Err(DgaError::SquareNotZero(g.name.clone()));
            }
        }
        Ok(())
    }

    /// Sub-DGA generated by the generators of degree ≤ m (always closed
    /// under ∂ because differentials lower degree).
    pub fn truncate(&self, m: usize) -> FreeDGA {
        let mut out = FreeDGA::new();
        out.word_cap = self.word_cap;
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        for (id, g) in self.gens.iter().enumerate() {
            if g.degree <= m {
                let new_id = out.add_generator(&g.name, g.degree).expect("names stay unique");
                remap.insert(id, new_id);
            }
        }
        for (id, g) in self.gens.iter().enumerate() {
            if g.degree <= m {
                let mut v = AlgElement::zero();
                for (w, c) in self.diff[id].terms() {
                    let word: Vec<usize> = w.0.iter().map(|x| remap[x]).collect();
                    v.add_term(c.clone(), TensorWord(word));
                }
                out.diff[remap[&id]] = v;
                let _ = g;
            }
        }
        out
    }

    /// Number of degree-n words over generators of degree ≤ m (capped sum).
    pub fn word_count(&self, n: usize, m: usize) -> u128 {
        if n == 0 {
            return 0;
        }
        // ways[d] counts words (including the empty one at d = 0)
        let mut ways = vec![0u128; n + 1];
        ways[0] = 1;
        for d in 1..=n {
            for g in &self.gens {
                if g.degree <= m && g.degree <= d {
                    ways[d] = ways[d].saturating_add(ways[d - g.degree]);
                }
            }
        }
        ways[n]
    }

    /// All degree-n words over generators of degree ≤ m, canonically ordered
    /// (length, then lexicographic by declaration order).
    pub fn word_basis(&self, n: usize, m: usize) -> Result<Vec<TensorWord>, DgaError> {
        let count = self.word_count(n, m);
        if count > self.word_cap as u128 {
            return Err(DgaError::ResourceBound { degree: n, count, cap: self.word_cap });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut prefix = Vec::new();
        self.enumerate_words(n, m, &mut prefix, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate_words(
        &self,
        remaining: usize,
        m: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<TensorWord>,
    ) {
        if remaining == 0 {
            if !prefix.is_empty() {
                out.push(TensorWord(prefix.clone()));
            }
            return;
        }
        for id in 0..self.gens.len() {
            let d = self.gens[id].degree;
            if d <= m && d <= remaining {
                prefix.push(id);
                self.enumerate_words(remaining - d, m, prefix, out);
                prefix.pop();
            }
        }
    }

    /// Writes an element as a coordinate vector over a word basis.
    pub fn element_to_vec(
        &self,
        e: &AlgElement,
        basis: &[TensorWord],
    ) -> Result<Vec<BigInt>, DgaError> {
        let index: BTreeMap<&TensorWord, usize> =
            basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut v = vec![BigInt::zero(); basis.len()];
        for (w, c) in e.terms() {
            let i = *index.get(w).ok_or_else(|| {
                DgaError::NotHomogeneous(format!(
                    "word of degree {} outside the requested slice",
                    self.word_degree(w).unwrap_or(0)
                ))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn vec_to_element(&self, v: &[BigInt], basis: &[TensorWord]) -> AlgElement {
        let mut e = AlgElement::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(c.clone(), basis[i].clone());
        }
        e
    }

    /// Matrix of ∂: T_n(V_≤m) → T_{n−1}(V_≤m) in canonical word bases.
    pub fn diff_matrix(&self, n: usize, m: usize) -> Result<IntMatrix, DgaError> {
        let cols_basis = self.word_basis(n, m)?;
        let rows_basis = if n == 0 { Vec::new() } else { self.word_basis(n - 1, m)? };
        let mut cols = Vec::with_capacity(cols_basis.len());
        for w in &cols_basis {
            let img = self.apply_diff(&AlgElement::term(BigInt::one(), w.0.clone()));
            cols.push(self.element_to_vec(&img, &rows_basis)?);
        }
        Ok(IntMatrix::from_cols(rows_basis.len(), &cols))
    }

    /// The chain complex of indecomposables: length-1 terms of each ∂-value.
    pub fn linear_part(&self) -> FreeChainComplex {
        let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
        for g in &self.gens {
            *ranks.entry(g.degree).or_insert(0) += 1;
        }
        let mut diffs: BTreeMap<usize, IntMatrix> = BTreeMap::new();
        for n in 2..=self.max_degree() {
            let dom = self.gens_of_degree(n);
            let cod = self.gens_of_degree(n - 1);
            if dom.is_empty() || cod.is_empty() {
                continue;
            }
            let pos: BTreeMap<usize, usize> =
                cod.iter().enumerate().map(|(i, &g)| (g, i)).collect();
            let mut mat = IntMatrix::zero(cod.len(), dom.len());
            for (j, &g) in dom.iter().enumerate() {
                for (w, c) in self.diff[g].terms() {
                    if w.len() == 1 {
                        mat.set(pos[&w.0[0]], j, c.clone());
                    }
                }
            }
            diffs.insert(n, mat);
        }
        FreeChainComplex::new(ranks, diffs).expect("linear part shapes are consistent")
    }

    /// Homology of the degree-n slice of T(V_≤m), with word-level
    /// projection and lifting.
    pub fn truncation_homology(&self, m: usize, n: usize) -> Result<TruncationHomology, DgaError> {
        let words = self.word_basis(n, m)?;
        let d_n = self.diff_matrix(n, m)?;
        let d_up = self.diff_matrix(n + 1, m)?;
        let mut ranks = BTreeMap::new();
        if n >= 1 {
            ranks.insert(n - 1, d_n.rows());
        }
        ranks.insert(n, d_n.cols());
        ranks.insert(n + 1, d_up.cols());
        let complex = FreeChainComplex::new(
            ranks,
            [(n, d_n), (n + 1, d_up)].into_iter().collect(),
        )
        .expect("word-basis shapes are consistent");
        Ok(TruncationHomology {
            degree: n,
            max_gen_degree: m,
            words,
            homology: complex.homology(n),
        })
    }

    /// A preimage under ∂ within T(V_≤m): some x with ∂x = y, if y is a
    /// boundary there.  Deterministic (Smith-normal-form particular
    /// solution).
    pub fn boundary_preimage(
        &self,
        m: usize,
        y: &AlgElement,
    ) -> Result<Option<AlgElement>, DgaError> {
        let Some(n) = self.element_degree(y)? else {
            return Ok(Some(AlgElement::zero()));
        };
        let basis_n = self.word_basis(n, m)?;
        let basis_up = self.word_basis(n + 1, m)?;
        let d = self.diff_matrix(n + 1, m)?;
        let target = self.element_to_vec(y, &basis_n)?;
        Ok(matrix::solve(&d, &target).map(|x| self.vec_to_element(&x, &basis_up)))
    }

    /// Renders an element in the `.dga` expression grammar
    /// (`2 a1*a1 + b1`, `-c2 + 3 a1*b2`, `0`).
    pub fn render_element(&self, e: &AlgElement) -> String {
        if e.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (w, c)) in e.terms().enumerate() {
            let word: Vec<&str> = w.0.iter().map(|&g| self.gens[g].name.as_str()).collect();
            let mag = c.magnitude().to_string();
            let negative = c.sign() == num_bigint::Sign::Minus;
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push(' ');
            }
            out.push_str(&word.join("*"));
        }
        out
    }
}

impl Default for FreeDGA {
    fn default() -> Self {
        FreeDGA::new()
    }
}

/// Homology of one degree slice of a truncated tensor algebra, with the
/// word basis needed to move between elements and coordinates.
#[derive(Debug, Clone)]
pub struct TruncationHomology {
    pub degree: usize,
    pub max_gen_degree: usize,
    pub words: Vec<TensorWord>,
    pub homology: DegreeHomology,
}

impl TruncationHomology {
    pub fn group(&self) -> &AbGroup {
        self.homology.group()
    }

    /// Canonical class of a cycle element.
    pub fn project(&self, dga: &FreeDGA, e: &AlgElement) -> Result<Vec<BigInt>, DgaError> {
        let v = dga.element_to_vec(e, &self.words)?;
        self.homology
            .project_cycle(&v)
            .map_err(|_| DgaError::NotHomogeneous(String::from("element is not a cycle")))
    }

    /// A cycle element representing a canonical class.
    pub fn lift(&self, dga: &FreeDGA, class: &[BigInt]) -> AlgElement {
        dga.vec_to_element(&self.homology.lift_class(class), &self.words)
    }
}

/// A DGA morphism given on generators and extended multiplicatively.
#[derive(Debug, Clone)]
pub struct DgaMorphism {
    pub source: FreeDGA,
    pub target: FreeDGA,
    images: Vec<AlgElement>,
}

impl DgaMorphism {
    /// Builds a morphism from generator images (in the target's algebra);
    /// generators without an entry map to zero.  Degree preservation is
    /// checked here, the chain-map law in [`validate`](Self::validate).
    pub fn new(
        source: FreeDGA,
        target: FreeDGA,
        images: &BTreeMap<String, AlgElement>,
    ) -> Result<Self, DgaError> {
        let mut stored = vec![AlgElement::zero(); source.generators().len()];
        for (name, value) in images {
            let id = source
                .gen_id(name)
                .ok_or_else(|| DgaError::UnknownGenerator(name.clone()))?;
            let expected = source.generator(id).degree;
            if let Some(found) = target.element_degree(value)? {
                if found != expected {
                    return Err(DgaError::WrongDegree {
                        name: name.clone(),
                        expected,
                        found,
                    });
                }
            }
            stored[id] = value.clone();
        }
        Ok(DgaMorphism { source, target, images: stored })
    }

    pub fn identity(d: &FreeDGA) -> Self {
        let images = (0..d.generators().len())
            .map(AlgElement::generator)
            .collect();
        DgaMorphism { source: d.clone(), target: d.clone(), images }
    }

    pub fn image_of(&self, id: usize) -> &AlgElement {
        &self.images[id]
    }

    /// Multiplicative extension to an arbitrary element of the source.
    pub fn apply(&self, e: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (w, c) in e.terms() {
            let mut prod = AlgElement::term(c.clone(), Vec::new());
            for &g in &w.0 {
                prod = prod.mul(&self.images[g]);
                if prod.is_zero() {
                    break;
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Checks α∘∂ = ∂∘α on every generator, naming the first violation.
    pub fn validate(&self) -> Result<(), DgaError> {
        for (id, g) in self.source.generators().iter().enumerate() {
            let lhs = self.apply(self.source.diff_of(id));
            let rhs = self.target.apply_diff(&self.images[id]);
            if lhs != rhs {
                return Err(DgaError::NotChainMap(g.name.clone()));
            }
        }
        Ok(())
    }

    /// Per-degree matrices of the induced map on indecomposables
    /// (length-1 terms of each image), a chain map of linear parts.
    pub fn linear_part(&self) -> BTreeMap<usize, IntMatrix> {
        let mut out = BTreeMap::new();
        let top = self.source.max_degree().max(self.target.max_degree());
        for n in 1..=top {
            let dom = self.source.gens_of_degree(n);
            let cod = self.target.gens_of_degree(n);
            let pos: BTreeMap<usize, usize> =
                cod.iter().enumerate().map(|(i, &g)| (g, i)).collect();
            let mut mat = IntMatrix::zero(cod.len(), dom.len());
            for (j, &g) in dom.iter().enumerate() {
                for (w, c) in self.images[g].terms() {
                    if w.len() == 1 {
                        mat.set(pos[&w.0[0]], j, c.clone());
                    }
                }
            }
            out.insert(n, mat);
        }
        out
    }

    /// Induced map H_n(V,d) → H_n(W,d′) on linear-part homology.
    pub fn induced_linear_h(&self, n: usize) -> crate::abgroup::AbHom {
        let source_h = self.source.linear_part().homology(n);
        let target_h = self.target.linear_part().homology(n);
        let lin = self.linear_part();
        let map = lin
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zero(self.target.gens_of_degree(n).len(), self.source.gens_of_degree(n).len()));
        let gens = source_h.generator_cycles();
        let mut cols = Vec::with_capacity(gens.cols());
        for j in 0..gens.cols() {
            let image = map.mul_vec(&gens.col(j));
            cols.push(
                target_h
                    .project_cycle(&image)
                    .expect("chain map sends cycles to cycles"),
            );
        }
        let mat = IntMatrix::from_cols(target_h.group().generator_count(), &cols);
        crate::abgroup::AbHom::new(source_h.group().clone(), target_h.group().clone(), mat)
            .expect("projection of a homomorphism is well defined")
    }

    /// Induced map H_n(T(V)) → H_n(T(W)) computed on the stable truncation
    /// (generators of degree ≤ n+1).
    pub fn induced_h(&self, n: usize) -> Result<crate::abgroup::AbHom, DgaError> {
        let sh = self.source.truncation_homology(n + 1, n)?;
        let th = self.target.truncation_homology(n + 1, n)?;
        let count = sh.group().generator_count();
        let mut cols = Vec::with_capacity(count);
        for k in 0..count {
            let mut class = vec![BigInt::zero(); count];
            class[k] = BigInt::one();
            let cycle = sh.lift(&self.source, &class);
            let image = self.apply(&cycle);
            cols.push(th.project(&self.target, &image)?);
        }
        let mat = IntMatrix::from_cols(th.group().generator_count(), &cols);
        crate::abgroup::AbHom::new(sh.group().clone(), th.group().clone(), mat)
            .map_err(|_| DgaError::MorphismMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Example fixture: generators a1,a2 (1), b1,b2 (2), c1,c2 (3),
    /// e1,e2 (4); `linear_c1` adds the linear term `2 b1` to ∂c1.
    fn tv(c1_coeff: i64, b2_coeff: i64, linear_c1: bool) -> FreeDGA {
        let mut d = FreeDGA::with_generators(&[
            ("a1", 1),
            ("a2", 1),
            ("b1", 2),
            ("b2", 2),
            ("c1", 3),
            ("c2", 3),
            ("e1", 4),
            ("e2", 4),
        ])
        .unwrap();
        let id = |n: &str| d.gen_id(n).unwrap();
        let (a1, a2, b1, c2) = (id("a1"), id("a2"), id("b1"), id("c2"));
        d.set_diff("b2", AlgElement::term(BigInt::from(b2_coeff), vec![a2]))
            .unwrap();
        let mut dc1 = AlgElement::term(BigInt::from(c1_coeff), vec![a1, a1]);
        if linear_c1 {
            dc1 = dc1.add(&AlgElement::term(BigInt::from(2), vec![b1]));
        }
        d.set_diff("c1", dc1).unwrap();
        d.set_diff("e1", AlgElement::term(BigInt::from(2), vec![c2]))
            .unwrap();
        d.set_diff("e2", AlgElement::term(BigInt::one(), vec![b1, a1]))
            .unwrap();
        d.validate().unwrap();
        d
    }

    #[test]
    fn word_basis_examples() {
        let d = FreeDGA::with_generators(&[("a", 1), ("b", 2)]).unwrap();
        let names = |ws: &[TensorWord]| -> Vec<Vec<usize>> {
            ws.iter().map(|w| w.0.clone()).collect()
        };
        assert_eq!(names(&d.word_basis(2, 2).unwrap()), vec![vec![1], vec![0, 0]]);
        assert_eq!(
            names(&d.word_basis(3, 2).unwrap()),
            vec![vec![0, 1], vec![1, 0], vec![0, 0, 0]]
        );
        let t = tv(2, 1, false);
        let basis = t.word_basis(2, 1).unwrap();
        assert_eq!(
            names(&basis),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn word_count_closed_form_for_degree_one_alphabet() {
        let d = FreeDGA::with_generators(&[("x", 1), ("y", 1), ("z", 1)]).unwrap();
        for n in 1..=6usize {
            assert_eq!(d.word_count(n, 1), 3u128.pow(n as u32));
        }
    }

    #[test]
    fn word_cap_is_enforced() {
        let mut d = FreeDGA::with_generators(&[("x", 1), ("y", 1)]).unwrap();
        d.set_word_cap(10);
        match d.word_basis(5, 1) {
            Err(DgaError::ResourceBound { degree: 5, count: 32, cap: 10 }) => {}
            other => panic!("expected resource bound, got {other:?}"),
        }
    }

    #[test]
    fn apply_diff_matches_table_and_squares_to_zero() {
        let d = tv(2, 1, false);
        let e2 = AlgElement::generator(d.gen_id("e2").unwrap());
        let de2 = d.apply_diff(&e2);
        let expected = AlgElement::term(
            BigInt::one(),
            vec![d.gen_id("b1").unwrap(), d.gen_id("a1").unwrap()],
        );
        assert_eq!(de2, expected);
        assert!(d.apply_diff(&de2).is_zero());

        // Koszul sign: ∂(a1⊗b2) = −a1⊗a2 (a1 has odd degree)
        let a1 = d.gen_id("a1").unwrap();
        let b2 = d.gen_id("b2").unwrap();
        let a2 = d.gen_id("a2").unwrap();
        let x = AlgElement::term(BigInt::one(), vec![a1, b2]);
        assert_eq!(d.apply_diff(&x), AlgElement::term(BigInt::from(-1), vec![a1, a2]));
    }

    #[test]
    fn diff_matrix_entries_and_dd_zero() {
        let d = tv(2, 1, false);
        let basis3 = d.word_basis(3, 3).unwrap();
        let basis2 = d.word_basis(2, 3).unwrap();
        let m = d.diff_matrix(3, 3).unwrap();
        let col = basis3
            .iter()
            .position(|w| w.0 == vec![d.gen_id("c1").unwrap()])
            .unwrap();
        let row = basis2
            .iter()
            .position(|w| w.0 == vec![d.gen_id("a1").unwrap(), d.gen_id("a1").unwrap()])
            .unwrap();
        assert_eq!(*m.get(row, col), BigInt::from(2));
        for n in 2..=4 {
            let a = d.diff_matrix(n - 1, 4).unwrap();
            let b = d.diff_matrix(n, 4).unwrap();
            assert!(a.mul(&b).is_zero());
        }
    }

    #[test]
    fn linear_part_strips_decomposables() {
        let d = tv(2, 1, false);
        let lp = d.linear_part();
        lp.validate().unwrap();
        // d4: e1 ↦ 2c2, e2 ↦ 0 — columns in declaration order (e1, e2),
        // rows (c1, c2)
        assert_eq!(lp.diff(4), IntMatrix::from_i64(&[&[0, 0], &[2, 0]]));
        assert!(lp.diff(3).is_zero());
        assert_eq!(lp.diff(2), IntMatrix::from_i64(&[&[0, 0], &[0, 1]]));
        // repaired variant carries the linear term 2b1 in ∂c1
        let d = tv(2, 1, true);
        assert_eq!(lp.diff(4), d.linear_part().diff(4));
        assert_eq!(d.linear_part().diff(3), IntMatrix::from_i64(&[&[2, 0], &[0, 0]]));
    }

    #[test]
    fn truncation_homology_examples() {
        let d = FreeDGA::with_generators(&[("a", 2)]).unwrap();
        assert_eq!(*d.truncation_homology(2, 2).unwrap().group(), AbGroup::free(1));
        assert_eq!(*d.truncation_homology(2, 4).unwrap().group(), AbGroup::free(1));
        assert_eq!(*d.truncation_homology(2, 3).unwrap().group(), AbGroup::trivial());

        // degree-2 slice of T(V_≤1): the four a⊗a words, no boundaries
        let t = tv(2, 1, false);
        assert_eq!(*t.truncation_homology(1, 2).unwrap().group(), AbGroup::free(4));
    }

    #[test]
    fn boundary_preimage_examples() {
        let d = tv(2, 1, false);
        let zero = d.boundary_preimage(2, &AlgElement::zero()).unwrap().unwrap();
        assert!(zero.is_zero());

        let a2 = AlgElement::generator(d.gen_id("a2").unwrap());
        let x = d.boundary_preimage(2, &a2).unwrap().unwrap();
        assert_eq!(x, AlgElement::generator(d.gen_id("b2").unwrap()));
        assert_eq!(d.apply_diff(&x), a2);

        let a1 = AlgElement::generator(d.gen_id("a1").unwrap());
        assert!(d.boundary_preimage(2, &a1).unwrap().is_none());
    }

    #[test]
    fn validate_rejects_bad_square() {
        let mut d = FreeDGA::with_generators(&[("a", 1), ("b", 2), ("c", 3)]).unwrap();
        d.set_diff("b", AlgElement::generator(0)).unwrap();
        d.set_diff("c", AlgElement::generator(1)).unwrap();
        assert_eq!(d.validate(), Err(DgaError::SquareNotZero(String::from("c"))));
    }

    #[test]
    fn morphism_identity_and_doubling() {
        let d = tv(2, 1, false);
        let id = DgaMorphism::identity(&d);
        id.validate().unwrap();
        let h = id.induced_h(2).unwrap();
        assert!(h.is_isomorphism());

        // zero-diff DGAs, doubling a degree-2 generator: ×2 on ℤ
        let z = FreeDGA::with_generators(&[("u", 2)]).unwrap();
        let double = DgaMorphism::new(
            z.clone(),
            z.clone(),
            &[(String::from("u"), AlgElement::term(BigInt::from(2), vec![0]))]
                .into_iter()
                .collect(),
        )
        .unwrap();
        double.validate().unwrap();
        let h = double.induced_h(2).unwrap();
        assert_eq!(*h.domain(), AbGroup::free(1));
        assert_eq!(*h.matrix(), IntMatrix::from_i64(&[&[2]]));
    }

    #[test]
    fn morphism_violation_names_generator() {
        let mut src = FreeDGA::with_generators(&[("a", 1), ("b", 2)]).unwrap();
        src.set_diff("b", AlgElement::generator(0)).unwrap();
        let tgt = src.clone();
        // send b to zero but a to itself: ∂α(b) = 0 ≠ α(∂b) = a
        let images = [(String::from("a"), AlgElement::generator(0))]
            .into_iter()
            .collect();
        let alpha = DgaMorphism::new(src, tgt, &images).unwrap();
        assert_eq!(alpha.validate(), Err(DgaError::NotChainMap(String::from("b"))));
    }

    #[test]
    fn render_round_style() {
        let d = tv(2, 1, true);
        let c1 = d.gen_id("c1").unwrap();
        assert_eq!(d.render_element(d.diff_of(c1)), "2 b1 + 2 a1*a1");
        assert_eq!(d.render_element(&AlgElement::zero()), "0");
        let neg = AlgElement::term(BigInt::from(-1), vec![c1]);
        assert_eq!(d.render_element(&neg), "-c1");
    }

    #[test]
    fn truncate_keeps_low_degrees() {
        let d = tv(2, 1, true);
        let t = d.truncate(2);
        assert_eq!(t.generators().len(), 4);
        t.validate().unwrap();
        assert_eq!(
            t.render_element(t.diff_of(t.gen_id("b2").unwrap())),
            "a2"
        );
    }
}
