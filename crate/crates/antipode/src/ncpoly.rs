//! Free-algebra words, noncommutative polynomials, and tensor-square/cube
//! elements — the carrier representation for H, H⊗H and H⊗H⊗H.
//!
//! Nothing in this module knows about relations: products are free
//! concatenation. Quotient multiplication (rewriting) lives in
//! [`crate::rewrite`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::KernelError;
use crate::scalar::{FieldDescriptor, Scalar};

/// One generator symbol. Formal inverses are ordinary symbols flagged
/// `is_inverse`, displayed as `base^-1` and tamed by rewrite rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolInfo {
    base: String,
    is_inverse: bool,
    grade: u64,
    filtration: u64,
    paired_inverse: Option<u32>,
}

impl SymbolInfo {
    pub fn display_name(&self) -> String {
        if self.is_inverse {
            format!("{}^-1", self.base)
        } else {
            self.base.clone()
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn is_inverse(&self) -> bool {
        self.is_inverse
    }

    pub fn grade(&self) -> u64 {
        self.grade
    }

    pub fn filtration(&self) -> u64 {
        self.filtration
    }

    pub fn paired_inverse(&self) -> Option<u32> {
        self.paired_inverse
    }
}

/// Ordered list of generator symbols. The listing order is the symbol
/// precedence used by the monomial order (earlier = smaller).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<SymbolInfo>,
}

pub struct AlphabetBuilder {
    symbols: Vec<SymbolInfo>,
}

impl AlphabetBuilder {
    fn check_fresh(&self, name: &str) -> Result<(), KernelError> {
        if name.is_empty() {
            return Err(KernelError::InvalidPresentation {
                context: "alphabet".into(),
                message: "generator names must be non-empty".into(),
            });
        }
        if self.symbols.iter().any(|s| s.base == name) {
            return Err(KernelError::InvalidPresentation {
                context: "alphabet".into(),
                message: format!("duplicate generator name `{}`", name),
            });
        }
        Ok(())
    }

    /// Adds a plain symbol with the given grade and filtration weights.
    pub fn symbol(&mut self, name: &str, grade: u64, filtration: u64) -> Result<u32, KernelError> {
        self.check_fresh(name)?;
        let id = self.symbols.len() as u32;
        self.symbols.push(SymbolInfo {
            base: name.to_string(),
            is_inverse: false,
            grade,
            filtration,
            paired_inverse: None,
        });
        Ok(id)
    }

    /// Adds an invertible symbol together with its formal inverse, listed
    /// immediately after it. Paired symbols carry weight 0 in both gradings
    /// (they are group-like generators).
    pub fn invertible_symbol(&mut self, name: &str) -> Result<(u32, u32), KernelError> {
        self.check_fresh(name)?;
        let id = self.symbols.len() as u32;
        let inv_id = id + 1;
        self.symbols.push(SymbolInfo {
            base: name.to_string(),
            is_inverse: false,
            grade: 0,
            filtration: 0,
            paired_inverse: Some(inv_id),
        });
        self.symbols.push(SymbolInfo {
            base: name.to_string(),
            is_inverse: true,
            grade: 0,
            filtration: 0,
            paired_inverse: Some(id),
        });
        Ok((id, inv_id))
    }

    pub fn build(self) -> Arc<Alphabet> {
        Arc::new(Alphabet {
            symbols: self.symbols,
        })
    }
}

/// Which per-symbol weight a degree computation sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Grade,
    Filtration,
    Length,
}

impl Alphabet {
    pub fn builder() -> AlphabetBuilder {
        AlphabetBuilder {
            symbols: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol_info(&self, id: u32) -> &SymbolInfo {
        &self.symbols[id as usize]
    }

    pub fn symbols(&self) -> impl Iterator<Item = (u32, &SymbolInfo)> {
        self.symbols.iter().enumerate().map(|(i, s)| (i as u32, s))
    }

    /// Looks up a non-inverse symbol by its base name.
    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.symbols
            .iter()
            .position(|s| s.base == name && !s.is_inverse)
            .map(|i| i as u32)
    }

    /// Total weight of a word under the chosen weighting.
    pub fn weighted_degree(&self, w: &Word, kind: WeightKind) -> u64 {
        match kind {
            WeightKind::Length => w.len() as u64,
            WeightKind::Grade => w
                .ids()
                .iter()
                .map(|&id| self.symbols[id as usize].grade)
                .sum(),
            WeightKind::Filtration => w
                .ids()
                .iter()
                .map(|&id| self.symbols[id as usize].filtration)
                .sum(),
        }
    }

    /// The monomial order: weighted degree-lexicographic. Compares total
    /// grade-weight first, then word length, then symbols left to right by
    /// alphabet precedence (earlier-listed symbols are smaller). Total,
    /// well-founded, and compatible with concatenation on both sides.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> std::cmp::Ordering {
        let ga = self.weighted_degree(a, WeightKind::Grade);
        let gb = self.weighted_degree(b, WeightKind::Grade);
        ga.cmp(&gb)
            .then_with(|| a.len().cmp(&b.len()))
            .then_with(|| a.ids().cmp(b.ids()))
    }

    /// Renders a word, collapsing runs of a symbol into powers: `K·K` shows
    /// as `K^2`, `K⁻¹·K⁻¹` as `K^-2`, the empty word as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut pieces: Vec<String> = Vec::new();
        let ids = w.ids();
        let mut i = 0;
        while i < ids.len() {
            let id = ids[i];
            let mut run = 1usize;
            while i + run < ids.len() && ids[i + run] == id {
                run += 1;
            }
            let info = &self.symbols[id as usize];
            let piece = match (info.is_inverse, run) {
                (false, 1) => info.base.clone(),
                (false, n) => format!("{}^{}", info.base, n),
                (true, 1) => format!("{}^-1", info.base),
                (true, n) => format!("{}^-{}", info.base, n),
            };
            pieces.push(piece);
            i += run;
        }
        pieces.join("*")
    }
}

/// A monomial: a finite sequence of alphabet symbols. The empty word is the
/// unit. The derived `Ord` is an arbitrary deterministic key order used for
/// map-based merging; the semantic monomial order is [`Alphabet::cmp_words`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(id: u32) -> Self {
        Word(vec![id])
    }

    pub fn from_ids(ids: Vec<u32>) -> Self {
        Word(ids)
    }

    pub fn ids(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut ids = Vec::with_capacity(self.0.len() + other.0.len());
        ids.extend_from_slice(&self.0);
        ids.extend_from_slice(&other.0);
        Word(ids)
    }

    pub fn repeated(&self, n: usize) -> Word {
        let mut ids = Vec::with_capacity(self.0.len() * n);
        for _ in 0..n {
            ids.extend_from_slice(&self.0);
        }
        Word(ids)
    }

    /// First position at which `factor` occurs as a contiguous subword.
    pub fn find_factor(&self, factor: &Word) -> Option<usize> {
        if factor.is_empty() || factor.len() > self.len() {
            return None;
        }
        self.0
            .windows(factor.len())
            .position(|win| win == factor.ids())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }
}

/// The binary operations exposed through the fallible polynomial entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    ConcatMul,
}

/// A noncommutative polynomial: finite map Word → Scalar in canonical form
/// (no zero coefficients, terms sorted leading-first by the monomial order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    alphabet: Arc<Alphabet>,
    field: FieldDescriptor,
    terms: Vec<(Word, Scalar)>,
}

impl NcPoly {
    pub fn zero(alphabet: &Arc<Alphabet>, field: &FieldDescriptor) -> Self {
        NcPoly {
            alphabet: Arc::clone(alphabet),
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>, field: &FieldDescriptor) -> Self {
        NcPoly::monomial(alphabet, field, Word::empty(), Scalar::one(field))
    }

    pub fn monomial(
        alphabet: &Arc<Alphabet>,
        field: &FieldDescriptor,
        word: Word,
        coeff: Scalar,
    ) -> Self {
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![(word, coeff)]
        };
        NcPoly {
            alphabet: Arc::clone(alphabet),
            field: field.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (word, coefficient) pairs, merging
    /// duplicates and normalizing the representation.
    pub fn from_terms(
        alphabet: &Arc<Alphabet>,
        field: &FieldDescriptor,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Self {
        let mut map: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(w) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&c);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        let mut terms: Vec<(Word, Scalar)> = map.into_iter().collect();
        let alph = Arc::clone(alphabet);
        terms.sort_by(|(a, _), (b, _)| alph.cmp_words(b, a));
        NcPoly {
            alphabet: alph,
            field: field.clone(),
            terms,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms(&self) -> &[(Word, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        self.terms.first().map(|(w, c)| (w, c))
    }

    pub fn coeff(&self, word: &Word) -> Scalar {
        self.terms
            .iter()
            .find(|(w, _)| w == word)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| Scalar::zero(&self.field))
    }

    fn assert_compatible(&self, other: &NcPoly, op: &str) {
        assert!(
            self.alphabet == other.alphabet,
            "polynomial {} across different alphabets",
            op
        );
        assert!(
            self.field == other.field,
            "polynomial {} across different fields: {} vs {}",
            op,
            self.field.describe(),
            other.field.describe()
        );
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        self.assert_compatible(other, "addition");
        NcPoly::from_terms(
            &self.alphabet,
            &self.field,
            self.terms
                .iter()
                .cloned()
                .chain(other.terms.iter().cloned()),
        )
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            alphabet: Arc::clone(&self.alphabet),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(&self.alphabet, &self.field);
        }
        NcPoly {
            alphabet: Arc::clone(&self.alphabet),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// Free product: concatenates words pairwise. No relations are applied.
    pub fn concat_mul(&self, other: &NcPoly) -> NcPoly {
        self.assert_compatible(other, "multiplication");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                terms.push((wa.concat(wb), ca.mul(cb)));
            }
        }
        NcPoly::from_terms(&self.alphabet, &self.field, terms)
    }

    /// Applies a linear map defined on words, summing the images.
    pub fn map_linear(&self, mut f: impl FnMut(&Word) -> NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero(&self.alphabet, &self.field);
        for (w, c) in &self.terms {
            acc = acc.add(&f(w).scale(c));
        }
        acc
    }
}

/// Fallible polynomial arithmetic for callers outside the kernel: reports
/// alphabet/field mismatches as errors instead of panicking.
pub fn poly_arith(a: &NcPoly, b: &NcPoly, op: PolyOp) -> Result<NcPoly, KernelError> {
    if a.alphabet() != b.alphabet() {
        return Err(KernelError::InvalidPresentation {
            context: "polynomial arithmetic".into(),
            message: "operands use different alphabets".into(),
        });
    }
    if a.field() != b.field() {
        return Err(KernelError::FieldMismatch {
            left: a.field().describe(),
            right: b.field().describe(),
        });
    }
    Ok(match op {
        PolyOp::Add => a.add(b),
        PolyOp::Sub => a.sub(b),
        PolyOp::ConcatMul => a.concat_mul(b),
    })
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(
            f,
            &self.alphabet,
            self.terms.iter().map(|(w, c)| (vec![w], c)),
        )
    }
}

/// Shared term renderer for plain and tensor polynomials. Each term is a
/// coefficient and a list of one, two or three word slots joined by `@`.
fn format_terms<'a, I>(f: &mut fmt::Formatter<'_>, alphabet: &Alphabet, terms: I) -> fmt::Result
where
    I: Iterator<Item = (Vec<&'a Word>, &'a Scalar)>,
{
    let mut wrote = false;
    for (slots, coeff) in terms {
        let coeff_str = coeff.to_string();
        let (sign_negative, mag) = match coeff_str.strip_prefix('-') {
            // A bare leading minus only counts as a sign when the rest has no
            // top-level structure (e.g. "-2", "-1/2", but not "(-q + 1)").
            Some(rest) if !coeff_str.starts_with("(-") => (true, rest.to_string()),
            _ => (false, coeff_str),
        };
        if wrote {
            f.write_str(if sign_negative { " - " } else { " + " })?;
        } else if sign_negative {
            f.write_str("-")?;
        }
        wrote = true;
        let slot_str = slots
            .iter()
            .map(|w| alphabet.format_word(w))
            .collect::<Vec<_>>()
            .join("@");
        let all_units = slots.iter().all(|w| w.is_empty());
        if mag == "1" && !all_units {
            f.write_str(&slot_str)?;
        } else if all_units {
            f.write_str(&mag)?;
        } else {
            write!(f, "{}*{}", mag, slot_str)?;
        }
    }
    if !wrote {
        f.write_str("0")?;
    }
    Ok(())
}

/// The binary operations exposed through the fallible tensor entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorOp {
    Add,
    Sub,
    ComponentwiseMul,
}

/// An element of H⊗H: finite map (Word, Word) → Scalar in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    alphabet: Arc<Alphabet>,
    field: FieldDescriptor,
    terms: Vec<((Word, Word), Scalar)>,
}

impl TensorPoly {
    pub fn zero(alphabet: &Arc<Alphabet>, field: &FieldDescriptor) -> Self {
        TensorPoly {
            alphabet: Arc::clone(alphabet),
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn from_terms(
        alphabet: &Arc<Alphabet>,
        field: &FieldDescriptor,
        terms: impl IntoIterator<Item = ((Word, Word), Scalar)>,
    ) -> Self {
        let mut map: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(k) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&c);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        let mut terms: Vec<((Word, Word), Scalar)> = map.into_iter().collect();
        let alph = Arc::clone(alphabet);
        terms.sort_by(|((a1, a2), _), ((b1, b2), _)| {
            alph.cmp_words(b1, a1).then_with(|| alph.cmp_words(b2, a2))
        });
        TensorPoly {
            alphabet: alph,
            field: field.clone(),
            terms,
        }
    }

    /// The simple tensor a⊗b, expanded bilinearly.
    pub fn of(a: &NcPoly, b: &NcPoly) -> Self {
        assert!(a.alphabet() == b.alphabet() && a.field() == b.field());
        let mut terms = Vec::with_capacity(a.terms().len() * b.terms().len());
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                terms.push(((wa.clone(), wb.clone()), ca.mul(cb)));
            }
        }
        TensorPoly::from_terms(a.alphabet(), a.field(), terms)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn terms(&self) -> &[((Word, Word), Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn assert_compatible(&self, other: &TensorPoly, op: &str) {
        assert!(
            self.alphabet == other.alphabet && self.field == other.field,
            "tensor {} across different alphabets or fields",
            op
        );
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        self.assert_compatible(other, "addition");
        TensorPoly::from_terms(
            &self.alphabet,
            &self.field,
            self.terms
                .iter()
                .cloned()
                .chain(other.terms.iter().cloned()),
        )
    }

    pub fn neg(&self) -> TensorPoly {
        TensorPoly {
            alphabet: Arc::clone(&self.alphabet),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> TensorPoly {
        if c.is_zero() {
            return TensorPoly::zero(&self.alphabet, &self.field);
        }
        TensorPoly {
            alphabet: Arc::clone(&self.alphabet),
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// (a⊗b)(c⊗d) = ac⊗bd by free concatenation in each slot. Callers that
    /// need quotient slots normalize afterwards (see `rewrite`).
    pub fn componentwise_mul(&self, other: &TensorPoly) -> TensorPoly {
        self.assert_compatible(other, "multiplication");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                terms.push(((a1.concat(b1), a2.concat(b2)), ca.mul(cb)));
            }
        }
        TensorPoly::from_terms(&self.alphabet, &self.field, terms)
    }
}

/// Fallible tensor arithmetic for callers outside the kernel.
pub fn tensor_arith(
    a: &TensorPoly,
    b: &TensorPoly,
    op: TensorOp,
) -> Result<TensorPoly, KernelError> {
    if a.alphabet() != b.alphabet() {
        return Err(KernelError::InvalidPresentation {
            context: "tensor arithmetic".into(),
            message: "operands use different alphabets".into(),
        });
    }
    if a.field() != b.field() {
        return Err(KernelError::FieldMismatch {
            left: a.field().describe(),
            right: b.field().describe(),
        });
    }
    Ok(match op {
        TensorOp::Add => a.add(b),
        TensorOp::Sub => a.sub(b),
        TensorOp::ComponentwiseMul => a.componentwise_mul(b),
    })
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(
            f,
            &self.alphabet,
            self.terms.iter().map(|((a, b), c)| (vec![a, b], c)),
        )
    }
}

/// An element of H⊗H⊗H, used for the coassociativity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3Poly {
    alphabet: Arc<Alphabet>,
    field: FieldDescriptor,
    terms: Vec<((Word, Word, Word), Scalar)>,
}

impl Tensor3Poly {
    pub fn zero(alphabet: &Arc<Alphabet>, field: &FieldDescriptor) -> Self {
        Tensor3Poly {
            alphabet: Arc::clone(alphabet),
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn from_terms(
        alphabet: &Arc<Alphabet>,
        field: &FieldDescriptor,
        terms: impl IntoIterator<Item = ((Word, Word, Word), Scalar)>,
    ) -> Self {
        let mut map: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(k) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(&c);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        let mut terms: Vec<((Word, Word, Word), Scalar)> = map.into_iter().collect();
        let alph = Arc::clone(alphabet);
        terms.sort_by(|((a1, a2, a3), _), ((b1, b2, b3), _)| {
            alph.cmp_words(b1, a1)
                .then_with(|| alph.cmp_words(b2, a2))
                .then_with(|| alph.cmp_words(b3, a3))
        });
        Tensor3Poly {
            alphabet: alph,
            field: field.clone(),
            terms,
        }
    }

    pub fn terms(&self) -> &[((Word, Word, Word), Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Tensor3Poly) -> Tensor3Poly {
        assert!(self.alphabet == other.alphabet && self.field == other.field);
        Tensor3Poly::from_terms(
            &self.alphabet,
            &self.field,
            self.terms
                .iter()
                .cloned()
                .chain(other.terms.iter().cloned()),
        )
    }

    pub fn sub(&self, other: &Tensor3Poly) -> Tensor3Poly {
        let negated = Tensor3Poly {
            alphabet: Arc::clone(&other.alphabet),
            field: other.field.clone(),
            terms: other
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        };
        self.add(&negated)
    }
}

impl fmt::Display for Tensor3Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(
            f,
            &self.alphabet,
            self.terms.iter().map(|((a, b, c), s)| (vec![a, b, c], s)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_alphabet() -> (Arc<Alphabet>, u32, u32, u32) {
        // E has grade 1; K and its inverse are weight-0 paired symbols.
        let mut b = Alphabet::builder();
        let e = b.symbol("E", 1, 1).unwrap();
        let (k, k_inv) = b.invertible_symbol("K").unwrap();
        (b.build(), e, k, k_inv)
    }

    #[test]
    fn concat_and_add() {
        let (alph, e, k, _) = test_alphabet();
        let f = FieldDescriptor::rationals();
        let pe = NcPoly::monomial(&alph, &f, Word::single(e), Scalar::one(&f));
        let pk = NcPoly::monomial(&alph, &f, Word::single(k), Scalar::one(&f));
        let ek = pe.concat_mul(&pk);
        assert_eq!(
            ek,
            NcPoly::monomial(&alph, &f, Word::from_ids(vec![e, k]), Scalar::one(&f))
        );
        // (K - 1) + (1 - K) = 0
        let one = NcPoly::one(&alph, &f);
        let diff = pk.sub(&one).add(&one.sub(&pk));
        assert!(diff.is_zero());
    }

    #[test]
    fn free_product_applies_no_relations() {
        let mut b = Alphabet::builder();
        let x = b.symbol("X", 1, 1).unwrap();
        let y = b.symbol("Y", 0, 1).unwrap();
        let alph = b.build();
        let f = FieldDescriptor::rationals();
        let px = NcPoly::monomial(&alph, &f, Word::single(x), Scalar::one(&f));
        let py = NcPoly::monomial(&alph, &f, Word::single(y), Scalar::one(&f));
        let sum = px.add(&py);
        let prod = sum.concat_mul(&px);
        let expected = NcPoly::from_terms(
            &alph,
            &f,
            vec![
                (Word::from_ids(vec![x, x]), Scalar::one(&f)),
                (Word::from_ids(vec![y, x]), Scalar::one(&f)),
            ],
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn monomial_order_orients_expected_relations() {
        use std::cmp::Ordering;
        let (alph, e, k, k_inv) = test_alphabet();
        // grade: KE and EK tie on weight and length, K > E decides.
        let ke = Word::from_ids(vec![k, e]);
        let ek = Word::from_ids(vec![e, k]);
        assert_eq!(alph.cmp_words(&ke, &ek), Ordering::Greater);
        // KK⁻¹ > 1 by length at weight 0.
        let kk = Word::from_ids(vec![k, k_inv]);
        assert_eq!(alph.cmp_words(&kk, &Word::empty()), Ordering::Greater);
        // K⁻¹E > EK⁻¹.
        let lhs = Word::from_ids(vec![k_inv, e]);
        let rhs = Word::from_ids(vec![e, k_inv]);
        assert_eq!(alph.cmp_words(&lhs, &rhs), Ordering::Greater);
        // Higher grade dominates length: E > K^3.
        let k3 = Word::from_ids(vec![k, k, k]);
        assert_eq!(alph.cmp_words(&Word::single(e), &k3), Ordering::Greater);
    }

    #[test]
    fn tensor_componentwise_mul() {
        let (alph, e, k, _) = test_alphabet();
        let f = FieldDescriptor::rationals();
        let one = Scalar::one(&f);
        // Δ(E) = E⊗1 + K⊗E multiplied by K⊗K: EK⊗K + K²⊗EK (free slots).
        let delta_e = TensorPoly::from_terms(
            &alph,
            &f,
            vec![
                ((Word::single(e), Word::empty()), one.clone()),
                ((Word::single(k), Word::single(e)), one.clone()),
            ],
        );
        let kk = TensorPoly::from_terms(
            &alph,
            &f,
            vec![((Word::single(k), Word::single(k)), one.clone())],
        );
        let prod = delta_e.componentwise_mul(&kk);
        let expected = TensorPoly::from_terms(
            &alph,
            &f,
            vec![
                ((Word::from_ids(vec![e, k]), Word::single(k)), one.clone()),
                (
                    (Word::from_ids(vec![k, k]), Word::from_ids(vec![e, k])),
                    one.clone(),
                ),
            ],
        );
        assert_eq!(prod, expected);
        // Unit tensor acts as identity.
        let unit = TensorPoly::from_terms(
            &alph,
            &f,
            vec![((Word::empty(), Word::empty()), one.clone())],
        );
        assert_eq!(unit.componentwise_mul(&prod), prod);
    }

    #[test]
    fn weighted_degrees() {
        let (alph, e, k, _) = test_alphabet();
        assert_eq!(alph.weighted_degree(&Word::empty(), WeightKind::Grade), 0);
        let ek = Word::from_ids(vec![e, k]);
        assert_eq!(alph.weighted_degree(&ek, WeightKind::Grade), 1);
        assert_eq!(alph.weighted_degree(&ek, WeightKind::Length), 2);
        let u = Word::from_ids(vec![e, k]);
        let v = Word::from_ids(vec![e, e, k]);
        assert_eq!(
            alph.weighted_degree(&u.concat(&v), WeightKind::Grade),
            alph.weighted_degree(&u, WeightKind::Grade)
                + alph.weighted_degree(&v, WeightKind::Grade)
        );
    }

    #[test]
    fn display_forms() {
        let (alph, e, k, k_inv) = test_alphabet();
        let f = FieldDescriptor::rationals();
        assert_eq!(alph.format_word(&Word::empty()), "1");
        assert_eq!(alph.format_word(&Word::from_ids(vec![k, k])), "K^2");
        assert_eq!(
            alph.format_word(&Word::from_ids(vec![k_inv, k_inv])),
            "K^-2"
        );
        assert_eq!(alph.format_word(&Word::from_ids(vec![e, k])), "E*K");
        let p = NcPoly::from_terms(
            &alph,
            &f,
            vec![
                (Word::single(e), Scalar::from_integer(&f, -2)),
                (Word::empty(), Scalar::one(&f)),
            ],
        );
        assert_eq!(p.to_string(), "-2*E + 1");
    }
}
