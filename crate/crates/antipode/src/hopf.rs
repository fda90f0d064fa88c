//! The Hopf presentation object: Δ, ε, S given on generators and extended to
//! the whole quotient algebra, plus verification that the data actually
//! defines a Hopf algebra.
//!
//! Axioms are verified on generators and rules only, then extended by the
//! (anti)morphism properties — sufficient because generators generate, and it
//! keeps verification bounded even when H is infinite-dimensional.
//!
//! Verification gates everything downstream: theorem-level computations (the
//! `structure` and `order` modules) only accept a [`TrustedPresentation`],
//! which can only be obtained by passing [`HopfPresentation::trusted`].

use std::collections::BTreeMap;
use std::ops::Deref;
use std::sync::Arc;

use serde::Serialize;

use crate::error::KernelError;
use crate::ncpoly::{Alphabet, NcPoly, Tensor3Poly, TensorPoly, WeightKind, Word};
use crate::rewrite::RuleSet;
use crate::scalar::{FieldDescriptor, Scalar};

/// How many powers of an unpaired group-like are tried when searching for its
/// inverse at construction time.
const INVERSE_SEARCH_CAP: usize = 512;

/// Raw presentation data handed to [`HopfPresentation::new`]. Structure maps
/// are keyed by symbol id and required for every non-inverse symbol; maps for
/// formal inverses are derived (Δ(g⁻¹) = g⁻¹⊗g⁻¹, ε(g⁻¹) = 1, S(g⁻¹) = g).
pub struct HopfData {
    pub name: String,
    pub description: String,
    pub field: FieldDescriptor,
    pub alphabet: Arc<Alphabet>,
    pub rules: RuleSet,
    pub coproduct: BTreeMap<u32, TensorPoly>,
    pub counit: BTreeMap<u32, Scalar>,
    pub antipode: BTreeMap<u32, NcPoly>,
    pub group_likes: Vec<Word>,
    /// Smallest n such that H is generated by the filtration step H_n
    /// (builder-documented; drives the characteristic-p order bound).
    pub generation_degree: u64,
    /// Whether `group_likes` exhausts the conjugation behaviour of G(H), so
    /// m_H computed from it is exact rather than a lower bound.
    pub exhaustive_group_likes: bool,
}

/// One verified axiom instance.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    /// Which axiom or well-definedness condition was checked.
    pub check: String,
    /// The generator, rule, or element it was checked on.
    pub subject: String,
    pub passed: bool,
    /// On failure, the exact discrepancy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Outcome of a verification pass: every item, plus warnings that do not by
/// themselves fail verification.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub presentation: String,
    pub passed: bool,
    pub items: Vec<CheckItem>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    fn new(presentation: &str) -> Self {
        VerificationReport {
            presentation: presentation.to_string(),
            passed: true,
            items: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn push(&mut self, check: &str, subject: String, passed: bool, witness: Option<String>) {
        self.passed &= passed;
        self.items.push(CheckItem {
            check: check.to_string(),
            subject,
            passed,
            witness,
        });
    }

    /// First failing item, if any.
    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }
}

/// A finitely presented Hopf algebra: quotient of a free algebra by oriented
/// relations, with structure maps on generators.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    name: String,
    description: String,
    field: FieldDescriptor,
    alphabet: Arc<Alphabet>,
    rules: RuleSet,
    coproduct: Vec<TensorPoly>,
    counit: Vec<Scalar>,
    antipode: Vec<NcPoly>,
    group_likes: Vec<Word>,
    group_like_inverses: Vec<Word>,
    generation_degree: u64,
    exhaustive_group_likes: bool,
}

impl HopfPresentation {
    pub fn new(data: HopfData) -> Result<Self, KernelError> {
        let HopfData {
            name,
            description,
            field,
            alphabet,
            rules,
            coproduct,
            counit,
            antipode,
            group_likes,
            generation_degree,
            exhaustive_group_likes,
        } = data;

        // Assemble dense per-symbol structure maps, deriving the maps of
        // formal inverses from group-likeness.
        let mut co = Vec::with_capacity(alphabet.len());
        let mut eps = Vec::with_capacity(alphabet.len());
        let mut anti = Vec::with_capacity(alphabet.len());
        for (id, info) in alphabet.symbols() {
            if info.is_inverse() {
                let self_word = Word::single(id);
                let base = info.paired_inverse().expect("inverse symbols are paired");
                co.push(TensorPoly::from_terms(
                    &alphabet,
                    &field,
                    vec![((self_word.clone(), self_word.clone()), Scalar::one(&field))],
                ));
                eps.push(Scalar::one(&field));
                anti.push(NcPoly::monomial(
                    &alphabet,
                    &field,
                    Word::single(base),
                    Scalar::one(&field),
                ));
                continue;
            }
            let missing = |map: &str| KernelError::MissingStructureMap {
                name: format!("{} ({})", info.display_name(), map),
            };
            co.push(
                coproduct
                    .get(&id)
                    .cloned()
                    .ok_or_else(|| missing("coproduct"))?,
            );
            eps.push(counit.get(&id).cloned().ok_or_else(|| missing("counit"))?);
            anti.push(
                antipode
                    .get(&id)
                    .cloned()
                    .ok_or_else(|| missing("antipode"))?,
            );
        }

        let mut p = HopfPresentation {
            name,
            description,
            field,
            alphabet,
            rules,
            coproduct: co,
            counit: eps,
            antipode: anti,
            group_likes: Vec::new(),
            group_like_inverses: Vec::new(),
            generation_degree,
            exhaustive_group_likes,
        };

        // Normalize, deduplicate, and validate the declared group-likes.
        let mut seen: Vec<Word> = Vec::new();
        for g in group_likes {
            let normal = p.normal_word(&g)?;
            if seen.contains(&normal) {
                continue;
            }
            if p.alphabet.weighted_degree(&normal, WeightKind::Grade) != 0
                || p.alphabet.weighted_degree(&normal, WeightKind::Filtration) != 0
            {
                return Err(KernelError::NotGroupLike {
                    word: p.alphabet.format_word(&normal),
                });
            }
            let expected = TensorPoly::from_terms(
                &p.alphabet,
                &p.field,
                vec![((normal.clone(), normal.clone()), Scalar::one(&p.field))],
            );
            let one =
                NcPoly::monomial(&p.alphabet, &p.field, normal.clone(), Scalar::one(&p.field));
            if p.delta(&one) != expected || !p.counit(&one).is_one() {
                return Err(KernelError::NotGroupLike {
                    word: p.alphabet.format_word(&normal),
                });
            }
            seen.push(normal);
        }
        p.group_likes = seen;

        // Paired generators are group-like generators; insist they (and their
        // inverses) are declared so the downstream analysis can see them.
        for (id, info) in p.alphabet.symbols() {
            if info.paired_inverse().is_some() && !p.group_likes.contains(&Word::single(id)) {
                return Err(KernelError::InvertibleNotGroupLike {
                    name: info.display_name(),
                });
            }
        }

        // Every group-like must have a two-sided inverse among the normal
        // words; find and remember it.
        let mut inverses = Vec::with_capacity(p.group_likes.len());
        for g in &p.group_likes {
            inverses.push(p.find_inverse_word(g)?);
        }
        p.group_like_inverses = inverses;

        Ok(p)
    }

    fn normal_word(&self, w: &Word) -> Result<Word, KernelError> {
        let poly = self.rules.normalize(&NcPoly::monomial(
            &self.alphabet,
            &self.field,
            w.clone(),
            Scalar::one(&self.field),
        ));
        match poly.terms() {
            [(nw, c)] if c.is_one() => Ok(nw.clone()),
            _ => Err(KernelError::NotGroupLike {
                word: self.alphabet.format_word(w),
            }),
        }
    }

    /// Two-sided inverse of a group-like word. If every symbol is paired,
    /// the reversed word of formal inverses works; otherwise the word must
    /// have finite order, found by iterating powers.
    fn find_inverse_word(&self, g: &Word) -> Result<Word, KernelError> {
        let one = NcPoly::one(&self.alphabet, &self.field);
        let monomial =
            |w: Word| NcPoly::monomial(&self.alphabet, &self.field, w, Scalar::one(&self.field));
        let all_paired = g
            .ids()
            .iter()
            .all(|&id| self.alphabet.symbol_info(id).paired_inverse().is_some());
        if all_paired {
            let inv_ids: Vec<u32> = g
                .ids()
                .iter()
                .rev()
                .map(|&id| self.alphabet.symbol_info(id).paired_inverse().unwrap())
                .collect();
            let candidate = self.normal_word(&Word::from_ids(inv_ids))?;
            let left = self
                .rules
                .quotient_mul(&monomial(candidate.clone()), &monomial(g.clone()));
            let right = self
                .rules
                .quotient_mul(&monomial(g.clone()), &monomial(candidate.clone()));
            if left == one && right == one {
                return Ok(candidate);
            }
            return Err(KernelError::NotInvertible {
                word: self.alphabet.format_word(g),
            });
        }
        // Finite-order search: the least m with gᵐ = 1 gives g⁻¹ = g^{m−1}.
        let g_poly = monomial(g.clone());
        let mut power = g_poly.clone();
        let mut previous = Word::empty();
        for _ in 0..INVERSE_SEARCH_CAP {
            if power == one {
                return Ok(previous);
            }
            match power.terms() {
                [(w, c)] if c.is_one() => previous = w.clone(),
                _ => break,
            }
            power = self.rules.quotient_mul(&power, &g_poly);
        }
        Err(KernelError::NotInvertible {
            word: self.alphabet.format_word(g),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    /// Declared group-likes, normalized and deduplicated.
    pub fn group_likes(&self) -> &[Word] {
        &self.group_likes
    }

    /// The empty word is always implicitly group-like.
    pub fn is_declared_group_like(&self, w: &Word) -> bool {
        w.is_empty() || self.group_likes.contains(w)
    }

    /// Inverse of a declared group-like (the empty word is its own inverse).
    pub fn group_like_inverse(&self, w: &Word) -> Option<Word> {
        if w.is_empty() {
            return Some(Word::empty());
        }
        self.group_likes
            .iter()
            .position(|g| g == w)
            .map(|i| self.group_like_inverses[i].clone())
    }

    pub fn generation_degree(&self) -> u64 {
        self.generation_degree
    }

    pub fn exhaustive_group_likes(&self) -> bool {
        self.exhaustive_group_likes
    }

    pub fn coproduct_of(&self, id: u32) -> &TensorPoly {
        &self.coproduct[id as usize]
    }

    pub fn counit_of(&self, id: u32) -> &Scalar {
        &self.counit[id as usize]
    }

    pub fn antipode_of(&self, id: u32) -> &NcPoly {
        &self.antipode[id as usize]
    }

    /// Δ on one normal word: multiplicative extension of the generator
    /// coproducts, slots normalized. Δ(1) = 1⊗1.
    fn delta_word(&self, w: &Word) -> TensorPoly {
        let mut acc = TensorPoly::from_terms(
            &self.alphabet,
            &self.field,
            vec![((Word::empty(), Word::empty()), Scalar::one(&self.field))],
        );
        for &id in w.ids() {
            acc = self
                .rules
                .quotient_tensor_mul(&acc, &self.coproduct[id as usize]);
        }
        acc
    }

    /// Coproduct of an arbitrary element (linear extension over terms).
    pub fn delta(&self, p: &NcPoly) -> TensorPoly {
        let mut acc = TensorPoly::zero(&self.alphabet, &self.field);
        for (w, c) in p.terms() {
            acc = acc.add(&self.delta_word(w).scale(c));
        }
        acc
    }

    /// Counit: multiplicative on words, linear on sums.
    pub fn counit(&self, p: &NcPoly) -> Scalar {
        let mut acc = Scalar::zero(&self.field);
        for (w, c) in p.terms() {
            let mut prod = c.clone();
            for &id in w.ids() {
                prod = prod.mul(&self.counit[id as usize]);
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// Antipode: anti-multiplicative extension, S(g₁…g_k) = S(g_k)…S(g₁),
    /// normalized.
    pub fn antipode(&self, p: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero(&self.alphabet, &self.field);
        for (w, c) in p.terms() {
            let mut prod = NcPoly::one(&self.alphabet, &self.field);
            for &id in w.ids().iter().rev() {
                prod = self.rules.quotient_mul(&prod, &self.antipode[id as usize]);
            }
            acc = acc.add(&prod.scale(c));
        }
        acc
    }

    /// (Δ⊗id)Δ applied to an element, all slots normalized.
    fn delta_then_left(&self, p: &NcPoly) -> Tensor3Poly {
        let t = self.delta(p);
        let mut terms = Vec::new();
        for ((w1, w2), c) in t.terms() {
            for ((u1, u2), d) in self.delta_word(w1).terms() {
                terms.push(((u1.clone(), u2.clone(), w2.clone()), c.mul(d)));
            }
        }
        Tensor3Poly::from_terms(&self.alphabet, &self.field, terms)
    }

    /// (id⊗Δ)Δ applied to an element, all slots normalized.
    fn delta_then_right(&self, p: &NcPoly) -> Tensor3Poly {
        let t = self.delta(p);
        let mut terms = Vec::new();
        for ((w1, w2), c) in t.terms() {
            for ((u1, u2), d) in self.delta_word(w2).terms() {
                terms.push(((w1.clone(), u1.clone(), u2.clone()), c.mul(d)));
            }
        }
        Tensor3Poly::from_terms(&self.alphabet, &self.field, terms)
    }

    /// m(S⊗id)Δ(p) — the left antipode convolution.
    fn antipode_convolve_left(&self, p: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero(&self.alphabet, &self.field);
        for ((w1, w2), c) in self.delta(p).terms() {
            let s1 = self.antipode(&NcPoly::monomial(
                &self.alphabet,
                &self.field,
                w1.clone(),
                Scalar::one(&self.field),
            ));
            let rest = NcPoly::monomial(
                &self.alphabet,
                &self.field,
                w2.clone(),
                Scalar::one(&self.field),
            );
            acc = acc.add(&self.rules.quotient_mul(&s1, &rest).scale(c));
        }
        acc
    }

    /// m(id⊗S)Δ(p) — the right antipode convolution.
    fn antipode_convolve_right(&self, p: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero(&self.alphabet, &self.field);
        for ((w1, w2), c) in self.delta(p).terms() {
            let s2 = self.antipode(&NcPoly::monomial(
                &self.alphabet,
                &self.field,
                w2.clone(),
                Scalar::one(&self.field),
            ));
            let rest = NcPoly::monomial(
                &self.alphabet,
                &self.field,
                w1.clone(),
                Scalar::one(&self.field),
            );
            acc = acc.add(&self.rules.quotient_mul(&rest, &s2).scale(c));
        }
        acc
    }

    fn rule_subject(&self, idx: usize) -> String {
        let rule = &self.rules.rules()[idx];
        format!("{} = {}", self.alphabet.format_word(rule.lhs()), rule.rhs())
    }

    /// Checks that Δ and ε are well-defined on the quotient (agree across
    /// every rule), coassociative, and satisfy the counit law on generators.
    pub fn verify_bialgebra(&self) -> VerificationReport {
        let mut report = VerificationReport::new(&self.name);
        for (idx, rule) in self.rules.rules().iter().enumerate() {
            let lhs_poly = NcPoly::monomial(
                &self.alphabet,
                &self.field,
                rule.lhs().clone(),
                Scalar::one(&self.field),
            );
            let dl = self.delta(&lhs_poly);
            let dr = self.delta(rule.rhs());
            let ok = dl == dr;
            report.push(
                "coproduct well-defined on relation",
                self.rule_subject(idx),
                ok,
                (!ok).then(|| format!("Δ(lhs) − Δ(rhs) = {}", dl.sub(&dr))),
            );
            let el = self.counit(&lhs_poly);
            let er = self.counit(rule.rhs());
            let ok = el == er;
            report.push(
                "counit well-defined on relation",
                self.rule_subject(idx),
                ok,
                (!ok).then(|| format!("ε(lhs) = {}, ε(rhs) = {}", el, er)),
            );
        }
        for (id, info) in self.alphabet.symbols() {
            let g = NcPoly::monomial(
                &self.alphabet,
                &self.field,
                Word::single(id),
                Scalar::one(&self.field),
            );
            let left = self.delta_then_left(&g);
            let right = self.delta_then_right(&g);
            let ok = left == right;
            report.push(
                "coassociativity",
                info.display_name(),
                ok,
                (!ok).then(|| format!("(Δ⊗id)Δ − (id⊗Δ)Δ = {}", left.sub(&right))),
            );
            // Counit law: (ε⊗id)Δ(g) = g = (id⊗ε)Δ(g).
            let normal_g = self.rules.normalize(&g);
            let mut left_collapse = NcPoly::zero(&self.alphabet, &self.field);
            let mut right_collapse = NcPoly::zero(&self.alphabet, &self.field);
            for ((w1, w2), c) in self.delta(&g).terms() {
                let e1 = self.counit(&NcPoly::monomial(
                    &self.alphabet,
                    &self.field,
                    w1.clone(),
                    Scalar::one(&self.field),
                ));
                let e2 = self.counit(&NcPoly::monomial(
                    &self.alphabet,
                    &self.field,
                    w2.clone(),
                    Scalar::one(&self.field),
                ));
                left_collapse = left_collapse.add(&NcPoly::monomial(
                    &self.alphabet,
                    &self.field,
                    w2.clone(),
                    c.mul(&e1),
                ));
                right_collapse = right_collapse.add(&NcPoly::monomial(
                    &self.alphabet,
                    &self.field,
                    w1.clone(),
                    c.mul(&e2),
                ));
            }
            let ok = left_collapse == normal_g && right_collapse == normal_g;
            report.push(
                "counit law",
                info.display_name(),
                ok,
                (!ok).then(|| {
                    format!(
                        "(ε⊗id)Δ = {}, (id⊗ε)Δ = {}, expected {}",
                        left_collapse, right_collapse, normal_g
                    )
                }),
            );
        }
        report
    }

    /// Checks that S is well-defined on the quotient and satisfies the
    /// antipode axiom m(S⊗id)Δ = ε(·)1 = m(id⊗S)Δ on every generator, and
    /// that each declared group-like maps to its inverse.
    pub fn verify_antipode(&self) -> VerificationReport {
        let mut report = VerificationReport::new(&self.name);
        let depth = self.rules.max_overlap_len();
        if !self.rules.confluence_report(depth).is_empty() {
            report.warnings.push(
                "rule set is not confluent: well-definedness checks are only \
                 sound up to the confluence report"
                    .to_string(),
            );
        }
        for (idx, rule) in self.rules.rules().iter().enumerate() {
            let lhs_poly = NcPoly::monomial(
                &self.alphabet,
                &self.field,
                rule.lhs().clone(),
                Scalar::one(&self.field),
            );
            let sl = self.antipode(&lhs_poly);
            let sr = self.antipode(rule.rhs());
            let ok = sl == sr;
            report.push(
                "antipode well-defined on relation",
                self.rule_subject(idx),
                ok,
                (!ok).then(|| format!("S(lhs) − S(rhs) = {}", sl.sub(&sr))),
            );
        }
        for (id, info) in self.alphabet.symbols() {
            let g = NcPoly::monomial(
                &self.alphabet,
                &self.field,
                Word::single(id),
                Scalar::one(&self.field),
            );
            let target =
                NcPoly::monomial(&self.alphabet, &self.field, Word::empty(), self.counit(&g));
            let left = self.antipode_convolve_left(&g);
            let right = self.antipode_convolve_right(&g);
            let ok = left == target && right == target;
            report.push(
                "antipode axiom",
                info.display_name(),
                ok,
                (!ok).then(|| {
                    format!(
                        "m(S⊗id)Δ = {}, m(id⊗S)Δ = {}, expected {}",
                        left, right, target
                    )
                }),
            );
        }
        for (g, inv) in self.group_likes.iter().zip(&self.group_like_inverses) {
            let s = self.antipode(&NcPoly::monomial(
                &self.alphabet,
                &self.field,
                g.clone(),
                Scalar::one(&self.field),
            ));
            let expected = NcPoly::monomial(
                &self.alphabet,
                &self.field,
                inv.clone(),
                Scalar::one(&self.field),
            );
            let ok = s == expected;
            report.push(
                "antipode inverts group-like",
                self.alphabet.format_word(g),
                ok,
                (!ok).then(|| format!("S = {}, inverse = {}", s, expected)),
            );
        }
        report
    }

    /// Runs both verification passes and, on success, marks the presentation
    /// TRUSTED — unlocking the theorem-level analyses.
    pub fn trusted(self) -> Result<TrustedPresentation, KernelError> {
        let bialgebra = self.verify_bialgebra();
        if !bialgebra.passed {
            let item = bialgebra.first_failure().expect("failed report has item");
            return Err(KernelError::Untrusted {
                name: self.name.clone(),
                reason: format!("{} ({})", item.check, item.subject),
            });
        }
        let antipode = self.verify_antipode();
        if !antipode.passed {
            let item = antipode.first_failure().expect("failed report has item");
            return Err(KernelError::Untrusted {
                name: self.name.clone(),
                reason: format!("{} ({})", item.check, item.subject),
            });
        }
        Ok(TrustedPresentation { inner: self })
    }
}

/// A presentation that passed both verification passes. The only way to
/// construct one is [`HopfPresentation::trusted`], so functions taking this
/// type can assume the Hopf axioms hold.
#[derive(Clone, Debug)]
pub struct TrustedPresentation {
    inner: HopfPresentation,
}

impl Deref for TrustedPresentation {
    type Target = HopfPresentation;

    fn deref(&self) -> &HopfPresentation {
        &self.inner
    }
}

impl TrustedPresentation {
    pub fn presentation(&self) -> &HopfPresentation {
        &self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Group algebra of the cyclic group of order 2: one generator g with
    /// g² = 1, Δ(g) = g⊗g, ε(g) = 1, S(g) = g.
    fn cyclic2(counit_value: i64, antipode_is_g: bool) -> Result<HopfPresentation, KernelError> {
        let mut b = Alphabet::builder();
        let g = b.symbol("g", 0, 0).unwrap();
        let alph = b.build();
        let f = FieldDescriptor::rationals();
        let one = Scalar::one(&f);
        let rules = RuleSet::new(
            &alph,
            &f,
            vec![(Word::from_ids(vec![g, g]), NcPoly::one(&alph, &f))],
        )
        .unwrap();
        let mut coproduct = BTreeMap::new();
        coproduct.insert(
            g,
            TensorPoly::from_terms(
                &alph,
                &f,
                vec![((Word::single(g), Word::single(g)), one.clone())],
            ),
        );
        let mut counit = BTreeMap::new();
        counit.insert(g, Scalar::from_integer(&f, counit_value));
        let mut antipode = BTreeMap::new();
        let s_image = if antipode_is_g {
            NcPoly::monomial(&alph, &f, Word::single(g), one.clone())
        } else {
            NcPoly::one(&alph, &f)
        };
        antipode.insert(g, s_image);
        HopfPresentation::new(HopfData {
            name: "cyclic-2".into(),
            description: String::new(),
            field: f,
            alphabet: alph,
            rules,
            coproduct,
            counit,
            antipode,
            group_likes: vec![Word::empty(), Word::single(g)],
            generation_degree: 0,
            exhaustive_group_likes: true,
        })
    }

    fn uq_generic() -> HopfPresentation {
        let mut b = Alphabet::builder();
        let e = b.symbol("E", 1, 1).unwrap();
        let (k, k_inv) = b.invertible_symbol("K").unwrap();
        let alph = b.build();
        let f = FieldDescriptor::rational_functions("q");
        let q = f.generator().unwrap();
        let one = Scalar::one(&f);
        let rules = RuleSet::new(
            &alph,
            &f,
            vec![
                (Word::from_ids(vec![k, k_inv]), NcPoly::one(&alph, &f)),
                (Word::from_ids(vec![k_inv, k]), NcPoly::one(&alph, &f)),
                (
                    Word::from_ids(vec![k, e]),
                    NcPoly::monomial(&alph, &f, Word::from_ids(vec![e, k]), q.clone()),
                ),
                (
                    Word::from_ids(vec![k_inv, e]),
                    NcPoly::monomial(&alph, &f, Word::from_ids(vec![e, k_inv]), q.inv().unwrap()),
                ),
            ],
        )
        .unwrap();
        let mut coproduct = BTreeMap::new();
        coproduct.insert(
            e,
            TensorPoly::from_terms(
                &alph,
                &f,
                vec![
                    ((Word::single(e), Word::empty()), one.clone()),
                    ((Word::single(k), Word::single(e)), one.clone()),
                ],
            ),
        );
        coproduct.insert(
            k,
            TensorPoly::from_terms(
                &alph,
                &f,
                vec![((Word::single(k), Word::single(k)), one.clone())],
            ),
        );
        let mut counit = BTreeMap::new();
        counit.insert(e, Scalar::zero(&f));
        counit.insert(k, one.clone());
        let mut antipode = BTreeMap::new();
        antipode.insert(
            e,
            NcPoly::monomial(&alph, &f, Word::from_ids(vec![k_inv, e]), one.neg()),
        );
        antipode.insert(
            k,
            NcPoly::monomial(&alph, &f, Word::single(k_inv), one.clone()),
        );
        HopfPresentation::new(HopfData {
            name: "uq-test".into(),
            description: String::new(),
            field: f,
            alphabet: alph,
            rules,
            coproduct,
            counit,
            antipode,
            group_likes: vec![Word::single(k), Word::single(k_inv)],
            generation_degree: 1,
            exhaustive_group_likes: true,
        })
        .unwrap()
    }

    #[test]
    fn good_cyclic_presentation_verifies() {
        let p = cyclic2(1, true).unwrap();
        assert!(p.verify_bialgebra().passed);
        assert!(p.verify_antipode().passed);
        assert!(p.trusted().is_ok());
    }

    #[test]
    fn corrupted_counit_is_rejected_as_group_like() {
        // ε(g) = 0 contradicts the declared group-like g.
        let err = cyclic2(0, true).unwrap_err();
        assert!(matches!(err, KernelError::NotGroupLike { .. }));
    }

    #[test]
    fn corrupted_antipode_fails_verification() {
        let p = cyclic2(1, false).unwrap();
        assert!(p.verify_bialgebra().passed);
        let report = p.verify_antipode();
        assert!(!report.passed);
        let failure = report.first_failure().unwrap();
        assert!(failure.witness.is_some());
        assert!(matches!(p.trusted(), Err(KernelError::Untrusted { .. })));
    }

    #[test]
    fn structure_map_extensions_match_hand_computations() {
        let p = uq_generic();
        let alph = p.alphabet().clone();
        let f = p.field().clone();
        let e = alph.lookup("E").unwrap();
        let k = alph.lookup("K").unwrap();
        let k_inv = alph.symbol_info(k).paired_inverse().unwrap();
        let one = Scalar::one(&f);
        // Δ(EK⁻¹) = EK⁻¹⊗K⁻¹ + 1⊗EK⁻¹.
        let e_prime = NcPoly::monomial(&alph, &f, Word::from_ids(vec![e, k_inv]), one.clone());
        let expected = TensorPoly::from_terms(
            &alph,
            &f,
            vec![
                (
                    (Word::from_ids(vec![e, k_inv]), Word::single(k_inv)),
                    one.clone(),
                ),
                ((Word::empty(), Word::from_ids(vec![e, k_inv])), one.clone()),
            ],
        );
        assert_eq!(p.delta(&e_prime), expected);
        // ε(EK⁻¹) = 0; ε(K) = 1.
        assert!(p.counit(&e_prime).is_zero());
        assert!(p
            .counit(&NcPoly::monomial(&alph, &f, Word::single(k), one.clone()))
            .is_one());
        // S(EK⁻¹) = S(K⁻¹)S(E) = K·(−K⁻¹E) = −E.
        let s = p.antipode(&e_prime);
        assert_eq!(s, NcPoly::monomial(&alph, &f, Word::single(e), one.neg()));
        // Δ(1) = 1⊗1 and S(1) = 1.
        let unit = NcPoly::one(&alph, &f);
        assert_eq!(
            p.delta(&unit),
            TensorPoly::from_terms(
                &alph,
                &f,
                vec![((Word::empty(), Word::empty()), one.clone())]
            )
        );
        assert_eq!(p.antipode(&unit), unit);
    }

    #[test]
    fn uq_presentation_verifies_and_mutation_fails() {
        let p = uq_generic();
        assert!(p.verify_bialgebra().passed);
        assert!(p.verify_antipode().passed);

        // Corrupt Δ(E) to E⊗1 + E⊗K: coassociativity or well-definedness
        // must fail with a witness.
        let alph = p.alphabet().clone();
        let f = p.field().clone();
        let e = alph.lookup("E").unwrap();
        let k = alph.lookup("K").unwrap();
        let one = Scalar::one(&f);
        let mut coproduct = BTreeMap::new();
        coproduct.insert(
            e,
            TensorPoly::from_terms(
                &alph,
                &f,
                vec![
                    ((Word::single(e), Word::empty()), one.clone()),
                    ((Word::single(e), Word::single(k)), one.clone()),
                ],
            ),
        );
        coproduct.insert(k, p.coproduct_of(k).clone());
        let mut counit = BTreeMap::new();
        counit.insert(e, Scalar::zero(&f));
        counit.insert(k, one.clone());
        let mut antipode = BTreeMap::new();
        antipode.insert(e, p.antipode_of(e).clone());
        antipode.insert(k, p.antipode_of(k).clone());
        let broken = HopfPresentation::new(HopfData {
            name: "uq-broken".into(),
            description: String::new(),
            field: f,
            alphabet: alph,
            rules: p.rules().clone(),
            coproduct,
            counit,
            antipode,
            group_likes: p.group_likes().to_vec(),
            generation_degree: 1,
            exhaustive_group_likes: true,
        })
        .unwrap();
        let report = broken.verify_bialgebra();
        assert!(!report.passed);
        assert!(report.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn group_like_inverses_are_found() {
        let p = uq_generic();
        let alph = p.alphabet().clone();
        let k = alph.lookup("K").unwrap();
        let k_inv = alph.symbol_info(k).paired_inverse().unwrap();
        assert_eq!(
            p.group_like_inverse(&Word::single(k)),
            Some(Word::single(k_inv))
        );
        assert_eq!(p.group_like_inverse(&Word::empty()), Some(Word::empty()));

        let c = cyclic2(1, true).unwrap();
        let g = c.alphabet().lookup("g").unwrap();
        // g has order 2, so it is its own inverse — found by power search.
        assert_eq!(
            c.group_like_inverse(&Word::single(g)),
            Some(Word::single(g))
        );
    }
}
