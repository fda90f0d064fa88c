//! Terminating noncommutative rewriting: defines the quotient algebra,
//! supplies normal forms, and enumerates the normal-word bases used by every
//! downstream linear solve.
//!
//! Orientation is the builder's responsibility; construction only enforces
//! the termination invariant (every replacement monomial strictly below the
//! left-hand side in the monomial order). Confluence is checked separately by
//! [`RuleSet::confluence_report`] — all linear algebra downstream assumes the
//! report is empty.

use std::sync::Arc;

use crate::error::KernelError;
use crate::ncpoly::{Alphabet, NcPoly, TensorPoly, WeightKind, Word};
use crate::scalar::FieldDescriptor;

/// One oriented relation: `lhs` rewrites to the polynomial `rhs`, with every
/// monomial of `rhs` strictly below `lhs` in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Word,
    rhs: NcPoly,
}

impl RewriteRule {
    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &NcPoly {
        &self.rhs
    }
}

/// An ordered list of rewrite rules over one alphabet and field.
///
/// The listing order matters for determinism: normalization always applies
/// the earliest-listed applicable rule at its leftmost occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    alphabet: Arc<Alphabet>,
    field: FieldDescriptor,
    rules: Vec<RewriteRule>,
}

/// A critical pair whose two reductions disagree: evidence that the rule set
/// is not confluent on the reported word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonJoinableOverlap {
    /// The superposition word both rules act on.
    pub word: Word,
    /// Indices (into the rule list) of the two overlapping rules.
    pub rules: (usize, usize),
    /// The two distinct normal forms reached.
    pub first: NcPoly,
    pub second: NcPoly,
}

impl RuleSet {
    /// Builds a rule set, checking the termination invariant for every rule.
    pub fn new(
        alphabet: &Arc<Alphabet>,
        field: &FieldDescriptor,
        rules: Vec<(Word, NcPoly)>,
    ) -> Result<Self, KernelError> {
        let mut checked = Vec::with_capacity(rules.len());
        for (lhs, rhs) in rules {
            if lhs.is_empty() {
                return Err(KernelError::InvalidPresentation {
                    context: "rewrite rule".into(),
                    message: "left-hand side must not be the empty word".into(),
                });
            }
            for (w, _) in rhs.terms() {
                if alphabet.cmp_words(w, &lhs) != std::cmp::Ordering::Less {
                    return Err(KernelError::TerminationOrderViolation {
                        relation: format!("{} = {}", alphabet.format_word(&lhs), rhs),
                        lhs: alphabet.format_word(&lhs),
                    });
                }
            }
            checked.push(RewriteRule { lhs, rhs });
        }
        Ok(RuleSet {
            alphabet: Arc::clone(alphabet),
            field: field.clone(),
            rules: checked,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Rewrites until no rule's left-hand side occurs as a factor of any
    /// word. Strategy: earliest-listed applicable rule, leftmost occurrence —
    /// fixed so results are reproducible even on non-confluent inputs.
    /// Terminates because each step strictly decreases a multiset of words
    /// under the well-founded monomial order.
    pub fn normalize(&self, p: &NcPoly) -> NcPoly {
        let mut pending: Vec<(Word, crate::scalar::Scalar)> =
            p.terms().iter().rev().cloned().collect();
        let mut finished: Vec<(Word, crate::scalar::Scalar)> = Vec::new();
        'outer: while let Some((word, coeff)) = pending.pop() {
            for rule in &self.rules {
                if let Some(pos) = word.find_factor(&rule.lhs) {
                    let prefix = word.slice(0, pos);
                    let suffix = word.slice(pos + rule.lhs.len(), word.len());
                    for (mid, c) in rule.rhs.terms() {
                        let new_word = prefix.concat(mid).concat(&suffix);
                        pending.push((new_word, coeff.mul(c)));
                    }
                    continue 'outer;
                }
            }
            finished.push((word, coeff));
        }
        NcPoly::from_terms(&self.alphabet, &self.field, finished)
    }

    /// Is the word already in normal form (free of every left-hand side)?
    pub fn is_normal(&self, w: &Word) -> bool {
        self.rules.iter().all(|r| w.find_factor(&r.lhs).is_none())
    }

    /// Product in the quotient algebra: free concatenation, then normalize.
    pub fn quotient_mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.normalize(&a.concat_mul(b))
    }

    /// Normalizes both slots of a tensor element.
    pub fn normalize_tensor(&self, t: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(&self.alphabet, &self.field);
        for ((w1, w2), c) in t.terms() {
            let n1 = self.normalize(&NcPoly::monomial(
                &self.alphabet,
                &self.field,
                w1.clone(),
                crate::scalar::Scalar::one(&self.field),
            ));
            let n2 = self.normalize(&NcPoly::monomial(
                &self.alphabet,
                &self.field,
                w2.clone(),
                crate::scalar::Scalar::one(&self.field),
            ));
            out = out.add(&TensorPoly::of(&n1, &n2).scale(c));
        }
        out
    }

    /// Tensor product in the quotient: componentwise concatenation followed
    /// by slotwise normalization.
    pub fn quotient_tensor_mul(&self, a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
        self.normalize_tensor(&a.componentwise_mul(b))
    }

    /// The largest overlap word any critical pair can produce:
    /// |lhs₁| + |lhs₂| − 1.
    pub fn max_overlap_len(&self) -> usize {
        let longest: Vec<usize> = {
            let mut ls: Vec<usize> = self.rules.iter().map(|r| r.lhs.len()).collect();
            ls.sort_unstable_by(|a, b| b.cmp(a));
            ls
        };
        match longest.as_slice() {
            [] => 0,
            [only] => 2 * only - 1,
            [a, b, ..] => a + b - 1,
        }
    }

    /// Checks every overlap and inclusion ambiguity between rule left-hand
    /// sides whose superposition word is no longer than `depth`, reducing it
    /// both ways; disagreements are returned with the offending words.
    ///
    /// An empty report at depth [`RuleSet::max_overlap_len`] covers all
    /// critical pairs, which (with termination) makes the system confluent.
    pub fn confluence_report(&self, depth: usize) -> Vec<NonJoinableOverlap> {
        let one = crate::scalar::Scalar::one(&self.field);
        let mut bad = Vec::new();
        let check = |word: Word,
                     i: usize,
                     j: usize,
                     first: NcPoly,
                     second: NcPoly,
                     bad: &mut Vec<NonJoinableOverlap>| {
            let n1 = self.normalize(&first);
            let n2 = self.normalize(&second);
            if n1 != n2 {
                bad.push(NonJoinableOverlap {
                    word,
                    rules: (i, j),
                    first: n1,
                    second: n2,
                });
            }
        };
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                // Overlap ambiguities: a proper suffix of lhs_i equals a
                // proper prefix of lhs_j; superposition w = a·overlap·c with
                // lhs_i = a·overlap, lhs_j = overlap·c.
                let li = ri.lhs.ids();
                let lj = rj.lhs.ids();
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] == lj[..k] {
                        let word = Word::from_ids(
                            li.iter().chain(lj[k..].iter()).copied().collect::<Vec<_>>(),
                        );
                        if word.len() > depth {
                            continue;
                        }
                        // Reduce via rule i at position 0 …
                        let tail = word.slice(li.len(), word.len());
                        let via_i = ri.rhs.concat_mul(&NcPoly::monomial(
                            &self.alphabet,
                            &self.field,
                            tail,
                            one.clone(),
                        ));
                        // … and via rule j at position |word| − |lhs_j|.
                        let head = word.slice(0, word.len() - lj.len());
                        let via_j =
                            NcPoly::monomial(&self.alphabet, &self.field, head, one.clone())
                                .concat_mul(&rj.rhs);
                        check(word, i, j, via_i, via_j, &mut bad);
                    }
                }
                // Inclusion ambiguities: lhs_j a proper factor of lhs_i.
                if i != j && lj.len() < li.len() {
                    for pos in 0..=(li.len() - lj.len()) {
                        if &li[pos..pos + lj.len()] == lj {
                            let word = ri.lhs.clone();
                            if word.len() > depth {
                                continue;
                            }
                            let via_i = ri.rhs.clone();
                            let head = word.slice(0, pos);
                            let tail = word.slice(pos + lj.len(), word.len());
                            let via_j =
                                NcPoly::monomial(&self.alphabet, &self.field, head, one.clone())
                                    .concat_mul(&rj.rhs)
                                    .concat_mul(&NcPoly::monomial(
                                        &self.alphabet,
                                        &self.field,
                                        tail,
                                        one.clone(),
                                    ));
                            check(word, i, j, via_i, via_j, &mut bad);
                        }
                    }
                }
            }
        }
        bad
    }

    /// All normal words with the chosen weight ≤ `bound`, in descending
    /// monomial order (matching polynomial term order).
    ///
    /// Weight-0 symbols (group-like generators) make weight-bounded sets
    /// infinite when the group is infinite, so enumeration is additionally
    /// capped by word length: `length_cap`, defaulting to 2·bound + 4 when
    /// `None`.
    pub fn word_basis(&self, bound: u64, kind: WeightKind, length_cap: Option<usize>) -> Vec<Word> {
        let cap = match kind {
            WeightKind::Length => bound as usize,
            _ => length_cap.unwrap_or(2 * bound as usize + 4),
        };
        // Normal words are closed under taking factors — in particular
        // prefixes — so breadth-first extension by single symbols visits
        // every normal word exactly once.
        let mut layer: Vec<Word> = vec![Word::empty()];
        let mut all: Vec<Word> = vec![Word::empty()];
        for _ in 0..cap {
            let mut next = Vec::new();
            for w in &layer {
                for (id, _) in self.alphabet.symbols() {
                    let ext = w.concat(&Word::single(id));
                    if self.alphabet.weighted_degree(&ext, kind) > bound {
                        continue;
                    }
                    if !self.is_normal(&ext) {
                        continue;
                    }
                    next.push(ext);
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by(|a, b| self.alphabet.cmp_words(b, a));
        all
    }
}
