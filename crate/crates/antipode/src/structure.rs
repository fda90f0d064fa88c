//! Pointed-structure analysis over finite word-basis windows: skew-primitive
//! spaces, the conjugation action and its order, the invariant m_H, the
//! degree-one decomposition, and coalgebra-filtration checks.
//!
//! All computations are exact linear algebra over a [`BasisWindow`] — a
//! finite truncation of the normal-word basis. Results are therefore "within
//! the window": a skew-primitive space can only grow when the window grows,
//! and m_H is a lower bound unless the presentation asserts its group-like
//! list is exhaustive for the conjugation action.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_integer::lcm;
use serde::Serialize;

use crate::error::KernelError;
use crate::hopf::TrustedPresentation;
use crate::linalg::Matrix;
use crate::ncpoly::{Alphabet, NcPoly, TensorPoly, WeightKind, Word};
use crate::scalar::{FieldDescriptor, MultOrder, Scalar};

/// Default iteration cutoff for order searches.
pub const DEFAULT_CUTOFF: u64 = 10_000;

/// A finite window of normal words, with coordinate maps in both directions.
///
/// The window's span is the domain of every solve in this module. Codomain
/// coordinates (tensor words produced by the coproduct) are collected
/// dynamically from the images, so membership and kernel computations are
/// exact even when an image word falls outside the window itself.
#[derive(Clone, Debug)]
pub struct BasisWindow {
    alphabet: Arc<Alphabet>,
    field: FieldDescriptor,
    kind: WeightKind,
    bound: u64,
    words: Vec<Word>,
    index: BTreeMap<Word, usize>,
}

impl BasisWindow {
    /// All normal words of weight ≤ bound under the given scheme, with the
    /// rule set's default length cap.
    pub fn new(h: &TrustedPresentation, bound: u64, kind: WeightKind) -> Self {
        Self::build(h, bound, kind, None)
    }

    /// As [`BasisWindow::new`] but with an explicit length cap (useful when
    /// many generators have weight zero, e.g. group algebras).
    pub fn with_length_cap(
        h: &TrustedPresentation,
        bound: u64,
        kind: WeightKind,
        cap: usize,
    ) -> Self {
        Self::build(h, bound, kind, Some(cap))
    }

    fn build(h: &TrustedPresentation, bound: u64, kind: WeightKind, cap: Option<usize>) -> Self {
        let words = h.rules().word_basis(bound, kind, cap);
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        BasisWindow {
            alphabet: Arc::clone(h.alphabet()),
            field: h.field().clone(),
            kind,
            bound,
            words,
            index,
        }
    }

    /// Window words, strictly descending in the monomial order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn dimension(&self) -> usize {
        self.words.len()
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Coordinate vector of a normal-form polynomial, or None if some term
    /// lies outside the window.
    pub fn coordinates(&self, p: &NcPoly) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(&self.field); self.words.len()];
        for (w, c) in p.terms() {
            v[self.index_of(w)?] = c.clone();
        }
        Some(v)
    }

    /// The polynomial with the given window coordinates.
    pub fn from_coordinates(&self, coords: &[Scalar]) -> NcPoly {
        assert_eq!(coords.len(), self.words.len(), "coordinate length mismatch");
        NcPoly::from_terms(
            &self.alphabet,
            &self.field,
            self.words
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }
}

/// The space P_{x,y} = {h : Δ(h) = h⊗x + y⊗h} inside a window's span,
/// with its canonical splitting off of the line k(x−y).
#[derive(Clone, Debug)]
pub struct SkewPrimitiveSpace {
    pub x: Word,
    pub y: Word,
    /// Reduced-echelon basis of the full solution space.
    pub basis: Vec<NcPoly>,
    /// Whether x−y is visible inside the window (false when x = y, or when
    /// the window is too small to contain both words).
    pub contains_x_minus_y: bool,
    /// Basis of a complement of k(x−y); equals `basis` when x−y vanishes.
    pub prime_basis: Vec<NcPoly>,
}

impl SkewPrimitiveSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn word_poly(h: &TrustedPresentation, w: &Word) -> NcPoly {
    NcPoly::monomial(h.alphabet(), h.field(), w.clone(), Scalar::one(h.field()))
}

/// Normalize a word and require it to be a declared group-like.
fn normal_group_like(h: &TrustedPresentation, w: &Word) -> Result<Word, KernelError> {
    let n = h.rules().normalize(&word_poly(h, w));
    let word = match n.terms() {
        [(word, c)] if c.is_one() => word.clone(),
        _ => {
            return Err(KernelError::NotGroupLike {
                word: h.alphabet().format_word(w),
            })
        }
    };
    if !h.is_declared_group_like(&word) {
        return Err(KernelError::NotGroupLike {
            word: h.alphabet().format_word(&word),
        });
    }
    Ok(word)
}

/// Exact kernel of h ↦ Δ(h) − h⊗x − y⊗h restricted to the window's span.
///
/// x and y must be declared group-likes. The returned basis is in reduced
/// echelon form with respect to the window's word order, so the output is
/// deterministic, and every element is re-verified against the coproduct.
pub fn skew_primitives(
    h: &TrustedPresentation,
    x: &Word,
    y: &Word,
    window: &BasisWindow,
) -> Result<SkewPrimitiveSpace, KernelError> {
    let field = h.field();
    let x = normal_group_like(h, x)?;
    let y = normal_group_like(h, y)?;
    let x_mono = word_poly(h, &x);
    let y_mono = word_poly(h, &y);

    // Column j holds the tensor coordinates of Δ(w_j) − w_j⊗x − y⊗w_j.
    let images: Vec<TensorPoly> = window
        .words()
        .iter()
        .map(|w| {
            let p = word_poly(h, w);
            h.delta(&p)
                .sub(&TensorPoly::of(&p, &x_mono))
                .sub(&TensorPoly::of(&y_mono, &p))
        })
        .collect();
    let keys: BTreeSet<(Word, Word)> = images
        .iter()
        .flat_map(|t| t.terms().iter().map(|(k, _)| k.clone()))
        .collect();
    let row_of: BTreeMap<&(Word, Word), usize> =
        keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = Matrix::zero(field, keys.len(), window.dimension());
    for (j, t) in images.iter().enumerate() {
        for (k, c) in t.terms() {
            m.set(row_of[k], j, c.clone());
        }
    }

    let kernel = m.kernel_basis();
    let (basis, pivots) = if kernel.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let (reduced, pivots) = Matrix::from_rows(field, kernel).rref();
        let basis = (0..pivots.len())
            .map(|i| window.from_coordinates(reduced.row(i)))
            .collect();
        (basis, pivots)
    };
    for b in &basis {
        let expected = TensorPoly::of(b, &x_mono).add(&TensorPoly::of(&y_mono, b));
        assert!(
            h.delta(b).sub(&expected).is_zero(),
            "skew-primitive solve must be exact"
        );
    }

    // Split off k(x−y): in a reduced-echelon basis the expansion coefficients
    // of a member are simply its values at the pivot coordinates, and
    // dropping one basis vector with a nonzero coefficient leaves a
    // complement of the line.
    let diff = x_mono.sub(&y_mono);
    let (contains, prime_basis) = if diff.is_zero() {
        (false, basis.clone())
    } else if let Some(v) = window.coordinates(&diff) {
        let coeffs: Vec<Scalar> = pivots.iter().map(|&p| v[p].clone()).collect();
        match coeffs.iter().position(|c| !c.is_zero()) {
            Some(drop) => {
                let mut residual = diff.clone();
                for (b, c) in basis.iter().zip(&coeffs) {
                    residual = residual.sub(&b.scale(c));
                }
                assert!(
                    residual.is_zero(),
                    "x−y must lie in its own skew-primitive space"
                );
                let prime = basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, b)| b.clone())
                    .collect();
                (true, prime)
            }
            None => (false, basis.clone()),
        }
    } else {
        (false, basis.clone())
    };

    Ok(SkewPrimitiveSpace {
        x,
        y,
        basis,
        contains_x_minus_y: contains,
        prime_basis,
    })
}

/// Express `target` in the given linearly independent basis, if possible.
fn coords_in_basis(
    field: &FieldDescriptor,
    basis: &[NcPoly],
    target: &NcPoly,
) -> Option<Vec<Scalar>> {
    let words: BTreeSet<Word> = basis
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|p| p.terms().iter().map(|(w, _)| w.clone()))
        .collect();
    let word_row: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut a = Matrix::zero(field, words.len(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (w, c) in b.terms() {
            a.set(word_row[w], j, c.clone());
        }
    }
    let mut rhs = vec![Scalar::zero(field); words.len()];
    for (w, c) in target.terms() {
        rhs[word_row[w]] = c.clone();
    }
    a.solve(&rhs)
}

/// Matrix of h ↦ x·h·x⁻¹ in the basis of a P_{x,1}-shaped space.
///
/// Conjugation by a group-like preserves such a space; if an image falls
/// outside the computed span the window was too small to close the action
/// and `NotInvariant` is returned.
pub fn conjugation_matrix(
    h: &TrustedPresentation,
    space: &SkewPrimitiveSpace,
) -> Result<Matrix, KernelError> {
    if !space.y.is_empty() {
        return Err(KernelError::InvalidPresentation {
            context: "conjugation action".into(),
            message: "the space must be skew-primitive over (x, 1)".into(),
        });
    }
    let x_inv = h
        .group_like_inverse(&space.x)
        .ok_or_else(|| KernelError::NotInvertible {
            word: h.alphabet().format_word(&space.x),
        })?;
    let field = h.field();
    let x_mono = word_poly(h, &space.x);
    let x_inv_mono = word_poly(h, &x_inv);
    let n = space.basis.len();
    let mut m = Matrix::zero(field, n, n);
    for (j, b) in space.basis.iter().enumerate() {
        let image = h
            .rules()
            .quotient_mul(&h.rules().quotient_mul(&x_mono, b), &x_inv_mono);
        let coords = coords_in_basis(field, &space.basis, &image).ok_or_else(|| {
            KernelError::NotInvariant {
                conjugator: h.alphabet().format_word(&space.x),
                witness: format!("{}", b),
            }
        })?;
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// A finite order, a certified infinite order, or an exhausted search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ActionOrder {
    Finite(u64),
    InfiniteCertified,
    UnknownBeyond(u64),
}

impl std::fmt::Display for ActionOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ActionOrder::Finite(m) => write!(f, "{}", m),
            ActionOrder::InfiniteCertified => write!(f, "infinite (certified)"),
            ActionOrder::UnknownBeyond(c) => write!(f, "unknown beyond {}", c),
        }
    }
}

fn is_diagonal(m: &Matrix) -> bool {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !m.get(i, j).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Minimal k ≥ 1 with m^k = identity. Diagonal matrices are resolved through
/// the certified multiplicative orders of their entries (the only path that
/// can certify an infinite order); otherwise powers are iterated up to the
/// cutoff.
pub fn matrix_order(m: &Matrix, cutoff: u64) -> ActionOrder {
    assert_eq!(m.rows(), m.cols(), "order of a non-square matrix");
    if is_diagonal(m) {
        let mut acc: u64 = 1;
        for i in 0..m.rows() {
            match m.get(i, i).mult_order() {
                MultOrder::Finite(k) => acc = lcm(acc, k),
                MultOrder::InfiniteCertified => return ActionOrder::InfiniteCertified,
                // A zero diagonal entry means the matrix is singular and no
                // power can be the identity; conjugation matrices are always
                // invertible, so this is purely defensive.
                MultOrder::Zero => return ActionOrder::UnknownBeyond(cutoff),
            }
        }
        return ActionOrder::Finite(acc);
    }
    let mut power = m.clone();
    for k in 1..=cutoff {
        if power.is_identity() {
            return ActionOrder::Finite(k);
        }
        power = power.mul_matrix(m);
    }
    ActionOrder::UnknownBeyond(cutoff)
}

/// The order a_x of conjugation by x on P_{x,1} within the window.
pub fn conjugation_order(
    h: &TrustedPresentation,
    x: &Word,
    window: &BasisWindow,
    cutoff: u64,
) -> Result<ActionOrder, KernelError> {
    let space = skew_primitives(h, x, &Word::empty(), window)?;
    let m = conjugation_matrix(h, &space)?;
    Ok(matrix_order(&m, cutoff))
}

/// Per-representative conjugation order, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentativeOrder {
    pub representative: String,
    pub order: ActionOrder,
}

/// The invariant m_H = lcm of the conjugation orders a_x, together with the
/// exhaustiveness caveat.
#[derive(Clone, Debug, Serialize)]
pub struct MhReport {
    pub value: ActionOrder,
    pub per_representative: Vec<RepresentativeOrder>,
    /// Whether the presentation asserts its group-like list is exhaustive
    /// for the conjugation action.
    pub exhaustive: bool,
    /// When the list is not asserted exhaustive the value is only a lower
    /// bound for the true lcm over all group-likes.
    pub lower_bound_only: bool,
    pub window_bound: u64,
    pub cutoff: u64,
}

fn combine_lcm(a: ActionOrder, b: ActionOrder) -> ActionOrder {
    use ActionOrder::*;
    match (a, b) {
        (InfiniteCertified, _) | (_, InfiniteCertified) => InfiniteCertified,
        (UnknownBeyond(c), UnknownBeyond(d)) => UnknownBeyond(c.max(d)),
        (UnknownBeyond(c), _) | (_, UnknownBeyond(c)) => UnknownBeyond(c),
        (Finite(x), Finite(y)) => Finite(lcm(x, y)),
    }
}

/// lcm of a_x over the given group-like representatives.
pub fn m_h(
    h: &TrustedPresentation,
    representatives: &[Word],
    window: &BasisWindow,
    cutoff: u64,
) -> Result<MhReport, KernelError> {
    let mut per = Vec::with_capacity(representatives.len());
    let mut value = ActionOrder::Finite(1);
    for x in representatives {
        let x = normal_group_like(h, x)?;
        let order = conjugation_order(h, &x, window, cutoff)?;
        per.push(RepresentativeOrder {
            representative: h.alphabet().format_word(&x),
            order,
        });
        value = combine_lcm(value, order);
    }
    let exhaustive = h.exhaustive_group_likes();
    Ok(MhReport {
        value,
        per_representative: per,
        exhaustive,
        lower_bound_only: !exhaustive,
        window_bound: window.bound(),
        cutoff,
    })
}

/// One prime summand P′_{x,y} in the degree-one decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub x: String,
    pub y: String,
    pub dimension: usize,
}

/// Whether kG + Σ_{x,y} P′_{x,y} is a direct sum inside the window.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub group_like_dimension: usize,
    pub summands: Vec<SummandReport>,
    /// Sum of the dimensions of all summands.
    pub claimed_dimension: usize,
    /// Actual rank of the stacked coordinate vectors.
    pub rank: usize,
    pub direct: bool,
    pub window_dimension: usize,
}

/// Verify within the window that the sum of kG and the prime parts of all
/// P_{x,y} over declared group-likes is direct, and report its dimension.
pub fn h1_decomposition_check(
    h: &TrustedPresentation,
    window: &BasisWindow,
) -> Result<DecompositionReport, KernelError> {
    let alph = h.alphabet();
    let mut gs: Vec<Word> = vec![Word::empty()];
    for g in h.group_likes() {
        if !gs.contains(g) {
            gs.push(g.clone());
        }
    }
    let mut vectors: Vec<Vec<Scalar>> = Vec::new();
    for g in &gs {
        let coords = window.coordinates(&word_poly(h, g)).ok_or_else(|| {
            KernelError::InvalidPresentation {
                context: "degree-one decomposition".into(),
                message: format!(
                    "group-like `{}` lies outside the window; enlarge the bound",
                    alph.format_word(g)
                ),
            }
        })?;
        vectors.push(coords);
    }
    let mut summands = Vec::new();
    let mut claimed = gs.len();
    for x in &gs {
        for y in &gs {
            let space = skew_primitives(h, x, y, window)?;
            if space.prime_basis.is_empty() {
                continue;
            }
            for b in &space.prime_basis {
                vectors.push(
                    window
                        .coordinates(b)
                        .expect("solution basis lives in the window"),
                );
            }
            claimed += space.prime_basis.len();
            summands.push(SummandReport {
                x: alph.format_word(x),
                y: alph.format_word(y),
                dimension: space.prime_basis.len(),
            });
        }
    }
    let rank = Matrix::from_rows(h.field(), vectors).rank();
    Ok(DecompositionReport {
        group_like_dimension: gs.len(),
        summands,
        claimed_dimension: claimed,
        rank,
        direct: rank == claimed,
        window_dimension: window.dimension(),
    })
}

/// A coproduct term that escapes H⊗H_{n−1} + H₀⊗H.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationWitness {
    pub word: String,
    pub term: String,
}

/// Result of checking one level of the declared filtration.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationStepReport {
    pub level: u64,
    pub checked_words: usize,
    pub passed: bool,
    pub witness: Option<FiltrationWitness>,
}

/// Check that the declared weights give a coalgebra filtration at level n:
/// Δ(H_n) ⊆ H⊗H_{n−1} + H₀⊗H, where H_n is spanned by the window words of
/// filtration weight ≤ n and H₀ by the group-likes.
///
/// Both summands on the right are spanned by basis tensors, so membership is
/// a per-term test: the right slot has weight < n, or the left slot is a
/// group-like word (checked against the coproduct, not just the declared
/// list, so powers of declared group-likes qualify).
pub fn filtration_step_check(
    h: &TrustedPresentation,
    n: u64,
    window: &BasisWindow,
) -> FiltrationStepReport {
    let alph = h.alphabet();
    let mut group_like_cache: BTreeMap<Word, bool> = BTreeMap::new();
    let mut checked = 0usize;
    for w in window.words() {
        if alph.weighted_degree(w, WeightKind::Filtration) > n {
            continue;
        }
        checked += 1;
        let t = h.delta(&word_poly(h, w));
        for ((u, v), _) in t.terms() {
            if alph.weighted_degree(v, WeightKind::Filtration) < n {
                continue;
            }
            let u_group_like = *group_like_cache.entry(u.clone()).or_insert_with(|| {
                let p = word_poly(h, u);
                h.delta(&p).sub(&TensorPoly::of(&p, &p)).is_zero()
            });
            if !u_group_like {
                return FiltrationStepReport {
                    level: n,
                    checked_words: checked,
                    passed: false,
                    witness: Some(FiltrationWitness {
                        word: alph.format_word(w),
                        term: format!("{} @ {}", alph.format_word(u), alph.format_word(v)),
                    }),
                };
            }
        }
    }
    FiltrationStepReport {
        level: n,
        checked_words: checked,
        passed: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        cyclic_group_algebra, laurent_group_algebra, taft_wilson_r, taft_wilson_variant,
        uq_borel_cyclotomic, uq_borel_generic,
    };
    use crate::parse::parse_poly;
    use crate::parse::parse_word;

    fn trusted_uq(n: u64) -> TrustedPresentation {
        uq_borel_cyclotomic(n)
            .unwrap()
            .presentation
            .trusted()
            .unwrap()
    }

    fn poly(h: &TrustedPresentation, text: &str) -> NcPoly {
        parse_poly(text, h.alphabet(), h.field()).unwrap()
    }

    fn word(h: &TrustedPresentation, text: &str) -> Word {
        parse_word(text, h.alphabet(), h.field()).unwrap()
    }

    #[test]
    fn borel_skew_primitives_over_k_inverse() {
        let h = trusted_uq(5);
        let window = BasisWindow::new(&h, 2, WeightKind::Grade);
        let k_inv = word(&h, "K^-1");
        let space = skew_primitives(&h, &k_inv, &Word::empty(), &window).unwrap();
        assert_eq!(space.dimension(), 2);
        assert!(space.contains_x_minus_y);
        assert_eq!(space.basis[0], poly(&h, "E*K^-1"));
        assert_eq!(space.basis[1], poly(&h, "K^-1 - 1"));
        assert_eq!(space.prime_basis, vec![poly(&h, "E*K^-1")]);
        for b in &space.basis {
            assert!(h.counit(b).is_zero(), "P_(x,1) lies in the counit kernel");
        }
    }

    #[test]
    fn borel_conjugation_is_diagonal_with_root_of_unity_ratio() {
        let h = trusted_uq(5);
        let window = BasisWindow::new(&h, 2, WeightKind::Grade);
        let k_inv = word(&h, "K^-1");
        let space = skew_primitives(&h, &k_inv, &Word::empty(), &window).unwrap();
        let m = conjugation_matrix(&h, &space).unwrap();
        assert!(is_diagonal(&m));
        let q_inv = poly(&h, "q^-1").terms()[0].1.clone();
        assert_eq!(m.get(0, 0), &q_inv);
        assert!(m.get(1, 1).is_one());
        assert_eq!(matrix_order(&m, DEFAULT_CUTOFF), ActionOrder::Finite(5));
        assert_eq!(
            conjugation_order(&h, &k_inv, &window, DEFAULT_CUTOFF).unwrap(),
            ActionOrder::Finite(5)
        );
    }

    #[test]
    fn borel_generic_parameter_certifies_infinite_order() {
        let h = uq_borel_generic().unwrap().presentation.trusted().unwrap();
        let window = BasisWindow::new(&h, 1, WeightKind::Grade);
        let k_inv = word(&h, "K^-1");
        assert_eq!(
            conjugation_order(&h, &k_inv, &window, DEFAULT_CUTOFF).unwrap(),
            ActionOrder::InfiniteCertified
        );
        let report = m_h(&h, h.group_likes(), &window, DEFAULT_CUTOFF).unwrap();
        assert_eq!(report.value, ActionOrder::InfiniteCertified);
    }

    #[test]
    fn m_h_matches_expected_on_built_in_families() {
        for n in [2u64, 3, 5] {
            let h = trusted_uq(n);
            let window = BasisWindow::new(&h, 1, WeightKind::Grade);
            let report = m_h(&h, h.group_likes(), &window, DEFAULT_CUTOFF).unwrap();
            assert_eq!(report.value, ActionOrder::Finite(n), "m for n = {}", n);
            assert!(!report.lower_bound_only);
        }
        let r = taft_wilson_r(3).unwrap().presentation.trusted().unwrap();
        let window = BasisWindow::new(&r, 2, WeightKind::Grade);
        let report = m_h(&r, r.group_likes(), &window, DEFAULT_CUTOFF).unwrap();
        assert_eq!(report.value, ActionOrder::Finite(1));
        let f = FieldDescriptor::rationals();
        let c = cyclic_group_algebra(6, &f)
            .unwrap()
            .presentation
            .trusted()
            .unwrap();
        let window = BasisWindow::with_length_cap(&c, 5, WeightKind::Length, 5);
        let report = m_h(&c, c.group_likes(), &window, DEFAULT_CUTOFF).unwrap();
        assert_eq!(report.value, ActionOrder::Finite(1));
    }

    #[test]
    fn restricted_enveloping_primitives_exclude_the_degree_two_generator() {
        let r = taft_wilson_r(3).unwrap().presentation.trusted().unwrap();
        let window = BasisWindow::new(&r, 2, WeightKind::Grade);
        let space = skew_primitives(&r, &Word::empty(), &Word::empty(), &window).unwrap();
        assert_eq!(space.basis, vec![poly(&r, "X"), poly(&r, "Y")]);
        assert!(!space.contains_x_minus_y);
        assert_eq!(space.prime_basis, space.basis);
    }

    #[test]
    fn group_algebra_skew_primitives_are_the_difference_line() {
        let f = FieldDescriptor::rationals();
        let c = cyclic_group_algebra(4, &f)
            .unwrap()
            .presentation
            .trusted()
            .unwrap();
        let window = BasisWindow::with_length_cap(&c, 3, WeightKind::Length, 3);
        let x = word(&c, "g");
        let y = word(&c, "g^3");
        let space = skew_primitives(&c, &x, &y, &window).unwrap();
        assert_eq!(space.dimension(), 1);
        assert!(space.contains_x_minus_y);
        assert!(space.prime_basis.is_empty());
        assert_eq!(space.basis[0], poly(&c, "g^3 - g"));
        let diag = skew_primitives(&c, &x, &x, &window).unwrap();
        assert_eq!(diag.dimension(), 0);
    }

    #[test]
    fn conjugation_order_divisor_structure() {
        let h = trusted_uq(12);
        let window = BasisWindow::new(&h, 1, WeightKind::Grade);
        let k_inv = word(&h, "K^-1");
        let space = skew_primitives(&h, &k_inv, &Word::empty(), &window).unwrap();
        let m = conjugation_matrix(&h, &space).unwrap();
        let mut power = Matrix::identity(h.field(), m.rows());
        for k in 1..=12u64 {
            power = power.mul_matrix(&m);
            if k < 12 {
                assert!(
                    !(12 % k == 0 && power.is_identity()),
                    "no proper divisor {} may reach the identity",
                    k
                );
            }
        }
        assert!(power.is_identity(), "the order itself reaches the identity");
    }

    #[test]
    fn window_growth_never_shrinks_spaces() {
        let h = trusted_uq(3);
        let k_inv = word(&h, "K^-1");
        let mut last = 0;
        for bound in 1..=3 {
            let window = BasisWindow::new(&h, bound, WeightKind::Grade);
            let dim = skew_primitives(&h, &k_inv, &Word::empty(), &window)
                .unwrap()
                .dimension();
            assert!(dim >= last, "bound {} shrank the space", bound);
            last = dim;
        }
    }

    #[test]
    fn degree_one_decomposition_is_direct() {
        let r = taft_wilson_r(3).unwrap().presentation.trusted().unwrap();
        let window = BasisWindow::new(&r, 2, WeightKind::Grade);
        let report = h1_decomposition_check(&r, &window).unwrap();
        assert_eq!(report.group_like_dimension, 1);
        assert_eq!(report.claimed_dimension, 3);
        assert_eq!(report.rank, 3);
        assert!(report.direct);

        let f = FieldDescriptor::rationals();
        let c = cyclic_group_algebra(6, &f)
            .unwrap()
            .presentation
            .trusted()
            .unwrap();
        let window = BasisWindow::with_length_cap(&c, 5, WeightKind::Length, 5);
        let report = h1_decomposition_check(&c, &window).unwrap();
        assert_eq!(report.group_like_dimension, 6);
        assert!(report.summands.is_empty());
        assert!(report.direct);
        assert_eq!(report.rank, report.window_dimension);

        let h = trusted_uq(3);
        let window = BasisWindow::new(&h, 1, WeightKind::Grade);
        let report = h1_decomposition_check(&h, &window).unwrap();
        assert_eq!(report.group_like_dimension, 3);
        assert_eq!(report.claimed_dimension, 5);
        assert!(report.direct);
    }

    #[test]
    fn laurent_decomposition_has_no_prime_parts() {
        let l = laurent_group_algebra()
            .unwrap()
            .presentation
            .trusted()
            .unwrap();
        let window = BasisWindow::with_length_cap(&l, 2, WeightKind::Length, 2);
        let report = h1_decomposition_check(&l, &window).unwrap();
        assert!(report.summands.is_empty());
        assert!(report.direct);
    }

    #[test]
    fn filtration_steps_pass_on_sound_weights() {
        let r = taft_wilson_r(3).unwrap().presentation.trusted().unwrap();
        let window = BasisWindow::new(&r, 4, WeightKind::Grade);
        for n in 0..=3 {
            let report = filtration_step_check(&r, n, &window);
            assert!(report.passed, "level {} failed: {:?}", n, report.witness);
            assert!(report.checked_words > 0);
        }
        let h = trusted_uq(3);
        let window = BasisWindow::new(&h, 2, WeightKind::Grade);
        for n in 0..=2 {
            assert!(filtration_step_check(&h, n, &window).passed);
        }
    }

    #[test]
    fn corrupted_filtration_weight_is_caught_with_witness() {
        let r = taft_wilson_variant(3, 1)
            .unwrap()
            .presentation
            .trusted()
            .unwrap();
        let window = BasisWindow::new(&r, 4, WeightKind::Grade);
        let report = filtration_step_check(&r, 1, &window);
        assert!(!report.passed);
        let witness = report.witness.unwrap();
        assert_eq!(witness.word, "Z");
        assert_eq!(witness.term, "X @ Y");
    }

    #[test]
    fn skew_primitive_output_is_deterministic() {
        let h = trusted_uq(5);
        let window = BasisWindow::new(&h, 2, WeightKind::Grade);
        let k_inv = word(&h, "K^-1");
        let a = skew_primitives(&h, &k_inv, &Word::empty(), &window).unwrap();
        let b = skew_primitives(&h, &k_inv, &Word::empty(), &window).unwrap();
        let render = |s: &SkewPrimitiveSpace| {
            s.basis
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        };
        assert_eq!(render(&a), render(&b));
    }

    #[test]
    fn undeclared_words_are_rejected() {
        let h = trusted_uq(3);
        let window = BasisWindow::new(&h, 1, WeightKind::Grade);
        let e = word(&h, "E");
        let err = skew_primitives(&h, &e, &Word::empty(), &window).unwrap_err();
        assert!(matches!(err, KernelError::NotGroupLike { .. }));
        let k_sq = word(&h, "K^2");
        let err = skew_primitives(&h, &k_sq, &Word::empty(), &window).unwrap_err();
        assert!(matches!(err, KernelError::NotGroupLike { .. }));
    }
}
