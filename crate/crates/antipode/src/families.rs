//! Built-in presentations for the standard families, parameterized over the
//! scalar fields, together with their expected invariants (used by the sweep
//! command and the regression suite).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::KernelError;
use crate::hopf::{HopfData, HopfPresentation};
use crate::ncpoly::{Alphabet, NcPoly, TensorPoly, Word};
use crate::rewrite::RuleSet;
use crate::scalar::{FieldDescriptor, MultOrder, Scalar};

/// A finite value or certified infinity, for expected invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Expectation {
    Finite(u64),
    Infinite,
}

/// What the literature says the invariants of a built-in example are.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedResults {
    pub m_h: Expectation,
    pub antipode_order: Expectation,
    /// In characteristic p: the divisibility bound 2·m_H·p^l on the order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_p_order_bound: Option<u64>,
    /// Total dimension when the algebra is finite-dimensional.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector_space_dimension: Option<u64>,
}

/// A built example: the presentation plus its expected invariants.
pub struct BuiltExample {
    pub presentation: HopfPresentation,
    pub expected: ExpectedResults,
}

fn monomial(alph: &Arc<Alphabet>, f: &FieldDescriptor, ids: Vec<u32>) -> NcPoly {
    NcPoly::monomial(alph, f, Word::from_ids(ids), Scalar::one(f))
}

/// Quantized Borel algebra: generators E, K, K⁻¹ with KE = qEK, K group-like
/// and E (1, K)-skew-primitive; q must avoid 0 and 1.
///
/// The declared group-like representatives {K, K⁻¹} are exhaustive for the
/// conjugation invariant: E-monomials can only be skew-primitive over the
/// pair (K⁻¹, 1), every other P_{Kᵃ,1} is just k(Kᵃ−1) on which conjugation
/// is trivial, so only a_{K⁻¹} contributes to the lcm.
pub fn uq_borel(
    field: &FieldDescriptor,
    q: Scalar,
    name: String,
) -> Result<BuiltExample, KernelError> {
    if q.is_zero() || q.is_one() {
        return Err(KernelError::InvalidPresentation {
            context: "quantized Borel builder".into(),
            message: "the parameter q must avoid 0 and 1".into(),
        });
    }
    let mut b = Alphabet::builder();
    let e = b.symbol("E", 1, 1)?;
    let (k, k_inv) = b.invertible_symbol("K")?;
    let alph = b.build();
    let q_inv = q.inv().expect("q is nonzero");
    let rules = RuleSet::new(
        &alph,
        field,
        vec![
            (Word::from_ids(vec![k, k_inv]), NcPoly::one(&alph, field)),
            (Word::from_ids(vec![k_inv, k]), NcPoly::one(&alph, field)),
            (
                Word::from_ids(vec![k, e]),
                NcPoly::monomial(&alph, field, Word::from_ids(vec![e, k]), q.clone()),
            ),
            // Consequence of KE = qEK, included for a confluent system.
            (
                Word::from_ids(vec![k_inv, e]),
                NcPoly::monomial(&alph, field, Word::from_ids(vec![e, k_inv]), q_inv),
            ),
        ],
    )?;
    let one = Scalar::one(field);
    let mut coproduct = BTreeMap::new();
    coproduct.insert(
        e,
        TensorPoly::from_terms(
            &alph,
            field,
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
            field,
            vec![((Word::single(k), Word::single(k)), one.clone())],
        ),
    );
    let mut counit = BTreeMap::new();
    counit.insert(e, Scalar::zero(field));
    counit.insert(k, one.clone());
    let mut antipode = BTreeMap::new();
    antipode.insert(
        e,
        NcPoly::monomial(&alph, field, Word::from_ids(vec![k_inv, e]), one.neg()),
    );
    antipode.insert(k, monomial(&alph, field, vec![k_inv]));
    let presentation = HopfPresentation::new(HopfData {
        name,
        description: "quantized Borel algebra: KE = qEK with K group-like and \
                      E a (1, K)-skew-primitive generator"
            .into(),
        field: field.clone(),
        alphabet: alph,
        rules,
        coproduct,
        counit,
        antipode,
        group_likes: vec![Word::single(k), Word::single(k_inv)],
        generation_degree: 1,
        exhaustive_group_likes: true,
    })?;
    let expected = match q.mult_order() {
        MultOrder::Finite(m) => ExpectedResults {
            m_h: Expectation::Finite(m),
            antipode_order: Expectation::Finite(2 * m),
            char_p_order_bound: (field.characteristic() > 0).then_some(2 * m),
            vector_space_dimension: None,
        },
        MultOrder::InfiniteCertified => ExpectedResults {
            m_h: Expectation::Infinite,
            antipode_order: Expectation::Infinite,
            char_p_order_bound: None,
            vector_space_dimension: None,
        },
        MultOrder::Zero => unreachable!("q is nonzero"),
    };
    Ok(BuiltExample {
        presentation,
        expected,
    })
}

/// Quantized Borel with q a primitive n-th root of unity (n ≥ 2).
pub fn uq_borel_cyclotomic(n: u64) -> Result<BuiltExample, KernelError> {
    if n < 2 {
        return Err(KernelError::InvalidPresentation {
            context: "quantized Borel builder".into(),
            message: "a primitive n-th root of unity needs n ≥ 2 (q must avoid 1)".into(),
        });
    }
    let field = FieldDescriptor::cyclotomic(n, "q")?;
    let q = field.generator().expect("cyclotomic field has a generator");
    uq_borel(&field, q, format!("uq-borel-cyclotomic-{}", n))
}

/// Quantized Borel with q transcendental (the rational-function field).
pub fn uq_borel_generic() -> Result<BuiltExample, KernelError> {
    let field = FieldDescriptor::rational_functions("q");
    let q = field.generator().expect("function field has a generator");
    uq_borel(&field, q, "uq-borel-generic".into())
}

/// The restricted enveloping algebra R over F_p (p ≥ 3): generators X, Y, Z
/// with [X,Y] = X, [Y,Z] = −Z, [X,Z] = ½X², X^p = 0, Y^p = Y, Z^p = 0; all
/// three generators have ε = 0, X and Y are primitive, Δ(Z) has the extra
/// term X⊗Y, and S(Z) = −Z + XY.
///
/// The grade weights (X:1, Y:0, Z:2) make every relation homogeneous except
/// ZX = XZ − ½X² (degree 3 vs 2), exhibiting that R is filtered but not
/// graded; the filtration weights are X:1, Y:1, Z:2.
pub fn taft_wilson_r(p: u64) -> Result<BuiltExample, KernelError> {
    taft_wilson_variant(p, 2)
}

/// As [`taft_wilson_r`] but with an adjustable filtration weight on Z, so
/// tests can exercise the filtration checks against a mis-declared weight
/// (the Hopf structure itself is unaffected by weights).
pub(crate) fn taft_wilson_variant(p: u64, z_filtration: u64) -> Result<BuiltExample, KernelError> {
    if p < 3 {
        return Err(KernelError::InvalidPresentation {
            context: "restricted enveloping builder".into(),
            message: format!("characteristic must be an odd prime (p ≥ 3), got {}", p),
        });
    }
    let field = FieldDescriptor::prime_field(p)?;
    let mut b = Alphabet::builder();
    let x = b.symbol("X", 1, 1)?;
    let y = b.symbol("Y", 0, 1)?;
    let z = b.symbol("Z", 2, z_filtration)?;
    let alph = b.build();
    let one = Scalar::one(&field);
    let half = Scalar::from_integer(&field, 2)
        .inv()
        .expect("2 is invertible for p ≥ 3");
    let p_usize = p as usize;
    let rules = RuleSet::new(
        &alph,
        &field,
        vec![
            // YX = XY − X
            (
                Word::from_ids(vec![y, x]),
                NcPoly::from_terms(
                    &alph,
                    &field,
                    vec![
                        (Word::from_ids(vec![x, y]), one.clone()),
                        (Word::single(x), one.neg()),
                    ],
                ),
            ),
            // ZY = YZ + Z
            (
                Word::from_ids(vec![z, y]),
                NcPoly::from_terms(
                    &alph,
                    &field,
                    vec![
                        (Word::from_ids(vec![y, z]), one.clone()),
                        (Word::single(z), one.clone()),
                    ],
                ),
            ),
            // ZX = XZ − ½X²
            (
                Word::from_ids(vec![z, x]),
                NcPoly::from_terms(
                    &alph,
                    &field,
                    vec![
                        (Word::from_ids(vec![x, z]), one.clone()),
                        (Word::from_ids(vec![x, x]), half.neg()),
                    ],
                ),
            ),
            (
                Word::single(x).repeated(p_usize),
                NcPoly::zero(&alph, &field),
            ),
            (
                Word::single(y).repeated(p_usize),
                NcPoly::monomial(&alph, &field, Word::single(y), one.clone()),
            ),
            (
                Word::single(z).repeated(p_usize),
                NcPoly::zero(&alph, &field),
            ),
        ],
    )?;
    let mut coproduct = BTreeMap::new();
    let primitive = |id: u32| {
        TensorPoly::from_terms(
            &alph,
            &field,
            vec![
                ((Word::single(id), Word::empty()), one.clone()),
                ((Word::empty(), Word::single(id)), one.clone()),
            ],
        )
    };
    coproduct.insert(x, primitive(x));
    coproduct.insert(y, primitive(y));
    coproduct.insert(
        z,
        TensorPoly::from_terms(
            &alph,
            &field,
            vec![
                ((Word::single(z), Word::empty()), one.clone()),
                ((Word::single(x), Word::single(y)), one.clone()),
                ((Word::empty(), Word::single(z)), one.clone()),
            ],
        ),
    );
    let mut counit = BTreeMap::new();
    counit.insert(x, Scalar::zero(&field));
    counit.insert(y, Scalar::zero(&field));
    counit.insert(z, Scalar::zero(&field));
    let mut antipode = BTreeMap::new();
    antipode.insert(
        x,
        NcPoly::monomial(&alph, &field, Word::single(x), one.neg()),
    );
    antipode.insert(
        y,
        NcPoly::monomial(&alph, &field, Word::single(y), one.neg()),
    );
    antipode.insert(
        z,
        NcPoly::from_terms(
            &alph,
            &field,
            vec![
                (Word::single(z), one.neg()),
                (Word::from_ids(vec![x, y]), one.clone()),
            ],
        ),
    );
    let presentation = HopfPresentation::new(HopfData {
        name: format!("taft-wilson-{}", p),
        description: "restricted enveloping algebra over F_p: [X,Y] = X, \
                      [Y,Z] = −Z, [X,Z] = ½X², with X^p = 0, Y^p = Y, Z^p = 0"
            .into(),
        field: field.clone(),
        alphabet: alph,
        rules,
        coproduct,
        counit,
        antipode,
        group_likes: vec![Word::empty()],
        generation_degree: 2,
        exhaustive_group_likes: true,
    })?;
    Ok(BuiltExample {
        presentation,
        expected: ExpectedResults {
            m_h: Expectation::Finite(1),
            antipode_order: Expectation::Finite(2 * p),
            char_p_order_bound: Some(2 * p),
            vector_space_dimension: Some(p * p * p),
        },
    })
}

/// Group algebra of the cyclic group of order n over the given field; the
/// antipode is inversion, so its order is 1 for n ≤ 2 and 2 otherwise.
pub fn cyclic_group_algebra(n: u64, field: &FieldDescriptor) -> Result<BuiltExample, KernelError> {
    if n == 0 {
        return Err(KernelError::InvalidPresentation {
            context: "cyclic group builder".into(),
            message: "group order must be at least 1".into(),
        });
    }
    let mut b = Alphabet::builder();
    let g = b.symbol("g", 0, 0)?;
    let alph = b.build();
    let one = Scalar::one(field);
    let rules = RuleSet::new(
        &alph,
        field,
        vec![(
            Word::single(g).repeated(n as usize),
            NcPoly::one(&alph, field),
        )],
    )?;
    let mut coproduct = BTreeMap::new();
    coproduct.insert(
        g,
        TensorPoly::from_terms(
            &alph,
            field,
            vec![((Word::single(g), Word::single(g)), one.clone())],
        ),
    );
    let mut counit = BTreeMap::new();
    counit.insert(g, one.clone());
    let mut antipode = BTreeMap::new();
    antipode.insert(
        g,
        NcPoly::monomial(
            &alph,
            field,
            Word::single(g).repeated((n - 1) as usize),
            one.clone(),
        ),
    );
    let group_likes = (0..n)
        .map(|a| Word::single(g).repeated(a as usize))
        .collect();
    let name = if field.characteristic() > 0 {
        format!("cyclic-{}-f{}", n, field.characteristic())
    } else {
        format!("cyclic-{}", n)
    };
    let presentation = HopfPresentation::new(HopfData {
        name,
        description: format!("group algebra of the cyclic group of order {}", n),
        field: field.clone(),
        alphabet: alph,
        rules,
        coproduct,
        counit,
        antipode,
        group_likes,
        generation_degree: 0,
        exhaustive_group_likes: true,
    })?;
    Ok(BuiltExample {
        presentation,
        expected: ExpectedResults {
            m_h: Expectation::Finite(1),
            antipode_order: Expectation::Finite(if n <= 2 { 1 } else { 2 }),
            char_p_order_bound: (field.characteristic() > 0).then_some(2),
            vector_space_dimension: Some(n),
        },
    })
}

/// Group algebra of the infinite cyclic group (Laurent polynomials) over the
/// rationals: one invertible group-like generator t.
pub fn laurent_group_algebra() -> Result<BuiltExample, KernelError> {
    let field = FieldDescriptor::rationals();
    let mut b = Alphabet::builder();
    let (t, t_inv) = b.invertible_symbol("t")?;
    let alph = b.build();
    let one = Scalar::one(&field);
    let rules = RuleSet::new(
        &alph,
        &field,
        vec![
            (Word::from_ids(vec![t, t_inv]), NcPoly::one(&alph, &field)),
            (Word::from_ids(vec![t_inv, t]), NcPoly::one(&alph, &field)),
        ],
    )?;
    let mut coproduct = BTreeMap::new();
    coproduct.insert(
        t,
        TensorPoly::from_terms(
            &alph,
            &field,
            vec![((Word::single(t), Word::single(t)), one.clone())],
        ),
    );
    let mut counit = BTreeMap::new();
    counit.insert(t, one.clone());
    let mut antipode = BTreeMap::new();
    antipode.insert(t, monomial(&alph, &field, vec![t_inv]));
    let presentation = HopfPresentation::new(HopfData {
        name: "laurent".into(),
        description: "group algebra of the infinite cyclic group \
                      (Laurent polynomials in one group-like generator)"
            .into(),
        field,
        alphabet: alph,
        rules,
        coproduct,
        counit,
        antipode,
        group_likes: vec![Word::single(t), Word::single(t_inv)],
        generation_degree: 0,
        exhaustive_group_likes: true,
    })?;
    Ok(BuiltExample {
        presentation,
        expected: ExpectedResults {
            m_h: Expectation::Finite(1),
            antipode_order: Expectation::Finite(2),
            char_p_order_bound: None,
            vector_space_dimension: None,
        },
    })
}

/// All built-in examples at stock parameters, for "verify everything" flows.
pub fn stock_examples() -> Vec<BuiltExample> {
    let rationals = FieldDescriptor::rationals();
    vec![
        uq_borel_cyclotomic(3).expect("stock builder"),
        uq_borel_generic().expect("stock builder"),
        taft_wilson_r(5).expect("stock builder"),
        cyclic_group_algebra(6, &rationals).expect("stock builder"),
        laurent_group_algebra().expect("stock builder"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::WeightKind;

    #[test]
    fn all_builders_verify() {
        for example in stock_examples() {
            let name = example.presentation.name().to_string();
            let bialgebra = example.presentation.verify_bialgebra();
            assert!(
                bialgebra.passed,
                "{}: {:?}",
                name,
                bialgebra.first_failure()
            );
            let antipode = example.presentation.verify_antipode();
            assert!(antipode.passed, "{}: {:?}", name, antipode.first_failure());
            assert!(
                antipode.warnings.is_empty(),
                "{}: unexpected warnings",
                name
            );
            example.presentation.trusted().unwrap();
        }
    }

    #[test]
    fn builders_reject_degenerate_parameters() {
        assert!(uq_borel_cyclotomic(1).is_err());
        let f = FieldDescriptor::rationals();
        assert!(uq_borel(&f, Scalar::one(&f), "bad".into()).is_err());
        assert!(uq_borel(&f, Scalar::zero(&f), "bad".into()).is_err());
        assert!(taft_wilson_r(2).is_err());
        assert!(taft_wilson_r(4).is_err());
        assert!(cyclic_group_algebra(0, &f).is_err());
    }

    #[test]
    fn rule_sets_are_confluent() {
        for example in stock_examples() {
            let rules = example.presentation.rules();
            let report = rules.confluence_report(rules.max_overlap_len());
            assert!(
                report.is_empty(),
                "{}: {} non-joinable overlaps",
                example.presentation.name(),
                report.len()
            );
        }
    }

    #[test]
    fn restricted_enveloping_dimension_is_p_cubed() {
        for p in [3u64, 5] {
            let example = taft_wilson_r(p).unwrap();
            let rules = example.presentation.rules();
            let basis = rules.word_basis(3 * (p - 1), WeightKind::Length, None);
            assert_eq!(basis.len() as u64, p * p * p, "dimension for p = {}", p);
        }
    }

    #[test]
    fn cyclic_dimension_and_laurent_inverses() {
        let f = FieldDescriptor::rationals();
        for n in [1u64, 2, 3, 6] {
            let example = cyclic_group_algebra(n, &f).unwrap();
            let rules = example.presentation.rules();
            let basis = rules.word_basis(n - 1, WeightKind::Length, None);
            assert_eq!(basis.len() as u64, n, "dimension for n = {}", n);
        }
        let laurent = laurent_group_algebra().unwrap();
        let t = laurent.presentation.alphabet().lookup("t").unwrap();
        let t_inv = laurent
            .presentation
            .alphabet()
            .symbol_info(t)
            .paired_inverse()
            .unwrap();
        assert_eq!(
            laurent.presentation.group_like_inverse(&Word::single(t)),
            Some(Word::single(t_inv))
        );
    }

    #[test]
    fn expected_invariants_by_family() {
        assert_eq!(
            uq_borel_cyclotomic(5).unwrap().expected.m_h,
            Expectation::Finite(5)
        );
        assert_eq!(
            uq_borel_cyclotomic(5).unwrap().expected.antipode_order,
            Expectation::Finite(10)
        );
        assert_eq!(
            uq_borel_generic().unwrap().expected.antipode_order,
            Expectation::Infinite
        );
        let tw = taft_wilson_r(7).unwrap().expected;
        assert_eq!(tw.antipode_order, Expectation::Finite(14));
        assert_eq!(tw.char_p_order_bound, Some(14));
        assert_eq!(tw.vector_space_dimension, Some(343));
        let f = FieldDescriptor::rationals();
        assert_eq!(
            cyclic_group_algebra(2, &f).unwrap().expected.antipode_order,
            Expectation::Finite(1)
        );
        assert_eq!(
            cyclic_group_algebra(3, &f).unwrap().expected.antipode_order,
            Expectation::Finite(2)
        );
    }
}
