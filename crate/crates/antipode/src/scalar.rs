//! Exact scalar arithmetic over the four supported coefficient fields.
//!
//! Every scalar carries its field descriptor and is kept in a canonical form,
//! so equality is structural:
//!
//! * rationals — reduced `BigRational`;
//! * prime fields — a residue in `0..p` with `p` verified prime;
//! * rational functions in one variable over the rationals — a reduced
//!   fraction of polynomials with monic denominator;
//! * cyclotomic fields — a rational polynomial in the root, reduced modulo
//!   the cyclotomic minimal polynomial.
//!
//! Mixing scalars from different fields is a programming error inside the
//! kernel, so the arithmetic methods panic on mismatch; the fallible entry
//! point [`field_arith`] is what the CLI and FFI layers use.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::KernelError;
use crate::upoly::{format_poly, format_rational, QPoly};

/// Which exact field coefficients live in.
///
/// Cheap to clone: the cyclotomic minimal polynomial is shared behind an
/// `Arc` and computed once per descriptor.
#[derive(Clone, Debug)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField {
        p: u64,
    },
    RationalFunctions {
        var: Arc<str>,
    },
    Cyclotomic {
        n: u64,
        var: Arc<str>,
        minimal_poly: Arc<QPoly>,
    },
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldDescriptor::Rationals, FieldDescriptor::Rationals) => true,
            (FieldDescriptor::PrimeField { p: a }, FieldDescriptor::PrimeField { p: b }) => a == b,
            (
                FieldDescriptor::RationalFunctions { var: a },
                FieldDescriptor::RationalFunctions { var: b },
            ) => a == b,
            (
                FieldDescriptor::Cyclotomic { n: a, var: va, .. },
                FieldDescriptor::Cyclotomic { n: b, var: vb, .. },
            ) => a == b && va == vb,
            _ => false,
        }
    }
}

impl Eq for FieldDescriptor {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= p) {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Divisors of `n` in increasing order.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor::Rationals
    }

    pub fn prime_field(p: u64) -> Result<Self, KernelError> {
        if !is_prime(p) {
            return Err(KernelError::NotPrime { p });
        }
        Ok(FieldDescriptor::PrimeField { p })
    }

    pub fn rational_functions(var: &str) -> Self {
        FieldDescriptor::RationalFunctions { var: var.into() }
    }

    pub fn cyclotomic(n: u64, var: &str) -> Result<Self, KernelError> {
        if n == 0 {
            return Err(KernelError::InvalidCyclotomicIndex { n });
        }
        Ok(FieldDescriptor::Cyclotomic {
            n,
            var: var.into(),
            minimal_poly: Arc::new(QPoly::cyclotomic(n)),
        })
    }

    /// Field characteristic: 0 except for prime fields.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::PrimeField { p } => *p,
            _ => 0,
        }
    }

    /// The distinguished field element used by builders: the generator `q`
    /// (the variable for rational functions, the root for cyclotomics).
    /// Rationals and prime fields have none.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            FieldDescriptor::RationalFunctions { .. } => Some(Scalar {
                field: self.clone(),
                repr: Repr::RationalFunction {
                    num: QPoly::variable(),
                    den: QPoly::one(),
                },
            }),
            FieldDescriptor::Cyclotomic { minimal_poly, .. } => {
                let x = QPoly::variable();
                let (_, reduced) = x.div_rem(minimal_poly);
                Some(Scalar {
                    field: self.clone(),
                    repr: Repr::Cyclotomic(reduced),
                })
            }
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FieldDescriptor::Rationals => "Q".to_string(),
            FieldDescriptor::PrimeField { p } => format!("F_{}", p),
            FieldDescriptor::RationalFunctions { var } => format!("Q({})", var),
            FieldDescriptor::Cyclotomic { n, var, .. } => {
                format!("Q({} : {}-th root of unity)", var, n)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Rational(BigRational),
    Prime(u64),
    /// Reduced fraction: gcd(num, den) = 1, den monic and nonzero;
    /// zero is represented as 0/1.
    RationalFunction {
        num: QPoly,
        den: QPoly,
    },
    /// Residue modulo the cyclotomic minimal polynomial (degree strictly
    /// below its degree).
    Cyclotomic(QPoly),
}

/// An element of one of the supported fields, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    field: FieldDescriptor,
    repr: Repr,
}

/// Result of asking for a scalar's multiplicative order.
///
/// `InfiniteCertified` is only returned when the field's unit-group structure
/// rules out finite order (roots of unity in each supported field are known
/// exactly), so it is a proof, not a search timeout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultOrder {
    /// The element is zero and has no multiplicative order.
    Zero,
    Finite(u64),
    InfiniteCertified,
}

impl Scalar {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn zero(field: &FieldDescriptor) -> Self {
        let repr = match field {
            FieldDescriptor::Rationals => Repr::Rational(BigRational::zero()),
            FieldDescriptor::PrimeField { .. } => Repr::Prime(0),
            FieldDescriptor::RationalFunctions { .. } => Repr::RationalFunction {
                num: QPoly::zero(),
                den: QPoly::one(),
            },
            FieldDescriptor::Cyclotomic { .. } => Repr::Cyclotomic(QPoly::zero()),
        };
        Scalar {
            field: field.clone(),
            repr,
        }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        Scalar::from_rational(field, BigRational::one())
    }

    pub fn from_integer(field: &FieldDescriptor, n: i64) -> Self {
        Scalar::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    /// Embeds a rational number into the field (reducing mod p for prime
    /// fields; fails there only if the denominator vanishes mod p, which
    /// callers surface through [`field_arith`]-style division instead).
    pub fn from_rational(field: &FieldDescriptor, r: BigRational) -> Self {
        match field {
            FieldDescriptor::Rationals => Scalar {
                field: field.clone(),
                repr: Repr::Rational(r),
            },
            FieldDescriptor::PrimeField { p } => {
                let num = residue_of_bigint(r.numer(), *p);
                let den = residue_of_bigint(r.denom(), *p);
                assert!(
                    den != 0,
                    "rational {} has denominator divisible by {}",
                    r,
                    p
                );
                Scalar {
                    field: field.clone(),
                    repr: Repr::Prime(mul_mod(num, inv_mod(den, *p), *p)),
                }
            }
            FieldDescriptor::RationalFunctions { .. } => Scalar {
                field: field.clone(),
                repr: Repr::RationalFunction {
                    num: QPoly::constant(r),
                    den: QPoly::one(),
                },
            },
            FieldDescriptor::Cyclotomic { .. } => Scalar {
                field: field.clone(),
                repr: Repr::Cyclotomic(QPoly::constant(r)),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Prime(a) => *a == 0,
            Repr::RationalFunction { num, .. } => num.is_zero(),
            Repr::Cyclotomic(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one(&self.field)
    }

    fn assert_same_field(&self, other: &Scalar, op: &str) {
        assert!(
            self.field == other.field,
            "scalar {} across different fields: {} vs {}",
            op,
            self.field.describe(),
            other.field.describe()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other, "addition");
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Prime(a), Repr::Prime(b)) => {
                let p = self.field.characteristic();
                Repr::Prime((a + b) % p)
            }
            (
                Repr::RationalFunction { num: n1, den: d1 },
                Repr::RationalFunction { num: n2, den: d2 },
            ) => {
                let num = n1.mul(d2).add(&n2.mul(d1));
                let den = d1.mul(d2);
                return Scalar::make_rational_function(&self.field, num, den);
            }
            (Repr::Cyclotomic(a), Repr::Cyclotomic(b)) => Repr::Cyclotomic(a.add(b)),
            _ => unreachable!("field descriptor / repr mismatch"),
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Prime(a) => {
                let p = self.field.characteristic();
                Repr::Prime(if *a == 0 { 0 } else { p - a })
            }
            Repr::RationalFunction { num, den } => Repr::RationalFunction {
                num: num.neg(),
                den: den.clone(),
            },
            Repr::Cyclotomic(a) => Repr::Cyclotomic(a.neg()),
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other, "multiplication");
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Prime(a), Repr::Prime(b)) => {
                let p = self.field.characteristic();
                Repr::Prime(mul_mod(*a, *b, p))
            }
            (
                Repr::RationalFunction { num: n1, den: d1 },
                Repr::RationalFunction { num: n2, den: d2 },
            ) => {
                return Scalar::make_rational_function(&self.field, n1.mul(n2), d1.mul(d2));
            }
            (Repr::Cyclotomic(a), Repr::Cyclotomic(b)) => {
                let minimal = match &self.field {
                    FieldDescriptor::Cyclotomic { minimal_poly, .. } => minimal_poly,
                    _ => unreachable!(),
                };
                let (_, r) = a.mul(b).div_rem(minimal);
                Repr::Cyclotomic(r)
            }
            _ => unreachable!("field descriptor / repr mismatch"),
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn inv(&self) -> Result<Scalar, KernelError> {
        if self.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(a.recip()),
            Repr::Prime(a) => Repr::Prime(inv_mod(*a, self.field.characteristic())),
            Repr::RationalFunction { num, den } => {
                return Ok(Scalar::make_rational_function(
                    &self.field,
                    den.clone(),
                    num.clone(),
                ));
            }
            Repr::Cyclotomic(a) => {
                let minimal = match &self.field {
                    FieldDescriptor::Cyclotomic { minimal_poly, .. } => minimal_poly,
                    _ => unreachable!(),
                };
                // Bezout: s*a + t*phi = 1, so s is the inverse mod phi.
                let (g, s, _) = a.extended_gcd(minimal);
                assert!(
                    g.is_constant() && !g.is_zero(),
                    "cyclotomic minimal polynomial shares a factor with a nonzero residue"
                );
                let (_, r) = s.div_rem(minimal);
                Repr::Cyclotomic(r)
            }
        };
        Ok(Scalar {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, KernelError> {
        self.assert_same_field(other, "division");
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar, KernelError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one(&self.field);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    fn make_rational_function(field: &FieldDescriptor, num: QPoly, den: QPoly) -> Scalar {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Scalar::zero(field);
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        // Normalise so the denominator is monic.
        let lead = den.leading_coeff().unwrap().clone();
        let inv = lead.recip();
        Scalar {
            field: field.clone(),
            repr: Repr::RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            },
        }
    }

    /// If the scalar is (an embedding of) a rational number, returns it.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rational(r) => Some(r.clone()),
            Repr::Prime(_) => None,
            Repr::RationalFunction { num, den } => {
                if num.is_constant() && den.is_constant() {
                    Some(num.coeff(0) / den.coeff(0))
                } else {
                    None
                }
            }
            Repr::Cyclotomic(p) => {
                if p.is_constant() {
                    Some(p.coeff(0))
                } else {
                    None
                }
            }
        }
    }

    /// Multiplicative order with certification.
    ///
    /// * Rationals: only ±1 have finite order.
    /// * F_p: the unit group is cyclic of order p-1, so the order is the
    ///   least divisor d of p-1 with s^d = 1.
    /// * Q(x): the units of finite order are the constants ±1; any
    ///   non-constant (or other constant) has infinite order.
    /// * Q(zeta_n): the roots of unity are exactly ±zeta_n^k, whose orders
    ///   divide lcm(2, n); checking those divisors decides the question.
    pub fn mult_order(&self) -> MultOrder {
        if self.is_zero() {
            return MultOrder::Zero;
        }
        match &self.field {
            FieldDescriptor::Rationals | FieldDescriptor::RationalFunctions { .. } => {
                match self.as_rational() {
                    Some(r) if r.is_one() => MultOrder::Finite(1),
                    Some(r) if r == -BigRational::one() => MultOrder::Finite(2),
                    _ => MultOrder::InfiniteCertified,
                }
            }
            FieldDescriptor::PrimeField { p } => {
                for d in divisors(p - 1) {
                    if self.pow(d as i64).expect("nonzero base").is_one() {
                        return MultOrder::Finite(d);
                    }
                }
                unreachable!("every unit of F_p has order dividing p-1")
            }
            FieldDescriptor::Cyclotomic { n, .. } => {
                for d in divisors(lcm_u64(2, *n)) {
                    if self.pow(d as i64).expect("nonzero base").is_one() {
                        return MultOrder::Finite(d);
                    }
                }
                MultOrder::InfiniteCertified
            }
        }
    }
}

fn residue_of_bigint(n: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = n % &p_big;
    if r.sign() == num_bigint::Sign::Minus {
        r += &p_big;
    }
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p, valid since p is prime and a != 0.
    assert!(a != 0, "inverse of zero residue");
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// The binary operations exposed through the fallible arithmetic entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Fallible scalar arithmetic for callers outside the kernel (CLI, FFI):
/// reports field mismatches and division by zero as errors instead of
/// panicking.
pub fn field_arith(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar, KernelError> {
    if a.field() != b.field() {
        return Err(KernelError::FieldMismatch {
            left: a.field().describe(),
            right: b.field().describe(),
        });
    }
    match op {
        FieldOp::Add => Ok(a.add(b)),
        FieldOp::Sub => Ok(a.sub(b)),
        FieldOp::Mul => Ok(a.mul(b)),
        FieldOp::Div => a.div(b),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.repr, &self.field) {
            (Repr::Rational(r), _) => write!(f, "{}", format_rational(r)),
            (Repr::Prime(a), _) => write!(f, "{}", a),
            (Repr::RationalFunction { num, den }, FieldDescriptor::RationalFunctions { var }) => {
                if den.is_constant() {
                    // den is monic, so a constant denominator is exactly 1.
                    write_maybe_parenthesised(f, num, var)
                } else {
                    write_maybe_parenthesised(f, num, var)?;
                    write!(f, " / ")?;
                    write_maybe_parenthesised(f, den, var)
                }
            }
            (Repr::Cyclotomic(p), FieldDescriptor::Cyclotomic { var, .. }) => {
                write_maybe_parenthesised(f, p, var)
            }
            _ => unreachable!("field descriptor / repr mismatch"),
        }
    }
}

fn write_maybe_parenthesised(f: &mut fmt::Formatter<'_>, p: &QPoly, var: &str) -> fmt::Result {
    let s = format_poly(p, var);
    let atomic = !s.contains(' ');
    if atomic {
        write!(f, "{}", s)
    } else {
        write!(f, "({})", s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(field: &FieldDescriptor, n: i64, d: i64) -> Scalar {
        Scalar::from_rational(field, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldDescriptor::rationals();
        let sum = rat(&f, 1, 2).add(&rat(&f, 1, 3));
        assert_eq!(sum, rat(&f, 5, 6));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldDescriptor::prime_field(5).unwrap();
        let prod = Scalar::from_integer(&f, 3).mul(&Scalar::from_integer(&f, 4));
        assert_eq!(prod, Scalar::from_integer(&f, 2));
        // 1/2 = 3 in F_5
        assert_eq!(rat(&f, 1, 2), Scalar::from_integer(&f, 3));
    }

    #[test]
    fn prime_field_requires_prime() {
        assert!(FieldDescriptor::prime_field(6).is_err());
        assert!(FieldDescriptor::prime_field(1).is_err());
        assert!(FieldDescriptor::prime_field(2).is_ok());
        assert!(FieldDescriptor::prime_field(97).is_ok());
    }

    #[test]
    fn fourth_root_of_unity_squares_to_minus_one() {
        let f = FieldDescriptor::cyclotomic(4, "i").unwrap();
        let i = f.generator().unwrap();
        assert_eq!(i.mul(&i), Scalar::from_integer(&f, -1));
        assert_eq!(i.pow(4).unwrap(), Scalar::one(&f));
    }

    #[test]
    fn cyclotomic_inverse() {
        let f = FieldDescriptor::cyclotomic(5, "z").unwrap();
        let z = f.generator().unwrap();
        let one = Scalar::one(&f);
        assert_eq!(z.mul(&z.inv().unwrap()), one);
        // zeta^-1 = zeta^4
        assert_eq!(z.inv().unwrap(), z.pow(4).unwrap());
    }

    #[test]
    fn rational_function_arithmetic_reduces() {
        let f = FieldDescriptor::rational_functions("q");
        let q = f.generator().unwrap();
        let one = Scalar::one(&f);
        // (q^2 - 1) / (q - 1) = q + 1
        let num = q.mul(&q).sub(&one);
        let den = q.sub(&one);
        let val = num.div(&den).unwrap();
        assert_eq!(val, q.add(&one));
        assert_eq!(q.mul(&q.inv().unwrap()), one);
    }

    #[test]
    fn mult_order_brute_force_agrees_on_prime_field() {
        let f = FieldDescriptor::prime_field(5).unwrap();
        for a in 1..5i64 {
            let s = Scalar::from_integer(&f, a);
            // Brute-force oracle: multiply until we return to one.
            let mut acc = s.clone();
            let mut k = 1u64;
            while !acc.is_one() {
                acc = acc.mul(&s);
                k += 1;
            }
            assert_eq!(s.mult_order(), MultOrder::Finite(k), "order of {} mod 5", a);
        }
        assert_eq!(
            Scalar::from_integer(&f, 2).mult_order(),
            MultOrder::Finite(4)
        );
    }

    #[test]
    fn mult_order_certification() {
        let q_field = FieldDescriptor::rationals();
        assert_eq!(Scalar::one(&q_field).mult_order(), MultOrder::Finite(1));
        assert_eq!(
            Scalar::from_integer(&q_field, -1).mult_order(),
            MultOrder::Finite(2)
        );
        assert_eq!(
            Scalar::from_integer(&q_field, 2).mult_order(),
            MultOrder::InfiniteCertified
        );
        assert_eq!(Scalar::zero(&q_field).mult_order(), MultOrder::Zero);

        let fun = FieldDescriptor::rational_functions("q");
        assert_eq!(
            fun.generator().unwrap().mult_order(),
            MultOrder::InfiniteCertified
        );
        assert_eq!(
            Scalar::from_integer(&fun, -1).mult_order(),
            MultOrder::Finite(2)
        );

        let cyc = FieldDescriptor::cyclotomic(12, "z").unwrap();
        let z = cyc.generator().unwrap();
        assert_eq!(z.mult_order(), MultOrder::Finite(12));
        assert_eq!(z.neg().mult_order(), MultOrder::Finite(12));
        assert_eq!(z.pow(2).unwrap().mult_order(), MultOrder::Finite(6));
        assert_eq!(
            z.add(&Scalar::one(&cyc)).mult_order(),
            MultOrder::InfiniteCertified
        );
    }

    #[test]
    fn display_round_trip_forms() {
        let f = FieldDescriptor::rational_functions("q");
        let q = f.generator().unwrap();
        let one = Scalar::one(&f);
        assert_eq!(q.to_string(), "q");
        assert_eq!(q.inv().unwrap().to_string(), "1 / q");
        let v = q.add(&one).div(&q).unwrap();
        assert_eq!(v.to_string(), "(q + 1) / q");
        let c = FieldDescriptor::cyclotomic(4, "i").unwrap();
        let i = c.generator().unwrap();
        assert_eq!(i.to_string(), "i");
        assert_eq!(i.mul(&i).to_string(), "-1");
    }
}
