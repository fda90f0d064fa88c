//! Dense univariate polynomials over the rationals.
//!
//! These back the rational-function and cyclotomic scalar fields. Coefficients
//! are exact `BigRational`s and the representation is canonical: no trailing
//! zero coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    /// Coefficients, lowest degree first. Invariant: last entry is nonzero.
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn variable() -> Self {
        QPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division; panics if `div` is zero.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < div.coeffs.len() {
            return (QPoly::zero(), self.clone());
        }
        let dd = div.coeffs.len() - 1;
        let lead_inv = div.coeffs.last().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in div.coeffs.iter().enumerate() {
                    let v = &c * b;
                    rem[k + j] -= v;
                }
            }
            quot[k] = c;
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Extended gcd: returns (g, s, t) with g monic and s*self + t*other = g.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = QPoly::one();
        let mut s1 = QPoly::zero();
        let mut t0 = QPoly::zero();
        let mut t1 = QPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (QPoly::zero(), QPoly::zero(), QPoly::zero());
        }
        let lead = r0.leading_coeff().unwrap().clone();
        let inv = lead.recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn into_monic(self) -> Self {
        match self.leading_coeff() {
            None => self,
            Some(l) if l.is_one() => self,
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// x^n - 1.
    fn power_minus_one(n: u64) -> Self {
        let mut coeffs = vec![BigRational::zero(); n as usize + 1];
        coeffs[0] = -BigRational::one();
        coeffs[n as usize] = BigRational::one();
        QPoly::from_coeffs(coeffs)
    }

    /// The n-th cyclotomic polynomial, computed as (x^n - 1) divided by the
    /// product of the lower cyclotomic polynomials at divisors of n.
    pub fn cyclotomic(n: u64) -> Self {
        assert!(n >= 1, "cyclotomic index must be positive");
        let mut num = QPoly::power_minus_one(n);
        for d in 1..n {
            if n.is_multiple_of(d) {
                let phi_d = QPoly::cyclotomic(d);
                let (q, r) = num.div_rem(&phi_d);
                debug_assert!(r.is_zero());
                num = q;
            }
        }
        num
    }
}

/// Renders a polynomial in `var`, highest degree first, with explicit `*` and
/// `^` so the expression parser round-trips it.
pub fn format_poly(p: &QPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for i in (0..p.coeffs().len()).rev() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag_one = mag.is_one();
        if i == 0 {
            out.push_str(&format_rational(&mag));
        } else {
            if !mag_one {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(var);
            if i > 1 {
                out.push('^');
                out.push_str(&i.to_string());
            }
        }
    }
    out
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    #[test]
    fn div_rem_exact() {
        // (x^2 - 1) / (x - 1) = x + 1
        let num = QPoly::from_coeffs(vec![q(-1), q(0), q(1)]);
        let den = QPoly::from_coeffs(vec![q(-1), q(1)]);
        let (quot, rem) = num.div_rem(&den);
        assert!(rem.is_zero());
        assert_eq!(quot, QPoly::from_coeffs(vec![q(1), q(1)]));
    }

    #[test]
    fn cyclotomic_small_indices() {
        // Phi_1 = x - 1, Phi_2 = x + 1, Phi_4 = x^2 + 1, Phi_6 = x^2 - x + 1
        assert_eq!(QPoly::cyclotomic(1), QPoly::from_coeffs(vec![q(-1), q(1)]));
        assert_eq!(QPoly::cyclotomic(2), QPoly::from_coeffs(vec![q(1), q(1)]));
        assert_eq!(
            QPoly::cyclotomic(4),
            QPoly::from_coeffs(vec![q(1), q(0), q(1)])
        );
        assert_eq!(
            QPoly::cyclotomic(6),
            QPoly::from_coeffs(vec![q(1), q(-1), q(1)])
        );
        // Phi_12 = x^4 - x^2 + 1
        assert_eq!(
            QPoly::cyclotomic(12),
            QPoly::from_coeffs(vec![q(1), q(0), q(-1), q(0), q(1)])
        );
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = QPoly::from_coeffs(vec![q(-1), q(0), q(1)]); // x^2 - 1
        let b = QPoly::from_coeffs(vec![q(1), q(1)]); // x + 1
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(g, QPoly::from_coeffs(vec![q(1), q(1)]));
        let combo = s.mul(&a).add(&t.mul(&b));
        assert_eq!(combo, g);
    }

    #[test]
    fn cyclotomic_divides_power_minus_one() {
        for n in 1..=16u64 {
            let phi = QPoly::cyclotomic(n);
            let (_, r) = QPoly::power_minus_one(n).div_rem(&phi);
            assert!(r.is_zero(), "Phi_{} must divide x^{} - 1", n, n);
        }
    }
}
