use std::fmt;

use super::numtheory::prime_factors;
use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// Univariate polynomial over a [`Field`], constant term first, with no
/// trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::params("polynomial coefficient outside the field"));
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(Polynomial {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn from_values(field: &Field, values: &[u32]) -> Result<Self> {
        Polynomial::new(field, values.iter().map(|&v| FieldElement(v)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Polynomial::monomial(field, FieldElement::ONE, 0)
    }

    pub fn monomial(field: &Field, c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        coeffs[degree] = c;
        Polynomial::trimmed(field.clone(), coeffs)
    }

    fn trimmed(field: Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    /// Monic product of `(x - root)` over all supplied roots.
    pub fn from_roots(field: &Field, roots: &[FieldElement]) -> Self {
        let mut coeffs = vec![FieldElement::ONE];
        for &root in roots {
            let neg = field.neg(root);
            let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], c);
                next[i] = field.add(next[i], field.mul(c, neg));
            }
            coeffs = next;
        }
        Polynomial::trimmed(field.clone(), coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Polynomial::trimmed(f.clone(), coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Polynomial::trimmed(f.clone(), coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(f);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::trimmed(f.clone(), out)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let f = &self.field;
        Polynomial::trimmed(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((
            Polynomial::trimmed(f.clone(), quot),
            Polynomial::trimmed(f.clone(), rem),
        ))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Polynomial {
        match self.field.inv(self.leading()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    /// Returns `(g, s, t)` with `s * self + t * other = g`, where `g` is the
    /// (not necessarily monic) gcd.
    pub fn ext_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::one(f), Polynomial::zero(f));
        let (mut t0, mut t1) = (Polynomial::zero(f), Polynomial::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("r1 nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        self.ext_gcd(other).0.monic()
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &Polynomial) -> Result<Polynomial> {
        let mut base = self.rem(modulus)?;
        let mut acc = Polynomial::one(&self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Rabin's irreducibility test: `f` of degree `n` over GF(q) is
    /// irreducible iff `x^(q^n) = x mod f` and `gcd(x^(q^(n/l)) - x, f) = 1`
    /// for every prime `l | n`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = &self.field;
        let q = f.order();
        let x = Polynomial::monomial(f, FieldElement::ONE, 1);
        // frob[j] = x^(q^j) mod self
        let mut frob = vec![x.rem(self).expect("nonzero modulus")];
        for j in 1..=n {
            let next = frob[j - 1].pow_mod(q, self).expect("nonzero modulus");
            frob.push(next);
        }
        if frob[n] != frob[0] {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|l| {
            let h = frob[n / l as usize].sub(&x);
            h.gcd(self).degree() == Some(0)
        })
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({:?}, {})", self.field, self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.value()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, v) => write!(f, "{v}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::new(p, 1).unwrap()
    }

    #[test]
    fn empty_product_is_one() {
        let f = gf(5);
        assert_eq!(Polynomial::from_roots(&f, &[]), Polynomial::one(&f));
    }

    #[test]
    fn roots_are_zeros() {
        let f = gf(7);
        let roots = [FieldElement(1), FieldElement(3), FieldElement(3), FieldElement(6)];
        let poly = Polynomial::from_roots(&f, &roots);
        assert_eq!(poly.degree(), Some(4));
        assert_eq!(poly.leading(), FieldElement::ONE);
        for r in roots {
            assert!(poly.eval(r).is_zero());
        }
        assert!(!poly.eval(FieldElement(2)).is_zero());
    }

    #[test]
    fn division_identity() {
        let f = gf(5);
        let a = Polynomial::from_values(&f, &[1, 2, 3, 4, 1]).unwrap();
        let b = Polynomial::from_values(&f, &[2, 0, 3]).unwrap();
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(a.div_rem(&Polynomial::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn gcd_and_bezout() {
        let f = gf(7);
        let common = Polynomial::from_roots(&f, &[FieldElement(2), FieldElement(5)]);
        let a = common.mul(&Polynomial::from_roots(&f, &[FieldElement(1)]));
        let b = common.mul(&Polynomial::from_roots(&f, &[FieldElement(3), FieldElement(4)]));
        assert_eq!(a.gcd(&b), common);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn irreducibility() {
        let f2 = gf(2);
        let irr = |v: &[u32]| Polynomial::from_values(&f2, v).unwrap().is_irreducible();
        assert!(irr(&[1, 1, 1]));
        assert!(!irr(&[1, 0, 1]));
        assert!(irr(&[1, 1, 0, 1]));
        assert!(!irr(&[1, 1, 1, 1]));
        // (x^2+x+1)^2 has no roots but is reducible
        assert!(!irr(&[1, 0, 1, 0, 1]));
        let f5 = gf(5);
        assert!(Polynomial::from_values(&f5, &[2, 0, 1]).unwrap().is_irreducible());
        assert!(!Polynomial::from_values(&f5, &[1, 0, 1]).unwrap().is_irreducible());
    }

    #[test]
    fn display() {
        let f = gf(5);
        let p = Polynomial::from_values(&f, &[1, 2, 2, 1]).unwrap();
        assert_eq!(p.to_string(), "x^3 + 2x^2 + 2x + 1");
    }
}
