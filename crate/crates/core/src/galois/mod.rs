//! Exact arithmetic in GF(p^m).
//!
//! An element is stored as a single integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! holding its coefficient vector in the power basis of the field modulus.
//! Zero always encodes as `0` and one as `1`, so [`FieldElement::ZERO`] and
//! [`FieldElement::ONE`] are valid in every field.
//!
//! The modulus of GF(p^m) is the monic irreducible polynomial of degree `m`
//! whose lower coefficient vector, read as a base-p integer, is smallest. This
//! makes every field (and every matrix written over it) reproducible.
//!
//! ```
//! use mplrc::galois::Field;
//!
//! let gf7 = Field::new(7, 1).unwrap();
//! let a = gf7.element(3).unwrap();
//! let b = gf7.element(5).unwrap();
//! assert_eq!(gf7.mul(a, b).value(), 1);
//! ```

mod embedding;
pub mod numtheory;
mod poly;

pub use embedding::Embedding;
pub use poly::Polynomial;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use numtheory::{is_prime, prime_factors, prime_power};

/// Fields up to this order get full addition and multiplication tables.
const TABLE_LIMIT: u64 = 256;

/// An element of some [`Field`], in integer encoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw encoding without range checking; see [`Field::element`].
    pub const fn from_raw(value: u32) -> Self {
        FieldElement(value)
    }

    pub const fn value(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct FieldInner {
    p: u32,
    m: u32,
    order: u64,
    /// Monic modulus over GF(p), constant term first, `m + 1` entries.
    modulus: Vec<u32>,
    /// The prime subfield, present only when `m > 1`.
    base: Option<Field>,
    tables: Option<Tables>,
}

/// A finite field GF(p^m) with p^m at most 2^32.
///
/// Cloning is cheap; all clones share the same arithmetic tables.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl Field {
    /// Builds GF(p^m) with its canonical modulus.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if order > 1u128 << 32 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let order = order as u64;
        let p32 = p as u32;
        if m == 1 {
            return Ok(Field::assemble(p32, 1, order, vec![0, 1], None));
        }
        let base = Field::new(p, 1)?;
        let modulus = find_canonical_modulus(&base, m)?;
        Ok(Field::assemble(p32, m, order, modulus, Some(base)))
    }

    /// Builds the field with `q` elements.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, m)
    }

    /// Builds GF(p^m) over an explicitly supplied modulus (constant term
    /// first, monic). Irreducibility is checked.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::params("modulus must be monic of degree >= 1"));
        }
        let m = (modulus.len() - 1) as u32;
        let canonical = Field::new(p, m)?;
        // every linear modulus gives the same prime field
        if m == 1 {
            return Ok(canonical);
        }
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::params("modulus coefficients must lie in GF(p)"));
        }
        let base = canonical.base().expect("extension field has a base").clone();
        let poly = Polynomial::from_values(&base, modulus)?;
        if !poly.is_irreducible() {
            return Err(Error::params(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Ok(Field::assemble(
            p as u32,
            m,
            canonical.order(),
            modulus.to_vec(),
            Some(base),
        ))
    }

    fn assemble(p: u32, m: u32, order: u64, modulus: Vec<u32>, base: Option<Field>) -> Field {
        let mut field = Field(Arc::new(FieldInner {
            p,
            m,
            order,
            modulus,
            base,
            tables: None,
        }));
        if order <= TABLE_LIMIT {
            let tables = field.build_tables();
            Arc::get_mut(&mut field.0)
                .expect("field not yet shared")
                .tables = Some(tables);
        }
        field
    }

    fn build_tables(&self) -> Tables {
        let q = self.order() as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for a in 0..q as u32 {
            let fa = FieldElement(a);
            neg[a as usize] = self.neg_ref(fa).0;
            if a != 0 {
                inv[a as usize] = self.inv_ref(fa).0;
            }
            for b in 0..q as u32 {
                let fb = FieldElement(b);
                add[a as usize * q + b as usize] = self.add_ref(fa, fb).0;
                mul[a as usize * q + b as usize] = self.mul_ref(fa, fb).0;
            }
        }
        Tables { add, mul, neg, inv }
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Number of elements, `p^m`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// Modulus coefficients over GF(p), constant term first. For prime
    /// fields this is the unused placeholder `x`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The prime subfield GF(p) (itself for prime fields).
    pub fn prime_subfield(&self) -> Field {
        self.base().cloned().unwrap_or_else(|| self.clone())
    }

    fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.order() {
            return Err(Error::ElementOutOfRange {
                value,
                order: self.order(),
            });
        }
        Ok(FieldElement(value as u32))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as u64) < self.order()
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(|v| FieldElement(v as u32))
    }

    /// Image of the integer `n` under the ring map Z -> GF(q).
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        FieldElement(n.rem_euclid(p) as u32)
    }

    /// Base-p digits of `a`, i.e. its coefficient vector (length `m`).
    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let p = self.0.p as u64;
        let mut v = a.0 as u64;
        (0..self.0.m)
            .map(|_| {
                let d = (v % p) as u32;
                v /= p;
                d
            })
            .collect()
    }

    /// Inverse of [`Field::digits`]; digits beyond `m` must be absent.
    pub fn from_digits(&self, digits: &[u32]) -> FieldElement {
        debug_assert!(digits.len() <= self.0.m as usize);
        let p = self.0.p as u64;
        let v = digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * p + d as u64);
        FieldElement(v as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.add[a.0 as usize * self.0.order as usize + b.0 as usize]);
        }
        self.add_ref(a, b)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.neg[a.0 as usize]);
        }
        self.neg_ref(a)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.mul[a.0 as usize * self.0.order as usize + b.0 as usize]);
        }
        self.mul_ref(a, b)
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            return Ok(FieldElement(t.inv[a.0 as usize]));
        }
        Ok(self.inv_ref(a))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.order() - 1;
        for l in prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == FieldElement::ONE {
                ord /= l;
            }
        }
        Some(ord)
    }

    /// The element of multiplicative order exactly `n` with the smallest
    /// encoding.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        let group_order = self.order() - 1;
        if n == 0 || !group_order.is_multiple_of(n) {
            return Err(Error::NoRootOfUnity { n, group_order });
        }
        let primes = prime_factors(n);
        self.elements()
            .skip(1)
            .find(|&a| {
                self.pow(a, n) == FieldElement::ONE
                    && primes.iter().all(|&l| self.pow(a, n / l) != FieldElement::ONE)
            })
            .ok_or(Error::NoRootOfUnity { n, group_order })
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.nth_root_of_unity(self.order() - 1)
            .expect("the multiplicative group is cyclic")
    }

    fn add_ref(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p as u64;
        if self.0.m == 1 {
            return FieldElement(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let sum: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32)
            .collect();
        self.from_digits(&sum)
    }

    fn neg_ref(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p as u64;
        if self.0.m == 1 {
            return FieldElement(((p - a.0 as u64) % p) as u32);
        }
        let d: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|&x| ((p - x as u64) % p) as u32)
            .collect();
        self.from_digits(&d)
    }

    fn mul_ref(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.0.m == 1 {
            let p = self.0.p as u64;
            return FieldElement(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        let prod = self.to_base_poly(a).mul(&self.to_base_poly(b));
        let reduced = prod.rem(&self.modulus_poly()).expect("modulus is nonzero");
        self.from_base_poly(&reduced)
    }

    fn inv_ref(&self, a: FieldElement) -> FieldElement {
        if self.0.m == 1 {
            // extended Euclid on integers
            let p = self.0.p as i64;
            let (mut r0, mut r1) = (p, a.0 as i64);
            let (mut t0, mut t1) = (0i64, 1i64);
            while r1 != 0 {
                let quot = r0 / r1;
                (r0, r1) = (r1, r0 - quot * r1);
                (t0, t1) = (t1, t0 - quot * t1);
            }
            return FieldElement(t0.rem_euclid(p) as u32);
        }
        let (g, s, _) = self.to_base_poly(a).ext_gcd(&self.modulus_poly());
        let base = self.base().expect("extension field has a base");
        // g is a nonzero constant because the modulus is irreducible
        let g0 = base.inv(g.coeff(0)).expect("gcd is a unit");
        self.from_base_poly(&s.scale(g0))
    }

    fn modulus_poly(&self) -> Polynomial {
        let base = self.base().expect("extension field has a base");
        Polynomial::from_values(base, &self.0.modulus).expect("modulus coefficients lie in GF(p)")
    }

    fn to_base_poly(&self, a: FieldElement) -> Polynomial {
        let base = self.base().expect("extension field has a base");
        Polynomial::from_values(base, &self.digits(a)).expect("digits lie in GF(p)")
    }

    fn from_base_poly(&self, poly: &Polynomial) -> FieldElement {
        let digits: Vec<u32> = (0..self.0.m as usize).map(|i| poly.coeff(i).0).collect();
        self.from_digits(&digits)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field() {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

fn find_canonical_modulus(base: &Field, m: u32) -> Result<Vec<u32>> {
    let p = base.order();
    let span = p.pow(m);
    // lower coefficients with a zero constant term give a reducible polynomial
    for low in 0..span {
        if low % p == 0 {
            continue;
        }
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut v = low;
        for _ in 0..m {
            coeffs.push((v % p) as u32);
            v /= p;
        }
        coeffs.push(1);
        let poly = Polynomial::from_values(base, &coeffs)?;
        if poly.is_irreducible() {
            return Ok(coeffs);
        }
    }
    Err(Error::NoIrreducible { p: p as u32, m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        assert!(f.is_prime_field());
        assert_eq!(f.modulus(), &[0, 1]);
        let four = f.element(4).unwrap();
        assert_eq!(f.mul(four, four), FieldElement::ONE);
        let gf7 = Field::new(7, 1).unwrap();
        assert_eq!(
            gf7.mul(FieldElement(3), FieldElement(5)),
            FieldElement::ONE
        );
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        // x^8 + x^4 + x^3 + x + 1 is the smallest degree-8 irreducible over GF(2)
        assert_eq!(
            Field::new(2, 8).unwrap().modulus(),
            &[1, 1, 0, 1, 1, 0, 0, 0, 1]
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(5, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            Field::new(3, 21).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
        assert_eq!(Field::with_order(12).unwrap_err(), Error::NotPrimePower(12));
        assert!(Field::with_modulus(5, &[1, 0, 1]).is_err());
        assert!(Field::with_modulus(5, &[3, 0, 1]).is_ok());
    }

    #[test]
    fn division_by_zero() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
        assert_eq!(
            f.div(FieldElement::ONE, FieldElement::ZERO),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn tables_agree_with_reference_arithmetic() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (7, 1), (2, 8)] {
            let f = Field::new(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.neg(a), f.neg_ref(a));
                if !a.is_zero() {
                    assert_eq!(f.inv(a).unwrap(), f.inv_ref(a));
                }
                for b in f.elements().step_by(3) {
                    assert_eq!(f.add(a, b), f.add_ref(a, b));
                    assert_eq!(f.mul(a, b), f.mul_ref(a, b));
                }
            }
        }
    }

    #[test]
    fn untabled_extension_field() {
        let f = Field::new(3, 7).unwrap();
        assert!(f.0.tables.is_none());
        let g = f.primitive_element();
        assert_eq!(f.multiplicative_order(g), Some(f.order() - 1));
        let a = f.element(1234).unwrap();
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
    }

    #[test]
    fn large_prime_field() {
        let f = Field::new(4_294_967_291, 1).unwrap();
        let a = f.element(4_000_000_000).unwrap();
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
    }

    #[test]
    fn roots_of_unity() {
        let gf7 = Field::new(7, 1).unwrap();
        assert_eq!(gf7.nth_root_of_unity(6).unwrap(), FieldElement(3));
        assert!(matches!(
            gf7.nth_root_of_unity(5),
            Err(Error::NoRootOfUnity { n: 5, .. })
        ));
        let gf25 = Field::new(5, 2).unwrap();
        let alpha = gf25.nth_root_of_unity(6).unwrap();
        assert_eq!(gf25.pow(alpha, 6), FieldElement::ONE);
        for k in 1..6 {
            assert_ne!(gf25.pow(alpha, k), FieldElement::ONE);
        }
        assert_eq!(gf25.multiplicative_order(alpha), Some(6));
    }

    #[test]
    fn digits_round_trip() {
        let f = Field::new(5, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_digits(&f.digits(a)), a);
        }
        assert_eq!(f.digits(FieldElement(13)), vec![3, 2]);
    }

    #[test]
    fn field_equality() {
        assert_eq!(Field::new(5, 2).unwrap(), Field::new(5, 2).unwrap());
        assert_ne!(Field::new(5, 1).unwrap(), Field::new(7, 1).unwrap());
        assert_ne!(
            Field::new(5, 2).unwrap(),
            Field::with_modulus(5, &[3, 0, 1]).unwrap()
        );
    }
}
