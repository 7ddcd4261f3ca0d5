use std::collections::HashMap;

use super::{Field, FieldElement, Polynomial};
use crate::error::{Error, Result};

/// Largest subfield for which the embedding keeps explicit lookup tables.
const EMBEDDING_LIMIT: u64 = 1 << 20;

/// Field monomorphism GF(p^a) -> GF(p^b), `a | b`.
///
/// The image of the subfield generator is the smallest-encoding root of the
/// subfield modulus inside the extension, so the map is deterministic.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: Field,
    ext: Field,
    forward: Vec<FieldElement>,
    backward: HashMap<FieldElement, FieldElement>,
}

impl Embedding {
    pub fn new(sub: &Field, ext: &Field) -> Result<Embedding> {
        if sub.characteristic() != ext.characteristic() || !ext.degree().is_multiple_of(sub.degree()) {
            return Err(Error::params(format!("{sub} is not a subfield of {ext}")));
        }
        if sub.order() > EMBEDDING_LIMIT {
            return Err(Error::params(format!("{sub} too large to embed explicitly")));
        }
        // constants of the prime subfield share their encoding in every field
        let theta = if sub.is_prime_field() {
            FieldElement::ZERO
        } else {
            let modulus: Vec<FieldElement> =
                sub.modulus().iter().map(|&c| FieldElement(c)).collect();
            let poly = Polynomial::new(ext, modulus)?;
            ext.elements()
                .find(|&x| poly.eval(x).is_zero())
                .ok_or_else(|| Error::params(format!("{sub} modulus has no root in {ext}")))?
        };
        let powers: Vec<FieldElement> = (0..sub.degree() as u64)
            .map(|i| ext.pow(theta, i))
            .collect();
        let forward: Vec<FieldElement> = sub
            .elements()
            .map(|a| {
                sub.digits(a)
                    .iter()
                    .zip(&powers)
                    .fold(FieldElement::ZERO, |acc, (&d, &pw)| {
                        ext.add(acc, ext.mul(FieldElement(d), pw))
                    })
            })
            .collect();
        let backward = forward
            .iter()
            .enumerate()
            .map(|(i, &img)| (img, FieldElement(i as u32)))
            .collect();
        Ok(Embedding {
            sub: sub.clone(),
            ext: ext.clone(),
            forward,
            backward,
        })
    }

    pub fn subfield(&self) -> &Field {
        &self.sub
    }

    pub fn extension(&self) -> &Field {
        &self.ext
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        self.forward[a.value() as usize]
    }

    /// Preimage of `b`, or `None` when `b` lies outside the subfield.
    pub fn project(&self, b: FieldElement) -> Option<FieldElement> {
        self.backward.get(&b).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_homomorphism() {
        for (sub, ext) in [((3, 1), (3, 2)), ((3, 2), (3, 4)), ((2, 2), (2, 4)), ((5, 1), (5, 2))] {
            let f = Field::new(sub.0, sub.1).unwrap();
            let e = Field::new(ext.0, ext.1).unwrap();
            let emb = Embedding::new(&f, &e).unwrap();
            for a in f.elements() {
                assert_eq!(emb.project(emb.map(a)), Some(a));
                for b in f.elements() {
                    assert_eq!(emb.map(f.add(a, b)), e.add(emb.map(a), emb.map(b)));
                    assert_eq!(emb.map(f.mul(a, b)), e.mul(emb.map(a), emb.map(b)));
                }
            }
            // the image is exactly the fixed field of x -> x^|f|
            let fixed = e.elements().filter(|&x| e.pow(x, f.order()) == x).count() as u64;
            assert_eq!(fixed, f.order());
        }
    }

    #[test]
    fn rejects_non_subfields() {
        let f = Field::new(2, 3).unwrap();
        let e = Field::new(2, 4).unwrap();
        assert!(Embedding::new(&f, &e).is_err());
        assert!(Embedding::new(&Field::new(3, 1).unwrap(), &e).is_err());
    }
}
