//! MDS ingredient codes: generalized Reed-Solomon, extended GRS, and the
//! nested cyclic chain of length q+1.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::galois::{Embedding, Field, FieldElement, Polynomial};
use crate::matrix::Matrix;

/// Evaluation points, column multipliers and dimension of a GRS code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrsSpec {
    pub points: Vec<FieldElement>,
    pub multipliers: Vec<FieldElement>,
    pub k: usize,
}

impl GrsSpec {
    pub fn new(points: Vec<FieldElement>, multipliers: Vec<FieldElement>, k: usize) -> Self {
        GrsSpec {
            points,
            multipliers,
            k,
        }
    }

    /// The first `n` field elements in encoding order, all multipliers 1.
    pub fn with_default_points(field: &Field, n: usize, k: usize) -> Result<Self> {
        if n as u64 > field.order() {
            return Err(Error::params(format!(
                "{n} distinct points do not exist in {field}"
            )));
        }
        Ok(GrsSpec {
            points: field.elements().take(n).collect(),
            multipliers: vec![FieldElement::ONE; n],
            k,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same points and multipliers, another dimension.
    pub fn with_dimension(&self, k: usize) -> Self {
        GrsSpec {
            k,
            ..self.clone()
        }
    }

    pub fn validate(&self, field: &Field) -> Result<()> {
        let n = self.points.len();
        if self.multipliers.len() != n {
            return Err(Error::dims(format!(
                "{n} points but {} multipliers",
                self.multipliers.len()
            )));
        }
        if self.k > n {
            return Err(Error::params(format!("dimension {} exceeds length {n}", self.k)));
        }
        if let Some(a) = self
            .points
            .iter()
            .chain(&self.multipliers)
            .find(|&&a| !field.contains(a))
        {
            return Err(Error::params(format!("{a} is not an element of {field}")));
        }
        let mut sorted = self.points.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::params("evaluation points must be distinct"));
        }
        if self.multipliers.iter().any(|v| v.is_zero()) {
            return Err(Error::params("column multipliers must be nonzero"));
        }
        Ok(())
    }

    /// `v'_i = v_i^{-1} prod_{j != i} (a_i - a_j)^{-1}`.
    pub fn dual_multipliers(&self, field: &Field) -> Result<Vec<FieldElement>> {
        self.validate(field)?;
        self.points
            .iter()
            .zip(&self.multipliers)
            .enumerate()
            .map(|(i, (&a, &v))| {
                let prod = self
                    .points
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(v, |acc, (_, &b)| field.mul(acc, field.sub(a, b)));
                field.inv(prod)
            })
            .collect()
    }
}

/// Rows `(v_j a_j^i)_j` for `i` in `rows`.
fn moment_rows(field: &Field, points: &[FieldElement], mult: &[FieldElement], rows: usize) -> Matrix {
    Matrix::from_fn(field, rows, points.len(), |i, j| {
        field.mul(mult[j], field.pow(points[j], i as u64))
    })
}

/// GRS_k(a, v) with its standard parity-check matrix GRS_{n-k}(a, v').
pub fn grs_code(field: &Field, spec: &GrsSpec) -> Result<LinearCode> {
    let dual = spec.dual_multipliers(field)?;
    let n = spec.len();
    let g = moment_rows(field, &spec.points, &spec.multipliers, spec.k);
    let h = moment_rows(field, &spec.points, &dual, n - spec.k);
    LinearCode::with_parity_check(g, h)
}

/// GRS_k(a, v) extended by the coefficient `f_{k-1}` of the message
/// polynomial.
pub fn extended_grs_code(field: &Field, spec: &GrsSpec) -> Result<LinearCode> {
    spec.validate(field)?;
    if spec.k == 0 {
        return Err(Error::params("extended GRS needs k >= 1"));
    }
    let n = spec.len();
    let g = moment_rows(field, &spec.points, &spec.multipliers, spec.k);
    let tail = Matrix::from_fn(field, spec.k, 1, |i, _| {
        if i + 1 == spec.k {
            FieldElement::ONE
        } else {
            FieldElement::ZERO
        }
    });
    debug_assert_eq!(g.cols(), n);
    LinearCode::from_generator(g.hstack(&tail)?)
}

/// A member of the odd-dimension cyclic MDS chain of length `q + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicChainSpec {
    pub q: u64,
    pub k: usize,
    pub defining_set: Vec<u64>,
}

impl CyclicChainSpec {
    pub fn new(q: u64, k: usize) -> Result<Self> {
        if q.is_multiple_of(2) {
            return Err(Error::params(format!(
                "the cyclic chain of length q+1 is only supported for odd q (got {q})"
            )));
        }
        if k.is_multiple_of(2) || k == 0 || k as u64 > q + 1 {
            return Err(Error::params(format!(
                "cyclic chain dimension must be odd and in 1..={} (got {k})",
                q + 1
            )));
        }
        let centre = q.div_ceil(2);
        let half = (q + 1 - k as u64 - 1) / 2;
        Ok(CyclicChainSpec {
            q,
            k,
            defining_set: (centre - half..=centre + half).collect(),
        })
    }
}

/// Generator polynomial and code of a chain member, built over GF(q) from
/// the roots `beta^i`, `i` in the defining set, with `beta` of order `q+1`
/// in GF(q^2).
pub fn cyclic_mds_generator(field: &Field, spec: &CyclicChainSpec) -> Result<Polynomial> {
    if field.order() != spec.q {
        return Err(Error::params(format!(
            "chain for q = {} requested over {field}",
            spec.q
        )));
    }
    let ext = Field::new(field.characteristic() as u64, 2 * field.degree())?;
    let emb = Embedding::new(field, &ext)?;
    let beta = ext.nth_root_of_unity(spec.q + 1)?;
    let roots: Vec<FieldElement> = spec.defining_set.iter().map(|&i| ext.pow(beta, i)).collect();
    let big = Polynomial::from_roots(&ext, &roots);
    let coeffs = big
        .coefficients()
        .iter()
        .map(|&c| emb.project(c).ok_or(Error::CoefficientsOutsideSubfield(spec.q)))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::new(field, coeffs)
}

pub fn cyclic_mds_chain(field: &Field, k: usize) -> Result<LinearCode> {
    let spec = CyclicChainSpec::new(field.order(), k)?;
    let g = cyclic_mds_generator(field, &spec)?;
    let n = spec.q as usize + 1;
    let coeffs = g.coefficients();
    let rows = Matrix::from_fn(field, k, n, |i, j| {
        if j >= i && j - i < coeffs.len() {
            coeffs[j - i]
        } else {
            FieldElement::ZERO
        }
    });
    LinearCode::from_generator(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: &[u32]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_raw(x)).collect()
    }

    fn example_spec(k: usize) -> GrsSpec {
        GrsSpec::new(fe(&[1, 3, 2, 6, 4]), fe(&[1; 5]), k)
    }

    #[test]
    fn grs_parameters() {
        let f = Field::new(7, 1).unwrap();
        let c = grs_code(&f, &example_spec(2)).unwrap();
        assert_eq!((c.len(), c.dimension()), (5, 2));
        assert_eq!(c.distance().unwrap().exact(), Some(4));
        assert!(c.generator().mul(&c.parity_check().transpose()).unwrap().is_zero());
        assert_eq!(c.generator().to_u32_rows()[1], vec![1, 3, 2, 6, 4]);

        let full = grs_code(&f, &example_spec(5)).unwrap();
        assert_eq!(full.distance().unwrap().exact(), Some(1));
        assert_eq!(full.parity_check().rows(), 0);
    }

    #[test]
    fn dual_is_grs_with_dual_weights() {
        let f = Field::new(7, 1).unwrap();
        let spec = example_spec(2);
        let c = grs_code(&f, &spec).unwrap();
        let vprime = spec.dual_multipliers(&f).unwrap();
        let expected = grs_code(&f, &GrsSpec::new(spec.points.clone(), vprime, 3)).unwrap();
        assert!(c.dual().same_code(&expected).unwrap());
    }

    #[test]
    fn grs_rejects_bad_specs() {
        let f = Field::new(7, 1).unwrap();
        let repeated = GrsSpec::new(fe(&[1, 1, 2]), fe(&[1, 1, 1]), 1);
        assert!(grs_code(&f, &repeated).is_err());
        let zero_mult = GrsSpec::new(fe(&[1, 2, 3]), fe(&[1, 0, 1]), 1);
        assert!(grs_code(&f, &zero_mult).is_err());
        let too_long = GrsSpec::new(fe(&[1, 2]), fe(&[1, 1]), 3);
        assert!(grs_code(&f, &too_long).is_err());
        assert!(GrsSpec::with_default_points(&f, 8, 2).is_err());
    }

    #[test]
    fn grs_nesting() {
        let f = Field::new(11, 1).unwrap();
        let spec = GrsSpec::with_default_points(&f, 8, 5).unwrap();
        let big = grs_code(&f, &spec).unwrap();
        for k in 0..=5 {
            let small = grs_code(&f, &spec.with_dimension(k)).unwrap();
            assert!(small.is_subcode_of(&big).unwrap());
        }
    }

    #[test]
    fn extended_grs() {
        let f = Field::new(7, 1).unwrap();
        let ext = extended_grs_code(&f, &example_spec(2)).unwrap();
        assert_eq!((ext.len(), ext.dimension()), (6, 2));
        assert_eq!(ext.min_distance_brute_force().unwrap().exact(), Some(5));
        // a message with f_{k-1} = 0 ends in 0
        let word = ext.encode(&fe(&[3, 0])).unwrap();
        assert!(word[5].is_zero());

        let rep = extended_grs_code(&f, &example_spec(1)).unwrap();
        assert_eq!(rep.min_distance_brute_force().unwrap().exact(), Some(6));
        assert!(extended_grs_code(&f, &example_spec(0)).is_err());
    }

    #[test]
    fn extended_grs_over_extension_field() {
        let f = Field::new(3, 2).unwrap();
        let spec = GrsSpec::with_default_points(&f, 9, 3).unwrap();
        let ext = extended_grs_code(&f, &spec).unwrap();
        assert_eq!(ext.distance().unwrap().exact(), Some(8));
    }

    #[test]
    fn cyclic_chain_q5() {
        let f = Field::new(5, 1).unwrap();
        let spec = CyclicChainSpec::new(5, 3).unwrap();
        assert_eq!(spec.defining_set, vec![2, 3, 4]);
        let g = cyclic_mds_generator(&f, &spec).unwrap();
        assert_eq!(g.to_string(), "x^3 + 2x^2 + 2x + 1");
        let c3 = cyclic_mds_chain(&f, 3).unwrap();
        assert_eq!(c3.generator().to_u32_rows()[0], vec![1, 2, 2, 1, 0, 0]);
        assert_eq!(c3.distance().unwrap().exact(), Some(4));

        let g1 = cyclic_mds_generator(&f, &CyclicChainSpec::new(5, 1).unwrap()).unwrap();
        assert_eq!(g1.to_string(), "x^5 + x^4 + x^3 + x^2 + x + 1");
        let c1 = cyclic_mds_chain(&f, 1).unwrap();
        assert_eq!(c1.distance().unwrap().exact(), Some(6));

        let c5 = cyclic_mds_chain(&f, 5).unwrap();
        assert_eq!(CyclicChainSpec::new(5, 5).unwrap().defining_set, vec![3]);
        assert_eq!(c5.distance().unwrap().exact(), Some(2));
        assert!(c1.is_subcode_of(&c3).unwrap());
        assert!(c3.is_subcode_of(&c5).unwrap());
    }

    #[test]
    fn cyclic_chain_is_nested_and_mds() {
        for q in [3u64, 7, 9, 11] {
            let f = Field::with_order(q).unwrap();
            let mut prev: Option<LinearCode> = None;
            for k in (1..=q as usize).step_by(2) {
                let c = cyclic_mds_chain(&f, k).unwrap();
                assert_eq!(c.len(), q as usize + 1);
                assert_eq!(c.distance().unwrap().exact(), Some(q as usize + 2 - k), "q={q} k={k}");
                if let Some(p) = &prev {
                    assert!(p.is_subcode_of(&c).unwrap());
                }
                prev = Some(c);
            }
        }
    }

    #[test]
    fn cyclic_chain_rejections() {
        let f = Field::new(5, 1).unwrap();
        assert!(cyclic_mds_chain(&f, 2).is_err());
        assert!(cyclic_mds_chain(&f, 7).is_err());
        assert!(cyclic_mds_chain(&Field::new(2, 2).unwrap(), 1).is_err());
    }
}
