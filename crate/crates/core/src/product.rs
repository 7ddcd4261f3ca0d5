//! Matrix-product codes `[C_1, ..., C_M] * A`.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::galois::{Field, FieldElement};
use crate::matrix::Matrix;

/// An `M x N` matrix together with its NSC status.
#[derive(Clone, Debug)]
pub struct NscMatrix {
    matrix: Matrix,
    verified: bool,
}

impl NscMatrix {
    /// Wraps `a` and checks the NSC property exhaustively.
    pub fn new(a: Matrix) -> Result<Self> {
        let verified = is_nsc(&a)?;
        Ok(NscMatrix {
            matrix: a,
            verified,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

/// True iff for every `i <= M` all `i x i` minors on the first `i` rows are
/// nonsingular.
pub fn is_nsc(a: &Matrix) -> Result<bool> {
    let (m, n) = (a.rows(), a.cols());
    if m > n {
        return Err(Error::params(format!("NSC needs M <= N, got {m}x{n}")));
    }
    for i in 1..=m {
        let top = a.select_rows(&(0..i).collect::<Vec<_>>())?;
        let mut cols: Vec<usize> = (0..i).collect();
        loop {
            if top.select_columns(&cols)?.det()?.is_zero() {
                return Ok(false);
            }
            if !next_combination(&mut cols, n) {
                break;
            }
        }
    }
    Ok(true)
}

/// Advances `c` to the next ascending subset of `0..n` of the same size.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Rows `x^0, ..., x^{M-1}` evaluated at the given points.
pub fn vandermonde_nsc(field: &Field, points: &[FieldElement], m: usize) -> Result<NscMatrix> {
    let n = points.len();
    if m > n {
        return Err(Error::params(format!("{m} rows exceed {n} points")));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::params("Vandermonde points must be distinct"));
    }
    if points.iter().any(|&a| !field.contains(a)) {
        return Err(Error::params(format!("point outside {field}")));
    }
    let a = Matrix::from_fn(field, m, n, |i, j| field.pow(points[j], i as u64));
    NscMatrix::new(a)
}

/// Parameters of a composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpParams {
    pub n_blocks: usize,
    pub m_codes: usize,
    pub length: usize,
    pub k: usize,
    /// Distances of the ingredient codes, in order.
    pub ingredient_distances: Vec<usize>,
    /// Minimum distance of the code spanned by the first `i` rows of A.
    pub rho: Vec<usize>,
    /// `min_i d_i * rho_i`.
    pub d_lower: usize,
    pub nested: bool,
    /// True when the ingredients are nested and A is NSC, so `d_lower` is
    /// the distance itself.
    pub exact: bool,
}

/// Builds the code with generator blocks `a_ij * G_i`.
pub fn compose_code(codes: &[LinearCode], a: &Matrix) -> Result<LinearCode> {
    let m = codes.len();
    if m == 0 {
        return Err(Error::params("composition needs at least one code"));
    }
    if a.rows() != m {
        return Err(Error::dims(format!("{m} codes but A has {} rows", a.rows())));
    }
    let field = codes[0].field();
    let n = codes[0].len();
    for c in codes {
        if c.field() != field || a.field() != field {
            return Err(Error::FieldMismatch);
        }
        if c.len() != n {
            return Err(Error::dims("ingredient codes differ in length"));
        }
    }
    if a.rank() != m {
        return Err(Error::params("A must have full row rank"));
    }
    let big_n = a.cols();
    let rows: usize = codes.iter().map(|c| c.dimension()).sum();
    let mut g = Matrix::zeros(field, rows, big_n * n);
    let mut r0 = 0;
    for (i, c) in codes.iter().enumerate() {
        let gi = c.generator();
        for j in 0..big_n {
            let coef = a.get(i, j);
            if coef.is_zero() {
                continue;
            }
            for r in 0..gi.rows() {
                for col in 0..n {
                    g.set(r0 + r, j * n + col, field.mul(coef, gi.get(r, col)));
                }
            }
        }
        r0 += gi.rows();
    }
    LinearCode::from_generator(g)
}

/// [`compose_code`] plus the distance data of the ingredients and of A.
pub fn compose(codes: &[LinearCode], a: &Matrix) -> Result<(LinearCode, MpParams)> {
    let code = compose_code(codes, a)?;
    let m = codes.len();
    let big_n = a.cols();
    let ingredient_distances = codes
        .iter()
        .map(|c| match c.dimension() {
            0 => Ok(usize::MAX),
            _ => c
                .distance()?
                .exact()
                .ok_or_else(|| Error::BudgetExceeded("ingredient distance".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = (1..=m)
        .map(|i| {
            let top = a.select_rows(&(0..i).collect::<Vec<_>>())?;
            let rc = LinearCode::from_generator(top)?;
            Ok(rc.distance()?.exact().expect("tiny code"))
        })
        .collect::<Result<Vec<_>>>()?;
    let d_lower = ingredient_distances
        .iter()
        .zip(&rho)
        .map(|(&d, &r)| d.saturating_mul(r))
        .min()
        .unwrap_or(0);
    let mut nested = true;
    for w in codes.windows(2) {
        if !w[1].is_subcode_of(&w[0])? {
            nested = false;
            break;
        }
    }
    let exact = nested && is_nsc(a).unwrap_or(false);
    let params = MpParams {
        n_blocks: big_n,
        m_codes: m,
        length: code.len(),
        k: code.dimension(),
        ingredient_distances,
        rho,
        d_lower,
        nested,
        exact,
    };
    Ok((code, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mds::{grs_code, GrsSpec};

    fn fe(v: &[u32]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_raw(x)).collect()
    }

    #[test]
    fn nsc_checks() {
        let f = Field::new(7, 1).unwrap();
        let a = Matrix::from_rows(&f, &[vec![1, 1, 1], vec![1, 2, 3]]).unwrap();
        assert!(is_nsc(&a).unwrap());
        let zero_entry = Matrix::from_rows(&f, &[vec![1, 0, 1]]).unwrap();
        assert!(!is_nsc(&zero_entry).unwrap());
        // nonsingular but a 2x2 minor vanishes
        let b = Matrix::from_rows(&f, &[vec![1, 1, 1], vec![1, 1, 2]]).unwrap();
        assert!(!is_nsc(&b).unwrap());
        assert!(is_nsc(&a.transpose()).is_err());
    }

    #[test]
    fn vandermonde() {
        let f = Field::new(5, 1).unwrap();
        let v = vandermonde_nsc(&f, &fe(&[0, 1, 2, 3, 4]), 4).unwrap();
        assert!(v.is_verified());
        assert_eq!(
            v.matrix().to_u32_rows(),
            vec![
                vec![1, 1, 1, 1, 1],
                vec![0, 1, 2, 3, 4],
                vec![0, 1, 4, 4, 1],
                vec![0, 1, 3, 2, 4],
            ]
        );
        let ones = vandermonde_nsc(&f, &fe(&[1, 2, 3]), 1).unwrap();
        assert_eq!(ones.matrix().to_u32_rows(), vec![vec![1, 1, 1]]);
        assert!(ones.is_verified());
        assert!(vandermonde_nsc(&f, &fe(&[1, 1]), 1).is_err());
        assert!(vandermonde_nsc(&f, &fe(&[1, 2]), 3).is_err());

        let f7 = Field::new(7, 1).unwrap();
        let a = vandermonde_nsc(&f7, &fe(&[1, 2]), 2).unwrap();
        assert_eq!(a.matrix().to_u32_rows(), vec![vec![1, 1], vec![1, 2]]);
        assert!(a.is_verified());
    }

    #[test]
    fn compose_identity() {
        let f = Field::new(7, 1).unwrap();
        let c = grs_code(&f, &GrsSpec::new(fe(&[1, 3, 2, 6, 4]), fe(&[1; 5]), 2)).unwrap();
        let (out, params) = compose(std::slice::from_ref(&c), &Matrix::identity(&f, 1)).unwrap();
        assert!(out.same_code(&c).unwrap());
        assert_eq!(params.d_lower, 4);
        assert!(params.exact);
    }

    #[test]
    fn compose_grs_pair() {
        let f = Field::new(7, 1).unwrap();
        let spec = GrsSpec::new(fe(&[1, 3, 2, 6, 4]), fe(&[1; 5]), 2);
        let c1 = grs_code(&f, &spec).unwrap();
        let c2 = grs_code(&f, &spec.with_dimension(1)).unwrap();
        let a = Matrix::from_rows(&f, &[vec![1, 1, 1], vec![1, 2, 3]]).unwrap();
        let (code, params) = compose(&[c1, c2], &a).unwrap();
        assert_eq!((code.len(), code.dimension()), (15, 3));
        assert_eq!(params.rho, vec![3, 2]);
        assert_eq!(params.d_lower, 10);
        assert!(params.nested && params.exact);
        assert_eq!(code.distance().unwrap().exact(), Some(10));
    }

    #[test]
    fn compose_rejects_bad_shapes() {
        let f = Field::new(7, 1).unwrap();
        let spec = GrsSpec::new(fe(&[1, 3, 2]), fe(&[1; 3]), 2);
        let c = grs_code(&f, &spec).unwrap();
        let short = grs_code(&f, &GrsSpec::new(fe(&[1, 3]), fe(&[1; 2]), 1)).unwrap();
        let a = Matrix::from_rows(&f, &[vec![1, 1], vec![1, 2]]).unwrap();
        assert!(compose(&[c.clone(), short], &a).is_err());
        assert!(compose(std::slice::from_ref(&c), &a).is_err());
        let singular = Matrix::from_rows(&f, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(compose(&[c.clone(), c], &singular).is_err());
    }
}
