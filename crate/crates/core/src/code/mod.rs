//! Linear codes over a finite field.

mod distance;

pub use distance::{Distance, DistanceMethod, DistanceResult};

use crate::error::{Error, Result};
use crate::galois::{Field, FieldElement};
use crate::matrix::{Matrix, Solution};

/// Codeword enumeration is attempted only for codes with at most this many
/// codewords.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Span tests allowed to the column search before falling back.
const COLUMN_SEARCH_BUDGET: u64 = 4_000_000;

/// Codewords the information-set search may form.
const INFORMATION_SET_BUDGET: u64 = 400_000_000;

/// A `k`-dimensional subspace of GF(q)^n with a generator of full row rank
/// and a matching parity-check matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    generator: Matrix,
    parity: Matrix,
}

/// Outcome of completing a word with erasures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovery {
    Recovered(Vec<FieldElement>),
    /// Several codewords agree with the surviving symbols.
    Ambiguous,
}

impl LinearCode {
    /// The generator must have full row rank; its rows are kept as given.
    pub fn from_generator(generator: Matrix) -> Result<Self> {
        if generator.rank() != generator.rows() {
            return Err(Error::params("generator matrix is not of full row rank"));
        }
        let parity = generator.nullspace_basis();
        Ok(LinearCode {
            field: generator.field().clone(),
            generator,
            parity,
        })
    }

    /// The code spanned by arbitrary rows.
    pub fn from_spanning_set(rows: &Matrix) -> Self {
        let generator = rows.row_basis();
        let parity = generator.nullspace_basis();
        LinearCode {
            field: rows.field().clone(),
            generator,
            parity,
        }
    }

    /// The null space of `h`. A parity-check matrix of full row rank is kept
    /// as given; otherwise it is replaced by an echelon basis.
    pub fn from_parity_check(h: &Matrix) -> Self {
        let parity = if h.rank() == h.rows() {
            h.clone()
        } else {
            h.row_basis()
        };
        let generator = parity.nullspace_basis();
        LinearCode {
            field: h.field().clone(),
            generator,
            parity,
        }
    }

    /// Pairs a generator with a known parity-check matrix; both are checked.
    pub fn with_parity_check(generator: Matrix, parity: Matrix) -> Result<Self> {
        let n = generator.cols();
        if parity.cols() != n {
            return Err(Error::dims("generator and parity check differ in length"));
        }
        if generator.rank() != generator.rows() || parity.rank() != parity.rows() {
            return Err(Error::params("matrices must have full row rank"));
        }
        if generator.rows() + parity.rows() != n
            || !generator.mul(&parity.transpose())?.is_zero()
        {
            return Err(Error::params("parity check does not annihilate the generator"));
        }
        Ok(LinearCode {
            field: generator.field().clone(),
            generator,
            parity,
        })
    }

    /// The zero-dimensional code of length `n`.
    pub fn zero(field: &Field, n: usize) -> Self {
        LinearCode {
            field: field.clone(),
            generator: Matrix::zeros(field, 0, n),
            parity: Matrix::identity(field, n),
        }
    }

    /// All of GF(q)^n.
    pub fn full_space(field: &Field, n: usize) -> Self {
        LinearCode {
            field: field.clone(),
            generator: Matrix::identity(field, n),
            parity: Matrix::zeros(field, 0, n),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.generator.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity
    }

    /// Number of codewords, saturating.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn encode(&self, msg: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if msg.len() != self.dimension() {
            return Err(Error::dims(format!(
                "message of length {} for a code of dimension {}",
                msg.len(),
                self.dimension()
            )));
        }
        self.generator.vec_mul(msg)
    }

    /// Exact membership test through the parity-check matrix.
    pub fn contains(&self, word: &[FieldElement]) -> Result<bool> {
        Ok(self.parity.mul_vec(word)?.iter().all(|a| a.is_zero()))
    }

    /// Minimum distance up to `cap`: the exact value when `d <= cap`,
    /// otherwise a `d > cap` marker.
    ///
    /// Codes with few codewords go straight to information-set enumeration.
    /// Otherwise dependent-column search on the parity check runs first and
    /// falls back to information sets when it gets too expensive.
    pub fn min_distance(&self, cap: usize) -> Result<DistanceResult> {
        self.check_distance_args(cap)?;
        let small = self.codeword_count_estimate() <= COLUMN_SEARCH_BUDGET as f64;
        if small {
            return self.capped_information_set(cap);
        }
        if let Some(d) = distance::column_search(
            &self.parity,
            cap,
            self.singleton_value(),
            COLUMN_SEARCH_BUDGET,
        ) {
            return Ok(DistanceResult {
                distance: d,
                method: DistanceMethod::ColumnSearch,
            });
        }
        self.capped_information_set(cap)
    }

    /// Rough cost of a full information-set pass: `(n / k) * q^k`.
    fn codeword_count_estimate(&self) -> f64 {
        let k = self.dimension().max(1) as f64;
        let q = self.field().order() as f64;
        (self.len() as f64 / k).ceil() * q.powf(k)
    }

    fn capped_information_set(&self, cap: usize) -> Result<DistanceResult> {
        let d = match distance::information_set(&self.generator, INFORMATION_SET_BUDGET) {
            Distance::Exact(d) if d > cap => Distance::AtLeast(cap + 1),
            Distance::AtLeast(d) => Distance::AtLeast(d.min(cap + 1)),
            exact => exact,
        };
        Ok(DistanceResult {
            distance: d,
            method: DistanceMethod::InformationSet,
        })
    }

    /// Exact minimum distance, uncapped.
    pub fn distance(&self) -> Result<DistanceResult> {
        self.min_distance(self.len().max(1))
    }

    /// Column search alone; fails if more than `budget` span tests are needed.
    pub fn min_distance_column_search(&self, cap: usize, budget: u64) -> Result<DistanceResult> {
        self.check_distance_args(cap)?;
        distance::column_search(&self.parity, cap, self.singleton_value(), budget)
            .map(|d| DistanceResult {
                distance: d,
                method: DistanceMethod::ColumnSearch,
            })
            .ok_or_else(|| Error::BudgetExceeded(format!("column search beyond {budget} nodes")))
    }

    /// Enumerates every codeword. Refused above [`BRUTE_FORCE_LIMIT`].
    pub fn min_distance_brute_force(&self) -> Result<DistanceResult> {
        self.check_distance_args(1)?;
        if self.size() > BRUTE_FORCE_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "{} codewords exceed the enumeration limit",
                self.size()
            )));
        }
        Ok(DistanceResult {
            distance: Distance::Exact(distance::brute_force(&self.generator)),
            method: DistanceMethod::BruteForce,
        })
    }

    pub fn min_distance_information_set(&self, budget: u64) -> Result<DistanceResult> {
        self.check_distance_args(1)?;
        Ok(DistanceResult {
            distance: distance::information_set(&self.generator, budget),
            method: DistanceMethod::InformationSet,
        })
    }

    fn check_distance_args(&self, cap: usize) -> Result<()> {
        if cap == 0 {
            return Err(Error::params("distance cap must be at least 1"));
        }
        if self.dimension() == 0 {
            return Err(Error::NoNonzeroCodewords);
        }
        Ok(())
    }

    fn singleton_value(&self) -> usize {
        self.len() - self.dimension() + 1
    }

    /// Restriction to the coordinates in `keep` (0-based, ascending order is
    /// imposed, duplicates ignored).
    pub fn puncture(&self, keep: &[usize]) -> Result<LinearCode> {
        if keep.is_empty() {
            return Err(Error::params("cannot puncture onto an empty set"));
        }
        let mut cols = keep.to_vec();
        cols.sort_unstable();
        cols.dedup();
        if let Some(&bad) = cols.iter().find(|&&j| j >= self.len()) {
            return Err(Error::params(format!(
                "coordinate {bad} outside a code of length {}",
                self.len()
            )));
        }
        if cols.len() == self.len() {
            return Ok(self.clone());
        }
        Ok(LinearCode::from_spanning_set(
            &self.generator.select_columns(&cols)?,
        ))
    }

    /// True iff `self` is contained in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool> {
        self.compatible(other)?;
        Ok(other
            .parity
            .mul(&self.generator.transpose())?
            .is_zero())
    }

    /// Equality of row spaces.
    pub fn same_code(&self, other: &LinearCode) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.dimension() == other.dimension() && self.is_subcode_of(other)?)
    }

    fn compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::dims(format!(
                "codes of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            field: self.field.clone(),
            generator: self.parity.clone(),
            parity: self.generator.clone(),
        }
    }

    pub fn direct_sum(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(LinearCode {
            field: self.field.clone(),
            generator: self.generator.block_diag(&other.generator)?,
            parity: self.parity.block_diag(&other.parity)?,
        })
    }

    /// Completes a word whose `None` entries are erased.
    pub fn erasure_solve(&self, word: &[Option<FieldElement>]) -> Result<Recovery> {
        if word.len() != self.len() {
            return Err(Error::dims(format!(
                "word of length {} for a code of length {}",
                word.len(),
                self.len()
            )));
        }
        let known: Vec<usize> = (0..word.len()).filter(|&j| word[j].is_some()).collect();
        let values: Vec<FieldElement> = known.iter().map(|&j| word[j].unwrap()).collect();
        if self.dimension() == 0 {
            return if values.iter().all(|a| a.is_zero()) {
                Ok(Recovery::Recovered(vec![FieldElement::ZERO; self.len()]))
            } else {
                Err(Error::InconsistentWord)
            };
        }
        let system = self.generator.select_columns(&known)?.transpose();
        match system.solve(&values)? {
            Solution::Unique(msg) => Ok(Recovery::Recovered(self.encode(&msg)?)),
            Solution::Underdetermined { .. } => Ok(Recovery::Ambiguous),
            Solution::Inconsistent => Err(Error::InconsistentWord),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn fe(v: &[u32]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_raw(x)).collect()
    }

    fn code(f: &Field, rows: &[&[u32]]) -> LinearCode {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        LinearCode::from_generator(Matrix::from_rows(f, &rows).unwrap()).unwrap()
    }

    /// Minimum weight over every nonzero message, encoded one at a time.
    fn naive_distance(c: &LinearCode) -> usize {
        let q = c.field().order() as u32;
        let k = c.dimension();
        let mut best = usize::MAX;
        for idx in 1..(q as u64).pow(k as u32) {
            let mut rest = idx;
            let msg: Vec<FieldElement> = (0..k)
                .map(|_| {
                    let d = (rest % q as u64) as u32;
                    rest /= q as u64;
                    FieldElement::from_raw(d)
                })
                .collect();
            best = best.min(distance::weight(&c.encode(&msg).unwrap()));
        }
        best
    }

    #[test]
    fn encoding() {
        let f = gf(7);
        let c = code(&f, &[&[1, 1, 1, 1, 1], &[1, 3, 2, 6, 4]]);
        assert_eq!(c.encode(&fe(&[0, 0])).unwrap(), fe(&[0; 5]));
        assert_eq!(c.encode(&fe(&[1, 0])).unwrap(), fe(&[1, 1, 1, 1, 1]));
        assert_eq!(c.encode(&fe(&[0, 1])).unwrap(), fe(&[1, 3, 2, 6, 4]));
        assert!(c.encode(&fe(&[1])).is_err());
        let h = c.parity_check();
        assert!(c.generator().mul(&h.transpose()).unwrap().is_zero());
        assert_eq!(c.generator().rank() + h.rank(), 5);
    }

    #[test]
    fn rejects_rank_deficient_generator() {
        let f = gf(5);
        let g = Matrix::from_rows(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(LinearCode::from_generator(g.clone()).is_err());
        assert_eq!(LinearCode::from_spanning_set(&g).dimension(), 1);
    }

    #[test]
    fn distance_routes_agree() {
        let f = gf(7);
        let c = code(&f, &[&[1, 1, 1, 1, 1], &[1, 3, 2, 6, 4]]);
        for r in [
            c.distance().unwrap(),
            c.min_distance_brute_force().unwrap(),
            c.min_distance_information_set(u64::MAX).unwrap(),
            c.min_distance_column_search(5, u64::MAX).unwrap(),
        ] {
            assert_eq!(r.exact(), Some(4), "{r:?}");
        }
        // capped below the true value
        let capped = c.min_distance(2).unwrap();
        assert_eq!(capped.distance, Distance::AtLeast(3));
        assert!(c.min_distance(0).is_err());
        assert_eq!(
            LinearCode::zero(&f, 3).distance().unwrap_err(),
            Error::NoNonzeroCodewords
        );
        assert_eq!(LinearCode::full_space(&f, 4).distance().unwrap().exact(), Some(1));
    }

    #[test]
    fn distance_over_extension_field() {
        let f = Field::new(2, 2).unwrap();
        // [3,2,2] parity code and a [3,1,3] repetition code over GF(4)
        let even = code(&f, &[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(even.distance().unwrap().exact(), Some(2));
        assert_eq!(even.min_distance_brute_force().unwrap().exact(), Some(2));
        let rep = code(&f, &[&[1, 2, 3]]);
        assert_eq!(rep.min_distance_brute_force().unwrap().exact(), Some(3));
        assert_eq!(rep.min_distance_information_set(u64::MAX).unwrap().exact(), Some(3));
    }

    #[test]
    fn information_set_without_tables() {
        let f = gf(257);
        let c = code(&f, &[&[1, 1, 1, 1, 1, 1], &[1, 2, 3, 4, 5, 6], &[1, 4, 9, 16, 25, 36]]);
        assert_eq!(c.min_distance_information_set(u64::MAX).unwrap().exact(), Some(4));
        let d = code(&f, &[&[1, 0, 0, 256, 0], &[0, 1, 0, 0, 3], &[0, 0, 1, 0, 0]]);
        assert_eq!(d.min_distance_information_set(u64::MAX).unwrap().exact(), Some(1));
    }

    #[test]
    fn puncturing() {
        let f = gf(7);
        let c = code(&f, &[&[1, 1, 1, 1, 1], &[1, 3, 2, 6, 4]]);
        assert!(c.puncture(&[]).is_err());
        assert!(c.puncture(&[5]).is_err());
        let all = c.puncture(&[4, 3, 2, 1, 0]).unwrap();
        assert!(all.same_code(&c).unwrap());
        let short = c.puncture(&[0, 1]).unwrap();
        assert_eq!((short.len(), short.dimension()), (2, 2));
        let single = c.puncture(&[2]).unwrap();
        assert_eq!(single.dimension(), 1);
    }

    #[test]
    fn duality_and_containment() {
        let f = gf(7);
        let c = code(&f, &[&[1, 1, 1, 1, 1], &[1, 3, 2, 6, 4]]);
        let sub = code(&f, &[&[2, 2, 2, 2, 2]]);
        assert!(sub.is_subcode_of(&c).unwrap());
        assert!(!c.is_subcode_of(&sub).unwrap());
        assert!(c.is_subcode_of(&c).unwrap());
        let dual = c.dual();
        assert_eq!(dual.dimension(), 3);
        assert!(dual.dual().same_code(&c).unwrap());
        assert_eq!(LinearCode::full_space(&f, 4).dual().dimension(), 0);
        let other_len = code(&f, &[&[1, 1]]);
        assert!(matches!(
            other_len.is_subcode_of(&c),
            Err(Error::DimensionMismatch(_))
        ));
        assert_eq!(
            code(&gf(5), &[&[1, 1, 1, 1, 1]]).is_subcode_of(&c).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn direct_sums() {
        let f = gf(5);
        let c = code(&f, &[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
        assert_eq!(c.distance().unwrap().exact(), Some(3));
        let s = c.direct_sum(&c).unwrap();
        assert_eq!((s.len(), s.dimension()), (8, 4));
        assert_eq!(s.distance().unwrap().exact(), Some(3));
        assert_eq!(s.min_distance_brute_force().unwrap().exact(), Some(3));
        let empty = LinearCode::zero(&f, 0);
        let same = c.direct_sum(&empty).unwrap();
        assert!(same.same_code(&c).unwrap());
    }

    #[test]
    fn erasures() {
        let f = gf(7);
        let c = code(&f, &[&[1, 1, 1, 1, 1], &[1, 3, 2, 6, 4]]);
        let word = c.encode(&fe(&[3, 5])).unwrap();
        let full: Vec<_> = word.iter().copied().map(Some).collect();
        assert_eq!(c.erasure_solve(&full).unwrap(), Recovery::Recovered(word.clone()));
        let mut three = full.clone();
        for j in [0, 2, 4] {
            three[j] = None;
        }
        assert_eq!(c.erasure_solve(&three).unwrap(), Recovery::Recovered(word.clone()));
        let mut four = three.clone();
        four[1] = None;
        assert_eq!(c.erasure_solve(&four).unwrap(), Recovery::Ambiguous);
        let mut bad = full.clone();
        bad[0] = Some(f.add(word[0], FieldElement::ONE));
        assert_eq!(c.erasure_solve(&bad).unwrap_err(), Error::InconsistentWord);
    }

    #[test]
    fn information_set_needs_several_sets() {
        // [9,3] code over GF(3) whose first information set is not enough
        let f = gf(3);
        let c = code(
            &f,
            &[
                &[1, 0, 0, 1, 1, 0, 1, 2, 1],
                &[0, 1, 0, 1, 0, 1, 2, 1, 1],
                &[0, 0, 1, 0, 1, 1, 1, 1, 2],
            ],
        );
        let expected = naive_distance(&c);
        assert_eq!(c.min_distance_information_set(u64::MAX).unwrap().exact(), Some(expected));
        assert_eq!(c.min_distance_brute_force().unwrap().exact(), Some(expected));
    }

    fn arb_code() -> impl Strategy<Value = (u64, usize, usize, Vec<u32>)> {
        (prop::sample::select(vec![2u64, 3, 4, 5]), 2usize..=8)
            .prop_flat_map(|(q, n)| (Just(q), Just(n), 1..=n.min(5)))
            .prop_flat_map(|(q, n, k)| {
                (Just(q), Just(n), Just(k), prop::collection::vec(0..q as u32, n * k))
            })
    }

    proptest! {
        #[test]
        fn all_routes_match_enumeration((q, n, k, vals) in arb_code()) {
            let f = Field::with_order(q).unwrap();
            let m = Matrix::new(&f, k, n, vals.into_iter().map(FieldElement::from_raw).collect()).unwrap();
            let c = LinearCode::from_spanning_set(&m);
            prop_assume!(c.dimension() > 0);
            let d = naive_distance(&c);
            prop_assert_eq!(c.distance().unwrap().exact(), Some(d));
            prop_assert_eq!(c.min_distance_brute_force().unwrap().exact(), Some(d));
            prop_assert_eq!(c.min_distance_information_set(u64::MAX).unwrap().exact(), Some(d));
            prop_assert!(d <= n - c.dimension() + 1);
        }
    }
}
