//! (r, δ)-locality: certificates, the Singleton-type bound, optimality and
//! local repair.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::code::{Distance, DistanceMethod, LinearCode, Recovery};
use crate::error::{Error, Result};
use crate::galois::FieldElement;
use crate::matrix::Matrix;
use crate::product::next_combination;

/// Repair groups for (r, δ)-locality. Coordinates are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityCertificate {
    pub r: usize,
    pub delta: usize,
    pub groups: Vec<Vec<usize>>,
}

impl LocalityCertificate {
    pub fn new(r: usize, delta: usize, groups: Vec<Vec<usize>>) -> Self {
        let groups = groups
            .into_iter()
            .map(|mut g| {
                g.sort_unstable();
                g.dedup();
                g
            })
            .collect();
        LocalityCertificate { r, delta, groups }
    }

    pub fn max_group_size(&self) -> usize {
        self.r + self.delta - 1
    }

    /// The same groups repeated in each of `blocks` consecutive blocks of
    /// length `block_len`.
    pub fn replicate(&self, blocks: usize, block_len: usize) -> Self {
        let groups = (0..blocks)
            .flat_map(|b| {
                self.groups
                    .iter()
                    .map(move |g| g.iter().map(|&j| b * block_len + j).collect())
            })
            .collect();
        LocalityCertificate::new(self.r, self.delta, groups)
    }
}

/// `n - k + 1 - (ceil(k/r) - 1)(δ - 1)`.
pub fn singleton_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<i64> {
    if !(1 <= r && r <= k && k <= n) || delta < 2 {
        return Err(Error::params(format!(
            "Singleton-type bound needs 1 <= r <= k <= n and δ >= 2 (n={n}, k={k}, r={r}, δ={delta})"
        )));
    }
    let blocks = k.div_ceil(r) as i64;
    Ok(n as i64 - k as i64 + 1 - (blocks - 1) * (delta as i64 - 1))
}

/// Indices of the nonzero columns of `h`.
pub fn support(h: &Matrix) -> Vec<usize> {
    (0..h.cols())
        .filter(|&j| (0..h.rows()).any(|i| !h.get(i, j).is_zero()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCheck {
    pub group: Vec<usize>,
    pub size_ok: bool,
    /// Dimension of the punctured code.
    pub local_dimension: usize,
    /// Distance of the punctured code, searched up to δ; `None` for a
    /// punctured code with no nonzero codeword.
    pub local_distance: Option<Distance>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub uncovered: Vec<usize>,
    pub groups: Vec<GroupCheck>,
}

impl CertificateCheck {
    /// First reason for rejection, if any.
    pub fn failure(&self) -> Option<String> {
        if let Some(&j) = self.uncovered.first() {
            return Some(format!(
                "coordinate {j} is not covered ({} uncovered)",
                self.uncovered.len()
            ));
        }
        self.groups.iter().enumerate().find(|(_, g)| !g.ok).map(|(i, g)| {
            if !g.size_ok {
                format!("group {i} has {} coordinates", g.group.len())
            } else {
                format!(
                    "group {i} punctures to distance {}",
                    g.local_distance.map_or("-".into(), |d| d.to_string())
                )
            }
        })
    }
}

fn check_shape(code: &LinearCode, cert: &LocalityCertificate) -> Result<()> {
    if cert.r == 0 || cert.delta < 2 {
        return Err(Error::InvalidCertificate(format!(
            "needs r >= 1 and δ >= 2 (r={}, δ={})",
            cert.r, cert.delta
        )));
    }
    for (i, g) in cert.groups.iter().enumerate() {
        if g.is_empty() {
            return Err(Error::InvalidCertificate(format!("group {i} is empty")));
        }
        if let Some(&j) = g.iter().find(|&&j| j >= code.len()) {
            return Err(Error::InvalidCertificate(format!(
                "group {i} names coordinate {j} outside length {}",
                code.len()
            )));
        }
    }
    Ok(())
}

fn check_group(code: &LinearCode, group: &[usize], r: usize, delta: usize) -> Result<GroupCheck> {
    let size_ok = group.len() < r + delta;
    let local = code.puncture(group)?;
    let local_distance = match local.dimension() {
        0 => None,
        _ => Some(local.min_distance(delta)?.distance),
    };
    let distance_ok = match local_distance {
        None => true,
        Some(Distance::Exact(d)) => d >= delta,
        Some(Distance::AtLeast(d)) => d >= delta,
    };
    Ok(GroupCheck {
        group: group.to_vec(),
        size_ok,
        local_dimension: local.dimension(),
        local_distance,
        ok: size_ok && distance_ok,
    })
}

/// Checks coverage, group sizes and the distance of every punctured code.
pub fn check_certificate(code: &LinearCode, cert: &LocalityCertificate) -> Result<CertificateCheck> {
    check_shape(code, cert)?;
    let mut covered = vec![false; code.len()];
    for g in &cert.groups {
        for &j in g {
            covered[j] = true;
        }
    }
    let uncovered: Vec<usize> = (0..code.len()).filter(|&j| !covered[j]).collect();
    let groups = cert
        .groups
        .iter()
        .map(|g| check_group(code, g, cert.r, cert.delta))
        .collect::<Result<Vec<_>>>()?;
    let valid = uncovered.is_empty() && groups.iter().all(|g| g.ok);
    Ok(CertificateCheck {
        valid,
        uncovered,
        groups,
    })
}

/// Searches, coordinate by coordinate, for groups of size at most
/// `r + δ - 1` whose punctured code has distance at least δ. Subsets are
/// tried by increasing size, then lexicographically. `Ok(None)` means some
/// coordinate has no such group. More than `budget` subset checks is an
/// error.
pub fn find_locality(
    code: &LinearCode,
    r: usize,
    delta: usize,
    budget: u64,
) -> Result<Option<LocalityCertificate>> {
    if r == 0 || delta < 2 {
        return Err(Error::params("find_locality needs r >= 1 and δ >= 2"));
    }
    let n = code.len();
    let max = (r + delta - 1).min(n);
    let mut covered = vec![false; n];
    let mut groups = Vec::new();
    let mut spent = 0u64;
    for i in 0..n {
        if covered[i] {
            continue;
        }
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mut found = None;
        'sizes: for size in 1..=max {
            let mut pick: Vec<usize> = (0..size - 1).collect();
            loop {
                spent += 1;
                if spent > budget {
                    return Err(Error::BudgetExceeded(format!(
                        "locality search beyond {budget} subsets"
                    )));
                }
                let mut group: Vec<usize> = pick.iter().map(|&t| others[t]).collect();
                group.push(i);
                group.sort_unstable();
                if check_group(code, &group, r, delta)?.ok {
                    found = Some(group);
                    break 'sizes;
                }
                if !next_combination(&mut pick, others.len()) {
                    break;
                }
            }
        }
        let Some(group) = found else {
            return Ok(None);
        };
        for &j in &group {
            covered[j] = true;
        }
        groups.push(group);
    }
    Ok(Some(LocalityCertificate::new(r, delta, groups)))
}

/// Verified parameters of a code with respect to a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_exact: bool,
    pub d_method: DistanceMethod,
    pub q: u64,
    pub r: usize,
    pub delta: usize,
    pub bound: i64,
    pub optimal: bool,
}

impl CodeReport {
    pub fn summary(&self) -> String {
        let d = if self.d_exact {
            self.d.to_string()
        } else {
            format!(">={}", self.d)
        };
        format!(
            "[{},{},{}]_{} {} ({},{})",
            self.n,
            self.k,
            d,
            self.q,
            if self.optimal { "optimal" } else { "not optimal" },
            self.r,
            self.delta
        )
    }
}

/// Computes the distance and compares it with the Singleton-type bound. An
/// invalid certificate is an error.
pub fn classify(code: &LinearCode, cert: &LocalityCertificate) -> Result<CodeReport> {
    let check = check_certificate(code, cert)?;
    if let Some(reason) = check.failure() {
        return Err(Error::InvalidCertificate(reason));
    }
    let (n, k) = (code.len(), code.dimension());
    let dist = code.distance()?;
    let bound = singleton_bound(n, k, cert.r, cert.delta)?;
    let d = dist.lower_bound();
    let d_exact = dist.exact().is_some();
    Ok(CodeReport {
        n,
        k,
        d,
        d_exact,
        d_method: dist.method,
        q: code.field().order(),
        r: cert.r,
        delta: cert.delta,
        bound,
        optimal: d_exact && d as i64 == bound,
    })
}

/// Result of a local repair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub word: Vec<FieldElement>,
    /// Erased position and the index of the group that restored it.
    pub repaired_by: BTreeMap<usize, usize>,
}

/// Restored symbols only, as returned by [`local_repair_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restored {
    pub values: BTreeMap<usize, FieldElement>,
    pub repaired_by: BTreeMap<usize, usize>,
}

/// Restores the erased positions of `word` (`None` entries) group by group.
pub fn local_repair(
    code: &LinearCode,
    cert: &LocalityCertificate,
    word: &[Option<FieldElement>],
) -> Result<Repair> {
    if word.len() != code.len() {
        return Err(Error::dims(format!(
            "word of length {} for a code of length {}",
            word.len(),
            code.len()
        )));
    }
    let erased: BTreeSet<usize> = (0..word.len()).filter(|&j| word[j].is_none()).collect();
    let restored = local_repair_with(code, cert, &erased, |j| {
        word[j].expect("read of an erased symbol")
    })?;
    let full = word
        .iter()
        .enumerate()
        .map(|(j, v)| v.unwrap_or_else(|| restored.values[&j]))
        .collect();
    Ok(Repair {
        word: full,
        repaired_by: restored.repaired_by,
    })
}

/// Like [`local_repair`], but surviving symbols are fetched through `read`,
/// which is called only for coordinates of the groups used, at most once
/// each.
///
/// Each pending position is repaired by a group that contains it and holds
/// at most δ - 1 pending positions, preferring the group with the most
/// pending positions and then certificate order; passes repeat while they
/// make progress.
pub fn local_repair_with(
    code: &LinearCode,
    cert: &LocalityCertificate,
    erased: &BTreeSet<usize>,
    mut read: impl FnMut(usize) -> FieldElement,
) -> Result<Restored> {
    check_shape(code, cert)?;
    let n = code.len();
    if let Some(&j) = erased.iter().find(|&&j| j >= n) {
        return Err(Error::params(format!("erased position {j} outside length {n}")));
    }
    let mut known: BTreeMap<usize, FieldElement> = BTreeMap::new();
    let mut pending = erased.clone();
    let mut repaired_by = BTreeMap::new();
    let mut punctured: BTreeMap<usize, LinearCode> = BTreeMap::new();
    loop {
        let mut progress = false;
        let targets: Vec<usize> = pending.iter().copied().collect();
        for p in targets {
            if !pending.contains(&p) {
                continue;
            }
            let mut candidates: Vec<(usize, usize)> = cert
                .groups
                .iter()
                .enumerate()
                .filter(|(_, g)| g.contains(&p))
                .map(|(gi, g)| (gi, g.iter().filter(|j| pending.contains(j)).count()))
                .filter(|&(_, missing)| missing < cert.delta)
                .collect();
            candidates.sort_by_key(|&(gi, missing)| (std::cmp::Reverse(missing), gi));
            for (gi, _) in candidates {
                let group = &cert.groups[gi];
                if let std::collections::btree_map::Entry::Vacant(e) = punctured.entry(gi) {
                    e.insert(code.puncture(group)?);
                }
                let local_word: Vec<Option<FieldElement>> = group
                    .iter()
                    .map(|&j| {
                        if pending.contains(&j) {
                            None
                        } else {
                            Some(*known.entry(j).or_insert_with(|| read(j)))
                        }
                    })
                    .collect();
                if let Recovery::Recovered(values) = punctured[&gi].erasure_solve(&local_word)? {
                    for (&j, &v) in group.iter().zip(&values) {
                        if pending.remove(&j) {
                            known.insert(j, v);
                            repaired_by.insert(j, gi);
                        }
                    }
                    progress = true;
                    break;
                }
            }
        }
        if pending.is_empty() {
            break;
        }
        if !progress {
            return Err(Error::RepairFailed {
                positions: pending.into_iter().collect(),
            });
        }
    }
    let values = erased.iter().map(|&j| (j, known[&j])).collect();
    Ok(Restored {
        values,
        repaired_by,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;
    use crate::mds::{grs_code, GrsSpec};

    fn fe(v: &[u32]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_raw(x)).collect()
    }

    fn grs_5_2() -> LinearCode {
        let f = Field::new(7, 1).unwrap();
        grs_code(&f, &GrsSpec::new(fe(&[1, 3, 2, 6, 4]), fe(&[1; 5]), 2)).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(singleton_bound(15, 3, 2, 4).unwrap(), 10);
        assert_eq!(singleton_bound(30, 10, 3, 4).unwrap(), 12);
        assert_eq!(singleton_bound(9, 4, 4, 2).unwrap(), 6);
        assert!(singleton_bound(5, 2, 3, 2).is_err());
        assert!(singleton_bound(5, 2, 1, 1).is_err());
    }

    #[test]
    fn supports() {
        let f = Field::new(5, 1).unwrap();
        assert!(support(&Matrix::zeros(&f, 2, 3)).is_empty());
        assert_eq!(support(&Matrix::identity(&f, 3)), vec![0, 1, 2]);
        let h = Matrix::from_rows(&f, &[vec![1, 1, 0, 0], vec![1, 2, 0, 0]]).unwrap();
        assert_eq!(support(&h), vec![0, 1]);
    }

    #[test]
    fn certificate_checks() {
        let c = grs_5_2();
        let whole = LocalityCertificate::new(2, 4, vec![(0..5).collect()]);
        assert!(check_certificate(&c, &whole).unwrap().valid);
        let too_strict = LocalityCertificate::new(2, 5, vec![(0..5).collect()]);
        assert!(!check_certificate(&c, &too_strict).unwrap().valid);
        let partial = LocalityCertificate::new(2, 2, vec![vec![0, 1, 2]]);
        let check = check_certificate(&c, &partial).unwrap();
        assert_eq!(check.uncovered, vec![3, 4]);
        let oversized = LocalityCertificate::new(1, 2, vec![(0..5).collect()]);
        assert!(!check_certificate(&c, &oversized).unwrap().groups[0].size_ok);
        let out_of_range = LocalityCertificate::new(2, 2, vec![vec![0, 5]]);
        assert!(matches!(
            check_certificate(&c, &out_of_range),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn locality_search() {
        let c = grs_5_2();
        assert_eq!(find_locality(&c, 1, 2, 10_000).unwrap(), None);
        let f = Field::new(3, 1).unwrap();
        let rep = LinearCode::from_generator(Matrix::from_rows(&f, &[vec![1; 4]]).unwrap()).unwrap();
        let cert = find_locality(&rep, 1, 4, 10_000).unwrap().unwrap();
        assert_eq!(cert.groups, vec![vec![0, 1, 2, 3]]);
        assert!(matches!(
            find_locality(&rep, 1, 4, 2),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn classification() {
        let c = grs_5_2();
        // GRS [5,2,4] with r = 2, δ = 4 is MDS-optimal
        let report = classify(&c, &LocalityCertificate::new(2, 4, vec![(0..5).collect()])).unwrap();
        assert_eq!((report.d, report.bound), (4, 4));
        assert!(report.optimal);
        // overlapping groups of size 4 and 2 fail for δ = 3
        let bad = LocalityCertificate::new(2, 3, vec![vec![0, 1, 2, 3], vec![3, 4]]);
        assert!(matches!(classify(&c, &bad), Err(Error::InvalidCertificate(_))));
        // with k <= r the bound is the classical one, so an MDS code stays optimal
        let small = LocalityCertificate::new(2, 2, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let report = classify(&c, &small).unwrap();
        assert_eq!((report.d, report.bound), (4, 4));
        assert!(report.optimal);
    }

    #[test]
    fn repair_reads_only_the_group() {
        let c = grs_5_2();
        let doubled = c.direct_sum(&c).unwrap();
        let cert = LocalityCertificate::new(2, 4, vec![(0..5).collect(), (5..10).collect()]);
        let word = doubled.encode(&fe(&[1, 2, 3, 4])).unwrap();
        let erased: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        let mut reads = Vec::new();
        let restored = local_repair_with(&doubled, &cert, &erased, |j| {
            reads.push(j);
            word[j]
        })
        .unwrap();
        for j in 0..3 {
            assert_eq!(restored.values[&j], word[j]);
            assert_eq!(restored.repaired_by[&j], 0);
        }
        assert_eq!(reads, vec![3, 4]);

        let mut received: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
        for j in 0..4 {
            received[j] = None;
        }
        assert!(matches!(
            local_repair(&doubled, &cert, &received),
            Err(Error::RepairFailed { .. })
        ));
        let untouched: Vec<_> = word.iter().copied().map(Some).collect();
        let same = local_repair(&doubled, &cert, &untouched).unwrap();
        assert_eq!(same.word, word);
        assert!(same.repaired_by.is_empty());
    }
}
