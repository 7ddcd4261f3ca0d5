//! Exact minimum-distance searches.
//!
//! Three independent routes: dependent-column search on a parity-check
//! matrix, exhaustive codeword enumeration, and an information-set
//! enumeration with a running lower bound.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::galois::{Field, FieldElement};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Exact(usize),
    /// The search stopped early; the true distance is at least this value.
    AtLeast(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    ColumnSearch,
    BruteForce,
    InformationSet,
    CertifiedByConstruction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub distance: Distance,
    pub method: DistanceMethod,
}

impl DistanceResult {
    pub fn exact(&self) -> Option<usize> {
        match self.distance {
            Distance::Exact(d) => Some(d),
            Distance::AtLeast(_) => None,
        }
    }

    /// Exact value or lower bound, whichever is known.
    pub fn lower_bound(&self) -> usize {
        match self.distance {
            Distance::Exact(d) | Distance::AtLeast(d) => d,
        }
    }

    pub fn certified(d: usize) -> Self {
        DistanceResult {
            distance: Distance::Exact(d),
            method: DistanceMethod::CertifiedByConstruction,
        }
    }
}

impl fmt::Display for DistanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceMethod::ColumnSearch => "column-search",
            DistanceMethod::BruteForce => "brute-force",
            DistanceMethod::InformationSet => "information-set",
            DistanceMethod::CertifiedByConstruction => "certified-by-construction",
        })
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

pub(crate) fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|a| !a.is_zero()).count()
}

/// Smallest number of linearly dependent columns of `h`, searched over
/// sizes up to `cap`. `known_upper` is a size at which a dependent set is
/// guaranteed to exist (the Singleton value). Returns `None` when more than
/// `budget` span tests would be needed.
pub(crate) fn column_search(
    h: &Matrix,
    cap: usize,
    known_upper: usize,
    budget: u64,
) -> Option<Distance> {
    let n = h.cols();
    let columns: Vec<Vec<FieldElement>> = (0..n).map(|j| h.column(j)).collect();
    let proven = known_upper <= cap;
    let mut search = ColumnSearch {
        field: h.field(),
        columns: &columns,
        best: if proven { known_upper } else { cap + 1 },
        nodes: 0,
        budget,
    };
    let mut basis = Vec::new();
    if !search.dfs(0, &mut basis) {
        return None;
    }
    Some(if search.best <= cap {
        Distance::Exact(search.best)
    } else {
        Distance::AtLeast(cap + 1)
    })
}

struct ColumnSearch<'a> {
    field: &'a Field,
    columns: &'a [Vec<FieldElement>],
    best: usize,
    nodes: u64,
    budget: u64,
}

impl ColumnSearch<'_> {
    /// Explores extensions of the independent set held in `basis` by
    /// columns `start..`. Returns false once the budget runs out.
    fn dfs(&mut self, start: usize, basis: &mut Vec<(usize, Vec<FieldElement>)>) -> bool {
        let size = basis.len();
        for c in start..self.columns.len() {
            if size + 1 >= self.best {
                return true;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let v = reduce(self.field, &self.columns[c], basis);
            let Some(pivot) = v.iter().position(|a| !a.is_zero()) else {
                self.best = size + 1;
                return true;
            };
            if size + 2 < self.best {
                let inv = self.field.inv(v[pivot]).expect("pivot is nonzero");
                let v = v.iter().map(|&a| self.field.mul(a, inv)).collect();
                basis.push((pivot, v));
                let ok = self.dfs(c + 1, basis);
                basis.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

fn reduce(
    f: &Field,
    col: &[FieldElement],
    basis: &[(usize, Vec<FieldElement>)],
) -> Vec<FieldElement> {
    let mut v = col.to_vec();
    for (pivot, b) in basis {
        let factor = v[*pivot];
        if factor.is_zero() {
            continue;
        }
        for (x, &y) in v.iter_mut().zip(b) {
            if !y.is_zero() {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
    }
    v
}

/// Minimum weight over all nonzero codewords of the row space of `g`
/// (full row rank, at least one row), by enumerating every GF(p)-linear
/// combination of the vectors `theta * g_i`.
pub(crate) fn brute_force(g: &Matrix) -> usize {
    let f = g.field();
    let p = f.characteristic();
    let n = g.cols();
    let basis: Vec<FieldElement> = (0..f.degree())
        .map(|j| f.from_digits(&unit_digits(j as usize)))
        .collect();
    let mut generators: Vec<Vec<FieldElement>> = Vec::new();
    for i in 0..g.rows() {
        for &theta in &basis {
            generators.push(g.row(i).iter().map(|&a| f.mul(a, theta)).collect());
        }
    }
    let supports: Vec<Vec<usize>> = generators
        .iter()
        .map(|v| (0..n).filter(|&j| !v[j].is_zero()).collect())
        .collect();

    // split the top digits across threads
    let digits = generators.len();
    let mut top = 0;
    while top < digits && (p as u64).pow(top as u32) < 256 {
        top += 1;
    }
    let low = digits - top;
    let prefixes = (p as u64).pow(top as u32);
    (0..prefixes)
        .into_par_iter()
        .map(|prefix| {
            let mut word = vec![FieldElement::ZERO; n];
            let mut rest = prefix;
            for t in 0..top {
                let d = rest % p as u64;
                rest /= p as u64;
                for _ in 0..d {
                    add_into(f, &mut word, &generators[low + t], &supports[low + t]);
                }
            }
            let mut wt = weight(&word);
            let mut best = if prefix == 0 { usize::MAX } else { wt };
            let mut counter = vec![0u32; low];
            loop {
                let mut i = 0;
                while i < low {
                    wt = add_tracking(f, &mut word, wt, &generators[i], &supports[i]);
                    counter[i] += 1;
                    if counter[i] < p {
                        break;
                    }
                    counter[i] = 0;
                    i += 1;
                }
                if i == low {
                    break;
                }
                if wt != 0 && wt < best {
                    best = wt;
                }
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX)
}

fn unit_digits(j: usize) -> Vec<u32> {
    let mut d = vec![0u32; j + 1];
    d[j] = 1;
    d
}

fn add_into(f: &Field, word: &mut [FieldElement], v: &[FieldElement], support: &[usize]) {
    for &j in support {
        word[j] = f.add(word[j], v[j]);
    }
}

fn add_tracking(
    f: &Field,
    word: &mut [FieldElement],
    mut wt: usize,
    v: &[FieldElement],
    support: &[usize],
) -> usize {
    for &j in support {
        let before = word[j].is_zero();
        word[j] = f.add(word[j], v[j]);
        match (before, word[j].is_zero()) {
            (true, false) => wt += 1,
            (false, true) => wt -= 1,
            _ => {}
        }
    }
    wt
}

/// Information-set enumeration. `g` must have full row rank and at least
/// one row. Gives up with the current lower bound once the estimated number
/// of codewords formed exceeds `budget`.
pub(crate) fn information_set(g: &Matrix, budget: u64) -> Distance {
    let f = g.field();
    if f.order() <= 256 {
        enumerate_info_sets(g, &Tables::new(f), budget)
    } else {
        enumerate_info_sets(g, f, budget)
    }
}

/// Arithmetic on raw element values.
trait Arith: Sync {
    fn q(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// `-1 / a` for nonzero `a`.
    fn neg_inv(&self, a: u32) -> u32;
}

impl Arith for Field {
    fn q(&self) -> u32 {
        self.order() as u32
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        Field::add(self, FieldElement::from_raw(a), FieldElement::from_raw(b)).value()
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        Field::mul(self, FieldElement::from_raw(a), FieldElement::from_raw(b)).value()
    }
    fn neg_inv(&self, a: u32) -> u32 {
        let inv = self.inv(FieldElement::from_raw(a)).expect("nonzero");
        self.neg(inv).value()
    }
}

struct Tables {
    q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg_inv: Vec<u8>,
}

impl Tables {
    fn new(f: &Field) -> Self {
        let q = f.order() as u32;
        let mut add = Vec::with_capacity((q * q) as usize);
        let mut mul = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                add.push(Arith::add(f, a, b) as u8);
                mul.push(Arith::mul(f, a, b) as u8);
            }
        }
        let neg_inv = (0..q)
            .map(|a| if a == 0 { 0 } else { f.neg_inv(a) as u8 })
            .collect();
        Tables { q, add, mul, neg_inv }
    }
}

impl Arith for Tables {
    fn q(&self) -> u32 {
        self.q
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }
    #[inline]
    fn neg_inv(&self, a: u32) -> u32 {
        self.neg_inv[a as usize] as u32
    }
}

/// One systematic generator, restricted to the columns outside its
/// information set. Rows below `rank` carry a single 1 on the set; the
/// others vanish there.
struct System {
    rows: Vec<Vec<u32>>,
    rank: usize,
}

impl System {
    fn info_weight(&self, row: usize) -> usize {
        usize::from(row < self.rank)
    }
}

fn enumerate_info_sets<A: Arith>(g: &Matrix, ar: &A, budget: u64) -> Distance {
    let k = g.rows();
    let n = g.cols();
    let systems: Vec<System> = systematic_forms(g)
        .into_iter()
        .map(|(gamma, info)| {
            let rest: Vec<usize> = (0..n).filter(|j| !info.contains(j)).collect();
            let rows = (0..k)
                .map(|i| rest.iter().map(|&j| gamma.get(i, j).value()).collect())
                .collect();
            System {
                rows,
                rank: info.len(),
            }
        })
        .collect();

    let mut upper = (0..k).map(|i| weight(g.row(i))).min().unwrap_or(n);
    // levels[j]: every message of weight <= levels[j] has been tried on system j
    let mut levels = vec![0usize; systems.len()];
    let lower_bound = |levels: &[usize]| -> usize {
        systems
            .iter()
            .zip(levels)
            .map(|(s, &w)| (w + 1).saturating_sub(k - s.rank))
            .sum::<usize>()
            .max(1)
    };
    let mut spent = 0u64;
    let nonzero = (ar.q() - 1) as u128;
    for w in 1..=k {
        for (j, sys) in systems.iter().enumerate() {
            if w < k - sys.rank {
                // would not raise the bound
                levels[j] = w;
                continue;
            }
            let count = crate::galois::numtheory::binomial(k, w)
                .saturating_mul(nonzero.saturating_pow(w as u32 - 1));
            spent = spent.saturating_add(count.min(u64::MAX as u128) as u64);
            if spent > budget {
                return Distance::AtLeast(lower_bound(&levels).min(upper));
            }
            upper = upper.min(min_weight_at(sys, ar, w));
            levels[j] = w;
            if lower_bound(&levels) >= upper {
                return Distance::Exact(upper);
            }
        }
    }
    Distance::Exact(upper)
}

/// Least weight over messages of weight exactly `w` whose first nonzero
/// coefficient is 1.
fn min_weight_at<A: Arith>(sys: &System, ar: &A, w: usize) -> usize {
    let k = sys.rows.len();
    let nonzero: Vec<u32> = (1..ar.q()).collect();
    let seeds: Vec<(usize, Option<(usize, u32)>)> = if w == 1 {
        (0..k).map(|i| (i, None)).collect()
    } else {
        (0..k)
            .flat_map(|a| {
                let nonzero = &nonzero;
                (a + 1..=k + 1 - w).flat_map(move |b| nonzero.iter().map(move |&c| (a, Some((b, c)))))
            })
            .collect()
    };
    seeds
        .into_par_iter()
        .map(|(a, second)| {
            let mut bufs = vec![vec![0u32; sys.rows[0].len()]; w];
            bufs[0].copy_from_slice(&sys.rows[a]);
            let mut info = sys.info_weight(a);
            let (depth, start) = match second {
                None => return info + raw_weight(&bufs[0]),
                Some((b, c)) => {
                    add_scaled(ar, &mut bufs, 0, &sys.rows[b], c);
                    info += sys.info_weight(b);
                    (1, b + 1)
                }
            };
            if w == 2 {
                return info + raw_weight(&bufs[1]);
            }
            let mut best = usize::MAX;
            descend(sys, ar, &nonzero, &mut bufs, depth, start, w - 2, info, &mut best);
            best
        })
        .min()
        .unwrap_or(usize::MAX)
}

fn raw_weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// `bufs[d + 1] = bufs[d] + c * row`.
fn add_scaled<A: Arith>(ar: &A, bufs: &mut [Vec<u32>], d: usize, row: &[u32], c: u32) {
    let (lo, hi) = bufs.split_at_mut(d + 1);
    for ((out, &x), &y) in hi[0].iter_mut().zip(&lo[d]).zip(row) {
        *out = if y == 0 { x } else { ar.add(x, ar.mul(c, y)) };
    }
}

/// Adds `left` more rows from `start..` onto `bufs[depth]`. The last row is
/// scored for every coefficient in one pass.
#[allow(clippy::too_many_arguments)]
fn descend<A: Arith>(
    sys: &System,
    ar: &A,
    nonzero: &[u32],
    bufs: &mut [Vec<u32>],
    depth: usize,
    start: usize,
    left: usize,
    info: usize,
    best: &mut usize,
) {
    let k = sys.rows.len();
    if left == 1 {
        let word = &bufs[depth];
        let mut hits = vec![0usize; ar.q() as usize];
        for i in start..k {
            let row = &sys.rows[i];
            hits.iter_mut().for_each(|h| *h = 0);
            let mut base = 0;
            for (&x, &y) in word.iter().zip(row) {
                if y == 0 {
                    base += usize::from(x != 0);
                } else {
                    base += 1;
                    if x != 0 {
                        hits[ar.mul(x, ar.neg_inv(y)) as usize] += 1;
                    }
                }
            }
            let cancel = hits[1..].iter().max().copied().unwrap_or(0);
            *best = (*best).min(info + sys.info_weight(i) + base - cancel);
        }
        return;
    }
    for i in start..=k - left {
        for &c in nonzero {
            add_scaled(ar, bufs, depth, &sys.rows[i], c);
            descend(sys, ar, nonzero, bufs, depth + 1, i + 1, left - 1, info + sys.info_weight(i), best);
        }
    }
}

/// Generators of the code that are systematic on pairwise disjoint column
/// sets, each paired with its set.
fn systematic_forms(g: &Matrix) -> Vec<(Matrix, Vec<usize>)> {
    let n = g.cols();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let sub = g.select_columns(&remaining).expect("indices in range");
        let pivots: Vec<usize> = sub.rref().pivots.iter().map(|&p| remaining[p]).collect();
        if pivots.is_empty() {
            break;
        }
        let mut order = pivots.clone();
        order.extend((0..n).filter(|j| !pivots.contains(j)));
        let ech = g.select_columns(&order).expect("indices in range").rref();
        let mut inverse = vec![0usize; n];
        for (pos, &j) in order.iter().enumerate() {
            inverse[j] = pos;
        }
        let gamma = ech
            .matrix
            .select_columns(&inverse)
            .expect("indices in range");
        out.push((gamma, pivots.clone()));
        remaining.retain(|j| !pivots.contains(j));
    }
    out
}
