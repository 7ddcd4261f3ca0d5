//! Builders for the optimal LRC families and the GRS product parameter
//! enumerator.
//!
//! Builders emit their predicted parameters; nothing here trusts
//! them. [`CodeBundle::verify`] recomputes everything from the code.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::galois::{numtheory::prime_power, Field, FieldElement};
use crate::locality::{
    check_certificate, classify, singleton_bound, CertificateCheck, CodeReport,
    LocalityCertificate,
};
use crate::matrix::Matrix;
use crate::mds::{cyclic_mds_chain, grs_code, GrsSpec};
use crate::product::{compose_code, is_nsc, vandermonde_nsc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Thm1,
    Cor1,
    Cor2,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Thm1,
        Family::Cor1,
        Family::Cor2,
        Family::Thm2,
        Family::Thm3,
        Family::Thm4,
        Family::Thm5,
        Family::Thm6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Thm1 => "thm1",
            Family::Cor1 => "cor1",
            Family::Cor2 => "cor2",
            Family::Thm2 => "thm2",
            Family::Thm3 => "thm3",
            Family::Thm4 => "thm4",
            Family::Thm5 => "thm5",
            Family::Thm6 => "thm6",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::params(format!("unknown family {s:?}")))
    }
}

/// Optional overrides for evaluation points, multipliers and the points of
/// the NSC Vandermonde matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    pub points: Option<Vec<FieldElement>>,
    pub multipliers: Option<Vec<FieldElement>>,
    pub matrix_points: Option<Vec<FieldElement>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicted {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl fmt::Display for Predicted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.n, self.k, self.d)
    }
}

/// A constructed code with its certificate and predicted parameters.
#[derive(Clone, Debug)]
pub struct CodeBundle {
    pub code: LinearCode,
    pub cert: LocalityCertificate,
    pub predicted: Predicted,
    /// Whether the family claims optimality for these inputs.
    pub optimal_claim: bool,
    pub family: Family,
    pub inputs: BTreeMap<String, u64>,
}

/// Outcome of checking a bundle against its predictions.
#[derive(Clone, Debug)]
pub struct Verification {
    pub report: CodeReport,
    pub certificate: CertificateCheck,
    pub matches_prediction: bool,
}

impl Verification {
    pub fn passed(&self, optimal_claim: bool) -> bool {
        self.certificate.valid
            && self.matches_prediction
            && self.report.d as i64 <= self.report.bound
            && (!optimal_claim || self.report.optimal)
    }
}

impl CodeBundle {
    /// Recomputes n, k, d, the certificate and optimality from scratch.
    pub fn verify(&self) -> Result<Verification> {
        let certificate = check_certificate(&self.code, &self.cert)?;
        let report = classify(&self.code, &self.cert)?;
        let matches_prediction = report.d_exact
            && (report.n, report.k, report.d)
                == (self.predicted.n, self.predicted.k, self.predicted.d);
        Ok(Verification {
            report,
            certificate,
            matches_prediction,
        })
    }

    pub fn field(&self) -> &Field {
        self.code.field()
    }
}

fn field_for(q: u64) -> Result<Field> {
    Field::with_order(q)
}

/// `(1, 2, ..., count)` in encoding order when `count < q`, otherwise every
/// element starting at 0.
pub fn default_points(field: &Field, count: usize) -> Result<Vec<FieldElement>> {
    let q = field.order();
    match (count as u64).cmp(&q) {
        std::cmp::Ordering::Less => Ok((1..=count as u32).map(FieldElement::from_raw).collect()),
        std::cmp::Ordering::Equal => Ok(field.elements().collect()),
        std::cmp::Ordering::Greater => Err(Error::params(format!(
            "{count} distinct points do not exist in {field}"
        ))),
    }
}

fn points_or_default(
    field: &Field,
    given: &Option<Vec<FieldElement>>,
    count: usize,
    what: &str,
) -> Result<Vec<FieldElement>> {
    match given {
        Some(p) if p.len() != count => Err(Error::params(format!(
            "{what}: expected {count} values, got {}",
            p.len()
        ))),
        Some(p) => Ok(p.clone()),
        None => default_points(field, count),
    }
}

fn multipliers_or_default(
    given: &Option<Vec<FieldElement>>,
    count: usize,
) -> Result<Vec<FieldElement>> {
    match given {
        Some(v) if v.len() != count => Err(Error::params(format!(
            "multipliers: expected {count} values, got {}",
            v.len()
        ))),
        Some(v) => Ok(v.clone()),
        None => Ok(vec![FieldElement::ONE; count]),
    }
}

fn blocks(count: usize, len: usize) -> Vec<Vec<usize>> {
    (0..count)
        .map(|b| (b * len..(b + 1) * len).collect())
        .collect()
}

fn inputs(pairs: &[(&str, usize)]) -> BTreeMap<String, u64> {
    pairs
        .iter()
        .map(|&(k, v)| (k.to_string(), v as u64))
        .collect()
}

fn vandermonde_for(field: &Field, opts: &BuildOptions, m: usize, n: usize) -> Result<Matrix> {
    let pts = points_or_default(field, &opts.matrix_points, n, "matrix points")?;
    let a = vandermonde_nsc(field, &pts, m)?;
    if !a.is_verified() {
        return Err(Error::params("Vandermonde matrix is not NSC"));
    }
    Ok(a.matrix().clone())
}

/// GRS_r copies followed by GRS_{r-g} on shared points, composed with an
/// `M x N` Vandermonde matrix.
pub fn build_thm1(
    q: u64,
    r: usize,
    delta: usize,
    g: usize,
    m_codes: usize,
    n_blocks: usize,
    opts: &BuildOptions,
) -> Result<CodeBundle> {
    let field = field_for(q)?;
    if !(n_blocks as u64 <= q && n_blocks > m_codes && m_codes > 1) {
        return Err(Error::params(format!(
            "need q >= N > M > 1 (q={q}, N={n_blocks}, M={m_codes})"
        )));
    }
    if delta < 2 {
        return Err(Error::params("δ must be at least 2"));
    }
    if r == 0 || g >= r {
        return Err(Error::params(format!("need 0 <= g < r (g={g}, r={r})")));
    }
    if g * (n_blocks - m_codes + 1) > delta {
        return Err(Error::params(format!(
            "need g(N-M+1) <= δ (g={g}, N-M+1={}, δ={delta})",
            n_blocks - m_codes + 1
        )));
    }
    let len = r + delta - 1;
    if len as u64 > q {
        return Err(Error::params(format!("r+δ-1 = {len} exceeds q = {q}")));
    }
    let points = points_or_default(&field, &opts.points, len, "points")?;
    let mult = multipliers_or_default(&opts.multipliers, len)?;
    let spec = GrsSpec::new(points, mult, r);
    let big = grs_code(&field, &spec)?;
    let small = grs_code(&field, &spec.with_dimension(r - g))?;
    let mut ingredients = vec![big; m_codes - 1];
    ingredients.push(small);
    let a = vandermonde_for(&field, opts, m_codes, n_blocks)?;
    let code = compose_code(&ingredients, &a)?;
    Ok(CodeBundle {
        code,
        cert: LocalityCertificate::new(r, delta, blocks(n_blocks, len)),
        predicted: Predicted {
            n: n_blocks * len,
            k: m_codes * r - g,
            d: (n_blocks - m_codes + 1) * (delta + g),
        },
        optimal_claim: r == g + 1,
        family: Family::Thm1,
        inputs: inputs(&[
            ("q", q as usize),
            ("r", r),
            ("delta", delta),
            ("g", g),
            ("M", m_codes),
            ("N", n_blocks),
        ]),
    })
}

/// The `g = r - 1` case with GRS_1 as the last ingredient.
pub fn build_cor1(
    q: u64,
    r: usize,
    delta: usize,
    m_codes: usize,
    n_blocks: usize,
    opts: &BuildOptions,
) -> Result<CodeBundle> {
    if r == 0 {
        return Err(Error::params("r must be at least 1"));
    }
    if n_blocks > m_codes && (r - 1) * (n_blocks - m_codes + 1) > delta {
        return Err(Error::params(format!(
            "condition (r-1)(N-M+1) <= δ violated: {} > {delta}",
            (r - 1) * (n_blocks - m_codes + 1)
        )));
    }
    let mut bundle = build_thm1(q, r, delta, r - 1, m_codes, n_blocks, opts)?;
    bundle.family = Family::Cor1;
    bundle.inputs.remove("g");
    Ok(bundle)
}

/// Cyclic chain members `C_r` (M-1 copies) and `C_1` of length q+1.
pub fn build_cor2(
    q: u64,
    r: usize,
    m_codes: usize,
    n_blocks: usize,
    opts: &BuildOptions,
) -> Result<CodeBundle> {
    if r.is_multiple_of(2) {
        return Err(Error::params(format!("r must be odd (got {r})")));
    }
    if q.is_multiple_of(2) {
        return Err(Error::params(format!("q must be odd (got {q})")));
    }
    let field = field_for(q)?;
    if !(n_blocks as u64 <= q && n_blocks > m_codes && m_codes > 1) {
        return Err(Error::params(format!(
            "need q >= N > M > 1 (q={q}, N={n_blocks}, M={m_codes})"
        )));
    }
    let lhs = (r - 1) * (n_blocks - m_codes + 1) + r;
    if lhs as u64 > q + 2 {
        return Err(Error::params(format!(
            "condition (r-1)(N-M+1)+r <= q+2 violated: {lhs} > {}",
            q + 2
        )));
    }
    let delta = q as usize + 2 - r;
    let len = q as usize + 1;
    let big = cyclic_mds_chain(&field, r)?;
    let small = cyclic_mds_chain(&field, 1)?;
    let mut ingredients = vec![big; m_codes - 1];
    ingredients.push(small);
    let a = vandermonde_for(&field, opts, m_codes, n_blocks)?;
    let code = compose_code(&ingredients, &a)?;
    Ok(CodeBundle {
        code,
        cert: LocalityCertificate::new(r, delta, blocks(n_blocks, len)),
        predicted: Predicted {
            n: n_blocks * len,
            k: (m_codes - 1) * r + 1,
            d: (n_blocks - m_codes + 1) * len,
        },
        optimal_claim: true,
        family: Family::Cor2,
        inputs: inputs(&[("q", q as usize), ("r", r), ("M", m_codes), ("N", n_blocks)]),
    })
}

/// Multipliers, points and local distance of the moment matrix
/// `(λ_j α_j^i)`, `i = 0..δ-2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcBlockSpec {
    pub lambdas: Vec<FieldElement>,
    pub points: Vec<FieldElement>,
    pub delta: usize,
}

impl PcBlockSpec {
    pub fn new(
        field: &Field,
        r: usize,
        delta: usize,
        opts: &BuildOptions,
    ) -> Result<Self> {
        if r == 0 || delta < 2 {
            return Err(Error::params(format!(
                "need r >= 1 and δ >= 2 (r={r}, δ={delta})"
            )));
        }
        let m = r + delta - 1;
        if m as u64 > field.order() {
            return Err(Error::params(format!(
                "m = r+δ-1 = {m} exceeds q = {}",
                field.order()
            )));
        }
        Ok(PcBlockSpec {
            lambdas: multipliers_or_default(&opts.multipliers, m)?,
            points: points_or_default(field, &opts.points, m, "points")?,
            delta,
        })
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    fn validate(&self, field: &Field) -> Result<()> {
        GrsSpec::new(self.points.clone(), self.lambdas.clone(), 0).validate(field)?;
        if self.delta < 2 || self.m() < self.delta {
            return Err(Error::params("need 2 <= δ <= m"));
        }
        Ok(())
    }

    /// Column `j` (0-based) of the moment rows with exponents `from..from+rows`.
    fn column(&self, field: &Field, j: usize, from: usize, rows: usize) -> Vec<FieldElement> {
        (from..from + rows)
            .map(|e| field.mul(self.lambdas[j], field.pow(self.points[j], e as u64)))
            .collect()
    }
}

fn from_columns(field: &Field, rows: usize, cols: &[Vec<FieldElement>]) -> Matrix {
    Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i])
}

/// The `(δ-1) x m` matrix H.
pub fn build_pc_block(field: &Field, spec: &PcBlockSpec) -> Result<Matrix> {
    spec.validate(field)?;
    let rows = spec.delta - 1;
    let cols: Vec<_> = (0..spec.m()).map(|j| spec.column(field, j, 0, rows)).collect();
    Ok(from_columns(field, rows, &cols))
}

/// Moment rows on the two overlapping halves: exponents `from..from+rows`,
/// where the shared column and the mirrored tail both appear. `stacked`
/// places both halves in separate row blocks (Ĥ); otherwise they share one
/// row block (Â).
fn two_sided(
    field: &Field,
    spec: &PcBlockSpec,
    from: usize,
    rows: usize,
    stacked: bool,
) -> Matrix {
    let m = spec.m();
    let zero = vec![FieldElement::ZERO; rows];
    let mut cols = Vec::with_capacity(2 * m - 1);
    for j in 0..m {
        let c = spec.column(field, j, from, rows);
        if !stacked {
            cols.push(c);
        } else if j + 1 < m {
            cols.push([c, zero.clone()].concat());
        } else {
            cols.push([c.clone(), c].concat());
        }
    }
    for t in 0..m - 1 {
        let c = spec.column(field, m - 2 - t, from, rows);
        cols.push(if stacked { [zero.clone(), c].concat() } else { c });
    }
    let height = if stacked { 2 * rows } else { rows };
    from_columns(field, height, &cols)
}

/// The `2(δ-1) x (2m-1)` matrix Ĥ.
pub fn build_pc_pair(field: &Field, spec: &PcBlockSpec) -> Result<Matrix> {
    spec.validate(field)?;
    Ok(two_sided(field, spec, 0, spec.delta - 1, true))
}

/// The parity-check matrix `H ⊕ ... ⊕ H ⊕ Ĥ` with `v - 2` copies of H.
pub fn build_thm4_parity(field: &Field, spec: &PcBlockSpec, v: usize) -> Result<Matrix> {
    if v < 2 {
        return Err(Error::params(format!("v must be greater than 1 (got {v})")));
    }
    let h = build_pc_block(field, spec)?;
    let mut out = Matrix::zeros(field, 0, 0);
    for _ in 0..v - 2 {
        out = out.block_diag(&h)?;
    }
    out.block_diag(&build_pc_pair(field, spec)?)
}

/// `ℋ` extended by the row block `(A ... A Â)` of moment rows
/// `δ-1 .. δ-2+τ`.
pub fn build_thm5_parity(field: &Field, spec: &PcBlockSpec, v: usize, tau: usize) -> Result<Matrix> {
    let top = build_thm4_parity(field, spec, v)?;
    if tau == 0 {
        return Ok(top);
    }
    let m = spec.m();
    let from = spec.delta - 1;
    let a_cols: Vec<_> = (0..m).map(|j| spec.column(field, j, from, tau)).collect();
    let a = from_columns(field, tau, &a_cols);
    let mut bottom = Matrix::zeros(field, tau, 0);
    for _ in 0..v - 2 {
        bottom = bottom.hstack(&a)?;
    }
    bottom = bottom.hstack(&two_sided(field, spec, from, tau, false))?;
    top.vstack(&bottom)
}

fn tail_groups(v: usize, m: usize) -> Vec<Vec<usize>> {
    let mut groups = blocks(v - 2, m);
    let o = (v - 2) * m;
    groups.push((o..o + m).collect());
    groups.push((o + m - 1..o + 2 * m - 1).collect());
    groups
}

fn parity_bundle(
    h: &Matrix,
    cert: LocalityCertificate,
    predicted: Predicted,
    family: Family,
    inputs: BTreeMap<String, u64>,
) -> CodeBundle {
    CodeBundle {
        code: LinearCode::from_parity_check(h),
        cert,
        predicted,
        optimal_claim: true,
        family,
        inputs,
    }
}

/// The code with parity-check matrix Ĥ.
pub fn build_thm3(q: u64, r: usize, delta: usize, opts: &BuildOptions) -> Result<CodeBundle> {
    let field = field_for(q)?;
    let spec = PcBlockSpec::new(&field, r, delta, opts)?;
    let m = spec.m();
    let h = build_pc_pair(&field, &spec)?;
    Ok(parity_bundle(
        &h,
        LocalityCertificate::new(r, delta, tail_groups(2, m)),
        Predicted {
            n: 2 * m - 1,
            k: 2 * r - 1,
            d: delta,
        },
        Family::Thm3,
        inputs(&[("q", q as usize), ("r", r), ("delta", delta)]),
    ))
}

pub fn build_thm4(
    q: u64,
    r: usize,
    delta: usize,
    v: usize,
    opts: &BuildOptions,
) -> Result<CodeBundle> {
    let field = field_for(q)?;
    let spec = PcBlockSpec::new(&field, r, delta, opts)?;
    let m = spec.m();
    let h = build_thm4_parity(&field, &spec, v)?;
    Ok(parity_bundle(
        &h,
        LocalityCertificate::new(r, delta, tail_groups(v, m)),
        Predicted {
            n: v * m - 1,
            k: v * r - 1,
            d: delta,
        },
        Family::Thm4,
        inputs(&[("q", q as usize), ("r", r), ("delta", delta), ("v", v)]),
    ))
}

fn check_tau(r: usize, delta: usize, tau: usize) -> Result<()> {
    if tau + 1 >= r {
        return Err(Error::params(format!("need τ+1 < r (τ={tau}, r={r})")));
    }
    if tau > delta {
        return Err(Error::params(format!("need τ <= δ (τ={tau}, δ={delta})")));
    }
    Ok(())
}

pub fn build_thm5(
    q: u64,
    r: usize,
    delta: usize,
    v: usize,
    tau: usize,
    opts: &BuildOptions,
) -> Result<CodeBundle> {
    check_tau(r, delta, tau)?;
    let field = field_for(q)?;
    let spec = PcBlockSpec::new(&field, r, delta, opts)?;
    let m = spec.m();
    let h = build_thm5_parity(&field, &spec, v, tau)?;
    Ok(parity_bundle(
        &h,
        LocalityCertificate::new(r, delta, tail_groups(v, m)),
        Predicted {
            n: v * m - 1,
            k: v * r - 1 - tau,
            d: delta + tau,
        },
        Family::Thm5,
        inputs(&[
            ("q", q as usize),
            ("r", r),
            ("delta", delta),
            ("v", v),
            ("tau", tau),
        ]),
    ))
}

/// `N - 1` copies of the `thm4` code and one `thm5` subcode, composed with an
/// `N x N` Vandermonde matrix.
pub fn build_thm6(
    q: u64,
    r: usize,
    delta: usize,
    v: usize,
    tau: usize,
    n_blocks: usize,
    opts: &BuildOptions,
) -> Result<CodeBundle> {
    if n_blocks == 0 || n_blocks as u64 > q {
        return Err(Error::params(format!("need 1 <= N <= q (N={n_blocks}, q={q})")));
    }
    if n_blocks + tau >= r {
        return Err(Error::params(format!(
            "need N+τ < r (N={n_blocks}, τ={tau}, r={r})"
        )));
    }
    let c1 = build_thm4(q, r, delta, v, opts)?;
    let cn = build_thm5(q, r, delta, v, tau, opts)?;
    let field = c1.field().clone();
    let a = vandermonde_for(&field, opts, n_blocks, n_blocks)?;
    let mut ingredients = vec![c1.code.clone(); n_blocks - 1];
    ingredients.push(cn.code);
    let code = compose_code(&ingredients, &a)?;
    let len = c1.code.len();
    Ok(CodeBundle {
        code,
        cert: c1.cert.replicate(n_blocks, len),
        predicted: Predicted {
            n: n_blocks * len,
            k: n_blocks * (v * r - 1) - tau,
            d: delta + tau,
        },
        optimal_claim: true,
        family: Family::Thm6,
        inputs: inputs(&[
            ("q", q as usize),
            ("r", r),
            ("delta", delta),
            ("v", v),
            ("tau", tau),
            ("N", n_blocks),
        ]),
    })
}

/// `k = w r - s` and `dim C_N = k - i`, for `N` blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm2Params {
    pub w: usize,
    pub s: usize,
    pub i: usize,
    pub n_blocks: usize,
}

impl Thm2Params {
    /// Derives `w`, `s`, `i` from the two dimensions and checks the
    /// constraints `0 <= i <= δ` and `N s + i < r`.
    pub fn derive(k1: usize, kn: usize, r: usize, delta: usize, n_blocks: usize) -> Result<Self> {
        if r == 0 || k1 == 0 {
            return Err(Error::params("need r >= 1 and k >= 1"));
        }
        if kn > k1 {
            return Err(Error::params(format!(
                "last ingredient has dimension {kn} above {k1}"
            )));
        }
        let w = k1.div_ceil(r);
        let p = Thm2Params {
            w,
            s: w * r - k1,
            i: k1 - kn,
            n_blocks,
        };
        if p.i > delta {
            return Err(Error::params(format!("need i <= δ (i={}, δ={delta})", p.i)));
        }
        if n_blocks * p.s + p.i >= r {
            return Err(Error::params(format!(
                "need Ns+i < r (N={n_blocks}, s={}, i={}, r={r})",
                p.s, p.i
            )));
        }
        Ok(p)
    }
}

/// Composes `N - 1` copies of an optimal LRC `C_1` with an optimal subcode
/// `C_N` through a square NSC matrix. Optimality, containment and the
/// certificate of `C_1` are checked before composing.
pub fn build_thm2(
    c1: &LinearCode,
    cert: &LocalityCertificate,
    cn: &LinearCode,
    a: &Matrix,
) -> Result<CodeBundle> {
    let n_blocks = a.rows();
    if !a.is_square() || n_blocks == 0 {
        return Err(Error::params("A must be a nonempty square matrix"));
    }
    if !is_nsc(a)? {
        return Err(Error::params("A is not NSC"));
    }
    if !cn.is_subcode_of(c1)? {
        return Err(Error::params("last ingredient is not contained in C_1"));
    }
    let (r, delta) = (cert.r, cert.delta);
    let p = Thm2Params::derive(c1.dimension(), cn.dimension(), r, delta, n_blocks)?;
    let check = check_certificate(c1, cert)?;
    if let Some(reason) = check.failure() {
        return Err(Error::InvalidCertificate(reason));
    }
    let n = c1.len();
    let k = c1.dimension();
    let d1 = c1.distance()?.exact();
    let bound1 = singleton_bound(n, k, r, delta)?;
    if d1 != Some(delta) || bound1 != delta as i64 {
        return Err(Error::params(format!(
            "C_1 is not an optimal [{n},{k},{delta}] LRC (d={d1:?}, bound={bound1})"
        )));
    }
    let dn = cn.distance()?.exact();
    let bound_n = singleton_bound(n, cn.dimension(), r, delta)?;
    if dn != Some(delta + p.i) || bound_n != (delta + p.i) as i64 {
        return Err(Error::params(format!(
            "C_N is not an optimal [{n},{},{}] LRC (d={dn:?}, bound={bound_n})",
            cn.dimension(),
            delta + p.i
        )));
    }
    let mut ingredients = vec![c1.clone(); n_blocks - 1];
    ingredients.push(cn.clone());
    let code = compose_code(&ingredients, a)?;
    Ok(CodeBundle {
        code,
        cert: cert.replicate(n_blocks, n),
        predicted: Predicted {
            n: n_blocks * n,
            k: n_blocks * k - p.i,
            d: delta + p.i,
        },
        optimal_claim: true,
        family: Family::Thm2,
        inputs: inputs(&[
            ("q", c1.field().order() as usize),
            ("r", r),
            ("delta", delta),
            ("N", n_blocks),
            ("w", p.w),
            ("s", p.s),
            ("i", p.i),
        ]),
    })
}

/// One row of the `cor1` parameter table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cor1Row {
    #[serde(rename = "N")]
    pub n_blocks: usize,
    #[serde(rename = "M")]
    pub m_codes: usize,
    pub r: usize,
    pub delta: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

/// Every admissible `(N, M, r, δ)` for `cor1` over GF(q), sorted by
/// `(N, M, δ, r)`.
pub fn enumerate_cor1(q: u64) -> Result<Vec<Cor1Row>> {
    if q < 3 || prime_power(q).is_none() {
        return Err(Error::params(format!("q must be a prime power >= 3 (got {q})")));
    }
    let q = q as usize;
    let mut rows = Vec::new();
    for n_blocks in 3..=q {
        for m_codes in 2..n_blocks {
            let t = n_blocks - m_codes + 1;
            for delta in 2..=q {
                for r in 1..=q + 1 - delta {
                    if (r - 1) * t <= delta {
                        let len = r + delta - 1;
                        rows.push(Cor1Row {
                            n_blocks,
                            m_codes,
                            r,
                            delta,
                            n: n_blocks * len,
                            k: (m_codes - 1) * r + 1,
                            d: t * len,
                        });
                    }
                }
            }
        }
    }
    rows.sort_by_key(|row| (row.n_blocks, row.m_codes, row.delta, row.r));
    Ok(rows)
}
