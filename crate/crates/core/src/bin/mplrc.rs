use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use mplrc::code::LinearCode;
use mplrc::codefile::{format_word, parse_word, CodeFile};
use mplrc::constructions::{
    build_cor1, build_cor2, build_thm1, build_thm2, build_thm3, build_thm4, build_thm5,
    build_thm6, default_points, enumerate_cor1, BuildOptions, CodeBundle, Family,
};
use mplrc::galois::{Field, FieldElement};
use mplrc::locality::{
    check_certificate, classify, find_locality, local_repair, LocalityCertificate,
};
use mplrc::matrix::Matrix;
use mplrc::mds::{grs_code, GrsSpec};
use mplrc::product::{compose, vandermonde_nsc};
use mplrc::Error;

#[derive(Parser)]
#[command(name = "mplrc", version, about = "Optimal (r,δ) locally repairable codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from one of the families and write it as JSON.
    Construct(ConstructArgs),
    /// List parameter tuples of a family.
    Enumerate(EnumerateArgs),
    /// Recompute the parameters of a code file.
    Verify(VerifyArgs),
    /// Restore erased symbols using the locality groups.
    Repair(RepairArgs),
    /// Randomized consistency checks, seeded by LRC_SEED.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long = "M")]
    m_codes: Option<usize>,
    #[arg(long = "N")]
    n_blocks: Option<usize>,
    #[arg(long)]
    v: Option<usize>,
    #[arg(long)]
    tau: Option<usize>,
    /// Evaluation points, comma separated.
    #[arg(long)]
    points: Option<String>,
    #[arg(long)]
    multipliers: Option<String>,
    /// Points of the Vandermonde matrix.
    #[arg(long)]
    matrix_points: Option<String>,
    /// First ingredient for thm2 (a code file with a locality block).
    #[arg(long)]
    c1: Option<PathBuf>,
    /// Last ingredient for thm2.
    #[arg(long)]
    cn: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, default_value = "cor1")]
    family: Family,
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
}

#[derive(Args)]
struct RepairArgs {
    file: PathBuf,
    /// Comma-separated symbols, `?` for an erasure.
    #[arg(long)]
    word: String,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 200)]
    cases: usize,
}

/// A check that ran and failed.
#[derive(Debug)]
struct VerificationFailed(String);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 3;
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return 4;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Format(_)) => 4,
        Some(Error::InvalidCertificate(_) | Error::RepairFailed { .. } | Error::InconsistentWord) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Verify(a) => verify(a),
        Command::Repair(a) => repair(a),
        Command::Selftest(a) => selftest(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn need<T>(v: Option<T>, flag: &str, family: Family) -> anyhow::Result<T> {
    v.ok_or_else(|| anyhow!(Error::InvalidParameters(format!("{family} needs --{flag}"))))
}

fn parse_list(s: &Option<String>) -> anyhow::Result<Option<Vec<FieldElement>>> {
    s.as_ref()
        .map(|s| {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map(FieldElement::from_raw)
                        .map_err(|_| anyhow!(Error::InvalidParameters(format!("bad value {t:?}"))))
                })
                .collect()
        })
        .transpose()
}

fn read_file(path: &Path) -> anyhow::Result<CodeFile> {
    let s = CodeFile::read(path).with_context(|| format!("reading {}", path.display()))?;
    CodeFile::from_json(&s).with_context(|| format!("parsing {}", path.display()))
}

fn build(a: &ConstructArgs) -> anyhow::Result<CodeBundle> {
    let f = a.family;
    let opts = BuildOptions {
        points: parse_list(&a.points)?,
        multipliers: parse_list(&a.multipliers)?,
        matrix_points: parse_list(&a.matrix_points)?,
    };
    let bundle = match f {
        Family::Thm2 => {
            let c1 = read_file(&need(a.c1.clone(), "c1", f)?)?.decode()?;
            let cn = read_file(&need(a.cn.clone(), "cn", f)?)?.decode()?;
            let cert = c1
                .cert
                .ok_or_else(|| anyhow!(Error::Format("--c1 file has no locality block".into())))?;
            let n = need(a.n_blocks, "N", f)?;
            let field = c1.code.field();
            let pts = match &opts.matrix_points {
                Some(p) => p.clone(),
                None => default_points(field, n)?,
            };
            let m = vandermonde_nsc(field, &pts, n)?;
            build_thm2(&c1.code, &cert, &cn.code, m.matrix())?
        }
        _ => {
            let q = need(a.q, "q", f)?;
            let r = need(a.r, "r", f)?;
            match f {
                Family::Thm1 => build_thm1(
                    q,
                    r,
                    need(a.delta, "delta", f)?,
                    need(a.g, "g", f)?,
                    need(a.m_codes, "M", f)?,
                    need(a.n_blocks, "N", f)?,
                    &opts,
                )?,
                Family::Cor1 => build_cor1(
                    q,
                    r,
                    need(a.delta, "delta", f)?,
                    need(a.m_codes, "M", f)?,
                    need(a.n_blocks, "N", f)?,
                    &opts,
                )?,
                Family::Cor2 => build_cor2(
                    q,
                    r,
                    need(a.m_codes, "M", f)?,
                    need(a.n_blocks, "N", f)?,
                    &opts,
                )?,
                Family::Thm3 => build_thm3(q, r, need(a.delta, "delta", f)?, &opts)?,
                Family::Thm4 => {
                    build_thm4(q, r, need(a.delta, "delta", f)?, need(a.v, "v", f)?, &opts)?
                }
                Family::Thm5 => build_thm5(
                    q,
                    r,
                    need(a.delta, "delta", f)?,
                    need(a.v, "v", f)?,
                    need(a.tau, "tau", f)?,
                    &opts,
                )?,
                Family::Thm6 => build_thm6(
                    q,
                    r,
                    need(a.delta, "delta", f)?,
                    need(a.v, "v", f)?,
                    need(a.tau, "tau", f)?,
                    need(a.n_blocks, "N", f)?,
                    &opts,
                )?,
                Family::Thm2 => unreachable!(),
            }
        }
    };
    Ok(bundle)
}

fn construct(a: ConstructArgs) -> anyhow::Result<()> {
    let bundle = build(&a)?;
    let file = CodeFile::from_bundle(&bundle);
    if let Some(path) = &a.output {
        file.write(path)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let v = bundle.verify()?;
    println!("{}", v.report.summary());
    println!(
        "n={} k={} d={} r={} delta={} bound={} optimal={}",
        v.report.n, v.report.k, v.report.d, v.report.r, v.report.delta, v.report.bound, v.report.optimal
    );
    println!("predicted {}", bundle.predicted);
    if let Some(path) = &a.output {
        println!("wrote {}", path.display());
    }
    if !v.passed(bundle.optimal_claim) {
        bail!(VerificationFailed(format!(
            "{} does not match the prediction {}",
            v.report.summary(),
            bundle.predicted
        )));
    }
    Ok(())
}

fn enumerate(a: EnumerateArgs) -> anyhow::Result<()> {
    if a.family != Family::Cor1 {
        bail!(Error::InvalidParameters(format!(
            "enumeration is only available for cor1, not {}",
            a.family
        )));
    }
    let rows = enumerate_cor1(a.q)?;
    let mut out = std::io::stdout().lock();
    match a.format {
        Format::Table => {
            writeln!(out, "{:>3} {:>3} {:>3} {:>3}  [n,k,d]", "N", "M", "r", "δ")?;
            for row in &rows {
                writeln!(
                    out,
                    "{:>3} {:>3} {:>3} {:>3}  [{},{},{}]",
                    row.n_blocks, row.m_codes, row.r, row.delta, row.n, row.k, row.d
                )?;
            }
            writeln!(out, "total: {}", rows.len())?;
        }
        Format::Csv => {
            writeln!(out, "N,M,r,delta,n,k,d")?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    row.n_blocks, row.m_codes, row.r, row.delta, row.n, row.k, row.d
                )?;
            }
        }
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string(&rows)?)?;
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> anyhow::Result<()> {
    let file = read_file(&a.file)?;
    let decoded = file.decode()?;
    let code = &decoded.code;
    let cert = match (decoded.cert, a.r, a.delta) {
        (Some(c), None, None) => Some(c),
        (Some(c), r, delta) => Some(LocalityCertificate::new(
            r.unwrap_or(c.r),
            delta.unwrap_or(c.delta),
            c.groups,
        )),
        (None, Some(r), Some(delta)) => Some(
            find_locality(code, r, delta, 1_000_000)?.ok_or_else(|| {
                anyhow!(VerificationFailed(format!("no ({r},{delta}) locality groups found")))
            })?,
        ),
        (None, None, None) => None,
        (None, _, _) => bail!(Error::InvalidParameters(
            "without a locality block both --r and --delta are needed".into()
        )),
    };
    let Some(cert) = cert else {
        let d = code.distance()?;
        println!("n={} k={} d={} ({})", code.len(), code.dimension(), d.lower_bound(), d.method);
        println!("no locality block");
        return Ok(());
    };
    let check = check_certificate(code, &cert)?;
    if let Some(reason) = check.failure() {
        bail!(VerificationFailed(format!("certificate: {reason}")));
    }
    let report = classify(code, &cert)?;
    println!("{}", report.summary());
    println!(
        "n={} k={} d={} ({}) q={} r={} delta={} bound={}",
        report.n, report.k, report.d, report.d_method, report.q, report.r, report.delta, report.bound
    );
    println!("certificate: valid ({} groups)", cert.groups.len());
    let rel = match (report.d as i64).cmp(&report.bound) {
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Greater => ">",
    };
    println!("optimal: {}, d={}{}bound", report.optimal, report.d, rel);
    if let Some(c) = &decoded.construction {
        let p = c.predicted;
        let matches = report.d_exact && (report.n, report.k, report.d) == (p.n, p.k, p.d);
        println!("predicted {p}: {}", if matches { "match" } else { "MISMATCH" });
        if !matches || (c.optimal_claim && !report.optimal) {
            bail!(VerificationFailed(format!("{} family claim not met", c.family)));
        }
    }
    Ok(())
}

fn repair(a: RepairArgs) -> anyhow::Result<()> {
    let decoded = read_file(&a.file)?.decode()?;
    let code = &decoded.code;
    let cert = decoded
        .cert
        .ok_or_else(|| anyhow!(Error::Format("file has no locality block".into())))?;
    let word = parse_word(code.field(), &a.word)?;
    if word.len() != code.len() {
        bail!(Error::InvalidParameters(format!(
            "word has {} symbols, code length is {}",
            word.len(),
            code.len()
        )));
    }
    let repaired = match local_repair(code, &cert, &word) {
        Ok(r) => r,
        Err(Error::RepairFailed { positions }) => {
            for (gi, g) in cert.groups.iter().enumerate() {
                let hit: Vec<usize> = positions.iter().copied().filter(|p| g.contains(p)).collect();
                if !hit.is_empty() {
                    let erased = g.iter().filter(|&&j| word[j].is_none()).count();
                    eprintln!(
                        "group {}: {} erasures, at most {} repairable (stuck: {})",
                        gi + 1,
                        erased,
                        cert.delta - 1,
                        hit.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")
                    );
                }
            }
            bail!(VerificationFailed(format!(
                "positions {} could not be repaired locally",
                positions.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")
            )));
        }
        Err(e) => return Err(e.into()),
    };
    println!("{}", format_word(&repaired.word));
    for (pos, g) in &repaired.repaired_by {
        println!("position {} <- group {}", pos + 1, g + 1);
    }
    if !code.contains(&repaired.word)? {
        bail!(VerificationFailed("repaired word is not a codeword".into()));
    }
    Ok(())
}

fn random_code(rng: &mut StdRng) -> anyhow::Result<LinearCode> {
    let q = [2u64, 3, 5, 7][rng.gen_range(0..4)];
    let field = Field::with_order(q)?;
    let n = rng.gen_range(2..=10);
    let max_k = (1..=n).take_while(|&k| q.pow(k as u32) <= 10_000).last().unwrap_or(1);
    let k = rng.gen_range(1..=max_k);
    let g = Matrix::from_fn(&field, k, n, |_, _| FieldElement::from_raw(rng.gen_range(0..q as u32)));
    Ok(LinearCode::from_spanning_set(&g))
}

fn selftest(a: SelftestArgs) -> anyhow::Result<()> {
    let seed: u64 = match std::env::var("LRC_SEED") {
        Ok(s) => s
            .parse()
            .map_err(|_| anyhow!(Error::InvalidParameters(format!("LRC_SEED={s:?} is not an integer"))))?,
        Err(_) => 0,
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();

    let mut checked = 0;
    while checked < a.cases {
        let code = random_code(&mut rng)?;
        if code.dimension() == 0 {
            continue;
        }
        checked += 1;
        let cs = code.min_distance_column_search(code.len(), u64::MAX)?.exact();
        let bf = code.min_distance_brute_force()?.exact();
        if cs != bf {
            failures.push(format!("distance search {cs:?} vs enumeration {bf:?}"));
        }
    }
    println!("distance routes: {checked} codes");

    let compositions = a.cases.div_ceil(4);
    for _ in 0..compositions {
        let q = [5u64, 7, 8, 9, 11][rng.gen_range(0..5)];
        let field = Field::with_order(q)?;
        let big_n = rng.gen_range(2..=4);
        let m = rng.gen_range(2..=big_n);
        let len = rng.gen_range(m + 1..=q as usize);
        let mut dims: Vec<usize> = (0..m).map(|_| rng.gen_range(1..len)).collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        let pts: Vec<FieldElement> = field.elements().take(len).collect();
        let spec = GrsSpec::new(pts, vec![FieldElement::ONE; len], dims[0]);
        let codes = dims
            .iter()
            .map(|&k| grs_code(&field, &spec.with_dimension(k)))
            .collect::<Result<Vec<_>, _>>()?;
        let a_pts: Vec<FieldElement> = field.elements().skip(1).take(big_n).collect();
        let a_mat = vandermonde_nsc(&field, &a_pts, m)?;
        let (code, _) = compose(&codes, a_mat.matrix())?;
        let expected = dims
            .iter()
            .enumerate()
            .map(|(i, &k)| (len - k + 1) * (big_n - i))
            .min()
            .unwrap_or(0);
        let got = code.distance()?.exact();
        if got != Some(expected) {
            failures.push(format!("composition distance {got:?} vs {expected}"));
        }
        let cert = LocalityCertificate::new(dims[0], len - dims[0] + 1, vec![(0..len).collect()])
            .replicate(big_n, len);
        if !check_certificate(&code, &cert)?.valid {
            failures.push("replicated certificate rejected".into());
        }
    }
    println!("compositions: {compositions}");
    println!("seed {seed}: {} failures", failures.len());
    if let Some(first) = failures.first() {
        bail!(VerificationFailed(first.clone()));
    }
    Ok(())
}
