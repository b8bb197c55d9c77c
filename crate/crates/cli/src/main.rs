mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mlu_core::io::{read_matrix, write_matrix, Format};
use mlu_core::random::random_corpus;
use mlu_core::{
    factor_lbu, factor_lu_partitioned, factor_lu_spurs, singular_structure, strategy_min_blocks,
    strategy_permutation, sweep, verify, Error, Execution, FactorMode, FactorizationKind,
    FactorizationResult, MMatrix, SingularStructure, SplitJK, Tolerances, DEFAULT_ZERO_TOL,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use report::{analysis, blocks, plus_one, split_json, FactorReport, Metadata, SweepReport};

/// Structure analysis and LU-type factorizations of (singular) M-matrices.
///
/// Indices on the command line and in every report are 1-based.
#[derive(Parser)]
#[command(name = "mlu", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classes, singular structure, self-partitions and suggested strategies.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Factor a matrix, verify the factors, and write them out.
    Factor {
        #[arg(value_enum)]
        mode: Mode,
        file: PathBuf,
        /// Singular classes to place in L (comma-separated).
        #[arg(long = "J", alias = "j", value_delimiter = ',')]
        j: Option<Vec<usize>>,
        /// Singular classes to place in U (comma-separated).
        #[arg(long = "K", alias = "k", value_delimiter = ',')]
        k: Option<Vec<usize>>,
        #[arg(long, value_enum)]
        strategy: Option<Strategy>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Omit the metadata footer (timestamp) from report.json.
        #[arg(long)]
        deterministic: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check externally supplied factors of a matrix.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "lu")]
        kind: Kind,
        #[arg(long = "L", alias = "l")]
        l: PathBuf,
        #[arg(long = "U", alias = "u")]
        u: PathBuf,
        #[arg(long = "B", alias = "b")]
        b: Option<PathBuf>,
        #[arg(long = "J", alias = "j", value_delimiter = ',')]
        j: Option<Vec<usize>>,
        #[arg(long = "K", alias = "k", value_delimiter = ',')]
        k: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// Factor and verify a seeded random corpus in every mode.
    Sweep {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Relative threshold below which entries count as zero.
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL)]
    tol: f64,
    /// Slack in the M-matrix test.
    #[arg(long, default_value_t = 1e-8)]
    mtol: f64,
    /// Relative threshold for singular class blocks.
    #[arg(long, default_value_t = 1e-8)]
    stol: f64,
    /// Relative tolerance of the product check.
    #[arg(long, default_value_t = 1e-10)]
    ptol: f64,
    /// Report instead of rejecting matrices that are not M-matrices.
    #[arg(long)]
    no_mcheck: bool,
    #[arg(long)]
    json: bool,
    /// Input format; inferred from the extension when absent.
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

impl Common {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            m_tol: self.mtol,
            sing_tol: self.stol,
            p_tol: self.ptol,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Lu,
    LuSpurs,
    Lbu,
    Permute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    MinBlocks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Lu,
    LuSpurs,
    Lbu,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Mtx,
    Txt,
}

impl From<FileFormat> for Format {
    fn from(f: FileFormat) -> Self {
        match f {
            FileFormat::Mtx => Format::MatrixMarket,
            FileFormat::Txt => Format::Dense,
        }
    }
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotMMatrix => 4,
            Error::BadSplit { .. } | Error::NegativeTolerance(_) | Error::InvalidPartition(_) => 2,
            _ => 1,
        };
        fail(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        fail(1, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path, c: &Common) -> Result<MMatrix, Failure> {
    if c.tol < 0.0 {
        return Err(fail(2, format!("negative tolerance {}", c.tol)));
    }
    let a = read_matrix(path, c.format.map(Format::from))
        .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    a.retol(c.tol).map_err(Failure::from)
}

/// Rejects non-Z input (always) and non-M input (unless `--no-mcheck`).
fn precheck(a: &MMatrix, c: &Common) -> Result<Option<SingularStructure>, Failure> {
    if !a.is_z_matrix() {
        if c.no_mcheck {
            return Ok(None);
        }
        return Err(fail(3, "not a Z-matrix: some off-diagonal entry is positive"));
    }
    match singular_structure(a, &c.tolerances()) {
        Ok(s) => Ok(Some(s)),
        Err(Error::NotMMatrix) if c.no_mcheck => Ok(None),
        Err(Error::NotMMatrix) => Err(fail(4, "not an M-matrix: alpha < rho(alpha I - A)")),
        Err(e) => Err(e.into()),
    }
}

fn require(s: Option<SingularStructure>) -> Result<SingularStructure, Failure> {
    s.ok_or_else(|| fail(4, "factorization requires an M-matrix"))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

fn analyze(file: &Path, c: &Common) -> Outcome {
    let a = load(file, c)?;
    let s = precheck(&a, c)?;
    let r = analysis(&a, s.as_ref(), &c.tolerances());
    if c.json {
        println!("{}", to_json(&r));
        return Ok(());
    }
    println!("n = {}, Z-matrix: {}, M-matrix: {}", r.n, r.z_matrix, r.m_matrix);
    println!("lower self-partition: {:?}", r.lower_self_partition);
    println!("upper self-partition: {:?}", r.upper_self_partition);
    if let (Some(sc), Some(mu), Some(t), Some(f)) = (&r.singular_classes, &r.mu, &r.t, &r.f) {
        for i in 0..sc.len() {
            println!(
                "S_{} = {:?}  mu = {}  T = {:?}  F = {:?}",
                i + 1,
                sc[i],
                mu[i],
                t[i],
                f[i]
            );
        }
        println!(
            "LU with nonsingular L: {}, triangular LU: {}, subdiagonal bounds: {:?}",
            r.varga_cai.unwrap_or(false),
            r.lu_exists.unwrap_or(false),
            r.subdiagonal_bounds.unwrap_or_default()
        );
        println!(
            "min-blocks split J = {:?}, K = {:?}; permutation {:?}",
            r.j.clone().unwrap_or_default(),
            r.k.clone().unwrap_or_default(),
            r.permutation.clone().unwrap_or_default()
        );
    }
    Ok(())
}

/// `--J/--K` (1-based, either may be omitted and is then the complement) or
/// the min-blocks strategy.
fn choose_split(
    s: &SingularStructure,
    j: Option<Vec<usize>>,
    k: Option<Vec<usize>>,
) -> Result<SplitJK, Failure> {
    let m = s.m();
    let zero = |v: Vec<usize>| -> Result<Vec<usize>, Failure> {
        v.into_iter()
            .map(|x| {
                if (1..=m).contains(&x) {
                    Ok(x - 1)
                } else {
                    Err(fail(2, format!("class index {x} not in 1..={m}")))
                }
            })
            .collect()
    };
    let rest = |v: &[usize]| (0..m).filter(|i| !v.contains(i)).collect::<Vec<_>>();
    let split = match (j, k) {
        (None, None) => return Ok(strategy_min_blocks(s)),
        (Some(j), None) => {
            let j = zero(j)?;
            let k = rest(&j);
            SplitJK::new(j, k)
        }
        (None, Some(k)) => {
            let k = zero(k)?;
            SplitJK::new(rest(&k), k)
        }
        (Some(j), Some(k)) => SplitJK::new(zero(j)?, zero(k)?),
    };
    split.validate(m)?;
    Ok(split)
}

#[allow(clippy::too_many_arguments)]
fn factor_cmd(
    mode: Mode,
    file: &Path,
    j: Option<Vec<usize>>,
    k: Option<Vec<usize>>,
    strategy: Option<Strategy>,
    out_dir: &Path,
    deterministic: bool,
    c: &Common,
) -> Outcome {
    let tol = c.tolerances();
    let a = load(file, c)?;
    let s = require(precheck(&a, c)?)?;
    if !matches!(mode, Mode::Lu) && (j.is_some() || k.is_some() || strategy.is_some()) {
        return Err(fail(2, "--J, --K and --strategy apply to mode lu only"));
    }
    if strategy.is_some() && (j.is_some() || k.is_some()) {
        return Err(fail(2, "--strategy conflicts with --J/--K"));
    }

    let mut perm = None;
    let (target, r, name) = match mode {
        Mode::Lu => {
            let split = choose_split(&s, j, k)?;
            (a.clone(), factor_lu_partitioned(&a, &split, &tol)?, "lu")
        }
        Mode::LuSpurs => (a.clone(), factor_lu_spurs(&a, &tol)?, "lu-spurs"),
        Mode::Lbu => (a.clone(), factor_lbu(&a, &tol)?, "lbu"),
        Mode::Permute => {
            let p = strategy_permutation(&s)?;
            let pa = p.apply_symmetric(&a)?;
            let m = singular_structure(&pa, &tol)?.m();
            let r = factor_lu_partitioned(&pa, &SplitJK::all_in_l(m), &tol)?;
            perm = Some(p);
            (pa, r, "permute")
        }
    };
    let rep = verify(&target, &r, &tol)?;

    std::fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();
    let mut put = |fname: &str, m: &MMatrix| -> std::io::Result<()> {
        write_matrix(&out_dir.join(fname), m, Format::MatrixMarket)?;
        files.push(fname.to_string());
        Ok(())
    };
    put("L.mtx", &r.l)?;
    if let Some(b) = &r.b {
        put("B.mtx", b)?;
    }
    put("U.mtx", &r.u)?;
    if let Some(p) = &perm {
        put("P.mtx", &p.matrix())?;
    }
    files.push("report.json".into());

    let (jj, kk) = match &r.split {
        Some(sp) => {
            let (j, k) = split_json(sp);
            (Some(j), Some(k))
        }
        None => (None, None),
    };
    let report = FactorReport {
        mode: name.into(),
        n: a.n(),
        j: jj,
        k: kk,
        permutation: perm.as_ref().map(|p| plus_one(p.order())),
        chi: r
            .chi
            .as_ref()
            .map(|c| c.chi.iter().map(|&(x, y)| [x + 1, y + 1]).collect()),
        psi: blocks(&r.psi),
        upsilon: blocks(&r.upsilon),
        files,
        verification: rep.clone().into(),
        metadata: (!deterministic).then(Metadata::now),
    };
    let text = to_json(&report);
    std::fs::write(out_dir.join("report.json"), format!("{text}\n"))?;

    if c.json {
        println!("{text}");
    } else {
        println!(
            "{name}: wrote {} to {}",
            report.files.join(", "),
            out_dir.display()
        );
        print_verdict(&rep);
    }
    if rep.overall {
        Ok(())
    } else {
        Err(fail(5, "verification failed; factors written and flagged"))
    }
}

fn print_verdict(rep: &mlu_core::VerificationReport) {
    let failed = rep.failures();
    println!(
        "verification: {} ({} checks, {} failed)",
        if rep.overall { "PASS" } else { "FAIL" },
        rep.checks.len(),
        failed.len()
    );
    for c in failed {
        println!("  {}: {}", c.name, c.detail);
    }
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    file: &Path,
    kind: Kind,
    l: &Path,
    u: &Path,
    b: Option<&Path>,
    j: Option<Vec<usize>>,
    k: Option<Vec<usize>>,
    c: &Common,
) -> Outcome {
    let tol = c.tolerances();
    let a = load(file, c)?;
    let s = require(precheck(&a, c)?)?;
    let (l, u) = (load(l, c)?, load(u, c)?);
    let b = b.map(|p| load(p, c)).transpose()?;
    let kind = match kind {
        Kind::Lu => FactorizationKind::BlockLU,
        Kind::LuSpurs => FactorizationKind::SpurLU,
        Kind::Lbu => FactorizationKind::LBU,
    };
    if (kind == FactorizationKind::LBU) != b.is_some() {
        return Err(fail(2, "--B is required for lbu and only for lbu"));
    }
    let split = if j.is_some() || k.is_some() {
        Some(choose_split(&s, j, k)?)
    } else {
        None
    };
    let r = FactorizationResult::from_factors(&a, kind, l, u, b, split, &tol)?;
    let rep = verify(&a, &r, &tol)?;
    if c.json {
        println!("{}", to_json(&report::Verification::from(rep.clone())));
    } else {
        print_verdict(&rep);
    }
    if rep.overall {
        Ok(())
    } else {
        Err(fail(5, "verification failed"))
    }
}

fn sweep_cmd(count: usize, max_n: usize, seed: u64, sequential: bool, c: &Common) -> Outcome {
    if max_n == 0 {
        return Err(fail(2, "--max-n must be at least 1"));
    }
    let corpus: Vec<MMatrix> = random_corpus(&mut ChaCha8Rng::seed_from_u64(seed), count, max_n)
        .into_iter()
        .map(|a| a.retol(c.tol))
        .collect::<Result<_, _>>()?;
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let out = sweep(&corpus, &FactorMode::ALL, &c.tolerances(), exec);
    let runs = out.len();
    let failures: Vec<_> = out.into_iter().filter(|o| !o.passed).collect();
    let report = SweepReport {
        count,
        max_n,
        seed,
        runs,
        failed: failures.len(),
        failures,
    };
    if c.json {
        println!("{}", to_json(&report));
    } else {
        println!(
            "{} matrices x {} modes: {} runs, {} failed",
            count,
            FactorMode::ALL.len(),
            runs,
            report.failed
        );
        for f in &report.failures {
            println!("  #{} {:?}: {:?} {:?}", f.index, f.mode, f.failed_checks, f.error);
        }
    }
    if report.failed == 0 {
        Ok(())
    } else {
        Err(fail(5, "some factorizations failed verification"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Command::Analyze { file, common } => analyze(&file, &common),
        Command::Factor {
            mode,
            file,
            j,
            k,
            strategy,
            out_dir,
            deterministic,
            common,
        } => factor_cmd(mode, &file, j, k, strategy, &out_dir, deterministic, &common),
        Command::Verify {
            file,
            kind,
            l,
            u,
            b,
            j,
            k,
            common,
        } => verify_cmd(&file, kind, &l, &u, b.as_deref(), j, k, &common),
        Command::Sweep {
            count,
            max_n,
            seed,
            sequential,
            common,
        } => sweep_cmd(count, max_n, seed, sequential, &common),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("mlu: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
