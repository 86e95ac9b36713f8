use clap::{Args, Parser, Subcommand};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use frattini::autsearch::classify_ct_actions;
use frattini::catalog::FamilyDescriptor;
use frattini::classifier::classify;
use frattini::verify::{run_suite_with, CheckId, CheckStatus, Context};
use frattini::{Error, FinAbGroup};

#[derive(Parser)]
#[command(name = "frattini", version, about = "S/NS classification of finite p-groups and searches for cohomologically trivial actions")]
struct Cli {
    /// Worker threads for sweeps and searches (default: logical CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one group as an S-group or NS-group.
    Classify(ClassifyArgs),
    /// Search Aut(M) for cohomologically trivial elementary abelian actions.
    Search(SearchArgs),
    /// Run the verification suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Descriptor file with one key=value per line.
    #[arg(long, conflicts_with_all = ["descriptor", "family"])]
    spec: Option<PathBuf>,
    /// Inline descriptor, e.g. "family=dihedral,order=8".
    #[arg(long, conflicts_with = "family")]
    descriptor: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    order: Option<u64>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    rank: Option<u32>,
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long)]
    beta: Option<u32>,
    #[arg(long)]
    gamma: Option<u32>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    /// Direct-product factor, inner pairs separated by ';'.
    #[arg(long)]
    component: Vec<String>,
    /// Write the report as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary line.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u32,
    /// Exponents of the cyclic factors, e.g. "2,1" for Z/p^2 x Z/p.
    #[arg(long = "type", value_delimiter = ',', required = true)]
    exponents: Vec<u32>,
    /// Minimum rank of the acting elementary abelian group.
    #[arg(long, default_value_t = 2)]
    rank: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these checks (repeatable).
    #[arg(long)]
    only: Vec<String>,
    /// Directory for suite.json, suite.md and per-check reports.
    #[arg(long, default_value = "frattini-report")]
    out: PathBuf,
}

enum Failure {
    Domain(Error),
    Io(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidParameters(_) | Error::NotPrimePower(_) => 2,
        Error::GuardExceeded { .. } => 4,
        _ => 3,
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn descriptor(args: &ClassifyArgs) -> Result<FamilyDescriptor, Failure> {
    if let Some(path) = &args.spec {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Domain(Error::Parse(format!("{}: {e}", path.display()))))?;
        return Ok(text.parse()?);
    }
    if let Some(inline) = &args.descriptor {
        return Ok(inline.parse()?);
    }
    let family = args
        .family
        .as_ref()
        .ok_or_else(|| Error::Parse("give --spec, --descriptor or --family".into()))?;
    let mut pairs: Vec<(String, String)> = vec![("family".into(), family.clone())];
    let numeric = [
        ("order", args.order.map(|v| v.to_string())),
        ("p", args.p.map(|v| v.to_string())),
        ("n", args.n.map(|v| v.to_string())),
        ("rank", args.rank.map(|v| v.to_string())),
        ("alpha", args.alpha.map(|v| v.to_string())),
        ("beta", args.beta.map(|v| v.to_string())),
        ("gamma", args.gamma.map(|v| v.to_string())),
        ("r", args.r.map(|v| v.to_string())),
        ("m", args.m.map(|v| v.to_string())),
    ];
    for (k, v) in numeric {
        if let Some(v) = v {
            pairs.push((k.into(), v));
        }
    }
    for c in &args.component {
        pairs.push(("component".into(), c.clone()));
    }
    Ok(FamilyDescriptor::from_pairs(
        pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())),
    )?)
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), Failure> {
    let desc = descriptor(&args)?;
    let group = desc.build()?;
    let report = classify(&group)?;
    let json = report.to_json();
    if let Some(out) = &args.out {
        write(out, &(json.clone() + "\n"))?;
    }
    if args.json {
        println!("{json}");
    } else {
        println!("{}", report.summary_line());
        if let Some(audit) = &report.ns_audit {
            for c in &audit.checks {
                println!("  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
            }
        }
    }
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), Failure> {
    let m = FinAbGroup::new(args.p, args.exponents.clone())?;
    let report = classify_ct_actions(&m, args.rank)?;
    let json = report.to_json();
    if let Some(out) = &args.out {
        write(out, &(json.clone() + "\n"))?;
    }
    if args.json {
        println!("{json}");
    } else {
        println!(
            "{m}: {} hits ({} elementary abelian subgroups of rank >= {} examined, |Aut| = {})",
            report.hit_count, report.subgroups_examined, args.rank, report.automorphism_count
        );
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let only: Option<Vec<CheckId>> = if args.only.is_empty() {
        None
    } else {
        Some(
            args.only
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<CheckId>, Error>>()?,
        )
    };
    let ctx = Context::new();
    let mut suite = run_suite_with(&ctx, only.as_deref(), |r| println!("{}", r.line()));
    let mut files = Vec::new();
    for check in &mut suite.checks {
        if check.status == CheckStatus::Skipped && check.subchecks.is_empty() {
            continue;
        }
        let path = args.out.join("checks").join(format!("{}.json", check.name));
        check.artifacts.push(path.display().to_string());
        files.push(path);
    }
    for (check, path) in suite
        .checks
        .iter()
        .filter(|c| !c.artifacts.is_empty())
        .zip(&files)
    {
        let json = serde_json::to_string_pretty(check).expect("check serializes");
        write(path, &(json + "\n"))?;
    }
    write(&args.out.join("suite.json"), &(suite.to_json() + "\n"))?;
    write(&args.out.join("suite.md"), &suite.markdown())?;
    for c in &suite.checks {
        for f in c.failures() {
            eprintln!("{} / {}: {}", c.name, f.name, f.detail);
        }
    }
    let passed = suite.checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
    println!(
        "{passed} of {} checks passed; reports in {}",
        suite.checks.len(),
        args.out.display()
    );
    if suite.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Search(a) => cmd_search(a),
        Command::VerifyPaper(a) => cmd_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
