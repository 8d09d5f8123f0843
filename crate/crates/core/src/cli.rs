//! Command-line surface behind the `hibi` binary.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::budget::{Budgets, MAX_BOX_ENV};
use crate::check::{audit, Audit};
use crate::classify::{classify, AnalysisReport, Verdict};
use crate::error::{HibiError, Result};
use crate::poset::{Poset, PosetDocument};
use crate::random::random_poset;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hibi", version, about = "Canonical-module generators and level/type classification of Hibi rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Debug, Clone, Args)]
struct BudgetArgs {
    /// Largest accepted |P|.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_elements: Option<u64>,
    /// T(P) lattice points the generator search may visit (also HIBI_MAX_BOX).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_box: Option<u64>,
    /// Partial condition-N sequences the backtracking may visit.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_sequences: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Classify one poset file.
    Analyze {
        file: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the property suites over a fixture directory or random posets.
    Check {
        dir: Option<PathBuf>,
        /// Number of random posets to audit instead of a directory.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long = "n", value_name = "K", default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        size: u64,
        #[arg(long, value_name = "D", default_value_t = 0.3)]
        density: f64,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
    },
    /// Emit the order ideals of P, i.e. the Hibi ring generators.
    ExportLattice { file: PathBuf },
    /// Print random posets as JSON lines.
    Random {
        #[arg(long = "n", value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        size: u64,
        #[arg(long, value_name = "D", default_value_t = 0.3)]
        density: f64,
        #[arg(long, value_name = "S")]
        seed: u64,
        #[arg(long, value_name = "C", default_value_t = 1)]
        count: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub budgets: Budgets,
}

impl RunConfig {
    /// Parses arguments (program name first); budgets start from the environment.
    pub fn parse_from<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let mut budgets = Budgets::from_env();
        if let Some(v) = cli.budgets.max_elements {
            budgets.max_elements = v as usize;
        }
        if let Some(v) = cli.budgets.max_box {
            budgets.max_box = v;
        }
        if let Some(v) = cli.budgets.max_sequences {
            budgets.max_sequences = v;
        }
        Ok(Self { command: cli.command, budgets })
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    execute(&config, out, err)
}

pub fn execute(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Analyze { file, json } => cmd_analyze(file, *json, &config.budgets, out),
        Command::Check { dir, random, size, density, seed } => match (dir, random) {
            (_, Some(count)) => cmd_check_random(*count, *size as usize, *density, *seed, &config.budgets, out),
            (Some(dir), None) => cmd_check_dir(dir, &config.budgets, out),
            (None, None) => Err(HibiError::Io(std::io::Error::new(
                std::io::ErrorKind::InvalidInput,
                "check needs a directory or --random N",
            ))),
        },
        Command::ExportLattice { file } => cmd_export_lattice(file, &config.budgets, out),
        Command::Random { size, density, seed, count } => cmd_random(*size as usize, *density, *seed, *count, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let HibiError::SizeGuard { .. } = e {
                let _ = writeln!(err, "note: {MAX_BOX_ENV} also sets the box budget");
            }
            match e {
                HibiError::Inconsistent(_) => EXIT_FAILURE,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn read_document(path: &Path) -> Result<PosetDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(HibiError::from)
}

fn load(path: &Path) -> Result<(Poset, PosetDocument)> {
    let doc = read_document(path)?;
    Ok((Poset::from_document(&doc)?, doc))
}

fn cmd_analyze(path: &Path, json: bool, budgets: &Budgets, out: &mut dyn Write) -> Result<i32> {
    let (poset, _) = load(path)?;
    let ep = poset.extend();
    match classify(&ep, budgets) {
        Ok(report) => {
            print_report(&report, json, out)?;
            Ok(EXIT_OK)
        }
        Err(HibiError::Inconsistent(report)) => {
            print_report(&report, json, out)?;
            Err(HibiError::Inconsistent(report))
        }
        Err(e) => Err(e),
    }
}

fn print_report(report: &AnalysisReport, json: bool, out: &mut dyn Write) -> Result<()> {
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        out.write_all(render_table(report).as_bytes())?;
    }
    Ok(())
}

/// Aligned key/value table of a report.
pub fn render_table(report: &AnalysisReport) -> String {
    let opt = |o: Option<String>| o.unwrap_or_else(|| "-".to_owned());
    let witness = &report.rmax_witness;
    let seq = if witness.ys.is_empty() {
        "(empty)".to_owned()
    } else {
        witness.ys.iter().zip(&witness.xs).map(|(y, x)| format!("({y}, {x})")).collect::<Vec<_>>().join(" ")
    };
    let mut rows: Vec<(String, String)> = vec![
        ("r".into(), report.r.to_string()),
        ("r_max".into(), report.r_max.to_string()),
        ("r_max witness".into(), format!("{seq}  value {}", witness.value)),
        ("floating".into(), format!("{{{}}}", report.floating.join(", "))),
        ("gorenstein".into(), report.gorenstein.to_string()),
        ("level".into(), report.level.to_string()),
        ("type".into(), opt(report.cm_type.map(|t| t.to_string()))),
        (
            "degrees".into(),
            opt(report.degree_histogram.as_ref().map(|h| {
                h.iter().map(|(d, c)| format!("{d}:{c}")).collect::<Vec<_>>().join(" ")
            })),
        ),
        ("level type-2 witness".into(), opt(report.level_type2_witness.clone())),
        (
            "non-level type-2 witness".into(),
            opt(report.nonlevel_type2_witness.as_ref().map(|w| format!("{} ⋖ {}", w.x, w.y))),
        ),
        ("mode".into(), serde_json::to_value(report.mode).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()),
    ];
    for c in &report.cross_checks {
        let mark = match c.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "skip",
        };
        rows.push((format!("check {}", c.name), format!("{mark}  {}", c.detail)));
    }
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in rows {
        let pad = width - k.chars().count();
        s.push_str(&format!("{k}{}  {v}\n", " ".repeat(pad)));
    }
    s
}

fn report_audit(label: &str, a: &Audit, out: &mut dyn Write) -> Result<bool> {
    if a.passed() {
        writeln!(out, "ok    {label}  r={} r_max={} type={}", a.r, a.r_max, a.cm_type)?;
        return Ok(true);
    }
    writeln!(out, "FAIL  {label}")?;
    for f in a.failures() {
        let name = serde_json::to_value(f.property).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        writeln!(out, "  {name}: {}", f.detail)?;
    }
    writeln!(out, "  poset: {}", serde_json::to_string(&a.poset.to_document())?)?;
    Ok(false)
}

fn summary(total: usize, failed: usize, out: &mut dyn Write) -> Result<i32> {
    writeln!(out, "{} posets checked, {failed} failed", total)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_check_dir(dir: &Path, budgets: &Budgets, out: &mut dyn Write) -> Result<i32> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut failed = 0;
    for path in &files {
        let (poset, doc) = load(path)?;
        let a = audit(&poset, doc.expected.as_ref(), budgets)?;
        let label = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        if !report_audit(&label, &a, out)? {
            failed += 1;
        }
    }
    summary(files.len(), failed, out)
}

fn cmd_check_random(count: usize, n: usize, density: f64, seed: u64, budgets: &Budgets, out: &mut dyn Write) -> Result<i32> {
    let mut failed = 0;
    for i in 0..count {
        let s = seed.wrapping_add(i as u64);
        let poset = random_poset(n, density, s);
        let a = audit(&poset, None, budgets)?;
        if !report_audit(&format!("n={n} density={density} seed={s}"), &a, out)? {
            failed += 1;
        }
    }
    summary(count, failed, out)
}

#[derive(Debug, Serialize)]
struct LatticeExport {
    ideals: Vec<Vec<String>>,
    monomials: Vec<BTreeMap<String, u32>>,
}

fn cmd_export_lattice(path: &Path, budgets: &Budgets, out: &mut dyn Write) -> Result<i32> {
    let (poset, _) = load(path)?;
    let ep = poset.extend();
    let ideals: Vec<Vec<String>> = ep.poset_ideals(budgets.max_ideals)?.iter().map(|i| ep.names_of(i)).collect();
    let monomials = ideals.iter().map(|i| i.iter().map(|x| (format!("T_{x}"), 1)).collect()).collect();
    let doc = LatticeExport { ideals, monomials };
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(EXIT_OK)
}

fn cmd_random(n: usize, density: f64, seed: u64, count: usize, out: &mut dyn Write) -> Result<i32> {
    for i in 0..count {
        let p = random_poset(n, density, seed.wrapping_add(i as u64));
        writeln!(out, "{}", serde_json::to_string(&p.to_document())?)?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("hibi").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn budgets_from_flags() {
        let c = RunConfig::parse_from(["hibi", "random", "--n", "3", "--seed", "1", "--max-box", "5"]).unwrap();
        assert_eq!(c.budgets.max_box, 5);
        assert!(RunConfig::parse_from(["hibi", "random", "--n", "3", "--seed", "1", "--max-box", "0"]).is_err());
    }

    #[test]
    fn random_requires_seed() {
        let (code, _, err) = run_str(&["random", "--n", "3"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("--seed"));
    }

    #[test]
    fn random_lines_parse() {
        let (code, out, _) = run_str(&["random", "--n", "5", "--seed", "9", "--count", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
        for line in out.lines() {
            crate::poset::parse_poset(line).unwrap();
        }
    }

    #[test]
    fn table_names_witnesses() {
        let ep = crate::fixtures::n7().extend();
        let report = classify(&ep, &Budgets::default()).unwrap();
        let t = render_table(&report);
        assert!(t.contains("r_max witness"));
        assert!(t.contains("(a3, z)"));
        assert!(t.contains("z ⋖ a3"));
    }

    #[test]
    fn check_without_input_is_input_error() {
        assert_eq!(run_str(&["check"]).0, EXIT_INPUT);
    }
}
