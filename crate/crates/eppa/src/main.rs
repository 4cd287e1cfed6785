//! `eppa extend | verify | enumerate`.
//!
//! Exit codes: 0 success, 1 certificate failure, 2 input not free,
//! 3 cap or enumeration bound hit, 4 unreadable or mismatched input.

mod format;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eppa_core::structures::BinaryStructure;
use eppa_core::verify::{OracleInstance, OracleOutcome, OracleStructure};
use eppa_core::{
    brute_force_extension, enumerate_tournaments, extend_colored, extend_digraph, verify_extension, PipelineConfig,
    PipelineError, Tournament,
};

use format::{Instance, ParsedResult};

/// Node budget for `--oracle-max-size`.
const ORACLE_BUDGET: u64 = 50_000_000;

#[derive(Parser)]
#[command(name = "eppa", version, about = "Extend partial automorphisms of graphs and digraphs with forbidden substructures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an extension and write the result file.
    Extend {
        instance: PathBuf,
        /// Result file; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        cap_group: usize,
        #[arg(long, default_value_t = 100_000)]
        cap_structure: usize,
        /// Also search exhaustively for an extension with at most N points.
        #[arg(long, value_name = "N")]
        oracle_max_size: Option<usize>,
        /// Require uniform palette sizes and pair coverage by the maps.
        #[arg(long)]
        strict_ledger: bool,
        /// Print per-level statistics to standard error.
        #[arg(long)]
        emit_stats: bool,
        /// Write a DOT dump of the extension.
        #[arg(long, value_name = "PATH")]
        emit_dot: Option<PathBuf>,
    },
    /// Check a result file against its instance.
    Verify { instance: PathBuf, result: PathBuf },
    /// List isomorphism types.
    Enumerate { kind: EnumerateKind, k: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateKind {
    Tournaments,
}

/// A failed command: exit code and message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<format::FormatError> for Failure {
    fn from(e: format::FormatError) -> Self {
        Failure::new(4, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Extend {
            instance,
            output,
            cap_group,
            cap_structure,
            oracle_max_size,
            strict_ledger,
            emit_stats,
            emit_dot,
        } => {
            let config = PipelineConfig {
                cap_group,
                cap_structure,
                strict_ledger,
                ..PipelineConfig::default()
            };
            let flags = ExtendFlags {
                output,
                oracle_max_size,
                emit_stats,
                emit_dot,
            };
            cmd_extend(&instance, &config, &flags)
        }
        Command::Verify { instance, result } => cmd_verify(&instance, &result),
        Command::Enumerate { kind, k } => cmd_enumerate(kind, k),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("eppa: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(4, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(4, format!("{}: {e}", path.display())))
}

fn exit_code(e: &PipelineError) -> u8 {
    match e {
        PipelineError::NotFree(_) => 2,
        PipelineError::EnumerationBound { .. } => 3,
        e if e.is_cap_abort() => 3,
        PipelineError::Invalid(_) | PipelineError::Ledger(_) => 4,
        // internal audits: the construction could not be certified
        _ => 1,
    }
}

struct ExtendFlags {
    output: Option<PathBuf>,
    oracle_max_size: Option<usize>,
    emit_stats: bool,
    emit_dot: Option<PathBuf>,
}

fn cmd_extend(path: &Path, config: &PipelineConfig, flags: &ExtendFlags) -> Result<(), Failure> {
    let file = path.display().to_string();
    let instance = format::parse_instance(&file, &read(path)?)?;
    let oracle = flags.oracle_max_size.map(|cap| run_oracle(&instance, cap));
    let (mut result, certificate, stats, dot) = match &instance {
        Instance::Graph {
            a,
            maps,
            m,
            critical,
            designated,
        } => {
            let r = extend_colored(a, maps, *m, critical, designated, config).map_err(|e| Failure::new(exit_code(&e), e.to_string()))?;
            (format::graph_result(&r.structure, &r.automorphisms), r.certificate, r.stats, format::dot(&r.structure))
        }
        Instance::Digraph { a, maps, forbidden } => {
            let r = extend_digraph(a, maps, forbidden, config).map_err(|e| Failure::new(exit_code(&e), e.to_string()))?;
            (format::digraph_result(&r.structure, &r.automorphisms), r.certificate, r.stats, format::dot(&r.structure))
        }
    };
    result.certificate = format::certificate_records(&certificate);
    result.stats = stats.iter().map(format::StatsRecord::from).collect();
    result.oracle = oracle;
    if flags.emit_stats {
        for s in &result.stats {
            eprintln!("{}", stats_line(s));
        }
        if let Some(o) = &result.oracle {
            eprintln!("oracle cap={} {}{}", o.size_cap, o.outcome, o.size.map(|n| format!(" size={n}")).unwrap_or_default());
        }
    }
    let text = format::write_result(&result);
    match &flags.output {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &flags.emit_dot {
        write(p, &dot)?;
    }
    if certificate.passed() {
        Ok(())
    } else {
        Err(Failure::new(1, format!("certificate failed:\n{certificate}")))
    }
}

fn stats_line(s: &format::StatsRecord) -> String {
    let mut line = format!(
        "level {} {} bound={} base={} colors={} scope={} carrier={} classes={}",
        s.level, s.kind, s.bound, s.base_len, s.color_count, s.scope_len, s.carrier_len, s.classes_checked
    );
    if s.new_colors > 0 {
        line.push_str(&format!(" new_colors={}", s.new_colors));
    }
    if let Some(g) = s.group_order {
        line.push_str(&format!(" group={g}"));
    }
    if let Some(q) = s.quotient_len {
        line.push_str(&format!(" points={q}"));
    }
    line
}

fn run_oracle(instance: &Instance, cap: usize) -> format::OracleRecord {
    let a = match instance {
        Instance::Graph { a, .. } => OracleInstance::Graph(a),
        Instance::Digraph { a, .. } => OracleInstance::Digraph(a),
    };
    let (outcome, size) = match brute_force_extension(a, instance.maps(), &instance.constraint(), cap, ORACLE_BUDGET) {
        Ok(OracleOutcome::Found(r)) => {
            let n = match &r.structure {
                OracleStructure::Graph(g) => g.len(),
                OracleStructure::Digraph(d) => d.len(),
            };
            ("found", Some(n))
        }
        Ok(OracleOutcome::NoneWithinCap) => ("none_within_cap", None),
        Err(_) => ("budget_exhausted", None),
    };
    format::OracleRecord {
        size_cap: cap,
        outcome: outcome.to_string(),
        size,
    }
}

fn cmd_verify(instance_path: &Path, result_path: &Path) -> Result<(), Failure> {
    let instance = format::parse_instance(&instance_path.display().to_string(), &read(instance_path)?)?;
    let result_file = result_path.display().to_string();
    let result = format::parse_result(&result_file, &read(result_path)?)?;
    let mismatch = |msg: String| Failure::new(4, format!("{result_file}: {msg}"));
    let report = match (&instance, &result) {
        (Instance::Graph { a, maps, designated, .. }, ParsedResult::Graph(b, autos)) => {
            check_shape(a, b, maps.len(), autos.len()).map_err(mismatch)?;
            let same_palettes = a.palettes().iter().map(|p| p.range()).eq(b.palettes().iter().map(|p| p.range()));
            if a.color_names() != b.color_names() || !same_palettes {
                return Err(mismatch("palettes differ from the instance".into()));
            }
            let designated = (a.palette_count() > 0).then_some(designated);
            verify_extension(a, b, autos, maps, &instance.constraint(), designated)
        }
        (Instance::Digraph { a, maps, .. }, ParsedResult::Digraph(b, autos)) => {
            check_shape(a, b, maps.len(), autos.len()).map_err(mismatch)?;
            if a.color_names() != b.color_names() {
                return Err(mismatch("colours differ from the instance".into()));
            }
            verify_extension(a, b, autos, maps, &instance.constraint(), None)
        }
        _ => return Err(mismatch("kind differs from the instance".into())),
    };
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<_> = report.failures().map(|c| c.name).collect();
        Err(Failure::new(1, format!("certificate failed: {}", failed.join(", "))))
    }
}

/// Every point of `A` must appear in `B`, with one automorphism per map.
fn check_shape<S: BinaryStructure + ?Sized>(a: &S, b: &S, maps: usize, autos: usize) -> Result<(), String> {
    let names = b.names();
    let missing: Vec<String> = a.names().into_iter().filter(|v| !names.contains(v)).map(|v| v.0).collect();
    if !missing.is_empty() {
        return Err(format!("vertices of the instance missing from the result: {}", missing.join(", ")));
    }
    if maps != autos {
        return Err(format!("{autos} automorphisms for {maps} partial maps"));
    }
    Ok(())
}

fn cmd_enumerate(kind: EnumerateKind, k: usize) -> Result<(), Failure> {
    match kind {
        EnumerateKind::Tournaments => {
            let list = enumerate_tournaments(k).map_err(|e| Failure::new(exit_code(&e), e.to_string()))?;
            println!("tournaments on {k} vertices: {}", list.len());
            for t in &list {
                println!("{}", tournament_line(t));
            }
            Ok(())
        }
    }
}

/// `code: arcs`, where bit `i` of the code reverses the `i`-th pair.
fn tournament_line(t: &Tournament) -> String {
    let n = t.len();
    let mut code = 0u64;
    let mut bit = 0;
    let mut arcs = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if t.beats(x, y) {
                arcs.push(format!("{x}->{y}"));
            } else {
                code |= 1 << bit;
                arcs.push(format!("{y}->{x}"));
            }
            bit += 1;
        }
    }
    format!("{code}: {}", arcs.join(" "))
}
