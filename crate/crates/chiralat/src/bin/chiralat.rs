//! Command-line surface: run the wall algorithm, emit DOT and JSON
//! artifacts, and reproduce the frozen reference tables and verdicts.

use chiralat::chirality::{classify_chirality, ClassifyOptions, Verdict, Witness};
use chiralat::coxeter::coxeter_graph;
use chiralat::lattice::{build_lattice, resolve_lattice_spec, Lattice, LatticeSpec};
use chiralat::presets::{diff_against_reference, labels_for, preset_options, reference_walls};
use chiralat::vinberg::{vinberg_run, RunDocument, TerminationStatus};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "chiralat", version, about = "Fundamental polyhedra of hyperbolic reflection lattices and chirality verdicts", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the wall-finding algorithm and write the run document.
    Vinberg(VinbergArgs),
    /// Render the Coxeter graph of a run document as DOT.
    Coxeter(CoxeterArgs),
    /// Decide deformation chirality of a lattice.
    Classify(ClassifyArgs),
    /// Recompute the frozen reference tables and verdicts and diff.
    Tables(TablesArgs),
}

#[derive(Args)]
struct VinbergArgs {
    /// Lattice: preset name ("U+A2+2E8"), inline JSON, or a JSON file path.
    #[arg(long, allow_hyphen_values = true)]
    lattice: String,
    /// Highest level to scan before giving up.
    #[arg(long)]
    max_level: Option<i64>,
    /// Output path for the run document (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoxeterArgs {
    /// Path to a run document produced by the vinberg subcommand.
    #[arg(long)]
    run: PathBuf,
    /// Output path for the DOT file (stdout if omitted).
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Lattice: preset name, inline JSON, or a JSON file path.
    #[arg(long, allow_hyphen_values = true)]
    lattice: String,
    /// Spanning-subset strategy for the symmetry search; both currently use
    /// the designated 2-root walls.
    #[arg(long, default_value = "preset", value_parser = ["preset", "auto"])]
    subset: String,
    /// Output path for the verdict document (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// Which fixture to check: T1..T7, "verdicts", or "all".
    #[arg(long, default_value = "all")]
    which: String,
}

#[derive(serde::Serialize)]
struct VerdictDocument {
    lattice: LatticeSpec,
    verdict: Verdict,
    reason: String,
    witness: Option<Witness>,
    vinberg_run: Option<RunDocument>,
}

fn load_lattice(input: &str) -> Result<Lattice, String> {
    let text = if std::path::Path::new(input).is_file() {
        std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?
    } else {
        input.to_string()
    };
    let spec = resolve_lattice_spec(&text).map_err(|e| e.to_string())?;
    build_lattice(&spec).map_err(|e| e.to_string())
}

fn emit(out: &Option<PathBuf>, payload: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, payload).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

fn cmd_vinberg(args: &VinbergArgs) -> Result<ExitCode, String> {
    let lat = load_lattice(&args.lattice)?;
    let mut opts = preset_options(&lat);
    if args.max_level.is_some() {
        opts.max_level = args.max_level;
    }
    let run = vinberg_run(&lat, &opts).map_err(|e| e.to_string())?;
    let labels = labels_for(&lat, &run);
    let doc = RunDocument::from_run(&run, &labels);
    let payload = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
    emit(&args.out, &payload)?;
    Ok(match run.termination.status {
        TerminationStatus::Terminated => ExitCode::SUCCESS,
        _ => ExitCode::from(2),
    })
}

fn cmd_coxeter(args: &CoxeterArgs) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(&args.run)
        .map_err(|e| format!("{}: {e}", args.run.display()))?;
    let doc: RunDocument = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if doc.roots.is_empty() {
        return Err("run document contains no walls".into());
    }
    let lat = build_lattice(&doc.lattice).map_err(|e| e.to_string())?;
    let vecs: Vec<Vec<chiralat::linalg::Int>> = doc
        .roots
        .iter()
        .map(|r| r.coords.iter().map(|&x| chiralat::linalg::Int::from(x)).collect())
        .collect();
    let labels: Vec<String> = doc.roots.iter().map(|r| r.label.clone()).collect();
    let graph = coxeter_graph(&lat, &vecs, &labels).map_err(|e| e.to_string())?;
    emit(&args.dot, &graph.to_dot())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(args: &ClassifyArgs) -> Result<ExitCode, String> {
    let lat = load_lattice(&args.lattice)?;
    let outcome = classify_chirality(&lat, &ClassifyOptions::default());
    let vinberg_run = outcome.run.as_ref().map(|run| {
        let labels = labels_for(&lat, run);
        RunDocument::from_run(run, &labels)
    });
    let doc = VerdictDocument {
        lattice: lat.spec.clone(),
        verdict: outcome.verdict,
        reason: outcome.reason,
        witness: outcome.witness,
        vinberg_run,
    };
    let payload = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
    emit(&args.out, &payload)?;
    Ok(match doc.verdict {
        Verdict::Chiral | Verdict::Achiral => ExitCode::SUCCESS,
        Verdict::Unknown => ExitCode::from(3),
    })
}

const TABLES: [(&str, &str); 7] = [
    ("T1", "U+A2"),
    ("T2", "U+A2+E8"),
    ("T3", "U+A2+2E8"),
    ("T4", "-A1+A2"),
    ("T5", "U+A2+A1"),
    ("T6", "-A1+A2+E8"),
    ("T7", "U+A2+A1+E8"),
];

const VERDICTS: [(&str, Verdict); 9] = [
    ("U+A2", Verdict::Chiral),
    ("U+A2+E8", Verdict::Chiral),
    ("U+A2+2E8", Verdict::Achiral),
    ("-A1+A2", Verdict::Chiral),
    ("U+A2+A1", Verdict::Chiral),
    ("-A1+A2+E8", Verdict::Chiral),
    ("U+A2+A1+E8", Verdict::Achiral),
    ("-A1+A2+2E8", Verdict::Achiral),
    ("U+A2+2E8+A1", Verdict::Achiral),
];

fn check_table(id: &str, name: &str) -> Result<bool, String> {
    let lat = Lattice::from_name(name).map_err(|e| e.to_string())?;
    let run = vinberg_run(&lat, &preset_options(&lat)).map_err(|e| e.to_string())?;
    let reference = reference_walls(name).expect("table lattices have references");
    let mut ok = run.termination.status == TerminationStatus::Terminated;
    let mut detail = String::new();
    if !ok {
        detail = "run did not terminate".into();
    } else if let Some(diff) = diff_against_reference(&run, &reference) {
        ok = false;
        detail = diff;
    }
    if ok {
        println!(
            "{id} {name}: match ({} reference walls, {} computed)",
            reference.len(),
            run.roots.len()
        );
    } else {
        println!("{id} {name}: MISMATCH ({detail})");
    }
    Ok(ok)
}

fn check_verdicts() -> Result<bool, String> {
    let mut all_ok = true;
    for (name, expected) in VERDICTS {
        let lat = Lattice::from_name(name).map_err(|e| e.to_string())?;
        let outcome = classify_chirality(&lat, &ClassifyOptions::default());
        let ok = outcome.verdict == expected;
        all_ok &= ok;
        println!(
            "verdict {name}: {:?} (expected {:?}){}",
            outcome.verdict,
            expected,
            if ok { "" } else { " MISMATCH" }
        );
    }
    Ok(all_ok)
}

fn cmd_tables(args: &TablesArgs) -> Result<ExitCode, String> {
    let mut ok = true;
    match args.which.as_str() {
        "all" => {
            for (id, name) in TABLES {
                ok &= check_table(id, name)?;
            }
            ok &= check_verdicts()?;
        }
        "verdicts" => ok = check_verdicts()?,
        which => {
            let Some((id, name)) = TABLES.iter().find(|(id, _)| *id == which) else {
                return Err(format!(
                    "unknown fixture {which:?}; expected T1..T7, \"verdicts\", or \"all\""
                ));
            };
            ok = check_table(id, name)?;
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Vinberg(args) => cmd_vinberg(args),
        Command::Coxeter(args) => cmd_coxeter(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Tables(args) => cmd_tables(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
