use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use block_functors::fusion::build_fusion;
use block_functors::characters::{SimpleModuleLabel, U};
use block_functors::group::IsoType;
use block_functors::multiplicity::{
    decompose, first_difference, functorially_equivalent, DecompositionTable,
};
use block_functors::oracle::{verify_all, GOLDEN_MAX_N};
use block_functors::report::{
    fusion_csv, fusion_rows, fusion_text, taxonomy_csv, taxonomy_rows, taxonomy_text, BlockSpec,
};
use block_functors::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(
    name = "block-functors",
    version,
    about = "Fusion systems and functor decompositions for 2-blocks with dihedral, quaternion or semidihedral defect groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the labelled conjugacy classes of subgroups of a family group.
    Taxonomy {
        /// family:n, e.g. dihedral:5
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the F-classes of subgroups and Out_F of each.
    Fusion {
        /// family:n:label, e.g. semidihedral:5:F10
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decompose the block functor into simple functors.
    Decompose {
        spec: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide functorial equivalence of two blocks (exit 0 iff equivalent).
    Equivalent {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare every table with the reference rows and run the structural oracles.
    Verify {
        #[arg(long, default_value_t = GOLDEN_MAX_N)]
        max_n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Serialize)]
struct Difference {
    #[serde(rename = "L")]
    l: IsoType,
    u: U,
    #[serde(rename = "V")]
    v: SimpleModuleLabel,
    a: usize,
    b: usize,
}

#[derive(Serialize)]
struct Verdict<'a> {
    equivalent: bool,
    first_difference: Option<Difference>,
    a: &'a DecompositionTable,
    b: &'a DecompositionTable,
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn emit_line(s: &str) {
    emit(&format!("{s}\n"));
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidSpec { .. }
            | Error::InvalidFamily(_)
            | Error::InvalidFusionLabel { .. }
            | Error::QuaternionEightDeferred
    )
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Taxonomy { spec, format } => {
            let spec = BlockSpec::parse(&spec, false)?;
            let rows = taxonomy_rows(spec.family)?;
            match format {
                Format::Json => emit_line(
                    &serde_json::to_string_pretty(&json!({ "family": spec.family.kind, "n": spec.family.n, "classes": rows }))
                        .expect("json"),
                ),
                Format::Csv => emit(&taxonomy_csv(&rows)),
                Format::Text => emit(&taxonomy_text(spec.family, &rows)),
            }
        }
        Command::Fusion { spec, format } => {
            let spec = BlockSpec::parse(&spec, true)?;
            let fs = build_fusion(spec.family, spec.label())?;
            let rows = fusion_rows(&fs)?;
            match format {
                Format::Json => emit_line(
                    &serde_json::to_string_pretty(&json!({
                        "family": spec.family.kind,
                        "n": spec.family.n,
                        "fusion": spec.label(),
                        "classes": rows,
                    }))
                    .expect("json"),
                ),
                Format::Csv => emit(&fusion_csv(&rows)),
                Format::Text => emit(&fusion_text(&fs, &rows)),
            }
        }
        Command::Decompose { spec, format } => {
            let spec = BlockSpec::parse(&spec, true)?;
            let table = decompose(&build_fusion(spec.family, spec.label())?)?;
            match format {
                Format::Json => emit_line(&table.to_json()),
                Format::Csv => emit(&table.to_csv()),
                Format::Text => emit(&table.to_text()),
            }
        }
        Command::Equivalent { a, b, format } => {
            let (sa, sb) = (BlockSpec::parse(&a, true)?, BlockSpec::parse(&b, true)?);
            let ta = decompose(&build_fusion(sa.family, sa.label())?)?;
            let tb = decompose(&build_fusion(sb.family, sb.label())?)?;
            let equivalent = functorially_equivalent(&ta, &tb);
            let diff = first_difference(&ta, &tb);
            match format {
                Format::Text => match &diff {
                    None => emit_line(&format!("{a} and {b} are functorially equivalent")),
                    Some((label, x, y)) => {
                        emit_line(&format!("{a} and {b} are not functorially equivalent: {label} has multiplicity {x} vs {y}"))
                    }
                },
                _ => {
                    let verdict = Verdict {
                        equivalent,
                        first_difference: diff.as_ref().map(|(label, x, y)| Difference {
                            l: label.l(),
                            u: label.u(),
                            v: label.module.clone(),
                            a: *x,
                            b: *y,
                        }),
                        a: &ta,
                        b: &tb,
                    };
                    emit_line(&serde_json::to_string_pretty(&verdict).expect("json"));
                }
            }
            return Ok(if equivalent { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Verify { max_n, format } => {
            let report = verify_all(max_n)?;
            match format {
                Format::Text => {
                    for g in &report.golden {
                        if g.is_clean() {
                            emit_line(&format!("{:<20} ok ({} checks)", g.spec, g.checked));
                        } else {
                            emit_line(&format!("{:<20} MISMATCH", g.spec));
                            for m in &g.mismatches {
                                emit_line(&format!("  {} {}: expected {}, got {}", m.source, m.label, m.expected, m.actual));
                            }
                            for u in &g.uncovered {
                                emit_line(&format!("  no reference row for {u}"));
                            }
                            for r in &g.unmatched_rows {
                                emit_line(&format!("  reference row selects nothing: {r}"));
                            }
                        }
                    }
                    for s in &report.structural {
                        emit_line(&format!(
                            "{:<20} {:<26} {} (reference {}){}",
                            s.group,
                            s.quantity,
                            s.engine,
                            s.reference,
                            if s.ok() { "" } else { "  MISMATCH" }
                        ));
                    }
                }
                _ => emit_line(&serde_json::to_string_pretty(&report).expect("json")),
            }
            return Ok(if report.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if usage_error(&e) { 2 } else { 1 })
        }
    }
}
