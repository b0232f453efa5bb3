//! Command-line front end for the belt-sequence toolkit.
//!
//! Subcommands: `seq` (print sequence terms), `intersect` (grid search for
//! common terms), `quartic` (fixed-parameter equation solving), `families`
//! (index families with back-solved p), `repro` (run the bundled
//! verification suite and write a report).
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 reproduction
//! mismatch.

use mosaic_belts_cli::{output, repro};

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use mosaic_belts::intersect;
use mosaic_belts::periodic::{self, FamilyCase};
use mosaic_belts::quartic::{self, QuarticCaseKind};
use mosaic_belts::{BeltKind, SchlafliMosaic};

use output::{render, Envelope, FamilyRow, Format, MatchRow, QuarticRow, SeqRow};

#[derive(Parser)]
#[command(
    name = "mosaic-belts",
    version,
    about = "Exact search toolkit for belt-counting sequences of hyperbolic mosaics"
)]
struct Cli {
    /// Output format for reports
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Worker threads (0 = automatic)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Global value bound: searches stop at 10^D
    #[arg(long, global = true, default_value_t = 60)]
    max_digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print terms of a belt sequence (a, b) or an associate sequence (A, B)
    Seq {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// a | b | A | B (capitals are the associate sequences)
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Search a (p, q) grid for terms common with the reference mosaic {4,5}
    Intersect {
        /// a | b
        #[arg(long)]
        kind: String,
        /// Inclusive range LO..HI
        #[arg(long, default_value = "4..25")]
        p_range: String,
        /// Inclusive range LO..HI
        #[arg(long, default_value = "4..18")]
        q_range: String,
    },
    /// Solve a fixed-parameter equation a2/a3/b2 = reference term
    Quartic {
        /// a2-fixed-p | a3-fixed-q | b2-fixed-p | b2-fixed-q
        #[arg(long)]
        case: String,
        /// Single fixed parameter value
        #[arg(long, conflicts_with = "fixed_range")]
        fixed_value: Option<i64>,
        /// Inclusive range LO..HI of fixed parameter values
        #[arg(long)]
        fixed_range: Option<String>,
        /// pell | scan
        #[arg(long, default_value = "pell")]
        mode: String,
        /// Value bound for the Pell route (default: per-case maximum of |f|
        /// over the scan interval)
        #[arg(long)]
        x_max: Option<String>,
        /// Inclusive scan interval LO..HI for the scan route
        #[arg(long, default_value = "-10000..10000")]
        scan_range: String,
    },
    /// Index families of a2 (q fixed) or b1 (q fixed) with back-solved p
    Families {
        /// a2 | b1
        #[arg(long)]
        case: String,
        #[arg(long)]
        q: i64,
        /// Members to materialize per family
        #[arg(long, default_value_t = 6)]
        members: usize,
    },
    /// Run the bundled verification suite and write a JSON report
    Repro {
        /// Report path (joined with MOSAIC_BELTS_OUTPUT_DIR if relative)
        #[arg(long, default_value = "repro_report.json")]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    if cli.threads > 0 {
        if let Err(err) =
            rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global()
        {
            eprintln!("error: cannot configure {} threads: {err}", cli.threads);
            return ExitCode::from(1);
        }
    }

    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Seq { p, q, kind, from, count } => cmd_seq(cli, *p, *q, kind, *from, *count),
        Command::Intersect { kind, p_range, q_range } => {
            cmd_intersect(cli, kind, p_range, q_range)
        }
        Command::Quartic { case, fixed_value, fixed_range, mode, x_max, scan_range } => {
            cmd_quartic(cli, case, *fixed_value, fixed_range.as_deref(), mode, x_max.as_deref(), scan_range)
        }
        Command::Families { case, q, members } => cmd_families(cli, case, *q, *members),
        Command::Repro { output } => cmd_repro(cli, output),
    }
}

fn parse_range(text: &str) -> Result<RangeInclusive<i64>> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("range must look like LO..HI, got {text:?}"))?;
    let lo: i64 = lo.trim().parse().with_context(|| format!("bad range start {lo:?}"))?;
    let hi: i64 = hi.trim().parse().with_context(|| format!("bad range end {hi:?}"))?;
    if lo > hi {
        bail!("empty range {text:?}");
    }
    Ok(lo..=hi)
}

fn parse_belt_kind(text: &str) -> Result<BeltKind> {
    match text {
        "a" => Ok(BeltKind::A),
        "b" => Ok(BeltKind::B),
        _ => bail!("kind must be to 'a' or 'b', got {text:?}"),
    }
}

fn parse_case_kind(text: &str) -> Result<QuarticCaseKind> {
    match text {
        "a2-fixed-p" => Ok(QuarticCaseKind::A2FixedP),
        "a3-fixed-q" => Ok(QuarticCaseKind::A3FixedQ),
        "b2-fixed-p" => Ok(QuarticCaseKind::B2FixedP),
        "b2-fixed-q" => Ok(QuarticCaseKind::B2FixedQ),
        _ => bail!(
            "case must be one of a2-fixed-p, a3-fixed-q, b2-fixed-p, b2-fixed-q; got {text:?}"
        ),
    }
}

fn value_bound(max_digits: u32) -> BigInt {
    BigInt::from(10u32).pow(max_digits)
}

fn cmd_seq(cli: &Cli, p: i64, q: i64, kind: &str, from: u64, count: u64) -> Result<ExitCode> {
    if count < 1 {
        bail!("count must be at least 1");
    }
    let mosaic = SchlafliMosaic::new(p, q)?;
    let (belt_kind, associate) = match kind {
        "a" => (BeltKind::A, false),
        "b" => (BeltKind::B, false),
        "A" => (BeltKind::A, true),
        "B" => (BeltKind::B, true),
        _ => bail!("kind must be one of a, b, A, B; got {kind:?}"),
    };
    let mut rec = mosaic.recurrence(belt_kind);
    if associate {
        rec = rec.associate();
    }

    let mut envelope = Envelope::<SeqRow>::new(format!(
        "seq --p {p} --q {q} --kind {kind} --from {from} --count {count}"
    ));
    envelope.bound("from", from).bound("count", count);
    let mut cursor = rec.cursor();
    cursor.seek(from);
    for _ in 0..count {
        envelope.entries.push(SeqRow { index: cursor.index(), value: cursor.value().to_string() });
        cursor.advance();
    }
    print!("{}", render(&envelope, cli.format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_intersect(cli: &Cli, kind: &str, p_range: &str, q_range: &str) -> Result<ExitCode> {
    let belt_kind = parse_belt_kind(kind)?;
    let p_range = parse_range(p_range)?;
    let q_range = parse_range(q_range)?;
    let bound = value_bound(cli.max_digits);

    let records = intersect::search_grid(belt_kind, p_range.clone(), q_range.clone(), &bound);

    let mut envelope = Envelope::<MatchRow>::new(format!(
        "intersect --kind {kind} --p-range {}..{} --q-range {}..{}",
        p_range.start(),
        p_range.end(),
        q_range.start(),
        q_range.end()
    ));
    envelope
        .bound("value_bound", format!("10^{}", cli.max_digits))
        .bound("p_range", format!("{}..{}", p_range.start(), p_range.end()))
        .bound("q_range", format!("{}..{}", q_range.start(), q_range.end()))
        .bound("complete_for_values_up_to_bound", true);
    envelope.entries = records.iter().map(MatchRow::from).collect();
    print!("{}", render(&envelope, cli.format));
    Ok(ExitCode::SUCCESS)
}

fn quartic_default_range(kind: QuarticCaseKind) -> RangeInclusive<i64> {
    match kind {
        QuarticCaseKind::A2FixedP => 4..=1600,
        QuarticCaseKind::A3FixedQ => 4..=10_000,
        QuarticCaseKind::B2FixedP => 4..=10_000,
        QuarticCaseKind::B2FixedQ => 4..=2_800,
    }
}

fn cmd_quartic(
    cli: &Cli,
    case: &str,
    fixed_value: Option<i64>,
    fixed_range: Option<&str>,
    mode: &str,
    x_max: Option<&str>,
    scan_range: &str,
) -> Result<ExitCode> {
    let kind = parse_case_kind(case)?;
    let range = match (fixed_value, fixed_range) {
        (Some(v), None) => v..=v,
        (None, Some(r)) => parse_range(r)?,
        (None, None) => quartic_default_range(kind),
        (Some(_), Some(_)) => unreachable!("clap forbids both"),
    };
    let scan = parse_range(scan_range)?;

    let entries = match mode {
        "pell" => {
            let bound = x_max
                .map(|s| BigInt::from_str(s).context("x-max must be a decimal integer"))
                .transpose()?;
            if let Some(b) = &bound {
                if *b < BigInt::from(1) {
                    bail!("x-max must be at least 1");
                }
            }
            quartic::sweep_via_pell(kind, range.clone(), bound.as_ref())?
        }
        "scan" => quartic::sweep_scan(kind, range.clone(), *scan.start(), *scan.end())?,
        _ => bail!("mode must be 'pell' or 'scan', got {mode:?}"),
    };

    let mut envelope = Envelope::<QuarticRow>::new(format!(
        "quartic --case {case} --mode {mode} --fixed-range {}..{}",
        range.start(),
        range.end()
    ));
    envelope.bound("fixed_range", format!("{}..{}", range.start(), range.end()));
    match mode {
        "pell" => {
            let bound_text = x_max
                .map(str::to_string)
                .unwrap_or_else(|| "max |f| over the default scan interval, per case".into());
            envelope.bound("x_max", bound_text);
        }
        _ => {
            envelope.bound("scan_range", format!("{}..{}", scan.start(), scan.end()));
        }
    }

    for (fixed, outcome) in &entries {
        for sol in &outcome.solutions {
            envelope.entries.push(QuarticRow {
                case: kind.to_string(),
                fixed: *fixed,
                free_variable: sol.free_variable.to_string(),
                value: sol.value.to_string(),
                ell: Some(sol.ell),
                rejected: None,
            });
        }
        for rej in &outcome.rejected {
            envelope.entries.push(QuarticRow {
                case: kind.to_string(),
                fixed: *fixed,
                free_variable: rej.free_variable.to_string(),
                value: rej.value.to_string(),
                ell: None,
                rejected: Some(format!("{:?}", rej.reason)),
            });
        }
    }
    print!("{}", render(&envelope, cli.format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_families(cli: &Cli, case: &str, q: i64, members: usize) -> Result<ExitCode> {
    let family_case = match case {
        "a2" => FamilyCase::A2,
        "b1" => FamilyCase::B1,
        _ => bail!("case must be 'a2' or 'b1', got {case:?}"),
    };
    if q < 5 {
        bail!("q must be at least 5");
    }
    if members < 1 {
        bail!("members must be at least 1");
    }
    let families = periodic::index_families(family_case, q)?;
    if families.is_empty() {
        let soluble: Vec<String> = (5..=25)
            .filter(|&qq| {
                periodic::index_families(family_case, qq).map(|f| !f.is_empty()).unwrap_or(false)
            })
            .map(|qq| qq.to_string())
            .collect();
        bail!(
            "the {case} equation is insoluble for q = {q}; soluble q up to 25: {{{}}}",
            soluble.join(",")
        );
    }

    let mut envelope = Envelope::<FamilyRow>::new(format!(
        "families --case {case} --q {q} --members {members}"
    ));
    envelope.bound("members_per_family", members as u64);
    for family in &families {
        for member in periodic::family_verify(family, members) {
            envelope.entries.push(FamilyRow {
                case: family.case.to_string(),
                q: family.q,
                offset: family.offset,
                modulus: family.modulus,
                ell: member.ell,
                value: member.value.to_string(),
                p: member.p.to_string(),
                reference_mosaic: member.reference_mosaic,
            });
        }
    }
    print!("{}", render(&envelope, cli.format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_repro(cli: &Cli, output: &PathBuf) -> Result<ExitCode> {
    let reports = repro::run_all();

    let mut envelope = Envelope::<repro::ClaimReport>::new("repro");
    envelope.bound("value_bound", format!("10^{}", cli.max_digits)).bound(
        "claims",
        reports.len() as u64,
    );
    envelope.entries = reports;

    let path = match std::env::var_os("MOSAIC_BELTS_OUTPUT_DIR") {
        Some(dir) if output.is_relative() => PathBuf::from(dir).join(output),
        _ => output.clone(),
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("cannot create {}", parent.display()))?;
        }
    }
    std::fs::write(&path, envelope.to_json())
        .with_context(|| format!("cannot write {}", path.display()))?;

    print!("{}", render(&envelope, cli.format));
    let mismatches =
        envelope.entries.iter().filter(|c| c.status == repro::ClaimStatus::Mismatch).count();
    if cli.format == Format::Text {
        println!(
            "{} of {} claims match; report written to {}",
            envelope.entries.len() - mismatches,
            envelope.entries.len(),
            path.display()
        );
    }
    Ok(if mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
}
