//! `vipclass`: analyze datum files, classify threefolds isogenous to a
//! product, and print curve characters.

mod report;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vipclass::chevalley_weil::{curve_character, CharacterMultiset};
use vipclass::classification::{classify, summarize, Convention, FamilyRecord, SearchSpec, SummaryView};
use vipclass::covering::AlgebraicDatum;
use vipclass::datum_file::parse_datum;
use vipclass::maps::reasons;

#[derive(Parser)]
#[command(name = "vipclass", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants and m-canonical maps of the datum in a file
    Analyze {
        path: PathBuf,
        /// a value, a list `1,2,4` or an inclusive range `1..5`
        #[arg(long, default_value = "1..5", value_parser = parse_m_range)]
        m: MRange,
        /// include the degrees of every eigensheaf
        #[arg(long)]
        eigensheaves: bool,
    },
    /// Classify threefolds with given χ(O) and bounded group order
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long)]
        max_order: u32,
        #[arg(long, value_enum, default_value_t = Kernels::Allow)]
        kernels: Kernels,
        #[arg(long, default_value = "1..2", value_parser = parse_m_range)]
        m: MRange,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = View::Criteria)]
        view: View,
        #[arg(long, value_enum)]
        filter: Option<Filter>,
        #[arg(long, value_enum, default_value_t = ConventionArg::Table)]
        convention: ConventionArg,
    },
    /// The character of H⁰(C_i, mK) as a multiset
    Character {
        path: PathBuf,
        /// 1-based curve index
        #[arg(long)]
        curve: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kernels {
    Allow,
    Trivial,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum View {
    Criteria,
    Rules,
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    /// families whose canonical map is birational by the separation criteria
    BirationalCanonical,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Table,
    Minimal,
}

#[derive(Clone)]
struct MRange(Vec<u32>);

fn parse_m_range(s: &str) -> Result<MRange, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("not a positive integer: {t:?}"));
    let out: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if out.is_empty() || out.contains(&0) {
        return Err(format!("{s:?} is not a nonempty range of m ≥ 1"));
    }
    let mut out = out;
    out.sort_unstable();
    out.dedup();
    Ok(MRange(out))
}

fn read_datum(path: &Path) -> anyhow::Result<AlgebraicDatum> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_datum(&text).with_context(|| format!("{}", path.display()))
}

fn emit_json(value: &impl Serialize, out: &mut dyn Write) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct CharacterReport<'a> {
    curve: usize,
    m: u32,
    total: u64,
    #[serde(flatten)]
    character: &'a CharacterMultiset,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Analyze { path, m, eigensheaves } => {
            let d = read_datum(&path)?;
            let r = report::analyze(&d, &m.0, eigensheaves)?;
            let mut out = output(None)?;
            emit_json(&r, &mut out)?;
            out.flush()?;
        }
        Command::Classify {
            chi,
            max_order,
            kernels,
            m,
            format,
            out,
            view,
            filter,
            convention,
        } => {
            let m = m.0;
            if filter.is_some() && !m.contains(&1) {
                bail!("--filter birational-canonical needs m = 1 in --m");
            }
            let spec = SearchSpec::new(chi, max_order, matches!(kernels, Kernels::Allow))
                .with_m_range(m)
                .with_convention(match convention {
                    ConventionArg::Table => Convention::Table,
                    ConventionArg::Minimal => Convention::Minimal,
                });
            let mut records = classify(&spec)?;
            if let Some(Filter::BirationalCanonical) = filter {
                records.retain(canonical_by_criteria);
            }
            let view = match view {
                View::Criteria => SummaryView::Criteria,
                View::Rules => SummaryView::Rules,
            };
            let rows = summarize(&records, view);
            let mut w = output(out.as_deref())?;
            match format {
                Format::Csv => report::write_csv(&rows, &mut w)?,
                Format::Json => emit_json(
                    &report::ClassifyReport {
                        search: &spec,
                        families: records.len(),
                        rows: &rows,
                        records: &records,
                    },
                    &mut w,
                )?,
            }
            w.flush()?;
            let non_minimal = records.iter().filter(|r| !r.minimal_realization).count();
            eprintln!("{} families in {} rows", records.len(), rows.len());
            if non_minimal > 0 {
                eprintln!("{non_minimal} of them are not minimal realizations");
            }
        }
        Command::Character { path, curve, m } => {
            let d = read_datum(&path)?;
            if curve == 0 || curve > d.n() {
                bail!(vipclass::Error::Scope(format!(
                    "curve {curve} is out of range: the datum has {} curves",
                    d.n()
                )));
            }
            if m == 0 {
                bail!(vipclass::Error::Scope("m must be at least 1".into()));
            }
            let c = curve_character(m, &d.vectors()[curve - 1])?;
            let mut out = output(None)?;
            emit_json(
                &CharacterReport {
                    curve,
                    m,
                    total: c.total(),
                    character: &c,
                },
                &mut out,
            )?;
            out.flush()?;
        }
    }
    Ok(())
}

fn canonical_by_criteria(r: &FamilyRecord) -> bool {
    r.analyses
        .get(&1)
        .is_some_and(|a| a.status.reason() == Some(reasons::SEPARATION_CRITERIA) && a.status.is_birational())
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("VIPCLASS_THREADS") {
        let n: usize = v.parse().with_context(|| format!("VIPCLASS_THREADS={v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e
                .chain()
                .any(|c| c.downcast_ref::<vipclass::Error>().is_some_and(vipclass::Error::is_internal));
            ExitCode::from(if internal { 2 } else { 1 })
        }
    }
}
