use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use shirshov::formats::{
    bounds_row, excision_jsonl, excision_steps, height_factors, selector_rows, to_csv, PowerJson, SearchGridRow,
    SearchReportJson, TailWitnessJson, WitnessJson,
};
use shirshov::golden::{fixture_name, write_or_verify};
use shirshov::harness::{self, Audit, HarnessConfig, Mutation};
use shirshov::{parallel, parse_word, Error};
use shirshov_core::bounds::LadderBase;
use shirshov_core::dilworth::{build_tail_poset, chain_decompose, psi, TailPosetBuild};
use shirshov_core::divisibility::{is_n_divisible, is_tail_n_divisible, reducibility, ReducibilityVerdict};
use shirshov_core::height::{essential_fragments, excise, fragment_statistics, word_height};
use shirshov_core::periodicity::find_power;
use shirshov_core::search::{count_avoiders, multilinear_count, multilinear_count_brute, multilinear_count_shapes};
use shirshov_core::search::{AvoiderQuery, Gate};
use shirshov_core::CoreError;

#[derive(Parser)]
#[command(name = "shirshov", version, about = "n-divisibility, powers, chain colorings, heights and bounds for words")]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct WordArgs {
    /// Letters `a..z`, or dotted ranks such as `3.1.2`.
    #[arg(long)]
    word: String,
    /// Alphabet size; defaults to the largest letter in the word.
    #[arg(long)]
    alphabet: Option<usize>,
}

#[derive(Args)]
struct GoldenArgs {
    /// Write the output as a fixture into DIR, or compare against the one
    /// already there.
    #[arg(long, value_name = "DIR")]
    golden: Option<PathBuf>,
    /// Overwrite an existing fixture.
    #[arg(long, requires = "golden")]
    bless: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide n-divisibility and print a witness.
    CheckNdiv {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        n: usize,
        /// Use the tail-sense notion.
        #[arg(long)]
        tail: bool,
    },
    /// Find the leftmost shortest-root d-th power.
    CheckPower {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        d: usize,
    },
    /// n-divisible, contains a d-th power, or neither.
    Reduce {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Chain coloring of the tail poset and its selector trace.
    Chains {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        d: usize,
        /// Tail length of the selector tuples.
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[command(flatten)]
        golden: GoldenArgs,
    },
    /// Height decomposition and essential fragments.
    Height {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        n: usize,
    },
    /// Excise long periodic fragments, one JSON line per step.
    Excise {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 256)]
        max_steps: usize,
        /// Print the fragment statistics instead of the steps.
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        golden: GoldenArgs,
    },
    /// Exact and display values of the length and height bounds.
    Bounds {
        /// Degree, a value or an inclusive range `a..b`.
        #[arg(long)]
        n: String,
        /// Exponent (value or range); defaults to d = n.
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        l: u64,
        #[arg(long, value_enum, default_value_t = Base::Three)]
        base: Base,
    },
    /// Longest words avoiding n-divisibility and d-th powers.
    Search {
        /// Values or inclusive ranges `a..b`; every combination is searched.
        #[arg(long)]
        n: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        l: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = parallel::DEFAULT_SPLIT_DEPTH)]
        split_depth: usize,
        /// Also prune tail-sense n-divisible words.
        #[arg(long)]
        tail_gate: bool,
        /// Record wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Counting problems.
    #[command(subcommand)]
    Count(CountCommand),
    /// Run the randomized and exhaustive audit batches.
    Audit {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Applicable random instances per audit.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        /// Restrict to these audits (repeatable).
        #[arg(long = "only", value_enum)]
        only: Vec<Audit>,
        #[arg(long)]
        skip_exhaustive: bool,
        #[arg(long, value_enum)]
        mutate: Option<Mutation>,
        /// Write failing instances into DIR.
        #[arg(long, value_name = "DIR")]
        persist: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CountCommand {
    /// Permutations of 1..k with no decreasing subsequence of length n.
    Perms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Avoiders of every length up to max-len.
    Avoiders {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        max_len: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Brute,
    Shapes,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// Exit 1: an audit or fixture check found a violation.
    Violation(anyhow::Error),
    /// Exit 2: bad flags or input.
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(inner) if !inner.is_usage() => Failure::Violation(e),
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = run(&cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match status {
        Ok(code) => code,
        Err(Failure::Violation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn json_line(out: &mut String, value: &impl Serialize) -> Result<(), Failure> {
    out.push_str(&serde_json::to_string(value).map_err(Error::from)?);
    out.push('\n');
    Ok(())
}

fn range(text: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let parse = |s: &str| s.trim().parse::<usize>().with_context(|| format!("bad number {s:?}"));
    let r = match text.split_once("..") {
        Some((a, b)) => parse(a)?..=parse(b.trim_start_matches('='))?,
        None => {
            let v = parse(text)?;
            v..=v
        }
    };
    if r.is_empty() {
        bail!("empty range {text:?}");
    }
    Ok(r)
}

fn gate_or_violation(out: &str, golden: &GoldenArgs, parts: &[&str], ext: &str) -> Result<(), Failure> {
    if let Some(dir) = &golden.golden {
        let name = fixture_name(parts, ext);
        let outcome = write_or_verify(dir, &name, out, golden.bless)?;
        eprintln!("{name}: {outcome:?}");
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut String) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::CheckNdiv { word, n, tail } => {
            let w = parse_word(&word.word, word.alphabet)?;
            let value = if *tail {
                let found = is_tail_n_divisible(&w, *n)?;
                json!({
                    "word": w.to_text(), "alphabet": w.alphabet().size(), "n": n, "tail": true,
                    "divisible": found.is_some(), "witness": found.as_ref().map(TailWitnessJson::from),
                })
            } else {
                let found = is_n_divisible(&w, *n)?;
                json!({
                    "word": w.to_text(), "alphabet": w.alphabet().size(), "n": n, "tail": false,
                    "divisible": found.is_some(), "witness": found.as_ref().map(WitnessJson::from),
                })
            };
            json_line(out, &value)?;
        }
        Command::CheckPower { word, d } => {
            let w = parse_word(&word.word, word.alphabet)?;
            let power = find_power(&w, *d)?;
            json_line(out, &json!({ "word": w.to_text(), "d": d, "power": power.as_ref().map(PowerJson::from) }))?;
        }
        Command::Reduce { word, n, d } => {
            let w = parse_word(&word.word, word.alphabet)?;
            let value = match reducibility(&w, *n, *d)? {
                ReducibilityVerdict::NDivisible(wit) => {
                    json!({ "word": w.to_text(), "verdict": "n-divisible", "witness": WitnessJson::from(&wit) })
                }
                ReducibilityVerdict::ContainsPower(p) => {
                    json!({ "word": w.to_text(), "verdict": "power", "power": PowerJson::from(&p) })
                }
                ReducibilityVerdict::Neither => json!({ "word": w.to_text(), "verdict": "irreducible" }),
            };
            json_line(out, &value)?;
        }
        Command::Chains { word, d, p, golden } => {
            let w = parse_word(&word.word, word.alphabet)?;
            let poset = match build_tail_poset(&w, *d)? {
                TailPosetBuild::Poset(poset) => poset,
                TailPosetBuild::Power(power) => {
                    json_line(out, &json!({ "word": w.to_text(), "d": d, "power": PowerJson::from(&power) }))?;
                    return Ok(ExitCode::SUCCESS);
                }
            };
            let dec = chain_decompose(&poset)?;
            if cli.format == Format::Csv {
                out.push_str(&to_csv(&selector_rows(&poset, &dec, *p)?)?);
            } else {
                let value = json!({
                    "word": w.to_text(), "d": d, "p": p,
                    "region": poset.starts().len(),
                    "chain_count": dec.chain_count,
                    "colors": dec.color,
                    "chains": dec.chains,
                    "antichain": dec.antichain,
                    "psi": psi(&poset, &dec, *p, None)?,
                });
                json_line(out, &value)?;
            }
            let (d, p) = (format!("d{d}"), format!("p{p}"));
            let ext = if cli.format == Format::Csv { "csv" } else { "json" };
            gate_or_violation(out, golden, &["selector", &w.to_text(), &d, &p], ext)?;
        }
        Command::Height { word, n } => {
            let w = parse_word(&word.word, word.alphabet)?;
            let h = word_height(&w, *n)?;
            let frags = essential_fragments(&w, *n)?;
            let fragments: Vec<_> = frags
                .fragments
                .iter()
                .map(|f| json!({ "start": f.start, "root": f.root.to_text(), "exponent": f.exponent }))
                .collect();
            json_line(
                out,
                &json!({
                    "word": w.to_text(), "n": n, "height": h.height(), "factors": height_factors(&h),
                    "essential": { "count": frags.count(), "fragments": fragments, "separators": frags.separators },
                }),
            )?;
        }
        Command::Excise { word, n, max_steps, stats, golden } => {
            let w = parse_word(&word.word, word.alphabet)?;
            let trace = excise(&w, *n, *max_steps)?;
            if *stats {
                let s = fragment_statistics(&trace, &w)?;
                json_line(
                    out,
                    &json!({
                        "word": w.to_text(), "n": n, "steps": s.steps, "t": s.t, "regular": s.regular,
                        "n_i": s.n_i, "histogram": s.histogram, "monoliths": s.monoliths,
                        "weighted_sum": s.weighted_sum, "piece_count_holds": s.piece_count_holds,
                        "piece_weight_holds": s.piece_weight_holds,
                        "periodic_pieces": {
                            "pieces": s.periodic_pieces.pieces, "factors": s.periodic_pieces.factors,
                            "unformed": s.periodic_pieces.unformed, "disjoint": s.periodic_pieces.disjoint,
                            "exponents_ok": s.periodic_pieces.exponents_ok,
                        },
                        "essential_count": s.essential_count, "qualifying": s.qualifying,
                        "fragment_link_holds": s.monotone_link,
                    }),
                )?;
            } else if cli.format == Format::Csv {
                out.push_str(&to_csv(&excision_steps(&trace))?);
            } else {
                out.push_str(&excision_jsonl(&trace)?);
            }
            let n = format!("n{n}");
            let ext = match (stats, cli.format) {
                (true, _) => "json",
                (false, Format::Csv) => "csv",
                (false, Format::Json) => "jsonl",
            };
            gate_or_violation(out, golden, &["excision", &w.to_text(), &n], ext)?;
        }
        Command::Bounds { n, d, l, base } => {
            let base = match base {
                Base::Two => LadderBase::Two,
                Base::Three => LadderBase::Three,
            };
            let ns = range(n)?;
            let ds = d.as_deref().map(range).transpose()?;
            let mut rows = Vec::new();
            for n in ns {
                let ds = ds.clone().unwrap_or(n..=n);
                for d in ds {
                    rows.push(bounds_row(n as u64, d as u64, *l, base)?);
                }
            }
            match cli.format {
                Format::Csv => out.push_str(&to_csv(&rows)?),
                Format::Json => json_line(out, &rows)?,
            }
        }
        Command::Search { n, d, l, max_len, workers, split_depth, tail_gate, timing } => {
            let gate = if *tail_gate { Gate::Tail } else { Gate::Ordinary };
            let mut reports = Vec::new();
            for n in range(n)? {
                for d in range(d)? {
                    for l in range(l)? {
                        let q = AvoiderQuery::new(n, d, l, *max_len)?.with_gate(gate);
                        let start = Instant::now();
                        let report = parallel::search(&q, *workers, *split_depth)?;
                        let seconds = timing.then(|| start.elapsed().as_secs_f64());
                        reports.push(SearchReportJson::new(&q, &report, seconds)?);
                    }
                }
            }
            match (cli.format, reports.as_slice()) {
                (Format::Csv, _) => {
                    let rows: Vec<SearchGridRow> = reports.iter().map(SearchGridRow::from).collect();
                    out.push_str(&to_csv(&rows)?);
                }
                (Format::Json, [single]) => json_line(out, single)?,
                (Format::Json, many) => json_line(out, &many)?,
            }
        }
        Command::Count(CountCommand::Perms { n, k, method }) => {
            let (count, used) = match method {
                Method::Auto => (multilinear_count(*n, *k)?, "auto"),
                Method::Brute => (multilinear_count_brute(*n, *k)?, "brute"),
                Method::Shapes => (multilinear_count_shapes(*n, *k)?, "shapes"),
            };
            let row = json!({ "n": n, "k": k, "method": used, "count": count.to_string() });
            match cli.format {
                Format::Csv => out.push_str(&format!("n,k,method,count\n{n},{k},{used},{count}\n")),
                Format::Json => json_line(out, &row)?,
            }
        }
        Command::Count(CountCommand::Avoiders { n, d, l, max_len }) => {
            let counts = count_avoiders(&AvoiderQuery::new(*n, *d, *l, *max_len)?)?;
            match cli.format {
                Format::Csv => {
                    out.push_str("length,count\n");
                    for (i, c) in counts.iter().enumerate() {
                        out.push_str(&format!("{},{c}\n", i + 1));
                    }
                }
                Format::Json => json_line(out, &json!({ "n": n, "d": d, "l": l, "counts": counts }))?,
            }
        }
        Command::Audit { seed, instances, only, skip_exhaustive, mutate, persist } => {
            let config = HarnessConfig {
                seed: *seed,
                instances: *instances,
                audits: if only.is_empty() { Audit::ALL.to_vec() } else { only.clone() },
                exhaustive: !skip_exhaustive,
                mutation: *mutate,
                persist: persist.clone(),
            };
            let report = harness::run(&config)?;
            json_line(out, &report)?;
            if !report.passed() {
                for o in report.outcomes.iter().filter(|o| o.failures > 0) {
                    if let Some(cx) = &o.counterexample {
                        eprintln!("{}: {} failures, first at {} ({})", o.audit.name(), o.failures, cx.input, cx.detail);
                    }
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
