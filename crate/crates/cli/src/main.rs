use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use linkeval::ingest::{self, ParseReport};
use linkeval::plots::{self, TetCategory};
use linkeval::protocol::{self, CollisionScope, EvalConfig, EvalSet, RunReport, StatsReport};
use linkeval::{ChronoSplit, EdgeStream, Format, History, SamplerConfig, Strategy, Variant};
use serde::Serialize;

/// Evaluate dynamic link prediction on timestamped edge streams.
#[derive(Parser)]
#[command(name = "linkeval", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dataset statistics and difficulty indices.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: ReportArgs,
    },
    /// Write the test evaluation set (positives with aligned negatives) as CSV.
    Negatives {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score the evaluation set with an EdgeBank baseline.
    Edgebank {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value = "inf")]
        variant: VariantArg,
        /// Also write the generated evaluation set to this file.
        #[arg(long)]
        eval_out: Option<PathBuf>,
        #[command(flatten)]
        output: ReportArgs,
    },
    /// Score an external `row_id,score` file against an evaluation set.
    Score {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        eval_set: PathBuf,
        #[arg(long)]
        scores: PathBuf,
        #[command(flatten)]
        output: ReportArgs,
    },
    /// Render a TEA or TET plot as SVG plus CSV.
    Plot {
        #[command(flatten)]
        input: InputArgs,
        #[arg(value_enum)]
        kind: PlotKind,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Maximum number of TEA bars.
        #[arg(long, default_value_t = 50)]
        bins: usize,
    },
}

#[derive(Args)]
struct InputArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "interaction")]
    format: FormatArg,
    #[arg(long, overrides_with = "undirected")]
    directed: bool,
    #[arg(long, overrides_with = "directed")]
    undirected: bool,
    /// Train, validation and test fractions.
    #[arg(long, value_parser = parse_ratios, default_value = "0.7,0.15,0.15")]
    ratios: [f64; 3],
    #[arg(long, value_enum, default_value = "train")]
    history: HistoryArg,
}

#[derive(Args)]
struct SamplingArgs {
    #[arg(long, value_enum, default_value = "rnd")]
    strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = linkeval::negsampler::DEFAULT_BATCH_SIZE)]
    batch: usize,
    #[arg(long, value_enum, default_value = "batch")]
    collision: CollisionArg,
}

#[derive(Args)]
struct ReportArgs {
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Interaction,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Rnd,
    Hist,
    Induc,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Inf,
    Tw,
}

#[derive(Clone, Copy, ValueEnum)]
enum HistoryArg {
    Train,
    #[value(name = "train+val")]
    TrainVal,
}

#[derive(Clone, Copy, ValueEnum)]
enum CollisionArg {
    Batch,
    Global,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Tea,
    Tet,
}

fn parse_ratios(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> =
        s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"))).collect::<Result<_, _>>()?;
    parts.try_into().map_err(|v: Vec<f64>| format!("expected 3 ratios, got {}", v.len()))
}

impl InputArgs {
    fn history(&self) -> History {
        match self.history {
            HistoryArg::Train => History::Train,
            HistoryArg::TrainVal => History::TrainVal,
        }
    }

    fn load(&self) -> Result<EdgeStream> {
        let format = match self.format {
            FormatArg::Interaction => Format::Interaction,
            FormatArg::Edgelist => Format::EdgeList,
        };
        let directed = !self.undirected;
        let (stream, report) = ingest::parse_file(&self.input, format, directed)
            .with_context(|| format!("reading {}", self.input.display()))?;
        let ParseReport { edges_read, nodes_assigned, lines_skipped, .. } = report;
        eprintln!("read {edges_read} edges over {nodes_assigned} nodes ({lines_skipped} blank lines skipped)");
        Ok(stream)
    }
}

impl SamplingArgs {
    fn config(&self, input: &InputArgs) -> Result<EvalConfig> {
        let strategy = match self.strategy {
            StrategyArg::Rnd => Strategy::Random,
            StrategyArg::Hist => Strategy::Historical,
            StrategyArg::Induc => Strategy::Inductive,
        };
        let collision = match self.collision {
            CollisionArg::Batch => CollisionScope::Batch,
            CollisionArg::Global => CollisionScope::Global,
        };
        Ok(EvalConfig {
            ratios: input.ratios,
            sampler: SamplerConfig::new(strategy, self.seed, self.batch)?,
            history: input.history(),
            collision,
        })
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(BufReader::new(file))
}

fn emit<T: Serialize>(
    report: &T,
    args: &ReportArgs,
    summary: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<()> {
    let json = serde_json::to_string_pretty(report)? + "\n";
    if let Some(path) = &args.out {
        let mut out = create(path)?;
        out.write_all(json.as_bytes())?;
        out.flush()?;
    }
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    if args.json {
        stdout.write_all(json.as_bytes())?;
    } else {
        summary(&mut stdout)?;
    }
    stdout.flush()?;
    Ok(())
}

fn print_stats(s: &StatsReport, w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "dataset            {}", s.dataset)?;
    writeln!(w, "directed           {}", s.directed)?;
    writeln!(w, "nodes              {}", s.nodes)?;
    writeln!(w, "total edges        {}", s.total_edges)?;
    writeln!(w, "unique edges       {}", s.unique_edges)?;
    writeln!(w, "unique timestamps  {}", s.unique_timestamps)?;
    writeln!(w, "duration           {}", s.duration)?;
    match &s.split {
        Some(split) => writeln!(w, "split              {} / {} / {}", split.train, split.val, split.test)?,
        None => writeln!(w, "split              (too few edges)")?,
    }
    writeln!(w, "history            {}", s.history)?;
    writeln!(w, "novelty            {:.4}", s.novelty)?;
    if let Some(indices) = &s.indices {
        writeln!(w, "reoccurrence       {:.4}", indices.reoccurrence)?;
        writeln!(w, "surprise           {:.4}", indices.surprise)?;
    }
    Ok(())
}

fn print_run(r: &RunReport, w: &mut dyn Write) -> io::Result<()> {
    let m = &r.metrics;
    writeln!(w, "dataset      {}", r.dataset)?;
    writeln!(w, "predictor    {}", r.predictor)?;
    writeln!(w, "strategy     {}", r.strategy)?;
    writeln!(w, "split        {} / {} / {}", r.split.train, r.split.val, r.split.test)?;
    writeln!(
        w,
        "negatives    {} ({} {}, {} random)",
        r.negatives.total, r.negatives.strategy, r.strategy, r.negatives.random
    )?;
    writeln!(w, "au_roc       {:.4}", m.au_roc)?;
    writeln!(w, "ap           {:.4}", m.ap)?;
    writeln!(w, "au_pr        {:.4}", m.au_pr)?;
    writeln!(w, "accuracy     {:.4}", m.accuracy)?;
    writeln!(w, "precision    {:.4}", m.precision)?;
    writeln!(w, "recall       {:.4}", m.recall)?;
    writeln!(w, "f1           {:.4}", m.f1)
}

fn write_file(path: &Path, write: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<()> {
    let mut out = create(path)?;
    write(&mut out).with_context(|| format!("writing {}", path.display()))?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Stats { input, output } => {
            let stream = input.load()?;
            let report = StatsReport::compute(&stream, input.ratios, input.history())?;
            emit(&report, &output, |w| print_stats(&report, w))
        }
        Command::Negatives { input, sampling, out } => {
            let stream = input.load()?;
            let config = sampling.config(&input)?;
            let split = ChronoSplit::new(&stream, config.ratios)?;
            let eval = EvalSet::generate(&stream, &split, &config)?;
            let tally = eval.tally();
            match out {
                Some(path) => write_file(&path, |w| eval.write_csv(w))?,
                None => {
                    let mut stdout = io::stdout().lock();
                    eval.write_csv(&mut stdout)?;
                    stdout.flush()?;
                }
            }
            eprintln!("{} negatives: {} {}, {} random", tally.total, tally.strategy, eval.strategy, tally.random);
            Ok(())
        }
        Command::Edgebank { input, sampling, variant, eval_out, output } => {
            let stream = input.load()?;
            let config = sampling.config(&input)?;
            let variant = match variant {
                VariantArg::Inf => Variant::Infinity,
                VariantArg::Tw => Variant::TimeWindow,
            };
            let (report, eval) = protocol::run_edgebank(&stream, &config, variant)?;
            if let Some(path) = eval_out {
                write_file(&path, |w| eval.write_csv(w))?;
            }
            emit(&report, &output, |w| print_run(&report, w))
        }
        Command::Score { input, eval_set, scores, output } => {
            let stream = input.load()?;
            let rows = protocol::read_eval_set_csv(open(&eval_set)?)
                .with_context(|| format!("reading {}", eval_set.display()))?;
            let scores =
                protocol::read_scores_csv(open(&scores)?).with_context(|| format!("reading {}", scores.display()))?;
            let report = protocol::run_external(&stream, input.ratios, input.history(), &rows, &scores)?;
            emit(&report, &output, |w| print_run(&report, w))
        }
        Command::Plot { input, kind, out, bins } => {
            if bins == 0 {
                bail!("--bins must be positive");
            }
            let stream = input.load()?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            match kind {
                PlotKind::Tea => {
                    let series = plots::tea_series(&stream);
                    let svg = plots::render_tea_svg(&series, bins)?;
                    write_file(&out.join("tea.svg"), |w| w.write_all(svg.as_bytes()))?;
                    write_file(&out.join("tea.csv"), |w| plots::write_tea_csv(&series, w))?;
                    eprintln!("novelty {:.4} over {} timestamps", series.novelty(), series.rows.len());
                }
                PlotKind::Tet => {
                    let split = ChronoSplit::new(&stream, input.ratios)?;
                    let rows = plots::tet_rows(&stream, &split, input.history());
                    let svg = plots::render_tet_svg(&rows, split.t_split)?;
                    write_file(&out.join("tet.svg"), |w| w.write_all(svg.as_bytes()))?;
                    write_file(&out.join("tet.csv"), |w| plots::write_tet_csv(&rows, w))?;
                    let counts: Vec<String> = [
                        TetCategory::TrainOnly,
                        TetCategory::Transductive,
                        TetCategory::Inductive,
                        TetCategory::ValOnly,
                    ]
                    .iter()
                    .map(|&c| format!("{} {}", c.as_str(), rows.count(c)))
                    .collect();
                    eprintln!("{}", counts.join(", "));
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("linkeval: error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_parse() {
        assert_eq!(parse_ratios("0.7,0.15,0.15").unwrap(), protocol::DEFAULT_RATIOS);
        assert!(parse_ratios("0.5,0.5").is_err());
        assert!(parse_ratios("a,b,c").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
