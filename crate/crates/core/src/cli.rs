//! Command-line front end. Settings resolve as flags, then a `key = value`
//! config file, then defaults (`LOGBASE_IR_OUT` supplies the default output
//! directory). Exit codes: 0 success, 1 data/domain error, 2 usage or I/O.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::collection_io::{
    collection_stats, load_documents, load_qrels, load_queries, renumber_sequential, to_jsonl, Format, Qrels,
    QrelsFormat, RawDocument,
};
use crate::error::Error;
use crate::evaluation::{
    csv_header, csv_row, evaluate, Aggregation, ElevenLevels, EvalConfig, Interpolation, DEFAULT_CUTOFF,
};
use crate::index::InvertedIndex;
use crate::retrieval::{parse_run, write_run, Scorer};
use crate::sweep::{
    check_consistency, collection_digest, prepare_queries, rank_judged, run_sweep, top_k_report, write_outputs,
    BaseGrid, Metric, PreparedQuery, SweepCache, SweepOptions,
};
use crate::textpipe::{pipeline, Stoplist};
use crate::weighting::WeightScheme;

pub const OUT_ENV: &str = "LOGBASE_IR_OUT";

#[derive(Parser, Debug)]
#[command(name = "logbase-ir", version, about = "TF-IDF retrieval with a configurable IDF logarithm base")]
struct Cli {
    /// Flat `key = value` configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the index and print collection statistics.
    Index {
        #[command(flatten)]
        common: CommonArgs,
        /// Write an index snapshot here (defaults to <out>/index.json when --out is set).
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
    /// Rank documents for an ad-hoc query.
    Search {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(short, long, default_value_t = 10)]
        k: usize,
        query: String,
    },
    /// Evaluate one base (or an existing run file) against the judgments.
    Eval {
        #[command(flatten)]
        common: CommonArgs,
        /// Score this run file instead of retrieving.
        #[arg(long)]
        run: Option<PathBuf>,
    },
    /// Evaluate every base on a grid and write reports.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        top_k: Option<usize>,
        /// Ignore and do not write the per-base resume cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Print collection statistics, including query and judgment counts.
    Stats {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Convert a native collection to JSON-lines documents/queries and TSV judgments.
    Convert {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Document file(s); repeat or comma-separate for multi-part collections.
    #[arg(long, value_delimiter = ',')]
    docs: Vec<PathBuf>,
    #[arg(long)]
    queries: Option<PathBuf>,
    #[arg(long)]
    qrels: Option<PathBuf>,
    /// Prebuilt index snapshot, used instead of --docs.
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum)]
    qrels_format: Option<QrelsFormatArg>,
    /// Stoplist file, or `none`. Defaults to the bundled SMART list.
    #[arg(long)]
    stoplist: Option<String>,
    /// Number queries 1..n in file order (CRAN judgments use positions).
    #[arg(long)]
    renumber_queries: bool,
    #[arg(long, conflicts_with = "grid", allow_negative_numbers = true)]
    base: Option<String>,
    /// START:STOP:STEP
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, value_enum)]
    interp: Option<InterpArg>,
    #[arg(long, value_enum)]
    aggregation: Option<AggregationArg>,
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Collection name used in report titles.
    #[arg(long)]
    name: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Smart,
    Npl,
    Lisa,
    Jsonl,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum QrelsFormatArg {
    Auto,
    Pairs,
    Graded,
    Trec,
    Cisi,
    Npl,
    Lisa,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InterpArg {
    BucketMean,
    Standard,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AggregationArg {
    PerQuery,
    Pooled,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Run(e) if e.is_io() => 2,
            CliError::Run(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parse arguments, run the command, and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Fully resolved settings.
#[derive(Debug)]
struct Settings {
    docs: Vec<PathBuf>,
    queries: Option<PathBuf>,
    qrels: Option<PathBuf>,
    index: Option<PathBuf>,
    format: Format,
    qrels_format: QrelsFormat,
    stoplist: Stoplist,
    renumber_queries: bool,
    base: Option<String>,
    grid: Option<String>,
    eval: EvalConfig,
    out: Option<PathBuf>,
    jobs: usize,
    name: String,
}

fn read_config(path: Option<&Path>) -> CliResult<BTreeMap<String, String>> {
    let Some(path) = path else { return Ok(BTreeMap::new()) };
    let content = std::fs::read_to_string(path).map_err(|e| CliError::Run(Error::io(path, e)))?;
    let mut map = BTreeMap::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key = value", path.display(), idx + 1)))?;
        map.insert(key.trim().replace('-', "_"), value.trim().to_string());
    }
    Ok(map)
}

fn pick<T: ValueEnum>(flag: Option<T>, config: Option<&String>, key: &str) -> CliResult<Option<T>> {
    match (flag, config) {
        (Some(v), _) => Ok(Some(v)),
        (None, Some(raw)) => {
            T::from_str(raw, true).map(Some).map_err(|_| usage(format!("invalid value `{raw}` for `{key}` in config")))
        }
        (None, None) => Ok(None),
    }
}

fn parse_num<T: std::str::FromStr>(raw: &str, key: &str) -> CliResult<T> {
    raw.parse().map_err(|_| usage(format!("invalid value `{raw}` for `{key}`")))
}

fn resolve(args: CommonArgs, config: &BTreeMap<String, String>) -> CliResult<Settings> {
    let known = [
        "docs",
        "queries",
        "qrels",
        "index",
        "format",
        "qrels_format",
        "stoplist",
        "renumber_queries",
        "base",
        "grid",
        "interp",
        "aggregation",
        "cutoff",
        "out",
        "jobs",
        "name",
        "top_k",
    ];
    if let Some(unknown) = config.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(usage(format!("unknown config key `{unknown}`")));
    }
    let cfg = |k: &str| config.get(k);
    let path = |flag: Option<PathBuf>, key: &str| flag.or_else(|| cfg(key).map(PathBuf::from));

    let docs = if args.docs.is_empty() {
        cfg("docs").map(|v| v.split(',').map(|s| PathBuf::from(s.trim())).collect()).unwrap_or_default()
    } else {
        args.docs
    };

    let format = match pick(args.format, cfg("format"), "format")?.unwrap_or(FormatArg::Smart) {
        FormatArg::Smart => Format::Smart,
        FormatArg::Npl => Format::Npl,
        FormatArg::Lisa => Format::Lisa,
        FormatArg::Jsonl => Format::Jsonl,
    };
    let qrels_format = match pick(args.qrels_format, cfg("qrels_format"), "qrels_format")? {
        Some(QrelsFormatArg::Auto) | None => match format {
            Format::Npl => QrelsFormat::Npl,
            Format::Lisa => QrelsFormat::Lisa,
            _ => QrelsFormat::Auto,
        },
        Some(QrelsFormatArg::Pairs) => QrelsFormat::Pairs,
        Some(QrelsFormatArg::Graded) => QrelsFormat::Graded,
        Some(QrelsFormatArg::Trec) => QrelsFormat::Trec,
        Some(QrelsFormatArg::Cisi) => QrelsFormat::Cisi,
        Some(QrelsFormatArg::Npl) => QrelsFormat::Npl,
        Some(QrelsFormatArg::Lisa) => QrelsFormat::Lisa,
    };

    let stoplist = match args.stoplist.or_else(|| cfg("stoplist").cloned()) {
        None => Stoplist::smart(),
        Some(s) if s == "none" => Stoplist::empty(),
        Some(s) => Stoplist::load(Path::new(&s))?,
    };

    let renumber_queries = args.renumber_queries
        || match cfg("renumber_queries") {
            Some(v) => parse_num::<bool>(v, "renumber_queries")?,
            None => false,
        };

    // base and grid are exclusive; flags replace both config values.
    let (base, grid) = if args.base.is_some() || args.grid.is_some() {
        (args.base, args.grid)
    } else {
        (cfg("base").cloned(), cfg("grid").cloned())
    };
    if base.is_some() && grid.is_some() {
        return Err(usage("`base` and `grid` are mutually exclusive"));
    }

    let interpolation = match pick(args.interp, cfg("interp"), "interp")?.unwrap_or(InterpArg::BucketMean) {
        InterpArg::BucketMean => Interpolation::BucketMean,
        InterpArg::Standard => Interpolation::Standard,
    };
    let aggregation =
        match pick(args.aggregation, cfg("aggregation"), "aggregation")?.unwrap_or(AggregationArg::PerQuery) {
            AggregationArg::PerQuery => Aggregation::PerQuery,
            AggregationArg::Pooled => Aggregation::Pooled,
        };
    let cutoff = match (args.cutoff, cfg("cutoff")) {
        (Some(c), _) => c,
        (None, Some(raw)) => parse_num(raw, "cutoff")?,
        (None, None) => DEFAULT_CUTOFF,
    };
    if cutoff == 0 {
        return Err(usage("cutoff must be at least 1"));
    }
    let jobs = match (args.jobs, cfg("jobs")) {
        (Some(j), _) => j,
        (None, Some(raw)) => parse_num(raw, "jobs")?,
        (None, None) => 1,
    };
    let out = path(args.out, "out").or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from));
    let name = args
        .name
        .or_else(|| cfg("name").cloned())
        .or_else(|| {
            docs.first()
                .and_then(|p: &PathBuf| p.file_stem())
                .map(|s| s.to_string_lossy().split('.').next().unwrap_or("").to_uppercase())
        })
        .unwrap_or_else(|| "COLLECTION".into());

    Ok(Settings {
        docs,
        queries: path(args.queries, "queries"),
        qrels: path(args.qrels, "qrels"),
        index: path(args.index, "index"),
        format,
        qrels_format,
        stoplist,
        renumber_queries,
        base,
        grid,
        eval: EvalConfig { cutoff, interpolation, aggregation },
        out,
        jobs,
        name,
    })
}

fn require_exists(path: &Path) -> CliResult<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::Run(Error::io(path, std::io::Error::new(std::io::ErrorKind::NotFound, "file not found"))))
    }
}

struct Loaded {
    index: InvertedIndex,
    docs: Option<Vec<RawDocument>>,
    size_bytes: u64,
}

impl Settings {
    fn load_docs(&self) -> CliResult<(Vec<RawDocument>, u64)> {
        if self.docs.is_empty() {
            return Err(usage("--docs is required"));
        }
        let mut size = 0;
        for p in &self.docs {
            require_exists(p)?;
            size += std::fs::metadata(p).map_err(|e| Error::io(p, e))?.len();
        }
        Ok((load_documents(&self.docs, self.format)?, size))
    }

    fn build_index(&self, docs: &[RawDocument]) -> CliResult<InvertedIndex> {
        let tokens: Vec<(u32, Vec<String>)> = docs.iter().map(|d| (d.id, pipeline(&d.text, &self.stoplist))).collect();
        Ok(crate::index::build_index(&tokens)?)
    }

    /// Index from --index when given, otherwise built from --docs.
    fn load_index(&self) -> CliResult<Loaded> {
        if let Some(snapshot) = &self.index {
            require_exists(snapshot)?;
            return Ok(Loaded { index: InvertedIndex::load(snapshot)?, docs: None, size_bytes: 0 });
        }
        let (docs, size_bytes) = self.load_docs()?;
        let index = self.build_index(&docs)?;
        Ok(Loaded { index, docs: Some(docs), size_bytes })
    }

    fn load_queries(&self) -> CliResult<Vec<crate::collection_io::RawQuery>> {
        let path = self.queries.as_ref().ok_or_else(|| usage("--queries is required"))?;
        require_exists(path)?;
        let queries = load_queries(path, self.format)?;
        Ok(if self.renumber_queries { renumber_sequential(queries) } else { queries })
    }

    fn load_qrels(&self) -> CliResult<Qrels> {
        let path = self.qrels.as_ref().ok_or_else(|| usage("--qrels is required"))?;
        require_exists(path)?;
        Ok(load_qrels(path, self.qrels_format)?)
    }

    fn scheme(&self) -> CliResult<WeightScheme> {
        if self.grid.is_some() {
            return Err(usage("this command takes --base, not --grid"));
        }
        match &self.base {
            None => Ok(WeightScheme::default()),
            Some(raw) => Ok(WeightScheme::new(parse_num(raw, "base")?)?),
        }
    }

    fn out_dir(&self) -> CliResult<Option<&Path>> {
        if let Some(dir) = &self.out {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        Ok(self.out.as_deref())
    }
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content).map_err(|e| CliError::Run(Error::io(path, e)))
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Run(Error::io("<stdout>", e))
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let config = read_config(cli.config.as_deref())?;
    match cli.command {
        Command::Index { common, snapshot } => cmd_index(resolve(common, &config)?, snapshot, out),
        Command::Search { common, k, query } => cmd_search(resolve(common, &config)?, &query, k, out),
        Command::Eval { common, run } => cmd_eval(resolve(common, &config)?, run, out, err),
        Command::Sweep { common, top_k, no_cache } => {
            let top_k = match (top_k, config.get("top_k")) {
                (Some(k), _) => k,
                (None, Some(raw)) => parse_num(raw, "top_k")?,
                (None, None) => 5,
            };
            cmd_sweep(resolve(common, &config)?, top_k, no_cache, out, err)
        }
        Command::Stats { common } => cmd_stats(resolve(common, &config)?, out, err),
        Command::Convert { common } => cmd_convert(resolve(common, &config)?, out),
    }
}

fn print_stats(settings: &Settings, loaded: &Loaded, out: &mut dyn Write) -> CliResult<()> {
    let docs = loaded.docs.as_deref().unwrap_or(&[]);
    let mut stats = collection_stats(docs, &loaded.index);
    stats.n_docs = loaded.index.n_docs();
    if loaded.size_bytes > 0 {
        stats.size_bytes = loaded.size_bytes;
    }
    writeln!(
        out,
        "collection={} documents={} terms={} size_bytes={}",
        settings.name, stats.n_docs, stats.n_distinct_terms, stats.size_bytes
    )
    .map_err(io_err)
}

fn cmd_index(settings: Settings, snapshot: Option<PathBuf>, out: &mut dyn Write) -> CliResult<()> {
    let loaded = settings.load_index()?;
    print_stats(&settings, &loaded, out)?;
    let target = match snapshot {
        Some(p) => Some(p),
        None => settings.out_dir()?.map(|d| d.join("index.json")),
    };
    if let Some(path) = target {
        loaded.index.save(&path)?;
        writeln!(out, "snapshot={}", path.display()).map_err(io_err)?;
    }
    Ok(())
}

fn cmd_stats(settings: Settings, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let loaded = settings.load_index()?;
    print_stats(&settings, &loaded, out)?;
    if settings.queries.is_some() {
        writeln!(out, "queries={}", settings.load_queries()?.len()).map_err(io_err)?;
    }
    if settings.qrels.is_some() {
        let qrels = settings.load_qrels()?;
        let pairs: usize = qrels.iter().map(|(_, d)| d.len()).sum();
        writeln!(out, "judged_queries={} relevant_pairs={}", qrels.len(), pairs).map_err(io_err)?;
        report_dropped(&qrels, err)?;
    }
    Ok(())
}

fn report_dropped(qrels: &Qrels, err: &mut dyn Write) -> CliResult<()> {
    if !qrels.dropped().is_empty() {
        writeln!(
            err,
            "note: dropped {} queries with no relevant documents: {:?}",
            qrels.dropped().len(),
            qrels.dropped()
        )
        .map_err(io_err)?;
    }
    Ok(())
}

fn cmd_search(settings: Settings, query: &str, k: usize, out: &mut dyn Write) -> CliResult<()> {
    let scheme = settings.scheme()?;
    let loaded = settings.load_index()?;
    let tokens = pipeline(query, &settings.stoplist);
    let list = Scorer::new(&loaded.index, &scheme).rank_tokens(0, &tokens);
    for (i, e) in list.entries.iter().take(k).enumerate() {
        writeln!(out, "{}\t{}\t{:.6}", i + 1, e.doc_id, e.score).map_err(io_err)?;
    }
    Ok(())
}

fn prepared(settings: &Settings) -> CliResult<(Vec<PreparedQuery>, Qrels)> {
    let queries = prepare_queries(&settings.load_queries()?, &settings.stoplist);
    let qrels = settings.load_qrels()?;
    check_consistency(&queries, &qrels)?;
    Ok((queries, qrels))
}

fn cmd_eval(settings: Settings, run: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let (runs, qrels, label) = match run {
        Some(path) => {
            require_exists(&path)?;
            let content = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            (parse_run(&content)?, settings.load_qrels()?, "run".to_string())
        }
        None => {
            let scheme = settings.scheme()?;
            let (queries, qrels) = prepared(&settings)?;
            let loaded = settings.load_index()?;
            let runs = rank_judged(&loaded.index, &queries, &qrels, &scheme);
            (runs, qrels, settings.base.clone().unwrap_or_else(|| "10".into()))
        }
    };
    report_dropped(&qrels, err)?;
    let evaluation = evaluate(&runs, &qrels, &settings.eval)?;
    let summary = evaluation.summary;

    writeln!(out, "queries={}", qrels.len()).map_err(io_err)?;
    for (i, v) in summary.levels.values().iter().enumerate() {
        writeln!(out, "recall {}\t{:.4}", ElevenLevels::level_label(i), v).map_err(io_err)?;
    }
    writeln!(out, "MAP\t{:.4}", summary.map).map_err(io_err)?;
    writeln!(out, "MAP@30\t{:.4}", summary.map_at_30).map_err(io_err)?;
    if !evaluation.empty_buckets.is_empty() {
        writeln!(err, "note: {} (query, level) buckets were empty and scored 0", evaluation.empty_buckets.len())
            .map_err(io_err)?;
    }

    if let Some(dir) = settings.out_dir()? {
        write_file(&dir.join("eval.csv"), &format!("{}\n{}\n", csv_header(), csv_row(&label, &summary)))?;
        write_file(&dir.join("run.tsv"), &write_run(&runs))?;
        let diagnostics: String =
            evaluation.empty_buckets.iter().map(|(q, l)| format!("{q}\t{}\n", ElevenLevels::level_label(*l))).collect();
        write_file(&dir.join("empty_buckets.tsv"), &diagnostics)?;
    }
    Ok(())
}

fn cmd_sweep(
    settings: Settings,
    top_k: usize,
    no_cache: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let dir = settings
        .out_dir()?
        .ok_or_else(|| usage(format!("sweep needs --out, an `out` config key, or {OUT_ENV}")))?
        .to_path_buf();
    let grid = match (&settings.base, &settings.grid) {
        (Some(base), _) => BaseGrid::single(base)?,
        (None, Some(spec)) => BaseGrid::parse(spec)?,
        (None, None) => BaseGrid::default(),
    };
    let (queries, qrels) = prepared(&settings)?;
    report_dropped(&qrels, err)?;
    let loaded = settings.load_index()?;

    let cache = if no_cache {
        None
    } else {
        let digest = collection_digest(&loaded.index, &queries, &qrels, &settings.eval);
        let cache = SweepCache::open(&dir.join("cache"), &digest)?;
        if !cache.is_empty() {
            writeln!(err, "note: resuming with {} cached bases", cache.len()).map_err(io_err)?;
        }
        Some(cache)
    };
    let options = SweepOptions { eval: settings.eval, jobs: settings.jobs, cache: cache.as_ref() };
    let result = run_sweep(&settings.name, &loaded.index, &queries, &qrels, &grid, &options)?;
    write_outputs(&result, &dir, top_k.max(1))?;

    writeln!(out, "evaluated={} skipped={} out={}", result.per_base.len(), result.skipped.len(), dir.display())
        .map_err(io_err)?;
    if !result.per_base.is_empty() {
        write!(out, "{}", top_k_report(&result, Metric::Map, top_k.max(1)).render_text()).map_err(io_err)?;
    }
    Ok(())
}

fn cmd_convert(settings: Settings, out: &mut dyn Write) -> CliResult<()> {
    let dir = settings.out_dir()?.ok_or_else(|| usage("convert needs --out"))?.to_path_buf();
    let (docs, _) = settings.load_docs()?;
    if docs.is_empty() {
        return Err(CliError::Run(Error::EmptyCollection));
    }
    write_file(&dir.join("docs.jsonl"), &to_jsonl(&docs))?;
    writeln!(out, "docs={}", docs.len()).map_err(io_err)?;
    if settings.queries.is_some() {
        let queries = settings.load_queries()?;
        write_file(&dir.join("queries.jsonl"), &to_jsonl(&queries))?;
        writeln!(out, "queries={}", queries.len()).map_err(io_err)?;
    }
    if settings.qrels.is_some() {
        let qrels = settings.load_qrels()?;
        write_file(&dir.join("qrels.tsv"), &qrels.to_tsv())?;
        writeln!(out, "judged_queries={}", qrels.len()).map_err(io_err)?;
    }
    Ok(())
}
