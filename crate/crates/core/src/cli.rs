//! Command-line front end.
//!
//! Settings resolve in three layers: command-line flags override an optional
//! `key=value` config file (`--config`), which overrides built-in defaults.
//! Every `specialize` run writes a manifest next to its output that is itself
//! a valid config file, so `specialize --config out.vec.manifest` replays it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::constraints::{ConstraintSet, PairRelation};
use crate::embedding::{load_embeddings, save_embeddings, Format, Space};
use crate::error::{Error, Result};
use crate::eval::{self, NormRatio, ThresholdProtocol};
use crate::sampler::NegativePolicy;
use crate::specialize::{specialize, Preset, SpecializeConfig, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hierfit", version, about = "Specialize and evaluate static word embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Specialize embeddings with lexical constraints.
    Specialize(Box<SpecializeArgs>),
    /// Evaluate embeddings on a benchmark dataset.
    Eval(EvalArgs),
    /// Print the nearest neighbours of a word.
    Nearest(NearestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    GloveText,
    Word2vecText,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::GloveText => Format::GloveText,
            FormatArg::Word2vecText => Format::Word2VecText,
        }
    }
}

#[derive(Debug, Args)]
#[command(after_help = "Precedence: flags > --config file > built-in defaults.")]
pub struct SpecializeArgs {
    /// key=value config file (keys as the long flag names, '-' or '_')
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Input embeddings
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// Input embedding format
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Specialization method: retrofitting, counter-fitting, attract-repel,
    /// lear, hierarchy-fitting, hierarchy-fitting-ad-dir, hierarchy-fitting-ad-indir
    #[arg(long)]
    pub method: Option<String>,
    /// Synonym pair file (repeatable)
    #[arg(long)]
    pub syn: Vec<PathBuf>,
    /// Antonym pair file (repeatable)
    #[arg(long)]
    pub ant: Vec<PathBuf>,
    /// Direct hypernym pair file, `hyponym hypernym` per line (repeatable)
    #[arg(long)]
    pub hyper: Vec<PathBuf>,
    /// Output embeddings; also writes <out>.log and <out>.manifest
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format [default: same as input]
    #[arg(long, value_enum)]
    pub out_format: Option<FormatArg>,
    /// RNG seed [default: 20210901]
    #[arg(long)]
    pub seed: Option<u64>,
    /// AdaGrad learning rate [default: 0.03]
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// Training epochs [default: 20]
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Mini-batch size [default: 128]
    #[arg(long)]
    pub batch_size: Option<usize>,
    /// Synonym margin [default: 0.9]
    #[arg(long)]
    pub m_syn: Option<f64>,
    /// Antonym margin [default: 0.3]
    #[arg(long)]
    pub m_ant: Option<f64>,
    /// Hypernym margin [default: 0.6]
    #[arg(long)]
    pub m_hyp: Option<f64>,
    /// Quadruplet synonym-vs-hypernym margin [default: 0.001]
    #[arg(long)]
    pub m_hie_syn: Option<f64>,
    /// Quadruplet hypernym-vs-negative margin [default: 0.6]
    #[arg(long)]
    pub m_hie_hyp: Option<f64>,
    /// Preservation weight for hierarchy-fitting [default: 0.001]
    #[arg(long)]
    pub gamma_reg: Option<f64>,
    /// Per-triplet preservation weight for attract-repel and lear [default: 1e-9]
    #[arg(long)]
    pub m_reg: Option<f64>,
    /// Weight of the asymmetric norm term [default: 1.0]
    #[arg(long)]
    pub ad_weight: Option<f64>,
    /// AdaGrad epsilon [default: 1e-8]
    #[arg(long)]
    pub adagrad_epsilon: Option<f64>,
    /// Original-space neighbours preserved by counter-fitting [default: 10]
    #[arg(long)]
    pub neighbor_k: Option<usize>,
    /// In-batch negatives/positives per anchor [default: 2]
    #[arg(long)]
    pub samples_k: Option<usize>,
    /// Only use the closest in-batch negatives (no random one)
    #[arg(long)]
    pub closest_only: bool,
    /// Retrofitting weight on the original vector [default: 1.0]
    #[arg(long)]
    pub retrofit_alpha: Option<f64>,
    /// Retrofitting sweeps [default: 10]
    #[arg(long)]
    pub retrofit_iterations: Option<usize>,
    /// Hop limit for the hypernym closure [default: unbounded]
    #[arg(long)]
    pub closure_depth: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Sim,
    Bless,
    Wbless,
    Bibless,
    Hyperlex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RatioArg {
    /// |candidate hypernym| / |word|
    HyperOverHypo,
    /// |word| / |candidate hypernym|
    HypoOverHyper,
}

impl From<RatioArg> for NormRatio {
    fn from(r: RatioArg) -> Self {
        match r {
            RatioArg::HyperOverHypo => NormRatio::HyperOverHypo,
            RatioArg::HypoOverHyper => NormRatio::HypoOverHyper,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Embeddings to evaluate
    #[arg(long)]
    pub embeddings: PathBuf,
    /// Embedding format
    #[arg(long, value_enum, default_value = "glove-text")]
    pub format: FormatArg,
    /// Evaluation task
    #[arg(long, value_enum)]
    pub task: Task,
    /// Dataset TSV
    #[arg(long)]
    pub dataset: PathBuf,
    /// Resolve OOV words by stripping trailing characters
    #[arg(long)]
    pub backoff: bool,
    /// Seed for the threshold-sampling protocols
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Threshold-sampling iterations
    #[arg(long, default_value_t = 1000)]
    pub iterations: usize,
    /// Norm ratio inside HyperScore
    #[arg(long, value_enum, default_value = "hyper-over-hypo")]
    pub norm_ratio: RatioArg,
    /// Write the report as TSV to this path
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NearestArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[arg(long, value_enum, default_value = "glove-text")]
    pub format: FormatArg,
    /// Query word (OOV words are resolved by back-off)
    #[arg(long)]
    pub word: String,
    /// Number of neighbours
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Search the original vectors instead of the current ones
    #[arg(long)]
    pub original: bool,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Specialize(a) => cmd_specialize(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Nearest(a) => cmd_nearest(&a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::MissingRelation { .. } => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

/// Parsed `key=value` file. Keys are normalized to snake_case; repeated keys
/// accumulate.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, Vec<String>>,
}

impl ConfigFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut entries: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::parse(path, i + 1, "expected key=value"));
            };
            let key = k.trim().replace('-', "_");
            entries.entry(key).or_default().push(v.trim().to_owned());
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).and_then(|v| v.last()).map(String::as_str)
    }

    pub fn all(&self, key: &str) -> &[String] {
        self.entries.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::Config(format!("invalid value '{v}' for config key '{key}'"))),
        }
    }
}

/// A fully resolved `specialize` invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecializeRun {
    pub embeddings: PathBuf,
    pub format: Format,
    pub out: PathBuf,
    pub out_format: Format,
    pub syn: Vec<PathBuf>,
    pub ant: Vec<PathBuf>,
    pub hyper: Vec<PathBuf>,
    pub config: SpecializeConfig,
    /// Input digests recorded by a replayed manifest.
    pub expected_digests: BTreeMap<String, String>,
}

macro_rules! layer {
    ($flag:expr, $file:expr, $key:literal, $default:expr) => {
        match $flag {
            Some(v) => v,
            None => $file.parsed($key)?.unwrap_or($default),
        }
    };
}

fn paths_or(flag: &[PathBuf], file: &ConfigFile, key: &str) -> Vec<PathBuf> {
    if flag.is_empty() {
        file.all(key).iter().map(PathBuf::from).collect()
    } else {
        flag.to_vec()
    }
}

impl SpecializeRun {
    pub fn resolve(args: &SpecializeArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let defaults = SpecializeConfig::default();
        let dm = defaults.margins;

        let embeddings = args
            .embeddings
            .clone()
            .or_else(|| file.get("embeddings").map(PathBuf::from))
            .ok_or_else(|| Error::Config("--embeddings is required".into()))?;
        let format: Format = match args.format {
            Some(f) => f.into(),
            None => file
                .get("format")
                .ok_or_else(|| Error::Config("--format is required".into()))?
                .parse()?,
        };
        let method = args
            .method
            .clone()
            .or_else(|| file.get("method").map(str::to_owned))
            .ok_or_else(|| Error::Config("--method is required".into()))?;
        let preset: Preset = method.parse()?;
        let out = args
            .out
            .clone()
            .or_else(|| file.get("out").map(PathBuf::from))
            .ok_or_else(|| Error::Config("--out is required".into()))?;
        let out_format: Format = match args.out_format {
            Some(f) => f.into(),
            None => match file.get("out_format") {
                Some(s) => s.parse()?,
                None => format,
            },
        };
        let syn = paths_or(&args.syn, &file, "syn");
        let ant = paths_or(&args.ant, &file, "ant");
        let hyper = paths_or(&args.hyper, &file, "hyper");
        if syn.is_empty() && ant.is_empty() && hyper.is_empty() {
            return Err(Error::Config(
                "at least one of --syn, --ant, --hyper is required".into(),
            ));
        }
        for &rel in preset.required_relations() {
            let given = match rel {
                PairRelation::Synonym => &syn,
                PairRelation::Antonym => &ant,
                PairRelation::Hypernym => &hyper,
            };
            if given.is_empty() {
                return Err(Error::MissingRelation {
                    relation: rel.name().to_owned(),
                });
            }
        }

        let negative_policy = if args.closest_only || file.parsed::<bool>("closest_only")?.unwrap_or(false) {
            NegativePolicy::ClosestOnly
        } else {
            NegativePolicy::ClosestPlusRandom
        };
        let closure_depth = match args.closure_depth {
            Some(d) => Some(d),
            None => match file.get("closure_depth") {
                None | Some("unbounded") => None,
                Some(_) => file.parsed("closure_depth")?,
            },
        };

        let config = SpecializeConfig {
            preset,
            margins: crate::loss::Margins {
                m_syn: layer!(args.m_syn, file, "m_syn", dm.m_syn),
                m_ant: layer!(args.m_ant, file, "m_ant", dm.m_ant),
                m_hyp: layer!(args.m_hyp, file, "m_hyp", dm.m_hyp),
                m_hie_syn: layer!(args.m_hie_syn, file, "m_hie_syn", dm.m_hie_syn),
                m_hie_hyp: layer!(args.m_hie_hyp, file, "m_hie_hyp", dm.m_hie_hyp),
                m_reg: layer!(args.m_reg, file, "m_reg", dm.m_reg),
                gamma_reg: layer!(args.gamma_reg, file, "gamma_reg", dm.gamma_reg),
                m_contrastive: file.parsed("m_contrastive")?.unwrap_or(dm.m_contrastive),
                ad_weight: layer!(args.ad_weight, file, "ad_weight", dm.ad_weight),
            },
            learning_rate: layer!(args.learning_rate, file, "learning_rate", defaults.learning_rate),
            epochs: layer!(args.epochs, file, "epochs", defaults.epochs),
            batch_size: layer!(args.batch_size, file, "batch_size", defaults.batch_size),
            seed: layer!(args.seed, file, "seed", defaults.seed),
            adagrad_epsilon: layer!(args.adagrad_epsilon, file, "adagrad_epsilon", defaults.adagrad_epsilon),
            neighbor_k: layer!(args.neighbor_k, file, "neighbor_k", defaults.neighbor_k),
            retrofit_alpha: layer!(args.retrofit_alpha, file, "retrofit_alpha", defaults.retrofit_alpha),
            retrofit_iterations: layer!(
                args.retrofit_iterations,
                file,
                "retrofit_iterations",
                defaults.retrofit_iterations
            ),
            samples_k: layer!(args.samples_k, file, "samples_k", defaults.samples_k),
            negative_policy,
            closure_depth,
        };
        config.validate()?;

        let expected_digests = file
            .entries
            .iter()
            .filter_map(|(k, v)| Some((k.strip_prefix("digest.")?.to_owned(), v.last()?.clone())))
            .collect();

        Ok(SpecializeRun {
            embeddings,
            format,
            out,
            out_format,
            syn,
            ant,
            hyper,
            config,
            expected_digests,
        })
    }

    fn inputs(&self) -> Vec<(String, &Path)> {
        let mut v = vec![("embeddings".to_owned(), self.embeddings.as_path())];
        for (name, list) in [("syn", &self.syn), ("ant", &self.ant), ("hyper", &self.hyper)] {
            for (i, p) in list.iter().enumerate() {
                v.push((format!("{name}.{i}"), p.as_path()));
            }
        }
        v
    }

    /// The manifest text: every resolved setting plus input digests.
    pub fn manifest(&self, digests: &[(String, String)]) -> String {
        let c = &self.config;
        let m = &c.margins;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# hierfit run manifest; replay with `hierfit specialize --config <this file>`"
        );
        let _ = writeln!(s, "tool_version={}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "embeddings={}", self.embeddings.display());
        let _ = writeln!(s, "format={}", self.format);
        let _ = writeln!(s, "method={}", c.preset);
        for (key, list) in [("syn", &self.syn), ("ant", &self.ant), ("hyper", &self.hyper)] {
            for p in list {
                let _ = writeln!(s, "{key}={}", p.display());
            }
        }
        let _ = writeln!(s, "out={}", self.out.display());
        let _ = writeln!(s, "out_format={}", self.out_format);
        let _ = writeln!(s, "seed={}", c.seed);
        let _ = writeln!(s, "learning_rate={}", c.learning_rate);
        let _ = writeln!(s, "epochs={}", c.epochs);
        let _ = writeln!(s, "batch_size={}", c.batch_size);
        let _ = writeln!(s, "adagrad_epsilon={}", c.adagrad_epsilon);
        let _ = writeln!(s, "m_syn={}", m.m_syn);
        let _ = writeln!(s, "m_ant={}", m.m_ant);
        let _ = writeln!(s, "m_hyp={}", m.m_hyp);
        let _ = writeln!(s, "m_hie_syn={}", m.m_hie_syn);
        let _ = writeln!(s, "m_hie_hyp={}", m.m_hie_hyp);
        let _ = writeln!(s, "m_reg={}", m.m_reg);
        let _ = writeln!(s, "gamma_reg={}", m.gamma_reg);
        let _ = writeln!(s, "m_contrastive={}", m.m_contrastive);
        let _ = writeln!(s, "ad_weight={}", m.ad_weight);
        let _ = writeln!(s, "neighbor_k={}", c.neighbor_k);
        let _ = writeln!(s, "samples_k={}", c.samples_k);
        let _ = writeln!(s, "closest_only={}", c.negative_policy == NegativePolicy::ClosestOnly);
        let _ = writeln!(s, "retrofit_alpha={}", c.retrofit_alpha);
        let _ = writeln!(s, "retrofit_iterations={}", c.retrofit_iterations);
        match c.closure_depth {
            Some(d) => {
                let _ = writeln!(s, "closure_depth={d}");
            }
            None => {
                let _ = writeln!(s, "closure_depth=unbounded");
            }
        }
        for (name, digest) in digests {
            let _ = writeln!(s, "digest.{name}={digest}");
        }
        s
    }
}

/// `sha256:<hex>` of a file's bytes.
pub fn file_digest(path: &Path) -> Result<String> {
    let mut file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = file.read(&mut buf).map_err(|e| Error::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    let mut hex = String::from("sha256:");
    for b in hasher.finalize().iter() {
        let _ = write!(hex, "{b:02x}");
    }
    Ok(hex)
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn cmd_specialize(args: &SpecializeArgs) -> Result<()> {
    let run = SpecializeRun::resolve(args)?;

    let mut digests = Vec::new();
    for (name, path) in run.inputs() {
        let d = file_digest(path)?;
        if let Some(expected) = run.expected_digests.get(&name) {
            if *expected != d {
                log::warn!("{} differs from the manifest digest ({name})", path.display());
            }
        }
        digests.push((name, d));
    }

    let store = load_embeddings(&run.embeddings, run.format)?;
    let mut constraints = ConstraintSet::new();
    for (rel, list) in [
        (PairRelation::Synonym, &run.syn),
        (PairRelation::Antonym, &run.ant),
        (PairRelation::Hypernym, &run.hyper),
    ] {
        for p in list {
            constraints.merge(ConstraintSet::load_pairs(p, rel, &store)?);
        }
    }
    if matches!(run.config.preset, Preset::Lear | Preset::HierarchyFittingAdIndir) {
        constraints.compute_closure(run.config.closure_depth);
    }
    let st = constraints.stats();
    eprintln!(
        "constraints: syn={} ant={} hyper={} closure={} (dropped: oov={} self={} syn/ant conflicts={})",
        st.synonyms,
        st.antonyms,
        st.direct_hypernyms,
        st.indirect_hypernyms,
        st.dropped_oov,
        st.dropped_self,
        st.conflicts_resolved
    );

    let (specialized, log) = specialize(&store, &constraints, &run.config)?;
    save_embeddings(&specialized, &run.out, run.out_format)?;

    let log_path = with_suffix(&run.out, ".log");
    let mut w = BufWriter::new(File::create(&log_path).map_err(|e| Error::io(&log_path, e))?);
    log.write_tsv(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(&log_path, e))?;

    let manifest_path = with_suffix(&run.out, ".manifest");
    fs::write(&manifest_path, run.manifest(&digests)).map_err(|e| Error::io(&manifest_path, e))?;

    eprintln!(
        "{}: {} batches in {:.2?}; wrote {}, {}, {}",
        run.config.preset,
        log.batches_processed,
        log.wall_time,
        run.out.display(),
        log_path.display(),
        manifest_path.display()
    );
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let store = load_embeddings(&args.embeddings, args.format.into())?;
    let protocol = ThresholdProtocol {
        iterations: args.iterations,
        seed: args.seed,
        ratio: args.norm_ratio.into(),
        ..ThresholdProtocol::default()
    };
    let report = match args.task {
        Task::Sim => eval::eval_similarity(&store, &eval::load_similarity_dataset(&args.dataset)?, args.backoff)?,
        Task::Hyperlex => eval::hyperlex_eval_with(
            &store,
            &eval::load_similarity_dataset(&args.dataset)?,
            args.backoff,
            protocol.ratio,
        )?,
        Task::Bless => eval::bless_directionality(&store, &eval::load_relation_dataset(&args.dataset)?, args.backoff)?,
        Task::Wbless => eval::wbless_classify(
            &store,
            &eval::load_relation_dataset(&args.dataset)?,
            protocol,
            args.backoff,
        )?,
        Task::Bibless => eval::bibless_classify(
            &store,
            &eval::load_relation_dataset(&args.dataset)?,
            protocol,
            args.backoff,
        )?,
    };
    println!("{report}");
    if report.n_excluded() > 0 {
        println!("{} pair(s) excluded as uncovered", report.n_excluded());
    }
    if let Some(out) = &args.out {
        let mut w = BufWriter::new(File::create(out).map_err(|e| Error::io(out, e))?);
        report
            .write_tsv(&mut w)
            .and_then(|_| w.flush())
            .map_err(|e| Error::io(out, e))?;
    }
    Ok(())
}

pub fn cmd_nearest(args: &NearestArgs) -> Result<()> {
    let store = load_embeddings(&args.embeddings, args.format.into())?;
    let hit = store.backoff_lookup(&args.word);
    let row = hit.row.ok_or_else(|| Error::Uncovered(args.word.clone()))?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let io_err = |e| Error::io("<stdout>", e);
    if hit.truncation_depth > 0 {
        writeln!(
            out,
            "# '{}' resolved to '{}' (back-off depth {})",
            args.word,
            store.token(row),
            hit.truncation_depth
        )
        .map_err(io_err)?;
    }
    let space = if args.original { Space::Original } else { Space::Current };
    for (r, cos) in store.nearest_neighbors(row, args.k as usize, space)? {
        writeln!(out, "{}\t{:.6}", store.token(r), cos).map_err(io_err)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_parsing() {
        let f = ConfigFile::parse(
            "# c\nseed = 7\nsyn=a.tsv\nsyn=b.tsv\nlearning-rate=0.1\n",
            Path::new("c"),
        )
        .unwrap();
        assert_eq!(f.get("seed"), Some("7"));
        assert_eq!(f.all("syn").len(), 2);
        assert_eq!(f.get("learning_rate"), Some("0.1"));
        assert!(ConfigFile::parse("novalue\n", Path::new("c")).is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        fs::write(
            &cfg,
            "embeddings=e.vec\nformat=glove-text\nmethod=attract-repel\nsyn=s\nant=a\nout=o\nseed=5\nepochs=3\n",
        )
        .unwrap();
        let cli = Cli::try_parse_from([
            "hierfit",
            "specialize",
            "--config",
            cfg.to_str().unwrap(),
            "--seed",
            "9",
        ])
        .unwrap();
        let Command::Specialize(args) = cli.command else {
            unreachable!()
        };
        let run = SpecializeRun::resolve(&args).unwrap();
        assert_eq!(run.config.seed, 9);
        assert_eq!(run.config.epochs, 3);
        assert_eq!(run.config.batch_size, 128);
        assert_eq!(run.config.preset, Preset::AttractRepel);
    }

    #[test]
    fn manifest_is_a_config() {
        let dir = tempfile::tempdir().unwrap();
        let args = SpecializeArgs::parse_from_for_test(&[
            "--embeddings",
            "e.vec",
            "--format",
            "glove-text",
            "--method",
            "hierarchy-fitting",
            "--syn",
            "s",
            "--ant",
            "a",
            "--hyper",
            "h",
            "--out",
            "o.vec",
            "--seed",
            "7",
        ]);
        let run = SpecializeRun::resolve(&args).unwrap();
        let text = run.manifest(&[("embeddings".into(), "sha256:00".into())]);
        let path = dir.path().join("m");
        fs::write(&path, text).unwrap();
        let replay = SpecializeArgs::parse_from_for_test(&["--config", path.to_str().unwrap()]);
        let again = SpecializeRun::resolve(&replay).unwrap();
        assert_eq!(again.config, run.config);
        assert_eq!(again.syn, run.syn);
        assert_eq!(
            again.expected_digests.get("embeddings").map(String::as_str),
            Some("sha256:00")
        );
    }

    impl SpecializeArgs {
        fn parse_from_for_test(rest: &[&str]) -> Self {
            let mut argv = vec!["hierfit", "specialize"];
            argv.extend_from_slice(rest);
            match Cli::try_parse_from(argv).unwrap().command {
                Command::Specialize(a) => *a,
                _ => unreachable!(),
            }
        }
    }
}
