//! Command line interface: JSON configuration, subcommands and reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::complex::{build_skeleton, check_complex_agreement, DEFAULT_CAP};
use crate::error::{Error, ErrorClass, Result};
use crate::graphs::{GraphExtension, InjectiveSimplicialMap, SimplicialGraph};
use crate::groups::{Group, GroupElem, SetMap};
use crate::induce::{
    check_extension, check_functoriality, check_homomorphism, check_isometry, check_retraction,
    check_well_defined, phi_gamma, phi_trace, phi_word, SetMapFamily,
};
use crate::kernels::{in_kernel, in_kernel_extension, project, random_word};
use crate::oracle::{bfs_equal, enumerate_ball, kernel_census, random_equivalent, BfsVerdict, Side, DEFAULT_BFS_LIMIT};
use crate::report::{Record, Report};
use crate::words::{Context, Word};

/// The configuration used when `--config` is not given.
pub const BUILTIN_CONFIG: &str = include_str!("../configs/default.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;
pub const EXIT_PRECONDITION: i32 = 5;
pub const EXIT_RESOURCE: i32 = 6;
pub const EXIT_INTERNAL: i32 = 7;

const EXIT_CODES_HELP: &str = "\
Exit codes:
  0  success; every checked assertion held
  1  a verification failed
  2  invalid command line
  3  configuration error (unreadable file, bad JSON, unresolved name)
  4  validation error (bad table, word, graph or map)
  5  precondition violated (e.g. word not in the kernel)
  6  resource limit exceeded (complex cap, enumeration budget)
  7  internal consistency failure";

pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Config => EXIT_CONFIG,
        ErrorClass::Validation => EXIT_VALIDATION,
        ErrorClass::Precondition => EXIT_PRECONDITION,
        ErrorClass::Resource => EXIT_RESOURCE,
        ErrorClass::Internal => EXIT_INTERNAL,
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    graphs: BTreeMap<String, RawGraph>,
    #[serde(default)]
    groups: BTreeMap<String, RawGroup>,
    #[serde(default)]
    contexts: BTreeMap<String, RawContext>,
    #[serde(default)]
    families: BTreeMap<String, RawFamily>,
    #[serde(default)]
    extensions: BTreeMap<String, RawExtension>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: usize,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RawGroup {
    Cyclic(u32),
    Table(Vec<Vec<u32>>),
    InfiniteCyclic,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContext {
    graph: String,
    groups: Vec<String>,
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RawMap {
    Table(Vec<i64>),
    Identity,
    ModReduction,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    source: String,
    target: String,
    #[serde(default)]
    vertex_map: Option<Vec<usize>>,
    maps: Vec<RawMap>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    base: String,
    #[serde(default)]
    added_edges: Vec<(usize, usize)>,
}

/// A validated configuration: every name resolves and every object passed
/// its constructor's checks.
#[derive(Clone, Debug, Default)]
pub struct Config {
    pub graphs: BTreeMap<String, SimplicialGraph>,
    pub groups: BTreeMap<String, Arc<Group>>,
    pub contexts: BTreeMap<String, Arc<Context>>,
    pub families: BTreeMap<String, SetMapFamily>,
    pub extensions: BTreeMap<String, GraphExtension>,
}

fn element_of(group: &Group, z: i64) -> Result<GroupElem> {
    let e = match group.order() {
        None => GroupElem::int(z),
        Some(n) => {
            let k = u32::try_from(z).map_err(|_| Error::ElementOutOfRange { index: z as u64, order: n })?;
            GroupElem::Finite(k)
        }
    };
    group.check(&e)?;
    Ok(e)
}

impl Config {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN_CONFIG).expect("builtin configuration is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Parses and validates; all problems are collected into one error, one
    /// per line, each prefixed with its location.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Config(format!("parse error: {e}")))?;
        let mut errors: Vec<String> = Vec::new();
        let mut cfg = Config::default();

        for (name, g) in &raw.graphs {
            match SimplicialGraph::new(g.vertices, g.edges.iter().copied()) {
                Ok(graph) => {
                    cfg.graphs.insert(name.clone(), graph);
                }
                Err(e) => errors.push(format!("graphs.{name}: {e}")),
            }
        }
        for (name, g) in &raw.groups {
            let built = match g {
                RawGroup::Cyclic(n) => Group::cyclic(*n),
                RawGroup::Table(rows) => Group::from_table(rows),
                RawGroup::InfiniteCyclic => Ok(Group::infinite_cyclic()),
            };
            match built {
                Ok(group) => {
                    cfg.groups.insert(name.clone(), Arc::new(group));
                }
                Err(e) => errors.push(format!("groups.{name}: {e}")),
            }
        }
        for (name, c) in &raw.contexts {
            let at = format!("contexts.{name}");
            let graph = match (cfg.graphs.get(&c.graph), raw.graphs.contains_key(&c.graph)) {
                (Some(g), _) => Some(g.clone()),
                (None, true) => None,
                (None, false) => {
                    errors.push(format!("{at}.graph: undefined graph `{}`", c.graph));
                    None
                }
            };
            let mut groups = Vec::new();
            let mut complete = true;
            for (k, gname) in c.groups.iter().enumerate() {
                match cfg.groups.get(gname) {
                    Some(g) => groups.push(g.clone()),
                    None => {
                        complete = false;
                        if !raw.groups.contains_key(gname) {
                            errors.push(format!("{at}.groups[{k}]: undefined group `{gname}`"));
                        }
                    }
                }
            }
            if let (Some(graph), true) = (graph, complete) {
                match Context::new(graph, groups) {
                    Ok(ctx) => {
                        cfg.contexts.insert(name.clone(), Arc::new(ctx));
                    }
                    Err(e) => errors.push(format!("{at}: {e}")),
                }
            }
        }
        for (name, x) in &raw.extensions {
            let at = format!("extensions.{name}");
            match cfg.graphs.get(&x.base) {
                Some(base) => match base
                    .with_edges(x.added_edges.iter().copied())
                    .and_then(|ext| GraphExtension::validate(base.clone(), ext))
                {
                    Ok(ext) => {
                        cfg.extensions.insert(name.clone(), ext);
                    }
                    Err(e) => errors.push(format!("{at}: {e}")),
                },
                None if raw.graphs.contains_key(&x.base) => {}
                None => errors.push(format!("{at}.base: undefined graph `{}`", x.base)),
            }
        }
        for (name, f) in &raw.families {
            let at = format!("families.{name}");
            let mut lookup = |field: &str, ctx_name: &str| match cfg.contexts.get(ctx_name) {
                Some(c) => Some(c.clone()),
                None => {
                    if !raw.contexts.contains_key(ctx_name) {
                        errors.push(format!("{at}.{field}: undefined context `{ctx_name}`"));
                    }
                    None
                }
            };
            let (Some(source), Some(target)) = (lookup("source", &f.source), lookup("target", &f.target)) else {
                continue;
            };
            match build_family(&source, &target, f) {
                Ok(family) => {
                    cfg.families.insert(name.clone(), family);
                }
                Err((loc, e)) => errors.push(format!("{at}{loc}: {e}")),
            }
        }

        if errors.is_empty() {
            Ok(cfg)
        } else {
            Err(Error::Config(errors.join("\n")))
        }
    }

    pub fn context(&self, name: &str) -> Result<&Arc<Context>> {
        self.contexts.get(name).ok_or_else(|| Error::Config(format!("unknown context `{name}`")))
    }

    pub fn family(&self, name: &str) -> Result<&SetMapFamily> {
        self.families.get(name).ok_or_else(|| Error::Config(format!("unknown family `{name}`")))
    }

    pub fn extension(&self, name: &str) -> Result<&GraphExtension> {
        self.extensions.get(name).ok_or_else(|| Error::Config(format!("unknown extension `{name}`")))
    }
}

fn build_family(
    source: &Arc<Context>,
    target: &Arc<Context>,
    f: &RawFamily,
) -> std::result::Result<SetMapFamily, (String, Error)> {
    let vertex_map = f.vertex_map.clone().unwrap_or_else(|| (0..source.vertex_count()).collect());
    let psi = InjectiveSimplicialMap::validate(vertex_map, source.graph().clone(), target.graph().clone())
        .map_err(|e| (".vertex_map".to_string(), e))?;
    if f.maps.len() != source.vertex_count() {
        return Err((".maps".into(), Error::VertexCountMismatch(f.maps.len(), source.vertex_count())));
    }
    let mut maps = Vec::new();
    for (i, m) in f.maps.iter().enumerate() {
        let dom = source.groups()[i].clone();
        let cod = target.groups()[psi.apply(i)].clone();
        let built = match m {
            RawMap::Identity if *dom == *cod => Ok(SetMap::identity(dom)),
            RawMap::Identity => Err(Error::DomainMismatch("identity between different groups".into())),
            RawMap::ModReduction if !dom.is_finite() => SetMap::mod_reduction(cod),
            RawMap::ModReduction => Err(Error::DomainMismatch("mod reduction needs an infinite cyclic domain".into())),
            RawMap::Table(images) => images
                .iter()
                .map(|&z| element_of(&cod, z))
                .collect::<Result<Vec<_>>>()
                .and_then(|imgs| SetMap::table(dom, cod, imgs)),
        };
        maps.push(built.map_err(|e| (format!(".maps[{i}]"), e))?);
    }
    SetMapFamily::new(source.clone(), target.clone(), psi, maps).map_err(|e| (String::new(), e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Homomorphism,
    Functoriality,
    Isometry,
    Welldefined,
    Retraction,
    Census,
    OracleAgreement,
    Extension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Parser, Debug)]
#[command(name = "graphprod", version, about = "Graph products of groups: normal forms, kernels and induced maps", after_help = EXIT_CODES_HELP)]
struct Cli {
    /// JSON configuration file; the builtin configuration is used otherwise.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical form and normal length of a word.
    Normalize {
        #[arg(long)]
        context: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Canonical form of a product.
    Mul {
        #[arg(long)]
        context: String,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Canonical form of an inverse.
    Inv {
        #[arg(long)]
        context: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Image in the direct product of the vertex groups.
    Project {
        #[arg(long)]
        context: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Membership in the kernel of the projection, or of the map to the
    /// graph product over an extended graph.
    KernelTest {
        #[arg(long)]
        context: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        extension: Option<String>,
    },
    /// Image of a word under the map induced by a family of set maps.
    Induce {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        family: Option<String>,
        /// Second family: applied after `--family` (functoriality) or
        /// expected to undo it (retraction).
        #[arg(long)]
        cofamily: Option<String>,
        #[arg(long)]
        context: Option<String>,
        /// Second context for the census comparison.
        #[arg(long)]
        other: Option<String>,
        #[arg(long)]
        extension: Option<String>,
        /// Extension on the target side; defaults to `--extension`.
        #[arg(long)]
        target_extension: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Build the 2-skeleton of the polyhedral product and check its census.
    Complex {
        #[arg(long)]
        context: String,
        /// Print the cell census.
        #[arg(long)]
        census: bool,
        /// Write the 1-skeleton as `u v label` lines.
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Sphere sizes of the ball around the identity, or kernel counts.
    Growth {
        #[arg(long)]
        context: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        /// Count only kernel elements.
        #[arg(long)]
        kernel: bool,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
}

/// Output of one command: text for humans, records for machines, and
/// whether every assertion held.
struct Outcome {
    text: String,
    records: Vec<String>,
    passed: bool,
}

impl Outcome {
    fn info(text: String, record: Record) -> Self {
        Outcome { text, records: vec![record.to_string()], passed: true }
    }

    fn from_report(report: &Report) -> Self {
        Outcome {
            text: report.to_text(),
            records: report.to_records().iter().map(|r| r.to_string()).collect(),
            passed: report.passed(),
        }
    }
}

/// Parses argv, runs the command and writes its report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let config = match &cli.config {
        Some(path) => Config::load(path),
        None => Ok(Config::builtin()),
    };
    let outcome = config.and_then(|cfg| execute(&cli.command, &cfg));
    match outcome {
        Ok(o) => {
            let body = match cli.format {
                Format::Text => o.text,
                Format::Records => o.records.iter().map(|r| format!("{r}\n")).collect(),
            };
            let _ = out.write_all(body.as_bytes());
            if o.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(e.class())
        }
    }
}

fn parse(ctx: &Arc<Context>, text: &str) -> Result<Word> {
    Word::parse(ctx.clone(), text)
}

fn need<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value.as_deref().ok_or_else(|| Error::Config(format!("this suite needs --{flag}")))
}

fn execute(command: &Command, cfg: &Config) -> Result<Outcome> {
    match command {
        Command::Normalize { context, word } => {
            let w = parse(cfg.context(context)?, word)?.normalize();
            let nl = w.len();
            Ok(Outcome::info(format!("{w}\nnl={nl}\n"), Record::new().with("word", &w).with("nl", nl)))
        }
        Command::Mul { context, left, right } => {
            let ctx = cfg.context(context)?;
            let p = parse(ctx, left)?.mul(&parse(ctx, right)?)?;
            let nl = p.len();
            Ok(Outcome::info(format!("{p}\nnl={nl}\n"), Record::new().with("word", &p).with("nl", nl)))
        }
        Command::Inv { context, word } => {
            let w = parse(cfg.context(context)?, word)?.inv();
            let nl = w.len();
            Ok(Outcome::info(format!("{w}\nnl={nl}\n"), Record::new().with("word", &w).with("nl", nl)))
        }
        Command::Project { context, word } => {
            let w = parse(cfg.context(context)?, word)?;
            let p = project(&w);
            let k = p.is_identity();
            Ok(Outcome::info(
                format!("{p}\nkernel={k}\n"),
                Record::new().with("projection", &p).with("kernel", k),
            ))
        }
        Command::KernelTest { context, word, extension } => {
            let w = parse(cfg.context(context)?, word)?;
            let (member, label) = match extension {
                Some(name) => (in_kernel_extension(&w, cfg.extension(name)?)?, name.as_str()),
                None => (in_kernel(&w), "direct-product"),
            };
            let verdict = if member { "in kernel" } else { "not in kernel" };
            Ok(Outcome::info(
                format!("{verdict} ({label})\n"),
                Record::new().with("kernel", member).with("of", label),
            ))
        }
        Command::Induce { family, word } => {
            let f = cfg.family(family)?;
            let w = parse(f.source(), word)?;
            let raw = phi_word(&w, f)?;
            let image = phi_gamma(&w, f)?;
            let dropped: Vec<String> = phi_trace(&w, f)?
                .iter()
                .enumerate()
                .filter(|(_, s)| s.is_none())
                .map(|(j, _)| (j + 1).to_string())
                .collect();
            let dropped = dropped.join(",");
            let k = in_kernel(&w);
            let mut text = format!("{image}\nnl={}\nsyllable image: {raw}\nkernel={k}\n", image.len());
            if !dropped.is_empty() {
                let _ = writeln!(text, "dropped syllables: {dropped}");
            }
            Ok(Outcome::info(
                text,
                Record::new()
                    .with("image", &image)
                    .with("nl", image.len())
                    .with("syllable_image", &raw)
                    .with("dropped", dropped)
                    .with("kernel", k),
            ))
        }
        Command::Verify { suite, family, cofamily, context, other, extension, target_extension, seed, samples, radius, cap } => {
            let (seed, n) = (*seed, *samples);
            let report = match suite {
                Suite::Homomorphism => check_homomorphism(cfg.family(need(family, "family")?)?, seed, n),
                Suite::Functoriality => {
                    let f = cfg.family(need(family, "family")?)?;
                    let g = cfg.family(need(cofamily, "cofamily")?)?;
                    check_functoriality(f, g, seed, n)?
                }
                Suite::Isometry => check_isometry(cfg.family(need(family, "family")?)?, seed, n)?,
                Suite::Welldefined => check_well_defined(cfg.family(need(family, "family")?)?, seed, n)?,
                Suite::Retraction => {
                    let f = cfg.family(need(family, "family")?)?;
                    let g = cfg.family(need(cofamily, "cofamily")?)?;
                    let mut r = check_retraction(f, g, seed, n)?;
                    if r.passed() {
                        r.note("conclusion", "Φ is a retract of Ψ");
                    }
                    r
                }
                Suite::Extension => {
                    let f = cfg.family(need(family, "family")?)?;
                    let src = cfg.extension(need(extension, "extension")?)?;
                    let tgt = match target_extension {
                        Some(name) => cfg.extension(name)?,
                        None => src,
                    };
                    check_extension(f, src, tgt, seed, n)?
                }
                Suite::Census => {
                    let ctx = cfg.context(need(context, "context")?)?;
                    census_report(ctx, other.as_deref().map(|o| cfg.context(o)).transpose()?, *radius)?
                }
                Suite::OracleAgreement => match (family, context) {
                    (Some(f), _) => check_complex_agreement(cfg.family(f)?, *cap, seed, n)?,
                    (None, Some(c)) => bfs_agreement(cfg.context(c)?, seed, n)?,
                    (None, None) => return Err(Error::Config("this suite needs --family or --context".into())),
                },
            };
            let mut report = report;
            report.note("seed", seed);
            Ok(Outcome::from_report(&report))
        }
        Command::Complex { context, census, export, cap } => {
            let sk = build_skeleton(cfg.context(context)?, *cap)?;
            sk.check_cayley()?;
            let c = sk.census()?;
            let mut text = String::new();
            if *census || export.is_none() {
                let _ = writeln!(text, "{c}");
            }
            if let Some(path) = export {
                let mut file = std::fs::File::create(path)
                    .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
                sk.write_edge_list(&mut file)
                    .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
                let _ = writeln!(text, "wrote {} edges to {}", sk.edges().len(), path.display());
            }
            Ok(Outcome::info(
                text,
                Record::new()
                    .with("V", c.vertices)
                    .with("E", c.edges)
                    .with("T", c.triangles)
                    .with("Sq", c.squares),
            ))
        }
        Command::Growth { context, radius, side, kernel, budget } => {
            let ctx = cfg.context(context)?;
            let counts = if *kernel {
                kernel_census(ctx, *radius, *budget)?
            } else {
                let side = match side {
                    SideArg::Left => Side::Left,
                    SideArg::Right => Side::Right,
                };
                enumerate_ball(ctx, *radius, side, *budget)?.spheres
            };
            Ok(Outcome { text: census_table(&counts), records: census_rows(&counts), passed: true })
        }
    }
}

/// Aligned `radius count` table.
pub fn census_table(counts: &[usize]) -> String {
    let width = counts.iter().map(|c| c.to_string().len()).max().unwrap_or(1).max(5);
    let mut s = format!("radius  {:>width$}\n", "count");
    for (r, c) in counts.iter().enumerate() {
        let _ = writeln!(s, "{r:>6}  {c:>width$}");
    }
    s
}

/// `radius,count` rows under a header line.
pub fn census_rows(counts: &[usize]) -> Vec<String> {
    std::iter::once("radius,count".to_string())
        .chain(counts.iter().enumerate().map(|(r, c)| format!("{r},{c}")))
        .collect()
}

/// Inverse of [`census_rows`].
pub fn parse_census_rows(text: &str) -> Result<Vec<usize>> {
    let mut lines = text.lines();
    if lines.next() != Some("radius,count") {
        return Err(Error::Config("census rows must start with `radius,count`".into()));
    }
    let mut out = Vec::new();
    for (k, line) in lines.enumerate() {
        let bad = || Error::Config(format!("bad census row {line:?}"));
        let (r, c) = line.split_once(',').ok_or_else(bad)?;
        if r.parse::<usize>().map_err(|_| bad())? != k {
            return Err(bad());
        }
        out.push(c.parse().map_err(|_| bad())?);
    }
    Ok(out)
}

fn census_report(ctx: &Arc<Context>, other: Option<&Arc<Context>>, radius: usize) -> Result<Report> {
    let mut report = Report::new("census");
    report.samples = radius + 1;
    match other {
        Some(o) => {
            let a = kernel_census(ctx, radius, DEFAULT_BFS_LIMIT)?;
            let b = kernel_census(o, radius, DEFAULT_BFS_LIMIT)?;
            report.note("kernel_census", format!("{a:?}"));
            report.note("other_kernel_census", format!("{b:?}"));
            for r in 0..=radius {
                if a[r] != b[r] {
                    report.fail(r, format!("radius {r}: {} vs {}", a[r], b[r]));
                }
            }
        }
        None => {
            let right = enumerate_ball(ctx, radius, Side::Right, DEFAULT_BFS_LIMIT)?.spheres;
            let left = enumerate_ball(ctx, radius, Side::Left, DEFAULT_BFS_LIMIT)?.spheres;
            report.note("spheres", format!("{right:?}"));
            if left != right {
                report.fail(0, format!("left spheres {left:?} but right spheres {right:?}"));
            }
        }
    }
    Ok(report)
}

/// Compares move-search equality with canonical-form equality on seeded
/// pairs: each word against a random equivalent and against a random word.
fn bfs_agreement(ctx: &Arc<Context>, seed: u64, n: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("oracle-agreement");
    let mut inconclusive = 0;
    for k in 0..n {
        let len = rng.gen_range(0..=4);
        let u = random_word(&mut rng, ctx, len);
        let v = if rng.gen_bool(0.5) {
            let steps = rng.gen_range(1..=2);
            random_equivalent(&mut rng, &u, steps)
        } else {
            let len = rng.gen_range(0..=4);
            random_word(&mut rng, ctx, len)
        };
        report.samples += 1;
        let expected = u.represents_same(&v)?;
        match bfs_equal(&u, &v, DEFAULT_BFS_LIMIT)? {
            BfsVerdict::Inconclusive => inconclusive += 1,
            verdict => {
                if (verdict == BfsVerdict::Equal) != expected {
                    report.fail(k, format!("u={u} v={v}: move search says {verdict:?}, normal forms say {expected}"));
                }
            }
        }
    }
    report.note("inconclusive", inconclusive);
    Ok(report)
}
