//! Command-line front end: input parsing with located errors, dispatch and
//! report printing.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::descent::{
    check_factorable, check_sheaf, check_subsite_hypotheses, glue_pi_sheaf, DescentError,
    FiniteSite, PiSheafDatum, RawPiDatum, RawSheaf, RawSite, SetSheaf,
};
use crate::dual_graph::{DualGraph, Fiber, GraphAutomorphism, GraphError, GraphFamily, RawGraph};
use crate::exact::json_number;
use crate::lls::{self, EnumerationOptions, DEFAULT_MAX_BOX};
use crate::multidegree::{
    self, find_sufficient_collection, minimum_sufficient_collections, Multidegree,
    MultidegreeError, RawMultidegree, Side,
};
use crate::schubert::{self, Partition};

pub const MAX_BOX_ENV: &str = "LLSKIT_MAX_BOX";

#[derive(Debug, Parser)]
#[command(
    name = "llskit",
    version,
    about = "Limit linear series counts on compact-type curves"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Brill-Noether number g - (r+1)(g-d+r).
    Rho { g: u32, r: u32, d: u32 },
    #[command(subcommand)]
    Schubert(SchubertCommand),
    #[command(subcommand)]
    Lls(LlsCommand),
    #[command(subcommand)]
    Md(MdCommand),
    #[command(subcommand)]
    Descent(DescentCommand),
}

#[derive(Debug, Args)]
pub struct Grassmannian {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: u32,
}

#[derive(Debug, Subcommand)]
pub enum SchubertCommand {
    /// Product of two Schubert classes, e.g. `2,1`.
    Product {
        lambda: String,
        mu: String,
        #[command(flatten)]
        grass: Grassmannian,
    },
    /// Degree of a product of Schubert classes.
    Count {
        #[arg(required = true)]
        classes: Vec<String>,
        #[command(flatten)]
        grass: Grassmannian,
    },
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub grass: Grassmannian,
    /// Do not assume nodes and marked points are in general position.
    #[arg(long)]
    pub special_position: bool,
}

#[derive(Debug, Subcommand)]
pub enum LlsCommand {
    /// List refined limit series types with multiplicities.
    Enumerate(SeriesArgs),
    /// Total number of limit series.
    Count(SeriesArgs),
    /// Closed-form complex and real g^1_d counts.
    RealCounts {
        #[arg(long)]
        d: u32,
    },
    /// Types fixed by a graph automorphism or a list of them.
    Galois {
        graph: PathBuf,
        automorphisms: PathBuf,
        #[command(flatten)]
        grass: Grassmannian,
        #[arg(long)]
        special_position: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum MdCommand {
    /// Degree on each component.
    Fiber {
        graph: PathBuf,
        multidegree: PathBuf,
    },
    /// Twist by the side of `edge` containing `toward`.
    Twist {
        graph: PathBuf,
        multidegree: PathBuf,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        toward: String,
    },
    /// Uniformly concentrated multidegrees and a sufficient collection.
    Sufficient {
        family: PathBuf,
        #[arg(long)]
        d: i64,
        /// Also list every sufficient collection of minimum size.
        #[arg(long)]
        minimum: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum DescentCommand {
    /// Validate a site, and optionally a sheaf, a subcategory and a
    /// factorable set on it.
    Check {
        site: PathBuf,
        #[arg(long)]
        sheaf: Option<PathBuf>,
        /// Comma-separated objects.
        #[arg(long, value_delimiter = ',')]
        sub: Option<Vec<String>>,
        /// Comma-separated objects.
        #[arg(long, value_delimiter = ',')]
        pi: Option<Vec<String>>,
    },
    /// Glue a datum of sheaves on slices into a sheaf on the site.
    Glue { site: PathBuf, datum: PathBuf },
}

/// Which stage of input validation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputErrorKind {
    Io,
    MalformedJson,
    Schema,
    Invariant,
}

impl InputErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            InputErrorKind::Io => "E_IO",
            InputErrorKind::MalformedJson => "E_JSON",
            InputErrorKind::Schema => "E_SCHEMA",
            InputErrorKind::Invariant => "E_INVARIANT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputError {
    pub kind: InputErrorKind,
    pub path: String,
    /// JSON pointer into the file; empty for the whole document.
    pub pointer: String,
    pub message: String,
}

impl InputError {
    fn new(
        kind: InputErrorKind,
        path: &Path,
        pointer: impl Into<String>,
        message: impl fmt::Display,
    ) -> Self {
        InputError {
            kind,
            path: path.display().to_string(),
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.kind.code(), self.path)?;
        if !self.pointer.is_empty() {
            write!(f, " at {}", self.pointer)?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(InputError),
    Usage(String),
    Domain(String),
    Output(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Output(_) => 1,
            CliError::Input(_) | CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Domain(m) => write!(f, "{m}"),
            CliError::Output(e) => write!(f, "writing output: {e}"),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e)
    }
}

fn domain(e: impl fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new(InputErrorKind::Io, path, "", e))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError::new(InputErrorKind::MalformedJson, path, "", e))
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn from_value<T: DeserializeOwned>(
    path: &Path,
    prefix: &str,
    value: Value,
) -> Result<T, InputError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let pointer = format!("{prefix}{}", pointer_of(e.path()));
        InputError::new(InputErrorKind::Schema, path, pointer, e.inner())
    })
}

fn graph_error(path: &Path, prefix: &str, raw: &RawGraph, e: GraphError) -> InputError {
    let position = |list: Vec<&str>, id: &str| list.iter().rposition(|x| *x == id);
    let (kind, pointer) = match &e {
        GraphError::DanglingEdge { index, .. } => {
            (InputErrorKind::Schema, format!("/edges/{index}"))
        }
        GraphError::DanglingMark { index, .. } => {
            (InputErrorKind::Schema, format!("/marks/{index}"))
        }
        GraphError::DuplicateVertex(id) => {
            let at = position(raw.vertices.iter().map(|v| v.id.as_str()).collect(), id);
            (
                InputErrorKind::Schema,
                at.map(|i| format!("/vertices/{i}")).unwrap_or_default(),
            )
        }
        GraphError::DuplicateEdge(id) => {
            let at = position(raw.edges.iter().map(|v| v.id.as_str()).collect(), id);
            (
                InputErrorKind::Schema,
                at.map(|i| format!("/edges/{i}")).unwrap_or_default(),
            )
        }
        GraphError::InvalidId(_) | GraphError::DuplicateMark(_) => {
            (InputErrorKind::Schema, String::new())
        }
        _ => (InputErrorKind::Invariant, String::new()),
    };
    InputError::new(kind, path, format!("{prefix}{pointer}"), e)
}

fn build_graph(path: &Path, prefix: &str, value: Value) -> Result<DualGraph, InputError> {
    let raw: RawGraph = from_value(path, prefix, value)?;
    let g = DualGraph::new(raw.vertices.clone(), raw.edges.clone(), raw.marks.clone())
        .map_err(|e| graph_error(path, prefix, &raw, e))?;
    g.ensure_tree()
        .map_err(|e| graph_error(path, prefix, &raw, e))?;
    Ok(g)
}

/// Reads a dual graph of compact type.
pub fn parse_graph(path: &Path) -> Result<DualGraph, InputError> {
    build_graph(path, "", read_json(path)?)
}

/// Reads a multidegree on `g`; both sides of each node must sum to `d`.
pub fn parse_multidegree(path: &Path, g: &DualGraph) -> Result<Multidegree, InputError> {
    let raw: RawMultidegree = from_value(path, "", read_json(path)?)?;
    Multidegree::from_raw(g, &raw).map_err(|e| {
        let pointer = match &e {
            MultidegreeError::NotASide { index, .. }
            | MultidegreeError::SidesDoNotSum { index, .. } => {
                format!("/sides/{index}")
            }
            MultidegreeError::NonPositiveDegree(_) => "/d".to_string(),
            MultidegreeError::MissingSide(_) | MultidegreeError::DuplicateSide(_) => {
                "/sides".to_string()
            }
            _ => String::new(),
        };
        InputError::new(InputErrorKind::Invariant, path, pointer, e)
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    total: Value,
    fibers: Vec<Fiber>,
}

/// Reads `{"total": graph, "fibers": [{"base", "nodal_edges"}]}`.
pub fn parse_family(path: &Path) -> Result<GraphFamily, InputError> {
    let raw: RawFamily = from_value(path, "", read_json(path)?)?;
    let total = build_graph(path, "/total", raw.total)?;
    GraphFamily::new(total, raw.fibers)
        .map_err(|e| InputError::new(InputErrorKind::Invariant, path, "/fibers", e))
}

/// Reads one automorphism object or an array of them.
pub fn parse_automorphisms(
    path: &Path,
    g: &DualGraph,
) -> Result<Vec<GraphAutomorphism>, InputError> {
    let value = read_json(path)?;
    let auts: Vec<GraphAutomorphism> = if value.is_array() {
        from_value(path, "", value)?
    } else {
        vec![from_value(path, "", value)?]
    };
    let many = auts.len() > 1;
    for (i, a) in auts.iter().enumerate() {
        a.validate(g).map_err(|e| {
            let pointer = if many { format!("/{i}") } else { String::new() };
            InputError::new(InputErrorKind::Invariant, path, pointer, e)
        })?;
    }
    Ok(auts)
}

fn invariant(path: &Path) -> impl Fn(DescentError) -> InputError + '_ {
    move |e| InputError::new(InputErrorKind::Invariant, path, "", e)
}

pub fn parse_site(path: &Path) -> Result<FiniteSite, InputError> {
    let raw: RawSite = from_value(path, "", read_json(path)?)?;
    FiniteSite::new(raw).map_err(invariant(path))
}

pub fn parse_sheaf(path: &Path, site: &FiniteSite) -> Result<SetSheaf, InputError> {
    let raw: RawSheaf = from_value(path, "", read_json(path)?)?;
    SetSheaf::from_raw(site, &raw).map_err(invariant(path))
}

pub fn parse_datum(path: &Path, site: &FiniteSite) -> Result<PiSheafDatum, InputError> {
    let raw: RawPiDatum = from_value(path, "", read_json(path)?)?;
    PiSheafDatum::new(site, &raw).map_err(invariant(path))
}

/// Box cap from the environment, or the default.
pub fn max_box() -> Result<usize, CliError> {
    match std::env::var(MAX_BOX_ENV) {
        Err(_) => Ok(DEFAULT_MAX_BOX),
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{MAX_BOX_ENV} must be a nonnegative integer, got `{v}`"
            ))
        }),
    }
}

fn options(special_position: bool) -> Result<EnumerationOptions, CliError> {
    Ok(EnumerationOptions {
        general_position: !special_position,
        max_box: max_box()?,
    })
}

fn partition(text: &str) -> Result<Partition, CliError> {
    Partition::parse(text).map_err(|e| CliError::Usage(e.to_string()))
}

struct Report {
    json: Value,
    text: String,
}

impl Report {
    fn number(n: impl fmt::Display) -> Self {
        let text = n.to_string();
        let json = Value::Number(text.parse().expect("integer"));
        Report { json, text }
    }

    fn value(json: Value) -> Self {
        let text = serde_json::to_string_pretty(&json).expect("serializable");
        Report { json, text }
    }

    fn with_text(json: Value, text: String) -> Self {
        Report { json, text }
    }
}

fn to_json(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn classes_json(c: &schubert::ClassCombination) -> Value {
    Value::Array(
        c.terms()
            .iter()
            .map(|(p, k)| json!({"partition": p, "coefficient": json_number(k)}))
            .collect(),
    )
}

fn run_command(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Rho { g, r, d } => Ok(Report::number(schubert::brill_noether_rho(*g, *r, *d))),
        Command::Schubert(SchubertCommand::Product { lambda, mu, grass }) => {
            let shape = schubert::BoxShape::for_grassmannian(grass.r, grass.d).map_err(domain)?;
            let (l, m) = (partition(lambda)?, partition(mu)?);
            for p in [&l, &m] {
                if !shape.contains(p) {
                    return Err(domain(format!(
                        "[{p}] does not fit the {}x{} box",
                        shape.rows, shape.cols
                    )));
                }
            }
            let c = schubert::lr_product(&l, &m, shape);
            Ok(Report::with_text(classes_json(&c), c.to_string()))
        }
        Command::Schubert(SchubertCommand::Count { classes, grass }) => {
            let parts = classes
                .iter()
                .map(|c| partition(c))
                .collect::<Result<Vec<_>, _>>()?;
            let n = schubert::intersection_number_rd(&parts, grass.r, grass.d).map_err(domain)?;
            Ok(Report::number(n))
        }
        Command::Lls(LlsCommand::Enumerate(a)) => {
            let g = parse_graph(&a.graph)?;
            let en =
                lls::enumerate_refined(&g, a.grass.r, a.grass.d, &options(a.special_position)?)
                    .map_err(domain)?;
            let mut text = format!("{} types, total {}\n", en.types.len(), en.total());
            for t in &en.types {
                let seqs: Vec<String> = t
                    .sequences()
                    .iter()
                    .map(|((e, v), s)| format!("{e}@{v}={:?}", s.as_slice()))
                    .collect();
                text.push_str(&format!("{} x {}\n", t.multiplicity(), seqs.join(" ")));
            }
            Ok(Report::with_text(to_json(&en), text.trim_end().to_string()))
        }
        Command::Lls(LlsCommand::Count(a)) => {
            let g = parse_graph(&a.graph)?;
            let n = lls::count_refined(&g, a.grass.r, a.grass.d, &options(a.special_position)?)
                .map_err(domain)?;
            Ok(Report::number(n))
        }
        Command::Lls(LlsCommand::RealCounts { d }) => {
            let rep = lls::real_count_formulas(*d).map_err(domain)?;
            let json = json!({
                "total": json_number(&rep.total),
                "cools_coppens": json_number(&rep.cools_coppens),
                "eremenko_gabrielov": json_number(&rep.eremenko_gabrielov),
            });
            let text = format!(
                "d = {}: total {}, Cools-Coppens {}, Eremenko-Gabrielov {}",
                rep.d, rep.total, rep.cools_coppens, rep.eremenko_gabrielov
            );
            Ok(Report::with_text(json, text))
        }
        Command::Lls(LlsCommand::Galois {
            graph,
            automorphisms,
            grass,
            special_position,
        }) => {
            let g = parse_graph(graph)?;
            let auts = parse_automorphisms(automorphisms, &g)?;
            let en = lls::enumerate_refined(&g, grass.r, grass.d, &options(*special_position)?)
                .map_err(domain)?;
            let count = lls::galois_invariant_count(&en, &auts).map_err(domain)?;
            let text = format!(
                "{} invariant strata, multiplicity {}\n{}",
                count.strata, count.invariant_multiplicity, count.note
            );
            Ok(Report::with_text(to_json(&count), text))
        }
        Command::Md(MdCommand::Fiber { graph, multidegree }) => {
            let g = parse_graph(graph)?;
            let md = parse_multidegree(multidegree, &g)?;
            let fd = multidegree::fiber_multidegree(&g, &md).map_err(domain)?;
            let text =
                fd.0.iter()
                    .map(|(v, k)| format!("{v}: {k}"))
                    .collect::<Vec<_>>()
                    .join("\n");
            Ok(Report::with_text(to_json(&fd.0), text))
        }
        Command::Md(MdCommand::Twist {
            graph,
            multidegree,
            edge,
            toward,
        }) => {
            let g = parse_graph(graph)?;
            let md = parse_multidegree(multidegree, &g)?;
            let side = Side::containing(&g, edge, toward).map_err(domain)?;
            let twisted = multidegree::twist(&md, &side).map_err(domain)?;
            Ok(Report::value(to_json(&twisted.to_raw())))
        }
        Command::Md(MdCommand::Sufficient { family, d, minimum }) => {
            let fam = parse_family(family)?;
            let all = multidegree::enumerate_uniformly_concentrated(&fam, *d).map_err(domain)?;
            let raw = |list: &[Multidegree]| -> Vec<RawMultidegree> {
                list.iter().map(Multidegree::to_raw).collect()
            };
            let greedy = find_sufficient_collection(&fam, *d).map_err(domain)?;
            let mut json = json!({
                "uniformly_concentrated": raw(&all),
                "collection": raw(&greedy),
            });
            let mut text = format!(
                "{} uniformly concentrated multidegrees; sufficient collection of size {}",
                all.len(),
                greedy.len()
            );
            if *minimum {
                let mins = minimum_sufficient_collections(&fam, *d).map_err(domain)?;
                text.push_str(&format!("; {} minimum collections", mins.len()));
                json["minimum"] = to_json(&mins.iter().map(|c| raw(c)).collect::<Vec<_>>());
            }
            Ok(Report::with_text(json, text))
        }
        Command::Descent(DescentCommand::Check {
            site,
            sheaf,
            sub,
            pi,
        }) => {
            let s = parse_site(site)?;
            let mut json = json!({
                "objects": s.object_count(),
                "arrows": s.arrow_count(),
                "coverings": s.coverings().len(),
                "fiber_products": s.declared_fiber_products().count(),
            });
            let mut text = format!(
                "site: {} objects, {} arrows, {} coverings",
                s.object_count(),
                s.arrow_count(),
                s.coverings().len()
            );
            if let Some(path) = sheaf {
                let f = parse_sheaf(path, &s)?;
                let rep = check_sheaf(&s, &f).map_err(domain)?;
                text.push_str(&format!("\nsheaf: {}", rep.is_sheaf));
                json["sheaf"] = to_json(&rep);
            }
            if let Some(objects) = sub {
                let (ok, detail) = match check_subsite_hypotheses(&s, objects) {
                    Ok(()) => (true, Value::Null),
                    Err(e @ DescentError::Hypothesis { .. }) => {
                        (false, Value::String(e.to_string()))
                    }
                    Err(e) => return Err(domain(e)),
                };
                text.push_str(&format!("\nsubcategory hypotheses: {ok}"));
                json["subcategory"] = json!({"ok": ok, "failure": detail});
            }
            if let Some(objects) = pi {
                let rep = check_factorable(&s, objects).map_err(domain)?;
                text.push_str(&format!("\nfactorable: {}", rep.factorable));
                json["factorable"] = to_json(&rep);
            }
            Ok(Report::with_text(json, text))
        }
        Command::Descent(DescentCommand::Glue { site, datum }) => {
            let s = parse_site(site)?;
            let d = parse_datum(datum, &s)?;
            let glued = glue_pi_sheaf(&s, &d).map_err(domain)?;
            Ok(Report::value(to_json(&glued.to_raw(&s))))
        }
    }
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    let report = run_command(&cli.command)?;
    match cli.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&report.json).expect("serializable")
        )?,
        Format::Text => writeln!(out, "{}", report.text)?,
    }
    Ok(())
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "llskit: {e}");
            e.exit_code()
        }
    }
}
