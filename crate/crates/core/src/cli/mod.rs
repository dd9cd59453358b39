//! The `trunca` command line.

mod output;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::charfield::{self, TorusCharacter};
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, parse_q_list};
use crate::parabolic::StandardParabolic;
use crate::polyhedra::{ComplementaryPolyhedron, PolyhedronContext};
use crate::quasipoly::{brute_sum, product_eval, LatticeSpec};
use crate::rootdata::{AVector, RootDatum, WeylGroup};
use crate::truncation::TruncationContext;
use crate::verify::{self, Samples};

pub use output::{Format, Table};

#[derive(Parser, Debug)]
#[command(name = "trunca", version, about = "Exact truncation combinatorics and character sums")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the roots of a datum.
    Roots(TypeArg),
    /// List the Weyl group with reduced words.
    Weyl(TypeArg),
    /// Canonical refinement of a seeded or given complementary polyhedron.
    Refine(RefineArgs),
    /// Γ_P(H, X).
    Gamma(GammaArgs),
    /// Lattice sum of Γ_P by brute force and by the product formula.
    Qpsum(QpsumArgs),
    /// Character sums and J for the elliptic SL_l computation.
    Slltrace(SlltraceArgs),
    /// Levi-centre criterion for split SL_n.
    Filtercheck(FilterArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct TypeArg {
    /// Cartan type such as A2, B2, A1xA1 or a JSON matrix.
    #[arg(long = "type")]
    pub ty: String,
    /// Rank of the central part.
    #[arg(long, default_value_t = 0)]
    pub central: usize,
}

#[derive(Args, Debug)]
pub struct RefineArgs {
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Ambient standard parabolic Q as 1-based indices, default G.
    #[arg(long = "Q")]
    pub q: Option<String>,
    /// JSON map from reduced word to vertex coordinates.
    #[arg(long)]
    pub polyhedron: Option<PathBuf>,
    /// Print the polyhedron as JSON instead of the degree table.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[arg(long = "type")]
    pub ty: String,
    /// Standard parabolic as 1-based indices; "" is the Borel.
    #[arg(long = "P", default_value = "")]
    pub p: String,
    #[arg(long = "H", allow_hyphen_values = true)]
    pub h: Option<String>,
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: Option<String>,
    /// CSV file with rows h_1..h_n,x_1..x_n.
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct QpsumArgs {
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long = "P", default_value = "")]
    pub p: String,
    #[arg(long, default_value_t = 3)]
    pub q: u64,
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: Option<String>,
    /// coroot or coweight.
    #[arg(long, default_value = "coroot")]
    pub lattice: String,
    /// CSV file with one X per row.
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SlltraceArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub l: u64,
    #[arg(long = "theta-lambda")]
    pub theta_lambda: Option<u64>,
    #[arg(long = "theta-mu")]
    pub theta_mu: Option<u64>,
    /// Tabulate Frobenius-orbit representatives of general-position characters.
    #[arg(long)]
    pub sweep: bool,
    /// With --sweep, list every pair instead of orbit representatives.
    #[arg(long)]
    pub all_pairs: bool,
}

#[derive(Args, Debug)]
pub struct FilterArgs {
    #[arg(long, default_value = "SL2")]
    pub group: String,
    #[arg(long)]
    pub q: u64,
    /// Exponents c_1..c_{n−1}, comma separated.
    #[arg(long = "theta-lambda")]
    pub theta_lambda: String,
    #[arg(long = "theta-mu")]
    pub theta_mu: String,
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// TOML run configuration; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long = "type")]
    pub ty: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub vectors: Option<usize>,
    #[arg(long)]
    pub polyhedra: Option<usize>,
    #[arg(long)]
    pub foldings: Option<usize>,
    #[arg(long = "lattice-points")]
    pub lattice_points: Option<usize>,
    #[arg(long = "held-out")]
    pub held_out: Option<usize>,
}

/// A verification run, from flags or a TOML file.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub suite: Option<String>,
    #[serde(rename = "type")]
    pub ty: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<SampleOverrides>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SampleOverrides {
    pub vectors: Option<usize>,
    pub polyhedra: Option<usize>,
    pub foldings: Option<usize>,
    pub lattice_points: Option<usize>,
    pub held_out: Option<usize>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    fn samples(&self) -> Samples {
        let mut s = Samples::default();
        if let Some(o) = &self.samples {
            s.vectors = o.vectors.unwrap_or(s.vectors);
            s.polyhedra = o.polyhedra.unwrap_or(s.polyhedra);
            s.foldings = o.foldings.unwrap_or(s.foldings);
            s.lattice_points = o.lattice_points.unwrap_or(s.lattice_points);
            s.held_out = o.held_out.unwrap_or(s.held_out);
        }
        s
    }
}

/// Process exit status: 0 success, 1 failed check or computation error,
/// 2 invalid configuration.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownType(_) | Error::Parse(_) | Error::InvalidCartan(_) | Error::DimensionMismatch { .. } => 2,
        _ => 1,
    }
}

pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn datum(ty: &str, central: usize) -> Result<RootDatum> {
    RootDatum::new(ty, central)
}

fn parabolic(d: &RootDatum, s: &str) -> Result<StandardParabolic> {
    let idx: Vec<usize> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1).ok_or_else(|| Error::Parse(format!("bad simple root index `{t}`"))))
        .collect::<Result<_>>()?;
    StandardParabolic::from_indices(d, &idx)
}

fn vector(d: &RootDatum, s: &str) -> Result<AVector> {
    let v = AVector(parse_q_list(s)?);
    d.check_vector(&v)?;
    Ok(v)
}

fn qs(v: &AVector) -> Value {
    Value::Array(v.0.iter().map(|x| Value::String(fmt_q(x))).collect())
}

fn read_csv(path: &Path) -> Result<Vec<Vec<String>>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    r.records()
        .map(|rec| rec.map(|r| r.iter().map(str::to_string).collect()).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

fn run(cli: Cli) -> Result<i32> {
    let mut format = cli.format;
    let mut output = cli.output.clone();
    let (table, code) = match cli.command {
        Command::Roots(a) => (cmd_roots(&a)?, 0),
        Command::Weyl(a) => (cmd_weyl(&a)?, 0),
        Command::Refine(a) => (cmd_refine(&a)?, 0),
        Command::Gamma(a) => (cmd_gamma(&a)?, 0),
        Command::Qpsum(a) => cmd_qpsum(&a)?,
        Command::Slltrace(a) => (cmd_slltrace(&a)?, 0),
        Command::Filtercheck(a) => (cmd_filtercheck(&a)?, 0),
        Command::Verify(a) => {
            let cfg = verify_config(&a)?;
            format = format.or(cfg.format);
            output = output.or(cfg.output.clone());
            cmd_verify(&cfg)?
        }
    };
    table.emit(format.unwrap_or(Format::Json), output.as_deref())?;
    Ok(code)
}

fn cmd_roots(a: &TypeArg) -> Result<Table> {
    let d = datum(&a.ty, a.central)?;
    let mut t = Table::new(&["index", "root", "coroot", "positive", "reduced"]);
    for (i, r) in d.roots().iter().enumerate() {
        t.push(vec![
            json!(i),
            Value::Array(r.form.0.iter().map(|x| Value::String(fmt_q(x))).collect()),
            qs(&r.coroot),
            json!(r.positive),
            json!(r.reduced),
        ]);
    }
    Ok(t)
}

fn cmd_weyl(a: &TypeArg) -> Result<Table> {
    let d = datum(&a.ty, a.central)?;
    let w = WeylGroup::new(&d)?;
    let mut t = Table::new(&["index", "word", "length"]);
    for (i, e) in w.elements().iter().enumerate() {
        t.push(vec![json!(i), json!(e.word_string()), json!(e.length)]);
    }
    Ok(t)
}

/// Parses "s1s2" or "e" into a 0-based word.
fn parse_word(s: &str) -> Result<Vec<usize>> {
    if s == "e" || s.is_empty() {
        return Ok(vec![]);
    }
    s.split('s')
        .skip(1)
        .map(|t| t.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1).ok_or_else(|| Error::Parse(format!("bad word `{s}`"))))
        .collect()
}

pub fn polyhedron_to_json(cp: &ComplementaryPolyhedron, w: &WeylGroup) -> Value {
    let mut m = serde_json::Map::new();
    for (s, v) in cp.vertices.iter().enumerate() {
        m.insert(w.element(s).word_string(), qs(v));
    }
    Value::Object(m)
}

pub fn polyhedron_from_json(text: &str, d: &RootDatum, w: &WeylGroup) -> Result<ComplementaryPolyhedron> {
    let v: std::collections::BTreeMap<String, Vec<String>> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut verts: Vec<Option<AVector>> = vec![None; w.order()];
    for (word, coords) in v {
        let idx = w.from_word(&parse_word(&word)?)?;
        let vec = AVector(coords.iter().map(|c| crate::linalg::parse_q(c)).collect::<Result<_>>()?);
        d.check_vector(&vec)?;
        verts[idx] = Some(vec);
    }
    ComplementaryPolyhedron::from_partial(w, verts)
}

fn cmd_refine(a: &RefineArgs) -> Result<Table> {
    let c = PolyhedronContext::new(datum(&a.ty, 0)?)?;
    let d = c.datum().clone();
    let cp = match &a.polyhedron {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            let cp = polyhedron_from_json(&text, &d, &c.weyl)?;
            if let Some(v) = cp.validate(&d, &c.weyl)? {
                return Err(Error::Precondition(format!("not a complementary polyhedron at element {} and s{}", v.s, v.simple + 1)));
            }
            cp
        }
        None => c.random_polyhedron(&mut ChaCha8Rng::seed_from_u64(a.seed)),
    };
    if a.dump {
        let mut t = Table::new(&["word", "vertex"]);
        for (s, v) in cp.vertices.iter().enumerate() {
            t.push(vec![json!(c.weyl.element(s).word_string()), qs(v)]);
        }
        return Ok(t);
    }
    let q = match &a.q {
        Some(s) => parabolic(&d, s)?,
        None => c.trunc.full(),
    };
    let r = c.canonical_refinement(&cp, &q)?;
    let mut t = Table::new(&["parabolic", "degree", "semistable", "canonical"]);
    for (p, deg) in &r.degrees {
        t.push(vec![
            json!(p.describe(&c.weyl)),
            json!(fmt_q(deg)),
            json!(c.is_semistable(&cp, p)?),
            json!(*p == r.parabolic),
        ]);
    }
    Ok(t)
}

fn cmd_gamma(a: &GammaArgs) -> Result<Table> {
    let ctx = TruncationContext::new(datum(&a.ty, 0)?);
    let d = ctx.datum().clone();
    let p = parabolic(&d, &a.p)?;
    let mut rows: Vec<(AVector, AVector)> = vec![];
    if let Some(path) = &a.batch {
        for rec in read_csv(path)? {
            if rec.len() != 2 * d.dim() {
                return Err(Error::DimensionMismatch { expected: 2 * d.dim(), got: rec.len() });
            }
            let h = vector(&d, &rec[..d.dim()].join(","))?;
            let x = vector(&d, &rec[d.dim()..].join(","))?;
            rows.push((h, x));
        }
    } else {
        let h = a.h.as_deref().ok_or_else(|| Error::Parse("--H or --batch is required".into()))?;
        let x = a.x.as_deref().ok_or_else(|| Error::Parse("--X or --batch is required".into()))?;
        rows.push((vector(&d, h)?, vector(&d, x)?));
    }
    let mut t = Table::new(&["P", "H", "X", "gamma"]);
    for (h, x) in rows {
        let g = ctx.gamma(&p, &h, &x)?;
        t.push(vec![json!(p.to_string()), qs(&h), qs(&x), json!(g)]);
    }
    Ok(t)
}

fn cmd_qpsum(a: &QpsumArgs) -> Result<(Table, i32)> {
    let ctx = TruncationContext::new(datum(&a.ty, 0)?);
    let d = ctx.datum().clone();
    let p = parabolic(&d, &a.p)?;
    let spec = match a.lattice.as_str() {
        "coroot" => LatticeSpec::coroot(&ctx, p)?,
        "coweight" => LatticeSpec::coweight(&ctx, p)?,
        other => return Err(Error::Parse(format!("unknown lattice `{other}`"))),
    };
    let xs: Vec<AVector> = match (&a.batch, &a.x) {
        (Some(path), _) => read_csv(path)?.iter().map(|r| vector(&d, &r.join(","))).collect::<Result<_>>()?,
        (None, Some(x)) => vec![vector(&d, x)?],
        (None, None) => return Err(Error::Parse("--X or --batch is required".into())),
    };
    let mut t = Table::new(&["P", "X", "q", "brute", "product", "equal"]);
    let mut code = 0;
    for x in xs {
        let b = brute_sum(&ctx, &spec, &x)?;
        let pe = product_eval(&ctx, &spec, &x, a.q)?;
        if b != pe {
            code = 1;
        }
        t.push(vec![json!(p.to_string()), qs(&x), json!(a.q), json!(fmt_q(&b)), json!(fmt_q(&pe)), json!(b == pe)]);
    }
    Ok((t, code))
}

fn opt_json<T: serde::Serialize>(v: Option<T>) -> Value {
    v.map(|x| json!(x)).unwrap_or(Value::Null)
}

fn cmd_slltrace(a: &SlltraceArgs) -> Result<Table> {
    let torus = charfield::build_torus(a.q, a.l)?;
    let pairs: Vec<(u64, u64)> = match (a.theta_lambda, a.theta_mu, a.sweep) {
        (Some(x), Some(y), false) => vec![(x, y)],
        (None, None, true) => {
            let gp: Vec<u64> = torus.characters().filter(|c| charfield::general_position(*c, &torus)).map(|c| c.k).collect();
            let reps: Vec<u64> = if a.all_pairs {
                gp
            } else {
                gp.into_iter().filter(|&k| torus.orbit(TorusCharacter { k })[0] == k).collect()
            };
            reps.iter().flat_map(|&x| reps.iter().map(move |&y| (x, y))).collect()
        }
        _ => return Err(Error::Parse("give --theta-lambda and --theta-mu, or --sweep".into())),
    };
    let mut t = Table::new(&["k_lambda", "k_mu", "general_position", "central_ok", "contragredient", "char_sum", "J"]);
    for (x, y) in pairs {
        let r = charfield::sl_trace_row(TorusCharacter { k: x }, TorusCharacter { k: y }, &torus)?;
        t.push(vec![
            json!(r.k_lambda),
            json!(r.k_mu),
            json!(r.general_position),
            json!(r.central_ok),
            opt_json(r.contragredient),
            opt_json(r.char_sum),
            opt_json(r.j.as_ref().map(fmt_q)),
        ]);
    }
    Ok(t)
}

fn exps(s: &str) -> Result<Vec<u64>> {
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad exponent `{t}`")))).collect()
}

fn cmd_filtercheck(a: &FilterArgs) -> Result<Table> {
    let l = exps(&a.theta_lambda)?;
    let m = exps(&a.theta_mu)?;
    let pass = charfield::cuspidal_filter_check(&a.group, a.q, &l, &m)?;
    let mut t = Table::new(&["group", "q", "theta_lambda", "theta_mu", "pass"]);
    t.push(vec![json!(a.group), json!(a.q), json!(l), json!(m), json!(pass)]);
    Ok(t)
}

fn verify_config(a: &VerifyArgs) -> Result<RunConfig> {
    let mut cfg = match &a.config {
        Some(p) => RunConfig::from_toml(&std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?)?,
        None => RunConfig::default(),
    };
    cfg.suite = a.suite.clone().or(cfg.suite);
    cfg.ty = a.ty.clone().or(cfg.ty);
    cfg.seed = a.seed.or(cfg.seed);
    let mut s = cfg.samples.take().unwrap_or_default();
    s.vectors = a.vectors.or(s.vectors);
    s.polyhedra = a.polyhedra.or(s.polyhedra);
    s.foldings = a.foldings.or(s.foldings);
    s.lattice_points = a.lattice_points.or(s.lattice_points);
    s.held_out = a.held_out.or(s.held_out);
    cfg.samples = Some(s);
    if let Some(t) = &cfg.ty {
        RootDatum::new(t, 0)?;
    }
    let suite = cfg.suite.as_deref().unwrap_or("all");
    if suite != "all" && !verify::SUITES.contains(&suite) {
        return Err(Error::Parse(format!("unknown suite `{suite}`")));
    }
    Ok(cfg)
}

fn cmd_verify(cfg: &RunConfig) -> Result<(Table, i32)> {
    let suite = cfg.suite.as_deref().unwrap_or("all");
    let mut recs = verify::run_suite(suite, cfg.ty.as_deref(), cfg.seed.unwrap_or(7), &cfg.samples())?;
    recs.sort_by(|a, b| (&a.suite, &a.case).cmp(&(&b.suite, &b.case)));
    let mut t = Table::new(&["suite", "case", "expected", "actual", "pass"]);
    let mut code = 0;
    for r in &recs {
        if !r.pass {
            code = 1;
        }
        t.push(vec![json!(r.suite), json!(r.case), json!(r.expected), json!(r.actual), json!(r.pass)]);
    }
    Ok((t, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parses() {
        let c = RunConfig::from_toml("suite = \"inversion\"\ntype = \"A2\"\nseed = 7\nformat = \"csv\"\n[samples]\nvectors = 10\n").unwrap();
        assert_eq!(c.suite.as_deref(), Some("inversion"));
        assert_eq!(c.format, Some(Format::Csv));
        assert_eq!(c.samples().vectors, 10);
        assert_eq!(c.samples().polyhedra, 1000);
        assert!(RunConfig::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn words_round_trip() {
        let d = RootDatum::new("B2", 0).unwrap();
        let w = WeylGroup::new(&d).unwrap();
        for (i, e) in w.elements().iter().enumerate() {
            assert_eq!(w.from_word(&parse_word(&e.word_string()).unwrap()).unwrap(), i);
        }
    }

    #[test]
    fn polyhedron_json_round_trip() {
        let c = PolyhedronContext::new(RootDatum::new("A2", 0).unwrap()).unwrap();
        let cp = c.random_polyhedron(&mut ChaCha8Rng::seed_from_u64(1));
        let text = polyhedron_to_json(&cp, &c.weyl).to_string();
        assert_eq!(polyhedron_from_json(&text, c.datum(), &c.weyl).unwrap(), cp);
    }
}
