//! `submodcodes` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 formula mismatch or failed
//! certification, 4 enumeration budget exceeded.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use submodcodes::codes::{self, Code, CodeJson};
use submodcodes::counting::{self, EdType};
use submodcodes::polynomial::IntPolynomial;
use submodcodes::search::{self, GridPoint, Status};
use submodcodes::{enumerate, metric, ChainRing, Error, HomothetyClass, RingKind, Submodule};

#[derive(Parser, Debug)]
#[command(name = "submodcodes", version, about = "Spherical submodule codes over finite chain rings")]
struct Cli {
    /// Cap on enumerated objects (default: $SUBMODCODES_BUDGET or 1000000).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List submodules, classes, balls, spheres or Grassmannians as JSON lines.
    Enumerate(EnumerateArgs),
    /// Build a code and write it as JSON.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Distance matrix of a code file.
    Dist(DistArgs),
    /// Exact optimal codes by clique search.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Counting polynomials.
    #[command(subcommand)]
    Count(CountCommand),
    /// Graphviz rendering of the classes around [V_r].
    ExportDot(DotArgs),
}

#[derive(Args, Debug, Clone)]
struct RingArgs {
    /// `z <p>` for Z/p^r, `poly <p> <s>` for F_{p^s}[t]/(t^r).
    #[arg(long, num_args = 2..=3, value_names = ["KIND", "P"], default_values = ["z", "2"])]
    ring: Vec<String>,
    /// Nilpotency index r.
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Ambient rank d.
    #[arg(long, default_value_t = 2)]
    d: usize,
}

impl RingArgs {
    fn build(&self) -> anyhow::Result<Arc<ChainRing>> {
        let kind: RingKind = self.ring[0].parse().map_err(|e: Error| anyhow!(e))?;
        let num = |i: usize, what: &str| -> anyhow::Result<u32> {
            let text = self.ring.get(i).ok_or_else(|| anyhow!(Error::InvalidParameter(format!("--ring is missing {what}"))))?;
            text.parse().map_err(|_| anyhow!(Error::InvalidParameter(format!("{what} = {text:?} is not a number"))))
        };
        let p = num(1, "p")?;
        let s = match kind {
            RingKind::IntegerModular if self.ring.len() > 2 => {
                return Err(anyhow!(Error::InvalidParameter("--ring z takes only p".into())));
            }
            RingKind::IntegerModular => 1,
            RingKind::TruncatedPolynomial => num(2, "s")?,
        };
        if self.d < 1 {
            return Err(anyhow!(Error::InvalidParameter("d must be positive".into())));
        }
        Ok(Arc::new(ChainRing::new(kind, p, s, self.r)?))
    }

    fn config(&self, ring: &ChainRing) -> Value {
        json!({ "ring": ring.spec(), "ring_name": ring.to_string(), "d": self.d })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Submodules,
    Classes,
    Ball,
    Sphere,
    Boundary,
    Grassmannian,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, value_enum, default_value = "classes")]
    what: What,
    /// Rank for `grassmannian`.
    #[arg(long)]
    n: Option<usize>,
    /// Radius for `ball` and `sphere` (default r).
    #[arg(long)]
    radius: Option<u32>,
    /// Print only the summary line.
    #[arg(long)]
    count_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Lifted Grassmannian with minimum distance at least 2 alpha.
    Sperner {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        alpha: u32,
        #[command(flatten)]
        out: CodeOut,
    },
    /// Orbit of a diagonal module under coordinate permutations.
    Perm {
        #[command(flatten)]
        ring: RingArgs,
        /// Comma-separated divisor type, e.g. 1,1,0,0 (sets d).
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<u32>,
        #[command(flatten)]
        out: CodeOut,
    },
    /// Coordinate submodules of rank n.
    Free {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: CodeOut,
    },
    /// R e_1, ..., R e_d and R (e_1 + ... + e_d).
    Star {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        out: CodeOut,
    },
}

#[derive(Args, Debug)]
struct CodeOut {
    /// Output file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print the distance matrix to stderr.
    #[arg(long)]
    show_matrix: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct DistArgs {
    /// Code JSON file.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: MatrixFormat,
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// Largest spherical code with minimum distance at least psi.
    Card {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        psi: u32,
        /// Prime the search with the Sperner code for this alpha.
        #[arg(long)]
        seed_alpha: Option<u32>,
        /// Write the witness code here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Largest minimum distance of a spherical code with at least chi members.
    Dist {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Closed forms against constructions and exact search on a grid.
    Certify {
        /// `small`, or a JSON file with a list of {kind, p, s, r, d, alpha}.
        #[arg(long, default_value = "small")]
        grid: String,
        /// Directory for witness code files.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CountCommand {
    /// Number of classes within distance r of [V_r], as a polynomial in q.
    Ball {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Number of boundary classes.
    Sphere {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Classes of one divisor type.
    Beps {
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<u32>,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Gaussian binomial coefficient.
    Gauss {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Free rank-n submodules of (R)^d.
    Grassmannian {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
    },
    /// Largest permutation code with minimum distance 2 alpha: closed form and exhaustive value.
    PermBound {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        alpha: u32,
    },
}

#[derive(Args, Debug)]
struct DotArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Mark the members of this code file.
    #[arg(long)]
    highlight: Option<PathBuf>,
    /// Mark the classes at this distance from [V_r].
    #[arg(long)]
    highlight_sphere: Option<u32>,
    /// Only the diagonal classes (required for d > 2).
    #[arg(long)]
    diagonal_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A run that completed but whose results disagree with a closed form.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.unwrap_or_else(submodcodes::enumeration_budget);
    match run(cli.command, budget) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = if err.downcast_ref::<Mismatch>().is_some() {
                3
            } else if matches!(err.downcast_ref::<Error>(), Some(Error::BudgetExceeded { .. })) {
                4
            } else {
                2
            };
            ExitCode::from(code)
        }
    }
}

fn log_config(command: &str, mut config: Value, budget: u64) {
    config["command"] = command.into();
    config["budget"] = budget.into();
    eprintln!("config: {config}");
}

fn writer(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn big_json(x: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    x.to_u64().map(Value::from).unwrap_or_else(|| x.to_string().into())
}

fn run(command: Command, budget: u64) -> anyhow::Result<()> {
    match command {
        Command::Enumerate(args) => cmd_enumerate(args, budget),
        Command::Code(cmd) => cmd_code(cmd, budget),
        Command::Dist(args) => cmd_dist(args),
        Command::Search(cmd) => cmd_search(cmd, budget),
        Command::Count(cmd) => cmd_count(cmd),
        Command::ExportDot(args) => cmd_export_dot(args, budget),
    }
}

/// `sum b_eps(q) * weight(eps)` over all types.
fn weighted_type_count(d: usize, r: u32, q: u32, weight: impl Fn(&EdType) -> u64) -> num_bigint::BigInt {
    counting::ed_types(d, r)
        .iter()
        .map(|e| counting::b_epsilon(e).eval(q as i64) * num_bigint::BigInt::from(weight(e)))
        .sum()
}

fn cmd_enumerate(args: EnumerateArgs, budget: u64) -> anyhow::Result<()> {
    let ring = args.ring.build()?;
    let (d, r, q) = (args.ring.d, ring.r(), ring.q());
    let radius = args.radius.unwrap_or(r);
    let mut config = args.ring.config(&ring);
    config["what"] = format!("{:?}", args.what).to_lowercase().into();
    config["radius"] = radius.into();
    config["n"] = json!(args.n);
    log_config("enumerate", config, budget);
    if radius > r {
        bail!(Error::InvalidParameter(format!("radius {radius} exceeds r = {r}")));
    }
    if d < 2 {
        bail!(Error::InvalidParameter("enumeration needs d >= 2".into()));
    }
    let mut out = writer(args.out.as_deref())?;
    let class_line = |i: usize, c: &HomothetyClass| json!({ "index": i, "rep": c.rep().to_json(), "depth": c.depth(), "size": c.size() });
    let module_line = |i: usize, u: &Submodule| json!({ "index": i, "module": u.to_json(), "ed_type": u.ed_type() });
    let mut summary = json!({ "what": format!("{:?}", args.what).to_lowercase() });
    let (count, expected): (usize, num_bigint::BigInt) = match args.what {
        What::Submodules => {
            let all = enumerate::enumerate_submodules(&ring, d, budget)?;
            if !args.count_only {
                for (i, u) in all.iter().enumerate() {
                    writeln!(out, "{}", module_line(i, u))?;
                }
            }
            // every class of type eps has r - eps_1 + 1 members
            (all.len(), weighted_type_count(d, r, q, |e| (r - e.top() + 1) as u64))
        }
        What::Boundary => {
            let all = enumerate::enumerate_boundary(&ring, d, budget)?;
            if !args.count_only {
                for (i, u) in all.iter().enumerate() {
                    writeln!(out, "{}", module_line(i, u))?;
                }
            }
            let poly = counting::sphere_polynomial(d as u32, r)?;
            summary["polynomial"] = poly.to_string().into();
            (all.len(), poly.eval(q as i64))
        }
        What::Classes | What::Ball | What::Sphere => {
            let classes = if args.what == What::Sphere {
                metric::sphere(&ring, d, radius, budget)?
            } else {
                metric::ball(&ring, d, radius, budget)?
            };
            if !args.count_only {
                for (i, c) in classes.iter().enumerate() {
                    writeln!(out, "{}", class_line(i, c))?;
                }
            }
            if radius == r && args.what != What::Sphere {
                summary["polynomial"] = counting::ball_polynomial(d as u32, r, budget)?.to_string().into();
            }
            let sphere_only = args.what == What::Sphere;
            let expected = weighted_type_count(d, r, q, |e| u64::from(if sphere_only { e.top() == radius } else { e.top() <= radius }));
            (classes.len(), expected)
        }
        What::Grassmannian => {
            let n = args.n.ok_or_else(|| anyhow!(Error::InvalidParameter("--what grassmannian needs --n".into())))?;
            let all = enumerate::enumerate_grassmannian(&ring, d, n, budget)?;
            if !args.count_only {
                for (i, u) in all.iter().enumerate() {
                    writeln!(out, "{}", module_line(i, u))?;
                }
            }
            (all.len(), counting::grassmannian_count(d as u32, n as u32, q, r)?)
        }
    };
    let matches = num_bigint::BigInt::from(count) == expected;
    summary["count"] = count.into();
    summary["expected"] = big_json(&expected);
    summary["match"] = matches.into();
    writeln!(out, "{}", json!({ "summary": summary }))?;
    out.flush()?;
    if !matches {
        return Err(Mismatch(format!("enumerated {count}, formula gives {expected}")).into());
    }
    Ok(())
}

fn render_matrix(code: &Code) -> String {
    let m = code.distance_matrix();
    let width = m.d.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut s = String::new();
    for row in &m.d {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

fn write_code(code: &Code, out: &CodeOut) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(&code.to_json())?;
    let mut w = writer(out.out.as_deref())?;
    writeln!(w, "{text}")?;
    w.flush()?;
    eprintln!("{} code: {} members, minimum distance {}", code.construction().kind, code.len(), code.min_distance());
    if out.show_matrix {
        eprint!("{}", render_matrix(code));
    }
    Ok(())
}

fn cmd_code(cmd: CodeCommand, budget: u64) -> anyhow::Result<()> {
    match cmd {
        CodeCommand::Sperner { ring, alpha, out } => {
            let rg = ring.build()?;
            let mut config = ring.config(&rg);
            config["alpha"] = alpha.into();
            log_config("code sperner", config, budget);
            let code = codes::sperner_code(&rg, ring.d, alpha, budget)?;
            write_code(&code, &out)
        }
        CodeCommand::Perm { ring, eps, out } => {
            let rg = ring.build()?;
            let mut config = ring.config(&rg);
            config["d"] = eps.len().into();
            config["eps"] = json!(eps);
            log_config("code perm", config, budget);
            let code = codes::permutation_code(&rg, &EdType::new(eps)?)?;
            write_code(&code, &out)
        }
        CodeCommand::Free { ring, n, out } => {
            let rg = ring.build()?;
            let mut config = ring.config(&rg);
            config["n"] = n.into();
            log_config("code free", config, budget);
            let code = codes::free_code(&rg, ring.d, n)?;
            write_code(&code, &out)
        }
        CodeCommand::Star { ring, out } => {
            let rg = ring.build()?;
            log_config("code star", ring.config(&rg), budget);
            let code = codes::star_configuration(&rg, ring.d)?;
            write_code(&code, &out)
        }
    }
}

fn read_code(path: &Path) -> anyhow::Result<Code> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json: CodeJson = serde_json::from_str(&text).map_err(|e| anyhow!(Error::Parse(format!("{}: {e}", path.display()))))?;
    Ok(Code::from_json(&json)?)
}

fn cmd_dist(args: DistArgs) -> anyhow::Result<()> {
    log_config("dist", json!({ "in": args.input, "format": format!("{:?}", args.format).to_lowercase() }), 0);
    let code = read_code(&args.input)?;
    let m = code.distance_matrix();
    let mut out = writer(None)?;
    match args.format {
        MatrixFormat::Csv => write!(out, "{}", m.to_csv())?,
        MatrixFormat::Json => {
            let labels: Vec<String> = code.members().iter().map(|c| c.rep().to_string()).collect();
            writeln!(out, "{}", m.to_json(&labels))?
        }
    }
    out.flush()?;
    eprintln!("min_distance: {}", m.min_distance()?);
    Ok(())
}

fn save_witness(code: &Code, path: Option<&Path>) -> anyhow::Result<()> {
    if let Some(p) = path {
        fs::write(p, serde_json::to_string_pretty(&code.to_json())? + "\n").with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn cmd_search(cmd: SearchCommand, budget: u64) -> anyhow::Result<()> {
    match cmd {
        SearchCommand::Card { ring, psi, seed_alpha, witness } => {
            let rg = ring.build()?;
            let mut config = ring.config(&rg);
            config["psi"] = psi.into();
            config["seed_alpha"] = json!(seed_alpha);
            log_config("search card", config, budget);
            let graph = search::build_graph(&rg, ring.d, psi, budget)?;
            let seed = seed_alpha.map(|a| codes::sperner_code(&rg, ring.d, a, budget)).transpose()?;
            let (size, code) = search::card_on_graph(&graph, seed.as_ref())?;
            // closed forms exist for even psi in rank two and for psi = 2r
            let r = rg.r();
            let formula = if psi % 2 == 1 {
                None
            } else if ring.d == 2 {
                Some(codes::exact_card_d2(rg.q(), r, psi / 2)?)
            } else if psi == 2 * r {
                Some(codes::exact_card_maxdist(ring.d as u32, rg.q())?)
            } else {
                None
            };
            let mut line = json!({ "psi": psi, "card": size, "vertices": graph.len(), "min_distance": code.min_distance() });
            if let Some(f) = &formula {
                line["formula"] = big_json(f);
                line["match"] = (num_bigint::BigInt::from(size) == *f).into();
            }
            println!("{line}");
            save_witness(&code, witness.as_deref())?;
            match formula {
                Some(f) if num_bigint::BigInt::from(size) != f => Err(Mismatch(format!("search found {size}, closed form {f}")).into()),
                _ => Ok(()),
            }
        }
        SearchCommand::Dist { ring, chi, witness } => {
            let rg = ring.build()?;
            let mut config = ring.config(&rg);
            config["chi"] = chi.into();
            log_config("search dist", config, budget);
            let (value, code) = search::dist_exact(&rg, ring.d, chi, budget)?;
            println!("{}", json!({ "chi": chi, "dist": value, "witness_size": code.len() }));
            save_witness(&code, witness.as_deref())
        }
        SearchCommand::Certify { grid, witness_dir } => {
            let points: Vec<GridPoint> = if grid == "small" {
                search::small_grid()
            } else {
                let text = fs::read_to_string(&grid).with_context(|| format!("reading grid {grid}"))?;
                serde_json::from_str(&text).map_err(|e| anyhow!(Error::Parse(format!("grid {grid}: {e}"))))?
            };
            log_config("search certify", json!({ "grid": grid, "points": points.len(), "witness_dir": witness_dir }), budget);
            let cert = search::certify_theorems(&points, budget);
            if let Some(dir) = &witness_dir {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, code) in &cert.witnesses {
                    save_witness(code, Some(&dir.join(format!("{name}.json"))))?;
                }
            }
            println!("{}", serde_json::to_string_pretty(&cert.entries)?);
            let failed = cert.entries.iter().filter(|e| e.status == Status::Fail).count();
            let skipped = cert.entries.iter().filter(|e| e.status == Status::Skipped).count();
            eprintln!("certify: {} entries, {failed} failed, {skipped} skipped", cert.entries.len());
            if failed > 0 {
                return Err(Mismatch(format!("{failed} certification entries failed")).into());
            }
            Ok(())
        }
    }
}

fn poly_report(p: &IntPolynomial, q: Option<u32>) -> anyhow::Result<Value> {
    let mut v = json!({ "polynomial": p.to_string(), "coefficients": p.to_json() });
    if let Some(q) = q {
        if !counting::is_prime_power(q) {
            bail!(Error::InvalidParameter(format!("q = {q} is not a prime power")));
        }
        v["value"] = big_json(&p.eval(q as i64));
    }
    Ok(v)
}

fn cmd_count(cmd: CountCommand) -> anyhow::Result<()> {
    log_config("count", json!({ "args": format!("{cmd:?}") }), 0);
    let line = match cmd {
        CountCommand::Ball { d, r, q } => {
            let p = counting::ball_polynomial(d, r, submodcodes::enumeration_budget())?;
            let (c, k) = counting::leading_term(d, r)?;
            let actual = (p.leading_coeff(), p.degree().unwrap_or(0) as u64);
            let mut v = poly_report(&p, q)?;
            let ok = actual == (c.clone(), k);
            v["leading_term"] = json!({ "predicted": [big_json(&c), k], "actual": [big_json(&actual.0), actual.1], "match": ok });
            println!("{v}");
            if !ok {
                return Err(Mismatch("leading term differs from prediction".into()).into());
            }
            return Ok(());
        }
        CountCommand::Sphere { d, r, q } => poly_report(&counting::sphere_polynomial(d, r)?, q)?,
        CountCommand::Beps { eps, q } => poly_report(&counting::b_epsilon(&EdType::new(eps)?), q)?,
        CountCommand::Gauss { a, b, q } => poly_report(&counting::gauss_binomial(a, b)?, q)?,
        CountCommand::Grassmannian { d, n, q, r } => {
            let x = counting::grassmannian_count(d, n, q, r)?;
            let dual = counting::grassmannian_count(d, d - n, q, r)?;
            json!({ "count": big_json(&x), "dual_count": big_json(&dual), "symmetric": x == dual })
        }
        CountCommand::PermBound { d, r, alpha } => {
            let b = codes::perm_cardinality_bound(d, r, alpha)?;
            if !b.agree {
                eprintln!("note: closed form {} and exhaustive optimum {} disagree", b.formula, b.exhaustive);
            }
            serde_json::to_value(&b)?
        }
    };
    println!("{line}");
    Ok(())
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn cmd_export_dot(args: DotArgs, budget: u64) -> anyhow::Result<()> {
    let ring = args.ring.build()?;
    let d = args.ring.d;
    let mut config = args.ring.config(&ring);
    config["diagonal_only"] = args.diagonal_only.into();
    config["highlight"] = json!(args.highlight);
    config["highlight_sphere"] = json!(args.highlight_sphere);
    log_config("export-dot", config, budget);
    if d > 2 && !args.diagonal_only {
        bail!(Error::InvalidParameter(format!("d = {d} > 2 needs --diagonal-only")));
    }
    let (vertices, labels): (Vec<HomothetyClass>, Vec<String>) = if args.diagonal_only {
        codes::pyrope_classes(&ring, d)?.into_iter().map(|(p, c)| (c, format!("{p:?}"))).unzip()
    } else {
        let classes = metric::ball(&ring, d, ring.r(), budget)?;
        let labels = classes.iter().map(|c| c.rep().to_string()).collect();
        (classes, labels)
    };
    let marked: BTreeSet<HomothetyClass> = match &args.highlight {
        Some(path) => {
            let code = read_code(path)?;
            if code.ring().spec() != ring.spec() || code.d() != d {
                bail!(Error::DimensionMismatch("highlighted code lives in another ambient module".into()));
            }
            code.members().iter().cloned().collect()
        }
        None => BTreeSet::new(),
    };
    let mut s = String::from("graph classes {\n  node [shape=point];\n");
    for (i, (c, label)) in vertices.iter().zip(&labels).enumerate() {
        let depth = c.depth();
        let mut attrs = vec![format!("tooltip=\"{}\"", dot_escape(label)), format!("depth={depth}")];
        if marked.contains(c) {
            attrs.push("color=blue, width=0.15".into());
        } else if args.highlight_sphere == Some(depth) {
            attrs.push("color=red, width=0.15".into());
        }
        let _ = writeln!(s, "  v{i} [{}];", attrs.join(", "));
    }
    // joined when pi Ũ ⊂ Ũ' ⊂ Ũ
    for i in 0..vertices.len() {
        for j in 0..vertices.len() {
            let (a, b) = (vertices[i].rep(), vertices[j].rep());
            if i != j && b.is_subset(a)? && a.scale_pi(1).is_subset(b)? {
                let _ = writeln!(s, "  v{i} -- v{j};");
            }
        }
    }
    s.push_str("}\n");
    let mut out = writer(args.out.as_deref())?;
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(())
}
