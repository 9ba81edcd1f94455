//! The `trigroup` command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input (parse or
//! validation failure), 3 undecided verdict, 4 no certificate found.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::billiards::{shoot, to_svg, Billiards, Certificate, CertifyError, Geometry, ShootError, TypedWord};
use crate::diagram::{all_angles, classify_curvature, dominate, export_presentation, link_graph, TriangleDiagram};
use crate::plane::{Scalar, Vec2};
use crate::quadrat::QuadRat;
use crate::tits::{classify_with_depth, TitsError, VerdictKind, CLASSIFY_VERIFY_DEPTH};
use crate::wallpaper::{canonical_rep, DEFAULT_LATTICE_DEPTH};
use crate::witness::{
    find_branching, free_pair, verify_free_pair_threaded, Witness, WitnessError, DEFAULT_VERIFY_DEPTH,
};

#[derive(Debug, Parser)]
#[command(
    name = "trigroup",
    version,
    about = "Triangles of finite groups: angles, curvature, billiards, free subgroups, Tits alternative"
)]
struct Cli {
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Diagram JSON file.
    diagram: PathBuf,
    /// Write machine-readable output to this file (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check injectivity, commutativity and that no angle equals π.
    Validate(Input),
    /// Gersten–Stallings angles with kernel witnesses and link girths.
    Angles(Input),
    /// Spherical, Euclidean or hyperbolic.
    Curvature(Input),
    /// Whether the coset complex branches, and why.
    Branching(Input),
    /// Explicit free pair, certified up to a word length.
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_VERIFY_DEPTH)]
        verify_depth: usize,
    },
    /// Large/small verdict with its trace.
    Tits {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = CLASSIFY_VERIFY_DEPTH)]
        verify_depth: usize,
    },
    /// Billiard certificate for a word `type:elem,type:elem,…`.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Look for a periodic sequence (infinite order) instead.
        #[arg(long)]
        infinite_order: bool,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Simulate a billiard path; coordinates are `p/q` or `p/q|r/s` (`p/q + r/s·√3`).
    Shoot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "X,Y")]
        start: String,
        #[arg(long, value_name = "DX,DY", allow_hyphen_values = true)]
        dir: String,
        #[arg(long, default_value_t = 10)]
        max_reflections: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Reflection group of a Euclidean triple `k,l,m` acting on the plane.
    Wallpaper {
        triple: String,
        #[arg(long, default_value_t = DEFAULT_LATTICE_DEPTH)]
        lattice_depth: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Presentation of the colimit group as text.
    ExportPresentation {
        diagram: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Euclidean triple below a non-spherical `k ≤ l ≤ m`.
    Dominate { k: usize, l: usize, m: usize },
}

impl Command {
    fn json_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Validate(i) | Command::Angles(i) | Command::Curvature(i) | Command::Branching(i) => {
                i.json.as_ref()
            }
            Command::Witness { input, .. }
            | Command::Tits { input, .. }
            | Command::Certify { input, .. }
            | Command::Shoot { input, .. } => input.json.as_ref(),
            Command::Wallpaper { json, .. } => json.as_ref(),
            Command::ExportPresentation { .. } | Command::Dominate { .. } => None,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Internal(String),
    Input(String),
    Undecided,
    NotFound(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Input(_) => 2,
            Failure::Undecided => 3,
            Failure::NotFound(_) => 4,
        }
    }
}

type Outcome = Result<(), Failure>;

struct Io<'a> {
    out: &'a mut dyn Write,
    /// JSON goes to stdout, so human-readable lines are suppressed.
    quiet: bool,
}

impl Io<'_> {
    fn raw(&mut self, s: &str) -> Outcome {
        writeln!(self.out, "{s}").map_err(|e| Failure::Internal(e.to_string()))
    }

    fn line(&mut self, s: impl AsRef<str>) -> Outcome {
        if self.quiet {
            return Ok(());
        }
        self.raw(s.as_ref())
    }

    /// Writes `value` to `path`, or to stdout for `-`.
    fn json(&mut self, path: &Option<PathBuf>, value: &Value) -> Outcome {
        let Some(path) = path else { return Ok(()) };
        let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
        if path.as_os_str() == "-" {
            self.raw(&text)
        } else {
            fs::write(path, text + "\n").map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<TriangleDiagram, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    TriangleDiagram::from_json_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<TriangleDiagram, Failure> {
    let d = load(path)?;
    let report = d.validate();
    if !report.is_ok() {
        return Err(Failure::Input(format!("{}: invalid diagram\n{report}", path.display())));
    }
    Ok(d)
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let quiet = cli.command.json_path().is_some_and(|p| p.as_os_str() == "-");
    let mut io = Io { out, quiet };
    match dispatch(cli, &mut io) {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Internal(m) => {
                    let _ = writeln!(err, "internal error: {m}");
                }
                Failure::Input(m) | Failure::NotFound(m) => {
                    let _ = writeln!(err, "{m}");
                }
                Failure::Undecided => {}
            }
            f.code()
        }
    }
}

fn dispatch(cli: Cli, io: &mut Io) -> Outcome {
    let threads = cli.threads.max(1);
    match cli.command {
        Command::Validate(input) => validate(input, io),
        Command::Angles(input) => angles(input, io),
        Command::Curvature(input) => curvature(input, io),
        Command::Branching(input) => branching(input, io),
        Command::Witness { input, verify_depth } => witness(input, verify_depth, threads, io),
        Command::Tits { input, verify_depth } => tits(input, verify_depth, io),
        Command::Certify {
            input,
            word,
            mode,
            infinite_order,
            svg,
        } => certify(input, &word, mode, infinite_order, svg, io),
        Command::Shoot {
            input,
            start,
            dir,
            max_reflections,
            mode,
            svg,
        } => shoot_cmd(input, &start, &dir, max_reflections, mode, svg, io),
        Command::Wallpaper {
            triple,
            lattice_depth,
            json,
        } => wallpaper(&triple, lattice_depth, json, io),
        Command::ExportPresentation { diagram, output } => {
            let d = load_valid(&diagram)?;
            let text = export_presentation(&d);
            match output {
                Some(p) => write_file(&p, &text),
                None => io.line(text.trim_end()),
            }
        }
        Command::Dominate { k, l, m } => {
            let t = dominate(k, l, m).map_err(|e| Failure::Input(e.to_string()))?;
            io.line(format!("({k},{l},{m}) ≥ ({},{},{})", t.0, t.1, t.2))
        }
    }
}

fn validate(input: Input, io: &mut Io) -> Outcome {
    let d = load(&input.diagram)?;
    let report = d.validate();
    io.json(
        &input.json,
        &json!({ "valid": report.is_ok(), "issues": report.issues }),
    )?;
    if report.is_ok() {
        io.line("valid")
    } else {
        Err(Failure::Input(format!(
            "{}: invalid diagram\n{}",
            input.diagram.display(),
            report.to_string().trim_end()
        )))
    }
}

fn angles(input: Input, io: &mut Io) -> Outcome {
    let d = load_valid(&input.diagram)?;
    let mut rows = Vec::new();
    for ((i, j), r) in all_angles(&d) {
        let girth = link_graph(&d, i, j).ok().and_then(|g| g.girth);
        let over_pi = r.angle.over_pi();
        io.line(format!(
            "{{{i},{j}}}: {}  m̂ = {}  link girth = {}",
            r.angle,
            r.angle.m_hat().map_or("∞".to_string(), |m| m.to_string()),
            girth.map_or("-".to_string(), |g| g.to_string()),
        ))?;
        rows.push(json!({
            "pair": [i, j],
            "angle": r.angle.to_string(),
            "over_pi": over_pi.to_string(),
            "m_hat": r.angle.m_hat(),
            "witness": r.witness,
            "link_girth": girth,
        }));
    }
    io.json(&input.json, &Value::Array(rows))
}

fn curvature(input: Input, io: &mut Io) -> Outcome {
    let d = load_valid(&input.diagram)?;
    let angles = d.angles();
    let class = classify_curvature(&d);
    let sum: Rational64 = angles.iter().map(|a| a.over_pi()).sum();
    let kind = format!("{:?}", class.kind).to_lowercase();
    io.line(format!(
        "{kind}{}  (angles {}, {}, {}; sum {sum}·π)",
        if class.degenerate { ", degenerate" } else { "" },
        angles[0],
        angles[1],
        angles[2]
    ))?;
    io.json(
        &input.json,
        &json!({
            "curvature": kind,
            "degenerate": class.degenerate,
            "angles": angles.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "sum_over_pi": sum.to_string(),
        }),
    )
}

fn witness_failure(e: WitnessError) -> Failure {
    match e {
        WitnessError::Invalid(_) | WitnessError::SphericalInput => Failure::Input(e.to_string()),
        WitnessError::NoBranching | WitnessError::DegenerateAngle | WitnessError::NotEuclidean => {
            Failure::NotFound(e.to_string())
        }
        WitnessError::ClosedShot(_) | WitnessError::CertificationGap(_) => Failure::Internal(e.to_string()),
    }
}

fn branching(input: Input, io: &mut Io) -> Outcome {
    let d = load_valid(&input.diagram)?;
    let r = find_branching(&d).map_err(witness_failure)?;
    io.line(if r.branches { "branches" } else { "does not branch" })?;
    for c in &r.causes {
        io.line(format!("  {c}"))?;
    }
    io.json(
        &input.json,
        &json!({ "branches": r.branches, "causes": r.causes.iter().map(|c| c.to_string()).collect::<Vec<_>>() }),
    )
}

fn witness(input: Input, depth: usize, threads: usize, io: &mut Io) -> Outcome {
    let d = load_valid(&input.diagram)?;
    match free_pair(&d).map_err(witness_failure)? {
        Witness::Index3(pair) => {
            let report = verify_free_pair_threaded(&d, &pair, depth, threads).map_err(witness_failure)?;
            io.line(format!("x = {}", pair.x))?;
            io.line(format!("y = {}", pair.y))?;
            io.line(format!(
                "fixture {}; certified {} reduced words up to length {} (per length {:?})",
                pair.provenance.fixture_id, report.certified, depth, report.by_length
            ))?;
            let mut v = pair.to_json();
            v["verification"] = json!({
                "depth": report.depth,
                "by_length": report.by_length,
                "certified": report.certified,
                "max_reflections": report.max_reflections,
            });
            io.json(&input.json, &v)
        }
        w @ Witness::NotGenerated { .. } => {
            let Witness::NotGenerated { i, j, missing } = w else {
                unreachable!()
            };
            io.line(format!(
                "no explicit pair: G_{{{i},{j}}} is not generated by its sides (index {missing}); the colimit is a branching amalgam"
            ))?;
            io.json(&input.json, &w.to_json())
        }
    }
}

fn tits(input: Input, depth: usize, io: &mut Io) -> Outcome {
    let d = load(&input.diagram)?;
    let v = classify_with_depth(&d, depth).map_err(|e| match e {
        TitsError::Invalid(_) => Failure::Input(format!("{}: {e}", input.diagram.display())),
        other => Failure::Internal(other.to_string()),
    })?;
    io.line(v.kind.to_string())?;
    for step in &v.trace {
        io.line(format!(
            "  {}: {}",
            step.rule,
            serde_json::to_string(&step.values).expect("serializes")
        ))?;
    }
    io.json(&input.json, &v.to_json())?;
    if v.kind == VerdictKind::Undecided {
        return Err(Failure::Undecided);
    }
    Ok(())
}

fn certify_failure(e: CertifyError) -> Failure {
    match e {
        CertifyError::NoSequenceFound | CertifyError::NoPeriodicSequenceFound => Failure::NotFound(e.to_string()),
        CertifyError::NotAdapted | CertifyError::Sequence(_) => Failure::Internal(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn emit_certificate<F: Scalar>(
    cert: &Certificate<F>,
    ctx: &Billiards,
    json: &Option<PathBuf>,
    svg: &Option<PathBuf>,
    io: &mut Io,
) -> Outcome {
    io.line(format!(
        "certified: {} ({} reflections, labels {:?})",
        cert.word,
        cert.sequence.reflections(),
        cert.sequence.labels
    ))?;
    if let Some(p) = svg {
        write_file(p, &to_svg(ctx.placement(), &cert.sequence))?;
    }
    io.json(json, &cert.to_json())
}

fn certify(input: Input, word: &str, mode: ModeArg, infinite: bool, svg: Option<PathBuf>, io: &mut Io) -> Outcome {
    let d = load_valid(&input.diagram)?;
    let w: TypedWord = word
        .parse()
        .map_err(|e: crate::billiards::ParseTypedWordError| Failure::Input(e.to_string()))?;
    let ctx = Billiards::new(&d).map_err(certify_failure)?;
    match (infinite, mode) {
        (true, ModeArg::Float) => Err(Failure::Input("infinite-order certificates are exact only".into())),
        (true, ModeArg::Exact) => {
            let cert = ctx.certify_infinite_order(&w).map_err(certify_failure)?;
            emit_certificate(&cert, &ctx, &input.json, &svg, io)
        }
        (false, ModeArg::Exact) => {
            let cert = ctx.certify_nontrivial(&w).map_err(certify_failure)?;
            emit_certificate(&cert, &ctx, &input.json, &svg, io)
        }
        (false, ModeArg::Float) => {
            let cert = ctx.certify_nontrivial_float(&w).map_err(certify_failure)?;
            emit_certificate(&cert, &ctx, &input.json, &svg, io)
        }
    }
}

fn parse_point(s: &str) -> Result<Vec2, Failure> {
    let err = || {
        Failure::Input(format!(
            "cannot parse point {s:?}: expected X,Y with coordinates p/q or p/q|r/s"
        ))
    };
    let (x, y) = s.split_once(',').ok_or_else(err)?;
    Ok(Vec2::new(
        x.trim().parse::<QuadRat>().map_err(|_| err())?,
        y.trim().parse::<QuadRat>().map_err(|_| err())?,
    ))
}

fn shoot_in<F: Scalar>(
    ctx: &Billiards,
    start: &Vec2,
    dir: &Vec2,
    max: usize,
    json: &Option<PathBuf>,
    svg: &Option<PathBuf>,
    io: &mut Io,
) -> Outcome {
    let geo: Geometry<F> = ctx.placement().geometry();
    let seq = shoot(&geo, &start.convert::<F>(), &dir.convert::<F>(), max).map_err(|e| match e {
        ShootError::PocketHit(_) => Failure::NotFound(e.to_string()),
        _ => Failure::Input(e.to_string()),
    })?;
    io.line(format!("labels {:?}", seq.labels))?;
    for p in &seq.points {
        let v = p.to_f64();
        io.line(format!("  ({:.6}, {:.6})", v.x, v.y))?;
    }
    if let Some(p) = svg {
        write_file(p, &to_svg(ctx.placement(), &seq))?;
    }
    io.json(
        json,
        &json!({
            "points": seq.points.iter().map(|p| p.json()).collect::<Vec<_>>(),
            "directions": seq.directions.iter().map(|p| p.json()).collect::<Vec<_>>(),
            "labels": seq.labels,
            "mode": if F::EXACT { "exact" } else { "float" },
        }),
    )
}

fn shoot_cmd(
    input: Input,
    start: &str,
    dir: &str,
    max: usize,
    mode: ModeArg,
    svg: Option<PathBuf>,
    io: &mut Io,
) -> Outcome {
    let d = load_valid(&input.diagram)?;
    let ctx = Billiards::new(&d).map_err(certify_failure)?;
    let (start, dir) = (parse_point(start)?, parse_point(dir)?);
    match mode {
        ModeArg::Exact => shoot_in::<QuadRat>(&ctx, &start, &dir, max, &input.json, &svg, io),
        ModeArg::Float => shoot_in::<f64>(&ctx, &start, &dir, max, &input.json, &svg, io),
    }
}

fn wallpaper(triple: &str, depth: usize, json: Option<PathBuf>, io: &mut Io) -> Outcome {
    let err = || Failure::Input(format!("cannot parse triple {triple:?}: expected k,l,m"));
    let mut t: Vec<usize> = triple
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| err()))
        .collect::<Result<_, _>>()?;
    if t.len() != 3 {
        return Err(err());
    }
    t.sort_unstable();
    let rep = canonical_rep((t[0], t[1], t[2])).map_err(|e| Failure::Input(e.to_string()))?;
    let lattice = rep.translation_lattice(depth);
    let check = rep.intersection_check();
    io.line(format!(
        "Δ({},{},{}): relators hold = {}",
        t[0],
        t[1],
        t[2],
        rep.relators_hold()
    ))?;
    match &lattice {
        Ok(r) => {
            let [u, v] = r.basis.clone().map(|b| b.to_f64());
            io.line(format!(
                "translations: ({:.6}, {:.6}), ({:.6}, {:.6}) at depth {}",
                u.x, u.y, v.x, v.y, r.depth
            ))?
        }
        Err(e) => io.line(format!("translations: {e}"))?,
    }
    io.line(format!(
        "vertex stabilisers of orders {:?}; intersections {}",
        check.stabilizer_orders,
        if check.passes() { "match" } else { "MISMATCH" }
    ))?;
    io.json(&json, &rep.to_json(&lattice))?;
    match (lattice, check.passes()) {
        (Ok(_), true) => Ok(()),
        (Err(e), _) => Err(Failure::NotFound(e.to_string())),
        (_, false) => Err(Failure::Internal("stabiliser intersections do not match".into())),
    }
}
