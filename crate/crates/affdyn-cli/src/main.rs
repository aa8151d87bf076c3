use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use affdyn::boundary::{Completion, DivisorAtInfinity};
use affdyn::degoracle::{iterate_degrees, lambda1_estimate, PolyMap, DEFAULT_TERM_CAP};
use affdyn::dynamics::{classify_normal_form, eigenvaluation, EigenData, EigenNormalization, EndoSpec, MonomialEndo};
use affdyn::exactnum::{IntMat2, ProjPoint, QuadNumber};
use affdyn::par::Exec;
use affdyn::perron::{is_weak_perron, realize_as_matrix, QuadraticInteger};
use affdyn::thompson::{find_relation, loxodromic_analysis, markov_circle, parse_word, word_string};
use affdyn::valuation::Valuation;
use affdyn::verify;
use affdyn::zigzag::{classify_boundary, standardize, Zigzag};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "affdyn", version, about = "Exact dynamics at infinity of affine surface endomorphisms")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Run the data-parallel parts sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Dynamical degree of a monomial map with its characteristic polynomial.
    Lambda1(MatrixArg),
    /// Eigenvaluation of a monomial map or a JSON endomorphism spec.
    Eigenval {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix, conflicts_with = "spec", required_unless_present = "spec")]
        matrix: Option<IntMat2>,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, value_enum, default_value_t = Norm::TUnit)]
        normalization: Norm,
    },
    /// Weak Perron test and realization for the largest root of T^2 - aT + b.
    Perron {
        #[command(subcommand)]
        op: PerronOp,
    },
    Zigzag {
        #[command(subcommand)]
        op: ZigzagOp,
    },
    /// Boundary divisors read from a JSON file.
    Boundary {
        #[command(subcommand)]
        op: BoundaryOp,
    },
    /// Meet of two divisors such as `Ex:1,Ey:2`.
    Meet { file: String, d1: String, d2: String },
    /// Action of words in σx, σy, σz on the circle at infinity of the Markov surface.
    Markov {
        #[command(subcommand)]
        op: MarkovOp,
    },
    /// Degrees of the iterates of a polynomial map of the plane (CSV by default).
    DegreeGrowth {
        #[arg(long)]
        map: String,
        #[arg(short = 'n', default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
        term_cap: usize,
    },
    Fixtures {
        #[command(subcommand)]
        op: FixturesOp,
    },
}

#[derive(Args, Debug)]
struct MatrixArg {
    /// Entries `a,b,c,d` of [[a,b],[c,d]].
    #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix)]
    matrix: IntMat2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Norm {
    TUnit,
    MinUnit,
}

#[derive(Subcommand, Debug)]
enum PerronOp {
    Check {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
    Realize {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
}

#[derive(Subcommand, Debug)]
enum ZigzagOp {
    /// Literal such as `0,-1,-2,-2` or `cycle:-1,-1,-1`.
    Standardize {
        #[arg(allow_hyphen_values = true)]
        literal: String,
    },
}

#[derive(Subcommand, Debug)]
enum BoundaryOp {
    Duals { file: String },
    Classify { file: String },
    Dot { file: String },
}

#[derive(Subcommand, Debug)]
enum MarkovOp {
    /// Image of `t` (a rational or `inf`).
    Act {
        word: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Attracting and repelling fixed points of a loxodromic word.
    Fixed { word: String },
    /// Checks that no reduced word of length at most L is the identity.
    Free {
        #[arg(long = "max-len", short = 'L', default_value_t = 6)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FixturesOp {
    Verify,
}

fn parse_matrix(s: &str) -> Result<IntMat2, String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("'{}': {}", x.trim(), e)))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a, b, c, d] => Ok(IntMat2::new(*a, *b, *c, *d)),
        _ => Err(format!("expected four entries a,b,c,d, got {}", v.len())),
    }
}

enum Failure {
    Parse(String),
    Compute(String),
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

fn parse_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Parse(e.to_string())
}

/// Output of a subcommand; `ok = false` exits 1 after printing.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

fn to_json<T: serde::Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// `T^2 - 5T + 6`.
fn char_poly(tr: i64, det: i64) -> String {
    let mut s = String::from("T^2");
    match tr {
        0 => {}
        1 => s.push_str(" - T"),
        -1 => s.push_str(" + T"),
        t if t > 0 => {
            let _ = write!(s, " - {}T", t);
        }
        t => {
            let _ = write!(s, " + {}T", -t);
        }
    }
    match det {
        0 => {}
        d if d > 0 => {
            let _ = write!(s, " + {}", d);
        }
        d => {
            let _ = write!(s, " - {}", -d);
        }
    }
    s
}

fn linear(root: &QuadNumber) -> String {
    match root.signum() {
        0 => "T".into(),
        s if s > 0 => format!("(T - {})", root),
        _ => format!("(T + {})", root.neg()),
    }
}

fn lambda1(m: IntMat2) -> Result<Report, Failure> {
    let e = MonomialEndo::new(m).map_err(compute)?;
    let l1 = e.lambda1().map_err(compute)?;
    let poly = char_poly(m.trace(), m.det());
    let factor = l1.as_rational().map(|_| {
        let other = QuadNumber::from_int(m.trace()).try_sub(&l1).expect("same field");
        (linear(&l1), linear(&other))
    });
    let mut text = format!("{}\ncertificate: {} = 0", l1, poly);
    if let Some((f, g)) = &factor {
        let _ = write!(text, ", {} = {}{}", poly, f, g);
    } else {
        text.push_str(", irreducible over Q");
    }
    let json = json!({
        "lambda1": l1.to_string(),
        "exact": to_json(&l1),
        "char_poly": poly,
        "factor": factor.map(|(f, _)| f),
    });
    Ok(Report::new(text, json))
}

fn valuation_text(v: &Valuation) -> String {
    match v {
        Valuation::Monomial { at, s, t } => format!("v_{{{},{}}} at {}∩{}", s, t, at[0], at[1]),
        Valuation::Divisorial { divisor, scale } => format!("{}·ord_{}", scale, divisor),
        other => format!("{:?}", other),
    }
}

fn eigen_report(d: &EigenData, boundary: affdyn::boundary::CurveKind, tame: bool) -> Result<Report, Failure> {
    let nf = classify_normal_form(d, boundary, tame).map_err(compute)?;
    let mut text = format!("lambda1: {}\nlambda2: {}\n", d.lambda1, d.lambda2);
    let _ = writeln!(
        text,
        "eigenvaluation: {}",
        d.eigenvaluation.as_ref().map(valuation_text).unwrap_or_else(|| "not monomial".into())
    );
    let _ = writeln!(text, "type: {}", to_json(&d.valuation_type).as_str().unwrap_or_default());
    let _ = write!(text, "gap: {}\nnormal form: {}", d.gap, to_json(&nf).as_str().unwrap_or_default());
    Ok(Report::new(text, json!({ "eigen": to_json(d), "normal_form": to_json(&nf) })))
}

fn eigenval(matrix: Option<IntMat2>, spec: Option<String>, norm: Norm) -> Result<Report, Failure> {
    if let Some(path) = spec {
        let s = std::fs::read_to_string(&path).map_err(|e| Failure::Parse(format!("{}: {}", path, e)))?;
        let spec: EndoSpec = serde_json::from_str(&s).map_err(parse_err)?;
        let (d, kind, tame) = spec.eigen().map_err(compute)?;
        return eigen_report(&d, kind, tame);
    }
    let m = matrix.expect("clap requires --matrix or --spec");
    let mode = match norm {
        Norm::TUnit => EigenNormalization::TUnit,
        Norm::MinUnit => EigenNormalization::MinUnit,
    };
    let e = MonomialEndo::new(m).map_err(compute)?;
    let d = eigenvaluation(&e, mode).map_err(compute)?;
    eigen_report(&d, affdyn::boundary::CurveKind::Rational, true)
}

fn perron(op: PerronOp) -> Result<Report, Failure> {
    match op {
        PerronOp::Check { a, b } => {
            let q = QuadraticInteger::root(a, b).map_err(compute)?;
            let weak = is_weak_perron(&q).map_err(compute)?;
            let conj = q.conjugate().map_err(compute)?;
            let text = format!(
                "{}\nvalue: {}\nconjugate: {}",
                weak,
                q,
                conj.as_ref().map_or("none (rational)".to_string(), |c| c.to_string())
            );
            let json = json!({ "weak_perron": weak, "value": q.to_string(), "conjugate": conj.map(|c| c.to_string()) });
            Ok(Report::new(text, json))
        }
        PerronOp::Realize { a, b } => {
            let q = QuadraticInteger::root(a, b).map_err(compute)?;
            let m = realize_as_matrix(&q).map_err(compute)?;
            Ok(Report::new(m.to_string(), json!({ "value": q.to_string(), "matrix": m.rows() })))
        }
    }
}

fn zigzag(op: ZigzagOp) -> Result<Report, Failure> {
    let ZigzagOp::Standardize { literal } = op;
    let z = Zigzag::parse(&literal).map_err(parse_err)?;
    let s = standardize(&z).map_err(compute)?;
    let mut text = format!("{}\n", s.result);
    for m in &s.log {
        let _ = writeln!(text, "{}", serde_json::to_string(m).expect("serializable"));
    }
    Ok(Report::new(text.trim_end().to_string(), json!({ "input": z.to_string(), "result": s.result.to_string(), "log": to_json(&s.log) })))
}

fn read_completion(path: &str) -> Result<Completion, Failure> {
    let s = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {}", path, e)))?;
    Completion::from_json(&s).map_err(parse_err)
}

fn boundary(op: BoundaryOp) -> Result<Report, Failure> {
    match op {
        BoundaryOp::Duals { file } => {
            let x = read_completion(&file)?;
            x.check_nondegenerate().map_err(compute)?;
            let mut text = String::new();
            let mut map = serde_json::Map::new();
            for n in x.names() {
                let z = x.dual_divisor(&n).map_err(compute)?;
                let _ = writeln!(text, "Z_{} = {}", n, z);
                map.insert(n, to_json(&z));
            }
            Ok(Report::new(text.trim_end().to_string(), json!({ "duals": map, "matrix": x.intersection_matrix() })))
        }
        BoundaryOp::Classify { file } => {
            let c = classify_boundary(&read_completion(&file)?);
            let class = to_json(&c.class);
            Ok(Report::new(class.as_str().unwrap_or_default().to_string(), to_json(&c)))
        }
        BoundaryOp::Dot { file } => {
            let x = read_completion(&file)?;
            let dot = x.to_dot();
            Ok(Report::new(dot.trim_end().to_string(), json!({ "dot": dot })))
        }
    }
}

fn meet(file: &str, d1: &str, d2: &str) -> Result<Report, Failure> {
    let x = read_completion(file)?;
    let a = DivisorAtInfinity::parse(d1).map_err(parse_err)?;
    let b = DivisorAtInfinity::parse(d2).map_err(parse_err)?;
    let r = x.meet(&a, &b).map_err(compute)?;
    let mut text = format!("{}\n", r.divisor);
    for rec in &r.blowups {
        let _ = writeln!(text, "blow-up {:?} -> {}", rec.center, rec.exceptional);
    }
    let json = json!({ "meet": to_json(&r.divisor), "blowups": to_json(&r.blowups), "completion": serde_json::from_str::<Value>(&r.completion.to_json()).expect("valid json") });
    Ok(Report::new(text.trim_end().to_string(), json))
}

fn markov(op: MarkovOp, exec: Exec) -> Result<Report, Failure> {
    let mc = markov_circle();
    match op {
        MarkovOp::Act { word, t } => {
            let w = parse_word(&word).map_err(parse_err)?;
            let t = ProjPoint::parse(&t).map_err(parse_err)?;
            let g = mc.word(&w);
            let r = g.apply(&t);
            Ok(Report::new(r.to_string(), json!({ "word": word_string(&w), "t": t.to_string(), "image": r.to_string(), "pieces": to_json(g.pieces()) })))
        }
        MarkovOp::Fixed { word } => {
            let w = parse_word(&word).map_err(parse_err)?;
            let l = loxodromic_analysis(&mc.word(&w)).map_err(compute)?;
            let text = format!(
                "attracting: {} (multiplier {})\nrepelling: {} (multiplier {})\nmatrix: {}",
                l.omega, l.omega_multiplier, l.alpha, l.alpha_multiplier, l.matrix
            );
            Ok(Report::new(text, to_json(&l)))
        }
        MarkovOp::Free { max_len } => {
            if max_len > 12 {
                return Err(Failure::Parse(format!("--max-len must be at most 12, got {}", max_len)));
            }
            let rel = find_relation(max_len, exec);
            let text = match &rel {
                None => format!("no relation up to length {}", max_len),
                Some(w) => format!("relation: {}", word_string(w)),
            };
            let json = json!({ "max_len": max_len, "free": rel.is_none(), "relation": rel.as_deref().map(word_string) });
            Ok(Report { text, json, ok: rel.is_none() })
        }
    }
}

fn degree_growth(map: &str, n: usize, cap: usize, exec: Exec) -> Result<Report, Failure> {
    let inner = map.trim();
    let inner = inner.strip_prefix('(').and_then(|m| m.strip_suffix(')')).unwrap_or(inner);
    let f = PolyMap::parse(inner).map_err(parse_err)?;
    if !(1..=12).contains(&n) {
        return Err(Failure::Parse(format!("-n must be in 1..=12, got {}", n)));
    }
    let s = iterate_degrees(&f, n, cap, exec).map_err(compute)?;
    let est = if s.degrees.len() >= 3 { lambda1_estimate(&s.degrees).ok() } else { None };
    let json = json!({ "map": f.to_string(), "sequence": to_json(&s), "estimate": est.as_ref().map(to_json) });
    let r = Report::new(s.to_csv().trim_end().to_string(), json);
    if s.truncated {
        eprintln!("{}", json!({ "warning": "term cap reached", "computed": s.degrees.len() }));
    }
    Ok(r)
}

fn fixtures(exec: Exec) -> Report {
    let checks = verify::run_all(exec);
    let mut text = String::new();
    for c in &checks {
        if c.pass {
            let _ = writeln!(text, "PASS {}", c.name);
        } else {
            let _ = writeln!(text, "FAIL {}: {}", c.name, c.detail);
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let _ = write!(text, "{}/{} passed", passed, checks.len());
    Report { text, json: json!({ "checks": to_json(&checks), "passed": passed, "total": checks.len() }), ok: passed == checks.len() }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.cmd {
        Cmd::Lambda1(MatrixArg { matrix }) => lambda1(matrix),
        Cmd::Eigenval { matrix, spec, normalization } => eigenval(matrix, spec, normalization),
        Cmd::Perron { op } => perron(op),
        Cmd::Zigzag { op } => zigzag(op),
        Cmd::Boundary { op } => boundary(op),
        Cmd::Meet { file, d1, d2 } => meet(&file, &d1, &d2),
        Cmd::Markov { op } => markov(op, exec),
        Cmd::DegreeGrowth { map, n, term_cap } => degree_growth(&map, n, term_cap, exec),
        Cmd::Fixtures { op: FixturesOp::Verify } => Ok(fixtures(exec)),
    }
}

fn fail(kind: &str, msg: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": msg }));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            return fail("parse", first, 2);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            let out = match format {
                Format::Json => r.json.to_string(),
                Format::Text | Format::Csv | Format::Dot => r.text,
            };
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", out);
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Parse(m)) => fail("parse", &m, 2),
        Err(Failure::Compute(m)) => fail("computation", &m, 1),
    }
}
