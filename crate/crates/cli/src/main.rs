mod dot;
mod input;

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use divide_core::enumerate::DEFAULT_CEILING;
use divide_core::{
    apply_riii, betti, classify, code, desingularize_with, determinant, discal_minor_leq,
    divide_from_code, enumerate_codes, enumerate_divides, inertia, plan_minor_leq, riii_orbit,
    riii_sites, seifert_matrix_divide, subdivide_leq, validate_discal, validate_divide,
    verify_theorem, Bound, Classification, Error, Record, ReductionSequence, Smoothing,
};
use serde_json::json;

use input::{code_json, divide_json, load, read_object, Object};

/// Exit status with a message for stderr.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: msg.into(),
        }
    }

    pub fn core(e: Error) -> Failure {
        let code = match e {
            Error::Ceiling(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }

    pub fn located(path: &Path, e: Error) -> Failure {
        Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }
    }
}

type Outcome = Result<u8, Failure>;

#[derive(Parser)]
#[command(
    name = "divides",
    version,
    about = "Divides, their codes and the signature of their fiber surfaces"
)]
struct Cli {
    /// Print JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for enumerate, verify and orbit (also DIVIDES_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A `.divide` or `.discal` file, or JSON printed by this tool.
    file: Option<PathBuf>,
    /// Family name and parameters, e.g. `Epqr 1 2 5`, `D 4`, `E6`, `Q`.
    #[arg(long, num_args = 1..)]
    family: Option<Vec<String>>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, conflicts_with = "max_betti")]
    max_crossings: Option<usize>,
    #[arg(long)]
    max_betti: Option<usize>,
}

impl BoundArgs {
    fn bound(&self) -> Result<Bound, Failure> {
        match (self.max_crossings, self.max_betti) {
            (Some(k), None) => Ok(Bound::Crossings(k)),
            (None, Some(n)) => Ok(Bound::Betti(n)),
            _ => Err(Failure::input("give --max-crossings or --max-betti")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the validity conditions of a divide or a code.
    Validate(Input),
    /// First Betti number of the fiber surface.
    Betti(Input),
    /// Symmetrized Seifert matrix.
    Matrix(Input),
    /// Determinant of the Seifert matrix.
    Det(Input),
    /// Signature of the fiber surface.
    Signature(Input),
    /// Decide maximal signature and name the family or a prohibited minor.
    Classify(Input),
    /// Test whether SMALL is a minor of LARGE (subdivide for divides,
    /// discal minor for codes).
    Minor {
        small: PathBuf,
        large: PathBuf,
        /// Use the colored planar minor order on codes.
        #[arg(long)]
        plan: bool,
    },
    /// Desingularize one crossing.
    Desing {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        crossing: usize,
        /// `black` joins the black quadrants, `white` the white ones.
        #[arg(long, default_value = "black")]
        mode: String,
        /// Which checkerboard coloring names the quadrants (0 or 1).
        #[arg(long, default_value_t = 0)]
        coloring: usize,
    },
    /// List RIII sites, or apply the move at one.
    Riii {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        site: Option<usize>,
    },
    /// Divides reachable by RIII moves.
    Orbit {
        #[command(flatten)]
        input: Input,
        /// Largest orbit explored (also DIVIDES_ORBIT_CAP).
        #[arg(long)]
        max: Option<usize>,
    },
    /// The code of the other checkerboard coloring.
    Dual(Input),
    /// Code of a divide.
    Code {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        coloring: usize,
    },
    /// Divide of a code.
    Decode(Input),
    /// Code of a family member.
    Generate {
        #[arg(long, num_args = 1.., required = true)]
        family: Vec<String>,
        /// Print the divide instead of the code.
        #[arg(long)]
        divide: bool,
    },
    /// All connected divides (or codes) within a bound.
    Enumerate {
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long)]
        codes: bool,
    },
    /// Check "maximal iff no prohibited subdivide" on every divide within a bound.
    Verify {
        #[command(flatten)]
        bound: BoundArgs,
        /// Line-delimited JSON records; existing records are reused.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz description of a divide or code.
    ExportDot(Input),
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn ceiling() -> u128 {
    std::env::var("DIVIDES_ENUM_CEILING")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CEILING)
}

fn print_json(v: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    );
}

fn to_value<T: serde::Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("JSON values serialize")
}

fn print_sequence(seq: &ReductionSequence) {
    for s in &seq.steps {
        println!("  {} {} -> {}", s.op, s.target, s.canon);
    }
}

fn validate(cli: &Cli, input: &Input) -> Outcome {
    let (ok, report) = match load(&input.file, &input.family)? {
        Object::Divide(d) => {
            let r = validate_divide(&d);
            (r.is_valid(), to_value(&r))
        }
        Object::Code(g) => {
            let r = validate_discal(&g);
            (r.is_valid(), to_value(&r))
        }
    };
    if cli.json {
        print_json(&json!({"valid": ok, "report": report}));
    } else if ok {
        println!("valid");
    } else {
        println!("invalid");
        for v in report["violations"].as_array().into_iter().flatten() {
            match v.as_str() {
                Some(s) => println!("  {s}"),
                None => println!(
                    "  ({}) {}",
                    v["clause"].as_str().unwrap_or(""),
                    v["message"].as_str().unwrap_or("")
                ),
            }
        }
    }
    Ok(if ok { 0 } else { 2 })
}

fn matrix_cmd(cli: &Cli, input: &Input, what: &str) -> Outcome {
    let d = load(&input.file, &input.family)?.divide()?;
    let s = seifert_matrix_divide(&d).map_err(Failure::core)?;
    match what {
        "betti" => {
            let b = betti(&d).map_err(Failure::core)?;
            if cli.json {
                print_json(&json!({"betti": b}));
            } else {
                println!("{b}");
            }
        }
        "det" => {
            let det = determinant(&s.entries);
            if cli.json {
                print_json(&json!({"det": det.to_string()}));
            } else {
                println!("{det}");
            }
        }
        "signature" => {
            let i = inertia(&s.entries).map_err(Failure::core)?;
            if cli.json {
                print_json(
                    &json!({"signature": i.signature(), "inertia": [i.plus, i.zero, i.minus]}),
                );
            } else {
                println!("{}", i.signature());
            }
        }
        _ => {
            let report = s.report().map_err(Failure::core)?;
            if cli.json {
                print_json(&to_value(&report));
            } else {
                print!("{s}");
                println!(
                    "det {} signature {} maximal {}",
                    report.det, report.signature, report.maximal
                );
            }
        }
    }
    Ok(0)
}

fn classify_cmd(cli: &Cli, input: &Input) -> Outcome {
    let d = load(&input.file, &input.family)?.divide()?;
    let c = classify(&d).map_err(Failure::core)?;
    if cli.json {
        print_json(&to_value(&c));
    } else {
        match &c {
            Classification::Maximal {
                family,
                riii_path,
                dimension,
            } => {
                println!("status maximal\nfamily {family}\ndimension {dimension}");
                println!("riii_path {riii_path:?}");
            }
            Classification::NotMaximal {
                witness,
                certificate_minor,
                minor_det,
            } => {
                println!("status not-maximal");
                println!(
                    "certificate leading minor {certificate_minor} has determinant {minor_det}"
                );
                if let Some(w) = witness {
                    println!(
                        "witness {} ({}) riii_path {:?}",
                        w.name, w.kind, w.riii_path
                    );
                    print_sequence(&w.sequence);
                }
            }
            Classification::Defect { maximal, reason } => {
                println!("status defect\nmaximal {maximal}\n{reason}")
            }
        }
    }
    Ok(if c.is_defect() { 2 } else { 0 })
}

fn minor_cmd(cli: &Cli, small: &Path, large: &Path, plan: bool) -> Outcome {
    let seq = match (read_object(small)?, read_object(large)?) {
        (Object::Code(h), Object::Code(g)) if plan => plan_minor_leq(&h.plan(), &g.plan()),
        (Object::Code(h), Object::Code(g)) => discal_minor_leq(&h, &g),
        (a, b) => subdivide_leq(&a.divide()?, &b.divide()?),
    }
    .map_err(Failure::core)?;
    if cli.json {
        print_json(&json!({"minor": seq.is_some(), "sequence": seq}));
    } else {
        match &seq {
            Some(s) => {
                println!("minor in {} steps", s.len());
                print_sequence(s);
            }
            None => println!("not a minor"),
        }
    }
    Ok(0)
}

fn emit_divide(cli: &Cli, d: &divide_core::Divide) -> Outcome {
    if cli.json {
        print_json(&divide_json(d)?);
    } else {
        print!("{}", d.to_text());
    }
    Ok(0)
}

fn emit_code(cli: &Cli, g: &divide_core::DiscalGraph) -> Outcome {
    if cli.json {
        print_json(&code_json(g)?);
    } else {
        print!("{}", g.to_text());
    }
    Ok(0)
}

fn coloring_of(d: &divide_core::Divide, k: usize) -> Result<divide_core::Checkerboard, Failure> {
    let boards = d.checkerboards().map_err(Failure::core)?;
    boards
        .get(k)
        .cloned()
        .ok_or_else(|| Failure::input("coloring must be 0 or 1"))
}

fn orbit_cmd(cli: &Cli, input: &Input, max: Option<usize>) -> Outcome {
    let d = load(&input.file, &input.family)?.divide()?;
    let cap = max
        .or_else(|| env_usize("DIVIDES_ORBIT_CAP"))
        .unwrap_or(divide_core::atlas::ORBIT_CAP);
    let orbit = riii_orbit(&d, cap).map_err(Failure::core)?;
    let mut members: Vec<(String, Vec<usize>)> = orbit
        .canon
        .iter()
        .enumerate()
        .map(|(i, c)| (c.to_string(), orbit.path(i)))
        .collect();
    members.sort();
    if cli.json {
        let ms: Vec<_> = members
            .iter()
            .map(|(c, p)| json!({"canon": c, "riii_path": p}))
            .collect();
        print_json(&json!({"size": members.len(), "truncated": orbit.truncated, "members": ms}));
    } else {
        println!("size {} truncated {}", members.len(), orbit.truncated);
        for (c, p) in &members {
            println!("{c} {p:?}");
        }
    }
    Ok(if orbit.truncated { 3 } else { 0 })
}

fn dual_cmd(cli: &Cli, input: &Input) -> Outcome {
    let obj = load(&input.file, &input.family)?;
    let d = obj.divide()?;
    let boards = d.checkerboards().map_err(Failure::core)?;
    let codes: Vec<_> = boards
        .iter()
        .map(|c| code(&d, c))
        .collect::<Result<_, _>>()
        .map_err(Failure::core)?;
    let pick = match &obj {
        Object::Code(g) => {
            let own = g.canonical_form().map_err(Failure::core)?;
            if codes[0].canonical_form().map_err(Failure::core)? == own {
                1
            } else {
                0
            }
        }
        Object::Divide(_) => 1,
    };
    emit_code(cli, &codes[pick])
}

fn enumerate_cmd(cli: &Cli, bound: &BoundArgs, codes: bool) -> Outcome {
    let b = bound.bound()?;
    let mut out = std::io::stdout().lock();
    if codes {
        for g in enumerate_codes(b, ceiling()).map_err(Failure::core)? {
            let line = if cli.json {
                code_json(&g)?.to_string()
            } else {
                g.canonical_form().map_err(Failure::core)?.to_string()
            };
            let _ = writeln!(out, "{line}");
        }
    } else {
        for d in enumerate_divides(b, ceiling()).map_err(Failure::core)? {
            let line = if cli.json {
                let mut v = divide_json(&d)?;
                v["betti"] = json!(betti(&d).map_err(Failure::core)?);
                v.to_string()
            } else {
                d.canonical_form().map_err(Failure::core)?.to_string()
            };
            let _ = writeln!(out, "{line}");
        }
    }
    Ok(0)
}

fn read_records(path: &Path) -> Result<HashMap<String, Record>, Failure> {
    let mut known = HashMap::new();
    let Ok(f) = fs::File::open(path) else {
        return Ok(known);
    };
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        let r: Record = serde_json::from_str(&line)
            .map_err(|e| Failure::input(format!("{}:{}: {e}", path.display(), i + 1)))?;
        known.insert(r.canon.clone(), r);
    }
    Ok(known)
}

fn verify_cmd(cli: &Cli, bound: &BoundArgs, out: &Option<PathBuf>) -> Outcome {
    let b = bound.bound()?;
    let known = match out {
        Some(p) => read_records(p)?,
        None => HashMap::new(),
    };
    let (report, records) = verify_theorem(b, ceiling(), &known).map_err(Failure::core)?;
    if let Some(p) = out {
        let mut text = String::new();
        for r in &records {
            text.push_str(&serde_json::to_string(r).expect("records serialize"));
            text.push('\n');
        }
        fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
    }
    if cli.json {
        print_json(&to_value(&report));
    } else {
        println!("divides {}", report.divides);
        for (k, n) in &report.counts_by_betti {
            println!("  betti {k}: {n}");
        }
        println!(
            "maximal {} not maximal {}",
            report.maximal_count, report.not_maximal_count
        );
        println!(
            "counterexamples {} (of which {} have a planar-minor witness)",
            report.counterexamples.len(),
            report.resolved_by_surface_minor
        );
        println!(
            "cross-check mismatches {}",
            report.cross_check_mismatches.len()
        );
        println!("oracle mismatches {}", report.oracle_mismatches.len());
        println!("classify defects {}", report.classify_defects.len());
        for c in report
            .counterexamples
            .iter()
            .chain(&report.cross_check_mismatches)
            .chain(&report.oracle_mismatches)
            .chain(&report.classify_defects)
        {
            println!("  [{}] {} {}", c.kind, c.canon, c.detail);
        }
        println!("elapsed {} ms", report.elapsed_ms);
    }
    Ok(if report.verified() { 0 } else { 2 })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate(i) => validate(cli, i),
        Command::Betti(i) => matrix_cmd(cli, i, "betti"),
        Command::Matrix(i) => matrix_cmd(cli, i, "matrix"),
        Command::Det(i) => matrix_cmd(cli, i, "det"),
        Command::Signature(i) => matrix_cmd(cli, i, "signature"),
        Command::Classify(i) => classify_cmd(cli, i),
        Command::Minor { small, large, plan } => minor_cmd(cli, small, large, *plan),
        Command::Desing {
            input,
            crossing,
            mode,
            coloring,
        } => {
            let d = load(&input.file, &input.family)?.divide()?;
            let mode = Smoothing::parse(mode)
                .ok_or_else(|| Failure::input("mode must be black or white"))?;
            let c = coloring_of(&d, *coloring)?;
            let r = desingularize_with(&d, &c, *crossing, mode).map_err(Failure::core)?;
            emit_divide(cli, &r.divide)
        }
        Command::Riii { input, site } => {
            let d = load(&input.file, &input.family)?.divide()?;
            match site {
                Some(s) => emit_divide(cli, &apply_riii(&d, *s).map_err(Failure::core)?),
                None => {
                    let sites = riii_sites(&d);
                    if cli.json {
                        print_json(&json!({"sites": sites}));
                    } else {
                        for s in sites {
                            println!("{s}");
                        }
                    }
                    Ok(0)
                }
            }
        }
        Command::Orbit { input, max } => orbit_cmd(cli, input, *max),
        Command::Dual(i) => dual_cmd(cli, i),
        Command::Code { input, coloring } => {
            let d = load(&input.file, &input.family)?.divide()?;
            let c = coloring_of(&d, *coloring)?;
            emit_code(cli, &code(&d, &c).map_err(Failure::core)?)
        }
        Command::Decode(i) => match load(&i.file, &i.family)? {
            Object::Code(g) => emit_divide(cli, &divide_from_code(&g).map_err(Failure::core)?),
            Object::Divide(_) => Err(Failure::input("decode expects a code")),
        },
        Command::Generate { family, divide } => {
            let g = divide_core::generate_family(&input::family_spec(family)?)
                .map_err(Failure::core)?;
            if *divide {
                emit_divide(cli, &divide_from_code(&g).map_err(Failure::core)?)
            } else {
                emit_code(cli, &g)
            }
        }
        Command::Enumerate { bound, codes } => enumerate_cmd(cli, bound, *codes),
        Command::Verify { bound, out } => verify_cmd(cli, bound, out),
        Command::ExportDot(i) => {
            let text = match load(&i.file, &i.family)? {
                Object::Divide(d) => dot::divide_dot(&d),
                Object::Code(g) => dot::code_dot(&g),
            };
            print!("{text}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads.or_else(|| env_usize("DIVIDES_THREADS")) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
