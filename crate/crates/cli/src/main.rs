//! `sunflower`: validate, recognize, cross-check, generate and draw
//! sunflower interval instances.
//!
//! Exit codes: 0 yes/ok, 1 no, 2 invalid input, 3 internal error, 4 a hard
//! cap was exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sunflower_interval::generators::{
    gen_betweenness_proper, gen_betweenness_unit, gen_random_any, random_betweenness, RandomParams, Spread,
};
use sunflower_interval::io::{
    betweenness_to_json, conflict_value, instance_to_json, parse_betweenness, parse_instance, parse_representation,
    representation_to_json, representation_value, verdict_json,
};
use sunflower_interval::oracle::general::{general_representation, DEFAULT_NODE_CAP};
use sunflower_interval::oracle::{brute_force_proper, brute_force_unit, check_representation, DEFAULT_VERTEX_CAP};
use sunflower_interval::simultaneous::{recognize_proper, representation_of, ProperNo, ProperVerdict};
use sunflower_interval::space::enumerate_space;
use sunflower_interval::svg::render_svg;
use sunflower_interval::unit::{find_relaxed_conflict, recognize_unit, unit_representation_of, UnitNo, UnitVerdict};
use sunflower_interval::{Error, Mode, Representation, SunflowerInstance};

#[derive(Parser)]
#[command(name = "sunflower", version, about = "Sunflower proper and unit interval graph recognition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the sunflower conditions of an instance file.
    Validate { file: PathBuf },
    /// Decide representability and optionally write certificates.
    Recognize {
        #[arg(long)]
        mode: Mode,
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        emit_representation: Option<PathBuf>,
        /// On yes the representation; on a unit no, one conflict per enumeration of the failing component.
        #[arg(long, value_name = "OUT")]
        emit_certificate: Option<PathBuf>,
        #[arg(long, value_name = "OUT")]
        emit_svg: Option<PathBuf>,
        /// Largest enumeration space scanned for --emit-certificate.
        #[arg(long, default_value_t = 64)]
        certificate_cap: usize,
    },
    /// Exhaustive ground truth, or the checker when --check is given.
    Oracle {
        #[arg(long)]
        mode: Mode,
        file: PathBuf,
        /// Check this representation instead of searching.
        #[arg(long, value_name = "REP")]
        check: Option<PathBuf>,
        /// Vertex cap for sunflower instances, search-node cap otherwise.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Draw a representation of an instance as SVG.
    Render {
        representation: PathBuf,
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Gadget instance for a betweenness instance (read or sampled).
    Betweenness {
        /// Betweenness JSON; sampled from the size flags when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        ground: usize,
        #[arg(long, default_value_t = 2)]
        triples: usize,
        /// The chained gadget for the unit case.
        #[arg(long)]
        unit: bool,
        /// Also write the betweenness instance used.
        #[arg(long, value_name = "OUT")]
        emit_betweenness: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Unit intervals read off as member graphs, plus random extra edges.
    Random(RandomArgs),
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    shared: usize,
    #[arg(long, default_value_t = 4)]
    private: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    extra_edges: usize,
    /// Sparse graphs with long paths instead of dense ones.
    #[arg(long)]
    wide: bool,
    #[arg(long)]
    out: PathBuf,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Json(_) | Error::Schema(_) | Error::Invalid(_) | Error::NotSunflower | Error::Graph(_) => 2,
            Error::CapExceeded { .. } => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Recognize { mode, file, emit_representation, emit_certificate, emit_svg, certificate_cap } => {
            let inst = parse_instance(&read(&file)?)?;
            recognize(&inst, mode, emit_representation, emit_certificate, emit_svg, certificate_cap)
        }
        Command::Oracle { mode, file, check, cap } => {
            let inst = parse_instance(&read(&file)?)?;
            match check {
                Some(rep) => check_file(&inst, mode, &rep),
                None => oracle(&inst, mode, cap),
            }
        }
        Command::Gen { kind } => generate(kind),
        Command::Render { representation, instance, out } => {
            let rep = parse_representation(&read(&representation)?)?;
            let inst = parse_instance(&read(&instance)?)?;
            write(&out, &render_svg(&rep, &inst))?;
            Ok(0)
        }
    }
}

fn validate(file: &Path) -> Result<u8, Failure> {
    let inst = match parse_instance(&read(file)?) {
        Ok(inst) => inst,
        Err(Error::Invalid(report)) => {
            println!("{}", serde_json::to_string(&report).expect("reports serialize"));
            return Ok(2);
        }
        Err(e) => return Err(e.into()),
    };
    println!("{}", serde_json::to_string(&inst.validate()).expect("reports serialize"));
    Ok(0)
}

fn proper_reason(no: &ProperNo) -> Value {
    match no {
        ProperNo::NotProperInterval { graph } => json!({"reason": "not-proper-interval", "graph": graph}),
        ProperNo::NoCommonOrder { component } => json!({"reason": "no-common-order", "component": component}),
    }
}

fn recognize(
    inst: &SunflowerInstance,
    mode: Mode,
    emit_representation: Option<PathBuf>,
    emit_certificate: Option<PathBuf>,
    emit_svg: Option<PathBuf>,
    certificate_cap: usize,
) -> Result<u8, Failure> {
    let outcome: Result<Representation, Value> = match mode {
        Mode::Proper => match recognize_proper(inst)? {
            ProperVerdict::Yes(comps) => Ok(representation_of(inst, &comps)?),
            ProperVerdict::No(no) => Err(proper_reason(&no)),
        },
        Mode::Unit => match recognize_unit(inst)? {
            UnitVerdict::Yes(comps) => Ok(unit_representation_of(inst, &comps)?),
            UnitVerdict::No(UnitNo::Proper(no)) => Err(proper_reason(&no)),
            UnitVerdict::No(UnitNo::Conflict { component, instance, conflict }) => {
                let mut reason = json!({
                    "reason": "conflict",
                    "component": component,
                    "conflict": conflict.map(|c| conflict_value(&instance, &c)),
                });
                if let Some(out) = &emit_certificate {
                    let scanned = conflict_scan(inst, component, certificate_cap)?;
                    write(out, &serde_json::to_string_pretty(&scanned).expect("certificates serialize"))?;
                    reason["scanned"] = json!(true);
                }
                Err(reason)
            }
        },
    };
    match outcome {
        Ok(rep) => {
            let report = check_representation(inst, &rep, mode)?;
            if !report.ok {
                return Err(Failure { code: 3, message: "the built representation fails the checker".into() });
            }
            let text = representation_to_json(&rep);
            for out in emit_representation.iter().chain(&emit_certificate) {
                write(out, &text)?;
            }
            if let Some(out) = &emit_svg {
                write(out, &render_svg(&rep, inst))?;
            }
            println!("{}", verdict_json(true, mode, representation_value(&rep)));
            Ok(0)
        }
        Err(reason) => {
            println!("{}", verdict_json(false, mode, reason));
            Ok(1)
        }
    }
}

/// One conflict for every enumeration of a union component, with the
/// enumeration as blocks of names.
fn conflict_scan(inst: &SunflowerInstance, component: usize, cap: usize) -> Result<Value, Failure> {
    let ProperVerdict::Yes(comps) = recognize_proper(inst)? else {
        return Err(Failure { code: 3, message: "proper recognition changed its answer".into() });
    };
    let comp = &comps[component];
    let part = &comp.instance;
    let mut entries = Vec::new();
    for se in enumerate_space(part, &comp.enumeration, cap)? {
        let orders: Vec<Vec<Vec<&str>>> = se
            .orders
            .iter()
            .enumerate()
            .map(|(i, o)| {
                o.blocks()
                    .iter()
                    .map(|b| b.iter().map(|&l| part.vertex_name(part.to_global(i, l))).collect())
                    .collect()
            })
            .collect();
        let Some(c) = find_relaxed_conflict(part, &se) else {
            return Err(Failure { code: 3, message: "an enumeration without conflict in a no instance".into() });
        };
        entries.push(json!({"enumeration": orders, "conflict": conflict_value(part, &c)}));
    }
    Ok(json!({"component": component, "conflicts": entries}))
}

fn oracle(inst: &SunflowerInstance, mode: Mode, cap: Option<usize>) -> Result<u8, Failure> {
    let (yes, certificate) = if inst.is_sunflower() {
        let cap = cap.unwrap_or(DEFAULT_VERTEX_CAP);
        let yes = match mode {
            Mode::Proper => brute_force_proper(inst, cap)?,
            Mode::Unit => brute_force_unit(inst, cap)?,
        };
        (yes, Value::Null)
    } else {
        match general_representation(inst, mode, cap.unwrap_or(DEFAULT_NODE_CAP))? {
            Some(rep) => (true, representation_value(&rep)),
            None => (false, Value::Null),
        }
    };
    println!("{}", verdict_json(yes, mode, certificate));
    Ok(if yes { 0 } else { 1 })
}

fn check_file(inst: &SunflowerInstance, mode: Mode, rep: &Path) -> Result<u8, Failure> {
    let rep = parse_representation(&read(rep)?)?;
    let report = check_representation(inst, &rep, mode)?;
    println!("{}", serde_json::to_string(&report).expect("reports serialize"));
    Ok(if report.ok { 0 } else { 1 })
}

fn generate(kind: GenKind) -> Result<u8, Failure> {
    match kind {
        GenKind::Betweenness { input, seed, ground, triples, unit, emit_betweenness, out } => {
            let bw = match input {
                Some(path) => parse_betweenness(&read(&path)?)?,
                None => random_betweenness(seed, ground, triples),
            };
            if let Some(path) = emit_betweenness {
                write(&path, &betweenness_to_json(&bw))?;
            }
            let inst = if unit { gen_betweenness_unit(&bw) } else { gen_betweenness_proper(&bw) };
            write(&out, &instance_to_json(&inst))?;
        }
        GenKind::Random(a) => {
            if a.k == 0 {
                return Err(Failure { code: 2, message: "k must be positive".into() });
            }
            let spread = if a.wide { Spread::Wide } else { Spread::Dense };
            let params = RandomParams { spread, ..RandomParams::new(a.shared, a.private, a.k, a.extra_edges) };
            write(&a.out, &instance_to_json(&gen_random_any(a.seed, params)))?;
        }
    }
    Ok(0)
}
