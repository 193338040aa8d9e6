//! Command-line front end: every subcommand emits one schema-versioned
//! JSON document on stdout (timing segregated under `"timing"` so golden
//! tests can strip it) and exits non-zero on verification failure.

use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fcc_stab::analysis::{
    cleaning_check, exact_distance, heuristic_distance, subsystem_distance, tqo_report,
};
use fcc_stab::charges::{
    charge_table, decompose, solve_syndrome, syndrome_of, SolveOutcome, Syndrome,
};
use fcc_stab::code::ground_space_report;
use fcc_stab::error::Error;
use fcc_stab::lattice::{Axis, Context, LatticeSpec, Site, Vec3};
use fcc_stab::operators::{
    flexible_string, half_membrane, logical_set, membrane, rigid_string, tetrahedron,
    FlexibleStringSpec, HalfMembraneSpec, RigidStringSpec, TetrahedronSpec,
};
use fcc_stab::pauli::PauliWord;

const SCHEMA: &str = "fcc-stab/1";

#[derive(Parser)]
#[command(
    name = "fcc-stab",
    version,
    about = "Exact stabilizer algebra for the 3D Chamon code"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the ground-space dimension law k = 4 gcd(p_x, p_y, p_z)
    /// and the absence of -I from the stabilizer group.
    VerifyTheorem1 {
        /// Lattice spec "px,py,pz".
        #[arg(long)]
        spec: String,
    },
    /// Construct an operator and report its word and syndrome.
    Build(BuildArgs),
    /// Compute the syndrome of a Pauli word (JSON file or "-" for stdin).
    Syndrome {
        #[arg(long)]
        word: String,
    },
    /// Topological charge table and dot diagram of a syndrome.
    Charges {
        #[arg(long)]
        syndrome: String,
    },
    /// Decompose an even syndrome into dipoles and quadrupoles.
    Decompose {
        #[arg(long)]
        syndrome: String,
    },
    /// Find a window-supported Pauli causing a syndrome, or certify that
    /// none exists.
    Solve {
        #[arg(long)]
        syndrome: String,
    },
    /// Distance estimation.
    Distance {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value_t = DistanceMode::Exact)]
        mode: DistanceMode,
        /// Weight cap for the exact sweep.
        #[arg(long, default_value_t = 4)]
        cap: usize,
        /// Random restarts for the heuristic modes.
        #[arg(long, default_value_t = 32)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cleaning-lemma sweep and stability verdict.
    Tqo {
        #[arg(long)]
        spec: String,
        /// Optionally check a single box "lx,ly,lz" instead of sweeping.
        #[arg(long)]
        r#box: Option<String>,
    },
    /// Ground-space verification for a batch of specs ("a,b,c;d,e,f;...").
    Sweep {
        #[arg(long)]
        specs: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DistanceMode {
    Exact,
    Heuristic,
    Subsystem,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: BuildKind,
    /// Geometry context: "px,py,pz" or "window:a..b,c..d,e..f".
    #[arg(long)]
    context: String,
    /// Start / center / corner site "i,j,k".
    #[arg(long)]
    start: Option<String>,
    /// Face-diagonal "a,b,c" for rigid strings.
    #[arg(long)]
    h: Option<String>,
    /// Body-diagonal "a,b,c" for flexible strings.
    #[arg(long)]
    t: Option<String>,
    /// Rigid string length (number of steps).
    #[arg(long)]
    m: Option<usize>,
    /// Flexible string sign.
    #[arg(long, default_value_t = 1)]
    eps: i64,
    /// Flexible string step letters, e.g. "zxzy".
    #[arg(long)]
    steps: Option<String>,
    /// Tetrahedron half-edge (cube edge = 2r) or membrane radius.
    #[arg(long)]
    r: Option<i64>,
    #[arg(long, default_value_t = false)]
    mirrored: bool,
    /// Plane axis for membranes and half-membranes.
    #[arg(long)]
    axis: Option<String>,
    /// Half-membrane parity label, e.g. "011".
    #[arg(long)]
    abc: Option<String>,
    /// Half-membrane plane offset (defaults to the label coordinate).
    #[arg(long)]
    offset: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Rigid,
    Flexible,
    Tetra,
    Membrane,
    HalfMembrane,
    Logical,
}

fn parse_triple(s: &str) -> Result<[i64; 3], Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidSpec(format!("expected 'a,b,c', got {s:?}")));
    }
    let mut out = [0i64; 3];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("bad integer {p:?}")))?;
    }
    Ok(out)
}

fn parse_site(s: &str) -> Result<Site, Error> {
    let [i, j, k] = parse_triple(s)?;
    Ok(Site::new(i, j, k))
}

fn parse_spec(s: &str) -> Result<LatticeSpec, Error> {
    let [a, b, c] = parse_triple(s)?;
    LatticeSpec::new(a, b, c)
}

fn read_doc(path: &str) -> Result<Value, Error> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Json(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Json(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Json(format!("{path}: {e}")))
}

fn read_word(path: &str) -> Result<PauliWord, Error> {
    let doc = read_doc(path)?;
    // Accept either a bare word document or a build output.
    let word = doc.get("word").unwrap_or(&doc);
    PauliWord::from_json(word)
}

fn read_syndrome(path: &str) -> Result<Syndrome, Error> {
    let doc = read_doc(path)?;
    let syn = doc.get("syndrome").unwrap_or(&doc);
    Syndrome::from_json(syn)
}

fn charge_entries(table: &fcc_stab::charges::ChargeTable) -> Value {
    let names = ["[111]", "[1-1-1]", "[-11-1]", "[-1-11]"];
    let mut entries = Vec::new();
    for (ti, set) in &table.nonzero {
        for alpha in set {
            entries.push(json!({"t": names[*ti], "alpha": alpha}));
        }
    }
    Value::Array(entries)
}

fn emit(mut doc: Value, started: Instant) -> ExitCode {
    let ok = doc.get("ok").and_then(Value::as_bool).unwrap_or(true);
    doc["timing"] = json!({"total_ms": started.elapsed().as_millis() as u64});
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("serializable")
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run() -> Result<ExitCode, Error> {
    let started = Instant::now();
    let cli = Cli::parse();
    // Honor the thread-count override before any parallel work.
    #[cfg(feature = "parallel")]
    if let Ok(threads) = std::env::var("FCC_STAB_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global();
        }
    }

    let doc = match cli.command {
        Command::VerifyTheorem1 { spec } => {
            let rep = ground_space_report(parse_spec(&spec)?);
            json!({
                "schema": SCHEMA,
                "command": "verify-theorem1",
                "spec": spec,
                "n": rep.n,
                "rank": rep.rank,
                "k": rep.k,
                "expected_k": rep.expected_k,
                "minus_identity_found": rep.minus_identity_found,
                "ok": rep.ok,
            })
        }
        Command::Build(args) => {
            let ctx: Context = args.context.parse()?;
            let missing = |what: &str| Error::Config(format!("build requires --{what}"));
            let words: Vec<(String, PauliWord)> = match args.kind {
                BuildKind::Rigid => {
                    let spec = RigidStringSpec {
                        start: parse_site(args.start.as_deref().ok_or_else(|| missing("start"))?)?,
                        h: {
                            let [a, b, c] =
                                parse_triple(args.h.as_deref().ok_or_else(|| missing("h"))?)?;
                            Vec3::new(a, b, c)
                        },
                        m: args.m.ok_or_else(|| missing("m"))?,
                    };
                    vec![("rigid".into(), rigid_string(&ctx, &spec)?)]
                }
                BuildKind::Flexible => {
                    let steps = args
                        .steps
                        .as_deref()
                        .ok_or_else(|| missing("steps"))?
                        .chars()
                        .map(|c| Axis::from_str(&c.to_string()))
                        .collect::<Result<Vec<_>, _>>()?;
                    let spec = FlexibleStringSpec {
                        start: parse_site(args.start.as_deref().ok_or_else(|| missing("start"))?)?,
                        t: {
                            let [a, b, c] =
                                parse_triple(args.t.as_deref().ok_or_else(|| missing("t"))?)?;
                            Vec3::new(a, b, c)
                        },
                        eps: args.eps,
                        steps,
                    };
                    vec![("flexible".into(), flexible_string(&ctx, &spec)?)]
                }
                BuildKind::Tetra => {
                    let spec = TetrahedronSpec {
                        corner: parse_site(args.start.as_deref().ok_or_else(|| missing("start"))?)?,
                        r: args.r.ok_or_else(|| missing("r"))?,
                        mirrored: args.mirrored,
                    };
                    vec![("tetrahedron".into(), tetrahedron(&ctx, &spec)?)]
                }
                BuildKind::Membrane => {
                    let axis = Axis::from_str(args.axis.as_deref().unwrap_or("z"))?;
                    vec![(
                        "membrane".into(),
                        membrane(
                            &ctx,
                            parse_site(args.start.as_deref().ok_or_else(|| missing("start"))?)?,
                            args.r.ok_or_else(|| missing("r"))?,
                            axis,
                        )?,
                    )]
                }
                BuildKind::HalfMembrane => {
                    let axis =
                        Axis::from_str(args.axis.as_deref().ok_or_else(|| missing("axis"))?)?;
                    let abc_str = args.abc.as_deref().ok_or_else(|| missing("abc"))?;
                    if abc_str.len() != 3 || !abc_str.chars().all(|c| c == '0' || c == '1') {
                        return Err(Error::Config(format!("bad parity label {abc_str:?}")));
                    }
                    let digits: Vec<i64> =
                        abc_str.chars().map(|c| (c as i64) - ('0' as i64)).collect();
                    let abc = (digits[0], digits[1], digits[2]);
                    let spec = match args.offset {
                        Some(offset) => HalfMembraneSpec { axis, abc, offset },
                        None => HalfMembraneSpec::canonical(axis, abc),
                    };
                    vec![("half-membrane".into(), half_membrane(&ctx, &spec)?)]
                }
                BuildKind::Logical => {
                    let spec = ctx.spec().ok_or_else(|| {
                        Error::Config("logical set needs a periodic context".into())
                    })?;
                    let set = logical_set(spec)?;
                    set.all()
                        .into_iter()
                        .map(|(name, w)| (name.to_string(), w.clone()))
                        .collect()
                }
            };
            let ops: Vec<Value> = words
                .iter()
                .map(|(name, w)| {
                    json!({
                        "name": name,
                        "word": w.to_json(),
                        "weight": w.weight(),
                        "syndrome": syndrome_of(w).to_json(),
                    })
                })
                .collect();
            let mut doc = json!({
                "schema": SCHEMA,
                "command": "build",
                "operators": ops,
            });
            let single = match doc["operators"].as_array().unwrap().as_slice() {
                [only] => Some(only.clone()),
                _ => None,
            };
            if let Some(only) = single {
                doc["word"] = only["word"].clone();
                doc["syndrome"] = only["syndrome"].clone();
                doc["weight"] = only["weight"].clone();
            }
            doc
        }
        Command::Syndrome { word } => {
            let w = read_word(&word)?;
            let s = syndrome_of(&w);
            json!({
                "schema": SCHEMA,
                "command": "syndrome",
                "weight": w.weight(),
                "syndrome": s.to_json(),
            })
        }
        Command::Charges { syndrome } => {
            let s = read_syndrome(&syndrome)?;
            let table = charge_table(&s);
            json!({
                "schema": SCHEMA,
                "command": "charges",
                "bulk_valid": s.bulk_valid(),
                "support_len": s.len(),
                "nonzero": charge_entries(&table),
                "row_parities_consistent": table.row_parities_consistent(),
                "mod4_parities_consistent": table.mod4_parities_consistent(),
                "diagram": table.render(),
            })
        }
        Command::Decompose { syndrome } => {
            let s = read_syndrome(&syndrome)?;
            let dec = decompose(&s)?;
            let recombines = dec.recombined().same_charges(&charge_table(&s));
            json!({
                "schema": SCHEMA,
                "command": "decompose",
                "particles": serde_json::to_value(&dec.particles).expect("serializable"),
                "recombination_matches": recombines,
                "ok": recombines,
            })
        }
        Command::Solve { syndrome } => {
            let s = read_syndrome(&syndrome)?;
            match solve_syndrome(&s)? {
                SolveOutcome::Solved(word) => json!({
                    "schema": SCHEMA,
                    "command": "solve",
                    "status": "solved",
                    "word": word.to_json(),
                    "weight": word.weight(),
                }),
                SolveOutcome::Certificate(table) => json!({
                    "schema": SCHEMA,
                    "command": "solve",
                    "status": "certificate",
                    "nonzero_charges": charge_entries(&table),
                }),
                SolveOutcome::Inconclusive => json!({
                    "schema": SCHEMA,
                    "command": "solve",
                    "status": "inconclusive",
                    "hint": "enlarge the window",
                }),
            }
        }
        Command::Distance {
            spec,
            mode,
            cap,
            trials,
            seed,
        } => {
            let s = parse_spec(&spec)?;
            let rep = match mode {
                DistanceMode::Exact => exact_distance(s, cap),
                DistanceMode::Heuristic => heuristic_distance(s, trials, seed)?,
                DistanceMode::Subsystem => subsystem_distance(s, trials, seed)?,
            };
            let mut doc = serde_json::to_value(&rep).expect("serializable");
            doc["schema"] = json!(SCHEMA);
            doc["command"] = json!("distance");
            doc["spec"] = json!(spec);
            doc["seed"] = json!(seed);
            doc
        }
        Command::Tqo { spec, r#box } => {
            let s = parse_spec(&spec)?;
            match r#box {
                Some(b) => {
                    let rep = cleaning_check(s, parse_triple(&b)?)?;
                    let ok = rep.equal || !rep.hypothesis_ok;
                    let mut doc = serde_json::to_value(&rep).expect("serializable");
                    doc["schema"] = json!(SCHEMA);
                    doc["command"] = json!("tqo");
                    doc["spec"] = json!(spec);
                    doc["ok"] = json!(ok);
                    doc
                }
                None => {
                    let rep = tqo_report(s)?;
                    let ok = rep.all_equal;
                    let mut doc = serde_json::to_value(&rep).expect("serializable");
                    doc["schema"] = json!(SCHEMA);
                    doc["command"] = json!("tqo");
                    doc["spec"] = json!(spec);
                    doc["ok"] = json!(ok);
                    doc
                }
            }
        }
        Command::Sweep { specs } => {
            let mut reports = Vec::new();
            let mut all_ok = true;
            for part in specs.split(';').filter(|p| !p.trim().is_empty()) {
                let rep = ground_space_report(parse_spec(part.trim())?);
                all_ok &= rep.ok;
                reports.push(serde_json::to_value(&rep).expect("serializable"));
            }
            json!({
                "schema": SCHEMA,
                "command": "sweep",
                "reports": reports,
                "ok": all_ok,
            })
        }
    };
    Ok(emit(doc, started))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
