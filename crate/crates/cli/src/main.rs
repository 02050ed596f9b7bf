//! Command-line front end: parse Dynkin types and discriminants, run the
//! component census and the CM pipelines, emit tables or JSON documents.

mod report;

use std::collections::VecDeque;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use report::{
    CensusEntry, CensusSummary, CmSection, EmbeddingRow, FormByDet, HilbertSection, Payload,
    ReportDocument, SCHEMA_VERSION,
};
use zariski_core::binforms::{enumerate_even_classes, sl2_fiber_size};
use zariski_core::cm::{
    class_group, embedding_lattices, hilbert_class_polynomial, rational_to_f64, reduced_forms,
};
use zariski_core::dynkin::DynkinType;
use zariski_core::moduli::{component_report, ComponentReport};
use zariski_core::Error as CoreError;

/// Exit codes: 0 success, 1 usage, 2 computation out of scope, 3 partial
/// census failure.
const EXIT_USAGE: u8 = 1;
const EXIT_OUT_OF_SCOPE: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "zariski",
    version,
    about = "Exact lattice-side census of moduli components of sextics with simple singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Connected components of the moduli space for one rank-19 Dynkin type
    Components(ComponentsArgs),
    /// Enumerate binary form classes by determinant or discriminant
    Forms(FormsArgs),
    /// Class group, CM embedding lattices, and optionally the Hilbert class polynomial
    Cm(CmArgs),
    /// Run the component census over a file of Dynkin types
    Census(CensusArgs),
}

#[derive(Args)]
struct ComponentsArgs {
    /// Dynkin type, e.g. "A16+A2+A1" or "2A7+D5"
    type_string: String,
    /// Emit the machine-readable JSON document instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct FormsArgs {
    /// Determinant of even positive-definite rank-2 forms to enumerate
    #[arg(long)]
    det: Option<i64>,
    /// Negative discriminant of classical primitive forms to enumerate
    #[arg(long)]
    disc: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CmArgs {
    /// Negative fundamental discriminant
    #[arg(long)]
    disc: i64,
    /// Also compute the Hilbert class polynomial
    #[arg(long)]
    hilbert: bool,
    /// Fixed-point evaluation precision in decimal digits
    #[arg(long, default_value_t = 80)]
    precision_digits: u32,
    /// Number of q-expansion terms of j beyond the pole
    #[arg(long, default_value_t = 60)]
    q_terms: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// Input file: one Dynkin type per line, '#' starts a comment
    #[arg(long)]
    input: PathBuf,
    /// Output directory for per-type JSON reports
    #[arg(long)]
    out: PathBuf,
    /// Skip types whose report file already exists
    #[arg(long)]
    resume: bool,
    /// Number of worker threads
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is a
            // usage error with exit code 1.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Components(args) => run_components(args),
        Command::Forms(args) => run_forms(args),
        Command::Cm(args) => run_cm(args),
        Command::Census(args) => run_census(args),
    }
}

fn classify_error(e: &CoreError) -> u8 {
    match e {
        CoreError::DynkinParse(_) | CoreError::InvalidDynkin(_) | CoreError::InvalidForm(_) => {
            EXIT_USAGE
        }
        _ => EXIT_OUT_OF_SCOPE,
    }
}

fn run_components(args: ComponentsArgs) -> ExitCode {
    let dynkin = match DynkinType::parse(&args.type_string) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("usage: zariski components <TYPE>, e.g. zariski components A16+A2+A1");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let report = match component_report(&dynkin) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(classify_error(&e));
        }
    };
    let doc = ReportDocument {
        schema_version: SCHEMA_VERSION,
        invocation: format!("components {}", report.dynkin_type),
        payload: Payload::Components(report),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else if let Payload::Components(r) = &doc.payload {
        print_component_table(r);
    }
    ExitCode::SUCCESS
}

fn print_component_table(r: &ComponentReport) {
    println!("Dynkin type {} (rank {})", r.dynkin_type, r.rank);
    for class in &r.classes {
        let gens: Vec<String> = class
            .glue_generators
            .iter()
            .map(|g| format!("{g:?}"))
            .collect();
        let glue = if gens.is_empty() {
            "trivial glue".to_owned()
        } else {
            format!("glue {}", gens.join(" "))
        };
        println!(
            "class {}: index {} ({}), diagram orbit size {}, stabilizer order {}{}",
            class.class_index,
            class.overlattice_index,
            glue,
            class.orbit_size,
            class.stabilizer_order,
            if class.sharp { "" } else { "  [no rank-2 partner: excluded]" },
        );
        for fiber in &class.ns {
            let orbits: Vec<String> = fiber
                .orbit_report
                .orbits
                .iter()
                .map(|o| format!("size {} {}", o.size, if o.real { "real" } else { "non-real" }))
                .collect();
            println!(
                "  N = {:10}  gluings {:3}  orbits: {}",
                fiber.form.name(),
                fiber.orbit_report.gluing_count,
                orbits.join(", ")
            );
        }
    }
    println!("total connected components: {}", r.total_components);
    if r.zariski_candidates.is_empty() {
        println!("no candidate arithmetic Zariski pair detected by the rank-2 invariant");
    } else {
        for z in &r.zariski_candidates {
            println!(
                "candidate arithmetic Zariski pair over class {}: {} vs {}",
                z.class_index,
                z.first.name(),
                z.second.name()
            );
        }
    }
    println!("note: counts are lattice-theoretic (orbits of gluing data); the identification with moduli components of sextics rests on the period correspondence for the K3 double covers, which is not recomputed here.");
}

fn run_forms(args: FormsArgs) -> ExitCode {
    match (args.det, args.disc) {
        (Some(d), None) => {
            if d < 1 {
                eprintln!("error: --det must be a positive integer");
                return ExitCode::from(EXIT_USAGE);
            }
            let classes = enumerate_even_classes(d);
            let rows: Vec<FormByDet> = classes
                .iter()
                .map(|f| FormByDet {
                    form: *f,
                    name: f.name(),
                    sl2_fiber: sl2_fiber_size(f).expect("enumerated forms are reduced"),
                })
                .collect();
            let doc = ReportDocument {
                schema_version: SCHEMA_VERSION,
                invocation: format!("forms --det {d}"),
                payload: Payload::FormsByDet { det: d, classes: rows },
            };
            if args.json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else if let Payload::FormsByDet { classes, .. } = &doc.payload {
                println!("even positive-definite classes of determinant {d}:");
                for row in classes {
                    println!("  {:12} SL2 fiber {}", row.name, row.sl2_fiber);
                }
                println!("{} classes", classes.len());
            }
            ExitCode::SUCCESS
        }
        (None, Some(d)) => {
            if d >= 0 || d.rem_euclid(4) > 1 {
                eprintln!("error: --disc must be a negative discriminant (0 or 1 mod 4)");
                return ExitCode::from(EXIT_USAGE);
            }
            let forms = reduced_forms(d);
            let doc = ReportDocument {
                schema_version: SCHEMA_VERSION,
                invocation: format!("forms --disc {d}"),
                payload: Payload::FormsByDisc {
                    disc: d,
                    forms: forms.clone(),
                },
            };
            if args.json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                println!("reduced primitive forms of discriminant {d}:");
                for f in &forms {
                    println!("  {f}");
                }
                println!("{} classes", forms.len());
            }
            ExitCode::SUCCESS
        }
        _ => {
            eprintln!("error: pass exactly one of --det <d> or --disc <D>");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run_cm(args: CmArgs) -> ExitCode {
    let cg = match class_group(args.disc) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(classify_error(&e));
        }
    };
    let embeddings = match embedding_lattices(args.disc) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(classify_error(&e));
        }
    };
    let hilbert = if args.hilbert {
        match hilbert_class_polynomial(args.disc, args.precision_digits, args.q_terms) {
            Ok(h) => Some(HilbertSection {
                degree: h.degree,
                coefficients: h.coefficients.iter().map(|c| c.to_string()).collect(),
                max_rounding_error: rational_to_f64(&h.max_rounding_error),
            }),
            Err(e) => {
                eprintln!("error: {e}");
                eprintln!("hint: raise --precision-digits (and possibly --q-terms) and rerun");
                return ExitCode::from(EXIT_OUT_OF_SCOPE);
            }
        }
    } else {
        None
    };
    let section = CmSection {
        discriminant: args.disc,
        class_number: cg.order(),
        cyclic_factors: cg.cyclic_factors.clone(),
        generator: cg.generator.map(|g| cg.forms[g]),
        forms: cg.forms.clone(),
        embeddings: embeddings
            .entries
            .iter()
            .map(|e| EmbeddingRow {
                index: e.index,
                class: e.class,
                square: e.square,
                lattice: e.lattice.form,
                lattice_name: e.lattice.form.oriented_name(),
            })
            .collect(),
        hilbert,
    };
    let doc = ReportDocument {
        schema_version: SCHEMA_VERSION,
        invocation: format!("cm --disc {}", args.disc),
        payload: Payload::Cm(section),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else if let Payload::Cm(s) = &doc.payload {
        println!("discriminant {}: class number {}", s.discriminant, s.class_number);
        let factors: Vec<String> = s.cyclic_factors.iter().map(|f| format!("Z/{f}")).collect();
        if factors.is_empty() {
            println!("class group: trivial");
        } else {
            println!("class group: {}", factors.join(" x "));
        }
        if let Some(g) = &s.generator {
            println!("generator: {g}");
        }
        println!("embedding lattices (index i -> oriented transcendental lattice of the i-th fiber):");
        for row in &s.embeddings {
            println!(
                "  i={}  class {}  square {}  ->  {}",
                row.index, row.class, row.square, row.lattice_name
            );
        }
        if let Some(h) = &s.hilbert {
            println!("Hilbert class polynomial (degree {}):", h.degree);
            println!("  coefficients, highest degree first:");
            for c in &h.coefficients {
                println!("    {c}");
            }
            println!("  max rounding error: {:.3e}", h.max_rounding_error);
        }
    }
    ExitCode::SUCCESS
}

fn run_census(args: CensusArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = std::fs::create_dir_all(&args.out) {
        eprintln!("error: cannot create {}: {e}", args.out.display());
        return ExitCode::from(EXIT_USAGE);
    }
    let mut jobs: Vec<(usize, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        jobs.push((lineno + 1, line.to_owned()));
    }

    let queue: Mutex<VecDeque<(usize, String)>> = Mutex::new(jobs.iter().cloned().collect());
    let results: Mutex<Vec<CensusEntry>> = Mutex::new(Vec::new());
    let workers = args.workers.max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let job = queue.lock().expect("queue lock").pop_front();
                let Some((lineno, input)) = job else { break };
                let entry = census_one(&input, lineno, &args.out, args.resume);
                results.lock().expect("results lock").push(entry);
            });
        }
    });
    let mut entries = results.into_inner().expect("results");
    entries.sort_by_key(|e| e.line);

    let any_failed = entries.iter().any(|e| e.status == "failed");
    let summary = CensusSummary {
        input: args.input.display().to_string(),
        out_dir: args.out.display().to_string(),
        entries,
    };
    let doc = ReportDocument {
        schema_version: SCHEMA_VERSION,
        invocation: format!("census --input {}", args.input.display()),
        payload: Payload::Census(summary),
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else if let Payload::Census(s) = &doc.payload {
        println!("census of {} ({} entries):", s.input, s.entries.len());
        for e in &s.entries {
            match (&e.canonical, e.total_components, &e.error) {
                (Some(c), Some(t), _) => {
                    println!("  line {:3}  {:14} {:8} components {}", e.line, c, e.status, t)
                }
                (_, _, Some(err)) => println!("  line {:3}  {:14} failed: {err}", e.line, e.input),
                _ => println!("  line {:3}  {:14} {}", e.line, e.input, e.status),
            }
        }
    }
    if any_failed {
        ExitCode::from(EXIT_PARTIAL)
    } else {
        ExitCode::SUCCESS
    }
}

fn census_one(input: &str, lineno: usize, out_dir: &Path, resume: bool) -> CensusEntry {
    let dynkin = match DynkinType::parse(input) {
        Ok(d) => d,
        Err(e) => {
            return CensusEntry {
                line: lineno,
                input: input.to_owned(),
                canonical: None,
                status: "failed".to_owned(),
                total_components: None,
                error: Some(e.to_string()),
            }
        }
    };
    let canonical = dynkin.canonical_string();
    let path = out_dir.join(format!("{canonical}.json"));
    if resume && path.exists() {
        // Reuse the recorded total so the summary stays complete.
        let total = std::fs::read_to_string(&path)
            .ok()
            .and_then(|t| serde_json::from_str::<ReportDocument>(&t).ok())
            .and_then(|doc| match doc.payload {
                Payload::Components(r) => Some(r.total_components),
                _ => None,
            });
        return CensusEntry {
            line: lineno,
            input: input.to_owned(),
            canonical: Some(canonical),
            status: "skipped".to_owned(),
            total_components: total,
            error: None,
        };
    }
    match component_report(&dynkin) {
        Ok(report) => {
            let total = report.total_components;
            let doc = ReportDocument {
                schema_version: SCHEMA_VERSION,
                invocation: format!("components {canonical}"),
                payload: Payload::Components(report),
            };
            let body = serde_json::to_string_pretty(&doc).expect("serializable");
            match write_atomic(&path, &body) {
                Ok(()) => CensusEntry {
                    line: lineno,
                    input: input.to_owned(),
                    canonical: Some(canonical),
                    status: "ok".to_owned(),
                    total_components: Some(total),
                    error: None,
                },
                Err(e) => CensusEntry {
                    line: lineno,
                    input: input.to_owned(),
                    canonical: Some(canonical),
                    status: "failed".to_owned(),
                    total_components: None,
                    error: Some(format!("write failed: {e}")),
                },
            }
        }
        Err(e) => CensusEntry {
            line: lineno,
            input: input.to_owned(),
            canonical: Some(canonical),
            status: "failed".to_owned(),
            total_components: None,
            error: Some(e.to_string()),
        },
    }
}

/// Write via a temporary file in the same directory plus rename, so resumed
/// runs never observe a half-written report.
fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    std::fs::write(&tmp, body)?;
    std::fs::rename(&tmp, path)
}
