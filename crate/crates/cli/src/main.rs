mod store;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use quartic_core::atlas::{extremal_quartic, quasiprimitive_4line, standard_double_line, wl_family_member, WlKind};
use quartic_core::cohomology::{cohomology_table, CurveCohomology};
use quartic_core::components::{
    components_csv, components_json, connectedness_certificate, quadric_spot_checks, representative,
    special_hilbert_facts, thick_witness, ComponentLabel, G8Convention,
};
use quartic_core::config::{parse_window, RunConfig};
use quartic_core::corpus::{build_corpus, write_corpus};
use quartic_core::deform::{
    verify_disjoint_doubles, verify_extend, verify_perrin, verify_thintothick, verify_wl_closure, WlClosure,
};
use quartic_core::parse::{format_ideal, parse_ideal};
use quartic_core::{Ideal, MonomialOrder, Ring};

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "quartic", version, about = "Degree-four space curves: components, cohomology and certificates")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Prime characteristic of the base field.
    #[arg(long = "char", global = true, default_value_t = quartic_core::DEFAULT_CHARACTERISTIC)]
    characteristic: u32,
    /// Monomial order: grevlex or lex.
    #[arg(long, global = true, default_value = "grevlex")]
    order: String,
    /// Comma-separated nonzero parameter values for family fibres.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    t_samples: Option<Vec<i64>>,
    /// Cohomology window `lo:hi`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for the content-addressed report store.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit tables as CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Pretty JSON on stdout (the default for non-table output).
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum, default_value_t = Convention::Inclusive)]
    g8_convention: Convention,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Convention {
    Strict,
    Inclusive,
}

impl From<Convention> for G8Convention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Strict => G8Convention::Strict,
            Convention::Inclusive => G8Convention::Inclusive,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Components of H(4, g) with dimensions and both G8 counts.
    Components {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// Nonemptiness, component count and dimensions for any genus.
    Facts {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// Spectrum and curve classification of an ideal file.
    Spectrum {
        #[arg(long)]
        file: PathBuf,
    },
    /// Table of h^i(I_C(n)) over the window.
    Cohomology {
        #[arg(long)]
        file: PathBuf,
    },
    /// Rao module dimensions, presentation and j-invariant.
    Rao {
        #[arg(long)]
        file: PathBuf,
    },
    /// Runs a curve constructor and prints the ideal.
    Build(BuildArgs),
    /// Runs a specialization certificate.
    Verify(VerifyArgs),
    /// Connectedness graph of H(4, g) with its certificates.
    CertifyConnectedness {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// Times the main kernels once.
    Bench,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Constructor {
    DoubleLine,
    Extremal,
    Thick,
    Quasiprimitive,
    Wl,
    Representative,
    Corpus,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(value_enum)]
    constructor: Constructor,
    #[arg(short, allow_negative_numbers = true)]
    a: Option<i64>,
    #[arg(short, allow_negative_numbers = true)]
    b: Option<i64>,
    #[arg(short, allow_negative_numbers = true)]
    c: Option<i64>,
    #[arg(short, allow_negative_numbers = true)]
    j: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    genus: Option<i64>,
    /// WL family: F1, F2, F3 or F4.
    #[arg(long)]
    kind: Option<String>,
    /// Component label such as G7,1.
    #[arg(long)]
    label: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Certificate {
    Thintothick,
    Extend,
    Disjoint,
    Wlclosure,
    Perrin,
    Quadrics,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    certificate: Certificate,
    #[arg(short, allow_negative_numbers = true)]
    a: Option<i64>,
    #[arg(short, allow_negative_numbers = true)]
    b: Option<i64>,
    #[arg(short, allow_negative_numbers = true)]
    c: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    genus: Option<i64>,
    /// Closure kind: f2-in-f1 or f4-in-f3.
    #[arg(long, default_value = "f2-in-f1")]
    kind: String,
}

struct Report {
    body: Value,
    passed: bool,
    csv: Option<String>,
}

impl Report {
    fn pass(body: Value) -> Self {
        Report { body, passed: true, csv: None }
    }
}

fn need(v: Option<i64>, name: &str) -> Result<i64> {
    v.ok_or_else(|| anyhow!("missing parameter {name}"))
}

fn config(opts: &GlobalOpts) -> Result<RunConfig> {
    let mut cfg = RunConfig::default().with_characteristic(opts.characteristic).with_seed(opts.seed);
    cfg.order = MonomialOrder::parse(&opts.order)?;
    if let Some(t) = &opts.t_samples {
        cfg = cfg.with_samples(t);
    }
    if let Some(w) = &opts.window {
        cfg = cfg.with_window(Some(parse_window(w)?));
    }
    cfg.out_dir = opts.out.clone();
    cfg.validate()?;
    Ok(cfg)
}

fn read_ideal(path: &Path, cfg: &RunConfig) -> Result<Ideal> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ideal = parse_ideal(&text).with_context(|| format!("parsing {}", path.display()))?;
    if ideal.ring().order() == cfg.order {
        Ok(ideal)
    } else {
        Ok(ideal.map_to(&ideal.ring().with_order(cfg.order))?)
    }
}

fn curve_summary(ideal: &Ideal) -> Result<Value> {
    let coh = CurveCohomology::new(ideal)?;
    Ok(json!({
        "ideal": ideal.to_string(),
        "degree": coh.degree(),
        "genus": coh.genus(),
        "class": coh.classify(),
    }))
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Report> {
    let conv: G8Convention = cli.global.g8_convention.into();
    let ring = Ring::projective(cfg.characteristic).with_order(cfg.order);
    match &cli.command {
        Command::Components { genus } => {
            let csv = cli.global.csv.then(|| components_csv(*genus, conv)).transpose()?;
            Ok(Report { body: components_json(*genus, conv)?, passed: true, csv })
        }
        Command::Facts { genus } => Ok(Report::pass(serde_json::to_value(special_hilbert_facts(*genus))?)),
        Command::Spectrum { file } => {
            let ideal = read_ideal(file, cfg)?;
            let coh = CurveCohomology::new(&ideal)?;
            let spectrum = coh.spectrum()?;
            Ok(Report::pass(json!({
                "degree": coh.degree(),
                "genus": coh.genus(),
                "spectrum": spectrum.to_string(),
                "values": spectrum.values(),
                "class": spectrum.class(coh.degree(), coh.genus()),
            })))
        }
        Command::Cohomology { file } => {
            let ideal = read_ideal(file, cfg)?;
            let table = cohomology_table(&ideal, cfg.window)?;
            let csv = cli.global.csv.then(|| table_csv(&table)).transpose()?;
            let passed = table.euler_holds();
            let mut body = serde_json::to_value(&table)?;
            body["euler_holds"] = json!(passed);
            Ok(Report { body, passed, csv })
        }
        Command::Rao { file } => {
            let ideal = read_ideal(file, cfg)?;
            Ok(Report::pass(serde_json::to_value(CurveCohomology::new(&ideal)?.rao_presentation()?)?))
        }
        Command::Build(args) => build(args, &ring, cfg),
        Command::Verify(args) => verify(args, &ring, cfg),
        Command::CertifyConnectedness { genus } => {
            let cert = connectedness_certificate(*genus, conv, cfg)?;
            if let Some(dir) = &cfg.out_dir {
                for c in cert.certificates.values() {
                    store::put(&dir.join("certificates"), &c.to_json())?;
                }
            }
            let mut body = cert.graph_json();
            body["certificates"] = cert.certificates.iter().map(|(k, c)| (k.clone(), c.to_json())).collect::<serde_json::Map<_, _>>().into();
            Ok(Report { body, passed: cert.passed(), csv: None })
        }
        Command::Bench => bench(cfg),
    }
}

fn table_csv(table: &quartic_core::cohomology::CohomologyTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &table.rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn build(args: &BuildArgs, ring: &quartic_core::RingRef, cfg: &RunConfig) -> Result<Report> {
    let ideal = match args.constructor {
        Constructor::DoubleLine => standard_double_line(ring, need(args.a, "-a")?)?,
        Constructor::Extremal => extremal_quartic(ring, need(args.genus, "--genus")?)?,
        Constructor::Thick => {
            let g = need(args.genus, "--genus")?;
            thick_witness(ring, g, args.j.unwrap_or((5 - g).div_euclid(2)))?
        }
        Constructor::Quasiprimitive => {
            quasiprimitive_4line(ring, need(args.a, "-a")?, need(args.b, "-b")?, need(args.c, "-c")?, 1)?
        }
        Constructor::Wl => {
            let kind = WlKind::parse(args.kind.as_deref().ok_or_else(|| anyhow!("missing parameter --kind"))?)?;
            wl_family_member(ring, kind, need(args.a, "-a")?, need(args.genus, "--genus")?)?.curve
        }
        Constructor::Representative => {
            let label = ComponentLabel::parse(args.label.as_deref().ok_or_else(|| anyhow!("missing parameter --label"))?)?;
            let g = need(args.genus, "--genus")?;
            representative(ring, label, g)?.ok_or_else(|| anyhow!("no explicit representative for {label} at g = {g}"))?
        }
        Constructor::Corpus => {
            let dir = cfg.out_dir.as_ref().ok_or_else(|| anyhow!("corpus needs --out"))?;
            let entries = build_corpus(cfg.characteristic)?;
            let rows = write_corpus(&entries, &dir.join("corpus"))?;
            return Ok(Report::pass(json!({ "manifest": rows })));
        }
    };
    let mut body = curve_summary(&ideal)?;
    body["file"] = json!(format_ideal(&ideal));
    Ok(Report::pass(body))
}

fn verify(args: &VerifyArgs, ring: &quartic_core::RingRef, cfg: &RunConfig) -> Result<Report> {
    let cert = match args.certificate {
        Certificate::Thintothick => verify_thintothick(need(args.a, "-a")?, need(args.b, "-b")?, need(args.c, "-c")?, cfg)?,
        Certificate::Extend => verify_extend(need(args.a, "-a")?, need(args.b, "-b")?, cfg)?,
        Certificate::Disjoint => verify_disjoint_doubles(need(args.b, "-b")?, need(args.c, "-c")?, cfg)?,
        Certificate::Wlclosure => {
            verify_wl_closure(WlClosure::parse(&args.kind)?, need(args.a, "-a")?, need(args.genus, "--genus")?, cfg)?
        }
        Certificate::Perrin => {
            let rep = verify_perrin(need(args.genus, "--genus")?, cfg)?;
            let mut body = serde_json::to_value(&rep)?;
            body["verdict"] = json!(if rep.passed() { "pass" } else { "fail" });
            return Ok(Report { body, passed: rep.passed(), csv: None });
        }
        Certificate::Quadrics => {
            let rows = quadric_spot_checks(ring, need(args.genus, "--genus")?)?;
            let passed = rows.iter().all(|r| r.status == quartic_core::deform::Status::Pass);
            return Ok(Report { body: json!({ "rows": rows }), passed, csv: None });
        }
    };
    Ok(Report { body: cert.to_json(), passed: cert.passed(), csv: None })
}

fn bench(cfg: &RunConfig) -> Result<Report> {
    type Job = (&'static str, fn(&RunConfig) -> Result<bool>);
    let jobs: [Job; 4] = [
        ("count-components-g-1000", |_| Ok(quartic_core::components::count_components(-1000, G8Convention::Inclusive)?.total == 42755)),
        ("thintothick-1-0-1", |c| Ok(verify_thintothick(1, 0, 1, c)?.passed())),
        ("extend-1-1", |c| Ok(verify_extend(1, 1, c)?.passed())),
        ("perrin-g-4", |c| Ok(verify_perrin(-4, c)?.passed())),
    ];
    let rows: Vec<(String, bool, f64)> = jobs
        .par_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let ok = f(cfg).unwrap_or(false);
            (name.to_string(), ok, start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    let passed = rows.iter().all(|r| r.1);
    let body = json!({
        "timings_ms": rows.iter().map(|(n, ok, ms)| json!({ "kernel": n, "ok": ok, "ms": ms })).collect::<Vec<_>>(),
    });
    Ok(Report { body, passed, csv: None })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = config(&cli.global).and_then(|cfg| {
        let report = run(&cli, &cfg)?;
        Ok((cfg, report))
    });
    let (cfg, report) = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let envelope = json!({
        "command": command_name(&cli.command),
        "config": cfg,
        "result": report.body,
        "verdict": if report.passed { "pass" } else { "fail" },
    });
    if let Some(dir) = &cfg.out_dir {
        match store::put(dir, &envelope) {
            Ok(path) => eprintln!("report: {}", path.display()),
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_ERROR);
            }
        }
    }
    match (&report.csv, cli.global.csv) {
        (Some(csv), true) => print!("{csv}"),
        _ => print!("{}", String::from_utf8(store::canonical_bytes(&envelope)).expect("utf-8")),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED_CHECK)
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Components { .. } => "components",
        Command::Facts { .. } => "facts",
        Command::Spectrum { .. } => "spectrum",
        Command::Cohomology { .. } => "cohomology",
        Command::Rao { .. } => "rao",
        Command::Build(_) => "build",
        Command::Verify(_) => "verify",
        Command::CertifyConnectedness { .. } => "certify-connectedness",
        Command::Bench => "bench",
    }
}
