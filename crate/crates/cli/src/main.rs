mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hnd_core::acceptance::{run_criterion, Golden, CRITERIA};
use hnd_core::adlv_oracle::{dim_table, DlOracle};
use hnd_core::admissible::{adm, adm_cap_kw, adm_spade, AdmSet};
use hnd_core::conditions::evaluate_conditions;
use hnd_core::frobenius::GroupInstance;
use hnd_core::hn_decomp::verify_adm_decomposition;
use hnd_core::hn_theory::{classification_scan, default_scan_cases, is_hn_decomposable};
use hnd_core::sigma_conj::{b_g_mu_via_criterion, b_g_mu_via_straight, extremal_classes, SigmaClass};
use hnd_core::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hnd", version, about = "Fully Hodge-Newton decomposable triples for classical affine Weyl groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root datum, sigma and admissible-set sizes.
    Describe(ConfigArg),
    /// Evaluate the six equivalent conditions.
    Decide(ConfigArg),
    /// Exhaustive scan of small types against the classification table.
    Scan {
        #[arg(long, default_value_t = 6)]
        mu_bound: i64,
    },
    /// Decompose the admissible set along a non-basic class.
    HnDecompose {
        #[command(flatten)]
        config: ConfigArg,
        /// Index into the list of non-basic classes in B(G, mu).
        #[arg(long)]
        class: Option<usize>,
    },
    /// Admissible sets as reduced words.
    Adm(ConfigArg),
    /// The set B(G, mu) computed two ways.
    Bgmu(ConfigArg),
    /// Dimensions of X(mu, b)_K per class.
    DimTable(ConfigArg),
    /// Run the acceptance suite.
    Verify {
        #[arg(long)]
        criterion: Option<String>,
        /// Replacement golden values.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct ConfigArg {
    #[arg(long)]
    config: PathBuf,
}

/// Failure modes mapped to exit codes.
enum Fail {
    Input(String),
    Property(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Fail::Property(e.to_string()),
            _ => Fail::Input(e.to_string()),
        }
    }
}

/// A report plus whether the checked property held.
struct Outcome {
    report: Value,
    ok: bool,
}

fn load(arg: &ConfigArg) -> Result<GroupInstance, Fail> {
    let text = std::fs::read_to_string(&arg.config)
        .map_err(|e| Fail::Input(format!("{}: {e}", arg.config.display())))?;
    config::load(&text).map_err(|e| Fail::Input(format!("{}: {e}", arg.config.display())))
}

fn words(set: &AdmSet, inst: &GroupInstance) -> Vec<String> {
    let mut v: Vec<String> = set.elements().iter().map(|w| inst.group.format(w)).collect();
    v.sort();
    v
}

fn instance_json(inst: &GroupInstance) -> Value {
    json!({
        "type": inst.datum().cartan_type.to_string(),
        "rank": inst.group.rank(),
        "mu": inst.mu.to_vec(),
        "sigma": inst.sigma.label(),
        "K": inst.k,
    })
}

fn describe(inst: &GroupInstance) -> Result<Outcome, Fail> {
    let d = inst.datum();
    let report = json!({
        "instance": instance_json(inst),
        "root_datum": {
            "name": d.name(),
            "weyl_order": d.weyl().order(),
            "positive_roots": d.num_positive(),
            "marks": d.marks(),
            "two_rho": d.two_rho(),
        },
        "omega_order": inst.group.omega_elements().len(),
        "sigma_order": inst.sigma.order(),
        "sigma0_orbits": inst.sigma.sigma0_orbits(),
        "adm": adm(inst).len(),
        "adm_cap_kw": adm_cap_kw(inst).len(),
        "adm_spade": adm_spade(inst)?.len(),
    });
    Ok(Outcome { report, ok: true })
}

fn decide(inst: &GroupInstance) -> Result<Outcome, Fail> {
    let r = evaluate_conditions(&DlOracle::new(inst.sigma.clone()), inst)?;
    let ok = r.agree;
    Ok(Outcome { report: serde_json::to_value(r).map_err(|e| Fail::Property(e.to_string()))?, ok })
}

fn scan(bound: i64) -> Result<Outcome, Fail> {
    if bound < 1 {
        return Err(Fail::Input("--mu-bound must be positive".into()));
    }
    let r = classification_scan(&default_scan_cases(), bound)?;
    let ok = r.passed();
    Ok(Outcome { report: serde_json::to_value(r).map_err(|e| Fail::Property(e.to_string()))?, ok })
}

fn nonbasic(inst: &GroupInstance) -> Vec<SigmaClass> {
    b_g_mu_via_criterion(inst).into_iter().filter(|c| !c.is_basic()).collect()
}

fn hn_decompose(inst: &GroupInstance, class: Option<usize>) -> Result<Outcome, Fail> {
    let classes = nonbasic(inst);
    let listing = || classes.iter().enumerate().map(|(i, c)| format!("{i}: {}", c.describe())).collect::<Vec<_>>().join("; ");
    if classes.is_empty() {
        return Err(Fail::Input("B(G, mu) has no non-basic class".into()));
    }
    let Some(i) = class else {
        return Err(Fail::Input(format!("select a class with --class; non-basic classes are {}", listing())));
    };
    let c = classes
        .get(i)
        .ok_or_else(|| Fail::Input(format!("class index {i} out of range; non-basic classes are {}", listing())))?;
    if is_hn_decomposable(inst, c)?.is_none() {
        return Err(Fail::Input(format!("{} is not Hodge-Newton decomposable", c.describe())));
    }
    let r = verify_adm_decomposition(&DlOracle::new(inst.sigma.clone()), inst, c)?;
    let ok = r.passed();
    let report = json!({
        "instance": instance_json(inst),
        "class": c,
        "decomposition": serde_json::to_value(r).map_err(|e| Fail::Property(e.to_string()))?,
    });
    Ok(Outcome { report, ok })
}

fn adm_cmd(inst: &GroupInstance) -> Result<Outcome, Fail> {
    let report = json!({
        "instance": instance_json(inst),
        "adm": words(&adm(inst), inst),
        "adm_cap_kw": words(&adm_cap_kw(inst), inst),
        "adm_spade": words(&adm_spade(inst)?, inst),
    });
    Ok(Outcome { report, ok: true })
}

fn bgmu(inst: &GroupInstance) -> Result<Outcome, Fail> {
    let a = adm(inst);
    let straight = b_g_mu_via_straight(inst, a.elements().iter());
    let criterion = b_g_mu_via_criterion(inst);
    let (lo, hi) = extremal_classes(&inst.group, &criterion);
    let ok = straight == criterion && lo.is_some() && hi.is_some();
    let report = json!({
        "instance": instance_json(inst),
        "classes": criterion,
        "agree": straight == criterion,
        "straight_only": straight.difference(&criterion).collect::<Vec<_>>(),
        "criterion_only": criterion.difference(&straight).collect::<Vec<_>>(),
        "min": lo,
        "max": hi,
    });
    Ok(Outcome { report, ok })
}

fn dim_table_cmd(inst: &GroupInstance) -> Result<Outcome, Fail> {
    let t = dim_table(&DlOracle::new(inst.sigma.clone()), inst)?;
    let rows: Vec<Value> = t.into_iter().map(|(c, d)| json!({ "class": c, "dim": d })).collect();
    Ok(Outcome { report: json!({ "instance": instance_json(inst), "dims": rows }), ok: true })
}

fn verify(criterion: Option<String>, golden: Option<PathBuf>) -> Result<Outcome, Fail> {
    let golden = match golden {
        Some(p) => Golden::from_path(&p)?,
        None => Golden::builtin()?,
    };
    let names: Vec<String> = match criterion {
        Some(c) => vec![c],
        None => CRITERIA.iter().map(|s| s.to_string()).collect(),
    };
    let mut outcomes = Vec::new();
    for n in &names {
        let o = run_criterion(n, &golden)?;
        eprintln!("{}", o.line());
        outcomes.push(o);
    }
    let ok = outcomes.iter().all(|o| o.passed);
    if let Some(f) = outcomes.iter().find(|o| !o.passed) {
        eprintln!("first failure: {} ({})", f.name, f.detail);
    }
    Ok(Outcome { report: json!({ "criteria": outcomes, "passed": ok }), ok })
}

/// Human-readable rendering: one `key: value` line per top-level field.
fn render_text(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match x {
                Value::String(s) => format!("{k}: {s}"),
                _ => format!("{k}: {x}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn run(cli: Cli) -> Result<(Outcome, &'static str), Fail> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Fail::Input(e.to_string()))?;
    }
    Ok(match cli.cmd {
        Cmd::Describe(c) => (describe(&load(&c)?)?, "describe"),
        Cmd::Decide(c) => (decide(&load(&c)?)?, "decide"),
        Cmd::Scan { mu_bound } => (scan(mu_bound)?, "scan"),
        Cmd::HnDecompose { config, class } => (hn_decompose(&load(&config)?, class)?, "hn-decompose"),
        Cmd::Adm(c) => (adm_cmd(&load(&c)?)?, "adm"),
        Cmd::Bgmu(c) => (bgmu(&load(&c)?)?, "bgmu"),
        Cmd::DimTable(c) => (dim_table_cmd(&load(&c)?)?, "dim-table"),
        Cmd::Verify { criterion, golden } => (verify(criterion, golden)?, "verify"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_out = cli.json;
    match run(cli) {
        Ok((out, command)) => {
            let mut report = out.report;
            if let Value::Object(m) = &mut report {
                m.insert("command".into(), command.into());
                m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
            }
            if json_out {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                println!("{}", render_text(&report));
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: property check failed");
                ExitCode::from(1)
            }
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Property(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
