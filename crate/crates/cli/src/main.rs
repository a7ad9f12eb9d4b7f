use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fqg_core::classical::{
    check_cyclic_identity, check_dual_group_theorem, check_dualact_consequences, check_magic_unitary, check_order_properties,
    check_pointwise_relations, enumerate_automorphisms, extract_matrix, universal_classical_family,
};
use fqg_core::constructors::{function_algebra, group_algebra};
use fqg_core::family::{
    check_action, check_convolution_preservation, check_family, compose, hat, is_automorphism_family, verify_dual_equivalences, Duality,
};
use fqg_core::fourier::{build_dual, check_iteration_lemma, verify_fourier_identities};
use fqg_core::group::{named_group, FiniteGroup};
use fqg_core::hopf::{check_hw_identity, verify_quantum_group, QuantumGroup};
use fqg_core::io::{dual_to_json, family_from_json, family_to_json, group_from_json, quantum_group_from_json, quantum_group_to_json, FamilyFile};
use fqg_core::report::{CheckResult, Report};
use fqg_core::scalar::set_float_tolerance;
use fqg_core::selftest::{run_all, run_criterion, CriterionOutcome};
use fqg_core::{Error, Exact, Float, Scalar};

#[derive(Parser, Debug)]
#[command(name = "fqg", version, about = "Exact verification engine for finite quantum groups")]
struct Cli {
    /// Arithmetic backend.
    #[arg(long, value_enum, global = true, default_value_t = BackendArg::Exact)]
    backend: BackendArg,

    /// Comparison tolerance for the float backend.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Do not verify user-supplied quantum groups before using them.
    #[arg(long, global = true)]
    skip_verify: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Fun,
    Grp,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Auto,
    Order,
    Cyclic,
    Dual,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build F(G) or C[G] for a named group or a group table file.
    Build {
        #[arg(long, conflicts_with = "table")]
        group: Option<String>,
        /// Group table JSON: {"order": n, "table": [[...]]}.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kind::Fun)]
        kind: Kind,
    },
    /// Build the dual quantum group and the Fourier matrix.
    Dual { file: PathBuf },
    /// Verify the Hopf axioms, the Fourier identities and the Haar relations.
    Verify { file: PathBuf },
    /// Check a quantum family of maps.
    CheckFamily {
        file: PathBuf,
        /// Also run the automorphism, convolution, duality and action checks.
        #[arg(long)]
        all: bool,
    },
    /// Enumerate the automorphisms of a group.
    Aut {
        #[arg(long)]
        group: String,
        /// Write the universal family over F(Aut G) to this file.
        #[arg(long)]
        emit_family: Option<PathBuf>,
    },
    /// Check the relation systems of a family on a classical group.
    Relations {
        file: PathBuf,
        #[arg(long, value_enum)]
        scheme: Scheme,
    },
    /// Compose two families on the same quantum group.
    Compose { first: PathBuf, second: PathBuf },
    /// Run the built-in acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

/// A failure tagged with the stage it happened in.
struct Failure {
    stage: &'static str,
    error: Error,
}

trait Stage<T> {
    fn at(self, stage: &'static str) -> Result<T, Failure>;
}

impl<T> Stage<T> for fqg_core::Result<T> {
    fn at(self, stage: &'static str) -> Result<T, Failure> {
        self.map_err(|error| Failure { stage, error })
    }
}

struct Output {
    json: Value,
    table: String,
    pass: bool,
    /// A built object (quantum group, dual, family). With `-o` it is written
    /// there as JSON and the report goes to stdout; otherwise it is printed.
    artifact: Option<Value>,
}

impl Output {
    fn from_reports(reports: Vec<Report>) -> Self {
        let pass = reports.iter().all(Report::passed);
        let table = reports.iter().map(Report::render_table).collect::<Vec<_>>().join("\n");
        let json = json!({ "pass": pass, "reports": reports });
        Self {
            json,
            table,
            pass,
            artifact: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("FQG_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = match cli.backend {
        BackendArg::Exact => run::<Exact>(&cli),
        BackendArg::Float => {
            set_float_tolerance(cli.tol);
            run::<Float>(&cli)
        }
    };
    match result {
        Ok(out) => {
            let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("json") + "\n";
            let report = match cli.format {
                Format::Json => pretty(&out.json),
                Format::Table => out.table,
            };
            let written = match (&out.artifact, cli.output.as_deref()) {
                (Some(a), Some(path)) => fs::write(path, pretty(a)).and_then(|_| emit(None, &report)),
                (Some(a), None) => emit(None, &pretty(a)),
                (None, path) => emit(path, &report),
            };
            if let Err(e) = written {
                eprintln!("error [output]: {e}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure { stage, error }) => {
            eprintln!("error [{stage}]: {error}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json(path: &Path) -> fqg_core::Result<Value> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn load_group<S: Scalar>(cli: &Cli, path: &Path) -> Result<Result<Arc<QuantumGroup<S>>, Output>, Failure> {
    let g = Arc::new(read_json(path).and_then(|v| quantum_group_from_json::<S>(&v)).at("load")?);
    if cli.skip_verify {
        return Ok(Ok(g));
    }
    let report = verify_quantum_group(&g);
    if report.passed() {
        Ok(Ok(g))
    } else {
        Ok(Err(Output::from_reports(vec![report])))
    }
}

fn load_family<S: Scalar>(cli: &Cli, path: &Path) -> Result<Result<FamilyFile<S>, Output>, Failure> {
    let f = read_json(path).and_then(|v| family_from_json::<S>(&v)).at("load")?;
    if !cli.skip_verify {
        let report = verify_quantum_group(&f.family.source);
        if !report.passed() {
            return Ok(Err(Output::from_reports(vec![report])));
        }
    }
    Ok(Ok(f))
}

macro_rules! verified {
    ($e:expr) => {
        match $e? {
            Ok(v) => v,
            Err(out) => return Ok(out),
        }
    };
}

fn run<S: Scalar>(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Build { group, table, kind } => {
            let g = match (group, table) {
                (Some(name), _) => named_group(name).at("group")?,
                (None, Some(path)) => read_json(path).and_then(|v| group_from_json(&v)).at("load")?,
                (None, None) => {
                    return Err(Failure {
                        stage: "args",
                        error: Error::Parse("build needs --group or --table".into()),
                    })
                }
            };
            let qg = match kind {
                Kind::Fun => function_algebra::<S>(&g),
                Kind::Grp => group_algebra::<S>(&g),
            };
            let mut out = Output::from_reports(vec![verify_quantum_group(&qg)]);
            out.artifact = Some(quantum_group_to_json(&qg));
            Ok(out)
        }
        Command::Dual { file } => {
            let g = verified!(load_group::<S>(cli, file));
            let pair = build_dual(g).at("dual")?;
            let mut out = Output::from_reports(vec![verify_quantum_group(&pair.dual)]);
            out.artifact = Some(dual_to_json(&pair));
            Ok(out)
        }
        Command::Verify { file } => {
            let g = Arc::new(read_json(file).and_then(|v| quantum_group_from_json::<S>(&v)).at("load")?);
            let mut reports = vec![verify_quantum_group(&g)];
            if reports[0].passed() {
                let pair = build_dual(g.clone()).at("dual")?;
                reports.push(check_hw_identity(&g));
                reports.push(verify_fourier_identities(&pair));
                reports.push(check_iteration_lemma(&pair));
            }
            Ok(Output::from_reports(reports))
        }
        Command::CheckFamily { file, all } => {
            let f = verified!(load_family::<S>(cli, file));
            let qf = &f.family;
            let basic = check_family(qf);
            if !all {
                return Ok(Output::from_reports(vec![basic]));
            }
            let d = Duality::new(qf.source.clone()).at("dual")?;
            let verdict = is_automorphism_family(qf, &d).at("automorphism")?;
            let mut reports = vec![
                verdict.report,
                check_convolution_preservation(qf, &d).at("convolution")?,
                verify_dual_equivalences(qf, &d).at("duality")?.report,
            ];
            if qf.hopf_on_target.is_some() {
                reports.push(check_action(qf).at("action")?);
            }
            let mut out = Output::from_reports(reports);
            // the exit status follows the automorphism verdict; the other
            // reports are informational
            out.pass = verdict.is_automorphism;
            out.json["is_automorphism_family"] = json!(verdict.is_automorphism);
            out.table.push_str(&format!("\nis_automorphism_family: {}\n", verdict.is_automorphism));
            Ok(out)
        }
        Command::Aut { group, emit_family } => {
            let g = named_group(group).at("group")?;
            let auts = enumerate_automorphisms(&g);
            if let Some(path) = emit_family {
                let u = universal_classical_family::<S>(&g).at("family")?;
                let v = family_to_json(&u.family, Some(&format!("fun:{group}")), Some(group));
                fs::write(path, serde_json::to_string_pretty(&v).expect("json") + "\n")
                    .map_err(Error::from)
                    .at("output")?;
            }
            let mut table = format!("|Aut({})| = {}\n", g.name, auts.len());
            for a in &auts {
                table.push_str(&format!("  {a:?}\n"));
            }
            Ok(Output {
                json: json!({ "group": g.name, "count": auts.len(), "automorphisms": auts }),
                table,
                pass: true,
                artifact: None,
            })
        }
        Command::Relations { file, scheme } => {
            let f = verified!(load_family::<S>(cli, file));
            let g = f.group.clone().ok_or(Failure {
                stage: "load",
                error: Error::Parse("relations need a classical group: add a \"group\" field or use a fun:/grp: source".into()),
            })?;
            let reports = relations::<S>(&f, &g, *scheme)?;
            let pass = reports.iter().all(Report::passed);
            let witnesses: Vec<Value> = reports
                .iter()
                .flat_map(|r| r.checks.iter().filter(|c| !c.pass))
                .map(|c: &CheckResult| json!({ "check": c.name, "witness": c.witness }))
                .collect();
            let name = format!("{scheme:?}").to_lowercase();
            let mut out = Output::from_reports(reports);
            out.json = json!({ "scheme": name, "pass": pass, "witnesses": witnesses, "reports": out.json["reports"].take() });
            Ok(out)
        }
        Command::Compose { first, second } => {
            let a = verified!(load_family::<S>(cli, first));
            let b = verified!(load_family::<S>(cli, second));
            let c = compose(&a.family, &b.family).at("compose")?;
            let group = a.group.as_ref().map(|g| g.name.clone());
            let mut out = Output::from_reports(vec![check_family(&c)]);
            out.artifact = Some(family_to_json(&c, a.source_ref.as_deref(), group.as_deref()));
            out.pass = true;
            Ok(out)
        }
        Command::Selftest { criterion } => {
            let outcomes = match criterion {
                Some(id) => vec![run_criterion::<S>(*id).at("selftest")?],
                None => run_all::<S>().at("selftest")?,
            };
            Ok(selftest_output(outcomes))
        }
    }
}

fn relations<S: Scalar>(f: &FamilyFile<S>, g: &FiniteGroup, scheme: Scheme) -> Result<Vec<Report>, Failure> {
    let qf = &f.family;
    if scheme == Scheme::Dual {
        let d = Duality::new(qf.source.clone()).at("dual")?;
        // a family on F(Γ) is checked through its hat, which lives on ℂ[Γ]
        if qf.source.approx_eq(&function_algebra::<S>(g)) {
            let h = hat(qf, &d.pair).at("dual")?;
            return Ok(vec![check_dual_group_theorem(&h, g, &d.swapped()).at("relations")?]);
        }
        return Ok(vec![check_dual_group_theorem(qf, g, &d).at("relations")?]);
    }
    let m = extract_matrix(qf, g).at("relations")?;
    Ok(match scheme {
        Scheme::Auto => vec![
            check_pointwise_relations(&m).at("relations")?,
            check_magic_unitary(&m),
            check_dualact_consequences(&m).at("relations")?,
        ],
        Scheme::Order => vec![check_order_properties(&m).at("relations")?],
        Scheme::Cyclic => vec![check_cyclic_identity(&m).at("relations")?],
        Scheme::Dual => unreachable!(),
    })
}

fn selftest_output(outcomes: Vec<CriterionOutcome>) -> Output {
    let pass = outcomes.iter().all(|o| o.pass);
    let mut table = String::new();
    for o in &outcomes {
        table.push_str(&format!("[{}] criterion {:>2}: {}\n", if o.pass { "PASS" } else { "FAIL" }, o.id, o.title));
        for c in o.checks.iter().filter(|c| !c.pass) {
            table.push_str(&format!("      check {} failed, witness {:?}\n", c.name, c.witness));
        }
        for r in o.reports.iter().filter(|r| !r.passed()) {
            table.push_str(&format!("      {} failed: {}\n", r.subject, r.failures().join(", ")));
        }
    }
    Output {
        json: json!({ "pass": pass, "criteria": outcomes }),
        table,
        pass,
        artifact: None,
    }
}
