//! `fincat`: load `.fincat` files, run the constructions and checks, and
//! emit a deterministic report (text or JSON).
//!
//! Exit codes: 0 = all verdicts positive, 1 = a check failed, 2 = bad
//! input (parse error, unknown name, bad usage).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use fincat::cat::{self, FunctorData};
use fincat::dagger::{self, DaggerStructure};
use fincat::dsl::{self, Document};
use fincat::fixtures;
use fincat::gens::{self, GeneratorSpec};
use fincat::herm;
use fincat::involutive::{self, AntiInvolutiveCategory, T_on_category};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "fincat", version, about = "finite category engine")]
struct Cli {
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse FILE and validate every block in it.
    Validate { file: PathBuf },
    /// List the Hermitian fixed points of an anti-involution.
    Fixedpoints {
        file: PathBuf,
        #[arg(long)]
        inv: String,
    },
    /// Build the Hermitian completion (optionally cut down to a positivity
    /// notion) and check the dagger axioms on it.
    Herm {
        file: PathBuf,
        #[arg(long)]
        inv: String,
        #[arg(long)]
        positivity: Option<String>,
    },
    /// Unitary classes of the completion of T(D), with the brute-force
    /// cross-check.
    Pi0u {
        file: PathBuf,
        #[arg(long)]
        dagger: String,
    },
    /// Check whether a dagger category is indefinite.
    Indefinite {
        file: PathBuf,
        #[arg(long)]
        dagger: String,
    },
    /// Check that a declared functor is an equivalence (optionally a dagger
    /// equivalence, or that it admits an involutive structure).
    Equiv {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        dagger: bool,
        #[arg(long)]
        involutive: bool,
    },
    /// Check the strict triangle identities for an involution (or, for a
    /// dagger name, on its associated anti-involutive category).
    Triangles {
        file: PathBuf,
        #[arg(long)]
        name: String,
    },
    /// Compare dagger functors with the Hermitian fixed points of the
    /// functor-category involution.
    Corollary {
        file: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Generate a fixture file. Kinds: zn N | s3 | discrete P0,P1,.. |
    /// poset N | matrix Q MAXDIM
    Gen {
        kind: String,
        params: Vec<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run the built-in battery over the bundled fixture suite.
    Report {
        /// Include the large matrix fixtures.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Serialize)]
struct Input {
    name: String,
    sha256: String,
}

#[derive(Serialize)]
struct Verdict {
    name: String,
    holds: bool,
    details: serde_json::Value,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    inputs: Vec<Input>,
    verdicts: Vec<Verdict>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: Vec::new(),
            verdicts: Vec::new(),
        }
    }
    fn verdict(&mut self, name: &str, holds: bool, details: serde_json::Value) {
        self.verdicts.push(Verdict { name: name.to_string(), holds, details });
    }
    fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "fincat {} (schema v{})", self.command, self.schema_version);
        for i in &self.inputs {
            let _ = writeln!(out, "input {} sha256={}", i.name, i.sha256);
        }
        for v in &self.verdicts {
            let status = if v.holds { "PASS" } else { "FAIL" };
            if v.details.is_null() {
                let _ = writeln!(out, "{status} {}", v.name);
            } else {
                let _ = writeln!(out, "{status} {} {}", v.name, v.details);
            }
        }
        out
    }
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{}", report.render_text());
            }
            if report.all_hold() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path, report: &mut Report) -> Result<Document, CliError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let digest = hex(&Sha256::digest(src.as_bytes()));
    report.inputs.push(Input { name: path.display().to_string(), sha256: digest });
    dsl::parse(&src).map_err(|e| CliError(format!("{}:{e}", path.display())))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn cap_from(flag: Option<u128>) -> u128 {
    flag.unwrap_or_else(fincat::default_cap)
}

fn lookup_inv<'a>(doc: &'a Document, name: &str) -> Result<&'a AntiInvolutiveCategory, CliError> {
    doc.involution(name)
        .ok_or_else(|| CliError(format!("no involution named `{name}` in the file")))
}

fn lookup_dagger<'a>(doc: &'a Document, name: &str) -> Result<&'a DaggerStructure, CliError> {
    doc.dagger(name)
        .ok_or_else(|| CliError(format!("no dagger named `{name}` in the file")))
}

/// The unique dagger/involution declared on a category, by category name.
fn dagger_on<'a>(doc: &'a Document, cat: &str) -> Result<&'a DaggerStructure, CliError> {
    let mut hits = doc.daggers.iter().filter(|(_, on, _)| on == cat);
    match (hits.next(), hits.next()) {
        (Some((_, _, d)), None) => Ok(d),
        (None, _) => Err(CliError(format!("no dagger declared on category `{cat}`"))),
        _ => Err(CliError(format!("more than one dagger declared on `{cat}`"))),
    }
}

fn involution_on<'a>(doc: &'a Document, cat: &str) -> Result<&'a AntiInvolutiveCategory, CliError> {
    let mut hits = doc.involutions.iter().filter(|(_, on, _)| on == cat);
    match (hits.next(), hits.next()) {
        (Some((_, _, a)), None) => Ok(a),
        (None, _) => Err(CliError(format!("no involution declared on category `{cat}`"))),
        _ => Err(CliError(format!("more than one involution declared on `{cat}`"))),
    }
}

fn point_json(a: &AntiInvolutiveCategory, p: &herm::HermitianFixedPoint) -> serde_json::Value {
    serde_json::json!({
        "object": a.base().object_name(p.object),
        "h": a.base().morphism(p.h).name,
    })
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Cmd::Validate { file } => {
            let mut report = Report::new("validate");
            let doc = load(file, &mut report)?;
            for (name, cat) in &doc.categories {
                report.verdict(
                    &format!("category {name}"),
                    true,
                    serde_json::json!({"objects": cat.n_objects(), "morphisms": cat.n_morphisms()}),
                );
            }
            for (name, on, _) in &doc.daggers {
                report.verdict(&format!("dagger {name}"), true, serde_json::json!({"on": on}));
            }
            for (name, on, _) in &doc.involutions {
                report.verdict(&format!("involution {name}"), true, serde_json::json!({"on": on}));
            }
            for (name, on, _) in &doc.positivities {
                report.verdict(&format!("positivity {name}"), true, serde_json::json!({"on": on}));
            }
            for (name, from, to, _) in &doc.functors {
                report.verdict(
                    &format!("functor {name}"),
                    true,
                    serde_json::json!({"from": from, "to": to}),
                );
            }
            Ok(report)
        }
        Cmd::Fixedpoints { file, inv } => {
            let mut report = Report::new("fixedpoints");
            let doc = load(file, &mut report)?;
            let a = lookup_inv(&doc, inv)?;
            let fps = herm::enumerate_fixed_points(a);
            let listed: Vec<serde_json::Value> = fps.iter().map(|p| point_json(a, p)).collect();
            report.verdict(
                "fixed-points",
                true,
                serde_json::json!({"count": fps.len(), "points": listed}),
            );
            Ok(report)
        }
        Cmd::Herm { file, inv, positivity } => {
            let mut report = Report::new("herm");
            let doc = load(file, &mut report)?;
            let a = lookup_inv(&doc, inv)?;
            let h = match positivity {
                None => herm::herm_completion(a),
                Some(pname) => {
                    let (on, p) = doc
                        .positivity(pname)
                        .ok_or_else(|| CliError(format!("no positivity named `{pname}`")))?;
                    if on != inv {
                        return Err(CliError(format!(
                            "positivity `{pname}` is declared on `{on}`, not `{inv}`"
                        )));
                    }
                    herm::herm_P(a, p)
                }
            };
            let axioms = h.validate_dagger_axioms();
            report.verdict(
                "completion-dagger-axioms",
                axioms.is_ok(),
                serde_json::json!({
                    "objects": h.n_points(),
                    "morphisms": h.n_morphisms(),
                    "failure": axioms.err(),
                }),
            );
            // indefiniteness is only guaranteed for the full completion
            if positivity.is_none() {
                let ind = h.is_indefinite();
                report.verdict(
                    "completion-indefinite",
                    ind.indefinite,
                    serde_json::json!({"counterexample": ind.counterexample}),
                );
            }
            Ok(report)
        }
        Cmd::Pi0u { file, dagger } => {
            let mut report = Report::new("pi0u");
            let doc = load(file, &mut report)?;
            let d = lookup_dagger(&doc, dagger)?;
            let t = T_on_category(d);
            let h = herm::herm_completion(&t);
            let classes = h.transfer_classes();
            let listed: Vec<Vec<serde_json::Value>> = classes
                .classes
                .iter()
                .map(|c| c.iter().map(|&i| point_json(&t, &h.points()[i])).collect())
                .collect();
            report.verdict(
                "pi0u",
                true,
                serde_json::json!({"classes": classes.classes.len(), "members": listed}),
            );
            report.verdict(
                "transfer-equals-unitary",
                classes == h.brute_force_unitary_classes(),
                serde_json::Value::Null,
            );
            Ok(report)
        }
        Cmd::Indefinite { file, dagger } => {
            let mut report = Report::new("indefinite");
            let doc = load(file, &mut report)?;
            let d = lookup_dagger(&doc, dagger)?;
            let v = dagger::is_indefinite(d);
            let details = match v.counterexample {
                None => serde_json::Value::Null,
                Some((x, a)) => serde_json::json!({
                    "object": d.base().object_name(x),
                    "a": d.base().morphism(a).name,
                    "a_index": a,
                }),
            };
            report.verdict("indefinite", v.indefinite, details);
            Ok(report)
        }
        Cmd::Equiv { file, from, to, functor, dagger, involutive } => {
            let mut report = Report::new("equiv");
            let doc = load(file, &mut report)?;
            let (_, f_from, f_to, f) = doc
                .functor(functor)
                .ok_or_else(|| CliError(format!("no functor named `{functor}`")))?;
            if f_from != from || f_to != to {
                return Err(CliError(format!(
                    "functor `{functor}` goes {f_from} -> {f_to}, not {from} -> {to}"
                )));
            }
            let v = cat::is_equivalence(f);
            report.verdict(
                "equivalence",
                v.is_equivalence(),
                serde_json::json!({
                    "fully_faithful": v.fully_faithful,
                    "essentially_surjective": v.essentially_surjective,
                }),
            );
            if *dagger {
                let d1 = dagger_on(&doc, from)?;
                let d2 = dagger_on(&doc, to)?;
                report.verdict(
                    "dagger-functor",
                    dagger::is_dagger_functor(d1, d2, f),
                    serde_json::Value::Null,
                );
                match dagger::is_dagger_equivalence(d1, d2, f) {
                    Ok(dv) => report.verdict(
                        "dagger-equivalence",
                        dv.holds(),
                        serde_json::json!({
                            "fully_faithful": dv.fully_faithful,
                            "surjective_up_to_unitaries": dv.surjective_up_to_unitaries,
                        }),
                    ),
                    Err(e) => return Err(CliError(e.to_string())),
                }
            }
            if *involutive {
                let a1 = involution_on(&doc, from)?;
                let a2 = involution_on(&doc, to)?;
                let phi = search_involutive_structure(a1, a2, f);
                let details = match &phi {
                    Some(phi) => serde_json::json!({
                        "phi": phi
                            .iter()
                            .map(|&m| a2.base().morphism(m).name.clone())
                            .collect::<Vec<_>>(),
                    }),
                    None => serde_json::Value::Null,
                };
                report.verdict("involutive-structure-exists", phi.is_some(), details);
            }
            Ok(report)
        }
        Cmd::Triangles { file, name } => {
            let mut report = Report::new("triangles");
            let doc = load(file, &mut report)?;
            if let Some(a) = doc.involution(name) {
                report.verdict("triangle-herm-side", herm::check_triangle_anti(a), serde_json::Value::Null);
            } else if let Some(d) = doc.dagger(name) {
                report.verdict("triangle-herm-side", herm::check_triangle_anti(&T_on_category(d)), serde_json::Value::Null);
                report.verdict("triangle-base-side", herm::check_triangle_dagger(d), serde_json::Value::Null);
            } else {
                return Err(CliError(format!("no involution or dagger named `{name}`")));
            }
            Ok(report)
        }
        Cmd::Corollary { file, source, target, cap } => {
            let mut report = Report::new("corollary");
            let doc = load(file, &mut report)?;
            let d1 = lookup_dagger(&doc, source)?;
            let d2 = lookup_dagger(&doc, target)?;
            let rep = herm::dagger_functors_vs_fixed_points(d1, d2, cap_from(*cap))
                .map_err(|e| CliError(e.to_string()))?;
            report.verdict(
                "embedding-fully-faithful",
                rep.embedding_fully_faithful,
                serde_json::json!({
                    "fixed_points": rep.fixed_points.len(),
                    "dagger_functors": rep.dagger_functors.len(),
                }),
            );
            report.verdict(
                "image-equals-positivity-preserving",
                rep.essential_image == rep.positivity_preserving,
                serde_json::json!({
                    "essential_image": rep.essential_image,
                    "positivity_preserving": rep.positivity_preserving,
                }),
            );
            Ok(report)
        }
        Cmd::Gen { kind, params, out } => {
            let mut report = Report::new("gen");
            let doc = generate_document(kind, params)?;
            let printed = dsl::print(&doc);
            debug_assert_eq!(dsl::parse(&printed).as_ref(), Ok(&doc));
            std::fs::write(out, &printed)
                .map_err(|e| CliError(format!("{}: {e}", out.display())))?;
            report.verdict(
                "generated",
                true,
                serde_json::json!({"kind": kind, "file": out.display().to_string()}),
            );
            Ok(report)
        }
        Cmd::Report { full } => Ok(builtin_battery(*full)),
    }
}

/// Brute-force search for a structure map phi making F involutive.
fn search_involutive_structure(
    a1: &AntiInvolutiveCategory,
    a2: &AntiInvolutiveCategory,
    f: &FunctorData,
) -> Option<Vec<usize>> {
    let n = a1.base().n_objects();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            a2.base()
                .hom_vec(f.apply_obj(a1.d_obj(x)), a2.d_obj(f.apply_obj(x)))
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    let mut idx = vec![0usize; n];
    loop {
        let phi: Vec<usize> = (0..n).map(|x| candidates[x][idx[x]]).collect();
        if involutive::validate_involutive_functor(a1, a2, f.clone(), phi.clone()).is_ok() {
            return Some(phi);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return None;
            }
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn parse_usize(s: &str) -> Result<usize, CliError> {
    s.parse::<usize>().map_err(|_| CliError(format!("expected a number, got `{s}`")))
}

fn generate_document(kind: &str, params: &[String]) -> Result<Document, CliError> {
    let bundle = match kind {
        "zn" => {
            let [n] = params else {
                return Err(CliError("usage: gen zn N -o FILE".into()));
            };
            let n = parse_usize(n)?;
            let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            gens::generate(&GeneratorSpec::Delooping {
                names,
                table: gens::zn_table(n),
                twist: None,
            })?
        }
        "s3" => {
            let names: Vec<String> = (0..6).map(|i| format!("s{i}")).collect();
            gens::generate(&GeneratorSpec::Delooping {
                names,
                table: gens::s3_table(),
                twist: None,
            })?
        }
        "discrete" => {
            let [perm] = params else {
                return Err(CliError("usage: gen discrete P0,P1,... -o FILE".into()));
            };
            let perm: Vec<usize> = perm
                .split(',')
                .map(|p| parse_usize(p.trim()))
                .collect::<Result<_, _>>()?;
            gens::generate(&GeneratorSpec::DiscreteInvolution { perm })?
        }
        "poset" => {
            let [n] = params else {
                return Err(CliError("usage: gen poset N -o FILE".into()));
            };
            gens::generate(&GeneratorSpec::PosetAntitone { n: parse_usize(n)? })?
        }
        "matrix" => {
            let [q, maxdim] = params else {
                return Err(CliError("usage: gen matrix Q MAXDIM -o FILE".into()));
            };
            gens::generate(&GeneratorSpec::MatrixFiniteField {
                q: parse_usize(q)?,
                maxdim: parse_usize(maxdim)?,
            })?
        }
        other => return Err(CliError(format!("unknown generator kind `{other}`"))),
    };
    bundle_to_document(kind, bundle)
}

/// Renders a generated bundle as a document named C (with D for the dagger
/// and T for the involution), renaming as needed for DSL safety.
fn bundle_to_document(kind: &str, bundle: gens::Bundle) -> Result<Document, CliError> {
    let cat = dsl::sanitize_names(&bundle.category);
    let name = format!("{}_cat", kind);
    let mut doc = Document {
        categories: vec![(name.clone(), cat.clone())],
        ..Default::default()
    };
    if let Some(d) = &bundle.dagger {
        let renamed = DaggerStructure::validate(cat.clone(), d.dag_map().to_vec())
            .map_err(|e| CliError(e.to_string()))?;
        if bundle.involution.is_none() {
            doc.involutions.push(("T".into(), name.clone(), T_on_category(&renamed)));
        }
        doc.daggers.push(("D".into(), name.clone(), renamed));
    }
    if let Some(a) = &bundle.involution {
        let d = FunctorData::validate(
            cat.opposite(),
            cat.clone(),
            a.d_functor().object_map.clone(),
            a.d_functor().morphism_map.clone(),
        )
        .map_err(|e| CliError(e.to_string()))?;
        let renamed = AntiInvolutiveCategory::validate(cat.clone(), d, a.eta_map().to_vec())
            .map_err(|e| CliError(e.to_string()))?;
        doc.involutions.push(("T".into(), name, renamed));
    }
    Ok(doc)
}

/// The built-in battery over the bundled fixtures; deterministic.
fn builtin_battery(full: bool) -> Report {
    let mut report = Report::new("report");
    let fixtures_list: Vec<(&str, AntiInvolutiveCategory)> = fixtures::anti_involutive_fixtures()
        .into_iter()
        .filter(|(name, _)| full || !name.contains("M2"))
        .collect();
    for (name, a) in &fixtures_list {
        let h = herm::herm_completion(a);
        report.verdict(
            &format!("completion-dagger-axioms {name}"),
            h.validate_dagger_axioms().is_ok(),
            serde_json::json!({"points": h.n_points()}),
        );
        report.verdict(
            &format!("completion-indefinite {name}"),
            h.is_indefinite().indefinite,
            serde_json::Value::Null,
        );
        report.verdict(
            &format!("transfer-equals-unitary {name}"),
            h.transfer_classes() == h.brute_force_unitary_classes(),
            serde_json::Value::Null,
        );
        report.verdict(
            &format!("strict-triangles {name}"),
            herm::check_triangle_anti(a),
            serde_json::Value::Null,
        );
        report.verdict(
            &format!("counit-equivalence {name}"),
            herm::counit_checks(a, &h) && herm::counit_is_equivalence_onto_restriction(a, &h),
            serde_json::Value::Null,
        );
    }
    let daggers: Vec<DaggerStructure> = fixtures::dagger_fixtures()
        .into_iter()
        .filter(|d| full || d.base().n_morphisms() < 200)
        .collect();
    for (i, d) in daggers.iter().enumerate() {
        let h = herm::herm_completion(&T_on_category(d));
        report.verdict(
            &format!("unit-criterion dagger-fixture-{i}"),
            herm::unit_verdict(d, &h).holds() == dagger::is_indefinite(d).indefinite,
            serde_json::Value::Null,
        );
        report.verdict(
            &format!("tp-biequivalence dagger-fixture-{i}"),
            herm::check_Tp_biequivalence(d).holds(),
            serde_json::Value::Null,
        );
    }
    report
}
