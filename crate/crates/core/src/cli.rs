//! The `albert` command line.
//!
//! Every subcommand prints JSON (default) or TSV on stdout. Exit status is 0
//! on success, 2 on a usage error and 1 when a verification fails.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{self, AlbertAlgebra, Presentation};
use crate::automorphism::{
    centralizer_dimensions, check_automorphism, f_uv, fixed_dimension, theta, type1_involution, type2_involution, AutCheck,
    TorusElement,
};
use crate::classify::{self, CensusMode, InvolutionType};
use crate::error::Error;
use crate::field::{Field, FieldKind, Scalar};
use crate::hermitian::HermitianAlgebra;
use crate::kac;
use crate::tits::{parse_mat3, TitsAlgebra};

pub const DEFAULT_SEED: u64 = 20240;

#[derive(Parser, Debug)]
#[command(name = "albert", version, about = "Exact computations in the split Albert algebra")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug)]
pub struct FieldArg {
    /// C, C:<p>, Fp:<p>, Q, R or Qp:<p>
    #[arg(long, default_value = "C")]
    pub field: Field,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresentationArg {
    Hermitian,
    Tits,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Jordan axioms, the cubic identities and the Peirce dimensions.
    VerifyAlgebra {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value_t = PresentationArg::Both)]
        presentation: PresentationArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check whether f_{u,v}, a torus element or θ∘f_t is an automorphism.
    CheckAut {
        #[command(flatten)]
        field: FieldArg,
        /// 3×3 matrix as "a,b,c;d,e,f;g,h,i"
        #[arg(long, requires = "v", conflicts_with = "torus")]
        u: Option<String>,
        #[arg(long, requires = "u")]
        v: Option<String>,
        /// u1,u2,v1,v2
        #[arg(long, required_unless_present = "u")]
        torus: Option<String>,
        /// Compose the torus element with θ.
        #[arg(long, requires = "torus")]
        theta: bool,
    },
    /// Class of the type I involution θ∘f_t.
    Classify {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        torus: String,
    },
    /// One torus element per type I class.
    Representatives {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Classify every or a sample of torus elements over a finite field.
    Census {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long, required_unless_present = "exhaustive")]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Kac coordinates of elements of the given order.
    Kac {
        #[arg(long)]
        order: u64,
    },
    /// Derivations, centralizers and class counts over a field.
    Report {
        #[command(flatten)]
        field: FieldArg,
    },
}

/// Result of one subcommand: a JSON document, a TSV table and a verdict.
pub struct Output {
    pub json: Value,
    pub tsv: Vec<Vec<String>>,
    pub ok: bool,
    pub message: Option<String>,
}

impl Output {
    fn ok(json: Value, tsv: Vec<Vec<String>>) -> Self {
        Output { json, tsv, ok: true, message: None }
    }
}

fn strs(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Characteristic2
            | Error::NotPrime(_)
            | Error::InvalidFieldSpec(_)
            | Error::InvalidScalar(_)
            | Error::ZeroInput(_)
            | Error::FieldMismatch
            | Error::Parse(_)
    )
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("json") + "\n",
                Format::Tsv => o.tsv.iter().map(|r| r.join("\t") + "\n").collect(),
            };
            let _ = out.write_all(text.as_bytes());
            if let Some(m) = o.message {
                let _ = writeln!(err, "{m}");
            }
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

pub fn execute(cmd: &Command) -> crate::Result<Output> {
    match cmd {
        Command::VerifyAlgebra { field, presentation, samples, seed } => verify_algebra(field.field, *presentation, *samples, *seed),
        Command::CheckAut { field, u, v, torus, theta } => check_aut(field.field, u.as_deref(), v.as_deref(), torus.as_deref(), *theta),
        Command::Classify { field, torus } => classify_cmd(field.field, torus),
        Command::Representatives { field } => representatives_cmd(field.field),
        Command::Census { field, exhaustive, samples, seed, jobs } => {
            let mode = if *exhaustive {
                CensusMode::Exhaustive
            } else {
                CensusMode::Sampled { samples: samples.unwrap_or(0), seed: *seed }
            };
            census_cmd(field.field, mode, *jobs)
        }
        Command::Kac { order } => kac_cmd(*order),
        Command::Report { field } => report_cmd(field.field),
    }
}

struct CheckRow {
    presentation: Presentation,
    name: &'static str,
    samples: usize,
    failures: usize,
    witness: Option<Vec<String>>,
}

impl CheckRow {
    fn new(presentation: Presentation, name: &'static str) -> Self {
        CheckRow { presentation, name, samples: 0, failures: 0, witness: None }
    }

    fn record(&mut self, passed: bool, witness: impl FnOnce() -> Vec<String>) {
        self.samples += 1;
        if !passed {
            self.failures += 1;
            self.witness.get_or_insert_with(witness);
        }
    }
}

fn record_named(rows: &mut Vec<CheckRow>, p: Presentation, results: &[(&'static str, bool)], witness: &[Scalar]) {
    for &(name, ok) in results {
        let pos = match rows.iter().position(|r| r.presentation == p && r.name == name) {
            Some(i) => i,
            None => {
                rows.push(CheckRow::new(p, name));
                rows.len() - 1
            }
        };
        rows[pos].record(ok, || strs(witness));
    }
}

fn generic_checks(alg: &dyn AlbertAlgebra, samples: usize, rng: &mut ChaCha8Rng, rows: &mut Vec<CheckRow>) {
    let p = alg.presentation();
    for _ in 0..samples {
        let x = alg.random_vector(rng);
        let y = alg.random_vector(rng);
        let mut both = x.clone();
        both.extend(y.iter().cloned());
        record_named(rows, p, &algebra::jordan_checks(alg, &x, &y), &both);
    }
}

fn peirce_row(alg: &dyn AlbertAlgebra, w: &[Scalar]) -> CheckRow {
    let mut row = CheckRow::new(alg.presentation(), "Peirce dimensions (1,1,9,16)");
    let dims = algebra::peirce_decomposition(alg, w).map(|d| d.dims());
    row.record(dims == Ok((1, 1, 9, 16)), || strs(w));
    row
}

fn verify_algebra(k: Field, which: PresentationArg, samples: usize, seed: u64) -> crate::Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    if which != PresentationArg::Tits {
        let h = HermitianAlgebra::split(k);
        generic_checks(&h, samples, &mut rng, &mut rows);
        for _ in 0..samples.clamp(1, 5) {
            let w = h.random_primitive_idempotent(&mut rng);
            record_named(&mut rows, Presentation::Hermitian, &h.idempotent_lemma_checks(&w), &w.to_coords());
        }
        let w = h.random_primitive_idempotent(&mut rng);
        rows.push(peirce_row(&h, &w.to_coords()));
    }
    if which != PresentationArg::Hermitian {
        let t = TitsAlgebra::new(k);
        generic_checks(&t, samples, &mut rng, &mut rows);
        for _ in 0..samples {
            let x = t.random_element(&mut rng);
            let y = t.random_element(&mut rng);
            let mut results = t.sharped_axioms(&x, &y);
            results.push(("x^3 - Tr(x)x^2 + Sr(x)x - N(x)1 = 0", t.cubic_residual(&x).is_zero()));
            record_named(&mut rows, Presentation::Tits, &results, &x.to_coords());
        }
        rows.push(peirce_row(&t, &t.primitive_idempotent().to_coords()));
    }
    let ok = rows.iter().all(|r| r.failures == 0);
    let checks: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "presentation": r.presentation,
                "check": r.name,
                "samples": r.samples,
                "passed": r.failures == 0,
                "witness": r.witness,
            })
        })
        .collect();
    let mut tsv = vec![vec!["presentation".into(), "check".into(), "samples".into(), "passed".into()]];
    tsv.extend(rows.iter().map(|r| vec![r.presentation.to_string(), r.name.to_string(), r.samples.to_string(), (r.failures == 0).to_string()]));
    let message = rows.iter().find(|r| r.failures > 0).map(|r| format!("verification failed: {} ({})", r.name, r.presentation));
    Ok(Output { json: json!({ "field": k.to_string(), "seed": seed, "passed": ok, "checks": checks }), tsv, ok, message })
}

fn check_aut(k: Field, u: Option<&str>, v: Option<&str>, torus: Option<&str>, with_theta: bool) -> crate::Result<Output> {
    let alg = TitsAlgebra::new(k);
    let (label, phi) = match (u, v, torus) {
        (Some(u), Some(v), _) => {
            let (u, v) = (parse_mat3(&k, u)?, parse_mat3(&k, v)?);
            ("f_uv".to_string(), f_uv(&alg, &u, &v)?)
        }
        (_, _, Some(t)) => {
            let t = TorusElement::parse(&k, t)?;
            let map = t.to_map(&alg);
            if with_theta {
                (format!("theta*{t}"), theta(&alg)?.compose(&map))
            } else {
                (t.to_string(), map)
            }
        }
        _ => return Err(Error::Parse("give --u and --v, or --torus".into())),
    };
    let verdict = check_automorphism(&alg, &phi)?;
    let (witness, row) = match &verdict {
        AutCheck::Pass => (Value::Null, vec![label.clone(), "true".into(), String::new(), String::new()]),
        AutCheck::Fail { kind, witness, second } => (
            json!({ "kind": kind, "x": strs(witness), "y": second.as_deref().map(strs) }),
            vec![label.clone(), "false".into(), serde_json::to_value(kind).expect("kind").as_str().unwrap_or_default().to_string(), strs(witness).join(",")],
        ),
    };
    let message = match &verdict {
        AutCheck::Pass => None,
        AutCheck::Fail { kind, witness, .. } => Some(format!("not an automorphism: {kind} at [{}]", strs(witness).join(","))),
    };
    Ok(Output {
        json: json!({ "field": k.to_string(), "map": label, "passed": verdict.passed(), "witness": witness }),
        tsv: vec![vec!["map".into(), "passed".into(), "witness_kind".into(), "witness".into()], row],
        ok: verdict.passed(),
        message,
    })
}

fn classify_json(k: Field, t: &TorusElement) -> crate::Result<(Value, Vec<String>)> {
    let inv = classify::invariant_of(t, k)?;
    let class = classify::classify(t, k)?;
    let alg = TitsAlgebra::new(k);
    let fixed_dim = fixed_dimension(&type1_involution(&alg, t)?.realized, &k)?;
    let pf = [inv.pfister.zeta().to_string(), inv.pfister.eta().to_string()];
    let gamma = strs(inv.gamma.entries());
    let json = json!({
        "field": k.to_string(),
        "torus": strs(t.params()),
        "kind": class.kind(),
        "class_label": class.to_string(),
        "pfister": pf,
        "gamma": gamma,
        "fixed_dim": fixed_dim,
    });
    let row = vec![
        strs(t.params()).join(","),
        class.kind().to_string(),
        class.to_string(),
        pf.join(","),
        gamma.join(","),
        fixed_dim.to_string(),
    ];
    Ok((json, row))
}

const CLASSIFY_HEADER: [&str; 6] = ["torus", "kind", "class_label", "pfister", "gamma", "fixed_dim"];

fn classify_cmd(k: Field, torus: &str) -> crate::Result<Output> {
    let t = TorusElement::parse(&k, torus)?;
    let (json, row) = classify_json(k, &t)?;
    Ok(Output::ok(json, vec![CLASSIFY_HEADER.map(String::from).to_vec(), row]))
}

fn representatives_cmd(k: Field) -> crate::Result<Output> {
    let reps = classify::representatives(k)?;
    let mut tsv = vec![CLASSIFY_HEADER.map(String::from).to_vec()];
    let mut items = Vec::new();
    for t in &reps {
        let (j, row) = classify_json(k, t)?;
        items.push(j);
        tsv.push(row);
    }
    let json = json!({
        "field": k.to_string(),
        "class_count": {
            "TypeI": classify::class_count(k, InvolutionType::TypeI),
            "TypeII": classify::class_count(k, InvolutionType::TypeII),
        },
        "representatives": items,
    });
    Ok(Output::ok(json, tsv))
}

fn census_cmd(k: Field, mode: CensusMode, jobs: usize) -> crate::Result<Output> {
    let report = classify::census(k, mode, jobs)?;
    let mut tsv = vec!["u1\tu2\tv1\tv2\tclass\tfixed_dim".split('\t').map(String::from).collect::<Vec<_>>()];
    tsv.extend(report.rows.iter().map(|r| {
        let mut row = r.torus.to_vec();
        row.push(r.class.clone());
        row.push(r.fixed_dim.to_string());
        row
    }));
    let json = serde_json::to_value(&report).expect("census json");
    Ok(Output::ok(json, tsv))
}

fn kac_cmd(order: u64) -> crate::Result<Output> {
    if order == 0 {
        return Err(Error::Parse("--order must be positive".into()));
    }
    let mut items = Vec::new();
    let mut tsv = vec![vec!["rho".to_string(), "type".to_string(), "dimension".to_string()]];
    for s in kac::enumerate(order) {
        let ty = kac::centralizer_subdiagram(&s)?;
        tsv.push(vec![s.rho.map(|r| r.to_string()).join(","), ty.to_string(), ty.dimension().to_string()]);
        items.push(json!({ "rho": s.rho, "type": ty, "dimension": ty.dimension() }));
    }
    Ok(Output::ok(Value::Array(items), tsv))
}

fn report_cmd(k: Field) -> crate::Result<Output> {
    let alg = TitsAlgebra::new(k);
    let t1 = type1_involution(&alg, &TorusElement::identity(&k))?;
    let t2 = type2_involution(&alg, &alg.primitive_idempotent().to_coords())?;
    let fixed = [fixed_dimension(&t1.realized, &k)?, fixed_dimension(&t2.realized, &k)?];
    let char3 = k.characteristic() == 3;
    let (der, cent) = if char3 {
        (Value::Null, Value::Null)
    } else {
        let (a, b) = centralizer_dimensions(&alg, &t1.realized)?;
        let (c, d) = centralizer_dimensions(&alg, &t2.realized)?;
        (json!(alg.derivations()?.dim()), json!({ "TypeI": [a, b], "TypeII": [c, d] }))
    };
    let counts = [classify::class_count(k, InvolutionType::TypeI), classify::class_count(k, InvolutionType::TypeII)];
    let kac_check = match k.kind() {
        FieldKind::AlgClosedModel { .. } if !char3 => serde_json::to_value(kac::cross_check_with_classifier(k)?).expect("json"),
        _ => Value::Null,
    };
    let json = json!({
        "field": k.to_string(),
        "derivation_dim": der,
        "centralizers": cent,
        "fixed_dims": { "TypeI": fixed[0], "TypeII": fixed[1] },
        "class_count": { "TypeI": counts[0], "TypeII": counts[1] },
        "kac": kac_check,
    });
    let tsv = vec![
        vec!["quantity".into(), "value".into()],
        vec!["derivation_dim".into(), der.to_string()],
        vec!["fixed_dim_TypeI".into(), fixed[0].to_string()],
        vec!["fixed_dim_TypeII".into(), fixed[1].to_string()],
        vec!["class_count_TypeI".into(), counts[0].to_string()],
        vec!["class_count_TypeII".into(), counts[1].to_string()],
    ];
    Ok(Output::ok(json, tsv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("albert").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["classify", "--field", "Fp:2", "--torus", "1,1,1,1"]).0, 2);
        assert_eq!(run_str(&["classify", "--field", "X", "--torus", "1,1,1,1"]).0, 2);
        assert_eq!(run_str(&["classify", "--field", "Q", "--torus", "1,x,1,1"]).0, 2);
        assert_eq!(run_str(&["classify", "--field", "Q", "--torus", "1,0,1,1"]).0, 2);
        assert_eq!(run_str(&["nonsense"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn classify_real_identity() {
        let (code, out, _) = run_str(&["classify", "--field", "R", "--torus", "1,1,1,1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["fixed_dim"], 15);
        assert_eq!(v["class_label"], "TypeI(division,gamma=(1,1,1))");
    }

    #[test]
    fn failed_check_exits_1_with_witness() {
        let (code, out, err) = run_str(&["check-aut", "--field", "Fp:7", "--u", "2,0,0;0,1,0;0,0,1", "--v", "1,0,0;0,1,0;0,0,1"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], false);
        assert!(v["witness"]["x"].is_array());
        assert!(err.contains("not an automorphism"));
        assert_eq!(run_str(&["check-aut", "--field", "Fp:7", "--torus", "2,3,4,5", "--theta"]).0, 0);
    }

    #[test]
    fn tsv_output() {
        let (code, out, _) = run_str(&["kac", "--order", "2", "--format", "tsv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "rho\ttype\tdimension\n0,1,0,0,0\tA1xC3\t24\n0,0,0,0,1\tB4\t36\n");
    }
}
