//! `supercohom`: cohomology, support varieties and reference checks from the command line.

mod doc;
mod error;
mod goldens;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use supercohom::koszul::{cohomology, CohomologyTable};
use supercohom::lie::{check_supermodule, LieSuperalgebra, Supermodule, Violation};
use supercohom::linalg::{Runtime, Scalar};
use supercohom::resolution::vg_cohomology;
use supercohom::varieties::{char0_support, enumerate_cone, enumerate_cr, support_points};
use supercohom::{FpDyn, Q};

use doc::{build_algebra, build_group, build_module, build_smash, InputDocument};
use error::CliError;
use goldens::Example;
use output::{print_csv, print_json, Format};

#[derive(Parser, Debug)]
#[command(name = "supercohom", version, about = "Cohomology and support varieties of restricted Lie superalgebras")]
struct Cli {
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the algebra, modules and smash modules of a document.
    Check { input: PathBuf },
    /// Cohomology dimensions in degrees 0..=max-degree.
    Cohomology {
        input: PathBuf,
        #[arg(long)]
        module: Option<String>,
        /// Defaults to 2p+2 (6 in characteristic 0).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value_t = Which::Lie)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rational points of the odd cone, a support, C_r, or a characteristic-0 support.
    Variety {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Cone)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Maximum number of rational points to enumerate.
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        #[arg(long)]
        module: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Recompute a reference example and compare with the expected values.
    VerifyPaper {
        #[arg(long, value_enum)]
        example: Example,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Lie,
    Vg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Cone,
    Support,
    Cr,
    Char0Support,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok(mut report) => {
            if cli.timing {
                report["seconds"] = json!(start.elapsed().as_secs_f64());
            }
            let failed = report.get("pass") == Some(&Value::Bool(false));
            if !report.get("csv").is_some_and(|c| c.as_bool() == Some(true)) {
                if let Err(e) = print_json(&report) {
                    eprintln!("{e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            }
            if failed {
                eprintln!("verification failed");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load(path: &PathBuf) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    InputDocument::parse(&text)
}

/// Run `f` over `Q` for `p = 0`, otherwise over F_p with the modulus installed.
macro_rules! with_field {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {{
        let p: u32 = $p;
        if p == 0 {
            $f::<Q>($($arg),*)
        } else {
            Runtime::install(p)?;
            $f::<FpDyn>($($arg),*)
        }
    }};
}

fn dispatch(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Check { input } => {
            let d = load(input)?;
            with_field!(d.characteristic()?, check(&d))
        }
        Command::Cohomology { input, module, max_degree, which, format } => {
            let d = load(input)?;
            with_field!(d.characteristic()?, cohomology_cmd(&d, module.as_deref(), *max_degree, *which, *format))
        }
        Command::Variety { input, kind, r, bound, module, format } => {
            let d = load(input)?;
            let opts = VarietyOpts { kind: *kind, r: *r, bound: *bound, module: module.as_deref(), format: *format };
            with_field!(d.characteristic()?, variety(&d, &opts))
        }
        Command::VerifyPaper { example, p, seed } => {
            let p = if example.needs_char0() { 0 } else { *p };
            let checks = with_field!(p, verify(*example, *seed))?;
            let pass = checks.iter().all(|c| c.passed());
            Ok(json!({
                "example": example.name(),
                "p": p,
                "seed": seed,
                "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                "pass": pass,
            }))
        }
    }
}

fn verify<S: Scalar>(ex: Example, seed: u64) -> Result<Vec<goldens::Check>, CliError> {
    goldens::run::<S>(ex, seed)
}

fn violations_json<S: Scalar>(g: &LieSuperalgebra<S>, v: &[Violation]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| {
                let names: Vec<&str> = x.witness.iter().map(|&i| g.names.get(i).map_or("?", |s| s.as_str())).collect();
                json!({"identity": x.identity, "witness": names})
            })
            .collect(),
    )
}

fn algebra<S: Scalar>(d: &InputDocument) -> Result<LieSuperalgebra<S>, CliError> {
    let spec = d.algebra.as_ref().ok_or_else(|| CliError::Parse("document has no algebra".into()))?;
    build_algebra::<S>(spec)
}

fn module<S: Scalar>(d: &InputDocument, g: &LieSuperalgebra<S>, name: &str) -> Result<Supermodule<S>, CliError> {
    let spec = d.modules.get(name).ok_or_else(|| CliError::Parse(format!("no module named {name:?}")))?;
    build_module(g, spec)
}

fn check<S: Scalar>(d: &InputDocument) -> Result<Value, CliError> {
    let mut report = json!({});
    let mut failures = Vec::new();
    if let Some(spec) = &d.algebra {
        let g = build_algebra::<S>(spec)?;
        let v = g.validate();
        if let Some(first) = v.first() {
            failures.push(format!("algebra: {} at {:?}", first.identity, first.witness.iter().map(|&i| &g.names[i]).collect::<Vec<_>>()));
        }
        report["algebra"] = json!({
            "dims": [g.dims().0, g.dims().1],
            "restricted": g.is_restricted(),
            "violations": violations_json(&g, &v),
        });
        let mut mods = serde_json::Map::new();
        for (name, ms) in &d.modules {
            let m = build_module(&g, ms)?;
            let v = check_supermodule(&g, &m);
            if let Some(first) = v.first() {
                failures.push(format!("module {name}: {} at {:?}", first.identity, first.witness));
            }
            mods.insert(name.clone(), json!({"dim": m.dim(), "violations": violations_json(&g, &v)}));
        }
        report["modules"] = Value::Object(mods);
    } else if !d.modules.is_empty() {
        return Err(CliError::Parse("modules need an algebra".into()));
    }
    if let Some(gs) = &d.group {
        let gd = build_group::<S>(gs)?;
        report["group"] = json!({"dim": gd.group.dim, "order": gd.group.order()});
        let mut mods = serde_json::Map::new();
        for (name, ms) in &d.smash_modules {
            let m = build_smash(&gd, ms)?;
            let res = m.check_compatibility(&gd.group);
            if let Err(e) = &res {
                failures.push(format!("smash module {name}: {e}"));
            }
            mods.insert(name.clone(), json!({"dim": m.dim(), "sdim": m.sdim(), "compatible": res.is_ok()}));
        }
        report["smash_modules"] = Value::Object(mods);
    } else if !d.smash_modules.is_empty() {
        return Err(CliError::Parse("smash modules need a group".into()));
    }
    report["field"] = json!(field_name::<S>());
    if failures.is_empty() {
        report["ok"] = json!(true);
        Ok(report)
    } else {
        print_json(&report)?;
        Err(CliError::Validation(failures.join("; ")))
    }
}

fn field_name<S: Scalar>() -> String {
    match S::characteristic() {
        0 => "Q".into(),
        p => format!("F_{p}"),
    }
}

fn cohomology_cmd<S: Scalar>(
    d: &InputDocument,
    module_name: Option<&str>,
    max_degree: Option<u32>,
    which: Which,
    format: Format,
) -> Result<Value, CliError> {
    let g = algebra::<S>(d)?;
    let p = S::characteristic();
    let top = max_degree.unwrap_or(if p == 0 { 6 } else { 2 * p + 2 });
    let table: CohomologyTable = match which {
        Which::Lie => {
            let m = module_name.map(|n| module(d, &g, n)).transpose()?;
            cohomology(&g, m.as_ref(), top + 1)?
        }
        Which::Vg => {
            if module_name.is_some() {
                return Err(CliError::Parse("--which vg takes trivial coefficients only".into()));
            }
            vg_cohomology(&g, top + 1)?
        }
    };
    if format == Format::Csv {
        let rows: Vec<Vec<String>> = table.dims.iter().map(|(n, k)| vec![n.to_string(), k.to_string()]).collect();
        print_csv(&["degree".into(), "dimension".into()], &rows)?;
        return Ok(json!({"csv": true}));
    }
    Ok(json!({
        "field": field_name::<S>(),
        "which": if which == Which::Lie { "lie" } else { "vg" },
        "module": module_name.unwrap_or("trivial"),
        "max_degree": top,
        "dimensions": table.dims.iter().map(|(n, k)| json!({"degree": n, "dimension": k})).collect::<Vec<_>>(),
    }))
}

struct VarietyOpts<'a> {
    kind: Kind,
    r: usize,
    bound: u64,
    module: Option<&'a str>,
    format: Format,
}

fn strings<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn points_out(header: Vec<String>, rows: Vec<Vec<String>>, format: Format, mut extra: Value) -> Result<Value, CliError> {
    if format == Format::Csv {
        print_csv(&header, &rows)?;
        return Ok(json!({"csv": true}));
    }
    extra["coordinates"] = json!(header);
    extra["count"] = json!(rows.len());
    extra["points"] = json!(rows);
    Ok(extra)
}

fn variety<S: Scalar>(d: &InputDocument, o: &VarietyOpts) -> Result<Value, CliError> {
    if o.kind == Kind::Char0Support {
        if S::characteristic() != 0 {
            return Err(CliError::Parse("char0-support needs a characteristic-0 document".into()));
        }
        let gs = d.group.as_ref().ok_or_else(|| CliError::Parse("document has no group".into()))?;
        let gd = build_group::<S>(gs)?;
        let name = o.module.ok_or_else(|| CliError::Parse("--module is required".into()))?;
        let spec = d.smash_modules.get(name).ok_or_else(|| CliError::Parse(format!("no smash module named {name:?}")))?;
        let m = build_smash(&gd, spec)?;
        let dim = gd.group.dim;
        let tests: Vec<Vec<S>> = match &d.test_vectors {
            Some(tv) => tv.iter().map(|v| v.iter().map(|c| c.to::<S>()).collect()).collect::<Result<_, _>>()?,
            None => box_vectors::<S>(dim, 2),
        };
        let rep = char0_support(&gd.group, &m, &tests)?;
        let header: Vec<String> = (0..dim).map(|i| format!("v{i}")).collect();
        let rows = rep.member_vectors().iter().map(|v| strings(v)).collect();
        let orbits = rep.orbits.iter().map(|x| json!({"representative": strings(&x.representative), "size": x.vectors.len(), "member": x.member}));
        let extra = json!({"kind": "char0-support", "tested": tests.len(), "orbits": orbits.collect::<Vec<_>>()});
        return points_out(header, rows, o.format, extra);
    }
    let g = algebra::<S>(d)?;
    let odd_names: Vec<String> = g.odd_indices().iter().map(|&i| g.names[i].clone()).collect();
    match o.kind {
        Kind::Cone => {
            let cone = enumerate_cone(&g, o.bound)?;
            let rows = cone.iter().map(|c| strings(&c.coords)).collect();
            points_out(odd_names, rows, o.format, json!({"kind": "cone"}))
        }
        Kind::Support => {
            let name = o.module.ok_or_else(|| CliError::Parse("--module is required".into()))?;
            let m = module(d, &g, name)?;
            let rep = support_points(&g, &m, o.bound)?;
            let rows = rep.member_points.iter().map(|c| strings(&c.coords)).collect();
            let extra = json!({
                "kind": "support",
                "module": name,
                "tested": rep.tested_points,
                "zero_only": rep.is_zero_only,
                "dimension_estimate": rep.dimension_estimate,
            });
            points_out(odd_names, rows, o.format, extra)
        }
        Kind::Cr => {
            let tuples = enumerate_cr(&g, o.r, o.bound)?;
            let (ev, od) = (g.even_indices(), g.odd_indices());
            let mut header = Vec::new();
            for k in 0..o.r {
                header.extend(ev.iter().map(|&i| format!("alpha{k}.{}", g.names[i])));
            }
            header.extend(od.iter().map(|&i| format!("beta.{}", g.names[i])));
            let pick = |v: &[S], idx: &[usize]| idx.iter().map(|&i| v[i].to_string()).collect::<Vec<_>>();
            let rows = tuples
                .iter()
                .map(|t| t.alphas.iter().flat_map(|a| pick(a, &ev)).chain(pick(&t.beta, &od)).collect())
                .collect();
            points_out(header, rows, o.format, json!({"kind": "cr", "r": o.r}))
        }
        Kind::Char0Support => unreachable!(),
    }
}

/// Nonzero integer vectors in `[-b, b]^dim`.
fn box_vectors<S: Scalar>(dim: usize, b: i64) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v| (-b..=b).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.into_iter().filter(|v| v.iter().any(|&c| c != 0)).map(|v| v.into_iter().map(S::from_i64).collect()).collect()
}
