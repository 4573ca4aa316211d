mod output;
mod suite;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hecke_tqft::hecke::{homfly_braid_closure, symmetrizer, HeckeElement, SymKind};
use hecke_tqft::moddata::{Check, ModularData};
use hecke_tqft::refine::{refined_decomposition, refined_tau, StructureKind};
use hecke_tqft::scalars::{RingContext, Theory};
use hecke_tqft::surgery::{bundled_manifests, linking_data, tau, PlumbingGraph};
use hecke_tqft::Error;
use serde_json::{json, Value};

use suite::Depth;

const USAGE: u8 = 1;
const COMPUTATION: u8 = 2;
const VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(name = "hecke-tqft", version, about = "Modular data and quantum invariants of plumbed 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Decimal digits of the approximate fields.
    #[arg(long, global = true, default_value_t = 15)]
    precision: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Su,
    Psu,
    Reduced,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::Su => Theory::Su,
            TheoryArg::Psu => Theory::Psu,
            TheoryArg::Reduced => Theory::Reduced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Spin,
    Coho,
}

#[derive(Clone, Copy, ValueEnum)]
enum DepthArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Labels, dimensions, twists, S-matrix and Gauss sums with a verification report.
    ModularData {
        n: u32,
        k: u32,
        #[arg(long, value_enum, default_value = "su")]
        theory: TheoryArg,
    },
    /// Quantum invariant of a plumbing presentation.
    Invariant {
        /// Manifest file, or the name of a bundled manifest.
        #[arg(long, visible_alias = "manifold")]
        manifest: String,
        n: u32,
        k: u32,
        #[arg(long, value_enum, default_value = "su")]
        theory: TheoryArg,
        #[arg(long, value_enum)]
        refined: Option<KindArg>,
        /// One record per structure plus the decomposition check.
        #[arg(long)]
        all_structures: bool,
        /// A single structure vector, comma separated.
        #[arg(long, value_delimiter = ',')]
        structure: Option<Vec<u32>>,
    },
    /// Hecke-algebra cross-checks of dimensions, twists and symmetrizers.
    HeckeCheck {
        n: u32,
        k: u32,
        #[arg(long, default_value_t = 4)]
        max_size: u32,
    },
    /// Homflypt value of a braid closure.
    Homfly {
        /// Comma-separated generators 1..strands−1, negative for inverses.
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: usize,
        n: u32,
        k: u32,
    },
    /// Runs every applicable identity at (N, K).
    Verify {
        n: u32,
        k: u32,
        #[arg(value_enum, default_value = "quick")]
        depth: DepthArg,
    },
}

enum Failure {
    Usage(String),
    Computation(&'static str, Error),
}

type Outcome = Result<(Value, bool), Failure>;

fn compute<T>(module: &'static str, r: hecke_tqft::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Computation(module, e))
}

fn rank_level(n: u32, k: u32) -> Result<(), Failure> {
    if n < 2 || k < 1 {
        return Err(Failure::Usage(format!("need N ≥ 2 and K ≥ 1, got ({n}, {k})")));
    }
    Ok(())
}

fn load_manifest(spec: &str) -> Result<(String, PlumbingGraph), Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
        let g = PlumbingGraph::parse(&text).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok((name, g));
    }
    let name = spec.strip_suffix(".json").unwrap_or(spec);
    let name = Path::new(name).file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    bundled_manifests()
        .get(name.as_str())
        .map(|g| (name.clone(), g.clone()))
        .ok_or_else(|| Failure::Usage(format!("no manifest file or bundled manifest named '{spec}'")))
}

fn modular_data(n: u32, k: u32, theory: Theory, digits: u32) -> Outcome {
    rank_level(n, k)?;
    let data = compute("moddata", ModularData::compute(n, k, theory))?;
    let scalars = |v: &[hecke_tqft::scalars::CycScalar]| -> Vec<Value> { v.iter().map(|x| output::scalar(x, digits)).collect() };
    let out = json!({
        "command": "modular-data",
        "n": n,
        "k": k,
        "theory": theory.name(),
        "rank": data.len(),
        "labels": data.labels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
        "dims": scalars(&data.dims),
        "twists": scalars(&data.twists),
        "s_matrix": data.s_matrix.iter().map(|r| scalars(r)).collect::<Vec<_>>(),
        "omega": output::scalar(&data.omega, digits),
        "delta_plus": output::scalar(&data.delta_plus, digits),
        "delta_minus": output::scalar(&data.delta_minus, digits),
        "spin_case": data.spin_case,
        "report": output::checks(&data.report),
        "passed": data.passed(),
    });
    Ok((out, data.passed()))
}

#[allow(clippy::too_many_arguments)]
fn invariant(
    manifest: &str,
    n: u32,
    k: u32,
    theory: Theory,
    refined: Option<StructureKind>,
    all: bool,
    structure: Option<Vec<u32>>,
    digits: u32,
) -> Outcome {
    rank_level(n, k)?;
    if refined.is_none() && (all || structure.is_some()) {
        return Err(Failure::Usage("--all-structures and --structure need --refined".into()));
    }
    if refined.is_some() && theory != Theory::Reduced {
        return Err(Failure::Usage("--refined needs --theory reduced".into()));
    }
    if refined.is_some() && all == structure.is_some() {
        return Err(Failure::Usage("--refined needs exactly one of --all-structures or --structure".into()));
    }
    let (name, g) = load_manifest(manifest)?;
    let (b, _) = linking_data(&g);
    if let Some(c) = &structure {
        if c.len() != b.len() {
            return Err(Failure::Usage(format!("structure has {} entries, presentation has {} components", c.len(), b.len())));
        }
    }
    let data = compute("moddata", ModularData::compute(n, k, theory))?;
    let mut out = json!({
        "command": "invariant",
        "manifest": name,
        "n": n,
        "k": k,
        "theory": theory.name(),
        "components": b.len(),
        "linking_matrix": b,
        "data_verified": data.passed(),
    });
    let mut passed = data.passed();
    match refined {
        None => {
            let r = compute("surgery", tau(&g, &data))?;
            passed &= !r.report.iter().any(Check::failed);
            out["signature"] = json!(r.signature);
            out["bracket"] = output::scalar(&r.bracket, digits);
            out["value"] = compute("scalars", output::ext(&r.value, digits))?;
            out["report"] = output::checks(&r.report);
        }
        Some(kind) => {
            out["refined"] = json!(kind.to_string());
            if let Some(c) = structure {
                let v = compute("refine", refined_tau(&g, &data, &c, kind))?;
                out["structure"] = json!(c);
                out["value"] = compute("scalars", output::ext(&v, digits))?;
            } else {
                let dec = compute("refine", refined_decomposition(&g, &data, kind))?;
                let mut records = Vec::new();
                for (c, v) in &dec.records {
                    records.push(json!({"structure": c, "value": compute("scalars", output::ext(v, digits))?}));
                }
                out["structures"] = json!(records);
                out["total"] = compute("scalars", output::ext(&dec.total, digits))?;
                out["sum"] = compute("scalars", output::ext(&dec.sum, digits))?;
                out["decomposition_holds"] = json!(dec.holds());
                passed &= dec.holds();
            }
        }
    }
    out["passed"] = json!(passed);
    Ok((out, passed))
}

fn hecke_check(n: u32, k: u32, max_size: u32) -> Outcome {
    rank_level(n, k)?;
    if max_size > 6 {
        return Err(Failure::Usage("--max-size is limited to 6".into()));
    }
    let data = compute("moddata", ModularData::compute(n, k, Theory::Su))?;
    let mut checks = compute("hecke", data.hecke_cross_check(max_size))?;
    let ctx = &data.ctx;
    for m in 2..=max_size as usize {
        for (kind, coeff) in [(SymKind::F, ctx.monomial(1, 1, 0)), (SymKind::G, ctx.monomial(1, -1, 0).scale_int(-1))] {
            let label = format!("σ_i {}_{m} eigenvalue", if kind == SymKind::F { "f" } else { "g" });
            match symmetrizer(ctx, m, kind) {
                Ok(f) => {
                    let ok = (1..m).all(|i| f.left_gen(i) == f.scale(&coeff));
                    checks.push(Check::new(&label, ok, ""));
                }
                Err(e) => checks.push(Check::skip(&label, e.to_string())),
            }
        }
    }
    let passed = !checks.iter().any(Check::failed);
    Ok((json!({"command": "hecke-check", "n": n, "k": k, "max_size": max_size, "checks": checks, "passed": passed}), passed))
}

fn homfly(braid: &[i32], strands: usize, n: u32, k: u32, digits: u32) -> Outcome {
    rank_level(n, k)?;
    if strands == 0 || strands > hecke_tqft::hecke::MAX_STRANDS {
        return Err(Failure::Usage(format!("--strands must lie in 1..={}", hecke_tqft::hecke::MAX_STRANDS)));
    }
    if let Some(&bad) = braid.iter().find(|&&i| i == 0 || i.unsigned_abs() as usize >= strands) {
        return Err(Failure::Usage(format!("generator {bad} out of range for {strands} strands")));
    }
    let ctx = std::sync::Arc::new(compute("scalars", RingContext::su(n, k))?);
    let value = compute("hecke", homfly_braid_closure(&ctx, braid, strands))?;
    // σ − a²σ⁻¹ = a(s − s⁻¹) applied to the first letter
    let skein = match braid.split_first() {
        None => Check::skip("skein relation", "empty braid"),
        Some((&first, rest)) => {
            let i = first.abs();
            let mut plus = vec![i];
            plus.extend_from_slice(rest);
            let mut minus = vec![-i];
            minus.extend_from_slice(rest);
            let p = compute("hecke", homfly_braid_closure(&ctx, &plus, strands))?;
            let m = compute("hecke", homfly_braid_closure(&ctx, &minus, strands))?;
            let z = compute("hecke", homfly_braid_closure(&ctx, rest, strands))?;
            let lhs = &p - &(&ctx.monomial(2, 0, 0) * &m);
            let rhs = &(&ctx.monomial(1, 1, 0) - &ctx.monomial(1, -1, 0)) * &z;
            Check::new("skein relation", lhs == rhs, "")
        }
    };
    let word = HeckeElement::from_word(&ctx, strands, braid).is_ok();
    let passed = word && !skein.failed();
    let out = json!({
        "command": "homfly",
        "n": n,
        "k": k,
        "braid": braid,
        "strands": strands,
        "value": output::scalar(&value, digits),
        "skein_check": skein,
        "passed": passed,
    });
    Ok((out, passed))
}

fn verify(n: u32, k: u32, depth: Depth) -> Outcome {
    rank_level(n, k)?;
    if depth == Depth::Full && n + k > 8 {
        return Err(Failure::Usage("full verification is limited to N + K ≤ 8".into()));
    }
    let gates = compute("verify", suite::run(n, k, depth))?;
    let passed = !gates.iter().any(|g| g.status == hecke_tqft::moddata::CheckStatus::Fail);
    let failed: Vec<&str> = gates.iter().filter(|g| g.status == hecke_tqft::moddata::CheckStatus::Fail).map(|g| g.name.as_str()).collect();
    let out = json!({
        "command": "verify",
        "n": n,
        "k": k,
        "depth": depth,
        "gates": gates,
        "failed": failed,
        "passed": passed,
    });
    Ok((out, passed))
}

fn dispatch(cli: &Cli) -> Outcome {
    let digits = cli.precision;
    if !(1..=200).contains(&digits) {
        return Err(Failure::Usage("--precision must lie in 1..=200".into()));
    }
    match &cli.command {
        Command::ModularData { n, k, theory } => modular_data(*n, *k, (*theory).into(), digits),
        Command::Invariant { manifest, n, k, theory, refined, all_structures, structure } => {
            let kind = refined.map(|r| match r {
                KindArg::Spin => StructureKind::Spin,
                KindArg::Coho => StructureKind::Coho,
            });
            invariant(manifest, *n, *k, (*theory).into(), kind, *all_structures, structure.clone(), digits)
        }
        Command::HeckeCheck { n, k, max_size } => hecke_check(*n, *k, *max_size),
        Command::Homfly { braid, strands, n, k } => {
            let word: Vec<i32> = braid
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Failure::Usage(format!("bad braid letter '{t}'"))))
                .collect::<Result<_, _>>()?;
            homfly(&word, *strands, *n, *k, digits)
        }
        Command::Verify { n, k, depth } => {
            let depth = match depth {
                DepthArg::Quick => Depth::Quick,
                DepthArg::Full => Depth::Full,
            };
            verify(*n, *k, depth)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok((value, passed)) => {
            let text = output::render(&value);
            match &cli.json {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(USAGE);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if passed { 0 } else { VERIFICATION })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Computation(module, e)) => {
            let code = if matches!(e, Error::Verification(_)) { VERIFICATION } else { COMPUTATION };
            eprint!("{}", output::render(&json!({"error": e.to_string(), "module": module})));
            ExitCode::from(code)
        }
    }
}
