//! Command-line front end: category validation, negativity and entropy
//! evaluation, simplex sweeps, zero-locus scans, and the fermionic
//! cross-check demo.
//!
//! Exit codes: 0 success, 1 domain violation (failed checks, invalid
//! states), 2 usage or I/O errors.

use anyon_neg::builtin;
use anyon_neg::category::{Category, CheckMode, verify_all};
use anyon_neg::dimer::{DimerState, dimer_from_weights, new_dimer};
use anyon_neg::fermionic;
use anyon_neg::json::{
    CategoryJson, DimerJson, category_from_json, dimer_from_json, pt_result_to_json,
};
use anyon_neg::linalg::{C64, CMatrix, trace_norm};
use anyon_neg::pt;
use anyon_neg::zero_locus::{self, fmt_sig12};
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "anyon-neg", about = "Anyonic partial transpose and logarithmic negativity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check pentagon/hexagon/unitarity/dimension/twist consistency.
    Validate {
        #[command(flatten)]
        cat: CategoryArgs,
        /// Verification mode: auto, exhaustive, or sampled.
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Compute the logarithmic negativity of a dimer state.
    Aln {
        #[command(flatten)]
        cat: CategoryArgs,
        #[command(flatten)]
        dimer: DimerArgs,
        /// Write the transpose result as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the negativity on a uniform channel-probability grid.
    Sweep {
        #[command(flatten)]
        cat: CategoryArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 100)]
        resolution: usize,
        /// Append a reference column with the two-spin Werner negativity of
        /// the first probability coordinate.
        #[arg(long)]
        werner: bool,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the zero set of the negativity and the rank data behind it.
    ZeroLocus {
        #[command(flatten)]
        cat: CategoryArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 100)]
        resolution: usize,
        #[arg(long, default_value_t = zero_locus::ZERO_TOL)]
        tol: f64,
        /// Also write the full sweep CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the Majorana-dimer negativity against the Ising value.
    FermionicDemo {
        #[arg(long, default_value_t = 2)]
        modes: usize,
    },
}

#[derive(Args)]
struct CategoryArgs {
    /// Built-in family: fibonacci, ising (with --nu), su2 (with --k), su3_3.
    #[arg(long)]
    builtin: Option<String>,
    /// Ising index (odd), default 1.
    #[arg(long)]
    nu: Option<i64>,
    /// su(2) level.
    #[arg(long)]
    k: Option<usize>,
    /// Load a category from a JSON table file instead.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct DimerArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Channel weights, e.g. `--p I=0.3,tau=0.7`. May be omitted when the
    /// pair has a single admissible channel.
    #[arg(long)]
    p: Option<String>,
    /// 2x2 coefficient matrix [[p, qr+i qi], [qr-i qi, 1-p]] for the
    /// doubly-degenerate channel of the su(3)_3 octet pair:
    /// `--p8 p=0.5,qr=0,qi=0.3`.
    #[arg(long)]
    p8: Option<String>,
    /// Load the full dimer from a JSON file instead of flags.
    #[arg(long)]
    dimer_json: Option<PathBuf>,
}

/// (exit code, message) error channel for the command implementations.
type CmdResult = Result<(), (u8, String)>;

fn usage_err<E: std::fmt::Display>(e: E) -> (u8, String) {
    (2, e.to_string())
}

fn domain_err<E: std::fmt::Display>(e: E) -> (u8, String) {
    (1, e.to_string())
}

fn resolve_category(args: &CategoryArgs) -> Result<Category, (u8, String)> {
    if let Some(path) = &args.json {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage_err(format!("cannot read {}: {e}", path.display())))?;
        let j: CategoryJson = serde_json::from_str(&text)
            .map_err(|e| usage_err(format!("cannot parse {}: {e}", path.display())))?;
        // Structural problems in a parseable file are domain errors.
        return category_from_json(&j).map_err(domain_err);
    }
    let Some(name) = &args.builtin else {
        return Err(usage_err("one of --builtin or --json is required"));
    };
    let cat = match name.as_str() {
        "fibonacci" | "fib" => builtin::fibonacci(),
        "ising" => builtin::ising(args.nu.unwrap_or(1)),
        "su2" => {
            let k = args
                .k
                .ok_or_else(|| usage_err("--builtin su2 requires --k <level>"))?;
            builtin::su2_k(k)
        }
        "su3_3" => builtin::su3_3_subtheory(),
        other => builtin::by_name(other),
    };
    cat.map_err(usage_err)
}

fn resolve_label(cat: &Category, name: &str) -> Result<usize, (u8, String)> {
    cat.label_by_name(name)
        .ok_or_else(|| domain_err(format!("category {} has no label {name:?}", cat.name())))
}

fn parse_kv(list: &str) -> Result<Vec<(String, f64)>, (u8, String)> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| usage_err(format!("expected name=value, got {item:?}")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|e| usage_err(format!("bad value in {item:?}: {e}")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn build_dimer<'c>(cat: &'c Category, args: &DimerArgs) -> Result<DimerState<'c>, (u8, String)> {
    if let Some(path) = &args.dimer_json {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage_err(format!("cannot read {}: {e}", path.display())))?;
        let j: DimerJson = serde_json::from_str(&text)
            .map_err(|e| usage_err(format!("cannot parse {}: {e}", path.display())))?;
        return dimer_from_json(cat, &j).map_err(domain_err);
    }
    let a = resolve_label(cat, &args.a)?;
    let b = resolve_label(cat, &args.b)?;
    if let Some(spec) = &args.p8 {
        let kv = parse_kv(spec)?;
        let get = |key: &str| {
            kv.iter()
                .find(|(k, _)| k == key)
                .map(|&(_, v)| v)
                .unwrap_or(0.0)
        };
        let (p, qr, qi) = (get("p"), get("qr"), get("qi"));
        let f = resolve_label(cat, "8")?;
        let block = CMatrix::from_rows(&[
            vec![C64::new(p, 0.0), C64::new(qr, qi)],
            vec![C64::new(qr, -qi), C64::new(1.0 - p, 0.0)],
        ]);
        let mut map = BTreeMap::new();
        map.insert(f, block);
        return new_dimer(cat, a, b, map).map_err(domain_err);
    }
    if let Some(spec) = &args.p {
        let mut weights = Vec::new();
        for (name, w) in parse_kv(spec)? {
            weights.push((resolve_label(cat, &name)?, w));
        }
        return dimer_from_weights(cat, a, b, &weights).map_err(domain_err);
    }
    let channels = cat.channels(a, b);
    if channels.len() == 1 && cat.n(a, b, channels[0]) == 1 {
        return dimer_from_weights(cat, a, b, &[(channels[0], 1.0)]).map_err(domain_err);
    }
    Err(usage_err("this pair has several channels; specify --p or --p8"))
}

fn cmd_validate(cat_args: &CategoryArgs, mode: &str) -> CmdResult {
    let cat = resolve_category(cat_args)?;
    let mode = match mode {
        "auto" => CheckMode::Auto,
        "exhaustive" => CheckMode::Exhaustive,
        "sampled" => CheckMode::Sampled { count: 3000, seed: 0x5eed },
        other => return Err(usage_err(format!("unknown mode {other:?}"))),
    };
    let reports = verify_all(&cat, mode).map_err(domain_err)?;
    let mut ok = true;
    println!("category: {}", cat.name());
    for r in &reports {
        println!("{r}");
        ok &= r.pass();
    }
    if ok {
        Ok(())
    } else {
        Err((1, format!("category {} failed consistency checks", cat.name())))
    }
}

fn cmd_aln(cat_args: &CategoryArgs, dimer_args: &DimerArgs, out: &Option<PathBuf>) -> CmdResult {
    let cat = resolve_category(cat_args)?;
    let state = build_dimer(&cat, dimer_args)?;
    let res = pt::partial_transpose_a(&state).map_err(domain_err)?;
    let db = cat.qdim(state.b());
    for (c, m) in res.channels() {
        let norm = trace_norm(m).map_err(domain_err)?;
        println!(
            "channel {:>6}: d_c/d_b = {}, ||M^c||_1 = {}",
            cat.label(c).name,
            fmt_sig12(cat.qdim(c) / db),
            fmt_sig12(norm)
        );
    }
    let aln = res.aln().map_err(domain_err)?;
    println!("ALN = {}", fmt_sig12(aln));
    if let Some(path) = out {
        let j = pt_result_to_json(&res).map_err(domain_err)?;
        let text = serde_json::to_string_pretty(&j).map_err(domain_err)?;
        std::fs::write(path, text)
            .map_err(|e| usage_err(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_sweep(
    cat_args: &CategoryArgs,
    a: &str,
    b: &str,
    resolution: usize,
    werner: bool,
    out: &Option<PathBuf>,
) -> CmdResult {
    let cat = resolve_category(cat_args)?;
    let a = resolve_label(&cat, a)?;
    let b = resolve_label(&cat, b)?;
    let grid = zero_locus::sweep(&cat, a, b, resolution).map_err(domain_err)?;
    let csv = if werner {
        let mut out = String::new();
        for name in &grid.channel_names {
            out.push_str(&format!("p_{name},"));
        }
        out.push_str("aln,werner\n");
        for (p, e) in &grid.records {
            for x in p {
                out.push_str(&fmt_sig12(*x));
                out.push(',');
            }
            let w = pt::werner_ln(p[0]).map_err(domain_err)?;
            out.push_str(&format!("{},{}\n", fmt_sig12(*e), fmt_sig12(w)));
        }
        out
    } else {
        grid.to_csv()
    };
    match out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| usage_err(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_zero_locus(
    cat_args: &CategoryArgs,
    a: &str,
    b: &str,
    resolution: usize,
    tol: f64,
    out: &Option<PathBuf>,
) -> CmdResult {
    let cat = resolve_category(cat_args)?;
    let a = resolve_label(&cat, a)?;
    let b = resolve_label(&cat, b)?;
    let delta = zero_locus::delta_matrix(&cat, a, b).map_err(domain_err)?;
    println!("channels: {:?}", delta.channels.iter().map(|&c| cat.label(c).name.clone()).collect::<Vec<_>>());
    println!("rank(Im Delta) = {}", delta.im_rank);
    println!("r0 = {}", delta.r0);
    let grid = zero_locus::sweep(&cat, a, b, resolution).map_err(domain_err)?;
    let zeros = zero_locus::zero_set(&grid, tol);
    println!("zero set ({} of {} grid points, tol {tol:e}):", zeros.len(), grid.records.len());
    for p in &zeros {
        let row: Vec<String> = p.iter().map(|x| fmt_sig12(*x)).collect();
        println!("  {}", row.join(", "));
    }
    if let Some(path) = out {
        std::fs::write(path, grid.to_csv())
            .map_err(|e| usage_err(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_fermionic_demo(modes: usize) -> CmdResult {
    // Clifford sanity on the requested mode count.
    let dim = 1usize << modes;
    for i in 1..=2 * modes {
        for j in 1..=2 * modes {
            let ci = fermionic::majorana(modes, i).map_err(domain_err)?.matrix;
            let cj = fermionic::majorana(modes, j).map_err(domain_err)?.matrix;
            let anti = ci.mul(&cj).add(&cj.mul(&ci));
            let expect = if i == j {
                CMatrix::identity(dim).scale(C64::new(2.0, 0.0))
            } else {
                CMatrix::zeros(dim, dim)
            };
            if anti.max_abs_diff(&expect) > 1e-12 {
                return Err((1, format!("Clifford relation broken for ({i},{j})")));
            }
        }
    }
    println!("Clifford relations hold on {modes} modes");

    // Majorana-dimer density matrix (1 + i c2 c3)/2^modes.
    let c2 = fermionic::majorana(modes, 2).map_err(domain_err)?.matrix;
    let c3 = fermionic::majorana(modes, 3).map_err(domain_err)?.matrix;
    let rho = CMatrix::identity(dim)
        .add(&c2.mul(&c3).scale(C64::new(0.0, 1.0)))
        .scale(C64::new(1.0 / dim as f64, 0.0));
    let rho = fermionic::FockOperator::new(modes, rho).map_err(domain_err)?;
    let ln_f = fermionic::fermionic_ln(&rho, &[1]).map_err(domain_err)?;

    let cat = builtin::ising(1).map_err(domain_err)?;
    let sigma = cat.label_by_name("sigma").unwrap();
    let vac = cat.vacuum();
    let st = dimer_from_weights(&cat, sigma, sigma, &[(vac, 1.0)]).map_err(domain_err)?;
    let ln_a = pt::aln(&st).map_err(domain_err)?;

    println!("Majorana-dimer LN       = {}", fmt_sig12(ln_f));
    println!("Ising sigma-sigma ALN   = {}", fmt_sig12(ln_a));
    let diff = (ln_f - ln_a).abs();
    println!("difference              = {}", fmt_sig12(diff));
    if diff < 1e-10 {
        Ok(())
    } else {
        Err((1, format!("cross-check mismatch {diff:e}")))
    }
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Validate { cat, mode } => cmd_validate(cat, mode),
        Command::Aln { cat, dimer, out } => cmd_aln(cat, dimer, out),
        Command::Sweep { cat, a, b, resolution, werner, out } => {
            cmd_sweep(cat, a, b, *resolution, *werner, out)
        }
        Command::ZeroLocus { cat, a, b, resolution, tol, out } => {
            cmd_zero_locus(cat, a, b, *resolution, *tol, out)
        }
        Command::FermionicDemo { modes } => cmd_fermionic_demo(*modes),
    }
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("ANYON_NEG_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
