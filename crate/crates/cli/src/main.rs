use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use permrat::derivation::{derive_n3, derive_n4, load_or_derive_n3, load_or_derive_n4, Cache, CACHE_ENV};
use permrat::exec::Exec;
use permrat::fields::{find_normal_element, make_field, prime_index, FieldConfig, DEFAULT_SIEVE_LIMIT};
use permrat::identities::{verify_difference_identity, verify_lemma21, verify_n3, verify_n4, Report};
use permrat::mpoly::{text, IntPoly};
use permrat::search::{
    classify_all_b, count_common_points, count_on_conjugates, count_points, find_collision_brute, is_permutation,
    lang_weil_threshold, moore_transform, specialize_params, variety_witness, CountRecord, Derived,
    ProblemInstance, SearchError, Witness, DEFAULT_BUDGET,
};

/// Exact algebra and finite-field experiments for x + 1/(x^p - x + b).
#[derive(Parser)]
#[command(name = "permrat", version)]
struct Cli {
    /// Directory holding derived `.poly` files and the manifest.
    #[arg(long, global = true, env = CACHE_ENV, default_value = "cache")]
    cache_dir: PathBuf,
    /// Worker threads for scans; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Maximum number of points a single scan may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Re-derive instead of failing on a corrupt cache.
    #[arg(long, global = true)]
    refresh: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the elimination polynomials and write them to the cache.
    Derive {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        n: u8,
        /// Output directory; defaults to the cache directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an identity suite and print its report.
    Verify {
        #[command(flatten)]
        suite: Suite,
        /// Trials for the randomized suites.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Test whether f_b permutes F_{p^n}.
    Permtest {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// b as coordinates c0,c1,... in the polynomial basis.
        #[arg(long, conflicts_with = "all_b", required_unless_present = "all_b")]
        b: Option<String>,
        /// Classify every b with nonzero trace, grouped by trace.
        #[arg(long)]
        all_b: bool,
        /// Random extra b per run when the field is too large to test all b.
        #[arg(long, default_value_t = 8)]
        extras: usize,
    },
    /// Find x, y != 0 with f_b(x + y) = f_b(x).
    Witness {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
    },
    /// Count zeros of a `.poly` file over F_p.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: PathBuf,
        /// Also intersect with the zeros of this polynomial.
        #[arg(long)]
        with: Option<PathBuf>,
        /// Apply (Y)·M(z) for the first normal z of F_{p^k} before counting.
        #[arg(long)]
        moore: bool,
        /// Values of the parameters, in header order.
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<u64>>,
    },
    /// Least admissible prime of the point-count inequality.
    Threshold {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        n: u8,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Suite {
    /// Identity suite of the derived system for this n.
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
    n: Option<u8>,
    /// Randomized Moore-matrix suite over F_{p^n}.
    #[arg(long, num_args = 2, value_names = ["P", "N"])]
    lemma21: Option<Vec<u64>>,
    /// Randomized difference-identity suite over F_{p^n} at b.
    #[arg(long, num_args = 3, value_names = ["P", "N", "B"])]
    diff: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Variety,
}

/// An error caused by the invocation rather than the computation.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

struct Ctx {
    cache: Cache,
    exec: Exec,
    budget: u64,
    format: Format,
    seed: u64,
    refresh: bool,
}

impl Ctx {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
            Format::Text => print!("{}", text()),
        }
    }

    fn emit_report(&self, report: &Report) -> ExitCode {
        let value = serde_json::to_value(report).expect("report serializes");
        self.emit(&value, || {
            let mut s = format!("{} {:?}\n", report.suite, report.verdict);
            for c in &report.checks {
                s += &format!("  {:<24} {:<5} {}\n", c.check_id, format!("{:?}", c.status), c.details);
            }
            s
        });
        if report.passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        cache: Cache::new(&cli.cache_dir),
        exec: Exec::with_workers(cli.workers),
        budget: cli.budget,
        format: cli.format,
        seed: cli.seed,
        refresh: cli.refresh,
    };
    match run(&ctx, cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<ExitCode> {
    match command {
        Command::Derive { n, out } => cmd_derive(ctx, n, out),
        Command::Verify { suite, trials } => cmd_verify(ctx, suite, trials),
        Command::Permtest { p, n, b, all_b, extras } => cmd_permtest(ctx, p, n, b.as_deref(), all_b, extras),
        Command::Witness { p, n, b, method } => cmd_witness(ctx, p, n, &b, method),
        Command::Count {
            p,
            poly,
            with,
            moore,
            params,
        } => cmd_count(ctx, p, &poly, with.as_deref(), moore, params),
        Command::Threshold { n } => cmd_threshold(ctx, n),
    }
}

fn field(p: u64, n: usize) -> Result<FieldConfig> {
    make_field(p, n).map_err(|e| usage(e.to_string()))
}

fn instance(p: u64, n: usize, b: &str) -> Result<ProblemInstance> {
    let cfg = field(p, n)?;
    let b = cfg.parse(b).map_err(|e| usage(format!("bad b: {e}")))?;
    ProblemInstance::new(cfg, b).map_err(|e| usage(e.to_string()))
}

fn cmd_derive(ctx: &Ctx, n: u8, out: Option<PathBuf>) -> Result<ExitCode> {
    let cache = out.map_or_else(|| ctx.cache.clone(), Cache::new);
    let system = format!("n{n}");
    let (polys, log) = if n == 3 {
        let s = derive_n3()?;
        (vec![("P", s.p), ("Q", s.q), ("G", s.g)], s.log)
    } else {
        let s = derive_n4()?;
        (vec![("A", s.a), ("B", s.b), ("P", s.p), ("Q", s.q), ("G", s.g), ("L", s.l)], s.log)
    };
    let refs: Vec<(&str, &IntPoly)> = polys.iter().map(|(k, f)| (*k, f)).collect();
    cache.store(&system, &refs, &log)?;
    let manifest = cache.manifest()?.ok_or_else(|| anyhow!("manifest missing after store"))?;
    let entry = &manifest.systems[&system];
    let files: Vec<Value> = polys
        .iter()
        .map(|(name, f)| {
            let file = format!("{system}_{name}.poly");
            json!({
                "file": file,
                "terms": f.len(),
                "degree": f.degree(),
                "block_degree": f.block_degree(),
                "sha256": entry.files[&file].sha256,
            })
        })
        .collect();
    let value = json!({
        "schema": 1,
        "seed": ctx.seed,
        "system": system,
        "dir": cache.dir(),
        "files": files,
        "log": log,
    });
    ctx.emit(&value, || {
        polys
            .iter()
            .map(|(name, f)| {
                format!(
                    "{system}_{name}.poly: {} terms, degree {} ({} in the variable block)\n",
                    f.len(),
                    f.degree(),
                    f.block_degree()
                )
            })
            .collect()
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(ctx: &Ctx, args: Suite, trials: usize) -> Result<ExitCode> {
    let report = if let Some(n) = args.n {
        if n == 3 {
            let (sys, _) = load_or_derive_n3(&ctx.cache, ctx.refresh)?;
            verify_n3(&sys, ctx.seed, &ctx.exec)
        } else {
            let (sys, _) = load_or_derive_n4(&ctx.cache, ctx.refresh)?;
            verify_n4(&sys, ctx.seed, &ctx.exec)
        }
        .with_cache_hashes(ctx.cache.hashes())
    } else if let Some(v) = args.lemma21 {
        verify_lemma21(v[0], v[1] as usize, trials, ctx.seed)
    } else if let Some(v) = args.diff {
        let p: u64 = v[0].parse().map_err(|_| usage(format!("bad p {:?}", v[0])))?;
        let n: usize = v[1].parse().map_err(|_| usage(format!("bad n {:?}", v[1])))?;
        let cfg = field(p, n)?;
        let b = cfg.parse(&v[2]).map_err(|e| usage(format!("bad b: {e}")))?;
        verify_difference_identity(p, n, &b, trials, ctx.seed)
    } else {
        unreachable!("clap requires one suite")
    };
    Ok(ctx.emit_report(&report))
}

fn cmd_permtest(ctx: &Ctx, p: u64, n: usize, b: Option<&str>, all_b: bool, extras: usize) -> Result<ExitCode> {
    let cfg = field(p, n)?;
    if all_b {
        let c = classify_all_b(p, n, extras, ctx.seed, ctx.budget, &ctx.exec)?;
        let value = json!({
            "schema": 1,
            "modulus": cfg.modulus(),
            "seed": ctx.seed,
            "classification": c,
            "permutation_traces": c.permutation_traces(),
        });
        ctx.emit(&value, || {
            let mut s = format!("p = {p}, n = {n}, modulus {}\n", cfg.modulus_string());
            for r in &c.rows {
                s += &format!("  trace {}: {}/{} permutations\n", r.trace, r.permutations, r.tested);
            }
            s
        });
        return Ok(ExitCode::SUCCESS);
    }
    let inst = instance(p, n, b.expect("clap requires --b or --all-b"))?;
    let check = is_permutation(&inst, ctx.budget, &ctx.exec)?;
    let value = json!({
        "schema": 1,
        "seed": ctx.seed,
        "modulus": cfg.modulus(),
        "b": inst.b.coeffs(),
        "trace": cfg.trace(&inst.b),
        "field_size": check.field_size,
        "image_size": check.image_size,
        "permutation": check.is_permutation(),
    });
    ctx.emit(&value, || {
        format!(
            "image {}/{}: {}\n",
            check.image_size,
            check.field_size,
            if check.is_permutation() { "permutation" } else { "not a permutation" }
        )
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_witness(ctx: &Ctx, p: u64, n: usize, b: &str, method: MethodArg) -> Result<ExitCode> {
    let inst = instance(p, n, b)?;
    let mut notices = Vec::new();
    let found = match method {
        MethodArg::Brute => find_collision_brute(&inst, ctx.budget, &ctx.exec),
        MethodArg::Variety => match variety(ctx, &inst) {
            Ok(w) => Ok(w),
            Err(e @ (SearchError::NoVarietyPoint { .. } | SearchError::NotApplicable(_))) => {
                notices.push(format!("{e}; falling back to brute force"));
                find_collision_brute(&inst, ctx.budget, &ctx.exec)
            }
            Err(e) => Err(e),
        },
    };
    for note in &notices {
        eprintln!("note: {note}");
    }
    let base = json!({
        "schema": 1,
        "seed": ctx.seed,
        "modulus": inst.cfg.modulus(),
        "notices": notices,
    });
    let witness: Witness = match found {
        Ok(w) => w,
        Err(SearchError::NotFound) => {
            let mut value = base;
            value["witness"] = Value::Null;
            value["result"] = json!("not_found");
            ctx.emit(&value, || "f_b is a permutation; no collision\n".into());
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    let bad = witness.violations(&inst);
    let mut value = base;
    value["witness"] = serde_json::to_value(witness.record(&inst))?;
    value["result"] = json!(if bad.is_empty() { "found" } else { "invalid" });
    value["violations"] = json!(bad);
    ctx.emit(&value, || {
        let r = witness.record(&inst);
        format!(
            "method {:?}\nx = {:?}\ny = {:?}\nz = {:?}\ndelta = {:?}\nvalid = {}\n",
            r.method, r.x, r.y, r.z, r.delta, r.valid
        )
    });
    Ok(if bad.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn variety(ctx: &Ctx, inst: &ProblemInstance) -> Result<Witness, SearchError> {
    match inst.n() {
        3 => {
            let (sys, _) = load_or_derive_n3(&ctx.cache, ctx.refresh)?;
            variety_witness(inst, Derived::N3(&sys), ctx.budget, &ctx.exec)
        }
        4 => {
            if inst.b != inst.cfg.half() {
                return Err(SearchError::NotApplicable("the n = 4 system assumes b = 1/2".into()));
            }
            let (sys, _) = load_or_derive_n4(&ctx.cache, ctx.refresh)?;
            variety_witness(inst, Derived::N4(&sys), ctx.budget, &ctx.exec)
        }
        n => Err(SearchError::NotApplicable(format!("no derived system for n = {n}"))),
    }
}

fn read_poly(path: &Path) -> Result<IntPoly> {
    let body = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text::parse(&body).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_count(
    ctx: &Ctx,
    p: u64,
    poly: &Path,
    with: Option<&Path>,
    moore: bool,
    params: Option<Vec<u64>>,
) -> Result<ExitCode> {
    if !permrat::fields::is_prime(p) {
        return Err(usage(format!("{p} is not prime")));
    }
    let f = read_poly(poly)?;
    let g = with.map(read_poly).transpose()?;
    let k = f.vars().len() - f.vars().params();
    if let Some(g) = &g {
        if g.vars().names() != f.vars().names() {
            return Err(usage("both polynomials must use the same variables"));
        }
    }
    let nparams = f.vars().params();
    // A lone parameter defaults to t = 2·trace(1) = 2k, the value at b = 1.
    let params = match params {
        Some(v) => v,
        None if nparams == 0 => Vec::new(),
        None if nparams == 1 => vec![2 * k as u64 % p],
        None => return Err(usage(format!("{nparams} parameters need --params"))),
    };
    let fix = |h| specialize_params(h, p, &params).map_err(|e| usage(e.to_string()));
    let f_fixed = fix(&f)?;
    let gs = g.as_ref().map(fix).transpose()?;
    let pk2 = (p as u128).pow(k.saturating_sub(2) as u32);
    let hyper = (p as u128).pow(k.saturating_sub(1) as u32) as u64;
    let mut records = Vec::new();
    let mut extra = json!({});
    if moore {
        let cfg = field(p, k)?;
        let z = find_normal_element(&cfg);
        let f1 = moore_transform(&f_fixed, &cfg, &z)?;
        let count = count_points(&f1, ctx.budget, &ctx.exec)?;
        let on_conjugates = count_on_conjugates(std::slice::from_ref(&f_fixed), &cfg, ctx.budget, &ctx.exec)?;
        if count != on_conjugates {
            bail!("count after the Moore transform ({count}) differs from the conjugate count ({on_conjugates})");
        }
        records.push(CountRecord {
            id: "V(f1)".into(),
            p,
            vars: k,
            count,
            hypersurface: hyper,
            bound: None,
        });
        extra = json!({ "modulus": cfg.modulus(), "z": z.coeffs(), "cyclic": f_fixed.is_cyclic() });
        if let Some(gs) = &gs {
            let count = count_on_conjugates(&[f_fixed.clone(), gs.clone()], &cfg, ctx.budget, &ctx.exec)?;
            let d = f_fixed.degree().max(gs.degree()) as u128;
            records.push(CountRecord {
                id: "V(f1) ∩ V(g1)".into(),
                p,
                vars: k,
                count,
                hypersurface: hyper,
                bound: Some((d * d * pk2) as u64),
            });
        }
    } else {
        records.push(CountRecord {
            id: "V(f)".into(),
            p,
            vars: k,
            count: count_points(&f_fixed, ctx.budget, &ctx.exec)?,
            hypersurface: hyper,
            bound: None,
        });
        if let Some(gs) = &gs {
            let d = f_fixed.degree().max(gs.degree()) as u128;
            records.push(CountRecord {
                id: "V(f) ∩ V(g)".into(),
                p,
                vars: k,
                count: count_common_points(&[f_fixed.clone(), gs.clone()], ctx.budget, &ctx.exec)?,
                hypersurface: hyper,
                bound: Some((d * d * pk2) as u64),
            });
        }
    }
    let within = records.iter().all(|r| r.within_bound() != Some(false));
    let value = json!({
        "schema": 1,
        "seed": ctx.seed,
        "poly": poly,
        "with": with,
        "params": params,
        "moore": extra,
        "records": records,
        "within_bounds": within,
    });
    ctx.emit(&value, || {
        records
            .iter()
            .map(|r| match r.bound {
                Some(b) => format!("{}: {} (bound {b})\n", r.id, r.count),
                None => format!("{}: {} (p^{} = {})\n", r.id, r.count, k.saturating_sub(1), r.hypersurface),
            })
            .collect()
    });
    Ok(if within { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_threshold(ctx: &Ctx, n: u8) -> Result<ExitCode> {
    // Degree of G and the coefficient of √p in the point-count bound.
    let (d, coeff) = if n == 3 { (18, 272) } else { (46, 1980) };
    let t = lang_weil_threshold(d, coeff);
    let index = prime_index(t.prime, DEFAULT_SIEVE_LIMIT, &ctx.exec)?;
    let value = json!({
        "schema": 1,
        "seed": ctx.seed,
        "n": n,
        "threshold": t,
        "prime_index": index,
    });
    ctx.emit(&value, || {
        format!(
            "least prime {} (index {index}); least integer {}; C in [{}, {}]\n",
            t.prime, t.least_integer, t.c_lower, t.c_upper
        )
    });
    Ok(ExitCode::SUCCESS)
}
