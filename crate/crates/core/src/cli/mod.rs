//! Command line interface: argument parsing, result envelopes, output formats,
//! caching and the verification suite.
//!
//! Every subcommand produces a JSON payload. The envelope is
//! `{schema, request, result, provenance, elapsed_ms}`; big integers are
//! decimal strings. Exit status is 0 on success, 1 on a computation error
//! (with a JSON error object on standard output) and 2 on a usage error.

pub mod cache;
pub mod format;
mod serde_bigint;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{
    bp_order, bp_order_4m_plus_2, classification_record, diffeo_offset, table_emit, table_n,
};
use crate::error::{Error, Result};
use crate::exact_arith::PrecisionPolicy;
use crate::link_model::{link_from_unsigned, make_link, FamilyKind, FamilySpec};
use crate::monodromy::{
    cover_homology_of, link_homology_with_budget, link_rank_with_budget, milnor_lattice_with_budget,
};
use crate::signature::{
    signature_with, t_pair_with, tau_closed_form, tau_via_signatures, Method, SignatureOptions,
};
use crate::Budgets;

pub use cache::{Cache, Cached, CACHE_ENV};
pub use format::Format;
pub use serde_bigint::{bigint_string, bigint_vec_string, opt_bigint_string};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// k values of the dimension 7 table.
pub const DEFAULT_K_DIM7: [u32; 16] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 48, 50, 100, 496, 500];
/// k values of the dimension 11 table.
pub const DEFAULT_K_DIM11: [u32; 19] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 31, 48, 50, 62, 124, 248, 496, 500, 992,
];

#[derive(Parser, Debug)]
#[command(
    name = "brieskorn",
    version,
    about = "Exact invariants of Brieskorn-Pham links"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format: json, csv or markdown (table defaults to markdown).
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Starting precision for certified evaluation.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision_bits: u32,
    /// Precision cap for certified evaluation.
    #[arg(long, global = true, default_value_t = 16384)]
    pub max_precision_bits: u32,
    /// Caps every size budget (lattice points, DP cells, matrix size).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Signature method.
    #[arg(long, global = true, default_value = "auto")]
    pub method: MethodChoice,
    /// Common multiple N for the cotangent sum.
    #[arg(long, global = true)]
    pub modulus: Option<u64>,
    /// Cache directory (also read from BRIESKORN_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Bypass the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Auto,
    Lattice,
    Dp,
    Zagier,
}

impl std::str::FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "lattice" => Ok(MethodChoice::Lattice),
            "dp" => Ok(MethodChoice::Dp),
            "zagier" => Ok(MethodChoice::Zagier),
            other => Err(format!(
                "unknown method {other:?} (auto, lattice, dp, zagier)"
            )),
        }
    }
}

impl MethodChoice {
    fn method(self) -> Option<Method> {
        match self {
            MethodChoice::Auto => None,
            MethodChoice::Lattice => Some(Method::Lattice),
            MethodChoice::Dp => Some(Method::Dp),
            MethodChoice::Zagier => Some(Method::Zagier),
        }
    }
}

/// Explicit exponents or a family member.
#[derive(Args, Debug, Clone, Default)]
pub struct LinkArgs {
    /// Comma-separated exponents, e.g. 6,3,2,2,2.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub exponents: Option<Vec<i64>>,
    /// Family name: sphere-product, free-odd, free-even, unit-tangent, theorem-c.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Iterate index for sphere-product.
    #[arg(long)]
    pub i: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Milnor number, weights, positivity, homology rank and signature.
    Invariants(LinkArgs),
    /// Fibre signature by the chosen method.
    Signature(LinkArgs),
    /// tau_k by the cotangent identity (and by signatures when --n is given).
    Tau {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        /// Also evaluate |t_2d - t_d| / 8 on n + 1 variables.
        #[arg(long)]
        n: Option<u32>,
    },
    /// |bP_4m| with its factors, and the status of bP_4m+2.
    BpOrder {
        #[arg(long)]
        m: u32,
    },
    /// Homology of the cyclic cover branched along the given link.
    CoverHomology {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        fold: Vec<u64>,
    },
    /// Classification record of a family member, or the offset between links.
    Classify {
        #[command(flatten)]
        link: LinkArgs,
        /// Second link for a relative offset (with --exponents).
        #[arg(long, value_delimiter = ',')]
        relative_to: Option<Vec<i64>>,
    },
    /// Rows (k, tau_k, D_n(k), ratio) in dimension 4n - 1.
    Table {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u32>>,
    },
    /// Recomputes the reference numerics.
    Verify {
        /// Size of the random signature corpus.
        #[arg(long, default_value_t = 100)]
        corpus: usize,
    },
}

/// Canonical request; its JSON is the cache key.
#[derive(Clone, Debug, Serialize)]
pub struct CommandRequest {
    pub subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub params: Value,
    pub method: MethodChoice,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub precision: PrecisionPolicy,
    pub budgets: Budgets,
}

struct Context {
    budgets: Budgets,
    precision: PrecisionPolicy,
    method: MethodChoice,
    modulus: Option<u64>,
}

impl Context {
    fn signature_options(&self) -> SignatureOptions {
        SignatureOptions {
            budgets: self.budgets,
            precision: self.precision,
            modulus: self.modulus,
        }
    }
}

/// Computation result and its provenance.
struct Computed {
    result: Value,
    method: String,
    precision_bits: Option<u32>,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payloads serialize")
}

fn resolve_link(
    args: &LinkArgs,
) -> std::result::Result<(Option<Vec<i64>>, Option<FamilySpec>), Failure> {
    match (&args.exponents, &args.family) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "--exponents and --family are mutually exclusive".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "one of --exponents or --family is required".into(),
        )),
        (Some(e), None) => {
            if args.n.is_some() || args.k.is_some() || args.i.is_some() {
                return Err(Failure::Usage(
                    "--n, --k and --i only apply with --family".into(),
                ));
            }
            Ok((Some(e.clone()), None))
        }
        (None, Some(name)) => {
            let kind = FamilyKind::from_cli_name(name).ok_or_else(|| {
                Failure::Usage(format!(
                    "--family: unknown family {name:?} (sphere-product, free-odd, free-even, unit-tangent, theorem-c)"
                ))
            })?;
            let n = args
                .n
                .ok_or_else(|| Failure::Usage("--family needs --n".into()))?;
            let k = args
                .k
                .ok_or_else(|| Failure::Usage("--family needs --k".into()))?;
            let mut spec = FamilySpec::new(kind, n, k);
            if let Some(i) = args.i {
                if kind != FamilyKind::SphereProduct {
                    return Err(Failure::Usage("--i only applies to sphere-product".into()));
                }
                spec = spec.with_i(i);
            }
            Ok((None, Some(spec)))
        }
    }
}

fn exponents_of(exps: &Option<Vec<i64>>, family: &Option<FamilySpec>) -> Result<Vec<u64>> {
    match (exps, family) {
        (Some(e), _) => Ok(make_link(e)?.exponents().to_vec()),
        (None, Some(spec)) => spec.exponents(),
        (None, None) => Err(Error::EmptyExponents),
    }
}

fn invariants(ctx: &Context, exps: &[u64], ad_hoc: bool) -> Result<Computed> {
    let link = link_from_unsigned(exps)?;
    let rank = link_rank_with_budget(exps, ctx.budgets.dp_cells).ok();
    let homology = if link.variable_count() >= 2 {
        match link_homology_with_budget(exps, ctx.budgets.matrix_size) {
            Ok(h) => Some(h),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let (signature, method, precision_bits) = if link.variable_count() % 2 == 1 {
        let r = signature_with(exps, ctx.method.method(), &ctx.signature_options())?;
        (
            Some(r.value.to_string()),
            r.method.name().to_string(),
            r.precision_bits,
        )
    } else {
        (None, "none".to_string(), None)
    };
    let result = json!({
        "exponents": link.exponents(),
        "ad_hoc": ad_hoc,
        "variables": link.variable_count(),
        "link_dimension": link.link_dimension(),
        "weights": link.weights(),
        "degree": link.degree(),
        "milnor_number": link.milnor_number().to_string(),
        "positivity": link.is_ricci_positive(),
        "rank": rank.map(|r| r.to_string()),
        "homology": homology.as_ref().map(to_value),
        "homology_display": homology.map(|h| h.to_string()),
        "signature": signature,
    });
    Ok(Computed {
        result,
        method,
        precision_bits,
    })
}

fn compute(
    ctx: &Context,
    command: &Command,
    request: &CommandRequest,
) -> std::result::Result<Computed, Failure> {
    let exps = || exponents_of(&request.exponents, &request.family);
    match command {
        Command::Invariants(_) => Ok(invariants(ctx, &exps()?, request.family.is_none())?),
        Command::Signature(_) => {
            let e = exps()?;
            let r = signature_with(&e, ctx.method.method(), &ctx.signature_options())?;
            Ok(Computed {
                method: r.method.name().into(),
                precision_bits: r.precision_bits,
                result: to_value(&r),
            })
        }
        Command::Tau { k, n } => {
            let opts = ctx.signature_options();
            let mut rows = Vec::new();
            let mut max_bits = 0;
            for &k in k {
                let closed = tau_closed_form(k, &ctx.precision)?;
                max_bits = max_bits.max(closed.precision_bits);
                let mut row = json!({
                    "k": k,
                    "tau": closed.value.to_string(),
                    "precision_bits": closed.precision_bits,
                });
                if let Some(n) = *n {
                    let (td, t2d) = t_pair_with(k, n, &opts)?;
                    let via = tau_via_signatures(k, n, &opts)?;
                    row["t_d"] = json!(td.to_string());
                    row["t_2d"] = json!(t2d.to_string());
                    row["tau_via_signatures"] = json!(via.to_string());
                }
                rows.push(row);
            }
            Ok(Computed {
                result: Value::Array(rows),
                method: "cotangent-identity".into(),
                precision_bits: Some(max_bits),
            })
        }
        Command::BpOrder { m } => {
            let bp = bp_order(*m)?;
            let mut result = to_value(&bp);
            result["bp_4m_plus_2"] = to_value(&bp_order_4m_plus_2(*m)?);
            Ok(Computed {
                result,
                method: "formula".into(),
                precision_bits: None,
            })
        }
        Command::CoverHomology { fold, .. } => {
            let e = exps()?;
            let op = milnor_lattice_with_budget(&e, ctx.budgets.matrix_size)?;
            let mut rows = Vec::new();
            for &k in fold {
                let g = cover_homology_of(&op, k)?;
                rows.push(json!({
                    "branch": e,
                    "fold": k,
                    "period": op.period(),
                    "milnor_number": op.size(),
                    "group": to_value(&g),
                    "display": g.to_string(),
                }));
            }
            Ok(Computed {
                result: Value::Array(rows),
                method: "smith-normal-form".into(),
                precision_bits: None,
            })
        }
        Command::Classify { relative_to, .. } => {
            if let Some(spec) = &request.family {
                if relative_to.is_some() {
                    return Err(Failure::Usage(
                        "--relative-to only applies with --exponents".into(),
                    ));
                }
                let record = classification_record(spec)?;
                return Ok(Computed {
                    result: to_value(&record),
                    method: "signature-difference".into(),
                    precision_bits: None,
                });
            }
            let Some(other) = relative_to else {
                return Err(Failure::Usage(
                    "classify --exponents needs --relative-to".into(),
                ));
            };
            let a = make_link(request.exponents.as_deref().unwrap_or_default())?;
            let b = make_link(other)?;
            let dim = a.link_dimension();
            if dim < 7 || (dim + 1) % 4 != 0 {
                return Err(Error::IncomparableLinks(format!(
                    "link dimension {dim} is not of the form 4n-1 with n >= 2"
                ))
                .into());
            }
            let n = ((dim + 1) / 4) as u32;
            let offset = diffeo_offset(&a, &b, n)?;
            Ok(Computed {
                result: json!({
                    "link": a.exponents(),
                    "relative_to": b.exponents(),
                    "n": n,
                    "bp_order": bp_order(n)?.order.to_string(),
                    "offset": offset.to_string(),
                }),
                method: "signature-difference".into(),
                precision_bits: None,
            })
        }
        Command::Table { dim, k } => {
            let n = table_n(*dim)?;
            let ks: Vec<u32> = match (k, n) {
                (Some(k), _) => k.clone(),
                (None, 2) => DEFAULT_K_DIM7.to_vec(),
                (None, 3) => DEFAULT_K_DIM11.to_vec(),
                (None, _) => (1..=10).collect(),
            };
            let rows = table_emit(*dim, &ks)?;
            Ok(Computed {
                result: to_value(&rows),
                method: "cotangent-identity".into(),
                precision_bits: None,
            })
        }
        Command::Verify { .. } => unreachable!("verify is handled separately"),
    }
}

fn request_for(cli: &Cli, ctx: &Context) -> std::result::Result<CommandRequest, Failure> {
    let mut exponents = None;
    let mut family = None;
    let (name, params) = match &cli.command {
        Command::Invariants(l) | Command::Signature(l) => {
            (exponents, family) = resolve_link(l)?;
            let name = if matches!(cli.command, Command::Invariants(_)) {
                "invariants"
            } else {
                "signature"
            };
            (name, Value::Null)
        }
        Command::Tau { k, n } => ("tau", json!({ "k": k, "n": n })),
        Command::BpOrder { m } => ("bp-order", json!({ "m": m })),
        Command::CoverHomology { link, fold } => {
            (exponents, family) = resolve_link(link)?;
            ("cover-homology", json!({ "fold": fold }))
        }
        Command::Classify { link, relative_to } => {
            (exponents, family) = resolve_link(link)?;
            ("classify", json!({ "relative_to": relative_to }))
        }
        Command::Table { dim, k } => ("table", json!({ "dim": dim, "k": k })),
        Command::Verify { corpus } => ("verify", json!({ "corpus": corpus })),
    };
    Ok(CommandRequest {
        subcommand: name,
        exponents,
        family,
        params,
        method: ctx.method,
        modulus: ctx.modulus,
        precision: ctx.precision,
        budgets: ctx.budgets,
    })
}

fn render(format: Format, envelope: &Value) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(envelope).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => format::to_csv(&format::tabulate(&envelope["result"])),
        Format::Markdown => format::to_markdown(&format::tabulate(&envelope["result"])),
    }
}

fn error_object(e: &Error) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "error": { "name": e.name(), "message": e.to_string() },
    })
}

fn cache_for(global: &GlobalOpts) -> Option<Cache> {
    if global.no_cache {
        return None;
    }
    let dir = global
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))?;
    Some(Cache::new(dir, TOOL_VERSION))
}

/// Runs the tool on `argv` (including the program name), writing the payload
/// to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let start = Instant::now();
    let g = &cli.global;
    if g.precision_bits == 0 || g.precision_bits > g.max_precision_bits {
        let _ = writeln!(
            err,
            "error: --precision-bits must be positive and at most --max-precision-bits"
        );
        return 2;
    }
    let ctx = Context {
        budgets: g.budget.map_or_else(Budgets::default, Budgets::uniform),
        precision: PrecisionPolicy {
            start_bits: g.precision_bits,
            max_bits: g.max_precision_bits,
        },
        method: g.method,
        modulus: g.modulus,
    };

    if let Command::Verify { corpus } = cli.command {
        let opts = verify::VerifyOptions {
            corpus_size: corpus,
            signature: ctx.signature_options(),
            ..verify::VerifyOptions::default()
        }
        .with_budgets(ctx.budgets);
        let report = verify::verify(&opts);
        let format = g.format.unwrap_or(Format::Json);
        let envelope = json!({
            "schema": SCHEMA_VERSION,
            "request": { "subcommand": "verify", "params": { "corpus": corpus } },
            "result": to_value(&report.criteria),
            "provenance": { "tool_version": TOOL_VERSION, "cached": false },
            "passed": report.passed,
            "elapsed_ms": start.elapsed().as_millis() as u64,
        });
        let _ = write!(out, "{}", render(format, &envelope));
        for c in &report.criteria {
            let _ = writeln!(err, "{} {} {}", c.status.label(), c.id, c.name);
        }
        return if report.passed { 0 } else { 1 };
    }

    let request = match request_for(&cli, &ctx) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(out, "{}", error_object(&e));
            return 1;
        }
    };
    let canonical = serde_json::to_string(&request).expect("serializable request");
    let cache = cache_for(g);
    let (cached, hit) = match cache.as_ref().and_then(|c| c.get(&canonical)) {
        Some(c) => (c, true),
        None => {
            let computed = match compute(&ctx, &cli.command, &request) {
                Ok(c) => c,
                Err(Failure::Usage(msg)) => {
                    let _ = writeln!(err, "error: {msg}");
                    return 2;
                }
                Err(Failure::Compute(e)) => {
                    let _ = writeln!(out, "{}", error_object(&e));
                    return 1;
                }
            };
            let entry = Cached {
                result: computed.result,
                provenance: json!({
                    "method": computed.method,
                    "precision_bits": computed.precision_bits,
                    "budgets": to_value(&ctx.budgets),
                    "tool_version": TOOL_VERSION,
                }),
            };
            if let Some(c) = &cache {
                if let Err(e) = c.put(&canonical, &entry) {
                    let _ = writeln!(err, "warning: cache write failed: {e}");
                }
            }
            (entry, false)
        }
    };
    let mut provenance = cached.provenance;
    provenance["cached"] = json!(hit);
    let envelope = json!({
        "schema": SCHEMA_VERSION,
        "request": to_value(&request),
        "result": cached.result,
        "provenance": provenance,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    });
    let default_format = if matches!(cli.command, Command::Table { .. }) {
        Format::Markdown
    } else {
        Format::Json
    };
    let _ = write!(
        out,
        "{}",
        render(g.format.unwrap_or(default_format), &envelope)
    );
    0
}
