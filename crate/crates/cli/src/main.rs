use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sumrank::bounds::{packing_bound, perfection_divisibility, singleton_bound, singleton_packing_check, DivisibilityVerdict};
use sumrank::field::enumeration_cap_from_env;
use sumrank::oracle::{enumerate_distribution, parse_generator, verify_perfect, CODE_ENUMERATION_CAP};
use sumrank::rules::{evaluate_all, sweep, Evaluation, ParamSet};
use sumrank::tables::{audit_report, regenerate_table, DEFAULT_K_RANGE, DEFAULT_PRIMES, DEFAULT_T_RANGE};
use sumrank::volume::{ball_volume, space_size};
use sumrank::{BlockProfile, PrimePowerField};

mod output;
mod parse;

use output::{blocks_label, Format, Output};

#[derive(Parser)]
#[command(name = "sumrank", version, about = "Sum-rank metric volumes, bounds and perfect-code criteria")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ball (or sphere) volume of a block profile.
    Volume {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_blocks)]
        blocks: Blocks,
        #[arg(long)]
        radius: u32,
        /// Only the sphere of the given radius.
        #[arg(long)]
        sphere: bool,
    },
    /// Singleton-like bound, packing bound and the divisibility test.
    Bounds {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_blocks)]
        blocks: Blocks,
        #[arg(long)]
        d: u32,
    },
    /// Every non-existence rule for t blocks of size n x n.
    Check {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        d: u32,
        /// Claimed code dimension.
        #[arg(long)]
        dim: Option<u64>,
    },
    /// Regenerate the mod-p tables, or audit them against the published ones.
    Tables {
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        #[arg(long, value_parser = parse::range)]
        k_range: Option<RangeInclusive<u32>>,
        #[arg(long, value_parser = parse::range)]
        t_range: Option<RangeInclusive<u32>>,
        #[arg(long)]
        compare: bool,
    },
    /// Brute-force enumeration.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// `check` over a grid of parameters.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_parser = parse::range)]
        n_range: RangeInclusive<u32>,
        #[arg(long, value_parser = parse::range)]
        t_range: RangeInclusive<u32>,
        #[arg(long, value_parser = parse::range)]
        d_range: RangeInclusive<u32>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Weight distribution of the whole space, compared with the formula.
    Enum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_blocks)]
        blocks: Blocks,
    },
    /// Minimum distance and perfectness of the code in a generator file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        d: u32,
    },
}

#[derive(Clone)]
struct Blocks(Vec<(u32, u32)>);

fn parse_blocks(s: &str) -> Result<Blocks, String> {
    parse::blocks(s).map(Blocks)
}

#[derive(Args)]
struct FieldArgs {
    /// Field order, a prime power.
    #[arg(long)]
    q: u64,
    /// Extension degree; must match --q when given.
    #[arg(long)]
    alpha: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{flag}: {source}")]
    Flag { flag: &'static str, source: sumrank::Error },
    #[error("{0}")]
    Lib(#[from] sumrank::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Flag { source, .. } | CliError::Lib(source) if matches!(source, sumrank::Error::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

fn flag(flag: &'static str) -> impl Fn(sumrank::Error) -> CliError {
    move |source| CliError::Flag { flag, source }
}

impl FieldArgs {
    fn field(&self) -> Result<PrimePowerField, CliError> {
        let field = PrimePowerField::from_order(self.q).map_err(flag("--q"))?;
        match self.alpha {
            Some(a) if a != field.alpha() => Err(CliError::Flag {
                flag: "--alpha",
                source: sumrank::Error::InvalidParams(format!(
                    "{a} does not match q = {} = {}^{}",
                    self.q,
                    field.p(),
                    field.alpha()
                )),
            }),
            _ => Ok(field),
        }
    }

    fn profile(&self, blocks: &[(u32, u32)]) -> Result<BlockProfile, CliError> {
        BlockProfile::new(self.field()?, blocks.to_vec()).map_err(flag("--blocks"))
    }
}

fn field_json(f: &PrimePowerField) -> Value {
    json!({ "q": f.q().to_string(), "p": f.p(), "alpha": f.alpha() })
}

fn volume(field: &FieldArgs, blocks: &[(u32, u32)], radius: u32, sphere: bool) -> Result<Output, CliError> {
    let profile = field.profile(blocks)?;
    let report = ball_volume(&profile, radius);
    let spheres: Vec<String> = report.sphere_volumes.iter().map(|v| v.to_string()).collect();
    let label = blocks_label(profile.blocks());
    let (kind, value) = if sphere {
        ("sphere", spheres[radius as usize].clone())
    } else {
        ("ball", report.ball_volume.to_string())
    };
    let mut text = format!("q = {}, blocks {label}\n", profile.q());
    if sphere {
        let _ = writeln!(text, "V(S_{radius}) = {value}");
    } else {
        for (l, s) in spheres.iter().enumerate() {
            let _ = writeln!(text, "V(S_{l}) = {s}");
        }
        let _ = writeln!(text, "V_{radius} = {value}");
    }
    let mut running = sumrank::ExactInt::from(0);
    let mut rows = Vec::new();
    for (l, s) in report.sphere_volumes.iter().enumerate() {
        running += s;
        if !sphere || l == radius as usize {
            rows.push(vec![l.to_string(), s.to_string(), running.to_string()]);
        }
    }
    Ok(Output {
        command: "volume",
        json: json!({
            "field": field_json(profile.field()),
            "blocks": label,
            "radius": radius,
            "kind": kind,
            "value": value,
            "sphere_volumes": if sphere { json!([spheres[radius as usize]]) } else { json!(spheres) },
            "space_size": space_size(&profile).to_string(),
        }),
        header: vec!["weight", "sphere_volume", "ball_volume"],
        rows,
        text,
    })
}

fn bounds(field: &FieldArgs, blocks: &[(u32, u32)], d: u32) -> Result<Output, CliError> {
    let profile = field.profile(blocks)?;
    let max = profile.max_weight();
    if d < 1 || d > max {
        return Err(CliError::Flag { flag: "--d", source: sumrank::Error::DistanceOutOfRange { d, max } });
    }
    let singleton = singleton_bound(&profile, d).map_err(flag("--blocks"))?;
    let packing = packing_bound(&profile, d)?;
    let div = perfection_divisibility(&profile, d)?;
    let sp = singleton_packing_check(&profile, d)?;
    let space = space_size(&profile);
    let (verdict, exponent, dimension) = match div.verdict {
        DivisibilityVerdict::Pass { exponent, dimension } => ("pass", Some(exponent), Some(dimension)),
        DivisibilityVerdict::Fail => ("fail", None, None),
    };
    let label = blocks_label(profile.blocks());
    let mut text = format!("q = {}, blocks {label}, d = {d}\n", profile.q());
    let _ = writeln!(text, "space size: {space}");
    let _ = writeln!(
        text,
        "Singleton-like bound: q^{} = {} (j = {}, delta = {})",
        singleton.exponent, singleton.bound, singleton.j, singleton.delta
    );
    let _ = writeln!(text, "packing radius: {}, V_r = {}", div.radius, div.ball_volume);
    let _ = writeln!(text, "sphere-packing bound: {packing}");
    match (exponent, dimension) {
        (Some(e), Some(k)) => {
            let _ = writeln!(text, "divisibility: pass (V_r = q^{e}, a linear perfect code has dimension {k})");
        }
        _ => {
            let _ = writeln!(text, "divisibility: fail (V_r is not a power of q)");
        }
    }
    let _ = writeln!(
        text,
        "Singleton vs packing: {}",
        if sp.excludes_perfect { "perfect code excluded" } else { "compatible" }
    );
    let opt = |v: Option<u64>| v.map_or(String::new(), |x| x.to_string());
    Ok(Output {
        command: "bounds",
        json: json!({
            "field": field_json(profile.field()),
            "blocks": label,
            "d": d,
            "space_size": space.to_string(),
            "singleton": {
                "j": singleton.j,
                "delta": singleton.delta,
                "exponent": singleton.exponent,
                "bound": singleton.bound.to_string(),
            },
            "packing_radius": div.radius,
            "ball_volume": div.ball_volume.to_string(),
            "packing_bound": packing.to_string(),
            "divisibility": {
                "verdict": verdict,
                "exponent": exponent,
                "dimension": dimension,
                "divides_space": div.divides_space,
            },
            "singleton_packing_excludes": sp.excludes_perfect,
        }),
        header: vec![
            "d",
            "space_size",
            "singleton_j",
            "singleton_delta",
            "singleton_bound",
            "packing_radius",
            "ball_volume",
            "packing_bound",
            "divisibility",
            "divisibility_exponent",
            "singleton_packing_excludes",
        ],
        rows: vec![vec![
            d.to_string(),
            space.to_string(),
            singleton.j.to_string(),
            singleton.delta.to_string(),
            singleton.bound.to_string(),
            div.radius.to_string(),
            div.ball_volume.to_string(),
            packing.to_string(),
            verdict.to_string(),
            opt(exponent),
            sp.excludes_perfect.to_string(),
        ]],
        text,
    })
}

fn params(field: &FieldArgs, n: u32, t: u32, d: u32, dim: Option<u64>) -> Result<ParamSet, CliError> {
    ParamSet::new(field.field()?, n, t, d, dim).map_err(|e| match e {
        sumrank::Error::DistanceOutOfRange { .. } => CliError::Flag { flag: "--d", source: e },
        other if dim.is_some() && other.to_string().contains("dimension") => CliError::Flag { flag: "--dim", source: other },
        other => CliError::Lib(other),
    })
}

fn evaluation_json(e: &Evaluation) -> Value {
    let p = &e.params;
    json!({
        "params": {
            "field": field_json(p.field()),
            "n": p.n(),
            "t": p.t(),
            "d": p.d(),
            "k": p.k(),
            "dim": p.dim(),
        },
        "aggregate": e.aggregate.to_string(),
        "verdicts": e.verdicts.iter().map(|v| json!({
            "rule_id": v.rule_id,
            "citation": v.citation,
            "applicable": v.applicable,
            "conclusion": v.conclusion.to_string(),
            "certified": v.certified,
            "confidence": v.confidence.to_string(),
            "witness": v.witness.iter().map(|(k, val)| json!({ "name": k, "value": val })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn witness_line(w: &[(String, String)]) -> String {
    w.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join("; ")
}

fn check(field: &FieldArgs, n: u32, t: u32, d: u32, dim: Option<u64>) -> Result<Output, CliError> {
    let params = params(field, n, t, d, dim)?;
    let e = evaluate_all(&params);
    let mut text = format!("q = {}, n = {n}, t = {t}, d = {d}, k = {}", params.q(), params.k());
    if let Some(dim) = dim {
        let _ = write!(text, ", dim = {dim}");
    }
    text.push('\n');
    let mut rows = Vec::new();
    for v in &e.verdicts {
        let status = if v.applicable { v.conclusion.to_string() } else { "not applicable".into() };
        let _ = writeln!(text, "{:<24} {:<28} {}", v.rule_id, status, v.citation);
        if v.applicable {
            let _ = writeln!(
                text,
                "{:<24} certified={} confidence={} {}",
                "",
                v.certified,
                v.confidence,
                witness_line(&v.witness)
            );
        }
        rows.push(vec![
            v.rule_id.to_string(),
            v.applicable.to_string(),
            v.conclusion.to_string(),
            v.certified.to_string(),
            v.confidence.to_string(),
            v.citation.to_string(),
            witness_line(&v.witness),
        ]);
    }
    let deciding: Vec<&str> = e.deciding().map(|v| v.rule_id).collect();
    let _ = writeln!(text, "aggregate: {}", e.aggregate);
    if !deciding.is_empty() {
        let _ = writeln!(text, "decided by: {}", deciding.join(", "));
    }
    Ok(Output {
        command: "check",
        json: evaluation_json(&e),
        header: vec!["rule_id", "applicable", "conclusion", "certified", "confidence", "citation", "witness"],
        rows,
        text,
    })
}

fn tables(
    primes: &[u64],
    k_range: RangeInclusive<u32>,
    t_range: RangeInclusive<u32>,
    compare: bool,
) -> Result<Output, CliError> {
    let primes = if primes.is_empty() { DEFAULT_PRIMES.to_vec() } else { primes.to_vec() };
    if compare {
        let report = audit_report(&primes, k_range, t_range).map_err(flag("--p"))?;
        let join = |ts: &[u32]| ts.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let rows = report
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.p.to_string(),
                    r.k.to_string(),
                    r.confirmed.len().to_string(),
                    r.paper_only.len().to_string(),
                    r.criterion_only.len().to_string(),
                    join(&r.confirmed),
                    join(&r.paper_only),
                    join(&r.criterion_only),
                ]
            })
            .collect();
        let json_rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "p": r.p, "k": r.k,
                    "confirmed": r.confirmed, "paper_only": r.paper_only, "criterion_only": r.criterion_only,
                })
            })
            .collect();
        return Ok(Output {
            command: "tables",
            json: json!({ "mode": "audit", "rows": json_rows, "unclassified": report.unclassified }),
            header: vec![
                "p",
                "k",
                "confirmed",
                "paper_only",
                "criterion_only",
                "confirmed_t",
                "paper_only_t",
                "criterion_only_t",
            ],
            rows,
            text: report.to_text(),
        });
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut entries_json = Vec::new();
    for &p in &primes {
        let entries = regenerate_table(p, k_range.clone(), t_range.clone()).map_err(flag("--p"))?;
        let _ = writeln!(text, "p = {p}: t excluded by P(t, k) != 0 mod p");
        for k in k_range.clone() {
            let ts: Vec<String> = entries
                .iter()
                .filter(|e| e.k == k && e.criterion == sumrank::Conclusion::NonExistent)
                .map(|e| e.t.to_string())
                .collect();
            let _ = writeln!(text, "  k = {k:>2} | {}", ts.join(", "));
        }
        for e in &entries {
            let v = e.valuation.map_or(String::new(), |v| v.to_string());
            rows.push(vec![
                e.p.to_string(),
                e.k.to_string(),
                e.t.to_string(),
                e.poly.to_string(),
                v,
                e.criterion.to_string(),
                e.in_paper.to_string(),
                e.status.to_string(),
            ]);
            entries_json.push(json!({
                "p": e.p, "k": e.k, "t": e.t,
                "P": e.poly.to_string(),
                "valuation": e.valuation,
                "criterion": e.criterion.to_string(),
                "in_paper": e.in_paper,
                "status": e.status.to_string(),
            }));
        }
    }
    Ok(Output {
        command: "tables",
        json: json!({ "mode": "regenerate", "entries": entries_json }),
        header: vec!["p", "k", "t", "P", "v_p", "criterion", "in_paper", "status"],
        rows,
        text,
    })
}

fn oracle_enum(field: &FieldArgs, blocks: &[(u32, u32)]) -> Result<Output, CliError> {
    let profile = field.profile(blocks)?;
    let dist = enumerate_distribution(&profile, enumeration_cap_from_env())?;
    let cmp = dist.against_formula();
    let label = blocks_label(profile.blocks());
    let mut text = format!("q = {}, blocks {label}: {} elements\n", profile.q(), dist.total());
    let mut rows = Vec::new();
    let mut per_weight = Vec::new();
    for (w, got, want) in &cmp {
        let _ = writeln!(text, "  weight {w}: {got} (formula {want}) {}", if got == want { "ok" } else { "MISMATCH" });
        rows.push(vec![w.to_string(), got.to_string(), want.to_string(), (got == want).to_string()]);
        per_weight.push(json!({
            "weight": w,
            "enumerated": got.to_string(),
            "formula": want.to_string(),
            "agree": got == want,
        }));
    }
    let agree = dist.matches_formula();
    let _ = writeln!(text, "agreement: {agree}");
    Ok(Output {
        command: "oracle enum",
        json: json!({
            "field": field_json(profile.field()),
            "blocks": label,
            "total": dist.total().to_string(),
            "weights": per_weight,
            "agree": agree,
        }),
        header: vec!["weight", "enumerated", "formula", "agree"],
        rows,
        text,
    })
}

fn oracle_verify(file: &PathBuf, d: u32) -> Result<Output, CliError> {
    let src = std::fs::read_to_string(file).map_err(|source| CliError::Io {
        path: file.display().to_string(),
        source,
    })?;
    let gen = parse_generator(&src)?;
    let cap = std::env::var(sumrank::field::ENUMERATION_CAP_ENV)
        .ok()
        .map_or(CODE_ENUMERATION_CAP, |_| enumeration_cap_from_env());
    let r = verify_perfect(&gen, d, cap).map_err(|e| match e {
        sumrank::Error::DistanceOutOfRange { .. } => CliError::Flag { flag: "--d", source: e },
        other => CliError::Lib(other),
    })?;
    let label = blocks_label(gen.blocks());
    let mut text = format!("q = {}, blocks {label}, dimension {}\n", gen.profile().q(), gen.dimension());
    let _ = writeln!(text, "minimum distance: {}", r.min_distance);
    let _ = writeln!(text, "|C| * V_{} = {} * {} = {}", r.radius, r.code_size, r.ball_volume, r.covered);
    let _ = writeln!(text, "space size: {}", r.space_size);
    let _ = writeln!(text, "perfect (d = {d}): {}", r.perfect);
    Ok(Output {
        command: "oracle verify",
        json: json!({
            "field": field_json(gen.profile().field()),
            "blocks": label,
            "dimension": gen.dimension(),
            "d": d,
            "min_distance": r.min_distance,
            "radius": r.radius,
            "code_size": r.code_size.to_string(),
            "ball_volume": r.ball_volume.to_string(),
            "covered": r.covered.to_string(),
            "space_size": r.space_size.to_string(),
            "perfect": r.perfect,
        }),
        header: vec!["d", "min_distance", "radius", "code_size", "ball_volume", "covered", "space_size", "perfect"],
        rows: vec![vec![
            d.to_string(),
            r.min_distance.to_string(),
            r.radius.to_string(),
            r.code_size.to_string(),
            r.ball_volume.to_string(),
            r.covered.to_string(),
            r.space_size.to_string(),
            r.perfect.to_string(),
        ]],
        text,
    })
}

fn sweep_cmd(
    qs: &[u64],
    n_range: RangeInclusive<u32>,
    t_range: RangeInclusive<u32>,
    d_range: RangeInclusive<u32>,
) -> Result<Output, CliError> {
    let fields = qs
        .iter()
        .map(|&q| PrimePowerField::from_order(q).map_err(flag("--q")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for row in sweep(&fields, n_range, t_range, d_range) {
        let (outcome, deciding) = match &row.outcome {
            Ok(e) => (e.aggregate.to_string(), e.deciding().map(|v| v.rule_id).collect::<Vec<_>>().join(" ")),
            Err(err) => ("error".to_string(), err.to_string()),
        };
        let _ = writeln!(text, "q={} n={} t={} d={}: {outcome} {deciding}", row.field.q(), row.n, row.t, row.d);
        rows.push(vec![
            row.field.q().to_string(),
            row.n.to_string(),
            row.t.to_string(),
            row.d.to_string(),
            outcome.clone(),
            deciding.clone(),
        ]);
        json_rows.push(json!({
            "q": row.field.q().to_string(), "n": row.n, "t": row.t, "d": row.d,
            "outcome": outcome, "detail": deciding,
        }));
    }
    Ok(Output {
        command: "sweep",
        json: json!({ "rows": json_rows }),
        header: vec!["q", "n", "t", "d", "outcome", "detail"],
        rows,
        text,
    })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Volume { field, blocks, radius, sphere } => volume(field, &blocks.0, *radius, *sphere),
        Command::Bounds { field, blocks, d } => bounds(field, &blocks.0, *d),
        Command::Check { field, n, t, d, dim } => check(field, *n, *t, *d, *dim),
        Command::Tables { p, k_range, t_range, compare } => tables(
            p,
            k_range.clone().unwrap_or(DEFAULT_K_RANGE),
            t_range.clone().unwrap_or(DEFAULT_T_RANGE),
            *compare,
        ),
        Command::Oracle { command: OracleCommand::Enum { field, blocks } } => oracle_enum(field, &blocks.0),
        Command::Oracle { command: OracleCommand::Verify { file, d } } => oracle_verify(file, *d),
        Command::Sweep { q, n_range, t_range, d_range } => {
            sweep_cmd(q, n_range.clone(), t_range.clone(), d_range.clone())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
