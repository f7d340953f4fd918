//! `ltile`: signed tilings by ribbon L n-ominoes from the command line.
//!
//! Exit codes: 0 success or agreement, 2 a mathematical disagreement,
//! 3 the completion step cap was hit, 64 bad usage.

/// `println!` that exits quietly once stdout is closed (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ltile::decide::{closed_form_inflated, expected_rect, Decider};
use ltile::groebner::{CompletionConfig, DEFAULT_STEP_CAP};
use ltile::identities::verify_basis_with;
use ltile::oracle::{self, enumerate_placements, verify_certificate, Window};
use ltile::rectcalc::{case_derivative, divisibility, RectReport};
use ltile::tilesets::{RegionSpec, TileSet};
use ltile::{Domain, Error};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use output::{Envelope, Format};

const EXIT_MISMATCH: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_USAGE: u8 = 64;

const SCAN_COLUMNS: &str = "\
scan TSV columns:
  p, q          rectangle sides (p <= q)
  groebner      yes/no from ideal membership, or `error`
  closed_form   yes/no from the matching theorem
  agree         1 if both answers match, 0 if not, - on error
  test_monomial first successful shift as x^a*y^b, - if none

rectcalc-scan TSV columns:
  p, q, case, divisible, s_minus, deriv_value, b_count, satisfiable,
  theorem (closed form), groebner (ideal membership), agree";

#[derive(Parser, Debug)]
#[command(name = "ltile", version, about = "Signed tilings by ribbon L n-ominoes via Groebner bases", after_help = SCAN_COLUMNS)]
struct Cli {
    /// Worker threads for scans (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Omit the timestamp field from JSON output.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Pair treatments allowed per Buchberger completion.
    #[arg(long, global = true, env = "LTILE_STEP_CAP", default_value_t = DEFAULT_STEP_CAP)]
    step_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct TileArgs {
    /// Tile size, even and at least 4.
    #[arg(long)]
    n: u32,

    /// Add the 2x2 square to the tile set.
    #[arg(long)]
    plus: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
enum Weights {
    Z,
    Q,
}

impl From<Weights> for Domain {
    fn from(w: Weights) -> Domain {
        match w {
            Weights::Z => Domain::Z,
            Weights::Q => Domain::Q,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a region is signed-tileable.
    Decide {
        #[command(flatten)]
        tiles: TileArgs,
        /// `rect:WxH`, `inflatedL:n:factor`, or a region file (`col row` per line).
        #[arg(long)]
        region: String,
        #[arg(long, value_enum, default_value_t = Weights::Z)]
        weights: Weights,
        /// Search test monomials x^a*y^b with a, b <= B (default n).
        #[arg(long)]
        test_bound: Option<u32>,
    },
    /// Compare ideal membership with the closed form on a grid of rectangles.
    Scan {
        #[command(flatten)]
        tiles: TileArgs,
        #[arg(long, value_enum, default_value_t = Weights::Z)]
        weights: Weights,
        /// Largest side length.
        #[arg(long)]
        max: u32,
    },
    /// Check the explicit Groebner basis and its identities.
    VerifyBasis {
        #[command(flatten)]
        tiles: TileArgs,
    },
    /// Solve the placement system directly inside a padded window.
    Oracle {
        #[command(flatten)]
        tiles: TileArgs,
        #[arg(long)]
        region: String,
        #[arg(long, value_enum, default_value_t = Weights::Z)]
        weights: Weights,
        /// Padding around the region (default n).
        #[arg(long)]
        margin: Option<u32>,
        /// Write the certificate to this file when one is found.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Rectangle arithmetic modulo 1 + y + ... + y^(n-1), n >= 8.
    Rectcalc {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Rectangle arithmetic on the grid 1 <= p <= q <= max.
    RectcalcScan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max: u32,
    },
}

/// Everything a run depends on, echoed into JSON output.
#[derive(Serialize, Debug, Default)]
struct RunConfig {
    command: &'static str,
    n: Option<u32>,
    plus: bool,
    weights: Option<Weights>,
    region: Option<String>,
    test_bound: Option<u32>,
    margin: Option<u32>,
    max: Option<u32>,
    p: Option<u32>,
    q: Option<u32>,
    format: Format,
    jobs: usize,
    step_cap: usize,
}

struct Ctx {
    format: Option<Format>,
    timestamp: bool,
    jobs: usize,
    config: CompletionConfig,
}

impl Ctx {
    fn config(&self, command: &'static str, default: Format) -> RunConfig {
        RunConfig {
            command,
            format: self.format.unwrap_or(default),
            jobs: self.jobs,
            step_cap: self.config.step_cap,
            ..Default::default()
        }
    }

    fn emit<T: Serialize>(&self, config: &RunConfig, result: &T) {
        out!(
            "{}",
            Envelope::new(config, result, self.timestamp).to_json()
        );
    }
}

fn exit_for(err: &Error) -> u8 {
    if err.is_resource() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("ltile: {err}");
    ExitCode::from(exit_for(&err))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let ctx = Ctx {
        format: cli.format,
        timestamp: !cli.no_timestamp,
        jobs: cli.jobs,
        config: CompletionConfig {
            step_cap: cli.step_cap,
        },
    };
    let outcome = match cli.command {
        Command::Decide {
            tiles,
            region,
            weights,
            test_bound,
        } => cmd_decide(&ctx, tiles, region, weights, test_bound),
        Command::Scan {
            tiles,
            weights,
            max,
        } => cmd_scan(&ctx, tiles, weights, max),
        Command::VerifyBasis { tiles } => cmd_verify_basis(&ctx, tiles),
        Command::Oracle {
            tiles,
            region,
            weights,
            margin,
            emit_certificate,
        } => cmd_oracle(&ctx, tiles, region, weights, margin, emit_certificate),
        Command::Rectcalc { n, p, q } => cmd_rectcalc(&ctx, n, p, q),
        Command::RectcalcScan { n, max } => cmd_rectcalc_scan(&ctx, n, max),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(e),
    }
}

/// Closed-form expectation for builtin regions, when a theorem covers them.
fn closed_form_for(spec: &RegionSpec, n: u32, plus: bool, domain: Domain) -> Option<bool> {
    match spec {
        RegionSpec::Rect { w, h } => expected_rect(n, plus, domain, *w, *h).ok(),
        RegionSpec::InflatedL { n: m, factor } if *m == n && !plus && domain == Domain::Z => {
            closed_form_inflated(n, *factor).ok()
        }
        _ => None,
    }
}

fn cmd_decide(
    ctx: &Ctx,
    t: TileArgs,
    region: String,
    weights: Weights,
    test_bound: Option<u32>,
) -> Result<u8, Error> {
    let spec: RegionSpec = region.parse()?;
    let tiles = TileSet::ribbon_l(t.n, t.plus)?;
    let cells = spec.cells()?;
    let decider = Decider::new(ctx.config);
    let domain = Domain::from(weights);
    let d = decider.signed_tileable(&cells, &tiles, domain, test_bound)?;
    let mut cfg = ctx.config("decide", Format::Json);
    cfg.n = Some(t.n);
    cfg.plus = t.plus;
    cfg.weights = Some(weights);
    cfg.region = Some(spec.to_string());
    cfg.test_bound = Some(test_bound.unwrap_or(t.n));
    let result = json!({
        "tiles": tiles.name,
        "region_cells": cells.len(),
        "answer": d.answer,
        "weight_domain": d.weight_domain,
        "test_monomial": d.test_monomial.map(|m| m.to_string()),
        "search_box": d.search_box,
        "method": d.method,
        "trace_steps": d.trace.as_ref().map(|t| t.steps()),
        "closed_form": closed_form_for(&spec, t.n, t.plus, domain),
    });
    match cfg.format {
        Format::Json => ctx.emit(&cfg, &result),
        _ => out!("{}", d.answer),
    }
    Ok(0)
}

fn cmd_scan(ctx: &Ctx, t: TileArgs, weights: Weights, max: u32) -> Result<u8, Error> {
    let domain = Domain::from(weights);
    let decider = Decider::new(ctx.config);
    let table = decider.scan(t.n, t.plus, domain, max, max)?;
    let mut cfg = ctx.config("scan", Format::Tsv);
    cfg.n = Some(t.n);
    cfg.plus = t.plus;
    cfg.weights = Some(weights);
    cfg.max = Some(max);
    let disagreements = table.disagreements();
    let errors = table.errors();
    match cfg.format {
        Format::Json => ctx.emit(
            &cfg,
            &json!({
                "rows": table.rows,
                "disagreements": disagreements,
                "errors": errors,
            }),
        ),
        _ => {
            out!("p\tq\tgroebner\tclosed_form\tagree\ttest_monomial");
            for r in &table.rows {
                out!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.p,
                    r.q,
                    r.groebner.map_or("error".to_string(), |a| a.to_string()),
                    r.closed_form,
                    r.agree.map_or("-", |a| if a { "1" } else { "0" }),
                    r.test_monomial.map_or("-".to_string(), |m| m.to_string()),
                );
            }
            out!(
                "# {} T{}{} weights {}: {} rows, {} disagreements, {} errors",
                "scan",
                t.n,
                if t.plus { "+" } else { "" },
                domain,
                table.rows.len(),
                disagreements,
                errors
            );
        }
    }
    if disagreements > 0 {
        Ok(EXIT_MISMATCH)
    } else if errors > 0 {
        Ok(EXIT_RESOURCE)
    } else {
        Ok(0)
    }
}

fn cmd_verify_basis(ctx: &Ctx, t: TileArgs) -> Result<u8, Error> {
    let report = verify_basis_with(t.n, t.plus, ctx.config)?;
    let mut cfg = ctx.config("verify-basis", Format::Text);
    cfg.n = Some(t.n);
    cfg.plus = t.plus;
    let passed = report.checks.iter().filter(|c| c.passed).count();
    match cfg.format {
        Format::Json => ctx.emit(&cfg, &report),
        _ => {
            out!("verify-basis {}", TileSet::ribbon_l(t.n, t.plus)?.name);
            for c in &report.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => out!("{mark}\t{}\t{d}", c.name),
                    None => out!("{mark}\t{}", c.name),
                }
            }
            out!("{passed}/{} checks passed", report.checks.len());
        }
    }
    Ok(if report.all_passed() {
        0
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_oracle(
    ctx: &Ctx,
    t: TileArgs,
    region: String,
    weights: Weights,
    margin: Option<u32>,
    emit: Option<PathBuf>,
) -> Result<u8, Error> {
    let spec: RegionSpec = region.parse()?;
    let tiles = TileSet::ribbon_l(t.n, t.plus)?;
    let cells = spec.cells()?;
    let margin = margin.unwrap_or(oracle::default_margin(&tiles));
    let domain = Domain::from(weights);
    let window = Window::around(&cells, margin)?;
    let placements = enumerate_placements(&tiles, &window).len();
    let cert = oracle::solve_in_window(&cells, &tiles, domain, &window)?;
    let verified = cert.as_ref().map(|c| verify_certificate(c, &cells));
    if let (Some(path), Some(c)) = (&emit, &cert) {
        fs::write(path, c.to_text())
            .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut cfg = ctx.config("oracle", Format::Json);
    cfg.n = Some(t.n);
    cfg.plus = t.plus;
    cfg.weights = Some(weights);
    cfg.region = Some(spec.to_string());
    cfg.margin = Some(margin);
    let result = json!({
        "tiles": tiles.name,
        "window": window,
        "placements": placements,
        "found": cert.is_some(),
        "verified": verified,
        "entries": cert.as_ref().map(|c| c.len()),
        "certificate_file": emit.filter(|_| cert.is_some()).map(|p| p.display().to_string()),
        "note": if cert.is_none() { Some("no signed tiling inside this window") } else { None },
    });
    match cfg.format {
        Format::Json => ctx.emit(&cfg, &result),
        _ => match &cert {
            Some(c) => out!("{}", c.to_text().trim_end()),
            None => out!("# no signed tiling inside this window"),
        },
    }
    Ok(if verified == Some(false) {
        EXIT_MISMATCH
    } else {
        0
    })
}

fn cmd_rectcalc(ctx: &Ctx, n: u32, p: u32, q: u32) -> Result<u8, Error> {
    let report = divisibility(p, q, n)?;
    let mut cfg = ctx.config("rectcalc", Format::Json);
    cfg.n = Some(n);
    cfg.p = Some(p);
    cfg.q = Some(q);
    match cfg.format {
        Format::Json => ctx.emit(&cfg, &report),
        _ => out!(
            "{}",
            rect_row(&report, expected_rect(n, false, Domain::Z, p, q)?, None)
        ),
    }
    Ok(0)
}

fn rect_row(r: &RectReport, theorem: bool, groebner: Option<bool>) -> String {
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
    let yn = |b: bool| if b { "yes" } else { "no" };
    format!(
        "{}\t{}\t{:?}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.p,
        r.q,
        r.case,
        yn(r.divisible),
        opt(r.s_minus),
        r.deriv_value,
        opt(r.b_count),
        r.satisfiable.map_or("-", yn),
        yn(theorem),
        groebner.map_or("-", yn),
    )
}

/// Row-level agreement of the rectangle engine with the theorem and with
/// ideal membership.
fn rect_agrees(r: &RectReport, theorem: bool, groebner: bool) -> bool {
    let side = r.p.is_multiple_of(r.n) || r.q.is_multiple_of(r.n);
    r.divisible == side
        && r.deriv_value == case_derivative(r.p, r.q)
        && r.predicts_tileable() == theorem
        && groebner == theorem
}

fn cmd_rectcalc_scan(ctx: &Ctx, n: u32, max: u32) -> Result<u8, Error> {
    divisibility(1, 1, n)?;
    let decider = Decider::new(ctx.config);
    decider.warm(&TileSet::ribbon_l(n, false)?, Domain::Z)?;
    let grid: Vec<(u32, u32)> = (1..=max)
        .flat_map(|p| (p..=max).map(move |q| (p, q)))
        .collect();
    let rows: Vec<Result<(RectReport, bool, bool), Error>> = grid
        .par_iter()
        .map(|&(p, q)| {
            let r = divisibility(p, q, n)?;
            let theorem = expected_rect(n, false, Domain::Z, p, q)?;
            let groebner = decider.rect(n, false, Domain::Z, p, q)?.answer.is_yes();
            Ok((r, theorem, groebner))
        })
        .collect();
    let mut cfg = ctx.config("rectcalc-scan", Format::Tsv);
    cfg.n = Some(n);
    cfg.max = Some(max);
    let mut disagreements = 0;
    let mut resource = 0;
    let mut json_rows = Vec::new();
    if cfg.format != Format::Json {
        out!("p\tq\tcase\tdivisible\ts_minus\tderiv_value\tb_count\tsatisfiable\ttheorem\tgroebner\tagree");
    }
    for (row, &(p, q)) in rows.into_iter().zip(&grid) {
        match row {
            Ok((r, theorem, groebner)) => {
                let agree = rect_agrees(&r, theorem, groebner);
                disagreements += usize::from(!agree);
                if cfg.format == Format::Json {
                    json_rows.push(json!({"report": r, "theorem": theorem, "groebner": groebner, "agree": agree}));
                } else {
                    out!(
                        "{}\t{}",
                        rect_row(&r, theorem, Some(groebner)),
                        u8::from(agree)
                    );
                }
            }
            Err(e) => {
                if e.is_resource() {
                    resource += 1;
                } else {
                    disagreements += 1;
                }
                if cfg.format == Format::Json {
                    json_rows.push(json!({"p": p, "q": q, "error": e.to_string()}));
                } else {
                    out!("{p}\t{q}\terror: {e}");
                }
            }
        }
    }
    if cfg.format == Format::Json {
        ctx.emit(
            &cfg,
            &json!({"rows": json_rows, "disagreements": disagreements, "errors": resource}),
        );
    } else {
        out!(
            "# rectcalc-scan n={n}: {} rows, {disagreements} disagreements, {resource} errors",
            grid.len()
        );
    }
    if disagreements > 0 {
        Ok(EXIT_MISMATCH)
    } else if resource > 0 {
        Ok(EXIT_RESOURCE)
    } else {
        Ok(0)
    }
}
