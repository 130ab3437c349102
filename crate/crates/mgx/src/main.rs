use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mgx::io::{format_multigraph, read_pattern};
use mgx::output::{self, fmt_float, float, rational};
use mgx::verify::{run_verify, Status};
use mgx_core::admissibility::{is_admissible, sum_bracket};
use mgx_core::blowup::{optimize_blowup, Certified, Mode, DEFAULT_BUDGET};
use mgx_core::bounds::{fk_m, flat_interval, flat_interval_sandwich, large_a_gate, Decision};
use mgx_core::catalog::TuranSpec;
use mgx_core::density::{pi_density, sigma_density, Density};
use mgx_core::oracle::{brute_force_extremal, OracleOptions, OracleStatus};
use mgx_core::search::{survey, SurveyConfig};
use mgx_core::turan::{s0, turan_closed_forms};
use mgx_core::{Error, Objective};
use serde_json::{json, Value as Json};

/// Extremal sum/product densities of (s,q)-sparse multigraphs.
#[derive(Parser)]
#[command(name = "mgx", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "MGX_THREADS")]
    threads: Option<usize>,
    /// Node budget for exhaustive searches (accepts 1e9).
    #[arg(long, global = true, value_parser = parse_count)]
    budget: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact sum density σ of a pattern.
    Sigma(PatternArg),
    /// Product density π of a pattern, with its KKT certificate.
    Pi {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Best blow-up of a pattern on n vertices.
    BlowupMax {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Obj::Sum)]
        objective: Obj,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Closed forms for Σ_T(n) of a generalised Turán pattern.
    Turan {
        /// The vector r, comma separated, e.g. 1,0,1.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u32>,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        n: u64,
        /// Print every m from 1 to n.
        #[arg(long)]
        table: bool,
    },
    /// Bound machinery.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Whether every blow-up of the pattern is an (s,q)-graph.
    Admissible {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        q: u64,
    },
    /// Exhaustive ex(n, s, q) for tiny n.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Obj::Sum)]
        objective: Obj,
        #[arg(long)]
        max_mult: Option<u32>,
        /// Write the witness multigraph here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Search all labelled graphs rather than degree-sorted ones.
        #[arg(long)]
        no_degree_order: bool,
    },
    /// Best lifted-graph pattern density for each q (CSV).
    Survey {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        a: u32,
        #[arg(long, value_enum, default_value_t = Obj::Product)]
        objective: Obj,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        min_girth: usize,
        #[arg(long)]
        q_from: u64,
        #[arg(long)]
        q_to: u64,
        /// Write CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Run only these checks (repeatable or comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// List check names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// m(s,q) as an exact rational.
    FkM {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        q: u64,
    },
    /// Flat interval of TUR((r), a) at s, with its induction check.
    Flat {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 200)]
        n_max: u64,
    },
    /// The large-a polynomial gate and its equivalent forms.
    Gate {
        #[arg(long)]
        r0: u64,
        #[arg(long)]
        rd: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        a: u64,
    },
}

#[derive(Args)]
struct PatternArg {
    /// Pattern JSON file.
    #[arg(long)]
    pattern: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Obj {
    Sum,
    Product,
}

impl From<Obj> for Objective {
    fn from(o: Obj) -> Self {
        match o {
            Obj::Sum => Objective::Sum,
            Obj::Product => Objective::Product,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Local,
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("`{s}` is not a non-negative integer")),
    }
}

/// What a command produced: the JSON and text renderings plus an exit code.
struct Outcome {
    json: Json,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(json: Json, text: String) -> Self {
        Outcome { json, text, code: 0 }
    }
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Core(Error::Budget { .. }) => 3,
        _ => 2,
    }
}

fn decision(d: &Decision) -> Json {
    json!({ "holds": d.holds, "margin": float(d.margin), "boundary": d.boundary })
}

fn density_json(d: &Density) -> Json {
    match d {
        Density::Sigma(r) => rational(r),
        Density::Pi(v) => float(*v),
    }
}

fn density_text(d: &Density) -> String {
    match d {
        Density::Sigma(r) => r.to_string(),
        Density::Pi(v) => fmt_float(*v),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.cmd {
        Cmd::Sigma(pa) => {
            let r = sigma_density(&read_pattern(&pa.pattern)?)?;
            let weights: Vec<String> = r.weighting.iter().map(|w| w.to_string()).collect();
            Ok(Outcome::ok(
                json!({
                    "sigma": rational(&r.value),
                    "weighting": r.weighting.iter().map(rational).collect::<Vec<_>>(),
                    "support": r.support,
                    "tied_supports": r.tied_supports,
                }),
                format!("sigma = {}\nweighting = [{}]\nsupport = {:?}", r.value, weights.join(", "), r.support),
            ))
        }
        Cmd::Pi { pattern, tol } => {
            let r = pi_density(&read_pattern(&pattern.pattern)?, *tol)?;
            let mut text = format!(
                "pi = {}\nexp(pi) = {}\nkkt_residual = {:e}\nsupport = {:?}\ncertified = {}",
                fmt_float(r.value),
                fmt_float(r.value.exp()),
                r.kkt_residual,
                r.support,
                r.certified
            );
            if r.tied_supports.len() > 1 {
                let _ = write!(text, "\ntied supports = {:?}", r.tied_supports);
            }
            Ok(Outcome::ok(
                json!({
                    "pi": float(r.value),
                    "kkt_residual": float(r.kkt_residual),
                    "weighting": r.weighting.iter().map(|&x| float(x)).collect::<Vec<_>>(),
                    "support": r.support,
                    "ascent_value": float(r.ascent_value),
                    "certified": r.certified,
                    "tied_supports": r.tied_supports,
                }),
                text,
            ))
        }
        Cmd::BlowupMax { pattern, n, objective, mode } => {
            let p = read_pattern(&pattern.pattern)?;
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Local => Mode::Local,
            };
            let r = optimize_blowup(&p, *n, (*objective).into(), mode, budget)?;
            let cert = match r.certified {
                Certified::Exact => "exact",
                Certified::Local => "local",
            };
            Ok(Outcome::ok(
                json!({
                    "n": n,
                    "objective": Objective::from(*objective).as_str(),
                    "value": output::value(&r.value),
                    "parts": r.witness.sizes,
                    "certified": cert,
                    "nodes_explored": r.nodes_explored,
                }),
                format!(
                    "value = {}\nparts = {:?}\ncertified = {cert}\nnodes = {}",
                    output::value_text(&r.value),
                    r.witness.sizes,
                    r.nodes_explored
                ),
            ))
        }
        Cmd::Turan { r, a, n, table } => {
            let spec = TuranSpec::new(r.clone(), *a)?;
            let first = if *table { 1 } else { *n };
            let mut rows = Vec::new();
            let mut text = format!("s0 = {}\n n  sigma_n  delta_n  |U| range\n", s0(&spec)?);
            for m in first..=*n {
                let c = turan_closed_forms(&spec, m)?;
                let _ = writeln!(text, "{:>2}  {:>7}  {:>7}  [{}, {}]", c.n, c.sigma_n, c.delta_n, c.u_size_range.0, c.u_size_range.1);
                rows.push(json!({
                    "n": c.n,
                    "sigma_n": c.sigma_n,
                    "delta_n": c.delta_n,
                    "u_size_range": [c.u_size_range.0, c.u_size_range.1],
                }));
            }
            let json = if *table { json!({ "s0": s0(&spec)?, "rows": rows }) } else { rows.pop().expect("one row") };
            Ok(Outcome::ok(json, text.trim_end().to_string()))
        }
        Cmd::Bounds(BoundsCmd::FkM { s, q }) => {
            let m = fk_m(*s, *q)?;
            Ok(Outcome::ok(json!({ "s": s, "q": q, "m": rational(&m) }), format!("m({s},{q}) = {m}")))
        }
        Cmd::Bounds(BoundsCmd::Flat { r, a, s, n_max }) => {
            let fi = flat_interval(*r, *a, *s)?;
            let sw = flat_interval_sandwich(*r, *a, *s, *n_max)?;
            let code = if sw.first_failure.is_some() { 1 } else { 0 };
            Ok(Outcome {
                json: json!({
                    "q_low": fi.q_low,
                    "q_high": fi.q_high,
                    "value": float(fi.value),
                    "sandwich": { "first_failure": sw.first_failure, "checked_up_to": sw.checked_up_to },
                }),
                text: format!(
                    "q in [{}, {}]\nvalue = {}\ninduction check to n = {}: {}",
                    fi.q_low,
                    fi.q_high,
                    fmt_float(fi.value),
                    sw.checked_up_to,
                    match sw.first_failure {
                        None => "holds".to_string(),
                        Some(n) => format!("fails at n = {n}"),
                    }
                ),
                code,
            })
        }
        Cmd::Bounds(BoundsCmd::Gate { r0, rd, d, a }) => {
            let g = large_a_gate(*r0, *rd, *d, *a)?;
            Ok(Outcome::ok(
                json!({
                    "gate": g.gate,
                    "gate_equal": g.gate_equal,
                    "equiv_b": decision(&g.equiv_b),
                    "equiv_c": decision(&g.equiv_c),
                    "threshold": g.threshold,
                }),
                format!(
                    "gate = {}{}\n(b) = {} (margin {:e})\n(c) = {} (margin {:e})\nthreshold = {}",
                    g.gate,
                    if g.gate_equal { " (sides equal)" } else { "" },
                    g.equiv_b.holds,
                    g.equiv_b.margin,
                    g.equiv_c.holds,
                    g.equiv_c.margin,
                    g.threshold
                ),
            ))
        }
        Cmd::Admissible { pattern, s, q } => {
            let p = read_pattern(&pattern.pattern)?;
            let b = sum_bracket(&p, *s)?;
            let ok = is_admissible(&p, *s, *q, budget)?;
            Ok(Outcome::ok(
                json!({ "admissible": ok, "s": s, "q": q, "bracket": { "lo": b.lo, "hi": b.hi } }),
                format!("admissible = {ok}\nSigma_P({s}) in [{}, {}]", b.lo, b.hi),
            ))
        }
        Cmd::Oracle { n, s, q, objective, max_mult, witness, no_degree_order } => {
            let opts = OracleOptions { max_mult: *max_mult, budget, degree_order: !no_degree_order };
            let r = brute_force_extremal(*n, *s, *q, (*objective).into(), opts)?;
            if let Some(path) = witness {
                std::fs::write(path, format_multigraph(&r.witness)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            let (status, code) = match r.status {
                OracleStatus::Exact => ("exact", 0),
                OracleStatus::LowerBound => ("lower-bound", 3),
            };
            let edges: Vec<[u64; 3]> = r.witness.pairs().map(|(u, v, m)| [u as u64, v as u64, m as u64]).collect();
            Ok(Outcome {
                json: json!({
                    "n": n, "s": s, "q": q,
                    "objective": r.objective.as_str(),
                    "value": output::value(&r.value),
                    "status": status,
                    "nodes_explored": r.nodes_explored,
                    "witness": edges,
                }),
                text: format!(
                    "value = {}\nstatus = {status}\nnodes = {}\nwitness:\n{}",
                    output::value_text(&r.value),
                    r.nodes_explored,
                    format_multigraph(&r.witness).trim_end()
                ),
                code,
            })
        }
        Cmd::Survey { s, a, objective, max_vertices, max_degree, min_girth, q_from, q_to, csv } => {
            if q_from > q_to {
                return Err(Error::input("--q-from exceeds --q-to").into());
            }
            let cfg = SurveyConfig {
                s: *s,
                a: *a,
                max_n: *max_vertices,
                max_deg: *max_degree,
                min_girth: *min_girth,
                objective: (*objective).into(),
                budget,
            };
            let qs: Vec<u64> = (*q_from..=*q_to).collect();
            let sv = survey(&cfg, &qs)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Failure::Io(e.to_string());
            w.write_record(["q", "best_density", "witness", "tie_count"]).map_err(io_err)?;
            let mut rows = Vec::new();
            for row in &sv.rows {
                let label = &sv.candidates[row.winners[0]].label;
                let winners: Vec<&str> = row.winners.iter().map(|&i| sv.candidates[i].label.as_str()).collect();
                w.write_record([row.q.to_string(), density_text(&row.best), label.clone(), row.tie_count().to_string()])
                    .map_err(io_err)?;
                rows.push(json!({
                    "q": row.q,
                    "best_density": density_json(&row.best),
                    "witness": label,
                    "winners": winners,
                    "tie_count": row.tie_count(),
                }));
            }
            let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
            let table = String::from_utf8(bytes).expect("CSV is UTF-8");
            let note = "best pattern density (lower bound; equals the extremal value only where a theorem applies)";
            let text = match csv {
                Some(path) => {
                    std::fs::write(path, &table).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    format!("# {note}\n# {} candidates; {} rows written to {}", sv.candidates.len(), sv.rows.len(), path.display())
                }
                None => format!("# {note}\n{}", table.trim_end()),
            };
            Ok(Outcome::ok(json!({ "note": note, "candidates": sv.candidates.len(), "rows": rows }), text))
        }
        Cmd::Verify { suite, only, list } => {
            if suite != "paper" {
                return Err(Error::input(format!("unknown suite `{suite}`; the only suite is `paper`")).into());
            }
            if *list {
                let names = mgx::verify::check_names();
                return Ok(Outcome::ok(json!(names), names.join("\n")));
            }
            let report = run_verify(only, budget)?;
            let mut text = String::new();
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                let _ = writeln!(text, "{tag:<4}  {:<20} got: {}", c.check, c.got);
                if c.status != Status::Pass {
                    let _ = writeln!(text, "      {:<20} want: {}", "", c.want);
                }
            }
            let (pass, fail, skip) = (report.count(Status::Pass), report.count(Status::Fail), report.count(Status::Skipped));
            let _ = write!(text, "{pass} passed, {fail} failed, {skip} skipped");
            let code = if report.all_passed() { 0 } else { 1 };
            Ok(Outcome { json: serde_json::to_value(&report).expect("report serialises"), text, code })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("input error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON renders"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            let code = exit_code(&f);
            let msg = match &f {
                Failure::Core(e) => e.to_string(),
                Failure::Io(m) => format!("input error: {m}"),
            };
            if cli.json {
                println!("{}", json!({ "error": msg, "exit_code": code }));
            } else {
                eprintln!("{msg}");
            }
            ExitCode::from(code)
        }
    }
}
