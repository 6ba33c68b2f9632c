//! Command-line front end: sieves, experiments, and the exact verification
//! suite, with CSV/JSON reports.
//!
//! Exit codes: 0 success, 2 parse/argument error (parse messages carry the
//! byte offset into the expression), 3 data error, 1 internal assertion or
//! failed verification. Errors go to stderr as `mupi: [CODE] message`.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mupi::error::{Error, Result};
use mupi::experiments::{
    self, InequalityId, Moment,
};
use mupi::registry::FormRegistry;
use mupi::repalg::{self, FormId, RepExpr};
use mupi::report::{self, MaassProvenance, RunMeta};
use mupi::sieve::{decade_checkpoints, mobius_table, XiSpec};
use mupi::qseries::HoloForm;

#[derive(Parser)]
#[command(name = "mupi", version, about = "Generalized Mobius functions of automorphic L-functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sieve mu(n) up to N and report absolute partial sums
    Mobius(JobArgs),
    /// Run the exact decomposition/identity/inequality verification suite
    Verify(VerifyArgs),
    /// Mertens-type prime sums sum_{p<=x} w(p)/p
    Mertens(JobArgs),
    /// Absolute partial-sum decay trend at checkpoints
    Decay(JobArgs),
    /// Correlate mu(n) against a bounded test sequence
    Correlate(JobArgs),
    /// Validate a Maass dataset and run the absolute-bound bookkeeping
    MaassCheck(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Representation expression, e.g. "sym1(f12) x sym1(f16)"
    #[arg(long)]
    rep: Option<String>,

    /// Sieve bound N (accepts scientific notation like 1e6)
    #[arg(long = "N")]
    n: Option<String>,

    /// Prime-sum bound x (accepts scientific notation)
    #[arg(long)]
    x: Option<String>,

    /// Prime-sum weight: abs | square | fourth | unit
    #[arg(long)]
    moment: Option<String>,

    /// Test sequence: "1" | "e(<alpha>)" | "file:<path>"
    #[arg(long)]
    xi: Option<String>,

    /// Maass dataset file(s) to load; for maass-check, the dataset itself
    #[arg(long = "file")]
    files: Vec<PathBuf>,

    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format: csv | json
    #[arg(long, default_value = "csv")]
    format: String,

    /// Worker threads: "auto" or a count
    #[arg(long, default_value = "auto")]
    threads: String,

    /// Seed for the randomized table spot-checks
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// "decades" or a comma-separated list of x values
    #[arg(long, default_value = "decades")]
    checkpoints: String,

    /// Directory for exact q-expansion cache tables
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// decomposition | identities | inequalities | all
    #[arg(long, default_value = "all")]
    scope: String,

    /// Worker threads: "auto" or a count
    #[arg(long, default_value = "auto")]
    threads: String,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("mupi: [{}] {e}", e.code());
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Mobius(a) => cmd_mobius(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Mertens(a) => cmd_mertens(a),
        Cmd::Decay(a) => cmd_decay(a),
        Cmd::Correlate(a) => cmd_correlate(a),
        Cmd::MaassCheck(a) => cmd_maass_check(a),
    }
}

/// "1e6", "1000000" or "2_000" to a positive u64.
fn parse_count(s: &str, what: &str) -> Result<u64> {
    let t = s.trim().replace('_', "");
    if let Ok(v) = t.parse::<u64>() {
        if v >= 1 {
            return Ok(v);
        }
    } else if let Ok(v) = t.parse::<f64>() {
        if (1.0..=1.8e19).contains(&v) && v.fract() == 0.0 {
            return Ok(v as u64);
        }
    }
    Err(Error::argument(format!("bad {what} '{s}': expected a positive integer")))
}

fn init_threads(threads: &str) -> Result<()> {
    if threads == "auto" {
        return Ok(());
    }
    let k: usize = threads
        .parse()
        .map_err(|_| Error::argument(format!("bad thread count '{threads}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| Error::argument(format!("thread pool: {e}")))?;
    Ok(())
}

struct Session {
    registry: FormRegistry,
    maass_ids: BTreeSet<String>,
}

impl JobArgs {
    fn session(&self) -> Result<Session> {
        init_threads(&self.threads)?;
        let mut registry = FormRegistry::new();
        if let Some(dir) = &self.cache_dir {
            registry.set_cache_dir(dir);
        }
        for f in &self.files {
            registry.load_maass_file(f)?;
        }
        let maass_ids = registry.maass_ids();
        Ok(Session { registry, maass_ids })
    }

    fn rep(&self, maass_ids: &BTreeSet<String>) -> Result<RepExpr> {
        let text = self
            .rep
            .as_deref()
            .ok_or_else(|| Error::argument("missing --rep"))?;
        repalg::parse_rep(text, maass_ids)
    }

    fn n(&self) -> Result<u64> {
        parse_count(
            self.n.as_deref().ok_or_else(|| Error::argument("missing --N"))?,
            "--N",
        )
    }

    fn x(&self) -> Result<u64> {
        parse_count(
            self.x.as_deref().ok_or_else(|| Error::argument("missing --x"))?,
            "--x",
        )
    }

    fn checkpoints(&self, bound: u64) -> Result<Vec<u64>> {
        if self.checkpoints == "decades" {
            return Ok(decade_checkpoints(bound));
        }
        self.checkpoints
            .split(',')
            .map(|t| parse_count(t, "checkpoint"))
            .collect()
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        match &self.out {
            Some(p) => Ok(Box::new(std::io::BufWriter::new(std::fs::File::create(p)?))),
            None => Ok(Box::new(std::io::stdout().lock())),
        }
    }

    fn meta(&self, command: &str, session: &Session, checkpoints: &[u64]) -> RunMeta {
        let mut m = RunMeta::new(command);
        m.rep = self.rep.clone();
        m.seed = self.seed;
        m.threads = self.threads.clone();
        m.checkpoints = checkpoints.to_vec();
        m.maass_data = session
            .registry
            .maass_provenance()
            .into_iter()
            .map(|(id, path, spectral_r)| MaassProvenance { id, path, spectral_r })
            .collect();
        m
    }

    fn want_json(&self) -> Result<bool> {
        match self.format.as_str() {
            "csv" => Ok(false),
            "json" => Ok(true),
            other => Err(Error::argument(format!("bad --format '{other}': expected csv|json"))),
        }
    }
}

#[derive(Serialize)]
struct MobiusPayload {
    rep: String,
    n: u64,
    degree: u64,
    power_free_support: u64,
    spot_check_pairs: usize,
    spot_check_max_pair_deviation: f64,
    spot_check_max_value_deviation: f64,
    points: Vec<MobiusPoint>,
}

#[derive(Serialize)]
struct MobiusPoint {
    x: u64,
    abs_sum: f64,
    ratio: f64,
}

fn cmd_mobius(a: JobArgs) -> Result<()> {
    let mut session = a.session()?;
    let e = a.rep(&session.maass_ids)?;
    let n = a.n()?;
    session.registry.prepare(&e, n)?;
    let cps = a.checkpoints(n)?;
    let table = mobius_table(&e, n, &session.registry)?;
    let spot = table.spot_check(&e, &session.registry, a.seed, spot_check_count(n))?;
    let sums = table.abs_partial_sums(&cps)?;

    eprintln!(
        "mobius: rep \"{}\"  N={n}  degree={}  support: mu vanishes off {}-th power-free n",
        table.rep(),
        table.degree(),
        table.degree() + 1
    );
    eprintln!(
        "spot-check: {} pairs (max dev {:.2e}), {} values (max dev {:.2e})",
        spot.pairs_checked,
        spot.max_pair_deviation,
        spot.values_checked,
        spot.max_value_deviation
    );

    let mut w = a.writer()?;
    if a.want_json()? {
        let mut meta = a.meta("mobius", &session, &cps);
        meta.n = Some(n);
        meta.degree = Some(table.degree());
        meta.power_free_support = Some(table.degree() + 1);
        let payload = MobiusPayload {
            rep: table.rep().to_string(),
            n,
            degree: table.degree(),
            power_free_support: table.degree() + 1,
            spot_check_pairs: spot.pairs_checked,
            spot_check_max_pair_deviation: spot.max_pair_deviation,
            spot_check_max_value_deviation: spot.max_value_deviation,
            points: sums
                .points
                .iter()
                .map(|&(x, s)| MobiusPoint { x, abs_sum: s, ratio: s / x as f64 })
                .collect(),
        };
        report::write_json(&mut w, &meta, &payload)?;
    } else {
        report::write_abs_sums_csv(&mut w, &sums)?;
    }
    w.flush()?;
    Ok(())
}

fn spot_check_count(n: u64) -> usize {
    if n >= 1000 {
        1000
    } else {
        (n / 2) as usize
    }
}

fn cmd_mertens(a: JobArgs) -> Result<()> {
    let mut session = a.session()?;
    let e = a.rep(&session.maass_ids)?;
    let x = a.x()?;
    let moment = Moment::parse(
        a.moment
            .as_deref()
            .ok_or_else(|| Error::argument("missing --moment"))?,
    )?;
    session.registry.prepare(&e, x)?;
    let cps = a.checkpoints(x)?;
    let r = experiments::mertens_sum(&e, moment, x, &session.registry, &cps)?;
    eprintln!(
        "mertens: rep \"{}\"  moment={}  x={x}  predicted slope {:?}  fitted slope {:?}",
        r.rep,
        moment.name(),
        r.predicted_slope,
        r.fitted_slope
    );
    let mut w = a.writer()?;
    if a.want_json()? {
        let mut meta = a.meta("mertens", &session, &cps);
        meta.x_max = Some(x);
        report::write_json(&mut w, &meta, &r)?;
    } else {
        report::write_mertens_csv(&mut w, &r)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_decay(a: JobArgs) -> Result<()> {
    let mut session = a.session()?;
    let e = a.rep(&session.maass_ids)?;
    let n = a.n()?;
    session.registry.prepare(&e, n)?;
    let cps = a.checkpoints(n)?;
    let r = experiments::decay_experiment(&e, n, &session.registry, &cps)?;
    eprintln!(
        "decay: rep \"{}\"  N={n}  eta={:?}  ratio strictly decreasing: {}  weighted bounded: {:?}",
        r.rep, r.eta, r.strictly_decreasing, r.weighted_bounded
    );
    let mut w = a.writer()?;
    if a.want_json()? {
        let mut meta = a.meta("decay", &session, &cps);
        meta.n = Some(n);
        report::write_json(&mut w, &meta, &r)?;
    } else {
        report::write_decay_csv(&mut w, &r)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_correlate(a: JobArgs) -> Result<()> {
    let mut session = a.session()?;
    let e = a.rep(&session.maass_ids)?;
    let n = a.n()?;
    let xi = XiSpec::parse(
        a.xi.as_deref()
            .ok_or_else(|| Error::argument("missing --xi"))?,
    )?;
    session.registry.prepare(&e, n)?;
    let cps = a.checkpoints(n)?;
    let table = mobius_table(&e, n, &session.registry)?;
    let r = table.correlate(&xi, &cps)?;
    eprintln!(
        "correlate: rep \"{}\"  N={n}  final (1/x)|sum| = {:.6e}",
        table.rep(),
        r.points.last().map(|p| p.1).unwrap_or(0.0)
    );
    let mut w = a.writer()?;
    if a.want_json()? {
        let mut meta = a.meta("correlate", &session, &cps);
        meta.n = Some(n);
        #[derive(Serialize)]
        struct CorrPayload {
            rep: String,
            xi: String,
            points: Vec<(u64, f64)>,
        }
        let payload = CorrPayload {
            rep: table.rep().to_string(),
            xi: a.xi.clone().unwrap_or_default(),
            points: r.points.clone(),
        };
        report::write_json(&mut w, &meta, &payload)?;
    } else {
        report::write_partial_sums_csv(&mut w, &r)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_maass_check(a: JobArgs) -> Result<()> {
    init_threads(&a.threads)?;
    if a.files.len() != 1 {
        return Err(Error::argument("maass-check needs exactly one --file"));
    }
    let ds = mupi::maass::load_maass(&a.files[0])?;
    let x = a.x()?;
    let cps = a.checkpoints(x)?;
    let r = experiments::maass_abs_bound_check(&ds, x, &cps)?;
    eprintln!(
        "maass-check: id={}  R={}  x={x}  ho pointwise ok: {} (max violation {:.2e})  identity max dev {:.2e}",
        r.id, r.spectral_r, r.ho_pointwise_ok, r.ho_max_violation, r.identity_max_dev
    );
    let c = &r.components;
    eprintln!(
        "components at x={}: sum 1/p = {:.6}, lambda^2 = {:.6}, lambda^4 = {:.6} (identity {:.6}), lambda^6 = {:.6} (identity {:.6})",
        c.x, c.sum_inv_p, c.sum_sq, c.sum_fourth, c.sum_fourth_identity, c.sum_sixth, c.sum_sixth_identity
    );
    eprintln!(
        "surrogate upper = {:.6}, slope bookkeeping = {:.6} (11/12 = {:.6})",
        c.surrogate_upper,
        c.slope_bookkeeping,
        11.0 / 12.0
    );
    let mut w = a.writer()?;
    if a.want_json()? {
        let mut meta = RunMeta::new("maass-check");
        meta.x_max = Some(x);
        meta.seed = a.seed;
        meta.threads = a.threads.clone();
        meta.checkpoints = cps.clone();
        meta.maass_data = vec![MaassProvenance {
            id: ds.id.clone(),
            path: ds.source.clone(),
            spectral_r: ds.spectral_r,
        }];
        report::write_json(&mut w, &meta, &r)?;
    } else {
        report::write_maass_bound_csv(&mut w, &r)?;
    }
    w.flush()?;
    Ok(())
}

struct CheckRow {
    name: String,
    pass: bool,
    detail: String,
}

fn cmd_verify(a: VerifyArgs) -> Result<()> {
    init_threads(&a.threads)?;
    let scope = a.scope.as_str();
    if !matches!(scope, "all" | "decomposition" | "identities" | "inequalities") {
        return Err(Error::argument(format!(
            "bad --scope '{scope}': expected decomposition|identities|inequalities|all"
        )));
    }
    let mut rows: Vec<CheckRow> = Vec::new();

    if scope == "all" || scope == "decomposition" {
        let mut ok = true;
        let mut failed_at = None;
        for m in 0..=8 {
            for r in 0..=8 {
                if !repalg::check_decomposition(m, r) {
                    ok = false;
                    failed_at = Some((m, r));
                }
            }
        }
        rows.push(CheckRow {
            name: "sym decomposition grid m,r <= 8".into(),
            pass: ok,
            detail: match failed_at {
                None => "81 exact multiset equalities".into(),
                Some((m, r)) => format!("failed at m={m} r={r}"),
            },
        });

        let f = FormId::Holo(HoloForm::F12);
        let g = FormId::Holo(HoloForm::F16);
        let mut ok = true;
        let mut failed_at = None;
        for m1 in 0..=3 {
            for m2 in 0..=3 {
                if !repalg::check_pi_times_pi(m1, m2, &f, &g)
                    || !repalg::check_pi_fourth(m1, m2, &f, &g)
                {
                    ok = false;
                    failed_at = Some((m1, m2));
                }
            }
        }
        rows.push(CheckRow {
            name: "pi x pi and fourth-power decompositions m1,m2 <= 3".into(),
            pass: ok,
            detail: match failed_at {
                None => "square and fourth-power multisets match".into(),
                Some((m1, m2)) => format!("failed at m1={m1} m2={m2}"),
            },
        });

        let mut ok = true;
        for m1 in 0..=3u32 {
            for m2 in 0..=3u32 {
                let pi = repalg::rankin_selberg_pair(m1, m2, &f, &g);
                let ms = repalg::exponents(&pi);
                let d = u64::from(m1 + 1) * u64::from(m2 + 1);
                let sq = repalg::exponents(&repalg::RepExpr::tensor(pi.clone(), pi));
                if ms.degree() != d || sq.degree() != d * d {
                    ok = false;
                }
            }
        }
        rows.push(CheckRow {
            name: "degree law d and d^2".into(),
            pass: ok,
            detail: "d = (m1+1)(m2+1)".into(),
        });
    }

    if scope == "all" || scope == "identities" {
        for c in repalg::check_power_identities() {
            rows.push(CheckRow {
                name: c.name.clone(),
                pass: c.pass && c.lhs_degree == c.rhs_degree,
                detail: format!("degree {} = {}", c.lhs_degree, c.rhs_degree),
            });
        }
    }

    if scope == "all" || scope == "inequalities" {
        let mut min_margin = f64::INFINITY;
        let mut ok = true;
        for m in 1..=30 {
            let r = experiments::inequality_grid(InequalityId::PolyMajorant { m }, 0.0, 1.0, 1_000_000)?;
            min_margin = min_margin.min(r.min_margin);
            ok &= r.min_margin >= -1e-12;
        }
        rows.push(CheckRow {
            name: "quadratic sqrt majorant grid, m 1..=30".into(),
            pass: ok,
            detail: format!("min margin {min_margin:.3e} on 10^6-point grids of [0,1]"),
        });

        let r = experiments::inequality_grid(InequalityId::CubicMajorant, 0.0, 10.0, 1_000_000)?;
        let at_one = experiments::cubic_majorant_margin(1.0);
        rows.push(CheckRow {
            name: "cubic sqrt majorant grid on [0,10]".into(),
            pass: r.min_margin >= -1e-12 && at_one.abs() <= 1e-12,
            detail: format!("min margin {:.3e}, margin at t=1 is {at_one:.3e}", r.min_margin),
        });
    }

    let mut failures = 0;
    for row in &rows {
        println!(
            "{} {:<55} {}",
            if row.pass { "PASS" } else { "FAIL" },
            row.name,
            row.detail
        );
        if !row.pass {
            failures += 1;
        }
    }
    if failures > 0 {
        return Err(Error::internal(format!("{failures} verification check(s) failed")));
    }
    Ok(())
}
