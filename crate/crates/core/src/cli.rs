//! Command-line front end for the `bll` binary.

use std::env;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::borcherds::{
    eichler_minus2_orbits, Convention, HeegnerLedger, Objective, OrbitCount, Pipeline, QuasiPullbackReport,
    SearchResult,
};
use crate::enumerate::ShellCache;
use crate::error::{Error, Result};
use crate::lattice::parse_rationals;
use crate::selftest::{run_selftest, SelftestSummary, DEFAULT_CASES, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(name = "bll", version, about = "Quasi-pullback weights and root systems of E8 complements")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory holding the shell-count cache.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Enumeration node cap (also caps the shell size for `search`).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads (0 or unset: one per core)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// JSON config file; defaults to `$XDG_CONFIG_HOME/bll/config.json`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct VectorArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<i64>,
    /// Eight chart coordinates, e.g. `3,1,0,0,0,0,0,0` or `1/2,...`.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reports for the tabulated v_g, g = 2..22.
    Table,
    /// One quasi-pullback report.
    Qp(VectorArgs),
    /// Heegner multiplicity ledger.
    Heegner {
        #[command(flatten)]
        vector: VectorArgs,
        #[arg(long, default_value = "complement")]
        convention: String,
    },
    /// Classes of (−2)-vectors in Λ_g by divisibility.
    Orbits {
        #[arg(long, allow_hyphen_values = true)]
        g: Option<i64>,
    },
    /// Candidates for v_g ranked by root count.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        g: Option<i64>,
        #[arg(long, conflicts_with = "maximize")]
        minimize: bool,
        #[arg(long)]
        maximize: bool,
    },
    /// Kernel-versus-oracle agreement and the golden table.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Keys a config file may set; the same names as the flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
    pub budget: Option<u64>,
    pub threads: Option<usize>,
    pub g: Option<i64>,
    pub v: Option<String>,
}

/// Settings after merging flags, environment and config file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub budget: Option<u64>,
    pub threads: Option<usize>,
    pub g: Option<i64>,
    pub v: Option<String>,
}

fn default_config_path() -> Option<PathBuf> {
    let base = env::var_os("XDG_CONFIG_HOME")
        .map(PathBuf::from)
        .or_else(|| env::var_os("HOME").map(|h| Path::new(&h).join(".config")))?;
    Some(base.join("bll").join("config.json"))
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("config {}: {e}", p.display())))
        }
        None => match default_config_path().filter(|p| p.exists()) {
            Some(p) => load_config(Some(&p)),
            None => Ok(ConfigFile::default()),
        },
    }
}

/// Flags win over `BLL_*` variables, which win over the config file.
pub fn resolve(
    global: &GlobalArgs,
    g: Option<i64>,
    v: Option<String>,
    env_lookup: &dyn Fn(&str) -> Option<String>,
) -> Result<RunConfig> {
    let file = load_config(global.config.as_deref())?;
    let env_threads = match env_lookup("BLL_THREADS") {
        Some(s) => Some(
            s.parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("BLL_THREADS={s} is not a count")))?,
        ),
        None => None,
    };
    let env_cache = env_lookup("BLL_CACHE_DIR").map(PathBuf::from);
    Ok(RunConfig {
        format: global.format.or(file.format).unwrap_or_default(),
        cache_dir: global.cache_dir.clone().or(env_cache).or(file.cache_dir),
        budget: global.budget.or(file.budget),
        threads: global.threads.or(env_threads).or(file.threads),
        g: g.or(file.g),
        v: v.or(file.v),
    })
}

fn need_g(cfg: &RunConfig) -> Result<i64> {
    cfg.g.ok_or_else(|| Error::InvalidInput("--g is required".into()))
}

fn need_v(cfg: &RunConfig) -> Result<Vec<BigRational>> {
    let s = cfg.v.as_deref().ok_or_else(|| Error::InvalidInput("--v is required".into()))?;
    parse_rationals(s)
}

pub fn render_table_markdown(rows: &[QuasiPullbackReport]) -> String {
    let mut s = String::new();
    let gs: Vec<String> = rows.iter().map(|r| r.g.to_string()).collect();
    let ns: Vec<String> = rows.iter().map(|r| r.n.to_string()).collect();
    let _ = writeln!(s, "| g | {} |", gs.join(" | "));
    let _ = writeln!(s, "|---|{}", "---|".repeat(rows.len()));
    let _ = writeln!(s, "| n(g) | {} |", ns.join(" | "));
    let _ = writeln!(s);
    let _ = writeln!(s, "| g | v | r | k | n | type | disc_order | crosscheck |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|---|");
    for r in rows {
        let _ = writeln!(
            s,
            "| {} | ({}) | {} | {} | {} | {} | {} | {} |",
            r.g,
            r.v_chart.join(", "),
            r.r,
            r.k,
            r.n,
            r.root_type,
            r.disc_order,
            if r.crosscheck.passed { "ok" } else { "FAIL" }
        );
    }
    s
}

fn render_report_markdown(r: &QuasiPullbackReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| field | value |\n|---|---|");
    let _ = writeln!(s, "| g | {} |", r.g);
    let _ = writeln!(s, "| v | ({}) |", r.v_chart.join(", "));
    let _ = writeln!(s, "| r | {} |", r.r);
    let _ = writeln!(s, "| k | {} |", r.k);
    let _ = writeln!(s, "| n | {} |", r.n);
    let _ = writeln!(s, "| type | {} |", r.root_type);
    let _ = writeln!(s, "| cusp | {} |", r.is_cusp);
    let _ = writeln!(s, "| disc_order | {} |", r.disc_order);
    let _ = writeln!(s, "| crosscheck | q0={} 2k={} {} |", r.crosscheck.q0, r.crosscheck.two_k, r.crosscheck.passed);
    if let Some(d) = r.dim_vg {
        let _ = writeln!(s, "| dim V_g | {d} |");
    }
    s
}

fn render_ledger_markdown(l: &HeegnerLedger) -> String {
    let mut s = format!("g = {}, v = ({})\n\n", l.g, l.v_chart.join(", "));
    let _ = writeln!(s, "| lambda | q(lambda) | x | c(-1-x) |\n|---|---|---|---|");
    for e in &l.entries {
        let _ = writeln!(s, "| {:?} | {} | {} | {} |", e.lambda, e.q_lambda, e.x, e.multiplicity);
    }
    let _ = writeln!(s, "\n| lambda | x | H(lambda, x-1) | mult |\n|---|---|---|---|");
    for e in &l.f_divisor_entries {
        let _ = writeln!(s, "| {:?} | {} | {} | {} |", e.lambda, e.x, e.heegner_x, e.multiplicity);
    }
    s
}

fn render_orbits_markdown(o: &OrbitCount) -> String {
    format!(
        "| g | divisibilities | count |\n|---|---|---|\n| {} | {:?} | {} |\n",
        o.g, o.divisibilities, o.count
    )
}

fn render_search_markdown(r: &SearchResult) -> String {
    let mut s = format!(
        "g = {}, shell = {}, primitive = {}\n\n| r | n | type | v | vectors | orbits |\n|---|---|---|---|---|---|\n",
        r.g, r.shell_size, r.primitive_vectors
    );
    for c in &r.candidates {
        let _ = writeln!(
            s,
            "| {} | {} | {} | ({}) | {} | {} |",
            c.r,
            c.n,
            c.root_type,
            c.v_chart.join(", "),
            c.vectors,
            c.orbits
        );
    }
    s
}

fn render_selftest_markdown(s: &SelftestSummary) -> String {
    let mut out = format!(
        "oracle: {}/{} shells agree over {} lattices\ngolden: {}/{} rows\n",
        s.shells_agreeing, s.shells, s.lattices, s.golden_passed, s.golden_rows
    );
    for f in &s.failures {
        let _ = writeln!(out, "FAIL {f}");
    }
    out
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// Runs one command and returns the text for standard output, or an error
/// carrying the exit status.
pub fn execute(command: &Command, cfg: &RunConfig) -> Result<String> {
    let cache = match &cfg.cache_dir {
        Some(dir) => Some(Arc::new(ShellCache::load(dir)?)),
        None => None,
    };
    let mut pipeline = Pipeline::default();
    if let Some(b) = cfg.budget {
        pipeline = pipeline.with_budget(b);
    }
    if let Some(c) = &cache {
        pipeline = pipeline.with_cache(c.clone());
    }
    let md = cfg.format == Format::Markdown;

    let out = match command {
        Command::Table => {
            let rows = pipeline.paper_table()?;
            let text = if md { render_table_markdown(&rows) } else { json(&rows)? };
            if let Some(bad) = rows.iter().find(|r| !r.crosscheck.passed) {
                print!("{text}");
                return Err(Error::Consistency(format!("weight cross-check failed for g={}", bad.g)));
            }
            text
        }
        Command::Qp(_) => {
            let r = pipeline.quasi_pullback(need_g(cfg)?, &need_v(cfg)?)?;
            if md { render_report_markdown(&r) } else { json(&r)? }
        }
        Command::Heegner { convention, .. } => {
            let conv: Convention = convention.parse()?;
            let l = pipeline.heegner_ledger(need_g(cfg)?, &need_v(cfg)?, conv)?;
            if md { render_ledger_markdown(&l) } else { json(&l)? }
        }
        Command::Orbits { .. } => {
            let o = eichler_minus2_orbits(need_g(cfg)?)?;
            if md { render_orbits_markdown(&o) } else { json(&o)? }
        }
        Command::Search { minimize, .. } => {
            let objective = if *minimize { Objective::Minimize } else { Objective::Maximize };
            let r = pipeline.search_v(need_g(cfg)?, objective)?;
            if md { render_search_markdown(&r) } else { json(&r)? }
        }
        Command::Selftest { cases, seed } => {
            let s = run_selftest(&pipeline, *cases, *seed)?;
            let text = if md { render_selftest_markdown(&s) } else { json(&s)? };
            if !s.passed() {
                print!("{text}");
                return Err(Error::Consistency(format!("{} selftest failures", s.failures.len())));
            }
            text
        }
    };
    if let (Some(c), Some(dir)) = (&cache, &cfg.cache_dir) {
        c.save(dir)?;
    }
    Ok(out)
}

fn command_vector(command: &Command) -> (Option<i64>, Option<String>) {
    match command {
        Command::Qp(a) | Command::Heegner { vector: a, .. } => (a.g, a.v.clone()),
        Command::Orbits { g } | Command::Search { g, .. } => (*g, None),
        Command::Table | Command::Selftest { .. } => (None, None),
    }
}

/// Parses `args`, runs, writes output, and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (g, v) = command_vector(&cli.command);
    let result = resolve(&cli.global, g, v, &|k| env::var(k).ok()).and_then(|cfg| {
        let threads = cfg.threads.unwrap_or(0);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| execute(&cli.command, &cfg))
    });
    match result {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
