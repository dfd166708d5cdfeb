//! Command-line front end. [`run`] maps each subcommand to library calls,
//! appends results to the store and returns the process exit code.

use std::collections::HashSet;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::certify::{certify_component_size, CertifierConfig};
use crate::divisors::lemma33_profile;
use crate::error::{Error, Result};
use crate::field::{primes_in_range, subgroup_of_order, Ambient, PrimeField};
use crate::graph::{analyze, conjecture_scan, GraphConfig, ScanRow, DEFAULT_MEMORY_CEILING};
use crate::markoff::{MarkoffTriple, Surface, SurfaceOptions};
use crate::orbits::{intersection_sweep, min_order_product};
use crate::store::{default_store_path, ExportFormat, ResultStore};
use crate::zeros::{
    bound_experiment, count_zeros, exponent_gcd, random_family, singular_locus, BoundSweepConfig, PointField,
    DEFAULT_WORK_CEILING,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "markoff-lab", version, about = "Markoff triples modulo p: experiments and certificates")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Result store (JSON lines); defaults to $MARKOFF_LAB_STORE or ./markoff_lab.jsonl
    #[arg(long, global = true)]
    pub store: Option<PathBuf>,
    /// Worker threads; 0 uses every core
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Seed for randomized harnesses
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest p for which a full graph is built
    #[arg(long, global = true, default_value_t = DEFAULT_MEMORY_CEILING)]
    pub memory_ceiling: u64,
    /// Largest number of polynomial evaluations per zero count
    #[arg(long, global = true, default_value_t = DEFAULT_WORK_CEILING)]
    pub work_ceiling: u64,
    /// Skip primes already present in the store
    #[arg(long, global = true)]
    pub resume: bool,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Range {
    /// A single prime
    #[arg(long, conflicts_with_all = ["min_p", "max_p"])]
    pub p: Option<u64>,
    #[arg(long)]
    pub min_p: Option<u64>,
    #[arg(long)]
    pub max_p: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AmbientArg {
    Base,
    Extension,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the points of the surface mod p
    Surface {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        exclude_zero_coords: bool,
        /// Print every triple
        #[arg(long)]
        list: bool,
    },
    /// Connected components of the graph mod p
    Components {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        exclude_zero_coords: bool,
    },
    /// Connectivity scan over a range of primes
    Conjecture {
        #[arg(long, default_value_t = 5)]
        min_p: u64,
        #[arg(long)]
        max_p: u64,
        /// Primes processed in parallel per batch
        #[arg(long, default_value_t = 16)]
        batch: usize,
        #[arg(long)]
        exclude_zero_coords: bool,
    },
    /// Lower-bound certificates for the component of (1, 1, 1)
    Certify {
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1.0)]
        c0: f64,
        #[arg(long, default_value_t = 1.0)]
        c1: f64,
        #[arg(long, default_value_t = 0.15)]
        window_lo: f64,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        window_hi: f64,
        /// Go straight to the two-level construction
        #[arg(long)]
        skip_large_order: bool,
    },
    /// Minimum of t(x) t(y) t(z) over the surface
    Orders {
        #[command(flatten)]
        range: Range,
    },
    /// Intersections of random pairs of recurrence orbits
    Intersections {
        #[command(flatten)]
        range: Range,
        /// Pairs per prime
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Zeros of a random orbit-pair family on G x G
    Zeros {
        #[arg(long)]
        p: u64,
        /// Subgroup order
        #[arg(long)]
        t: u64,
        /// Family size
        #[arg(long, default_value_t = 1)]
        h: u64,
        #[arg(long, value_enum, default_value_t = AmbientArg::Base)]
        ambient: AmbientArg,
        /// Draw parameters from F_{p^2}
        #[arg(long)]
        extension_params: bool,
    },
    /// Compare exact zero counts with 12 m n g h^(2/3) t^(2/3)
    BoundSweep {
        #[arg(long, default_value_t = 101)]
        min_p: u64,
        #[arg(long, default_value_t = 499)]
        max_p: u64,
        /// Family sizes, comma separated
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        h: Vec<u64>,
        /// Also use subgroup orders t < h^2
        #[arg(long)]
        all_t: bool,
        #[arg(long)]
        extension_params: bool,
    },
    /// tau_z(n) against z^(1 - gamma) and Psi(z, p_s)
    Divisors {
        #[arg(long, default_value_t = 3)]
        n_min: u64,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
    },
    /// Write the records of one kind as CSV or JSON
    Export {
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Defaults to standard output
        #[arg(long)]
        output: Option<PathBuf>,
        /// Keep wall-time fields
        #[arg(long)]
        with_timing: bool,
    },
}

/// Parse `argv` (including the program name), execute, return the exit code.
pub fn run<I, S>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn execute(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut session = Session::new(&cli.common, out, err);
    pool.install(|| session.dispatch(&cli.command))
}

struct Session<'a> {
    common: &'a Common,
    store: ResultStore,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

impl<'a> Session<'a> {
    fn new(common: &'a Common, out: &'a mut (dyn Write + Send), err: &'a mut (dyn Write + Send)) -> Self {
        let path = common.store.clone().unwrap_or_else(default_store_path);
        Session { common, store: ResultStore::new(path), out, err }
    }

    fn graph_config(&self, exclude_zero_coords: bool) -> GraphConfig {
        GraphConfig { memory_ceiling: self.common.memory_ceiling, surface: SurfaceOptions { exclude_zero_coords } }
    }

    fn emit<T: Serialize>(&mut self, kind: &str, record: &T) -> Result<Value> {
        let v = self.store.append(kind, record)?;
        writeln!(self.out, "{v}")?;
        Ok(v)
    }

    fn log(&mut self, msg: &str) {
        let _ = writeln!(self.err, "{msg}");
    }

    /// Primes of `kind` already in the store when resuming.
    fn done(&self, kind: &str) -> Result<HashSet<u64>> {
        if !self.common.resume {
            return Ok(HashSet::new());
        }
        Ok(self.store.keys()?.into_iter().filter(|(k, _)| k == kind).map(|(_, p)| p).collect())
    }

    fn primes(&self, range: &Range, kind: &str) -> Result<Vec<u64>> {
        let primes = match (range.p, range.min_p, range.max_p) {
            (Some(p), _, _) => {
                PrimeField::new(p)?;
                vec![p]
            }
            (None, lo, Some(hi)) => {
                let lo = lo.unwrap_or(5);
                check_order(lo, hi)?;
                primes_in_range(lo.max(5), hi)
            }
            _ => return Err(Error::InvalidArgument("give --p or --max-p".into())),
        };
        let done = self.done(kind)?;
        Ok(primes.into_iter().filter(|p| !done.contains(p)).collect())
    }

    fn dispatch(&mut self, cmd: &Command) -> Result<i32> {
        match cmd {
            Command::Surface { p, exclude_zero_coords, list } => self.surface(*p, *exclude_zero_coords, *list),
            Command::Components { p, exclude_zero_coords } => self.components(*p, *exclude_zero_coords),
            Command::Conjecture { min_p, max_p, batch, exclude_zero_coords } => {
                self.conjecture(*min_p, *max_p, *batch, *exclude_zero_coords)
            }
            Command::Certify { range, c, c0, c1, window_lo, window_hi, skip_large_order } => {
                let config = CertifierConfig {
                    c: *c,
                    c0: *c0,
                    c1: *c1,
                    window: (*window_lo, *window_hi),
                    skip_large_order: *skip_large_order,
                    graph: self.graph_config(false),
                };
                self.certify(range, &config)
            }
            Command::Orders { range } => self.orders(range),
            Command::Intersections { range, pairs } => self.intersections(range, *pairs),
            Command::Zeros { p, t, h, ambient, extension_params } => {
                self.zeros(*p, *t, *h, *ambient, *extension_params)
            }
            Command::BoundSweep { min_p, max_p, h, all_t, extension_params } => {
                self.bound_sweep(*min_p, *max_p, h, *all_t, *extension_params)
            }
            Command::Divisors { n_min, n_max, gamma } => self.divisors(*n_min, *n_max, *gamma),
            Command::Export { kind, format, output, with_timing } => {
                self.export(kind, *format, output.as_ref(), *with_timing)
            }
        }
    }

    fn surface(&mut self, p: u64, exclude_zero_coords: bool, list: bool) -> Result<i32> {
        let surface = Surface::build(p, SurfaceOptions { exclude_zero_coords })?;
        if list {
            for (_, [x, y, z]) in surface.iter_coords() {
                writeln!(self.out, "{x} {y} {z}")?;
            }
        }
        #[derive(Serialize)]
        struct Rec {
            p: u64,
            exclude_zero_coords: bool,
            count: usize,
        }
        self.emit("surface", &Rec { p, exclude_zero_coords, count: surface.len() })?;
        Ok(EXIT_OK)
    }

    fn components(&mut self, p: u64, exclude_zero_coords: bool) -> Result<i32> {
        let start = Instant::now();
        let comps = analyze(p, &self.graph_config(exclude_zero_coords))?;
        let row = ScanRow::from_report(&comps.report, start.elapsed().as_secs_f64());
        self.emit("components", &row)?;
        if comps.report.connected {
            return Ok(EXIT_OK);
        }
        self.dump_exceptional(p, &comps.exceptional_set())?;
        Ok(EXIT_VIOLATION)
    }

    fn dump_exceptional(&mut self, p: u64, triples: &[MarkoffTriple]) -> Result<()> {
        self.log(&format!("p = {p}: {} triples outside the giant component", triples.len()));
        #[derive(Serialize)]
        struct Rec {
            p: u64,
            count: usize,
            triples: Vec<[u64; 3]>,
        }
        let triples: Vec<[u64; 3]> = triples.iter().map(|t| t.coords()).collect();
        self.emit("exceptional_set", &Rec { p, count: triples.len(), triples })?;
        Ok(())
    }

    fn conjecture(&mut self, min_p: u64, max_p: u64, batch: usize, exclude_zero_coords: bool) -> Result<i32> {
        check_order(min_p, max_p)?;
        let done = self.done("components")?;
        let config = self.graph_config(exclude_zero_coords);
        let store = self.store.clone();
        let out = &mut *self.out;
        let violations = conjecture_scan(
            min_p,
            max_p,
            &config,
            batch,
            |p| done.contains(&p),
            |row| {
                let v = store.append("components", row)?;
                writeln!(out, "{v}")?;
                Ok(())
            },
        )?;
        if violations.is_empty() {
            return Ok(EXIT_OK);
        }
        for (p, triples) in &violations {
            self.dump_exceptional(*p, triples)?;
        }
        Ok(EXIT_VIOLATION)
    }

    fn certify(&mut self, range: &Range, config: &CertifierConfig) -> Result<i32> {
        let mut min_ratio = f64::INFINITY;
        for p in self.primes(range, "certificate")? {
            let seed = MarkoffTriple::from_residues(&PrimeField::new(p)?, 1, 1, 1)?;
            let cert = certify_component_size(&seed, config)?;
            let ratio = cert.ratio_to_log_power();
            min_ratio = min_ratio.min(ratio);
            let mut v = serde_json::to_value(&cert)?;
            v["ratio_to_log_power"] = ratio.into();
            self.emit("certificate", &v)?;
        }
        if min_ratio.is_finite() {
            self.log(&format!("min certified_lower_bound / (log p)^(7/9) = {min_ratio:.6}"));
        }
        Ok(EXIT_OK)
    }

    fn orders(&mut self, range: &Range) -> Result<i32> {
        for p in self.primes(range, "min_order_product")? {
            let rec = min_order_product(p)?;
            self.emit("min_order_product", &rec)?;
        }
        Ok(EXIT_OK)
    }

    fn intersections(&mut self, range: &Range, pairs: usize) -> Result<i32> {
        let mut max_ratio = 0f64;
        for p in self.primes(range, "intersection")? {
            for rec in intersection_sweep(p, pairs, self.common.seed)? {
                max_ratio = max_ratio.max(rec.lemma_ratio);
                self.emit("intersection", &rec)?;
            }
        }
        self.log(&format!("max lemma_ratio = {max_ratio:.6}"));
        Ok(EXIT_OK)
    }

    fn zeros(&mut self, p: u64, t: u64, h: u64, ambient: AmbientArg, extension_params: bool) -> Result<i32> {
        let field = PrimeField::new(p)?;
        let ambient = match ambient {
            AmbientArg::Base => Ambient::Base,
            AmbientArg::Extension => Ambient::Extension,
        };
        if h == 0 {
            return Err(Error::InvalidArgument("--h must be positive".into()));
        }
        let g = subgroup_of_order(t, ambient, &field)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.common.seed);
        let family = random_family(&field, &g, h, extension_params, &mut rng, 64)
            .ok_or_else(|| Error::InvalidArgument(format!("no independent family of size {h} found")))?;
        let count = count_zeros(&family, &g, self.common.work_ceiling)?;
        let base = &family.base;
        let locus = singular_locus(base, PointField::Extension)?;
        #[derive(Serialize)]
        struct Rec {
            p: u64,
            t: u64,
            h: u64,
            ambient: Ambient,
            polynomial: String,
            m: u32,
            n: u32,
            g: u64,
            #[serde(rename = "N_h")]
            n_h: u64,
            per_member: Vec<u64>,
            independent: bool,
            singular_locus: usize,
            singular_bound: u64,
        }
        let rec = Rec {
            p,
            t,
            h,
            ambient,
            polynomial: base.to_string(),
            m: base.m(),
            n: base.n(),
            g: exponent_gcd(base)?,
            n_h: count.n_h,
            per_member: count.per_member,
            independent: true,
            singular_locus: locus.cardinality,
            singular_bound: locus.bound,
        };
        self.emit("zeros", &rec)?;
        Ok(EXIT_OK)
    }

    fn bound_sweep(&mut self, min_p: u64, max_p: u64, hs: &[u64], all_t: bool, ext: bool) -> Result<i32> {
        check_order(min_p, max_p)?;
        if hs.is_empty() || hs.contains(&0) {
            return Err(Error::InvalidArgument("--h needs positive family sizes".into()));
        }
        let done = self.done("bound")?;
        let mut violations = 0;
        for p in primes_in_range(min_p.max(5), max_p).into_iter().filter(|p| !done.contains(p)) {
            let config = BoundSweepConfig {
                p_min: p,
                p_max: p,
                hs: hs.to_vec(),
                require_t_at_least_h2: !all_t,
                extension_params: ext,
                seed: self.common.seed,
                work_ceiling: self.common.work_ceiling,
                ..Default::default()
            };
            for row in bound_experiment(&config)? {
                if row.is_violation() {
                    violations += 1;
                    self.log(&format!("in-window violation: p={} t={} h={} ratio={}", row.p, row.t, row.h, row.ratio));
                }
                self.emit("bound", &row)?;
            }
        }
        Ok(if violations > 0 { EXIT_VIOLATION } else { EXIT_OK })
    }

    fn divisors(&mut self, n_min: u64, n_max: u64, gamma: f64) -> Result<i32> {
        check_order(n_min, n_max)?;
        let ns: Vec<u64> = (n_min..=n_max).collect();
        let rows = lemma33_profile(&ns, gamma)?;
        let mut failures = 0;
        for row in &rows {
            if !row.holds {
                failures += 1;
                self.log(&format!("tau_z(n) > Psi(z, p_s) at n = {}", row.n));
            }
            self.emit("divisor_profile", row)?;
        }
        Ok(if failures > 0 { EXIT_VIOLATION } else { EXIT_OK })
    }

    fn export(&mut self, kind: &str, format: FormatArg, output: Option<&PathBuf>, with_timing: bool) -> Result<i32> {
        let format = match format {
            FormatArg::Csv => ExportFormat::Csv,
            FormatArg::Json => ExportFormat::Json,
        };
        let text = self.store.export(kind, format, with_timing)?;
        match output {
            Some(path) => std::fs::write(path, text)?,
            None => self.out.write_all(text.as_bytes())?,
        }
        Ok(EXIT_OK)
    }
}

fn check_order(lo: u64, hi: u64) -> Result<()> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range: {lo} > {hi}")));
    }
    Ok(())
}
