//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 malformed input,
//! 3 undecided oracle.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::blowup::{blowup_chart, default_jet_order, normalize_germ, verify_theorem4, GermRecord, Theorem4Verdict};
use crate::codim::{census_fit_points, census_sym_rank, codim_table, fit_census_degree, CensusMode, EXHAUSTIVE_BUDGET};
use crate::nfopt::{brute_force_bound, verify_4n2, BlowupGraph, FourN2Verdict};
use crate::polyalg::{Coefficient, GroebnerBudget, JetOrder, Polynomial, Prime};
use crate::regcheck::{parse_primes, regularity_report, Verdict};
use crate::singclass::{classify_point, local_expansion, scan_census, CensusPoints};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "fano-locus", version, about = "Checks the local conditions and numerical bounds behind birational rigidity of Fano hypersurfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Jet order for germ computations (default: max(4, degree)).
    #[arg(long, global = true)]
    pub jet_order: Option<u32>,
    /// Pair budget for each Groebner basis run.
    #[arg(long, global = true, default_value_t = GroebnerBudget::default().max_pairs, value_parser = positive)]
    pub budget: usize,
    /// Primes for dimension checks over finite fields.
    #[arg(long, global = true, env = "FANO_LOCUS_PRIMES", default_value = "31,101")]
    pub primes: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify points of a hypersurface as smooth, quadratic of rank r, or
    /// of higher multiplicity.
    ///
    /// With one --point, prints the class. With several points or --sample,
    /// prints a census and exits 1 if some point is worse than --threshold.
    Classify(ClassifyArgs),
    /// Check the regularity condition at a point: at a smooth point the
    /// pieces q_1..q_{M-1} of the local equation form a regular sequence; at
    /// a singular point q_2..q_M cut out finitely many lines.
    ///
    /// Exits 0 on pass, 1 on fail, 3 when the primes do not agree or a
    /// Groebner run exceeds its budget.
    Regularity(RegularityArgs),
    /// Blow up a quadratic germ along a smooth coordinate center and check
    /// that new singularities stay quadratic of large rank.
    #[command(subcommand)]
    Blowup(BlowupCommand),
    /// Codimension bounds for the loci of hypersurfaces with low-rank
    /// quadratic points or irregular points.
    #[command(subcommand)]
    Codim(CodimCommand),
    /// Count symmetric matrices of bounded rank over finite fields.
    #[command(subcommand)]
    Census(CensusCommand),
    /// Noether-Fano bounds on resolution graphs of a maximal singularity.
    #[command(subcommand)]
    Nf(NfCommand),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Polynomial file (homogeneous F in projective coordinates).
    #[arg(long)]
    pub poly: PathBuf,
    /// Point as comma-separated coordinates, e.g. "1,0,0"; repeatable.
    #[arg(long)]
    pub point: Vec<String>,
    /// Sample this many points on {F = 0} over F_p instead.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Prime for --sample (default: first of --primes).
    #[arg(long)]
    pub prime: Option<u64>,
    /// Census threshold: points must be smooth or quadratic of rank at least this.
    #[arg(long, default_value_t = 5)]
    pub threshold: usize,
}

#[derive(Debug, Args)]
pub struct RegularityArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub point: String,
    /// Prime to use; repeatable, overrides --primes.
    #[arg(long)]
    pub prime: Vec<u64>,
}

#[derive(Debug, Subcommand)]
pub enum BlowupCommand {
    /// Run every chart of the blow-up: exact strict transform, rank of the
    /// quadric fibration over the center, and classification of singular
    /// candidates on the exceptional fiber at seeded sample points.
    ///
    /// Exits 0 on pass, 1 on fail or when the germ rank is below --rank.
    Verify {
        #[arg(long)]
        germ: PathBuf,
        /// Rank threshold.
        #[arg(long)]
        rank: usize,
        /// Random candidate points per chart.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Print the strict transform in one chart.
    Chart {
        #[arg(long)]
        germ: PathBuf,
        /// Chart index, 1..=k.
        #[arg(long)]
        chart: usize,
    },
    /// Bring an affine germ singular along {z_1 = ... = z_k = 0} to the
    /// form c_1 u_1^2 + ... + c_r u_r^2 + tail and print the germ file.
    Normalize {
        #[arg(long)]
        poly: PathBuf,
        /// Codimension of the center.
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum CodimCommand {
    /// Table of codimension bounds for M in a range: rank <= 4 loci, the
    /// F(b) minimum, the regularity bound M(M-5)/2 + 4 and the combined
    /// bound binom(M-3, 2) + 1.
    Table {
        #[arg(long, default_value_t = 5)]
        mmin: u32,
        #[arg(long, default_value_t = 12)]
        mmax: u32,
        /// Emit JSON.
        #[arg(long, conflicts_with = "tsv")]
        json: bool,
        /// Emit tab-separated values.
        #[arg(long)]
        tsv: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CensusModeArg {
    Exhaustive,
    LeadingBlock,
    Sampled,
}

#[derive(Debug, Subcommand)]
pub enum CensusCommand {
    /// Number of symmetric M x M matrices of rank at most r over F_q.
    SymRank {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: CensusModeArg,
        /// Sample size in sampled mode.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Fit the counts over many q by exact interpolation and compare the
    /// degree with the dimension of the rank locus plus one.
    Fit {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum NfCommand {
    /// Minimize the quadratic form over the Noether-Fano polytope of a graph
    /// and check the 4n^2 inequality. Exits 0 when it holds, 1 otherwise.
    Bound {
        /// Graph file: {"k","l","l_star","codims","edges":[[j,i],...]}.
        #[arg(long)]
        graph: PathBuf,
        /// Cross-check with the active-set oracle.
        #[arg(long)]
        oracle: bool,
    },
}

/// Exit code and the text meant for stdout or stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Outcome {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn malformed(msg: impl Display) -> Outcome {
        Outcome {
            code: EXIT_MALFORMED,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(code, text)
            };
        }
    };
    execute(&cli).unwrap_or_else(Outcome::malformed)
}

struct Ctx<'a> {
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn budget(&self) -> GroebnerBudget {
        GroebnerBudget {
            max_pairs: self.cli.budget,
            ..GroebnerBudget::default()
        }
    }

    fn primes(&self, overrides: &[u64]) -> Result<Vec<Prime>, String> {
        if overrides.is_empty() {
            parse_primes(&self.cli.primes).map_err(|e| e.to_string())
        } else {
            overrides.iter().map(|&p| Prime::new(p).map_err(|e| e.to_string())).collect()
        }
    }

    fn jet(&self, degree: u32) -> Result<JetOrder, String> {
        match self.cli.jet_order {
            Some(d) => JetOrder::new(d).map_err(|e| e.to_string()),
            None => Ok(default_jet_order(degree)),
        }
    }

    /// JSON, or the human text.
    fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) -> String {
        match self.cli.format {
            Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
            Format::Human => human(),
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_poly(path: &Path) -> Result<Polynomial, String> {
    Polynomial::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_point(f: &Polynomial, s: &str) -> Result<Vec<Coefficient>, String> {
    s.split(',')
        .map(|t| f.field().parse_coefficient(t.trim()).map_err(|e| format!("point {s:?}: {e}")))
        .collect()
}

fn execute(cli: &Cli) -> Result<Outcome, String> {
    let ctx = Ctx { cli };
    match &cli.command {
        Command::Classify(args) => classify(&ctx, args),
        Command::Regularity(args) => regularity(&ctx, args),
        Command::Blowup(cmd) => blowup(&ctx, cmd),
        Command::Codim(CodimCommand::Table { mmin, mmax, json, tsv }) => {
            let table = codim_table(*mmin, *mmax).map_err(|e| e.to_string())?;
            let out = if *json || cli.format == Format::Json {
                serde_json::to_string_pretty(&table).expect("table serializes") + "\n"
            } else if *tsv {
                table.to_tsv()
            } else {
                table.to_text()
            };
            Ok(Outcome::ok(EXIT_OK, out))
        }
        Command::Census(cmd) => census(&ctx, cmd),
        Command::Nf(NfCommand::Bound { graph, oracle }) => nf_bound(&ctx, graph, *oracle),
    }
}

#[derive(Serialize)]
struct PointClass {
    point: Vec<String>,
    class: crate::singclass::SingularityClass,
    multiplicity: usize,
}

fn classify(ctx: &Ctx, args: &ClassifyArgs) -> Result<Outcome, String> {
    let f = read_poly(&args.poly)?;
    if args.point.len() == 1 && args.sample.is_none() {
        let x = parse_point(&f, &args.point[0])?;
        let germ = local_expansion(&f, &x).map_err(|e| e.to_string())?;
        let class = classify_point(&germ).map_err(|e| e.to_string())?;
        let report = PointClass {
            point: x.iter().map(|c| c.to_string()).collect(),
            class,
            multiplicity: germ.multiplicity(),
        };
        let out = ctx.emit(&report, || format!("{class}\n"));
        return Ok(Outcome::ok(EXIT_OK, out));
    }
    let points = match args.sample {
        Some(count) => {
            let prime = match args.prime {
                Some(p) => Prime::new(p).map_err(|e| e.to_string())?,
                None => *ctx.primes(&[])?.first().ok_or("no primes given")?,
            };
            CensusPoints::Sampled {
                prime,
                count,
                seed: ctx.cli.seed,
                max_attempts: 100 * count.max(1),
            }
        }
        None if args.point.is_empty() => return Err("give --point or --sample".into()),
        None => CensusPoints::Explicit(args.point.iter().map(|s| parse_point(&f, s)).collect::<Result<_, _>>()?),
    };
    let report = scan_census(&f, &points, args.threshold).map_err(|e| e.to_string())?;
    let out = ctx.emit(&report, || report.table());
    Ok(Outcome::ok(if report.verdict { EXIT_OK } else { EXIT_NEGATIVE }, out))
}

fn regularity(ctx: &Ctx, args: &RegularityArgs) -> Result<Outcome, String> {
    let f = read_poly(&args.poly)?;
    let x = parse_point(&f, &args.point)?;
    let primes = ctx.primes(&args.prime)?;
    let report = regularity_report(&f, &x, &primes, &ctx.budget()).map_err(|e| e.to_string())?;
    let code = match report.verdict {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_NEGATIVE,
        Verdict::Undecided => EXIT_UNDECIDED,
    };
    Ok(Outcome::ok(code, ctx.emit(&report, || report.summary())))
}

fn read_germ(ctx: &Ctx, path: &Path) -> Result<crate::blowup::GermNormalForm, String> {
    let rec: GermRecord = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let jet = ctx.cli.jet_order.map(JetOrder::new).transpose().map_err(|e| e.to_string())?;
    rec.into_normal_form(jet).map_err(|e| e.to_string())
}

fn blowup(ctx: &Ctx, cmd: &BlowupCommand) -> Result<Outcome, String> {
    match cmd {
        BlowupCommand::Verify { germ, rank, samples } => {
            let g = read_germ(ctx, germ)?;
            let primes = ctx.primes(&[])?;
            let report = verify_theorem4(&g, *rank, ctx.cli.seed, *samples, &primes, &ctx.budget()).map_err(|e| e.to_string())?;
            let code = match report.verdict {
                Theorem4Verdict::Pass => EXIT_OK,
                Theorem4Verdict::Fail | Theorem4Verdict::PreconditionViolated => EXIT_NEGATIVE,
                Theorem4Verdict::Undecided => EXIT_UNDECIDED,
            };
            Ok(Outcome::ok(code, ctx.emit(&report, || report.summary())))
        }
        BlowupCommand::Chart { germ, chart } => {
            let g = read_germ(ctx, germ)?;
            let ct = blowup_chart(&g, *chart).map_err(|e| e.to_string())?;
            let out = ctx.emit(&crate::polyalg::PolynomialRecord::from(&ct.strict), || format!("{}\n", ct.strict));
            Ok(Outcome::ok(EXIT_OK, out))
        }
        BlowupCommand::Normalize { poly, k } => {
            let f = read_poly(poly)?;
            let jet = ctx.jet(f.total_degree().unwrap_or(0))?;
            let norm = normalize_germ(&f, *k, jet).map_err(|e| e.to_string())?;
            let rec = GermRecord::from(&norm.form);
            let out = serde_json::to_string_pretty(&rec).expect("germ serializes") + "\n";
            Ok(Outcome::ok(EXIT_OK, out))
        }
    }
}

fn census(ctx: &Ctx, cmd: &CensusCommand) -> Result<Outcome, String> {
    match cmd {
        CensusCommand::SymRank { m, r, q, mode, samples } => {
            let mode = match mode {
                CensusModeArg::Exhaustive => CensusMode::Exhaustive,
                CensusModeArg::LeadingBlock => CensusMode::LeadingBlock,
                CensusModeArg::Sampled => CensusMode::Sampled {
                    seed: ctx.cli.seed,
                    samples: *samples,
                },
            };
            let c = census_sym_rank(*m, *r, *q, mode).map_err(|e| e.to_string())?;
            let out = ctx.emit(&c, || {
                let kind = if c.exact { "exact" } else { "sampled estimate" };
                format!(
                    "symmetric {m}x{m} matrices over F_{q} of rank <= {r}: {} of {} ({kind})\n",
                    c.count, c.total
                )
            });
            Ok(Outcome::ok(EXIT_OK, out))
        }
        CensusCommand::Fit { m, r } => {
            let points = census_fit_points(*m, *r, EXHAUSTIVE_BUDGET).map_err(|e| e.to_string())?;
            let fit = fit_census_degree(*m, *r, &points).map_err(|e| e.to_string())?;
            let out = ctx.emit(&fit, || {
                let mut s = String::new();
                for (q, n) in &fit.points {
                    s.push_str(&format!("q = {q}: {n}\n"));
                }
                s.push_str(&format!(
                    "degree {} (expected {}), {}\n",
                    fit.degree,
                    fit.expected,
                    if fit.determined { "determined" } else { "not determined by the points" }
                ));
                s
            });
            Ok(Outcome::ok(if fit.matches() { EXIT_OK } else { EXIT_NEGATIVE }, out))
        }
    }
}

#[derive(Serialize)]
struct NfOutput {
    #[serde(flatten)]
    report: crate::nfopt::FourN2Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<crate::nfopt::OracleResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agrees: Option<bool>,
}

fn nf_bound(ctx: &Ctx, path: &Path, oracle: bool) -> Result<Outcome, String> {
    let g = BlowupGraph::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let report = verify_4n2(&g).map_err(|e| e.to_string())?;
    let oracle = if oracle { Some(brute_force_bound(&g).map_err(|e| e.to_string())?) } else { None };
    let oracle_agrees = oracle.as_ref().map(|o| o.mu == report.bound.mu);
    let code = if report.verdict == FourN2Verdict::Holds && oracle_agrees != Some(false) { EXIT_OK } else { EXIT_NEGATIVE };
    let out = NfOutput {
        report,
        oracle,
        oracle_agrees,
    };
    let text = ctx.emit(&out, || {
        let mut s = out.report.bound.summary();
        s.push_str(&format!("4n^2 inequality: {}\n", out.report.verdict));
        if let Some(o) = &out.oracle {
            s.push_str(&format!(
                "oracle: mu = {} n^2 over {} active sets ({} feasible), {}\n",
                o.mu,
                o.active_sets,
                o.feasible,
                if out.oracle_agrees == Some(true) { "agrees" } else { "DISAGREES" }
            ));
        }
        s
    });
    Ok(Outcome::ok(code, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("fano-locus").chain(args.iter().copied()))
    }

    #[test]
    fn codim_table_theorem_column() {
        let out = run_args(&["codim", "table", "--mmin", "5", "--mmax", "8", "--tsv"]);
        assert_eq!(out.code, EXIT_OK);
        let col: Vec<&str> = out.stdout.lines().skip(1).map(|l| l.rsplit('\t').next().unwrap()).collect();
        assert_eq!(col, ["2", "4", "7", "11"]);
    }

    #[test]
    fn census_command() {
        let out = run_args(&["--format", "json", "census", "sym-rank", "--m", "2", "--r", "1", "--q", "3"]);
        assert_eq!(out.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["count"], "9");
    }

    #[test]
    fn bad_arguments_exit_two() {
        assert_eq!(run_args(&["codim", "tabel"]).code, EXIT_MALFORMED);
        assert_eq!(run_args(&["--budget", "0", "codim", "table"]).code, EXIT_MALFORMED);
        assert_eq!(run_args(&["nf", "bound", "--graph", "/nonexistent.json"]).code, EXIT_MALFORMED);
    }

    #[test]
    fn help_exits_zero() {
        let out = run_args(&["regularity", "--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("regular sequence"));
    }
}
