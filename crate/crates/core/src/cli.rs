//! The `excisive` command line: argument parsing, dispatch and rendering.
//!
//! Every command produces an [`Outcome`] instead of printing, so the whole
//! frontend can be exercised from tests. Exit codes: 0 success, 1 failed
//! verification, 2 usage or budget error.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::balmer::{b_leq, b_truncation, smith_points};
use crate::burnside::{self, BurnsidePresentation, RingElement, DEFAULT_SEED};
use crate::classify::{self, ENUM_BUDGET};
use crate::combinat::{self, MuMethod};
use crate::error::Error;
use crate::hzspec::{hz_poset, hz_slice_poset};
use crate::natinf::NatInf;
use crate::poset::{Poset, RankDir, SpectrumPoint};
use crate::prime::Prime;
use crate::zariski::z_poset;

/// Environment variable overriding the enumeration budget of `ideals`.
pub const BUDGET_ENV: &str = "EXCISIVE_ENUM_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Random trials added to the basis pairs by `ring --check`.
const HOM_TRIALS: usize = 64;

#[derive(Debug, Parser)]
#[command(
    name = "excisive",
    version,
    about = "Exact invariants of compact d-excisive functors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count good subsets of size K in [I] x [J].
    Mu(MuArgs),
    /// Structure of the Goodwillie-Burnside ring A(D).
    Ring(RingArgs),
    /// Emit a spectrum as a poset.
    Spec(SpecArgs),
    /// The p-distance between layers K and L.
    Delta(DeltaArgs),
    /// Decide a Smith/Floyd implication.
    Smith(SmithArgs),
    /// Count or list p-admissible functions with values in {0..H, inf}.
    Ideals(IdealsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MuMethodArg {
    Brute,
    InclExcl,
    Stirling,
}

impl From<MuMethodArg> for MuMethod {
    fn from(m: MuMethodArg) -> Self {
        match m {
            MuMethodArg::Brute => MuMethod::Brute,
            MuMethodArg::InclExcl => MuMethod::InclExcl,
            MuMethodArg::Stirling => MuMethod::Stirling,
        }
    }
}

#[derive(Debug, Args)]
pub struct MuArgs {
    pub i: u64,
    pub j: u64,
    pub k: u64,
    #[arg(long, value_enum, default_value = "incl-excl", conflicts_with = "all")]
    pub method: MuMethodArg,
    /// Evaluate every method and compare.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("report").required(true).args(["table", "check", "cokernel"])))]
pub struct RingArgs {
    pub d: usize,
    /// Products of basis elements.
    #[arg(long)]
    pub table: bool,
    /// Ring axioms and multiplicativity of the ghost map.
    #[arg(long)]
    pub check: bool,
    /// Invariant factors of the ghost map's cokernel.
    #[arg(long)]
    pub cokernel: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Zariski,
    Balmer,
    Hz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("format").args(["dot", "json", "csv", "text"])))]
pub struct SpecArgs {
    #[arg(value_enum)]
    pub variant: Variant,
    #[arg(short = 'd', long = "rank")]
    pub d: u32,
    /// Comma-separated primes, e.g. 2,3,5.
    #[arg(short = 'p', long = "primes", value_delimiter = ',', required = true)]
    pub primes: Vec<Prime>,
    /// Largest finite chromatic height (balmer only).
    #[arg(short = 'H', long = "hmax", default_value_t = 3)]
    pub hmax: u64,
    /// Leave out the height-infinity points (balmer only).
    #[arg(long)]
    pub no_infinity: bool,
    /// Restrict to the (k, p) points for one prime (hz only).
    #[arg(long)]
    pub slice: Option<Prime>,
    #[arg(long)]
    pub dot: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub text: bool,
}

impl SpecArgs {
    fn format(&self) -> Format {
        match (self.dot, self.json, self.csv) {
            (true, _, _) => Format::Dot,
            (_, true, _) => Format::Json,
            (_, _, true) => Format::Csv,
            _ => Format::Text,
        }
    }
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    pub p: Prime,
    pub k: u64,
    pub l: u64,
    /// Print a shortest chain of p-power partitions.
    #[arg(long)]
    pub chain: bool,
    /// Compare the closed form with the chain search.
    #[arg(long)]
    pub brute: bool,
}

#[derive(Debug, Args)]
pub struct SmithArgs {
    /// Degree of excisiveness.
    pub d: u32,
    /// The prime.
    pub p: Prime,
    /// Layer whose Morava K-theory is assumed to vanish.
    pub k: u32,
    /// Layer whose Morava K-theory is asked about.
    pub l: u32,
    /// Height assumed to vanish on layer K (a number or `inf`).
    pub n: NatInf,
    /// Height asked about on layer L (a number or `inf`).
    pub h: NatInf,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["count", "list"])))]
#[command(group(ArgGroup::new("encoding").args(["csv", "json"])))]
pub struct IdealsArgs {
    pub d: u32,
    pub p: Prime,
    pub hmax: u64,
    #[arg(long)]
    pub count: bool,
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub json: bool,
}

/// How a poset is written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderConfig {
    pub format: Format,
    pub rank_dir: RankDir,
}

pub fn render_poset<P: SpectrumPoint>(poset: &Poset<P>, name: &str, cfg: RenderConfig) -> String {
    match cfg.format {
        Format::Dot => poset.to_dot(name, cfg.rank_dir),
        Format::Json => poset.to_json(),
        Format::Text => poset.to_text(),
        Format::Csv => {
            let mut out = String::from("from,to\n");
            for &(a, b) in poset.covers() {
                let _ = writeln!(
                    out,
                    "{},{}",
                    poset.points()[a].label(),
                    poset.points()[b].label()
                );
            }
            out
        }
    }
}

/// What a command wants printed, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Outcome::default()
        }
    }

    fn with_code(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn error(e: &Error) -> Self {
        let code = match e {
            Error::Internal(_) => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code,
        }
    }
}

/// Reads the enumeration budget from [`BUDGET_ENV`], defaulting to [`ENUM_BUDGET`].
pub fn budget_from_env() -> Result<u64, String> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(ENUM_BUDGET),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, budget: u64) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command, budget),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(command: &Command, budget: u64) -> Outcome {
    let result = match command {
        Command::Mu(a) => cmd_mu(a),
        Command::Ring(a) => cmd_ring(a),
        Command::Spec(a) => cmd_spec(a),
        Command::Delta(a) => cmd_delta(a),
        Command::Smith(a) => cmd_smith(a),
        Command::Ideals(a) => cmd_ideals(a, budget),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

pub fn cmd_mu(a: &MuArgs) -> Result<Outcome, Error> {
    if !a.all {
        let v = MuMethod::from(a.method).eval(a.i, a.j, a.k)?;
        return Ok(Outcome::ok(format!("{v}\n")));
    }
    let mut out = String::new();
    let mut values = Vec::new();
    for m in MuMethod::ALL {
        let v = m.eval(a.i, a.j, a.k)?;
        let _ = writeln!(out, "{}: {v}", m.name());
        values.push(v);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    out.push_str(if agree { "AGREE\n" } else { "DISAGREE\n" });
    Ok(Outcome::with_code(
        out,
        if agree { EXIT_OK } else { EXIT_VERIFICATION },
    ))
}

fn json_out(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn cmd_ring(a: &RingArgs) -> Result<Outcome, Error> {
    if a.table {
        let pres = BurnsidePresentation::new(a.d)?;
        let mut rows = Vec::new();
        let mut out = String::new();
        for i in 1..=a.d {
            for j in i..=a.d {
                let product = pres.basis_product(i, j);
                let _ = writeln!(out, "x{i}*x{j} = {product}");
                rows.push((i, j, product));
            }
        }
        if a.json {
            let products: Vec<_> = rows
                .iter()
                .map(
                    |(i, j, p): &(usize, usize, RingElement)| json!({"i": i, "j": j, "product": p}),
                )
                .collect();
            out = json_out(&json!({"d": a.d, "products": products}));
        }
        return Ok(Outcome::ok(out));
    }

    if a.check {
        let axioms = burnside::ring_axioms(a.d)?;
        let hom = if a.d <= 8 {
            Some(burnside::ghost_is_hom_check(a.d, HOM_TRIALS, DEFAULT_SEED)?)
        } else {
            None
        };
        let quotient = if a.d <= 6 {
            Some(burnside::quotient_presentation_check(a.d)?)
        } else {
            None
        };
        let pass =
            axioms.holds() && hom.as_ref().is_none_or(|h| h.holds) && quotient.unwrap_or(true);
        let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
        let out = if a.json {
            json_out(
                &json!({"axioms": axioms, "ghost_hom": hom, "quotient_presentation": quotient, "pass": pass}),
            )
        } else {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "associativity ({} triples): {}",
                axioms.triples_checked,
                verdict(axioms.associative)
            );
            let _ = writeln!(out, "commutativity: {}", verdict(axioms.commutative));
            let _ = writeln!(out, "unit: {}", verdict(axioms.unital));
            match &hom {
                Some(h) => {
                    let _ = writeln!(
                        out,
                        "ghost map multiplicative ({} random pairs, seed {:#x}): {}",
                        h.trials,
                        h.seed,
                        verdict(h.holds)
                    );
                }
                None => out.push_str("ghost map multiplicative: skipped (d > 8)\n"),
            }
            match quotient {
                Some(q) => {
                    let _ = writeln!(out, "quotient presentation: {}", verdict(q));
                }
                None => out.push_str("quotient presentation: skipped (d > 6)\n"),
            }
            if let Some(why) = &axioms.failure {
                let _ = writeln!(out, "first failure: {why}");
            }
            out
        };
        return Ok(Outcome::with_code(
            out,
            if pass { EXIT_OK } else { EXIT_VERIFICATION },
        ));
    }

    let report = burnside::cokernel_report(a.d)?;
    let pass = report.matches_factorials && report.determinant == report.expected_determinant;
    let out = if a.json {
        json_out(&report)
    } else {
        let factors: Vec<String> = report
            .invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect();
        let target: Vec<String> = (1..=a.d).map(|i| format!("Z/{i}!")).collect();
        format!(
            "invariant factors: {}\ndeterminant: {}\nproduct of factorials: {}\ncoker = {}: {}\n",
            factors.join(" "),
            report.determinant,
            report.expected_determinant,
            target.join(" + "),
            if pass { "YES" } else { "NO" }
        )
    };
    Ok(Outcome::with_code(
        out,
        if pass { EXIT_OK } else { EXIT_VERIFICATION },
    ))
}

pub fn cmd_spec(a: &SpecArgs) -> Result<Outcome, Error> {
    let format = a.format();
    let out = match a.variant {
        Variant::Zariski => render_poset(
            &z_poset(a.d, &a.primes)?,
            "zariski",
            RenderConfig {
                format,
                rank_dir: RankDir::BottomToTop,
            },
        ),
        Variant::Balmer => {
            let t = b_truncation(a.d, &a.primes, a.hmax, !a.no_infinity)?;
            render_poset(
                t.poset(),
                "balmer",
                RenderConfig {
                    format,
                    rank_dir: RankDir::TopToBottom,
                },
            )
        }
        Variant::Hz => {
            let poset = match a.slice {
                Some(p) => hz_slice_poset(a.d, p)?,
                None => hz_poset(a.d, &a.primes)?,
            };
            render_poset(
                &poset,
                "hz",
                RenderConfig {
                    format,
                    rank_dir: RankDir::TopToBottom,
                },
            )
        }
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_delta(a: &DeltaArgs) -> Result<Outcome, Error> {
    let delta = combinat::delta_p(a.p, a.k, a.l)?;
    let mut out = format!("{delta}\n");
    let mut code = EXIT_OK;
    if a.chain {
        match combinat::shortest_partition_chain(a.p, a.k, a.l)? {
            None => out.push_str("chain: none\n"),
            Some(chain) => {
                let steps: Vec<String> = chain.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "chain: {}", steps.join(" -> "));
                for w in chain.windows(2) {
                    let witness = &combinat::ppp_enumerate(a.p, w[0], w[1])?[0];
                    let _ = writeln!(out, "  {} -> {}: {} = {witness}", w[0], w[1], w[0]);
                }
            }
        }
    }
    if a.brute {
        let brute = combinat::delta_p_brute(a.p, a.k, a.l)?;
        if brute == delta {
            out.push_str("brute: AGREE\n");
        } else {
            let _ = writeln!(out, "brute: {brute} DISAGREE");
            code = EXIT_VERIFICATION;
        }
    }
    Ok(Outcome::with_code(out, code))
}

pub fn cmd_smith(a: &SmithArgs) -> Result<Outcome, Error> {
    let holds = crate::balmer::smith_holds(a.d, a.p, a.k, a.l, a.n, a.h)?;
    let (x, y) = smith_points(a.p, a.k, a.l, a.n, a.h)?;
    debug_assert_eq!(holds, b_leq(&x, &y));
    let out = if holds {
        format!("HOLDS: {x} ⊆ {y}\n")
    } else {
        format!("FAILS: {x} ⊄ {y}\n")
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_ideals(a: &IdealsArgs, budget: u64) -> Result<Outcome, Error> {
    if a.count {
        let n = classify::count_p_admissible(a.d, a.p, a.hmax, budget)?;
        let out = if a.csv {
            format!("d,p,hmax,count\n{},{},{},{n}\n", a.d, a.p, a.hmax)
        } else if a.json {
            json_out(&json!({"d": a.d, "p": a.p, "hmax": a.hmax, "count": n}))
        } else {
            format!("{n}\n")
        };
        return Ok(Outcome::ok(out));
    }
    let functions = classify::enumerate_p_admissible_with_budget(a.d, a.p, a.hmax, budget)?;
    let out = if a.json {
        let rows: Vec<&[NatInf]> = functions.iter().map(|f| f.values()).collect();
        json_out(&rows)
    } else if a.csv {
        let header: Vec<String> = (1..=a.d).map(|k| format!("f{k}")).collect();
        let mut out = format!("{}\n", header.join(","));
        for f in &functions {
            let row: Vec<String> = f.values().iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    } else {
        functions.iter().map(|f| format!("{f}\n")).collect()
    };
    Ok(Outcome::ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &str) -> String {
        let argv = std::iter::once("excisive").chain(args.split_whitespace());
        let out = run(argv, ENUM_BUDGET);
        assert_eq!(out.code, 0, "{args}: {}", out.stderr);
        out.stdout
    }

    fn code(args: &str) -> i32 {
        run(
            std::iter::once("excisive").chain(args.split_whitespace()),
            ENUM_BUDGET,
        )
        .code
    }

    #[test]
    fn mu_examples() {
        assert_eq!(run_ok("mu 2 2 3"), "4\n");
        assert_eq!(run_ok("mu 1 1 1"), "1\n");
        assert_eq!(
            run_ok("mu 3 3 5 --all"),
            "brute: 90\nincl-excl: 90\nstirling: 90\nAGREE\n"
        );
        assert_eq!(code("mu 5 5 7 --method brute"), EXIT_USAGE);
    }

    #[test]
    fn ring_examples() {
        assert!(run_ok("ring 3 --table")
            .lines()
            .any(|l| l == "x2*x2 = 2 x2 + 4 x3"));
        assert!(!run_ok("ring 1 --check").contains("FAIL"));
        assert!(run_ok("ring 5 --cokernel").ends_with(": YES\n"));
        assert_eq!(code("ring 3"), EXIT_USAGE);
        assert_eq!(code("ring 99 --table"), EXIT_USAGE);
    }

    #[test]
    fn spec_examples() {
        let json: serde_json::Value =
            serde_json::from_str(&run_ok("spec zariski -d 3 -p 2,3,5 --json")).unwrap();
        assert_eq!(json["points"].as_array().unwrap().len(), 3 + 6);
        let dot = run_ok("spec balmer -d 4 -p 2 -H 4 --dot");
        assert!(dot.starts_with("digraph balmer {"));
        assert!(run_ok("spec hz -d 3 -p 2,3 --dot").contains("hz(3|0)"));
        assert_eq!(code("spec balmer -d 3 -p 4"), EXIT_USAGE);
    }

    #[test]
    fn delta_smith_ideals() {
        assert_eq!(run_ok("delta 2 3 1"), "2\n");
        assert_eq!(run_ok("delta 5 7 4"), "inf\n");
        assert!(run_ok("delta 2 3 1 --chain --brute").contains("brute: AGREE"));
        assert!(run_ok("smith 4 2 4 2 3 2").starts_with("HOLDS"));
        assert!(run_ok("smith 3 2 3 1 3 2").starts_with("FAILS"));
        assert_eq!(run_ok("ideals 1 2 3 --count"), "5\n");
        assert_eq!(run_ok("ideals 2 2 1 --list").lines().count(), 7);
        assert_eq!(
            run(["excisive", "ideals", "3", "2", "3", "--count"], 10).code,
            EXIT_USAGE
        );
    }
}
