mod inputs;
mod report;

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use monideal::closure::{self, NormalityOptions};
use monideal::decomp::{self, AssProfile, PowerAss};
use monideal::graphs::{di_ideal, minimal_dominating_sets, ni_ideal, partial_cover_ideal};
use monideal::monomial::default_names;
use monideal::properties::{self, DEFAULT_BOUND};
use monideal::{MonomialIdeal, PrimeSupport};

use report::{Bounds, InputDigest, RunReport, Timing, Verdict};

const FAMILY_HELP: &str = "\
Graph families:
  K<r>,<s>                complete bipartite, e.g. K2,3
  C<n>                    cycle, e.g. C5
  wheel:<h>,<rim>,[v,..]  wheel with hub paths of length h, the given rim
                          length, and radial paths at the 1-indexed rim
                          positions, e.g. wheel:1,5,[1,2,4]

Check targets:
  <family>-ni             closed neighborhood ideal of the family graph
  <family>-di             dominating ideal of the family graph
  <path>                  ideal text file (`check criterion` reads JSON instead)

Exit codes:
  0 verified or produced, 1 refuted with witness, 2 inapplicable,
  3 bound or timeout exhausted with partial evidence, 4 usage or input error.";

#[derive(Parser)]
#[command(name = "monideal", version, after_help = FAMILY_HELP)]
#[command(about = "Exact algebra on monomial ideals of graphs: build them, power them, and check normality-type properties.")]
struct Cli {
    /// Print the full JSON report on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,

    /// Abort long scans after this many seconds, keeping partial evidence.
    #[arg(long, global = true, value_name = "SEC")]
    timeout_sec: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra on ideals stored as text files.
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
    },
    /// Build an ideal (or the dominating sets) of a graph family or JSON file.
    Graph {
        /// Family shorthand or a graph JSON file path.
        target: String,
        /// Which artifact to emit.
        #[arg(long, value_enum)]
        out: GraphOut,
        /// Cover size for `--out jt`.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Check a property of an ideal and exit 0 (holds) / 1 (refuted).
    Check {
        #[arg(value_enum)]
        property: Property,
        /// Family ideal (`K2,3-ni`), ideal file, or construction JSON.
        target: String,
        /// Largest power examined; defaults to the full decision bound for
        /// `normal` and to 4 for the power scans.
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Subcommand)]
enum IdealOp {
    /// Smallest ideal containing both inputs.
    Sum(BinArgs),
    /// Product of the two inputs.
    Product(BinArgs),
    /// Intersection of the two inputs.
    Intersect(BinArgs),
    /// Colon ideal (I : J).
    Colon(BinArgs),
    /// Power I^t.
    Power {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Alexander dual of a squarefree ideal.
    Dual(UnArgs),
    /// Integral closure.
    Closure(UnArgs),
}

#[derive(Args)]
struct BinArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_name = "FILE")]
    with: PathBuf,
}

#[derive(Args)]
struct UnArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphOut {
    /// Closed neighborhood ideal.
    Ni,
    /// Dominating ideal, with the dual-path cross-check.
    Di,
    /// Ideal of t-fold closed-neighborhood covers.
    Jt,
    /// Minimal dominating sets as vertex lists.
    Domsets,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Normal,
    IntegrallyClosed,
    Ass,
    Persistence,
    StrongPersistence,
    Ssp,
    Ntf,
    Nntf,
    Criterion,
}

/// What a handler produces besides the verdict: digests for the report and
/// variable names for text rendering.
struct Outcome {
    verdict: Verdict,
    inputs: Vec<InputDigest>,
    names: Vec<String>,
    bound: Option<usize>,
}

fn main() {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("MONIDEAL_THREADS") {
        if let Ok(k) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    let command_echo: String =
        std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let deadline = cli.timeout_sec.map(|s| Instant::now() + Duration::from_secs(s));

    let started = Instant::now();
    let mut parse_done = None;
    let outcome = dispatch(&cli, deadline, &mut parse_done);
    let outcome = match outcome {
        Ok(o) => o,
        Err(err) => {
            // A non-squarefree input to a squarefree-only operation is a
            // hypothesis failure, not a usage error: report it as such.
            if matches!(
                err.downcast_ref::<monideal::Error>(),
                Some(monideal::Error::NotSquarefree { .. })
            ) {
                Outcome {
                    verdict: Verdict::Inapplicable { reason: format!("{err:#}") },
                    inputs: Vec::new(),
                    names: Vec::new(),
                    bound: None,
                }
            } else {
                eprintln!("error: {err:#}");
                std::process::exit(4);
            }
        }
    };

    let parsed_at = parse_done.unwrap_or(started);
    let run = RunReport {
        schema: 1,
        command: command_echo,
        inputs: outcome.inputs,
        bounds: Bounds { bound: outcome.bound, timeout_sec: cli.timeout_sec },
        exit_code: report::exit_code(&outcome.verdict),
        timing: Timing {
            parse_ms: parsed_at.duration_since(started).as_millis(),
            compute_ms: parsed_at.elapsed().as_millis(),
        },
        verdict: outcome.verdict,
    };

    let emit = || serde_json::to_string_pretty(&run).expect("report serializes");
    if cli.json {
        println!("{}", emit());
    } else {
        print!("{}", report::render_text(&run.verdict, &outcome.names));
    }
    if let Some(path) = &cli.report {
        if let Err(err) = fs::write(path, emit() + "\n") {
            eprintln!("error: writing report to {}: {err}", path.display());
            std::process::exit(4);
        }
    }
    std::process::exit(run.exit_code);
}

fn dispatch(
    cli: &Cli,
    deadline: Option<Instant>,
    parse_done: &mut Option<Instant>,
) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Ideal { op } => cmd_ideal(op, parse_done),
        Command::Graph { target, out, t } => cmd_graph(target, *out, *t, parse_done),
        Command::Check { property, target, bound } => {
            cmd_check(*property, target, *bound, deadline, parse_done)
        }
    }
}

fn ideal_verdict(ideal: MonomialIdeal, names: &[String], note: Option<String>) -> Verdict {
    Verdict::Ideal {
        vars: names.to_vec(),
        rendered: ideal.gens().iter().map(|g| g.render(names)).collect(),
        ideal,
        note,
    }
}

fn cmd_ideal(op: &IdealOp, parse_done: &mut Option<Instant>) -> anyhow::Result<Outcome> {
    let load_pair = |a: &PathBuf, b: &PathBuf| -> anyhow::Result<_> {
        let (lhs, names, d1) = inputs::load_ideal_file(a)?;
        let (rhs, _, d2) = inputs::load_ideal_file(b)?;
        if lhs.num_vars() != rhs.num_vars() {
            bail!(monideal::Error::DimensionMismatch {
                expected: lhs.num_vars(),
                found: rhs.num_vars(),
            });
        }
        Ok((lhs, rhs, names, vec![d1, d2]))
    };
    let (result, names, digests, note) = match op {
        IdealOp::Sum(args) => {
            let (a, b, names, ds) = load_pair(&args.input, &args.with)?;
            *parse_done = Some(Instant::now());
            (a.sum(&b), names, ds, None)
        }
        IdealOp::Product(args) => {
            let (a, b, names, ds) = load_pair(&args.input, &args.with)?;
            *parse_done = Some(Instant::now());
            (a.product(&b), names, ds, None)
        }
        IdealOp::Intersect(args) => {
            let (a, b, names, ds) = load_pair(&args.input, &args.with)?;
            *parse_done = Some(Instant::now());
            (a.intersect(&b), names, ds, None)
        }
        IdealOp::Colon(args) => {
            let (a, b, names, ds) = load_pair(&args.input, &args.with)?;
            *parse_done = Some(Instant::now());
            (a.colon_ideal(&b)?, names, ds, None)
        }
        IdealOp::Power { input, t } => {
            let (a, names, d) = inputs::load_ideal_file(input)?;
            *parse_done = Some(Instant::now());
            (a.power(*t), names, vec![d], None)
        }
        IdealOp::Dual(args) => {
            let (a, names, d) = inputs::load_ideal_file(&args.input)?;
            *parse_done = Some(Instant::now());
            (a.alexander_dual()?, names, vec![d], None)
        }
        IdealOp::Closure(args) => {
            let (a, names, d) = inputs::load_ideal_file(&args.input)?;
            *parse_done = Some(Instant::now());
            let closure = closure::integral_closure(&a)?;
            let added = closure.gens().iter().filter(|g| !a.contains(g)).count();
            let note = if added == 0 {
                Some("input is integrally closed".to_string())
            } else {
                Some(format!("closure adds {added} generator(s) outside the input"))
            };
            (closure, names, vec![d], note)
        }
    };
    Ok(Outcome {
        verdict: ideal_verdict(result, &names, note),
        inputs: digests,
        names,
        bound: None,
    })
}

fn cmd_graph(
    target: &str,
    out: GraphOut,
    t: Option<usize>,
    parse_done: &mut Option<Instant>,
) -> anyhow::Result<Outcome> {
    let (g, digest) = inputs::load_graph(target)?;
    *parse_done = Some(Instant::now());
    let names = default_names(g.num_vertices());
    let verdict = match out {
        GraphOut::Ni => ideal_verdict(ni_ideal(&g), &names, None),
        GraphOut::Di => ideal_verdict(
            di_ideal(&g)?,
            &names,
            Some("dual-path cross-check: transversal enumeration and Alexander dual agree".into()),
        ),
        GraphOut::Jt => {
            let t = t.context("--t is required for --out jt")?;
            ideal_verdict(partial_cover_ideal(&g, t)?, &names, None)
        }
        GraphOut::Domsets => {
            let sets: Vec<Vec<usize>> = minimal_dominating_sets(&g)?
                .into_iter()
                .map(|s| s.into_iter().map(|v| v + 1).collect())
                .collect();
            Verdict::DominatingSets { count: sets.len(), sets }
        }
    };
    Ok(Outcome { verdict, inputs: vec![digest], names, bound: None })
}

fn cmd_check(
    property: Property,
    target: &str,
    bound: Option<usize>,
    deadline: Option<Instant>,
    parse_done: &mut Option<Instant>,
) -> anyhow::Result<Outcome> {
    if let Property::Criterion = property {
        let (criterion, digest) = inputs::load_criterion(target)?;
        *parse_done = Some(Instant::now());
        let opts = NormalityOptions { bound, deadline };
        let report = properties::verify_criterion(&criterion, &opts)?;
        let names = report
            .constructed
            .as_ref()
            .map_or_else(Vec::new, |l| default_names(l.num_vars()));
        return Ok(Outcome {
            verdict: Verdict::Criterion(report),
            inputs: vec![digest],
            names,
            bound,
        });
    }

    let (ideal, names, digest) = inputs::load_ideal(target)?;
    *parse_done = Some(Instant::now());
    let (verdict, bound_used) = match property {
        Property::Normal => {
            let report = closure::is_normal(&ideal, &NormalityOptions { bound, deadline })?;
            (Verdict::Normality(report), bound)
        }
        Property::IntegrallyClosed => {
            let (closed, witness) = closure::is_integrally_closed(&ideal)?;
            (Verdict::Closedness { integrally_closed: closed, witness }, None)
        }
        Property::Ass => {
            let bound = bound.unwrap_or(DEFAULT_BOUND);
            (ass_scan(&ideal, bound, deadline)?, Some(bound))
        }
        Property::Persistence => {
            let bound = bound.unwrap_or(DEFAULT_BOUND);
            (Verdict::Property(properties::persistence(&ideal, bound)?), Some(bound))
        }
        Property::StrongPersistence => {
            let bound = bound.unwrap_or(DEFAULT_BOUND);
            (Verdict::Property(properties::strong_persistence(&ideal, bound)?), Some(bound))
        }
        Property::Ssp => {
            let bound = bound.unwrap_or(DEFAULT_BOUND);
            (
                Verdict::Property(properties::symbolic_strong_persistence(&ideal, bound)?),
                Some(bound),
            )
        }
        Property::Ntf => {
            let bound = bound.unwrap_or(DEFAULT_BOUND);
            (
                Verdict::Property(properties::normally_torsion_free(&ideal, bound)?),
                Some(bound),
            )
        }
        Property::Nntf => {
            let bound = bound.unwrap_or(DEFAULT_BOUND);
            (Verdict::Property(properties::nearly_ntf(&ideal, bound)?), Some(bound))
        }
        Property::Criterion => unreachable!("handled above"),
    };
    Ok(Outcome { verdict, inputs: vec![digest], names, bound: bound_used })
}

/// Per-power associated-prime scan with a cooperative deadline between powers;
/// matches the library profile whenever it runs to completion.
fn ass_scan(
    ideal: &MonomialIdeal,
    bound: usize,
    deadline: Option<Instant>,
) -> anyhow::Result<Verdict> {
    let mut per_power = Vec::with_capacity(bound);
    let mut truncated = false;
    let mut power = MonomialIdeal::unit(ideal.num_vars());
    for k in 1..=bound {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            truncated = true;
            break;
        }
        power = power.product(ideal);
        let primes: Vec<PrimeSupport> = decomp::ass_supports(&power)?.into_iter().collect();
        per_power.push(PowerAss {
            k,
            depth_zero: primes.iter().any(|p| p.is_maximal(ideal.num_vars())),
            primes,
        });
    }
    let profile = AssProfile {
        bound,
        per_power,
        min_primes: decomp::minimal_primes(ideal)?.into_iter().collect(),
    };
    Ok(Verdict::AssScan { profile, truncated })
}
