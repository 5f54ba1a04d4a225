//! Command-line front for the relation library: arithmetic, enumeration,
//! centralizers, witness construction, and audit suites.
//!
//! Exit codes: 0 success / verified, 1 failed verification or audit,
//! 2 malformed input or infeasible query.

use clap::{Parser, Subcommand};
use finrel::{
    centralizer_window, double_centralizer_window, enumerate_filtered, format_relation,
    format_relation_human, isolation_witness, neighborhood_witness,
    parse_relation, run_audit, verify_isolation, verify_neighborhood, AuditSpec, AuditSuite,
    CentralizerQuery, Error, Family, FiniteRelation, FreshPoints, NeighborhoodWitness, Point,
    PointSet, SupportFilter, Verdict,
};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "finrel")]
#[command(about = "Arithmetic, centralizers, and topology audits for finitely supported relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose relations left to right
    Compose {
        /// Relations as JSON or perm shorthand; stdin lines when omitted
        rels: Vec<String>,

        /// Print machine JSON instead of cycle notation for permutations
        #[arg(long)]
        json: bool,
    },
    /// Converse relation (flip every pair)
    Inverse {
        rel: String,

        #[arg(long)]
        json: bool,
    },
    /// Print the support of a relation
    Support {
        rel: String,

        /// Print a JSON array
        #[arg(long)]
        json: bool,
    },
    /// Whether two relations commute
    Commutes { a: String, b: String },
    /// List every family member supported inside a window
    Enum {
        /// Family: frel | fsym | ffun | gen:<path>
        #[arg(long, default_value = "frel")]
        family: String,

        /// Window as a..b (inclusive) or a comma list
        #[arg(long)]
        window: String,

        /// Keep only members with at most this many support points
        #[arg(long)]
        supp_le: Option<usize>,

        /// Keep only members with exactly this many support points
        #[arg(long)]
        supp_eq: Option<usize>,

        #[arg(long)]
        json: bool,

        /// Lift the per-family window guardrail
        #[arg(long)]
        cap_override: bool,
    },
    /// Family members commuting with every target
    Centralizer {
        /// Target relations; with --stdin they come one per line instead
        targets: Vec<String>,

        #[arg(long, default_value = "frel")]
        family: String,

        #[arg(long)]
        window: String,

        /// Compute the windowed double centralizer instead
        #[arg(long)]
        double: bool,

        /// Read newline-delimited targets from stdin
        #[arg(long)]
        stdin: bool,

        #[arg(long)]
        json: bool,

        #[arg(long)]
        cap_override: bool,
    },
    /// A family element moving x, supported away from the avoided points
    WitnessProp2 {
        /// The point the witness must move
        x: Point,

        /// Points the witness support must avoid, as a..b or a comma list
        #[arg(long, default_value = "")]
        avoid: String,

        #[arg(long, default_value = "frel")]
        family: String,

        /// First candidate fresh point; default is 1 + the largest input point
        #[arg(long)]
        fresh_from: Option<Point>,

        #[arg(long)]
        json: bool,
    },
    /// Neighborhood witness whose small-support members envelop the center
    WitnessNeighborhood {
        /// Center relation
        rel: String,

        /// Support bound the verification slice will use
        #[arg(long)]
        n: usize,

        #[arg(long, default_value = "frel")]
        family: String,

        /// Search window for families without constructive witnesses
        #[arg(long)]
        window: Option<String>,

        #[arg(long)]
        fresh_from: Option<Point>,

        /// One line of counts instead of the witness JSON
        #[arg(long)]
        summary: bool,
    },
    /// Isolation witness for the center within its exact-support slice
    WitnessIsolate {
        /// Center relation
        rel: String,

        #[arg(long, default_value = "frel")]
        family: String,

        /// Search window for families without constructive witnesses
        #[arg(long)]
        window: Option<String>,

        #[arg(long)]
        fresh_from: Option<Point>,

        #[arg(long)]
        summary: bool,
    },
    /// Check a witness against a window: enveloping or isolation
    Verify {
        /// Witness JSON file; stdin when omitted
        witness: Option<String>,

        #[arg(long, default_value = "frel")]
        family: String,

        #[arg(long)]
        window: String,

        /// Check isolation in the exact-support slice instead of enveloping
        #[arg(long)]
        isolation: bool,

        #[arg(long)]
        json: bool,
    },
    /// Run a named audit suite
    Audit {
        /// axioms | counting | prop2 | fdc | theorem_main | oracle
        #[arg(long)]
        suite: String,

        #[arg(long, default_value = "frel")]
        family: String,

        #[arg(long)]
        window: String,

        /// Support bound for the theorem_main suite
        #[arg(long)]
        n: Option<usize>,

        /// Seed for sampled associativity triples
        #[arg(long)]
        seed: Option<u64>,

        /// Target relation for the fdc suite; repeatable
        #[arg(long)]
        target: Vec<String>,

        #[arg(long)]
        json: bool,

        /// Elide failure records from the report
        #[arg(long)]
        summary: bool,

        #[arg(long)]
        cap_override: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(passed) => {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Points named "a..b" (inclusive) or "a,b,c"; empty means the empty set.
fn parse_window(text: &str) -> Result<PointSet, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(PointSet::new());
    }
    let invalid = |t: &str| Error::InvalidQuery(format!("bad window \"{t}\""));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: Point = lo.trim().parse().map_err(|_| invalid(text))?;
        let hi: Point = hi.trim().parse().map_err(|_| invalid(text))?;
        if lo > hi {
            return Err(invalid(text));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|p| p.trim().parse::<Point>().map_err(|_| invalid(text)))
        .collect()
}

fn parse_family(spec: &str, cap_override: bool) -> Result<Family, Error> {
    Ok(finrel::parse_family_spec(spec)?.with_cap_override(cap_override))
}

fn stdin_relations() -> Result<Vec<FiniteRelation>, Error> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text)?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_relation)
        .collect()
}

fn print_relation(f: &FiniteRelation, json: bool) {
    if json {
        println!("{}", format_relation(f));
    } else {
        println!("{}", format_relation_human(f));
    }
}

/// 1 + the largest point in sight, or an explicit start.
fn fresh_allocator(from: Option<Point>, mentioned: &PointSet) -> FreshPoints {
    match from {
        Some(p) => FreshPoints::starting_at(p),
        None => FreshPoints::beyond(mentioned.iter()),
    }
}

/// Search window for witness construction: only families without a
/// constructive route need one.
fn search_window(family: &Family, window: &Option<String>) -> Result<Option<PointSet>, Error> {
    match window {
        Some(w) => Ok(Some(parse_window(w)?)),
        None if family.witness_capable() => Ok(None),
        None => Err(Error::InvalidQuery(format!(
            "family {} needs --window to search for witnesses",
            family.name()
        ))),
    }
}

fn print_witness(w: &NeighborhoodWitness, summary: bool) -> Result<(), Error> {
    if summary {
        println!(
            "center={} n={} constraints={} exclusions={}",
            format_relation_human(&w.center),
            w.n,
            w.commute_constraints.len(),
            w.exclusions.len()
        );
    } else {
        println!("{}", serde_json::to_string(w)?);
    }
    Ok(())
}

fn run(cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::Compose { rels, json } => {
            let rels = if rels.is_empty() {
                stdin_relations()?
            } else {
                rels.iter().map(|r| parse_relation(r)).collect::<Result<_, _>>()?
            };
            let Some((first, rest)) = rels.split_first() else {
                return Err(Error::InvalidQuery("nothing to compose".into()));
            };
            let product = rest.iter().fold(first.clone(), |acc, r| finrel::compose(&acc, r));
            print_relation(&product, json);
            Ok(true)
        }
        Command::Inverse { rel, json } => {
            print_relation(&parse_relation(&rel)?.inverse(), json);
            Ok(true)
        }
        Command::Support { rel, json } => {
            let f = parse_relation(&rel)?;
            if json {
                println!("{}", serde_json::to_string(f.support())?);
            } else {
                println!("{}", f.support());
            }
            Ok(true)
        }
        Command::Commutes { a, b } => {
            let a = parse_relation(&a)?;
            let b = parse_relation(&b)?;
            println!("{}", finrel::commutes(&a, &b));
            Ok(true)
        }
        Command::Enum { family, window, supp_le, supp_eq, json, cap_override } => {
            let family = parse_family(&family, cap_override)?;
            let window = parse_window(&window)?;
            let filter = match (supp_le, supp_eq) {
                (None, None) => SupportFilter::All,
                (Some(n), None) => SupportFilter::SuppLe(n),
                (None, Some(n)) => SupportFilter::SuppEq(n),
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidQuery(
                        "--supp-le and --supp-eq are mutually exclusive".into(),
                    ))
                }
            };
            for f in enumerate_filtered(&family, &window, filter)? {
                print_relation(&f, json);
            }
            Ok(true)
        }
        Command::Centralizer { targets, family, window, double, stdin, json, cap_override } => {
            let family = parse_family(&family, cap_override)?;
            let targets = if stdin {
                stdin_relations()?
            } else {
                targets.iter().map(|t| parse_relation(t)).collect::<Result<_, _>>()?
            };
            let query =
                CentralizerQuery { family: &family, window: parse_window(&window)?, targets };
            let members = if double {
                double_centralizer_window(&query)?
            } else {
                centralizer_window(&query)?
            };
            for f in members {
                print_relation(&f, json);
            }
            Ok(true)
        }
        Command::WitnessProp2 { x, avoid, family, fresh_from, json } => {
            let family = parse_family(&family, false)?;
            let avoid = parse_window(&avoid)?;
            let mut fresh = fresh_allocator(fresh_from, &avoid.with_point(x));
            let g = family.separating_witness(x, &avoid, &mut fresh)?;
            print_relation(&g, json);
            Ok(true)
        }
        Command::WitnessNeighborhood { rel, n, family, window, fresh_from, summary } => {
            let family = parse_family(&family, false)?;
            let f = parse_relation(&rel)?;
            let search = search_window(&family, &window)?;
            let mut fresh = fresh_allocator(fresh_from, f.support());
            let w = neighborhood_witness(&family, &f, n, &mut fresh, search.as_ref())?;
            print_witness(&w, summary)?;
            Ok(true)
        }
        Command::WitnessIsolate { rel, family, window, fresh_from, summary } => {
            let family = parse_family(&family, false)?;
            let f = parse_relation(&rel)?;
            let search = search_window(&family, &window)?;
            let mut fresh = fresh_allocator(fresh_from, f.support());
            let w = isolation_witness(&family, &f, &mut fresh, search.as_ref())?;
            print_witness(&w, summary)?;
            Ok(true)
        }
        Command::Verify { witness, family, window, isolation, json } => {
            let family = parse_family(&family, false)?;
            let window = parse_window(&window)?;
            let text = match witness {
                Some(path) => std::fs::read_to_string(path)?,
                None => {
                    let mut text = String::new();
                    std::io::stdin().read_to_string(&mut text)?;
                    text
                }
            };
            let w: NeighborhoodWitness = serde_json::from_str(&text)?;
            let verdict = if isolation {
                let report = verify_isolation(&family, &w, &window)?;
                if json {
                    println!("{}", serde_json::to_string(&report)?);
                } else {
                    println!(
                        "{}: enumerated={} admitted={}",
                        report.verdict, report.enumerated, report.admitted
                    );
                }
                report.verdict
            } else {
                let report = verify_neighborhood(&family, &w, &window)?;
                if json {
                    println!("{}", serde_json::to_string(&report)?);
                } else {
                    println!(
                        "{}: enumerated={} admitted={}",
                        report.verdict, report.enumerated, report.admitted
                    );
                }
                report.verdict
            };
            Ok(verdict == Verdict::Pass)
        }
        Command::Audit { suite, family, window, n, seed, target, json, summary, cap_override } => {
            let mut spec =
                AuditSpec::new(suite.parse::<AuditSuite>()?, family, parse_window(&window)?);
            spec.n = n;
            spec.seed = seed;
            spec.cap_override = cap_override;
            if !target.is_empty() {
                spec.targets =
                    Some(target.iter().map(|t| parse_relation(t)).collect::<Result<_, _>>()?);
            }
            let mut report = run_audit(&spec)?;
            let failed = report.failures.len();
            if summary {
                report.failures.clear();
            }
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                println!(
                    "{} {} window={}: {} (checked {}, failures {}, {} ms)",
                    report.suite,
                    report.family,
                    report.window,
                    report.verdict,
                    report.checked,
                    failed,
                    report.wall_time_ms
                );
            }
            Ok(report.verdict == Verdict::Pass)
        }
    }
}
