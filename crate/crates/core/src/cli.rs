//! Command-line front end. [`run`] takes the argument list and returns the
//! exit code with the captured output, so the binary is a thin wrapper and
//! tests can drive every subcommand in-process.

use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::constraints::{
    parse_instance, parse_solution, CaseKind, LengthConstraint, ProblemInstance, SolutionFile,
    Verdict,
};
use crate::error::{Error, Result};
use crate::gadgets::or_compose_many;
use crate::generate::{gen_planted, gen_random, PlantedShape, TerminalRule};
use crate::graph::{GraphView, Path};
use crate::oracle::{oracle_solve, OracleLimits};
use crate::partition::{solve_detailed, Mode, Outcome, SolveConfig};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "edp",
    version,
    about = "Two edge-disjoint paths under length constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random-partition solver (or universal-family mode).
    Solve(SolveArgs),
    /// Exhaustive solver for small instances; handles every case.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = 14)]
        max_vertices: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_paths: u64,
    },
    /// Check a solution file against an instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Write a generated instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// OR-compose instances that share their constraints.
    Compose {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        /// Pad with no-instances up to a power of two.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        pad: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the key=value report; stdout after the instance if absent.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Time the solver on planted instances; prints TSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "random")]
    mode: Mode,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Uniform random graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "distinct")]
        rule: TerminalRule,
        /// First constraint, e.g. "le 2", "eq 3", "ge 4" or "inf".
        #[arg(long, default_value = "le 2")]
        c1: LengthConstraint,
        #[arg(long, default_value = "le 2")]
        c2: LengthConstraint,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Instance with an embedded solution.
    Planted {
        #[arg(long, default_value = "short-short")]
        case: CaseKind,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long, default_value_t = 0)]
        extra_n: usize,
        #[arg(long, default_value_t = 0)]
        extra_m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the planted solution.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated cases; defaults to every supported case.
    #[arg(long, value_delimiter = ',')]
    cases: Vec<CaseKind>,
    /// Comma-separated decoy edge counts.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    k1: usize,
    #[arg(long, default_value_t = 2)]
    k2: usize,
    #[arg(long, default_value_t = 1e-6)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Exit code plus what the binary would print to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(code: i32, stdout: String) -> CliOutput {
        CliOutput {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

fn read(path: &FsPath) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn read_instance(path: &FsPath) -> Result<ProblemInstance> {
    Ok(parse_instance(&read(path)?)?)
}

/// Writes `text` to `path`, or returns it for stdout when no path is given.
fn emit(path: Option<&FsPath>, text: String) -> Result<String> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", p.display()),
                ))
            })?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn answer(found: Option<&crate::constraints::Solution>) -> CliOutput {
    match found {
        Some(sol) => CliOutput::ok(EXIT_YES, format!("YES\n{}", sol.to_text())),
        None => CliOutput::ok(EXIT_NO, "NO\n".into()),
    }
}

fn run_solve(args: &SolveArgs) -> Result<CliOutput> {
    if !(args.delta > 0.0 && args.delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "--delta must lie in (0, 1), got {}",
            args.delta
        )));
    }
    let inst = read_instance(&args.instance)?;
    let config = SolveConfig {
        delta: args.delta,
        seed: args.seed,
        mode: args.mode,
        threads: args.threads.max(1),
        ..SolveConfig::default()
    };
    Ok(match solve_detailed(&inst, &config)?.outcome {
        Outcome::Found(sol) => answer(Some(&sol)),
        Outcome::NotFound => answer(None),
        Outcome::Unsupported(_) => CliOutput::ok(
            EXIT_UNSUPPORTED,
            "UNSUPPORTED: open case; use `oracle`\n".into(),
        ),
    })
}

fn run_verify(instance: &FsPath, solution: &FsPath) -> Result<CliOutput> {
    let inst = read_instance(instance)?;
    let (v1, v2) = match parse_solution(&read(solution)?)? {
        SolutionFile::Paths(a, b) => (a, b),
        SolutionFile::No => {
            return Err(Error::InvalidArgument(
                "the solution file says NO; there are no paths to verify".into(),
            ))
        }
    };
    let p1 = Path::new(&inst.graph, v1)?;
    let p2 = Path::new(&inst.graph, v2)?;
    Ok(
        match crate::constraints::verify_solution(&inst, &p1, &p2)? {
            Verdict::Valid => CliOutput::ok(EXIT_YES, "VALID\n".into()),
            Verdict::Invalid(violations) => {
                let mut out = String::from("INVALID\n");
                for v in violations {
                    let _ = writeln!(out, "{v}");
                }
                CliOutput::ok(EXIT_NO, out)
            }
        },
    )
}

fn run_gen(cmd: &GenCommand) -> Result<CliOutput> {
    match cmd {
        GenCommand::Random {
            n,
            m,
            rule,
            c1,
            c2,
            seed,
            output,
        } => {
            let inst = gen_random(*n, *m, *rule, *c1, *c2, *seed)?;
            Ok(CliOutput::ok(0, emit(output.as_deref(), inst.to_text())?))
        }
        GenCommand::Planted {
            case,
            k1,
            k2,
            extra_n,
            extra_m,
            seed,
            output,
            certificate,
        } => {
            let shape = PlantedShape {
                case: *case,
                k1: *k1,
                k2: *k2,
                extra_n: *extra_n,
                extra_m: *extra_m,
            };
            let (inst, sol) = gen_planted(shape, *seed)?;
            let mut stdout = emit(output.as_deref(), inst.to_text())?;
            stdout.push_str(&emit(certificate.as_deref(), sol.to_text())?);
            Ok(CliOutput::ok(0, stdout))
        }
    }
}

fn run_compose(
    instances: &[PathBuf],
    pad: bool,
    output: Option<&FsPath>,
    report: Option<&FsPath>,
) -> Result<CliOutput> {
    let parsed = instances
        .iter()
        .map(|p| read_instance(p))
        .collect::<Result<Vec<_>>>()?;
    let (inst, rep) = or_compose_many(&parsed, pad)?;
    let mut stdout = emit(output, inst.to_text())?;
    stdout.push_str(&emit(report, rep.to_text())?);
    Ok(CliOutput::ok(0, stdout))
}

fn run_bench(args: &BenchArgs) -> Result<CliOutput> {
    let cases: Vec<CaseKind> = if args.cases.is_empty() {
        CaseKind::ALL
            .into_iter()
            .filter(|c| c.is_supported())
            .collect()
    } else {
        args.cases.clone()
    };
    let mut out = String::from("case\tn\tm\tk1\tk2\ttrials\twall_ms\tanswer\n");
    for case in cases {
        for &size in &args.sizes {
            let shape = PlantedShape {
                case,
                k1: args.k1,
                k2: args.k2,
                extra_n: (size / 4).max(8),
                extra_m: size,
            };
            let (inst, _) = gen_planted(shape, args.seed)?;
            let config = SolveConfig {
                delta: args.delta,
                seed: args.seed,
                ..SolveConfig::default()
            };
            let start = Instant::now();
            let report = solve_detailed(&inst, &config)?;
            let wall = start.elapsed().as_secs_f64() * 1e3;
            let answer = match report.outcome {
                Outcome::Found(_) => "yes",
                Outcome::NotFound => "no",
                Outcome::Unsupported(_) => "unsupported",
            };
            let _ = writeln!(
                out,
                "{case}\t{}\t{}\t{}\t{}\t{}\t{wall:.1}\t{answer}",
                inst.graph.vertex_count(),
                inst.graph.edge_count(),
                args.k1,
                args.k2,
                report.trials_run,
            );
        }
    }
    Ok(CliOutput::ok(0, out))
}

fn dispatch(cli: Cli) -> Result<CliOutput> {
    match cli.command {
        Command::Solve(args) => run_solve(&args),
        Command::Oracle {
            instance,
            max_vertices,
            max_paths,
        } => {
            let inst = read_instance(&instance)?;
            let found = oracle_solve(
                &inst,
                OracleLimits {
                    max_vertices,
                    max_paths,
                },
            )?;
            Ok(answer(found.as_ref()))
        }
        Command::Verify { instance, solution } => run_verify(&instance, &solution),
        Command::Gen(cmd) => run_gen(&cmd),
        Command::Compose {
            instances,
            pad,
            output,
            report,
        } => run_compose(&instances, pad, output.as_deref(), report.as_deref()),
        Command::Bench(args) => run_bench(&args),
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput::ok(0, text)
            };
        }
    };
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => CliOutput {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    const K4_SHORT: &str =
        "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\nterminals 0 1 2 3\nc1 le 2\nc2 le 2\n";

    #[test]
    fn solve_and_verify_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let inst = write(&dir, "k4.txt", K4_SHORT);
        let out = run(["edp", "solve", &inst]);
        assert_eq!(out.code, EXIT_YES, "{out:?}");
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "YES");
        let sol = write(&dir, "sol.txt", &format!("{}\n{}\n", lines[1], lines[2]));
        let check = run(["edp", "verify", &inst, &sol]);
        assert_eq!((check.code, check.stdout.as_str()), (EXIT_YES, "VALID\n"));
        assert_eq!(run(["edp", "solve", &inst]), out);
    }

    #[test]
    fn unsupported_and_invalid() {
        let dir = tempfile::tempdir().unwrap();
        let inst = write(
            &dir,
            "ll.txt",
            &K4_SHORT.replace("c1 le 2\nc2 le 2", "c1 ge 2\nc2 ge 2"),
        );
        let out = run(["edp", "solve", &inst]);
        assert_eq!(out.code, EXIT_UNSUPPORTED);
        assert_eq!(out.stdout, "UNSUPPORTED: open case; use `oracle`\n");
        assert_eq!(run(["edp", "oracle", &inst]).code, EXIT_YES);

        let k4 = write(&dir, "k4.txt", K4_SHORT);
        let shared = write(&dir, "bad.txt", "0 3 1\n2 1 3\n");
        let out = run(["edp", "verify", &k4, &shared]);
        assert_eq!(out.code, EXIT_NO);
        assert!(out.stdout.starts_with("INVALID\n"));
        assert!(out.stdout.contains("SharedEdge 4"), "{}", out.stdout);
    }

    #[test]
    fn errors_exit_three() {
        let out = run(["edp", "solve", "/nonexistent/instance.txt"]);
        assert_eq!(out.code, EXIT_ERROR);
        assert!(out.stderr.starts_with("error:"));
        assert_eq!(run(["edp", "frobnicate"]).code, EXIT_ERROR);
        let dir = tempfile::tempdir().unwrap();
        let inst = write(&dir, "k4.txt", K4_SHORT);
        assert_eq!(
            run(["edp", "solve", &inst, "--delta", "2"]).code,
            EXIT_ERROR
        );
        assert_eq!(
            run(["edp", "solve", &inst, "--mode", "psychic"]).code,
            EXIT_ERROR
        );
        assert_eq!(run(["edp", "--help"]).code, 0);
    }

    #[test]
    fn gen_and_compose() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.txt");
        let cert = dir.path().join("a.sol");
        let out = run([
            "edp",
            "gen",
            "planted",
            "--k1",
            "2",
            "--k2",
            "2",
            "--extra-n",
            "2",
            "--extra-m",
            "3",
            "--seed",
            "4",
            "-o",
            a.to_str().unwrap(),
            "--certificate",
            cert.to_str().unwrap(),
        ]);
        assert_eq!(out.code, 0, "{out:?}");
        let check = run(["edp", "verify", a.to_str().unwrap(), cert.to_str().unwrap()]);
        assert_eq!(check.code, EXIT_YES);

        let b = dir.path().join("b.txt");
        let out = run([
            "edp",
            "gen",
            "random",
            "--n",
            "6",
            "--m",
            "7",
            "--c1",
            "le 2",
            "--c2",
            "le 2",
            "-o",
            b.to_str().unwrap(),
        ]);
        assert_eq!(out.code, 0, "{out:?}");

        let out = run(["edp", "compose", a.to_str().unwrap(), b.to_str().unwrap()]);
        assert_eq!(out.code, 0, "{out:?}");
        assert!(out.stdout.contains("c1 le 6\nc2 le 21\n"), "{}", out.stdout);
        assert!(out.stdout.contains("k2_out=21"));
    }

    #[test]
    fn bench_prints_tsv() {
        let out = run([
            "edp",
            "bench",
            "--cases",
            "short-short,short-unbounded",
            "--sizes",
            "50",
        ]);
        assert_eq!(out.code, 0, "{out:?}");
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "case\tn\tm\tk1\tk2\ttrials\twall_ms\tanswer");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("short-short\t"));
        assert!(lines.iter().skip(1).all(|l| l.ends_with("\tyes")));
    }
}
