//! `lucat`: compute Lucas polynomials, lucanomials and Lucas-Catalan
//! polynomials, and run verification sweeps.
//!
//! Exit status is 0 when everything checked out, 1 when a computation or
//! comparison failed, and 2 for usage errors.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lucat_core::{
    catalan_via_division, catalan_via_identity, render_text, selftest, sweep_with, Check,
    Lucanomials, OutputFormat, Polynomial, SweepConfig, VerificationReport,
};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(
    name = "lucat",
    version,
    about = "Exact Lucas-Catalan polynomials in Z[s,t]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Lucas polynomial {n}
    Lucas {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Print the lucanomial {m choose k}, checked by two routes
    Binom {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Print the Lucas-Catalan polynomial {2n choose n} / {n+1}
    Catalan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Division)]
        method: Method,
        /// Fail unless every coefficient is positive
        #[arg(long)]
        require_positive: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Verify the Catalan identity and positivity for n = 1..max-n
    Verify(VerifyArgs),
    /// Run the seeded randomized kernel checks
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = selftest::DEFAULT_CASES)]
        cases: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Evaluate at the integer point S,T instead of printing the polynomial
    #[arg(long, value_name = "S,T", allow_hyphen_values = true, value_parser = parse_point)]
    spec: Option<(i64, i64)>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,
    #[arg(long, value_delimiter = ',', default_value = "identity,positivity", value_parser = parse_check)]
    checks: Vec<Check>,
    #[arg(long, env = "LUCAT_JOBS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also report each polynomial's value at S,T
    #[arg(long, value_name = "S,T", allow_hyphen_values = true, value_parser = parse_point)]
    spec: Option<(i64, i64)>,
    /// Embed polynomials up to this many terms, digests beyond
    #[arg(long, default_value_t = 256)]
    max_terms: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Division,
    Identity,
    Both,
}

fn parse_point(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected S,T, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse().map_err(|e: lucat_core::Error| e.to_string())
}

/// Failure that maps to exit status 1.
struct Falsified(String);

type Outcome = Result<(), Falsified>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    if let Err(e) = out.flush() {
        eprintln!("lucat: {e}");
        return ExitCode::from(1);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Falsified(msg)) => {
            eprintln!("lucat: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, w: &mut impl Write) -> Outcome {
    match command {
        Command::Lucas { n, out } => {
            let engine = Lucanomials::default();
            print_poly(w, &engine.lucas(n), &out)
        }
        Command::Binom { m, k, out } => {
            let engine = Lucanomials::default();
            let by_factorial = engine
                .binom_factorial(m, k)
                .map_err(|e| Falsified(e.to_string()))?;
            let by_recurrence = engine.binom_recurrence(m, k);
            if by_factorial != by_recurrence {
                return Err(Falsified(format!(
                    "routes disagree for {{{m} choose {k}}}:\n  factorial:  {by_factorial}\n  recurrence: {by_recurrence}"
                )));
            }
            print_poly(w, &by_factorial, &out)
        }
        Command::Catalan {
            n,
            method,
            require_positive,
            out,
        } => {
            let engine = Lucanomials::default();
            let n = n as usize;
            let fail = |e: lucat_core::Error| Falsified(e.to_string());
            let (poly, agree) = match method {
                Method::Division => (catalan_via_division(&engine, n).map_err(fail)?, None),
                Method::Identity => (catalan_via_identity(&engine, n).map_err(fail)?, None),
                Method::Both => {
                    let d = catalan_via_division(&engine, n).map_err(fail)?;
                    let i = catalan_via_identity(&engine, n).map_err(fail)?;
                    let agree = d == i;
                    (d, Some(agree))
                }
            };
            print_poly(w, &poly, &out)?;
            if let Some(agree) = agree {
                writeln!(w, "agree={agree}").map_err(io_fail)?;
                if !agree {
                    return Err(Falsified(format!(
                        "division and identity routes differ for n={n}"
                    )));
                }
            }
            if require_positive {
                let v = poly.positivity();
                if !v.is_positive() {
                    return Err(Falsified(format!("n={n}: {v}")));
                }
            }
            Ok(())
        }
        Command::Verify(args) => verify(args, w),
        Command::Selftest {
            seed,
            cases,
            format,
        } => {
            let report = selftest::run(seed, cases);
            match format {
                Format::Json => writeln!(w, "{}", serde_json::to_string(&report).unwrap()),
                Format::Csv => {
                    let mut r = writeln!(w, "property,cases,failures");
                    for p in &report.properties {
                        r = r.and_then(|_| writeln!(w, "{},{},{}", p.name, p.cases, p.failures));
                    }
                    r
                }
                Format::Text => {
                    let mut r = Ok(());
                    for p in &report.properties {
                        let status = if p.passed() { "PASS" } else { "FAIL" };
                        r = r.and_then(|_| writeln!(w, "{status} {} ({} cases)", p.name, p.cases));
                        if let Some(f) = &p.first_failure {
                            r = r.and_then(|_| writeln!(w, "  {f}"));
                        }
                    }
                    r.and_then(|_| writeln!(w, "seed {seed}"))
                }
            }
            .map_err(io_fail)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Falsified("randomized checks failed".into()))
            }
        }
    }
}

fn io_fail(e: io::Error) -> Falsified {
    Falsified(format!("write failed: {e}"))
}

fn print_poly(w: &mut impl Write, p: &Polynomial, out: &Output) -> Outcome {
    let r = if let Some((s, t)) = out.spec {
        let v = p.eval(&BigInt::from(s), &BigInt::from(t));
        match out.format {
            Format::Json => writeln!(w, "\"{v}\""),
            _ => writeln!(w, "{v}"),
        }
    } else {
        match out.format {
            Format::Text => writeln!(w, "{p}"),
            Format::Json => writeln!(w, "{}", serde_json::to_string(p).unwrap()),
            Format::Csv => {
                let mut r = writeln!(w, "s_exp,t_exp,coeff");
                for term in p.terms() {
                    r = r.and_then(|_| {
                        writeln!(w, "{},{},{}", term.s_exp(), term.t_exp(), term.coeff())
                    });
                }
                r
            }
        }
    };
    r.map_err(io_fail)
}

fn csv_row(r: &VerificationReport) -> String {
    let d = r.digest();
    format!(
        "{},{},{},{},{}",
        r.n,
        d.as_ref()
            .map_or(String::new(), |d| d.term_count.to_string()),
        d.as_ref()
            .and_then(|d| d.total_degree)
            .map_or(String::new(), |v| v.to_string()),
        d.as_ref()
            .map_or(String::new(), |d| d.max_coeff_bits.to_string()),
        r.all_ok()
    )
}

fn verify(args: VerifyArgs, w: &mut impl Write) -> Outcome {
    let config = SweepConfig {
        max_n: args.max_n as usize,
        checks: args.checks,
        jobs: args.jobs as usize,
        format: args.format.into(),
        spec_point: args.spec,
        seed: 0,
        max_terms: args.max_terms,
    };
    let (mut total, mut passed) = (0usize, 0usize);
    let mut write_err: Option<io::Error> = None;
    if config.format == OutputFormat::Csv {
        if let Err(e) = writeln!(w, "n,term_count,total_degree,max_coeff_bits,all_ok") {
            return Err(io_fail(e));
        }
    }
    sweep_with(&config, |report| {
        total += 1;
        passed += usize::from(report.all_ok());
        if write_err.is_some() {
            return;
        }
        let line = match config.format {
            OutputFormat::Text => render_text(&report),
            OutputFormat::Json => serde_json::to_string(&report).unwrap(),
            OutputFormat::Csv => csv_row(&report),
        };
        if let Err(e) = writeln!(w, "{line}").and_then(|_| w.flush()) {
            write_err = Some(e);
        }
    })
    .map_err(|e| Falsified(e.to_string()))?;
    if let Some(e) = write_err {
        return Err(io_fail(e));
    }
    if config.format == OutputFormat::Text {
        let checks: Vec<&str> = config.checks.iter().map(|c| c.name()).collect();
        writeln!(w, "{passed}/{total} passed ({})", checks.join(",")).map_err(io_fail)?;
    }
    if passed == total {
        Ok(())
    } else {
        Err(Falsified(format!(
            "{} of {total} indices failed",
            total - passed
        )))
    }
}
