//! `capelli`: compute and verify Capelli-type elements of U(gl(n)).
//!
//! Exit status: 0 on success, 1 when a verification suite fails, 2 on usage
//! or parse errors.

use std::process::ExitCode;
use std::time::Instant;

use capelli::capelli::{
    capelli_bitableau, capelli_determinant, capelli_immanant, column_capelli, column_capelli_alt, quantum_immanant,
    schur_element, schur_element_dyc, standard_capelli_expansion, young_capelli,
};
use capelli::combinatorics::{Partition, YoungTableau};
use capelli::expansion::StdExpansion;
use capelli::polyalg::{bitableau, gc_coordinates, straighten, MPoly};
use capelli::ugl::UglElement;
use capelli::verify::{self, Bounds, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "capelli", version, about = "Exact PBW computations with Capelli bitableaux and quantum immanants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print wall-clock time per phase to stderr.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum immanant of a shape (or its Schur element with --schur).
    Qimm {
        /// Shape as comma-separated parts, e.g. 2,1.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        n: usize,
        /// Print the Schur element instead of the quantum immanant.
        #[arg(long)]
        schur: bool,
        /// Compute the Schur element from double Young-Capelli bitableaux.
        #[arg(long, requires = "schur")]
        dyc: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Column Capelli bitableau [rows|cols].
    Col {
        /// Row indices, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        /// Column indices, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        cols: String,
        #[arg(long)]
        n: usize,
        /// Use the bottom-row recursion.
        #[arg(long)]
        alt: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Capelli determinant cdet(n).
    Cdet {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Capelli bitableau [S|T], or Young-Capelli bitableau [S|⎕T] with --young.
    Bitab {
        /// Left tableau as JSON rows, e.g. [[1,2],[1]].
        #[arg(long)]
        left: String,
        /// Right tableau as JSON rows.
        #[arg(long)]
        right: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        young: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Capelli immanant of a shape on two index sequences.
    Cimm {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run an invariant suite and print a JSON report.
    Verify {
        /// central, oracle, presentations, recursion, bases, projectors, action or all.
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_h: usize,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Expand a polynomial on standard bitableaux (or, with --symmetrized,
    /// on standard right symmetrized bitableaux).
    Straighten {
        /// Left tableau as JSON rows.
        #[arg(long, requires = "right", conflicts_with = "poly")]
        left: Option<String>,
        /// Right tableau as JSON rows.
        #[arg(long, requires = "left")]
        right: Option<String>,
        /// Polynomial in text form, e.g. "x[1,1]x[2,2] - x[1,2]x[2,1]".
        #[arg(long, allow_hyphen_values = true, required_unless_present = "left")]
        poly: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        symmetrized: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Expand an element of U(gl(n)) on standard Young-Capelli bitableaux.
    ExpandStandard {
        /// Element in text form, e.g. "e[1,2]e[2,1] - e[1,1]".
        #[arg(long, allow_hyphen_values = true, conflicts_with = "json", required_unless_present_any = ["json", "schur"])]
        element: Option<String>,
        /// Element in JSON form.
        #[arg(long)]
        json: Option<String>,
        /// Expand the Schur element of this shape instead.
        #[arg(long, conflicts_with_all = ["element", "json"])]
        schur: Option<String>,
        /// Required with --element and --schur.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<capelli::Error> for Failure {
    fn from(e: capelli::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Phase timer; prints to stderr only when enabled.
struct Timer {
    enabled: bool,
    last: Instant,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Timer {
            enabled,
            last: Instant::now(),
        }
    }

    fn phase(&mut self, name: &str) {
        if self.enabled {
            eprintln!("timing: {name} {:.3}s", self.last.elapsed().as_secs_f64());
        }
        self.last = Instant::now();
    }
}

fn parse_indices(s: &str) -> Result<Vec<usize>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad index {t:?} in {s:?}")))
        })
        .collect()
}

fn render_ugl(x: &UglElement, format: Format) -> String {
    match format {
        Format::Text => x.to_text(),
        Format::Json => x.to_json(),
    }
}

fn render_expansion(x: &StdExpansion, format: Format) -> String {
    match format {
        Format::Text => x.to_text(),
        Format::Json => x.to_json(),
    }
}

/// Parses, computes and renders an element, with phase timing.
fn emit_ugl(out: &Output, compute: impl FnOnce() -> capelli::Result<UglElement>) -> Result<(), Failure> {
    let mut timer = Timer::new(out.timing);
    let x = compute()?;
    timer.phase("compute");
    println!("{}", render_ugl(&x, out.format));
    timer.phase("render");
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Qimm {
            shape,
            n,
            schur,
            dyc,
            out,
        } => {
            let shape = Partition::parse(&shape)?;
            emit_ugl(&out, || match (schur, dyc) {
                (true, true) => schur_element_dyc(&shape, n),
                (true, false) => schur_element(&shape, n),
                _ => quantum_immanant(&shape, n),
            })
        }
        Command::Col {
            rows,
            cols,
            n,
            alt,
            out,
        } => {
            let (rows, cols) = (parse_indices(&rows)?, parse_indices(&cols)?);
            emit_ugl(&out, || {
                if alt {
                    column_capelli_alt(&rows, &cols, n)
                } else {
                    column_capelli(&rows, &cols, n)
                }
            })
        }
        Command::Cdet { n, out } => emit_ugl(&out, || capelli_determinant(n)),
        Command::Bitab {
            left,
            right,
            n,
            young,
            out,
        } => {
            let (left, right) = (YoungTableau::parse_json(&left)?, YoungTableau::parse_json(&right)?);
            emit_ugl(&out, || {
                if young {
                    young_capelli(&left, &right, n)
                } else {
                    capelli_bitableau(&left, &right, n)
                }
            })
        }
        Command::Cimm {
            shape,
            rows,
            cols,
            n,
            out,
        } => {
            let shape = Partition::parse(&shape)?;
            let (rows, cols) = (parse_indices(&rows)?, parse_indices(&cols)?);
            emit_ugl(&out, || capelli_immanant(&shape, &rows, &cols, n))
        }
        Command::Verify {
            suite,
            max_h,
            max_n,
            n,
            d,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            if n == 0 || d == 0 || max_n == 0 {
                return Err(Failure::Usage("--n, --d and --max-n must be positive".into()));
            }
            let mut timer = Timer::new(out.timing);
            let report = verify::run(suite, &Bounds { max_h, max_n, n, d });
            timer.phase("verify");
            match out.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => {
                    for c in &report.checks {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        println!("{status} {} ({} cases)", c.name, c.cases);
                    }
                }
            }
            match report.first_failure() {
                None => Ok(()),
                Some(c) => Err(Failure::Verification(format!(
                    "{}: {}",
                    c.name,
                    c.counterexample.clone().unwrap_or_default()
                ))),
            }
        }
        Command::Straighten {
            left,
            right,
            poly,
            n,
            d,
            symmetrized,
            out,
        } => {
            let mut timer = Timer::new(out.timing);
            let p = match (left, right, poly) {
                (Some(l), Some(r), _) => {
                    bitableau(&YoungTableau::parse_json(&l)?, &YoungTableau::parse_json(&r)?, n, d)?
                }
                (_, _, Some(text)) => MPoly::parse_text(&text, n, d)?,
                _ => return Err(Failure::Usage("give --left and --right, or --poly".into())),
            };
            timer.phase("parse");
            let exp = if symmetrized { gc_coordinates(&p)? } else { straighten(&p)? };
            timer.phase("compute");
            println!("{}", render_expansion(&exp, out.format));
            timer.phase("render");
            Ok(())
        }
        Command::ExpandStandard {
            element,
            json,
            schur,
            n,
            out,
        } => {
            let mut timer = Timer::new(out.timing);
            let need_n = || n.ok_or_else(|| Failure::Usage("--n is required".into()));
            let x = match (element, json, schur) {
                (Some(text), _, _) => UglElement::parse_text(&text, need_n()?)?,
                (_, Some(j), _) => UglElement::from_json(&j)?,
                (_, _, Some(shape)) => schur_element(&Partition::parse(&shape)?, need_n()?)?,
                _ => return Err(Failure::Usage("give --element, --json or --schur".into())),
            };
            timer.phase("parse");
            let exp = standard_capelli_expansion(&x)?;
            timer.phase("compute");
            println!("{}", render_expansion(&exp, out.format));
            timer.phase("render");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
