use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use barcode_lattice::io::{barcode_to_csv, format_number, read_barcode, Format};
use barcode_lattice::lattice::{HasseDiagram, Limits, DEFAULT_POSITION_CAP};
use barcode_lattice::polytope::{dimension_report, vertices_with};
use barcode_lattice::{
    align, check_convergence_bounds, f_k, g_k, random_barcode, Barcode, CanonicalInvariant,
    DistanceMetric, Error, GenOptions, LatticeSpec, MatchEnd, OrderRelation, Registry, SplitMix64,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "barlat",
    version,
    about = "Combinatorial invariants, lattices and distances of barcodes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputFormat {
    /// Input format; by default taken from the file extension
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Largest number of word positions n(2^k+1) to enumerate
    #[arg(long, default_value_t = DEFAULT_POSITION_CAP)]
    cap: usize,
}

impl LatticeArgs {
    fn spec(&self) -> Result<LatticeSpec, Error> {
        LatticeSpec::new(self.n, self.k)
    }

    fn limits(&self) -> Limits {
        Limits {
            position_cap: self.cap,
            ..Limits::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Meet,
    Join,
}

#[derive(Subcommand)]
enum Command {
    /// Print the power-k invariant of a barcode
    Invariant {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Print the labelled word instead of its canonical form
        #[arg(long)]
        labeled: bool,
        #[command(flatten)]
        format: InputFormat,
    },
    /// Print the rank of the power-k invariant
    Rank {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Also list the crossing number of every pair (k = 0 only)
        #[arg(long)]
        verbose: bool,
        #[command(flatten)]
        format: InputFormat,
    },
    /// Compare two barcodes (or words) in the lattice: LT, GT, EQ or INCOMPARABLE
    Compare {
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value = "newman")]
        order: String,
        /// Treat A and B as canonical words instead of barcode files
        #[arg(long)]
        words: bool,
        a: String,
        b: String,
        #[command(flatten)]
        format: InputFormat,
    },
    /// Write the Hasse diagram as DOT or JSON ("-" for stdout)
    Hasse {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, required_unless_present = "json")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Meet or join of two canonical words
    Meetjoin {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, value_enum)]
        op: Op,
        s: String,
        t: String,
    },
    /// Distance between two barcodes
    Distance {
        #[arg(long, default_value = "bottleneck")]
        metric: String,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        /// Align B onto A before measuring
        #[arg(long)]
        align: bool,
        /// Also print an optimal matching
        #[arg(long)]
        witness: bool,
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        format: InputFormat,
    },
    /// Check the aligned distance bounds for a pair with equal invariants (JSON report)
    BoundCheck {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        format: InputFormat,
    },
    /// Polytope vertices and dimension
    Polytope {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Write vertices as CSV or JSON (by extension; "-" for CSV on stdout)
        #[arg(long)]
        vertices: Option<PathBuf>,
        /// Print the dimension report as JSON
        #[arg(long)]
        dim: bool,
    },
    /// Print a random k-strict barcode as CSV
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        spread: f64,
        /// Make bar 1 contain every other bar
        #[arg(long)]
        contained: bool,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Lib(Error),
    Io(String),
    BoundViolated,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } => 4,
        Error::NotStrict { .. }
        | Error::NotKStrict { .. }
        | Error::PreconditionFailed(_)
        | Error::ShapeMismatch(_)
        | Error::NotCanonical(_)
        | Error::NotAnElement(_)
        | Error::DegenerateBar
        | Error::RetriesExhausted(_) => 3,
        Error::LatticeInvariant(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::BoundViolated) => {
            eprintln!("error: distance bound violated");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path, format: &InputFormat) -> Result<Barcode, Error> {
    read_barcode(path, format.format)
}

fn emit(path: &Path, text: &str, out: &mut String) -> Result<(), Failure> {
    if path == Path::new("-") {
        out.push_str(text);
    } else {
        fs::File::create(path)?.write_all(text.as_bytes())?;
    }
    Ok(())
}

fn word(s: &str) -> Result<CanonicalInvariant, Error> {
    s.parse()
}

fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Invariant {
            input,
            k,
            labeled,
            format,
        } => {
            let b = load(&input, &format)?;
            let w = if labeled {
                f_k(&b, k)?.to_string()
            } else {
                g_k(&b, k)?.to_string()
            };
            out.push_str(&format!("{w}\n"));
        }
        Command::Rank {
            input,
            k,
            verbose,
            format,
        } => {
            let b = load(&input, &format)?;
            let rank = g_k(&b, k)?.rank();
            if verbose {
                if k != 0 {
                    return Err(Error::Parse("--verbose needs --k 0".into()).into());
                }
                for i in 1..=b.len() {
                    for j in i + 1..=b.len() {
                        out.push_str(&format!("cross({i},{j}) = {}\n", b.crossing_number(i, j)?));
                    }
                }
            }
            out.push_str(&format!("{rank}\n"));
        }
        Command::Compare {
            k,
            order,
            words,
            a,
            b,
            format,
        } => {
            let orders = Registry::<dyn OrderRelation>::orders();
            let relation = orders.get(&order)?;
            let (s, t) = if words {
                (word(&a)?, word(&b)?)
            } else {
                (
                    g_k(&load(Path::new(&a), &format)?, k)?,
                    g_k(&load(Path::new(&b), &format)?, k)?,
                )
            };
            out.push_str(relation.compare(&s, &t)?.as_str());
            out.push('\n');
        }
        Command::Hasse { lattice, dot, json } => {
            let diagram = HasseDiagram::enumerate_with(lattice.spec()?, &lattice.limits())?;
            if let Some(path) = dot {
                emit(&path, &diagram.to_dot(), out)?;
            }
            if let Some(path) = json {
                let mut text = diagram.to_json();
                text.push('\n');
                emit(&path, &text, out)?;
            }
        }
        Command::Meetjoin { lattice, op, s, t } => {
            let diagram = HasseDiagram::enumerate_with(lattice.spec()?, &lattice.limits())?;
            let (s, t) = (word(&s)?, word(&t)?);
            let r = match op {
                Op::Meet => diagram.meet(&s, &t)?,
                Op::Join => diagram.join(&s, &t)?,
            };
            out.push_str(&format!("{r}\n"));
        }
        Command::Distance {
            metric,
            q,
            align: do_align,
            witness,
            a,
            b,
            format,
        } => {
            let metrics = Registry::<dyn DistanceMetric>::metrics();
            let metric = metrics.get(&metric)?;
            let left = load(&a, &format)?;
            let mut right = load(&b, &format)?;
            if do_align {
                right = align(&left, &right)?.apply(&right)?;
            }
            let (d, matching) = metric.distance(&left, &right, q)?;
            out.push_str(&format!("{}\n", format_number(d)));
            if witness {
                let end = |e: MatchEnd| match e {
                    MatchEnd::Bar(i) => i.to_string(),
                    MatchEnd::Diagonal => "diagonal".to_string(),
                };
                let costs = matching.pair_costs(&left, &right);
                for (&(x, y), c) in matching.pairs.iter().zip(costs) {
                    out.push_str(&format!("{} -> {} {}\n", end(x), end(y), format_number(c)));
                }
            }
        }
        Command::BoundCheck { k, q, a, b, format } => {
            let left = load(&a, &format)?;
            let right = load(&b, &format)?;
            let report = check_convergence_bounds(&left, &right, k, q)?;
            let text = serde_json::to_string(&report).expect("report serializes");
            out.push_str(&format!("{text}\n"));
            if !report.pass {
                return Err(Failure::BoundViolated);
            }
        }
        Command::Polytope {
            lattice,
            vertices,
            dim,
        } => {
            let spec = lattice.spec()?;
            if let Some(path) = vertices {
                let set = vertices_with(spec, &lattice.limits())?;
                let text = match Format::from_path(&path) {
                    Some(Format::Json) => set.to_json() + "\n",
                    _ => set.to_csv(),
                };
                emit(&path, &text, out)?;
            }
            if dim {
                let report = dimension_report(spec, &lattice.limits())?;
                out.push_str(&format!("{}\n", report.to_json()));
            }
        }
        Command::Gen {
            n,
            seed,
            k,
            spread,
            contained,
        } => {
            let mut rng = SplitMix64::new(seed);
            let b = random_barcode(
                GenOptions {
                    n,
                    k,
                    spread,
                    contained,
                },
                &mut rng,
            )?;
            assert!(b.is_k_strict(k, 0.0), "generated barcode is not {k}-strict");
            if contained {
                assert!(
                    b.containing_bar().is_some(),
                    "generated barcode has no containing bar"
                );
            }
            out.push_str(&barcode_to_csv(&b));
        }
    }
    Ok(())
}
