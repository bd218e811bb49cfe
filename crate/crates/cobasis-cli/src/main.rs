//! Command-line front end: exact change-of-basis matrices, polynomial
//! conversion, and verification sweeps.

mod descriptor;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cobasis::exact::decimal_string;
use cobasis::registry::{convert, Conversion, CoordVector, ParityPolicy, Registry};
use cobasis::{BasisSpec, CobMatrix, Family, Polynomial};

use descriptor::{effective_step, parse_descriptor, to_spec};

#[derive(Parser)]
#[command(
    name = "cobasis",
    about = "Exact change of basis between finite polynomial bases",
    long_about = None,
    after_help = descriptor_help()
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn descriptor_help() -> &'static str {
    "BASIS DESCRIPTORS:\n  \
     family[(k)][@u,l][:asc|:desc][:alt|:sup|:sup-]\n  \
     family   monomial (x), bernstein, zernike, chebyshevt, chebyshevu,\n           \
     chebyshevv, legendre, shiftedlegendre, laguerre, hermite\n  \
     (k)      truncations of the single degree-k family polynomial\n  \
     @u,l     family polynomials truncated to the window (u,l = --n,--m)\n  \
     :asc     ascending basis (fixed degree, growing minimum degree)\n  \
     :desc    descending basis (fixed minimum degree, growing degree; default)\n  \
     :alt     alternating variant   :sup / :sup-  superposed variant\n\n\
     EXAMPLES:\n  \
     cobasis matrix --from zernike:desc --to monomial --n 9 --m 3\n  \
     cobasis matrix --from bernstein:asc --to zernike:asc:sup --n 7 --m 3\n  \
     cobasis convert --poly \"16x^7-12x^5+5x^4+3x^2\" --to bernstein:asc --n 7 --m 2\n  \
     cobasis verify fixtures\n  \
     cobasis verify oracle --max-n 8"
}

#[derive(Subcommand)]
enum Command {
    /// Print the change-of-basis matrix between two bases on a window
    Matrix(MatrixArgs),
    /// Express a polynomial in a target basis
    Convert(ConvertArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// List the known families and their basis forms
    List,
}

#[derive(Args)]
struct MatrixArgs {
    /// Domain basis descriptor
    #[arg(long)]
    from: String,
    /// Range basis descriptor
    #[arg(long)]
    to: String,
    /// Top of the degree window
    #[arg(long)]
    n: i64,
    /// Bottom of the degree window
    #[arg(long, default_value_t = 0)]
    m: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add a display-only decimal rendering with this many digits
    #[arg(long)]
    decimal: Option<u32>,
}

#[derive(Args)]
struct ConvertArgs {
    /// Polynomial text, e.g. "16x^7-12x^5+5x^4+3x^2"
    #[arg(long)]
    poly: String,
    /// Target basis descriptor
    #[arg(long)]
    to: String,
    #[arg(long)]
    n: i64,
    #[arg(long, default_value_t = 0)]
    m: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    decimal: Option<u32>,
    /// Reject mixed-parity polynomials instead of splitting them
    #[arg(long)]
    strict_parity: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: fixtures, groupoid, or oracle
    suite: String,
    /// Largest window top for the oracle sweep
    #[arg(long, default_value_t = 8)]
    max_n: i64,
    /// Window for the groupoid suite
    #[arg(long, default_value_t = 9)]
    n: i64,
    #[arg(long, default_value_t = 3)]
    m: i64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Matrix(args) => cmd_matrix(args),
        Command::Convert(args) => cmd_convert(args),
        Command::Verify(args) => cmd_verify(args),
        Command::List => {
            cmd_list();
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_specs(from: &str, to: &str, n: i64, m: i64) -> Result<(BasisSpec, BasisSpec), String> {
    let pf = parse_descriptor(from)?;
    let pt = parse_descriptor(to)?;
    let step_f = effective_step(&pf);
    let step_t = effective_step(&pt);
    // a monomial side adopts the partner's step
    let (hub_f, hub_t) = if pf.family == Family::Monomial {
        (step_t, step_t)
    } else if pt.family == Family::Monomial {
        (step_f, step_f)
    } else {
        (step_f, step_t)
    };
    let fs = to_spec(&pf, n, m, hub_f)?;
    let ts = to_spec(&pt, n, m, hub_t)?;
    Ok((fs, ts))
}

fn cmd_matrix(args: MatrixArgs) -> Result<ExitCode, String> {
    let (fs, ts) = build_specs(&args.from, &args.to, args.n, args.m)?;
    let mut reg = Registry::new();
    let a = reg.register(fs).map_err(|e| e.to_string())?;
    let b = reg.register(ts).map_err(|e| e.to_string())?;
    let matrix = reg.cob(a, b).map_err(|e| e.to_string())?;
    match args.format {
        Format::Text => {
            print!("{}", matrix.to_text());
            if let Some(digits) = args.decimal {
                println!("---");
                print!("{}", decimal_grid(&matrix, digits));
            }
        }
        Format::Csv => print!("{}", matrix.to_csv()),
        Format::Json => println!("{}", matrix.to_json()),
    }
    Ok(ExitCode::SUCCESS)
}

fn decimal_grid(matrix: &CobMatrix, digits: u32) -> String {
    let cells: Vec<Vec<String>> = (0..matrix.dim())
        .map(|i| {
            matrix
                .row(i)
                .iter()
                .map(|e| decimal_string(e, digits))
                .collect()
        })
        .collect();
    let width = cells
        .iter()
        .flat_map(|row| row.iter().map(|c| c.len()))
        .max()
        .unwrap_or(0);
    cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn cmd_convert(args: ConvertArgs) -> Result<ExitCode, String> {
    let p: Polynomial = args.poly.parse().map_err(|e| format!("{e}"))?;
    let parsed = parse_descriptor(&args.to)?;
    let spec = to_spec(&parsed, args.n, args.m, effective_step(&parsed))?;
    let policy = if args.strict_parity {
        ParityPolicy::Strict
    } else {
        ParityPolicy::SplitAllowed
    };
    let conversion = convert(&p, &spec, policy).map_err(|e| e.to_string())?;
    if args.format == Format::Json {
        // echo the input in degree/coefficient pair form
        let pairs: Vec<(i64, String)> =
            p.pairs().into_iter().map(|(k, c)| (k, c.to_string())).collect();
        println!("{}", serde_json::json!({ "polynomial": pairs }));
    }
    match conversion {
        Conversion::Single(v) => print_coords(&v, args.format, args.decimal, None),
        Conversion::Split { even, odd } => {
            print_coords(&even, args.format, args.decimal, Some("even part"));
            print_coords(&odd, args.format, args.decimal, Some("odd part"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_coords(v: &CoordVector, format: Format, decimal: Option<u32>, header: Option<&str>) {
    match format {
        Format::Text => {
            if let Some(h) = header {
                println!("# {h}: {}", v.basis);
            }
            for (j, c) in v.coords.iter().enumerate() {
                let label = v.basis.element_label(j);
                match decimal {
                    Some(d) => println!("{label}: {c} ({})", decimal_string(c, d)),
                    None => println!("{label}: {c}"),
                }
            }
        }
        Format::Csv => {
            for (j, c) in v.coords.iter().enumerate() {
                println!("{},{c}", v.basis.element_label(j));
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "part": header,
                "basis": v.basis.to_string(),
                "labels": (0..v.coords.len())
                    .map(|j| v.basis.element_label(j))
                    .collect::<Vec<_>>(),
                "coords": v.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            println!("{doc}");
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    match args.suite.as_str() {
        "fixtures" => {
            let mut failures = 0usize;
            for f in cobasis::fixtures::all_fixtures() {
                match f.check() {
                    Ok(report) if report.matched => println!("PASS {}", f.name),
                    Ok(report) => {
                        failures += 1;
                        println!("FAIL {}: first mismatch {:?}", f.name, report.first_mismatch);
                    }
                    Err(e) => {
                        failures += 1;
                        println!("FAIL {}: {e}", f.name);
                    }
                }
            }
            match cobasis::fixtures::superposition_counterexample() {
                Ok((s_mn, s_m_s_n)) if s_mn.to_grid() != s_m_s_n.to_grid() => {
                    println!("PASS superposition is not a functor (counterexample differs)");
                }
                Ok(_) => {
                    failures += 1;
                    println!("FAIL superposition counterexample did not differ");
                }
                Err(e) => {
                    failures += 1;
                    println!("FAIL superposition counterexample: {e}");
                }
            }
            Ok(exit_for(failures))
        }
        "groupoid" => {
            let (n, m) = (args.n, args.m);
            let mut reg = Registry::new();
            let mut ids = Vec::new();
            let mut add = |reg: &mut Registry, spec: Result<BasisSpec, cobasis::Error>| {
                if let Ok(spec) = spec {
                    if let Ok(id) = reg.register(spec) {
                        ids.push(id);
                    }
                }
            };
            use cobasis::Orientation::*;
            if (n - m) % 2 == 0 {
                add(&mut reg, BasisSpec::family(Family::ZernikeRadial, Descending, n, m));
                add(&mut reg, BasisSpec::family(Family::ZernikeRadial, Ascending, n, m));
                add(
                    &mut reg,
                    if m <= 1 {
                        BasisSpec::family(Family::ChebyshevT, Descending, n, m)
                    } else {
                        BasisSpec::truncated_family(Family::ChebyshevT, Descending, n, m)
                    },
                );
                add(&mut reg, Ok(BasisSpec::monomial(n, m, 2)));
            } else {
                add(&mut reg, BasisSpec::family(Family::Bernstein, Ascending, n, m));
                add(&mut reg, BasisSpec::family(Family::Bernstein, Descending, n, m));
                add(
                    &mut reg,
                    BasisSpec::truncated_family(Family::Laguerre, Descending, n, m),
                );
                add(&mut reg, Ok(BasisSpec::monomial(n, m, 1)));
            }
            let report = reg.verify_category(&ids).map_err(|e| e.to_string())?;
            let mut failures = 0usize;
            for check in &report.checks {
                if check.passed {
                    println!("PASS {}: {}", check.law, check.detail);
                } else {
                    failures += 1;
                    println!("FAIL {}: {}", check.law, check.detail);
                }
            }
            Ok(exit_for(failures))
        }
        "oracle" => {
            let mut failures = 0usize;
            let mut total = 0usize;
            let sweeps = cobasis::oracle::formula_oracle_sweep(args.max_n)
                .map_err(|e| e.to_string())?
                .into_iter()
                .chain(
                    cobasis::oracle::composition_oracle_sweep(args.max_n)
                        .map_err(|e| e.to_string())?,
                );
            for (name, report) in sweeps {
                total += 1;
                if !report.matched {
                    failures += 1;
                    println!("FAIL {name}: {:?}", report.first_mismatch);
                }
            }
            println!(
                "{} of {total} formula matrices match the oracle (windows up to n = {})",
                total - failures,
                args.max_n
            );
            Ok(exit_for(failures))
        }
        other => Err(format!(
            "unknown suite {other:?}; expected fixtures, groupoid, or oracle"
        )),
    }
}

fn exit_for(failures: usize) -> ExitCode {
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_list() {
    println!("families (name, parity step, native basis forms):");
    for f in [
        Family::Monomial,
        Family::Bernstein,
        Family::ZernikeRadial,
        Family::ChebyshevT,
        Family::ChebyshevU,
        Family::ChebyshevV,
        Family::Legendre,
        Family::ShiftedLegendre,
        Family::Laguerre,
        Family::HermitePhysicist,
    ] {
        let forms = match f {
            Family::Monomial => "asc+desc hub; any window",
            Family::Bernstein | Family::ZernikeRadial => "asc+desc native windows",
            _ => "desc native; @u,l truncated; (k) single-polynomial; parity families also :alt/:sup",
        };
        println!("  {:<16} step {}  {}", f.name(), f.step(), forms);
    }
    println!("\ndescriptor grammar: family[(k)][@u,l][:asc|:desc][:alt|:sup|:sup-]");
}
