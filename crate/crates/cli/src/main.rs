use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logsplit::arrangement::{addition_deletion_with, AdditionReport, Arrangement};
use logsplit::splitting::{defect_i, splitting_type};
use logsplit::{Error, Result};
use logsplit_cli::parse::{parse_arrangement, parse_line_spec, parse_poly};
use logsplit_cli::report::{build_report, coords, curve_input, profile, render_text, Options, Source};
use serde::Serialize;

/// Splitting types and freeness invariants of reduced plane curves and line
/// arrangements.
#[derive(Parser, Debug)]
#[command(name = "logsplit", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for line sampling.
    #[arg(long, global = true, env = "LOGSPLIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Upper degree for the syzygy scan.
    #[arg(long, global = true)]
    kmax: Option<i64>,
    /// Random line coefficients are drawn from [-N, N].
    #[arg(long = "coeff-box", global = true, default_value_t = logsplit::jacobian::DEFAULT_COEFF_BOX)]
    coeff_box: i64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Full report for a curve or an arrangement.
    Analyze {
        #[command(subcommand)]
        what: Input,
    },
    /// Splitting type along given lines.
    Splitting {
        kind: Kind,
        /// Expression or arrangement file, according to KIND.
        src: String,
        /// Line as a,b,c for a x + b y + c z; may be repeated.
        #[arg(long = "line", required = true)]
        lines: Vec<String>,
    },
    /// Full report; nonzero exit on any failed check. SRC is an arrangement
    /// file, a file holding an expression, or an expression.
    Verify { src: String },
    /// Addition-deletion ledger for the arrangement minus one line.
    Addition {
        file: PathBuf,
        /// Index (from 0) of the deleted line.
        #[arg(long)]
        index: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Kind {
    Curve,
    Arrangement,
}

#[derive(Subcommand, Debug, Clone)]
enum Input {
    Curve { expr: String },
    Arrangement { file: PathBuf },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("{}: {e}", path.display()),
    })
}

fn load(input: &Input) -> Result<Source> {
    match input {
        Input::Curve { expr } => Ok(Source::Curve(parse_poly(expr)?)),
        Input::Arrangement { file } => Ok(Source::Arrangement(parse_arrangement(&read(file)?)?)),
    }
}

fn load_any(src: &str) -> Result<Source> {
    let path = Path::new(src);
    if !path.is_file() {
        return Ok(Source::Curve(parse_poly(src)?));
    }
    let text = read(path)?;
    match parse_arrangement(&text) {
        Ok(a) => Ok(Source::Arrangement(a)),
        Err(arr_err) => {
            let body: String = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .collect::<Vec<_>>()
                .join(" ");
            parse_poly(&body).map(Source::Curve).map_err(|_| arr_err)
        }
    }
}

fn options(g: &Global) -> Options {
    Options {
        seed: g.seed,
        kmax: g.kmax,
        coeff_box: g.coeff_box,
        lines: Vec::new(),
    }
}

#[derive(Serialize)]
struct SplittingOut {
    line: [String; 3],
    splitting: logsplit::splitting::SplitType,
    #[serde(rename = "I")]
    i: i64,
}

fn run(cli: &Cli) -> Result<bool> {
    let opts = options(&cli.global);
    match &cli.cmd {
        Cmd::Analyze { what } => {
            let src = load(what)?;
            emit_report(&src, &opts, cli.global.json)
        }
        Cmd::Verify { src } => {
            let src = load_any(src)?;
            emit_report(&src, &opts, cli.global.json)
        }
        Cmd::Splitting { kind, src, lines } => {
            let src = load(&match kind {
                Kind::Curve => Input::Curve { expr: src.clone() },
                Kind::Arrangement => Input::Arrangement { file: src.into() },
            })?;
            let lines = lines
                .iter()
                .map(|l| parse_line_spec(l))
                .collect::<Result<Vec<_>>>()?;
            let c = curve_input(src.polynomial(), &opts)?;
            let mut out = Vec::new();
            for l in &lines {
                let s = splitting_type(&c, l)?;
                out.push(SplittingOut {
                    line: coords(l.coeffs()),
                    splitting: s,
                    i: defect_i(c.degree(), s),
                });
            }
            if cli.global.json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&out).expect("serializes")));
            } else {
                for (l, o) in lines.iter().zip(&out) {
                    emit(&format!("{l}: {}  I = {}\n", o.splitting, o.i));
                }
            }
            Ok(true)
        }
        Cmd::Addition { file, index } => {
            let a = parse_arrangement(&read(file)?)?;
            let r = addition(&a, *index, &opts)?;
            if cli.global.json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&r).expect("serializes")));
            } else {
                emit(&addition_text(&r));
            }
            Ok(r.all_respected())
        }
    }
}

fn addition(a: &Arrangement, h: usize, opts: &Options) -> Result<AdditionReport> {
    if a.n() < 2 {
        return Err(Error::OutOfRange("deletion needs at least two lines".into()));
    }
    let b = a.deletion(h)?;
    let pa = profile(&curve_input(a.polynomial(), opts)?, opts)?;
    let pb = profile(&curve_input(b.polynomial(), opts)?, opts)?;
    addition_deletion_with(a, h, &pa, &pb)
}

fn status_text(s: &logsplit::arrangement::Status) -> String {
    let e = s
        .exponents
        .map(|(a, b)| format!(" ({a},{b})"))
        .unwrap_or_default();
    match s.nu {
        0 => format!("free{e}"),
        1 => format!("nearly free{e}"),
        n => format!("nu = {n}"),
    }
}

fn addition_text(r: &AdditionReport) -> String {
    let mut s = format!(
        "H = line {}, |A^H| = {}\nA: {}\nB = A \\ H: {}\n",
        r.h_index,
        r.restriction_count,
        status_text(&r.a),
        status_text(&r.b)
    );
    for t in &r.records {
        s.push_str(&format!(
            "  {} {:<12} {:<10} hypotheses {:<5} conclusion {:<5}\n",
            if t.implication_respected { "ok  " } else { "FAIL" },
            t.theorem,
            t.parameters
                .map(|(a, b)| format!("({a},{b})"))
                .unwrap_or_else(|| "-".into()),
            t.hypotheses_hold,
            t.conclusion_holds
        ));
    }
    s
}

/// Write to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit_report(src: &Source, opts: &Options, json: bool) -> Result<bool> {
    let r = build_report(src, opts)?;
    if json {
        emit(&format!("{}\n", r.to_json()));
    } else {
        emit(&render_text(src, &r));
    }
    for f in r.failures() {
        eprintln!("check failed: {} ({})", f.name, f.witness);
    }
    Ok(r.all_pass())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
