//! The `wittkit` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 parse or validation error, 3 violated
//! mathematical precondition (or a failed self-check). Errors are printed to
//! stderr as one JSON line `{"error": kind, "message": text}`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::WittError;
use crate::io::{
    dw_class_from_json, dw_class_to_json, int_form_from_json, linking_form_to_json, report_to_json,
    seifert_form_from_json, witt_class_to_json, AnyLinkingForm, OracleReport,
};
use crate::linking::oracle::{oracle_is_hyperbolic, oracle_is_metabolic, DEFAULT_MAX_SIZE};
use crate::linking::{LinkRing, LinkingForm};
use crate::seifert::{covering, doubly_slice_report_with_precision};
use crate::selftest::run_selftest;
use crate::witt::{
    forgetful, multisignature_with_precision, witt_class_via_devissage_with_precision, DWClass, WittClass,
    DEFAULT_PLACE_BITS,
};

const MAX_PLACE_BITS: u32 = 256;

#[derive(Parser, Debug)]
#[command(name = "wittkit", version, about = "Exact double Witt invariants of linking forms and Seifert forms")]
struct Cli {
    /// Print JSON instead of the human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest module the exhaustive oracle will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE)]
    max_oracle_size: usize,
    /// Place intervals are refined to width at most 2^-k.
    #[arg(long, global = true, value_name = "K", default_value_t = DEFAULT_PLACE_BITS)]
    places_precision: u32,
    /// Also write the JSON result to this file.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Seifert form -> covering linking form.
    Cover { input: PathBuf },
    /// Linking form -> double Witt class.
    Multisig { input: PathBuf },
    /// Linking form -> Witt class by devissage.
    Wittclass { input: PathBuf },
    /// Double Witt class -> Witt class.
    Forgetful { input: PathBuf },
    /// Finite Zp linking form -> exhaustive metabolic/hyperbolic search.
    Oracle { input: PathBuf },
    /// Seifert form -> doubly-slice obstruction report.
    Report { input: PathBuf },
    /// Runs the embedded corpus.
    Selftest,
}

enum Failure {
    Usage(String),
    Io(String),
    Lib(WittError),
    Selftest(usize),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) | Failure::Lib(WittError::Parse(_)) => 2,
            Failure::Lib(_) | Failure::Selftest(_) => 3,
        }
    }

    fn line(&self) -> String {
        let (kind, message) = match self {
            Failure::Usage(m) => ("usage", m.clone()),
            Failure::Io(m) => ("io", m.clone()),
            Failure::Lib(e) => (
                match e {
                    WittError::Parse(_) => "parse",
                    WittError::Precondition(_) => "precondition",
                    WittError::Unsupported(_) => "unsupported",
                    WittError::Internal(_) => "internal",
                },
                e.to_string(),
            ),
            Failure::Selftest(n) => ("selftest", format!("{n} check(s) failed")),
        };
        serde_json::json!({ "error": kind, "message": message.replace('\n', " ") }).to_string()
    }
}

impl From<WittError> for Failure {
    fn from(e: WittError) -> Self {
        Failure::Lib(e)
    }
}

/// Human-readable text and JSON for one command.
struct Output {
    text: String,
    json: Option<String>,
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn form_text<R: LinkRing>(l: &LinkingForm<R>) -> String {
    let mut s = format!("linking form over {}, epsilon {}\n", l.tag(), l.epsilon());
    let d: Vec<String> = l.invariant_factors().iter().map(|x| x.to_string()).collect();
    let _ = writeln!(s, "invariant factors: [{}]", d.join(", "));
    let _ = writeln!(s, "gram:");
    for r in l.gram().to_rows() {
        let r: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "  [{}]", r.join(", "));
    }
    s
}

fn dw_text(c: &DWClass) -> String {
    let mut s = format!("double Witt class over {}{}\n", c.ring, if c.complete { "" } else { " (signatures only)" });
    if c.entries.is_empty() {
        s.push_str("  0\n");
    }
    for e in &c.entries {
        let _ = writeln!(s, "  ({}, l={}): {}", e.prime, e.l, e.invariant);
    }
    s
}

fn witt_text(c: &WittClass) -> String {
    let mut s = format!("Witt class over {}{}\n", c.ring, if c.complete { "" } else { " (signatures only)" });
    if c.entries.is_empty() {
        s.push_str("  0\n");
    }
    for e in &c.entries {
        let _ = writeln!(s, "  {}: {}", e.prime, e.invariant);
    }
    s
}

fn oracle_text(r: &OracleReport) -> String {
    let mut s = String::new();
    match &r.witnesses.lagrangian {
        Some(g) => {
            let _ = writeln!(s, "metabolic: yes, lagrangian generated by {g:?}");
        }
        None => s.push_str("metabolic: no\n"),
    }
    match &r.witnesses.hyperbolic_pair {
        Some([a, b]) => {
            let _ = writeln!(s, "hyperbolic: yes, complementary lagrangians {a:?} and {b:?}");
        }
        None => s.push_str("hyperbolic: no\n"),
    }
    s
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let bits = cli.places_precision;
    match &cli.command {
        Command::Cover { input } => {
            let f = seifert_form_from_json(&read_input(input)?)?;
            let l = covering(&f)?.form;
            Ok(Output { text: form_text(&l), json: Some(linking_form_to_json(&l)) })
        }
        Command::Multisig { input } => {
            let c = match AnyLinkingForm::from_json(&read_input(input)?)? {
                AnyLinkingForm::Int(l) => multisignature_with_precision(&l, bits)?,
                AnyLinkingForm::Laurent(l) => multisignature_with_precision(&l, bits)?,
            };
            Ok(Output { text: dw_text(&c), json: Some(dw_class_to_json(&c)) })
        }
        Command::Wittclass { input } => {
            let c = match AnyLinkingForm::from_json(&read_input(input)?)? {
                AnyLinkingForm::Int(l) => witt_class_via_devissage_with_precision(&l, bits)?,
                AnyLinkingForm::Laurent(l) => witt_class_via_devissage_with_precision(&l, bits)?,
            };
            Ok(Output { text: witt_text(&c), json: Some(witt_class_to_json(&c)) })
        }
        Command::Forgetful { input } => {
            let c = forgetful(&dw_class_from_json(&read_input(input)?)?)?;
            Ok(Output { text: witt_text(&c), json: Some(witt_class_to_json(&c)) })
        }
        Command::Oracle { input } => {
            let l = int_form_from_json(&read_input(input)?)?;
            let max = cli.max_oracle_size;
            let r = OracleReport::new(oracle_is_metabolic(&l, max)?, oracle_is_hyperbolic(&l, max)?);
            Ok(Output { text: oracle_text(&r), json: Some(r.to_json()) })
        }
        Command::Report { input } => {
            let f = seifert_form_from_json(&read_input(input)?)?;
            let r = doubly_slice_report_with_precision(&f, bits)?;
            Ok(Output { text: format!("{r}\n"), json: Some(report_to_json(&r)) })
        }
        Command::Selftest => {
            let checks = run_selftest(cli.max_oracle_size);
            let mut text = String::new();
            for c in &checks {
                let _ = writeln!(text, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(text, "{}/{} checks passed", checks.len() - failed, checks.len());
            print!("{text}");
            if failed > 0 {
                return Err(Failure::Selftest(failed));
            }
            Ok(Output { text: String::new(), json: None })
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    if let (Some(path), Some(json)) = (&cli.output, &out.json) {
        std::fs::write(path, format!("{json}\n")).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    let mut stdout = std::io::stdout().lock();
    let res = match (&out.json, cli.json) {
        (Some(json), true) if cli.output.is_none() => writeln!(stdout, "{json}"),
        (_, true) => Ok(()),
        (_, false) => write!(stdout, "{}", out.text),
    };
    res.map_err(|e| Failure::Io(format!("stdout: {e}")))
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ").to_string();
            let f = Failure::Usage(first);
            eprintln!("{}", f.line());
            return f.code();
        }
    };
    if cli.places_precision > MAX_PLACE_BITS {
        let f = Failure::Usage(format!("--places-precision must be at most {MAX_PLACE_BITS}"));
        eprintln!("{}", f.line());
        return f.code();
    }
    match execute(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("{}", f.line());
            f.code()
        }
    }
}
