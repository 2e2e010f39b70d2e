//! The `hall` command line.
//!
//! Exit codes: 0 verified/success, 1 verification failure, 2 usage error.
//! Payload goes to stdout (or `--out`), diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::families::{
    build_cubic, corpus, danilov_cubic_identity, danilov_quartic_identity, pell_agreement, reduce_family, verify_entry,
    verify_quartic_k3, verify_record, FamilyRecord, HallFamilyInstance, VerificationReport,
};
use crate::numeric::{
    count_s, danilov_stream, hall_compare, scan_family, specialize, EpsRational, HallOrdering, HallWitness,
};
use crate::sequences::{pell_norm1_seq, pell_norm2_seq, uv_bridge, DEFAULT_INDEX_BOUND};
use crate::uvring::{closed_form_difference, AnsatzCoefficients};
use crate::zpoly::IntPoly;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Polynomials above this degree print one term per line in text mode.
const MULTILINE_DEGREE: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "hall", version, about = "Integer polynomial families with small x^3 - y^2, verified exactly")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the family member for an odd k.
    Construct(ConstructArgs),
    /// Run one of the exact verification suites.
    Verify(VerifyArgs),
    /// Integer witnesses: specialization, scans, Danilov stream, counting.
    Hall(HallArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also emit X = x/(t^2+1), Y = y/(t^2+1)^2 and r = X^3 - (t^2+1) Y^2.
    #[arg(long)]
    reduced: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Family,
    Corpus,
    DanilovCubic,
    DanilovQuartic,
    QuarticK3,
    Ansatz,
    Pell,
    /// Re-verify a family JSON file produced by `construct`.
    Instance,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: VerifyTarget,
    /// Largest odd k for `family` and `ansatz`.
    #[arg(long, default_value_t = 99)]
    k_max: usize,
    /// Largest Pell index for `pell`.
    #[arg(long, default_value_t = 40)]
    j_max: usize,
    /// Input file for `instance`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HallArgs {
    #[command(subcommand)]
    command: HallCommand,
    /// Write witness JSONL here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum HallCommand {
    /// Evaluate the family member k at t.
    Specialize {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: BigInt,
    },
    /// Evaluate the family member k at every t in [t-from, t-to].
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        t_from: i64,
        #[arg(long, allow_hyphen_values = true)]
        t_to: i64,
    },
    /// First n witnesses from z^2 - 5w^2 = -1.
    Danilov {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Family witnesses with x <= N and 0 < |d| < x^(1/2 + eps).
    CountS {
        #[arg(long)]
        eps: EpsRational,
        #[arg(long = "N")]
        n: BigInt,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
    Error,
}

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub command: String,
    pub payload: Value,
}

enum Outcome {
    Result(CommandResult),
    Text(String),
    Lines { command: String, witnesses: Vec<HallWitness>, out: Option<PathBuf> },
    Usage(String),
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome::Usage(msg.into())
}

fn validate_k(k: i64) -> std::result::Result<usize, Outcome> {
    if k < 3 || k % 2 == 0 || k as usize > DEFAULT_INDEX_BOUND {
        return Err(usage(format!("--k must be odd with 3 <= k <= {DEFAULT_INDEX_BOUND}, got {k}")));
    }
    Ok(k as usize)
}

fn result(command: &str, verified: bool, payload: Value) -> Outcome {
    Outcome::Result(CommandResult {
        status: if verified { Status::Verified } else { Status::Failed },
        command: command.to_string(),
        payload,
    })
}

fn error_result(command: &str, e: &Error) -> Outcome {
    Outcome::Result(CommandResult {
        status: Status::Error,
        command: command.to_string(),
        payload: json!({ "error": e.to_string() }),
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable payload")
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let started = Instant::now();
    let outcome = match cli.command {
        Command::Construct(args) => construct(&args),
        Command::Verify(args) => verify(&args),
        Command::Hall(args) => hall(args),
    };
    log::info!("finished in {:.3}s", started.elapsed().as_secs_f64());
    emit(outcome, stdout, stderr)
}

fn emit(outcome: Outcome, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let write_json = |out: &mut dyn Write, r: &CommandResult| -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, r)?;
        out.write_all(b"\n")
    };
    let io_result = match outcome {
        Outcome::Usage(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Outcome::Text(text) => stdout.write_all(text.as_bytes()).map(|_| EXIT_OK),
        Outcome::Result(r) => {
            if r.status == Status::Error {
                let _ = writeln!(stderr, "error: {}", r.payload["error"].as_str().unwrap_or("unknown"));
            }
            let code = if r.status == Status::Verified { EXIT_OK } else { EXIT_FAILED };
            write_json(stdout, &r).map(|_| code)
        }
        Outcome::Lines { command, witnesses, out } => {
            let mut body = String::new();
            for w in &witnesses {
                body.push_str(&serde_json::to_string(w).expect("serializable witness"));
                body.push('\n');
            }
            match out {
                None => stdout.write_all(body.as_bytes()).map(|_| EXIT_OK),
                Some(path) => match fs::write(&path, body) {
                    Ok(()) => {
                        let r = CommandResult {
                            status: Status::Verified,
                            command,
                            payload: json!({ "count": witnesses.len(), "out": path.display().to_string() }),
                        };
                        write_json(stdout, &r).map(|_| EXIT_OK)
                    }
                    Err(e) => {
                        let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                },
            }
        }
    };
    match io_result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILED
        }
    }
}

fn ratio_string(inst: &HallFamilyInstance) -> String {
    let (dx, _, dd) = inst.degrees();
    Rational64::new(dd as i64, dx as i64).to_string()
}

fn poly_text(name: &str, p: &IntPoly) -> String {
    if p.deg().unwrap_or(0) > MULTILINE_DEGREE {
        format!("{name} =\n{}\n", p.to_text_multiline("t", "  "))
    } else {
        format!("{name} = {p}\n")
    }
}

fn construct(args: &ConstructArgs) -> Outcome {
    let k = match validate_k(args.k) {
        Ok(k) => k,
        Err(o) => return o,
    };
    let inst = match build_cubic(k) {
        Ok(i) => i,
        Err(e) => return error_result("construct", &e),
    };
    let reduced = if args.reduced {
        match reduce_family(&inst) {
            Ok(r) => Some(r),
            Err(e) => return error_result("construct", &e),
        }
    } else {
        None
    };
    let (dx, dy, dd) = inst.degrees();
    match args.format {
        Format::Json => {
            let mut payload = to_value(&inst);
            payload["degrees"] = json!({ "x": dx, "y": dy, "d": dd });
            payload["ratio"] = json!(ratio_string(&inst));
            if let Some(r) = &reduced {
                payload["reduced"] = to_value(r);
            }
            result("construct", true, payload)
        }
        Format::Text => {
            let mut s = format!(
                "k = {}, delta = {}\ndeg x = {dx}, deg y = {dy}, deg d = {dd}, deg d / deg x = {}\n",
                inst.k(),
                inst.delta(),
                ratio_string(&inst)
            );
            for (name, p) in
                [("x", inst.x()), ("y", inst.y()), ("d", inst.d()), ("X", inst.reduced_x()), ("Y", inst.reduced_y())]
            {
                s.push_str(&poly_text(name, p));
            }
            if let Some(r) = &reduced {
                s.push_str(&poly_text("r", &r.r));
            }
            Outcome::Text(s)
        }
    }
}

fn verify(args: &VerifyArgs) -> Outcome {
    let reports = match args.target {
        VerifyTarget::Family => vec![verify_family(args.k_max)],
        VerifyTarget::Corpus => {
            let entries = match corpus() {
                Ok(c) => c,
                Err(e) => return error_result("verify corpus", &e),
            };
            let mut reports = Vec::new();
            for entry in &entries {
                match verify_entry(entry) {
                    Ok(r) => reports.push(r),
                    Err(e) => return error_result("verify corpus", &e),
                }
            }
            reports
        }
        VerifyTarget::DanilovCubic => vec![danilov_cubic_identity()],
        VerifyTarget::DanilovQuartic => vec![danilov_quartic_identity()],
        VerifyTarget::QuarticK3 => vec![verify_quartic_k3()],
        VerifyTarget::Ansatz => vec![verify_ansatz(args.k_max)],
        VerifyTarget::Pell => vec![verify_pell(args.j_max)],
        VerifyTarget::Instance => {
            let Some(path) = &args.input else {
                return usage("verify instance requires --input <file>");
            };
            match read_record(path) {
                Ok(rec) => vec![verify_record(&rec)],
                Err(msg) => return usage(msg),
            }
        }
    };
    let name = format!("verify {}", target_name(args.target));
    let verified = reports.iter().all(|r| r.verified);
    result(&name, verified, json!({ "reports": reports }))
}

fn target_name(t: VerifyTarget) -> String {
    t.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn read_record(path: &Path) -> std::result::Result<FamilyRecord, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut value: Value = serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}"))?;
    if let Some(payload) = value.get_mut("payload") {
        value = payload.take();
    }
    serde_json::from_value(value).map_err(|e| format!("not a family record: {e}"))
}

fn verify_family(k_max: usize) -> VerificationReport {
    let mut report = VerificationReport::new(format!("family k <= {k_max}"));
    for k in (3..=k_max.min(DEFAULT_INDEX_BOUND)).step_by(2) {
        let inst = match build_cubic(k) {
            Ok(i) => i,
            Err(e) => {
                report.check(format!("k = {k}"), false, e.to_string());
                continue;
            }
        };
        let (dx, dy, dd) = inst.degrees();
        let degrees_ok = (dx, dy, dd) == (2 * k - 2, 3 * k - 3, k + 4) && 2 * dd == dx + 10;
        let pell_ok = pell_agreement(k).is_ok_and(|a| a.x_agrees && a.d_agrees);
        let reduce_ok = reduce_family(&inst).is_ok();
        report.check(
            format!("k = {k}"),
            degrees_ok && pell_ok && reduce_ok,
            format!("degrees ({dx}, {dy}, {dd}), ratio {}, pell {pell_ok}, reduced {reduce_ok}", ratio_string(&inst)),
        );
    }
    report
}

fn verify_ansatz(k_max: usize) -> VerificationReport {
    let mut report = VerificationReport::new("ansatz");
    let coeffs = AnsatzCoefficients::solution();
    let residual = coeffs.residual();
    for (m, c) in &residual.listed {
        report.check(
            format!("coefficient of {m} vanishes"),
            c.is_zero(),
            if c.is_zero() { String::new() } else { c.to_string() },
        );
    }
    report.check(
        "x^3 - y^2 = -27 (t^2+1)^2 (2v - 2tu + 11t^2 + 11)",
        residual.remainder == closed_form_difference(),
        "",
    );
    let (x, y) = coeffs.build();
    for k in (3..=k_max.clamp(3, 41)).step_by(2) {
        let ok = match (x.substitute(k), y.substitute(k), build_cubic(k)) {
            (Ok(xs), Ok(ys), Ok(inst)) => &xs == inst.x() && &ys == inst.y(),
            _ => false,
        };
        report.check(format!("substitution at k = {k} matches construction"), ok, "");
    }
    report
}

fn verify_pell(j_max: usize) -> VerificationReport {
    let mut report = VerificationReport::new(format!("pell j <= {j_max}"));
    for j in 1..=j_max.min(DEFAULT_INDEX_BOUND) {
        let n1 = pell_norm1_seq(j).is_ok_and(|p| p.norm_holds());
        let n2 = pell_norm2_seq(j).is_ok_and(|p| p.norm_holds());
        let k = 2 * j + 1;
        let bridge = k > DEFAULT_INDEX_BOUND || uv_bridge(k).is_ok();
        report.check(
            format!("j = {j}"),
            n1 && n2 && bridge,
            format!("norm -1 {n1}, norm -2 {n2}, bridge k = {k} {bridge}"),
        );
    }
    report
}

fn hall(args: HallArgs) -> Outcome {
    let out = args.out;
    match args.command {
        HallCommand::Specialize { k, t } => {
            let k = match validate_k(k) {
                Ok(k) => k,
                Err(o) => return o,
            };
            let w = build_cubic(k).and_then(|inst| specialize(&inst, &t));
            match w {
                Ok(w) => Outcome::Lines { command: "hall specialize".into(), witnesses: vec![w], out },
                Err(e) => error_result("hall specialize", &e),
            }
        }
        HallCommand::Scan { k, t_from, t_to } => {
            let k = match validate_k(k) {
                Ok(k) => k,
                Err(o) => return o,
            };
            if t_to < t_from {
                return usage("--t-to must be at least --t-from");
            }
            match build_cubic(k).and_then(|inst| scan_family(&inst, t_from, t_to)) {
                Ok(ws) => Outcome::Lines { command: "hall scan".into(), witnesses: ws, out },
                Err(Error::InvalidArgument(msg)) => usage(msg),
                Err(e) => error_result("hall scan", &e),
            }
        }
        HallCommand::Danilov { n } => {
            if n == 0 {
                return usage("--n must be at least 1");
            }
            match danilov_stream(n) {
                Ok(ws) => Outcome::Lines { command: "hall danilov".into(), witnesses: ws, out },
                Err(e) => error_result("hall danilov", &e),
            }
        }
        HallCommand::CountS { eps, n } => {
            let report = match count_s(eps, &n) {
                Ok(r) => r,
                Err(Error::InvalidArgument(msg)) => return usage(msg),
                Err(e) => return error_result("hall count-s", &e),
            };
            if let Some(path) = &out {
                let mut body = String::new();
                for w in &report.witnesses {
                    body.push_str(&serde_json::to_string(w).expect("serializable witness"));
                    body.push('\n');
                }
                if let Err(e) = fs::write(path, body) {
                    return usage(format!("cannot write {}: {e}", path.display()));
                }
            }
            // A count of zero is a valid result for small N; what must hold is
            // monotone growth of x and the bound for every listed witness.
            let verified = !report.aborted_on_decrease
                && report.witnesses.iter().all(|w| hall_compare(w, eps) == HallOrdering::Below);
            result("hall count-s", verified, to_value(&report))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hall").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn construct_text_k3() {
        let (code, out, _) = run_capture(&["construct", "--k", "3", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("x = t^4 + 6*t^3 + 5*t^2 + 6*t + 4\n"), "{out}");
        assert!(out.contains("deg x = 4, deg y = 6, deg d = 7"));
    }

    #[test]
    fn construct_rejects_even_and_small_k() {
        for k in ["4", "1", "-3", "202"] {
            let (code, _, err) = run_capture(&["construct", "--k", k]);
            assert_eq!(code, 2, "k = {k}");
            assert!(err.contains("--k"));
        }
    }

    #[test]
    fn unknown_target_is_usage_error() {
        let (code, _, _) = run_capture(&["verify", "everything"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn count_s_requires_eps() {
        let (code, _, _) = run_capture(&["hall", "count-s", "--N", "1000"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn specialize_k3_t0() {
        let (code, out, _) = run_capture(&["hall", "specialize", "--k", "3", "--t", "0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!((v["x"].as_str(), v["y"].as_str(), v["d"].as_str()), (Some("4"), Some("19"), Some("-297")));
    }

    #[test]
    fn large_polynomials_print_one_term_per_line() {
        let (code, out, _) = run_capture(&["construct", "--k", "27", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("x =\n  281474976710656*t^52\n  + 3799912185593856*t^50\n"));
    }
}
