//! Command-line front end.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a verification
//! or congruence sweep fails, 2 on flag errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bernoulli::{bernoulli, homogenize, BernoulliKey};
use crate::derivation::{self, Derivation};
use crate::encoding::{derivation_to_json, poly_to_json, unipoly_to_json};
use crate::verifier::{self, SaitoMode, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::Family;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "shi-basis", version, about = "Bases for the cones over the Shi arrangements of types B and C")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Bernoulli-like polynomial B^family_{r,s}.
    Bernoulli {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// Print the homogenization z^(r+2s) B(x/z) instead.
        #[arg(long)]
        homogeneous: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print θ_E and phi_1, ..., phi_l.
    Basis {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify membership, the restriction identity and Saito's criterion.
    Verify {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = parse_trials)]
        trials: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the congruences of the homogenized polynomials over an (r, s, ε) grid.
    Congruence {
        #[command(flatten)]
        target: TargetArgs,
        /// Largest r (default 2l + 2).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_r: Option<u32>,
        /// Largest s (default l).
        #[arg(long)]
        max_s: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long, value_parser = parse_rank)]
    pub rank: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the document here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Probabilistic,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_rank(s: &str) -> Result<usize, String> {
    let rank: usize = s.parse().map_err(|e| format!("{e}"))?;
    if rank < 1 {
        return Err("rank must be at least 1".into());
    }
    Ok(rank)
}

fn parse_trials(s: &str) -> Result<usize, String> {
    let trials: usize = s.parse().map_err(|e| format!("{e}"))?;
    if trials < 1 {
        return Err("trials must be at least 1".into());
    }
    Ok(trials)
}

/// What a run produced: the exit code and the text for stdout/stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn run(config: &CliConfig) -> Outcome {
    let (code, document, output) = match &config.command {
        Command::Bernoulli { family, r, s, homogeneous, output } => {
            let key = BernoulliKey::new(*family, *r, *s).expect("r >= 1 is enforced by the parser");
            (EXIT_PASS, render_bernoulli(key, *homogeneous, output.format), output)
        }
        Command::Basis { target, output } => {
            let basis = derivation::basis(target.family, target.rank).expect("rank >= 1 is enforced by the parser");
            (EXIT_PASS, render_basis(target, &basis, output.format), output)
        }
        Command::Verify { target, mode, seed, trials, output } => {
            if output.format == Format::Latex {
                return Outcome::usage("verify supports --format json or text");
            }
            let mode = match mode {
                Mode::Exact => SaitoMode::Exact,
                Mode::Probabilistic => SaitoMode::Probabilistic { seed: *seed, trials: *trials },
            };
            let cert = verifier::full_verify(target.family, target.rank, mode).expect("rank >= 1 is enforced by the parser");
            let doc = match output.format {
                Format::Json => to_json(&cert.to_json()),
                _ => format!("{cert}\n"),
            };
            (if cert.passed() { EXIT_PASS } else { EXIT_FAIL }, doc, output)
        }
        Command::Congruence { target, max_r, max_s, output } => {
            if output.format == Format::Latex {
                return Outcome::usage("congruence supports --format json or text");
            }
            let max_r = max_r.unwrap_or(2 * target.rank as u32 + 2);
            let max_s = max_s.unwrap_or(target.rank as u32);
            let (checked, failures) =
                verifier::congruence_sweep(target.family, target.rank, max_r, max_s).expect("arguments validated by the parser");
            let status = if failures.is_empty() { "PASS" } else { "FAIL" };
            let doc = match output.format {
                Format::Json => to_json(&json!({
                    "family": target.family,
                    "rank": target.rank,
                    "max_r": max_r,
                    "max_s": max_s,
                    "checked": checked,
                    "failures": failures
                        .iter()
                        .map(|(r, s, p, q, eps)| json!({"r": r, "s": s, "p": p, "q": q, "epsilon": eps}))
                        .collect::<Vec<_>>(),
                    "status": status,
                })),
                _ => {
                    let mut text = format!(
                        "type {}{}: {checked} congruences checked for r <= {max_r}, s <= {max_s}, epsilon in {{-1, 0, 1}}\n",
                        target.family, target.rank
                    );
                    for (r, s, p, q, eps) in &failures {
                        text.push_str(&format!("  FAIL r={r} s={s} p={p} q={q} epsilon={eps}\n"));
                    }
                    text.push_str(&format!("status: {status}\n"));
                    text
                }
            };
            (if failures.is_empty() { EXIT_PASS } else { EXIT_FAIL }, doc, output)
        }
    };
    match &output.out {
        Some(path) => match std::fs::write(path, &document) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome::usage(format!("cannot write {}: {e}\n", path.display())),
        },
        None => Outcome { code, stdout: document, stderr: String::new() },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn render_bernoulli(key: BernoulliKey, homogeneous: bool, format: Format) -> String {
    if homogeneous {
        let p = homogenize(key, 2, 0);
        match format {
            Format::Json => to_json(&poly_to_json(&p)),
            Format::Latex => format!("{}\n", p.to_latex().replace("x_{1}", "x")),
            Format::Text => format!("{}\n", p.render(&["x".to_string(), "z".to_string()], "*")),
        }
    } else {
        let p = bernoulli(key);
        match format {
            Format::Json => to_json(&unipoly_to_json(&p)),
            Format::Latex => format!("{}\n", p.to_latex()),
            Format::Text => format!("{p}\n"),
        }
    }
}

fn render_basis(target: &TargetArgs, basis: &[Derivation], format: Format) -> String {
    match format {
        Format::Json => to_json(&json!({
            "family": target.family,
            "rank": target.rank,
            "derivations": basis.iter().map(derivation_to_json).collect::<Vec<_>>(),
        })),
        Format::Text => basis.iter().map(|d| format!("{d}\n")).collect(),
        Format::Latex => {
            let mut out = String::from("\\begin{align*}\n");
            for (j, d) in basis.iter().enumerate() {
                let name = if j == 0 { "\\theta_{E}".to_string() } else { format!("\\varphi_{{{j}}}^{{{}}}", target.family) };
                let slots = std::iter::once(("z".to_string(), &d.z_coeff))
                    .chain(d.x_coeffs.iter().enumerate().map(|(i, c)| ((i + 1).to_string(), c)));
                let terms: Vec<String> = slots
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(slot, c)| format!("\\left({}\\right)\\partial_{{{slot}}}", c.to_latex()))
                    .collect();
                let sep = if j + 1 < basis.len() { " \\\\" } else { "" };
                out.push_str(&format!("{name} &= {}{sep}\n", terms.join(" + ")));
            }
            out.push_str("\\end{align*}\n");
            out
        }
    }
}
