//! Running an external SMT-LIB solver.

use std::io::Read;
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::Duration;

use wait_timeout::ChildExt;

use crate::error::Error;

/// Environment variable holding the solver command.
pub const SOLVER_ENV: &str = "HPILOT_SOLVER";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverStatus {
    Sat,
    Unsat,
    Unknown,
}

/// A solver command as an argv template. `{}` marks the script path; without it the path is appended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub argv: Vec<String>,
    pub timeout: Option<Duration>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { argv: vec!["z3".into()], timeout: None }
    }
}

impl SolverConfig {
    pub fn parse(cmd: &str) -> Result<SolverConfig, Error> {
        let argv: Vec<String> = cmd.split_whitespace().map(str::to_string).collect();
        if argv.is_empty() {
            return Err(Error::Solver("empty solver command".into()));
        }
        Ok(SolverConfig { argv, timeout: None })
    }

    /// `HPILOT_SOLVER` when set, `z3` otherwise.
    pub fn from_env() -> Result<SolverConfig, Error> {
        match std::env::var(SOLVER_ENV) {
            Ok(cmd) if !cmd.trim().is_empty() => SolverConfig::parse(&cmd),
            _ => Ok(SolverConfig::default()),
        }
    }

    pub fn with_timeout(mut self, timeout: Option<Duration>) -> SolverConfig {
        self.timeout = timeout;
        self
    }

    pub fn command_line(&self, script: &Path) -> Vec<String> {
        let path = script.display().to_string();
        let mut argv: Vec<String> = self.argv.iter().map(|a| a.replace("{}", &path)).collect();
        if !self.argv.iter().any(|a| a.contains("{}")) {
            argv.push(path);
        }
        argv
    }
}

#[derive(Clone, Debug)]
pub struct SolverOutput {
    pub status: SolverStatus,
    /// Everything after the status line.
    pub rest: String,
    /// Why the status is unknown, when the solver did not answer cleanly.
    pub reason: Option<String>,
}

impl SolverOutput {
    fn unknown(reason: String) -> SolverOutput {
        SolverOutput { status: SolverStatus::Unknown, rest: String::new(), reason: Some(reason) }
    }
}

/// First line `sat` / `unsat` / `unknown`; anything else is an unknown with the text as reason.
pub fn parse_output(stdout: &str) -> SolverOutput {
    let mut lines = stdout.lines().skip_while(|l| l.trim().is_empty());
    let first = lines.next().unwrap_or("").trim();
    let rest = lines.collect::<Vec<_>>().join("\n");
    let status = match first {
        "sat" => SolverStatus::Sat,
        "unsat" => SolverStatus::Unsat,
        "unknown" => return SolverOutput { status: SolverStatus::Unknown, rest, reason: None },
        "" => return SolverOutput::unknown("solver produced no output".into()),
        other => return SolverOutput::unknown(format!("unexpected solver output: {other}")),
    };
    SolverOutput { status, rest, reason: None }
}

/// Runs the solver on a script file. Failures to start or a timeout come back as unknown.
pub fn run(config: &SolverConfig, script: &Path) -> SolverOutput {
    let argv = config.command_line(script);
    let child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn();
    let mut child = match child {
        Ok(c) => c,
        Err(e) => return SolverOutput::unknown(format!("cannot start `{}`: {e}", argv[0])),
    };
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let finished = match config.timeout {
        Some(t) => child.wait_timeout(t).map(|s| s.is_some()),
        None => child.wait().map(|_| true),
    };
    match finished {
        Ok(true) => {}
        Ok(false) => {
            let _ = child.kill();
            let _ = child.wait();
            return SolverOutput::unknown("solver timed out".into());
        }
        Err(e) => return SolverOutput::unknown(format!("waiting for solver: {e}")),
    }
    parse_output(&reader.join().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_and_append() {
        let p = Path::new("/tmp/x.smt2");
        let c = SolverConfig::parse("z3 -smt2").unwrap();
        assert_eq!(c.command_line(p), ["z3", "-smt2", "/tmp/x.smt2"]);
        let c = SolverConfig::parse("cvc5 --lang smt2 {} --quiet").unwrap();
        assert_eq!(c.command_line(p), ["cvc5", "--lang", "smt2", "/tmp/x.smt2", "--quiet"]);
        assert!(SolverConfig::parse("  ").is_err());
    }

    #[test]
    fn status_lines() {
        assert_eq!(parse_output("unsat\n").status, SolverStatus::Unsat);
        let o = parse_output("sat\n(\n  (define-fun c () Int 1)\n)\n");
        assert_eq!(o.status, SolverStatus::Sat);
        assert!(o.rest.contains("define-fun"));
        let o = parse_output("(error \"line 3\")\n");
        assert_eq!(o.status, SolverStatus::Unknown);
        assert!(o.reason.unwrap().contains("error"));
    }

    #[test]
    fn missing_binary_is_unknown() {
        let c = SolverConfig::parse("/nonexistent/solver-binary").unwrap();
        let o = run(&c, Path::new("/tmp/none.smt2"));
        assert_eq!(o.status, SolverStatus::Unknown);
    }
}
