use std::fmt;
use std::time::Instant;

use hyperalg::{AxiomReport, Error};
use serde::Serialize;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A failed run: usage and parse problems exit 2, mathematical ones exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Math(_) => EXIT_FAIL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Math(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotDoublyDistributive(_)
            | Error::NotMultiplicativelyClosed(_)
            | Error::NotInEssentialImage(_)
            | Error::NotMultiplicative { .. } => CliError::Math(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub verdicts: Vec<Verdict>,
    pub output: Vec<String>,
    pub error: Option<String>,
    pub millis: u128,
    pub exit_code: i32,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            verdicts: Vec::new(),
            output: Vec::new(),
            error: None,
            millis: 0,
            exit_code: EXIT_PASS,
            started: Some(Instant::now()),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.output.push(s.into());
    }

    pub fn verdict(&mut self, check: &str, pass: bool, witnesses: Vec<String>) {
        self.verdicts.push(Verdict { check: check.into(), pass, witnesses });
    }

    /// Records an axiom sweep; `label` renders witness entries.
    pub fn axioms(&mut self, check: &str, rep: &AxiomReport, label: impl Fn(usize) -> String) {
        let mut w: Vec<String> = rep
            .violations
            .iter()
            .map(|v| {
                let shown: Vec<String> = v.witness.iter().map(|&i| label(i)).collect();
                format!("{}: [{}]", v.axiom, shown.join(", "))
            })
            .collect();
        if rep.truncated {
            w.push("more violations omitted".into());
        }
        self.verdict(check, rep.passed(), w);
    }

    pub fn finish(&mut self, outcome: CliResult<()>) {
        if let Some(t) = self.started {
            self.millis = t.elapsed().as_millis();
        }
        self.exit_code = match outcome {
            Ok(()) if self.verdicts.iter().all(|v| v.pass) => EXIT_PASS,
            Ok(()) => EXIT_FAIL,
            Err(e) => {
                let code = e.exit_code();
                self.error = Some(e.to_string());
                code
            }
        };
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "$ hyperalg {}", self.command.join(" "))?;
        for line in &self.output {
            writeln!(f, "{line}")?;
        }
        for v in &self.verdicts {
            writeln!(f, "[{}] {}", if v.pass { "pass" } else { "FAIL" }, v.check)?;
            for w in &v.witnesses {
                writeln!(f, "  witness {w}")?;
            }
        }
        if let Some(e) = &self.error {
            writeln!(f, "error: {e}")?;
        }
        writeln!(f, "time: {} ms", self.millis)?;
        write!(f, "exit: {}", self.exit_code)
    }
}
