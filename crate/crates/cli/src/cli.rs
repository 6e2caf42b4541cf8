//! Command-line grammar and the process-level driver.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use crate::error::{CliError, CliResult, ErrorCode};
use crate::params::{Paradox, Params};
use crate::render;
use crate::run::{self, Settings};

#[derive(Debug, Parser)]
#[command(
    name = "paradoxlab",
    allow_negative_numbers = true,
    about = "Build, measure and refute classic geometric limit paradoxes",
    after_help = "Paradoxes: koch, horn, staircase, dissection, wheel. Use `serve --port P` for the HTTP API."
)]
pub struct Args {
    /// Paradox to run, or `serve`.
    pub target: String,
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long = "R")]
    pub r: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long = "omega-deg")]
    pub omega_deg: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub upper: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long)]
    pub steps: Option<String>,
    #[arg(long, default_value = "json")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub port: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
    Table,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            "table" => Ok(Format::Table),
            _ => Err(CliError::invalid_parameter(
                "format",
                format!("format must be one of json, svg, table, got {s:?}"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub params: Params,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub enum Command {
    Run(RunRequest),
    Serve(u16),
}

impl Args {
    fn pairs(&self) -> Vec<(&'static str, &str)> {
        [
            ("model", &self.model),
            ("R", &self.r),
            ("lambda", &self.lambda),
            ("omega_deg", &self.omega_deg),
            ("a", &self.a),
            ("n", &self.n),
            ("upper", &self.upper),
            ("k", &self.k),
            ("rho", &self.rho),
            ("steps", &self.steps),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect()
    }

    pub fn command(&self) -> CliResult<Command> {
        if self.target == "serve" {
            if let Some((k, _)) = self.pairs().first() {
                return Err(CliError::invalid_parameter(k, "serve takes only --port"));
            }
            let port = self
                .port
                .as_deref()
                .ok_or_else(|| CliError::invalid_parameter("port", "serve requires --port"))?;
            let port: u16 = port
                .parse()
                .map_err(|_| CliError::invalid_parameter("port", format!("port must be an integer, got {port:?}")))?;
            if port == 0 {
                return Err(CliError::precondition("port", "1 <= port <= 65535", port));
            }
            return Ok(Command::Serve(port));
        }
        let paradox: Paradox = self.target.parse()?;
        if self.port.is_some() {
            return Err(CliError::invalid_parameter("port", "--port applies only to serve"));
        }
        Ok(Command::Run(RunRequest {
            params: Params::parse(paradox, self.pairs())?,
            format: self.format.parse()?,
            out: self.out.clone(),
        }))
    }
}

/// Renders the requested artifact. An oracle failure still yields the
/// artifact alongside the error.
pub fn execute(req: &RunRequest, settings: &Settings) -> CliResult<(String, CliResult<()>)> {
    let out = run::run(&req.params, settings)?;
    let status = out.success();
    let text = match req.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out)
                .map_err(|e| CliError::new(ErrorCode::InvalidParameter, e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Table => render::table(&out),
        Format::Svg => render::svg(&run::geometry(&req.params)?),
    };
    Ok((text, status))
}

fn write_artifact(path: &PathBuf, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError {
        parameter: Some("out".into()),
        ..CliError::new(ErrorCode::UnwritablePath, format!("cannot write {}: {e}", path.display()))
    })
}

fn fail(e: &CliError) -> i32 {
    eprintln!("{}", e.to_json());
    e.code.exit_status()
}

/// Runs the program and returns its exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let settings = match Settings::from_env() {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let req = match args.command() {
        Ok(Command::Run(req)) => req,
        Ok(Command::Serve(port)) => {
            let rt = match tokio::runtime::Runtime::new() {
                Ok(rt) => rt,
                Err(e) => return fail(&CliError::new(ErrorCode::ServeFailed, e.to_string())),
            };
            return match rt.block_on(crate::serve::serve(port, settings)) {
                Ok(()) => 0,
                Err(e) => fail(&e),
            };
        }
        Err(e) => return fail(&e),
    };
    let (text, status) = match execute(&req, &settings) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let written = match &req.out {
        Some(path) => write_artifact(path, &text),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    };
    if let Err(e) = written {
        return fail(&e);
    }
    match status {
        Ok(()) => 0,
        Err(e) => fail(&e),
    }
}
