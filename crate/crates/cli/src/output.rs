//! JSON emission, float rounding and the exit-code contract.

use std::io::Write;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Map, Value};
use spextral::numfmt::round_sig;

pub const SCHEMA: &str = "spextral/1";
pub const SIG_DIGITS: usize = 15;

pub const EXIT_ARGUMENT: u8 = 2;
pub const EXIT_COMPUTATION: u8 = 3;
pub const EXIT_VERIFICATION: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    kind: &'static str,
    code: u8,
    message: String,
}

impl Failure {
    pub fn argument(message: impl Into<String>) -> Self {
        Failure {
            kind: "argument",
            code: EXIT_ARGUMENT,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Failure {
            kind: "verification",
            code: EXIT_VERIFICATION,
            message: message.into(),
        }
    }

    pub fn report(self) -> ExitCode {
        let body = json!({
            "schema": SCHEMA,
            "error": { "kind": self.kind, "message": self.message },
            "exit_code": self.code,
        });
        eprintln!("{body}");
        ExitCode::from(self.code)
    }
}

impl From<spextral::Error> for Failure {
    fn from(e: spextral::Error) -> Self {
        if e.is_argument_error() {
            Failure::argument(e.to_string())
        } else {
            Failure {
                kind: "computation",
                code: EXIT_COMPUTATION,
                message: e.to_string(),
            }
        }
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = serde_json::Number::from_f64(round_sig(x, SIG_DIGITS)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Writes one line to stdout. A closed pipe (`| head`) is not reported.
pub fn print_line(line: impl std::fmt::Display) -> CliResult {
    match writeln!(std::io::stdout().lock(), "{line}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure {
            kind: "computation",
            code: EXIT_COMPUTATION,
            message: format!("cannot write output: {e}"),
        }),
        _ => Ok(()),
    }
}

/// Prints `body` as one JSON object tagged with the schema version, reals
/// rounded to 15 significant digits.
pub fn emit(body: &impl Serialize) -> CliResult {
    let mut value = serde_json::to_value(body)
        .map_err(|e| Failure::argument(format!("cannot serialize output: {e}")))?;
    round_floats(&mut value);
    let mut out = Map::new();
    out.insert("schema".into(), Value::String(SCHEMA.into()));
    match value {
        Value::Object(map) => out.extend(map),
        other => {
            out.insert("result".into(), other);
        }
    }
    print_line(Value::Object(out))
}
