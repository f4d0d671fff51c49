mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use commands::{Cli, Failure, Outcome};

pub(crate) fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("runtime_ms");
            map.values_mut().for_each(strip_runtime);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("YBX_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("invalid value for `YBX_THREADS`: expected a positive integer, got '{raw}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("invalid value for `YBX_THREADS`: {e}"))
}

fn print(envelope: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(envelope)
    } else {
        serde_json::to_string(envelope)
    }
    .expect("envelope is plain JSON");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let command: Vec<&str> = argv.iter().skip(1).map(String::as_str).collect();
    let start = Instant::now();

    let result = configure_threads()
        .map_err(Failure::Usage)
        .and_then(|()| commands::run(&cli.command));
    let wall_time_ms = start.elapsed().as_millis() as u64;

    let (envelope, code) = match result {
        Ok(Outcome {
            convention,
            mut payload,
            passed,
        }) => {
            strip_runtime(&mut payload);
            let verdict = if passed { "pass" } else { "fail" };
            let env = json!({
                "command": command,
                "version": env!("CARGO_PKG_VERSION"),
                "convention": convention,
                "payload": payload,
                "verdict": verdict,
                "wall_time_ms": wall_time_ms,
            });
            (env, if passed { 0 } else { 1 })
        }
        Err(failure) => {
            let message = failure.to_string();
            eprintln!("ybx: error: {message}");
            let env = json!({
                "command": command,
                "version": env!("CARGO_PKG_VERSION"),
                "convention": Value::Null,
                "payload": {"error": message},
                "verdict": "error",
                "wall_time_ms": wall_time_ms,
            });
            (env, 2)
        }
    };
    print(&envelope, cli.pretty);
    ExitCode::from(code)
}
