use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use cnsatz::textio::{format_ring, EvalAssertion, OutputMode};
use cnsatz::ring::RingSpec;

use crate::Session;

/// Top-level report; field order is fixed.
#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    ring: String,
    nvars: usize,
    seed: Option<u64>,
    result: &'a T,
    assertions: &'a [EvalAssertion],
}

pub fn assertion(name: &str, passed: bool) -> EvalAssertion {
    EvalAssertion {
        name: name.to_string(),
        passed,
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Prints the report and returns 0 when every assertion passed, 3 otherwise.
pub fn emit<T: Serialize>(
    session: &Session,
    command: &str,
    ring: &RingSpec,
    nvars: usize,
    result: &T,
    assertions: &[EvalAssertion],
) -> u8 {
    let report = Report {
        command,
        ring: format_ring(ring),
        nvars,
        seed: session.seed,
        result,
        assertions,
    };
    // Write errors (a closed pipe, say) are ignored; the exit status still
    // reflects the assertions.
    let mut out = std::io::stdout().lock();
    match session.output {
        OutputMode::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        OutputMode::Text => {
            let _ = writeln!(out, "command: {command}");
            let _ = writeln!(out, "ring: {}", report.ring);
            let _ = writeln!(out, "nvars: {nvars}");
            if let Some(s) = session.seed {
                let _ = writeln!(out, "seed: {s}");
            }
            match serde_json::to_value(result).expect("result serializes") {
                Value::Object(map) => {
                    for (k, v) in map {
                        let _ = writeln!(out, "{k}: {}", text_value(&v));
                    }
                }
                other => {
                    let _ = writeln!(out, "result: {}", text_value(&other));
                }
            }
            for a in assertions {
                let _ = writeln!(out, "assert {}: {}", a.name, if a.passed { "pass" } else { "FAIL" });
            }
        }
    }
    if assertions.iter().all(|a| a.passed) {
        0
    } else {
        3
    }
}
