//! Event scripts: one `instance event` injection per line, `#` comments,
//! plus `@stub` and `@input` directives.
//!
//! ```text
//! # three wrong PIN rounds
//! @stub verifyPINCode PIN_code_OK := false; errors := errors + 1
//! @input A1_IO1 42
//! controller ev3
//! controller ev8
//! ```
//!
//! Each `@stub <function> <statements>` line scripts one more invocation of
//! the function; the last one repeats. `@input <io> <literal>` queues a
//! value for an input io action.

use serde::{Deserialize, Serialize};

use crate::expr::{eval_expr, parse_expr, parse_stmts, Value};

use super::{SimError, StubBindings};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptEvent {
    pub line: usize,
    pub instance: String,
    pub event: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EventScript {
    pub stubs: StubBindings,
    pub inputs: Vec<(String, Value)>,
    pub events: Vec<ScriptEvent>,
}

fn syntax(line: usize, message: impl Into<String>) -> SimError {
    SimError::Script {
        line,
        message: message.into(),
    }
}

/// Splits off the first whitespace-delimited word.
fn word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim()),
        None => (s, ""),
    }
}

pub fn parse_script(text: &str) -> Result<EventScript, SimError> {
    let mut script = EventScript::default();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(rest) = content.strip_prefix('@') {
            let (directive, rest) = word(rest);
            let (name, body) = word(rest);
            if name.is_empty() || body.is_empty() {
                return Err(syntax(
                    line,
                    format!("`@{directive}` needs a name and a value"),
                ));
            }
            match directive {
                "stub" => {
                    let stmts = parse_stmts(body).map_err(|e| syntax(line, e.to_string()))?;
                    script.stubs.bind(name, stmts);
                }
                "input" => {
                    let e = parse_expr(body).map_err(|e| syntax(line, e.to_string()))?;
                    let v = eval_expr(&e, &std::collections::BTreeMap::new())
                        .map_err(|e| syntax(line, format!("input must be a constant: {e}")))?;
                    script.inputs.push((name.to_string(), v));
                }
                other => return Err(syntax(line, format!("unknown directive `@{other}`"))),
            }
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        let [instance, event] = parts.as_slice() else {
            return Err(syntax(line, "expected `instance event`"));
        };
        script.events.push(ScriptEvent {
            line,
            instance: instance.to_string(),
            event: event.to_string(),
        });
    }
    Ok(script)
}
