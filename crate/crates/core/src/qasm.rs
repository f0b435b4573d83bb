//! Deterministic OpenQASM-2-style emission and parse-back for the
//! `{H, X, P, CX}` gate set. Angles print with 17 significant digits so the
//! round trip reproduces the exact double.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

pub fn emit_qasm(circuit: &Circuit) -> String {
    let mut text = String::new();
    text.push_str("OPENQASM 2.0;\n");
    text.push_str("include \"qelib1.inc\";\n");
    text.push_str(&format!("qreg q[{}];\n", circuit.width()));
    for gate in circuit.gates() {
        match *gate {
            Gate::H(q) => text.push_str(&format!("h q[{q}];\n")),
            Gate::X(q) => text.push_str(&format!("x q[{q}];\n")),
            Gate::Phase { qubit, angle } => {
                text.push_str(&format!("p({angle:.16e}) q[{qubit}];\n"))
            }
            Gate::Cx { control, target } => {
                text.push_str(&format!("cx q[{control}],q[{target}];\n"))
            }
        }
    }
    text
}

fn qubit_index(token: &str) -> Result<u32> {
    let inner = token
        .trim()
        .strip_prefix("q[")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::invalid(format!("bad qubit reference {token:?}")))?;
    inner
        .parse()
        .map_err(|e| Error::invalid(format!("bad qubit index {inner:?}: {e}")))
}

pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty()
            || line.starts_with("//")
            || line.starts_with("OPENQASM")
            || line.starts_with("include")
        {
            continue;
        }
        let statement = line
            .strip_suffix(';')
            .ok_or_else(|| Error::invalid(format!("missing semicolon in {line:?}")))?
            .trim();
        if let Some(decl) = statement.strip_prefix("qreg") {
            let width = qubit_index(decl.trim())?;
            circuit = Some(Circuit::new(width)?);
            continue;
        }
        let circuit = circuit
            .as_mut()
            .ok_or_else(|| Error::invalid("gate before qreg declaration"))?;
        if let Some(rest) = statement.strip_prefix("h ") {
            circuit.h(qubit_index(rest)?)?;
        } else if let Some(rest) = statement.strip_prefix("x ") {
            circuit.x(qubit_index(rest)?)?;
        } else if let Some(rest) = statement.strip_prefix("cx ") {
            let mut parts = rest.split(',');
            let control = qubit_index(parts.next().unwrap_or_default())?;
            let target = qubit_index(
                parts
                    .next()
                    .ok_or_else(|| Error::invalid(format!("cx needs two qubits in {line:?}")))?,
            )?;
            circuit.cx(control, target)?;
        } else if let Some(rest) = statement.strip_prefix("p(") {
            let close = rest
                .find(')')
                .ok_or_else(|| Error::invalid(format!("unclosed angle in {line:?}")))?;
            let angle: f64 = rest[..close]
                .trim()
                .parse()
                .map_err(|e| Error::invalid(format!("bad angle in {line:?}: {e}")))?;
            circuit.phase(qubit_index(&rest[close + 1..])?, angle)?;
        } else {
            return Err(Error::invalid(format!("unsupported statement {line:?}")));
        }
    }
    circuit.ok_or_else(|| Error::invalid("no qreg declaration found"))
}
