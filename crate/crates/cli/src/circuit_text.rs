//! Line-oriented circuit files.
//!
//! ```text
//! # Bell pair
//! q 2
//! h 0
//! cnot 0 1
//! rz 1 0.25
//! pauli_rotation XZ 1.5
//! ```
//!
//! The first statement is `q <n>`; every other line holds one gate with
//! lowercase mnemonic, qubit indices and angles in radians.

use std::fmt;

use vqe_core::pauli::PauliString;
use vqe_core::statevector::{Angle, Circuit, Gate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for CircuitParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for CircuitParseError {}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                tokens.push(Token { text: &line[s..i], column: s + 1 });
                start = None;
            }
            _ => {}
        }
    }
    tokens
}

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        last_line = line_no;
        let code = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(code);
        let Some(head) = tokens.first() else { continue };
        let err = |column: usize, message: String| CircuitParseError { line: line_no, column, message };

        let qubit = |k: usize| -> Result<usize, CircuitParseError> {
            let t = tokens.get(k).ok_or_else(|| err(code.len() + 1, format!("`{}` needs more operands", head.text)))?;
            t.text.parse().map_err(|_| err(t.column, format!("`{}` is not a qubit index", t.text)))
        };
        let angle = |k: usize| -> Result<f64, CircuitParseError> {
            let t = tokens.get(k).ok_or_else(|| err(code.len() + 1, format!("`{}` needs an angle", head.text)))?;
            t.text
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(t.column, format!("`{}` is not an angle", t.text)))
        };
        let arity = |n: usize| -> Result<(), CircuitParseError> {
            match tokens.get(n + 1) {
                Some(extra) => Err(err(extra.column, format!("unexpected operand `{}`", extra.text))),
                None => Ok(()),
            }
        };

        let Some(c) = circuit.as_mut() else {
            if head.text != "q" {
                return Err(err(head.column, "expected `q <n>` header".into()));
            }
            let n = qubit(1)?;
            arity(1)?;
            if n == 0 || n > vqe_core::statevector::MAX_QUBITS {
                return Err(err(tokens[1].column, format!("unsupported qubit count {n}")));
            }
            circuit = Some(Circuit::new(n));
            continue;
        };

        let gate = match head.text {
            "i" | "x" | "y" | "z" | "h" | "s" | "t" => {
                let q = qubit(1)?;
                arity(1)?;
                match head.text {
                    "i" => Gate::I(q),
                    "x" => Gate::X(q),
                    "y" => Gate::Y(q),
                    "z" => Gate::Z(q),
                    "h" => Gate::H(q),
                    "s" => Gate::S(q),
                    _ => Gate::T(q),
                }
            }
            "rx" | "ry" | "rz" => {
                let (q, theta) = (qubit(1)?, angle(2)?);
                arity(2)?;
                match head.text {
                    "rx" => Gate::rx(q, theta),
                    "ry" => Gate::ry(q, theta),
                    _ => Gate::rz(q, theta),
                }
            }
            "cnot" | "cx" => {
                let (control, target) = (qubit(1)?, qubit(2)?);
                arity(2)?;
                Gate::cnot(control, target)
            }
            "pauli_rotation" => {
                let letters = tokens.get(1).ok_or_else(|| err(code.len() + 1, "missing Pauli string".into()))?;
                let axis: PauliString =
                    letters.text.parse().map_err(|e: vqe_core::Error| err(letters.column, e.to_string()))?;
                let theta = angle(2)?;
                arity(2)?;
                Gate::PauliRotation { axis, angle: Angle::Value(theta) }
            }
            other => return Err(err(head.column, format!("unknown gate `{other}`"))),
        };
        c.push(gate).map_err(|e| err(head.column, e.to_string()))?;
    }
    circuit.ok_or(CircuitParseError { line: last_line.max(1), column: 1, message: "missing `q <n>` header".into() })
}
