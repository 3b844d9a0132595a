//! Non-canceling arithmetic circuits: variable leaves, fan-in-2 addition and
//! multiplication gates, one output.
//!
//! Text format, one statement per line, `#` starts a comment:
//!
//! ```text
//! g1 = var x1
//! g2 = var x2
//! g3 = add g1 g2
//! g4 = mul g3 g3
//! output g4
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{dim, Error, ParseError, Result};
use crate::poly::{Caps, TruncatedPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    /// Variable `x_{i+1}`.
    Var(usize),
    /// Children are positions in the gate list.
    Add(usize, usize),
    Mul(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub id: u64,
    pub kind: GateKind,
}

/// Gates are stored in definition order, so children precede parents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticCircuit {
    gates: Vec<Gate>,
    output: usize,
    n: usize,
}

impl ArithmeticCircuit {
    /// Builds a circuit from gates in topological order, validating it as the
    /// parser would.
    pub fn new(gates: Vec<Gate>, output: usize) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut n = 0;
        for (pos, g) in gates.iter().enumerate() {
            if seen.insert(g.id, pos).is_some() {
                return Err(ParseError::DuplicateGate {
                    line: pos + 1,
                    gate: g.id,
                }
                .into());
            }
            match g.kind {
                GateKind::Var(i) => n = n.max(i + 1),
                GateKind::Add(a, b) | GateKind::Mul(a, b) => {
                    if let Some(&c) = [a, b].iter().find(|&&c| c >= pos) {
                        let gate = gates.get(c).map_or(0, |g| g.id);
                        return Err(ParseError::Cycle {
                            line: pos + 1,
                            gate,
                        }
                        .into());
                    }
                }
            }
        }
        if output >= gates.len() {
            return Err(ParseError::MissingOutput.into());
        }
        let circuit = ArithmeticCircuit { gates, output, n };
        if let Some(pos) = circuit.reachable().iter().position(|&r| !r) {
            return Err(ParseError::DanglingGate {
                gate: circuit.gates[pos].id,
            }
            .into());
        }
        Ok(circuit)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut live = vec![false; self.gates.len()];
        live[self.output] = true;
        for pos in (0..self.gates.len()).rev() {
            if !live[pos] {
                continue;
            }
            if let GateKind::Add(a, b) | GateKind::Mul(a, b) = self.gates[pos].kind {
                live[a] = true;
                live[b] = true;
            }
        }
        live
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Position of the output gate.
    pub fn output(&self) -> usize {
        self.output
    }

    /// Largest variable index used.
    pub fn num_variables(&self) -> usize {
        self.n
    }

    /// Number of gates, leaves included.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, assignment: &[BigInt]) -> Result<BigInt> {
        if assignment.len() < self.n {
            return Err(dim(format!(
                "circuit uses {} variables, assignment has {}",
                self.n,
                assignment.len()
            )));
        }
        let mut vals: Vec<BigInt> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g.kind {
                GateKind::Var(i) => assignment[i].clone(),
                GateKind::Add(a, b) => &vals[a] + &vals[b],
                GateKind::Mul(a, b) => &vals[a] * &vals[b],
            };
            vals.push(v);
        }
        Ok(vals.swap_remove(self.output))
    }

    /// The polynomial computed by the circuit over `nvars >= num_variables()`
    /// variables, reduced modulo the caps after every gate.
    ///
    /// Refuses once any gate holds more than `max_terms` terms.
    pub fn symbolic_expand(
        &self,
        nvars: usize,
        caps: Caps,
        max_terms: usize,
    ) -> Result<TruncatedPolynomial> {
        if nvars < self.n {
            return Err(dim(format!(
                "circuit uses {} variables, got {nvars}",
                self.n
            )));
        }
        let live = self.reachable();
        let mut vals: Vec<Option<TruncatedPolynomial>> = vec![None; self.gates.len()];
        for (pos, g) in self.gates.iter().enumerate() {
            if !live[pos] {
                continue;
            }
            let v = match g.kind {
                GateKind::Var(i) => TruncatedPolynomial::variable(nvars, caps, i),
                GateKind::Add(a, b) => {
                    vals[a].as_ref().expect("child") + vals[b].as_ref().expect("child")
                }
                GateKind::Mul(a, b) => {
                    vals[a].as_ref().expect("child") * vals[b].as_ref().expect("child")
                }
            };
            if v.len() > max_terms {
                return Err(Error::Budget {
                    what: format!("symbolic expansion at gate g{}", g.id),
                    needed: v.len() as u128,
                    limit: max_terms as u64,
                });
            }
            vals[pos] = Some(v);
        }
        Ok(vals[self.output].take().expect("output evaluated"))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ArithmeticCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            match g.kind {
                GateKind::Var(i) => writeln!(f, "g{} = var x{}", g.id, i + 1)?,
                GateKind::Add(a, b) => writeln!(
                    f,
                    "g{} = add g{} g{}",
                    g.id, self.gates[a].id, self.gates[b].id
                )?,
                GateKind::Mul(a, b) => writeln!(
                    f,
                    "g{} = mul g{} g{}",
                    g.id, self.gates[a].id, self.gates[b].id
                )?,
            }
        }
        writeln!(f, "output g{}", self.gates[self.output].id)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn numbered(tok: &str, prefix: char) -> Option<u64> {
    let digits = tok.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&v| v > 0)
}

fn is_number(tok: &str) -> bool {
    let t = tok.strip_prefix('-').unwrap_or(tok);
    !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit() || b == b'.')
}

enum Statement {
    Def {
        id: u64,
        op: Op,
        args: Vec<(usize, u64)>,
    },
    Output {
        id: u64,
    },
}

enum Op {
    Var(usize),
    Add,
    Mul,
}

fn parse_line(line: &str, lineno: usize) -> Result<Option<Statement>, ParseError> {
    let code = line.split('#').next().unwrap_or("");
    let toks = tokens(code);
    let Some(&(col0, first)) = toks.first() else {
        return Ok(None);
    };
    if first == "output" {
        let &(col, tok) = toks
            .get(1)
            .ok_or_else(|| syntax(lineno, col0 + 6, "expected `output g<id>`"))?;
        let id =
            numbered(tok, 'g').ok_or_else(|| syntax(lineno, col, "expected gate id `g<id>`"))?;
        if let Some(&(c, _)) = toks.get(2) {
            return Err(syntax(lineno, c, "unexpected token after output gate"));
        }
        return Ok(Some(Statement::Output { id }));
    }
    let id = numbered(first, 'g')
        .ok_or_else(|| syntax(lineno, col0, "expected gate id `g<id>` or `output`"))?;
    match toks.get(1) {
        Some(&(_, "=")) => {}
        Some(&(c, _)) => return Err(syntax(lineno, c, "expected `=`")),
        None => return Err(syntax(lineno, code.len() + 1, "expected `=`")),
    }
    let &(opcol, op) = toks
        .get(2)
        .ok_or_else(|| syntax(lineno, code.len() + 1, "expected an operation"))?;
    let rest = &toks[3..];
    match op {
        "sub" | "neg" | "minus" | "-" => return Err(ParseError::Subtraction { line: lineno }),
        "const" | "constant" => return Err(ParseError::Constant { line: lineno }),
        _ if is_number(op) => return Err(ParseError::Constant { line: lineno }),
        _ => {}
    }
    if rest.iter().any(|(_, t)| is_number(t)) {
        return Err(ParseError::Constant { line: lineno });
    }
    match op {
        "var" => {
            let &(c, tok) = rest
                .first()
                .ok_or_else(|| syntax(lineno, code.len() + 1, "expected variable `x<i>`"))?;
            let i = numbered(tok, 'x')
                .ok_or_else(|| syntax(lineno, c, "expected variable `x<i>` with i >= 1"))?;
            if let Some(&(c, _)) = rest.get(1) {
                return Err(syntax(lineno, c, "a variable leaf takes one argument"));
            }
            Ok(Some(Statement::Def {
                id,
                op: Op::Var(i as usize - 1),
                args: Vec::new(),
            }))
        }
        "add" | "mul" => {
            if rest.len() > 2 {
                return Err(ParseError::FanIn {
                    line: lineno,
                    fan_in: rest.len(),
                });
            }
            if rest.len() < 2 {
                return Err(syntax(
                    lineno,
                    code.len() + 1,
                    "expected two gate arguments",
                ));
            }
            let mut args = Vec::with_capacity(2);
            for &(c, tok) in rest {
                let g = numbered(tok, 'g')
                    .ok_or_else(|| syntax(lineno, c, "expected gate id `g<id>`"))?;
                args.push((c, g));
            }
            let op = if op == "add" { Op::Add } else { Op::Mul };
            Ok(Some(Statement::Def { id, op, args }))
        }
        _ => Err(syntax(lineno, opcol, format!("unknown operation `{op}`"))),
    }
}

impl FromStr for ArithmeticCircuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut stmts = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if let Some(s) = parse_line(line, idx + 1)? {
                stmts.push((idx + 1, s));
            }
        }
        // Every defined id with its line, to tell forward references from missing ones.
        let mut defined_at: HashMap<u64, usize> = HashMap::new();
        for (line, s) in &stmts {
            if let Statement::Def { id, .. } = s {
                if defined_at.contains_key(id) {
                    return Err(ParseError::DuplicateGate {
                        line: *line,
                        gate: *id,
                    }
                    .into());
                }
                defined_at.insert(*id, *line);
            }
        }
        let mut position: HashMap<u64, usize> = HashMap::new();
        let mut gates = Vec::new();
        let mut output: Option<(usize, u64)> = None;
        for (line, s) in stmts {
            match s {
                Statement::Output { id } => {
                    if output.is_some() {
                        return Err(ParseError::MultipleOutputs { line }.into());
                    }
                    output = Some((line, id));
                }
                Statement::Def { id, op, args } => {
                    let mut children = Vec::with_capacity(2);
                    for (_, g) in args {
                        match position.get(&g) {
                            Some(&p) => children.push(p),
                            None if defined_at.contains_key(&g) => {
                                return Err(ParseError::Cycle { line, gate: g }.into())
                            }
                            None => return Err(ParseError::UndefinedGate { line, gate: g }.into()),
                        }
                    }
                    let kind = match op {
                        Op::Var(i) => GateKind::Var(i),
                        Op::Add => GateKind::Add(children[0], children[1]),
                        Op::Mul => GateKind::Mul(children[0], children[1]),
                    };
                    position.insert(id, gates.len());
                    gates.push(Gate { id, kind });
                }
            }
        }
        let (line, out_id) = output.ok_or(ParseError::MissingOutput)?;
        let out = *position
            .get(&out_id)
            .ok_or(ParseError::UndefinedGate { line, gate: out_id })?;
        ArithmeticCircuit::new(gates, out)
    }
}
