//! OpenQASM 2.0 emission and parsing for the gate subset used by the
//! simulator circuit: `ry`, `cx`, `x`, `measure` and `barrier`.
//!
//! Angles are written in the shortest decimal form that parses back to the
//! same `f64`, so emitted programs round-trip bit-exactly. The parser also
//! accepts symbolic angles (`pi/2`, `-3*pi/4`, ...).

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, WIRE_A, WIRE_E, WIRE_Q};
use crate::error::{Error, Result};

pub const QASM_VERSION: &str = "2.0";
const STANDARD_INCLUDE: &str = "qelib1.inc";

/// Assignment of circuit wires to physical qubit indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireMapping {
    physical_of_wire: Vec<usize>,
}

impl WireMapping {
    /// `physical_of_wire[w]` is the physical index of wire `w`; must be a
    /// permutation of `0..n`.
    pub fn new(physical_of_wire: Vec<usize>) -> Result<Self> {
        let n = physical_of_wire.len();
        let mut seen = vec![false; n];
        for &p in &physical_of_wire {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter(format!(
                    "wire mapping {physical_of_wire:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Self { physical_of_wire })
    }

    pub fn identity(width: usize) -> Self {
        Self {
            physical_of_wire: (0..width).collect(),
        }
    }

    /// Layout used for the thermal-noise simulator: E → q[0], A → q[1] (the
    /// prepared `|p⟩` qubit), Q → q[2] (the measured principal qubit).
    pub fn simulator_default() -> Self {
        let mut physical_of_wire = vec![0; 3];
        physical_of_wire[WIRE_Q] = 2;
        physical_of_wire[WIRE_E] = 0;
        physical_of_wire[WIRE_A] = 1;
        Self { physical_of_wire }
    }

    pub fn len(&self) -> usize {
        self.physical_of_wire.len()
    }

    pub fn is_empty(&self) -> bool {
        self.physical_of_wire.is_empty()
    }

    pub fn physical(&self, wire: usize) -> Option<usize> {
        self.physical_of_wire.get(wire).copied()
    }

    pub fn wire(&self, physical: usize) -> Option<usize> {
        self.physical_of_wire.iter().position(|&p| p == physical)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub size: usize,
}

/// `name[index]`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRef {
    pub register: String,
    pub index: usize,
}

impl BitRef {
    fn new(register: &str, index: usize) -> Self {
        Self {
            register: register.to_string(),
            index,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateName {
    Ry,
    Cx,
    X,
    Measure,
    Barrier,
}

impl GateName {
    pub fn as_str(self) -> &'static str {
        match self {
            GateName::Ry => "ry",
            GateName::Cx => "cx",
            GateName::X => "x",
            GateName::Measure => "measure",
            GateName::Barrier => "barrier",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instruction {
    pub gate: GateName,
    /// Angles in radians.
    pub params: Vec<f64>,
    pub qubits: Vec<BitRef>,
    pub clbits: Vec<BitRef>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QasmProgram {
    pub version: String,
    pub includes: Vec<String>,
    pub qregs: Vec<Register>,
    pub cregs: Vec<Register>,
    pub instructions: Vec<Instruction>,
}

impl QasmProgram {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "OPENQASM {};", self.version);
        for inc in &self.includes {
            let _ = writeln!(out, "include \"{inc}\";");
        }
        for r in &self.qregs {
            let _ = writeln!(out, "qreg {}[{}];", r.name, r.size);
        }
        for r in &self.cregs {
            let _ = writeln!(out, "creg {}[{}];", r.name, r.size);
        }
        let operand = |b: &BitRef| format!("{}[{}]", b.register, b.index);
        for ins in &self.instructions {
            let qubits: Vec<String> = ins.qubits.iter().map(operand).collect();
            match ins.gate {
                GateName::Measure => {
                    let _ = writeln!(out, "measure {} -> {};", qubits[0], operand(&ins.clbits[0]));
                }
                _ if ins.params.is_empty() => {
                    let _ = writeln!(out, "{} {};", ins.gate.as_str(), qubits.join(","));
                }
                _ => {
                    let params: Vec<String> = ins.params.iter().map(|&a| render_angle(a)).collect();
                    let _ = writeln!(
                        out,
                        "{}({}) {};",
                        ins.gate.as_str(),
                        params.join(","),
                        qubits.join(",")
                    );
                }
            }
        }
        out
    }

    /// Flat physical index of `q`, counting qubit registers in declaration order.
    fn physical_index(&self, q: &BitRef) -> Option<usize> {
        let mut offset = 0;
        for r in &self.qregs {
            if r.name == q.register {
                return (q.index < r.size).then_some(offset + q.index);
            }
            offset += r.size;
        }
        None
    }
}

fn render_angle(angle: f64) -> String {
    // `{}` on f64 is the shortest round-trip decimal and never uses exponents.
    if angle == 0.0 {
        "0".to_string()
    } else {
        format!("{angle}")
    }
}

/// Builds the program for `c` under `mapping`, optionally measuring `measure`
/// wires into the classical bit with the same physical index.
pub fn emit_program(
    c: &Circuit,
    mapping: &WireMapping,
    measure: Option<&[usize]>,
) -> Result<QasmProgram> {
    if mapping.len() != c.width() {
        return Err(Error::InvalidParameter(format!(
            "mapping covers {} wires, circuit has {}",
            mapping.len(),
            c.width()
        )));
    }
    let q = |wire: usize| -> Result<BitRef> {
        mapping
            .physical(wire)
            .map(|p| BitRef::new("q", p))
            .ok_or_else(|| Error::InvalidParameter(format!("wire {wire} is not mapped")))
    };
    let mut instructions = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        let ins = match *g {
            Gate::Ry { wire, angle } => Instruction {
                gate: GateName::Ry,
                params: vec![if angle == 0.0 { 0.0 } else { angle }],
                qubits: vec![q(wire)?],
                clbits: vec![],
            },
            Gate::Cnot { control, target } => Instruction {
                gate: GateName::Cx,
                params: vec![],
                qubits: vec![q(control)?, q(target)?],
                clbits: vec![],
            },
            Gate::X { wire } => Instruction {
                gate: GateName::X,
                params: vec![],
                qubits: vec![q(wire)?],
                clbits: vec![],
            },
            Gate::ControlledU { .. } => {
                return Err(Error::InvalidCircuit(
                    "controlled-U gates have no QASM form; decompose into ry/cx first".into(),
                ));
            }
        };
        instructions.push(ins);
    }
    for &wire in measure.unwrap_or(&[]) {
        let target = q(wire)?;
        instructions.push(Instruction {
            gate: GateName::Measure,
            params: vec![],
            clbits: vec![BitRef::new("c", target.index)],
            qubits: vec![target],
        });
    }
    let width = c.width();
    Ok(QasmProgram {
        version: QASM_VERSION.to_string(),
        includes: vec![STANDARD_INCLUDE.to_string()],
        qregs: vec![Register {
            name: "q".into(),
            size: width,
        }],
        cregs: vec![Register {
            name: "c".into(),
            size: width,
        }],
        instructions,
    })
}

/// OpenQASM text for `c`; one statement per line, LF endings.
pub fn emit(c: &Circuit, mapping: &WireMapping, measure: Option<&[usize]>) -> Result<String> {
    Ok(emit_program(c, mapping, measure)?.to_text())
}

/// Rebuilds a circuit, sending physical qubits to wires through `mapping`.
/// Measurements and barriers carry no unitary action and are dropped.
pub fn to_circuit(prog: &QasmProgram, mapping: &WireMapping) -> Result<Circuit> {
    let mut c = Circuit::new(mapping.len())?;
    let wire = |b: &BitRef| -> Result<usize> {
        let phys = prog.physical_index(b).ok_or_else(|| {
            Error::InvalidCircuit(format!("undeclared qubit {}[{}]", b.register, b.index))
        })?;
        mapping.wire(phys).ok_or_else(|| {
            Error::InvalidCircuit(format!("physical qubit {phys} is not mapped to a wire"))
        })
    };
    for ins in &prog.instructions {
        match ins.gate {
            GateName::Ry => {
                c.push(Gate::Ry {
                    wire: wire(&ins.qubits[0])?,
                    angle: ins.params[0],
                })?;
            }
            GateName::Cx => {
                c.push(Gate::Cnot {
                    control: wire(&ins.qubits[0])?,
                    target: wire(&ins.qubits[1])?,
                })?;
            }
            GateName::X => {
                c.push(Gate::X {
                    wire: wire(&ins.qubits[0])?,
                })?;
            }
            GateName::Measure | GateName::Barrier => {}
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn qasm_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Qasm {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            let column = i + 1;
            let push = |tokens: &mut Vec<Token>, tok| {
                tokens.push(Token {
                    tok,
                    line: line_no,
                    column,
                })
            };
            if ch.is_whitespace() {
                i += 1;
            } else if ch == '/' && chars.get(i + 1) == Some(&'/') {
                break;
            } else if ch.is_ascii_alphabetic() || ch == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                push(&mut tokens, Tok::Ident(chars[start..i].iter().collect()));
            } else if ch.is_ascii_digit() || ch == '.' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    i += 1;
                    if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                push(&mut tokens, Tok::Number(chars[start..i].iter().collect()));
            } else if ch == '"' {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(qasm_err(line_no, column, "unterminated string"));
                }
                push(&mut tokens, Tok::Str(chars[start..i].iter().collect()));
                i += 1;
            } else if ch == '-' && chars.get(i + 1) == Some(&'>') {
                push(&mut tokens, Tok::Sym("->"));
                i += 2;
            } else {
                let sym = match ch {
                    '(' => "(",
                    ')' => ")",
                    '[' => "[",
                    ']' => "]",
                    ',' => ",",
                    ';' => ";",
                    '+' => "+",
                    '-' => "-",
                    '*' => "*",
                    '/' => "/",
                    other => {
                        return Err(qasm_err(
                            line_no,
                            column,
                            format!("unexpected character `{other}`"),
                        ))
                    }
                };
                push(&mut tokens, Tok::Sym(sym));
                i += 1;
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    program: QasmProgram,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Token> {
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| {
            let (line, column) = self.tokens.last().map_or((1, 1), |t| (t.line, t.column));
            qasm_err(line, column, "unexpected end of input")
        })?;
        self.pos += 1;
        Ok(tok)
    }

    fn expect_sym(&mut self, sym: &'static str) -> Result<()> {
        let t = self.next()?;
        if t.tok == Tok::Sym(sym) {
            Ok(())
        } else {
            Err(qasm_err(
                t.line,
                t.column,
                format!("expected `{sym}`, found {}", describe(&t.tok)),
            ))
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.next()?;
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t)),
            other => Err(qasm_err(
                t.line,
                t.column,
                format!("expected identifier, found {}", describe(other)),
            )),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let t = self.next()?;
        match &t.tok {
            Tok::Number(s) => s
                .parse()
                .map_err(|_| qasm_err(t.line, t.column, format!("expected integer, found `{s}`"))),
            other => Err(qasm_err(
                t.line,
                t.column,
                format!("expected integer, found {}", describe(other)),
            )),
        }
    }

    fn parse(mut self) -> Result<QasmProgram> {
        let first = self.next()?;
        match &first.tok {
            Tok::Ident(kw) if kw == "OPENQASM" => {}
            other => {
                return Err(qasm_err(
                    first.line,
                    first.column,
                    format!("expected `OPENQASM` header, found {}", describe(other)),
                ))
            }
        }
        let version = self.next()?;
        match &version.tok {
            Tok::Number(v) if v == QASM_VERSION || v == "2" => {}
            other => {
                return Err(qasm_err(
                    version.line,
                    version.column,
                    format!("unsupported QASM version {}", describe(other)),
                ))
            }
        }
        self.expect_sym(";")?;
        while self.peek().is_some() {
            self.statement()?;
        }
        Ok(self.program)
    }

    fn statement(&mut self) -> Result<()> {
        let (word, tok) = self.ident()?;
        match word.as_str() {
            "include" => {
                let t = self.next()?;
                let Tok::Str(path) = t.tok else {
                    return Err(qasm_err(t.line, t.column, "expected include path string"));
                };
                self.expect_sym(";")?;
                self.program.includes.push(path);
            }
            "qreg" | "creg" => {
                let (name, name_tok) = self.ident()?;
                self.expect_sym("[")?;
                let size = self.integer()?;
                self.expect_sym("]")?;
                self.expect_sym(";")?;
                if self
                    .program
                    .qregs
                    .iter()
                    .chain(&self.program.cregs)
                    .any(|r| r.name == name)
                {
                    return Err(qasm_err(
                        name_tok.line,
                        name_tok.column,
                        format!("register `{name}` declared twice"),
                    ));
                }
                let reg = Register { name, size };
                if word == "qreg" {
                    self.program.qregs.push(reg);
                } else {
                    self.program.cregs.push(reg);
                }
            }
            "ry" => {
                self.expect_sym("(")?;
                let angle = self.expr()?;
                self.expect_sym(")")?;
                let target = self.bit_ref(true)?;
                self.expect_sym(";")?;
                self.push(GateName::Ry, vec![angle], vec![target], vec![]);
            }
            "cx" => {
                let control = self.bit_ref(true)?;
                self.expect_sym(",")?;
                let target = self.bit_ref(true)?;
                self.expect_sym(";")?;
                if control == target {
                    return Err(qasm_err(
                        tok.line,
                        tok.column,
                        "cx control and target coincide",
                    ));
                }
                self.push(GateName::Cx, vec![], vec![control, target], vec![]);
            }
            "x" => {
                let target = self.bit_ref(true)?;
                self.expect_sym(";")?;
                self.push(GateName::X, vec![], vec![target], vec![]);
            }
            "measure" => {
                let q = self.bit_ref(true)?;
                self.expect_sym("->")?;
                let c = self.bit_ref(false)?;
                self.expect_sym(";")?;
                self.push(GateName::Measure, vec![], vec![q], vec![c]);
            }
            "barrier" => {
                let mut qubits = Vec::new();
                loop {
                    qubits.extend(self.barrier_operand()?);
                    let t = self.next()?;
                    match t.tok {
                        Tok::Sym(",") => continue,
                        Tok::Sym(";") => break,
                        other => {
                            return Err(qasm_err(
                                t.line,
                                t.column,
                                format!("expected `,` or `;`, found {}", describe(&other)),
                            ))
                        }
                    }
                }
                self.push(GateName::Barrier, vec![], qubits, vec![]);
            }
            other => {
                return Err(qasm_err(
                    tok.line,
                    tok.column,
                    format!("unsupported gate or statement `{other}`"),
                ))
            }
        }
        Ok(())
    }

    fn push(&mut self, gate: GateName, params: Vec<f64>, qubits: Vec<BitRef>, clbits: Vec<BitRef>) {
        self.program.instructions.push(Instruction {
            gate,
            params,
            qubits,
            clbits,
        });
    }

    fn lookup(&self, name: &str, quantum: bool) -> Option<usize> {
        let regs = if quantum {
            &self.program.qregs
        } else {
            &self.program.cregs
        };
        regs.iter().find(|r| r.name == name).map(|r| r.size)
    }

    fn bit_ref(&mut self, quantum: bool) -> Result<BitRef> {
        let (name, tok) = self.ident()?;
        let kind = if quantum { "qreg" } else { "creg" };
        let size = self.lookup(&name, quantum).ok_or_else(|| {
            qasm_err(
                tok.line,
                tok.column,
                format!("`{name}` is not a declared {kind}"),
            )
        })?;
        self.expect_sym("[")?;
        let index = self.integer()?;
        self.expect_sym("]")?;
        if index >= size {
            return Err(qasm_err(
                tok.line,
                tok.column,
                format!("index {index} out of bounds for {kind} {name}[{size}]"),
            ));
        }
        Ok(BitRef {
            register: name,
            index,
        })
    }

    fn barrier_operand(&mut self) -> Result<Vec<BitRef>> {
        let is_indexed = matches!(
            self.tokens.get(self.pos + 1),
            Some(Token {
                tok: Tok::Sym("["),
                ..
            })
        );
        if is_indexed {
            return Ok(vec![self.bit_ref(true)?]);
        }
        let (name, tok) = self.ident()?;
        let size = self.lookup(&name, true).ok_or_else(|| {
            qasm_err(
                tok.line,
                tok.column,
                format!("`{name}` is not a declared qreg"),
            )
        })?;
        Ok((0..size).map(|i| BitRef::new(&name, i)).collect())
    }

    fn expr(&mut self) -> Result<f64> {
        let mut value = self.term()?;
        while let Some(Token {
            tok: Tok::Sym(op @ ("+" | "-")),
            ..
        }) = self.peek()
        {
            let op = *op;
            self.pos += 1;
            let rhs = self.term()?;
            value = if op == "+" { value + rhs } else { value - rhs };
        }
        Ok(value)
    }

    fn term(&mut self) -> Result<f64> {
        let mut value = self.unary()?;
        while let Some(Token {
            tok: Tok::Sym(op @ ("*" | "/")),
            ..
        }) = self.peek()
        {
            let op = *op;
            self.pos += 1;
            let rhs = self.unary()?;
            value = if op == "*" { value * rhs } else { value / rhs };
        }
        Ok(value)
    }

    fn unary(&mut self) -> Result<f64> {
        if let Some(Token {
            tok: Tok::Sym("-"), ..
        }) = self.peek()
        {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if let Some(Token {
            tok: Tok::Sym("+"), ..
        }) = self.peek()
        {
            self.pos += 1;
            return self.unary();
        }
        let t = self.next()?;
        let value = match &t.tok {
            Tok::Number(s) => s
                .parse::<f64>()
                .map_err(|_| qasm_err(t.line, t.column, format!("malformed number `{s}`")))?,
            Tok::Ident(s) if s == "pi" => std::f64::consts::PI,
            Tok::Sym("(") => {
                let v = self.expr()?;
                self.expect_sym(")")?;
                v
            }
            other => {
                return Err(qasm_err(
                    t.line,
                    t.column,
                    format!("expected angle expression, found {}", describe(other)),
                ))
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(qasm_err(t.line, t.column, "angle is not finite"))
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(s) => format!("`{s}`"),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Sym(s) => format!("`{s}`"),
    }
}

/// Parses the supported OpenQASM 2.0 subset. Errors carry line and column.
pub fn parse(text: &str) -> Result<QasmProgram> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(qasm_err(1, 1, "empty program"));
    }
    Parser {
        tokens,
        pos: 0,
        program: QasmProgram {
            version: QASM_VERSION.to_string(),
            includes: Vec::new(),
            qregs: Vec::new(),
            cregs: Vec::new(),
            instructions: Vec::new(),
        },
    }
    .parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::GadParams;
    use crate::circuit::gad_simulator_circuit;
    use std::f64::consts::PI;

    fn err_message(e: Error) -> (usize, usize, String) {
        match e {
            Error::Qasm {
                line,
                column,
                message,
            } => (line, column, message),
            other => panic!("expected qasm error, got {other:?}"),
        }
    }

    #[test]
    fn empty_circuit_emits_header_only() {
        let text = emit(&Circuit::new(3).unwrap(), &WireMapping::identity(3), None).unwrap();
        assert_eq!(
            text,
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n"
        );
    }

    #[test]
    fn single_rotation_uses_mapping() {
        let mut c = Circuit::new(3).unwrap();
        c.push(Gate::Ry {
            wire: 0,
            angle: PI / 2.0,
        })
        .unwrap();
        let mapping = WireMapping::new(vec![1, 0, 2]).unwrap();
        let text = emit(&c, &mapping, None).unwrap();
        let last = text.lines().last().unwrap();
        assert_eq!(last, format!("ry({}) q[1];", PI / 2.0));
    }

    #[test]
    fn simulator_program_census() {
        let c = gad_simulator_circuit(GadParams::new(0.5, 0.5).unwrap()).unwrap();
        let prog = emit_program(&c, &WireMapping::simulator_default(), Some(&[WIRE_Q])).unwrap();
        let count = |g| prog.instructions.iter().filter(|i| i.gate == g).count();
        assert_eq!(count(GateName::Cx), 5);
        assert_eq!(count(GateName::Ry), 3);
        assert_eq!(count(GateName::Measure), 1);
        assert_eq!(
            prog.instructions.last().unwrap().qubits[0],
            BitRef::new("q", 2)
        );
    }

    #[test]
    fn parse_round_trips_emitted_program() {
        let c = gad_simulator_circuit(GadParams::new(0.75, 0.3).unwrap()).unwrap();
        let mapping = WireMapping::simulator_default();
        let prog = emit_program(&c, &mapping, Some(&[WIRE_Q])).unwrap();
        let parsed = parse(&prog.to_text()).unwrap();
        assert_eq!(parsed, prog);
        assert_eq!(to_circuit(&parsed, &mapping).unwrap(), c);
    }

    #[test]
    fn parses_symbolic_and_decimal_angles() {
        let text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n\
                    ry(0.927295218) q[2];\nry(pi/2) q[0];\nry(-3*pi/4) q[1]; // comment\n\
                    ry(2*pi) q[1];\nry(pi) q[1];\nry(-(pi/4)+1e-3) q[1];\nbarrier q;\nbarrier q[0],q[1];\n";
        let prog = parse(text).unwrap();
        let angles: Vec<f64> = prog
            .instructions
            .iter()
            .filter(|i| i.gate == GateName::Ry)
            .map(|i| i.params[0])
            .collect();
        assert!((angles[0] - 0.927295218).abs() < 1e-9);
        assert_eq!(angles[1], PI / 2.0);
        assert_eq!(angles[2], -3.0 * PI / 4.0);
        assert_eq!(angles[3], 2.0 * PI);
        assert_eq!(angles[4], PI);
        assert!((angles[5] - (-PI / 4.0 + 1e-3)).abs() < 1e-15);
        let barriers: Vec<usize> = prog
            .instructions
            .iter()
            .filter(|i| i.gate == GateName::Barrier)
            .map(|i| i.qubits.len())
            .collect();
        assert_eq!(barriers, vec![3, 2]);
    }

    #[test]
    fn rejects_unknown_gate() {
        let text = "OPENQASM 2.0;\nqreg q[2];\ncz q[0],q[1];\n";
        let (line, column, message) = err_message(parse(text).unwrap_err());
        assert_eq!((line, column), (3, 1));
        assert!(message.contains("`cz`"), "{message}");
    }

    #[test]
    fn rejects_out_of_bounds_and_undeclared() {
        let (_, _, message) =
            err_message(parse("OPENQASM 2.0;\nqreg q[3];\nx q[7];\n").unwrap_err());
        assert!(message.contains('7'), "{message}");
        let (line, _, message) =
            err_message(parse("OPENQASM 2.0;\nqreg q[3];\nx r[0];\n").unwrap_err());
        assert_eq!(line, 3);
        assert!(message.contains("`r`"));
        assert!(parse("OPENQASM 2.0;\nqreg q[2];\ncreg c[1];\nmeasure q[1] -> c[1];\n").is_err());
        assert!(parse("OPENQASM 2.0;\nqreg q[2];\nx q 0];\n").is_err());
    }

    #[test]
    fn rejects_other_versions_and_missing_header() {
        let (line, column, message) = err_message(parse("OPENQASM 3.0;\n").unwrap_err());
        assert_eq!((line, column), (1, 10));
        assert!(message.contains("version"));
        assert!(parse("qreg q[2];\n").is_err());
        assert!(parse("").is_err());
        assert!(parse("OPENQASM 2.0;\nqreg q[2];\nry(pi q[0];\n").is_err());
    }

    #[test]
    fn to_circuit_examples() {
        let measures_only =
            parse("OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nmeasure q[0] -> c[0];\n").unwrap();
        let c = to_circuit(&measures_only, &WireMapping::identity(2)).unwrap();
        assert!(c.gates().is_empty());

        let cx = parse("OPENQASM 2.0;\nqreg q[2];\ncx q[1],q[0];\n").unwrap();
        let c = to_circuit(&cx, &WireMapping::identity(2)).unwrap();
        assert_eq!(
            c.gates(),
            &[Gate::Cnot {
                control: 1,
                target: 0
            }]
        );

        let wide = parse("OPENQASM 2.0;\nqreg q[3];\nx q[2];\n").unwrap();
        assert!(to_circuit(&wide, &WireMapping::identity(2)).is_err());
    }

    #[test]
    fn mapping_validation() {
        assert!(WireMapping::new(vec![0, 0, 1]).is_err());
        assert!(WireMapping::new(vec![0, 3, 1]).is_err());
        let m = WireMapping::simulator_default();
        assert_eq!(
            (m.physical(WIRE_Q), m.physical(WIRE_E), m.physical(WIRE_A)),
            (Some(2), Some(0), Some(1))
        );
        assert_eq!(m.wire(1), Some(WIRE_A));
        let c = Circuit::new(2).unwrap();
        assert!(emit(&c, &m, None).is_err());
    }

    #[test]
    fn controlled_u_is_not_emittable() {
        let mut c = Circuit::new(2).unwrap();
        c.push(Gate::ControlledU {
            control: 0,
            target: 1,
            u: crate::circuit::pauli_x(),
        })
        .unwrap();
        assert!(matches!(
            emit(&c, &WireMapping::identity(2), None),
            Err(Error::InvalidCircuit(_))
        ));
    }
}
