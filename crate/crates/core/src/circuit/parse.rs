use std::fmt;

use super::{CircuitProgram, Instruction};
use crate::clifford::{GateKind, GateSpec};
use crate::error::Error;
use crate::modmath::{gcd, RingParams};
use crate::weyl::{PauliVector, PhasedWeyl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    Syntax,
    UndefinedRecord,
    OutOfRange,
    NonUnit,
    Header,
    DuplicateRecord,
    InvalidOperands,
}

impl DiagnosticCode {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Syntax => "E001",
            Self::UndefinedRecord => "E002",
            Self::OutOfRange => "E003",
            Self::NonUnit => "E004",
            Self::Header => "E005",
            Self::DuplicateRecord => "E006",
            Self::InvalidOperands => "E007",
        }
    }
}

/// A parse error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub code: DiagnosticCode,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line,
            self.column,
            self.code.code(),
            self.message
        )
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    col: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            col: s + 1,
        });
    }
    out
}

type Fail = (usize, DiagnosticCode, String);

fn syntax(tok: &Token<'_>, msg: impl Into<String>) -> Fail {
    (tok.col, DiagnosticCode::Syntax, msg.into())
}

fn int(tok: &Token<'_>, s: &str) -> Result<i64, Fail> {
    s.parse::<i64>()
        .map_err(|_| syntax(tok, format!("expected an integer, found `{s}`")))
}

fn list(tok: &Token<'_>, s: &str) -> Result<Vec<i64>, Fail> {
    if s.is_empty() {
        return Err(syntax(tok, "empty list"));
    }
    s.split(',').map(|x| int(tok, x)).collect()
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Ctx<'p> {
    program: &'p CircuitProgram,
}

impl Ctx<'_> {
    fn ring(&self) -> RingParams {
        self.program.ring()
    }

    fn qudit(&self, tok: &Token<'_>) -> Result<usize, Fail> {
        let q = int(tok, tok.text)?;
        if q < 0 || q as usize >= self.program.n() {
            return Err((
                tok.col,
                DiagnosticCode::OutOfRange,
                format!("qudit {q} is out of range 0..{}", self.program.n()),
            ));
        }
        Ok(q as usize)
    }

    /// `key=value` with a given key.
    fn keyed<'t>(&self, tok: &Token<'t>, key: &str) -> Result<&'t str, Fail> {
        tok.text
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| syntax(tok, format!("expected `{key}=...`, found `{}`", tok.text)))
    }

    fn distinct(&self, toks: &[Token<'_>], qs: &[usize]) -> Result<(), Fail> {
        for (i, q) in qs.iter().enumerate() {
            if qs[..i].contains(q) {
                return Err((
                    toks[i].col,
                    DiagnosticCode::InvalidOperands,
                    format!("qudit {q} is used twice"),
                ));
            }
        }
        Ok(())
    }

    fn arity(&self, head: &Token<'_>, args: &[Token<'_>], k: usize) -> Result<(), Fail> {
        if args.len() != k {
            return Err(syntax(
                head,
                format!("`{}` takes {k} operand(s), found {}", head.text, args.len()),
            ));
        }
        Ok(())
    }

    fn gate(&self, toks: &[Token<'_>]) -> Result<GateSpec, Fail> {
        let head = &toks[0];
        let args = &toks[1..];
        let one = |kind: GateKind| -> Result<GateSpec, Fail> {
            self.arity(head, args, 1)?;
            Ok(GateSpec {
                kind,
                targets: vec![self.qudit(&args[0])?],
            })
        };
        let two = |kind: GateKind| -> Result<GateSpec, Fail> {
            self.arity(head, args, 2)?;
            let qs = vec![self.qudit(&args[0])?, self.qudit(&args[1])?];
            self.distinct(args, &qs)?;
            Ok(GateSpec { kind, targets: qs })
        };
        let weyl1 = |z: i64, x: i64| -> Result<GateSpec, Fail> {
            self.arity(head, args, 1)?;
            let p = PhasedWeyl::new(self.ring(), 0, vec![z, x]).expect("even length");
            Ok(GateSpec::pauli(vec![self.qudit(&args[0])?], p))
        };
        match head.text {
            "S" => one(GateKind::S),
            "F" => one(GateKind::F),
            "Finv" => one(GateKind::Finv),
            "X" => weyl1(0, 1),
            "Z" => weyl1(1, 0),
            "M" => {
                self.arity(head, args, 2)?;
                let q = self.qudit(&args[0])?;
                let a = int(&args[1], args[1].text)?;
                let d = self.ring().d();
                if gcd(a, d) != 1 {
                    return Err((
                        args[1].col,
                        DiagnosticCode::NonUnit,
                        format!("{a} is not invertible mod {d}"),
                    ));
                }
                Ok(GateSpec::m(q, a))
            }
            "CZ" => two(GateKind::CZ),
            "CX" => two(GateKind::CX),
            "SWAP" => two(GateKind::Swap),
            "W" => self.weyl_gate(head, args),
            other => Err(syntax(head, format!("unknown instruction `{other}`"))),
        }
    }

    fn weyl_gate(&self, head: &Token<'_>, args: &[Token<'_>]) -> Result<GateSpec, Fail> {
        let split = args
            .iter()
            .position(|t| t.text.contains('='))
            .ok_or_else(|| syntax(head, "`W` needs z=... and x=..."))?;
        if split == 0 {
            return Err(syntax(head, "`W` needs at least one qudit"));
        }
        let qs = args[..split]
            .iter()
            .map(|t| self.qudit(t))
            .collect::<Result<Vec<_>, _>>()?;
        self.distinct(&args[..split], &qs)?;
        let rest = &args[split..];
        if rest.len() < 2 || rest.len() > 3 {
            return Err(syntax(
                head,
                "`W` expects z=..., x=... and optionally t=...",
            ));
        }
        let z = list(&rest[0], self.keyed(&rest[0], "z")?)?;
        let x = list(&rest[1], self.keyed(&rest[1], "x")?)?;
        let t = match rest.get(2) {
            Some(tok) => int(tok, self.keyed(tok, "t")?)?,
            None => 0,
        };
        for (tok, v) in [(&rest[0], &z), (&rest[1], &x)] {
            if v.len() != qs.len() {
                return Err((
                    tok.col,
                    DiagnosticCode::InvalidOperands,
                    format!("expected {} entries, found {}", qs.len(), v.len()),
                ));
            }
        }
        let p = PhasedWeyl::from_parts(self.ring(), t, &z, &x).expect("lengths match");
        Ok(GateSpec::pauli(qs, p))
    }

    fn record_name(&self, toks: &[Token<'_>]) -> Result<String, Fail> {
        let n = toks.len();
        if n < 2 || toks[n - 2].text != "->" {
            let tok = toks.last().expect("non-empty");
            return Err(syntax(
                tok,
                "expected `-> name` at the end of a measurement",
            ));
        }
        let tok = &toks[n - 1];
        if !is_name(tok.text) {
            return Err(syntax(
                tok,
                format!("`{}` is not a valid record name", tok.text),
            ));
        }
        if self.program.records().iter().any(|r| r == tok.text) {
            return Err((
                tok.col,
                DiagnosticCode::DuplicateRecord,
                format!("record `{}` is already defined", tok.text),
            ));
        }
        Ok(tok.text.to_string())
    }

    fn measure(&self, toks: &[Token<'_>]) -> Result<Instruction, Fail> {
        let kind = toks
            .get(1)
            .ok_or_else(|| syntax(&toks[0], "expected `z` or `w` after `measure`"))?;
        let name = self.record_name(toks)?;
        if toks.len() < 4 {
            return Err(syntax(kind, "measurement is missing its operands"));
        }
        let body = &toks[2..toks.len() - 2];
        match kind.text {
            "z" => {
                if body.len() != 1 {
                    return Err(syntax(kind, "`measure z` takes one qudit"));
                }
                Ok(Instruction::MeasureZ {
                    qudit: self.qudit(&body[0])?,
                    name,
                })
            }
            "w" => {
                if body.len() < 2 || body.len() > 3 {
                    return Err(syntax(
                        kind,
                        "`measure w` expects z=..., x=... and optionally delta=...",
                    ));
                }
                let n = self.program.n();
                let z = list(&body[0], self.keyed(&body[0], "z")?)?;
                let x = list(&body[1], self.keyed(&body[1], "x")?)?;
                let delta = match body.get(2) {
                    Some(tok) => int(tok, self.keyed(tok, "delta")?)?,
                    None => 0,
                };
                for (tok, v) in [(&body[0], &z), (&body[1], &x)] {
                    if v.len() != n {
                        return Err((
                            tok.col,
                            DiagnosticCode::InvalidOperands,
                            format!("expected {n} entries, found {}", v.len()),
                        ));
                    }
                }
                let observable =
                    PauliVector::from_parts(self.ring(), delta, &z, &x).expect("lengths match");
                Ok(Instruction::MeasureW { observable, name })
            }
            other => Err(syntax(kind, format!("unknown measurement basis `{other}`"))),
        }
    }

    fn instruction(&self, toks: &[Token<'_>]) -> Result<Instruction, Fail> {
        if toks[0].text == "measure" {
            return self.measure(toks);
        }
        if let Some(pos) = toks.iter().position(|t| t.text == "if") {
            let cond = toks
                .get(pos + 1)
                .ok_or_else(|| syntax(&toks[pos], "expected `name=value` after `if`"))?;
            if toks.len() != pos + 2 {
                return Err(syntax(
                    &toks[pos + 2],
                    "unexpected text after the condition",
                ));
            }
            let (name, value) = cond
                .text
                .split_once('=')
                .ok_or_else(|| syntax(cond, "expected `name=value`"))?;
            if !is_name(name) {
                return Err(syntax(cond, format!("`{name}` is not a valid record name")));
            }
            if !self.program.records().iter().any(|r| r == name) {
                return Err((
                    cond.col,
                    DiagnosticCode::UndefinedRecord,
                    format!("record `{name}` is not defined yet"),
                ));
            }
            let value = int(cond, value)?;
            let d = self.ring().d();
            if !(0..d).contains(&value) {
                return Err((
                    cond.col,
                    DiagnosticCode::OutOfRange,
                    format!("outcome {value} is out of range 0..{d}"),
                ));
            }
            if pos == 0 {
                return Err(syntax(&toks[0], "missing gate before `if`"));
            }
            let gate = self.gate(&toks[..pos])?;
            return Ok(Instruction::Conditional {
                name: name.to_string(),
                value,
                gate,
            });
        }
        Ok(Instruction::Gate(self.gate(toks)?))
    }
}

fn header_value(toks: &[Token<'_>], key: &str, line: usize) -> Result<i64, Diagnostic> {
    let diag = |col, msg: String| Diagnostic {
        line,
        column: col,
        code: DiagnosticCode::Header,
        message: msg,
    };
    if toks.first().map(|t| t.text) != Some(key) {
        let col = toks.first().map_or(1, |t| t.col);
        return Err(diag(col, format!("expected `{key} <value>`")));
    }
    if toks.len() != 2 {
        return Err(diag(
            toks[0].col,
            format!("`{key}` takes exactly one value"),
        ));
    }
    toks[1]
        .text
        .parse::<i64>()
        .map_err(|_| diag(toks[1].col, format!("`{}` is not an integer", toks[1].text)))
}

/// Parses a program, collecting every diagnostic rather than stopping at
/// the first.
pub fn parse(text: &str) -> Result<CircuitProgram, Vec<Diagnostic>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    let header_err = |line: usize, msg: &str| {
        vec![Diagnostic {
            line,
            column: 1,
            code: DiagnosticCode::Header,
            message: msg.into(),
        }]
    };
    let (l1, dim_line) = lines
        .next()
        .ok_or_else(|| header_err(1, "missing `dim` header"))?;
    let d = header_value(&tokenize(dim_line), "dim", l1).map_err(|e| vec![e])?;
    let (l2, qudit_line) = lines
        .next()
        .ok_or_else(|| header_err(l1 + 1, "missing `qudits` header"))?;
    let n = header_value(&tokenize(qudit_line), "qudits", l2).map_err(|e| vec![e])?;
    let mut program = match (usize::try_from(n), RingParams::new(d)) {
        (Ok(n), Ok(_)) if n > 0 => CircuitProgram::new(d, n).expect("checked"),
        (_, Err(Error::InvalidDimension(_))) | (_, Err(_)) => {
            return Err(header_err(l1, &format!("invalid dimension {d}")))
        }
        _ => return Err(header_err(l2, &format!("invalid qudit count {n}"))),
    };

    let mut diags = Vec::new();
    for (line, text) in lines {
        let toks = tokenize(text);
        if matches!(toks[0].text, "dim" | "qudits") {
            diags.push(Diagnostic {
                line,
                column: toks[0].col,
                code: DiagnosticCode::Header,
                message: format!("repeated `{}` header", toks[0].text),
            });
            continue;
        }
        let result = Ctx { program: &program }.instruction(&toks);
        match result {
            Ok(ins) => {
                if let Err(e) = program.push(ins) {
                    diags.push(Diagnostic {
                        line,
                        column: toks[0].col,
                        code: DiagnosticCode::InvalidOperands,
                        message: e.to_string(),
                    });
                }
            }
            Err((column, code, message)) => diags.push(Diagnostic {
                line,
                column,
                code,
                message,
            }),
        }
    }
    if diags.is_empty() {
        Ok(program)
    } else {
        Err(diags)
    }
}
