//! Arithmetic expressions in `x` and `y`, for integrands given as text.
//!
//! Grammar, loosest to tightest binding:
//!
//! ```text
//! expr    := expr ('+' | '-') expr          left-assoc
//!          | expr ('*' | '/') expr          left-assoc
//!          | '-' expr                       prefix
//!          | expr '^' expr                  right-assoc
//!          | number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | exp | sqrt | abs | log
//! ```
//!
//! `-2^2` is `-(2^2)`. The right operand of `^` may carry a sign, so `2^-1`
//! parses. Implicit multiplication (`2x`) is rejected. Evaluation follows
//! IEEE semantics: domain errors give NaN rather than failing.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
    Abs,
    Log,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "log" => Func::Log,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Log => "log",
        }
    }

    fn apply(&self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Exp => v.exp(),
            Func::Sqrt => v.sqrt(),
            Func::Abs => v.abs(),
            Func::Log => v.ln(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(&self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }

    // (left binding power, right binding power)
    fn binding_power(&self) -> (u8, u8) {
        match self {
            BinOp::Add | BinOp::Sub => (1, 2),
            BinOp::Mul | BinOp::Div => (3, 4),
            BinOp::Pow => (8, 7),
        }
    }
}

const PREFIX_MINUS_BP: u8 = 5;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Y,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Y => y,
            Expr::Neg(e) => -e.eval(x, y),
            Expr::Call(f, e) => f.apply(e.eval(x, y)),
            Expr::Binary(op, l, r) => {
                let (a, b) = (l.eval(x, y), r.eval(x, y));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => pow(a, b),
                }
            }
        }
    }
}

fn pow(a: f64, b: f64) -> f64 {
    if b.fract() == 0.0 && b.abs() <= i32::MAX as f64 {
        a.powi(b as i32)
    } else {
        a.powf(b)
    }
}

/// Fully parenthesised form; reparses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::X => f.write_str("x"),
            Expr::Y => f.write_str("y"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Op(c) => format!("'{c}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v = text.parse::<f64>().map_err(|_| ParseError {
                    offset: start,
                    message: format!("malformed number '{text}'"),
                })?;
                out.push((start, Tok::Num(v)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((start, Tok::Op(c as char)));
                i += 1;
            }
            b'(' => {
                out.push((start, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let (offset, tok) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(ParseError {
                offset,
                message: format!("expected {what}, found {}", describe(&tok)),
            })
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let (offset, tok) = self.next();
        let mut lhs = match tok {
            Tok::Num(v) => Expr::Num(v),
            Tok::Op('-') => Expr::Neg(Box::new(self.expr(PREFIX_MINUS_BP)?)),
            Tok::LParen => {
                let e = self.expr(0)?;
                self.expect(Tok::RParen, "')'")?;
                e
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Expr::X,
                "y" => Expr::Y,
                _ => match Func::from_name(&name) {
                    Some(func) => {
                        self.expect(Tok::LParen, &format!("'(' after '{name}'"))?;
                        let arg = self.expr(0)?;
                        self.expect(Tok::RParen, "')'")?;
                        Expr::Call(func, Box::new(arg))
                    }
                    None => {
                        return Err(ParseError {
                            offset,
                            message: format!("unknown identifier '{name}'"),
                        })
                    }
                },
            },
            other => {
                return Err(ParseError {
                    offset,
                    message: format!("expected an operand, found {}", describe(&other)),
                })
            }
        };

        loop {
            let (offset, tok) = self.peek().clone();
            let op = match tok {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                Tok::Op('^') => BinOp::Pow,
                Tok::End | Tok::RParen => break,
                other => {
                    return Err(ParseError {
                        offset,
                        message: format!("expected an operator, found {}", describe(&other)),
                    })
                }
            };
            let (lbp, rbp) = op.binding_power();
            if lbp < min_bp {
                break;
            }
            self.next();
            // a signed exponent binds as tightly as the power itself
            let rhs = if op == BinOp::Pow && self.peek().1 == Tok::Op('-') {
                self.next();
                Expr::Neg(Box::new(self.expr(rbp)?))
            } else {
                self.expr(rbp)?
            };
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let e = p.expr(0)?;
    let (offset, tok) = p.peek().clone();
    if tok != Tok::End {
        return Err(ParseError {
            offset,
            message: format!("unexpected trailing {}", describe(&tok)),
        });
    }
    Ok(e)
}

pub fn eval(e: &Expr, x: f64, y: f64) -> f64 {
    e.eval(x, y)
}

/// Text of the three test integrands.
pub const F1_TEXT: &str = "(x+2*y-7)^2+(2*x+y-5)^2";
pub const F2_TEXT: &str = "100*sqrt(abs(y-0.01*x^2))+0.01*abs(x+10)";
pub const F3_TEXT: &str = "sin(x+y)+(x-y)^2-1.5*x+2.5*y+1";

pub fn f1(x: f64, y: f64) -> f64 {
    (x + 2.0 * y - 7.0).powi(2) + (2.0 * x + y - 5.0).powi(2)
}

pub fn f2(x: f64, y: f64) -> f64 {
    100.0 * (y - 0.01 * x * x).abs().sqrt() + 0.01 * (x + 10.0).abs()
}

pub fn f3(x: f64, y: f64) -> f64 {
    (x + y).sin() + (x - y).powi(2) - 1.5 * x + 2.5 * y + 1.0
}

/// A named or user-supplied integrand.
#[derive(Debug, Clone)]
pub enum Integrand {
    Builtin(&'static str, fn(f64, f64) -> f64),
    Parsed(String, Expr),
}

impl Integrand {
    /// `f1`, `f2`, `f3`, or any expression in `x` and `y`.
    pub fn from_spec(spec: &str) -> Result<Integrand, ParseError> {
        if let Some(b) = builtin(spec.trim()) {
            return Ok(b);
        }
        Ok(Integrand::Parsed(spec.to_string(), parse(spec)?))
    }

    pub fn name(&self) -> &str {
        match self {
            Integrand::Builtin(n, _) => n,
            Integrand::Parsed(s, _) => s,
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Integrand::Builtin(_, f) => f(x, y),
            Integrand::Parsed(_, e) => e.eval(x, y),
        }
    }

    pub fn at(&self, p: crate::geometry::Point2) -> f64 {
        self.eval(p.x, p.y)
    }
}

pub fn builtin(name: &str) -> Option<Integrand> {
    Some(match name {
        "f1" => Integrand::Builtin("f1", f1),
        "f2" => Integrand::Builtin("f2", f2),
        "f3" => Integrand::Builtin("f3", f3),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, x: f64, y: f64) -> f64 {
        parse(s).unwrap().eval(x, y)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(ev("x+2*y", 1.0, 1.0), 3.0);
        assert_eq!(ev("2^3^2", 0.0, 0.0), 512.0);
        assert_eq!(ev("-2^2", 0.0, 0.0), -4.0);
        assert_eq!(ev("8/4/2", 0.0, 0.0), 1.0);
        assert_eq!(ev("1-2-3", 0.0, 0.0), -4.0);
        assert_eq!(ev("2^-1", 0.0, 0.0), 0.5);
        assert_eq!(ev("(1+2)*3", 0.0, 0.0), 9.0);
        assert_eq!(ev("-x*y", 2.0, 3.0), -6.0);
        assert_eq!(ev("  1.5e1 +\t2 ", 0.0, 0.0), 17.0);
    }

    #[test]
    fn benchmark_integrands() {
        assert_eq!(ev(F3_TEXT, 0.0, 0.0), 1.0);
        assert_eq!(ev(F1_TEXT, 0.0, 0.0), 74.0);
        assert!((ev(F2_TEXT, 0.0, 0.0) - 0.1).abs() < 1e-15);
        assert!(!ev("x/0", 1.0, 0.0).is_finite());
        assert!(ev("log(x)", -1.0, 0.0).is_nan());
    }

    #[test]
    fn positioned_errors() {
        let e = parse("(x+1").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse("x+1)").unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse("2x").unwrap_err();
        assert_eq!(e.offset, 1);
        let e = parse("z+1").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(e.message.contains("unknown identifier"));
        let e = parse("sin x").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(parse("").is_err());
        assert!(parse("1 +").is_err());
        assert!(parse("x $ y").is_err());
        assert!(parse("1..2").is_err());
    }

    #[test]
    fn builtins_resolve() {
        assert_eq!(Integrand::from_spec("f2").unwrap().name(), "f2");
        let i = Integrand::from_spec("x*y").unwrap();
        assert_eq!(i.eval(2.0, 3.0), 6.0);
    }
}
