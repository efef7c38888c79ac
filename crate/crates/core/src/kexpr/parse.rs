//! Concrete syntax:
//!
//! ```text
//! expr  := label "(" ident ")"
//!        | "U(" expr "," expr ")"
//!        | "eta(" label "," label "," expr ")"
//!        | "rho(" label "->" label "," expr ")"
//! label := positive integer
//! ident := [A-Za-z0-9_]+
//! ```
//!
//! Whitespace between tokens is ignored. Both the parser and the printer run
//! on explicit stacks so arbitrarily deep expressions are fine.

use std::collections::HashSet;
use std::fmt;

use super::{Builder, KExpr, Label, Node, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Expected(&'static str),
    ZeroLabel,
    LabelOverflow,
    EqualLabels(Label),
    DuplicateName(String),
    TrailingInput,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::ZeroLabel => f.write_str("labels start at 1"),
            ParseErrorKind::LabelOverflow => f.write_str("label too large"),
            ParseErrorKind::EqualLabels(a) => write!(f, "operator uses label {a} twice"),
            ParseErrorKind::DuplicateName(n) => write!(f, "vertex {n} appears twice"),
            ParseErrorKind::TrailingInput => f.write_str("unexpected input after expression"),
        }
    }
}

enum Frame {
    UnionLeft,
    UnionRight(NodeId),
    Eta(Label, Label),
    Rho(Label, Label),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, column, kind }
    }

    fn error(&mut self, kind: ParseErrorKind) -> ParseError {
        self.skip_ws();
        self.error_at(self.pos, kind)
    }

    fn expect(&mut self, token: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error_at(self.pos, ParseErrorKind::Expected(token)))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if !rest.starts_with(word) {
            return false;
        }
        let after = rest[word.len()..].trim_start();
        if after.starts_with('(') {
            self.pos = self.text.len() - after.len() + 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && pred(bytes[self.pos]) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_while(|b| b.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.error_at(start, ParseErrorKind::Expected("label")));
        }
        let value: Label =
            digits.parse().map_err(|_| self.error_at(start, ParseErrorKind::LabelOverflow))?;
        if value == 0 {
            return Err(self.error_at(start, ParseErrorKind::ZeroLabel));
        }
        Ok(value)
    }

    fn label_pair(&mut self, sep: &'static str) -> Result<(Label, Label), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let a = self.label()?;
        self.expect(sep)?;
        let b = self.label()?;
        if a == b {
            return Err(self.error_at(start, ParseErrorKind::EqualLabels(a)));
        }
        self.expect(",")?;
        Ok((a, b))
    }
}

/// Parses a k-expression, rejecting label 0, `eta(a,a,…)`/`rho(a->a,…)` and
/// repeated vertex names.
pub fn parse(text: &str) -> Result<KExpr, ParseError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut out = Builder::default();
    let mut stack: Vec<Frame> = Vec::new();
    let mut names: HashSet<&str> = HashSet::new();

    loop {
        // Descend until a leaf completes a subexpression.
        let mut done = loop {
            match cur.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let label = cur.label()?;
                    cur.expect("(")?;
                    cur.skip_ws();
                    let at = cur.pos;
                    let name = cur.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
                    if name.is_empty() {
                        return Err(cur.error_at(at, ParseErrorKind::Expected("vertex name")));
                    }
                    if !names.insert(name) {
                        return Err(
                            cur.error_at(at, ParseErrorKind::DuplicateName(name.to_string()))
                        );
                    }
                    cur.expect(")")?;
                    break out.leaf(label, name);
                }
                _ if cur.keyword("U") => stack.push(Frame::UnionLeft),
                _ if cur.keyword("eta") => {
                    let (a, b) = cur.label_pair(",")?;
                    stack.push(Frame::Eta(a, b));
                }
                _ if cur.keyword("rho") => {
                    let (a, b) = cur.label_pair("->")?;
                    stack.push(Frame::Rho(a, b));
                }
                _ => return Err(cur.error(ParseErrorKind::Expected("expression"))),
            }
        };
        // Reduce completed frames.
        loop {
            match stack.pop() {
                None => {
                    if cur.peek().is_some() {
                        return Err(cur.error(ParseErrorKind::TrailingInput));
                    }
                    return Ok(out.finish());
                }
                Some(Frame::UnionLeft) => {
                    cur.expect(",")?;
                    stack.push(Frame::UnionRight(done));
                    break;
                }
                Some(Frame::UnionRight(left)) => {
                    cur.expect(")")?;
                    done = out.union(left, done);
                }
                Some(Frame::Eta(a, b)) => {
                    cur.expect(")")?;
                    done = out.eta(a, b, done);
                }
                Some(Frame::Rho(a, b)) => {
                    cur.expect(")")?;
                    done = out.rho(a, b, done);
                }
            }
        }
    }
}

/// Canonical text: `a(v)`, `U(l, r)`, `eta(a,b, e)`, `rho(a->b, e)`.
pub fn format(expr: &KExpr) -> String {
    enum Task<'a> {
        Visit(NodeId),
        Text(&'a str),
    }
    let mut out = String::new();
    let mut tasks = vec![Task::Visit(expr.root())];
    while let Some(task) = tasks.pop() {
        match task {
            Task::Text(s) => out.push_str(s),
            Task::Visit(id) => match expr.node(id) {
                Node::Leaf { label, name } => {
                    out.push_str(&label.to_string());
                    out.push('(');
                    out.push_str(name);
                    out.push(')');
                }
                Node::Union(l, r) => {
                    out.push_str("U(");
                    tasks.extend([Task::Text(")"), Task::Visit(*r), Task::Text(", "), Task::Visit(*l)]);
                }
                Node::Eta { a, b, child } => {
                    out.push_str(&std::format!("eta({a},{b}, "));
                    tasks.extend([Task::Text(")"), Task::Visit(*child)]);
                }
                Node::Rho { from, to, child } => {
                    out.push_str(&std::format!("rho({from}->{to}, "));
                    tasks.extend([Task::Text(")"), Task::Visit(*child)]);
                }
            },
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P5: &str = "eta(3,2, U(3(z), rho(3->2, rho(2->1, eta(3,2, U(3(y), \
        rho(3->2, rho(2->1, eta(3,2, U(3(x), eta(2,1, U(2(v), 1(u)))))))))))))";

    #[test]
    fn parses_single_edge() {
        let e = parse("eta(2,1, U(2(v), 1(u)))").unwrap();
        let expected = KExpr::eta(2, 1, KExpr::union(KExpr::leaf(2, "v"), KExpr::leaf(1, "u")));
        assert_eq!(e, expected);
    }

    #[test]
    fn format_examples() {
        assert_eq!(format(&KExpr::leaf(1, "u")), "1(u)");
        let u = KExpr::union(KExpr::leaf(1, "u"), KExpr::leaf(2, "v"));
        assert_eq!(format(&u), "U(1(u), 2(v))");
        assert_eq!(format(&KExpr::rho(3, 2, KExpr::leaf(3, "x"))), "rho(3->2, 3(x))");
    }

    #[test]
    fn p5_roundtrips() {
        let e = parse(P5).unwrap();
        assert_eq!(format(&e), P5);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse("eta ( 2 , 1 ,\n U ( 2 ( v ) , 1(u) ) )").unwrap();
        let b = parse("eta(2,1,U(2(v),1(u)))").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_equal_labels() {
        let err = parse("eta(1,1, 1(u))").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EqualLabels(1));
        assert_eq!((err.line, err.column), (1, 5));
        let err = parse("rho(2->2, 2(u))").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EqualLabels(2));
    }

    #[test]
    fn rejects_zero_label_and_duplicates() {
        assert_eq!(parse("0(u)").unwrap_err().kind, ParseErrorKind::ZeroLabel);
        let err = parse("U(1(u),\n  2(u))").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateName("u".into()));
        assert_eq!((err.line, err.column), (2, 5));
    }

    #[test]
    fn reports_syntax_errors_with_position() {
        let err = parse("U(1(u) 2(v))").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Expected(","));
        assert_eq!(err.column, 8);
        assert_eq!(parse("1(u) x").unwrap_err().kind, ParseErrorKind::TrailingInput);
        assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::Expected("expression"));
        assert_eq!(parse("Ux(1(u), 1(v))").unwrap_err().kind, ParseErrorKind::Expected("expression"));
    }

    #[test]
    fn deep_expressions_do_not_recurse() {
        let mut text = "rho(2->1, U(".repeat(19_999);
        text.push_str("1(v0)");
        for i in 1..20_000 {
            text.push_str(&std::format!(", 2(v{i})))"));
        }
        let e = parse(&text).unwrap();
        assert_eq!(e.vertex_count(), 20_000);
        assert_eq!(format(&e), text);
    }
}
