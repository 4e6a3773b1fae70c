//! Parser for human-written congruences.
//!
//! ```text
//! congruence := sum rel integer "(" "mod" integer ")"
//! sum        := ["+"|"-"] term (("+"|"-") term)*
//! term       := [integer ["*"]] identifier | integer
//! rel        := "≡" | "="
//! ```
//!
//! Integers after `rel` and `mod` may carry a sign. Constant terms on the
//! left are moved to the right-hand side. Variables are ordered by first
//! appearance across the whole input.

use std::collections::HashMap;
use std::fmt;

use congrlat::{CongruenceSystem, LinearCongruence};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A syntax error at a 1-based line and column (in characters).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Every syntax error found in an input, one per offending line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseErrors(pub Vec<ParseError>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseErrors {}

/// Where a row came from: 1-based line and the byte range of its text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub start: usize,
    pub end: usize,
}

/// A parsed input. Rows may have modulus 0 here; [`ParsedInput::system`]
/// rejects that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInput {
    pub variables: Vec<String>,
    pub rows: Vec<LinearCongruence>,
    pub source_spans: Vec<SourceSpan>,
}

impl ParsedInput {
    pub fn system(&self) -> congrlat::Result<CongruenceSystem> {
        CongruenceSystem::new(self.variables.clone(), self.rows.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Rel,
    Open,
    Close,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(n) => write!(f, "integer {n}"),
            Token::Ident(s) => write!(f, "identifier '{s}'"),
            Token::Plus => f.write_str("'+'"),
            Token::Minus => f.write_str("'-'"),
            Token::Star => f.write_str("'*'"),
            Token::Rel => f.write_str("'='"),
            Token::Open => f.write_str("'('"),
            Token::Close => f.write_str("')'"),
        }
    }
}

struct Lexed {
    tokens: Vec<(Token, usize)>,
    end_column: usize,
}

fn lex(text: &str, line: usize) -> Result<Lexed, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' | '−' => Some(Token::Minus),
            '*' | '·' => Some(Token::Star),
            '=' | '≡' => Some(Token::Rel),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push((tok, column));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            tokens.push((Token::Int(digits.parse().expect("ascii digits")), column));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            tokens.push((Token::Ident(chars[start..i].iter().collect()), column));
        } else {
            return Err(ParseError {
                line,
                column,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(Lexed {
        tokens,
        end_column: chars.len() + 1,
    })
}

/// One row before variables are unified: coefficients keyed by name.
struct RawRow {
    terms: Vec<(String, BigInt)>,
    rhs: BigInt,
    modulus: BigInt,
}

struct RowParser<'a> {
    tokens: &'a [(Token, usize)],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl RowParser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn error(&self, expected: &str) -> ParseError {
        let (column, found) = match self.tokens.get(self.pos) {
            Some((t, c)) => (*c, t.to_string()),
            None => (self.end_column, "end of line".to_string()),
        };
        ParseError {
            line: self.line,
            column,
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Token, expected: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat(&Token::Plus) {
            Some(false)
        } else if self.eat(&Token::Minus) {
            Some(true)
        } else {
            None
        }
    }

    fn signed_int(&mut self, expected: &str) -> Result<BigInt, ParseError> {
        let negative = self.sign().unwrap_or(false);
        match self.peek() {
            Some(Token::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(if negative { -n } else { n })
            }
            _ => Err(self.error(expected)),
        }
    }

    fn identifier(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Token::Ident(name)) if name != "mod" => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.error("a variable name")),
        }
    }

    fn row(&mut self) -> Result<RawRow, ParseError> {
        let mut terms = Vec::new();
        let mut constant = BigInt::zero();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let apply = |n: BigInt| if negative { -n } else { n };
            match self.peek() {
                Some(Token::Int(n)) => {
                    let n = n.clone();
                    self.pos += 1;
                    let explicit_star = self.eat(&Token::Star);
                    match self.peek() {
                        Some(Token::Ident(name)) if name != "mod" => {
                            let name = name.clone();
                            self.pos += 1;
                            terms.push((name, apply(n)));
                        }
                        _ if explicit_star => return Err(self.error("a variable name")),
                        _ => constant += apply(n),
                    }
                }
                Some(Token::Ident(_)) => {
                    let name = self.identifier()?;
                    terms.push((name, apply(BigInt::one())));
                }
                _ => return Err(self.error("a term")),
            }
            match self.sign() {
                Some(neg) => negative = neg,
                None => break,
            }
        }
        self.expect(Token::Rel, "'≡' or '='")?;
        let rhs = self.signed_int("an integer right-hand side")?;
        self.expect(Token::Open, "'(mod'")?;
        match self.peek() {
            Some(Token::Ident(k)) if k == "mod" => self.pos += 1,
            _ => return Err(self.error("'mod'")),
        }
        let modulus = self.signed_int("an integer modulus")?;
        self.expect(Token::Close, "')'")?;
        if self.pos < self.tokens.len() {
            return Err(self.error("end of line"));
        }
        Ok(RawRow {
            terms,
            rhs: rhs - constant,
            modulus,
        })
    }
}

fn parse_row(text: &str, line: usize) -> Result<RawRow, ParseError> {
    let lexed = lex(text, line)?;
    RowParser {
        tokens: &lexed.tokens,
        pos: 0,
        line,
        end_column: lexed.end_column,
    }
    .row()
}

fn unify(raw: Vec<RawRow>, spans: Vec<SourceSpan>) -> Result<ParsedInput, ParseErrors> {
    let mut variables: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for row in &raw {
        for (name, _) in &row.terms {
            if !index.contains_key(name) {
                index.insert(name.clone(), variables.len());
                variables.push(name.clone());
            }
        }
    }
    if variables.is_empty() {
        let line = spans.first().map_or(1, |s| s.line);
        return Err(ParseErrors(vec![ParseError {
            line,
            column: 1,
            message: "expected at least one variable".into(),
        }]));
    }
    let rows = raw
        .into_iter()
        .map(|row| {
            let mut coeffs = vec![BigInt::zero(); variables.len()];
            for (name, a) in row.terms {
                coeffs[index[&name]] += a;
            }
            LinearCongruence::new(coeffs, row.rhs, row.modulus).expect("at least one variable")
        })
        .collect();
    Ok(ParsedInput {
        variables,
        rows,
        source_spans: spans,
    })
}

/// Parses a single congruence.
pub fn parse_congruence(text: &str) -> Result<ParsedInput, ParseErrors> {
    let row = parse_row(text.trim_end_matches(['\n', '\r']), 1).map_err(|e| ParseErrors(vec![e]))?;
    unify(
        vec![row],
        vec![SourceSpan {
            line: 1,
            start: 0,
            end: text.len(),
        }],
    )
}

/// Parses one congruence per non-empty line. `#` starts a comment.
pub fn parse_system(text: &str) -> Result<ParsedInput, ParseErrors> {
    let mut raw = Vec::new();
    let mut spans = Vec::new();
    let mut errors = Vec::new();
    let mut offset = 0;
    for (i, line) in text.split('\n').enumerate() {
        let start = offset;
        offset += line.len() + 1;
        let content = line.split('#').next().unwrap_or("").trim_end_matches('\r');
        if content.trim().is_empty() {
            continue;
        }
        match parse_row(content, i + 1) {
            Ok(row) => {
                raw.push(row);
                spans.push(SourceSpan {
                    line: i + 1,
                    start,
                    end: start + content.len(),
                });
            }
            Err(e) => errors.push(e),
        }
    }
    if !errors.is_empty() {
        return Err(ParseErrors(errors));
    }
    if raw.is_empty() {
        return Err(ParseErrors(vec![ParseError {
            line: 1,
            column: 1,
            message: "expected at least one congruence".into(),
        }]));
    }
    unify(raw, spans)
}

fn render_term(out: &mut String, first: bool, a: &BigInt, name: &str) {
    let magnitude = a.abs();
    if first {
        if a.is_negative() {
            out.push('-');
        }
    } else {
        out.push_str(if a.is_negative() { " - " } else { " + " });
    }
    if !magnitude.is_one() {
        out.push_str(&magnitude.to_string());
    }
    out.push_str(name);
}

/// Renders one row in ASCII. Zero coefficients are skipped unless
/// `keep_zeros` is set.
pub fn render_row(variables: &[String], row: &LinearCongruence, keep_zeros: bool) -> String {
    let mut out = String::new();
    let mut first = true;
    for (name, a) in variables.iter().zip(row.coeffs()) {
        if a.is_zero() && !keep_zeros {
            continue;
        }
        render_term(&mut out, first, a, name);
        first = false;
    }
    if first {
        out.push('0');
    }
    out.push_str(&format!(" = {} (mod {})", row.rhs(), row.modulus()));
    out
}

/// Renders a whole input so that re-parsing gives back the same variables
/// and rows. The first row lists every variable, zeros included, to pin
/// the variable order.
pub fn render(input: &ParsedInput) -> String {
    let mut out = String::new();
    for (i, row) in input.rows.iter().enumerate() {
        out.push_str(&render_row(&input.variables, row, i == 0));
        out.push('\n');
    }
    out
}
