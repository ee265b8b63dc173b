//! Text and JSON input for monomials and ideals.
//!
//! Text grammar:
//!
//! ```text
//! ideal  := mono ("," mono)*
//! mono   := "1" | factor ("*" factor)*
//! factor := ident ("^" uint)?
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace (including newlines) is insignificant and `#` starts a comment
//! running to the end of the line. A comment of the form
//! `# variables: a, b, c` fixes the variable order; otherwise variables are
//! numbered in order of first appearance.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::{is_identifier, Monomial, VariableSet};

const DIRECTIVE: &str = "variables:";

/// A parsed ideal together with what the input looked like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    /// Number of monomials in the input, before minimalization.
    pub input_count: usize,
}

impl ParsedIdeal {
    /// Whether the input already was the canonical minimal generating set
    /// (up to order).
    pub fn was_minimal(&self) -> bool {
        self.input_count == self.ideal.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Uint(String),
    Star,
    Caret,
    Comma,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits the input into tokens and collects `# variables:` directives.
fn tokenize(text: &str) -> Result<(Vec<Token>, Option<Vec<String>>)> {
    let mut tokens = Vec::new();
    let mut declared: Option<Vec<String>> = None;
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '#' {
                let comment: String = chars[i + 1..].iter().collect();
                if let Some(rest) = comment.trim_start().strip_prefix(DIRECTIVE) {
                    if declared.is_some() {
                        return Err(syntax(line_no, col, "variables declared more than once"));
                    }
                    declared = Some(parse_directive(rest, line_no, col)?);
                }
                break;
            }
            let tok = match c {
                '*' => Tok::Star,
                '^' => Tok::Caret,
                ',' => Tok::Comma,
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                        i += 1;
                    }
                    Tok::Ident(chars[start..=i].iter().collect())
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                    Tok::Uint(chars[start..=i].iter().collect())
                }
                other => return Err(syntax(line_no, col, format!("unexpected character `{other}`"))),
            };
            tokens.push(Token {
                tok,
                line: line_no,
                column: col,
            });
            i += 1;
        }
    }
    let (line, column) = match text.lines().enumerate().last() {
        Some((ln, l)) => (ln + 1, l.chars().count() + 1),
        None => (1, 1),
    };
    tokens.push(Token { tok: Tok::End, line, column });
    Ok((tokens, declared))
}

fn parse_directive(rest: &str, line: usize, column: usize) -> Result<Vec<String>> {
    let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(|n| !is_identifier(n)) {
        return Err(syntax(line, column, "malformed variable declaration"));
    }
    Ok(names)
}

/// A factor before variable resolution: name, exponent and its position.
struct RawFactor {
    name: String,
    exp: u32,
    line: usize,
    column: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(t: &Token, wanted: &str) -> Error {
        let found = match &t.tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Uint(s) => format!("`{s}`"),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        };
        syntax(t.line, t.column, format!("expected {wanted}, found {found}"))
    }

    /// One monomial; `None` for the literal `1`.
    fn mono(&mut self) -> Result<Option<Vec<RawFactor>>> {
        let t = self.peek().clone();
        if let Tok::Uint(s) = &t.tok {
            if s == "1" {
                self.next();
                return Ok(None);
            }
            return Err(syntax(t.line, t.column, format!("unexpected number `{s}`; only `1` may stand alone")));
        }
        let mut factors = vec![self.factor()?];
        while self.peek().tok == Tok::Star {
            self.next();
            factors.push(self.factor()?);
        }
        Ok(Some(factors))
    }

    fn factor(&mut self) -> Result<RawFactor> {
        let t = self.next();
        let name = match t.tok {
            Tok::Ident(ref s) => s.clone(),
            _ => return Err(Self::unexpected(&t, "a variable")),
        };
        let mut exp = 1;
        if self.peek().tok == Tok::Caret {
            self.next();
            let e = self.next();
            exp = match &e.tok {
                Tok::Uint(s) => s
                    .parse::<u32>()
                    .map_err(|_| syntax(e.line, e.column, format!("exponent `{s}` is too large")))?,
                _ => return Err(Self::unexpected(&e, "an exponent")),
            };
        }
        Ok(RawFactor {
            name,
            exp,
            line: t.line,
            column: t.column,
        })
    }

    /// `mono ("," mono)*` up to the end of input.
    fn ideal(&mut self) -> Result<Vec<Option<Vec<RawFactor>>>> {
        let mut monos = Vec::new();
        if self.peek().tok == Tok::End {
            return Ok(monos);
        }
        monos.push(self.mono()?);
        loop {
            let t = self.next();
            match t.tok {
                Tok::End => return Ok(monos),
                Tok::Comma => monos.push(self.mono()?),
                _ => return Err(Self::unexpected(&t, "`,` or end of input")),
            }
        }
    }
}

fn resolve(factors: &Option<Vec<RawFactor>>, vars: &VariableSet) -> Result<Monomial> {
    let mut exps = vec![0u32; vars.len()];
    if let Some(factors) = factors {
        for f in factors {
            let i = vars
                .index_of(&f.name)
                .ok_or_else(|| syntax(f.line, f.column, format!("undeclared variable `{}`", f.name)))?;
            exps[i] = exps[i].checked_add(f.exp).ok_or(Error::Overflow)?;
        }
    }
    Ok(Monomial::new(exps))
}

/// Parses a single monomial over a known variable set.
pub fn parse_monomial(text: &str, vars: &VariableSet) -> Result<Monomial> {
    let (tokens, declared) = tokenize(text)?;
    if declared.is_some() {
        return Err(Error::Invalid("a variable declaration is not allowed here".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let raw = p.mono()?;
    let t = p.next();
    if t.tok != Tok::End {
        return Err(Parser::unexpected(&t, "end of input"));
    }
    resolve(&raw, vars)
}

/// Parses an ideal in the text grammar and minimalizes it.
///
/// Input with only a `# variables:` line and no generators is the zero
/// ideal; input with neither is rejected.
pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    let (tokens, declared) = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let raw = p.ideal()?;
    let vars = match declared {
        Some(names) => VariableSet::new(names)?,
        None => {
            if raw.is_empty() {
                return Err(Error::Invalid("empty input".into()));
            }
            let mut names: Vec<String> = Vec::new();
            for f in raw.iter().flatten().flatten() {
                if !names.contains(&f.name) {
                    names.push(f.name.clone());
                }
            }
            if names.is_empty() {
                return Err(Error::Invalid("no variables: declare them with `# variables: ...`".into()));
            }
            VariableSet::new(names)?
        }
    };
    let gens = raw.iter().map(|r| resolve(r, &vars)).collect::<Result<Vec<_>>>()?;
    Ok(ParsedIdeal {
        ideal: minimalize(Arc::new(vars), &gens)?,
        input_count: gens.len(),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealJson {
    variables: Vec<String>,
    generators: Vec<Vec<u32>>,
}

/// Parses `{"variables": [...], "generators": [[...], ...]}`.
pub fn parse_ideal_json(text: &str) -> Result<ParsedIdeal> {
    let raw: IdealJson = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
    let vars = VariableSet::new(raw.variables)?;
    let gens: Vec<Monomial> = raw.generators.into_iter().map(Monomial::new).collect();
    Ok(ParsedIdeal {
        ideal: minimalize(Arc::new(vars), &gens)?,
        input_count: gens.len(),
    })
}

fn to_raw(ideal: &MonomialIdeal) -> IdealJson {
    IdealJson {
        variables: ideal.vars().names().to_vec(),
        generators: ideal.generators().iter().map(|g| g.exponents().to_vec()).collect(),
    }
}

pub fn ideal_to_json_value(ideal: &MonomialIdeal) -> serde_json::Value {
    serde_json::to_value(to_raw(ideal)).expect("ideal serializes")
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> String {
    serde_json::to_string(&to_raw(ideal)).expect("ideal serializes")
}

/// Parses text or JSON, deciding by the first non-blank character.
pub fn parse_ideal_auto(text: &str) -> Result<ParsedIdeal> {
    if text.trim_start().starts_with('{') {
        parse_ideal_json(text)
    } else {
        parse_ideal(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(i: &MonomialIdeal) -> Vec<Vec<u32>> {
        i.generators().iter().map(|g| g.exponents().to_vec()).collect()
    }

    #[test]
    fn example_ideal() {
        let p = parse_ideal("a^3*b^2, c^3*d, a*c^2, a^2*c, b^2*d, a*b*c, b*c*d").unwrap();
        assert_eq!(p.ideal.vars().names(), &["a", "b", "c", "d"]);
        assert_eq!(p.ideal.len(), 7);
        assert!(p.was_minimal());
    }

    #[test]
    fn non_minimal_input() {
        let p = parse_ideal("c^2, c, d, c, c*d").unwrap();
        assert_eq!(exps(&p.ideal), vec![vec![0, 1], vec![1, 0]]);
        assert!(!p.was_minimal());
    }

    #[test]
    fn multi_letter_identifiers_are_single_variables() {
        let p = parse_ideal("c^2, c, d, c, cd").unwrap();
        assert_eq!(p.ideal.vars().names(), &["c", "d", "cd"]);
        assert_eq!(p.ideal.len(), 3);
    }

    #[test]
    fn double_caret_position() {
        match parse_ideal("a^^2") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn other_syntax_errors() {
        for bad in ["", "a,", ",a", "a*", "a^", "a b", "2", "a^b", "a+b", "a^99999999999"] {
            assert!(parse_ideal(bad).is_err(), "{bad:?}");
        }
        match parse_ideal("a,\nb*?") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse_ideal("# a comment\n  x^2 ,\n y   # trailing\n, x*y\n").unwrap();
        assert_eq!(p.ideal.vars().names(), &["x", "y"]);
        assert_eq!(exps(&p.ideal), vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn directive_fixes_order() {
        let p = parse_ideal("# variables: z, y, x\nx*y, z").unwrap();
        assert_eq!(p.ideal.vars().names(), &["z", "y", "x"]);
        assert_eq!(exps(&p.ideal), vec![vec![1, 0, 0], vec![0, 1, 1]]);
        assert!(parse_ideal("# variables: x\ny").is_err());
        let zero = parse_ideal("# variables: x, y\n").unwrap();
        assert!(zero.ideal.is_zero());
        let unit = parse_ideal("# variables: x\n1, x").unwrap();
        assert!(unit.ideal.is_unit());
        assert!(parse_ideal("1").is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = parse_ideal("b^2*a, a^3, c").unwrap();
        let again = parse_ideal(&p.ideal.to_text()).unwrap();
        assert_eq!(again.ideal, p.ideal);
    }

    #[test]
    fn monomial_parsing() {
        let vars = VariableSet::new(["a", "b"]).unwrap();
        assert_eq!(parse_monomial("a^3*b^2", &vars).unwrap().exponents(), &[3, 2]);
        assert_eq!(parse_monomial("1", &vars).unwrap().exponents(), &[0, 0]);
        assert_eq!(parse_monomial("a*a", &vars).unwrap().exponents(), &[2, 0]);
        assert!(parse_monomial("a, b", &vars).is_err());
        assert!(parse_monomial("c", &vars).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = parse_ideal("a^2, b^3, a*b").unwrap();
        let json = ideal_to_json(&p.ideal);
        assert_eq!(json, r#"{"variables":["a","b"],"generators":[[1,1],[2,0],[0,3]]}"#);
        assert_eq!(parse_ideal_json(&json).unwrap().ideal, p.ideal);
        assert_eq!(parse_ideal_auto(&json).unwrap().ideal, p.ideal);
        assert!(parse_ideal_json(r#"{"variables":["a"],"generators":[[1,2]]}"#).is_err());
        assert!(parse_ideal_json(r#"{"variables":[],"generators":[]}"#).is_err());
    }
}
