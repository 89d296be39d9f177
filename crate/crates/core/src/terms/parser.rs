//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula := imp
//! imp     := join (("->" | "(+)") imp)?
//! join    := post (("\/" | "/\") post)*
//! post    := atom ("^+")*
//! atom    := "0" | var | meta | "~" atom | "(" formula ")"
//! ```
//!
//! Object variables match `[a-z][a-zA-Z0-9_]*`. Metavariables start with an
//! ASCII uppercase letter or any non-ASCII letter (so Greek letters work).
//! In RL the sugar `^+`, `~`, `(+)` and `/\` is expanded into the core
//! connectives; BAL keeps `^+` primitive and rejects `0`, `\/` and the sugar.

use std::fmt;

use thiserror::Error;

use super::formula::{Formula, Logic};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub offset: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: found {}, expected one of: {}",
            self.offset,
            self.found,
            self.expected.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Arrow,
    Vee,
    Wedge,
    Oplus,
    Caret,
    Tilde,
    LParen,
    RParen,
    Zero,
    Var(String),
    Meta(String),
    Bad(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Arrow => "\"->\"".into(),
            Tok::Vee => "\"\\/\"".into(),
            Tok::Wedge => "\"/\\\"".into(),
            Tok::Oplus => "\"(+)\"".into(),
            Tok::Caret => "\"^+\"".into(),
            Tok::Tilde => "\"~\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Zero => "\"0\"".into(),
            Tok::Var(n) => format!("variable {n}"),
            Tok::Meta(n) => format!("metavariable {n}"),
            Tok::Bad(s) => format!("{s:?}"),
            Tok::End => "end of input".into(),
        }
    }
}

fn is_meta_start(c: char) -> bool {
    c.is_ascii_uppercase() || (!c.is_ascii() && c.is_alphabetic())
}

fn lex(text: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let rest = &text[i..];
        let fixed = [
            ("(+)", Tok::Oplus),
            ("->", Tok::Arrow),
            ("\\/", Tok::Vee),
            ("/\\", Tok::Wedge),
            ("^+", Tok::Caret),
        ];
        if let Some((s, tok)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            out.push((i, tok.clone()));
            for _ in 0..s.len() {
                chars.next();
            }
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '~' => Some(Tok::Tilde),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((i, tok));
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            while end < bytes.len() && bytes[end].is_ascii_alphanumeric() {
                end += 1;
            }
            let word = &text[i..end];
            out.push((
                i,
                if word == "0" {
                    Tok::Zero
                } else {
                    Tok::Bad(word.to_string())
                },
            ));
            while chars.peek().is_some_and(|&(j, _)| j < end) {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_lowercase() || is_meta_start(c) {
            let mut end = i;
            let mut ok = true;
            for (j, d) in text[i..].char_indices() {
                let cont = d.is_alphanumeric() || d == '_' || d == '\'';
                if !cont {
                    break;
                }
                if c.is_ascii_lowercase() && !(d.is_ascii_alphanumeric() || d == '_') {
                    ok = false;
                }
                end = i + j + d.len_utf8();
            }
            let word = text[i..end].to_string();
            let tok = if !ok {
                Tok::Bad(word)
            } else if c.is_ascii_lowercase() {
                Tok::Var(word)
            } else {
                Tok::Meta(word)
            };
            out.push((i, tok));
            while chars.peek().is_some_and(|&(j, _)| j < end) {
                chars.next();
            }
            continue;
        }
        out.push((i, Tok::Bad(c.to_string())));
        chars.next();
    }
    out.push((text.len(), Tok::End));
    out
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    logic: Logic,
    allow_meta: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        ParseError {
            offset: *offset,
            found: tok.describe(),
            expected,
        }
    }

    fn atom_expected(&self) -> Vec<&'static str> {
        let mut v = match self.logic {
            Logic::Rl => vec!["\"0\"", "variable", "\"~\"", "\"(\""],
            Logic::Bal => vec!["variable", "\"(\""],
        };
        if self.allow_meta {
            v.insert(1, "metavariable");
        }
        v
    }

    fn infix_expected(&self, in_parens: bool) -> Vec<&'static str> {
        let mut v = match self.logic {
            Logic::Rl => vec!["\"->\"", "\"(+)\"", "\"\\/\"", "\"/\\\"", "\"^+\""],
            Logic::Bal => vec!["\"->\"", "\"^+\""],
        };
        v.push(if in_parens { "\")\"" } else { "end of input" });
        v
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let left = self.join()?;
        match (self.peek(), self.logic) {
            (Tok::Arrow, _) => {
                self.pos += 1;
                Ok(Formula::imp(left, self.imp()?))
            }
            (Tok::Oplus, Logic::Rl) => {
                self.pos += 1;
                Ok(Formula::oplus(left, self.imp()?))
            }
            _ => Ok(left),
        }
    }

    fn join(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.post()?;
        loop {
            match (self.peek(), self.logic) {
                (Tok::Vee, Logic::Rl) => {
                    self.pos += 1;
                    left = Formula::join(left, self.post()?);
                }
                (Tok::Wedge, Logic::Rl) => {
                    self.pos += 1;
                    left = Formula::meet(left, self.post()?);
                }
                _ => return Ok(left),
            }
        }
    }

    fn post(&mut self) -> Result<Formula, ParseError> {
        let mut inner = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.pos += 1;
            inner = match self.logic {
                Logic::Rl => Formula::positive_part(inner),
                Logic::Bal => Formula::pos(inner),
            };
        }
        Ok(inner)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let tok = self.peek().clone();
        match (tok, self.logic) {
            (Tok::Zero, Logic::Rl) => {
                self.pos += 1;
                Ok(Formula::Zero)
            }
            (Tok::Var(name), _) => {
                self.pos += 1;
                Ok(Formula::Var(name))
            }
            (Tok::Meta(name), _) if self.allow_meta => {
                self.pos += 1;
                Ok(Formula::Meta(name))
            }
            (Tok::Tilde, Logic::Rl) => {
                self.pos += 1;
                Ok(Formula::negation(self.atom()?))
            }
            (Tok::LParen, _) => {
                self.pos += 1;
                let inner = self.imp()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(self.infix_expected(true)));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error(self.atom_expected())),
        }
    }
}

fn parse(text: &str, logic: Logic, allow_meta: bool) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text),
        pos: 0,
        logic,
        allow_meta,
    };
    let f = p.imp()?;
    if *p.peek() != Tok::End {
        return Err(p.error(p.infix_expected(false)));
    }
    Ok(f)
}

/// Parses a ground RL formula, expanding all sugar.
pub fn parse_rl(text: &str) -> Result<Formula, ParseError> {
    parse(text, Logic::Rl, false)
}

/// Parses a ground BAL formula.
pub fn parse_bal(text: &str) -> Result<Formula, ParseError> {
    parse(text, Logic::Bal, false)
}

/// Parses a formula that may contain metavariables.
pub fn parse_schema(text: &str, logic: Logic) -> Result<Formula, ParseError> {
    parse(text, logic, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Formula {
        Formula::var(n)
    }

    #[test]
    fn core_grammar() {
        assert_eq!(
            parse_rl("a -> a \\/ b").unwrap(),
            Formula::imp(v("a"), Formula::join(v("a"), v("b")))
        );
        assert_eq!(
            parse_rl("a -> b -> c").unwrap(),
            Formula::imp(v("a"), Formula::imp(v("b"), v("c")))
        );
        assert_eq!(
            parse_rl("a \\/ b \\/ c").unwrap(),
            Formula::join(Formula::join(v("a"), v("b")), v("c"))
        );
        assert_eq!(parse_rl("  0 # trailing comment").unwrap(), Formula::Zero);
    }

    #[test]
    fn rl_sugar() {
        assert_eq!(
            parse_rl("a (+) b").unwrap(),
            Formula::imp(Formula::imp(v("a"), Formula::Zero), v("b"))
        );
        assert_eq!(
            parse_rl("a /\\ b").unwrap(),
            Formula::imp(
                Formula::join(
                    Formula::imp(v("a"), Formula::Zero),
                    Formula::imp(v("b"), Formula::Zero)
                ),
                Formula::Zero
            )
        );
        assert_eq!(
            parse_rl("a ^+").unwrap(),
            Formula::join(v("a"), Formula::Zero)
        );
        assert_eq!(parse_rl("~a").unwrap(), Formula::imp(v("a"), Formula::Zero));
        // ~ binds to the atom, ^+ applies afterwards
        assert_eq!(
            parse_rl("~a ^+").unwrap(),
            Formula::join(Formula::negation(v("a")), Formula::Zero)
        );
    }

    #[test]
    fn bal_grammar() {
        assert_eq!(parse_bal("x ^+").unwrap(), Formula::pos(v("x")));
        assert_eq!(
            parse_bal("(x -> y) -> y").unwrap(),
            Formula::imp(Formula::imp(v("x"), v("y")), v("y"))
        );
        let err = parse_bal("x \\/ y").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.expected.contains(&"\"->\""));
        assert!(parse_bal("0").is_err());
        assert!(parse_bal("~x").is_err());
    }

    #[test]
    fn errors_report_offset_and_expectations() {
        let err = parse_rl("a -> ").unwrap_err();
        assert_eq!(err.offset, 5);
        assert_eq!(err.found, "end of input");
        assert!(err.expected.contains(&"variable"));
        let err = parse_rl("(a -> b").unwrap_err();
        assert_eq!(err.offset, 7);
        assert!(err.expected.contains(&"\")\""));
        assert!(
            parse_rl("A -> a").is_err(),
            "metavariables need parse_schema"
        );
        assert!(parse_rl("a -> 1").is_err());
        assert!(parse_rl("aé").is_err());
    }

    #[test]
    fn schemas_accept_greek_and_uppercase() {
        let f = parse_schema("φ -> φ \\/ Psi", Logic::Rl).unwrap();
        assert_eq!(
            f,
            Formula::imp(
                Formula::meta("φ"),
                Formula::join(Formula::meta("φ"), Formula::meta("Psi"))
            )
        );
        assert_eq!(f.to_string(), "φ -> φ \\/ Psi");
    }
}
