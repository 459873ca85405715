use std::fmt;

use num_bigint::BigInt;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    /// Path-like literal in double quotes.
    Str(String),
    Punct(&'static str),
    /// Statement end: `;` outside brackets or a newline.
    End,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Punct(p) => write!(f, "'{p}'"),
            Tok::End => write!(f, "end of statement"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

const PUNCT: &[&str] = &["->", "=", "<", "[", "]", "(", ")", ",", "+", "-", "|", "&", "\\", "^", ":", ";"];

fn closing(open: &str) -> &'static str {
    match open {
        "(" => ")",
        _ => "]",
    }
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut open: Vec<(&'static str, Pos)> = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);

    let unclosed = |open: &[(&'static str, Pos)]| -> Result<(), Diagnostic> {
        match open.last() {
            Some((b, pos)) => Err(Diagnostic { pos: *pos, message: format!("unclosed '{b}'") }),
            None => Ok(()),
        }
    };

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            unclosed(&open)?;
            out.push(Token { tok: Tok::End, pos });
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("digits"))
        } else if c == '"' {
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i == chars.len() || chars[i] != '"' {
                return Err(Diagnostic { pos, message: "unterminated string".into() });
            }
            i += 1;
            Tok::Str(chars[start + 1..i - 1].iter().collect())
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) else {
                return Err(Diagnostic { pos, message: format!("unexpected character {c:?}") });
            };
            i += p.chars().count();
            match *p {
                "(" | "[" => open.push((p, pos)),
                ")" | "]" => match open.pop() {
                    Some((b, _)) if closing(b) == *p => {}
                    Some((b, at)) => {
                        return Err(Diagnostic { pos, message: format!("'{p}' does not match '{b}' at {at}") })
                    }
                    None => return Err(Diagnostic { pos, message: format!("unmatched '{p}'") }),
                },
                ";" if open.is_empty() => {
                    out.push(Token { tok: Tok::End, pos });
                    col += 1;
                    continue;
                }
                _ => {}
            }
            Tok::Punct(p)
        };
        col += i - start;
        out.push(Token { tok, pos });
    }
    unclosed(&open)?;
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}
