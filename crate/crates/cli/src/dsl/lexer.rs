use std::fmt;

use super::{DslError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Arrow,
    DoubleArrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::DoubleArrow => f.write_str("`=>`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits source text into tokens. Identifiers are `[A-Za-z_][A-Za-z0-9_']*`
/// or bracketed pair labels such as `<a1,<b,c>>`. Comments run from `#` or
/// `//` to the end of the line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
        if chars[*i] == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *i += 1;
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }
        let simple = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            advance(&mut i, &mut line, &mut col);
            out.push(Token { tok, pos });
            continue;
        }
        if (c == '-' || c == '=') && chars.get(i + 1) == Some(&'>') {
            advance(&mut i, &mut line, &mut col);
            advance(&mut i, &mut line, &mut col);
            let tok = if c == '-' {
                Tok::Arrow
            } else {
                Tok::DoubleArrow
            };
            out.push(Token { tok, pos });
            continue;
        }
        if is_ident_start(c) {
            let mut name = String::new();
            while i < chars.len() && is_ident_char(chars[i]) {
                name.push(chars[i]);
                advance(&mut i, &mut line, &mut col);
            }
            out.push(Token {
                tok: Tok::Ident(name),
                pos,
            });
            continue;
        }
        if c == '<' {
            let mut name = String::new();
            let mut depth = 0usize;
            loop {
                let Some(&d) = chars.get(i) else {
                    return Err(DslError::syntax(pos, "unterminated `<...>` label"));
                };
                match d {
                    '<' => depth += 1,
                    '>' => depth -= 1,
                    ',' => {}
                    d if is_ident_char(d) => {}
                    d => {
                        return Err(DslError::syntax(
                            Pos { line, col },
                            format!("unexpected `{d}` inside a `<...>` label"),
                        ))
                    }
                }
                name.push(d);
                advance(&mut i, &mut line, &mut col);
                if depth == 0 {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Ident(name),
                pos,
            });
            continue;
        }
        return Err(DslError::syntax(pos, format!("unexpected character `{c}`")));
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn symbols_and_names() {
        assert_eq!(
            toks("a1: id(x) => f g; # note"),
            vec![
                Tok::Ident("a1".into()),
                Tok::Colon,
                Tok::Ident("id".into()),
                Tok::LParen,
                Tok::Ident("x".into()),
                Tok::RParen,
                Tok::DoubleArrow,
                Tok::Ident("f".into()),
                Tok::Ident("g".into()),
                Tok::Semi,
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn pair_labels() {
        assert_eq!(
            toks("<a1,<b1,b2>> -> x"),
            vec![
                Tok::Ident("<a1,<b1,b2>>".into()),
                Tok::Arrow,
                Tok::Ident("x".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions() {
        let t = tokenize("x\n  @").unwrap_err();
        assert_eq!(t.pos(), Some(Pos { line: 2, col: 3 }));
    }
}
