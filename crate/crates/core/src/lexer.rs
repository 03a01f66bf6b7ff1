//! Tokenizer shared by the expression and spec-file parsers.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Semi,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn is_ident(&self, word: &str) -> bool {
        matches!(&self.tok, Tok::Ident(s) if s == word)
    }
}

/// Splits `text` into tokens. `#` starts a comment running to the end of the line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (_, c) = chars[i];
            let column = i + 1;
            let push = |out: &mut Vec<Token>, tok| {
                out.push(Token {
                    tok,
                    line: line_no,
                    column,
                })
            };
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '!' => {
                    push(&mut out, Tok::Not);
                    i += 1;
                }
                '&' => {
                    push(&mut out, Tok::And);
                    i += 1;
                }
                '|' => {
                    push(&mut out, Tok::Or);
                    i += 1;
                }
                '(' => {
                    push(&mut out, Tok::LParen);
                    i += 1;
                }
                ')' => {
                    push(&mut out, Tok::RParen);
                    i += 1;
                }
                ';' => {
                    push(&mut out, Tok::Semi);
                    i += 1;
                }
                '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                    push(&mut out, Tok::Implies);
                    i += 2;
                }
                '<' if chars.get(i + 1).map(|p| p.1) == Some('-')
                    && chars.get(i + 2).map(|p| p.1) == Some('>') =>
                {
                    push(&mut out, Tok::Iff);
                    i += 3;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len()
                        && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_')
                    {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().map(|p| p.1).collect();
                    push(&mut out, Tok::Ident(word));
                }
                other => {
                    return Err(Error::Syntax {
                        line: line_no,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
    }
    Ok(out)
}
