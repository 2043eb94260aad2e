//! Shared tokenizer for the two little expression languages.

use std::fmt;

use num_bigint::BigInt;

/// A parse failure with the byte offset it was detected at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(BigInt),
    /// Identifier with a trailing run of `'` marks.
    Ident { name: String, primes: u32 },
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub offset: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let offset = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => tokens.push(Token { kind: TokenKind::Plus, offset }),
            b'-' => tokens.push(Token { kind: TokenKind::Minus, offset }),
            b'*' => tokens.push(Token { kind: TokenKind::Star, offset }),
            b'/' => tokens.push(Token { kind: TokenKind::Slash, offset }),
            b'^' => tokens.push(Token { kind: TokenKind::Caret, offset }),
            b'(' => tokens.push(Token { kind: TokenKind::LParen, offset }),
            b')' => tokens.push(Token { kind: TokenKind::RParen, offset }),
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: BigInt = text[start..i]
                    .parse()
                    .map_err(|_| ParseError::new(start, "malformed integer"))?;
                tokens.push(Token {
                    kind: TokenKind::Int(value),
                    offset: start,
                });
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = text[start..i].to_string();
                let mut primes = 0;
                while i < bytes.len() && bytes[i] == b'\'' {
                    primes += 1;
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident { name, primes },
                    offset: start,
                });
                continue;
            }
            _ => {
                return Err(ParseError::new(
                    offset,
                    format!("unexpected character {:?}", text[i..].chars().next().unwrap()),
                ));
            }
        }
        i += 1;
    }
    Ok(tokens)
}
