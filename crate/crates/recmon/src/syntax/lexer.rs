use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LAngle,
    RAngle,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Amp,
    AmpAmp,
    Bar,
    BarBar,
    Plus,
    Star,
    Tilde,
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

pub(crate) fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |n: char| bytes.get(i + 1).map(|b| *b as char) == Some(n);
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '<' => Tok::LAngle,
            '>' => Tok::RAngle,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '~' => Tok::Tilde,
            '&' if two('&') => {
                i += 1;
                Tok::AmpAmp
            }
            '&' => Tok::Amp,
            '|' if two('|') => {
                i += 1;
                Tok::BarBar
            }
            '|' => Tok::Bar,
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < bytes.len() {
                    let d = bytes[i + 1] as char;
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                Tok::Ident(src[start..=i].to_string())
            }
            other => return Err(Error::parse(start, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctuation() {
        let toks: Vec<Tok> = lex("[a] && || x'").unwrap().into_iter().map(|(_, t)| t).collect();
        assert_eq!(
            toks,
            [Tok::LBrack, Tok::Ident("a".into()), Tok::RBrack, Tok::AmpAmp, Tok::BarBar, Tok::Ident("x'".into())]
        );
        assert!(is_ident("req_1") && !is_ident("1a"));
        assert!(lex("a $ b").is_err());
    }
}
