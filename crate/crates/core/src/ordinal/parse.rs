//! Expression parser: `w` is omega, `+ * ^` are ordinal operations with
//! `+`/`*` left associative, `^` right associative and binding tightest.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::Ordinal;

/// Finite exponents above this are refused so a typo cannot exhaust memory.
const MAX_FINITE_EXPONENT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at offset {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("unexpected {found} at offset {offset}")]
    UnexpectedToken { offset: usize, found: String },
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("finite exponent at offset {offset} is larger than {MAX_FINITE_EXPONENT}")]
    ExponentTooLarge { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(BigUint),
    Omega,
    Plus,
    Star,
    Caret,
    Open,
    Close,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Num(n) => format!("number {n}"),
            Token::Omega => "'w'".into(),
            Token::Plus => "'+'".into(),
            Token::Star => "'*'".into(),
            Token::Caret => "'^'".into(),
            Token::Open => "'('".into(),
            Token::Close => "')'".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(offset, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                }
                out.push((offset, Token::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            'w' | 'ω' => Token::Omega,
            '+' => Token::Plus,
            '*' | '·' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            found => return Err(ParseError::UnexpectedChar { offset, found }),
        };
        chars.next();
        out.push((offset, tok));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(0)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.product()?;
        while self.peek() == Some(&Token::Plus) {
            self.next();
            let rhs = self.product()?;
            acc = &acc + &rhs;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Ordinal, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.next();
        let offset = self.offset();
        let exponent = self.power()?;
        check_exponent(&base, &exponent, offset)?;
        Ok(base.pow(&exponent))
    }

    fn atom(&mut self) -> Result<Ordinal, ParseError> {
        match self.next() {
            Some((_, Token::Num(n))) => Ok(Ordinal::from_nat(n)),
            Some((_, Token::Omega)) => Ok(Ordinal::omega()),
            Some((_, Token::Open)) => {
                let inner = self.sum()?;
                match self.next() {
                    Some((_, Token::Close)) => Ok(inner),
                    Some((offset, t)) => Err(ParseError::UnexpectedToken {
                        offset,
                        found: t.describe(),
                    }),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some((offset, t)) => Err(ParseError::UnexpectedToken {
                offset,
                found: t.describe(),
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

// Finite exponents only blow up when the base has more than one term or is a
// natural number >= 2; `w^k` and `(w^e*c)^k` stay single-term.
fn check_exponent(base: &Ordinal, exponent: &Ordinal, offset: usize) -> Result<(), ParseError> {
    let tail = match exponent.terms().last() {
        Some(t) if t.exponent().is_zero() => t.coefficient().clone(),
        _ => return Ok(()),
    };
    let grows = base.terms().len() > 1 || base.as_nat().is_some_and(|n| *n > BigUint::from(1u32));
    let too_big = tail.to_u64().is_none_or(|k| k > MAX_FINITE_EXPONENT);
    if grows && too_big {
        return Err(ParseError::ExponentTooLarge { offset });
    }
    Ok(())
}

/// Parses and evaluates an ordinal expression such as `(1+1)*w` or `w^(w+1)*3 + 5`.
pub fn parse(input: &str) -> Result<Ordinal, ParseError> {
    let mut p = Parser {
        tokens: lex(input)?,
        pos: 0,
    };
    let value = p.sum()?;
    match p.next() {
        None => Ok(value),
        Some((offset, t)) => Err(ParseError::UnexpectedToken {
            offset,
            found: t.describe(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> String {
        parse(s).unwrap().to_string()
    }

    #[test]
    fn evaluates_worked_identities() {
        assert_eq!(eval("1+w"), "w");
        assert_eq!(eval("w+1"), "w + 1");
        assert_eq!(eval("(1+1)*w"), "w");
        assert_eq!(eval("w+w"), "w*2");
        assert_eq!(eval("2*w"), "w");
        assert_eq!(eval("w*2"), "w*2");
        assert_eq!(eval("1+2"), "3");
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(eval("2^3^2"), "512");
        assert_eq!(eval("(2^3)^2"), "64");
        assert_eq!(eval("1+2*3"), "7");
        assert_eq!(eval("w^2*3 + w + 5"), "w^2*3 + w + 5");
        assert_eq!(eval("w^w^w"), "w^(w^w)");
        assert_eq!(eval("w*1000000"), "w*1000000");
        assert_eq!(eval("ω·2"), "w*2");
    }

    #[test]
    fn reports_errors() {
        assert_eq!(parse(""), Err(ParseError::UnexpectedEnd));
        assert_eq!(parse("1+"), Err(ParseError::UnexpectedEnd));
        assert!(matches!(
            parse("1 x"),
            Err(ParseError::UnexpectedChar {
                offset: 2,
                found: 'x'
            })
        ));
        assert!(matches!(parse("(1"), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(
            parse("1)"),
            Err(ParseError::UnexpectedToken { offset: 1, .. })
        ));
        assert!(matches!(
            parse("2^1000001"),
            Err(ParseError::ExponentTooLarge { .. })
        ));
        assert!(matches!(
            parse("(w+1)^(w+1000001)"),
            Err(ParseError::ExponentTooLarge { .. })
        ));
        assert!(parse("w^1000001").is_ok());
    }
}
