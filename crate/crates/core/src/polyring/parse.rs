//! Text syntax for polynomials: `3*x1^2*x3 - x2^4`, `(x1 - x2)*x3`, `l^3`.
//!
//! Variables are `x1..xn` (or `X1..Xn` for dual forms); `l` stands for
//! `x1 + ... + xn`. Coefficients may be integers or fractions `a/b`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{PolyError, Polynomial};

pub fn parse_polynomial(input: &str, nvars: usize) -> Result<Polynomial, PolyError> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        n: nvars,
        input,
    };
    let poly = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(poly)
}

/// Parse and require a homogeneous result.
pub fn parse_homogeneous(input: &str, nvars: usize) -> Result<Polynomial, PolyError> {
    let p = parse_polynomial(input, nvars)?;
    if !p.is_homogeneous() {
        return Err(PolyError::NotHomogeneous(input.to_string()));
    }
    Ok(p)
}

/// Comma- or semicolon-separated list of homogeneous polynomials.
pub fn parse_polynomial_list(input: &str, nvars: usize) -> Result<Vec<Polynomial>, PolyError> {
    input
        .split([',', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_homogeneous(s, nvars))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Ell,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, PolyError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            'l' | 'L' => {
                out.push(Tok::Ell);
                i += 1
            }
            'x' | 'X' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(PolyError::Parse {
                        input: s.to_string(),
                        message: format!("variable without index at {i}"),
                    });
                }
                let idx: usize = chars[start..j].iter().collect::<String>().parse().unwrap();
                out.push(Tok::Var(idx));
                i = j;
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let v: BigInt = chars[i..j].iter().collect::<String>().parse().unwrap();
                out.push(Tok::Num(v));
                i = j;
            }
            other => {
                return Err(PolyError::Parse {
                    input: s.to_string(),
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    n: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            input: self.input.to_string(),
            message: format!("{msg} (token {})", self.pos),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn sum(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.n);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.product()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                // implicit multiplication: `2x1`, `(x1-x2)(x3-x4)`
                Some(Tok::Var(_)) | Some(Tok::Ell) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.error("expected exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                let mut q = BigRational::from_integer(v);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            q /= BigRational::from_integer(d);
                        }
                        _ => return Err(self.error("expected nonzero denominator")),
                    }
                }
                Ok(Polynomial::constant(self.n, q))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                if i == 0 || i > self.n {
                    return Err(PolyError::Parse {
                        input: self.input.to_string(),
                        message: format!("variable index {i} outside 1..={}", self.n),
                    });
                }
                Ok(Polynomial::var(self.n, i - 1))
            }
            Some(Tok::Ell) => {
                self.pos += 1;
                Ok(Polynomial::linear(&vec![BigRational::one(); self.n]))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
