//! Expressions over chains and cycles.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := primary ('^' int)*
//! primary := 'C' int | 'L' int | '0' | '1' | 'x' | '(' expr ')'
//! ```
//!
//! `1` is `C1`. The variable `x` is only accepted when parsing polynomials.

use std::fmt;

use dynsum_core::poly::{reduce_poly, CubicPoly};
use dynsum_core::{ChainSum, CycleSum, Element};

/// Largest integer literal accepted anywhere in an expression.
pub const MAX_LITERAL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Cycle(u64),
    Chain(u64),
    Zero,
    Var,
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
    allow_var: bool,
}

impl<'s> Parser<'s> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        let found = match self.src[self.pos..].chars().next() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        Err(ParseError { offset: self.pos, message: format!("expected {expected}, found {found}") })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while self.eat('+') {
            lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while self.eat('^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.int()?;
            if e == 0 {
                return Err(ParseError { offset: at, message: "exponent must be at least 1".into() });
            }
            base = Expr::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let expected = if self.allow_var { "'C', 'L', '0', '1', 'x' or '('" } else { "'C', 'L', '0', '1' or '('" };
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("')'");
                }
                Ok(inner)
            }
            Some(c @ ('C' | 'L')) => {
                self.pos += 1;
                let at = self.pos;
                let d = self.int()?;
                if d == 0 {
                    return Err(ParseError { offset: at, message: format!("{c}0 is not a valid length") });
                }
                Ok(if c == 'C' { Expr::Cycle(d) } else { Expr::Chain(d) })
            }
            Some('x') if self.allow_var => {
                self.pos += 1;
                Ok(Expr::Var)
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                match self.int()? {
                    0 => Ok(Expr::Zero),
                    1 => Ok(Expr::Cycle(1)),
                    n => Err(ParseError {
                        offset: at,
                        message: format!("bare integer {n} is not an element; write C{n} or L{n}"),
                    }),
                }
            }
            _ => self.error(expected),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let digits = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.error("an integer");
        }
        self.pos += digits;
        match self.src[start..self.pos].parse::<u64>() {
            Ok(n) if n <= MAX_LITERAL => Ok(n),
            _ => Err(ParseError { offset: start, message: format!("integer exceeds {MAX_LITERAL}") }),
        }
    }
}

fn parse_with(src: &str, allow_var: bool) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0, allow_var };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("'+', '*', '^' or end of input");
    }
    Ok(e)
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    parse_with(src, false)
}

/// Parses a polynomial in `x`.
pub fn parse_poly(src: &str) -> Result<Expr, ParseError> {
    parse_with(src, true)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] dynsum_core::Error),
    #[error("the variable x is not allowed here")]
    UnexpectedVariable,
    #[error("polynomial coefficients must be sums of cycles")]
    ChainCoefficient,
    #[error("expected a sum of cycles, found chains")]
    ChainsNotAllowed,
}

fn pow_by<T: Clone>(base: &T, e: u64, one: T, mul: impl Fn(&T, &T) -> Result<T, EvalError>) -> Result<T, EvalError> {
    let (mut base, mut e, mut acc) = (base.clone(), e, one);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base)?;
        }
    }
    Ok(acc)
}

impl Expr {
    pub fn eval(&self) -> Result<Element, EvalError> {
        Ok(match self {
            Expr::Cycle(d) => CycleSum::cycle(*d)?.into(),
            Expr::Chain(d) => ChainSum::chain(*d)?.into(),
            Expr::Zero => Element::zero(),
            Expr::Var => return Err(EvalError::UnexpectedVariable),
            Expr::Add(l, r) => &l.eval()? + &r.eval()?,
            Expr::Mul(l, r) => l.eval()?.try_mul(&r.eval()?)?,
            Expr::Pow(b, e) => pow_by(&b.eval()?, *e, Element::one(), |x, y| Ok(x.try_mul(y)?))?,
        })
    }

    /// Coefficients of the polynomial, `coeffs[e]` multiplying `x^e`, with
    /// powers above 3 folded down.
    pub fn eval_poly(&self) -> Result<CubicPoly, EvalError> {
        let coeffs = self.poly_coeffs()?;
        Ok(reduce_poly(&coeffs))
    }

    fn poly_coeffs(&self) -> Result<Vec<CycleSum>, EvalError> {
        let constant = |x: Element| {
            if x.chains.is_zero() {
                Ok(vec![x.cycles])
            } else {
                Err(EvalError::ChainCoefficient)
            }
        };
        Ok(match self {
            Expr::Var => vec![CycleSum::zero(), CycleSum::one()],
            Expr::Cycle(_) | Expr::Chain(_) | Expr::Zero => constant(self.eval()?)?,
            Expr::Add(l, r) => {
                let (l, r) = (l.poly_coeffs()?, r.poly_coeffs()?);
                (0..l.len().max(r.len()))
                    .map(|i| &l.get(i).cloned().unwrap_or_default() + &r.get(i).cloned().unwrap_or_default())
                    .collect()
            }
            Expr::Mul(l, r) => poly_mul(&l.poly_coeffs()?, &r.poly_coeffs()?)?,
            Expr::Pow(b, e) => pow_by(&b.poly_coeffs()?, *e, vec![CycleSum::one()], |x, y| poly_mul(x, y))?,
        })
    }
}

/// Product of coefficient lists, keeping degree at most 3 by folding.
fn poly_mul(l: &[CycleSum], r: &[CycleSum]) -> Result<Vec<CycleSum>, EvalError> {
    let mut out = vec![CycleSum::zero(); 4];
    for (i, a) in l.iter().enumerate() {
        for (j, b) in r.iter().enumerate() {
            let e = i + j;
            let e = if e >= 4 { 2 + e % 2 } else { e };
            out[e] = &out[e] + &a.try_mul(b)?;
        }
    }
    Ok(out)
}

/// Parses and evaluates an element expression.
pub fn element(src: &str) -> Result<Element, EvalError> {
    parse(src)?.eval()
}

/// Parses and evaluates an expression that must be a sum of cycles.
pub fn cycle_sum(src: &str) -> Result<CycleSum, EvalError> {
    let x = element(src)?;
    if !x.chains.is_zero() {
        return Err(EvalError::ChainsNotAllowed);
    }
    Ok(x.cycles)
}
