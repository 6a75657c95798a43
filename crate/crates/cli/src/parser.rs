//! Element expressions: integers, variables, `+ - * / ^` and parentheses.
//!
//! Expressions are evaluated as rational functions `numerator / denominator`
//! and accepted only when the final division is exact, so the result is an
//! honest Laurent polynomial. Exponents are integers and may be negative
//! (`x1^-2` or `x1^(-2)`); `-x^2` means `-(x^2)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use upcluster_core::{Error as CoreError, LaurentPoly};

use crate::error::{CliError, CliResult};

/// Exponents beyond this are rejected before any arithmetic happens.
pub const MAX_EXPONENT: i64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn describe(token: Option<&Token>) -> String {
    match token {
        None => "end of input".into(),
        Some(Token::Int(n)) => format!("`{n}`"),
        Some(Token::Ident(s)) => format!("`{s}`"),
        Some(Token::Plus) => "`+`".into(),
        Some(Token::Minus) => "`-`".into(),
        Some(Token::Star) => "`*`".into(),
        Some(Token::Slash) => "`/`".into(),
        Some(Token::Caret) => "`^`".into(),
        Some(Token::LParen) => "`(`".into(),
        Some(Token::RParen) => "`)`".into(),
    }
}

/// Tokens with their 1-based starting columns.
fn tokenize(text: &str) -> CliResult<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(token) = single {
            out.push((token, column));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Token::Int(digits.parse().expect("ascii digits")), column));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), column));
        } else {
            return Err(CliError::Syntax {
                position: column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// A rational function kept as numerator over denominator. Monomial and
/// exactly dividing denominators are absorbed as soon as they appear.
#[derive(Clone, Debug)]
struct Fraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Fraction {
    fn whole(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.nvars());
        Fraction { num: p, den }
    }

    fn reduce(self) -> Self {
        if self.den.is_monomial() || self.num.is_zero() {
            let num = self.num.exact_divide(&self.den).expect("monomials divide");
            return Fraction::whole(num);
        }
        match self.num.exact_divide(&self.den) {
            Ok(q) => Fraction::whole(q),
            Err(_) => self,
        }
    }

    fn add(self, other: Fraction) -> Self {
        if self.den == other.den {
            let num = &self.num + &other.num;
            return Fraction { num, den: self.den }.reduce();
        }
        Fraction {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
        .reduce()
    }

    fn neg(self) -> Self {
        Fraction {
            num: -&self.num,
            den: self.den,
        }
    }

    fn mul(self, other: Fraction) -> Self {
        Fraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .reduce()
    }

    fn recip(self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Fraction { num: self.den, den: self.num }.reduce())
    }

    fn pow(self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.recip()? } else { self };
        let e = k.unsigned_abs() as u32;
        Some(Fraction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }
}

/// A parsed element: its source and the rational function it denotes.
#[derive(Clone, Debug)]
pub struct ElementExpression {
    pub source: String,
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl ElementExpression {
    /// Parses `text` over the variables `names` (slot `k` may also be
    /// written `x{k+1}`).
    pub fn parse(text: &str, names: &[String]) -> CliResult<Self> {
        let tokens = tokenize(text)?;
        let mut lookup: HashMap<String, usize> = (0..names.len()).map(|k| (format!("x{}", k + 1), k)).collect();
        for (k, name) in names.iter().enumerate() {
            lookup.insert(name.clone(), k);
        }
        let mut parser = Parser {
            tokens,
            pos: 0,
            nvars: names.len(),
            lookup,
            end_column: text.chars().count() + 1,
        };
        let value = parser.expression()?;
        if parser.pos < parser.tokens.len() {
            return Err(parser.unexpected("an operator"));
        }
        Ok(ElementExpression {
            source: text.to_string(),
            numerator: value.num,
            denominator: value.den,
        })
    }

    /// The Laurent polynomial, if the division is exact.
    pub fn to_laurent(&self) -> CliResult<LaurentPoly> {
        match self.numerator.exact_divide(&self.denominator) {
            Ok(p) => Ok(p),
            Err(CoreError::NotDivisible) => Err(CliError::NotLaurent {
                denominator: self.denominator.to_string(),
            }),
            Err(e) => Err(e.into()),
        }
    }
}

/// Parses and evaluates an element over the variables `names`.
pub fn parse_element(text: &str, names: &[String]) -> CliResult<LaurentPoly> {
    ElementExpression::parse(text, names)?.to_laurent()
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    nvars: usize,
    lookup: HashMap<String, usize>,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |(_, c)| *c)
    }

    fn unexpected(&self, wanted: &str) -> CliError {
        CliError::Syntax {
            position: self.column(),
            message: format!("expected {wanted}, found {}", describe(self.peek())),
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expression(&mut self) -> CliResult<Fraction> {
        let mut value = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                value = value.add(self.term()?);
            } else if self.eat(&Token::Minus) {
                value = value.add(self.term()?.neg());
            } else {
                return Ok(value);
            }
        }
    }

    fn term(&mut self) -> CliResult<Fraction> {
        let mut value = self.unary()?;
        loop {
            if self.eat(&Token::Star) {
                value = value.mul(self.unary()?);
            } else if self.peek() == Some(&Token::Slash) {
                let column = self.column();
                self.pos += 1;
                let divisor = self.unary()?.recip().ok_or(CliError::Syntax {
                    position: column,
                    message: "division by zero".into(),
                })?;
                value = value.mul(divisor);
            } else {
                return Ok(value);
            }
        }
    }

    fn unary(&mut self) -> CliResult<Fraction> {
        if self.eat(&Token::Minus) {
            return Ok(self.unary()?.neg());
        }
        if self.eat(&Token::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> CliResult<Fraction> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        let column = self.column();
        self.pos += 1;
        let exponent = self.exponent()?;
        base.pow(exponent).ok_or(CliError::Syntax {
            position: column,
            message: "zero raised to a negative power".into(),
        })
    }

    fn exponent(&mut self) -> CliResult<i64> {
        let parenthesized = self.eat(&Token::LParen);
        let negative = if self.eat(&Token::Minus) {
            true
        } else {
            self.eat(&Token::Plus);
            false
        };
        let column = self.column();
        let Some(Token::Int(n)) = self.peek().cloned() else {
            return Err(self.unexpected("an integer exponent"));
        };
        self.pos += 1;
        let magnitude = n
            .to_i64()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| CliError::Syntax {
                position: column,
                message: format!("exponent {n} exceeds {MAX_EXPONENT}"),
            })?;
        if parenthesized && !self.eat(&Token::RParen) {
            return Err(self.unexpected("`)`"));
        }
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn atom(&mut self) -> CliResult<Fraction> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Fraction::whole(LaurentPoly::constant(self.nvars, BigRational::from_integer(n))))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let k = *self.lookup.get(&name).ok_or_else(|| CliError::Syntax {
                    position: column,
                    message: format!("unknown variable `{name}` (expected x1..x{} or a declared name)", self.nvars),
                })?;
                Ok(Fraction::whole(LaurentPoly::var(self.nvars, k)))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expression()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}
