use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{ArithError, Field, Polynomial, Rational};

/// Quotient of two integer polynomials in `x`, kept canonical so that
/// equality is structural:
///
/// - numerator and denominator share no common factor over Q[x],
/// - their integer contents are coprime,
/// - the denominator's leading coefficient is positive,
/// - zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numer: Polynomial,
    denom: Polynomial,
}

impl RationalFunction {
    pub fn new(numer: Polynomial, denom: Polynomial) -> Result<Self, ArithError> {
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if numer.is_zero() {
            return Ok(Self::from_poly(Polynomial::zero()));
        }
        let g = numer.gcd(&denom).primitive_part();
        let (mut n, mut d) = if g.degree() == Some(0) {
            (numer, denom)
        } else {
            (
                numer.div_exact(&g).expect("gcd divides numerator"),
                denom.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = n.content().gcd(&d.content());
        if d.leading_coeff().is_some_and(|lc| lc.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            n = n.div_scalar_exact(&c);
            d = d.div_scalar_exact(&c);
        }
        Ok(RationalFunction { numer: n, denom: d })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            numer: p,
            denom: Polynomial::constant(1),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        RationalFunction::new(
            Polynomial::constant(r.numer().clone()),
            Polynomial::constant(r.denom().clone()),
        )
        .expect("rational denominators are nonzero")
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    /// Integer leading coefficient of the denominator. For the diagonal
    /// formulas this is the constant in front of `(x-1)^k`.
    pub fn denom_leading_coeff(&self) -> &BigInt {
        self.denom.leading_coeff().expect("denominator is nonzero")
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, ArithError> {
        let d = self.denom.eval(x);
        if d.is_zero() {
            return Err(ArithError::Pole(x.to_string()));
        }
        self.numer.eval(x).checked_div(&d)
    }

    /// Checks the canonical-form invariants; used by property tests.
    pub fn is_canonical(&self) -> bool {
        let lc_ok = self.denom.leading_coeff().is_some_and(|lc| lc.is_positive());
        let content_ok = self.numer.content().gcd(&self.denom.content()).is_one();
        let gcd_ok = self.numer.gcd(&self.denom).primitive_part().degree() == Some(0);
        lc_ok && content_ok && (self.numer.is_zero() && self.denom.is_one() || gcd_ok)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| Field::mul(&acc, self))
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    fn one() -> Self {
        Self::from_poly(Polynomial::constant(1))
    }

    fn from_i64(v: i64) -> Self {
        Self::from_poly(Polynomial::constant(v))
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.denom == rhs.denom {
            return Self::new(self.numer.add(&rhs.numer), self.denom.clone()).unwrap();
        }
        Self::new(
            self.numer.mul(&rhs.denom).add(&rhs.numer.mul(&self.denom)),
            self.denom.mul(&rhs.denom),
        )
        .unwrap()
    }

    fn sub(&self, rhs: &Self) -> Self {
        Field::add(
            self,
            &RationalFunction {
                numer: rhs.numer.neg(),
                denom: rhs.denom.clone(),
            },
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.numer.mul(&rhs.numer), self.denom.mul(&rhs.denom)).unwrap()
    }

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        if rhs.numer.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Self::new(self.numer.mul(&rhs.denom), self.denom.mul(&rhs.numer))
    }

    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({})/({})", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses expressions in `x` built from integers, `+ - * / ^` and
/// parentheses, e.g. `1-3/x` or `(x-3)*(3*x-1)/(6*(x-1)^2)`.
impl FromStr for RationalFunction {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser {
            src: s,
            tokens: &tokens,
            pos: 0,
        };
        let value = parser.expr()?;
        if parser.pos != tokens.len() {
            return Err(parser.error());
        }
        Ok(value)
    }
}

struct Parser<'a> {
    src: &'a str,
    tokens: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self) -> ArithError {
        ArithError::Parse(self.src.to_string())
    }

    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction, ArithError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' {
                Field::add(&acc, &rhs)
            } else {
                Field::sub(&acc, &rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, ArithError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                Field::mul(&acc, &rhs)
            } else {
                Field::div(&acc, &rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction, ArithError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(Field::sub(&RationalFunction::zero(), &v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ArithError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.tokens[start..self.pos].iter().collect();
            let exp: u32 = digits.parse().map_err(|_| self.error())?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, ArithError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(v)
            }
            Some('x') => {
                self.pos += 1;
                Ok(RationalFunction::x())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.tokens[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().map_err(|_| self.error())?;
                Ok(RationalFunction::from_poly(Polynomial::constant(n)))
            }
            _ => Err(self.error()),
        }
    }
}
