use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense univariate polynomial with integer coefficients, lowest degree
/// first. Trailing zeros are stripped, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, with the sign chosen so the leading coefficient is
    /// positive.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(|lc| lc.is_negative()) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`; callers guarantee divisibility.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        Polynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        (0..exp).fold(Polynomial::constant(1), |acc, _| acc.mul(self))
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Polynomial) -> Polynomial {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lc = d.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rlc = r.leading_coeff().unwrap().clone();
            let shift = rd - dd;
            let mut next = r.scale(&lc).coeffs;
            for (j, c) in d.coeffs.iter().enumerate() {
                next[j + shift] -= &rlc * c;
            }
            r = Polynomial::new(next);
        }
        r
    }

    /// Exact quotient `self / d` in Z[x], or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let dd = d.degree()?;
        let lc = d.leading_coeff().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (t, rem) = r.leading_coeff().unwrap().div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = rd - dd;
            let mut next = r.coeffs.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                next[j + shift] -= &t * c;
            }
            q[shift] = t;
            r = Polynomial::new(next);
        }
        Some(Polynomial::new(q))
    }

    /// Gcd over Q[x], returned primitive with positive leading coefficient
    /// and scaled by the gcd of the contents. Uses the primitive
    /// pseudo-remainder sequence so all arithmetic stays in Z.
    pub fn gcd(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return rhs.primitive_part().scale(&rhs.content());
        }
        if rhs.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&rhs.content());
        let (mut a, mut b) = (self.primitive_part(), rhs.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::from(0), |acc, c| {
            &(&acc * x) + &Rational::from_integer(c.clone())
        })
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// Highest degree first, in the syntax the rational-function parser reads:
/// `3*x^2 - 10*x + 3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let coeff = if mag.is_one() && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{mag}*")
            } else {
                mag.to_string()
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn strips_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn display_descending() {
        assert_eq!(p(&[-3, 1]).to_string(), "x - 3");
        assert_eq!(p(&[0, 0, 5]).to_string(), "5*x^2");
        assert_eq!(p(&[1, -2]).to_string(), "-2*x + 1");
        assert_eq!(p(&[3, -10, 3]).to_string(), "3*x^2 - 10*x + 3");
        assert_eq!(p(&[-1, 0, -1]).to_string(), "-x^2 - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-3)(3x-1) and 6(x-3)(x-1)
        let a = p(&[-3, 1]).mul(&p(&[-1, 3]));
        let b = p(&[-3, 1]).mul(&p(&[-1, 1])).scale(&BigInt::from(6));
        assert_eq!(a.gcd(&b), p(&[-3, 1]));
        // integer content participates
        assert_eq!(p(&[4, 8]).gcd(&p(&[6, 12])), p(&[2, 4]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, -1])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-3, 1]).mul(&p(&[5, 0, 2]));
        assert_eq!(a.div_exact(&p(&[-3, 1])), Some(p(&[5, 0, 2])));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), None);
        assert_eq!(Polynomial::zero().div_exact(&p(&[3])), Some(Polynomial::zero()));
    }

    #[test]
    fn pseudo_remainder_degree_drops() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[1, 0, 7]);
        let r = a.pseudo_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[-3, 1]).eval(&Rational::from(9)), Rational::from(6));
        assert_eq!(p(&[1, 1, 1]).eval(&Rational::frac(1, 2)), Rational::frac(7, 4));
    }
}
