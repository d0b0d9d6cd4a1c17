//! Univariate polynomials with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{internal, usage, Error, Result};

/// Display name of the indeterminate. Point counts are in `q`, Poincaré
/// series in `t`, weighted Euler characteristics in `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Q,
    T,
    V,
}

impl Var {
    fn symbol(self) -> char {
        match self {
            Var::Q => 'q',
            Var::T => 't',
            Var::V => 'v',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    var: Var,
    /// `coeffs[i]` multiplies `x^i`; no trailing zeros.
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(var: Var, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        IntPolynomial { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: i64) -> Self {
        IntPolynomial::new(var, vec![c])
    }

    pub fn monomial(var: Var, c: i64, exponent: usize) -> Self {
        let mut coeffs = vec![0; exponent + 1];
        coeffs[exponent] = c;
        IntPolynomial::new(var, coeffs)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Same coefficients, different indeterminate.
    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * x as i128 + c as i128)
    }

    pub fn scale(&self, k: i64) -> Self {
        IntPolynomial::new(self.var, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Substitutes `x ↦ x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        let mut coeffs = vec![0; self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        IntPolynomial::new(self.var, coeffs)
    }

    /// Exact quotient by a polynomial with leading coefficient ±1.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let dd = divisor.degree().ok_or_else(|| usage("division by the zero polynomial"))?;
        let lead = divisor.coeffs[dd];
        if lead.abs() != 1 {
            return Err(usage("divisor must have leading coefficient ±1"));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(IntPolynomial::zero(self.var))
            } else {
                Err(internal(format!("{self} is not divisible by {divisor}")))
            };
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for s in (0..quot.len()).rev() {
            let c = rem[s + dd] * lead;
            quot[s] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[s + i] -= c * dc;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(internal(format!("{self} is not divisible by {divisor}")));
        }
        Ok(IntPolynomial::new(self.var, quot))
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "mixing polynomials in different variables");
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(self.var, (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(self.var, (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.check_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero(self.var);
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(self.var, out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPolynomial {
    /// `q` prints highest power first; `t` and `v` lowest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.var.symbol();
        let order: Vec<usize> = match self.var {
            Var::Q => (0..self.coeffs.len()).rev().collect(),
            Var::T | Var::V => (0..self.coeffs.len()).collect(),
        };
        let mut first = true;
        for i in order {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if i == 1 {
                        write!(f, "{x}")?;
                    } else {
                        write!(f, "{x}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses sums of terms like `3q^2`, `-t`, `7`. The variable is taken
    /// from the first non-constant term; constants alone default to `q`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(usage("empty polynomial"));
        }
        let mut var = None;
        let mut coeffs: Vec<i64> = Vec::new();
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let bad = || usage(format!("cannot parse term {term:?} in {s:?}"));
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let split = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
            let (digits, rest) = body.split_at(split);
            let c: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            let exponent = if rest.is_empty() {
                if digits.is_empty() {
                    return Err(bad());
                }
                0
            } else {
                let mut chars = rest.chars();
                let sym = chars.next().ok_or_else(bad)?;
                let v = match sym {
                    'q' => Var::Q,
                    't' => Var::T,
                    'v' => Var::V,
                    _ => return Err(bad()),
                };
                if *var.get_or_insert(v) != v {
                    return Err(usage(format!("mixed variables in {s:?}")));
                }
                let tail = chars.as_str();
                match tail.strip_prefix('^') {
                    Some(e) => e.parse::<usize>().map_err(|_| bad())?,
                    None if tail.is_empty() => 1,
                    None => return Err(bad()),
                }
            };
            if coeffs.len() <= exponent {
                coeffs.resize(exponent + 1, 0);
            }
            coeffs[exponent] += sign * c;
        }
        Ok(IntPolynomial::new(var.unwrap_or(Var::Q), coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn display_conventions() {
        assert_eq!(IntPolynomial::new(Var::Q, vec![0, 2, -3, 1]).to_string(), "q^3 - 3q^2 + 2q");
        assert_eq!(IntPolynomial::new(Var::T, vec![1, -1, 1, -1]).to_string(), "1 - t + t^2 - t^3");
        assert_eq!(IntPolynomial::new(Var::V, vec![-2, 0, 1]).to_string(), "-2 + v^2");
        assert_eq!(IntPolynomial::zero(Var::V).to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["q^3 - 9q^2 + 26q - 24", "1 + 6t + 12t^2 + 8t^3", "-v^4 + v^6", "7"] {
            let a = p(s);
            assert_eq!(p(&a.to_string()), a);
        }
        assert_eq!(p("1 - t + t^2 - t^3").coeffs(), &[1, -1, 1, -1]);
        assert!("q + t".parse::<IntPolynomial>().is_err());
        assert!("q^".parse::<IntPolynomial>().is_err());
        assert!("x".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn exact_division() {
        let pgl = p("q^3 - q");
        let num = &p("q^3 - q") * &p("q^3 - q - 3");
        assert_eq!(num.div_exact(&pgl).unwrap(), p("q^3 - q - 3"));
        assert!(p("q^3 + 1").div_exact(&pgl).is_err());
        assert!(p("q").div_exact(&p("2q")).is_err());
        assert_eq!(IntPolynomial::zero(Var::Q).div_exact(&pgl).unwrap(), IntPolynomial::zero(Var::Q));
    }

    #[test]
    fn arithmetic() {
        let a = p("q + 1");
        let b = p("q - 1");
        assert_eq!(&a * &b, p("q^2 - 1"));
        assert_eq!(&a - &a, IntPolynomial::zero(Var::Q));
        assert_eq!((&a + &b).eval(3), 6);
        assert_eq!(p("1 + t").inflate(2), p("1 + t^2"));
        assert_eq!(p("q^2 - 1").degree(), Some(2));
    }
}
