//! Scalar text syntax.
//!
//! Rationals are written `p/q` or `p`; elements of a cyclotomic field are
//! polynomials in `z`, the primitive root of the declared order, for example
//! `1/2*z^3 - 1`. Sums, products, quotients, integer powers and parentheses
//! are accepted; the canonical printer only emits the polynomial form.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::FieldSpec;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed scalar at column {column}: {message}")]
pub struct ScalarParseError {
    /// 1-based character column inside the scalar text.
    pub column: usize,
    pub message: String,
}

impl Scalar {
    /// Parses `text` as an element of `field`.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Scalar, ScalarParseError> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0, field };
        p.skip_ws();
        if p.at_end() {
            return Err(p.error("empty scalar"));
        }
        let value = p.expr()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error(format!("unexpected character '{}'", p.chars[p.pos])));
        }
        Ok(value)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    field: FieldSpec,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> ScalarParseError {
        ScalarParseError { column: self.pos + 1, message: message.into() }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarParseError> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarParseError> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let rhs = self.power()?;
                    let inv = rhs.inv().ok_or(ScalarParseError {
                        column: at + 1,
                        message: "division by zero".into(),
                    })?;
                    acc = acc * inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let digits = self.digits().ok_or_else(|| self.error("expected integer exponent"))?;
        let exp: i64 = digits.parse().map_err(|_| ScalarParseError {
            column: at + 1,
            message: "exponent out of range".into(),
        })?;
        let exp = if negative { -exp } else { exp };
        base.pow(exp).ok_or(ScalarParseError { column: at + 1, message: "zero raised to a negative power".into() })
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<Scalar, ScalarParseError> {
        self.skip_ws();
        match self.peek() {
            Some('z') => {
                if self.field.is_rational() {
                    return Err(self.error("'z' is not available over the rationals"));
                }
                self.pos += 1;
                Ok(Scalar::root_of_unity(self.field.order(), 1))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits().expect("at least one digit");
                let n: BigInt = digits.parse().expect("decimal digits");
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of scalar")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> Scalar {
        Scalar::parse(text, FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn rationals() {
        assert_eq!(q("3"), Scalar::from_int(3));
        assert_eq!(q("-6/4"), Scalar::from_ratio(-3, 2));
        assert_eq!(q(" 1/2 + 1/3 "), Scalar::from_ratio(5, 6));
        assert_eq!(q("(2)^-2"), Scalar::from_ratio(1, 4));
    }

    #[test]
    fn cyclotomic_polynomials_in_z() {
        let f = FieldSpec::cyclotomic(8);
        let x = Scalar::parse("1/2*z^3 - 1", f).unwrap();
        assert_eq!(x.to_string(), "1/2*z^3 - 1");
        // z^4 = -1 in Q(zeta_8)
        assert_eq!(Scalar::parse("z^4", f).unwrap(), Scalar::from_int(-1));
        let i = FieldSpec::cyclotomic(4);
        assert_eq!(Scalar::parse("z^3", i).unwrap(), Scalar::parse("-z", i).unwrap());
    }

    #[test]
    fn errors_carry_columns() {
        let e = Scalar::parse("1/0", FieldSpec::Rationals).unwrap_err();
        assert_eq!(e.column, 3);
        let e = Scalar::parse("z", FieldSpec::Rationals).unwrap_err();
        assert_eq!(e.column, 1);
        let e = Scalar::parse("2 x", FieldSpec::Rationals).unwrap_err();
        assert_eq!(e.column, 3);
        assert!(Scalar::parse("", FieldSpec::Rationals).is_err());
        assert!(Scalar::parse("1/", FieldSpec::Rationals).is_err());
        assert!(Scalar::parse("1.5", FieldSpec::Rationals).is_err());
    }
}
