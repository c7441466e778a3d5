//! Parser for the printed polynomial grammar:
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := integer | name ['^' integer]
//! ```
//!
//! Names are resolved against a caller-supplied variable list.

use super::{Int, Monomial, MultiPoly, PolyError};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<Int, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<Int>().map_err(|_| self.err("expected integer"))
    }

    fn name(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

pub fn parse_poly(text: &str, names: &[String]) -> Result<MultiPoly, PolyError> {
    let nvars = names.len();
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = Int::ONE;
    if lx.peek() == Some(b'-') {
        lx.bump();
        sign = Int::from(-1);
    } else if lx.peek() == Some(b'+') {
        lx.bump();
    }
    loop {
        let (m, c) = parse_term(&mut lx, names)?;
        terms.push((m, &c * &sign));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.bump();
                sign = Int::ONE;
            }
            Some(b'-') => {
                lx.bump();
                sign = Int::from(-1);
            }
            Some(c) => return Err(lx.err(format!("unexpected '{}'", c as char))),
        }
    }
    Ok(MultiPoly::from_terms(nvars, terms))
}

fn parse_term(lx: &mut Lexer<'_>, names: &[String]) -> Result<(Monomial, Int), PolyError> {
    let mut coeff = Int::ONE;
    let mut mono = Monomial::ONE;
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => coeff = &coeff * &lx.integer()?,
            Some(c) if c.is_ascii_alphabetic() => {
                let name = lx.name();
                let idx = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| lx.err(format!("unknown variable '{name}'")))?;
                let mut e = 1u32;
                if lx.peek() == Some(b'^') {
                    lx.bump();
                    e = lx
                        .integer()?
                        .to_i64()
                        .and_then(|v| u32::try_from(v).ok())
                        .ok_or_else(|| lx.err("exponent out of range"))?;
                }
                mono = mono.mul(&Monomial::var_pow(idx, u8::try_from(e).map_err(|_| lx.err("exponent out of range"))?));
            }
            _ => return Err(lx.err("expected a factor")),
        }
        if lx.peek() == Some(b'*') {
            lx.bump();
        } else {
            return Ok((mono, coeff));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_names() -> Vec<String> {
        ["z_5_1", "z_3_3", "z_5_3", "z_3_1", "z_4_1", "z_3_2"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn parses_printed_form() {
        let names = z_names();
        let p = parse_poly("z_5_1*z_3_3 - z_5_3*z_3_1", &names).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(parse_poly(&p.fmt_with(&names), &names).unwrap(), p);
        let q = parse_poly("z_5_1*z_3_3 + z_5_3*z_4_1*z_3_2 - z_5_3*z_3_1", &names).unwrap();
        assert_eq!(q.degree(), Some(3));
        assert_eq!(q.min_degree(), Some(2));
    }

    #[test]
    fn coefficients_powers_and_constants() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = parse_poly("-3*x^2*y + 2 - y", &names).unwrap();
        assert!(!p.to_string().is_empty());
        assert_eq!(p.coeff(&Monomial::ONE), Int::from(2));
        assert_eq!(p.coeff(&Monomial::from_exponents(&[2, 1])), Int::from(-3));
        assert!(parse_poly("x + w", &names).is_err());
        assert!(parse_poly("x +", &names).is_err());
    }
}
