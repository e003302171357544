//! Polynomial expressions and arrangement files.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := number ('/' number)? | 'x' | 'y' | 'z' | '(' sum ')'
//! ```
//!
//! `-x^2` is `-(x^2)`. U+2212 is accepted as a minus sign.

use std::collections::BTreeMap;

use logsplit::exact::Rat;
use logsplit::poly::{Exp, HomPoly, LinForm};
use logsplit::{arrangement::Arrangement, Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Polynomial under construction; not necessarily homogeneous.
type Terms = BTreeMap<Exp, Rat>;

const MAX_DEGREE: u32 = 200;

fn normalize_minus(src: &str) -> String {
    src.replace('\u{2212}', "-")
}

pub fn parse_poly(src: &str) -> Result<HomPoly> {
    let chars: Vec<char> = normalize_minus(src).chars().collect();
    let mut p = Parser { s: &chars, pos: 0 };
    let terms = p.sum()?;
    p.skip_ws();
    if p.pos < chars.len() {
        return Err(p.err(format!("unexpected '{}'", chars[p.pos])));
    }
    let mut degrees = terms.keys().map(|e| e[0] + e[1] + e[2]);
    let Some(d) = degrees.next() else {
        return Err(Error::ZeroPolynomial);
    };
    if let Some(other) = degrees.find(|&e| e != d) {
        return Err(Error::NonHomogeneous(d.min(other), d.max(other)));
    }
    HomPoly::from_terms(d, terms)
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: String) -> Error {
        Error::Parse {
            pos: self.pos + 1,
            msg,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Terms> {
        let mut acc = self.product()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            add_into(&mut acc, rhs, c == '-');
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Terms> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = mul(&acc, &rhs);
        }
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                Err(self.err("missing '*' (implicit multiplication is not allowed)".into()))
            }
            _ => Ok(acc),
        }
    }

    fn unary(&mut self) -> Result<Terms> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let mut t = self.unary()?;
            t.values_mut().for_each(|c| *c = -c.clone());
            return Ok(t);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("'^' needs a nonnegative integer exponent".into()));
        }
        let n: u32 = digits
            .parse()
            .ok()
            .filter(|&n| n <= MAX_DEGREE)
            .ok_or_else(|| Error::Parse {
                pos: start + 1,
                msg: format!("exponent {digits} exceeds {MAX_DEGREE}"),
            })?;
        let mut out = constant(Rat::one());
        for _ in 0..n {
            out = mul(&out, &base);
        }
        Ok(out)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.s[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Terms> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c @ ('x' | 'y' | 'z')) => {
                self.pos += 1;
                if matches!(self.s.get(self.pos), Some(c) if c.is_ascii_alphanumeric()) {
                    return Err(self.err("unknown identifier".into()));
                }
                let mut e = [0; 3];
                e[(c as u8 - b'x') as usize] = 1;
                Ok(Terms::from([(e, Rat::one())]))
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut den = BigInt::one();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.err("expected a denominator after '/'".into()));
                    }
                    den = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.err("zero denominator".into()));
                    }
                }
                Ok(constant(Rat::new(num, den)))
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input".into())),
        }
    }
}

fn constant(c: Rat) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert([0; 3], c);
    }
    t
}

fn add_into(acc: &mut Terms, rhs: Terms, negate: bool) {
    for (e, c) in rhs {
        let slot = acc.entry(e).or_insert_with(Rat::zero);
        if negate {
            *slot -= c;
        } else {
            *slot += c;
        }
        if slot.is_zero() {
            acc.remove(&e);
        }
    }
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            add_into(&mut out, Terms::from([(e, ca * cb)]), false);
        }
    }
    out
}

/// One rational literal: `a` or `a/b`, optionally signed.
pub fn parse_rational(tok: &str) -> std::result::Result<Rat, String> {
    let tok = normalize_minus(tok);
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad number '{tok}'"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad number '{tok}'"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in '{tok}'"));
    }
    Ok(Rat::new(num, den))
}

/// Arrangement file: one line `a b c` per form `a x + b y + c z`; `#`
/// starts a comment.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let row = |msg: String| Error::MalformedRow { line: i + 1, msg };
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(row(format!("expected 3 coefficients, found {}", toks.len())));
        }
        let c = toks
            .iter()
            .map(|t| parse_rational(t))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(row)?;
        let [a, b, c]: [Rat; 3] = c.try_into().expect("three values");
        lines.push(LinForm::new(a, b, c).map_err(|_| row("zero linear form".into()))?);
    }
    if lines.is_empty() {
        return Err(Error::MalformedRow {
            line: 0,
            msg: "no lines in arrangement file".into(),
        });
    }
    Arrangement::new(lines)
}

/// `a,b,c` as given to `--line`.
pub fn parse_line_spec(spec: &str) -> Result<LinForm> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let bad = |msg: String| Error::Parse { pos: 1, msg };
    if parts.len() != 3 {
        return Err(bad(format!("line '{spec}' needs three comma-separated coefficients")));
    }
    let c = parts
        .iter()
        .map(|t| parse_rational(t))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(bad)?;
    let [a, b, c]: [Rat; 3] = c.try_into().expect("three values");
    LinForm::new(a, b, c).map_err(|_| bad("zero linear form".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use logsplit::exact::rat;

    #[test]
    fn simple_products() {
        let p = parse_poly("x*y*z").unwrap();
        assert_eq!(p, HomPoly::monomial(rat(1), [1, 1, 1]));
        assert_eq!(parse_poly("x * y*z ").unwrap(), p);
    }

    #[test]
    fn precedence() {
        let a = parse_poly("-x^2 + y^2").unwrap();
        assert_eq!(a.coeff([2, 0, 0]), rat(-1));
        let b = parse_poly("(x-y)^2").unwrap();
        assert_eq!(b.coeff([1, 1, 0]), rat(-2));
        let c = parse_poly("2*x - -y").unwrap();
        assert_eq!(c.coeff([0, 1, 0]), rat(1));
    }

    #[test]
    fn rationals_and_unicode_minus() {
        let p = parse_poly("3/2*x \u{2212} y").unwrap();
        assert_eq!(p.coeff([1, 0, 0]), Rat::new(3.into(), 2.into()));
        assert_eq!(p.coeff([0, 1, 0]), rat(-1));
    }

    #[test]
    fn septic_degree() {
        let p = parse_poly("x*z*(x^2-y^2)*(x^2-2*y^2)*(y-z)").unwrap();
        assert_eq!(p.degree(), 7);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("x^2 + y"), Err(Error::NonHomogeneous(1, 2)));
        assert_eq!(parse_poly("x - x"), Err(Error::ZeroPolynomial));
        assert!(matches!(parse_poly("x + "), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_poly("2x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("x^y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("(x+y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("w"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_poly("x/2"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn arrangement_files() {
        let a = parse_arrangement("# tri\n1 0 0\n0 1 0  # y\n\n0 0 1\n").unwrap();
        assert_eq!(a.n(), 3);
        let b = parse_arrangement("1 2 3\n").unwrap();
        assert_eq!(b.lines()[0], LinForm::from_ints(1, 2, 3).unwrap());
        assert_eq!(
            parse_arrangement("1 0 0\n2 0 0\n"),
            Err(Error::ProportionalLines(0, 1))
        );
        assert!(matches!(
            parse_arrangement("1 0\n"),
            Err(Error::MalformedRow { line: 1, .. })
        ));
        assert!(matches!(
            parse_arrangement("1 0 0\n0 0 0\n"),
            Err(Error::MalformedRow { line: 2, .. })
        ));
        assert!(parse_arrangement("1/2 -1 3/4\n").is_ok());
    }

    #[test]
    fn line_spec() {
        assert_eq!(
            parse_line_spec("1,2,3").unwrap(),
            LinForm::from_ints(1, 2, 3).unwrap()
        );
        assert!(parse_line_spec("1,2").is_err());
    }
}
