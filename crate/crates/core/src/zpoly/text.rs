//! Human-readable text form: `8*t^7 + 28*t^5 - 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::{Error, Result};

impl IntPoly {
    /// Renders descending by power using `var` as the variable name.
    pub fn to_text(&self, var: &str) -> String {
        self.text_terms(var).join(" ")
    }

    /// Like [`to_text`](Self::to_text) but one term per line, each after the
    /// first prefixed with its sign.
    pub fn to_text_multiline(&self, var: &str, indent: &str) -> String {
        self.text_terms(var).into_iter().map(|term| format!("{indent}{term}")).collect::<Vec<_>>().join("\n")
    }

    fn text_terms(&self, var: &str) -> Vec<String> {
        if self.is_zero() {
            return vec!["0".to_string()];
        }
        let mut terms = Vec::new();
        for (power, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let body = match (power, magnitude.is_one()) {
                (0, _) => magnitude.to_string(),
                (1, true) => var.to_string(),
                (1, false) => format!("{magnitude}*{var}"),
                (_, true) => format!("{var}^{power}"),
                (_, false) => format!("{magnitude}*{var}^{power}"),
            };
            let term = match (terms.is_empty(), c.is_negative()) {
                (true, false) => body,
                (true, true) => format!("-{body}"),
                (false, false) => format!("+ {body}"),
                (false, true) => format!("- {body}"),
            };
            terms.push(term);
        }
        terms
    }

    /// Parses the text form. Whitespace between tokens is ignored but may not
    /// split a number; terms may appear in any order and repeated powers are
    /// summed. Accepts `3*t^2`, `3t^2`, `-t`,
    /// and bare integers. The variable is any single identifier, used
    /// consistently; it is returned alongside the polynomial (`None` when
    /// the input has no variable at all).
    pub fn parse_text(input: &str) -> Result<(IntPoly, Option<String>)> {
        let word = |c: char| c.is_ascii_alphanumeric() || c == '_';
        let mut prev: Option<char> = None;
        let mut gap = false;
        for c in input.chars() {
            if c.is_whitespace() {
                gap = true;
                continue;
            }
            // `28 t^5` is a coefficient times the variable; other gaps between
            // words would silently merge tokens.
            let implicit = prev.is_some_and(|p| p.is_ascii_digit()) && (c.is_ascii_alphabetic() || c == '_');
            if gap && word(c) && prev.is_some_and(word) && !implicit {
                return Err(Error::Parse(format!("missing operator before '{c}'")));
            }
            prev = Some(c);
            gap = false;
        }
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut var: Option<String> = None;
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut first = true;
        while pos < bytes.len() {
            let mut negative = false;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    negative = true;
                    pos += 1;
                }
                _ if first => {}
                other => {
                    return Err(Error::Parse(format!("expected '+' or '-' at offset {pos}, found '{}'", other as char)))
                }
            }
            first = false;

            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coefficient = if pos > digits_start {
                Some(BigInt::from_str(&s[digits_start..pos]).map_err(|e| Error::Parse(e.to_string()))?)
            } else {
                None
            };
            if coefficient.is_some() && pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || !is_ident_start(bytes[pos]) {
                    return Err(Error::Parse(format!("expected variable after '*' at offset {pos}")));
                }
            }

            let mut power = 0usize;
            if pos < bytes.len() && is_ident_start(bytes[pos]) {
                let name_start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                let name = &s[name_start..pos];
                match &var {
                    Some(v) if v != name => return Err(Error::Parse(format!("mixed variables `{v}` and `{name}`"))),
                    Some(_) => {}
                    None => var = Some(name.to_string()),
                }
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let exp_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == exp_start {
                        return Err(Error::Parse(format!("missing exponent at offset {pos}")));
                    }
                    power = s[exp_start..pos].parse().map_err(|_| Error::Parse("exponent out of range".into()))?;
                }
            } else if coefficient.is_none() {
                return Err(Error::Parse(format!("expected a term at offset {pos}")));
            }

            let mut c = coefficient.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += c;
        }
        Ok((IntPoly::from_coeffs(coeffs), var))
    }
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntPoly::parse_text(s).map(|(p, _)| p)
    }
}
