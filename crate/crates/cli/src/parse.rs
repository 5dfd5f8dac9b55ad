//! Text grammar for twist words.
//!
//! ```text
//! word   := letter (WS letter)*
//! letter := curve ('^' INT)?
//! curve  := 'a' N | 'b' N | 'd' N | '[' INT (',' INT)* ']'
//! ```
//!
//! Indices are 1-based. Exponents must be nonzero.

use fibrekit::{BasisLabel, HomologyClass, SurfaceSignature, TwistLetter, TwistWord};

use crate::error::ParseError;

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }
}

fn parse_curve(
    token: &str,
    surface: SurfaceSignature,
) -> Result<HomologyClass, ParseError> {
    if let Some(inner) = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let coords = inner
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ParseError::UnknownToken(token.to_string()))?;
        return HomologyClass::new(surface, coords.clone()).map_err(|_| {
            ParseError::VectorLengthMismatch {
                token: token.to_string(),
                expected: surface.b1(),
                found: coords.len(),
            }
        });
    }
    let mut chars = token.chars();
    let kind = chars.next();
    let digits = chars.as_str();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(ParseError::UnknownToken(token.to_string()));
    }
    let index: usize = digits
        .parse()
        .map_err(|_| ParseError::IndexOutOfRange(token.to_string()))?;
    let label = match kind {
        Some('a') => BasisLabel::A(index),
        Some('b') => BasisLabel::B(index),
        Some('d') => BasisLabel::D(index),
        _ => return Err(ParseError::UnknownToken(token.to_string())),
    };
    HomologyClass::basis(surface, label).ok_or_else(|| ParseError::IndexOutOfRange(token.to_string()))
}

pub fn parse_word(text: &str, surface: SurfaceSignature) -> Result<TwistWord, ParseError> {
    let mut sc = Scanner { text, pos: 0 };
    let mut word = TwistWord::empty(surface);
    loop {
        sc.skip_ws();
        let Some(first) = sc.peek() else {
            break;
        };
        let curve_text = if first == '[' {
            let start = sc.pos;
            let Some(close) = text[start..].find(']') else {
                return Err(ParseError::UnknownToken(text[start..].trim_end().to_string()));
            };
            sc.pos = start + close + 1;
            &text[start..sc.pos]
        } else {
            sc.take_while(|c| c.is_ascii_alphanumeric())
        };
        if curve_text.is_empty() {
            let rest = sc.take_while(|c| !c.is_whitespace());
            return Err(ParseError::UnknownToken(rest.to_string()));
        }
        let curve = parse_curve(curve_text, surface)?;
        let exponent = if sc.peek() == Some('^') {
            sc.pos += 1;
            let exp_text = sc.take_while(|c| !c.is_whitespace());
            match exp_text.parse::<i64>() {
                Ok(e) if e != 0 => e,
                _ => {
                    return Err(ParseError::MalformedExponent(format!(
                        "{curve_text}^{exp_text}"
                    )))
                }
            }
        } else {
            1
        };
        if sc.peek().is_some_and(|c| !c.is_whitespace()) {
            let rest = sc.take_while(|c| !c.is_whitespace());
            return Err(ParseError::UnknownToken(format!("{curve_text}{rest}")));
        }
        let letter = TwistLetter::new(curve, exponent).expect("exponent checked nonzero");
        word.push(letter).expect("curve parsed on the word's surface");
    }
    Ok(word)
}

pub fn format_curve(c: &HomologyClass) -> String {
    match c.as_basis_label() {
        Some(label) => label.to_string(),
        None => {
            let parts: Vec<String> = c.coords().iter().map(ToString::to_string).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

/// Canonical text: single spaces, named basis classes where possible,
/// `^1` omitted.
pub fn format_word(w: &TwistWord) -> String {
    let parts: Vec<String> = w
        .letters()
        .iter()
        .map(|l| match l.exponent() {
            1 => format_curve(l.curve()),
            e => format!("{}^{e}", format_curve(l.curve())),
        })
        .collect();
    parts.join(" ")
}

/// `g,b`.
pub fn parse_surface(text: &str) -> Result<SurfaceSignature, ParseError> {
    let bad = || ParseError::BadValue {
        flag: "--surface",
        value: text.to_string(),
    };
    let (g, b) = text.split_once(',').ok_or_else(bad)?;
    Ok(SurfaceSignature::new(
        g.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Inclusive sweep of integers: `n`, `a..b`, or `a..b:step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: i64,
    pub end: i64,
    pub step: u64,
}

impl NRange {
    pub fn single(n: i64) -> Self {
        Self {
            start: n,
            end: n,
            step: 1,
        }
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        (self.start..=self.end).step_by(self.step as usize)
    }

    pub fn len(&self) -> usize {
        if self.end < self.start {
            0
        } else {
            ((self.end - self.start) as u64 / self.step) as usize + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn parse_range(text: &str) -> Result<NRange, ParseError> {
    let bad = || ParseError::BadValue {
        flag: "--n",
        value: text.to_string(),
    };
    let text = text.trim();
    let Some((start, rest)) = text.split_once("..") else {
        return text.parse().map(NRange::single).map_err(|_| bad());
    };
    let (end, step) = match rest.split_once(':') {
        Some((e, s)) => (e, s.parse::<u64>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let range = NRange {
        start: start.parse().map_err(|_| bad())?,
        end: end.parse().map_err(|_| bad())?,
        step,
    };
    if range.step == 0 || range.end < range.start {
        return Err(bad());
    }
    Ok(range)
}
