//! Canonical text formats (UTF-8, LF line endings).
//!
//! ```text
//! NET v1                          MOA v1                MOOA v1
//! base <b> m <m> s <s> u <u>      N <N> k <k> t <t>     base <b> m <m> s <s> u <u>
//! e <e1> ... <es>                 l <l1> ... <lk>       e <e1> ... <es>
//! <digits> ... <digits>           <x1> ... <xk>         beta <b1> ... <bs>
//! ...                             ...                   <z1> ... <zw>
//! ```
//!
//! NET point lines hold `s` digit strings of length `m` (characters `0-9`
//! then `A-Z`, so bases up to 36); a zero-length digit string is written as
//! `-`. Points are listed in enumeration order `n = 0, 1, ..., N-1`. MOA and
//! MOOA entries are decimal integers. Serialization always uses single spaces
//! and a trailing newline, so `serialize(parse(text))` is the canonical form
//! of `text`.

use std::fmt;
use std::str::FromStr;

use super::{Digit, EVector, MixedOA, MixedOOA, PointSet};
use crate::error::{Error, Result};

pub const DIGIT_CHARS: &[u8; 36] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
pub const MAX_FILE_BASE: u32 = 36;

const EMPTY_DIGITS: &str = "-";

/// A point set together with the `(u, e)` it is claimed to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetFile {
    pub points: PointSet,
    pub u: usize,
    pub e: EVector,
}

impl NetFile {
    pub fn new(points: PointSet, u: usize, e: EVector) -> Result<Self> {
        if points.base() > MAX_FILE_BASE {
            return Err(Error::param(format!(
                "base {} cannot be written with digit characters 0-9A-Z",
                points.base()
            )));
        }
        if e.len() != points.dim() {
            return Err(Error::param(format!(
                "e has {} entries for dimension {}",
                e.len(),
                points.dim()
            )));
        }
        if u > points.precision() {
            return Err(Error::param(format!(
                "u = {u} exceeds m = {}",
                points.precision()
            )));
        }
        Ok(NetFile { points, u, e })
    }
}

fn digit_char(d: Digit) -> char {
    DIGIT_CHARS[d as usize] as char
}

fn digit_value(c: u8) -> Option<u32> {
    match c {
        b'0'..=b'9' => Some(u32::from(c - b'0')),
        b'A'..=b'Z' => Some(u32::from(c - b'A') + 10),
        b'a'..=b'z' => Some(u32::from(c - b'a') + 10),
        _ => None,
    }
}

impl fmt::Display for NetFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.points;
        writeln!(f, "NET v1")?;
        writeln!(
            f,
            "base {} m {} s {} u {}",
            p.base(),
            p.precision(),
            p.dim(),
            self.u
        )?;
        writeln!(f, "e {}", join(self.e.as_slice()))?;
        let mut line = String::new();
        for n in 0..p.len() {
            line.clear();
            for i in 0..p.dim() {
                if i > 0 {
                    line.push(' ');
                }
                if p.precision() == 0 {
                    line.push_str(EMPTY_DIGITS);
                } else {
                    line.extend(p.coordinate(n, i).iter().map(|&d| digit_char(d)));
                }
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for NetFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        lines.expect_magic("NET v1")?;
        let (ln, header) = lines.keyed(&["base", "m", "s", "u"])?;
        let (base, m, s, u) = (header[0], header[1], header[2], header[3]);
        if !(2..=u64::from(MAX_FILE_BASE)).contains(&base) {
            return Err(Error::format(ln, format!("base {base} outside 2..=36")));
        }
        if s == 0 {
            return Err(Error::format(ln, "dimension s must be at least 1"));
        }
        let base = base as u32;
        let (m, s, u) = (m as usize, s as usize, u as usize);
        let e = lines.e_line(s)?;
        let body = lines.body(m > 0);
        let mut digits = Vec::with_capacity(body.len() * s * m);
        for &(ln, line) in &body {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != s {
                return Err(Error::format(
                    ln,
                    format!("expected {s} coordinates, found {}", tokens.len()),
                ));
            }
            for tok in tokens {
                if m == 0 {
                    if tok != EMPTY_DIGITS {
                        return Err(Error::format(ln, "zero-precision coordinate must be '-'"));
                    }
                    continue;
                }
                if tok.len() != m {
                    return Err(Error::format(
                        ln,
                        format!(
                            "digit string '{tok}' has length {}, expected {m}",
                            tok.len()
                        ),
                    ));
                }
                for c in tok.bytes() {
                    match digit_value(c) {
                        Some(d) if d < base => digits.push(d as Digit),
                        _ => {
                            return Err(Error::format(
                                ln,
                                format!("digit '{}' outside base {base}", c as char),
                            ))
                        }
                    }
                }
            }
        }
        let points = PointSet::new(base, m, s, body.len(), digits)
            .map_err(|err| Error::format(ln, err.to_string()))?;
        NetFile::new(points, u, e).map_err(|err| Error::format(ln, err.to_string()))
    }
}

impl fmt::Display for MixedOA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MOA v1")?;
        writeln!(
            f,
            "N {} k {} t {}",
            self.rows(),
            self.cols(),
            self.strength()
        )?;
        writeln!(f, "l {}", join(self.alphabets()))?;
        for n in 0..self.rows() {
            writeln!(f, "{}", join(self.row(n)))?;
        }
        Ok(())
    }
}

impl FromStr for MixedOA {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        lines.expect_magic("MOA v1")?;
        let (hl, header) = lines.keyed(&["N", "k", "t"])?;
        let (rows, k, t) = (header[0] as usize, header[1] as usize, header[2] as usize);
        if t > k {
            return Err(Error::format(hl, format!("strength {t} exceeds k = {k}")));
        }
        if k == 0 {
            return Err(Error::format(hl, "an array needs at least one column"));
        }
        let (ln, alphabets) = lines.list("l", k)?;
        if let Some(l) = alphabets.iter().find(|&&l| l < 2) {
            return Err(Error::format(ln, format!("alphabet size {l} below 2")));
        }
        let body = lines.body(k > 0);
        if body.len() != rows {
            return Err(Error::format(
                body.last().map_or(ln, |b| b.0),
                format!("header declares {rows} rows, found {}", body.len()),
            ));
        }
        let entries = parse_rows(&body, &alphabets)?;
        MixedOA::new(alphabets, entries, t).map_err(|err| Error::format(hl, err.to_string()))
    }
}

impl fmt::Display for MixedOOA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MOOA v1")?;
        writeln!(
            f,
            "base {} m {} s {} u {}",
            self.base(),
            self.m(),
            self.e().len(),
            self.u()
        )?;
        writeln!(f, "e {}", join(self.e().as_slice()))?;
        writeln!(f, "beta {}", join(self.beta()))?;
        for n in 0..self.rows() {
            writeln!(f, "{}", join(self.row(n)))?;
        }
        Ok(())
    }
}

impl FromStr for MixedOOA {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        lines.expect_magic("MOOA v1")?;
        let (hl, header) = lines.keyed(&["base", "m", "s", "u"])?;
        let (base, m, s, u) = (
            header[0],
            header[1] as usize,
            header[2] as usize,
            header[3] as usize,
        );
        if base < 2 || base > u64::from(u32::MAX) {
            return Err(Error::format(hl, format!("base {base} out of range")));
        }
        if s == 0 {
            return Err(Error::format(hl, "dimension s must be at least 1"));
        }
        if u > m {
            return Err(Error::format(hl, format!("u = {u} exceeds m = {m}")));
        }
        let e = lines.e_line(s)?;
        let (bl, beta) = lines.list("beta", s)?;
        let beta: Vec<usize> = beta.into_iter().map(|b| b as usize).collect();
        let rows = super::checked_pow(base, m).map_err(|err| Error::format(hl, err.to_string()))?;
        let alphabets = super::column_alphabets(base as u32, &e, &beta)
            .map_err(|err| Error::format(bl, err.to_string()))?;
        let width = alphabets.len();
        let body = lines.body(width > 0);
        if body.len() as u64 != rows {
            return Err(Error::format(
                body.last().map_or(bl, |b| b.0),
                format!("expected b^m = {rows} rows, found {}", body.len()),
            ));
        }
        let entries = parse_rows(&body, &alphabets)?;
        MixedOOA::new(base as u32, m, u, e, beta, entries)
            .map_err(|err| Error::format(bl, err.to_string()))
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_rows(body: &[(usize, &str)], alphabets: &[u64]) -> Result<Vec<u64>> {
    let mut entries = Vec::with_capacity(body.len() * alphabets.len());
    for &(ln, line) in body {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != alphabets.len() {
            return Err(Error::format(
                ln,
                format!(
                    "expected {} entries, found {}",
                    alphabets.len(),
                    tokens.len()
                ),
            ));
        }
        for (tok, &l) in tokens.iter().zip(alphabets) {
            let x: u64 = tok
                .parse()
                .map_err(|_| Error::format(ln, format!("'{tok}' is not a nonnegative integer")))?;
            if x >= l {
                return Err(Error::format(ln, format!("entry {x} outside R({l})")));
            }
            entries.push(x);
        }
    }
    Ok(entries)
}

/// Line cursor that reports 1-based line numbers.
struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text
            .split('\n')
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .collect();
        if text.ends_with('\n') {
            lines.pop();
        }
        Lines { lines, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line = self
            .lines
            .get(self.pos)
            .ok_or_else(|| Error::format(self.pos + 1, format!("missing {what} line")))?;
        self.pos += 1;
        Ok((self.pos, line))
    }

    fn expect_magic(&mut self, magic: &str) -> Result<()> {
        let (ln, line) = self.next("header")?;
        if line.trim() != magic {
            return Err(Error::format(ln, format!("expected '{magic}'")));
        }
        Ok(())
    }

    /// `key1 v1 key2 v2 ...`
    fn keyed(&mut self, keys: &[&str]) -> Result<(usize, Vec<u64>)> {
        let (ln, line) = self.next("parameter")?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 * keys.len() {
            return Err(Error::format(
                ln,
                format!(
                    "expected '{}'",
                    keys.iter()
                        .map(|k| format!("{k} <{k}>"))
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            ));
        }
        let mut values = Vec::with_capacity(keys.len());
        for (pair, key) in tokens.chunks(2).zip(keys) {
            if pair[0] != *key {
                return Err(Error::format(
                    ln,
                    format!("expected key '{key}', found '{}'", pair[0]),
                ));
            }
            values.push(parse_u64(ln, pair[1])?);
        }
        Ok((ln, values))
    }

    /// `key x1 ... xn`
    fn list(&mut self, key: &str, n: usize) -> Result<(usize, Vec<u64>)> {
        let (ln, line) = self.next(key)?;
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some(key) {
            return Err(Error::format(ln, format!("expected '{key}' line")));
        }
        let values = tokens
            .map(|t| parse_u64(ln, t))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != n {
            return Err(Error::format(
                ln,
                format!("'{key}' needs {n} values, found {}", values.len()),
            ));
        }
        Ok((ln, values))
    }

    fn e_line(&mut self, s: usize) -> Result<EVector> {
        let (ln, values) = self.list("e", s)?;
        let e = values
            .into_iter()
            .map(|v| u32::try_from(v).map_err(|_| Error::format(ln, "e entry too large")))
            .collect::<Result<Vec<_>>>()?;
        EVector::new(e).map_err(|err| Error::format(ln, err.to_string()))
    }

    /// Remaining lines. When rows are nonempty, trailing blank lines are
    /// ignored; with zero-width rows every line is a row.
    fn body(&mut self, rows_have_content: bool) -> Vec<(usize, &'a str)> {
        let mut rest: Vec<(usize, &str)> = self.lines[self.pos..]
            .iter()
            .enumerate()
            .map(|(k, l)| (self.pos + k + 1, *l))
            .collect();
        if rows_have_content {
            while rest.last().is_some_and(|(_, l)| l.trim().is_empty()) {
                rest.pop();
            }
        }
        self.pos = self.lines.len();
        rest
    }
}

fn parse_u64(ln: usize, tok: &str) -> Result<u64> {
    tok.parse()
        .map_err(|_| Error::format(ln, format!("'{tok}' is not a nonnegative integer")))
}
