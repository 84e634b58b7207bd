//! Exact digit-level data model shared by every other module.
//!
//! Points are never stored as floating point values. A coordinate is the list
//! of its first `m` base-`b` digits, most significant first, so the digit at
//! position `l` (0-based) is the coefficient of `b^-(l+1)`. Box membership for
//! elementary intervals is then a prefix comparison and cannot be corrupted by
//! rounding.
//!
//! Indexing convention: points, coordinates, digit positions, columns and
//! blocks are all 0-based in this API and in the text formats.

mod format;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

pub use format::{NetFile, DIGIT_CHARS, MAX_FILE_BASE};

/// A single base-`b` digit. Bases up to `u16::MAX` are representable in
/// memory; the text formats are capped at base 36.
pub type Digit = u16;

/// Integer power with overflow reported as a parameter error.
pub(crate) fn checked_pow(base: u64, exp: usize) -> Result<u64> {
    let exp32 = u32::try_from(exp).map_err(|_| Error::param("exponent too large"))?;
    base.checked_pow(exp32)
        .ok_or_else(|| Error::param(format!("{base}^{exp} overflows 64 bits")))
}

/// The resolution vector `e = (e_1, ..., e_s)`.
///
/// An admissible interval resolution in coordinate `i` is a multiple of `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct EVector(Vec<u32>);

impl EVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::param("e-vector must be nonempty"));
        }
        if let Some(pos) = entries.iter().position(|&e| e == 0) {
            return Err(Error::param(format!("e-vector entry {pos} is zero")));
        }
        Ok(EVector(entries))
    }

    /// `(1, ..., 1)` of length `s`: the classical net setting.
    pub fn ones(s: usize) -> Self {
        EVector(vec![1; s.max(1)])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// True when `e_1 <= e_2 <= ... <= e_s`.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Stable ascending sort. `perm[j]` is the original index of the entry
    /// now at position `j`.
    pub fn sorted_with_permutation(&self) -> (EVector, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.0.len()).collect();
        perm.sort_by_key(|&i| self.0[i]);
        let sorted = perm.iter().map(|&i| self.0[i]).collect();
        (EVector(sorted), perm)
    }

    /// Restriction to the given coordinates, in the given order.
    pub fn select(&self, coords: &[usize]) -> Result<EVector> {
        let picked = coords
            .iter()
            .map(|&i| {
                self.0
                    .get(i)
                    .copied()
                    .ok_or_else(|| Error::Index(format!("coordinate {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        EVector::new(picked)
    }
}

/// Parses `1,2,2` and the lumped shorthand `1x3,2x2` (= `1,1,1,2,2`).
impl FromStr for EVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (value, reps) = match part.split_once(['x', 'X']) {
                Some((v, r)) => (v, r),
                None => (part, "1"),
            };
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| Error::param(format!("bad e-vector entry '{part}'")))?;
            let reps: usize = reps
                .trim()
                .parse()
                .map_err(|_| Error::param(format!("bad repetition count in '{part}'")))?;
            entries.extend(std::iter::repeat_n(value, reps));
        }
        EVector::new(entries)
    }
}

impl fmt::Display for EVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Exact value `numerator / denominator` of a digit expansion. The
/// denominator is always `b^m`; the fraction is not reduced.
#[derive(Debug, Clone)]
pub struct DigitFraction {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl DigitFraction {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Self {
        DigitFraction {
            numerator,
            denominator,
        }
    }
}

impl PartialEq for DigitFraction {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DigitFraction {}

impl PartialOrd for DigitFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DigitFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.numerator * &other.denominator).cmp(&(&other.numerator * &self.denominator))
    }
}

impl fmt::Display for DigitFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// `N` points in `[0,1)^s`, each coordinate given by `m` base-`b` digits.
///
/// Digits are stored point-major, then coordinate, then digit position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    base: u32,
    precision: usize,
    dim: usize,
    count: usize,
    digits: Vec<Digit>,
}

impl PointSet {
    pub fn new(
        base: u32,
        precision: usize,
        dim: usize,
        count: usize,
        digits: Vec<Digit>,
    ) -> Result<Self> {
        if base < 2 || base > u32::from(Digit::MAX) + 1 {
            return Err(Error::param(format!("base {base} out of range")));
        }
        if dim == 0 {
            return Err(Error::param("dimension must be at least 1"));
        }
        let expected = count
            .checked_mul(dim)
            .and_then(|x| x.checked_mul(precision))
            .ok_or_else(|| Error::param("point set too large"))?;
        if digits.len() != expected {
            return Err(Error::param(format!(
                "expected {expected} digits, got {}",
                digits.len()
            )));
        }
        if let Some(pos) = digits.iter().position(|&d| u32::from(d) >= base) {
            return Err(Error::param(format!(
                "digit {} at flat position {pos} is outside R({base})",
                digits[pos]
            )));
        }
        Ok(PointSet {
            base,
            precision,
            dim,
            count,
            digits,
        })
    }

    /// Builds a point set from `f(n, i, l)`, the `l`-th digit of coordinate
    /// `i` of point `n`.
    pub fn from_fn<F>(
        base: u32,
        precision: usize,
        dim: usize,
        count: usize,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> Digit,
    {
        let mut digits = Vec::with_capacity(count * dim * precision);
        for n in 0..count {
            for i in 0..dim {
                for l in 0..precision {
                    digits.push(f(n, i, l));
                }
            }
        }
        PointSet::new(base, precision, dim, count, digits)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Digits per coordinate (`m`).
    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// True when the point count is exactly `b^m`.
    pub fn is_net_sized(&self) -> bool {
        checked_pow(u64::from(self.base), self.precision)
            .map(|n| n == self.count as u64)
            .unwrap_or(false)
    }

    pub(crate) fn offset(&self, n: usize, i: usize) -> usize {
        (n * self.dim + i) * self.precision
    }

    /// Digit string of coordinate `i` of point `n`.
    pub fn coordinate(&self, n: usize, i: usize) -> &[Digit] {
        let start = self.offset(n, i);
        &self.digits[start..start + self.precision]
    }

    pub fn digit(&self, n: usize, i: usize, l: usize) -> Digit {
        self.digits[self.offset(n, i) + l]
    }

    /// Integer encoded by the first `len` digits of coordinate `i` of point `n`,
    /// i.e. `floor(b^len * x)`.
    pub fn prefix_value(&self, n: usize, i: usize, len: usize) -> u64 {
        self.digits_value(n, i, 0, len)
    }

    /// Integer encoded by digits `start..start+len` of a coordinate, read
    /// most significant first.
    pub fn digits_value(&self, n: usize, i: usize, start: usize, len: usize) -> u64 {
        let base = u64::from(self.base);
        self.coordinate(n, i)[start..start + len]
            .iter()
            .fold(0u64, |acc, &d| acc * base + u64::from(d))
    }

    pub fn coordinate_value(&self, n: usize, i: usize) -> Result<DigitFraction> {
        if n >= self.count || i >= self.dim {
            return Err(Error::Index(format!(
                "point {n} coordinate {i} outside {} x {}",
                self.count, self.dim
            )));
        }
        let base = BigUint::from(self.base);
        let numerator = self
            .coordinate(n, i)
            .iter()
            .fold(BigUint::from(0u32), |acc, &d| {
                acc * &base + BigUint::from(d)
            });
        let denominator = num_traits::pow::pow(base, self.precision);
        Ok(DigitFraction::new(numerator, denominator))
    }

    /// Keeps the first `precision` digits of every coordinate.
    pub fn truncate(&self, precision: usize) -> Result<PointSet> {
        if precision > self.precision {
            return Err(Error::Precision(format!(
                "cannot truncate {} digits to {precision}",
                self.precision
            )));
        }
        PointSet::from_fn(self.base, precision, self.dim, self.count, |n, i, l| {
            self.digit(n, i, l)
        })
    }

    /// Contiguous sub-range of points, order preserved.
    pub fn slice(&self, start: usize, len: usize) -> Result<PointSet> {
        if start + len > self.count {
            return Err(Error::Index(format!(
                "points {start}..{} outside {}",
                start + len,
                self.count
            )));
        }
        let width = self.dim * self.precision;
        let digits = self.digits[start * width..(start + len) * width].to_vec();
        PointSet::new(self.base, self.precision, self.dim, len, digits)
    }

    pub(crate) fn with_digit(&self, n: usize, i: usize, l: usize, value: Digit) -> PointSet {
        let mut out = self.clone();
        let pos = out.offset(n, i) + l;
        out.digits[pos] = value;
        out
    }
}

/// Resolution exponents `d = (d_1, ..., d_s)` of an elementary interval
/// `prod [a_i b^-d_i, (a_i + 1) b^-d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Shape(Vec<u32>);

impl Shape {
    pub fn new(d: Vec<u32>) -> Self {
        Shape(d)
    }

    pub fn zero(s: usize) -> Self {
        Shape(vec![0; s])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum d_i`; the interval has volume `b^-order`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(&self, m: usize, u: usize, e: &EVector) -> bool {
        self.0.len() == e.len()
            && u <= m
            && self.0.iter().zip(e.as_slice()).all(|(d, e)| d % e == 0)
            && (self.order() as usize) <= m - u
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

pub(crate) fn fmt_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in items.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

fn tuple_string<T: fmt::Display>(items: &[T]) -> String {
    struct T<'a, X>(&'a [X]);
    impl<X: fmt::Display> fmt::Display for T<'_, X> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_tuple(f, self.0)
        }
    }
    T(items).to_string()
}

/// `N x k` array whose column `j` takes symbols in `R(l_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedOA {
    rows: usize,
    alphabets: Vec<u64>,
    entries: Vec<u64>,
    strength: usize,
}

impl MixedOA {
    /// `entries` is row-major. `strength` is the claimed strength recorded in
    /// files; nothing here checks it.
    pub fn new(alphabets: Vec<u64>, entries: Vec<u64>, strength: usize) -> Result<Self> {
        let k = alphabets.len();
        if let Some(j) = alphabets.iter().position(|&l| l < 2) {
            return Err(Error::param(format!("alphabet of column {j} is below 2")));
        }
        if k == 0 {
            if !entries.is_empty() {
                return Err(Error::param("entries given for a zero-column array"));
            }
            return Ok(MixedOA {
                rows: 0,
                alphabets,
                entries,
                strength,
            });
        }
        if !entries.len().is_multiple_of(k) {
            return Err(Error::param(
                "entry count is not a multiple of the column count",
            ));
        }
        for (pos, &x) in entries.iter().enumerate() {
            if x >= alphabets[pos % k] {
                return Err(Error::param(format!(
                    "entry {x} at row {} column {} outside R({})",
                    pos / k,
                    pos % k,
                    alphabets[pos % k]
                )));
            }
        }
        Ok(MixedOA {
            rows: entries.len() / k,
            alphabets,
            entries,
            strength,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.alphabets.len()
    }

    pub fn alphabets(&self) -> &[u64] {
        &self.alphabets
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn with_strength(mut self, strength: usize) -> Self {
        self.strength = strength;
        self
    }

    pub fn row(&self, n: usize) -> &[u64] {
        let k = self.cols();
        &self.entries[n * k..(n + 1) * k]
    }

    pub fn get(&self, n: usize, j: usize) -> u64 {
        self.entries[n * self.cols() + j]
    }

    /// Same rows with columns reordered: output column `c` is input column
    /// `order[c]`.
    pub fn permute_columns(&self, order: &[usize]) -> Result<MixedOA> {
        let mut seen = vec![false; self.cols()];
        for &c in order {
            if c >= self.cols() || std::mem::replace(&mut seen[c], true) {
                return Err(Error::param("column order is not a permutation"));
            }
        }
        if order.len() != self.cols() {
            return Err(Error::param("column order is not a permutation"));
        }
        let alphabets = order.iter().map(|&c| self.alphabets[c]).collect();
        let entries = (0..self.rows)
            .flat_map(|n| order.iter().map(move |&c| self.get(n, c)))
            .collect();
        MixedOA::new(alphabets, entries, self.strength)
    }
}

/// Block-structured array `OOA(b^m, (beta_1..beta_s), l_1..l_s, m-u)`.
///
/// Column `(i, rho)` holds symbols in `R(b^e_i)`. Columns are stored
/// coordinate-major: block 0's `beta_0` columns first, then block 1, etc.
/// Within a block, column `rho` (0-based) carries the base-`b^e_i` digit
/// formed by coordinate digits `rho*e_i .. (rho+1)*e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedOOA {
    base: u32,
    m: usize,
    u: usize,
    e: EVector,
    beta: Vec<usize>,
    entries: Vec<u64>,
}

impl MixedOOA {
    pub fn new(
        base: u32,
        m: usize,
        u: usize,
        e: EVector,
        beta: Vec<usize>,
        entries: Vec<u64>,
    ) -> Result<Self> {
        if base < 2 {
            return Err(Error::param("base must be at least 2"));
        }
        if u > m {
            return Err(Error::param(format!("u = {u} exceeds m = {m}")));
        }
        if beta.len() != e.len() {
            return Err(Error::param("beta and e have different lengths"));
        }
        for (i, (&b, &ei)) in beta.iter().zip(e.as_slice()).enumerate() {
            let cap = (m - u) / ei as usize;
            if b > cap {
                return Err(Error::param(format!(
                    "beta_{i} = {b} exceeds floor((m-u)/e_i) = {cap}"
                )));
            }
        }
        let rows = checked_pow(u64::from(base), m)? as usize;
        let width: usize = beta.iter().sum();
        if entries.len() != rows * width {
            return Err(Error::param(format!(
                "expected {rows} x {width} entries, got {}",
                entries.len()
            )));
        }
        let alphabets = column_alphabets(base, &e, &beta)?;
        if width > 0 {
            for (pos, &x) in entries.iter().enumerate() {
                let c = pos % width;
                if x >= alphabets[c] {
                    return Err(Error::param(format!(
                        "entry {x} at row {} column {c} outside R({})",
                        pos / width,
                        alphabets[c]
                    )));
                }
            }
        }
        Ok(MixedOOA {
            base,
            m,
            u,
            e,
            beta,
            entries,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn u(&self) -> usize {
        self.u
    }

    /// `m - u`.
    pub fn strength(&self) -> usize {
        self.m - self.u
    }

    pub fn e(&self) -> &EVector {
        &self.e
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn rows(&self) -> usize {
        if self.width() == 0 {
            // rows are not recoverable from an empty entry list
            checked_pow(u64::from(self.base), self.m).unwrap_or(0) as usize
        } else {
            self.entries.len() / self.width()
        }
    }

    /// Total column count `sum beta_i`.
    pub fn width(&self) -> usize {
        self.beta.iter().sum()
    }

    /// Flat index of column `(i, rho)`.
    pub fn column_index(&self, i: usize, rho: usize) -> usize {
        self.beta[..i].iter().sum::<usize>() + rho
    }

    /// `b^e_i`.
    pub fn block_alphabet(&self, i: usize) -> u64 {
        u64::from(self.base).pow(self.e.get(i))
    }

    pub fn column_alphabets(&self) -> Vec<u64> {
        column_alphabets(self.base, &self.e, &self.beta).expect("validated at construction")
    }

    pub fn row(&self, n: usize) -> &[u64] {
        let w = self.width();
        &self.entries[n * w..(n + 1) * w]
    }

    pub fn get(&self, n: usize, i: usize, rho: usize) -> u64 {
        self.entries[n * self.width() + self.column_index(i, rho)]
    }

    /// Whether `beta_i = floor((m-u)/e_i)` for every block.
    pub fn has_canonical_beta(&self) -> bool {
        self.beta == canonical_beta(self.m, self.u, &self.e)
    }

    #[cfg(test)]
    pub(crate) fn with_entry(&self, n: usize, col: usize, value: u64) -> Result<MixedOOA> {
        let mut entries = self.entries.clone();
        entries[n * self.width() + col] = value;
        MixedOOA::new(
            self.base,
            self.m,
            self.u,
            self.e.clone(),
            self.beta.clone(),
            entries,
        )
    }
}

/// `beta_i = floor((m-u)/e_i)`, the block sizes of the net/MOOA equivalence.
pub fn canonical_beta(m: usize, u: usize, e: &EVector) -> Vec<usize> {
    e.as_slice()
        .iter()
        .map(|&ei| m.saturating_sub(u) / ei as usize)
        .collect()
}

fn column_alphabets(base: u32, e: &EVector, beta: &[usize]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(beta.iter().sum());
    for (i, &b) in beta.iter().enumerate() {
        let l = checked_pow(u64::from(base), e.get(i) as usize)?;
        out.extend(std::iter::repeat_n(l, b));
    }
    Ok(out)
}

/// Why a verification failed. Every variant carries enough to reproduce the
/// failing count by hand.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An elementary interval of the given shape holds the wrong number of
    /// points. `cell` is `(a_1, ..., a_s)`.
    Box {
        shape: Shape,
        cell: Vec<u64>,
        observed: u64,
        expected: u64,
    },
    /// A tuple occurs the wrong number of times in a column subset.
    Tuple {
        columns: Vec<usize>,
        tuple: Vec<u64>,
        observed: u64,
        expected: u64,
    },
    /// The product of the alphabets of `columns` does not divide the row
    /// count, so no uniform index exists.
    NonIntegerIndex {
        columns: Vec<usize>,
        product: u64,
        rows: u64,
    },
    /// A tuple occurs the wrong number of times under a kappa-profile.
    Profile {
        kappa: Vec<usize>,
        tuple: Vec<u64>,
        observed: u64,
        expected: u64,
    },
    /// The block `g` of length `b^m` of a sequence prefix is not a net.
    Block {
        g: usize,
        m: usize,
        inner: Box<Witness>,
    },
    /// Two function tuples whose difference exceeds the height budget.
    Precondition {
        first: usize,
        second: usize,
        height: u64,
        budget: u64,
    },
    /// A Gram matrix entry deviates from `b^m I` by more than the tolerance.
    Gram {
        row: usize,
        col: usize,
        re: f64,
        im: f64,
        expected: f64,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Box {
                shape,
                cell,
                observed,
                expected,
            } => write!(
                f,
                "shape {shape} box {} holds {observed} points, expected {expected}",
                tuple_string(cell)
            ),
            Witness::Tuple {
                columns,
                tuple,
                observed,
                expected,
            } => write!(
                f,
                "columns {} tuple {} occurs {observed} times, expected {expected}",
                tuple_string(columns),
                tuple_string(tuple)
            ),
            Witness::NonIntegerIndex {
                columns,
                product,
                rows,
            } => write!(
                f,
                "columns {} have {product} tuples, which does not divide {rows} rows",
                tuple_string(columns)
            ),
            Witness::Profile {
                kappa,
                tuple,
                observed,
                expected,
            } => write!(
                f,
                "profile {} tuple {} occurs {observed} times, expected {expected}",
                tuple_string(kappa),
                tuple_string(tuple)
            ),
            Witness::Block { g, m, inner } => write!(f, "block g={g} m={m}: {inner}"),
            Witness::Precondition {
                first,
                second,
                height,
                budget,
            } => write!(
                f,
                "tuples {first} and {second} differ with height {height} > {budget}"
            ),
            Witness::Gram {
                row,
                col,
                re,
                im,
                expected,
            } => write!(
                f,
                "Gram entry ({row},{col}) = {re:.6}{im:+.6}i, expected {expected}"
            ),
        }
    }
}

/// Outcome of a verification: `pass` is true exactly when there is no
/// witness. `checked` counts the shapes, subsets, profiles, blocks or Gram
/// entries that were examined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pass: bool,
    checked: usize,
    witness: Option<Witness>,
}

impl Verdict {
    pub fn passed(checked: usize) -> Self {
        Verdict {
            pass: true,
            checked,
            witness: None,
        }
    }

    pub fn failed(checked: usize, witness: Witness) -> Self {
        Verdict {
            pass: false,
            checked,
            witness: Some(witness),
        }
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn checked(&self) -> usize {
        self.checked
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<Witness> {
        self.witness
    }

    /// Turns a failing verdict into `Error::Unverified`.
    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some(w) => Err(Error::Unverified(Box::new(w))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_point(base: u32, digits: &[Digit]) -> PointSet {
        PointSet::new(base, digits.len(), 1, 1, digits.to_vec()).unwrap()
    }

    #[test]
    fn coordinate_values() {
        let v = one_point(2, &[0, 1]).coordinate_value(0, 0).unwrap();
        assert_eq!(v.numerator, BigUint::from(1u32));
        assert_eq!(v.denominator, BigUint::from(4u32));
        let v = one_point(2, &[1, 1]).coordinate_value(0, 0).unwrap();
        assert_eq!(v, DigitFraction::new(3u32.into(), 4u32.into()));
        let v = one_point(3, &[2]).coordinate_value(0, 0).unwrap();
        assert_eq!(v.to_string(), "2/3");
        assert!(matches!(
            one_point(3, &[2]).coordinate_value(1, 0),
            Err(Error::Index(_))
        ));
    }

    #[test]
    fn truncation() {
        let p = one_point(2, &[0, 1, 1]);
        assert_eq!(p.truncate(3).unwrap(), p);
        let t = p.truncate(2).unwrap();
        assert_eq!(t.coordinate(0, 0), &[0, 1]);
        assert_eq!(
            t.coordinate_value(0, 0).unwrap(),
            DigitFraction::new(1u32.into(), 4u32.into())
        );
        let z = p.truncate(0).unwrap();
        assert!(z.coordinate(0, 0).is_empty());
        assert_eq!(
            z.coordinate_value(0, 0).unwrap().numerator,
            BigUint::from(0u32)
        );
        assert!(matches!(p.truncate(4), Err(Error::Precision(_))));
    }

    #[test]
    fn point_set_rejects_bad_digits() {
        assert!(PointSet::new(2, 2, 1, 1, vec![0, 2]).is_err());
        assert!(PointSet::new(2, 2, 1, 2, vec![0, 1]).is_err());
        assert!(PointSet::new(1, 1, 1, 1, vec![0]).is_err());
    }

    #[test]
    fn e_vector_parsing() {
        let e: EVector = "1x3,2x2".parse().unwrap();
        assert_eq!(e.as_slice(), &[1, 1, 1, 2, 2]);
        let e: EVector = "2,1".parse().unwrap();
        assert!(!e.is_sorted());
        let (sorted, perm) = e.sorted_with_permutation();
        assert_eq!(sorted.as_slice(), &[1, 2]);
        assert_eq!(perm, vec![1, 0]);
        assert!("0,1".parse::<EVector>().is_err());
        assert!("".parse::<EVector>().is_err());
        assert!("a".parse::<EVector>().is_err());
    }

    #[test]
    fn shape_admissibility() {
        let e = EVector::new(vec![1, 2]).unwrap();
        assert!(Shape::new(vec![1, 2]).is_admissible(3, 0, &e));
        assert!(!Shape::new(vec![0, 1]).is_admissible(3, 0, &e));
        assert!(!Shape::new(vec![2, 2]).is_admissible(3, 0, &e));
        assert!(!Shape::new(vec![1, 2]).is_admissible(3, 1, &e));
    }

    #[test]
    fn mixed_oa_validation() {
        assert!(MixedOA::new(vec![2, 3], vec![1, 2, 0, 0], 0).is_ok());
        assert!(MixedOA::new(vec![2, 3], vec![2, 0], 0).is_err());
        assert!(MixedOA::new(vec![1], vec![0], 0).is_err());
        let a = MixedOA::new(vec![2, 3], vec![1, 2, 0, 1], 0).unwrap();
        let p = a.permute_columns(&[1, 0]).unwrap();
        assert_eq!(p.alphabets(), &[3, 2]);
        assert_eq!(p.row(0), &[2, 1]);
        assert!(a.permute_columns(&[0, 0]).is_err());
    }

    #[test]
    fn mixed_ooa_validation() {
        let e = EVector::new(vec![1, 2]).unwrap();
        // m=2,u=0: beta caps (2,1)
        let ok = MixedOOA::new(2, 2, 0, e.clone(), vec![2, 1], vec![0; 4 * 3]);
        assert!(ok.is_ok());
        assert!(ok.unwrap().has_canonical_beta());
        assert!(MixedOOA::new(2, 2, 0, e.clone(), vec![3, 1], vec![0; 16]).is_err());
        let mut entries = vec![0; 12];
        entries[2] = 4; // column (1,0) has alphabet 4
        assert!(MixedOOA::new(2, 2, 0, e.clone(), vec![2, 1], entries).is_err());
        let z = MixedOOA::new(2, 2, 0, e, vec![1, 1], vec![0, 3, 1, 2, 0, 1, 1, 0]).unwrap();
        assert_eq!(z.get(1, 1, 0), 2);
        assert_eq!(z.block_alphabet(1), 4);
        assert_eq!(z.column_alphabets(), vec![2, 4]);
    }

    #[test]
    fn verdict_invariant() {
        assert!(Verdict::passed(3).witness().is_none());
        let w = Witness::NonIntegerIndex {
            columns: vec![0, 1],
            product: 6,
            rows: 4,
        };
        let v = Verdict::failed(1, w);
        assert!(!v.pass());
        assert!(v.witness().is_some());
        assert!(matches!(v.into_result(), Err(Error::Unverified(_))));
    }
}
