//! Necessary conditions: the mixed Rao bound, its net specializations and
//! the parameter conditions for sequences.
//!
//! All arithmetic is exact. The net checks are evaluated through elementary
//! symmetric polynomials of `y_i = b^e_i - 1`, independently of the direct
//! enumeration in [`rao_rhs`], so the two can be compared.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::design::EVector;
use crate::error::{Error, Result};
use crate::oa_bridge::lump_signature;

/// Alphabet sizes with multiplicities, `l_1^k_1 ... l_v^k_v`, sorted by `l`.
///
/// A lumped signature has strictly increasing `l`; an unlumped one lists
/// every column separately, so equal sizes repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pairs: Vec<(u64, usize)>,
}

impl Signature {
    pub fn new(pairs: Vec<(u64, usize)>) -> Result<Self> {
        if let Some(&(l, k)) = pairs.iter().find(|&&(l, k)| l < 2 || k == 0) {
            return Err(Error::param(format!(
                "alphabet size {l} with multiplicity {k}: need l >= 2, k >= 1"
            )));
        }
        if pairs.windows(2).any(|w| w[0].0 > w[1].0) {
            return Err(Error::param("alphabet sizes must be sorted ascending"));
        }
        Ok(Signature { pairs })
    }

    /// Groups equal alphabet sizes.
    pub fn lumped(alphabets: &[u64]) -> Result<Self> {
        Signature::new(lump_signature(alphabets))
    }

    /// One `(l, 1)` pair per column, sorted by `l`.
    pub fn unlumped(alphabets: &[u64]) -> Result<Self> {
        let mut pairs: Vec<(u64, usize)> = alphabets.iter().map(|&l| (l, 1)).collect();
        pairs.sort();
        Signature::new(pairs)
    }

    /// The column alphabets `b^e_i` of the array built from a net.
    pub fn of_net(b: u32, e: &EVector) -> Vec<u64> {
        e.as_slice()
            .iter()
            .map(|&ei| u64::from(b).pow(ei))
            .collect()
    }

    pub fn pairs(&self) -> &[(u64, usize)] {
        &self.pairs
    }

    pub fn columns(&self) -> usize {
        self.pairs.iter().map(|p| p.1).sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(l, k)| format!("{l}^{k}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Sum over `I_j(v)` of `prod C(k_h, r_h) (l_h - 1)^r_h`. With `odd_tail`
/// the last factor becomes `C(k_v - 1, r_v) (l_v - 1)^(r_v + 1)`.
fn level_sum(pairs: &[(u64, usize)], j: usize, odd_tail: bool) -> BigUint {
    fn go(pairs: &[(u64, usize)], h: usize, left: usize, odd_tail: bool) -> BigUint {
        let (l, k) = pairs[h];
        let last = h + 1 == pairs.len();
        let base = BigUint::from(l - 1);
        let term = |r: usize| {
            if last && odd_tail {
                binomial(k - 1, r) * base.pow(r as u32 + 1)
            } else {
                binomial(k, r) * base.pow(r as u32)
            }
        };
        if last {
            return term(left);
        }
        (0..=left.min(k))
            .map(|r| {
                let rest = go(pairs, h + 1, left - r, odd_tail);
                if rest.is_zero() {
                    rest
                } else {
                    term(r) * rest
                }
            })
            .sum()
    }
    if pairs.is_empty() {
        return if j == 0 && !odd_tail {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    go(pairs, 0, j, odd_tail)
}

/// Right-hand side of the Rao bound for strength `t`: the minimum number of
/// rows of an orthogonal array with this signature.
pub fn rao_rhs(sig: &Signature, t: usize) -> BigUint {
    let g = t / 2;
    let mut total: BigUint = (0..=g).map(|j| level_sum(&sig.pairs, j, false)).sum();
    if t % 2 == 1 {
        total += level_sum(&sig.pairs, g, true);
    }
    total
}

pub fn rao_feasible(n: &BigUint, sig: &Signature, t: usize) -> bool {
    *n >= rao_rhs(sig, t)
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// One evaluated condition, `lhs <= rhs` when satisfied. A condition whose
/// hypothesis fails is reported with `applicable = false` and counts as
/// satisfied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionEntry {
    pub name: String,
    pub applicable: bool,
    pub satisfied: bool,
    #[serde(serialize_with = "as_decimal")]
    pub lhs: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub rhs: BigUint,
    /// For the sequence conditions, the values `r` whose multiplicities are
    /// summed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<u32>>,
}

impl ConditionEntry {
    fn new(name: String, applicable: bool, lhs: BigUint, rhs: BigUint) -> Self {
        let satisfied = !applicable || lhs <= rhs;
        ConditionEntry {
            name,
            applicable,
            satisfied,
            lhs,
            rhs,
            subset: None,
        }
    }

    pub fn violated(&self) -> bool {
        self.applicable && !self.satisfied
    }
}

impl fmt::Display for ConditionEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.applicable {
            write!(f, "{}: not applicable", self.name)
        } else if self.satisfied {
            write!(f, "{}: LHS {} <= RHS {}", self.name, self.lhs, self.rhs)
        } else {
            write!(f, "{}: LHS {} > RHS {}", self.name, self.lhs, self.rhs)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub entries: Vec<ConditionEntry>,
}

impl FeasibilityReport {
    pub fn from_entries(entries: Vec<ConditionEntry>) -> Self {
        FeasibilityReport {
            feasible: !entries.iter().any(ConditionEntry::violated),
            entries,
        }
    }

    /// The first violated condition.
    pub fn witness(&self) -> Option<&ConditionEntry> {
        self.entries.iter().find(|c| c.violated())
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for entry in &self.entries {
            writeln!(f, "{entry}")?;
        }
        write!(
            f,
            "{}",
            if self.feasible {
                "feasible"
            } else {
                "infeasible"
            }
        )
    }
}

/// `sigma_0 .. sigma_k` of the given values.
fn elementary_symmetric(y: &[BigUint], k: usize) -> Vec<BigUint> {
    let mut sigma = vec![BigUint::zero(); k + 1];
    sigma[0] = BigUint::one();
    for yi in y {
        for j in (1..=k).rev() {
            let add = &sigma[j - 1] * yi;
            sigma[j] += add;
        }
    }
    sigma
}

/// The Rao condition for a `(0,m,e,s)`-net and strength `2g` or `2g+1`.
///
/// Applicable when `m` is at least the sum of the `2g` (even) or `2g+1`
/// (odd) largest `e_i`; satisfied when
/// `sum_{j=1..g} sigma_j(y) [+ y_s sigma_g(y_1..y_{s-1})] <= b^m - 1`.
pub fn net_rao_check(
    b: u32,
    m: usize,
    e: &EVector,
    g: usize,
    parity: Parity,
) -> Result<ConditionEntry> {
    if b < 2 {
        return Err(Error::param(format!("base {b} < 2")));
    }
    if !e.is_sorted() {
        return Err(Error::param(format!("e = ({e}) is not sorted ascending")));
    }
    let s = e.len();
    let t = match parity {
        Parity::Even => 2 * g,
        Parity::Odd => 2 * g + 1,
    };
    if g == 0 || t > s {
        return Err(Error::param(format!(
            "g = {g} out of range for {parity} strength with s = {s}"
        )));
    }
    let threshold: usize = e.as_slice()[s - t..].iter().map(|&x| x as usize).sum();
    let big_b = BigUint::from(b);
    let y: Vec<BigUint> = e
        .as_slice()
        .iter()
        .map(|&ei| big_b.pow(ei) - 1u32)
        .collect();
    let sigma = elementary_symmetric(&y, g);
    let mut lhs: BigUint = sigma[1..].iter().sum();
    if parity == Parity::Odd {
        let head = elementary_symmetric(&y[..s - 1], g);
        lhs += &y[s - 1] * &head[g];
    }
    let rhs = big_b.pow(m as u32) - 1u32;
    Ok(ConditionEntry::new(
        format!("rao {parity} g={g}"),
        m >= threshold,
        lhs,
        rhs,
    ))
}

fn multiplicities(e: &EVector) -> Vec<(u32, usize)> {
    e.as_slice()
        .iter()
        .copied()
        .sorted()
        .dedup_with_count()
        .map(|(k, r)| (r, k))
        .collect()
}

/// `k_r <= b^r` for every distinct value `r` in `e`.
pub fn seq_kr_check(b: u32, e: &EVector) -> Vec<ConditionEntry> {
    multiplicities(e)
        .into_iter()
        .map(|(r, k)| {
            let mut entry = ConditionEntry::new(
                format!("k_r r={r}"),
                true,
                BigUint::from(k),
                BigUint::from(b).pow(r),
            );
            entry.subset = Some(vec![r]);
            entry
        })
        .collect()
}

/// `k_r1 + ... + k_rw <= b^lcm(r1..rw)` for every nonempty subset of the
/// distinct values of `e`, by size and then lexicographically.
pub fn seq_lcm_check(b: u32, e: &EVector) -> Vec<ConditionEntry> {
    let mult = multiplicities(e);
    let mut out = Vec::new();
    for w in 1..=mult.len() {
        for subset in mult.iter().combinations(w) {
            let l = subset.iter().fold(1u32, |acc, &&(r, _)| acc.lcm(&r));
            let k: usize = subset.iter().map(|&&(_, k)| k).sum();
            let rs: Vec<u32> = subset.iter().map(|&&(r, _)| r).collect();
            let mut entry = ConditionEntry::new(
                format!("lcm {{{}}} L={l}", rs.iter().join(",")),
                true,
                BigUint::from(k),
                BigUint::from(b).pow(l),
            );
            entry.subset = Some(rs);
            out.push(entry);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// A `(0,m,e,s)`-net.
    Net,
    /// A `(0,e,s)`-sequence.
    Sequence,
}

/// Every Rao condition for all valid `g` and both parities (even first),
/// sorting `e` when needed.
pub fn net_rao_checks(b: u32, m: usize, e: &EVector) -> Result<Vec<ConditionEntry>> {
    let (sorted, _) = e.sorted_with_permutation();
    let s = e.len();
    let mut out = Vec::new();
    for g in 1..=s / 2 {
        out.push(net_rao_check(b, m, &sorted, g, Parity::Even)?);
    }
    for g in 1..=(s.saturating_sub(1)) / 2 {
        out.push(net_rao_check(b, m, &sorted, g, Parity::Odd)?);
    }
    Ok(out)
}

/// All conditions that apply to the target. For a sequence the singleton
/// `lcm` conditions are the `k_r` conditions and are listed once. The net
/// conditions are added when `m` is given, since every block of a
/// sequence is a net.
pub fn feasibility_report(
    b: u32,
    m: Option<usize>,
    e: &EVector,
    target: Target,
) -> Result<FeasibilityReport> {
    if b < 2 {
        return Err(Error::param(format!("base {b} < 2")));
    }
    let mut entries = Vec::new();
    match target {
        Target::Net => {
            let m = m.ok_or_else(|| Error::param("a net target needs m"))?;
            entries.extend(net_rao_checks(b, m, e)?);
        }
        Target::Sequence => {
            entries.extend(seq_kr_check(b, e));
            entries.extend(
                seq_lcm_check(b, e)
                    .into_iter()
                    .filter(|c| c.subset.as_ref().is_some_and(|r| r.len() > 1)),
            );
            if let Some(m) = m {
                entries.extend(net_rao_checks(b, m, e)?);
            }
        }
    }
    Ok(FeasibilityReport::from_entries(entries))
}
