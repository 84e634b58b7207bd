//! Net to mixed orthogonal array conversion and strength verification.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::design::{checked_pow, EVector, MixedOA, PointSet, Verdict, Witness};
use crate::error::{Error, Result};

/// Column `i` of the result holds `floor(b^e_i x_n^(i))`, the integer encoded
/// by the first `e_i` digits of coordinate `i`, over the alphabet `b^e_i`.
///
/// This is a pure digit extraction: `p` need not be a net. The claimed
/// strength of the result is 0.
pub fn net_to_moa(p: &PointSet, e: &EVector) -> Result<MixedOA> {
    if e.len() != p.dim() {
        return Err(Error::param(format!(
            "e has {} entries for dimension {}",
            e.len(),
            p.dim()
        )));
    }
    if e.max() as usize > p.precision() {
        return Err(Error::Precision(format!(
            "e_max = {} exceeds the {} digits available",
            e.max(),
            p.precision()
        )));
    }
    let alphabets = e
        .as_slice()
        .iter()
        .map(|&ei| checked_pow(u64::from(p.base()), ei as usize))
        .collect::<Result<Vec<_>>>()?;
    let entries = (0..p.len())
        .flat_map(|n| {
            e.as_slice()
                .iter()
                .enumerate()
                .map(move |(i, &ei)| p.prefix_value(n, i, ei as usize))
        })
        .collect();
    MixedOA::new(alphabets, entries, 0)
}

/// Groups equal alphabet sizes: `(4,2,2,4)` becomes `[(2,2),(4,2)]`, sorted
/// by alphabet size. Sizes that do not occur are never listed.
pub fn lump_signature(alphabets: &[u64]) -> Vec<(u64, usize)> {
    let mut groups: BTreeMap<u64, usize> = BTreeMap::new();
    for &l in alphabets {
        *groups.entry(l).or_default() += 1;
    }
    groups.into_iter().collect()
}

/// Checks strength `t`: in every choice of `t` columns each tuple occurs
/// exactly `N / prod l_j` times.
///
/// Column subsets are examined in lexicographic order and the first failure
/// is reported. A subset whose alphabet product does not divide `N` fails
/// with a `NonIntegerIndex` witness.
pub fn verify_moa(a: &MixedOA, t: usize) -> Result<Verdict> {
    if t > a.cols() {
        return Err(Error::param(format!(
            "strength {t} exceeds the {} columns",
            a.cols()
        )));
    }
    if t == 0 {
        return Ok(Verdict::passed(0));
    }
    let subsets: Vec<Vec<usize>> = (0..a.cols()).combinations(t).collect();
    let failure = subsets
        .par_iter()
        .enumerate()
        .find_map_first(|(k, cols)| subset_witness(a, cols).map(|w| (k, w)));
    Ok(match failure {
        None => Verdict::passed(subsets.len()),
        Some((k, w)) => Verdict::failed(k + 1, w),
    })
}

/// Uniformity check of one column subset via a dense mixed-radix count
/// table. The first column is the most significant position.
pub(crate) fn subset_witness(a: &MixedOA, cols: &[usize]) -> Option<Witness> {
    let rows = a.rows() as u64;
    let product = cols
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(a.alphabets()[c]));
    let product = match product {
        Some(p) if p <= rows && rows.is_multiple_of(p) => p,
        other => {
            return Some(Witness::NonIntegerIndex {
                columns: cols.to_vec(),
                product: other.unwrap_or(u64::MAX),
                rows,
            })
        }
    };
    let expected = rows / product;
    let mut counts = vec![0u64; product as usize];
    for n in 0..a.rows() {
        let idx = cols
            .iter()
            .fold(0u64, |acc, &c| acc * a.alphabets()[c] + a.get(n, c));
        counts[idx as usize] += 1;
    }
    let idx = counts.iter().position(|&c| c != expected)?;
    let mut rest = idx as u64;
    let mut tuple = vec![0u64; cols.len()];
    for (slot, &c) in cols.iter().enumerate().rev() {
        let l = a.alphabets()[c];
        tuple[slot] = rest % l;
        rest /= l;
    }
    Some(Witness::Tuple {
        columns: cols.to_vec(),
        tuple,
        observed: counts[idx],
        expected,
    })
}

/// Largest `t` for which [`verify_moa`] passes, found by scanning upward.
pub fn max_strength(a: &MixedOA) -> usize {
    let mut best = 0;
    for t in 1..=a.cols() {
        match verify_moa(a, t) {
            Ok(v) if v.pass() => best = t,
            _ => break,
        }
    }
    best
}
