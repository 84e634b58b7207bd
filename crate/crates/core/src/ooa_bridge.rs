//! Both directions of the net / mixed ordered orthogonal array equivalence.
//!
//! Block `i` of the array has `beta_i` columns. Column `(i, rho)` carries the
//! base-`b^e_i` digit formed by coordinate digits `rho*e_i .. (rho+1)*e_i`
//! of coordinate `i`, so the first `kappa_i` columns of a block together
//! locate a point in an interval of length `b^-(kappa_i e_i)`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::design::{
    canonical_beta, checked_pow, Digit, EVector, MixedOA, MixedOOA, PointSet, Verdict, Witness,
};
use crate::error::{Error, Result};
use crate::net_verify::ShapeMode;
use crate::oa_bridge::subset_witness;

/// Number of left-justified columns selected from each block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct KappaProfile(Vec<usize>);

impl KappaProfile {
    pub fn new(kappa: Vec<usize>) -> Self {
        KappaProfile(kappa)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `sum kappa_i e_i`.
    pub fn height(&self, e: &EVector) -> usize {
        self.0
            .iter()
            .zip(e.as_slice())
            .map(|(&k, &ei)| k * ei as usize)
            .sum()
    }

    pub fn is_admissible(&self, m: usize, u: usize, e: &EVector, beta: &[usize]) -> bool {
        self.0.len() == e.len()
            && beta.len() == e.len()
            && u <= m
            && self.0.iter().zip(beta).all(|(k, b)| k <= b)
            && self.height(e) <= m - u
    }

    /// Flat column indices of the selected columns, block by block.
    pub fn columns(&self, beta: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut offset = 0;
        for (&k, &b) in self.0.iter().zip(beta) {
            out.extend(offset..offset + k);
            offset += b;
        }
        out
    }
}

impl fmt::Display for KappaProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::design::fmt_tuple(f, &self.0)
    }
}

fn check_beta_range(m: usize, u: usize, e: &EVector, beta: &[usize]) -> Result<()> {
    if beta.len() != e.len() {
        return Err(Error::param(format!(
            "beta has {} entries for dimension {}",
            beta.len(),
            e.len()
        )));
    }
    for (i, (&b, &ei)) in beta.iter().zip(e.as_slice()).enumerate() {
        let cap = (m - u) / ei as usize;
        if b == 0 || b > cap {
            return Err(Error::param(format!("beta_{i} = {b} outside 1..={cap}")));
        }
    }
    Ok(())
}

/// Reads the `b^m x sum(beta)` array off the digits of a point set.
///
/// Requires `m >= u + max e_i` and `1 <= beta_i <= floor((m-u)/e_i)`; any
/// such `beta` is accepted, not only the canonical one.
pub fn net_to_mooa(p: &PointSet, u: usize, e: &EVector, beta: &[usize]) -> Result<MixedOOA> {
    let m = p.precision();
    if !p.is_net_sized() {
        return Err(Error::param(format!(
            "expected {}^{m} points, got {}",
            p.base(),
            p.len()
        )));
    }
    if e.len() != p.dim() {
        return Err(Error::param(format!(
            "e has {} entries for dimension {}",
            e.len(),
            p.dim()
        )));
    }
    if m < u + e.max() as usize {
        return Err(Error::param(format!(
            "need m >= u + max e_i, got m = {m}, u = {u}, max e_i = {}",
            e.max()
        )));
    }
    check_beta_range(m, u, e, beta)?;
    let mut entries = Vec::with_capacity(p.len() * beta.iter().sum::<usize>());
    for n in 0..p.len() {
        for (i, (&b, &ei)) in beta.iter().zip(e.as_slice()).enumerate() {
            let ei = ei as usize;
            for rho in 0..b {
                entries.push(p.digits_value(n, i, rho * ei, ei));
            }
        }
    }
    MixedOOA::new(p.base(), m, u, e.clone(), beta.to_vec(), entries)
}

/// All admissible profiles (`kappa_i <= beta_i`, `sum kappa_i e_i <= m-u`),
/// zero profile included, or only those to which no block can add a column.
///
/// Order is colexicographic: the last block varies slowest.
pub fn enumerate_profiles(
    m: usize,
    u: usize,
    e: &EVector,
    beta: &[usize],
    mode: ShapeMode,
) -> Result<Vec<KappaProfile>> {
    if u > m {
        return Err(Error::param(format!("u = {u} exceeds m = {m}")));
    }
    if beta.len() != e.len() {
        return Err(Error::param("beta and e have different lengths"));
    }
    let budget = m - u;
    let e = e.as_slice();
    let mut out = Vec::new();
    let mut kappa = vec![0usize; e.len()];
    fill_profiles(e, beta, e.len(), budget, &mut kappa, &mut out);
    if mode == ShapeMode::Maximal {
        out.retain(|k| {
            let used: usize = k.0.iter().zip(e).map(|(&k, &ei)| k * ei as usize).sum();
            let slack = budget - used;
            k.0.iter()
                .zip(beta)
                .zip(e)
                .all(|((&ki, &bi), &ei)| ki == bi || ei as usize > slack)
        });
    }
    Ok(out)
}

fn fill_profiles(
    e: &[u32],
    beta: &[usize],
    k: usize,
    remaining: usize,
    kappa: &mut [usize],
    out: &mut Vec<KappaProfile>,
) {
    if k == 0 {
        out.push(KappaProfile(kappa.to_vec()));
        return;
    }
    let i = k - 1;
    let ei = e[i] as usize;
    for ki in 0..=beta[i] {
        if ki * ei > remaining {
            break;
        }
        kappa[i] = ki;
        fill_profiles(e, beta, i, remaining - ki * ei, kappa, out);
    }
    kappa[i] = 0;
}

fn as_moa(z: &MixedOOA) -> Result<MixedOA> {
    let entries = (0..z.rows()).flat_map(|n| z.row(n).to_vec()).collect();
    MixedOA::new(z.column_alphabets(), entries, 0)
}

/// Checks the profile contract: for every admissible profile, each tuple on
/// the selected columns occurs exactly `b^(m - sum kappa_i e_i)` times.
///
/// With `ShapeMode::Maximal` only maximal profiles are checked; any other
/// admissible profile selects a subset of a maximal profile's columns, and
/// uniformity passes to column subsets.
pub fn verify_mooa(z: &MixedOOA, mode: ShapeMode) -> Result<Verdict> {
    let profiles = enumerate_profiles(z.m(), z.u(), z.e(), z.beta(), mode)?;
    let table = if z.width() == 0 {
        None
    } else {
        Some(as_moa(z)?)
    };
    let failure = profiles
        .par_iter()
        .enumerate()
        .find_map_first(|(k, kappa)| {
            let table = table.as_ref()?;
            let cols = kappa.columns(z.beta());
            match subset_witness(table, &cols)? {
                Witness::Tuple {
                    tuple,
                    observed,
                    expected,
                    ..
                } => Some((
                    k,
                    Witness::Profile {
                        kappa: kappa.as_slice().to_vec(),
                        tuple,
                        observed,
                        expected,
                    },
                )),
                other => Some((k, other)),
            }
        });
    Ok(match failure {
        None => Verdict::passed(profiles.len()),
        Some((k, w)) => Verdict::failed(k + 1, w),
    })
}

/// Rebuilds a point set from a MOOA with canonical `beta`.
///
/// Digits `1..beta_i e_i` of coordinate `i` come from the block entries in
/// base `b`; the remaining digits are zero. With `check` set the array is
/// verified first and a failing verdict is returned as
/// `Error::Unverified`.
pub fn mooa_to_net(z: &MixedOOA, check: bool) -> Result<PointSet> {
    if !z.has_canonical_beta() {
        return Err(Error::param(format!(
            "beta {:?} is not the canonical floor((m-u)/e_i) = {:?}",
            z.beta(),
            canonical_beta(z.m(), z.u(), z.e())
        )));
    }
    if check {
        verify_mooa(z, ShapeMode::Maximal)?.into_result()?;
    }
    let base = u64::from(z.base());
    let count = checked_pow(base, z.m())? as usize;
    let e = z.e().clone();
    PointSet::from_fn(z.base(), z.m(), e.len(), count, |n, i, l| {
        let ei = e.get(i) as usize;
        let rho = l / ei;
        if rho >= z.beta()[i] {
            return 0;
        }
        let entry = z.get(n, i, rho);
        let shift = (ei - 1 - l % ei) as u32;
        ((entry / base.pow(shift)) % base) as Digit
    })
}
