//! Exhaustive verification of the `(u,m,e,s)`-net property, sequence
//! prefixes, quality parameters, and structural transforms.
//!
//! A point set of `b^m` points is a `(u,m,e,s)`-net when every elementary
//! interval with `e_i | d_i` and `sum d_i <= m - u` holds exactly
//! `b^(m - sum d_i)` points. Box membership is read off digit prefixes: the
//! box index of a point for shape `d` is the base-`b` number formed by the
//! first `d_1` digits of coordinate 1, then the first `d_2` digits of
//! coordinate 2, and so on.

use rayon::prelude::*;
use serde::Serialize;

use crate::design::{checked_pow, Digit, EVector, PointSet, Shape, Verdict, Witness};
use crate::error::{Error, Result};

/// Which admissible shapes to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ShapeMode {
    All,
    /// Only shapes to which no coordinate can add `e_i` within the budget.
    Maximal,
}

/// Which intervals the net definition quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Every admissible interval of volume at least `b^(u-m)`.
    Narrow,
    /// Only admissible intervals of volume exactly `b^(u-m)`.
    Tezuka,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Narrow => "narrow",
            Variant::Tezuka => "tezuka",
        })
    }
}

/// All shapes `d` with `e_i | d_i` and `sum d_i <= m - u`.
///
/// Order is colexicographic: the last coordinate varies slowest. For
/// `m=3, u=0, e=(1,2)` this yields `(0,0),(1,0),(2,0),(3,0),(0,2),(1,2)`.
pub fn enumerate_shapes(m: usize, u: usize, e: &EVector, mode: ShapeMode) -> Result<Vec<Shape>> {
    if u > m {
        return Err(Error::param(format!("u = {u} exceeds m = {m}")));
    }
    let budget = (m - u) as u32;
    let e = e.as_slice();
    let mut out = Vec::new();
    let mut d = vec![0u32; e.len()];
    fill_shapes(e, e.len(), budget, &mut d, &mut out);
    if mode == ShapeMode::Maximal {
        out.retain(|shape| {
            let slack = budget - shape.order();
            e.iter().all(|&ei| ei > slack)
        });
    }
    Ok(out)
}

fn fill_shapes(e: &[u32], k: usize, remaining: u32, d: &mut [u32], out: &mut Vec<Shape>) {
    if k == 0 {
        out.push(Shape::new(d.to_vec()));
        return;
    }
    let i = k - 1;
    let mut di = 0;
    while di <= remaining {
        d[i] = di;
        fill_shapes(e, i, remaining - di, d, out);
        di += e[i];
    }
    d[i] = 0;
}

fn check_shape_fits(p: &PointSet, shape: &Shape) -> Result<()> {
    if shape.len() != p.dim() {
        return Err(Error::param(format!(
            "shape has {} entries for dimension {}",
            shape.len(),
            p.dim()
        )));
    }
    if let Some(&d) = shape
        .as_slice()
        .iter()
        .find(|&&d| d as usize > p.precision())
    {
        return Err(Error::Precision(format!(
            "shape needs {d} digits, points carry {}",
            p.precision()
        )));
    }
    Ok(())
}

/// Number of points in the box `prod [a_i b^-d_i, (a_i+1) b^-d_i)`.
pub fn count_box(p: &PointSet, shape: &Shape, cell: &[u64]) -> Result<u64> {
    check_shape_fits(p, shape)?;
    if cell.len() != p.dim() {
        return Err(Error::Index(format!(
            "box has {} indices for dimension {}",
            cell.len(),
            p.dim()
        )));
    }
    let base = u64::from(p.base());
    for (i, (&a, &d)) in cell.iter().zip(shape.as_slice()).enumerate() {
        if a >= checked_pow(base, d as usize)? {
            return Err(Error::Index(format!("a_{i} = {a} outside 0..{base}^{d}")));
        }
    }
    let count = (0..p.len())
        .filter(|&n| {
            shape
                .as_slice()
                .iter()
                .zip(cell)
                .enumerate()
                .all(|(i, (&d, &a))| p.prefix_value(n, i, d as usize) == a)
        })
        .count();
    Ok(count as u64)
}

/// Point counts of every box of `shape`, indexed by the concatenated prefix
/// digits (coordinate 1 most significant).
pub fn box_counts(p: &PointSet, shape: &Shape) -> Result<Vec<u64>> {
    check_shape_fits(p, shape)?;
    let cells = checked_pow(u64::from(p.base()), shape.order() as usize)? as usize;
    let mut counts = vec![0u64; cells];
    for n in 0..p.len() {
        counts[box_index(p, n, shape)] += 1;
    }
    Ok(counts)
}

fn box_index(p: &PointSet, n: usize, shape: &Shape) -> usize {
    let base = p.base() as usize;
    let mut idx = 0usize;
    for (i, &d) in shape.as_slice().iter().enumerate() {
        for &digit in &p.coordinate(n, i)[..d as usize] {
            idx = idx * base + digit as usize;
        }
    }
    idx
}

/// Splits a box index back into `(a_1, ..., a_s)`.
fn decode_cell(base: u64, shape: &Shape, mut idx: u64) -> Vec<u64> {
    let mut cell = vec![0u64; shape.len()];
    for (i, &d) in shape.as_slice().iter().enumerate().rev() {
        let radix = base.pow(d);
        cell[i] = idx % radix;
        idx /= radix;
    }
    cell
}

/// First box of `shape` whose count differs from `b^(m - order)`.
fn shape_witness(p: &PointSet, shape: &Shape) -> Option<Witness> {
    let counts = box_counts(p, shape).expect("shape validated by caller");
    let expected = (p.base() as u64).pow(p.precision() as u32 - shape.order());
    counts
        .iter()
        .position(|&c| c != expected)
        .map(|idx| Witness::Box {
            shape: shape.clone(),
            cell: decode_cell(u64::from(p.base()), shape, idx as u64),
            observed: counts[idx],
            expected,
        })
}

fn net_preconditions(p: &PointSet, u: usize, e: &EVector) -> Result<()> {
    if !p.is_net_sized() {
        return Err(Error::param(format!(
            "a net in base {} with m = {} needs {}^{} points, got {}",
            p.base(),
            p.precision(),
            p.base(),
            p.precision(),
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
    if u > p.precision() {
        return Err(Error::param(format!(
            "u = {u} exceeds m = {}",
            p.precision()
        )));
    }
    Ok(())
}

/// The shapes a verification run examines, in order.
pub fn checked_shapes(
    m: usize,
    u: usize,
    e: &EVector,
    variant: Variant,
    mode: ShapeMode,
) -> Result<Vec<Shape>> {
    match variant {
        Variant::Narrow => enumerate_shapes(m, u, e, mode),
        Variant::Tezuka => {
            let mut shapes = enumerate_shapes(m, u, e, ShapeMode::All)?;
            shapes.retain(|s| s.order() as usize == m - u);
            Ok(shapes)
        }
    }
}

/// Checks the net property. The narrow variant checks budget-maximal shapes
/// only: every coarser admissible box is a disjoint union of boxes of some
/// maximal refinement, so exact counts there imply exact counts everywhere.
pub fn verify_net(p: &PointSet, u: usize, e: &EVector, variant: Variant) -> Result<Verdict> {
    verify_net_with_mode(p, u, e, variant, ShapeMode::Maximal)
}

/// As [`verify_net`], with explicit shape enumeration for the narrow
/// variant. The Tezuka variant always checks shapes of order exactly `m-u`.
pub fn verify_net_with_mode(
    p: &PointSet,
    u: usize,
    e: &EVector,
    variant: Variant,
    mode: ShapeMode,
) -> Result<Verdict> {
    net_preconditions(p, u, e)?;
    let shapes = checked_shapes(p.precision(), u, e, variant, mode)?;
    let failure = shapes
        .par_iter()
        .enumerate()
        .find_map_first(|(k, shape)| shape_witness(p, shape).map(|w| (k, w)));
    Ok(match failure {
        None => Verdict::passed(shapes.len()),
        Some((k, w)) => Verdict::failed(k + 1, w),
    })
}

/// Smallest `u` for which `p` verifies. Under the narrow variant the passing
/// set is upward closed, so this bisects; Tezuka needs a linear scan.
pub fn u_star(p: &PointSet, e: &EVector, variant: Variant) -> Result<usize> {
    net_preconditions(p, 0, e)?;
    match variant {
        Variant::Narrow => {
            // invariant: lo fails (or lo = 0 untested), hi passes
            let (mut lo, mut hi) = (0usize, p.precision());
            if verify_net(p, 0, e, variant)?.pass() {
                return Ok(0);
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if verify_net(p, mid, e, variant)?.pass() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(hi)
        }
        Variant::Tezuka => u_star_scan(p, e, variant),
    }
}

/// Smallest passing `u` by trying `0, 1, ..., m` in turn.
pub fn u_star_scan(p: &PointSet, e: &EVector, variant: Variant) -> Result<usize> {
    net_preconditions(p, 0, e)?;
    for u in 0..=p.precision() {
        if verify_net(p, u, e, variant)?.pass() {
            return Ok(u);
        }
    }
    Err(Error::Internal("u = m must always pass".into()))
}

/// Checks that every block `g b^m <= n < (g+1) b^m` of the first `N` terms,
/// truncated to `m` digits, is a `(u,m,e,s)`-net (narrow), for all
/// `u < m <= m_max` and all blocks that fit in `N`.
///
/// Blocks are examined with `m` descending from `m_max`, then `g` ascending;
/// the witness is the first failing block in that order.
pub fn verify_sequence_prefix(
    seq: &PointSet,
    u: usize,
    e: &EVector,
    m_max: usize,
) -> Result<Verdict> {
    if m_max > seq.precision() {
        return Err(Error::Precision(format!(
            "m_max = {m_max} exceeds the {} digits available",
            seq.precision()
        )));
    }
    if e.len() != seq.dim() {
        return Err(Error::param(format!(
            "e has {} entries for dimension {}",
            e.len(),
            seq.dim()
        )));
    }
    let blocks = sequence_blocks(seq, u, m_max)?;
    let failure = blocks
        .par_iter()
        .enumerate()
        .find_map_first(|(k, &(m, g))| {
            let size = seq.base().pow(m as u32) as usize;
            let block = seq
                .slice(g * size, size)
                .and_then(|b| b.truncate(m))
                .expect("block within range");
            let verdict = verify_net(&block, u, e, Variant::Narrow).expect("block is net-sized");
            verdict.into_witness().map(|inner| {
                (
                    k,
                    Witness::Block {
                        g,
                        m,
                        inner: Box::new(inner),
                    },
                )
            })
        });
    Ok(match failure {
        None => Verdict::passed(blocks.len()),
        Some((k, w)) => Verdict::failed(k + 1, w),
    })
}

/// `(m, g)` pairs checked by [`verify_sequence_prefix`], in order.
pub fn sequence_blocks(seq: &PointSet, u: usize, m_max: usize) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for m in (u + 1..=m_max).rev() {
        let size = checked_pow(u64::from(seq.base()), m)? as usize;
        for g in 0..seq.len() / size {
            out.push((m, g));
        }
    }
    Ok(out)
}

/// Restricts every point to `coords` (0-based, in the given order).
pub fn project(p: &PointSet, coords: &[usize]) -> Result<PointSet> {
    if coords.is_empty() {
        return Err(Error::param("projection needs at least one coordinate"));
    }
    let mut seen = vec![false; p.dim()];
    for &c in coords {
        if c >= p.dim() {
            return Err(Error::param(format!(
                "coordinate {c} outside dimension {}",
                p.dim()
            )));
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::param(format!("coordinate {c} repeated")));
        }
    }
    PointSet::from_fn(p.base(), p.precision(), coords.len(), p.len(), |n, i, l| {
        p.digit(n, coords[i], l)
    })
}

/// Regroups each run of `r` base-`b` digits into one base-`b^r` digit.
pub fn rebase_compress(p: &PointSet, r: usize) -> Result<PointSet> {
    if r == 0 || !p.precision().is_multiple_of(r) {
        return Err(Error::param(format!(
            "r = {r} does not divide m = {}",
            p.precision()
        )));
    }
    let new_base = checked_pow(u64::from(p.base()), r)?;
    if new_base > u64::from(Digit::MAX) + 1 {
        return Err(Error::param(format!(
            "base {new_base} too large for digit storage"
        )));
    }
    PointSet::from_fn(
        new_base as u32,
        p.precision() / r,
        p.dim(),
        p.len(),
        |n, i, l| p.digits_value(n, i, l * r, r) as Digit,
    )
}

/// Inverse of [`rebase_compress`]: splits each base-`B` digit into `r`
/// base-`b` digits where `b^r = B`.
pub fn rebase_expand(p: &PointSet, r: usize) -> Result<PointSet> {
    if r == 0 {
        return Err(Error::param("r must be positive"));
    }
    let target = integer_root(u64::from(p.base()), r)
        .ok_or_else(|| Error::param(format!("base {} is not a perfect {r}-th power", p.base())))?;
    let precision = p.precision() * r;
    PointSet::from_fn(target as u32, precision, p.dim(), p.len(), |n, i, l| {
        let digit = u64::from(p.digit(n, i, l / r));
        let shift = (r - 1 - l % r) as u32;
        ((digit / target.pow(shift)) % target) as Digit
    })
}

fn integer_root(value: u64, r: usize) -> Option<u64> {
    if r == 1 {
        return Some(value);
    }
    let guess = (value as f64).powf(1.0 / r as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&c| c >= 2 && checked_pow(c, r).ok() == Some(value))
}
