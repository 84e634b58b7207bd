//! Character vectors of a MOOA and the Gram certificate behind the bound
//! `b^m >= |D|` for families of function tuples with small pairwise
//! difference height.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::design::{checked_pow, EVector, MixedOOA, Verdict, Witness};
use crate::error::{Error, Result};
use crate::ooa_bridge::KappaProfile;

/// One residue modulo `b^e_i` per column of each block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionTuple {
    #[serde(skip)]
    base: u32,
    #[serde(skip)]
    e: EVector,
    values: Vec<Vec<u64>>,
}

impl FunctionTuple {
    pub fn new(z: &MixedOOA, values: Vec<Vec<u64>>) -> Result<Self> {
        if values.len() != z.e().len() || values.iter().zip(z.beta()).any(|(v, &b)| v.len() != b) {
            return Err(Error::param(format!(
                "function tuple block lengths do not match beta {:?}",
                z.beta()
            )));
        }
        for (i, block) in values.iter().enumerate() {
            let alphabet = z.block_alphabet(i);
            if let Some(&v) = block.iter().find(|&&v| v >= alphabet) {
                return Err(Error::param(format!(
                    "residue {v} in block {i} is not below {alphabet}"
                )));
            }
        }
        Ok(FunctionTuple {
            base: z.base(),
            e: z.e().clone(),
            values,
        })
    }

    /// Reads residues listed in column order.
    pub fn from_columns(z: &MixedOOA, flat: &[u64]) -> Result<Self> {
        if flat.len() != z.width() {
            return Err(Error::param(format!(
                "{} residues for {} columns",
                flat.len(),
                z.width()
            )));
        }
        let mut rest = flat;
        let mut values = Vec::with_capacity(z.beta().len());
        for &b in z.beta() {
            let (head, tail) = rest.split_at(b);
            values.push(head.to_vec());
            rest = tail;
        }
        FunctionTuple::new(z, values)
    }

    pub fn zero(z: &MixedOOA) -> Self {
        FunctionTuple {
            base: z.base(),
            e: z.e().clone(),
            values: z.beta().iter().map(|&b| vec![0; b]).collect(),
        }
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    /// Per block, the 1-based position of the last nonzero residue, or 0.
    pub fn profile(&self) -> Vec<usize> {
        self.values
            .iter()
            .map(|block| block.iter().rposition(|&v| v != 0).map_or(0, |p| p + 1))
            .collect()
    }

    /// `sum d_i e_i` over the profile.
    pub fn height(&self) -> u64 {
        self.profile()
            .iter()
            .zip(self.e.as_slice())
            .map(|(&d, &ei)| d as u64 * u64::from(ei))
            .sum()
    }

    fn alphabet(&self, i: usize) -> u64 {
        u64::from(self.base).pow(self.e.get(i))
    }

    /// Componentwise difference modulo each block alphabet.
    pub fn diff(&self, other: &FunctionTuple) -> Result<FunctionTuple> {
        if self.base != other.base
            || self.e != other.e
            || self
                .values
                .iter()
                .zip(&other.values)
                .any(|(a, b)| a.len() != b.len())
        {
            return Err(Error::param("function tuples have different shapes"));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| {
                let q = self.alphabet(i);
                a.iter().zip(b).map(|(&x, &y)| (x + q - y) % q).collect()
            })
            .collect();
        Ok(FunctionTuple {
            base: self.base,
            e: self.e.clone(),
            values,
        })
    }
}

/// `exp(2 pi i k / q)` for `k < q`.
fn roots_of_unity(q: u64) -> Vec<Complex64> {
    (0..q)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / q as f64))
        .collect()
}

fn check_shape(z: &MixedOOA, d: &FunctionTuple) -> Result<()> {
    if d.base != z.base()
        || &d.e != z.e()
        || d.values.iter().map(Vec::len).ne(z.beta().iter().copied())
    {
        return Err(Error::param("function tuple does not match the array"));
    }
    Ok(())
}

/// Entry `n` is `prod_i omega_i^(sum_rho z_(i,rho)(n) D_i(rho))` with
/// `omega_i = exp(2 pi i / b^e_i)`. Exponents are reduced modulo the block
/// alphabet before the root table lookup.
pub fn char_vector(z: &MixedOOA, d: &FunctionTuple) -> Result<Vec<Complex64>> {
    check_shape(z, d)?;
    let tables: Vec<Vec<Complex64>> = (0..z.e().len())
        .map(|i| roots_of_unity(z.block_alphabet(i)))
        .collect();
    Ok(character(z, d, &tables))
}

fn character(z: &MixedOOA, d: &FunctionTuple, tables: &[Vec<Complex64>]) -> Vec<Complex64> {
    (0..z.rows())
        .map(|n| {
            let mut acc = Complex64::new(1.0, 0.0);
            for (i, block) in d.values.iter().enumerate() {
                let q = z.block_alphabet(i);
                let k = block
                    .iter()
                    .enumerate()
                    .fold(0u64, |k, (rho, &v)| (k + z.get(n, i, rho) * v % q) % q);
                if k != 0 {
                    acc *= tables[i][k as usize];
                }
            }
            acc
        })
        .collect()
}

/// Checks that the character vectors of `ds` are pairwise orthogonal with
/// squared norm `b^m`: every Gram entry within `tol` of `b^m I`.
///
/// Pairs whose difference has height above `m - u` are reported first as a
/// `Precondition` witness; no Gram entry is computed in that case.
pub fn gram_certificate(z: &MixedOOA, ds: &[FunctionTuple], tol: f64) -> Result<Verdict> {
    for d in ds {
        check_shape(z, d)?;
    }
    let budget = z.strength() as u64;
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            let height = ds[i].diff(&ds[j])?.height();
            if height > budget {
                return Ok(Verdict::failed(
                    0,
                    Witness::Precondition {
                        first: i,
                        second: j,
                        height,
                        budget,
                    },
                ));
            }
        }
    }
    let tables: Vec<Vec<Complex64>> = (0..z.e().len())
        .map(|i| roots_of_unity(z.block_alphabet(i)))
        .collect();
    let vectors: Vec<Vec<Complex64>> = ds.par_iter().map(|d| character(z, d, &tables)).collect();
    let norm = z.rows() as f64;
    let failure = (0..vectors.len()).into_par_iter().find_map_first(|r| {
        (r..vectors.len()).find_map(|c| {
            let entry: Complex64 = vectors[r]
                .iter()
                .zip(&vectors[c])
                .map(|(x, y)| x * y.conj())
                .sum();
            let expected = if r == c { norm } else { 0.0 };
            ((entry - expected).norm() > tol).then_some(Witness::Gram {
                row: r,
                col: c,
                re: entry.re,
                im: entry.im,
                expected,
            })
        })
    });
    let entries = vectors.len() * (vectors.len() + 1) / 2;
    match failure {
        Some(w) => Ok(Verdict::failed(entries, w)),
        None => {
            let rows = checked_pow(u64::from(z.base()), z.m())?;
            if ds.len() as u64 > rows {
                return Err(Error::Internal(format!(
                    "{} orthogonal vectors of length {rows}",
                    ds.len()
                )));
            }
            Ok(Verdict::passed(entries))
        }
    }
}

/// Every function tuple supported on the first `kappa_i` columns of each
/// block, in lexicographic column order: `b^(sum kappa_i e_i)` tuples.
pub fn build_block_family(z: &MixedOOA, kappa: &KappaProfile) -> Result<Vec<FunctionTuple>> {
    if !kappa.is_admissible(z.m(), z.u(), z.e(), z.beta()) {
        return Err(Error::param(format!(
            "profile {kappa} is not admissible for m = {}, u = {}, beta = {:?}",
            z.m(),
            z.u(),
            z.beta()
        )));
    }
    let slots: Vec<(usize, usize, u64)> = kappa
        .as_slice()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| (0..k).map(move |rho| (i, rho, z.block_alphabet(i))))
        .collect();
    let size = checked_pow(u64::from(z.base()), kappa.height(z.e()))?;
    let mut family = Vec::with_capacity(size as usize);
    for mut idx in 0..size {
        let mut d = FunctionTuple::zero(z);
        for &(i, rho, q) in slots.iter().rev() {
            d.values[i][rho] = idx % q;
            idx /= q;
        }
        family.push(d);
    }
    Ok(family)
}
