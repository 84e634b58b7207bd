//! Brute-force reference implementations used to cross-check the library.
//!
//! Nothing here calls the library's counting code. Points are compared as
//! scaled integers `x * b^m` against interval endpoints, arrays are counted
//! with hash maps, and Rao sums come from polynomial coefficients.

#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};

use netoa::corpus::{faure, grid_1d, hammersley};
use netoa::{EVector, MixedOOA, PointSet};

pub fn ev(v: &[u32]) -> EVector {
    EVector::new(v.to_vec()).unwrap()
}

/// `x_n^(i) * b^m` as an integer.
pub fn scaled(p: &PointSet, n: usize, i: usize) -> u64 {
    let b = u64::from(p.base());
    p.coordinate(n, i)
        .iter()
        .fold(0u64, |acc, &d| acc * b + u64::from(d))
}

/// Calls `f` on every vector `d` with `d_i` a multiple of `e_i`, in
/// `0..=cap`.
fn for_each_multiple_vector(e: &[u32], cap: u32, f: &mut dyn FnMut(&[u32])) {
    let mut d = vec![0u32; e.len()];
    loop {
        f(&d);
        let mut i = 0;
        loop {
            if i == e.len() {
                return;
            }
            d[i] += e[i];
            if d[i] <= cap {
                break;
            }
            d[i] = 0;
            i += 1;
        }
    }
}

/// Direct reading of the net definition: for every admissible `d`, each
/// elementary box holds `b^(m - sum d)` points. With `tezuka` only
/// `sum d = m - u` is checked.
pub fn oracle_is_net(p: &PointSet, u: usize, e: &EVector, tezuka: bool) -> bool {
    let m = p.precision();
    let b = u64::from(p.base());
    if p.len() as u64 != b.pow(m as u32) || u > m {
        return false;
    }
    let budget = (m - u) as u32;
    let mut ok = true;
    for_each_multiple_vector(e.as_slice(), budget, &mut |d| {
        let order: u32 = d.iter().sum();
        if !ok || order > budget || (tezuka && order != budget) {
            return;
        }
        let expected = b.pow(m as u32 - order);
        let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
        for n in 0..p.len() {
            let cell: Vec<u64> = d
                .iter()
                .enumerate()
                .map(|(i, &di)| scaled(p, n, i) / b.pow(m as u32 - di))
                .collect();
            *counts.entry(cell).or_default() += 1;
        }
        ok = counts.len() as u64 == b.pow(order) && counts.values().all(|&c| c == expected);
    });
    ok
}

pub fn oracle_u_star(p: &PointSet, e: &EVector, tezuka: bool) -> usize {
    (0..=p.precision())
        .find(|&u| oracle_is_net(p, u, e, tezuka))
        .unwrap()
}

/// Every `t` columns of `rows` carry each tuple `N / prod l` times.
pub fn oracle_is_oa(rows: &[Vec<u64>], alphabets: &[u64], t: usize) -> bool {
    fn subsets(k: usize, t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for c in start..k {
            cur.push(c);
            subsets(k, t, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    subsets(alphabets.len(), t, 0, &mut Vec::new(), &mut all);
    all.iter().all(|cols| uniform_on(rows, alphabets, cols))
}

pub fn uniform_on(rows: &[Vec<u64>], alphabets: &[u64], cols: &[usize]) -> bool {
    let product: u64 = cols.iter().map(|&c| alphabets[c]).product();
    let n = rows.len() as u64;
    if !n.is_multiple_of(product) {
        return false;
    }
    let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
    for row in rows {
        *counts
            .entry(cols.iter().map(|&c| row[c]).collect())
            .or_default() += 1;
    }
    counts.len() as u64 == product && counts.values().all(|&c| c == n / product)
}

/// Every admissible profile selects uniformly distributed columns.
pub fn oracle_is_mooa(z: &MixedOOA) -> bool {
    let rows: Vec<Vec<u64>> = (0..z.rows()).map(|n| z.row(n).to_vec()).collect();
    let alphabets = z.column_alphabets();
    let e = z.e().as_slice();
    let beta = z.beta();
    let budget = z.m() - z.u();
    let mut kappa = vec![0usize; e.len()];
    loop {
        let height: usize = kappa.iter().zip(e).map(|(&k, &ei)| k * ei as usize).sum();
        if height <= budget {
            let mut cols = Vec::new();
            let mut offset = 0;
            for (i, &k) in kappa.iter().enumerate() {
                cols.extend(offset..offset + k);
                offset += beta[i];
            }
            if !uniform_on(&rows, &alphabets, &cols) {
                return false;
            }
        }
        let mut i = 0;
        loop {
            if i == kappa.len() {
                return true;
            }
            kappa[i] += 1;
            if kappa[i] <= beta[i] {
                break;
            }
            kappa[i] = 0;
            i += 1;
        }
    }
}

/// Coefficients `0..=deg` of `(1 + a X)^k`.
fn binomial_poly(a: u64, k: usize, deg: usize) -> Vec<BigUint> {
    let mut poly = vec![BigUint::zero(); deg + 1];
    poly[0] = BigUint::one();
    for _ in 0..k {
        for j in (1..=deg).rev() {
            let add = &poly[j - 1] * a;
            poly[j] += add;
        }
    }
    poly
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let deg = a.len() - 1;
    let mut out = vec![BigUint::zero(); deg + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Rao right-hand side from the generating function
/// `prod_h (1 + (l_h - 1) X)^k_h`: the sum of coefficients up to `X^g`,
/// plus for odd `t` the `X^g` coefficient with one factor of the largest
/// alphabet pulled out.
pub fn oracle_rao(pairs: &[(u64, usize)], t: usize) -> BigUint {
    let g = t / 2;
    let mut full = vec![BigUint::zero(); g + 1];
    full[0] = BigUint::one();
    for &(l, k) in pairs {
        full = poly_mul(&full, &binomial_poly(l - 1, k, g));
    }
    let mut total: BigUint = full.iter().sum();
    if t % 2 == 1 {
        let (&(lv, kv), head) = pairs.split_last().unwrap();
        let mut tail = vec![BigUint::zero(); g + 1];
        tail[0] = BigUint::one();
        for &(l, k) in head {
            tail = poly_mul(&tail, &binomial_poly(l - 1, k, g));
        }
        tail = poly_mul(&tail, &binomial_poly(lv - 1, kv - 1, g));
        total += &tail[g] * (lv - 1);
    }
    total
}

/// Left-hand side of the net Rao condition by explicit subset enumeration.
pub fn oracle_net_rao_lhs(b: u32, e_sorted: &[u32], g: usize, odd: bool) -> BigUint {
    let s = e_sorted.len();
    let y: Vec<BigUint> = e_sorted
        .iter()
        .map(|&ei| BigUint::from(b).pow(ei) - 1u32)
        .collect();
    let subset_sum = |limit: usize, size: usize| -> BigUint {
        (0u32..1 << limit)
            .filter(|mask| mask.count_ones() as usize == size)
            .map(|mask| {
                (0..limit)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| y[i].clone())
                    .product::<BigUint>()
            })
            .sum()
    };
    let mut lhs: BigUint = (1..=g).map(|j| subset_sum(s, j)).sum();
    if odd {
        lhs += &y[s - 1] * subset_sum(s - 1, g);
    }
    lhs
}

/// Character vector from the phase `2 pi sum z D / q` computed directly.
pub fn oracle_char_vector(z: &MixedOOA, values: &[Vec<u64>]) -> Vec<Complex64> {
    (0..z.rows())
        .map(|n| {
            let phase: f64 = values
                .iter()
                .enumerate()
                .map(|(i, block)| {
                    let q = z.block_alphabet(i) as f64;
                    block
                        .iter()
                        .enumerate()
                        .map(|(rho, &v)| 2.0 * PI * (z.get(n, i, rho) * v) as f64 / q)
                        .sum::<f64>()
                })
                .sum();
            Complex64::from_polar(1.0, phase)
        })
        .collect()
}

/// The fixed corpus of known `(0,m,e,s)`-nets with their classical `e`.
pub fn corpus_nets() -> Vec<(String, PointSet, EVector)> {
    let mut out = Vec::new();
    for b in [2, 3] {
        for m in 0..=6 {
            out.push((
                format!("grid_1d({b},{m})"),
                grid_1d(b, m).unwrap(),
                ev(&[1]),
            ));
        }
        for m in 0..=5 {
            out.push((
                format!("hammersley({b},{m})"),
                hammersley(b, m).unwrap(),
                ev(&[1, 1]),
            ));
        }
    }
    for m in 0..=4 {
        out.push((
            format!("faure(3,{m},3)"),
            faure(3, m, 3).unwrap(),
            ev(&[1, 1, 1]),
        ));
    }
    out
}
