//! Known nets and sequences, negative controls, and a small existence search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::design::{checked_pow, Digit, EVector, PointSet, Shape};
use crate::error::{Error, Result};
use crate::net_verify::{enumerate_shapes, verify_net, ShapeMode, Variant};

fn check_base(b: u32) -> Result<()> {
    if b < 2 || b > u32::from(Digit::MAX) + 1 {
        return Err(Error::param(format!("base {b} out of range")));
    }
    Ok(())
}

fn net_size(b: u32, m: usize) -> Result<usize> {
    Ok(checked_pow(u64::from(b), m)? as usize)
}

/// Base-`b` digit `l` of `n`, least significant first.
fn low_digit(n: usize, b: u32, l: usize) -> Digit {
    let b = b as usize;
    let mut x = n;
    for _ in 0..l {
        x /= b;
        if x == 0 {
            return 0;
        }
    }
    (x % b) as Digit
}

pub fn is_prime(b: u32) -> bool {
    b >= 2
        && (2..)
            .take_while(|d| d * d <= b)
            .all(|d| !b.is_multiple_of(d))
}

/// Points `n / b^m` for `n = 0..b^m`.
pub fn grid_1d(b: u32, m: usize) -> Result<PointSet> {
    check_base(b)?;
    let count = net_size(b, m)?;
    PointSet::from_fn(b, m, 1, count, |n, _, l| low_digit(n, b, m - 1 - l))
}

/// Two-dimensional Hammersley set `(phi_b(n), n / b^m)`, where `phi_b`
/// mirrors the base-`b` digits of `n` about the radix point.
pub fn hammersley(b: u32, m: usize) -> Result<PointSet> {
    check_base(b)?;
    let count = net_size(b, m)?;
    PointSet::from_fn(b, m, 2, count, |n, i, l| match i {
        0 => low_digit(n, b, l),
        _ => low_digit(n, b, m - 1 - l),
    })
}

/// First `count` terms of the van der Corput sequence in base `b`, each
/// truncated to `precision` digits.
pub fn van_der_corput(b: u32, count: usize, precision: usize) -> Result<PointSet> {
    check_base(b)?;
    PointSet::from_fn(b, precision, 1, count, |n, _, l| low_digit(n, b, l))
}

/// Digital net over `Z_b` for prime `b`.
///
/// `matrices[i]` is an `m x m` matrix over `R(b)`; coordinate `i` of point
/// `n` has digits `matrices[i] * (a_1, ..., a_m)^T mod b` where `a_1` is the
/// most significant base-`b` digit of `n`. The identity matrix reproduces
/// the grid in natural order and the anti-diagonal matrix the van der
/// Corput radical inverse.
pub fn digital_net(b: u32, matrices: &[Vec<Vec<u32>>]) -> Result<PointSet> {
    if !is_prime(b) {
        return Err(Error::param(format!(
            "digital nets need a prime base, got {b}"
        )));
    }
    if matrices.is_empty() {
        return Err(Error::param("at least one generating matrix is required"));
    }
    let m = matrices[0].len();
    for (i, mat) in matrices.iter().enumerate() {
        if mat.len() != m || mat.iter().any(|row| row.len() != m) {
            return Err(Error::param(format!("matrix {i} is not {m} x {m}")));
        }
    }
    let count = net_size(b, m)?;
    let bb = u64::from(b);
    PointSet::from_fn(b, m, matrices.len(), count, |n, i, r| {
        let sum: u64 = matrices[i][r]
            .iter()
            .enumerate()
            .map(|(c, &x)| (u64::from(x) % bb) * u64::from(low_digit(n, b, m - 1 - c)))
            .sum();
        (sum % bb) as Digit
    })
}

/// Faure `(0,m,s)`-net in prime base `b >= s`: generating matrices are the
/// powers `P^0, ..., P^(s-1)` of the upper-triangular Pascal matrix mod `b`,
/// applied to the digits of `n` least significant first.
pub fn faure(b: u32, m: usize, s: usize) -> Result<PointSet> {
    if !is_prime(b) {
        return Err(Error::param(format!(
            "Faure nets need a prime base, got {b}"
        )));
    }
    if s == 0 || s > b as usize {
        return Err(Error::param(format!(
            "Faure nets in base {b} need 1 <= s <= {b}"
        )));
    }
    let bb = u64::from(b);
    let binom = pascal_mod(m, bb);
    let matrices: Vec<Vec<Vec<u32>>> = (0..s)
        .map(|i| {
            let k = i as u64 % bb;
            (0..m)
                .map(|r| {
                    // column c' reads the digit of weight b^(m-1-c')
                    (0..m)
                        .map(|cp| {
                            let c = m - 1 - cp;
                            if c < r {
                                0
                            } else {
                                let pow = pow_mod(k, (c - r) as u64, bb);
                                ((binom[c][r] * pow) % bb) as u32
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    digital_net(b, &matrices)
}

fn pascal_mod(m: usize, b: u64) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; m.max(1)]; m.max(1)];
    for n in 0..m {
        c[n][0] = 1 % b;
        for k in 1..=n {
            c[n][k] = (c[n - 1][k - 1] + if k < n { c[n - 1][k] } else { 0 }) % b;
        }
    }
    c
}

fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    (0..exp).fold(1 % modulus, |acc, _| acc * base % modulus)
}

/// `b^m` points with uniformly random digits from a seeded ChaCha generator.
pub fn random_pointset(b: u32, m: usize, s: usize, seed: u64) -> Result<PointSet> {
    check_base(b)?;
    let count = net_size(b, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PointSet::from_fn(b, m, s, count, |_, _, _| rng.gen_range(0..b) as Digit)
}

/// Adds 1 mod `b` to digit `l` of coordinate `i` of point `n` (all 0-based).
pub fn flip_digit(p: &PointSet, n: usize, i: usize, l: usize) -> Result<PointSet> {
    if n >= p.len() || i >= p.dim() || l >= p.precision() {
        return Err(Error::Index(format!(
            "digit ({n},{i},{l}) outside {} x {} x {}",
            p.len(),
            p.dim(),
            p.precision()
        )));
    }
    let flipped = ((u32::from(p.digit(n, i, l)) + 1) % p.base()) as Digit;
    Ok(p.with_digit(n, i, l, flipped))
}

/// Result of [`search_net`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PointSet),
    /// The whole search space was exhausted: no such net exists.
    NonExistent {
        nodes: u64,
    },
    /// The node limit was hit before the search finished.
    Inconclusive {
        nodes: u64,
    },
}

/// Upper bound on the number of candidate cells the search will index.
const MAX_SEARCH_CELLS: usize = 1 << 20;

/// Backtracking search for a `(u,m,e,s)`-net in base `b` with `s = e.len()`.
///
/// Only the first `e_i * floor((m-u)/e_i)` digits of coordinate `i` matter
/// to the net property; the rest are set to zero. Points are placed as a
/// nondecreasing sequence of cells, and the first point is fixed at the
/// origin: adding a constant mod `b` to one digit position of every point
/// maps nets to nets, so any net can be moved to contain the origin. Each
/// placement updates per-box counts for the budget-maximal shapes and is
/// rejected as soon as a box overflows.
pub fn search_net(
    b: u32,
    m: usize,
    e: &EVector,
    u: usize,
    node_limit: u64,
) -> Result<SearchOutcome> {
    check_base(b)?;
    if u > m {
        return Err(Error::param(format!("u = {u} exceeds m = {m}")));
    }
    let s = e.len();
    let count = net_size(b, m)?;
    if u == m {
        let grid = PointSet::from_fn(b, m, s, count, |n, i, l| {
            if i + 1 == s {
                low_digit(n, b, m - 1 - l)
            } else {
                0
            }
        })?;
        verify_net(&grid, u, e, Variant::Narrow)?.into_result()?;
        return Ok(SearchOutcome::Found(grid));
    }

    let budget = m - u;
    let prec: Vec<usize> = e
        .as_slice()
        .iter()
        .map(|&ei| ei as usize * (budget / ei as usize))
        .collect();
    let radices: Vec<usize> = prec
        .iter()
        .map(|&p| checked_pow(u64::from(b), p).map(|x| x as usize))
        .collect::<Result<_>>()?;
    let cells = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .filter(|&c| c <= MAX_SEARCH_CELLS)
        .ok_or_else(|| Error::param("search space too large for exhaustive search"))?;

    let shapes = enumerate_shapes(m, u, e, ShapeMode::Maximal)?;
    let components = |cell: usize| -> Vec<usize> {
        let mut rest = cell;
        let mut out = vec![0; s];
        for i in (0..s).rev() {
            out[i] = rest % radices[i];
            rest /= radices[i];
        }
        out
    };
    // box_of[k][cell]: box of `cell` under shapes[k]
    let box_of: Vec<Vec<u32>> = shapes
        .iter()
        .map(|shape| {
            (0..cells)
                .map(|cell| box_of_cell(b, &prec, shape, &components(cell)))
                .collect()
        })
        .collect();
    let capacity: Vec<u32> = shapes
        .iter()
        .map(|sh| b.pow(m as u32 - sh.order()))
        .collect();

    let mut search = Search {
        box_of: &box_of,
        capacity: &capacity,
        counts: shapes
            .iter()
            .map(|sh| vec![0u32; b.pow(sh.order()) as usize])
            .collect(),
        chosen: Vec::with_capacity(count),
        target: count,
        cells,
        nodes: 0,
        node_limit,
    };
    let status = if search.place(0) {
        search.extend(0)
    } else {
        Status::Exhausted
    };
    match status {
        Status::Exhausted => Ok(SearchOutcome::NonExistent {
            nodes: search.nodes,
        }),
        Status::Limit => Ok(SearchOutcome::Inconclusive {
            nodes: search.nodes,
        }),
        Status::Found => {
            let chosen: Vec<Vec<usize>> = search.chosen.iter().map(|&c| components(c)).collect();
            let points = PointSet::from_fn(b, m, s, count, |n, i, l| {
                if l < prec[i] {
                    let v = chosen[n][i];
                    ((v / (b as usize).pow((prec[i] - 1 - l) as u32)) % b as usize) as Digit
                } else {
                    0
                }
            })?;
            if !verify_net(&points, u, e, Variant::Narrow)?.pass() {
                return Err(Error::Internal(
                    "search produced a point set that is not a net".into(),
                ));
            }
            Ok(SearchOutcome::Found(points))
        }
    }
}

fn box_of_cell(b: u32, prec: &[usize], shape: &Shape, comps: &[usize]) -> u32 {
    let b = b as usize;
    let mut idx = 0usize;
    for (i, &d) in shape.as_slice().iter().enumerate() {
        let prefix = comps[i] / b.pow((prec[i] - d as usize) as u32);
        idx = idx * b.pow(d) + prefix;
    }
    idx as u32
}

enum Status {
    Found,
    Exhausted,
    Limit,
}

struct Search<'a> {
    box_of: &'a [Vec<u32>],
    capacity: &'a [u32],
    counts: Vec<Vec<u32>>,
    chosen: Vec<usize>,
    target: usize,
    cells: usize,
    nodes: u64,
    node_limit: u64,
}

impl Search<'_> {
    fn place(&mut self, cell: usize) -> bool {
        let fits = self
            .box_of
            .iter()
            .zip(&self.counts)
            .zip(self.capacity)
            .all(|((boxes, counts), &cap)| counts[boxes[cell] as usize] < cap);
        if !fits {
            return false;
        }
        for (boxes, counts) in self.box_of.iter().zip(self.counts.iter_mut()) {
            counts[boxes[cell] as usize] += 1;
        }
        self.chosen.push(cell);
        self.nodes += 1;
        true
    }

    fn remove(&mut self) {
        let cell = self.chosen.pop().expect("nonempty");
        for (boxes, counts) in self.box_of.iter().zip(self.counts.iter_mut()) {
            counts[boxes[cell] as usize] -= 1;
        }
    }

    fn extend(&mut self, from: usize) -> Status {
        if self.chosen.len() == self.target {
            return Status::Found;
        }
        for cell in from..self.cells {
            if self.nodes >= self.node_limit {
                return Status::Limit;
            }
            if self.place(cell) {
                match self.extend(cell) {
                    Status::Exhausted => self.remove(),
                    done => return done,
                }
            }
        }
        Status::Exhausted
    }
}
