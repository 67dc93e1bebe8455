//! Exact permanents and permanental polynomials `π(G,x) = per(xI − A(G))`.
//!
//! Two independent routes produce the coefficient vector:
//!
//! * [`perm_poly_minors`] sums principal-submatrix permanents,
//!   `c_k = (−1)^k Σ_{|S|=k} per(A[S,S])`.
//! * [`perm_poly_ryser`] applies Ryser's formula directly to the
//!   polynomial matrix `xI − A`, walking column subsets in Gray-code order.
//!
//! Both are exact; they are cross-checked against each other in tests.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{check_cap, Result};
use crate::graph::Graph;
use crate::poly::IntPolynomial;

/// Size limits for the exact engines. These are guardrails, not
/// mathematical limits, and can be raised by callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineCaps {
    pub minors_max_n: usize,
    pub ryser_max_n: usize,
    pub permanent_max_k: usize,
}

impl Default for EngineCaps {
    fn default() -> Self {
        EngineCaps { minors_max_n: 18, ryser_max_n: 22, permanent_max_k: 30 }
    }
}

/// Which engine computes `π(G,x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    #[default]
    Ryser,
    Minors,
}

/// Gray-code walks shorter than this run on one thread.
const PARALLEL_MIN_N: usize = 16;
/// Number of high columns fixed per parallel chunk.
const CHUNK_BITS: usize = 6;

/// Exact `i128` accumulator that spills into a `BigInt` instead of
/// overflowing.
#[derive(Default)]
struct Accumulator {
    fast: i128,
    slow: BigInt,
}

impl Accumulator {
    #[inline]
    fn add(&mut self, v: i128) {
        match self.fast.checked_add(v) {
            Some(s) => self.fast = s,
            None => {
                self.slow += self.fast;
                self.fast = v;
            }
        }
    }

    fn add_big(&mut self, v: BigInt) {
        self.slow += v;
    }

    fn total(self) -> BigInt {
        self.slow + self.fast
    }
}

/// `per(A(G)[S,S])` for the vertex set `subset`, by Ryser's formula with
/// Gray-code column updates.
pub fn permanent(g: &Graph, subset: u64) -> Result<BigInt> {
    permanent_capped(g, subset, EngineCaps::default().permanent_max_k)
}

pub fn permanent_capped(g: &Graph, subset: u64, cap: usize) -> Result<BigInt> {
    let subset = subset & g.vertex_mask();
    let k = subset.count_ones() as usize;
    check_cap("permanent order", k, cap)?;
    Ok(principal_permanent(g, subset))
}

fn principal_permanent(g: &Graph, subset: u64) -> BigInt {
    let verts: Vec<usize> = (0..g.n()).filter(|&u| subset >> u & 1 == 1).collect();
    let k = verts.len();
    if k == 0 {
        return BigInt::one();
    }
    let rows: Vec<u64> = verts.iter().map(|&u| g.row(u) & subset).collect();
    if rows.contains(&0) {
        return BigInt::zero();
    }
    // row_sums[i] = |N(v_i) ∩ T|, T the current column set in Gray order.
    let mut row_sums = vec![0u32; k];
    let mut zero_rows = k;
    let mut t_size = 0usize;
    let mut acc = Accumulator::default();
    for step in 1u64..(1u64 << k) {
        let j = step.trailing_zeros() as usize;
        let col = verts[j];
        let gray = step ^ (step >> 1);
        let added = gray >> j & 1 == 1;
        if added {
            t_size += 1;
        } else {
            t_size -= 1;
        }
        for (i, &r) in rows.iter().enumerate() {
            if r >> col & 1 == 1 {
                if added {
                    if row_sums[i] == 0 {
                        zero_rows -= 1;
                    }
                    row_sums[i] += 1;
                } else {
                    row_sums[i] -= 1;
                    if row_sums[i] == 0 {
                        zero_rows += 1;
                    }
                }
            }
        }
        if zero_rows > 0 {
            continue;
        }
        let negative = (k - t_size) % 2 == 1;
        match row_sums.iter().try_fold(1i128, |p, &s| p.checked_mul(s as i128)) {
            Some(p) => acc.add(if negative { -p } else { p }),
            None => {
                let p: BigInt = row_sums.iter().map(|&s| BigInt::from(s)).product();
                acc.add_big(if negative { -p } else { p });
            }
        }
    }
    acc.total()
}

/// `π(G,x)` via principal-submatrix permanents.
pub fn perm_poly_minors(g: &Graph) -> Result<IntPolynomial> {
    perm_poly_minors_capped(g, EngineCaps::default().minors_max_n)
}

pub fn perm_poly_minors_capped(g: &Graph, cap: usize) -> Result<IntPolynomial> {
    let n = g.n();
    check_cap("minor-expansion vertex count", n, cap)?;
    let mut sums = vec![BigInt::zero(); n + 1];
    sums[0] = BigInt::one();
    for subset in 1u64..(1u64 << n) {
        let k = subset.count_ones() as usize;
        if k < 2 {
            continue;
        }
        let p = principal_permanent(g, subset);
        if !p.is_zero() {
            sums[k] += p;
        }
    }
    let coeffs = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 1 { -s } else { s })
        .collect();
    IntPolynomial::new(coeffs)
}

/// `π(G,x)` via Ryser's formula on `xI − A(G)`:
/// `per(M) = (−1)^n Σ_S (−1)^{|S|} Π_i r_i(S)` where
/// `r_i(S) = x·[i ∈ S] − |N(i) ∩ S|`.
pub fn perm_poly_ryser(g: &Graph) -> Result<IntPolynomial> {
    perm_poly_ryser_capped(g, EngineCaps::default().ryser_max_n)
}

pub fn perm_poly_ryser_capped(g: &Graph, cap: usize) -> Result<IntPolynomial> {
    let n = g.n();
    check_cap("Ryser vertex count", n, cap)?;
    // ascending[j] accumulates the coefficient of x^j.
    let ascending: Vec<BigInt> = if n >= PARALLEL_MIN_N {
        let high = CHUNK_BITS.min(n);
        let chunks: Vec<Vec<BigInt>> = (0u64..1 << high)
            .into_par_iter()
            .map(|prefix| ryser_chunk(g, n - high, prefix << (n - high)))
            .collect();
        let mut total = vec![BigInt::zero(); n + 1];
        for chunk in chunks {
            for (t, c) in total.iter_mut().zip(chunk) {
                *t += c;
            }
        }
        total
    } else {
        ryser_chunk(g, n, 0)
    };
    let sign_n = n % 2 == 1;
    let coeffs = (0..=n)
        .map(|k| {
            let c = ascending[n - k].clone();
            if sign_n {
                -c
            } else {
                c
            }
        })
        .collect();
    IntPolynomial::new(coeffs)
}

/// Sums `(−1)^{|S|} Π_i r_i(S)` over every `S` whose columns `≥ low` equal
/// those of `fixed`, walking the low columns in Gray-code order.
fn ryser_chunk(g: &Graph, low: usize, fixed: u64) -> Vec<BigInt> {
    let n = g.n();
    let mut in_set = vec![false; n];
    // b[i] = |N(i) ∩ S|; row i is identically zero iff i ∉ S and b[i] = 0.
    let mut b = vec![0i64; n];
    for c in 0..n {
        if fixed >> c & 1 == 1 {
            in_set[c] = true;
            for i in g.neighbors(c) {
                b[i] += 1;
            }
        }
    }
    let mut zero_rows = (0..n).filter(|&i| !in_set[i] && b[i] == 0).count();
    let mut size = fixed.count_ones() as usize;
    let mut acc: Vec<Accumulator> = (0..=n).map(|_| Accumulator::default()).collect();
    let mut prod = vec![0i128; n + 1];

    let mut visit = |in_set: &[bool], b: &[i64], size: usize, zero_rows: usize| {
        if zero_rows > 0 {
            return;
        }
        let negative = size % 2 == 1;
        if !ryser_term(in_set, b, negative, &mut prod, &mut acc) {
            let term = ryser_term_big(in_set, b, negative);
            for (a, t) in acc.iter_mut().zip(term) {
                a.add_big(t);
            }
        }
    };

    visit(&in_set, &b, size, zero_rows);
    for step in 1u64..(1u64 << low) {
        let j = step.trailing_zeros() as usize;
        let adding = !in_set[j];
        let was_zero = |i: usize, in_set: &[bool], b: &[i64]| !in_set[i] && b[i] == 0;
        if was_zero(j, &in_set, &b) {
            zero_rows -= 1;
        }
        in_set[j] = adding;
        if was_zero(j, &in_set, &b) {
            zero_rows += 1;
        }
        for i in g.neighbors(j) {
            let before = was_zero(i, &in_set, &b);
            b[i] += if adding { 1 } else { -1 };
            let after = was_zero(i, &in_set, &b);
            if before && !after {
                zero_rows -= 1;
            } else if !before && after {
                zero_rows += 1;
            }
        }
        if adding {
            size += 1;
        } else {
            size -= 1;
        }
        visit(&in_set, &b, size, zero_rows);
    }
    acc.into_iter().map(Accumulator::total).collect()
}

/// Multiplies out `Π_i r_i(S)` in `i128` (ascending powers) and adds it to
/// `acc`. Returns `false` on overflow, leaving `acc` untouched.
fn ryser_term(in_set: &[bool], b: &[i64], negative: bool, prod: &mut [i128], acc: &mut [Accumulator]) -> bool {
    let mut constant: i128 = if negative { -1 } else { 1 };
    let mut deg = 0usize;
    prod[0] = 1;
    for (i, &bi) in b.iter().enumerate() {
        let bi = bi as i128;
        if in_set[i] {
            // multiply by (x − b_i)
            prod[deg + 1] = 0;
            for d in (0..=deg).rev() {
                let shifted = prod[d];
                let Some(scaled) = shifted.checked_mul(bi) else { return false };
                let Some(next) = prod[d + 1].checked_add(shifted) else { return false };
                prod[d + 1] = next;
                prod[d] = -scaled;
            }
            deg += 1;
        } else {
            let Some(c) = constant.checked_mul(-bi) else { return false };
            constant = c;
        }
    }
    let mut scaled = [0i128; 65];
    for d in 0..=deg {
        let Some(v) = prod[d].checked_mul(constant) else { return false };
        scaled[d] = v;
    }
    for d in 0..=deg {
        acc[d].add(scaled[d]);
    }
    true
}

fn ryser_term_big(in_set: &[bool], b: &[i64], negative: bool) -> Vec<BigInt> {
    let n = b.len();
    let mut prod = vec![BigInt::zero(); n + 1];
    prod[0] = if negative { -BigInt::one() } else { BigInt::one() };
    let mut deg = 0;
    for (i, &bi) in b.iter().enumerate() {
        if in_set[i] {
            for d in (0..=deg).rev() {
                let shifted = prod[d].clone();
                prod[d + 1] += &shifted;
                prod[d] = -(shifted * bi);
            }
            deg += 1;
        } else {
            for p in prod.iter_mut().take(deg + 1) {
                *p *= -bi;
            }
        }
    }
    prod
}

/// `π(G,x)` by the chosen engine under `caps`.
pub fn perm_poly(g: &Graph, engine: Engine, caps: &EngineCaps) -> Result<IntPolynomial> {
    match engine {
        Engine::Ryser => perm_poly_ryser_capped(g, caps.ryser_max_n),
        Engine::Minors => perm_poly_minors_capped(g, caps.minors_max_n),
    }
}

/// Number of derangements `D_n`, from `D_n = (n−1)(D_{n−1} + D_{n−2})`.
pub fn derangement_count(n: usize) -> BigInt {
    let (mut prev, mut cur) = (BigInt::one(), BigInt::zero());
    if n == 0 {
        return prev;
    }
    for k in 2..=n {
        let next = BigInt::from(k - 1) * (&cur + &prev);
        prev = cur;
        cur = next;
    }
    cur
}
