//! Intervals [11, tau] of the matching pattern poset: downward closures,
//! cardinality profiles, the nesting-stack closed formulas, the tau_n
//! family and the f_{n,k} recurrence / generating function.

use std::collections::{BTreeSet, HashSet};

use num::{BigInt, BigUint, One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::numbers::fibonacci;
use crate::pattern::contains;

/// All nonempty patterns of `tau` (the interval [11, tau], endpoints
/// included), by repeated single-edge deletion with canonical dedup.
pub fn interval_elements(tau: &Matching) -> Result<HashSet<Matching>> {
    if tau.is_empty() {
        return Err(Error::BadParameters("interval needs a nonempty tau".into()));
    }
    let mut seen: HashSet<Matching> = HashSet::new();
    let mut frontier = vec![tau.clone()];
    seen.insert(tau.clone());
    while let Some(m) = frontier.pop() {
        if m.order() <= 1 {
            continue;
        }
        for label in 1..=m.order() {
            let child = m
                .delete_edges(&BTreeSet::from([label]))
                .expect("label in range");
            if seen.insert(child.clone()) {
                frontier.push(child);
            }
        }
    }
    Ok(seen)
}

/// Cardinality profile of [11, tau] by edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalProfile {
    pub tau: Matching,
    /// `by_edges[k-1]` is the number of interval elements with `k` edges.
    pub by_edges: Vec<BigUint>,
    pub total: BigUint,
}

impl IntervalProfile {
    pub fn count_with_edges(&self, k: usize) -> BigUint {
        if k == 0 || k > self.by_edges.len() {
            BigUint::zero()
        } else {
            self.by_edges[k - 1].clone()
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tau": self.tau.to_string(),
            "by_edges": self.by_edges.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "total": self.total.to_string(),
        })
    }
}

pub fn interval_profile(tau: &Matching) -> Result<IntervalProfile> {
    let elements = interval_elements(tau)?;
    let mut by_edges = vec![BigUint::zero(); tau.order()];
    for m in &elements {
        by_edges[m.order() - 1] += 1u32;
    }
    let total = by_edges.iter().sum();
    Ok(IntervalProfile {
        tau: tau.clone(),
        by_edges,
        total,
    })
}

/// Profile of [11, tau] by number of small edges instead of edge count;
/// index k holds the count of elements with exactly k small edges. This is
/// the oracle the chi formulas are checked against.
pub fn interval_small_edge_profile(tau: &Matching) -> Result<Vec<BigUint>> {
    let elements = interval_elements(tau)?;
    let max_small = elements.iter().map(|m| m.small_edge_count()).max().unwrap_or(0);
    let mut out = vec![BigUint::zero(); max_small + 1];
    for m in &elements {
        out[m.small_edge_count()] += 1u32;
    }
    Ok(out)
}

/// The juxtaposition of two totally nesting matchings of r and s edges,
/// enclosed in a totally nesting stack of k edges.
pub fn build_ks(k: usize, r: usize, s: usize) -> Result<Matching> {
    if r < s || s < 1 {
        return Err(Error::BadParameters(format!("need r >= s >= 1, got r={r}, s={s}")));
    }
    let mut m = Matching::totally_nesting(r).juxtapose(&Matching::totally_nesting(s));
    for _ in 0..k {
        m = m.lift();
    }
    Ok(m)
}

/// |[11, k(r;s)]| = r + k + rs(k+1).
pub fn formula_ks(k: usize, r: usize, s: usize) -> Result<BigUint> {
    if r < s || s < 1 {
        return Err(Error::BadParameters(format!("need r >= s >= 1, got r={r}, s={s}")));
    }
    Ok(BigUint::from((r + k + r * s * (k + 1)) as u64))
}

/// The matching k(h(a;b);c): stacks of a and b under h, then c beside,
/// all under k.
pub fn build_khabc(k: usize, h: usize, a: usize, b: usize, c: usize) -> Result<Matching> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::BadParameters(format!(
            "need a, b, c >= 1, got a={a}, b={b}, c={c}"
        )));
    }
    let mut mid = Matching::totally_nesting(a).juxtapose(&Matching::totally_nesting(b));
    for _ in 0..h {
        mid = mid.lift();
    }
    let mut m = mid.juxtapose(&Matching::totally_nesting(c));
    for _ in 0..k {
        m = m.lift();
    }
    Ok(m)
}

/// The per-small-edge-count components for [11, k(h(a;b);c)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KhabcFormula {
    pub chi1: BigInt,
    pub chi2: BigInt,
    pub chi3: BigInt,
    pub total: BigInt,
}

/// chi1 = max(k+h+a, k+h+b, k+c);
/// chi2 = ab(h+k+1) + (max(a,b)+h)c(k+1) - a min(b,c)(k+1);
/// chi3 = abc(h+1)(k+1).
///
/// Derived for nesting stacks with h, k >= 1; degenerate zeros are
/// permitted here and left to the oracle to arbitrate.
pub fn formula_khabc(k: usize, h: usize, a: usize, b: usize, c: usize) -> Result<KhabcFormula> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::BadParameters(format!(
            "need a, b, c >= 1, got a={a}, b={b}, c={c}"
        )));
    }
    let (k, h, a, b, c) = (k as i64, h as i64, a as i64, b as i64, c as i64);
    let chi1 = (k + h + a).max(k + h + b).max(k + c);
    let chi2 = a * b * (h + k + 1) + (a.max(b) + h) * c * (k + 1) - a * b.min(c) * (k + 1);
    let chi3 = a * b * c * (h + 1) * (k + 1);
    Ok(KhabcFormula {
        chi1: BigInt::from(chi1),
        chi2: BigInt::from(chi2),
        chi3: BigInt::from(chi3),
        total: BigInt::from(chi1 + chi2 + chi3),
    })
}

/// The recursive family: tau_0 empty, odd steps juxtapose a small edge,
/// even steps lift.
pub fn tau_family(n: usize) -> Matching {
    let mut m = Matching::empty();
    for i in 1..=n {
        if i % 2 == 1 {
            m = m.juxtapose(&Matching::single_edge());
        } else {
            m = m.lift();
        }
    }
    m
}

/// The triangle f[n][k]: elements of [11, tau_n] with k edges, for
/// 1 <= k <= n <= N. Entries outside that range are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateTable {
    pub n_max: usize,
    f: Vec<Vec<BigInt>>,
}

impl BivariateTable {
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.f
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn row_total(&self, n: usize) -> BigInt {
        self.f
            .get(n)
            .map(|row| row.iter().sum())
            .unwrap_or_else(BigInt::zero)
    }
}

/// Builds the triangle from the recurrence
/// f[n][k] = f[n-1][k] + f[n-1][k-1] - f[n-3][k-1], seeded by f[1][1] = 1.
pub fn f_table(n_max: usize) -> BivariateTable {
    let mut f = vec![vec![BigInt::zero(); n_max + 1]; n_max + 1];
    let get = |f: &Vec<Vec<BigInt>>, n: isize, k: isize| -> BigInt {
        if n < 1 || k < 1 || n > n_max as isize || k > n_max as isize {
            BigInt::zero()
        } else {
            f[n as usize][k as usize].clone()
        }
    };
    for n in 1..=n_max {
        for k in 1..=n {
            let seed = if n == 1 && k == 1 { BigInt::one() } else { BigInt::zero() };
            let (ni, ki) = (n as isize, k as isize);
            f[n][k] = seed + get(&f, ni - 1, ki) + get(&f, ni - 1, ki - 1)
                - get(&f, ni - 3, ki - 1);
        }
    }
    BivariateTable { n_max, f }
}

/// f_n = sum_k f[n][k] = Fib(n+2) - 1.
pub fn f_total(n: usize) -> BigUint {
    fibonacci(n as u64 + 2) - BigUint::one()
}

/// Expands F(x,y) = xy / (1 - x - xy + x^3 y) as the geometric series
/// xy sum_j (x + xy - x^3 y)^j, truncated at x-degree `n_max`. This route
/// is independent of the recurrence in `f_table` and cross-validates it.
pub fn f_generating_function_table(n_max: usize) -> BivariateTable {
    // bivariate polynomials as coeff[n][k], truncated at degree n_max in
    // both variables
    let dim = n_max + 1;
    let zero = || vec![vec![BigInt::zero(); dim]; dim];
    let mul = |p: &Vec<Vec<BigInt>>, q: &Vec<Vec<BigInt>>| {
        let mut out = zero();
        for n1 in 0..dim {
            for k1 in 0..dim {
                if p[n1][k1].is_zero() {
                    continue;
                }
                for n2 in 0..(dim - n1) {
                    for k2 in 0..(dim - k1) {
                        if q[n2][k2].is_zero() {
                            continue;
                        }
                        let term = &p[n1][k1] * &q[n2][k2];
                        out[n1 + n2][k1 + k2] += term;
                    }
                }
            }
        }
        out
    };

    // base = x + xy - x^3 y
    let mut base = zero();
    if dim > 1 {
        base[1][0] = BigInt::one();
        if dim > 1 {
            base[1][1] = BigInt::one();
        }
        if dim > 3 {
            base[3][1] = -BigInt::one();
        }
    }
    let mut sum = zero();
    sum[0][0] = BigInt::one();
    let mut power = zero();
    power[0][0] = BigInt::one();
    for _ in 0..n_max {
        power = mul(&power, &base);
        for n in 0..dim {
            for k in 0..dim {
                let t = power[n][k].clone();
                sum[n][k] += t;
            }
        }
    }
    // F = xy * sum
    let mut f = vec![vec![BigInt::zero(); n_max + 1]; n_max + 1];
    for n in 1..=n_max {
        for k in 1..=n_max {
            f[n][k] = sum[n - 1][k - 1].clone();
        }
    }
    BivariateTable { n_max, f }
}

/// Evaluates both biconditionals of the small-edge lemma for one pair:
/// sigma <= tau iff lift(sigma) <= lift(tau) juxtaposed with a small edge,
/// and iff sigma juxtaposed with a small edge <= lift(tau juxtaposed with
/// a small edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma51Check {
    pub i_ii: bool,
    pub i_iii: bool,
}

pub fn verify_lemma51(sigma: &Matching, tau: &Matching) -> Lemma51Check {
    let e = Matching::single_edge();
    let i = contains(sigma, tau);
    let ii = contains(&sigma.lift(), &tau.lift().juxtapose(&e));
    let iii = contains(&sigma.juxtapose(&e), &tau.juxtapose(&e).lift());
    Lemma51Check {
        i_ii: i == ii,
        i_iii: i == iii,
    }
}
