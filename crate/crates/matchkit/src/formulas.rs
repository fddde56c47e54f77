//! Exact evaluators for the closed forms and generating functions of the
//! avoidance classes: juxtaposition counts, the mu(1212) family, lifted
//! classes and the unlabeled-pattern closed forms.

use num::{BigUint, One, Zero};

use crate::count::{CountTable, Source};
use crate::error::{Error, Result};
use crate::numbers::{binomial, catalan, factorial, rational_from_biguint};
use crate::series::{catalan_series, PowerSeries};

fn table_entry(t: &CountTable, i: usize) -> Result<BigUint> {
    t.get(i).cloned().ok_or(Error::MissingEntry(i))
}

/// |M_n(sigma(tau+|sigma|))| from tables for mu(sigma), M(sigma), M(tau):
///
/// |M_n(sigma)| + sum_{l=|sigma|}^{n} sum_{k=0}^{n-l}
///     binom(2l+k-1, k) binom(2n-2l-k, k) k! |mu_l(sigma)| |M_{n-l-k}(tau)|
pub fn eq1_count(
    n: usize,
    sigma_order: usize,
    mu_sigma: &CountTable,
    m_sigma: &CountTable,
    m_tau: &CountTable,
) -> Result<BigUint> {
    let mut total = table_entry(m_sigma, n)?;
    for l in sigma_order..=n {
        for k in 0..=(n - l) {
            let mu = table_entry(mu_sigma, l)?;
            if mu.is_zero() {
                continue;
            }
            let tau = table_entry(m_tau, n - l - k)?;
            let term = binomial((2 * l + k) as i64 - 1, k as i64)
                * binomial((2 * n) as i64 - (2 * l + k) as i64, k as i64)
                * factorial(k as u64)
                * mu
                * tau;
            total += term;
        }
    }
    Ok(total)
}

/// |M_n(11(tau+1))| = sum_{k=1}^{n} k! binom(2n-k-1, k-1) |M_{n-k}(tau)|;
/// the empty matching contributes the conventional 1 at n = 0.
pub fn jm_prefix11_count(n: usize, m_tau: &CountTable) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::one());
    }
    let mut total = BigUint::zero();
    for k in 1..=n {
        let tau = table_entry(m_tau, n - k)?;
        total += factorial(k as u64)
            * binomial((2 * n - k) as i64 - 1, k as i64 - 1)
            * tau;
    }
    Ok(total)
}

/// mu(1212) by the recurrence
/// |mu_n| = sum_{k=0}^{n-2} (2k+1) C_k C_{n-k-2} + C_k |mu_{n-k-1}|,
/// with |mu_m| = 0 for m < 2.
pub fn mu1212_recursive(n_max: usize) -> CountTable {
    let mut counts = vec![BigUint::zero(); n_max + 1];
    for n in 2..=n_max {
        let mut acc = BigUint::zero();
        for k in 0..=(n - 2) {
            let ck = catalan(k as u64);
            acc += BigUint::from(2 * k as u64 + 1) * &ck * catalan((n - k - 2) as u64);
            acc += &ck * &counts[n - k - 1];
        }
        counts[n] = acc;
    }
    CountTable::new(
        "mu(1212)",
        counts,
        Source::Formula("eq2-recurrence".into()),
    )
}

/// |mu_n(1212)| = binom(2n-1, n-2).
pub fn mu1212_closed(n: usize) -> BigUint {
    binomial(2 * n as i64 - 1, n as i64 - 2)
}

/// The generating function z(C-1) / ((1-2zC)(1-zC)).
///
/// The displayed form of the proposition omits the leading factor z; the
/// proof's final line, the closed form and brute force all agree on this
/// version.
pub fn mu1212_gf(n: usize) -> PowerSeries {
    let c = catalan_series(n);
    let one = PowerSeries::one(n);
    let zc = c.mul_z();
    let num = c.sub(&one).mul_z();
    let den = one
        .sub(&zc.scale(&crate::numbers::rational_from_i64(2)))
        .mul(&one.sub(&zc));
    num.mul(&den.recip().expect("den has constant term 1"))
}

/// A002054: zC(z)^3 / (1 - 2zC(z)); coefficient n is binom(2n+1, n-1).
pub fn a002054_series(n: usize) -> PowerSeries {
    let c = catalan_series(n);
    let one = PowerSeries::one(n);
    let num = c.mul(&c).mul(&c).mul_z();
    let den = one.sub(&c.mul_z().scale(&crate::numbers::rational_from_i64(2)));
    num.mul(&den.recip().expect("den has constant term 1"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionCheck {
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub equal: bool,
}

fn visit_compositions(total: usize, prefix: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if total == 0 {
        if !prefix.is_empty() {
            f(prefix);
        }
        return;
    }
    for part in 1..=total {
        prefix.push(part);
        visit_compositions(total - part, prefix, f);
        prefix.pop();
    }
}

/// The byproduct identity: summing (2 alpha_i - 1) prod_j C_{alpha_j - 1}
/// over compositions alpha of n-1 and positions i equals binom(2n-1, n-2).
///
/// The printed identity sums over |alpha| = n, which already fails at
/// n = 2; compositions of n - 1 reproduce the binomial.
pub fn composition_identity_check(n: usize) -> CompositionCheck {
    assert!(n >= 2, "the identity is stated for n >= 2");
    let mut lhs = BigUint::zero();
    let mut prefix = Vec::new();
    visit_compositions(n - 1, &mut prefix, &mut |alpha| {
        let product: BigUint = alpha
            .iter()
            .map(|&a| catalan(a as u64 - 1))
            .fold(BigUint::one(), |acc, c| acc * c);
        for &a in alpha {
            lhs += BigUint::from(2 * a as u64 - 1) * &product;
        }
    });
    let rhs = mu1212_closed(n);
    let equal = lhs == rhs;
    CompositionCheck { lhs, rhs, equal }
}

/// |M_n(sigma(tau+2))| for sigma in {1212, 1221}:
///
/// C_n + sum_{l=2}^{n} sum_{k=0}^{n-l} binom(2l-1, l-2) binom(2l+k-1, k)
///     binom(2n-2l-k, k) k! |M_{n-l-k}(tau)|
pub fn theorem34_count(n: usize, m_tau: &CountTable) -> Result<BigUint> {
    let mut total = catalan(n as u64);
    for l in 2..=n {
        for k in 0..=(n - l) {
            let tau = table_entry(m_tau, n - l - k)?;
            total += binomial(2 * l as i64 - 1, l as i64 - 2)
                * binomial((2 * l + k) as i64 - 1, k as i64)
                * binomial((2 * n) as i64 - (2 * l + k) as i64, k as i64)
                * factorial(k as u64)
                * tau;
        }
    }
    Ok(total)
}

/// |M_n(123123)| = C_n C_{n+2} - C_{n+1}^2.
pub fn m123123_count(n: usize) -> BigUint {
    catalan(n as u64) * catalan(n as u64 + 2) - catalan(n as u64 + 1) * catalan(n as u64 + 1)
}

/// Closed-form table for |M_n(123123)|.
pub fn m123123_table(n_max: usize) -> CountTable {
    CountTable::new(
        "avoid(123123)",
        (0..=n_max).map(m123123_count).collect(),
        Source::Formula("catalan-product".into()),
    )
}

/// Given the series M = M(sigma, chi, chibar, z) for a connected sigma,
/// returns the series of the lifted class:
///
/// M(1(sigma+1)1, chi, chibar, z) = 1 / (1 - z M C(z M^2)).
pub fn gf_lifting(m_series: &PowerSeries, n: usize) -> Result<PowerSeries> {
    let m = m_series.truncate(n);
    if !m.coeff(0).is_one() {
        return Err(Error::SeriesPrecondition(
            "gf_lifting needs an input series with constant term 1",
        ));
    }
    let c = catalan_series(n);
    let w = m.mul(&m).mul_z();
    let c_of_w = c.compose(&w)?;
    let den = PowerSeries::one(n).sub(&m.mul_z().mul(&c_of_w));
    den.recip()
}

/// Both closed forms of the corollary class M(123231, 123132, 123213):
/// form a is 1/(1 - zC(z)C(C(z)-1)); form b is the A125188 expression
/// (1 + zC - sqrt(1 - zC - 5z)) / (2z(1 + C)).
pub fn gf_corollary37(n: usize) -> Result<(PowerSeries, PowerSeries)> {
    // work one order higher: form b divides by z
    let c = catalan_series(n + 1);
    let one = PowerSeries::one(n + 1);
    let inner = c.sub(&one);
    let form_a = one.sub(&c.mul_z().mul(&c.compose(&inner)?)).recip()?.truncate(n);

    let zc = c.mul_z();
    let five_z = PowerSeries::z(n + 1).scale(&crate::numbers::rational_from_i64(5));
    let radicand = one.sub(&zc).sub(&five_z);
    let num = one.add(&zc).sub(&radicand.sqrt()?);
    let den = one.add(&c).scale(&crate::numbers::rational_from_i64(2));
    let form_b = num.div_z()?.mul(&den.recip()?).truncate(n);
    Ok((form_a, form_b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnlabeledFormula {
    /// C_n + 2^n - n - 1 for n >= 2; oracle-confirmed 1 below.
    Pattern112323,
    /// (1/(2n+1)) binom(3n, n): the ternary-tree count.
    Pattern123132,
}

pub fn unlabeled_closed_count(which: UnlabeledFormula, n: usize) -> BigUint {
    match which {
        UnlabeledFormula::Pattern112323 => {
            if n < 2 {
                BigUint::one()
            } else {
                catalan(n as u64) + (BigUint::one() << n) - BigUint::from(n as u64 + 1)
            }
        }
        UnlabeledFormula::Pattern123132 => {
            binomial(3 * n as i64, n as i64) / BigUint::from(2 * n as u64 + 1)
        }
    }
}

pub fn unlabeled_closed_table(which: UnlabeledFormula, n_max: usize) -> CountTable {
    let (label, formula) = match which {
        UnlabeledFormula::Pattern112323 => ("avoid([112323])", "catalan-plus-eulerian"),
        UnlabeledFormula::Pattern123132 => ("avoid([121323])", "ternary-tree"),
    };
    CountTable::new(
        label,
        (0..=n_max).map(|n| unlabeled_closed_count(which, n)).collect(),
        Source::Formula(formula.into()),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxMgf {
    /// M([1212], z) = C(z).
    Unlabeled1212,
    /// M([1122], z) = 1/(1-z).
    Unlabeled1122,
}

pub fn mgf_aux_series(which: AuxMgf, n: usize) -> PowerSeries {
    match which {
        AuxMgf::Unlabeled1212 => catalan_series(n),
        AuxMgf::Unlabeled1122 => PowerSeries::one(n)
            .sub(&PowerSeries::z(n))
            .recip()
            .expect("1-z has constant term 1"),
    }
}

/// Builds a series from an exact count table (constant term included).
pub fn series_from_table(t: &CountTable) -> PowerSeries {
    PowerSeries::from_coeffs(t.counts.iter().map(|c| rational_from_biguint(c)).collect())
}
