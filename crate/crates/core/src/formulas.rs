//! Exact closed forms and power series for the counting sequences attached
//! to DCM_k.
//!
//! Throughout, `l` is `ceil(k / 2)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn need(cond: bool, what: &'static str, range: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(what, range.to_string()))
    }
}

/// Exact division that must leave no remainder.
fn exact_div(n: BigUint, d: BigUint) -> BigUint {
    let (q, r) = (&n / &d, &n % &d);
    debug_assert!(r.is_zero(), "inexact division {n} / {d}");
    q
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

pub fn catalan(k: u64) -> BigUint {
    exact_div(binomial(2 * k, k), big(k + 1))
}

/// Number of non-crossing partitions of `4l` points into quadruples.
pub fn fuss_a(l: u64) -> BigUint {
    exact_div(binomial(4 * l, l), big(3 * l + 1))
}

/// Isolated matchings of odd size `2l - 1`.
pub fn count_i(l: u64) -> Result<BigUint> {
    need(l >= 1, "count_I", "l >= 1")?;
    Ok(exact_div(binomial(4 * l - 2, l - 1), big(l)))
}

/// Leaf matchings of odd size `2l - 1`.
pub fn count_l_odd(l: u64) -> Result<BigUint> {
    need(l >= 1, "count_L_odd", "l >= 1")?;
    Ok(exact_div(
        big(2 * (l - 1)) * binomial(4 * l - 2, l - 1),
        big(3 * l),
    ))
}

/// Leaf matchings of even size `2l`.
pub fn count_l_even(l: u64) -> Result<BigUint> {
    need(l >= 1, "count_L_even", "l >= 1")?;
    Ok(exact_div(big(l + 1) * binomial(4 * l, l), big(3 * l + 1)))
}

/// DB-matchings of size `2l`.
pub fn count_db(l: u64) -> Result<BigUint> {
    need(l >= 1, "count_DB", "l >= 1")?;
    Ok(big(l) << l as usize)
}

/// Pair components of DCM_{2l}.
pub fn count_pairs(l: u64) -> Result<BigUint> {
    need(l >= 1, "count_pairs", "l >= 1")?;
    Ok(big(l) << (l - 1) as usize)
}

/// DBD-matchings of size `2l - 1`, one per medium star.
pub fn count_dbd(l: u64) -> Result<BigUint> {
    need(l >= 3, "count_DBD", "l >= 3")?;
    Ok(big(2 * l - 1) << (l - 3) as usize)
}

/// Medium components of DCM_{2l}.
pub fn count_edb_components(l: u64) -> Result<BigUint> {
    need(l >= 3, "count_EDB_components", "l >= 3")?;
    Ok(big(l) << (l - 2) as usize)
}

pub fn medium_even_order(l: u64) -> Result<u64> {
    need(l >= 2, "medium_even_order", "l >= 2")?;
    Ok(6 * l - 6)
}

pub fn medium_odd_order(l: u64) -> Result<u64> {
    need(l >= 2, "medium_odd_order", "l >= 2")?;
    Ok(l)
}

/// Riordan number `r_k`, the maximum degree in DCM_k.
pub fn riordan(k: u64) -> Result<BigUint> {
    need(k >= 2, "riordan", "k >= 2")?;
    let mut sum = BigUint::zero();
    for i in 1..=k / 2 {
        sum += binomial(k + 1, i) * binomial(k - i - 1, i - 1);
    }
    Ok(exact_div(sum, big(k + 1)))
}

/// Exact coefficients `0..=n` of a power series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTable {
    pub name: String,
    pub coefficients: Vec<BigUint>,
}

impl SeriesTable {
    pub fn get(&self, i: usize) -> Option<&BigUint> {
        self.coefficients.get(i)
    }
}

fn mul(a: &[BigUint], b: &[BigUint], len: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Iterates `step` from the series `1` until the first `len` coefficients
/// stop changing.
fn fixed_point(len: usize, step: impl Fn(&[BigUint]) -> Vec<BigUint>) -> Vec<BigUint> {
    let mut cur = vec![BigUint::zero(); len];
    cur[0] = BigUint::one();
    loop {
        let next = step(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Edge counts `d_0..=d_n` of DCM_k from `Z = 1 + 2x^2 Z^4 / (1 - x Z^2)`
/// with `z = (Z + 1) / 2`.
pub fn edge_series(n: usize) -> SeriesTable {
    let len = n + 1;
    let big_z = fixed_point(len, |z| {
        let z2 = mul(z, z, len);
        let z4 = mul(&z2, &z2, len);
        // g = 1 / (1 - x z^2), by g = 1 + x z^2 g.
        let mut g = vec![BigUint::zero(); len];
        g[0] = BigUint::one();
        for m in 1..len {
            let mut s = BigUint::zero();
            for i in 0..m {
                s += &z2[i] * &g[m - 1 - i];
            }
            g[m] = s;
        }
        let t = mul(&z4, &g, len);
        let mut next = vec![BigUint::zero(); len];
        next[0] = BigUint::one();
        for m in 2..len {
            next[m] = &t[m - 2] * 2u32;
        }
        next
    });
    let coefficients = big_z
        .into_iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { (c + 1u32) >> 1 } else { c >> 1 })
        .collect();
    SeriesTable {
        name: "edges".into(),
        coefficients,
    }
}

/// Coefficients `a_0..=a_n` of `g = 1 + x g^4`.
pub fn fuss_series(n: usize) -> SeriesTable {
    let len = n + 1;
    let coefficients = fixed_point(len, |g| {
        let g2 = mul(g, g, len);
        let g4 = mul(&g2, &g2, len);
        let mut next = vec![BigUint::zero(); len];
        next[0] = BigUint::one();
        next[1..].clone_from_slice(&g4[..len - 1]);
        next
    });
    SeriesTable {
        name: "fuss".into(),
        coefficients,
    }
}

/// `d_n / d_{n-1}`, a probe of the exponential growth rate of the edge
/// counts.
pub fn growth_estimate(n: usize) -> Result<f64> {
    need(n >= 2, "growth_estimate", "n >= 2")?;
    let d = edge_series(n).coefficients;
    Ok(ratio(&d[n], &d[n - 1]))
}

fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    // Scale down together so both fit comfortably in an f64.
    let shift = b.bits().saturating_sub(60);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

fn ell(k: u64) -> u64 {
    k.div_ceil(2)
}

/// Order of the ring component, from the orders and numbers of all other
/// components.
pub fn big_component_order(k: u64) -> Result<BigUint> {
    need(k >= 9, "big_component_order", "k >= 9")?;
    let l = ell(k);
    let rest = if k % 2 == 1 {
        count_i(l)? + big(l) * count_dbd(l)?
    } else {
        big(2) * count_pairs(l)? + big(6 * l - 6) * count_edb_components(l)?
    };
    Ok(catalan(k) - rest)
}

/// Result of checking the two inequalities comparing the ring component
/// with the medium components, per `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigOrderCheck {
    pub l: u64,
    pub odd_holds: bool,
    pub even_holds: bool,
}

/// Checks, for `5 <= l <= l_max`,
/// `C_{2l-1} > count_I(l) + l (2l-1) 2^{l-3} + l` and
/// `C_{2l} > l 2^l + l (6l-6) 2^{l-2} + 6l - 6`.
pub fn big_order_inequalities(l_max: u64) -> Result<Vec<BigOrderCheck>> {
    need(l_max >= 5, "big_order_inequalities", "l_max >= 5")?;
    (5..=l_max)
        .map(|l| {
            let odd_rhs = count_i(l)? + big(l * (2 * l - 1)) * (big(1) << (l - 3) as usize) + big(l);
            let even_rhs =
                (big(l) << l as usize) + big(l * (6 * l - 6)) * (big(1) << (l - 2) as usize) + big(6 * l - 6);
            Ok(BigOrderCheck {
                l,
                odd_holds: catalan(2 * l - 1) > odd_rhs,
                even_holds: catalan(2 * l) > even_rhs,
            })
        })
        .collect()
}
