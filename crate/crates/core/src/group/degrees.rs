//! Fundamental degrees from the Molien series
//! (1/|W|) Σ_g 1/det(1 - q·g) = Π 1/(1 - q^{d_i}).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::rational::rat_from_i64;

use super::ReflectionGroup;

/// Computes the degree multiset d_1 <= ... <= d_n and cross-checks the
/// identities Σ(d_i - 1) = |R| and Π d_i = |W|.
pub fn compute_degrees(group: &ReflectionGroup) -> Result<Vec<u64>> {
    let n = group.rank();
    if n == 0 {
        return Ok(Vec::new());
    }
    let truncation = group.num_reflections() + 2;

    // det(1 - q·g) depends only on the characteristic polynomial, so group
    // elements by it before inverting power series. Individual contributions
    // can be irrational; only the group-averaged total is rational.
    let mut by_charpoly: HashMap<Vec<Cyclotomic>, u64> = HashMap::new();
    for m in group.elements() {
        let cp = m.charpoly();
        *by_charpoly.entry(cp.coeffs().to_vec()).or_insert(0) += 1;
    }

    let mut total = vec![Cyclotomic::zero(); truncation + 1];
    for (cp, count) in by_charpoly {
        // det(1 - q g) = Σ_k a_k q^{n-k} for charpoly Σ_k a_k X^k.
        let mut det_poly = vec![Cyclotomic::zero(); n + 1];
        for (k, a) in cp.iter().enumerate() {
            det_poly[n - k] = a.clone();
        }
        debug_assert!(det_poly[0].is_one());
        // Power-series inverse of det_poly up to the truncation order.
        let mut inv = vec![Cyclotomic::zero(); truncation + 1];
        inv[0] = Cyclotomic::one();
        for k in 1..=truncation {
            let mut s = Cyclotomic::zero();
            for j in 1..=k.min(n) {
                if !det_poly[j].is_zero() && !inv[k - j].is_zero() {
                    s = s.add(&det_poly[j].mul(&inv[k - j]));
                }
            }
            inv[k] = s.neg();
        }
        let mult = rat_from_i64(count as i64);
        for (t, v) in total.iter_mut().zip(inv) {
            if !v.is_zero() {
                *t = t.add(&v.scale(&mult));
            }
        }
    }

    let order = rat_from_i64(group.order() as i64).recip();
    let mut series: Vec<BigInt> = Vec::with_capacity(truncation + 1);
    for t in &total {
        let v = t.scale(&order).to_rational().map_err(|_| {
            Error::MolienFactorization("irrational Molien series coefficient".into())
        })?;
        if !v.is_integer() || v.is_negative() {
            return Err(Error::MolienFactorization(format!(
                "series coefficient {v} is not a non-negative integer"
            )));
        }
        series.push(v.numer().clone());
    }

    // Greedy extraction of the degrees, smallest first.
    let mut degs = Vec::with_capacity(n);
    let mut s = series;
    for _ in 0..n {
        let Some(k) = (1..=truncation).find(|&k| !s[k].is_zero()) else {
            return Err(Error::MolienFactorization(
                "series terminated before yielding all degrees".into(),
            ));
        };
        if s[k].is_negative() {
            return Err(Error::MolienFactorization(format!(
                "negative residual coefficient at q^{k}"
            )));
        }
        degs.push(k as u64);
        // Multiply by (1 - q^k).
        for j in (k..=truncation).rev() {
            let t = s[j - k].clone();
            s[j] -= t;
        }
    }
    if s[0] != BigInt::from(1) || s[1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::MolienFactorization(
            "residual series is not 1 after removing all degree factors".into(),
        ));
    }

    let dsum: u64 = degs.iter().map(|d| d - 1).sum();
    if dsum != group.num_reflections() as u64 {
        return Err(Error::MolienFactorization(format!(
            "Σ(d_i - 1) = {dsum} but |R| = {}",
            group.num_reflections()
        )));
    }
    let dprod: u128 = degs.iter().map(|&d| d as u128).product();
    if dprod != group.order() as u128 {
        return Err(Error::MolienFactorization(format!(
            "Π d_i = {dprod} but |W| = {}",
            group.order()
        )));
    }
    Ok(degs)
}
