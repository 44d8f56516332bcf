//! Regular elements: certificates with explicit regular eigenvectors, and the
//! divisibility consequence d | e_C·ω_C for regular numbers.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;
use crate::numtheory::gcd;

use super::ReflectionGroup;

/// Witness that the class of `class_rep` is ζ-regular for ζ = ζ_order^power:
/// an exact eigenvector lying outside every reflection hyperplane.
#[derive(Clone, Debug)]
pub struct RegularElementCert {
    pub class_rep: u32,
    pub class_size: usize,
    /// d = |g|, the element order (equal to the order of ζ).
    pub order: u64,
    /// l with gcd(l, d) = 1; ζ = ζ_d^l.
    pub power: u64,
    pub eigenvector: CycMatrix,
}

/// Finds one certificate per (conjugacy class of order-d elements, l) pair
/// that is ζ_d^l-regular. Empty when d is not a regular number.
pub fn find_regular_elements(group: &ReflectionGroup, d: u64) -> Vec<RegularElementCert> {
    let mut certs = Vec::new();
    let of_order: Vec<u32> = (0..group.order() as u32)
        .filter(|&i| group.order_of(i) as u64 == d)
        .collect();
    if of_order.is_empty() {
        return certs;
    }
    let classes = group.conjugacy_partition(&of_order);
    for class in classes {
        let rep = class[0];
        let m = group.element(rep);
        for l in 1..=d {
            if gcd(l, d) != 1 {
                continue;
            }
            let zeta = Cyclotomic::root_of_unity(d, l as i64);
            let basis = m.eigenspace(&zeta);
            if basis.is_empty() {
                continue;
            }
            // The eigenspace avoids the hyperplane union iff it is contained
            // in none of the hyperplanes.
            let contained_in_some = group.hyperplanes().iter().any(|h| {
                basis
                    .iter()
                    .all(|v| covector_dot(&h.normal, v).is_zero())
            });
            if contained_in_some {
                continue;
            }
            let v = find_regular_vector(group, &basis)
                .expect("a subspace in no hyperplane contains a regular vector");
            debug_assert_eq!(m.mul_vec(&v), v.scale(&zeta));
            certs.push(RegularElementCert {
                class_rep: rep,
                class_size: class.len(),
                order: d,
                power: l,
                eigenvector: v,
            });
        }
    }
    certs.sort_by_key(|c| (c.class_rep, c.power));
    certs
}

/// Deterministic search for an eigenspace vector off every hyperplane: scan
/// v(s) = Σ s^i b_i for s = 0, 1, 2, …; each hyperplane excludes at most
/// dim(E) - 1 values of s, so the scan terminates within
/// (dim(E) - 1)·|A| + 1 steps.
fn find_regular_vector(group: &ReflectionGroup, basis: &[CycMatrix]) -> Option<CycMatrix> {
    let dim = basis.len();
    let bound = (dim.saturating_sub(1)) * group.num_hyperplanes() + 1;
    for s in 0..=bound as i64 {
        let mut v = basis[0].clone();
        let mut factor = Cyclotomic::one();
        let sc = Cyclotomic::from_integer(s);
        for b in &basis[1..] {
            factor = factor.mul(&sc);
            v = v.add(&b.scale(&factor));
        }
        let regular = group
            .hyperplanes()
            .iter()
            .all(|h| !covector_dot(&h.normal, &v).is_zero());
        if regular {
            return Some(v);
        }
    }
    None
}

fn covector_dot(row: &[Cyclotomic], v: &CycMatrix) -> Cyclotomic {
    let mut s = Cyclotomic::zero();
    for (i, c) in row.iter().enumerate() {
        if !c.is_zero() {
            let e = v.get(i, 0);
            if !e.is_zero() {
                s = s.add(&c.mul(e));
            }
        }
    }
    s
}

/// Per-orbit record of the division e_C·ω_C / d.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub d: u64,
    pub rows: Vec<(String, u64, u64)>,
}

/// Checks d | e_C·ω_C for every orbit; `d` must be a verified regular number.
pub fn check_regular_divisibility(group: &ReflectionGroup, d: u64) -> Result<DivisibilityReport> {
    let mut rows = Vec::new();
    for orbit in group.orbits() {
        let ew = orbit.ew();
        if ew % d != 0 {
            return Err(Error::DivisibilityViolation(format!(
                "regular number {d} does not divide e_C·ω_C = {ew} for orbit {}",
                orbit.label
            )));
        }
        rows.push((orbit.label.clone(), ew, ew / d));
    }
    Ok(DivisibilityReport { d, rows })
}
