//! Independent brute-force oracles: dynamic programs over the Cayley graph
//! counting reflection factorizations, unweighted and per-orbit weighted.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;

fn check_cap(group: &ReflectionGroup, caps: &Caps) -> Result<()> {
    if group.order() > caps.dp_oracle_max {
        return Err(Error::OracleCapExceeded {
            order: group.order(),
            cap: caps.dp_oracle_max,
        });
    }
    Ok(())
}

/// N_l(x) for all x and all l <= lmax: N_0 = 1 at the identity,
/// N_k(x·t) += N_{k-1}(x) over all reflections t.
pub fn brute_force_counts_upto(
    group: &ReflectionGroup,
    caps: &Caps,
    lmax: usize,
) -> Result<Vec<Vec<BigInt>>> {
    check_cap(group, caps)?;
    let n = group.order();
    let mut layers = Vec::with_capacity(lmax + 1);
    let mut cur = vec![BigInt::zero(); n];
    cur[0] = BigInt::from(1);
    layers.push(cur.clone());
    for _ in 0..lmax {
        let mut next = vec![BigInt::zero(); n];
        for (x, count) in cur.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &t in group.reflections() {
                let y = group.mul(x as u32, t) as usize;
                next[y] += count;
            }
        }
        layers.push(next.clone());
        cur = next;
    }
    Ok(layers)
}

/// Number of length-l reflection factorizations of g by dynamic programming.
pub fn brute_force_count(
    group: &ReflectionGroup,
    caps: &Caps,
    g: u32,
    l: usize,
) -> Result<BigInt> {
    let layers = brute_force_counts_upto(group, caps, l)?;
    Ok(layers[l][g as usize].clone())
}

/// Weighted DP tracking how many factors came from each hyperplane orbit.
/// Returns, per length 0..=lmax and per element, the map from orbit-count
/// vectors to counts.
pub fn brute_force_weighted_upto(
    group: &ReflectionGroup,
    caps: &Caps,
    lmax: usize,
) -> Result<Vec<Vec<BTreeMap<Vec<u64>, BigInt>>>> {
    check_cap(group, caps)?;
    let n = group.order();
    let r = group.orbits().len();
    let orbit_of_reflection: Vec<usize> = {
        let mut v = vec![usize::MAX; n];
        for (oi, o) in group.orbits().iter().enumerate() {
            for &t in &o.reflection_set {
                v[t as usize] = oi;
            }
        }
        v
    };
    let mut layers: Vec<Vec<BTreeMap<Vec<u64>, BigInt>>> = Vec::with_capacity(lmax + 1);
    let mut cur: Vec<BTreeMap<Vec<u64>, BigInt>> = vec![BTreeMap::new(); n];
    cur[0].insert(vec![0; r], BigInt::from(1));
    layers.push(cur.clone());
    for _ in 0..lmax {
        let mut next: Vec<BTreeMap<Vec<u64>, BigInt>> = vec![BTreeMap::new(); n];
        for (x, counts) in cur.iter().enumerate() {
            for (key, count) in counts {
                for &t in group.reflections() {
                    let y = group.mul(x as u32, t) as usize;
                    let mut k = key.clone();
                    k[orbit_of_reflection[t as usize]] += 1;
                    *next[y].entry(k).or_insert_with(BigInt::zero) += count;
                }
            }
        }
        layers.push(next.clone());
        cur = next;
    }
    Ok(layers)
}

/// Mapping from orbit-count vectors to counts for factorizations of g of
/// length l.
pub fn brute_force_weighted(
    group: &ReflectionGroup,
    caps: &Caps,
    g: u32,
    l: usize,
) -> Result<BTreeMap<Vec<u64>, BigInt>> {
    let layers = brute_force_weighted_upto(group, caps, l)?;
    Ok(layers[l][g as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn build(s: &str) -> ReflectionGroup {
        build_group(&GroupSpec::parse(s).unwrap(), &Caps::default()).unwrap()
    }

    fn coxeter_element(g: &ReflectionGroup) -> u32 {
        let mut c = g.identity();
        for &s in g.generators() {
            c = g.mul(c, s);
        }
        c
    }

    #[test]
    fn s3_long_cycle_counts() {
        let g = build("S3");
        let caps = Caps::default();
        let cox = coxeter_element(&g);
        // Eq-oracle values: (3^l + (-3)^l)/6 at l = 4 gives 27; parity zero at 3.
        assert_eq!(brute_force_count(&g, &caps, cox, 4).unwrap(), BigInt::from(27));
        assert_eq!(brute_force_count(&g, &caps, cox, 3).unwrap(), BigInt::from(0));
        assert_eq!(brute_force_count(&g, &caps, cox, 2).unwrap(), BigInt::from(3));
    }

    #[test]
    fn b2_coxeter_pairs() {
        let g = build("B2");
        let caps = Caps::default();
        let cox = coxeter_element(&g);
        assert_eq!(g.order_of(cox), 4);
        assert_eq!(brute_force_count(&g, &caps, cox, 2).unwrap(), BigInt::from(4));
    }

    #[test]
    fn weighted_marginals_match_unweighted() {
        let g = build("B2");
        let caps = Caps::default();
        let cox = coxeter_element(&g);
        for l in 0..=4 {
            let weighted = brute_force_weighted(&g, &caps, cox, l).unwrap();
            let marginal: BigInt = weighted.values().sum();
            assert_eq!(marginal, brute_force_count(&g, &caps, cox, l).unwrap());
        }
        // At l = 2 the Coxeter element uses one reflection from each orbit.
        let w2 = brute_force_weighted(&g, &caps, cox, 2).unwrap();
        assert_eq!(w2.get(&vec![1, 1]), Some(&BigInt::from(4)));
        assert_eq!(w2.len(), 1);
    }

    #[test]
    fn weighted_identity_base_case() {
        let g = build("B2");
        let caps = Caps::default();
        let w0 = brute_force_weighted(&g, &caps, g.identity(), 0).unwrap();
        assert_eq!(w0.get(&vec![0, 0]), Some(&BigInt::from(1)));
        assert_eq!(w0.len(), 1);
    }

    #[test]
    fn oracle_cap_enforced() {
        let g = build("S5");
        let caps = Caps {
            dp_oracle_max: 100,
            ..Caps::default()
        };
        assert!(matches!(
            brute_force_count(&g, &caps, g.identity(), 2),
            Err(Error::OracleCapExceeded { .. })
        ));
    }
}
