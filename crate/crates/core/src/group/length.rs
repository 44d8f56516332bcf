//! Cayley-graph length statistics over the full reflection set.

use std::collections::VecDeque;

use super::ReflectionGroup;

/// BFS distances from the identity in the Cayley graph generated by R.
pub(super) fn bfs_reflection_lengths(group: &ReflectionGroup) -> Vec<u32> {
    let n = group.order();
    let mut dist = vec![u32::MAX; n];
    dist[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x as usize] + 1;
        for &t in group.reflections() {
            let y = group.mul(x, t);
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = d;
                queue.push_back(y);
            }
        }
    }
    debug_assert!(dist.iter().all(|&d| d != u32::MAX), "R generates W");
    dist
}

/// 0-1 BFS per orbit: edges by reflections cost 1 inside the orbit's
/// reflection set and 0 outside, giving n_C(g) for every g at once.
pub(super) fn zero_one_bfs_orbit_counts(group: &ReflectionGroup) -> Vec<Vec<u32>> {
    let n = group.order();
    group
        .orbits()
        .iter()
        .map(|orbit| {
            let in_orbit: Vec<bool> = {
                let mut v = vec![false; n];
                for &t in &orbit.reflection_set {
                    v[t as usize] = true;
                }
                v
            };
            let mut dist = vec![u32::MAX; n];
            dist[0] = 0;
            let mut deque = VecDeque::from([0u32]);
            while let Some(x) = deque.pop_front() {
                let dx = dist[x as usize];
                for &t in group.reflections() {
                    let w = u32::from(in_orbit[t as usize]);
                    let y = group.mul(x, t);
                    if dx + w < dist[y as usize] {
                        dist[y as usize] = dx + w;
                        if w == 0 {
                            deque.push_front(y);
                        } else {
                            deque.push_back(y);
                        }
                    }
                }
            }
            dist
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use crate::config::Caps;
    use crate::group::{build_group, GroupSpec};

    fn build(s: &str) -> crate::group::ReflectionGroup {
        build_group(&GroupSpec::parse(s).unwrap(), &Caps::default()).unwrap()
    }

    #[test]
    fn identity_and_reflection_lengths() {
        let g = build("S4");
        assert_eq!(g.reflection_length(g.identity()), 0);
        for &t in g.reflections() {
            assert_eq!(g.reflection_length(t), 1);
        }
    }

    #[test]
    fn long_cycle_length_in_s4() {
        let g = build("S4");
        // A Coxeter element (product of the three simple generators) is a
        // 4-cycle; its reflection length is n - 1 = 3.
        let gens = g.generators().to_vec();
        let mut c = g.identity();
        for s in gens {
            c = g.mul(c, s);
        }
        assert_eq!(g.order_of(c), 4);
        assert_eq!(g.reflection_length(c), 3);
    }

    #[test]
    fn min_orbit_counts_in_b2() {
        let g = build("B2");
        // -1 (the square of the Coxeter element) factors while avoiding
        // either orbit entirely: n_C(-1) = 0 for both orbits.
        let gens = g.generators().to_vec();
        let mut c = g.identity();
        for s in &gens {
            c = g.mul(c, *s);
        }
        assert_eq!(g.order_of(c), 4);
        let minus_one = g.mul(c, c);
        assert_eq!(g.order_of(minus_one), 2);
        for orbit in 0..g.orbits().len() {
            assert_eq!(g.min_orbit_count(minus_one, orbit), 0);
            assert_eq!(g.min_orbit_count(g.identity(), orbit), 0);
            // Derived by exhaustive search over factorizations of length <= 4:
            // the Coxeter element needs one reflection from each orbit.
            assert_eq!(g.min_orbit_count(c, orbit), 1);
        }
    }
}
