//! Complex reflection groups: enumeration, reflection/hyperplane structure,
//! degrees, regular elements, and Cayley-graph length statistics.

mod build;
mod degrees;
mod length;
mod regular;
pub mod spec;

pub use build::build_group;
pub use regular::{check_regular_divisibility, find_regular_elements, DivisibilityReport, RegularElementCert};
pub use spec::{GroupKind, GroupSpec};

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::matrix::CycMatrix;
use crate::numtheory::lcm;
use crate::rational::rat_from_i64;

/// A reflecting hyperplane: canonical normal covector (first nonzero entry 1),
/// its cyclic stabilizer data, and the orbit it belongs to.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vec<Cyclotomic>,
    pub stabilizer_order: u64,
    pub orbit: u32,
    /// Reflections fixing this hyperplane (the e_H - 1 nontrivial stabilizer
    /// elements), ascending element index.
    pub reflections: Vec<u32>,
    /// The distinguished reflection: the stabilizer generator with
    /// determinant exp(2πi/e_H).
    pub distinguished: u32,
}

/// A W-orbit of hyperplanes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub label: String,
    /// ω_C: number of hyperplanes in the orbit.
    pub size: u64,
    /// e_C: common stabilizer order.
    pub stabilizer_order: u64,
    pub hyperplanes: Vec<u32>,
    /// C^ref: all reflections whose hyperplane lies in this orbit.
    pub reflection_set: Vec<u32>,
}

impl OrbitRecord {
    /// e_C · ω_C
    pub fn ew(&self) -> u64 {
        self.stabilizer_order * self.size
    }
}

/// A fully enumerated reflection group. Immutable after construction; all
/// queries are read-only.
pub struct ReflectionGroup {
    pub spec: GroupSpec,
    rank: usize,
    elements: Vec<CycMatrix>,
    index: HashMap<CycMatrix, u32>,
    /// BFS decomposition: element i (i > 0) equals parent * generator.
    parent_gen: Vec<(u32, u32)>,
    generators: Vec<u32>,
    mult_table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    reflections: Vec<u32>,
    hyperplanes: Vec<Hyperplane>,
    /// Per element: hyperplane id when the element is a reflection.
    hyperplane_of: Vec<Option<u32>>,
    orbits: Vec<OrbitRecord>,
    degrees: Vec<u64>,
    reflection_lengths: OnceLock<Vec<u32>>,
    orbit_min_counts: OnceLock<Vec<Vec<u32>>>,
}

impl ReflectionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn element(&self, i: u32) -> &CycMatrix {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn element_index(&self, m: &CycMatrix) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn has_mult_table(&self) -> bool {
        self.mult_table.is_some()
    }

    /// Index of the product of two elements.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.mult_table {
            t[a as usize * self.elements.len() + b as usize]
        } else {
            let m = self.elements[a as usize].mul(&self.elements[b as usize]);
            *self.index.get(&m).expect("closure: product of members is a member")
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn order_of(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let o = self.orders[a as usize] as i64;
        let mut e = k.rem_euclid(o);
        let mut acc = self.identity();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        // g^{-1} x g
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn reflections(&self) -> &[u32] {
        &self.reflections
    }

    pub fn num_reflections(&self) -> usize {
        self.reflections.len()
    }

    pub fn is_reflection(&self, i: u32) -> bool {
        self.hyperplane_of[i as usize].is_some()
    }

    pub fn hyperplane_of(&self, i: u32) -> Option<u32> {
        self.hyperplane_of[i as usize]
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn orbits(&self) -> &[OrbitRecord] {
        &self.orbits
    }

    pub fn orbit_by_label(&self, label: &str) -> Option<&OrbitRecord> {
        self.orbits.iter().find(|o| o.label == label)
    }

    /// Fundamental degrees d_1 <= ... <= d_n.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Coxeter number h = (|R| + |A|)/n when it is a positive integer.
    pub fn coxeter_h(&self) -> Option<u64> {
        if self.rank == 0 {
            return None;
        }
        let total = (self.reflections.len() + self.hyperplanes.len()) as u64;
        if total % self.rank as u64 == 0 {
            Some(total / self.rank as u64)
        } else {
            None
        }
    }

    /// lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    /// Multiplicity test <χ_V, χ_V> = 1 for the defining representation.
    pub fn is_irreducible(&self) -> bool {
        if self.rank == 0 {
            return false;
        }
        let mut s = Cyclotomic::zero();
        for i in 0..self.elements.len() as u32 {
            let t = self.elements[i as usize].trace();
            let tinv = self.elements[self.inv(i) as usize].trace();
            s = s.add(&t.mul(&tinv));
        }
        s == Cyclotomic::from_rational(rat_from_i64(self.elements.len() as i64))
    }

    /// Partitions a conjugation-closed seed set into conjugacy classes via
    /// closure under conjugation by the generators. Seeds not closed under
    /// conjugation are closed up automatically.
    pub fn conjugacy_partition(&self, seeds: &[u32]) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.elements.len()];
        let mut classes = Vec::new();
        for &s in seeds {
            if seen[s as usize] {
                continue;
            }
            let mut members = vec![s];
            seen[s as usize] = true;
            let mut queue = vec![s];
            while let Some(x) = queue.pop() {
                for &g in &self.generators {
                    let y = self.conjugate(g, x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        members.push(y);
                        queue.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Reflection length of every element: BFS distance from the identity in
    /// the Cayley graph generated by all of R.
    pub fn reflection_lengths(&self) -> &[u32] {
        self.reflection_lengths
            .get_or_init(|| length::bfs_reflection_lengths(self))
    }

    /// l_R(g).
    pub fn reflection_length(&self, g: u32) -> u32 {
        self.reflection_lengths()[g as usize]
    }

    /// n_C(g) for every element, one vector per orbit.
    fn orbit_min_count_tables(&self) -> &[Vec<u32>] {
        self.orbit_min_counts
            .get_or_init(|| length::zero_one_bfs_orbit_counts(self))
    }

    /// Smallest number of orbit-C reflections appearing in any reflection
    /// factorization of g.
    pub fn min_orbit_count(&self, g: u32, orbit: usize) -> u32 {
        self.orbit_min_count_tables()[orbit][g as usize]
    }
}

impl std::fmt::Debug for ReflectionGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ReflectionGroup({} order={} rank={} |R|={} |A|={})",
            self.spec,
            self.order(),
            self.rank,
            self.reflections.len(),
            self.hyperplanes.len()
        )
    }
}

/// Serializable snapshot of a built group; derived lookup structures
/// (element index, multiplication table, length tables) are rebuilt on load.
#[derive(Serialize, Deserialize)]
pub struct RawGroupParts {
    pub spec: GroupSpec,
    pub rank: usize,
    pub elements: Vec<CycMatrix>,
    pub parent_gen: Vec<(u32, u32)>,
    pub generators: Vec<u32>,
    pub inverse: Vec<u32>,
    pub orders: Vec<u32>,
    pub reflections: Vec<u32>,
    pub hyperplanes: Vec<Hyperplane>,
    pub hyperplane_of: Vec<Option<u32>>,
    pub orbits: Vec<OrbitRecord>,
    pub degrees: Vec<u64>,
}

impl ReflectionGroup {
    pub fn to_raw(&self) -> RawGroupParts {
        RawGroupParts {
            spec: self.spec.clone(),
            rank: self.rank,
            elements: self.elements.clone(),
            parent_gen: self.parent_gen.clone(),
            generators: self.generators.clone(),
            inverse: self.inverse.clone(),
            orders: self.orders.clone(),
            reflections: self.reflections.clone(),
            hyperplanes: self.hyperplanes.clone(),
            hyperplane_of: self.hyperplane_of.clone(),
            orbits: self.orbits.clone(),
            degrees: self.degrees.clone(),
        }
    }

    pub fn from_raw(raw: RawGroupParts, caps: &crate::config::Caps) -> crate::error::Result<Self> {
        let n = raw.elements.len();
        if raw.parent_gen.len() != n
            || raw.inverse.len() != n
            || raw.orders.len() != n
            || raw.hyperplane_of.len() != n
        {
            return Err(crate::error::Error::Cache(
                "inconsistent cached group arrays".into(),
            ));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, m) in raw.elements.iter().enumerate() {
            if index.insert(m.clone(), i as u32).is_some() {
                return Err(crate::error::Error::Cache("duplicate cached element".into()));
            }
        }
        let mult_table = if n <= caps.mult_table_max {
            Some(build::rebuild_mult_table(
                &raw.elements,
                &index,
                &raw.parent_gen,
                &raw.generators,
            ))
        } else {
            None
        };
        Ok(ReflectionGroup {
            spec: raw.spec,
            rank: raw.rank,
            elements: raw.elements,
            index,
            parent_gen: raw.parent_gen,
            generators: raw.generators,
            mult_table,
            inverse: raw.inverse,
            orders: raw.orders,
            reflections: raw.reflections,
            hyperplanes: raw.hyperplanes,
            hyperplane_of: raw.hyperplane_of,
            orbits: raw.orbits,
            degrees: raw.degrees,
            reflection_lengths: OnceLock::new(),
            orbit_min_counts: OnceLock::new(),
        })
    }
}
