//! Conjugacy classes, exact irreducible character tables, class-sum
//! evaluations, and reflection eigenvalue multiplicities.

mod dixon;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::rational::rat_from_i64;

pub use dixon::character_table;

/// One conjugacy class: representative (minimal element index), size, and the
/// sorted member set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassRecord {
    pub rep: u32,
    pub size: usize,
    pub members: Vec<u32>,
}

/// Conjugacy class data for a group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassData {
    pub classes: Vec<ClassRecord>,
    /// Element index -> class index.
    pub class_of: Vec<u32>,
    /// Class index -> class index of inverses.
    pub inverse_class: Vec<u32>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of g^k for the representative g of a class.
    pub fn power_class(&self, group: &ReflectionGroup, class: usize, k: i64) -> u32 {
        let rep = self.classes[class].rep;
        self.class_of[group.pow(rep, k) as usize]
    }
}

/// Orbit partition of the whole group under conjugation by generators.
pub fn conjugacy_classes(group: &ReflectionGroup) -> ClassData {
    let all: Vec<u32> = (0..group.order() as u32).collect();
    let partition = group.conjugacy_partition(&all);
    let mut classes: Vec<ClassRecord> = partition
        .into_iter()
        .map(|members| ClassRecord {
            rep: members[0],
            size: members.len(),
            members,
        })
        .collect();
    classes.sort_by_key(|c| c.rep);
    let mut class_of = vec![0u32; group.order()];
    for (ci, c) in classes.iter().enumerate() {
        for &m in &c.members {
            class_of[m as usize] = ci as u32;
        }
    }
    let inverse_class: Vec<u32> = classes
        .iter()
        .map(|c| class_of[group.inv(c.rep) as usize])
        .collect();
    ClassData {
        classes,
        class_of,
        inverse_class,
    }
}

/// Exact irreducible character table. Rows are sorted by (degree, value
/// vector); columns follow the `ClassData` ordering.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    /// values[character][class]
    pub values: Vec<Vec<Cyclotomic>>,
    /// χ(1) per character.
    pub degrees: Vec<u64>,
    pub trivial_index: usize,
    pub det_index: usize,
}

impl CharacterTable {
    pub fn num_characters(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][class]
    }

    /// χ(g^{-1}) via the inverse-class indirection.
    pub fn value_at_inverse(&self, classes: &ClassData, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][classes.inverse_class[class] as usize]
    }
}

/// χ(S) = Σ_{s∈S} χ(s) for a conjugation-closed element set, computed
/// class-wise. Errors when S is not a union of classes.
pub fn class_set_value(
    table: &CharacterTable,
    classes: &ClassData,
    chi: usize,
    set: &[u32],
) -> Result<Cyclotomic> {
    let mut counts = vec![0usize; classes.len()];
    for &s in set {
        counts[classes.class_of[s as usize] as usize] += 1;
    }
    let mut total = Cyclotomic::zero();
    for (ci, &count) in counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        if count != classes.classes[ci].size {
            return Err(Error::NotConjugationClosed);
        }
        total = total.add(
            &table.values[chi][ci].scale(&rat_from_i64(count as i64)),
        );
    }
    Ok(total)
}

/// Per-orbit eigenvalue multiplicities m_{C,j} of the distinguished
/// reflections in the representation affording χ.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigMultiplicities {
    /// per_orbit[orbit][j] = m_{C,j}, 0 <= j < e_C.
    pub per_orbit: Vec<Vec<u64>>,
}

/// Computes m_{C,j} by inverse discrete Fourier transform over the cyclic
/// stabilizer: m_{C,j} = (1/e_C) Σ_k ζ_{e_C}^{-jk} χ(t_H^k) for the
/// distinguished generator t_H of any hyperplane in C.
pub fn eig_multiplicities(
    group: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
    chi: usize,
) -> Result<EigMultiplicities> {
    let mut per_orbit = Vec::with_capacity(group.orbits().len());
    for orbit in group.orbits() {
        let h = &group.hyperplanes()[orbit.hyperplanes[0] as usize];
        let e = h.stabilizer_order;
        let t = h.distinguished;
        // χ(t^k) for k = 0..e-1.
        let chi_powers: Vec<Cyclotomic> = (0..e)
            .map(|k| {
                let ci = classes.class_of[group.pow(t, k as i64) as usize];
                table.values[chi][ci as usize].clone()
            })
            .collect();
        let inv_e = rat_from_i64(e as i64).recip();
        let mut ms = Vec::with_capacity(e as usize);
        for j in 0..e {
            let mut s = Cyclotomic::zero();
            for (k, v) in chi_powers.iter().enumerate() {
                let w = Cyclotomic::root_of_unity(e, -(j as i64) * k as i64);
                s = s.add(&w.mul(v));
            }
            let m = s.scale(&inv_e);
            let m = m.to_bigint().map_err(|_| {
                Error::IntegralityViolation(format!(
                    "m_{{C,{j}}} = {m} is not an integer for character {chi} on orbit {}",
                    orbit.label
                ))
            })?;
            if m < BigInt::zero() {
                return Err(Error::IntegralityViolation(format!(
                    "negative multiplicity m_{{C,{j}}} = {m}"
                )));
            }
            let (_, digits) = m.to_u64_digits();
            ms.push(if digits.is_empty() { 0 } else { digits[0] });
        }
        let total: u64 = ms.iter().sum();
        if total != table.degrees[chi] {
            return Err(Error::IntegralityViolation(format!(
                "multiplicities sum to {total}, expected degree {}",
                table.degrees[chi]
            )));
        }
        per_orbit.push(ms);
    }
    Ok(EigMultiplicities { per_orbit })
}

/// Exact verification of both orthogonality relations.
pub fn verify_orthogonality(
    group: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
) -> Result<()> {
    let r = classes.len();
    let order = Cyclotomic::from_integer(group.order() as i64);
    for a in 0..r {
        for b in 0..r {
            let mut s = Cyclotomic::zero();
            for (ci, class) in classes.classes.iter().enumerate() {
                let x = &table.values[a][ci];
                let y = table.value_at_inverse(classes, b, ci);
                if !x.is_zero() && !y.is_zero() {
                    s = s.add(&x.mul(y).scale(&rat_from_i64(class.size as i64)));
                }
            }
            let expected = if a == b { order.clone() } else { Cyclotomic::zero() };
            if s != expected {
                return Err(Error::TableVerification(format!(
                    "row orthogonality fails for characters {a}, {b}: got {s}"
                )));
            }
        }
    }
    for j in 0..r {
        for k in 0..r {
            let mut s = Cyclotomic::zero();
            for chi in 0..r {
                let x = &table.values[chi][j];
                let y = table.value_at_inverse(classes, chi, k);
                if !x.is_zero() && !y.is_zero() {
                    s = s.add(&x.mul(y));
                }
            }
            let expected = if j == k {
                Cyclotomic::from_integer((group.order() / classes.classes[j].size) as i64)
            } else {
                Cyclotomic::zero()
            };
            if s != expected {
                return Err(Error::TableVerification(format!(
                    "column orthogonality fails for classes {j}, {k}: got {s}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::group::{build_group, GroupSpec};

    fn setup(s: &str) -> (ReflectionGroup, ClassData, CharacterTable) {
        let g = build_group(&GroupSpec::parse(s).unwrap(), &Caps::default()).unwrap();
        let classes = conjugacy_classes(&g);
        let table = character_table(&g, &classes, &Caps::default(), 0).unwrap();
        (g, classes, table)
    }

    #[test]
    fn s3_classes_and_degrees() {
        let (_, classes, table) = setup("S3");
        let mut sizes: Vec<usize> = classes.classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(table.degrees, vec![1, 1, 2]);
    }

    #[test]
    fn b2_classes_and_degrees() {
        let (_, classes, table) = setup("B2");
        assert_eq!(classes.len(), 5);
        assert_eq!(table.degrees, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn s4_classes_and_degrees() {
        let (_, classes, table) = setup("S4");
        let mut sizes: Vec<usize> = classes.classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(table.degrees, vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn class_structure_invariants() {
        for s in ["S4", "B2", "G(3,1,2)"] {
            let g = build_group(&GroupSpec::parse(s).unwrap(), &Caps::default()).unwrap();
            let classes = conjugacy_classes(&g);
            let total: usize = classes.classes.iter().map(|c| c.size).sum();
            assert_eq!(total, g.order());
            assert_eq!(classes.classes[0].size, 1);
            assert_eq!(classes.classes[0].rep, g.identity());
            for (ci, &ic) in classes.inverse_class.iter().enumerate() {
                assert_eq!(classes.inverse_class[ic as usize], ci as u32);
            }
        }
    }

    #[test]
    fn orthogonality_verified() {
        for s in ["S3", "S4", "B2", "G(3,1,2)", "I2(5)"] {
            let g = build_group(&GroupSpec::parse(s).unwrap(), &Caps::default()).unwrap();
            let classes = conjugacy_classes(&g);
            let table = character_table(&g, &classes, &Caps::default(), 0).unwrap();
            verify_orthogonality(&g, &classes, &table).unwrap();
            let sq: u64 = table.degrees.iter().map(|d| d * d).sum();
            assert_eq!(sq, g.order() as u64);
            for &d in &table.degrees {
                assert_eq!(g.order() as u64 % d, 0);
            }
        }
    }

    #[test]
    fn class_set_values_on_reflections() {
        let (g, classes, table) = setup("S3");
        let refl = g.reflections().to_vec();
        // Trivial character: χ(R) = |R|.
        let v = class_set_value(&table, &classes, table.trivial_index, &refl).unwrap();
        assert_eq!(v, Cyclotomic::from_integer(3));
        // det character: χ(R) = -|A| = -3 in S_3.
        let v = class_set_value(&table, &classes, table.det_index, &refl).unwrap();
        assert_eq!(v, Cyclotomic::from_integer(-3));
        // Reflection character (2-dim): transpositions have trace 0.
        let two_dim = table.degrees.iter().position(|&d| d == 2).unwrap();
        let v = class_set_value(&table, &classes, two_dim, &refl).unwrap();
        assert!(v.is_zero());
        // Non-closed set rejected.
        let bad = vec![refl[0]];
        assert!(matches!(
            class_set_value(&table, &classes, 0, &bad),
            Err(Error::NotConjugationClosed)
        ));
    }

    #[test]
    fn eig_multiplicities_examples() {
        let (g, classes, table) = setup("S3");
        // Trivial character: m_{C,0} = 1.
        let m = eig_multiplicities(&g, &classes, &table, table.trivial_index).unwrap();
        assert_eq!(m.per_orbit, vec![vec![1, 0]]);
        // det: eigenvalue -1, so m_{C,1} = 1.
        let m = eig_multiplicities(&g, &classes, &table, table.det_index).unwrap();
        assert_eq!(m.per_orbit, vec![vec![0, 1]]);
        // Reflection character: eigenvalues {1, -1} on a transposition.
        let two_dim = table.degrees.iter().position(|&d| d == 2).unwrap();
        let m = eig_multiplicities(&g, &classes, &table, two_dim).unwrap();
        assert_eq!(m.per_orbit, vec![vec![1, 1]]);
    }

    #[test]
    fn fourier_inversion_round_trip() {
        let (g, classes, table) = setup("G(3,1,2)");
        for chi in 0..table.num_characters() {
            let m = eig_multiplicities(&g, &classes, &table, chi).unwrap();
            for (oi, orbit) in g.orbits().iter().enumerate() {
                let h = &g.hyperplanes()[orbit.hyperplanes[0] as usize];
                let e = h.stabilizer_order;
                for k in 0..e {
                    let mut expected = Cyclotomic::zero();
                    for (j, &mj) in m.per_orbit[oi].iter().enumerate() {
                        let w = Cyclotomic::root_of_unity(e, (j as i64) * k as i64);
                        expected = expected.add(&w.scale(&rat_from_i64(mj as i64)));
                    }
                    let ci = classes.class_of[g.pow(h.distinguished, k as i64) as usize];
                    assert_eq!(table.values[chi][ci as usize], expected);
                }
            }
        }
    }
}
