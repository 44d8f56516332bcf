//! Group enumeration by closure from standard generators, plus the
//! reflection/hyperplane/orbit classification.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use serde::Deserialize;

use crate::config::Caps;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;
use crate::rational::RationalJson;

use super::spec::{GroupKind, GroupSpec};
use super::{degrees, Hyperplane, OrbitRecord, ReflectionGroup};

/// Builds and fully enumerates the group described by `spec`.
pub fn build_group(spec: &GroupSpec, caps: &Caps) -> Result<ReflectionGroup> {
    let (rank, generators) = generator_matrices(spec)?;
    let (elements, index, parent_gen) = enumerate(rank, &generators, caps.max_order)?;
    let n = elements.len();

    let gen_indices: Vec<u32> = generators
        .iter()
        .map(|g| *index.get(g).expect("generator enumerated"))
        .collect();

    let mult_table = if n <= caps.mult_table_max {
        Some(build_mult_table(&elements, &index, &parent_gen, &gen_indices))
    } else {
        None
    };

    let mut group = ReflectionGroup {
        spec: spec.clone(),
        rank,
        elements,
        index,
        parent_gen,
        generators: gen_indices,
        mult_table,
        inverse: Vec::new(),
        orders: Vec::new(),
        reflections: Vec::new(),
        hyperplanes: Vec::new(),
        hyperplane_of: Vec::new(),
        orbits: Vec::new(),
        degrees: Vec::new(),
        reflection_lengths: OnceLock::new(),
        orbit_min_counts: OnceLock::new(),
    };
    let _ = &group.parent_gen; // retained for cache serialization

    fill_inverses(&mut group);
    fill_orders(&mut group);
    classify_reflections(&mut group)?;
    group.degrees = degrees::compute_degrees(&group)?;
    Ok(group)
}

/// Generator matrices for a spec; product specs get block-diagonal embeddings.
pub fn generator_matrices(spec: &GroupSpec) -> Result<(usize, Vec<CycMatrix>)> {
    let mut factor_gens = Vec::new();
    let mut ranks = Vec::new();
    for kind in &spec.factors {
        let (r, gens) = factor_generators(kind)?;
        ranks.push(r);
        factor_gens.push(gens);
    }
    let total: usize = ranks.iter().sum();
    if spec.factors.len() == 1 {
        return Ok((total, factor_gens.pop().unwrap()));
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for (r, gens) in ranks.iter().zip(factor_gens) {
        for g in gens {
            let mut m = CycMatrix::identity(total);
            for i in 0..*r {
                for j in 0..*r {
                    m.set(offset + i, offset + j, g.get(i, j).clone());
                }
            }
            out.push(m);
        }
        offset += r;
    }
    Ok((total, out))
}

fn factor_generators(kind: &GroupKind) -> Result<(usize, Vec<CycMatrix>)> {
    match kind {
        GroupKind::Symmetric(n) => Ok(symmetric_generators(*n as usize)),
        GroupKind::Grpn { r, p, n } => {
            if r % p != 0 {
                return Err(Error::InvalidSpec(format!(
                    "p does not divide r in G({r},{p},{n})"
                )));
            }
            Ok(grpn_generators(*r as u64, *p as u64, *n as usize))
        }
        GroupKind::External(path) => read_external_group(path),
    }
}

/// Simple reflections of S_n acting on the root space of A_{n-1}:
/// s_i sends α_i to -α_i and adds α_i to the adjacent simple roots.
fn symmetric_generators(n: usize) -> (usize, Vec<CycMatrix>) {
    let rank = n - 1;
    let mut gens = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut m = CycMatrix::identity(rank);
        m.set(i, i, Cyclotomic::from_integer(-1));
        if i > 0 {
            m.set(i, i - 1, Cyclotomic::one());
        }
        if i + 1 < rank {
            m.set(i, i + 1, Cyclotomic::one());
        }
        gens.push(m);
    }
    (rank, gens)
}

/// Standard monomial generators of G(r,p,n): adjacent transpositions, the
/// diagonal reflection diag(ζ_r^p, 1, …) when p < r, and the order-2
/// reflection x1 ↦ ζ_r x2, x2 ↦ ζ_r^{-1} x1 when p > 1.
fn grpn_generators(r: u64, p: u64, n: usize) -> (usize, Vec<CycMatrix>) {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut m = CycMatrix::identity(n);
        m.set(i, i, Cyclotomic::zero());
        m.set(i + 1, i + 1, Cyclotomic::zero());
        m.set(i, i + 1, Cyclotomic::one());
        m.set(i + 1, i, Cyclotomic::one());
        gens.push(m);
    }
    if p < r {
        let mut m = CycMatrix::identity(n);
        m.set(0, 0, Cyclotomic::root_of_unity(r, p as i64));
        gens.push(m);
    }
    if p > 1 && n >= 2 {
        let mut m = CycMatrix::identity(n);
        m.set(0, 0, Cyclotomic::zero());
        m.set(1, 1, Cyclotomic::zero());
        m.set(0, 1, Cyclotomic::root_of_unity(r, 1));
        m.set(1, 0, Cyclotomic::root_of_unity(r, -1));
        gens.push(m);
    }
    (n, gens)
}

#[derive(Deserialize)]
struct ExternalGroupFile {
    rank: usize,
    conductor: u64,
    generators: Vec<Vec<Vec<ExternalEntry>>>,
}

/// A matrix entry in an external group file: coefficient array on the power
/// basis of the file's conductor. Coefficients are `["num","den"]` string
/// pairs or bare integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum ExternalCoeff {
    Int(i64),
    Pair(RationalJson),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExternalEntry {
    Coeffs(Vec<ExternalCoeff>),
    Int(i64),
}

fn read_external_group(path: &str) -> Result<(usize, Vec<CycMatrix>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::NotReflectionGroup(format!("cannot read {path}: {e}")))?;
    let file: ExternalGroupFile = serde_json::from_str(&text)
        .map_err(|e| Error::NotReflectionGroup(format!("bad group file {path}: {e}")))?;
    if file.rank == 0 || file.conductor == 0 {
        return Err(Error::NotReflectionGroup(
            "rank and conductor must be positive".into(),
        ));
    }
    let mut gens = Vec::new();
    for (gi, rows) in file.generators.iter().enumerate() {
        if rows.len() != file.rank || rows.iter().any(|r| r.len() != file.rank) {
            return Err(Error::NotReflectionGroup(format!(
                "generator {gi} is not a {0}x{0} matrix",
                file.rank
            )));
        }
        let mut entries = Vec::with_capacity(file.rank * file.rank);
        for row in rows {
            for e in row {
                entries.push(parse_entry(e, file.conductor)?);
            }
        }
        gens.push(CycMatrix::new(file.rank, file.rank, entries));
    }
    if gens.is_empty() {
        return Err(Error::NotReflectionGroup("no generators given".into()));
    }
    // Every generator must be a reflection: fixed space of codimension 1.
    for (gi, g) in gens.iter().enumerate() {
        let fixed = g.sub(&CycMatrix::identity(file.rank)).kernel().len();
        if fixed != file.rank - 1 {
            return Err(Error::NotReflectionGroup(format!(
                "generator {gi} has fixed space of codimension {}, expected 1",
                file.rank - fixed
            )));
        }
    }
    Ok((file.rank, gens))
}

fn parse_entry(e: &ExternalEntry, conductor: u64) -> Result<Cyclotomic> {
    match e {
        ExternalEntry::Int(n) => Ok(Cyclotomic::from_integer(*n)),
        ExternalEntry::Coeffs(cs) => {
            let coeffs: Vec<_> = cs
                .iter()
                .map(|c| match c {
                    ExternalCoeff::Int(n) => crate::rational::rat_from_i64(*n),
                    ExternalCoeff::Pair(r) => r.0.clone(),
                })
                .collect();
            Ok(Cyclotomic::from_coeffs_reduced(conductor, coeffs))
        }
    }
}

type Enumeration = (Vec<CycMatrix>, HashMap<CycMatrix, u32>, Vec<(u32, u32)>);

/// BFS closure from the generators; deterministic element indexing.
fn enumerate(rank: usize, generators: &[CycMatrix], cap: usize) -> Result<Enumeration> {
    let identity = CycMatrix::identity(rank);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0u32);
    let mut parent_gen = vec![(0u32, u32::MAX)];
    let mut queue = VecDeque::from([0u32]);
    while let Some(cur) = queue.pop_front() {
        for (gi, g) in generators.iter().enumerate() {
            let prod = elements[cur as usize].mul(g);
            if !index.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded {
                        cap,
                        reached: elements.len() + 1,
                    });
                }
                let id = elements.len() as u32;
                index.insert(prod.clone(), id);
                elements.push(prod);
                parent_gen.push((cur, gi as u32));
                queue.push_back(id);
            }
        }
    }
    Ok((elements, index, parent_gen))
}

/// Rebuilds the multiplication table for a deserialized group.
pub(super) fn rebuild_mult_table(
    elements: &[CycMatrix],
    index: &HashMap<CycMatrix, u32>,
    parent_gen: &[(u32, u32)],
    gen_indices: &[u32],
) -> Vec<u32> {
    build_mult_table(elements, index, parent_gen, gen_indices)
}

/// Dense multiplication table. Generator rows are computed by matrix
/// products; every other row composes its parent's row with a generator row.
fn build_mult_table(
    elements: &[CycMatrix],
    index: &HashMap<CycMatrix, u32>,
    parent_gen: &[(u32, u32)],
    gen_indices: &[u32],
) -> Vec<u32> {
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    // identity row
    for h in 0..n {
        table[h] = h as u32;
    }
    let mut gen_rows: Vec<Vec<u32>> = Vec::with_capacity(gen_indices.len());
    for &g in gen_indices {
        let row: Vec<u32> = (0..n)
            .map(|h| {
                let prod = elements[g as usize].mul(&elements[h]);
                *index.get(&prod).expect("closure")
            })
            .collect();
        gen_rows.push(row);
    }
    for i in 1..n {
        let (p, gi) = parent_gen[i];
        debug_assert!((p as usize) < i);
        let gen_row = &gen_rows[gi as usize];
        // row(i)[h] = row(p)[gen_row[h]] since i = p * g.
        let (earlier, current) = table.split_at_mut(i * n);
        let parent_row = &earlier[p as usize * n..(p as usize + 1) * n];
        for h in 0..n {
            current[h] = parent_row[gen_row[h] as usize];
        }
    }
    table
}

fn fill_inverses(group: &mut ReflectionGroup) {
    let n = group.elements.len();
    let mut inverse = vec![u32::MAX; n];
    inverse[0] = 0;
    // Generator inverses by powering.
    let mut gen_inv: Vec<u32> = Vec::with_capacity(group.generators.len());
    for &g in &group.generators {
        let mut prev = g;
        let mut cur = group.mul_raw(g, g);
        while cur != 0 {
            prev = cur;
            cur = group.mul_raw(cur, g);
        }
        gen_inv.push(prev);
    }
    for i in 1..n {
        let (p, gi) = group.parent_gen[i];
        // (p·g)^{-1} = g^{-1} · p^{-1}; parents precede children in BFS order.
        let pinv = inverse[p as usize];
        debug_assert_ne!(pinv, u32::MAX);
        inverse[i] = group.mul_raw(gen_inv[gi as usize], pinv);
    }
    group.inverse = inverse;
}

fn fill_orders(group: &mut ReflectionGroup) {
    let n = group.elements.len();
    let mut orders = vec![0u32; n];
    orders[0] = 1;
    for i in 1..n as u32 {
        let mut k = 1u32;
        let mut cur = i;
        while cur != 0 {
            cur = group.mul_raw(cur, i);
            k += 1;
        }
        orders[i as usize] = k;
    }
    group.orders = orders;
}

impl ReflectionGroup {
    /// Multiplication valid during construction (before all fields are set).
    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.mult_table {
            t[a as usize * self.elements.len() + b as usize]
        } else {
            let m = self.elements[a as usize].mul(&self.elements[b as usize]);
            *self.index.get(&m).expect("closure")
        }
    }
}

/// Finds all reflections, groups them into hyperplanes with canonical
/// normals, and partitions the hyperplanes into W-orbits.
fn classify_reflections(group: &mut ReflectionGroup) -> Result<()> {
    let n = group.elements.len();
    let rank = group.rank;
    let mut hyperplane_of = vec![None; n];
    let mut reflections = Vec::new();
    let mut normal_index: HashMap<Vec<Cyclotomic>, u32> = HashMap::new();
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();

    for i in 1..n as u32 {
        let m = &group.elements[i as usize];
        let shifted = m.sub(&CycMatrix::identity(rank));
        // A reflection has fixed space of codimension exactly 1.
        let kernel_dim = shifted.kernel().len();
        if kernel_dim != rank.saturating_sub(1) || rank == 0 {
            continue;
        }
        let normal = canonical_normal(&shifted, rank).ok_or_else(|| {
            Error::NotReflectionGroup(format!("element {i} has no normal covector"))
        })?;
        let hid = match normal_index.get(&normal) {
            Some(&h) => h,
            None => {
                let h = hyperplanes.len() as u32;
                normal_index.insert(normal.clone(), h);
                hyperplanes.push(Hyperplane {
                    normal,
                    stabilizer_order: 1,
                    orbit: 0,
                    reflections: Vec::new(),
                    distinguished: 0,
                });
                h
            }
        };
        hyperplanes[hid as usize].reflections.push(i);
        hyperplane_of[i as usize] = Some(hid);
        reflections.push(i);
    }

    // Stabilizer orders and distinguished generators (det = ζ_{e_H} exactly).
    for h in hyperplanes.iter_mut() {
        let e = h.reflections.len() as u64 + 1;
        h.stabilizer_order = e;
        let target = Cyclotomic::root_of_unity(e, 1);
        let mut found = None;
        for &t in &h.reflections {
            if group.elements[t as usize].det() == target {
                found = Some(t);
                break;
            }
        }
        h.distinguished = found.ok_or_else(|| {
            Error::NotReflectionGroup(format!(
                "hyperplane stabilizer of order {e} has no distinguished generator"
            ))
        })?;
    }

    // Orbits of the W-action H ↦ g·H, i.e. normal β ↦ β·g^{-1}.
    let mut orbit_of = vec![u32::MAX; hyperplanes.len()];
    let mut orbits: Vec<OrbitRecord> = Vec::new();
    for start in 0..hyperplanes.len() as u32 {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let oid = orbits.len() as u32;
        let mut members = vec![start];
        orbit_of[start as usize] = oid;
        let mut queue = vec![start];
        while let Some(h) = queue.pop() {
            for &g in &group.generators {
                let ginv = &group.elements[group.inverse[g as usize] as usize];
                let moved = CycMatrix::row_vec_mul(&hyperplanes[h as usize].normal, ginv);
                let moved = canonicalize_covector(moved)
                    .expect("image of a hyperplane normal is nonzero");
                let target = *normal_index
                    .get(&moved)
                    .expect("group permutes its hyperplanes");
                if orbit_of[target as usize] == u32::MAX {
                    orbit_of[target as usize] = oid;
                    members.push(target);
                    queue.push(target);
                }
            }
        }
        members.sort_unstable();
        let e = hyperplanes[members[0] as usize].stabilizer_order;
        if members
            .iter()
            .any(|&h| hyperplanes[h as usize].stabilizer_order != e)
        {
            return Err(Error::NotReflectionGroup(
                "conjugate hyperplanes with different stabilizer orders".into(),
            ));
        }
        let mut reflection_set: Vec<u32> = members
            .iter()
            .flat_map(|&h| hyperplanes[h as usize].reflections.iter().copied())
            .collect();
        reflection_set.sort_unstable();
        orbits.push(OrbitRecord {
            label: format!("C{}", oid + 1),
            size: members.len() as u64,
            stabilizer_order: e,
            hyperplanes: members,
            reflection_set,
        });
    }
    for (h, &o) in orbit_of.iter().enumerate() {
        hyperplanes[h].orbit = o;
    }

    group.reflections = reflections;
    group.hyperplanes = hyperplanes;
    group.hyperplane_of = hyperplane_of;
    group.orbits = orbits;
    Ok(())
}

/// The normal covector of a reflection t: any nonzero row of (t - id),
/// scaled so its first nonzero entry is 1.
fn canonical_normal(shifted: &CycMatrix, rank: usize) -> Option<Vec<Cyclotomic>> {
    for i in 0..rank {
        let row: Vec<Cyclotomic> = (0..rank).map(|j| shifted.get(i, j).clone()).collect();
        if row.iter().any(|c| !c.is_zero()) {
            return canonicalize_covector(row);
        }
    }
    None
}

fn canonicalize_covector(mut row: Vec<Cyclotomic>) -> Option<Vec<Cyclotomic>> {
    let lead = row.iter().position(|c| !c.is_zero())?;
    let inv = row[lead].inv().expect("leading entry nonzero");
    for c in row.iter_mut() {
        *c = c.mul(&inv);
    }
    Some(row)
}
