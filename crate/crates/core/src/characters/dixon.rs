//! Exact character tables by the Dixon method: simultaneous eigenvectors of
//! the class-multiplication matrices over a splitting prime field, followed
//! by an exact lift to cyclotomic values via eigenvalue-multiplicity
//! recovery, and full orthogonality verification.

use crate::config::Caps;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::numtheory::{find_conductor_prime, inv_mod, pow_mod, primitive_root, Xorshift64};
use crate::rational::rat_from_i64;

use super::{verify_orthogonality, CharacterTable, ClassData};

/// Computes the exact irreducible character table and verifies both
/// orthogonality relations before returning.
pub fn character_table(
    group: &ReflectionGroup,
    classes: &ClassData,
    caps: &Caps,
    seed: u64,
) -> Result<CharacterTable> {
    let r = classes.len();
    if r > caps.max_classes {
        return Err(Error::ClassCapExceeded {
            cap: caps.max_classes,
            classes: r,
        });
    }
    let order = group.order() as u64;
    let exponent = group.exponent();
    // Splitting prime: p ≡ 1 mod exponent so all eigenvalues lie in F_p,
    // p > 2√|W| so degrees are recoverable, p ∤ |W| for semisimplicity.
    let lower = 2 * (order as f64).sqrt().ceil() as u64 + 1;
    let p = find_conductor_prime(exponent, lower.max(exponent), order);

    let class_matrices = class_multiplication_matrices(group, classes);
    let omegas = simultaneous_eigenvectors(&class_matrices, p, seed)?;

    // Normalize each eigenvector so its identity-class coordinate is 1, then
    // recover degrees and mod-p character values.
    let sizes: Vec<u64> = classes.classes.iter().map(|c| c.size as u64).collect();
    let mut rows_mod_p: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
    for mut omega in omegas {
        if omega[0] == 0 {
            return Err(Error::TableVerification(
                "eigenvector vanishes on the identity class".into(),
            ));
        }
        let scale = inv_mod(omega[0], p);
        for w in omega.iter_mut() {
            *w = *w * scale % p;
        }
        // χ(1)^2 = |W| / Σ_j ω_j ω_{j*} / |K_j|
        let mut denom = 0u64;
        for j in 0..r {
            let jstar = classes.inverse_class[j] as usize;
            denom = (denom + omega[j] * omega[jstar] % p * inv_mod(sizes[j] % p, p)) % p;
        }
        if denom == 0 {
            return Err(Error::TableVerification("degenerate norm sum".into()));
        }
        let deg_sq = order % p * inv_mod(denom, p) % p;
        let degree = sqrt_mod_small(deg_sq, p).ok_or_else(|| {
            Error::TableVerification(format!("degree^2 = {deg_sq} has no square root mod {p}"))
        })?;
        let values: Vec<u64> = (0..r)
            .map(|j| degree * omega[j] % p * inv_mod(sizes[j] % p, p) % p)
            .collect();
        rows_mod_p.push((degree, values));
    }

    // Lift each value to an exact cyclotomic via the eigenvalue
    // multiplicities of powers: χ(g) = Σ_t μ_t ζ_m^t with
    // μ_t = (1/m) Σ_k χ(g^k) ζ_m^{-tk} computed mod p.
    let z = primitive_root(p);
    let power_maps: Vec<Vec<usize>> = (0..r)
        .map(|j| {
            let m = group.order_of(classes.classes[j].rep) as u64;
            (0..m)
                .map(|k| classes.power_class(group, j, k as i64) as usize)
                .collect()
        })
        .collect();
    let mut lifted: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for (degree, values) in rows_mod_p {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            let m = group.order_of(classes.classes[j].rep) as u64;
            let zeta_p = pow_mod(z, (p - 1) / m, p);
            let zeta_p_inv = inv_mod(zeta_p, p);
            let inv_m = inv_mod(m % p, p);
            let mut value = Cyclotomic::zero();
            let mut total = 0u64;
            for t in 0..m {
                let mut s = 0u64;
                for k in 0..m {
                    let cj = power_maps[j][k as usize];
                    let w = pow_mod(zeta_p_inv, t * k % m, p);
                    s = (s + values[cj] * w) % p;
                }
                let mu = s * inv_m % p;
                if mu > degree {
                    return Err(Error::TableVerification(format!(
                        "eigenvalue multiplicity {mu} exceeds degree {degree} mod {p}"
                    )));
                }
                total += mu;
                if mu > 0 {
                    value = value.add(
                        &Cyclotomic::root_of_unity(m, t as i64).scale(&rat_from_i64(mu as i64)),
                    );
                }
            }
            if total != degree {
                return Err(Error::TableVerification(format!(
                    "eigenvalue multiplicities sum to {total}, expected {degree}"
                )));
            }
            row.push(value);
        }
        lifted.push((degree, row));
    }

    // Deterministic ordering: by degree, then by the value vector.
    lifted.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            for (x, y) in a.1.iter().zip(&b.1) {
                let c = x.cmp_key(y);
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let degrees: Vec<u64> = lifted.iter().map(|(d, _)| *d).collect();
    let values: Vec<Vec<Cyclotomic>> = lifted.into_iter().map(|(_, v)| v).collect();

    let trivial_index = values
        .iter()
        .position(|row| row.iter().all(|v| v.is_one()))
        .ok_or_else(|| Error::TableVerification("trivial character missing".into()))?;
    let det_values: Vec<Cyclotomic> = classes
        .classes
        .iter()
        .map(|c| group.element(c.rep).det())
        .collect();
    let det_index = values
        .iter()
        .position(|row| row == &det_values)
        .ok_or_else(|| Error::TableVerification("det character missing".into()))?;

    let table = CharacterTable {
        values,
        degrees,
        trivial_index,
        det_index,
    };
    verify_orthogonality(group, classes, &table)?;
    let sq: u64 = table.degrees.iter().map(|d| d * d).sum();
    if sq != order {
        return Err(Error::TableVerification(format!(
            "Σ χ(1)^2 = {sq} differs from |W| = {order}"
        )));
    }
    Ok(table)
}

/// a_{ijk} = #{(x,y) ∈ K_i × K_j : xy = z_k}; matrices[i][j][k] row-major.
fn class_multiplication_matrices(group: &ReflectionGroup, classes: &ClassData) -> Vec<Vec<u64>> {
    let r = classes.len();
    let mut matrices = vec![vec![0u64; r * r]; r];
    for i in 0..r {
        for (k, ck) in classes.classes.iter().enumerate() {
            let zk = ck.rep;
            for &x in &classes.classes[i].members {
                let y = group.mul(group.inv(x), zk);
                let j = classes.class_of[y as usize] as usize;
                matrices[i][j * r + k] += 1;
            }
        }
    }
    matrices
}

/// Splits F_p^r into the common one-dimensional eigenspaces of the commuting
/// class matrices. Sequential splitting by each matrix separates all
/// characters; seeded random combinations remain as a fallback.
fn simultaneous_eigenvectors(
    matrices: &[Vec<u64>],
    p: u64,
    seed: u64,
) -> Result<Vec<Vec<u64>>> {
    let r = matrices.len();
    let full: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut spaces = vec![full];
    for m in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        spaces = split_spaces(spaces, m, r, p);
    }
    // Fallback: seeded random integer combinations of the class matrices.
    let mut rng = Xorshift64::new(seed ^ 0x9e3779b97f4a7c15);
    let mut attempts = 0;
    while spaces.iter().any(|s| s.len() > 1) && attempts < 64 {
        let mut combo = vec![0u64; r * r];
        for m in matrices {
            let c = rng.next_u64() % p;
            for (t, v) in combo.iter_mut().zip(m) {
                *t = (*t + c * v) % p;
            }
        }
        spaces = split_spaces(spaces, &combo, r, p);
        attempts += 1;
    }
    if spaces.iter().any(|s| s.len() > 1) {
        return Err(Error::EigenvectorSeparation(attempts));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

fn split_spaces(
    spaces: Vec<Vec<Vec<u64>>>,
    m: &[u64],
    r: usize,
    p: u64,
) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::with_capacity(spaces.len());
    for basis in spaces {
        if basis.len() == 1 {
            out.push(basis);
            continue;
        }
        out.extend(split_one(&basis, m, r, p));
    }
    out
}

/// Splits an M-invariant subspace (given by a basis) into the eigenspaces of
/// M restricted to it.
fn split_one(basis: &[Vec<u64>], m: &[u64], r: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let s = basis.len();
    // images[c] = M · basis[c]
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|v| {
            (0..r)
                .map(|i| {
                    let mut acc = 0u64;
                    for (j, &vj) in v.iter().enumerate() {
                        if vj != 0 {
                            acc = (acc + m[i * r + j] % p * vj) % p;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // Restricted matrix A with basis · A = images, solved column by column.
    let a = solve_in_basis(basis, &images, r, s, p);
    let eigenvalues = eigenvalues_mod_p(&a, s, p);
    if eigenvalues.len() <= 1 {
        return vec![basis.to_vec()];
    }
    let mut out = Vec::new();
    for lam in eigenvalues {
        // Kernel of (A - λ) gives coordinates; map back through the basis.
        // Each eigenvalue contributes one (possibly still multidimensional)
        // subspace for later splits.
        let mut shifted = a.clone();
        for i in 0..s {
            shifted[i * s + i] = (shifted[i * s + i] + p - lam) % p;
        }
        let sub: Vec<Vec<u64>> = kernel_mod_p(&shifted, s, s, p)
            .into_iter()
            .map(|coords| {
                let mut v = vec![0u64; r];
                for (c, &w) in coords.iter().enumerate() {
                    if w != 0 {
                        for i in 0..r {
                            v[i] = (v[i] + w * basis[c][i]) % p;
                        }
                    }
                }
                v
            })
            .collect();
        if !sub.is_empty() {
            out.push(sub);
        }
    }
    out
}

/// Solves basis^T-combination coordinates: finds A (s×s) with
/// Σ_c basis[c] · A[c][k] = images[k].
fn solve_in_basis(basis: &[Vec<u64>], images: &[Vec<u64>], r: usize, s: usize, p: u64) -> Vec<u64> {
    // Augmented system: columns of basis as unknowns, one RHS per image.
    let mut aug = vec![0u64; r * (s + s)];
    for i in 0..r {
        for c in 0..s {
            aug[i * (2 * s) + c] = basis[c][i] % p;
        }
        for k in 0..s {
            aug[i * (2 * s) + s + k] = images[k][i] % p;
        }
    }
    // Gaussian elimination to reduced row echelon.
    let cols = 2 * s;
    let mut row = 0;
    let mut pivot_of_col = vec![usize::MAX; s];
    for col in 0..s {
        let Some(pr) = (row..r).find(|&i| aug[i * cols + col] != 0) else {
            continue;
        };
        for j in 0..cols {
            aug.swap(row * cols + j, pr * cols + j);
        }
        let inv = inv_mod(aug[row * cols + col], p);
        for j in 0..cols {
            aug[row * cols + j] = aug[row * cols + j] * inv % p;
        }
        for i in 0..r {
            if i != row && aug[i * cols + col] != 0 {
                let f = aug[i * cols + col];
                for j in 0..cols {
                    let t = aug[row * cols + j] * f % p;
                    aug[i * cols + j] = (aug[i * cols + j] + p - t) % p;
                }
            }
        }
        pivot_of_col[col] = row;
        row += 1;
    }
    let mut a = vec![0u64; s * s];
    for c in 0..s {
        let pr = pivot_of_col[c];
        debug_assert_ne!(pr, usize::MAX, "basis has full column rank");
        for k in 0..s {
            a[c * s + k] = aug[pr * cols + s + k];
        }
    }
    a
}

/// All eigenvalues in F_p of an s×s matrix (all of them lie in F_p by the
/// choice of splitting prime). Root-scan of the characteristic polynomial
/// when 1..s are invertible mod p; direct rank tests for tiny primes.
fn eigenvalues_mod_p(a: &[u64], s: usize, p: u64) -> Vec<u64> {
    if (s as u64) >= p {
        return (0..p)
            .filter(|&lam| {
                let mut shifted = a.to_vec();
                for i in 0..s {
                    shifted[i * s + i] = (shifted[i * s + i] + p - lam) % p;
                }
                !kernel_mod_p(&shifted, s, s, p).is_empty()
            })
            .collect();
    }
    let cp = charpoly_mod_p(a, s, p);
    let mut roots = Vec::new();
    for lam in 0..p {
        let mut acc = 0u64;
        for &c in cp.iter().rev() {
            acc = (acc * lam + c) % p;
        }
        if acc == 0 {
            roots.push(lam);
        }
    }
    roots
}

/// Characteristic polynomial mod p by the Faddeev-LeVerrier trace recurrence;
/// requires p > s so the divisions by 1..s are invertible.
fn charpoly_mod_p(a: &[u64], s: usize, p: u64) -> Vec<u64> {
    debug_assert!((s as u64) < p);
    let mut coeffs = vec![0u64; s + 1];
    coeffs[s] = 1;
    let mut mk = a.to_vec();
    for k in 1..=s {
        let mut tr = 0u64;
        for i in 0..s {
            tr = (tr + mk[i * s + i]) % p;
        }
        let ck = (p - tr % p) % p * inv_mod(k as u64 % p, p) % p;
        coeffs[s - k] = ck;
        if k < s {
            let mut adj = mk;
            for i in 0..s {
                adj[i * s + i] = (adj[i * s + i] + ck) % p;
            }
            let mut next = vec![0u64; s * s];
            for i in 0..s {
                for l in 0..s {
                    let v = a[i * s + l];
                    if v == 0 {
                        continue;
                    }
                    for j in 0..s {
                        next[i * s + j] = (next[i * s + j] + v * adj[l * s + j]) % p;
                    }
                }
            }
            mk = next;
        }
    }
    coeffs
}

/// Kernel basis of an m×n matrix over F_p.
fn kernel_mod_p(a: &[u64], m: usize, n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut mat = a.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..m).find(|&i| mat[i * n + col] != 0) else {
            continue;
        };
        for j in 0..n {
            mat.swap(row * n + j, pr * n + j);
        }
        let inv = inv_mod(mat[row * n + col], p);
        for j in 0..n {
            mat[row * n + j] = mat[row * n + j] * inv % p;
        }
        for i in 0..m {
            if i != row && mat[i * n + col] != 0 {
                let f = mat[i * n + col];
                for j in 0..n {
                    let t = mat[row * n + j] * f % p;
                    mat[i * n + j] = (mat[i * n + j] + p - t) % p;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..n {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[f] = 1;
        for &(pr, pc) in pivots.iter().rev() {
            let mut s = 0u64;
            for j in pc + 1..n {
                if mat[pr * n + j] != 0 && v[j] != 0 {
                    s = (s + mat[pr * n + j] * v[j]) % p;
                }
            }
            v[pc] = (p - s) % p;
        }
        basis.push(v);
    }
    basis
}

/// Square root of a quadratic residue in a small prime field; returns the
/// root below p/2 (the one that can be a character degree).
fn sqrt_mod_small(a: u64, p: u64) -> Option<u64> {
    (1..=(p - 1) / 2).find(|&x| x * x % p == a)
}
