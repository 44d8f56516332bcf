//! Exact matrices over cyclotomic fields: arithmetic, kernels, eigenspaces,
//! characteristic polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::poly::CycPoly;
use crate::rational::{rat_from_i64, Rational};

/// Row-major dense matrix with exact cyclotomic entries.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Cyclotomic>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        CycMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            entries: vec![Cyclotomic::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    /// Column vector from entries.
    pub fn column(entries: Vec<Cyclotomic>) -> Self {
        let rows = entries.len();
        CycMatrix {
            rows,
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn trace(&self) -> Cyclotomic {
        assert_eq!(self.rows, self.cols);
        let mut t = Cyclotomic::zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Basis of the right kernel as column vectors; empty for injective
    /// matrices. Fraction-free (Bareiss) elimination after clearing row
    /// denominators keeps intermediate entries integral.
    pub fn kernel(&self) -> Vec<CycMatrix> {
        let rows = self.rows;
        let cols = self.cols;
        if cols == 0 {
            return Vec::new();
        }
        let mut m: Vec<Vec<Cyclotomic>> = (0..rows)
            .map(|i| {
                let mut row: Vec<Cyclotomic> =
                    (0..cols).map(|j| self.get(i, j).clone()).collect();
                clear_row_denominators(&mut row);
                row
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev = Cyclotomic::one();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..rows {
                if m[i].iter().skip(c).all(|x| x.is_zero()) {
                    continue;
                }
                for j in c + 1..cols {
                    let t = m[r][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j]));
                    m[i][j] = t.div(&prev).expect("Bareiss pivot is nonzero");
                }
                m[i][c] = Cyclotomic::zero();
            }
            prev = m[r][c].clone();
            pivots.push((r, c));
            r += 1;
            if r == rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut v = vec![Cyclotomic::zero(); cols];
            v[f] = Cyclotomic::one();
            for &(pr, pc) in pivots.iter().rev() {
                let mut s = Cyclotomic::zero();
                for j in pc + 1..cols {
                    if !m[pr][j].is_zero() && !v[j].is_zero() {
                        s = s.add(&m[pr][j].mul(&v[j]));
                    }
                }
                v[pc] = s.neg().div(&m[pr][pc]).expect("pivot nonzero");
            }
            basis.push(CycMatrix::column(v));
        }
        basis
    }

    /// Basis of ker(M - λ·id).
    pub fn eigenspace(&self, lambda: &Cyclotomic) -> Vec<CycMatrix> {
        assert_eq!(self.rows, self.cols, "eigenspace needs a square matrix");
        let shifted = self.sub(&Self::identity(self.rows).scale(lambda));
        shifted.kernel()
    }

    /// Characteristic polynomial det(X·id - M) by the Faddeev-LeVerrier
    /// recurrence (exact; division only by integers).
    pub fn charpoly(&self) -> CycPoly {
        assert_eq!(self.rows, self.cols, "charpoly needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return CycPoly::one();
        }
        let mut coeffs = vec![Cyclotomic::zero(); n + 1];
        coeffs[n] = Cyclotomic::one();
        let mut mk = self.clone();
        for k in 1..=n {
            let ck = mk
                .trace()
                .scale(&(-Rational::from_integer(num_bigint::BigInt::from(1))))
                .scale(&rat_from_i64(k as i64).recip());
            coeffs[n - k] = ck.clone();
            if k < n {
                let mut adjusted = mk;
                for i in 0..n {
                    let cur = adjusted.get(i, i).add(&ck);
                    adjusted.set(i, i, cur);
                }
                mk = self.mul(&adjusted);
            }
        }
        CycPoly::new(coeffs)
    }

    /// Exact determinant via the constant term of the characteristic
    /// polynomial: det(M) = (-1)^n · charpoly(0).
    pub fn det(&self) -> Cyclotomic {
        let n = self.rows;
        let c0 = self.charpoly().coeff(0);
        if n % 2 == 0 {
            c0
        } else {
            c0.neg()
        }
    }

    /// M · v for a column vector v.
    pub fn mul_vec(&self, v: &CycMatrix) -> CycMatrix {
        self.mul(v)
    }

    /// Row covector times this matrix.
    pub fn row_vec_mul(row: &[Cyclotomic], m: &CycMatrix) -> Vec<Cyclotomic> {
        assert_eq!(row.len(), m.rows);
        (0..m.cols)
            .map(|j| {
                let mut s = Cyclotomic::zero();
                for (i, r) in row.iter().enumerate() {
                    if !r.is_zero() {
                        s = s.add(&r.mul(m.get(i, j)));
                    }
                }
                s
            })
            .collect()
    }
}

/// Scales a row so every cyclotomic coordinate has integer coefficients.
fn clear_row_denominators(row: &mut [Cyclotomic]) {
    use num_integer::Integer;
    let mut l = num_bigint::BigInt::from(1);
    for e in row.iter() {
        for c in e.coeffs() {
            l = l.lcm(c.denom());
        }
    }
    if l != num_bigint::BigInt::from(1) {
        let f = Rational::from_integer(l);
        for e in row.iter_mut() {
            *e = e.scale(&f);
        }
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycMatrix{}x{}{:?}", self.rows, self.cols, self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn zeta(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    fn mat(rows: usize, cols: usize, vals: Vec<i64>) -> CycMatrix {
        CycMatrix::new(rows, cols, vals.into_iter().map(int).collect())
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(CycMatrix::identity(2).kernel().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_full() {
        let basis = CycMatrix::zero(2, 2).kernel();
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn swap_fixed_vector() {
        // (t - id) for the permutation matrix of the swap: kernel = span{(1,1)}.
        let t = mat(2, 2, vec![0, 1, 1, 0]);
        let shifted = t.sub(&CycMatrix::identity(2));
        let basis = shifted.kernel();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        let prod = shifted.mul_vec(v);
        assert!(prod.entries().iter().all(|e| e.is_zero()));
        assert_eq!(v.get(0, 0), v.get(1, 0));
    }

    #[test]
    fn kernel_vectors_are_exact_and_rank_nullity_holds() {
        let m = mat(3, 4, vec![1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 1]);
        let basis = m.kernel();
        assert_eq!(basis.len(), 2); // rank 2, 4 columns
        for v in &basis {
            assert!(m.mul_vec(v).entries().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn eigenspace_of_rotation_by_ninety_degrees() {
        // Real 2x2 rotation matrix; ζ_4-eigenspace is 1-dimensional.
        // Hand oracle: (M - iI)v = 0 with M = [[0,-1],[1,0]] gives v ∝ (i, 1).
        let m = mat(2, 2, vec![0, -1, 1, 0]);
        let basis = m.eigenspace(&zeta(4, 1));
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        let mv = m.mul_vec(v);
        let iv = v.scale(&zeta(4, 1));
        assert_eq!(mv, iv);
    }

    #[test]
    fn eigenspace_trivial_cases() {
        assert_eq!(
            CycMatrix::identity(3).eigenspace(&Cyclotomic::one()).len(),
            3
        );
        let d = CycMatrix::new(
            2,
            2,
            vec![zeta(4, 1), int(0), int(0), int(1)],
        );
        let basis = d.eigenspace(&zeta(4, 1));
        assert_eq!(basis.len(), 1);
        assert!(basis[0].get(1, 0).is_zero());
    }

    #[test]
    fn charpoly_examples() {
        // identity 2x2 -> (X-1)^2 = X^2 - 2X + 1
        let p = CycMatrix::identity(2).charpoly();
        assert_eq!(p.coeffs(), &[int(1), int(-2), int(1)]);
        // diag(ζ3, ζ3^2) -> X^2 + X + 1
        let d = CycMatrix::new(2, 2, vec![zeta(3, 1), int(0), int(0), zeta(3, 2)]);
        assert_eq!(d.charpoly().coeffs(), &[int(1), int(1), int(1)]);
        // permutation matrix of a 3-cycle -> X^3 - 1
        let c = mat(3, 3, vec![0, 0, 1, 1, 0, 0, 0, 1, 0]);
        assert_eq!(c.charpoly().coeffs(), &[int(-1), int(0), int(0), int(1)]);
    }

    #[test]
    fn charpoly_vanishes_on_eigenvalues() {
        let d = CycMatrix::new(2, 2, vec![zeta(3, 1), int(0), int(0), zeta(3, 2)]);
        let p = d.charpoly();
        assert!(p.eval(&zeta(3, 1)).is_zero());
        assert!(p.eval(&zeta(3, 2)).is_zero());
    }

    #[test]
    fn det_of_reflection_is_nontrivial_root() {
        let t = CycMatrix::new(2, 2, vec![zeta(3, 1), int(0), int(0), int(1)]);
        assert_eq!(t.det(), zeta(3, 1));
        let swap = mat(2, 2, vec![0, 1, 1, 0]);
        assert_eq!(swap.det(), int(-1));
    }
}
