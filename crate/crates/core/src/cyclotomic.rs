//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! A value is stored as coordinates on the power basis ζ_N^0, …, ζ_N^{φ(N)-1},
//! reduced modulo the N-th cyclotomic polynomial. The stored conductor is
//! always minimal for the value (and never ≡ 2 mod 4, since Q(ζ_{2m}) = Q(ζ_m)
//! for odd m), so equality and hashing are plain coefficient comparisons.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi, lcm, prime_factors};
use crate::rational::{rat_from_i64, Rational, RationalJson};

/// Dense integer polynomial, ascending degree. Used only for Φ_N.
fn cyclotomic_poly_cache() -> &'static Mutex<HashMap<u64, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the N-th cyclotomic polynomial Φ_N, ascending, monic.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(hit) = cyclotomic_poly_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    // Φ_N = (x^N - 1) / Π_{d | N, d < N} Φ_d, computed by exact division.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = int_poly_div_exact(&num, &phi_d);
    }
    cyclotomic_poly_cache().lock().unwrap().insert(n, num.clone());
    num
}

/// Exact division of integer polynomials (divisor monic), ascending coeffs.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// Reduce a rational polynomial (ascending, any degree) modulo Φ_N, returning
/// exactly φ(N) coordinates.
fn reduce_mod_phi(mut coeffs: Vec<Rational>, n: u64) -> Vec<Rational> {
    let phi_n = euler_phi(n) as usize;
    let phi_poly = cyclotomic_polynomial(n);
    let deg = phi_poly.len() - 1;
    debug_assert_eq!(deg, phi_n);
    while coeffs.len() > deg {
        let top = coeffs.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = coeffs.len() - deg;
        for (i, c) in phi_poly.iter().take(deg).enumerate() {
            if !c.is_zero() {
                let t = &top * Rational::from_integer(c.clone());
                coeffs[shift + i] -= t;
            }
        }
    }
    coeffs.resize(phi_n, Rational::zero());
    coeffs
}

/// Basis-change matrices ζ_d^j -> coordinates in Q(ζ_n), cached per (d, n).
fn embedding_cache() -> &'static Mutex<HashMap<(u64, u64), Vec<Vec<Rational>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Vec<Vec<Rational>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Column j = coordinates of ζ_d^j in the conductor-n power basis (d | n).
fn embedding_columns(d: u64, n: u64) -> Vec<Vec<Rational>> {
    debug_assert_eq!(n % d, 0);
    if let Some(hit) = embedding_cache().lock().unwrap().get(&(d, n)) {
        return hit.clone();
    }
    let phi_d = euler_phi(d) as usize;
    let step = (n / d) as usize;
    let mut cols = Vec::with_capacity(phi_d);
    for j in 0..phi_d {
        let mut poly = vec![Rational::zero(); j * step + 1];
        poly[j * step] = Rational::one();
        cols.push(reduce_mod_phi(poly, n));
    }
    embedding_cache()
        .lock()
        .unwrap()
        .insert((d, n), cols.clone());
    cols
}

/// An exact element of a cyclotomic field.
///
/// Invariants: `coeffs.len() == φ(conductor)`, the conductor is minimal for
/// the value, and a rational value always has conductor 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat_from_i64(n))
    }

    /// ζ_N^k in canonical form.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let k = k.rem_euclid(n as i64) as u64;
        let mut poly = vec![Rational::zero(); k as usize + 1];
        poly[k as usize] = Rational::one();
        Self::from_coeffs_reduced(n, poly)
    }

    /// Builds a value from raw polynomial coordinates in Q(ζ_n) (any degree),
    /// reducing modulo Φ_n and minimizing the conductor.
    pub fn from_coeffs_reduced(n: u64, poly: Vec<Rational>) -> Self {
        let coeffs = reduce_mod_phi(poly, n);
        let v = Cyclotomic { conductor: n, coeffs };
        v.minimized()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// Exact rational value, or an `Irrational` error.
    pub fn to_rational(&self) -> Result<Rational> {
        if self.conductor == 1 {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::Irrational(self.to_string()))
        }
    }

    /// Exact integer value, or an integrality error.
    pub fn to_bigint(&self) -> Result<BigInt> {
        let r = self.to_rational()?;
        crate::rational::rat_to_bigint(&r)
    }

    /// Coordinates of the value re-expressed in the (possibly larger)
    /// conductor-n power basis.
    pub fn coords_in(&self, n: u64) -> Vec<Rational> {
        debug_assert_eq!(n % self.conductor, 0);
        if n == self.conductor {
            return self.coeffs.clone();
        }
        let cols = embedding_columns(self.conductor, n);
        let phi_n = euler_phi(n) as usize;
        let mut out = vec![Rational::zero(); phi_n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, e) in cols[j].iter().enumerate() {
                if !e.is_zero() {
                    out[i] += c * e;
                }
            }
        }
        out
    }

    /// Canonicalizes the conductor: strips the factor 2 when ≡ 2 mod 4 and
    /// descends to any proper subfield Q(ζ_d) containing the value.
    fn minimized(self) -> Self {
        let mut cur = self;
        if cur.coeffs.iter().all(|c| c.is_zero()) {
            return Cyclotomic::zero();
        }
        if cur.conductor > 1 && cur.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            return Cyclotomic::from_rational(cur.coeffs.into_iter().next().unwrap());
        }
        loop {
            let n = cur.conductor;
            if n == 1 {
                return cur;
            }
            let mut descended = false;
            for p in prime_factors(n) {
                let mut d = n / p;
                if d % 4 == 2 {
                    d /= 2;
                }
                if d == n {
                    continue;
                }
                if let Some(coeffs) = try_descend(&cur.coeffs, n, d) {
                    cur = Cyclotomic { conductor: d, coeffs };
                    descended = true;
                    break;
                }
            }
            if !descended {
                // Still normalize a conductor ≡ 2 mod 4 (equal field below).
                if n % 4 == 2 {
                    let coeffs = try_descend(&cur.coeffs, n, n / 2)
                        .expect("Q(zeta_2m) = Q(zeta_m) for odd m");
                    cur = Cyclotomic {
                        conductor: n / 2,
                        coeffs,
                    };
                    continue;
                }
                return cur;
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.conductor == 1 && other.conductor == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        let n = lcm(self.conductor, other.conductor);
        let mut a = self.coords_in(n);
        let b = other.coords_in(n);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        Cyclotomic { conductor: n, coeffs: a }.minimized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let n = lcm(self.conductor, other.conductor);
        let a = self.coords_in(n);
        let b = other.coords_in(n);
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_coeffs_reduced(n, prod)
    }

    /// Multiplication by a rational scalar (conductor unchanged).
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Cyclotomic::from_rational(self.coeffs[0].recip()));
        }
        // Extended Euclid in Q[x]: u·a + v·Φ_N = 1 since Φ_N is irreducible.
        let n = self.conductor;
        let phi: Vec<Rational> = cyclotomic_polynomial(n)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let (g, u) = poly_half_xgcd(&self.coeffs, &phi);
        // g is a nonzero constant; inverse = u / g.
        debug_assert_eq!(poly_degree(&g), Some(0));
        let ginv = g[0].recip();
        let inv_coeffs: Vec<Rational> = u.iter().map(|c| c * &ginv).collect();
        Ok(Cyclotomic::from_coeffs_reduced(n, inv_coeffs))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = Cyclotomic::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Galois conjugate ζ_N -> ζ_N^k for gcd(k, N) = 1.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.conductor;
        debug_assert_eq!(crate::numtheory::gcd(k % n, n), if n == 1 { 1 % 1 } else { 1 });
        if n == 1 {
            return self.clone();
        }
        let mut poly = vec![Rational::zero(); (n as usize - 1) * self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (j as u64 * k % n) as usize;
                poly[e] += c;
            }
        }
        Cyclotomic::from_coeffs_reduced(n, poly)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.conductor == 1 {
            self.clone()
        } else {
            self.galois(self.conductor - 1)
        }
    }

    /// Deterministic total order: by conductor, then coefficient sequence.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Half-extended GCD over Q[x]: returns (g, u) with u·a ≡ g (mod b) and g the
/// last nonzero remainder of the Euclidean sequence for (a, b).
fn poly_half_xgcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = a.to_vec();
    let mut r1: Vec<Rational> = b.to_vec();
    let mut u0 = vec![Rational::one()];
    let mut u1 = vec![Rational::zero()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let uq = poly_mul(&q, &u1);
        let unew = poly_sub(&u0, &uq);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = unew;
    }
    (r0, u0)
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = poly_degree(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem: Vec<Rational> = num.to_vec();
    let nd = match poly_degree(&rem) {
        Some(d) if d >= dd => d,
        _ => return (vec![Rational::zero()], rem),
    };
    let mut quot = vec![Rational::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = &rem[k + dd] / &lead;
        if !c.is_zero() {
            for i in 0..=dd {
                let t = &c * &den[i];
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

/// Tests whether the conductor-n coordinates lie in Q(ζ_d); if so returns the
/// conductor-d coordinates.
fn try_descend(coeffs: &[Rational], n: u64, d: u64) -> Option<Vec<Rational>> {
    debug_assert_eq!(n % d, 0);
    let cols = embedding_columns(d, n);
    let phi_n = coeffs.len();
    let phi_d = cols.len();
    // Solve the φ(n) × φ(d) system cols · x = coeffs by Gaussian elimination.
    let mut aug: Vec<Vec<Rational>> = (0..phi_n)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(coeffs[i].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for c in 0..phi_d {
        let Some(p) = (r..phi_n).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].clone().recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..phi_n {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=phi_d {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivot_rows.push((r, c));
        r += 1;
    }
    // Consistency: rows past the pivots must have zero RHS.
    for row in aug.iter().skip(r) {
        if !row[phi_d].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); phi_d];
    for (row, col) in pivot_rows {
        x[col] = aug[row][phi_d].clone();
    }
    Some(x)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if j == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}", self.conductor)?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    conductor: u64,
    coeffs: Vec<RationalJson>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().cloned().map(RationalJson).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycJson::deserialize(d)?;
        if raw.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        if raw.coeffs.len() != euler_phi(raw.conductor) as usize {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for conductor {}, got {}",
                euler_phi(raw.conductor),
                raw.conductor,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw.coeffs.into_iter().map(|r| r.0).collect();
        Ok(Cyclotomic {
            conductor: raw.conductor,
            coeffs,
        }
        .minimized())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn phi_polynomials() {
        let to_i = |v: Vec<i64>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), to_i(vec![-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), to_i(vec![1, 1]));
        assert_eq!(cyclotomic_polynomial(3), to_i(vec![1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), to_i(vec![1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), to_i(vec![1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), to_i(vec![1, 0, -1, 0, 1]));
    }

    #[test]
    fn identity_root() {
        assert_eq!(zeta(1, 0), Cyclotomic::one());
        assert_eq!(zeta(5, 0), Cyclotomic::one());
        assert_eq!(zeta(5, 5), Cyclotomic::one());
    }

    #[test]
    fn imaginary_unit_has_conductor_four() {
        let i = zeta(4, 1);
        assert_eq!(i.conductor(), 4);
        assert_eq!(i.coeffs(), &[Rational::zero(), Rational::one()]);
        assert_eq!(i.mul(&i), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let s = zeta(3, 1).add(&zeta(3, 2));
        assert_eq!(s, Cyclotomic::from_integer(-1));
        assert!(s.is_rational());
    }

    #[test]
    fn primitive_fifth_roots_sum_to_minus_one() {
        let mut s = Cyclotomic::zero();
        for k in 1..5 {
            s = s.add(&zeta(5, k));
        }
        assert_eq!(s, Cyclotomic::from_integer(-1));
    }

    #[test]
    fn cube_root_product_is_one() {
        assert_eq!(zeta(3, 1).mul(&zeta(3, 2)), Cyclotomic::one());
    }

    #[test]
    fn self_division_is_one() {
        let a = Cyclotomic::one().add(&zeta(4, 1));
        assert_eq!(a.div(&a).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn division_by_zero_errors() {
        assert!(Cyclotomic::one().div(&Cyclotomic::zero()).is_err());
    }

    #[test]
    fn to_rational_signals() {
        let s = Cyclotomic::one().add(&zeta(3, 1)).add(&zeta(3, 2));
        assert_eq!(s.to_rational().unwrap(), Rational::zero());
        assert!(zeta(4, 1).to_rational().is_err());
        let r = Cyclotomic::from_rational(Rational::new(BigInt::from(7), BigInt::from(2)));
        assert_eq!(r.to_rational().unwrap(), Rational::new(BigInt::from(7), BigInt::from(2)));
    }

    #[test]
    fn conductor_minimization_across_embeddings() {
        // ζ_12^4 = ζ_3, stored at conductor 3; ζ_12^3 = i at conductor 4.
        assert_eq!(zeta(12, 4), zeta(3, 1));
        assert_eq!(zeta(12, 3), zeta(4, 1));
        // ζ_6 = -ζ_3^2 lives at conductor 3 under the no-2m convention.
        assert_eq!(zeta(6, 1).conductor(), 3);
        assert_eq!(zeta(6, 1), zeta(3, 2).neg());
    }

    #[test]
    fn galois_orbit_sum_is_rational() {
        // Σ over the full orbit of ζ_7 + ζ_7^{-1} under Gal(Q(ζ_7)/Q).
        let a = zeta(7, 1).add(&zeta(7, -1));
        let mut s = Cyclotomic::zero();
        for k in [1u64, 2, 3] {
            s = s.add(&a.galois(k));
        }
        assert_eq!(s.to_rational().unwrap(), rat_from_i64(-1));
    }

    #[test]
    fn sqrt2_has_conductor_eight() {
        // √2 = ζ_8 + ζ_8^{-1}
        let s = zeta(8, 1).add(&zeta(8, -1));
        assert_eq!(s.conductor(), 8);
        assert_eq!(s.mul(&s).to_rational().unwrap(), rat_from_i64(2));
    }

    #[test]
    fn json_round_trip() {
        let v = zeta(12, 1).add(&Cyclotomic::from_rational(Rational::new(
            BigInt::from(1),
            BigInt::from(3),
        )));
        let s = serde_json::to_string(&v).unwrap();
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        // Also canonicalizes a non-minimal encoding on ingestion.
        let nonmin = r#"{"conductor":6,"coeffs":[["1","1"],["-1","1"]]}"#;
        let w: Cyclotomic = serde_json::from_str(nonmin).unwrap();
        assert_eq!(w.conductor(), 3);
    }

    fn arb_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
        let conductors = prop::sample::select(vec![1u64, 3, 4, 5, 8, 9, 12]);
        conductors.prop_flat_map(|n| {
            let phi = euler_phi(n) as usize;
            prop::collection::vec((-4i64..=4, 1i64..=3), phi).prop_map(move |pairs| {
                let coeffs = pairs
                    .into_iter()
                    .map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
                    .collect();
                Cyclotomic::from_coeffs_reduced(n, coeffs)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn canonical_form_unique(a in arb_cyclotomic(), b in arb_cyclotomic()) {
            let diff = a.sub(&b);
            prop_assert_eq!(diff.is_zero(), a == b);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclotomic(), b in arb_cyclotomic(), c in arb_cyclotomic()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), Cyclotomic::one());
            }
        }

        #[test]
        fn serde_round_trip(a in arb_cyclotomic()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: Cyclotomic = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn conductor_is_minimal(a in arb_cyclotomic()) {
            let n = a.conductor();
            prop_assert_ne!(n % 4, 2);
            if n > 1 {
                for p in prime_factors(n) {
                    prop_assert!(try_descend(a.coeffs(), n, n / p).is_none());
                }
            }
        }
    }
}
