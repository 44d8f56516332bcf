//! Dense univariate and sparse multivariate polynomials over cyclotomics.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Univariate polynomial, coefficients ascending. The zero polynomial stores
/// no coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycPoly {
    coeffs: Vec<Cyclotomic>,
}

impl CycPoly {
    pub fn new(mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        CycPoly { coeffs }
    }

    pub fn zero() -> Self {
        CycPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        CycPoly {
            coeffs: vec![Cyclotomic::one()],
        }
    }

    pub fn monomial(coeff: Cyclotomic, degree: usize) -> Self {
        let mut coeffs = vec![Cyclotomic::zero(); degree + 1];
        coeffs[degree] = coeff;
        CycPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cyclotomic {
        self.coeffs.get(k).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Cyclotomic::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Cyclotomic::zero);
            out.push(a.add(&b));
        }
        CycPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        CycPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return CycPoly::zero();
        }
        let mut out = vec![Cyclotomic::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        CycPoly::new(out)
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Exact division by (1 - X); fails if (1 - X) does not divide.
    pub fn div_one_minus_x(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(CycPoly::zero());
        }
        // p(X) = (X - 1) s(X) + p(1); (1 - X) q = p means q = -s and p(1) = 0.
        let n = self.coeffs.len();
        let mut s = vec![Cyclotomic::zero(); n.saturating_sub(1)];
        let mut carry = Cyclotomic::zero();
        for k in (1..n).rev() {
            carry = self.coeffs[k].add(&carry);
            s[k - 1] = carry.clone();
        }
        let rem = self.coeffs[0].add(&carry);
        if !rem.is_zero() {
            return Err(Error::PhiExtraction(format!(
                "polynomial not divisible by (1-X); remainder {rem}"
            )));
        }
        Ok(CycPoly::new(s.into_iter().map(|c| c.neg()).collect()))
    }

    pub fn divisible_by_one_minus_x(&self) -> bool {
        // (1 - X) | p iff p(1) = 0.
        self.eval(&Cyclotomic::one()).is_zero()
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let needs_parens = !c.is_rational();
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                if c.is_one() {
                } else if needs_parens {
                    write!(f, "({c})*")?;
                } else {
                    write!(f, "{c}*")?;
                }
                write!(f, "X")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycPoly({self})")
    }
}

/// Sparse multivariate polynomial keyed by exponent vectors. Variables are
/// identified by position against the `variables` label list; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPoly {
    variables: Vec<String>,
    terms: BTreeMap<Vec<u32>, Cyclotomic>,
}

impl MultiPoly {
    pub fn zero(variables: Vec<String>) -> Self {
        MultiPoly {
            variables,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variables: Vec<String>, c: Cyclotomic) -> Self {
        let mut p = MultiPoly::zero(variables);
        if !c.is_zero() {
            let key = vec![0; p.variables.len()];
            p.terms.insert(key, c);
        }
        p
    }

    pub fn one(variables: Vec<String>) -> Self {
        Self::constant(variables, Cyclotomic::one())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.variables.len()])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: Cyclotomic) {
        assert_eq!(exps.len(), self.variables.len());
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn constant_term(&self) -> Cyclotomic {
        self.terms
            .get(&vec![0; self.variables.len()])
            .cloned()
            .unwrap_or_else(Cyclotomic::zero)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|k| k[var]).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.variables, other.variables);
        let mut out = MultiPoly::zero(self.variables.clone());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                out.add_term(key, ca.mul(cb));
            }
        }
        out
    }

    /// Exact division by (1 - X_var); fails with remainder otherwise.
    pub fn div_one_minus_var(&self, var: usize) -> Result<Self> {
        // Treat as a univariate polynomial in X_var with MultiPoly coefficients.
        let deg = self.degree_in(var) as usize;
        if deg == 0 {
            if self.is_zero() {
                return Ok(self.clone());
            }
            return Err(Error::PhiExtraction(format!(
                "polynomial has degree 0 in {}, not divisible by (1-X)",
                self.variables[var]
            )));
        }
        let mut layers: Vec<BTreeMap<Vec<u32>, Cyclotomic>> = vec![BTreeMap::new(); deg + 1];
        for (k, c) in &self.terms {
            let mut base = k.clone();
            let e = base[var] as usize;
            base[var] = 0;
            layers[e].insert(base, c.clone());
        }
        // Synthetic division by (X - 1), then negate; remainder must vanish.
        let mut quotient_layers: Vec<BTreeMap<Vec<u32>, Cyclotomic>> =
            vec![BTreeMap::new(); deg];
        let mut carry: BTreeMap<Vec<u32>, Cyclotomic> = BTreeMap::new();
        for e in (1..=deg).rev() {
            for (k, c) in &layers[e] {
                add_into(&mut carry, k.clone(), c.clone());
            }
            quotient_layers[e - 1] = carry.clone();
        }
        let mut rem = layers[0].clone();
        for (k, c) in &carry {
            add_into(&mut rem, k.clone(), c.clone());
        }
        if !rem.is_empty() {
            return Err(Error::PhiExtraction(format!(
                "polynomial not divisible by (1-{})",
                self.variables[var]
            )));
        }
        let mut out = MultiPoly::zero(self.variables.clone());
        for (e, layer) in quotient_layers.into_iter().enumerate() {
            for (mut k, c) in layer {
                k[var] = e as u32;
                out.add_term(k, c.neg());
            }
        }
        Ok(out)
    }

    pub fn divisible_by_one_minus_var(&self, var: usize) -> bool {
        // Substitute X_var = 1 and test for zero.
        let mut collapsed: BTreeMap<Vec<u32>, Cyclotomic> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut base = k.clone();
            base[var] = 0;
            add_into(&mut collapsed, base, c.clone());
        }
        collapsed.is_empty()
    }

    /// Converts a one-variable MultiPoly to a dense CycPoly.
    pub fn to_univariate(&self) -> Option<CycPoly> {
        if self.variables.len() != 1 {
            return None;
        }
        let deg = self.degree_in(0) as usize;
        let mut coeffs = vec![Cyclotomic::zero(); deg + 1];
        for (k, c) in &self.terms {
            coeffs[k[0] as usize] = c.clone();
        }
        Some(CycPoly::new(coeffs))
    }
}

fn add_into(map: &mut BTreeMap<Vec<u32>, Cyclotomic>, key: Vec<u32>, c: Cyclotomic) {
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k.iter().all(|&e| e == 0) {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                if c.is_rational() {
                    write!(f, "{c}*")?;
                } else {
                    write!(f, "({c})*")?;
                }
            }
            let mut firstvar = true;
            for (i, &e) in k.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !firstvar {
                    write!(f, "*")?;
                }
                firstvar = false;
                write!(f, "X[{}]", self.variables[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn one_minus_x_division_round_trip() {
        // (1 - X)^2 (1 + 3X) = 1 + X - 5X^2 + 3X^3
        let p = CycPoly::new(vec![int(1), int(1), int(-5), int(3)]);
        let q = p.div_one_minus_x().unwrap();
        let r = q.div_one_minus_x().unwrap();
        assert_eq!(r, CycPoly::new(vec![int(1), int(3)]));
        assert!(r.div_one_minus_x().is_err());
    }

    #[test]
    fn multipoly_division() {
        // (1 - X_a)(1 - X_b) = 1 - X_a - X_b + X_a X_b
        let vars = vec!["a".to_string(), "b".to_string()];
        let mut p = MultiPoly::zero(vars.clone());
        p.add_term(vec![0, 0], int(1));
        p.add_term(vec![1, 0], int(-1));
        p.add_term(vec![0, 1], int(-1));
        p.add_term(vec![1, 1], int(1));
        let q = p.div_one_minus_var(0).unwrap();
        let r = q.div_one_minus_var(1).unwrap();
        assert!(r.is_one());
        assert!(!p.divisible_by_one_minus_var(0) || p.div_one_minus_var(0).is_ok());
        assert!(q.div_one_minus_var(0).is_err());
    }

    #[test]
    fn eval_and_mul() {
        let p = CycPoly::new(vec![int(2), int(0), int(1)]); // 2 + X^2
        let q = CycPoly::new(vec![int(-1), int(1)]); // X - 1
        let prod = p.mul(&q);
        assert_eq!(prod.eval(&int(3)), int(11).mul(&int(2)));
    }
}
