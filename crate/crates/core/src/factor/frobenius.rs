//! The character-sum counting formulas: factorizations into reflections and
//! into arbitrary conjugation-closed factor sets.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::characters::{class_set_value, CharacterTable, ClassData};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::rational::{rat_from_i64, Rational};

/// Number of tuples (t_1,…,t_l) ∈ R^l with t_1⋯t_l = g, via
/// (1/|W|) Σ_χ χ(1) χ(g^{-1}) [χ(R)/χ(1)]^l. The count depends only on the
/// conjugacy class of g.
pub fn frobenius_count(
    group: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
    g: u32,
    l: usize,
) -> Result<BigInt> {
    let gc = classes.class_of[g as usize] as usize;
    let mut total = Cyclotomic::zero();
    for chi in 0..table.num_characters() {
        let chi_r = class_set_value(table, classes, chi, group.reflections())?;
        let chi_r = chi_r.to_rational().map_err(|_| {
            Error::IntegralityViolation(format!("χ(R) irrational for character {chi}"))
        })?;
        let degree = rat_from_i64(table.degrees[chi] as i64);
        let ratio_pow = pow_rational(&(chi_r / &degree), l);
        let value = table.value_at_inverse(classes, chi, gc);
        if value.is_zero() {
            continue;
        }
        total = total.add(&value.scale(&(degree * ratio_pow)));
    }
    finalize_count(total, group.order())
}

/// Number of tuples with factor i constrained to sets[i] (each closed under
/// conjugation) and product g.
pub fn frobenius_multiset_count(
    group: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
    g: u32,
    sets: &[Vec<u32>],
) -> Result<BigInt> {
    let gc = classes.class_of[g as usize] as usize;
    let mut total = Cyclotomic::zero();
    for chi in 0..table.num_characters() {
        let value = table.value_at_inverse(classes, chi, gc);
        if value.is_zero() {
            continue;
        }
        let inv_degree = rat_from_i64(table.degrees[chi] as i64).recip();
        let mut term = value.scale(&rat_from_i64(table.degrees[chi] as i64));
        for set in sets {
            let chi_a = class_set_value(table, classes, chi, set)?;
            term = term.mul(&chi_a.scale(&inv_degree));
            if term.is_zero() {
                break;
            }
        }
        total = total.add(&term);
    }
    finalize_count(total, group.order())
}

fn pow_rational(r: &Rational, l: usize) -> Rational {
    let mut acc = rat_from_i64(1);
    for _ in 0..l {
        acc *= r;
    }
    acc
}

/// Divides the character sum by |W| and asserts a non-negative integer.
pub(super) fn finalize_count(total: Cyclotomic, order: usize) -> Result<BigInt> {
    let scaled = total.scale(&rat_from_i64(order as i64).recip());
    let r = scaled.to_rational().map_err(|_| {
        Error::IntegralityViolation(format!("factorization count {scaled} is irrational"))
    })?;
    if !r.is_integer() {
        return Err(Error::IntegralityViolation(format!(
            "factorization count {r} is not an integer"
        )));
    }
    if r.is_negative() {
        return Err(Error::IntegralityViolation(format!(
            "factorization count {r} is negative"
        )));
    }
    Ok(r.numer().clone())
}
