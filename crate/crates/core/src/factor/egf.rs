//! Exponential generating functions for factorization counts as finite sums
//! of exponential terms, bucketed by (local) Coxeter numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::characters::{CharacterTable, ClassData};
use crate::coxeter::CoxeterProfile;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::rational::{rat_from_i64, Rational};

use super::frobenius::finalize_count;
use super::multinomial;

/// FAC_{W,g} as aggregated character data: the 1/|W| scale, the e^{t·wt(R)}
/// prefactor, and a map from Coxeter-exponent keys to aggregated
/// Σ χ(1)χ(g^{-1}) coefficients.
///
/// Unweighted forms use the single key [c_χ] with `global_exponent` = [|R|];
/// weighted forms use one key entry and one variable per hyperplane orbit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EgfForm {
    pub group_order: BigInt,
    pub weighted: bool,
    /// Orbit labels (weighted forms); empty for unweighted.
    pub variable_labels: Vec<String>,
    /// Coefficients of the exponential prefactor: per-variable |C^ref|, or
    /// the single entry |R| for unweighted forms.
    pub global_exponent: Vec<u64>,
    /// Per-variable substitution moduli |g| (per-component |g_i| in products
    /// of forms).
    pub moduli: Vec<u64>,
    pub terms: BTreeMap<Vec<u64>, Cyclotomic>,
}

impl EgfForm {
    /// Fact(l): l-th series coefficient times l!, i.e. the factorization
    /// count, asserted to be a non-negative integer.
    pub fn count_at_length(&self, l: usize) -> Result<BigInt> {
        assert!(!self.weighted, "use weighted_count for weighted forms");
        let base = self.global_exponent[0] as i64;
        let mut total = Cyclotomic::zero();
        for (key, coeff) in &self.terms {
            let a = rat_from_i64(base - key[0] as i64);
            let mut f = rat_from_i64(1);
            for _ in 0..l {
                f *= &a;
            }
            total = total.add(&coeff.scale(&f));
        }
        finalize_count(total, order_usize(&self.group_order))
    }

    /// Number of factorizations with exactly counts[i] factors from orbit i:
    /// multinomial(Σ counts; counts) · (1/|W|) Σ coeff Π (|C^ref| - c_C)^{l_C}.
    pub fn weighted_count(&self, counts: &[u64]) -> Result<BigInt> {
        assert!(self.weighted, "use count_at_length for unweighted forms");
        assert_eq!(counts.len(), self.variable_labels.len());
        let mut total = Cyclotomic::zero();
        for (key, coeff) in &self.terms {
            let mut f = rat_from_i64(1);
            for (i, &lc) in counts.iter().enumerate() {
                let b = rat_from_i64(self.global_exponent[i] as i64 - key[i] as i64);
                for _ in 0..lc {
                    f *= &b;
                }
            }
            total = total.add(&coeff.scale(&f));
        }
        let bare = finalize_count_signed(total, order_usize(&self.group_order))?;
        Ok(bare * multinomial(counts))
    }

    /// Specializes all weights to a single variable: keys collapse to their
    /// component sums and coefficients aggregate.
    pub fn collapse(&self) -> EgfForm {
        if !self.weighted {
            return self.clone();
        }
        let mut terms: BTreeMap<Vec<u64>, Cyclotomic> = BTreeMap::new();
        for (key, coeff) in &self.terms {
            let total: u64 = key.iter().sum();
            merge_term(&mut terms, vec![total], coeff.clone());
        }
        EgfForm {
            group_order: self.group_order.clone(),
            weighted: false,
            variable_labels: Vec::new(),
            global_exponent: vec![self.global_exponent.iter().sum()],
            moduli: vec![self.moduli.first().copied().unwrap_or(1)],
            terms,
        }
    }

    /// Formal product of two forms (factorizations of a direct product
    /// interleave factor-wise). Weighted forms need disjoint variable sets.
    pub fn product(&self, other: &EgfForm) -> Result<EgfForm> {
        if self.weighted != other.weighted {
            return Err(Error::VariableCollision(
                "cannot multiply weighted and unweighted forms".into(),
            ));
        }
        if self.weighted {
            for l in &self.variable_labels {
                if other.variable_labels.contains(l) {
                    return Err(Error::VariableCollision(format!("variable {l} on both sides")));
                }
            }
            let mut terms = BTreeMap::new();
            for (ka, ca) in &self.terms {
                for (kb, cb) in &other.terms {
                    let mut key = ka.clone();
                    key.extend_from_slice(kb);
                    merge_term(&mut terms, key, ca.mul(cb));
                }
            }
            let mut labels = self.variable_labels.clone();
            labels.extend_from_slice(&other.variable_labels);
            let mut global = self.global_exponent.clone();
            global.extend_from_slice(&other.global_exponent);
            let mut moduli = self.moduli.clone();
            moduli.extend_from_slice(&other.moduli);
            Ok(EgfForm {
                group_order: &self.group_order * &other.group_order,
                weighted: true,
                variable_labels: labels,
                global_exponent: global,
                moduli,
                terms,
            })
        } else {
            let mut terms = BTreeMap::new();
            for (ka, ca) in &self.terms {
                for (kb, cb) in &other.terms {
                    merge_term(&mut terms, vec![ka[0] + kb[0]], ca.mul(cb));
                }
            }
            Ok(EgfForm {
                group_order: &self.group_order * &other.group_order,
                weighted: false,
                variable_labels: Vec::new(),
                global_exponent: vec![self.global_exponent[0] + other.global_exponent[0]],
                moduli: vec![crate::numtheory::lcm(self.moduli[0], other.moduli[0])],
                terms,
            })
        }
    }

    /// The form as a plain sum of exponentials Σ c_a e^{a·t} over Q; fails
    /// when an aggregated coefficient is irrational.
    pub fn to_exp_sum(&self) -> Result<ExpSum> {
        assert!(!self.weighted);
        let base = self.global_exponent[0] as i64;
        let order = Rational::from_integer(self.group_order.clone()).recip();
        let mut terms = BTreeMap::new();
        for (key, coeff) in &self.terms {
            let c = coeff.to_rational().map_err(|_| {
                Error::Irrational(format!("aggregated coefficient {coeff} is irrational"))
            })?;
            let a = base - key[0] as i64;
            let entry = terms.entry(a).or_insert_with(Rational::zero);
            *entry += c * &order;
        }
        terms.retain(|_, v: &mut Rational| !v.is_zero());
        Ok(ExpSum { terms })
    }
}

fn order_usize(order: &BigInt) -> usize {
    let (_, digits) = order.to_u64_digits();
    digits.first().copied().unwrap_or(0) as usize
}

fn merge_term(map: &mut BTreeMap<Vec<u64>, Cyclotomic>, key: Vec<u64>, c: Cyclotomic) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
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

/// Like `finalize_count` but allows negative integers (partial sums in
/// weighted extraction are signed before the multinomial factor).
fn finalize_count_signed(total: Cyclotomic, order: usize) -> Result<BigInt> {
    let scaled = total.scale(&rat_from_i64(order as i64).recip());
    let r = scaled.to_rational().map_err(|_| {
        Error::IntegralityViolation(format!("count {scaled} is irrational"))
    })?;
    if !r.is_integer() {
        return Err(Error::IntegralityViolation(format!("count {r} is not an integer")));
    }
    Ok(r.numer().clone())
}

/// Builds FAC_{W,g} by aggregating characters over their (local) Coxeter
/// exponents.
pub fn egf_form(
    group: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
    profiles: &[CoxeterProfile],
    g: u32,
    weighted: bool,
) -> Result<EgfForm> {
    let gc = classes.class_of[g as usize] as usize;
    let modulus = group.order_of(classes.classes[gc].rep) as u64;
    let mut terms: BTreeMap<Vec<u64>, Cyclotomic> = BTreeMap::new();
    for chi in 0..table.num_characters() {
        let value = table.value_at_inverse(classes, chi, gc);
        if value.is_zero() {
            continue;
        }
        let coeff = value.scale(&rat_from_i64(table.degrees[chi] as i64));
        let key = if weighted {
            profiles[chi].local.clone()
        } else {
            vec![profiles[chi].total]
        };
        merge_term(&mut terms, key, coeff);
    }
    let (labels, global, moduli) = if weighted {
        (
            group.orbits().iter().map(|o| o.label.clone()).collect(),
            group
                .orbits()
                .iter()
                .map(|o| o.reflection_set.len() as u64)
                .collect(),
            vec![modulus; group.orbits().len()],
        )
    } else {
        (
            Vec::new(),
            vec![group.num_reflections() as u64],
            vec![modulus],
        )
    };
    Ok(EgfForm {
        group_order: BigInt::from(group.order()),
        weighted,
        variable_labels: labels,
        global_exponent: global,
        moduli,
        terms,
    })
}

/// Formal product of per-component forms over disjoint orbit-variable sets;
/// weighted products keep each component's own |g_i| as its variables'
/// substitution modulus.
pub fn product_group_egf(forms: &[EgfForm]) -> Result<EgfForm> {
    let mut iter = forms.iter();
    let Some(first) = iter.next() else {
        return Err(Error::VariableCollision("empty form list".into()));
    };
    let mut acc = first.clone();
    for f in iter {
        acc = acc.product(f)?;
    }
    Ok(acc)
}

/// A finite sum Σ c_a e^{a·t} with rational coefficients; the common exact
/// currency for comparing closed forms, differences of forms, and series
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSum {
    pub terms: BTreeMap<i64, Rational>,
}

impl ExpSum {
    pub fn zero() -> Self {
        ExpSum {
            terms: BTreeMap::new(),
        }
    }

    /// (1/denom) · e^{base·t} · (1 - e^{-m·t})^k expanded binomially.
    pub fn closed_form(denom: &BigInt, base: i64, m: u64, k: u32) -> Self {
        let scale = Rational::new(BigInt::from(1), denom.clone());
        let mut terms = BTreeMap::new();
        for j in 0..=k as u64 {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let c = Rational::from_integer(super::binomial(k as u64, j) * BigInt::from(sign)) * &scale;
            let a = base - (j * m) as i64;
            let e = terms.entry(a).or_insert_with(Rational::zero);
            *e += c;
        }
        terms.retain(|_, v: &mut Rational| !v.is_zero());
        ExpSum { terms }
    }

    pub fn sub(&self, other: &ExpSum) -> ExpSum {
        let mut terms = self.terms.clone();
        for (a, c) in &other.terms {
            let e = terms.entry(*a).or_insert_with(Rational::zero);
            *e -= c;
        }
        terms.retain(|_, v: &mut Rational| !v.is_zero());
        ExpSum { terms }
    }

    /// l-th series coefficient times l!: Σ c_a a^l.
    pub fn fact(&self, l: usize) -> Rational {
        let mut total = Rational::zero();
        for (a, c) in &self.terms {
            let mut f = rat_from_i64(1);
            for _ in 0..l {
                f *= rat_from_i64(*a);
            }
            total += c * f;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character_table, conjugacy_classes};
    use crate::config::Caps;
    use crate::coxeter::all_profiles;
    use crate::factor::{brute_force_count, brute_force_weighted, frobenius_count};
    use crate::group::{build_group, GroupSpec};

    struct Ctx {
        group: ReflectionGroup,
        classes: ClassData,
        table: CharacterTable,
        profiles: Vec<CoxeterProfile>,
    }

    fn setup(s: &str) -> Ctx {
        let group = build_group(&GroupSpec::parse(s).unwrap(), &Caps::default()).unwrap();
        let classes = conjugacy_classes(&group);
        let table = character_table(&group, &classes, &Caps::default(), 0).unwrap();
        let profiles = all_profiles(&group, &classes, &table).unwrap();
        Ctx {
            group,
            classes,
            table,
            profiles,
        }
    }

    fn coxeter_element(g: &ReflectionGroup) -> u32 {
        let mut c = g.identity();
        for &s in g.generators() {
            c = g.mul(c, s);
        }
        c
    }

    #[test]
    fn series_matches_frobenius_and_oracle() {
        let ctx = setup("S3");
        let caps = Caps::default();
        let cox = coxeter_element(&ctx.group);
        let form = egf_form(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, cox, false).unwrap();
        for l in 0..=6 {
            let from_form = form.count_at_length(l).unwrap();
            let direct = frobenius_count(&ctx.group, &ctx.classes, &ctx.table, cox, l).unwrap();
            assert_eq!(from_form, direct);
            let dp = brute_force_count(&ctx.group, &caps, cox, l).unwrap();
            assert_eq!(from_form, dp, "l = {l}");
        }
        // The S3 long-cycle form aggregates to buckets {0: 1, 3: -2, 6: 1},
        // i.e. tilde-Φ(X) = (1 - X)^2.
        let keys: Vec<Vec<u64>> = form.terms.keys().cloned().collect();
        assert_eq!(keys, vec![vec![0], vec![3], vec![6]]);
        assert_eq!(form.terms[&vec![3]], Cyclotomic::from_integer(-2));
    }

    #[test]
    fn identity_series_matches_oracle() {
        let ctx = setup("B2");
        let caps = Caps::default();
        let form = egf_form(
            &ctx.group,
            &ctx.classes,
            &ctx.table,
            &ctx.profiles,
            ctx.group.identity(),
            false,
        )
        .unwrap();
        for l in 0..=6 {
            assert_eq!(
                form.count_at_length(l).unwrap(),
                brute_force_count(&ctx.group, &caps, ctx.group.identity(), l).unwrap()
            );
        }
    }

    #[test]
    fn trivial_group_form_is_constant_one() {
        let ctx = setup("S1");
        let form = egf_form(
            &ctx.group,
            &ctx.classes,
            &ctx.table,
            &ctx.profiles,
            ctx.group.identity(),
            false,
        )
        .unwrap();
        assert_eq!(form.count_at_length(0).unwrap(), BigInt::from(1));
        for l in 1..=4 {
            assert_eq!(form.count_at_length(l).unwrap(), BigInt::from(0));
        }
    }

    #[test]
    fn weighted_counts_match_weighted_oracle() {
        let ctx = setup("B2");
        let caps = Caps::default();
        let cox = coxeter_element(&ctx.group);
        let form = egf_form(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, cox, true).unwrap();
        for l in 0..=4u64 {
            let dp = brute_force_weighted(&ctx.group, &caps, cox, l as usize).unwrap();
            for l1 in 0..=l {
                let l2 = l - l1;
                let expected = dp.get(&vec![l1, l2]).cloned().unwrap_or_else(BigInt::zero);
                assert_eq!(
                    form.weighted_count(&[l1, l2]).unwrap(),
                    expected,
                    "counts ({l1},{l2})"
                );
            }
        }
    }

    #[test]
    fn weighted_collapse_equals_unweighted() {
        let ctx = setup("G(3,1,2)");
        let cox = {
            // d_n-regular element: use any order-6 regular class rep.
            let certs = crate::group::find_regular_elements(&ctx.group, 6);
            certs[0].class_rep
        };
        let weighted = egf_form(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, cox, true).unwrap();
        let unweighted = egf_form(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, cox, false).unwrap();
        let collapsed = weighted.collapse();
        assert_eq!(collapsed.terms, unweighted.terms);
        assert_eq!(collapsed.global_exponent, unweighted.global_exponent);
    }

    #[test]
    fn product_form_matches_product_group_oracle() {
        // S3 × S3 with g = (3-cycle, 3-cycle).
        let ctx = setup("S3");
        let cox = coxeter_element(&ctx.group);
        let form = egf_form(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, cox, false).unwrap();
        let prod = product_group_egf(&[form.clone(), form]).unwrap();

        let big = setup("S3×S3");
        let caps = Caps::default();
        // The block-diagonal (c, c) element: product of all generators.
        let mut g = big.group.identity();
        for &s in big.group.generators() {
            g = big.group.mul(g, s);
        }
        for l in 0..=6 {
            assert_eq!(
                prod.count_at_length(l).unwrap(),
                brute_force_count(&big.group, &caps, g, l).unwrap(),
                "product series at l = {l}"
            );
        }
        // Single factor: identity operation.
        let ctx2 = setup("S4");
        let c4 = coxeter_element(&ctx2.group);
        let f4 = egf_form(&ctx2.group, &ctx2.classes, &ctx2.table, &ctx2.profiles, c4, false).unwrap();
        let same = product_group_egf(&[f4.clone()]).unwrap();
        assert_eq!(same.terms, f4.terms);
    }

    #[test]
    fn product_with_trivial_group_is_identity() {
        let ctx = setup("S4");
        let cox = coxeter_element(&ctx.group);
        let f = egf_form(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, cox, false).unwrap();
        let triv = setup("S1");
        let t = egf_form(
            &triv.group,
            &triv.classes,
            &triv.table,
            &triv.profiles,
            triv.group.identity(),
            false,
        )
        .unwrap();
        let prod = f.product(&t).unwrap();
        assert_eq!(prod.terms, f.terms);
        assert_eq!(prod.global_exponent, f.global_exponent);
        assert_eq!(prod.group_order, f.group_order);
    }

    #[test]
    fn weighted_variable_collision_rejected() {
        let ctx = setup("B2");
        let cox = coxeter_element(&ctx.group);
        let w = egf_form(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, cox, true).unwrap();
        assert!(matches!(
            w.product(&w),
            Err(Error::VariableCollision(_))
        ));
    }

    #[test]
    fn exp_sum_closed_form() {
        // Jackson for S3: e^{3t}/6 (1 - e^{-3t})^2.
        let s = ExpSum::closed_form(&BigInt::from(6), 3, 3, 2);
        assert_eq!(s.fact(2), rat_from_i64(3));
        assert_eq!(s.fact(3), rat_from_i64(0));
        assert_eq!(s.fact(4), rat_from_i64(27));
    }
}
