//! Cancellation identities for regular elements and extraction of the Φ
//! polynomial from the factorization generating function.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::characters::{CharacterTable, ClassData};
use crate::config::Caps;
use crate::coxeter::CoxeterProfile;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{find_regular_elements, RegularElementCert, ReflectionGroup};
use crate::poly::{CycPoly, MultiPoly};

use super::egf::{egf_form, EgfForm, ExpSum};

/// One exponent bucket of the aggregated character sum and whether it
/// survives the divisibility filter.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BucketVerdict {
    pub exponents: Vec<u64>,
    /// All exponent components divisible by their modulus.
    pub survives: bool,
    /// The aggregated coefficient vanishes (must hold whenever the bucket
    /// does not survive).
    pub coefficient_zero: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CancellationReport {
    pub weighted: bool,
    pub moduli: Vec<u64>,
    pub buckets: Vec<BucketVerdict>,
}

/// Verifies that every bucket whose exponent key is not componentwise
/// divisible by |g| has aggregated coefficient exactly 0. Requires a regular
/// element certificate. Buckets that cancel to zero stay in the report.
pub fn cancellation_check(
    group: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
    profiles: &[CoxeterProfile],
    cert: &RegularElementCert,
    weighted: bool,
) -> Result<CancellationReport> {
    let gc = classes.class_of[cert.class_rep as usize] as usize;
    let modulus = cert.order;
    let mut buckets_map: std::collections::BTreeMap<Vec<u64>, Cyclotomic> =
        std::collections::BTreeMap::new();
    for chi in 0..table.num_characters() {
        let key = if weighted {
            profiles[chi].local.clone()
        } else {
            vec![profiles[chi].total]
        };
        let value = table.value_at_inverse(classes, chi, gc);
        let coeff = value.scale(&crate::rational::rat_from_i64(table.degrees[chi] as i64));
        let entry = buckets_map.entry(key).or_insert_with(Cyclotomic::zero);
        *entry = entry.add(&coeff);
    }
    let moduli = vec![modulus; if weighted { group.orbits().len() } else { 1 }];
    let mut buckets = Vec::new();
    for (key, coeff) in buckets_map {
        let survives = key.iter().all(|&c| modulus != 0 && c % modulus == 0);
        let coefficient_zero = coeff.is_zero();
        if !survives && !coefficient_zero {
            return Err(Error::CancellationViolation(format!(
                "bucket {key:?} (|g| = {modulus}) has nonzero coefficient {coeff}"
            )));
        }
        buckets.push(BucketVerdict {
            exponents: key,
            survives,
            coefficient_zero,
        });
    }
    Ok(CancellationReport {
        weighted,
        moduli,
        buckets,
    })
}

/// The bucket filter on an already-assembled form (used for product forms
/// with per-component moduli).
pub fn cancellation_check_form(form: &EgfForm) -> Result<CancellationReport> {
    let mut buckets = Vec::new();
    for (key, coeff) in &form.terms {
        let survives = key
            .iter()
            .zip(&form.moduli)
            .all(|(&c, &m)| m != 0 && c % m == 0);
        let coefficient_zero = coeff.is_zero();
        if !survives && !coefficient_zero {
            return Err(Error::CancellationViolation(format!(
                "bucket {key:?} (moduli {:?}) has nonzero coefficient {coeff}",
                form.moduli
            )));
        }
        buckets.push(BucketVerdict {
            exponents: key.clone(),
            survives,
            coefficient_zero,
        });
    }
    Ok(CancellationReport {
        weighted: form.weighted,
        moduli: form.moduli.clone(),
        buckets,
    })
}

/// The residual polynomial of the factorization EGF.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum PhiPoly {
    Uni(CycPoly),
    Multi(MultiPoly),
}

impl PhiPoly {
    pub fn is_one(&self) -> bool {
        match self {
            PhiPoly::Uni(p) => p.degree() == Some(0) && p.coeff(0).is_one(),
            PhiPoly::Multi(p) => p.is_one(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiResult {
    pub phi: PhiPoly,
    /// l_R(g) (unweighted) or the n_C(g) vector (weighted).
    pub lead_exponents: Vec<u64>,
    pub degree_check: bool,
    pub constant_term_check: bool,
    pub moduli: Vec<u64>,
}

/// Extracts Φ: divides the aggregated polynomial by the maximal power of
/// (1 - X) per variable as predicted by the Cayley-graph lengths, verifying
/// exact divisibility, non-divisibility beyond it, the degree formula,
/// constant term 1, and integer coefficients.
pub fn phi_extract(
    group: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
    profiles: &[CoxeterProfile],
    cert: &RegularElementCert,
    weighted: bool,
) -> Result<PhiResult> {
    let form = egf_form(group, classes, table, profiles, cert.class_rep, weighted)?;
    cancellation_check_form(&form)?;
    let g = cert.class_rep;
    let lead: Vec<u64> = if weighted {
        (0..group.orbits().len())
            .map(|oi| group.min_orbit_count(g, oi) as u64)
            .collect()
    } else {
        vec![group.reflection_length(g) as u64]
    };
    let expected_degrees: Vec<u64> = if weighted {
        group
            .orbits()
            .iter()
            .zip(&form.moduli)
            .zip(&lead)
            .map(|((o, &m), &n)| o.ew() / m - n)
            .collect()
    } else {
        let total = (group.num_reflections() + group.num_hyperplanes()) as u64;
        vec![total / form.moduli[0] - lead[0]]
    };
    phi_from_form(&form, &lead, &expected_degrees)
}

/// Core Φ computation from a form (also used for product forms).
pub fn phi_from_form(
    form: &EgfForm,
    lead: &[u64],
    expected_degrees: &[u64],
) -> Result<PhiResult> {
    // Assemble tilde-Φ with exponents c / modulus and integer coefficients.
    let nvars = form.moduli.len();
    let labels: Vec<String> = if form.weighted {
        form.variable_labels.clone()
    } else {
        vec!["X".to_string()]
    };
    let mut tilde = MultiPoly::zero(labels);
    for (key, coeff) in &form.terms {
        let c = coeff.to_rational().map_err(|_| {
            Error::PhiExtraction(format!("bucket {key:?} coefficient {coeff} is irrational"))
        })?;
        if !c.is_integer() {
            return Err(Error::PhiExtraction(format!(
                "bucket {key:?} coefficient {c} is not an integer"
            )));
        }
        let exps: Vec<u32> = key
            .iter()
            .zip(&form.moduli)
            .map(|(&v, &m)| (v / m) as u32)
            .collect();
        tilde.add_term(exps, Cyclotomic::from_rational(c));
    }

    // Divide by (1 - X_i)^{lead[i]} exactly, per variable.
    let mut phi = tilde;
    for (i, &n) in lead.iter().enumerate() {
        for _ in 0..n {
            phi = phi.div_one_minus_var(i).map_err(|_| {
                Error::PhiExtraction(format!(
                    "(1-X) division not exact in variable {i}: predicted multiplicity {n}"
                ))
            })?;
        }
        if phi.divisible_by_one_minus_var(i) {
            return Err(Error::PhiExtraction(format!(
                "Φ still divisible by (1-X) in variable {i} beyond multiplicity {n}"
            )));
        }
    }

    let constant_term_check = phi.constant_term().is_one();
    if !constant_term_check {
        return Err(Error::PhiExtraction(format!(
            "Φ has constant term {}, expected 1",
            phi.constant_term()
        )));
    }
    for (i, &d) in expected_degrees.iter().enumerate() {
        if phi.degree_in(i) as u64 != d {
            return Err(Error::PhiExtraction(format!(
                "Φ has degree {} in variable {i}, expected {d}",
                phi.degree_in(i)
            )));
        }
    }
    let degree_check = true;
    for (exps, c) in phi.terms() {
        let r = c.to_rational().map_err(|_| {
            Error::PhiExtraction(format!("Φ coefficient at {exps:?} is irrational"))
        })?;
        if !r.is_integer() {
            return Err(Error::PhiExtraction(format!(
                "Φ coefficient {r} at {exps:?} is not an integer"
            )));
        }
    }

    let phi = if nvars == 1 && !form.weighted {
        PhiPoly::Uni(phi.to_univariate().expect("single variable"))
    } else {
        PhiPoly::Multi(phi)
    };
    Ok(PhiResult {
        phi,
        lead_exponents: lead.to_vec(),
        degree_check,
        constant_term_check,
        moduli: form.moduli.clone(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChapuyStumpReport {
    pub d_n: u64,
    pub reflection_length: u64,
    pub phi_is_one: bool,
    pub lengths_checked: usize,
}

/// For a d_n-regular element: Φ = 1, l_R(g) = (|R|+|A|)/d_n, and the closed
/// form e^{t|R|}/|W| (1-e^{-t·d_n})^{l_R} matches the DP oracle.
pub fn chapuy_stump_verify(
    group: &ReflectionGroup,
    classes: &ClassData,
    table: &CharacterTable,
    profiles: &[CoxeterProfile],
    caps: &Caps,
    lmax: usize,
) -> Result<ChapuyStumpReport> {
    let d_n = *group.degrees().last().ok_or_else(|| {
        Error::NoRegularElement("trivial group has no largest degree".into())
    })?;
    let certs = find_regular_elements(group, d_n);
    let cert = certs.first().ok_or_else(|| {
        Error::NoRegularElement(format!("d_n = {d_n} is not a regular number here"))
    })?;
    let result = phi_extract(group, classes, table, profiles, cert, false)?;
    if !result.phi.is_one() {
        return Err(Error::VerificationFailure(format!(
            "Φ differs from 1 for the d_n-regular class: {:?}",
            result.phi
        )));
    }
    let total = (group.num_reflections() + group.num_hyperplanes()) as u64;
    let l_r = result.lead_exponents[0];
    if l_r != total / d_n {
        return Err(Error::VerificationFailure(format!(
            "l_R = {l_r} differs from (|R|+|A|)/d_n = {}",
            total / d_n
        )));
    }
    // Expand the closed form and compare with the DP oracle.
    let closed = ExpSum::closed_form(
        &BigInt::from(group.order()),
        group.num_reflections() as i64,
        d_n,
        l_r as u32,
    );
    let mut lengths_checked = 0;
    if group.order() <= caps.dp_oracle_max {
        let layers = super::oracle::brute_force_counts_upto(group, caps, lmax)?;
        for l in 0..=lmax {
            let expected = closed.fact(l);
            let dp = crate::rational::Rational::from_integer(
                layers[l][cert.class_rep as usize].clone(),
            );
            if expected != dp {
                return Err(Error::VerificationFailure(format!(
                    "closed form disagrees with oracle at length {l}: {expected} vs {dp}"
                )));
            }
            lengths_checked += 1;
        }
    }
    Ok(ChapuyStumpReport {
        d_n,
        reflection_length: l_r,
        phi_is_one: true,
        lengths_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character_table, conjugacy_classes};
    use crate::coxeter::all_profiles;
    use crate::group::build_group;
    use crate::group::GroupSpec;

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
        Ctx { group, classes, table, profiles }
    }

    fn phi_coeffs(result: &PhiResult) -> Vec<i64> {
        match &result.phi {
            PhiPoly::Uni(p) => p
                .coeffs()
                .iter()
                .map(|c| {
                    let r = c.to_rational().unwrap();
                    assert!(r.is_integer());
                    i64::try_from(r.numer().clone()).unwrap()
                })
                .collect(),
            PhiPoly::Multi(_) => panic!("expected univariate"),
        }
    }

    #[test]
    fn near_coxeter_phi_polynomial_in_sn() {
        // Φ(X) = 1 + (n-2)X + X² for the regular element (12⋯n-1)(n).
        for (spec, n) in [("S3", 3i64), ("S4", 4), ("S5", 5)] {
            let ctx = setup(spec);
            let certs = find_regular_elements(&ctx.group, (n - 1) as u64);
            assert!(!certs.is_empty(), "(n-1)-regular class in {spec}");
            let r = phi_extract(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, &certs[0], false)
                .unwrap();
            assert_eq!(phi_coeffs(&r), vec![1, n - 2, 1], "{spec}");
        }
    }

    #[test]
    fn coxeter_class_phi_is_one_in_b2() {
        let ctx = setup("B2");
        let certs = find_regular_elements(&ctx.group, 4);
        let r = phi_extract(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, &certs[0], false)
            .unwrap();
        assert!(r.phi.is_one());
        assert_eq!(r.lead_exponents, vec![2]);
    }

    #[test]
    fn weighted_phi_for_b2_coxeter() {
        let ctx = setup("B2");
        let certs = find_regular_elements(&ctx.group, 4);
        let r = phi_extract(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, &certs[0], true)
            .unwrap();
        assert!(r.phi.is_one());
        // n_C = e_C·ω_C / |g| = 4/4 = 1 for each orbit.
        assert_eq!(r.lead_exponents, vec![1, 1]);
        assert_eq!(r.moduli, vec![4, 4]);
    }

    #[test]
    fn cancellation_buckets_for_s4_coxeter() {
        let ctx = setup("S4");
        let certs = find_regular_elements(&ctx.group, 4);
        let report =
            cancellation_check(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, &certs[0], false)
                .unwrap();
        // Surviving buckets only at multiples of 4; everything else vanished.
        for b in &report.buckets {
            assert!(b.survives || b.coefficient_zero);
            assert_eq!(b.survives, b.exponents[0] % 4 == 0);
        }
        // c_χ = 6 (the 2-dim character) is not a multiple of 4: it must
        // appear in the report as a vanished bucket.
        let vanished: Vec<u64> = report
            .buckets
            .iter()
            .filter(|b| !b.survives)
            .map(|b| b.exponents[0])
            .collect();
        assert_eq!(vanished, vec![6]);
        // Identity (|g| = 1): vacuously true, no non-surviving buckets.
        let id_certs = find_regular_elements(&ctx.group, 1);
        let report =
            cancellation_check(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, &id_certs[0], false)
                .unwrap();
        assert!(report.buckets.iter().all(|b| b.survives));
    }

    #[test]
    fn chapuy_stump_small_groups() {
        let caps = Caps::default();
        for spec in ["S4", "B2", "B3", "G(3,1,2)"] {
            let ctx = setup(spec);
            let report =
                chapuy_stump_verify(&ctx.group, &ctx.classes, &ctx.table, &ctx.profiles, &caps, 6)
                    .unwrap();
            assert!(report.phi_is_one, "{spec}");
            assert_eq!(report.lengths_checked, 7, "{spec}");
            let total = (ctx.group.num_reflections() + ctx.group.num_hyperplanes()) as u64;
            assert_eq!(report.reflection_length, total / report.d_n, "{spec}");
        }
    }
}
