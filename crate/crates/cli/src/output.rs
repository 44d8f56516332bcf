//! Text and JSON rendering for every subcommand. JSON output is
//! deterministic: sorted keys, versioned schema, decimal-string integers.

use num_bigint::BigInt;
use serde::Serialize;

use reflfact_core::cyclotomic::Cyclotomic;
use reflfact_core::factor::{
    CancellationReport, ChapuyStumpReport, EgfForm, PhiPoly, PhiResult, TransitiveReport,
};
use reflfact_core::group::{GroupSpec, RegularElementCert};
use reflfact_core::matrix::CycMatrix;
use reflfact_core::verify::{RunManifest, Session};

pub const OUTPUT_SCHEMA_VERSION: u32 = 1;

/// Writes a line to stdout, exiting quietly when the pipe is closed.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut stdout = std::io::stdout();
        if writeln!(stdout, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut stdout = std::io::stdout();
        if write!(stdout, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

fn emit<T: Serialize>(value: &T) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

#[derive(Serialize)]
struct ElementInfo {
    selector: String,
    element_index: u32,
    class_index: u32,
    order: u32,
    representative: CycMatrix,
}

fn element_info(session: &Session, selector: &str, g: u32) -> ElementInfo {
    ElementInfo {
        selector: selector.to_string(),
        element_index: g,
        class_index: session.classes.class_of[g as usize],
        order: session.group.order_of(g),
        representative: session.group.element(g).clone(),
    }
}

#[derive(Serialize)]
struct CountOutput {
    schema_version: u32,
    group: String,
    element: ElementInfo,
    length: usize,
    count: String,
    oracle_count: Option<String>,
}

#[allow(clippy::too_many_arguments)]
pub fn print_count(
    session: &Session,
    spec: &GroupSpec,
    selector: &str,
    g: u32,
    length: usize,
    count: &BigInt,
    oracle: Option<&BigInt>,
    json: bool,
) {
    if json {
        emit(&CountOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            group: spec.to_string(),
            element: element_info(session, selector, g),
            length,
            count: count.to_string(),
            oracle_count: oracle.map(|o| o.to_string()),
        });
    } else {
        outln!(
            "Fact_{{{spec}, {selector}}}({length}) = {count}{}",
            if oracle.is_some() { "  (oracle agrees)" } else { "" }
        );
    }
}

#[derive(Serialize)]
struct EgfTerm {
    exponents: Vec<u64>,
    coefficient: Cyclotomic,
}

#[derive(Serialize)]
struct EgfOutput {
    schema_version: u32,
    group: String,
    element: ElementInfo,
    weighted: bool,
    group_order: String,
    variable_labels: Vec<String>,
    global_exponent: Vec<u64>,
    moduli: Vec<u64>,
    terms: Vec<EgfTerm>,
}

pub fn print_egf(
    session: &Session,
    spec: &GroupSpec,
    selector: &str,
    g: u32,
    form: &EgfForm,
    json: bool,
) {
    let terms: Vec<EgfTerm> = form
        .terms
        .iter()
        .map(|(k, c)| EgfTerm {
            exponents: k.clone(),
            coefficient: c.clone(),
        })
        .collect();
    if json {
        emit(&EgfOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            group: spec.to_string(),
            element: element_info(session, selector, g),
            weighted: form.weighted,
            group_order: form.group_order.to_string(),
            variable_labels: form.variable_labels.clone(),
            global_exponent: form.global_exponent.clone(),
            moduli: form.moduli.clone(),
            terms,
        });
    } else {
        outln!("FAC_{{{spec}, {selector}}}:");
        if form.weighted {
            outln!(
                "  prefactor exp(z·Σ w_C·|C^ref|) with |C^ref| = {:?} over orbits {:?}, scale 1/{}",
                form.global_exponent, form.variable_labels, form.group_order
            );
        } else {
            outln!(
                "  prefactor exp({}·t), scale 1/{}",
                form.global_exponent[0], form.group_order
            );
        }
        for t in terms {
            outln!("  exponents {:?}: {}", t.exponents, t.coefficient);
        }
    }
}

#[derive(Serialize)]
struct PhiTermOut {
    exponents: Vec<u32>,
    coefficient: Cyclotomic,
}

#[derive(Serialize)]
struct BucketOut {
    exponents: Vec<u64>,
    survives: bool,
    coefficient_zero: bool,
}

#[derive(Serialize)]
struct PhiOutput {
    schema_version: u32,
    group: String,
    element: ElementInfo,
    /// |g| per variable (per-component for products of forms).
    moduli: Vec<u64>,
    /// l_R(g) for the univariate case, the n_C(g) vector otherwise.
    lead_exponents: Vec<u64>,
    variables: Vec<String>,
    phi_terms: Vec<PhiTermOut>,
    phi_text: String,
    degree_check: bool,
    constant_term_check: bool,
    cancellation_buckets: Vec<BucketOut>,
}

pub fn print_phi(
    session: &Session,
    spec: &GroupSpec,
    selector: &str,
    cert: &RegularElementCert,
    cancellation: &CancellationReport,
    result: &PhiResult,
    json: bool,
) {
    let (variables, phi_terms, phi_text) = match &result.phi {
        PhiPoly::Uni(p) => {
            let terms = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| PhiTermOut {
                    exponents: vec![k as u32],
                    coefficient: c.clone(),
                })
                .collect();
            (vec!["X".to_string()], terms, p.to_string())
        }
        PhiPoly::Multi(p) => {
            let terms = p
                .terms()
                .iter()
                .map(|(k, c)| PhiTermOut {
                    exponents: k.clone(),
                    coefficient: c.clone(),
                })
                .collect();
            (p.variables().to_vec(), terms, p.to_string())
        }
    };
    let buckets: Vec<BucketOut> = cancellation
        .buckets
        .iter()
        .map(|b| BucketOut {
            exponents: b.exponents.clone(),
            survives: b.survives,
            coefficient_zero: b.coefficient_zero,
        })
        .collect();
    if json {
        emit(&PhiOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            group: spec.to_string(),
            element: element_info(session, selector, cert.class_rep),
            moduli: result.moduli.clone(),
            lead_exponents: result.lead_exponents.clone(),
            variables,
            phi_terms,
            phi_text,
            degree_check: result.degree_check,
            constant_term_check: result.constant_term_check,
            cancellation_buckets: buckets,
        });
    } else {
        outln!("group {spec}, element {selector} (|g| = {})", cert.order);
        outln!("  lead exponents: {:?}", result.lead_exponents);
        outln!("  Φ = {phi_text}");
        outln!(
            "  degree check: {}, constant term 1: {}",
            result.degree_check, result.constant_term_check
        );
        let vanished = buckets.iter().filter(|b| !b.survives).count();
        outln!("  cancellation: {vanished} non-multiple buckets vanish exactly");
    }
}

pub fn print_manifest(manifest: &RunManifest, json: bool) {
    if json {
        emit(manifest);
    } else {
        outln!(
            "verify {} (|W| = {}, seed {}):",
            manifest.group_spec, manifest.group_order, manifest.seed
        );
        for c in &manifest.checks {
            outln!(
                "  [{}] {} — {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        outln!("result: {}", if manifest.passed { "PASS" } else { "FAIL" });
    }
}

#[derive(Serialize)]
struct TransitiveOutput {
    schema_version: u32,
    n: u32,
    min_length: usize,
    lengths_checked: usize,
    oracle_counts: Vec<String>,
}

pub fn print_transitive(report: &TransitiveReport, counts: &[BigInt], json: bool) {
    if json {
        emit(&TransitiveOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            n: report.n,
            min_length: report.min_length,
            lengths_checked: report.lengths_checked,
            oracle_counts: counts.iter().map(|c| c.to_string()).collect(),
        });
    } else {
        outln!(
            "transitive factorizations of (12⋯{})({}) in S{}:",
            report.n - 1,
            report.n,
            report.n
        );
        outln!("  closed form matches subtraction and the DP oracle");
        outln!("  minimal length {}", report.min_length);
        for (l, c) in counts.iter().enumerate() {
            outln!("  l = {l}: {c}");
        }
    }
}

#[derive(Serialize)]
struct ClassOut {
    index: usize,
    size: usize,
    order: u32,
    representative: CycMatrix,
}

#[derive(Serialize)]
struct CharacterOut {
    index: usize,
    degree: u64,
    values: Vec<Cyclotomic>,
}

#[derive(Serialize)]
struct ChartableOutput {
    schema_version: u32,
    group: String,
    order: usize,
    classes: Vec<ClassOut>,
    characters: Vec<CharacterOut>,
    trivial_index: usize,
    det_index: usize,
}

pub fn print_chartable(session: &Session, spec: &GroupSpec, json: bool) {
    let classes: Vec<ClassOut> = session
        .classes
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| ClassOut {
            index: i,
            size: c.size,
            order: session.group.order_of(c.rep),
            representative: session.group.element(c.rep).clone(),
        })
        .collect();
    let characters: Vec<CharacterOut> = session
        .table
        .values
        .iter()
        .enumerate()
        .map(|(i, row)| CharacterOut {
            index: i,
            degree: session.table.degrees[i],
            values: row.clone(),
        })
        .collect();
    if json {
        emit(&ChartableOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            group: spec.to_string(),
            order: session.group.order(),
            classes,
            characters,
            trivial_index: session.table.trivial_index,
            det_index: session.table.det_index,
        });
    } else {
        outln!("character table of {spec} (|W| = {}):", session.group.order());
        out!("classes: ");
        for c in &classes {
            out!("#{}(size {}, order {}) ", c.index, c.size, c.order);
        }
        outln!();
        for ch in &characters {
            let vals: Vec<String> = ch.values.iter().map(|v| v.to_string()).collect();
            outln!("χ_{} (deg {}): [{}]", ch.index, ch.degree, vals.join(", "));
        }
    }
}

#[derive(Serialize)]
struct CoxnumRow {
    character: usize,
    degree: u64,
    c_total: u64,
    c_local: Vec<u64>,
}

#[derive(Serialize)]
struct CoxnumsOutput {
    schema_version: u32,
    group: String,
    orbit_labels: Vec<String>,
    orbit_ew: Vec<u64>,
    rows: Vec<CoxnumRow>,
}

pub fn print_coxnums(session: &Session, spec: &GroupSpec, json: bool) {
    let labels: Vec<String> = session
        .group
        .orbits()
        .iter()
        .map(|o| o.label.clone())
        .collect();
    let ew: Vec<u64> = session.group.orbits().iter().map(|o| o.ew()).collect();
    let rows: Vec<CoxnumRow> = session
        .profiles
        .iter()
        .enumerate()
        .map(|(i, p)| CoxnumRow {
            character: i,
            degree: session.table.degrees[i],
            c_total: p.total,
            c_local: p.local.clone(),
        })
        .collect();
    if json {
        emit(&CoxnumsOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            group: spec.to_string(),
            orbit_labels: labels,
            orbit_ew: ew,
            rows,
        });
    } else {
        outln!("Coxeter numbers for {spec}:");
        outln!("orbits: {labels:?} with e_C·ω_C = {ew:?}");
        outln!("{:>4} {:>6} {:>8}  per-orbit", "χ", "deg", "c_χ");
        for r in rows {
            outln!(
                "{:>4} {:>6} {:>8}  {:?}",
                r.character, r.degree, r.c_total, r.c_local
            );
        }
    }
}

#[derive(Serialize)]
struct ChapuyStumpOutput {
    schema_version: u32,
    group: String,
    d_n: u64,
    reflection_length: u64,
    phi_is_one: bool,
    lengths_checked: usize,
}

pub fn print_chapuy_stump(spec: &GroupSpec, report: &ChapuyStumpReport, json: bool) {
    if json {
        emit(&ChapuyStumpOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            group: spec.to_string(),
            d_n: report.d_n,
            reflection_length: report.reflection_length,
            phi_is_one: report.phi_is_one,
            lengths_checked: report.lengths_checked,
        });
    } else {
        outln!(
            "{spec}: d_n = {}, l_R = {}, Φ = 1, closed form checked to length {}",
            report.d_n,
            report.reflection_length,
            report.lengths_checked.saturating_sub(1)
        );
    }
}
