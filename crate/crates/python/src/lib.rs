//! Python bindings: group construction, character data, factorization
//! counts, and the Φ extraction, mirroring the CLI surface.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use reflfact_core::config::Caps;
use reflfact_core::error::Error;
use reflfact_core::factor::{
    brute_force_count, cancellation_check, frobenius_count, phi_extract,
    transitive_oracle_counts, PhiPoly,
};
use reflfact_core::group::{find_regular_elements, GroupSpec};
use reflfact_core::verify::{resolve_element, run_verify, Session};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Parses and canonicalizes a group spec string.
#[pyfunction]
fn parse_group_spec(spec: &str) -> PyResult<String> {
    Ok(GroupSpec::parse(spec).map_err(to_py_err)?.to_string())
}

/// Transitive transposition-factorization counts of (12⋯n-1)(n) in S_n for
/// lengths 0..=lmax.
#[pyfunction]
fn transitive_counts(n: usize, lmax: usize) -> PyResult<Vec<BigInt>> {
    transitive_oracle_counts(n, lmax).map_err(to_py_err)
}

/// A fully built complex reflection group with its exact character table.
#[pyclass(name = "ReflectionGroup")]
struct PyReflectionGroup {
    session: Session,
    caps: Caps,
    spec: GroupSpec,
}

impl PyReflectionGroup {
    fn element(&self, selector: &str) -> PyResult<u32> {
        resolve_element(&self.session, selector).map_err(to_py_err)
    }

    fn certificate(&self, selector: &str) -> PyResult<reflfact_core::group::RegularElementCert> {
        let g = self.element(selector)?;
        let d = self.session.group.order_of(g) as u64;
        let class = self.session.classes.class_of[g as usize];
        find_regular_elements(&self.session.group, d)
            .into_iter()
            .find(|c| self.session.classes.class_of[c.class_rep as usize] == class)
            .ok_or_else(|| PyValueError::new_err(format!("element {selector} is not regular")))
    }
}

#[pymethods]
impl PyReflectionGroup {
    #[new]
    #[pyo3(signature = (spec, max_order=None, seed=0))]
    fn new(spec: &str, max_order: Option<usize>, seed: u64) -> PyResult<Self> {
        let spec = GroupSpec::parse(spec).map_err(to_py_err)?;
        let mut caps = Caps::default();
        if let Some(m) = max_order {
            caps.max_order = m;
        }
        let session = Session::build(&spec, &caps, seed, None).map_err(to_py_err)?;
        Ok(PyReflectionGroup { session, caps, spec })
    }

    fn __repr__(&self) -> String {
        format!(
            "ReflectionGroup('{}', order={}, rank={})",
            self.spec,
            self.session.group.order(),
            self.session.group.rank()
        )
    }

    #[getter]
    fn spec(&self) -> String {
        self.spec.to_string()
    }

    fn order(&self) -> usize {
        self.session.group.order()
    }

    fn rank(&self) -> usize {
        self.session.group.rank()
    }

    fn num_reflections(&self) -> usize {
        self.session.group.num_reflections()
    }

    fn num_hyperplanes(&self) -> usize {
        self.session.group.num_hyperplanes()
    }

    fn degrees(&self) -> Vec<u64> {
        self.session.group.degrees().to_vec()
    }

    /// The Coxeter number h = (|R|+|A|)/n when integral.
    fn coxeter_number(&self) -> Option<u64> {
        self.session.group.coxeter_h()
    }

    fn is_irreducible(&self) -> bool {
        self.session.group.is_irreducible()
    }

    /// Hyperplane orbits as (label, e_C, omega_C) triples.
    fn orbits(&self) -> Vec<(String, u64, u64)> {
        self.session
            .group
            .orbits()
            .iter()
            .map(|o| (o.label.clone(), o.stabilizer_order, o.size))
            .collect()
    }

    fn class_sizes(&self) -> Vec<usize> {
        self.session
            .classes
            .classes
            .iter()
            .map(|c| c.size)
            .collect()
    }

    fn character_degrees(&self) -> Vec<u64> {
        self.session.table.degrees.clone()
    }

    /// Character values as strings, indexed [character][class].
    fn character_values(&self) -> Vec<Vec<String>> {
        self.session
            .table
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect()
    }

    /// Coxeter numbers per character as (c_total, per-orbit) pairs.
    fn coxeter_numbers(&self) -> Vec<(u64, Vec<u64>)> {
        self.session
            .profiles
            .iter()
            .map(|p| (p.total, p.local.clone()))
            .collect()
    }

    /// Regular numbers d together with the number of regular (class, power)
    /// certificates.
    fn regular_numbers(&self) -> Vec<(u64, usize)> {
        let mut out = Vec::new();
        let mut orders: Vec<u64> = (0..self.session.group.order() as u32)
            .map(|i| self.session.group.order_of(i) as u64)
            .collect();
        orders.sort_unstable();
        orders.dedup();
        for d in orders {
            let certs = find_regular_elements(&self.session.group, d);
            if !certs.is_empty() {
                out.push((d, certs.len()));
            }
        }
        out
    }

    /// Number of length-l reflection factorizations via the character-sum
    /// formula. Selector: identity | coxeter | regular:<d> | class:<k> |
    /// elem:<i>.
    fn count(&self, element: &str, length: usize) -> PyResult<BigInt> {
        let g = self.element(element)?;
        frobenius_count(
            &self.session.group,
            &self.session.classes,
            &self.session.table,
            g,
            length,
        )
        .map_err(to_py_err)
    }

    /// The same count by the brute-force DP oracle.
    fn count_oracle(&self, element: &str, length: usize) -> PyResult<BigInt> {
        let g = self.element(element)?;
        brute_force_count(&self.session.group, &self.caps, g, length).map_err(to_py_err)
    }

    fn reflection_length(&self, element: &str) -> PyResult<u32> {
        let g = self.element(element)?;
        Ok(self.session.group.reflection_length(g))
    }

    fn min_orbit_count(&self, element: &str, orbit: usize) -> PyResult<u32> {
        let g = self.element(element)?;
        if orbit >= self.session.group.orbits().len() {
            return Err(PyValueError::new_err("orbit index out of range"));
        }
        Ok(self.session.group.min_orbit_count(g, orbit))
    }

    /// Φ data for a regular element: coefficients ascending for the
    /// univariate case, (exponents, coefficient) pairs when weighted.
    #[pyo3(signature = (element, weighted=false))]
    fn phi(&self, py: Python<'_>, element: &str, weighted: bool) -> PyResult<PyObject> {
        let cert = self.certificate(element)?;
        cancellation_check(
            &self.session.group,
            &self.session.classes,
            &self.session.table,
            &self.session.profiles,
            &cert,
            weighted,
        )
        .map_err(to_py_err)?;
        let result = phi_extract(
            &self.session.group,
            &self.session.classes,
            &self.session.table,
            &self.session.profiles,
            &cert,
            weighted,
        )
        .map_err(to_py_err)?;
        let dict = pyo3::types::PyDict::new(py);
        dict.set_item("lead_exponents", result.lead_exponents.clone())?;
        dict.set_item("moduli", result.moduli.clone())?;
        match &result.phi {
            PhiPoly::Uni(p) => {
                let coeffs: Vec<BigInt> = p
                    .coeffs()
                    .iter()
                    .map(|c| c.to_bigint().map_err(to_py_err))
                    .collect::<PyResult<_>>()?;
                dict.set_item("coefficients", coeffs)?;
                dict.set_item("text", p.to_string())?;
            }
            PhiPoly::Multi(p) => {
                let terms: Vec<(Vec<u32>, BigInt)> = p
                    .terms()
                    .iter()
                    .map(|(k, c)| Ok((k.clone(), c.to_bigint().map_err(to_py_err)?)))
                    .collect::<PyResult<_>>()?;
                dict.set_item("terms", terms)?;
                dict.set_item("variables", p.variables().to_vec())?;
                dict.set_item("text", p.to_string())?;
            }
        }
        Ok(dict.into())
    }

    /// Runs the full invariant suite; returns the manifest as a JSON string.
    fn verify_json(&self) -> PyResult<String> {
        let manifest = run_verify(&self.spec, &self.caps, 0, None).map_err(to_py_err)?;
        serde_json::to_string(&manifest).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

#[pymodule]
fn reflfact_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyReflectionGroup>()?;
    m.add_function(wrap_pyfunction!(parse_group_spec, m)?)?;
    m.add_function(wrap_pyfunction!(transitive_counts, m)?)?;
    Ok(())
}
