//! Python bindings for the block functor engine.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use block_functors::automorphism::AutomorphismGroup;
use block_functors::family::build;
use block_functors::fusion::{build_fusion, fusion_isomorphic};
use block_functors::multiplicity::{
    decompose, first_difference, functorially_equivalent, num_simple_modules,
    DecompositionTable as CoreTable,
};
use block_functors::oracle::verify_all;
use block_functors::report::{fusion_rows, taxonomy_rows, BlockSpec};
use block_functors::{Error, FusionSystem as CoreFusion};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidSpec { .. }
        | Error::InvalidFamily(_)
        | Error::InvalidFusionLabel { .. }
        | Error::QuaternionEightDeferred => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn block(spec: &str) -> PyResult<CoreFusion> {
    let s = BlockSpec::parse(spec, true).map_err(to_py)?;
    build_fusion(s.family, s.label()).map_err(to_py)
}

/// Summary of a family group `family:n`.
#[pyclass(frozen)]
struct FamilyGroup {
    #[pyo3(get)]
    family: String,
    #[pyo3(get)]
    n: u32,
    #[pyo3(get)]
    order: usize,
    #[pyo3(get)]
    subgroup_count: usize,
    #[pyo3(get)]
    automorphism_count: usize,
    #[pyo3(get)]
    out_order: usize,
}

#[pymethods]
impl FamilyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let s = BlockSpec::parse(spec, false).map_err(to_py)?;
        let g = build(s.family).map_err(to_py)?;
        let aut = AutomorphismGroup::compute(&g).map_err(to_py)?;
        Ok(FamilyGroup {
            family: s.family.kind.to_string(),
            n: s.family.n,
            order: g.order(),
            subgroup_count: g.enumerate_subgroups().map_err(to_py)?.len(),
            automorphism_count: aut.len(),
            out_order: aut.out_group().order(),
        })
    }

    /// Labelled conjugacy classes of subgroups as dicts.
    fn taxonomy<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let s = BlockSpec::parse(&format!("{}:{}", self.family, self.n), false).map_err(to_py)?;
        taxonomy_rows(s.family)
            .map_err(to_py)?
            .into_iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("label", r.label)?;
                d.set_item("generators", r.generators)?;
                d.set_item("type", r.iso.tag.name())?;
                d.set_item("order", r.order)?;
                d.set_item("class_size", r.class_size)?;
                d.set_item("normalizer", r.normalizer)?;
                Ok(d)
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("FamilyGroup('{}:{}')", self.family, self.n)
    }
}

/// Fusion system of a block `family:n:label`.
#[pyclass(frozen)]
struct FusionSystem {
    inner: CoreFusion,
}

#[pymethods]
impl FusionSystem {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(FusionSystem { inner: block(spec)? })
    }

    #[getter]
    fn spec(&self) -> String {
        format!("{}:{}", self.inner.family(), self.inner.label())
    }

    #[getter]
    fn num_simple_modules(&self) -> PyResult<usize> {
        num_simple_modules(self.inner.family(), self.inner.label()).map_err(to_py)
    }

    /// F-classes of subgroups as dicts.
    fn classes<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        fusion_rows(&self.inner)
            .map_err(to_py)?
            .into_iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("labels", r.labels)?;
                d.set_item("representative", r.representative)?;
                d.set_item("type", r.iso.tag.name())?;
                d.set_item("order", r.iso.order)?;
                d.set_item("subgroups", r.subgroups)?;
                d.set_item("out_f_order", r.out_f_order)?;
                d.set_item("enhanced", r.enhanced)?;
                Ok(d)
            })
            .collect()
    }

    fn isomorphic_to(&self, other: &FusionSystem) -> PyResult<bool> {
        fusion_isomorphic(&self.inner, &other.inner).map_err(to_py)
    }

    fn decompose(&self) -> PyResult<DecompositionTable> {
        Ok(DecompositionTable {
            inner: decompose(&self.inner).map_err(to_py)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("FusionSystem('{}')", self.spec())
    }
}

/// Multiplicities of the simple functors in a block functor.
#[pyclass(frozen)]
struct DecompositionTable {
    inner: CoreTable,
}

#[pymethods]
impl DecompositionTable {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(DecompositionTable {
            inner: CoreTable::from_json(text).map_err(to_py)?,
        })
    }

    #[getter]
    fn spec(&self) -> String {
        self.inner.spec()
    }

    /// Entries as `(l_type, l_order, u, v_kind, v_exponents, m)` tuples.
    fn entries(&self) -> Vec<(String, usize, String, String, Vec<usize>, usize)> {
        self.inner
            .entries
            .iter()
            .map(|e| {
                (
                    e.l.tag.name().to_string(),
                    e.l.order,
                    e.u.to_string(),
                    e.v.kind.name().to_string(),
                    e.v.exponents.clone(),
                    e.m,
                )
            })
            .collect()
    }

    /// Multiplicity of `S_1`, the simple functor at the trivial pair.
    fn trivial_multiplicity(&self) -> usize {
        self.inner
            .entries
            .iter()
            .find(|e| e.l.order == 1)
            .map_or(0, |e| e.m)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn __len__(&self) -> usize {
        self.inner.entries.len()
    }

    fn __eq__(&self, other: &DecompositionTable) -> bool {
        functorially_equivalent(&self.inner, &other.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("DecompositionTable('{}', {} entries)", self.inner.spec(), self.inner.entries.len())
    }
}

#[pyfunction]
fn decompose_block(spec: &str) -> PyResult<DecompositionTable> {
    FusionSystem::new(spec)?.decompose()
}

/// Whether two blocks have the same functor, and the first differing label if not.
#[pyfunction]
fn equivalent(a: &str, b: &str) -> PyResult<(bool, Option<(String, usize, usize)>)> {
    let ta = decompose(&block(a)?).map_err(to_py)?;
    let tb = decompose(&block(b)?).map_err(to_py)?;
    let diff = first_difference(&ta, &tb).map(|(l, x, y)| (l.to_string(), x, y));
    Ok((functorially_equivalent(&ta, &tb), diff))
}

/// True when every table for `n ≤ max_n` matches the reference rows.
#[pyfunction]
#[pyo3(signature = (max_n=5))]
fn verify(py: Python<'_>, max_n: u32) -> PyResult<bool> {
    py.detach(|| verify_all(max_n)).map(|r| r.is_clean()).map_err(to_py)
}

#[pymodule]
fn block_functors_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FamilyGroup>()?;
    m.add_class::<FusionSystem>()?;
    m.add_class::<DecompositionTable>()?;
    m.add_function(wrap_pyfunction!(decompose_block, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
