//! Python bindings for the cubefree toolkit.
//!
//! Vertices cross the boundary as binary strings (coordinate 1 leftmost), so
//! Python code never handles raw bit words. Point sets and configurations are
//! wrapped classes; everything else is a module function.

use cubefree::config::{parse_named, t_values, Configuration, ConfigurationFamily, Construction};
use cubefree::cube::{count_at_distance, hamming as cube_hamming, sphere as cube_sphere, Vertex};
use cubefree::density::{
    best_pattern as density_best_pattern, density_table, max_points_in_subcube,
    mu_bounds as density_mu_bounds, pattern_is_free, LayerPattern,
};
use cubefree::embed::{find_witness, is_family_free};
use cubefree::identities::{
    mantel_diagnostic, verify_square_identity_over_cube, verify_square_identity_over_set,
};
use cubefree::solver::{
    enumerate_extremal_sets, extremal_number, local_search_lower_bound, Budget, SolveOptions,
};
use cubefree::stability::stability_report;
use cubefree::{PointSet, Rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::time::Duration;

fn py_err(err: cubefree::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_vertex(text: &str) -> PyResult<Vertex> {
    Vertex::parse(text).map_err(py_err)
}

fn family_of(configs: Vec<PyRef<PyConfiguration>>) -> PyResult<ConfigurationFamily> {
    ConfigurationFamily::new(configs.iter().map(|c| c.inner.clone()).collect()).map_err(py_err)
}

fn options(budget_nodes: u64, budget_secs: u64, threads: usize) -> SolveOptions {
    SolveOptions {
        budget: Budget {
            max_nodes: budget_nodes,
            time_limit: Duration::from_secs(budget_secs),
        },
        threads,
    }
}

// ============================================================================
// Wrapped types
// ============================================================================

/// A subset of the vertices of `Q_n`.
#[pyclass(name = "PointSet", skip_from_py_object)]
#[derive(Clone)]
struct PyPointSet {
    inner: PointSet,
}

#[pymethods]
impl PyPointSet {
    /// Empty set in the given dimension.
    #[new]
    fn new(dim: u32) -> PyResult<Self> {
        Ok(PyPointSet {
            inner: PointSet::empty(dim).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn full(dim: u32) -> PyResult<Self> {
        Ok(PyPointSet {
            inner: PointSet::full(dim).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_layers(dim: u32, weights: Vec<u32>) -> PyResult<Self> {
        Ok(PyPointSet {
            inner: PointSet::from_layers(dim, &weights).map_err(py_err)?,
        })
    }

    /// Builds a named construction: S0 | S1 | S2 | even | mod:<m>:<r,..> |
    /// spaced:<d> | nonstab.
    #[staticmethod]
    fn construction(name: &str, n: u32) -> PyResult<Self> {
        let c = Construction::parse(name).map_err(py_err)?;
        Ok(PyPointSet {
            inner: c.build(n).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        Ok(PyPointSet {
            inner: cubefree::io::load_point_set(path).map_err(py_err)?,
        })
    }

    fn dim(&self) -> u32 {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len() as usize
    }

    fn contains(&self, vertex: &str) -> PyResult<bool> {
        let v = parse_vertex(vertex)?;
        if v.dim() != self.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(self.inner.contains(v))
    }

    fn insert(&mut self, vertex: &str) -> PyResult<bool> {
        let v = parse_vertex(vertex)?;
        if v.dim() != self.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(self.inner.insert_bits(v.bits()))
    }

    fn remove(&mut self, vertex: &str) -> PyResult<bool> {
        let v = parse_vertex(vertex)?;
        if v.dim() != self.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(self.inner.remove_bits(v.bits()))
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.iter().map(|v| v.to_string()).collect()
    }

    fn complement(&self) -> Self {
        PyPointSet {
            inner: self.inner.complement(),
        }
    }

    fn save(&self, path: &str) -> PyResult<()> {
        cubefree::io::save_point_set(&self.inner, path).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("PointSet(n={}, size={})", self.inner.dim(), self.inner.len())
    }
}

/// A forbidden configuration in a small cube.
#[pyclass(name = "Configuration", skip_from_py_object)]
#[derive(Clone)]
struct PyConfiguration {
    inner: Configuration,
}

#[pymethods]
impl PyConfiguration {
    /// Builds from a built-in name (`V2`, `Gd:<d>`, `F1`, `F2`, `F3`,
    /// `F1d:<d>`, `F2d:<d>`, `Fdd:<d>`, `K:<d>:<p1,p2,..>`).
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        match parse_named(name).map_err(py_err)? {
            Some(inner) => Ok(PyConfiguration { inner }),
            None => Err(PyValueError::new_err(format!("unknown name: {name}"))),
        }
    }

    #[staticmethod]
    fn from_points(dim: u32, points: Vec<String>) -> PyResult<Self> {
        let bits = points
            .iter()
            .map(|p| parse_vertex(p).map(|v| v.bits()))
            .collect::<PyResult<Vec<u64>>>()?;
        Ok(PyConfiguration {
            inner: Configuration::new(dim, bits).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        Ok(PyConfiguration {
            inner: cubefree::io::load_configuration(path).map_err(py_err)?,
        })
    }

    fn dim(&self) -> u32 {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn points(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.to_string()).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Configuration(d={}, points={})",
            self.inner.dim(),
            self.inner.len()
        )
    }
}

// ============================================================================
// Cube primitives
// ============================================================================

/// Number of 1-coordinates of a vertex string.
#[pyfunction]
fn weight(vertex: &str) -> PyResult<u32> {
    Ok(parse_vertex(vertex)?.weight())
}

/// Hamming distance between two vertex strings of equal length.
#[pyfunction]
fn hamming(a: &str, b: &str) -> PyResult<u32> {
    cube_hamming(parse_vertex(a)?, parse_vertex(b)?).map_err(py_err)
}

/// All vertices at distance exactly `radius`, ascending.
#[pyfunction]
fn sphere(vertex: &str, radius: u32) -> PyResult<Vec<String>> {
    Ok(cube_sphere(parse_vertex(vertex)?, radius)
        .map_err(py_err)?
        .iter()
        .map(|v| v.to_string())
        .collect())
}

/// `h_l(x)`: members of the set at distance exactly `l` from the vertex.
#[pyfunction]
fn count_at(s: &PyPointSet, vertex: &str, l: u32) -> PyResult<u64> {
    count_at_distance(&s.inner, parse_vertex(vertex)?, l).map_err(py_err)
}

// ============================================================================
// Freeness
// ============================================================================

/// True when no embedding maps the configuration into the set.
#[pyfunction]
fn is_free(s: &PyPointSet, config: &PyConfiguration) -> PyResult<bool> {
    cubefree::embed::is_free(&s.inner, &config.inner).map_err(py_err)
}

/// The first embedded copy found, as a list of vertex strings, or None.
#[pyfunction]
fn witness(s: &PyPointSet, config: &PyConfiguration) -> PyResult<Option<Vec<String>>> {
    Ok(find_witness(&s.inner, &config.inner)
        .map_err(py_err)?
        .map(|p| p.vertices().iter().map(|v| v.to_string()).collect()))
}

/// True when the set avoids every configuration in the list.
#[pyfunction]
fn family_free(s: &PyPointSet, configs: Vec<PyRef<PyConfiguration>>) -> PyResult<bool> {
    is_family_free(&s.inner, &family_of(configs)?).map_err(py_err)
}

// ============================================================================
// Extremal numbers
// ============================================================================

/// Exact `exc(n, family)`. Returns `(value, optimal, witness, nodes)`.
#[pyfunction]
#[pyo3(signature = (n, configs, budget_nodes=100_000_000, budget_secs=300, threads=1))]
fn exc(
    n: u32,
    configs: Vec<PyRef<PyConfiguration>>,
    budget_nodes: u64,
    budget_secs: u64,
    threads: usize,
) -> PyResult<(u64, bool, PyPointSet, u64)> {
    let fam = family_of(configs)?;
    let result = extremal_number(n, &fam, &options(budget_nodes, budget_secs, threads))
        .map_err(py_err)?;
    Ok((
        result.value,
        result.optimal,
        PyPointSet {
            inner: result.witness,
        },
        result.nodes,
    ))
}

/// All maximum free sets up to automorphism (n <= 5).
#[pyfunction]
fn extremal_classes(n: u32, configs: Vec<PyRef<PyConfiguration>>) -> PyResult<Vec<PyPointSet>> {
    let fam = family_of(configs)?;
    let classes =
        enumerate_extremal_sets(n, &fam, &SolveOptions::default()).map_err(py_err)?;
    Ok(classes
        .into_iter()
        .map(|inner| PyPointSet { inner })
        .collect())
}

/// Randomized lower-bound search seeded from the best layer pattern.
#[pyfunction]
#[pyo3(signature = (n, configs, seed=0, iterations=1000))]
fn local_search(
    n: u32,
    configs: Vec<PyRef<PyConfiguration>>,
    seed: u64,
    iterations: u64,
) -> PyResult<PyPointSet> {
    let fam = family_of(configs)?;
    Ok(PyPointSet {
        inner: local_search_lower_bound(n, &fam, seed, iterations).map_err(py_err)?,
    })
}

// ============================================================================
// Identities, stability, density
// ============================================================================

/// Verifies both double-counting identities. Returns a dict with exact
/// integer sides and match flags.
#[pyfunction]
fn identities<'py>(py: Python<'py>, s: &PyPointSet, l: u32) -> PyResult<Bound<'py, PyDict>> {
    let one = verify_square_identity_over_cube(&s.inner, l).map_err(py_err)?;
    let two = verify_square_identity_over_set(&s.inner, l).map_err(py_err)?;
    let out = PyDict::new(py);
    let entry = |r: &cubefree::identities::IdentityReport| -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        d.set_item("lhs", r.lhs.clone())?;
        d.set_item("rhs", r.rhs.clone())?;
        d.set_item("matches", r.matches)?;
        Ok(d)
    };
    out.set_item("over_cube", entry(&one)?)?;
    out.set_item("over_set", entry(&two)?)?;
    Ok(out)
}

/// `(edge_count, triangle_found)` of the distance-two graph at a member.
#[pyfunction]
fn mantel(s: &PyPointSet, vertex: &str) -> PyResult<(u64, bool)> {
    let report = mantel_diagnostic(&s.inner, parse_vertex(vertex)?).map_err(py_err)?;
    Ok((report.edge_count, report.triangle_found()))
}

/// Local-stability statistics at an exact rational threshold like "1/5".
#[pyfunction]
fn stability<'py>(py: Python<'py>, s: &PyPointSet, delta: &str) -> PyResult<Bound<'py, PyDict>> {
    let delta = Rational::parse(delta).map_err(py_err)?;
    let report = stability_report(&s.inner, delta).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("n", report.n)?;
    out.set_item("set_size", report.set_size)?;
    out.set_item("delta", report.delta.to_string())?;
    out.set_item("bad_a", report.bad_a)?;
    out.set_item("bad_b", report.bad_b)?;
    out.set_item("bad_c", report.bad_c)?;
    out.set_item("exceptional_union", report.exceptional_union)?;
    out.set_item("epsilon", report.epsilon.to_string())?;
    out.set_item("hist_in", report.hist_in)?;
    out.set_item("hist_out", report.hist_out)?;
    Ok(out)
}

/// Best free layer pattern: `(period, residues, (density_num, density_den))`.
#[pyfunction]
fn pattern(
    configs: Vec<PyRef<PyConfiguration>>,
    max_period: u32,
) -> PyResult<(u32, Vec<u32>, (u64, u64))> {
    let fam = family_of(configs)?;
    let (p, density) = density_best_pattern(&fam, max_period).map_err(py_err)?;
    Ok((
        p.period(),
        p.residues().to_vec(),
        (density.numer(), density.denom()),
    ))
}

/// Whether the residue pattern avoids the configuration in every host cube.
#[pyfunction]
fn pattern_free(config: &PyConfiguration, period: u32, residues: Vec<u32>) -> PyResult<bool> {
    let p = LayerPattern::new(period, residues).map_err(py_err)?;
    pattern_is_free(&config.inner, &p).map_err(py_err)
}

/// Maximum members of the set inside any `d`-dimensional subcube.
#[pyfunction]
fn max_subcube_points(s: &PyPointSet, d: u32) -> PyResult<u64> {
    Ok(max_points_in_subcube(&s.inner, d).map_err(py_err)?.0)
}

/// `(lower, upper)` bounds for the guaranteed points-per-subcube function.
#[pyfunction]
fn mu_bounds(d: u32) -> PyResult<(u64, u64)> {
    density_mu_bounds(d).map_err(py_err)
}

/// `(t2, t3)` from the transversal witness counts.
#[pyfunction]
fn transversal_counts(d: u32) -> PyResult<(u64, u64)> {
    t_values(d).map_err(py_err)
}

/// One table row: `(n, exc, ratio_num, ratio_den, optimal)`.
type DensityRowTuple = (u32, u64, u64, u64, bool);

/// Rows `(n, exc, ratio_num, ratio_den, optimal)` up to `n_max`.
#[pyfunction]
#[pyo3(signature = (configs, n_max, budget_nodes=100_000_000, budget_secs=300, threads=1))]
fn density(
    configs: Vec<PyRef<PyConfiguration>>,
    n_max: u32,
    budget_nodes: u64,
    budget_secs: u64,
    threads: usize,
) -> PyResult<Vec<DensityRowTuple>> {
    let fam = family_of(configs)?;
    let rows = density_table(&fam, n_max, &options(budget_nodes, budget_secs, threads))
        .map_err(py_err)?;
    Ok(rows
        .iter()
        .map(|r| (r.n, r.exc, r.ratio.numer(), r.ratio.denom(), r.optimal))
        .collect())
}

#[pymodule]
fn cubefree_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPointSet>()?;
    m.add_class::<PyConfiguration>()?;
    m.add_function(wrap_pyfunction!(weight, m)?)?;
    m.add_function(wrap_pyfunction!(hamming, m)?)?;
    m.add_function(wrap_pyfunction!(sphere, m)?)?;
    m.add_function(wrap_pyfunction!(count_at, m)?)?;
    m.add_function(wrap_pyfunction!(is_free, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(family_free, m)?)?;
    m.add_function(wrap_pyfunction!(exc, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_classes, m)?)?;
    m.add_function(wrap_pyfunction!(local_search, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(mantel, m)?)?;
    m.add_function(wrap_pyfunction!(stability, m)?)?;
    m.add_function(wrap_pyfunction!(pattern, m)?)?;
    m.add_function(wrap_pyfunction!(pattern_free, m)?)?;
    m.add_function(wrap_pyfunction!(max_subcube_points, m)?)?;
    m.add_function(wrap_pyfunction!(mu_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(transversal_counts, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    Ok(())
}
