//! Python module `nilquat`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nilquat::automorphisms as aut;
use nilquat::cohomology::{assemble_h1_w_d, quaternionic_sequence, torus_dims};
use nilquat::exact_linalg::GaussRat;
use nilquat::hypercomplex::standard_triple;
use nilquat::lie_core::make_heisenberg_ext;
use nilquat::mc_solver as mc;
use nilquat::suites::{self, DEFAULT_SEED, SUITES};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn check_m(m: usize, max: usize) -> PyResult<()> {
    if (1..=max).contains(&m) {
        Ok(())
    } else {
        Err(PyValueError::new_err(format!("m must lie in 1..={max}, got {m}")))
    }
}

/// Names accepted by [`verify`].
#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    let mut v = SUITES.to_vec();
    v.push("all");
    v
}

/// Runs a verification suite and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (m, suite="all", seed=None))]
fn verify(py: Python<'_>, m: usize, suite: &str, seed: Option<u64>) -> PyResult<String> {
    check_m(m, 4)?;
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let r = py
        .detach(|| suites::run_suite(suite, m, seed))
        .ok_or_else(|| PyValueError::new_err(format!("unknown suite {suite:?}")))?;
    Ok(r.to_json())
}

/// Enumerated `(H¹(W,D_W), H¹(W,Θ_W), H¹(T,D), quaternionic torus count)`.
#[pyfunction]
fn dims(m: usize) -> PyResult<(usize, usize, usize, usize)> {
    check_m(m, 6)?;
    let t = torus_dims(m);
    Ok((assemble_h1_w_d(m).total, quaternionic_sequence(m).h1_w_theta, t.h1_z_d, t.quaternionic))
}

/// `(dim G, dim H, dim G − dim H)` as computed from the tangent systems.
#[pyfunction]
fn group_dimensions(m: usize) -> PyResult<(usize, usize, usize)> {
    check_m(m, 6)?;
    let d = aut::group_dimensions(m);
    Ok((d.dim_g, d.dim_h, d.effective))
}

#[pyclass(name = "DeformationParam", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDeformationParam {
    m: usize,
    inner: mc::DeformationParam,
}

#[pymethods]
impl PyDeformationParam {
    #[staticmethod]
    fn from_json(s: &str, m: usize) -> PyResult<Self> {
        check_m(m, 4)?;
        let inner = mc::DeformationParam::from_json(s, m).map_err(value_err)?;
        Ok(PyDeformationParam { m, inner })
    }

    #[staticmethod]
    #[pyo3(signature = (m, support, seed=DEFAULT_SEED))]
    fn random(m: usize, support: usize, seed: u64) -> PyResult<Self> {
        check_m(m, 4)?;
        Ok(PyDeformationParam {
            m,
            inner: mc::DeformationParam::random(m, support, seed),
        })
    }

    #[getter]
    fn m(&self) -> usize {
        self.m
    }

    fn to_json(&self) -> String {
        self.inner.to_json(self.m)
    }

    /// Multiplies every coefficient by `re + i·im` (rational strings).
    #[pyo3(signature = (re, im="0"))]
    fn scale(&self, re: &str, im: &str) -> PyResult<Self> {
        let c = GaussRat::parse_parts(re, im).map_err(|e| value_err(e.0))?;
        Ok(PyDeformationParam {
            m: self.m,
            inner: self.inner.scale(&c),
        })
    }

    fn __len__(&self) -> usize {
        self.inner.coeffs.len()
    }

    fn __repr__(&self) -> String {
        format!("DeformationParam(m={}, terms={})", self.m, self.inner.coeffs.len())
    }
}

#[pyclass(name = "MCSeries", frozen)]
struct PyMCSeries {
    inner: mc::MCSeries,
}

#[pymethods]
impl PyMCSeries {
    #[getter]
    fn order(&self) -> usize {
        self.inner.order
    }

    /// `Φ_n` rendered as text.
    fn term(&self, n: usize) -> PyResult<String> {
        if n == 0 || n > self.inner.order {
            return Err(PyValueError::new_err(format!("order {n} outside 1..={}", self.inner.order)));
        }
        Ok(self.inner.term(n).to_string())
    }

    /// `(basis element, coefficient)` pairs with `Φ_n = Σ g_τ Υ_τ`.
    fn coefficients(&self, n: usize) -> PyResult<Vec<(String, String)>> {
        let c = self
            .inner
            .coefficients
            .get(n.wrapping_sub(1))
            .ok_or_else(|| PyValueError::new_err(format!("order {n} outside 1..={}", self.inner.order)))?;
        Ok(c.iter().map(|(e, g)| (e.to_string(), g.to_string())).collect())
    }

    /// Orders at which `∂̄Φ + ½{Φ, Φ}` has a nonzero component.
    fn residual_failures(&self) -> Vec<usize> {
        mc::mc_residual(&self.inner)
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    fn check_invariance(&self) -> bool {
        mc::check_invariance(&self.inner)
    }

    fn check_holomorphic_projection(&self) -> bool {
        mc::check_holomorphic_projection(&self.inner)
    }

    #[pyo3(signature = (samples=64, seed=DEFAULT_SEED))]
    fn norm_growth(&self, samples: usize, seed: u64) -> (Vec<f64>, Vec<Option<f64>>) {
        let g = mc::norm_growth(&self.inner, samples, seed);
        (g.norms, g.ratios)
    }
}

#[pyfunction]
fn solve_mc(py: Python<'_>, phi1: &PyDeformationParam, order: usize) -> PyResult<PyMCSeries> {
    let (p, m) = (phi1.inner.clone(), phi1.m);
    let inner = py.detach(|| mc::solve_mc(&p, m, order)).map_err(value_err)?;
    Ok(PyMCSeries { inner })
}

#[pyclass(name = "AutMatrix", frozen)]
struct PyAutMatrix {
    inner: aut::AutMatrix,
}

#[pymethods]
impl PyAutMatrix {
    #[staticmethod]
    fn identity(m: usize) -> PyResult<Self> {
        check_m(m, 6)?;
        Ok(PyAutMatrix {
            inner: aut::AutMatrix::identity(m),
        })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        let inner = aut::AutMatrix::from_json(s).map_err(value_err)?;
        Ok(PyAutMatrix { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (m, seed=DEFAULT_SEED, factors=6))]
    fn random_prop2(m: usize, seed: u64, factors: usize) -> PyResult<Self> {
        check_m(m, 6)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(PyAutMatrix {
            inner: aut::random_prop2(m, factors, &mut rng),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (m, seed=DEFAULT_SEED))]
    fn random_prop3(m: usize, seed: u64) -> PyResult<Self> {
        check_m(m, 6)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(PyAutMatrix {
            inner: aut::random_prop3(m, &mut rng),
        })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __matmul__(&self, o: &PyAutMatrix) -> PyResult<PyAutMatrix> {
        if o.inner.m != self.inner.m {
            return Err(PyValueError::new_err("size mismatch"));
        }
        Ok(PyAutMatrix {
            inner: self.inner.mul(&o.inner),
        })
    }

    fn is_lie_automorphism(&self) -> bool {
        let alg = make_heisenberg_ext(self.inner.m).expect("m ≥ 1");
        aut::is_lie_automorphism(&self.inner, &alg)
    }

    /// The centre scale `S₀` if the matrix has the block-triangular form.
    fn prop2_scale(&self) -> Option<String> {
        aut::is_prop2_form(&self.inner).map(|s| s.to_string())
    }

    fn is_hypercomplex(&self) -> bool {
        aut::is_hypercomplex_automorphism(&self.inner, &standard_triple(self.inner.m))
    }

    fn is_prop3_form(&self) -> bool {
        aut::is_prop3_form(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("AutMatrix(m={})", self.inner.m)
    }
}

#[pymodule]
#[pyo3(name = "nilquat")]
pub fn nilquat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(dims, m)?)?;
    m.add_function(wrap_pyfunction!(group_dimensions, m)?)?;
    m.add_function(wrap_pyfunction!(solve_mc, m)?)?;
    m.add_class::<PyDeformationParam>()?;
    m.add_class::<PyMCSeries>()?;
    m.add_class::<PyAutMatrix>()?;
    Ok(())
}
