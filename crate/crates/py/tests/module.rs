use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &std::ffi::CStr) {
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(nilquat_py::nilquat_py)(py);
        let locals = PyDict::new(py);
        locals.set_item("nilquat", module).unwrap();
        py.run(code, None, Some(&locals)).map_err(|e| e.display(py)).unwrap();
    });
}

#[test]
fn dims_and_groups() {
    run(c"
assert nilquat.dims(1) == (29, 26, 12, 9)
assert nilquat.dims(3)[0] == 99
g, h, e = nilquat.group_dimensions(1)
assert g == 39 and g - h == e
try:
    nilquat.dims(0)
    raise AssertionError
except ValueError:
    pass
");
}

#[test]
fn verify_report_json() {
    run(c"
import json
r = json.loads(nilquat.verify(1, 'hypercomplex', seed=3))
assert r['suite'] == 'hypercomplex' and r['seed'] == 3
assert all(c['status'] == 'pass' for c in r['checks'])
");
}

#[test]
fn mc_roundtrip() {
    run(c"
p = nilquat.DeformationParam.random(1, 4, seed=11)
q = nilquat.DeformationParam.from_json(p.to_json(), 1)
assert len(q) == len(p)
s = nilquat.solve_mc(q, 3)
assert s.residual_failures() == []
assert s.check_invariance() and s.check_holomorphic_projection()
assert len(s.coefficients(1)) == len(p)
");
}

#[test]
fn automorphism_predicates() {
    run(c"
a = nilquat.AutMatrix.random_prop3(2, seed=5)
assert a.is_prop3_form() and a.is_lie_automorphism()
b = nilquat.AutMatrix.from_json(a.to_json())
assert (a @ b).prop2_scale() is not None
");
}
