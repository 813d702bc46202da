"""Smoke test for the `nilquat` extension module.

Build and install with
    pip install maturin
    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/nilquat-*.whl
then run `python python/smoke_test.py`.
"""

import json
from pathlib import Path

import nilquat

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    assert "cohomology" in nilquat.suite_names()

    report = json.loads(nilquat.verify(1, "algebra"))
    assert report["seed"] == nilquat.DEFAULT_SEED
    assert all(c["status"] == "pass" for c in report["checks"])

    assert nilquat.dims(1) == (29, 26, 12, 9)
    assert nilquat.dims(2)[0] == 58
    g, h, e = nilquat.group_dimensions(2)
    assert g == 81 and g - h == e

    phi = nilquat.DeformationParam.from_json((FIXTURES / "phi1_m1.json").read_text(), 1)
    s = nilquat.solve_mc(phi, 4)
    assert s.order == 4
    assert s.residual_failures() == []
    assert s.check_invariance() and s.check_holomorphic_projection()
    norms, ratios = s.norm_growth(16)
    assert len(norms) == 4 and len(ratios) == 3

    doubled = nilquat.solve_mc(phi.scale("2"), 4)
    assert doubled.residual_failures() == []

    try:
        nilquat.solve_mc(phi, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("order 0 accepted")

    ident = nilquat.AutMatrix.identity(1)
    assert ident.is_lie_automorphism() and ident.is_prop3_form()
    assert ident.prop2_scale() == "1"

    other = nilquat.AutMatrix.from_json((FIXTURES / "prop2_not_prop3_m1.json").read_text())
    assert other.prop2_scale() is not None and not other.is_prop3_form()

    a = nilquat.AutMatrix.random_prop2(2, seed=7)
    b = nilquat.AutMatrix.random_prop2(2, seed=8)
    assert (a @ b).is_lie_automorphism()

    print("nilquat smoke test ok")


if __name__ == "__main__":
    main()
