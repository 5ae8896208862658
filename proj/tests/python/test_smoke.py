import math
import os
import pathlib

import pytest

import gfde

DATA = pathlib.Path(os.environ.get("GFDE_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_expr_real_and_complex():
    e = gfde.Expr("2^t*sin(t)")
    assert e(0.5) == pytest.approx(2**0.5 * math.sin(0.5), rel=1e-15)
    z = e(0.5 + 0.25j)
    assert isinstance(z, complex)
    with pytest.raises(gfde.ParseError):
        gfde.Expr("sin(")


def test_chebfun_roundtrip():
    u = gfde.ChebFun.build(math.exp, 1e-15)
    assert u(0.3) == pytest.approx(math.exp(0.3), abs=1e-14)
    assert u.integral_from(0.0, 1.0) == pytest.approx(math.e - 1.0, abs=1e-14)
    assert u.differentiate()(-0.2) == pytest.approx(math.exp(-0.2), abs=1e-12)


def test_builtin_conditions_and_solve():
    p = gfde.Problem.builtin("example2")
    rep = gfde.check_conditions(p)
    assert rep["passed"]
    assert rep["cond1_lhs"] == pytest.approx(0.375, abs=1e-12)
    u, sol = gfde.solve(p)
    assert sol["converged"]
    assert u(0.0) == pytest.approx(0.01, abs=1e-12)
    assert gfde.residual(u, p) <= 1e-10


def test_problem_from_dict_rejects_unknown_key():
    doc = gfde.Problem.builtin("example1").to_dict()
    assert gfde.Problem.from_dict(doc).c == 0.0
    doc["extra"] = 1
    with pytest.raises(gfde.InputError):
        gfde.Problem.from_dict(doc)


def test_load_and_validate():
    p = gfde.Problem.load(str(DATA / "ode_oracle.json"))
    assert gfde.validate(p)["ok"]
    with pytest.raises(gfde.GfdeError):
        gfde.Problem.load(str(DATA / "missing.json"))


def test_ek_and_gevrey():
    ek = gfde.check_ek("sin(t)", 1.0, [0.5], 20)
    assert ek["pass"]
    norms = [math.factorial(j) for j in range(1, 13)]
    assert abs(gfde.gevrey_order_estimate(norms)["slope"] - 1.0) <= 0.15
    u = gfde.ChebFun.build(math.exp, 1e-15)
    g = gfde.gevrey(u, 6)
    assert len(g["derivative_norms"]) == 6
