import json

import pytest

import rkhs_surface as rs


def test_theta_origin():
    assert abs(rs.theta(0, 1j) - 1.08643481121331) < 1e-12
    assert abs(rs.theta_char(0.5, 0.5, 0, 1j)) < 1e-15


def test_torus_surface():
    s = rs.Surface.torus(1.0)
    assert (s.genus, s.ovals, s.dividing) == (1, 2, True)
    assert abs(s.period - 1j) < 1e-15
    assert s.classify(0.25 + 0.5j) == "Oval(1)"
    assert s.classify(0.25 + 0.2j) == "Interior+"
    assert abs(s.prime_form(0.1 + 0.1j, 0.3 + 0.2j) + s.prime_form(0.3 + 0.2j, 0.1 + 0.1j)) < 1e-12
    assert json.loads(s.to_json())["genus"] == 1


def test_genus0_phi():
    phi = rs.Phi.genus0(0.0, [(0.0, 1.0)])
    assert abs(phi(1j) - 1.0) < 1e-15
    assert abs(phi.kernel(1j, 2j) - 1 / (1j * (-2j))) < 1e-14
    assert phi.dimension() == 1
    assert abs(phi.schur(1j)) < 1e-15


def test_torus_phi():
    s = rs.Surface.torus(1.0)
    phi = rs.Phi(s, [(0, 0.2, 1.0), (1, 0.6, 1.0)], M=0.3)
    p = 0.31 + 0.19j
    assert abs(phi(p) + phi(p.conjugate()).conjugate()) < 1e-10
    assert phi(p).real > 0
    assert max(abs(v) for v in phi.periods()) < 1e-10
    assert phi.identity_residual(p, 0.7 + 0.1j) < 1e-10
    assert abs(phi.kernel(p, p) - phi.l2_kernel(p, p)) < 1e-10


def test_errors():
    with pytest.raises(ValueError):
        rs.Surface.torus(-1.0)
    with pytest.raises(ValueError):
        rs.Surface.builtin("sphere")
    with pytest.raises(ValueError):
        rs.Phi(rs.Surface.torus(1.0), [(0, 0.2, -1.0)])


def test_verify_and_table():
    report = rs.verify("genus0", rs.Surface.genus0())
    assert report["suite"] == "genus0"
    assert all(c["pass"] for c in report["checks"])
    csv = rs.comparison_table_csv(42)
    assert csv == rs.comparison_table_csv(42)
    assert len(csv.strip().splitlines()) == 9
