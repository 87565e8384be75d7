import math
import os
from pathlib import Path

import numpy as np
import pytest

import dynrigid

DATA = Path(os.environ.get("DYNRIGID_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_circle_orbit():
    t = dynrigid.build_domain(dynrigid.DomainSpec.circle())
    assert t.perimeter == pytest.approx(1.0, abs=1e-12)
    o = dynrigid.find_symmetric_orbit(t, 5)
    assert o.length == pytest.approx(5 * math.sin(math.pi / 5) / math.pi, abs=1e-12)
    assert np.allclose(o.s_points, np.arange(5) / 5, atol=1e-10)


def test_load_and_errors():
    spec = dynrigid.load_domain(str(DATA / "perturbed.yaml"))
    assert dict(spec.support_coeffs)[3] == pytest.approx(0.01)
    with pytest.raises(dynrigid.DynrigidError, match="ParseError"):
        dynrigid.load_domain(str(DATA / "malformed.yaml"))
    with pytest.raises(dynrigid.DynrigidError, match="NonConvex"):
        dynrigid.build_domain(dynrigid.load_domain(str(DATA / "nonconvex.yaml")))


def test_operator_and_certificate():
    t = dynrigid.build_domain(dynrigid.DomainSpec.circle())
    lz = dynrigid.build_lazutkin(t)
    m = dynrigid.assemble_direct(t, lz, 16, 16)
    e = np.asarray(m.entries)
    assert e.shape == (17, 17)
    assert np.all(e[1] == 1.0)
    assert e[4, 4] == pytest.approx(4 * math.sin(math.pi / 4) / math.pi, abs=1e-12)
    assert dynrigid.gamma_norm(np.eye(8), 3.5).norm == pytest.approx(1.0)
    c = dynrigid.certify_injectivity(e, 3.5)
    assert c.passed
    with pytest.raises(dynrigid.DynrigidError, match="BadGamma"):
        dynrigid.gamma_norm(np.eye(3), 3.0)


def test_derivative_check():
    f = dynrigid.DeformationFamily()
    f.base = dynrigid.DomainSpec.circle()
    f.direction = [(2, 1.0)]
    r = dynrigid.length_derivative_check(f, 2)
    assert r.passed
    assert r.fd_slope == pytest.approx(4.0, rel=1e-7)
    assert dynrigid.perimeter_derivative_check(f).passed
