import math

import numpy as np
import pytest

from schroder_lab.errors import NonConvergence
from schroder_lab.quadrature import tanh_sinh


def test_smooth_integrand():
    value, level = tanh_sinh(np.sin, 0.0, math.pi)
    assert value == pytest.approx(2.0, abs=1e-12)
    assert level <= 8


def test_inverse_sqrt_endpoint_singularity():
    # abscissae that round onto the endpoint are dropped, truncating the
    # singular tail by ~2 sqrt(ulp): a few 1e-8 absolute for 1/sqrt kernels,
    # inside the 1e-7 error target of the transit integrals
    value, _ = tanh_sinh(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0)
    assert value == pytest.approx(2.0, abs=5e-8)


def test_both_endpoints_singular():
    value, _ = tanh_sinh(lambda x: 1.0 / np.sqrt(x * (1.0 - x)), 0.0, 1.0)
    assert value == pytest.approx(math.pi, abs=1e-7)


def test_empty_and_reversed_intervals():
    assert tanh_sinh(np.sin, 1.0, 1.0) == (0.0, 0)
    forward, _ = tanh_sinh(np.exp, 0.0, 1.0)
    backward, _ = tanh_sinh(np.exp, 1.0, 0.0)
    assert backward == pytest.approx(-forward, abs=1e-12)


def test_nonconvergence_is_reported():
    rng = np.random.default_rng(3)

    def noisy(x):
        return rng.standard_normal(np.shape(x))

    with pytest.raises(NonConvergence):
        tanh_sinh(noisy, 0.0, 1.0, target=1e-12, max_level=5)


def test_interior_bad_value_raises():
    def integrand(x):
        return np.where(np.abs(x - 0.5) < 0.01, np.nan, np.ones_like(x))

    with pytest.raises(ValueError):
        tanh_sinh(integrand, 0.0, 1.0)


def test_interior_bad_value_custom_handler():
    seen = []

    def integrand(x):
        return np.where(np.abs(x - 0.5) < 0.01, np.nan, np.ones_like(x))

    def handler(x):
        seen.append(x)
        raise RuntimeError("caught")

    with pytest.raises(RuntimeError):
        tanh_sinh(integrand, 0.0, 1.0, on_bad_value=handler)
    assert seen and abs(seen[0] - 0.5) < 0.02
