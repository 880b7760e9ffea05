"""
Pytest fixtures for halfstrip tests.
"""

import numpy as np
import pytest

from halfstrip.functions import Pole
from halfstrip.geometry import ContourSpec, Domain, StripGeometry
from halfstrip.quadrature import QuadratureSpec


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Drop HALFSTRIP_ variables and cached writers between tests."""
    import os

    from halfstrip.services.output import reset_writers

    for name in list(os.environ):
        if name.startswith("HALFSTRIP_"):
            monkeypatch.delenv(name)
    reset_writers()
    yield
    reset_writers()


@pytest.fixture
def geometry():
    """The unit half-strip, sigma = 1."""
    return StripGeometry(1.0)


@pytest.fixture
def quad_spec():
    """Default quadrature tolerances."""
    return QuadratureSpec(rel_tol=1e-10, abs_tol=1e-12)


@pytest.fixture
def rng():
    """Seeded generator for sample points."""
    return np.random.default_rng(1234)


@pytest.fixture
def contour_factory():
    """Factory for creating contours Gamma_{s,t}."""

    def create_contour(**kwargs):
        defaults = {
            "s": 1.0,
            "t": 0.0,
        }
        defaults.update(kwargs)
        return ContourSpec(defaults["s"], defaults["t"])

    return create_contour


@pytest.fixture
def pole_factory():
    """Factory for creating pole expressions (w - w0)^-k."""

    def create_pole(w0=2.0, order=1):
        return Pole(complex(w0), order)

    return create_pole


@pytest.fixture
def boundary_function_factory(geometry, pole_factory):
    """Factory for boundary traces of closed-form expressions on Gamma."""

    def create_boundary_function(expr=None, **kwargs):
        expr = expr if expr is not None else pole_factory(**kwargs)
        return expr.boundary(geometry)

    return create_boundary_function


@pytest.fixture
def analytic_function_factory(geometry, pole_factory):
    """Factory for analytic handles of closed-form expressions."""

    def create_analytic_function(expr=None, domain=Domain.OMEGA_PLUS, **kwargs):
        expr = expr if expr is not None else pole_factory(**kwargs)
        return expr.analytic(domain, geometry)

    return create_analytic_function


@pytest.fixture
def run_config():
    """A small, fast run configuration."""
    from halfstrip.cli.config import RunConfig

    return RunConfig(sigma=1.0, depth=6, threads=1)
