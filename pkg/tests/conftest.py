"""Shared helpers: catalog scenarios and random supported measures."""

import numpy as np
import pytest

from curvebumps import AtomicMeasure, CurveMeasure, Polynomial, catalog
from curvebumps.polyring import poly_eval

SQRT3 = float(np.sqrt(3.0))


@pytest.fixture(scope="session")
def entries():
    return catalog()


def _t_poly(coeffs):
    """Univariate polynomial from ascending coefficients."""
    return Polynomial(1, {(k,): c for k, c in enumerate(coeffs)})


def curve_atom(name, rng):
    """Random point exactly on V(q) of the named catalog scenario."""
    if name == "half-disk":
        return (0.0, float(rng.uniform(-1.2, 1.2)))
    if name == "fig1":
        t = float(rng.uniform(-1.3, 1.3))
        return (t, t * t)
    if name == "fig2":
        t = float(rng.uniform(-0.9, 0.9))
        sign = 1.0 if rng.random() < 0.5 else -1.0
        return (t, sign * (SQRT3 * t))
    raise ValueError(name)


def bump_atom(name, rng, margin=0.02):
    """Random point with q > margin inside K_Q of the named scenario."""
    entry = catalog()[name]
    q = entry.scenario.q
    gens = entry.scenario.generators
    if name == "fig1":
        center, radius = (1.0, 2.0), 0.97
    else:
        center, radius = (0.0, 0.0), 0.97
    while True:
        rho = radius * np.sqrt(rng.random())
        theta = rng.uniform(0, 2 * np.pi)
        p = (center[0] + rho * np.cos(theta), center[1] + rho * np.sin(theta))
        if poly_eval(q, p) > margin and all(
            poly_eval(r, p) > margin for r in gens
        ):
            return p


def violating_atom(name):
    """A point outside V(q) union the bump, refuting the certificate."""
    return {
        "half-disk": (-0.5, 0.0),
        "fig1": (0.5, 0.0),
        "fig2": (0.2, 0.9),
    }[name]


def curve_segment(name, density=None):
    """CurveMeasure supported on a bounded piece of V(q)."""
    density = density if density is not None else _t_poly([1.0])
    if name == "half-disk":
        return CurveMeasure((_t_poly([0.0]), _t_poly([0.0, 1.0])),
                            -1.0, 1.0, density)
    if name == "fig1":
        return CurveMeasure((_t_poly([0.0, 1.0]), _t_poly([0.0, 0.0, 1.0])),
                            -1.2, 1.2, density)
    if name == "fig2":
        return CurveMeasure((_t_poly([0.0, 1.0]), _t_poly([0.0, SQRT3])),
                            -0.8, 0.8, density)
    raise ValueError(name)


def random_supported_measure(name, rng, with_curve_piece=False):
    """Atoms on the curve and in the bump, optionally plus a curve piece."""
    n_curve = int(rng.integers(1, 5))
    n_bump = int(rng.integers(1, 5))
    atoms = []
    for _ in range(n_curve):
        atoms.append((curve_atom(name, rng), float(rng.uniform(0.1, 2.0))))
    for _ in range(n_bump):
        atoms.append((bump_atom(name, rng), float(rng.uniform(0.1, 2.0))))
    comps = [AtomicMeasure(tuple(atoms))]
    if with_curve_piece:
        comps.append(curve_segment(name))
    return comps


def random_atomic_measure(name, rng):
    """Atoms only, for decomposition round trips."""
    return random_supported_measure(name, rng, with_curve_piece=False)[0]
