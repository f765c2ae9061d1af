"""Explicit measures and their exact truncated moments.

This is the brute-force oracle: atomic measures are summed directly, and
curve-supported measures (polynomial parametrization times a polynomial
density) are integrated by Gauss-Legendre quadrature with enough nodes
to be exact for every monomial the truncation needs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .momentseq import TruncatedSequence
from .polyring import (Polynomial, monomial_basis, poly_eval,
                       poly_from_records, poly_to_records)
from .scenario import Scenario

DEFAULT_AUDIT_TOL = 1e-9

ON_CURVE = "on-curve"
IN_BUMP = "in-bump"
VIOLATING = "violating"


def gauss_legendre(n: int):
    """Nodes and weights on [-1, 1], exact for polynomials of degree 2n-1.

    Newton iteration on the degree-n Legendre polynomial, evaluated by the
    three-term recurrence; converges to 1e-14 in a handful of steps.
    """
    if n < 1:
        raise ValueError("need at least one node")
    k = np.arange(n)
    t = np.cos(np.pi * (k + 0.75) / (n + 0.5))  # Chebyshev-like initial guess
    for _ in range(100):
        p_prev = np.ones_like(t)
        p = t.copy()
        for j in range(2, n + 1):
            p_prev, p = p, ((2 * j - 1) * t * p - (j - 1) * p_prev) / j
        if n == 1:
            p, p_prev = t, np.ones_like(t)
        dp = n * (t * p - p_prev) / (t * t - 1.0)
        step = p / dp
        t = t - step
        if np.max(np.abs(step)) < 1e-14:
            break
    # final recurrence pass for the converged nodes
    p_prev = np.ones_like(t)
    p = t.copy()
    for j in range(2, n + 1):
        p_prev, p = p, ((2 * j - 1) * t * p - (j - 1) * p_prev) / j
    if n == 1:
        return np.zeros(1), np.full(1, 2.0)
    dp = n * (t * p - p_prev) / (t * t - 1.0)
    w = 2.0 / ((1.0 - t * t) * dp * dp)
    order = np.argsort(t)
    return t[order], w[order]


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many atoms (point, weight) with strictly positive weights."""

    atoms: tuple

    def __post_init__(self):
        clean = []
        for point, w in self.atoms:
            w = float(w)
            if w <= 0:
                raise ValueError(f"atom weight {w} must be strictly positive")
            clean.append((tuple(float(x) for x in point), w))
        if not clean:
            raise ValueError("atomic measure needs at least one atom")
        dims = {len(p) for p, _ in clean}
        if len(dims) != 1:
            raise ValueError("atoms have inconsistent dimensions")
        object.__setattr__(self, "atoms", tuple(clean))

    @property
    def dim(self):
        return len(self.atoms[0][0])


@dataclass(frozen=True)
class CurveMeasure:
    """density(t) dt pushed forward through t -> (x_1(t), ..., x_d(t))."""

    parametrization: tuple  # d univariate polynomials
    t0: float
    t1: float
    density: Polynomial  # univariate, non-negative on [t0, t1]
    nodes: int | None = None  # quadrature node count; None = automatic

    def __post_init__(self):
        params = tuple(self.parametrization)
        if not params:
            raise ValueError("parametrization must have at least one component")
        for p in params:
            if p.dim != 1:
                raise ValueError("parametrization components must be univariate")
        if self.density.dim != 1:
            raise ValueError("density must be univariate")
        if not self.t0 < self.t1:
            raise ValueError("need t0 < t1")
        object.__setattr__(self, "parametrization", params)

    @property
    def dim(self):
        return len(self.parametrization)

    def node_count(self, order: int) -> int:
        """Smallest count making quadrature exact for all moments <= order."""
        max_deg = max(p.degree() for p in self.parametrization)
        needed = order * max_deg + self.density.degree()
        required = needed // 2 + 1  # 2m - 1 >= needed
        if self.nodes is not None:
            if self.nodes < required:
                raise ValueError(
                    f"{self.nodes} quadrature nodes cannot integrate order "
                    f"{order} moments exactly; need at least {required}"
                )
            return self.nodes
        return required

    def quadrature(self, order: int):
        """Weighted sample points (point in R^d, weight) for this order."""
        m = self.node_count(order)
        t, w = gauss_legendre(m)
        half = 0.5 * (self.t1 - self.t0)
        mid = 0.5 * (self.t1 + self.t0)
        out = []
        for tk, wk in zip(mid + half * t, half * w):
            dens = poly_eval(self.density, (tk,))
            if dens < 0:
                raise ValueError(
                    f"density is negative ({dens:.3g}) at quadrature node {tk:.6g}"
                )
            point = tuple(poly_eval(p, (tk,)) for p in self.parametrization)
            out.append((point, wk * dens))
        return out


def _components(mu):
    if isinstance(mu, (AtomicMeasure, CurveMeasure)):
        return [mu]
    return list(mu)


def moments_of(mu, order: int, dim: int | None = None) -> TruncatedSequence:
    """Truncated moments s_g = integral of x^g against mu, |g| <= order.

    ``mu`` may be an AtomicMeasure, a CurveMeasure, or a list of such
    components; an empty list is the zero measure (``dim`` required).
    """
    comps = _components(mu)
    if not comps:
        if dim is None:
            raise ValueError("empty measure needs an explicit dimension")
        return TruncatedSequence.zero(dim, order)
    dim = comps[0].dim
    if any(c.dim != dim for c in comps):
        raise ValueError("measure components have inconsistent dimensions")
    basis = monomial_basis(dim, order)
    vals = {e: 0.0 for e in basis}
    for comp in comps:
        if isinstance(comp, AtomicMeasure):
            samples = comp.atoms
        else:
            samples = comp.quadrature(order)
        for point, w in samples:
            for exp in basis:
                v = w
                for x, e in zip(point, exp):
                    if e:
                        v *= x**e
                vals[exp] += v
    return TruncatedSequence(dim, order, vals)


@dataclass(frozen=True)
class SupportAudit:
    """Per-point classification against V(q) union the bump region."""

    records: tuple  # (point, kind, q_value)
    verdict: str  # "pass" | "fail"

    @property
    def passed(self):
        return self.verdict == "pass"

    def counts(self):
        out = {ON_CURVE: 0, IN_BUMP: 0, VIOLATING: 0}
        for _, kind, _ in self.records:
            out[kind] += 1
        return out


def classify_point(point, scenario: Scenario, tol=DEFAULT_AUDIT_TOL):
    """on-curve if |q| <= tol; in-bump if q > tol and all r_j >= -tol."""
    qv = poly_eval(scenario.q, point)
    if abs(qv) <= tol:
        return ON_CURVE, qv
    if qv > tol and all(
        poly_eval(r, point) >= -tol for r in scenario.generators
    ):
        return IN_BUMP, qv
    return VIOLATING, qv


def support_audit(mu, scenario: Scenario, tol=DEFAULT_AUDIT_TOL) -> SupportAudit:
    """Audit every atom and every curve quadrature node of the measure."""
    records = []
    for comp in _components(mu):
        if comp.dim != scenario.dim:
            raise ValueError("measure/scenario dimension mismatch")
        if isinstance(comp, AtomicMeasure):
            samples = [p for p, _ in comp.atoms]
        else:
            samples = [p for p, _ in comp.quadrature(order=2)]
        for point in samples:
            kind, qv = classify_point(point, scenario, tol)
            records.append((point, kind, qv))
    ok = all(kind != VIOLATING for _, kind, _ in records)
    return SupportAudit(tuple(records), "pass" if ok else "fail")


# -- text format ------------------------------------------------------


def measure_to_obj(mu) -> dict:
    atoms = []
    curves = []
    for comp in _components(mu):
        if isinstance(comp, AtomicMeasure):
            atoms.extend(
                {"point": list(p), "weight": w} for p, w in comp.atoms
            )
        else:
            curves.append(
                {
                    "param": [poly_to_records(p) for p in comp.parametrization],
                    "t0": comp.t0,
                    "t1": comp.t1,
                    "density": poly_to_records(comp.density),
                    "nodes": comp.nodes,
                }
            )
    return {"atoms": atoms, "curves": curves}


def measure_from_obj(obj) -> list:
    comps = []
    atoms = obj.get("atoms") or []
    if atoms:
        comps.append(
            AtomicMeasure(
                tuple((tuple(a["point"]), a["weight"]) for a in atoms)
            )
        )
    for c in obj.get("curves") or []:
        comps.append(
            CurveMeasure(
                parametrization=tuple(
                    poly_from_records(p, dim=1) for p in c["param"]
                ),
                t0=float(c["t0"]),
                t1=float(c["t1"]),
                density=poly_from_records(c["density"], dim=1),
                nodes=c.get("nodes"),
            )
        )
    return comps  # may be empty: the zero measure


def dump_measure(mu, fh):
    json.dump(measure_to_obj(mu), fh, indent=1)
    fh.write("\n")


def load_measure(fh) -> list:
    return measure_from_obj(json.load(fh))
