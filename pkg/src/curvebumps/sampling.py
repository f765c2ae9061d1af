"""Grid sampling of the support set V(q) union the bump region.

Grid points are classified as curve / bump / outside; additionally,
sign changes of q along grid edges are refined by bisection so the curve
is sampled accurately even when it misses every grid node.
"""

from __future__ import annotations

import itertools

import numpy as np

from .measures import IN_BUMP, ON_CURVE, classify_point
from .polyring import poly_eval
from .scenario import Scenario

CURVE = "curve"
BUMP = "bump"
OUTSIDE = "outside"

_LABEL = {ON_CURVE: CURVE, IN_BUMP: BUMP}


def _axes(bbox, step):
    axes = []
    for lo, hi in bbox:
        if not lo < hi:
            raise ValueError(f"empty bounding box interval [{lo}, {hi}]")
        n = int(np.floor((hi - lo) / step + 1e-9)) + 1
        axes.append([lo + k * step for k in range(n)])
    return axes


def _bisect_root(q, a, b, tol=1e-10):
    """Root of q on the segment [a, b] given a sign change, to tol."""
    fa = poly_eval(q, a)
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = poly_eval(q, tuple(mid))
        if abs(fm) <= tol or np.max(np.abs(b - a)) <= tol:
            return tuple(mid)
        if (fa < 0) == (fm < 0):
            a, fa = mid, fm
        else:
            b = mid
    return tuple(0.5 * (a + b))


def support_points(scenario: Scenario, step: float, bbox, tol: float = 1e-9):
    """Labeled sample points of the support set inside the bounding box.

    bbox is a sequence of (lo, hi) pairs, one per coordinate.  Returns a
    list of (point, label) with label in {curve, bump, outside}; curve
    points include bisection refinements of q sign changes on grid edges
    (located to 1e-10).
    """
    if step <= 0:
        raise ValueError("grid step must be positive")
    bbox = [tuple(map(float, iv)) for iv in bbox]
    if len(bbox) != scenario.dim:
        raise ValueError("bounding box dimension mismatch")
    axes = _axes(bbox, step)
    shape = tuple(len(ax) for ax in axes)
    cells = list(itertools.product(*(range(n) for n in shape)))
    points = {
        idx: tuple(axes[a][i] for a, i in enumerate(idx)) for idx in cells
    }
    out = []
    qvals = {}
    for idx in cells:
        point = points[idx]
        kind, qv = classify_point(point, scenario, tol)
        qvals[idx] = qv
        out.append((point, _LABEL.get(kind, OUTSIDE)))
    # refine q sign changes along each axis-parallel grid edge
    for idx in cells:
        for axis in range(scenario.dim):
            if idx[axis] + 1 >= shape[axis]:
                continue
            nbr = idx[:axis] + (idx[axis] + 1,) + idx[axis + 1:]
            qa, qb = qvals[idx], qvals[nbr]
            if abs(qa) <= tol or abs(qb) <= tol:
                continue
            if (qa < 0) != (qb < 0):
                root = _bisect_root(scenario.q, points[idx], points[nbr],
                                    tol=1e-10)
                out.append((root, CURVE))
    return out


def eval_nonneg_sample(p, scenario: Scenario, step: float = 0.05,
                       bbox=None, tol: float = 1e-9):
    """Minimum of p over sampled support points (curve and bump labels).

    A value well below zero refutes membership of p in Sigma^2 + qQ; a
    non-negative minimum proves nothing.
    """
    if bbox is None:
        bbox = [(-2.0, 2.0)] * scenario.dim
    pts = support_points(scenario, step, bbox, tol)
    best = None
    for point, label in pts:
        if label == OUTSIDE:
            continue
        v = poly_eval(p, point)
        if best is None or v < best[0]:
            best = (v, point)
    if best is None:
        raise ValueError("no support points found in the bounding box")
    return best
