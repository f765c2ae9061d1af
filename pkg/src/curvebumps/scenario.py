"""Scenarios: a curve polynomial q plus an archimedean quadratic module.

A scenario fixes the support set V(q) union [K_Q intersect {q > 0}].
The shipped catalog covers a line with a half-disk bump, a parabola with
an off-center disk bump, and a pair of crossing lines with a disk bump.
Curve hypotheses (real ideal, ordinary singularities with independent
tangents, etc.) are never verified computationally: catalog entries are
vetted by hand, anything else is user-asserted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .polyring import Polynomial, poly_from_records, poly_to_records

VETTED = "vetted"
USER_ASSERTED = "user-asserted"


@dataclass(frozen=True)
class Scenario:
    dim: int
    q: Polynomial
    generators: tuple = ()
    archimedean_bound: float | None = None
    curve_assertion: str = USER_ASSERTED
    name: str | None = None

    def __post_init__(self):
        if self.q.is_zero():
            raise ValueError("curve polynomial q must be non-zero")
        if self.q.dim != self.dim:
            raise ValueError("q dimension mismatch")
        gens = tuple(self.generators)
        for r in gens:
            if r.dim != self.dim:
                raise ValueError("generator dimension mismatch")
        if self.archimedean_bound is not None and self.archimedean_bound <= 0:
            raise ValueError("archimedean bound must be positive")
        object.__setattr__(self, "generators", gens)


def flip_bumps(scenario: Scenario) -> Scenario:
    """Negate q, moving the bump to the other side of the curve."""
    name = None
    if scenario.name is not None:
        base = scenario.name
        name = base[:-8] if base.endswith("-flipped") else base + "-flipped"
    return replace(scenario, q=-scenario.q, name=name)


@dataclass(frozen=True)
class ArchimedeanVerdict:
    status: str  # "verified" | "asserted-only"
    bound: float | None = None
    detail: str = ""

    @property
    def verified(self):
        return self.status == "verified"


def _ball_bound(r: Polynomial) -> float | None:
    """If r == C - (x1^2 + ... + xd^2) with C > 0, return C."""
    d = r.dim
    expect = {}
    for i in range(d):
        e = [0] * d
        e[i] = 2
        expect[tuple(e)] = -1.0
    zero = (0,) * d
    c = r.terms.get(zero, 0.0)
    if c <= 0:
        return None
    rest = {e: v for e, v in r.terms.items() if e != zero}
    return c if rest == expect else None


def archimedean_check(scenario: Scenario, multipliers=None, tol=1e-9):
    """Check that C - |x|^2 lies in the module.

    Passes if some generator is literally C - |x|^2, or if explicit SOS
    multipliers (sigma_0, sigma_1, ..., sigma_k) are supplied with
    C - |x|^2 = sigma_0 + sum r_j sigma_j verified as a polynomial
    identity.  Otherwise archimedeanness is only asserted.
    """
    for r in scenario.generators:
        c = _ball_bound(r)
        if c is not None:
            return ArchimedeanVerdict(
                "verified", c, f"generator equals {c:g} - |x|^2"
            )
    if multipliers is not None:
        c, sigmas = multipliers
        if len(sigmas) != len(scenario.generators) + 1:
            raise ValueError("need one multiplier per generator plus sigma_0")
        d = scenario.dim
        ball = Polynomial.constant(d, c)
        for i in range(d):
            ball = ball - Polynomial.variable(d, i) ** 2
        combo = sigmas[0]
        for r, sig in zip(scenario.generators, sigmas[1:]):
            combo = combo + r * sig
        resid = ball - combo
        worst = max((abs(v) for v in resid.terms.values()), default=0.0)
        if worst <= tol:
            return ArchimedeanVerdict(
                "verified", float(c), "witnessed by supplied SOS multipliers"
            )
        return ArchimedeanVerdict(
            "asserted-only", None,
            f"supplied witness leaves coefficient residual {worst:.3g}",
        )
    if scenario.archimedean_bound is not None:
        return ArchimedeanVerdict(
            "asserted-only", scenario.archimedean_bound,
            "bound supplied without a checkable witness",
        )
    return ArchimedeanVerdict("asserted-only", None, "no checkable witness")


# -- catalog ----------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    scenario: Scenario
    doc: str


def _p(dim, terms):
    return Polynomial(dim, terms)


def catalog() -> dict[str, CatalogEntry]:
    x1sq = (2, 0)
    x2sq = (0, 2)
    one = (0, 0)
    half_disk = Scenario(
        dim=2,
        q=_p(2, {(1, 0): 1.0}),
        generators=(_p(2, {one: 1.0, x1sq: -1.0, x2sq: -1.0}),),
        archimedean_bound=1.0,
        curve_assertion=VETTED,
        name="half-disk",
    )
    fig1 = Scenario(
        dim=2,
        q=_p(2, {(0, 1): 1.0, x1sq: -1.0}),
        # 1 - (x1-1)^2 - (x2-2)^2 = -4 + 2 x1 + 4 x2 - x1^2 - x2^2
        generators=(
            _p(2, {one: -4.0, (1, 0): 2.0, (0, 1): 4.0, x1sq: -1.0, x2sq: -1.0}),
        ),
        archimedean_bound=None,
        curve_assertion=VETTED,
        name="fig1",
    )
    fig2 = Scenario(
        dim=2,
        q=_p(2, {x1sq: 3.0, x2sq: -1.0}),
        generators=(_p(2, {one: 1.0, x1sq: -1.0, x2sq: -1.0}),),
        archimedean_bound=1.0,
        curve_assertion=VETTED,
        name="fig2",
    )
    return {
        "half-disk": CatalogEntry(
            "half-disk", half_disk,
            "q = x1: a line, nonsingular and rational; the bump is the "
            "right half of the unit disk.",
        ),
        "fig1": CatalogEntry(
            "fig1", fig1,
            "q = x2 - x1^2: a nonsingular rational parabola; the bump is "
            "the part of the disk around (1, 2) above it.",
        ),
        "fig2": CatalogEntry(
            "fig2", fig2,
            "q = 3 x1^2 - x2^2: two crossing lines; the origin is an "
            "ordinary double point with independent tangents; the bump is "
            "the unit-disk sector where 3 x1^2 > x2^2.",
        ),
    }


# -- text format ------------------------------------------------------


def scenario_to_obj(s: Scenario) -> dict:
    return {
        "dim": s.dim,
        "q": poly_to_records(s.q),
        "generators": [poly_to_records(r) for r in s.generators],
        "archimedean_C": s.archimedean_bound,
        "catalog": s.name if s.curve_assertion == VETTED else None,
    }


def scenario_from_obj(obj) -> Scenario:
    cat = obj.get("catalog")
    if cat:
        entry = catalog().get(cat)
        if entry is None:
            raise ValueError(f"unknown catalog scenario {cat!r}")
        return entry.scenario
    dim = int(obj["dim"])
    return Scenario(
        dim=dim,
        q=poly_from_records(obj["q"], dim=dim),
        generators=tuple(
            poly_from_records(r, dim=dim) for r in obj.get("generators", [])
        ),
        archimedean_bound=obj.get("archimedean_C"),
        curve_assertion=USER_ASSERTED,
    )


def dump_scenario(s: Scenario, fh):
    json.dump(scenario_to_obj(s), fh, indent=1)
    fh.write("\n")


def load_scenario(fh) -> Scenario:
    return scenario_from_obj(json.load(fh))
