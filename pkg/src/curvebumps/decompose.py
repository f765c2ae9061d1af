"""Measure decomposition along a scenario: mu = nu/q + sigma.

Starting from an audited measure (or its Riesz functional L), the bump
part is extracted as nu (atoms reweighted by q), the residual functional
Lambda(f) = L(f) - integral of f/q against nu is formed, and Lambda is
verified to annihilate q * R[x] and to stay positive on squares.
Reconstruction adds the moments of nu/q back to a curve-supported part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .measures import (DEFAULT_AUDIT_TOL, AtomicMeasure, moments_of,
                       support_audit)
from .momentseq import (TruncatedSequence, moment_matrix, riesz_apply, shift)
from .polyring import monomial_basis, poly_eval
from .psd import is_psd
from .scenario import Scenario


@dataclass(frozen=True)
class LambdaReport:
    max_annihilation: float  # max |Lambda(q * x^g)| over checkable g
    min_eigenvalue: float  # of Lambda's moment matrix
    annihilation_ok: bool
    psd_ok: bool
    scale: float

    @property
    def passed(self):
        return self.annihilation_ok and self.psd_ok

    def render(self) -> str:
        return (
            f"Lambda annihilation: max |Lambda(q*x^g)| = "
            f"{self.max_annihilation:.3e} "
            f"({'ok' if self.annihilation_ok else 'FAIL'})\n"
            f"Lambda positivity:   min eig of moment matrix = "
            f"{self.min_eigenvalue:.3e} "
            f"({'ok' if self.psd_ok else 'FAIL'})"
        )


def nu_from(mu, scenario: Scenario, tol=DEFAULT_AUDIT_TOL):
    """Bump part of an audited atomic measure, reweighted by q.

    Atoms with q > tol keep their point and get weight w * q(point);
    atoms on the curve are dropped.  Returns None for the zero measure.
    """
    audit = support_audit(mu, scenario, tol)
    if not audit.passed:
        raise ValueError("measure fails the support audit; cannot build nu")
    atoms = []
    for comp in mu if isinstance(mu, list) else [mu]:
        if not isinstance(comp, AtomicMeasure):
            continue  # curve components carry no bump mass
        for point, w in comp.atoms:
            qv = poly_eval(scenario.q, point)
            if qv > tol:
                atoms.append((point, w * qv))
    if not atoms:
        return None
    return AtomicMeasure(tuple(atoms))


def curve_part(mu, scenario: Scenario, tol=DEFAULT_AUDIT_TOL):
    """Components of the measure supported on V(q): on-curve atoms plus
    every CurveMeasure piece (audited elsewhere)."""
    comps = []
    atoms = []
    for comp in mu if isinstance(mu, list) else [mu]:
        if isinstance(comp, AtomicMeasure):
            for point, w in comp.atoms:
                if abs(poly_eval(scenario.q, point)) <= tol:
                    atoms.append((point, w))
        else:
            comps.append(comp)
    if atoms:
        comps.insert(0, AtomicMeasure(tuple(atoms)))
    return comps


def lambda_from(L: TruncatedSequence, nu, q, tol=DEFAULT_AUDIT_TOL) -> TruncatedSequence:
    """Residual sequence Lambda_g = L_g - sum w_i p_i^g / q(p_i).

    nu may be None (the zero measure), in which case Lambda = L.
    """
    if nu is None:
        return L
    for point, _ in nu.atoms:
        if poly_eval(q, point) <= tol:
            raise ValueError(
                f"nu atom at {point} has q <= {tol:g}: division by q unsafe"
            )
    vals = dict(L.values)
    for point, w in nu.atoms:
        qv = poly_eval(q, point)
        for exp in monomial_basis(L.dim, L.order):
            v = w / qv
            for x, e in zip(point, exp):
                if e:
                    v *= x**e
            vals[exp] -= v
    return TruncatedSequence(L.dim, L.order, vals)


def verify_lambda(lam: TruncatedSequence, q, tol=1e-8) -> LambdaReport:
    """Check Lambda(q * x^g) = 0 for all checkable g and PSD of Lambda's
    moment matrix, both with tolerance relative to the sequence scale."""
    if q.degree() > lam.order:
        raise ValueError("q exceeds the truncation order of Lambda")
    scale = 1.0 + lam.max_abs()
    shifted = shift(lam, q)  # entries are Lambda(q * x^g)
    worst = max(abs(v) for v in shifted.values.values())
    mm = moment_matrix(lam, lam.order // 2)
    verdict = is_psd(mm.entries, tol)
    return LambdaReport(
        max_annihilation=worst,
        min_eigenvalue=verdict.min_eigenvalue,
        annihilation_ok=worst <= tol * scale,
        psd_ok=verdict.ok,
        scale=scale,
    )


def reconstruct(nu, sigma, q, order: int, scenario: Scenario | None = None,
                tol=DEFAULT_AUDIT_TOL) -> TruncatedSequence:
    """Moments of nu/q + sigma: nu reweighted by 1/q plus the curve part.

    When a scenario is supplied, sigma is audited to lie on V(q).
    """
    comps = []
    dim = None
    if nu is not None:
        atoms = []
        for point, w in nu.atoms:
            qv = poly_eval(q, point)
            if qv <= tol:
                raise ValueError(f"nu atom at {point} has q <= {tol:g}")
            atoms.append((point, w / qv))
        comps.append(AtomicMeasure(tuple(atoms)))
        dim = comps[0].dim
    sigma_comps = sigma if isinstance(sigma, list) else ([sigma] if sigma else [])
    if sigma_comps and scenario is not None:
        audit = support_audit(sigma_comps, scenario, tol)
        for point, kind, qv in audit.records:
            if abs(qv) > tol:
                raise ValueError(
                    f"sigma point {point} is off the curve (q = {qv:.3g})"
                )
    comps.extend(sigma_comps)
    if dim is None and comps:
        dim = comps[0].dim
    if dim is None:
        dim = q.dim
    return moments_of(comps, order, dim=dim)


def decompose_measure(mu, scenario: Scenario, order: int,
                      tol=DEFAULT_AUDIT_TOL):
    """Full pipeline: audit, split into nu and sigma, build Lambda, verify.

    Returns (nu, sigma, lambda_sequence, lambda_report).
    """
    L = moments_of(mu, order)
    nu = nu_from(mu, scenario, tol)
    sigma = curve_part(mu, scenario, tol)
    lam = lambda_from(L, nu, scenario.q, tol)
    report = verify_lambda(lam, scenario.q)
    return nu, sigma, lam, report
