"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines as the
criteria complete.
"""

import time

import numpy as np
import pytest

from conftest import (curve_segment, random_atomic_measure,
                      random_supported_measure, violating_atom)
from curvebumps.certify import FAIL, certify
from curvebumps.decompose import curve_part, lambda_from, nu_from, reconstruct, verify_lambda
from curvebumps.measures import AtomicMeasure, moments_of
from curvebumps.momentseq import (TruncatedSequence, hankel_matrix,
                                  localizing_matrix, riesz_apply, shift)
from curvebumps.polyring import Polynomial, monomial_basis
from curvebumps.psd import eigen_sym, is_psd
from curvebumps.scenario import catalog, flip_bumps
from curvebumps.sosearch import (GramBlock, GramDecomposition,
                                 find_certificate, plant_member,
                                 verify_certificate)

SCENARIOS = ("half-disk", "fig1", "fig2")


def _report(n, label):
    print(f"\nACCEPTANCE {n} ({label}): PASS")


def _rel_ok(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_criterion_1_soundness_suite():
    start = time.monotonic()
    rng = np.random.default_rng(101)
    for name in SCENARIOS:
        scenario = catalog()[name].scenario
        for k in range(100):
            mu = random_supported_measure(name, rng,
                                          with_curve_piece=(k % 4 == 0))
            for order in (4, 6, 8):
                s = moments_of(mu, order)
                report = certify(s, scenario)
                assert report.passed, f"{name} order {order}: {report.render()}"
                bound = -1e-8 * (1.0 + s.max_abs())
                for chk in report.checks:
                    assert chk.min_eigenvalue >= bound, (name, order, chk)
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"soundness suite took {elapsed:.1f}s"
    _report(1, f"soundness, {elapsed:.1f}s")


def test_criterion_2_refutation_suite():
    half_disk = catalog()["half-disk"].scenario
    s_bad = AtomicMeasure((((-0.5, 0.0), 1.0),))
    q_r1 = half_disk.q * half_disk.generators[0]
    for order in (2, 4, 6, 8):
        s = moments_of(s_bad, order)
        assert not certify(s, half_disk).passed
        if order >= q_r1.degree():
            lm = localizing_matrix(s, q_r1, 0)
            assert abs(lm.entries[0, 0] - (-0.375)) <= 1e-12
    for name in ("fig1", "fig2"):
        scenario = catalog()[name].scenario
        s = moments_of(AtomicMeasure(((violating_atom(name), 1.0),)), 6)
        assert certify(s, scenario).verdict == FAIL
    _report(2, "refutation")


def test_criterion_3_shift_algebra():
    rng = np.random.default_rng(103)
    for _ in range(500):
        order = int(rng.choice([6, 8]))
        s = TruncatedSequence(2, order, {
            e: float(rng.uniform(-1, 1)) for e in monomial_basis(2, order)})
        p = Polynomial(2, {e: float(rng.uniform(-1, 1))
                           for e in monomial_basis(2, 2)})
        g = Polynomial(2, {e: float(rng.uniform(-1, 1))
                           for e in monomial_basis(2, 2)})
        a = shift(shift(s, g), p)
        b = shift(s, p * g)
        for exp in a.values:
            assert _rel_ok(a[exp], b[exp])
        f = Polynomial(2, {e: float(rng.uniform(-1, 1))
                           for e in monomial_basis(2, order - 2 - 2)})
        assert _rel_ok(riesz_apply(shift(s, p), f), riesz_apply(s, p * f))
    _report(3, "shift algebra")


def test_criterion_4_decomposition_round_trip():
    rng = np.random.default_rng(104)
    for name in SCENARIOS:
        scenario = catalog()[name].scenario
        br_pairs = 0
        for k in range(100):
            mu = random_atomic_measure(name, rng)
            order = 6
            L = moments_of(mu, order)
            nu = nu_from(mu, scenario)
            sigma = curve_part(mu, scenario)
            back = reconstruct(nu, sigma, scenario.q, order)
            for exp, v in L.values.items():
                assert _rel_ok(v, back[exp]), (name, k, exp)
            lam = lambda_from(L, nu, scenario.q)
            rep = verify_lambda(lam, scenario.q)
            assert rep.max_annihilation <= 1e-10 * rep.scale, (name, k)
            assert rep.psd_ok, (name, k)
            # Cauchy-Schwarz-type bound for the bump component
            if br_pairs < 100:
                L12 = moments_of(mu, 12)
                s_nu = moments_of([nu] if nu else [], 12, dim=2)
                scale = 1.0 + max(L12.max_abs(), s_nu.max_abs())
                for _ in range(3):
                    f = Polynomial(2, {e: float(rng.uniform(-1, 1))
                                       for e in monomial_basis(2, 2)})
                    g = Polynomial(2, {e: float(rng.uniform(-1, 1))
                                       for e in monomial_basis(2, 2)})
                    lhs = riesz_apply(s_nu, f * g) ** 2
                    rhs = (riesz_apply(s_nu, scenario.q * g * g)
                           * riesz_apply(L12, f * f))
                    assert rhs - lhs >= -1e-10 * scale * scale, (name, k)
                    br_pairs += 1
        assert br_pairs >= 100
    _report(4, "decomposition round trip")


def test_criterion_5_sos_planted_recovery():
    start = time.monotonic()
    rng = np.random.default_rng(105)
    for name in SCENARIOS:
        scenario = catalog()[name].scenario
        for bound in (4, 6):
            for k in range(200):
                p, _ = plant_member(scenario, bound, rng)
                res = find_certificate(p, scenario, bound,
                                       max_iters=5000, tol=1e-6)
                assert res.found, (name, bound, k, res.residual)
                assert res.residual <= 1e-6
                assert res.iterations <= 5000
                ok, _ = verify_certificate(res.decomposition, p, scenario,
                                           tol=1e-6)
                assert ok, (name, bound, k)
    # hand-built certificates verify exactly
    half_disk = catalog()["half-disk"].scenario
    hand_built = [
        (half_disk.q * half_disk.generators[0],
         GramDecomposition((GramBlock("q*r1", ((0, 0),),
                                      np.array([[1.0]])),), 0.0)),
        (Polynomial.variable(2, 0) ** 2 + Polynomial.variable(2, 1) ** 2,
         GramDecomposition((GramBlock("1", ((1, 0), (0, 1)),
                                      np.eye(2)),), 0.0)),
        (Polynomial.variable(2, 0) * Polynomial.variable(2, 1) ** 2,
         GramDecomposition((GramBlock("q", ((0, 1),),
                                      np.array([[1.0]])),), 0.0)),
        (half_disk.q * half_disk.q,
         GramDecomposition((GramBlock("1", ((1, 0),),
                                      np.array([[1.0]])),), 0.0)),
    ]
    for p, decomp in hand_built:
        ok, residual = verify_certificate(decomp, p, half_disk, tol=1e-12)
        assert ok and residual <= 1e-12
    _report(5, f"planted SOS recovery, {time.monotonic() - start:.1f}s")


def test_criterion_6_eigensolver():
    rng = np.random.default_rng(106)
    for _ in range(1000):
        n = int(rng.integers(1, 41))
        a = rng.uniform(-1, 1, size=(n, n))
        a = 0.5 * (a + a.T)
        w, v = eigen_sym(a)
        scale = 1.0 + np.abs(a).max()
        assert np.abs(a @ v - v @ np.diag(w)).max() <= 1e-10 * scale
        assert np.abs(v.T @ v - np.eye(n)).max() <= 1e-10
    _report(6, "eigensolver")


def test_criterion_7_hamburger_base_case():
    rng = np.random.default_rng(107)
    for _ in range(50):
        n_atoms = int(rng.integers(1, 6))
        atoms = tuple(
            ((float(rng.uniform(-2, 2)),), float(rng.uniform(0.1, 2)))
            for _ in range(n_atoms)
        )
        s = moments_of(AtomicMeasure(atoms), 6)
        h = hankel_matrix(s, 3)
        assert is_psd(h.entries, 1e-8).ok
    # s2 < s1^2 / s0 violates Cauchy-Schwarz
    s = TruncatedSequence(1, 2, {(0,): 1.0, (1,): 1.0, (2,): 0.5})
    h = hankel_matrix(s, 1)
    verdict = is_psd(h.entries, 1e-8)
    assert not verdict.ok and verdict.min_eigenvalue < 0
    _report(7, "Hamburger base case")


def test_criterion_8_flip_involution_and_exclusivity():
    rng = np.random.default_rng(108)
    for name in SCENARIOS:
        scenario = catalog()[name].scenario
        twice = flip_bumps(flip_bumps(scenario))
        assert twice.q == scenario.q
        assert twice.generators == scenario.generators
        assert twice.name == scenario.name
        # random atoms inside K_Q with |q| bounded away from zero
        from curvebumps.polyring import poly_eval
        count = 0
        if name == "fig1":
            center, radius = (1.0, 2.0), 0.99
        else:
            center, radius = (0.0, 0.0), 0.99
        while count < 50:
            rho = radius * np.sqrt(rng.random())
            theta = rng.uniform(0, 2 * np.pi)
            p = (center[0] + rho * np.cos(theta),
                 center[1] + rho * np.sin(theta))
            if any(poly_eval(r, p) < 0 for r in scenario.generators):
                continue
            if abs(poly_eval(scenario.q, p)) <= 1e-6:
                continue
            s = moments_of(AtomicMeasure(((p, 1.0),)), 6)
            a = certify(s, scenario).passed
            b = certify(s, flip_bumps(scenario)).passed
            assert a != b, (name, p)
            assert a == (poly_eval(scenario.q, p) > 0)
            count += 1
    _report(8, "flip involution and exclusivity")
