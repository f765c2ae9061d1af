"""Membership search in Sigma^2 + qQ via Gram decompositions.

A membership certificate for p writes
    p = v0' G0 v0  +  q * v1' G1 v1  +  sum_j (q r_j) * vj' Gj vj
with PSD Gram matrices over monomial bases chosen so that no product
exceeds the degree bound.  The search is a projection scheme between the
affine set of Gram tuples matching p's coefficients (a least-squares
projection via ridge-regularized normal equations) and the product of
PSD cones (eigenvalue clamping), run in Douglas-Rachford form with a
restart from the current PSD candidate whenever the residual plateaus,
plus a face-restricted least-squares polish probe at each plateau.  A
failure to converge is reported as "not found within budget" and never
as a proof of non-membership: the enhanced module need not be
archimedean, so a true member can require multipliers beyond any fixed
degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polyring import Polynomial, monomial_basis
from .psd import is_psd, psd_project
from .scenario import Scenario


def generator_polys(scenario: Scenario):
    """Labeled generators of the search: 1, q, q*r_1, ..., q*r_k."""
    gens = [("1", Polynomial.constant(scenario.dim, 1.0)), ("q", scenario.q)]
    for j, r in enumerate(scenario.generators, start=1):
        gens.append((f"q*r{j}", scenario.q * r))
    return gens


@dataclass(frozen=True)
class GramBlock:
    label: str
    basis: tuple  # monomial exponents indexing the Gram matrix
    gram: np.ndarray


@dataclass(frozen=True)
class GramDecomposition:
    blocks: tuple
    residual: float  # max coefficient mismatch of the reconstruction

    def reconstruct(self, scenario: Scenario) -> Polynomial:
        gens = dict(generator_polys(scenario))
        total = Polynomial.zero(scenario.dim)
        for blk in self.blocks:
            if blk.label not in gens:
                raise ValueError(f"unknown generator label {blk.label!r}")
            sos = Polynomial.zero(scenario.dim)
            k = len(blk.basis)
            for a in range(k):
                for b in range(k):
                    c = blk.gram[a, b]
                    if c == 0.0:
                        continue
                    exp = tuple(x + y for x, y in zip(blk.basis[a], blk.basis[b]))
                    sos = sos + Polynomial.monomial(exp, c)
            total = total + gens[blk.label] * sos
        return total


@dataclass(frozen=True)
class SearchResult:
    found: bool
    decomposition: GramDecomposition | None
    iterations: int
    residual: float


def _coefficient_map(gens, bases, degree_bound, dim):
    """Dense linear map from stacked Gram entries to polynomial coeffs."""
    target_basis = monomial_basis(dim, degree_bound)
    row = {e: i for i, e in enumerate(target_basis)}
    sizes = [len(b) for b in bases]
    total = sum(k * k for k in sizes)
    A = np.zeros((len(target_basis), total))
    off = 0
    for (label, g), basis, k in zip(gens, bases, sizes):
        for a in range(k):
            for b in range(k):
                col = off + a * k + b
                for lam, c in g.terms.items():
                    exp = tuple(
                        x + y + z for x, y, z in zip(lam, basis[a], basis[b])
                    )
                    A[row[exp], col] += c
        off += k * k
    return A, target_basis


def _split(x, bases):
    """Stacked vector -> list of symmetrized square matrices."""
    out = []
    off = 0
    for basis in bases:
        k = len(basis)
        m = x[off:off + k * k].reshape(k, k)
        out.append(0.5 * (m + m.T))
        off += k * k
    return out


def _stack(mats):
    return np.concatenate([m.ravel() for m in mats])


def _face_polish(mats, A, b, bases, eps=1e-7):
    """Least-squares correction restricted to each block's numerical face.

    Keeps only eigen-directions with significant eigenvalues, solves the
    coefficient-matching least squares over that face, and re-clamps.
    Nails plateaued iterates when the solution sits on a low-rank face.
    """
    faces = []
    off = 0
    for m, basis in zip(mats, bases):
        w, v = np.linalg.eigh(m)
        keep = w > eps * max(1.0, w.max() if w.size else 1.0)
        faces.append((off, len(basis), v[:, keep]))
        off += len(basis) ** 2
    width = sum(u.shape[1] ** 2 for _, _, u in faces)
    P = np.zeros((off, width))
    c0 = 0
    for o, k, u in faces:
        r = u.shape[1]
        for a in range(r):
            for b2 in range(r):
                P[o:o + k * k, c0] = np.outer(u[:, a], u[:, b2]).ravel()
                c0 += 1
    x0 = _stack(mats)
    theta, *_ = np.linalg.lstsq(A @ P, b - A @ x0, rcond=None)
    return [psd_project(m) for m in _split(x0 + P @ theta, bases)]


def find_certificate(p: Polynomial, scenario: Scenario, degree_bound: int,
                     max_iters: int = 5000, tol: float = 1e-8) -> SearchResult:
    """Search for a PSD Gram certificate of p in Sigma^2 + qQ.

    Douglas-Rachford iteration between the coefficient-matching affine
    set (normal equations with ridge 1e-12) and the product of PSD
    cones, restarted from the PSD candidate when the residual stalls for
    200 iterations.  Deterministic; succeeds when the max coefficient
    mismatch of the PSD candidate drops to tol.
    """
    if p.dim != scenario.dim:
        raise ValueError("polynomial/scenario dimension mismatch")
    if degree_bound < p.degree():
        raise ValueError(
            f"degree bound {degree_bound} cannot express a degree "
            f"{p.degree()} polynomial"
        )
    gens = []
    bases = []
    for label, g in generator_polys(scenario):
        half = (degree_bound - g.degree()) // 2
        if half < 0:
            continue  # generator exceeds the bound; no block for it
        gens.append((label, g))
        bases.append(tuple(monomial_basis(scenario.dim, half)))

    A, target_basis = _coefficient_map(gens, bases, degree_bound, scenario.dim)
    b = np.array([p.terms.get(exp, 0.0) for exp in target_basis])

    gram = A @ A.T + 1e-12 * np.eye(A.shape[0])
    chol = np.linalg.cholesky(gram)

    def affine_project(x):
        y = np.linalg.solve(chol.T, np.linalg.solve(chol, A @ x - b))
        return x - A.T @ y

    def psd_split(x):
        return [psd_project(m) for m in _split(x, bases)]

    def result(found, mats, iters, resid):
        blocks = tuple(
            GramBlock(label, basis, m)
            for (label, _), basis, m in zip(gens, bases, mats)
        )
        return SearchResult(found, GramDecomposition(blocks, resid), iters, resid)

    z = affine_project(np.zeros(A.shape[1]))
    best = None
    plateau_best = np.inf
    stalled = 0
    for it in range(1, max_iters + 1):
        y = affine_project(z)
        mats = psd_split(2.0 * y - z)
        w = _stack(mats)
        z = z + (w - y)
        resid = float(np.max(np.abs(A @ w - b)))
        if best is None or resid < best[0]:
            best = (resid, mats, it)
        if resid <= tol:
            return result(True, mats, it, resid)
        if resid < 0.99 * plateau_best:
            plateau_best = resid
            stalled = 0
        else:
            stalled += 1
        if stalled >= 200:
            polished = _face_polish(mats, A, b, bases)
            xp = _stack(polished)
            rp = float(np.max(np.abs(A @ xp - b)))
            if rp <= tol:
                return result(True, polished, it, rp)
            z = w.copy()  # restart the splitting from the PSD candidate
            plateau_best = np.inf
            stalled = 0
    resid, mats, _ = best
    return result(False, mats, max_iters, resid)


def verify_certificate(decomp: GramDecomposition, p: Polynomial,
                       scenario: Scenario, tol: float = 1e-8,
                       psd_tol: float = 1e-8) -> tuple[bool, float]:
    """Expand the certificate symbolically and compare against p.

    Returns (verdict, residual); verdict is true iff the max coefficient
    mismatch is <= tol and every Gram block passes the PSD check.
    """
    recon = decomp.reconstruct(scenario)
    diff = recon - p
    residual = max((abs(c) for c in diff.terms.values()), default=0.0)
    psd_ok = all(is_psd(blk.gram, psd_tol).ok for blk in decomp.blocks)
    return (residual <= tol and psd_ok), residual


def decomposition_to_obj(decomp: GramDecomposition) -> dict:
    return {
        "residual": decomp.residual,
        "blocks": [
            {
                "generator": blk.label,
                "basis": [list(e) for e in blk.basis],
                "gram": blk.gram.tolist(),
            }
            for blk in decomp.blocks
        ],
    }


def decomposition_from_obj(obj) -> GramDecomposition:
    blocks = tuple(
        GramBlock(
            b["generator"],
            tuple(tuple(int(x) for x in e) for e in b["basis"]),
            np.asarray(b["gram"], dtype=float),
        )
        for b in obj["blocks"]
    )
    return GramDecomposition(blocks, float(obj["residual"]))


def plant_member(scenario: Scenario, degree_bound: int, rng) -> tuple[Polynomial, GramDecomposition]:
    """Random known member of Sigma^2 + qQ: PSD-projected random Grams."""
    gens = generator_polys(scenario)
    blocks = []
    for label, g in gens:
        half = (degree_bound - g.degree()) // 2
        if half < 0:
            continue
        basis = tuple(monomial_basis(scenario.dim, half))
        raw = rng.uniform(-1.0, 1.0, size=(len(basis), len(basis)))
        blocks.append(GramBlock(label, basis, psd_project(0.5 * (raw + raw.T))))
    decomp = GramDecomposition(tuple(blocks), 0.0)
    return decomp.reconstruct(scenario), decomp
