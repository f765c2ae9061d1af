"""Truncated moment sequences, the Riesz functional, shifts, and
moment/localizing matrix assembly.

A sequence of order 2n stores a value s_g for every exponent g with
|g| <= 2n.  The localizing matrix of a polynomial g uses matrix order
m = floor((2n - deg g) / 2), the largest order the truncation supports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .polyring import Polynomial, grlex_key, monomial_basis, total_degree


@dataclass(frozen=True)
class TruncatedSequence:
    """Moments s_g for |g| <= order, densely stored."""

    dim: int
    order: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        clean = {}
        for exp, v in self.values.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.dim:
                raise ValueError(f"exponent {exp} has wrong length")
            clean[exp] = float(v)
        for exp in monomial_basis(self.dim, self.order):
            if exp not in clean:
                raise ValueError(f"missing moment for exponent {exp}")
        object.__setattr__(self, "values", clean)

    def __getitem__(self, exp):
        return self.values[tuple(exp)]

    def max_abs(self):
        return max(abs(v) for v in self.values.values())

    @staticmethod
    def zero(dim, order):
        vals = {e: 0.0 for e in monomial_basis(dim, order)}
        return TruncatedSequence(dim, order, vals)

    def scaled(self, a):
        return TruncatedSequence(
            self.dim, self.order, {e: a * v for e, v in self.values.items()}
        )

    def __add__(self, other):
        if self.dim != other.dim or self.order != other.order:
            raise ValueError("sequence dimension/order mismatch")
        return TruncatedSequence(
            self.dim,
            self.order,
            {e: v + other.values[e] for e, v in self.values.items()},
        )


@dataclass(frozen=True)
class MomentMatrix:
    """Symmetric matrix indexed by a monomial basis, with provenance."""

    basis: tuple
    entries: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.shape != (len(self.basis), len(self.basis)):
            raise ValueError("matrix size does not match basis length")
        if not np.array_equal(m, m.T):
            raise ValueError("matrix is not exactly symmetric")
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "basis", tuple(self.basis))

    @property
    def size(self):
        return len(self.basis)


def riesz_apply(s: TruncatedSequence, p: Polynomial) -> float:
    """L_s(p) = sum of p_g * s_g over the support of p."""
    if p.dim != s.dim:
        raise ValueError("dimension mismatch")
    if p.degree() > s.order:
        raise ValueError(
            f"polynomial degree {p.degree()} exceeds truncation order {s.order}"
        )
    return sum(c * s.values[exp] for exp, c in p.terms.items())


def shift(s: TruncatedSequence, p: Polynomial) -> TruncatedSequence:
    """The shifted sequence g -> sum_l p_l * s_{l+g}, of order 2n - deg p."""
    if p.dim != s.dim:
        raise ValueError("dimension mismatch")
    dp = p.degree()
    if dp > s.order:
        raise ValueError(
            f"polynomial degree {dp} exceeds truncation order {s.order}"
        )
    new_order = s.order - dp
    vals = {}
    for gamma in monomial_basis(s.dim, new_order):
        acc = 0.0
        for lam, c in p.terms.items():
            acc += c * s.values[tuple(a + b for a, b in zip(lam, gamma))]
        vals[gamma] = acc
    return TruncatedSequence(s.dim, new_order, vals)


def moment_matrix(s: TruncatedSequence, m: int, provenance: str = "") -> MomentMatrix:
    """Matrix indexed by monomial_basis(d, m) with entry (a, b) = s_{a+b}.

    Each moment is read once and written to both symmetric slots, so the
    result is symmetric exactly, not after the fact.
    """
    if m < 0 or 2 * m > s.order:
        raise ValueError(f"matrix order {m} needs sequence order >= {2 * m}")
    basis = monomial_basis(s.dim, m)
    n = len(basis)
    mat = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            v = s.values[tuple(a + b for a, b in zip(basis[i], basis[j]))]
            mat[i, j] = v
            mat[j, i] = v
    return MomentMatrix(tuple(basis), mat, provenance or f"moment matrix m={m}")


def localizing_matrix(
    s: TruncatedSequence, g: Polynomial, m: int, provenance: str = ""
) -> MomentMatrix:
    """Moment matrix of the shifted sequence g(E)s at order m."""
    if 2 * m + g.degree() > s.order:
        raise ValueError(
            f"localizing order {m} with deg g = {g.degree()} needs "
            f"sequence order >= {2 * m + g.degree()}"
        )
    shifted = shift(s, g)
    return moment_matrix(
        shifted, m, provenance or f"localizing matrix for {g} at m={m}"
    )


def localizing_order(seq_order: int, g: Polynomial) -> int:
    """Largest m with 2m + deg g <= seq_order (may be negative)."""
    return (seq_order - g.degree()) // 2


def hankel_matrix(s: TruncatedSequence, m: int) -> MomentMatrix:
    """Univariate Hankel matrix (s_{i+j}); requires d = 1."""
    if s.dim != 1:
        raise ValueError("hankel_matrix requires a univariate sequence")
    return moment_matrix(s, m, provenance=f"hankel matrix m={m}")


# -- text format ------------------------------------------------------


def sequence_to_obj(s: TruncatedSequence) -> dict:
    vals = [
        {"exp": list(e), "val": s.values[e]}
        for e in sorted(s.values, key=grlex_key)
    ]
    return {"dim": s.dim, "order": s.order, "values": vals}


def sequence_from_obj(obj) -> TruncatedSequence:
    dim = int(obj["dim"])
    order = int(obj["order"])
    vals = {}
    for rec in obj["values"]:
        exp = tuple(int(e) for e in rec["exp"])
        if exp in vals:
            raise ValueError(f"duplicate exponent {exp} in sequence")
        if total_degree(exp) > order:
            raise ValueError(f"exponent {exp} exceeds declared order {order}")
        vals[exp] = float(rec["val"])
    return TruncatedSequence(dim, order, vals)


def dump_sequence(s: TruncatedSequence, fh):
    json.dump(sequence_to_obj(s), fh, indent=1)
    fh.write("\n")


def load_sequence(fh) -> TruncatedSequence:
    return sequence_from_obj(json.load(fh))
