"""Sparse multivariate polynomials with real coefficients.

A polynomial in d variables is a finite map from exponent tuples
(g1, ..., gd) to nonzero float coefficients.  All downstream matrix
indexing uses the single graded-lexicographic monomial order produced by
``monomial_basis``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

Exponent = tuple[int, ...]


def total_degree(exp: Exponent) -> int:
    return sum(exp)


def _check_exponent(exp, dim):
    if len(exp) != dim:
        raise ValueError(f"exponent {exp} has length {len(exp)}, expected {dim}")
    if any((not isinstance(e, int)) or e < 0 for e in exp):
        raise ValueError(f"exponent {exp} must consist of non-negative integers")


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: ``terms`` maps exponent tuples to coefficients.

    Zero coefficients are never stored; the zero polynomial has an empty
    term map.
    """

    dim: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        clean = {}
        for exp, c in self.terms.items():
            exp = tuple(int(e) for e in exp)
            _check_exponent(exp, self.dim)
            c = float(c)
            if c != 0.0:
                clean[exp] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(dim):
        return Polynomial(dim, {})

    @staticmethod
    def constant(dim, c):
        return Polynomial(dim, {(0,) * dim: c})

    @staticmethod
    def variable(dim, i):
        """The monomial x_i (0-based index) in dimension dim."""
        exp = [0] * dim
        exp[i] = 1
        return Polynomial(dim, {tuple(exp): 1.0})

    @staticmethod
    def monomial(exp, coef=1.0):
        return Polynomial(len(exp), {tuple(exp): coef})

    # -- ring operations ----------------------------------------------

    def _require_same_dim(self, other):
        if self.dim != other.dim:
            raise ValueError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.dim, other)
        self._require_same_dim(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0.0) + c
        return Polynomial(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(
                self.dim, {e: c * other for e, c in self.terms.items()}
            )
        self._require_same_dim(other)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(a + b for a, b in zip(ea, eb))
                terms[exp] = terms.get(exp, 0.0) + ca * cb
        return Polynomial(self.dim, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.dim, 1.0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.dim == other.dim
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    # -- queries ------------------------------------------------------

    def degree(self):
        """Total degree; the zero polynomial has degree 0 by convention."""
        if not self.terms:
            return 0
        return max(total_degree(e) for e in self.terms)

    def is_zero(self):
        return not self.terms

    def __call__(self, point):
        return poly_eval(self, point)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=grlex_key):
            c = self.terms[exp]
            mono = "*".join(
                f"x{j + 1}" if e == 1 else f"x{j + 1}^{e}"
                for j, e in enumerate(exp)
                if e > 0
            )
            if mono:
                parts.append(f"{c:g}*{mono}")
            else:
                parts.append(f"{c:g}")
        return " + ".join(parts)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_eval(p: Polynomial, point) -> float:
    """Evaluate p at a point in R^d, with the convention 0**0 = 1."""
    point = tuple(point)
    if len(point) != p.dim:
        raise ValueError(
            f"point has dimension {len(point)}, polynomial has {p.dim}"
        )
    total = 0.0
    for exp, c in p.terms.items():
        v = c
        for x, e in zip(point, exp):
            if e:
                v *= x**e
        total += v
    return total


def grlex_key(exp: Exponent):
    """Sort key realizing graded lexicographic order (x1 > x2 > ...)."""
    return (total_degree(exp), tuple(-e for e in exp))


def monomial_basis(dim: int, degree: int) -> list[Exponent]:
    """All exponents with total degree <= degree, in graded lex order.

    The result has exactly binomial(degree + dim, dim) entries.
    """
    if degree < 0:
        raise ValueError("degree bound must be non-negative")

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    out = []
    for t in range(degree + 1):
        out.extend(compositions(t, dim))
    assert len(out) == math.comb(degree + dim, dim)
    return out


# -- text format ------------------------------------------------------


def poly_to_records(p: Polynomial) -> list[dict]:
    return [
        {"exp": list(exp), "coef": p.terms[exp]}
        for exp in sorted(p.terms, key=grlex_key)
    ]


def poly_from_records(records, dim=None) -> Polynomial:
    """Parse ``[{"exp": [...], "coef": c}, ...]``; duplicates rejected."""
    records = list(records)
    if not records:
        if dim is None:
            raise ValueError("cannot infer dimension of an empty polynomial")
        return Polynomial.zero(dim)
    if dim is None:
        dim = len(records[0]["exp"])
    terms = {}
    for rec in records:
        exp = tuple(int(e) for e in rec["exp"])
        if exp in terms:
            raise ValueError(f"duplicate exponent {exp} in polynomial record")
        terms[exp] = float(rec["coef"])
    return Polynomial(dim, terms)


def dump_poly(p: Polynomial, fh):
    """One JSON record per line."""
    for rec in poly_to_records(p):
        fh.write(json.dumps(rec) + "\n")


def load_poly(fh, dim=None) -> Polynomial:
    records = [json.loads(line) for line in fh if line.strip()]
    return poly_from_records(records, dim=dim)
