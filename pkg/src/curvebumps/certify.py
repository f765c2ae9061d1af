"""Positivity-certificate checker for the module Sigma^2 + qQ.

A truncated sequence s of order 2n passes when
  * its moment matrix at order n is PSD,
  * the localizing matrix for q is PSD, and
  * the localizing matrix for each q*r_j is PSD,
each at the largest matrix order the truncation supports.  The check for
q itself (the sigma_0' slot of the enhanced module generated by
q, q*r_1, ..., q*r_k) is deliberately included: the functional must be
non-negative on q * Sigma^2 as well.

A pass means "certificate satisfied at order 2n"; it is not an existence
proof for a representing measure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .momentseq import (TruncatedSequence, localizing_matrix,
                        localizing_order, moment_matrix)
from .psd import is_psd
from .scenario import Scenario, VETTED

PASS = "pass"
FAIL = "fail"
NOT_CHECKABLE = "not-checkable"


@dataclass(frozen=True)
class MatrixCheck:
    label: str
    matrix_order: int  # -1 when not checkable
    min_eigenvalue: float | None
    verdict: str
    witness: np.ndarray | None = None


@dataclass(frozen=True)
class CertificateReport:
    checks: tuple
    verdict: str
    sequence_order: int
    curve_assertion: str

    @property
    def passed(self):
        return self.verdict == PASS

    def render(self) -> str:
        lines = [
            f"certificate check at truncation order {self.sequence_order}"
        ]
        if self.curve_assertion != VETTED:
            lines.append("warning: curve hypotheses asserted by user, not vetted")
        for c in self.checks:
            if c.verdict == NOT_CHECKABLE:
                lines.append(f"  {c.label:<24} {NOT_CHECKABLE} (truncation too small)")
            else:
                lines.append(
                    f"  {c.label:<24} m={c.matrix_order}  "
                    f"min eig {c.min_eigenvalue: .6e}  {c.verdict}"
                )
        tail = {
            PASS: f"certificate satisfied at order {self.sequence_order}",
            FAIL: "certificate refuted",
            NOT_CHECKABLE: "certificate not checkable at this truncation",
        }[self.verdict]
        lines.append(f"overall: {tail}")
        return "\n".join(lines)


def _check_one(label, matrix, tol):
    v = is_psd(matrix.entries, tol)
    return MatrixCheck(
        label=label,
        matrix_order=0,  # replaced by caller
        min_eigenvalue=v.min_eigenvalue,
        verdict=PASS if v.ok else FAIL,
        witness=v.witness,
    )


def certify(s: TruncatedSequence, scenario: Scenario, tol: float = 1e-8) -> CertificateReport:
    """Run all PSD checks for the scenario against a truncated sequence."""
    if s.dim != scenario.dim:
        raise ValueError("sequence/scenario dimension mismatch")
    if s.order % 2 != 0:
        raise ValueError("sequence order must be even")

    checks = []

    n = s.order // 2
    mm = moment_matrix(s, n, provenance="moment matrix")
    chk = _check_one("moment matrix", mm, tol)
    checks.append(MatrixCheck(chk.label, n, chk.min_eigenvalue, chk.verdict, chk.witness))

    gens = [("q", scenario.q)]
    for j, r in enumerate(scenario.generators, start=1):
        gens.append((f"q*r{j}", scenario.q * r))
    for label, g in gens:
        m = localizing_order(s.order, g)
        if m < 0:
            checks.append(MatrixCheck(label, -1, None, NOT_CHECKABLE))
            continue
        lm = localizing_matrix(s, g, m, provenance=f"localizing {label}")
        chk = _check_one(label, lm, tol)
        checks.append(MatrixCheck(label, m, chk.min_eigenvalue, chk.verdict, chk.witness))

    if any(c.verdict == FAIL for c in checks):
        verdict = FAIL
    elif any(c.verdict == NOT_CHECKABLE for c in checks):
        verdict = NOT_CHECKABLE
    else:
        verdict = PASS
    return CertificateReport(
        tuple(checks), verdict, s.order, scenario.curve_assertion
    )
