"""Truncated moment problems on curves with bumps.

Library for positivity certificates, measure decompositions, and
sum-of-squares module membership on support sets of the form
V(q) union [K_Q intersect {q > 0}].
"""

from .certify import CertificateReport, certify
from .decompose import (LambdaReport, decompose_measure, lambda_from, nu_from,
                        reconstruct, verify_lambda)
from .measures import (AtomicMeasure, CurveMeasure, SupportAudit, moments_of,
                       support_audit)
from .momentseq import (MomentMatrix, TruncatedSequence, hankel_matrix,
                        localizing_matrix, moment_matrix, riesz_apply, shift)
from .polyring import Polynomial, monomial_basis, poly_eval
from .psd import eigen_sym, is_psd, min_eigenvalue, psd_project
from .sampling import eval_nonneg_sample, support_points
from .scenario import (CatalogEntry, Scenario, archimedean_check, catalog,
                       flip_bumps)
from .sosearch import (GramDecomposition, SearchResult, find_certificate,
                       verify_certificate)

__all__ = [
    "AtomicMeasure", "CatalogEntry", "CertificateReport", "CurveMeasure",
    "GramDecomposition", "LambdaReport", "MomentMatrix", "Polynomial",
    "Scenario", "SearchResult", "SupportAudit", "TruncatedSequence",
    "archimedean_check", "catalog", "certify", "decompose_measure",
    "eigen_sym", "eval_nonneg_sample", "find_certificate", "flip_bumps",
    "hankel_matrix", "is_psd", "lambda_from", "localizing_matrix",
    "min_eigenvalue", "moment_matrix", "moments_of", "monomial_basis",
    "nu_from", "poly_eval", "psd_project", "reconstruct", "riesz_apply",
    "shift", "support_audit", "support_points", "verify_certificate",
    "verify_lambda",
]

__version__ = "0.1.0"
