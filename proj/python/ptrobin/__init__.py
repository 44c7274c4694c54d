"""PT-symmetric Robin Laplacian on (0, d): spectrum, metric operator, checks."""

import json

from ._core import (
    DegenerateAlphaError,
    NotInDomainError,
    eigenvalue,
    general_eigenvalues,
    is_degenerate,
    phi,
    psi,
    quadratic_form,
    theta_apply,
    verify_json,
)

__all__ = [
    "DegenerateAlphaError",
    "NotInDomainError",
    "eigenvalue",
    "general_eigenvalues",
    "is_degenerate",
    "phi",
    "psi",
    "quadratic_form",
    "theta_apply",
    "verify",
]


def verify(suites=None, alphas=None, n=4096, seed=None):
    """Run the verification suites and return the report as a dict."""
    kwargs = {"suites": suites, "alphas": alphas, "n": n}
    if seed is not None:
        kwargs["seed"] = seed
    return json.loads(verify_json(**kwargs))
