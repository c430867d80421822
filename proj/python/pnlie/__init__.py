"""Exact computations with Poisson n-Lie algebras and Jacobian brackets."""

import json

from ._pnlie import (
    Algebra,
    BudgetExceeded,
    JacobianBracket,
    ParseError,
    __version__,
    classify,
    common_eigenvector,
    fixture_names,
    generalized_eigenspace,
    is_hypo_nilpotent,
    is_ideal,
    leibniz_tensor,
    nilradical,
    poisson_quotient_tilde,
    poisson_to_n_lie,
    run_cli,
    series,
    structure_properties,
    tensor_poisson_n,
    verify,
    xu_tensor,
)


def run(*args):
    """Run a command line and return (exit code, parsed report)."""
    code, out, _ = run_cli([str(a) for a in args])
    return code, json.loads(out) if out.strip() else None


__all__ = [name for name in dir() if not name.startswith("_")]
