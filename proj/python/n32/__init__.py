"""Sub-Laplacian toolkit on the free step-two group N(3,2)."""

import json as _json

from ._core import (  # noqa: F401
    ConvergenceError,
    DegenerateError,
    QuadratureSpec,
    UnderflowError,
    __version__,
    cc_distance,
    cli,
    constants_W,
    dilate,
    grad_p_t,
    heat_residual,
    heisenberg_distance,
    horiz_grad_log_pt,
    inverse,
    multiply,
    p1_raw,
    p_t,
    raw_value_at_origin,
    simulate,
)
from . import _core


def suite(name, n=100, seed=1):
    """Run one exact identity suite; returns its JSON report as a dict."""
    return _json.loads(_core._suite(name, n, seed))


def reverse_poincare(t=1.0, n_paths=20000, seed=1):
    return _json.loads(_core._reverse_poincare(t, n_paths, seed))


def li_yau(t_list, n=10, seed=1, spec=None):
    return _json.loads(_core._li_yau(list(t_list), n, seed, spec or QuadratureSpec()))
