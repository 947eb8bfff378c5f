"""Exact-arithmetic engine for generalized mKdV/KdV hierarchies.

Thin python layer over the compiled ``_core`` module. In an installed wheel
the extension lives next to this file; during development it can be picked up
from a CMake build tree via the ``SOLITON_BUILD_DIR`` environment variable.
"""

import json as _json

try:
    from . import _core  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - build-tree fallback
    import os
    import sys

    _build_dir = os.environ.get("SOLITON_BUILD_DIR")
    if not _build_dir:
        raise
    sys.path.insert(0, _build_dir)
    import _core  # type: ignore[no-redef]

DiffPoly = _core.DiffPoly
exponent_sequence = _core.exponent_sequence
mkdv_flow = _core.mkdv_flow
kdv_flow = _core.kdv_flow
miura = _core.miura
screening = _core.screening
conserved_density = _core.conserved_density
poisson_bracket = _core.poisson_bracket
gamma_rank = _core.gamma_rank
dressing_matches_recursion = _core.dressing_matches_recursion


def table(algebra):
    """Affine data table row (Coxeter number, exponents, labels, pairing)."""
    return _json.loads(_core.table_json(algebra))


__all__ = [
    "DiffPoly",
    "table",
    "exponent_sequence",
    "mkdv_flow",
    "kdv_flow",
    "miura",
    "screening",
    "conserved_density",
    "poisson_bracket",
    "gamma_rank",
    "dressing_matches_recursion",
]
