"""Finite-model laboratory for torsor, bitorsor and gerbe patching.

The heavy lifting lives in the C++ extension module ``_patchlab``; this
package re-exports its surface and adds a small convenience wrapper for
running instance documents from python objects.
"""

import json as _json

from _patchlab import (  # noqa: F401
    FiniteGroup,
    PreconditionFailedError,
    ResourceLimitError,
    ValidationError,
    are_isomorphic,
    automorphism_count,
    bitorsor_class_count,
    center_order,
    cyclic,
    dihedral,
    group,
    group_names,
    h0_class_count,
    h0_orientation,
    h1_crossed_class_count,
    is_complete,
    myles_exact,
    run,
    symmetric,
    system_names,
)

__all__ = [
    "FiniteGroup",
    "PreconditionFailedError",
    "ResourceLimitError",
    "ValidationError",
    "are_isomorphic",
    "automorphism_count",
    "bitorsor_class_count",
    "center_order",
    "cyclic",
    "dihedral",
    "group",
    "group_names",
    "h0_class_count",
    "h0_orientation",
    "h1_crossed_class_count",
    "is_complete",
    "myles_exact",
    "run",
    "run_instance",
    "symmetric",
    "system_names",
]


def run_instance(instance, check=False, edge_op=""):
    """Run an instance document given as a dict; returns the report dict."""
    result = run(_json.dumps(instance), check, edge_op)
    return result["report"]
