"""Backend selection for the DP kernels.

The compiled extension is used when importable; otherwise the pure-Python
fallback. Set CMGEVAL_PURE_PYTHON=1 to force the fallback (useful for the
benchmark and for debugging). Both backends are numerically identical.
"""

import os

if os.environ.get("CMGEVAL_PURE_PYTHON"):
    from cmgeval import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from cmgeval import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from cmgeval import _pykernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"

lcs_length = _impl.lcs_length
edit_counts = _impl.edit_counts


def intern_ids(*seqs):
    """Map token strings to small ints shared across the given sequences,
    the form the kernels consume."""
    table: dict[str, int] = {}
    out = []
    for seq in seqs:
        out.append([table.setdefault(tok, len(table)) for tok in seq])
    return out
