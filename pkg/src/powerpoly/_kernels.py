"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set POWERPOLY_PURE=1 to force the fallback (used by the benchmark and by
tests that pin down backend equivalence).
"""

import os

if os.environ.get("POWERPOLY_PURE"):
    from powerpoly._kernels_pure import *  # noqa: F401,F403
else:
    try:
        from powerpoly._kernels_cy import *  # type: ignore # noqa: F401,F403
    except ImportError:
        from powerpoly._kernels_pure import *  # noqa: F401,F403
