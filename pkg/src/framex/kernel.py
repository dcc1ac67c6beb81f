"""Backend selection for the independence kernel.

The compiled extension is used when it imported cleanly and the graph fits
its 64-edge/64-vertex cap; otherwise the pure-Python twin takes over.  Set
FRAMEX_KERNEL=pure|compiled to force a backend (tests and benchmarks do).
"""

from __future__ import annotations

import os

from ._kernel_py import PyKernel

try:
    from ._fastkernel import FastKernel
except ImportError:  # extension not built
    FastKernel = None


def available_backends() -> tuple[str, ...]:
    return ("pure", "compiled") if FastKernel is not None else ("pure",)


def default_backend() -> str:
    forced = os.environ.get("FRAMEX_KERNEL")
    if forced in ("pure", "compiled"):
        return forced
    return "compiled" if FastKernel is not None else "pure"


def make_kernel(n, us, vs, balance_rows, lift, backend: str | None = None):
    choice = backend or default_backend()
    if choice == "compiled":
        if FastKernel is None:
            raise RuntimeError("compiled kernel requested but not built")
        if n <= 64 and len(us) <= 64 and len(balance_rows) <= 64:
            return FastKernel(n, list(us), list(vs), list(balance_rows), lift)
        choice = "pure"  # too large for the compiled cap
    return PyKernel(n, us, vs, balance_rows, lift)
