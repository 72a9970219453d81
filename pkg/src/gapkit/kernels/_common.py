"""Solution-array allocation shared by the kernels.

Kernels allocate their output through :func:`alloc_solution` so the
allocation happens inside whatever timed region wraps the kernel call.
Callables appended to :data:`allocation_hooks` are invoked as
``hook(name, nbytes)`` on every allocation; the benchmark tests use this to
check where allocations fall relative to trial timing.
"""

import numpy as np

allocation_hooks = []


def alloc_solution(name, n, dtype):
    out = np.empty(n, dtype=dtype)
    for hook in allocation_hooks:
        hook(name, out.nbytes)
    return out


class KernelError(ValueError):
    """Invalid kernel input (bad source, non-positive weight, ...)."""
