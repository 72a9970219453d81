"""Atomic array operations for numba-compiled kernels.

Numba exposes no CPU atomics, so these intrinsics emit LLVM ``cmpxchg`` and
``atomicrmw`` instructions directly on an array element.  All use monotonic
(relaxed) ordering; the parallel regions that use them end in a barrier.
"""

from numba import types
from numba.core import cgutils
from numba.extending import intrinsic


def _element_pointer(context, builder, aryty, ary, idx):
    ary = context.make_array(aryty)(context, builder, ary)
    return cgutils.get_item_pointer(context, builder, aryty, ary, [idx])


@intrinsic
def cas(typingctx, arr, idx, expected, desired):
    """``arr[idx] = desired`` if it still equals ``expected``; True on success."""
    if not isinstance(arr, types.Array):
        return None

    def codegen(context, builder, sig, args):
        aryty, idxty, expty, desty = sig.args
        ptr = _element_pointer(context, builder, aryty, args[0], args[1])
        exp = context.cast(builder, args[2], expty, aryty.dtype)
        des = context.cast(builder, args[3], desty, aryty.dtype)
        res = builder.cmpxchg(ptr, exp, des, "monotonic", "monotonic")
        return builder.extract_value(res, 1)

    return types.boolean(arr, idx, expected, desired), codegen


def _rmw(op):
    def impl(typingctx, arr, idx, val):
        if not isinstance(arr, types.Array):
            return None

        def codegen(context, builder, sig, args):
            aryty, idxty, valty = sig.args
            ptr = _element_pointer(context, builder, aryty, args[0], args[1])
            v = context.cast(builder, args[2], valty, aryty.dtype)
            return builder.atomic_rmw(op, ptr, v, "monotonic")

        return arr.dtype(arr, idx, val), codegen

    impl.__name__ = f"atomic_{op}"
    return intrinsic(impl)


# each returns the value held before the update
atomic_add = _rmw("add")
atomic_fadd = _rmw("fadd")
atomic_min = _rmw("min")
atomic_umin = _rmw("umin")
atomic_or = _rmw("or")
