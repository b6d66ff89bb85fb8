"""Block-shift kernels behind every dilation operator.

A finitely supported state is ``(head, blocks)`` with ``head`` of shape (n,)
and ``blocks`` of shape (depth, bd).  Each kernel returns the image state with
depth + 1 blocks; trimming is left to the caller.

Two implementations share one signature: vectorized numpy, and numba
``@njit`` loops.  The numba loops avoid numpy's per-call dispatch and win for
small n (about 2-3x per call at n <= 4); from n around 16 the BLAS-backed
numpy products are faster (see benchmarks/bench_kernels.py).  Select with the
``ANDO_DILATION_BACKEND`` environment variable (``numba`` or ``numpy``);
the default is numba when it imports.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

BACKEND_ENV = "ANDO_DILATION_BACKEND"


# --- numpy ----------------------------------------------------------------


def _np_minimal_v1(t, d, s, head, blocks):
    n = head.shape[0]
    depth = blocks.shape[0]
    x = np.zeros((depth + 1, 2 * n), dtype=np.complex128)
    x[0, :n] = d @ head
    x[1:, :n] = blocks[:, :n]
    x[:depth, n:] = blocks[:, n:]
    return t @ head, x @ s.T


def _np_minimal_v2(t, d, s_inv, head, blocks):
    n = head.shape[0]
    depth = blocks.shape[0]
    p = blocks @ s_inv.T
    x = np.zeros((depth + 1, 2 * n), dtype=np.complex128)
    x[:depth, :n] = p[:, :n]
    x[0, n:] = d @ head
    x[1:, n:] = p[:, n:]
    return t @ head, x


def _np_prepend(t, d, head, blocks):
    n = head.shape[0]
    depth, bd = blocks.shape
    x = np.zeros((depth + 1, bd), dtype=np.complex128)
    x[0, :n] = d @ head
    x[1:] = blocks
    return t @ head, x


def _np_half_shift(d, head, blocks):
    # stream of H-slots shifted right by two slots, (D h, 0) in front
    n = head.shape[0]
    depth, bd = blocks.shape
    half = bd // 2
    x = np.zeros((depth + 1, bd), dtype=np.complex128)
    x[0, :n] = d @ head
    x[1:, :half] = blocks[:, half:]
    x[:depth, half:] = blocks[:, :half]
    return x


def _np_classical_v1(t, d, u, head, blocks):
    return t @ head, _np_half_shift(d, head, blocks) @ u.T


def _np_classical_v2(t, d, u_inv, head, blocks):
    return t @ head, _np_half_shift(d, head, blocks @ u_inv.T)


numpy_impl = SimpleNamespace(
    name="numpy",
    minimal_v1=_np_minimal_v1,
    minimal_v2=_np_minimal_v2,
    prepend=_np_prepend,
    classical_v1=_np_classical_v1,
    classical_v2=_np_classical_v2,
)


# --- numba ----------------------------------------------------------------


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def matvec(a, x, out, offset):
        m, k = a.shape
        for i in range(m):
            acc = 0j
            for j in range(k):
                acc += a[i, j] * x[j]
            out[offset + i] = acc

    @njit(cache=True)
    def apply_rows(a, rows):
        out = np.empty_like(rows)
        for r in range(rows.shape[0]):
            matvec(a, rows[r], out[r], 0)
        return out

    @njit(cache=True)
    def minimal_v1(t, d, s, head, blocks):
        n = head.shape[0]
        depth = blocks.shape[0]
        new_head = np.empty(n, dtype=np.complex128)
        matvec(t, head, new_head, 0)
        x = np.zeros((depth + 1, 2 * n), dtype=np.complex128)
        matvec(d, head, x[0], 0)
        for k in range(depth):
            for i in range(n):
                x[k + 1, i] = blocks[k, i]
                x[k, n + i] = blocks[k, n + i]
        return new_head, apply_rows(s, x)

    @njit(cache=True)
    def minimal_v2(t, d, s_inv, head, blocks):
        n = head.shape[0]
        depth = blocks.shape[0]
        new_head = np.empty(n, dtype=np.complex128)
        matvec(t, head, new_head, 0)
        p = apply_rows(s_inv, blocks)
        x = np.zeros((depth + 1, 2 * n), dtype=np.complex128)
        matvec(d, head, x[0], n)
        for k in range(depth):
            for i in range(n):
                x[k, i] = p[k, i]
                x[k + 1, n + i] = p[k, n + i]
        return new_head, x

    @njit(cache=True)
    def prepend(t, d, head, blocks):
        n = head.shape[0]
        depth, bd = blocks.shape
        new_head = np.empty(n, dtype=np.complex128)
        matvec(t, head, new_head, 0)
        x = np.zeros((depth + 1, bd), dtype=np.complex128)
        matvec(d, head, x[0], 0)
        for k in range(depth):
            for i in range(bd):
                x[k + 1, i] = blocks[k, i]
        return new_head, x

    @njit(cache=True)
    def half_shift(d, head, blocks):
        depth, bd = blocks.shape
        half = bd // 2
        x = np.zeros((depth + 1, bd), dtype=np.complex128)
        matvec(d, head, x[0], 0)
        for k in range(depth):
            for i in range(half):
                x[k + 1, i] = blocks[k, half + i]
                x[k, half + i] = blocks[k, i]
        return x

    @njit(cache=True)
    def classical_v1(t, d, u, head, blocks):
        n = head.shape[0]
        new_head = np.empty(n, dtype=np.complex128)
        matvec(t, head, new_head, 0)
        return new_head, apply_rows(u, half_shift(d, head, blocks))

    @njit(cache=True)
    def classical_v2(t, d, u_inv, head, blocks):
        n = head.shape[0]
        new_head = np.empty(n, dtype=np.complex128)
        matvec(t, head, new_head, 0)
        return new_head, half_shift(d, head, apply_rows(u_inv, blocks))

    return SimpleNamespace(
        name="numba",
        minimal_v1=minimal_v1,
        minimal_v2=minimal_v2,
        prepend=prepend,
        classical_v1=classical_v1,
        classical_v2=classical_v2,
    )


try:
    numba_impl = _build_numba()
except ImportError:
    numba_impl = None


def select_backend(name: str | None = None) -> SimpleNamespace:
    name = (name or os.environ.get(BACKEND_ENV, "numba")).strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and numba_impl is not None:
        return numba_impl
    return numpy_impl


kernels = select_backend()
