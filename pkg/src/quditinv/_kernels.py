"""Hot inner loops: the signed permutation-tuple sum and sparse contraction.

Each kernel has a loop form, compiled with numba when available, and a
vectorized numpy form. Set ``QUDITINV_DISABLE_NUMBA=1`` to force numpy.
Both forms are always importable so tests and benchmarks can compare them.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("QUDITINV_DISABLE_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
)

_CHUNK = 1 << 16


def _signed_tuple_sum_loop(u_flat, n, k, perms, signs, fix_first):
    m = perms.shape[0]
    free = k - 1 if fix_first else k
    offset = 1 if fix_first else 0
    strides = np.empty(k, np.int64)
    s = 1
    for j in range(k - 1, -1, -1):
        strides[j] = s
        s *= n
    digits = np.zeros(free, np.int64)
    n_terms = m**free
    acc = 0j
    for _ in range(n_terms):
        sgn = 1.0
        for j in range(free):
            sgn *= signs[digits[j]]
        term = 1.0 + 0j
        for h in range(n):
            idx = h * strides[0] if fix_first else 0
            for j in range(free):
                idx += perms[digits[j], h] * strides[j + offset]
            term *= u_flat[idx]
        acc += sgn * term
        j = free - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < m:
                break
            digits[j] = 0
            j -= 1
    return acc


def _sparse_contract_loop(values, rows, u_flat):
    acc = 0j
    d = rows.shape[1]
    for t in range(values.shape[0]):
        term = values[t]
        for a in range(d):
            term *= u_flat[rows[t, a]]
        acc += term
    return acc


def signed_tuple_sum_numpy(u_flat, n, k, perms, signs, fix_first):
    """Sum over permutation tuples of prod(signs) * prod_h u[h, s_2(h), ..., s_k(h)].

    With ``fix_first`` the first slot uses the identity; otherwise it also
    ranges over all permutations.
    """
    m = perms.shape[0]
    free = k - 1 if fix_first else k
    strides = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    free_strides = strides[1:] if fix_first else strides
    base = np.arange(n, dtype=np.int64) * strides[0] if fix_first else np.zeros(n, np.int64)
    n_terms = m**free
    place = m ** np.arange(free - 1, -1, -1, dtype=np.int64)
    acc = 0j
    for start in range(0, n_terms, _CHUNK):
        t = np.arange(start, min(start + _CHUNK, n_terms), dtype=np.int64)
        digits = (t[:, None] // place[None, :]) % m  # (T, free)
        chosen = perms[digits]  # (T, free, n)
        idx = base[None, :] + np.einsum("tjh,j->th", chosen, free_strides)
        sgn = np.prod(signs[digits], axis=1)
        acc += np.sum(sgn * np.prod(u_flat[idx], axis=1))
    return complex(acc)


def sparse_contract_numpy(values, rows, u_flat):
    """sum_t values[t] * prod_a u_flat[rows[t, a]]."""
    if values.size == 0:
        return 0j
    return complex(np.sum(values * np.prod(u_flat[rows], axis=1)))


if NUMBA_AVAILABLE:
    _signed_tuple_sum_jit = numba.njit(cache=True)(_signed_tuple_sum_loop)
    _sparse_contract_jit = numba.njit(cache=True)(_sparse_contract_loop)

    def signed_tuple_sum_numba(u_flat, n, k, perms, signs, fix_first):
        return complex(_signed_tuple_sum_jit(u_flat, n, k, perms, signs, fix_first))

    def sparse_contract_numba(values, rows, u_flat):
        return complex(_sparse_contract_jit(values, rows, u_flat))

else:  # pragma: no cover
    signed_tuple_sum_numba = None
    sparse_contract_numba = None


if USE_NUMBA:
    signed_tuple_sum = signed_tuple_sum_numba
    sparse_contract = sparse_contract_numba
else:
    signed_tuple_sum = signed_tuple_sum_numpy
    sparse_contract = sparse_contract_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
