"""Dense tensor states, covariant tensors and the actions on them.

Indices are 0-based: a component u[p_1, ..., p_k] has p_i in range(n), and
the flat (row-major) position is sum_i p_i * n**(k-1-i), so p_1 varies
slowest. Arrays are stored as complex128 and frozen after construction.
"""
from __future__ import annotations

import json
import math
from itertools import permutations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import ArgumentError, CapacityError

MAX_COVARIANT_COMPONENTS = 2**26


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def flat_index(multi: Sequence[int], n: int) -> int:
    idx = 0
    for p in multi:
        if not 0 <= p < n:
            raise ArgumentError(f"index {p} out of range for n={n}")
        idx = idx * n + p
    return idx


def multi_index(flat: int, n: int, k: int) -> tuple[int, ...]:
    if not 0 <= flat < n**k:
        raise ArgumentError(f"flat index {flat} out of range for n={n}, k={k}")
    digits = []
    for _ in range(k):
        flat, p = divmod(flat, n)
        digits.append(p)
    return tuple(reversed(digits))


class TensorState:
    """An element of (C^n)^{(x)k}, held as an array of shape (n,) * k."""

    __slots__ = ("array",)

    def __init__(self, array):
        array = _frozen(array)
        if array.ndim < 1:
            raise ArgumentError("a tensor state needs at least one factor")
        n = array.shape[0]
        if n < 2 or any(s != n for s in array.shape):
            raise ArgumentError(f"every factor must have the same dimension >= 2, got shape {array.shape}")
        self.array = array

    @classmethod
    def from_components(cls, n: int, k: int, components) -> "TensorState":
        components = np.asarray(components, dtype=np.complex128)
        if components.size != n**k:
            raise ArgumentError(f"expected {n**k} components for n={n}, k={k}, got {components.size}")
        return cls(components.reshape((n,) * k))

    @property
    def n(self) -> int:
        return self.array.shape[0]

    @property
    def k(self) -> int:
        return self.array.ndim

    @property
    def components(self) -> np.ndarray:
        return self.array.reshape(-1)

    @property
    def scale(self) -> float:
        """Largest component magnitude (1.0 for the zero state)."""
        m = float(np.max(np.abs(self.array)))
        return m if m > 0 else 1.0

    def __getitem__(self, index):
        return self.array[index]

    def scaled(self, factor: complex) -> "TensorState":
        return TensorState(self.array * factor)

    def __add__(self, other: "TensorState") -> "TensorState":
        if self.array.shape != other.array.shape:
            raise ArgumentError(f"shape mismatch {self.array.shape} vs {other.array.shape}")
        return TensorState(self.array + other.array)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorState) and np.array_equal(self.array, other.array)

    def __repr__(self) -> str:
        return f"TensorState(n={self.n}, k={self.k})"

    def allclose(self, other: "TensorState", rtol: float = 1e-10, atol: float = 1e-12) -> bool:
        return self.array.shape == other.array.shape and np.allclose(
            self.array, other.array, rtol=rtol, atol=atol
        )


class CovariantTensor:
    """Component array Q[i_11, ..., i_1k, i_21, ..., i_dk]: d rows of k indices.

    Its array has shape (n,) * (d * k) with the k indices of row 1 first. It
    defines the degree-d polynomial u -> sum Q[rows] * prod_a u[row a].
    """

    __slots__ = ("array", "n", "d", "k")

    def __init__(self, array, n: int, d: int, k: int):
        check_capacity(n, d, k)
        array = np.asarray(array)
        if array.size != n ** (d * k):
            raise ArgumentError(f"expected {n ** (d * k)} components, got {array.size}")
        self.array = _frozen(array.reshape((n,) * (d * k)))
        self.n, self.d, self.k = n, d, k

    @classmethod
    def zeros(cls, n: int, d: int, k: int) -> "CovariantTensor":
        check_capacity(n, d, k)
        return cls(np.zeros((n,) * (d * k), np.complex128), n, d, k)

    @classmethod
    def ones(cls, n: int, d: int, k: int) -> "CovariantTensor":
        check_capacity(n, d, k)
        return cls(np.ones((n,) * (d * k), np.complex128), n, d, k)

    def rows_view(self) -> np.ndarray:
        """The array reshaped to (n**k,) * d: one flat state index per row."""
        return self.array.reshape((self.n**self.k,) * self.d)

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.array))

    def permute_rows(self, perm: Sequence[int]) -> "CovariantTensor":
        return CovariantTensor(np.transpose(self.rows_view(), perm), self.n, self.d, self.k)

    def symmetrized(self) -> "CovariantTensor":
        """Average over all d! permutations of the rows."""
        acc = np.zeros_like(self.rows_view())
        perms = list(permutations(range(self.d)))
        for perm in perms:
            acc = acc + np.transpose(self.rows_view(), perm)
        return CovariantTensor(acc / len(perms), self.n, self.d, self.k)

    def is_row_symmetric(self, sign: int = 1, atol: float = 0.0) -> bool:
        """True if permuting rows leaves Q unchanged (``sign=-1``: multiplies it by sgn)."""
        from .symgroup import sign as perm_sign

        base = self.rows_view()
        for perm in permutations(range(self.d)):
            factor = perm_sign(perm) if sign == -1 else 1
            if not np.allclose(np.transpose(base, perm), factor * base, rtol=0.0, atol=atol):
                return False
        return True

    def scaled(self, factor: complex) -> "CovariantTensor":
        return CovariantTensor(self.array * factor, self.n, self.d, self.k)

    def __repr__(self) -> str:
        return f"CovariantTensor(n={self.n}, d={self.d}, k={self.k})"


def check_capacity(n: int, d: int, k: int) -> None:
    if n < 1 or d < 0 or k < 1:
        raise ArgumentError(f"bad covariant tensor shape n={n}, d={d}, k={k}")
    if n ** (d * k) > MAX_COVARIANT_COMPONENTS:
        raise CapacityError(
            f"covariant tensor with n={n}, d={d}, k={k} needs {n ** (d * k)} components "
            f"(limit {MAX_COVARIANT_COMPONENTS})"
        )


class LocalGroupElement:
    """A k-tuple of n x n complex matrices, one per tensor factor."""

    __slots__ = ("matrices",)

    def __init__(self, matrices: Iterable):
        mats = tuple(_frozen(m) for m in matrices)
        if not mats:
            raise ArgumentError("need at least one matrix")
        n = mats[0].shape[0]
        for m in mats:
            if m.shape != (n, n):
                raise ArgumentError(f"all matrices must be {n}x{n}, got {m.shape}")
        self.matrices = mats

    @classmethod
    def identity(cls, n: int, k: int) -> "LocalGroupElement":
        return cls([np.eye(n)] * k)

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def k(self) -> int:
        return len(self.matrices)

    def is_special_linear(self, tol: float = 1e-10) -> bool:
        return all(abs(np.linalg.det(m) - 1) <= tol for m in self.matrices)

    def __matmul__(self, other: "LocalGroupElement") -> "LocalGroupElement":
        if (self.n, self.k) != (other.n, other.k):
            raise ArgumentError("slot counts or sizes differ")
        return LocalGroupElement(a @ b for a, b in zip(self.matrices, other.matrices))


def basis_diagonal_state(n: int, k: int) -> TensorState:
    """u[h, h, ..., h] = 1 for every h, all other components 0."""
    if n < 2 or k < 1:
        raise ArgumentError(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    array = np.zeros((n,) * k, np.complex128)
    for h in range(n):
        array[(h,) * k] = 1
    return TensorState(array)


def decomposable(*vectors) -> TensorState:
    """w_1 (x) w_2 (x) ... (x) w_k."""
    if not vectors:
        raise ArgumentError("need at least one vector")
    vecs = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors]
    n = vecs[0].size
    if any(v.size != n for v in vecs):
        raise ArgumentError(f"vector lengths differ: {[v.size for v in vecs]}")
    out = vecs[0]
    for v in vecs[1:]:
        out = np.multiply.outer(out, v)
    return TensorState(out.reshape((n,) * len(vecs)))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def random_state(n: int, k: int, seed) -> TensorState:
    """Standard complex Gaussian entries; reproducible per seed."""
    rng = np.random.default_rng(seed)
    return TensorState(_complex_gaussian(rng, (n,) * k))


def random_rank_at_most(n: int, k: int, s: int, seed) -> TensorState:
    """Sum of s random decomposable states (Gaussian factor vectors)."""
    if s < 1:
        raise ArgumentError(f"s must be >= 1, got {s}")
    rng = np.random.default_rng(seed)
    total = np.zeros((n,) * k, np.complex128)
    for _ in range(s):
        total = total + decomposable(*_complex_gaussian(rng, (k, n))).array
    return TensorState(total)


def evaluate(Q: CovariantTensor, u: TensorState) -> complex:
    """Full contraction of Q against d copies of u, skipping zero components of Q."""
    if (Q.n, Q.k) != (u.n, u.k):
        raise ArgumentError(f"tensor has n={Q.n}, k={Q.k} but state has n={u.n}, k={u.k}")
    rows = Q.rows_view()
    nz = np.nonzero(Q.array.reshape(-1))[0]
    values = Q.array.reshape(-1)[nz]
    if Q.d == 0:
        return complex(Q.array.reshape(-1)[0])
    row_idx = np.stack(np.unravel_index(nz, rows.shape), axis=1).astype(np.int64)
    return _kernels.sparse_contract(np.ascontiguousarray(values), np.ascontiguousarray(row_idx), u.components)


def local_action(g: LocalGroupElement, u: TensorState) -> TensorState:
    """u[p] -> sum_q g1[p1, q1] ... gk[pk, qk] u[q]: matrix m acts on slot m."""
    if (g.n, g.k) != (u.n, u.k):
        raise ArgumentError(f"group element has n={g.n}, k={g.k} but state has n={u.n}, k={u.k}")
    out = u.array
    for slot, mat in enumerate(g.matrices):
        out = np.moveaxis(np.tensordot(mat, out, axes=([1], [slot])), 0, slot)
    return TensorState(out)


def _check_perm(perm: Sequence[int], k: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(k)):
        raise ArgumentError(f"{perm} is not a permutation of range({k})")
    return perm


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """(sigma tau)(j) = sigma(tau(j))."""
    return tuple(sigma[t] for t in tau)


def permute_factors(sigma: Sequence[int], u: TensorState) -> TensorState:
    """Move tensor factor i to slot sigma[i].

    On components, (sigma . u)[p_0, ..., p_{k-1}] = u[p_sigma(0), ..., p_sigma(k-1)],
    so sigma . (w_0 (x) ... ) puts w_i in slot sigma(i) and
    sigma . (tau . u) == compose(sigma, tau) . u.
    """
    sigma = _check_perm(sigma, u.k)
    return TensorState(np.transpose(u.array, np.argsort(sigma)))


def tensor_product(u: TensorState, v: TensorState) -> TensorState:
    if u.n != v.n:
        raise ArgumentError(f"local dimensions differ: {u.n} vs {v.n}")
    return TensorState(np.multiply.outer(u.array, v.array))


# -- file format -------------------------------------------------------------
#
# A JSON object {"n": int, "k": int, "components": [[re, im], ...]} with the
# n**k components in flat row-major order. Floats are written with Python's
# shortest round-trip repr, so reading back reproduces every bit.


def dumps_state(u: TensorState) -> str:
    pairs = [[float(z.real), float(z.imag)] for z in u.components]
    return json.dumps({"n": u.n, "k": u.k, "components": pairs}) + "\n"


def loads_state(text: str) -> TensorState:
    try:
        doc = json.loads(text)
        n, k, pairs = int(doc["n"]), int(doc["k"]), doc["components"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ArgumentError(f"malformed tensor document: {exc}") from exc
    if len(pairs) != n**k or any(len(p) != 2 for p in pairs):
        raise ArgumentError(f"expected {n**k} [re, im] pairs for n={n}, k={k}")
    comps = np.array([complex(float(re), float(im)) for re, im in pairs], dtype=np.complex128)
    return TensorState.from_components(n, k, comps)


def write_state(u: TensorState, path) -> None:
    Path(path).write_text(dumps_state(u))


def read_state(path) -> TensorState:
    return loads_state(Path(path).read_text())
