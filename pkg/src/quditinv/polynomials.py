"""Concrete invariants: generalized determinant, hyperdeterminant, Delta, det powers."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Callable

import numpy as np

from . import _kernels
from .errors import ArgumentError, UnsupportedParityError
from .symgroup import sign
from .tensor import CovariantTensor, TensorState, check_capacity


@lru_cache(maxsize=None)
def permutation_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All permutations of range(n) in lexicographic order, with their signs."""
    perms = list(permutations(range(n)))
    table = np.array(perms, dtype=np.int64).reshape(len(perms), n)
    signs = np.array([sign(p) for p in perms], dtype=np.float64)
    table.setflags(write=False)
    signs.setflags(write=False)
    return table, signs


def _require(u: TensorState, n: int | None = None, k: int | None = None, what: str = "") -> None:
    if (n is not None and u.n != n) or (k is not None and u.k != k):
        raise ArgumentError(f"{what} needs n={n}, k={k}; got n={u.n}, k={u.k}")


def generalized_determinant(u: TensorState) -> complex:
    """Degree-n invariant for even k: sum over (s_2..s_k) in S_n^(k-1) of
    sgn(s_2)...sgn(s_k) * prod_h u[h, s_2(h), ..., s_k(h)].

    For k = 2 this is the matrix determinant.
    """
    if u.k % 2:
        raise UnsupportedParityError(
            f"the generalized determinant exists only for even k (got k={u.k}); "
            "for odd k the symmetrized sum vanishes identically"
        )
    perms, signs = permutation_table(u.n)
    return _kernels.signed_tuple_sum(u.components, u.n, u.k, perms, signs, True)


def generalized_determinant_symmetrized(u: TensorState) -> complex:
    """(1/n!) times the full sum over (s_1, ..., s_k) in S_n^k; any parity of k.

    Equals :func:`generalized_determinant` for even k and vanishes for odd k.
    """
    perms, signs = permutation_table(u.n)
    return _kernels.signed_tuple_sum(u.components, u.n, u.k, perms, signs, False) / factorial(u.n)


def generalized_determinant_tensor(n: int, k: int) -> CovariantTensor:
    """Covariant tensor with d = n rows: entry (1/n!) * prod_j sgn(s_j) wherever
    column j of the index array is the permutation s_j, zero elsewhere."""
    check_capacity(n, n, k)
    perms, signs = permutation_table(n)
    array = np.zeros((n,) * (n * k), np.complex128)
    grid = array.reshape((n,) * (n * k))
    weight = 1.0 / factorial(n)
    for choice in product(range(len(perms)), repeat=k):
        cols = perms[list(choice)]  # (k, n): column j lists s_j(0..n-1)
        index = tuple(cols.T.reshape(-1))  # row-major over the n x k array
        grid[index] = weight * np.prod(signs[list(choice)])
    return CovariantTensor(array, n, n, k)


def circ_product(P: CovariantTensor, Q: CovariantTensor) -> CovariantTensor:
    """Row-wise juxtaposition: (P o Q)[rows] = P[first k columns] * Q[last l columns]."""
    if P.n != Q.n or P.d != Q.d:
        raise ArgumentError(f"need same n and d; got (n={P.n}, d={P.d}) and (n={Q.n}, d={Q.d})")
    n, d = P.n, P.d
    check_capacity(n, d, P.k + Q.k)
    a = list(range(d))
    b = list(range(d, 2 * d))
    interleaved = [x for pair in zip(a, b) for x in pair]
    out = np.einsum(P.rows_view(), a, Q.rows_view(), b, interleaved)
    return CovariantTensor(out, n, d, P.k + Q.k)


def cayley_hyperdeterminant(u: TensorState) -> complex:
    """Degree-4 hyperdeterminant of a 2 x 2 x 2 array."""
    _require(u, 2, 3, "cayley_hyperdeterminant")
    a = u.array
    a000, a001, a010, a011 = a[0, 0, 0], a[0, 0, 1], a[0, 1, 0], a[0, 1, 1]
    a100, a101, a110, a111 = a[1, 0, 0], a[1, 0, 1], a[1, 1, 0], a[1, 1, 1]
    squares = (a000 * a111) ** 2 + (a001 * a110) ** 2 + (a010 * a101) ** 2 + (a100 * a011) ** 2
    mixed = (
        a000 * a111 * a001 * a110
        + a000 * a111 * a010 * a101
        + a000 * a111 * a100 * a011
        + a001 * a110 * a010 * a101
        + a001 * a110 * a100 * a011
        + a010 * a101 * a100 * a011
    )
    tetra = a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111
    return complex(squares - 2 * mixed + 4 * tetra)


@dataclass(frozen=True)
class Pairing:
    """A permutation (i, j, k, l) of (1, 2, 3, 4): qubits {i, j} against {k, l}."""

    order: tuple[int, int, int, int]

    def __post_init__(self):
        if sorted(self.order) != [1, 2, 3, 4]:
            raise ArgumentError(f"pairing must permute (1,2,3,4), got {self.order}")

    @classmethod
    def parse(cls, text: str) -> "Pairing":
        digits = [c for c in text if not c.isspace() and c not in "(),"]
        if len(digits) != 4 or not all(c.isdigit() for c in digits):
            raise ArgumentError(f"cannot parse pairing {text!r}")
        return cls(tuple(int(c) for c in digits))

    def __str__(self) -> str:
        return "".join(map(str, self.order))


CANONICAL_PAIRINGS = (Pairing((1, 2, 3, 4)), Pairing((1, 3, 2, 4)), Pairing((1, 4, 2, 3)))


def delta_determinant(pairing: Pairing | str, u: TensorState) -> complex:
    """det of the 4 x 4 matrix M[(p_i, p_j), (p_k, p_l)] = u[p_1, p_2, p_3, p_4]."""
    if isinstance(pairing, str):
        pairing = Pairing.parse(pairing)
    _require(u, 2, 4, "delta_determinant")
    axes = [i - 1 for i in pairing.order]
    return complex(np.linalg.det(np.transpose(u.array, axes).reshape(4, 4)))


def det_power(u: TensorState, r: int) -> complex:
    """(det u)**r for u viewed as an n x n matrix."""
    if u.k != 2:
        raise ArgumentError(f"det_power needs k=2, got k={u.k}")
    if r < 0:
        raise ArgumentError(f"power must be nonnegative, got {r}")
    return complex(np.linalg.det(u.array)) ** r


def coordinate(u: TensorState) -> complex:
    """The single component u[0, ..., 0]; a deliberately non-invariant control."""
    return complex(u.array[(0,) * u.k])


@dataclass(frozen=True)
class InvariantPolynomial:
    """A named polynomial function on (C^n)^{(x)k} of fixed degree."""

    label: str
    n: int
    k: int
    degree: int
    func: Callable[[TensorState], complex]

    def __call__(self, u: TensorState) -> complex:
        _require(u, self.n, self.k, self.label)
        return self.func(u)


LABELS = ("gdet", "hdet223", "delta:<ijkl>", "detpow:<r>", "coord")


def polynomial_from_label(label: str, n: int | None = None, k: int | None = None) -> InvariantPolynomial:
    """Resolve a CLI label. ``n``/``k`` are required for gdet, detpow and coord,
    and must match the fixed shape of hdet223 and delta when given."""

    def fixed(fn: int, fk: int) -> tuple[int, int]:
        if (n is not None and n != fn) or (k is not None and k != fk):
            raise ArgumentError(f"{label} is defined only for n={fn}, k={fk}")
        return fn, fk

    def need() -> tuple[int, int]:
        if n is None or k is None:
            raise ArgumentError(f"{label} needs n and k")
        if n < 2 or k < 1:
            raise ArgumentError(f"need n >= 2 and k >= 1, got n={n}, k={k}")
        return n, k

    name, _, arg = label.partition(":")
    if name == "gdet" and not arg:
        nn, kk = need()
        if kk % 2:
            raise UnsupportedParityError(f"gdet needs even k, got k={kk}")
        return InvariantPolynomial(label, nn, kk, nn, generalized_determinant)
    if name == "hdet223" and not arg:
        nn, kk = fixed(2, 3)
        return InvariantPolynomial(label, nn, kk, 4, cayley_hyperdeterminant)
    if name == "delta" and arg:
        pairing = Pairing.parse(arg)
        nn, kk = fixed(2, 4)
        return InvariantPolynomial(label, nn, kk, 4, lambda u: delta_determinant(pairing, u))
    if name == "detpow" and arg:
        try:
            r = int(arg)
        except ValueError as exc:
            raise ArgumentError(f"bad power in {label!r}") from exc
        if r < 1:
            raise ArgumentError(f"detpow needs r >= 1, got {r}")
        if n is None:
            raise ArgumentError(f"{label} needs n")
        nn, kk = fixed(n, 2)
        return InvariantPolynomial(label, nn, kk, r * nn, lambda u: det_power(u, r))
    if name == "coord" and not arg:
        nn, kk = need()
        return InvariantPolynomial(label, nn, kk, 1, coordinate)
    raise ArgumentError(f"unknown polynomial label {label!r}; known: {', '.join(LABELS)}")
