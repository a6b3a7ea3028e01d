"""Partitions, conjugacy classes and irreducible characters of S_d.

Partitions double as cycle types. Every count here is an exact Python int.
Characters are computed with the Murnaghan-Nakayama rule on beta-sets
(first-column hook lengths), memoized on ``(shape, cycle type)``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, prod
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, IntegrityError


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    >>> Partition([3, 1]).weight
    4
    >>> str(Partition([2, 2]))
    '[2,2]'
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ArgumentError(f"partition parts must be positive, got {parts}")
            if i and parts[i - 1] < p:
                raise ArgumentError(f"partition parts must be weakly decreasing, got {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_unsorted(cls, parts: Iterable[int]) -> "Partition":
        return cls(sorted((p for p in parts if p), reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"[2,1,1]"``, ``"2,1,1"`` or ``"[]"``."""
        body = text.strip().strip("[]()").strip()
        if not body:
            return cls()
        try:
            return cls(int(x) for x in body.split(","))
        except ValueError as exc:
            raise ArgumentError(f"cannot parse partition {text!r}") from exc

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def multiplicities(self) -> Counter:
        return Counter(self)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


def partitions_of(d: int) -> list[Partition]:
    """All partitions of ``d`` in reverse-lexicographic order.

    ``[4], [3,1], [2,2], [2,1,1], [1,1,1,1]`` for d = 4; ``[[]]`` for d = 0.
    """
    if d < 0:
        raise ArgumentError(f"d must be nonnegative, got {d}")
    return [Partition(p) for p in _partitions(d, d)]


def _partitions(d: int, largest: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            yield (first,) + rest


def rectangular(r: int, n: int) -> Partition:
    """The rectangle ``[r^n]``: n rows of length r (empty when r = 0)."""
    if r < 0 or n < 1:
        raise ArgumentError(f"rectangular needs r >= 0 and n >= 1, got r={r}, n={n}")
    return Partition([r] * n if r else [])


def hook_lengths(shape: Partition) -> list[int]:
    conj = Partition(shape).conjugate()
    return [
        (row_len - j) + (conj[j] - i) - 1
        for i, row_len in enumerate(shape)
        for j in range(row_len)
    ]


def rectangle_dimension(r: int, n: int) -> int:
    """dim E_[r^n] from the closed product d! * prod_{m<n} m!/(m+r)!."""
    value = Fraction(factorial(r * n))
    for m in range(n):
        value *= Fraction(factorial(m), factorial(m + r))
    if value.denominator != 1:
        raise IntegrityError(f"rectangle dimension for r={r}, n={n} is not integral: {value}")
    return value.numerator


def hook_dimension(shape: Partition) -> int:
    """Dimension of the irreducible E_shape, by the hook-length product.

    For rectangles the closed form :func:`rectangle_dimension` is evaluated
    too and the two must agree exactly.
    """
    shape = Partition(shape)
    d = shape.weight
    hooks = prod(hook_lengths(shape))
    dim, rem = divmod(factorial(d), hooks)
    if rem:
        raise IntegrityError(f"hook product does not divide {d}! for {shape}")
    if shape and len(set(shape)) == 1:
        closed = rectangle_dimension(shape[0], len(shape))
        if closed != dim:
            raise IntegrityError(f"hook formula {dim} != rectangle formula {closed} for {shape}")
    return dim


def class_size(cycle_type: Partition) -> int:
    """Number of permutations in S_d with the given cycle type."""
    cycle_type = Partition(cycle_type)
    denom = prod(cycle_type) * prod(factorial(m) for m in cycle_type.multiplicities().values())
    return factorial(cycle_type.weight) // denom


def power_cycle_type(cycle_type: Partition, m: int) -> Partition:
    """Cycle type of sigma**m: an l-cycle splits into gcd(l, m) cycles of length l/gcd(l, m)."""
    if m < 1:
        raise ArgumentError(f"power must be positive, got {m}")
    parts: list[int] = []
    for length in cycle_type:
        g = gcd(length, m)
        parts.extend([length // g] * g)
    return Partition.from_unsorted(parts)


def character(shape: Partition, cycle_type: Partition) -> int:
    """Irreducible character chi_shape evaluated on the class ``cycle_type``."""
    shape, cycle_type = Partition(shape), Partition(cycle_type)
    if shape.weight != cycle_type.weight:
        raise ArgumentError(
            f"weights differ: shape {shape} has {shape.weight}, class {cycle_type} has {cycle_type.weight}"
        )
    return _murnaghan_nakayama(tuple(shape), tuple(cycle_type))


@lru_cache(maxsize=None)
def _murnaghan_nakayama(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1
    strip, rest = cycles[0], cycles[1:]
    length = len(shape)
    # beta-set: strictly decreasing first-column hook lengths
    beta = [shape[i] + length - 1 - i for i in range(length)]
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - strip
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        moved = sorted((occupied - {b}) | {target}, reverse=True)
        smaller = tuple(
            part for part in (moved[i] - (length - 1 - i) for i in range(length)) if part > 0
        )
        total += (-1) ** height * _murnaghan_nakayama(smaller, rest)
    return total


def character_table(d: int) -> tuple[list[Partition], list[list[int]]]:
    """Rows indexed by irreducibles, columns by classes, both in partitions_of order."""
    labels = partitions_of(d)
    return labels, [[character(lam, mu) for mu in labels] for lam in labels]


def cycle_type(perm: Sequence[int]) -> Partition:
    """Cycle type of a permutation given in one-line form on ``range(len(perm))``."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return Partition.from_unsorted(lengths)


def sign(perm: Sequence[int]) -> int:
    ct = cycle_type(perm)
    return -1 if (ct.weight - len(ct)) % 2 else 1
