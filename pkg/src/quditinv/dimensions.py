"""Exact dimensions of SU(n)^k-invariant polynomial spaces.

The degree-d invariants on (C^n)^k vanish unless n | d. When d = r*n they are
isomorphic to the S_d-invariants of E^{(x)k}, with E the irreducible S_d
module of the rectangle [r^n]. Every quantity below is therefore a class
function average (1/d!) * sum_sigma |class(sigma)| * f(sigma). Sums are kept
as exact integers or Fractions, and divisibility is checked before dividing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .errors import ArgumentError, IntegrityError
from .symgroup import (
    Partition,
    character,
    class_size,
    hook_dimension,
    partitions_of,
    power_cycle_type,
    rectangular,
)

DEFAULT_K_MAX = 10


def _check_nkd(n: int, k: int, d: int) -> None:
    if n < 2:
        raise ArgumentError(f"local dimension n must be >= 2, got {n}")
    if k < 1:
        raise ArgumentError(f"number of factors k must be >= 1, got {k}")
    if d < 0:
        raise ArgumentError(f"degree d must be >= 0, got {d}")


def invariant_shape(n: int, d: int) -> Partition:
    """The rectangle [r^n] with r = d/n; requires n | d."""
    if d % n:
        raise ArgumentError(f"n={n} does not divide d={d}")
    return rectangular(d // n, n)


def _class_average(d: int, values: dict[Partition, int | Fraction], what: str) -> int:
    total = sum(class_size(mu) * values[mu] for mu in partitions_of(d))
    quotient = Fraction(total) / factorial(d)
    if quotient.denominator != 1:
        raise IntegrityError(f"{what}: class sum {total} not divisible by {d}!")
    return quotient.numerator


def dim_invariants(n: int, k: int, d: int) -> int:
    """dim of the degree-d SU(n)^k-invariant polynomials on (C^n)^{(x)k}.

    >>> [dim_invariants(2, k, 4) for k in range(1, 9)]
    [0, 1, 1, 3, 5, 11, 21, 43]
    """
    _check_nkd(n, k, d)
    if d % n:
        return 0
    shape = invariant_shape(n, d)
    values = {mu: character(shape, mu) ** k for mu in partitions_of(d)}
    return _class_average(d, values, f"dim_invariants({n},{k},{d})")


def qubit_quartic_dim(k: int) -> int:
    """Closed form (2^(k-1) + (-1)^k)/3 for quartic invariants of k qubits."""
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    value, rem = divmod(2 ** (k - 1) + (-1) ** k, 3)
    if rem:
        raise IntegrityError(f"closed form not integral at k={k}")
    return value


@lru_cache(maxsize=None)
def _power_sums(shape: Partition, mu: Partition, k: int) -> tuple[int, ...]:
    """chi_shape(mu^m) for m = 1..k."""
    return tuple(character(shape, power_cycle_type(mu, m)) for m in range(1, k + 1))


@lru_cache(maxsize=None)
def symmetric_power_character(shape: Partition, mu: Partition, k: int) -> Fraction:
    """Character of S^k(E_shape) at the class mu, via h_j = (1/j) sum_m p_m h_{j-m}."""
    p = _power_sums(shape, mu, k)
    h = [Fraction(1)]
    for j in range(1, k + 1):
        h.append(sum(p[m - 1] * h[j - m] for m in range(1, j + 1)) / j)
    return h[k]


@lru_cache(maxsize=None)
def exterior_power_character(shape: Partition, mu: Partition, k: int) -> Fraction:
    """Character of Lambda^k(E_shape) at mu, via e_j = (1/j) sum_m (-1)^(m-1) p_m e_{j-m}."""
    p = _power_sums(shape, mu, k)
    e = [Fraction(1)]
    for j in range(1, k + 1):
        e.append(sum((-1) ** (m - 1) * p[m - 1] * e[j - m] for m in range(1, j + 1)) / j)
    return e[k]


def dim_skg_invariants(n: int, k: int, d: int) -> int:
    """dim of the polynomials invariant under both SU(n)^k and qudit permutations.

    Equals dim S^k(E)^{S_d} for E = E_[r^n].
    """
    _check_nkd(n, k, d)
    if d % n:
        return 0
    shape = invariant_shape(n, d)
    values = {mu: symmetric_power_character(shape, mu, k) for mu in partitions_of(d)}
    return _class_average(d, values, f"dim_skg_invariants({n},{k},{d})")


def dim_sign_isotypic(n: int, k: int, d: int) -> int:
    """Multiplicity of the sign character of S_k in the invariant space: dim Lambda^k(E)^{S_d}."""
    _check_nkd(n, k, d)
    if d % n:
        return 0
    shape = invariant_shape(n, d)
    values = {mu: exterior_power_character(shape, mu, k) for mu in partitions_of(d)}
    return _class_average(d, values, f"dim_sign_isotypic({n},{k},{d})")


def permutation_character(n: int, d: int, k: int) -> dict[Partition, int]:
    """Character of S_k (by cycle type) on the invariant space of degree d.

    A permutation with cycles c_1, c_2, ... acting on E^{(x)k} together with
    tau in S_d has trace prod_i chi(tau^{len c_i}); averaging over tau projects
    onto the S_d-invariants.
    """
    _check_nkd(n, k, d)
    if d % n:
        return {lam: 0 for lam in partitions_of(k)}
    shape = invariant_shape(n, d)
    classes = partitions_of(d)
    result = {}
    for sigma in partitions_of(k):
        values = {
            tau: prod(character(shape, power_cycle_type(tau, length)) for length in sigma)
            for tau in classes
        }
        result[sigma] = _class_average(d, values, f"S_{k} character at {sigma}")
    return result


@dataclass(frozen=True)
class IsotypicDecomposition:
    """Multiplicities of S_k irreducibles inside an S_k-module."""

    k: int
    entries: dict[Partition, int] = field(default_factory=dict)

    def multiplicity(self, shape: Partition | str) -> int:
        if isinstance(shape, str):
            shape = Partition.parse(shape)
        return self.entries.get(Partition(shape), 0)

    @property
    def dimension(self) -> int:
        return sum(m * hook_dimension(lam) for lam, m in self.entries.items())

    def nonzero(self) -> dict[Partition, int]:
        return {lam: m for lam, m in self.entries.items() if m}

    def __str__(self) -> str:
        terms = [f"{lam}:{m}" for lam, m in self.entries.items() if m]
        return " ".join(terms) if terms else "0"


def sk_isotypic_decomposition(
    n: int, d: int, k: int, k_max: int = DEFAULT_K_MAX
) -> IsotypicDecomposition:
    """Decompose the degree-d invariants on k qudits under permutation of the qudits.

    >>> str(sk_isotypic_decomposition(2, 4, 4))
    '[4]:1 [2,2]:1'
    """
    if k > k_max:
        raise ArgumentError(f"k={k} exceeds the decomposition bound k_max={k_max}")
    psi = permutation_character(n, d, k)
    order = factorial(k)
    entries = {}
    for lam in partitions_of(k):
        total = sum(class_size(mu) * psi[mu] * character(lam, mu) for mu in psi)
        mult, rem = divmod(total, order)
        if rem or mult < 0:
            raise IntegrityError(f"multiplicity of {lam} is {Fraction(total, order)}")
        entries[lam] = mult
    return IsotypicDecomposition(k, entries)


def trivial_kernel_order(shape: Partition) -> int:
    """Order of the kernel of S_d -> GL(E_shape): classes where chi equals chi(1)."""
    dim = hook_dimension(shape)
    return sum(class_size(mu) for mu in partitions_of(Partition(shape).weight) if character(shape, mu) == dim)


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Leading term c * p^k / d! of the invariant dimension as k grows."""

    n: int
    d: int
    k: int
    p: int
    c: int
    estimate: Fraction

    def relative_error(self, exact: int) -> Fraction:
        return Fraction(exact) / self.estimate - 1


def asymptotic_estimate(n: int, d: int, k: int) -> AsymptoticEstimate:
    """Leading asymptotics for d = r*n with r >= 2.

    c is the order of the kernel of S_d acting on E_[r^n]; it is 4 for
    (n, d) = (2, 4), where S_4 acts through S_3, and 1 otherwise.
    """
    _check_nkd(n, k, d)
    if d % n:
        raise ArgumentError(f"n={n} does not divide d={d}")
    if d // n < 2:
        raise ArgumentError(f"static case r = d/n = {d // n}: asymptotics need r >= 2")
    shape = invariant_shape(n, d)
    p = hook_dimension(shape)
    c = trivial_kernel_order(shape)
    return AsymptoticEstimate(n, d, k, p, c, Fraction(c * p**k, factorial(d)))
