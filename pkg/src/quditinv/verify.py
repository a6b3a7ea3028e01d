"""Randomized invariance and vanishing checks.

Invariance under SU(n)^k is equivalent to invariance under SL(n, C)^k, so
the harness samples special-linear matrices (Gaussian, rescaled to det 1),
which also probe the non-compact directions. Per-trial seeds come from a
``numpy.random.SeedSequence`` spawned from the user seed, so each trial is
reproducible on its own.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import permutations
from statistics import median

import numpy as np

from .errors import ArgumentError, GeneratorError
from .polynomials import InvariantPolynomial, generalized_determinant, polynomial_from_label
from .tensor import LocalGroupElement, local_action, permute_factors, random_rank_at_most, random_state

INVARIANCE_TOL = float(os.environ.get("QUDITINV_INVARIANCE_TOL", "1e-8"))
VANISHING_TOL = float(os.environ.get("QUDITINV_VANISHING_TOL", "1e-9"))
NONVANISHING_TOL = 1e-6
FLOOR = 1e-12
MAX_RESAMPLES = 100


def random_special_linear(n: int, seed) -> np.ndarray:
    """Complex Gaussian n x n matrix divided by the principal n-th root of its determinant."""
    if n < 2:
        raise ArgumentError(f"n must be >= 2, got {n}")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RESAMPLES):
        g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
        det = np.linalg.det(g)
        if abs(det) >= 1e-8:
            return g / det ** (1.0 / n)
    raise GeneratorError(f"no well-conditioned {n}x{n} sample after {MAX_RESAMPLES} draws")


def _seed_sequence(seed) -> np.random.SeedSequence:
    return seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)


def random_local_element(n: int, k: int, seed) -> LocalGroupElement:
    children = _seed_sequence(seed).spawn(k)
    return LocalGroupElement(random_special_linear(n, child) for child in children)


def relative_deviation(before: complex, after: complex, scale: float, degree: int) -> float:
    floor = FLOOR * scale**degree
    return abs(after - before) / max(abs(before), floor)


@dataclass(frozen=True)
class InvarianceReport:
    """Outcome of a randomized check; serializes to one tab-separated line."""

    label: str
    trials: int
    seed: int
    max_relative_deviation: float
    deviations: tuple[float, ...] = field(default=(), compare=False)

    def passed(self, tol: float = INVARIANCE_TOL) -> bool:
        return self.max_relative_deviation < tol

    def to_line(self) -> str:
        return f"{self.label}\t{self.trials}\t{self.seed}\t{self.max_relative_deviation:.15e}"

    @classmethod
    def from_line(cls, line: str) -> "InvarianceReport":
        try:
            label, trials, seed, dev = line.rstrip("\n").split("\t")
            return cls(label, int(trials), int(seed), float(dev))
        except ValueError as exc:
            raise ArgumentError(f"malformed report line {line!r}") from exc


def _resolve(f, n: int, k: int) -> InvariantPolynomial:
    if isinstance(f, str):
        return polynomial_from_label(f, n, k)
    if (f.n, f.k) != (n, k):
        raise ArgumentError(f"{f.label} is defined for n={f.n}, k={f.k}, not n={n}, k={k}")
    return f


def check_invariance(f, n: int, k: int, trials: int = 20, seed: int = 0, state_scale: float = 1.0) -> InvarianceReport:
    """Compare f(g.u) with f(u) for random states u and random SL(n, C)^k tuples g."""
    if trials < 1:
        raise ArgumentError(f"trials must be >= 1, got {trials}")
    poly = _resolve(f, n, k)
    deviations = []
    for child in _seed_sequence(seed).spawn(trials):
        state_seed, group_seed = child.spawn(2)
        u = random_state(n, k, state_seed).scaled(state_scale)
        g = random_local_element(n, k, group_seed)
        deviations.append(relative_deviation(poly(u), poly(local_action(g, u)), u.scale, poly.degree))
    return InvarianceReport(poly.label, trials, seed, max(deviations), tuple(deviations))


def check_sk_symmetry(f, n: int, k: int, seed: int = 0, samples: int = 50) -> InvarianceReport:
    """Compare f(sigma.u) with f(u) over every sigma in S_k (k <= 6) or ``samples`` random ones."""
    poly = _resolve(f, n, k)
    state_seed, perm_seed = _seed_sequence(seed).spawn(2)
    u = random_state(n, k, state_seed)
    if k <= 6:
        perms = list(permutations(range(k)))
    else:
        rng = np.random.default_rng(perm_seed)
        perms = [tuple(rng.permutation(k)) for _ in range(samples)]
    base = poly(u)
    deviations = tuple(
        relative_deviation(base, poly(permute_factors(p, u)), u.scale, poly.degree) for p in perms
    )
    return InvarianceReport(poly.label, len(perms), seed, max(deviations), deviations)


@dataclass(frozen=True)
class RankRow:
    s: int
    median_ratio: float
    expect_zero: bool

    @property
    def passed(self) -> bool:
        if self.expect_zero:
            return self.median_ratio < VANISHING_TOL
        return self.median_ratio > NONVANISHING_TOL


def rank_vanishing_demo(n: int, k: int, seed: int = 0, samples: int = 10) -> list[RankRow]:
    """Median of |P(u)| / scale(u)**n over random states of rank <= s, for s = 1..n.

    Rows with s < n should vanish; the s = n row should not.
    """
    if k % 2:
        raise ArgumentError(f"rank demo needs even k, got k={k}")
    rows = []
    for s, child in zip(range(1, n + 1), _seed_sequence(seed).spawn(n)):
        ratios = []
        for sub in child.spawn(samples):
            u = random_rank_at_most(n, k, s, sub)
            ratios.append(abs(generalized_determinant(u)) / u.scale**n)
        rows.append(RankRow(s, float(median(ratios)), s < n))
    return rows
