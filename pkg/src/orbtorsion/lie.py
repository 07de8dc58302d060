"""Root-system and highest-weight bookkeeping for odd hyperbolic orbifolds.

Conventions.  The orbifold has dimension 2n+1; the relevant compact group
has rank n with Cartan coordinates indexed by slots 2..n+1.  A weight is
stored as the n-tuple of those coordinates.  The Weyl group is the type-D
group of permutations combined with an even number of sign flips, acting
slot-wise.  The ray of representations is parametrised by a non-increasing
integer base weight ``tau`` of length n+1 shifted uniformly by ``m``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

Weight = tuple[int, ...]

DEFAULT_WEYL_CAP = 8
WEYL_CAP_ENV = "TORSION_WEYL_CAP"


class CapExceeded(RuntimeError):
    """Requested rank is beyond the configured combinatorial-explosion guard."""


def weyl_cap() -> int:
    raw = os.environ.get(WEYL_CAP_ENV)
    return int(raw) if raw else DEFAULT_WEYL_CAP


@dataclass(frozen=True)
class RayConfig:
    """One point on a ray of representations: rank data plus the shift m."""

    n: int
    tau: tuple[int, ...]
    m: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        object.__setattr__(self, "tau", tuple(int(t) for t in self.tau))
        if len(self.tau) != self.n + 1:
            raise ValueError(f"tau must have {self.n + 1} entries")
        if any(t < 0 for t in self.tau):
            raise ValueError("tau entries must be non-negative integers")
        if any(self.tau[i] < self.tau[i + 1] for i in range(self.n)):
            raise ValueError("tau must be non-increasing")
        if self.m < 0:
            raise ValueError("m must be non-negative")

    def at(self, m: int) -> "RayConfig":
        """The same ray at a different shift."""
        return RayConfig(self.n, self.tau, m)


@dataclass(frozen=True)
class EllipticClass:
    """A finite-order conjugacy class in block-rotation normal form.

    ``d`` counts the 2x2 identity blocks (the fixed-point stratum has
    dimension 2d-1); ``angles`` are the distinct non-trivial rotation
    angles as exact fractions of a full turn; ``weight`` is the positive
    centralizer-volume factor carried into all class sums.
    """

    d: int
    angles: tuple[Fraction, ...]
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(Fraction(a) % 1 for a in self.angles))
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if any(a == 0 for a in self.angles):
            raise ValueError("rotation angles must be non-zero modulo a full turn")
        if len(set(self.angles)) != len(self.angles):
            raise ValueError("rotation angles must be distinct")
        if not all(w > 0 for w in [self.weight]):
            raise ValueError("class weight must be positive")

    @property
    def phase_width(self) -> int:
        return len(self.angles)

    def radians(self) -> tuple[float, ...]:
        return tuple(2.0 * math.pi * float(a) for a in self.angles)

    def denominators(self) -> tuple[int, ...]:
        return tuple(a.denominator for a in self.angles)

    def residue_period(self) -> int:
        """Common period of all phase factors as functions of an integer shift."""
        return math.lcm(1, *(a.denominator for a in self.angles))


@dataclass(frozen=True)
class SignedPermutation:
    """Type-D Weyl element: a permutation of slots plus an even number of sign flips.

    ``perm[i]`` is the image slot of slot ``i`` (0-based); ``signs[j]`` is the
    sign applied to whatever lands in slot ``j``.  The even flip count makes
    the determinant equal to the permutation sign.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm is not a bijection of 0..n-1")
        if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1 of matching length")
        if self.signs.count(-1) % 2:
            raise ValueError("number of sign flips must be even")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def det(self) -> int:
        sign = 1
        for i in range(len(self.perm)):
            for j in range(i + 1, len(self.perm)):
                if self.perm[i] > self.perm[j]:
                    sign = -sign
        return sign

    def _inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return tuple(inv)

    def apply(self, w: Sequence) -> tuple:
        """Slot j of the output is signs[j] times slot perm^{-1}(j) of the input."""
        if len(w) != len(self.perm):
            raise ValueError("dimension mismatch")
        inv = self._inverse_perm()
        return tuple(self.signs[j] * w[inv[j]] for j in range(len(w)))

    def inverse(self) -> "SignedPermutation":
        inv = self._inverse_perm()
        return SignedPermutation(inv, tuple(self.signs[self.perm[i]] for i in range(len(inv))))

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other: ``(self.compose(other)).apply(w) == self.apply(other.apply(w))``."""
        if len(self.perm) != len(other.perm):
            raise ValueError("dimension mismatch")
        inv_self = self._inverse_perm()
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        signs = tuple(self.signs[j] * other.signs[inv_self[j]] for j in range(len(self.perm)))
        return SignedPermutation(perm, signs)


def even_signed_permutations(n: int) -> Iterator[SignedPermutation]:
    """Stream the 2^{n-1} n! type-D Weyl elements in a fixed deterministic order."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    cap = weyl_cap()
    if n > cap:
        raise CapExceeded(f"rank {n} exceeds the Weyl enumeration cap {cap}")
    for perm in itertools.permutations(range(n)):
        for flips in itertools.product((1, -1), repeat=n):
            if flips.count(-1) % 2 == 0:
                yield SignedPermutation(perm, flips)


def weyl_order(n: int) -> int:
    return (2 ** (n - 1)) * math.factorial(n)


def half_sum_roots(n: int) -> Weight:
    """Half-sum of the chosen positive roots in slots 2..n+1: (n-1, ..., 1, 0)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return tuple(n - 1 - j for j in range(n))


def spectral_shift(cfg: RayConfig, k: int) -> int:
    """The k-th spectral shift m + tau_{k+1} + n - k, strictly decreasing in k."""
    if not 0 <= k <= cfg.n:
        raise ValueError(f"k must lie in 0..{cfg.n}")
    return cfg.m + cfg.tau[k] + cfg.n - k


def spectral_shifts(cfg: RayConfig) -> tuple[int, ...]:
    return tuple(spectral_shift(cfg, k) for k in range(cfg.n + 1))


def weight_vector(cfg: RayConfig, k: int) -> Weight:
    """Cartan coordinates of the k-th twist with the half-sum already added.

    Equals the decreasing list of all spectral shifts with the k-th one
    omitted.
    """
    if not 0 <= k <= cfg.n:
        raise ValueError(f"k must lie in 0..{cfg.n}")
    shifts = spectral_shifts(cfg)
    return shifts[:k] + shifts[k + 1:]


def weyl_dimension(cfg: RayConfig) -> int:
    """Dimension of the ray representation by the Weyl dimension formula.

    The positive system consists of e_i - e_j and e_i + e_j over
    1 <= i < j <= n+1, so each pair contributes (a_i^2 - a_j^2) with
    a = (highest weight) + (half-sum n, n-1, ..., 0).
    """
    n1 = cfg.n + 1
    a = [cfg.m + cfg.tau[i] + (n1 - 1 - i) for i in range(n1)]
    r = [n1 - 1 - i for i in range(n1)]
    dim = Fraction(1)
    for i in range(n1):
        for j in range(i + 1, n1):
            dim *= Fraction(a[i] ** 2 - a[j] ** 2, r[i] ** 2 - r[j] ** 2)
    if dim.denominator != 1:
        raise ArithmeticError("Weyl dimension did not reduce to an integer")
    return int(dim)
