"""Exact coefficient arithmetic.

Two rings are implemented on top of arbitrary-precision rationals:

* ``NuPolynomial`` -- polynomials in a single spectral variable ``nu`` with
  ``Fraction`` coefficients.
* ``PhasePolynomial`` -- finite sums of Laurent monomials in several phase
  variables ``zeta_j = exp(i*phi_j)``, one per rotation angle, with
  ``NuPolynomial`` coefficients.  Monomials are keyed by their integer
  exponent vectors, never by floating angles, so two terms combine exactly
  when and only when their exponent vectors coincide.

Numeric phase substitution (``zeta_j -> exp(i*phi_j)`` as a complex double)
is provided for reporting and cross-checks; all structural results are
carried by the exact representation.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Exponents = tuple[int, ...]

_ZERO = Fraction(0)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational coefficient, got {type(x).__name__}")


class NuPolynomial:
    """Dense polynomial in the spectral variable with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutable value type
        raise AttributeError("NuPolynomial is immutable")

    @classmethod
    def zero(cls) -> "NuPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "NuPolynomial":
        return cls((1,))

    @classmethod
    def constant(cls, c: Fraction | int) -> "NuPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 as the sentinel for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, NuPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == NuPolynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "NuPolynomial") -> "NuPolynomial":
        if not isinstance(other, NuPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return NuPolynomial(out)

    def __neg__(self) -> "NuPolynomial":
        return NuPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "NuPolynomial") -> "NuPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "NuPolynomial":
        if isinstance(other, (int, Fraction)):
            return NuPolynomial(tuple(c * other for c in self.coeffs))
        if not isinstance(other, NuPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return NuPolynomial.zero()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return NuPolynomial(out)

    __rmul__ = __mul__

    @property
    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def coefficient(self, power: int) -> Fraction:
        return self.coeffs[power] if 0 <= power < len(self.coeffs) else _ZERO

    def evaluate(self, x: Fraction | int) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_at_imag(self, lam: Fraction | int) -> Fraction:
        """Value at a point on the imaginary axis, nu = +-i*lam.

        Requires an even polynomial (the two sign choices then agree and
        the result stays rational): nu^2 is replaced by -lam^2.
        """
        if not self.is_even:
            raise ValueError("eval_at_imag requires an even polynomial")
        lam = _frac(lam)
        return NuPolynomial(self.coeffs[::2]).evaluate(-lam * lam)

    def antiderivative_at(self, lam: Fraction | int) -> Fraction:
        """Exact value of the antiderivative vanishing at 0, taken at lam."""
        lam = _frac(lam)
        acc = _ZERO
        power = lam
        for j, c in enumerate(self.coeffs):
            acc += c * power / (j + 1)
            power *= lam
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "NuPolynomial(0)"
        parts = [f"{c}*nu^{j}" if j else str(c) for j, c in enumerate(self.coeffs) if c]
        return "NuPolynomial(" + " + ".join(parts) + ")"


class PhasePolynomial:
    """Sparse Laurent-phase polynomial with ``NuPolynomial`` values.

    All exponent vectors in one polynomial share a common width (the
    number of rotation angles of the active conjugacy class); the empty
    polynomial is width-agnostic and combines with anything.
    """

    __slots__ = ("_terms", "width")

    def __init__(self, terms: Mapping[Exponents, NuPolynomial] | None = None):
        cleaned: dict[Exponents, NuPolynomial] = {}
        width: int | None = None
        for key, val in (terms or {}).items():
            key = tuple(int(e) for e in key)
            if width is None:
                width = len(key)
            elif len(key) != width:
                raise ValueError("mixed exponent-vector lengths in one polynomial")
            if not isinstance(val, NuPolynomial):
                val = NuPolynomial.constant(val)
            if val:
                cleaned[key] = cleaned.get(key, NuPolynomial.zero()) + val
        cleaned = {k: v for k, v in cleaned.items() if v}
        object.__setattr__(self, "_terms", cleaned)
        object.__setattr__(self, "width", width if cleaned else None)

    def __setattr__(self, name, value):
        raise AttributeError("PhasePolynomial is immutable")

    @classmethod
    def zero(cls) -> "PhasePolynomial":
        return cls()

    @classmethod
    def monomial(cls, key: Exponents, value: NuPolynomial | Fraction | int) -> "PhasePolynomial":
        return cls({tuple(key): value})

    @property
    def terms(self) -> dict[Exponents, NuPolynomial]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponents, NuPolynomial]]:
        return iter(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def _check_width(self, other: "PhasePolynomial") -> None:
        if self.width is not None and other.width is not None and self.width != other.width:
            raise ValueError("exponent-vector length mismatch")

    def __add__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        self._check_width(other)
        out = dict(self._terms)
        for key, val in other._terms.items():
            out[key] = out.get(key, NuPolynomial.zero()) + val
        return PhasePolynomial(out)

    def __neg__(self) -> "PhasePolynomial":
        return PhasePolynomial({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        return self + (-other)

    def __mul__(self, other) -> "PhasePolynomial":
        if isinstance(other, (int, Fraction, NuPolynomial)):
            return PhasePolynomial({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        self._check_width(other)
        out: dict[Exponents, NuPolynomial] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                out[key] = out.get(key, NuPolynomial.zero()) + prod
        return PhasePolynomial(out)

    __rmul__ = __mul__

    def max_nu_degree(self) -> int:
        """Largest spectral degree over all stored monomials (-1 if empty)."""
        return max((v.degree for v in self._terms.values()), default=-1)

    @property
    def is_nu_free(self) -> bool:
        return self.max_nu_degree() <= 0

    def constants(self) -> dict[Exponents, Fraction]:
        """The term map of a spectral-variable-free polynomial, as rationals."""
        if not self.is_nu_free:
            raise ValueError("polynomial still depends on the spectral variable")
        return {k: v.coefficient(0) for k, v in self._terms.items()}

    def numeric_eval(self, angles: Sequence[float], nu: complex | float) -> complex:
        """Substitute zeta_j = exp(i*angles[j]) and a numeric nu.

        ``angles`` are in radians and must match the exponent width.
        """
        if self.width is not None and len(angles) != self.width:
            raise ValueError("angle list length does not match exponent width")
        total = 0j
        for key, poly in self._terms.items():
            phase = cmath.exp(1j * sum(e * a for e, a in zip(key, angles)))
            total += phase * poly.evaluate_complex(complex(nu))
        return total

    def conjugation_defect(self) -> Fraction:
        """Max coefficient distance between a monomial and its negated-exponent twin.

        Zero means the term map is symmetric under global exponent negation,
        which makes every numeric substitution real for real coefficients.
        """
        worst = _ZERO
        for key, val in self._terms.items():
            mirror = self._terms.get(tuple(-e for e in key), NuPolynomial.zero())
            diff = val - mirror
            worst = max(worst, max((abs(c) for c in diff.coeffs), default=_ZERO))
        return worst


def numeric_phase_eval(p: PhasePolynomial, angles: Sequence[float], nu: complex | float) -> complex:
    """Free-function alias for :meth:`PhasePolynomial.numeric_eval`."""
    return p.numeric_eval(angles, nu)
