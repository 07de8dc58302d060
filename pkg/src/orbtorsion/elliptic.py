"""Trace-formula polynomials attached to elliptic conjugacy classes.

For a class with ``d`` identity blocks, each Weyl image ``v`` of a twist
weight contributes

* a polynomial factor: the product of ``(-nu^2 - v_j^2)`` over the first
  ``d-1`` slots times the Vandermonde-type product of ``(v_i^2 - v_j^2)``
  over pairs among those slots, an even polynomial of degree ``2(d-1)``;
* a phase factor: the Laurent monomial with exponent vector
  ``(-v_d, ..., -v_n)`` (0-based slots ``d-1..n-1``), one exponent per
  rotation angle.

Summing ``det(s) * poly * phase`` over the full type-D Weyl group gives the
class polynomial for one twist index ``k``.  The alternating sum over ``k``
collapses to a constant in the spectral variable; that collapse is enforced
at runtime because any sign or determinant bug breaks it immediately.
Taking ``d = n+1`` (no rotation blocks) yields the identity-class stand-in,
a plain rational number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Exponents, NuPolynomial, PhasePolynomial
from .lie import EllipticClass, RayConfig, even_signed_permutations, weight_vector


class LemmaViolation(RuntimeError):
    """An alternating class sum kept a non-constant spectral part.

    The theory guarantees the sum is constant, so this always signals an
    implementation bug rather than bad input.
    """


def _block_count(cfg: RayConfig, cls: EllipticClass | int) -> int:
    if isinstance(cls, EllipticClass):
        d = cls.d
        if cls.phase_width != cfg.n + 1 - d:
            raise ValueError(
                f"class with d={d} needs {cfg.n + 1 - d} rotation angles, "
                f"got {cls.phase_width}")
    else:
        d = int(cls)
    if not 1 <= d <= cfg.n + 1:
        raise ValueError(f"block count d={d} out of range 1..{cfg.n + 1}")
    return d


def polynomial_part(w: Sequence[int], d: int) -> NuPolynomial:
    """Even polynomial factor of one Weyl term; the constant 1 when d == 1."""
    if d < 1:
        raise ValueError("block count must be at least 1")
    if len(w) < d - 1:
        raise ValueError("weight vector too short for the block count")
    out = NuPolynomial.one()
    for j in range(d - 1):
        out = out * NuPolynomial((-Fraction(w[j]) ** 2, 0, -1))
    scale = Fraction(1)
    for i in range(d - 1):
        for j in range(i + 1, d - 1):
            scale *= Fraction(w[i]) ** 2 - Fraction(w[j]) ** 2
    return out * scale


def phase_exponents(w: Sequence[int], d: int) -> Exponents:
    """Laurent exponent vector of one Weyl term: negated trailing slots."""
    tail = w[d - 1:]
    exps = []
    for v in tail:
        if isinstance(v, Fraction) and v.denominator != 1:
            raise ValueError(f"non-integer slot value {v} cannot form a Laurent exponent")
        exps.append(-int(v))
    return tuple(exps)


@dataclass(frozen=True)
class EllipticPolynomial:
    """One twist's class polynomial together with its provenance."""

    value: PhasePolynomial
    d: int
    k: int
    m: int


def class_polynomial(cfg: RayConfig, k: int, cls: EllipticClass | int) -> EllipticPolynomial:
    """Weyl-group sum of signed polynomial-times-phase terms for twist k.

    ``cls`` may be an :class:`EllipticClass` or a bare block count; angles
    play no role here because the result stays exact in the phase ring.
    """
    d = _block_count(cfg, cls)
    w = weight_vector(cfg, k)
    terms: dict[Exponents, NuPolynomial] = {}
    for s in even_signed_permutations(cfg.n):
        v = s.apply(w)
        key = phase_exponents(v, d)
        contrib = polynomial_part(v, d) * s.det
        terms[key] = terms.get(key, NuPolynomial.zero()) + contrib
    value = PhasePolynomial(terms)
    bound = 2 * (d - 1)
    for poly in value.terms.values():
        if poly.degree > bound or not poly.is_even:
            raise AssertionError("class polynomial violated its degree invariant")
    return EllipticPolynomial(value=value, d=d, k=k, m=cfg.m)


def alternating_sum(cfg: RayConfig, cls: EllipticClass | int) -> PhasePolynomial:
    """Alternating sum of class polynomials over all twists.

    The result must be free of the spectral variable; a residue raises
    :class:`LemmaViolation`.
    """
    total = PhasePolynomial.zero()
    for k in range(cfg.n + 1):
        piece = class_polynomial(cfg, k, cls).value
        total = total + piece if k % 2 == 0 else total - piece
    if not total.is_nu_free:
        raise LemmaViolation(
            f"alternating sum kept spectral degree {total.max_nu_degree()} "
            f"at n={cfg.n} tau={cfg.tau} m={cfg.m}")
    return total


def identity_alternating_sum(cfg: RayConfig) -> Fraction:
    """Alternating sum for the identity class (all blocks trivial): a rational."""
    total = alternating_sum(cfg, cfg.n + 1)
    consts = total.constants()
    return consts.get((), Fraction(0))


def coefficient_table(
    cfg: RayConfig,
    k: int,
    cls: EllipticClass,
    angles: Sequence[float] | None = None,
) -> list[complex]:
    """Coefficients of nu^0, nu^2, ... after numeric phase substitution.

    ``angles`` (radians) default to the class's own rotation angles.  The
    list has at most ``d`` entries by the degree bound.
    """
    if angles is None:
        angles = cls.radians()
    poly = class_polynomial(cfg, k, cls).value
    if poly.width is not None and len(angles) != poly.width:
        raise ValueError("angle list length does not match exponent width")
    top = poly.max_nu_degree()
    out = [0j] * (top // 2 + 1 if top >= 0 else 1)
    import cmath
    for key, nu_poly in poly.terms.items():
        phase = cmath.exp(1j * sum(e * a for e, a in zip(key, angles)))
        for i in range(len(out)):
            out[i] += phase * complex(nu_poly.coefficient(2 * i))
    return out


def interpolation_check(lams: Sequence[int], kappa: int) -> tuple[bool, Fraction]:
    """Root placement of the polynomial factor built from ``lams`` minus ``kappa``.

    Returns whether the factor vanishes at nu = +-i*lam for every other
    member, together with its exact value at nu = +-i*kappa.  That value
    equals the full pairwise product of squared differences up to the sign
    determined by how many members exceed ``kappa``.
    """
    lams = [int(x) for x in lams]
    if len(set(lams)) != len(lams):
        raise ValueError("the shift values must be distinct")
    if kappa not in lams:
        raise ValueError("kappa must be one of the shift values")
    rest = sorted((x for x in lams if x != kappa), reverse=True)
    d = len(lams)
    factor = polynomial_part(rest, d)
    zeros_ok = all(factor.eval_at_imag(x) == 0 for x in rest)
    value = factor.eval_at_imag(kappa)

    ordered = sorted(lams, reverse=True)
    expected = Fraction(1)
    for i in range(d):
        for j in range(i + 1, d):
            expected *= ordered[i] ** 2 - ordered[j] ** 2
    flips = sum(1 for x in lams if x > kappa)
    if value != expected * (-1) ** flips:
        raise AssertionError("pinned interpolation value does not match its closed form")
    return zeros_ok, value
